//! Dyadic numbers, dyadic intervals and complex rectangles.
//!
//! A [`Dyadic`] is `mant * 2^exp` with an arbitrary-precision mantissa, so
//! addition and multiplication are exact; only division and explicit
//! rounding introduce (directed, outward) error. Intervals built on top of
//! them carry every numerical enclosure in the crate: the isolating
//! intervals of the Pisot root and its conjugates, polynomial evaluations
//! for sign determination, and the Galois embedding.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Rounding direction for the few inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// An exact dyadic rational `mant * 2^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
        } else if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// Exact conversion; panics on NaN or infinity.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "dyadic from non-finite f64");
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_field = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_field == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_field - 1075)
        };
        Dyadic::new(BigInt::from(sign) * BigInt::from(mant), exp)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.mant.is_positive() {
            1
        } else if self.mant.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &other.mant << (other.exp - exp) as u64;
        Dyadic::new(a + b, exp)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Exact halving.
    pub fn half(&self) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp - 1,
        }
    }

    /// Restrict the mantissa to `bits` significant bits, rounding in the
    /// given direction. Relative error is below `2^{1-bits}`.
    pub fn round(&self, bits: u32, dir: Round) -> Dyadic {
        let nbits = self.mant.bits();
        if nbits <= bits as u64 {
            return self.clone();
        }
        let shift = nbits - bits as u64;
        let mant = match dir {
            // BigInt shr is an arithmetic shift: floor towards -inf.
            Round::Down => &self.mant >> shift,
            Round::Up => -((-&self.mant) >> shift),
        };
        Dyadic::new(mant, self.exp + shift as i64)
    }

    /// Directed-rounding division with roughly `bits` significant bits.
    pub fn div(&self, other: &Dyadic, bits: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = bits as i64 + 2;
        let shift = (want + other.mant.bits() as i64 - self.mant.bits() as i64).max(0) as u64;
        let num = &self.mant << shift;
        let q = match dir {
            Round::Down => num.div_floor(&other.mant),
            Round::Up => num.div_ceil(&other.mant),
        };
        Dyadic::new(q, self.exp - other.exp - shift as i64).round(bits, dir)
    }

    /// Nearest f64, rounding towards zero; symmetric under negation
    /// (`(-x).to_f64() == -x.to_f64()`). Display quality only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let nbits = self.mant.bits();
        let (m, e) = if nbits > 53 {
            let shift = nbits - 53;
            let mag = self.mant.magnitude() >> shift;
            let m = if self.mant.is_negative() {
                -BigInt::from(mag)
            } else {
                BigInt::from(mag)
            };
            (m, self.exp + shift as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        mf * pow2_f64(e)
    }
}

fn pow2_f64(mut e: i64) -> f64 {
    let mut acc = 1.0f64;
    while e > 1023 {
        acc *= f64::from_bits((1023u64 + 1023) << 52);
        e -= 1023;
    }
    while e < -1022 {
        acc *= f64::from_bits(1u64 << 52);
        e += 1022;
    }
    acc * f64::from_bits(((e + 1023) as u64) << 52)
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

/// A closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        DyInterval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        DyInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Self {
        DyInterval::point(Dyadic::zero())
    }

    /// Enclose `num/den` with outward rounding at `bits`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        assert!(!den.is_zero());
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        let n = Dyadic::from_bigint(num);
        let d = Dyadic::from_bigint(den);
        DyInterval::new(n.div(&d, bits, Round::Down), n.div(&d, bits, Round::Up))
    }

    pub fn add(&self, other: &DyInterval) -> DyInterval {
        DyInterval::new(self.lo.add(&other.lo), self.hi.add(&other.hi))
    }

    pub fn sub(&self, other: &DyInterval) -> DyInterval {
        DyInterval::new(self.lo.sub(&other.hi), self.hi.sub(&other.lo))
    }

    pub fn neg(&self) -> DyInterval {
        DyInterval::new(self.hi.neg(), self.lo.neg())
    }

    pub fn mul(&self, other: &DyInterval) -> DyInterval {
        let p1 = self.lo.mul(&other.lo);
        let p2 = self.lo.mul(&other.hi);
        let p3 = self.hi.mul(&other.lo);
        let p4 = self.hi.mul(&other.hi);
        let lo = p1.clone().min(p2.clone()).min(p3.clone()).min(p4.clone());
        let hi = p1.max(p2).max(p3).max(p4);
        DyInterval::new(lo, hi)
    }

    /// Tight enclosure of `x^2` (never dips below zero).
    pub fn square(&self) -> DyInterval {
        if self.lo.signum() >= 0 {
            DyInterval::new(self.lo.mul(&self.lo), self.hi.mul(&self.hi))
        } else if self.hi.signum() <= 0 {
            DyInterval::new(self.hi.mul(&self.hi), self.lo.mul(&self.lo))
        } else {
            let a = self.lo.mul(&self.lo);
            let b = self.hi.mul(&self.hi);
            DyInterval::new(Dyadic::zero(), a.max(b))
        }
    }

    /// Interval division; requires `0 not in other`.
    pub fn div(&self, other: &DyInterval, bits: u32) -> DyInterval {
        assert!(
            !other.contains_zero(),
            "interval division by interval containing zero"
        );
        let q1 = self.lo.div(&other.lo, bits, Round::Down);
        let q2 = self.lo.div(&other.hi, bits, Round::Down);
        let q3 = self.hi.div(&other.lo, bits, Round::Down);
        let q4 = self.hi.div(&other.hi, bits, Round::Down);
        let lo = q1.min(q2).min(q3).min(q4);
        let q1 = self.lo.div(&other.lo, bits, Round::Up);
        let q2 = self.lo.div(&other.hi, bits, Round::Up);
        let q3 = self.hi.div(&other.lo, bits, Round::Up);
        let q4 = self.hi.div(&other.hi, bits, Round::Up);
        let hi = q1.max(q2).max(q3).max(q4);
        DyInterval::new(lo, hi)
    }

    /// Outward rounding of both endpoints to `bits` mantissa bits.
    pub fn round_out(&self, bits: u32) -> DyInterval {
        DyInterval::new(
            self.lo.round(bits, Round::Down),
            self.hi.round(bits, Round::Up),
        )
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    /// Sign of every point of the interval, if uniform.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).half()
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// True when `hi - lo <= 2^{-bits}`.
    pub fn width_below(&self, bits: u32) -> bool {
        let w = self.width();
        w.is_zero() || w <= Dyadic::new(BigInt::from(1), -(bits as i64))
    }

    pub fn intersect(&self, other: &DyInterval) -> Option<DyInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(DyInterval::new(lo, hi))
        } else {
            None
        }
    }

    /// Strict containment in the interior of `other`.
    pub fn inside(&self, other: &DyInterval) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

/// An axis-aligned rectangle in the complex plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: DyInterval,
    pub im: DyInterval,
}

impl ComplexBox {
    pub fn new(re: DyInterval, im: DyInterval) -> Self {
        ComplexBox { re, im }
    }

    pub fn point(re: Dyadic, im: Dyadic) -> Self {
        ComplexBox {
            re: DyInterval::point(re),
            im: DyInterval::point(im),
        }
    }

    pub fn add(&self, other: &ComplexBox) -> ComplexBox {
        ComplexBox::new(self.re.add(&other.re), self.im.add(&other.im))
    }

    pub fn sub(&self, other: &ComplexBox) -> ComplexBox {
        ComplexBox::new(self.re.sub(&other.re), self.im.sub(&other.im))
    }

    pub fn mul(&self, other: &ComplexBox) -> ComplexBox {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        ComplexBox::new(re, im)
    }

    pub fn neg(&self) -> ComplexBox {
        ComplexBox::new(self.re.neg(), self.im.neg())
    }

    pub fn round_out(&self, bits: u32) -> ComplexBox {
        ComplexBox::new(self.re.round_out(bits), self.im.round_out(bits))
    }

    /// Enclosure of `|z|^2` over the box.
    pub fn mag_sq(&self) -> DyInterval {
        self.re.square().add(&self.im.square())
    }

    pub fn midpoint(&self) -> (Dyadic, Dyadic) {
        (self.re.midpoint(), self.im.midpoint())
    }

    pub fn max_width(&self) -> Dyadic {
        self.re.width().max(self.im.width())
    }

    pub fn width_below(&self, bits: u32) -> bool {
        self.re.width_below(bits) && self.im.width_below(bits)
    }

    pub fn intersect(&self, other: &ComplexBox) -> Option<ComplexBox> {
        Some(ComplexBox::new(
            self.re.intersect(&other.re)?,
            self.im.intersect(&other.im)?,
        ))
    }

    /// Strict containment in the interior of `other`.
    pub fn inside(&self, other: &ComplexBox) -> bool {
        self.re.inside(&other.re) && self.im.inside(&other.im)
    }

    pub fn disjoint(&self, other: &ComplexBox) -> bool {
        self.re.intersect(&other.re).is_none() || self.im.intersect(&other.im).is_none()
    }
}

/// Interval Horner evaluation of a polynomial with dyadic-interval
/// coefficients (degree = coeffs.len() - 1, coeffs[0] constant term).
pub fn eval_interval_poly(coeffs: &[DyInterval], x: &DyInterval, bits: u32) -> DyInterval {
    let mut acc = DyInterval::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c).round_out(bits);
    }
    acc
}

/// Same over a complex rectangle, integer polynomial coefficients.
pub fn eval_box_poly(coeffs: &[BigInt], x: &ComplexBox, bits: u32) -> ComplexBox {
    let mut acc = ComplexBox::point(Dyadic::zero(), Dyadic::zero());
    for c in coeffs.iter().rev() {
        let c = ComplexBox::point(Dyadic::from_bigint(c.clone()), Dyadic::zero());
        acc = acc.mul(x).add(&c).round_out(bits);
    }
    acc
}

/// Exact evaluation of an integer polynomial at a dyadic point.
pub fn eval_point_poly(coeffs: &[BigInt], x: &Dyadic) -> Dyadic {
    let mut acc = Dyadic::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&Dyadic::from_bigint(c.clone()));
    }
    acc
}

/// Exact evaluation at a complex dyadic point.
pub fn eval_cpoint_poly(coeffs: &[BigInt], re: &Dyadic, im: &Dyadic) -> (Dyadic, Dyadic) {
    let mut are = Dyadic::zero();
    let mut aim = Dyadic::zero();
    for c in coeffs.iter().rev() {
        let nre = are
            .mul(re)
            .sub(&aim.mul(im))
            .add(&Dyadic::from_bigint(c.clone()));
        let nim = are.mul(im).add(&aim.mul(re));
        are = nre;
        aim = nim;
    }
    (are, aim)
}

/// Derivative coefficients of an integer polynomial.
pub fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}
