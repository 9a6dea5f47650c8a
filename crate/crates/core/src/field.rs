//! The d-Bonacci number field: exact elements, signs and embeddings.
//!
//! Elements of `Q(beta)` are rational coordinate vectors on the power basis
//! `1, beta, ..., beta^{d-1}`, so equality with zero is a structural test
//! and never a numerical one. Sign determination evaluates the coordinate
//! polynomial over a certified isolating interval of `beta`, doubling the
//! working precision until the enclosure excludes zero; this terminates
//! for every nonzero element because the power basis is a `Q`-basis.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::dyadic::{eval_interval_poly, ComplexBox, DyInterval, Dyadic};
use crate::roots;
use crate::{Error, Result};

/// Shared handle to an immutable field context.
pub type Ctx = Arc<FieldContext>;

/// Isolating region of one Galois conjugate.
#[derive(Debug, Clone)]
pub enum ConjugateRegion {
    /// Representative of a complex-conjugate pair, imaginary part > 0.
    Pair(ComplexBox),
    /// A real conjugate in (-1, 0).
    Real(DyInterval),
}

/// The d-Bonacci field: minimal polynomial, certified root regions and
/// working precision. Immutable after construction and freely shareable.
#[derive(Debug)]
pub struct FieldContext {
    d: u32,
    min_poly: Vec<BigInt>,
    precision_bits: u32,
    stored_bits: u32,
    beta: DyInterval,
    beta_coarse: DyInterval,
    beta_mid: DyInterval,
    conjugates: Vec<ConjugateRegion>,
}

/// Extra certified bits kept beyond the requested precision so that
/// routine queries never trigger re-refinement.
const PRECISION_SLACK: u32 = 64;

impl FieldContext {
    /// Build and certify the context for the d-Bonacci number.
    ///
    /// Root isolation uses exact bisection plus interval Newton for the
    /// real roots and Krawczyk rectangles for the complex pairs; the Pisot
    /// property (every conjugate strictly inside the unit circle) is then
    /// checked by exact interval arithmetic.
    pub fn new(d: u32, precision_bits: u32) -> Result<Ctx> {
        if d < 2 {
            return Err(Error::InvalidParameter("d must be at least 2"));
        }
        if precision_bits < 64 {
            return Err(Error::InvalidParameter(
                "precision_bits must be at least 64",
            ));
        }
        let poly = roots::min_poly(d);
        let stored_bits = precision_bits + PRECISION_SLACK;
        let beta = roots::isolate_beta(&poly, stored_bits);

        let mut conjugates = Vec::new();
        for seed in roots::complex_seeds(&poly) {
            conjugates.push(ConjugateRegion::Pair(roots::certify_complex(
                &poly,
                seed,
                stored_bits,
            )?));
        }
        if d.is_multiple_of(2) {
            conjugates.push(ConjugateRegion::Real(roots::isolate_negative_real(
                &poly,
                stored_bits,
            )));
        }

        let pairs = conjugates
            .iter()
            .filter(|c| matches!(c, ConjugateRegion::Pair(_)))
            .count() as u32;
        let reals = conjugates.len() as u32 - pairs;
        if 2 * pairs + reals + 1 != d {
            return Err(Error::Construction(
                "root count does not match the degree".to_string(),
            ));
        }

        let one = DyInterval::point(Dyadic::from_i64(1));
        for (i, c) in conjugates.iter().enumerate() {
            let modulus_ok = match c {
                ConjugateRegion::Pair(b) => {
                    if b.im.lo.signum() <= 0 {
                        return Err(Error::Construction(
                            "complex representative not in the upper half plane".to_string(),
                        ));
                    }
                    b.mag_sq().sub(&one).sign() == Some(-1)
                }
                ConjugateRegion::Real(iv) => iv.hi.signum() < 0 && iv.lo > Dyadic::from_i64(-1),
            };
            if !modulus_ok {
                return Err(Error::PrecisionTooLow(precision_bits));
            }
            for other in &conjugates[i + 1..] {
                let disjoint = match (c, other) {
                    (ConjugateRegion::Pair(a), ConjugateRegion::Pair(b)) => a.disjoint(b),
                    _ => true, // a real interval cannot meet an upper-half-plane box
                };
                if !disjoint {
                    return Err(Error::Construction("isolating regions overlap".to_string()));
                }
            }
        }

        Ok(Arc::new(FieldContext {
            d,
            min_poly: poly,
            precision_bits,
            stored_bits,
            beta_coarse: beta.round_out(64),
            beta_mid: beta.round_out(128),
            beta,
            conjugates,
        }))
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.d as usize
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// The certified isolating interval of the Pisot root.
    pub fn beta_interval(&self) -> &DyInterval {
        &self.beta
    }

    pub fn conjugates(&self) -> &[ConjugateRegion] {
        &self.conjugates
    }

    /// An enclosure of beta adequate for `bits` working bits, locally
    /// refined (without mutating the context) beyond the stored precision.
    fn beta_at(&self, bits: u32) -> DyInterval {
        if bits <= 64 {
            self.beta_coarse.clone()
        } else if bits <= 128 {
            self.beta_mid.clone()
        } else if bits <= self.stored_bits {
            self.beta.round_out(bits)
        } else {
            roots::refine_real(&self.min_poly, &self.beta, bits)
        }
    }

    fn compatible(&self, other: &FieldContext) -> bool {
        core::ptr::eq(self, other) || self.d == other.d
    }
}

/// Congruence class modulo `beta - 1`, represented by `1..=d-1`
/// (residue 0 is represented by `d-1`; for d = 2 there is a single class).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueClass {
    rep: u32,
    modulus: u32,
}

impl ResidueClass {
    pub fn new(rep: u32, d: u32) -> Self {
        let modulus = (d - 1).max(1);
        debug_assert!(rep >= 1 && rep <= modulus);
        ResidueClass { rep, modulus }
    }

    /// Class of a rational integer.
    pub fn of_int(n: i64, d: u32) -> Self {
        let modulus = (d - 1).max(1) as i64;
        ResidueClass::new(((n - 1).rem_euclid(modulus) + 1) as u32, d)
    }

    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn add(&self, other: &ResidueClass) -> ResidueClass {
        debug_assert_eq!(self.modulus, other.modulus);
        let rep = (self.rep + other.rep - 1) % self.modulus + 1;
        ResidueClass {
            rep,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

/// Image of an element under the Galois embedding into `R^{d-1}`.
///
/// Coordinates are exact dyadic midpoints of certified enclosures; the
/// true embedded point lies within `error_radius` of `coords` in the
/// max-norm.
#[derive(Debug, Clone)]
pub struct EmbeddedPoint {
    coords: Vec<Dyadic>,
    error_radius: Dyadic,
}

impl EmbeddedPoint {
    pub fn coords(&self) -> &[Dyadic] {
        &self.coords
    }

    pub fn coords_f64(&self) -> Vec<f64> {
        self.coords.iter().map(Dyadic::to_f64).collect()
    }

    pub fn error_radius(&self) -> &Dyadic {
        &self.error_radius
    }

    pub fn error_radius_f64(&self) -> f64 {
        self.error_radius.to_f64()
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Ring operation selector for [`arith`]; `Neg` is unary and ignores the
/// second operand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// An element of `Q(beta)` as an exact coordinate vector on the power
/// basis. All operations are pure; values are immutable.
#[derive(Clone)]
pub struct AlgNum {
    ctx: Ctx,
    coeffs: Vec<BigRational>,
}

impl AlgNum {
    pub fn from_coeffs(ctx: &Ctx, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != ctx.degree() {
            return Err(Error::InvalidParameter(
                "coefficient vector length must equal d",
            ));
        }
        Ok(AlgNum {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    pub fn from_int_coeffs(ctx: &Ctx, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(
            ctx,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero(ctx: &Ctx) -> Self {
        AlgNum {
            ctx: ctx.clone(),
            coeffs: vec![BigRational::zero(); ctx.degree()],
        }
    }

    pub fn one(ctx: &Ctx) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Ctx, n: i64) -> Self {
        let mut x = Self::zero(ctx);
        x.coeffs[0] = BigRational::from_integer(BigInt::from(n));
        x
    }

    pub fn from_ratio(ctx: &Ctx, r: BigRational) -> Self {
        let mut x = Self::zero(ctx);
        x.coeffs[0] = r;
        x
    }

    /// The generator beta itself.
    pub fn beta(ctx: &Ctx) -> Self {
        let mut x = Self::zero(ctx);
        x.coeffs[1] = BigRational::one();
        x
    }

    /// `beta^k` for any integer `k`.
    pub fn beta_pow(ctx: &Ctx, k: i64) -> Self {
        Self::one(ctx).mul_beta_pow(k)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_zero)
    }

    /// True when the element lies in `Z[beta]`, i.e. every coordinate is an
    /// integer (equivalent because beta is an algebraic unit).
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    pub fn coeff_sum(&self) -> BigRational {
        self.coeffs
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    fn assert_compatible(&self, other: &AlgNum) {
        assert!(
            self.ctx.compatible(&other.ctx),
            "AlgNum operands from incompatible field contexts"
        );
    }

    fn add_ref(&self, other: &AlgNum) -> AlgNum {
        self.assert_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        AlgNum {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    fn sub_ref(&self, other: &AlgNum) -> AlgNum {
        self.assert_compatible(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        AlgNum {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    fn neg_ref(&self) -> AlgNum {
        AlgNum {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul_ref(&self, other: &AlgNum) -> AlgNum {
        self.assert_compatible(other);
        let d = self.ctx.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // Reduce with beta^i = beta^{i-1} + ... + beta^{i-d}.
        for i in (d..2 * d - 1).rev() {
            let c = core::mem::replace(&mut prod[i], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            for j in 1..=d {
                prod[i - j] += &c;
            }
        }
        prod.truncate(d);
        AlgNum {
            ctx: self.ctx.clone(),
            coeffs: prod,
        }
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, r: &BigRational) -> AlgNum {
        AlgNum {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Exact multiplication by `beta^k` for any integer `k`; negative
    /// powers use that beta is a unit:
    /// `beta^{-1} = beta^{d-1} - beta^{d-2} - ... - beta - 1`.
    pub fn mul_beta_pow(&self, k: i64) -> AlgNum {
        let d = self.ctx.degree();
        let mut coeffs = self.coeffs.clone();
        if k >= 0 {
            for _ in 0..k {
                let top = coeffs[d - 1].clone();
                for i in (1..d).rev() {
                    coeffs[i] = &coeffs[i - 1] + &top;
                }
                coeffs[0] = top;
            }
        } else {
            for _ in 0..(-k) {
                let c0 = coeffs[0].clone();
                for i in 0..d - 1 {
                    coeffs[i] = &coeffs[i + 1] - &c0;
                }
                coeffs[d - 1] = c0;
            }
        }
        AlgNum {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// coordinate polynomial and the minimal polynomial.
    pub fn inv(&self) -> Result<AlgNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p: Vec<BigRational> = self
            .ctx
            .min_poly
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, u) = poly_ext_gcd(&self.coeffs, &p);
        if poly_deg(&g) != Some(0) {
            return Err(Error::Structure(
                "minimal polynomial shares a factor with a nonzero element".to_string(),
            ));
        }
        let ginv = g[0].recip();
        let mut coeffs: Vec<BigRational> = u.iter().map(|c| c * &ginv).collect();
        coeffs.resize(self.ctx.degree(), BigRational::zero());
        Ok(AlgNum {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn div_exact(&self, other: &AlgNum) -> Result<AlgNum> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Exact sign of the real value: `0` iff all coordinates vanish,
    /// otherwise decided by interval evaluation at increasing precision.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let mut bits = 64u32;
        loop {
            let beta_iv = self.ctx.beta_at(bits);
            let coeff_ivs: Vec<DyInterval> = self
                .coeffs
                .iter()
                .map(|c| ratio_interval(c, bits))
                .collect();
            let v = eval_interval_poly(&coeff_ivs, &beta_iv, bits);
            if let Some(s) = v.sign() {
                return s;
            }
            bits = bits.checked_mul(2).expect("precision overflow");
            assert!(
                bits <= 1 << 20,
                "sign undecided at 2^20 bits for a structurally nonzero element"
            );
        }
    }

    /// Exact membership in an interval with configurable endpoint closure;
    /// requires `lo < hi`.
    pub fn in_interval(&self, lo: &AlgNum, hi: &AlgNum, closed_lo: bool, closed_hi: bool) -> bool {
        let above = match self.sub_ref(lo).sign() {
            1 => true,
            0 => closed_lo,
            _ => false,
        };
        if !above {
            return false;
        }
        match self.sub_ref(hi).sign() {
            -1 => true,
            0 => closed_hi,
            _ => false,
        }
    }

    /// Total order on the real values; panics on incompatible contexts.
    pub fn cmp_value(&self, other: &AlgNum) -> Ordering {
        if self.coeffs == other.coeffs {
            return Ordering::Equal;
        }
        match self.sub_ref(other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    /// Congruence class modulo `beta - 1`. Because `beta = 1` and `d = 1`
    /// hold modulo `beta - 1`, the class is the coordinate sum mod `d-1`.
    pub fn congruence_class(&self) -> Result<ResidueClass> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let sum = self.coeff_sum().to_integer();
        let modulus = BigInt::from((self.ctx.d - 1).max(1));
        let rep = (sum - BigInt::one()).mod_floor(&modulus) + BigInt::one();
        Ok(ResidueClass::new(
            rep.to_u32().expect("residue fits in u32"),
            self.ctx.d,
        ))
    }

    /// Galois embedding into `R^{d-1}`: the coordinate polynomial is
    /// evaluated over every certified conjugate region; a complex pair
    /// contributes (Re, Im), ordered pairs-then-reals. Enclosures are
    /// refined until the error radius is at most `2^-precision_bits`.
    pub fn embed(&self, precision_bits: u32) -> EmbeddedPoint {
        let target = Dyadic::new(BigInt::one(), -(precision_bits as i64));
        let mut work = precision_bits + 16;
        loop {
            let coeff_ivs: Vec<DyInterval> = self
                .coeffs
                .iter()
                .map(|c| ratio_interval(c, work))
                .collect();
            let mut coords = Vec::with_capacity(self.ctx.degree() - 1);
            let mut radius = Dyadic::zero();
            for region in &self.ctx.conjugates {
                match region {
                    ConjugateRegion::Pair(b) => {
                        let b = if work <= self.ctx.stored_bits {
                            b.round_out(work)
                        } else {
                            roots::refine_complex(&self.ctx.min_poly, b, work)
                                .expect("refining a certified box")
                        };
                        let v = eval_box_poly_rat(&coeff_ivs, &b, work);
                        radius = radius.max(v.re.width().half()).max(v.im.width().half());
                        coords.push(v.re.midpoint());
                        coords.push(v.im.midpoint());
                    }
                    ConjugateRegion::Real(iv) => {
                        let iv = if work <= self.ctx.stored_bits {
                            iv.round_out(work)
                        } else {
                            roots::refine_real(&self.ctx.min_poly, iv, work)
                        };
                        let v = eval_interval_poly(&coeff_ivs, &iv, work);
                        radius = radius.max(v.width().half());
                        coords.push(v.midpoint());
                    }
                }
            }
            if radius <= target || self.is_zero() {
                return EmbeddedPoint {
                    coords,
                    error_radius: radius,
                };
            }
            work *= 2;
        }
    }

    /// Floating approximation of the real value, for display only; never
    /// used in decisions.
    pub fn approx_f64(&self) -> f64 {
        let beta = self.ctx.beta_at(64).midpoint().to_f64();
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * beta + c.to_f64().unwrap_or(0.0);
        }
        acc
    }
}

/// Precomputed data for embedding many integral elements cheaply.
///
/// For `x` with integer coordinates `c_i`, each embedding coordinate is
/// `sum_i c_i s_i` where `s_i` encloses a conjugate power; storing exact
/// dyadic midpoints `m_i` and a radius bound `r_i >= |s_i - m_i|` per
/// power makes one embedding a handful of exact small multiplications with
/// the certified error `sum_i |c_i| r_i`.
pub struct Embedder {
    /// Per conjugate region, per power 0..d: (re, im) midpoints.
    mids: Vec<Vec<(Dyadic, Dyadic)>>,
    is_pair: Vec<bool>,
    /// Per power: max enclosure radius over regions and components.
    rads: Vec<Dyadic>,
    degree: usize,
}

impl Embedder {
    pub fn new(ctx: &Ctx, precision_bits: u32) -> Self {
        let work = precision_bits + 16;
        let d = ctx.degree();
        let mut mids = Vec::new();
        let mut is_pair = Vec::new();
        let mut rads = vec![Dyadic::zero(); d];
        for region in &ctx.conjugates {
            let base = match region {
                ConjugateRegion::Pair(b) => {
                    is_pair.push(true);
                    if work <= ctx.stored_bits {
                        b.round_out(work)
                    } else {
                        roots::refine_complex(&ctx.min_poly, b, work)
                            .expect("refining a certified box")
                    }
                }
                ConjugateRegion::Real(iv) => {
                    is_pair.push(false);
                    let iv = if work <= ctx.stored_bits {
                        iv.round_out(work)
                    } else {
                        roots::refine_real(&ctx.min_poly, iv, work)
                    };
                    ComplexBox::new(iv, DyInterval::zero())
                }
            };
            let mut powers = Vec::with_capacity(d);
            let one = ComplexBox::point(Dyadic::from_i64(1), Dyadic::zero());
            let mut acc = one;
            for (i, rad) in rads.iter_mut().enumerate() {
                let m = acc.midpoint();
                let r = acc.re.width().half().max(acc.im.width().half());
                *rad = rad.clone().max(r);
                powers.push(m);
                if i + 1 < d {
                    acc = acc.mul(&base).round_out(work);
                }
            }
            mids.push(powers);
        }
        Embedder {
            mids,
            is_pair,
            rads,
            degree: d,
        }
    }

    /// Certified embedding of an element of `Z[beta]`.
    pub fn embed_integral(&self, x: &AlgNum) -> Result<EmbeddedPoint> {
        if !x.is_integral() {
            return Err(Error::NotIntegral);
        }
        let ints: Vec<BigInt> = x.coeffs.iter().map(|c| c.to_integer()).collect();
        let mut radius = Dyadic::zero();
        for (i, c) in ints.iter().enumerate() {
            if !c.is_zero() {
                let mag = Dyadic::from_bigint(c.magnitude().clone().into());
                radius = radius.add(&mag.mul(&self.rads[i]));
            }
        }
        let mut coords = Vec::with_capacity(self.degree - 1);
        for (region, pair) in self.mids.iter().zip(&self.is_pair) {
            let mut re = Dyadic::zero();
            let mut im = Dyadic::zero();
            for (c, (mre, mim)) in ints.iter().zip(region) {
                if c.is_zero() {
                    continue;
                }
                let cd = Dyadic::from_bigint(c.clone());
                re = re.add(&cd.mul(mre));
                if *pair {
                    im = im.add(&cd.mul(mim));
                }
            }
            coords.push(re);
            if *pair {
                coords.push(im);
            }
        }
        Ok(EmbeddedPoint {
            coords,
            error_radius: radius,
        })
    }
}

/// Checked ring operation mirroring the module contract.
pub fn arith(x: &AlgNum, y: &AlgNum, op: ArithOp) -> Result<AlgNum> {
    if !x.ctx.compatible(&y.ctx) {
        return Err(Error::ContextMismatch);
    }
    Ok(match op {
        ArithOp::Add => x.add_ref(y),
        ArithOp::Sub => x.sub_ref(y),
        ArithOp::Mul => x.mul_ref(y),
        ArithOp::Neg => x.neg_ref(),
    })
}

fn ratio_interval(r: &BigRational, bits: u32) -> DyInterval {
    if r.is_integer() {
        DyInterval::point(Dyadic::from_bigint(r.numer().clone()))
    } else {
        DyInterval::from_ratio(r.numer(), r.denom(), bits)
    }
}

/// Evaluate a polynomial with interval coefficients over a complex box.
fn eval_box_poly_rat(coeffs: &[DyInterval], x: &ComplexBox, bits: u32) -> ComplexBox {
    let mut acc = ComplexBox::new(DyInterval::zero(), DyInterval::zero());
    for c in coeffs.iter().rev() {
        let cbox = ComplexBox::new(c.clone(), DyInterval::zero());
        acc = acc.mul(x).add(&cbox).round_out(bits);
    }
    acc
}

// --- dense polynomial helpers over Q ------------------------------------

fn poly_deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    match poly_deg(&p) {
        Some(k) => {
            p.truncate(k + 1);
            p
        }
        None => Vec::new(),
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while let Some(dr) = poly_deg(&rem) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] / &b[db];
        let shift = dr - db;
        for i in 0..=db {
            let t = &b[i] * &factor;
            rem[shift + i] -= t;
        }
        quot[shift] = factor;
    }
    (poly_trim(quot), poly_trim(rem))
}

/// Returns `(g, u)` with `u * a = g (mod b)` and `g = gcd(a, b)`.
fn poly_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut old_r = poly_trim(a.to_vec());
    let mut r = poly_trim(b.to_vec());
    let mut old_s = vec![BigRational::one()];
    let mut s: Vec<BigRational> = Vec::new();
    while poly_deg(&r).is_some() {
        let (q, rem) = poly_divmod(&old_r, &r);
        old_r = core::mem::replace(&mut r, rem);
        let qs = poly_mul(&q, &s);
        let new_s = poly_sub(&old_s, &qs);
        old_s = core::mem::replace(&mut s, new_s);
    }
    (old_r, old_s)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

// --- trait plumbing ------------------------------------------------------

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.ctx.compatible(&other.ctx));
        self.coeffs == other.coeffs
    }
}

impl Eq for AlgNum {}

impl Hash for AlgNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for AlgNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Debug for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgNum({self})")
    }
}

impl core::ops::Add for &AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: &AlgNum) -> AlgNum {
        self.add_ref(rhs)
    }
}

impl core::ops::Sub for &AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: &AlgNum) -> AlgNum {
        self.sub_ref(rhs)
    }
}

impl core::ops::Mul for &AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: &AlgNum) -> AlgNum {
        self.mul_ref(rhs)
    }
}

impl core::ops::Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> Ctx {
        FieldContext::new(d, 192).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            FieldContext::new(1, 192),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            FieldContext::new(3, 32),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn golden_context_certifies() {
        let c = ctx(2);
        let mid = c.beta_interval().midpoint().to_f64();
        assert!(mid > 1.6180 && mid < 1.6181);
        assert_eq!(c.conjugates().len(), 1);
        assert!(matches!(c.conjugates()[0], ConjugateRegion::Real(_)));
    }

    #[test]
    fn tribonacci_context_certifies() {
        let c = ctx(3);
        let mid = c.beta_interval().midpoint().to_f64();
        assert!(mid > 1.8392 && mid < 1.8393);
        assert_eq!(c.conjugates().len(), 1);
        assert!(matches!(c.conjugates()[0], ConjugateRegion::Pair(_)));
    }

    #[test]
    fn minimal_polynomial_reduction() {
        let c = ctx(3);
        let b = AlgNum::beta(&c);
        let b2 = &b * &b;
        assert_eq!(b2, AlgNum::from_int_coeffs(&c, &[0, 0, 1]).unwrap());
        // beta^2 * beta = beta^2 + beta + 1
        let b3 = &b2 * &b;
        assert_eq!(b3, AlgNum::from_int_coeffs(&c, &[1, 1, 1]).unwrap());
        // (beta - 1) + 1 = beta
        let bm1 = &b - &AlgNum::one(&c);
        assert_eq!(&bm1 + &AlgNum::one(&c), b);
    }

    #[test]
    fn beta_pow_negative_one_matches_unit_formula() {
        let c = ctx(3);
        // 1/beta = beta^2 - beta - 1
        let inv = AlgNum::beta_pow(&c, -1);
        assert_eq!(inv, AlgNum::from_int_coeffs(&c, &[-1, -1, 1]).unwrap());
        assert_eq!(inv.mul_beta_pow(1), AlgNum::one(&c));
        assert_eq!(
            AlgNum::beta_pow(&c, 3),
            AlgNum::from_int_coeffs(&c, &[1, 1, 1]).unwrap()
        );
    }

    #[test]
    fn sign_examples() {
        let c = ctx(3);
        assert_eq!(AlgNum::zero(&c).sign(), 0);
        // beta - 2 < 0 since beta = 1.839...
        let x = &AlgNum::beta(&c) - &AlgNum::from_int(&c, 2);
        assert_eq!(x.sign(), -1);
        // beta^2 + beta + 1 - beta^3 = 0 structurally
        let y = &AlgNum::from_int_coeffs(&c, &[1, 1, 1]).unwrap() - &AlgNum::beta_pow(&c, 3);
        assert_eq!(y.sign(), 0);
    }

    #[test]
    fn bulk_embedder_agrees_with_embed() {
        let c = ctx(4);
        let embedder = Embedder::new(&c, 96);
        for coeffs in [[5, -3, 0, 2], [0, 0, 0, 1], [-7, 7, -7, 7]] {
            let x = AlgNum::from_int_coeffs(&c, &coeffs).unwrap();
            let fast = embedder.embed_integral(&x).unwrap();
            let slow = x.embed(96);
            let budget = fast.error_radius().add(slow.error_radius());
            for (a, b) in fast.coords().iter().zip(slow.coords()) {
                let diff = a.sub(b);
                let mag = if diff.signum() < 0 { diff.neg() } else { diff };
                assert!(mag <= budget);
            }
        }
        let half = AlgNum::from_ratio(&c, BigRational::new(BigInt::one(), BigInt::from(2)));
        assert!(matches!(
            embedder.embed_integral(&half),
            Err(Error::NotIntegral)
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let c = ctx(4);
        let x = AlgNum::from_int_coeffs(&c, &[3, -2, 0, 1]).unwrap();
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, AlgNum::one(&c));
        assert!(AlgNum::zero(&c).inv().is_err());
    }

    #[test]
    fn arith_checks_contexts() {
        let c3 = ctx(3);
        let c4 = ctx(4);
        let x = AlgNum::one(&c3);
        let y = AlgNum::one(&c4);
        assert_eq!(arith(&x, &y, ArithOp::Add), Err(Error::ContextMismatch));
        assert_eq!(
            arith(&x, &x, ArithOp::Add).unwrap(),
            AlgNum::from_int(&c3, 2)
        );
    }

    #[test]
    fn congruence_class_examples() {
        let c4 = ctx(4);
        // beta^2 has coefficient sum 1 -> class 1 for any d >= 3
        assert_eq!(
            AlgNum::beta_pow(&c4, 2).congruence_class().unwrap().rep(),
            1
        );
        // beta - 1 is residue 0, represented by d-1
        let bm1 = &AlgNum::beta(&c4) - &AlgNum::one(&c4);
        assert_eq!(bm1.congruence_class().unwrap().rep(), 3);
        // 4 = 1 mod 3
        assert_eq!(
            AlgNum::from_int(&c4, 4).congruence_class().unwrap().rep(),
            1
        );
        let half = AlgNum::from_ratio(&c4, BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(half.congruence_class(), Err(Error::NotIntegral));
    }

    #[test]
    fn embedding_examples() {
        let c = ctx(3);
        let zero = AlgNum::zero(&c).embed(96);
        assert_eq!(zero.dim(), 2);
        assert!(zero.coords_f64().iter().all(|&v| v == 0.0));
        assert!(zero.error_radius().is_zero());

        let one = AlgNum::one(&c).embed(96);
        assert!((one.coords_f64()[0] - 1.0).abs() < 1e-20);
        assert!(one.coords_f64()[1].abs() < 1e-20);

        let b = AlgNum::beta(&c).embed(96);
        let xy = b.coords_f64();
        assert!((xy[0] + 0.4196433776070805).abs() < 1e-12);
        assert!((xy[1] - 0.6062907292071993).abs() < 1e-12);
    }

    #[test]
    fn embedding_error_radius_halves() {
        let c = ctx(3);
        let x = AlgNum::from_int_coeffs(&c, &[7, -3, 2]).unwrap();
        let lo = x.embed(96);
        let hi = x.embed(192);
        assert!(!lo.error_radius().is_zero());
        assert!(hi.error_radius() <= &lo.error_radius().half());
    }

    #[test]
    fn in_interval_boundaries() {
        let c = ctx(3);
        let half = AlgNum::from_ratio(&c, BigRational::new(BigInt::one(), BigInt::from(2)));
        let lo = -&half;
        // hi = beta/2 - 1
        let hi = &AlgNum::beta(&c).scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
            - &AlgNum::one(&c);
        assert!(lo.in_interval(&lo, &hi, true, false));
        assert!(!hi.in_interval(&lo, &hi, true, false));
        assert!(hi.in_interval(&lo, &hi, true, true));
    }
}
