//! Certified root isolation for d-Bonacci minimal polynomials.
//!
//! The Pisot root and (for even degree) the negative real conjugate are
//! isolated by exact bisection and tightened by interval Newton steps. The
//! complex conjugates start from floating-point Durand-Kerner seeds and are
//! then certified and refined with a Krawczyk operator over exact complex
//! rectangles, so every stored region is proved to contain exactly one
//! root.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::dyadic::{
    derivative, eval_box_poly, eval_cpoint_poly, eval_interval_poly, eval_point_poly, ComplexBox,
    DyInterval, Dyadic,
};
use crate::{Error, Result};

/// Coefficients (constant term first) of `x^d - x^{d-1} - ... - x - 1`.
pub fn min_poly(d: u32) -> Vec<BigInt> {
    let mut coeffs = vec![-BigInt::one(); d as usize];
    coeffs.push(BigInt::one());
    coeffs
}

fn sign_at(poly: &[BigInt], x: &Dyadic) -> i32 {
    eval_point_poly(poly, x).signum()
}

/// Bisect a sign-change interval `[lo, hi]` down to `2^-bits` width.
fn bisect(poly: &[BigInt], mut lo: Dyadic, mut hi: Dyadic, bits: u32) -> DyInterval {
    let slo = sign_at(poly, &lo);
    debug_assert!(slo != 0 && sign_at(poly, &hi) == -slo);
    while !DyInterval::new(lo.clone(), hi.clone()).width_below(bits) {
        let mid = lo.add(&hi).half();
        let sm = sign_at(poly, &mid);
        if sm == 0 {
            // cannot occur for these polynomials (no rational roots)
            return DyInterval::point(mid);
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    DyInterval::new(lo, hi)
}

/// Interval-Newton refinement of an isolating interval, with bisection as
/// fallback whenever the derivative enclosure straddles zero.
pub fn refine_real(poly: &[BigInt], iv: &DyInterval, bits: u32) -> DyInterval {
    let dp = derivative(poly);
    let dp_iv: Vec<DyInterval> = dp
        .iter()
        .map(|c| DyInterval::point(Dyadic::from_bigint(c.clone())))
        .collect();
    let work = bits + 32;
    let mut cur = iv.clone();
    while !cur.width_below(bits) {
        let slope = eval_interval_poly(&dp_iv, &cur, work);
        let mut stepped = false;
        if !slope.contains_zero() {
            let m = cur.midpoint();
            let pm = DyInterval::point(eval_point_poly(poly, &m)).round_out(work);
            let delta = pm.div(&slope, work);
            let cand = DyInterval::point(m).sub(&delta);
            if let Some(next) = cand.intersect(&cur) {
                if next.width() < cur.width() {
                    cur = next.round_out(work);
                    stepped = true;
                }
            }
        }
        if !stepped {
            // One exact bisection step; endpoint signs are re-derived.
            let slo = sign_at(poly, &cur.lo);
            let mid = cur.midpoint();
            let sm = sign_at(poly, &mid);
            if sm == 0 {
                return DyInterval::point(mid);
            }
            cur = if sm == slo {
                DyInterval::new(mid, cur.hi)
            } else {
                DyInterval::new(cur.lo, mid)
            };
        }
    }
    cur
}

/// Isolate the Pisot root in `(1, 2)`.
pub fn isolate_beta(poly: &[BigInt], bits: u32) -> DyInterval {
    let coarse = bisect(poly, Dyadic::from_i64(1), Dyadic::from_i64(2), 24);
    refine_real(poly, &coarse, bits)
}

/// Isolate the real conjugate in `(-1, 0)`; present exactly when d is even.
pub fn isolate_negative_real(poly: &[BigInt], bits: u32) -> DyInterval {
    let coarse = bisect(poly, Dyadic::from_i64(-1), Dyadic::from_i64(0), 24);
    refine_real(poly, &coarse, bits)
}

// --- floating-point seeds ---------------------------------------------

#[derive(Clone, Copy)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }
    fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
    fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
    fn norm_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

fn eval_c64(poly: &[f64], z: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &c in poly.iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

/// All roots of the polynomial by Durand-Kerner iteration, unordered.
fn durand_kerner(poly: &[BigInt]) -> Vec<C64> {
    let coeffs: Vec<f64> = poly.iter().map(|c| c.to_f64().unwrap()).collect();
    let deg = coeffs.len() - 1;
    let mut zs: Vec<C64> = Vec::with_capacity(deg);
    let mut w = C64::new(1.0, 0.0);
    let gen = C64::new(0.4, 0.9);
    for _ in 0..deg {
        w = w.mul(gen);
        zs.push(w);
    }
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for j in 0..deg {
            let mut den = C64::new(1.0, 0.0);
            for k in 0..deg {
                if k != j {
                    den = den.mul(zs[j].sub(zs[k]));
                }
            }
            let delta = eval_c64(&coeffs, zs[j]).div(den);
            zs[j] = zs[j].sub(delta);
            moved = moved.max(delta.norm_sq());
        }
        if moved < 1e-28 {
            break;
        }
    }
    zs
}

/// Upper-half-plane complex roots as floating-point seeds, sorted by real
/// part.
pub fn complex_seeds(poly: &[BigInt]) -> Vec<(f64, f64)> {
    let mut seeds: Vec<(f64, f64)> = durand_kerner(poly)
        .into_iter()
        .filter(|z| z.im > 1e-8)
        .map(|z| (z.re, z.im))
        .collect();
    seeds.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    seeds
}

// --- Krawczyk certification -------------------------------------------

fn complex_recip_approx(re: &Dyadic, im: &Dyadic, bits: u32) -> (Dyadic, Dyadic) {
    let denom = re.mul(re).add(&im.mul(im));
    (
        re.div(&denom, bits, crate::dyadic::Round::Down),
        im.neg().div(&denom, bits, crate::dyadic::Round::Down),
    )
}

/// One Krawczyk step `K(X) = m - y p(m) + (1 - y p'(X)) (X - m)`.
fn krawczyk(poly: &[BigInt], dpoly: &[BigInt], x: &ComplexBox, bits: u32) -> ComplexBox {
    let (mre, mim) = x.midpoint();
    let (pre, pim) = eval_cpoint_poly(poly, &mre, &mim);
    let (dre, dim) = eval_cpoint_poly(dpoly, &mre, &mim);
    let (yre, yim) = complex_recip_approx(&dre, &dim, 64);
    let y = ComplexBox::point(yre, yim);
    let m = ComplexBox::point(mre, mim);
    let pm = ComplexBox::point(pre, pim).round_out(bits);
    let one = ComplexBox::point(Dyadic::from_i64(1), Dyadic::zero());
    let dpx = eval_box_poly(dpoly, x, bits);
    m.sub(&y.mul(&pm))
        .add(&one.sub(&y.mul(&dpx)).mul(&x.sub(&m)))
        .round_out(bits)
}

/// Certify that a box around the seed contains exactly one root, then
/// shrink it below `2^-bits`.
pub fn certify_complex(poly: &[BigInt], seed: (f64, f64), bits: u32) -> Result<ComplexBox> {
    let dpoly = derivative(poly);
    let work = bits + 32;
    for &radius in &[1e-6f64, 1e-9, 1e-4, 1e-2] {
        let r = Dyadic::from_f64(radius);
        let re = Dyadic::from_f64(seed.0);
        let im = Dyadic::from_f64(seed.1);
        let cand = ComplexBox::new(
            DyInterval::new(re.sub(&r), re.add(&r)),
            DyInterval::new(im.sub(&r), im.add(&r)),
        );
        let k = krawczyk(poly, &dpoly, &cand, work);
        if !k.inside(&cand) {
            continue;
        }
        // Certified: iterate to the requested width.
        let mut cur = k.intersect(&cand).expect("Krawczyk image inside box");
        let mut guard = 0;
        while !cur.width_below(bits) {
            let next = krawczyk(poly, &dpoly, &cur, work);
            match next.intersect(&cur) {
                Some(n) if n.max_width() < cur.max_width() => cur = n,
                _ => {
                    guard += 1;
                    if guard > 64 {
                        return Err(Error::PrecisionTooLow(bits));
                    }
                }
            }
        }
        return Ok(cur);
    }
    Err(Error::PrecisionTooLow(bits))
}

/// Shrink an already-certified box below `2^-bits`.
pub fn refine_complex(poly: &[BigInt], cur: &ComplexBox, bits: u32) -> Result<ComplexBox> {
    let dpoly = derivative(poly);
    let work = bits + 32;
    let mut cur = cur.clone();
    let mut guard = 0;
    while !cur.width_below(bits) {
        let next = krawczyk(poly, &dpoly, &cur, work);
        match next.intersect(&cur) {
            Some(n) if n.max_width() < cur.max_width() => cur = n,
            _ => {
                guard += 1;
                if guard > 64 {
                    return Err(Error::PrecisionTooLow(bits));
                }
            }
        }
    }
    Ok(cur)
}
