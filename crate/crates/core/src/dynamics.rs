//! Symmetric and balanced beta-transformations and their expansions.
//!
//! The symmetric system acts on `X_S = [-1/2, beta/2-1) u [1-beta/2, 1/2)`
//! with digits `-1, 0, 1`; the balanced system acts on the length-one
//! interval `X_B = [(2-beta)/(2beta-2), beta/(2beta-2))` with digits
//! `0, 1`. The piecewise-affine map `psi` conjugates the two. Every
//! decision (digit choice, domain membership, cycle detection) is made on
//! exact field elements.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use crate::field::{AlgNum, Ctx, ResidueClass};
use crate::{Error, Result};

/// Which of the two transformations a [`TransformSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Symmetric,
    Balanced,
}

/// Iteration cap for cycle detection; exceeding it signals a bug or an
/// input outside the guaranteed-terminating classes.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// A beta-transformation: its domain (a union of half-open intervals with
/// exact endpoints), digit alphabet and the constants the digit rule
/// needs. Immutable; all methods are pure.
#[derive(Debug, Clone)]
pub struct TransformSpec {
    ctx: Ctx,
    kind: TransformKind,
    domain: Vec<(AlgNum, AlgNum)>,
    alphabet: Vec<i8>,
    half: AlgNum,
    neg_half: AlgNum,
    /// Balanced digit threshold `1/(2beta-2)`.
    threshold: AlgNum,
    /// `1/(beta-1)`, the slope of the conjugacy.
    inv_bm1: AlgNum,
}

impl TransformSpec {
    pub fn symmetric(ctx: &Ctx) -> Self {
        Self::new(ctx, TransformKind::Symmetric)
    }

    pub fn balanced(ctx: &Ctx) -> Self {
        Self::new(ctx, TransformKind::Balanced)
    }

    pub fn new(ctx: &Ctx, kind: TransformKind) -> Self {
        let one = AlgNum::one(ctx);
        let two = AlgNum::from_int(ctx, 2);
        let beta = AlgNum::beta(ctx);
        let half = AlgNum::from_ratio(ctx, BigRational::new(1.into(), 2.into()));
        let neg_half = -&half;
        let half_beta = beta.scale(&BigRational::new(1.into(), 2.into()));
        let bm1 = &beta - &one;
        let inv_bm1 = bm1.inv().expect("beta != 1");
        let inv_2bm2 = inv_bm1.scale(&BigRational::new(1.into(), 2.into()));

        let (domain, alphabet) = match kind {
            TransformKind::Symmetric => (
                vec![
                    (neg_half.clone(), &half_beta - &one),
                    (&one - &half_beta, half.clone()),
                ],
                vec![-1, 0, 1],
            ),
            TransformKind::Balanced => (
                vec![(&(&two - &beta) * &inv_2bm2, &beta * &inv_2bm2)],
                vec![0, 1],
            ),
        };
        TransformSpec {
            ctx: ctx.clone(),
            kind,
            domain,
            alphabet,
            half,
            neg_half,
            threshold: inv_2bm2,
            inv_bm1,
        }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    /// Half-open `[lo, hi)` pieces of the domain, in increasing order.
    pub fn domain(&self) -> &[(AlgNum, AlgNum)] {
        &self.domain
    }

    pub fn alphabet(&self) -> &[i8] {
        &self.alphabet
    }

    /// `1/(beta-1)`.
    pub fn inv_beta_minus_one(&self) -> &AlgNum {
        &self.inv_bm1
    }

    /// Exact domain membership.
    pub fn contains(&self, x: &AlgNum) -> bool {
        self.domain
            .iter()
            .any(|(lo, hi)| x.in_interval(lo, hi, true, false))
    }

    /// Digit emitted at `x`.
    ///
    /// Symmetric: the unique `D` in `{-1,0,1}` with `beta x - D` in
    /// `[-1/2, 1/2)`. Balanced: `1` iff `x >= 1/(2beta-2)`.
    pub fn digit(&self, x: &AlgNum) -> Result<i8> {
        if !self.contains(x) {
            return Err(Error::Domain("point outside the transformation domain"));
        }
        Ok(match self.kind {
            TransformKind::Symmetric => {
                let bx = x.mul_beta_pow(1);
                if (&bx - &self.half).sign() >= 0 {
                    1
                } else if (&bx - &self.neg_half).sign() < 0 {
                    -1
                } else {
                    0
                }
            }
            TransformKind::Balanced => {
                if (x - &self.threshold).sign() >= 0 {
                    1
                } else {
                    0
                }
            }
        })
    }

    /// One application: returns the digit and `beta x - digit`.
    pub fn step(&self, x: &AlgNum) -> Result<(i8, AlgNum)> {
        let digit = self.digit(x)?;
        let next = &x.mul_beta_pow(1) - &AlgNum::from_int(&self.ctx, digit as i64);
        Ok((digit, next))
    }

    /// First `n` digits of the expansion of `x`.
    pub fn expansion(&self, x: &AlgNum, n: usize) -> Result<Vec<i8>> {
        let mut digits = Vec::with_capacity(n);
        let mut cur = x.clone();
        for _ in 0..n {
            let (d, next) = self.step(&cur)?;
            digits.push(d);
            cur = next;
        }
        Ok(digits)
    }

    /// Exact eventual-periodicity detection with the default step budget.
    pub fn orbit_cycle(&self, x: &AlgNum) -> Result<OrbitCycle> {
        self.orbit_cycle_budget(x, DEFAULT_STEP_BUDGET)
    }

    /// Brent cycle detection on exact orbit states. Terminates within the
    /// budget for every `x` whose orbit stays in a fixed fractional-ideal
    /// lattice (in particular all of `Z[beta]` and `psi`-images thereof).
    pub fn orbit_cycle_budget(&self, x: &AlgNum, budget: u64) -> Result<OrbitCycle> {
        if !self.contains(x) {
            return Err(Error::Domain("point outside the transformation domain"));
        }
        let mut steps: u64 = 0;
        let advance = |v: &AlgNum, steps: &mut u64| -> Result<AlgNum> {
            *steps += 1;
            if *steps > budget {
                return Err(Error::Budget(budget));
            }
            Ok(self.step(v)?.1)
        };

        // Brent: find the cycle length lambda.
        let mut power: u64 = 1;
        let mut lambda: u64 = 1;
        let mut tortoise = x.clone();
        let mut hare = advance(&tortoise, &mut steps)?;
        while tortoise != hare {
            if power == lambda {
                tortoise = hare.clone();
                power *= 2;
                lambda = 0;
            }
            hare = advance(&hare, &mut steps)?;
            lambda += 1;
        }

        // Find the preperiod length mu.
        let mut mu: u64 = 0;
        tortoise = x.clone();
        hare = x.clone();
        for _ in 0..lambda {
            hare = advance(&hare, &mut steps)?;
        }
        while tortoise != hare {
            tortoise = advance(&tortoise, &mut steps)?;
            hare = advance(&hare, &mut steps)?;
            mu += 1;
        }

        let digits = self.expansion(x, (mu + lambda) as usize)?;
        let expansion = EventuallyPeriodic::new(
            digits[..mu as usize].to_vec(),
            digits[mu as usize..].to_vec(),
        );
        Ok(OrbitCycle {
            preperiod_len: expansion.preperiod().len(),
            period_len: expansion.period().len(),
            expansion,
        })
    }
}

/// Result of exact cycle detection: canonical preperiod/period lengths and
/// the canonical eventually periodic expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCycle {
    pub preperiod_len: usize,
    pub period_len: usize,
    pub expansion: EventuallyPeriodic,
}

/// An eventually periodic digit word in canonical form: the period is the
/// minimal cyclic period and the preperiod is as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodic {
    preperiod: Vec<i8>,
    period: Vec<i8>,
}

impl EventuallyPeriodic {
    /// Build and canonicalize. `period` must be nonempty.
    pub fn new(mut preperiod: Vec<i8>, mut period: Vec<i8>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        // Minimal cyclic period: smallest divisor length that tiles it.
        let len = period.len();
        for q in 1..=len {
            if !len.is_multiple_of(q) {
                continue;
            }
            if (q..len).all(|i| period[i] == period[i - q]) {
                period.truncate(q);
                break;
            }
        }
        // Shorten the preperiod by rotating the period backwards.
        while let Some(&last) = preperiod.last() {
            if last != *period.last().expect("nonempty period") {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        EventuallyPeriodic { preperiod, period }
    }

    /// Purely periodic word `(w)^omega`.
    pub fn purely(period: Vec<i8>) -> Self {
        Self::new(Vec::new(), period)
    }

    pub fn preperiod(&self) -> &[i8] {
        &self.preperiod
    }

    pub fn period(&self) -> &[i8] {
        &self.period
    }

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// Digit at 0-based position `i` of the infinite word.
    pub fn digit_at(&self, i: usize) -> i8 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<i8> {
        (0..n).map(|i| self.digit_at(i)).collect()
    }

    pub fn period_sum(&self) -> i64 {
        self.period.iter().map(|&d| d as i64).sum()
    }

    /// The real value `sum_i w_i beta^{-i}` of the infinite word.
    pub fn value(&self, ctx: &Ctx) -> AlgNum {
        let p = self.period.len() as i64;
        // value of .(period)^omega = (sum w_j beta^{p-j}) / (beta^p - 1)
        let mut num = AlgNum::zero(ctx);
        for (j, &w) in self.period.iter().enumerate() {
            if w != 0 {
                let term = AlgNum::beta_pow(ctx, p - 1 - j as i64)
                    .scale(&BigRational::from_integer(w.into()));
                num = &num + &term;
            }
        }
        let den = &AlgNum::beta_pow(ctx, p) - &AlgNum::one(ctx);
        let mut acc = num.div_exact(&den).expect("beta^p != 1");
        acc = acc.mul_beta_pow(-(self.preperiod.len() as i64));
        for (i, &w) in self.preperiod.iter().enumerate() {
            if w != 0 {
                let term = AlgNum::beta_pow(ctx, -(i as i64 + 1))
                    .scale(&BigRational::from_integer(w.into()));
                acc = &acc + &term;
            }
        }
        acc
    }

    /// Compact text form; digit -1 renders as `T`.
    pub fn compact(&self) -> String {
        let part = |w: &[i8]| -> String {
            w.iter()
                .map(|&d| match d {
                    -1 => 'T',
                    d => char::from(b'0' + d as u8),
                })
                .collect()
        };
        format!("{}({})", part(&self.preperiod), part(&self.period))
    }
}

impl fmt::Display for EventuallyPeriodic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.compact())
    }
}

/// The conjugacy `X_S -> X_B`: `x/(beta-1)` on the right branch
/// `[1-beta/2, 1/2)` and `(x+1)/(beta-1)` on the left branch
/// `[-1/2, beta/2-1)`; satisfies `psi . T_S = T_B . psi` exactly.
pub fn psi(x: &AlgNum) -> Result<AlgNum> {
    let sym = TransformSpec::symmetric(x.ctx());
    let (left, right) = (&sym.domain[0], &sym.domain[1]);
    if x.in_interval(&right.0, &right.1, true, false) {
        Ok(x * &sym.inv_bm1)
    } else if x.in_interval(&left.0, &left.1, true, false) {
        Ok(&(x + &AlgNum::one(x.ctx())) * &sym.inv_bm1)
    } else {
        Err(Error::Domain("psi requires a point of X_S"))
    }
}

/// Whether the first `n` symmetric digits of `x` equal the successive
/// differences of the first `n+1` balanced digits of `psi(x)`.
pub fn digit_difference_law(x: &AlgNum, n: usize) -> Result<bool> {
    let ctx = x.ctx();
    let sym = TransformSpec::symmetric(ctx);
    let bal = TransformSpec::balanced(ctx);
    let xs = sym.expansion(x, n)?;
    let ts = bal.expansion(&psi(x)?, n + 1)?;
    Ok((0..n).all(|i| xs[i] == ts[i + 1] - ts[i]))
}

/// The purely periodic points of the symmetric transformation on
/// `Z[beta]`: all `+-(p_2 beta^{-2} + ... + p_d beta^{-d})` with
/// `p_i in {0,1}`, excluding zero. Each returned point is verified purely
/// periodic with period length dividing d. Sorted by value.
pub fn periodic_points(ctx: &Ctx) -> Result<Vec<AlgNum>> {
    let d = ctx.d();
    let sym = TransformSpec::symmetric(ctx);
    let mut points = Vec::with_capacity((1usize << d) - 2);
    for mask in 1u64..(1 << (d - 1)) {
        let mut x = AlgNum::zero(ctx);
        for j in 0..(d - 1) {
            if mask & (1 << j) != 0 {
                x = &x + &AlgNum::beta_pow(ctx, -(j as i64 + 2));
            }
        }
        for cand in [x.clone(), -&x] {
            let cycle = sym.orbit_cycle(&cand)?;
            if cycle.preperiod_len != 0 || !(d as usize).is_multiple_of(cycle.period_len) {
                return Err(Error::Structure(format!(
                    "candidate {cand} is not purely periodic with period dividing d"
                )));
            }
            points.push(cand);
        }
    }
    points.sort();
    Ok(points)
}

/// Independent oracle for the purely periodic points: enumerate every
/// element of `Z[beta]` with coordinates in `[-coeff_bound, coeff_bound]`,
/// keep those in `X_S` whose orbit is purely periodic. Test-support only;
/// exponential in d.
///
/// Candidates whose value provably exceeds 1/2 in absolute value are
/// discarded by a conservative floating filter (the error bound is far
/// below the rejection margin); everything that survives is decided by
/// exact arithmetic.
pub fn periodic_points_bruteforce(ctx: &Ctx, coeff_bound: u32) -> Result<Vec<AlgNum>> {
    let d = ctx.degree();
    let sym = TransformSpec::symmetric(ctx);
    let b = coeff_bound as i64;

    let beta_f = ctx.beta_interval().midpoint().to_f64();
    let pow_f: Vec<f64> = (0..d).map(|i| beta_f.powi(i as i32)).collect();

    let mut coeffs = vec![-b; d];
    let mut points = Vec::new();
    loop {
        let mut value = 0.0f64;
        let mut magnitude = 0.0f64;
        for (c, p) in coeffs.iter().zip(&pow_f) {
            value += *c as f64 * p;
            magnitude += (*c as f64 * p).abs();
        }
        // X_S is inside [-1/2, 1/2); the f64 error here is ~1e-13 relative
        if value.abs() <= 0.5 + magnitude * 1e-9 + 1e-9 {
            let x = AlgNum::from_int_coeffs(ctx, &coeffs)?;
            if !x.is_zero() && sym.contains(&x) {
                let cycle = sym.orbit_cycle(&x)?;
                if cycle.preperiod_len == 0 {
                    points.push(x);
                }
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == d {
                points.sort();
                return Ok(points);
            }
            coeffs[i] += 1;
            if coeffs[i] <= b {
                break;
            }
            coeffs[i] = -b;
            i += 1;
        }
    }
}

/// Exact verification of the invariant-measure functional equation.
///
/// The piecewise density takes the value `c_k = beta^{-1} + ... + beta^{-k}`
/// on the pieces at distance k from the fixed endpoint orbit; invariance
/// amounts to `c_1 = beta^{-1} c_d` and `c_j = beta^{-1}(c_{j-1} + c_d)`,
/// verified here as structural zeros against the transition structure of
/// the interval automaton.
pub fn verify_invariant_measure(ctx: &Ctx) -> Result<bool> {
    let sym = TransformSpec::symmetric(ctx);
    let aut = crate::automaton::build_automaton(&sym)?;
    let beta_inv = AlgNum::beta_pow(ctx, -1);

    // densities per |label|
    let d = ctx.d() as i64;
    let mut density = Vec::with_capacity(d as usize + 1);
    density.push(AlgNum::zero(ctx)); // unused index 0
    let mut acc = AlgNum::zero(ctx);
    for k in 1..=d {
        acc = &acc + &AlgNum::beta_pow(ctx, -k);
        density.push(acc.clone());
    }
    let dens = |label: i32| density[label.unsigned_abs() as usize].clone();

    for (i, state) in aut.states().iter().enumerate() {
        let mut pre_sum = AlgNum::zero(ctx);
        for (j, other) in aut.states().iter().enumerate() {
            if aut.successors(j).contains(&i) {
                pre_sum = &pre_sum + &dens(other.label);
            }
        }
        let lhs = dens(state.label);
        let rhs = &beta_inv * &pre_sum;
        if !(&lhs - &rhs).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Class characterization through period sums: the balanced expansion of
/// `|x|/(beta-1)` is eventually periodic with period (dividing) d, and the
/// digit sum over one length-d period determines the congruence class of
/// `x` modulo `beta - 1`.
///
/// Returns the class derived from the period sum together with the
/// length-d period sum itself; agreement with
/// [`AlgNum::congruence_class`] is a theorem, asserted by the test suite.
pub fn characterize_class(x: &AlgNum) -> Result<(ResidueClass, i64)> {
    let ctx = x.ctx();
    let d = ctx.d() as i64;
    if !x.is_integral() {
        return Err(Error::NotIntegral);
    }
    if x.is_zero() {
        return Err(Error::Domain("class characterization requires x != 0"));
    }
    let sym = TransformSpec::symmetric(ctx);
    if !sym.contains(x) {
        return Err(Error::Domain("class characterization requires x in X_S"));
    }
    let bal = TransformSpec::balanced(ctx);
    let sign = x.sign();
    let abs = if sign < 0 { -x } else { x.clone() };
    let t = &abs * &sym.inv_bm1;
    let cycle = bal.orbit_cycle(&t)?;
    let p = cycle.period_len as i64;
    if d % p != 0 {
        return Err(Error::Structure(format!(
            "balanced period length {p} does not divide d = {d}"
        )));
    }
    let sum = cycle.expansion.period_sum() * (d / p);
    let h = if sign > 0 {
        sum
    } else if sum == d - 1 {
        d - 1
    } else {
        d - 1 - sum
    };
    if h < 1 || h > (d - 1).max(1) {
        return Err(Error::Structure(format!(
            "period sum {sum} out of range for d = {d}"
        )));
    }
    Ok((ResidueClass::new(h as u32, ctx.d()), sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    fn ctx3() -> Ctx {
        FieldContext::new(3, 192).unwrap()
    }

    fn bpow(ctx: &Ctx, k: i64) -> AlgNum {
        AlgNum::beta_pow(ctx, k)
    }

    #[test]
    fn symmetric_step_examples() {
        let c = ctx3();
        let sym = TransformSpec::symmetric(&c);
        // x = beta^-2 + beta^-3 -> digit 1, next = -beta^-3
        let x = &bpow(&c, -2) + &bpow(&c, -3);
        let (d, next) = sym.step(&x).unwrap();
        assert_eq!(d, 1);
        assert_eq!(next, -&bpow(&c, -3));
        // x = -beta^-3 -> digit 0, next = -beta^-2
        let (d, next) = sym.step(&-&bpow(&c, -3)).unwrap();
        assert_eq!(d, 0);
        assert_eq!(next, -&bpow(&c, -2));
        // outside the domain
        assert!(matches!(sym.step(&AlgNum::zero(&c)), Err(Error::Domain(_))));
    }

    #[test]
    fn balanced_step_example() {
        let c = ctx3();
        let bal = TransformSpec::balanced(&c);
        // x = 1/beta: below the threshold, digit 0, next = 1
        let (d, next) = bal.step(&bpow(&c, -1)).unwrap();
        assert_eq!(d, 0);
        assert_eq!(next, AlgNum::one(&c));
        assert!(bal.contains(&next));
    }

    #[test]
    fn expansion_examples() {
        let c = ctx3();
        let sym = TransformSpec::symmetric(&c);
        let bal = TransformSpec::balanced(&c);
        let x = &bpow(&c, -2) + &bpow(&c, -3);
        assert_eq!(sym.expansion(&x, 6).unwrap(), vec![1, 0, -1, 1, 0, -1]);
        assert_eq!(sym.expansion(&bpow(&c, -3), 3).unwrap(), vec![0, 1, -1]);
        assert_eq!(
            bal.expansion(&bpow(&c, -1), 6).unwrap(),
            vec![0, 1, 1, 0, 1, 1]
        );
    }

    #[test]
    fn orbit_cycle_examples() {
        let c = ctx3();
        let sym = TransformSpec::symmetric(&c);
        let cy = sym.orbit_cycle(&bpow(&c, -3)).unwrap();
        assert_eq!((cy.preperiod_len, cy.period_len), (0, 3));
        assert_eq!(cy.expansion.period(), &[0, 1, -1]);

        let cy = sym.orbit_cycle(&-&bpow(&c, -2)).unwrap();
        assert_eq!((cy.preperiod_len, cy.period_len), (0, 3));
        assert_eq!(cy.expansion.period(), &[-1, 1, 0]);
    }

    #[test]
    fn orbit_cycle_budget_error() {
        let c = ctx3();
        let sym = TransformSpec::symmetric(&c);
        let x = &bpow(&c, -2) + &bpow(&c, -3);
        assert!(matches!(
            sym.orbit_cycle_budget(&x, 2),
            Err(Error::Budget(2))
        ));
    }

    #[test]
    fn psi_examples() {
        let c = ctx3();
        // psi(beta^-2 + beta^-3) = beta^-1 (right branch)
        let x = &bpow(&c, -2) + &bpow(&c, -3);
        assert_eq!(psi(&x).unwrap(), bpow(&c, -1));
        // left-branch formula at -1/2
        let half = AlgNum::from_ratio(&c, BigRational::new(1.into(), 2.into()));
        let sym = TransformSpec::symmetric(&c);
        let got = psi(&-&half).unwrap();
        assert_eq!(got, &half * sym.inv_beta_minus_one());
        assert!(psi(&AlgNum::zero(&c)).is_err());
    }

    #[test]
    fn conjugacy_commutes_on_examples() {
        let c = ctx3();
        let sym = TransformSpec::symmetric(&c);
        let bal = TransformSpec::balanced(&c);
        for x in [
            bpow(&c, -3),
            -&bpow(&c, -3),
            &bpow(&c, -2) + &bpow(&c, -3),
            -&(&bpow(&c, -2) + &bpow(&c, -3)),
        ] {
            let lhs = psi(&sym.step(&x).unwrap().1).unwrap();
            let rhs = bal.step(&psi(&x).unwrap()).unwrap().1;
            assert_eq!(lhs, rhs, "conjugacy at {x}");
        }
    }

    #[test]
    fn digit_difference_law_examples() {
        let c = ctx3();
        let x = &bpow(&c, -2) + &bpow(&c, -3);
        assert!(digit_difference_law(&x, 5).unwrap());
        assert!(digit_difference_law(&bpow(&c, -3), 5).unwrap());
        assert!(digit_difference_law(&x, 0).unwrap());
    }

    #[test]
    fn eventually_periodic_canonical_form() {
        // (010101) collapses to (01)
        let w = EventuallyPeriodic::new(vec![], vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(w.period(), &[0, 1]);
        // preperiod absorbed into the period rotation: 1(01) = (10)
        let w = EventuallyPeriodic::new(vec![1], vec![0, 1]);
        assert!(w.is_purely_periodic());
        assert_eq!(w.period(), &[1, 0]);
        // digit indexing across the junction
        let w = EventuallyPeriodic::new(vec![1, 1], vec![0, 1, 1]);
        assert_eq!(w.preperiod(), &[] as &[i8]);
        assert_eq!(w.prefix(7), vec![1, 1, 0, 1, 1, 0, 1]);
    }

    #[test]
    fn eventually_periodic_value() {
        let c = ctx3();
        // .(011)^omega in balanced digits is the expansion of 1/beta... but
        // as a plain value: beta^-2 + beta^-3 + beta^-3 (.(011)) * beta^-3 ...
        // easier: .(100)^omega = beta^2/(beta^3 - 1)
        let w = EventuallyPeriodic::purely(vec![1, 0, 0]);
        let expected = bpow(&c, 2)
            .div_exact(&(&bpow(&c, 3) - &AlgNum::one(&c)))
            .unwrap();
        assert_eq!(w.value(&c), expected);
        // preperiod + period: .1(10) = beta^-1 + beta^-1 * .(10)
        let w2 = EventuallyPeriodic::new(vec![1], vec![1, 0]);
        let tail = bpow(&c, 1)
            .div_exact(&(&bpow(&c, 2) - &AlgNum::one(&c)))
            .unwrap();
        let expected2 = &bpow(&c, -1) + &tail.mul_beta_pow(-1);
        assert_eq!(w2.value(&c), expected2);
    }

    #[test]
    fn periodic_points_small_degrees() {
        let c2 = FieldContext::new(2, 192).unwrap();
        let p2 = periodic_points(&c2).unwrap();
        assert_eq!(p2.len(), 2);

        let c3 = ctx3();
        let p3 = periodic_points(&c3).unwrap();
        assert_eq!(p3.len(), 6);
        let expected: Vec<AlgNum> = {
            let mut v = Vec::new();
            for x in [
                bpow(&c3, -3),
                bpow(&c3, -2),
                &bpow(&c3, -2) + &bpow(&c3, -3),
            ] {
                v.push(x.clone());
                v.push(-&x);
            }
            v.sort();
            v
        };
        assert_eq!(p3, expected);

        let c4 = FieldContext::new(4, 192).unwrap();
        assert_eq!(periodic_points(&c4).unwrap().len(), 14);
    }

    #[test]
    fn bruteforce_oracle_matches_for_d3() {
        let c = ctx3();
        assert_eq!(
            periodic_points(&c).unwrap(),
            periodic_points_bruteforce(&c, 4).unwrap()
        );
        assert!(periodic_points_bruteforce(&c, 0).unwrap().is_empty());
    }

    #[test]
    fn invariant_measure_holds() {
        for d in [2u32, 3, 5] {
            let c = FieldContext::new(d, 192).unwrap();
            assert!(verify_invariant_measure(&c).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn characterize_class_examples() {
        let c = ctx3();
        // x = beta^-2 + beta^-3 > 0: period (011), sum 2, class 2
        let x = &bpow(&c, -2) + &bpow(&c, -3);
        let (class, sum) = characterize_class(&x).unwrap();
        assert_eq!((class.rep(), sum), (2, 2));
        assert_eq!(class, x.congruence_class().unwrap());

        // x = beta^-3 > 0: sum 1, class 1
        let (class, sum) = characterize_class(&bpow(&c, -3)).unwrap();
        assert_eq!((class.rep(), sum), (1, 1));

        // x = -beta^-3 < 0: balanced expansion of beta^-3/(beta-1) has
        // period sum 1, so h = d-1-1 = 1; agrees with the coefficient sum.
        let neg = -&bpow(&c, -3);
        let (class, sum) = characterize_class(&neg).unwrap();
        assert_eq!((class.rep(), sum), (1, 1));
        assert_eq!(class, neg.congruence_class().unwrap());
    }
}
