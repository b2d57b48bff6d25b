//! Seeded random weight vectors and exact sampled checks.
//!
//! Weights are log-uniform in `[10^-3, 10^3]`, rounded to dyadic rationals
//! `m / 2^20` with `m >= 1`. Every inequality checked here compares two
//! homogeneous polynomials of the same degree, so the common factor `2^-20`
//! cancels and evaluation runs on the integer mantissas. The result is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matroid::{Elem, ElementSet, Matroid};
use crate::poly::{Coeff, Polynomial};
use crate::rayleigh::{difference_terms, generating_polynomial, minor_polynomial, negative_correlation_check, PairContext};

pub const WEIGHT_BITS: u32 = 20;

/// A positive weight vector with entries `mantissa / 2^WEIGHT_BITS`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicPoint(pub Vec<(Elem, u64)>);

impl DyadicPoint {
    pub fn mantissa(&self, e: Elem) -> Option<u64> {
        self.0.iter().find(|p| p.0 == e).map(|p| p.1)
    }

    pub fn to_rational(&self) -> BTreeMap<Elem, Coeff> {
        let den = BigInt::one() << WEIGHT_BITS;
        self.0
            .iter()
            .map(|&(e, m)| (e, Coeff::new(BigInt::from(m), den.clone())))
            .collect()
    }

    /// `y_a = m/2^20, ...` using the matroid's labels.
    pub fn to_text<S: AsRef<str>>(&self, labels: &[S]) -> String {
        self.0
            .iter()
            .map(|&(e, m)| format!("y_{} = {}/2^{}", labels[e.index()].as_ref(), m, WEIGHT_BITS))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Deterministic weight source; the seed fixes every draw.
pub struct WeightSampler {
    rng: ChaCha8Rng,
}

impl WeightSampler {
    pub fn new(seed: u64) -> Self {
        WeightSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn mantissa(&mut self) -> u64 {
        let u: f64 = self.rng.gen();
        let x = 10f64.powf(6.0 * u - 3.0);
        ((x * (1u64 << WEIGHT_BITS) as f64).round() as u64).max(1)
    }

    pub fn point(&mut self, ground: ElementSet) -> DyadicPoint {
        DyadicPoint(ground.iter().map(|e| (e, self.mantissa())).collect())
    }
}

/// Evaluates a polynomial with integer coefficients at integer values.
pub fn evaluate_integer(p: &Polynomial, point: &DyadicPoint) -> BigInt {
    let mut total = BigInt::zero();
    for (m, c) in p.terms() {
        assert!(c.is_integer(), "integer evaluation needs integer coefficients");
        let mut v = c.to_integer();
        for &(e, k) in m.exponents() {
            let x = point.mantissa(e).expect("point covers every variable");
            v *= BigInt::from(x).pow(k);
        }
        total += v;
    }
    total
}

struct CorrelationPolys {
    e: Elem,
    f: Elem,
    full: Polynomial,
    with_e: Polynomial,
    with_f: Polynomial,
    with_both: Polynomial,
}

impl CorrelationPolys {
    fn new(m: &Matroid, e: Elem, f: Elem) -> Result<Self> {
        let ctx = PairContext::new(m, e, f)?;
        Ok(CorrelationPolys {
            e,
            f,
            full: generating_polynomial(m),
            with_e: minor_polynomial(m, ElementSet::singleton(e), ElementSet::EMPTY)?,
            with_f: minor_polynomial(m, ElementSet::singleton(f), ElementSet::EMPTY)?,
            with_both: minor_polynomial(m, ctx.pair(), ElementSet::EMPTY)?,
        })
    }

    fn holds(&self, point: &DyadicPoint) -> bool {
        let lhs = evaluate_integer(&self.with_both, point) * evaluate_integer(&self.full, point);
        let rhs = evaluate_integer(&self.with_f, point) * evaluate_integer(&self.with_e, point);
        lhs <= rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationFailure {
    pub e: Elem,
    pub f: Elem,
    pub point: DyadicPoint,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub samples: usize,
    pub checks: usize,
    pub passed: usize,
    pub failures: Vec<CorrelationFailure>,
    /// Checks repeated with rational evaluation, and how many disagreed.
    pub cross_checks: usize,
    pub cross_check_mismatches: usize,
}

impl SweepReport {
    pub fn pass_rate(&self) -> f64 {
        if self.checks == 0 {
            1.0
        } else {
            self.passed as f64 / self.checks as f64
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.cross_check_mismatches == 0
    }
}

/// Every 64th sample is also checked through rational evaluation.
const CROSS_CHECK_EVERY: usize = 64;

/// Checks `M_ef · M ≤ M_e · M_f` for every listed pair at `samples` random
/// points. One point is drawn per sample and shared by all pairs.
pub fn correlation_sweep(m: &Matroid, pairs: &[(Elem, Elem)], samples: usize, seed: u64) -> Result<SweepReport> {
    let polys = pairs
        .iter()
        .map(|&(e, f)| CorrelationPolys::new(m, e, f))
        .collect::<Result<Vec<_>>>()?;
    let mut sampler = WeightSampler::new(seed);
    let mut report = SweepReport { samples, ..SweepReport::default() };
    for i in 0..samples {
        let point = sampler.point(m.ground());
        for p in &polys {
            report.checks += 1;
            let ok = p.holds(&point);
            if ok {
                report.passed += 1;
            } else {
                report.failures.push(CorrelationFailure { e: p.e, f: p.f, point: point.clone() });
            }
            if i % CROSS_CHECK_EVERY == 0 && !m.loops().contains(p.e) {
                report.cross_checks += 1;
                if negative_correlation_check(m, p.e, p.f, &point.to_rational())? != ok {
                    report.cross_check_mismatches += 1;
                }
            }
        }
    }
    Ok(report)
}

/// Looks for a point where `ΔM{e,f}` is negative. Used where no certificate
/// exists (rank above three).
pub fn search_negative_delta(m: &Matroid, e: Elem, f: Elem, samples: usize, seed: u64) -> Result<Option<DyadicPoint>> {
    let (pos, neg) = difference_terms(&PairContext::new(m, e, f)?);
    let mut sampler = WeightSampler::new(seed);
    for _ in 0..samples {
        let point = sampler.point(m.ground());
        if evaluate_integer(&pos, &point) < evaluate_integer(&neg, &point) {
            return Ok(Some(point));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;
    use crate::rayleigh::all_pairs;

    #[test]
    fn weights_stay_in_range() {
        let mut s = WeightSampler::new(7);
        let lo = (1u64 << WEIGHT_BITS) / 1000;
        let hi = (1u64 << WEIGHT_BITS) * 1000;
        for _ in 0..2000 {
            let m = s.mantissa();
            assert!(m >= lo && m <= hi, "{m}");
        }
    }

    #[test]
    fn seed_fixes_draws() {
        let g = ElementSet::full(6);
        let a: Vec<_> = (0..5).map({
            let mut s = WeightSampler::new(3);
            move |_| s.point(g)
        }).collect();
        let b: Vec<_> = (0..5).map({
            let mut s = WeightSampler::new(3);
            move |_| s.point(g)
        }).collect();
        assert_eq!(a, b);
        assert_ne!(WeightSampler::new(3).point(g), WeightSampler::new(4).point(g));
    }

    #[test]
    fn integer_and_rational_evaluation_agree() {
        let m = named("K4").unwrap();
        let p = generating_polynomial(&m);
        let point = WeightSampler::new(11).point(m.ground());
        let scale = Coeff::from_integer(BigInt::one() << (WEIGHT_BITS * 3));
        let exact = p.evaluate(&point.to_rational()).unwrap() * scale;
        assert_eq!(exact, Coeff::from_integer(evaluate_integer(&p, &point)));
    }

    #[test]
    fn uniform_sweep_passes() {
        let m = Matroid::uniform(3, 4);
        let r = correlation_sweep(&m, &all_pairs(&m), 200, 1).unwrap();
        assert_eq!(r.checks, 1200);
        assert!(r.all_passed());
        assert!(r.cross_checks > 0);
    }

    #[test]
    fn no_negative_delta_for_k4() {
        let m = named("K4").unwrap();
        let (e, f) = (m.elem("1").unwrap(), m.elem("2").unwrap());
        assert_eq!(search_negative_delta(&m, e, f, 200, 5).unwrap(), None);
    }
}
