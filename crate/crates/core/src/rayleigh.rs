//! Basis generating polynomials and Rayleigh differences.
//!
//! For distinct `e, f` the Rayleigh difference is
//!
//! ```text
//! ΔM{e,f} = M_e^f · M_f^e − M_ef · M^ef
//! ```
//!
//! where `M_I^J` is the generating polynomial of the minor contracting `I` and
//! deleting `J` (zero when `I` is dependent). A matroid is Rayleigh when every
//! such difference is nonnegative on the positive orthant.
//!
//! For a third element `g` the difference is a quadratic in `y_g`:
//!
//! ```text
//! ΔM{e,f} = y_g² ΔM_g{e,f} + y_g Θ + ΔM^g{e,f}
//! Θ = M_e^fg M_fg^e + M_f^eg M_eg^f − M_g^ef M_ef^g − M_efg M^efg
//! ```
//!
//! When `{e,f,g}` is dependent the central term `Θ` has nonnegative
//! coefficients; [`exchange_injection`] builds the basis-pair injection that
//! witnesses this.

use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matroid::{Elem, ElementSet, Matroid};
use crate::poly::{Coeff, Monomial, Polynomial};

/// A matroid together with an unordered pair of distinct ground-set elements.
#[derive(Clone, Copy, Debug)]
pub struct PairContext<'a> {
    pub matroid: &'a Matroid,
    pub e: Elem,
    pub f: Elem,
}

impl<'a> PairContext<'a> {
    pub fn new(matroid: &'a Matroid, e: Elem, f: Elem) -> Result<Self> {
        if e == f {
            return Err(Error::PairNotDistinct);
        }
        for x in [e, f] {
            if !matroid.ground().contains(x) {
                return Err(Error::UnknownElement(format!("#{}", x.0)));
            }
        }
        Ok(PairContext { matroid, e, f })
    }

    pub fn by_label(matroid: &'a Matroid, e: &str, f: &str) -> Result<Self> {
        PairContext::new(matroid, matroid.elem(e)?, matroid.elem(f)?)
    }

    pub fn pair(&self) -> ElementSet {
        ElementSet::singleton(self.e).with(self.f)
    }

    fn third(&self, g: Elem) -> Result<()> {
        if g == self.e || g == self.f {
            return Err(Error::ElementInPair);
        }
        if !self.matroid.ground().contains(g) {
            return Err(Error::UnknownElement(format!("#{}", g.0)));
        }
        Ok(())
    }

    fn minor_poly(&self, contract: &[Elem], delete: &[Elem]) -> Polynomial {
        let i: ElementSet = contract.iter().copied().collect();
        let j: ElementSet = delete.iter().copied().collect();
        minor_polynomial(self.matroid, i, j).expect("pair elements are distinct ground elements")
    }
}

/// `M(y) = Σ_B y^B`. The empty basis family gives 0, the rank-0 matroid 1.
pub fn generating_polynomial(m: &Matroid) -> Polynomial {
    let mut p = Polynomial::zero();
    for b in m.bases() {
        p.add_term(Monomial::of_set(*b), Coeff::from_integer(1.into()));
    }
    p
}

/// Generating polynomial of `M_I^J` (zero when `I` is dependent).
pub fn minor_polynomial(m: &Matroid, contract: ElementSet, delete: ElementSet) -> Result<Polynomial> {
    Ok(generating_polynomial(&m.minor(contract, delete)?))
}

/// The two products `(M_e^f · M_f^e, M_ef · M^ef)` whose difference is ΔM{e,f}.
pub fn difference_terms(ctx: &PairContext) -> (Polynomial, Polynomial) {
    let (e, f) = (ctx.e, ctx.f);
    let positive = &ctx.minor_poly(&[e], &[f]) * &ctx.minor_poly(&[f], &[e]);
    let negative = &ctx.minor_poly(&[e, f], &[]) * &ctx.minor_poly(&[], &[e, f]);
    (positive, negative)
}

pub fn rayleigh_difference(ctx: &PairContext) -> Polynomial {
    let (pos, neg) = difference_terms(ctx);
    &pos - &neg
}

/// The central term Θ of ΔM{e,f} viewed as a quadratic in `y_g`.
pub fn central_term(ctx: &PairContext, g: Elem) -> Result<Polynomial> {
    ctx.third(g)?;
    let (e, f) = (ctx.e, ctx.f);
    let p = |c: &[Elem], d: &[Elem]| ctx.minor_poly(c, d);
    let plus = &(&p(&[e], &[f, g]) * &p(&[f, g], &[e])) + &(&p(&[f], &[e, g]) * &p(&[e, g], &[f]));
    let minus = &(&p(&[g], &[e, f]) * &p(&[e, f], &[g])) + &(&p(&[e, f, g], &[]) * &p(&[], &[e, f, g]));
    Ok(&plus - &minus)
}

/// Checks `ΔM = y_g² ΔM_g + y_g Θ + ΔM^g` exactly, with the contraction and
/// deletion differences computed on the minors themselves.
pub fn decomposition_check(ctx: &PairContext, g: Elem) -> Result<bool> {
    let theta = central_term(ctx, g)?;
    let gs = ElementSet::singleton(g);
    let contracted = ctx.matroid.contract(gs)?;
    let deleted = ctx.matroid.delete(gs)?;
    let d_contract = rayleigh_difference(&PairContext::new(&contracted, ctx.e, ctx.f)?);
    let d_delete = rayleigh_difference(&PairContext::new(&deleted, ctx.e, ctx.f)?);
    let yg = Polynomial::var(g);
    let rhs = &(&(&yg.square() * &d_contract) + &(&yg * &theta)) + &d_delete;
    Ok(rhs == rayleigh_difference(ctx))
}

/// Which element replaces `g` in the first basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `e ∉ cl(B₁ − g)`: swap `e` in.
    EOutsideSpan,
    /// `e ∈ cl(B₁ − g)`, hence `f ∉ cl(B₁ − g)`: swap `f` in.
    FOutsideSpan,
}

/// One input/output pair of the exchange injection. All sets are full bases
/// of the ambient matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectionRecord {
    /// `(B₁, B₂)` with `g ∈ B₁ ∌ e, f` and `e, f ∈ B₂ ∌ g`.
    pub input: (ElementSet, ElementSet),
    pub output: (ElementSet, ElementSet),
    pub branch: Branch,
}

impl InjectionRecord {
    /// Monomial weight of the input pair with contracted elements removed.
    pub fn input_weight(&self, e: Elem, f: Elem, g: Elem) -> Monomial {
        let (b1, b2) = self.input;
        Monomial::of_set(b1.without(g)).product(&Monomial::of_set(b2.without(e).without(f)))
    }

    pub fn output_weight(&self, e: Elem, f: Elem, g: Elem) -> Monomial {
        let (a1, a2) = self.output;
        let (inserted, kept) = match self.branch {
            Branch::EOutsideSpan => (e, f),
            Branch::FOutsideSpan => (f, e),
        };
        Monomial::of_set(a1.without(inserted)).product(&Monomial::of_set(a2.without(kept).without(g)))
    }
}

/// Maps every pair in `M_g^ef × M_ef^g` to a pair in
/// `(M_e^fg × M_fg^e) ∪ (M_f^eg × M_eg^f)` with the same monomial weight.
///
/// Requires `{e, f, g}` dependent, which makes `M_efg` empty.
pub fn exchange_injection(ctx: &PairContext, g: Elem) -> Result<Vec<InjectionRecord>> {
    ctx.third(g)?;
    let m = ctx.matroid;
    let (e, f) = (ctx.e, ctx.f);
    let triple = ctx.pair().with(g);
    if !m.is_dependent(triple)? {
        return Err(Error::IndependentTriple);
    }
    let firsts: Vec<ElementSet> = m
        .bases()
        .iter()
        .copied()
        .filter(|b| b.contains(g) && !b.contains(e) && !b.contains(f))
        .collect();
    let seconds: Vec<ElementSet> = m
        .bases()
        .iter()
        .copied()
        .filter(|b| b.contains(e) && b.contains(f) && !b.contains(g))
        .collect();
    let mut out = Vec::with_capacity(firsts.len() * seconds.len());
    for &b1 in &firsts {
        let span = m.closure(b1.without(g))?;
        let (x, branch) = if !span.contains(e) {
            (e, Branch::EOutsideSpan)
        } else {
            (f, Branch::FOutsideSpan)
        };
        for &b2 in &seconds {
            out.push(InjectionRecord {
                input: (b1, b2),
                output: (b1.without(g).with(x), b2.without(x).with(g)),
                branch,
            });
        }
    }
    Ok(out)
}

/// Outcome of checking an injection record list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectionAudit {
    pub domain_size: usize,
    pub outputs_are_bases: bool,
    pub outputs_in_codomain: bool,
    pub injective: bool,
    pub weight_preserving: bool,
}

impl InjectionAudit {
    pub fn holds(&self) -> bool {
        self.outputs_are_bases && self.outputs_in_codomain && self.injective && self.weight_preserving
    }
}

pub fn audit_injection(ctx: &PairContext, g: Elem, records: &[InjectionRecord]) -> InjectionAudit {
    let m = ctx.matroid;
    let (e, f) = (ctx.e, ctx.f);
    let mut seen = HashSet::new();
    let mut audit = InjectionAudit {
        domain_size: records.len(),
        outputs_are_bases: true,
        outputs_in_codomain: true,
        injective: true,
        weight_preserving: true,
    };
    for r in records {
        let (a1, a2) = r.output;
        audit.outputs_are_bases &= m.is_basis(a1) && m.is_basis(a2);
        let (x, y) = match r.branch {
            Branch::EOutsideSpan => (e, f),
            Branch::FOutsideSpan => (f, e),
        };
        // A₁ ∈ M_x^{yg} and A₂ ∈ M_{yg}^x
        audit.outputs_in_codomain &= a1.contains(x)
            && !a1.contains(y)
            && !a1.contains(g)
            && a2.contains(y)
            && a2.contains(g)
            && !a2.contains(x);
        audit.injective &= seen.insert((r.branch, a1.0, a2.0));
        audit.weight_preserving &= r.input_weight(e, f, g) == r.output_weight(e, f, g);
    }
    audit
}

/// `Θ ≫ 0` for a dependent triple.
pub fn theta_dominance_check(ctx: &PairContext, g: Elem) -> Result<bool> {
    if !ctx.matroid.is_dependent(ctx.pair().with(g))? {
        return Err(Error::IndependentTriple);
    }
    Ok(central_term(ctx, g)?.is_nonnegative())
}

/// Whether `{e, f}` is a flat. Only closed pairs can witness a violation in a
/// minor-minimal non-Rayleigh matroid.
pub fn closed_pair_filter(m: &Matroid, e: Elem, f: Elem) -> Result<bool> {
    let pair = ElementSet::singleton(e).with(f);
    m.is_closed(pair)
}

/// Checks `M_ef · M ≤ M_f · M_e` at a positive point, i.e. that the events
/// `e ∈ B` and `f ∈ B` are negatively correlated for the weighted random basis.
pub fn negative_correlation_check(m: &Matroid, e: Elem, f: Elem, point: &BTreeMap<Elem, Coeff>) -> Result<bool> {
    let ctx = PairContext::new(m, e, f)?;
    let full = generating_polynomial(m).evaluate(point)?;
    let with_e = minor_polynomial(m, ElementSet::singleton(e), ElementSet::EMPTY)?.evaluate(point)?;
    if full.is_zero() || with_e.is_zero() {
        return Err(Error::DegenerateWeights);
    }
    let with_f = minor_polynomial(m, ElementSet::singleton(f), ElementSet::EMPTY)?.evaluate(point)?;
    let with_both = minor_polynomial(m, ctx.pair(), ElementSet::EMPTY)?.evaluate(point)?;
    Ok(with_both * full <= with_f * with_e)
}

/// All unordered pairs of ground-set elements, in canonical order.
pub fn all_pairs(m: &Matroid) -> Vec<(Elem, Elem)> {
    let elems: Vec<Elem> = m.elements().collect();
    let mut out = Vec::new();
    for (i, &a) in elems.iter().enumerate() {
        for &b in &elems[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Geometry;
    use crate::poly::integer;

    fn y(m: &Matroid, l: &str) -> Polynomial {
        Polynomial::var(m.elem(l).unwrap())
    }

    fn fig1_i() -> Matroid {
        Geometry::new(&["1", "2", "3", "4"], &[&["2", "3", "4"]]).to_matroid().unwrap()
    }

    fn k4() -> Matroid {
        Geometry::new(
            &["1", "2", "3", "4", "5", "6"],
            &[&["2", "3", "5"], &["1", "3", "6"], &["2", "4", "6"], &["1", "4", "5"]],
        )
        .to_matroid()
        .unwrap()
    }

    #[test]
    fn generating_polynomials() {
        let u = Matroid::uniform(3, 4);
        let expect = y(&u, "1") * y(&u, "2") * y(&u, "3")
            + y(&u, "1") * y(&u, "2") * y(&u, "4")
            + y(&u, "1") * y(&u, "3") * y(&u, "4")
            + y(&u, "2") * y(&u, "3") * y(&u, "4");
        assert_eq!(generating_polynomial(&u), expect);
        let m = fig1_i();
        assert_eq!(generating_polynomial(&m).len(), 3);
        let empty = m.contract(m.set(&["2", "3", "4"]).unwrap()).unwrap();
        assert!(generating_polynomial(&empty).is_zero());
        assert_eq!(generating_polynomial(&Matroid::uniform(0, 3)), Polynomial::one());
    }

    #[test]
    fn minor_polynomials_of_u34() {
        let u = Matroid::uniform(3, 4);
        let ef = u.set(&["1", "2"]).unwrap();
        assert_eq!(minor_polynomial(&u, ef, ElementSet::EMPTY).unwrap(), y(&u, "3") + y(&u, "4"));
        assert!(minor_polynomial(&u, ElementSet::EMPTY, ef).unwrap().is_zero());
        let m = fig1_i();
        assert!(minor_polynomial(&m, m.set(&["2", "3", "4"]).unwrap(), ElementSet::EMPTY)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn k4_closed_form() {
        let m = k4();
        let d = rayleigh_difference(&PairContext::by_label(&m, "1", "2").unwrap());
        let expect = (y(&m, "3") * y(&m, "4") - y(&m, "5") * y(&m, "6")).square();
        assert_eq!(d, expect);
    }

    #[test]
    fn u34_difference() {
        let u = Matroid::uniform(3, 4);
        let d = rayleigh_difference(&PairContext::by_label(&u, "1", "2").unwrap());
        assert_eq!(d, (y(&u, "3") * y(&u, "4")).square());
    }

    #[test]
    fn parallel_pair_is_a_product() {
        let u = Matroid::uniform(3, 4);
        let m = u.with_parallel_copy(u.elem("1").unwrap(), "1'").unwrap();
        let ctx = PairContext::by_label(&m, "1", "1'").unwrap();
        let (pos, neg) = difference_terms(&ctx);
        assert!(neg.is_zero());
        assert!(pos.is_nonnegative());
        assert_eq!(rayleigh_difference(&ctx), pos);
    }

    #[test]
    fn central_term_on_dependent_triple() {
        let m = fig1_i();
        let ctx = PairContext::by_label(&m, "2", "3").unwrap();
        let g = m.elem("4").unwrap();
        assert!(central_term(&ctx, g).unwrap().is_nonnegative());
        assert!(theta_dominance_check(&ctx, g).unwrap());
        assert!(decomposition_check(&ctx, g).unwrap());
        assert_eq!(central_term(&ctx, ctx.e), Err(Error::ElementInPair));
    }

    #[test]
    fn central_term_of_loop_vanishes() {
        let u = Matroid::uniform(2, 3);
        let mut labels: Vec<String> = u.labels().to_vec();
        labels.push("z".into());
        let m = Matroid::from_parts(labels.into(), ElementSet::full(4), 2, u.bases().to_vec());
        let ctx = PairContext::by_label(&m, "1", "2").unwrap();
        let z = m.elem("z").unwrap();
        assert!(central_term(&ctx, z).unwrap().is_zero());
        assert!(theta_dominance_check(&ctx, z).unwrap());
        assert!(decomposition_check(&ctx, z).unwrap());
    }

    #[test]
    fn decomposition_on_u34() {
        let u = Matroid::uniform(3, 4);
        let ctx = PairContext::by_label(&u, "1", "2").unwrap();
        assert!(decomposition_check(&ctx, u.elem("3").unwrap()).unwrap());
        let r1 = Matroid::uniform(1, 4);
        let ctx = PairContext::by_label(&r1, "1", "2").unwrap();
        assert!(decomposition_check(&ctx, r1.elem("4").unwrap()).unwrap());
    }

    #[test]
    fn injection_on_near_pencil() {
        let m = fig1_i();
        let ctx = PairContext::by_label(&m, "2", "3").unwrap();
        let g = m.elem("4").unwrap();
        let recs = exchange_injection(&ctx, g).unwrap();
        // no basis contains 4 while avoiding both 2 and 3
        assert!(recs.is_empty());
        let audit = audit_injection(&ctx, g, &recs);
        assert!(audit.holds(), "{audit:?}");
        let u = Matroid::uniform(3, 4);
        let ctx = PairContext::by_label(&u, "1", "2").unwrap();
        assert_eq!(exchange_injection(&ctx, u.elem("3").unwrap()), Err(Error::IndependentTriple));
    }

    #[test]
    fn injection_on_k4_triangle() {
        let m = k4();
        let ctx = PairContext::by_label(&m, "2", "3").unwrap();
        let g = m.elem("5").unwrap();
        let recs = exchange_injection(&ctx, g).unwrap();
        assert!(!recs.is_empty());
        assert!(audit_injection(&ctx, g, &recs).holds());
    }

    #[test]
    fn closed_pairs() {
        let u = Matroid::uniform(3, 4);
        assert!(closed_pair_filter(&u, Elem(0), Elem(1)).unwrap());
        let m = fig1_i();
        assert!(!closed_pair_filter(&m, m.elem("2").unwrap(), m.elem("3").unwrap()).unwrap());
        let p = u.with_parallel_copy(Elem(0), "1'").unwrap();
        assert!(closed_pair_filter(&p, Elem(0), p.elem("1'").unwrap()).unwrap());
        let q = p.with_parallel_copy(Elem(0), "1''").unwrap();
        assert!(!closed_pair_filter(&q, Elem(0), q.elem("1'").unwrap()).unwrap());
    }

    #[test]
    fn negative_correlation_on_u34() {
        let u = Matroid::uniform(3, 4);
        let ones: BTreeMap<Elem, Coeff> = u.elements().map(|e| (e, integer(1))).collect();
        assert!(negative_correlation_check(&u, Elem(0), Elem(1), &ones).unwrap());
        // 1 is a coloop of U_{1,1} ⊕ U_{1,2}: equality holds
        let m = Matroid::from_bases(&["1", "2", "3"], 2, [["1", "2"], ["1", "3"]]).unwrap();
        let ones: BTreeMap<Elem, Coeff> = m.elements().map(|e| (e, integer(1))).collect();
        assert!(negative_correlation_check(&m, Elem(0), Elem(1), &ones).unwrap());
        let zero: BTreeMap<Elem, Coeff> = m.elements().map(|e| (e, integer(0))).collect();
        assert_eq!(negative_correlation_check(&m, Elem(0), Elem(1), &zero), Err(Error::DegenerateWeights));
    }

    #[test]
    fn symmetric_in_pair() {
        let m = k4();
        for (a, b) in all_pairs(&m) {
            let d1 = rayleigh_difference(&PairContext::new(&m, a, b).unwrap());
            let d2 = rayleigh_difference(&PairContext::new(&m, b, a).unwrap());
            assert_eq!(d1, d2);
        }
    }
}
