//! Explicit nonnegativity certificates for rank-3 Rayleigh differences.
//!
//! For a rank-3 matroid and distinct `e, f`, each `a ∉ {e, f}` contributes
//!
//! ```text
//! L(a,e) = cl{a,e} − {a,e}      C(a) = Σ_{c ∈ L(a,e)} y_c
//! L(a,f) = cl{a,f} − {a,f}      D(a) = Σ_{d ∈ L(a,f)} y_d
//! U(a)   = E − (cl{a,e} ∪ cl{a,f})   B(a) = Σ_{b ∈ U(a)} y_b
//! T(a)   = (y_a B(a) − C(a) D(a))²
//! ```
//!
//! and `P = ¼ Σ_a T(a)`. [`certify`] first removes loops and merges each
//! parallel class into one representative (`e` and `f` represent their own
//! classes), which turns ΔM into ΔN evaluated at `w_a = Σ_{class of a} y`.
//! It then deletes every `g` on the line through `e` and `f`. Each deletion
//! can only lower ΔM coefficientwise, since the central term of a dependent
//! triple has nonnegative coefficients and so do differences in rank two.
//! Finally it checks `ΔM ≫ P` on the reduced matroid, which gives
//! `ΔM = ¼ Σ (y_a B − C D)² + residual` with a nonnegative residual.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matroid::{Elem, ElementSet, Matroid};
use crate::poly::{rational, MonomialShape, Polynomial};
use crate::rayleigh::{difference_terms, rayleigh_difference, PairContext};

/// The pieces of `T(a)` for one element `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzParts {
    pub a: Elem,
    pub line_ae: ElementSet,
    pub line_af: ElementSet,
    pub outside: ElementSet,
    pub b: Polynomial,
    pub c: Polynomial,
    pub d: Polynomial,
    /// `y_a B(a) − C(a) D(a)`
    pub generator: Polynomial,
    /// `generator²`
    pub t: Polynomial,
}

pub fn ansatz_parts(m: &Matroid, e: Elem, f: Elem, a: Elem) -> Result<AnsatzParts> {
    if m.rank() != 3 {
        return Err(Error::RankNotThree(m.rank()));
    }
    PairContext::new(m, e, f)?;
    if a == e || a == f {
        return Err(Error::ElementInPair);
    }
    if !m.ground().contains(a) {
        return Err(Error::UnknownElement(format!("#{}", a.0)));
    }
    let span_e = m.closure(ElementSet::singleton(a).with(e))?;
    let span_f = m.closure(ElementSet::singleton(a).with(f))?;
    let line_ae = span_e.without(a).without(e);
    let line_af = span_f.without(a).without(f);
    let outside = m.ground().difference(span_e.union(span_f));
    let b = Polynomial::linear_sum(outside);
    let c = Polynomial::linear_sum(line_ae);
    let d = Polynomial::linear_sum(line_af);
    let generator = &(&Polynomial::var(a) * &b) - &(&c * &d);
    let t = generator.square();
    Ok(AnsatzParts { a, line_ae, line_af, outside, b, c, d, generator, t })
}

/// `P(M; e, f) = ¼ Σ_{a ∉ {e,f}} T(a)`.
pub fn ansatz_polynomial(m: &Matroid, e: Elem, f: Elem) -> Result<Polynomial> {
    Ok(ansatz_terms(m, e, f)?.1)
}

fn ansatz_terms(m: &Matroid, e: Elem, f: Elem) -> Result<(Vec<AnsatzParts>, Polynomial)> {
    let mut parts = Vec::new();
    let mut sum = Polynomial::zero();
    for a in m.elements().filter(|&a| a != e && a != f) {
        let p = ansatz_parts(m, e, f, a)?;
        sum += &p.t;
        parts.push(p);
    }
    Ok((parts, sum.scale(&rational(1, 4))))
}

/// Result of deleting the line through `e` and `f` down to the pair itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub matroid: Matroid,
    pub deleted: Vec<Elem>,
    /// `{e, f}` is itself dependent; nothing was deleted.
    pub pair_dependent: bool,
}

/// Deletes, one at a time, every `g ∉ {e, f}` with `{e, f, g}` dependent.
pub fn reduce_to_closed_pair(m: &Matroid, e: Elem, f: Elem) -> Result<Reduction> {
    if m.rank() != 3 {
        return Err(Error::RankNotThree(m.rank()));
    }
    let ctx = PairContext::new(m, e, f)?;
    if m.is_dependent(ctx.pair())? {
        return Ok(Reduction { matroid: m.clone(), deleted: Vec::new(), pair_dependent: true });
    }
    let mut current = m.clone();
    let mut deleted = Vec::new();
    while let Some(g) = current
        .closure(ctx.pair())?
        .difference(ctx.pair())
        .iter()
        .next()
    {
        current = current.delete(ElementSet::singleton(g))?;
        deleted.push(g);
    }
    Ok(Reduction { matroid: current, deleted, pair_dependent: false })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// Rank at most two: ΔM has nonnegative coefficients outright.
    RankAtMostTwo,
    /// `e` or `f` is a loop, so ΔM = 0.
    LoopInPair,
    /// `{e, f}` dependent: `M_ef = 0` and ΔM = M_e^f · M_f^e.
    ParallelProduct,
    /// Rank 3, independent pair: ΔM ≫ P after reduction.
    Ansatz,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub e: Elem,
    pub f: Elem,
    pub kind: CertificateKind,
    pub loops_removed: ElementSet,
    /// Representatives with the parallel copies merged into them.
    pub parallel_classes: Vec<(Elem, ElementSet)>,
    /// ΔM of the input equals ΔN of its simplification after `w` substitution.
    pub simplification_holds: bool,
    pub reduction_chain: Vec<Elem>,
    pub reduced_pair_closed: bool,
    /// ΔN{e,f} of the simplified, reduced matroid. Its variables are the
    /// class sums `w_a`, written with the representative's label.
    pub delta: Polynomial,
    pub ansatz: Polynomial,
    pub residual: Polynomial,
    pub verdict: bool,
    /// `(a, y_a B(a) − C(a) D(a))` on the reduced matroid.
    pub square_terms: Vec<(Elem, Polynomial)>,
    /// ΔM of the input matroid (equal to `delta` when nothing was deleted).
    pub unreduced_delta: Polynomial,
    /// Direct `ΔM ≫ P` on the input matroid, without reduction.
    pub unreduced_dominance: Option<bool>,
    /// ΔM and P are homogeneous quartics in variables outside `{e, f}` using
    /// only the shapes `y_g²y_h²`, `y_g²y_h y_i`, `y_g y_h y_i y_j`.
    pub shapes_ok: bool,
}

impl CertificateReport {
    /// `delta == ¼ Σ generator² + residual`.
    pub fn identity_holds(&self) -> bool {
        let squares = self
            .square_terms
            .iter()
            .fold(Polynomial::zero(), |acc, (_, g)| acc + g.square())
            .scale(&rational(1, 4));
        &squares + &self.residual == self.delta
    }

    pub fn to_json(&self, m: &Matroid) -> CertificateJson {
        let labels = m.labels();
        let text = |p: &Polynomial| p.to_text(labels);
        CertificateJson {
            schema: crate::SCHEMA,
            pair: [m.label(self.e).to_string(), m.label(self.f).to_string()],
            kind: self.kind,
            loops_removed: self.loops_removed.iter().map(|x| m.label(x).to_string()).collect(),
            parallel_classes: self
                .parallel_classes
                .iter()
                .map(|&(a, rest)| (m.label(a).to_string(), rest.iter().map(|x| m.label(x).to_string()).collect()))
                .collect(),
            reduction_chain: self.reduction_chain.iter().map(|&x| m.label(x).to_string()).collect(),
            reduced_pair_closed: self.reduced_pair_closed,
            delta: text(&self.delta),
            ansatz: text(&self.ansatz),
            residual: text(&self.residual),
            residual_terms: self.residual.len(),
            verdict: self.verdict,
            square_generators: self
                .square_terms
                .iter()
                .map(|(a, g)| SquareJson { a: m.label(*a).to_string(), generator: text(g) })
                .collect(),
            unreduced_delta: text(&self.unreduced_delta),
            unreduced_dominance: self.unreduced_dominance,
            shapes_ok: self.shapes_ok,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub schema: &'static str,
    pub pair: [String; 2],
    pub kind: CertificateKind,
    pub loops_removed: Vec<String>,
    pub parallel_classes: Vec<(String, Vec<String>)>,
    pub reduction_chain: Vec<String>,
    pub reduced_pair_closed: bool,
    pub delta: String,
    pub ansatz: String,
    pub residual: String,
    pub residual_terms: usize,
    pub verdict: bool,
    pub square_generators: Vec<SquareJson>,
    pub unreduced_delta: String,
    pub unreduced_dominance: Option<bool>,
    pub shapes_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareJson {
    pub a: String,
    pub generator: String,
}

fn quartic_shapes_ok(p: &Polynomial, pair: ElementSet) -> bool {
    p.is_homogeneous(4)
        && p.variables().is_disjoint(pair)
        && p.terms().all(|(m, _)| MonomialShape::classify(m).is_some())
}

/// Certifies `ΔM{e,f} ≥ 0` on the positive orthant for a matroid of rank ≤ 3.
pub fn certify(m: &Matroid, e: Elem, f: Elem) -> Result<CertificateReport> {
    if m.rank() > 3 {
        return Err(Error::RankAboveThree(m.rank()));
    }
    let ctx = PairContext::new(m, e, f)?;
    let unreduced_delta = rayleigh_difference(&ctx);
    let loops = m.loops();
    let mut report = CertificateReport {
        e,
        f,
        kind: CertificateKind::RankAtMostTwo,
        loops_removed: ElementSet::EMPTY,
        parallel_classes: Vec::new(),
        simplification_holds: true,
        reduction_chain: Vec::new(),
        reduced_pair_closed: m.is_closed(ctx.pair())?,
        delta: unreduced_delta.clone(),
        ansatz: Polynomial::zero(),
        residual: unreduced_delta.clone(),
        verdict: unreduced_delta.is_nonnegative(),
        square_terms: Vec::new(),
        unreduced_delta,
        unreduced_dominance: None,
        shapes_ok: true,
    };
    if loops.contains(e) || loops.contains(f) {
        report.kind = CertificateKind::LoopInPair;
        return Ok(report);
    }
    if m.rank() <= 2 {
        return Ok(report);
    }
    if m.is_dependent(ctx.pair())? {
        let (_, negative) = difference_terms(&ctx);
        report.kind = CertificateKind::ParallelProduct;
        report.verdict = negative.is_zero() && report.delta.is_nonnegative();
        return Ok(report);
    }

    // Loops never occur in any basis, so deleting them leaves ΔM unchanged.
    let loopless = m.delete(loops)?;
    let unreduced_p = ansatz_polynomial(&loopless, e, f)?;
    report.unreduced_dominance = Some(report.unreduced_delta.dominates(&unreduced_p));

    let (simple, simplification) = loopless.simplify_preferring(ctx.pair());
    let simple_delta = rayleigh_difference(&PairContext::new(&simple, e, f)?);
    report.simplification_holds =
        simple_delta.substitute(&simplification.substitution()) == report.unreduced_delta;
    report.parallel_classes = simplification.classes.into_iter().filter(|c| !c.1.is_empty()).collect();

    let reduction = reduce_to_closed_pair(&simple, e, f)?;
    let reduced = &reduction.matroid;
    let delta = rayleigh_difference(&PairContext::new(reduced, e, f)?);
    let (parts, ansatz) = ansatz_terms(reduced, e, f)?;
    let residual = &delta - &ansatz;

    report.kind = CertificateKind::Ansatz;
    report.loops_removed = loops;
    report.reduction_chain = reduction.deleted;
    report.reduced_pair_closed = reduced.is_closed(ctx.pair())?;
    report.verdict = residual.is_nonnegative() && report.simplification_holds;
    report.shapes_ok = quartic_shapes_ok(&delta, ctx.pair()) && quartic_shapes_ok(&ansatz, ctx.pair());
    report.square_terms = parts.into_iter().map(|p| (p.a, p.generator)).collect();
    report.delta = delta;
    report.ansatz = ansatz;
    report.residual = residual;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Geometry;
    use crate::poly::integer;

    fn labels6() -> Vec<&'static str> {
        vec!["1", "2", "3", "4", "5", "6"]
    }

    fn k4() -> Matroid {
        Geometry::new(&labels6(), &[&["2", "3", "5"], &["1", "3", "6"], &["2", "4", "6"], &["1", "4", "5"]])
            .to_matroid()
            .unwrap()
    }

    fn y(m: &Matroid, l: &str) -> Polynomial {
        Polynomial::var(m.elem(l).unwrap())
    }

    #[test]
    fn parts_in_general_position() {
        let u = Matroid::uniform(3, 4);
        let p = ansatz_parts(&u, Elem(0), Elem(1), Elem(2)).unwrap();
        assert!(p.line_ae.is_empty() && p.line_af.is_empty());
        assert_eq!(p.outside, ElementSet::singleton(Elem(3)));
        assert_eq!(p.t, (y(&u, "3") * y(&u, "4")).square());
    }

    #[test]
    fn parts_on_near_pencil() {
        let m = Geometry::new(&["1", "2", "3", "4"], &[&["2", "3", "4"]]).to_matroid().unwrap();
        let p = ansatz_parts(&m, m.elem("1").unwrap(), m.elem("2").unwrap(), m.elem("3").unwrap()).unwrap();
        assert!(p.line_ae.is_empty());
        assert_eq!(p.line_af, m.set(&["4"]).unwrap());
        assert!(p.outside.is_empty());
        assert!(p.t.is_zero());
    }

    #[test]
    fn parts_reject_bad_input() {
        assert_eq!(
            ansatz_parts(&Matroid::uniform(2, 4), Elem(0), Elem(1), Elem(2)),
            Err(Error::RankNotThree(2))
        );
        assert_eq!(
            ansatz_parts(&Matroid::uniform(3, 4), Elem(0), Elem(1), Elem(1)),
            Err(Error::ElementInPair)
        );
    }

    #[test]
    fn ansatz_of_u34() {
        let u = Matroid::uniform(3, 4);
        let p = ansatz_polynomial(&u, Elem(0), Elem(1)).unwrap();
        assert_eq!(p, (y(&u, "3") * y(&u, "4")).square().scale(&rational(1, 2)));
    }

    #[test]
    fn ansatz_of_k4_is_exact() {
        let m = k4();
        let (e, f) = (m.elem("1").unwrap(), m.elem("2").unwrap());
        let p = ansatz_polynomial(&m, e, f).unwrap();
        let d = rayleigh_difference(&PairContext::new(&m, e, f).unwrap());
        assert_eq!(p, d);
        let shape = MonomialShape::ghij([Elem(2), Elem(3), Elem(4), Elem(5)]);
        assert_eq!(p.coefficient_of_shape(&shape), integer(-2));
    }

    #[test]
    fn ansatz_vanishes_when_everything_is_on_lines() {
        // 3, 4 on the line through 2; nothing avoids both lines through a
        let m = Geometry::new(&["1", "2", "3", "4"], &[&["2", "3", "4"]]).to_matroid().unwrap();
        let p = ansatz_polynomial(&m, m.elem("1").unwrap(), m.elem("2").unwrap()).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn reduction_examples() {
        let m = Geometry::new(&["1", "2", "3", "4"], &[&["2", "3", "4"]]).to_matroid().unwrap();
        let r = reduce_to_closed_pair(&m, m.elem("2").unwrap(), m.elem("3").unwrap()).unwrap();
        assert_eq!(r.deleted, vec![m.elem("4").unwrap()]);
        assert_eq!(r.matroid.bases().len(), 1);

        let u = Matroid::uniform(3, 4);
        assert!(reduce_to_closed_pair(&u, Elem(0), Elem(1)).unwrap().deleted.is_empty());

        let m = Geometry::new(&labels6(), &[&["3", "4", "5", "6"]]).to_matroid().unwrap();
        let r = reduce_to_closed_pair(&m, m.elem("3").unwrap(), m.elem("4").unwrap()).unwrap();
        assert_eq!(r.deleted.len(), 2);

        let p = u.with_parallel_copy(Elem(0), "1'").unwrap();
        let r = reduce_to_closed_pair(&p, Elem(0), p.elem("1'").unwrap()).unwrap();
        assert!(r.pair_dependent);
    }

    #[test]
    fn certify_k4() {
        let m = k4();
        let r = certify(&m, m.elem("1").unwrap(), m.elem("2").unwrap()).unwrap();
        assert_eq!(r.kind, CertificateKind::Ansatz);
        assert!(r.verdict);
        assert!(r.residual.is_zero());
        assert!(r.identity_holds());
        assert!(r.shapes_ok);
        assert_eq!(r.unreduced_dominance, Some(true));
    }

    #[test]
    fn certify_rank_two() {
        let u = Matroid::uniform(2, 4);
        let r = certify(&u, Elem(0), Elem(1)).unwrap();
        assert_eq!(r.kind, CertificateKind::RankAtMostTwo);
        assert!(r.verdict);
        assert!(r.ansatz.is_zero());
    }

    #[test]
    fn certify_parallel_pair() {
        let u = Matroid::uniform(3, 4);
        let p = u.with_parallel_copy(Elem(0), "1'").unwrap();
        let r = certify(&p, Elem(0), p.elem("1'").unwrap()).unwrap();
        assert_eq!(r.kind, CertificateKind::ParallelProduct);
        assert!(r.verdict);
    }

    #[test]
    fn certify_rejects_rank_four() {
        assert_eq!(certify(&Matroid::uniform(4, 5), Elem(0), Elem(1)), Err(Error::RankAboveThree(4)));
    }

    #[test]
    fn certify_with_loop() {
        let u = Matroid::uniform(3, 4);
        let mut labels: Vec<String> = u.labels().to_vec();
        labels.push("z".into());
        let m = Matroid::from_parts(labels.into(), ElementSet::full(5), 3, u.bases().to_vec());
        let z = m.elem("z").unwrap();
        let r = certify(&m, Elem(0), Elem(1)).unwrap();
        assert_eq!(r.loops_removed, ElementSet::singleton(z));
        assert!(r.verdict);
        let r = certify(&m, Elem(0), z).unwrap();
        assert_eq!(r.kind, CertificateKind::LoopInPair);
        assert!(r.delta.is_zero());
    }
}
