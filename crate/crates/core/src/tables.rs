//! Coefficient tables for the three quartic monomial shapes.
//!
//! For a closed pair `{e, f}` of a rank-3 matroid, the coefficient of a
//! monomial in ΔM{e,f} depends only on the restriction `N` of the matroid to
//! the monomial's support plus `e, f` (and, for `y_g² y_h y_i`, on which
//! element is squared). Each row below names such a restriction from the
//! figure catalog and records the two coefficients of
//! `M_e^f M_f^e − M_ef M^ef`, plus the values the Ansatz `P` may take there.
//! The coefficient in `P` also depends on points outside `N`, so it is
//! observed over every ambient simple rank-3 matroid up to a size bound that
//! contains `N` with `{e, f}` closed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::catalog::{enumerate_simple_rank3, named};
use crate::certificate::ansatz_polynomial;
use crate::error::Result;
use crate::matroid::isomorphism_fixing;
use crate::matroid::{Elem, ElementSet, Matroid};
use crate::poly::{format_rational, integer, rational, Coeff, MonomialShape, Polynomial, ShapeKind};
use crate::rayleigh::{difference_terms, PairContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub restriction: &'static str,
    pub e: &'static str,
    pub f: &'static str,
    /// The squared element, for `y_g² y_h y_i` rows.
    pub g: Option<&'static str>,
    /// Coefficient in `M_e^f M_f^e`.
    pub positive: i64,
    /// Coefficient in `M_ef M^ef`.
    pub negative: i64,
    /// Values the coefficient in `P` may take, as `(numerator, denominator)`.
    pub ansatz_values: &'static [(i64, i64)],
    pub note: Option<char>,
}

impl TableRow {
    pub fn label(&self) -> String {
        let roman = self.restriction.split('.').nth(1).unwrap_or(self.restriction);
        match self.g {
            Some(g) => format!("{roman}{{{},{}}},{g}", self.e, self.f),
            None => format!("{roman}{{{},{}}}", self.e, self.f),
        }
    }

    pub fn permitted(&self) -> BTreeSet<Coeff> {
        self.ansatz_values.iter().map(|&(n, d)| rational(n, d)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub kind: ShapeKind,
    pub rows: Vec<TableRow>,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    restriction: &'static str,
    e: &'static str,
    f: &'static str,
    g: Option<&'static str>,
    positive: i64,
    negative: i64,
    ansatz_values: &'static [(i64, i64)],
    note: Option<char>,
) -> TableRow {
    TableRow { restriction, e, f, g, positive, negative, ansatz_values, note }
}

const ZERO: &[(i64, i64)] = &[(0, 1)];

/// The expected values for all three tables.
pub fn expected_tables() -> Vec<Table> {
    vec![
        Table {
            kind: ShapeKind::Gghh,
            rows: vec![
                row("fig1.I", "1", "2", None, 0, 0, ZERO, None),
                row("fig1.II", "1", "2", None, 1, 0, &[(1, 2), (3, 4), (1, 1)], Some('A')),
            ],
        },
        Table {
            kind: ShapeKind::Gghi,
            rows: vec![
                row("fig2.I", "1", "2", Some("3"), 0, 0, ZERO, None),
                row("fig2.II", "1", "2", Some("3"), 1, 1, ZERO, None),
                row("fig2.II", "1", "2", Some("5"), 1, 1, ZERO, None),
                row("fig2.III", "1", "2", Some("3"), 2, 0, &[(1, 2)], Some('B')),
                row("fig2.III", "1", "3", Some("2"), 2, 1, &[(1, 2), (1, 1)], Some('C')),
                row("fig2.III", "1", "3", Some("4"), 1, 1, ZERO, None),
                row("fig2.IV", "1", "2", Some("3"), 2, 1, &[(1, 2)], Some('B')),
            ],
        },
        Table {
            kind: ShapeKind::Ghij,
            rows: vec![
                row("fig3.I", "1", "2", None, 0, 0, ZERO, None),
                row("fig3.II", "1", "2", None, 3, 3, ZERO, None),
                row("fig3.III", "1", "2", None, 6, 0, ZERO, None),
                row("fig3.III", "1", "3", None, 3, 3, ZERO, None),
                row("fig3.IV", "1", "2", None, 2, 4, &[(-2, 1)], Some('D')),
                row("fig3.V", "1", "4", None, 3, 4, &[(-1, 1)], Some('E')),
                row("fig3.V", "4", "5", None, 4, 3, &[(-1, 2)], Some('F')),
                row("fig3.VI", "1", "2", None, 4, 4, &[(-1, 2)], Some('G')),
                row("fig3.VI", "1", "3", None, 5, 3, ZERO, None),
                row("fig3.VI", "3", "6", None, 4, 4, ZERO, None),
                row("fig3.VII", "1", "2", None, 5, 4, &[(0, 1), (1, 1)], Some('H')),
                row("fig3.VIII", "1", "2", None, 6, 3, ZERO, None),
                row("fig3.VIII", "1", "4", None, 5, 4, ZERO, None),
                row("fig3.IX", "1", "2", None, 6, 4, ZERO, None),
            ],
        },
    ]
}

/// Computed values for one row.
#[derive(Clone, Debug)]
pub struct RowResult {
    pub row: TableRow,
    pub positive: Coeff,
    pub negative: Coeff,
    /// Coefficients of the row's monomial in `P` over all ambient embeddings.
    pub observed: BTreeSet<Coeff>,
    pub embeddings: usize,
    /// The ΔM coefficient in every ambient embedding equals the one in `N`.
    pub delta_local: bool,
}

impl RowResult {
    pub fn delta_matches(&self) -> bool {
        self.positive == integer(self.row.positive) && self.negative == integer(self.row.negative)
    }

    pub fn ansatz_matches(&self) -> bool {
        !self.observed.is_empty() && self.observed.is_subset(&self.row.permitted())
    }

    pub fn matches(&self) -> bool {
        self.delta_matches() && self.ansatz_matches() && self.delta_local
    }
}

#[derive(Clone, Debug)]
pub struct TableResult {
    pub kind: ShapeKind,
    pub rows: Vec<RowResult>,
}

fn shape_for(kind: ShapeKind, others: &[Elem], g: Option<Elem>) -> MonomialShape {
    match kind {
        ShapeKind::Gghh => MonomialShape::gghh(others[0], others[1]),
        ShapeKind::Gghi => {
            let g = g.expect("y_g^2 y_h y_i rows name g");
            let rest: Vec<Elem> = others.iter().copied().filter(|&x| x != g).collect();
            MonomialShape::gghi(g, rest[0], rest[1])
        }
        ShapeKind::Ghij => MonomialShape::ghij([others[0], others[1], others[2], others[3]]),
    }
}

struct Ambient {
    matroid: Matroid,
    // (e, f) -> (P, ΔM) for closed ordered pairs
    pairs: BTreeMap<(Elem, Elem), (Polynomial, Polynomial)>,
}

fn ambients(max_n: usize) -> Result<Vec<Ambient>> {
    let mut out = Vec::new();
    for n in 4..=max_n {
        for m in enumerate_simple_rank3(n)?.classes {
            let mut pairs = BTreeMap::new();
            for e in m.elements() {
                for f in m.elements().filter(|&f| f != e) {
                    if m.is_closed(ElementSet::singleton(e).with(f))? {
                        let (pos, neg) = difference_terms(&PairContext::new(&m, e, f)?);
                        pairs.insert((e, f), (ansatz_polynomial(&m, e, f)?, &pos - &neg));
                    }
                }
            }
            out.push(Ambient { matroid: m, pairs });
        }
    }
    Ok(out)
}

fn reproduce_row(kind: ShapeKind, row: &TableRow, ambients: &[Ambient]) -> Result<RowResult> {
    let n_mat = named(row.restriction)?;
    let (e, f) = (n_mat.elem(row.e)?, n_mat.elem(row.f)?);
    let g = row.g.map(|g| n_mat.elem(g)).transpose()?;
    let others: Vec<Elem> = n_mat.elements().filter(|&x| x != e && x != f).collect();
    let shape = shape_for(kind, &others, g);
    let (pos, neg) = difference_terms(&PairContext::new(&n_mat, e, f)?);
    let positive = pos.coefficient_of_shape(&shape);
    let negative = neg.coefficient_of_shape(&shape);
    let local = &positive - &negative;

    let mut observed = BTreeSet::new();
    let mut embeddings = 0;
    let mut delta_local = true;
    for amb in ambients {
        let m = &amb.matroid;
        if m.len() < n_mat.len() {
            continue;
        }
        for (&(e2, f2), (p, delta)) in &amb.pairs {
            let rest = m.ground().without(e2).without(f2);
            for s in rest.subsets_of_size(others.len()) {
                let sub = m.restriction(s.with(e2).with(f2))?;
                let g_choices: Vec<Option<Elem>> = match g {
                    Some(_) => s.iter().map(Some).collect(),
                    None => vec![None],
                };
                for g2 in g_choices {
                    let mut fixed = vec![(e, e2), (f, f2)];
                    if let (Some(g), Some(g2)) = (g, g2) {
                        fixed.push((g, g2));
                    }
                    if isomorphism_fixing(&n_mat, &sub, &fixed).is_none() {
                        continue;
                    }
                    let image: Vec<Elem> = s.iter().collect();
                    let shape2 = shape_for(kind, &image, g2);
                    observed.insert(p.coefficient_of_shape(&shape2));
                    delta_local &= delta.coefficient_of_shape(&shape2) == local;
                    embeddings += 1;
                }
            }
        }
    }
    Ok(RowResult { row: row.clone(), positive, negative, observed, embeddings, delta_local })
}

/// Recomputes every row, observing `P` over ambient matroids with at most
/// `max_ambient` elements (4..=8).
pub fn reproduce(max_ambient: usize) -> Result<Vec<TableResult>> {
    let ambients = ambients(max_ambient)?;
    expected_tables()
        .into_iter()
        .map(|t| {
            let rows = t
                .rows
                .iter()
                .map(|r| reproduce_row(t.kind, r, &ambients))
                .collect::<Result<Vec<_>>>()?;
            Ok(TableResult { kind: t.kind, rows })
        })
        .collect()
}

fn set_text(s: &BTreeSet<Coeff>) -> String {
    s.iter().map(format_rational).collect::<Vec<_>>().join(",")
}

/// Plain-text rendering with one MATCH/MISMATCH status per row.
pub fn render(results: &[TableResult]) -> String {
    let mut out = String::new();
    for t in results {
        writeln!(out, "monomials of shape {}", t.kind.name()).unwrap();
        writeln!(
            out,
            "  {:<18} {:<12} {:<12} {:<14} {:<14} {:>6}  status",
            "N{e,f}", "delta", "expected", "P observed", "P permitted", "embeds"
        )
        .unwrap();
        for r in &t.rows {
            let computed = format!(
                "{}-{}={}",
                format_rational(&r.positive),
                format_rational(&r.negative),
                format_rational(&(&r.positive - &r.negative))
            );
            let expected = format!("{}-{}={}", r.row.positive, r.row.negative, r.row.positive - r.row.negative);
            let note = r.row.note.map(|c| format!(" ({c})")).unwrap_or_default();
            writeln!(
                out,
                "  {:<18} {:<12} {:<12} {:<14} {:<14} {:>6}  {}{}",
                r.row.label(),
                computed,
                expected,
                set_text(&r.observed),
                set_text(&r.row.permitted()),
                r.embeddings,
                if r.matches() { "MATCH" } else { "MISMATCH" },
                note
            )
            .unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_labels() {
        let t = expected_tables();
        assert_eq!(t[0].rows[1].label(), "II{1,2}");
        assert_eq!(t[1].rows[4].label(), "III{1,3},2");
        assert_eq!(t[2].rows[6].label(), "V{4,5}");
    }

    #[test]
    fn table_sizes() {
        let t = expected_tables();
        assert_eq!(t.iter().map(|t| t.rows.len()).collect::<Vec<_>>(), vec![2, 7, 14]);
    }

    #[test]
    fn rows_use_closed_pairs() {
        for t in expected_tables() {
            for r in &t.rows {
                let m = named(r.restriction).unwrap();
                let pair = m.set(&[r.e, r.f]).unwrap();
                assert!(m.is_closed(pair).unwrap(), "{}", r.label());
            }
        }
    }
}
