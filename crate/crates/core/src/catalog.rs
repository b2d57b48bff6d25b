//! Named matroids and exhaustive enumeration of simple rank-3 matroids.
//!
//! A simple rank-3 matroid is the same thing as a linear space that is not a
//! single line: a point set with lines of three or more points, any two of
//! which share at most one point. [`enumerate_simple_rank3`] lists these up to
//! isomorphism by growing linear spaces one point at a time.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matroid::io::{parse_file, MatroidFile};
use crate::matroid::{is_isomorphic, ElementSet, Geometry, Matroid};

/// Figure instances shipped as geometry-form JSON files.
const FIGURES: &[(&str, &str)] = &[
    ("fig1.I", include_str!("../data/catalog/fig1.I.json")),
    ("fig1.II", include_str!("../data/catalog/fig1.II.json")),
    ("fig2.I", include_str!("../data/catalog/fig2.I.json")),
    ("fig2.II", include_str!("../data/catalog/fig2.II.json")),
    ("fig2.III", include_str!("../data/catalog/fig2.III.json")),
    ("fig2.IV", include_str!("../data/catalog/fig2.IV.json")),
    ("fig3.I", include_str!("../data/catalog/fig3.I.json")),
    ("fig3.II", include_str!("../data/catalog/fig3.II.json")),
    ("fig3.III", include_str!("../data/catalog/fig3.III.json")),
    ("fig3.IV", include_str!("../data/catalog/fig3.IV.json")),
    ("fig3.V", include_str!("../data/catalog/fig3.V.json")),
    ("fig3.VI", include_str!("../data/catalog/fig3.VI.json")),
    ("fig3.VII", include_str!("../data/catalog/fig3.VII.json")),
    ("fig3.VIII", include_str!("../data/catalog/fig3.VIII.json")),
    ("fig3.IX", include_str!("../data/catalog/fig3.IX.json")),
];

/// Names of the figure instances, in catalog order.
pub fn figure_names() -> impl Iterator<Item = &'static str> {
    FIGURES.iter().map(|f| f.0)
}

/// The raw file behind a figure instance.
pub fn figure_file(name: &str) -> Option<MatroidFile> {
    FIGURES
        .iter()
        .find(|f| f.0 == name)
        .map(|f| parse_file(f.1).expect("catalog files are well-formed"))
}

/// Looks up a named instance.
///
/// Accepted names: the figure instances (`fig1.I` ... `fig3.IX`), `K4` (the
/// cycle matroid of the complete graph on four vertices, same labelling as
/// `fig3.IV`) and uniform matroids `U_<r>_<n>`. A suffix `+x` adds an
/// element `x'` parallel to `x`, and may repeat: `K4+3+5`.
pub fn named(name: &str) -> Result<Matroid> {
    if let Some((base, doubled)) = name.rsplit_once('+') {
        let m = named(base)?;
        let e = m.elem(doubled).map_err(|_| Error::UnknownName(name.to_string()))?;
        return m.with_parallel_copy(e, &format!("{doubled}'"));
    }
    if let Some(file) = figure_file(name) {
        return file.to_matroid();
    }
    if name == "K4" {
        return named("fig3.IV");
    }
    if let Some(rest) = name.strip_prefix("U_") {
        if let Some((r, n)) = rest.split_once('_') {
            if let (Ok(r), Ok(n)) = (r.parse::<usize>(), n.parse::<usize>()) {
                if r <= n && n <= 64 {
                    return Ok(Matroid::uniform(r, n));
                }
            }
        }
    }
    Err(Error::UnknownName(name.to_string()))
}

/// Isomorphism classes of simple rank-3 matroids on `n` elements.
#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub n: usize,
    pub classes: Vec<Matroid>,
}

impl EnumerationResult {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

pub const MAX_ENUMERATION: usize = 8;

/// All simple rank-3 matroids on `n` points up to isomorphism, `3 <= n <= 8`.
///
/// Classes are ordered by number of bases, then by line sizes (largest
/// first); ties keep discovery order, which is deterministic.
pub fn enumerate_simple_rank3(n: usize) -> Result<EnumerationResult> {
    if !(3..=MAX_ENUMERATION).contains(&n) {
        return Err(Error::OutOfRange(n));
    }
    let spaces = linear_spaces(n);
    let mut classes: Vec<(usize, Vec<usize>, Matroid)> = spaces
        .into_iter()
        .filter(|ls| !ls.lines.iter().any(|l| l.len() == n))
        .map(|ls| {
            let mut sizes: Vec<usize> = ls.lines.iter().map(|l| l.len()).collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            let m = ls.to_matroid();
            (m.bases().len(), sizes, m)
        })
        .collect();
    classes.sort_by(|a, b| (a.0, &b.1).cmp(&(b.0, &a.1)));
    Ok(EnumerationResult { n, classes: classes.into_iter().map(|c| c.2).collect() })
}

/// A linear space on points `0..n`, lines of size at least three.
#[derive(Clone, Debug, PartialEq, Eq)]
struct LinearSpace {
    n: usize,
    lines: Vec<ElementSet>,
}

impl LinearSpace {
    fn covered(&self, a: usize, b: usize) -> bool {
        let pair = ElementSet(1 << a | 1 << b);
        self.lines.iter().any(|l| pair.is_subset(*l))
    }

    /// Rank-3 matroid when the points are not collinear; a line of all points
    /// yields the rank-2 uniform matroid, which only serves as a seed.
    fn to_matroid(&self) -> Matroid {
        let ground = ElementSet::full(self.n);
        let labels = crate::matroid::numeric_labels(self.n);
        if self.lines.contains(&ground) {
            let bases = ground.subsets_of_size(2).collect();
            return Matroid::from_parts(labels, ground, 2, bases);
        }
        let bases = ground
            .subsets_of_size(3)
            .filter(|t| !self.lines.iter().any(|l| t.is_subset(*l)))
            .collect();
        Matroid::from_parts(labels, ground, 3, bases)
    }

    fn invariant(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.lines.iter().map(|l| l.len()).collect();
        sizes.sort_unstable();
        let mut profile: Vec<Vec<usize>> = (0..self.n)
            .map(|p| {
                let mut v: Vec<usize> = self
                    .lines
                    .iter()
                    .filter(|l| l.0 >> p & 1 == 1)
                    .map(|l| l.len())
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();
        profile.sort();
        let mut key = sizes;
        key.push(usize::MAX);
        for v in profile {
            key.extend(v);
            key.push(usize::MAX);
        }
        key
    }

    /// Every linear space on `n + 1` points whose deletion of the new point
    /// `n` gives back `self`.
    fn extensions(&self) -> Vec<LinearSpace> {
        let mut out = Vec::new();
        let mut blocks = Vec::new();
        self.extend_blocks(0, ElementSet::EMPTY, &mut blocks, &mut out);
        out
    }

    // `blocks` are the old-point sets of the lines through the new point:
    // either a whole existing line, or a set of pairwise uncovered points.
    fn extend_blocks(
        &self,
        from: usize,
        decided: ElementSet,
        blocks: &mut Vec<(ElementSet, bool)>,
        out: &mut Vec<LinearSpace>,
    ) {
        let next = (from..self.n).find(|&x| decided.0 >> x & 1 == 0);
        let Some(x) = next else {
            out.push(self.assemble(blocks));
            return;
        };
        let xs = ElementSet(1 << x);
        self.extend_blocks(x + 1, decided.union(xs), blocks, out);
        for line in &self.lines {
            if line.0 >> x & 1 == 1 && line.is_disjoint(decided) {
                blocks.push((*line, true));
                self.extend_blocks(x + 1, decided.union(*line), blocks, out);
                blocks.pop();
            }
        }
        let free: Vec<usize> = (x + 1..self.n)
            .filter(|&y| decided.0 >> y & 1 == 0 && !self.covered(x, y))
            .collect();
        self.grow_new_block(x, xs, &free, 0, decided, blocks, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn grow_new_block(
        &self,
        x: usize,
        block: ElementSet,
        free: &[usize],
        start: usize,
        decided: ElementSet,
        blocks: &mut Vec<(ElementSet, bool)>,
        out: &mut Vec<LinearSpace>,
    ) {
        for i in start..free.len() {
            let y = free[i];
            if block.iter().any(|b| self.covered(b.index(), y)) {
                continue;
            }
            let grown = block.union(ElementSet(1 << y));
            blocks.push((grown, false));
            self.extend_blocks(x + 1, decided.union(grown), blocks, out);
            blocks.pop();
            self.grow_new_block(x, grown, free, i + 1, decided, blocks, out);
        }
    }

    fn assemble(&self, blocks: &[(ElementSet, bool)]) -> LinearSpace {
        let p = ElementSet(1 << self.n);
        let mut lines: Vec<ElementSet> = self
            .lines
            .iter()
            .filter(|l| !blocks.iter().any(|b| b.1 && b.0 == **l))
            .copied()
            .collect();
        lines.extend(blocks.iter().map(|b| b.0.union(p)));
        lines.sort_by_key(|l| l.0);
        LinearSpace { n: self.n + 1, lines }
    }
}

/// All linear spaces on `n` points up to isomorphism, including the single
/// line.
fn linear_spaces(n: usize) -> Vec<LinearSpace> {
    let mut level = vec![LinearSpace { n: 2, lines: Vec::new() }];
    for _ in 2..n {
        let mut reps: Vec<LinearSpace> = Vec::new();
        let mut buckets: BTreeMap<Vec<usize>, Vec<(usize, Matroid)>> = BTreeMap::new();
        for space in &level {
            for ext in space.extensions() {
                let bucket = buckets.entry(ext.invariant()).or_default();
                let m = ext.to_matroid();
                if bucket.iter().any(|(_, other)| is_isomorphic(&m, other).is_some()) {
                    continue;
                }
                bucket.push((reps.len(), m));
                reps.push(ext);
            }
        }
        level = reps;
    }
    level
}

/// Reads the geometry of a simple rank-3 matroid back out, for writing
/// enumeration results in the geometry file form.
pub fn geometry_file(m: &Matroid, name: &str) -> Result<MatroidFile> {
    let g = Geometry::from_matroid(m)?;
    Ok(MatroidFile::from_geometry(&g, Some(name)))
}
