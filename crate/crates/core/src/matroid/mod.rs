//! Matroids represented by their basis families.
//!
//! A [`Matroid`] is a ground set together with the list of its bases. All
//! derived objects (minors, duals, restrictions) keep the label universe of the
//! matroid they came from, so element indices and polynomial variables line up
//! between a matroid and everything computed from it.

mod geometry;
pub mod io;
mod iso;
mod set;

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

pub use geometry::Geometry;
pub use iso::{is_isomorphic, isomorphism_fixing};
pub use set::{Elem, ElementSet};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    labels: Arc<[String]>,
    ground: ElementSet,
    rank: usize,
    bases: Vec<ElementSet>,
}

impl Matroid {
    /// Builds a matroid from element labels and bases given by label.
    ///
    /// Only structural problems are rejected here (duplicate or unknown
    /// labels, too many elements). Matroid axioms are checked by
    /// [`Matroid::validate`].
    pub fn from_bases<S, B, L>(elements: &[S], rank: usize, bases: B) -> Result<Matroid>
    where
        S: AsRef<str>,
        B: IntoIterator<Item = L>,
        L: IntoIterator,
        L::Item: AsRef<str>,
    {
        let labels = make_labels(elements)?;
        let ground = ElementSet::full(labels.len());
        let mut sets = Vec::new();
        for basis in bases {
            let mut s = ElementSet::EMPTY;
            for label in basis {
                s.insert(lookup(&labels, label.as_ref())?);
            }
            sets.push(s);
        }
        Ok(Matroid::from_parts(labels, ground, rank, sets))
    }

    /// Low-level constructor over an existing label universe.
    pub fn from_parts(
        labels: Arc<[String]>,
        ground: ElementSet,
        rank: usize,
        mut bases: Vec<ElementSet>,
    ) -> Matroid {
        assert!(labels.len() <= 64);
        assert!(bases.iter().all(|b| b.is_subset(ground)));
        bases.sort_by_key(|b| b.0);
        bases.dedup();
        Matroid { labels, ground, rank, bases }
    }

    /// The uniform matroid `U_{r,n}` with labels `1..=n`.
    pub fn uniform(rank: usize, n: usize) -> Matroid {
        let labels = numeric_labels(n);
        let ground = ElementSet::full(n);
        let bases = ground.subsets_of_size(rank).collect();
        Matroid::from_parts(labels, ground, rank, bases)
    }

    pub fn labels(&self) -> &Arc<[String]> {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.index()]
    }

    pub fn ground(&self) -> ElementSet {
        self.ground
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.ground.iter()
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    pub fn is_basis(&self, s: ElementSet) -> bool {
        self.bases.binary_search_by_key(&s.0, |b| b.0).is_ok()
    }

    /// Looks up a ground-set element by label.
    pub fn elem(&self, label: &str) -> Result<Elem> {
        let e = lookup(&self.labels, label)?;
        if self.ground.contains(e) {
            Ok(e)
        } else {
            Err(Error::UnknownElement(label.to_string()))
        }
    }

    /// Looks up several labels at once.
    pub fn set(&self, labels: &[&str]) -> Result<ElementSet> {
        labels.iter().map(|l| self.elem(l)).collect()
    }

    pub fn display_set(&self, s: ElementSet) -> String {
        let parts: Vec<&str> = s.iter().map(|e| self.label(e)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Reports every violated matroid axiom; empty means `self` is a matroid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.bases.is_empty() {
            out.push("empty basis family".to_string());
        }
        for b in &self.bases {
            if b.len() != self.rank {
                out.push(format!(
                    "unequal cardinality: basis {} has size {}, rank is {}",
                    self.display_set(*b),
                    b.len(),
                    self.rank
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in b1.difference(b2) {
                    let ok = b2
                        .difference(b1)
                        .iter()
                        .any(|y| self.is_basis(b1.without(x).with(y)));
                    if !ok {
                        out.push(format!(
                            "basis exchange fails for B1={}, B2={}, x={}",
                            self.display_set(b1),
                            self.display_set(b2),
                            self.label(x)
                        ));
                    }
                }
            }
        }
        out
    }

    fn check_subset(&self, s: ElementSet) -> Result<()> {
        if s.is_subset(self.ground) {
            Ok(())
        } else {
            Err(Error::NotSubset)
        }
    }

    /// Rank of `s`: the largest intersection of `s` with a basis.
    pub fn rank_of(&self, s: ElementSet) -> Result<usize> {
        self.check_subset(s)?;
        Ok(self.rank_unchecked(s))
    }

    fn rank_unchecked(&self, s: ElementSet) -> usize {
        self.bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0)
    }

    pub fn closure(&self, s: ElementSet) -> Result<ElementSet> {
        let r = self.rank_of(s)?;
        Ok(self
            .ground
            .iter()
            .filter(|&x| s.contains(x) || self.rank_unchecked(s.with(x)) == r)
            .collect())
    }

    pub fn is_dependent(&self, s: ElementSet) -> Result<bool> {
        Ok(self.rank_of(s)? < s.len())
    }

    pub fn is_closed(&self, s: ElementSet) -> Result<bool> {
        Ok(self.closure(s)? == s)
    }

    /// Elements contained in no basis.
    pub fn loops(&self) -> ElementSet {
        let covered = self.bases.iter().fold(ElementSet::EMPTY, |acc, b| acc.union(*b));
        self.ground.difference(covered)
    }

    /// Elements contained in every basis.
    pub fn coloops(&self) -> ElementSet {
        if self.bases.is_empty() {
            return ElementSet::EMPTY;
        }
        self.bases.iter().fold(self.ground, |acc, b| acc.intersection(*b))
    }

    /// Contracts `contract` and deletes `delete`.
    ///
    /// The basis family is `{ B \ I : I ⊆ B ⊆ E \ J }`. When `I` is dependent
    /// no basis contains it and the result has an empty basis family, so its
    /// generating polynomial is zero. The nominal rank is `rank - |I|`.
    pub fn minor(&self, contract: ElementSet, delete: ElementSet) -> Result<Matroid> {
        self.check_subset(contract)?;
        self.check_subset(delete)?;
        if !contract.is_disjoint(delete) {
            return Err(Error::OverlappingMinor);
        }
        let bases = self
            .bases
            .iter()
            .filter(|b| contract.is_subset(**b) && b.is_disjoint(delete))
            .map(|b| b.difference(contract))
            .collect();
        let ground = self.ground.difference(contract.union(delete));
        let rank = self.rank.saturating_sub(contract.len());
        Ok(Matroid::from_parts(self.labels.clone(), ground, rank, bases))
    }

    pub fn contract(&self, s: ElementSet) -> Result<Matroid> {
        self.minor(s, ElementSet::EMPTY)
    }

    pub fn delete(&self, s: ElementSet) -> Result<Matroid> {
        self.minor(ElementSet::EMPTY, s)
    }

    pub fn dual(&self) -> Matroid {
        let bases = self.bases.iter().map(|b| self.ground.difference(*b)).collect();
        let rank = self.ground.len() - self.rank;
        Matroid::from_parts(self.labels.clone(), self.ground, rank, bases)
    }

    /// Standard restriction to `s`: keeps its own rank, unlike [`Matroid::minor`].
    pub fn restriction(&self, s: ElementSet) -> Result<Matroid> {
        let r = self.rank_of(s)?;
        let bases = self
            .bases
            .iter()
            .map(|b| b.intersection(s))
            .filter(|b| b.len() == r)
            .collect();
        Ok(Matroid::from_parts(self.labels.clone(), s, r, bases))
    }

    /// Applies an element map (a bijection of the ground set onto a subset of
    /// the universe) to ground set and bases.
    pub fn relabel(&self, map: impl Fn(Elem) -> Elem) -> Matroid {
        let image = |s: ElementSet| s.iter().map(&map).collect::<ElementSet>();
        let ground = image(self.ground);
        assert_eq!(ground.len(), self.ground.len(), "relabel map must be injective");
        let bases = self.bases.iter().map(|b| image(*b)).collect();
        Matroid::from_parts(self.labels.clone(), ground, self.rank, bases)
    }

    /// Adds a new element `label` parallel to `e`.
    pub fn with_parallel_copy(&self, e: Elem, label: &str) -> Result<Matroid> {
        if self.labels.iter().any(|l| l == label) {
            return Err(Error::DuplicateElement(label.to_string()));
        }
        if self.labels.len() >= 64 {
            return Err(Error::TooManyElements(self.labels.len() + 1));
        }
        let mut labels: Vec<String> = self.labels.to_vec();
        labels.push(label.to_string());
        let copy = Elem((labels.len() - 1) as u8);
        let mut bases = self.bases.clone();
        bases.extend(self.bases.iter().filter(|b| b.contains(e)).map(|b| b.without(e).with(copy)));
        Ok(Matroid::from_parts(labels.into(), self.ground.with(copy), self.rank, bases))
    }

    /// Deletes loops and keeps one representative per parallel class.
    pub fn simplify(&self) -> (Matroid, Simplification) {
        self.simplify_preferring(ElementSet::EMPTY)
    }

    /// Like [`Matroid::simplify`], but an element of `prefer` represents its
    /// class whenever the class has one (the smallest, if several).
    pub fn simplify_preferring(&self, prefer: ElementSet) -> (Matroid, Simplification) {
        let loops = self.loops();
        let mut remaining = self.ground.difference(loops);
        let mut classes = Vec::new();
        while let Some(first) = remaining.iter().next() {
            let class: ElementSet = remaining
                .iter()
                .filter(|&x| x == first || self.rank_unchecked(ElementSet::singleton(first).with(x)) == 1)
                .collect();
            let a = class.intersection(prefer).iter().next().unwrap_or(first);
            remaining = remaining.difference(class);
            classes.push((a, class.without(a)));
        }
        let parallel: ElementSet = classes.iter().fold(ElementSet::EMPTY, |acc, c| acc.union(c.1));
        let simple = self
            .delete(loops.union(parallel))
            .expect("loops and parallel copies lie in the ground set");
        (simple, Simplification { classes, loops })
    }
}

/// Record of a [`Matroid::simplify`] call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplification {
    /// Each representative with the parallel elements removed in its favour.
    pub classes: Vec<(Elem, ElementSet)>,
    pub loops: ElementSet,
}

impl Simplification {
    pub fn is_identity(&self) -> bool {
        self.loops.is_empty() && self.classes.iter().all(|(_, c)| c.is_empty())
    }

    /// The substitution `w_a = y_a + y_{a_1} + ... + y_{a_k}` for every
    /// representative `a`.
    pub fn substitution(&self) -> BTreeMap<Elem, Polynomial> {
        self.classes
            .iter()
            .map(|&(a, rest)| {
                let w = rest
                    .iter()
                    .fold(Polynomial::var(a), |acc, x| acc + Polynomial::var(x));
                (a, w)
            })
            .collect()
    }
}

pub(crate) fn numeric_labels(n: usize) -> Arc<[String]> {
    (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().into()
}

fn make_labels<S: AsRef<str>>(elements: &[S]) -> Result<Arc<[String]>> {
    if elements.len() > 64 {
        return Err(Error::TooManyElements(elements.len()));
    }
    let mut seen = HashSet::new();
    for e in elements {
        if !seen.insert(e.as_ref()) {
            return Err(Error::DuplicateElement(e.as_ref().to_string()));
        }
    }
    Ok(elements.iter().map(|e| e.as_ref().to_string()).collect::<Vec<_>>().into())
}

fn lookup(labels: &[String], label: &str) -> Result<Elem> {
    labels
        .iter()
        .position(|l| l == label)
        .map(|i| Elem(i as u8))
        .ok_or_else(|| Error::UnknownElement(label.to_string()))
}
