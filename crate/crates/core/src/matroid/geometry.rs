use std::sync::Arc;

use super::{make_labels, lookup, Elem, ElementSet, Matroid};
use crate::error::{Error, Result};

/// Point-line description of a simple rank-3 matroid.
///
/// Only lines with at least three points are listed; every other pair of
/// points spans its own two-point line implicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    pub points: Vec<String>,
    pub lines: Vec<Vec<String>>,
}

impl Geometry {
    pub fn new<S: AsRef<str>>(points: &[S], lines: &[&[S]]) -> Geometry {
        Geometry {
            points: points.iter().map(|p| p.as_ref().to_string()).collect(),
            lines: lines
                .iter()
                .map(|l| l.iter().map(|p| p.as_ref().to_string()).collect())
                .collect(),
        }
    }

    /// The rank-3 matroid whose bases are the non-collinear triples.
    pub fn to_matroid(&self) -> Result<Matroid> {
        let labels = make_labels(&self.points)?;
        let lines = self.line_sets(&labels)?;
        let ground = ElementSet::full(labels.len());
        if labels.len() < 3 || lines.contains(&ground) {
            return Err(Error::RankBelowThree);
        }
        let bases = ground
            .subsets_of_size(3)
            .filter(|t| !lines.iter().any(|l| t.is_subset(*l)))
            .collect();
        Ok(Matroid::from_parts(labels, ground, 3, bases))
    }

    fn line_sets(&self, labels: &Arc<[String]>) -> Result<Vec<ElementSet>> {
        let mut sets = Vec::with_capacity(self.lines.len());
        for line in &self.lines {
            let mut s = ElementSet::EMPTY;
            for p in line {
                let e = lookup(labels, p)?;
                if s.contains(e) {
                    return Err(Error::NotLinearSpace(format!("point {p} repeated on a line")));
                }
                s.insert(e);
            }
            if s.len() < 3 {
                return Err(Error::NotLinearSpace("line with fewer than three points".into()));
            }
            sets.push(s);
        }
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                if a.intersection(*b).len() > 1 {
                    return Err(Error::NotLinearSpace(
                        "two lines share more than one point".into(),
                    ));
                }
            }
        }
        Ok(sets)
    }

    /// Reads the lines (rank-2 flats with at least three points) off a simple
    /// rank-3 matroid.
    pub fn from_matroid(m: &Matroid) -> Result<Geometry> {
        if m.rank() != 3 {
            return Err(Error::RankNotThree(m.rank()));
        }
        let mut lines: Vec<ElementSet> = Vec::new();
        for pair in m.ground().subsets_of_size(2) {
            if m.rank_of(pair)? < 2 {
                return Err(Error::NotLinearSpace("matroid is not simple".into()));
            }
            let flat = m.closure(pair)?;
            if flat.len() >= 3 && !lines.contains(&flat) {
                lines.push(flat);
            }
        }
        let label = |e: Elem| m.label(e).to_string();
        Ok(Geometry {
            points: m.elements().map(label).collect(),
            lines: lines.into_iter().map(|l| l.iter().map(label).collect()).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_position() {
        let g = Geometry::new::<&str>(&["1", "2", "3", "4"], &[]);
        let m = g.to_matroid().unwrap();
        assert_eq!(m, Matroid::uniform(3, 4));
    }

    #[test]
    fn one_line() {
        let g = Geometry::new(&["1", "2", "3", "4"], &[&["2", "3", "4"]]);
        let m = g.to_matroid().unwrap();
        let want: Vec<ElementSet> = [["1", "2", "3"], ["1", "2", "4"], ["1", "3", "4"]]
            .iter()
            .map(|b| m.set(b).unwrap())
            .collect();
        assert_eq!(m.bases(), &want[..]);
        assert!(m.validate().is_empty());
        assert_eq!(Geometry::from_matroid(&m).unwrap(), g);
    }

    #[test]
    fn rejects_collinear() {
        let g = Geometry::new(&["1", "2", "3"], &[&["1", "2", "3"]]);
        assert_eq!(g.to_matroid(), Err(Error::RankBelowThree));
        let g = Geometry::new::<&str>(&["1", "2"], &[]);
        assert_eq!(g.to_matroid(), Err(Error::RankBelowThree));
    }

    #[test]
    fn rejects_non_linear_space() {
        let g = Geometry::new(&["1", "2", "3", "4", "5"], &[&["1", "2", "3"], &["1", "2", "4"]]);
        assert!(matches!(g.to_matroid(), Err(Error::NotLinearSpace(_))));
        let g = Geometry::new(&["1", "2", "3", "4"], &[&["1", "2"]]);
        assert!(matches!(g.to_matroid(), Err(Error::NotLinearSpace(_))));
    }
}
