use std::collections::HashSet;

use super::{Elem, ElementSet, Matroid};

/// Finds an element bijection carrying the bases of `a` onto the bases of `b`.
///
/// Brute-force backtracking, pruned by basis counts and element degrees
/// (number of bases containing an element). Intended for small ground sets.
pub fn is_isomorphic(a: &Matroid, b: &Matroid) -> Option<Vec<(Elem, Elem)>> {
    isomorphism_fixing(a, b, &[])
}

/// Like [`is_isomorphic`], but every pair in `fixed` must be part of the
/// returned bijection.
pub fn isomorphism_fixing(
    a: &Matroid,
    b: &Matroid,
    fixed: &[(Elem, Elem)],
) -> Option<Vec<(Elem, Elem)>> {
    if a.len() != b.len() || a.rank() != b.rank() || a.bases().len() != b.bases().len() {
        return None;
    }
    let deg_a = degrees(a);
    let deg_b = degrees(b);
    let mut sa: Vec<usize> = a.elements().map(|e| deg_a[e.index()]).collect();
    let mut sb: Vec<usize> = b.elements().map(|e| deg_b[e.index()]).collect();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    let mut order: Vec<Elem> = fixed.iter().map(|p| p.0).collect();
    order.extend(a.elements().filter(|e| !fixed.iter().any(|p| p.0 == *e)));
    if order.len() != a.len() {
        return None;
    }
    let mut search = Search {
        a,
        b,
        deg_a,
        deg_b,
        b_bases: b.bases().iter().map(|s| s.0).collect(),
        order,
        fixed,
        image: [None; 64],
        used: ElementSet::EMPTY,
    };
    if search.extend(0, ElementSet::EMPTY) {
        let mut out: Vec<(Elem, Elem)> =
            a.elements().map(|e| (e, search.image[e.index()].unwrap())).collect();
        out.sort();
        Some(out)
    } else {
        None
    }
}

fn degrees(m: &Matroid) -> Vec<usize> {
    let mut d = vec![0; 64];
    for basis in m.bases() {
        for e in basis.iter() {
            d[e.index()] += 1;
        }
    }
    d
}

struct Search<'a> {
    a: &'a Matroid,
    b: &'a Matroid,
    deg_a: Vec<usize>,
    deg_b: Vec<usize>,
    b_bases: HashSet<u64>,
    order: Vec<Elem>,
    fixed: &'a [(Elem, Elem)],
    image: [Option<Elem>; 64],
    used: ElementSet,
}

impl Search<'_> {
    fn extend(&mut self, k: usize, prefix: ElementSet) -> bool {
        if k == self.order.len() {
            return true;
        }
        let x = self.order[k];
        let forced = self.fixed.iter().find(|p| p.0 == x).map(|p| p.1);
        let prefix = prefix.with(x);
        let candidates: Vec<Elem> = match forced {
            Some(y) => vec![y],
            None => self.b.elements().collect(),
        };
        for y in candidates {
            if !self.b.ground().contains(y)
                || self.used.contains(y)
                || self.deg_a[x.index()] != self.deg_b[y.index()]
            {
                continue;
            }
            self.image[x.index()] = Some(y);
            self.used.insert(y);
            if self.consistent(x, y, prefix) && self.extend(k + 1, prefix) {
                return true;
            }
            self.used.remove(y);
            self.image[x.index()] = None;
        }
        false
    }

    // Bases inside the mapped prefix that contain the new element must map to
    // bases, and the two sides must have equally many such bases.
    fn consistent(&self, x: Elem, y: Elem, prefix: ElementSet) -> bool {
        let mut count_a = 0;
        for basis in self.a.bases() {
            if basis.contains(x) && basis.is_subset(prefix) {
                let img: ElementSet = basis.iter().map(|e| self.image[e.index()].unwrap()).collect();
                if !self.b_bases.contains(&img.0) {
                    return false;
                }
                count_a += 1;
            }
        }
        let count_b = self
            .b
            .bases()
            .iter()
            .filter(|s| s.contains(y) && s.is_subset(self.used))
            .count();
        count_a == count_b
    }
}
