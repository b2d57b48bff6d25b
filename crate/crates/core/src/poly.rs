//! Exact sparse multivariate polynomials with rational coefficients.
//!
//! Variables are matroid elements ([`Elem`]). Terms are kept in a map from
//! monomial to nonzero coefficient, ordered graded-lexicographically with
//! lower element indices more significant. Text output lists terms from the
//! largest monomial down, e.g. `+1 * y_3^2 y_4^2 -2 * y_3 y_4 y_5 y_6`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matroid::{Elem, ElementSet};

pub type Coeff = BigRational;

pub fn rational(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Product of variables with positive exponents, sorted by element.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Elem, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(e: Elem) -> Monomial {
        Monomial(vec![(e, 1)])
    }

    /// `y^S`, the squarefree monomial of a set.
    pub fn of_set(s: ElementSet) -> Monomial {
        Monomial(s.iter().map(|e| (e, 1)).collect())
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (Elem, u32)>) -> Monomial {
        let mut map: BTreeMap<Elem, u32> = BTreeMap::new();
        for (e, k) in exps {
            *map.entry(e).or_default() += k;
        }
        Monomial(map.into_iter().filter(|&(_, k)| k > 0).collect())
    }

    pub fn exponents(&self) -> &[(Elem, u32)] {
        &self.0
    }

    pub fn exponent(&self, e: Elem) -> u32 {
        self.0.iter().find(|p| p.0 == e).map_or(0, |p| p.1)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn support(&self) -> ElementSet {
        self.0.iter().map(|p| p.0).collect()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn product(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                        // `self` has a positive exponent on a more significant variable
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match a.1.cmp(&b.1) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            ord => return ord,
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Polynomial {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn var(e: Elem) -> Polynomial {
        Polynomial::term(Monomial::var(e), Coeff::one())
    }

    pub fn term(m: Monomial, c: Coeff) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// Sum of the variables in `s`.
    pub fn linear_sum(s: ElementSet) -> Polynomial {
        s.iter().fold(Polynomial::zero(), |acc, e| acc + Polynomial::var(e))
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the largest monomial to the smallest.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    pub fn variables(&self) -> ElementSet {
        self.terms.keys().fold(ElementSet::EMPTY, |acc, m| acc.union(m.support()))
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn square(&self) -> Polynomial {
        self * self
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Coefficientwise order: every coefficient of `self - other` is `>= 0`.
    pub fn dominates(&self, other: &Polynomial) -> bool {
        (self - other).is_nonnegative()
    }

    /// Exact value at a point. Every variable that occurs must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<Elem, Coeff>) -> Result<Coeff> {
        let mut total = Coeff::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(e, k) in m.exponents() {
                let x = point
                    .get(&e)
                    .ok_or_else(|| Error::MissingVariable(format!("#{}", e.0)))?;
                v *= num_traits::pow(x.clone(), k as usize);
            }
            total += v;
        }
        Ok(total)
    }

    /// Simultaneous substitution; variables absent from `map` are kept.
    pub fn substitute(&self, map: &BTreeMap<Elem, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut image = Polynomial::constant(c.clone());
            for &(e, k) in m.exponents() {
                match map.get(&e) {
                    Some(q) => image = &image * &q.pow(k),
                    None => kept = kept.product(&Monomial(vec![(e, k)])),
                }
            }
            for (im, ic) in image.terms {
                out.add_term(im.product(&kept), ic);
            }
        }
        out
    }

    /// Exponent reflection `v ↦ cap·[c ∈ scope] − v`, i.e. `y^(cap·scope) · p(1/y)`.
    ///
    /// Fails if a monomial uses a variable outside `scope` or an exponent
    /// above `cap`.
    pub fn reflect(&self, scope: ElementSet, cap: u32) -> Result<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if !m.support().is_subset(scope) {
                return Err(Error::NotReflectable);
            }
            let mut exps = Vec::with_capacity(scope.len());
            for e in scope.iter() {
                let k = m.exponent(e);
                if k > cap {
                    return Err(Error::NotReflectable);
                }
                exps.push((e, cap - k));
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    pub fn coefficient_of_shape(&self, shape: &MonomialShape) -> Coeff {
        self.coefficient(&shape.monomial())
    }

    /// Canonical text form with variables written `y_<label>`.
    pub fn to_text<S: AsRef<str>>(&self, labels: &[S]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms() {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push(if c.is_negative() { '-' } else { '+' });
            out.push_str(&format_rational(&c.abs()));
            if !m.is_one() {
                out.push_str(" *");
                for &(e, k) in m.exponents() {
                    write!(out, " y_{}", labels[e.index()].as_ref()).unwrap();
                    if k > 1 {
                        write!(out, "^{k}").unwrap();
                    }
                }
            }
        }
        out
    }
}

pub fn format_rational(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.product(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// The three degree-4 monomial shapes that occur in rank-3 Rayleigh
/// differences of closed pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeKind {
    /// `y_g^2 y_h^2`
    Gghh,
    /// `y_g^2 y_h y_i`
    Gghi,
    /// `y_g y_h y_i y_j`
    Ghij,
}

impl ShapeKind {
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::Gghh => "y_g^2 y_h^2",
            ShapeKind::Gghi => "y_g^2 y_h y_i",
            ShapeKind::Ghij => "y_g y_h y_i y_j",
        }
    }
}

/// A concrete monomial of one of the [`ShapeKind`]s. For `Gghi` the squared
/// element comes first in `support`; otherwise `support` is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialShape {
    pub kind: ShapeKind,
    pub support: Vec<Elem>,
}

impl MonomialShape {
    pub fn gghh(g: Elem, h: Elem) -> MonomialShape {
        let mut support = vec![g, h];
        support.sort();
        MonomialShape { kind: ShapeKind::Gghh, support }
    }

    pub fn gghi(g: Elem, h: Elem, i: Elem) -> MonomialShape {
        let mut rest = [h, i];
        rest.sort();
        MonomialShape { kind: ShapeKind::Gghi, support: vec![g, rest[0], rest[1]] }
    }

    pub fn ghij(elems: [Elem; 4]) -> MonomialShape {
        let mut support = elems.to_vec();
        support.sort();
        MonomialShape { kind: ShapeKind::Ghij, support }
    }

    pub fn monomial(&self) -> Monomial {
        let exps: Vec<(Elem, u32)> = match self.kind {
            ShapeKind::Gghh => self.support.iter().map(|&e| (e, 2)).collect(),
            ShapeKind::Gghi => {
                let mut v = vec![(self.support[0], 2)];
                v.extend(self.support[1..].iter().map(|&e| (e, 1)));
                v
            }
            ShapeKind::Ghij => self.support.iter().map(|&e| (e, 1)).collect(),
        };
        Monomial::from_exponents(exps)
    }

    /// Classifies a monomial, or `None` if it has none of the three shapes.
    pub fn classify(m: &Monomial) -> Option<MonomialShape> {
        let mut exps: Vec<u32> = m.exponents().iter().map(|p| p.1).collect();
        exps.sort_unstable();
        let elems: Vec<Elem> = m.exponents().iter().map(|p| p.0).collect();
        match exps.as_slice() {
            [2, 2] => Some(MonomialShape::gghh(elems[0], elems[1])),
            [1, 1, 2] => {
                let g = m.exponents().iter().find(|p| p.1 == 2).unwrap().0;
                let rest: Vec<Elem> = elems.into_iter().filter(|&e| e != g).collect();
                Some(MonomialShape::gghi(g, rest[0], rest[1]))
            }
            [1, 1, 1, 1] => Some(MonomialShape::ghij([elems[0], elems[1], elems[2], elems[3]])),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(i: u8) -> Polynomial {
        Polynomial::var(Elem(i))
    }

    fn labels() -> Vec<String> {
        (1..=8).map(|i| i.to_string()).collect()
    }

    #[test]
    fn difference_of_squares() {
        let p = (y(0) + y(1)) * (y(0) - y(1));
        assert_eq!(p, y(0).square() - y(1).square());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn k4_square_text() {
        let sq = (y(2) * y(3) - y(4) * y(5)).square();
        assert_eq!(sq.to_text(&labels()), "+1 * y_3^2 y_4^2 -2 * y_3 y_4 y_5 y_6 +1 * y_5^2 y_6^2");
        let shape = MonomialShape::ghij([Elem(2), Elem(3), Elem(4), Elem(5)]);
        assert_eq!(sq.coefficient_of_shape(&shape), integer(-2));
        assert!(!sq.dominates(&Polynomial::zero()));
        assert!(!Polynomial::zero().dominates(&sq));
    }

    #[test]
    fn text_forms() {
        assert_eq!(Polynomial::zero().to_text(&labels()), "0");
        let p = Polynomial::constant(rational(-3, 4)) + y(0).scale(&rational(1, 2));
        assert_eq!(p.to_text(&labels()), "+1/2 * y_1 -3/4");
    }

    #[test]
    fn dominance_examples() {
        let p = y(0) * y(1) + y(2);
        assert!(p.dominates(&p));
        assert!(!y(0).square().dominates(&(y(0) * y(1))));
    }

    #[test]
    fn evaluate_examples() {
        let point: BTreeMap<Elem, Coeff> = [(Elem(0), integer(2)), (Elem(1), integer(3))].into();
        assert_eq!((y(0) * y(1)).evaluate(&point).unwrap(), integer(6));
        assert!(y(5).evaluate(&point).is_err());
    }

    #[test]
    fn substitute_examples() {
        let map: BTreeMap<Elem, Polynomial> = [(Elem(1), y(1) + y(7))].into();
        assert_eq!((y(0) * y(1)).substitute(&map), y(0) * y(1) + y(0) * y(7));
        let p = y(0).square() * y(2) - y(3);
        assert_eq!(p.substitute(&BTreeMap::new()), p);
        let ident: BTreeMap<Elem, Polynomial> = (0..4).map(|i| (Elem(i), y(i))).collect();
        assert_eq!(p.substitute(&ident), p);
    }

    #[test]
    fn reflect_examples() {
        let scope = ElementSet::singleton(Elem(0));
        assert_eq!(Polynomial::one().reflect(scope, 2).unwrap(), y(0).square());
        assert_eq!(y(0).pow(3).reflect(scope, 2), Err(Error::NotReflectable));
        assert_eq!(y(1).reflect(scope, 2), Err(Error::NotReflectable));
    }

    #[test]
    fn shapes() {
        let m = Monomial::from_exponents([(Elem(4), 1), (Elem(2), 2), (Elem(3), 1)]);
        let s = MonomialShape::classify(&m).unwrap();
        assert_eq!(s.kind, ShapeKind::Gghi);
        assert_eq!(s.support, vec![Elem(2), Elem(3), Elem(4)]);
        assert_eq!(s.monomial(), m);
        assert!(MonomialShape::classify(&Monomial::from_exponents([(Elem(0), 3), (Elem(1), 1)])).is_none());
        assert_eq!(
            (y(2) * y(3)).coefficient_of_shape(&MonomialShape::gghh(Elem(2), Elem(3))),
            integer(0)
        );
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents([(Elem(2), 2), (Elem(3), 2)]);
        let b = Monomial::from_exponents([(Elem(2), 1), (Elem(3), 1), (Elem(4), 1), (Elem(5), 1)]);
        let c = Monomial::from_exponents([(Elem(4), 2), (Elem(5), 2)]);
        assert!(a > b && b > c);
        assert!(Monomial::var(Elem(0)) < Monomial::from_exponents([(Elem(7), 2)]));
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((0u8..4, 0u32..3, 0u8..4, -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
            ts.into_iter().fold(Polynomial::zero(), |acc, (a, ka, b, n, d)| {
                let m = Monomial::from_exponents([(Elem(a), ka), (Elem(b), 1)]);
                acc + Polynomial::term(m, rational(n, d))
            })
        })
    }

    fn arb_point() -> impl Strategy<Value = BTreeMap<Elem, Coeff>> {
        prop::collection::vec((-9i64..10, 1i64..5), 4)
            .prop_map(|v| v.into_iter().enumerate().map(|(i, (n, d))| (Elem(i as u8), rational(n, d))).collect())
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn evaluation_is_multiplicative(p in arb_poly(), q in arb_poly(), x in arb_point()) {
            let lhs = (&p * &q).evaluate(&x).unwrap();
            prop_assert_eq!(lhs, p.evaluate(&x).unwrap() * q.evaluate(&x).unwrap());
        }

        #[test]
        fn dominance_is_a_partial_order(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert!(p.dominates(&p));
            if p.dominates(&q) && q.dominates(&p) {
                prop_assert_eq!(&p, &q);
            }
            if p.dominates(&q) && q.dominates(&r) {
                prop_assert!(p.dominates(&r));
            }
        }

        #[test]
        fn reflection_is_an_involution(p in arb_poly()) {
            let scope = ElementSet::full(4);
            if let Ok(once) = p.reflect(scope, 3) {
                prop_assert_eq!(once.reflect(scope, 3).unwrap(), p);
            }
        }
    }
}
