//! Sparse Laurent polynomials in two variables with exact coefficients.

mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, CoefficientDomain};
use crate::error::{Error, Result};

pub use text::PolyJson;

/// A point of ℤ², used both as a grid cell and as a monomial exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exp {
    pub x: i64,
    pub y: i64,
}

impl Exp {
    pub const ZERO: Exp = Exp { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Exp { x, y }
    }

    pub fn max_norm(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn scale(self, k: i64) -> Exp {
        Exp::new(self.x * k, self.y * k)
    }

    pub fn cross(self, other: Exp) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn is_primitive(self) -> bool {
        self.x.gcd(&self.y) == 1
    }

    /// Primitive representative of the line ℤ·self, with `x > 0` or `x = 0, y > 0`.
    /// Returns `None` for the zero vector.
    pub fn direction(self) -> Option<Exp> {
        if self.is_zero() {
            return None;
        }
        let g = self.x.gcd(&self.y);
        let (mut x, mut y) = (self.x / g, self.y / g);
        if x < 0 || (x == 0 && y < 0) {
            x = -x;
            y = -y;
        }
        Some(Exp::new(x, y))
    }

    /// Sign-normalized form of a vector without dividing out its content.
    pub fn half_plane(self) -> Exp {
        if self.x < 0 || (self.x == 0 && self.y < 0) {
            -self
        } else {
            self
        }
    }

    /// Total order used for every search and every set of vectors the
    /// library reports: by max-norm, then lexicographically on `(x, y)` with
    /// integers ranked `0, 1, -1, 2, -2, ...`.
    pub fn canonical_cmp(&self, other: &Exp) -> Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }

    pub fn canonical_key(&self) -> (i64, u64, u64) {
        (self.max_norm(), zigzag(self.x), zigzag(self.y))
    }
}

fn zigzag(v: i64) -> u64 {
    if v > 0 {
        2 * v as u64 - 1
    } else {
        2 * v.unsigned_abs()
    }
}

impl std::ops::Add for Exp {
    type Output = Exp;
    fn add(self, o: Exp) -> Exp {
        Exp::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Exp {
    type Output = Exp;
    fn sub(self, o: Exp) -> Exp {
        Exp::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Neg for Exp {
    type Output = Exp;
    fn neg(self) -> Exp {
        Exp::new(-self.x, -self.y)
    }
}

impl From<(i64, i64)> for Exp {
    fn from((x, y): (i64, i64)) -> Self {
        Exp::new(x, y)
    }
}

impl Serialize for Exp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Exp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[i64; 2]>::deserialize(d)?;
        Ok(Exp::new(x, y))
    }
}

/// 2×2 integer matrix with determinant ±1, acting on exponent vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct UnimodularMatrix {
    rows: [[i64; 2]; 2],
}

impl UnimodularMatrix {
    pub const IDENTITY: UnimodularMatrix = UnimodularMatrix {
        rows: [[1, 0], [0, 1]],
    };

    pub fn new(rows: [[i64; 2]; 2]) -> Result<Self> {
        let det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(UnimodularMatrix { rows })
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        self.rows
    }

    pub fn det(&self) -> i64 {
        self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]
    }

    pub fn apply(&self, u: Exp) -> Exp {
        let r = &self.rows;
        Exp::new(r[0][0] * u.x + r[0][1] * u.y, r[1][0] * u.x + r[1][1] * u.y)
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.rows;
        let det = self.det();
        UnimodularMatrix {
            rows: [[d * det, -b * det], [-c * det, a * det]],
        }
    }

    /// Matrix sending the primitive vector `u` to `(1, 0)`.
    ///
    /// With `s, t` from the extended gcd (`a·s + b·t = 1`) the completion
    /// `[[a, -t], [b, s]]` sends `(1, 0)` to `u`; its inverse is returned.
    pub fn straightening(u: Exp) -> Result<Self> {
        if !u.is_primitive() {
            return Err(Error::NotPrimitive(u.x, u.y));
        }
        let e = u.x.extended_gcd(&u.y);
        // extended_gcd may return gcd = -1 for negative inputs
        let (s, t) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
        let completion = UnimodularMatrix::new([[u.x, -t], [u.y, s]])?;
        Ok(completion.inverse())
    }
}

impl TryFrom<[[i64; 2]; 2]> for UnimodularMatrix {
    type Error = Error;
    fn try_from(rows: [[i64; 2]; 2]) -> Result<Self> {
        UnimodularMatrix::new(rows)
    }
}

impl From<UnimodularMatrix> for [[i64; 2]; 2] {
    fn from(m: UnimodularMatrix) -> Self {
        m.rows
    }
}

/// A Laurent polynomial `Σ f_u x^u` with no stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    domain: CoefficientDomain,
    terms: BTreeMap<Exp, Coeff>,
}

impl LaurentPoly {
    pub fn zero(domain: CoefficientDomain) -> Self {
        LaurentPoly {
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(domain: CoefficientDomain) -> Self {
        Self::monomial(domain, Exp::ZERO)
    }

    pub fn monomial(domain: CoefficientDomain, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(e, Coeff::one());
        LaurentPoly { domain, terms }
    }

    pub fn constant(domain: CoefficientDomain, c: i64) -> Self {
        Self::from_int_terms(domain, [((0, 0), c)])
    }

    /// `x^t - 1`.
    pub fn difference_binomial(domain: CoefficientDomain, t: Exp) -> Self {
        let mut p = Self::monomial(domain, t);
        p.add_term(Exp::ZERO, &domain.from_int(-1));
        p
    }

    /// Builds a polynomial from arbitrary rational terms, validating each
    /// coefficient against the domain and merging repeated exponents.
    pub fn from_terms(
        domain: CoefficientDomain,
        terms: impl IntoIterator<Item = (Exp, Coeff)>,
    ) -> Result<Self> {
        let mut p = Self::zero(domain);
        for (e, c) in terms {
            let c = domain.reduce(c)?;
            p.add_term(e, &c);
        }
        Ok(p)
    }

    pub fn from_int_terms(
        domain: CoefficientDomain,
        terms: impl IntoIterator<Item = ((i64, i64), i64)>,
    ) -> Self {
        let mut p = Self::zero(domain);
        for ((x, y), c) in terms {
            p.add_term(Exp::new(x, y), &domain.from_int(c));
        }
        p
    }

    fn add_term(&mut self, e: Exp, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let d = self.domain;
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = d.add(v, c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(Exp::ZERO).is_some_and(|c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exp) -> Option<&Coeff> {
        self.terms.get(&e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp, &Coeff)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn support(&self) -> impl Iterator<Item = Exp> + '_ {
        self.terms.keys().copied()
    }

    /// Componentwise minimum of the support.
    pub fn min_exponents(&self) -> Option<Exp> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |m, e| Exp::new(m.x.min(e.x), m.y.min(e.y))))
    }

    pub fn max_exponents(&self) -> Option<Exp> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |m, e| Exp::new(m.x.max(e.x), m.y.max(e.y))))
    }

    /// Multiplies by the monomial `x^t`.
    pub fn shift(&self, t: Exp) -> Self {
        LaurentPoly {
            domain: self.domain,
            terms: self.terms.iter().map(|(e, c)| (*e + t, c.clone())).collect(),
        }
    }

    /// Shifts so the minimal exponent of each variable is 0; returns the
    /// normalized polynomial and the monomial that was divided out.
    pub fn normalize_monomial(&self) -> (Self, Exp) {
        match self.min_exponents() {
            Some(m) => (self.shift(-m), m),
            None => (self.clone(), Exp::ZERO),
        }
    }

    /// Reinterprets the coefficients in another domain.
    pub fn with_domain(&self, domain: CoefficientDomain) -> Result<Self> {
        Self::from_terms(domain, self.terms.iter().map(|(e, c)| (*e, c.clone())))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.domain.ensure_same(&other.domain)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            domain: self.domain,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, self.domain.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Result<Self> {
        let c = self.domain.reduce(c.clone())?;
        let mut out = Self::zero(self.domain);
        for (e, v) in &self.terms {
            out.add_term(*e, &self.domain.mul(v, &c));
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.domain.ensure_same(&other.domain)?;
        let d = self.domain;
        let mut out = Self::zero(d);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(*e1 + *e2, &d.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.domain);
        for _ in 0..n {
            out = out.mul(self).expect("same domain");
        }
        out
    }

    /// Exact quotient `self / g` in the Laurent ring over the domain.
    ///
    /// Both operands are shifted to ordinary polynomials (minimal exponents
    /// 0); the normalized quotient is then an ordinary polynomial, found by
    /// lexicographic division from the leading term.
    pub fn divexact(&self, g: &Self) -> Result<Self> {
        self.domain.ensure_same(&g.domain)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let d = self.domain;
        let (mut rem, shift_f) = self.normalize_monomial();
        let (g, shift_g) = g.normalize_monomial();
        let (lead_g, lead_c) = g.terms.last_key_value().map(|(e, c)| (*e, c.clone())).unwrap();
        let mut quotient = Self::zero(d);
        while let Some((lead_r, lead_rc)) = rem.terms.last_key_value().map(|(e, c)| (*e, c.clone())) {
            let t = lead_r - lead_g;
            if t.x < 0 || t.y < 0 {
                return Err(Error::NotDivisible);
            }
            let c = d.div(&lead_rc, &lead_c)?;
            let step = g.shift(t).scale(&c)?;
            rem = rem.sub(&step)?;
            quotient.add_term(t, &c);
        }
        Ok(quotient.shift(shift_f - shift_g))
    }

    /// Replaces every exponent `u` by `M u`; a ring automorphism.
    pub fn substitute(&self, m: &UnimodularMatrix) -> Self {
        LaurentPoly {
            domain: self.domain,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (m.apply(*e), c.clone()))
                .collect(),
        }
    }

    /// Whether the support lies on a single line `v + ℤu` with at least two
    /// points; returns the primitive direction `u`.
    pub fn line_direction(&self) -> Option<Exp> {
        let mut it = self.terms.keys();
        let base = *it.next()?;
        let mut dir: Option<Exp> = None;
        for e in it {
            let d = (*e - base).direction()?;
            match dir {
                None => dir = Some(d),
                Some(u) if u == d => {}
                Some(_) => return None,
            }
        }
        dir
    }

    /// A line polynomial in the strict sense: at least two terms, support in ℤu.
    pub fn is_line_polynomial_through_origin(&self) -> Option<Exp> {
        let u = self.line_direction()?;
        self.support()
            .all(|e| e.cross(u) == 0)
            .then_some(u)
    }

    /// The polynomial as integer coefficients, rescaled by the lcm of the
    /// denominators when over ℚ. F_p residues are returned as their
    /// representatives in `0..p`.
    pub fn integral_terms(&self) -> Vec<(Exp, num_bigint::BigInt)> {
        let l = crate::coeff::denominator_lcm(self.terms.values());
        self.terms
            .iter()
            .map(|(e, c)| (*e, (c * Coeff::from_integer(l.clone())).to_integer()))
            .collect()
    }

    /// Leading coefficient in the lexicographic exponent order.
    pub fn leading(&self) -> Option<(Exp, &Coeff)> {
        self.terms.last_key_value().map(|(e, c)| (*e, c))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Z: CoefficientDomain = CoefficientDomain::Integers;
    const F2: CoefficientDomain = CoefficientDomain::PrimeField(2);

    fn p(d: CoefficientDomain, t: &[((i64, i64), i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(d, t.iter().copied())
    }

    #[test]
    fn add_examples() {
        let a = p(Z, &[((0, 0), 1), ((1, 0), 1)]);
        let b = p(Z, &[((0, 0), -1), ((0, 1), 1)]);
        assert_eq!(a.add(&b).unwrap(), p(Z, &[((1, 0), 1), ((0, 1), 1)]));
        assert_eq!(a.add(&LaurentPoly::zero(Z)).unwrap(), a);
        let c = p(F2, &[((0, 0), 1), ((1, 0), 1)]);
        assert!(c.add(&c).unwrap().is_zero());
        assert!(matches!(a.add(&c), Err(Error::DomainMismatch(..))));
    }

    #[test]
    fn mul_examples() {
        let xm1 = p(Z, &[((1, 0), 1), ((0, 0), -1)]);
        let xp1 = p(Z, &[((1, 0), 1), ((0, 0), 1)]);
        assert_eq!(xm1.mul(&xp1).unwrap(), p(Z, &[((2, 0), 1), ((0, 0), -1)]));
        let shifted = LaurentPoly::monomial(Z, Exp::new(-1, 0)).mul(&xp1).unwrap();
        assert_eq!(shifted, p(Z, &[((-1, 0), 1), ((0, 0), 1)]));
        // direct expansion over F2
        let a = p(F2, &[((1, 0), 1), ((0, 0), 1)]);
        let b = p(F2, &[((0, 1), 1), ((0, 0), 1)]);
        assert_eq!(
            a.mul(&b).unwrap(),
            p(F2, &[((1, 1), 1), ((1, 0), 1), ((0, 1), 1), ((0, 0), 1)])
        );
    }

    #[test]
    fn divexact_examples() {
        let f = p(Z, &[((2, 0), 1), ((0, 0), -1)]);
        let g = p(Z, &[((1, 0), 1), ((0, 0), -1)]);
        assert_eq!(f.divexact(&g).unwrap(), p(Z, &[((1, 0), 1), ((0, 0), 1)]));
        let h = p(Z, &[((1, 0), 1), ((0, 0), -2)]);
        assert_eq!(f.divexact(&h), Err(Error::NotDivisible));
        assert_eq!(f.divexact(&LaurentPoly::zero(Z)), Err(Error::DivisionByZero));
        assert!(f.divexact(&f).unwrap().is_one());
        // divisible over Q but not over Z
        let two_x = p(Z, &[((1, 0), 2)]);
        let x = p(Z, &[((1, 0), 1)]);
        assert_eq!(x.divexact(&two_x), Err(Error::NotDivisible));
        let q = CoefficientDomain::Rationals;
        let half = x.with_domain(q).unwrap().divexact(&two_x.with_domain(q).unwrap());
        assert_eq!(half.unwrap().coeff(Exp::ZERO).unwrap(), &Coeff::new(1.into(), 2.into()));
    }

    #[test]
    fn straightening_maps_direction_to_axis() {
        for (a, b) in [(1, 0), (0, 1), (1, 2), (3, -2), (1, -1), (5, 7), (-2, 3)] {
            let u = Exp::new(a, b);
            let m = UnimodularMatrix::straightening(u).unwrap();
            assert_eq!(m.apply(u), Exp::new(1, 0), "{u:?}");
            assert_eq!(m.det().abs(), 1);
        }
        assert_eq!(
            UnimodularMatrix::straightening(Exp::new(2, 4)),
            Err(Error::NotPrimitive(2, 4))
        );
        assert_eq!(UnimodularMatrix::new([[2, 0], [0, 1]]), Err(Error::NotUnimodular(2)));
    }

    #[test]
    fn substitution_examples() {
        let f = p(Z, &[((0, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(f.substitute(&UnimodularMatrix::IDENTITY), f);
        let swap = UnimodularMatrix::new([[0, 1], [1, 0]]).unwrap();
        assert_eq!(f.substitute(&swap), f);
        let g = p(Z, &[((2, 0), 3), ((0, 1), 1)]);
        assert_eq!(g.substitute(&swap), p(Z, &[((0, 2), 3), ((1, 0), 1)]));
    }

    #[test]
    fn directions_and_order() {
        assert_eq!(Exp::new(-2, -4).direction(), Some(Exp::new(1, 2)));
        assert_eq!(Exp::new(0, -3).direction(), Some(Exp::new(0, 1)));
        assert_eq!(Exp::ZERO.direction(), None);
        let mut v = vec![Exp::new(1, -1), Exp::new(1, 1), Exp::new(1, 0), Exp::new(0, 1), Exp::new(2, 0)];
        v.sort_by(Exp::canonical_cmp);
        assert_eq!(
            v,
            vec![Exp::new(0, 1), Exp::new(1, 0), Exp::new(1, 1), Exp::new(1, -1), Exp::new(2, 0)]
        );
    }

    #[test]
    fn line_polynomial_detection() {
        let f = p(Z, &[((0, 0), 1), ((1, 2), -2), ((2, 4), 1)]);
        assert_eq!(f.is_line_polynomial_through_origin(), Some(Exp::new(1, 2)));
        let g = f.shift(Exp::new(0, 1));
        assert_eq!(g.line_direction(), Some(Exp::new(1, 2)));
        assert_eq!(g.is_line_polynomial_through_origin(), None);
        assert_eq!(LaurentPoly::monomial(Z, Exp::new(1, 1)).line_direction(), None);
    }

    pub(crate) fn arb_poly(domain: CoefficientDomain) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-2i64..=2, -2i64..=2), -3i64..=3), 0..6)
            .prop_map(move |t| LaurentPoly::from_int_terms(domain, t))
    }

    fn arb_domain() -> impl Strategy<Value = CoefficientDomain> {
        prop_oneof![
            Just(CoefficientDomain::Integers),
            Just(CoefficientDomain::Rationals),
            Just(CoefficientDomain::PrimeField(2)),
            Just(CoefficientDomain::PrimeField(3)),
            Just(CoefficientDomain::PrimeField(5)),
        ]
    }

    fn arb_triple() -> impl Strategy<Value = (LaurentPoly, LaurentPoly, LaurentPoly)> {
        arb_domain().prop_flat_map(|d| (arb_poly(d), arb_poly(d), arb_poly(d)))
    }

    fn arb_unimodular() -> impl Strategy<Value = UnimodularMatrix> {
        // products of elementary matrices
        prop::collection::vec(0usize..4, 0..5).prop_map(|ops| {
            let gens = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[0, 1], [1, 0]], [[1, -1], [0, 1]]];
            let mut m = [[1i64, 0], [0, 1]];
            for o in ops {
                let g = gens[o];
                m = [
                    [m[0][0] * g[0][0] + m[0][1] * g[1][0], m[0][0] * g[0][1] + m[0][1] * g[1][1]],
                    [m[1][0] * g[0][0] + m[1][1] * g[1][0], m[1][0] * g[0][1] + m[1][1] * g[1][1]],
                ];
            }
            UnimodularMatrix::new(m).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((f, g, h) in arb_triple()) {
            prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
            prop_assert_eq!(
                f.mul(&g.add(&h).unwrap()).unwrap(),
                f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
            );
            prop_assert!(f.sub(&f).unwrap().is_zero());
        }

        #[test]
        fn product_support_in_sumset((f, g, _h) in arb_triple()) {
            let fg = f.mul(&g).unwrap();
            for e in fg.support() {
                prop_assert!(f.support().any(|a| g.support().any(|b| a + b == e)));
            }
        }

        #[test]
        fn divexact_round_trip((f, g, _h) in arb_triple()) {
            prop_assume!(!g.is_zero());
            let fg = f.mul(&g).unwrap();
            prop_assert_eq!(fg.divexact(&g).unwrap(), f);
        }

        #[test]
        fn substitution_is_multiplicative_and_invertible(
            (f, g, _h) in arb_triple(), m in arb_unimodular()
        ) {
            let fg = f.mul(&g).unwrap();
            prop_assert_eq!(fg.substitute(&m), f.substitute(&m).mul(&g.substitute(&m)).unwrap());
            prop_assert_eq!(f.substitute(&m).substitute(&m.inverse()), f);
        }
    }
}
