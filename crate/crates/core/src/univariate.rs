//! Dense univariate polynomials over ℚ or F_p, and the extraction of the
//! line-polynomial part of a bivariate polynomial in a given direction.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::coeff::{denominator_lcm, integer_content, Coeff, CoefficientDomain};
use crate::error::{Error, Result};
use crate::poly::{Exp, LaurentPoly, UnimodularMatrix};

/// Coefficients from degree 0 upward, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    field: CoefficientDomain,
    coeffs: Vec<Coeff>,
}

impl DensePoly {
    pub fn new(field: CoefficientDomain, mut coeffs: Vec<Coeff>) -> Self {
        debug_assert!(field.is_field());
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DensePoly { field, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    fn lead(&self) -> &Coeff {
        self.coeffs.last().expect("non-zero polynomial")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.div(&Coeff::one(), self.lead()).expect("field");
        DensePoly::new(self.field, self.coeffs.iter().map(|c| self.field.mul(c, &inv)).collect())
    }

    pub fn rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "remainder by zero");
        let f = self.field;
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let inv = f.div(&Coeff::one(), d.lead()).expect("field");
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = f.mul(&r[top], &inv);
            if !q.is_zero() {
                let off = top - dd;
                for (i, c) in d.coeffs.iter().enumerate() {
                    r[off + i] = f.sub(&r[off + i], &f.mul(&q, c));
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        DensePoly::new(f, r)
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }
}

/// The direction-`u` line-polynomial part of `f`.
///
/// After a unimodular change of variables sending `u` to `(1, 0)`, `f`
/// becomes `Σ_j c_j(x₁) x₂^j`; the gcd of the `c_j` is mapped back. The
/// result has its lowest term at the origin and is normalized to primitive
/// integer coefficients with positive leading coefficient over ℤ and ℚ, or
/// to a monic polynomial over F_p. It equals a monomial times the product of
/// all line-polynomial factors of `f` in direction `u`.
pub fn direction_content(f: &LaurentPoly, u: Exp) -> Result<LaurentPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let u = u.direction().ok_or(Error::NotPrimitive(0, 0))?;
    let m = UnimodularMatrix::straightening(u)?;
    let straightened = f.substitute(&m);
    let field = f.domain().fraction_field();

    let mut slices: BTreeMap<i64, Vec<(i64, Coeff)>> = BTreeMap::new();
    for (e, c) in straightened.terms() {
        slices.entry(e.y).or_default().push((e.x, c.clone()));
    }
    let mut g: Option<DensePoly> = None;
    for terms in slices.values() {
        let lo = terms.iter().map(|(x, _)| *x).min().unwrap();
        let hi = terms.iter().map(|(x, _)| *x).max().unwrap();
        let mut dense = vec![Coeff::zero(); (hi - lo + 1) as usize];
        for (x, c) in terms {
            dense[(x - lo) as usize] = c.clone();
        }
        let p = DensePoly::new(field, dense);
        g = Some(match g {
            None => p.monic(),
            Some(acc) => acc.gcd(&p),
        });
        if g.as_ref().is_some_and(|g| g.degree() == Some(0)) {
            break;
        }
    }
    let g = g.expect("non-zero polynomial has a slice");
    let coeffs = normalize_content(f.domain(), g.coeffs());
    LaurentPoly::from_terms(
        f.domain(),
        coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (u.scale(k as i64), c)),
    )
}

fn normalize_content(domain: CoefficientDomain, coeffs: &[Coeff]) -> Vec<Coeff> {
    match domain {
        CoefficientDomain::PrimeField(_) => coeffs.to_vec(),
        _ => {
            let l = Coeff::from_integer(denominator_lcm(coeffs));
            let ints: Vec<Coeff> = coeffs.iter().map(|c| c * &l).collect();
            let mut g = Coeff::from_integer(integer_content(&ints));
            if ints.last().is_some_and(|c| c.is_negative()) {
                g = -g;
            }
            ints.iter().map(|c| c / &g).collect()
        }
    }
}
