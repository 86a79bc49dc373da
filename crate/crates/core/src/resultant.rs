//! Resultants of bivariate Laurent polynomials with respect to one variable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Exp, LaurentPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    X,
    Y,
}

impl Variable {
    pub fn other(self) -> Variable {
        match self {
            Variable::X => Variable::Y,
            Variable::Y => Variable::X,
        }
    }

    pub fn exponent(self, e: Exp) -> i64 {
        match self {
            Variable::X => e.x,
            Variable::Y => e.y,
        }
    }

    fn drop(self, e: Exp) -> Exp {
        match self {
            Variable::X => Exp::new(0, e.y),
            Variable::Y => Exp::new(e.x, 0),
        }
    }

    /// Unit vector of the axis this variable indexes.
    pub fn axis(self) -> Exp {
        match self {
            Variable::X => Exp::new(1, 0),
            Variable::Y => Exp::new(0, 1),
        }
    }
}

/// Coefficients of `f` as a polynomial in `var`, lowest degree first, after
/// multiplying by the monomial that makes the minimal `var`-exponent 0.
pub fn coefficients_in(f: &LaurentPoly, var: Variable) -> Vec<LaurentPoly> {
    let mut slices: BTreeMap<i64, Vec<(Exp, crate::coeff::Coeff)>> = BTreeMap::new();
    for (e, c) in f.terms() {
        slices
            .entry(var.exponent(e))
            .or_default()
            .push((var.drop(e), c.clone()));
    }
    let (Some(lo), Some(hi)) = (slices.keys().next().copied(), slices.keys().last().copied()) else {
        return Vec::new();
    };
    (lo..=hi)
        .map(|k| match slices.remove(&k) {
            Some(t) => LaurentPoly::from_terms(f.domain(), t).expect("already reduced"),
            None => LaurentPoly::zero(f.domain()),
        })
        .collect()
}

/// Sylvester matrix of `f` and `g` in `var`; entries are polynomials in the
/// other variable. Rows hold coefficients from the highest degree down.
pub fn sylvester_matrix(f: &LaurentPoly, g: &LaurentPoly, var: Variable) -> Result<Vec<Vec<LaurentPoly>>> {
    f.domain().ensure_same(&g.domain())?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let cf = coefficients_in(f, var);
    let cg = coefficients_in(g, var);
    let (m, n) = (cf.len() - 1, cg.len() - 1);
    if m == 0 || n == 0 {
        return Err(Error::VariableAbsent);
    }
    let size = m + n;
    let zero = LaurentPoly::zero(f.domain());
    let mut rows = Vec::with_capacity(size);
    for (coeffs, deg, copies) in [(&cf, m, n), (&cg, n, m)] {
        for r in 0..copies {
            let mut row = vec![zero.clone(); size];
            for i in 0..=deg {
                row[r + i] = coeffs[deg - i].clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact in the Laurent ring.
pub fn bareiss_determinant(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly> {
    let n = m.len();
    let domain = m[0][0].domain();
    let mut prev = LaurentPoly::one(domain);
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero(domain)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = num.divexact(&prev)?;
            }
            m[i][k] = LaurentPoly::zero(domain);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// `Res_var(f, g)`, a polynomial in the other variable lying in `⟨f, g⟩`.
pub fn univariate_resultant(f: &LaurentPoly, g: &LaurentPoly, var: Variable) -> Result<LaurentPoly> {
    bareiss_determinant(sylvester_matrix(f, g, var)?)
}
