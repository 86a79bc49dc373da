//! Line-polynomial factors of annihilators and what they say about
//! periodicity, plus elimination over prime fields.

use serde::{Deserialize, Serialize};

use crate::coeff::CoefficientDomain;
use crate::configuration::{Annihilation, PeriodInfo, TorusConfig};
use crate::error::{Error, Result};
use crate::geometry::line_direction_candidates;
use crate::poly::{Exp, LaurentPoly};
use crate::resultant::{univariate_resultant, Variable};
use crate::univariate::direction_content;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineFactor {
    pub direction: Exp,
    pub poly: LaurentPoly,
}

/// `input = x^monomial · Π factors · remainder`, with one merged factor per
/// direction, directions in canonical order, and a remainder free of line
/// polynomial factors whose lowest exponent in each variable is 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineDecomposition {
    pub monomial: Exp,
    pub factors: Vec<LineFactor>,
    pub remainder: LaurentPoly,
}

impl LineDecomposition {
    pub fn directions(&self) -> Vec<Exp> {
        self.factors.iter().map(|f| f.direction).collect()
    }

    /// Multiplies the pieces back together.
    pub fn product(&self) -> Result<LaurentPoly> {
        let mut acc = self.remainder.shift(self.monomial);
        for f in &self.factors {
            acc = acc.mul(&f.poly)?;
        }
        Ok(acc)
    }

    /// Checks every structural claim: the product identity, that each factor
    /// is a line polynomial in its stated direction, pairwise independence,
    /// and that the remainder has no line factor.
    pub fn check(&self, input: &LaurentPoly) -> Result<bool> {
        let lines_ok = self.factors.iter().all(|f| {
            f.poly.len() >= 2 && f.poly.is_line_polynomial_through_origin() == Some(f.direction)
        });
        let independent = self.factors.iter().enumerate().all(|(i, a)| {
            self.factors[i + 1..].iter().all(|b| a.direction.cross(b.direction) != 0)
        });
        Ok(lines_ok && independent && self.product()? == *input && is_line_free(&self.remainder)?)
    }
}

/// True when `f` has no line-polynomial factor in any direction.
pub fn is_line_free(f: &LaurentPoly) -> Result<bool> {
    for u in line_direction_candidates(f)? {
        if !direction_content(f, u)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn line_factor_decomposition(f: &LaurentPoly) -> Result<LineDecomposition> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rest = f.clone();
    let mut factors: Vec<LineFactor> = Vec::new();
    loop {
        let mut changed = false;
        for u in line_direction_candidates(&rest)? {
            let g = direction_content(&rest, u)?;
            if g.is_one() {
                continue;
            }
            rest = rest.divexact(&g)?;
            changed = true;
            match factors.iter_mut().find(|lf| lf.direction == u) {
                Some(lf) => lf.poly = lf.poly.mul(&g)?,
                None => factors.push(LineFactor { direction: u, poly: g }),
            }
        }
        if !changed {
            break;
        }
    }
    factors.sort_by(|a, b| a.direction.canonical_cmp(&b.direction));
    let (remainder, monomial) = rest.normalize_monomial();
    Ok(LineDecomposition { monomial, factors, remainder })
}

/// What is known about `c` from `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    /// `f·c = 0`.
    Annihilates,
    /// `f·c` is two-periodic.
    Periodizes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PeriodicityVerdict {
    TwoPeriodic,
    PeriodicInDirection { direction: Exp },
    /// Line factors in `order_upper_bound` distinct directions; the order of
    /// `c` is at most this.
    Undetermined { order_upper_bound: usize },
}

pub fn verdict_of(d: &LineDecomposition) -> PeriodicityVerdict {
    match d.factors.as_slice() {
        [] => PeriodicityVerdict::TwoPeriodic,
        [one] => PeriodicityVerdict::PeriodicInDirection { direction: one.direction },
        many => PeriodicityVerdict::Undetermined { order_upper_bound: many.len() },
    }
}

/// The verdict is the same for both roles: with no line factors `c` is
/// two-periodic, with one direction it is periodic in that direction.
pub fn classify(f: &LaurentPoly, _role: Role) -> Result<PeriodicityVerdict> {
    Ok(verdict_of(&line_factor_decomposition(f)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EliminationMethod {
    Resultant,
    /// One input does not involve the eliminated variable and is used as is.
    InputFreeOfVariable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationStep {
    pub eliminated: Variable,
    pub method: EliminationMethod,
    /// A polynomial in the other variable lying in `⟨f, g⟩`.
    pub result: LaurentPoly,
    /// Axis of periodicity implied when `result` is non-zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodic_direction: Option<Exp>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "conclusion", rename_all = "snake_case")]
pub enum EliminationConclusion {
    TwoPeriodic,
    PeriodicInDirection { direction: Exp },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationReport {
    pub steps: Vec<EliminationStep>,
    pub conclusion: EliminationConclusion,
}

fn involves(f: &LaurentPoly, var: Variable) -> bool {
    let mut exps = f.support().map(|e| var.exponent(e));
    let first = exps.next();
    exps.any(|e| Some(e) != first)
}

fn eliminate(f: &LaurentPoly, g: &LaurentPoly, var: Variable) -> Result<EliminationStep> {
    let (result, method) = if !involves(f, var) {
        (f.clone(), EliminationMethod::InputFreeOfVariable)
    } else if !involves(g, var) {
        (g.clone(), EliminationMethod::InputFreeOfVariable)
    } else {
        (univariate_resultant(f, g, var)?, EliminationMethod::Resultant)
    };
    // eliminating y leaves a polynomial in x alone: a horizontal line polynomial
    let periodic_direction = (!result.is_zero()).then(|| var.other().axis());
    Ok(EliminationStep { eliminated: var, method, result, periodic_direction })
}

/// For `c` over F_p annihilated by both `f` and `g`, eliminates each
/// variable in turn. A non-zero univariate element of `⟨f, g⟩` in `x₁`
/// makes `c` horizontally periodic; one in each variable makes it
/// two-periodic.
pub fn eliminate_and_classify_fp(f: &LaurentPoly, g: &LaurentPoly) -> Result<EliminationReport> {
    f.domain().ensure_same(&g.domain())?;
    if !matches!(f.domain(), CoefficientDomain::PrimeField(_)) {
        return Err(Error::NotPrimeField);
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let steps = vec![eliminate(f, g, Variable::Y)?, eliminate(f, g, Variable::X)?];
    let dirs: Vec<Exp> = steps.iter().filter_map(|s| s.periodic_direction).collect();
    let conclusion = match dirs.as_slice() {
        [_, _] => EliminationConclusion::TwoPeriodic,
        [d] => EliminationConclusion::PeriodicInDirection { direction: *d },
        _ => EliminationConclusion::Inconclusive,
    };
    Ok(EliminationReport { steps, conclusion })
}

/// Minimal `n` with `n·u` a period of `source`, where `f` is a line
/// polynomial in direction `u` (up to a monomial factor) annihilating it.
pub fn period_from_line_annihilator(f: &LaurentPoly, source: &TorusConfig) -> Result<PeriodInfo> {
    let u = f.line_direction().ok_or(Error::NotALinePolynomial)?;
    if let Annihilation::No { witness, .. } = source.is_annihilated(f)? {
        return Err(Error::NotAnnihilated(witness));
    }
    let n = source.minimal_multiple(u);
    Ok(PeriodInfo { direction: u, multiple: n, period: u.scale(n) })
}
