//! Annihilators from pattern data, and the search for products of
//! difference binomials that annihilate a configuration.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, CoefficientDomain};
use crate::configuration::{Annihilation, PatternSet, Source};
use crate::error::{Error, Result};
use crate::linalg::first_kernel_vector;
use crate::poly::{Exp, LaurentPoly};

const Z: CoefficientDomain = CoefficientDomain::Integers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnihilatorKind {
    /// `f` pairs to zero with every observed pattern.
    DirectAnnihilator,
    /// `f = (x - 1)·g` where `g` pairs to the same constant with every pattern.
    PeriodizerTimesBinomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorResult {
    pub kind: AnnihilatorKind,
    pub f: LaurentPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodizer: Option<LaurentPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<i64>,
}

/// The polynomial `Σ_d v_d x^{-d}`, supported on `-D`.
fn vector_to_poly(cells: &[Exp], v: &[BigInt]) -> Result<LaurentPoly> {
    LaurentPoly::from_terms(
        Z,
        cells
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (-*d, Coeff::from_integer(c.clone()))),
    )
}

fn as_matrix<'a>(rows: impl Iterator<Item = &'a Vec<i64>>) -> Vec<Vec<BigInt>> {
    rows.map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

/// A non-zero annihilator of any configuration whose `D`-patterns are among
/// `patterns`, when there are at most `|D|` of them.
///
/// If the pattern vectors leave a kernel, its first integer kernel vector is
/// returned directly. Otherwise there are exactly `|D|` patterns spanning
/// ℚ^D; a vector orthogonal to their differences gives a polynomial `g` with
/// `g·c` constant, and `(x - 1)·g` annihilates.
pub fn find_annihilator(patterns: &PatternSet) -> Result<AnnihilatorResult> {
    let n = patterns.shape.len();
    if patterns.is_empty() {
        return Err(Error::NoPatterns);
    }
    if patterns.len() > n {
        return Err(Error::NotLowComplexity { count: patterns.len(), size: n });
    }
    let cells = patterns.shape.cells();
    if let Some(v) = first_kernel_vector(&as_matrix(patterns.patterns.iter()), n) {
        return Ok(AnnihilatorResult {
            kind: AnnihilatorKind::DirectAnnihilator,
            f: vector_to_poly(cells, &v)?,
            periodizer: None,
            constant: None,
        });
    }
    let mut it = patterns.patterns.iter();
    let p0 = it.next().expect("non-empty");
    let diffs: Vec<Vec<i64>> = it.map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    let w = first_kernel_vector(&as_matrix(diffs.iter()), n).ok_or(Error::DegeneratePatterns)?;
    let constant: BigInt = w.iter().zip(p0).map(|(a, &b)| a * b).sum();
    let g = vector_to_poly(cells, &w)?;
    let f = LaurentPoly::difference_binomial(Z, Exp::new(1, 0)).mul(&g)?;
    Ok(AnnihilatorResult {
        kind: AnnihilatorKind::PeriodizerTimesBinomial,
        f,
        periodizer: Some(g),
        constant: Some(constant.to_i64().ok_or(Error::Overflow)?),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub annihilation: Annihilation,
    /// For a periodizer result: `No` carries the first cell where `g·c`
    /// differs from the stored constant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodizer: Option<Annihilation>,
}

pub fn verify(result: &AnnihilatorResult, source: &Source) -> Result<VerifyReport> {
    let annihilation = source.is_annihilated(&result.f)?;
    let periodizer = match (&result.periodizer, result.constant) {
        (Some(g), Some(k)) => Some(check_constant(source, g, k)?),
        _ => None,
    };
    let pass = annihilation.holds() && periodizer.as_ref().is_none_or(|p| p.holds());
    Ok(VerifyReport { pass, annihilation, periodizer })
}

fn check_constant(source: &Source, g: &LaurentPoly, k: i64) -> Result<Annihilation> {
    let values = source.applied_values(g)?;
    if let Some(&(witness, value)) = values.iter().find(|(_, v)| *v != k) {
        return Ok(Annihilation::No { witness, value });
    }
    Ok(match source.apply(g)? {
        Source::Torus(_) => Annihilation::Yes,
        Source::Patch(p) => Annihilation::YesOnRegion { origin: p.origin(), width: p.width(), height: p.height() },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialProduct {
    pub vectors: Vec<Exp>,
    pub annihilator: LaurentPoly,
    pub evidence: Annihilation,
}

pub fn binomial_product(vectors: &[Exp]) -> LaurentPoly {
    vectors.iter().fold(LaurentPoly::one(Z), |acc, t| {
        acc.mul(&LaurentPoly::difference_binomial(Z, *t)).expect("same domain")
    })
}

/// Non-zero vectors with `|t|∞ ≤ max_t` taken up to sign, in canonical order.
fn candidate_vectors(max_t: i64) -> Vec<Exp> {
    let mut v: Vec<Exp> = (-max_t..=max_t)
        .flat_map(|y| (0..=max_t).map(move |x| Exp::new(x, y)))
        .filter(|e| e.x > 0 || (e.x == 0 && e.y > 0))
        .collect();
    v.sort_by(Exp::canonical_cmp);
    v
}

/// All pairwise independent `m`-subsets of `cands`, each listed in candidate
/// order, sorted by their largest max-norm and then lexicographically.
fn tuples(cands: &[Exp], m: usize) -> Vec<Vec<Exp>> {
    fn go(cands: &[Exp], start: usize, m: usize, cur: &mut Vec<Exp>, out: &mut Vec<Vec<Exp>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..cands.len() {
            let t = cands[i];
            if cur.iter().all(|s| s.cross(t) != 0) {
                cur.push(t);
                go(cands, i + 1, m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(cands, 0, m, &mut Vec::with_capacity(m), &mut out);
    out.sort_by_cached_key(|t| {
        let norm = t.iter().map(|e| e.max_norm()).max().unwrap_or(0);
        (norm, t.iter().map(Exp::canonical_key).collect::<Vec<_>>())
    });
    out
}

/// The first product `(x^{t₁} - 1)⋯(x^{t_m} - 1)` annihilating `source`,
/// with smallest `m ≤ max_m`, then smallest max-norm, then lexicographically
/// smallest in canonical order. Tuples whose product does not fit inside a
/// patch are skipped; if every tuple was skipped the result is
/// `EmptyValidRegion`.
pub fn find_binomial_product_annihilator(
    source: &Source,
    max_t: i64,
    max_m: usize,
) -> Result<Option<BinomialProduct>> {
    let cands = candidate_vectors(max_t.max(0));
    let mut any_fit = false;
    for m in 1..=max_m.min(3) {
        // evaluated in ordered chunks so the first hit ends the search early
        for chunk in tuples(&cands, m).chunks(256) {
            let outcomes: Vec<Option<Result<Annihilation>>> = chunk
                .par_iter()
                .map(|t| match source.is_annihilated(&binomial_product(t)) {
                    Err(Error::EmptyValidRegion) => None,
                    other => Some(other),
                })
                .collect();
            for (t, o) in chunk.iter().zip(outcomes) {
                let Some(o) = o else { continue };
                any_fit = true;
                let evidence = o?;
                if evidence.holds() {
                    return Ok(Some(BinomialProduct {
                        vectors: t.clone(),
                        annihilator: binomial_product(t),
                        evidence,
                    }));
                }
            }
        }
    }
    if !any_fit && !cands.is_empty() && max_m > 0 {
        return Err(Error::EmptyValidRegion);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{Patch, Shape, TorusConfig};
    use num_rational::BigRational;
    use num_traits::One;
    use proptest::prelude::*;

    fn e(x: i64, y: i64) -> Exp {
        Exp::new(x, y)
    }

    fn patterns_of(t: &TorusConfig, shape: &Shape) -> PatternSet {
        Source::from(t.clone()).extract_patterns(shape).unwrap()
    }

    fn inner(f: &LaurentPoly, shape: &Shape, p: &[i64]) -> BigRational {
        shape
            .cells()
            .iter()
            .zip(p)
            .map(|(d, &v)| f.coeff(-*d).cloned().unwrap_or_default() * BigRational::from_integer(v.into()))
            .sum()
    }

    // rank over ℚ by plain Gaussian elimination with rational pivots
    fn rational_rank(rows: &[Vec<i64>], n: usize) -> usize {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        let mut rank = 0;
        for c in 0..n {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(rank, p);
            let piv = m[rank][c].clone();
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = &m[i][c] / &piv;
                    let pivot_row = m[rank].clone();
                    for (v, pv) in m[i].iter_mut().zip(&pivot_row) {
                        *v -= &f * pv;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn checkerboard_periodizer() {
        let cb = TorusConfig::from_fn(2, 2, |i, j| (i + j) % 2).unwrap();
        let shape = Shape::new([e(0, 0), e(1, 0)]).unwrap();
        let r = find_annihilator(&patterns_of(&cb, &shape)).unwrap();
        assert_eq!(r.kind, AnnihilatorKind::PeriodizerTimesBinomial);
        let g = LaurentPoly::from_int_terms(Z, [((0, 0), 1), ((-1, 0), 1)]);
        assert_eq!(r.periodizer.as_ref(), Some(&g));
        assert_eq!(r.constant, Some(1));
        assert_eq!(r.f, LaurentPoly::difference_binomial(Z, e(1, 0)).mul(&g).unwrap());
        assert!(verify(&r, &cb.into()).unwrap().pass);
    }

    #[test]
    fn constant_direct() {
        let c = TorusConfig::constant(3, 3, 4);
        let shape = Shape::new([e(0, 0), e(1, 0)]).unwrap();
        let r = find_annihilator(&patterns_of(&c, &shape)).unwrap();
        assert_eq!(r.kind, AnnihilatorKind::DirectAnnihilator);
        assert_eq!(r.f, LaurentPoly::from_int_terms(Z, [((0, 0), 1), ((-1, 0), -1)]));
        assert_eq!(c.is_annihilated(&r.f).unwrap(), Annihilation::Yes);
    }

    #[test]
    fn zero_pattern_gives_basis_vector() {
        let shape = Shape::rect(2, 2).unwrap();
        let ps = PatternSet::new(shape, [vec![0, 0, 0, 0]]).unwrap();
        let r = find_annihilator(&ps).unwrap();
        assert_eq!(r.f, LaurentPoly::one(Z));
    }

    #[test]
    fn errors() {
        let shape = Shape::new([e(0, 0)]).unwrap();
        assert_eq!(find_annihilator(&PatternSet::new(shape.clone(), []).unwrap()), Err(Error::NoPatterns));
        let ps = PatternSet::new(shape, [vec![0], vec![1]]).unwrap();
        assert_eq!(find_annihilator(&ps), Err(Error::NotLowComplexity { count: 2, size: 1 }));
    }

    #[test]
    fn verify_examples() {
        let c = TorusConfig::constant(2, 3, 1);
        let r = AnnihilatorResult {
            kind: AnnihilatorKind::DirectAnnihilator,
            f: LaurentPoly::difference_binomial(Z, e(1, 0)),
            periodizer: None,
            constant: None,
        };
        assert!(verify(&r, &c.into()).unwrap().pass);
        let random = TorusConfig::from_rows(&[vec![0, 1, 2], vec![2, 2, 0]], None).unwrap();
        let rep = verify(&r, &random.into()).unwrap();
        assert!(!rep.pass);
        assert!(matches!(rep.annihilation, Annihilation::No { .. }));
        let tiny = Patch::from_fn(Exp::ZERO, 1, 1, |_| 0).unwrap();
        assert_eq!(verify(&r, &tiny.into()), Err(Error::EmptyValidRegion));
    }

    #[test]
    fn wrong_constant_fails() {
        let cb = TorusConfig::from_fn(2, 2, |i, j| (i + j) % 2).unwrap();
        let shape = Shape::new([e(0, 0), e(1, 0)]).unwrap();
        let mut r = find_annihilator(&patterns_of(&cb, &shape)).unwrap();
        r.constant = Some(2);
        let rep = verify(&r, &cb.into()).unwrap();
        assert!(!rep.pass && rep.annihilation.holds());
    }

    #[test]
    fn binomial_search_examples() {
        let cb: Source = TorusConfig::from_fn(2, 2, |i, j| (i + j) % 2).unwrap().into();
        let r = find_binomial_product_annihilator(&cb, 2, 2).unwrap().unwrap();
        assert_eq!(r.vectors, vec![e(1, 1)]);

        let t: Source = TorusConfig::from_fn(3, 5, |i, j| (i * i + 2 * j * j) % 7).unwrap().into();
        let r = find_binomial_product_annihilator(&t, 5, 1).unwrap().unwrap();
        assert_eq!(r.vectors, vec![e(3, 0)]);
        assert_eq!(r.evidence, Annihilation::Yes);
    }

    #[test]
    fn sum_of_two_periodic_layers() {
        // (2,0)-periodic plus (0,3)-periodic, each layer irregular in the other axis
        let hash = |a: i64, b: i64| ((a * 7919 + b * 104729 + 13).rem_euclid(65521) * 31 % 17) % 4;
        let p = Patch::from_fn(Exp::ZERO, 12, 12, |u| hash(u.x.rem_euclid(2), u.y + 100) + hash(u.x + 50, u.y.rem_euclid(3))).unwrap();
        let src: Source = p.into();
        let r = find_binomial_product_annihilator(&src, 3, 2).unwrap().unwrap();
        assert_eq!(r.vectors.len(), 2);
        assert!(src.is_annihilated(&binomial_product(&[e(2, 0), e(0, 3)])).unwrap().holds());
        // any returned pair must itself annihilate; the canonical first is checked against brute force
        let cands = candidate_vectors(3);
        let first = tuples(&cands, 2)
            .into_iter()
            .find(|t| src.is_annihilated(&binomial_product(t)).unwrap().holds())
            .unwrap();
        assert_eq!(r.vectors, first);
        assert!(find_binomial_product_annihilator(&src, 3, 1).unwrap().is_none());
    }

    #[test]
    fn search_order() {
        let c = candidate_vectors(1);
        assert_eq!(c, vec![e(0, 1), e(1, 0), e(1, 1), e(1, -1)]);
        let t = tuples(&candidate_vectors(2), 2);
        assert_eq!(t[0], vec![e(0, 1), e(1, 0)]);
        assert!(t.iter().all(|p| p[0].cross(p[1]) != 0));
        let tiny: Source = Patch::from_fn(Exp::ZERO, 1, 1, |_| 0).unwrap().into();
        assert_eq!(find_binomial_product_annihilator(&tiny, 1, 1), Err(Error::EmptyValidRegion));
    }

    fn arb_low_complexity() -> impl Strategy<Value = (TorusConfig, Shape)> {
        let torus = (1usize..=3, 1usize..=3, 1i64..=3).prop_flat_map(|(k, l, a)| {
            prop::collection::vec(0..a, k * l).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(k).map(|c| c.to_vec()).collect();
                TorusConfig::from_rows(&rows, None).unwrap()
            })
        });
        let shape = prop::collection::btree_set((0i64..3, 0i64..2), 1..=6)
            .prop_map(|s| Shape::new(s.into_iter().map(Exp::from)).unwrap());
        (torus, shape).prop_filter("low complexity", |(t, s)| patterns_of(t, s).len() <= s.len())
    }

    proptest! {
        #[test]
        fn annihilator_soundness((t, shape) in arb_low_complexity()) {
            let ps = patterns_of(&t, &shape);
            let r = find_annihilator(&ps).unwrap();
            prop_assert!(!r.f.is_zero());
            let full_rank = rational_rank(&ps.patterns.iter().cloned().collect::<Vec<_>>(), shape.len()) == shape.len();
            match r.kind {
                AnnihilatorKind::DirectAnnihilator => {
                    prop_assert!(!full_rank);
                    for p in &ps.patterns {
                        prop_assert!(inner(&r.f, &shape, p).is_zero());
                    }
                }
                AnnihilatorKind::PeriodizerTimesBinomial => {
                    prop_assert!(full_rank);
                    let g = r.periodizer.as_ref().unwrap();
                    let k = BigRational::from_integer(r.constant.unwrap().into());
                    for p in &ps.patterns {
                        prop_assert_eq!(inner(g, &shape, p), k.clone());
                    }
                }
            }
            prop_assert!(verify(&r, &t.into()).unwrap().pass);
        }

        #[test]
        fn scaling_keeps_support((t, shape) in arb_low_complexity(), s in prop::sample::select(vec![-3i64, -2, 2, 5])) {
            let ps = patterns_of(&t, &shape);
            let scaled = PatternSet::new(shape.clone(), ps.patterns.iter().map(|p| p.iter().map(|v| v * s).collect())).unwrap();
            let (a, b) = (find_annihilator(&ps).unwrap(), find_annihilator(&scaled).unwrap());
            prop_assert_eq!(a.kind, b.kind);
            // the kernel is unchanged, so f agrees up to a global scalar
            let (fa, fb) = (a.periodizer.unwrap_or(a.f), b.periodizer.unwrap_or(b.f));
            let sa: Vec<Exp> = fa.support().collect();
            let sb: Vec<Exp> = fb.support().collect();
            prop_assert_eq!(&sa, &sb);
            let ratio = fb.coeff(sa[0]).unwrap() / fa.coeff(sa[0]).unwrap();
            prop_assert_eq!(fa.scale(&ratio).unwrap(), fb);
            prop_assert!(!ratio.is_zero() && (ratio.is_one() || ratio == -BigRational::one()));
        }
    }
}
