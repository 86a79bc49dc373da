//! Antenna placements (every cell hears a fixed number of broadcasts) and
//! periodic co-tilers of cluster tiles.

use serde::{Deserialize, Serialize};

use crate::coeff::CoefficientDomain;
use crate::configuration::{Shape, TorusConfig};
use crate::error::{Error, Result};
use crate::lines::{classify, PeriodicityVerdict, Role};
use crate::poly::LaurentPoly;
use crate::sft::{decide, Budget, BudgetSpent, Decision, SftSpec};

const Z: CoefficientDomain = CoefficientDomain::Integers;

/// Antennas at the 1-cells of a {0,1} configuration broadcast to the cells
/// `v + D`; every non-antenna cell hears exactly `a` broadcasts and every
/// antenna cell exactly `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntennaProblem {
    pub shape: Shape,
    pub a: i64,
    pub b: i64,
}

fn indicator(shape: &Shape) -> LaurentPoly {
    LaurentPoly::from_terms(Z, shape.cells().iter().map(|u| (*u, Z.one()))).expect("integers")
}

/// `Σ_{u∈D} x^u - (b - a)`, which sends every solution to the constant `a`.
pub fn antenna_polynomial(p: &AntennaProblem) -> LaurentPoly {
    indicator(&p.shape)
        .sub(&LaurentPoly::constant(Z, p.b - p.a))
        .expect("same domain")
}

/// Classifies through the periodizer route. When the polynomial vanishes
/// (`D` a single cell and `b - a = 1`) nothing follows and the result is
/// `ZeroPolynomial`.
pub fn antenna_classify(p: &AntennaProblem) -> Result<PeriodicityVerdict> {
    classify(&antenna_polynomial(p), Role::Periodizes)
}

fn check_binary(c: &TorusConfig) -> Result<()> {
    match c.alphabet().iter().find(|v| **v != 0 && **v != 1) {
        Some(v) => Err(Error::InvalidAlphabet(*v)),
        None => Ok(()),
    }
}

/// Exact check on the torus that the number of broadcasts heard at every
/// cell is `(b - a)·c + a`.
pub fn antenna_verify(c: &TorusConfig, p: &AntennaProblem) -> Result<bool> {
    check_binary(c)?;
    let heard = c.apply(&indicator(&p.shape))?;
    Ok(c.cells().all(|u| heard.get(u) == (p.b - p.a) * c.get(u) + p.a))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterTile {
    pub shape: Shape,
}

/// A co-tiler `C` has exactly one point in every translate of `-D`: the SFT
/// over {0,1} on shape `-D` whose allowed patterns each contain a single 1.
pub fn cotiler_sft(t: &ClusterTile) -> SftSpec {
    let shape = t.shape.negate();
    let n = shape.len();
    let allowed = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect());
    SftSpec::new(shape, [0, 1], allowed).expect("valid by construction")
}

/// Whether the translates `c + D` over the 1-cells of the torus cover every
/// cell exactly once.
pub fn exact_cover(t: &ClusterTile, c: &TorusConfig) -> Result<bool> {
    check_binary(c)?;
    let (k, l) = (c.k() as i64, c.l() as i64);
    let mut count = vec![0usize; (k * l) as usize];
    for v in c.cells().filter(|v| c.get(*v) == 1) {
        for d in t.shape.cells() {
            let w = *d + v;
            count[(w.y.rem_euclid(l) * k + w.x.rem_euclid(k)) as usize] += 1;
        }
    }
    Ok(count.iter().all(|&n| n == 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CotilerOutcome {
    pub decision: Decision,
    pub spent: BudgetSpent,
    /// Independent exact-cover check of a found witness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_cover: Option<bool>,
}

impl CotilerOutcome {
    pub fn witness(&self) -> Option<&TorusConfig> {
        match &self.decision {
            Decision::Nonempty { witness } => Some(witness),
            _ => None,
        }
    }
}

pub fn find_periodic_cotiler(t: &ClusterTile, budget: Budget) -> Result<CotilerOutcome> {
    let out = decide(&cotiler_sft(t), budget);
    let exact_cover = match &out.decision {
        Decision::Nonempty { witness } => Some(exact_cover(t, witness)?),
        _ => None,
    };
    Ok(CotilerOutcome { decision: out.decision, spent: out.spent, exact_cover })
}

/// The perfect code of the plus shape: `c(i, j) = 1` iff `i + 2j ≡ 0 (mod 5)`.
pub fn plus_perfect_code() -> TorusConfig {
    TorusConfig::from_fn(5, 5, |i, j| i64::from((i + 2 * j) % 5 == 0)).expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Exp;
    use crate::lines::line_factor_decomposition;
    use proptest::prelude::*;

    fn e(x: i64, y: i64) -> Exp {
        Exp::new(x, y)
    }

    fn plus(a: i64, b: i64) -> AntennaProblem {
        AntennaProblem { shape: Shape::plus(), a, b }
    }

    #[test]
    fn antenna_polynomials() {
        let f = antenna_polynomial(&plus(0, 1));
        assert_eq!(f.len(), 4);
        assert!(f.coeff(Exp::ZERO).is_none());
        assert_eq!(antenna_polynomial(&plus(1, 1)), indicator(&Shape::plus()));
        let single = AntennaProblem { shape: Shape::new([Exp::ZERO]).unwrap(), a: 0, b: 2 };
        assert_eq!(antenna_polynomial(&single), LaurentPoly::constant(Z, -1));
    }

    #[test]
    fn antenna_verdicts() {
        assert_eq!(antenna_classify(&plus(1, 1)).unwrap(), PeriodicityVerdict::TwoPeriodic);
        assert_eq!(antenna_classify(&plus(3, 1)).unwrap(), PeriodicityVerdict::TwoPeriodic);
        // x + 1/x + y + 1/y = (x + y)(1 + xy)/(xy): two diagonal line factors
        let boundary = antenna_classify(&plus(0, 1)).unwrap();
        assert_eq!(boundary, PeriodicityVerdict::Undetermined { order_upper_bound: 2 });
        let d = line_factor_decomposition(&antenna_polynomial(&plus(0, 1))).unwrap();
        assert_eq!(d.directions(), vec![e(1, 1), e(1, -1)]);

        let domino = Shape::new([e(0, 0), e(1, 0)]).unwrap();
        for (a, b) in [(0, 0), (0, 1), (2, 0), (0, 3)] {
            let v = antenna_classify(&AntennaProblem { shape: domino.clone(), a, b }).unwrap();
            // 1 + x - (b - a) is horizontal unless it collapses to a monomial
            let expected = if b - a == 1 {
                PeriodicityVerdict::TwoPeriodic
            } else {
                PeriodicityVerdict::PeriodicInDirection { direction: e(1, 0) }
            };
            assert_eq!(v, expected, "a={a} b={b}");
        }
        let single = AntennaProblem { shape: Shape::new([Exp::ZERO]).unwrap(), a: 0, b: 1 };
        assert_eq!(antenna_classify(&single), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn antenna_checks() {
        assert!(antenna_verify(&plus_perfect_code(), &plus(1, 1)).unwrap());
        let ones = TorusConfig::constant(2, 2, 1);
        assert!(antenna_verify(&ones, &AntennaProblem { shape: Shape::new([Exp::ZERO]).unwrap(), a: 0, b: 1 }).unwrap());
        let zeros = TorusConfig::constant(3, 3, 0);
        assert!(!antenna_verify(&zeros, &plus(1, 1)).unwrap());
        let bad = TorusConfig::constant(1, 1, 2);
        assert_eq!(antenna_verify(&bad, &plus(1, 1)), Err(Error::InvalidAlphabet(2)));
    }

    #[test]
    fn cotiler_specs() {
        let domino = ClusterTile { shape: Shape::new([e(0, 0), e(1, 0)]).unwrap() };
        let s = cotiler_sft(&domino);
        assert_eq!(s.shape().cells(), &[e(-1, 0), e(0, 0)]);
        assert_eq!(s.allowed().len(), 2);
        assert!(s.low_complexity());
        assert_eq!(cotiler_sft(&ClusterTile { shape: Shape::plus() }).allowed().len(), 5);
        let single = cotiler_sft(&ClusterTile { shape: Shape::new([Exp::ZERO]).unwrap() });
        assert_eq!(single.allowed().iter().collect::<Vec<_>>(), vec![&vec![1]]);
    }

    #[test]
    fn cotiler_search() {
        let domino = ClusterTile { shape: Shape::new([e(0, 0), e(1, 0)]).unwrap() };
        let out = find_periodic_cotiler(&domino, Budget::default()).unwrap();
        assert_eq!(out.exact_cover, Some(true));
        let w = out.witness().unwrap();
        assert_eq!((w.k(), w.l()), (2, 1));

        let plus = ClusterTile { shape: Shape::plus() };
        let out = find_periodic_cotiler(&plus, Budget::default()).unwrap();
        assert_eq!(out.exact_cover, Some(true));
        let w = out.witness().unwrap();
        assert_eq!((w.k(), w.l()), (5, 5));
        assert_eq!(w.period_lattice_index(), 5);
        assert!(w.is_period(e(1, 2)) && w.is_period(e(2, -1)) || w.is_period(e(1, -2)) && w.is_period(e(2, 1)));

        let tromino = ClusterTile { shape: Shape::new([e(0, 0), e(1, 0), e(0, 1)]).unwrap() };
        let out = find_periodic_cotiler(&tromino, Budget::default()).unwrap();
        assert_eq!(out.exact_cover, Some(true));
        assert_eq!(out.witness().unwrap().period_lattice_index(), 3);
    }

    #[test]
    fn non_tile_is_empty() {
        // every row would need a tiling of ℤ by {0, 1, 3}, which does not exist
        let gap = ClusterTile { shape: Shape::new([e(0, 0), e(1, 0), e(3, 0)]).unwrap() };
        let out = find_periodic_cotiler(&gap, Budget { max_window: 10, max_torus: 4, max_nodes: 1_000_000 }).unwrap();
        let Decision::Empty { window } = out.decision else { panic!("{:?}", out.decision) };
        assert!(crate::sft::verify_empty(&cotiler_sft(&gap), window, 3).unwrap());
        assert!(crate::sft::window_fillable(&cotiler_sft(&gap), window - 1).unwrap().is_some());
    }

    fn arb_binary_torus() -> impl Strategy<Value = TorusConfig> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(k, l)| {
            prop::collection::vec(0i64..=1, k * l).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(k).map(|c| c.to_vec()).collect();
                TorusConfig::from_rows(&rows, Some([0, 1].into())).unwrap()
            })
        })
    }

    fn arb_tile() -> impl Strategy<Value = ClusterTile> {
        prop::collection::btree_set((-1i64..=1, -1i64..=1), 1..=4)
            .prop_map(|s| ClusterTile { shape: Shape::new(s.into_iter().map(Exp::from)).unwrap() })
    }

    proptest! {
        #[test]
        fn three_formulations_agree(c in arb_binary_torus(), t in arb_tile()) {
            let sft = cotiler_sft(&t).accepts(&c);
            let antenna = antenna_verify(&c, &AntennaProblem { shape: t.shape.clone(), a: 1, b: 1 }).unwrap();
            let cover = exact_cover(&t, &c).unwrap();
            prop_assert_eq!(sft, antenna);
            prop_assert_eq!(antenna, cover);
        }

        #[test]
        fn antenna_verify_matches_constant_image(c in arb_binary_torus(), t in arb_tile(), a in 0i64..=2, b in 0i64..=2) {
            let p = AntennaProblem { shape: t.shape.clone(), a, b };
            let image = antenna_polynomial(&p);
            let is_constant = !image.is_zero()
                && c.apply(&image).unwrap() == TorusConfig::constant(c.k(), c.l(), a).apply(&LaurentPoly::one(Z)).unwrap();
            let zero_case = image.is_zero() && a == 0;
            prop_assert_eq!(antenna_verify(&c, &p).unwrap(), is_constant || zero_case);
        }

        #[test]
        fn cotiler_always_low_complexity(t in arb_tile()) {
            let s = cotiler_sft(&t);
            prop_assert!(s.low_complexity());
            prop_assert_eq!(s.allowed().len(), t.shape.len());
        }
    }
}
