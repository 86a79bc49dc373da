//! Subshifts of finite type given by allowed patterns, with a budgeted
//! emptiness decision that dovetails two exhaustive searches: square windows
//! that cannot be filled prove emptiness, fillable tori prove non-emptiness.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::configuration::{Shape, Source, TorusConfig};
use crate::error::{Error, Result};
use crate::geometry::NewtonPolygon;
use crate::poly::Exp;

/// Allowed `D`-patterns over a finite alphabet; patterns list symbols in the
/// shape's cell order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SftSpec {
    shape: Shape,
    alphabet: BTreeSet<i64>,
    allowed: BTreeSet<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct SftSpecJson {
    shape: Shape,
    alphabet: BTreeSet<i64>,
    allowed: Vec<Vec<i64>>,
    #[serde(default, skip_deserializing)]
    low_complexity: bool,
}

impl Serialize for SftSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SftSpecJson {
            shape: self.shape.clone(),
            alphabet: self.alphabet.clone(),
            allowed: self.allowed.iter().cloned().collect(),
            low_complexity: self.low_complexity(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SftSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SftSpecJson::deserialize(d)?;
        SftSpec::new(j.shape, j.alphabet, j.allowed).map_err(serde::de::Error::custom)
    }
}

impl SftSpec {
    pub fn new(
        shape: Shape,
        alphabet: impl IntoIterator<Item = i64>,
        allowed: impl IntoIterator<Item = Vec<i64>>,
    ) -> Result<Self> {
        let alphabet: BTreeSet<i64> = alphabet.into_iter().collect();
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let allowed: BTreeSet<Vec<i64>> = allowed.into_iter().collect();
        for p in &allowed {
            if p.len() != shape.len() {
                return Err(Error::PatternShapeMismatch { expected: shape.len(), got: p.len() });
            }
            if let Some(v) = p.iter().find(|v| !alphabet.contains(v)) {
                return Err(Error::InvalidAlphabet(*v));
            }
        }
        Ok(SftSpec { shape, alphabet, allowed })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn alphabet(&self) -> &BTreeSet<i64> {
        &self.alphabet
    }

    pub fn allowed(&self) -> &BTreeSet<Vec<i64>> {
        &self.allowed
    }

    pub fn low_complexity(&self) -> bool {
        self.allowed.len() <= self.shape.len()
    }

    /// Whether every `D`-pattern of the torus (with wraparound) is allowed;
    /// checked by plain extraction, independently of the search kernel.
    pub fn accepts(&self, torus: &TorusConfig) -> bool {
        let patterns = Source::from(torus.clone())
            .extract_patterns(&self.shape)
            .expect("tori contain every shape");
        patterns.patterns.is_subset(&self.allowed)
    }
}

/// True iff `D` is the set of integer points of its convex hull.
pub fn is_discrete_convex(shape: &Shape) -> bool {
    let hull = NewtonPolygon::hull(shape.cells().iter().copied());
    let pts: BTreeSet<Exp> = hull.lattice_points().into_iter().collect();
    let cells: BTreeSet<Exp> = shape.cells().iter().copied().collect();
    pts == cells
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Symbols row by row.
    Found(Vec<Vec<i64>>),
    Exhausted,
    Aborted,
}

/// A grid to fill: which cells each translate of `D` reads, in shape order.
struct Layout {
    width: usize,
    height: usize,
    translates: Vec<Vec<usize>>,
}

impl Layout {
    fn window(shape: &Shape, n: usize) -> Self {
        let (lo, hi) = (shape.min_corner(), shape.max_corner());
        let n_i = n as i64;
        let mut translates = Vec::new();
        for ty in -lo.y..n_i - hi.y {
            for tx in -lo.x..n_i - hi.x {
                let t = Exp::new(tx, ty);
                translates.push(
                    shape
                        .cells()
                        .iter()
                        .map(|d| {
                            let c = t + *d;
                            (c.y * n_i + c.x) as usize
                        })
                        .collect(),
                );
            }
        }
        Layout { width: n, height: n, translates }
    }

    fn torus(shape: &Shape, k: usize, l: usize) -> Self {
        let (k_i, l_i) = (k as i64, l as i64);
        let mut translates = Vec::with_capacity(k * l);
        for ty in 0..l_i {
            for tx in 0..k_i {
                translates.push(
                    shape
                        .cells()
                        .iter()
                        .map(|d| {
                            let x = (tx + d.x).rem_euclid(k_i);
                            let y = (ty + d.y).rem_euclid(l_i);
                            (y * k_i + x) as usize
                        })
                        .collect(),
                );
            }
        }
        Layout { width: k, height: l, translates }
    }
}

/// Row-major backtracking with forward checking: each translate keeps the
/// bitset of allowed patterns still consistent with the assigned cells.
struct Kernel<'a> {
    symbols: Vec<i64>,
    words: usize,
    /// `masks[i][s]`: patterns carrying symbol `s` at shape position `i`.
    masks: Vec<Vec<Vec<u64>>>,
    /// For each cell, the `(translate, shape position)` pairs reading it.
    occurrences: Vec<Vec<(usize, usize)>>,
    alive: Vec<u64>,
    trail: Vec<(usize, Vec<u64>)>,
    assignment: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    layout: &'a Layout,
}

impl<'a> Kernel<'a> {
    fn new(spec: &SftSpec, layout: &'a Layout, max_nodes: u64) -> Self {
        let symbols: Vec<i64> = spec.alphabet.iter().copied().collect();
        let allowed: Vec<&Vec<i64>> = spec.allowed.iter().collect();
        let words = allowed.len().div_ceil(64).max(1);
        let mut masks = vec![vec![vec![0u64; words]; symbols.len()]; spec.shape.len()];
        for (pi, p) in allowed.iter().enumerate() {
            for (i, v) in p.iter().enumerate() {
                let s = symbols.binary_search(v).expect("validated alphabet");
                masks[i][s][pi / 64] |= 1 << (pi % 64);
            }
        }
        let ncells = layout.width * layout.height;
        let mut occurrences = vec![Vec::new(); ncells];
        for (j, cells) in layout.translates.iter().enumerate() {
            for (i, &c) in cells.iter().enumerate() {
                occurrences[c].push((j, i));
            }
        }
        let mut full = vec![0u64; words];
        for pi in 0..allowed.len() {
            full[pi / 64] |= 1 << (pi % 64);
        }
        let alive = full.repeat(layout.translates.len());
        Kernel {
            symbols,
            words,
            masks,
            occurrences,
            alive,
            trail: Vec::new(),
            assignment: vec![0; ncells],
            nodes: 0,
            max_nodes,
            layout,
        }
    }

    /// Restricts every translate reading `cell` to patterns with `s` there.
    fn assign(&mut self, cell: usize, s: usize) -> bool {
        let w = self.words;
        for &(j, i) in &self.occurrences[cell] {
            let row = &mut self.alive[j * w..(j + 1) * w];
            let mask = &self.masks[i][s];
            if row.iter().zip(mask).all(|(r, m)| r & m == *r) {
                continue;
            }
            self.trail.push((j, row.to_vec()));
            let mut any = false;
            for (r, m) in row.iter_mut().zip(mask) {
                *r &= m;
                any |= *r != 0;
            }
            if !any {
                return false;
            }
        }
        self.assignment[cell] = s;
        true
    }

    fn undo(&mut self, mark: usize) {
        let w = self.words;
        while self.trail.len() > mark {
            let (j, old) = self.trail.pop().unwrap();
            self.alive[j * w..(j + 1) * w].copy_from_slice(&old);
        }
    }

    fn dfs(&mut self, cell: usize) -> Option<bool> {
        if cell == self.assignment.len() {
            return Some(true);
        }
        if self.occurrences[cell].is_empty() {
            self.assignment[cell] = 0;
            return self.dfs(cell + 1);
        }
        for s in 0..self.symbols.len() {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return None;
            }
            let mark = self.trail.len();
            if self.assign(cell, s) {
                match self.dfs(cell + 1) {
                    Some(false) => {}
                    done => return done,
                }
            }
            self.undo(mark);
        }
        Some(false)
    }

    fn run(mut self) -> (SearchOutcome, u64) {
        let w = self.words;
        let dead = (0..self.layout.translates.len()).any(|j| self.alive[j * w..(j + 1) * w].iter().all(|x| *x == 0));
        let outcome = if dead {
            SearchOutcome::Exhausted
        } else {
            match self.dfs(0) {
                None => SearchOutcome::Aborted,
                Some(false) => SearchOutcome::Exhausted,
                Some(true) => SearchOutcome::Found(
                    self.assignment
                        .chunks(self.layout.width)
                        .map(|r| r.iter().map(|&s| self.symbols[s]).collect())
                        .collect(),
                ),
            }
        };
        (outcome, self.nodes)
    }
}

/// Searches an `n × n` window in which every fully contained translate of
/// `D` carries an allowed pattern. Cells read by no translate get the
/// smallest symbol.
pub fn window_search(spec: &SftSpec, n: usize, max_nodes: u64) -> Result<(SearchOutcome, u64)> {
    let extent = spec.shape.extent();
    if n < extent {
        return Err(Error::WindowSmallerThanShape { window: n, extent });
    }
    let layout = Layout::window(&spec.shape, n);
    Ok(Kernel::new(spec, &layout, max_nodes).run())
}

pub fn torus_search(spec: &SftSpec, k: usize, l: usize, max_nodes: u64) -> (SearchOutcome, u64) {
    let layout = Layout::torus(&spec.shape, k, l);
    Kernel::new(spec, &layout, max_nodes).run()
}

/// Exhaustive; `None` means no window of size `n` can be filled.
pub fn window_fillable(spec: &SftSpec, n: usize) -> Result<Option<Vec<Vec<i64>>>> {
    Ok(match window_search(spec, n, u64::MAX)?.0 {
        SearchOutcome::Found(rows) => Some(rows),
        _ => None,
    })
}

/// Exhaustive search for a configuration with periods `(k, 0)` and `(0, l)`.
pub fn find_periodic_point(spec: &SftSpec, k: usize, l: usize) -> Option<TorusConfig> {
    match torus_search(spec, k.max(1), l.max(1), u64::MAX).0 {
        SearchOutcome::Found(rows) => Some(TorusConfig::from_rows(&rows, Some(spec.alphabet.clone())).expect("valid")),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_window: usize,
    pub max_torus: usize,
    /// Node limit for each individual search.
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_window: 8, max_torus: 6, max_nodes: 2_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BudgetSpent {
    pub nodes: u64,
    /// Largest window size searched.
    pub window: Option<usize>,
    /// Largest `k + l` searched.
    pub torus_diagonal: Option<usize>,
    /// Searches stopped by the node limit.
    pub aborted: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "decision", rename_all = "snake_case")]
pub enum Decision {
    /// No square window of this size can be filled, so the subshift is empty.
    Empty { window: usize },
    /// A two-periodic configuration in the subshift.
    Nonempty { witness: TorusConfig },
    Unknown { budget_spent: BudgetSpent },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideOutcome {
    pub decision: Decision,
    pub spent: BudgetSpent,
}

fn diagonal(s: usize, max_torus: usize) -> Vec<(usize, usize)> {
    (1..s).filter(|&k| k <= max_torus && s - k <= max_torus).map(|k| (k, s - k)).collect()
}

/// Alternates one window size (increasing from the shape's extent) with one
/// torus diagonal `k + l = s` (increasing, `k` ascending within it) and stops
/// at the first certificate. Tori on a diagonal are searched in parallel;
/// the first success in `k` order wins, so the answer does not depend on
/// scheduling.
pub fn decide(spec: &SftSpec, budget: Budget) -> DecideOutcome {
    let mut spent = BudgetSpent::default();
    let mut windows = spec.shape.extent()..=budget.max_window;
    let mut diagonals = (2..=2 * budget.max_torus).filter(|&s| !diagonal(s, budget.max_torus).is_empty());
    loop {
        let mut progressed = false;
        if let Some(n) = windows.next() {
            progressed = true;
            let (outcome, nodes) = window_search(spec, n, budget.max_nodes).expect("n ≥ extent");
            spent.nodes += nodes;
            spent.window = Some(n);
            match outcome {
                SearchOutcome::Exhausted => return DecideOutcome { decision: Decision::Empty { window: n }, spent },
                SearchOutcome::Aborted => spent.aborted += 1,
                SearchOutcome::Found(_) => {}
            }
        }
        if let Some(s) = diagonals.next() {
            progressed = true;
            let results: Vec<(SearchOutcome, u64)> = diagonal(s, budget.max_torus)
                .par_iter()
                .map(|&(k, l)| torus_search(spec, k, l, budget.max_nodes))
                .collect();
            spent.torus_diagonal = Some(s);
            let mut witness = None;
            for (outcome, nodes) in results {
                spent.nodes += nodes;
                match outcome {
                    SearchOutcome::Found(rows) if witness.is_none() => witness = Some(rows),
                    SearchOutcome::Aborted => spent.aborted += 1,
                    _ => {}
                }
            }
            if let Some(rows) = witness {
                let t = TorusConfig::from_rows(&rows, Some(spec.alphabet.clone())).expect("valid");
                return DecideOutcome { decision: Decision::Nonempty { witness: t }, spent };
            }
        }
        if !progressed {
            return DecideOutcome { decision: Decision::Unknown { budget_spent: spent }, spent };
        }
    }
}

/// Independent re-check that no `n × n` window can be filled: visits cells
/// in a seeded random order, tries symbols in a seeded random order, and
/// tests partial translates against the allowed list directly.
pub fn verify_empty(spec: &SftSpec, n: usize, seed: u64) -> Result<bool> {
    let extent = spec.shape.extent();
    if n < extent {
        return Err(Error::WindowSmallerThanShape { window: n, extent });
    }
    let layout = Layout::window(&spec.shape, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // One of the four row-by-row sweeps, chosen by the seed.
    let sweep = rng.random_range(0..4u8);
    let order: Vec<usize> = (0..n * n)
        .map(|c| {
            let (x, y) = (c % n, c / n);
            let x = if sweep & 1 == 1 { n - 1 - x } else { x };
            let y = if sweep & 2 == 2 { n - 1 - y } else { y };
            y * n + x
        })
        .collect();
    let mut by_cell: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for (j, cells) in layout.translates.iter().enumerate() {
        for &c in cells {
            by_cell[c].push(j);
        }
    }
    let allowed: Vec<&Vec<i64>> = spec.allowed.iter().collect();
    let symbols: Vec<i64> = spec.alphabet.iter().copied().collect();
    let mut grid: Vec<Option<i64>> = vec![None; n * n];

    let consistent = |grid: &[Option<i64>], j: usize| {
        let cells = &layout.translates[j];
        allowed
            .iter()
            .any(|p| cells.iter().zip(p.iter()).all(|(&c, v)| grid[c].is_none_or(|g| g == *v)))
    };
    if (0..layout.translates.len()).any(|j| !consistent(&grid, j)) {
        return Ok(true);
    }

    struct Ctx<'a> {
        order: &'a [usize],
        by_cell: &'a [Vec<usize>],
        translates: &'a [Vec<usize>],
        symbols: &'a [i64],
        consistent: &'a dyn Fn(&[Option<i64>], usize) -> bool,
    }

    // Forward check: every open cell sharing a translate with `cell` must
    // still admit some symbol.
    fn viable(ctx: &Ctx, grid: &mut [Option<i64>], cell: usize) -> bool {
        if !ctx.by_cell[cell].iter().all(|&j| (ctx.consistent)(grid, j)) {
            return false;
        }
        for &j in &ctx.by_cell[cell] {
            for &c in &ctx.translates[j] {
                if grid[c].is_some() {
                    continue;
                }
                let ok = ctx.symbols.iter().any(|&s| {
                    grid[c] = Some(s);
                    let r = ctx.by_cell[c].iter().all(|&i| (ctx.consistent)(grid, i));
                    grid[c] = None;
                    r
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn go(ctx: &Ctx, pos: usize, grid: &mut Vec<Option<i64>>, rng: &mut ChaCha8Rng) -> bool {
        let Some(&cell) = ctx.order.get(pos) else { return true };
        let mut syms = ctx.symbols.to_vec();
        syms.shuffle(rng);
        for s in syms {
            grid[cell] = Some(s);
            if viable(ctx, grid, cell) && go(ctx, pos + 1, grid, rng) {
                return true;
            }
        }
        grid[cell] = None;
        false
    }
    let ctx = Ctx { order: &order, by_cell: &by_cell, translates: &layout.translates, symbols: &symbols, consistent: &consistent };
    Ok(!go(&ctx, 0, &mut grid, &mut rng))
}

/// Re-checks a decision: a witness must satisfy every pattern constraint and
/// an emptiness claim must survive the randomized search.
pub fn verify_decision(spec: &SftSpec, decision: &Decision, seed: u64) -> Result<bool> {
    match decision {
        Decision::Empty { window } => verify_empty(spec, *window, seed),
        Decision::Nonempty { witness } => Ok(witness.alphabet().is_subset(&spec.alphabet) && spec.accepts(witness)),
        Decision::Unknown { .. } => Ok(false),
    }
}

/// Every `k × l` torus accepted by `spec`, by brute force over all colorings;
/// only for tiny cases.
pub fn brute_force_tori(spec: &SftSpec, k: usize, l: usize) -> Vec<TorusConfig> {
    let symbols: Vec<i64> = spec.alphabet.iter().copied().collect();
    let cells = k * l;
    let total = symbols.len().pow(cells as u32);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for mut code in 0..total {
        let mut vals = Vec::with_capacity(cells);
        for _ in 0..cells {
            vals.push(symbols[code % symbols.len()]);
            code /= symbols.len();
        }
        let rows: Vec<Vec<i64>> = vals.chunks(k).map(|r| r.to_vec()).collect();
        let t = TorusConfig::from_rows(&rows, Some(spec.alphabet.clone())).unwrap();
        if spec.accepts(&t) && seen.insert(rows) {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(x: i64, y: i64) -> Exp {
        Exp::new(x, y)
    }

    fn all_patterns(n: usize, symbols: &[i64]) -> Vec<Vec<i64>> {
        (0..n).fold(vec![Vec::new()], |acc, _| {
            acc.into_iter()
                .flat_map(|p| {
                    symbols.iter().map(move |&s| {
                        let mut q = p.clone();
                        q.push(s);
                        q
                    })
                })
                .collect()
        })
    }

    fn domino_checker() -> SftSpec {
        SftSpec::new(Shape::new([e(0, 0), e(1, 0)]).unwrap(), [0, 1], [vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn spec_validation() {
        let shape = Shape::rect(2, 1).unwrap();
        assert_eq!(SftSpec::new(shape.clone(), [], []), Err(Error::EmptyAlphabet));
        assert_eq!(SftSpec::new(shape.clone(), [0], [vec![0]]), Err(Error::PatternShapeMismatch { expected: 2, got: 1 }));
        assert_eq!(SftSpec::new(shape.clone(), [0], [vec![0, 3]]), Err(Error::InvalidAlphabet(3)));
        assert!(domino_checker().low_complexity());
        let all = SftSpec::new(shape, [0, 1], all_patterns(2, &[0, 1])).unwrap();
        assert!(!all.low_complexity());
        let json = serde_json::to_string(&domino_checker()).unwrap();
        assert_eq!(json, r#"{"shape":[[0,0],[1,0]],"alphabet":[0,1],"allowed":[[0,1],[1,0]],"low_complexity":true}"#);
        assert_eq!(serde_json::from_str::<SftSpec>(&json).unwrap(), domino_checker());
    }

    #[test]
    fn window_examples() {
        let shape = Shape::rect(2, 2).unwrap();
        let all = SftSpec::new(shape.clone(), [0, 1], all_patterns(4, &[0, 1])).unwrap();
        for n in 2..6 {
            assert!(window_fillable(&all, n).unwrap().is_some());
        }
        let none = SftSpec::new(shape.clone(), [0, 1], []).unwrap();
        for n in 2..6 {
            assert_eq!(window_fillable(&none, n).unwrap(), None);
        }
        assert_eq!(window_fillable(&none, 1), Err(Error::WindowSmallerThanShape { window: 1, extent: 2 }));
        let rows = window_fillable(&domino_checker(), 4).unwrap().unwrap();
        for r in &rows {
            assert!(r.windows(2).all(|w| w[0] != w[1]));
        }
    }

    #[test]
    fn torus_examples() {
        let shape = Shape::plus();
        let all = SftSpec::new(shape.clone(), [3, 4], all_patterns(5, &[3, 4])).unwrap();
        assert_eq!(find_periodic_point(&all, 1, 1).unwrap().rows(), vec![vec![3]]);
        assert_eq!(find_periodic_point(&domino_checker(), 1, 1), None);
        let t = find_periodic_point(&domino_checker(), 2, 1).unwrap();
        assert!(domino_checker().accepts(&t));
        let none = SftSpec::new(shape, [0, 1], []).unwrap();
        for (k, l) in [(1, 1), (2, 3), (4, 4)] {
            assert_eq!(find_periodic_point(&none, k, l), None);
        }
    }

    #[test]
    fn decide_examples() {
        let none = SftSpec::new(Shape::plus(), [0, 1], []).unwrap();
        let out = decide(&none, Budget::default());
        assert_eq!(out.decision, Decision::Empty { window: 3 });
        assert!(verify_decision(&none, &out.decision, 11).unwrap());

        let out = decide(&domino_checker(), Budget::default());
        let Decision::Nonempty { witness } = &out.decision else { panic!("{out:?}") };
        assert_eq!((witness.k(), witness.l()), (2, 1));
        assert!(verify_decision(&domino_checker(), &out.decision, 0).unwrap());
    }

    #[test]
    fn unknown_with_tiny_budget() {
        // forces period 7 horizontally: neither certificate fits a 3-budget
        let shape = Shape::new([e(0, 0), e(1, 0)]).unwrap();
        let allowed: Vec<Vec<i64>> = (0..7).map(|s| vec![s, (s + 1) % 7]).collect();
        let spec = SftSpec::new(shape, 0..7, allowed).unwrap();
        let out = decide(&spec, Budget { max_window: 3, max_torus: 3, max_nodes: 1000 });
        assert!(matches!(out.decision, Decision::Unknown { .. }));
        assert_eq!(out.spent.window, Some(3));
        assert_eq!(out.spent.torus_diagonal, Some(6));
        let out = decide(&spec, Budget { max_window: 3, max_torus: 7, max_nodes: 1000 });
        assert!(matches!(&out.decision, Decision::Nonempty { witness } if witness.k() == 7));
    }

    #[test]
    fn tight_budget_aborts() {
        let shape = Shape::rect(2, 2).unwrap();
        let all = SftSpec::new(shape, [0, 1], all_patterns(4, &[0, 1])).unwrap();
        let (o, nodes) = window_search(&all, 5, 3).unwrap();
        assert_eq!(o, SearchOutcome::Aborted);
        assert_eq!(nodes, 4);
    }

    #[test]
    fn convexity() {
        assert!(is_discrete_convex(&Shape::rect(3, 2).unwrap()));
        assert!(!is_discrete_convex(&Shape::new([e(0, 0), e(2, 0)]).unwrap()));
        assert!(is_discrete_convex(&Shape::plus()));
        assert!(!is_discrete_convex(&Shape::new([e(0, 0), e(1, 0), e(0, 1), e(1, 1), e(3, 3)]).unwrap()));
        assert!(is_discrete_convex(&Shape::new([e(5, 5)]).unwrap()));
    }

    fn arb_spec() -> impl Strategy<Value = SftSpec> {
        let shape = prop::collection::btree_set((0i64..2, 0i64..2), 1..=3)
            .prop_map(|s| Shape::new(s.into_iter().map(Exp::from)).unwrap());
        (shape, 2usize..=3).prop_flat_map(|(shape, a)| {
            let symbols: Vec<i64> = (0..a as i64).collect();
            let every = all_patterns(shape.len(), &symbols);
            prop::sample::subsequence(every.clone(), 0..=every.len().min(6))
                .prop_map(move |allowed| SftSpec::new(shape.clone(), symbols.clone(), allowed).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn torus_search_matches_brute_force(spec in arb_spec(), k in 1usize..=3, l in 1usize..=2) {
            let found = find_periodic_point(&spec, k, l);
            let brute = brute_force_tori(&spec, k, l);
            prop_assert_eq!(found.is_some(), !brute.is_empty());
            if let Some(t) = found {
                prop_assert!(spec.accepts(&t));
            }
        }

        #[test]
        fn window_results_agree_with_randomized_check(spec in arb_spec(), seed in 0u64..1000) {
            let n = spec.shape().extent() + 1;
            let filled = window_fillable(&spec, n).unwrap();
            prop_assert_eq!(filled.is_none(), verify_empty(&spec, n, seed).unwrap());
            if filled.is_none() {
                prop_assert!(window_fillable(&spec, n + 1).unwrap().is_none());
            }
        }

        #[test]
        fn decisions_verify(spec in arb_spec()) {
            let out = decide(&spec, Budget { max_window: 5, max_torus: 4, max_nodes: 100_000 });
            match &out.decision {
                Decision::Unknown { .. } => {}
                d => prop_assert!(verify_decision(&spec, d, 5).unwrap()),
            }
            prop_assert_eq!(spec.low_complexity(), spec.allowed().len() <= spec.shape().len());
        }
    }
}
