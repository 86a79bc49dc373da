//! Finite views of grid configurations: rectangular patches and fully
//! two-periodic tori, with pattern extraction, complexity counts and
//! polynomial application.
//!
//! The product of a polynomial `f` with a configuration `c` has value
//! `(fc)_u = Σ_v f_v c_{u-v}` at cell `u`, so a polynomial supported on `-D`
//! pairs with the `D`-pattern read at `u`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::coeff::CoefficientDomain;
use crate::error::{Error, Result};
use crate::poly::{Exp, LaurentPoly};

/// A non-empty finite set of cells, kept sorted by `(y, x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    cells: Vec<Exp>,
}

impl Shape {
    pub fn new(cells: impl IntoIterator<Item = Exp>) -> Result<Self> {
        let mut cells: Vec<Exp> = cells.into_iter().collect();
        cells.sort_by_key(|e| (e.y, e.x));
        cells.dedup();
        if cells.is_empty() {
            return Err(Error::EmptyShape);
        }
        Ok(Shape { cells })
    }

    /// `{0..w-1} × {0..h-1}`.
    pub fn rect(w: usize, h: usize) -> Result<Self> {
        Shape::new((0..h as i64).flat_map(|y| (0..w as i64).map(move |x| Exp::new(x, y))))
    }

    /// `{(x, y) : |x| + |y| ≤ 1}`.
    pub fn plus() -> Self {
        Shape::new([(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)].map(Exp::from)).unwrap()
    }

    pub fn cells(&self) -> &[Exp] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, cell: Exp) -> Option<usize> {
        self.cells.iter().position(|c| *c == cell)
    }

    pub fn negate(&self) -> Shape {
        Shape::new(self.cells.iter().map(|c| -*c)).unwrap()
    }

    pub fn translate(&self, t: Exp) -> Shape {
        Shape::new(self.cells.iter().map(|c| *c + t)).unwrap()
    }

    pub fn min_corner(&self) -> Exp {
        let x = self.cells.iter().map(|c| c.x).min().unwrap();
        let y = self.cells.iter().map(|c| c.y).min().unwrap();
        Exp::new(x, y)
    }

    pub fn max_corner(&self) -> Exp {
        let x = self.cells.iter().map(|c| c.x).max().unwrap();
        let y = self.cells.iter().map(|c| c.y).max().unwrap();
        Exp::new(x, y)
    }

    /// Side of the smallest square window containing a translate of the shape.
    pub fn extent(&self) -> usize {
        let d = self.max_corner() - self.min_corner();
        (d.x.max(d.y) + 1) as usize
    }

    /// Parses `rect:WxH`, `plus`, or a JSON list of `[x, y]` pairs.
    pub fn parse_spec(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "plus" {
            return Ok(Shape::plus());
        }
        if let Some(dims) = s.strip_prefix("rect:") {
            let (w, h) = dims
                .split_once(['x', 'X'])
                .ok_or_else(|| Error::Parse(format!("bad rectangle {s:?}")))?;
            let w: usize = w.parse().map_err(|_| Error::Parse(format!("bad width in {s:?}")))?;
            let h: usize = h.parse().map_err(|_| Error::Parse(format!("bad height in {s:?}")))?;
            return Shape::rect(w, h);
        }
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("shape: {e}")))
    }
}

impl Serialize for Shape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.cells.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Shape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let cells = Vec::<Exp>::deserialize(d)?;
        Shape::new(cells).map_err(serde::de::Error::custom)
    }
}

/// The distinct `D`-patterns seen in some data; each pattern lists its
/// symbols in the shape's cell order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSet {
    pub shape: Shape,
    pub patterns: BTreeSet<Vec<i64>>,
}

impl PatternSet {
    pub fn new(shape: Shape, patterns: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let patterns: BTreeSet<Vec<i64>> = patterns.into_iter().collect();
        for p in &patterns {
            if p.len() != shape.len() {
                return Err(Error::PatternShapeMismatch {
                    expected: shape.len(),
                    got: p.len(),
                });
            }
        }
        Ok(PatternSet { shape, patterns })
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complexity {
    pub count: usize,
    pub shape_size: usize,
    pub low: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub n: usize,
    pub m: usize,
    pub count: usize,
    pub low: bool,
}

/// Outcome of checking `f·c = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Annihilation {
    /// Exact: the whole (infinite) torus configuration is annihilated.
    Yes,
    /// `f·c` vanishes on the whole valid region of a patch.
    YesOnRegion { origin: Exp, width: usize, height: usize },
    No { witness: Exp, value: i64 },
}

impl Annihilation {
    pub fn holds(&self) -> bool {
        !matches!(self, Annihilation::No { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodInfo {
    pub direction: Exp,
    pub multiple: i64,
    pub period: Exp,
}

fn alphabet_of(values: &[i64]) -> BTreeSet<i64> {
    values.iter().copied().collect()
}

fn check_alphabet(values: &[i64], alphabet: &BTreeSet<i64>) -> Result<()> {
    match values.iter().find(|v| !alphabet.contains(v)) {
        Some(v) => Err(Error::InvalidAlphabet(*v)),
        None => Ok(()),
    }
}

fn rows_to_values(rows: &[Vec<i64>]) -> Result<(usize, usize, Vec<i64>)> {
    let height = rows.len();
    let width = rows.first().map_or(0, |r| r.len());
    if height == 0 || width == 0 || rows.iter().any(|r| r.len() != width) {
        return Err(Error::BadGrid);
    }
    Ok((width, height, rows.concat()))
}

/// A finite rectangular sample; cell `(origin.x + i, origin.y + j)` holds
/// `values[j * width + i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Patch {
    origin: Exp,
    width: usize,
    height: usize,
    values: Vec<i64>,
    alphabet: BTreeSet<i64>,
}

impl Patch {
    pub fn from_rows(origin: Exp, rows: &[Vec<i64>], alphabet: Option<BTreeSet<i64>>) -> Result<Self> {
        let (width, height, values) = rows_to_values(rows)?;
        let alphabet = alphabet.unwrap_or_else(|| alphabet_of(&values));
        check_alphabet(&values, &alphabet)?;
        Ok(Patch { origin, width, height, values, alphabet })
    }

    pub fn from_fn(origin: Exp, width: usize, height: usize, f: impl Fn(Exp) -> i64) -> Result<Self> {
        let rows: Vec<Vec<i64>> = (0..height as i64)
            .map(|j| (0..width as i64).map(|i| f(origin + Exp::new(i, j))).collect())
            .collect();
        Patch::from_rows(origin, &rows, None)
    }

    pub fn origin(&self) -> Exp {
        self.origin
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn alphabet(&self) -> &BTreeSet<i64> {
        &self.alphabet
    }

    pub fn contains(&self, cell: Exp) -> bool {
        let d = cell - self.origin;
        d.x >= 0 && d.y >= 0 && (d.x as usize) < self.width && (d.y as usize) < self.height
    }

    pub fn get(&self, cell: Exp) -> Option<i64> {
        self.contains(cell).then(|| {
            let d = cell - self.origin;
            self.values[d.y as usize * self.width + d.x as usize]
        })
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.values.chunks(self.width).map(|r| r.to_vec()).collect()
    }

    pub fn with_origin(&self, origin: Exp) -> Patch {
        Patch { origin, ..self.clone() }
    }

    /// Translates `t` with `t + D` inside the patch, in row-major order.
    fn translates(&self, shape: &Shape) -> Vec<Exp> {
        let (lo, hi) = (shape.min_corner(), shape.max_corner());
        let x0 = self.origin.x - lo.x;
        let x1 = self.origin.x + self.width as i64 - 1 - hi.x;
        let y0 = self.origin.y - lo.y;
        let y1 = self.origin.y + self.height as i64 - 1 - hi.y;
        (y0..=y1).flat_map(|y| (x0..=x1).map(move |x| Exp::new(x, y))).collect()
    }

    /// Region `{u : u - v in the patch for every v in supp(f)}`.
    pub fn valid_region(&self, f: &LaurentPoly) -> Result<(Exp, usize, usize)> {
        let (Some(lo), Some(hi)) = (f.min_exponents(), f.max_exponents()) else {
            return Err(Error::ZeroPolynomial);
        };
        let w = self.width as i64 - (hi.x - lo.x);
        let h = self.height as i64 - (hi.y - lo.y);
        if w <= 0 || h <= 0 {
            return Err(Error::EmptyValidRegion);
        }
        Ok((self.origin + hi, w as usize, h as usize))
    }

    /// `f·c` on the valid region, with exact integer values (residues in
    /// `0..p` when `f` is over F_p).
    pub fn apply(&self, f: &LaurentPoly) -> Result<Patch> {
        let kernel = GridKernel::new(f, false)?;
        let (origin, w, h) = self.valid_region(f)?;
        let mut rows = Vec::with_capacity(h);
        for j in 0..h as i64 {
            let mut row = Vec::with_capacity(w);
            for i in 0..w as i64 {
                let u = origin + Exp::new(i, j);
                row.push(kernel.eval(|c| self.get(c).expect("inside valid region"), u)?);
            }
            rows.push(row);
        }
        Patch::from_rows(origin, &rows, None)
    }

    pub fn is_annihilated(&self, f: &LaurentPoly) -> Result<Annihilation> {
        let kernel = GridKernel::new(f, true)?;
        let (origin, width, height) = self.valid_region(f)?;
        for j in 0..height as i64 {
            for i in 0..width as i64 {
                let u = origin + Exp::new(i, j);
                let v = kernel.eval(|c| self.get(c).expect("inside valid region"), u)?;
                if v != 0 {
                    return Ok(Annihilation::No { witness: u, value: v });
                }
            }
        }
        Ok(Annihilation::YesOnRegion { origin, width, height })
    }
}

/// The configuration `c_(i,j) = values[(j mod l)·k + (i mod k)]`, periodic
/// under `(k, 0)` and `(0, l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusConfig {
    k: usize,
    l: usize,
    values: Vec<i64>,
    alphabet: BTreeSet<i64>,
}

impl TorusConfig {
    /// `rows[j][i]` is the symbol at `(i, j)`; `k` is the row length.
    pub fn from_rows(rows: &[Vec<i64>], alphabet: Option<BTreeSet<i64>>) -> Result<Self> {
        let (k, l, values) = rows_to_values(rows)?;
        let alphabet = alphabet.unwrap_or_else(|| alphabet_of(&values));
        check_alphabet(&values, &alphabet)?;
        Ok(TorusConfig { k, l, values, alphabet })
    }

    pub fn from_fn(k: usize, l: usize, f: impl Fn(i64, i64) -> i64) -> Result<Self> {
        let rows: Vec<Vec<i64>> = (0..l as i64)
            .map(|j| (0..k as i64).map(|i| f(i, j)).collect())
            .collect();
        TorusConfig::from_rows(&rows, None)
    }

    pub fn constant(k: usize, l: usize, v: i64) -> Self {
        TorusConfig::from_fn(k, l, |_, _| v).expect("non-empty")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn alphabet(&self) -> &BTreeSet<i64> {
        &self.alphabet
    }

    pub fn get(&self, cell: Exp) -> i64 {
        let i = cell.x.rem_euclid(self.k as i64) as usize;
        let j = cell.y.rem_euclid(self.l as i64) as usize;
        self.values[j * self.k + i]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.values.chunks(self.k).map(|r| r.to_vec()).collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = Exp> + '_ {
        (0..self.l as i64).flat_map(move |j| (0..self.k as i64).map(move |i| Exp::new(i, j)))
    }

    pub fn is_period(&self, t: Exp) -> bool {
        self.cells().all(|u| self.get(u + t) == self.get(u))
    }

    /// `f·c` as a torus with the same periods.
    pub fn apply(&self, f: &LaurentPoly) -> Result<TorusConfig> {
        let kernel = GridKernel::new(f, false)?;
        let mut values = Vec::with_capacity(self.values.len());
        for u in self.cells() {
            values.push(kernel.eval(|c| self.get(c), u)?);
        }
        Ok(TorusConfig {
            k: self.k,
            l: self.l,
            alphabet: alphabet_of(&values),
            values,
        })
    }

    pub fn is_annihilated(&self, f: &LaurentPoly) -> Result<Annihilation> {
        let kernel = GridKernel::new(f, true)?;
        for u in self.cells() {
            let v = kernel.eval(|c| self.get(c), u)?;
            if v != 0 {
                return Ok(Annihilation::No { witness: u, value: v });
            }
        }
        Ok(Annihilation::Yes)
    }

    /// Index in ℤ² of the lattice of all periods, i.e. the area of its
    /// fundamental domain.
    pub fn period_lattice_index(&self) -> usize {
        let periods = self.cells().filter(|t| self.is_period(*t)).count();
        self.k * self.l / periods
    }

    /// Smallest `n ≥ 1` with `n·u` a period, for a primitive `u`.
    pub fn minimal_multiple(&self, u: Exp) -> i64 {
        let (k, l) = (self.k as i64, self.l as i64);
        let bound = (k / k.gcd(&u.x)).lcm(&(l / l.gcd(&u.y)));
        (1..=bound)
            .filter(|n| bound % n == 0)
            .find(|&n| self.is_period(u.scale(n)))
            .expect("bound·u is always a period")
    }

    /// Every primitive direction with `|u|∞ ≤ max(k, l)`, in canonical
    /// order, with the minimal multiple that is a period.
    pub fn detect_periods(&self) -> Vec<PeriodInfo> {
        let r = self.k.max(self.l) as i64;
        let mut dirs: Vec<Exp> = (-r..=r)
            .flat_map(|y| (0..=r).map(move |x| Exp::new(x, y)))
            .filter(|e| e.direction() == Some(*e))
            .collect();
        dirs.sort_by(Exp::canonical_cmp);
        dirs.into_iter()
            .map(|u| {
                let n = self.minimal_multiple(u);
                PeriodInfo { direction: u, multiple: n, period: u.scale(n) }
            })
            .collect()
    }
}

/// Integer view of a polynomial for evaluation on grids.
struct GridKernel {
    terms: Vec<(Exp, i128)>,
    modulus: Option<i128>,
}

impl GridKernel {
    /// With `rescale`, rational coefficients are cleared by their common
    /// denominator (harmless for zero tests); otherwise they must be integral.
    fn new(f: &LaurentPoly, rescale: bool) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let modulus = f.domain().characteristic().map(|p| p as i128);
        let integral = f.terms().all(|(_, c)| c.is_integer());
        if !integral && !rescale {
            return Err(Error::NonIntegralCoefficients);
        }
        let mut terms = Vec::with_capacity(f.len());
        for (e, c) in f.integral_terms() {
            terms.push((e, c.to_i128().ok_or(Error::Overflow)?));
        }
        Ok(GridKernel { terms, modulus })
    }

    fn eval(&self, value: impl Fn(Exp) -> i64, u: Exp) -> Result<i64> {
        let mut acc: i128 = 0;
        for (v, c) in &self.terms {
            let x = value(u - *v) as i128;
            acc = c.checked_mul(x).and_then(|t| acc.checked_add(t)).ok_or(Error::Overflow)?;
            if let Some(p) = self.modulus {
                acc = acc.rem_euclid(p);
            }
        }
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }
}

/// A patch or a torus: the two kinds of data every analysis accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Patch(Patch),
    Torus(TorusConfig),
}

impl Source {
    fn translates(&self, shape: &Shape) -> Vec<Exp> {
        match self {
            Source::Patch(p) => p.translates(shape),
            Source::Torus(t) => t.cells().collect(),
        }
    }

    fn value(&self, cell: Exp) -> i64 {
        match self {
            Source::Patch(p) => p.get(cell).expect("translate inside the patch"),
            Source::Torus(t) => t.get(cell),
        }
    }

    pub fn alphabet(&self) -> &BTreeSet<i64> {
        match self {
            Source::Patch(p) => p.alphabet(),
            Source::Torus(t) => t.alphabet(),
        }
    }

    /// Patterns at every translate fully inside the data (all `k·l`
    /// positions with wraparound for a torus).
    pub fn extract_patterns(&self, shape: &Shape) -> Result<PatternSet> {
        let ts = self.translates(shape);
        if ts.is_empty() {
            return Err(Error::ShapeTooLarge);
        }
        let patterns = ts
            .into_iter()
            .map(|t| shape.cells().iter().map(|d| self.value(t + *d)).collect())
            .collect();
        Ok(PatternSet { shape: shape.clone(), patterns })
    }

    pub fn complexity(&self, shape: &Shape) -> Result<Complexity> {
        let count = self.extract_patterns(shape)?.len();
        Ok(Complexity { count, shape_size: shape.len(), low: count <= shape.len() })
    }

    /// Complexity for every rectangle `n × m`, `n ≤ nmax`, `m ≤ mmax`.
    pub fn rectangle_profile(&self, nmax: usize, mmax: usize) -> Result<Vec<ProfileEntry>> {
        let mut out = Vec::with_capacity(nmax * mmax);
        for m in 1..=mmax {
            for n in 1..=nmax {
                let c = self.complexity(&Shape::rect(n, m)?)?;
                out.push(ProfileEntry { n, m, count: c.count, low: c.low });
            }
        }
        Ok(out)
    }

    pub fn apply(&self, f: &LaurentPoly) -> Result<Source> {
        Ok(match self {
            Source::Patch(p) => Source::Patch(p.apply(f)?),
            Source::Torus(t) => Source::Torus(t.apply(f)?),
        })
    }

    pub fn is_annihilated(&self, f: &LaurentPoly) -> Result<Annihilation> {
        match self {
            Source::Patch(p) => p.is_annihilated(f),
            Source::Torus(t) => t.is_annihilated(f),
        }
    }

    /// The values of `f·c` over the region where they are known exactly.
    pub fn applied_values(&self, f: &LaurentPoly) -> Result<Vec<(Exp, i64)>> {
        Ok(match self.apply(f)? {
            Source::Patch(p) => {
                let o = p.origin();
                (0..p.height() as i64)
                    .flat_map(|j| (0..p.width() as i64).map(move |i| o + Exp::new(i, j)))
                    .map(|u| (u, p.get(u).unwrap()))
                    .collect()
            }
            Source::Torus(t) => t.cells().map(|u| (u, t.get(u))).collect(),
        })
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, Source::Torus(_))
    }
}

impl From<Patch> for Source {
    fn from(p: Patch) -> Self {
        Source::Patch(p)
    }
}

impl From<TorusConfig> for Source {
    fn from(t: TorusConfig) -> Self {
        Source::Torus(t)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum SourceJson {
    Patch {
        #[serde(default)]
        origin: Exp,
        rows: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<BTreeSet<i64>>,
    },
    Torus {
        rows: Vec<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<BTreeSet<i64>>,
    },
}

impl Serialize for Source {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Source::Patch(p) => SourceJson::Patch {
                origin: p.origin,
                rows: p.rows(),
                alphabet: Some(p.alphabet.clone()),
            },
            Source::Torus(t) => SourceJson::Torus {
                rows: t.rows(),
                alphabet: Some(t.alphabet.clone()),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Source {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match SourceJson::deserialize(d)? {
            SourceJson::Patch { origin, rows, alphabet } => Patch::from_rows(origin, &rows, alphabet)
                .map(Source::Patch)
                .map_err(serde::de::Error::custom),
            SourceJson::Torus { rows, alphabet } => TorusConfig::from_rows(&rows, alphabet)
                .map(Source::Torus)
                .map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for TorusConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Source::Torus(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Source::deserialize(d)? {
            Source::Torus(t) => Ok(t),
            Source::Patch(_) => Err(serde::de::Error::custom("expected a torus")),
        }
    }
}

/// Whitespace-separated integer rows, one grid row per line; blank lines
/// and `#` comments are ignored. Line `j` holds the cells with `y = j`.
pub fn parse_grid(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad grid symbol {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    rows_to_values(&rows)?;
    Ok(rows)
}

pub fn format_grid(rows: &[Vec<i64>]) -> String {
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Reads symbols from an F_p torus as residues.
pub fn reduce_mod(t: &TorusConfig, domain: CoefficientDomain) -> TorusConfig {
    match domain.characteristic() {
        Some(p) => TorusConfig::from_fn(t.k(), t.l(), |i, j| t.get(Exp::new(i, j)).rem_euclid(p as i64)).unwrap(),
        None => t.clone(),
    }
}
