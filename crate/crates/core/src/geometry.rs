//! Newton polygons and the directions in which a polynomial can have line
//! polynomial factors.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Exp, LaurentPoly};

/// Convex hull of a finite point set, counterclockwise, with no three
/// consecutive vertices collinear.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "snake_case")]
pub enum NewtonPolygon {
    Point(Exp),
    Segment(Exp, Exp),
    Polygon(Vec<Exp>),
}

impl NewtonPolygon {
    pub fn of(f: &LaurentPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::hull(f.support()))
    }

    /// Andrew's monotone chain; collinear points are dropped.
    pub fn hull(points: impl IntoIterator<Item = Exp>) -> Self {
        let pts: Vec<Exp> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        assert!(!pts.is_empty(), "hull of an empty set");
        if pts.len() == 1 {
            return NewtonPolygon::Point(pts[0]);
        }
        let turn = |o: Exp, a: Exp, b: Exp| (a - o).cross(b - o);
        let mut lower: Vec<Exp> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Exp> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        match lower.len() {
            2 => NewtonPolygon::Segment(lower[0], lower[1]),
            _ => NewtonPolygon::Polygon(lower),
        }
    }

    pub fn vertices(&self) -> Vec<Exp> {
        match self {
            NewtonPolygon::Point(p) => vec![*p],
            NewtonPolygon::Segment(a, b) => vec![*a, *b],
            NewtonPolygon::Polygon(v) => v.clone(),
        }
    }

    /// Edge vectors in order; a segment has its single edge twice (there and back).
    pub fn edges(&self) -> Vec<Exp> {
        match self {
            NewtonPolygon::Point(_) => Vec::new(),
            NewtonPolygon::Segment(a, b) => vec![*b - *a, *a - *b],
            NewtonPolygon::Polygon(v) => (0..v.len()).map(|i| v[(i + 1) % v.len()] - v[i]).collect(),
        }
    }

    /// Whether the integer point `p` lies in the closed hull.
    pub fn contains(&self, p: Exp) -> bool {
        match self {
            NewtonPolygon::Point(q) => p == *q,
            NewtonPolygon::Segment(a, b) => {
                let (d, w) = (*b - *a, p - *a);
                d.cross(w) == 0
                    && (p.x - a.x) * (p.x - b.x) <= 0
                    && (p.y - a.y) * (p.y - b.y) <= 0
            }
            NewtonPolygon::Polygon(v) => {
                (0..v.len()).all(|i| (v[(i + 1) % v.len()] - v[i]).cross(p - v[i]) >= 0)
            }
        }
    }

    /// All integer points of the closed hull.
    pub fn lattice_points(&self) -> Vec<Exp> {
        let vs = self.vertices();
        let (x0, x1) = (vs.iter().map(|v| v.x).min().unwrap(), vs.iter().map(|v| v.x).max().unwrap());
        let (y0, y1) = (vs.iter().map(|v| v.y).min().unwrap(), vs.iter().map(|v| v.y).max().unwrap());
        let mut out = Vec::new();
        for y in y0..=y1 {
            for x in x0..=x1 {
                let p = Exp::new(x, y);
                if self.contains(p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Every primitive direction in which `f` could have a line-polynomial
/// factor: the direction of a segment Newton polygon, or of a pair of
/// parallel edges. Sorted in canonical vector order.
pub fn line_direction_candidates(f: &LaurentPoly) -> Result<Vec<Exp>> {
    let poly = NewtonPolygon::of(f)?;
    let mut seen: Vec<Exp> = Vec::new();
    let mut found = Vec::new();
    for e in poly.edges() {
        let d = e.direction().expect("hull edges are non-zero");
        if !seen.contains(&d) {
            seen.push(d);
        } else if !found.contains(&d) {
            found.push(d);
        }
    }
    found.sort_by(Exp::canonical_cmp);
    Ok(found)
}
