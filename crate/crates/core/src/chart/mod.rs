//! PL planar charts: labeled oriented graphs in a rectangle whose vertices
//! are black (valence 1), crossings (valence 4), white (valence 6) or
//! external boundary vertices. Charts encode braid monodromies through
//! intersection words read along transverse paths.

mod isotopy;
mod nest;
mod path;
mod replace;
mod validate;

pub use isotopy::apply_keyframe_isotopy;
pub use nest::{
    add_fragment, build_oval_nest, build_ribbon_chart, default_route, standard_placements,
    MeridianRoute, NestError, NestFragment, NestSpec, RibbonChart,
};
pub use path::{intersection_word, loop_monodromy, PLPath, PathError};
pub use replace::{
    apply_disk_replacement, ReplaceError, ReplacementEdge, ReplacementEnd, ReplacementEnds,
    ReplacementPiece,
};
pub use validate::{geometry_issues, validate_chart};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{simplify_polyline, Point};
use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Black,
    Crossing,
    White,
    Boundary,
}

impl VertexKind {
    pub fn expected_valence(self) -> usize {
        match self {
            VertexKind::Black | VertexKind::Boundary => 1,
            VertexKind::Crossing => 4,
            VertexKind::White => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartVertex {
    pub id: VertexId,
    pub kind: VertexKind,
    pub pos: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeOrientation {
    /// Oriented along the polyline order.
    Forward,
    /// Oriented against the polyline order.
    Reversed,
}

impl EdgeOrientation {
    pub fn sign(self) -> i32 {
        match self {
            EdgeOrientation::Forward => 1,
            EdgeOrientation::Reversed => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum EdgeEnds {
    /// A closed loop: the polyline starts and ends at the same point and
    /// meets no vertex.
    ClosedLoop,
    /// An open edge running between two vertices.
    Open { start: VertexId, end: VertexId },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartEdge {
    pub id: EdgeId,
    pub label: usize,
    pub orient: EdgeOrientation,
    pub polyline: Vec<Point>,
    pub ends: EdgeEnds,
}

impl ChartEdge {
    pub fn is_closed(&self) -> bool {
        matches!(self.ends, EdgeEnds::ClosedLoop)
    }

    /// Both endpoints carry black vertices in the ambient chart.
    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.polyline.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Canonical representation of the oriented curve: polyline in flow
    /// direction, collinear joints dropped, closed loops rotated to start at
    /// their smallest point. Used to compare slices across refinements.
    pub fn canonical_curve(&self) -> (usize, bool, Vec<Point>) {
        let mut pts = self.polyline.clone();
        if self.orient == EdgeOrientation::Reversed {
            pts.reverse();
        }
        if self.is_closed() {
            pts.pop();
            let simplified = simplify_closed(&pts);
            (self.label, true, simplified)
        } else {
            (self.label, false, simplify_polyline(&pts))
        }
    }
}

fn simplify_closed(cycle: &[Point]) -> Vec<Point> {
    // Close the cycle temporarily, simplify, then rotate to the smallest point.
    if cycle.is_empty() {
        return Vec::new();
    }
    let mut tmp = cycle.to_vec();
    tmp.push(cycle[0].clone());
    tmp = simplify_polyline(&tmp);
    tmp.pop();
    // The joint at the seam may itself be collinear; handle it directly.
    while tmp.len() > 2 {
        let n = tmp.len();
        let prev = &tmp[n - 1];
        let cur = &tmp[0];
        let next = &tmp[1];
        if crate::geom::orient(prev, next, cur) == 0 && crate::geom::on_segment(prev, next, cur) {
            tmp.remove(0);
        } else {
            break;
        }
    }
    let min_idx = tmp
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| (&a.x, &a.y).cmp(&(&b.x, &b.y)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    tmp.rotate_left(min_idx);
    tmp
}

/// The rectangular domain `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: Rat,
    pub y0: Rat,
    pub x1: Rat,
    pub y1: Rat,
}

impl Rect {
    pub fn new(x0: Rat, y0: Rat, x1: Rat, y1: Rat) -> Self {
        assert!(x0 < x1 && y0 < y1, "degenerate rectangle");
        Rect { x0, y0, x1, y1 }
    }

    /// The unit domain `[-1, 1] x [0, 1]`.
    pub fn standard() -> Self {
        Rect::new(Rat::int(-1), Rat::int(0), Rat::int(1), Rat::int(1))
    }

    pub fn contains_strictly(&self, p: &Point) -> bool {
        p.x > self.x0 && p.x < self.x1 && p.y > self.y0 && p.y < self.y1
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        let inside_closed =
            p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1;
        inside_closed && (p.x == self.x0 || p.x == self.x1 || p.y == self.y0 || p.y == self.y1)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(EdgeId),
    #[error("edge {0:?} refers to missing vertex {1:?}")]
    MissingVertex(EdgeId, VertexId),
    #[error("edge {0:?}: {1}")]
    BadEdge(EdgeId, String),
}

/// A chart: a labeled oriented graph with rational PL geometry inside a
/// rectangle. The basepoint for monodromy is fixed at the midpoint of the
/// top boundary edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    degree: usize,
    rect: Rect,
    vertices: BTreeMap<VertexId, ChartVertex>,
    edges: BTreeMap<EdgeId, ChartEdge>,
}

impl Chart {
    pub fn new(degree: usize, rect: Rect) -> Self {
        assert!(degree >= 1);
        Chart {
            degree,
            rect,
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    /// Empty chart over the standard rectangle.
    pub fn empty(degree: usize) -> Self {
        Chart::new(degree, Rect::standard())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rect(&self) -> &Rect {
        &self.rect
    }

    /// The monodromy basepoint: midpoint of the top boundary edge.
    pub fn basepoint(&self) -> Point {
        Point::new(
            (&self.rect.x0 + &self.rect.x1) / Rat::int(2),
            self.rect.y1.clone(),
        )
    }

    pub fn vertices(&self) -> impl Iterator<Item = &ChartVertex> {
        self.vertices.values()
    }

    pub fn edges(&self) -> impl Iterator<Item = &ChartEdge> {
        self.edges.values()
    }

    pub fn vertex(&self, id: VertexId) -> Option<&ChartVertex> {
        self.vertices.get(&id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&ChartEdge> {
        self.edges.get(&id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn black_vertices(&self) -> impl Iterator<Item = &ChartVertex> {
        self.vertices
            .values()
            .filter(|v| v.kind == VertexKind::Black)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn add_vertex(&mut self, v: ChartVertex) -> Result<(), ChartError> {
        if self.vertices.contains_key(&v.id) {
            return Err(ChartError::DuplicateVertex(v.id));
        }
        self.vertices.insert(v.id, v);
        Ok(())
    }

    pub fn add_edge(&mut self, e: ChartEdge) -> Result<(), ChartError> {
        if self.edges.contains_key(&e.id) {
            return Err(ChartError::DuplicateEdge(e.id));
        }
        if e.polyline.len() < 2 {
            return Err(ChartError::BadEdge(
                e.id,
                "polyline needs at least two points".into(),
            ));
        }
        match &e.ends {
            EdgeEnds::ClosedLoop => {
                if e.polyline.first() != e.polyline.last() {
                    return Err(ChartError::BadEdge(
                        e.id,
                        "closed loop must end where it starts".into(),
                    ));
                }
                if e.polyline.len() < 4 {
                    return Err(ChartError::BadEdge(e.id, "degenerate closed loop".into()));
                }
            }
            EdgeEnds::Open { start, end } => {
                let sp = self
                    .vertices
                    .get(start)
                    .ok_or(ChartError::MissingVertex(e.id, *start))?;
                let ep = self
                    .vertices
                    .get(end)
                    .ok_or(ChartError::MissingVertex(e.id, *end))?;
                if e.polyline.first() != Some(&sp.pos) || e.polyline.last() != Some(&ep.pos) {
                    return Err(ChartError::BadEdge(
                        e.id,
                        "polyline endpoints must coincide with end vertices".into(),
                    ));
                }
            }
        }
        self.edges.insert(e.id, e);
        Ok(())
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Option<ChartEdge> {
        self.edges.remove(&id)
    }

    pub fn remove_vertex(&mut self, id: VertexId) -> Option<ChartVertex> {
        self.vertices.remove(&id)
    }

    /// Edge ends incident to a vertex: `(edge id, at_start)` pairs. An edge
    /// from a vertex to itself contributes both ends.
    pub fn incident_ends(&self, v: VertexId) -> Vec<(EdgeId, bool)> {
        let mut out = Vec::new();
        for e in self.edges.values() {
            if let EdgeEnds::Open { start, end } = &e.ends {
                if *start == v {
                    out.push((e.id, true));
                }
                if *end == v {
                    out.push((e.id, false));
                }
            }
        }
        out
    }

    /// Apply a coordinate transformation to every point of the chart.
    pub fn map_points(&self, f: &mut impl FnMut(&Point) -> Point) -> Chart {
        let vertices = self
            .vertices
            .values()
            .map(|v| {
                (
                    v.id,
                    ChartVertex {
                        id: v.id,
                        kind: v.kind,
                        pos: f(&v.pos),
                    },
                )
            })
            .collect();
        let edges = self
            .edges
            .values()
            .map(|e| {
                (
                    e.id,
                    ChartEdge {
                        id: e.id,
                        label: e.label,
                        orient: e.orient,
                        polyline: e.polyline.iter().map(|p| f(p)).collect(),
                        ends: e.ends.clone(),
                    },
                )
            })
            .collect();
        Chart {
            degree: self.degree,
            rect: self.rect.clone(),
            vertices,
            edges,
        }
    }

    /// Same chart up to refinement of polylines: identical combinatorics and
    /// identical oriented curves after dropping collinear joints.
    pub fn same_slice(&self, other: &Chart) -> bool {
        if self.degree != other.degree || self.rect != other.rect {
            return false;
        }
        if self.vertices != other.vertices {
            return false;
        }
        if self.edges.len() != other.edges.len() {
            return false;
        }
        for (id, e) in &self.edges {
            match other.edges.get(id) {
                None => return false,
                Some(f) => {
                    if e.ends != f.ends || e.canonical_curve() != f.canonical_curve() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Identical vertex/edge structure ignoring all coordinates; polyline
    /// joint counts must also agree (keyframes interpolate pointwise).
    pub fn same_combinatorics(&self, other: &Chart) -> bool {
        if self.degree != other.degree
            || self.rect != other.rect
            || self.vertices.len() != other.vertices.len()
            || self.edges.len() != other.edges.len()
        {
            return false;
        }
        for (id, v) in &self.vertices {
            match other.vertices.get(id) {
                Some(w) if w.kind == v.kind => {}
                _ => return false,
            }
        }
        for (id, e) in &self.edges {
            match other.edges.get(id) {
                Some(f)
                    if f.label == e.label
                        && f.orient == e.orient
                        && f.ends == e.ends
                        && f.polyline.len() == e.polyline.len() => {}
                _ => return false,
            }
        }
        true
    }

    /// Pointwise linear interpolation between two combinatorially identical
    /// charts.
    pub fn lerp(&self, other: &Chart, t: &Rat) -> Chart {
        assert!(self.same_combinatorics(other));
        let vertices = self
            .vertices
            .iter()
            .map(|(id, v)| {
                let w = &other.vertices[id];
                (
                    *id,
                    ChartVertex {
                        id: v.id,
                        kind: v.kind,
                        pos: v.pos.lerp(&w.pos, t),
                    },
                )
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|(id, e)| {
                let f = &other.edges[id];
                (
                    *id,
                    ChartEdge {
                        id: e.id,
                        label: e.label,
                        orient: e.orient,
                        polyline: e
                            .polyline
                            .iter()
                            .zip(f.polyline.iter())
                            .map(|(p, q)| p.lerp(q, t))
                            .collect(),
                        ends: e.ends.clone(),
                    },
                )
            })
            .collect();
        Chart {
            degree: self.degree,
            rect: self.rect.clone(),
            vertices,
            edges,
        }
    }

    /// Rename vertices (ids only, geometry untouched), rewriting edge end
    /// references. Ids absent from the map are kept.
    pub fn rename_vertices(&self, map: &std::collections::BTreeMap<VertexId, VertexId>) -> Chart {
        let rename = |id: VertexId| -> VertexId { map.get(&id).copied().unwrap_or(id) };
        let vertices = self
            .vertices
            .values()
            .map(|v| {
                let id = rename(v.id);
                (
                    id,
                    ChartVertex {
                        id,
                        kind: v.kind,
                        pos: v.pos.clone(),
                    },
                )
            })
            .collect();
        let edges = self
            .edges
            .values()
            .map(|e| {
                let ends = match &e.ends {
                    EdgeEnds::ClosedLoop => EdgeEnds::ClosedLoop,
                    EdgeEnds::Open { start, end } => EdgeEnds::Open {
                        start: rename(*start),
                        end: rename(*end),
                    },
                };
                (
                    e.id,
                    ChartEdge {
                        id: e.id,
                        label: e.label,
                        orient: e.orient,
                        polyline: e.polyline.clone(),
                        ends,
                    },
                )
            })
            .collect();
        Chart {
            degree: self.degree,
            rect: self.rect.clone(),
            vertices,
            edges,
        }
    }

    /// Minimum squared distance from `p` to any chart segment or vertex,
    /// ignoring the listed edges and vertices.
    pub fn clearance2(
        &self,
        p: &Point,
        skip_edges: &[EdgeId],
        skip_vertices: &[VertexId],
    ) -> Option<Rat> {
        let mut best: Option<Rat> = None;
        let mut consider = |d2: Rat| {
            best = Some(match best.take() {
                None => d2,
                Some(b) => b.min(d2),
            });
        };
        for e in self.edges.values() {
            if skip_edges.contains(&e.id) {
                continue;
            }
            for (a, b) in e.segments() {
                consider(crate::geom::point_seg_dist2(p, a, b));
            }
        }
        for v in self.vertices.values() {
            if skip_vertices.contains(&v.id) {
                continue;
            }
            consider(p.dist2(&v.pos));
        }
        best
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartShadow {
    degree: usize,
    rect: (Rat, Rat, Rat, Rat),
    vertices: Vec<ChartVertex>,
    edges: Vec<ChartEdge>,
}

impl Serialize for Chart {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let shadow = ChartShadow {
            degree: self.degree,
            rect: (
                self.rect.x0.clone(),
                self.rect.y0.clone(),
                self.rect.x1.clone(),
                self.rect.y1.clone(),
            ),
            vertices: self.vertices.values().cloned().collect(),
            edges: self.edges.values().cloned().collect(),
        };
        shadow.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Chart {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Chart, D::Error> {
        use serde::de::Error;
        let shadow = ChartShadow::deserialize(deserializer)?;
        if shadow.degree < 1 {
            return Err(D::Error::custom("chart degree must be at least 1"));
        }
        let (x0, y0, x1, y1) = shadow.rect;
        if x0 >= x1 || y0 >= y1 {
            return Err(D::Error::custom("degenerate chart rectangle"));
        }
        let mut chart = Chart::new(shadow.degree, Rect { x0, y0, x1, y1 });
        for v in shadow.vertices {
            chart.add_vertex(v).map_err(D::Error::custom)?;
        }
        for e in shadow.edges {
            chart.add_edge(e).map_err(D::Error::custom)?;
        }
        Ok(chart)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basepoint_is_top_midpoint() {
        let c = Chart::empty(3);
        assert_eq!(c.basepoint(), Point::ints(0, 1));
    }

    #[test]
    fn open_edge_endpoints_must_match_vertices() {
        let mut c = Chart::empty(2);
        c.add_vertex(ChartVertex {
            id: VertexId(0),
            kind: VertexKind::Black,
            pos: Point::frac(-1, 2, 1, 2),
        })
        .unwrap();
        c.add_vertex(ChartVertex {
            id: VertexId(1),
            kind: VertexKind::Black,
            pos: Point::frac(1, 2, 1, 2),
        })
        .unwrap();
        let bad = ChartEdge {
            id: EdgeId(0),
            label: 1,
            orient: EdgeOrientation::Forward,
            polyline: vec![Point::ints(0, 0), Point::frac(1, 2, 1, 2)],
            ends: EdgeEnds::Open {
                start: VertexId(0),
                end: VertexId(1),
            },
        };
        assert!(c.add_edge(bad).is_err());
    }

    #[test]
    fn same_slice_sees_through_refinement() {
        let mut a = Chart::empty(2);
        a.add_vertex(ChartVertex {
            id: VertexId(0),
            kind: VertexKind::Black,
            pos: Point::frac(-1, 2, 1, 2),
        })
        .unwrap();
        a.add_vertex(ChartVertex {
            id: VertexId(1),
            kind: VertexKind::Black,
            pos: Point::frac(1, 2, 1, 2),
        })
        .unwrap();
        let mut b = a.clone();
        a.add_edge(ChartEdge {
            id: EdgeId(0),
            label: 1,
            orient: EdgeOrientation::Forward,
            polyline: vec![Point::frac(-1, 2, 1, 2), Point::frac(1, 2, 1, 2)],
            ends: EdgeEnds::Open {
                start: VertexId(0),
                end: VertexId(1),
            },
        })
        .unwrap();
        b.add_edge(ChartEdge {
            id: EdgeId(0),
            label: 1,
            orient: EdgeOrientation::Forward,
            polyline: vec![
                Point::frac(-1, 2, 1, 2),
                Point::frac(0, 1, 1, 2),
                Point::frac(1, 2, 1, 2),
            ],
            ends: EdgeEnds::Open {
                start: VertexId(0),
                end: VertexId(1),
            },
        })
        .unwrap();
        assert!(a.same_slice(&b));
        assert!(!a.same_combinatorics(&b)); // joint counts differ
    }

    #[test]
    fn chart_json_roundtrip() {
        let mut c = Chart::empty(3);
        c.add_edge(ChartEdge {
            id: EdgeId(7),
            label: 2,
            orient: EdgeOrientation::Reversed,
            polyline: vec![
                Point::ints(0, 0).add(&Rat::new(1, 4), &Rat::new(1, 4)),
                Point::frac(1, 2, 1, 4),
                Point::frac(1, 2, 1, 2),
                Point::frac(1, 4, 1, 4),
            ],
            ends: EdgeEnds::ClosedLoop,
        })
        .unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: Chart = serde_json::from_str(&text).unwrap();
        assert_eq!(c, back);
    }
}
