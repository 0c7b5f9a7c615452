//! Monodromy-preserving disk replacements: the contents of a PL disk are
//! swapped for a replacement piece with identical boundary intersection
//! data. Loop insertions and deletions are the special case with empty
//! boundary data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{seg_crossing, Point, Polygon, PolygonSide, SegCrossing};
use crate::rat::Rat;

use super::{
    validate_chart, Chart, ChartEdge, ChartVertex, EdgeEnds, EdgeId, EdgeOrientation, VertexId,
    VertexKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ReplacementEnd {
    /// Ends at an interior vertex of the replacement piece.
    Vertex { id: VertexId },
    /// Ends on the disk boundary; stitched to the outside chart there.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ReplacementEnds {
    ClosedLoop,
    Open {
        start: ReplacementEnd,
        end: ReplacementEnd,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReplacementEdge {
    pub label: usize,
    pub orient: EdgeOrientation,
    pub polyline: Vec<Point>,
    pub ends: ReplacementEnds,
}

/// A chart-with-boundary piece living inside the replacement disk. It may
/// contain crossings and white vertices but never black vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReplacementPiece {
    pub vertices: Vec<ChartVertex>,
    pub edges: Vec<ReplacementEdge>,
}

impl ReplacementPiece {
    pub fn empty() -> Self {
        ReplacementPiece::default()
    }

    /// A single closed loop.
    pub fn single_loop(label: usize, orient: EdgeOrientation, polyline: Vec<Point>) -> Self {
        ReplacementPiece {
            vertices: Vec::new(),
            edges: vec![ReplacementEdge {
                label,
                orient,
                polyline,
                ends: ReplacementEnds::ClosedLoop,
            }],
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ReplaceError {
    #[error("disk polygon is not embedded")]
    BadDisk,
    #[error("disk contains a black vertex ({0:?})")]
    BlackVertexInside(VertexId),
    #[error("replacement contains a black vertex")]
    BlackVertexInReplacement,
    #[error("chart meets the disk boundary non-transversally")]
    NonTransverseBoundary,
    #[error("boundary intersection data mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("replacement content leaves the disk")]
    ReplacementOutsideDisk,
    #[error("result fails chart validation: {0}")]
    InvalidResult(String),
}

struct BoundaryHit {
    point: Point,
    label: usize,
    /// True if the oriented strand flows into the disk at this point.
    inflow: bool,
}

/// An edge piece produced by splitting at disk-boundary crossings. Ends are
/// either original vertices or boundary points (by index into the hit list).
#[derive(Clone)]
struct Fragmentt {
    label: usize,
    orient: EdgeOrientation,
    polyline: Vec<Point>,
    start: PieceEnd,
    end: PieceEnd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum PieceEnd {
    Vertex(VertexId),
    Boundary(usize),
    Loop,
}

fn flow_direction(orient: EdgeOrientation, a: &Point, b: &Point) -> (Rat, Rat) {
    match orient {
        EdgeOrientation::Forward => (&b.x - &a.x, &b.y - &a.y),
        EdgeOrientation::Reversed => (&a.x - &b.x, &a.y - &b.y),
    }
}

/// Replace the chart content inside `disk` by `replacement`.
pub fn apply_disk_replacement(
    chart: &Chart,
    disk: &Polygon,
    replacement: &ReplacementPiece,
) -> Result<Chart, ReplaceError> {
    let mut cycle = disk.vertices.clone();
    if cycle.len() < 3 {
        return Err(ReplaceError::BadDisk);
    }
    cycle.push(cycle[0].clone());
    if !crate::geom::polyline_is_embedded(&cycle, true) {
        return Err(ReplaceError::BadDisk);
    }

    // No black vertex inside or on the disk.
    for v in chart.vertices() {
        if v.kind == VertexKind::Black && disk.locate(&v.pos) != PolygonSide::Outside {
            return Err(ReplaceError::BlackVertexInside(v.id));
        }
    }
    for v in &replacement.vertices {
        if v.kind == VertexKind::Black {
            return Err(ReplaceError::BlackVertexInReplacement);
        }
        if disk.locate(&v.pos) != PolygonSide::Inside {
            return Err(ReplaceError::ReplacementOutsideDisk);
        }
    }

    // Vertices of the chart must stay clear of the boundary itself.
    for v in chart.vertices() {
        if disk.locate(&v.pos) == PolygonSide::Boundary {
            return Err(ReplaceError::NonTransverseBoundary);
        }
    }

    // Collect transverse boundary crossings of chart edges, per edge,
    // ordered along the polyline.
    let mut hits: Vec<BoundaryHit> = Vec::new();
    let mut edge_hits: BTreeMap<EdgeId, Vec<(usize, Rat, usize)>> = BTreeMap::new();
    for e in chart.edges() {
        let mut list = Vec::new();
        for (k, (a, b)) in e.segments().enumerate() {
            for (da, db) in disk.edges() {
                match seg_crossing(a, b, da, db) {
                    SegCrossing::Disjoint => {}
                    SegCrossing::Degenerate => return Err(ReplaceError::NonTransverseBoundary),
                    SegCrossing::Proper { point, t_first } => {
                        let dir = flow_direction(e.orient, a, b);
                        // Decide flow side by a probe just past the crossing
                        // in flow direction.
                        let probe = Point::new(
                            &point.x + &(&dir.0 / &Rat::int(1_000_000)),
                            &point.y + &(&dir.1 / &Rat::int(1_000_000)),
                        );
                        let inflow = match disk.locate(&probe) {
                            PolygonSide::Inside => true,
                            PolygonSide::Outside => false,
                            PolygonSide::Boundary => {
                                return Err(ReplaceError::NonTransverseBoundary)
                            }
                        };
                        let idx = hits.len();
                        hits.push(BoundaryHit {
                            point,
                            label: e.label,
                            inflow,
                        });
                        list.push((k, t_first, idx));
                    }
                }
            }
        }
        list.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
        edge_hits.insert(e.id, list);
    }

    // Split chart edges into outside fragments; drop inside parts.
    let mut outside: Vec<Fragmentt> = Vec::new();
    let mut kept_edges: Vec<ChartEdge> = Vec::new();
    for e in chart.edges() {
        let list = &edge_hits[&e.id];
        if list.is_empty() {
            // Entirely inside or outside; decide by any polyline point.
            match disk.locate(&e.polyline[0]) {
                PolygonSide::Inside => {} // dropped with its contents
                PolygonSide::Outside => kept_edges.push(e.clone()),
                PolygonSide::Boundary => return Err(ReplaceError::NonTransverseBoundary),
            }
            continue;
        }
        // Cut the polyline at each hit.
        let (start_end, end_end) = match &e.ends {
            EdgeEnds::ClosedLoop => (PieceEnd::Loop, PieceEnd::Loop),
            EdgeEnds::Open { start, end } => (PieceEnd::Vertex(*start), PieceEnd::Vertex(*end)),
        };
        let mut pieces: Vec<(Vec<Point>, PieceEnd, PieceEnd)> = Vec::new();
        let mut current: Vec<Point> = vec![e.polyline[0].clone()];
        let mut current_start = start_end;
        let mut hit_iter = list.iter().peekable();
        for (k, (a, b)) in e.segments().enumerate() {
            while let Some((hk, t, idx)) = hit_iter.peek() {
                if *hk == k {
                    let p = a.lerp(b, t);
                    current.push(p.clone());
                    pieces.push((
                        std::mem::take(&mut current),
                        current_start,
                        PieceEnd::Boundary(*idx),
                    ));
                    current = vec![p];
                    current_start = PieceEnd::Boundary(*idx);
                    hit_iter.next();
                } else {
                    break;
                }
            }
            current.push(b.clone());
        }
        pieces.push((current, current_start, end_end));
        // A cut closed loop: merge the last piece into the first (they share
        // the seam point).
        if matches!(e.ends, EdgeEnds::ClosedLoop) && pieces.len() >= 2 {
            let (last_poly, last_start, _) = pieces.pop().unwrap();
            let first = &mut pieces[0];
            let mut merged = last_poly;
            merged.pop();
            merged.extend(first.0.iter().cloned());
            first.0 = merged;
            first.1 = last_start;
        }
        for (poly, s, t) in pieces {
            // Keep only outside pieces; decide by the midpoint of the piece.
            let probe = midpoint_probe(&poly);
            match disk.locate(&probe) {
                PolygonSide::Outside => outside.push(Fragmentt {
                    label: e.label,
                    orient: e.orient,
                    polyline: poly,
                    start: s,
                    end: t,
                }),
                PolygonSide::Inside => {}
                PolygonSide::Boundary => return Err(ReplaceError::NonTransverseBoundary),
            }
        }
    }

    // Replacement edges: boundary endpoints must land on the disk boundary
    // and match the hit data.
    let mut inside: Vec<Fragmentt> = Vec::new();
    let mut repl_loops: Vec<ChartEdge> = Vec::new();
    let mut next_edge_id = chart.edges().map(|e| e.id.0).max().unwrap_or(0) + 1;
    let mut used_hits = vec![0usize; hits.len()];
    for re in &replacement.edges {
        match &re.ends {
            ReplacementEnds::ClosedLoop => {
                for p in &re.polyline {
                    if disk.locate(p) != PolygonSide::Inside {
                        return Err(ReplaceError::ReplacementOutsideDisk);
                    }
                }
                repl_loops.push(ChartEdge {
                    id: EdgeId(next_edge_id),
                    label: re.label,
                    orient: re.orient,
                    polyline: re.polyline.clone(),
                    ends: EdgeEnds::ClosedLoop,
                });
                next_edge_id += 1;
            }
            ReplacementEnds::Open { start, end } => {
                let mut resolve = |end: &ReplacementEnd,
                               point: &Point,
                               leaving: bool|
                 -> Result<PieceEnd, ReplaceError> {
                    match end {
                        ReplacementEnd::Vertex { id } => {
                            if disk.locate(point) != PolygonSide::Inside {
                                return Err(ReplaceError::ReplacementOutsideDisk);
                            }
                            Ok(PieceEnd::Vertex(*id))
                        }
                        ReplacementEnd::Boundary => {
                            let idx = hits
                                .iter()
                                .position(|h| &h.point == point)
                                .ok_or_else(|| {
                                    ReplaceError::BoundaryMismatch(format!(
                                        "no chart crossing at {point:?}"
                                    ))
                                })?;
                            let h = &hits[idx];
                            if h.label != re.label {
                                return Err(ReplaceError::BoundaryMismatch(format!(
                                    "label {} vs {} at {point:?}",
                                    re.label, h.label
                                )));
                            }
                            // Flow continuity: chart inflow must continue as
                            // replacement flow away from the boundary, and
                            // replacement flow toward the boundary must exit.
                            let repl_inflow_here = !leaving;
                            if h.inflow == repl_inflow_here {
                                return Err(ReplaceError::BoundaryMismatch(format!(
                                    "orientation mismatch at {point:?}"
                                )));
                            }
                            used_hits[idx] += 1;
                            Ok(PieceEnd::Boundary(idx))
                        }
                    }
                };
                let first = re.polyline.first().ok_or_else(|| {
                    ReplaceError::BoundaryMismatch("empty replacement polyline".into())
                })?;
                let last = re.polyline.last().unwrap();
                // `leaving` at the start end means the flow points away from
                // the start (i.e. the edge is oriented forward).
                let start_leaving = re.orient == EdgeOrientation::Forward;
                let s = resolve(start, first, start_leaving)?;
                let t = resolve(end, last, !start_leaving)?;
                for p in &re.polyline[1..re.polyline.len() - 1] {
                    if disk.locate(p) != PolygonSide::Inside {
                        return Err(ReplaceError::ReplacementOutsideDisk);
                    }
                }
                inside.push(Fragmentt {
                    label: re.label,
                    orient: re.orient,
                    polyline: re.polyline.clone(),
                    start: s,
                    end: t,
                });
            }
        }
    }
    for (idx, count) in used_hits.iter().enumerate() {
        if *count != 1 {
            return Err(ReplaceError::BoundaryMismatch(format!(
                "boundary point {:?} used {} times by the replacement",
                hits[idx].point, count
            )));
        }
    }

    // Stitch outside and inside fragments at boundary points.
    let stitched = stitch(outside, inside)?;

    // Assemble the result.
    let mut out = Chart::new(chart.degree(), chart.rect().clone());
    // Vertices: outside vertices survive; inside non-black vertices are
    // dropped with their edges; replacement vertices join.
    for v in chart.vertices() {
        if disk.locate(&v.pos) == PolygonSide::Outside {
            out.add_vertex(v.clone())
                .map_err(|e| ReplaceError::InvalidResult(e.to_string()))?;
        }
    }
    for v in &replacement.vertices {
        out.add_vertex(v.clone())
            .map_err(|e| ReplaceError::InvalidResult(e.to_string()))?;
    }
    for e in kept_edges {
        out.add_edge(e)
            .map_err(|e| ReplaceError::InvalidResult(e.to_string()))?;
    }
    for e in repl_loops {
        out.add_edge(e)
            .map_err(|e| ReplaceError::InvalidResult(e.to_string()))?;
    }
    let mut chains = stitched;
    chains.sort_by(|a, b| {
        let ka = a.polyline.iter().map(|p| (p.x.clone(), p.y.clone())).min();
        let kb = b.polyline.iter().map(|p| (p.x.clone(), p.y.clone())).min();
        ka.cmp(&kb)
    });
    for ch in chains {
        let ends = match (ch.start, ch.end) {
            (PieceEnd::Vertex(s), PieceEnd::Vertex(t)) => EdgeEnds::Open { start: s, end: t },
            (PieceEnd::Loop, PieceEnd::Loop) => EdgeEnds::ClosedLoop,
            other => {
                return Err(ReplaceError::BoundaryMismatch(format!(
                    "unstitched chain end {other:?}"
                )))
            }
        };
        out.add_edge(ChartEdge {
            id: EdgeId(next_edge_id),
            label: ch.label,
            orient: ch.orient,
            polyline: ch.polyline,
            ends,
        })
        .map_err(|e| ReplaceError::InvalidResult(e.to_string()))?;
        next_edge_id += 1;
    }

    let report = validate_chart(&out);
    if !report.is_valid() {
        return Err(ReplaceError::InvalidResult(report.to_string()));
    }
    Ok(out)
}

fn midpoint_probe(poly: &[Point]) -> Point {
    if poly.len() >= 2 {
        poly[0].midpoint(&poly[1])
    } else {
        poly[0].clone()
    }
}

/// Join fragments at shared boundary points into maximal chains. Fragment
/// polylines are normalized to flow direction before joining.
fn stitch(outside: Vec<Fragmentt>, inside: Vec<Fragmentt>) -> Result<Vec<Fragmentt>, ReplaceError> {
    let mut all: Vec<Fragmentt> = Vec::new();
    for mut f in outside.into_iter().chain(inside.into_iter()) {
        if f.orient == EdgeOrientation::Reversed {
            f.polyline.reverse();
            std::mem::swap(&mut f.start, &mut f.end);
            f.orient = EdgeOrientation::Forward;
        }
        all.push(f);
    }
    // Map from boundary index to (fragment flowing out of it).
    let mut by_start: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, f) in all.iter().enumerate() {
        if let PieceEnd::Boundary(b) = f.start {
            if by_start.insert(b, i).is_some() {
                return Err(ReplaceError::BoundaryMismatch(
                    "two fragments flow out of one boundary point".into(),
                ));
            }
        }
    }
    let mut used = vec![false; all.len()];
    let mut chains = Vec::new();
    // Chains starting at a vertex.
    for i in 0..all.len() {
        if used[i] || !matches!(all[i].start, PieceEnd::Vertex(_)) {
            continue;
        }
        let mut chain = all[i].clone();
        used[i] = true;
        while let PieceEnd::Boundary(b) = chain.end {
            let j = *by_start.get(&b).ok_or_else(|| {
                ReplaceError::BoundaryMismatch("dangling boundary point".into())
            })?;
            if used[j] {
                return Err(ReplaceError::BoundaryMismatch(
                    "boundary stitching is not a matching".into(),
                ));
            }
            used[j] = true;
            let next = &all[j];
            if chain.label != next.label {
                return Err(ReplaceError::BoundaryMismatch("label change along strand".into()));
            }
            chain.polyline.extend(next.polyline.iter().skip(1).cloned());
            chain.end = next.end;
        }
        chains.push(chain);
    }
    // Remaining cycles through boundary points.
    for i in 0..all.len() {
        if used[i] {
            continue;
        }
        match all[i].start {
            PieceEnd::Loop => {
                chains.push(all[i].clone());
                used[i] = true;
            }
            PieceEnd::Boundary(_) => {
                let mut chain = all[i].clone();
                used[i] = true;
                loop {
                    let b = match chain.end {
                        PieceEnd::Boundary(b) => b,
                        _ => {
                            return Err(ReplaceError::BoundaryMismatch(
                                "cycle chain ended at a vertex".into(),
                            ))
                        }
                    };
                    let j = *by_start.get(&b).ok_or_else(|| {
                        ReplaceError::BoundaryMismatch("dangling boundary point".into())
                    })?;
                    if j == i {
                        // Closed up.
                        chain.start = PieceEnd::Loop;
                        chain.end = PieceEnd::Loop;
                        break;
                    }
                    if used[j] {
                        return Err(ReplaceError::BoundaryMismatch(
                            "boundary stitching is not a matching".into(),
                        ));
                    }
                    used[j] = true;
                    let next = &all[j];
                    chain.polyline.extend(next.polyline.iter().skip(1).cloned());
                    chain.end = next.end;
                }
                chains.push(chain);
            }
            PieceEnd::Vertex(_) => unreachable!(),
        }
    }
    Ok(chains)
}
