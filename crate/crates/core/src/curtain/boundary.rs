//! The internal boundary of a curtain: the link traced by black vertices,
//! closed off by the free edges inserted or deleted at exceptional times.
//! When the traces are in braid position the link is returned as a closed
//! braid word as well.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::braid::{BraidLetter, BraidWord};
use crate::chart::VertexId;
use crate::geom::Point;
use crate::rat::Rat;

use super::{Curtain, EventPayload};

/// Sign convention tying the rotation sense of a strand exchange (read with
/// time increasing) to the braid generator sign: a counterclockwise half
/// twist is a positive letter.
pub(crate) const CCW_IS_POSITIVE: bool = true;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("end slices are not empty; the internal boundary is not a closed link")]
    NotClosed,
    #[error("black vertex {0:?} has no birth or death event")]
    OpenStrand(VertexId),
    #[error("discontinuous strand trace for vertex {0:?}")]
    Discontinuous(VertexId),
}

/// The trace of one black vertex through time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrandTrace {
    pub vertex: VertexId,
    pub birth: Rat,
    pub death: Rat,
    /// Sampled positions at segment keyframe times.
    pub samples: Vec<(Rat, Point)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedBraidForm {
    pub braid_degree: usize,
    pub word: BraidWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InternalBoundary {
    /// Number of link components.
    pub components: usize,
    /// Local minima of the link (free-edge insertions).
    pub minima: usize,
    /// Local maxima (free-edge deletions).
    pub maxima: usize,
    pub strands: Vec<StrandTrace>,
    /// Present when the traces are in braid position.
    pub braid: Option<ClosedBraidForm>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Extract one braid letter from a segment's keyframes, if the segment
/// moves black vertices. Returns `Ok(None)` for static segments and `Err`
/// of a reason when the movement is not a single adjacent exchange in a
/// vertical column.
fn segment_letter(
    seg: &super::CurtainSegment,
) -> Result<Option<(Rat, usize, i8, usize)>, String> {
    let first = seg.first();
    let last = seg.last();
    let start: BTreeMap<VertexId, Point> = first
        .black_vertices()
        .map(|v| (v.id, v.pos.clone()))
        .collect();
    let end: BTreeMap<VertexId, Point> = last
        .black_vertices()
        .map(|v| (v.id, v.pos.clone()))
        .collect();
    if start.keys().ne(end.keys()) {
        return Err("black vertex set changes inside a segment".into());
    }
    let moved: Vec<VertexId> = start
        .iter()
        .filter(|(id, p)| end.get(id) != Some(p))
        .map(|(id, _)| *id)
        .collect();
    if moved.is_empty() {
        return Ok(None);
    }
    if moved.len() != 2 {
        return Err(format!("{} black vertices move at once", moved.len()));
    }
    let (a, b) = (moved[0], moved[1]);
    if start[&a] != end[&b] || start[&b] != end[&a] {
        return Err("moving vertices do not exchange positions".into());
    }
    let pa = &start[&a];
    let pb = &start[&b];
    if pa.x != pb.x {
        return Err("exchanged vertices do not share a column".into());
    }
    let column_x = pa.x.clone();
    // The lower strand of the pair.
    let lower = if pa.y < pb.y { a } else { b };
    // Rank among all strands in this column, and adjacency of the pair.
    let mut column_heights: Vec<Rat> = start
        .values()
        .filter(|p| p.x == column_x)
        .map(|p| p.y.clone())
        .collect();
    column_heights.sort();
    let lo = start[&lower].y.clone();
    let hi = if pa.y < pb.y {
        start[&b].y.clone()
    } else {
        start[&a].y.clone()
    };
    let j = column_heights.iter().position(|y| *y == lo).unwrap();
    if column_heights.get(j + 1) != Some(&hi) {
        return Err("exchanged strands are not adjacent in the column".into());
    }
    // Rotation sense from an intermediate keyframe: the initially-lower
    // strand swings east for a counterclockwise exchange.
    if seg.keyframes.len() < 3 {
        return Err("exchange segment needs an intermediate keyframe".into());
    }
    let mid = &seg.keyframes[seg.keyframes.len() / 2];
    let mid_pos = mid
        .vertex(lower)
        .ok_or_else(|| "lower strand missing at intermediate keyframe".to_string())?;
    let ccw = if mid_pos.pos.x > column_x {
        true
    } else if mid_pos.pos.x < column_x {
        false
    } else {
        return Err("intermediate keyframe does not resolve the rotation sense".into());
    };
    let positive = ccw == CCW_IS_POSITIVE;
    let sign = if positive { 1 } else { -1 };
    Ok(Some((
        seg.t0.clone(),
        j + 1,
        sign,
        column_heights.len(),
    )))
}

/// Compute the internal boundary of a valid closed curtain.
pub fn internal_boundary(cu: &Curtain) -> Result<InternalBoundary, BoundaryError> {
    let first_slice = cu.segments().first().unwrap().first();
    let last_slice = cu.segments().last().unwrap().last();
    if first_slice.black_vertices().next().is_some()
        || last_slice.black_vertices().next().is_some()
    {
        return Err(BoundaryError::NotClosed);
    }

    let mut births: BTreeMap<VertexId, Rat> = BTreeMap::new();
    let mut deaths: BTreeMap<VertexId, Rat> = BTreeMap::new();
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    let mut minima = 0usize;
    let mut maxima = 0usize;
    for ev in cu.events() {
        match &ev.payload {
            EventPayload::InsertFreeEdges { items } => {
                minima += items.len();
                for it in items {
                    births.insert(it.vertex_a.id, ev.t.clone());
                    births.insert(it.vertex_b.id, ev.t.clone());
                    pairs.push((it.vertex_a.id, it.vertex_b.id));
                }
            }
            EventPayload::DeleteFreeEdges { items } => {
                maxima += items.len();
                for it in items {
                    deaths.insert(it.vertex_a.id, ev.t.clone());
                    deaths.insert(it.vertex_b.id, ev.t.clone());
                    pairs.push((it.vertex_a.id, it.vertex_b.id));
                }
            }
            _ => {}
        }
    }

    // Samples per strand.
    let mut samples: BTreeMap<VertexId, Vec<(Rat, Point)>> = BTreeMap::new();
    for seg in cu.segments() {
        let k = seg.keyframes.len();
        for (i, kf) in seg.keyframes.iter().enumerate() {
            let t = if k == 1 {
                seg.t0.clone()
            } else {
                let step = &(&seg.t1 - &seg.t0) / &Rat::int((k - 1) as i64);
                &seg.t0 + &(&step * &Rat::int(i as i64))
            };
            for v in kf.black_vertices() {
                samples.entry(v.id).or_default().push((t.clone(), v.pos.clone()));
            }
        }
    }

    let ids: Vec<VertexId> = samples.keys().copied().collect();
    let mut strands = Vec::new();
    for id in &ids {
        let birth = births
            .get(id)
            .ok_or(BoundaryError::OpenStrand(*id))?
            .clone();
        let death = deaths
            .get(id)
            .ok_or(BoundaryError::OpenStrand(*id))?
            .clone();
        let mut s = samples[id].clone();
        s.dedup();
        // Sample positions must be continuous: consecutive duplicates in
        // time must agree in position.
        for w in s.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 != w[1].1 {
                return Err(BoundaryError::Discontinuous(*id));
            }
        }
        strands.push(StrandTrace {
            vertex: *id,
            birth,
            death,
            samples: s,
        });
    }

    // Components: strands joined by caps.
    let index: BTreeMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let mut uf = UnionFind::new(ids.len());
    for (a, b) in &pairs {
        let (ia, ib) = match (index.get(a), index.get(b)) {
            (Some(x), Some(y)) => (*x, *y),
            _ => return Err(BoundaryError::OpenStrand(*a)),
        };
        uf.union(ia, ib);
    }
    let mut roots: Vec<usize> = (0..ids.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let components = if ids.is_empty() { 0 } else { roots.len() };

    // Braid word from the moving segments, read with increasing time.
    let mut letters: Vec<(Rat, BraidLetter)> = Vec::new();
    let mut braid_degree: Option<usize> = None;
    let mut in_braid_position = true;
    for seg in cu.segments() {
        match segment_letter(seg) {
            Ok(None) => {}
            Ok(Some((t, index, sign, n))) => {
                match braid_degree {
                    None => braid_degree = Some(n),
                    Some(m) if m == n => {}
                    Some(_) => {
                        in_braid_position = false;
                        break;
                    }
                }
                letters.push((t, BraidLetter::new(index, sign)));
            }
            Err(_) => {
                in_braid_position = false;
                break;
            }
        }
    }
    let braid = if in_braid_position {
        let n = braid_degree.unwrap_or_else(|| ids.len() / 2);
        if n >= 1 {
            letters.sort_by(|a, b| a.0.cmp(&b.0));
            let word =
                BraidWord::new(n.max(1), letters.into_iter().map(|(_, l)| l).collect()).ok();
            word.map(|word| ClosedBraidForm {
                braid_degree: n,
                word,
            })
        } else {
            None
        }
    } else {
        None
    };

    Ok(InternalBoundary {
        components,
        minima,
        maxima,
        strands,
        braid,
    })
}
