//! PL paths transverse to a chart and their intersection words. A path
//! meeting the chart non-generically is perturbed by a deterministic
//! rational offset; the chart itself is never moved.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{BraidLetter, BraidWord};
use crate::geom::{cross, seg_crossing, ApproxBox, Point, SegCrossing};
use crate::rat::Rat;

use super::{Chart, EdgeOrientation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PLPath {
    pub points: Vec<Point>,
    pub closed: bool,
}

impl PLPath {
    pub fn open(points: Vec<Point>) -> Self {
        PLPath {
            points,
            closed: false,
        }
    }

    /// A closed path; the closing point must be repeated explicitly.
    pub fn closed(points: Vec<Point>) -> Self {
        assert!(
            points.first() == points.last(),
            "closed path must end where it starts"
        );
        PLPath {
            points,
            closed: true,
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.points.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn reversed(&self) -> PLPath {
        PLPath {
            points: self.points.iter().rev().cloned().collect(),
            closed: self.closed,
        }
    }

    /// Concatenate with a path starting at this path's endpoint.
    pub fn concat(&self, other: &PLPath) -> Option<PLPath> {
        if self.closed || other.closed || self.points.last() != other.points.first() {
            return None;
        }
        let mut points = self.points.clone();
        points.extend(other.points.iter().skip(1).cloned());
        let closed = points.first() == points.last();
        Some(PLPath { points, closed })
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("path has fewer than two points")]
    TooShort,
    #[error("path touches a black vertex of the chart")]
    TouchesBlackVertex,
    #[error("path meets the chart non-transversally and perturbation failed after {0} attempts")]
    NonTransverse(usize),
    #[error("loop is not closed at the chart basepoint")]
    NotBasedLoop,
    #[error("degenerate path segment")]
    DegenerateSegment,
}

struct Crossing {
    seg_index: usize,
    t: Rat,
    label: usize,
    sign: i8,
}

/// One pass: either all crossings are transverse interior points, or a
/// description of why general position fails.
fn try_read(chart: &Chart, path: &PLPath) -> Result<Vec<Crossing>, ()> {
    // Vertex contact is always a general-position failure.
    for (a, b) in path.segments() {
        if a == b {
            return Err(());
        }
        for v in chart.vertices() {
            if crate::geom::on_segment(a, b, &v.pos) {
                return Err(());
            }
        }
    }
    let mut crossings = Vec::new();
    let path_segs: Vec<(usize, &Point, &Point, ApproxBox)> = path
        .points
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i, &w[0], &w[1], ApproxBox::of_segment(&w[0], &w[1])))
        .collect();
    for e in chart.edges() {
        for (a, b) in e.segments() {
            let bb = ApproxBox::of_segment(a, b);
            for (i, p, q, pbb) in &path_segs {
                if !pbb.overlaps(&bb) {
                    continue;
                }
                match seg_crossing(p, q, a, b) {
                    SegCrossing::Disjoint => {}
                    SegCrossing::Degenerate => return Err(()),
                    SegCrossing::Proper { t_first, .. } => {
                        let path_dir = (&q.x - &p.x, &q.y - &p.y);
                        let mut edge_dir = (&b.x - &a.x, &b.y - &a.y);
                        if e.orient == EdgeOrientation::Reversed {
                            edge_dir = (-&edge_dir.0, -&edge_dir.1);
                        }
                        let cr = cross(&path_dir.0, &path_dir.1, &edge_dir.0, &edge_dir.1);
                        let sign = if cr.is_positive() { 1 } else { -1 };
                        crossings.push(Crossing {
                            seg_index: *i,
                            t: t_first,
                            label: e.label,
                            sign,
                        });
                    }
                }
            }
        }
    }
    crossings.sort_by(|x, y| (x.seg_index, &x.t).cmp(&(y.seg_index, &y.t)));
    Ok(crossings)
}

/// Deterministic perturbation: subdivide each segment at its midpoint, then
/// displace every interior joint by a small rational offset well below the
/// clearance to black vertices and the rectangle boundary. Endpoints stay
/// fixed, so based loops stay based.
fn perturb(chart: &Chart, path: &PLPath, attempt: usize) -> Result<PLPath, PathError> {
    // Clearance: distance from the path to every black vertex (these are
    // punctures; crossing one would change the homotopy class).
    let mut min_d2: Option<Rat> = None;
    let mut consider = |d2: Rat| {
        min_d2 = Some(match min_d2.take() {
            None => d2,
            Some(m) => m.min(d2),
        });
    };
    for (a, b) in path.segments() {
        for v in chart.black_vertices() {
            consider(crate::geom::point_seg_dist2(&v.pos, a, b));
        }
    }
    let rect = chart.rect();
    for p in &path.points {
        let dx = (&p.x - &rect.x0).abs().min((&rect.x1 - &p.x).abs());
        let dy = (&p.y - &rect.y0).abs().min((&rect.y1 - &p.y).abs());
        let d = dx.min(dy);
        if d.is_positive() {
            consider(&d * &d);
        }
    }
    let scale = match min_d2 {
        Some(ref d2) if d2.is_positive() => d2.clone(),
        Some(_) => return Err(PathError::TouchesBlackVertex),
        None => Rat::one(),
    };
    let eps = scale.half_power_below_sqrt() / Rat::int(4 << attempt);

    let mut points = Vec::with_capacity(path.points.len() * 2);
    for (k, w) in path.points.windows(2).enumerate() {
        points.push(w[0].clone());
        let _ = k;
        points.push(w[0].midpoint(&w[1]));
    }
    points.push(path.points.last().unwrap().clone());

    let dirs = [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1), (2, 1), (1, 2)];
    let n = points.len();
    for (k, p) in points.iter_mut().enumerate() {
        if k == 0 || k == n - 1 {
            continue;
        }
        let (ux, uy) = dirs[(k + attempt) % dirs.len()];
        let m = Rat::int((k % 5 + 2) as i64);
        let off = &eps / &m;
        *p = p.add(&(&off * Rat::int(ux)), &(&off * Rat::int(uy)));
    }
    Ok(PLPath {
        points,
        closed: path.closed,
    })
}

/// The intersection word of a path with a chart: one letter per transverse
/// crossing, ordered along the path. The sign is `+1` when the frame
/// (path direction, edge direction) is positively oriented.
pub fn intersection_word(chart: &Chart, path: &PLPath) -> Result<BraidWord, PathError> {
    if path.points.len() < 2 {
        if path.points.len() == 1 {
            return Ok(BraidWord::identity(chart.degree()));
        }
        return Err(PathError::TooShort);
    }
    for (a, b) in path.segments() {
        if a == b {
            return Err(PathError::DegenerateSegment);
        }
    }
    // Touching a black vertex exactly is unrecoverable.
    for (a, b) in path.segments() {
        for v in chart.black_vertices() {
            if crate::geom::on_segment(a, b, &v.pos) {
                return Err(PathError::TouchesBlackVertex);
            }
        }
    }
    let mut current = path.clone();
    for attempt in 0..=3usize {
        match try_read(chart, &current) {
            Ok(crossings) => {
                let letters: Vec<BraidLetter> = crossings
                    .iter()
                    .map(|c| BraidLetter::new(c.label, c.sign))
                    .collect();
                return BraidWord::new(chart.degree(), letters)
                    .map_err(|_| PathError::NonTransverse(attempt));
            }
            Err(()) => {
                if attempt == 3 {
                    break;
                }
                current = perturb(chart, path, attempt)?;
            }
        }
    }
    Err(PathError::NonTransverse(3))
}

/// Monodromy of a loop based at the chart basepoint.
pub fn loop_monodromy(chart: &Chart, path: &PLPath) -> Result<BraidWord, PathError> {
    if !path.closed || path.points.first() != Some(&chart.basepoint()) {
        return Err(PathError::NotBasedLoop);
    }
    intersection_word(chart, path)
}

#[cfg(test)]
mod tests {
    use super::super::{ChartEdge, ChartVertex, EdgeEnds, EdgeId, VertexId, VertexKind};
    use super::*;
    use crate::braid::words_equal;

    #[test]
    fn empty_chart_gives_empty_word() {
        let c = Chart::empty(3);
        let p = PLPath::open(vec![Point::frac(-1, 2, 1, 2), Point::frac(1, 2, 1, 2)]);
        assert!(intersection_word(&c, &p).unwrap().is_empty());
    }

    fn loop_chart(label: usize, degree: usize) -> Chart {
        let mut c = Chart::empty(degree);
        c.add_edge(ChartEdge {
            id: EdgeId(0),
            label,
            orient: EdgeOrientation::Forward,
            polyline: vec![
                Point::frac(1, 4, 1, 2),
                Point::frac(0, 1, 3, 4),
                Point::frac(-1, 4, 1, 2),
                Point::frac(0, 1, 1, 4),
                Point::frac(1, 4, 1, 2),
            ],
            ends: EdgeEnds::ClosedLoop,
        })
        .unwrap();
        c
    }

    #[test]
    fn crossing_a_loop_twice_cancels() {
        let c = loop_chart(2, 3);
        let p = PLPath::open(vec![Point::frac(-1, 2, 1, 2), Point::frac(1, 2, 1, 2)]);
        let w = intersection_word(&c, &p).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.letters()[0].index, 2);
        assert_eq!(w.letters()[0].sign, -w.letters()[1].sign);
        assert!(words_equal(&w, &BraidWord::identity(3)).unwrap());
    }

    #[test]
    fn reversal_inverts_the_word() {
        let c = loop_chart(1, 2);
        let p = PLPath::open(vec![
            Point::frac(-1, 2, 1, 2),
            Point::frac(0, 1, 5, 8),
            Point::frac(1, 2, 1, 2),
        ]);
        let w = intersection_word(&c, &p).unwrap();
        let back = intersection_word(&c, &p.reversed()).unwrap();
        assert_eq!(back, w.inverse());
    }

    #[test]
    fn concatenation_concatenates_words() {
        let c = loop_chart(1, 2);
        let mid = Point::frac(0, 1, 5, 8);
        let p1 = PLPath::open(vec![Point::frac(-1, 2, 1, 2), mid.clone()]);
        let p2 = PLPath::open(vec![mid, Point::frac(1, 2, 1, 2)]);
        let joined = p1.concat(&p2).unwrap();
        let w1 = intersection_word(&c, &p1).unwrap();
        let w2 = intersection_word(&c, &p2).unwrap();
        let w = intersection_word(&c, &joined).unwrap();
        assert_eq!(w, w1.compose(&w2).unwrap());
    }

    #[test]
    fn vertex_contact_is_perturbed_away() {
        // A path aimed exactly at a crossing vertex joint of a loop polyline.
        let c = loop_chart(1, 2);
        let p = PLPath::open(vec![
            Point::frac(-1, 2, 3, 4),
            Point::frac(0, 1, 3, 4), // exactly the loop's top joint
            Point::frac(1, 2, 3, 4),
        ]);
        // The crossing through the joint is degenerate; perturbation must
        // recover a transverse reading with a cancelling pair or no letters.
        let w = intersection_word(&c, &p).unwrap();
        assert!(words_equal(&w, &BraidWord::identity(2)).unwrap());
    }

    #[test]
    fn black_vertex_contact_is_fatal() {
        let mut c = Chart::empty(2);
        c.add_vertex(ChartVertex {
            id: VertexId(0),
            kind: VertexKind::Black,
            pos: Point::frac(0, 1, 1, 2),
        })
        .unwrap();
        c.add_vertex(ChartVertex {
            id: VertexId(1),
            kind: VertexKind::Black,
            pos: Point::frac(1, 2, 1, 2),
        })
        .unwrap();
        c.add_edge(ChartEdge {
            id: EdgeId(0),
            label: 1,
            orient: EdgeOrientation::Forward,
            polyline: vec![Point::frac(0, 1, 1, 2), Point::frac(1, 2, 1, 2)],
            ends: EdgeEnds::Open {
                start: VertexId(0),
                end: VertexId(1),
            },
        })
        .unwrap();
        let p = PLPath::open(vec![Point::frac(-1, 2, 1, 2), Point::frac(0, 1, 1, 2)]);
        assert_eq!(
            intersection_word(&c, &p),
            Err(PathError::TouchesBlackVertex)
        );
    }

    #[test]
    fn loops_must_be_based() {
        let c = Chart::empty(2);
        let p = PLPath::closed(vec![
            Point::frac(1, 4, 1, 2),
            Point::frac(1, 2, 1, 2),
            Point::frac(1, 4, 3, 4),
            Point::frac(1, 4, 1, 2),
        ]);
        assert_eq!(loop_monodromy(&c, &p), Err(PathError::NotBasedLoop));
    }
}
