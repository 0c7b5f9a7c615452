//! Chart validation: geometric embeddedness of the PL graph plus the
//! local vertex rules. Crossings carry alternating labels `i, j` with
//! `|i-j| >= 2`, white vertices alternating labels with `|i-j| = 1` and
//! exactly three inward edge ends; in both cases the clockwise reading of
//! a small circle around the vertex must spell the identity braid, which is
//! exactly the condition making monodromy well defined across the vertex.

use std::collections::BTreeMap;

use crate::braid::{words_equal, BraidLetter, BraidWord};
use crate::geom::{seg_crossing, ApproxBox, Point, SegCrossing};
use crate::report::ValidationReport;

use super::{Chart, EdgeEnds, EdgeId, VertexId, VertexKind};

/// An edge end at a vertex: outgoing direction plus whether the edge is
/// oriented away from the vertex.
struct End {
    label: usize,
    direction: (crate::rat::Rat, crate::rat::Rat),
    outgoing: bool,
}

/// Counterclockwise comparison of direction vectors starting from the
/// positive x-axis.
fn angle_class(d: &(crate::rat::Rat, crate::rat::Rat)) -> u8 {
    let (dx, dy) = d;
    if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
        0
    } else {
        1
    }
}

fn angle_less(a: &(crate::rat::Rat, crate::rat::Rat), b: &(crate::rat::Rat, crate::rat::Rat)) -> std::cmp::Ordering {
    let (ca, cb) = (angle_class(a), angle_class(b));
    if ca != cb {
        return ca.cmp(&cb);
    }
    let cr = crate::geom::cross(&a.0, &a.1, &b.0, &b.1);
    if cr.is_positive() {
        std::cmp::Ordering::Less
    } else if cr.is_negative() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

/// Geometric embeddedness issues only: polylines embedded, edges pairwise
/// disjoint except at shared end vertices, everything inside the rectangle,
/// vertices distinct and away from foreign edges. Shared by full validation
/// and by keyframe interpolation checks.
pub fn geometry_issues(chart: &Chart) -> ValidationReport {
    let mut report = ValidationReport::new();
    let rect = chart.rect();

    // Vertex positions: pairwise distinct, interior unless boundary kind.
    let vertices: Vec<_> = chart.vertices().collect();
    for (i, v) in vertices.iter().enumerate() {
        match v.kind {
            VertexKind::Boundary => {
                if !rect.on_boundary(&v.pos) {
                    report.push(
                        format!("vertex {}", v.id.0),
                        "boundary vertex must lie on the rectangle boundary",
                    );
                }
            }
            _ => {
                if !rect.contains_strictly(&v.pos) {
                    report.push(
                        format!("vertex {}", v.id.0),
                        "interior vertex must lie strictly inside the rectangle",
                    );
                }
            }
        }
        if v.pos == chart.basepoint() {
            report.push(
                format!("vertex {}", v.id.0),
                "vertex coincides with the basepoint",
            );
        }
        for w in vertices.iter().skip(i + 1) {
            if v.pos == w.pos {
                report.push(
                    format!("vertex {}", v.id.0),
                    format!("coincides with vertex {}", w.id.0),
                );
            }
        }
    }

    // Polyline embeddedness and containment.
    for e in chart.edges() {
        if !crate::geom::polyline_is_embedded(&e.polyline, e.is_closed()) {
            report.push(format!("edge {}", e.id.0), "polyline is not embedded");
        }
        for p in &e.polyline {
            let terminal = match &e.ends {
                EdgeEnds::Open { .. } => {
                    p == e.polyline.first().unwrap() || p == e.polyline.last().unwrap()
                }
                EdgeEnds::ClosedLoop => false,
            };
            let ok = if terminal {
                rect.contains_strictly(p) || rect.on_boundary(p)
            } else {
                rect.contains_strictly(p)
            };
            if !ok {
                report.push(
                    format!("edge {}", e.id.0),
                    "polyline leaves the rectangle interior",
                );
                break;
            }
        }
    }

    // Pairwise disjointness except at shared end vertices; vertex positions
    // may meet only the terminal segments of their own incident edges.
    let mut all_segs: Vec<(EdgeId, usize, &Point, &Point, ApproxBox)> = Vec::new();
    for e in chart.edges() {
        for (k, (a, b)) in e.segments().enumerate() {
            all_segs.push((e.id, k, a, b, ApproxBox::of_segment(a, b)));
        }
    }
    let end_vertices = |id: EdgeId| -> Vec<VertexId> {
        match &chart.edge(id).unwrap().ends {
            EdgeEnds::ClosedLoop => Vec::new(),
            EdgeEnds::Open { start, end } => vec![*start, *end],
        }
    };
    for i in 0..all_segs.len() {
        for j in i + 1..all_segs.len() {
            let (e1, _k1, a1, b1, bb1) = &all_segs[i];
            let (e2, _k2, a2, b2, bb2) = &all_segs[j];
            if e1 == e2 || !bb1.overlaps(bb2) {
                continue;
            }
            match seg_crossing(a1, b1, a2, b2) {
                SegCrossing::Disjoint => {}
                SegCrossing::Proper { .. } => {
                    report.push(
                        format!("edge {}", e1.0),
                        format!("crosses edge {}", e2.0),
                    );
                }
                SegCrossing::Degenerate => {
                    // Allowed only when the contact is a shared end vertex
                    // touched at segment endpoints of both edges.
                    let shared: Vec<VertexId> = end_vertices(*e1)
                        .into_iter()
                        .filter(|v| end_vertices(*e2).contains(v))
                        .collect();
                    let mut allowed = false;
                    for v in shared {
                        let pos = &chart.vertex(v).unwrap().pos;
                        let endpoint_of_both = (pos == *a1 || pos == *b1)
                            && (pos == *a2 || pos == *b2);
                        if endpoint_of_both {
                            // Verify the contact is exactly that point: the
                            // other endpoints must not lie on the opposite
                            // segment.
                            let other1 = if pos == *a1 { *b1 } else { *a1 };
                            let other2 = if pos == *a2 { *b2 } else { *a2 };
                            let extra = crate::geom::on_segment(a2, b2, other1)
                                || crate::geom::on_segment(a1, b1, other2);
                            if !extra {
                                allowed = true;
                            }
                        }
                    }
                    if !allowed {
                        report.push(
                            format!("edge {}", e1.0),
                            format!("touches edge {} away from a shared vertex", e2.0),
                        );
                    }
                }
            }
        }
    }

    // Vertices may not lie on non-incident edges.
    for v in chart.vertices() {
        for e in chart.edges() {
            let incident = matches!(&e.ends, EdgeEnds::Open { start, end } if *start == v.id || *end == v.id);
            if incident {
                continue;
            }
            for (a, b) in e.segments() {
                if crate::geom::on_segment(a, b, &v.pos) {
                    report.push(
                        format!("vertex {}", v.id.0),
                        format!("lies on edge {}", e.id.0),
                    );
                    break;
                }
            }
        }
    }

    report
}

/// Full chart validation per the local vertex rules.
pub fn validate_chart(chart: &Chart) -> ValidationReport {
    let mut report = geometry_issues(chart);
    let degree = chart.degree();

    for e in chart.edges() {
        if e.label < 1 || e.label >= degree {
            report.push(
                format!("edge {}", e.id.0),
                format!("label {} out of range 1..{}", e.label, degree.saturating_sub(1)),
            );
        }
    }

    // Gather edge ends per vertex.
    let mut ends: BTreeMap<VertexId, Vec<End>> = BTreeMap::new();
    for v in chart.vertices() {
        ends.insert(v.id, Vec::new());
    }
    for e in chart.edges() {
        if let EdgeEnds::Open { start, end } = &e.ends {
            if e.polyline.len() >= 2 {
                if let Some(list) = ends.get_mut(start) {
                    let d = (
                        &e.polyline[1].x - &e.polyline[0].x,
                        &e.polyline[1].y - &e.polyline[0].y,
                    );
                    list.push(End {
                        label: e.label,
                        direction: d,
                        outgoing: e.orient.sign() > 0,
                    });
                }
                if let Some(list) = ends.get_mut(end) {
                    let n = e.polyline.len();
                    let d = (
                        &e.polyline[n - 2].x - &e.polyline[n - 1].x,
                        &e.polyline[n - 2].y - &e.polyline[n - 1].y,
                    );
                    list.push(End {
                        label: e.label,
                        direction: d,
                        outgoing: e.orient.sign() < 0,
                    });
                }
            }
        }
    }

    for v in chart.vertices() {
        let list = &ends[&v.id];
        let expected = v.kind.expected_valence();
        if list.len() != expected {
            report.push(
                format!("vertex {}", v.id.0),
                format!(
                    "valence {} does not match kind {:?} (expected {})",
                    list.len(),
                    v.kind,
                    expected
                ),
            );
            continue;
        }
        match v.kind {
            VertexKind::Black | VertexKind::Boundary => {}
            VertexKind::Crossing | VertexKind::White => {
                // Sort ends counterclockwise; coincident directions are illegal.
                let mut sorted: Vec<&End> = list.iter().collect();
                sorted.sort_by(|a, b| angle_less(&a.direction, &b.direction));
                let coincident = sorted.windows(2).any(|w| {
                    angle_less(&w[0].direction, &w[1].direction) == std::cmp::Ordering::Equal
                });
                if coincident {
                    report.push(
                        format!("vertex {}", v.id.0),
                        "coincident edge directions at vertex",
                    );
                    continue;
                }
                let labels: Vec<usize> = sorted.iter().map(|e| e.label).collect();
                let a = labels[0];
                let b = labels[1];
                let alternating = labels.iter().enumerate().all(|(k, &l)| {
                    if k % 2 == 0 {
                        l == a
                    } else {
                        l == b
                    }
                });
                if !alternating {
                    report.push(
                        format!("vertex {}", v.id.0),
                        "labels do not alternate around the vertex",
                    );
                }
                let diff = a.abs_diff(b);
                match v.kind {
                    VertexKind::Crossing => {
                        if diff < 2 {
                            report.push(
                                format!("vertex {}", v.id.0),
                                "crossing labels must differ by >= 2",
                            );
                        }
                    }
                    VertexKind::White => {
                        if diff != 1 {
                            report.push(
                                format!("vertex {}", v.id.0),
                                "white vertex labels must differ by 1",
                            );
                        }
                        let inward = sorted.iter().filter(|e| !e.outgoing).count();
                        if inward != 3 {
                            report.push(
                                format!("vertex {}", v.id.0),
                                format!("white vertex needs 3 inward edge ends, found {inward}"),
                            );
                        }
                    }
                    _ => unreachable!(),
                }
                // Small-circle reading: clockwise order, outgoing ends read
                // positively. Must spell the identity braid.
                if degree >= 2 {
                    let letters: Vec<BraidLetter> = sorted
                        .iter()
                        .rev()
                        .map(|e| BraidLetter::new(e.label, if e.outgoing { 1 } else { -1 }))
                        .collect();
                    if letters.iter().all(|l| l.index >= 1 && l.index < degree) {
                        let word = BraidWord::new(degree, letters).unwrap();
                        let identity = BraidWord::identity(degree);
                        if !words_equal(&word, &identity).unwrap() {
                            report.push(
                                format!("vertex {}", v.id.0),
                                format!("small-circle reading {word} is not the identity braid"),
                            );
                        }
                    }
                }
            }
        }
    }

    report
}
