//! Curtain validation: every snapshot is a valid chart, segments deform by
//! keyframe isotopy, event payloads transform the adjacent slices exactly,
//! and black-vertex traces are continuous.

use std::collections::BTreeMap;

use crate::braid::words_equal;
use crate::chart::{
    apply_disk_replacement, geometry_issues, loop_monodromy, validate_chart, Chart, VertexId,
    VertexKind,
};
use crate::geom::Point;
use crate::rat::Rat;
use crate::report::ValidationReport;

use super::{Curtain, EventPayload, FreeEdgeItem, TransitionCertificate};

fn black_positions(c: &Chart) -> BTreeMap<VertexId, Point> {
    c.black_vertices()
        .map(|v| (v.id, v.pos.clone()))
        .collect()
}

/// Re-verify a transition certificate against the two actual slices: black
/// vertices must coincide and the monodromy tuples must agree elementwise
/// on the certified meridian system.
pub fn verify_transition(
    before: &Chart,
    after: &Chart,
    cert: &TransitionCertificate,
    location: &str,
    report: &mut ValidationReport,
) {
    if black_positions(before) != black_positions(after) {
        report.push(location, "certified transition changes the black vertex set");
        return;
    }
    if cert.meridians.len() != cert.tuple_before.len()
        || cert.meridians.len() != cert.tuple_after.len()
    {
        report.push(location, "certificate tuple lengths do not match meridians");
        return;
    }
    for (k, m) in cert.meridians.iter().enumerate() {
        let wb = match loop_monodromy(before, m) {
            Ok(w) => w,
            Err(e) => {
                report.push(location, format!("meridian {k} unreadable on before-slice: {e}"));
                continue;
            }
        };
        let wa = match loop_monodromy(after, m) {
            Ok(w) => w,
            Err(e) => {
                report.push(location, format!("meridian {k} unreadable on after-slice: {e}"));
                continue;
            }
        };
        match words_equal(&wb, &wa) {
            Ok(true) => {}
            Ok(false) => {
                report.push(
                    location,
                    format!("monodromy changes across certified transition at meridian {k}: {wb} vs {wa}"),
                );
            }
            Err(e) => report.push(location, format!("meridian {k}: {e}")),
        }
    }
}

fn apply_insert(before: &Chart, items: &[FreeEdgeItem]) -> Result<Chart, String> {
    let mut out = before.clone();
    for item in items {
        if item.vertex_a.kind != VertexKind::Black || item.vertex_b.kind != VertexKind::Black {
            return Err("free edge ends must be black vertices".into());
        }
        out.add_vertex(item.vertex_a.clone()).map_err(|e| e.to_string())?;
        out.add_vertex(item.vertex_b.clone()).map_err(|e| e.to_string())?;
        match &item.edge.ends {
            crate::chart::EdgeEnds::Open { start, end } => {
                let ok = (*start == item.vertex_a.id && *end == item.vertex_b.id)
                    || (*start == item.vertex_b.id && *end == item.vertex_a.id);
                if !ok {
                    return Err("free edge does not join its two vertices".into());
                }
            }
            _ => return Err("free edge cannot be a closed loop".into()),
        }
        out.add_edge(item.edge.clone()).map_err(|e| e.to_string())?;
    }
    Ok(out)
}

/// Validate the whole curtain. With `strict` set, curtains containing
/// certified transitions are rejected outright.
pub fn validate_curtain(cu: &Curtain, strict: bool) -> ValidationReport {
    let mut report = ValidationReport::new();

    // Segment snapshots.
    for (i, seg) in cu.segments().iter().enumerate() {
        let loc = |k: usize| format!("segment {i} keyframe {k}");
        for (k, kf) in seg.keyframes.iter().enumerate() {
            let r = validate_chart(kf);
            if !r.is_valid() {
                for issue in r.issues {
                    report.push(loc(k), format!("{}: {}", issue.location, issue.message));
                }
            }
            if k > 0 {
                if !seg.keyframes[0].same_combinatorics(kf) {
                    report.push(loc(k), "keyframe changes combinatorics inside a segment");
                }
                for v in seg.keyframes[0].vertices() {
                    if v.kind == VertexKind::Boundary
                        && kf.vertex(v.id).map(|w| &w.pos) != Some(&v.pos)
                    {
                        report.push(loc(k), "keyframe moves an external boundary vertex");
                    }
                }
            }
        }
        for k in 0..seg.keyframes.len().saturating_sub(1) {
            if !seg.keyframes[k].same_combinatorics(&seg.keyframes[k + 1]) {
                continue; // already reported
            }
            let mid = seg.keyframes[k].lerp(&seg.keyframes[k + 1], &Rat::new(1, 2));
            let r = geometry_issues(&mid);
            if !r.is_valid() {
                report.push(
                    format!("segment {i} between keyframes {k} and {}", k + 1),
                    format!("interpolation midpoint loses embeddedness: {r}"),
                );
            }
        }
    }

    // Quiet segment boundaries must join identical slices.
    for i in cu.quiet_boundaries() {
        let prev = cu.segments()[i - 1].last();
        let next = cu.segments()[i].first();
        if !prev.same_slice(next) {
            report.push(
                format!("segment boundary t={}", cu.segments()[i].t0),
                "slices differ across a boundary with no event",
            );
        }
    }

    // Events.
    for (j, ev) in cu.events().iter().enumerate() {
        let loc = format!("event {j} (t={}, {})", ev.t, ev.payload.kind_name());
        let Some((before, after)) = cu.event_sides(&ev.t) else {
            report.push(loc.clone(), "event has no adjacent segments");
            continue;
        };
        match &ev.payload {
            EventPayload::InsertFreeEdges { items } => match apply_insert(before, items) {
                Ok(expected) => {
                    if !expected.same_slice(after) {
                        report.push(loc, "after-slice is not before-slice plus inserted edges");
                    }
                }
                Err(e) => report.push(loc, e),
            },
            EventPayload::DeleteFreeEdges { items } => match apply_insert(after, items) {
                Ok(expected) => {
                    if !expected.same_slice(before) {
                        report.push(loc, "before-slice is not after-slice plus deleted edges");
                    }
                }
                Err(e) => report.push(loc, e),
            },
            EventPayload::DiskReplacement { disk, replacement } => {
                match apply_disk_replacement(before, disk, replacement) {
                    Ok(expected) => {
                        if !expected.same_slice(after) {
                            report.push(loc, "after-slice does not match the disk replacement");
                        }
                    }
                    Err(e) => report.push(loc, format!("replacement does not apply: {e}")),
                }
            }
            EventPayload::CertifiedTransition { certificate } => {
                if strict {
                    report.push(loc.clone(), "certified transition rejected in strict mode");
                }
                verify_transition(before, after, certificate, &loc, &mut report);
            }
        }
    }

    // Black-vertex trace continuity across boundaries and events.
    for i in 1..cu.segments().len() {
        let prev = cu.segments()[i - 1].last();
        let next = cu.segments()[i].first();
        let t = &cu.segments()[i].t0;
        let before = black_positions(prev);
        let after = black_positions(next);
        let event = cu.events().iter().find(|e| &e.t == t);
        let (mut expected_gain, mut expected_loss) = (Vec::new(), Vec::new());
        if let Some(ev) = event {
            match &ev.payload {
                EventPayload::InsertFreeEdges { items } => {
                    expected_gain = items
                        .iter()
                        .flat_map(|it| [it.vertex_a.id, it.vertex_b.id])
                        .collect();
                }
                EventPayload::DeleteFreeEdges { items } => {
                    expected_loss = items
                        .iter()
                        .flat_map(|it| [it.vertex_a.id, it.vertex_b.id])
                        .collect();
                }
                _ => {}
            }
        }
        for (id, pos) in &before {
            match after.get(id) {
                Some(q) if q == pos => {}
                Some(_) => report.push(
                    format!("t={t}"),
                    format!("black vertex {} jumps across the boundary", id.0),
                ),
                None => {
                    if !expected_loss.contains(id) {
                        report.push(
                            format!("t={t}"),
                            format!("black vertex {} disappears without a deletion event", id.0),
                        );
                    }
                }
            }
        }
        for id in after.keys() {
            if !before.contains_key(id) && !expected_gain.contains(id) {
                report.push(
                    format!("t={t}"),
                    format!("black vertex {} appears without an insertion event", id.0),
                );
            }
        }
    }

    report
}
