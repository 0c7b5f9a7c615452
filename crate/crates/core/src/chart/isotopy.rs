//! Keyframed ambient isotopies of a chart: the combinatorics stay fixed
//! while coordinates move. Every keyframe must be a valid chart and every
//! linear interpolation midpoint must stay embedded.

use thiserror::Error;

use crate::rat::Rat;

use super::{geometry_issues, validate_chart, Chart, VertexKind};

#[derive(Debug, Clone, Error)]
pub enum IsotopyError {
    #[error("keyframe {0} changes the chart combinatorics")]
    CombinatoricsChanged(usize),
    #[error("keyframe {0} moves a boundary vertex")]
    BoundaryMoved(usize),
    #[error("keyframe {0} is not a valid chart: {1}")]
    InvalidKeyframe(usize, String),
    #[error("interpolation between keyframes {0} and {1} loses embeddedness: {2}")]
    InterpolationBreaks(usize, usize, String),
    #[error("no keyframes supplied")]
    Empty,
}

/// Validate a keyframe family starting at `chart` and return the snapshots.
/// The first keyframe need not equal `chart` coordinate-wise, but usually
/// does; all keyframes must share its combinatorics.
pub fn apply_keyframe_isotopy(
    chart: &Chart,
    keyframes: &[Chart],
) -> Result<Vec<Chart>, IsotopyError> {
    if keyframes.is_empty() {
        return Err(IsotopyError::Empty);
    }
    for (i, kf) in keyframes.iter().enumerate() {
        if !chart.same_combinatorics(kf) {
            return Err(IsotopyError::CombinatoricsChanged(i));
        }
        for v in chart.vertices() {
            if v.kind == VertexKind::Boundary && kf.vertex(v.id).map(|w| &w.pos) != Some(&v.pos) {
                return Err(IsotopyError::BoundaryMoved(i));
            }
        }
        let report = validate_chart(kf);
        if !report.is_valid() {
            return Err(IsotopyError::InvalidKeyframe(i, report.to_string()));
        }
    }
    for i in 0..keyframes.len().saturating_sub(1) {
        let mid = keyframes[i].lerp(&keyframes[i + 1], &Rat::new(1, 2));
        let report = geometry_issues(&mid);
        if !report.is_valid() {
            return Err(IsotopyError::InterpolationBreaks(
                i,
                i + 1,
                report.to_string(),
            ));
        }
    }
    Ok(keyframes.to_vec())
}

#[cfg(test)]
mod tests {
    use super::super::{ChartEdge, ChartVertex, EdgeEnds, EdgeId, EdgeOrientation, VertexId};
    use super::*;
    use crate::geom::Point;

    fn free_edge_chart(x_offset: (i64, i64)) -> Chart {
        let dx = Rat::new(x_offset.0, x_offset.1);
        let mut c = Chart::empty(2);
        let a = Point::new(Rat::new(-1, 4) + dx.clone(), Rat::new(1, 2));
        let b = Point::new(Rat::new(1, 4) + dx, Rat::new(1, 2));
        c.add_vertex(ChartVertex {
            id: VertexId(0),
            kind: VertexKind::Black,
            pos: a.clone(),
        })
        .unwrap();
        c.add_vertex(ChartVertex {
            id: VertexId(1),
            kind: VertexKind::Black,
            pos: b.clone(),
        })
        .unwrap();
        c.add_edge(ChartEdge {
            id: EdgeId(0),
            label: 1,
            orient: EdgeOrientation::Forward,
            polyline: vec![a, b],
            ends: EdgeEnds::Open {
                start: VertexId(0),
                end: VertexId(1),
            },
        })
        .unwrap();
        c
    }

    #[test]
    fn identity_keyframes_pass() {
        let c = free_edge_chart((0, 1));
        let out = apply_keyframe_isotopy(&c, &[c.clone(), c.clone()]).unwrap();
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn translation_passes() {
        let c = free_edge_chart((0, 1));
        let moved = free_edge_chart((1, 3));
        apply_keyframe_isotopy(&c, &[c.clone(), moved]).unwrap();
    }

    #[test]
    fn combinatorics_change_rejected() {
        let c = free_edge_chart((0, 1));
        let mut other = free_edge_chart((0, 1));
        let e = other.remove_edge(EdgeId(0)).unwrap();
        other
            .add_edge(ChartEdge {
                polyline: {
                    let mut p = e.polyline.clone();
                    p.insert(1, p[0].midpoint(&p[1]));
                    p
                },
                ..e
            })
            .unwrap();
        assert!(matches!(
            apply_keyframe_isotopy(&c, &[c.clone(), other]),
            Err(IsotopyError::CombinatoricsChanged(1))
        ));
    }
}
