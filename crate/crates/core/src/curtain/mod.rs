//! Curtains: motion pictures of charts over a time interval. Generic time
//! slices are charts; at finitely many exceptional times a disk replacement
//! (chart move), an insertion or deletion of free edges, or a certified
//! transition occurs. The black vertices trace out the internal boundary,
//! a link when the end slices are empty.

mod boundary;
mod meridian;
mod validate;

pub use boundary::{internal_boundary, BoundaryError, ClosedBraidForm, InternalBoundary, StrandTrace};
pub(crate) use boundary::CCW_IS_POSITIVE;
pub use meridian::{meridian_monodromy, reference_meridians, MeridianError, ReferenceSlice};
pub use validate::{validate_curtain, verify_transition};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::chart::{Chart, ChartEdge, ChartVertex, PLPath, ReplacementPiece};
use crate::geom::Polygon;
use crate::rat::Rat;

/// One inserted or deleted free edge: the two black end vertices plus the
/// edge between them. The edge at the event time is the cap joining the two
/// strand traces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeEdgeItem {
    pub vertex_a: ChartVertex,
    pub vertex_b: ChartVertex,
    pub edge: ChartEdge,
}

/// Machine-checked witness that two charts with the same black vertices
/// have the same monodromy on a common meridian system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionCertificate {
    pub meridians: Vec<PLPath>,
    pub tuple_before: Vec<BraidWord>,
    pub tuple_after: Vec<BraidWord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventPayload {
    DiskReplacement {
        disk: Polygon,
        replacement: ReplacementPiece,
    },
    InsertFreeEdges {
        items: Vec<FreeEdgeItem>,
    },
    DeleteFreeEdges {
        items: Vec<FreeEdgeItem>,
    },
    CertifiedTransition {
        certificate: TransitionCertificate,
    },
}

impl EventPayload {
    pub fn kind_name(&self) -> &'static str {
        match self {
            EventPayload::DiskReplacement { .. } => "disk_replacement",
            EventPayload::InsertFreeEdges { .. } => "insert_free_edges",
            EventPayload::DeleteFreeEdges { .. } => "delete_free_edges",
            EventPayload::CertifiedTransition { .. } => "certified_transition",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurtainEvent {
    pub t: Rat,
    #[serde(flatten)]
    pub payload: EventPayload,
}

/// A maximal event-free time band: the chart deforms by a keyframed
/// isotopy, combinatorics fixed. A single keyframe means the slice is
/// constant on the band.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurtainSegment {
    pub t0: Rat,
    pub t1: Rat,
    pub keyframes: Vec<Chart>,
}

impl CurtainSegment {
    pub fn constant(t0: Rat, t1: Rat, chart: Chart) -> Self {
        CurtainSegment {
            t0,
            t1,
            keyframes: vec![chart],
        }
    }

    pub fn first(&self) -> &Chart {
        self.keyframes.first().expect("segment without keyframes")
    }

    pub fn last(&self) -> &Chart {
        self.keyframes.last().expect("segment without keyframes")
    }

    /// Slice at a time inside the band, by piecewise-linear interpolation of
    /// the keyframes (which are evenly spaced over the band).
    pub fn slice(&self, t: &Rat) -> Chart {
        let k = self.keyframes.len();
        if k == 1 {
            return self.keyframes[0].clone();
        }
        let span = &self.t1 - &self.t0;
        let u = &(t - &self.t0) / &span; // in [0, 1]
        let scaled = &u * Rat::int((k - 1) as i64);
        let mut idx = scaled.floor_i64();
        if idx as usize >= k - 1 {
            idx = (k - 2) as i64;
        }
        let local = &scaled - &Rat::int(idx);
        self.keyframes[idx as usize].lerp(&self.keyframes[idx as usize + 1], &local)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CurtainError {
    #[error("curtain needs at least one segment")]
    NoSegments,
    #[error("segments do not tile the time interval")]
    BadTiling,
    #[error("segment has no keyframes")]
    EmptySegment,
    #[error("event at t={0} does not sit on a segment boundary")]
    EventOffBoundary(Rat),
    #[error("event times are not strictly increasing")]
    EventOrder,
    #[error("chart degree mismatch inside curtain")]
    DegreeMismatch,
    #[error("time {0} is an event time")]
    EventTime(Rat),
    #[error("time {0} is outside the curtain's interval")]
    OutOfRange(Rat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curtain {
    degree: usize,
    segments: Vec<CurtainSegment>,
    events: Vec<CurtainEvent>,
}

impl Curtain {
    pub fn new(
        degree: usize,
        segments: Vec<CurtainSegment>,
        events: Vec<CurtainEvent>,
    ) -> Result<Self, CurtainError> {
        if segments.is_empty() {
            return Err(CurtainError::NoSegments);
        }
        for s in &segments {
            if s.keyframes.is_empty() {
                return Err(CurtainError::EmptySegment);
            }
            if s.t0 >= s.t1 {
                return Err(CurtainError::BadTiling);
            }
            for kf in &s.keyframes {
                if kf.degree() != degree {
                    return Err(CurtainError::DegreeMismatch);
                }
            }
        }
        for w in segments.windows(2) {
            if w[0].t1 != w[1].t0 {
                return Err(CurtainError::BadTiling);
            }
        }
        for w in events.windows(2) {
            if w[0].t >= w[1].t {
                return Err(CurtainError::EventOrder);
            }
        }
        let boundaries: Vec<&Rat> = segments.iter().skip(1).map(|s| &s.t0).collect();
        for e in &events {
            if !boundaries.contains(&&e.t) {
                return Err(CurtainError::EventOffBoundary(e.t.clone()));
            }
        }
        Ok(Curtain {
            degree,
            segments,
            events,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn time_range(&self) -> (Rat, Rat) {
        (
            self.segments.first().unwrap().t0.clone(),
            self.segments.last().unwrap().t1.clone(),
        )
    }

    pub fn segments(&self) -> &[CurtainSegment] {
        &self.segments
    }

    pub fn events(&self) -> &[CurtainEvent] {
        &self.events
    }

    pub fn is_event_time(&self, t: &Rat) -> bool {
        self.events.iter().any(|e| &e.t == t)
    }

    /// The chart at a regular time.
    pub fn slice_at(&self, t: &Rat) -> Result<Chart, CurtainError> {
        let (a, b) = self.time_range();
        if *t < a || *t > b {
            return Err(CurtainError::OutOfRange(t.clone()));
        }
        if self.is_event_time(t) {
            return Err(CurtainError::EventTime(t.clone()));
        }
        for s in &self.segments {
            if *t >= s.t0 && *t < s.t1 {
                return Ok(s.slice(t));
            }
        }
        Ok(self.segments.last().unwrap().last().clone())
    }

    /// Slices adjacent to an event: (end of the segment before, start of the
    /// segment after).
    pub fn event_sides(&self, t: &Rat) -> Option<(&Chart, &Chart)> {
        for (i, s) in self.segments.iter().enumerate() {
            if &s.t0 == t && i > 0 {
                return Some((self.segments[i - 1].last(), s.first()));
            }
        }
        None
    }

    /// All segment boundaries carrying no event must join identical slices;
    /// exposed for validation.
    pub fn quiet_boundaries(&self) -> Vec<usize> {
        (1..self.segments.len())
            .filter(|&i| !self.is_event_time(&self.segments[i].t0))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurtainShadow {
    degree: usize,
    time_range: (Rat, Rat),
    segments: Vec<CurtainSegment>,
    events: Vec<CurtainEvent>,
}

impl Serialize for Curtain {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let shadow = CurtainShadow {
            degree: self.degree,
            time_range: self.time_range(),
            segments: self.segments.clone(),
            events: self.events.clone(),
        };
        shadow.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Curtain {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Curtain, D::Error> {
        use serde::de::Error;
        let shadow = CurtainShadow::deserialize(deserializer)?;
        let curtain = Curtain::new(shadow.degree, shadow.segments, shadow.events)
            .map_err(D::Error::custom)?;
        if curtain.time_range() != shadow.time_range {
            return Err(D::Error::custom("time_range does not match segments"));
        }
        Ok(curtain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_curtain_slices_are_empty() {
        let cu = Curtain::new(
            3,
            vec![CurtainSegment::constant(
                Rat::int(-2),
                Rat::int(2),
                Chart::empty(3),
            )],
            Vec::new(),
        )
        .unwrap();
        assert!(cu.slice_at(&Rat::zero()).unwrap().is_empty());
        assert_eq!(cu.time_range(), (Rat::int(-2), Rat::int(2)));
    }

    #[test]
    fn slicing_an_event_time_is_an_error() {
        let cu = Curtain::new(
            2,
            vec![
                CurtainSegment::constant(Rat::int(0), Rat::int(1), Chart::empty(2)),
                CurtainSegment::constant(Rat::int(1), Rat::int(2), Chart::empty(2)),
            ],
            vec![CurtainEvent {
                t: Rat::int(1),
                payload: EventPayload::InsertFreeEdges { items: Vec::new() },
            }],
        )
        .unwrap();
        assert!(matches!(
            cu.slice_at(&Rat::int(1)),
            Err(CurtainError::EventTime(_))
        ));
        assert!(cu.slice_at(&Rat::new(1, 2)).is_ok());
    }

    #[test]
    fn events_must_sit_on_boundaries() {
        let bad = Curtain::new(
            2,
            vec![CurtainSegment::constant(
                Rat::int(0),
                Rat::int(2),
                Chart::empty(2),
            )],
            vec![CurtainEvent {
                t: Rat::int(1),
                payload: EventPayload::InsertFreeEdges { items: Vec::new() },
            }],
        );
        assert!(matches!(bad, Err(CurtainError::EventOffBoundary(_))));
    }
}
