//! Meridian monodromy of a curtain in braid position: the standard
//! meridians live in a single regular slice whose black vertices form two
//! vertical columns of paired heights (the braid-position pattern). Each
//! meridian is a keyhole lasso from the basepoint around one left-column
//! puncture, routed down a staggered west margin.

use thiserror::Error;

use crate::braid::BraidWord;
use crate::chart::{loop_monodromy, Chart, EdgeEnds, PLPath, PathError, VertexId};
use crate::geom::Point;
use crate::rat::Rat;

use super::Curtain;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MeridianError {
    #[error("no regular slice with black vertices in braid position")]
    NoReferenceSlice,
    #[error("no room west of the chart content for meridian routing")]
    NoRoom,
    #[error("meridian {0} unreadable: {1}")]
    Unreadable(usize, PathError),
}

/// A detected reference slice: the chart, the left-column punctures sorted
/// by increasing height, and the braid degree (number of pairs).
#[derive(Debug, Clone)]
pub struct ReferenceSlice {
    pub chart: Chart,
    pub left_points: Vec<(VertexId, Point)>,
    pub braid_degree: usize,
    pub time: Rat,
}

/// Scan the curtain for the earliest segment whose midpoint slice is in
/// braid position.
fn find_reference(cu: &Curtain) -> Option<ReferenceSlice> {
    for seg in cu.segments() {
        let mid_t = &(&seg.t0 + &seg.t1) / &Rat::int(2);
        let chart = seg.slice(&mid_t);
        let blacks: Vec<_> = chart
            .black_vertices()
            .map(|v| (v.id, v.pos.clone()))
            .collect();
        if blacks.is_empty() || blacks.len() % 2 != 0 {
            continue;
        }
        let mut xs: Vec<Rat> = blacks.iter().map(|(_, p)| p.x.clone()).collect();
        xs.sort();
        xs.dedup();
        if xs.len() != 2 {
            continue;
        }
        let (xl, xr) = (&xs[0], &xs[1]);
        let mut left: Vec<(VertexId, Point)> = blacks
            .iter()
            .filter(|(_, p)| &p.x == xl)
            .cloned()
            .collect();
        let right: Vec<(VertexId, Point)> = blacks
            .iter()
            .filter(|(_, p)| &p.x == xr)
            .cloned()
            .collect();
        if left.len() != right.len() {
            continue;
        }
        let mut lh: Vec<Rat> = left.iter().map(|(_, p)| p.y.clone()).collect();
        let mut rh: Vec<Rat> = right.iter().map(|(_, p)| p.y.clone()).collect();
        lh.sort();
        rh.sort();
        if lh != rh {
            continue;
        }
        left.sort_by(|a, b| a.1.y.cmp(&b.1.y));
        let n = left.len();
        return Some(ReferenceSlice {
            chart,
            left_points: left,
            braid_degree: n,
            time: mid_t,
        });
    }
    None
}

/// Build the keyhole lasso system around the left-column punctures of a
/// slice: for each puncture, a square circuit of half-side below the local
/// clearance, entered from a staggered west margin.
pub fn reference_meridians(slice: &Chart) -> Result<Vec<PLPath>, MeridianError> {
    let blacks: Vec<_> = slice
        .black_vertices()
        .map(|v| (v.id, v.pos.clone()))
        .collect();
    let mut xs: Vec<Rat> = blacks.iter().map(|(_, p)| p.x.clone()).collect();
    xs.sort();
    let xl = xs.first().ok_or(MeridianError::NoReferenceSlice)?.clone();
    let mut left: Vec<(VertexId, Point)> = blacks
        .into_iter()
        .filter(|(_, p)| p.x == xl)
        .collect();
    left.sort_by(|a, b| a.1.y.cmp(&b.1.y));
    build_lassos(slice, &left)
}

fn build_lassos(
    slice: &Chart,
    punctures: &[(VertexId, Point)],
) -> Result<Vec<PLPath>, MeridianError> {
    let rect = slice.rect();
    let basepoint = slice.basepoint();
    // Content extent.
    let mut west: Option<Rat> = None;
    let mut top: Option<Rat> = None;
    let mut fold = |x: &Rat, y: &Rat| {
        west = Some(match west.take() {
            None => x.clone(),
            Some(w) => w.min(x.clone()),
        });
        top = Some(match top.take() {
            None => y.clone(),
            Some(t) => t.max(y.clone()),
        });
    };
    for e in slice.edges() {
        for p in &e.polyline {
            fold(&p.x, &p.y);
        }
    }
    for v in slice.vertices() {
        fold(&v.pos.x, &v.pos.y);
    }
    let west = west.unwrap_or_else(|| rect.x1.clone());
    let top = top.unwrap_or_else(|| rect.y0.clone());
    let wspan = &west - &rect.x0;
    let tspan = &rect.y1 - &top;
    if !wspan.is_positive() || !tspan.is_positive() {
        return Err(MeridianError::NoRoom);
    }
    let n = punctures.len();
    let slots = Rat::int((n + 2) as i64);

    let mut out = Vec::new();
    for (i, (id, pos)) in punctures.iter().enumerate() {
        // Square half-side from the local clearance.
        let skip_edges: Vec<_> = slice
            .edges()
            .filter(|e| matches!(&e.ends, EdgeEnds::Open { start, end } if start == id || end == id))
            .map(|e| e.id)
            .collect();
        let c2 = slice
            .clearance2(pos, &skip_edges, &[*id])
            .unwrap_or_else(Rat::one);
        if !c2.is_positive() {
            return Err(MeridianError::NoRoom);
        }
        let h = (&c2 / &Rat::int(4)).half_power_below_sqrt() / Rat::int(2);
        let k = Rat::int((i + 1) as i64);
        let mx = &rect.x0 + &(&(&wspan / &slots) * &k);
        let ty = &rect.y1 - &(&(&(&tspan / &slots) * &k) / &Rat::int(2));
        let gap = &(&wspan / &slots) / &Rat::int(4);
        let ty2 = &rect.y1 - &(&(&(&tspan / &slots) * &k) / &Rat::int(4));
        let y_hi = &pos.y + &h;
        let y_lo = &pos.y - &h;
        let east_x = &pos.x + &h;
        let back_x = &mx - &gap;
        out.push(PLPath::closed(vec![
            basepoint.clone(),
            Point::new(mx.clone(), ty),
            Point::new(mx, y_hi.clone()),
            Point::new(east_x.clone(), y_hi),
            Point::new(east_x, y_lo.clone()),
            Point::new(back_x.clone(), y_lo),
            Point::new(back_x, ty2),
            basepoint.clone(),
        ]));
    }
    Ok(out)
}

/// Evaluate the curtain's braid monodromy on the standard meridian system
/// of its reference slice: one word per left-column puncture, in height
/// order.
pub fn meridian_monodromy(cu: &Curtain) -> Result<Vec<BraidWord>, MeridianError> {
    let r = find_reference(cu).ok_or(MeridianError::NoReferenceSlice)?;
    let lassos = build_lassos(&r.chart, &r.left_points)?;
    let mut out = Vec::new();
    for (i, lasso) in lassos.iter().enumerate() {
        let w = loop_monodromy(&r.chart, lasso).map_err(|e| MeridianError::Unreadable(i, e))?;
        out.push(w);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BandGeneratorForm;
    use crate::chart::{build_ribbon_chart, standard_placements, Rect};
    use crate::curtain::CurtainSegment;

    #[test]
    fn ribbon_band_is_the_reference_slice() {
        let forms = vec![
            BandGeneratorForm::bare(3, 1, 1).unwrap(),
            BandGeneratorForm::bare(3, 2, 1).unwrap(),
        ];
        let ribbon = build_ribbon_chart(&Rect::standard(), &standard_placements(2), &forms).unwrap();
        let cu = Curtain::new(
            3,
            vec![
                CurtainSegment::constant(Rat::int(-2), Rat::int(-1), crate::chart::Chart::empty(3)),
                CurtainSegment::constant(Rat::int(-1), Rat::int(1), ribbon.chart.clone()),
                CurtainSegment::constant(Rat::int(1), Rat::int(2), crate::chart::Chart::empty(3)),
            ],
            vec![],
        )
        .unwrap();
        // Structure-only curtain (no events), enough to read meridians.
        let words = meridian_monodromy(&cu).unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(words[0], BraidWord::from_signed(3, &[1]).unwrap());
        assert_eq!(words[1], BraidWord::from_signed(3, &[2]).unwrap());
    }

    #[test]
    fn single_free_edge_reads_one_generator() {
        let forms = vec![BandGeneratorForm::bare(2, 1, -1).unwrap()];
        let ribbon = build_ribbon_chart(&Rect::standard(), &standard_placements(1), &forms).unwrap();
        let cu = Curtain::new(
            2,
            vec![CurtainSegment::constant(
                Rat::int(0),
                Rat::int(1),
                ribbon.chart.clone(),
            )],
            vec![],
        )
        .unwrap();
        let words = meridian_monodromy(&cu).unwrap();
        assert_eq!(words, vec![BraidWord::from_signed(2, &[-1]).unwrap()]);
    }

    #[test]
    fn empty_curtain_has_no_reference() {
        let cu = Curtain::new(
            2,
            vec![CurtainSegment::constant(
                Rat::int(0),
                Rat::int(1),
                crate::chart::Chart::empty(2),
            )],
            vec![],
        )
        .unwrap();
        assert_eq!(
            meridian_monodromy(&cu),
            Err(MeridianError::NoReferenceSlice)
        );
    }
}
