//! Oval nests and ribbon charts. An oval nest realizes a band generator
//! `w s_k^ε w^-1` as local monodromy: a free edge labeled `k` surrounded by
//! one concentric loop per letter of `w`, the outermost carrying the first
//! letter. A ribbon chart is a disjoint union of such nests stacked along a
//! vertical axis, each symmetric about it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::BandGeneratorForm;
use crate::geom::Point;
use crate::rat::Rat;

use super::{
    validate_chart, Chart, ChartEdge, ChartVertex, EdgeEnds, EdgeId, EdgeOrientation, PLPath,
    Rect, VertexId, VertexKind,
};

#[derive(Debug, Clone, Error)]
pub enum NestError {
    #[error("placement collision: {0}")]
    Placement(String),
    #[error("placement list does not match form list")]
    LengthMismatch,
    #[error("invalid band generator form: {0}")]
    BadForm(String),
    #[error("placements must be stacked with increasing heights on a common axis")]
    BadStack,
}

/// Placement data for one nest: the free edge runs horizontally through
/// `center` with the black vertices at distance `half_width`; concentric
/// loops stay within `base_radius` of the edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestSpec {
    pub center: Point,
    pub half_width: Rat,
    pub base_radius: Rat,
}

impl NestSpec {
    pub fn new(center: Point, base_radius: Rat) -> Self {
        let half_width = &base_radius * Rat::int(2);
        NestSpec {
            center,
            half_width,
            base_radius,
        }
    }
}

/// Routing parameters for the standard meridian of a nest: the lasso
/// descends a west margin column, enters above the nest axis, crosses the
/// free edge just east of the left black vertex, and leaves below the axis.
#[derive(Debug, Clone)]
pub struct MeridianRoute {
    pub margin_x: Rat,
    pub top_y: Rat,
    pub return_gap: Rat,
    pub return_top_y: Rat,
}

/// A chart fragment holding one oval nest together with its standard
/// meridian (based at the chart basepoint) and bookkeeping handles.
#[derive(Debug, Clone)]
pub struct NestFragment {
    pub vertices: Vec<ChartVertex>,
    pub edges: Vec<ChartEdge>,
    pub left_vertex: VertexId,
    pub right_vertex: VertexId,
    pub free_edge: EdgeId,
    pub meridian: PLPath,
    pub spec: NestSpec,
}

/// Stadium-shaped loop around the horizontal segment of half-width `h`
/// centered at `c`, at clearance `rho`. Listed counterclockwise; the caps
/// use the rational 3-4-5 circle points.
fn stadium(c: &Point, h: &Rat, rho: &Rat) -> Vec<Point> {
    let c3 = |r: &Rat| r * Rat::new(3, 5);
    let c4 = |r: &Rat| r * Rat::new(4, 5);
    let east = h + rho;
    let east3 = h + &c3(rho);
    let pts = vec![
        c.add(&east, &Rat::zero()),
        c.add(&east3, &c4(rho)),
        c.add(&-&east3, &c4(rho)),
        c.add(&-&east, &Rat::zero()),
        c.add(&-&east3, &-&c4(rho)),
        c.add(&east3, &-&c4(rho)),
        c.add(&east, &Rat::zero()),
    ];
    pts
}

/// Default meridian route for a standalone nest: a margin two radii west of
/// the nest, turning just below the rectangle top.
pub fn default_route(rect: &Rect, spec: &NestSpec) -> MeridianRoute {
    let west_extent = &(&spec.center.x - &spec.half_width) - &spec.base_radius;
    let margin_x = &west_extent - &spec.base_radius;
    let top_extent = &spec.center.y + &spec.base_radius;
    let top_y = &top_extent + &(&(&rect.y1 - &top_extent) / &Rat::int(2));
    let return_gap = &spec.base_radius / &Rat::int(4);
    let return_top_y = &top_y + &(&(&rect.y1 - &top_y) / &Rat::int(2));
    MeridianRoute {
        margin_x,
        top_y,
        return_gap,
        return_top_y,
    }
}

/// Build the oval nest realizing `form` at the given placement. The
/// fragment is not yet inserted into any chart; see [`add_fragment`].
/// Vertex ids `id_base`, `id_base + 1` and edge ids `id_base ..` are used.
pub fn build_oval_nest(
    basepoint: &Point,
    spec: &NestSpec,
    form: &BandGeneratorForm,
    id_base: u64,
    route: &MeridianRoute,
) -> Result<NestFragment, NestError> {
    form.check().map_err(NestError::BadForm)?;
    let c = &spec.center;
    let h = &spec.half_width;
    let big_r = &spec.base_radius;
    if !h.is_positive() || !big_r.is_positive() {
        return Err(NestError::Placement("nest dimensions must be positive".into()));
    }

    let left = VertexId(id_base);
    let right = VertexId(id_base + 1);
    let left_pos = c.add(&-h, &Rat::zero());
    let right_pos = c.add(h, &Rat::zero());
    let vertices = vec![
        ChartVertex {
            id: left,
            kind: VertexKind::Black,
            pos: left_pos.clone(),
        },
        ChartVertex {
            id: right,
            kind: VertexKind::Black,
            pos: right_pos.clone(),
        },
    ];

    let mut edges = Vec::new();
    // Free edge: the meridian crosses it southward just east of the left
    // vertex, so sign +1 corresponds to the west-to-east orientation.
    edges.push(ChartEdge {
        id: EdgeId(id_base),
        label: form.target_index,
        orient: if form.sign > 0 {
            EdgeOrientation::Forward
        } else {
            EdgeOrientation::Reversed
        },
        polyline: vec![left_pos.clone(), right_pos.clone()],
        ends: EdgeEnds::Open {
            start: left,
            end: right,
        },
    });

    let conj = form.conjugator.letters();
    let m = conj.len() as i64;
    for (j, letter) in conj.iter().enumerate() {
        // Outermost loop carries the first conjugator letter.
        let rho = big_r * Rat::new(m - j as i64, m + 1);
        // Crossing a loop eastward on its upper-west cap reads -1 on a
        // counterclockwise polyline, so sign +1 needs the reversed (clockwise)
        // orientation.
        edges.push(ChartEdge {
            id: EdgeId(id_base + 1 + j as u64),
            label: letter.index,
            orient: if letter.sign > 0 {
                EdgeOrientation::Reversed
            } else {
                EdgeOrientation::Forward
            },
            polyline: stadium(c, h, &rho),
            ends: EdgeEnds::ClosedLoop,
        });
    }

    // Meridian lasso. rho_min is the innermost clearance (or the base radius
    // for a bare free edge).
    let rho_min = if m > 0 {
        big_r * Rat::new(1, m + 1)
    } else {
        big_r.clone()
    };
    let mu = &rho_min / &Rat::int(2);
    let nu = (&rho_min * Rat::new(3, 5)).min(h.clone());
    let enter_x = &left_pos.x + &nu;
    let y_hi = &c.y + &mu;
    let y_lo = &c.y - &mu;
    let back_x = &route.margin_x - &route.return_gap;
    let meridian = PLPath::closed(vec![
        basepoint.clone(),
        Point::new(route.margin_x.clone(), route.top_y.clone()),
        Point::new(route.margin_x.clone(), y_hi.clone()),
        Point::new(enter_x.clone(), y_hi),
        Point::new(enter_x, y_lo.clone()),
        Point::new(back_x.clone(), y_lo),
        Point::new(back_x, route.return_top_y.clone()),
        basepoint.clone(),
    ]);

    Ok(NestFragment {
        vertices,
        edges,
        left_vertex: left,
        right_vertex: right,
        free_edge: EdgeId(id_base),
        meridian,
        spec: spec.clone(),
    })
}

/// Insert a fragment into a chart, failing (and leaving the chart
/// untouched) if the merged chart does not validate.
pub fn add_fragment(chart: &mut Chart, frag: &NestFragment) -> Result<(), NestError> {
    let mut merged = chart.clone();
    for v in &frag.vertices {
        merged
            .add_vertex(v.clone())
            .map_err(|e| NestError::Placement(e.to_string()))?;
    }
    for e in &frag.edges {
        merged
            .add_edge(e.clone())
            .map_err(|e| NestError::Placement(e.to_string()))?;
    }
    let report = validate_chart(&merged);
    if !report.is_valid() {
        return Err(NestError::Placement(report.to_string()));
    }
    *chart = merged;
    Ok(())
}

/// A ribbon chart: disjoint union of oval nests, one per band generator
/// form, together with the standard meridian system.
#[derive(Debug, Clone)]
pub struct RibbonChart {
    pub chart: Chart,
    pub nests: Vec<NestFragment>,
}

impl RibbonChart {
    pub fn meridians(&self) -> Vec<PLPath> {
        self.nests.iter().map(|n| n.meridian.clone()).collect()
    }
}

/// Build a ribbon chart from explicit placements. Placements must share a
/// vertical axis, have increasing heights, and be far enough apart that the
/// stacked lassos clear each other's nests.
pub fn build_ribbon_chart(
    rect: &Rect,
    placements: &[NestSpec],
    forms: &[BandGeneratorForm],
) -> Result<RibbonChart, NestError> {
    if placements.len() != forms.len() {
        return Err(NestError::LengthMismatch);
    }
    let n = placements.len();
    if n == 0 {
        return Ok(RibbonChart {
            chart: Chart::new(forms.first().map(|f| f.degree()).unwrap_or(2), rect.clone()),
            nests: Vec::new(),
        });
    }
    let degree = forms[0].degree();
    for f in forms {
        if f.degree() != degree {
            return Err(NestError::BadForm("mixed degrees in form list".into()));
        }
    }
    for w in placements.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.center.x != b.center.x {
            return Err(NestError::BadStack);
        }
        let gap = &b.center.y - &a.center.y;
        if !(&gap - &(&a.base_radius + &b.base_radius)).is_positive() {
            return Err(NestError::BadStack);
        }
    }

    let mut chart = Chart::new(degree, rect.clone());
    let basepoint = chart.basepoint();

    // Staggered margins: lower nests get the westmost columns, so the
    // descent of one lasso never meets the east runs of another.
    let west_extent = placements
        .iter()
        .map(|s| &(&s.center.x - &s.half_width) - &s.base_radius)
        .min()
        .unwrap();
    let top_extent = placements
        .iter()
        .map(|s| &s.center.y + &s.base_radius)
        .max()
        .unwrap();
    let margin_w = &west_extent - &rect.x0;
    let margin_t = &rect.y1 - &top_extent;
    if !margin_w.is_positive() || !margin_t.is_positive() {
        return Err(NestError::Placement(
            "no room for meridian margins".into(),
        ));
    }
    let slots = Rat::int((n + 2) as i64);

    let mut nests = Vec::new();
    for (i, (spec, form)) in placements.iter().zip(forms.iter()).enumerate() {
        let k = Rat::int((i + 1) as i64);
        let column_gap = &margin_w / &slots;
        let route = MeridianRoute {
            margin_x: &rect.x0 + &(&column_gap * &k),
            top_y: &rect.y1 - &(&(&margin_t / &slots) * &k) / &Rat::int(2),
            return_gap: &column_gap / &Rat::int(4),
            return_top_y: &rect.y1 - &(&(&margin_t / &slots) * &k) / &Rat::int(4),
        };
        let frag = build_oval_nest(&basepoint, spec, form, (i as u64 + 1) * 100, &route)?;
        add_fragment(&mut chart, &frag)?;
        nests.push(frag);
    }
    Ok(RibbonChart { chart, nests })
}

/// The canonical stacked layout over the standard rectangle: centers on the
/// y-axis at heights `i / (n + 1)`, free edges spanning `[-1/2, 1/2]`.
pub fn standard_placements(n: usize) -> Vec<NestSpec> {
    let denom = (n + 1) as i64;
    (1..=n as i64)
        .map(|i| NestSpec {
            center: Point::new(Rat::zero(), Rat::new(i, denom)),
            half_width: Rat::new(1, 2),
            base_radius: Rat::new(1, 4 * denom),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{words_equal, BraidWord};
    use crate::chart::loop_monodromy;

    fn form(degree: usize, conj: &[i64], k: usize, sign: i8) -> BandGeneratorForm {
        BandGeneratorForm::new(BraidWord::from_signed(degree, conj).unwrap(), k, sign).unwrap()
    }

    #[test]
    fn bare_free_edge_reads_single_generator() {
        let rect = Rect::standard();
        let mut chart = Chart::new(2, rect.clone());
        let spec = NestSpec::new(Point::frac(0, 1, 1, 2), Rat::new(1, 10));
        let f = form(2, &[], 1, 1);
        let route = default_route(&rect, &spec);
        let frag = build_oval_nest(&chart.basepoint(), &spec, &f, 0, &route).unwrap();
        add_fragment(&mut chart, &frag).unwrap();
        let w = loop_monodromy(&chart, &frag.meridian).unwrap();
        assert_eq!(w, BraidWord::from_signed(2, &[1]).unwrap());
    }

    #[test]
    fn single_loop_nest_reads_conjugate() {
        let rect = Rect::standard();
        let mut chart = Chart::new(3, rect.clone());
        let spec = NestSpec::new(Point::frac(0, 1, 1, 2), Rat::new(1, 10));
        let f = form(3, &[-2], 1, 1);
        let route = default_route(&rect, &spec);
        let frag = build_oval_nest(&chart.basepoint(), &spec, &f, 0, &route).unwrap();
        add_fragment(&mut chart, &frag).unwrap();
        let w = loop_monodromy(&chart, &frag.meridian).unwrap();
        assert_eq!(w, BraidWord::from_signed(3, &[-2, 1, 2]).unwrap());
        assert_eq!(chart.edge_count(), 2);
    }

    #[test]
    fn nest_meridian_reads_band_word_literally() {
        let rect = Rect::standard();
        for (conj, k, sign) in [
            (vec![1i64, -2, 1], 2usize, -1i8),
            (vec![3, 3, -1], 1, 1),
            (vec![2], 3, 1),
        ] {
            let mut chart = Chart::new(4, rect.clone());
            let spec = NestSpec::new(Point::frac(0, 1, 1, 2), Rat::new(1, 10));
            let f = form(4, &conj, k, sign);
            let route = default_route(&rect, &spec);
            let frag = build_oval_nest(&chart.basepoint(), &spec, &f, 0, &route).unwrap();
            add_fragment(&mut chart, &frag).unwrap();
            let w = loop_monodromy(&chart, &frag.meridian).unwrap();
            assert_eq!(w, f.word(), "conjugator {conj:?}");
            assert!(words_equal(&w, &f.word()).unwrap());
        }
    }

    #[test]
    fn ribbon_chart_of_two_bare_edges() {
        let forms = vec![form(3, &[], 1, 1), form(3, &[], 2, 1)];
        let ribbon =
            build_ribbon_chart(&Rect::standard(), &standard_placements(2), &forms).unwrap();
        assert_eq!(ribbon.chart.edge_count(), 2);
        assert_eq!(ribbon.chart.vertex_count(), 4);
        for (frag, f) in ribbon.nests.iter().zip(forms.iter()) {
            let w = loop_monodromy(&ribbon.chart, &frag.meridian).unwrap();
            assert_eq!(w, f.word());
        }
    }

    #[test]
    fn ribbon_chart_with_oval_nest() {
        let forms = vec![form(3, &[], 2, 1), form(3, &[-2], 1, 1)];
        let ribbon =
            build_ribbon_chart(&Rect::standard(), &standard_placements(2), &forms).unwrap();
        assert_eq!(ribbon.chart.edge_count(), 3);
        for (frag, f) in ribbon.nests.iter().zip(forms.iter()) {
            let w = loop_monodromy(&ribbon.chart, &frag.meridian).unwrap();
            assert_eq!(w, f.word());
        }
    }

    #[test]
    fn empty_form_list_gives_empty_chart() {
        let ribbon = build_ribbon_chart(&Rect::standard(), &[], &[]).unwrap();
        assert!(ribbon.chart.is_empty());
    }

    #[test]
    fn overlapping_placements_rejected() {
        let forms = vec![form(3, &[], 1, 1), form(3, &[], 2, 1)];
        let placements = vec![
            NestSpec {
                center: Point::frac(0, 1, 1, 2),
                half_width: Rat::new(1, 2),
                base_radius: Rat::new(1, 10),
            },
            NestSpec {
                center: Point::frac(0, 1, 11, 20),
                half_width: Rat::new(1, 2),
                base_radius: Rat::new(1, 10),
            },
        ];
        assert!(build_ribbon_chart(&Rect::standard(), &placements, &forms).is_err());
    }
}
