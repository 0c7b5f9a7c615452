//! Exact PL geometry in the plane: points, segments, polygons and the
//! intersection predicates that chart validation and intersection words
//! depend on. All decisions are made with rational arithmetic; floating
//! point appears only in a conservative bounding-box prefilter.

use serde::{Deserialize, Serialize};

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point::new(Rat::int(x), Rat::int(y))
    }

    pub fn frac(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(Rat::new(xn, xd), Rat::new(yn, yd))
    }

    pub fn add(&self, dx: &Rat, dy: &Rat) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }

    /// Affine interpolation `(1-t)*self + t*other`.
    pub fn lerp(&self, other: &Point, t: &Rat) -> Point {
        let s = Rat::one() - t.clone();
        Point::new(&(&s * &self.x) + &(t * &other.x), &(&s * &self.y) + &(t * &other.y))
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        self.lerp(other, &Rat::new(1, 2))
    }

    /// Squared Euclidean distance, exactly.
    pub fn dist2(&self, other: &Point) -> Rat {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &(&dx * &dx) + &(&dy * &dy)
    }
}

/// Sign of the cross product `(b - a) x (c - a)`: +1 if `c` lies to the left
/// of the directed line `a -> b`, -1 to the right, 0 if collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let abx = &b.x - &a.x;
    let aby = &b.y - &a.y;
    let acx = &c.x - &a.x;
    let acy = &c.y - &a.y;
    (&(&abx * &acy) - &(&aby * &acx)).signum()
}

/// Cross product of two displacement vectors.
pub fn cross(ux: &Rat, uy: &Rat, vx: &Rat, vy: &Rat) -> Rat {
    &(ux * vy) - &(uy * vx)
}

/// True if `p` lies on the closed segment `[a, b]`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegCrossing {
    /// No common point.
    Disjoint,
    /// Transverse crossing at an interior point of both segments.
    /// Carries the crossing point and the parameter along the first segment.
    Proper { point: Point, t_first: Rat },
    /// Any other contact: endpoint touch, tangency or collinear overlap.
    Degenerate,
}

/// Classify the intersection of segments `[a1,a2]` and `[b1,b2]`.
pub fn seg_crossing(a1: &Point, a2: &Point, b1: &Point, b2: &Point) -> SegCrossing {
    let o1 = orient(a1, a2, b1);
    let o2 = orient(a1, a2, b2);
    let o3 = orient(b1, b2, a1);
    let o4 = orient(b1, b2, a2);

    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        // Proper crossing; solve for the parameter on the first segment.
        let rx = &a2.x - &a1.x;
        let ry = &a2.y - &a1.y;
        let sx = &b2.x - &b1.x;
        let sy = &b2.y - &b1.y;
        let denom = cross(&rx, &ry, &sx, &sy);
        let qpx = &b1.x - &a1.x;
        let qpy = &b1.y - &a1.y;
        let t = &cross(&qpx, &qpy, &sx, &sy) / &denom;
        let point = Point::new(&a1.x + &(&t * &rx), &a1.y + &(&t * &ry));
        return SegCrossing::Proper { point, t_first: t };
    }

    // Shared point of any other kind.
    if (o1 == 0 && on_segment(a1, a2, b1))
        || (o2 == 0 && on_segment(a1, a2, b2))
        || (o3 == 0 && on_segment(b1, b2, a1))
        || (o4 == 0 && on_segment(b1, b2, a2))
    {
        return SegCrossing::Degenerate;
    }
    SegCrossing::Disjoint
}

/// True if the two closed segments share at least one point.
pub fn segs_touch(a1: &Point, a2: &Point, b1: &Point, b2: &Point) -> bool {
    !matches!(seg_crossing(a1, a2, b1, b2), SegCrossing::Disjoint)
}

/// Squared distance from `p` to the closed segment `[a, b]`.
pub fn point_seg_dist2(p: &Point, a: &Point, b: &Point) -> Rat {
    let abx = &b.x - &a.x;
    let aby = &b.y - &a.y;
    let len2 = &(&abx * &abx) + &(&aby * &aby);
    if len2.is_zero() {
        return p.dist2(a);
    }
    let apx = &p.x - &a.x;
    let apy = &p.y - &a.y;
    let t = &(&(&apx * &abx) + &(&apy * &aby)) / &len2;
    let t = if t.is_negative() {
        Rat::zero()
    } else if t > Rat::one() {
        Rat::one()
    } else {
        t
    };
    let proj = a.lerp(b, &t);
    p.dist2(&proj)
}

/// Approximate bounding box used to prune exact segment tests. Padded so
/// that rounding can never cause a missed candidate.
#[derive(Clone, Copy, Debug)]
pub struct ApproxBox {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl ApproxBox {
    pub fn of_segment(a: &Point, b: &Point) -> Self {
        let pad = 1e-9;
        let ax = a.x.to_f64();
        let ay = a.y.to_f64();
        let bx = b.x.to_f64();
        let by = b.y.to_f64();
        ApproxBox {
            x0: ax.min(bx) - pad - 1e-9 * ax.abs().max(bx.abs()),
            y0: ay.min(by) - pad - 1e-9 * ay.abs().max(by.abs()),
            x1: ax.max(bx) + pad + 1e-9 * ax.abs().max(bx.abs()),
            y1: ay.max(by) + pad + 1e-9 * ay.abs().max(by.abs()),
        }
    }

    pub fn overlaps(&self, other: &ApproxBox) -> bool {
        self.x0 <= other.x1 && other.x0 <= self.x1 && self.y0 <= other.y1 && other.y0 <= self.y1
    }
}

/// A simple polygon given by its vertex cycle (no repeated closing point).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    pub vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Self {
        Polygon { vertices }
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Twice the signed area; positive for counterclockwise cycles.
    pub fn signed_area2(&self) -> Rat {
        let mut acc = Rat::zero();
        for (a, b) in self.edges() {
            acc += cross(&a.x, &a.y, &b.x, &b.y);
        }
        acc
    }

    /// Strict interior test (even-odd rule). Points on the boundary are
    /// reported as `Boundary`.
    pub fn locate(&self, p: &Point) -> PolygonSide {
        for (a, b) in self.edges() {
            if on_segment(a, b, p) {
                return PolygonSide::Boundary;
            }
        }
        // Ray eastwards; count crossings using the half-open rule on y.
        let mut inside = false;
        for (a, b) in self.edges() {
            let (lo, hi) = if a.y <= b.y { (a, b) } else { (b, a) };
            if p.y >= lo.y && p.y < hi.y {
                // Segment straddles the horizontal line through p.
                let o = orient(lo, hi, p);
                if o < 0 {
                    inside = !inside;
                }
            }
        }
        if inside {
            PolygonSide::Inside
        } else {
            PolygonSide::Outside
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolygonSide {
    Inside,
    Boundary,
    Outside,
}

/// Drop interior polyline joints at which the two adjacent segments are
/// collinear and co-directed. Endpoints are kept; for closed polylines the
/// first point is treated as fixed.
pub fn simplify_polyline(points: &[Point]) -> Vec<Point> {
    if points.len() <= 2 {
        return points.to_vec();
    }
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    out.push(points[0].clone());
    for i in 1..points.len() - 1 {
        let prev = out.last().unwrap();
        let cur = &points[i];
        let next = &points[i + 1];
        let collinear = orient(prev, next, cur) == 0;
        let between = collinear && on_segment(prev, next, cur);
        if !between || cur == prev {
            if cur != prev {
                out.push(cur.clone());
            }
        }
    }
    out.push(points.last().unwrap().clone());
    out
}

/// All proper self-contact violations of a polyline: non-adjacent segments
/// must be disjoint; adjacent segments share exactly their joint.
pub fn polyline_is_embedded(points: &[Point], closed: bool) -> bool {
    let segs: Vec<(&Point, &Point)> = points.windows(2).map(|w| (&w[0], &w[1])).collect();
    let n = segs.len();
    if n == 0 {
        return false;
    }
    for (a, b) in &segs {
        if a == b {
            return false; // zero-length segment
        }
    }
    let boxes: Vec<ApproxBox> = segs
        .iter()
        .map(|(a, b)| ApproxBox::of_segment(a, b))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (closed && i == 0 && j == n - 1);
            if !adjacent && !boxes[i].overlaps(&boxes[j]) {
                continue;
            }
            let (a1, a2) = segs[i];
            let (b1, b2) = segs[j];
            if adjacent {
                // The shared joint must be the only contact and the polyline
                // must not double back along itself.
                let joint = if j == i + 1 { a2 } else { a1 };
                let (other_a, other_b) = if j == i + 1 { (a1, b2) } else { (b1, a2) };
                if orient(other_a, joint, other_b) == 0 {
                    // Collinear: allowed only if the joint lies strictly
                    // between, i.e. the polyline keeps going forward.
                    if !on_segment(other_a, other_b, joint) || joint == other_a || joint == other_b
                    {
                        return false;
                    }
                }
            } else if segs_touch(a1, a2, b1, b2) {
                return false;
            }
        }
    }
    true
}
