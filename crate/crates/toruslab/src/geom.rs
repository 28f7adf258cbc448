//! Exact segment predicates: orientation, intersection, overlap detection,
//! squared distances and circular direction order.

use crate::rat::{sign, QPoint, Rat};
use num::{One, Signed, Zero};
use std::cmp::Ordering;

/// Sign of the signed area of the triangle (a, b, c):
/// +1 counterclockwise, -1 clockwise, 0 collinear.
pub fn orient(a: &QPoint, b: &QPoint, c: &QPoint) -> i32 {
    let ab = b - a;
    let ac = c - a;
    sign(&ab.cross(&ac))
}

/// Closed bounding box with rational corners.
#[derive(Clone, Debug)]
pub struct BBox {
    pub min_x: Rat,
    pub min_y: Rat,
    pub max_x: Rat,
    pub max_y: Rat,
}

impl BBox {
    pub fn of_points<'a>(pts: impl IntoIterator<Item = &'a QPoint>) -> Option<BBox> {
        let mut it = pts.into_iter();
        let first = it.next()?;
        let mut bb = BBox {
            min_x: first.x.clone(),
            min_y: first.y.clone(),
            max_x: first.x.clone(),
            max_y: first.y.clone(),
        };
        for p in it {
            if p.x < bb.min_x {
                bb.min_x = p.x.clone();
            }
            if p.x > bb.max_x {
                bb.max_x = p.x.clone();
            }
            if p.y < bb.min_y {
                bb.min_y = p.y.clone();
            }
            if p.y > bb.max_y {
                bb.max_y = p.y.clone();
            }
        }
        Some(bb)
    }

    pub fn intersects(&self, other: &BBox) -> bool {
        self.min_x <= other.max_x
            && other.min_x <= self.max_x
            && self.min_y <= other.max_y
            && other.min_y <= self.max_y
    }

    pub fn contains_point(&self, p: &QPoint) -> bool {
        self.min_x <= p.x && p.x <= self.max_x && self.min_y <= p.y && p.y <= self.max_y
    }
}

/// Result of intersecting two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegX {
    Empty,
    /// A single intersection point.
    Point(QPoint),
    /// A shared sub-segment of positive length.
    Overlap(QPoint, QPoint),
}

pub fn on_segment(p: &QPoint, a: &QPoint, b: &QPoint) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let ap = p - a;
    let ab = b - a;
    let t = ap.dot(&ab);
    t >= Rat::zero() && t <= ab.norm2()
}

/// Exact intersection of the closed segments [a1, a2] and [b1, b2].
pub fn seg_intersect(a1: &QPoint, a2: &QPoint, b1: &QPoint, b2: &QPoint) -> SegX {
    let da = a2 - a1;
    let db = b2 - b1;
    let denom = da.cross(&db);
    if !denom.is_zero() {
        // Proper lines crossing: solve a1 + t*da = b1 + s*db.
        let diff = b1 - a1;
        let t = diff.cross(&db) / denom.clone();
        let s = diff.cross(&da) / denom;
        if t >= Rat::zero() && t <= Rat::one() && s >= Rat::zero() && s <= Rat::one() {
            return SegX::Point(a1 + &da.scale(&t));
        }
        return SegX::Empty;
    }
    // Parallel. Collinear?
    if orient(a1, a2, b1) != 0 {
        return SegX::Empty;
    }
    // Collinear: project on the dominant axis of da (or db if a degenerate).
    let axis = {
        let d = if da.x.is_zero() && da.y.is_zero() { &db } else { &da };
        if d.x.clone().abs() >= d.y.clone().abs() {
            0
        } else {
            1
        }
    };
    let key = |p: &QPoint| if axis == 0 { p.x.clone() } else { p.y.clone() };
    let (mut alo, mut ahi) = (key(a1), key(a2));
    let (mut plo, mut phi) = (a1.clone(), a2.clone());
    if alo > ahi {
        std::mem::swap(&mut alo, &mut ahi);
        std::mem::swap(&mut plo, &mut phi);
    }
    let (mut blo, mut bhi) = (key(b1), key(b2));
    let (mut qlo, mut qhi) = (b1.clone(), b2.clone());
    if blo > bhi {
        std::mem::swap(&mut blo, &mut bhi);
        std::mem::swap(&mut qlo, &mut qhi);
    }
    let (lo, lo_pt) = if alo >= blo { (alo, plo) } else { (blo, qlo) };
    let (hi, hi_pt) = if ahi <= bhi { (ahi, phi) } else { (bhi, qhi) };
    match lo.cmp(&hi) {
        Ordering::Greater => SegX::Empty,
        Ordering::Equal => SegX::Point(lo_pt),
        Ordering::Less => SegX::Overlap(lo_pt, hi_pt),
    }
}

/// Squared Euclidean distance from a point to a closed segment.
pub fn point_segment_dist2(p: &QPoint, a: &QPoint, b: &QPoint) -> Rat {
    let ab = b - a;
    let n2 = ab.norm2();
    if n2.is_zero() {
        return (p - a).norm2();
    }
    let t = (p - a).dot(&ab) / n2.clone();
    let t = if t < Rat::zero() {
        Rat::zero()
    } else if t > Rat::one() {
        Rat::one()
    } else {
        t
    };
    let proj = a + &ab.scale(&t);
    (p - &proj).norm2()
}

/// Squared minimal distance between two closed segments.
pub fn segment_segment_dist2(a1: &QPoint, a2: &QPoint, b1: &QPoint, b2: &QPoint) -> Rat {
    if seg_intersect(a1, a2, b1, b2) != SegX::Empty {
        return Rat::zero();
    }
    let mut best = point_segment_dist2(a1, b1, b2);
    for d in [
        point_segment_dist2(a2, b1, b2),
        point_segment_dist2(b1, a1, a2),
        point_segment_dist2(b2, a1, a2),
    ] {
        if d < best {
            best = d;
        }
    }
    best
}

/// Total order on nonzero directions, counterclockwise from the positive x-axis.
pub fn cmp_direction(u: &QPoint, v: &QPoint) -> Ordering {
    let half = |d: &QPoint| -> u8 {
        // 0 = upper half (y > 0, or y = 0 and x > 0), 1 = lower half.
        match sign(&d.y) {
            1 => 0,
            -1 => 1,
            _ => {
                if sign(&d.x) > 0 {
                    0
                } else {
                    1
                }
            }
        }
    };
    let (hu, hv) = (half(u), half(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    // Same half-plane: order by cross product.
    match sign(&u.cross(v)) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

/// Is `x` strictly inside the counterclockwise open arc from `a` to `b`?
/// All three must be nonzero directions; `a` and `b` must not be parallel-equal.
pub fn dir_strictly_between_ccw(x: &QPoint, a: &QPoint, b: &QPoint) -> bool {
    let oa = cmp_direction(a, x);
    let ob = cmp_direction(x, b);
    let ab = cmp_direction(a, b);
    match ab {
        Ordering::Less => oa == Ordering::Less && ob == Ordering::Less,
        Ordering::Greater => oa == Ordering::Less || ob == Ordering::Less,
        Ordering::Equal => false,
    }
}

/// Clip a polygon against the half plane `dot(n, p) <= c` (Sutherland-Hodgman).
pub fn clip_halfplane(poly: &[QPoint], n: &QPoint, c: &Rat) -> Vec<QPoint> {
    let mut out = Vec::new();
    let k = poly.len();
    if k == 0 {
        return out;
    }
    for i in 0..k {
        let cur = &poly[i];
        let nxt = &poly[(i + 1) % k];
        let dc = n.dot(cur);
        let dn = n.dot(nxt);
        let cur_in = dc <= *c;
        let nxt_in = dn <= *c;
        if cur_in {
            out.push(cur.clone());
        }
        if cur_in != nxt_in {
            // Edge crosses the boundary line.
            let t = (c - &dc) / (&dn - &dc);
            let d = nxt - cur;
            out.push(cur + &d.scale(&t));
        }
    }
    out
}

/// Clip a polygon to an axis-aligned rectangle.
pub fn clip_to_rect(poly: &[QPoint], min: &QPoint, max: &QPoint) -> Vec<QPoint> {
    let mut p = poly.to_vec();
    p = clip_halfplane(&p, &QPoint::from_ints(1, 0), &max.x);
    p = clip_halfplane(&p, &QPoint::from_ints(-1, 0), &-min.x.clone());
    p = clip_halfplane(&p, &QPoint::from_ints(0, 1), &max.y);
    p = clip_halfplane(&p, &QPoint::from_ints(0, -1), &-min.y.clone());
    p
}

/// Signed area (shoelace) of a polygon; positive for counterclockwise.
pub fn polygon_area2(poly: &[QPoint]) -> Rat {
    let k = poly.len();
    let mut acc = Rat::zero();
    for i in 0..k {
        acc += poly[i].cross(&poly[(i + 1) % k]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    fn p(x: i64, y: i64) -> QPoint {
        QPoint::from_ints(x, y)
    }

    #[test]
    fn proper_crossing() {
        match seg_intersect(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)) {
            SegX::Point(q) => assert_eq!(q, QPoint::from_ints(1, 1)),
            other => panic!("expected point, got {other:?}"),
        }
    }

    #[test]
    fn endpoint_touch_counts_as_point() {
        match seg_intersect(&p(0, 0), &p(1, 0), &p(1, 0), &p(2, 3)) {
            SegX::Point(q) => assert_eq!(q, p(1, 0)),
            other => panic!("expected point, got {other:?}"),
        }
    }

    #[test]
    fn collinear_overlap_detected() {
        match seg_intersect(&p(0, 0), &p(3, 0), &p(1, 0), &p(5, 0)) {
            SegX::Overlap(a, b) => {
                assert_eq!((a, b), (p(1, 0), p(3, 0)));
            }
            other => panic!("expected overlap, got {other:?}"),
        }
        assert_eq!(seg_intersect(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)), SegX::Empty);
    }

    #[test]
    fn vertical_collinear_overlap() {
        match seg_intersect(&p(0, 0), &p(0, 2), &p(0, 1), &p(0, 5)) {
            SegX::Overlap(a, b) => assert_eq!((a, b), (p(0, 1), p(0, 2))),
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn direction_order_is_circular() {
        let dirs = [p(1, 0), p(1, 1), p(0, 1), p(-1, 1), p(-1, 0), p(-1, -1), p(0, -1), p(1, -1)];
        for w in dirs.windows(2) {
            assert_eq!(cmp_direction(&w[0], &w[1]), Ordering::Less);
        }
        assert!(dir_strictly_between_ccw(&p(0, 1), &p(1, 0), &p(-1, 0)));
        assert!(!dir_strictly_between_ccw(&p(0, -1), &p(1, 0), &p(-1, 0)));
        // Wrap-around arc.
        assert!(dir_strictly_between_ccw(&p(1, 0), &p(1, -1), &p(1, 1)));
    }

    #[test]
    fn clipping_area() {
        let tri = [p(0, 0), p(2, 0), p(0, 1)];
        let clipped = clip_to_rect(&tri, &p(0, 0), &QPoint::new(rat_i(1), rat_i(1)));
        let a2 = polygon_area2(&clipped);
        assert_eq!(a2, rat(3, 2)); // area 3/4, doubled
    }
}
