//! Essential simple closed PL curves on the torus, stored as exact lifts.
//!
//! A curve is one period of its lift: vertices `v[0] .. v[k-1]` in the plane
//! plus a primitive closure vector `h`, with the final edge running from
//! `v[k-1]` to `v[0] + h`. The projection mod Z^2 must be injective.
//! Canonical form merges collinear vertices and starts at the vertex whose
//! reduction into `[0,1)^2` is lexicographically least, so structural
//! equality is semantic equality of the projected curves.

use crate::cylinder::StripCurve;
use crate::geom::{dir_strictly_between_ccw, on_segment, seg_intersect, BBox, SegX};
use crate::rat::{rat_i, IMat, IVec, QPoint, Rat};
use crate::Error;
use num::Zero;
use std::collections::BTreeSet;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct HomologyClass {
    pub p: i64,
    pub q: i64,
}

impl HomologyClass {
    pub fn new(p: i64, q: i64) -> Self {
        HomologyClass { p, q }
    }

    pub fn as_ivec(&self) -> IVec {
        IVec(self.p, self.q)
    }

    pub fn is_primitive(&self) -> bool {
        self.as_ivec().is_primitive()
    }

    /// Equal up to global sign (isotopy of unoriented curves).
    pub fn parallel_to(&self, other: &HomologyClass) -> bool {
        self.as_ivec().canonical_sign() == other.as_ivec().canonical_sign()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusCurve {
    verts: Vec<QPoint>,
    closure: HomologyClass,
}

impl std::fmt::Debug for TorusCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TorusCurve({:?}, closure ({}, {}))",
            self.verts, self.closure.p, self.closure.q
        )
    }
}

/// Detailed result of counting torus intersection points of two curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub count: usize,
    pub all_transverse: bool,
    /// Torus points (in `[0,1)^2`) of non-transverse contact.
    pub touch_points: Vec<QPoint>,
}

impl TorusCurve {
    /// Validate a raw vertex list against all curve invariants and bring it
    /// to canonical form.
    ///
    /// The list may spell out the terminal lift point `v[0] + closure`
    /// explicitly; for lists of length >= 2 it must. Error precedence follows
    /// the contract: essentiality first, then closedness, then embeddedness.
    pub fn validate(raw: Vec<QPoint>, closure: HomologyClass) -> Result<TorusCurve, Error> {
        if raw.is_empty() {
            return Err(Error::DegenerateCurve("empty vertex list".into()));
        }
        if !closure.is_primitive() {
            return Err(Error::Inessential);
        }
        let mut verts = raw;
        if verts.len() >= 2 {
            let expected = &verts[0] + &closure.as_ivec().to_qpoint();
            if *verts.last().unwrap() != expected {
                return Err(Error::NotClosed);
            }
            verts.pop();
        }
        let c = Self::canonicalize(verts, closure)?;
        c.check_simple()?;
        Ok(c)
    }

    fn canonicalize(mut verts: Vec<QPoint>, closure: HomologyClass) -> Result<TorusCurve, Error> {
        let h = closure.as_ivec().to_qpoint();
        let mut dedup: Vec<QPoint> = Vec::with_capacity(verts.len());
        for v in verts.drain(..) {
            if dedup.last() != Some(&v) {
                dedup.push(v);
            }
        }
        while dedup.len() > 1 && *dedup.last().unwrap() == &dedup[0] + &h {
            dedup.pop();
        }
        // Merge collinear vertices, including across the closure edge.
        loop {
            let mut removed = false;
            let mut i = 0;
            while i < dedup.len() && dedup.len() > 1 {
                let k = dedup.len();
                let prev = if i == 0 { &dedup[k - 1] - &h } else { dedup[i - 1].clone() };
                let next = if i == k - 1 { &dedup[0] + &h } else { dedup[i + 1].clone() };
                let ab = &dedup[i] - &prev;
                let bc = &next - &dedup[i];
                if ab.cross(&bc).is_zero() && crate::rat::sign(&ab.dot(&bc)) > 0 {
                    dedup.remove(i);
                    removed = true;
                } else {
                    i += 1;
                }
            }
            if !removed {
                break;
            }
        }
        // Canonical start: vertex with lexicographically least reduction.
        let mut best = 0usize;
        let mut best_key = dedup[0].frac();
        for (i, v) in dedup.iter().enumerate().skip(1) {
            let key = v.frac();
            let kk = (key.x.clone(), key.y.clone());
            let bk = (best_key.x.clone(), best_key.y.clone());
            if kk < bk {
                best_key = key;
                best = i;
            }
        }
        let k = dedup.len();
        let offset = &dedup[best] - &dedup[best].frac();
        let mut out = Vec::with_capacity(k);
        for j in 0..k {
            let idx = (best + j) % k;
            let wrap = if best + j >= k { h.clone() } else { QPoint::zero() };
            let v = &dedup[idx] + &wrap;
            out.push(&v - &offset);
        }
        Ok(TorusCurve { verts: out, closure })
    }

    /// Embeddedness of the projection: the fundamental path must be simple,
    /// and the full lift must avoid all its integer translates except the
    /// closure-adjacent endpoint identifications.
    fn check_simple(&self) -> Result<(), Error> {
        let edges = self.period_edges();
        let k = edges.len();
        for i in 0..k {
            for j in (i + 1)..k {
                match seg_intersect(&edges[i].0, &edges[i].1, &edges[j].0, &edges[j].1) {
                    SegX::Empty => {}
                    SegX::Point(p) => {
                        let consecutive = j == i + 1 && p == edges[i].1;
                        if !consecutive {
                            return Err(Error::SelfIntersecting);
                        }
                    }
                    SegX::Overlap(_, _) => return Err(Error::SelfIntersecting),
                }
            }
        }
        // Translate checks over the certified window.
        let bb = self.bbox();
        let h = self.closure.as_ivec();
        let wx = (&bb.max_x - &bb.min_x).ceil().to_integer();
        let wy = (&bb.max_y - &bb.min_y).ceil().to_integer();
        let wx: i64 = wx.try_into().unwrap_or(0);
        let wy: i64 = wy.try_into().unwrap_or(0);
        let start = self.verts[0].clone();
        let end = &start + &h.to_qpoint();
        for dx in -(wx + 1)..=(wx + 1) {
            for dy in -(wy + 1)..=(wy + 1) {
                if dx == 0 && dy == 0 {
                    continue;
                }
                let w = IVec(dx, dy);
                let shift = w.to_qpoint();
                for (a, b) in &edges {
                    for (c, d) in &edges {
                        let c = c + &shift;
                        let d = d + &shift;
                        match seg_intersect(a, b, &c, &d) {
                            SegX::Empty => {}
                            SegX::Point(p) => {
                                // Only the chain identification is allowed:
                                // translate by +-h sharing one endpoint.
                                let ok = (w == h && p == end && (p == c || p == d))
                                    || (w == -h && p == start && (p == c || p == d));
                                if !ok {
                                    return Err(Error::SelfIntersecting);
                                }
                            }
                            SegX::Overlap(_, _) => return Err(Error::SelfIntersecting),
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[QPoint] {
        &self.verts
    }

    /// Canonicalize a vertex list known to describe a valid curve (e.g. the
    /// exact image of a valid curve under a homeomorphism) without the
    /// quadratic embeddedness re-check.
    pub fn from_verts_canonical(
        verts: Vec<QPoint>,
        closure: HomologyClass,
    ) -> Result<TorusCurve, Error> {
        Self::canonicalize(verts, closure)
    }

    /// Re-run the full embeddedness check.
    pub fn revalidate(&self) -> Result<(), Error> {
        self.check_simple()
    }

    pub fn homology_class(&self) -> HomologyClass {
        self.closure
    }

    pub fn isotopic_to(&self, other: &TorusCurve) -> bool {
        self.closure.parallel_to(&other.closure)
    }

    /// Edges of one fundamental period of the lift.
    pub fn period_edges(&self) -> Vec<(QPoint, QPoint)> {
        let k = self.verts.len();
        let h = self.closure.as_ivec().to_qpoint();
        (0..k)
            .map(|i| {
                let a = self.verts[i].clone();
                let b = if i + 1 < k { self.verts[i + 1].clone() } else { &self.verts[0] + &h };
                (a, b)
            })
            .collect()
    }

    pub fn bbox(&self) -> BBox {
        let h = self.closure.as_ivec().to_qpoint();
        let mut pts = self.verts.clone();
        pts.push(&self.verts[0] + &h);
        BBox::of_points(pts.iter()).unwrap()
    }

    pub fn translate(&self, by: &QPoint) -> TorusCurve {
        let verts = self.verts.iter().map(|v| v + by).collect();
        Self::canonicalize(verts, self.closure).expect("translate preserves validity")
    }

    /// Image under a unimodular integer matrix (an exact torus homeomorphism).
    pub fn map_unimodular(&self, m: &IMat) -> TorusCurve {
        assert!(m.det().abs() == 1);
        let verts: Vec<QPoint> = self.verts.iter().map(|v| m.apply_point(v)).collect();
        let closure = HomologyClass::new(
            m.a * self.closure.p + m.b * self.closure.q,
            m.c * self.closure.p + m.d * self.closure.q,
        );
        let c = Self::canonicalize(verts, closure).expect("unimodular image stays valid");
        debug_assert!(c.check_simple().is_ok());
        c
    }

    /// Standard cylinder position for a chart basis `m` that sends the
    /// closure class to `(1, 0)`.
    pub fn to_strip(&self, m: &IMat) -> StripCurve {
        let img = self.map_unimodular(m);
        debug_assert_eq!(img.closure, HomologyClass::new(1, 0));
        StripCurve::new(img.verts.clone()).expect("valid curve maps to valid strip curve")
    }

    /// Rebuild a torus curve from a standard-position cylinder curve.
    pub fn from_strip(s: &StripCurve, m_inv: &IMat) -> TorusCurve {
        let verts: Vec<QPoint> = s.vertices().iter().map(|v| m_inv.apply_point(v)).collect();
        let closure = HomologyClass::new(m_inv.a, m_inv.c);
        let c = Self::canonicalize(verts, closure).expect("strip curve maps to valid curve");
        debug_assert!(c.check_simple().is_ok());
        c
    }

    /// Local incoming/outgoing directions of the curve at a torus point that
    /// lies on it. Returns `None` when the point is off the curve.
    pub fn directions_at(&self, torus_pt: &QPoint) -> Option<(QPoint, QPoint)> {
        let edges = self.period_edges();
        let k = edges.len();
        for (i, (a, b)) in edges.iter().enumerate() {
            let bb = BBox::of_points([a, b]).unwrap();
            let kx_lo = (&bb.min_x - &torus_pt.x).floor().to_integer();
            let kx_hi = (&bb.max_x - &torus_pt.x).ceil().to_integer();
            let ky_lo = (&bb.min_y - &torus_pt.y).floor().to_integer();
            let ky_hi = (&bb.max_y - &torus_pt.y).ceil().to_integer();
            let mut kx = kx_lo.clone();
            while kx <= kx_hi {
                let mut ky = ky_lo.clone();
                while ky <= ky_hi {
                    let p = QPoint::new(
                        &torus_pt.x + &Rat::from_integer(kx.clone()),
                        &torus_pt.y + &Rat::from_integer(ky.clone()),
                    );
                    if on_segment(&p, a, b) {
                        let d = b - a;
                        if p == *a {
                            // Vertex: incoming from the previous edge.
                            let prev = &edges[(i + k - 1) % k];
                            let din = &prev.1 - &prev.0;
                            return Some((din, d));
                        } else if p == *b {
                            let next = &edges[(i + 1) % k];
                            let dout = &next.1 - &next.0;
                            return Some((d, dout));
                        } else {
                            return Some((d.clone(), d));
                        }
                    }
                    ky += 1;
                }
                kx += 1;
            }
        }
        None
    }

    /// Exact torus intersection report for two valid curves.
    pub fn intersection_report(&self, other: &TorusCurve) -> Result<IntersectionReport, Error> {
        let pts = self.torus_intersection_points(other)?;
        let mut touch = Vec::new();
        for z in &pts {
            if !crossing_at(self, other, z) {
                touch.push(z.clone());
            }
        }
        Ok(IntersectionReport {
            count: pts.len(),
            all_transverse: touch.is_empty(),
            touch_points: touch,
        })
    }

    /// The set of torus points where the two curves meet.
    pub fn torus_intersection_points(&self, other: &TorusCurve) -> Result<Vec<QPoint>, Error> {
        let mut set: BTreeSet<(Rat, Rat)> = BTreeSet::new();
        let bb1 = self.bbox();
        let edges1 = self.period_edges();
        let edges2 = other.period_edges();
        let bb2 = other.bbox();
        let dx_lo = (&bb1.min_x - &bb2.max_x).floor().to_integer();
        let dx_hi = (&bb1.max_x - &bb2.min_x).ceil().to_integer();
        let dy_lo = (&bb1.min_y - &bb2.max_y).floor().to_integer();
        let dy_hi = (&bb1.max_y - &bb2.min_y).ceil().to_integer();
        let mut dx = dx_lo;
        while dx <= dx_hi {
            let mut dy = dy_lo.clone();
            while dy <= dy_hi {
                let shift = QPoint::new(
                    Rat::from_integer(dx.clone()),
                    Rat::from_integer(dy.clone()),
                );
                for (a, b) in &edges1 {
                    for (c, d) in &edges2 {
                        let c = c + &shift;
                        let d = d + &shift;
                        match seg_intersect(a, b, &c, &d) {
                            SegX::Empty => {}
                            SegX::Point(p) => {
                                let f = p.frac();
                                set.insert((f.x, f.y));
                            }
                            SegX::Overlap(_, _) => return Err(Error::OverlappingSegments),
                        }
                    }
                }
                dy += 1;
            }
            dx += 1;
        }
        Ok(set.into_iter().map(|(x, y)| QPoint::new(x, y)).collect())
    }

    /// Complete list of Z^2-translate cosets of the full lift that meet a
    /// closed box, each as a finite lifted PL path covering the box.
    pub fn translates_in_box(&self, min: &QPoint, max: &QPoint) -> Vec<LiftedPath> {
        assert!(min.x < max.x && min.y < max.y, "box must be nondegenerate");
        let h = self.closure.as_ivec();
        let w = complete_basis(h);
        // Coset level functional: phi(x) = det(h, x) (integer-valued on the lattice
        // up to the lift's rational extent); phi(h) = 0, phi(w) = det(h, w) = +-1.
        let phi = |p: &QPoint| -> Rat { &p.x * rat_i(-h.1) + &p.y * rat_i(h.0) };
        let s = h.det(w); // +-1
        let edges = self.period_edges();
        let mut phis: Vec<Rat> = Vec::new();
        for (a, b) in &edges {
            phis.push(phi(a));
            phis.push(phi(b));
        }
        let phi_min = phis.iter().min().unwrap().clone();
        let phi_max = phis.iter().max().unwrap().clone();
        let corners = [
            min.clone(),
            QPoint::new(max.x.clone(), min.y.clone()),
            max.clone(),
            QPoint::new(min.x.clone(), max.y.clone()),
        ];
        let bphi: Vec<Rat> = corners.iter().map(|c| phi(c)).collect();
        let bphi_min = bphi.iter().min().unwrap().clone();
        let bphi_max = bphi.iter().max().unwrap().clone();
        // phi(Lambda + k w) = [phi_min, phi_max] + k * s.
        let k_lo = ((&bphi_min - &phi_max) * rat_i(s)).floor().to_integer();
        let k_hi = ((&bphi_max - &phi_min) * rat_i(s)).ceil().to_integer();
        let (k_lo, k_hi) = if k_lo <= k_hi { (k_lo, k_hi) } else { (k_hi, k_lo) };
        let mut out = Vec::new();
        let mut k = k_lo;
        while k <= k_hi {
            let ki: i64 = k.clone().try_into().unwrap_or(0);
            let coset = w * ki;
            if let Some(path) = self.coset_path_in_box(coset, min, max) {
                out.push(path);
            }
            k += 1;
        }
        out
    }

    fn coset_path_in_box(&self, coset: IVec, min: &QPoint, max: &QPoint) -> Option<LiftedPath> {
        let h = self.closure.as_ivec();
        let edges = self.period_edges();
        // Second coordinate along the lift: psi(x) = det(x, w')/..., simpler:
        // find the n-range from the box and lift extents along both axes.
        let bb = self.bbox();
        let c = coset.to_qpoint();
        // Solve for n: bbox(P) + c + n*h intersects box.
        let n_range = |lo_p: &Rat, hi_p: &Rat, lo_b: &Rat, hi_b: &Rat, step: i64| -> Option<(i64, i64)> {
            if step == 0 {
                return None;
            }
            // lo_p + n*step <= hi_b and hi_p + n*step >= lo_b
            let a = (lo_b - hi_p) / rat_i(step);
            let b = (hi_b - lo_p) / rat_i(step);
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            let lo = a.ceil().to_integer().try_into().ok()?;
            let hi = b.floor().to_integer().try_into().ok()?;
            Some((lo, hi))
        };
        let rx = n_range(
            &(&bb.min_x + &c.x),
            &(&bb.max_x + &c.x),
            &min.x,
            &max.x,
            h.0,
        );
        let ry = n_range(
            &(&bb.min_y + &c.y),
            &(&bb.max_y + &c.y),
            &min.y,
            &max.y,
            h.1,
        );
        let (n_lo, n_hi) = match (rx, ry) {
            (Some((a, b)), Some((cc, d))) => (a.max(cc), b.min(d)),
            (Some(r), None) => r,
            (None, Some(r)) => r,
            (None, None) => return None,
        };
        if n_lo > n_hi {
            return None;
        }
        let mut hit = false;
        'outer: for n in n_lo..=n_hi {
            let shift = &c + &(h * n).to_qpoint();
            for (a, b) in &edges {
                if segment_meets_box(&(a + &shift), &(b + &shift), min, max) {
                    hit = true;
                    break 'outer;
                }
            }
        }
        if !hit {
            return None;
        }
        let mut verts = Vec::new();
        for n in n_lo..=n_hi {
            let shift = &c + &(h * n).to_qpoint();
            for (i, v) in self.verts.iter().enumerate() {
                if n > n_lo || i > 0 {
                    // avoid duplicating the chaining vertex
                }
                verts.push(v + &shift);
            }
        }
        // terminal point of the last piece
        let last_shift = &c + &(h * (n_hi + 1)).to_qpoint();
        verts.push(&self.verts[0] + &last_shift);
        Some(LiftedPath { coset, vertices: verts })
    }
}

/// A finite portion of one Z^2-translate coset of a curve's full lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPath {
    pub coset: IVec,
    pub vertices: Vec<QPoint>,
}

/// A primitive vector completing `h` to a lattice basis (|det| = 1).
pub fn complete_basis(h: IVec) -> IVec {
    assert!(h.is_primitive());
    // Extended gcd: find (x, y) with h.0 * y - h.1 * x = 1.
    let (g, a, b) = egcd(h.0, h.1);
    debug_assert_eq!(g.abs(), 1);
    // h.0 * a + h.1 * b = g; want det(h, w) = h.0*w.1 - h.1*w.0 = 1.
    // Take w = (-b*g, a*g).
    let w = IVec(-b * g, a * g);
    debug_assert_eq!(h.det(w), 1);
    w
}

fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

fn segment_meets_box(a: &QPoint, b: &QPoint, min: &QPoint, max: &QPoint) -> bool {
    let inside = |p: &QPoint| {
        p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y
    };
    if inside(a) || inside(b) {
        return true;
    }
    let corners = [
        min.clone(),
        QPoint::new(max.x.clone(), min.y.clone()),
        max.clone(),
        QPoint::new(min.x.clone(), max.y.clone()),
    ];
    for i in 0..4 {
        if seg_intersect(a, b, &corners[i], &corners[(i + 1) % 4]) != SegX::Empty {
            return true;
        }
    }
    false
}

/// Does `other` cross `self_c` transversely at the shared torus point `z`?
/// A contact where `other` locally stays on one side of `self_c` is an
/// unstable touch, not a crossing.
fn crossing_at(c1: &TorusCurve, c2: &TorusCurve, z: &QPoint) -> bool {
    let (in1, out1) = c1.directions_at(z).expect("point lies on first curve");
    let (in2, out2) = c2.directions_at(z).expect("point lies on second curve");
    let r1 = -in1;
    let r2 = out1;
    let s1 = -in2;
    let s2 = out2;
    let b1 = dir_strictly_between_ccw(&s1, &r1, &r2);
    let b2 = dir_strictly_between_ccw(&s2, &r1, &r2);
    b1 != b2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    pub fn alpha() -> TorusCurve {
        TorusCurve::validate(vec![QPoint::zero()], HomologyClass::new(1, 0)).unwrap()
    }

    pub fn beta() -> TorusCurve {
        TorusCurve::validate(vec![QPoint::zero()], HomologyClass::new(0, 1)).unwrap()
    }

    #[test]
    fn straight_representatives_validate() {
        assert_eq!(alpha().homology_class(), HomologyClass::new(1, 0));
        assert_eq!(beta().homology_class(), HomologyClass::new(0, 1));
    }

    #[test]
    fn non_primitive_closure_is_inessential() {
        let r = TorusCurve::validate(
            vec![
                QPoint::zero(),
                QPoint::new(rat(1, 2), rat(1, 3)),
                QPoint::from_ints(1, 0),
            ],
            HomologyClass::new(2, 0),
        );
        assert_eq!(r, Err(Error::Inessential));
        let r0 = TorusCurve::validate(vec![QPoint::zero()], HomologyClass::new(0, 0));
        assert_eq!(r0, Err(Error::Inessential));
    }

    #[test]
    fn not_closed_detected() {
        let r = TorusCurve::validate(
            vec![
                QPoint::zero(),
                QPoint::new(rat(1, 2), rat(1, 3)),
                QPoint::from_ints(2, 0),
            ],
            HomologyClass::new(1, 0),
        );
        assert_eq!(r, Err(Error::NotClosed));
    }

    #[test]
    fn explicit_terminal_vertex_is_stripped() {
        let c = TorusCurve::validate(
            vec![
                QPoint::zero(),
                QPoint::new(rat(1, 2), rat(1, 3)),
                QPoint::from_ints(1, 0),
            ],
            HomologyClass::new(1, 0),
        )
        .unwrap();
        assert_eq!(c.vertices().len(), 2);
    }

    #[test]
    fn self_intersection_rejected() {
        // Bowtie: the first and last edges cross at (1/2, 1/3).
        let r = TorusCurve::validate(
            vec![
                QPoint::zero(),
                QPoint::new(rat(3, 4), rat(1, 2)),
                QPoint::new(rat(1, 4), rat(1, 2)),
                QPoint::from_ints(1, 0),
            ],
            HomologyClass::new(1, 0),
        );
        assert_eq!(r, Err(Error::SelfIntersecting));
        // A vertical spike of height > 1 overlaps its own unit translate.
        let r2 = TorusCurve::validate(
            vec![
                QPoint::zero(),
                QPoint::new(rat(1, 2), rat_i(0)),
                QPoint::new(rat(1, 2), rat(3, 2)),
                QPoint::new(rat(1, 2), rat_i(0)),
                QPoint::from_ints(1, 0),
            ],
            HomologyClass::new(1, 0),
        );
        assert_eq!(r2, Err(Error::SelfIntersecting));
    }

    #[test]
    fn alpha_beta_intersect_once_transversely() {
        let rep = alpha().intersection_report(&beta()).unwrap();
        assert_eq!(rep.count, 1);
        assert!(rep.all_transverse);
    }

    #[test]
    fn disjoint_parallel_translate() {
        let a = alpha();
        let a2 = a.translate(&QPoint::new(Rat::zero(), rat(1, 2)));
        let rep = a.intersection_report(&a2).unwrap();
        assert_eq!(rep.count, 0);
        assert!(rep.all_transverse);
    }

    #[test]
    fn identical_curves_overlap() {
        let a = alpha();
        assert_eq!(a.intersection_report(&a), Err(Error::OverlappingSegments));
    }

    #[test]
    fn straight_slopes_intersect_by_determinant() {
        // Straight curves of reduced slopes (p,q), (r,s) meet |ps - qr| times.
        let mk = |p: i64, q: i64| {
            TorusCurve::validate(vec![QPoint::new(rat(1, 7), rat(2, 11))], HomologyClass::new(p, q))
                .unwrap()
        };
        let c12 = mk(1, 2);
        let c10 = TorusCurve::validate(vec![QPoint::zero()], HomologyClass::new(1, 0)).unwrap();
        let rep = c12.intersection_report(&c10).unwrap();
        assert_eq!(rep.count, 2);
        let c11 = mk(1, 1);
        let c1m1 = TorusCurve::validate(vec![QPoint::zero()], HomologyClass::new(1, -1)).unwrap();
        let rep = c11.intersection_report(&c1m1).unwrap();
        assert_eq!(rep.count, 2);
    }

    #[test]
    fn tangent_touch_is_reported_not_transverse() {
        // A tent-shaped curve touching the horizontal line y=0 from above at
        // one isolated point (1/4, 0) while crossing nowhere else.
        let tent = TorusCurve::validate(
            vec![
                QPoint::new(Rat::zero(), rat(1, 2)),
                QPoint::new(rat(1, 4), Rat::zero()),
                QPoint::new(rat(1, 2), rat(1, 2)),
                QPoint::new(rat(1, 1), rat(1, 2)),
            ],
            HomologyClass::new(1, 0),
        )
        .unwrap();
        let a = alpha();
        let rep = tent.intersection_report(&a).unwrap();
        assert_eq!(rep.count, 1);
        assert!(!rep.all_transverse);
        assert_eq!(rep.touch_points, vec![QPoint::new(rat(1, 4), Rat::zero())]);
    }

    #[test]
    fn homology_of_mapped_curve() {
        let a = alpha();
        let m = IMat { a: 1, b: 0, c: 1, d: 1 }; // (x, y) -> (x, x + y)
        let img = a.map_unimodular(&m);
        assert_eq!(img.homology_class(), HomologyClass::new(1, 1));
    }

    #[test]
    fn translates_of_horizontal_in_unit_box() {
        let a = alpha();
        let got = a.translates_in_box(&QPoint::zero(), &QPoint::from_ints(1, 1));
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn translates_of_vertical_in_wide_box() {
        let b = beta();
        let got = b.translates_in_box(&QPoint::zero(), &QPoint::from_ints(3, 1));
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn translate_enumeration_matches_brute_force() {
        // Random PL curve against a brute-force translate scan.
        let c = TorusCurve::validate(
            vec![
                QPoint::zero(),
                QPoint::new(rat(1, 3), rat(2, 3)),
                QPoint::new(rat(2, 3), rat(-1, 3)),
                QPoint::from_ints(1, 0),
            ],
            HomologyClass::new(1, 0),
        )
        .unwrap();
        let min = QPoint::zero();
        let max = QPoint::from_ints(1, 1);
        let fast = c.translates_in_box(&min, &max);
        // Brute force over a generous translate window.
        let mut brute = 0;
        let edges = c.period_edges();
        for k in -6i64..=6 {
            // coset shift k*(0,1) and all chain positions n*(1,0)
            let mut any = false;
            for n in -6i64..=6 {
                let shift = QPoint::from_ints(n, k);
                for (a, b) in &edges {
                    if super::segment_meets_box(&(a + &shift), &(b + &shift), &min, &max) {
                        any = true;
                    }
                }
            }
            if any {
                brute += 1;
            }
        }
        assert_eq!(fast.len(), brute);
    }
}
