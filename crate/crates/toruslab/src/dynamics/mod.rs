//! Homeomorphism lifts in Homeo(R^2, Z^2) as expression trees: exact shear
//! words for curve transport, floating-point orbits for rotation-set
//! estimation, and the worked example families.

use crate::curves::{HomologyClass, TorusCurve};
use crate::rat::{rat, rat_frac, rat_i, rat_to_f64, IMat, QPoint, Rat};
use crate::Error;
use num::One;
use std::sync::Arc;

mod estimator;
mod examples;
mod trimap;

pub use estimator::{
    hausdorff_f64, one_sided_excess, polygon_diameter, rotation_set_estimate, schottky_experiment,
    EstimateMode, EstimateOptions, PolygonEstimate, SchottkyRow, SchottkyTable, Threads,
};
pub use examples::{parallelogram_word, Examples, Variant};
pub use trimap::{triangle_candidate, verify_triangle_conditions, ConditionReport, PlTorusMap};

/// Shear displacement profile, 1-periodic with peak 1 at t = 1/2 and zeros
/// on the integers. The tent profile is piecewise linear and exact; the
/// squared-sine profile is evaluated in floating point only.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Profile {
    Tent,
    Sin2,
}

impl Profile {
    pub fn eval_exact(&self, t: &Rat) -> Result<Rat, Error> {
        match self {
            Profile::Tent => {
                let u = rat_frac(t);
                if u <= rat(1, 2) {
                    Ok(rat_i(2) * u)
                } else {
                    Ok(rat_i(2) * (Rat::one() - u))
                }
            }
            Profile::Sin2 => Err(Error::NotPlWord),
        }
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        match self {
            Profile::Tent => {
                let u = t - t.floor();
                if u <= 0.5 {
                    2.0 * u
                } else {
                    2.0 * (1.0 - u)
                }
            }
            Profile::Sin2 => {
                let s = (std::f64::consts::PI * t).sin();
                s * s
            }
        }
    }

    /// Lipschitz constant of the unscaled profile.
    pub fn lipschitz(&self) -> f64 {
        match self {
            Profile::Tent => 2.0,
            Profile::Sin2 => std::f64::consts::PI,
        }
    }
}

/// A lift of a torus homeomorphism, built from generators that commute with
/// integer translations. `Conjugate` wraps `B^-1 . f . B` for an integer
/// matrix `B` with nonzero determinant; the sandwich as a whole commutes
/// with integer translations even when `B` is not unimodular.
#[derive(Clone, PartialEq, Debug)]
pub enum HomeoLift {
    /// (x, y) -> (x + scale * profile(y), y)
    ShearH { profile: Profile, scale: Rat },
    /// (x, y) -> (x, y + scale * profile(x))
    ShearV { profile: Profile, scale: Rat },
    Translate(QPoint),
    /// Unimodular integer matrix acting linearly.
    Linear(IMat),
    /// Right-to-left composition: `Compose([f, g])` is `f . g`.
    Compose(Vec<HomeoLift>),
    Power(Box<HomeoLift>, i64),
    Inverse(Box<HomeoLift>),
    Conjugate { inner: Box<HomeoLift>, basis: IMat },
    /// An explicit triangulated PL torus map.
    Triangulated(Arc<PlTorusMap>),
}

impl HomeoLift {
    pub fn shear_h(profile: Profile) -> Self {
        HomeoLift::ShearH { profile, scale: Rat::one() }
    }

    pub fn shear_v(profile: Profile) -> Self {
        HomeoLift::ShearV { profile, scale: Rat::one() }
    }

    pub fn compose(parts: Vec<HomeoLift>) -> Self {
        HomeoLift::Compose(parts)
    }

    pub fn power(self, k: i64) -> Self {
        HomeoLift::Power(Box::new(self), k)
    }

    pub fn inverse(self) -> Self {
        HomeoLift::Inverse(Box::new(self))
    }

    /// Is every node exactly evaluable (piecewise linear)?
    pub fn is_pl(&self) -> bool {
        match self {
            HomeoLift::ShearH { profile, .. } | HomeoLift::ShearV { profile, .. } => {
                *profile == Profile::Tent
            }
            HomeoLift::Translate(_) | HomeoLift::Linear(_) | HomeoLift::Triangulated(_) => true,
            HomeoLift::Compose(parts) => parts.iter().all(|p| p.is_pl()),
            HomeoLift::Power(f, _) | HomeoLift::Inverse(f) => f.is_pl(),
            HomeoLift::Conjugate { inner, .. } => inner.is_pl(),
        }
    }

    /// Structural inverse word.
    pub fn invert(&self) -> Result<HomeoLift, Error> {
        Ok(match self {
            HomeoLift::ShearH { profile, scale } => HomeoLift::ShearH {
                profile: *profile,
                scale: -scale.clone(),
            },
            HomeoLift::ShearV { profile, scale } => HomeoLift::ShearV {
                profile: *profile,
                scale: -scale.clone(),
            },
            HomeoLift::Translate(v) => HomeoLift::Translate(-v.clone()),
            HomeoLift::Linear(m) => {
                if m.det().abs() != 1 {
                    return Err(Error::NonInvertible);
                }
                HomeoLift::Linear(m.inverse_unimodular())
            }
            HomeoLift::Compose(parts) => {
                let mut inv = Vec::with_capacity(parts.len());
                for p in parts.iter().rev() {
                    inv.push(p.invert()?);
                }
                HomeoLift::Compose(inv)
            }
            HomeoLift::Power(f, k) => HomeoLift::Power(f.clone(), -k),
            HomeoLift::Inverse(f) => (**f).clone(),
            HomeoLift::Conjugate { inner, basis } => HomeoLift::Conjugate {
                inner: Box::new(inner.invert()?),
                basis: *basis,
            },
            HomeoLift::Triangulated(_) => {
                return Err(Error::Unsupported("inverse of a triangulated map".into()))
            }
        })
    }

    /// Exact evaluation; fails on non-PL nodes.
    pub fn eval_exact(&self, p: &QPoint) -> Result<QPoint, Error> {
        match self {
            HomeoLift::ShearH { profile, scale } => {
                let d = profile.eval_exact(&p.y)?;
                Ok(QPoint::new(&p.x + &(scale * &d), p.y.clone()))
            }
            HomeoLift::ShearV { profile, scale } => {
                let d = profile.eval_exact(&p.x)?;
                Ok(QPoint::new(p.x.clone(), &p.y + &(scale * &d)))
            }
            HomeoLift::Translate(v) => Ok(p + v),
            HomeoLift::Linear(m) => Ok(m.apply_point(p)),
            HomeoLift::Compose(parts) => {
                let mut q = p.clone();
                for part in parts.iter().rev() {
                    q = part.eval_exact(&q)?;
                }
                Ok(q)
            }
            HomeoLift::Power(f, k) => {
                let (word, n) = if *k >= 0 { ((**f).clone(), *k) } else { (f.invert()?, -*k) };
                let mut q = p.clone();
                for _ in 0..n {
                    q = word.eval_exact(&q)?;
                }
                Ok(q)
            }
            HomeoLift::Inverse(f) => f.invert()?.eval_exact(p),
            HomeoLift::Conjugate { inner, basis } => {
                if basis.det() == 0 {
                    return Err(Error::NonInvertible);
                }
                let q = basis.apply_point(p);
                let r = inner.eval_exact(&q)?;
                Ok(basis.apply_inverse_point(&r))
            }
            HomeoLift::Triangulated(m) => Ok(m.eval_exact(p)),
        }
    }

    /// Floating-point evaluation of one application.
    pub fn eval_f64(&self, p: (f64, f64)) -> (f64, f64) {
        match self {
            HomeoLift::ShearH { profile, scale } => {
                (p.0 + rat_to_f64(scale) * profile.eval_f64(p.1), p.1)
            }
            HomeoLift::ShearV { profile, scale } => {
                (p.0, p.1 + rat_to_f64(scale) * profile.eval_f64(p.0))
            }
            HomeoLift::Translate(v) => (p.0 + rat_to_f64(&v.x), p.1 + rat_to_f64(&v.y)),
            HomeoLift::Linear(m) => (
                m.a as f64 * p.0 + m.b as f64 * p.1,
                m.c as f64 * p.0 + m.d as f64 * p.1,
            ),
            HomeoLift::Compose(parts) => {
                let mut q = p;
                for part in parts.iter().rev() {
                    q = part.eval_f64(q);
                }
                q
            }
            HomeoLift::Power(f, k) => {
                if *k >= 0 {
                    let mut q = p;
                    for _ in 0..*k {
                        q = f.eval_f64(q);
                    }
                    q
                } else {
                    match f.invert() {
                        Ok(inv) => {
                            let mut q = p;
                            for _ in 0..(-*k) {
                                q = inv.eval_f64(q);
                            }
                            q
                        }
                        Err(_) => (f64::NAN, f64::NAN),
                    }
                }
            }
            HomeoLift::Inverse(f) => match f.invert() {
                Ok(inv) => inv.eval_f64(p),
                Err(_) => (f64::NAN, f64::NAN),
            },
            HomeoLift::Conjugate { inner, basis } => {
                let det = basis.det() as f64;
                let q = (
                    basis.a as f64 * p.0 + basis.b as f64 * p.1,
                    basis.c as f64 * p.0 + basis.d as f64 * p.1,
                );
                let r = inner.eval_f64(q);
                (
                    (basis.d as f64 * r.0 - basis.b as f64 * r.1) / det,
                    (basis.a as f64 * r.1 - basis.c as f64 * r.0) / det,
                )
            }
            HomeoLift::Triangulated(m) => m.eval_f64(p),
        }
    }

    /// Floating-point evaluation with a first-order error bound propagated
    /// per generator: `err_out = L * err_in + eta` with `L` the node's
    /// Lipschitz constant and `eta` a unit-roundoff allowance.
    pub fn eval_f64_with_err(&self, p: (f64, f64), err_in: f64) -> ((f64, f64), f64) {
        const ETA: f64 = 1e-15;
        match self {
            HomeoLift::ShearH { profile, scale } | HomeoLift::ShearV { profile, scale } => {
                let l = 1.0 + rat_to_f64(scale).abs() * profile.lipschitz();
                (self.eval_f64(p), l * err_in + ETA)
            }
            HomeoLift::Translate(_) => (self.eval_f64(p), err_in + ETA),
            HomeoLift::Linear(m) => {
                let l = (m.a.abs() + m.b.abs()).max(m.c.abs() + m.d.abs()) as f64;
                (self.eval_f64(p), l * err_in + ETA)
            }
            HomeoLift::Compose(parts) => {
                let mut q = p;
                let mut err = err_in;
                for part in parts.iter().rev() {
                    let (q2, e2) = part.eval_f64_with_err(q, err);
                    q = q2;
                    err = e2;
                }
                (q, err)
            }
            HomeoLift::Power(f, k) => {
                let n = k.unsigned_abs();
                let word = if *k >= 0 {
                    (**f).clone()
                } else {
                    match f.invert() {
                        Ok(w) => w,
                        Err(_) => return ((f64::NAN, f64::NAN), f64::INFINITY),
                    }
                };
                let mut q = p;
                let mut err = err_in;
                for _ in 0..n {
                    let (q2, e2) = word.eval_f64_with_err(q, err);
                    q = q2;
                    err = e2;
                }
                (q, err)
            }
            HomeoLift::Inverse(f) => match f.invert() {
                Ok(inv) => inv.eval_f64_with_err(p, err_in),
                Err(_) => ((f64::NAN, f64::NAN), f64::INFINITY),
            },
            HomeoLift::Conjugate { inner, basis } => {
                let l =
                    ((basis.a.abs() + basis.b.abs()).max(basis.c.abs() + basis.d.abs())) as f64;
                let (q, e) = inner.eval_f64_with_err(
                    (
                        basis.a as f64 * p.0 + basis.b as f64 * p.1,
                        basis.c as f64 * p.0 + basis.d as f64 * p.1,
                    ),
                    l * err_in + ETA,
                );
                let det_abs = basis.det().abs() as f64;
                let linv = ((basis.d.abs() + basis.b.abs()).max(basis.a.abs() + basis.c.abs()))
                    as f64
                    / det_abs;
                let det = basis.det() as f64;
                (
                    (
                        (basis.d as f64 * q.0 - basis.b as f64 * q.1) / det,
                        (basis.a as f64 * q.1 - basis.c as f64 * q.0) / det,
                    ),
                    linv * e + ETA,
                )
            }
            HomeoLift::Triangulated(m) => (m.eval_f64(p), m.lipschitz_bound() * err_in + ETA),
        }
    }

    /// Displacement `f(p) - p` of a single application, in floating point.
    pub fn displacement_f64(&self, p: (f64, f64)) -> (f64, f64) {
        let q = self.eval_f64(p);
        (q.0 - p.0, q.1 - p.1)
    }

    /// Displacement of the n-th iterate by orbit accumulation.
    pub fn displacement_n_f64(&self, p: (f64, f64), n: u32) -> (f64, f64) {
        let mut q = p;
        for _ in 0..n {
            q = self.eval_f64(q);
        }
        (q.0 - p.0, q.1 - p.1)
    }

    /// Exact displacement for PL words.
    pub fn displacement_exact(&self, p: &QPoint) -> Result<QPoint, Error> {
        Ok(&self.eval_exact(p)? - p)
    }

    /// Exact image of a curve under a PL word. The image of a valid curve
    /// under an exact homeomorphism is valid, so only canonicalization is
    /// performed; `TorusCurve::revalidate` is available for spot checks.
    pub fn apply_to_curve(&self, c: &TorusCurve) -> Result<TorusCurve, Error> {
        if !self.is_pl() {
            return Err(Error::NotPlWord);
        }
        match self {
            HomeoLift::ShearH { profile: _, scale } => {
                let verts = subdivide_at_levels(c, 1);
                let mapped: Vec<QPoint> = verts
                    .iter()
                    .map(|v| {
                        let d = Profile::Tent.eval_exact(&v.y).unwrap();
                        QPoint::new(&v.x + &(scale * &d), v.y.clone())
                    })
                    .collect();
                TorusCurve::from_verts_canonical(mapped, c.homology_class())
            }
            HomeoLift::ShearV { profile: _, scale } => {
                let verts = subdivide_at_levels(c, 0);
                let mapped: Vec<QPoint> = verts
                    .iter()
                    .map(|v| {
                        let d = Profile::Tent.eval_exact(&v.x).unwrap();
                        QPoint::new(v.x.clone(), &v.y + &(scale * &d))
                    })
                    .collect();
                TorusCurve::from_verts_canonical(mapped, c.homology_class())
            }
            HomeoLift::Translate(v) => Ok(c.translate(v)),
            HomeoLift::Linear(m) => {
                if m.det().abs() != 1 {
                    return Err(Error::Unsupported(
                        "curve transport through non-unimodular linear map".into(),
                    ));
                }
                Ok(c.map_unimodular(m))
            }
            HomeoLift::Compose(parts) => {
                let mut cur = c.clone();
                for part in parts.iter().rev() {
                    cur = part.apply_to_curve(&cur)?;
                }
                Ok(cur)
            }
            HomeoLift::Power(f, k) => {
                let (word, n) = if *k >= 0 { ((**f).clone(), *k) } else { (f.invert()?, -*k) };
                let mut cur = c.clone();
                for _ in 0..n {
                    cur = word.apply_to_curve(&cur)?;
                }
                Ok(cur)
            }
            HomeoLift::Inverse(f) => f.invert()?.apply_to_curve(c),
            HomeoLift::Conjugate { inner, basis } => {
                if basis.det().abs() != 1 {
                    return Err(Error::Unsupported(
                        "curve transport through non-unimodular conjugation".into(),
                    ));
                }
                let fwd = c.map_unimodular(basis);
                let img = inner.apply_to_curve(&fwd)?;
                Ok(img.map_unimodular(&basis.inverse_unimodular()))
            }
            HomeoLift::Triangulated(_) => Err(Error::Unsupported(
                "curve transport through a triangulated map".into(),
            )),
        }
    }
}

/// Insert vertices wherever an edge crosses a half-integer level of the
/// given axis (0 = x, 1 = y), so that tent shears act affinely on every
/// resulting edge. Returns the open lift vertex list.
fn subdivide_at_levels(c: &TorusCurve, axis: usize) -> Vec<QPoint> {
    let coord = |p: &QPoint| -> Rat {
        if axis == 0 {
            p.x.clone()
        } else {
            p.y.clone()
        }
    };
    let mut out = Vec::new();
    for (a, b) in c.period_edges() {
        out.push(a.clone());
        let (ca, cb) = (coord(&a), coord(&b));
        if ca == cb {
            continue;
        }
        let d = &b - &a;
        let two = rat_i(2);
        let (lo, hi) = if ca < cb { (&ca, &cb) } else { (&cb, &ca) };
        let k_lo = (lo * &two).floor().to_integer() + 1;
        let k_hi = (hi * &two).ceil().to_integer() - 1;
        let mut levels = Vec::new();
        let mut k = k_lo;
        while k <= k_hi {
            let level = Rat::new(k.clone(), 2.into());
            if level > *lo && level < *hi {
                levels.push(level);
            }
            k += 1;
        }
        if ca > cb {
            levels.reverse();
        }
        for level in levels {
            let t = (&level - &ca) / (&cb - &ca);
            out.push(&a + &d.scale(&t));
        }
    }
    out
}

/// The standard horizontal curve through the origin.
pub fn alpha_curve() -> TorusCurve {
    TorusCurve::validate(vec![QPoint::zero()], HomologyClass::new(1, 0)).unwrap()
}

/// The standard vertical curve through the origin.
pub fn beta_curve() -> TorusCurve {
    TorusCurve::validate(vec![QPoint::zero()], HomologyClass::new(0, 1)).unwrap()
}

/// Does the lift of `c` contain a staircase arc of the given size: an arc
/// starting at a lattice point, otherwise inside the open box `(0,1) x
/// (0,size)` (transposed when `vertical` is false), and reaching the far
/// side of the box?
pub fn contains_staircase_arc(c: &TorusCurve, size: i64, vertical: bool) -> bool {
    let verts = c.vertices();
    let k = verts.len();
    let h = c.homology_class().as_ivec().to_qpoint();
    let lattice = |p: &QPoint| p.frac() == QPoint::zero();
    let target = rat_i(size);
    for start in 0..k {
        if !lattice(&verts[start]) {
            continue;
        }
        for dir in [1i64, -1] {
            let base = verts[start].clone();
            let mut reached = false;
            let mut ok = true;
            let mut step = 1i64;
            while step <= (4 * k as i64) {
                let idx = start as i64 + dir * step;
                let wrap = idx.div_euclid(k as i64);
                let vi = idx.rem_euclid(k as i64) as usize;
                let v = &verts[vi] + &h.scale(&rat_i(wrap));
                let rel = &v - &base;
                let (along, across) = if vertical {
                    (rel.y.clone(), rel.x.clone())
                } else {
                    (rel.x.clone(), rel.y.clone())
                };
                if across < num::Zero::zero() || across > Rat::one() || along < num::Zero::zero() {
                    ok = false;
                    break;
                }
                if along >= target {
                    reached = true;
                    break;
                }
                step += 1;
            }
            if reached && ok {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    fn f_tent() -> HomeoLift {
        HomeoLift::shear_h(Profile::Tent)
    }

    fn g_tent() -> HomeoLift {
        HomeoLift::shear_v(Profile::Tent)
    }

    #[test]
    fn translate_eval() {
        let t = HomeoLift::Translate(QPoint::from_ints(1, 0));
        assert_eq!(t.eval_exact(&QPoint::zero()).unwrap(), QPoint::from_ints(1, 0));
    }

    #[test]
    fn tent_shear_peak() {
        let f = f_tent();
        let p = QPoint::new(Rat::zero(), rat(1, 2));
        assert_eq!(f.eval_exact(&p).unwrap(), QPoint::new(Rat::one(), rat(1, 2)));
    }

    #[test]
    fn smooth_eval_matches_formula() {
        // g.f at (1/4, 0) -> (1/4, sin^2(pi/4)) = (0.25, 0.5)
        let f = HomeoLift::shear_h(Profile::Sin2);
        let g = HomeoLift::shear_v(Profile::Sin2);
        let gf = HomeoLift::compose(vec![g, f]);
        let q = gf.eval_f64((0.25, 0.0));
        assert!((q.0 - 0.25).abs() < 1e-12);
        assert!((q.1 - 0.5).abs() < 1e-12);
        assert!(gf.eval_exact(&QPoint::new(rat(1, 4), Rat::zero())).is_err());
    }

    #[test]
    fn z2_equivariance_exact() {
        let h = HomeoLift::compose(vec![g_tent().power(2), f_tent().power(3)]);
        let p = QPoint::new(rat(3, 7), rat(5, 11));
        let base = h.eval_exact(&p).unwrap();
        for (zx, zy) in [(1i64, 0i64), (0, 1), (-2, 3)] {
            let shifted = h
                .eval_exact(&QPoint::new(&p.x + rat_i(zx), &p.y + rat_i(zy)))
                .unwrap();
            assert_eq!(shifted, QPoint::new(&base.x + rat_i(zx), &base.y + rat_i(zy)));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let h = HomeoLift::compose(vec![g_tent().power(2), f_tent()]);
        let p = QPoint::new(rat(2, 5), rat(7, 13));
        let q = h.eval_exact(&p).unwrap();
        let back = h.clone().inverse().eval_exact(&q).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn shear_image_of_alpha_is_tent_graph() {
        let g = g_tent();
        let a = alpha_curve();
        let img = g.apply_to_curve(&a).unwrap();
        assert_eq!(img.vertices().len(), 2);
        assert_eq!(img.vertices()[0], QPoint::zero());
        assert_eq!(img.vertices()[1], QPoint::new(rat(1, 2), Rat::one()));
        assert!(img.revalidate().is_ok());
        assert_eq!(img.homology_class(), HomologyClass::new(1, 0));
    }

    #[test]
    fn ninety_degree_rotation_maps_alpha_to_beta() {
        let rot = HomeoLift::Linear(IMat { a: 0, b: -1, c: 1, d: 0 });
        let img = rot.apply_to_curve(&alpha_curve()).unwrap();
        assert!(img.homology_class().parallel_to(&HomologyClass::new(0, 1)));
    }

    #[test]
    fn staircase_arc_in_sheared_curve() {
        for q in 1..=4i64 {
            let g = HomeoLift::ShearV { profile: Profile::Tent, scale: rat_i(q) };
            let img = g.apply_to_curve(&alpha_curve()).unwrap();
            assert!(contains_staircase_arc(&img, q, true), "size {q}");
            assert!(!contains_staircase_arc(&img, q + 1, true));
        }
    }

    #[test]
    fn transported_intersection_counts_are_invariant() {
        let a = alpha_curve();
        let b = beta_curve();
        let h = HomeoLift::compose(vec![g_tent().power(2), f_tent().power(1)]);
        let ha = h.apply_to_curve(&a).unwrap();
        let hb = h.apply_to_curve(&b).unwrap();
        assert!(ha.revalidate().is_ok());
        assert!(hb.revalidate().is_ok());
        let before = a.intersection_report(&b).unwrap();
        let after = ha.intersection_report(&hb).unwrap();
        assert_eq!(before.count, after.count);
        assert_eq!(before.all_transverse, after.all_transverse);
    }

    #[test]
    fn sheared_alpha_crosses_beta_once() {
        // Exact segment-pair arithmetic over translates in the bounding box.
        let img = g_tent().apply_to_curve(&alpha_curve()).unwrap();
        let rep = img.intersection_report(&beta_curve()).unwrap();
        assert_eq!(rep.count, 1);
        assert!(rep.all_transverse);
    }

    #[test]
    fn displacement_is_periodic() {
        let h = HomeoLift::compose(vec![g_tent(), f_tent()]);
        let p = QPoint::new(rat(1, 3), rat(2, 7));
        let d0 = h.displacement_exact(&p).unwrap();
        let d1 = h
            .displacement_exact(&QPoint::new(&p.x + rat_i(5), &p.y - rat_i(2)))
            .unwrap();
        assert_eq!(d0, d1);
    }
}
