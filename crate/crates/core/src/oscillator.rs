//! Two-dimensional isotropic harmonic oscillator under the rotation group.
//!
//! Zero angular momentum points map onto the upper cone
//! `H^2 = E+^2 + E-^2` through the quadratic invariants `(E+, E-, H)`.
//! Away from the origin and the line `L = {E- = 0, H = E+}` the cone is
//! symplectomorphic to `T*R_{>0}` via [`psi`] and [`imap`].
//!
//! Bracket convention: `{f, g} = Σ ∂f/∂p_i ∂g/∂q_i - ∂f/∂q_i ∂g/∂p_i`, so
//! that `d/dt g = {H, g}` along the flow `q' = p, p' = -q`. With this
//! convention `{H, E±} = ∓2E∓` and `{E+, E-} = 2H`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default seam-classification tolerance.
pub const SEAM_TOL: f64 = 1e-9;
/// Threshold on `|cos(t + t0)|` below which the half-line chart blows up.
pub const BLOWUP_TOL: f64 = 1e-8;
/// Central-difference step for brackets.
pub const FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint2D {
    pub q: [f64; 2],
    pub p: [f64; 2],
}

impl PhasePoint2D {
    pub fn new(q: [f64; 2], p: [f64; 2]) -> Self {
        Self { q, p }
    }

    fn as_array(&self) -> [f64; 4] {
        [self.q[0], self.q[1], self.p[0], self.p[1]]
    }

    fn from_array(a: [f64; 4]) -> Self {
        Self { q: [a[0], a[1]], p: [a[2], a[3]] }
    }

    /// Rotate `q` and `p` simultaneously by `angle`.
    pub fn rotated(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let r = |v: [f64; 2]| [c * v[0] - s * v[1], s * v[0] + c * v[1]];
        Self { q: r(self.q), p: r(self.p) }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { q: [s * self.q[0], s * self.q[1]], p: [s * self.p[0], s * self.p[1]] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConePoint {
    pub e_plus: f64,
    pub e_minus: f64,
    pub h: f64,
}

impl ConePoint {
    pub fn new(e_plus: f64, e_minus: f64, h: f64) -> Self {
        Self { e_plus, e_minus, h }
    }

    /// `h^2 - e_plus^2 - e_minus^2`; zero on the cone.
    pub fn cone_defect(&self) -> f64 {
        self.h * self.h - self.e_plus * self.e_plus - self.e_minus * self.e_minus
    }

    pub fn distance(&self, o: &ConePoint) -> f64 {
        let a = self.e_plus - o.e_plus;
        let b = self.e_minus - o.e_minus;
        let c = self.h - o.h;
        (a * a + b * b + c * c).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CotangentHalfLine {
    pub qbar: f64,
    pub pbar: f64,
}

impl CotangentHalfLine {
    pub fn new(qbar: f64, pbar: f64) -> Result<Self> {
        if !(qbar > 0.0) {
            return Err(Error::Domain(format!("qbar must be positive, got {qbar}")));
        }
        Ok(Self { qbar, pbar })
    }
}

/// Secondary stratum of a zero angular momentum point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeamLabel2D {
    /// `q = p = 0`.
    OriginU1U1,
    /// `q = 0`, `p ≠ 0`: maps onto the line `L`.
    SeamEU1,
    /// `q ≠ 0`.
    GenericEE,
}

impl SeamLabel2D {
    pub fn as_str(&self) -> &'static str {
        match self {
            SeamLabel2D::OriginU1U1 => "ORIGIN_U1_U1",
            SeamLabel2D::SeamEU1 => "SEAM_E_U1",
            SeamLabel2D::GenericEE => "GENERIC_E_E",
        }
    }
}

/// State of the half-line chart along the flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FlowState {
    Regular(CotangentHalfLine),
    Blowup,
}

impl FlowState {
    pub fn is_blowup(&self) -> bool {
        matches!(self, FlowState::Blowup)
    }
}

fn norm2(v: [f64; 2]) -> f64 {
    v[0] * v[0] + v[1] * v[1]
}

/// `J = q1 p2 - q2 p1`.
pub fn angular_momentum(x: &PhasePoint2D) -> f64 {
    x.q[0] * x.p[1] - x.q[1] * x.p[0]
}

pub fn kmap(x: &PhasePoint2D) -> ConePoint {
    let pp = norm2(x.p);
    let qq = norm2(x.q);
    ConePoint {
        e_plus: 0.5 * (pp - qq),
        e_minus: x.q[0] * x.p[0] + x.q[1] * x.p[1],
        h: 0.5 * (pp + qq),
    }
}

/// Classify a point of `J^{-1}(0)`.
pub fn seam_label(x: &PhasePoint2D, tol: f64) -> Result<SeamLabel2D> {
    let j = angular_momentum(x);
    if j.abs() >= tol {
        return Err(Error::Precondition(format!("angular momentum {j:e} is not zero")));
    }
    let q_small = norm2(x.q).sqrt() < tol;
    let p_small = norm2(x.p).sqrt() < tol;
    Ok(match (q_small, p_small) {
        (true, true) => SeamLabel2D::OriginU1U1,
        (true, false) => SeamLabel2D::SeamEU1,
        _ => SeamLabel2D::GenericEE,
    })
}

/// `(|q|^2/2, q·p/|q|^2)`.
pub fn psi(x: &PhasePoint2D) -> Result<CotangentHalfLine> {
    let qq = norm2(x.q);
    if qq == 0.0 {
        return Err(Error::Domain("psi is undefined at q = 0".into()));
    }
    let qp = x.q[0] * x.p[0] + x.q[1] * x.p[1];
    Ok(CotangentHalfLine { qbar: 0.5 * qq, pbar: qp / qq })
}

/// `(q̄(p̄^2 - 1), 2q̄p̄, q̄(p̄^2 + 1))`.
pub fn imap(y: &CotangentHalfLine) -> Result<ConePoint> {
    if !(y.qbar > 0.0) {
        return Err(Error::Domain(format!("qbar must be positive, got {}", y.qbar)));
    }
    let p2 = y.pbar * y.pbar;
    Ok(ConePoint {
        e_plus: y.qbar * (p2 - 1.0),
        e_minus: 2.0 * y.qbar * y.pbar,
        h: y.qbar * (p2 + 1.0),
    })
}

/// Canonical bracket by central differences with step [`FD_STEP`].
pub fn canonical_bracket<F, G>(f: F, g: G, x: &PhasePoint2D) -> f64
where
    F: Fn(&PhasePoint2D) -> f64,
    G: Fn(&PhasePoint2D) -> f64,
{
    let base = x.as_array();
    let grad = |h: &dyn Fn(&PhasePoint2D) -> f64| {
        let mut out = [0.0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            let mut a = base;
            let mut b = base;
            a[i] += FD_STEP;
            b[i] -= FD_STEP;
            *o = (h(&PhasePoint2D::from_array(a)) - h(&PhasePoint2D::from_array(b))) / (2.0 * FD_STEP);
        }
        out
    };
    let df = grad(&f);
    let dg = grad(&g);
    (0..2).map(|i| df[2 + i] * dg[i] - df[i] * dg[2 + i]).sum()
}

/// Lie–Poisson bivector on `sl(2, R)^* ≅ R^3` evaluated on two covectors
/// given in `(E+, E-, H)` components.
pub fn lie_poisson(c: &ConePoint, a: [f64; 3], b: [f64; 3]) -> f64 {
    // Π = -2E- ∂H∧∂E+ + 2E+ ∂H∧∂E- + 2H ∂E+∧∂E-
    let wedge = |i: usize, j: usize| a[i] * b[j] - a[j] * b[i];
    -2.0 * c.e_minus * wedge(2, 0) + 2.0 * c.e_plus * wedge(2, 1) + 2.0 * c.h * wedge(0, 1)
}

/// Rotation by `2t` in the `(E+, E-)` plane.
pub fn cone_flow(t: f64, c: &ConePoint) -> ConePoint {
    let (s, co) = (2.0 * t).sin_cos();
    ConePoint {
        e_plus: co * c.e_plus - s * c.e_minus,
        e_minus: s * c.e_plus + co * c.e_minus,
        h: c.h,
    }
}

/// `q̄(t) = H̄0 cos^2(t + t0)`, `p̄(t) = -tan(t + t0)`.
pub fn cotangent_flow(t: f64, hbar0: f64, t0: f64) -> Result<FlowState> {
    if !(hbar0 > 0.0) {
        return Err(Error::Domain(format!("hbar0 must be positive, got {hbar0}")));
    }
    let (s, c) = (t + t0).sin_cos();
    if c.abs() < BLOWUP_TOL {
        return Ok(FlowState::Blowup);
    }
    Ok(FlowState::Regular(CotangentHalfLine { qbar: hbar0 * c * c, pbar: -s / c }))
}

/// Flow constants `(H̄0, t0)` through a half-line point at `t = 0`.
pub fn flow_constants(y: &CotangentHalfLine) -> (f64, f64) {
    let t0 = (-y.pbar).atan();
    (y.qbar * (1.0 + y.pbar * y.pbar), t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn h(x: &PhasePoint2D) -> f64 {
        kmap(x).h
    }
    fn ep(x: &PhasePoint2D) -> f64 {
        kmap(x).e_plus
    }
    fn em(x: &PhasePoint2D) -> f64 {
        kmap(x).e_minus
    }

    #[test]
    fn angular_momentum_examples() {
        assert_eq!(angular_momentum(&PhasePoint2D::new([1.0, 0.0], [0.0, 1.0])), 1.0);
        assert_eq!(angular_momentum(&PhasePoint2D::new([1.0, 0.0], [2.0, 0.0])), 0.0);
        let x = PhasePoint2D::new([0.3, -1.2], [0.7, 0.4]);
        assert!((angular_momentum(&x) - angular_momentum(&x.rotated(0.9))).abs() < 1e-12);
    }

    #[test]
    fn kmap_examples() {
        assert_eq!(kmap(&PhasePoint2D::new([1.0, 0.0], [0.0, 0.0])), ConePoint::new(-0.5, 0.0, 0.5));
        assert_eq!(kmap(&PhasePoint2D::new([0.0; 2], [0.0; 2])), ConePoint::new(0.0, 0.0, 0.0));
        let c = kmap(&PhasePoint2D::new([1.0, 0.0], [2.0, 0.0]));
        assert_eq!(c, ConePoint::new(1.5, 2.0, 2.5));
        assert_eq!(c.cone_defect(), 0.0);
    }

    #[test]
    fn seam_label_examples() {
        let l = |q, p| seam_label(&PhasePoint2D::new(q, p), SEAM_TOL).unwrap();
        assert_eq!(l([0.0, 0.0], [0.0, 0.0]), SeamLabel2D::OriginU1U1);
        assert_eq!(l([0.0, 0.0], [0.0, 3.0]), SeamLabel2D::SeamEU1);
        assert_eq!(l([1.0, 1.0], [2.0, 2.0]), SeamLabel2D::GenericEE);
        let off = seam_label(&PhasePoint2D::new([1.0, 0.0], [0.0, 1.0]), SEAM_TOL);
        assert!(matches!(off, Err(Error::Precondition(_))));
    }

    #[test]
    fn psi_and_imap_examples() {
        let y = psi(&PhasePoint2D::new([1.0, 0.0], [2.0, 0.0])).unwrap();
        assert_eq!(y, CotangentHalfLine { qbar: 0.5, pbar: 2.0 });
        let y = psi(&PhasePoint2D::new([0.0, 1.0], [0.0, -1.0])).unwrap();
        assert_eq!(y, CotangentHalfLine { qbar: 0.5, pbar: -1.0 });
        assert!(psi(&PhasePoint2D::new([0.0; 2], [1.0, 0.0])).is_err());
        assert_eq!(imap(&CotangentHalfLine { qbar: 0.5, pbar: 2.0 }).unwrap(), ConePoint::new(1.5, 2.0, 2.5));
        assert_eq!(imap(&CotangentHalfLine { qbar: 1.0, pbar: 0.0 }).unwrap(), ConePoint::new(-1.0, 0.0, 1.0));
        assert!(imap(&CotangentHalfLine { qbar: 0.0, pbar: 0.0 }).is_err());
    }

    #[test]
    fn bracket_examples() {
        let x = PhasePoint2D::new([1.0, 0.0], [0.0, 1.0]);
        assert!((canonical_bracket(h, ep, &x) + 2.0 * em(&x)).abs() < 1e-6);
        assert!((canonical_bracket(ep, em, &x) - 2.0).abs() < 1e-6);
        assert!(canonical_bracket(h, h, &x).abs() < 1e-12);
    }

    #[test]
    fn bracket_generates_the_oscillator_flow() {
        // d/dt g = {H, g} along q' = p, p' = -q
        let x = PhasePoint2D::new([0.4, -0.3], [1.1, 0.2]);
        let xdot = PhasePoint2D::new(x.p, [-x.q[0], -x.q[1]]);
        let g = |y: &PhasePoint2D| y.q[0] * y.p[1] + y.q[1] * y.q[1];
        let dir = 0.5 * (xdot.q[0] * x.p[1] + x.q[0] * xdot.p[1]) * 2.0 + 2.0 * x.q[1] * xdot.q[1];
        assert!((canonical_bracket(h, g, &x) - dir).abs() < 1e-8);
    }

    #[test]
    fn lie_poisson_matches_bracket_table() {
        let c = ConePoint::new(0.3, -0.7, 1.2);
        let [e_p, e_m, hh] = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert!((lie_poisson(&c, hh, e_p) + 2.0 * c.e_minus).abs() < 1e-15);
        assert!((lie_poisson(&c, hh, e_m) - 2.0 * c.e_plus).abs() < 1e-15);
        assert!((lie_poisson(&c, e_p, e_m) - 2.0 * c.h).abs() < 1e-15);
    }

    #[test]
    fn cone_flow_examples() {
        let c = ConePoint::new(0.3, -0.4, 0.5);
        assert!(cone_flow(PI, &c).distance(&c) < 1e-15);
        let r = cone_flow(PI / 4.0, &ConePoint::new(-1.0, 0.0, 1.0));
        assert!(r.distance(&ConePoint::new(0.0, -1.0, 1.0)) < 1e-15);
        assert_eq!(cone_flow(2.7, &c).h, c.h);
    }

    #[test]
    fn cotangent_flow_examples() {
        assert_eq!(
            cotangent_flow(0.0, 1.0, 0.0).unwrap(),
            FlowState::Regular(CotangentHalfLine { qbar: 1.0, pbar: 0.0 })
        );
        assert!(cotangent_flow(PI / 2.0, 1.0, 0.0).unwrap().is_blowup());
        assert!(cotangent_flow(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn flows_agree_through_imap() {
        let y0 = CotangentHalfLine { qbar: 0.8, pbar: -0.6 };
        let (h0, t0) = flow_constants(&y0);
        let c0 = imap(&y0).unwrap();
        for &t in &[0.0, 0.3, 1.1, 2.9, 5.0] {
            if let FlowState::Regular(y) = cotangent_flow(t, h0, t0).unwrap() {
                let d = imap(&y).unwrap().distance(&cone_flow(t, &c0));
                assert!(d < 1e-10, "t={t}: {d}");
            }
        }
    }
}
