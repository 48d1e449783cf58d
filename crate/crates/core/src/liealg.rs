//! Exact arithmetic on su(2)⊕u(1).
//!
//! Elements are stored as real coefficients in the basis
//! `{t1, t2, t3, i}` with `t_a = (i/2)σ_a` and Pauli matrices
//! `σ1 = [[0,1],[1,0]]`, `σ2 = [[0,-i],[i,0]]`, `σ3 = [[1,0],[0,-1]]`.
//! This fixes `[t1, t2] = -t3`. The u(1) generator `i` acts on `C^2`
//! as `(i/2)·1`.
//!
//! The complexified basis `{t, t̄, t-, t+}` is
//! `t = (t1 + i t2)/√2`, `t̄ = (t1 - i t2)/√2`, `t± = t3 ± i`.
//! `span{t+}` is the Lie algebra of the electromagnetic subgroup `K`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar.
pub type C64 = Complex64;

/// Element of `C^2`, the Higgs fiber.
pub type ComplexPair = [C64; 2];

/// Complexified Lie algebra element in the `{t1, t2, t3, i}` basis.
pub type ComplexLie = [C64; 4];

const ZERO: C64 = C64::new(0.0, 0.0);

/// Real coefficients of `c1 t1 + c2 t2 + c3 t3 + c0 i`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LieCoeffs {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c0: f64,
}

/// Coefficients in the `{t, t̄, t-, t+}` basis of a real element.
///
/// The `t̄` coefficient is the conjugate of `a` and is not stored.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KPCoords {
    pub a: C64,
    pub c_minus: f64,
    pub c_plus: f64,
}

impl LieCoeffs {
    pub const T1: LieCoeffs = LieCoeffs { c1: 1.0, c2: 0.0, c3: 0.0, c0: 0.0 };
    pub const T2: LieCoeffs = LieCoeffs { c1: 0.0, c2: 1.0, c3: 0.0, c0: 0.0 };
    pub const T3: LieCoeffs = LieCoeffs { c1: 0.0, c2: 0.0, c3: 1.0, c0: 0.0 };
    pub const I: LieCoeffs = LieCoeffs { c1: 0.0, c2: 0.0, c3: 0.0, c0: 1.0 };
    /// `t+ = t3 + i`, generator of `K`.
    pub const T_PLUS: LieCoeffs = LieCoeffs { c1: 0.0, c2: 0.0, c3: 1.0, c0: 1.0 };
    /// `t- = t3 - i`.
    pub const T_MINUS: LieCoeffs = LieCoeffs { c1: 0.0, c2: 0.0, c3: 1.0, c0: -1.0 };

    pub const fn new(c1: f64, c2: f64, c3: f64, c0: f64) -> Self {
        Self { c1, c2, c3, c0 }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    /// Basis element `index` in the order `t1, t2, t3, i`.
    pub fn basis(index: usize) -> Self {
        let mut a = [0.0; 4];
        a[index] = 1.0;
        Self::from_array(a)
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.c1, self.c2, self.c3, self.c0]
    }

    pub fn from_slice(s: &[f64]) -> Self {
        Self::new(s[0], s[1], s[2], s[3])
    }

    pub fn write_to(self, s: &mut [f64]) {
        s[..4].copy_from_slice(&self.to_array());
    }

    /// su(2) part as a 3-vector.
    pub fn su2(self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn from_parts(v: [f64; 3], c0: f64) -> Self {
        Self::new(v[0], v[1], v[2], c0)
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }

    /// Unit pairing; the basis `{t1, t2, t3, i}` is orthonormal.
    pub fn dot(self, other: Self) -> f64 {
        self.c1 * other.c1 + self.c2 * other.c2 + self.c3 * other.c3 + self.c0 * other.c0
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Lie bracket. The u(1) part is central.
    pub fn bracket(self, other: Self) -> Self {
        let c = cross(self.su2(), other.su2());
        Self::new(-c[0], -c[1], -c[2], 0.0)
    }

    /// Coefficient of `t+` in the `k ⊕ p` split.
    pub fn k_component(self) -> f64 {
        0.5 * (self.c3 + self.c0)
    }

    /// Projection onto `p = span{t1, t2, t-}`.
    pub fn p_component(self) -> Self {
        let cm = 0.5 * (self.c3 - self.c0);
        Self::new(self.c1, self.c2, cm, -cm)
    }

    pub fn to_kp(self) -> KPCoords {
        KPCoords {
            a: C64::new(self.c1, -self.c2) * FRAC_1_SQRT_2,
            c_minus: 0.5 * (self.c3 - self.c0),
            c_plus: 0.5 * (self.c3 + self.c0),
        }
    }

    pub fn from_kp(kp: KPCoords) -> Self {
        Self::new(
            SQRT_2 * kp.a.re,
            -SQRT_2 * kp.a.im,
            kp.c_plus + kp.c_minus,
            kp.c_plus - kp.c_minus,
        )
    }

    /// Coefficients as a complexified element.
    pub fn complexify(self) -> ComplexLie {
        self.to_array().map(|x| C64::new(x, 0.0))
    }
}

impl Add for LieCoeffs {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3, self.c0 + o.c0)
    }
}

impl Sub for LieCoeffs {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3, self.c0 - o.c0)
    }
}

impl Neg for LieCoeffs {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c1, -self.c2, -self.c3, -self.c0)
    }
}

impl Mul<LieCoeffs> for f64 {
    type Output = LieCoeffs;
    fn mul(self, v: LieCoeffs) -> LieCoeffs {
        LieCoeffs::new(self * v.c1, self * v.c2, self * v.c3, self * v.c0)
    }
}

impl AddAssign for LieCoeffs {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for LieCoeffs {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl KPCoords {
    pub fn to_lie(self) -> LieCoeffs {
        LieCoeffs::from_kp(self)
    }
}

/// Complexified basis vectors.
pub mod cbasis {
    use super::{ComplexLie, C64, FRAC_1_SQRT_2, ZERO};

    pub const T: ComplexLie = [
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(0.0, FRAC_1_SQRT_2),
        ZERO,
        ZERO,
    ];
    pub const T_BAR: ComplexLie = [
        C64::new(FRAC_1_SQRT_2, 0.0),
        C64::new(0.0, -FRAC_1_SQRT_2),
        ZERO,
        ZERO,
    ];
    pub const T3: ComplexLie = [ZERO, ZERO, C64::new(1.0, 0.0), ZERO];
    pub const T_PLUS: ComplexLie = [ZERO, ZERO, C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
    pub const T_MINUS: ComplexLie = [ZERO, ZERO, C64::new(1.0, 0.0), C64::new(-1.0, 0.0)];
}

/// Complex-bilinear extension of the bracket.
pub fn bracket_complex(x: &ComplexLie, y: &ComplexLie) -> ComplexLie {
    [
        -(x[1] * y[2] - x[2] * y[1]),
        -(x[2] * y[0] - x[0] * y[2]),
        -(x[0] * y[1] - x[1] * y[0]),
        ZERO,
    ]
}

/// Lie bracket `[xi, zeta]`.
pub fn bracket(xi: LieCoeffs, zeta: LieCoeffs) -> LieCoeffs {
    xi.bracket(zeta)
}

pub(crate) fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Gauge couplings and Higgs parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Couplings {
    pub g: f64,
    pub gp: f64,
    pub lambda_h: f64,
    pub nu_h: f64,
}

impl Couplings {
    pub fn new(g: f64, gp: f64, lambda_h: f64, nu_h: f64) -> Result<Self> {
        let c = Self { g, gp, lambda_h, nu_h };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.g.is_finite()
            && self.gp.is_finite()
            && self.lambda_h.is_finite()
            && self.nu_h.is_finite();
        if !ok || self.g <= 0.0 || self.gp <= 0.0 {
            return Err(Error::Validation("couplings g, g' must be positive".into()));
        }
        if self.lambda_h <= 0.0 {
            return Err(Error::Validation("lambda_h must be positive".into()));
        }
        if self.nu_h == 0.0 {
            return Err(Error::Validation("nu_h must be non-zero".into()));
        }
        Ok(())
    }

    /// `sqrt(g^2 + g'^2)`.
    pub fn g_norm(&self) -> f64 {
        self.g.hypot(self.gp)
    }

    /// Elementary charge `g g' / sqrt(g^2 + g'^2)`.
    pub fn e(&self) -> f64 {
        self.g * self.gp / self.g_norm()
    }

    /// Weinberg angle, `tan θ_W = g'/g`.
    pub fn theta_w(&self) -> f64 {
        self.gp.atan2(self.g)
    }

    pub fn cos_w(&self) -> f64 {
        self.g / self.g_norm()
    }

    pub fn sin_w(&self) -> f64 {
        self.gp / self.g_norm()
    }

    /// Diagonal weights of `kappa` in the `{t1, t2, t3, i}` basis.
    pub fn kappa_weights(&self) -> [f64; 4] {
        let a = 1.0 / (self.g * self.g);
        let b = 1.0 / (self.gp * self.gp);
        [a, a, a, b]
    }

    /// Diagonal weights of `kappa^{-1}`.
    pub fn kappa_inv_weights(&self) -> [f64; 4] {
        let a = self.g * self.g;
        let b = self.gp * self.gp;
        [a, a, a, b]
    }

    /// Vacuum Higgs field `(0, |nu|/sqrt 2)`.
    pub fn vacuum_higgs(&self) -> ComplexPair {
        [ZERO, C64::new(self.nu_h.abs() * FRAC_1_SQRT_2, 0.0)]
    }
}

impl Default for Couplings {
    fn default() -> Self {
        Self { g: 0.65, gp: 0.35, lambda_h: 0.13, nu_h: 1.0 }
    }
}

/// Which bilinear form to pair with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingMode {
    Unit,
    Kappa,
    KappaInv,
}

/// Symmetric pairing on the algebra.
pub fn pairing(xi: LieCoeffs, zeta: LieCoeffs, mode: PairingMode, c: &Couplings) -> f64 {
    let w = match mode {
        PairingMode::Unit => [1.0; 4],
        PairingMode::Kappa => c.kappa_weights(),
        PairingMode::KappaInv => c.kappa_inv_weights(),
    };
    let x = xi.to_array();
    let z = zeta.to_array();
    (0..4).map(|i| w[i] * x[i] * z[i]).sum()
}

/// Apply a diagonal weight to the coefficients.
pub fn weighted(xi: LieCoeffs, w: [f64; 4]) -> LieCoeffs {
    LieCoeffs::new(w[0] * xi.c1, w[1] * xi.c2, w[2] * xi.c3, w[3] * xi.c0)
}

/// Infinitesimal representation on `C^2`.
pub fn rep_alg(xi: LieCoeffs, z: ComplexPair) -> ComplexPair {
    // (i/2)(c1 σ1 + c2 σ2 + c3 σ3 + c0) z
    let half_i = C64::new(0.0, 0.5);
    let s0 = C64::new(xi.c3 + xi.c0, 0.0) * z[0] + C64::new(xi.c1, -xi.c2) * z[1];
    let s1 = C64::new(xi.c1, xi.c2) * z[0] + C64::new(xi.c0 - xi.c3, 0.0) * z[1];
    [half_i * s0, half_i * s1]
}

/// Element of SU(2) stored as `[[α, -β̄], [β, ᾱ]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Su2 {
    pub alpha: C64,
    pub beta: C64,
}

impl Su2 {
    pub const IDENTITY: Su2 = Su2 { alpha: C64::new(1.0, 0.0), beta: ZERO };

    pub fn new(alpha: C64, beta: C64) -> Self {
        Self { alpha, beta }
    }

    /// Validates a 2×2 complex matrix as special unitary to `tol`.
    pub fn from_matrix(m: [[C64; 2]; 2], tol: f64) -> Result<Self> {
        let alpha = m[0][0];
        let beta = m[1][0];
        let consistent = (m[1][1] - alpha.conj()).norm() < tol && (m[0][1] + beta.conj()).norm() < tol;
        let unit = (alpha.norm_sqr() + beta.norm_sqr() - 1.0).abs() < tol;
        if !(consistent && unit) {
            return Err(Error::Validation("matrix is not special unitary".into()));
        }
        Ok(Self { alpha, beta })
    }

    pub fn matrix(&self) -> [[C64; 2]; 2] {
        [[self.alpha, -self.beta.conj()], [self.beta, self.alpha.conj()]]
    }

    pub fn mul(&self, o: &Su2) -> Su2 {
        // first column of M·O
        Su2 {
            alpha: self.alpha * o.alpha - self.beta.conj() * o.beta,
            beta: self.beta * o.alpha + self.alpha.conj() * o.beta,
        }
    }

    pub fn inverse(&self) -> Su2 {
        Su2 { alpha: self.alpha.conj(), beta: -self.beta }
    }

    /// Rescale to unit determinant; removes roundoff drift.
    pub fn normalized(&self) -> Su2 {
        let n = (self.alpha.norm_sqr() + self.beta.norm_sqr()).sqrt();
        Su2 { alpha: self.alpha / n, beta: self.beta / n }
    }

    /// Scalar part `w` and vector part `v` with `M = w + i v·σ`.
    pub fn quaternion(&self) -> (f64, [f64; 3]) {
        (self.alpha.re, [self.beta.im, -self.beta.re, self.alpha.im])
    }

    fn from_quaternion(w: f64, v: [f64; 3]) -> Su2 {
        Su2 { alpha: C64::new(w, v[2]), beta: C64::new(-v[1], v[0]) }
    }

    /// `exp(c1 t1 + c2 t2 + c3 t3)`.
    pub fn exp(c: [f64; 3]) -> Su2 {
        let theta = dot3(c, c).sqrt();
        let w = (0.5 * theta).cos();
        // sin(θ/2)/θ, smooth at 0
        let s = if theta < 1e-6 {
            0.5 - theta * theta / 48.0
        } else {
            (0.5 * theta).sin() / theta
        };
        Su2::from_quaternion(w, [s * c[0], s * c[1], s * c[2]])
    }

    /// Principal logarithm as su(2) coefficients, norm in `[0, 2π]`.
    pub fn log(&self) -> [f64; 3] {
        let (w, v) = self.quaternion();
        let vn = dot3(v, v).sqrt();
        let theta = 2.0 * vn.atan2(w);
        if vn == 0.0 && w < 0.0 {
            // -1 has a sphere of logarithms; pick one
            return [2.0 * PI, 0.0, 0.0];
        }
        let f = if vn < 1e-12 { 2.0 / w } else { theta / vn };
        [f * v[0], f * v[1], f * v[2]]
    }

    /// `Ad_M x = M (x·t) M^{-1}` on su(2) coefficients.
    pub fn adjoint(&self, x: [f64; 3]) -> [f64; 3] {
        let (w, v) = self.quaternion();
        let vv = dot3(v, v);
        let vx = dot3(v, x);
        let c = cross(v, x);
        [
            (w * w - vv) * x[0] - 2.0 * w * c[0] + 2.0 * vx * v[0],
            (w * w - vv) * x[1] - 2.0 * w * c[1] + 2.0 * vx * v[1],
            (w * w - vv) * x[2] - 2.0 * w * c[2] + 2.0 * vx * v[2],
        ]
    }

    pub fn act(&self, z: ComplexPair) -> ComplexPair {
        let m = self.matrix();
        [m[0][0] * z[0] + m[0][1] * z[1], m[1][0] * z[0] + m[1][1] * z[1]]
    }

    pub fn act_inverse(&self, z: ComplexPair) -> ComplexPair {
        self.inverse().act(z)
    }
}

/// Element `(a, e^{iθ})` of `SU(2) × U(1)`; `θ` is kept unwrapped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub su2: Su2,
    pub theta: f64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { su2: Su2::IDENTITY, theta: 0.0 };

    pub fn new(su2: Su2, theta: f64) -> Self {
        Self { su2, theta }
    }

    pub fn exp(xi: LieCoeffs) -> Self {
        Self { su2: Su2::exp(xi.su2()), theta: xi.c0 }
    }

    /// Logarithm with the principal su(2) branch.
    pub fn log(&self) -> LieCoeffs {
        LieCoeffs::from_parts(self.su2.log(), self.theta)
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        GroupElement { su2: self.su2.mul(&o.su2), theta: self.theta + o.theta }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { su2: self.su2.inverse(), theta: -self.theta }
    }

    pub fn adjoint(&self, xi: LieCoeffs) -> LieCoeffs {
        LieCoeffs::from_parts(self.su2.adjoint(xi.su2()), xi.c0)
    }

    pub fn adjoint_inverse(&self, xi: LieCoeffs) -> LieCoeffs {
        self.inverse().adjoint(xi)
    }

    /// Representation `a e^{iθ/2} z`.
    pub fn act(&self, z: ComplexPair) -> ComplexPair {
        let ph = C64::from_polar(1.0, 0.5 * self.theta);
        let w = self.su2.act(z);
        [ph * w[0], ph * w[1]]
    }

    pub fn act_inverse(&self, z: ComplexPair) -> ComplexPair {
        self.inverse().act(z)
    }

    pub fn normalized(&self) -> GroupElement {
        GroupElement { su2: self.su2.normalized(), theta: self.theta }
    }
}

/// Convert a right-trivialized velocity `ζ` at `exp(a)` into the
/// velocity of the exponential chart, `(ad_a / (e^{ad_a} - 1)) ζ`.
pub fn chart_velocity(a: LieCoeffs, zeta: LieCoeffs) -> LieCoeffs {
    let av = a.su2();
    let z = zeta.su2();
    let th2 = dot3(av, av);
    let th = th2.sqrt();
    let c = if th < 1e-4 {
        1.0 / 12.0 + th2 / 720.0
    } else {
        (1.0 - 0.5 * th / (0.5 * th).tan()) / th2
    };
    let axz = cross(av, z);
    let adz = dot3(av, z);
    let out = [
        z[0] + 0.5 * axz[0] + c * (av[0] * adz - th2 * z[0]),
        z[1] + 0.5 * axz[1] + c * (av[1] * adz - th2 * z[1]),
        z[2] + 0.5 * axz[2] + c * (av[2] * adz - th2 * z[2]),
    ];
    LieCoeffs::from_parts(out, zeta.c0)
}

/// Element of the electromagnetic subgroup
/// `K = {(diag(e^{iθ/2}, e^{-iθ/2}), e^{iθ})}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KElement {
    pub theta: f64,
}

impl KElement {
    pub fn new(theta: f64) -> Self {
        Self { theta: theta.rem_euclid(4.0 * PI) }
    }

    pub fn identity() -> Self {
        Self { theta: 0.0 }
    }

    pub fn compose(&self, o: &KElement) -> KElement {
        KElement::new(self.theta + o.theta)
    }

    pub fn inverse(&self) -> KElement {
        KElement::new(-self.theta)
    }

    /// `exp(θ t+)` as an element of `SU(2) × U(1)`.
    pub fn group_element(&self) -> GroupElement {
        GroupElement::exp(self.theta * LieCoeffs::T_PLUS)
    }
}

/// `Ad_k`: rotation in the `(t1, t2)` plane, `t3` and `i` fixed.
pub fn ad_k(k: &KElement, xi: LieCoeffs) -> LieCoeffs {
    let (s, c) = k.theta.sin_cos();
    LieCoeffs::new(c * xi.c1 + s * xi.c2, -s * xi.c1 + c * xi.c2, xi.c3, xi.c0)
}

/// Group representation `ρ_{a,θ}(z) = a e^{iθ/2} z`; `a` is validated.
pub fn rep_group(a: [[C64; 2]; 2], theta: f64, z: ComplexPair) -> Result<ComplexPair> {
    let su2 = Su2::from_matrix(a, 1e-10)?;
    Ok(GroupElement::new(su2, theta).act(z))
}

/// `λ(|f|^2 - ν^2/2)^2`.
pub fn higgs_potential(f: ComplexPair, c: &Couplings) -> f64 {
    let r = f[0].norm_sqr() + f[1].norm_sqr() - 0.5 * c.nu_h * c.nu_h;
    c.lambda_h * r * r
}

/// Gradient of the Higgs potential with respect to the real
/// coordinates of `f` (as a complex pair).
pub fn higgs_potential_grad(f: ComplexPair, c: &Couplings) -> ComplexPair {
    let r = f[0].norm_sqr() + f[1].norm_sqr() - 0.5 * c.nu_h * c.nu_h;
    let k = 4.0 * c.lambda_h * r;
    [f[0] * k, f[1] * k]
}

/// Momentum map of the lifted action on `T*C^2`, identified with the
/// algebra by the unit pairing: `<J, ξ> = Re(v^* ρ_ξ z)`.
pub fn fiber_momentum(z: ComplexPair, v: ComplexPair) -> LieCoeffs {
    let mut out = [0.0; 4];
    for (b, o) in out.iter_mut().enumerate() {
        let w = rep_alg(LieCoeffs::basis(b), z);
        *o = (v[0].conj() * w[0] + v[1].conj() * w[1]).re;
    }
    LieCoeffs::from_array(out)
}

/// Real inner product on `C^2`.
pub fn pair_dot(a: ComplexPair, b: ComplexPair) -> f64 {
    (a[0].conj() * b[0] + a[1].conj() * b[1]).re
}

pub fn pair_norm_sqr(a: ComplexPair) -> f64 {
    a[0].norm_sqr() + a[1].norm_sqr()
}

pub fn pair_from_slice(s: &[f64]) -> ComplexPair {
    [C64::new(s[0], s[1]), C64::new(s[2], s[3])]
}

pub fn pair_write(z: ComplexPair, s: &mut [f64]) {
    s[0] = z[0].re;
    s[1] = z[0].im;
    s[2] = z[1].re;
    s[3] = z[1].im;
}
