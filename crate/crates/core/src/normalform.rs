//! Cotangent normal form for linear actions of compact matrix groups.
//!
//! A group `G ⊂ O(n)` acts on `Q = R^n` by matrices and on `T*Q` by the
//! cotangent lift `(q, p) ↦ (a q, a p)`. At a base point `q` the tube
//! `G ×_{G_q} (m* × T*S)` is mapped onto a neighborhood of `T*_q Q` by
//! [`tube_phi`], and the momentum map becomes
//! `CoAd_a (ν + J_{G_q}(α_s))`.
//!
//! Algebra elements are stored as coefficient vectors against a basis that
//! is orthonormal for the normalized trace form `−tr(XY)`. Duals are
//! identified with the algebra through that form.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, RngExt};

use crate::error::{Error, Result};

/// Relative threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-8;
/// Central-difference step for the pulled-back form.
pub const FD_STEP: f64 = 1e-5;

/// Linear action of a compact group through antisymmetric generators.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearGAction {
    pub n: usize,
    /// Orthonormal basis of the Lie algebra.
    pub basis: Vec<DMatrix<f64>>,
    /// `[b_i, b_j] = Σ_k structure[(i·d + j)·d + k] b_k`.
    pub structure: Vec<f64>,
    trace_scale: f64,
}

impl LinearGAction {
    /// Orthonormalizes `generators` for `−tr(XY)/s`, where `s` is the
    /// trace norm of the first generator.
    pub fn new(generators: Vec<DMatrix<f64>>) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::Validation("no generators".into()))?;
        let n = first.nrows();
        for g in &generators {
            if g.nrows() != n || g.ncols() != n {
                return Err(Error::Validation("generators must be square and of equal size".into()));
            }
            if (g + g.transpose()).amax() > 1e-14 {
                return Err(Error::Validation("generators must be antisymmetric".into()));
            }
        }
        let trace_scale = -(first * first).trace();
        if !(trace_scale > 0.0) {
            return Err(Error::Validation("first generator vanishes".into()));
        }
        let ip = |x: &DMatrix<f64>, y: &DMatrix<f64>| -(x * y).trace() / trace_scale;
        let mut basis: Vec<DMatrix<f64>> = Vec::new();
        for g in generators {
            let mut v = g.clone();
            for b in &basis {
                v -= b * ip(b, &g);
            }
            let nv = ip(&v, &v).sqrt();
            if nv > 1e-10 {
                basis.push(v / nv);
            }
        }
        let d = basis.len();
        let mut structure = vec![0.0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let c = &basis[i] * &basis[j] - &basis[j] * &basis[i];
                let mut rest = c.clone();
                for k in 0..d {
                    let ck = ip(&c, &basis[k]);
                    structure[(i * d + j) * d + k] = ck;
                    rest -= &basis[k] * ck;
                }
                if rest.amax() > 1e-10 {
                    return Err(Error::Validation("generators do not close under the commutator".into()));
                }
            }
        }
        Ok(Self { n, basis, structure, trace_scale })
    }

    /// `SO(2)` rotating the plane.
    pub fn so2() -> Self {
        Self::new(vec![DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])]).expect("so(2)")
    }

    /// `SO(3)` on `R^3` with generators `(L_a)_{bc} = −ε_{abc}`.
    pub fn so3() -> Self {
        let mut gens = Vec::new();
        for a in 0..3 {
            let mut m = DMatrix::zeros(3, 3);
            let (b, c) = ((a + 1) % 3, (a + 2) % 3);
            m[(b, c)] = -1.0;
            m[(c, b)] = 1.0;
            gens.push(m);
        }
        Self::new(gens).expect("so(3)")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Invariant inner product on matrices.
    pub fn inner(&self, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
        -(x * y).trace() / self.trace_scale
    }

    pub fn coords(&self, x: &DMatrix<f64>) -> DVector<f64> {
        DVector::from_iterator(self.dim(), self.basis.iter().map(|b| self.inner(x, b)))
    }

    pub fn element(&self, c: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (b, ci) in self.basis.iter().zip(c.iter()) {
            m += b * *ci;
        }
        m
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let d = self.dim();
        let mut out = DVector::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let w = x[i] * y[j];
                if w != 0.0 {
                    for k in 0..d {
                        out[k] += w * self.structure[(i * d + j) * d + k];
                    }
                }
            }
        }
        out
    }

    pub fn exp(&self, c: &DVector<f64>) -> DMatrix<f64> {
        self.element(c).exp()
    }

    /// `Ad_a` as a matrix on coefficient vectors.
    pub fn adjoint_matrix(&self, a: &DMatrix<f64>) -> DMatrix<f64> {
        let d = self.dim();
        let at = a.transpose();
        let mut m = DMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.coords(&(a * &self.basis[j] * &at));
            m.set_column(j, &col);
        }
        m
    }

    /// Random group element `exp(ξ)` with `‖ξ‖ ≤ π/2`.
    pub fn sample_group<R: Rng>(&self, rng: &mut R) -> DMatrix<f64> {
        let mut c = DVector::from_fn(self.dim(), |_, _| rng.random_range(-1.0..1.0));
        let nc = c.norm();
        if nc > 0.0 {
            c *= rng.random_range(0.0..std::f64::consts::FRAC_PI_2) / nc;
        }
        self.exp(&c)
    }

    /// Matrix with columns `b_i q`.
    pub fn orbit_map(&self, q: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.dim());
        for (i, b) in self.basis.iter().enumerate() {
            m.set_column(i, &(b * q));
        }
        m
    }
}

/// Orthonormal bases of the kernel and of the row space of `m`.
fn kernel_and_coimage(m: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let (r, c) = m.shape();
    let size = r.max(c);
    let mut sq = DMatrix::zeros(size, size);
    sq.view_mut((0, 0), (r, c)).copy_from(m);
    let svd = sq.try_svd(true, true, 1e-15, 10_000).ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let vt = svd.v_t.ok_or_else(|| Error::Numerical("SVD without right vectors".into()))?;
    let smax = svd.singular_values.max();
    let thr = RANK_TOL * smax.max(f64::MIN_POSITIVE);
    let mut ker = Vec::new();
    let mut coim = Vec::new();
    for i in 0..size {
        let row: DVector<f64> = vt.row(i).transpose().rows(0, c).into_owned();
        if row.norm() < 0.5 {
            continue; // padding direction
        }
        if smax == 0.0 || svd.singular_values[i] <= thr {
            ker.push(row);
        } else {
            coim.push(row);
        }
    }
    let to_mat = |v: &[DVector<f64>]| {
        if v.is_empty() {
            DMatrix::zeros(c, 0)
        } else {
            DMatrix::from_columns(v)
        }
    };
    Ok((to_mat(&ker), to_mat(&coim)))
}

/// Orthonormal basis of the null space of `m` (columns).
pub fn null_space(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    Ok(kernel_and_coimage(m)?.0)
}

/// Slice and algebra splitting at a base point.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceData {
    pub q: DVector<f64>,
    /// Columns: coefficient vectors spanning `g_q`.
    pub stab: DMatrix<f64>,
    /// Columns: coefficient vectors spanning the complement `m`.
    pub m: DMatrix<f64>,
    /// Columns: orthonormal directions of `(g·q)^⊥`.
    pub slice_dirs: DMatrix<f64>,
    pub radius: f64,
}

pub fn build_slice(act: &LinearGAction, q: &DVector<f64>) -> Result<SliceData> {
    if q.len() != act.n {
        return Err(Error::Validation("base point has the wrong dimension".into()));
    }
    let om = act.orbit_map(q);
    let (stab, m) = kernel_and_coimage(&om)?;
    // (g·q)^⊥ is the kernel of the transpose of the orbit map
    let slice_dirs = null_space(&om.transpose())?;
    let nq = q.norm();
    let radius = if nq == 0.0 { 1.0 } else { 0.2 * nq };
    Ok(SliceData { q: q.clone(), stab, m, slice_dirs, radius })
}

/// Point `[a, (ν, α_s)]` of the tube.
#[derive(Debug, Clone, PartialEq)]
pub struct TubeCoords {
    pub a: DMatrix<f64>,
    /// Coefficients against the columns of `SliceData::m`.
    pub nu: DVector<f64>,
    /// Slice point in `R^n`.
    pub s: DVector<f64>,
    /// Coefficients against `SliceData::slice_dirs`.
    pub alpha_s: DVector<f64>,
}

impl TubeCoords {
    /// Random tube point with entries in `[−1, 1)` and the slice offset
    /// inside `0.9` of the slice radius.
    pub fn random<R: Rng>(act: &LinearGAction, sl: &SliceData, rng: &mut R) -> Self {
        let r = sl.slice_dirs.ncols();
        let mut off = uniform_vec(rng, r);
        off *= 0.9 * sl.radius * rng.random_range(0.0..1.0) / off.norm().max(1e-300);
        TubeCoords {
            a: act.sample_group(rng),
            nu: uniform_vec(rng, sl.m.ncols()),
            s: &sl.q + &sl.slice_dirs * off,
            alpha_s: uniform_vec(rng, r),
        }
    }

    fn validate(&self, sl: &SliceData) -> Result<()> {
        if self.nu.len() != sl.m.ncols() || self.alpha_s.len() != sl.slice_dirs.ncols() || self.s.len() != sl.q.len() {
            return Err(Error::Validation("tube coordinates do not match the slice".into()));
        }
        let off = &self.s - &sl.q;
        let along = sl.slice_dirs.transpose() * &off;
        if (&sl.slice_dirs * &along - &off).norm() > 1e-10 * (1.0 + off.norm()) {
            return Err(Error::Validation("slice point leaves the slice".into()));
        }
        if off.norm() >= sl.radius {
            return Err(Error::Validation("slice point outside the slice radius".into()));
        }
        Ok(())
    }
}

/// `J_i = p · (b_i q)`.
pub fn lifted_momentum(act: &LinearGAction, q: &DVector<f64>, p: &DVector<f64>) -> DVector<f64> {
    act.orbit_map(q).transpose() * p
}

/// `CoAd_a μ`, defined by `<CoAd_a μ, ξ> = <μ, Ad_{a^{-1}} ξ>`.
pub fn coadjoint(act: &LinearGAction, a: &DMatrix<f64>, mu: &DVector<f64>) -> DVector<f64> {
    let ad_inv = act.adjoint_matrix(&a.transpose());
    ad_inv.transpose() * mu
}

/// Covector at `s` with prescribed pairings against `m·s` and the slice.
fn slice_covector(act: &LinearGAction, sl: &SliceData, s: &DVector<f64>, nu: &DVector<f64>, alpha: &DVector<f64>) -> Result<DVector<f64>> {
    let n = act.n;
    let mdim = sl.m.ncols();
    let rdim = sl.slice_dirs.ncols();
    if mdim + rdim != n {
        return Err(Error::Numerical(format!("tube system is not square: {mdim} + {rdim} ≠ {n}")));
    }
    let mut rows = DMatrix::zeros(n, n);
    let mut rhs = DVector::zeros(n);
    for k in 0..mdim {
        let rho = act.element(&sl.m.column(k).into_owned());
        rows.set_row(k, &(rho * s).transpose());
        rhs[k] = nu[k];
    }
    for j in 0..rdim {
        rows.set_row(mdim + j, &sl.slice_dirs.column(j).transpose());
        rhs[mdim + j] = alpha[j];
    }
    let svd = rows.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > RANK_TOL * smax) {
        return Err(Error::Numerical("tube system is singular".into()));
    }
    rows.lu().solve(&rhs).ok_or_else(|| Error::Numerical("tube solve failed".into()))
}

/// `Φ([a, (ν, α_s)]) = (a s, a p̃)`.
pub fn tube_phi(act: &LinearGAction, sl: &SliceData, tc: &TubeCoords) -> Result<(DVector<f64>, DVector<f64>)> {
    tc.validate(sl)?;
    let pt = slice_covector(act, sl, &tc.s, &tc.nu, &tc.alpha_s)?;
    Ok((&tc.a * &tc.s, &tc.a * pt))
}

/// Momentum of the lifted `G_q`-action on `T*S`, as an element of `g`
/// supported on `g_q`.
pub fn stabilizer_momentum(act: &LinearGAction, sl: &SliceData, s: &DVector<f64>, alpha: &DVector<f64>) -> DVector<f64> {
    let cov = &sl.slice_dirs * alpha;
    let mut out = DVector::zeros(act.dim());
    for k in 0..sl.stab.ncols() {
        let b = sl.stab.column(k).into_owned();
        let w = cov.dot(&(act.element(&b) * s));
        out += b * w;
    }
    out
}

/// `ν` as an element of `g`.
pub fn nu_in_algebra(sl: &SliceData, nu: &DVector<f64>) -> DVector<f64> {
    &sl.m * nu
}

/// `‖J(Φ(tc)) − CoAd_a(ν + J_{G_q}(α_s))‖`.
pub fn verify_normal_form(act: &LinearGAction, sl: &SliceData, tc: &TubeCoords) -> Result<f64> {
    let (q, p) = tube_phi(act, sl, tc)?;
    let lhs = lifted_momentum(act, &q, &p);
    let inner = nu_in_algebra(sl, &tc.nu) + stabilizer_momentum(act, sl, &tc.s, &tc.alpha_s);
    Ok((lhs - coadjoint(act, &tc.a, &inner)).norm())
}

/// Tangent vector `(ξ, η, Z)` at a tube point. `xi` and `eta` are
/// coefficients in the `m` basis; `ds` and `dalpha` are slice coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TubeTangent {
    pub xi: DVector<f64>,
    pub eta: DVector<f64>,
    pub ds: DVector<f64>,
    pub dalpha: DVector<f64>,
}

impl TubeTangent {
    /// Random tangent; `mask` switches the `ξ`, `η` and slice parts on.
    pub fn random<R: Rng>(sl: &SliceData, rng: &mut R, mask: [bool; 3]) -> Self {
        let scale = |b: bool| if b { 1.0 } else { 0.0 };
        TubeTangent {
            xi: uniform_vec(rng, sl.m.ncols()) * scale(mask[0]),
            eta: uniform_vec(rng, sl.m.ncols()) * scale(mask[1]),
            ds: uniform_vec(rng, sl.slice_dirs.ncols()) * scale(mask[2]),
            dalpha: uniform_vec(rng, sl.slice_dirs.ncols()) * scale(mask[2]),
        }
    }
}

fn uniform_vec<R: Rng>(rng: &mut R, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
}

fn moved(act: &LinearGAction, sl: &SliceData, tc: &TubeCoords, v: &TubeTangent, t: f64) -> TubeCoords {
    let xi = &sl.m * &v.xi;
    TubeCoords {
        a: &tc.a * act.exp(&(xi * t)),
        nu: &tc.nu + &v.eta * t,
        s: &tc.s + &sl.slice_dirs * &v.ds * t,
        alpha_s: &tc.alpha_s + &v.dalpha * t,
    }
}

/// `(Φ*ω)(v1, v2)` by central differences, with `ω(v1, v2) = δp1·δq2 − δp2·δq1`.
pub fn pullback_omega_fd(act: &LinearGAction, sl: &SliceData, tc: &TubeCoords, v1: &TubeTangent, v2: &TubeTangent) -> Result<f64> {
    let diff = |v: &TubeTangent| -> Result<(DVector<f64>, DVector<f64>)> {
        let (qp, pp) = tube_phi(act, sl, &moved(act, sl, tc, v, FD_STEP))?;
        let (qm, pm) = tube_phi(act, sl, &moved(act, sl, tc, v, -FD_STEP))?;
        Ok(((qp - qm) / (2.0 * FD_STEP), (pp - pm) / (2.0 * FD_STEP)))
    };
    let (dq1, dp1) = diff(v1)?;
    let (dq2, dp2) = diff(v2)?;
    Ok(dp1.dot(&dq2) - dp2.dot(&dq1))
}

/// `κ(η¹, ξ²) − κ(η², ξ¹) − κ(ν + J_{G_q}(α_s), [ξ¹, ξ²]) + ω^S(Z¹, Z²)`.
pub fn pullback_omega_formula(act: &LinearGAction, sl: &SliceData, tc: &TubeCoords, v1: &TubeTangent, v2: &TubeTangent) -> f64 {
    let mom = nu_in_algebra(sl, &tc.nu) + stabilizer_momentum(act, sl, &tc.s, &tc.alpha_s);
    let br = act.bracket(&(&sl.m * &v1.xi), &(&sl.m * &v2.xi));
    v1.eta.dot(&v2.xi) - v2.eta.dot(&v1.xi) - mom.dot(&br) + v1.dalpha.dot(&v2.ds) - v2.dalpha.dot(&v1.ds)
}

/// Largest mismatch between [`pullback_omega_fd`] and
/// [`pullback_omega_formula`] at a zero-momentum tube point.
pub fn pullback_omega_check(act: &LinearGAction, sl: &SliceData, tc: &TubeCoords, pairs: &[(TubeTangent, TubeTangent)]) -> Result<f64> {
    let (q, p) = tube_phi(act, sl, tc)?;
    let j = lifted_momentum(act, &q, &p).norm();
    if j > 1e-8 {
        return Err(Error::Precondition(format!("momentum {j:e} is not zero")));
    }
    let mut worst = 0.0f64;
    for (v1, v2) in pairs {
        let fd = pullback_omega_fd(act, sl, tc, v1, v2)?;
        worst = worst.max((fd - pullback_omega_formula(act, sl, tc, v1, v2)).abs());
    }
    Ok(worst)
}

/// Standard form `[[0, −I], [I, 0]]` on `T*R^n` with `y = (q, p)`.
pub fn canonical_omega(n: usize) -> DMatrix<f64> {
    let mut o = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        o[(i, n + i)] = -1.0;
        o[(n + i, i)] = 1.0;
    }
    o
}

/// Cotangent lift `diag(X, X)` of an antisymmetric generator.
pub fn cotangent_lift(x: &DMatrix<f64>) -> DMatrix<f64> {
    let n = x.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(x);
    m.view_mut((n, n), (n, n)).copy_from(x);
    m
}

/// Quadratic momentum map `J_i(y) = ½ yᵀ Ω X_i y` of a linear symplectic
/// action. Its differential is `dJ_i = ω(·, X_i y)`.
pub fn linear_momentum(omega: &DMatrix<f64>, generators: &[DMatrix<f64>], y: &DVector<f64>) -> Result<DVector<f64>> {
    for x in generators {
        let defect = x.transpose() * omega + omega * x;
        if defect.amax() > 1e-10 {
            return Err(Error::Validation("action does not preserve the symplectic form".into()));
        }
    }
    Ok(DVector::from_iterator(
        generators.len(),
        generators.iter().map(|x| 0.5 * y.dot(&(omega * x * y))),
    ))
}

/// Dimension of the stabilizer algebra of `(q, p)` under the lifted action.
pub fn phase_stabilizer_dim(act: &LinearGAction, q: &DVector<f64>, p: &DVector<f64>) -> Result<usize> {
    let mut m = DMatrix::zeros(2 * act.n, act.dim());
    m.view_mut((0, 0), (act.n, act.dim())).copy_from(&act.orbit_map(q));
    m.view_mut((act.n, 0), (act.n, act.dim())).copy_from(&act.orbit_map(p));
    if m.amax() == 0.0 {
        return Ok(act.dim());
    }
    Ok(null_space(&m)?.ncols())
}

/// Dimension of the stabilizer algebra of `q`.
pub fn config_stabilizer_dim(act: &LinearGAction, q: &DVector<f64>) -> Result<usize> {
    let m = act.orbit_map(q);
    if m.amax() == 0.0 {
        return Ok(act.dim());
    }
    Ok(null_space(&m)?.ncols())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{angular_momentum, PhasePoint2D};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rvec<R: Rng>(rng: &mut R, n: usize) -> DVector<f64> {
        DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
    }

    fn north() -> DVector<f64> {
        DVector::from_vec(vec![0.0, 0.0, 1.0])
    }

    #[test]
    fn so3_structure_is_cross_product() {
        let act = LinearGAction::so3();
        let e = |i| DVector::from_fn(3, |k, _| if k == i { 1.0 } else { 0.0 });
        let b = act.bracket(&e(0), &e(1));
        assert!((b - e(2)).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_antisymmetric_and_open_sets() {
        assert!(LinearGAction::new(vec![DMatrix::identity(2, 2)]).is_err());
        let so3 = LinearGAction::so3();
        let two = vec![so3.basis[0].clone(), so3.basis[1].clone()];
        assert!(LinearGAction::new(two).is_err());
    }

    #[test]
    fn slice_examples() {
        let act = LinearGAction::so3();
        let sl = build_slice(&act, &north()).unwrap();
        assert_eq!((sl.stab.ncols(), sl.m.ncols(), sl.slice_dirs.ncols()), (1, 2, 1));
        assert!((sl.slice_dirs.column(0).abs() - north()).norm() < 1e-12);
        assert!((sl.stab.column(0).abs() - north()).norm() < 1e-12);

        let so2 = LinearGAction::so2();
        let sl = build_slice(&so2, &DVector::from_vec(vec![1.0, 0.0])).unwrap();
        assert_eq!((sl.stab.ncols(), sl.m.ncols()), (0, 1));

        let sl = build_slice(&act, &DVector::zeros(3)).unwrap();
        assert_eq!((sl.stab.ncols(), sl.m.ncols(), sl.slice_dirs.ncols()), (3, 0, 3));
        assert_eq!(sl.radius, 1.0);
    }

    #[test]
    fn complement_is_stabilizer_invariant() {
        let act = LinearGAction::so3();
        let q = DVector::from_vec(vec![0.3, -0.8, 0.5]);
        let sl = build_slice(&act, &q).unwrap();
        for &t in &[0.3, 1.7, -2.2] {
            let g = act.exp(&(sl.stab.column(0) * t));
            assert!((&g * &q - &q).norm() < 1e-12);
            let ad = act.adjoint_matrix(&g);
            let image = &ad * &sl.m;
            let outside = &image - &sl.m * (sl.m.transpose() * &image);
            assert!(outside.amax() < 1e-10);
        }
    }

    #[test]
    fn lifted_momentum_matches_angular_momentum() {
        let act = LinearGAction::so2();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let q = rvec(&mut rng, 2);
            let p = rvec(&mut rng, 2);
            let j = lifted_momentum(&act, &q, &p)[0];
            let l = angular_momentum(&PhasePoint2D::new([q[0], q[1]], [p[0], p[1]]));
            assert!((j - l).abs() < 1e-12);
        }
        assert_eq!(lifted_momentum(&act, &DVector::from_vec(vec![1.0, 2.0]), &DVector::zeros(2))[0], 0.0);
    }

    #[test]
    fn lifted_momentum_is_equivariant() {
        let act = LinearGAction::so3();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let g = act.sample_group(&mut rng);
            let q = rvec(&mut rng, 3);
            let p = rvec(&mut rng, 3);
            let lhs = lifted_momentum(&act, &(&g * &q), &(&g * &p));
            let rhs = coadjoint(&act, &g, &lifted_momentum(&act, &q, &p));
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn tube_phi_examples() {
        let act = LinearGAction::so3();
        let sl = build_slice(&act, &north()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut tc = TubeCoords::random(&act, &sl, &mut rng);
        tc.nu.fill(0.0);
        tc.alpha_s.fill(0.0);
        assert!(tube_phi(&act, &sl, &tc).unwrap().1.norm() < 1e-15);

        let mut tc = TubeCoords::random(&act, &sl, &mut rng);
        tc.a = DMatrix::identity(3, 3);
        let (q, p) = tube_phi(&act, &sl, &tc).unwrap();
        for k in 0..2 {
            let rho = act.element(&sl.m.column(k).into_owned());
            assert!((p.dot(&(rho * &q)) - tc.nu[k]).abs() < 1e-10);
        }
    }

    #[test]
    fn tube_phi_is_equivariant() {
        let act = LinearGAction::so3();
        let sl = build_slice(&act, &DVector::from_vec(vec![0.2, 0.7, -0.4])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let tc = TubeCoords::random(&act, &sl, &mut rng);
            let g = act.sample_group(&mut rng);
            let (q, p) = tube_phi(&act, &sl, &tc).unwrap();
            let moved = TubeCoords { a: &g * &tc.a, ..tc.clone() };
            let (q2, p2) = tube_phi(&act, &sl, &moved).unwrap();
            assert!((q2 - &g * q).norm() < 1e-10 && (p2 - &g * p).norm() < 1e-10);
        }
    }

    #[test]
    fn normal_form_residual_is_small() {
        let act = LinearGAction::so3();
        let sl = build_slice(&act, &north()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let tc = TubeCoords::random(&act, &sl, &mut rng);
            assert!(verify_normal_form(&act, &sl, &tc).unwrap() < 1e-10);
        }
        let mut tc = TubeCoords::random(&act, &sl, &mut rng);
        tc.nu.fill(0.0);
        tc.alpha_s.fill(0.0);
        let (q, p) = tube_phi(&act, &sl, &tc).unwrap();
        assert!(lifted_momentum(&act, &q, &p).norm() < 1e-15);
    }

    #[test]
    fn zero_momentum_iff_both_parts_vanish() {
        // rotations of R^3 ⊕ R^3 have a non-trivial stabilizer momentum on the slice
        let so3 = LinearGAction::so3();
        let gens = so3
            .basis
            .iter()
            .map(|b| {
                let mut m = DMatrix::zeros(6, 6);
                m.view_mut((0, 0), (3, 3)).copy_from(b);
                m.view_mut((3, 3), (3, 3)).copy_from(b);
                m
            })
            .collect();
        let act = LinearGAction::new(gens).unwrap();
        let q = DVector::from_vec(vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let sl = build_slice(&act, &q).unwrap();
        assert_eq!(sl.stab.ncols(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for trial in 0..40 {
            let mut tc = TubeCoords::random(&act, &sl, &mut rng);
            if trial % 2 == 0 {
                tc.nu.fill(0.0);
            }
            let (qq, pp) = tube_phi(&act, &sl, &tc).unwrap();
            let j_zero = lifted_momentum(&act, &qq, &pp).norm() < 1e-9;
            let parts_zero = tc.nu.norm() < 1e-12 && stabilizer_momentum(&act, &sl, &tc.s, &tc.alpha_s).norm() < 1e-9;
            assert_eq!(j_zero, parts_zero);
            assert!(verify_normal_form(&act, &sl, &tc).unwrap() < 1e-10);
        }
    }

    #[test]
    fn pullback_form_blocks() {
        let act = LinearGAction::so3();
        let sl = build_slice(&act, &north()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tc = TubeCoords::random(&act, &sl, &mut rng);
        tc.nu.fill(0.0);
        let slice_only = [false, false, true];
        let group_only = [true, true, false];
        let pairs: Vec<_> = (0..10)
            .map(|i| {
                let (m1, m2) = match i % 3 {
                    0 => (slice_only, slice_only),
                    1 => (group_only, group_only),
                    _ => (group_only, slice_only),
                };
                (TubeTangent::random(&sl, &mut rng, m1), TubeTangent::random(&sl, &mut rng, m2))
            })
            .collect();
        assert!(pullback_omega_check(&act, &sl, &tc, &pairs).unwrap() < 1e-5);
        let (v1, v2) = (&pairs[2].0, &pairs[2].1);
        assert!(pullback_omega_fd(&act, &sl, &tc, v1, v2).unwrap().abs() < 1e-5);
    }

    #[test]
    fn pullback_form_away_from_zero_momentum() {
        let act = LinearGAction::so3();
        let sl = build_slice(&act, &DVector::from_vec(vec![0.5, -0.2, 0.9])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let tc = TubeCoords::random(&act, &sl, &mut rng);
        for _ in 0..10 {
            let v1 = TubeTangent::random(&sl, &mut rng, [true; 3]);
            let v2 = TubeTangent::random(&sl, &mut rng, [true; 3]);
            let fd = pullback_omega_fd(&act, &sl, &tc, &v1, &v2).unwrap();
            assert!((fd - pullback_omega_formula(&act, &sl, &tc, &v1, &v2)).abs() < 1e-6);
        }
        assert!(matches!(pullback_omega_check(&act, &sl, &tc, &[]), Err(Error::Precondition(_))));
    }

    #[test]
    fn linear_momentum_examples() {
        let act = LinearGAction::so2();
        let omega = canonical_omega(2);
        let gens: Vec<_> = act.basis.iter().map(cotangent_lift).collect();
        assert_eq!(linear_momentum(&omega, &gens, &DVector::zeros(4)).unwrap()[0], 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let y = rvec(&mut rng, 4);
            let q = y.rows(0, 2).into_owned();
            let p = y.rows(2, 2).into_owned();
            let j = linear_momentum(&omega, &gens, &y).unwrap()[0];
            assert!((j - lifted_momentum(&act, &q, &p)[0]).abs() < 1e-12);
            // dJ(z) = ω(z, X y)
            let z = rvec(&mut rng, 4);
            let h = 1e-5;
            let jp = linear_momentum(&omega, &gens, &(&y + &z * h)).unwrap()[0];
            let jm = linear_momentum(&omega, &gens, &(&y - &z * h)).unwrap()[0];
            let want = z.dot(&(&omega * &gens[0] * &y));
            assert!(((jp - jm) / (2.0 * h) - want).abs() < 1e-6);
        }
        let bad = vec![DMatrix::identity(4, 4)];
        assert!(linear_momentum(&omega, &bad, &DVector::zeros(4)).is_err());
    }

    #[test]
    fn orbit_types_on_zero_momentum_level() {
        let act = LinearGAction::so3();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..30 {
            let q = rvec(&mut rng, 3);
            let p = &q * rng.random_range(-2.0..2.0);
            assert!(lifted_momentum(&act, &q, &p).norm() < 1e-12);
            assert_eq!(phase_stabilizer_dim(&act, &q, &p).unwrap(), 1);
            assert_eq!(config_stabilizer_dim(&act, &q).unwrap(), 1);
        }
        let z = DVector::zeros(3);
        assert_eq!(phase_stabilizer_dim(&act, &z, &z).unwrap(), 3);
    }

    /// `ker dJ` is the ω-orthogonal of the orbit tangent space.
    #[test]
    fn kernel_of_momentum_differential_is_orbit_annihilator() {
        let act = LinearGAction::so3();
        let omega = canonical_omega(3);
        let gens: Vec<_> = act.basis.iter().map(cotangent_lift).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let y = rvec(&mut rng, 6);
            // rows: dJ_i = (Ω X_i y)ᵀ
            let mut dj = DMatrix::zeros(3, 6);
            let mut orbit = DMatrix::zeros(6, 3);
            for i in 0..3 {
                dj.set_row(i, &(&omega * &gens[i] * &y).transpose());
                orbit.set_column(i, &(&gens[i] * &y));
            }
            let ker = null_space(&dj).unwrap();
            let orth = null_space(&(orbit.transpose() * &omega)).unwrap();
            assert_eq!(ker.ncols(), orth.ncols());
            let proj = &orth * (orth.transpose() * &ker) - &ker;
            assert!(proj.amax() < 1e-8);
        }
    }

    #[test]
    fn tube_phi_is_injective_in_the_fiber() {
        let act = LinearGAction::so3();
        let sl = build_slice(&act, &north()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let base = TubeCoords::random(&act, &sl, &mut rng);
        let mut images = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                let tc = TubeCoords {
                    nu: DVector::from_vec(vec![i as f64 * 0.5, -(j as f64) * 0.5]),
                    alpha_s: DVector::from_vec(vec![(i + j) as f64 * 0.25]),
                    ..base.clone()
                };
                images.push(tube_phi(&act, &sl, &tc).unwrap().1);
            }
        }
        let mut dmin = f64::INFINITY;
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                dmin = dmin.min((&images[a] - &images[b]).norm());
            }
        }
        assert!(dmin > 0.1);
    }
}
