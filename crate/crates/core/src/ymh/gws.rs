//! Symmetry-broken variables: W±, Z, the photon field and the radial Higgs
//! mode, together with the component Gauß equations, the Hamiltonian on the
//! singular stratum and the residual U(1) reduction.

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use super::{momentum_map_formula, GaugeField, YmhState};
use crate::error::{Error, Result};
use crate::lattice::{wedge_pair, Cochain, Lattice, ValueType};
use crate::liealg::{pair_write, Couplings, GroupElement, KPCoords, LieCoeffs, Su2, C64};

/// Relative tolerance on `φ₁` and `Im φ₂` accepted as unitary gauge.
pub const UNITARY_TOL: f64 = 1e-10;
/// Smallest `|φ|` for which the unitary gauge is defined.
pub const UNITARY_PHI_TOL: f64 = 1e-8;
/// Size of `W±`, `D±`, `Π₁` accepted as lying on the singular stratum.
pub const STRATUM_TOL: f64 = 1e-8;

/// Fields in the symmetry-broken basis. `D`-type fields are stored through
/// their Hodge duals, like `E` in [`YmhState`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GWSFields {
    pub wp: Cochain,
    pub wm: Cochain,
    pub z: Cochain,
    pub agamma: Cochain,
    pub eta: Cochain,
    pub dp: Cochain,
    pub dm: Cochain,
    pub dz: Cochain,
    pub dgamma: Cochain,
    pub pi1: Cochain,
    pub pi2: Cochain,
    pub pi_eta: Cochain,
    pub lapse: Cochain,
    pub couplings: Couplings,
}

/// Mixing constants `(N, e, k, cos θ_W, sin θ_W)` with `k = (g² − g′²)/(2N)`.
struct Mixing {
    g: f64,
    n: f64,
    e: f64,
    k: f64,
    c: f64,
    s: f64,
}

impl Mixing {
    fn new(cp: &Couplings) -> Self {
        let n = cp.g_norm();
        Mixing {
            g: cp.g,
            n,
            e: cp.e(),
            k: (cp.g * cp.g - cp.gp * cp.gp) / (2.0 * n),
            c: cp.cos_w(),
            s: cp.sin_w(),
        }
    }
}

fn cval(c: &Cochain, i: usize) -> C64 {
    let v = c.value(i);
    C64::new(v[0], v[1])
}

fn cset(c: &mut Cochain, i: usize, z: C64) {
    let v = c.value_mut(i);
    v[0] = z.re;
    v[1] = z.im;
}

fn to_complex(c: &Cochain) -> Cochain {
    Cochain::from_fn(c.lattice, c.degree, ValueType::Complex, |i, v| {
        v[0] = c.data[i];
        v[1] = 0.0;
    })
}

fn complex_product(x: &[f64], y: &[f64], out: &mut [f64]) {
    out[0] = x[0] * y[0] - x[1] * y[1];
    out[1] = x[0] * y[1] + x[1] * y[0];
}

impl GWSFields {
    pub fn lattice(&self) -> Lattice {
        self.wp.lattice
    }

    pub fn zeros(lattice: Lattice, couplings: Couplings) -> Self {
        let c1 = Cochain::zeros(lattice, 1, ValueType::Complex);
        let r1 = Cochain::zeros(lattice, 1, ValueType::Real);
        let c0 = Cochain::zeros(lattice, 0, ValueType::Complex);
        let r0 = Cochain::zeros(lattice, 0, ValueType::Real);
        let mut eta = r0.clone();
        eta.data.iter_mut().for_each(|x| *x = 1.0);
        Self {
            wp: c1.clone(),
            wm: c1.clone(),
            z: r1.clone(),
            agamma: r1.clone(),
            eta: eta.clone(),
            dp: c1.clone(),
            dm: c1,
            dz: r1.clone(),
            dgamma: r1,
            pi1: c0.clone(),
            pi2: c0,
            pi_eta: r0,
            lapse: eta,
            couplings,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let lat = self.lattice();
        let shapes: [(&Cochain, usize, ValueType, &str); 13] = [
            (&self.wp, 1, ValueType::Complex, "Wp"),
            (&self.wm, 1, ValueType::Complex, "Wm"),
            (&self.z, 1, ValueType::Real, "Z"),
            (&self.agamma, 1, ValueType::Real, "Agamma"),
            (&self.eta, 0, ValueType::Real, "eta"),
            (&self.dp, 1, ValueType::Complex, "Dp"),
            (&self.dm, 1, ValueType::Complex, "Dm"),
            (&self.dz, 1, ValueType::Real, "DZ"),
            (&self.dgamma, 1, ValueType::Real, "Dgamma"),
            (&self.pi1, 0, ValueType::Complex, "Pi1"),
            (&self.pi2, 0, ValueType::Complex, "Pi2"),
            (&self.pi_eta, 0, ValueType::Real, "Pi_eta"),
            (&self.lapse, 0, ValueType::Real, "lapse"),
        ];
        for (c, k, t, name) in shapes {
            if c.lattice != lat || c.degree != k || c.vtype != t || !c.is_finite() {
                return Err(Error::Validation(format!("{name} must be a finite {t:?} {k}-cochain")));
            }
        }
        for (p, m, name) in [(&self.wp, &self.wm, "Wm"), (&self.dp, &self.dm, "Dm")] {
            for i in 0..p.cells() {
                let d = (cval(p, i).conj() - cval(m, i)).norm();
                if d > 1e-12 * (1.0 + cval(p, i).norm()) {
                    return Err(Error::Validation(format!("{name} is not the conjugate partner of its pair")));
                }
            }
        }
        if self.eta.data.iter().any(|&x| !(x > 0.0)) {
            return Err(Error::Validation("eta must be positive".into()));
        }
        if self.lapse.data.iter().any(|&x| !(x > 0.0)) {
            return Err(Error::Validation("lapse must be positive".into()));
        }
        self.couplings.validate()
    }

    /// True when `W±`, `D±` and `Π₁` are below `tol` everywhere.
    pub fn on_singular_stratum(&self, tol: f64) -> bool {
        [&self.wp, &self.wm, &self.dp, &self.dm, &self.pi1].iter().all(|c| c.sup_norm() < tol)
    }
}

/// Gauge transformation into unitary gauge together with the transformed
/// state: `(λ⁻¹·φ)(x) = (0, |φ(x)|)`.
pub fn unitary_gauge(s: &YmhState) -> Result<(GaugeField, YmhState)> {
    let lat = s.lattice();
    let mut elements = Vec::with_capacity(lat.sites());
    for x in 0..lat.sites() {
        let [z1, z2] = s.phi_at(x);
        let r = (z1.norm_sqr() + z2.norm_sqr()).sqrt();
        if !(r > UNITARY_PHI_TOL) {
            return Err(Error::Domain(format!("Higgs field vanishes at site {x} (|phi| = {r:e})")));
        }
        let su2 = Su2 { alpha: z2.conj() / r, beta: -z1.conj() / r };
        elements.push(GroupElement::new(su2, 0.0));
    }
    let lambda = GaugeField { lattice: lat, elements };
    let fixed = lambda.inverse().apply(s)?;
    Ok((lambda, fixed))
}

/// Pointwise change of variables into the symmetry-broken basis.
pub fn to_gws(s: &YmhState) -> Result<GWSFields> {
    s.validate()?;
    let lat = s.lattice();
    let c = s.couplings;
    let m = Mixing::new(&c);
    let nu = c.nu_h.abs();
    let mut f = GWSFields::zeros(lat, c);
    f.lapse = s.lapse.clone();
    for x in 0..lat.sites() {
        let [p1, p2] = s.phi_at(x);
        let tol = UNITARY_TOL * (p1.norm_sqr() + p2.norm_sqr()).sqrt().max(1.0);
        if p1.norm() > tol || p2.im.abs() > tol || !(p2.re > 0.0) {
            return Err(Error::Validation(format!("state is not in unitary gauge at site {x}")));
        }
        f.eta.data[x] = SQRT_2 * p2.re / nu;
        let [q1, q2] = s.pi_at(x);
        cset(&mut f.pi1, x, q1);
        cset(&mut f.pi2, x, q2);
        f.pi_eta.data[x] = nu * FRAC_1_SQRT_2 * q2.re;
    }
    for e in 0..lat.cell_count(1) {
        let a = s.a_at(e).to_kp();
        let wp = a.a / m.g;
        cset(&mut f.wp, e, wp);
        cset(&mut f.wm, e, wp.conj());
        let z = 2.0 * a.c_minus / m.n;
        f.z.data[e] = z;
        f.agamma.data[e] = (a.c_plus - m.k * z) / m.e;

        let d = s.e_at(e).to_kp();
        let dm = m.g * d.a;
        cset(&mut f.dm, e, dm);
        cset(&mut f.dp, e, dm.conj());
        f.dgamma.data[e] = 2.0 * m.e * d.c_plus;
        f.dz.data[e] = m.n * d.c_minus + 2.0 * m.k * d.c_plus;
    }
    Ok(f)
}

/// Inverse of [`to_gws`]; `Pi_eta` is ignored in favour of `Pi2`.
pub fn from_gws(f: &GWSFields) -> Result<YmhState> {
    f.validate()?;
    let lat = f.lattice();
    let c = f.couplings;
    let m = Mixing::new(&c);
    let nu = c.nu_h.abs();
    let mut s = YmhState::zeros(lat, c);
    s.lapse = f.lapse.clone();
    for e in 0..lat.cell_count(1) {
        let z = f.z.data[e];
        let a = KPCoords { a: m.g * cval(&f.wp, e), c_minus: 0.5 * m.n * z, c_plus: m.e * f.agamma.data[e] + m.k * z };
        LieCoeffs::from_kp(a).write_to(s.a.value_mut(e));
        let dg = f.dgamma.data[e];
        let inv_ggp = 1.0 / (c.g * c.gp);
        let d = KPCoords {
            a: cval(&f.dm, e) / m.g,
            c_minus: m.e * inv_ggp * f.dz.data[e] - m.k * inv_ggp * dg,
            c_plus: dg / (2.0 * m.e),
        };
        LieCoeffs::from_kp(d).write_to(s.e.value_mut(e));
    }
    for x in 0..lat.sites() {
        let phi = [C64::new(0.0, 0.0), C64::new(f.eta.data[x] * nu * FRAC_1_SQRT_2, 0.0)];
        pair_write(phi, s.phi.value_mut(x));
        pair_write([cval(&f.pi1, x), cval(&f.pi2, x)], s.pi.value_mut(x));
    }
    Ok(s)
}

/// Residuals of the four component Gauß equations, as 0-cochains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussResiduals {
    pub minus: Cochain,
    pub plus: Cochain,
    pub gamma: Cochain,
    pub z: Cochain,
}

impl GaussResiduals {
    /// Recombine into a `Lie`-valued 0-cochain comparable with
    /// [`momentum_map_formula`].
    pub fn reassemble(&self, c: &Couplings) -> Cochain {
        let m = Mixing::new(c);
        let inv_ggp = 1.0 / (c.g * c.gp);
        Cochain::from_fn(self.minus.lattice, 0, ValueType::Lie, |x, v| {
            let rg = self.gamma.data[x];
            let kp = KPCoords {
                a: cval(&self.minus, x) / m.g,
                c_minus: m.e * inv_ggp * self.z.data[x] - m.k * inv_ggp * rg,
                c_plus: rg / (2.0 * m.e),
            };
            LieCoeffs::from_kp(kp).write_to(v);
        })
    }

    pub fn sup_norm(&self) -> f64 {
        [&self.minus, &self.plus, &self.gamma, &self.z].iter().map(|c| c.sup_norm()).fold(0.0, f64::max)
    }
}

/// `⋆⁻¹(Y ∧ ⋆X)` for complex 1-cochains.
fn wd(y: &Cochain, x: &Cochain) -> Result<Cochain> {
    Ok(wedge_pair(y, &x.hodge(), ValueType::Complex, complex_product)?.hodge_inv())
}

fn mul_i(c: &Cochain, s: f64) -> Cochain {
    Cochain::from_fn(c.lattice, c.degree, ValueType::Complex, |i, v| {
        let z = C64::new(0.0, s) * cval(c, i);
        v[0] = z.re;
        v[1] = z.im;
    })
}

/// Component Gauß equations evaluated with the same discrete operators as
/// [`momentum_map_formula`].
pub fn gauss_gws_residual(f: &GWSFields) -> Result<GaussResiduals> {
    f.validate()?;
    let lat = f.lattice();
    let c = f.couplings;
    let m = Mixing::new(&c);
    let nu = c.nu_h.abs();

    let neutral_a = to_complex(&f.agamma.scale(m.s).add(&f.z.scale(m.c))?);
    let neutral_d = to_complex(&f.dgamma.scale(m.s).add(&f.dz.scale(m.c))?);
    let charged = wd(&f.wp, &f.dp)?.sub(&wd(&f.wm, &f.dm)?)?;

    let mut minus = f.dm.codiff()?.scale(-1.0);
    minus.axpy(1.0, &mul_i(&wd(&neutral_a, &f.dm)?, m.g))?;
    minus.axpy(-1.0, &mul_i(&wd(&f.wp, &neutral_d)?, m.g))?;
    let mut plus = f.dp.codiff()?.scale(-1.0);
    plus.axpy(-1.0, &mul_i(&wd(&neutral_a, &f.dp)?, m.g))?;
    plus.axpy(1.0, &mul_i(&wd(&f.wm, &neutral_d)?, m.g))?;
    for x in 0..lat.sites() {
        let k = f.eta.data[x] * nu * m.g / 4.0;
        let p1 = cval(&f.pi1, x);
        let (m0, p0) = (cval(&minus, x), cval(&plus, x));
        cset(&mut minus, x, m0 - C64::new(0.0, k) * p1);
        cset(&mut plus, x, p0 + C64::new(0.0, k) * p1.conj());
    }

    let ch = mul_i(&charged, 1.0);
    let mut gamma = f.dgamma.codiff()?.scale(-1.0);
    let mut z = f.dz.codiff()?.scale(-1.0);
    for x in 0..lat.sites() {
        let q = cval(&ch, x).re;
        gamma.data[x] += m.e * q;
        z.data[x] += m.g * m.c * q
            - f.eta.data[x] * nu * c.g * c.gp / (2.0 * SQRT_2 * m.e) * cval(&f.pi2, x).im;
    }
    Ok(GaussResiduals { minus, plus, gamma, z })
}

/// Hamiltonian restricted to the singular stratum `W± = D± = Π₁ = 0`.
///
/// The `Z` mass term is the lattice form
/// `(ν²/2)·4 η_x η_y sin²(N Z_e / 4)`, which is what the link
/// Hamiltonian produces exactly; it reduces to `η²ν²N²Z²/8` for small `Z`.
pub fn hamiltonian_singular(f: &GWSFields) -> Result<f64> {
    f.validate()?;
    if !f.on_singular_stratum(STRATUM_TOL) {
        return Err(Error::Precondition("fields are not on the singular stratum".into()));
    }
    let lat = f.lattice();
    let h = lat.h;
    let h3 = h * h * h;
    let c = f.couplings;
    let n = c.g_norm();
    let nu2 = c.nu_h * c.nu_h;
    let le = super::edge_lapse(&f.lapse);
    let lf = super::face_lapse(&f.lapse);
    let da = f.agamma.d()?;
    let dz = f.z.d()?;
    let mut total = 0.0;
    for x in 0..lat.sites() {
        let l = f.lapse.data[x];
        let eta = f.eta.data[x];
        total += 0.5 * h3 * l * cval(&f.pi2, x).norm_sqr();
        total += h3 * l * c.lambda_h * nu2 * nu2 / 4.0 * (eta * eta - 1.0).powi(2);
        for mu in 0..3 {
            let e = 3 * x + mu;
            let ey = f.eta.data[lat.fwd(x, mu)];
            total += 0.5 * h * le[e] * (f.dgamma.data[e].powi(2) + f.dz.data[e].powi(2));
            let sn = (0.25 * n * f.z.data[e]).sin();
            total += 0.5 * h * le[e] * 0.5 * nu2 * ((ey - eta).powi(2) + 4.0 * eta * ey * sn * sn);
            total += 0.5 / h * lf[e] * (da.data[e].powi(2) + dz.data[e].powi(2));
        }
    }
    Ok(total)
}

/// `(m_Z², m_η²) = (η₀²ν²(g² + g′²)/4, −4λν²)` in the printed normalization.
pub fn masses(c: &Couplings, eta0: f64) -> (f64, f64) {
    let nu2 = c.nu_h * c.nu_h;
    (eta0 * eta0 * nu2 * (c.g * c.g + c.gp * c.gp) / 4.0, -4.0 * c.lambda_h * nu2)
}

/// Second derivative of `λν²(η² − 1)²` at `η = 1`, i.e. `8λν²`.
pub fn printed_potential_curvature(c: &Couplings) -> f64 {
    8.0 * c.lambda_h * c.nu_h * c.nu_h
}

const FIT_STEP: f64 = 1e-4;

fn singular_point(c: &Couplings, eta: f64, z: f64) -> Result<YmhState> {
    let lat = Lattice::cubic(1, 1.0)?;
    let mut f = GWSFields::zeros(lat, *c);
    f.eta.data[0] = eta;
    f.z.data[0] = z;
    from_gws(&f)
}

/// `Z` mass squared read off from a central second difference of the
/// lattice Hamiltonian, with `Z` in its canonical normalization.
pub fn fitted_z_mass_sq(c: &Couplings, eta0: f64) -> Result<f64> {
    c.validate()?;
    let hz = |z: f64| -> Result<f64> { Ok(super::hamiltonian(&singular_point(c, eta0, z)?)) };
    Ok((hz(FIT_STEP)? + hz(-FIT_STEP)? - 2.0 * hz(0.0)?) / (FIT_STEP * FIT_STEP))
}

/// Radial Higgs mass squared at the vacuum, from a second difference in the
/// canonical field `χ = η|ν|/√2`.
pub fn fitted_higgs_mass_sq(c: &Couplings) -> Result<f64> {
    c.validate()?;
    let deta = FIT_STEP * SQRT_2 / c.nu_h.abs();
    let he = |eta: f64| -> Result<f64> { Ok(super::hamiltonian(&singular_point(c, eta, 0.0)?)) };
    Ok((he(1.0 + deta)? + he(1.0 - deta)? - 2.0 * he(1.0)?) / (FIT_STEP * FIT_STEP))
}

/// Charged pair left after reducing by the neutral fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedU1Point {
    pub v: Cochain,
    pub d_v: Cochain,
}

impl ReducedU1Point {
    /// Rotate both fields by the residual U(1): `(v, D_v) ↦ e^{iθ}(v, D_v)`.
    pub fn rotate(&self, theta: f64) -> Self {
        let r = C64::from_polar(1.0, theta);
        let rot = |c: &Cochain| {
            Cochain::from_fn(c.lattice, c.degree, ValueType::Complex, |i, v| {
                let z = r * cval(c, i);
                v[0] = z.re;
                v[1] = z.im;
            })
        };
        Self { v: rot(&self.v), d_v: rot(&self.d_v) }
    }
}

/// `v = W₋` with momentum `D_v = D₊`, the conjugate partner of `W₋`.
pub fn reduce_to_u1(f: &GWSFields) -> ReducedU1Point {
    ReducedU1Point { v: f.wm.clone(), d_v: f.dp.clone() }
}

/// `h Σ_e Im(conj(D_v) v)`.
pub fn k_momentum(r: &ReducedU1Point) -> Result<f64> {
    if r.v.lattice != r.d_v.lattice || r.v.vtype != ValueType::Complex || r.d_v.vtype != ValueType::Complex {
        return Err(Error::Validation("reduced point needs two complex cochains on one lattice".into()));
    }
    let w = r.v.lattice.weight(r.v.degree);
    Ok(w * (0..r.v.cells()).map(|i| (cval(&r.d_v, i).conj() * cval(&r.v, i)).im).sum::<f64>())
}

/// Difference between the reassembled component residuals and the formula
/// form of the momentum map, for a state already in unitary gauge.
pub fn gws_identity_defect(s: &YmhState) -> Result<f64> {
    let f = to_gws(s)?;
    let r = gauss_gws_residual(&f)?.reassemble(&s.couplings);
    Ok(r.sub(&momentum_map_formula(s)?)?.sup_norm())
}
