//! Hamiltonian lattice Yang–Mills–Higgs dynamics for `SU(2) × U(1)`.
//!
//! Gauge fields live on edges in the exponential chart: the stored
//! coefficients `A_e` encode the link `U_e = exp(A_e)`, whose u(1) angle
//! is kept unwrapped. `E_e` is the right-trivialized momentum at the tail of
//! the edge, so the `A` slot of a tangent vector is a right-trivialized
//! velocity `ζ_e` with `U̇_e = ζ_e U_e`. Only `E = ⋆⁻¹D` and `π = ⋆⁻¹Π`
//! are stored.
//!
//! Lattice gauge transformations act by
//! `U_e ↦ λ_x U_e λ_y⁻¹`, `E_e ↦ Ad_{λ_x} E_e`, `φ_x ↦ λ_x φ_x`,
//! `π_x ↦ λ_x π_x` for an edge `e = (x → y)`. Every term of the Hamiltonian
//! is invariant under this action, so the splitting integrator conserves
//! [`momentum_map`] up to roundoff.

mod constraint;
mod dynamics;
mod gws;
mod presets;

pub use constraint::{
    apply_split, coulomb_split, gauss_split, project_gauss, CoulombSplit, GaussSplit, PICARD_MAX_ITER, PICARD_TOL,
};
pub use dynamics::{
    almost_complex_j, energy, eom_rhs, hamiltonian, l2_inner, potential_gradient, step_leapfrog, symplectic_form,
    Energy, Forces,
};
pub use gws::{
    fitted_higgs_mass_sq, fitted_z_mass_sq, from_gws, gauss_gws_residual, gws_identity_defect, hamiltonian_singular,
    k_momentum, masses,
    printed_potential_curvature, reduce_to_u1, to_gws, unitary_gauge, GWSFields, GaussResiduals, ReducedU1Point,
    STRATUM_TOL, UNITARY_PHI_TOL, UNITARY_TOL,
};
pub use presets::{build_preset, random_fields, random_state, random_tangent, FieldKind, Preset};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{face_dirs, wedge_pair, Cochain, Lattice, ValueType};
use crate::liealg::{
    chart_velocity, fiber_momentum, pair_from_slice, pair_write, rep_alg, ComplexPair, Couplings, GroupElement,
    LieCoeffs,
};

/// Field configuration and momenta.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YmhState {
    /// Exponential-chart coefficients of the links, 1-cochain of `Lie`.
    pub a: Cochain,
    /// Electric field, 1-cochain of `Lie`.
    pub e: Cochain,
    /// Higgs field, 0-cochain of `Pair`.
    pub phi: Cochain,
    /// Higgs momentum, 0-cochain of `Pair`.
    pub pi: Cochain,
    /// Positive lapse per site, 0-cochain of `Real`.
    pub lapse: Cochain,
    pub couplings: Couplings,
}

fn expect(c: &Cochain, lat: Lattice, degree: usize, vtype: ValueType, name: &str) -> Result<()> {
    if c.lattice != lat || c.degree != degree || c.vtype != vtype {
        return Err(Error::Validation(format!(
            "{name} must be a {vtype:?} {degree}-cochain on the state lattice"
        )));
    }
    if !c.is_finite() {
        return Err(Error::Validation(format!("{name} has non-finite entries")));
    }
    Ok(())
}

impl YmhState {
    pub fn new(a: Cochain, e: Cochain, phi: Cochain, pi: Cochain, lapse: Cochain, couplings: Couplings) -> Result<Self> {
        let s = Self { a, e, phi, pi, lapse, couplings };
        s.validate()?;
        Ok(s)
    }

    /// All fields zero, unit lapse.
    pub fn zeros(lattice: Lattice, couplings: Couplings) -> Self {
        let mut lapse = Cochain::zeros(lattice, 0, ValueType::Real);
        lapse.data.iter_mut().for_each(|x| *x = 1.0);
        Self {
            a: Cochain::zeros(lattice, 1, ValueType::Lie),
            e: Cochain::zeros(lattice, 1, ValueType::Lie),
            phi: Cochain::zeros(lattice, 0, ValueType::Pair),
            pi: Cochain::zeros(lattice, 0, ValueType::Pair),
            lapse,
            couplings,
        }
    }

    /// `A = E = π = 0`, `φ = (0, |ν|/√2)`.
    pub fn vacuum(lattice: Lattice, couplings: Couplings) -> Self {
        let mut s = Self::zeros(lattice, couplings);
        let v = couplings.vacuum_higgs();
        for x in 0..lattice.sites() {
            pair_write(v, s.phi.value_mut(x));
        }
        s
    }

    pub fn lattice(&self) -> Lattice {
        self.a.lattice
    }

    pub fn validate(&self) -> Result<()> {
        let lat = self.lattice();
        expect(&self.a, lat, 1, ValueType::Lie, "A")?;
        expect(&self.e, lat, 1, ValueType::Lie, "E")?;
        expect(&self.phi, lat, 0, ValueType::Pair, "phi")?;
        expect(&self.pi, lat, 0, ValueType::Pair, "pi")?;
        expect(&self.lapse, lat, 0, ValueType::Real, "lapse")?;
        if self.lapse.data.iter().any(|&l| !(l > 0.0)) {
            return Err(Error::Validation("lapse must be positive".into()));
        }
        self.couplings.validate()
    }

    pub fn a_at(&self, edge: usize) -> LieCoeffs {
        LieCoeffs::from_slice(self.a.value(edge))
    }

    pub fn e_at(&self, edge: usize) -> LieCoeffs {
        LieCoeffs::from_slice(self.e.value(edge))
    }

    pub fn phi_at(&self, x: usize) -> ComplexPair {
        pair_from_slice(self.phi.value(x))
    }

    pub fn pi_at(&self, x: usize) -> ComplexPair {
        pair_from_slice(self.pi.value(x))
    }

    /// `U_e = exp(A_e)` for every edge.
    pub fn links(&self) -> Vec<GroupElement> {
        (0..self.a.cells()).map(|e| GroupElement::exp(self.a_at(e))).collect()
    }

    /// Edge lapse, the mean of the two endpoint values.
    pub fn edge_lapse(&self) -> Vec<f64> {
        edge_lapse(&self.lapse)
    }

    /// Face lapse, the mean of the four corner values.
    pub fn face_lapse(&self) -> Vec<f64> {
        face_lapse(&self.lapse)
    }

    /// Follow `v` for time `t`: links by `U ← exp(t ζ) U`, the rest linearly.
    pub fn advance(&self, v: &YmhTangent, t: f64) -> YmhState {
        let mut s = self.clone();
        for e in 0..s.a.cells() {
            let u = GroupElement::exp(t * LieCoeffs::from_slice(v.a.value(e))).mul(&GroupElement::exp(self.a_at(e)));
            u.log().write_to(s.a.value_mut(e));
        }
        s.e.axpy(t, &v.e).expect("same lattice");
        s.phi.axpy(t, &v.phi).expect("same lattice");
        s.pi.axpy(t, &v.pi).expect("same lattice");
        s
    }

    /// Weighted L² distance over all four fields, with `A` compared in the chart.
    pub fn distance(&self, o: &YmhState) -> Result<f64> {
        let parts = [
            self.a.sub(&o.a)?.norm(),
            self.e.sub(&o.e)?.norm(),
            self.phi.sub(&o.phi)?.norm(),
            self.pi.sub(&o.pi)?.norm(),
        ];
        Ok(parts.iter().map(|x| x * x).sum::<f64>().sqrt())
    }
}

pub(crate) fn edge_lapse(lapse: &Cochain) -> Vec<f64> {
    let lat = lapse.lattice;
    let mut out = vec![0.0; lat.cell_count(1)];
    for x in 0..lat.sites() {
        for mu in 0..3 {
            out[3 * x + mu] = 0.5 * (lapse.data[x] + lapse.data[lat.fwd(x, mu)]);
        }
    }
    out
}

pub(crate) fn face_lapse(lapse: &Cochain) -> Vec<f64> {
    let lat = lapse.lattice;
    let mut out = vec![0.0; lat.cell_count(2)];
    for x in 0..lat.sites() {
        for rho in 0..3 {
            let v = lat.cell_vertices(2, x, rho);
            out[3 * x + rho] = v.iter().map(|&y| lapse.data[y]).sum::<f64>() / v.len() as f64;
        }
    }
    out
}

/// Tangent vector at a state; the `a` slot holds right-trivialized velocities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YmhTangent {
    pub a: Cochain,
    pub e: Cochain,
    pub phi: Cochain,
    pub pi: Cochain,
}

impl YmhTangent {
    pub fn zeros(lattice: Lattice) -> Self {
        Self {
            a: Cochain::zeros(lattice, 1, ValueType::Lie),
            e: Cochain::zeros(lattice, 1, ValueType::Lie),
            phi: Cochain::zeros(lattice, 0, ValueType::Pair),
            pi: Cochain::zeros(lattice, 0, ValueType::Pair),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { a: self.a.scale(s), e: self.e.scale(s), phi: self.phi.scale(s), pi: self.pi.scale(s) }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Ok(Self { a: self.a.add(&o.a)?, e: self.e.add(&o.e)?, phi: self.phi.add(&o.phi)?, pi: self.pi.add(&o.pi)? })
    }

    pub fn sup_norm(&self) -> f64 {
        [&self.a, &self.e, &self.phi, &self.pi].iter().map(|c| c.sup_norm()).fold(0.0, f64::max)
    }
}

/// Site-wise gauge transformation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeField {
    pub lattice: Lattice,
    pub elements: Vec<GroupElement>,
}

impl GaugeField {
    pub fn identity(lattice: Lattice) -> Self {
        Self { lattice, elements: vec![GroupElement::IDENTITY; lattice.sites()] }
    }

    /// `λ_x = exp(ξ_x)`.
    pub fn exp(xi: &Cochain) -> Result<Self> {
        if xi.degree != 0 || xi.vtype != ValueType::Lie {
            return Err(Error::Validation("gauge generator must be a Lie 0-cochain".into()));
        }
        Ok(Self {
            lattice: xi.lattice,
            elements: (0..xi.cells()).map(|x| GroupElement::exp(LieCoeffs::from_slice(xi.value(x)))).collect(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.elements.len() != self.lattice.sites() {
            return Err(Error::Validation("one gauge element per site required".into()));
        }
        for g in &self.elements {
            let n = g.su2.alpha.norm_sqr() + g.su2.beta.norm_sqr();
            if (n - 1.0).abs() > 1e-10 || !g.theta.is_finite() {
                return Err(Error::Validation(format!("gauge element is not unitary: |det - 1| = {:e}", (n - 1.0).abs())));
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Self {
        Self { lattice: self.lattice, elements: self.elements.iter().map(|g| g.inverse()).collect() }
    }

    /// Act on a state.
    pub fn apply(&self, s: &YmhState) -> Result<YmhState> {
        self.validate()?;
        let lat = s.lattice();
        if lat != self.lattice {
            return Err(Error::Validation("gauge field and state live on different lattices".into()));
        }
        let mut out = s.clone();
        for x in 0..lat.sites() {
            let lx = &self.elements[x];
            for mu in 0..3 {
                let e = 3 * x + mu;
                let ly = &self.elements[lat.fwd(x, mu)];
                let u = lx.mul(&GroupElement::exp(s.a_at(e))).mul(&ly.inverse());
                u.log().write_to(out.a.value_mut(e));
                lx.adjoint(s.e_at(e)).write_to(out.e.value_mut(e));
            }
            pair_write(lx.act(s.phi_at(x)), out.phi.value_mut(x));
            pair_write(lx.act(s.pi_at(x)), out.pi.value_mut(x));
        }
        Ok(out)
    }
}

fn check_generator(xi: &Cochain, lat: Lattice) -> Result<()> {
    if xi.lattice != lat || xi.degree != 0 || xi.vtype != ValueType::Lie {
        return Err(Error::Validation("gauge generator must be a Lie 0-cochain on the state lattice".into()));
    }
    Ok(())
}

/// `ζ_e = ξ_x − Ad_{U_e} ξ_y` for every edge `e = (x → y)`.
pub(crate) fn gauge_link_velocity(xi: &Cochain, links: &[GroupElement]) -> Cochain {
    let lat = xi.lattice;
    let mut out = Cochain::zeros(lat, 1, ValueType::Lie);
    for x in 0..lat.sites() {
        let xx = LieCoeffs::from_slice(xi.value(x));
        for mu in 0..3 {
            let e = 3 * x + mu;
            let xy = LieCoeffs::from_slice(xi.value(lat.fwd(x, mu)));
            (xx - links[e].adjoint(xy)).write_to(out.value_mut(e));
        }
    }
    out
}

/// Infinitesimal gauge action: `δA = ζ`, `δE_e = [ξ_x, E_e]`,
/// `δφ = ρ(ξ)φ`, `δπ = ρ(ξ)π`.
pub fn inf_gauge_action(xi: &Cochain, s: &YmhState) -> Result<YmhTangent> {
    let lat = s.lattice();
    check_generator(xi, lat)?;
    let links = s.links();
    let mut t = YmhTangent::zeros(lat);
    t.a = gauge_link_velocity(xi, &links);
    for x in 0..lat.sites() {
        let xx = LieCoeffs::from_slice(xi.value(x));
        for mu in 0..3 {
            let e = 3 * x + mu;
            xx.bracket(s.e_at(e)).write_to(t.e.value_mut(e));
        }
        pair_write(rep_alg(xx, s.phi_at(x)), t.phi.value_mut(x));
        pair_write(rep_alg(xx, s.pi_at(x)), t.pi.value_mut(x));
    }
    Ok(t)
}

/// Velocity of the exponential-chart coefficients along `v`.
pub fn chart_tangent(s: &YmhState, v: &YmhTangent) -> Cochain {
    let mut out = v.a.clone();
    for e in 0..out.cells() {
        chart_velocity(s.a_at(e), LieCoeffs::from_slice(v.a.value(e))).write_to(out.value_mut(e));
    }
    out
}

/// Transpose of [`gauge_link_velocity`] under the weighted inner products:
/// `h⁻² (Σ_out X_e − Σ_in Ad_{U_e⁻¹} X_e)`.
pub(crate) fn gauss_operator(x1: &Cochain, links: &[GroupElement]) -> Cochain {
    let lat = x1.lattice;
    let inv_h2 = 1.0 / (lat.h * lat.h);
    let mut out = Cochain::zeros(lat, 0, ValueType::Lie);
    for x in 0..lat.sites() {
        let mut acc = LieCoeffs::zero();
        for mu in 0..3 {
            acc += LieCoeffs::from_slice(x1.value(3 * x + mu));
            let e_in = 3 * lat.bwd(x, mu) + mu;
            acc -= links[e_in].adjoint_inverse(LieCoeffs::from_slice(x1.value(e_in)));
        }
        (inv_h2 * acc).write_to(out.value_mut(x));
    }
    out
}

/// Momentum map of the lattice gauge action, as a `Lie` 0-cochain.
///
/// Defined as the exact transpose of [`inf_gauge_action`]:
/// `inner(J, ξ) = inner(E, δ_ξA) + inner(π, δ_ξφ)` for every `ξ`.
pub fn momentum_map(s: &YmhState) -> Cochain {
    let mut j = gauss_operator(&s.e, &s.links());
    for x in 0..s.lattice().sites() {
        let v = LieCoeffs::from_slice(j.value(x)) + fiber_momentum(s.phi_at(x), s.pi_at(x));
        v.write_to(j.value_mut(x));
    }
    j
}

/// Bracket hook for wedges of `Lie`-valued cochains.
pub(crate) fn bracket_hook(x: &[f64], y: &[f64], out: &mut [f64]) {
    LieCoeffs::from_slice(x).bracket(LieCoeffs::from_slice(y)).write_to(out);
}

/// Discretized `d_A D + φ⋄Π` in the chart variables:
/// `−codiff E + ⋆⁻¹(A ∧ ⋆E) + φ⋄π`, with the bracket inside the wedge.
///
/// Agrees with [`momentum_map`] to first order in `A` and in `h`.
pub fn momentum_map_formula(s: &YmhState) -> Result<Cochain> {
    let lin = s.e.codiff()?.scale(-1.0);
    let br = wedge_pair(&s.a, &s.e.hodge(), ValueType::Lie, bracket_hook)?.hodge_inv();
    let mut j = lin.add(&br)?;
    for x in 0..s.lattice().sites() {
        let v = LieCoeffs::from_slice(j.value(x)) + fiber_momentum(s.phi_at(x), s.pi_at(x));
        v.write_to(j.value_mut(x));
    }
    Ok(j)
}

/// Plaquette holonomy `U_{x,μ} U_{x+μ,ν} U_{x+ν,μ}⁻¹ U_{x,ν}⁻¹` of the face
/// `(x, ρ)` with `(μ, ν) = face_dirs(ρ)`, together with the partial
/// products after the first, second and third factor.
pub(crate) fn plaquette(lat: &Lattice, links: &[GroupElement], x: usize, rho: usize) -> ([usize; 4], [GroupElement; 4]) {
    let (mu, nu) = face_dirs(rho);
    let e = [3 * x + mu, 3 * lat.fwd(x, mu) + nu, 3 * lat.fwd(x, nu) + mu, 3 * x + nu];
    let p1 = links[e[0]];
    let p2 = p1.mul(&links[e[1]]);
    let p3 = p2.mul(&links[e[2]].inverse());
    let p4 = p3.mul(&links[e[3]].inverse());
    (e, [p1, p2, p3, p4])
}

#[cfg(test)]
mod tests;
