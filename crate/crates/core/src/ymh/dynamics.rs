//! Hamiltonian, forces, equations of motion and the splitting integrator.

use serde::{Deserialize, Serialize};

use super::{plaquette, YmhState, YmhTangent};
use crate::error::{Error, Result};
use crate::lattice::{inner, Cochain, ValueType};
use crate::liealg::{
    fiber_momentum, higgs_potential, higgs_potential_grad, pair_norm_sqr, pair_write, weighted, C64,
    GroupElement, LieCoeffs,
};

/// Individual terms of the lattice Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Energy {
    pub electric: f64,
    pub magnetic: f64,
    pub higgs_kinetic: f64,
    pub hopping: f64,
    pub potential: f64,
}

impl Energy {
    pub fn total(&self) -> f64 {
        self.electric + self.magnetic + self.higgs_kinetic + self.hopping + self.potential
    }
}

fn kappa_sq(x: LieCoeffs, w: [f64; 4]) -> f64 {
    let a = x.to_array();
    (0..4).map(|i| w[i] * a[i] * a[i]).sum()
}

/// Hamiltonian broken down by term.
pub fn energy(s: &YmhState) -> Energy {
    let lat = s.lattice();
    let h = lat.h;
    let h3 = h * h * h;
    let c = &s.couplings;
    let (kw, kiw) = (c.kappa_weights(), c.kappa_inv_weights());
    let le = s.edge_lapse();
    let lf = s.face_lapse();
    let links = s.links();

    let mut en = Energy { electric: 0.0, magnetic: 0.0, higgs_kinetic: 0.0, hopping: 0.0, potential: 0.0 };
    for x in 0..lat.sites() {
        let lx = s.lapse.data[x];
        let phi = s.phi_at(x);
        en.higgs_kinetic += 0.5 * h3 * lx * pair_norm_sqr(s.pi_at(x));
        en.potential += h3 * lx * higgs_potential(phi, c);
        for mu in 0..3 {
            let e = 3 * x + mu;
            en.electric += 0.5 * h * le[e] * kappa_sq(s.e_at(e), kiw);
            let w = links[e].act(s.phi_at(lat.fwd(x, mu)));
            let cov = [w[0] - phi[0], w[1] - phi[1]];
            en.hopping += 0.5 * h * le[e] * pair_norm_sqr(cov);
            let (_, p) = plaquette(&lat, &links, x, mu);
            en.magnetic += 0.5 / h * lf[3 * x + mu] * kappa_sq(p[3].log(), kw);
        }
    }
    en
}

pub fn hamiltonian(s: &YmhState) -> f64 {
    energy(s).total()
}

/// Derivatives of the potential part of the Hamiltonian (everything except
/// the `E` and `π` kinetic terms), in raw coordinates: `dH(δ) =
/// Σ_e grad_a·ζ_e + Σ_x Re⟨grad_phi, δφ_x⟩` for right-trivialized `ζ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Forces {
    pub grad_a: Cochain,
    pub grad_phi: Cochain,
}

pub fn potential_gradient(s: &YmhState) -> Forces {
    let lat = s.lattice();
    let h = lat.h;
    let h3 = h * h * h;
    let c = &s.couplings;
    let kw = c.kappa_weights();
    let le = s.edge_lapse();
    let lf = s.face_lapse();
    let links = s.links();
    let mut ga = vec![LieCoeffs::zero(); lat.cell_count(1)];
    let mut gp = vec![[C64::new(0.0, 0.0); 2]; lat.sites()];

    for x in 0..lat.sites() {
        let phi = s.phi_at(x);
        let pg = higgs_potential_grad(phi, c);
        let lx = s.lapse.data[x];
        gp[x][0] += h3 * lx * pg[0];
        gp[x][1] += h3 * lx * pg[1];
        for mu in 0..3 {
            let e = 3 * x + mu;
            let y = lat.fwd(x, mu);
            let w = links[e].act(s.phi_at(y));
            let cov = [w[0] - phi[0], w[1] - phi[1]];
            let k = h * le[e];
            ga[e] += k * fiber_momentum(w, cov);
            let back = links[e].act_inverse(cov);
            gp[y][0] += k * back[0];
            gp[y][1] += k * back[1];
            gp[x][0] -= k * cov[0];
            gp[x][1] -= k * cov[1];

            let (edges, p) = plaquette(&lat, &links, x, mu);
            let g = (lf[3 * x + mu] / h) * weighted(p[3].log(), kw);
            ga[edges[0]] += g;
            ga[edges[1]] += p[0].adjoint_inverse(g);
            ga[edges[2]] -= p[2].adjoint_inverse(g);
            ga[edges[3]] -= p[3].adjoint_inverse(g);
        }
    }

    let mut grad_a = Cochain::zeros(lat, 1, ValueType::Lie);
    for (e, v) in ga.iter().enumerate() {
        v.write_to(grad_a.value_mut(e));
    }
    let mut grad_phi = Cochain::zeros(lat, 0, ValueType::Pair);
    for (x, v) in gp.iter().enumerate() {
        pair_write(*v, grad_phi.value_mut(x));
    }
    Forces { grad_a, grad_phi }
}

/// Link velocities `ℓ_e κ⁻¹ E_e`.
fn electric_velocity(s: &YmhState) -> Cochain {
    let kiw = s.couplings.kappa_inv_weights();
    let le = s.edge_lapse();
    let mut out = Cochain::zeros(s.lattice(), 1, ValueType::Lie);
    for e in 0..out.cells() {
        (le[e] * weighted(s.e_at(e), kiw)).write_to(out.value_mut(e));
    }
    out
}

fn higgs_velocity(s: &YmhState) -> Cochain {
    let mut out = s.pi.clone();
    for x in 0..out.cells() {
        let l = s.lapse.data[x];
        out.value_mut(x).iter_mut().for_each(|v| *v *= l);
    }
    out
}

/// Symplectic gradient of [`hamiltonian`].
pub fn eom_rhs(s: &YmhState) -> YmhTangent {
    let h = s.lattice().h;
    let f = potential_gradient(s);
    YmhTangent {
        a: electric_velocity(s),
        e: f.grad_a.scale(-1.0 / h),
        phi: higgs_velocity(s),
        pi: f.grad_phi.scale(-1.0 / (h * h * h)),
    }
}

fn kick(s: &mut YmhState, t: f64) {
    let h = s.lattice().h;
    let f = potential_gradient(s);
    s.e.axpy(-t / h, &f.grad_a).expect("same lattice");
    s.pi.axpy(-t / (h * h * h), &f.grad_phi).expect("same lattice");
}

fn drift(s: &mut YmhState, t: f64) {
    let v = electric_velocity(s);
    for e in 0..s.a.cells() {
        let u = GroupElement::exp(t * LieCoeffs::from_slice(v.value(e))).mul(&GroupElement::exp(s.a_at(e)));
        u.log().write_to(s.a.value_mut(e));
    }
    let pv = higgs_velocity(s);
    s.phi.axpy(t, &pv).expect("same lattice");
}

/// One kick–drift–kick step of size `dt`.
///
/// Both halves are exact flows of gauge-invariant Hamiltonians, so the
/// momentum map is conserved to roundoff.
pub fn step_leapfrog(s: &YmhState, dt: f64) -> Result<YmhState> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Validation(format!("time step must be positive, got {dt}")));
    }
    let mut out = s.clone();
    kick(&mut out, 0.5 * dt);
    drift(&mut out, dt);
    kick(&mut out, 0.5 * dt);
    Ok(out)
}

/// `𝔧(a, e, φ, π) = (−e, a, −π, φ)`.
pub fn almost_complex_j(v: &YmhTangent) -> YmhTangent {
    YmhTangent { a: v.e.scale(-1.0), e: v.a.clone(), phi: v.pi.scale(-1.0), pi: v.phi.clone() }
}

/// Weighted `L²` inner product of two tangent vectors.
pub fn l2_inner(v: &YmhTangent, w: &YmhTangent) -> Result<f64> {
    Ok(inner(&v.a, &w.a)? + inner(&v.e, &w.e)? + inner(&v.phi, &w.phi)? + inner(&v.pi, &w.pi)?)
}

/// Constant part of the symplectic form in the `(A, E)`, `(φ, π)` pairs.
pub fn symplectic_form(v: &YmhTangent, w: &YmhTangent) -> Result<f64> {
    Ok(inner(&v.a, &w.e)? - inner(&v.e, &w.a)? + inner(&v.phi, &w.pi)? - inner(&v.pi, &w.phi)?)
}
