//! Gauß constraint: splitting at the trivial connection, projection onto the
//! constraint surface, and the Hodge split of an abelian connection.

use serde::{Deserialize, Serialize};

use super::{gauge_link_velocity, gauss_operator, momentum_map, YmhState};
use crate::error::{Error, Result};
use crate::lattice::{solve_poisson, solve_poisson_projected, Cochain, ValueType, SOLVER_MAX_ITER, SOLVER_TOL};
use crate::liealg::{fiber_momentum, pair_write, rep_alg, GroupElement, LieCoeffs};

/// Relative stopping tolerance of the Picard iteration.
pub const PICARD_TOL: f64 = 1e-10;
pub const PICARD_MAX_ITER: usize = 100;

/// Decomposition of the momentum map at the base connection `A₀ = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussSplit {
    /// Zero-mean part of the momentum map.
    pub nu_m: Cochain,
    /// Site average of the momentum map.
    pub stab_part: LieCoeffs,
    /// Generator with `E + dσ` satisfying the zero-mean part of the constraint.
    pub sigma: Cochain,
    /// `sup |nu_m − L(σ)|` at exit.
    pub residual: f64,
    /// Residual after each Picard iteration.
    pub trace: Vec<f64>,
}

impl GaussSplit {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }
}

fn site_mean(c: &Cochain) -> LieCoeffs {
    let n = c.cells() as f64;
    let mut m = LieCoeffs::zero();
    for x in 0..c.cells() {
        m += LieCoeffs::from_slice(c.value(x));
    }
    (1.0 / n) * m
}

fn remove_mean(c: &Cochain) -> Cochain {
    let m = site_mean(c);
    Cochain::from_fn(c.lattice, 0, ValueType::Lie, |x, v| (LieCoeffs::from_slice(c.value(x)) - m).write_to(v))
}

/// `L(σ) = −pr₀ M(dσ)`, which is the Laplacian when all links are trivial.
fn linear_part(sigma: &Cochain, links: &[GroupElement]) -> Result<Cochain> {
    Ok(remove_mean(&gauss_operator(&sigma.d()?, links)).scale(-1.0))
}

/// Split the momentum map into its average and zero-mean parts and solve
/// `L(σ) = nu_m` by Picard iteration around the Laplacian.
pub fn gauss_split(s: &YmhState) -> Result<GaussSplit> {
    s.validate()?;
    let links = s.links();
    let j = momentum_map(s);
    let stab_part = site_mean(&j);
    let nu_m = remove_mean(&j);
    let bound = PICARD_TOL * nu_m.sup_norm().max(1.0);

    let mut sigma = Cochain::zeros(s.lattice(), 0, ValueType::Lie);
    let mut trace = Vec::new();
    let mut residual = nu_m.sup_norm();
    if residual <= bound {
        return Ok(GaussSplit { nu_m, stab_part, sigma, residual, trace });
    }
    for _ in 0..PICARD_MAX_ITER {
        let correction = linear_part(&sigma, &links)?.sub(&sigma.laplacian()?)?;
        sigma = solve_poisson_projected(&nu_m.sub(&correction)?, SOLVER_TOL, SOLVER_MAX_ITER)?;
        residual = nu_m.sub(&linear_part(&sigma, &links)?)?.sup_norm();
        trace.push(residual);
        if residual <= bound {
            return Ok(GaussSplit { nu_m, stab_part, sigma, residual, trace });
        }
        if !residual.is_finite() {
            break;
        }
    }
    let shown: Vec<String> = trace.iter().map(|r| format!("{r:.3e}")).collect();
    Err(Error::Numerical(format!(
        "Picard iteration did not reach {bound:e} in {} iterations; residuals [{}]",
        trace.len(),
        shown.join(", ")
    )))
}

/// State with `E ← E + dσ`, whose momentum map equals the stabilizer part
/// up to the split residual.
pub fn apply_split(s: &YmhState, split: &GaussSplit) -> Result<YmhState> {
    let mut out = s.clone();
    out.e = out.e.add(&split.sigma.d()?)?;
    Ok(out)
}

/// `𝒦ξ = M(ζ(ξ)) + φ⋄ρ(ξ)φ`, the linearized momentum map along gauge orbits.
fn orbit_operator(s: &YmhState, links: &[GroupElement], xi: &Cochain) -> Cochain {
    let mut out = gauss_operator(&gauge_link_velocity(xi, links), links);
    for x in 0..xi.cells() {
        let phi = s.phi_at(x);
        let v = rep_alg(LieCoeffs::from_slice(xi.value(x)), phi);
        let w = LieCoeffs::from_slice(out.value(x)) + fiber_momentum(phi, v);
        w.write_to(out.value_mut(x));
    }
    out
}

/// Remove the gauge-orbit component of the momenta so that the momentum
/// map vanishes. Solves `𝒦ξ = J` by conjugate gradients, then
/// `E ← E − ζ(ξ)`, `π ← π − ρ(ξ)φ`.
pub fn project_gauss(s: &YmhState) -> Result<YmhState> {
    let links = s.links();
    let j = momentum_map(s);
    let bound = SOLVER_TOL * j.data_norm().max(1.0);
    let dot = |a: &Cochain, b: &Cochain| a.data.iter().zip(&b.data).map(|(x, y)| x * y).sum::<f64>();

    let mut xi = Cochain::zeros(s.lattice(), 0, ValueType::Lie);
    let mut r = j.clone();
    let mut rr = dot(&r, &r);
    let mut p = r.clone();
    let mut converged = rr.sqrt() <= bound;
    for _ in 0..SOLVER_MAX_ITER {
        if converged {
            break;
        }
        let kp = orbit_operator(s, &links, &p);
        let pkp = dot(&p, &kp);
        if !(pkp > 0.0) {
            return Err(Error::Numerical("gauge-orbit operator lost positivity".into()));
        }
        let alpha = rr / pkp;
        xi.axpy(alpha, &p)?;
        r.axpy(-alpha, &kp)?;
        let rr_new = dot(&r, &r);
        converged = rr_new.sqrt() <= bound;
        let beta = rr_new / rr;
        rr = rr_new;
        p.data.iter_mut().zip(&r.data).for_each(|(pi, ri)| *pi = ri + beta * *pi);
    }
    if !converged {
        return Err(Error::Numerical(format!("Gauss projection stalled at residual {:e}", rr.sqrt())));
    }
    let mut out = s.clone();
    out.e = out.e.sub(&gauge_link_velocity(&xi, &links))?;
    for x in 0..xi.cells() {
        let v = rep_alg(LieCoeffs::from_slice(xi.value(x)), s.phi_at(x));
        let pi = s.pi_at(x);
        pair_write([pi[0] - v[0], pi[1] - v[1]], out.pi.value_mut(x));
    }
    Ok(out)
}

/// `A_γ = df + β + harm` with `β` coexact and `harm` harmonic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoulombSplit {
    pub f: Cochain,
    pub beta: Cochain,
    pub harm: Cochain,
    pub curvature: Cochain,
    /// Sup norm of `A_γ − df − β − harm`.
    pub residual: f64,
}

pub fn coulomb_split(agamma: &Cochain) -> Result<CoulombSplit> {
    if agamma.degree != 1 || agamma.vtype != ValueType::Real {
        return Err(Error::Validation("expected a real 1-cochain".into()));
    }
    let f = solve_poisson(&agamma.codiff()?, SOLVER_TOL, SOLVER_MAX_ITER)?;
    let curvature = agamma.d()?;
    let beta = solve_poisson(&curvature, SOLVER_TOL, SOLVER_MAX_ITER)?.codiff()?;
    let df = f.d()?;
    let harm = agamma.harmonic_part();
    let residual = agamma.sub(&df.add(&beta)?.add(&harm)?)?.sup_norm();
    Ok(CoulombSplit { f, beta, harm, curvature, residual })
}
