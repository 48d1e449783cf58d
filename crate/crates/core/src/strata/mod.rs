//! Orbit-type labels for gauge configurations and phase-space points in
//! unitary gauge, seam labels, a null-space oracle for stabilizer
//! dimensions, frontier sampling, and the subgroup tables for
//! `SU(2) × U(1)`.
//!
//! Labels compare by subgroup inclusion: `Z2 < K`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Cochain, ValueType};
use crate::liealg::LieCoeffs;
use crate::ymh::{inf_gauge_action, momentum_map, project_gauss, symplectic_form, YmhState, YmhTangent, STRATUM_TOL};

mod howe;

pub use howe::{
    centralizer_check, centralizer_of, goursat_enumerate, howe_csv, howe_json, lie_centralizer_dim, su2_holonomy_csv,
    su2_holonomy_table, GroupKind, HoloRow, HoweQuintuple, HoweRecord, HoweRow, HoweSymbol, Theta,
};

/// Stabilizer type of a classified object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StratumLabel {
    /// Only the center `{±1}` fixes the point.
    Z2,
    /// The residual electromagnetic group fixes the point.
    K,
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StratumLabel::Z2 => "Z2",
            StratumLabel::K => "K",
        })
    }
}

/// Phase-space label refined by the label of the underlying configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeamLabel {
    pub cotangent_type: StratumLabel,
    pub base_type: StratumLabel,
}

impl SeamLabel {
    /// Rejects `(K, Z2)`: a point cannot have more symmetry than its base point.
    pub fn new(cotangent_type: StratumLabel, base_type: StratumLabel) -> Result<Self> {
        if cotangent_type > base_type {
            return Err(Error::Validation(format!("seam ({cotangent_type},{base_type}) violates the stratum order")));
        }
        Ok(Self { cotangent_type, base_type })
    }
}

impl fmt::Display for SeamLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.cotangent_type, self.base_type)
    }
}

fn check_unitary(s: &YmhState, tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::Validation(format!("tolerance must be positive, got {tol}")));
    }
    s.validate()?;
    for x in 0..s.lattice().sites() {
        let [p1, p2] = s.phi_at(x);
        if p1.norm() >= tol || p2.im.abs() >= tol || !(p2.re > 0.0) {
            return Err(Error::Validation(format!("state is not in unitary gauge at site {x}")));
        }
    }
    Ok(())
}

/// `sup_e |W₊|`, read off the `t1, t2` coefficients of `A`.
fn sup_w(s: &YmhState) -> f64 {
    let g = s.couplings.g;
    (0..s.a.cells()).map(|e| s.a_at(e).to_kp().a.norm() / g).fold(0.0, f64::max)
}

/// `sup_e |D±|`, read off the `t1, t2` coefficients of `E`.
fn sup_d(s: &YmhState) -> f64 {
    let g = s.couplings.g;
    (0..s.e.cells()).map(|e| g * s.e_at(e).to_kp().a.norm()).fold(0.0, f64::max)
}

fn sup_pi1(s: &YmhState) -> f64 {
    (0..s.lattice().sites()).map(|x| s.pi_at(x)[0].norm()).fold(0.0, f64::max)
}

/// Largest of `|W±|`, `|D±|`, `|Π₁|` and `|φ₁|`: distance of a state from
/// the singular stratum in the component sup norm. Needs no gauge condition.
pub fn stratum_defect(s: &YmhState) -> f64 {
    let phi1 = (0..s.lattice().sites()).map(|x| s.phi_at(x)[0].norm()).fold(0.0, f64::max);
    sup_w(s).max(sup_d(s)).max(sup_pi1(s)).max(phi1)
}

/// Label of the connection: `K` iff `W± = 0` to `tol`.
pub fn classify_config(s: &YmhState, tol: f64) -> Result<StratumLabel> {
    check_unitary(s, tol)?;
    Ok(if sup_w(s) < tol { StratumLabel::K } else { StratumLabel::Z2 })
}

/// Label of the phase-space point: `K` iff `W±`, `D±` and `Π₁` vanish to `tol`.
pub fn classify_phase(s: &YmhState, tol: f64) -> Result<StratumLabel> {
    check_unitary(s, tol)?;
    let k = sup_w(s) < tol && sup_d(s) < tol && sup_pi1(s) < tol;
    Ok(if k { StratumLabel::K } else { StratumLabel::Z2 })
}

/// `(classify_phase, classify_config)` of a point on the constraint set.
pub fn seam_label(s: &YmhState, tol_j: f64, tol: f64) -> Result<SeamLabel> {
    let j = momentum_map(s).sup_norm();
    if !(j < tol_j) {
        return Err(Error::Precondition(format!("momentum map {j:e} exceeds {tol_j:e}")));
    }
    SeamLabel::new(classify_phase(s, tol)?, classify_config(s, tol)?)
}

/// Dimension of the Lie algebra of the stabilizer of a single-site state,
/// from the null space of the infinitesimal action `𝔤 → T(A, E, φ, π)`.
pub fn stabilizer_dim_oracle(s: &YmhState) -> Result<usize> {
    let lat = s.lattice();
    if lat.sites() != 1 {
        return Err(Error::Validation(format!("stabilizer oracle needs a 1x1x1 lattice, got {:?}", lat.dims)));
    }
    let mut cols = Vec::with_capacity(4);
    for i in 0..4 {
        let xi = Cochain::from_fn(lat, 0, ValueType::Lie, |_, v| v[i] = 1.0);
        let t = inf_gauge_action(&xi, s)?;
        let col: Vec<f64> = [&t.a, &t.e, &t.phi, &t.pi].iter().flat_map(|c| c.data.iter().copied()).collect();
        cols.push(col);
    }
    let m = DMatrix::from_fn(cols[0].len(), 4, |r, c| cols[c][r]);
    let sv = m.svd(false, false).singular_values;
    Ok(sv.iter().filter(|&&x| x < STRATUM_TOL).count())
}

/// Outcome of [`frontier_sample`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierReport {
    pub epsilons: Vec<f64>,
    pub labels: Vec<StratumLabel>,
    /// `‖s_ε − s_K‖` in the weighted L² norm.
    pub distances: Vec<f64>,
    /// Least-squares constant in `distance ≈ slope · ε`.
    pub slope: f64,
    /// Largest `|distance/ε − slope| / slope` over `ε > 0`.
    pub slope_spread: f64,
    /// Every `ε > tol` produced a `Z2` configuration and every `ε < tol` a `K` one.
    pub labels_ok: bool,
}

impl FrontierReport {
    pub fn linear_within(&self, rel: f64) -> bool {
        self.slope_spread <= rel
    }
}

/// Family `s_ε` obtained from a `K`-type state by a charged left
/// translation of every link and a re-solve of the Gauß constraint for the
/// momenta. The charged direction `δ = α t1 + β t2`, `α² + β² = 1`, is
/// chosen with `Ω(t₊·s, δ) = 0`, which keeps the `t₊` component of the
/// momentum map at second order so the projection stays `O(ε)`.
pub fn frontier_family(s_k: &YmhState, eps: f64) -> Result<YmhState> {
    let lat = s_k.lattice();
    let xi = Cochain::from_fn(lat, 0, ValueType::Lie, |_, v| LieCoeffs::T_PLUS.write_to(v));
    let orbit = inf_gauge_action(&xi, s_k)?;
    let scale = std::f64::consts::SQRT_2 * s_k.couplings.g;
    let charged = |dir: LieCoeffs| {
        let mut v = YmhTangent::zeros(lat);
        (0..v.a.cells()).for_each(|e| (scale * dir).write_to(v.a.value_mut(e)));
        v
    };
    let (u1, u2) = (charged(LieCoeffs::T1), charged(LieCoeffs::T2));
    let (a1, a2) = (symplectic_form(&orbit, &u1)?, symplectic_form(&orbit, &u2)?);
    let norm = a1.hypot(a2);
    let (alpha, beta) = if norm > 0.0 { (a2 / norm, -a1 / norm) } else { (1.0, 0.0) };
    let v = charged(alpha * LieCoeffs::T1 + beta * LieCoeffs::T2);
    project_gauss(&s_k.advance(&v, eps))
}

/// Approach a `K`-type configuration through `Z2`-type ones.
pub fn frontier_sample(s_k: &YmhState, epsilons: &[f64], tol: f64) -> Result<FrontierReport> {
    if classify_config(s_k, tol)? != StratumLabel::K {
        return Err(Error::Precondition("frontier sampling needs a K-type configuration".into()));
    }
    if epsilons.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
        return Err(Error::Validation("perturbation sizes must be finite and non-negative".into()));
    }
    let mut labels = Vec::with_capacity(epsilons.len());
    let mut distances = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let s = frontier_family(s_k, eps)?;
        labels.push(classify_config(&s, tol)?);
        distances.push(s.distance(s_k)?);
    }
    let labels_ok = epsilons.iter().zip(&labels).all(|(&eps, &l)| {
        if eps > tol {
            l == StratumLabel::Z2
        } else if eps < tol {
            l == StratumLabel::K
        } else {
            true
        }
    });
    let (num, den) = epsilons.iter().zip(&distances).fold((0.0, 0.0), |(n, d), (&e, &r)| (n + e * r, d + e * e));
    let slope = if den > 0.0 { num / den } else { 0.0 };
    let slope_spread = epsilons
        .iter()
        .zip(&distances)
        .filter(|(e, _)| **e > 0.0)
        .map(|(e, d)| ((d / e - slope) / slope).abs())
        .fold(0.0, f64::max);
    Ok(FrontierReport { epsilons: epsilons.to_vec(), labels, distances, slope, slope_spread, labels_ok })
}
