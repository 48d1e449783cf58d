//! Howe subgroups of `SU(2) × U(1)` through Goursat data, a numerical
//! centralizer check, and the holonomy table for `SU(2)`.
//!
//! A subgroup `H′ ⊂ G × L` is described by `(G₁, G₂, L₁, L₂, θ)` with
//! `G₂ ⊲ G₁ ⊂ G`, `L₂ ⊲ L₁ ⊂ L` and `θ: G₁/G₂ → L₁/L₂`; `H′` is the set of
//! `(g, l)` with `θ(g G₂) = l L₂`. Cyclic subgroups of `SU(2)` sit in the
//! diagonal torus.

use nalgebra::DMatrix;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::error::{Error, Result};
use crate::liealg::{Su2, C64};

const SAMPLE_SEED: u64 = 0x5eed_40e5;
const NULL_TOL: f64 = 1e-9;

/// Closed subgroups appearing in the tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Trivial,
    /// `Z_n` with `n ≥ 2`.
    Cyclic(u32),
    U1,
    SU2,
}

impl GroupKind {
    /// `Z_n`, with `Z_1` folded into [`GroupKind::Trivial`].
    pub fn cyclic(n: u32) -> Self {
        if n <= 1 {
            GroupKind::Trivial
        } else {
            GroupKind::Cyclic(n)
        }
    }

    pub fn order(self) -> Option<u32> {
        match self {
            GroupKind::Trivial => Some(1),
            GroupKind::Cyclic(n) => Some(n),
            _ => None,
        }
    }

    fn sample_su2(self, rng: &mut ChaCha8Rng) -> Su2 {
        match self {
            GroupKind::Trivial => Su2::IDENTITY,
            GroupKind::Cyclic(n) => torus(TAU * rng.random_range(0..n) as f64 / n as f64),
            GroupKind::U1 => torus(rng.random_range(-PI..PI)),
            GroupKind::SU2 => {
                let c = [0; 3].map(|_| rng.random_range(-PI..PI));
                Su2::exp(c)
            }
        }
    }

    fn sample_phase(self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            GroupKind::Trivial => 0.0,
            GroupKind::Cyclic(n) => TAU * rng.random_range(0..n) as f64 / n as f64,
            GroupKind::U1 | GroupKind::SU2 => rng.random_range(-PI..PI),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => f.write_str("e"),
            GroupKind::Cyclic(n) => write!(f, "Z{n}"),
            GroupKind::U1 => f.write_str("U1"),
            GroupKind::SU2 => f.write_str("SU2"),
        }
    }
}

/// `diag(e^{iα}, e^{−iα})`.
fn torus(alpha: f64) -> Su2 {
    Su2::new(C64::from_polar(1.0, alpha), C64::new(0.0, 0.0))
}

/// Isomorphism between the Goursat quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theta {
    /// Both quotients trivial.
    Trivial,
    /// Identity between two copies of `Z₂`.
    IdZ2,
    /// `z ↦ z^{kq/p}` between `U(1)/Z_q` and `U(1)/Z_p`.
    Power { k: u32, q: u32, p: u32 },
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Theta::Trivial => f.write_str("trivial"),
            Theta::IdZ2 => f.write_str("id_Z2"),
            Theta::Power { k, q, p } => write!(f, "z^{}", k * q / p),
        }
    }
}

/// Goursat data of a subgroup of `SU(2) × U(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HoweQuintuple {
    pub g1: GroupKind,
    pub g2: GroupKind,
    pub l1: GroupKind,
    pub l2: GroupKind,
    pub theta: Theta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quotient {
    Finite(u32),
    Circle,
    /// `SU(2)` or `SO(3)`.
    NonAbelian,
}

/// `big/small` when `small` is a normal subgroup of `big`.
fn normal_quotient(big: GroupKind, small: GroupKind) -> Option<Quotient> {
    use GroupKind::*;
    match (big, small) {
        (a, b) if a == b => Some(Quotient::Finite(1)),
        (SU2, Trivial) | (SU2, Cyclic(2)) => Some(Quotient::NonAbelian),
        (U1, Trivial) | (U1, Cyclic(_)) => Some(Quotient::Circle),
        (Cyclic(m), Trivial) => Some(Quotient::Finite(m)),
        (Cyclic(m), Cyclic(n)) if m % n == 0 => Some(Quotient::Finite(m / n)),
        _ => None,
    }
}

impl HoweQuintuple {
    pub fn new(g1: GroupKind, g2: GroupKind, l1: GroupKind, l2: GroupKind, theta: Theta) -> Self {
        Self { g1, g2, l1, l2, theta }
    }

    /// Checks `G₂ ⊲ G₁`, `L₂ ⊲ L₁` and that `θ` matches the quotients.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::Validation(format!("invalid quintuple {self:?}: {why}")));
        if matches!(self.l1, GroupKind::SU2) || matches!(self.l2, GroupKind::SU2) {
            return bad("SU(2) is not a subgroup of U(1)");
        }
        let (Some(qg), Some(ql)) = (normal_quotient(self.g1, self.g2), normal_quotient(self.l1, self.l2))
        else {
            return bad("not a normal subgroup pair");
        };
        match self.theta {
            Theta::Trivial if qg == Quotient::Finite(1) && ql == Quotient::Finite(1) => Ok(()),
            Theta::IdZ2 if qg == Quotient::Finite(2) && ql == Quotient::Finite(2) => Ok(()),
            Theta::Power { k, q, p } => {
                let shape = self.g1 == GroupKind::U1
                    && self.l1 == GroupKind::U1
                    && self.g2 == GroupKind::cyclic(q)
                    && self.l2 == GroupKind::cyclic(p);
                if !shape || k == 0 || p == 0 || q == 0 {
                    bad("power map needs U(1)/Z_q -> U(1)/Z_p with positive k")
                } else if (k * q) % p != 0 {
                    bad("p does not divide kq")
                } else {
                    Ok(())
                }
            }
            _ => bad("theta does not match the quotients"),
        }
    }

    /// Random element of `H′` as `(SU(2) part, U(1) angle)`.
    fn sample(&self, rng: &mut ChaCha8Rng) -> (Su2, f64) {
        match self.theta {
            Theta::Trivial => (self.g1.sample_su2(rng), self.l1.sample_phase(rng)),
            Theta::IdZ2 => {
                let n = self.l1.order().unwrap_or(2);
                let m = rng.random_range(0..n);
                let g = if m % 2 == 0 { Su2::IDENTITY } else { torus(PI) };
                (g, TAU * m as f64 / n as f64)
            }
            Theta::Power { k, q, p } => {
                let alpha = rng.random_range(-PI..PI);
                let j = rng.random_range(0..p);
                let phase = (k * q) as f64 / p as f64 * alpha + TAU * j as f64 / p as f64;
                (torus(alpha), phase)
            }
        }
    }
}

/// Howe subgroups of `SU(2) × U(1)` up to conjugacy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HoweSymbol {
    #[serde(rename = "SU2xU1")]
    Su2U1,
    #[serde(rename = "U1xU1")]
    U1U1,
    #[serde(rename = "Z2xU1")]
    Z2U1,
}

impl HoweSymbol {
    pub const ALL: [HoweSymbol; 3] = [HoweSymbol::Su2U1, HoweSymbol::U1U1, HoweSymbol::Z2U1];

    pub fn name(self) -> &'static str {
        match self {
            HoweSymbol::Su2U1 => "SU2xU1",
            HoweSymbol::U1U1 => "U1xU1",
            HoweSymbol::Z2U1 => "Z2xU1",
        }
    }

    /// `SU(2)` factor of the group.
    pub fn su2_factor(self) -> GroupKind {
        match self {
            HoweSymbol::Su2U1 => GroupKind::SU2,
            HoweSymbol::U1U1 => GroupKind::U1,
            HoweSymbol::Z2U1 => GroupKind::Cyclic(2),
        }
    }

    /// One generator with this centralizer: `SU(2) × {e}` for `Z2xU1`.
    pub fn representative(self) -> HoweQuintuple {
        use GroupKind::*;
        match self {
            HoweSymbol::Su2U1 => HoweQuintuple::new(Trivial, Trivial, U1, U1, Theta::Trivial),
            HoweSymbol::U1U1 => HoweQuintuple::new(U1, U1, U1, U1, Theta::Trivial),
            HoweSymbol::Z2U1 => HoweQuintuple::new(SU2, SU2, Trivial, Trivial, Theta::Trivial),
        }
    }
}

impl fmt::Display for HoweSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One table row. `quintuple` is `None` for a row whose generators are not
/// listed individually.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HoweRow {
    pub symbol: HoweSymbol,
    pub quintuple: Option<HoweQuintuple>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub k: Option<u32>,
}

impl HoweRow {
    fn fixed(symbol: HoweSymbol, q: HoweQuintuple) -> Self {
        Self { symbol, quintuple: Some(q), p: None, q: None, k: None }
    }

    pub fn is_unexpanded(&self) -> bool {
        self.quintuple.is_none()
    }

    pub fn record(&self) -> HoweRecord {
        let s = |g: fn(&HoweQuintuple) -> GroupKind| self.quintuple.as_ref().map(|q| g(q).to_string()).unwrap_or_default();
        HoweRecord {
            symbol: self.symbol.name().to_string(),
            g1: s(|q| q.g1),
            g2: s(|q| q.g2),
            l1: s(|q| q.l1),
            l2: s(|q| q.l2),
            theta: self.quintuple.map(|q| q.theta.to_string()).unwrap_or_else(|| "unexpanded".to_string()),
            p: self.p,
            q: self.q,
            k: self.k,
        }
    }
}

/// Flat, serializable form of a [`HoweRow`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoweRecord {
    pub symbol: String,
    #[serde(rename = "G1")]
    pub g1: String,
    #[serde(rename = "G2")]
    pub g2: String,
    #[serde(rename = "L1")]
    pub l1: String,
    #[serde(rename = "L2")]
    pub l2: String,
    pub theta: String,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub k: Option<u32>,
}

/// Subgroup generators of `SU(2) × U(1)` for every Howe subgroup, with the
/// parametric families instantiated for `p, q, k ∈ 1..=p_max`.
///
/// Instances in which a cyclic group collapses to `Z_1` and reproduce a
/// parameter-free row are dropped. Rows are sorted by `(symbol, p, q, k)`
/// and then by their position in the table.
pub fn goursat_enumerate(p_max: u32) -> Result<Vec<HoweRow>> {
    use GroupKind::*;
    use HoweSymbol::*;
    if p_max == 0 {
        return Err(Error::Validation("p_max must be at least 1".into()));
    }
    let z = GroupKind::cyclic;
    let mut rows: Vec<(usize, HoweRow)> = Vec::new();
    let mut push = |t: usize, r: HoweRow| rows.push((t, r));
    let with_p = |symbol, q: HoweQuintuple, p| HoweRow { symbol, quintuple: Some(q), p: Some(p), q: None, k: None };

    push(0, HoweRow::fixed(Su2U1, HoweQuintuple::new(Trivial, Trivial, U1, U1, Theta::Trivial)));
    for p in 2..=p_max {
        push(1, with_p(Su2U1, HoweQuintuple::new(Trivial, Trivial, z(p), z(p), Theta::Trivial), p));
    }
    push(2, HoweRow::fixed(Su2U1, HoweQuintuple::new(Trivial, Trivial, Trivial, Trivial, Theta::Trivial)));
    push(3, HoweRow::fixed(Su2U1, HoweQuintuple::new(z(2), z(2), U1, U1, Theta::Trivial)));
    for p in 2..=p_max {
        push(4, with_p(Su2U1, HoweQuintuple::new(z(2), z(2), z(p), z(p), Theta::Trivial), p));
    }
    push(5, HoweRow::fixed(Su2U1, HoweQuintuple::new(z(2), z(2), Trivial, Trivial, Theta::Trivial)));
    for p in 1..=p_max {
        push(6, with_p(Su2U1, HoweQuintuple::new(z(2), Trivial, z(2 * p), z(p), Theta::IdZ2), p));
    }

    push(7, HoweRow::fixed(U1U1, HoweQuintuple::new(U1, U1, U1, U1, Theta::Trivial)));
    for p in 2..=p_max {
        push(8, with_p(U1U1, HoweQuintuple::new(U1, U1, z(p), z(p), Theta::Trivial), p));
    }
    push(9, HoweRow::fixed(U1U1, HoweQuintuple::new(U1, U1, Trivial, Trivial, Theta::Trivial)));
    for p in 1..=p_max {
        for q in 1..=p_max {
            if p == 1 && q == 1 {
                continue;
            }
            for k in (1..=p_max).filter(|k| (k * q) % p == 0) {
                let quint = HoweQuintuple::new(U1, z(q), U1, z(p), Theta::Power { k, q, p });
                push(10, HoweRow { symbol: U1U1, quintuple: Some(quint), p: Some(p), q: Some(q), k: Some(k) });
            }
        }
    }
    for k in 1..=p_max {
        let quint = HoweQuintuple::new(U1, Trivial, U1, Trivial, Theta::Power { k, q: 1, p: 1 });
        push(11, HoweRow { symbol: U1U1, quintuple: Some(quint), p: None, q: None, k: Some(k) });
    }

    push(12, HoweRow { symbol: Z2U1, quintuple: None, p: None, q: None, k: None });

    rows.sort_by_key(|(t, r)| (r.symbol, r.p.unwrap_or(0), r.q.unwrap_or(0), r.k.unwrap_or(0), *t));
    Ok(rows.into_iter().map(|(_, r)| r).collect())
}

/// Dimension of the centralizer in `su(2) ⊕ u(1)` of a set of elements,
/// from the null space of the stacked maps `Ad_g − 1` on `su(2)`.
pub fn lie_centralizer_dim(gens: &[Su2]) -> usize {
    if gens.is_empty() {
        return 4;
    }
    let m = DMatrix::from_fn(3 * gens.len(), 3, |r, c| {
        let mut x = [0.0; 3];
        x[c] = 1.0;
        let y = gens[r / 3].adjoint(x);
        y[r % 3] - x[r % 3]
    });
    let sv = m.svd(false, false).singular_values;
    1 + sv.iter().filter(|&&s| s < NULL_TOL).count()
}

fn commutes(a: &Su2, b: &Su2) -> bool {
    let (ab, ba) = (a.mul(b), b.mul(a));
    (ab.alpha - ba.alpha).norm() < NULL_TOL && (ab.beta - ba.beta).norm() < NULL_TOL
}

fn weyl() -> Su2 {
    Su2::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0))
}

/// Centralizer in `SU(2)` of a sampled subgroup, as one of `SU2`, `U1`
/// (the torus through the samples) or `Z2` (the center).
fn su2_centralizer(samples: &[Su2]) -> GroupKind {
    match lie_centralizer_dim(samples) - 1 {
        3 => GroupKind::SU2,
        1 => GroupKind::U1,
        _ => GroupKind::Cyclic(2),
    }
}

/// Centralizer of `H′` in `SU(2) × U(1)` identified from `n_samples`
/// random elements: Lie dimension plus membership of `−1` and of the Weyl
/// element.
pub fn centralizer_of(q: &HoweQuintuple, n_samples: usize) -> Option<HoweSymbol> {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let gens: Vec<Su2> = (0..n_samples.max(1)).map(|_| q.sample(&mut rng).0).collect();
    let dim = lie_centralizer_dim(&gens);
    let minus_one = gens.iter().all(|g| commutes(g, &torus(PI)));
    let w = gens.iter().all(|g| commutes(g, &weyl()));
    match (dim, minus_one, w) {
        (4, true, true) => Some(HoweSymbol::Su2U1),
        (2, true, false) => Some(HoweSymbol::U1U1),
        (1, true, false) => Some(HoweSymbol::Z2U1),
        _ => None,
    }
}

/// True iff `q` is valid and its centralizer is the group named by `symbol`.
pub fn centralizer_check(symbol: HoweSymbol, q: &HoweQuintuple, n_samples: usize) -> bool {
    q.validate().is_ok() && centralizer_of(q, n_samples) == Some(symbol)
}

/// Row of the holonomy table: holonomy group, its centralizer (the gauge
/// stabilizer) and the double centralizer (the Howe subgroup).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoloRow {
    pub holonomy: Vec<GroupKind>,
    pub stabilizer: GroupKind,
    pub howe: GroupKind,
}

impl HoloRow {
    pub fn holonomy_label(&self) -> String {
        self.holonomy.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" or ")
    }

    /// `C(C(H)) = H` for the Howe subgroup.
    pub fn closed(&self) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let c = centralizer_kind(self.howe, &mut rng);
        centralizer_kind(c, &mut rng) == self.howe
    }
}

fn centralizer_kind(g: GroupKind, rng: &mut ChaCha8Rng) -> GroupKind {
    let samples: Vec<Su2> = (0..16).map(|_| g.sample_su2(rng)).collect();
    su2_centralizer(&samples)
}

/// Holonomy groups of `SU(2)` connections up to conjugacy, grouped by
/// their centralizer.
pub fn su2_holonomy_table() -> Vec<HoloRow> {
    use GroupKind::*;
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut rows: Vec<HoloRow> = Vec::new();
    for hol in [Trivial, Cyclic(2), U1, SU2] {
        let stabilizer = centralizer_kind(hol, &mut rng);
        match rows.iter_mut().find(|r| r.stabilizer == stabilizer) {
            Some(r) => r.holonomy.push(hol),
            None => {
                let howe = centralizer_kind(stabilizer, &mut rng);
                rows.push(HoloRow { holonomy: vec![hol], stabilizer, howe });
            }
        }
    }
    rows
}

/// CSV with header `symbol,G1,G2,L1,L2,theta,p,q,k`.
pub fn howe_csv(rows: &[HoweRow]) -> String {
    let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut out = String::from("symbol,G1,G2,L1,L2,theta,p,q,k\n");
    for r in rows.iter().map(HoweRow::record) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.symbol,
            r.g1,
            r.g2,
            r.l1,
            r.l2,
            r.theta,
            opt(r.p),
            opt(r.q),
            opt(r.k)
        ));
    }
    out
}

/// Pretty-printed JSON array of [`HoweRecord`]s, newline-terminated.
pub fn howe_json(rows: &[HoweRow]) -> String {
    let recs: Vec<HoweRecord> = rows.iter().map(HoweRow::record).collect();
    let mut s = serde_json::to_string_pretty(&recs).expect("records serialize");
    s.push('\n');
    s
}

/// CSV with header `holonomy,stabilizer,howe`.
pub fn su2_holonomy_csv(rows: &[HoloRow]) -> String {
    let mut out = String::from("holonomy,stabilizer,howe\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.holonomy_label(), r.stabilizer, r.howe));
    }
    out
}
