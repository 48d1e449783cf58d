//! Seeded initial conditions. Every preset is returned in unitary gauge with
//! the Gauß constraint solved.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use super::{project_gauss, unitary_gauge, YmhState, YmhTangent};
use crate::error::{Error, Result};
use crate::lattice::{Cochain, Lattice, ValueType};
use crate::liealg::{pair_write, Couplings, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// `A = E = π = 0`, `φ` at the Higgs vacuum.
    Vacuum,
    /// Neutral fields only: `W± = D± = Π₁ = 0`.
    SingularStratum,
    /// Neutral connection with charged electric field and Higgs momentum.
    NeutralConnection,
    /// All fields random.
    Generic,
    /// [`Preset::Generic`] on a single-site lattice.
    HomogeneousRandom,
}

impl Preset {
    pub const ALL: [Preset; 5] =
        [Preset::Vacuum, Preset::SingularStratum, Preset::NeutralConnection, Preset::Generic, Preset::HomogeneousRandom];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Vacuum => "vacuum",
            Preset::SingularStratum => "singular-stratum",
            Preset::NeutralConnection => "neutral-connection",
            Preset::Generic => "generic",
            Preset::HomogeneousRandom => "homogeneous-random",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown preset '{s}'")))
    }
}

/// Which components a random Lie-valued cochain may populate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    /// All four coefficients.
    Full,
    /// Only the `t3` and `i` coefficients.
    Diagonal,
}

fn uniform(rng: &mut ChaCha8Rng, amp: f64) -> f64 {
    if amp == 0.0 {
        0.0
    } else {
        rng.random_range(-amp..amp)
    }
}

/// Random `Lie` cochain with entries in `[−amp, amp)`.
pub fn random_fields(lattice: Lattice, degree: usize, kind: FieldKind, amp: f64, rng: &mut ChaCha8Rng) -> Cochain {
    Cochain::from_fn(lattice, degree, ValueType::Lie, |_, v| {
        for (i, x) in v.iter_mut().enumerate() {
            let keep = kind == FieldKind::Full || i >= 2;
            *x = if keep { uniform(rng, amp) } else { 0.0 };
        }
    })
}

fn random_pairs(lattice: Lattice, amp: f64, rng: &mut ChaCha8Rng) -> Cochain {
    Cochain::from_fn(lattice, 0, ValueType::Pair, |_, v| v.iter_mut().for_each(|x| *x = uniform(rng, amp)))
}

/// Random tangent vector with entries in `[−amp, amp)`.
pub fn random_tangent(lattice: Lattice, amp: f64, rng: &mut ChaCha8Rng) -> YmhTangent {
    YmhTangent {
        a: random_fields(lattice, 1, FieldKind::Full, amp, rng),
        e: random_fields(lattice, 1, FieldKind::Full, amp, rng),
        phi: random_pairs(lattice, amp, rng),
        pi: random_pairs(lattice, amp, rng),
    }
}

/// Higgs field `(0, η|ν|/√2)` with `η` drawn from `1 ± spread`.
fn radial_higgs(lattice: Lattice, c: &Couplings, spread: f64, rng: &mut ChaCha8Rng) -> Cochain {
    let nu = c.nu_h.abs();
    Cochain::from_fn(lattice, 0, ValueType::Pair, |_, v| {
        let eta = 1.0 + uniform(rng, spread);
        pair_write([C64::new(0.0, 0.0), C64::new(eta * nu * FRAC_1_SQRT_2, 0.0)], v);
    })
}

/// Higgs momentum with a vanishing first component.
fn lower_pairs(lattice: Lattice, amp: f64, rng: &mut ChaCha8Rng) -> Cochain {
    Cochain::from_fn(lattice, 0, ValueType::Pair, |_, v| {
        v[0] = 0.0;
        v[1] = 0.0;
        v[2] = uniform(rng, amp);
        v[3] = uniform(rng, amp);
    })
}

/// Build a preset state from a seed.
pub fn build_preset(preset: Preset, lattice: Lattice, couplings: Couplings, seed: u64) -> Result<YmhState> {
    couplings.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lattice = match preset {
        Preset::HomogeneousRandom => Lattice::new([1, 1, 1], lattice.h)?,
        _ => lattice,
    };
    let mut s = YmhState::vacuum(lattice, couplings);
    match preset {
        Preset::Vacuum => return Ok(s),
        Preset::SingularStratum => {
            s.a = random_fields(lattice, 1, FieldKind::Diagonal, 0.3, &mut rng);
            s.e = random_fields(lattice, 1, FieldKind::Diagonal, 0.5, &mut rng);
            s.phi = radial_higgs(lattice, &couplings, 0.2, &mut rng);
            s.pi = lower_pairs(lattice, 0.3, &mut rng);
        }
        Preset::NeutralConnection => {
            s.a = random_fields(lattice, 1, FieldKind::Diagonal, 0.3, &mut rng);
            s.e = random_fields(lattice, 1, FieldKind::Full, 0.5, &mut rng);
            s.phi = radial_higgs(lattice, &couplings, 0.2, &mut rng);
            s.pi = random_pairs(lattice, 0.3, &mut rng);
        }
        Preset::Generic | Preset::HomogeneousRandom => {
            s.a = random_fields(lattice, 1, FieldKind::Full, 0.3, &mut rng);
            s.e = random_fields(lattice, 1, FieldKind::Full, 0.5, &mut rng);
            let noise = random_pairs(lattice, 0.2, &mut rng);
            s.phi.axpy(1.0, &noise)?;
            s.pi = random_pairs(lattice, 0.3, &mut rng);
        }
    }
    let (_, fixed) = unitary_gauge(&s)?;
    project_gauss(&fixed)
}

/// Unconstrained random state in arbitrary gauge: `A` with entries in
/// `[−amp_a, amp_a)`, `E` in `[−0.5, 0.5)`, `φ` the vacuum plus noise in
/// `[−0.3, 0.3)`, `π` in `[−0.4, 0.4)` and a lapse in `[0.7, 1.3)`.
pub fn random_state(lattice: Lattice, couplings: Couplings, amp_a: f64, seed: u64) -> YmhState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = YmhState::vacuum(lattice, couplings);
    s.a = random_fields(lattice, 1, FieldKind::Full, amp_a, &mut rng);
    s.e = random_fields(lattice, 1, FieldKind::Full, 0.5, &mut rng);
    for x in 0..lattice.sites() {
        for v in s.phi.value_mut(x) {
            *v += uniform(&mut rng, 0.3);
        }
        for v in s.pi.value_mut(x) {
            *v = uniform(&mut rng, 0.4);
        }
        s.lapse.data[x] = rng.random_range(0.7..1.3);
    }
    s
}
