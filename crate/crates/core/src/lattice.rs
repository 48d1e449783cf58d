//! Discrete exterior calculus on a periodic cubical lattice.
//!
//! Cochains are integrated: a `k`-cochain stores the integral of a
//! `k`-form over each `k`-cell, so the coboundary is pure incidence.
//!
//! Cell layout for a site `x = (i0, i1, i2)` with flat index
//! `s = (i0·n1 + i1)·n2 + i2`:
//! - degree 0 and 3: one cell per site, index `s`;
//! - degree 1: edge `(x, μ)` from `x` to `x + e_μ`, index `3s + μ`;
//! - degree 2: face `(x, ρ)` spanned by `e_{ρ+1} ∧ e_{ρ+2}` (indices mod 3)
//!   at corner `x`, index `3s + ρ`. Its orientation is the normal `e_ρ`.
//!
//! The Hodge star maps cell `(x, μ)` of degree `k` to the cell with the same
//! index in degree `3 − k`, scaled by `h^{3−2k}`. The `L²` pairing weights
//! degree `k` by `h^{3−2k}`, which makes `codiff = h^{-2} dᵀ` the exact
//! adjoint of `d` and the star an isometry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub dims: [usize; 3],
    pub h: f64,
}

impl Lattice {
    pub fn new(dims: [usize; 3], h: f64) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::Validation(format!("lattice dims must be positive, got {dims:?}")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Validation(format!("spacing must be positive, got {h}")));
        }
        Ok(Self { dims, h })
    }

    pub fn cubic(n: usize, h: f64) -> Result<Self> {
        Self::new([n, n, n], h)
    }

    pub fn sites(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    pub fn cell_count(&self, degree: usize) -> usize {
        match degree {
            0 | 3 => self.sites(),
            _ => 3 * self.sites(),
        }
    }

    /// Total volume `N h^3`.
    pub fn volume(&self) -> f64 {
        self.sites() as f64 * self.h.powi(3)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.dims == [1, 1, 1]
    }

    pub fn site_index(&self, c: [usize; 3]) -> usize {
        (c[0] * self.dims[1] + c[1]) * self.dims[2] + c[2]
    }

    pub fn coords(&self, s: usize) -> [usize; 3] {
        let i2 = s % self.dims[2];
        let r = s / self.dims[2];
        [r / self.dims[1], r % self.dims[1], i2]
    }

    /// Site `x + e_mu`.
    pub fn fwd(&self, s: usize, mu: usize) -> usize {
        let mut c = self.coords(s);
        c[mu] = (c[mu] + 1) % self.dims[mu];
        self.site_index(c)
    }

    /// Site `x - e_mu`.
    pub fn bwd(&self, s: usize, mu: usize) -> usize {
        let mut c = self.coords(s);
        c[mu] = (c[mu] + self.dims[mu] - 1) % self.dims[mu];
        self.site_index(c)
    }

    /// Weight `h^{3-2k}` of the `L²` pairing on degree `k`.
    pub fn weight(&self, degree: usize) -> f64 {
        self.h.powi(3 - 2 * degree as i32)
    }

    /// Vertices of the `k`-cell `(s, dir)`; `dir` is ignored for `k = 0, 3`.
    pub fn cell_vertices(&self, degree: usize, s: usize, dir: usize) -> Vec<usize> {
        match degree {
            0 => vec![s],
            1 => vec![s, self.fwd(s, dir)],
            2 => {
                let (mu, nu) = face_dirs(dir);
                let a = self.fwd(s, mu);
                vec![s, a, self.fwd(a, nu), self.fwd(s, nu)]
            }
            _ => {
                let mut v = Vec::with_capacity(8);
                for m in 0..8 {
                    let mut t = s;
                    for (mu, bit) in [1, 2, 4].iter().enumerate() {
                        if m & bit != 0 {
                            t = self.fwd(t, mu);
                        }
                    }
                    v.push(t);
                }
                v
            }
        }
    }
}

/// In-plane directions `(ρ+1, ρ+2) mod 3` of face `ρ`.
pub fn face_dirs(rho: usize) -> (usize, usize) {
    ((rho + 1) % 3, (rho + 2) % 3)
}

/// Value stored per cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueType {
    Real,
    Complex,
    /// `LieCoeffs` in the order `c1, c2, c3, c0`.
    Lie,
    /// Complex pair `(re z1, im z1, re z2, im z2)`.
    Pair,
}

impl ValueType {
    pub fn dim(&self) -> usize {
        match self {
            ValueType::Real => 1,
            ValueType::Complex => 2,
            ValueType::Lie | ValueType::Pair => 4,
        }
    }

    fn code(&self) -> u8 {
        match self {
            ValueType::Real => 0,
            ValueType::Complex => 1,
            ValueType::Lie => 2,
            ValueType::Pair => 3,
        }
    }

    fn from_code(c: u8) -> Result<Self> {
        Ok(match c {
            0 => ValueType::Real,
            1 => ValueType::Complex,
            2 => ValueType::Lie,
            3 => ValueType::Pair,
            _ => return Err(Error::Validation(format!("unknown value type code {c}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cochain {
    pub lattice: Lattice,
    pub degree: usize,
    pub vtype: ValueType,
    pub data: Vec<f64>,
}

fn check_degree(k: usize) -> Result<()> {
    if k > 3 {
        return Err(Error::Degree(format!("degree {k} outside 0..=3")));
    }
    Ok(())
}

impl Cochain {
    pub fn zeros(lattice: Lattice, degree: usize, vtype: ValueType) -> Self {
        let n = lattice.cell_count(degree.min(3)) * vtype.dim();
        Self { lattice, degree, vtype, data: vec![0.0; n] }
    }

    pub fn from_data(lattice: Lattice, degree: usize, vtype: ValueType, data: Vec<f64>) -> Result<Self> {
        check_degree(degree)?;
        let n = lattice.cell_count(degree) * vtype.dim();
        if data.len() != n {
            return Err(Error::Validation(format!("expected {n} values, got {}", data.len())));
        }
        Ok(Self { lattice, degree, vtype, data })
    }

    /// Fill each cell by `f(cell_index, out)`.
    pub fn from_fn<F: FnMut(usize, &mut [f64])>(lattice: Lattice, degree: usize, vtype: ValueType, mut f: F) -> Self {
        let mut c = Self::zeros(lattice, degree, vtype);
        let vd = vtype.dim();
        for (i, chunk) in c.data.chunks_mut(vd).enumerate() {
            f(i, chunk);
        }
        c
    }

    pub fn cells(&self) -> usize {
        self.lattice.cell_count(self.degree)
    }

    pub fn vdim(&self) -> usize {
        self.vtype.dim()
    }

    pub fn value(&self, cell: usize) -> &[f64] {
        let vd = self.vdim();
        &self.data[cell * vd..(cell + 1) * vd]
    }

    pub fn value_mut(&mut self, cell: usize) -> &mut [f64] {
        let vd = self.vdim();
        &mut self.data[cell * vd..(cell + 1) * vd]
    }

    fn same_shape(&self, o: &Cochain) -> Result<()> {
        if self.degree != o.degree || self.vtype != o.vtype || self.lattice != o.lattice {
            return Err(Error::Validation(format!(
                "cochain mismatch: degree {} {:?} vs degree {} {:?}",
                self.degree, self.vtype, o.degree, o.vtype
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Cochain) -> Result<Cochain> {
        self.same_shape(o)?;
        let mut r = self.clone();
        r.data.iter_mut().zip(&o.data).for_each(|(a, b)| *a += b);
        Ok(r)
    }

    pub fn sub(&self, o: &Cochain) -> Result<Cochain> {
        self.same_shape(o)?;
        let mut r = self.clone();
        r.data.iter_mut().zip(&o.data).for_each(|(a, b)| *a -= b);
        Ok(r)
    }

    pub fn scale(&self, s: f64) -> Cochain {
        let mut r = self.clone();
        r.data.iter_mut().for_each(|a| *a *= s);
        r
    }

    /// `self += s · o`.
    pub fn axpy(&mut self, s: f64, o: &Cochain) -> Result<()> {
        self.same_shape(o)?;
        self.data.iter_mut().zip(&o.data).for_each(|(a, b)| *a += s * b);
        Ok(())
    }

    /// Largest absolute entry.
    pub fn sup_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Euclidean norm of the raw data.
    pub fn data_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn norm(&self) -> f64 {
        (dot(&self.data, &self.data) * self.lattice.weight(self.degree)).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Coboundary.
    pub fn d(&self) -> Result<Cochain> {
        check_degree(self.degree)?;
        if self.degree == 3 {
            return Err(Error::Degree("d is undefined on 3-cochains".into()));
        }
        let lat = &self.lattice;
        let vd = self.vdim();
        let mut out = Cochain::zeros(*lat, self.degree + 1, self.vtype);
        for s in 0..lat.sites() {
            match self.degree {
                0 => {
                    for mu in 0..3 {
                        let y = lat.fwd(s, mu);
                        for c in 0..vd {
                            out.data[(3 * s + mu) * vd + c] = self.data[y * vd + c] - self.data[s * vd + c];
                        }
                    }
                }
                1 => {
                    for rho in 0..3 {
                        let (mu, nu) = face_dirs(rho);
                        let xm = lat.fwd(s, mu);
                        let xn = lat.fwd(s, nu);
                        for c in 0..vd {
                            let a = |site: usize, dir: usize| self.data[(3 * site + dir) * vd + c];
                            out.data[(3 * s + rho) * vd + c] = a(s, mu) + a(xm, nu) - a(xn, mu) - a(s, nu);
                        }
                    }
                }
                _ => {
                    for c in 0..vd {
                        let mut acc = 0.0;
                        for rho in 0..3 {
                            let y = lat.fwd(s, rho);
                            acc += self.data[(3 * y + rho) * vd + c] - self.data[(3 * s + rho) * vd + c];
                        }
                        out.data[s * vd + c] = acc;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Transpose of the coboundary into degree `k − 1`, without scaling.
    pub fn d_transpose(&self) -> Result<Cochain> {
        check_degree(self.degree)?;
        if self.degree == 0 {
            return Err(Error::Degree("codifferential is undefined on 0-cochains".into()));
        }
        let lat = &self.lattice;
        let vd = self.vdim();
        let mut out = Cochain::zeros(*lat, self.degree - 1, self.vtype);
        for s in 0..lat.sites() {
            match self.degree {
                1 => {
                    for mu in 0..3 {
                        let y = lat.fwd(s, mu);
                        for c in 0..vd {
                            let v = self.data[(3 * s + mu) * vd + c];
                            out.data[y * vd + c] += v;
                            out.data[s * vd + c] -= v;
                        }
                    }
                }
                2 => {
                    for rho in 0..3 {
                        let (mu, nu) = face_dirs(rho);
                        let xm = lat.fwd(s, mu);
                        let xn = lat.fwd(s, nu);
                        for c in 0..vd {
                            let v = self.data[(3 * s + rho) * vd + c];
                            out.data[(3 * s + mu) * vd + c] += v;
                            out.data[(3 * xm + nu) * vd + c] += v;
                            out.data[(3 * xn + mu) * vd + c] -= v;
                            out.data[(3 * s + nu) * vd + c] -= v;
                        }
                    }
                }
                _ => {
                    for rho in 0..3 {
                        let y = lat.fwd(s, rho);
                        for c in 0..vd {
                            let v = self.data[s * vd + c];
                            out.data[(3 * y + rho) * vd + c] += v;
                            out.data[(3 * s + rho) * vd + c] -= v;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Codifferential `h^{-2} dᵀ`, the exact adjoint of [`Cochain::d`].
    pub fn codiff(&self) -> Result<Cochain> {
        let h2 = self.lattice.h * self.lattice.h;
        Ok(self.d_transpose()?.scale(1.0 / h2))
    }

    /// Diagonal Hodge star.
    pub fn hodge(&self) -> Cochain {
        let k = self.degree;
        let mut r = self.scale(self.lattice.weight(k));
        r.degree = 3 - k;
        r
    }

    /// Inverse Hodge star; equal to the star itself.
    pub fn hodge_inv(&self) -> Cochain {
        self.hodge()
    }

    /// Hodge Laplacian `d codiff + codiff d`.
    pub fn laplacian(&self) -> Result<Cochain> {
        check_degree(self.degree)?;
        let mut out = Cochain::zeros(self.lattice, self.degree, self.vtype);
        if self.degree > 0 {
            out = out.add(&self.codiff()?.d()?)?;
        }
        if self.degree < 3 {
            out = out.add(&self.d()?.codiff()?)?;
        }
        Ok(out)
    }

    /// Average value per component and direction; spans the harmonic space.
    pub fn harmonic_part(&self) -> Cochain {
        let dirs = if self.degree == 1 || self.degree == 2 { 3 } else { 1 };
        let vd = self.vdim();
        let n = self.lattice.sites() as f64;
        let mut mean = vec![0.0; dirs * vd];
        for (i, x) in self.data.iter().enumerate() {
            mean[i % (dirs * vd)] += x;
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut r = self.clone();
        for (i, x) in r.data.iter_mut().enumerate() {
            *x = mean[i % (dirs * vd)];
        }
        r
    }

    /// Serialize as a flat little-endian binary snapshot.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut b = Vec::with_capacity(48 + 8 * self.data.len());
        b.extend_from_slice(b"COCH");
        b.push(self.degree as u8);
        b.push(self.vtype.code());
        b.extend_from_slice(&[0, 0]);
        for n in self.lattice.dims {
            b.extend_from_slice(&(n as u64).to_le_bytes());
        }
        b.extend_from_slice(&self.lattice.h.to_le_bytes());
        b.extend_from_slice(&(self.data.len() as u64).to_le_bytes());
        for x in &self.data {
            b.extend_from_slice(&x.to_le_bytes());
        }
        b
    }

    pub fn from_bytes(b: &[u8]) -> Result<Cochain> {
        let bad = || Error::Validation("malformed cochain snapshot".into());
        if b.len() < 48 || &b[..4] != b"COCH" {
            return Err(bad());
        }
        let u64_at = |i: usize| u64::from_le_bytes(b[i..i + 8].try_into().unwrap());
        let degree = b[4] as usize;
        let vtype = ValueType::from_code(b[5])?;
        let dims = [u64_at(8) as usize, u64_at(16) as usize, u64_at(24) as usize];
        let h = f64::from_le_bytes(b[32..40].try_into().unwrap());
        let len = u64_at(40) as usize;
        if b.len() != 48 + 8 * len {
            return Err(bad());
        }
        let data = b[48..].chunks(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
        Cochain::from_data(Lattice::new(dims, h)?, degree, vtype, data)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `L²` pairing `Σ a·b h^{3−2k}`.
pub fn inner(a: &Cochain, b: &Cochain) -> Result<f64> {
    a.same_shape(b)?;
    Ok(dot(&a.data, &b.data) * a.lattice.weight(a.degree))
}

/// Result of a Hodge decomposition of a 1-cochain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HodgeSplit {
    /// Potential with `exact = d f`.
    pub f: Cochain,
    /// Potential with `coexact = codiff beta`.
    pub beta: Cochain,
    pub exact: Cochain,
    pub coexact: Cochain,
    pub harmonic: Cochain,
    /// `‖a − exact − coexact − harmonic‖`.
    pub residual: f64,
}

impl HodgeSplit {
    /// Largest absolute pairwise `L²` overlap of the three parts.
    pub fn cross_orthogonality(&self) -> f64 {
        let pairs = [
            inner(&self.exact, &self.coexact),
            inner(&self.exact, &self.harmonic),
            inner(&self.coexact, &self.harmonic),
        ];
        pairs.iter().map(|r| r.as_ref().map(|x| x.abs()).unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }
}

/// Default relative tolerance of the Laplacian solves.
pub const SOLVER_TOL: f64 = 1e-12;
/// Default iteration cap of the Laplacian solves.
pub const SOLVER_MAX_ITER: usize = 5000;

/// Solve `Δx = rhs` on the orthogonal complement of the harmonic space.
///
/// The harmonic component of `rhs` must be below `tol · max(1, ‖rhs‖)`;
/// it is then projected away. Convergence is declared when the residual
/// drops below the same bound.
pub fn solve_poisson(rhs: &Cochain, tol: f64, max_iter: usize) -> Result<Cochain> {
    let harm = rhs.harmonic_part();
    let scale = rhs.data_norm().max(1.0);
    if harm.data_norm() > tol * scale {
        return Err(Error::Precondition(format!(
            "right-hand side has a harmonic component of size {:e}",
            harm.data_norm()
        )));
    }
    solve_poisson_projected(rhs, tol, max_iter)
}

/// As [`solve_poisson`], but silently removes any harmonic component.
pub fn solve_poisson_projected(rhs: &Cochain, tol: f64, max_iter: usize) -> Result<Cochain> {
    check_degree(rhs.degree)?;
    let b = rhs.sub(&rhs.harmonic_part())?;
    let bound = tol * rhs.data_norm().max(1.0);
    let mut x = Cochain::zeros(rhs.lattice, rhs.degree, rhs.vtype);
    let mut r = b.clone();
    let mut rr = dot(&r.data, &r.data);
    if rr.sqrt() <= bound {
        return Ok(x);
    }
    let mut p = r.clone();
    for _ in 0..max_iter {
        let ap = p.laplacian()?;
        let pap = dot(&p.data, &ap.data);
        if !(pap > 0.0) {
            return Err(Error::Numerical("conjugate gradients lost positivity".into()));
        }
        let alpha = rr / pap;
        x.axpy(alpha, &p)?;
        r.axpy(-alpha, &ap)?;
        let rr_new = dot(&r.data, &r.data);
        if rr_new.sqrt() <= bound {
            let h = x.harmonic_part();
            return x.sub(&h);
        }
        let beta = rr_new / rr;
        rr = rr_new;
        p.data.iter_mut().zip(&r.data).for_each(|(pi, ri)| *pi = ri + beta * *pi);
    }
    Err(Error::Numerical(format!(
        "conjugate gradients did not reach {bound:e} in {max_iter} iterations (residual {:e})",
        rr.sqrt()
    )))
}

/// Split a 1-cochain into exact, coexact and harmonic parts.
pub fn hodge_decompose(a: &Cochain, tol: f64, max_iter: usize) -> Result<HodgeSplit> {
    if a.degree != 1 {
        return Err(Error::Degree(format!("hodge_decompose expects a 1-cochain, got degree {}", a.degree)));
    }
    let f = solve_poisson_projected(&a.codiff()?, tol, max_iter)?;
    let beta = solve_poisson_projected(&a.d()?, tol, max_iter)?;
    let exact = f.d()?;
    let coexact = beta.codiff()?;
    let harmonic = a.harmonic_part();
    let rest = a.sub(&exact)?.sub(&coexact)?.sub(&harmonic)?;
    Ok(HodgeSplit { f, beta, exact, coexact, harmonic, residual: rest.norm() })
}

/// Dimension of the kernel of the Laplacian on `degree`-cochains, found by
/// power iteration on `c − Δ` with Gram–Schmidt deflation.
pub fn harmonic_dimension(lattice: Lattice, degree: usize, vtype: ValueType, seed: u64) -> Result<usize> {
    use rand::{RngExt, SeedableRng};
    check_degree(degree)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let h2 = lattice.h * lattice.h;
    // Gershgorin bound on the spectrum of Δ
    let shift = 13.0 / h2;
    let threshold = 1e-8 / h2;
    let n = lattice.cell_count(degree) * vtype.dim();
    let mut found: Vec<Cochain> = Vec::new();
    while found.len() < n {
        let mut v = Cochain::zeros(lattice, degree, vtype);
        v.data.iter_mut().for_each(|x| *x = rng.random_range(-1.0..1.0));
        let orth = |v: &mut Cochain, basis: &[Cochain]| {
            for b in basis {
                let c = dot(&v.data, &b.data);
                v.data.iter_mut().zip(&b.data).for_each(|(x, y)| *x -= c * y);
            }
            let nv = v.data_norm();
            v.data.iter_mut().for_each(|x| *x /= nv);
        };
        orth(&mut v, &found);
        for _ in 0..600 {
            let lv = v.laplacian()?;
            v.data.iter_mut().zip(&lv.data).for_each(|(x, l)| *x = shift * *x - l);
            orth(&mut v, &found);
        }
        let rq = dot(&v.data, &v.laplacian()?.data);
        if rq > threshold {
            break;
        }
        found.push(v);
    }
    Ok(found.len())
}

/// Cup product with cell averaging, combining values through `hook`.
///
/// `hook(x, y, out)` must be bilinear and overwrite `out`, which has the
/// dimension of `out_type`. Supported degree pairs are those with
/// `k + l ≤ 3`; continuum consistency is first order on smooth data.
pub fn wedge_pair<F>(a: &Cochain, b: &Cochain, out_type: ValueType, hook: F) -> Result<Cochain>
where
    F: Fn(&[f64], &[f64], &mut [f64]),
{
    let (k, l) = (a.degree, b.degree);
    if k + l > 3 {
        return Err(Error::Validation(format!("wedge of degrees {k} and {l} exceeds 3")));
    }
    if a.lattice != b.lattice {
        return Err(Error::Validation("wedge of cochains on different lattices".into()));
    }
    let lat = a.lattice;
    let od = out_type.dim();
    let (ad, bd) = (a.vdim(), b.vdim());
    let mut out = Cochain::zeros(lat, k + l, out_type);
    let mut tmp = vec![0.0; od];
    let mut abar = vec![0.0; ad];
    let mut bbar = vec![0.0; bd];

    let avg = |c: &Cochain, cells: &[usize], buf: &mut [f64]| {
        let vd = c.vdim();
        buf.iter_mut().for_each(|x| *x = 0.0);
        for &cell in cells {
            for i in 0..vd {
                buf[i] += c.data[cell * vd + i];
            }
        }
        let w = 1.0 / cells.len() as f64;
        buf.iter_mut().for_each(|x| *x *= w);
    };
    // edges in direction mu bounding face (s, rho) or cube s
    let face_edges = |s: usize, rho: usize, mu: usize| -> Vec<usize> {
        let other = if face_dirs(rho).0 == mu { face_dirs(rho).1 } else { face_dirs(rho).0 };
        vec![3 * s + mu, 3 * lat.fwd(s, other) + mu]
    };
    let cube_edges = |s: usize, mu: usize| -> Vec<usize> {
        let (nu, rho) = face_dirs(mu);
        let a1 = lat.fwd(s, nu);
        vec![3 * s + mu, 3 * a1 + mu, 3 * lat.fwd(s, rho) + mu, 3 * lat.fwd(a1, rho) + mu]
    };

    for s in 0..lat.sites() {
        match (k, l) {
            (0, _) | (_, 0) => {
                let (deg, dirs) = if k + l == 1 || k + l == 2 { (k + l, 3) } else { (k + l, 1) };
                for dir in 0..dirs {
                    let cell = if dirs == 3 { 3 * s + dir } else { s };
                    let verts = lat.cell_vertices(deg, s, dir);
                    if k == 0 {
                        avg(a, &verts, &mut abar);
                        hook(&abar, b.value(cell), &mut tmp);
                    } else {
                        avg(b, &verts, &mut bbar);
                        hook(a.value(cell), &bbar, &mut tmp);
                    }
                    out.value_mut(cell).copy_from_slice(&tmp);
                }
            }
            (1, 1) => {
                for rho in 0..3 {
                    let (mu, nu) = face_dirs(rho);
                    let mut acc = vec![0.0; od];
                    avg(a, &face_edges(s, rho, mu), &mut abar);
                    avg(b, &face_edges(s, rho, nu), &mut bbar);
                    hook(&abar, &bbar, &mut tmp);
                    acc.iter_mut().zip(&tmp).for_each(|(x, t)| *x += t);
                    avg(a, &face_edges(s, rho, nu), &mut abar);
                    avg(b, &face_edges(s, rho, mu), &mut bbar);
                    hook(&abar, &bbar, &mut tmp);
                    acc.iter_mut().zip(&tmp).for_each(|(x, t)| *x -= t);
                    out.value_mut(3 * s + rho).copy_from_slice(&acc);
                }
            }
            (1, 2) | (2, 1) => {
                let mut acc = vec![0.0; od];
                for mu in 0..3 {
                    let edges = cube_edges(s, mu);
                    let faces = [3 * s + mu, 3 * lat.fwd(s, mu) + mu];
                    if k == 1 {
                        avg(a, &edges, &mut abar);
                        avg(b, &faces, &mut bbar);
                    } else {
                        avg(a, &faces, &mut abar);
                        avg(b, &edges, &mut bbar);
                    }
                    hook(&abar, &bbar, &mut tmp);
                    acc.iter_mut().zip(&tmp).for_each(|(x, t)| *x += t);
                }
                out.value_mut(s).copy_from_slice(&acc);
            }
            _ => unreachable!(),
        }
    }
    Ok(out)
}

/// Real product hook.
pub fn real_product(x: &[f64], y: &[f64], out: &mut [f64]) {
    out[0] = x[0] * y[0];
}
