//! Degree-inverting involutions on upper triangular matrices with an
//! elementary grading.
//!
//! A grading is a sequence `eta = (g_1, ..., g_(n-1))` with
//! `deg e_(i,i+1) = g_i`.  The grading admits a degree-inverting
//! involution iff `eta_i = eta_(n-i)^{-1}` for every `i`; in that case
//! every such involution is equivalent to the secondary-diagonal flip
//! `tau` or (even `n`) to the symplectic `s(x) = D tau(x) D`.  The
//! classification is constructive: `rho = Int(u) . rho_0` with
//! `rho_0(u) = u`, and `u` factors as `v rho_0(v)` by a block recipe.

use crate::cyclotomic::CycRational;
use crate::groups::{GroupElement, GroupSpec};
use crate::linalg::Mat;
use crate::{Error, Result};

/// Elementary grading on `UT_n` given by the degrees of the first
/// superdiagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtGrading {
    group: GroupSpec,
    n: usize,
    eta: Vec<GroupElement>,
}

impl UtGrading {
    pub fn new(group: GroupSpec, eta: Vec<GroupElement>) -> Result<Self> {
        for g in &eta {
            if !group.contains(g) {
                return Err(Error::domain("eta entry outside the group"));
            }
        }
        Ok(UtGrading {
            n: eta.len() + 1,
            group,
            eta,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eta(&self) -> &[GroupElement] {
        &self.eta
    }

    /// `deg e_ij = eta_i ... eta_(j-1)` (0-based, `i <= j`).
    pub fn unit_degree(&self, i: usize, j: usize) -> Result<GroupElement> {
        if i > j || j >= self.n {
            return Err(Error::domain("unit index out of range"));
        }
        let mut acc = self.group.identity();
        for k in i..j {
            acc = self.group.op(&acc, &self.eta[k])?;
        }
        Ok(acc)
    }

    /// The grading admits a degree-inverting involution iff
    /// `eta_i = eta_(n-i)^{-1}` for all `i` (1-based indices).
    pub fn admits_degree_inverting(&self) -> bool {
        let len = self.eta.len();
        (0..len).all(|i| {
            let other = self.group.inv(&self.eta[len - 1 - i]).unwrap();
            self.eta[i] == other
        })
    }
}

/// Upper triangular matrix with exact scalar entries, stored packed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtMatrix {
    n: usize,
    /// Row-major upper triangle: entry `(i, j)` with `i <= j`.
    entries: Vec<CycRational>,
}

fn tri_len(n: usize) -> usize {
    n * (n + 1) / 2
}

impl UtMatrix {
    pub fn zero(n: usize) -> Self {
        UtMatrix {
            n,
            entries: vec![CycRational::zero(); tri_len(n)],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = CycRational::one();
        }
        m
    }

    pub fn from_upper_entries(n: usize, entries: Vec<CycRational>) -> Result<Self> {
        if entries.len() != tri_len(n) {
            return Err(Error::domain(format!(
                "expected {} upper-triangle entries, got {}",
                tri_len(n),
                entries.len()
            )));
        }
        Ok(UtMatrix { n, entries })
    }

    pub fn unit(n: usize, i: usize, j: usize) -> Result<Self> {
        let mut m = Self::zero(n);
        *m.at_mut(i, j) = CycRational::one();
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        assert!(i <= j && j < self.n, "lower-triangle access");
        // Row i starts after rows 0..i of lengths n, n-1, ...
        i * self.n - i * (i + 1) / 2 + i + (j - i)
    }

    pub fn at(&self, i: usize, j: usize) -> &CycRational {
        &self.entries[self.idx(i, j)]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut CycRational {
        let idx = self.idx(i, j);
        &mut self.entries[idx]
    }

    /// Entry with zero below the diagonal.
    pub fn get(&self, i: usize, j: usize) -> CycRational {
        if i <= j {
            self.at(i, j).clone()
        } else {
            CycRational::zero()
        }
    }

    pub fn upper_entries(&self) -> &[CycRational] {
        &self.entries
    }

    pub fn add(&self, other: &UtMatrix) -> Result<UtMatrix> {
        if self.n != other.n {
            return Err(Error::domain("size mismatch"));
        }
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(other.entries.iter()) {
            *x = x.add(y)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> UtMatrix {
        UtMatrix {
            n: self.n,
            entries: self.entries.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &CycRational) -> Result<UtMatrix> {
        let mut out = self.clone();
        for x in out.entries.iter_mut() {
            *x = x.mul(c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &UtMatrix) -> Result<UtMatrix> {
        if self.n != other.n {
            return Err(Error::domain("size mismatch"));
        }
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in i..self.n {
                let mut acc = CycRational::zero();
                for k in i..=j {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j))?)?;
                }
                *out.at_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    pub fn is_invertible(&self) -> bool {
        (0..self.n).all(|i| !self.at(i, i).is_zero())
    }

    /// Exact inverse by back substitution.
    pub fn invert(&self) -> Result<UtMatrix> {
        if !self.is_invertible() {
            return Err(Error::domain("matrix has a zero diagonal entry"));
        }
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            *out.at_mut(i, i) = self.at(i, i).inv()?;
        }
        for d in 1..self.n {
            for i in 0..self.n - d {
                let j = i + d;
                // sum_{k=i..j} self[i][k] out[k][j] = 0.
                let mut acc = CycRational::zero();
                for k in (i + 1)..=j {
                    acc = acc.add(&self.at(i, k).mul(out.at(k, j))?)?;
                }
                let v = self.at(i, i).inv()?.mul(&acc.neg())?;
                *out.at_mut(i, j) = v;
            }
        }
        Ok(out)
    }

    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                if !self.at(i, j).is_zero() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Dense view (for tests and rendering).
    pub fn to_mat(&self) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in i..self.n {
                *m.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalKind {
    /// Flip along the secondary diagonal.
    Tau,
    /// `s(x) = D tau(x) D`, `D = diag(1, .., 1, -1, .., -1)`; even `n`.
    S,
}

/// Apply `tau` or `s` to an upper triangular matrix.
pub fn apply_canonical(kind: CanonicalKind, x: &UtMatrix) -> Result<UtMatrix> {
    let n = x.n();
    if kind == CanonicalKind::S && !n.is_multiple_of(2) {
        return Err(Error::domain(
            "the symplectic involution needs even matrix size",
        ));
    }
    let mut out = UtMatrix::zero(n);
    for i in 0..n {
        for j in i..n {
            // tau(e_ij) = e_(n-1-j, n-1-i) (0-based).
            let (ti, tj) = (n - 1 - j, n - 1 - i);
            let mut v = x.at(i, j).clone();
            if kind == CanonicalKind::S {
                let m = n / 2;
                let sign_i = if ti >= m { -1i64 } else { 1 };
                let sign_j = if tj >= m { -1i64 } else { 1 };
                if sign_i * sign_j < 0 {
                    v = v.neg();
                }
            }
            *out.at_mut(ti, tj) = v;
        }
    }
    Ok(out)
}

/// Is every nonzero entry of `u` at a matrix unit of degree one?
pub fn is_homogeneous_degree_one(u: &UtMatrix, grading: &UtGrading) -> Result<bool> {
    if u.n() != grading.n() {
        return Err(Error::domain("matrix size does not match the grading"));
    }
    let id = grading.group().identity();
    for (i, j) in u.support() {
        if grading.unit_degree(i, j)? != id {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Scale an odd-size fixed point so its middle diagonal entry is one.
/// Returns the normalized matrix and the scalar used.
pub fn normalize_u(u: &UtMatrix) -> Result<(UtMatrix, CycRational)> {
    let n = u.n();
    if n.is_multiple_of(2) {
        return Ok((u.clone(), CycRational::one()));
    }
    let mid = n / 2;
    let c = u.at(mid, mid).clone();
    if c.is_zero() {
        return Err(Error::domain("middle diagonal entry is zero"));
    }
    let inv = c.inv()?;
    Ok((u.scale(&inv)?, inv))
}

/// Factor a fixed point `u = v rho_0(v)` by the block recipe.
///
/// Preconditions: `rho_0(u) = u`, `u` invertible; for odd `n` the middle
/// diagonal entry must be `1`.  The returned `v` has support inside the
/// support of `u`, so homogeneity of degree one is inherited.
pub fn factor_u(u: &UtMatrix, base: CanonicalKind) -> Result<UtMatrix> {
    let n = u.n();
    if !u.is_invertible() {
        return Err(Error::domain("u must be invertible"));
    }
    if apply_canonical(base, u)? != *u {
        return Err(Error::domain("u is not fixed by the base involution"));
    }
    let half = CycRational::from_rational(crate::cyclotomic::rat(1, 2));
    let mut v = UtMatrix::zero(n);
    if n.is_multiple_of(2) {
        let m = n / 2;
        // u = [[X, Z], [0, Y]] -> v = [[Id, Z/2], [0, Y]].
        for i in 0..m {
            *v.at_mut(i, i) = CycRational::one();
            for j in m..n {
                *v.at_mut(i, j) = u.at(i, j).mul(&half)?;
            }
        }
        for i in m..n {
            for j in i..n {
                *v.at_mut(i, j) = u.at(i, j).clone();
            }
        }
    } else {
        let m = n / 2;
        if !u.at(m, m).is_one() {
            return Err(Error::domain(
                "odd size needs the middle entry normalized to 1",
            ));
        }
        // u = [[X, z, Z], [0, 1, w], [0, 0, Y]] ->
        // v = [[Id, 0, Z/2], [0, 1, w], [0, 0, Y]].
        for i in 0..m {
            *v.at_mut(i, i) = CycRational::one();
            for j in (m + 1)..n {
                *v.at_mut(i, j) = u.at(i, j).mul(&half)?;
            }
        }
        *v.at_mut(m, m) = CycRational::one();
        for j in (m + 1)..n {
            *v.at_mut(m, j) = u.at(m, j).clone();
        }
        for i in (m + 1)..n {
            for j in i..n {
                *v.at_mut(i, j) = u.at(i, j).clone();
            }
        }
    }
    debug_assert_eq!(v.mul(&apply_canonical(base, &v)?)?, *u);
    Ok(v)
}

/// A degree-inverting involution on `UT_n` in the normal form
/// `rho = Int(u) . base` with `base(u) = u`.
#[derive(Debug, Clone)]
pub struct UtInvolution {
    pub grading: UtGrading,
    pub u: UtMatrix,
    pub base: CanonicalKind,
}

impl UtInvolution {
    pub fn apply(&self, x: &UtMatrix) -> Result<UtMatrix> {
        let uinv = self.u.invert()?;
        self.u.mul(&apply_canonical(self.base, x)?)?.mul(&uinv)
    }
}

/// Input form for classification: either the pair `(u, base)` or the full
/// action on matrix units (row-major `e_ij`, `i <= j`).
pub enum InvolutionInput {
    Pair(UtMatrix, CanonicalKind),
    Action(Vec<UtMatrix>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UtInvolutionType {
    Orthogonal,
    Symplectic,
}

#[derive(Debug, Clone)]
pub struct UtClassification {
    pub kind: UtInvolutionType,
    /// Conjugator: `Int(v)^{-1} . rho . Int(v)` is the canonical base.
    pub witness_v: UtMatrix,
}

/// Solve `rho(e_ij) u = u tau(e_ij)` for `u` from an action table.
fn extract_u(action: &[UtMatrix], n: usize) -> Result<UtMatrix> {
    let vars = tri_len(n);
    if action.len() != vars {
        return Err(Error::domain("action table must cover every matrix unit"));
    }
    let mut rows: Vec<Vec<CycRational>> = Vec::new();
    let positions: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    for (unit_idx, &(i, j)) in positions.iter().enumerate() {
        let img = &action[unit_idx];
        if img.n() != n {
            return Err(Error::domain("action image size mismatch"));
        }
        let tu = apply_canonical(CanonicalKind::Tau, &UtMatrix::unit(n, i, j)?)?;
        // rho(e_ij) u - u tau(e_ij) = 0: coefficient of u_(p,q).
        for a in 0..n {
            for b in a..n {
                let mut row = vec![CycRational::zero(); vars];
                let mut nonzero = false;
                for (var_idx, &(p, q)) in positions.iter().enumerate() {
                    // (rho(e_ij) u)_(a,b) picks img[a][p] when q = b.
                    let mut c = CycRational::zero();
                    if q == b && a <= p {
                        c = c.add(&img.get(a, p))?;
                    }
                    // (u tau(e_ij))_(a,b) picks u[a][p] tau[q][b]... with
                    // tau a unit matrix: tau[q][b'] nonzero at one spot.
                    if p == a && q <= b {
                        c = c.sub(&tu.get(q, b))?;
                    }
                    if !c.is_zero() {
                        nonzero = true;
                    }
                    row[var_idx] = c;
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let basis = Mat::from_rows(rows).nullspace()?;
    if basis.len() != 1 {
        return Err(Error::domain(format!(
            "the action is not of the form Int(u) . tau (solution space dimension {})",
            basis.len()
        )));
    }
    let mut u = UtMatrix::zero(n);
    for (var_idx, &(p, q)) in positions.iter().enumerate() {
        *u.at_mut(p, q) = basis[0][var_idx].clone();
    }
    Ok(u)
}

/// Classify a degree-inverting involution as orthogonal (`tau`) or
/// symplectic (`s`), producing the conjugating witness `v`.
pub fn classify_involution(
    input: InvolutionInput,
    grading: &UtGrading,
) -> Result<UtClassification> {
    let n = grading.n();
    if !grading.admits_degree_inverting() {
        return Err(Error::domain(
            "grading does not admit a degree-inverting involution",
        ));
    }
    // Normalize the input to u with rho = Int(u) . tau.
    let mut u = match input {
        InvolutionInput::Action(action) => extract_u(&action, n)?,
        InvolutionInput::Pair(u, CanonicalKind::Tau) => u,
        InvolutionInput::Pair(u, CanonicalKind::S) => {
            // Int(u) . s = Int(uD) . tau.
            let mut ud = u;
            let m = n / 2;
            if !n.is_multiple_of(2) {
                return Err(Error::domain("the base s needs even size"));
            }
            for i in 0..n {
                for j in i.max(m)..n {
                    let v = ud.at(i, j).neg();
                    *ud.at_mut(i, j) = v;
                }
            }
            ud
        }
    };
    if !u.is_invertible() {
        return Err(Error::domain("conjugator u is not invertible"));
    }
    if !is_homogeneous_degree_one(&u, grading)? {
        return Err(Error::domain("u is not homogeneous of degree one"));
    }
    // rho^2 = 1 forces tau(u) = +/- u.
    let tu = apply_canonical(CanonicalKind::Tau, &u)?;
    let base = if tu == u {
        CanonicalKind::Tau
    } else if tu == u.neg() {
        if !n.is_multiple_of(2) {
            return Err(Error::domain(
                "impossible input: odd size with tau(u) = -u has a zero middle entry",
            ));
        }
        // Replace u by uD so the base becomes s with s(u) = u.
        let m = n / 2;
        for i in 0..n {
            for j in i.max(m)..n {
                let v = u.at(i, j).neg();
                *u.at_mut(i, j) = v;
            }
        }
        CanonicalKind::S
    } else {
        return Err(Error::domain(
            "tau(u) is not +/- u: the map is not an involution",
        ));
    };
    if n % 2 == 1 {
        let (nu, _) = normalize_u(&u)?;
        u = nu;
    }
    let v = factor_u(&u, base)?;
    // Verify the conjugation identity rho(Int(v) x) = Int(v) base(x) on
    // every unit before returning; after the adjustments above the input
    // involution equals Int(u) . base with base(u) = u.
    let rho = UtInvolution {
        grading: grading.clone(),
        u: u.clone(),
        base,
    };
    let vinv = v.invert()?;
    for i in 0..n {
        for j in i..n {
            let x = UtMatrix::unit(n, i, j)?;
            let lhs = rho.apply(&v.mul(&x)?.mul(&vinv)?)?;
            let rhs = v.mul(&apply_canonical(base, &x)?)?.mul(&vinv)?;
            if lhs != rhs {
                return Err(Error::domain(
                    "internal assertion: witness fails the conjugation identity",
                ));
            }
        }
    }
    Ok(UtClassification {
        kind: match base {
            CanonicalKind::Tau => UtInvolutionType::Orthogonal,
            CanonicalKind::S => UtInvolutionType::Symplectic,
        },
        witness_v: v,
    })
}

/// Convert a standard grading sequence `gamma = (h_1, ..., h_n)` (where
/// `deg e_ij = h_i h_j^{-1}`) to the superdiagonal form
/// `eta_i = h_i h_(i+1)^{-1}`.
pub fn standard_to_elementary(group: &GroupSpec, gamma: &[GroupElement]) -> Result<UtGrading> {
    if gamma.is_empty() {
        return Err(Error::domain("standard sequence must be nonempty"));
    }
    let mut eta = Vec::with_capacity(gamma.len() - 1);
    for w in gamma.windows(2) {
        eta.push(group.op(&w[0], &group.inv(&w[1])?)?);
    }
    UtGrading::new(group.clone(), eta)
}

/// The abelian-case chain condition
/// `h_1 h_n^{-1} = h_2 h_(n-1)^{-1} = ... = h_n h_1^{-1}`.
pub fn standard_chain_condition(group: &GroupSpec, gamma: &[GroupElement]) -> Result<bool> {
    group.factors()?;
    if gamma.is_empty() {
        return Err(Error::domain("standard sequence must be nonempty"));
    }
    let n = gamma.len();
    let first = group.op(&gamma[0], &group.inv(&gamma[n - 1])?)?;
    for i in 1..n {
        let v = group.op(&gamma[i], &group.inv(&gamma[n - 1 - i])?)?;
        if v != first {
            return Ok(false);
        }
    }
    Ok(true)
}
