//! The twisted group algebra `F^sigma T` as a graded algebra, and its
//! degree-inverting involutions.
//!
//! `F^sigma T` has basis `{X_u | u in T}` and product
//! `X_u X_v = sigma(u, v) X_(uv)`.  A degree-inverting involution is
//! determined by an exponent map `mu` through
//! `rho(X_u) = zeta^mu(u) X_(u^{-1})`; it exists iff the class of `sigma`
//! squares to the trivial class, and the distinct involutions up to
//! equivalence are counted by the square classes of the character group.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cocycles::{coboundary, Cocycle, ExponentMap};
use crate::cyclotomic::CycRational;
use crate::groups::{is_elementary_2_group, squares_index, Character, GroupSpec, GroupTable};
use crate::linalg::Mat;
use crate::zn::lcm;
use crate::{Error, Result};

#[derive(Debug)]
pub struct TwistedGroupAlgebra {
    group: GroupSpec,
    n: u64,
    sigma: Cocycle,
    table: GroupTable,
}

/// Shared handle; elements and involutions hold one.
pub type Algebra = Arc<TwistedGroupAlgebra>;

impl PartialEq for TwistedGroupAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.n == other.n && self.sigma == other.sigma
    }
}

impl TwistedGroupAlgebra {
    pub fn new(group: GroupSpec, sigma: Cocycle) -> Result<Algebra> {
        if sigma.group() != &group {
            return Err(Error::domain("cocycle group does not match"));
        }
        if !sigma.is_cocycle() {
            return Err(Error::domain(
                "table fails the cocycle identity, the algebra would not be associative",
            ));
        }
        let table = group.op_table();
        Ok(Arc::new(TwistedGroupAlgebra {
            n: sigma.modulus(),
            group,
            sigma,
            table,
        }))
    }

    pub fn group_algebra(group: GroupSpec, n: u64) -> Result<Algebra> {
        let sigma = Cocycle::trivial(group.clone(), n);
        TwistedGroupAlgebra::new(group, sigma)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn sigma(&self) -> &Cocycle {
        &self.sigma
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn op_table(&self) -> &GroupTable {
        &self.table
    }

    /// `sigma(u, v)` as an exact scalar.
    pub fn sigma_value(&self, u: usize, v: usize) -> CycRational {
        CycRational::root_of_unity(self.n, self.sigma.exponent_at(u, v) as i64).unwrap()
    }

    /// Modulus used for involution exponent maps: characters of `T` take
    /// values in the exponent-of-`T` roots, so `lcm(N, exp T)` hosts both.
    pub fn involution_modulus(&self) -> u64 {
        lcm(self.n, self.group.exponent())
    }
}

/// Element of `F^sigma T` with exact coefficients, zero entries pruned.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    algebra: Algebra,
    coeffs: BTreeMap<usize, CycRational>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.coeffs == other.coeffs
    }
}

impl AlgebraElement {
    pub fn zero(algebra: &Algebra) -> Self {
        AlgebraElement {
            algebra: algebra.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(algebra: &Algebra, index: usize) -> Result<Self> {
        if index >= algebra.dim() {
            return Err(Error::domain("basis index out of range"));
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, CycRational::one());
        Ok(AlgebraElement {
            algebra: algebra.clone(),
            coeffs,
        })
    }

    pub fn one(algebra: &Algebra) -> Self {
        Self::basis(algebra, algebra.table.id).unwrap()
    }

    pub fn scaled_basis(algebra: &Algebra, index: usize, c: CycRational) -> Result<Self> {
        let out = Self::basis(algebra, index)?;
        Ok(out.scale(&c))
    }

    pub fn from_coeffs(algebra: &Algebra, coeffs: Vec<(usize, CycRational)>) -> Result<Self> {
        let mut out = Self::zero(algebra);
        for (idx, c) in coeffs {
            let term = Self::scaled_basis(algebra, idx, c)?;
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, CycRational> {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> CycRational {
        self.coeffs
            .get(&index)
            .cloned()
            .unwrap_or_else(CycRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Support degree when homogeneous (at most one basis term).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        if self.coeffs.len() == 1 {
            self.coeffs.keys().next().copied()
        } else {
            None
        }
    }

    fn check_same(&self, other: &AlgebraElement) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::domain("elements of different algebras"));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        let mut coeffs = self.coeffs.clone();
        for (&idx, c) in &other.coeffs {
            let cur = coeffs.entry(idx).or_insert_with(CycRational::zero);
            *cur = cur.add(c)?;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &CycRational) -> AlgebraElement {
        if c.is_zero() {
            return Self::zero(&self.algebra);
        }
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(&i, x)| (i, x.mul(c).unwrap()))
                .collect(),
        }
    }

    /// Bilinear extension of `X_u X_v = sigma(u, v) X_(uv)`.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_same(other)?;
        let alg = &self.algebra;
        let mut coeffs: BTreeMap<usize, CycRational> = BTreeMap::new();
        for (&u, cu) in &self.coeffs {
            for (&v, cv) in &other.coeffs {
                let w = alg.table.op[u][v];
                let term = cu.mul(cv)?.mul(&alg.sigma_value(u, v))?;
                let cur = coeffs.entry(w).or_insert_with(CycRational::zero);
                *cur = cur.add(&term)?;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(AlgebraElement {
            algebra: alg.clone(),
            coeffs,
        })
    }

    /// Matrix of left multiplication on the basis `{X_u}`.
    pub fn regular_representation(&self) -> Result<Mat> {
        let alg = &self.algebra;
        let dim = alg.dim();
        let mut rep = Mat::zeros(dim, dim);
        for (&t, c) in &self.coeffs {
            for u in 0..dim {
                let tu = alg.table.op[t][u];
                *rep.at_mut(tu, u) = c.mul(&alg.sigma_value(t, u))?;
            }
        }
        Ok(rep)
    }

    /// Inverse through the left regular representation; homogeneous
    /// nonzero elements are always invertible, sums need not be.
    pub fn inv(&self) -> Result<AlgebraElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let alg = &self.algebra;
        let rep = self.regular_representation()?;
        let inv = rep
            .invert()?
            .ok_or_else(|| Error::domain("element is not invertible"))?;
        let mut coeffs = BTreeMap::new();
        for w in 0..alg.dim() {
            let c = inv.at(w, alg.table.id).clone();
            if !c.is_zero() {
                coeffs.insert(w, c);
            }
        }
        Ok(AlgebraElement {
            algebra: alg.clone(),
            coeffs,
        })
    }
}

/// Degree-inverting involution `rho(X_u) = zeta_M^mu(u) X_(u^{-1})` on a
/// twisted group algebra, with `M` the involution modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeInvertingInvolution {
    algebra: Algebra,
    mu: ExponentMap,
}

impl DegreeInvertingInvolution {
    /// Wrap an exponent map, verifying the two defining laws:
    /// anti-multiplicativity `sigma = (delta mu) sigma_bar` and
    /// `mu(u) + mu(u^{-1}) = 0` (which forces `mu(1) = 0`).
    pub fn new(algebra: &Algebra, mu: ExponentMap) -> Result<Self> {
        let m = algebra.involution_modulus();
        if mu.group() != algebra.group() {
            return Err(Error::domain("exponent map group mismatch"));
        }
        let mu = if mu.modulus() == m {
            mu
        } else if m.is_multiple_of(mu.modulus()) {
            mu.rescale(m)?
        } else {
            return Err(Error::domain(
                "exponent map modulus must divide the involution modulus",
            ));
        };
        let sig_m = algebra.sigma.rescale(m)?;
        let lhs = coboundary(&mu).combine(&sig_m.bar(), 1, 1)?;
        if lhs != sig_m {
            return Err(Error::domain(
                "mu does not satisfy sigma = (delta mu) sigma_bar",
            ));
        }
        let gt = algebra.op_table();
        for u in 0..algebra.dim() {
            if (mu.value(u) + mu.value(gt.inv[u])) % m != 0 {
                return Err(Error::domain("mu(u) + mu(u^{-1}) must vanish"));
            }
        }
        debug_assert_eq!(mu.value(gt.id), 0);
        Ok(DegreeInvertingInvolution {
            algebra: algebra.clone(),
            mu,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn mu(&self) -> &ExponentMap {
        &self.mu
    }

    /// `rho(X_u)` for a basis index.
    pub fn apply_basis(&self, u: usize) -> AlgebraElement {
        let alg = &self.algebra;
        let c = CycRational::root_of_unity(self.mu.modulus(), self.mu.value(u) as i64).unwrap();
        AlgebraElement::scaled_basis(alg, alg.table.inv[u], c).unwrap()
    }

    /// Linear extension of `rho` (first kind: scalars are fixed).
    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        if a.algebra != self.algebra {
            return Err(Error::domain("element of a different algebra"));
        }
        let mut out = AlgebraElement::zero(&self.algebra);
        for (&u, c) in &a.coeffs {
            out = out.add(&self.apply_basis(u).scale(c))?;
        }
        Ok(out)
    }

    /// `rho . psi_chi` with `psi_chi(X_u) = chi(u) X_u`; still a
    /// degree-inverting involution (uses `rho psi = psi^{-1} rho`).
    pub fn compose_with_automorphism(&self, chi: &Character) -> Result<DegreeInvertingInvolution> {
        let m = self.algebra.involution_modulus();
        // The character modulus is the lcm of the factors, always >= 1
        // and a divisor of the involution modulus by construction.
        let l = chi.modulus();
        if !m.is_multiple_of(l) {
            return Err(Error::domain(
                "character modulus must divide the involution modulus",
            ));
        }
        let scale = m / l;
        let values = (0..self.algebra.dim())
            .map(|u| {
                let elem = self.algebra.group.element(u).unwrap();
                let ce = chi.eval_exponent(&elem)? * scale;
                Ok((self.mu.value(u) + ce) % m)
            })
            .collect::<Result<Vec<_>>>()?;
        let mu = ExponentMap::new(self.algebra.group.clone(), m, values)?;
        DegreeInvertingInvolution::new(&self.algebra, mu)
    }
}

/// Graded automorphism `psi_chi(X_u) = chi(u) X_u` of a twisted group
/// algebra with abelian support.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedAutomorphism {
    algebra: Algebra,
    chi: Character,
}

impl GradedAutomorphism {
    pub fn new(algebra: &Algebra, chi: Character) -> Result<Self> {
        algebra.group().factors()?;
        Ok(GradedAutomorphism {
            algebra: algebra.clone(),
            chi,
        })
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        let l = self.chi.modulus();
        let mut out = AlgebraElement::zero(&self.algebra);
        for (&u, c) in &a.coeffs {
            let e = self
                .chi
                .eval_exponent(&self.algebra.group.element(u).unwrap())?;
            let val = CycRational::root_of_unity(l, e as i64)?;
            out = out.add(&AlgebraElement::scaled_basis(
                &self.algebra,
                u,
                c.mul(&val)?,
            )?)?;
        }
        Ok(out)
    }
}

/// Solve `sigma = (delta mu) sigma_bar` for `mu` over `Z_N` and return
/// the involution with the lexicographically smallest exponent vector.
///
/// Errors with [`Error::NoInvolution`] exactly when the class of `sigma`
/// does not square to the trivial class.
pub fn make_involution(algebra: &Algebra) -> Result<DegreeInvertingInvolution> {
    let group = algebra.group();
    let order = group.order();
    let n = algebra.modulus();
    let gt = algebra.op_table();
    // delta mu = sigma / sigma_bar  as a Z_N system in mu.
    let bar = algebra.sigma.bar();
    let mut rows = Vec::with_capacity(order * order);
    let mut b = Vec::with_capacity(order * order);
    for u in 0..order {
        for v in 0..order {
            let mut row = vec![0u64; order];
            row[u] = (row[u] + 1) % n;
            row[v] = (row[v] + 1) % n;
            let uv = gt.op[u][v];
            row[uv] = (row[uv] + n - 1) % n;
            rows.push(row);
            b.push((algebra.sigma.exponent_at(u, v) + n - bar.exponent_at(u, v)) % n);
        }
    }
    let sol = crate::zn::solve_mod(&rows, &b, order, n).ok_or(Error::NoInvolution)?;
    let mu = ExponentMap::new(group.clone(), n, sol.lex_min())?;
    DegreeInvertingInvolution::new(algebra, mu)
}

/// Canonical involution normalized to fix a chosen order-two basis
/// element: `rho(X_t) = X_t`.
///
/// Starts from [`make_involution`] and, when needed, composes with the
/// first character sending the correction exponent to zero; such a
/// character always exists for `t` of order two because the character
/// pairing is perfect.
pub fn make_involution_fixing(algebra: &Algebra, t: usize) -> Result<DegreeInvertingInvolution> {
    let rho = make_involution(algebra)?;
    let m = algebra.involution_modulus();
    if rho.mu().value(t) == 0 {
        return Ok(rho);
    }
    let group = algebra.group();
    let elem = group.element(t)?;
    let chars = Character::all(group)?;
    for chi in &chars {
        let l = chi.modulus();
        let scale = m / l;
        let ce = chi.eval_exponent(&elem)? * scale;
        if (rho.mu().value(t) + ce).is_multiple_of(m) {
            return rho.compose_with_automorphism(chi);
        }
    }
    Err(Error::domain(
        "no character corrects the involution at the requested element",
    ))
}

/// Equivalence test for two degree-inverting involutions of the same
/// algebra over an abelian group.
///
/// The connecting graded automorphism `psi_chi` with `rho_2 = rho_1 .
/// psi_chi` always exists; the involutions are equivalent iff `chi` is a
/// square in the character group.
pub fn are_equivalent(
    rho1: &DegreeInvertingInvolution,
    rho2: &DegreeInvertingInvolution,
) -> Result<bool> {
    if rho1.algebra != rho2.algebra {
        return Err(Error::domain("involutions of different algebras"));
    }
    let chi = connecting_character(rho1, rho2)?;
    Ok(chi.is_square())
}

/// The character `chi` with `rho_2 = rho_1 . psi_chi`.
pub fn connecting_character(
    rho1: &DegreeInvertingInvolution,
    rho2: &DegreeInvertingInvolution,
) -> Result<Character> {
    let algebra = &rho1.algebra;
    let group = algebra.group();
    let factors = group.factors()?.to_vec();
    let m = algebra.involution_modulus();
    let order = group.order();
    // c(u) = mu2(u) - mu1(u) must be a homomorphism into mu_M.
    let c: Vec<u64> = (0..order)
        .map(|u| (rho2.mu.value(u) + m - rho1.mu.value(u)) % m)
        .collect();
    let gt = algebra.op_table();
    for u in 0..order {
        for v in 0..order {
            if (c[u] + c[v]) % m != c[gt.op[u][v]] {
                return Err(Error::domain(
                    "difference of exponent maps is not a character",
                ));
            }
        }
    }
    // Read off the exponents on the generators e_i; c(e_i) is a multiple
    // of M/d_i because chi(e_i) has order dividing d_i.
    let mut exps = Vec::with_capacity(factors.len());
    for (i, &d) in factors.iter().enumerate() {
        let mut tuple = vec![0u64; factors.len()];
        tuple[i] = 1;
        let idx = group
            .index_of(&crate::groups::GroupElement::Abelian(tuple))
            .unwrap();
        let step = m / d;
        if !c[idx].is_multiple_of(step) {
            return Err(Error::domain("character exponent is not integral"));
        }
        exps.push((c[idx] / step) % d);
    }
    Character::new(group, exps)
}

/// Number of equivalence classes of degree-inverting involutions:
/// `|T^ / S(T^)|` when one exists, zero otherwise.
pub fn count_involution_classes(algebra: &Algebra) -> Result<u64> {
    match make_involution(algebra) {
        Ok(_) => squares_index(algebra.group()),
        Err(Error::NoInvolution) => Ok(0),
        Err(e) => Err(e),
    }
}

/// Consistency facts tying centrality, the support shape and existence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSupportReport {
    pub is_central: bool,
    pub support_elementary_2: bool,
    pub involution_exists: bool,
}

pub fn central_and_support_checks(algebra: &Algebra) -> Result<CentralSupportReport> {
    let beta = algebra.sigma.bicharacter()?;
    Ok(CentralSupportReport {
        is_central: beta.is_nondegenerate(),
        support_elementary_2: is_elementary_2_group(algebra.group()),
        involution_exists: algebra.sigma.has_square_trivial_class(),
    })
}

/// Dimension over the scalar field of the center `{z : z X_u = X_u z}`.
///
/// Equating coefficients of `X_g` in `z X_u = X_u z` yields, per `(u, g)`,
/// `c_(g u^-1) sigma(g u^-1, u) = c_(u^-1 g) sigma(u, u^-1 g)`: every
/// equation ties two coefficients by a root of unity.  A union-find over
/// the coefficient indices carrying the exponent offsets solves the
/// system exactly; inconsistent components are forced to zero.
pub fn center_dimension(algebra: &Algebra) -> Result<usize> {
    let dim = algebra.dim();
    let n = algebra.modulus();
    let gt = algebra.op_table();
    // parent, offset: c_x = zeta^offset * c_parent; dead marks c = 0.
    let mut parent: Vec<usize> = (0..dim).collect();
    let mut offset: Vec<u64> = vec![0; dim];
    let mut dead: Vec<bool> = vec![false; dim];

    fn find(parent: &mut [usize], offset: &mut [u64], n: u64, x: usize) -> (usize, u64) {
        if parent[x] == x {
            return (x, 0);
        }
        let (root, above) = find(parent, offset, n, parent[x]);
        parent[x] = root;
        offset[x] = (offset[x] + above) % n;
        (root, offset[x])
    }

    for u in 0..dim {
        let uinv = gt.inv[u];
        for g in 0..dim {
            let x = gt.op[g][uinv];
            let y = gt.op[uinv][g];
            let a = algebra.sigma.exponent_at(x, u);
            let b = algebra.sigma.exponent_at(u, y);
            // c_x zeta^a = c_y zeta^b, i.e. c_x = zeta^(b - a) c_y.
            let delta = (b + n - a) % n;
            let (rx, ox) = find(&mut parent, &mut offset, n, x);
            let (ry, oy) = find(&mut parent, &mut offset, n, y);
            if rx == ry {
                if (ox + n - oy) % n != delta {
                    dead[rx] = true;
                }
            } else {
                // c_rx = zeta^(-ox) c_x = zeta^(delta - ox) c_y
                //      = zeta^(delta - ox + oy) c_ry.
                parent[rx] = ry;
                offset[rx] = (delta + n - ox + oy) % n;
                if dead[rx] {
                    dead[ry] = true;
                }
            }
        }
    }
    let mut alive = std::collections::BTreeSet::new();
    let mut dead_roots = std::collections::BTreeSet::new();
    for x in 0..dim {
        let (r, _) = find(&mut parent, &mut offset, n, x);
        if dead[x] {
            dead_roots.insert(r);
        } else {
            alive.insert(r);
        }
    }
    Ok(alive.difference(&dead_roots).count())
}
