//! Degree-inverting involutions on `R = M_k(D)` for a graded division
//! algebra `D` with a distinguished degree `g0`.
//!
//! The grading of `R` comes from a degree list `gamma`:
//! `deg e_ij (x) d = gamma_i deg(d) gamma_j^{-1}`.  An involution is cut
//! out by a sesquilinear form through its Gram matrix `Phi`:
//! `psi(Z) = Phi^{-1} psi0(Z^t) Phi`, where `psi0` is applied entrywise.
//! This module builds `Phi` from admissibility data `(m, s, eps_B)`,
//! recovers `Phi` from a given involution, reads off the symmetry sign,
//! and reduces a form to the block shape by an orthogonalization that
//! splits off anisotropic vectors and hyperbolic pairs.

use crate::cyclotomic::CycRational;
use crate::degree::{Degree, DegreeCtx};
use crate::linalg::Mat;
use crate::realization::elementary_degree;
use crate::twisted::{Algebra, AlgebraElement, DegreeInvertingInvolution};
use crate::{Error, Result};

/// Free graded right `D`-module of finite rank, i.e. the grading data of
/// `M_k(D)`.
#[derive(Debug, Clone)]
pub struct GradedModule {
    pub algebra: Algebra,
    pub ctx: DegreeCtx,
    pub gamma: Vec<Degree>,
}

impl GradedModule {
    pub fn new(algebra: Algebra, ctx: DegreeCtx, gamma: Vec<Degree>) -> Result<Self> {
        if &ctx.group != algebra.group() {
            return Err(Error::domain("degree context group must match the algebra"));
        }
        Ok(GradedModule {
            algebra,
            ctx,
            gamma,
        })
    }

    pub fn rank(&self) -> usize {
        self.gamma.len()
    }

    /// `deg e_ij (x) X_u`.
    pub fn unit_degree(&self, i: usize, j: usize, u: usize) -> Result<Degree> {
        let t = self.algebra.group().element(u)?;
        let d = self.ctx.from_element(t)?;
        elementary_degree(&self.ctx, &self.gamma, i, j, &d)
    }

    /// Veronese shift: invert every degree.  Applying it twice is the
    /// identity on degree lists.
    pub fn inverted(&self) -> Result<GradedModule> {
        let gamma = self
            .gamma
            .iter()
            .map(|g| self.ctx.inv(g))
            .collect::<Result<Vec<_>>>()?;
        GradedModule::new(self.algebra.clone(), self.ctx.clone(), gamma)
    }

    /// Right shift by a degree.
    pub fn shifted(&self, d: &Degree) -> Result<GradedModule> {
        let gamma = self
            .gamma
            .iter()
            .map(|g| self.ctx.mul(g, d))
            .collect::<Result<Vec<_>>>()?;
        GradedModule::new(self.algebra.clone(), self.ctx.clone(), gamma)
    }
}

/// Square matrix over the twisted group algebra `D`.
#[derive(Debug, Clone)]
pub struct DMat {
    algebra: Algebra,
    pub k: usize,
    entries: Vec<AlgebraElement>,
}

impl PartialEq for DMat {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.entries == other.entries
    }
}

impl DMat {
    pub fn zeros(algebra: &Algebra, k: usize) -> Self {
        DMat {
            algebra: algebra.clone(),
            k,
            entries: vec![AlgebraElement::zero(algebra); k * k],
        }
    }

    pub fn identity(algebra: &Algebra, k: usize) -> Self {
        let mut m = Self::zeros(algebra, k);
        for i in 0..k {
            *m.at_mut(i, i) = AlgebraElement::one(algebra);
        }
        m
    }

    /// `e_ij (x) a`.
    pub fn unit(
        algebra: &Algebra,
        k: usize,
        i: usize,
        j: usize,
        a: AlgebraElement,
    ) -> Result<Self> {
        if i >= k || j >= k {
            return Err(Error::domain("unit position out of range"));
        }
        let mut m = Self::zeros(algebra, k);
        *m.at_mut(i, j) = a;
        Ok(m)
    }

    pub fn basis_unit(algebra: &Algebra, k: usize, i: usize, j: usize, u: usize) -> Result<Self> {
        Self::unit(algebra, k, i, j, AlgebraElement::basis(algebra, u)?)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn at(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i * self.k + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut AlgebraElement {
        &mut self.entries[i * self.k + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &DMat) -> Result<DMat> {
        if self.k != other.k {
            return Err(Error::domain("matrix size mismatch"));
        }
        let mut out = self.clone();
        for (x, y) in out.entries.iter_mut().zip(other.entries.iter()) {
            *x = x.add(y)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DMat) -> Result<DMat> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DMat {
        DMat {
            algebra: self.algebra.clone(),
            k: self.k,
            entries: self.entries.iter().map(|e| e.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &CycRational) -> DMat {
        DMat {
            algebra: self.algebra.clone(),
            k: self.k,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &DMat) -> Result<DMat> {
        if self.k != other.k {
            return Err(Error::domain("matrix size mismatch"));
        }
        let mut out = Self::zeros(&self.algebra, self.k);
        for i in 0..self.k {
            for l in 0..self.k {
                let a = self.at(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.k {
                    let b = other.at(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b)?)?;
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> DMat {
        let mut out = Self::zeros(&self.algebra, self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Apply `psi0` to every entry of the transpose.
    pub fn psi0_transpose(&self, psi0: &DegreeInvertingInvolution) -> Result<DMat> {
        let mut out = Self::zeros(&self.algebra, self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                *out.at_mut(j, i) = psi0.apply(self.at(i, j))?;
            }
        }
        Ok(out)
    }

    /// Embed into `M_(k |T|)` over the scalars via the left regular
    /// representation of `D`; scalar index is `slot * |T| + basis`.
    pub fn to_scalar(&self) -> Result<Mat> {
        let dim = self.algebra.dim();
        let gt = self.algebra.op_table();
        let mut out = Mat::zeros(self.k * dim, self.k * dim);
        for i in 0..self.k {
            for j in 0..self.k {
                let e = self.at(i, j);
                for (&t, c) in e.coeffs() {
                    for u in 0..dim {
                        let tu = gt.op[t][u];
                        let v = c.mul(&self.algebra.sigma_value(t, u))?;
                        let cur = out.at(i * dim + tu, j * dim + u).add(&v)?;
                        *out.at_mut(i * dim + tu, j * dim + u) = cur;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse inside `M_k(D)`, or `None` when singular.  Computed in the
    /// scalar embedding; the embedded image is closed under inverses, so
    /// reading the result back entrywise is sound.
    pub fn invert(&self) -> Result<Option<DMat>> {
        let dim = self.algebra.dim();
        let gt = self.algebra.op_table();
        let scalar = self.to_scalar()?;
        let Some(inv) = scalar.invert()? else {
            return Ok(None);
        };
        let mut out = Self::zeros(&self.algebra, self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                let mut coeffs = Vec::new();
                for w in 0..dim {
                    let c = inv.at(i * dim + w, j * dim + gt.id).clone();
                    if !c.is_zero() {
                        coeffs.push((w, c));
                    }
                }
                *out.at_mut(i, j) = AlgebraElement::from_coeffs(&self.algebra, coeffs)?;
            }
        }
        debug_assert!(out
            .mul(self)
            .map(|p| p == Self::identity(&self.algebra, self.k))
            .unwrap_or(false));
        Ok(Some(out))
    }
}

/// Admissibility data for a degree list against `(g0, eps)`: how `gamma`
/// splits into anisotropic degrees and pairs `(g', g' g0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissible {
    pub m: usize,
    pub s: usize,
    /// Positions into the input `gamma`, ordered anisotropic first, then
    /// pair firsts, then pair seconds.
    pub order: Vec<usize>,
}

/// Greedy partition of `gamma`: each slot pairs with the first unused
/// slot of degree `gamma_i * g0` when `g0^2 = 1`, and falls back to an
/// anisotropic slot when `g0` lies in the support.  Anisotropic slots
/// also need `g0^2 = 1`: the diagonal Gram entry has degree `g0^{-1}`
/// and must be fixed by degree inversion.  `None` when no partition
/// exists.
pub fn check_admissible(ctx: &DegreeCtx, gamma: &[Degree]) -> Option<Admissible> {
    let k = gamma.len();
    let g0 = ctx.g0();
    let g0_sq_one = ctx.g0_squares_to_identity();
    let anisotropic_ok = ctx.g0_in_support().is_some() && g0_sq_one;
    let mut used = vec![false; k];
    let mut anis = Vec::new();
    let mut firsts = Vec::new();
    let mut seconds = Vec::new();
    for i in 0..k {
        if used[i] {
            continue;
        }
        used[i] = true;
        if g0_sq_one {
            let target = ctx.mul(&gamma[i], &g0).ok()?;
            if let Some(j) = (i + 1..k).find(|&j| !used[j] && gamma[j] == target) {
                used[j] = true;
                firsts.push(i);
                seconds.push(j);
                continue;
            }
        }
        if anisotropic_ok {
            anis.push(i);
        } else {
            return None;
        }
    }
    let m = anis.len();
    let s = m + firsts.len();
    let mut order = anis;
    order.extend(firsts);
    order.extend(seconds);
    Some(Admissible { m, s, order })
}

/// The data determining a degree-inverting involution on `M_k(D)`: the
/// graded module (with `gamma` already in canonical order), the
/// involution `psi0` on `D`, the symmetry sign and the partition sizes.
#[derive(Debug, Clone)]
pub struct InvolutionSpec {
    pub module: GradedModule,
    pub psi0: DegreeInvertingInvolution,
    pub eps_b: i8,
    pub m: usize,
    pub s: usize,
}

impl InvolutionSpec {
    /// Check admissibility of `module.gamma`, reorder it canonically and
    /// validate the sign constraints.
    pub fn new(module: GradedModule, psi0: DegreeInvertingInvolution, eps_b: i8) -> Result<Self> {
        if eps_b != 1 && eps_b != -1 {
            return Err(Error::domain("eps must be +1 or -1"));
        }
        if psi0.algebra() != &module.algebra {
            return Err(Error::domain("psi0 acts on a different algebra"));
        }
        let adm = check_admissible(&module.ctx, &module.gamma)
            .ok_or_else(|| Error::domain("degree list is not admissible for this g0"))?;
        if eps_b == -1 && adm.m != 0 {
            return Err(Error::domain("eps = -1 requires a perfect pairing (m = 0)"));
        }
        if adm.m > 0 {
            // The anisotropic diagonal carries X_g0, so psi0 must fix it;
            // otherwise the built form cannot satisfy the +1 symmetry.
            let g0 = module
                .ctx
                .g0_in_support()
                .ok_or_else(|| Error::domain("anisotropic slots need g0 in the support"))?;
            let g0_idx = module.algebra.group().index_of(g0)?;
            if psi0.mu().value(g0_idx) != 0 {
                return Err(Error::domain(
                    "psi0 must fix X_g0 for anisotropic specs; normalize it with \
                     make_involution_fixing",
                ));
            }
        }
        let gamma = adm.order.iter().map(|&i| module.gamma[i].clone()).collect();
        let module = GradedModule::new(module.algebra, module.ctx, gamma)?;
        Ok(InvolutionSpec {
            module,
            psi0,
            eps_b,
            m: adm.m,
            s: adm.s,
        })
    }

    pub fn rank(&self) -> usize {
        self.m + 2 * (self.s - self.m)
    }
}

/// `psi0`-sesquilinear form on the module, stored by its Gram matrix.
#[derive(Debug, Clone)]
pub struct SesquilinearForm {
    pub module: GradedModule,
    pub psi0: DegreeInvertingInvolution,
    pub phi: DMat,
    pub eps_b: i8,
}

impl SesquilinearForm {
    /// Validate invertibility, the `eps` symmetry and homogeneity of the
    /// entries (`Phi[i][j]` lives in degree `g0^{-1} gamma_i^{-1}
    /// gamma_j`).
    pub fn new(
        module: GradedModule,
        psi0: DegreeInvertingInvolution,
        phi: DMat,
    ) -> Result<SesquilinearForm> {
        if phi.k != module.rank() {
            return Err(Error::domain("Gram matrix size must equal the rank"));
        }
        if phi.invert()?.is_none() {
            return Err(Error::domain("Gram matrix is not invertible"));
        }
        let eps_b = epsilon_of_form(&phi, &psi0)?;
        let ctx = &module.ctx;
        let g0_inv = ctx.inv(&ctx.g0())?;
        let group = module.algebra.group().clone();
        for i in 0..phi.k {
            for j in 0..phi.k {
                let entry = phi.at(i, j);
                if entry.is_zero() {
                    continue;
                }
                let req = ctx.mul(
                    &ctx.mul(&g0_inv, &ctx.inv(&module.gamma[i])?)?,
                    &module.gamma[j],
                )?;
                let Some(t) = entry.homogeneous_degree() else {
                    return Err(Error::domain(format!(
                        "Gram entry ({i}, {j}) is not homogeneous"
                    )));
                };
                let td = ctx.from_element(group.element(t)?)?;
                if td != req {
                    return Err(Error::domain(format!(
                        "Gram entry ({i}, {j}) has the wrong degree"
                    )));
                }
            }
        }
        Ok(SesquilinearForm {
            module,
            psi0,
            phi,
            eps_b,
        })
    }

    /// `B(v, w) = sum_ij psi0(v_i) Phi[i][j] w_j` for column vectors.
    pub fn pair(&self, v: &[AlgebraElement], w: &[AlgebraElement]) -> Result<AlgebraElement> {
        let alg = &self.module.algebra;
        let mut acc = AlgebraElement::zero(alg);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let pv = self.psi0.apply(vi)?;
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() || self.phi.at(i, j).is_zero() {
                    continue;
                }
                acc = acc.add(&pv.mul(self.phi.at(i, j))?.mul(wj)?)?;
            }
        }
        Ok(acc)
    }
}

/// The sign `eps` with `psi0^t(Phi) = eps Phi`, or [`Error::NotInvolutive`].
pub fn epsilon_of_form(phi: &DMat, psi0: &DegreeInvertingInvolution) -> Result<i8> {
    let twisted = phi.psi0_transpose(psi0)?;
    if twisted == *phi {
        Ok(1)
    } else if twisted == phi.neg() {
        Ok(-1)
    } else {
        Err(Error::NotInvolutive)
    }
}

/// Build the canonical Gram matrix of a spec, on the ordered basis
/// `(v_1 .. v_m, v'_(m+1) .. v'_s, v''_(m+1) .. v''_s)`:
/// `blockdiag(I_m (x) X_g0, [[0, I], [eps I, 0]] (x) X_1)`.
pub fn build_phi(spec: &InvolutionSpec) -> Result<SesquilinearForm> {
    let k = spec.rank();
    let alg = &spec.module.algebra;
    let mut phi = DMat::zeros(alg, k);
    if spec.m > 0 {
        let g0 = spec
            .module
            .ctx
            .g0_in_support()
            .ok_or_else(|| Error::domain("anisotropic block needs g0 in the support"))?;
        let g0_idx = alg.group().index_of(g0)?;
        for i in 0..spec.m {
            *phi.at_mut(i, i) = AlgebraElement::basis(alg, g0_idx)?;
        }
    }
    let p = spec.s - spec.m;
    let one = AlgebraElement::one(alg);
    for j in 0..p {
        *phi.at_mut(spec.m + j, spec.m + p + j) = one.clone();
        *phi.at_mut(spec.m + p + j, spec.m + j) = if spec.eps_b == 1 {
            one.clone()
        } else {
            one.neg()
        };
    }
    let form = SesquilinearForm::new(spec.module.clone(), spec.psi0.clone(), phi)?;
    if form.eps_b != spec.eps_b {
        return Err(Error::domain(
            "built form has the wrong symmetry sign; psi0 is incompatible with the spec",
        ));
    }
    Ok(form)
}

/// The involution `psi(Z) = Phi^{-1} psi0(Z^t) Phi`.
#[derive(Debug, Clone)]
pub struct MatrixInvolution {
    pub form: SesquilinearForm,
    phi_inv: DMat,
}

impl MatrixInvolution {
    pub fn apply(&self, z: &DMat) -> Result<DMat> {
        let tw = z.psi0_transpose(&self.form.psi0)?;
        self.phi_inv.mul(&tw)?.mul(&self.form.phi)
    }

    pub fn apply_unit(&self, i: usize, j: usize, u: usize) -> Result<DMat> {
        let unit = DMat::basis_unit(&self.form.module.algebra, self.form.module.rank(), i, j, u)?;
        self.apply(&unit)
    }

    pub fn rank(&self) -> usize {
        self.form.module.rank()
    }
}

/// Wrap a validated form into the involution it induces.
pub fn involution_from_phi(form: SesquilinearForm) -> Result<MatrixInvolution> {
    let phi_inv = form
        .phi
        .invert()?
        .ok_or_else(|| Error::domain("Gram matrix is not invertible"))?;
    Ok(MatrixInvolution { form, phi_inv })
}

/// First homogeneous unit whose image under `map` is not homogeneous of
/// the inverse degree; `None` means the map is degree-inverting.
pub fn degree_inversion_witness(
    module: &GradedModule,
    mut map: impl FnMut(usize, usize, usize) -> Result<DMat>,
) -> Result<Option<(usize, usize, usize)>> {
    let k = module.rank();
    let dim = module.algebra.dim();
    let group = module.algebra.group().clone();
    for i in 0..k {
        for j in 0..k {
            for u in 0..dim {
                let target = module.ctx.inv(&module.unit_degree(i, j, u)?)?;
                let image = map(i, j, u)?;
                for a in 0..k {
                    for b in 0..k {
                        let e = image.at(a, b);
                        for &t in e.coeffs().keys() {
                            let td = module.ctx.from_element(group.element(t)?)?;
                            let deg = elementary_degree(&module.ctx, &module.gamma, a, b, &td)?;
                            if deg != target {
                                return Ok(Some((i, j, u)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn is_degree_inverting(
    module: &GradedModule,
    map: impl FnMut(usize, usize, usize) -> Result<DMat>,
) -> Result<bool> {
    Ok(degree_inversion_witness(module, map)?.is_none())
}

/// Recover the Gram matrix from an involution given as its action on the
/// homogeneous units, solving `Phi psi(R) = psi0(R^t) Phi` with entries
/// constrained to their homogeneity degrees.
///
/// The solution space must be one-dimensional; the result is normalized
/// so that the first nonzero entry (row-major) has coefficient one on its
/// basis vector.
pub fn form_from_involution(
    module: &GradedModule,
    psi0: &DegreeInvertingInvolution,
    mut map: impl FnMut(usize, usize, usize) -> Result<DMat>,
) -> Result<SesquilinearForm> {
    let k = module.rank();
    let alg = module.algebra.clone();
    let dim = alg.dim();
    let gt = alg.op_table().clone();
    let group = alg.group().clone();
    let ctx = &module.ctx;
    let g0_inv = ctx.inv(&ctx.g0())?;
    // One scalar unknown per slot (i, j) whose homogeneity degree lies in
    // the support; the entry is then x_(i,j) X_(t_(i,j)).
    let mut slot_basis: Vec<Option<usize>> = Vec::with_capacity(k * k);
    let mut var_of_slot: Vec<Option<usize>> = Vec::with_capacity(k * k);
    let mut nvars = 0usize;
    for i in 0..k {
        for j in 0..k {
            let req = ctx.mul(
                &ctx.mul(&g0_inv, &ctx.inv(&module.gamma[i])?)?,
                &module.gamma[j],
            )?;
            match req.in_support() {
                Some(t) => {
                    slot_basis.push(Some(group.index_of(t)?));
                    var_of_slot.push(Some(nvars));
                    nvars += 1;
                }
                None => {
                    slot_basis.push(None);
                    var_of_slot.push(None);
                }
            }
        }
    }
    if nvars == 0 {
        return Err(Error::NotOfForm);
    }
    // Equations: scalar coordinates of Phi psi(R) - psi0(R^t) Phi = 0
    // over every homogeneous unit R.
    let mut rows: Vec<Vec<CycRational>> = Vec::new();
    for ri in 0..k {
        for rj in 0..k {
            for ru in 0..dim {
                let image = map(ri, rj, ru)?;
                let mut grid = vec![vec![CycRational::zero(); nvars]; k * k * dim];
                // LHS: (Phi psi(R))_(a,b) = sum_c Phi_(a,c) image_(c,b).
                for a in 0..k {
                    for c in 0..k {
                        let Some(var) = var_of_slot[a * k + c] else {
                            continue;
                        };
                        let t = slot_basis[a * k + c].unwrap();
                        for b in 0..k {
                            let e = image.at(c, b);
                            for (&v, cv) in e.coeffs() {
                                let w = gt.op[t][v];
                                let coeff = cv.mul(&alg.sigma_value(t, v))?;
                                let cell = &mut grid[(a * k + b) * dim + w][var];
                                *cell = cell.add(&coeff)?;
                            }
                        }
                    }
                }
                // RHS: (psi0(R^t) Phi)_(a,b) is only nonzero at a = rj:
                // psi0(X_ru) Phi_(ri, b).
                let pr = psi0.apply(&AlgebraElement::basis(&alg, ru)?)?;
                for b in 0..k {
                    let Some(var) = var_of_slot[ri * k + b] else {
                        continue;
                    };
                    let t = slot_basis[ri * k + b].unwrap();
                    for (&v, cv) in pr.coeffs() {
                        let w = gt.op[v][t];
                        let coeff = cv.mul(&alg.sigma_value(v, t))?;
                        let cell = &mut grid[(rj * k + b) * dim + w][var];
                        *cell = cell.sub(&coeff)?;
                    }
                }
                for row in grid {
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let solutions = if rows.is_empty() {
        // Vacuous constraints: the whole variable space solves the system
        // (happens only for one-dimensional setups).
        (0..nvars)
            .map(|v| {
                let mut x = vec![CycRational::zero(); nvars];
                x[v] = CycRational::one();
                x
            })
            .collect()
    } else {
        Mat::from_rows(rows).nullspace()?
    };
    if solutions.is_empty() {
        return Err(Error::NotOfForm);
    }
    if solutions.len() > 1 {
        return Err(Error::domain(
            "internal assertion: recovered form space has dimension > 1",
        ));
    }
    let sol = &solutions[0];
    // Assemble Phi and normalize its first nonzero entry to coefficient 1.
    let mut first: Option<CycRational> = None;
    for var in var_of_slot.iter().flatten() {
        if !sol[*var].is_zero() {
            first = Some(sol[*var].clone());
            break;
        }
    }
    let scale = first.ok_or(Error::NotOfForm)?.inv()?;
    let mut phi = DMat::zeros(&alg, k);
    for i in 0..k {
        for j in 0..k {
            if let Some(v) = var_of_slot[i * k + j] {
                let c = sol[v].mul(&scale)?;
                if !c.is_zero() {
                    *phi.at_mut(i, j) =
                        AlgebraElement::scaled_basis(&alg, slot_basis[i * k + j].unwrap(), c)?;
                }
            }
        }
    }
    SesquilinearForm::new(module.clone(), psi0.clone(), phi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    Anisotropic,
    PairFirst,
    PairSecond,
}

/// Result of the orthogonalization: a homogeneous basis with labels, the
/// change-of-basis matrix (columns are the new basis vectors) and the
/// transformed Gram matrix.
#[derive(Debug, Clone)]
pub struct OrthoDecomp {
    pub basis: DMat,
    pub labels: Vec<BasisLabel>,
    pub degrees: Vec<Degree>,
    pub m: usize,
    pub s: usize,
    pub eps_b: i8,
    pub gram: DMat,
}

/// Orthogonalize a form: repeatedly split off the first basis vector `v`
/// with `B(v, v) != 0` (anisotropic step); when none exists, pair the
/// first vector with the first partner `w` with `B(v, w) != 0`, rescale
/// so `B(v, w) = 1`, and split the pair off.  The output ordering is
/// anisotropic vectors first, then pair firsts, then pair seconds.
pub fn orthogonalize(form: &SesquilinearForm) -> Result<OrthoDecomp> {
    let k = form.module.rank();
    let alg = &form.module.algebra;
    let eps = CycRational::from_integer(form.eps_b as i64);
    type Vecd = Vec<AlgebraElement>;
    let mut current: Vec<(Vecd, Degree)> = (0..k)
        .map(|i| {
            let mut col = vec![AlgebraElement::zero(alg); k];
            col[i] = AlgebraElement::one(alg);
            (col, form.module.gamma[i].clone())
        })
        .collect();
    let mut anis: Vec<(Vecd, Degree)> = Vec::new();
    let mut firsts: Vec<(Vecd, Degree)> = Vec::new();
    let mut seconds: Vec<(Vecd, Degree)> = Vec::new();
    let sub_scaled = |u: &Vecd, v: &Vecd, d: &AlgebraElement| -> Result<Vecd> {
        u.iter()
            .zip(v.iter())
            .map(|(ui, vi)| ui.sub(&vi.mul(d)?))
            .collect()
    };
    while !current.is_empty() {
        let mut self_pairings = Vec::with_capacity(current.len());
        for (v, _) in &current {
            self_pairings.push(form.pair(v, v)?);
        }
        if let Some(pos) = self_pairings.iter().position(|p| !p.is_zero()) {
            // Anisotropic step: split off v, project the rest onto the
            // orthogonal complement.
            let (v, dv) = current.remove(pos);
            let alpha_inv = self_pairings[pos].inv()?;
            let mut next = Vec::with_capacity(current.len());
            for (u, du) in current.into_iter() {
                let d = alpha_inv.mul(&form.pair(&v, &u)?)?;
                next.push((sub_scaled(&u, &v, &d)?, du));
            }
            current = next;
            anis.push((v, dv));
            continue;
        }
        // Pair step: every remaining basis vector is isotropic.
        let (v, dv) = current.remove(0);
        let pos = {
            let mut found = None;
            for (idx, (w, _)) in current.iter().enumerate() {
                if !form.pair(&v, w)?.is_zero() {
                    found = Some(idx);
                    break;
                }
            }
            found.ok_or_else(|| Error::domain("form is degenerate: no hyperbolic partner"))?
        };
        let (w, _) = current.remove(pos);
        let scale = form.pair(&v, &w)?.inv()?;
        let w: Vecd = w
            .iter()
            .map(|wi| wi.mul(&scale))
            .collect::<Result<Vec<_>>>()?;
        let dw = form.module.ctx.mul(&dv, &form.module.ctx.g0())?;
        // Plane Gram is [[0, 1], [eps, 0]]; the split is
        // u -> u - v (eps B(w, u)) - w (B(v, u)).
        let mut next = Vec::with_capacity(current.len());
        for (u, du) in current.into_iter() {
            let d1 = form.pair(&w, &u)?.scale(&eps);
            let d2 = form.pair(&v, &u)?;
            let u1 = sub_scaled(&u, &v, &d1)?;
            next.push((sub_scaled(&u1, &w, &d2)?, du));
        }
        current = next;
        firsts.push((v, dv));
        seconds.push((w, dw));
    }
    let m = anis.len();
    let s = m + firsts.len();
    let mut ordered: Vec<(Vecd, Degree, BasisLabel)> = Vec::with_capacity(k);
    for (v, d) in anis {
        ordered.push((v, d, BasisLabel::Anisotropic));
    }
    for (v, d) in firsts {
        ordered.push((v, d, BasisLabel::PairFirst));
    }
    for (v, d) in seconds {
        ordered.push((v, d, BasisLabel::PairSecond));
    }
    let mut basis = DMat::zeros(alg, k);
    for (col, (v, _, _)) in ordered.iter().enumerate() {
        for row in 0..k {
            *basis.at_mut(row, col) = v[row].clone();
        }
    }
    // gram = psi0(U)^t Phi U, entry (a, b) = B(u_a, u_b).
    let gram = basis
        .psi0_transpose(&form.psi0)?
        .mul(&form.phi)?
        .mul(&basis)?;
    Ok(OrthoDecomp {
        basis,
        labels: ordered.iter().map(|(_, _, l)| *l).collect(),
        degrees: ordered.into_iter().map(|(_, d, _)| d).collect(),
        m,
        s,
        eps_b: form.eps_b,
        gram,
    })
}

impl OrthoDecomp {
    /// Does the transformed Gram matrix have the canonical block shape
    /// (anisotropic homogeneous scalars on the diagonal, exact hyperbolic
    /// blocks, zero elsewhere)?
    pub fn is_canonical_shape(&self, alg: &Algebra, eps: i8) -> Result<bool> {
        let k = self.labels.len();
        let p = self.s - self.m;
        let one = AlgebraElement::one(alg);
        for a in 0..k {
            for b in 0..k {
                let e = self.gram.at(a, b);
                let in_second = |x: usize| x >= self.m + p && x < self.m + 2 * p;
                let expected_nonzero = (a == b && a < self.m)
                    || (in_second(b) && a == b - p)
                    || (in_second(a) && b == a - p);
                if !expected_nonzero {
                    if !e.is_zero() {
                        return Ok(false);
                    }
                    continue;
                }
                if a == b {
                    if e.is_zero() || e.homogeneous_degree().is_none() {
                        return Ok(false);
                    }
                } else if a < b {
                    if e != &one {
                        return Ok(false);
                    }
                } else {
                    let want = if eps == 1 { one.clone() } else { one.neg() };
                    if e != &want {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}
