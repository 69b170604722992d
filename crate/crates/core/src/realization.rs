//! Matrix realizations of central graded division algebras with
//! commutative support: the `epsilon`-grading generators, hyperbolic
//! decomposition of `(T, beta)` and the Kronecker assembly.

use crate::cocycles::{Bicharacter, Cocycle};
use crate::cyclotomic::CycRational;
use crate::degree::{Degree, DegreeCtx};
use crate::groups::{GroupElement, GroupSpec};
use crate::linalg::Mat;
use crate::{Error, Result};

/// The pair `(X, Y)` generating the `epsilon`-grading of `M_n`: `X` the
/// cyclic shift and `Y = diag(eps^(n-1), ..., eps, 1)`, with `eps` the
/// canonical primitive `n`-th root.  They satisfy `eps X Y = Y X` and
/// `X^n = Y^n = 1` exactly.
pub fn epsilon_generators(n: usize) -> Result<(Mat, Mat)> {
    epsilon_generators_with(n, &CycRational::root_of_unity(n.max(1) as u64, 1)?)
}

/// Same with a caller-chosen primitive `n`-th root `eps`.
pub fn epsilon_generators_with(n: usize, eps: &CycRational) -> Result<(Mat, Mat)> {
    if n == 0 {
        return Err(Error::domain("matrix size must be positive"));
    }
    let mut x = Mat::zeros(n, n);
    for i in 0..n {
        *x.at_mut(i, (i + 1) % n) = CycRational::one();
    }
    let mut y = Mat::zeros(n, n);
    for i in 0..n {
        *y.at_mut(i, i) = eps.pow((n - 1 - i) as i64)?;
    }
    Ok((x, y))
}

/// Hyperbolic pair: elements `a, b` of order `m` with `beta(a, b)` a
/// primitive `m`-th root of unity, spanning `Z_m x Z_m`.
#[derive(Debug, Clone)]
pub struct HyperbolicPair {
    pub a: GroupElement,
    pub b: GroupElement,
    pub m: u64,
    /// Exponent `e` with `beta(a, b) = zeta_N^e` (order exactly `m`).
    pub beta_exponent: u64,
}

#[derive(Debug, Clone)]
pub struct HyperbolicDecomposition {
    pub group: GroupSpec,
    pub n: u64,
    pub pairs: Vec<HyperbolicPair>,
}

fn exponent_order(e: u64, n: u64) -> u64 {
    if e == 0 {
        return 1;
    }
    let g = {
        let (mut a, mut b) = (e, n);
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    };
    n / g
}

/// Greedy extraction of a hyperbolic decomposition of `(T, beta)`.
///
/// Repeatedly picks the first element `a` of maximal order in the current
/// subgroup, the first `b` with `beta(a, b)` of the same order, records
/// the pair and restricts to the orthogonal complement of `<a, b>`.
pub fn hyperbolic_decompose(
    group: &GroupSpec,
    beta: &Bicharacter,
) -> Result<HyperbolicDecomposition> {
    if beta.group() != group {
        return Err(Error::domain("bicharacter group mismatch"));
    }
    if !beta.is_nondegenerate() {
        return Err(Error::NotCentral);
    }
    let order = group.order();
    let n = beta.modulus();
    let gt = group.op_table();
    // Element orders via the index table.
    let elem_order = |i: usize| -> u64 {
        let mut cur = i;
        let mut o = 1u64;
        while cur != gt.id {
            cur = gt.op[cur][i];
            o += 1;
        }
        o
    };
    // Current subgroup as a sorted list of element indices.
    let mut current: Vec<usize> = (0..order).collect();
    let mut pairs = Vec::new();
    while current.len() > 1 {
        let &a = current
            .iter()
            .filter(|&&i| i != gt.id)
            .max_by_key(|&&i| (elem_order(i), std::cmp::Reverse(i)))
            .unwrap();
        let m = elem_order(a);
        let &b = current
            .iter()
            .find(|&&j| exponent_order(beta.exponent_at(a, j), n) == m)
            .ok_or_else(|| {
                Error::domain("no hyperbolic partner found; bicharacter is degenerate on the block")
            })?;
        let beta_exponent = beta.exponent_at(a, b);
        pairs.push(HyperbolicPair {
            a: group.element(a)?,
            b: group.element(b)?,
            m,
            beta_exponent,
        });
        // Orthogonal complement of <a, b> inside the current subgroup.
        current.retain(|&t| beta.exponent_at(a, t) == 0 && beta.exponent_at(b, t) == 0);
        // The identity always stays; the loop must shrink.
        debug_assert!(current.contains(&gt.id));
    }
    // Sanity: the product of the pair subgroups covers T.
    let covered: u64 = pairs.iter().map(|p| p.m * p.m).product();
    if covered != order as u64 {
        return Err(Error::domain(
            "internal impossibility: pairs do not span the group",
        ));
    }
    Ok(HyperbolicDecomposition {
        group: group.clone(),
        n,
        pairs,
    })
}

/// A graded matrix algebra `M_n` with a division grading: one invertible
/// basis matrix per support element.
#[derive(Debug, Clone)]
pub struct GradedMatrixAlgebra {
    pub group: GroupSpec,
    /// Matrix size.
    pub n: usize,
    /// Scalar root order (lcm of the pair orders).
    pub scalar_order: u64,
    /// Basis matrix per canonical element index.
    pub basis: Vec<Mat>,
}

impl GradedMatrixAlgebra {
    pub fn basis_for(&self, t: &GroupElement) -> Result<&Mat> {
        Ok(&self.basis[self.group.index_of(t)?])
    }

    /// Read the structure cocycle back off the matrices:
    /// `B_u B_v = sigma(u, v) B_(uv)`.
    pub fn cocycle(&self) -> Result<Cocycle> {
        let order = self.group.order();
        let gt = self.group.op_table();
        let mut table = vec![vec![0u64; order]; order];
        for u in 0..order {
            for v in 0..order {
                let prod = self.basis[u].mul(&self.basis[v])?;
                let target = &self.basis[gt.op[u][v]];
                let mut found = None;
                'scan: for i in 0..self.n {
                    for j in 0..self.n {
                        if !target.at(i, j).is_zero() {
                            let ratio = prod.at(i, j).mul(&target.at(i, j).inv()?)?;
                            found = Some(ratio);
                            break 'scan;
                        }
                    }
                }
                let ratio = found.ok_or_else(|| Error::domain("zero basis matrix"))?;
                if prod != target.scale(&ratio)? {
                    return Err(Error::domain("basis product is not a scalar multiple"));
                }
                // Express the ratio as a power of the canonical root.
                let mut exp = None;
                for e in 0..self.scalar_order {
                    if CycRational::root_of_unity(self.scalar_order, e as i64)? == ratio {
                        exp = Some(e);
                        break;
                    }
                }
                table[u][v] =
                    exp.ok_or_else(|| Error::domain("structure constant is not a root of unity"))?;
            }
        }
        Cocycle::new(self.group.clone(), self.scalar_order, table)
    }
}

/// Realize the central graded division algebra attached to `(T, beta)` as
/// a matrix algebra via the Kronecker product of `epsilon`-gradings.
///
/// For `t = prod a_i^(p_i) b_i^(q_i)` the basis matrix is
/// `kron_i (Y_i^(p_i) X_i^(q_i))` with `(X_i, Y_i)` the generators for
/// `eps_i = beta(a_i, b_i)`; the exponents are read off through `beta`.
pub fn realize_division_algebra(
    group: &GroupSpec,
    beta: &Bicharacter,
) -> Result<GradedMatrixAlgebra> {
    let decomp = hyperbolic_decompose(group, beta)?;
    let nbeta = beta.modulus();
    let scalar_order = decomp
        .pairs
        .iter()
        .fold(1u64, |acc, p| crate::zn::lcm(acc, p.m));
    let matrix_size: u64 = decomp.pairs.iter().map(|p| p.m).product();
    if matrix_size > 64 {
        return Err(Error::domain("realization larger than the 64 x 64 cap"));
    }
    let order = group.order();
    // Per-pair generators with eps_i = beta(a_i, b_i) embedded in the
    // common scalar field.
    let mut gens = Vec::new();
    for p in &decomp.pairs {
        // beta(a,b) = zeta_nbeta^e of order m; as a power of zeta_m it is
        // zeta_m^(e / (nbeta/m)).
        let step = nbeta / p.m;
        debug_assert_eq!(p.beta_exponent % step, 0);
        let k = (p.beta_exponent / step) % p.m;
        let eps_m = CycRational::root_of_unity(p.m, k as i64)?;
        let eps = eps_m.embed(crate::zn::lcm(p.m, scalar_order))?;
        gens.push(epsilon_generators_with(p.m as usize, &eps)?);
    }
    let ai: Vec<usize> = decomp
        .pairs
        .iter()
        .map(|p| group.index_of(&p.a).unwrap())
        .collect();
    let bi: Vec<usize> = decomp
        .pairs
        .iter()
        .map(|p| group.index_of(&p.b).unwrap())
        .collect();
    let mut basis = Vec::with_capacity(order);
    for t in 0..order {
        // p_i, q_i from pairing against b_i and a_i.
        let mut factors: Vec<Mat> = Vec::new();
        for (i, p) in decomp.pairs.iter().enumerate() {
            let step = nbeta / p.m;
            let pe = beta.exponent_at(t, bi[i]);
            let qe = beta.exponent_at(ai[i], t);
            debug_assert!(pe.is_multiple_of(step) && qe.is_multiple_of(step));
            // Solve beta(a,b)^p = beta(t, b) in exponents modulo m.
            let base = (p.beta_exponent / step) % p.m;
            let dlog = |target: u64| -> Result<u64> {
                let mut acc = 0u64;
                for cand in 0..p.m {
                    if acc == target {
                        return Ok(cand);
                    }
                    acc = (acc + base) % p.m;
                }
                Err(Error::domain("discrete log failed; degenerate pair"))
            };
            let pi = dlog((pe / step) % p.m)?;
            let qi = dlog((qe / step) % p.m)?;
            let (x, y) = &gens[i];
            let mut f = Mat::identity(p.m as usize);
            for _ in 0..pi {
                f = f.mul(y)?;
            }
            for _ in 0..qi {
                f = f.mul(x)?;
            }
            factors.push(f);
        }
        let mut acc = Mat::identity(1);
        for f in &factors {
            acc = acc.kron(f)?;
        }
        basis.push(acc);
    }
    let alg = GradedMatrixAlgebra {
        group: group.clone(),
        n: matrix_size as usize,
        scalar_order,
        basis,
    };
    // Division grading sanity: every basis matrix invertible.
    for m in &alg.basis {
        if m.invert()?.is_none() {
            return Err(Error::domain("homogeneous basis matrix is singular"));
        }
    }
    Ok(alg)
}

/// Degree of `e_ij (x) d` in the elementary grading attached to `gamma`:
/// `gamma_i * deg(d) * gamma_j^{-1}`.
pub fn elementary_degree(
    ctx: &DegreeCtx,
    gamma: &[Degree],
    i: usize,
    j: usize,
    d_degree: &Degree,
) -> Result<Degree> {
    if i >= gamma.len() || j >= gamma.len() {
        return Err(Error::domain("matrix unit index out of range"));
    }
    let gj_inv = ctx.inv(&gamma[j])?;
    ctx.mul(&ctx.mul(&gamma[i], d_degree)?, &gj_inv)
}

/// Flatten `{X^i Y^j}` into row vectors for a rank check.
pub fn monomial_span_rank(n: usize) -> Result<usize> {
    let (x, y) = epsilon_generators(n)?;
    let mut rows = Vec::with_capacity(n * n);
    let mut xi = Mat::identity(n);
    for _ in 0..n {
        let mut xiyj = xi.clone();
        for _ in 0..n {
            let mut row = Vec::with_capacity(n * n);
            for r in 0..n {
                for c in 0..n {
                    row.push(xiyj.at(r, c).clone());
                }
            }
            rows.push(row);
            xiyj = xiyj.mul(&y)?;
        }
        xi = xi.mul(&x)?;
    }
    Mat::from_rows(rows).rank()
}
