//! Factor-set algebra: 2-cocycles with values in the `N`-th roots of
//! unity, coboundaries, the bar cocycle, cohomology tests and the second
//! cohomology of abelian groups through alternating bicharacters.
//!
//! A cocycle is stored as its exponent table: `sigma(u, v) =
//! zeta_N^(table[u][v])`.  Working in exponents turns every cohomological
//! question into `Z_N` linear algebra (see [`crate::zn`]).

use crate::groups::{GroupSpec, GroupTable};
use crate::zn::{self, lcm};
use crate::{Error, Result};

/// A `mu_N`-valued 2-cocycle candidate on a finite group, in exponent
/// form.  Use [`Cocycle::is_cocycle`] to test the cocycle identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    group: GroupSpec,
    n: u64,
    table: Vec<Vec<u64>>,
}

/// A map `T -> mu_N` in exponent form, indexed by the canonical element
/// enumeration.  Serves as the `lambda` of coboundaries and the `mu` of
/// involutions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExponentMap {
    group: GroupSpec,
    n: u64,
    values: Vec<u64>,
}

/// Alternating bicharacter on an abelian group, in exponent form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    group: GroupSpec,
    n: u64,
    table: Vec<Vec<u64>>,
}

impl ExponentMap {
    pub fn new(group: GroupSpec, n: u64, mut values: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        if values.len() != group.order() {
            return Err(Error::domain(
                "exponent map length must equal the group order",
            ));
        }
        for v in values.iter_mut() {
            *v %= n;
        }
        Ok(ExponentMap { group, n, values })
    }

    pub fn zero(group: GroupSpec, n: u64) -> Self {
        let order = group.order();
        ExponentMap {
            group,
            n,
            values: vec![0; order],
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, index: usize) -> u64 {
        self.values[index]
    }

    /// Rescale exponents into `mu_M` for `N | M`.
    pub fn rescale(&self, m: u64) -> Result<ExponentMap> {
        if !m.is_multiple_of(self.n) {
            return Err(Error::domain("rescale target must be a multiple of N"));
        }
        let f = m / self.n;
        Ok(ExponentMap {
            group: self.group.clone(),
            n: m,
            values: self.values.iter().map(|&v| v * f).collect(),
        })
    }

    pub fn add(&self, other: &ExponentMap) -> Result<ExponentMap> {
        if self.group != other.group || self.n != other.n {
            return Err(Error::domain("exponent maps over different data"));
        }
        Ok(ExponentMap {
            group: self.group.clone(),
            n: self.n,
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(&a, &b)| (a + b) % self.n)
                .collect(),
        })
    }

    pub fn neg(&self) -> ExponentMap {
        ExponentMap {
            group: self.group.clone(),
            n: self.n,
            values: self.values.iter().map(|&v| (self.n - v) % self.n).collect(),
        }
    }
}

impl Cocycle {
    pub fn new(group: GroupSpec, n: u64, mut table: Vec<Vec<u64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        let order = group.order();
        if table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(Error::domain("cocycle table must be |T| x |T|"));
        }
        for row in table.iter_mut() {
            for e in row.iter_mut() {
                *e %= n;
            }
        }
        Ok(Cocycle { group, n, table })
    }

    pub fn trivial(group: GroupSpec, n: u64) -> Self {
        let order = group.order();
        Cocycle {
            group,
            n,
            table: vec![vec![0; order]; order],
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn table(&self) -> &[Vec<u64>] {
        &self.table
    }

    pub fn exponent_at(&self, u: usize, v: usize) -> u64 {
        self.table[u][v]
    }

    pub fn is_trivial_table(&self) -> bool {
        self.table.iter().all(|r| r.iter().all(|&e| e == 0))
    }

    /// Flatten row-major, for the `Z_N` solvers.
    pub fn flatten(&self) -> Vec<u64> {
        self.table.iter().flatten().copied().collect()
    }

    pub fn from_flat(group: GroupSpec, n: u64, flat: &[u64]) -> Result<Self> {
        let order = group.order();
        if flat.len() != order * order {
            return Err(Error::domain("flattened cocycle has wrong length"));
        }
        let table = (0..order)
            .map(|i| flat[i * order..(i + 1) * order].to_vec())
            .collect();
        Cocycle::new(group, n, table)
    }

    /// The 2-cocycle identity `sigma(u,v) sigma(uv,w) = sigma(u,vw)
    /// sigma(v,w)` over all triples, in exponent form.
    pub fn is_cocycle(&self) -> bool {
        let gt = self.group.op_table();
        let order = self.group.order();
        let n = self.n;
        for u in 0..order {
            for v in 0..order {
                let uv = gt.op[u][v];
                let tuv = self.table[u][v];
                for w in 0..order {
                    let lhs = (tuv + self.table[uv][w]) % n;
                    let rhs = (self.table[u][gt.op[v][w]] + self.table[v][w]) % n;
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `sigma_bar(u, v) = sigma(v^{-1}, u^{-1})`.
    pub fn bar(&self) -> Cocycle {
        let gt = self.group.op_table();
        let order = self.group.order();
        let table = (0..order)
            .map(|u| {
                (0..order)
                    .map(|v| self.table[gt.inv[v]][gt.inv[u]])
                    .collect()
            })
            .collect();
        Cocycle {
            group: self.group.clone(),
            n: self.n,
            table,
        }
    }

    /// Pointwise `sigma_1^(e_1) * sigma_2^(e_2)` in exponents.
    pub fn combine(&self, other: &Cocycle, e1: i64, e2: i64) -> Result<Cocycle> {
        if self.group != other.group || self.n != other.n {
            return Err(Error::domain("cocycles over different groups or moduli"));
        }
        let n = self.n as i128;
        let order = self.group.order();
        let table = (0..order)
            .map(|u| {
                (0..order)
                    .map(|v| {
                        let val = e1 as i128 * self.table[u][v] as i128
                            + e2 as i128 * other.table[u][v] as i128;
                        val.rem_euclid(n) as u64
                    })
                    .collect()
            })
            .collect();
        Ok(Cocycle {
            group: self.group.clone(),
            n: self.n,
            table,
        })
    }

    pub fn inverse(&self) -> Cocycle {
        self.combine(self, -1, 0).unwrap()
    }

    pub fn square(&self) -> Cocycle {
        self.combine(self, 2, 0).unwrap()
    }

    /// Cohomologous representative with trivial border
    /// (`sigma'(u, 1) = sigma'(1, u) = 1`), plus the witness `lambda`.
    ///
    /// For a valid cocycle the border is the constant `sigma(1,1)`, so the
    /// constant map `lambda(u) = -table[u][1]` works and is deterministic.
    pub fn normalize(&self) -> (Cocycle, ExponentMap) {
        let gt = self.group.op_table();
        let lambda = ExponentMap {
            group: self.group.clone(),
            n: self.n,
            values: (0..self.group.order())
                .map(|u| (self.n - self.table[u][gt.id] % self.n) % self.n)
                .collect(),
        };
        let delta = coboundary(&lambda);
        let normalized = self.combine(&delta, 1, 1).unwrap();
        (normalized, lambda)
    }

    /// Alternating bicharacter `beta(u, v) = sigma(u, v) sigma(v, u)^{-1}`
    /// of a cocycle on an abelian group.
    pub fn bicharacter(&self) -> Result<Bicharacter> {
        if !self.group.is_abelian_spec() {
            return Err(Error::Unsupported(
                "bicharacters are defined for abelian supports".into(),
            ));
        }
        let order = self.group.order();
        let table: Vec<Vec<u64>> = (0..order)
            .map(|u| {
                (0..order)
                    .map(|v| (self.table[u][v] + self.n - self.table[v][u]) % self.n)
                    .collect()
            })
            .collect();
        Bicharacter::new(self.group.clone(), self.n, table)
    }

    /// Does `[sigma]^2 = 1` hold within `mu_N` coefficients?
    pub fn has_square_trivial_class(&self) -> bool {
        let trivial = Cocycle::trivial(self.group.clone(), self.n);
        are_cohomologous(&self.square(), &trivial)
            .expect("same group and modulus by construction")
            .is_some()
    }
}

/// `delta lambda(u, v) = lambda(u) + lambda(v) - lambda(uv)` in exponents.
pub fn coboundary(lambda: &ExponentMap) -> Cocycle {
    let gt = lambda.group.op_table();
    let order = lambda.group.order();
    let n = lambda.n;
    let table = (0..order)
        .map(|u| {
            (0..order)
                .map(|v| (lambda.values[u] + lambda.values[v] + n - lambda.values[gt.op[u][v]]) % n)
                .collect()
        })
        .collect();
    Cocycle {
        group: lambda.group.clone(),
        n,
        table,
    }
}

/// Rows of the coboundary operator as a `Z_N` system: row `(u, v)` has
/// `+1` at `u`, `+1` at `v`, `-1` at `uv` (accumulated).
fn coboundary_rows(gt: &GroupTable, order: usize, n: u64) -> Vec<Vec<u64>> {
    let mut rows = Vec::with_capacity(order * order);
    for u in 0..order {
        for v in 0..order {
            let mut row = vec![0u64; order];
            row[u] = (row[u] + 1) % n;
            row[v] = (row[v] + 1) % n;
            row[gt.op[u][v]] = (row[gt.op[u][v]] + n - 1) % n;
            rows.push(row);
        }
    }
    rows
}

/// Search for `lambda` with `sigma_1 = (delta lambda) * sigma_2`, as a
/// `Z_N` linear system.  `Ok(None)` means not cohomologous within `mu_N`
/// coefficients; the witness is the lexicographically smallest solution.
pub fn are_cohomologous(sigma1: &Cocycle, sigma2: &Cocycle) -> Result<Option<ExponentMap>> {
    if sigma1.group != sigma2.group || sigma1.n != sigma2.n {
        return Err(Error::domain(
            "cohomology test needs matching groups and moduli",
        ));
    }
    let group = &sigma1.group;
    let order = group.order();
    let n = sigma1.n;
    let gt = group.op_table();
    let rows = coboundary_rows(&gt, order, n);
    let mut b = Vec::with_capacity(order * order);
    for u in 0..order {
        for v in 0..order {
            b.push((sigma1.table[u][v] + n - sigma2.table[u][v]) % n);
        }
    }
    let Some(sol) = zn::solve_mod(&rows, &b, order, n) else {
        return Ok(None);
    };
    Ok(Some(ExponentMap {
        group: group.clone(),
        n,
        values: sol.lex_min(),
    }))
}

/// `lambda`-modulus that suffices to decide cohomology over the full
/// multiplicative group of an algebraically closed field: if
/// `delta lambda` is `mu_N`-valued then `lambda^N` is a character, so
/// `lambda` takes values in `mu_(N * exp T)`.
pub fn full_modulus(group: &GroupSpec, n: u64) -> u64 {
    n * group.exponent()
}

/// Like [`are_cohomologous`] but allowing the witness values in
/// `mu_(N*expT)`, which matches cohomology over `F^x`.
pub fn are_cohomologous_fx(sigma1: &Cocycle, sigma2: &Cocycle) -> Result<Option<ExponentMap>> {
    let m = full_modulus(&sigma1.group, sigma1.n);
    let s1 = sigma1.rescale(m)?;
    let s2 = sigma2.rescale(m)?;
    are_cohomologous(&s1, &s2)
}

impl Cocycle {
    /// Rescale exponents into `mu_M` for `N | M` (same cocycle values).
    pub fn rescale(&self, m: u64) -> Result<Cocycle> {
        if !m.is_multiple_of(self.n) {
            return Err(Error::domain("rescale target must be a multiple of N"));
        }
        let f = m / self.n;
        Ok(Cocycle {
            group: self.group.clone(),
            n: m,
            table: self
                .table
                .iter()
                .map(|r| r.iter().map(|&e| e * f).collect())
                .collect(),
        })
    }
}

impl Bicharacter {
    /// Validates multiplicativity in each argument and the alternating
    /// property `beta(u, u) = 1`.
    pub fn new(group: GroupSpec, n: u64, mut table: Vec<Vec<u64>>) -> Result<Self> {
        if !group.is_abelian_spec() {
            return Err(Error::Unsupported(
                "bicharacters are defined for abelian groups".into(),
            ));
        }
        if n == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        let order = group.order();
        if table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(Error::domain("bicharacter table must be |T| x |T|"));
        }
        for row in table.iter_mut() {
            for e in row.iter_mut() {
                *e %= n;
            }
        }
        let gt = group.op_table();
        for u in 0..order {
            if table[u][u] != 0 {
                return Err(Error::domain("bicharacter is not alternating"));
            }
            for v in 0..order {
                for w in 0..order {
                    if table[gt.op[u][v]][w] != (table[u][w] + table[v][w]) % n
                        || table[w][gt.op[u][v]] != (table[w][u] + table[w][v]) % n
                    {
                        return Err(Error::domain("bicharacter is not bimultiplicative"));
                    }
                }
            }
        }
        Ok(Bicharacter { group, n, table })
    }

    pub fn trivial(group: GroupSpec, n: u64) -> Result<Self> {
        let order = group.order();
        Bicharacter::new(group, n, vec![vec![0; order]; order])
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn exponent_at(&self, u: usize, v: usize) -> u64 {
        self.table[u][v]
    }

    /// No `u != 1` pairs trivially with everything.
    pub fn is_nondegenerate(&self) -> bool {
        let gt = self.group.op_table();
        let order = self.group.order();
        (0..order).all(|u| u == gt.id || (0..order).any(|v| self.table[u][v] != 0))
    }
}

/// One representative cocycle per alternating `mu_N`-valued bicharacter
/// of an abelian group, pairwise non-cohomologous.
///
/// The representative for `beta` is the standard bilinear form on the
/// stored generators: `sigma_beta(u, v) = prod_{i<j}
/// beta(e_i, e_j)^(u_i v_j)`.
pub fn h2_abelian(group: &GroupSpec, n: u64) -> Result<Vec<Cocycle>> {
    let factors = group.factors()?.to_vec();
    if n == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    let exponent = factors.iter().fold(1u64, |acc, &d| lcm(acc, d));
    if !n.is_multiple_of(exponent) {
        return Err(Error::domain(format!(
            "N = {n} must be a multiple of the group exponent {exponent}, otherwise classes are missed"
        )));
    }
    let r = factors.len();
    let order = group.order();
    // Admissible values of beta(e_i, e_j) are the multiples of
    // lcm(N/d_i, N/d_j); there are gcd(d_i, d_j) of them.
    let mut pair_steps = Vec::new();
    for i in 0..r {
        for j in (i + 1)..r {
            let step = lcm(n / factors[i], n / factors[j]);
            pair_steps.push(((i, j), step, n / step));
        }
    }
    let elements: Vec<Vec<u64>> = (0..order)
        .map(|idx| match group.element(idx).unwrap() {
            crate::groups::GroupElement::Abelian(e) => e,
            _ => unreachable!(),
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0u64; pair_steps.len()];
    loop {
        // Build the representative for this choice vector.
        let mut table = vec![vec![0u64; order]; order];
        for (u, ue) in elements.iter().enumerate() {
            for (v, ve) in elements.iter().enumerate() {
                let mut acc = 0u64;
                for (&((i, j), step, _), &c) in pair_steps.iter().zip(choice.iter()) {
                    let m = (c * step) % n;
                    acc = (acc + m * (ue[i] % n) % n * (ve[j] % n)) % n;
                }
                table[u][v] = acc;
            }
        }
        out.push(Cocycle {
            group: group.clone(),
            n,
            table,
        });
        // Odometer over the admissible choices.
        let mut pos = pair_steps.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < pair_steps[pos].2 {
                break;
            }
            choice[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupElement;

    fn z(factors: &[u64]) -> GroupSpec {
        GroupSpec::abelian(factors.to_vec()).unwrap()
    }

    /// The Pauli cocycle on Z_2 x Z_2: exponent table u_2 * v_1 (mod 2).
    pub(crate) fn pauli() -> Cocycle {
        let g = z(&[2, 2]);
        let order = g.order();
        let table = (0..order)
            .map(|u| {
                (0..order)
                    .map(|v| {
                        let (ue, ve) = (g.element(u).unwrap(), g.element(v).unwrap());
                        let (GroupElement::Abelian(ue), GroupElement::Abelian(ve)) = (ue, ve)
                        else {
                            unreachable!()
                        };
                        (ue[1] * ve[0]) % 2
                    })
                    .collect()
            })
            .collect();
        Cocycle::new(z(&[2, 2]), 2, table).unwrap()
    }

    #[test]
    fn trivial_table_is_cocycle() {
        for g in [z(&[2]), z(&[2, 2]), z(&[4, 3]), GroupSpec::trivial()] {
            assert!(Cocycle::trivial(g, 4).is_cocycle());
        }
    }

    #[test]
    fn pauli_is_cocycle() {
        assert!(pauli().is_cocycle());
    }

    #[test]
    fn violating_table_is_rejected() {
        let g = z(&[2]);
        let c = Cocycle::new(g, 2, vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert!(!c.is_cocycle());
    }

    #[test]
    fn coboundary_examples() {
        // lambda == 0 gives the trivial cocycle.
        let g = z(&[2]);
        let zero = ExponentMap::zero(g.clone(), 4);
        assert!(coboundary(&zero).is_trivial_table());
        // Z_2, N = 4, lambda = (0, 1): table [[0,0],[0,2]].
        let lambda = ExponentMap::new(g, 4, vec![0, 1]).unwrap();
        let d = coboundary(&lambda);
        assert_eq!(d.table(), &[vec![0, 0], vec![0, 2]]);
        assert!(d.is_cocycle());
    }

    #[test]
    fn coboundary_is_additive_in_lambda() {
        let g = z(&[4, 3]);
        let l1 = ExponentMap::new(g.clone(), 6, vec![0, 1, 2, 3, 4, 5, 0, 1, 2, 3, 4, 5]).unwrap();
        let l2 = ExponentMap::new(g.clone(), 6, vec![3, 1, 4, 1, 5, 0, 2, 2, 3, 5, 1, 0]).unwrap();
        let sum = l1.add(&l2).unwrap();
        assert_eq!(
            coboundary(&sum),
            coboundary(&l1).combine(&coboundary(&l2), 1, 1).unwrap()
        );
    }

    #[test]
    fn bar_of_trivial_is_trivial() {
        let t = Cocycle::trivial(z(&[2, 2]), 2);
        assert!(t.bar().is_trivial_table());
    }

    #[test]
    fn bar_lemma_witness_exact() {
        // sigma * bar(sigma) = coboundary(u -> sigma(u, u^{-1})) holds
        // entry-wise for every valid cocycle; check the Pauli one.
        let sigma = pauli();
        let gt = sigma.group().op_table();
        let lambda = ExponentMap::new(
            sigma.group().clone(),
            sigma.modulus(),
            (0..4).map(|u| sigma.exponent_at(u, gt.inv[u])).collect(),
        )
        .unwrap();
        let lhs = sigma.combine(&sigma.bar(), 1, 1).unwrap();
        assert_eq!(lhs, coboundary(&lambda));
    }

    #[test]
    fn bar_is_an_involution_on_tables() {
        let sigma = pauli();
        assert_eq!(sigma.bar().bar(), sigma);
    }

    #[test]
    fn bar_class_is_inverse_class() {
        // On Z_4 with a nontrivial mu_4-valued cocycle.
        let g = z(&[4]);
        let mut table = vec![vec![0u64; 4]; 4];
        for u in 0..4u64 {
            for v in 0..4u64 {
                // Carry cocycle: zeta^(floor((u+v)/4)) in mu_4.
                table[u as usize][v as usize] = (u + v) / 4;
            }
        }
        let sigma = Cocycle::new(g, 4, table).unwrap();
        assert!(sigma.is_cocycle());
        assert!(are_cohomologous(&sigma.bar(), &sigma.inverse()).unwrap().is_some());
    }

    #[test]
    fn cohomologous_basic_laws() {
        let sigma = pauli();
        // Reflexive with the zero witness.
        let w = are_cohomologous(&sigma, &sigma).unwrap().unwrap();
        assert!(w.values().iter().all(|&v| v == 0));
        // Pauli is not cohomologous to trivial within mu_2 (nontrivial
        // bicharacter): brute-forced over all 16 maps elsewhere.
        let trivial = Cocycle::trivial(sigma.group().clone(), 2);
        assert!(are_cohomologous(&trivial, &sigma).unwrap().is_none());
        // A coboundary is cohomologous to trivial, with any valid witness.
        let lambda = ExponentMap::new(sigma.group().clone(), 2, vec![0, 1, 1, 0]).unwrap();
        let d = coboundary(&lambda);
        let w = are_cohomologous(&d, &trivial).unwrap().unwrap();
        assert_eq!(coboundary(&w), d);
    }

    #[test]
    fn cohomologous_symmetry_and_transitivity() {
        let g = z(&[4]);
        let l1 = ExponentMap::new(g.clone(), 4, vec![0, 1, 2, 3]).unwrap();
        let l2 = ExponentMap::new(g.clone(), 4, vec![0, 3, 1, 2]).unwrap();
        let (a, b) = (coboundary(&l1), coboundary(&l2));
        let w_ab = are_cohomologous(&a, &b).unwrap().unwrap();
        let w_ba = are_cohomologous(&b, &a).unwrap().unwrap();
        // -w_ab is a witness in the other direction.
        assert_eq!(
            coboundary(&w_ab.neg()),
            coboundary(&w_ba)
                .combine(&Cocycle::trivial(g.clone(), 4), 1, 0)
                .unwrap()
        );
        let trivial = Cocycle::trivial(g, 4);
        let w_at = are_cohomologous(&a, &trivial).unwrap().unwrap();
        let w_tb = are_cohomologous(&trivial, &b).unwrap().unwrap();
        // Transitivity via the sum of witnesses.
        assert_eq!(coboundary(&w_at.add(&w_tb).unwrap()), coboundary(&w_ab));
    }

    #[test]
    fn combine_and_normalize() {
        let sigma = pauli();
        // sigma * sigma^{-1} is trivial.
        assert!(sigma
            .combine(&sigma.inverse(), 1, 1)
            .unwrap()
            .is_trivial_table());
        // Combining with a coboundary stays cohomologous.
        let lambda = ExponentMap::new(sigma.group().clone(), 2, vec![0, 1, 0, 1]).unwrap();
        let shifted = sigma.combine(&coboundary(&lambda), 1, 1).unwrap();
        assert!(are_cohomologous(&shifted, &sigma).unwrap().is_some());
        // Normalization: border entries become 0.
        let (norm, witness) = shifted.normalize();
        assert!(norm.is_cocycle());
        let gt = sigma.group().op_table();
        for u in 0..4 {
            assert_eq!(norm.exponent_at(u, gt.id), 0);
            assert_eq!(norm.exponent_at(gt.id, u), 0);
        }
        assert_eq!(norm, shifted.combine(&coboundary(&witness), 1, 1).unwrap());
        // An already-normalized cocycle is unchanged with zero witness.
        let (again, w2) = norm.normalize();
        assert_eq!(again, norm);
        assert!(w2.values().iter().all(|&v| v == 0));
    }

    #[test]
    fn bicharacter_of_pauli() {
        let beta = pauli().bicharacter().unwrap();
        // beta(e1, e2) = -1: indices 2 = (1,0), 1 = (0,1).
        assert_eq!(beta.exponent_at(2, 1), 1);
        assert!(beta.is_nondegenerate());
    }

    #[test]
    fn bicharacter_is_class_invariant() {
        let sigma = pauli();
        let lambda = ExponentMap::new(sigma.group().clone(), 2, vec![0, 1, 1, 1]).unwrap();
        let shifted = sigma.combine(&coboundary(&lambda), 1, 1).unwrap();
        assert_eq!(shifted.bicharacter().unwrap(), sigma.bicharacter().unwrap());
        // Any coboundary has the trivial bicharacter.
        let d = coboundary(&lambda);
        assert!(!d.bicharacter().unwrap().is_nondegenerate());
        assert_eq!(
            d.bicharacter().unwrap(),
            Bicharacter::trivial(sigma.group().clone(), 2).unwrap()
        );
    }

    #[test]
    fn degenerate_cases_of_nondegeneracy() {
        let t = Bicharacter::trivial(z(&[2, 2]), 2).unwrap();
        assert!(!t.is_nondegenerate());
        // Alternating forms on an odd-rank elementary 2-group are always
        // degenerate; brute-force all of them on Z_2^3.
        let g = z(&[2, 2, 2]);
        for reps in h2_abelian(&g, 2).unwrap() {
            let beta = reps.bicharacter().unwrap();
            assert!(!beta.is_nondegenerate());
        }
        // Trivial group: vacuously nondegenerate.
        let triv = Bicharacter::trivial(GroupSpec::trivial(), 2).unwrap();
        assert!(triv.is_nondegenerate());
    }

    #[test]
    fn square_trivial_class() {
        let sigma = pauli();
        assert!(Cocycle::trivial(z(&[2]), 2).has_square_trivial_class());
        assert!(sigma.has_square_trivial_class());
        // Nondegenerate beta on Z_3 x Z_3 has class order 3.
        let g = z(&[3, 3]);
        let reps = h2_abelian(&g, 3).unwrap();
        let nondeg: Vec<_> = reps
            .iter()
            .filter(|c| c.bicharacter().unwrap().is_nondegenerate())
            .collect();
        assert_eq!(nondeg.len(), 2);
        for c in nondeg {
            assert!(!c.has_square_trivial_class());
        }
    }

    #[test]
    fn h2_abelian_counts() {
        assert_eq!(h2_abelian(&z(&[2, 2]), 2).unwrap().len(), 2);
        assert_eq!(h2_abelian(&z(&[4]), 4).unwrap().len(), 1);
        assert_eq!(h2_abelian(&z(&[2]), 2).unwrap().len(), 1);
        assert_eq!(h2_abelian(&z(&[2, 2, 2]), 2).unwrap().len(), 8);
        assert_eq!(h2_abelian(&z(&[4, 2]), 4).unwrap().len(), 2);
        assert_eq!(h2_abelian(&GroupSpec::trivial(), 2).unwrap().len(), 1);
    }

    #[test]
    fn h2_representatives_are_good() {
        let g = z(&[4, 2]);
        let reps = h2_abelian(&g, 4).unwrap();
        for r in &reps {
            assert!(r.is_cocycle());
        }
        // Pairwise non-cohomologous, even over F^x.
        for i in 0..reps.len() {
            for j in (i + 1)..reps.len() {
                assert!(are_cohomologous_fx(&reps[i], &reps[j]).unwrap().is_none());
            }
        }
    }

    #[test]
    fn h2_requires_exponent_dividing_n() {
        assert!(h2_abelian(&z(&[4]), 2).is_err());
    }
}
