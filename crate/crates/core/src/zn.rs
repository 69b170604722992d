//! Linear algebra over the residue ring `Z_N`.
//!
//! Everything cohomological in this crate reduces to systems of the form
//! `A x = b (mod N)`: coboundary witnesses, cocycle solution spaces and
//! coset canonicalization.  The workhorse is the Howell form, the unique
//! echelon generating set of a subgroup of `Z_N^m`.  It yields, in one
//! mechanism, solvability tests, a canonical representative of every coset
//! and the lexicographically smallest solution of an affine system.
//!
//! Entries are kept reduced to `[0, N)`.  `N` is capped well below `2^31`
//! by the callers, so products of two reduced entries fit in `u64`.

/// Row-generated subgroup of `Z_N^m` in Howell normal form.
///
/// Rows are echelon: leading columns strictly increase, each leading entry
/// divides `N`, and entries above a leading entry are reduced modulo it.
/// The span contains every vector of the original generating set, and for
/// each column `j` the set `{v in span : v_0 = .. = v_{j-1} = 0}` is
/// spanned by the rows with leading column `>= j`.
#[derive(Debug, Clone)]
pub struct Howell {
    pub modulus: u64,
    pub cols: usize,
    /// Echelon rows; `pivots[i]` is the leading column of `rows[i]`.
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Modular inverse of `a` modulo `m` for `gcd(a, m) = 1`.
fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inv_mod of a non-unit");
    t.rem_euclid(m as i128) as u64
}

/// Lift a unit modulo `m/g` to a unit modulo `m`.
///
/// Given `u` with `gcd(u, m/g) = 1`, returns `u + k*(m/g)` coprime to `m`.
fn lift_unit(u: u64, m: u64, sub: u64) -> u64 {
    let mut cand = u % m;
    if cand == 0 {
        cand = sub % m;
    }
    let mut k = 0u64;
    loop {
        if gcd(cand, m) == 1 {
            return cand;
        }
        k += 1;
        debug_assert!(k <= m, "unit lift failed");
        cand = (cand + sub) % m;
        if cand == 0 {
            cand = sub % m;
        }
    }
}

fn row_sub_scaled(dst: &mut [u64], src: &[u64], q: u64, n: u64) {
    if q == 0 {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        let sub = (q * *s) % n;
        *d = (*d + n - sub) % n;
    }
}

fn row_scale(row: &mut [u64], c: u64, n: u64) {
    for e in row.iter_mut() {
        *e = (*e * c) % n;
    }
}

impl Howell {
    /// Howell form of the subgroup generated by `gens`.
    pub fn from_generators(gens: Vec<Vec<u64>>, cols: usize, modulus: u64) -> Self {
        assert!(modulus >= 1);
        let n = modulus;
        let mut work: Vec<Vec<u64>> = gens
            .into_iter()
            .map(|mut r| {
                assert_eq!(r.len(), cols);
                for e in r.iter_mut() {
                    *e %= n;
                }
                r
            })
            .filter(|r| r.iter().any(|&e| e != 0))
            .collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();

        for j in 0..cols {
            // Rows in `work` all vanish on columns < j.
            let mut active: Vec<Vec<u64>> = Vec::new();
            let mut rest: Vec<Vec<u64>> = Vec::new();
            for r in work.drain(..) {
                if r[j] != 0 {
                    active.push(r);
                } else {
                    rest.push(r);
                }
            }
            if active.is_empty() {
                work = rest;
                continue;
            }
            // Combine the active rows until a single one carries the gcd
            // of the column-j projection.
            while active.len() > 1 {
                let mut min_idx = 0;
                for (i, r) in active.iter().enumerate() {
                    if r[j] < active[min_idx][j] {
                        min_idx = i;
                    }
                }
                let base = active.swap_remove(min_idx);
                let mut still = Vec::new();
                for mut r in active.drain(..) {
                    let q = r[j] / base[j];
                    row_sub_scaled(&mut r, &base, q, n);
                    if r[j] != 0 {
                        still.push(r);
                    } else if r.iter().any(|&e| e != 0) {
                        rest.push(r);
                    }
                }
                active = still;
                active.push(base);
            }
            let mut pivot = active.pop().unwrap();
            // Normalize the leading entry to gcd(entry, N).
            let g = gcd(pivot[j], n);
            if pivot[j] != g {
                let unit = lift_unit(inv_mod(pivot[j] / g, n / g), n, n / g);
                row_scale(&mut pivot, unit, n);
                debug_assert_eq!(pivot[j], g);
            }
            // The annihilator (N/g) * pivot starts strictly later; keep it.
            let mut ann = pivot.clone();
            row_scale(&mut ann, n / g, n);
            debug_assert_eq!(ann[j], 0);
            if ann.iter().any(|&e| e != 0) {
                rest.push(ann);
            }
            rows.push(pivot);
            pivots.push(j);
            work = rest;
        }

        // Reduce entries above each pivot modulo the pivot value.
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            let j = pivots[i];
            let g = pivot_row[j];
            for r in head.iter_mut() {
                let q = r[j] / g;
                row_sub_scaled(r, pivot_row, q, n);
            }
        }
        Howell {
            modulus: n,
            cols,
            rows,
            pivots,
        }
    }

    /// Canonical representative of `v + span`.
    ///
    /// Two vectors reduce to the same output iff they lie in the same
    /// coset.  The output is also the lexicographically smallest element
    /// of the coset.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let mut out: Vec<u64> = v.iter().map(|&e| e % n).collect();
        assert_eq!(out.len(), self.cols);
        for (row, &j) in self.rows.iter().zip(self.pivots.iter()) {
            let q = out[j] / row[j];
            row_sub_scaled(&mut out, row, q, n);
        }
        out
    }

    /// Does `v` lie in the span?
    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&e| e == 0)
    }

    /// Size of the spanned subgroup.
    pub fn span_size(&self) -> u128 {
        self.rows
            .iter()
            .zip(self.pivots.iter())
            .map(|(r, &j)| (self.modulus / r[j]) as u128)
            .product()
    }

    /// Visit every element of the span exactly once, in odometer order
    /// over the canonical coefficients `c_i in [0, N / lead_i)`.  Each
    /// element has a unique such representation.  Returns `false` from the
    /// visitor to stop early.
    pub fn for_each_element(&self, mut visit: impl FnMut(&[u64]) -> bool) {
        let n = self.modulus;
        let dims = self.rows.len();
        let ranges: Vec<u64> = self
            .rows
            .iter()
            .zip(self.pivots.iter())
            .map(|(r, &j)| n / r[j])
            .collect();
        let mut coeff = vec![0u64; dims];
        // partial[i] = sum of the first i scaled rows.
        let mut partial: Vec<Vec<u64>> = vec![vec![0u64; self.cols]; dims + 1];
        loop {
            if !visit(&partial[dims]) {
                return;
            }
            let mut pos = dims;
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                coeff[pos] += 1;
                if coeff[pos] < ranges[pos] {
                    break;
                }
                coeff[pos] = 0;
            }
            // Prefixes before `pos` are untouched; rebuild the rest.
            for i in pos..dims {
                let (head, tail) = partial.split_at_mut(i + 1);
                let prev = &head[i];
                let next = &mut tail[0];
                let c = coeff[i];
                for (x, (&p, &r)) in next.iter_mut().zip(prev.iter().zip(self.rows[i].iter())) {
                    *x = (p + c * r) % n;
                }
            }
        }
    }
}

/// Solution of an affine system over `Z_N`, exposed as a particular
/// solution plus a Howell form of the solution subgroup.
pub struct AffineSolution {
    pub particular: Vec<u64>,
    pub kernel: Howell,
}

impl AffineSolution {
    /// Lexicographically smallest solution vector.
    pub fn lex_min(&self) -> Vec<u64> {
        self.kernel.reduce(&self.particular)
    }
}

/// Solve `A x = b (mod N)` where `rows` are the equations of `A`.
///
/// Returns `None` when the system has no solution.  The kernel of the
/// returned solution describes all solutions.
pub fn solve_mod(rows: &[Vec<u64>], b: &[u64], unknowns: usize, n: u64) -> Option<AffineSolution> {
    assert_eq!(rows.len(), b.len());
    // First compress the equations: Howell form of the augmented rows
    // [A | b] keeps the solution set intact (all Howell row operations are
    // invertible or add consequences).
    let mut aug: Vec<Vec<u64>> = Vec::with_capacity(rows.len());
    for (r, &bi) in rows.iter().zip(b.iter()) {
        assert_eq!(r.len(), unknowns);
        let mut row = r.clone();
        row.push(bi % n);
        aug.push(row);
    }
    let reduced = Howell::from_generators(aug, unknowns + 1, n);

    // Image trick on the compressed system: the row space of
    // [col_j | e_j] is {(A' x, x)}, so reducing (b', 0) flags membership
    // of b' in the image and recovers a preimage; rows supported only on
    // the tail generate the kernel.
    let m = reduced.rows.len();
    let mut image_rows: Vec<Vec<u64>> = Vec::with_capacity(unknowns);
    for j in 0..unknowns {
        let mut row = vec![0u64; m + unknowns];
        for (i, r) in reduced.rows.iter().enumerate() {
            row[i] = r[j];
        }
        row[m + j] = 1;
        image_rows.push(row);
    }
    let image = Howell::from_generators(image_rows, m + unknowns, n);

    let mut target = vec![0u64; m + unknowns];
    for (i, r) in reduced.rows.iter().enumerate() {
        target[i] = r[unknowns];
    }
    let red = image.reduce(&target);
    if red[..m].iter().any(|&e| e != 0) {
        return None;
    }
    // target - combination = (0, tail)  =>  A x0 = b' with x0 = -tail.
    let particular: Vec<u64> = red[m..].iter().map(|&e| (n - e) % n).collect();

    let mut kernel_gens: Vec<Vec<u64>> = Vec::new();
    for (row, &p) in image.rows.iter().zip(image.pivots.iter()) {
        if p >= m {
            kernel_gens.push(row[m..].to_vec());
        }
    }
    let kernel = Howell::from_generators(kernel_gens, unknowns, n);

    debug_assert!({
        let x = &particular;
        rows.iter().zip(b.iter()).all(|(r, &bi)| {
            let s: u64 = r
                .iter()
                .zip(x.iter())
                .fold(0u64, |acc, (&a, &xi)| (acc + a * xi) % n);
            s == bi % n
        })
    });
    Some(AffineSolution { particular, kernel })
}

/// Howell form of `{x : A x = 0 (mod N)}`.
pub fn kernel_mod(rows: &[Vec<u64>], unknowns: usize, n: u64) -> Howell {
    let b = vec![0u64; rows.len()];
    solve_mod(rows, &b, unknowns, n)
        .expect("homogeneous system is always solvable")
        .kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn howell_reduce_is_coset_invariant() {
        // Subgroup of Z_4^2 generated by (1, 3).
        let h = Howell::from_generators(vec![vec![1, 3]], 2, 4);
        let a = h.reduce(&[2, 1]);
        let b = h.reduce(&[3, 0]); // (2,1) + (1,3) = (3,0)
        assert_eq!(a, b);
        assert_eq!(a, vec![0, 3]); // lex-min of {(2,1),(3,0),(0,3),(1,2)}
    }

    #[test]
    fn span_enumeration_is_exact() {
        let h = Howell::from_generators(vec![vec![2, 0, 2], vec![0, 2, 2]], 3, 4);
        let mut seen = std::collections::BTreeSet::new();
        h.for_each_element(|v| seen.insert(v.to_vec()));
        assert_eq!(seen.len() as u128, h.span_size());
        for v in &seen {
            assert!(h.contains(v));
        }
    }

    #[test]
    fn solve_mod_finds_lex_min() {
        // x0 + x1 = 2 (mod 4), 2*x1 = 2 (mod 4).
        let rows = vec![vec![1, 1], vec![0, 2]];
        let sol = solve_mod(&rows, &[2, 2], 2, 4).unwrap();
        let x = sol.lex_min();
        assert_eq!((x[0] + x[1]) % 4, 2);
        assert_eq!((2 * x[1]) % 4, 2);
        // Solutions are (1,1) and (3,3); lex-min picks (1,1).
        assert_eq!(x, vec![1, 1]);
    }

    #[test]
    fn solve_mod_detects_insolvable() {
        let rows = vec![vec![2]];
        assert!(solve_mod(&rows, &[1], 1, 4).is_none());
        assert!(solve_mod(&rows, &[2], 1, 4).is_some());
    }

    #[test]
    fn annihilator_rows_are_kept() {
        // <2> in Z_4: the annihilator of the single generator matters for
        // membership of (2, 2) vs (2, 0).
        let h = Howell::from_generators(vec![vec![2, 2]], 2, 4);
        assert!(h.contains(&[2, 2]));
        assert!(!h.contains(&[2, 0]));
        // 2*(2,2) = (0,0): span has order 2.
        assert_eq!(h.span_size(), 2);
    }
}
