//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! A value is a rational polynomial in `zeta_N` reduced modulo the `N`-th
//! cyclotomic polynomial, stored on the power basis
//! `1, zeta, ..., zeta^(phi(N)-1)`.  The representation is canonical for a
//! fixed `N`, so equality at equal `N` is coefficient-wise; operands with
//! different `N` are first embedded into `Q(zeta_lcm)` along
//! `zeta_n -> zeta_m^(m/n)`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::zn::lcm;
use crate::{Error, Result};

/// Cap on the root order; keeps `phi(N)`-sized polynomial arithmetic sane.
pub const MAX_ROOT_ORDER: u64 = 4096;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Euler totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

// --- dense rational polynomials, little-endian coefficients ---

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    poly_trim(&mut out);
    out
}

/// Exact division with remainder by a monic-leading divisor.
fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem: Vec<BigRational> = num.to_vec();
    poly_trim(&mut rem);
    let dlead = den.last().unwrap().clone();
    let dd = den.len() - 1;
    if rem.len() <= dd && !(rem.len() == 1 && dd == 0) {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd || (dd == 0 && !rem.iter().all(|c| c.is_zero())) {
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap() / &dlead;
        if c.is_zero() {
            rem.pop();
            poly_trim(&mut rem);
            if rem.len() <= dd {
                break;
            }
            continue;
        }
        quot[k] = c.clone();
        for (i, di) in den.iter().enumerate() {
            let v = &c * di;
            rem[k + i] -= v;
        }
        poly_trim(&mut rem);
        if rem.len() <= dd {
            break;
        }
        if rem.iter().all(|c| c.is_zero()) {
            break;
        }
    }
    poly_trim(&mut quot);
    poly_trim(&mut rem);
    (quot, rem)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|k| n.is_multiple_of(*k)).collect();
    d.sort_unstable();
    d
}

/// The `N`-th cyclotomic polynomial, by recursive exact division of
/// `x^N - 1` by the cyclotomic polynomials of the proper divisors.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<BigRational>> {
    if n == 0 {
        return Err(Error::domain("cyclotomic polynomial needs N >= 1"));
    }
    if n > MAX_ROOT_ORDER {
        return Err(Error::domain(format!(
            "root order {n} exceeds the cap {MAX_ROOT_ORDER}"
        )));
    }
    Ok(cyclotomic_cached(n).as_ref().clone())
}

fn cyclotomic_cached(n: u64) -> Arc<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, Arc<Vec<BigRational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let value = Arc::new(compute_cyclotomic(n));
    cache.lock().unwrap().insert(n, value.clone());
    value
}

fn compute_cyclotomic(n: u64) -> Vec<BigRational> {
    // x^n - 1
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    let mut den = vec![BigRational::one()];
    for d in divisors(n) {
        if d == n {
            continue;
        }
        den = poly_mul(&den, &cyclotomic_cached(d));
    }
    let (quot, rem) = poly_divrem(&num, &den);
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Exact element of `Q(zeta_N)`.
#[derive(Debug, Clone)]
pub struct CycRational {
    n: u64,
    /// Length `phi(N)`, power-basis coefficients.
    coeffs: Vec<BigRational>,
}

impl CycRational {
    pub fn root_order(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn zero() -> Self {
        CycRational {
            n: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        CycRational {
            n: 1,
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycRational {
            n: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(i: i64) -> Self {
        Self::from_rational(rat_int(i))
    }

    /// Build from an arbitrary-degree polynomial in `zeta_N`.
    pub fn from_poly(n: u64, poly: Vec<BigRational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("root order must be positive"));
        }
        if n > MAX_ROOT_ORDER {
            return Err(Error::domain(format!(
                "root order {n} exceeds the cap {MAX_ROOT_ORDER}"
            )));
        }
        let modulus = cyclotomic_cached(n);
        let mut p = poly;
        poly_trim(&mut p);
        let (_, mut rem) = poly_divrem(&p, &modulus);
        let deg = euler_phi(n) as usize;
        rem.resize(deg, BigRational::zero());
        Ok(CycRational { n, coeffs: rem })
    }

    /// `zeta_N^k`, with `zeta_N` the canonical primitive `N`-th root.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("root order must be positive"));
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Self::from_poly(n, poly)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational part if the value lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into `Q(zeta_M)` for `N | M`.
    pub fn embed(&self, m: u64) -> Result<Self> {
        if !m.is_multiple_of(self.n) {
            return Err(Error::domain("embedding target must be a multiple of N"));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let step = (m / self.n) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * step] = c.clone();
            }
        }
        Self::from_poly(m, poly)
    }

    fn unify(a: &CycRational, b: &CycRational) -> Result<(CycRational, CycRational)> {
        let m = lcm(a.n, b.n);
        Ok((a.embed(m)?, b.embed(m)?))
    }

    pub fn add(&self, other: &CycRational) -> Result<CycRational> {
        let (mut a, b) = Self::unify(self, other)?;
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        Ok(a)
    }

    pub fn sub(&self, other: &CycRational) -> Result<CycRational> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycRational {
        CycRational {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycRational) -> Result<CycRational> {
        let (a, b) = Self::unify(self, other)?;
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        Self::from_poly(a.n, prod)
    }

    pub fn scale(&self, q: &BigRational) -> CycRational {
        CycRational {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[x]` against the (irreducible) cyclotomic modulus.
    pub fn inv(&self) -> Result<CycRational> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus = cyclotomic_cached(self.n);
        // Extended gcd of (a, modulus); the gcd is a nonzero constant.
        let mut r0: Vec<BigRational> = modulus.as_ref().clone();
        let mut r1: Vec<BigRational> = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divrem(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s = s0.clone();
            s.resize(s.len().max(qs.len()), BigRational::zero());
            for (i, c) in qs.iter().enumerate() {
                s[i] -= c;
            }
            poly_trim(&mut s);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 = gcd = constant; s0 * a = r0 (mod modulus).
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let inv_poly: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        let out = Self::from_poly(self.n, inv_poly)?;
        debug_assert!(out.mul(self).map(|p| p.is_one()).unwrap_or(false));
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Result<CycRational> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycRational::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }
}

impl PartialEq for CycRational {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        match Self::unify(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CycRational {}

/// Render a rational without a denominator of 1.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.denom().is_negative() {
        // num-rational keeps denominators positive; defensive only.
        format!("{}/{}", -q.numer(), -q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials_small() {
        // Phi_1 = x - 1
        let p1 = cyclotomic_polynomial(1).unwrap();
        assert_eq!(p1, vec![rat_int(-1), rat_int(1)]);
        // Phi_4 = x^2 + 1, derived by dividing x^4 - 1 by Phi_1 Phi_2.
        let p4 = cyclotomic_polynomial(4).unwrap();
        assert_eq!(p4, vec![rat_int(1), rat_int(0), rat_int(1)]);
        // Phi_6 = x^2 - x + 1.
        let p6 = cyclotomic_polynomial(6).unwrap();
        assert_eq!(p6, vec![rat_int(1), rat_int(-1), rat_int(1)]);
    }

    #[test]
    fn primitive_square_root_is_minus_one() {
        let z = CycRational::root_of_unity(2, 1).unwrap();
        assert_eq!(z, CycRational::from_integer(-1));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycRational::root_of_unity(4, 1).unwrap();
        assert_eq!(i.mul(&i).unwrap(), CycRational::from_integer(-1));
    }

    #[test]
    fn inverse_of_zeta3() {
        let z = CycRational::root_of_unity(3, 1).unwrap();
        let z2 = CycRational::root_of_unity(3, 2).unwrap();
        assert_eq!(z.inv().unwrap(), z2);
    }

    #[test]
    fn root_orders_are_exact() {
        for n in 1..=12u64 {
            let z = CycRational::root_of_unity(n, 1).unwrap();
            let mut acc = CycRational::one();
            for k in 1..=n {
                acc = acc.mul(&z).unwrap();
                if k < n {
                    assert!(!acc.is_one(), "zeta_{n} has order < {n}");
                }
            }
            assert!(acc.is_one());
        }
    }

    #[test]
    fn product_over_primitive_roots_is_cyclotomic() {
        // prod_{gcd(k,n)=1} (x - zeta^k) = Phi_n, checked by evaluating
        // both sides at a few rational points via exact arithmetic.
        for n in [1u64, 2, 3, 4, 6, 8, 12] {
            let phi = cyclotomic_polynomial(n).unwrap();
            for x_at in [2i64, -3, 5] {
                let x = CycRational::from_integer(x_at);
                let mut lhs = CycRational::one();
                for k in 0..n {
                    if gcd_u(k, n) == 1 {
                        let z = CycRational::root_of_unity(n, k as i64).unwrap();
                        lhs = lhs.mul(&x.sub(&z).unwrap()).unwrap();
                    }
                }
                let mut rhs = CycRational::zero();
                let mut pw = CycRational::one();
                for c in &phi {
                    rhs = rhs.add(&pw.scale(c)).unwrap();
                    pw = pw.mul(&x).unwrap();
                }
                assert_eq!(lhs, rhs, "n = {n}, x = {x_at}");
            }
        }
    }

    fn gcd_u(a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }

    #[test]
    fn embedding_preserves_arithmetic() {
        let a = CycRational::root_of_unity(3, 1).unwrap();
        let b = CycRational::root_of_unity(3, 2).unwrap();
        let ab = a.mul(&b).unwrap();
        let ea = a.embed(12).unwrap();
        let eb = b.embed(12).unwrap();
        assert_eq!(ea.mul(&eb).unwrap(), ab.embed(12).unwrap());
        assert_eq!(ea.add(&eb).unwrap(), a.add(&b).unwrap().embed(12).unwrap());
    }

    #[test]
    fn mixed_order_equality() {
        // zeta_4^2 = -1 regardless of the ambient field.
        let z42 = CycRational::root_of_unity(4, 2).unwrap();
        assert_eq!(z42, CycRational::from_integer(-1));
        // zeta_6 = -zeta_3^2.
        let z6 = CycRational::root_of_unity(6, 1).unwrap();
        let z3sq = CycRational::root_of_unity(3, 2).unwrap().neg();
        assert_eq!(z6, z3sq);
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(CycRational::zero().inv(), Err(Error::DivisionByZero));
    }
}
