//! Finite groups: abelian groups given by their cyclic factors, and
//! arbitrary finite groups given by a Cayley table.
//!
//! Elements of abelian groups are exponent tuples against the stored
//! generators; table-group elements are indices into the table.  The
//! canonical enumeration (used by every table-indexed structure in the
//! crate) is mixed-radix lexicographic for abelian groups, first
//! coordinate most significant, and the raw index order for table groups.

use crate::zn::lcm;
use crate::{Error, Result};

/// Largest accepted Cayley-table order; the associativity check is cubic.
pub const MAX_TABLE_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroupSpec {
    /// Direct product of cyclic groups `Z_{d_1} x ... x Z_{d_r}`, every
    /// `d_i >= 2`.  The empty product is the trivial group.
    Abelian { factors: Vec<u64> },
    /// Finite group presented by its full multiplication table.
    Table {
        order: usize,
        cayley: Vec<Vec<usize>>,
        identity: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroupElement {
    Abelian(Vec<u64>),
    Table(usize),
}

impl GroupSpec {
    pub fn abelian(factors: Vec<u64>) -> Result<Self> {
        if factors.iter().any(|&d| d < 2) {
            return Err(Error::domain("every cyclic factor must be at least 2"));
        }
        let mut order: u64 = 1;
        for &d in &factors {
            order = order
                .checked_mul(d)
                .ok_or_else(|| Error::domain("group order overflows"))?;
            if order > 1 << 20 {
                return Err(Error::domain("group order exceeds the 2^20 cap"));
            }
        }
        Ok(GroupSpec::Abelian { factors })
    }

    pub fn trivial() -> Self {
        GroupSpec::Abelian { factors: vec![] }
    }

    /// Validate and wrap a Cayley table.  Checks that rows and columns are
    /// permutations, that `identity` is two-sided, that every element has
    /// a two-sided inverse, and that the operation is associative.
    pub fn table(cayley: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let order = cayley.len();
        if order == 0 {
            return Err(Error::domain("Cayley table must have positive order"));
        }
        if order > MAX_TABLE_ORDER {
            return Err(Error::domain(format!(
                "Cayley table order {order} exceeds the cap {MAX_TABLE_ORDER}"
            )));
        }
        if identity >= order {
            return Err(Error::domain("identity index out of range"));
        }
        for row in &cayley {
            if row.len() != order {
                return Err(Error::domain("Cayley table is not square"));
            }
            if row.iter().any(|&e| e >= order) {
                return Err(Error::domain("Cayley table entry out of range"));
            }
        }
        let perm = |get: &dyn Fn(usize) -> usize| -> bool {
            let mut seen = vec![false; order];
            (0..order).all(|i| {
                let v = get(i);
                !std::mem::replace(&mut seen[v], true)
            })
        };
        for i in 0..order {
            if !perm(&|j| cayley[i][j]) || !perm(&|j| cayley[j][i]) {
                return Err(Error::domain(
                    "Cayley table rows/columns must be permutations",
                ));
            }
        }
        for i in 0..order {
            if cayley[identity][i] != i || cayley[i][identity] != i {
                return Err(Error::domain("declared identity is not two-sided"));
            }
        }
        for i in 0..order {
            let inv = (0..order).find(|&j| cayley[i][j] == identity);
            match inv {
                Some(j) if cayley[j][i] == identity => {}
                _ => return Err(Error::domain("element without a two-sided inverse")),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::domain(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupSpec::Table {
            order,
            cayley,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Abelian { factors } => factors.iter().product::<u64>() as usize,
            GroupSpec::Table { order, .. } => *order,
        }
    }

    pub fn is_abelian_spec(&self) -> bool {
        matches!(self, GroupSpec::Abelian { .. })
    }

    pub fn factors(&self) -> Result<&[u64]> {
        match self {
            GroupSpec::Abelian { factors } => Ok(factors),
            GroupSpec::Table { .. } => Err(Error::Unsupported(
                "operation requires an abelian group given by cyclic factors".into(),
            )),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Abelian { factors } => GroupElement::Abelian(vec![0; factors.len()]),
            GroupSpec::Table { identity, .. } => GroupElement::Table(*identity),
        }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        match (self, a) {
            (GroupSpec::Abelian { factors }, GroupElement::Abelian(e)) => {
                e.len() == factors.len() && e.iter().zip(factors).all(|(&x, &d)| x < d)
            }
            (GroupSpec::Table { order, .. }, GroupElement::Table(i)) => i < order,
            _ => false,
        }
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::domain("element does not belong to the group"))
        }
    }

    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (
                GroupSpec::Abelian { factors },
                GroupElement::Abelian(x),
                GroupElement::Abelian(y),
            ) => GroupElement::Abelian(
                x.iter()
                    .zip(y.iter())
                    .zip(factors.iter())
                    .map(|((&u, &v), &d)| (u + v) % d)
                    .collect(),
            ),
            (GroupSpec::Table { cayley, .. }, GroupElement::Table(i), GroupElement::Table(j)) => {
                GroupElement::Table(cayley[*i][*j])
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(match (self, a) {
            (GroupSpec::Abelian { factors }, GroupElement::Abelian(x)) => GroupElement::Abelian(
                x.iter()
                    .zip(factors.iter())
                    .map(|(&u, &d)| (d - u) % d)
                    .collect(),
            ),
            (
                GroupSpec::Table {
                    order,
                    cayley,
                    identity,
                },
                GroupElement::Table(i),
            ) => {
                let j = (0..*order).find(|&j| cayley[*i][j] == *identity).unwrap();
                GroupElement::Table(j)
            }
            _ => unreachable!(),
        })
    }

    /// Canonical index of an element, compatible with [`Self::element`].
    pub fn index_of(&self, a: &GroupElement) -> Result<usize> {
        self.check(a)?;
        Ok(match (self, a) {
            (GroupSpec::Abelian { factors }, GroupElement::Abelian(x)) => {
                let mut idx: usize = 0;
                for (&e, &d) in x.iter().zip(factors.iter()) {
                    idx = idx * d as usize + e as usize;
                }
                idx
            }
            (GroupSpec::Table { .. }, GroupElement::Table(i)) => *i,
            _ => unreachable!(),
        })
    }

    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index >= self.order() {
            return Err(Error::domain("element index out of range"));
        }
        Ok(match self {
            GroupSpec::Abelian { factors } => {
                let mut rem = index;
                let mut exps = vec![0u64; factors.len()];
                for i in (0..factors.len()).rev() {
                    let d = factors[i] as usize;
                    exps[i] = (rem % d) as u64;
                    rem /= d;
                }
                GroupElement::Abelian(exps)
            }
            GroupSpec::Table { .. } => GroupElement::Table(index),
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element(i).unwrap())
    }

    /// Index form of the group operation.
    pub fn op_index(&self, i: usize, j: usize) -> usize {
        match self {
            GroupSpec::Table { cayley, .. } => cayley[i][j],
            _ => {
                let a = self.element(i).unwrap();
                let b = self.element(j).unwrap();
                self.index_of(&self.op(&a, &b).unwrap()).unwrap()
            }
        }
    }

    pub fn inv_index(&self, i: usize) -> usize {
        let a = self.element(i).unwrap();
        self.index_of(&self.inv(&a).unwrap()).unwrap()
    }

    /// Exponent of the group: the lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        match self {
            GroupSpec::Abelian { factors } => factors.iter().fold(1u64, |acc, &d| lcm(acc, d)),
            GroupSpec::Table { order, .. } => {
                let mut e = 1u64;
                for i in 0..*order {
                    e = lcm(e, self.element_order(i));
                }
                e
            }
        }
    }

    fn element_order(&self, i: usize) -> u64 {
        let id = self.index_of(&self.identity()).unwrap();
        let mut cur = i;
        let mut ord = 1u64;
        while cur != id {
            cur = self.op_index(cur, i);
            ord += 1;
        }
        ord
    }

    /// Is the multiplication commutative?  (Trivially true for the
    /// factor-based representation.)
    pub fn is_commutative(&self) -> bool {
        match self {
            GroupSpec::Abelian { .. } => true,
            GroupSpec::Table { order, cayley, .. } => {
                (0..*order).all(|i| (0..*order).all(|j| cayley[i][j] == cayley[j][i]))
            }
        }
    }

    /// Materialized index-level operation table; cocycle and twisted
    /// algebra code is all index-based and calls this once up front.
    pub fn op_table(&self) -> GroupTable {
        let order = self.order();
        let op: Vec<Vec<usize>> = match self {
            GroupSpec::Table { cayley, .. } => cayley.clone(),
            _ => (0..order)
                .map(|i| (0..order).map(|j| self.op_index(i, j)).collect())
                .collect(),
        };
        let id = self.index_of(&self.identity()).unwrap();
        let inv: Vec<usize> = (0..order)
            .map(|i| (0..order).find(|&j| op[i][j] == id).unwrap())
            .collect();
        GroupTable { op, inv, id }
    }
}

/// Index-level view of a finite group.
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub op: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub id: usize,
}

/// Does every element square to the identity?
pub fn is_elementary_2_group(group: &GroupSpec) -> bool {
    match group {
        GroupSpec::Abelian { factors } => factors.iter().all(|&d| d == 2),
        GroupSpec::Table {
            order,
            cayley,
            identity,
        } => (0..*order).all(|i| cayley[i][i] == *identity),
    }
}

/// `|T^ / S(T^)|`, the index of the squares inside the character group.
///
/// For `T = prod Z_{d_i}` the character group is isomorphic to `T`, and
/// the index of the squares of a cyclic group `Z_d` is `gcd(2, d)`, so the
/// answer is `2^(number of even factors)`.
pub fn squares_index(group: &GroupSpec) -> Result<u64> {
    let factors = group.factors()?;
    Ok(factors
        .iter()
        .map(|&d| if d % 2 == 0 { 2 } else { 1 })
        .product())
}

/// Character of an abelian group, stored by its exponents against the
/// group generators: `chi(u) = zeta_L^(sum_i c_i u_i (L / d_i))` where `L`
/// is the lcm of the factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Character {
    factors: Vec<u64>,
    exponents: Vec<u64>,
}

impl Character {
    pub fn new(group: &GroupSpec, exponents: Vec<u64>) -> Result<Self> {
        let factors = group.factors()?.to_vec();
        if exponents.len() != factors.len()
            || exponents.iter().zip(factors.iter()).any(|(&c, &d)| c >= d)
        {
            return Err(Error::domain("character exponents out of range"));
        }
        Ok(Character { factors, exponents })
    }

    pub fn trivial(group: &GroupSpec) -> Result<Self> {
        let factors = group.factors()?.to_vec();
        let exponents = vec![0; factors.len()];
        Ok(Character { factors, exponents })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Order of the value group: lcm of the cyclic factors.
    pub fn modulus(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, &d| lcm(acc, d))
    }

    /// Exponent `e` with `chi(u) = zeta_L^e`, `L = self.modulus()`.
    pub fn eval_exponent(&self, u: &GroupElement) -> Result<u64> {
        let ue = match u {
            GroupElement::Abelian(e) if e.len() == self.factors.len() => e,
            _ => {
                return Err(Error::domain(
                    "element does not match the character's group",
                ))
            }
        };
        let l = self.modulus();
        let mut acc = 0u64;
        for ((&c, &x), &d) in self
            .exponents
            .iter()
            .zip(ue.iter())
            .zip(self.factors.iter())
        {
            acc = (acc + c * x % l * (l / d)) % l;
        }
        Ok(acc)
    }

    /// Every character of the group, in lexicographic exponent order.
    pub fn all(group: &GroupSpec) -> Result<Vec<Character>> {
        let factors = group.factors()?.to_vec();
        let total: u64 = factors.iter().product();
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0u64; factors.len()];
        loop {
            out.push(Character {
                factors: factors.clone(),
                exponents: cur.clone(),
            });
            let mut pos = factors.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                cur[pos] += 1;
                if cur[pos] < factors[pos] {
                    break;
                }
                cur[pos] = 0;
            }
        }
    }

    /// Is this character a square inside the character group?  Component
    /// `i` needs `2 x = c_i (mod d_i)` solvable, i.e. `gcd(2, d_i) | c_i`.
    pub fn is_square(&self) -> bool {
        self.exponents
            .iter()
            .zip(self.factors.iter())
            .all(|(&c, &d)| d % 2 == 1 || c % 2 == 0)
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        if self.factors != other.factors {
            return Err(Error::domain("characters of different groups"));
        }
        let exponents = self
            .exponents
            .iter()
            .zip(other.exponents.iter())
            .zip(self.factors.iter())
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        Ok(Character {
            factors: self.factors.clone(),
            exponents,
        })
    }
}
