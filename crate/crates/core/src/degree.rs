//! Degrees in the ambient grading group.
//!
//! The constructions only ever see degrees inside the subgroup generated
//! by the support `T` and one distinguished element `g0`.  We model a
//! degree as a `T`-part together with an integer power of a formal `g0`
//! symbol that commutes with `T`.  Three regimes cover the paper's cases:
//! `g0` an element of `T` (the power folds away), a formal symbol of
//! order two, or a free formal symbol (no relation).

use crate::groups::{GroupElement, GroupSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum G0Mode {
    /// `g0` is an element of the support.
    InT(GroupElement),
    /// Formal central symbol with `g0^2 = 1`.
    Formal2,
    /// Formal central symbol with no declared relation.
    Free,
}

/// The degree universe: the support group plus the `g0` regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCtx {
    pub group: GroupSpec,
    pub mode: G0Mode,
}

impl DegreeCtx {
    pub fn new(group: GroupSpec, mode: G0Mode) -> Result<Self> {
        if let G0Mode::InT(e) = &mode {
            if !group.contains(e) {
                return Err(Error::domain("g0 element does not belong to the group"));
            }
        }
        Ok(DegreeCtx { group, mode })
    }

    pub fn in_t(group: GroupSpec, g0: GroupElement) -> Result<Self> {
        Self::new(group, G0Mode::InT(g0))
    }

    /// The degree of the `g0` symbol itself.
    pub fn g0(&self) -> Degree {
        match &self.mode {
            G0Mode::InT(e) => Degree {
                t: e.clone(),
                shift: 0,
            },
            _ => Degree {
                t: self.group.identity(),
                shift: 1,
            },
        }
    }

    pub fn g0_in_support(&self) -> Option<&GroupElement> {
        match &self.mode {
            G0Mode::InT(e) => Some(e),
            _ => None,
        }
    }

    /// Does `g0^2 = 1` hold?
    pub fn g0_squares_to_identity(&self) -> bool {
        match &self.mode {
            G0Mode::InT(e) => {
                let sq = self.group.op(e, e).unwrap();
                sq == self.group.identity()
            }
            G0Mode::Formal2 => true,
            G0Mode::Free => false,
        }
    }

    fn reduce_shift(&self, shift: i64) -> i64 {
        match self.mode {
            G0Mode::InT(_) => 0,
            G0Mode::Formal2 => shift.rem_euclid(2),
            G0Mode::Free => shift,
        }
    }

    /// Build a degree from a `T`-part and a `g0` power.
    pub fn degree(&self, t: GroupElement, shift: i64) -> Result<Degree> {
        if !self.group.contains(&t) {
            return Err(Error::domain("degree T-part outside the group"));
        }
        match &self.mode {
            G0Mode::InT(g0) => {
                // Fold the power of g0 into the T-part.
                let mut out = t;
                let step = if shift >= 0 {
                    g0.clone()
                } else {
                    self.group.inv(g0)?
                };
                for _ in 0..shift.unsigned_abs() {
                    out = self.group.op(&out, &step)?;
                }
                Ok(Degree { t: out, shift: 0 })
            }
            _ => Ok(Degree {
                t,
                shift: self.reduce_shift(shift),
            }),
        }
    }

    pub fn identity_degree(&self) -> Degree {
        Degree {
            t: self.group.identity(),
            shift: 0,
        }
    }

    pub fn from_element(&self, t: GroupElement) -> Result<Degree> {
        self.degree(t, 0)
    }

    pub fn mul(&self, a: &Degree, b: &Degree) -> Result<Degree> {
        let t = self.group.op(&a.t, &b.t)?;
        self.degree(t, a.shift + b.shift)
    }

    pub fn inv(&self, a: &Degree) -> Result<Degree> {
        let t = self.group.inv(&a.t)?;
        self.degree(t, -a.shift)
    }

    /// `a * b^{-1}`.
    pub fn div(&self, a: &Degree, b: &Degree) -> Result<Degree> {
        let bi = self.inv(b)?;
        self.mul(a, &bi)
    }
}

/// A degree `t * g0^shift` with `t` in the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degree {
    t: GroupElement,
    shift: i64,
}

impl Degree {
    pub fn t_part(&self) -> &GroupElement {
        &self.t
    }

    pub fn g0_power(&self) -> i64 {
        self.shift
    }

    /// The element of `T` this degree equals, when it lies in `T`.
    pub fn in_support(&self) -> Option<&GroupElement> {
        if self.shift == 0 {
            Some(&self.t)
        } else {
            None
        }
    }

    pub fn is_identity(&self, ctx: &DegreeCtx) -> bool {
        self == &ctx.identity_degree()
    }
}
