//! Segment calculus on the GL side.

use std::cmp::{max, min};

use crate::error::{Error, Result};
use crate::multiset::Multiset;
use crate::rational::{q, Q};
use crate::symbols::{SymbolId, Universe};

/// The twist `ρ|·|^x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalPoint {
    pub rho: SymbolId,
    pub x: Q,
}

impl CuspidalPoint {
    pub fn new(rho: SymbolId, x: Q) -> Self {
        CuspidalPoint { rho, x }
    }

    /// `ρ̌|·|^{-x}`.
    pub fn contragredient(&self, u: &Universe) -> CuspidalPoint {
        CuspidalPoint::new(u.dual_of(self.rho), -self.x)
    }
}

/// `<e,f>_ρ`, the set `{e, e-1, ..., f}` of twists of `ρ`.
///
/// `e - f = -1` is the empty segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    rho: SymbolId,
    e: Q,
    f: Q,
}

impl Segment {
    pub fn new(rho: SymbolId, e: Q, f: Q) -> Result<Segment> {
        let diff = e - f;
        if !diff.is_integer() || diff < q(-1) {
            return Err(Error::validation(format!(
                "<{e},{f}> is not a segment: e - f must be an integer >= -1"
            )));
        }
        Ok(Segment { rho, e, f })
    }

    /// `St(ρ,a)|·|^b`, i.e. `<(a-1)/2 + b, -(a-1)/2 + b>_ρ`.
    pub fn steinberg(rho: SymbolId, a: u32, b: Q) -> Result<Segment> {
        if a == 0 {
            return Err(Error::validation("Steinberg length must be positive"));
        }
        let h = Q::new(a as i64 - 1, 2);
        Segment::new(rho, h + b, -h + b)
    }

    pub fn rho(&self) -> SymbolId {
        self.rho
    }

    pub fn e(&self) -> Q {
        self.e
    }

    pub fn f(&self) -> Q {
        self.f
    }

    pub fn is_empty(&self) -> bool {
        self.e < self.f
    }

    /// Number of points, `e - f + 1`.
    pub fn len(&self) -> usize {
        (self.e - self.f + 1).to_integer() as usize
    }

    /// `(e+f)/2`.
    pub fn exponent(&self) -> Q {
        (self.e + self.f) / 2
    }

    pub fn contains_point(&self, p: &CuspidalPoint) -> bool {
        p.rho == self.rho && self.contains_exponent(p.x)
    }

    pub fn contains_exponent(&self, x: Q) -> bool {
        self.f <= x && x <= self.e && (self.e - x).is_integer()
    }

    /// Points in decreasing order, `ρ|·|^e, ..., ρ|·|^f`.
    pub fn points(&self) -> impl Iterator<Item = CuspidalPoint> + '_ {
        (0..self.len()).map(move |i| CuspidalPoint::new(self.rho, self.e - q(i as i64)))
    }

    /// `<-f,-e>_ρ̌`.
    pub fn contragredient(&self, u: &Universe) -> Segment {
        Segment {
            rho: u.dual_of(self.rho),
            e: -self.f,
            f: -self.e,
        }
    }

    fn same_line(&self, other: &Segment) -> bool {
        self.rho == other.rho && (self.e - other.e).is_integer()
    }

    /// Set inclusion `other ⊆ self`, for segments on one line.
    fn includes(&self, other: &Segment) -> bool {
        self.e >= other.e && self.f <= other.f
    }
}

pub fn segment_set(s: &Segment) -> Vec<CuspidalPoint> {
    s.points().collect()
}

pub fn cuspidal_support(s: &Segment) -> Multiset<CuspidalPoint> {
    s.points().collect()
}

pub fn contragredient_segment(u: &Universe, s: &Segment) -> Segment {
    s.contragredient(u)
}

fn require_nonempty(s: &Segment) -> Result<()> {
    if s.is_empty() {
        return Err(Error::domain(
            "linkage is only defined for non-empty segments",
        ));
    }
    Ok(())
}

/// Zelevinsky linkage: same line, union is a segment, neither contains the
/// other.
pub fn linked(s1: &Segment, s2: &Segment) -> Result<bool> {
    require_nonempty(s1)?;
    require_nonempty(s2)?;
    Ok(linked_unchecked(s1, s2))
}

pub(crate) fn linked_unchecked(s1: &Segment, s2: &Segment) -> bool {
    s1.same_line(s2)
        && max(s1.f, s2.f) <= min(s1.e, s2.e) + 1
        && !s1.includes(s2)
        && !s2.includes(s1)
}

/// Irreducibility of `s1 × s2`, which holds exactly when they are not linked.
pub fn gl_pair_irreducible(s1: &Segment, s2: &Segment) -> Result<bool> {
    linked(s1, s2).map(|l| !l)
}

/// Result of a derivative: either zero or a (possibly empty) segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivative {
    Zero,
    Segment(Segment),
}

/// `k`-th derivative of `St(ρ,a)|·|^b`.
pub fn derivative(u: &Universe, rho: SymbolId, a: u32, b: Q, k: u32) -> Result<Derivative> {
    let d = u.get(rho)?.dim;
    if a == 0 {
        return Err(Error::domain("Steinberg length must be positive"));
    }
    if k as u64 > a as u64 * d as u64 {
        return Err(Error::domain(format!(
            "derivative order {k} exceeds a*d = {}",
            a as u64 * d as u64
        )));
    }
    if !k.is_multiple_of(d) {
        return Ok(Derivative::Zero);
    }
    let l = (k / d) as i64;
    let e = Q::new(a as i64 - 1, 2) + b;
    let f = Q::new(1 - a as i64, 2) + b + l;
    Segment::new(rho, e, f).map(Derivative::Segment)
}
