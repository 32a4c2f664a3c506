//! The liaison predicate and the irreducibility verdict for
//! `<e₁,f₁>_{ρ₁} × ... × <e_t,f_t>_{ρ_t} × π`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{good_parity, rp_contains, JordanSet};
use crate::rational::{abs, as_integer, is_half_integral, q, Q};
use crate::segcalc::{linked_unchecked, Segment};
use crate::symbols::{SymbolId, Universe};

/// `(ρ,e,f)` with `<e,f>_ρ` a non-empty segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    seg: Segment,
}

impl Triple {
    pub fn new(rho: SymbolId, e: Q, f: Q) -> Result<Triple> {
        let seg = Segment::new(rho, e, f)?;
        Triple::from_segment(seg)
    }

    pub fn from_segment(seg: Segment) -> Result<Triple> {
        if seg.is_empty() {
            return Err(Error::validation("a triple needs a non-empty segment"));
        }
        Ok(Triple { seg })
    }

    pub fn rho(&self) -> SymbolId {
        self.seg.rho()
    }

    pub fn e(&self) -> Q {
        self.seg.e()
    }

    pub fn f(&self) -> Q {
        self.seg.f()
    }

    pub fn segment(&self) -> Segment {
        self.seg
    }

    /// `(ρ̌,-f,-e)`.
    pub fn contragredient(&self, u: &Universe) -> Triple {
        Triple {
            seg: self.seg.contragredient(u),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Irreducible,
    Reducible,
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Irreducible => "Irreducible",
            Verdict::Reducible => "Reducible",
            Verdict::Unknown => "Unknown",
        })
    }
}

/// Whether `(ρ,e,f)` and `Jord(π)` are linked.
pub fn liaison(u: &Universe, t: &Triple, j: &JordanSet) -> bool {
    let (rho, e, f) = (t.rho(), t.e(), t.f());
    let Some(two_e) = as_integer(&(e * 2)) else {
        return false;
    };
    let a_e = (two_e.abs() + 1) as u32;
    let blocks_on_rho = j.blocks().distinct().filter(|b| b.rho == rho);
    if !good_parity(u, rho, a_e, j.group()) {
        let parity = (two_e + 1).rem_euclid(2) as u32;
        return blocks_on_rho
            .filter(|b| b.a % 2 == parity)
            .any(|b| linked_unchecked(&t.seg, &b.segment()));
    }
    if e >= Q::new(-1, 2) && f <= Q::new(1, 2) {
        return true;
    }
    let mirrored = Segment::new(rho, -f, -e).expect("mirror of a segment");
    blocks_on_rho.into_iter().any(|b| {
        let x = Q::new(b.a as i64 + 1, 2);
        t.seg.contains_exponent(x) || mirrored.contains_exponent(x)
    })
}

/// No triple is linked with `Jord(π)` and all GL products among the
/// segments and their contragredients are irreducible.
pub fn family_not_linked(u: &Universe, ts: &[Triple], j: &JordanSet) -> bool {
    if ts.iter().any(|t| liaison(u, t, j)) {
        return false;
    }
    for (i, ti) in ts.iter().enumerate() {
        for (k, tk) in ts.iter().enumerate() {
            if i == k {
                continue;
            }
            if linked_unchecked(&ti.seg, &tk.seg)
                || linked_unchecked(&ti.seg, &tk.seg.contragredient(u))
            {
                return false;
            }
        }
    }
    true
}

pub fn decide_irreducible(
    u: &Universe,
    ts: &[Triple],
    j: &JordanSet,
    generic: bool,
) -> Result<Verdict> {
    if let Some(t) = ts.iter().find(|t| t.e() + t.f() == q(0)) {
        return Err(Error::domain(format!(
            "the criterion needs e + f != 0, got <{},{}>",
            t.e(),
            t.f()
        )));
    }
    Ok(if family_not_linked(u, ts, j) {
        Verdict::Irreducible
    } else if generic {
        Verdict::Reducible
    } else {
        Verdict::Unknown
    })
}

/// `ρ|·|^x × π` is irreducible whenever `(ρ,x) ∉ RP(π)`.
pub fn single_twist_irreducible(u: &Universe, rho: SymbolId, x: Q, j: &JordanSet) -> Verdict {
    if rp_contains(u, rho, x, j) {
        Verdict::Unknown
    } else {
        Verdict::Irreducible
    }
}

/// Reducibility of `<e,f>_ρ × π` for generic tempered `π` in the two
/// low cases `f ≤ 0` and `(ρ,f) ∈ RP(π)`.
pub fn generic_reducible_low(u: &Universe, t: &Triple, j: &JordanSet) -> Result<bool> {
    let (rho, e, f) = (t.rho(), t.e(), t.f());
    if !u.is_self_dual(rho) {
        return Err(Error::domain("needs a self-dual ρ"));
    }
    if !is_half_integral(&e) || !is_half_integral(&f) {
        return Err(Error::domain("needs half-integral e and f"));
    }
    if e < q(0) || e + f == q(0) {
        return Err(Error::domain("needs e >= 0 and e + f != 0"));
    }
    let a_e = (e * 2 + 1).to_integer() as u32;
    let a_f = (abs(&f) * 2 + 1).to_integer() as u32;
    if !good_parity(u, rho, a_e, j.group()) || !good_parity(u, rho, a_f, j.group()) {
        return Err(Error::domain(
            "needs (ρ,2e+1) and (ρ,2|f|+1) of good parity",
        ));
    }
    Ok(f <= q(0) || rp_contains(u, rho, f, j))
}
