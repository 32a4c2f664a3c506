//! Jordan blocks of tempered packets.
//!
//! A [`JordanSet`] is the multiset `Jord(π)` of pairs `(ρ,a)` together with
//! the group it lives on. Blocks `(ρ,0)` are never stored.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiset::Multiset;
use crate::rational::{abs, as_integer, is_half_integral, q, Q};
use crate::segcalc::{cuspidal_support, CuspidalPoint, Segment};
use crate::symbols::{GroupKind, GroupSpace, SelfDuality, SymbolId, Universe};

/// A Jordan block `(ρ,a)`, standing for `St(ρ,a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    pub rho: SymbolId,
    pub a: u32,
}

impl Block {
    pub fn new(rho: SymbolId, a: u32) -> Self {
        Block { rho, a }
    }

    pub fn segment(&self) -> Segment {
        Segment::steinberg(self.rho, self.a, q(0)).expect("blocks have a >= 1")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanSet {
    group: GroupSpace,
    blocks: Multiset<Block>,
}

/// Sum of `a·d_ρ` over blocks, with multiplicity.
pub fn block_dimension(u: &Universe, blocks: &Multiset<Block>) -> u64 {
    blocks
        .iter_counts()
        .map(|(b, &n)| b.a as u64 * u.dim(b.rho) as u64 * n as u64)
        .sum()
}

impl JordanSet {
    /// Checks that every block is well formed, that the multiset is closed
    /// under `ρ ↦ ρ̌`, and that the blocks fill the dual group exactly.
    pub fn new(u: &Universe, group: GroupSpace, blocks: Multiset<Block>) -> Result<JordanSet> {
        for (b, &n) in blocks.iter_counts() {
            u.get(b.rho)?;
            if b.a == 0 {
                return Err(Error::validation("Jordan blocks need a >= 1"));
            }
            let dual = Block::new(u.dual_of(b.rho), b.a);
            if blocks.count(&dual) != n {
                return Err(Error::validation(format!(
                    "Jordan set is not closed under duals: ({},{}) x{} but ({},{}) x{}",
                    u.name(b.rho),
                    b.a,
                    n,
                    u.name(dual.rho),
                    dual.a,
                    blocks.count(&dual)
                )));
            }
        }
        let total = block_dimension(u, &blocks);
        if total != group.dual_dim() as u64 {
            return Err(Error::validation(format!(
                "blocks have total dimension {total} but the dual group of {group} has dimension {}",
                group.dual_dim()
            )));
        }
        Ok(JordanSet { group, blocks })
    }

    pub fn from_blocks(
        u: &Universe,
        group: GroupSpace,
        blocks: impl IntoIterator<Item = Block>,
    ) -> Result<JordanSet> {
        Self::new(u, group, blocks.into_iter().collect())
    }

    pub fn group(&self) -> &GroupSpace {
        &self.group
    }

    pub fn blocks(&self) -> &Multiset<Block> {
        &self.blocks
    }

    pub fn mult(&self, rho: SymbolId, a: u32) -> usize {
        self.blocks.count(&Block::new(rho, a))
    }

    pub fn contains(&self, rho: SymbolId, a: u32) -> bool {
        self.mult(rho, a) > 0
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Whether every block of bad parity occurs with even multiplicity,
    /// which `Jord(π)` of an actual tempered representation must satisfy.
    pub fn parity_multiplicities_ok(&self, u: &Universe) -> bool {
        self.blocks.iter_counts().all(|(b, &n)| {
            !u.is_self_dual(b.rho) || n % 2 == 0 || good_parity(u, b.rho, b.a, &self.group)
        })
    }

    /// Same group type, with the dual dimension recomputed from `blocks`.
    fn rebuild(&self, u: &Universe, blocks: Multiset<Block>) -> Result<JordanSet> {
        let group = self
            .group
            .same_type_with_dual_dim(block_dimension(u, &blocks) as i64)?;
        JordanSet::new(u, group, blocks)
    }

    pub fn to_json(&self, u: &Universe) -> JordanSetJson {
        JordanSetJson {
            group: self.group.clone(),
            blocks: self
                .blocks
                .iter_counts()
                .map(|(b, &n)| (u.name(b.rho).to_string(), b.a, n))
                .collect(),
        }
    }

    pub fn from_json(u: &Universe, j: &JordanSetJson) -> Result<JordanSet> {
        let mut blocks = Multiset::new();
        for (name, a, n) in &j.blocks {
            blocks.insert_n(Block::new(u.lookup(name)?, *a), *n);
        }
        JordanSet::new(u, j.group.clone(), blocks)
    }
}

/// File form of a [`JordanSet`]: `{"group": {...}, "blocks": [[id, a, mult], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanSetJson {
    pub group: GroupSpace,
    pub blocks: Vec<(String, u32, usize)>,
}

/// Whether the parameter of `St(ρ,a)` lands in a classical group of the same
/// type as the dual group of `g`.
pub fn good_parity(u: &Universe, rho: SymbolId, a: u32, g: &GroupSpace) -> bool {
    good_parity_kind(u, rho, a, g.kind())
}

pub(crate) fn good_parity_kind(u: &Universe, rho: SymbolId, a: u32, kind: GroupKind) -> bool {
    let rho_symplectic = match u.selfduality(rho) {
        SelfDuality::NotSelfDual(_) => return false,
        SelfDuality::Symplectic => true,
        SelfDuality::Orthogonal => false,
    };
    let param_symplectic = rho_symplectic != a.is_multiple_of(2);
    param_symplectic == kind.dual_is_symplectic()
}

pub fn is_discrete_series(u: &Universe, j: &JordanSet) -> bool {
    j.blocks
        .iter_counts()
        .all(|(b, &n)| n == 1 && good_parity(u, b.rho, b.a, &j.group))
}

/// Multiset of cuspidal points closed under `ρ|·|^x ↦ ρ̌|·|^{-x}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExtendedSupport {
    pub points: Multiset<CuspidalPoint>,
}

impl ExtendedSupport {
    pub fn is_dual_closed(&self, u: &Universe) -> bool {
        self.points
            .iter_counts()
            .all(|(p, &n)| self.points.count(&p.contragredient(u)) == n)
    }

    /// Number of points weighted by `d_ρ`.
    pub fn weighted_len(&self, u: &Universe) -> u64 {
        self.points
            .iter_counts()
            .map(|(p, &n)| u.dim(p.rho) as u64 * n as u64)
            .sum()
    }
}

pub fn extended_support_tempered(j: &JordanSet) -> ExtendedSupport {
    let mut points = Multiset::new();
    for (b, &n) in j.blocks.iter_counts() {
        for p in b.segment().points() {
            points.insert_n(p, n);
        }
    }
    ExtendedSupport { points }
}

pub fn extended_support_induced(u: &Universe, segs: &[Segment], j: &JordanSet) -> ExtendedSupport {
    let mut support = extended_support_tempered(j);
    for s in segs {
        support.points.extend(cuspidal_support(s).iter().copied());
        support
            .points
            .extend(cuspidal_support(&s.contragredient(u)).iter().copied());
    }
    support
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JordUpdate {
    Updated(JordanSet),
    Incompatible,
}

/// `Jord` of the tempered constituents of `<e,f>_ρ × π'` for `e ≥ 0 ≥ f`.
///
/// The result lives on the group of the same type enlarged by the Levi
/// factor `GL((e-f+1)·d_ρ)`.
pub fn jord_update_from_segment(u: &Universe, seg: &Segment, j: &JordanSet) -> Result<JordUpdate> {
    let (e, f) = (seg.e(), seg.f());
    if !(e >= q(0) && q(0) >= f) {
        return Err(Error::domain(format!(
            "jord update needs e >= 0 >= f, got <{e},{f}>"
        )));
    }
    let rho = seg.rho();
    u.get(rho)?;
    let added = if u.is_self_dual(rho) {
        if !is_half_integral(&e) || !is_half_integral(&f) {
            return Ok(JordUpdate::Incompatible);
        }
        [
            Block::new(rho, block_len(e)),
            Block::new(rho, block_len(-f)),
        ]
    } else {
        if e != -f || !is_half_integral(&e) {
            return Ok(JordUpdate::Incompatible);
        }
        [
            Block::new(rho, block_len(e)),
            Block::new(u.dual_of(rho), block_len(e)),
        ]
    };
    let mut blocks = j.blocks.clone();
    blocks.extend(added);
    Ok(JordUpdate::Updated(j.rebuild(u, blocks)?))
}

/// `2x + 1` for a nonnegative half-integer `x`.
fn block_len(x: Q) -> u32 {
    (x * 2 + 1).to_integer() as u32
}

/// Membership of `(ρ,x)` in the set `RP(π)` of possible reducibility points.
pub fn rp_contains(u: &Universe, rho: SymbolId, x: Q, j: &JordanSet) -> bool {
    if !u.is_self_dual(rho) {
        return false;
    }
    let ax = abs(&x);
    if ax == q(0) && good_parity(u, rho, 1, &j.group) && !j.contains(rho, 1) {
        return true;
    }
    if is_half_integral(&ax) && ax >= q(1) && j.contains(rho, (ax * 2 - 1).to_integer() as u32) {
        return true;
    }
    ax == Q::new(1, 2) && good_parity(u, rho, 2, &j.group)
}

/// Necessary condition for `Jac_{ρ|·|^x, ..., ρ|·|^x}(π) ≠ 0` with `m` equal
/// twists.
pub fn jacquet_const_necessary(rho: SymbolId, x: Q, m: usize, j: &JordanSet) -> Result<bool> {
    if x <= q(0) {
        return Err(Error::domain("constant Jacquet test needs x > 0"));
    }
    Ok(match as_integer(&(x * 2)) {
        Some(n) => j.mult(rho, (n + 1) as u32) >= m,
        None => false,
    })
}

/// Whether the sequence of twists can be read off a choice of bounds
/// `b > b̌` for each block copy, as the shuffle conditions on `Jord(π)`
/// require of any nonzero Jacquet module.
///
/// For a block `(ρ,a)` the forward family starts at `(a-1)/2` and steps down;
/// reading the dual sequence backwards, its family starts at `-(a-1)/2` and
/// steps up. With `t` forward and `s` dual points used, `b > b̌` is
/// `t + s ≤ a`.
pub fn jacquet_feasible(u: &Universe, points: &[CuspidalPoint], j: &JordanSet) -> bool {
    let mut state: Vec<CopyState> = j
        .blocks
        .iter()
        .map(|b| CopyState {
            block: *b,
            t: 0,
            s: 0,
        })
        .collect();
    let duals: Vec<CuspidalPoint> = points.iter().map(|p| p.contragredient(u)).collect();
    let mut failed = HashSet::new();
    shuffle_search(points, &duals, 0, &mut state, &mut failed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct CopyState {
    block: Block,
    t: u32,
    s: u32,
}

impl CopyState {
    fn next_forward(&self) -> Q {
        Q::new(self.block.a as i64 - 1, 2) - q(self.t as i64)
    }

    fn next_dual(&self) -> Q {
        Q::new(1 - self.block.a as i64, 2) + q(self.s as i64)
    }

    fn has_room(&self) -> bool {
        self.t + self.s < self.block.a
    }
}

fn shuffle_search(
    fwd: &[CuspidalPoint],
    dual: &[CuspidalPoint],
    i: usize,
    state: &mut Vec<CopyState>,
    failed: &mut HashSet<(usize, Vec<CopyState>)>,
) -> bool {
    if i == fwd.len() {
        return true;
    }
    let mut key = state.clone();
    key.sort();
    if failed.contains(&(i, key.clone())) {
        return false;
    }
    let mut tried_fwd = HashSet::new();
    for k in 0..state.len() {
        let c = state[k];
        if c.block.rho != fwd[i].rho || !c.has_room() || c.next_forward() != fwd[i].x {
            continue;
        }
        if !tried_fwd.insert(c) {
            continue;
        }
        state[k].t += 1;
        let mut tried_dual = HashSet::new();
        for l in 0..state.len() {
            let d = state[l];
            if d.block.rho != dual[i].rho || !d.has_room() || d.next_dual() != dual[i].x {
                continue;
            }
            if !tried_dual.insert(d) {
                continue;
            }
            state[l].s += 1;
            let ok = shuffle_search(fwd, dual, i + 1, state, failed);
            state[l].s -= 1;
            if ok {
                state[k].t -= 1;
                return true;
            }
        }
        state[k].t -= 1;
    }
    failed.insert((i, key));
    false
}

/// Replaces every copy of `(ρ,a)` by `(ρ,a-2)`; copies of `(ρ,0)` vanish.
pub fn lower_blocks(u: &Universe, rho: SymbolId, a: u32, j: &JordanSet) -> Result<JordanSet> {
    if a < 2 {
        return Err(Error::domain("lowering needs a >= 2"));
    }
    let m = j.mult(rho, a);
    if m == 0 {
        return Err(Error::domain(format!(
            "({},{a}) is not a block",
            u.name(rho)
        )));
    }
    let mut blocks = j.blocks.clone();
    blocks.remove_all(&Block::new(rho, a));
    if a > 2 {
        blocks.insert_n(Block::new(rho, a - 2), m);
    }
    j.rebuild(u, blocks)
}

/// Replaces `m` copies of `(ρ,2x-1)` by `(ρ,2x+1)`. For `x = 1/2` the
/// copies of `(ρ,0)` are created from nothing.
pub fn raise_blocks(
    u: &Universe,
    rho: SymbolId,
    x: Q,
    m: usize,
    j: &JordanSet,
) -> Result<JordanSet> {
    let two_x = match as_integer(&(x * 2)) {
        Some(n) if n > 0 => n as u32,
        _ => return Err(Error::domain("raising needs a positive half-integer x")),
    };
    if m == 0 {
        return Err(Error::domain("raising needs m >= 1"));
    }
    u.get(rho)?;
    let mut blocks = j.blocks.clone();
    if two_x > 1 {
        let from = Block::new(rho, two_x - 1);
        if blocks.count(&from) < m {
            return Err(Error::domain(format!(
                "({},{}) occurs {} times, fewer than {m}",
                u.name(rho),
                two_x - 1,
                blocks.count(&from)
            )));
        }
        blocks.remove_n(&from, m);
    }
    blocks.insert_n(Block::new(rho, two_x + 1), m);
    j.rebuild(u, blocks)
}
