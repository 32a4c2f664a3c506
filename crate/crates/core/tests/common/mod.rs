//! Shared fixtures and random generators for the integration tests.
#![allow(dead_code)]

use parind::jordan::{good_parity, Block};
use parind::packets::ParamBlock;
use parind::rational::{q, qr};
use parind::{
    GroupKind, GroupSpace, JordanSet, LanglandsParameter, Multiset, SymbolId, Triple, Universe, Q,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const KINDS: [GroupKind; 3] = [
    GroupKind::Symplectic,
    GroupKind::OddOrthogonal,
    GroupKind::EvenOrthogonal,
];

pub fn universe() -> Universe {
    Universe::from_json_str(
        r#"[
            {"id": "r1", "dim": 1, "selfdual": "O"},
            {"id": "r2", "dim": 2, "selfdual": "S"},
            {"id": "r3", "dim": 1, "selfdual": {"dual": "r3v"}},
            {"id": "r3v", "dim": 1, "selfdual": {"dual": "r3"}},
            {"id": "r4", "dim": 2, "selfdual": "O"},
            {"id": "r5", "dim": 1, "selfdual": "S"},
            {"id": "r6", "dim": 3, "selfdual": "O"}
        ]"#,
    )
    .unwrap()
}

pub fn sym(u: &Universe, name: &str) -> SymbolId {
    u.lookup(name).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smallest group of `kind` (dual dimension 0 or 1).
pub fn base_group(kind: GroupKind) -> GroupSpace {
    match kind {
        GroupKind::OddOrthogonal => GroupSpace::new(kind, 1).unwrap(),
        _ => GroupSpace::new(kind, 0).unwrap(),
    }
}

pub fn jordan_on(u: &Universe, kind: GroupKind, blocks: Multiset<Block>) -> JordanSet {
    let n = parind::jordan::block_dimension(u, &blocks) as i64;
    let g = base_group(kind).same_type_with_dual_dim(n).unwrap();
    JordanSet::new(u, g, blocks).unwrap()
}

/// Random admissible Jordan set for `kind`: good-parity blocks once, bad
/// parity self-dual blocks twice, non-self-dual blocks with their duals,
/// and an odd-dimensional good block appended when the dual dimension has
/// the wrong parity.
pub fn random_jordan(r: &mut impl Rng, u: &Universe, kind: GroupKind) -> JordanSet {
    let probe = base_group(kind);
    let ids: Vec<SymbolId> = u.ids().collect();
    let mut blocks = Multiset::new();
    for _ in 0..r.gen_range(0..=4) {
        let rho = *ids.choose(r).unwrap();
        let a = r.gen_range(1..=6);
        if !u.is_self_dual(rho) {
            blocks.insert(Block::new(rho, a));
            blocks.insert(Block::new(u.dual(rho).unwrap(), a));
        } else if good_parity(u, rho, a, &probe) {
            blocks.insert(Block::new(rho, a));
        } else {
            blocks.insert_n(Block::new(rho, a), 2);
        }
    }
    let n = parind::jordan::block_dimension(u, &blocks);
    let want_odd = kind == GroupKind::Symplectic;
    if (n % 2 == 1) != want_odd {
        let fixer = match kind {
            GroupKind::OddOrthogonal => sym(u, "r5"),
            _ => sym(u, "r1"),
        };
        let a = 2 * r.gen_range(0..3) + 1;
        blocks.insert(Block::new(fixer, a));
    }
    jordan_on(u, kind, blocks)
}

pub fn random_kind(r: &mut impl Rng) -> GroupKind {
    *KINDS.choose(r).unwrap()
}

pub fn random_symbol(r: &mut impl Rng, u: &Universe) -> SymbolId {
    let ids: Vec<SymbolId> = u.ids().collect();
    *ids.choose(r).unwrap()
}

/// Half-integer in `[-lim, lim]`, occasionally a third-integer.
pub fn random_exponent(r: &mut impl Rng, lim: i64) -> Q {
    if r.gen_ratio(1, 10) {
        qr(r.gen_range(-3 * lim..=3 * lim), 3)
    } else {
        qr(r.gen_range(-2 * lim..=2 * lim), 2)
    }
}

pub fn random_triple(r: &mut impl Rng, u: &Universe) -> Triple {
    let rho = random_symbol(r, u);
    let e = random_exponent(r, 4);
    let len = r.gen_range(1..=4);
    Triple::new(rho, e, e - q(len - 1)).unwrap()
}

/// Random triple with `e + f != 0`.
pub fn random_off_centre_triple(r: &mut impl Rng, u: &Universe) -> Triple {
    loop {
        let t = random_triple(r, u);
        if t.e() + t.f() != q(0) {
            return t;
        }
    }
}

/// Random parameter on a special orthogonal group whose dimension has the
/// given parity.
pub fn random_parameter(
    r: &mut impl Rng,
    u: &Universe,
    odd: bool,
    quasisplit: bool,
) -> LanglandsParameter {
    let kind = if odd {
        GroupKind::OddOrthogonal
    } else {
        GroupKind::EvenOrthogonal
    };
    let tempered = random_jordan(r, u, kind);
    let mut blocks: Multiset<ParamBlock> = tempered
        .blocks()
        .iter()
        .map(|b| ParamBlock::new(b.rho, b.a, q(0)))
        .collect();
    let mut extra = 0i64;
    for _ in 0..r.gen_range(0..=2) {
        let rho = random_symbol(r, u);
        let a = r.gen_range(1..=4);
        let b = qr(r.gen_range(1..=12), 2);
        blocks.insert(ParamBlock::new(rho, a, b));
        extra += 2 * a as i64 * u.dim(rho) as i64;
    }
    let group = tempered
        .group()
        .same_type_with_dual_dim(tempered.group().dual_dim() as i64 + extra)
        .unwrap()
        .with_quasisplit(quasisplit);
    LanglandsParameter::new(u, group, blocks, None).unwrap()
}
