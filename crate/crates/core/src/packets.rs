//! Langlands parameters, their standard-module data and packet labels.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{good_parity, Block, JordanSet};
use crate::linkage::{family_not_linked, Triple};
use crate::multiset::Multiset;
use crate::rational::{q, serde_q, Q};
use crate::symbols::{GroupKind, GroupSpace, SymbolId, Universe};

/// `St(ρ,a)|·|^b`; `b = 0` blocks make up the tempered part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamBlock {
    pub rho: SymbolId,
    pub a: u32,
    pub b: Q,
}

impl ParamBlock {
    pub fn new(rho: SymbolId, a: u32, b: Q) -> Self {
        ParamBlock { rho, a, b }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanglandsParameter {
    group: GroupSpace,
    blocks: Multiset<ParamBlock>,
    discriminant: Option<String>,
    tempered: JordanSet,
}

impl LanglandsParameter {
    pub fn new(
        u: &Universe,
        group: GroupSpace,
        blocks: Multiset<ParamBlock>,
        discriminant: Option<String>,
    ) -> Result<LanglandsParameter> {
        let mut tempered = Multiset::new();
        let mut positive = 0u64;
        for (pb, &n) in blocks.iter_counts() {
            u.get(pb.rho)?;
            if pb.a == 0 {
                return Err(Error::validation("parameter blocks need a >= 1"));
            }
            if pb.b < q(0) {
                return Err(Error::validation(format!(
                    "parameter block with b = {} < 0",
                    pb.b
                )));
            }
            if pb.b == q(0) {
                tempered.insert_n(Block::new(pb.rho, pb.a), n);
            } else {
                positive += pb.a as u64 * u.dim(pb.rho) as u64 * n as u64;
            }
        }
        let residual = group.dual_dim() as i64 - 2 * positive as i64;
        if residual < 0 {
            return Err(Error::validation(format!(
                "positive-exponent blocks need dual dimension {} but {group} has {}",
                2 * positive,
                group.dual_dim()
            )));
        }
        if let (Some(dp), Some(dq)) = (&discriminant, group.discriminant()) {
            if dp != dq {
                return Err(Error::validation(format!(
                    "parameter discriminant `{dp}` does not match group discriminant `{dq}`"
                )));
            }
        }
        let small = group.same_type_with_dual_dim(residual)?;
        let tempered = JordanSet::new(u, small, tempered)?;
        Ok(LanglandsParameter {
            group,
            blocks,
            discriminant,
            tempered,
        })
    }

    pub fn group(&self) -> &GroupSpace {
        &self.group
    }

    pub fn blocks(&self) -> &Multiset<ParamBlock> {
        &self.blocks
    }

    pub fn discriminant(&self) -> Option<&str> {
        self.discriminant.as_deref()
    }

    /// Non-fatal remarks: for even orthogonal groups the discriminant match
    /// can only be checked when both labels are present.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.group.kind() == GroupKind::EvenOrthogonal
            && (self.discriminant.is_none() || self.group.discriminant().is_none())
        {
            out.push("discriminant match not checked: label missing".to_string());
        }
        out
    }

    pub fn tempered_part(&self) -> &JordanSet {
        &self.tempered
    }

    pub fn to_json(&self, u: &Universe) -> ParameterJson {
        ParameterJson {
            group: self.group.clone(),
            blocks: self
                .blocks
                .iter_counts()
                .map(|(pb, &n)| ParamBlockJson(u.name(pb.rho).to_string(), pb.a, pb.b, n))
                .collect(),
            discriminant: self.discriminant.clone(),
        }
    }

    pub fn from_json(u: &Universe, p: &ParameterJson) -> Result<LanglandsParameter> {
        let mut blocks = Multiset::new();
        for ParamBlockJson(name, a, b, n) in &p.blocks {
            blocks.insert_n(ParamBlock::new(u.lookup(name)?, *a, *b), *n);
        }
        LanglandsParameter::new(u, p.group.clone(), blocks, p.discriminant.clone())
    }
}

/// `{"group": {...}, "blocks": [[id, a, b, mult], ...], "discriminant": ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterJson {
    pub group: GroupSpace,
    pub blocks: Vec<ParamBlockJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamBlockJson(
    pub String,
    pub u32,
    #[serde(with = "serde_q")] pub Q,
    pub usize,
);

pub fn tempered_part(p: &LanglandsParameter) -> JordanSet {
    p.tempered.clone()
}

/// `(ρ, (a-1)/2 + b, -(a-1)/2 + b)` for each block with `b > 0`, sorted by
/// `b` descending, then symbol name, then `a` descending.
pub fn standard_triples(u: &Universe, p: &LanglandsParameter) -> Vec<Triple> {
    let mut pos: Vec<&ParamBlock> = p.blocks.iter().filter(|pb| pb.b > q(0)).collect();
    pos.sort_by(|x, y| {
        y.b.cmp(&x.b)
            .then_with(|| u.name(x.rho).cmp(u.name(y.rho)))
            .then_with(|| y.a.cmp(&x.a))
    });
    pos.into_iter()
        .map(|pb| {
            let h = Q::new(pb.a as i64 - 1, 2);
            Triple::new(pb.rho, h + pb.b, -h + pb.b).expect("a >= 1 gives a non-empty segment")
        })
        .collect()
}

pub fn is_generic(u: &Universe, p: &LanglandsParameter) -> bool {
    family_not_linked(u, &standard_triples(u, p), &p.tempered)
}

fn good_blocks(u: &Universe, j: &JordanSet) -> Vec<Block> {
    j.blocks()
        .distinct()
        .filter(|b| good_parity(u, b.rho, b.a, j.group()))
        .copied()
        .collect()
}

/// Rank of the component group as a product of `Z/2Z` factors.
pub fn component_rank(u: &Universe, j: &JordanSet) -> usize {
    good_blocks(u, j).len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::validation(format!("sign must be +1 or -1, got {v}"))),
        }
    }

    pub fn to_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.to_int())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Sign::from_int(i64::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A character of the component group: one sign per distinct good-parity
/// block.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignCharacter {
    pub assignment: BTreeMap<Block, Sign>,
}

impl SignCharacter {
    pub fn constant(blocks: &[Block], sign: Sign) -> SignCharacter {
        SignCharacter {
            assignment: blocks.iter().map(|&b| (b, sign)).collect(),
        }
    }

    pub fn get(&self, b: &Block) -> Option<Sign> {
        self.assignment.get(b).copied()
    }

    /// Whether the domain is exactly the good-parity blocks of `j`.
    pub fn fits(&self, u: &Universe, j: &JordanSet) -> bool {
        self.assignment.keys().copied().eq(good_blocks(u, j))
    }

    /// Compact label such as `(r1,2)+ (r1,4)-`; `1` for the trivial
    /// character.
    pub fn label(&self, u: &Universe) -> String {
        if self.assignment.is_empty() {
            return "1".to_string();
        }
        self.assignment
            .iter()
            .map(|(b, s)| {
                let c = if *s == Sign::Plus { '+' } else { '-' };
                format!("{}{c}", block_label(u, b))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_json(&self, u: &Universe) -> BTreeMap<String, Sign> {
        self.assignment
            .iter()
            .map(|(b, s)| (block_label(u, b), *s))
            .collect()
    }

    pub fn from_json(u: &Universe, m: &BTreeMap<String, Sign>) -> Result<SignCharacter> {
        let mut assignment = BTreeMap::new();
        for (k, s) in m {
            assignment.insert(parse_block_label(u, k)?, *s);
        }
        Ok(SignCharacter { assignment })
    }
}

/// `(name,a)`.
pub fn block_label(u: &Universe, b: &Block) -> String {
    format!("({},{})", u.name(b.rho), b.a)
}

pub fn parse_block_label(u: &Universe, s: &str) -> Result<Block> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::validation(format!("bad block label `{s}`")))?;
    let (name, a) = inner
        .split_once(',')
        .ok_or_else(|| Error::validation(format!("bad block label `{s}`")))?;
    let a: u32 = a
        .trim()
        .parse()
        .map_err(|_| Error::validation(format!("bad block length in `{s}`")))?;
    Ok(Block::new(u.lookup(name.trim())?, a))
}

/// All `2^rank` characters, in lexicographic order over the sorted good
/// blocks with `+1` before `-1`.
pub fn enumerate_characters(u: &Universe, j: &JordanSet) -> Vec<SignCharacter> {
    let blocks = good_blocks(u, j);
    let r = blocks.len();
    (0..1usize << r)
        .map(|i| SignCharacter {
            assignment: blocks
                .iter()
                .enumerate()
                .map(|(k, &b)| {
                    let bit = (i >> (r - 1 - k)) & 1;
                    (b, if bit == 0 { Sign::Plus } else { Sign::Minus })
                })
                .collect(),
        })
        .collect()
}

/// The degenerate case of a non-quasi-split group with no tempered part.
pub fn packet_is_empty(p: &LanglandsParameter) -> bool {
    !p.group.quasisplit() && p.tempered.is_empty()
}
