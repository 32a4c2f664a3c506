//! Branching multiplicities for pairs of special orthogonal groups.
//!
//! The sign `E(φ,φ')` and the characters `ε`, `ε'` are not computed here;
//! they come from an [`EpsilonOracle`]. The engine reduces both parameters
//! to their tempered parts, asks the oracle once, and lays out the answer as
//! a 0/1 table over the packet labels.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{JordanSet, JordanSetJson};
use crate::packets::{
    component_rank, enumerate_characters, is_generic, packet_is_empty, LanglandsParameter, Sign,
    SignCharacter,
};
use crate::symbols::{GroupKind, GroupSpace, Universe};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpPair {
    g: GroupSpace,
    gprime: GroupSpace,
    nu0: Option<String>,
}

impl GpPair {
    /// `SO(d) × SO(d')` with `d > d'` of distinct parities.
    pub fn new(g: GroupSpace, gprime: GroupSpace, nu0: Option<String>) -> Result<GpPair> {
        if !g.kind().is_orthogonal() || !gprime.kind().is_orthogonal() {
            return Err(Error::validation(
                "both groups of a pair must be special orthogonal",
            ));
        }
        if g.dim() % 2 == gprime.dim() % 2 {
            return Err(Error::validation(format!(
                "dimensions {} and {} must have distinct parities",
                g.dim(),
                gprime.dim()
            )));
        }
        if g.dim() <= gprime.dim() {
            return Err(Error::validation(format!(
                "need d > d', got {} <= {}",
                g.dim(),
                gprime.dim()
            )));
        }
        Ok(GpPair { g, gprime, nu0 })
    }

    /// Pair of Levi blocks `G₀ × G'₀`, where either group may be the larger
    /// one; only the distinct parities are required.
    pub fn new_unordered(g: GroupSpace, gprime: GroupSpace, nu0: Option<String>) -> Result<GpPair> {
        if g.dim() < gprime.dim() {
            GpPair::new(gprime.clone(), g.clone(), nu0.clone())?;
        } else {
            GpPair::new(g.clone(), gprime.clone(), nu0.clone())?;
        }
        Ok(GpPair { g, gprime, nu0 })
    }

    pub fn g(&self) -> &GroupSpace {
        &self.g
    }

    pub fn gprime(&self) -> &GroupSpace {
        &self.gprime
    }

    pub fn nu0(&self) -> Option<&str> {
        self.nu0.as_deref()
    }
}

/// `+1` when both groups are quasi-split, `-1` otherwise.
pub fn mu(pair: &GpPair) -> Sign {
    if pair.g.quasisplit() && pair.gprime.quasisplit() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    pub e: Sign,
    pub eps: SignCharacter,
    pub eps_prime: SignCharacter,
}

/// Source of `(E, ε, ε')` for a pair of tempered Jordan sets. Must be
/// deterministic.
pub trait EpsilonOracle {
    fn query(&self, u: &Universe, j: &JordanSet, jprime: &JordanSet) -> Result<OracleAnswer>;
}

impl<O: EpsilonOracle + ?Sized> EpsilonOracle for &O {
    fn query(&self, u: &Universe, j: &JordanSet, jprime: &JordanSet) -> Result<OracleAnswer> {
        (**self).query(u, j, jprime)
    }
}

/// Stand-in oracle for exercising the pipeline. It encodes no mathematics:
/// `E = +1` iff the total number of good-parity blocks of `j` and `j'` is
/// even, and both characters are identically `+1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DemoOracle;

pub fn demo_oracle() -> DemoOracle {
    DemoOracle
}

impl EpsilonOracle for DemoOracle {
    fn query(&self, u: &Universe, j: &JordanSet, jprime: &JordanSet) -> Result<OracleAnswer> {
        let rank = component_rank(u, j) + component_rank(u, jprime);
        let plus = |j: &JordanSet| {
            enumerate_characters(u, j)
                .into_iter()
                .next()
                .expect("the all-plus character always exists")
        };
        Ok(OracleAnswer {
            e: if rank.is_multiple_of(2) {
                Sign::Plus
            } else {
                Sign::Minus
            },
            eps: plus(j),
            eps_prime: plus(jprime),
        })
    }
}

/// One record of an oracle table file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub j: JordanSetJson,
    pub jprime: JordanSetJson,
    #[serde(rename = "E")]
    pub e: Sign,
    #[serde(default)]
    pub eps: BTreeMap<String, Sign>,
    #[serde(default, rename = "epsPrime")]
    pub eps_prime: BTreeMap<String, Sign>,
}

/// Oracle backed by a finite table, keyed by the canonical serialization of
/// the pair `(j, j')`.
#[derive(Clone, Debug, Default)]
pub struct TableOracle {
    entries: HashMap<String, OracleAnswer>,
}

fn pair_key(u: &Universe, j: &JordanSet, jprime: &JordanSet) -> String {
    serde_json::to_string(&(j.to_json(u), jprime.to_json(u))).expect("plain data serializes")
}

impl TableOracle {
    pub fn from_entries(u: &Universe, entries: &[OracleEntry]) -> Result<TableOracle> {
        let mut out = HashMap::new();
        for ent in entries {
            let j = JordanSet::from_json(u, &ent.j)?;
            let jp = JordanSet::from_json(u, &ent.jprime)?;
            let answer = OracleAnswer {
                e: ent.e,
                eps: SignCharacter::from_json(u, &ent.eps)?,
                eps_prime: SignCharacter::from_json(u, &ent.eps_prime)?,
            };
            let key = pair_key(u, &j, &jp);
            if let Some(prev) = out.get(&key) {
                if prev != &answer {
                    return Err(Error::validation(
                        "oracle table has conflicting entries for one pair",
                    ));
                }
            }
            out.insert(key, answer);
        }
        Ok(TableOracle { entries: out })
    }

    pub fn from_json_str(u: &Universe, text: &str) -> Result<TableOracle> {
        let entries: Vec<OracleEntry> = serde_json::from_str(text)
            .map_err(|e| Error::validation(format!("oracle file: {e}")))?;
        Self::from_entries(u, &entries)
    }

    pub fn from_json_file(u: &Universe, path: impl AsRef<Path>) -> Result<TableOracle> {
        Self::from_json_str(u, &std::fs::read_to_string(path)?)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl EpsilonOracle for TableOracle {
    fn query(&self, u: &Universe, j: &JordanSet, jprime: &JordanSet) -> Result<OracleAnswer> {
        self.entries
            .get(&pair_key(u, j, jprime))
            .cloned()
            .ok_or_else(|| {
                Error::OracleContract("no oracle entry for this pair of Jordan sets".into())
            })
    }
}

/// The tempered parts of two generic parameters.
pub fn reduce_to_tempered(
    u: &Universe,
    p: &LanglandsParameter,
    p2: &LanglandsParameter,
) -> Result<(JordanSet, JordanSet)> {
    for (which, x) in [("first", p), ("second", p2)] {
        if !is_generic(u, x) {
            return Err(Error::domain(format!(
                "the {which} parameter is not generic"
            )));
        }
    }
    Ok((p.tempered_part().clone(), p2.tempered_part().clone()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub rows: Vec<SignCharacter>,
    pub cols: Vec<SignCharacter>,
    pub entries: Vec<Vec<u8>>,
    /// Labels on an even orthogonal side stand for classes `{π, π^w}`.
    pub coarse_rows: bool,
    pub coarse_cols: bool,
    pub mu: Sign,
    /// `None` when an empty packet made the oracle call unnecessary.
    pub e: Option<Sign>,
}

impl MultiplicityTable {
    pub fn total_mass(&self) -> u32 {
        self.entries.iter().flatten().map(|&x| x as u32).sum()
    }

    /// Position of the unique 1, if any.
    pub fn one_at(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&x| x == 1).map(|c| (r, c)))
    }

    pub fn to_json(&self, u: &Universe) -> serde_json::Value {
        serde_json::json!({
            "rows": self.rows.iter().map(|c| c.label(u)).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(|c| c.label(u)).collect::<Vec<_>>(),
            "entries": self.entries,
            "coarse_rows": self.coarse_rows,
            "coarse_cols": self.coarse_cols,
            "mu": self.mu,
            "E": self.e,
        })
    }
}

fn same_group(a: &GroupSpace, b: &GroupSpace) -> bool {
    a.kind() == b.kind() && a.dim() == b.dim() && a.quasisplit() == b.quasisplit()
}

pub fn multiplicity_table(
    u: &Universe,
    p: &LanglandsParameter,
    p2: &LanglandsParameter,
    pair: &GpPair,
    oracle: &dyn EpsilonOracle,
) -> Result<MultiplicityTable> {
    if !same_group(p.group(), &pair.g) || !same_group(p2.group(), &pair.gprime) {
        return Err(Error::validation(
            "parameters do not live on the groups of the pair",
        ));
    }
    let (j0, j0p) = reduce_to_tempered(u, p, p2)?;
    let m = mu(pair);
    let rows = if packet_is_empty(p) {
        Vec::new()
    } else {
        enumerate_characters(u, &j0)
    };
    let cols = if packet_is_empty(p2) {
        Vec::new()
    } else {
        enumerate_characters(u, &j0p)
    };
    let mut table = MultiplicityTable {
        entries: vec![vec![0; cols.len()]; rows.len()],
        rows,
        cols,
        coarse_rows: pair.g.kind() == GroupKind::EvenOrthogonal,
        coarse_cols: pair.gprime.kind() == GroupKind::EvenOrthogonal,
        mu: m,
        e: None,
    };
    if table.rows.is_empty() || table.cols.is_empty() {
        return Ok(table);
    }
    let ans = oracle.query(u, &j0, &j0p)?;
    if !ans.eps.fits(u, &j0) {
        return Err(Error::OracleContract(
            "eps is not a character on the good-parity blocks of j".into(),
        ));
    }
    if !ans.eps_prime.fits(u, &j0p) {
        return Err(Error::OracleContract(
            "epsPrime is not a character on the good-parity blocks of j'".into(),
        ));
    }
    table.e = Some(ans.e);
    if ans.e == m {
        let r = table.rows.iter().position(|c| c == &ans.eps);
        let c = table.cols.iter().position(|c| c == &ans.eps_prime);
        match (r, c) {
            (Some(r), Some(c)) => table.entries[r][c] = 1,
            _ => {
                return Err(Error::OracleContract(
                    "oracle characters do not label packet members".into(),
                ))
            }
        }
    }
    Ok(table)
}
