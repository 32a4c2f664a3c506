//! The universe of abstract cuspidal symbols and the classical group spaces
//! they are induced to.
//!
//! A [`Universe`] is built once from a list of declarations and is immutable
//! afterwards; symbols are interned and referred to by [`SymbolId`]. Every
//! function elsewhere in the crate that takes a `SymbolId` expects it to come
//! from the universe passed alongside it.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Interned handle of a cuspidal symbol. Equality is identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(pub(crate) u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Self-duality type of a cuspidal symbol, with the dual resolved to an id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelfDuality {
    NotSelfDual(SymbolId),
    Orthogonal,
    Symplectic,
}

/// A registered unitary cuspidal representation of some `GL(dim)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspidalSymbol {
    pub name: String,
    pub dim: u32,
    pub selfdual: SelfDuality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolDecl {
    pub id: String,
    pub dim: u32,
    pub selfdual: SelfDualDecl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SelfDualDecl {
    /// `"O"` or `"S"`.
    Type(String),
    Dual {
        dual: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Universe {
    symbols: Vec<CuspidalSymbol>,
    by_name: HashMap<String, SymbolId>,
}

impl Universe {
    pub fn from_decls(decls: &[SymbolDecl]) -> Result<Universe> {
        let mut by_name = HashMap::new();
        for (i, d) in decls.iter().enumerate() {
            if d.id.is_empty() {
                return Err(Error::validation("symbol id must be non-empty"));
            }
            if by_name.insert(d.id.clone(), SymbolId(i as u32)).is_some() {
                return Err(Error::validation(format!("duplicate symbol id `{}`", d.id)));
            }
        }
        let mut symbols = Vec::with_capacity(decls.len());
        for d in decls {
            if d.dim == 0 {
                return Err(Error::validation(format!("symbol `{}` has dim 0", d.id)));
            }
            let selfdual = match &d.selfdual {
                SelfDualDecl::Type(t) if t == "O" => SelfDuality::Orthogonal,
                SelfDualDecl::Type(t) if t == "S" => SelfDuality::Symplectic,
                SelfDualDecl::Type(t) => {
                    return Err(Error::validation(format!(
                        "symbol `{}`: selfdual must be \"O\", \"S\" or {{\"dual\": id}}, got `{t}`",
                        d.id
                    )))
                }
                SelfDualDecl::Dual { dual } => {
                    let other = *by_name
                        .get(dual)
                        .ok_or_else(|| Error::UnknownSymbol(dual.clone()))?;
                    if dual == &d.id {
                        return Err(Error::validation(format!(
                            "symbol `{}` declares itself as its non-self-dual partner",
                            d.id
                        )));
                    }
                    SelfDuality::NotSelfDual(other)
                }
            };
            symbols.push(CuspidalSymbol {
                name: d.id.clone(),
                dim: d.dim,
                selfdual,
            });
        }
        let u = Universe { symbols, by_name };
        for (i, s) in u.symbols.iter().enumerate() {
            if let SelfDuality::NotSelfDual(other) = s.selfdual {
                let back = &u.symbols[other.index()];
                if back.selfdual != SelfDuality::NotSelfDual(SymbolId(i as u32)) {
                    return Err(Error::validation(format!(
                        "dual link `{}` -> `{}` is not reciprocated",
                        s.name, back.name
                    )));
                }
                if back.dim != s.dim {
                    return Err(Error::validation(format!(
                        "`{}` and its dual `{}` have different dims",
                        s.name, back.name
                    )));
                }
            }
        }
        Ok(u)
    }

    pub fn from_json_str(text: &str) -> Result<Universe> {
        let decls: Vec<SymbolDecl> = serde_json::from_str(text)
            .map_err(|e| Error::validation(format!("universe file: {e}")))?;
        Self::from_decls(&decls)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Universe> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn decls(&self) -> Vec<SymbolDecl> {
        self.symbols
            .iter()
            .map(|s| SymbolDecl {
                id: s.name.clone(),
                dim: s.dim,
                selfdual: match s.selfdual {
                    SelfDuality::Orthogonal => SelfDualDecl::Type("O".into()),
                    SelfDuality::Symplectic => SelfDualDecl::Type("S".into()),
                    SelfDuality::NotSelfDual(d) => SelfDualDecl::Dual {
                        dual: self.name(d).to_string(),
                    },
                },
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = SymbolId> + '_ {
        (0..self.symbols.len() as u32).map(SymbolId)
    }

    pub fn contains(&self, id: SymbolId) -> bool {
        id.index() < self.symbols.len()
    }

    pub fn lookup(&self, name: &str) -> Result<SymbolId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn get(&self, id: SymbolId) -> Result<&CuspidalSymbol> {
        self.symbols
            .get(id.index())
            .ok_or_else(|| Error::UnknownSymbol(format!("#{}", id.0)))
    }

    fn info(&self, id: SymbolId) -> &CuspidalSymbol {
        &self.symbols[id.index()]
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.info(id).name
    }

    /// `d_ρ`, the `n` of `GL(n)`.
    pub fn dim(&self, id: SymbolId) -> u32 {
        self.info(id).dim
    }

    pub fn selfduality(&self, id: SymbolId) -> SelfDuality {
        self.info(id).selfdual
    }

    pub fn is_self_dual(&self, id: SymbolId) -> bool {
        !matches!(self.selfduality(id), SelfDuality::NotSelfDual(_))
    }

    /// The contragredient `ρ̌`.
    pub fn dual(&self, id: SymbolId) -> Result<SymbolId> {
        Ok(match self.get(id)?.selfdual {
            SelfDuality::NotSelfDual(d) => d,
            _ => id,
        })
    }

    /// Like [`Universe::dual`] for ids known to belong to this universe.
    pub(crate) fn dual_of(&self, id: SymbolId) -> SymbolId {
        match self.selfduality(id) {
            SelfDuality::NotSelfDual(d) => d,
            _ => id,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Symplectic,
    OddOrthogonal,
    EvenOrthogonal,
}

impl GroupKind {
    pub fn is_orthogonal(self) -> bool {
        !matches!(self, GroupKind::Symplectic)
    }

    /// Whether the dual group is symplectic (`Sp(d̂)`) rather than orthogonal.
    pub fn dual_is_symplectic(self) -> bool {
        matches!(self, GroupKind::OddOrthogonal)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Symplectic => "Sp",
            GroupKind::OddOrthogonal => "SO",
            GroupKind::EvenOrthogonal => "SO",
        })
    }
}

/// A symplectic or special orthogonal group, given by its space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupSpaceRepr", into = "GroupSpaceRepr")]
pub struct GroupSpace {
    kind: GroupKind,
    dim: u32,
    quasisplit: bool,
    discriminant: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct GroupSpaceRepr {
    kind: GroupKind,
    dim: u32,
    #[serde(default = "default_true")]
    quasisplit: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    discriminant: Option<String>,
}

fn default_true() -> bool {
    true
}

impl TryFrom<GroupSpaceRepr> for GroupSpace {
    type Error = Error;

    fn try_from(r: GroupSpaceRepr) -> Result<Self> {
        let mut g = GroupSpace::new(r.kind, r.dim)?.with_quasisplit(r.quasisplit);
        g.discriminant = r.discriminant;
        Ok(g)
    }
}

impl From<GroupSpace> for GroupSpaceRepr {
    fn from(g: GroupSpace) -> Self {
        GroupSpaceRepr {
            kind: g.kind,
            dim: g.dim,
            quasisplit: g.quasisplit,
            discriminant: g.discriminant,
        }
    }
}

impl GroupSpace {
    /// Quasi-split group of the given kind on a space of dimension `dim`.
    ///
    /// Dimension 0 is accepted for the symplectic and even orthogonal kinds
    /// (the trivial groups `Sp(0)` and `SO(0)`), and odd orthogonal groups
    /// start at `SO(1)`; these arise as Levi blocks of larger groups.
    pub fn new(kind: GroupKind, dim: u32) -> Result<GroupSpace> {
        let ok = match kind {
            GroupKind::OddOrthogonal => dim % 2 == 1,
            GroupKind::EvenOrthogonal | GroupKind::Symplectic => dim.is_multiple_of(2),
        };
        if !ok {
            return Err(Error::validation(format!(
                "{kind:?} group cannot act on a space of dimension {dim}"
            )));
        }
        Ok(GroupSpace {
            kind,
            dim,
            quasisplit: true,
            discriminant: None,
        })
    }

    /// `SO(dim)` of the parity-appropriate kind.
    pub fn orthogonal(dim: u32) -> GroupSpace {
        let kind = if dim % 2 == 1 {
            GroupKind::OddOrthogonal
        } else {
            GroupKind::EvenOrthogonal
        };
        GroupSpace::new(kind, dim).expect("parity chosen to match")
    }

    pub fn with_quasisplit(mut self, quasisplit: bool) -> Self {
        self.quasisplit = quasisplit;
        self
    }

    pub fn with_discriminant(mut self, label: impl Into<String>) -> Self {
        self.discriminant = Some(label.into());
        self
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn quasisplit(&self) -> bool {
        self.quasisplit
    }

    pub fn discriminant(&self) -> Option<&str> {
        self.discriminant.as_deref()
    }

    /// `d̂_G`, the size of the dual group's standard representation.
    pub fn dual_dim(&self) -> u32 {
        match self.kind {
            GroupKind::Symplectic => self.dim + 1,
            GroupKind::OddOrthogonal => self.dim - 1,
            GroupKind::EvenOrthogonal => self.dim,
        }
    }

    /// Group of the same type (kind, inner form, discriminant) whose dual
    /// dimension is `dual_dim`.
    pub fn same_type_with_dual_dim(&self, dual_dim: i64) -> Result<GroupSpace> {
        let dim = match self.kind {
            GroupKind::Symplectic => dual_dim - 1,
            GroupKind::OddOrthogonal => dual_dim + 1,
            GroupKind::EvenOrthogonal => dual_dim,
        };
        if dim < 0 {
            return Err(Error::validation(format!(
                "no {:?} group has dual dimension {dual_dim}",
                self.kind
            )));
        }
        let mut g = GroupSpace::new(self.kind, dim as u32)?;
        g.quasisplit = self.quasisplit;
        g.discriminant = self.discriminant.clone();
        Ok(g)
    }
}

impl fmt::Display for GroupSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.dim)?;
        if !self.quasisplit {
            f.write_str(" non-quasi-split")?;
        }
        Ok(())
    }
}
