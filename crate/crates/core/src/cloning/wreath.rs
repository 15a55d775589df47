use std::fmt;

use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::recursion::{GroupWord, Kind, RecursionTable, Root, Verdict};

/// An element `top(f_1, ..., f_n)` of `B_n wr G` or `S_n wr G`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WreathElement {
    top: Root,
    entries: Vec<GroupWord>,
}

/// Variants of the cloning map used to check that the axiom checker catches
/// errors.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum KappaMutation {
    #[default]
    None,
    /// Drop the factor `φ^{(k)}(root(f_k))` from the top.
    OmitRootFactor,
    /// Multiply the root factor on the wrong side of the cloned top.
    SwapFactorOrder,
}

impl WreathElement {
    pub fn new(top: Root, entries: Vec<GroupWord>) -> Result<Self> {
        if top.degree() != entries.len() {
            return Err(Error::DegreeMismatch(top.degree(), entries.len()));
        }
        Ok(WreathElement { top, entries })
    }

    pub fn identity(kind: Kind, n: usize) -> Self {
        WreathElement {
            top: Root::identity(kind, n),
            entries: vec![GroupWord::identity(); n],
        }
    }

    /// Trivial top with the given entries.
    pub fn from_entries(kind: Kind, entries: Vec<GroupWord>) -> Self {
        WreathElement {
            top: Root::identity(kind, entries.len()),
            entries,
        }
    }

    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    pub fn top(&self) -> &Root {
        &self.top
    }

    pub fn entries(&self) -> &[GroupWord] {
        &self.entries
    }

    pub fn kind(&self) -> Kind {
        self.top.kind()
    }

    /// `ρ_n`: the permutation of the top, forgetting the entries.
    pub fn rho(&self) -> Permutation {
        self.top.perm()
    }

    /// `x·y`, entry `i` being `x_{ρ(y)(i)} y_i`.
    pub fn mul(&self, table: &RecursionTable, y: &WreathElement) -> Result<WreathElement> {
        if self.degree() != y.degree() {
            return Err(Error::DegreeMismatch(self.degree(), y.degree()));
        }
        if self.kind() != y.kind() {
            return Err(Error::TableMismatch(
                self.kind().to_string(),
                y.kind().to_string(),
            ));
        }
        let p = y.rho();
        let entries = (1..=self.degree())
            .map(|i| table.normalize(&self.entries[p.apply(i) - 1].mul(&y.entries[i - 1])))
            .collect();
        Ok(WreathElement {
            top: self.top.mul(&y.top),
            entries,
        })
    }

    pub fn inverse(&self) -> WreathElement {
        let top = self.top.inverse();
        let p = top.perm();
        let entries = (1..=self.degree())
            .map(|i| self.entries[p.apply(i) - 1].inverse())
            .collect();
        WreathElement { top, entries }
    }

    /// The cloning map `κ_k`: the top is cloned at `k` and multiplied by the
    /// root of `f_k` placed on the new block, and `f_k` is replaced by its
    /// sections.
    pub fn kappa(&self, table: &RecursionTable, k: usize) -> Result<WreathElement> {
        self.kappa_mutated(table, k, KappaMutation::None)
    }

    pub fn kappa_mutated(
        &self,
        table: &RecursionTable,
        k: usize,
        mutation: KappaMutation,
    ) -> Result<WreathElement> {
        let n = self.degree();
        let d = table.degree();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, max: n });
        }
        if table.kind() != self.kind() {
            return Err(Error::TableMismatch(
                table.name().into(),
                self.kind().to_string(),
            ));
        }
        let rec = table.recursion(&self.entries[k - 1]);
        let top = match (&self.top, &rec.root) {
            (Root::Braid(beta), Root::Braid(r)) => {
                let cloned = beta.clone_at(k, d)?;
                let local = r.shift_embed(k, n)?;
                Root::Braid(match mutation {
                    KappaMutation::None => cloned.mul(&local)?,
                    KappaMutation::OmitRootFactor => cloned,
                    KappaMutation::SwapFactorOrder => local.mul(&cloned)?,
                })
            }
            (Root::Perm(sigma), Root::Perm(r)) => {
                let cloned = sigma.clone_at(k, d)?;
                let local = r.shift_embed(k, n);
                Root::Perm(match mutation {
                    KappaMutation::None => &cloned * &local,
                    KappaMutation::OmitRootFactor => cloned,
                    KappaMutation::SwapFactorOrder => &local * &cloned,
                })
            }
            _ => {
                return Err(Error::TableMismatch(
                    table.name().into(),
                    self.kind().to_string(),
                ))
            }
        };
        let mut entries = Vec::with_capacity(n + d - 1);
        entries.extend_from_slice(&self.entries[..k - 1]);
        entries.extend(rec.sections);
        entries.extend_from_slice(&self.entries[k..]);
        Ok(WreathElement { top, entries })
    }

    /// Exact or three-valued equality, depending on the table.
    pub fn eq(&self, table: &RecursionTable, other: &WreathElement, budget: usize) -> Verdict {
        if self.degree() != other.degree() || !self.top.same_as(&other.top) {
            return Verdict::Unequal;
        }
        let mut v = Verdict::Equal;
        for (x, y) in self.entries.iter().zip(&other.entries) {
            v = v.and(table.eq_in(x, y, budget));
            if v == Verdict::Unequal {
                break;
            }
        }
        v
    }

    pub fn is_identity(&self, table: &RecursionTable, budget: usize) -> Verdict {
        if !self.top.is_trivial() {
            return Verdict::Unequal;
        }
        let mut v = Verdict::Equal;
        for x in &self.entries {
            v = v.and(table.is_identity(x, budget));
            if v == Verdict::Unequal {
                break;
            }
        }
        v
    }

    /// Image under `π`: top projected to `S_n`, entries read in the image
    /// table (same letters).
    pub fn project(&self) -> WreathElement {
        WreathElement {
            top: self.top.project(),
            entries: self.entries.clone(),
        }
    }

    pub fn with_top(&self, top: Root) -> Result<WreathElement> {
        WreathElement::new(top, self.entries.clone())
    }

    pub fn display<'a>(&'a self, table: &'a RecursionTable) -> WreathDisplay<'a> {
        WreathDisplay { x: self, table }
    }

    pub fn braid_top(&self) -> Option<&BraidWord> {
        self.top.as_braid()
    }
}

pub struct WreathDisplay<'a> {
    x: &'a WreathElement,
    table: &'a RecursionTable,
}

impl fmt::Display for WreathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .x
            .entries
            .iter()
            .map(|e| self.table.format_word(e))
            .collect();
        write!(f, "{}({})", self.x.top, entries.join(", "))
    }
}
