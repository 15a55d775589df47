use std::fmt;

use crate::braid::{BraidWord, Permutation};

/// Whether roots live in `B_d` (braided self-similar groups) or `S_d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    Braided,
    Symmetric,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Braided => "braided",
            Kind::Symmetric => "symmetric",
        })
    }
}

/// The root part of a wreath recursion.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Root {
    Braid(BraidWord),
    Perm(Permutation),
}

impl Root {
    pub fn identity(kind: Kind, degree: usize) -> Root {
        match kind {
            Kind::Braided => Root::Braid(BraidWord::identity(degree)),
            Kind::Symmetric => Root::Perm(Permutation::identity(degree)),
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Root::Braid(_) => Kind::Braided,
            Root::Perm(_) => Kind::Symmetric,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Root::Braid(b) => b.strands(),
            Root::Perm(p) => p.degree(),
        }
    }

    /// `self · other`; panics if the kinds or degrees differ.
    pub fn mul(&self, other: &Root) -> Root {
        match (self, other) {
            (Root::Braid(x), Root::Braid(y)) => Root::Braid(x.mul(y).expect("equal strand counts")),
            (Root::Perm(x), Root::Perm(y)) => Root::Perm(x * y),
            _ => panic!("cannot multiply a braid root by a permutation root"),
        }
    }

    pub fn inverse(&self) -> Root {
        match self {
            Root::Braid(b) => Root::Braid(b.inverse()),
            Root::Perm(p) => Root::Perm(p.inverse()),
        }
    }

    /// The underlying permutation (through the natural projection for braids).
    pub fn perm(&self) -> Permutation {
        match self {
            Root::Braid(b) => b.perm(),
            Root::Perm(p) => p.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            Root::Braid(b) => b.is_trivial(),
            Root::Perm(p) => p.is_identity(),
        }
    }

    /// Group equality (not syntactic equality of braid words).
    pub fn same_as(&self, other: &Root) -> bool {
        match (self, other) {
            (Root::Braid(x), Root::Braid(y)) => x.braid_eq(y).unwrap_or(false),
            (Root::Perm(x), Root::Perm(y)) => x == y,
            _ => false,
        }
    }

    pub fn as_braid(&self) -> Option<&BraidWord> {
        match self {
            Root::Braid(b) => Some(b),
            Root::Perm(_) => None,
        }
    }

    /// Image under the natural projection to `S_d`.
    pub fn project(&self) -> Root {
        Root::Perm(self.perm())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Braid(b) => write!(f, "{b}"),
            Root::Perm(p) => write!(f, "{p}"),
        }
    }
}
