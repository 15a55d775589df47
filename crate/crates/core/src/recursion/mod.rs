//! Recursion tables for (braided) self-similar groups: each generator is
//! given by a wreath recursion `g = root(g)(g_1, ..., g_d)`.

mod builtin;
mod parse;
mod root;
mod word;
pub mod zwrz;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rand::Rng;

pub use builtin::{brgrig, grig, self_identical, trivial, zwrz};
pub use root::{Kind, Root};
pub use word::GroupWord;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::grigsolver::{self, GrigWord, ReducedWord};
use zwrz::ZwrZ;

/// Default budget for depth-bounded searches.
pub const DEFAULT_DEPTH: usize = 32;

/// Vertex cap for the generic breadth-first identity search.
const MAX_VERTICES: usize = 1 << 14;

/// Three-valued equality verdict.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    Equal,
    Unequal,
    /// The oracle gave up; records the budget that was exhausted.
    Unknown {
        budget: usize,
    },
}

impl Verdict {
    pub fn is_equal(self) -> bool {
        self == Verdict::Equal
    }

    pub fn from_bool(equal: bool) -> Verdict {
        if equal {
            Verdict::Equal
        } else {
            Verdict::Unequal
        }
    }

    /// Conjunction: unequal wins over unknown, unknown over equal.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Unequal, _) | (_, Verdict::Unequal) => Verdict::Unequal,
            (Verdict::Unknown { budget }, _) | (_, Verdict::Unknown { budget }) => {
                Verdict::Unknown { budget }
            }
            _ => Verdict::Equal,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => f.write_str("equal"),
            Verdict::Unequal => f.write_str("unequal"),
            Verdict::Unknown { budget } => write!(f, "unknown (budget {budget})"),
        }
    }
}

/// Wreath recursion of one element: root part and `d` sections.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Recursion {
    pub root: Root,
    pub sections: Vec<GroupWord>,
}

/// Exact equality oracle detected from the shape of a table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Solver {
    /// Braided Grigorchuk group; `to_canonical[j-1]` is the position of
    /// generator `j` in the order `a, b, c, d`.
    BrGrig {
        to_canonical: Vec<usize>,
    },
    /// Classical Grigorchuk group, same letter map.
    Grig {
        to_canonical: Vec<usize>,
    },
    /// `Z wr Z`; generator indices of `a` and `b`.
    ZwrZ {
        a: usize,
        b: usize,
    },
    /// Every section of every generator is the generator itself, so elements
    /// are determined by their roots.
    SelfIdentical,
    /// Every generator is the identity.
    Trivial,
    None,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub symbol: String,
    pub root: Root,
    pub sections: Vec<GroupWord>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SelfIdentity {
    Yes,
    /// A generator whose sections are not all equal to itself.
    No(String),
    Unknown,
}

/// Outcome of looking for an element with a prescribed recursion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Unsection {
    Found(GroupWord),
    NotInImage,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct RecursionTable {
    name: String,
    degree: usize,
    kind: Kind,
    generators: Vec<Generator>,
    symbols: Vec<String>,
    inverse_recursions: Vec<Recursion>,
    solver: Solver,
}

impl RecursionTable {
    /// Validates and builds a table; the equality oracle is chosen from the
    /// table's shape.
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        kind: Kind,
        generators: Vec<Generator>,
    ) -> Result<Self> {
        let name = name.into();
        if degree < 2 {
            return Err(Error::InvalidTable(format!("degree {degree} is below 2")));
        }
        let count = generators.len();
        let mut symbols = Vec::with_capacity(count);
        for g in &generators {
            if g.symbol.is_empty()
                || g.symbol == "1"
                || g.symbol == "e"
                || !g.symbol.chars().all(|c| c.is_alphanumeric() || c == '_')
                || g.symbol.starts_with(|c: char| c.is_ascii_digit())
            {
                return Err(Error::InvalidTable(format!("bad symbol '{}'", g.symbol)));
            }
            if symbols.contains(&g.symbol) {
                return Err(Error::InvalidTable(format!(
                    "duplicate symbol '{}'",
                    g.symbol
                )));
            }
            symbols.push(g.symbol.clone());
            if g.root.kind() != kind || g.root.degree() != degree {
                return Err(Error::InvalidTable(format!(
                    "root of '{}' is not a {kind} root of degree {degree}",
                    g.symbol
                )));
            }
            if g.sections.len() != degree {
                return Err(Error::InvalidTable(format!(
                    "'{}' has {} sections, expected {degree}",
                    g.symbol,
                    g.sections.len()
                )));
            }
            for s in &g.sections {
                if s.letters()
                    .iter()
                    .any(|l| l.unsigned_abs() as usize > count)
                {
                    return Err(Error::InvalidTable(format!(
                        "a section of '{}' uses an unknown generator",
                        g.symbol
                    )));
                }
            }
        }
        let inverse_recursions = generators
            .iter()
            .map(|g| {
                let inv_root = g.root.inverse();
                let p = inv_root.perm();
                let sections = (1..=degree)
                    .map(|i| g.sections[p.apply(i) - 1].inverse())
                    .collect();
                Recursion {
                    root: inv_root,
                    sections,
                }
            })
            .collect();
        let mut table = RecursionTable {
            name,
            degree,
            kind,
            generators,
            symbols,
            inverse_recursions,
            solver: Solver::None,
        };
        table.solver = builtin::detect_solver(&table);
        Ok(table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn solver(&self) -> &Solver {
        &self.solver
    }

    /// Whether equality is decided exactly (never `Unknown`).
    pub fn has_exact_solver(&self) -> bool {
        !matches!(self.solver, Solver::None)
    }

    pub fn generator_index(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol).map(|i| i + 1)
    }

    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        parse::parse_word(&self.symbols, text)
    }

    pub fn format_word(&self, w: &GroupWord) -> String {
        w.format(&self.symbols)
    }

    /// Parses a table from the line-oriented text format.
    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_table(text)
    }

    /// Serializes to the text format read by [`RecursionTable::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "group {}\ndegree {}\nkind {}\n",
            self.name, self.degree, self.kind
        );
        for g in &self.generators {
            let secs: Vec<String> = g.sections.iter().map(|s| self.format_word(s)).collect();
            out.push_str(&format!(
                "gen {} = {} | {}\n",
                g.symbol,
                g.root,
                secs.join(", ")
            ));
        }
        out
    }

    fn letter_recursion(&self, l: i32) -> Recursion {
        let j = l.unsigned_abs() as usize - 1;
        if l > 0 {
            let g = &self.generators[j];
            Recursion {
                root: g.root.clone(),
                sections: g.sections.clone(),
            }
        } else {
            self.inverse_recursions[j].clone()
        }
    }

    pub fn identity_root(&self) -> Root {
        Root::identity(self.kind, self.degree)
    }

    /// Root part, the homomorphic extension of the generators' roots.
    pub fn root(&self, w: &GroupWord) -> Root {
        match self.kind {
            Kind::Braided => {
                let mut letters = Vec::new();
                for &l in w.letters() {
                    let r = if l > 0 {
                        &self.generators[l as usize - 1].root
                    } else {
                        &self.inverse_recursions[(-l) as usize - 1].root
                    };
                    letters.extend_from_slice(r.as_braid().expect("braided table").letters());
                }
                let b = BraidWord::new(self.degree, letters).expect("roots have table degree");
                Root::Braid(b.free_reduce())
            }
            Kind::Symmetric => {
                let mut p = crate::braid::Permutation::identity(self.degree);
                for &l in w.letters() {
                    let r = if l > 0 {
                        &self.generators[l as usize - 1].root
                    } else {
                        &self.inverse_recursions[(-l) as usize - 1].root
                    };
                    p = &p * &r.perm();
                }
                Root::Perm(p)
            }
        }
    }

    /// Full wreath recursion with normalized sections.
    pub fn recursion(&self, w: &GroupWord) -> Recursion {
        let rec = self.raw_recursion(w);
        Recursion {
            root: rec.root,
            sections: rec.sections.iter().map(|s| self.normalize(s)).collect(),
        }
    }

    /// Wreath recursion with freely reduced but otherwise unsimplified
    /// sections, using the product rule
    /// `β(f)·γ(g) = βγ(f_{γ(1)} g_1, ..., f_{γ(d)} g_d)`.
    pub fn raw_recursion(&self, w: &GroupWord) -> Recursion {
        let mut root = self.identity_root();
        let mut sections = vec![GroupWord::identity(); self.degree];
        for &l in w.letters() {
            let rec = self.letter_recursion(l);
            let p = rec.root.perm();
            let mut next = Vec::with_capacity(self.degree);
            for i in 1..=self.degree {
                let mut s = sections[p.apply(i) - 1].clone();
                s.extend(&rec.sections[i - 1]);
                next.push(s);
            }
            sections = next;
            root = root.mul(&rec.root);
        }
        if let Root::Braid(b) = &root {
            root = Root::Braid(b.free_reduce());
        }
        Recursion { root, sections }
    }

    pub fn sections(&self, w: &GroupWord) -> Vec<GroupWord> {
        self.recursion(w).sections
    }

    /// Canonical representative where the table has one (reduced form for
    /// the Grigorchuk groups, the wreath normal form for `Z wr Z`), otherwise
    /// the freely reduced word.
    pub fn normalize(&self, w: &GroupWord) -> GroupWord {
        match &self.solver {
            Solver::BrGrig { to_canonical } => {
                let rw = ReducedWord::from_letters(w.relabel(to_canonical).letters());
                rw.to_word().relabel(&invert_map(to_canonical))
            }
            Solver::Grig { to_canonical } => {
                let gw = GrigWord::from_letters(w.relabel(to_canonical).letters());
                GroupWord::from_letters(gw.to_letters()).relabel(&invert_map(to_canonical))
            }
            Solver::ZwrZ { a, b } => ZwrZ::from_word(w, *a, *b).to_word(*a, *b),
            Solver::Trivial => GroupWord::identity(),
            Solver::SelfIdentical | Solver::None => w.clone(),
        }
    }

    /// Breadth-first search of iterated sections for a vertex with
    /// nontrivial root. Returns the (one-based) path to that vertex.
    pub fn nonidentity_certificate(&self, w: &GroupWord, max_depth: usize) -> Option<Vec<usize>> {
        match self.certificate_search(w, max_depth) {
            Search::Nontrivial(path) => Some(path),
            _ => None,
        }
    }

    fn certificate_search(&self, w: &GroupWord, max_depth: usize) -> Search {
        let mut seen: HashSet<GroupWord> = HashSet::new();
        let mut queue: VecDeque<(Vec<usize>, GroupWord)> = VecDeque::new();
        let start = self.normalize(w);
        seen.insert(start.clone());
        queue.push_back((Vec::new(), start));
        let mut truncated = false;
        while let Some((path, word)) = queue.pop_front() {
            if word.is_empty() {
                continue;
            }
            let rec = self.recursion(&word);
            if !rec.root.is_trivial() {
                return Search::Nontrivial(path);
            }
            if path.len() >= max_depth {
                truncated = true;
                continue;
            }
            for (i, s) in rec.sections.into_iter().enumerate() {
                if !s.is_empty() && seen.insert(s.clone()) {
                    if seen.len() > MAX_VERTICES {
                        return Search::Exhausted;
                    }
                    let mut p = path.clone();
                    p.push(i + 1);
                    queue.push_back((p, s));
                }
            }
        }
        if truncated {
            Search::Exhausted
        } else {
            Search::Closed
        }
    }

    /// Decides whether `w` is the identity, exactly when the table has a
    /// solver. Otherwise a closed set of sections with trivial roots proves
    /// triviality, a nontrivial root disproves it, and anything else is
    /// unknown.
    pub fn is_identity(&self, w: &GroupWord, budget: usize) -> Verdict {
        match &self.solver {
            Solver::BrGrig { to_canonical } => {
                Verdict::from_bool(grigsolver::is_identity(&w.relabel(to_canonical)))
            }
            Solver::Grig { to_canonical } => {
                Verdict::from_bool(grigsolver::is_identity_grig(&w.relabel(to_canonical)))
            }
            Solver::ZwrZ { a, b } => Verdict::from_bool(ZwrZ::from_word(w, *a, *b).is_identity()),
            Solver::SelfIdentical => Verdict::from_bool(self.root(w).is_trivial()),
            Solver::Trivial => Verdict::Equal,
            Solver::None => self.generic_identity(w, budget),
        }
    }

    /// The solver-free procedure used for tables without a registered oracle.
    pub fn generic_identity(&self, w: &GroupWord, budget: usize) -> Verdict {
        match self.certificate_search(w, budget) {
            Search::Nontrivial(_) => Verdict::Unequal,
            Search::Closed => Verdict::Equal,
            Search::Exhausted => Verdict::Unknown { budget },
        }
    }

    pub fn eq_in(&self, w1: &GroupWord, w2: &GroupWord, budget: usize) -> Verdict {
        self.is_identity(&w1.mul(&w2.inverse()), budget)
    }

    /// Checks `ψ(g) = (g, ..., g)` for every generator.
    pub fn is_self_identical(&self, depth: usize) -> SelfIdentity {
        let mut unknown = false;
        for (j, g) in self.generators.iter().enumerate() {
            let me = GroupWord::generator(j + 1);
            if g.sections.iter().all(|s| *s == me) {
                continue;
            }
            for s in &g.sections {
                match self.eq_in(s, &me, depth) {
                    Verdict::Equal => {}
                    Verdict::Unequal => return SelfIdentity::No(g.symbol.clone()),
                    Verdict::Unknown { .. } => unknown = true,
                }
            }
        }
        if unknown {
            SelfIdentity::Unknown
        } else {
            SelfIdentity::Yes
        }
    }

    /// Looks for an element with recursion `root(sections)`. `Found` results
    /// are always verified.
    pub fn unsection(&self, root: &Root, sections: &[GroupWord], budget: usize) -> Unsection {
        if sections.len() != self.degree || root.degree() != self.degree {
            return Unsection::NotInImage;
        }
        let candidate = match &self.solver {
            Solver::Trivial => {
                return if root.is_trivial() {
                    Unsection::Found(GroupWord::identity())
                } else {
                    Unsection::NotInImage
                };
            }
            Solver::SelfIdentical => sections[0].clone(),
            Solver::ZwrZ { a, b } => {
                let e = match root.as_braid() {
                    Some(r) => r.exponent_sum(),
                    None => return Unsection::NotInImage,
                };
                let first = ZwrZ::from_word(&sections[0], *a, *b);
                let second = ZwrZ::from_word(&sections[1], *a, *b);
                match ZwrZ::unsection(e, &first, &second) {
                    Some(z) => return Unsection::Found(z.to_word(*a, *b)),
                    None => return Unsection::NotInImage,
                }
            }
            Solver::BrGrig { to_canonical } => {
                let e = match root.as_braid() {
                    Some(r) => r.exponent_sum(),
                    None => return Unsection::NotInImage,
                };
                let first = grigsolver::reduce(&sections[0].relabel(to_canonical));
                let second = grigsolver::reduce(&sections[1].relabel(to_canonical));
                let found = grigsolver::unsection(e, &first, &second).or_else(|| {
                    // a^e has recursion ζ^e(1,1)
                    (first.is_identity() && second.is_identity())
                        .then(|| ReducedWord::from_parts(&[(0, 0), (0, 0)], &[e]))
                });
                match found {
                    Some(rw) => rw.to_word().relabel(&invert_map(to_canonical)),
                    None => return Unsection::Unknown,
                }
            }
            Solver::Grig { .. } | Solver::None => {
                if root.is_trivial() && sections.iter().all(|s| s.is_empty()) {
                    GroupWord::identity()
                } else {
                    return Unsection::Unknown;
                }
            }
        };
        let rec = self.recursion(&candidate);
        let mut verdict = Verdict::from_bool(rec.root.same_as(root));
        for (s, t) in rec.sections.iter().zip(sections) {
            verdict = verdict.and(self.eq_in(s, t, budget));
        }
        match (verdict, &self.solver) {
            (Verdict::Equal, _) => Unsection::Found(candidate),
            (Verdict::Unequal, Solver::SelfIdentical) => Unsection::NotInImage,
            _ => Unsection::Unknown,
        }
    }

    /// The table of `π(G)`: roots projected to `S_d`, same sections. The
    /// braided Grigorchuk group maps onto the classical Grigorchuk table.
    pub fn pi_image(&self) -> Result<RecursionTable> {
        if self.kind != Kind::Braided {
            return Err(Error::NoPiImage(self.name.clone()));
        }
        if let Solver::BrGrig { to_canonical } = &self.solver {
            let g = grig();
            let back = invert_map(to_canonical);
            // generator j of this table is canonical letter to_canonical[j-1]
            let generators = (0..self.generators.len())
                .map(|j| {
                    let src = &g.generators[to_canonical[j] - 1];
                    Generator {
                        symbol: self.symbols[j].clone(),
                        root: src.root.clone(),
                        sections: src.sections.iter().map(|s| s.relabel(&back)).collect(),
                    }
                })
                .collect();
            return RecursionTable::new(
                format!("pi({})", self.name),
                2,
                Kind::Symmetric,
                generators,
            );
        }
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                symbol: g.symbol.clone(),
                root: g.root.project(),
                sections: g.sections.clone(),
            })
            .collect();
        RecursionTable::new(
            format!("pi({})", self.name),
            self.degree,
            Kind::Symmetric,
            generators,
        )
    }

    /// Random word of the given length, avoiding immediate cancellation.
    pub fn random_word<R: Rng + ?Sized>(&self, rng: &mut R, len: usize) -> GroupWord {
        let n = self.generators.len() as i32;
        if n == 0 {
            return GroupWord::identity();
        }
        let mut letters: Vec<i32> = Vec::with_capacity(len);
        while letters.len() < len {
            let g = rng.gen_range(1..=n);
            let l = if rng.gen_bool(0.5) { g } else { -g };
            if letters.last() != Some(&-l) {
                letters.push(l);
            }
        }
        GroupWord::from_letters(letters)
    }
}

enum Search {
    Nontrivial(Vec<usize>),
    Closed,
    Exhausted,
}

/// Inverse of a one-based index map.
pub(crate) fn invert_map(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &m) in map.iter().enumerate() {
        inv[m - 1] = i + 1;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brgrig_roots_and_sections() {
        let t = brgrig();
        let w = |s: &str| t.parse_word(s).unwrap();
        assert!(t.root(&w("a")).same_as(&Root::Braid(BraidWord::zeta())));
        assert!(t.root(&w("b")).is_trivial());
        assert!(t
            .root(&w("a^3 b"))
            .same_as(&Root::Braid(BraidWord::zeta_pow(3))));
        assert_eq!(t.sections(&w("b")), vec![w("a"), w("c")]);
        assert_eq!(t.sections(&w("a")), vec![w("1"), w("1")]);
        assert_eq!(t.sections(&w("a b")), vec![w("a"), w("c")]);
        let r = t.recursion(&w("a^2"));
        assert!(r.root.same_as(&Root::Braid(BraidWord::zeta_pow(2))));
        assert_eq!(r.sections, vec![w("1"), w("1")]);
    }

    #[test]
    fn zwrz_recursion_example() {
        let t = zwrz();
        let w = |s: &str| t.parse_word(s).unwrap();
        let r = t.recursion(&w("a^2 b a^-2"));
        assert!(r.root.same_as(&Root::Braid(BraidWord::zeta_pow(2))));
        assert!(t.eq_in(&r.sections[0], &w("1"), 8).is_equal());
        assert!(t.eq_in(&r.sections[1], &w("a b a^-1"), 8).is_equal());
    }

    #[test]
    fn certificates() {
        let t = brgrig();
        let w = |s: &str| t.parse_word(s).unwrap();
        assert_eq!(t.nonidentity_certificate(&w("a"), 0), Some(vec![]));
        assert_eq!(t.nonidentity_certificate(&w("b c d"), 32), None);
        assert_eq!(t.nonidentity_certificate(&w("b"), 1), Some(vec![1]));
    }

    #[test]
    fn eq_in_examples() {
        let t = brgrig();
        let w = |s: &str| t.parse_word(s).unwrap();
        assert_eq!(t.eq_in(&w("b c"), &w("c b"), 32), Verdict::Equal);
        assert_eq!(t.eq_in(&w("b"), &w("c"), 32), Verdict::Unequal);
        let z = zwrz();
        let v = |s: &str| z.parse_word(s).unwrap();
        assert_eq!(
            z.eq_in(&v("b a b a^-1"), &v("a b a^-1 b"), 32),
            Verdict::Equal
        );
    }

    #[test]
    fn self_identity() {
        let beta = Root::Braid(BraidWord::zeta());
        assert_eq!(self_identical(beta).is_self_identical(8), SelfIdentity::Yes);
        assert_eq!(brgrig().is_self_identical(8), SelfIdentity::No("a".into()));
        assert_eq!(zwrz().is_self_identical(8), SelfIdentity::No("a".into()));
    }

    #[test]
    fn generic_search_agrees_with_solvers() {
        let t = brgrig();
        let w = |s: &str| t.parse_word(s).unwrap();
        assert_eq!(t.generic_identity(&w("b c d"), 32), Verdict::Equal);
        assert_eq!(t.generic_identity(&w("b c^-1"), 32), Verdict::Unequal);
    }

    #[test]
    fn inverse_recursion_cancels() {
        let t = zwrz();
        let w = t.parse_word("a b a^-1 b^2").unwrap();
        let prod = w.mul(&w.inverse());
        assert!(prod.is_empty());
        let r = t.recursion(&w);
        let ri = t.recursion(&w.inverse());
        assert!(r.root.mul(&ri.root).is_trivial());
    }

    #[test]
    fn pi_image_of_brgrig_is_grig() {
        let p = brgrig().pi_image().unwrap();
        assert!(matches!(p.solver(), Solver::Grig { .. }));
        assert!(p.is_identity(&p.parse_word("a a").unwrap(), 8).is_equal());
        assert!(grig().pi_image().is_err());
    }

    #[test]
    fn unsection_examples() {
        let t = brgrig();
        let w = |s: &str| t.parse_word(s).unwrap();
        let found = t.unsection(&t.identity_root(), &[w("a"), w("c")], 8);
        assert_eq!(found, Unsection::Found(w("b")));
        let found = t.unsection(&Root::Braid(BraidWord::zeta()), &[w("1"), w("1")], 8);
        assert_eq!(found, Unsection::Found(w("a")));
        let z = zwrz();
        let v = |s: &str| z.parse_word(s).unwrap();
        let r = z.recursion(&v("a^3 b a^-1"));
        match z.unsection(&r.root, &r.sections, 8) {
            Unsection::Found(u) => assert!(z.eq_in(&u, &v("a^3 b a^-1"), 8).is_equal()),
            other => panic!("unexpected {other:?}"),
        }
    }
}
