//! Finite d-ary trees and forests with global left-to-right leaf numbering.
//!
//! Text notation: a caret is `(,)` (or `(,,)` for d = 3), a leaf inside a
//! tree is empty, and forests are trees joined by `+`. Shorthands: `1` is a
//! one-leaf tree, `1^m` is m of them, `∧` (or `^`) is a single caret, `∧²`
//! (or `^2`) is `∧` with a caret on its left leaf, and `T` is `∧` with a caret
//! on every leaf.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

impl Tree {
    pub fn caret(d: usize) -> Tree {
        Tree::Node(vec![Tree::Leaf; d])
    }

    pub fn num_leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(c) => c.iter().map(Tree::num_leaves).sum(),
        }
    }

    pub fn num_carets(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(c) => 1 + c.iter().map(Tree::num_carets).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(c) => 1 + c.iter().map(Tree::depth).max().unwrap_or(0),
        }
    }

    fn is_caret(&self) -> bool {
        matches!(self, Tree::Node(c) if c.iter().all(|t| *t == Tree::Leaf))
    }

    fn check_arity(&self, d: usize) -> bool {
        match self {
            Tree::Leaf => true,
            Tree::Node(c) => c.len() == d && c.iter().all(|t| t.check_arity(d)),
        }
    }

    /// Replaces leaf `i` (zero-based within this tree) by a caret.
    fn add_caret(&mut self, i: usize, d: usize) {
        match self {
            Tree::Leaf => *self = Tree::caret(d),
            Tree::Node(c) => {
                let mut i = i;
                for t in c {
                    let n = t.num_leaves();
                    if i < n {
                        return t.add_caret(i, d);
                    }
                    i -= n;
                }
                unreachable!("leaf index checked by caller")
            }
        }
    }

    /// Collapses the caret whose first leaf is `i`, if there is one.
    fn remove_caret(&mut self, i: usize) -> bool {
        if i == 0 && self.is_caret() {
            *self = Tree::Leaf;
            return true;
        }
        match self {
            Tree::Leaf => false,
            Tree::Node(c) => {
                let mut i = i;
                for t in c {
                    let n = t.num_leaves();
                    if i < n {
                        return t.remove_caret(i);
                    }
                    i -= n;
                }
                false
            }
        }
    }

    /// First leaves (zero-based) of the carets all of whose children are leaves.
    fn exposed_carets(&self, offset: usize, out: &mut Vec<usize>) {
        if self.is_caret() {
            out.push(offset);
            return;
        }
        if let Tree::Node(c) = self {
            let mut off = offset;
            for t in c {
                t.exposed_carets(off, out);
                off += t.num_leaves();
            }
        }
    }

    /// Smallest tree refining both.
    fn union(&self, other: &Tree) -> Tree {
        match (self, other) {
            (Tree::Leaf, t) | (t, Tree::Leaf) => t.clone(),
            (Tree::Node(a), Tree::Node(b)) => {
                Tree::Node(a.iter().zip(b).map(|(x, y)| x.union(y)).collect())
            }
        }
    }

    /// Caret insertions (one-based leaf indices, applied in order) that turn
    /// `self` into `target`, starting at leaf `pos`.
    fn carets_towards(&self, target: &Tree, pos: usize, out: &mut Vec<usize>) {
        match (self, target) {
            (_, Tree::Leaf) => {}
            (Tree::Leaf, Tree::Node(c)) => {
                out.push(pos);
                let mut p = pos;
                for t in c {
                    Tree::Leaf.carets_towards(t, p, out);
                    p += t.num_leaves();
                }
            }
            (Tree::Node(a), Tree::Node(b)) => {
                let mut p = pos;
                for (x, y) in a.iter().zip(b) {
                    x.carets_towards(y, p, out);
                    p += y.num_leaves();
                }
            }
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Tree::Node(c) = self {
            f.write_str("(")?;
            for (i, t) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                t.write(f)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// An ordered list of d-ary trees.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Forest {
    arity: usize,
    trees: Vec<Tree>,
}

impl Forest {
    pub fn new(arity: usize, trees: Vec<Tree>) -> Result<Forest> {
        if arity < 2 {
            return Err(Error::Precondition(format!("arity {arity} < 2")));
        }
        if trees.is_empty() {
            return Err(Error::Precondition(
                "a forest needs at least one tree".into(),
            ));
        }
        if let Some(t) = trees.iter().find(|t| !t.check_arity(arity)) {
            return Err(Error::ShapeMismatch(format!(
                "{} is not {arity}-ary",
                Forest::single(arity, t.clone())
            )));
        }
        Ok(Forest { arity, trees })
    }

    fn single(arity: usize, tree: Tree) -> Forest {
        Forest {
            arity,
            trees: vec![tree],
        }
    }

    /// `m` one-leaf trees.
    pub fn trivial(arity: usize, m: usize) -> Forest {
        Forest {
            arity,
            trees: vec![Tree::Leaf; m.max(1)],
        }
    }

    /// `∧`: one caret.
    pub fn wedge(arity: usize) -> Forest {
        Forest::single(arity, Tree::caret(arity))
    }

    /// `∧²`: a caret on the left leaf of `∧`.
    pub fn wedge_squared(arity: usize) -> Forest {
        let mut children = vec![Tree::Leaf; arity];
        children[0] = Tree::caret(arity);
        Forest::single(arity, Tree::Node(children))
    }

    /// `∧` with a caret added to each leaf.
    pub fn full_two_level(arity: usize) -> Forest {
        Forest::single(arity, Tree::Node(vec![Tree::caret(arity); arity]))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn num_leaves(&self) -> usize {
        self.trees.iter().map(Tree::num_leaves).sum()
    }

    pub fn num_roots(&self) -> usize {
        self.trees.len()
    }

    pub fn num_carets(&self) -> usize {
        self.trees.iter().map(Tree::num_carets).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.trees.iter().all(|t| *t == Tree::Leaf)
    }

    /// Tree index and local leaf index of global leaf `k` (one-based).
    fn locate(&self, k: usize) -> Result<(usize, usize)> {
        let mut i = k.checked_sub(1).ok_or(Error::IndexOutOfRange {
            index: k,
            max: self.num_leaves(),
        })?;
        for (j, t) in self.trees.iter().enumerate() {
            let n = t.num_leaves();
            if i < n {
                return Ok((j, i));
            }
            i -= n;
        }
        Err(Error::IndexOutOfRange {
            index: k,
            max: self.num_leaves(),
        })
    }

    /// Replaces leaf `k` by a caret.
    pub fn add_caret(&self, k: usize) -> Result<Forest> {
        let (j, i) = self.locate(k)?;
        let mut f = self.clone();
        f.trees[j].add_caret(i, self.arity);
        Ok(f)
    }

    /// Whether leaves `k..k+d-1` are the children of one caret.
    pub fn has_caret_at(&self, k: usize) -> bool {
        self.exposed_carets().contains(&k)
    }

    /// First leaves of the carets whose children are all leaves.
    pub fn exposed_carets(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut off = 1;
        for t in &self.trees {
            t.exposed_carets(off, &mut out);
            off += t.num_leaves();
        }
        out
    }

    /// Inverse of `add_caret`.
    pub fn remove_caret(&self, k: usize) -> Result<Forest> {
        let (j, i) = self.locate(k)?;
        let mut f = self.clone();
        if f.trees[j].remove_caret(i) {
            Ok(f)
        } else {
            Err(Error::Precondition(format!("no caret with first leaf {k}")))
        }
    }

    /// Smallest common refinement and, for each input, the caret insertions
    /// that produce it.
    pub fn common_expansion(&self, other: &Forest) -> Result<(Forest, Vec<usize>, Vec<usize>)> {
        if self.arity != other.arity {
            return Err(Error::DegreeMismatch(self.arity, other.arity));
        }
        if self.num_roots() != other.num_roots() {
            return Err(Error::ShapeMismatch(format!(
                "{} roots vs {} roots",
                self.num_roots(),
                other.num_roots()
            )));
        }
        let union = Forest {
            arity: self.arity,
            trees: self
                .trees
                .iter()
                .zip(&other.trees)
                .map(|(a, b)| a.union(b))
                .collect(),
        };
        Ok((
            union.clone(),
            self.carets_towards(&union),
            other.carets_towards(&union),
        ))
    }

    /// Caret insertions turning `self` into the refinement `target`.
    pub fn carets_towards(&self, target: &Forest) -> Vec<usize> {
        let mut out = Vec::new();
        let mut pos = 1;
        for (a, b) in self.trees.iter().zip(&target.trees) {
            a.carets_towards(b, pos, &mut out);
            pos += b.num_leaves();
        }
        out
    }

    /// Every tree has at most one caret.
    pub fn is_elementary(&self) -> bool {
        self.trees.iter().all(|t| t.num_carets() <= 1)
    }

    /// The d-matching of the linear graph on the leaves: one path
    /// `i, ..., i+d-1` per caret.
    pub fn to_matching(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_elementary() {
            return Err(Error::NotElementary);
        }
        Ok(self
            .exposed_carets()
            .into_iter()
            .map(|i| (i..i + self.arity).collect())
            .collect())
    }

    /// Inverse of `to_matching`.
    pub fn from_matching(arity: usize, m: usize, paths: &[Vec<usize>]) -> Result<Forest> {
        let mut starts: Vec<usize> = Vec::with_capacity(paths.len());
        for p in paths {
            let ok = p.len() == arity
                && p[0] >= 1
                && p.windows(2).all(|w| w[1] == w[0] + 1)
                && p[arity - 1] <= m;
            if !ok {
                return Err(Error::Precondition(format!(
                    "{p:?} is not a path of length {}",
                    arity - 1
                )));
            }
            starts.push(p[0]);
        }
        starts.sort_unstable();
        if starts.windows(2).any(|w| w[1] < w[0] + arity) {
            return Err(Error::Precondition("paths are not disjoint".into()));
        }
        let mut trees = Vec::new();
        let mut leaf = 1;
        let mut next = starts.iter().peekable();
        while leaf <= m {
            if next.peek() == Some(&&leaf) {
                next.next();
                trees.push(Tree::caret(arity));
                leaf += arity;
            } else {
                trees.push(Tree::Leaf);
                leaf += 1;
            }
        }
        Forest::new(arity, trees)
    }

    pub fn direct_sum(&self, other: &Forest) -> Result<Forest> {
        if self.arity != other.arity {
            return Err(Error::DegreeMismatch(self.arity, other.arity));
        }
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        Ok(Forest {
            arity: self.arity,
            trees,
        })
    }

    pub fn parse(arity: usize, text: &str) -> Result<Forest> {
        let mut trees = Vec::new();
        let mut offset = 0;
        for term in text.split('+') {
            let start = offset + (term.len() - term.trim_start().len());
            offset += term.len() + 1;
            let t = term.trim();
            let col = start + 1;
            match t {
                "∧" | "^" => trees.push(Tree::caret(arity)),
                "∧²" | "∧^2" | "^2" => trees.extend(Forest::wedge_squared(arity).trees),
                "T" => trees.extend(Forest::full_two_level(arity).trees),
                "1" | "." => trees.push(Tree::Leaf),
                _ if t.starts_with("1^") => {
                    let m: usize = t[2..]
                        .parse()
                        .map_err(|_| Error::parse(col, format!("bad leaf count in '{t}'")))?;
                    if m == 0 {
                        return Err(Error::parse(col, "empty forest"));
                    }
                    trees.extend(std::iter::repeat_n(Tree::Leaf, m));
                }
                _ if t.starts_with('(') => {
                    let mut p = TreeParser {
                        chars: t.char_indices().collect(),
                        pos: 0,
                        col,
                    };
                    let tree = p.tree()?;
                    if p.pos != p.chars.len() {
                        return Err(p.error("trailing characters"));
                    }
                    if !tree.check_arity(arity) {
                        return Err(Error::parse(col, format!("tree is not {arity}-ary")));
                    }
                    trees.push(tree);
                }
                "" => return Err(Error::parse(col, "empty forest term")),
                _ => return Err(Error::parse(col, format!("unknown forest term '{t}'"))),
            }
        }
        Forest::new(arity, trees)
    }

    /// DOT drawing: roots on top, leaves numbered left to right.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n  node [shape=point];\n");
        let mut counter = 0;
        let mut leaf = 0;
        for t in &self.trees {
            dot_tree(t, &mut counter, &mut leaf, &mut out);
        }
        out.push_str("}\n");
        out
    }
}

fn dot_tree(t: &Tree, counter: &mut usize, leaf: &mut usize, out: &mut String) -> usize {
    let id = *counter;
    *counter += 1;
    match t {
        Tree::Leaf => {
            *leaf += 1;
            out.push_str(&format!("  n{id} [shape=plaintext, label=\"{}\"];\n", leaf));
        }
        Tree::Node(c) => {
            for child in c {
                let cid = dot_tree(child, counter, leaf, out);
                out.push_str(&format!("  n{id} -> n{cid} [arrowhead=none];\n"));
            }
        }
    }
    id
}

/// A single tree grown by `carets` caret insertions at uniformly random leaves.
pub fn random_tree<R: rand::Rng + ?Sized>(rng: &mut R, arity: usize, carets: usize) -> Forest {
    let mut f = Forest::trivial(arity, 1);
    for _ in 0..carets {
        let k = rng.gen_range(1..=f.num_leaves());
        f = f.add_caret(k).expect("leaf in range");
    }
    f
}

/// DOT drawing of a matching on the linear graph `1 - 2 - ... - m`.
pub fn matching_to_dot(m: usize, paths: &[Vec<usize>]) -> String {
    let mut out = String::from("graph matching {\n  rankdir=LR;\n");
    for v in 1..=m {
        out.push_str(&format!("  v{v} [label=\"{v}\"];\n"));
    }
    for v in 1..m {
        let used = paths.iter().any(|p| p.contains(&v) && p.contains(&(v + 1)));
        let style = if used { "bold" } else { "dotted" };
        out.push_str(&format!("  v{v} -- v{} [style={style}];\n", v + 1));
    }
    out.push_str("}\n");
    out
}

struct TreeParser {
    chars: Vec<(usize, char)>,
    pos: usize,
    col: usize,
}

impl TreeParser {
    fn error(&self, msg: &str) -> Error {
        let off = self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |(i, c)| i + c.len_utf8()),
            |(i, _)| *i,
        );
        Error::parse(self.col + off, msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn tree(&mut self) -> Result<Tree> {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
        if self.peek() != Some('(') {
            return Ok(Tree::Leaf);
        }
        self.pos += 1;
        let mut children = vec![self.tree()?];
        loop {
            while self.peek().is_some_and(char::is_whitespace) {
                self.pos += 1;
            }
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    children.push(self.tree()?);
                }
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
        if children.len() < 2 {
            return Err(self.error("a caret needs at least two children"));
        }
        Ok(Tree::Node(children))
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.trees.len() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if self.trees[i] == Tree::Leaf {
                let run = self.trees[i..]
                    .iter()
                    .take_while(|t| **t == Tree::Leaf)
                    .count();
                if run == 1 {
                    f.write_str("1")?;
                } else {
                    write!(f, "1^{run}")?;
                }
                i += run;
            } else {
                self.trees[i].write(f)?;
                i += 1;
            }
        }
        Ok(())
    }
}
