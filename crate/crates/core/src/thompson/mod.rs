//! The groupoid of triples `[F_-, g, F_+]` over a wreath product `B_n wr G`
//! (or `S_n wr G`), with the Thompson-like groups as the triples whose forests
//! are single trees.

mod render;

use rand::Rng;

use crate::braid::{BraidWord, Permutation};
use crate::cloning::{geometric_len, random_braid, random_perm, WreathElement};
use crate::error::{Error, Result};
use crate::forest::{random_tree, Forest};
use crate::grigsolver;
use crate::recursion::{
    GroupWord, Kind, RecursionTable, Root, Solver, Unsection, Verdict, DEFAULT_DEPTH,
};

/// A representative `[left, middle, right]`. Strand `i` of the middle runs
/// from leaf `ρ(middle)(i)` of `left` to leaf `i` of `right`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Triple {
    left: Forest,
    middle: WreathElement,
    right: Forest,
}

impl Triple {
    pub fn left(&self) -> &Forest {
        &self.left
    }

    pub fn middle(&self) -> &WreathElement {
        &self.middle
    }

    pub fn right(&self) -> &Forest {
        &self.right
    }

    pub fn degree(&self) -> usize {
        self.middle.degree()
    }

    /// Number of roots of the right forest.
    pub fn feet(&self) -> usize {
        self.right.num_roots()
    }

    /// Both forests are single trees.
    pub fn is_group_element(&self) -> bool {
        self.left.num_roots() == 1 && self.right.num_roots() == 1
    }
}

/// Outcome of an attempted reduction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Reduction {
    Reduced(Triple),
    NotReducible,
    /// The table could not decide whether the block lies in the image of κ.
    Unknown,
}

/// Arithmetic in the groupoid over one recursion table.
#[derive(Clone, Debug)]
pub struct Groupoid {
    table: RecursionTable,
    budget: usize,
}

impl Groupoid {
    pub fn new(table: RecursionTable) -> Self {
        Groupoid {
            table,
            budget: DEFAULT_DEPTH,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn table(&self) -> &RecursionTable {
        &self.table
    }

    pub fn arity(&self) -> usize {
        self.table.degree()
    }

    pub fn kind(&self) -> Kind {
        self.table.kind()
    }

    pub fn triple(&self, left: Forest, middle: WreathElement, right: Forest) -> Result<Triple> {
        let d = self.arity();
        if left.arity() != d || right.arity() != d {
            return Err(Error::DegreeMismatch(d, left.arity().max(right.arity())));
        }
        if middle.kind() != self.kind() {
            return Err(Error::TableMismatch(
                self.table.name().into(),
                middle.kind().to_string(),
            ));
        }
        let n = middle.degree();
        if left.num_leaves() != n || right.num_leaves() != n {
            return Err(Error::ShapeMismatch(format!(
                "forests with {} and {} leaves around an element of degree {n}",
                left.num_leaves(),
                right.num_leaves()
            )));
        }
        Ok(Triple {
            left,
            middle,
            right,
        })
    }

    /// `[1^n, 1, 1^n]`.
    pub fn identity(&self, n: usize) -> Triple {
        Triple {
            left: Forest::trivial(self.arity(), n),
            middle: WreathElement::identity(self.kind(), n),
            right: Forest::trivial(self.arity(), n),
        }
    }

    /// `[1^n, g, 1^n]`.
    pub fn embed(&self, g: WreathElement) -> Triple {
        let n = g.degree();
        Triple {
            left: Forest::trivial(self.arity(), n),
            middle: g,
            right: Forest::trivial(self.arity(), n),
        }
    }

    /// Adds a caret at leaf `k` of the right forest and at leaf `ρ(g)(k)` of
    /// the left one, cloning the middle at `k`.
    pub fn expand(&self, t: &Triple, k: usize) -> Result<Triple> {
        let right = t.right.add_caret(k)?;
        let left = t.left.add_caret(t.middle.rho().apply(k))?;
        let middle = t.middle.kappa(&self.table, k)?;
        Ok(Triple {
            left,
            middle,
            right,
        })
    }

    /// Expansion that adds a caret at leaf `p` of the left forest.
    pub fn expand_left(&self, t: &Triple, p: usize) -> Result<Triple> {
        if p == 0 || p > t.degree() {
            return Err(Error::IndexOutOfRange {
                index: p,
                max: t.degree(),
            });
        }
        self.expand(t, t.middle.rho().inverse().apply(p))
    }

    pub fn multiply(&self, x: &Triple, y: &Triple) -> Result<Triple> {
        let (_, carets_x, carets_y) = x.right.common_expansion(&y.left)?;
        let mut x = x.clone();
        for k in carets_x {
            x = self.expand(&x, k)?;
        }
        let mut y = y.clone();
        for p in carets_y {
            y = self.expand_left(&y, p)?;
        }
        Ok(Triple {
            left: x.left,
            middle: x.middle.mul(&self.table, &y.middle)?,
            right: y.right,
        })
    }

    pub fn invert(&self, x: &Triple) -> Triple {
        Triple {
            left: x.right.clone(),
            middle: x.middle.inverse(),
            right: x.left.clone(),
        }
    }

    /// Undoes an expansion at right leaf `k`, when the middle lies in the
    /// image of `κ_k`.
    pub fn reduce_at(&self, t: &Triple, k: usize) -> Reduction {
        let d = self.arity();
        if !t.right.has_caret_at(k) {
            return Reduction::NotReducible;
        }
        let rho = t.middle.rho();
        let block: Vec<usize> = (k..k + d).map(|i| rho.apply(i)).collect();
        let p = *block.iter().min().expect("d >= 2");
        if block.iter().any(|&q| q >= p + d) || !t.left.has_caret_at(p) {
            return Reduction::NotReducible;
        }
        let clones: Vec<usize> = (k + 1..k + d).collect();
        let split = match t.middle.top() {
            Root::Braid(beta) => split_braid(beta, k, d, &clones),
            Root::Perm(sigma) => split_perm(sigma, k, d, &clones),
        };
        let Some((core, local)) = split else {
            return Reduction::NotReducible;
        };
        let entries = t.middle.entries();
        let f = match self
            .table
            .unsection(&local, &entries[k - 1..k + d - 1], self.budget)
        {
            Unsection::Found(f) => f,
            Unsection::NotInImage => return Reduction::NotReducible,
            Unsection::Unknown => return Reduction::Unknown,
        };
        let mut new_entries = entries[..k - 1].to_vec();
        new_entries.push(f);
        new_entries.extend_from_slice(&entries[k + d - 1..]);
        let middle = WreathElement::new(core, new_entries).expect("degrees match");
        match (t.left.remove_caret(p), t.right.remove_caret(k)) {
            (Ok(left), Ok(right)) => Reduction::Reduced(Triple {
                left,
                middle,
                right,
            }),
            _ => Reduction::NotReducible,
        }
    }

    /// Reduces greedily, leftmost caret first, until no reduction applies.
    /// The flag reports whether some caret was skipped on an unknown verdict.
    pub fn reduce(&self, t: &Triple) -> (Triple, bool) {
        let mut t = t.clone();
        let mut skipped = Vec::new();
        'outer: loop {
            for k in t.right.exposed_carets() {
                match self.reduce_at(&t, k) {
                    Reduction::Reduced(r) => {
                        t = r;
                        skipped.clear();
                        continue 'outer;
                    }
                    Reduction::Unknown => skipped.push(k),
                    Reduction::NotReducible => {}
                }
            }
            return (t, !skipped.is_empty());
        }
    }

    /// The identity class is exactly `{[F, 1, F]}`: κ is injective and sends
    /// the identity to the identity, so no reduction is needed.
    pub fn identity_test(&self, x: &Triple) -> Verdict {
        if x.left != x.right {
            return Verdict::Unequal;
        }
        x.middle.is_identity(&self.table, self.budget)
    }

    pub fn eq(&self, x: &Triple, y: &Triple) -> Result<Verdict> {
        if x.left.num_roots() != y.left.num_roots() {
            return Ok(Verdict::Unequal);
        }
        Ok(self.identity_test(&self.multiply(x, &self.invert(y))?))
    }

    /// The groupoid over `π(G)`.
    pub fn pi_groupoid(&self) -> Result<Groupoid> {
        Ok(Groupoid {
            table: self.table.pi_image()?,
            budget: self.budget,
        })
    }

    /// `[F_-, β(f_i), F_+] -> [F_-, π(β)(π(f_i)), F_+]`.
    pub fn project_pi(&self, x: &Triple) -> Result<Triple> {
        if self.kind() != Kind::Braided {
            return Err(Error::NoPiImage(self.table.name().into()));
        }
        Ok(Triple {
            left: x.left.clone(),
            middle: x.middle.project(),
            right: x.right.clone(),
        })
    }

    fn canonical_map(&self) -> Result<&[usize]> {
        match self.table.solver() {
            Solver::BrGrig { to_canonical } => Ok(to_canonical),
            _ => Err(Error::Precondition(format!(
                "{} is not the braided Grigorchuk group",
                self.table.name()
            ))),
        }
    }

    /// Whether the reduced form of `w` has no `a` terms.
    pub fn in_z_syntactic(&self, w: &GroupWord) -> Result<bool> {
        let map = self.canonical_map()?;
        Ok(grigsolver::reduce(&w.relabel(map)).a_powers().is_empty())
    }

    /// Exact membership in `Z = <b, c, d>`.
    pub fn in_z(&self, w: &GroupWord) -> Result<bool> {
        let map = self.canonical_map()?;
        Ok(grigsolver::z_coordinates(&grigsolver::reduce(&w.relabel(map))).is_some())
    }

    /// Expands `[1, g, 1]` on the right until every entry lies in `Z`.
    /// Returns `F` and `[F', g', 1]` with `[1, g, 1][F, 1, 1] = [F', g', 1]`.
    pub fn purify(&self, g: &WreathElement) -> Result<(Forest, Triple)> {
        let mut t = self.embed(g.clone());
        loop {
            let mut pending = None;
            for (i, e) in t.middle.entries().iter().enumerate() {
                if !self.in_z_syntactic(e)? {
                    pending = Some(i + 1);
                    break;
                }
            }
            match pending {
                Some(k) => t = self.expand(&t, k)?,
                None => break,
            }
        }
        let n = t.degree();
        let forest = t.right.clone();
        Ok((
            forest,
            Triple {
                left: t.left,
                middle: t.middle,
                right: Forest::trivial(self.arity(), n),
            },
        ))
    }

    /// Whether `y = x [1, h, 1]` for some `h` in `B_m wr Z`.
    pub fn eq_mod_z(&self, x: &Triple, y: &Triple) -> Result<Verdict> {
        self.canonical_map()?;
        if x.left.num_roots() != y.left.num_roots() {
            return Err(Error::ShapeMismatch(format!(
                "{} vs {} heads",
                x.left.num_roots(),
                y.left.num_roots()
            )));
        }
        let z = self.multiply(&self.invert(x), y)?;
        let (z, partial) = self.reduce(&z);
        if !(z.left.is_trivial() && z.right.is_trivial()) {
            return Ok(if partial {
                Verdict::Unknown {
                    budget: self.budget,
                }
            } else {
                Verdict::Unequal
            });
        }
        for e in z.middle.entries() {
            if !self.in_z(e)? {
                return Ok(Verdict::Unequal);
            }
        }
        Ok(Verdict::Equal)
    }

    /// A random group element with `carets` carets in each tree.
    pub fn random_element<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        carets: usize,
        max_top_len: usize,
        max_entry_len: usize,
    ) -> Triple {
        let d = self.arity();
        let left = random_tree(rng, d, carets);
        let right = random_tree(rng, d, carets);
        let n = left.num_leaves();
        let top = match self.kind() {
            Kind::Braided => {
                let len = geometric_len(rng, 3.0, max_top_len);
                Root::Braid(random_braid(rng, n, len))
            }
            Kind::Symmetric => Root::Perm(random_perm(rng, n)),
        };
        let entries = (0..n)
            .map(|_| {
                let len = geometric_len(rng, 1.5, max_entry_len);
                self.table.random_word(rng, len)
            })
            .collect();
        Triple {
            left,
            middle: WreathElement::new(top, entries).expect("degrees match"),
            right,
        }
    }

    /// Parses `[F_- ; top ; g_1, ..., g_n ; F_+]`; the top may be omitted,
    /// the entries may be parenthesized, and a forest or the entry list
    /// written `1` is trivial of the size forced by the other parts.
    pub fn parse_triple(&self, text: &str) -> Result<Triple> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::parse(1, "a triple is written [left ; middle ; right]"))?;
        let base = t.len() - t.trim_start().len() + 2;
        let mut parts = Vec::new();
        let mut off = 0;
        for p in inner.split(';') {
            parts.push((base + off + (p.len() - p.trim_start().len()), p.trim()));
            off += p.len() + 1;
        }
        let (left, top, entries, right) = match parts.as_slice() {
            [l, e, r] => (*l, None, *e, *r),
            [l, b, e, r] => (*l, Some(*b), *e, *r),
            _ => return Err(Error::parse(1, "expected 3 or 4 ';'-separated parts")),
        };
        let d = self.arity();
        let parse_forest = |(col, s): (usize, &str)| -> Result<Option<Forest>> {
            if s == "1" {
                return Ok(None);
            }
            Forest::parse(d, s)
                .map(Some)
                .map_err(|e| e.at_line(1, col - 1))
        };
        let lf = parse_forest(left)?;
        let rf = parse_forest(right)?;
        let (ecol, etext) = entries;
        let body = etext
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(etext);
        let words: Option<Vec<GroupWord>> = if body.trim() == "1" && !etext.starts_with('(') {
            None
        } else {
            let mut out = Vec::new();
            let mut off = ecol - 1 + usize::from(etext.starts_with('('));
            for w in body.split(',') {
                out.push(self.table.parse_word(w).map_err(|e| e.at_line(1, off))?);
                off += w.len() + 1;
            }
            Some(out)
        };
        let n = words
            .as_ref()
            .map(Vec::len)
            .or(lf.as_ref().map(Forest::num_leaves))
            .or(rf.as_ref().map(Forest::num_leaves))
            .unwrap_or(1);
        let top = match top {
            None => Root::identity(self.kind(), n),
            Some((col, s)) => match self.kind() {
                Kind::Braided => {
                    Root::Braid(BraidWord::parse(n, s).map_err(|e| e.at_line(1, col - 1))?)
                }
                Kind::Symmetric => {
                    Root::Perm(Permutation::parse(n, s).map_err(|e| e.at_line(1, col - 1))?)
                }
            },
        };
        let words = words.unwrap_or_else(|| vec![GroupWord::identity(); n]);
        let middle = WreathElement::new(top, words)?;
        let left = lf.unwrap_or_else(|| Forest::trivial(d, n));
        let right = rf.unwrap_or_else(|| Forest::trivial(d, n));
        self.triple(left, middle, right)
    }

    pub fn format(&self, t: &Triple) -> String {
        let entries: Vec<String> = t
            .middle
            .entries()
            .iter()
            .map(|e| self.table.format_word(e))
            .collect();
        format!(
            "[{} ; {} ; ({}) ; {}]",
            t.left,
            t.middle.top(),
            entries.join(", "),
            t.right
        )
    }

    pub fn to_dot(&self, t: &Triple) -> String {
        render::triple_to_dot(self, t)
    }
}

/// Splits `β = ϑ_k(core) φ^{(k)}(x)`, returning `(core, x)`.
fn split_braid(beta: &BraidWord, k: usize, d: usize, clones: &[usize]) -> Option<(Root, Root)> {
    let core = beta.delete_strands(clones).ok()?;
    let residual = core.clone_at(k, d).ok()?.inverse().mul(beta).ok()?;
    let local = residual.free_reduce().supported_on_block(k, d)?;
    Some((Root::Braid(core), Root::Braid(local)))
}

fn split_perm(sigma: &Permutation, k: usize, d: usize, clones: &[usize]) -> Option<(Root, Root)> {
    let core = sigma.delete_points(clones).ok()?;
    let residual = &core.clone_at(k, d).ok()?.inverse() * sigma;
    let n = residual.degree();
    let inside = |j: usize| (k..k + d).contains(&j);
    if (1..=n).any(|j| !inside(j) && residual.apply(j) != j) {
        return None;
    }
    let images: Vec<usize> = (k..k + d).map(|j| residual.apply(j) - k + 1).collect();
    let local = Permutation::from_images(&images).ok()?;
    Some((Root::Perm(core), Root::Perm(local)))
}
