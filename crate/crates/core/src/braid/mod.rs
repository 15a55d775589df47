//! Exact arithmetic in symmetric, free and braid groups.
//!
//! Braid words are read left to right as the diagram is read top to bottom,
//! and strands are numbered `1..n` at the bottom. The Artin generator `s_i`
//! crosses the strand in position `i` over the strand in position `i+1` as
//! the strands go down; in `B_2` this is the distinguished generator `ζ`.
//!
//! Equality of braids is decided through the Artin representation
//! `B_n -> Aut(F_n)`, which is faithful.

mod free;
mod perm;

use std::fmt;

pub use free::FreeWord;
pub use perm::Permutation;

use crate::error::{Error, Result};

/// A word in the Artin generators of `B_n`. Letter `i` is `s_i`, `-i` is
/// `s_i^{-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        assert!(strands >= 1, "a braid needs at least one strand");
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// The generator `ζ = s_1` of `B_2`.
    pub fn zeta() -> Self {
        BraidWord {
            strands: 2,
            letters: vec![1],
        }
    }

    /// `ζ^e` in `B_2`.
    pub fn zeta_pow(e: i64) -> Self {
        let l = if e >= 0 { 1 } else { -1 };
        BraidWord {
            strands: 2,
            letters: vec![l; e.unsigned_abs() as usize],
        }
    }

    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Precondition(
                "a braid needs at least one strand".into(),
            ));
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    max: strands.saturating_sub(1),
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the letter signs; a homomorphism `B_n -> Z`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Cancels adjacent inverse pairs. Does not change the braid.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    pub fn mul(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        }
        .free_reduce())
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> BraidWord {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
        .free_reduce()
    }

    /// Natural projection `B_n -> S_n`: `s_i` maps to the transposition `(i i+1)`.
    pub fn perm(&self) -> Permutation {
        // Track which bottom strand sits at each position, scanning upward.
        let n = self.strands;
        let mut at: Vec<usize> = (0..n).collect();
        for &l in self.letters.iter().rev() {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        // at[top position] = bottom strand; we want bottom -> top.
        let mut images = vec![0; n];
        for (top, &bottom) in at.iter().enumerate() {
            images[bottom] = top + 1;
        }
        Permutation::from_images(&images).expect("tracked positions form a bijection")
    }

    pub fn is_pure(&self) -> bool {
        self.perm().is_identity()
    }

    /// Images `φ(x_1), ..., φ(x_n)` of the free generators under the Artin
    /// automorphism of this braid.
    pub fn artin_images(&self) -> Vec<FreeWord> {
        let mut img: Vec<FreeWord> = (1..=self.strands).map(FreeWord::generator).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            if l > 0 {
                // x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
                let mut new_i = img[i].clone();
                new_i.extend(&img[i + 1]);
                new_i.extend_inverse(&img[i]);
                let old_i = std::mem::replace(&mut img[i], new_i);
                img[i + 1] = old_i;
            } else {
                // x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
                let mut new_next = img[i + 1].inverse();
                new_next.extend(&img[i]);
                new_next.extend(&img[i + 1]);
                let old_next = std::mem::replace(&mut img[i + 1], new_next);
                img[i] = old_next;
            }
        }
        img
    }

    /// Applies the Artin automorphism of this braid to a free word.
    pub fn artin_action(&self, w: &FreeWord) -> Result<FreeWord> {
        if w.max_generator() > self.strands {
            return Err(Error::IndexOutOfRange {
                index: w.max_generator(),
                max: self.strands,
            });
        }
        Ok(w.substitute(&self.artin_images()))
    }

    /// Decides whether two words represent the same braid.
    pub fn braid_eq(&self, other: &BraidWord) -> Result<bool> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch(self.strands, other.strands));
        }
        if self.exponent_sum() != other.exponent_sum() || self.perm() != other.perm() {
            return Ok(false);
        }
        let a = self.free_reduce();
        let b = other.free_reduce();
        if a.letters == b.letters {
            return Ok(true);
        }
        Ok(a.artin_images() == b.artin_images())
    }

    /// Decides whether the word represents the trivial braid.
    pub fn is_trivial(&self) -> bool {
        let r = self.free_reduce();
        r.is_empty()
            || (r.exponent_sum() == 0
                && r.is_pure()
                && r.artin_images()
                    .iter()
                    .enumerate()
                    .all(|(j, w)| w.letters() == [j as i32 + 1]))
    }

    /// The `d`-ary cloning map: the strand in bottom position `k` is replaced
    /// by `d` parallel strands.
    pub fn clone_at(&self, k: usize, d: usize) -> Result<BraidWord> {
        let n = self.strands;
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, max: n });
        }
        let di = d as i32;
        // Scan upward from the bottom, tracking the cable position.
        let mut cable = k as i32;
        let mut rev: Vec<i32> = Vec::with_capacity(self.letters.len() + 4);
        for &l in self.letters.iter().rev() {
            let i = l.abs();
            let sign = l.signum();
            if cable == i || cable == i + 1 {
                // position of the cable above this crossing
                let top = if cable == i { i + 1 } else { i };
                let block: Vec<i32> = if top == i {
                    // cable moves right: s_{i+d-1} ... s_i (top to bottom)
                    (i..i + di).rev().collect()
                } else {
                    // cable moves left: s_i ... s_{i+d-1}
                    (i..i + di).collect()
                };
                for &g in block.iter().rev() {
                    rev.push(sign * g);
                }
                cable = top;
            } else if i < cable {
                rev.push(l);
            } else {
                rev.push(sign * (i + di - 1));
            }
        }
        rev.reverse();
        Ok(BraidWord {
            strands: n + d - 1,
            letters: rev,
        })
    }

    /// `φ^{(k)}`: embeds this braid on strands `k..k+d-1` of `B_{n+d-1}`.
    pub fn shift_embed(&self, k: usize, n: usize) -> Result<BraidWord> {
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, max: n });
        }
        let shift = (k - 1) as i32;
        Ok(BraidWord {
            strands: n + self.strands - 1,
            letters: self
                .letters
                .iter()
                .map(|&l| l.signum() * (l.abs() + shift))
                .collect(),
        })
    }

    /// Sets `other` to the right of `self`.
    pub fn direct_sum(&self, other: &BraidWord) -> BraidWord {
        let shift = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.extend(
            other
                .letters
                .iter()
                .map(|&l| l.signum() * (l.abs() + shift)),
        );
        BraidWord {
            strands: self.strands + other.strands,
            letters,
        }
    }

    /// Deletes the strands whose bottom positions are listed in `remove`.
    pub fn delete_strands(&self, remove: &[usize]) -> Result<BraidWord> {
        let n = self.strands;
        let mut gone = vec![false; n];
        for &r in remove {
            if r == 0 || r > n {
                return Err(Error::IndexOutOfRange { index: r, max: n });
            }
            gone[r - 1] = true;
        }
        let kept = gone.iter().filter(|g| !**g).count();
        if kept == 0 {
            return Err(Error::Precondition("cannot delete every strand".into()));
        }
        let mut rev = Vec::new();
        for &l in self.letters.iter().rev() {
            let i = l.unsigned_abs() as usize - 1;
            if !gone[i] && !gone[i + 1] {
                let before = gone[..i].iter().filter(|g| **g).count();
                rev.push(l.signum() * (i + 1 - before) as i32);
            }
            gone.swap(i, i + 1);
        }
        rev.reverse();
        Ok(BraidWord {
            strands: kept,
            letters: rev,
        })
    }

    /// If this braid equals `φ^{(k)}(x)` for some `x` in `B_d`, returns `x`.
    pub fn supported_on_block(&self, k: usize, d: usize) -> Option<BraidWord> {
        let n = self.strands;
        if k == 0 || d == 0 || k + d - 1 > n {
            return None;
        }
        let p = self.perm();
        let outside = |j: usize| j < k || j >= k + d;
        if (1..=n).filter(|&j| outside(j)).any(|j| p.apply(j) != j) {
            return None;
        }
        let remove: Vec<usize> = (1..=n).filter(|&j| outside(j)).collect();
        let candidate = self.delete_strands(&remove).ok()?;
        let embedded = candidate.shift_embed(k, n - d + 1).ok()?;
        match embedded.braid_eq(self) {
            Ok(true) => Some(candidate),
            _ => None,
        }
    }

    /// Parses `s1 s2^-1 s1` (with `e` or nothing for the identity) on the
    /// given number of strands. A leading `B<n>:` overrides `strands`.
    pub fn parse(strands: usize, text: &str) -> Result<BraidWord> {
        let (strands, body, offset) = match text.find(':') {
            Some(colon) => {
                let head = text[..colon].trim();
                let n = head
                    .strip_prefix('B')
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| Error::parse(1, format!("bad strand header '{head}'")))?;
                (n, &text[colon + 1..], colon + 1)
            }
            None => (strands, text, 0),
        };
        if strands == 0 {
            return Err(Error::parse(1, "a braid needs at least one strand"));
        }
        let mut letters = Vec::new();
        let mut pos = offset;
        for tok in body.split_inclusive(char::is_whitespace) {
            let col = pos + 1;
            pos += tok.len();
            let tok = tok.trim();
            if tok.is_empty() || tok == "e" || tok == "1" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<i64>()
                        .map_err(|_| Error::parse(col, format!("bad exponent in '{tok}'")))?,
                ),
                None => (tok, 1),
            };
            let idx: i32 = base
                .strip_prefix('s')
                .or_else(|| base.strip_prefix('σ'))
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::parse(col, format!("bad braid generator '{tok}'")))?;
            if idx <= 0 || idx as usize >= strands {
                return Err(Error::parse(
                    col,
                    format!("generator s{idx} out of range for {strands} strands"),
                ));
            }
            let l = if exp >= 0 { idx } else { -idx };
            letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        }
        Ok(BraidWord { strands, letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("s{l}")
                } else {
                    format!("s{}^-1", -l)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}: {}", self.strands, self)
    }
}
