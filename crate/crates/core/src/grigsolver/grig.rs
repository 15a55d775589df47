//! The classical Grigorchuk group `a = (1 2)(1,1), b = (a,c), c = (a,d),
//! d = (1,b)`, where every generator is an involution and `{1,b,c,d}` is a
//! Klein four-group.

use crate::recursion::GroupWord;

use super::{A, B, C, D};

/// Alternating normal form: `a` tokens separated by nontrivial elements of
/// `{b, c, d}`. Klein elements are encoded `b=1, c=2, d=3` so that the
/// product is bitwise xor.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GrigWord {
    tokens: Vec<u8>,
}

const TOKEN_A: u8 = 0;

impl GrigWord {
    pub fn from_letters(letters: &[i32]) -> Self {
        let mut w = GrigWord::default();
        for &l in letters {
            match l.abs() {
                A => w.push(TOKEN_A),
                B => w.push(1),
                C => w.push(2),
                D => w.push(3),
                other => panic!("letter {other} is not in the Grigorchuk alphabet"),
            }
        }
        w
    }

    fn push(&mut self, t: u8) {
        match (self.tokens.last().copied(), t) {
            (Some(TOKEN_A), TOKEN_A) => {
                self.tokens.pop();
            }
            (Some(x), y) if x != TOKEN_A && y != TOKEN_A => {
                self.tokens.pop();
                if x ^ y != 0 {
                    self.tokens.push(x ^ y);
                }
            }
            _ => self.tokens.push(t),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn a_count(&self) -> usize {
        self.tokens.iter().filter(|t| **t == TOKEN_A).count()
    }

    pub fn to_letters(&self) -> Vec<i32> {
        self.tokens
            .iter()
            .map(|&t| match t {
                TOKEN_A => A,
                1 => B,
                2 => C,
                _ => D,
            })
            .collect()
    }

    pub fn sections(&self) -> (GrigWord, GrigWord) {
        let mut out = [GrigWord::default(), GrigWord::default()];
        let mut swapped = false;
        for &t in self.tokens.iter().rev() {
            if t == TOKEN_A {
                swapped = !swapped;
                continue;
            }
            // b = (a, c), c = (a, d), d = (1, b)
            let (first, second) = match t {
                1 => (Some(TOKEN_A), 2),
                2 => (Some(TOKEN_A), 3),
                _ => (None, 1),
            };
            let (i, j) = if swapped { (1, 0) } else { (0, 1) };
            if let Some(f) = first {
                out[i].tokens.push(f);
            }
            out[j].tokens.push(second);
        }
        // built right to left
        let [mut first, mut second] = out;
        first.tokens.reverse();
        second.tokens.reverse();
        (first.renormalize(), second.renormalize())
    }

    fn renormalize(self) -> GrigWord {
        let mut w = GrigWord::default();
        for t in self.tokens {
            w.push(t);
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        if self.a_count() % 2 == 1 {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let (first, second) = self.sections();
        first.is_identity() && second.is_identity()
    }
}

pub fn is_identity_grig(w: &GroupWord) -> bool {
    GrigWord::from_letters(w.letters()).is_identity()
}

pub fn grig_sections(w: &GroupWord) -> (GroupWord, GroupWord) {
    let (first, second) = GrigWord::from_letters(w.letters()).sections();
    (
        GroupWord::from_letters(first.to_letters()),
        GroupWord::from_letters(second.to_letters()),
    )
}
