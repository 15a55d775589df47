use std::fmt;

/// A freely reduced word over the generators of a recursion table. Letter
/// `j` is generator `j` (one-based), `-j` its inverse.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<i32>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(j: usize) -> Self {
        GroupWord {
            letters: vec![j as i32],
        }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = GroupWord::default();
        for l in letters {
            w.push(l);
        }
        w
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

    pub fn push(&mut self, l: i32) {
        debug_assert!(l != 0);
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn extend(&mut self, other: &GroupWord) {
        for &l in &other.letters {
            self.push(l);
        }
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    pub fn pow(&self, e: i64) -> GroupWord {
        let base = if e >= 0 { self.clone() } else { self.inverse() };
        let mut w = GroupWord::identity();
        for _ in 0..e.unsigned_abs() {
            w.extend(&base);
        }
        w
    }

    /// Replaces each letter through `map`, where `map[j-1]` is the new index
    /// of generator `j`.
    pub fn relabel(&self, map: &[usize]) -> GroupWord {
        GroupWord::from_letters(
            self.letters
                .iter()
                .map(|&l| l.signum() * map[l.unsigned_abs() as usize - 1] as i32),
        )
    }

    /// Formats the word with the given generator symbols, collecting powers.
    pub fn format(&self, symbols: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let sym = &symbols[l.unsigned_abs() as usize - 1];
            let e = run as i64 * l.signum() as i64;
            if e == 1 {
                parts.push(sym.clone());
            } else {
                parts.push(format!("{sym}^{e}"));
            }
            i += run;
        }
        parts.join(" ")
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.letters)
    }
}
