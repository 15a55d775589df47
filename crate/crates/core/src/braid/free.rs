use std::fmt;

/// A freely reduced word in the free group on `x_1, x_2, ...`.
///
/// Letters are stored signed: `j` is `x_j`, `-j` is `x_j^{-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(j: usize) -> Self {
        FreeWord {
            letters: vec![j as i32],
        }
    }

    /// Builds a word from signed letters, reducing it.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = FreeWord::identity();
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

    /// Largest generator index occurring in the word.
    pub fn max_generator(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    fn push(&mut self, l: i32) {
        debug_assert!(l != 0);
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Appends `other` in place.
    pub fn extend(&mut self, other: &FreeWord) {
        let mut cancel = 0;
        let max = self.letters.len().min(other.letters.len());
        while cancel < max
            && self.letters[self.letters.len() - 1 - cancel] == -other.letters[cancel]
        {
            cancel += 1;
        }
        self.letters.truncate(self.letters.len() - cancel);
        self.letters.extend_from_slice(&other.letters[cancel..]);
    }

    /// Appends the inverse of `other` in place.
    pub fn extend_inverse(&mut self, other: &FreeWord) {
        for &l in other.letters.iter().rev() {
            self.push(-l);
        }
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    /// Substitutes `images[j-1]` for each `x_j`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = FreeWord::identity();
        for &l in &self.letters {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                out.extend(img);
            } else {
                out.extend_inverse(img);
            }
        }
        out
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("x{l}")
                } else {
                    format!("x{}^-1", -l)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
