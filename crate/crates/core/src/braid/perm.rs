use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}`.
///
/// Products follow function composition: `(p * q)(i) = p(q(i))`, which is
/// the order in which the representation maps of a cloning system compose.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    // zero-based images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from one-based images, `images[i-1] = p(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero = Vec::with_capacity(n);
        for &im in images {
            if im == 0 || im > n {
                return Err(Error::IndexOutOfRange { index: im, max: n });
            }
            if seen[im - 1] {
                return Err(Error::Precondition(format!(
                    "image {im} repeated; not a bijection"
                )));
            }
            seen[im - 1] = true;
            zero.push(im - 1);
        }
        Ok(Permutation { images: zero })
    }

    /// Transposition of `i` and `j` (one-based) in `S_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    /// Builds a permutation from one-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::IndexOutOfRange { index: x, max: n });
                }
                if touched[x - 1] {
                    return Err(Error::Precondition(format!(
                        "point {x} appears in more than one cycle"
                    )));
                }
                touched[x - 1] = true;
                images[x - 1] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the one-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "permutation degrees differ");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// Embeds a permutation of `{1..d}` into `S_n` acting on `k..k+d-1`.
    pub fn shift_embed(&self, k: usize, n: usize) -> Permutation {
        let d = self.degree();
        let total = n + d - 1;
        let mut p = Self::identity(total);
        for j in 0..d {
            p.images[k - 1 + j] = k - 1 + self.images[j];
        }
        p
    }

    /// The `d`-ary cloning map on symmetric groups: the arrow from `k` to
    /// `p(k)` is replaced by `d` parallel arrows and everything else is
    /// relabelled around it.
    pub fn clone_at(&self, k: usize, d: usize) -> Result<Permutation> {
        let n = self.degree();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, max: n });
        }
        let target = self.apply(k);
        let lift = |im: usize| if im > target { im + d - 1 } else { im };
        let mut images = Vec::with_capacity(n + d - 1);
        for j in 1..=n + d - 1 {
            let im = if j < k {
                lift(self.apply(j))
            } else if j < k + d {
                target + (j - k)
            } else {
                lift(self.apply(j - d + 1))
            };
            images.push(im);
        }
        Permutation::from_images(&images)
    }

    /// Removes the points in `remove` together with their images and
    /// renumbers the rest in order.
    pub fn delete_points(&self, remove: &[usize]) -> Result<Permutation> {
        let n = self.degree();
        if let Some(&bad) = remove.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, max: n });
        }
        let gone: Vec<usize> = remove.iter().map(|&i| self.apply(i)).collect();
        let rank = |im: usize| im - gone.iter().filter(|&&g| g < im).count();
        let images: Vec<usize> = (1..=n)
            .filter(|i| !remove.contains(i))
            .map(|i| rank(self.apply(i)))
            .collect();
        Permutation::from_images(&images)
    }

    /// Cycle notation, `e` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur];
            }
            out.push('(');
            out.push_str(
                &cycle
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            "e".to_string()
        } else {
            out
        }
    }

    /// Parses cycle notation such as `(1 2)(3 4)`; `e`, `id` and the empty
    /// string denote the identity.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "id" || t == "1" {
            return Ok(Self::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        let mut offset = text.len() - text.trim_start().len();
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::parse(offset + 1, "expected '('"))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::parse(offset + 1, "unexpected text before '('"));
            }
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::parse(offset + open + 1, "unclosed cycle"))?
                + open;
            let mut cycle = Vec::new();
            for tok in rest[open + 1..close].split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(offset + open + 2, format!("bad point '{tok}'")))?;
                cycle.push(v);
            }
            cycles.push(cycle);
            offset += close + 1;
            rest = &rest[close + 1..];
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            rest = trimmed;
        }
        Self::from_cycles(n, &cycles)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}{}", self.degree(), self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}
