//! Reduced-form calculus and the word problem for the braided Grigorchuk
//! group, plus the classical Grigorchuk group as the symmetric variant.
//!
//! Words here use the letter order of the built-in tables: `a=1, b=2, c=3,
//! d=4`, signed for inverses.

mod grig;

use std::collections::HashSet;
use std::fmt;

pub use grig::{grig_sections, is_identity_grig, GrigWord};

use crate::error::{Error, Result};
use crate::recursion::GroupWord;

pub const A: i32 = 1;
pub const B: i32 = 2;
pub const C: i32 = 3;
pub const D: i32 = 4;

/// Alternating product `z_1 a^{k_1} z_2 ... a^{k_l} z_{l+1}` with each `z_i`
/// stored as `(m, n)` for `b^m c^n`.
///
/// Interior `z_i` are nontrivial and every `k_i` is nonzero, so this is the
/// normal form of the free product `Z * Z^2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ReducedWord {
    z: Vec<(i64, i64)>,
    k: Vec<i64>,
}

impl Default for ReducedWord {
    fn default() -> Self {
        ReducedWord {
            z: vec![(0, 0)],
            k: Vec::new(),
        }
    }
}

impl ReducedWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Reduces a word over `a, b, c, d` (letters `1..=4`).
    pub fn from_letters(letters: &[i32]) -> Self {
        let mut w = Self::default();
        for &l in letters {
            let s = l.signum() as i64;
            match l.abs() {
                A => w.push_a(s),
                B => w.push_z(s, 0),
                C => w.push_z(0, s),
                // d = (bc)^-1
                D => w.push_z(-s, -s),
                other => panic!("letter {other} is not in the brGrig alphabet"),
            }
        }
        w
    }

    /// Builds a reduced word from segments; interior trivial segments and
    /// zero exponents are merged away.
    pub fn from_parts(z: &[(i64, i64)], k: &[i64]) -> Self {
        assert_eq!(
            z.len(),
            k.len() + 1,
            "need one more z-segment than a-powers"
        );
        let mut w = Self::default();
        for (i, &e) in k.iter().enumerate() {
            w.push_z(z[i].0, z[i].1);
            w.push_a(e);
        }
        let last = z[k.len()];
        w.push_z(last.0, last.1);
        w
    }

    pub fn push_a(&mut self, e: i64) {
        if e == 0 {
            return;
        }
        let last = *self.z.last().expect("at least one segment");
        if last == (0, 0) && !self.k.is_empty() {
            let top = self.k.last_mut().expect("nonempty");
            *top += e;
            if *top == 0 {
                self.k.pop();
                self.z.pop();
            }
        } else {
            self.k.push(e);
            self.z.push((0, 0));
        }
    }

    pub fn push_z(&mut self, m: i64, n: i64) {
        let last = self.z.last_mut().expect("at least one segment");
        last.0 += m;
        last.1 += n;
    }

    pub fn segments(&self) -> &[(i64, i64)] {
        &self.z
    }

    pub fn a_powers(&self) -> &[i64] {
        &self.k
    }

    /// Number of nontrivial terms in the alternating product.
    pub fn len(&self) -> usize {
        self.k.len() + self.z.iter().filter(|z| **z != (0, 0)).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sum of the exponents of the `a` terms.
    pub fn a_exponent(&self) -> i64 {
        self.k.iter().sum()
    }

    pub fn inverse(&self) -> Self {
        let z: Vec<(i64, i64)> = self.z.iter().rev().map(|&(m, n)| (-m, -n)).collect();
        let k: Vec<i64> = self.k.iter().rev().map(|e| -e).collect();
        ReducedWord { z, k }
    }

    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        let mut w = self.clone();
        for (i, &e) in other.k.iter().enumerate() {
            w.push_z(other.z[i].0, other.z[i].1);
            w.push_a(e);
        }
        let last = other.z[other.k.len()];
        w.push_z(last.0, last.1);
        w
    }

    /// Letters over `a, b, c` (no `d`).
    pub fn to_letters(&self) -> Vec<i32> {
        let mut out = Vec::new();
        let emit = |out: &mut Vec<i32>, g: i32, e: i64| {
            let l = if e >= 0 { g } else { -g };
            out.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        };
        for (i, &(m, n)) in self.z.iter().enumerate() {
            emit(&mut out, B, m);
            emit(&mut out, C, n);
            if let Some(&e) = self.k.get(i) {
                emit(&mut out, A, e);
            }
        }
        out
    }

    pub fn to_word(&self) -> GroupWord {
        GroupWord::from_letters(self.to_letters())
    }

    /// The two sections of the braided wreath recursion, each reduced.
    ///
    /// Each pair `z_i a^{k_i}` contributes `a^{m-n}` to one coordinate and
    /// `b^{-n} c^{m-n}` to the other, swapped when the exponent sum of the
    /// `a` terms from `k_i` onward is odd.
    pub fn sections(&self) -> (ReducedWord, ReducedWord) {
        let mut out = [ReducedWord::default(), ReducedWord::default()];
        let mut parity = vec![0usize; self.z.len()];
        let mut acc = 0i64;
        for i in (0..self.k.len()).rev() {
            acc += self.k[i];
            parity[i] = acc.rem_euclid(2) as usize;
        }
        for (i, &(m, n)) in self.z.iter().enumerate() {
            let p = parity[i];
            out[p].push_a(m - n);
            out[1 - p].push_z(-n, m - n);
        }
        let [first, second] = out;
        (first, second)
    }

    /// The exact word-problem procedure: nonzero `a` exponent means
    /// nontrivial, empty means trivial, otherwise recurse on both sections.
    pub fn is_identity(&self) -> bool {
        if self.a_exponent() != 0 {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let (first, second) = self.sections();
        first.is_identity() && second.is_identity()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let term = |g: char, e: i64| {
            if e == 1 {
                g.to_string()
            } else {
                format!("{g}^{e}")
            }
        };
        for (i, &(m, n)) in self.z.iter().enumerate() {
            if m != 0 {
                parts.push(term('b', m));
            }
            if n != 0 {
                parts.push(term('c', n));
            }
            if let Some(&e) = self.k.get(i) {
                parts.push(term('a', e));
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

pub fn reduce(w: &GroupWord) -> ReducedWord {
    ReducedWord::from_letters(w.letters())
}

pub fn a_exponent(w: &GroupWord) -> i64 {
    reduce(w).a_exponent()
}

pub fn reduced_sections(w: &ReducedWord) -> (ReducedWord, ReducedWord) {
    w.sections()
}

/// Decides whether a brGrig word is the identity.
pub fn is_identity(w: &GroupWord) -> bool {
    reduce(w).is_identity()
}

/// The endomorphism `a -> a^-1 c^-1 a, b -> d, c -> b, d -> c`.
pub fn sigma_endo(w: &GroupWord) -> GroupWord {
    let mut out = Vec::with_capacity(w.len() * 3);
    for &l in w.letters() {
        let image: &[i32] = match l.abs() {
            A => &[-A, -C, A],
            B => &[D],
            C => &[B],
            D => &[C],
            other => panic!("letter {other} is not in the brGrig alphabet"),
        };
        if l > 0 {
            out.extend_from_slice(image);
        } else {
            out.extend(image.iter().rev().map(|x| -x));
        }
    }
    GroupWord::from_letters(out)
}

/// Smallest `n <= max_n` such that every depth-`n` iterated reduced section
/// is the empty word. The word must represent the identity.
pub fn k_level(w: &GroupWord, max_n: usize) -> Result<Option<usize>> {
    let start = reduce(w);
    if !start.is_identity() {
        return Err(Error::Precondition(
            "k_level needs a word representing the identity".into(),
        ));
    }
    let mut level: HashSet<ReducedWord> = HashSet::new();
    if !start.is_empty() {
        level.insert(start);
    }
    for n in 0..=max_n {
        if level.is_empty() {
            return Ok(Some(n));
        }
        let mut next = HashSet::new();
        for rw in &level {
            let (first, second) = rw.sections();
            for s in [first, second] {
                if !s.is_empty() {
                    next.insert(s);
                }
            }
        }
        level = next;
    }
    Ok(None)
}

/// Commutator-style witnesses `[a,d][a^-1,d^-1]` and `[d^-1,a^-1][d,a]`
/// whose images under `sigma_endo` separate the `K_n`.
pub fn k_witnesses() -> (GroupWord, GroupWord) {
    let w = GroupWord::from_letters([-A, -D, A, D, A, D, -A, -D]);
    let wt = GroupWord::from_letters([D, A, -D, -A, -D, -A, D, A]);
    (w, wt)
}

/// Membership in the subgroup `Z = <b, c, d>`, given as an exponent pair
/// `(m, n)` with the element equal to `b^m c^n`, or `None`.
pub fn z_coordinates(w: &ReducedWord) -> Option<(i64, i64)> {
    if w.a_exponent() != 0 {
        return None;
    }
    let (first, second) = w.sections();
    let e = first.a_exponent();
    // b^m c^n has sections (a^{m-n}, b^{-n} c^{m-n}); first pin m-n, then n.
    let mut t = second.clone();
    t.push_z(0, -e);
    let (t_first, _) = t.sections();
    let n = -t_first.a_exponent();
    let m = e + n;
    let mut check = w.clone();
    check = check.mul(&ReducedWord::from_parts(&[(-m, -n)], &[]));
    if check.is_identity() {
        Some((m, n))
    } else {
        None
    }
}

/// Finds a reduced word whose braided wreath recursion is
/// `ζ^e (first, second)`, working syntactically in `Z * Z^2`.
///
/// Returns `None` when the sections, as reduced words, are not the sections
/// of any element of the free product; the sections may still represent the
/// sections of a group element through a different reduced word.
pub fn unsection(e: i64, first: &ReducedWord, second: &ReducedWord) -> Option<ReducedWord> {
    // Slots read right to left. Pair i (from the right) has parity i mod 2,
    // putting its a-power in coordinate (i mod 2) and its z in the other.
    let slots = |w: &ReducedWord, a_first: bool| -> Vec<Slot> {
        let mut out = Vec::new();
        for (i, &(m, n)) in w.z.iter().enumerate().rev() {
            out.push(Slot::Z(m, n));
            if i > 0 {
                out.push(Slot::A(w.k[i - 1]));
            }
        }
        if a_first {
            if matches!(out.first(), Some(Slot::Z(0, 0))) && out.len() > 1 {
                out.remove(0);
            } else {
                out.insert(0, Slot::A(0));
            }
        }
        out
    };
    // Coordinate 1 starts (from the right) with an a-slot, coordinate 2 with
    // a z-slot.
    let s1 = slots(first, true);
    let s2 = slots(second, false);
    let pairs = s1.len().max(s2.len());
    let get = |s: &[Slot], i: usize| s.get(i).copied();
    let mut powers_u = Vec::with_capacity(pairs);
    let mut powers_n = Vec::with_capacity(pairs);
    for j in 0..pairs {
        // pair j from the right: even j -> a-power in coordinate 1, z in 2
        let (a_slot, z_slot) = if j % 2 == 0 {
            (get(&s1, j), get(&s2, j))
        } else {
            (get(&s2, j), get(&s1, j))
        };
        let u = match a_slot {
            Some(Slot::A(u)) => u,
            Some(Slot::Z(_, _)) => unreachable!("slots alternate"),
            None => 0,
        };
        let (zb, zc) = match z_slot {
            Some(Slot::Z(m, n)) => (m, n),
            Some(Slot::A(_)) => unreachable!("slots alternate"),
            None => (0, 0),
        };
        // z = b^{-n} c^{u}
        if zc != u {
            return None;
        }
        powers_u.push(u);
        powers_n.push(-zb);
    }
    // Pairs beyond the longer slot list contribute nothing; make the count of
    // odd-exponent a-terms match the parity of e.
    let mut count = pairs;
    if (count - 1) as i64 % 2 != e.rem_euclid(2) {
        count += 1;
    }
    if count == 1 && e != 0 {
        count += 2;
    }
    powers_u.resize(count, 0);
    powers_n.resize(count, 0);
    // Segments from the left: pair index j from the right is position count-1-j.
    let l = count - 1;
    let mut z = Vec::with_capacity(count);
    for j in (0..count).rev() {
        let (u, n) = (powers_u[j], powers_n[j]);
        z.push((u + n, n));
    }
    let mut k = vec![1i64; l];
    if l > 0 {
        k[0] = e - (l as i64 - 1);
    }
    Some(ReducedWord::from_parts(&z, &k))
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    A(i64),
    Z(i64, i64),
}
