//! Normal form for `Z wr Z = <a, b>`, realized by the table
//! `a = ζ(1, a), b = ζ^2(1, b)`.
//!
//! An element is a finitely supported `f: Z -> Z` with a shift `q`; it equals
//! the product over `j` of `a^j b^{f(j)} a^{-j}`, followed by `a^q`.

use std::collections::BTreeMap;

use super::GroupWord;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ZwrZ {
    support: BTreeMap<i64, i64>,
    shift: i64,
}

impl ZwrZ {
    /// Reads a word over `a = letter a_index`, `b = letter b_index`.
    pub fn from_word(w: &GroupWord, a_index: usize, b_index: usize) -> Self {
        let mut z = ZwrZ::default();
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize;
            let s = l.signum() as i64;
            if g == a_index {
                z.shift += s;
            } else if g == b_index {
                z.bump(z.shift, s);
            } else {
                panic!("letter {g} is not a Z wr Z generator");
            }
        }
        z
    }

    fn bump(&mut self, at: i64, by: i64) {
        let e = self.support.entry(at).or_insert(0);
        *e += by;
        if *e == 0 {
            self.support.remove(&at);
        }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn support(&self) -> &BTreeMap<i64, i64> {
        &self.support
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.support.is_empty()
    }

    /// Sum of the values of `f`; `b` has root `ζ^2`, so the root of the
    /// element is `ζ^{q + 2Σf}`.
    pub fn root_exponent(&self) -> i64 {
        self.shift + 2 * self.support.values().sum::<i64>()
    }

    /// Canonical word `a^{j_1} b^{f_1} a^{j_2 - j_1} ... a^{q - j_last}`.
    pub fn to_word(&self, a_index: usize, b_index: usize) -> GroupWord {
        let (a, b) = (a_index as i32, b_index as i32);
        let mut w = GroupWord::identity();
        let mut pos = 0i64;
        let power = |w: &mut GroupWord, g: i32, e: i64| {
            for _ in 0..e.unsigned_abs() {
                w.push(if e > 0 { g } else { -g });
            }
        };
        for (&j, &f) in &self.support {
            power(&mut w, a, j - pos);
            power(&mut w, b, f);
            pos = j;
        }
        power(&mut w, a, self.shift - pos);
        w
    }

    /// Sections of the wreath recursion.
    ///
    /// `a^j b a^{-j}` has recursion `ζ^2(1, a^k b a^{-k})` for `j = 2k` and
    /// `ζ^2(a^k b a^{-k}, 1)` for `j = 2k - 1`, while `a^{2p} = ζ^{2p}(a^p, a^p)`
    /// and `a^{2p+1} = ζ^{2p+1}(a^p, a^{p+1})`.
    pub fn sections(&self) -> (ZwrZ, ZwrZ) {
        let mut odd = ZwrZ::default();
        let mut even = ZwrZ::default();
        for (&j, &f) in &self.support {
            if j.rem_euclid(2) == 0 {
                even.bump(j.div_euclid(2), f);
            } else {
                odd.bump((j + 1).div_euclid(2), f);
            }
        }
        let p = self.shift.div_euclid(2);
        if self.shift.rem_euclid(2) == 0 {
            odd.shift = p;
            even.shift = p;
            (odd, even)
        } else {
            even.shift = p;
            odd.shift = p + 1;
            (even, odd)
        }
    }

    /// Inverse of `sections`: the unique element with recursion
    /// `ζ^root (first, second)`, if any.
    pub fn unsection(root: i64, first: &ZwrZ, second: &ZwrZ) -> Option<ZwrZ> {
        let (odd, even, shift) = if first.shift == second.shift {
            (first, second, 2 * first.shift)
        } else if second.shift == first.shift + 1 {
            (second, first, 2 * first.shift + 1)
        } else {
            return None;
        };
        let mut z = ZwrZ {
            support: BTreeMap::new(),
            shift,
        };
        for (&k, &f) in &odd.support {
            z.bump(2 * k - 1, f);
        }
        for (&k, &f) in &even.support {
            z.bump(2 * k, f);
        }
        (z.root_exponent() == root).then_some(z)
    }
}
