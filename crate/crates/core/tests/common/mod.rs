//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use braided_rover::complexes::HomologyGroup;

/// Rank of an integer matrix reduced mod the prime `p`.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = (1..p).find(|x| x * m[rank][c] % p == 1).unwrap();
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Simplices given as vertex bitmasks, including the empty one. Returns the
/// reduced Betti numbers over GF(p) in dimensions `-1..=top`.
pub fn betti_mod_p(simplices: &[u64], top: isize, p: i64) -> Vec<usize> {
    let by_dim = |k: isize| -> Vec<u64> {
        let mut v: Vec<u64> = simplices
            .iter()
            .copied()
            .filter(|s| s.count_ones() as isize == k + 1)
            .collect();
        v.sort_unstable();
        v
    };
    let boundary = |k: isize| -> Vec<Vec<i64>> {
        // rows: (k-1)-faces, columns: k-faces
        let upper = by_dim(k);
        let lower = by_dim(k - 1);
        let index: BTreeMap<u64, usize> = lower.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut m = vec![vec![0i64; upper.len()]; lower.len()];
        for (j, &s) in upper.iter().enumerate() {
            let mut sign = 1;
            for bit in 0..64 {
                if s >> bit & 1 == 1 {
                    m[index[&(s & !(1 << bit))]][j] = sign;
                    sign = -sign;
                }
            }
        }
        m
    };
    (-1..=top)
        .map(|k| {
            let n = by_dim(k).len();
            let out = if k >= 0 {
                rank_mod_p(&boundary(k), p)
            } else {
                0
            };
            let into = rank_mod_p(&boundary(k + 1), p);
            n - out - into
        })
        .collect()
}

/// Betti numbers over GF(p) predicted from integral homology by universal
/// coefficients.
pub fn universal_coefficients(h: &[HomologyGroup], p: i64) -> Vec<usize> {
    let divisible = |g: &HomologyGroup| g.torsion.iter().filter(|t| (*t % p) == 0.into()).count();
    (0..h.len())
        .map(|i| h[i].rank + divisible(&h[i]) + if i > 0 { divisible(&h[i - 1]) } else { 0 })
        .collect()
}

/// All simplices of the d-matching complex on m vertices by brute force over
/// subsets of path starts.
pub fn matching_simplices(d: usize, m: usize) -> Vec<u64> {
    let count = (m + 1).saturating_sub(d);
    (0u64..1 << count)
        .filter(|&mask| {
            let starts: Vec<usize> = (0..count).filter(|i| mask >> i & 1 == 1).collect();
            starts.windows(2).all(|w| w[1] - w[0] >= d)
        })
        .collect()
}

/// All simplices of a complex given by facets.
pub fn closure(facets: &[Vec<usize>]) -> Vec<u64> {
    let mut out = std::collections::BTreeSet::from([0u64]);
    for f in facets {
        let full: u64 = f.iter().map(|&v| 1u64 << v).sum();
        let mut sub = full;
        loop {
            out.insert(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & full;
        }
    }
    out.into_iter().collect()
}

/// `Z wr Z` as pairs `(q, P)` with `P` a Laurent polynomial, multiplied by
/// `(q1, P1)(q2, P2) = (q1 + q2, P1 + t^q1 P2)`; `a = (1, 0)`, `b = (0, 1)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Lamplighter {
    pub q: i64,
    pub poly: BTreeMap<i64, i64>,
}

impl Lamplighter {
    pub fn a() -> Self {
        Lamplighter {
            q: 1,
            poly: BTreeMap::new(),
        }
    }

    pub fn b() -> Self {
        Lamplighter {
            q: 0,
            poly: BTreeMap::from([(0, 1)]),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut poly = self.poly.clone();
        for (&e, &c) in &o.poly {
            *poly.entry(e + self.q).or_insert(0) += c;
        }
        poly.retain(|_, c| *c != 0);
        Lamplighter {
            q: self.q + o.q,
            poly,
        }
    }

    pub fn inverse(&self) -> Self {
        let poly = self.poly.iter().map(|(&e, &c)| (e - self.q, -c)).collect();
        Lamplighter { q: -self.q, poly }
    }

    /// Letters `±1` for `a`, `±2` for `b`.
    pub fn eval(letters: &[i32]) -> Self {
        letters.iter().fold(Self::default(), |acc, &l| {
            let g = if l.abs() == 1 { Self::a() } else { Self::b() };
            acc.mul(&if l > 0 { g } else { g.inverse() })
        })
    }
}
