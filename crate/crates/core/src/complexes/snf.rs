//! Smith normal form over the integers, returning only the diagonal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix given as
/// rows. The rank is the number of factors.
#[allow(clippy::needless_range_loop)] // row operations read one row while writing another
pub fn invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero magnitude in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        // clear the pivot row and column, restarting with a smaller pivot
        // whenever a remainder survives
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..cols {
                    let v = &m[t][j] * &q;
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of the pivot row/column into place
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                m.swap(t, best.0);
            }
            if best.1 != t {
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Factors different from one: the torsion coefficients.
pub fn torsion(factors: &[BigInt]) -> Vec<BigInt> {
    factors.iter().filter(|f| !f.is_one()).cloned().collect()
}
