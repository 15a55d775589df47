//! d-ary cloning systems: the permutation and braid systems, wreath products
//! over a recursion table, and a randomized checker for the axioms
//! (C1) cloning a product, (C2) product of clonings, (C3) compatibility.

mod wreath;

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{BraidWord, Permutation};
use crate::error::Result;
use crate::recursion::{GroupWord, Kind, RecursionTable, Root, Verdict, DEFAULT_DEPTH};

pub use wreath::{KappaMutation, WreathDisplay, WreathElement};

/// A family of groups `G_n` with representations `ρ_n: G_n -> S_n` and
/// cloning maps `κ_k: G_n -> G_{n+d-1}`.
pub trait CloningSystem {
    type Element: Clone + fmt::Debug;

    fn name(&self) -> String;
    /// The arity `d`.
    fn degree(&self) -> usize;
    /// The `n` with `x ∈ G_n`.
    fn level(&self, x: &Self::Element) -> usize;
    fn rho(&self, x: &Self::Element) -> Permutation;
    fn kappa(&self, x: &Self::Element, k: usize) -> Result<Self::Element>;
    fn mul(&self, x: &Self::Element, y: &Self::Element) -> Result<Self::Element>;
    fn eq(&self, x: &Self::Element, y: &Self::Element) -> Verdict;
    fn random(&self, rng: &mut ChaCha8Rng, n: usize) -> Self::Element;
}

/// Length drawn from a geometric distribution with the given mean, capped.
pub fn geometric_len<R: Rng + ?Sized>(rng: &mut R, mean: f64, cap: usize) -> usize {
    let stop = 1.0 / (mean + 1.0);
    let mut len = 0;
    while len < cap && !rng.gen_bool(stop) {
        len += 1;
    }
    len
}

pub fn random_braid<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    if n < 2 {
        return BraidWord::identity(n);
    }
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(n, letters).expect("indices in range")
}

pub fn random_perm<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).expect("a shuffle is a bijection")
}

/// Symmetric groups with the cloning maps `ς_k`.
#[derive(Clone, Debug)]
pub struct PermutationSystem {
    pub d: usize,
}

impl CloningSystem for PermutationSystem {
    type Element = Permutation;

    fn name(&self) -> String {
        format!("S_n (d={})", self.d)
    }
    fn degree(&self) -> usize {
        self.d
    }
    fn level(&self, x: &Permutation) -> usize {
        x.degree()
    }
    fn rho(&self, x: &Permutation) -> Permutation {
        x.clone()
    }
    fn kappa(&self, x: &Permutation, k: usize) -> Result<Permutation> {
        x.clone_at(k, self.d)
    }
    fn mul(&self, x: &Permutation, y: &Permutation) -> Result<Permutation> {
        Ok(x * y)
    }
    fn eq(&self, x: &Permutation, y: &Permutation) -> Verdict {
        Verdict::from_bool(x == y)
    }
    fn random(&self, rng: &mut ChaCha8Rng, n: usize) -> Permutation {
        random_perm(rng, n)
    }
}

/// Braid groups with the cabling maps `ϑ_k`.
#[derive(Clone, Debug)]
pub struct BraidSystem {
    pub d: usize,
    pub max_len: usize,
}

impl BraidSystem {
    pub fn new(d: usize) -> Self {
        BraidSystem { d, max_len: 8 }
    }
}

impl CloningSystem for BraidSystem {
    type Element = BraidWord;

    fn name(&self) -> String {
        format!("B_n (d={})", self.d)
    }
    fn degree(&self) -> usize {
        self.d
    }
    fn level(&self, x: &BraidWord) -> usize {
        x.strands()
    }
    fn rho(&self, x: &BraidWord) -> Permutation {
        x.perm()
    }
    fn kappa(&self, x: &BraidWord, k: usize) -> Result<BraidWord> {
        x.clone_at(k, self.d)
    }
    fn mul(&self, x: &BraidWord, y: &BraidWord) -> Result<BraidWord> {
        x.mul(y)
    }
    fn eq(&self, x: &BraidWord, y: &BraidWord) -> Verdict {
        Verdict::from_bool(x.braid_eq(y).unwrap_or(false))
    }
    fn random(&self, rng: &mut ChaCha8Rng, n: usize) -> BraidWord {
        let len = geometric_len(rng, 4.0, self.max_len);
        random_braid(rng, n, len)
    }
}

/// `B_n wr G` or `S_n wr G` for the group `G` of a recursion table.
#[derive(Clone, Debug)]
pub struct WreathSystem {
    pub table: RecursionTable,
    pub mutation: KappaMutation,
    pub budget: usize,
    pub max_top_len: usize,
    pub max_entry_len: usize,
}

impl WreathSystem {
    pub fn new(table: RecursionTable) -> Self {
        WreathSystem {
            table,
            mutation: KappaMutation::None,
            budget: DEFAULT_DEPTH,
            max_top_len: 8,
            max_entry_len: 6,
        }
    }

    pub fn with_mutation(mut self, mutation: KappaMutation) -> Self {
        self.mutation = mutation;
        self
    }
}

impl CloningSystem for WreathSystem {
    type Element = WreathElement;

    fn name(&self) -> String {
        let top = match self.table.kind() {
            Kind::Braided => "B_n",
            Kind::Symmetric => "S_n",
        };
        let mut name = format!("{top} wr {} (d={})", self.table.name(), self.table.degree());
        if self.mutation != KappaMutation::None {
            name.push_str(&format!(" [mutation {:?}]", self.mutation));
        }
        name
    }
    fn degree(&self) -> usize {
        self.table.degree()
    }
    fn level(&self, x: &WreathElement) -> usize {
        x.degree()
    }
    fn rho(&self, x: &WreathElement) -> Permutation {
        x.rho()
    }
    fn kappa(&self, x: &WreathElement, k: usize) -> Result<WreathElement> {
        x.kappa_mutated(&self.table, k, self.mutation)
    }
    fn mul(&self, x: &WreathElement, y: &WreathElement) -> Result<WreathElement> {
        x.mul(&self.table, y)
    }
    fn eq(&self, x: &WreathElement, y: &WreathElement) -> Verdict {
        x.eq(&self.table, y, self.budget)
    }
    fn random(&self, rng: &mut ChaCha8Rng, n: usize) -> WreathElement {
        let top = match self.table.kind() {
            Kind::Braided => {
                let len = geometric_len(rng, 4.0, self.max_top_len);
                Root::Braid(random_braid(rng, n, len))
            }
            Kind::Symmetric => Root::Perm(random_perm(rng, n)),
        };
        let entries: Vec<GroupWord> = (0..n)
            .map(|_| {
                let len = geometric_len(rng, 2.5, self.max_entry_len);
                self.table.random_word(rng, len)
            })
            .collect();
        WreathElement::new(top, entries).expect("matching degrees")
    }
}

/// Pass/fail/unknown counts for one axiom.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
    /// Seed of the first failing sample, for reproduction.
    pub first_failure: Option<u64>,
}

impl Tally {
    fn record(&mut self, v: Verdict, sample_seed: u64) {
        match v {
            Verdict::Equal => self.pass += 1,
            Verdict::Unequal => {
                self.fail += 1;
                self.first_failure.get_or_insert(sample_seed);
            }
            Verdict::Unknown { .. } => self.unknown += 1,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.fail == 0 && self.unknown == 0
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub system: String,
    pub seed: u64,
    pub n_max: usize,
    pub c1: Tally,
    pub c2: Tally,
    pub c3: Tally,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.c1.is_clean() && self.c2.is_clean() && self.c3.is_clean()
    }

    pub fn failures(&self) -> usize {
        self.c1.fail + self.c2.fail + self.c3.fail
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system {} n<={}", self.system, self.n_max)?;
        for (label, t) in [("C1", &self.c1), ("C2", &self.c2), ("C3", &self.c3)] {
            write!(
                f,
                "{label} pass={} fail={} unknown={} seed={}",
                t.pass, t.fail, t.unknown, self.seed
            )?;
            if let Some(s) = t.first_failure {
                write!(f, " first_failure={s}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Seed of sample `i` in a run seeded with `seed`.
pub fn sample_seed(seed: u64, i: usize) -> u64 {
    seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Axiom verdicts for one sample drawn from `sample_seed`.
pub fn check_sample<S: CloningSystem>(
    sys: &S,
    n_max: usize,
    sample_seed: u64,
) -> Result<[Verdict; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
    let d = sys.degree();
    let n = rng.gen_range(2..=n_max.max(2));
    let g = sys.random(&mut rng, n);
    let h = sys.random(&mut rng, n);
    let k = rng.gen_range(1..=n);

    // (C1) (gh)κ_k = (g)κ_{ρ(h)k} (h)κ_k
    let lhs = sys.kappa(&sys.mul(&g, &h)?, k)?;
    let rhs = sys.mul(&sys.kappa(&g, sys.rho(&h).apply(k))?, &sys.kappa(&h, k)?)?;
    let c1 = sys.eq(&lhs, &rhs);

    // (C2) ((g)κ_l)κ_k = ((g)κ_k)κ_{l+d-1} for k < l
    let l = rng.gen_range(2..=n);
    let k2 = rng.gen_range(1..l);
    let lhs = sys.kappa(&sys.kappa(&g, l)?, k2)?;
    let rhs = sys.kappa(&sys.kappa(&g, k2)?, l + d - 1)?;
    let c2 = sys.eq(&lhs, &rhs);

    // (C3) ρ((g)κ_k)(i) = (ρ(g))ς_k(i) for i outside k..k+d-1
    let cloned = sys.rho(&sys.kappa(&g, k)?);
    let expected = sys.rho(&g).clone_at(k, d)?;
    let c3 = Verdict::from_bool(
        (1..=n + d - 1)
            .filter(|i| !(k..k + d).contains(i))
            .all(|i| cloned.apply(i) == expected.apply(i)),
    );
    Ok([c1, c2, c3])
}

/// Checks (C1)-(C3) on `samples` random instances with `2 <= n <= n_max`.
pub fn check_axioms<S: CloningSystem>(
    sys: &S,
    samples: usize,
    seed: u64,
    n_max: usize,
) -> Result<AxiomReport> {
    let mut report = AxiomReport {
        system: sys.name(),
        seed,
        n_max,
        c1: Tally::default(),
        c2: Tally::default(),
        c3: Tally::default(),
    };
    for i in 0..samples {
        let s = sample_seed(seed, i);
        let [c1, c2, c3] = check_sample(sys, n_max, s)?;
        report.c1.record(c1, s);
        report.c2.record(c2, s);
        report.c3.record(c3, s);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::{brgrig, grig};

    #[test]
    fn permutation_and_braid_systems_pass() {
        for d in [2, 3] {
            let r = check_axioms(&PermutationSystem { d }, 100, 1, 6).unwrap();
            assert!(r.all_pass(), "{r}");
            let r = check_axioms(&BraidSystem::new(d), 50, 1, 5).unwrap();
            assert!(r.all_pass(), "{r}");
        }
    }

    #[test]
    fn wreath_systems_pass() {
        let r = check_axioms(&WreathSystem::new(brgrig()), 50, 7, 5).unwrap();
        assert!(r.all_pass(), "{r}");
        let r = check_axioms(&WreathSystem::new(grig()), 50, 7, 5).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn mutations_are_caught() {
        for m in [
            KappaMutation::OmitRootFactor,
            KappaMutation::SwapFactorOrder,
        ] {
            let sys = WreathSystem::new(brgrig()).with_mutation(m);
            let r = check_axioms(&sys, 200, 3, 6).unwrap();
            assert!(r.c1.fail > 0, "{r}");
        }
    }

    #[test]
    fn report_lines() {
        let r = check_axioms(&PermutationSystem { d: 2 }, 5, 42, 4).unwrap();
        let text = r.to_string();
        assert!(text.contains("C1 pass=5 fail=0 unknown=0 seed=42"));
        assert_eq!(text.lines().count(), 4);
    }
}
