//! Finite abstract simplicial complexes, integral homology, links, and the
//! complete-join and weak Cohen-Macaulay checks. Connectivity is always
//! homological connectivity: fundamental groups are not computed.

pub mod snf;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// A simplex as a sorted list of vertex ids.
pub type Simplex = Vec<usize>;

/// A complex given by its facets over labelled vertices. It always contains
/// the empty simplex; with no vertices it is the complex `{∅}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    /// Keeps the maximal sets among `faces`; ids index into `labels`.
    pub fn from_faces(
        labels: Vec<String>,
        faces: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let mut sets: BTreeSet<Simplex> = BTreeSet::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v >= labels.len()) {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    max: labels.len(),
                });
            }
            if !f.is_empty() {
                sets.insert(f);
            }
        }
        let all: Vec<Simplex> = sets.into_iter().collect();
        let facets = all
            .iter()
            .filter(|f| !all.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
            .cloned()
            .collect();
        Ok(SimplicialComplex { labels, facets })
    }

    /// Vertices labelled `0..n`.
    pub fn from_facets(n: usize, facets: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        Self::from_faces((0..n).map(|i| i.to_string()).collect(), facets)
    }

    /// The boundary of the `n`-simplex, a sphere of dimension `n - 1`.
    pub fn simplex_boundary(n: usize) -> Self {
        let facets = (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect());
        Self::from_facets(n + 1, facets).expect("ids in range")
    }

    pub fn full_simplex(n: usize) -> Self {
        Self::from_facets(n + 1, [(0..=n).collect()]).expect("ids in range")
    }

    /// `S^0`: two points.
    pub fn two_points() -> Self {
        Self::from_facets(2, [vec![0], vec![1]]).expect("ids in range")
    }

    /// Reads one facet per line, vertices named by whitespace-separated
    /// labels; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut faces = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            let face: Simplex = line
                .split_whitespace()
                .map(|l| {
                    *index.entry(l.to_string()).or_insert_with(|| {
                        labels.push(l.to_string());
                        labels.len() - 1
                    })
                })
                .collect();
            if !face.is_empty() {
                faces.push(face);
            }
        }
        Self::from_faces(labels, faces)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Vertices that lie in some facet.
    pub fn vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// `-1` for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        let mut s = s.to_vec();
        s.sort_unstable();
        s.dedup();
        s.is_empty() || self.facets.iter().any(|f| is_subset(&s, f))
    }

    /// Simplices of dimension `k` (so `k + 1` vertices) in lexicographic
    /// order; `k = -1` gives the empty simplex.
    pub fn faces(&self, k: isize) -> Vec<Simplex> {
        if k < -1 {
            return Vec::new();
        }
        if k == -1 {
            return vec![Vec::new()];
        }
        let size = (k + 1) as usize;
        let mut out: BTreeSet<Simplex> = BTreeSet::new();
        for f in &self.facets {
            if f.len() >= size {
                subsets(f, size, &mut out);
            }
        }
        out.into_iter().collect()
    }

    pub fn face_counts(&self) -> Vec<usize> {
        (0..=self.dimension())
            .map(|k| self.faces(k).len())
            .collect()
    }

    /// `Σ (-1)^k f_k` over nonempty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Reduced integral homology in dimensions `-1..=top_dim`.
    pub fn reduced_homology(&self, top_dim: isize) -> Vec<HomologyGroup> {
        let top = top_dim.max(-1);
        let faces: Vec<Vec<Simplex>> = (-1..=top + 1).map(|k| self.faces(k)).collect();
        let at = |k: isize| &faces[(k + 1) as usize];
        // factors[k + 1] are the invariant factors of ∂_k: C_k -> C_{k-1}
        let mut factors: Vec<Vec<BigInt>> = vec![Vec::new()];
        for k in 0..=top + 1 {
            factors.push(snf::invariant_factors(boundary_matrix(at(k), at(k - 1))));
        }
        (-1..=top)
            .map(|k| {
                let n = at(k).len();
                let rank_out = factors[(k + 1) as usize].len();
                let into = &factors[(k + 2) as usize];
                HomologyGroup {
                    dim: k,
                    rank: n - rank_out - into.len(),
                    torsion: snf::torsion(into),
                }
            })
            .collect()
    }

    /// `{τ : τ ∩ σ = ∅, τ ∪ σ ∈ X}`.
    pub fn link(&self, sigma: &[usize]) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::NotSimplex(sigma.to_vec()));
        }
        let faces = self
            .facets
            .iter()
            .filter(|f| sigma.iter().all(|v| f.contains(v)))
            .map(|f| f.iter().copied().filter(|v| !sigma.contains(v)).collect());
        SimplicialComplex::from_faces(self.labels.clone(), faces)
    }

    /// Checks vanishing reduced homology of `X` through dimension `n - 1`
    /// and of every link of a `k`-simplex through dimension `n - k - 2`.
    pub fn is_wcm_homological(&self, n: isize) -> WcmReport {
        let vanishes = |c: &SimplicialComplex, upto: isize| -> Option<isize> {
            if upto < -1 {
                return None;
            }
            c.reduced_homology(upto)
                .into_iter()
                .find(|h| !h.is_zero())
                .map(|h| h.dim)
        };
        if let Some(dim) = vanishes(self, n - 1) {
            return WcmReport {
                n,
                violation: Some(format!(
                    "reduced homology of the complex in dimension {dim}"
                )),
            };
        }
        for k in 0..=self.dimension() {
            for sigma in self.faces(k) {
                let link = self.link(&sigma).expect("face of the complex");
                if let Some(dim) = vanishes(&link, n - k - 2) {
                    return WcmReport {
                        n,
                        violation: Some(format!(
                            "reduced homology of the link of {} in dimension {dim}",
                            self.format_simplex(&sigma)
                        )),
                    };
                }
            }
        }
        WcmReport { n, violation: None }
    }

    pub fn format_simplex(&self, s: &[usize]) -> String {
        let names: Vec<&str> = s.iter().map(|&v| self.labels[v].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// `X * Y` on disjoint copies of the vertex sets.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.labels.len();
        let labels: Vec<String> = self
            .labels
            .iter()
            .map(|l| l.to_string())
            .chain(other.labels.iter().map(|l| format!("{l}'")))
            .collect();
        let left = if self.facets.is_empty() {
            vec![Vec::new()]
        } else {
            self.facets.clone()
        };
        let right = if other.facets.is_empty() {
            vec![Vec::new()]
        } else {
            other.facets.clone()
        };
        let mut faces = Vec::new();
        for f in &left {
            for g in &right {
                faces.push(
                    f.iter()
                        .copied()
                        .chain(g.iter().map(|v| v + shift))
                        .collect(),
                );
            }
        }
        SimplicialComplex::from_faces(labels, faces).expect("ids in range")
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn subsets(set: &[usize], size: usize, out: &mut BTreeSet<Simplex>) {
    fn go(
        set: &[usize],
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut BTreeSet<Simplex>,
    ) {
        if cur.len() == size {
            out.insert(cur.clone());
            return;
        }
        for i in start..set.len() {
            if set.len() - i < size - cur.len() {
                break;
            }
            cur.push(set[i]);
            go(set, size, i + 1, cur, out);
            cur.pop();
        }
    }
    go(set, size, 0, &mut Vec::new(), out);
}

/// Rows indexed by `lower`, columns by `upper`; removing vertex `i` of a
/// face carries the sign `(-1)^i`.
fn boundary_matrix(upper: &[Simplex], lower: &[Simplex]) -> Vec<Vec<BigInt>> {
    let index: BTreeMap<&Simplex, usize> = lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut m = vec![vec![BigInt::from(0); upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            let row = index[&face];
            m[row][j] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyGroup {
    pub dim: isize,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        write!(
            f,
            "dim {}: rank {}, torsion [{}]",
            self.dim,
            self.rank,
            t.join(",")
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WcmReport {
    pub n: isize,
    /// First failure found, if any.
    pub violation: Option<String>,
}

impl WcmReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for WcmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "wCM of dimension {} (homological connectivity)", self.n),
            Some(v) => write!(
                f,
                "not wCM of dimension {} (homological connectivity): {v}",
                self.n
            ),
        }
    }
}

/// The d-matching complex of the linear graph on `m` vertices: vertex `i`
/// is the path `i, ..., i+d-1`, and simplices are sets of disjoint paths.
pub fn matching_complex(d: usize, m: usize) -> SimplicialComplex {
    let count = (m + 1).saturating_sub(d);
    let labels: Vec<String> = (1..=count)
        .map(|i| {
            (i..i + d)
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("-")
        })
        .collect();
    // maximal sets of pairwise disjoint paths: starts at least d apart
    let mut facets = Vec::new();
    fn grow(next: usize, count: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Simplex>) {
        let mut extended = false;
        for s in next..count {
            // skipping more than d - 1 starts in a row would leave room for
            // another path, so the facet would not be maximal
            if s >= next + d && !cur.is_empty() || (cur.is_empty() && s >= d) {
                break;
            }
            cur.push(s);
            grow(s + d, count, d, cur, out);
            cur.pop();
            extended = true;
        }
        if !extended {
            out.push(cur.clone());
        }
    }
    grow(0, count, d, &mut Vec::new(), &mut facets);
    SimplicialComplex::from_faces(labels, facets).expect("ids in range")
}

/// A vertex map between complexes that sends simplices to simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.labels.len() {
            return Err(Error::NotSimplicialMap(format!(
                "{} images for {} vertices",
                map.len(),
                source.labels.len()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.labels.len()) {
            return Err(Error::NotSimplicialMap(format!(
                "vertex {v} is not in the target"
            )));
        }
        let m = SimplicialMap {
            source,
            target,
            map,
        };
        for f in &m.source.facets {
            let image = m.image(f);
            if !m.target.contains(&image) {
                return Err(Error::NotSimplicialMap(format!(
                    "{} maps to the non-simplex {}",
                    m.source.format_simplex(f),
                    m.target.format_simplex(&image)
                )));
            }
        }
        Ok(m)
    }

    pub fn image(&self, s: &[usize]) -> Simplex {
        let set: BTreeSet<usize> = s.iter().map(|&v| self.map[v]).collect();
        set.into_iter().collect()
    }

    /// Surjectivity, simplexwise injectivity, and for each simplex `σ` of
    /// the target, `ν^{-1}(σ)` equal to the join of the vertex fibers.
    pub fn check_complete_join(&self) -> CompleteJoinReport {
        let mut report = CompleteJoinReport::default();
        let source_faces: Vec<Simplex> = (0..=self.source.dimension())
            .flat_map(|k| self.source.faces(k))
            .collect();
        let images: BTreeSet<Simplex> = source_faces.iter().map(|s| self.image(s)).collect();
        report.surjective = (0..=self.target.dimension())
            .flat_map(|k| self.target.faces(k))
            .all(|s| images.contains(&s));
        report.simplexwise_injective = source_faces.iter().all(|s| self.image(s).len() == s.len());
        let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in self.source.vertices() {
            fibers.entry(self.map[v]).or_default().push(v);
        }
        report.fibers_are_joins = true;
        'targets: for k in 0..=self.target.dimension() {
            for sigma in self.target.faces(k) {
                // join ⊆ preimage: one vertex (or none) from each fiber
                let lists: Vec<Vec<Option<usize>>> = sigma
                    .iter()
                    .map(|v| {
                        std::iter::once(None)
                            .chain(fibers.get(v).into_iter().flatten().map(|&u| Some(u)))
                            .collect()
                    })
                    .collect();
                let mut ok = true;
                for_each_choice(&lists, &mut |choice| {
                    let s: Simplex = choice.iter().flatten().copied().collect();
                    if ok && !self.source.contains(&s) {
                        ok = false;
                    }
                });
                // preimage ⊆ join: at most one vertex over each target vertex
                ok &= source_faces
                    .iter()
                    .filter(|s| is_subset(&self.image(s), &sigma))
                    .all(|s| self.image(s).len() == s.len());
                if !ok {
                    report.fibers_are_joins = false;
                    report.first_violation = Some(self.target.format_simplex(&sigma));
                    break 'targets;
                }
            }
        }
        report
    }
}

fn for_each_choice(lists: &[Vec<Option<usize>>], f: &mut dyn FnMut(&[Option<usize>])) {
    fn go(
        lists: &[Vec<Option<usize>>],
        cur: &mut Vec<Option<usize>>,
        f: &mut dyn FnMut(&[Option<usize>]),
    ) {
        if cur.len() == lists.len() {
            f(cur);
            return;
        }
        for &x in &lists[cur.len()] {
            cur.push(x);
            go(lists, cur, f);
            cur.pop();
        }
    }
    go(lists, &mut Vec::new(), f);
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CompleteJoinReport {
    pub surjective: bool,
    pub simplexwise_injective: bool,
    pub fibers_are_joins: bool,
    pub first_violation: Option<String>,
}

impl CompleteJoinReport {
    pub fn is_complete_join(&self) -> bool {
        self.surjective && self.simplexwise_injective && self.fibers_are_joins
    }
}

impl fmt::Display for CompleteJoinReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "surjective={} simplexwise_injective={} fibers_are_joins={}",
            self.surjective, self.simplexwise_injective, self.fibers_are_joins
        )?;
        if let Some(v) = &self.first_violation {
            write!(f, " first_violation={v}")?;
        }
        Ok(())
    }
}

/// The complex of chains of a finite poset on `0..n` with order `le`.
pub fn order_complex(n: usize, le: impl Fn(usize, usize) -> bool) -> SimplicialComplex {
    let lt = |a: usize, b: usize| a != b && le(a, b);
    let mut chains = Vec::new();
    fn extend(
        cur: &mut Vec<usize>,
        n: usize,
        lt: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Simplex>,
    ) {
        let mut grew = false;
        let top = *cur.last().expect("nonempty chain");
        for v in 0..n {
            if lt(top, v) {
                cur.push(v);
                extend(cur, n, lt, out);
                cur.pop();
                grew = true;
            }
        }
        if !grew {
            out.push(cur.clone());
        }
    }
    for v in 0..n {
        extend(&mut vec![v], n, &lt, &mut chains);
    }
    SimplicialComplex::from_faces((0..n).map(|i| i.to_string()).collect(), chains)
        .expect("ids in range")
}

/// Nonempty faces of `X` ordered by inclusion, with their order complex
/// (the barycentric subdivision).
pub fn face_poset_complex(x: &SimplicialComplex) -> SimplicialComplex {
    let faces: Vec<Simplex> = (0..=x.dimension()).flat_map(|k| x.faces(k)).collect();
    let le = |a: usize, b: usize| is_subset(&faces[a], &faces[b]);
    let c = order_complex(faces.len(), le);
    let labels = faces.iter().map(|f| x.format_simplex(f)).collect();
    SimplicialComplex::from_faces(labels, c.facets).expect("ids in range")
}
