use crate::braid::{BraidWord, Permutation};

use super::{invert_map, Generator, GroupWord, Kind, RecursionTable, Root, Solver};

fn gen(symbol: &str, root: Root, sections: &[&[i32]]) -> Generator {
    Generator {
        symbol: symbol.to_string(),
        root,
        sections: sections
            .iter()
            .map(|s| GroupWord::from_letters(s.iter().copied()))
            .collect(),
    }
}

fn braid_root(letters: &[i32]) -> Root {
    Root::Braid(BraidWord::new(2, letters.to_vec()).expect("B_2 word"))
}

fn brgrig_generators() -> Vec<Generator> {
    let e = braid_root(&[]);
    vec![
        gen("a", braid_root(&[1]), &[&[], &[]]),
        gen("b", e.clone(), &[&[1], &[3]]),
        gen("c", e.clone(), &[&[-1], &[4]]),
        gen("d", e, &[&[], &[2]]),
    ]
}

fn grig_generators() -> Vec<Generator> {
    let e = Root::Perm(Permutation::identity(2));
    vec![
        gen(
            "a",
            Root::Perm(Permutation::transposition(2, 1, 2)),
            &[&[], &[]],
        ),
        gen("b", e.clone(), &[&[1], &[3]]),
        gen("c", e.clone(), &[&[1], &[4]]),
        gen("d", e, &[&[], &[2]]),
    ]
}

fn zwrz_generators() -> Vec<Generator> {
    vec![
        gen("a", braid_root(&[1]), &[&[], &[1]]),
        gen("b", braid_root(&[1, 1]), &[&[], &[2]]),
    ]
}

/// The braided Grigorchuk group: `a = ζ(1,1), b = (a,c), c = (a^-1,d), d = (1,b)`.
pub fn brgrig() -> RecursionTable {
    RecursionTable::new("brgrig", 2, Kind::Braided, brgrig_generators()).expect("valid table")
}

/// The Grigorchuk group: `a = (1 2)(1,1), b = (a,c), c = (a,d), d = (1,b)`.
pub fn grig() -> RecursionTable {
    RecursionTable::new("grig", 2, Kind::Symmetric, grig_generators()).expect("valid table")
}

/// `Z wr Z` as `a = ζ(1,a), b = ζ^2(1,b)`.
pub fn zwrz() -> RecursionTable {
    RecursionTable::new("zwrz", 2, Kind::Braided, zwrz_generators()).expect("valid table")
}

/// The self-identical table with one generator `f = root(f, ..., f)`.
pub fn self_identical(root: Root) -> RecursionTable {
    let d = root.degree();
    let kind = root.kind();
    let f = GroupWord::generator(1);
    RecursionTable::new(
        "selfid",
        d,
        kind,
        vec![Generator {
            symbol: "f".into(),
            root,
            sections: vec![f; d],
        }],
    )
    .expect("valid table")
}

/// The trivial group, with no generators.
pub fn trivial(degree: usize, kind: Kind) -> RecursionTable {
    RecursionTable::new("trivial", degree, kind, Vec::new()).expect("valid table")
}

pub(super) fn detect_solver(t: &RecursionTable) -> Solver {
    let gens = t.generators();
    if is_trivial_table(gens) {
        return Solver::Trivial;
    }
    if gens
        .iter()
        .enumerate()
        .all(|(j, g)| g.sections.iter().all(|s| *s == GroupWord::generator(j + 1)))
    {
        return Solver::SelfIdentical;
    }
    if t.degree() != 2 {
        return Solver::None;
    }
    match t.kind() {
        Kind::Braided => {
            if let Some(map) = match_generators(gens, &brgrig_generators()) {
                return Solver::BrGrig {
                    to_canonical: invert_map(&map),
                };
            }
            if let Some(map) = match_generators(gens, &zwrz_generators()) {
                return Solver::ZwrZ {
                    a: map[0],
                    b: map[1],
                };
            }
        }
        Kind::Symmetric => {
            if let Some(map) = match_generators(gens, &grig_generators()) {
                return Solver::Grig {
                    to_canonical: invert_map(&map),
                };
            }
        }
    }
    Solver::None
}

/// Greatest set of generators with trivial root whose sections only use
/// generators in the set; all of them are the identity.
fn is_trivial_table(gens: &[Generator]) -> bool {
    let mut trivial: Vec<bool> = gens.iter().map(|g| g.root.is_trivial()).collect();
    loop {
        let mut changed = false;
        for (j, g) in gens.iter().enumerate() {
            if trivial[j]
                && g.sections.iter().any(|s| {
                    s.letters()
                        .iter()
                        .any(|l| !trivial[l.unsigned_abs() as usize - 1])
                })
            {
                trivial[j] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    trivial.iter().all(|t| *t)
}

/// Finds `map` with table generator `map[i]` playing the role of reference
/// generator `i + 1`.
fn match_generators(gens: &[Generator], reference: &[Generator]) -> Option<Vec<usize>> {
    if gens.len() != reference.len() {
        return None;
    }
    let n = gens.len();
    let mut order: Vec<usize> = (1..=n).collect();
    let fits = |map: &[usize]| {
        reference.iter().enumerate().all(|(i, r)| {
            let g = &gens[map[i] - 1];
            g.root.same_as(&r.root)
                && g.sections
                    .iter()
                    .zip(&r.sections)
                    .all(|(s, rs)| *s == rs.relabel(map))
        })
    };
    permutations(&mut order, 0, &fits)
}

fn permutations(
    v: &mut Vec<usize>,
    start: usize,
    fits: &dyn Fn(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if start == v.len() {
        return fits(v).then(|| v.clone());
    }
    for i in start..v.len() {
        v.swap(start, i);
        if let Some(found) = permutations(v, start + 1, fits) {
            return Some(found);
        }
        v.swap(start, i);
    }
    None
}
