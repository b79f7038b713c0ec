//! Shared helpers for integration tests: corpus access and brute-force
//! oracles written directly from the definitions, independent of the
//! library's algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use circord::text::{self, Document};
use circord::{Circuit, Relation};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn load(file: &str) -> Document {
    let path = corpus_dir().join(file);
    let src = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text::parse(&src).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Direct check of the three morphism clauses.
pub fn is_morphism(p: &Circuit, q: &Circuit, map: &[usize]) -> bool {
    let (po, qo) = (p.gates(), q.gates());
    for x in 0..p.len() {
        for y in 0..p.len() {
            if po.le(x, y) && !qo.le(map[x], map[y]) {
                return false;
            }
        }
    }
    for (a, name) in p.inputs().iter().enumerate() {
        let qa = q.input_index(name).unwrap();
        if !qo.le(q.lambda(qa), map[p.lambda(a)]) {
            return false;
        }
    }
    for (b, name) in p.outputs().iter().enumerate() {
        let qb = q.output_index(name).unwrap();
        if !qo.le(map[p.mu(b)], q.mu(qb)) {
            return false;
        }
    }
    true
}

/// Every map from `0..n` to `0..m`, in lexicographic order.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(vec![]);
        }
        return out;
    }
    let mut cur = vec![0; n];
    loop {
        out.push(cur.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < m {
                break;
            }
            cur[k] = 0;
        }
    }
}

pub fn brute_morphisms(p: &Circuit, q: &Circuit) -> Vec<Vec<usize>> {
    all_maps(p.len(), q.len())
        .into_iter()
        .filter(|m| is_morphism(p, q, m))
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Circuit isomorphism by trying every bijection: order isomorphism with
/// the boundary carried over exactly.
pub fn brute_isomorphic(p: &Circuit, q: &Circuit) -> bool {
    if p.len() != q.len() {
        return false;
    }
    permutations(p.len()).into_iter().any(|perm| {
        (0..p.len()).all(|x| (0..p.len()).all(|y| p.gates().le(x, y) == q.gates().le(perm[x], perm[y])))
            && p.inputs().iter().enumerate().all(|(a, n)| {
                perm[p.lambda(a)] == q.lambda(q.input_index(n).unwrap())
            })
            && p.outputs().iter().enumerate().all(|(b, n)| {
                perm[p.mu(b)] == q.mu(q.output_index(n).unwrap())
            })
    })
}

pub fn connectivity_pairs(c: &Circuit) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for (a, an) in c.inputs().iter().enumerate() {
        for (b, bn) in c.outputs().iter().enumerate() {
            if c.gates().le(c.lambda(a), c.mu(b)) {
                out.insert((an.clone(), bn.clone()));
            }
        }
    }
    out
}

pub fn relation_pairs(g: &Relation) -> BTreeSet<(String, String)> {
    g.pair_names()
        .into_iter()
        .map(|(a, b)| (a.to_owned(), b.to_owned()))
        .collect()
}

pub type Set = BTreeSet<usize>;

pub fn children_of(g: &Relation, alpha: &Set) -> Set {
    (0..g.outputs().len())
        .filter(|&b| alpha.iter().all(|&a| g.related(a, b)))
        .collect()
}

pub fn parents_of(g: &Relation, beta: &Set) -> Set {
    (0..g.inputs().len())
        .filter(|&a| beta.iter().all(|&b| g.related(a, b)))
        .collect()
}

pub fn subsets(n: usize) -> Vec<Set> {
    (0u32..1 << n)
        .map(|bits| (0..n).filter(|&i| bits >> i & 1 == 1).collect())
        .collect()
}

/// Closed input sets found by testing every subset.
pub fn brute_closed_inputs(g: &Relation) -> BTreeSet<Set> {
    subsets(g.inputs().len())
        .into_iter()
        .filter(|s| parents_of(g, &children_of(g, s)) == *s)
        .collect()
}

pub fn names(universe: &[String], s: &Set) -> String {
    s.iter().map(|&i| universe[i].as_str()).collect()
}

/// Least upper bound by scanning all elements.
pub fn brute_join(le: impl Fn(usize, usize) -> bool, n: usize, s: &[usize]) -> Option<usize> {
    let ubs: Vec<usize> = (0..n).filter(|&u| s.iter().all(|&x| le(x, u))).collect();
    ubs.iter().copied().find(|&u| ubs.iter().all(|&v| le(u, v)))
}

pub fn brute_meet(le: impl Fn(usize, usize) -> bool, n: usize, s: &[usize]) -> Option<usize> {
    let lbs: Vec<usize> = (0..n).filter(|&l| s.iter().all(|&x| le(l, x))).collect();
    lbs.iter().copied().find(|&l| lbs.iter().all(|&v| le(v, l)))
}
