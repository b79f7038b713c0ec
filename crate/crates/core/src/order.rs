//! Finite partial orders over named elements.
//!
//! A [`Poset`] keeps its elements in a fixed sequence (the order in which they
//! were declared) and stores `≤` as a dense, reflexive and transitively closed
//! boolean matrix over that sequence. All deterministic tie-breaking elsewhere
//! in the crate follows this canonical sequence.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    // leq[i * n + j] <=> elements[i] <= elements[j]
    leq: Vec<bool>,
}

fn build_index(elements: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(Error::DuplicateIdentifier(e.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Builds the order generated by `pairs`, each read as `lower < upper`.
    pub fn from_generators<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
        let index = build_index(&elements)?;
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownElement(name.to_owned()))
        };
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (lo, hi) in pairs {
            idx_pairs.push((lookup(lo.as_ref())?, lookup(hi.as_ref())?));
        }
        Self::from_index_generators(elements, &idx_pairs)
    }

    /// Same as [`Poset::from_generators`], with generator pairs given as indices
    /// into `elements`.
    pub fn from_index_generators(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let index = build_index(&elements)?;
        let n = elements.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(lo, hi) in pairs {
            if lo >= n || hi >= n {
                return Err(Error::UnknownElement(format!("#{}", lo.max(hi))));
            }
            if lo == hi {
                let e = elements[lo].clone();
                return Err(Error::Cycle(vec![e.clone(), e]));
            }
            leq[lo * n + hi] = true;
        }
        close_transitively(&mut leq, n);
        if let Some((i, j)) = antisymmetry_violation(&leq, n) {
            return Err(Error::Cycle(cycle_witness(&elements, pairs, i, j)));
        }
        Ok(Self { elements, index, leq })
    }

    /// The discrete order on `elements`.
    pub fn antichain(elements: Vec<String>) -> Result<Self> {
        Self::from_index_generators(elements, &[])
    }

    /// Builds a poset from an `n × n` row-major relation, closing it
    /// reflexively and transitively first.
    pub fn from_relation(elements: Vec<String>, relation: &[bool]) -> Result<Self> {
        let n = elements.len();
        assert_eq!(relation.len(), n * n, "relation matrix has wrong size");
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && relation[i * n + j])
            .collect();
        Self::from_index_generators(elements, &pairs)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| Error::UnknownElement(n.as_ref().to_owned()))
            })
            .collect()
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    #[inline]
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        !self.le(i, j) && !self.le(j, i)
    }

    /// `i ⋖ j`: `i < j` with nothing strictly in between.
    pub fn is_covered_by(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) && !(0..self.len()).any(|k| self.lt(i, k) && self.lt(k, j))
    }

    /// The Hasse edges, ordered by (lower, upper) in canonical order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.is_covered_by(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn cover_names(&self) -> Vec<(&str, &str)> {
        self.covers()
            .into_iter()
            .map(|(i, j)| (self.name(i), self.name(j)))
            .collect()
    }

    /// All strict pairs `i < j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.lt(i, j))
            .collect()
    }

    pub fn is_convex(&self, subset: &[usize]) -> bool {
        let n = self.len();
        let mut member = vec![false; n];
        for &s in subset {
            member[s] = true;
        }
        for &s in subset {
            for &t in subset {
                if !self.le(s, t) {
                    continue;
                }
                if (0..n).any(|p| !member[p] && self.le(s, p) && self.le(p, t)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_convex_named<S: AsRef<str>>(&self, subset: &[S]) -> Result<bool> {
        Ok(self.is_convex(&self.indices(subset)?))
    }

    pub fn upper_bounds(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| subset.iter().all(|&s| self.le(s, u)))
            .collect()
    }

    pub fn lower_bounds(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&l| subset.iter().all(|&s| self.le(l, s)))
            .collect()
    }

    /// Least upper bound of `subset`, if it exists. The join of the empty set
    /// is the global minimum.
    pub fn join(&self, subset: &[usize]) -> Option<usize> {
        let ub = self.upper_bounds(subset);
        ub.iter().copied().find(|&u| ub.iter().all(|&v| self.le(u, v)))
    }

    /// Greatest lower bound of `subset`, if it exists. The meet of the empty
    /// set is the global maximum.
    pub fn meet(&self, subset: &[usize]) -> Option<usize> {
        let lb = self.lower_bounds(subset);
        lb.iter().copied().find(|&l| lb.iter().all(|&v| self.le(v, l)))
    }

    /// `(join, meet)` of `subset` when both exist.
    pub fn joins_and_meets(&self, subset: &[usize]) -> Option<(usize, usize)> {
        Some((self.join(subset)?, self.meet(subset)?))
    }

    /// Whether every pair has a join and a meet. For a finite nonempty poset
    /// this makes it a complete lattice.
    pub fn is_lattice(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyPoset);
        }
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.joins_and_meets(&[i, j]).is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A linear extension: elements sorted so that `i < j` puts `i` first.
    /// Ties are broken by canonical order.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        // the number of strict lower bounds is a valid sort key for a closed order
        order.sort_by_key(|&i| (0..n).filter(|&k| self.lt(k, i)).count());
        order
    }

    /// The same order with elements renamed position-wise.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        assert_eq!(names.len(), self.len());
        let index = build_index(&names)?;
        Ok(Self {
            elements: names,
            index,
            leq: self.leq.clone(),
        })
    }

    /// The full relation matrix, row-major.
    pub fn matrix(&self) -> &[bool] {
        &self.leq
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.elements)
            .field("covers", &self.cover_names())
            .finish()
    }
}

/// Warshall-style closure of a row-major `n × n` relation, in place.
pub(crate) fn close_transitively(rel: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if !rel[i * n + k] {
                continue;
            }
            for j in 0..n {
                if rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
}

/// First pair `i != j` with `i ≤ j` and `j ≤ i`.
pub(crate) fn antisymmetry_violation(rel: &[bool], n: usize) -> Option<(usize, usize)> {
    for i in 0..n {
        for j in (i + 1)..n {
            if rel[i * n + j] && rel[j * n + i] {
                return Some((i, j));
            }
        }
    }
    None
}

fn generator_path(n: usize, pairs: &[(usize, usize)], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(lo, hi) in pairs {
            if lo == u && !seen[hi] {
                seen[hi] = true;
                prev[hi] = u;
                queue.push_back(hi);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

fn cycle_witness(elements: &[String], pairs: &[(usize, usize)], i: usize, j: usize) -> Vec<String> {
    let n = elements.len();
    let mut cycle = generator_path(n, pairs, i, j);
    cycle.extend(generator_path(n, pairs, j, i).into_iter().skip(1));
    cycle.into_iter().map(|k| elements[k].clone()).collect()
}
