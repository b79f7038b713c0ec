//! Equivalences on gate sets, quotient orders and gate composition.
//!
//! Quotienting by an equivalence `θ` identifies the gates in each block. The
//! resulting relation `≤_θ` is reflexive but need not be transitive or
//! antisymmetric; `θ` is a *compatible congruence* when the transitive closure
//! of `≤_θ` is antisymmetric, and only then does the quotient form a circuit.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::order::{antisymmetry_violation, close_transitively, Poset};

/// A partition of `{0, .., n-1}` in canonical form: members of each block
/// ascending, blocks ordered by their least member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equivalence {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Equivalence {
    pub fn from_blocks(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        for (k, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n {
                    return Err(Error::InvalidPartition(format!("element #{e} out of range")));
                }
                if block_of[e] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element #{e} appears in more than one block"
                    )));
                }
                block_of[e] = k;
            }
        }
        if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element #{e} is in no block")));
        }
        Ok(Self { blocks, block_of })
    }

    pub fn from_named_blocks<S: AsRef<str>>(poset: &Poset, blocks: &[Vec<S>]) -> Result<Self> {
        let mut idx = Vec::with_capacity(blocks.len());
        for b in blocks {
            idx.push(poset.indices(b)?);
        }
        Self::from_blocks(poset.len(), idx).map_err(|e| match e {
            Error::InvalidPartition(m) => Error::InvalidPartition(name_elements(poset, &m)),
            other => other,
        })
    }

    /// The partition into singletons.
    pub fn discrete(n: usize) -> Self {
        Self {
            blocks: (0..n).map(|i| vec![i]).collect(),
            block_of: (0..n).collect(),
        }
    }

    /// `θ_S`: `subset` as one block, every other element alone.
    pub fn merging(n: usize, subset: &[usize]) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = (0..n)
            .filter(|i| !subset.contains(i))
            .map(|i| vec![i])
            .collect();
        if !subset.is_empty() {
            blocks.push(subset.to_vec());
        }
        Self::from_blocks(n, blocks)
    }

    /// The fibres of `labels`: `i ~ j ⟺ labels[i] == labels[j]`.
    pub fn from_labels<L: Eq + Hash>(labels: &[L]) -> Self {
        let mut first: HashMap<&L, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let k = *first.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[k].push(i);
            block_of.push(k);
        }
        Self { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, e: usize) -> usize {
        self.block_of[e]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn carrier_len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    /// Blocks rendered with element names from `poset`.
    pub fn named_blocks<'a>(&self, poset: &'a Poset) -> Vec<Vec<&'a str>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| poset.name(i)).collect())
            .collect()
    }
}

fn name_elements(poset: &Poset, message: &str) -> String {
    let mut out = message.to_owned();
    for i in (0..poset.len()).rev() {
        out = out.replace(&format!("#{i}"), &format!("`{}`", poset.name(i)));
    }
    out
}

/// A reflexive relation on the blocks of a partition.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockRelation {
    size: usize,
    rel: Vec<bool>,
}

impl BlockRelation {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.rel[i * self.size + j]
    }

    pub fn is_transitive(&self) -> bool {
        let mut closed = self.rel.clone();
        close_transitively(&mut closed, self.size);
        closed == self.rel
    }

    pub fn is_antisymmetric(&self) -> bool {
        antisymmetry_violation(&self.rel, self.size).is_none()
    }

    pub fn transitive_closure(&self) -> BlockRelation {
        let mut rel = self.rel.clone();
        close_transitively(&mut rel, self.size);
        BlockRelation { size: self.size, rel }
    }

    pub fn matrix(&self) -> &[bool] {
        &self.rel
    }
}

impl fmt::Debug for BlockRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(usize, usize)> = (0..self.size)
            .flat_map(|i| (0..self.size).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.le(i, j))
            .collect();
        f.debug_struct("BlockRelation")
            .field("size", &self.size)
            .field("strict", &pairs)
            .finish()
    }
}

fn check_carrier(poset: &Poset, theta: &Equivalence) -> Result<()> {
    if theta.carrier_len() != poset.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} elements, poset has {}",
            theta.carrier_len(),
            poset.len()
        )));
    }
    Ok(())
}

/// `[p] ≤_θ [q] ⟺ ∃ p' ∈ [p], q' ∈ [q] with p' ≤ q'`, without closure.
pub fn quotient_preorder(poset: &Poset, theta: &Equivalence) -> Result<BlockRelation> {
    check_carrier(poset, theta)?;
    let k = theta.num_blocks();
    let mut rel = vec![false; k * k];
    for i in 0..k {
        rel[i * k + i] = true;
    }
    for p in 0..poset.len() {
        for q in 0..poset.len() {
            if poset.le(p, q) {
                rel[theta.block_of(p) * k + theta.block_of(q)] = true;
            }
        }
    }
    Ok(BlockRelation { size: k, rel })
}

/// A pair of distinct blocks that end up below each other once `≤_θ` is
/// closed, or `None` if `θ` is a compatible congruence.
pub fn incompatibility_witness(poset: &Poset, theta: &Equivalence) -> Result<Option<(usize, usize)>> {
    let closed = quotient_preorder(poset, theta)?.transitive_closure();
    Ok(antisymmetry_violation(&closed.rel, closed.size))
}

pub fn is_compatible(poset: &Poset, theta: &Equivalence) -> Result<bool> {
    Ok(incompatibility_witness(poset, theta)?.is_none())
}

/// Name of a quotient gate: member names joined with `+`.
pub fn block_name(poset: &Poset, block: &[usize]) -> String {
    block
        .iter()
        .map(|&i| poset.name(i))
        .collect::<Vec<_>>()
        .join("+")
}

/// `P/θ` ordered by the closure of `≤_θ`.
pub fn quotient_poset(poset: &Poset, theta: &Equivalence) -> Result<Poset> {
    let pre = quotient_preorder(poset, theta)?;
    let closed = pre.transitive_closure();
    let names: Vec<String> = theta.blocks().iter().map(|b| block_name(poset, b)).collect();
    if let Some((i, j)) = antisymmetry_violation(&closed.rel, closed.size) {
        return Err(Error::NotCompatible(names[i].clone(), names[j].clone()));
    }
    Poset::from_relation(names, &closed.rel)
}

/// The circuit `(P/θ, closure of ≤_θ, π_θ ∘ λ, π_θ ∘ μ)`.
pub fn quotient_circuit(circuit: &Circuit, theta: &Equivalence) -> Result<Circuit> {
    let gates = quotient_poset(circuit.gates(), theta)?;
    let lambda = circuit.lambda_map().iter().map(|&g| theta.block_of(g)).collect();
    let mu = circuit.mu_map().iter().map(|&g| theta.block_of(g)).collect();
    circuit.rebuild(gates, lambda, mu)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Composition {
    /// The merged gates cover one another.
    Sequential,
    /// The merged gates are incomparable.
    Parallel,
}

/// One atomic quotient: two elements of the current quotient merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicStep {
    /// Atomic compatible congruence on the carrier of the current quotient.
    pub equivalence: Equivalence,
    /// Positions of the merged pair in the current quotient.
    pub pair: (usize, usize),
    /// Names of the merged pair in the current quotient.
    pub names: (String, String),
    pub kind: Composition,
}

/// Splits the quotient by a compatible `θ` into quotients by atomic
/// compatible congruences. Yields exactly `|P| - (number of blocks)` steps.
///
/// At each stage the first pair (in canonical order) of current elements that
/// lie in the same `θ`-block and are either a cover pair or incomparable is
/// merged.
pub fn atomic_decomposition(poset: &Poset, theta: &Equivalence) -> Result<Vec<AtomicStep>> {
    if let Some((i, j)) = incompatibility_witness(poset, theta)? {
        return Err(Error::NotCompatible(
            block_name(poset, &theta.blocks()[i]),
            block_name(poset, &theta.blocks()[j]),
        ));
    }
    let mut current = poset.clone();
    // a representative original element for each current element
    let mut rep: Vec<usize> = (0..poset.len()).collect();
    let mut steps = Vec::new();
    while current.len() > theta.num_blocks() {
        let step = next_atomic_step(&current, &rep, theta)?.ok_or_else(|| {
            Error::Internal("no atomic merge found for a compatible congruence".into())
        })?;
        let next = quotient_poset(&current, &step.equivalence)?;
        rep = step
            .equivalence
            .blocks()
            .iter()
            .map(|b| rep[b[0]])
            .collect();
        current = next;
        steps.push(step);
    }
    Ok(steps)
}

fn next_atomic_step(current: &Poset, rep: &[usize], theta: &Equivalence) -> Result<Option<AtomicStep>> {
    let n = current.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if !theta.same_block(rep[i], rep[j]) {
                continue;
            }
            let kind = if current.is_covered_by(i, j) || current.is_covered_by(j, i) {
                Composition::Sequential
            } else if current.incomparable(i, j) {
                Composition::Parallel
            } else {
                continue;
            };
            let equivalence = Equivalence::merging(n, &[i, j])?;
            if !is_compatible(current, &equivalence)? {
                continue;
            }
            return Ok(Some(AtomicStep {
                equivalence,
                pair: (i, j),
                names: (current.name(i).to_owned(), current.name(j).to_owned()),
                kind,
            }));
        }
    }
    Ok(None)
}

/// Applies atomic steps one after another, returning the final quotient.
pub fn apply_steps(circuit: &Circuit, steps: &[AtomicStep]) -> Result<Circuit> {
    let mut current = circuit.clone();
    for step in steps {
        current = quotient_circuit(&current, &step.equivalence)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        Poset::from_generators(&["p", "q", "r"], &[("p", "q"), ("q", "r")]).unwrap()
    }

    fn two_chains() -> Poset {
        Poset::from_generators(&["p", "r", "s", "q"], &[("p", "r"), ("s", "q")]).unwrap()
    }

    fn bipartite() -> Poset {
        Poset::from_generators(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(matches!(
            Equivalence::from_blocks(3, vec![vec![0, 1]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Equivalence::from_blocks(2, vec![vec![0, 1], vec![1]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Equivalence::from_blocks(2, vec![vec![0, 1], vec![]]),
            Err(Error::InvalidPartition(_))
        ));
        let e = Equivalence::from_blocks(3, vec![vec![2], vec![1, 0]]).unwrap();
        assert_eq!(e.blocks(), &[vec![0, 1], vec![2]]);
        let err = Equivalence::from_named_blocks(&chain3(), &[vec!["p"], vec!["q"]]).unwrap_err();
        assert_eq!(err, Error::InvalidPartition("element `r` is in no block".into()));
    }

    #[test]
    fn from_labels_groups_fibres() {
        let e = Equivalence::from_labels(&['x', 'y', 'x', 'z']);
        assert_eq!(e.blocks(), &[vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn chain_with_ends_merged_is_not_antisymmetric() {
        let p = chain3();
        let theta = Equivalence::from_named_blocks(&p, &[vec!["p", "r"], vec!["q"]]).unwrap();
        let pre = quotient_preorder(&p, &theta).unwrap();
        // blocks: {p,r} = 0, {q} = 1
        assert!(pre.le(0, 1) && pre.le(1, 0));
        assert!(!pre.is_antisymmetric());
        assert!(!is_compatible(&p, &theta).unwrap());
        assert_eq!(
            quotient_poset(&p, &theta).unwrap_err(),
            Error::NotCompatible("p+r".into(), "q".into())
        );
    }

    #[test]
    fn discrete_quotient_is_identity() {
        let p = two_chains();
        let pre = quotient_preorder(&p, &Equivalence::discrete(4)).unwrap();
        assert_eq!(pre.matrix(), p.matrix());
    }

    #[test]
    fn two_chains_merge_is_not_transitive_before_closure() {
        let p = two_chains();
        let theta = Equivalence::from_named_blocks(&p, &[vec!["p"], vec!["r", "s"], vec!["q"]]).unwrap();
        let pre = quotient_preorder(&p, &theta).unwrap();
        // blocks: {p}=0, {r,s}=1, {q}=2
        assert!(pre.le(0, 1) && pre.le(1, 2));
        assert!(!pre.le(0, 2));
        assert!(!pre.is_transitive());
        let q = quotient_poset(&p, &theta).unwrap();
        assert_eq!(q.elements(), &["p", "r+s", "q"]);
        assert_eq!(q.cover_names(), vec![("p", "r+s"), ("r+s", "q")]);
    }

    #[test]
    fn convex_blocks_but_incompatible() {
        let p = bipartite();
        let theta = Equivalence::from_named_blocks(&p, &[vec!["a", "d"], vec!["b", "c"]]).unwrap();
        for block in theta.blocks() {
            assert!(p.is_convex(block));
        }
        assert!(!is_compatible(&p, &theta).unwrap());
    }

    #[test]
    fn convex_subsets_give_compatible_congruences() {
        let p = bipartite();
        let n = p.len();
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if p.is_convex(&subset) {
                let theta = Equivalence::merging(n, &subset).unwrap();
                assert!(is_compatible(&p, &theta).unwrap(), "{subset:?}");
            }
        }
    }

    #[test]
    fn atomic_decomposition_of_chain_block() {
        let p = chain3();
        let theta = Equivalence::from_blocks(3, vec![vec![0, 1, 2]]).unwrap();
        let steps = atomic_decomposition(&p, &theta).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(steps.iter().all(|s| s.kind == Composition::Sequential));
        assert!(atomic_decomposition(&p, &Equivalence::discrete(3)).unwrap().is_empty());
    }

    #[test]
    fn atomic_decomposition_rejects_incompatible() {
        let p = bipartite();
        let theta = Equivalence::from_named_blocks(&p, &[vec!["a", "d"], vec!["b", "c"]]).unwrap();
        assert!(matches!(
            atomic_decomposition(&p, &theta),
            Err(Error::NotCompatible(_, _))
        ));
    }

    #[test]
    fn wrong_carrier_size() {
        assert!(matches!(
            quotient_preorder(&chain3(), &Equivalence::discrete(2)),
            Err(Error::InvalidPartition(_))
        ));
    }
}
