//! Random and exhaustive generation of posets, relations, circuits and
//! morphisms. Gates are named `g0, g1, ...`, inputs `a1, a2, ...` and
//! outputs `b1, b2, ...`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::Circuit;
use crate::congruence::Equivalence;
use crate::galois::{basic_circuit, concept_lattice};
use crate::morphism::Morphism;
use crate::order::Poset;
use crate::relation::Relation;

pub fn gate_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("g{i}")).collect()
}

pub fn input_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("a{i}")).collect()
}

pub fn output_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("b{i}")).collect()
}

/// A random poset on `n` elements: each pair `i < j` of a hidden linear
/// order is a generator with probability `density`, and the labels are
/// shuffled so the index order is not always a linear extension.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    Poset::from_index_generators(gate_names(n), &pairs).expect("generators follow a linear order")
}

pub fn random_relation<R: Rng + ?Sized>(rng: &mut R, n_in: usize, n_out: usize, density: f64) -> Relation {
    let related = (0..n_in * n_out).map(|_| rng.gen_bool(density)).collect();
    Relation::from_matrix(input_names(n_in), output_names(n_out), related).expect("names are distinct")
}

/// A random circuit over the given poset with uniformly placed boundary.
pub fn random_circuit_on<R: Rng + ?Sized>(rng: &mut R, gates: Poset, inputs: Vec<String>, outputs: Vec<String>) -> Circuit {
    assert!(!gates.is_empty() || (inputs.is_empty() && outputs.is_empty()));
    let n = gates.len();
    let lambda = (0..inputs.len()).map(|_| rng.gen_range(0..n)).collect();
    let mu = (0..outputs.len()).map(|_| rng.gen_range(0..n)).collect();
    Circuit::new(gates, inputs, outputs, lambda, mu).expect("valid random circuit")
}

/// A random circuit with `n_gates >= 1` gates.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, n_gates: usize, n_in: usize, n_out: usize, density: f64) -> Circuit {
    let gates = random_poset(rng, n_gates, density);
    random_circuit_on(rng, gates, input_names(n_in), output_names(n_out))
}

/// A random valid morphism. The source, the map and the source order are
/// drawn first (only pairs whose images are ordered in the target are
/// used as generators); the target boundary is then placed below
/// `f(λ_P(a))` and above `f(μ_P(b))`, so every clause holds.
pub fn random_morphism<R: Rng + ?Sized>(
    rng: &mut R,
    source_gates: usize,
    target_gates: usize,
    n_in: usize,
    n_out: usize,
) -> Morphism {
    assert!(source_gates > 0 && target_gates > 0);
    let q_density = rng.gen_range(0.2..0.7);
    let q_order = random_poset(rng, target_gates, q_density);
    // bias towards non-injective maps now and then
    let range = if rng.gen_bool(0.3) {
        rng.gen_range(1..=target_gates)
    } else {
        target_gates
    };
    let map: Vec<usize> = (0..source_gates).map(|_| rng.gen_range(0..range)).collect();
    let mut perm: Vec<usize> = (0..source_gates).collect();
    perm.shuffle(rng);
    let density = rng.gen_range(0.2..0.8);
    let mut pairs = Vec::new();
    for i in 0..source_gates {
        for j in i + 1..source_gates {
            let (x, y) = (perm[i], perm[j]);
            if q_order.le(map[x], map[y]) && rng.gen_bool(density) {
                pairs.push((x, y));
            }
        }
    }
    let p_order = Poset::from_index_generators(gate_names(source_gates), &pairs).expect("acyclic");
    let source = random_circuit_on(rng, p_order, input_names(n_in), output_names(n_out));
    let pick = |rng: &mut R, options: Vec<usize>| *options.choose(rng).expect("reflexive order");
    let lambda = (0..n_in)
        .map(|a| {
            let top = map[source.lambda(a)];
            pick(rng, (0..target_gates).filter(|&q| q_order.le(q, top)).collect())
        })
        .collect();
    let mu = (0..n_out)
        .map(|b| {
            let bottom = map[source.mu(b)];
            pick(rng, (0..target_gates).filter(|&q| q_order.le(bottom, q)).collect())
        })
        .collect();
    let target = Circuit::new(q_order, input_names(n_in), output_names(n_out), lambda, mu).expect("valid target");
    let f = Morphism::new(source, target, map).expect("aligned boundary");
    debug_assert!(f.is_valid());
    f
}

/// A random circuit whose connectivity is exactly `g`. Starts from the
/// basic circuit or the concept lattice and adds up to `extra` gates with
/// random order relations, keeping an attempt only if the connectivity is
/// unchanged. Falls back to adding the gates isolated.
pub fn circuit_with_connectivity<R: Rng + ?Sized>(rng: &mut R, g: &Relation, extra: usize) -> Circuit {
    let base = if rng.gen_bool(0.5) {
        basic_circuit(g)
    } else {
        concept_lattice(g)
    };
    let n = base.len();
    let total = n + extra;
    let names: Vec<String> = base
        .gates()
        .elements()
        .iter()
        .cloned()
        .chain((0..extra).map(|i| format!("x{i}")))
        .collect();
    let base_pairs = base.gates().covers();
    for _ in 0..50 {
        let mut pairs = base_pairs.clone();
        for new in n..total {
            for other in 0..new {
                if rng.gen_bool(0.25) {
                    pairs.push(if rng.gen_bool(0.5) { (new, other) } else { (other, new) });
                }
            }
        }
        let Ok(order) = Poset::from_index_generators(names.clone(), &pairs) else {
            continue;
        };
        let mut lambda = base.lambda_map().to_vec();
        let mut mu = base.mu_map().to_vec();
        // occasionally relocate a boundary point onto a new gate
        if extra > 0 {
            for x in lambda.iter_mut().chain(mu.iter_mut()) {
                if rng.gen_bool(0.2) {
                    *x = rng.gen_range(n..total);
                }
            }
        }
        let candidate = Circuit::new(order, g.inputs().to_vec(), g.outputs().to_vec(), lambda, mu)
            .expect("valid circuit");
        if candidate.connectivity().same_pairs(g).expect("same boundary") {
            return candidate;
        }
    }
    let order = Poset::from_index_generators(names, &base_pairs).expect("base order");
    Circuit::new(
        order,
        g.inputs().to_vec(),
        g.outputs().to_vec(),
        base.lambda_map().to_vec(),
        base.mu_map().to_vec(),
    )
    .expect("valid circuit")
}

/// Every relation between `a1..a{n_in}` and `b1..b{n_out}`.
pub fn all_relations(n_in: usize, n_out: usize) -> impl Iterator<Item = Relation> {
    let cells = n_in * n_out;
    assert!(cells < 32, "too many relations to enumerate");
    (0u32..1 << cells).map(move |bits| {
        let related = (0..cells).map(|k| bits >> k & 1 == 1).collect();
        Relation::from_matrix(input_names(n_in), output_names(n_out), related).expect("names are distinct")
    })
}

/// Every partial order on `0..n` for which the index order is a linear
/// extension. Every finite poset is isomorphic to one of these.
pub fn naturally_labelled_posets(n: usize) -> Vec<Poset> {
    // each entry lists, for every element, the set of elements below it
    let mut partial: Vec<Vec<u32>> = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for downs in &partial {
            for ideal in 0u32..1 << k {
                let closed = (0..k).all(|i| ideal >> i & 1 == 0 || downs[i] & !ideal == 0);
                if closed {
                    let mut d = downs.clone();
                    d.push(ideal);
                    next.push(d);
                }
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|downs| {
            let mut rel = vec![false; n * n];
            for j in 0..n {
                rel[j * n + j] = true;
                for i in 0..j {
                    rel[i * n + j] = downs[j] >> i & 1 == 1;
                }
            }
            Poset::from_relation(gate_names(n), &rel).expect("down-sets give a partial order")
        })
        .collect()
}

/// Every partition of `0..n`, via restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Equivalence> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn go(k: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Equivalence>) {
        if k == labels.len() {
            out.push(Equivalence::from_labels(labels));
            return;
        }
        for l in 0..=max {
            labels[k] = l;
            go(k + 1, max.max(l + 1), labels, out);
        }
    }
    if n == 0 {
        out.push(Equivalence::discrete(0));
    } else {
        go(1, 1, &mut labels, &mut out);
    }
    out
}
