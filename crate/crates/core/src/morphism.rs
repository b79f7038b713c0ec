//! Circuit morphisms.
//!
//! A map `f: P → Q` between circuits over the same inputs and outputs is a
//! morphism when it preserves order, moves every input's gate up
//! (`λ_Q(a) ≤ f(λ_P(a))`) and every output's gate down
//! (`f(μ_P(b)) ≤ μ_Q(b)`).

use std::collections::BTreeSet;
use std::fmt;

use crate::circuit::Circuit;
use crate::congruence::{quotient_circuit, Equivalence};
use crate::error::{Error, Result};
use crate::order::Poset;
use crate::relation::align_names;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Circuit,
    target: Circuit,
    map: Vec<usize>,
    // position of each source input/output in the target's boundary
    input_align: Vec<usize>,
    output_align: Vec<usize>,
}

/// The first clause of the morphism definition that a map violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `lower ≤ upper` in the source but the images are not ordered.
    Order { lower: String, upper: String },
    /// `λ_Q(a) ≰ f(λ_P(a))`.
    Inputs { input: String },
    /// `f(μ_P(b)) ≰ μ_Q(b)`.
    Outputs { output: String },
}

impl Violation {
    pub fn clause(&self) -> &'static str {
        match self {
            Violation::Order { .. } => "order",
            Violation::Inputs { .. } => "inputs",
            Violation::Outputs { .. } => "outputs",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Order { lower, upper } => {
                write!(f, "order: {lower} <= {upper} but their images are not ordered")
            }
            Violation::Inputs { input } => {
                write!(f, "inputs: input {input} is not at or below the image of its gate")
            }
            Violation::Outputs { output } => {
                write!(f, "outputs: image of the gate of output {output} is not at or below its target gate")
            }
        }
    }
}

pub(crate) struct Alignment {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
}

pub(crate) fn align(source: &Circuit, target: &Circuit) -> Result<Alignment> {
    Ok(Alignment {
        inputs: align_names(source.inputs(), target.inputs(), "input")?,
        outputs: align_names(source.outputs(), target.outputs(), "output")?,
    })
}

impl Morphism {
    pub fn new(source: Circuit, target: Circuit, map: Vec<usize>) -> Result<Self> {
        let Alignment { inputs, outputs } = align(&source, &target)?;
        if map.len() != source.len() {
            return Err(Error::NotAMorphism(format!(
                "map has {} entries for {} source gates",
                map.len(),
                source.len()
            )));
        }
        if let Some(&q) = map.iter().find(|&&q| q >= target.len()) {
            return Err(Error::UnknownElement(format!("target gate #{q}")));
        }
        Ok(Self {
            source,
            target,
            map,
            input_align: inputs,
            output_align: outputs,
        })
    }

    /// Builds a morphism from `(source gate, target gate)` name pairs; every
    /// source gate must appear exactly once.
    pub fn from_names<S: AsRef<str>>(source: Circuit, target: Circuit, pairs: &[(S, S)]) -> Result<Self> {
        let mut map = vec![None; source.len()];
        for (p, q) in pairs {
            let pi = source.gate_index(p.as_ref())?;
            let qi = target.gate_index(q.as_ref())?;
            if map[pi].replace(qi).is_some() {
                return Err(Error::DuplicateIdentifier(p.as_ref().to_owned()));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, q)| {
                q.ok_or_else(|| {
                    Error::NotAMorphism(format!("gate `{}` has no image", source.gate_name(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, map)
    }

    pub fn identity(circuit: &Circuit) -> Self {
        Self::new(circuit.clone(), circuit.clone(), (0..circuit.len()).collect())
            .expect("identity is well-formed")
    }

    pub fn source(&self) -> &Circuit {
        &self.source
    }

    pub fn target(&self) -> &Circuit {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, p: usize) -> usize {
        self.map[p]
    }

    /// `(source gate, image)` names in source canonical order.
    pub fn named_pairs(&self) -> Vec<(&str, &str)> {
        self.map
            .iter()
            .enumerate()
            .map(|(p, &q)| (self.source.gate_name(p), self.target.gate_name(q)))
            .collect()
    }

    /// The target input position of the source input `a`.
    pub fn target_input(&self, a: usize) -> usize {
        self.input_align[a]
    }

    pub fn target_output(&self, b: usize) -> usize {
        self.output_align[b]
    }

    /// `None` if the map is a circuit morphism; otherwise the first violated
    /// clause (order, then inputs, then outputs) with a witness.
    pub fn violation(&self) -> Option<Violation> {
        let (sp, tp) = (self.source.gates(), self.target.gates());
        for p in 0..sp.len() {
            for q in 0..sp.len() {
                if sp.le(p, q) && !tp.le(self.map[p], self.map[q]) {
                    return Some(Violation::Order {
                        lower: sp.name(p).to_owned(),
                        upper: sp.name(q).to_owned(),
                    });
                }
            }
        }
        for a in 0..self.source.inputs().len() {
            let image = self.map[self.source.lambda(a)];
            if !tp.le(self.target.lambda(self.input_align[a]), image) {
                return Some(Violation::Inputs {
                    input: self.source.inputs()[a].clone(),
                });
            }
        }
        for b in 0..self.source.outputs().len() {
            let image = self.map[self.source.mu(b)];
            if !tp.le(image, self.target.mu(self.output_align[b])) {
                return Some(Violation::Outputs {
                    output: self.source.outputs()[b].clone(),
                });
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    fn require_valid(&self) -> Result<()> {
        match self.violation() {
            None => Ok(()),
            Some(v) => Err(Error::NotAMorphism(v.to_string())),
        }
    }

    /// Order embedding: `f(p) ≤ f(p') ⟹ p ≤ p'`.
    pub fn is_embedding(&self) -> Result<bool> {
        self.require_valid()?;
        Ok(self.reflects_order())
    }

    fn reflects_order(&self) -> bool {
        let (sp, tp) = (self.source.gates(), self.target.gates());
        (0..sp.len()).all(|p| {
            (0..sp.len()).all(|q| !tp.le(self.map[p], self.map[q]) || sp.le(p, q))
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&q| !std::mem::replace(&mut seen[q], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &q in &self.map {
            hit[q] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    /// The fibres of the map, as a partition of the source gates.
    pub fn kernel(&self) -> Equivalence {
        Equivalence::from_labels(&self.map)
    }

    /// The inverse map of a bijection, as a map `target → source`. Its
    /// validity as a morphism is not implied.
    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (p, &q) in self.map.iter().enumerate() {
            inv[q] = p;
        }
        Some(Morphism::new(self.target.clone(), self.source.clone(), inv).expect("same boundary"))
    }

    /// Bijective morphism whose inverse is a morphism.
    pub fn is_isomorphism(&self) -> bool {
        self.is_valid() && self.inverse().is_some_and(|inv| inv.is_valid())
    }

    /// `then ∘ self`. The target of `self` must equal the source of `then`.
    pub fn compose(&self, then: &Morphism) -> Result<Morphism> {
        if self.target != then.source {
            return Err(Error::BoundaryMismatch(
                "composed morphisms do not meet at the same circuit".into(),
            ));
        }
        let map = self.map.iter().map(|&q| then.map[q]).collect();
        Morphism::new(self.source.clone(), then.target.clone(), map)
    }

    /// The quotient map `π_θ: C → C/θ`.
    pub fn quotient(circuit: &Circuit, theta: &Equivalence) -> Result<Morphism> {
        let target = quotient_circuit(circuit, theta)?;
        let map = (0..circuit.len()).map(|p| theta.block_of(p)).collect();
        Morphism::new(circuit.clone(), target, map)
    }

    /// Checks that the boundary maps are carried over exactly:
    /// `λ_Q = f ∘ λ_P` and `μ_Q = f ∘ μ_P`.
    fn transports_boundary(&self) -> bool {
        (0..self.source.inputs().len())
            .all(|a| self.map[self.source.lambda(a)] == self.target.lambda(self.input_align[a]))
            && (0..self.source.outputs().len())
                .all(|b| self.map[self.source.mu(b)] == self.target.mu(self.output_align[b]))
    }
}

/// Elementary rewrite types a morphism can have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementaryKind {
    Quotient,
    AddsIsolatedGates,
    AddsWires,
    AdvancesDelays,
    Embedding,
    Isomorphism,
}

impl ElementaryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ElementaryKind::Quotient => "quotient",
            ElementaryKind::AddsIsolatedGates => "adds-isolated-gates",
            ElementaryKind::AddsWires => "adds-wires",
            ElementaryKind::AdvancesDelays => "advances-delays",
            ElementaryKind::Embedding => "embedding",
            ElementaryKind::Isomorphism => "isomorphism",
        }
    }
}

impl fmt::Display for ElementaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub flags: BTreeSet<ElementaryKind>,
    /// Gate renaming under which the matched definitions hold literally.
    /// For quotients this sends each block of the kernel (named as in
    /// [`quotient_circuit`]) to its image; otherwise it is the map itself.
    pub renaming: Vec<(String, String)>,
}

impl Classification {
    pub fn has(&self, kind: ElementaryKind) -> bool {
        self.flags.contains(&kind)
    }
}

/// Matches `f` against each elementary morphism type, up to renaming gates.
///
/// * quotient: surjective, boundary maps carried over exactly, and the target
///   order is the closure of the image of the source order (so `[p] ↦ f(p)`
///   is an isomorphism from `P/ker f`);
/// * adds isolated gates: an order embedding carrying the boundary over
///   exactly, with every gate outside the image incomparable to all others;
/// * adds wires: a bijection carrying the boundary over exactly (the order
///   may only grow, which any morphism guarantees);
/// * advances inputs and delays outputs: a bijective order isomorphism.
pub fn classify_elementary(f: &Morphism) -> Result<Classification> {
    f.require_valid()?;
    let mut flags = BTreeSet::new();
    let reflects = f.reflects_order();
    let transports = f.transports_boundary();
    let bijective = f.is_bijective();

    if reflects {
        flags.insert(ElementaryKind::Embedding);
    }
    if f.is_isomorphism() {
        flags.insert(ElementaryKind::Isomorphism);
    }
    let is_quotient = f.is_surjective() && transports && image_order_generates_target(f);
    if is_quotient {
        flags.insert(ElementaryKind::Quotient);
    }
    if f.is_injective() && reflects && transports && outside_image_isolated(f) {
        flags.insert(ElementaryKind::AddsIsolatedGates);
    }
    if bijective && transports {
        flags.insert(ElementaryKind::AddsWires);
    }
    if bijective && reflects {
        flags.insert(ElementaryKind::AdvancesDelays);
    }

    let renaming = if is_quotient {
        let kernel = f.kernel();
        kernel
            .blocks()
            .iter()
            .map(|b| {
                (
                    crate::congruence::block_name(f.source.gates(), b),
                    f.target.gate_name(f.map[b[0]]).to_owned(),
                )
            })
            .collect()
    } else {
        f.named_pairs()
            .into_iter()
            .map(|(p, q)| (p.to_owned(), q.to_owned()))
            .collect()
    };
    Ok(Classification { flags, renaming })
}

fn image_order_generates_target(f: &Morphism) -> bool {
    let (sp, tp) = (f.source.gates(), f.target.gates());
    let n = tp.len();
    let mut rel = vec![false; n * n];
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for p in 0..sp.len() {
        for q in 0..sp.len() {
            if sp.le(p, q) {
                rel[f.map[p] * n + f.map[q]] = true;
            }
        }
    }
    crate::order::close_transitively(&mut rel, n);
    rel == tp.matrix()
}

fn outside_image_isolated(f: &Morphism) -> bool {
    let tp = f.target.gates();
    let mut in_image = vec![false; tp.len()];
    for &q in &f.map {
        in_image[q] = true;
    }
    (0..tp.len())
        .filter(|&s| !in_image[s])
        .all(|s| (0..tp.len()).all(|q| q == s || tp.incomparable(s, q)))
}

/// The disjoint union `P ⊔ S` with the added gates discretely ordered and
/// incomparable to everything else.
pub fn add_isolated_gates(circuit: &Circuit, extra: &[String]) -> Result<Circuit> {
    let n = circuit.len();
    let mut names: Vec<String> = circuit.gates().elements().to_vec();
    names.extend(extra.iter().cloned());
    let pairs = circuit.gates().strict_pairs();
    let gates = Poset::from_index_generators(names, &pairs)?;
    debug_assert!(gates.len() == n + extra.len());
    circuit.rebuild(gates, circuit.lambda_map().to_vec(), circuit.mu_map().to_vec())
}
