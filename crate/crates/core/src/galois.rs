//! The Galois connection of a relation and the two canonical circuits with a
//! given connectivity.
//!
//! For `G ⊆ A × B`, common children `𝔠(α) = {b : ∀a∈α, aGb}` and common
//! parents `𝔭(β) = {a : ∀b∈β, aGb}` form an antitone Galois connection; `𝔭𝔠`
//! and `𝔠𝔭` are closure operators. The concept lattice `L_G` is the greatest
//! circuit with connectivity `G` (every circuit with connectivity inside `G`
//! maps into it), and the basic circuit `⌊G⌋` is the least one (it maps into
//! every circuit whose connectivity contains `G`).

use std::collections::BTreeSet;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::order::Poset;
use crate::relation::{align_names, Relation};
use crate::search::{find_isomorphism, find_morphism_with_budget, DEFAULT_BUDGET};

pub type Subset = BTreeSet<usize>;

impl Relation {
    /// `𝔠(α)`: outputs related to every input in `alpha`. `𝔠(∅) = B`.
    pub fn common_children(&self, alpha: &Subset) -> Subset {
        (0..self.outputs().len())
            .filter(|&b| alpha.iter().all(|&a| self.related(a, b)))
            .collect()
    }

    /// `𝔭(β)`: inputs related to every output in `beta`. `𝔭(∅) = A`.
    pub fn common_parents(&self, beta: &Subset) -> Subset {
        (0..self.inputs().len())
            .filter(|&a| beta.iter().all(|&b| self.related(a, b)))
            .collect()
    }

    pub fn common_children_named<S: AsRef<str>>(&self, alpha: &[S]) -> Result<Vec<&str>> {
        let set = self.common_children(&self.input_set(alpha)?);
        Ok(set.into_iter().map(|b| self.outputs()[b].as_str()).collect())
    }

    pub fn common_parents_named<S: AsRef<str>>(&self, beta: &[S]) -> Result<Vec<&str>> {
        let set = self.common_parents(&self.output_set(beta)?);
        Ok(set.into_iter().map(|a| self.inputs()[a].as_str()).collect())
    }

    /// `𝔭𝔠(α)`.
    pub fn closure_inputs(&self, alpha: &Subset) -> Subset {
        self.common_parents(&self.common_children(alpha))
    }

    /// `𝔠𝔭(β)`.
    pub fn closure_outputs(&self, beta: &Subset) -> Subset {
        self.common_children(&self.common_parents(beta))
    }

    pub fn is_closed_inputs(&self, alpha: &Subset) -> bool {
        self.closure_inputs(alpha) == *alpha
    }

    pub fn is_closed_outputs(&self, beta: &Subset) -> bool {
        self.closure_outputs(beta) == *beta
    }

    pub fn closure_inputs_named<S: AsRef<str>>(&self, alpha: &[S]) -> Result<Vec<&str>> {
        let set = self.closure_inputs(&self.input_set(alpha)?);
        Ok(set.into_iter().map(|a| self.inputs()[a].as_str()).collect())
    }

    pub fn closure_outputs_named<S: AsRef<str>>(&self, beta: &[S]) -> Result<Vec<&str>> {
        let set = self.closure_outputs(&self.output_set(beta)?);
        Ok(set.into_iter().map(|b| self.outputs()[b].as_str()).collect())
    }

    pub fn is_closed_inputs_named<S: AsRef<str>>(&self, alpha: &[S]) -> Result<bool> {
        Ok(self.is_closed_inputs(&self.input_set(alpha)?))
    }

    pub fn is_closed_outputs_named<S: AsRef<str>>(&self, beta: &[S]) -> Result<bool> {
        Ok(self.is_closed_outputs(&self.output_set(beta)?))
    }

    /// All `𝔭𝔠`-closed subsets of `A`: `A` itself together with every
    /// intersection of parent sets `G⁻¹(b)`. Ordered by size, then
    /// lexicographically. There are at most `2^min(|A|,|B|)` of them.
    pub fn closed_input_sets(&self) -> Vec<Subset> {
        let all: Subset = (0..self.inputs().len()).collect();
        let generators: Vec<Subset> = (0..self.outputs().len()).map(|b| self.parents(b)).collect();
        canonical(intersection_closure(all, &generators))
    }

    /// All `𝔠𝔭`-closed subsets of `B`, ordered like [`Relation::closed_input_sets`].
    pub fn closed_output_sets(&self) -> Vec<Subset> {
        let all: Subset = (0..self.outputs().len()).collect();
        let generators: Vec<Subset> = (0..self.inputs().len()).map(|a| self.children(a)).collect();
        canonical(intersection_closure(all, &generators))
    }
}

fn intersection_closure(top: Subset, generators: &[Subset]) -> BTreeSet<Subset> {
    let mut family = BTreeSet::from([top]);
    for g in generators {
        let new: Vec<Subset> = family.iter().map(|s| s.intersection(g).copied().collect()).collect();
        family.extend(new);
    }
    family
}

fn canonical(family: BTreeSet<Subset>) -> Vec<Subset> {
    let mut sets: Vec<Subset> = family.into_iter().collect();
    sets.sort_by(|x, y| {
        x.len()
            .cmp(&y.len())
            .then_with(|| x.iter().cmp(y.iter()))
    });
    sets
}

/// A formal concept `⟨α, β⟩` with `α = 𝔭(β)` and `β = 𝔠(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: Subset,
    pub intent: Subset,
}

/// The concepts of `g`, one per closed input set, in canonical order.
pub fn concepts(g: &Relation) -> Vec<Concept> {
    g.closed_input_sets()
        .into_iter()
        .map(|extent| {
            let intent = g.common_children(&extent);
            Concept { extent, intent }
        })
        .collect()
}

/// Gate name of a concept: `c{...}` listing its extent in input order.
pub fn concept_name(g: &Relation, concept: &Concept) -> String {
    let members: Vec<&str> = concept.extent.iter().map(|&a| g.inputs()[a].as_str()).collect();
    format!("c{{{}}}", members.join(","))
}

/// The concept lattice `L_G` as a circuit: concepts ordered by extent
/// inclusion, `λ(a) = ⟨𝔭𝔠{a}, 𝔠{a}⟩` and `μ(b) = ⟨𝔭{b}, 𝔠𝔭{b}⟩`. Gate `i`
/// is `concepts(g)[i]`.
pub fn concept_lattice(g: &Relation) -> Circuit {
    let cs = concepts(g);
    let n = cs.len();
    let names: Vec<String> = cs.iter().map(|c| concept_name(g, c)).collect();
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            rel[i * n + j] = cs[i].extent.is_subset(&cs[j].extent);
        }
    }
    let gates = Poset::from_relation(names, &rel).expect("inclusion is a partial order");
    let find = |extent: &Subset| {
        cs.iter()
            .position(|c| c.extent == *extent)
            .expect("closed sets are concepts")
    };
    let lambda = (0..g.inputs().len())
        .map(|a| find(&g.closure_inputs(&BTreeSet::from([a]))))
        .collect();
    let mu = (0..g.outputs().len())
        .map(|b| find(&g.common_parents(&BTreeSet::from([b]))))
        .collect();
    Circuit::new(gates, g.inputs().to_vec(), g.outputs().to_vec(), lambda, mu)
        .expect("concept lattice is a valid circuit")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeVariant {
    /// `f(p) = ⋁ {λ_L(a) : a ∈ p⁻}`
    Join,
    /// `f(p) = ⋀ {μ_L(b) : b ∈ p⁺}`
    Meet,
}

/// The canonical morphism from `p` into a circuit `l` whose order is a
/// lattice and whose connectivity contains that of `p`.
pub fn canonical_morphism_to_lattice(p: &Circuit, l: &Circuit, variant: LatticeVariant) -> Result<Morphism> {
    let ins = align_names(p.inputs(), l.inputs(), "input")?;
    let outs = align_names(p.outputs(), l.outputs(), "output")?;
    if !matches!(l.gates().is_lattice(), Ok(true)) {
        return Err(Error::NotALattice);
    }
    if let Some((a, b)) = p.connectivity().first_missing_from(&l.connectivity())? {
        return Err(Error::ConnectivityNotContained(a, b));
    }
    let lattice = l.gates();
    let map = (0..p.len())
        .map(|gate| {
            let bound = match variant {
                LatticeVariant::Join => {
                    let xs: Vec<usize> = p.past_inputs(gate).into_iter().map(|a| l.lambda(ins[a])).collect();
                    lattice.join(&xs)
                }
                LatticeVariant::Meet => {
                    let xs: Vec<usize> = p.future_outputs(gate).into_iter().map(|b| l.mu(outs[b])).collect();
                    lattice.meet(&xs)
                }
            };
            bound.ok_or(Error::NotALattice)
        })
        .collect::<Result<Vec<_>>>()?;
    let f = Morphism::new(p.clone(), l.clone(), map)?;
    if let Some(v) = f.violation() {
        return Err(Error::Internal(format!("canonical morphism into lattice fails: {v}")));
    }
    Ok(f)
}

/// The basic circuit together with the provenance of its gates.
#[derive(Clone, Debug)]
pub struct BasicCircuit {
    pub circuit: Circuit,
    /// `(input, gate)` for each input in `Ā = {a : |G(a)| ≠ 1}`.
    pub input_gates: Vec<(usize, usize)>,
    /// `(output, gate)` for each output in `B̄`.
    pub output_gates: Vec<(usize, usize)>,
}

/// Builds `⌊G⌋`. Gates are `Ā ⊔ B̄` with
/// `Ā = {a : |G(a)| ≠ 1}` and
/// `B̄ = {b : |G⁻¹(b)| ≠ 1, or every parent of b has exactly one child}`,
/// ordered by `a < b ⟺ aGb`. Inputs outside `Ā` sit on their unique child;
/// outputs outside `B̄` sit on their unique parent.
///
/// Gates take the names of the inputs and outputs they come from; if an
/// input and an output of the basic circuit share a name, all gates are
/// prefixed with `in:` / `out:` instead.
pub fn basic_circuit_parts(g: &Relation) -> BasicCircuit {
    let (na, nb) = (g.inputs().len(), g.outputs().len());
    let child_count: Vec<usize> = (0..na).map(|a| g.children(a).len()).collect();
    let a_bar: Vec<usize> = (0..na).filter(|&a| child_count[a] != 1).collect();
    let b_bar: Vec<usize> = (0..nb)
        .filter(|&b| {
            let parents = g.parents(b);
            parents.len() != 1 || parents.iter().all(|&a| child_count[a] == 1)
        })
        .collect();

    let clash = a_bar
        .iter()
        .any(|&a| b_bar.iter().any(|&b| g.inputs()[a] == g.outputs()[b]));
    let mut names: Vec<String> = Vec::with_capacity(a_bar.len() + b_bar.len());
    for &a in &a_bar {
        let n = &g.inputs()[a];
        names.push(if clash { format!("in:{n}") } else { n.clone() });
    }
    for &b in &b_bar {
        let n = &g.outputs()[b];
        names.push(if clash { format!("out:{n}") } else { n.clone() });
    }
    let offset = a_bar.len();
    let mut pairs = Vec::new();
    for (i, &a) in a_bar.iter().enumerate() {
        for (j, &b) in b_bar.iter().enumerate() {
            if g.related(a, b) {
                pairs.push((i, offset + j));
            }
        }
    }
    let gates = Poset::from_index_generators(names, &pairs).expect("bipartite order is acyclic");

    let gate_of_input = |a: usize| a_bar.iter().position(|&x| x == a);
    let gate_of_output = |b: usize| b_bar.iter().position(|&x| x == b).map(|j| offset + j);
    let lambda = (0..na)
        .map(|a| {
            gate_of_input(a).unwrap_or_else(|| {
                let only = *g.children(a).iter().next().expect("|G(a)| = 1");
                gate_of_output(only).expect("unique child lies in B̄")
            })
        })
        .collect();
    let mu = (0..nb)
        .map(|b| {
            gate_of_output(b).unwrap_or_else(|| {
                let only = *g.parents(b).iter().next().expect("|G⁻¹(b)| = 1");
                gate_of_input(only).expect("unique parent lies in Ā")
            })
        })
        .collect();
    let circuit = Circuit::new(gates, g.inputs().to_vec(), g.outputs().to_vec(), lambda, mu)
        .expect("basic circuit is a valid circuit");
    BasicCircuit {
        circuit,
        input_gates: a_bar.iter().enumerate().map(|(i, &a)| (a, i)).collect(),
        output_gates: b_bar.iter().enumerate().map(|(j, &b)| (b, offset + j)).collect(),
    }
}

pub fn basic_circuit(g: &Relation) -> Circuit {
    basic_circuit_parts(g).circuit
}

/// The canonical morphism `⌊G⌋ → P` for a circuit whose connectivity
/// contains `G`: `a ↦ λ_P(a)` on `Ā` and `b ↦ μ_P(b)` on `B̄`.
pub fn canonical_morphism_from_basic(g: &Relation, p: &Circuit) -> Result<Morphism> {
    let basic = basic_circuit_parts(g);
    let ins = align_names(g.inputs(), p.inputs(), "input")?;
    let outs = align_names(g.outputs(), p.outputs(), "output")?;
    if let Some((a, b)) = g.first_missing_from(&p.connectivity())? {
        return Err(Error::ConnectivityNotContaining(a, b));
    }
    let mut map = vec![0; basic.circuit.len()];
    for &(a, gate) in &basic.input_gates {
        map[gate] = p.lambda(ins[a]);
    }
    for &(b, gate) in &basic.output_gates {
        map[gate] = p.mu(outs[b]);
    }
    let f = Morphism::new(basic.circuit, p.clone(), map)?;
    if let Some(v) = f.violation() {
        return Err(Error::Internal(format!("canonical morphism from basic circuit fails: {v}")));
    }
    Ok(f)
}

/// Outcome of a self-check that should always hold; `detail` explains a
/// failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub detail: Option<String>,
}

impl Verdict {
    fn ok() -> Self {
        Self {
            holds: true,
            detail: None,
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Self {
            holds: false,
            detail: Some(detail.into()),
        }
    }
}

/// The closed input sets ordered by inclusion, as a circuit with
/// `λ(a) = 𝔭𝔠{a}` and `μ(b) = 𝔭{b}`.
pub fn closed_inputs_circuit(g: &Relation) -> Circuit {
    let sets = g.closed_input_sets();
    let names: Vec<String> = sets.iter().map(|s| subset_name(g.inputs(), s)).collect();
    let lambda = (0..g.inputs().len())
        .map(|a| g.closure_inputs(&BTreeSet::from([a])))
        .collect::<Vec<_>>();
    let mu = (0..g.outputs().len())
        .map(|b| g.common_parents(&BTreeSet::from([b])))
        .collect::<Vec<_>>();
    family_circuit(g, &sets, names, |x, y| x.is_subset(y), &lambda, &mu)
}

/// The closed output sets ordered by reverse inclusion, as a circuit with
/// `λ(a) = 𝔠{a}` and `μ(b) = 𝔠𝔭{b}`.
pub fn closed_outputs_circuit(g: &Relation) -> Circuit {
    let sets = g.closed_output_sets();
    let names: Vec<String> = sets.iter().map(|s| subset_name(g.outputs(), s)).collect();
    let lambda = (0..g.inputs().len())
        .map(|a| g.common_children(&BTreeSet::from([a])))
        .collect::<Vec<_>>();
    let mu = (0..g.outputs().len())
        .map(|b| g.closure_outputs(&BTreeSet::from([b])))
        .collect::<Vec<_>>();
    family_circuit(g, &sets, names, |x, y| y.is_subset(x), &lambda, &mu)
}

fn subset_name(universe: &[String], s: &Subset) -> String {
    let members: Vec<&str> = s.iter().map(|&i| universe[i].as_str()).collect();
    format!("{{{}}}", members.join(","))
}

fn family_circuit(
    g: &Relation,
    sets: &[Subset],
    names: Vec<String>,
    le: impl Fn(&Subset, &Subset) -> bool,
    lambda: &[Subset],
    mu: &[Subset],
) -> Circuit {
    let n = sets.len();
    let mut rel = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            rel[i * n + j] = le(&sets[i], &sets[j]);
        }
    }
    let gates = Poset::from_relation(names, &rel).expect("inclusion is a partial order");
    let pos = |s: &Subset| sets.iter().position(|x| x == s).expect("closed set");
    Circuit::new(
        gates,
        g.inputs().to_vec(),
        g.outputs().to_vec(),
        lambda.iter().map(pos).collect(),
        mu.iter().map(pos).collect(),
    )
    .expect("closed-set circuit is valid")
}

/// Checks that `π_A: L_G → 𝒫ᶜ(A)` (extent), `π_B: L_G → 𝒫ᶜ(B)ᵒᵖ` (intent)
/// and `𝔠: 𝒫ᶜ(A) → 𝒫ᶜ(B)ᵒᵖ` are circuit isomorphisms and that
/// `π_B = 𝔠 ∘ π_A`.
pub fn verify_three_perspectives(g: &Relation) -> Verdict {
    let lattice = concept_lattice(g);
    let cs = concepts(g);
    let by_inputs = closed_inputs_circuit(g);
    let by_outputs = closed_outputs_circuit(g);
    let in_sets = g.closed_input_sets();
    let out_sets = g.closed_output_sets();

    let index_in = |s: &Subset| in_sets.iter().position(|x| x == s);
    let index_out = |s: &Subset| out_sets.iter().position(|x| x == s);

    let to_inputs: Option<Vec<usize>> = cs.iter().map(|c| index_in(&c.extent)).collect();
    let to_outputs: Option<Vec<usize>> = cs.iter().map(|c| index_out(&c.intent)).collect();
    let via_children: Option<Vec<usize>> = in_sets.iter().map(|s| index_out(&g.common_children(s))).collect();
    let (Some(to_inputs), Some(to_outputs), Some(via_children)) = (to_inputs, to_outputs, via_children)
    else {
        return Verdict::fail("a concept's extent or intent is not a closed set");
    };

    let checks = [
        ("extent projection", lattice.clone(), by_inputs.clone(), to_inputs.clone()),
        ("intent projection", lattice.clone(), by_outputs.clone(), to_outputs.clone()),
        ("common children", by_inputs, by_outputs, via_children.clone()),
    ];
    for (what, src, dst, map) in checks {
        match Morphism::new(src, dst, map) {
            Ok(m) if m.is_isomorphism() => {}
            Ok(_) => return Verdict::fail(format!("{what} is not a circuit isomorphism")),
            Err(e) => return Verdict::fail(format!("{what}: {e}")),
        }
    }
    for (v, &alpha) in to_inputs.iter().enumerate() {
        if via_children[alpha] != to_outputs[v] {
            return Verdict::fail(format!(
                "triangle does not commute at {}",
                concept_name(g, &cs[v])
            ));
        }
    }
    Verdict::ok()
}

/// Both sides of `G_P = G ⟺ ⌊G⌋ ⪯ P ⪯ L_G` for one circuit.
#[derive(Clone, Debug)]
pub struct SandwichReport {
    pub connectivity_matches: bool,
    /// A morphism `⌊G⌋ → P`, if one exists.
    pub from_basic: Option<Morphism>,
    /// A morphism `P → L_G`, if one exists.
    pub to_lattice: Option<Morphism>,
}

impl SandwichReport {
    pub fn in_interval(&self) -> bool {
        self.from_basic.is_some() && self.to_lattice.is_some()
    }

    /// Whether the biconditional holds for this instance.
    pub fn holds(&self) -> bool {
        self.connectivity_matches == self.in_interval()
    }
}

pub fn verify_sandwich(g: &Relation, p: &Circuit) -> Result<SandwichReport> {
    verify_sandwich_with_budget(g, p, DEFAULT_BUDGET)
}

pub fn verify_sandwich_with_budget(g: &Relation, p: &Circuit, budget: u64) -> Result<SandwichReport> {
    let connectivity_matches = p.connectivity().same_pairs(g)?;
    let basic = basic_circuit(g);
    let lattice = concept_lattice(g);
    Ok(SandwichReport {
        connectivity_matches,
        from_basic: find_morphism_with_budget(&basic, p, budget)?,
        to_lattice: find_morphism_with_budget(p, &lattice, budget)?,
    })
}

/// Whether a lattice-ordered circuit `l` realises `g` densely: connectivity
/// `g`, every gate the join of the `λ`-images below it and the meet of the
/// `μ`-images above it. Such circuits are exactly those isomorphic to `L_G`.
pub fn is_dense_realisation(l: &Circuit, g: &Relation) -> Result<bool> {
    if !matches!(l.gates().is_lattice(), Ok(true)) {
        return Err(Error::NotALattice);
    }
    if !l.connectivity().same_pairs(g)? {
        return Ok(false);
    }
    let order = l.gates();
    for v in 0..l.len() {
        let below: Vec<usize> = l.past_inputs(v).into_iter().map(|a| l.lambda(a)).collect();
        let above: Vec<usize> = l.future_outputs(v).into_iter().map(|b| l.mu(b)).collect();
        if order.join(&below) != Some(v) || order.meet(&above) != Some(v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience: is `l` circuit-isomorphic to `L_G`?
pub fn isomorphic_to_concept_lattice(l: &Circuit, g: &Relation) -> Result<bool> {
    if !l.same_boundary(&concept_lattice(g)) {
        return Ok(false);
    }
    Ok(find_isomorphism(l, &concept_lattice(g))?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ex48() -> Relation {
        Relation::new(
            &["1", "2", "3", "4"],
            &["x", "y", "z"],
            &[("1", "x"), ("2", "x"), ("2", "y"), ("3", "y"), ("2", "z"), ("3", "z"), ("4", "z")],
        )
        .unwrap()
    }

    fn c3() -> Relation {
        Relation::new(
            &["a1", "a2", "a3"],
            &["b1", "b2", "b3"],
            &[
                ("a1", "b1"),
                ("a1", "b2"),
                ("a2", "b1"),
                ("a2", "b2"),
                ("a2", "b3"),
                ("a3", "b2"),
                ("a3", "b3"),
            ],
        )
        .unwrap()
    }

    fn names(g: &Relation, s: &Subset) -> String {
        s.iter().map(|&a| g.inputs()[a].as_str()).collect()
    }

    #[test]
    fn galois_maps_on_empty_sets() {
        let g = ex48();
        assert_eq!(g.common_children(&Subset::new()).len(), 3);
        assert_eq!(g.common_parents(&Subset::new()).len(), 4);
    }

    #[test]
    fn galois_maps_on_example() {
        let g = ex48();
        assert_eq!(g.common_children_named(&["2", "3"]).unwrap(), vec!["y", "z"]);
        assert_eq!(g.common_parents_named(&["x"]).unwrap(), vec!["1", "2"]);
        assert_eq!(
            g.common_children_named(&["5"]).unwrap_err(),
            Error::UnknownElement("5".into())
        );
    }

    #[test]
    fn closed_sets_of_example() {
        let g = ex48();
        let got: Vec<String> = g.closed_input_sets().iter().map(|s| names(&g, s)).collect();
        assert_eq!(got, vec!["2", "12", "23", "234", "1234"]);
    }

    #[test]
    fn closed_sets_of_empty_and_full_relations() {
        let a: Vec<String> = vec!["p".into(), "q".into()];
        let b: Vec<String> = vec!["x".into()];
        let empty = Relation::empty(a.clone(), b.clone()).unwrap();
        assert_eq!(
            empty.closed_input_sets(),
            vec![Subset::new(), Subset::from([0, 1])]
        );
        let full = Relation::full(a, b).unwrap();
        assert_eq!(full.closed_input_sets(), vec![Subset::from([0, 1])]);
    }

    #[test]
    fn c3_closure_statements() {
        let g = c3();
        assert_eq!(g.closure_inputs_named(&["a1"]).unwrap(), vec!["a1", "a2"]);
        assert!(g.is_closed_inputs_named(&["a2"]).unwrap());
    }

    #[test]
    fn concept_lattice_of_example() {
        let g = ex48();
        let l = concept_lattice(&g);
        assert_eq!(
            l.gates().elements(),
            &["c{2}", "c{1,2}", "c{2,3}", "c{2,3,4}", "c{1,2,3,4}"]
        );
        let cs = concepts(&g);
        let top = cs.last().unwrap();
        assert!(top.intent.is_empty());
        let mut got_lambda: Vec<&str> = (0..4).map(|a| l.gate_name(l.lambda(a))).collect();
        got_lambda.dedup();
        assert_eq!(got_lambda, vec!["c{1,2}", "c{2}", "c{2,3}", "c{2,3,4}"]);
        assert!(l.connectivity().same_pairs(&g).unwrap());
    }

    #[test]
    fn concept_lattice_degenerate_cases() {
        let none = Relation::empty(vec![], vec![]).unwrap();
        let l = concept_lattice(&none);
        assert_eq!(l.gates().elements(), &["c{}"]);
        let full = Relation::full(vec!["a".into(), "b".into()], vec!["x".into()]).unwrap();
        let l = concept_lattice(&full);
        assert_eq!(l.len(), 1);
        assert_eq!(l.lambda_map(), &[0, 0]);
        assert_eq!(l.mu_map(), &[0]);
    }

    #[test]
    fn basic_circuit_of_example() {
        let g = ex48();
        let b = basic_circuit(&g);
        assert_eq!(b.gates().elements(), &["2", "3", "x", "y", "z"]);
        let mut covers = b.gates().cover_names();
        covers.sort();
        assert_eq!(
            covers,
            vec![("2", "x"), ("2", "y"), ("2", "z"), ("3", "y"), ("3", "z")]
        );
        let lam: Vec<&str> = (0..4).map(|a| b.gate_name(b.lambda(a))).collect();
        assert_eq!(lam, vec!["x", "2", "3", "z"]);
        let mu: Vec<&str> = (0..3).map(|o| b.gate_name(b.mu(o))).collect();
        assert_eq!(mu, vec!["x", "y", "z"]);
        assert!(b.connectivity().same_pairs(&g).unwrap());
    }

    #[test]
    fn basic_circuit_of_bijection_and_empty_relation() {
        let g = Relation::new(&["a", "b"], &["x", "y"], &[("a", "x"), ("b", "y")]).unwrap();
        let b = basic_circuit(&g);
        assert_eq!(b.gates().elements(), &["x", "y"]);
        assert_eq!(b.lambda_map(), &[0, 1]);
        assert_eq!(b.mu_map(), &[0, 1]);

        let e = Relation::empty(vec!["a".into()], vec!["x".into()]).unwrap();
        let b = basic_circuit(&e);
        assert_eq!(b.gates().elements(), &["a", "x"]);
        assert!(b.gates().strict_pairs().is_empty());
        assert_eq!(b.lambda_map(), &[0]);
        assert_eq!(b.mu_map(), &[1]);
    }

    #[test]
    fn basic_circuit_prefixes_on_name_clash() {
        let g = Relation::empty(vec!["v".into()], vec!["v".into()]).unwrap();
        let b = basic_circuit(&g);
        assert_eq!(b.gates().elements(), &["in:v", "out:v"]);
    }

    #[test]
    fn lattice_morphism_of_lattice_to_itself_is_identity() {
        let g = ex48();
        let l = concept_lattice(&g);
        let f = canonical_morphism_to_lattice(&l, &l, LatticeVariant::Join).unwrap();
        assert_eq!(f.map(), &[0, 1, 2, 3, 4]);
        let f = canonical_morphism_to_lattice(&l, &l, LatticeVariant::Meet).unwrap();
        assert_eq!(f.map(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn lattice_morphism_errors() {
        let g = ex48();
        let b = basic_circuit(&g);
        assert_eq!(
            canonical_morphism_to_lattice(&concept_lattice(&g), &b, LatticeVariant::Join).unwrap_err(),
            Error::NotALattice
        );
        let smaller = Relation::new(&["1", "2", "3", "4"], &["x", "y", "z"], &[("1", "x")]).unwrap();
        assert!(matches!(
            canonical_morphism_to_lattice(&b, &concept_lattice(&smaller), LatticeVariant::Join),
            Err(Error::ConnectivityNotContained(_, _))
        ));
    }

    #[test]
    fn basic_morphism_into_lattice_and_into_copy() {
        let g = ex48();
        // L_G is not least among connectivity-G circuits, so this need not embed
        let f = canonical_morphism_from_basic(&g, &concept_lattice(&g)).unwrap();
        assert!(f.is_valid());
        assert!(!f.is_injective());
        let basic = basic_circuit(&g);
        let renamed = basic
            .with_gate_names(vec!["p".into(), "q".into(), "r".into(), "s".into(), "t".into()])
            .unwrap();
        assert!(canonical_morphism_from_basic(&g, &renamed).unwrap().is_embedding().unwrap());
        let id = canonical_morphism_from_basic(&g, &basic_circuit(&g)).unwrap();
        assert_eq!(id.map(), &[0, 1, 2, 3, 4]);
        let smaller = Relation::new(&["1", "2", "3", "4"], &["x", "y", "z"], &[("1", "x")]).unwrap();
        assert!(matches!(
            canonical_morphism_from_basic(&g, &basic_circuit(&smaller)),
            Err(Error::ConnectivityNotContaining(_, _))
        ));
    }

    #[test]
    fn three_perspectives_hold() {
        assert!(verify_three_perspectives(&ex48()).holds);
        assert!(verify_three_perspectives(&c3()).holds);
        assert!(verify_three_perspectives(&Relation::empty(vec![], vec![]).unwrap()).holds);
    }

    #[test]
    fn density() {
        let g = ex48();
        assert!(is_dense_realisation(&concept_lattice(&g), &g).unwrap());
        let single = Relation::full(vec!["a".into()], vec!["b".into()]).unwrap();
        assert!(is_dense_realisation(&concept_lattice(&single), &single).unwrap());
        assert_eq!(
            is_dense_realisation(&basic_circuit(&g), &g).unwrap_err(),
            Error::NotALattice
        );
    }
}
