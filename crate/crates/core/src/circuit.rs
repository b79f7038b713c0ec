//! Circuits: a poset of gates together with input and output maps.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::order::Poset;
use crate::relation::Relation;

/// A finite circuit `(P, ≤, λ, μ)` from inputs `A` to outputs `B`.
///
/// Inputs, outputs and gates are separate identifier spaces; a name may be
/// reused across them. `λ` and `μ` are stored as gate indices, one per input
/// (resp. output) in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    gates: Poset,
    inputs: Vec<String>,
    outputs: Vec<String>,
    lambda: Vec<usize>,
    mu: Vec<usize>,
}

fn check_unique(names: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateIdentifier(n.clone()));
        }
    }
    Ok(())
}

impl Circuit {
    pub fn new(
        gates: Poset,
        inputs: Vec<String>,
        outputs: Vec<String>,
        lambda: Vec<usize>,
        mu: Vec<usize>,
    ) -> Result<Self> {
        check_unique(&inputs)?;
        check_unique(&outputs)?;
        if lambda.len() != inputs.len() || mu.len() != outputs.len() {
            return Err(Error::Internal("boundary map is not total".into()));
        }
        if let Some(&g) = lambda.iter().chain(&mu).find(|&&g| g >= gates.len()) {
            return Err(Error::UnknownElement(format!("gate #{g}")));
        }
        Ok(Self {
            gates,
            inputs,
            outputs,
            lambda,
            mu,
        })
    }

    /// Builds a circuit from named boundary assignments. Every input and
    /// output must be assigned exactly once.
    pub fn from_names<S: AsRef<str>>(
        gates: Poset,
        inputs: &[S],
        outputs: &[S],
        lambda: &[(S, S)],
        mu: &[(S, S)],
    ) -> Result<Self> {
        let inputs: Vec<String> = inputs.iter().map(|s| s.as_ref().to_owned()).collect();
        let outputs: Vec<String> = outputs.iter().map(|s| s.as_ref().to_owned()).collect();
        let lam = assign(&gates, &inputs, lambda, "input")?;
        let mu = assign(&gates, &outputs, mu, "output")?;
        Self::new(gates, inputs, outputs, lam, mu)
    }

    pub fn gates(&self) -> &Poset {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate_name(&self, g: usize) -> &str {
        self.gates.name(g)
    }

    pub fn gate_index(&self, name: &str) -> Result<usize> {
        self.gates
            .index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn input_index(&self, name: &str) -> Result<usize> {
        self.inputs
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    pub fn output_index(&self, name: &str) -> Result<usize> {
        self.outputs
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_owned()))
    }

    pub fn lambda(&self, a: usize) -> usize {
        self.lambda[a]
    }

    pub fn mu(&self, b: usize) -> usize {
        self.mu[b]
    }

    pub fn lambda_map(&self) -> &[usize] {
        &self.lambda
    }

    pub fn mu_map(&self) -> &[usize] {
        &self.mu
    }

    /// `p⁻ = {a : λ(a) ≤ p}`.
    pub fn past_inputs(&self, p: usize) -> BTreeSet<usize> {
        (0..self.inputs.len())
            .filter(|&a| self.gates.le(self.lambda[a], p))
            .collect()
    }

    /// `p⁺ = {b : p ≤ μ(b)}`.
    pub fn future_outputs(&self, p: usize) -> BTreeSet<usize> {
        (0..self.outputs.len())
            .filter(|&b| self.gates.le(p, self.mu[b]))
            .collect()
    }

    pub fn past_inputs_named(&self, gate: &str) -> Result<Vec<&str>> {
        let p = self.gate_index(gate)?;
        Ok(self
            .past_inputs(p)
            .into_iter()
            .map(|a| self.inputs[a].as_str())
            .collect())
    }

    pub fn future_outputs_named(&self, gate: &str) -> Result<Vec<&str>> {
        let p = self.gate_index(gate)?;
        Ok(self
            .future_outputs(p)
            .into_iter()
            .map(|b| self.outputs[b].as_str())
            .collect())
    }

    /// The connectivity `G_C`: `a G b ⟺ λ(a) ≤ μ(b)`.
    pub fn connectivity(&self) -> Relation {
        let related = (0..self.inputs.len())
            .flat_map(|a| (0..self.outputs.len()).map(move |b| (a, b)))
            .map(|(a, b)| self.gates.le(self.lambda[a], self.mu[b]))
            .collect();
        Relation::from_matrix(self.inputs.clone(), self.outputs.clone(), related)
            .expect("circuit boundary names are unique")
    }

    /// Same circuit with gates renamed position-wise.
    pub fn with_gate_names(&self, names: Vec<String>) -> Result<Self> {
        Ok(Self {
            gates: self.gates.renamed(names)?,
            ..self.clone()
        })
    }

    /// Same boundary, new order and boundary maps.
    pub(crate) fn rebuild(&self, gates: Poset, lambda: Vec<usize>, mu: Vec<usize>) -> Result<Self> {
        Self::new(gates, self.inputs.clone(), self.outputs.clone(), lambda, mu)
    }

    /// Whether both circuits are declared over the same input and output sets.
    pub fn same_boundary(&self, other: &Circuit) -> bool {
        crate::relation::align_names(&self.inputs, &other.inputs, "input").is_ok()
            && crate::relation::align_names(&self.outputs, &other.outputs, "output").is_ok()
    }
}

fn assign<S: AsRef<str>>(
    gates: &Poset,
    boundary: &[String],
    entries: &[(S, S)],
    what: &str,
) -> Result<Vec<usize>> {
    let mut out = vec![None; boundary.len()];
    for (w, g) in entries {
        let w = w.as_ref();
        let slot = boundary
            .iter()
            .position(|n| n == w)
            .ok_or_else(|| Error::UnknownElement(w.to_owned()))?;
        let gi = gates
            .index_of(g.as_ref())
            .ok_or_else(|| Error::UnknownElement(g.as_ref().to_owned()))?;
        if out[slot].replace(gi).is_some() {
            return Err(Error::DuplicateIdentifier(w.to_owned()));
        }
    }
    out.into_iter()
        .zip(boundary)
        .map(|(g, w)| g.ok_or_else(|| Error::UnknownElement(format!("no gate assigned to {what} `{w}`"))))
        .collect()
}
