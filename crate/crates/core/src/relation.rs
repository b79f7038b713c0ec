//! Binary relations between a set of inputs and a set of outputs.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// A relation `G ⊆ A × B`, stored as a dense `|A| × |B|` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    inputs: Vec<String>,
    outputs: Vec<String>,
    related: Vec<bool>,
}

fn unique(names: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::DuplicateIdentifier(n.clone()));
        }
    }
    Ok(())
}

/// Maps each position of `from` to the position of the same name in `to`.
pub(crate) fn align_names(from: &[String], to: &[String], what: &str) -> Result<Vec<usize>> {
    if from.len() != to.len() {
        return Err(Error::BoundaryMismatch(format!(
            "{what} sets differ in size ({} vs {})",
            from.len(),
            to.len()
        )));
    }
    let pos: HashMap<&str, usize> = to.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    from.iter()
        .map(|n| {
            pos.get(n.as_str())
                .copied()
                .ok_or_else(|| Error::BoundaryMismatch(format!("{what} `{n}` is missing on one side")))
        })
        .collect()
}

impl Relation {
    pub fn new<S: AsRef<str>>(inputs: &[S], outputs: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let inputs: Vec<String> = inputs.iter().map(|s| s.as_ref().to_owned()).collect();
        let outputs: Vec<String> = outputs.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut rel = Self::empty(inputs, outputs)?;
        for (a, b) in pairs {
            let ai = rel.input_index(a.as_ref())?;
            let bi = rel.output_index(b.as_ref())?;
            rel.set(ai, bi, true);
        }
        Ok(rel)
    }

    pub fn from_matrix(inputs: Vec<String>, outputs: Vec<String>, related: Vec<bool>) -> Result<Self> {
        unique(&inputs)?;
        unique(&outputs)?;
        assert_eq!(related.len(), inputs.len() * outputs.len());
        Ok(Self {
            inputs,
            outputs,
            related,
        })
    }

    pub fn empty(inputs: Vec<String>, outputs: Vec<String>) -> Result<Self> {
        let size = inputs.len() * outputs.len();
        Self::from_matrix(inputs, outputs, vec![false; size])
    }

    pub fn full(inputs: Vec<String>, outputs: Vec<String>) -> Result<Self> {
        let size = inputs.len() * outputs.len();
        Self::from_matrix(inputs, outputs, vec![true; size])
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

    pub fn input_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BTreeSet<usize>> {
        names.iter().map(|n| self.input_index(n.as_ref())).collect()
    }

    pub fn output_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BTreeSet<usize>> {
        names.iter().map(|n| self.output_index(n.as_ref())).collect()
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.related[a * self.outputs.len() + b]
    }

    pub(crate) fn set(&mut self, a: usize, b: usize, value: bool) {
        let w = self.outputs.len();
        self.related[a * w + b] = value;
    }

    /// Pairs in row-major (input, output) order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let w = self.outputs.len();
        (0..self.inputs.len())
            .flat_map(|a| (0..w).map(move |b| (a, b)))
            .filter(|&(a, b)| self.related(a, b))
            .collect()
    }

    pub fn pair_names(&self) -> Vec<(&str, &str)> {
        self.pairs()
            .into_iter()
            .map(|(a, b)| (self.inputs[a].as_str(), self.outputs[b].as_str()))
            .collect()
    }

    /// `G(a)`.
    pub fn children(&self, a: usize) -> BTreeSet<usize> {
        (0..self.outputs.len()).filter(|&b| self.related(a, b)).collect()
    }

    /// `G⁻¹(b)`.
    pub fn parents(&self, b: usize) -> BTreeSet<usize> {
        (0..self.inputs.len()).filter(|&a| self.related(a, b)).collect()
    }

    pub fn same_boundary(&self, other: &Relation) -> bool {
        align_names(&self.inputs, &other.inputs, "input").is_ok()
            && align_names(&self.outputs, &other.outputs, "output").is_ok()
    }

    /// First pair of `self` (by name) missing from `other`, if any.
    pub fn first_missing_from(&self, other: &Relation) -> Result<Option<(String, String)>> {
        let ins = align_names(&self.inputs, &other.inputs, "input")?;
        let outs = align_names(&self.outputs, &other.outputs, "output")?;
        Ok(self
            .pairs()
            .into_iter()
            .find(|&(a, b)| !other.related(ins[a], outs[b]))
            .map(|(a, b)| (self.inputs[a].clone(), self.outputs[b].clone())))
    }

    /// Inclusion by name; boundary orderings may differ.
    pub fn is_subset_of(&self, other: &Relation) -> Result<bool> {
        Ok(self.first_missing_from(other)?.is_none())
    }

    /// Equality of the pair sets by name; boundary orderings may differ.
    pub fn same_pairs(&self, other: &Relation) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }
}
