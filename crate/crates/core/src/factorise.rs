//! Factorisation of a circuit morphism into elementary rewrites.
//!
//! Any morphism `f: P → Q` splits as
//!
//! ```text
//! P ──π_f──▶ P/ker f ──incl──▶ P/ker f ⊔ (Q∖im f) ──g──▶ Q̃ ──id──▶ Q
//! ```
//!
//! where `Q̃ = (Q, ≤_Q, f∘λ_P, f∘μ_P)`: a quotient, a map adding isolated
//! gates, a bijection adding wires, and the identity on gates, which
//! advances inputs and delays outputs.

use std::collections::HashSet;

use crate::circuit::Circuit;
use crate::congruence::quotient_circuit;
use crate::error::{Error, Result};
use crate::morphism::{add_isolated_gates, ElementaryKind, Morphism};

#[derive(Clone, Debug)]
pub struct Factorisation {
    /// quotient, adds isolated gates, adds wires, advances inputs/delays outputs
    pub stages: [Morphism; 4],
    /// `P/ker f`, `P/ker f ⊔ (Q∖im f)` and `Q̃`
    pub intermediates: [Circuit; 3],
}

impl Factorisation {
    /// The elementary type each stage is meant to have.
    pub const STAGE_KINDS: [ElementaryKind; 4] = [
        ElementaryKind::Quotient,
        ElementaryKind::AddsIsolatedGates,
        ElementaryKind::AddsWires,
        ElementaryKind::AdvancesDelays,
    ];

    pub fn composite(&self) -> Result<Morphism> {
        let [s1, s2, s3, s4] = &self.stages;
        s1.compose(s2)?.compose(s3)?.compose(s4)
    }
}

pub fn factorise(f: &Morphism) -> Result<Factorisation> {
    if let Some(v) = f.violation() {
        return Err(Error::NotAMorphism(v.to_string()));
    }
    let (source, target) = (f.source(), f.target());

    // 1. quotient by the kernel
    let kernel = f.kernel();
    let quotient = quotient_circuit(source, &kernel)?;
    let stage1 = Morphism::new(
        source.clone(),
        quotient.clone(),
        (0..source.len()).map(|p| kernel.block_of(p)).collect(),
    )?;

    // 2. add the gates of Q outside the image, isolated
    let mut in_image = vec![false; target.len()];
    for &q in f.map() {
        in_image[q] = true;
    }
    let missing: Vec<usize> = (0..target.len()).filter(|&q| !in_image[q]).collect();
    let mut taken: HashSet<String> = quotient.gates().elements().iter().cloned().collect();
    let extra_names: Vec<String> = missing
        .iter()
        .map(|&q| fresh_name(target.gate_name(q), &mut taken))
        .collect();
    let padded = add_isolated_gates(&quotient, &extra_names)?;
    let stage2 = Morphism::new(quotient.clone(), padded.clone(), (0..quotient.len()).collect())?;

    // 3. onto Q̃, bijectively
    let block_image: Vec<usize> = kernel
        .blocks()
        .iter()
        .map(|b| f.apply(b[0]))
        .collect();
    let g_map: Vec<usize> = block_image.iter().copied().chain(missing.iter().copied()).collect();
    let retargeted = {
        let lambda = (0..target.inputs().len())
            .map(|a| {
                let sa = source.input_index(&target.inputs()[a]).expect("aligned boundary");
                f.apply(source.lambda(sa))
            })
            .collect();
        let mu = (0..target.outputs().len())
            .map(|b| {
                let sb = source.output_index(&target.outputs()[b]).expect("aligned boundary");
                f.apply(source.mu(sb))
            })
            .collect();
        target.rebuild(target.gates().clone(), lambda, mu)?
    };
    let stage3 = Morphism::new(padded.clone(), retargeted.clone(), g_map)?;

    // 4. identity on gates, boundary moved
    let stage4 = Morphism::new(retargeted.clone(), target.clone(), (0..target.len()).collect())?;

    Ok(Factorisation {
        stages: [stage1, stage2, stage3, stage4],
        intermediates: [quotient, padded, retargeted],
    })
}

fn fresh_name(base: &str, taken: &mut HashSet<String>) -> String {
    let mut name = base.to_owned();
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.insert(name.clone());
    name
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::classify_elementary;
    use crate::order::Poset;

    #[test]
    fn constant_map_collapses_in_first_stage() {
        let p = Circuit::from_names(
            Poset::from_generators(
                &["a", "b", "c", "d"],
                &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
            )
            .unwrap(),
            &["a1", "a2"],
            &["b1", "b2"],
            &[("a1", "a"), ("a2", "b")],
            &[("b1", "c"), ("b2", "d")],
        )
        .unwrap();
        let q = Circuit::from_names(
            Poset::antichain(vec!["q".into()]).unwrap(),
            &["a1", "a2"],
            &["b1", "b2"],
            &[("a1", "q"), ("a2", "q")],
            &[("b1", "q"), ("b2", "q")],
        )
        .unwrap();
        let f = Morphism::new(p, q, vec![0; 4]).unwrap();
        let fac = factorise(&f).unwrap();
        assert_eq!(fac.intermediates[0].len(), 1);
        assert_eq!(fac.intermediates[0].gate_name(0), "a+b+c+d");
        assert_eq!(fac.intermediates[1].len(), 1);
        assert_eq!(fac.composite().unwrap().map(), f.map());
        for (stage, kind) in fac.stages.iter().zip(Factorisation::STAGE_KINDS) {
            assert!(classify_elementary(stage).unwrap().has(kind));
        }
    }

    #[test]
    fn isomorphism_factorises_trivially() {
        let c = Circuit::from_names(
            Poset::from_generators(&["x", "y"], &[("x", "y")]).unwrap(),
            &["a"],
            &["b"],
            &[("a", "x")],
            &[("b", "y")],
        )
        .unwrap();
        let renamed = c.with_gate_names(vec!["u".into(), "v".into()]).unwrap();
        let f = Morphism::new(c, renamed, vec![0, 1]).unwrap();
        let fac = factorise(&f).unwrap();
        assert!(fac.stages[0].kernel().is_discrete());
        assert_eq!(fac.intermediates[1].len(), fac.intermediates[0].len());
        assert!(fac.stages[2].is_isomorphism());
        assert_eq!(fac.stages[3].map(), &[0, 1]);
        assert!(fac.stages[3].is_isomorphism());
    }

    #[test]
    fn name_collisions_get_primes() {
        let mut taken = HashSet::from(["q".to_owned(), "q'".to_owned()]);
        assert_eq!(fresh_name("q", &mut taken), "q''");
        assert_eq!(fresh_name("r", &mut taken), "r");
    }

    #[test]
    fn invalid_map_is_rejected() {
        let c = Circuit::from_names(
            Poset::from_generators(&["x", "y"], &[("x", "y")]).unwrap(),
            &["a"],
            &["b"],
            &[("a", "x")],
            &[("b", "y")],
        )
        .unwrap();
        let f = Morphism::new(c.clone(), c, vec![1, 0]).unwrap();
        assert!(matches!(factorise(&f), Err(Error::NotAMorphism(_))));
    }
}
