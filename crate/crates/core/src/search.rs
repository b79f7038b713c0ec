//! Backtracking search for circuit morphisms and isomorphisms.
//!
//! Source gates are assigned in canonical order and candidate targets are
//! tried in canonical order, so the first solution found is the
//! lexicographically least one. Candidates for a gate `p` are restricted to
//! targets `q` with `p⁻ ⊆ q⁻` and `p⁺ ⊆ q⁺` (any morphism satisfies this),
//! and each assignment prunes the domains of the remaining gates by
//! forward-checking the order constraints.

use std::ops::ControlFlow;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::morphism::{align, Morphism};

/// Default node budget for searches; generous for circuits of a dozen gates.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Morphism,
    Isomorphism,
}

struct Search<'a> {
    source: &'a Circuit,
    target: &'a Circuit,
    mode: Mode,
    budget: u64,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn initial_domains(&self) -> Result<Vec<Vec<usize>>> {
        let al = align(self.source, self.target)?;
        let (s, t) = (self.source, self.target);
        let past_t: Vec<_> = (0..t.len()).map(|q| t.past_inputs(q)).collect();
        let future_t: Vec<_> = (0..t.len()).map(|q| t.future_outputs(q)).collect();
        let mut domains = Vec::with_capacity(s.len());
        for p in 0..s.len() {
            let past: Vec<usize> = s.past_inputs(p).into_iter().map(|a| al.inputs[a]).collect();
            let future: Vec<usize> = s.future_outputs(p).into_iter().map(|b| al.outputs[b]).collect();
            let dom = (0..t.len()).filter(|&q| match self.mode {
                Mode::Morphism => {
                    past.iter().all(|a| past_t[q].contains(a))
                        && future.iter().all(|b| future_t[q].contains(b))
                }
                Mode::Isomorphism => {
                    past.len() == past_t[q].len()
                        && future.len() == future_t[q].len()
                        && past.iter().all(|a| past_t[q].contains(a))
                        && future.iter().all(|b| future_t[q].contains(b))
                        && self.same_signature(p, q)
                        && self.same_boundary_fibres(p, q, &al.inputs, &al.outputs)
                }
            });
            domains.push(dom.collect());
        }
        Ok(domains)
    }

    // (cover in-degree, cover out-degree) must agree under an isomorphism
    fn same_signature(&self, p: usize, q: usize) -> bool {
        let (sp, tp) = (self.source.gates(), self.target.gates());
        let sig = |po: &crate::order::Poset, x: usize| {
            let n = po.len();
            (
                (0..n).filter(|&y| po.is_covered_by(y, x)).count(),
                (0..n).filter(|&y| po.is_covered_by(x, y)).count(),
            )
        };
        sig(sp, p) == sig(tp, q)
    }

    // inputs located at p must be exactly the inputs located at q, same for outputs
    fn same_boundary_fibres(&self, p: usize, q: usize, ins: &[usize], outs: &[usize]) -> bool {
        let (s, t) = (self.source, self.target);
        let mut at_p: Vec<usize> = (0..s.inputs().len())
            .filter(|&a| s.lambda(a) == p)
            .map(|a| ins[a])
            .collect();
        let mut at_q: Vec<usize> = (0..t.inputs().len()).filter(|&a| t.lambda(a) == q).collect();
        at_p.sort_unstable();
        if at_p != at_q {
            return false;
        }
        at_p = (0..s.outputs().len())
            .filter(|&b| s.mu(b) == p)
            .map(|b| outs[b])
            .collect();
        at_q = (0..t.outputs().len()).filter(|&b| t.mu(b) == q).collect();
        at_p.sort_unstable();
        at_p == at_q
    }

    fn run<F>(&mut self, visit: &mut F) -> Result<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()> + ?Sized,
    {
        let domains = self.initial_domains()?;
        if self.mode == Mode::Isomorphism && self.source.len() != self.target.len() {
            return Ok(());
        }
        let mut assignment = Vec::with_capacity(self.source.len());
        let mut used = vec![false; self.target.len()];
        let _ = self.extend(&mut assignment, &mut used, &domains, visit)?;
        Ok(())
    }

    fn extend<F>(
        &mut self,
        assignment: &mut Vec<usize>,
        used: &mut [bool],
        domains: &[Vec<usize>],
        visit: &mut F,
    ) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize]) -> ControlFlow<()> + ?Sized,
    {
        let p = assignment.len();
        if p == self.source.len() {
            return Ok(visit(assignment));
        }
        let (sp, tp) = (self.source.gates(), self.target.gates());
        for &q in &domains[p] {
            if self.mode == Mode::Isomorphism && used[q] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            // forward-check the remaining gates against p ↦ q
            let mut next = Vec::with_capacity(domains.len());
            next.extend(domains[..=p].iter().cloned());
            let mut dead = false;
            for (r, dom) in domains.iter().enumerate().skip(p + 1) {
                let (up, down) = (sp.le(p, r), sp.le(r, p));
                let filtered: Vec<usize> = dom
                    .iter()
                    .copied()
                    .filter(|&x| match self.mode {
                        Mode::Morphism => (!up || tp.le(q, x)) && (!down || tp.le(x, q)),
                        Mode::Isomorphism => {
                            x != q && up == tp.le(q, x) && down == tp.le(x, q)
                        }
                    })
                    .collect();
                if filtered.is_empty() {
                    dead = true;
                    break;
                }
                next.push(filtered);
            }
            if dead {
                continue;
            }
            assignment.push(q);
            used[q] = true;
            let flow = self.extend(assignment, used, &next, visit)?;
            used[q] = false;
            assignment.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

fn search(
    source: &Circuit,
    target: &Circuit,
    mode: Mode,
    budget: u64,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<()> {
    Search {
        source,
        target,
        mode,
        budget,
        nodes: 0,
    }
    .run(visit)
}

/// The lexicographically least morphism `source → target`, if any exists.
pub fn find_morphism(source: &Circuit, target: &Circuit) -> Result<Option<Morphism>> {
    find_morphism_with_budget(source, target, DEFAULT_BUDGET)
}

pub fn find_morphism_with_budget(source: &Circuit, target: &Circuit, budget: u64) -> Result<Option<Morphism>> {
    let mut found = None;
    search(source, target, Mode::Morphism, budget, &mut |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    })?;
    found
        .map(|map| Morphism::new(source.clone(), target.clone(), map))
        .transpose()
}

/// Every morphism `source → target`, in lexicographic order.
pub fn all_morphisms(source: &Circuit, target: &Circuit, budget: u64) -> Result<Vec<Morphism>> {
    let mut maps = Vec::new();
    search(source, target, Mode::Morphism, budget, &mut |m| {
        maps.push(m.to_vec());
        ControlFlow::Continue(())
    })?;
    maps.into_iter()
        .map(|map| Morphism::new(source.clone(), target.clone(), map))
        .collect()
}

/// All endomorphisms of `circuit`, in lexicographic order.
pub fn endomorphisms(circuit: &Circuit) -> Result<Vec<Morphism>> {
    endomorphisms_with_budget(circuit, DEFAULT_BUDGET)
}

pub fn endomorphisms_with_budget(circuit: &Circuit, budget: u64) -> Result<Vec<Morphism>> {
    all_morphisms(circuit, circuit, budget)
}

/// Morphisms exist in both directions.
pub fn syntactically_equivalent(p: &Circuit, q: &Circuit) -> Result<bool> {
    syntactically_equivalent_with_budget(p, q, DEFAULT_BUDGET)
}

pub fn syntactically_equivalent_with_budget(p: &Circuit, q: &Circuit, budget: u64) -> Result<bool> {
    Ok(find_morphism_with_budget(p, q, budget)?.is_some()
        && find_morphism_with_budget(q, p, budget)?.is_some())
}

/// The lexicographically least circuit isomorphism, if any: an order
/// isomorphism carrying `λ` and `μ` over exactly.
pub fn find_isomorphism(c1: &Circuit, c2: &Circuit) -> Result<Option<Morphism>> {
    find_isomorphism_with_budget(c1, c2, DEFAULT_BUDGET)
}

pub fn find_isomorphism_with_budget(c1: &Circuit, c2: &Circuit, budget: u64) -> Result<Option<Morphism>> {
    let mut found = None;
    search(c1, c2, Mode::Isomorphism, budget, &mut |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    })?;
    let Some(map) = found else { return Ok(None) };
    let iso = Morphism::new(c1.clone(), c2.clone(), map)?;
    if !iso.is_isomorphism() {
        return Err(Error::Internal("isomorphism search returned a non-isomorphism".into()));
    }
    Ok(Some(iso))
}
