//! Exhaustive reachability of small lattice hop chains.
//!
//! This models the discrete-time lattice walk in which a particle occupies
//! one site (radius half a site) and, when updated, hops `jump_sites` sites
//! clockwise if and only if the target site is free in the old configuration,
//! staying put otherwise. For single-site hops this is the usual parallel
//! exclusion chain; for longer hops a particle may clear another one, which
//! is exactly what makes reachability interesting: on an even circle the
//! per-particle site parity is conserved by 2-site hops and the chain
//! decomposes, while on an odd circle the wrap-around mixes parities.
//!
//! States are labeled site tuples; transitions are all positive-probability
//! outcomes of one parallel tick (every subset of particles attempts a hop).
//! The chain is irreducible exactly when the admissible states form a single
//! strongly connected component.

use crate::error::AnalysisError;
use crate::scenario::LatticeSpec;
use serde::Serialize;
use std::collections::HashMap;

/// Full transition structure of a small lattice hop chain.
#[derive(Debug, Clone, Serialize)]
pub struct ReachabilityReport {
    pub sites: u32,
    pub n: usize,
    pub jump_sites: u32,
    /// Admissible states, as site tuples (one site index per particle).
    pub states: Vec<Vec<u32>>,
    /// Outgoing edges per state (indices into `states`), deduplicated.
    pub edges: Vec<Vec<u32>>,
    pub irreducible: bool,
    /// Number of strongly connected components.
    pub class_count: usize,
    /// Size of the set reachable from `states[0]`.
    pub reachable_from_first: usize,
}

/// Enumerate all states of `n` exclusive particles on `spec.sites` sites and
/// their one-tick hop transitions.
pub fn lattice_reachability(
    spec: LatticeSpec,
    n: usize,
    jump_sites: u32,
    budget: usize,
) -> Result<ReachabilityReport, AnalysisError> {
    if n < 2 {
        return Err(AnalysisError::Precondition(
            "need at least 2 particles".into(),
        ));
    }
    let sites = spec.sites;
    if (sites as usize) < n {
        return Err(AnalysisError::Precondition(format!(
            "{n} exclusive particles need at least {n} sites"
        )));
    }
    if n > 20 {
        return Err(AnalysisError::Precondition(
            "transition fan-out 2^n is too large".into(),
        ));
    }
    let jump = jump_sites % sites;

    // All labeled tuples of distinct sites.
    let mut states: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            states.push(prefix);
            if states.len() > budget {
                return Err(AnalysisError::BudgetExceeded {
                    visited: states.len(),
                    budget,
                });
            }
            continue;
        }
        for site in 0..sites {
            if !prefix.contains(&site) {
                let mut next = prefix.clone();
                next.push(site);
                stack.push(next);
            }
        }
    }
    states.sort();
    let index: HashMap<Vec<u32>, u32> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i as u32))
        .collect();

    let mut edges: Vec<Vec<u32>> = vec![Vec::new(); states.len()];
    for (from, state) in states.iter().enumerate() {
        for mask in 0u32..(1 << n) {
            let mut next = state.clone();
            for (i, site) in state.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let target = (site + jump) % sites;
                // Blocked by the old configuration; equal hop lengths make
                // target collisions between movers impossible.
                if !state.contains(&target) {
                    next[i] = target;
                }
            }
            let to = *index.get(&next).expect("hops keep sites distinct");
            if !edges[from].contains(&to) {
                edges[from].push(to);
            }
        }
        edges[from].sort_unstable();
    }

    let class_count = strongly_connected_components(&edges);
    let reachable_from_first = reachable(&edges, 0).len();
    Ok(ReachabilityReport {
        sites,
        n,
        jump_sites,
        irreducible: class_count == 1,
        class_count,
        reachable_from_first,
        states,
        edges,
    })
}

fn reachable(edges: &[Vec<u32>], start: u32) -> Vec<u32> {
    let mut seen = vec![false; edges.len()];
    let mut queue = vec![start];
    seen[start as usize] = true;
    let mut out = Vec::new();
    while let Some(s) = queue.pop() {
        out.push(s);
        for &t in &edges[s as usize] {
            if !seen[t as usize] {
                seen[t as usize] = true;
                queue.push(t);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Kosaraju's algorithm; returns the number of components.
fn strongly_connected_components(edges: &[Vec<u32>]) -> usize {
    let m = edges.len();
    let mut reversed: Vec<Vec<u32>> = vec![Vec::new(); m];
    for (from, outs) in edges.iter().enumerate() {
        for &to in outs {
            reversed[to as usize].push(from as u32);
        }
    }
    // Iterative DFS post-order on the forward graph.
    let mut order = Vec::with_capacity(m);
    let mut visited = vec![false; m];
    for root in 0..m {
        if visited[root] {
            continue;
        }
        let mut stack = vec![(root as u32, 0usize)];
        visited[root] = true;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next < edges[node as usize].len() {
                let t = edges[node as usize][*next];
                *next += 1;
                if !visited[t as usize] {
                    visited[t as usize] = true;
                    stack.push((t, 0));
                }
            } else {
                order.push(node);
                stack.pop();
            }
        }
    }
    // Sweep the reverse graph in reverse post-order.
    let mut assigned = vec![false; m];
    let mut components = 0;
    for &root in order.iter().rev() {
        if assigned[root as usize] {
            continue;
        }
        components += 1;
        let mut stack = vec![root];
        assigned[root as usize] = true;
        while let Some(node) = stack.pop() {
            for &t in &reversed[node as usize] {
                if !assigned[t as usize] {
                    assigned[t as usize] = true;
                    stack.push(t);
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_site_hops_are_irreducible() {
        let report = lattice_reachability(LatticeSpec { sites: 6 }, 2, 1, 100_000).unwrap();
        assert_eq!(report.states.len(), 30);
        assert!(report.irreducible);
        assert_eq!(report.reachable_from_first, 30);
    }

    #[test]
    fn double_hops_on_even_circle_are_reducible() {
        let report = lattice_reachability(LatticeSpec { sites: 6 }, 2, 2, 100_000).unwrap();
        assert!(!report.irreducible);
        assert!(report.class_count > 1);
        // Per-particle site parity is invariant along every edge.
        for (from, outs) in report.edges.iter().enumerate() {
            for &to in outs {
                for (a, b) in report.states[from].iter().zip(&report.states[to as usize]) {
                    assert_eq!(a % 2, b % 2);
                }
            }
        }
    }

    #[test]
    fn double_hops_on_odd_circle_are_irreducible() {
        let report = lattice_reachability(LatticeSpec { sites: 5 }, 2, 2, 100_000).unwrap();
        assert_eq!(report.states.len(), 20);
        assert!(report.irreducible);
    }

    #[test]
    fn budget_is_enforced() {
        let err = lattice_reachability(LatticeSpec { sites: 30 }, 4, 1, 100).unwrap_err();
        assert!(matches!(err, AnalysisError::BudgetExceeded { .. }));
    }
}
