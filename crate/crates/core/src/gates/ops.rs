//! Exchange and inversion operators. Both permute basis configurations, so
//! they act on superpositions by relabeling amplitudes.

use super::state::{Atom, BasisConfig, NodeState, RegisterState};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Which nodes an inversion acts on; the others are held by 2π pulses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inversion {
    Both,
    Node1,
    Node2,
}

impl Inversion {
    fn selects(self, node: usize) -> bool {
        matches!((self, node), (Inversion::Both, _) | (Inversion::Node1, 1) | (Inversion::Node2, 2))
    }
}

/// Swaps the photonic parts of the two nodes, leaving the atoms in place.
pub fn exchange(state: &RegisterState) -> RegisterState {
    let amplitudes = state
        .amplitudes()
        .iter()
        .map(|(k, a)| {
            let swapped = BasisConfig::new(
                NodeState::new(k.node1.atom, k.node2.photons),
                NodeState::new(k.node2.atom, k.node1.photons),
            );
            (swapped, *a)
        })
        .collect();
    RegisterState::from_permuted(amplitudes, state.max_photons())
}

/// Half a vacuum Rabi period on one node: `(g, n) → (e, n-1)` for `n ≥ 1`,
/// `(e, n) → (g, n+1)`, and `(g, 0)` is stationary.
pub fn invert_node(node: NodeState) -> NodeState {
    match node {
        NodeState {
            atom: Atom::Ground,
            photons: 0,
        } => node,
        NodeState {
            atom: Atom::Ground,
            photons,
        } => NodeState::e(photons - 1),
        NodeState {
            atom: Atom::Excited,
            photons,
        } => NodeState::g(photons + 1),
    }
}

/// Applies the inversion to the selected nodes of every configuration.
pub fn pi_op(state: &RegisterState, which: Inversion) -> Result<RegisterState> {
    let cap = state.max_photons();
    let mut amplitudes = BTreeMap::new();
    for (k, a) in state.amplitudes() {
        let mut next = *k;
        if which.selects(1) {
            next.node1 = invert_node(k.node1);
        }
        if which.selects(2) {
            next.node2 = invert_node(k.node2);
        }
        if next.max_photons() > cap {
            return Err(Error::PhotonCap {
                step: None,
                photons: next.max_photons(),
                cap,
            });
        }
        amplitudes.insert(next, *a);
    }
    Ok(RegisterState::from_permuted(amplitudes, cap))
}
