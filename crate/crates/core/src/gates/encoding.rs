use super::state::{BasisConfig, NodeState, RegisterState};
use num_complex::Complex64;

/// Tolerance on amplitude outside the computational subspace.
const LEAKAGE_TOL: f64 = 1e-10;

fn encode_node(bit: bool) -> NodeState {
    if bit {
        NodeState::g(1)
    } else {
        NodeState::e(0)
    }
}

fn decode_node(node: NodeState) -> Option<bool> {
    match node {
        n if n == NodeState::g(1) => Some(true),
        n if n == NodeState::e(0) => Some(false),
        _ => None,
    }
}

/// `|0⟩ = |e⟩|0⟩`, `|1⟩ = |g⟩|1⟩` on each node.
pub fn computational_encode(q1: bool, q2: bool) -> RegisterState {
    RegisterState::basis(BasisConfig::new(encode_node(q1), encode_node(q2)))
        .expect("computational basis states are normalized and within the photon cap")
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decoded {
    Basis(bool, bool),
    /// Amplitudes over the four logical inputs, in `(q1, q2)` order.
    Superposition(Vec<((bool, bool), Complex64)>),
    NonComputational,
}

pub fn computational_decode(state: &RegisterState) -> Decoded {
    let mut logical = Vec::new();
    let mut leaked = 0.0;
    for (k, a) in state.amplitudes() {
        match (decode_node(k.node1), decode_node(k.node2)) {
            (Some(q1), Some(q2)) => logical.push(((q1, q2), *a)),
            _ => leaked += a.norm_sqr(),
        }
    }
    if leaked.sqrt() > LEAKAGE_TOL {
        return Decoded::NonComputational;
    }
    match logical.as_slice() {
        [((q1, q2), _)] => Decoded::Basis(*q1, *q2),
        _ => Decoded::Superposition(logical),
    }
}
