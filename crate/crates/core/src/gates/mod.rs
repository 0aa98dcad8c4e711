//! Two-node register of "atom + cavity photon" qubits and the exchange /
//! inversion protocols that implement SWAP and CNOT.

mod encoding;
mod ops;
mod protocol;
mod state;

pub use encoding::{computational_decode, computational_encode, Decoded};
pub use ops::{exchange, invert_node, pi_op, Inversion};
pub use protocol::{
    builtin_protocols, cnot_protocol, run_protocol, swap_protocol, ProtocolRun, ProtocolScript, Step,
};
pub use state::{Atom, BasisConfig, NodeState, RegisterState, DEFAULT_MAX_PHOTONS, NORM_TOL};
