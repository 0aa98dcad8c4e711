use super::ops::{exchange, pi_op, Inversion};
use super::state::RegisterState;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Step {
    Exchange,
    PiBoth,
    Pi1,
    Pi2,
}

impl Step {
    pub fn apply(self, state: &RegisterState) -> Result<RegisterState> {
        match self {
            Step::Exchange => Ok(exchange(state)),
            Step::PiBoth => pi_op(state, Inversion::Both),
            Step::Pi1 => pi_op(state, Inversion::Node1),
            Step::Pi2 => pi_op(state, Inversion::Node2),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Step::Exchange => "↔",
            Step::PiBoth => "π",
            Step::Pi1 => "π1",
            Step::Pi2 => "π2",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::Exchange => "exchange",
            Step::PiBoth => "pi",
            Step::Pi1 => "pi1",
            Step::Pi2 => "pi2",
        })
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exchange" | "swap-photons" | "<->" | "↔" => Ok(Step::Exchange),
            "pi" | "π" => Ok(Step::PiBoth),
            "pi1" | "π1" => Ok(Step::Pi1),
            "pi2" | "π2" => Ok(Step::Pi2),
            _ => Err(Error::parse("protocol step", s, "expected exchange, pi, pi1 or pi2")),
        }
    }
}

impl TryFrom<String> for Step {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Step> for String {
    fn from(step: Step) -> String {
        step.to_string()
    }
}

/// Non-empty sequence of operator steps, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ProtocolScript {
    steps: Vec<Step>,
}

impl ProtocolScript {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::domain("protocol script must contain at least one step"));
        }
        Ok(Self { steps })
    }

    /// Reads a JSON array of step names, e.g. `["exchange", "pi", "exchange"]`.
    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(serde_json::from_str(text)?)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl fmt::Display for ProtocolScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbols: Vec<_> = self.steps.iter().map(|s| s.symbol()).collect();
        f.write_str(&symbols.join(" "))
    }
}

/// SWAP: ↔ π ↔ π ↔.
pub fn swap_protocol() -> ProtocolScript {
    use Step::*;
    ProtocolScript {
        steps: vec![Exchange, PiBoth, Exchange, PiBoth, Exchange],
    }
}

/// CNOT with node 1 as control: ↔ π ↔ (π1 ↔ π2 ↔)×3 with the last ↔ replaced
/// by π ↔.
pub fn cnot_protocol() -> ProtocolScript {
    use Step::*;
    ProtocolScript {
        steps: vec![
            Exchange, PiBoth, Exchange, Pi1, Exchange, Pi2, Exchange, Pi1, Exchange, Pi2, Exchange, Pi1, Exchange,
            Pi2, PiBoth, Exchange,
        ],
    }
}

pub fn builtin_protocols() -> BTreeMap<&'static str, ProtocolScript> {
    BTreeMap::from([("CNOT", cnot_protocol()), ("SWAP", swap_protocol())])
}

#[derive(Clone, Debug)]
pub struct ProtocolRun {
    pub output: RegisterState,
    /// Input followed by the state after each step, when requested.
    pub trace: Option<Vec<RegisterState>>,
}

pub fn run_protocol(script: &ProtocolScript, state: &RegisterState, trace: bool) -> Result<ProtocolRun> {
    let mut states = trace.then(|| vec![state.clone()]);
    let mut current = state.clone();
    for (i, step) in script.steps.iter().enumerate() {
        current = step.apply(&current).map_err(|e| match e {
            Error::PhotonCap { photons, cap, .. } => Error::PhotonCap {
                step: Some(i + 1),
                photons,
                cap,
            },
            other => other,
        })?;
        if let Some(states) = states.as_mut() {
            states.push(current.clone());
        }
    }
    Ok(ProtocolRun {
        output: current,
        trace: states,
    })
}
