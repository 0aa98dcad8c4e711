use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Photon numbers above this are rejected by default.
pub const DEFAULT_MAX_PHOTONS: u32 = 3;
/// Allowed deviation of `Σ|a|²` from 1.
pub const NORM_TOL: f64 = 1e-12;
/// Amplitudes with modulus at or below this are dropped.
const PRUNE_TOL: f64 = 1e-15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Ground,
    Excited,
}

impl Atom {
    fn letter(self) -> char {
        match self {
            Atom::Ground => 'g',
            Atom::Excited => 'e',
        }
    }
}

/// Atom plus cavity photon number of one node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeState {
    pub atom: Atom,
    pub photons: u32,
}

impl NodeState {
    pub const fn new(atom: Atom, photons: u32) -> Self {
        Self { atom, photons }
    }

    pub const fn g(photons: u32) -> Self {
        Self::new(Atom::Ground, photons)
    }

    pub const fn e(photons: u32) -> Self {
        Self::new(Atom::Excited, photons)
    }

    /// `[atom == e] + n`.
    pub fn excitation(&self) -> u32 {
        self.photons + u32::from(self.atom == Atom::Excited)
    }
}

impl fmt::Display for NodeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.atom.letter(), self.photons)
    }
}

impl FromStr for NodeState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let atom = match chars.next() {
            Some('g') => Atom::Ground,
            Some('e') => Atom::Excited,
            _ => return Err(Error::parse("node state", s, "expected 'g' or 'e' followed by a photon count")),
        };
        let photons = chars
            .as_str()
            .parse()
            .map_err(|_| Error::parse("node state", s, "bad photon count"))?;
        Ok(Self { atom, photons })
    }
}

/// Product configuration `|a1⟩|n1⟩ ⊗ |a2⟩|n2⟩`, ordered by `(a1, n1, a2, n2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisConfig {
    pub node1: NodeState,
    pub node2: NodeState,
}

impl BasisConfig {
    pub const fn new(node1: NodeState, node2: NodeState) -> Self {
        Self { node1, node2 }
    }

    pub fn max_photons(&self) -> u32 {
        self.node1.photons.max(self.node2.photons)
    }
}

/// Labels look like `g1.e0`.
impl fmt::Display for BasisConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.node1, self.node2)
    }
}

impl FromStr for BasisConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('.')
            .ok_or_else(|| Error::parse("basis label", s, "expected two dot-separated node states"))?;
        Ok(Self::new(a.parse()?, b.parse()?))
    }
}

/// Normalized superposition over two-node basis configurations.
#[derive(Clone, Debug, PartialEq)]
pub struct RegisterState {
    amplitudes: BTreeMap<BasisConfig, Complex64>,
    max_photons: u32,
}

impl RegisterState {
    pub fn basis(config: BasisConfig) -> Result<Self> {
        Self::from_amplitudes([(config, Complex64::new(1.0, 0.0))])
    }

    /// Sums amplitudes of repeated configurations, drops zeros, and checks
    /// normalization and the default photon cap.
    pub fn from_amplitudes(terms: impl IntoIterator<Item = (BasisConfig, Complex64)>) -> Result<Self> {
        Self::with_cap(terms, DEFAULT_MAX_PHOTONS)
    }

    pub fn with_cap(terms: impl IntoIterator<Item = (BasisConfig, Complex64)>, max_photons: u32) -> Result<Self> {
        let mut amplitudes: BTreeMap<BasisConfig, Complex64> = BTreeMap::new();
        for (config, a) in terms {
            if config.max_photons() > max_photons {
                return Err(Error::PhotonCap {
                    step: None,
                    photons: config.max_photons(),
                    cap: max_photons,
                });
            }
            *amplitudes.entry(config).or_default() += a;
        }
        amplitudes.retain(|_, a| a.norm() > PRUNE_TOL);
        let norm: f64 = amplitudes.values().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            amplitudes,
            max_photons,
        })
    }

    /// `Σ_k c_k |ψ_k⟩`; the result must be normalized.
    pub fn linear_combination<'a>(terms: impl IntoIterator<Item = (Complex64, &'a RegisterState)>) -> Result<Self> {
        let mut cap = DEFAULT_MAX_PHOTONS;
        let mut acc = Vec::new();
        for (c, state) in terms {
            cap = cap.max(state.max_photons);
            acc.extend(state.amplitudes.iter().map(|(k, a)| (*k, c * a)));
        }
        Self::with_cap(acc, cap)
    }

    pub(crate) fn from_permuted(amplitudes: BTreeMap<BasisConfig, Complex64>, max_photons: u32) -> Self {
        Self {
            amplitudes,
            max_photons,
        }
    }

    pub fn amplitudes(&self) -> &BTreeMap<BasisConfig, Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, config: &BasisConfig) -> Complex64 {
        self.amplitudes.get(config).copied().unwrap_or_default()
    }

    pub fn max_photons(&self) -> u32 {
        self.max_photons
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    /// The single configuration of a basis state, if this is one.
    pub fn as_basis(&self) -> Option<BasisConfig> {
        match self.amplitudes.len() {
            1 => self.amplitudes.keys().next().copied(),
            _ => None,
        }
    }

    /// Largest amplitude difference over the union of supports.
    pub fn distance(&self, other: &RegisterState) -> f64 {
        self.amplitudes
            .keys()
            .chain(other.amplitudes.keys())
            .map(|k| (self.amplitude(k) - other.amplitude(k)).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for RegisterState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in &self.amplitudes {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if (a - Complex64::new(1.0, 0.0)).norm() < NORM_TOL {
                write!(f, "|{k}⟩")?;
            } else {
                write!(f, "({a})|{k}⟩")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        let c = BasisConfig::new(NodeState::g(1), NodeState::e(0));
        assert_eq!(c.to_string(), "g1.e0");
        assert_eq!("g1.e0".parse::<BasisConfig>().unwrap(), c);
        assert!("x1.e0".parse::<BasisConfig>().is_err());
        assert!("g1e0".parse::<BasisConfig>().is_err());
        assert!("g.e0".parse::<BasisConfig>().is_err());
    }

    #[test]
    fn canonical_order() {
        let mut v: Vec<BasisConfig> = ["e0.e0", "g1.g1", "g1.e0", "e0.g1", "g0.g2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        v.sort();
        let labels: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        assert_eq!(labels, ["g0.g2", "g1.g1", "g1.e0", "e0.g1", "e0.e0"]);
    }

    #[test]
    fn construction_checks() {
        let c = BasisConfig::new(NodeState::g(4), NodeState::e(0));
        assert!(matches!(RegisterState::basis(c), Err(Error::PhotonCap { .. })));
        let c = BasisConfig::new(NodeState::g(1), NodeState::e(0));
        let half = Complex64::new(0.5, 0.0);
        assert!(matches!(
            RegisterState::from_amplitudes([(c, half)]),
            Err(Error::NotNormalized(_))
        ));
        let s = RegisterState::from_amplitudes([(c, half), (c, half)]).unwrap();
        assert_eq!(s.as_basis(), Some(c));
    }

    #[test]
    fn excitation_counts_atom_and_photons() {
        assert_eq!(NodeState::e(2).excitation(), 3);
        assert_eq!(NodeState::g(0).excitation(), 0);
    }
}
