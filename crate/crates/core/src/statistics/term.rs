use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A model term together with its fixed shape parameter, if it has one.
///
/// Mode conventions: for `TwoPaths*`, `AltKCycles*` and `AltK4Cycles*` the
/// suffix names the mode the two-paths are *centred* on (so the `A` variants
/// sum over pairs of B-nodes). For stars, degree terms and the node-power
/// terms the suffix names the mode being *summed over*.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term {
    Edges,
    TwoPathsA,
    TwoPathsB,
    /// Two-stars centred on A-nodes.
    B1Star2,
    /// Two-stars centred on B-nodes.
    B2Star2,
    AltStarsA(f64),
    AltStarsB(f64),
    /// Geometrically weighted degree of A-nodes with fixed decay.
    GwDegreeA(f64),
    GwDegreeB(f64),
    AltKCyclesA(f64),
    AltKCyclesB(f64),
    AltK4CyclesA(f64),
    AltK4CyclesB(f64),
    FourCycles,
    FourCyclesNodePowerA(f64),
    FourCyclesNodePowerB(f64),
    /// Node-power summed over both modes, equal to the A plus the B variant.
    FourCyclesNodePowerSum(f64),
}

/// Shape parameter family of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    None,
    /// Alternating decay, `lambda > 1`.
    Lambda,
    /// Geometric decay, `decay >= 0`.
    Decay,
    /// Node-power exponent, `0 < alpha <= 1`.
    Alpha,
}

const KIND_NAMES: [&str; 17] = [
    "Edges",
    "TwoPathsA",
    "TwoPathsB",
    "B1Star2",
    "B2Star2",
    "AltStarsA",
    "AltStarsB",
    "GwDegreeA",
    "GwDegreeB",
    "AltKCyclesA",
    "AltKCyclesB",
    "AltK4CyclesA",
    "AltK4CyclesB",
    "FourCycles",
    "FourCyclesNodePowerA",
    "FourCyclesNodePowerB",
    "FourCyclesNodePowerSum",
];

impl Term {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Term::Edges => "Edges",
            Term::TwoPathsA => "TwoPathsA",
            Term::TwoPathsB => "TwoPathsB",
            Term::B1Star2 => "B1Star2",
            Term::B2Star2 => "B2Star2",
            Term::AltStarsA(_) => "AltStarsA",
            Term::AltStarsB(_) => "AltStarsB",
            Term::GwDegreeA(_) => "GwDegreeA",
            Term::GwDegreeB(_) => "GwDegreeB",
            Term::AltKCyclesA(_) => "AltKCyclesA",
            Term::AltKCyclesB(_) => "AltKCyclesB",
            Term::AltK4CyclesA(_) => "AltK4CyclesA",
            Term::AltK4CyclesB(_) => "AltK4CyclesB",
            Term::FourCycles => "FourCycles",
            Term::FourCyclesNodePowerA(_) => "FourCyclesNodePowerA",
            Term::FourCyclesNodePowerB(_) => "FourCyclesNodePowerB",
            Term::FourCyclesNodePowerSum(_) => "FourCyclesNodePowerSum",
        }
    }

    pub fn shape(&self) -> Option<f64> {
        match *self {
            Term::AltStarsA(s)
            | Term::AltStarsB(s)
            | Term::GwDegreeA(s)
            | Term::GwDegreeB(s)
            | Term::AltKCyclesA(s)
            | Term::AltKCyclesB(s)
            | Term::AltK4CyclesA(s)
            | Term::AltK4CyclesB(s)
            | Term::FourCyclesNodePowerA(s)
            | Term::FourCyclesNodePowerB(s)
            | Term::FourCyclesNodePowerSum(s) => Some(s),
            _ => None,
        }
    }

    pub fn shape_kind(&self) -> ShapeKind {
        shape_kind_of(self.kind_name())
    }

    /// Builds a term from its kind name and shape parameter, validating both.
    pub fn from_parts(kind: &str, shape: Option<f64>) -> Result<Term> {
        let s = shape.unwrap_or(f64::NAN);
        let term = match kind {
            "Edges" => Term::Edges,
            "TwoPathsA" => Term::TwoPathsA,
            "TwoPathsB" => Term::TwoPathsB,
            "B1Star2" => Term::B1Star2,
            "B2Star2" => Term::B2Star2,
            "AltStarsA" => Term::AltStarsA(s),
            "AltStarsB" => Term::AltStarsB(s),
            "GwDegreeA" => Term::GwDegreeA(s),
            "GwDegreeB" => Term::GwDegreeB(s),
            "AltKCyclesA" => Term::AltKCyclesA(s),
            "AltKCyclesB" => Term::AltKCyclesB(s),
            "AltK4CyclesA" => Term::AltK4CyclesA(s),
            "AltK4CyclesB" => Term::AltK4CyclesB(s),
            "FourCycles" => Term::FourCycles,
            "FourCyclesNodePowerA" => Term::FourCyclesNodePowerA(s),
            "FourCyclesNodePowerB" => Term::FourCyclesNodePowerB(s),
            "FourCyclesNodePowerSum" => Term::FourCyclesNodePowerSum(s),
            other => return Err(Error::UnknownTerm(other.to_string())),
        };
        if term.shape_kind() == ShapeKind::None && shape.is_some() {
            return Err(Error::UnknownTerm(format!(
                "{kind} takes no shape parameter"
            )));
        }
        term.validate()?;
        Ok(term)
    }

    pub fn validate(&self) -> Result<()> {
        let Some(shape) = self.shape() else {
            return Ok(());
        };
        let ok = match self.shape_kind() {
            ShapeKind::Lambda => shape > 1.0 && shape.is_finite(),
            ShapeKind::Decay => shape >= 0.0 && shape.is_finite(),
            ShapeKind::Alpha => shape > 0.0 && shape <= 1.0,
            ShapeKind::None => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidShape {
                term: self.kind_name(),
                shape,
            })
        }
    }

    /// The same statistic with the modes exchanged.
    pub fn mode_swapped(&self) -> Term {
        match *self {
            Term::Edges => Term::Edges,
            Term::TwoPathsA => Term::TwoPathsB,
            Term::TwoPathsB => Term::TwoPathsA,
            Term::B1Star2 => Term::B2Star2,
            Term::B2Star2 => Term::B1Star2,
            Term::AltStarsA(s) => Term::AltStarsB(s),
            Term::AltStarsB(s) => Term::AltStarsA(s),
            Term::GwDegreeA(s) => Term::GwDegreeB(s),
            Term::GwDegreeB(s) => Term::GwDegreeA(s),
            Term::AltKCyclesA(s) => Term::AltKCyclesB(s),
            Term::AltKCyclesB(s) => Term::AltKCyclesA(s),
            Term::AltK4CyclesA(s) => Term::AltK4CyclesB(s),
            Term::AltK4CyclesB(s) => Term::AltK4CyclesA(s),
            Term::FourCycles => Term::FourCycles,
            Term::FourCyclesNodePowerA(s) => Term::FourCyclesNodePowerB(s),
            Term::FourCyclesNodePowerB(s) => Term::FourCyclesNodePowerA(s),
            Term::FourCyclesNodePowerSum(s) => Term::FourCyclesNodePowerSum(s),
        }
    }

    /// Every term kind at its conventional default shape
    /// (`lambda = 2`, `alpha = 0.5`, `decay = 1`).
    pub fn catalogue() -> Vec<Term> {
        KIND_NAMES
            .iter()
            .map(|name| {
                let shape = match shape_kind_of(name) {
                    ShapeKind::None => None,
                    ShapeKind::Lambda => Some(2.0),
                    ShapeKind::Decay => Some(1.0),
                    ShapeKind::Alpha => Some(0.5),
                };
                Term::from_parts(name, shape).expect("catalogue defaults are valid")
            })
            .collect()
    }

    pub fn kind_names() -> &'static [&'static str] {
        &KIND_NAMES
    }

    /// Key used to detect duplicate terms in a model.
    pub(crate) fn identity(&self) -> (&'static str, u64) {
        (self.kind_name(), self.shape().map_or(0, f64::to_bits))
    }
}

fn shape_kind_of(name: &str) -> ShapeKind {
    match name {
        "AltStarsA" | "AltStarsB" | "AltKCyclesA" | "AltKCyclesB" | "AltK4CyclesA"
        | "AltK4CyclesB" => ShapeKind::Lambda,
        "GwDegreeA" | "GwDegreeB" => ShapeKind::Decay,
        "FourCyclesNodePowerA" | "FourCyclesNodePowerB" | "FourCyclesNodePowerSum" => {
            ShapeKind::Alpha
        }
        _ => ShapeKind::None,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape() {
            Some(shape) => write!(f, "{}[{}]", self.kind_name(), shape),
            None => f.write_str(self.kind_name()),
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    /// Parses `Kind` or `Kind[shape]`, e.g. `AltKCyclesA[2]`.
    fn from_str(s: &str) -> Result<Term> {
        let s = s.trim();
        match s.find('[') {
            None => {
                if shape_kind_of(s) != ShapeKind::None {
                    return Err(Error::UnknownTerm(format!(
                        "{s} needs a shape parameter, e.g. {s}[2]"
                    )));
                }
                Term::from_parts(s, None)
            }
            Some(open) => {
                let kind = s[..open].trim();
                let rest = &s[open + 1..];
                let close = rest
                    .strip_suffix(']')
                    .ok_or_else(|| Error::UnknownTerm(s.to_string()))?;
                let shape: f64 = close
                    .trim()
                    .parse()
                    .map_err(|_| Error::UnknownTerm(s.to_string()))?;
                Term::from_parts(kind, Some(shape))
            }
        }
    }
}
