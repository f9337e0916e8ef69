use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for {what} (size {size})")]
    OutOfRange { what: &'static str, index: usize, size: usize },
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("axiom violations: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Axioms(Vec<Violation>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("enumeration of {what} exceeded the cell limit of {limit} (set DBLCAT_MAX_CELLS to raise it)")]
    TooLarge { what: String, limit: usize },
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

/// Which law a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// a composite has the wrong source or target
    Endpoints,
    /// an identity has wrong endpoints
    Identity,
    LeftUnit,
    RightUnit,
    Associativity,
    PreservesSource,
    PreservesTarget,
    PreservesIdentity,
    PreservesComposition,
    /// s∘i or t∘i is not the identity
    SourceOfUnit,
    TargetOfUnit,
    /// s∘c ≠ s∘π₁ or t∘c ≠ t∘π₂
    SourceOfComposite,
    TargetOfComposite,
    HorizontalUnit,
    HorizontalAssociativity,
    /// c fails to be a functor, i.e. middle-four interchange fails
    Interchange,
    /// a structure map has the wrong source or target category
    Shape,
    /// a natural transformation component fails naturality
    Naturality,
    SimplicialIdentity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Endpoints => "composite endpoints",
            Axiom::Identity => "identity endpoints",
            Axiom::LeftUnit => "left unit",
            Axiom::RightUnit => "right unit",
            Axiom::Associativity => "associativity",
            Axiom::PreservesSource => "preserves source",
            Axiom::PreservesTarget => "preserves target",
            Axiom::PreservesIdentity => "preserves identities",
            Axiom::PreservesComposition => "preserves composition",
            Axiom::SourceOfUnit => "source of unit",
            Axiom::TargetOfUnit => "target of unit",
            Axiom::SourceOfComposite => "source of composite",
            Axiom::TargetOfComposite => "target of composite",
            Axiom::HorizontalUnit => "horizontal unit",
            Axiom::HorizontalAssociativity => "horizontal associativity",
            Axiom::Interchange => "interchange",
            Axiom::Shape => "shape",
            Axiom::Naturality => "naturality",
            Axiom::SimplicialIdentity => "simplicial identity",
        };
        f.write_str(s)
    }
}

/// One failed law, with the structure it was found in and a witness tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub location: String,
    pub axiom: Axiom,
    pub witness: String,
}

impl Violation {
    pub fn new(location: impl Into<String>, axiom: Axiom, witness: impl Into<String>) -> Self {
        Violation { location: location.into(), axiom, witness: witness.into() }
    }

    pub(crate) fn relocated(mut self, prefix: &str) -> Self {
        self.location =
            if self.location.is_empty() { prefix.to_string() } else { format!("{prefix}.{}", self.location) };
        self
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.location, self.axiom, self.witness)
    }
}
