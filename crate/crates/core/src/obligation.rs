use serde::Serialize;

/// A condition a construction relies on but does not certify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obligation {
    pub kind: ObligationKind,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObligationKind {
    /// The provider declined to supply a complex for a non-Dress stabilizer.
    Declined,
    /// A supplied complex is not known to be contractible.
    Contractibility,
    /// Mod-p acyclicity of a p-group fixed set.
    Acyclicity,
    /// Raising connectivity with free cells.
    Connectivity,
}

impl Obligation {
    pub fn new(kind: ObligationKind, detail: impl Into<String>) -> Self {
        Obligation { kind, detail: detail.into() }
    }
}
