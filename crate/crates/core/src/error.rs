use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("objects live on different spaces")]
    SpaceMismatch,
    #[error("duplicate coordinate or covector name `{0}`")]
    DuplicateName(String),
    #[error("structure constants are not antisymmetric: c^{k}_{{{i},{j}}} != -c^{k}_{{{j},{i}}}")]
    NotAntisymmetric { k: usize, i: usize, j: usize },
    #[error("d(d {covector}) != 0: structure constants violate the Jacobi identity")]
    JacobiFailure { covector: String },
    #[error("non-constant coefficient `{0}` on a Lie frame space")]
    NonConstantOnLieFrame(String),
    #[error("form degree {degree} exceeds dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("interior product of a 0-form")]
    InteriorOfFunction,
    #[error("denominator of {0} vanishes at the evaluation point")]
    PoleAtPoint(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("type ({h},{k}) requires dimension {}, got {n}", 2 * h + 2 * k + 2)]
    InvalidType { h: usize, k: usize, n: usize },
    #[error("at least one sample point is required")]
    NoSamplePoints,
    #[error("expected a 1-form, got degree {0}")]
    NotOneForm(usize),
    #[error("the Reeb system is inconsistent over the function field")]
    ReebInconsistent,
    #[error("the Reeb system has a {0}-dimensional solution space")]
    ReebNonUnique(usize),
    #[error("Reeb post-check failed: {0}")]
    ReebPostCheck(String),
    #[error("frame {label} has generic rank {actual}, expected {expected}")]
    FrameRank { label: String, expected: usize, actual: usize },
    #[error("metric is not symmetric")]
    NotSymmetric,
    #[error("metric is degenerate: {0}")]
    DegenerateMetric(String),
    #[error("endomorphism is not a contact pair structure: {0}")]
    NotAStructure(String),
    #[error("complex structure check failed: {0}")]
    NotComplex(String),
    #[error("metric is not associated: {0}")]
    NotAssociated(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
