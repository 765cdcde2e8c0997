use thiserror::Error;

/// Domain errors raised by the library.
///
/// Every variant has a stable machine-readable [`Error::code`] used by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("no two-sided identity element in the multiplication table")]
    NoIdentity,
    #[error("not closed: {0}")]
    NonClosed(String),
    #[error("group of order {order} exceeds the configured bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("element {0} is not in the group")]
    ElementNotInGroup(usize),
    #[error("cocycle identity fails at (g, h, k) = ({0}, {1}, {2})")]
    CocycleIdentityFails(usize, usize, usize),
    #[error("cocycle is not unital at element {0}")]
    NotUnital(usize),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("objects live over different groups")]
    GroupMismatch,
    #[error("normalization infeasible for a cocycle of class order {0}")]
    NormalizationInfeasible(u64),
    #[error("section characters carry different twists")]
    TwistMismatch,
    #[error("decomposition is not integral: {0}")]
    NotIntegral(String),
    #[error("family not closed under conjugation: {0}")]
    FamilyNotClosed(String),
    #[error("isotropy group of cell {0} is not in the coefficient family")]
    IsotropyNotInFamily(String),
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("incidence data gives a nonzero square differential in degree {0}")]
    NonSquareZero(usize),
    #[error("not a cochain complex: {0}")]
    NotAComplex(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonAssociative(..) => "NonAssociative",
            Error::NoIdentity => "NoIdentity",
            Error::NonClosed(_) => "NonClosed",
            Error::GroupTooLarge { .. } => "GroupTooLarge",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::ElementNotInGroup(_) => "ElementNotInGroup",
            Error::CocycleIdentityFails(..) => "CocycleIdentityFails",
            Error::NotUnital(_) => "NotUnital",
            Error::Mismatch(_) => "Mismatch",
            Error::GroupMismatch => "GroupMismatch",
            Error::NormalizationInfeasible(_) => "NormalizationInfeasible",
            Error::TwistMismatch => "TwistMismatch",
            Error::NotIntegral(_) => "NotIntegral",
            Error::FamilyNotClosed(_) => "FamilyNotClosed",
            Error::IsotropyNotInFamily(_) => "IsotropyNotInFamily",
            Error::NotASubcomplex(_) => "NotASubcomplex",
            Error::NonSquareZero(_) => "NonSquareZero",
            Error::NotAComplex(_) => "NotAComplex",
            Error::InvalidComplex(_) => "InvalidComplex",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
