use thiserror::Error;

/// Errors raised by the algebra kernels and the physical system builders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("signature error: {0}")]
    Signature(String),

    #[error("exponent has nonzero body {0}; only nilpotent exponents are supported")]
    NonNilpotent(String),

    #[error("basis error: {0}")]
    Basis(String),

    #[error("pairing error: no Gram matrix supplied for {0}")]
    Pairing(String),

    #[error("coupling omega must be nonzero")]
    ZeroCoupling,

    #[error("strong damping: |omega|^2 = {omega_sq} < delta^2 = {delta_sq}, Omega is imaginary")]
    StrongDamping { omega_sq: f64, delta_sq: f64 },

    #[error("degenerate point: |omega|^2 = delta^2 = {0}, Omega = 0")]
    DegenerateOmega(f64),

    #[error("not degenerate: Omega = {0} is nonzero")]
    NotDegenerate(f64),

    #[error("invalid argument: {0}")]
    Argument(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Signature(_) => "SignatureError",
            Error::NonNilpotent(_) => "NonNilpotentError",
            Error::Basis(_) => "BasisError",
            Error::Pairing(_) => "PairingError",
            Error::ZeroCoupling => "ZeroCoupling",
            Error::StrongDamping { .. } => "StrongDamping",
            Error::DegenerateOmega(_) => "DegenerateOmega",
            Error::NotDegenerate(_) => "NotDegenerate",
            Error::Argument(_) => "ArgumentError",
        }
    }

    /// True for errors caused by the damping regime of the physical parameters.
    pub fn is_regime_error(&self) -> bool {
        matches!(
            self,
            Error::ZeroCoupling
                | Error::StrongDamping { .. }
                | Error::DegenerateOmega(_)
                | Error::NotDegenerate(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
