use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system {0}{1}")]
    InvalidType(char, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point lies on an affine wall")]
    WallPoint,
    #[error("elements are not Bruhat comparable")]
    NotComparable,
    #[error("division is not exact")]
    InexactDivision,
    #[error("rational function is not polynomial")]
    NotPolynomial,
    #[error("{0}")]
    Internal(String),
}
