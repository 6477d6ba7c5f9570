use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not a unit quaternion: |q|^2 = {norm_sq}")]
    NotUnit { norm_sq: f64 },
    #[error("not a pure unit quaternion: real part {real}")]
    NotPure { real: f64 },
    #[error("base and direction are not orthogonal: <x,v> = {inner}")]
    NotOrthogonal { inner: f64 },
    #[error("point is not on the carrier hyperplane: <x,pole> = {inner}")]
    OffCarrier { inner: f64 },
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("degenerate polygon: area {area} below tolerance")]
    DegeneratePolygon { area: f64 },
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("need at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("point set is not contained in an open half-sphere")]
    NotHemispherical,
    #[error("point set is planar")]
    Planar,
    #[error("invalid polyhedron: {0}")]
    InvalidPolyhedron(String),
    #[error("edge length {edge} outside admissible interval (0, {max}) for {kind}")]
    EdgeLengthOutOfRange { kind: String, edge: f64, max: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("sampling failed after {0} attempts")]
    SamplingFailed(usize),
    #[error("invalid document at {location}: {message}")]
    Document { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
