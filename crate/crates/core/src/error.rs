use thiserror::Error;

use crate::geometry::{LinkId, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", join_violations(.0))]
    InvalidInstance(Vec<Violation>),
    #[error("link {0} is not part of the instance")]
    UnknownLink(LinkId),
    #[error("link {0} appears in more than one slot")]
    OverlappingSlots(LinkId),
    #[error("schedule contains an empty slot")]
    EmptySlot,
    #[error("no explicit power given for link {0}")]
    MissingPower(LinkId),
    #[error("invalid power assignment: {0}")]
    InvalidPower(String),
    #[error("links {0} and {1} share a slot with infinite mutual affectance")]
    InfiniteAffectance(LinkId, LinkId),
    #[error("links {0} and {1} are not {2}-independent")]
    NotIndependent(LinkId, LinkId, f64),
    #[error("instance has {n} links, cap is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("operation requires zero noise")]
    NoiseUnsupported,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
