//! Points, links and link instances in the Euclidean plane.
//!
//! All higher-level modules address links by their position in
//! [`LinkInstance::links`]; the externally supplied [`LinkId`] is only used at
//! the serialization boundary.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Externally supplied link identifier, preserved through every pipeline.
pub type LinkId = u64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn scaled(self, s: f64) -> Self {
        Point::new(self.x * s, self.y * s)
    }
}

/// Euclidean distance.
pub fn distance(a: Point, b: Point) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub id: LinkId,
    pub sender: Point,
    pub receiver: Point,
}

impl Link {
    pub const fn new(id: LinkId, sender: Point, receiver: Point) -> Self {
        Link { id, sender, receiver }
    }

    pub fn length(&self) -> f64 {
        distance(self.sender, self.receiver)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Only the sender transmits; `d_vw = d(s_v, r_w)`.
    Directed,
    /// Both endpoints transmit; `d_vw` is the closest node pair.
    Bidirectional,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Directed => "directed",
            ModelKind::Bidirectional => "bidirectional",
        })
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "directed" => Ok(ModelKind::Directed),
            "bidirectional" => Ok(ModelKind::Bidirectional),
            other => Err(Error::Parse(format!("unknown model {other:?}"))),
        }
    }
}

/// A broken [`LinkInstance`] invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Empty,
    NonFiniteCoordinate(LinkId),
    ZeroLength(LinkId),
    DuplicateId(LinkId),
    AlphaTooSmall(f64),
    BetaTooSmall(f64),
    NegativeNoise(f64),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "instance must contain at least one link"),
            Violation::NonFiniteCoordinate(id) => write!(f, "link {id}: coordinates must be finite"),
            Violation::ZeroLength(id) => write!(f, "link {id}: link length must be positive"),
            Violation::DuplicateId(id) => write!(f, "link id {id} is not unique"),
            Violation::AlphaTooSmall(a) => write!(f, "alpha must exceed 2 (got {a})"),
            Violation::BetaTooSmall(b) => write!(f, "beta must be at least 1 (got {b})"),
            Violation::NegativeNoise(n) => write!(f, "noise must be nonnegative (got {n})"),
        }
    }
}

/// The link set together with the physical model parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkInstance {
    links: Vec<Link>,
    lengths: Vec<f64>,
    index: HashMap<LinkId, usize>,
    pub model: ModelKind,
    pub alpha: f64,
    pub beta: f64,
    pub noise: f64,
}

/// Every invariant violated by the given parameters.
pub fn validate(links: &[Link], alpha: f64, beta: f64, noise: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    if links.is_empty() {
        out.push(Violation::Empty);
    }
    let mut seen = HashMap::new();
    for l in links {
        let coords = [l.sender.x, l.sender.y, l.receiver.x, l.receiver.y];
        if coords.iter().any(|c| !c.is_finite()) {
            out.push(Violation::NonFiniteCoordinate(l.id));
        } else if !(l.length() > 0.0) {
            out.push(Violation::ZeroLength(l.id));
        }
        if seen.insert(l.id, ()).is_some() {
            out.push(Violation::DuplicateId(l.id));
        }
    }
    // NaN parameters fail these comparisons too.
    if !(alpha > 2.0) || !alpha.is_finite() {
        out.push(Violation::AlphaTooSmall(alpha));
    }
    if !(beta >= 1.0) || !beta.is_finite() {
        out.push(Violation::BetaTooSmall(beta));
    }
    if !(noise >= 0.0) || !noise.is_finite() {
        out.push(Violation::NegativeNoise(noise));
    }
    out
}

impl LinkInstance {
    pub fn new(links: Vec<Link>, model: ModelKind, alpha: f64, beta: f64, noise: f64) -> Result<Self> {
        let violations = validate(&links, alpha, beta, noise);
        if !violations.is_empty() {
            return Err(Error::InvalidInstance(violations));
        }
        let lengths = links.iter().map(Link::length).collect();
        let index = links.iter().enumerate().map(|(i, l)| (l.id, i)).collect();
        Ok(LinkInstance { links, lengths, index, model, alpha, beta, noise })
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn link(&self, i: usize) -> &Link {
        &self.links[i]
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn length(&self, i: usize) -> f64 {
        self.lengths[i]
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn id(&self, i: usize) -> LinkId {
        self.links[i].id
    }

    pub fn index_of(&self, id: LinkId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn ids(&self, set: &[usize]) -> Vec<LinkId> {
        set.iter().map(|&i| self.id(i)).collect()
    }

    /// Resolves ids to indices, failing on the first unknown id.
    pub fn indices(&self, ids: &[LinkId]) -> Result<Vec<usize>> {
        ids.iter().map(|&id| self.index_of(id).ok_or(Error::UnknownLink(id))).collect()
    }

    /// Asymmetric distance `d_{from,to}` under the instance's model.
    pub fn asym_distance(&self, from: usize, to: usize) -> f64 {
        let (v, w) = (&self.links[from], &self.links[to]);
        match self.model {
            ModelKind::Directed => distance(v.sender, w.receiver),
            ModelKind::Bidirectional => distance(v.sender, w.receiver)
                .min(distance(v.sender, w.sender))
                .min(distance(v.receiver, w.receiver))
                .min(distance(v.receiver, w.sender)),
        }
    }

    /// Ratio of the longest to the shortest link length.
    pub fn length_diversity(&self) -> f64 {
        let max = self.lengths.iter().copied().fold(f64::MIN, f64::max);
        let min = self.lengths.iter().copied().fold(f64::MAX, f64::min);
        max / min
    }

    pub fn with_model(&self, model: ModelKind) -> Self {
        LinkInstance { model, ..self.clone() }
    }

    pub fn with_noise(&self, noise: f64) -> Result<Self> {
        LinkInstance::new(self.links.clone(), self.model, self.alpha, self.beta, noise)
    }

    /// Same instance with every coordinate multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        let links = self.links.iter().map(|l| Link::new(l.id, l.sender.scaled(s), l.receiver.scaled(s))).collect();
        LinkInstance::new(links, self.model, self.alpha, self.beta, self.noise)
    }

    /// Sub-instance on the given link indices, in that order.
    pub fn restrict(&self, set: &[usize]) -> Result<Self> {
        let links = set.iter().map(|&i| self.links[i]).collect();
        LinkInstance::new(links, self.model, self.alpha, self.beta, self.noise)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LinkRecord {
    id: LinkId,
    sx: f64,
    sy: f64,
    rx: f64,
    ry: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct InstanceRecord {
    alpha: f64,
    beta: f64,
    noise: f64,
    model: ModelKind,
    links: Vec<LinkRecord>,
}

impl Serialize for LinkInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InstanceRecord {
            alpha: self.alpha,
            beta: self.beta,
            noise: self.noise,
            model: self.model,
            links: self
                .links
                .iter()
                .map(|l| LinkRecord { id: l.id, sx: l.sender.x, sy: l.sender.y, rx: l.receiver.x, ry: l.receiver.y })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinkInstance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = InstanceRecord::deserialize(d)?;
        let links =
            rec.links.into_iter().map(|l| Link::new(l.id, Point::new(l.sx, l.sy), Point::new(l.rx, l.ry))).collect();
        LinkInstance::new(links, rec.model, rec.alpha, rec.beta, rec.noise).map_err(serde::de::Error::custom)
    }
}

impl LinkInstance {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serialization is infallible")
    }
}
