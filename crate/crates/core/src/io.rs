//! JSON file formats.
//!
//! An instance file describes an injection `f: n×A → n×B`:
//!
//! ```json
//! {"n": 2, "A": ["1", "2"], "B": ["x", "y", "z"], "mode": "long",
//!  "map": [[[0, "1"], [1, "x"]], [[1, "1"], [0, "x"]], ...]}
//! ```
//!
//! Law inputs list their carrier sets and maps by element label. Where a map
//! runs between disjoint unions, each element's summand is read off from the
//! set it belongs to, and copies in `m × C` are written `[copy, c]`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{product, Ident, Mode, Sum, Witness, WitnessError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error("{0}")]
    Invalid(String),
}

pub type Pairs<D, C> = Vec<(D, C)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(default = "long")]
    pub mode: Mode,
    pub map: Pairs<(usize, String), (usize, String)>,
}

fn long() -> Mode {
    Mode::Long
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_witness<A: Ident, B: Ident>(
        n: usize,
        a: &[A],
        b: &[B],
        mode: Mode,
        f: &Witness<(usize, A), (usize, B)>,
    ) -> Self {
        Instance {
            n,
            a: a.iter().map(Ident::label).collect(),
            b: b.iter().map(Ident::label).collect(),
            mode,
            map: f.pairs().map(|((s, x), (t, y))| ((*s, x.label()), (*t, y.label()))).collect(),
        }
    }

    pub fn witness(&self) -> Result<Witness<(usize, String), (usize, String)>, FormatError> {
        if self.n == 0 {
            return Err(FormatError::Invalid("n must be at least 1".into()));
        }
        Ok(Witness::new(product(self.n, &self.a), product(self.n, &self.b), self.map.iter().cloned())?)
    }
}

/// `[[a, b], ...]` for a witness.
pub fn pairs_json<D: Ident, C: Ident>(w: &Witness<D, C>) -> serde_json::Value {
    serde_json::Value::Array(
        w.pairs().map(|(d, c)| serde_json::json!([d.label(), c.label()])).collect(),
    )
}

/// An element of `X + m×C` as written in files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Elem {
    Plain(String),
    Copy(usize, String),
}

fn tag_plain(x: &str, left: &BTreeSet<&String>, right: &BTreeSet<&String>, what: &str) -> Result<Sum<String, String>, FormatError> {
    match (left.contains(&x.to_string()), right.contains(&x.to_string())) {
        (true, false) => Ok(Sum::Left(x.to_string())),
        (false, true) => Ok(Sum::Right(x.to_string())),
        (true, true) => Err(FormatError::Invalid(format!("{x} is in both summands of the {what}"))),
        (false, false) => Err(FormatError::Invalid(format!("{x} is in neither summand of the {what}"))),
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct CbInput {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    pub f: Pairs<String, String>,
    pub g: Pairs<String, String>,
}

impl CbInput {
    pub fn witnesses(&self) -> Result<(Witness<String, String>, Witness<String, String>), FormatError> {
        Ok((
            Witness::new(self.a.clone(), self.b.clone(), self.f.clone())?,
            Witness::new(self.b.clone(), self.a.clone(), self.g.clone())?,
        ))
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct SubtractInput {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "C")]
    pub c: Vec<String>,
    pub h: Pairs<String, String>,
}

type Tagged = Sum<String, String>;

impl SubtractInput {
    pub fn witness(&self) -> Result<Witness<Tagged, Tagged>, FormatError> {
        let (a, b, c): (BTreeSet<_>, BTreeSet<_>, BTreeSet<_>) =
            (self.a.iter().collect(), self.b.iter().collect(), self.c.iter().collect());
        let dom = self.a.iter().cloned().map(Sum::Left).chain(self.c.iter().cloned().map(Sum::Right)).collect();
        let cod = self.b.iter().cloned().map(Sum::Left).chain(self.c.iter().cloned().map(Sum::Right)).collect();
        let pairs = self
            .h
            .iter()
            .map(|(x, y)| Ok((tag_plain(x, &a, &c, "domain")?, tag_plain(y, &b, &c, "codomain")?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(Witness::new(dom, cod, pairs)?)
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct SubtractMultiInput {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "C")]
    pub c: Vec<String>,
    pub h: Pairs<Elem, Elem>,
}

type Copies = Sum<String, (usize, String)>;

impl SubtractMultiInput {
    pub fn witness(&self) -> Result<Witness<Copies, Copies>, FormatError> {
        let side = |base: &[String], copies: usize| -> Vec<Copies> {
            base.iter().cloned().map(Sum::Left).chain(product(copies, &self.c).into_iter().map(Sum::Right)).collect()
        };
        let tag = |e: &Elem| match e {
            Elem::Plain(x) => Sum::Left(x.clone()),
            Elem::Copy(i, x) => Sum::Right((*i, x.clone())),
        };
        Ok(Witness::new(side(&self.a, self.m), side(&self.b, self.n), self.h.iter().map(|(x, y)| (tag(x), tag(y))))?)
    }
}

/// `m×A ↔ n×B`, for the division laws.
#[derive(Clone, Debug, Deserialize)]
pub struct ProductInput {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    pub map: Pairs<(usize, String), (usize, String)>,
}

impl ProductInput {
    pub fn witness(&self) -> Result<Witness<(usize, String), (usize, String)>, FormatError> {
        Ok(Witness::new(product(self.m, &self.a), product(self.n, &self.b), self.map.iter().cloned())?)
    }
}

/// `nA ⪯ nB` together with `B ⪯ A`.
#[derive(Clone, Debug, Deserialize)]
pub struct CancelInput {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    pub f: Pairs<(usize, String), (usize, String)>,
    pub g: Pairs<String, String>,
}

impl CancelInput {
    pub fn witnesses(
        &self,
    ) -> Result<(Witness<(usize, String), (usize, String)>, Witness<String, String>), FormatError> {
        Ok((
            Witness::new(product(self.n, &self.a), product(self.n, &self.b), self.f.iter().cloned())?,
            Witness::new(self.b.clone(), self.a.clone(), self.g.clone())?,
        ))
    }
}
