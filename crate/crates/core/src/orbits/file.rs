//! Orbit files.
//!
//! One orbit per line:
//!
//! ```text
//! # comment
//! <label>: [k_1,...,k_l] <coef> ; [k_1,...,k_l] <coef> ; ...
//! ```
//!
//! Each term is a root in simple-root coordinates (negative roots allowed)
//! and a rational coefficient written `p/q` or `p`. The orbit representative
//! is the sum of `coef · e_root` over the terms. Blank lines and lines
//! starting with `#` are ignored.

use std::path::Path;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{LieAlgebraData, LieElement};
use crate::linalg::{parse_pq, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSpec {
    pub label: String,
    pub terms: Vec<(Vec<i64>, Scalar)>,
}

impl OrbitSpec {
    pub fn element(&self, g: &LieAlgebraData) -> Result<LieElement> {
        let mut x = g.zero();
        for (root, c) in &self.terms {
            if root.len() != g.rank() {
                return Err(Error::Invalid(format!(
                    "orbit {:?}: root {root:?} has {} coordinates, {} has rank {}",
                    self.label,
                    root.len(),
                    g.id(),
                    g.rank()
                )));
            }
            let i = g
                .root_vector_index(root)
                .ok_or_else(|| Error::Invalid(format!("orbit {:?}: {root:?} is not a root of {}", self.label, g.id())))?;
            x.coords[i] += c;
        }
        if x.is_zero() {
            return Err(Error::Invalid(format!("orbit {:?}: representative is zero", self.label)));
        }
        Ok(x)
    }
}

pub fn parse_orbit_file(text: &str) -> Result<Vec<OrbitSpec>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |msg: String| Error::OrbitFile { line, msg };
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (label, rest) = body.split_once(':').ok_or_else(|| err("expected `label:`".into()))?;
        let label = label.trim();
        if label.is_empty() {
            return Err(err("empty label".into()));
        }
        let mut terms = Vec::new();
        for term in rest.split(';') {
            let term = term.trim();
            let open = term.strip_prefix('[').ok_or_else(|| err(format!("term {term:?} must start with '['")))?;
            let (coords, coef) = open
                .split_once(']')
                .ok_or_else(|| err(format!("term {term:?} has no closing ']'")))?;
            let root = coords
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| err(format!("bad root coordinates {coords:?}")))?;
            let coef = parse_pq(coef).ok_or_else(|| err(format!("bad coefficient {:?}", coef.trim())))?;
            if coef.is_zero() {
                return Err(err("zero coefficient".into()));
            }
            terms.push((root, coef));
        }
        if out.iter().any(|o: &OrbitSpec| o.label == label) {
            return Err(err(format!("duplicate label {label:?}")));
        }
        out.push(OrbitSpec {
            label: label.to_string(),
            terms,
        });
    }
    Ok(out)
}

pub fn load_orbit_file(path: impl AsRef<Path>) -> Result<Vec<OrbitSpec>> {
    parse_orbit_file(&std::fs::read_to_string(path)?)
}
