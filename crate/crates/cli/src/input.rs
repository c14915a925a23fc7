//! Input loading with a running SHA-256 digest over everything read.

use std::fs;
use std::path::Path;

use appell_schur::{AxialSeries, Quaternion};
use appell_schur::realize::{Colligation, RationalRealForm};
use serde::de::DeserializeOwned;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::Failure;

#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    /// Fold an inline argument into the digest.
    pub fn arg(&mut self, name: &str, value: &str) {
        self.hasher.update(name.as_bytes());
        self.hasher.update(b"=");
        self.hasher.update(value.as_bytes());
        self.hasher.update(b"\n");
    }

    pub fn file(&mut self, path: &Path) -> Result<Value, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        self.hasher.update(&bytes);
        serde_json::from_slice(&bytes).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }

    pub fn typed<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T, Failure> {
        let v = self.file(path)?;
        parse(v, &path.display().to_string())
    }

    pub fn digest(&self) -> String {
        hex::encode(self.hasher.clone().finalize())
    }
}

pub fn parse<T: DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::usage(format!("{what}: {e}")))
}

/// A point given as `[x0, x1, x2, x3]` or as a bare real number.
pub fn point(v: &Value, what: &str) -> Result<Quaternion, Failure> {
    if let Some(x) = v.as_f64() {
        return Ok(Quaternion::real(x));
    }
    let c: [f64; 4] = parse(v.clone(), what)?;
    Ok(Quaternion::from(c))
}

pub fn point_arg(inputs: &mut Inputs, name: &str, text: &str) -> Result<Quaternion, Failure> {
    inputs.arg(name, text);
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::usage(format!("--{name}: {e}")))?;
    point(&v, &format!("--{name}"))
}

pub fn points(v: &Value, what: &str) -> Result<Vec<Quaternion>, Failure> {
    let list = v.as_array().ok_or_else(|| Failure::usage(format!("{what}: expected an array of points")))?;
    list.iter().map(|p| point(p, what)).collect()
}

/// Real points; quaternions are accepted when their vector part is zero.
pub fn real_points(v: &Value, what: &str) -> Result<Vec<f64>, Failure> {
    points(v, what)?
        .into_iter()
        .map(|q| {
            if q.imag_norm() == 0.0 {
                Ok(q.x0)
            } else {
                Err(Failure::usage(format!("{what}: {q} is not on the real axis")))
            }
        })
        .collect()
}

pub fn series(inputs: &mut Inputs, path: &Path) -> Result<AxialSeries, Failure> {
    inputs.typed(path)
}

/// A realization given either as a colligation `(A, B, C, D)` or directly as `(H, G, T, F)`.
pub fn real_form(inputs: &mut Inputs, path: &Path) -> Result<RationalRealForm, Failure> {
    let v = inputs.file(path)?;
    let what = path.display().to_string();
    if v.get("H").is_some() {
        let r: RationalRealForm = parse(v, &what)?;
        RationalRealForm::new(r.h, r.g, r.t, r.f).map_err(Failure::from)
    } else {
        Ok(parse::<Colligation>(v, &what)?.real_form())
    }
}
