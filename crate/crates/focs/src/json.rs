//! JSON documents read and written by the command line.
//!
//! Scalars are strings in the textual grammar of [`Scalar`] (`"1/2"`,
//! `"-3 i"`, `"1 + 1/2 r2"`); integer literals are accepted on input.

use std::collections::BTreeMap;
use std::fmt;

use focs_core::spectral::{ComplexBlocks, RealBlocks};
use focs_core::verify::Witness;
use focs_core::{
    BasisCertificate, BasisKind, CanonicalPair, Eigenvalue, Error, ExactMatrix, JordanSpec, PairKind, Rational,
    Scalar, SignCharacteristic, SignEntry,
};
use serde::{Deserialize, Deserializer, Serialize};

/// A scalar on input: a grammar string or a JSON integer.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarText(pub String);

impl<'de> Deserialize<'de> for ScalarText {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        Ok(match Raw::deserialize(deserializer)? {
            Raw::Text(s) => ScalarText(s),
            Raw::Int(n) => ScalarText(n.to_string()),
        })
    }
}

impl Serialize for ScalarText {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl From<&Scalar> for ScalarText {
    fn from(s: &Scalar) -> Self {
        ScalarText(s.to_string())
    }
}

impl From<&Rational> for ScalarText {
    fn from(q: &Rational) -> Self {
        ScalarText(Scalar::from_rational(q.clone()).to_string())
    }
}

impl ScalarText {
    pub fn scalar(&self) -> Result<Scalar, Error> {
        self.0.parse()
    }

    pub fn rational(&self, what: &str) -> Result<Rational, Error> {
        let s = self.scalar()?;
        s.as_rational().cloned().ok_or_else(|| Error::InvalidSpec(format!("{what} must be rational, got {s}")))
    }
}

impl fmt::Display for ScalarText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ScalarText>>,
}

impl From<&ExactMatrix> for MatrixJson {
    fn from(m: &ExactMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|r| m.row(r).iter().map(ScalarText::from).collect()).collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<ExactMatrix, Error> {
        if self.entries.len() != self.rows || self.entries.iter().any(|row| row.len() != self.cols) {
            return Err(Error::DimensionMismatch(format!(
                "matrix declares {}x{} but its entries have a different shape",
                self.rows, self.cols
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(ScalarText::scalar).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        ExactMatrix::from_rows(rows)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "H")]
    pub h: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealBlocksJson {
    pub lambda: ScalarText,
    pub sizes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonrealBlocksJson {
    pub sigma: ScalarText,
    pub tau: ScalarText,
    pub sizes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignJson {
    pub lambda: ScalarText,
    pub size: usize,
    pub eps: i8,
}

/// A Jordan structure; as generator input it may carry the signs of the real
/// blocks (all `+1` when absent).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecJson {
    #[serde(default)]
    pub real: Vec<RealBlocksJson>,
    #[serde(default)]
    pub nonreal: Vec<NonrealBlocksJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<SignJson>>,
}

impl From<&JordanSpec> for SpecJson {
    fn from(spec: &JordanSpec) -> Self {
        SpecJson {
            real: spec
                .real
                .iter()
                .map(|g| RealBlocksJson { lambda: (&g.lambda).into(), sizes: g.sizes.clone() })
                .collect(),
            nonreal: spec
                .nonreal
                .iter()
                .map(|g| NonrealBlocksJson { sigma: (&g.sigma).into(), tau: (&g.tau).into(), sizes: g.sizes.clone() })
                .collect(),
            signs: None,
        }
    }
}

impl SpecJson {
    pub fn to_spec(&self) -> Result<JordanSpec, Error> {
        let real = self
            .real
            .iter()
            .map(|g| Ok(RealBlocks { lambda: g.lambda.rational("lambda")?, sizes: g.sizes.clone() }))
            .collect::<Result<Vec<_>, Error>>()?;
        let nonreal = self
            .nonreal
            .iter()
            .map(|g| {
                Ok(ComplexBlocks { sigma: g.sigma.rational("sigma")?, tau: g.tau.rational("tau")?, sizes: g.sizes.clone() })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        JordanSpec::new(real, nonreal)
    }

    /// The given signs, or `+1` for every real block.
    pub fn sign_characteristic(&self, spec: &JordanSpec) -> Result<SignCharacteristic, Error> {
        let entries = match &self.signs {
            Some(signs) => signs
                .iter()
                .map(|s| Ok(SignEntry { lambda: s.lambda.rational("lambda")?, size: s.size, eps: s.eps }))
                .collect::<Result<Vec<_>, Error>>()?,
            None => spec
                .real
                .iter()
                .flat_map(|g| g.sizes.iter().map(|&size| SignEntry { lambda: g.lambda.clone(), size, eps: 1 }))
                .collect(),
        };
        SignCharacteristic::new(entries)
    }
}

pub fn signs_json(signs: &SignCharacteristic) -> Vec<SignJson> {
    signs.entries().iter().map(|e| SignJson { lambda: (&e.lambda).into(), size: e.size, eps: e.eps }).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CanonicalJson {
    pub kind: &'static str,
    pub basis_kind: &'static str,
    pub spec: SpecJson,
    #[serde(rename = "J")]
    pub j: MatrixJson,
    #[serde(rename = "P")]
    pub p: MatrixJson,
    pub basis: MatrixJson,
    pub signs: Vec<SignJson>,
}

impl From<&CanonicalPair> for CanonicalJson {
    fn from(pair: &CanonicalPair) -> Self {
        CanonicalJson {
            kind: match pair.kind {
                PairKind::Complex => "complex",
                PairKind::Real => "real",
            },
            basis_kind: match pair.basis_kind {
                BasisKind::FlippedOrthogonal => "fo",
                BasisKind::RealCanonical => "real",
                BasisKind::IFocs => "i-focs",
            },
            spec: (&pair.spec).into(),
            j: (&pair.j).into(),
            p: (&pair.p).into(),
            basis: (&pair.basis).into(),
            signs: signs_json(&pair.signs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessJson {
    pub check: &'static str,
    pub i: usize,
    pub j: usize,
    pub value: ScalarText,
    pub expected: ScalarText,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson { check: w.check.name(), i: w.i, j: w.j, value: (&w.value).into(), expected: (&w.expected).into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateJson {
    pub checks: BTreeMap<&'static str, bool>,
    pub witness: Option<WitnessJson>,
}

impl From<&BasisCertificate> for CertificateJson {
    fn from(c: &BasisCertificate) -> Self {
        CertificateJson {
            checks: c.checks.iter().map(|&(check, ok)| (check.name(), ok)).collect(),
            witness: c.witness.as_ref().map(WitnessJson::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenvalueJson {
    pub value: ScalarText,
    pub multiplicity: usize,
}

impl From<&Eigenvalue> for EigenvalueJson {
    fn from(e: &Eigenvalue) -> Self {
        EigenvalueJson { value: (&e.value).into(), multiplicity: e.multiplicity }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisJson {
    pub char_poly: String,
    pub eigenvalues: Vec<EigenvalueJson>,
    pub spec: SpecJson,
    pub signs: Vec<SignJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecipeJson {
    pub spec: SpecJson,
    pub seed: u64,
    pub bound: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratedJson {
    pub recipe: RecipeJson,
    #[serde(rename = "A")]
    pub a: MatrixJson,
    #[serde(rename = "H")]
    pub h: MatrixJson,
    pub truth: CanonicalJson,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorJson {
    pub error: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}
