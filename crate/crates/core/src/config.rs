//! Problem configuration files and their validation.

use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::Permutation;
use crate::linalg::Matrix;
use crate::rep::check_equivariance;
use crate::symmetry::{GammaSpec, Layout, SymmetryGroup};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A matrix entry or eigenvalue: a JSON number or a string such as `"-1/2"`.
#[derive(Clone, Debug, PartialEq)]
pub struct Scalar {
    pub value: f64,
    /// Set when the input was an exact rational.
    pub exact: Option<Rational64>,
}

impl Scalar {
    fn parse(v: &Value, what: &str) -> Result<Self> {
        match v {
            Value::Number(n) => {
                let value = n
                    .as_f64()
                    .ok_or_else(|| Error::Config(format!("{what}: {n} is not a finite number")))?;
                let exact = n.as_i64().map(Rational64::from_integer);
                Ok(Scalar { value, exact })
            }
            Value::String(s) => {
                let t = s.trim();
                if let Ok(r) = t.parse::<Rational64>() {
                    let value = r
                        .to_f64()
                        .ok_or_else(|| Error::Config(format!("{what}: {s} out of range")))?;
                    return Ok(Scalar { value, exact: Some(r) });
                }
                let value = t
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("{what}: cannot parse {s:?}")))?;
                Ok(Scalar { value, exact: None })
            }
            other => Err(Error::Config(format!("{what}: expected number or string, got {other}"))),
        }
    }

    pub fn render(&self) -> String {
        match &self.exact {
            Some(r) if *r.denom() == 1 => r.numer().to_string(),
            Some(r) => format!("{}/{}", r.numer(), r.denom()),
            None => crate::report::fmt_float(self.value),
        }
    }
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawGamma {
    Trivial,
    Dihedral {
        n: usize,
    },
    /// Generators as lists of 1-based cycles.
    Permutation {
        generators: Vec<Vec<Vec<usize>>>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEigenvalue {
    mu: Value,
    multiplicity: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    m: usize,
    k: usize,
    gamma: RawGamma,
    #[serde(rename = "A")]
    a: Vec<Vec<Value>>,
    #[serde(default)]
    tolerance: Option<f64>,
    #[serde(default)]
    nagumo_assumed: bool,
    #[serde(default)]
    layout: Layout,
    #[serde(default)]
    spectrum: Option<Vec<RawEigenvalue>>,
    #[serde(default)]
    window: Option<[f64; 2]>,
}

/// Exactly specified eigenvalue of `A` with its total multiplicity.
#[derive(Clone, Debug)]
pub struct ExactEigenvalue {
    pub mu: Scalar,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct ProblemConfig {
    pub m: usize,
    pub k: usize,
    pub gamma: GammaSpec,
    pub a: Matrix,
    pub a_entries: Vec<Vec<Scalar>>,
    pub tolerance: f64,
    /// The growth condition on `f` is the caller's responsibility.
    pub nagumo_assumed: bool,
    pub layout: Layout,
    pub spectrum: Option<Vec<ExactEigenvalue>>,
    pub window: Option<(f64, f64)>,
}

impl ProblemConfig {
    pub fn symmetry_group(&self) -> Result<SymmetryGroup> {
        SymmetryGroup::new(&self.gamma, self.k, self.m, self.layout)
    }
}

/// Parses and validates a configuration document.
///
/// Syntax and schema problems are [`Error::Config`]; violated hypotheses
/// (symmetry, equivariance, sizes) are reported as other variants.
pub fn validate_config(text: &str) -> Result<ProblemConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let tolerance = raw.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::Config(format!("tolerance must be positive, got {tolerance}")));
    }
    if raw.m < 2 {
        return Err(Error::InvalidParameter(format!("m must be at least 2, got {}", raw.m)));
    }
    if raw.k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if raw.a.len() != raw.k || raw.a.iter().any(|r| r.len() != raw.k) {
        return Err(Error::InvalidParameter(format!("A must be a {0}×{0} matrix", raw.k)));
    }
    let mut a_entries = Vec::with_capacity(raw.k);
    for (i, row) in raw.a.iter().enumerate() {
        let parsed: Result<Vec<Scalar>> = row
            .iter()
            .enumerate()
            .map(|(j, v)| Scalar::parse(v, &format!("A[{i}][{j}]")))
            .collect();
        a_entries.push(parsed?);
    }
    let a = Matrix::from_rows(
        &a_entries.iter().map(|r| r.iter().map(|s| s.value).collect()).collect::<Vec<_>>(),
    );
    if !a.is_symmetric(tolerance) {
        return Err(Error::Assumption {
            assumption: "(A5)",
            detail: "A is not a symmetric matrix".into(),
        });
    }
    let gamma = match raw.gamma {
        RawGamma::Trivial => GammaSpec::Trivial,
        RawGamma::Dihedral { n } => GammaSpec::Dihedral(n),
        RawGamma::Permutation { generators } => {
            let gens: Result<Vec<Permutation>> =
                generators.iter().map(|c| Permutation::from_cycles(raw.k, c)).collect();
            GammaSpec::Permutation { degree: raw.k, generators: gens? }
        }
    };
    let spectrum = match raw.spectrum {
        None => None,
        Some(list) => {
            let mut out = Vec::with_capacity(list.len());
            for (n, e) in list.iter().enumerate() {
                let mu = Scalar::parse(&e.mu, &format!("spectrum[{n}].mu"))?;
                if e.multiplicity == 0 {
                    return Err(Error::Config(format!(
                        "spectrum[{n}]: multiplicity must be positive"
                    )));
                }
                out.push(ExactEigenvalue { mu, multiplicity: e.multiplicity });
            }
            Some(out)
        }
    };
    let window = match raw.window {
        None => None,
        Some([lo, hi]) if lo < hi => Some((lo, hi)),
        Some([lo, hi]) => {
            return Err(Error::Config(format!("window [{lo}, {hi}] is empty")));
        }
    };
    let config = ProblemConfig {
        m: raw.m,
        k: raw.k,
        gamma,
        a,
        a_entries,
        tolerance,
        nagumo_assumed: raw.nagumo_assumed,
        layout: raw.layout,
        spectrum,
        window,
    };
    let sym = config.symmetry_group()?;
    check_equivariance(&config.a, sym.action(), tolerance).map_err(|e| match e {
        Error::Assumption { detail, .. } => Error::Assumption { assumption: "(A4)/(B5)", detail },
        other => other,
    })?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    const AMAT: &str = r#"{"m": 3, "k": 3, "gamma": {"type": "dihedral", "n": 3},
        "A": [[-1, "-1/2", "-1/2"], ["-1/2", -1, "-1/2"], ["-1/2", "-1/2", -1]],
        "nagumo_assumed": true}"#;

    #[test]
    fn accepts_d3_equivariant_matrix() {
        let c = validate_config(AMAT).unwrap();
        assert_eq!(c.m, 3);
        assert_eq!(c.a[(0, 1)], -0.5);
        assert_eq!(c.a_entries[0][1].render(), "-1/2");
        assert_eq!(c.tolerance, DEFAULT_TOLERANCE);
    }

    #[test]
    fn malformed_is_config_error() {
        assert!(validate_config("{").unwrap_err().is_malformed_input());
        let e = validate_config(r#"{"m":3,"k":1,"gamma":{"type":"trivial"},"A":[[true]]}"#);
        assert!(e.unwrap_err().is_malformed_input());
    }

    #[test]
    fn violations_name_assumptions() {
        let asym = r#"{"m":3,"k":2,"gamma":{"type":"trivial"},"A":[[1,2],[0,1]]}"#;
        assert!(validate_config(asym).unwrap_err().to_string().contains("(A5)"));
        let noneq = r#"{"m":3,"k":3,"gamma":{"type":"dihedral","n":3},
            "A":[[-2,0,0],[0,-1,0],[0,0,-1]]}"#;
        let e = validate_config(noneq).unwrap_err();
        assert!(e.to_string().contains("(B5)"), "{e}");
        assert!(!e.is_malformed_input());
    }

    #[test]
    fn permutation_gamma() {
        let text = r#"{"m":2,"k":2,"gamma":{"type":"permutation","generators":[[[1,2]]]},
            "A":[[-1,"1/3"],["1/3",-1]]}"#;
        let c = validate_config(text).unwrap();
        assert_eq!(c.symmetry_group().unwrap().order(), 16);
    }
}
