//! Dielectric response on the imaginary frequency axis.
//!
//! A [`Response`] is the shared evaluator behind both solvent/oil
//! permittivities ε(iξ) and atomic polarizabilities α(iξ). The two differ
//! only in their high-frequency floor: a permittivity relaxes to 1, a
//! polarizability to 0.
//!
//! Oscillator responses take the damped Debye plus Lorentz form
//!
//! ```text
//! floor + Σ d / (1 + ξτ) + Σ c / (1 + (ξ/ω)² + gξ/ω²)
//! ```
//!
//! with Debye (microwave) and Lorentz (IR/UV) terms.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, InvariantKind, Result};

/// Number of points in the validation probe grid.
pub const PROBE_POINTS: usize = 200;
/// Lowest probe frequency, rad/s.
pub const PROBE_XI_MIN: f64 = 1e10;
/// Highest probe frequency, rad/s.
pub const PROBE_XI_MAX: f64 = 1e18;

/// Logarithmic probe grid used to validate every ingested model.
pub fn probe_grid() -> Vec<f64> {
    let (lo, hi) = (PROBE_XI_MIN.ln(), PROBE_XI_MAX.ln());
    let step = (hi - lo) / (PROBE_POINTS - 1) as f64;
    (0..PROBE_POINTS)
        .map(|k| {
            if k == PROBE_POINTS - 1 {
                PROBE_XI_MAX
            } else {
                (lo + step * k as f64).exp()
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DebyeTerm {
    /// Dimensionless strength `d`.
    pub strength: f64,
    /// Relaxation time τ in seconds.
    pub relaxation_time: f64,
}

impl DebyeTerm {
    #[inline]
    pub fn eval(&self, xi: f64) -> f64 {
        self.strength / (1.0 + xi * self.relaxation_time)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzTerm {
    /// Strength `c` (dimensionless for ε, m³ for α).
    pub strength: f64,
    /// Resonance angular frequency ω, rad/s.
    pub resonance: f64,
    /// Damping angular frequency g, rad/s.
    pub damping: f64,
}

impl LorentzTerm {
    pub fn undamped(strength: f64, resonance: f64) -> Self {
        Self {
            strength,
            resonance,
            damping: 0.0,
        }
    }

    #[inline]
    pub fn eval(&self, xi: f64) -> f64 {
        let x = xi / self.resonance;
        self.strength / (1.0 + x * x + self.damping * xi / (self.resonance * self.resonance))
    }
}

/// What a tabulated response does between ξ = 0 and its first node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BelowTable {
    /// Linear in ξ from the static value to the first node.
    #[default]
    LinearBridge,
    /// Refuse to evaluate there.
    Reject,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    static_value: f64,
    nodes: Vec<(f64, f64)>,
    below: BelowTable,
}

impl Table {
    /// Nodes must be sorted strictly increasing in ξ with ξ > 0.
    pub fn new(static_value: f64, nodes: Vec<(f64, f64)>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::SchemaViolation("table has no points".into()));
        }
        if !static_value.is_finite() || nodes.iter().any(|(x, v)| !x.is_finite() || !v.is_finite()) {
            return Err(Error::SchemaViolation("table values must be finite".into()));
        }
        if nodes[0].0 <= 0.0 {
            return Err(Error::SchemaViolation(
                "table frequencies must be positive".into(),
            ));
        }
        if let Some(w) = nodes.windows(2).find(|w| w[1].0 <= w[0].0) {
            return Err(Error::SchemaViolation(format!(
                "table frequencies not strictly increasing ({:e} then {:e})",
                w[0].0, w[1].0
            )));
        }
        Ok(Self {
            static_value,
            nodes,
            below: BelowTable::default(),
        })
    }

    pub fn with_below(mut self, below: BelowTable) -> Self {
        self.below = below;
        self
    }

    pub fn static_value(&self) -> f64 {
        self.static_value
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    fn eval(&self, xi: f64, floor: f64) -> Result<f64> {
        if xi == 0.0 {
            return Ok(self.static_value);
        }
        let (x0, v0) = self.nodes[0];
        if xi < x0 {
            return match self.below {
                BelowTable::LinearBridge => {
                    Ok(self.static_value + (v0 - self.static_value) * (xi / x0))
                }
                BelowTable::Reject => Err(Error::TableRangeUnderflow { xi, first: x0 }),
            };
        }
        let last = self.nodes[self.nodes.len() - 1];
        if xi > last.0 {
            return Ok(floor);
        }
        if xi == last.0 {
            return Ok(last.1);
        }
        // first node strictly above xi; xi >= x0 so idx >= 1
        let idx = self.nodes.partition_point(|&(x, _)| x <= xi);
        let (xa, va) = self.nodes[idx - 1];
        let (xb, vb) = self.nodes[idx];
        if xi == xa {
            return Ok(va);
        }
        let t = (xi.ln() - xa.ln()) / (xb.ln() - xa.ln());
        Ok(va + (vb - va) * t)
    }
}

/// Frequency-dependent response on the imaginary axis.
#[derive(Debug, Clone, PartialEq)]
pub enum Response {
    Oscillator {
        debye: Vec<DebyeTerm>,
        lorentz: Vec<LorentzTerm>,
    },
    Tabulated(Table),
    Constant(f64),
    Vacuum,
}

impl Response {
    /// Evaluates the response at imaginary frequency `xi`. `floor` is the
    /// value the response relaxes to at high frequency.
    pub fn eval(&self, xi: f64, floor: f64) -> Result<f64> {
        if !(xi >= 0.0) {
            return Err(Error::NegativeFrequency { xi });
        }
        match self {
            Response::Oscillator { debye, lorentz } => {
                let mut acc = floor;
                for term in debye {
                    acc += term.eval(xi);
                }
                for term in lorentz {
                    acc += term.eval(xi);
                }
                Ok(acc)
            }
            Response::Tabulated(table) => table.eval(xi, floor),
            Response::Constant(v) => Ok(*v),
            Response::Vacuum => Ok(floor),
        }
    }

    pub fn form(&self) -> Form {
        match self {
            Response::Oscillator { .. } => Form::Oscillator,
            Response::Tabulated(_) => Form::Tabulated,
            Response::Constant(_) => Form::Constant,
            Response::Vacuum => Form::Vacuum,
        }
    }

    /// Returns the response `(self - floor) * factor`, which relaxes to zero
    /// at high frequency.
    pub fn above_floor_scaled(&self, floor: f64, factor: f64) -> Response {
        match self {
            Response::Oscillator { debye, lorentz } => Response::Oscillator {
                debye: debye
                    .iter()
                    .map(|t| DebyeTerm {
                        strength: t.strength * factor,
                        ..*t
                    })
                    .collect(),
                lorentz: lorentz
                    .iter()
                    .map(|t| LorentzTerm {
                        strength: t.strength * factor,
                        ..*t
                    })
                    .collect(),
            },
            Response::Tabulated(table) => Response::Tabulated(Table {
                static_value: (table.static_value - floor) * factor,
                nodes: table
                    .nodes
                    .iter()
                    .map(|&(x, v)| (x, (v - floor) * factor))
                    .collect(),
                below: table.below,
            }),
            Response::Constant(v) => Response::Constant((v - floor) * factor),
            Response::Vacuum => Response::Vacuum,
        }
    }

    /// Checks finiteness, the floor, and monotone decay on ξ = 0 plus the
    /// probe grid (and on every table node, for tabulated responses).
    pub(crate) fn check_invariants(&self, name: &str, floor: f64) -> Result<()> {
        let violation = |kind, xi, detail: String| Error::InvariantViolation {
            name: name.to_string(),
            kind,
            xi,
            detail,
        };
        if let Response::Tabulated(table) = self {
            if table.static_value < floor {
                return Err(violation(
                    InvariantKind::BelowFloor,
                    0.0,
                    format!("static value {} < {}", table.static_value, floor),
                ));
            }
            let mut prev = table.static_value;
            for &(x, v) in &table.nodes {
                if v < floor {
                    return Err(violation(
                        InvariantKind::BelowFloor,
                        x,
                        format!("table value {v} < {floor}"),
                    ));
                }
                if v > prev {
                    return Err(violation(
                        InvariantKind::Monotonicity,
                        x,
                        format!("table value rises from {prev} to {v}"),
                    ));
                }
                prev = v;
            }
        }

        let mut prev: Option<(f64, f64)> = None;
        for xi in std::iter::once(0.0).chain(probe_grid()) {
            let v = self.eval(xi, floor)?;
            if !v.is_finite() {
                return Err(violation(InvariantKind::NonFinite, xi, format!("value {v}")));
            }
            if v < floor {
                return Err(violation(
                    InvariantKind::BelowFloor,
                    xi,
                    format!("value {v} < {floor}"),
                ));
            }
            if let Some((pxi, pv)) = prev {
                if v > pv {
                    return Err(violation(
                        InvariantKind::Monotonicity,
                        xi,
                        format!("value rises from {pv} at {pxi:e} rad/s to {v}"),
                    ));
                }
            }
            prev = Some((xi, v));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Oscillator,
    Tabulated,
    Constant,
    Vacuum,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Oscillator => "oscillator",
            Form::Tabulated => "tabulated",
            Form::Constant => "constant",
            Form::Vacuum => "vacuum",
        })
    }
}

/// A validated dielectric function ε(iξ) of a solvent or an oil.
#[derive(Debug, Clone, PartialEq)]
pub struct DielectricModel {
    name: String,
    response: Response,
}

impl DielectricModel {
    /// Builds and validates a model.
    pub fn new(name: impl Into<String>, response: Response) -> Result<Self> {
        let name = name.into();
        response.check_invariants(&name, 1.0)?;
        Ok(Self { name, response })
    }

    pub fn vacuum() -> Self {
        Self {
            name: "vacuum".into(),
            response: Response::Vacuum,
        }
    }

    pub fn constant(name: impl Into<String>, eps: f64) -> Result<Self> {
        Self::new(name, Response::Constant(eps))
    }

    pub fn oscillator(
        name: impl Into<String>,
        debye: Vec<DebyeTerm>,
        lorentz: Vec<LorentzTerm>,
    ) -> Result<Self> {
        Self::new(name, Response::Oscillator { debye, lorentz })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn form(&self) -> Form {
        self.response.form()
    }

    pub fn response(&self) -> &Response {
        &self.response
    }

    /// ε(iξ).
    pub fn eval_permittivity(&self, xi: f64) -> Result<f64> {
        self.response.eval(xi, 1.0)
    }

    pub fn from_document(doc: ResponseDocument) -> Result<Self> {
        let name = doc
            .name
            .clone()
            .ok_or_else(|| Error::SchemaViolation("missing field `name`".into()))?;
        let response = doc.into_response("constant_eps")?;
        Self::new(name, response)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_document(parse_json(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&read_to_string(path.as_ref())?)
    }
}

/// Loads a material file.
pub fn load_material(path: impl AsRef<Path>) -> Result<DielectricModel> {
    DielectricModel::load(path)
}

pub(crate) fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Deserializes JSON, separating malformed documents from well-formed ones
/// that do not match the schema.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => Error::SchemaViolation(e.to_string()),
        _ => Error::Parse(e.to_string()),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DebyeDocument {
    pub d: f64,
    pub tau_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LorentzDocument {
    pub c: f64,
    pub omega_rad_s: f64,
    #[serde(default)]
    pub g_rad_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TablePointDocument {
    pub xi_rad_s: f64,
    pub eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub eps_static: f64,
    pub points: Vec<TablePointDocument>,
}

/// On-disk form of a response model (material file, or the
/// `polarizability` member of an atom file).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResponseDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub form: Form,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub debye_terms: Vec<DebyeDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lorentz_terms: Vec<LorentzDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant_eps: Option<f64>,
}

impl ResponseDocument {
    pub(crate) fn into_response(self, constant_field: &str) -> Result<Response> {
        let schema = |msg: String| Err(Error::SchemaViolation(msg));
        let has_osc = !self.debye_terms.is_empty() || !self.lorentz_terms.is_empty();
        let has_table = self.table.is_some();
        let has_const = self.constant_eps.is_some();
        let form = self.form;
        let stray = match form {
            Form::Oscillator => has_table || has_const,
            Form::Tabulated => has_osc || has_const,
            Form::Constant => has_osc || has_table,
            Form::Vacuum => has_osc || has_table || has_const,
        };
        if stray {
            return schema(format!("fields present that do not apply to form {form:?}"));
        }

        match form {
            Form::Oscillator => {
                let mut debye = Vec::with_capacity(self.debye_terms.len());
                for t in self.debye_terms {
                    if !t.d.is_finite() || !t.tau_s.is_finite() || t.tau_s < 0.0 {
                        return schema(format!("invalid debye term d={} tau_s={}", t.d, t.tau_s));
                    }
                    debye.push(DebyeTerm {
                        strength: t.d,
                        relaxation_time: t.tau_s,
                    });
                }
                let mut lorentz = Vec::with_capacity(self.lorentz_terms.len());
                for t in self.lorentz_terms {
                    if !t.c.is_finite()
                        || !t.omega_rad_s.is_finite()
                        || t.omega_rad_s <= 0.0
                        || !t.g_rad_s.is_finite()
                        || t.g_rad_s < 0.0
                    {
                        return schema(format!(
                            "invalid lorentz term c={} omega_rad_s={} g_rad_s={}",
                            t.c, t.omega_rad_s, t.g_rad_s
                        ));
                    }
                    lorentz.push(LorentzTerm {
                        strength: t.c,
                        resonance: t.omega_rad_s,
                        damping: t.g_rad_s,
                    });
                }
                Ok(Response::Oscillator { debye, lorentz })
            }
            Form::Tabulated => {
                let Some(table) = self.table else {
                    return schema("form tabulated requires `table`".into());
                };
                let nodes = table.points.iter().map(|p| (p.xi_rad_s, p.eps)).collect();
                Ok(Response::Tabulated(Table::new(table.eps_static, nodes)?))
            }
            Form::Constant => match self.constant_eps {
                Some(v) if v.is_finite() => Ok(Response::Constant(v)),
                Some(v) => schema(format!("{constant_field} must be finite, got {v}")),
                None => schema(format!("form constant requires `{constant_field}`")),
            },
            Form::Vacuum => Ok(Response::Vacuum),
        }
    }
}
