use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::ComplexValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    Contour,
    Quadrature,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Contour => "contour",
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed_form",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A computed value together with its error estimate, the scheme that
/// produced it and the number of terms or panels spent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: ComplexValue,
    pub err_estimate: f64,
    pub method: Method,
    pub work: usize,
}

impl EvalResult {
    /// Builds a result, refusing non-finite values or error estimates.
    pub fn new(value: ComplexValue, err_estimate: f64, method: Method, work: usize) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::NonFinite(format!("{} produced {value}", method)));
        }
        if !err_estimate.is_finite() || err_estimate < 0.0 {
            return Err(Error::NonFinite(format!("{} error estimate {err_estimate}", method)));
        }
        Ok(EvalResult { value, err_estimate, method, work })
    }

    pub fn exact(value: ComplexValue) -> Result<Self> {
        Self::new(value, 0.0, Method::ClosedForm, 0)
    }

    /// Multiplies the value (and the error estimate) by a finite scalar.
    pub fn scaled(self, factor: ComplexValue) -> Result<Self> {
        Self::new(self.value * factor, self.err_estimate * factor.norm(), self.method, self.work)
    }
}
