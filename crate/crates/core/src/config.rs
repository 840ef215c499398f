//! Text formats: extension specs and differential overrides, both TOML.
//!
//! ```toml
//! p = 3
//! kernel_m = 1
//! quotient = [1, 1]
//! xi = "y1*y2"
//! ```
//!
//! ```toml
//! [[override]]
//! r = 5
//! source = "t^2*u*y1*y2"
//! value = "u*(x1^3*y2 - x2^3*y1)"
//! provenance = "..."
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{AbelianPGroupSpec, ExtensionSpec, GroupError};
use crate::ring::CohoClass;
use crate::sseq::DifferentialOverride;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{0}")]
    Syntax(String),
    #[error("field `{field}`: {reason}")]
    Field { field: &'static str, reason: String },
}

/// The on-disk form of an [`ExtensionSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: u32,
    pub kernel_m: u32,
    /// Exponents `m_i` of the quotient `⊕ C_{p^{m_i}}`.
    pub quotient: Vec<u32>,
    pub xi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_prime: Option<String>,
}

impl ExtensionConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))
    }

    pub fn to_spec(&self) -> Result<ExtensionSpec, ConfigError> {
        let quotient = AbelianPGroupSpec::new(self.p, self.quotient.clone()).map_err(|e| field("quotient", e))?;
        let xi = CohoClass::parse(&self.xi, &quotient, 2).map_err(|e| ConfigError::Field {
            field: "xi",
            reason: e.to_string(),
        })?;
        let xi_prime = match &self.xi_prime {
            Some(text) => Some(CohoClass::parse(text, &quotient, 3).map_err(|e| ConfigError::Field {
                field: "xi_prime",
                reason: e.to_string(),
            })?),
            None => None,
        };
        ExtensionSpec::new(self.kernel_m, quotient, xi, xi_prime).map_err(|e| match e {
            GroupError::Invalid { field, reason } => ConfigError::Field { field, reason },
            other => field("xi", other),
        })
    }

    pub fn from_spec(spec: &ExtensionSpec) -> Self {
        ExtensionConfig {
            name: None,
            p: spec.p,
            kernel_m: spec.kernel_m,
            quotient: spec.quotient.exponents.clone(),
            xi: spec.xi.to_string(),
            xi_prime: spec.xi_prime.as_ref().map(|c| c.to_string()),
        }
    }
}

fn field(name: &'static str, e: GroupError) -> ConfigError {
    ConfigError::Field {
        field: name,
        reason: e.to_string(),
    }
}

pub fn parse_extension_spec(text: &str) -> Result<ExtensionSpec, ConfigError> {
    ExtensionConfig::parse(text)?.to_spec()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideFile {
    #[serde(rename = "override", default)]
    pub overrides: Vec<DifferentialOverride>,
}

pub fn parse_overrides(text: &str) -> Result<Vec<DifferentialOverride>, ConfigError> {
    let file: OverrideFile = toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    Ok(file.overrides)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extraspecial_spec() {
        let s = parse_extension_spec("p = 3\nkernel_m = 1\nquotient = [1, 1]\nxi = \"y1*y2\"\n").unwrap();
        assert_eq!(s.kernel_order(), 3);
        assert_eq!(s.xi.to_string(), "y1*y2");
        let split = parse_extension_spec("p = 3\nkernel_m = 1\nquotient = [1, 1]\nxi = \"0\"\n").unwrap();
        assert!(split.xi.is_zero());
        let back = ExtensionConfig::from_spec(&s).to_spec().unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn errors_name_the_field_or_line() {
        let e = parse_extension_spec("p = 3\nkernel_m = 1\nquotient = [1, 1]\nxi = \"y1*y2*y3\"\n").unwrap_err();
        assert!(matches!(e, ConfigError::Field { field: "xi", .. }), "{e}");
        let e = parse_extension_spec("p = 3\nkernel_m = 1\nquotient = [1, 1]\nxi = \"y1\"\n").unwrap_err();
        assert!(matches!(e, ConfigError::Field { field: "xi", .. }), "{e}");
        let e = parse_extension_spec("p = 3\nkernel_m = 2\nquotient = [1]\nxi = \"x1\"\n").unwrap_err();
        assert!(matches!(e, ConfigError::Field { field: "xi_prime", .. }), "{e}");
        let e = parse_extension_spec("p = 4\nkernel_m = 1\nquotient = [1]\nxi = \"x1\"\n").unwrap_err();
        assert!(matches!(e, ConfigError::Field { field: "quotient", .. }), "{e}");
        let e = parse_extension_spec("p = 3\nkernel_m = 1\nquotient = [1, 1\nxi = \"0\"\n").unwrap_err();
        assert!(matches!(&e, ConfigError::Syntax(m) if m.contains("line")), "{e}");
    }

    #[test]
    fn override_file() {
        let text = "[[override]]\nr = 5\nsource = \"t^2*u*y1*y2\"\nvalue = \"u*(x1^3*y2 - x2^3*y1)\"\nprovenance = \"a\"\n";
        let ov = parse_overrides(text).unwrap();
        assert_eq!(ov.len(), 1);
        assert_eq!(ov[0].r, 5);
        assert!(parse_overrides("").unwrap().is_empty());
        assert!(parse_overrides("[[override]]\nr = 5\n").is_err());
    }
}
