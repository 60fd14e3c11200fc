use super::{RationalSeries, Series, Variable};
use crate::error::{Error, Result};
use crate::numerics::parse_rational;
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "ising-exact/1";

/// Interchange document for a rational series. Coefficients are exact
/// rationals written as "p/q" strings; the error term is O(v^(offset+order)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesDoc {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub variable: Variable,
    pub offset: String,
    pub order: usize,
    pub coeffs: Vec<String>,
}

fn default_schema() -> String {
    SCHEMA.to_string()
}

impl From<&RationalSeries> for SeriesDoc {
    fn from(s: &RationalSeries) -> Self {
        SeriesDoc {
            schema: SCHEMA.to_string(),
            variable: s.variable,
            offset: s.offset.to_string(),
            order: s.len(),
            coeffs: s.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<&SeriesDoc> for RationalSeries {
    type Error = Error;

    fn try_from(d: &SeriesDoc) -> Result<Self> {
        if d.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported schema {:?}", d.schema)));
        }
        if d.coeffs.len() != d.order {
            return Err(Error::Parse(format!(
                "order {} does not match {} coefficients",
                d.order,
                d.coeffs.len()
            )));
        }
        let offset = parse_rational(&d.offset)?;
        let coeffs = d
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Series::new(d.variable, offset, coeffs))
    }
}

pub fn series_to_json(s: &RationalSeries) -> String {
    serde_json::to_string(&SeriesDoc::from(s)).expect("series document serializes")
}

pub fn series_from_json(text: &str) -> Result<RationalSeries> {
    let doc: SeriesDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    RationalSeries::try_from(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn round_trip() {
        let s = Series::new(
            Variable::X,
            Rational::from((1, 2)),
            vec![Rational::from((3, 7)), Rational::from(-2), Rational::new()],
        );
        let text = series_to_json(&s);
        assert!(text.contains("\"3/7\""));
        assert_eq!(series_from_json(&text).unwrap(), s);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(series_from_json("{}").is_err());
        assert!(series_from_json(
            r#"{"schema":"ising-exact/1","variable":"t","offset":"0","order":2,"coeffs":["1"]}"#
        )
        .is_err());
        assert!(series_from_json(
            r#"{"schema":"other","variable":"t","offset":"0","order":1,"coeffs":["1"]}"#
        )
        .is_err());
    }
}
