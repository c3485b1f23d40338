//! JSON file format for normalized series:
//! `{"order": N, "a1_implicit": true, "coeffs": [[re, im], …]}` lists
//! `a_2 … a_N`; `a_0 = 0` and `a_1 = 1` are implied. With
//! `"a1_implicit": false` the list holds every coefficient `c_0 … c_N`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesFile {
    pub order: usize,
    pub a1_implicit: bool,
    pub coeffs: Vec<[f64; 2]>,
}

impl SeriesFile {
    /// Encodes a normalized series.
    pub fn from_series(f: &TruncatedSeries) -> Result<Self> {
        if !f.is_normalized() {
            return Err(Error::NotNormalized);
        }
        Ok(SeriesFile {
            order: f.order(),
            a1_implicit: true,
            coeffs: f.coeffs()[2..].iter().map(|c| [c.re, c.im]).collect(),
        })
    }

    pub fn to_series(&self) -> Result<TruncatedSeries> {
        let values: Vec<Complex64> = self.coeffs.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::SeriesFormat("non-finite coefficient".into()));
        }
        if self.a1_implicit {
            if self.order < 1 || values.len() != self.order - 1 {
                return Err(Error::SeriesFormat(format!(
                    "order {} needs {} coefficients (a_2..a_N), got {}",
                    self.order,
                    self.order.saturating_sub(1),
                    values.len()
                )));
            }
            Ok(TruncatedSeries::normalized(&values))
        } else {
            if values.len() != self.order + 1 {
                return Err(Error::SeriesFormat(format!(
                    "order {} needs {} coefficients (c_0..c_N), got {}",
                    self.order,
                    self.order + 1,
                    values.len()
                )));
            }
            TruncatedSeries::new(values)
        }
    }

    pub fn parse(text: &str) -> Result<TruncatedSeries> {
        let file: SeriesFile = serde_json::from_str(text).map_err(|e| Error::SeriesFormat(e.to_string()))?;
        file.to_series()
    }

    pub fn to_json(f: &TruncatedSeries) -> Result<String> {
        serde_json::to_string(&Self::from_series(f)?).map_err(|e| Error::SeriesFormat(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_file() {
        let f = SeriesFile::parse(r#"{"order": 1, "a1_implicit": true, "coeffs": []}"#).unwrap();
        assert_eq!(f, TruncatedSeries::identity(1));
    }

    #[test]
    fn round_trip() {
        let f = TruncatedSeries::normalized(&[Complex64::new(0.5, -0.25), Complex64::new(0.0, 1.0)]);
        let text = SeriesFile::to_json(&f).unwrap();
        assert_eq!(text, r#"{"order":3,"a1_implicit":true,"coeffs":[[0.5,-0.25],[0.0,1.0]]}"#);
        assert_eq!(SeriesFile::parse(&text).unwrap(), f);
    }

    #[test]
    fn explicit_coefficients() {
        let f = SeriesFile::parse(r#"{"order": 2, "a1_implicit": false, "coeffs": [[0,0],[1,0],[0.3,0]]}"#).unwrap();
        assert!(f.is_normalized());
        assert_eq!(f.coeff(2), Complex64::new(0.3, 0.0));
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let err = SeriesFile::parse(r#"{"order": 4, "a1_implicit": true, "coeffs": [[1,0]]}"#).unwrap_err();
        assert!(matches!(err, Error::SeriesFormat(_)));
        assert!(SeriesFile::parse("not json").is_err());
    }
}
