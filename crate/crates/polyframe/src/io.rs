//! JSON formats: polytopes with optional frames, based complexes, and
//! chirotopes. Rationals travel as decimal integers or `"p/q"` strings.

use std::collections::{BTreeMap, HashMap};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::{BasedComplex, Chain};
use crate::error::Error;
use crate::exact::{parse_rat, rat_to_string, RVec, Rat};
use crate::framing::Frame;
use crate::polytope::{Label, PointConfig};

/// Exact rational with the wire representation of the crate: a JSON number
/// when it is an integer fitting i64, a decimal or `"p/q"` string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatJson(pub Rat);

impl Serialize for RatJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use num::ToPrimitive;
        if self.0.is_integer() {
            if let Some(i) = self.0.numer().to_i64() {
                return serializer.serialize_i64(i);
            }
            return serializer.serialize_str(&self.0.numer().to_string());
        }
        serializer.serialize_str(&rat_to_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatJson {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        match value {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(RatJson(crate::exact::rat(i)))
                } else {
                    Err(D::Error::custom(format!("non-integer numeric literal {n}; use a \"p/q\" string")))
                }
            }
            serde_json::Value::String(s) => {
                parse_rat(&s).map(RatJson).map_err(|e| D::Error::custom(e.to_string()))
            }
            other => Err(D::Error::custom(format!("expected rational, got {other}"))),
        }
    }
}

/// Wire form of a polytope, with an optional attached frame (columns are
/// the frame vectors).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<RatJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Label>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<Vec<RatJson>>>,
}

impl PolytopeJson {
    pub fn from_config(cfg: &PointConfig, frame: Option<&Frame>) -> Self {
        PolytopeJson {
            dim: cfg.ambient_dim,
            vertices: cfg
                .points
                .iter()
                .map(|p| p.iter().map(|r| RatJson(r.clone())).collect())
                .collect(),
            labels: Some(cfg.labels.clone()),
            frame: frame.map(|f| {
                f.vectors()
                    .iter()
                    .map(|v| v.iter().map(|r| RatJson(r.clone())).collect())
                    .collect()
            }),
        }
    }

    pub fn config(&self) -> Result<PointConfig, Error> {
        let points: Vec<RVec> = self
            .vertices
            .iter()
            .map(|row| RVec::new(row.iter().map(|r| r.0.clone()).collect()))
            .collect();
        match &self.labels {
            Some(labels) => PointConfig::with_labels(self.dim, points, labels.clone()),
            None => PointConfig::new(self.dim, points),
        }
    }

    pub fn attached_frame(&self) -> Result<Option<Frame>, Error> {
        match &self.frame {
            None => Ok(None),
            Some(cols) => {
                let vectors: Vec<RVec> = cols
                    .iter()
                    .map(|c| RVec::new(c.iter().map(|r| r.0.clone()).collect()))
                    .collect();
                Ok(Some(Frame::new(vectors)?))
            }
        }
    }
}

pub fn read_polytope(path: &str) -> Result<PolytopeJson, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

/// Wire form of a based augmented chain complex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    /// degree (as a string key) to basis labels
    pub basis: BTreeMap<String, Vec<String>>,
    pub boundary: BTreeMap<String, BTreeMap<String, i64>>,
    pub augmentation: BTreeMap<String, i64>,
}

impl ComplexJson {
    pub fn from_complex(c: &BasedComplex) -> Self {
        let mut basis = BTreeMap::new();
        for (deg, labels) in c.basis.iter().enumerate() {
            basis.insert(deg.to_string(), labels.clone());
        }
        let mut boundary = BTreeMap::new();
        for labels in c.basis.iter().skip(1) {
            for l in labels {
                boundary.insert(l.clone(), c.boundary_of(l).into_iter().collect());
            }
        }
        let augmentation =
            c.basis.first().map_or_else(BTreeMap::new, |b0| b0.iter().map(|l| (l.clone(), 1)).collect());
        ComplexJson { basis, boundary, augmentation }
    }

    pub fn complex(&self) -> Result<BasedComplex, Error> {
        let mut degrees: Vec<(usize, Vec<String>)> = Vec::new();
        for (k, labels) in &self.basis {
            let deg: usize =
                k.parse().map_err(|_| Error::Parse(format!("bad degree key {k}")))?;
            degrees.push((deg, labels.clone()));
        }
        degrees.sort_by_key(|(d, _)| *d);
        let mut basis = Vec::new();
        for (deg, labels) in degrees {
            if deg != basis.len() {
                return Err(Error::Parse(format!("missing degree {} in basis", basis.len())));
            }
            basis.push(labels);
        }
        for (l, &v) in &self.augmentation {
            if v != 1 {
                return Err(Error::ChainAxiom {
                    label: l.clone(),
                    detail: format!("augmentation must be 1 on basis vertices, got {v}"),
                });
            }
        }
        let boundary: HashMap<String, Chain> = self
            .boundary
            .iter()
            .map(|(l, ch)| (l.clone(), ch.iter().map(|(k, &v)| (k.clone(), v)).collect()))
            .collect();
        BasedComplex::new(basis, boundary)
    }
}

/// Wire form of a chirotope: `{"rank": r, "signs": {"1,2,3": "+"}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChirotopeJson {
    pub rank: usize,
    pub signs: BTreeMap<String, String>,
}

impl ChirotopeJson {
    pub fn from_chirotope(chi: &crate::chirotope::Chirotope) -> Self {
        let signs = chi
            .signs
            .iter()
            .map(|(tuple, &s)| {
                let key =
                    tuple.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                let val = match s {
                    1 => "+",
                    -1 => "-",
                    _ => "0",
                };
                (key, val.to_string())
            })
            .collect();
        ChirotopeJson { rank: chi.rank, signs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::polytope::p5_config;

    #[test]
    fn rational_wire_forms() {
        let v = serde_json::to_string(&RatJson(crate::exact::rat(-7))).unwrap();
        assert_eq!(v, "-7");
        let v = serde_json::to_string(&RatJson(ratio(3, 4))).unwrap();
        assert_eq!(v, "\"3/4\"");
        let r: RatJson = serde_json::from_str("\"22/7\"").unwrap();
        assert_eq!(r.0, ratio(22, 7));
        let r: RatJson = serde_json::from_str("12").unwrap();
        assert_eq!(r.0, crate::exact::rat(12));
        assert!(serde_json::from_str::<RatJson>("\"x/y\"").is_err());
        assert!(serde_json::from_str::<RatJson>("0.25").is_err());
    }

    #[test]
    fn polytope_round_trip_is_bit_exact() {
        let cfg = p5_config();
        let json = PolytopeJson::from_config(&cfg, Some(&Frame::canonical(5)));
        let text = serde_json::to_string_pretty(&json).unwrap();
        let back: PolytopeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(json, back);
        let cfg2 = back.config().unwrap();
        assert_eq!(cfg, cfg2);
        let text2 = serde_json::to_string_pretty(&back).unwrap();
        assert_eq!(text, text2);
    }

    #[test]
    fn complex_round_trip() {
        let c = crate::diagram::street_oriental(3);
        let json = ComplexJson::from_complex(&c);
        let text = serde_json::to_string(&json).unwrap();
        let back: ComplexJson = serde_json::from_str(&text).unwrap();
        let c2 = back.complex().unwrap();
        assert_eq!(c.basis, c2.basis);
        for labels in c.basis.iter().skip(1) {
            for l in labels {
                assert_eq!(c.boundary_of(l), c2.boundary_of(l));
            }
        }
    }
}
