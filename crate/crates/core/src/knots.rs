//! Knot specifications: named knots, parametric families and raw Seifert
//! matrices, as accepted by scenario configs and the command line.
//!
//! JSON form: an object with exactly one of `seifert`, `torus`, `twist`,
//! `whitehead_double`, or only a `name` from the built-in table. A `name`
//! next to one of the others is just a label.
//!
//! ```json
//! {"name": "left-trefoil"}
//! {"torus": [2, -3]}
//! {"name": "K", "seifert": [[-1, 1], [0, -1]]}
//! ```
//!
//! Command-line shorthand: `left-trefoil`, `torus:2,3`, `twist:2`,
//! `whitehead:+`, or inline JSON.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seifert_algebra::{
    torus_knot_seifert, twist_knot_seifert, unknot, whitehead_double_seifert, Clasp, SeifertError, SeifertMatrix,
};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub whitehead_double: Option<Clasp>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("unknown knot name `{0}` (known: {known})", known = NAMED_KNOTS.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", "))]
    UnknownName(String),
    #[error("knot spec must give exactly one of seifert, torus, twist, whitehead_double, or a known name")]
    Ambiguous,
    #[error("cannot parse knot spec `{input}`: {message}")]
    Syntax { input: String, message: String },
    #[error(transparent)]
    Seifert(#[from] SeifertError),
}

/// A knot with a resolved Seifert matrix and a label for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Knot {
    pub label: String,
    pub seifert: SeifertMatrix,
}

/// Built-in names and the specs they stand for.
pub const NAMED_KNOTS: &[(&str, NamedKnot)] = &[
    ("unknot", NamedKnot::Unknot),
    ("trefoil", NamedKnot::Torus(2, 3)),
    ("right-trefoil", NamedKnot::Torus(2, 3)),
    ("left-trefoil", NamedKnot::Torus(2, -3)),
    ("figure-eight", NamedKnot::Twist(1)),
    ("stevedore", NamedKnot::Twist(2)),
    ("cinquefoil", NamedKnot::Torus(2, 5)),
    ("positive-whitehead-double", NamedKnot::Whitehead(Clasp::Positive)),
    ("negative-whitehead-double", NamedKnot::Whitehead(Clasp::Negative)),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedKnot {
    Unknot,
    Torus(i64, i64),
    Twist(i64),
    Whitehead(Clasp),
}

impl NamedKnot {
    fn seifert(self) -> Result<SeifertMatrix, SeifertError> {
        match self {
            NamedKnot::Unknot => Ok(unknot()),
            NamedKnot::Torus(p, q) => torus_knot_seifert(p, q),
            NamedKnot::Twist(k) => Ok(twist_knot_seifert(k)),
            NamedKnot::Whitehead(c) => Ok(whitehead_double_seifert(c)),
        }
    }
}

impl KnotSpec {
    pub fn named(name: &str) -> Self {
        KnotSpec {
            name: Some(name.to_string()),
            ..Default::default()
        }
    }

    pub fn torus(p: i64, q: i64) -> Self {
        KnotSpec {
            torus: Some((p, q)),
            ..Default::default()
        }
    }

    /// Parses the command-line shorthand or inline JSON.
    pub fn parse(input: &str) -> Result<Self, KnotError> {
        let s = input.trim();
        let syntax = |message: String| KnotError::Syntax {
            input: input.to_string(),
            message,
        };
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| syntax(e.to_string()));
        }
        let int = |t: &str| t.trim().parse::<i64>().map_err(|_| syntax(format!("`{t}` is not an integer")));
        if let Some(rest) = s.strip_prefix("torus:") {
            let (p, q) = rest.split_once(',').ok_or_else(|| syntax("expected torus:p,q".into()))?;
            return Ok(KnotSpec::torus(int(p)?, int(q)?));
        }
        if let Some(rest) = s.strip_prefix("twist:") {
            return Ok(KnotSpec {
                twist: Some(int(rest)?),
                ..Default::default()
            });
        }
        if let Some(rest) = s.strip_prefix("whitehead:") {
            let clasp = match rest.trim() {
                "+" => Clasp::Positive,
                "-" => Clasp::Negative,
                other => return Err(syntax(format!("clasp must be + or -, got `{other}`"))),
            };
            return Ok(KnotSpec {
                whitehead_double: Some(clasp),
                ..Default::default()
            });
        }
        if NAMED_KNOTS.iter().any(|(n, _)| *n == s) {
            return Ok(KnotSpec::named(s));
        }
        Err(KnotError::UnknownName(s.to_string()))
    }

    /// Short description used as a label when no name is given.
    pub fn describe(&self) -> String {
        if let Some(name) = &self.name {
            return name.clone();
        }
        if let Some((p, q)) = self.torus {
            return format!("T({p},{q})");
        }
        if let Some(k) = self.twist {
            return format!("twist({k})");
        }
        if let Some(c) = self.whitehead_double {
            return match c {
                Clasp::Positive => "positive-whitehead-double".into(),
                Clasp::Negative => "negative-whitehead-double".into(),
            };
        }
        if let Some(rows) = &self.seifert {
            return format!("seifert{rows:?}");
        }
        "?".into()
    }

    pub fn resolve(&self) -> Result<Knot, KnotError> {
        let given = [
            self.seifert.is_some(),
            self.torus.is_some(),
            self.twist.is_some(),
            self.whitehead_double.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        let seifert = match given {
            0 => {
                let name = self.name.as_deref().ok_or(KnotError::Ambiguous)?;
                NAMED_KNOTS
                    .iter()
                    .find(|(n, _)| *n == name)
                    .ok_or_else(|| KnotError::UnknownName(name.to_string()))?
                    .1
                    .seifert()?
            }
            1 => {
                if let Some(rows) = &self.seifert {
                    SeifertMatrix::from_i64(rows)?
                } else if let Some((p, q)) = self.torus {
                    torus_knot_seifert(p, q)?
                } else if let Some(k) = self.twist {
                    twist_knot_seifert(k)
                } else {
                    whitehead_double_seifert(self.whitehead_double.expect("counted"))
                }
            }
            _ => return Err(KnotError::Ambiguous),
        };
        Ok(Knot {
            label: self.describe(),
            seifert,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert_algebra::signature;

    #[test]
    fn shorthand_and_json_agree() {
        let a = KnotSpec::parse("left-trefoil").unwrap().resolve().unwrap();
        let b = KnotSpec::parse("torus:2,-3").unwrap().resolve().unwrap();
        let c = KnotSpec::parse(r#"{"torus": [2, -3]}"#).unwrap().resolve().unwrap();
        assert_eq!(a.seifert, b.seifert);
        assert_eq!(b.seifert, c.seifert);
        assert_eq!(signature(&a.seifert), 2);
        assert_eq!(a.label, "left-trefoil");
        assert_eq!(b.label, "T(2,-3)");
        let w = KnotSpec::parse("whitehead:+").unwrap().resolve().unwrap();
        assert_eq!(w.seifert, whitehead_double_seifert(Clasp::Positive));
        let s = KnotSpec::parse(r#"{"name": "K", "seifert": [[-1, 1], [0, -1]]}"#).unwrap().resolve().unwrap();
        assert_eq!(s.label, "K");
        assert_eq!(signature(&s.seifert), -2);
    }

    #[test]
    fn rejections() {
        assert!(matches!(KnotSpec::parse("granny"), Err(KnotError::UnknownName(_))));
        assert!(matches!(KnotSpec::parse(r#"{"torus": [2, 3], "colour": 1}"#), Err(KnotError::Syntax { .. })));
        assert!(matches!(KnotSpec::parse("torus:2"), Err(KnotError::Syntax { .. })));
        let both = KnotSpec {
            torus: Some((2, 3)),
            twist: Some(1),
            ..Default::default()
        };
        assert_eq!(both.resolve(), Err(KnotError::Ambiguous));
        assert!(matches!(
            KnotSpec::parse(r#"{"seifert": [[1, 0], [0, 1]]}"#).unwrap().resolve(),
            Err(KnotError::Seifert(SeifertError::NotSymplectic(_)))
        ));
        assert!(matches!(KnotSpec::torus(2, 4).resolve(), Err(KnotError::Seifert(_))));
    }

    #[test]
    fn every_name_resolves() {
        for (name, _) in NAMED_KNOTS {
            KnotSpec::named(name).resolve().unwrap();
        }
    }
}
