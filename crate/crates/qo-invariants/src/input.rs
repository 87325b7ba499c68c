//! The input document: a JSON object with a `branch` array of fraction
//! string pairs and an optional `strict` flag.
//!
//! Syntax errors surface with line and column, fractions are checked
//! against the grammar (optional sign, digits, optional `/digits`,
//! nonzero denominator), and duplicate or unknown keys are rejected.
//! Everything beyond the grammar (reducedness, monotonicity,
//! essentiality) is the business of branch validation, not parsing.

use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use crate::branch::{CharacteristicTuple, ExponentPair};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// A parsed input document. Exponents are held exactly; rendering
/// produces canonical lowest-terms fraction strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub branch: Vec<ExponentPair>,
    pub strict: bool,
}

struct RawInput {
    branch: Vec<(String, String)>,
    strict: bool,
}

impl<'de> Deserialize<'de> for RawInput {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RawVisitor;

        impl<'de> Visitor<'de> for RawVisitor {
            type Value = RawInput;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with a \"branch\" array and optional \"strict\" flag")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<RawInput, A::Error> {
                let mut branch: Option<Vec<(String, String)>> = None;
                let mut strict: Option<bool> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "branch" => {
                            if branch.is_some() {
                                return Err(de::Error::custom("duplicate key \"branch\""));
                            }
                            branch = Some(map.next_value()?);
                        }
                        "strict" => {
                            if strict.is_some() {
                                return Err(de::Error::custom("duplicate key \"strict\""));
                            }
                            strict = Some(map.next_value()?);
                        }
                        other => {
                            return Err(de::Error::custom(format!("unknown key {other:?}")));
                        }
                    }
                }
                Ok(RawInput {
                    branch: branch.ok_or_else(|| de::Error::missing_field("branch"))?,
                    strict: strict.unwrap_or(false),
                })
            }
        }

        deserializer.deserialize_map(RawVisitor)
    }
}

impl InputDocument {
    /// Parses the documented input format from text.
    pub fn parse(text: &str) -> Result<InputDocument> {
        let raw: RawInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut branch = Vec::with_capacity(raw.branch.len());
        for (index, (first, second)) in raw.branch.iter().enumerate() {
            let context = |e: Error| match e {
                Error::Parse(msg) => Error::Parse(format!("branch term {index}: {msg}")),
                other => other,
            };
            branch.push(ExponentPair::new(
                first.parse::<Rational>().map_err(context)?,
                second.parse::<Rational>().map_err(context)?,
            ));
        }
        Ok(InputDocument {
            branch,
            strict: raw.strict,
        })
    }

    /// Canonical JSON rendering; `parse` of the result reproduces the
    /// document exactly.
    pub fn render(&self) -> String {
        let branch: Vec<[String; 2]> = self
            .branch
            .iter()
            .map(|p| [p.lambda1.to_string(), p.lambda2.to_string()])
            .collect();
        serde_json::json!({ "branch": branch, "strict": self.strict }).to_string()
    }

    pub fn tuple(&self) -> CharacteristicTuple {
        CharacteristicTuple::new(self.branch.clone())
    }
}
