//! JSON documents exchanged by the command-line tool.
//!
//! Every rational travels as a string, `"p"` or `"p/q"` in lowest terms, so
//! a value read back is identical to the value written. Matrices are
//! row-major nested lists.

use std::fmt;

use bdtriple_core::exactlinalg::parse_rational;
use bdtriple_core::{Algebra, BdTriple, Matrix, ModuleSpec, ParameterArray, Rational, Summand};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::CliError;

/// A rational written as a decimal-free string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct QVisitor;

        impl Visitor<'_> for QVisitor {
            type Value = Q;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p\" or \"p/q\", or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rational(v).map(Q).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(bdtriple_core::exactlinalg::int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                let v = i64::try_from(v).map_err(E::custom)?;
                Ok(Q(bdtriple_core::exactlinalg::int(v)))
            }
        }

        deserializer.deserialize_any(QVisitor)
    }
}

pub type MatrixDoc = Vec<Vec<Q>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterArrayDoc {
    pub theta: Vec<Q>,
    pub theta_prime: Vec<Q>,
    pub theta_double: Vec<Q>,
    pub shape: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandDoc {
    pub degree: usize,
    #[serde(default = "plus_one", skip_serializing_if = "is_plus_one")]
    pub epsilon: i8,
    pub multiplicity: usize,
}

fn plus_one() -> i8 {
    1
}

fn is_plus_one(e: &i8) -> bool {
    *e == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpecDoc {
    /// `"sl2"` or `"uq"`.
    pub algebra: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Q>,
    pub summands: Vec<SummandDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Document {
    Triple([MatrixDoc; 3]),
    Pair([MatrixDoc; 2]),
    ParameterArray(ParameterArrayDoc),
    ModuleSpec(ModuleSpecDoc),
}

fn write_pretty(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push_str(
                &serde_json::to_string(v)
                    .expect("scalars serialize")
                    .replace(',', ", "),
            );
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_pretty(x, depth + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("keys serialize"));
                out.push_str(": ");
                write_pretty(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&serde_json::to_string(scalar).expect("scalars serialize")),
    }
}

fn parse_error(what: impl fmt::Display) -> CliError {
    CliError::Parse(what.to_string())
}

fn matrix_doc(m: &Matrix) -> MatrixDoc {
    m.row_vectors()
        .map(|row| row.iter().cloned().map(Q).collect())
        .collect()
}

fn to_matrix(doc: &MatrixDoc) -> Result<Matrix, CliError> {
    let rows: Vec<Vec<Rational>> = doc
        .iter()
        .map(|row| row.iter().map(|x| x.0.clone()).collect())
        .collect();
    let m = Matrix::from_rows(rows).map_err(parse_error)?;
    if m.rows() == 0 || !m.is_square() {
        return Err(parse_error(format!(
            "expected a nonempty square matrix, found {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m)
}

fn to_rationals(xs: &[Q]) -> Vec<Rational> {
    xs.iter().map(|x| x.0.clone()).collect()
}

fn to_qs(xs: &[Rational]) -> Vec<Q> {
    xs.iter().cloned().map(Q).collect()
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, CliError> {
        serde_json::from_str(text).map_err(parse_error)
    }

    /// Indented JSON with a trailing newline; lists of scalars, such as
    /// matrix rows, stay on one line.
    pub fn to_pretty(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize");
        let mut out = String::new();
        write_pretty(&value, 0, &mut out);
        out.push('\n');
        out
    }

    /// One line of JSON.
    pub fn to_compact(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Triple(_) => "triple",
            Document::Pair(_) => "pair",
            Document::ParameterArray(_) => "parameter_array",
            Document::ModuleSpec(_) => "module_spec",
        }
    }

    pub fn from_triple(t: &BdTriple) -> Document {
        Document::Triple([
            matrix_doc(t.a()),
            matrix_doc(t.a_prime()),
            matrix_doc(t.a_double()),
        ])
    }

    pub fn from_pair(a: &Matrix, a_prime: &Matrix) -> Document {
        Document::Pair([matrix_doc(a), matrix_doc(a_prime)])
    }

    pub fn from_parameter_array(pa: &ParameterArray) -> Document {
        Document::ParameterArray(ParameterArrayDoc {
            theta: to_qs(pa.theta()),
            theta_prime: to_qs(pa.theta_prime()),
            theta_double: to_qs(pa.theta_double()),
            shape: pa.shape().to_vec(),
        })
    }

    pub fn from_module_spec(spec: &ModuleSpec) -> Document {
        Document::ModuleSpec(ModuleSpecDoc {
            algebra: spec.algebra().to_string(),
            q: spec.q().cloned().map(Q),
            summands: spec
                .summands()
                .iter()
                .map(|s| SummandDoc {
                    degree: s.degree,
                    epsilon: s.epsilon,
                    multiplicity: s.multiplicity,
                })
                .collect(),
        })
    }

    fn expected(&self, what: &str) -> CliError {
        parse_error(format!("expected a {what} document, found {}", self.kind()))
    }

    pub fn to_triple(&self) -> Result<BdTriple, CliError> {
        let Document::Triple([a, b, c]) = self else {
            return Err(self.expected("triple"));
        };
        BdTriple::new(to_matrix(a)?, to_matrix(b)?, to_matrix(c)?).map_err(parse_error)
    }

    pub fn to_pair(&self) -> Result<(Matrix, Matrix), CliError> {
        let Document::Pair([a, b]) = self else {
            return Err(self.expected("pair"));
        };
        let (a, b) = (to_matrix(a)?, to_matrix(b)?);
        if a.rows() != b.rows() {
            return Err(parse_error("pair matrices differ in size"));
        }
        Ok((a, b))
    }

    pub fn to_parameter_array(&self) -> Result<ParameterArray, CliError> {
        let Document::ParameterArray(doc) = self else {
            return Err(self.expected("parameter_array"));
        };
        ParameterArray::new(
            to_rationals(&doc.theta),
            to_rationals(&doc.theta_prime),
            to_rationals(&doc.theta_double),
            doc.shape.clone(),
        )
        .map_err(parse_error)
    }

    pub fn to_module_spec(&self) -> Result<ModuleSpec, CliError> {
        let Document::ModuleSpec(doc) = self else {
            return Err(self.expected("module_spec"));
        };
        let algebra = match doc.algebra.as_str() {
            "sl2" => Algebra::Sl2,
            "uq" => Algebra::Uq,
            other => return Err(parse_error(format!("unknown algebra {other:?}"))),
        };
        let summands = doc
            .summands
            .iter()
            .map(|s| Summand {
                degree: s.degree,
                epsilon: s.epsilon,
                multiplicity: s.multiplicity,
            })
            .collect();
        ModuleSpec::new(algebra, doc.q.as_ref().map(|q| q.0.clone()), summands).map_err(parse_error)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bdtriple_core::exactlinalg::{frac, int};

    #[test]
    fn rationals_are_strings() {
        let doc = Document::ParameterArray(ParameterArrayDoc {
            theta: vec![Q(int(4)), Q(int(1)), Q(frac(1, 4))],
            theta_prime: vec![Q(frac(-3, 2)), Q(int(0)), Q(int(7))],
            theta_double: vec![Q(int(1)), Q(int(2)), Q(int(3))],
            shape: vec![1, 2, 1],
        });
        let text = doc.to_compact();
        assert!(text.contains(r#""1/4""#) && text.contains(r#""-3/2""#));
        assert_eq!(Document::parse(&text).unwrap(), doc);
    }

    #[test]
    fn malformed_documents() {
        for bad in [
            r#"{"triple": [[["1"]], [["1"]]]}"#,
            r#"{"pair": [[["1", "2"]], [["1"]]]}"#,
            r#"{"parameter_array": {"theta": ["1.5"], "theta_prime": ["1"], "theta_double": ["1"], "shape": [1]}}"#,
            r#"{"pair": [], "triple": []}"#,
            "not json",
        ] {
            let parsed = Document::parse(bad).and_then(|d| d.to_pair().map(|_| ()));
            assert!(matches!(parsed, Err(CliError::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn non_square_matrix_is_a_parse_error() {
        let doc = Document::parse(r#"{"pair": [[["1", "2"]], [["1", "2"]]]}"#).unwrap();
        assert!(matches!(doc.to_pair(), Err(CliError::Parse(_))));
    }

    #[test]
    fn module_spec_round_trip() {
        let spec =
            ModuleSpec::uq(frac(-1, 3), vec![Summand::new(2, 1), Summand::new(0, 3)]).unwrap();
        let doc = Document::from_module_spec(&spec);
        let back = Document::parse(&doc.to_pretty()).unwrap();
        assert_eq!(back.to_module_spec().unwrap(), spec);
    }
}
