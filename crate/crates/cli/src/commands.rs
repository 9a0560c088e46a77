//! One function per subcommand. Each takes parsed documents and returns
//! either a document or a report; every number in a report is recomputed
//! from the input, never copied from it.

use bdtriple_core::bdcore::{
    compute_base, is_isomorphic, q_from_base, reduced_kind, verify_bd_pair, verify_bd_triple,
    VerifiedPair,
};
use bdtriple_core::classify::{
    construct_from_parameter_array, reduce_triple, validate_parameter_array,
    verify_fundamental_relations, verify_reduced_relations,
};
use bdtriple_core::extension::extend_pair;
use bdtriple_core::repmod::{module_to_triple, triple_to_module};
use bdtriple_core::{Error, Rational, ReducedKind, VerifiedTriple};

use crate::document::Document;
use crate::error::CliError;
use crate::report::Report;

/// What a command prints.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Document(Document),
    Report(Report),
}

const PASS: &str = "pass";

fn triple_report(t: &VerifiedTriple) -> Report {
    let pa = t.parameter_array();
    Report::new()
        .with("kind", "triple")
        .with("dim", t.dim())
        .with("diameter", t.diameter())
        .rational("base", t.base())
        .rationals("theta", pa.theta())
        .rationals("theta_prime", pa.theta_prime())
        .rationals("theta_double", pa.theta_double())
        .with("shape", pa.shape().to_vec())
        .with("diagonalizable", PASS)
        .with("standard_orderings", PASS)
        .with("bijections", PASS)
}

fn pair_report(p: &VerifiedPair) -> Report {
    Report::new()
        .with("kind", "pair")
        .with("dim", p.dim())
        .with("diameter", p.diameter())
        .rational("base", p.base())
        .rationals("eigenvalues", p.eigenvalues())
        .rationals("dual_eigenvalues", p.dual_eigenvalues())
        .with("shape", p.shape().to_vec())
        .with("diagonalizable", PASS)
        .with("standard_orderings", PASS)
        .with("bijections", PASS)
}

pub fn verified_triple(doc: &Document) -> Result<VerifiedTriple, CliError> {
    Ok(verify_bd_triple(&doc.to_triple()?)?)
}

fn verified_pair(doc: &Document) -> Result<VerifiedPair, CliError> {
    let (a, a_prime) = doc.to_pair()?;
    Ok(verify_bd_pair(&a, &a_prime)?)
}

/// Verifies a triple or a pair.
pub fn cmd_verify(doc: &Document) -> Result<Report, CliError> {
    match doc {
        Document::Triple(_) => Ok(triple_report(&verified_triple(doc)?)),
        Document::Pair(_) => Ok(pair_report(&verified_pair(doc)?)),
        other => Err(CliError::Parse(format!(
            "verify expects a triple or pair document, found {}",
            other.kind()
        ))),
    }
}

/// The parameter array of a triple, as a document.
pub fn cmd_param_array(doc: &Document) -> Result<Document, CliError> {
    Ok(Document::from_parameter_array(
        verified_triple(doc)?.parameter_array(),
    ))
}

/// The base of a triple, pair or parameter array, and `q` with `b = q^-2`.
pub fn cmd_base(doc: &Document) -> Result<Report, CliError> {
    let b = match doc {
        Document::Triple(_) => verified_triple(doc)?.base().clone(),
        Document::Pair(_) => verified_pair(doc)?.base().clone(),
        Document::ParameterArray(_) => compute_base(&doc.to_parameter_array()?)?,
        other => {
            return Err(CliError::Parse(format!(
                "no base for a {} document",
                other.kind()
            )));
        }
    };
    let report = Report::new().rational("base", &b);
    if b == Rational::from_integer(1.into()) {
        return Ok(report);
    }
    Ok(match q_from_base(&b) {
        Ok(q) => report.rational("q", &q),
        Err(_) => report.with("q", "not rational"),
    })
}

/// Extends a pair to a triple.
pub fn cmd_extend(
    doc: &Document,
    target: Option<&[Rational]>,
    q: Option<&Rational>,
) -> Result<Document, CliError> {
    let pair = verified_pair(doc)?;
    let t = extend_pair(&pair, target, q)?;
    Ok(Document::from_triple(t.triple()))
}

/// Builds a triple from a parameter array.
pub fn cmd_construct(doc: &Document, q: Option<&Rational>) -> Result<Document, CliError> {
    let pa = doc.to_parameter_array()?;
    let violations = validate_parameter_array(&pa);
    if !violations.is_empty() {
        return Err(Error::InvalidParameterArray(violations).into());
    }
    let t = construct_from_parameter_array(&pa, q)?;
    Ok(Document::from_triple(t.triple()))
}

/// The affine-equivalent reduced triple.
pub fn cmd_reduce(doc: &Document, q: Option<&Rational>) -> Result<Document, CliError> {
    let (reduced, _) = reduce_triple(&verified_triple(doc)?, q)?;
    Ok(Document::from_triple(reduced.triple()))
}

/// The relation scalars, with every identity checked to vanish.
pub fn cmd_relations(doc: &Document, q: Option<&Rational>) -> Result<Report, CliError> {
    let t = verified_triple(doc)?;
    let s = verify_fundamental_relations(&t)?;
    let mut report = Report::new()
        .rational("b", &s.b)
        .rational("alpha", &s.alpha)
        .rational("alpha_prime", &s.alpha_prime)
        .rational("alpha_double", &s.alpha_double)
        .rational("gamma1", &s.gamma1)
        .rational("gamma2", &s.gamma2)
        .rational("gamma3", &s.gamma3)
        .with("fundamental_relations", PASS);
    if reduced_kind(t.parameter_array(), q).is_some() {
        report = match verify_reduced_relations(&t, q)? {
            ReducedKind::Classical => report.with("reduced", "classical"),
            ReducedKind::Quantum(q) => report.with("reduced", format!("quantum q={q}")),
        }
        .with("reduced_relations", PASS);
    }
    Ok(report)
}

/// Whether two triples are isomorphic.
pub fn cmd_isomorphic(first: &Document, second: &Document) -> Result<Report, CliError> {
    let (t1, t2) = (verified_triple(first)?, verified_triple(second)?);
    Ok(Report::new().with("isomorphic", is_isomorphic(&t1, &t2)))
}

/// The reduced triple of a segregated module.
pub fn cmd_module_build(doc: &Document) -> Result<Document, CliError> {
    let t = module_to_triple(&doc.to_module_spec()?)?;
    Ok(Document::from_triple(t.triple()))
}

/// The module whose equitable actions give a reduced triple.
pub fn cmd_module_decompose(doc: &Document, q: Option<&Rational>) -> Result<Document, CliError> {
    let recovered = triple_to_module(&verified_triple(doc)?, q)?;
    Ok(Document::from_module_spec(&recovered.spec))
}
