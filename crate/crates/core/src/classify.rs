//! Classification of BD triples by parameter arrays, the fundamental
//! bidiagonal relations, and reduction to the canonical eigenvalue
//! sequences.

use std::fmt;

use num_traits::One;

use crate::bdcore::{
    affine_equivalent_sequences, affine_shift_triple, classical_sequence, compute_base,
    difference_ratios, has_distinct_entries, q_from_base, quantum_sequence, reduced_kind,
    valid_q, verify_bd_triple, AffineMap, ParameterArray, ReducedKind, VerifiedTriple,
};
use crate::error::{Error, Operator, Result};
use crate::exactlinalg::matrix::Matrix;
use crate::exactlinalg::rational::{int, pow, Rational};
use crate::repmod::{module_to_triple, ModuleSpec, Summand};

/// Conditions (i)–(v) of the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Entries of each eigenvalue sequence are distinct.
    Distinct,
    /// The difference ratios of all three sequences agree and do not
    /// depend on `i`.
    CommonRatio,
    /// Every `ρ_i` is a positive integer.
    PositiveShape,
    /// `ρ_i = ρ_(d-i)`.
    SymmetricShape,
    /// `ρ_i ≤ ρ_(i+1)` for `i < d/2`.
    UnimodalShape,
}

impl Condition {
    pub const ALL: [Condition; 5] = [
        Condition::Distinct,
        Condition::CommonRatio,
        Condition::PositiveShape,
        Condition::SymmetricShape,
        Condition::UnimodalShape,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Condition::Distinct => "(i)",
            Condition::CommonRatio => "(ii)",
            Condition::PositiveShape => "(iii)",
            Condition::SymmetricShape => "(iv)",
            Condition::UnimodalShape => "(v)",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.condition, self.detail)
    }
}

const SEQUENCE_NAMES: [&str; 3] = ["theta", "theta'", "theta''"];

/// Every violated condition, in order; empty when the array is valid.
pub fn validate_parameter_array(pa: &ParameterArray) -> Vec<Violation> {
    let mut out = Vec::new();
    let d = pa.diameter();
    let shape = pa.shape();

    for (seq, name) in pa.sequences().into_iter().zip(SEQUENCE_NAMES) {
        if !has_distinct_entries(seq) {
            out.push(Violation {
                condition: Condition::Distinct,
                detail: format!("{name} has repeated entries"),
            });
        }
    }

    // Ratios with a vanishing denominator come from adjacent repeats,
    // which are already reported under (i).
    let ratios: Vec<(usize, usize, Rational)> = pa
        .sequences()
        .into_iter()
        .enumerate()
        .flat_map(|(s, seq)| {
            difference_ratios(seq)
                .into_iter()
                .enumerate()
                .filter_map(move |(i, r)| r.map(|r| (s, i + 1, r)))
        })
        .collect();
    if let Some((_, _, first)) = ratios.first() {
        if let Some((s, i, r)) = ratios.iter().find(|(_, _, r)| r != first) {
            out.push(Violation {
                condition: Condition::CommonRatio,
                detail: format!(
                    "{} has ratio {r} at i = {i}, expected {first}",
                    SEQUENCE_NAMES[*s]
                ),
            });
        }
    }

    if let Some((i, rho)) = shape.iter().enumerate().find(|(_, &r)| r < 1) {
        out.push(Violation {
            condition: Condition::PositiveShape,
            detail: format!("rho_{i} = {rho}"),
        });
    }
    if let Some(i) = (0..=d).find(|&i| shape[i] != shape[d - i]) {
        out.push(Violation {
            condition: Condition::SymmetricShape,
            detail: format!("rho_{i} = {} but rho_{} = {}", shape[i], d - i, shape[d - i]),
        });
    }
    if let Some(i) = (0..d).filter(|&i| 2 * i < d).find(|&i| shape[i] > shape[i + 1]) {
        out.push(Violation {
            condition: Condition::UnimodalShape,
            detail: format!("rho_{i} = {} > rho_{} = {}", shape[i], i + 1, shape[i + 1]),
        });
    }
    out
}

pub fn is_valid(pa: &ParameterArray) -> bool {
    validate_parameter_array(pa).is_empty()
}

/// Summands `V(d - 2i)` with multiplicity `ρ_i - ρ_(i-1)` for a valid shape.
pub fn summands_from_shape(shape: &[i64]) -> Vec<Summand> {
    let d = shape.len() - 1;
    let mut previous = 0;
    let mut out = Vec::new();
    for (i, &rho) in shape.iter().enumerate().take(d / 2 + 1) {
        let m = rho - previous;
        if m > 0 {
            out.push(Summand::new(d - 2 * i, m as usize));
        }
        previous = rho;
    }
    out
}

/// The `q` to use for base `b ≠ 1`: the supplied one if it fits, otherwise
/// the positive root.
fn q_for_base(b: &Rational, q: Option<&Rational>) -> Result<Rational> {
    match q {
        Some(q) => {
            if !valid_q(q) || &pow(q, -2) != b {
                return Err(Error::InvalidQ(format!("q = {q} does not satisfy q^-2 = {b}")));
            }
            Ok(q.clone())
        }
        None => q_from_base(b),
    }
}

/// A verified triple with parameter array `pa`, built as an affine shift of
/// the equitable triple of a segregated module.
pub fn construct_from_parameter_array(
    pa: &ParameterArray,
    q: Option<&Rational>,
) -> Result<VerifiedTriple> {
    let violations = validate_parameter_array(pa);
    if !violations.is_empty() {
        return Err(Error::InvalidParameterArray(violations));
    }
    let b = compute_base(pa)?;
    let summands = summands_from_shape(pa.shape());
    let spec = if b.is_one() {
        ModuleSpec::sl2(summands)?
    } else {
        ModuleSpec::uq(q_for_base(&b, q)?, summands)?
    };
    let reduced = module_to_triple(&spec)?;
    let maps: Vec<AffineMap> = Operator::ALL
        .iter()
        .map(|&op| {
            affine_equivalent_sequences(pa.sequence(op), reduced.parameter_array().sequence(op))
                .ok_or_else(|| {
                    Error::InternalInvariantViolation(format!(
                        "sequence of {op} is not affine to the reduced one"
                    ))
                })
        })
        .collect::<Result<_>>()?;
    let maps: [AffineMap; 3] = maps.try_into().expect("three maps");
    let shifted = affine_shift_triple(&reduced, &maps);
    let verified = verify_bd_triple(shifted.triple())?;
    if verified.parameter_array() != pa {
        return Err(Error::InternalInvariantViolation(
            "constructed triple has a different parameter array".into(),
        ));
    }
    Ok(verified)
}

/// Scalars of the fundamental bidiagonal relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationScalars {
    pub b: Rational,
    pub alpha: Rational,
    pub alpha_prime: Rational,
    pub alpha_double: Rational,
    pub gamma1: Rational,
    pub gamma2: Rational,
    pub gamma3: Rational,
}

/// The scalars for the base of `pa`. For `d = 0` the convention
/// `α = α' = α'' = 1`, `γ_1 = -(θ_0 + θ'_0)` and cyclic is used.
pub fn relation_scalars(pa: &ParameterArray) -> Result<RelationScalars> {
    let b = compute_base(pa)?;
    relation_scalars_with_base(pa, &b)
}

/// As [`relation_scalars`] with an explicit `b`. For `d ≤ 1` the recurrences
/// hold for any `b`, so the scalars are not unique.
pub fn relation_scalars_with_base(pa: &ParameterArray, b: &Rational) -> Result<RelationScalars> {
    let d = pa.diameter();
    let [t0, t1, t2] = pa.sequences();
    if d == 0 {
        return Ok(RelationScalars {
            b: b.clone(),
            alpha: Rational::one(),
            alpha_prime: Rational::one(),
            alpha_double: Rational::one(),
            gamma1: -(&t0[0] + &t1[0]),
            gamma2: -(&t1[0] + &t2[0]),
            gamma3: -(&t2[0] + &t0[0]),
        });
    }
    let alpha_at = |s: &[Rational], i: usize| &s[i + 1] - b * &s[i];
    let gamma_at =
        |s: &[Rational], u: &[Rational], i: usize| b * &s[i] * &u[d - i - 1] - &s[i + 1] * &u[d - i];
    let scalars = RelationScalars {
        b: b.clone(),
        alpha: alpha_at(t0, 0),
        alpha_prime: alpha_at(t1, 0),
        alpha_double: alpha_at(t2, 0),
        gamma1: gamma_at(t0, t1, 0),
        gamma2: gamma_at(t1, t2, 0),
        gamma3: gamma_at(t2, t0, 0),
    };
    for i in 0..d {
        let holds = alpha_at(t0, i) == scalars.alpha
            && alpha_at(t1, i) == scalars.alpha_prime
            && alpha_at(t2, i) == scalars.alpha_double
            && gamma_at(t0, t1, i) == scalars.gamma1
            && gamma_at(t1, t2, i) == scalars.gamma2
            && gamma_at(t2, t0, i) == scalars.gamma3;
        if !holds {
            return Err(Error::NotBRecurrent);
        }
    }
    Ok(scalars)
}

/// Left-hand sides of
/// `AA' - bA'A - α'A - αA' - γ_1 I`,
/// `A'A'' - bA''A' - α''A' - α'A'' - γ_2 I`,
/// `A''A - bAA'' - αA'' - α''A - γ_3 I`.
pub fn fundamental_residuals(t: &VerifiedTriple, s: &RelationScalars) -> [Matrix; 3] {
    let (a, a1, a2) = (
        t.operator(Operator::A),
        t.operator(Operator::APrime),
        t.operator(Operator::ADouble),
    );
    let n = t.dim();
    let rel = |x: &Matrix, y: &Matrix, ay: &Rational, ax: &Rational, g: &Rational| {
        let mut m = &(x * y) - &(y * x).scale(&s.b);
        m = &m - &x.scale(ay);
        m = &m - &y.scale(ax);
        &m - &Matrix::scalar(n, g.clone())
    };
    [
        rel(a, a1, &s.alpha_prime, &s.alpha, &s.gamma1),
        rel(a1, a2, &s.alpha_double, &s.alpha_prime, &s.gamma2),
        rel(a2, a, &s.alpha, &s.alpha_double, &s.gamma3),
    ]
}

const RELATION_NAMES: [&str; 3] = [
    "AA' - bA'A - a'A - aA' - g1 I = 0",
    "A'A'' - bA''A' - a''A' - a'A'' - g2 I = 0",
    "A''A - bAA'' - aA'' - a''A - g3 I = 0",
];

/// Computes the relation scalars from the parameter array and checks the
/// three identities exactly.
pub fn verify_fundamental_relations(t: &VerifiedTriple) -> Result<RelationScalars> {
    let scalars = relation_scalars(t.parameter_array())?;
    for (residual, name) in fundamental_residuals(t, &scalars).iter().zip(RELATION_NAMES) {
        if !residual.is_zero() {
            return Err(Error::RelationViolation(name.into()));
        }
    }
    Ok(scalars)
}

/// Residuals of `AA' - A'A - 2A - 2A' = 0` (classical) or
/// `qAA' - q⁻¹A'A - (q - q⁻¹)I = 0` (quantum) and their cyclic images.
pub fn reduced_residuals(t: &VerifiedTriple, kind: &ReducedKind) -> [Matrix; 3] {
    let ops = t.triple().operators();
    let n = t.dim();
    std::array::from_fn(|o| {
        let (x, y) = (&ops[o], &ops[(o + 1) % 3]);
        match kind {
            ReducedKind::Classical => {
                let two = int(2);
                let m = &(x * y) - &(y * x);
                &(&m - &x.scale(&two)) - &y.scale(&two)
            }
            ReducedKind::Quantum(q) => {
                let qi = q.recip();
                let m = &(x * y).scale(q) - &(y * x).scale(&qi);
                &m - &Matrix::scalar(n, q - &qi)
            }
        }
    })
}

/// Checks the reduced relations for a reduced triple and reports its kind.
pub fn verify_reduced_relations(t: &VerifiedTriple, q: Option<&Rational>) -> Result<ReducedKind> {
    let kind = reduced_kind(t.parameter_array(), q).ok_or(Error::NotReduced)?;
    if reduced_residuals(t, &kind).iter().any(|m| !m.is_zero()) {
        return Err(Error::RelationViolation(match kind {
            ReducedKind::Classical => "AA' - A'A - 2A - 2A' = 0".into(),
            ReducedKind::Quantum(_) => "qAA' - q^-1 A'A - (q - q^-1)I = 0".into(),
        }));
    }
    Ok(kind)
}

/// The reduced triple on the same eigenspaces and the maps with
/// `t = r·B + s·I` componentwise.
pub fn reduce_triple(
    t: &VerifiedTriple,
    q: Option<&Rational>,
) -> Result<(VerifiedTriple, [AffineMap; 3])> {
    let d = t.diameter();
    let b = t.base();
    let target = if b.is_one() {
        classical_sequence(d)
    } else {
        quantum_sequence(d, &q_for_base(b, q)?)
    };
    let maps: Vec<AffineMap> = Operator::ALL
        .iter()
        .map(|&op| {
            affine_equivalent_sequences(t.parameter_array().sequence(op), &target).ok_or_else(
                || Error::InternalInvariantViolation(format!("{op} is not affine to the reduced sequence")),
            )
        })
        .collect::<Result<_>>()?;
    let maps: [AffineMap; 3] = maps.try_into().expect("three maps");
    let inverse: [AffineMap; 3] = std::array::from_fn(|o| maps[o].inverse());
    let reduced = affine_shift_triple(t, &inverse);
    debug_assert!(reduced
        .parameter_array()
        .sequences()
        .iter()
        .all(|s| *s == target.as_slice()));
    Ok((reduced, maps))
}

/// `q⁻¹(q - q⁻¹)`, the `γ` of the quantum reduced relations.
pub fn quantum_gamma(q: &Rational) -> Rational {
    (q - q.recip()) / q
}
