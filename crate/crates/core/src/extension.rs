//! Extending a BD pair to a BD triple.
//!
//! The third operator is diagonal on the split decomposition
//! `V''_i = (V_0 + ⋯ + V_(d-i)) ∩ (V'_0 + ⋯ + V'_i)`, where `V` and `V'`
//! are the pair orderings, and may take any b-recurrent eigenvalue
//! sequence on it.

use crate::bdcore::{
    check_bijection_family, classical_sequence, has_distinct_entries, is_b_recurrent,
    ordering_affine_relation, q_from_base, quantum_sequence, valid_q, verify_bd_triple,
    BdTriple, VerifiedPair, VerifiedTriple,
};
use crate::error::{BijectionFamily, Error, Operator, Result};
use crate::exactlinalg::matrix::Matrix;
use crate::exactlinalg::rational::{pow, Rational};
use crate::exactlinalg::subspace::Decomposition;

use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    parts: Decomposition,
    v: Decomposition,
    v_prime: Decomposition,
}

impl SplitDecomposition {
    /// The `V''_i`.
    pub fn parts(&self) -> &Decomposition {
        &self.parts
    }

    /// The eigenspace orderings it was cut from.
    pub fn sources(&self) -> (&Decomposition, &Decomposition) {
        (&self.v, &self.v_prime)
    }
}

fn invariant(what: &str) -> Error {
    Error::InternalInvariantViolation(what.to_string())
}

/// The split decomposition of a verified pair, with its corner-sum
/// identities checked.
pub fn split_decomposition(pair: &VerifiedPair) -> Result<SplitDecomposition> {
    let v = pair.v().decomposition();
    let w = pair.v_prime().decomposition();
    let d = pair.diameter();
    let mut parts = Vec::with_capacity(d + 1);
    for i in 0..=d {
        parts.push(v.span(0..d - i + 1).intersect(&w.span(0..i + 1))?);
    }
    let parts = Decomposition::new(pair.dim(), parts)
        .map_err(|_| invariant("split subspaces are not a decomposition"))?;
    for i in 0..=d {
        if w.span(0..d - i + 1) != parts.span(0..d - i + 1) {
            return Err(invariant("V'_0 + ... + V'_(d-i) differs from V''_0 + ... + V''_(d-i)"));
        }
        if parts.span(i..d + 1) != v.span(0..d - i + 1) {
            return Err(invariant("V''_i + ... + V''_d differs from V_0 + ... + V_(d-i)"));
        }
    }
    Ok(SplitDecomposition {
        parts,
        v: v.clone(),
        v_prime: w.clone(),
    })
}

/// The operators acting on `V''_i` as `θ_i` and as `θ'_(d-i)`.
pub fn candidate_maps(pair: &VerifiedPair) -> Result<(Matrix, Matrix)> {
    let split = split_decomposition(pair)?;
    Ok(candidate_maps_on(pair, &split))
}

fn candidate_maps_on(pair: &VerifiedPair, split: &SplitDecomposition) -> (Matrix, Matrix) {
    let theta = pair.eigenvalues();
    let dual_reversed: Vec<Rational> = pair.dual_eigenvalues().iter().rev().cloned().collect();
    (split.parts.operator(theta), split.parts.operator(&dual_reversed))
}

/// `(M - θ_i)V'_i ⊆ V'_(i-1)` for the first candidate and
/// `(N - θ'_i)V_i ⊆ V_(i-1)` for the second.
pub fn check_candidate_action_laws(pair: &VerifiedPair) -> Result<()> {
    let split = split_decomposition(pair)?;
    let (m, n) = candidate_maps_on(pair, &split);
    let laws = [
        (&m, pair.v_prime().decomposition(), pair.eigenvalues()),
        (&n, pair.v().decomposition(), pair.dual_eigenvalues()),
    ];
    for (map, ordering, values) in laws {
        for (i, value) in values.iter().enumerate() {
            let below = ordering.span(i.saturating_sub(1)..i);
            let image = ordering.part(i).image(&map.shift(&-value));
            if !below.contains(&image)? {
                return Err(Error::NotInvariant);
            }
        }
    }
    Ok(())
}

/// The four bijection families of the candidate maps `M` (eigenvalue `θ_i`
/// on `V''_i`) and `N` (eigenvalue `θ'_(d-i)`):
/// `[N,A]: V_(d-i) → V_i`, `[M,A']: V'_(d-i) → V'_i`,
/// `[A,N]: V''_i → V''_(d-i)`, `[A',M]: V''_(d-i) → V''_i`.
pub fn check_candidate_bijections(pair: &VerifiedPair) -> Result<()> {
    let split = split_decomposition(pair)?;
    let (m, n) = candidate_maps_on(pair, &split);
    let (a, a1) = (pair.a(), pair.a_prime());
    let family = BijectionFamily::PairDual;
    check_bijection_family(&Matrix::commutator(&n, a), pair.v().decomposition(), false, family)?;
    check_bijection_family(
        &Matrix::commutator(&m, a1),
        pair.v_prime().decomposition(),
        false,
        family,
    )?;
    check_bijection_family(&Matrix::commutator(a, &n), &split.parts, true, family)?;
    check_bijection_family(&Matrix::commutator(a1, &m), &split.parts, false, family)
}

/// The eigenvalue sequence used for the third operator when none is given.
pub fn default_third_sequence(pair: &VerifiedPair, q: Option<&Rational>) -> Result<Vec<Rational>> {
    let d = pair.diameter();
    let b = pair.base();
    if b.is_one() {
        return Ok(classical_sequence(d));
    }
    let q = match q {
        Some(q) => {
            if !valid_q(q) || &pow(q, -2) != b {
                return Err(Error::InvalidQ(format!("q = {q} does not satisfy q^-2 = {b}")));
            }
            q.clone()
        }
        None => q_from_base(b)?,
    };
    Ok(quantum_sequence(d, &q))
}

/// Builds `A''` on the split decomposition with eigenvalues `target`
/// (or the default sequence) and verifies the resulting triple.
pub fn extend_pair(
    pair: &VerifiedPair,
    target: Option<&[Rational]>,
    q: Option<&Rational>,
) -> Result<VerifiedTriple> {
    let d = pair.diameter();
    let target = match target {
        Some(t) => {
            if t.len() != d + 1 {
                return Err(Error::LengthMismatch);
            }
            if !has_distinct_entries(t) || (d >= 2 && !is_b_recurrent(t, pair.base())) {
                return Err(Error::NotBRecurrent);
            }
            t.to_vec()
        }
        None => default_third_sequence(pair, q)?,
    };
    let split = split_decomposition(pair)?;
    let a_double = split.parts.operator(&target);
    let triple = BdTriple::new(pair.a().clone(), pair.a_prime().clone(), a_double)?;
    let verified = verify_bd_triple(&triple)?;
    let pa = verified.parameter_array();
    let dual_reversed: Vec<Rational> = pair.dual_eigenvalues().iter().rev().cloned().collect();
    if pa.theta() != pair.eigenvalues()
        || pa.theta_prime() != dual_reversed.as_slice()
        || pa.theta_double() != target.as_slice()
        || pa.shape() != pair.shape()
    {
        return Err(invariant("extended triple has unexpected parameter array"));
    }
    Ok(verified)
}

/// Given `A ∼ B` and `A' ∼ B'`, decides whether `A'' ∼ B''`.
pub fn check_uniqueness(t1: &VerifiedTriple, t2: &VerifiedTriple) -> Result<bool> {
    if t1.dim() != t2.dim() {
        return Err(Error::PreconditionFailed("triples act on different spaces".into()));
    }
    for op in [Operator::A, Operator::APrime] {
        if ordering_affine_relation(t1.ordering(op), t2.ordering(op)).is_none() {
            return Err(Error::PreconditionFailed(format!(
                "{op} is not affine equivalent across the two triples"
            )));
        }
    }
    Ok(ordering_affine_relation(t1.ordering(Operator::ADouble), t2.ordering(Operator::ADouble))
        .is_some())
}
