//! Eigenvalue sequences: parameter arrays, bases, b-recurrence and affine
//! equivalence.

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Operator, Result};
use crate::exactlinalg::rational::{int, pow, rational_sqrt, Rational};

/// `x ↦ r·x + s` with `r ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    r: Rational,
    s: Rational,
}

impl AffineMap {
    pub fn new(r: Rational, s: Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::PreconditionFailed("affine map with r = 0".into()));
        }
        Ok(AffineMap { r, s })
    }

    pub fn identity() -> Self {
        AffineMap {
            r: Rational::one(),
            s: Rational::zero(),
        }
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.r * x + &self.s
    }

    pub fn apply_all(&self, xs: &[Rational]) -> Vec<Rational> {
        xs.iter().map(|x| self.apply(x)).collect()
    }

    pub fn inverse(&self) -> AffineMap {
        let r = self.r.recip();
        let s = -(&self.s * &r);
        AffineMap { r, s }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            r: &self.r * &other.r,
            s: &self.r * &other.s + &self.s,
        }
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.s)
    }
}

/// Eigenvalue sequences and shape of a triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParameterArray {
    theta: Vec<Rational>,
    theta_prime: Vec<Rational>,
    theta_double: Vec<Rational>,
    shape: Vec<i64>,
}

impl ParameterArray {
    /// Checks only that the four lists are nonempty and of equal length;
    /// the classification conditions are checked by
    /// [`crate::classify::validate_parameter_array`].
    pub fn new(
        theta: Vec<Rational>,
        theta_prime: Vec<Rational>,
        theta_double: Vec<Rational>,
        shape: Vec<i64>,
    ) -> Result<Self> {
        let n = theta.len();
        if n == 0 || theta_prime.len() != n || theta_double.len() != n || shape.len() != n {
            return Err(Error::LengthMismatch);
        }
        Ok(ParameterArray {
            theta,
            theta_prime,
            theta_double,
            shape,
        })
    }

    pub fn diameter(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn theta(&self) -> &[Rational] {
        &self.theta
    }

    pub fn theta_prime(&self) -> &[Rational] {
        &self.theta_prime
    }

    pub fn theta_double(&self) -> &[Rational] {
        &self.theta_double
    }

    pub fn sequence(&self, op: Operator) -> &[Rational] {
        match op {
            Operator::A => &self.theta,
            Operator::APrime => &self.theta_prime,
            Operator::ADouble => &self.theta_double,
        }
    }

    pub fn sequences(&self) -> [&[Rational]; 3] {
        [&self.theta, &self.theta_prime, &self.theta_double]
    }

    pub fn shape(&self) -> &[i64] {
        &self.shape
    }
}

pub fn has_distinct_entries(seq: &[Rational]) -> bool {
    let mut seen = HashSet::with_capacity(seq.len());
    seq.iter().all(|x| seen.insert(x))
}

/// The ratios `(σ_(i+1) - σ_i) / (σ_i - σ_(i-1))` for `1 ≤ i ≤ d-1`;
/// `None` where a denominator vanishes.
pub fn difference_ratios(seq: &[Rational]) -> Vec<Option<Rational>> {
    seq.windows(3)
        .map(|w| {
            let den = &w[1] - &w[0];
            if den.is_zero() {
                None
            } else {
                Some((&w[2] - &w[1]) / den)
            }
        })
        .collect()
}

pub fn is_b_recurrent(seq: &[Rational], b: &Rational) -> bool {
    has_distinct_entries(seq) && difference_ratios(seq).iter().all(|r| r.as_ref() == Some(b))
}

/// The common ratio of a sequence with distinct entries, or 1 when the
/// sequence has fewer than three terms.
pub fn sequence_base(seq: &[Rational]) -> Option<Rational> {
    if !has_distinct_entries(seq) {
        return None;
    }
    let ratios = difference_ratios(seq);
    match ratios.first() {
        None => Some(Rational::one()),
        Some(first) => {
            let b = first.clone()?;
            ratios.iter().all(|r| r.as_ref() == Some(&b)).then_some(b)
        }
    }
}

/// The common ratio of all three sequences; 1 when `d ≤ 1`.
pub fn compute_base(pa: &ParameterArray) -> Result<Rational> {
    if pa.diameter() <= 1 {
        return Ok(Rational::one());
    }
    let mut bases = pa.sequences().into_iter().map(sequence_base);
    let b = bases.next().flatten().ok_or(Error::NotBRecurrent)?;
    if bases.all(|x| x.as_ref() == Some(&b)) {
        Ok(b)
    } else {
        Err(Error::NotBRecurrent)
    }
}

/// The positive rational `q` with `q^2 = 1/b`.
pub fn q_from_base(b: &Rational) -> Result<Rational> {
    if b.is_zero() || b.is_one() {
        return Err(Error::InvalidQ(format!("no q for base {b}")));
    }
    rational_sqrt(&b.recip()).ok_or_else(|| Error::Unrepresentable(b.to_string()))
}

/// The map `(r, s)` with `σ_i = r·τ_i + s` for all `i`, if any.
///
/// Sequences of length one are related by `(1, σ_0 - τ_0)`.
pub fn affine_equivalent_sequences(sigma: &[Rational], tau: &[Rational]) -> Option<AffineMap> {
    if sigma.len() != tau.len() || sigma.is_empty() {
        return None;
    }
    if sigma.len() == 1 {
        return Some(AffineMap {
            r: Rational::one(),
            s: &sigma[0] - &tau[0],
        });
    }
    let dt = &tau[1] - &tau[0];
    if dt.is_zero() {
        return None;
    }
    let r = (&sigma[1] - &sigma[0]) / dt;
    if r.is_zero() {
        return None;
    }
    let s = &sigma[0] - &r * &tau[0];
    let map = AffineMap { r, s };
    sigma
        .iter()
        .zip(tau)
        .all(|(x, y)| &map.apply(y) == x)
        .then_some(map)
}

/// `{2i - d}`.
pub fn classical_sequence(d: usize) -> Vec<Rational> {
    (0..=d).map(|i| int(2 * i as i64 - d as i64)).collect()
}

/// `{q^(d-2i)}`.
pub fn quantum_sequence(d: usize, q: &Rational) -> Vec<Rational> {
    (0..=d).map(|i| pow(q, d as i64 - 2 * i as i64)).collect()
}

/// Which canonical sequence the three eigenvalue sequences of a reduced
/// triple share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedKind {
    /// All three are `{2i - d}`.
    Classical,
    /// All three are `{q^(d-2i)}`.
    Quantum(Rational),
}

pub fn valid_q(q: &Rational) -> bool {
    !q.is_zero() && q.abs() != Rational::one()
}

/// Whether `pa` is reduced, and of which kind.
///
/// `q` is taken from the sequences when it is not supplied: from
/// `θ_0 / θ_1 = q^2` (positive root first), which needs `d ≥ 1`.
pub fn reduced_kind(pa: &ParameterArray, q: Option<&Rational>) -> Option<ReducedKind> {
    let d = pa.diameter();
    let all_equal = |target: &[Rational]| pa.sequences().iter().all(|s| *s == target);
    if all_equal(&classical_sequence(d)) {
        return Some(ReducedKind::Classical);
    }
    let candidates: Vec<Rational> = match q {
        Some(q) => vec![q.clone()],
        None if d >= 1 && !pa.theta()[1].is_zero() => {
            match rational_sqrt(&(&pa.theta()[0] / &pa.theta()[1])) {
                Some(r) => vec![r.clone(), -r],
                None => Vec::new(),
            }
        }
        None => Vec::new(),
    };
    candidates
        .into_iter()
        .filter(valid_q)
        .find(|q| all_equal(&quantum_sequence(d, q)))
        .map(ReducedKind::Quantum)
}
