//! Standard orderings of eigenspaces.
//!
//! The eigenspaces of `x` are ordered so that a raising partner moves each
//! eigenspace at most one step up and a lowering partner at most one step
//! down. A nonzero off-diagonal block of either partner pins two
//! eigenspaces next to each other; the pins are chained into fragments and
//! the fragments are arranged in every possible order. The bijection
//! conditions then pick the standard one among the candidates.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{BijectionFamily, Error, Operator, Result};
use crate::exactlinalg::matrix::{dot, scaled_restriction_of_power, Matrix};
use crate::exactlinalg::rational::Rational;
use crate::exactlinalg::spectrum::{diagonalize, eigenspaces, SpectrumError};
use crate::exactlinalg::subspace::{Decomposition, Subspace};

/// Beyond this many fragments only the tie-break arrangement is tried.
const MAX_PERMUTED_FRAGMENTS: usize = 6;

/// An ordering of the eigenspaces of one operator with its eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardOrdering {
    decomposition: Decomposition,
    eigenvalues: Vec<Rational>,
}

impl StandardOrdering {
    pub(crate) fn new(decomposition: Decomposition, eigenvalues: Vec<Rational>) -> Self {
        debug_assert_eq!(decomposition.len(), eigenvalues.len());
        StandardOrdering {
            decomposition,
            eigenvalues,
        }
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn eigenvalues(&self) -> &[Rational] {
        &self.eigenvalues
    }

    pub fn diameter(&self) -> usize {
        self.decomposition.diameter()
    }

    pub fn part(&self, i: usize) -> &Subspace {
        self.decomposition.part(i)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.decomposition.dims()
    }

    pub fn reversed(&self) -> StandardOrdering {
        StandardOrdering {
            decomposition: self.decomposition.reversed(),
            eigenvalues: self.eigenvalues.iter().rev().cloned().collect(),
        }
    }

    /// Same eigenspaces, eigenvalues replaced.
    pub(crate) fn with_eigenvalues(&self, eigenvalues: Vec<Rational>) -> StandardOrdering {
        StandardOrdering::new(self.decomposition.clone(), eigenvalues)
    }

    /// The operator with these eigenspaces and eigenvalues.
    pub fn operator(&self) -> Matrix {
        self.decomposition.operator(&self.eigenvalues)
    }
}

/// Orderings of the eigenspaces of `x` compatible with the containments
/// `up·V_i ⊆ V_i + V_(i+1)` and `down·V_i ⊆ V_(i-1) + V_i`.
///
/// When the containments leave several arrangements open, all of them are
/// returned, the first one listing fragments by increasing eigenvalue.
pub fn find_standard_ordering(
    x: &Matrix,
    up: &Matrix,
    down: Option<&Matrix>,
) -> Result<Vec<StandardOrdering>> {
    ordering_candidates(Operator::A, x, up, down)
}

pub(crate) fn ordering_candidates(
    op: Operator,
    x: &Matrix,
    up: &Matrix,
    down: Option<&Matrix>,
) -> Result<Vec<StandardOrdering>> {
    let spaces = diagonalize(x).map_err(|e| match e {
        SpectrumError::Irrational => Error::IrrationalSpectrum(op),
        SpectrumError::NotDiagonalizable => Error::NotDiagonalizable(op),
    })?;
    let (values, parts): (Vec<Rational>, Vec<Subspace>) = spaces.into_iter().unzip();
    let k = parts.len();
    // Left eigenvectors for one eigenvalue pair nondegenerately with its
    // eigenspace and annihilate the others, so a partner moves V_i into
    // V_j exactly when left_j · partner · V_i is nonzero.
    // The zero pattern survives clearing denominators row by row on the
    // left vectors, vector by vector on the eigenspaces and by one common
    // factor on the partner, so it is computed over the integers.
    let xt = x.transpose();
    let left: Vec<Vec<Vec<BigInt>>> = eigenspaces(&xt, &values)
        .iter()
        .map(|s| s.basis().integer_rows())
        .collect();
    let right: Vec<Vec<Vec<BigInt>>> = parts.iter().map(|p| p.basis().integer_rows()).collect();
    let moves = |partner: &Matrix| -> Vec<Vec<bool>> {
        let pm = partner.integer_multiple();
        let images: Vec<Vec<Vec<BigInt>>> = right
            .iter()
            .map(|vs| {
                vs.iter()
                    .map(|v| pm.iter().map(|row| dot(row, v)).collect())
                    .collect()
            })
            .collect();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        i != j
                            && left[j]
                                .iter()
                                .any(|l| images[i].iter().any(|w| !dot(l, w).is_zero()))
                    })
                    .collect()
            })
            .collect()
    };
    let eigen = Decomposition::new(x.rows(), parts)
        .map_err(|_| Error::InternalInvariantViolation("eigenspaces are not a decomposition".into()))?;

    let mut succ: Vec<Option<usize>> = vec![None; k];
    let mut pred: Vec<Option<usize>> = vec![None; k];
    let mut link = |i: usize, j: usize| -> Result<()> {
        if succ[i].is_some_and(|s| s != j) || pred[j].is_some_and(|p| p != i) {
            return Err(Error::NoStandardOrdering(op));
        }
        succ[i] = Some(j);
        pred[j] = Some(i);
        Ok(())
    };
    let up_moves = moves(up);
    for i in 0..k {
        for j in 0..k {
            if up_moves[i][j] {
                link(i, j)?;
            }
        }
    }
    if let Some(down) = down {
        let down_moves = moves(down);
        for i in 0..k {
            for j in 0..k {
                if down_moves[i][j] {
                    link(j, i)?;
                }
            }
        }
    }

    let mut fragments: Vec<Vec<usize>> = Vec::new();
    for head in (0..k).filter(|&i| pred[i].is_none()) {
        let mut chain = vec![head];
        while let Some(next) = succ[*chain.last().expect("nonempty")] {
            chain.push(next);
        }
        fragments.push(chain);
    }
    if fragments.iter().map(Vec::len).sum::<usize>() != k {
        // some eigenspaces lie on a cycle
        return Err(Error::NoStandardOrdering(op));
    }

    let arrangements: Vec<Vec<usize>> = if fragments.len() <= MAX_PERMUTED_FRAGMENTS {
        (0..fragments.len()).permutations(fragments.len()).collect()
    } else {
        vec![(0..fragments.len()).collect()]
    };
    Ok(arrangements
        .into_iter()
        .map(|arrangement| {
            let order: Vec<usize> = arrangement
                .into_iter()
                .flat_map(|f| fragments[f].iter().copied())
                .collect();
            let parts = order.iter().map(|&i| eigen.part(i).clone()).collect();
            let decomposition =
                Decomposition::new(x.rows(), parts).expect("reordered decomposition");
            StandardOrdering::new(decomposition, order.iter().map(|&i| values[i].clone()).collect())
        })
        .collect())
}

/// Checks that `comm^(d-2i)` restricts to a bijection `V_i → V_(d-i)`
/// (`raising`) or `V_(d-i) → V_i` (lowering) for `0 ≤ i ≤ d/2`. Scaling
/// `comm` by a nonzero scalar does not change the outcome.
pub fn check_bijection_family(
    comm: &Matrix,
    ordering: &Decomposition,
    raising: bool,
    family: BijectionFamily,
) -> Result<()> {
    let d = ordering.diameter();
    for i in 0..=d / 2 {
        let (low, high) = (ordering.part(i), ordering.part(d - i));
        let (from, to) = if raising { (low, high) } else { (high, low) };
        let fails = Error::BijectionFails { family, index: i };
        if from.dim() != to.dim() {
            return Err(fails);
        }
        let power = u32::try_from(d - 2 * i).expect("diameter fits in u32");
        let restricted = scaled_restriction_of_power(comm, power, from, to).map_err(|_| fails.clone())?;
        if restricted.rank() != from.dim() {
            return Err(fails);
        }
    }
    Ok(())
}

/// A bijection family to test on each candidate ordering.
pub(crate) struct FamilyCheck {
    pub family: BijectionFamily,
    /// Any nonzero multiple of the commutator.
    pub commutator: Matrix,
    pub raising: bool,
}

/// The unique candidate satisfying every family check.
pub(crate) fn select_ordering(
    op: Operator,
    candidates: Vec<StandardOrdering>,
    checks: &[FamilyCheck],
) -> Result<StandardOrdering> {
    let mut first_error = None;
    let mut passing = Vec::new();
    for candidate in candidates {
        let outcome = checks.iter().try_for_each(|c| {
            check_bijection_family(&c.commutator, candidate.decomposition(), c.raising, c.family)
        });
        match outcome {
            Ok(()) => passing.push(candidate),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    match passing.len() {
        1 => Ok(passing.pop().expect("one candidate")),
        0 => Err(first_error.unwrap_or(Error::NoStandardOrdering(op))),
        _ => Err(Error::AmbiguousOrdering(op)),
    }
}
