use num_traits::Zero;

use crate::error::{BijectionFamily, Error, Operator, Result};
use crate::exactlinalg::matrix::Matrix;
use crate::exactlinalg::rational::Rational;

use super::ordering::{ordering_candidates, select_ordering, FamilyCheck, StandardOrdering};
use super::sequence::{
    affine_equivalent_sequences, compute_base, sequence_base, AffineMap, ParameterArray,
};

/// Three square matrices of one size, not yet known to be a BD triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BdTriple {
    ops: [Matrix; 3],
}

fn check_operators(ops: &[&Matrix]) -> Result<usize> {
    for (m, op) in ops.iter().zip(Operator::ALL) {
        if !m.is_square() {
            return Err(Error::NotSquare(op));
        }
    }
    let n = ops[0].rows();
    if ops.iter().any(|m| m.rows() != n) {
        return Err(Error::SizeMismatch);
    }
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    Ok(n)
}

impl BdTriple {
    pub fn new(a: Matrix, a_prime: Matrix, a_double: Matrix) -> Result<Self> {
        check_operators(&[&a, &a_prime, &a_double])?;
        Ok(BdTriple {
            ops: [a, a_prime, a_double],
        })
    }

    pub fn dim(&self) -> usize {
        self.ops[0].rows()
    }

    pub fn a(&self) -> &Matrix {
        &self.ops[0]
    }

    pub fn a_prime(&self) -> &Matrix {
        &self.ops[1]
    }

    pub fn a_double(&self) -> &Matrix {
        &self.ops[2]
    }

    pub fn operator(&self, op: Operator) -> &Matrix {
        &self.ops[op.index()]
    }

    pub fn operators(&self) -> &[Matrix; 3] {
        &self.ops
    }
}

/// A triple together with its standard orderings, parameter array and base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifiedTriple {
    triple: BdTriple,
    orderings: [StandardOrdering; 3],
    params: ParameterArray,
    base: Rational,
}

impl VerifiedTriple {
    pub fn triple(&self) -> &BdTriple {
        &self.triple
    }

    pub fn into_triple(self) -> BdTriple {
        self.triple
    }

    pub fn dim(&self) -> usize {
        self.triple.dim()
    }

    pub fn operator(&self, op: Operator) -> &Matrix {
        self.triple.operator(op)
    }

    /// `V`, `V'` or `V''` in standard order.
    pub fn ordering(&self, op: Operator) -> &StandardOrdering {
        &self.orderings[op.index()]
    }

    pub fn parameter_array(&self) -> &ParameterArray {
        &self.params
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn diameter(&self) -> usize {
        self.params.diameter()
    }

    pub fn shape(&self) -> &[i64] {
        self.params.shape()
    }
}

/// A verified BD pair `A, A'`.
///
/// `v` orders the eigenspaces of `A` so that `A'` raises; `v_prime` orders
/// those of `A'` so that `A` raises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifiedPair {
    a: Matrix,
    a_prime: Matrix,
    v: StandardOrdering,
    v_prime: StandardOrdering,
    shape: Vec<i64>,
    base: Rational,
}

impl VerifiedPair {
    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn a_prime(&self) -> &Matrix {
        &self.a_prime
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn v(&self) -> &StandardOrdering {
        &self.v
    }

    pub fn v_prime(&self) -> &StandardOrdering {
        &self.v_prime
    }

    /// Eigenvalue sequence of `A`.
    pub fn eigenvalues(&self) -> &[Rational] {
        self.v.eigenvalues()
    }

    /// Eigenvalue sequence of `A'` in the pair ordering.
    pub fn dual_eigenvalues(&self) -> &[Rational] {
        self.v_prime.eigenvalues()
    }

    pub fn diameter(&self) -> usize {
        self.v.diameter()
    }

    pub fn shape(&self) -> &[i64] {
        &self.shape
    }

    /// Common ratio of the eigenvalue sequence of `A`.
    pub fn base(&self) -> &Rational {
        &self.base
    }
}

fn shape_of(orderings: &[&StandardOrdering]) -> Result<Vec<i64>> {
    let dims = orderings[0].dims();
    let d = dims.len() - 1;
    if orderings.iter().any(|o| o.dims() != dims) || (0..=d).any(|i| dims[i] != dims[d - i]) {
        return Err(Error::ShapeMismatch);
    }
    Ok(dims.into_iter().map(|x| x as i64).collect())
}

/// Confirms the BD pair conditions for `a, a_prime`.
pub fn verify_bd_pair(a: &Matrix, a_prime: &Matrix) -> Result<VerifiedPair> {
    check_operators(&[a, a_prime])?;
    let v_cands = ordering_candidates(Operator::A, a, a_prime, None)?;
    let w_cands = ordering_candidates(Operator::APrime, a_prime, a, None)?;
    let (d, dd) = (v_cands[0].diameter(), w_cands[0].diameter());
    if d != dd {
        return Err(Error::DiameterMismatch(vec![d, dd]));
    }
    let v = select_ordering(
        Operator::A,
        v_cands,
        &[FamilyCheck {
            family: BijectionFamily::RaiseV,
            commutator: Matrix::scaled_commutator(a_prime, a),
            raising: true,
        }],
    )?;
    let v_prime = select_ordering(
        Operator::APrime,
        w_cands,
        &[FamilyCheck {
            family: BijectionFamily::PairDual,
            commutator: Matrix::scaled_commutator(a, a_prime),
            raising: true,
        }],
    )?;
    let shape = shape_of(&[&v, &v_prime])?;
    let base = sequence_base(v.eigenvalues()).ok_or(Error::NotBRecurrent)?;
    if d >= 2 && sequence_base(v_prime.eigenvalues()) != Some(base.recip()) {
        return Err(Error::NotBRecurrent);
    }
    Ok(VerifiedPair {
        a: a.clone(),
        a_prime: a_prime.clone(),
        v,
        v_prime,
        shape,
        base,
    })
}

/// Confirms the BD triple conditions and computes the parameter array.
pub fn verify_bd_triple(t: &BdTriple) -> Result<VerifiedTriple> {
    let ops = t.operators();
    let mut candidates = Vec::with_capacity(3);
    for op in Operator::ALL {
        let o = op.index();
        let (x, up, down) = (&ops[o], &ops[(o + 1) % 3], &ops[(o + 2) % 3]);
        candidates.push(ordering_candidates(op, x, up, Some(down))?);
    }
    let diameters: Vec<usize> = candidates.iter().map(|c| c[0].diameter()).collect();
    if diameters.iter().any(|&d| d != diameters[0]) {
        return Err(Error::DiameterMismatch(diameters));
    }
    const FAMILIES: [(BijectionFamily, BijectionFamily); 3] = [
        (BijectionFamily::RaiseV, BijectionFamily::LowerV),
        (BijectionFamily::RaiseVPrime, BijectionFamily::LowerVPrime),
        (BijectionFamily::RaiseVDouble, BijectionFamily::LowerVDouble),
    ];
    let mut orderings = Vec::with_capacity(3);
    for (op, cands) in Operator::ALL.into_iter().zip(candidates) {
        let o = op.index();
        let (x, up, down) = (&ops[o], &ops[(o + 1) % 3], &ops[(o + 2) % 3]);
        let (raise, lower) = FAMILIES[o];
        let checks = [
            FamilyCheck {
                family: raise,
                commutator: Matrix::scaled_commutator(up, x),
                raising: true,
            },
            FamilyCheck {
                family: lower,
                commutator: Matrix::scaled_commutator(down, x),
                raising: false,
            },
        ];
        orderings.push(select_ordering(op, cands, &checks)?);
    }
    let orderings: [StandardOrdering; 3] = orderings.try_into().expect("three orderings");
    let shape = shape_of(&[&orderings[0], &orderings[1], &orderings[2]])?;
    let params = ParameterArray::new(
        orderings[0].eigenvalues().to_vec(),
        orderings[1].eigenvalues().to_vec(),
        orderings[2].eigenvalues().to_vec(),
        shape,
    )?;
    let base = compute_base(&params)?;
    Ok(VerifiedTriple {
        triple: t.clone(),
        orderings,
        params,
        base,
    })
}

/// `(μAμ⁻¹, μA'μ⁻¹, μA''μ⁻¹)`.
pub fn conjugate_triple(t: &BdTriple, mu: &Matrix) -> Result<BdTriple> {
    if mu.rows() != t.dim() || mu.cols() != t.dim() {
        return Err(Error::DimensionMismatch(mu.rows(), t.dim()));
    }
    let inv = mu.inverse()?;
    let conj = |m: &Matrix| &(mu * m) * &inv;
    Ok(BdTriple {
        ops: [conj(t.a()), conj(t.a_prime()), conj(t.a_double())],
    })
}

/// `(rA + sI, tA' + uI, vA'' + wI)` with the cached orderings carried over.
pub fn affine_shift_triple(t: &VerifiedTriple, maps: &[AffineMap; 3]) -> VerifiedTriple {
    let ops = t.triple.ops.clone();
    let shifted: [Matrix; 3] = std::array::from_fn(|o| ops[o].scale(maps[o].r()).shift(maps[o].s()));
    let orderings: [StandardOrdering; 3] = std::array::from_fn(|o| {
        let ord = &t.orderings[o];
        ord.with_eigenvalues(maps[o].apply_all(ord.eigenvalues()))
    });
    let params = ParameterArray::new(
        orderings[0].eigenvalues().to_vec(),
        orderings[1].eigenvalues().to_vec(),
        orderings[2].eigenvalues().to_vec(),
        t.params.shape().to_vec(),
    )
    .expect("lengths unchanged");
    // difference ratios are invariant under affine maps
    let base = t.base.clone();
    VerifiedTriple {
        triple: BdTriple { ops: shifted },
        orderings,
        params,
        base,
    }
}

/// Isomorphism test for verified triples: equal parameter arrays.
pub fn is_isomorphic(t1: &VerifiedTriple, t2: &VerifiedTriple) -> bool {
    t1.params == t2.params
}

/// The map with `x = r·y + s·I`, if `x` and `y` are affinely related.
pub fn operator_affine_relation(x: &Matrix, y: &Matrix) -> Option<AffineMap> {
    if x.rows() != y.rows() || x.cols() != y.cols() || !x.is_square() || x.rows() == 0 {
        return None;
    }
    let (x0, y0) = (x.get(0, 0), y.get(0, 0));
    let dx = x.shift(&-x0);
    let dy = y.shift(&-y0);
    let map = match dy.entries().iter().position(|e| !e.is_zero()) {
        None => {
            let s = x.as_scalar()? - y0;
            AffineMap::new(Rational::from_integer(1.into()), s).ok()?
        }
        Some(p) => {
            let r = &dx.entries()[p] / &dy.entries()[p];
            let s = x0 - &r * y0;
            AffineMap::new(r, s).ok()?
        }
    };
    (&y.scale(map.r()).shift(map.s()) == x).then_some(map)
}

/// The map carrying the eigenvalues of `y` onto those of `x` on matching
/// eigenspaces; `None` unless both have the same eigenspaces.
pub fn ordering_affine_relation(x: &StandardOrdering, y: &StandardOrdering) -> Option<AffineMap> {
    if x.decomposition().len() != y.decomposition().len() {
        return None;
    }
    let mut matched = Vec::with_capacity(x.eigenvalues().len());
    for (part, value) in x.decomposition().parts().iter().zip(x.eigenvalues()) {
        let j = y.decomposition().parts().iter().position(|p| p == part)?;
        matched.push((value.clone(), y.eigenvalues()[j].clone()));
    }
    let (sigma, tau): (Vec<Rational>, Vec<Rational>) = matched.into_iter().unzip();
    affine_equivalent_sequences(&sigma, &tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rational::{frac, int};

    /// Equitable sl2 actions on V(1), written out by hand.
    fn v1_triple() -> BdTriple {
        BdTriple::new(
            Matrix::from_ints(&[&[-1, 2], &[0, 1]]),
            Matrix::from_ints(&[&[-1, 0], &[-2, 1]]),
            Matrix::from_ints(&[&[1, 0], &[0, -1]]),
        )
        .unwrap()
    }

    #[test]
    fn equitable_v1_is_a_triple() {
        let v = verify_bd_triple(&v1_triple()).unwrap();
        assert_eq!(v.diameter(), 1);
        assert_eq!(v.shape(), &[1, 1]);
        for op in Operator::ALL {
            assert_eq!(v.parameter_array().sequence(op), &[int(-1), int(1)]);
        }
        assert_eq!(v.base(), &int(1));
    }

    #[test]
    fn scalars_form_a_diameter_zero_triple() {
        let t = BdTriple::new(
            Matrix::scalar(1, int(2)),
            Matrix::scalar(1, int(-5)),
            Matrix::scalar(1, frac(1, 3)),
        )
        .unwrap();
        let v = verify_bd_triple(&t).unwrap();
        assert_eq!(v.diameter(), 0);
        assert_eq!(v.shape(), &[1]);
        assert_eq!(v.base(), &int(1));
    }

    #[test]
    fn pairs() {
        let p = verify_bd_pair(&Matrix::zeros(1, 1), &Matrix::zeros(1, 1)).unwrap();
        assert_eq!((p.diameter(), p.shape()), (0, &[1i64][..]));
        let d = Matrix::diagonal(&[int(0), int(1)]);
        assert!(matches!(
            verify_bd_pair(&d, &d),
            Err(Error::BijectionFails { family: BijectionFamily::RaiseV, index: 0 })
        ));
    }

    #[test]
    fn malformed_inputs() {
        let sq = Matrix::identity(2);
        let rect = Matrix::zeros(2, 3);
        assert_eq!(
            BdTriple::new(sq.clone(), rect, sq.clone()),
            Err(Error::NotSquare(Operator::APrime))
        );
        assert_eq!(
            BdTriple::new(sq.clone(), Matrix::identity(3), sq),
            Err(Error::SizeMismatch)
        );
    }

    #[test]
    fn conjugation_and_shift() {
        let v = verify_bd_triple(&v1_triple()).unwrap();
        let mu = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let c = verify_bd_triple(&conjugate_triple(v.triple(), &mu).unwrap()).unwrap();
        assert!(is_isomorphic(&v, &c));
        assert_eq!(
            conjugate_triple(v.triple(), &Matrix::zeros(2, 2)),
            Err(Error::Singular)
        );
        let maps = [
            AffineMap::new(int(1), int(1)).unwrap(),
            AffineMap::new(int(-1), int(0)).unwrap(),
            AffineMap::new(frac(1, 2), int(3)).unwrap(),
        ];
        let shifted = affine_shift_triple(&v, &maps);
        assert_eq!(verify_bd_triple(shifted.triple()).unwrap(), shifted);
    }

    #[test]
    fn affine_relations_between_operators() {
        let y = Matrix::from_ints(&[&[1, 2], &[0, 3]]);
        let x = y.scale(&int(-2)).shift(&int(5));
        let m = operator_affine_relation(&x, &y).unwrap();
        assert_eq!((m.r(), m.s()), (&int(-2), &int(5)));
        assert!(operator_affine_relation(&Matrix::identity(2), &y).is_none());
        let m = operator_affine_relation(&Matrix::scalar(2, int(4)), &Matrix::identity(2)).unwrap();
        assert_eq!((m.r(), m.s()), (&int(1), &int(3)));
    }
}
