//! Finite-dimensional sl2 and U_q(sl2) modules, their equitable generators,
//! and the passage between segregated modules and reduced BD triples.
//!
//! Module bases are the concatenation of the summand bases `v_0, …, v_d`
//! in the order the summands are listed.

use std::fmt;

use crate::bdcore::{
    reduced_kind, valid_q, verify_bd_triple, BdTriple, ReducedKind, VerifiedTriple,
};
use crate::error::{Error, Result};
use crate::exactlinalg::matrix::Matrix;
use crate::exactlinalg::rational::{int, pow, Rational};
use crate::exactlinalg::spectrum::{diagonalize, eigenspace};
use crate::exactlinalg::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    Sl2,
    Uq,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Sl2 => "sl2",
            Algebra::Uq => "uq",
        })
    }
}

/// `multiplicity` copies of `V(degree)` or `V(degree, epsilon)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub degree: usize,
    pub epsilon: i8,
    pub multiplicity: usize,
}

impl Summand {
    pub fn new(degree: usize, multiplicity: usize) -> Self {
        Summand {
            degree,
            epsilon: 1,
            multiplicity,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    algebra: Algebra,
    q: Option<Rational>,
    summands: Vec<Summand>,
}

impl ModuleSpec {
    pub fn new(algebra: Algebra, q: Option<Rational>, summands: Vec<Summand>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::InvalidModule("no summands".into()));
        }
        if summands.iter().any(|s| s.multiplicity == 0) {
            return Err(Error::InvalidModule("zero multiplicity".into()));
        }
        if summands.iter().any(|s| s.epsilon != 1 && s.epsilon != -1) {
            return Err(Error::InvalidModule("epsilon must be 1 or -1".into()));
        }
        match algebra {
            Algebra::Sl2 => {
                if q.is_some() {
                    return Err(Error::InvalidModule("sl2 modules take no q".into()));
                }
                if summands.iter().any(|s| s.epsilon != 1) {
                    return Err(Error::InvalidModule("sl2 summands have no sign".into()));
                }
            }
            Algebra::Uq => match &q {
                None => return Err(Error::InvalidQ("q is required for uq".into())),
                Some(q) if !valid_q(q) => return Err(Error::InvalidQ(q.to_string())),
                Some(_) => {}
            },
        }
        Ok(ModuleSpec {
            algebra,
            q,
            summands,
        })
    }

    pub fn sl2(summands: Vec<Summand>) -> Result<Self> {
        ModuleSpec::new(Algebra::Sl2, None, summands)
    }

    pub fn uq(q: Rational, summands: Vec<Summand>) -> Result<Self> {
        ModuleSpec::new(Algebra::Uq, Some(q), summands)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn q(&self) -> Option<&Rational> {
        self.q.as_ref()
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn dim(&self) -> usize {
        self.summands
            .iter()
            .map(|s| (s.degree + 1) * s.multiplicity)
            .sum()
    }

    /// All degrees of one parity, and every sign `+1`.
    pub fn is_segregated(&self) -> bool {
        let parity = self.summands[0].degree % 2;
        self.summands
            .iter()
            .all(|s| s.degree % 2 == parity && s.epsilon == 1)
    }

    pub fn max_degree(&self) -> usize {
        self.summands.iter().map(|s| s.degree).max().unwrap_or(0)
    }

    /// Summands merged by `(degree, epsilon)`, largest degree first.
    pub fn normalized(&self) -> ModuleSpec {
        let mut merged: Vec<Summand> = Vec::new();
        for s in &self.summands {
            match merged
                .iter_mut()
                .find(|m| m.degree == s.degree && m.epsilon == s.epsilon)
            {
                Some(m) => m.multiplicity += s.multiplicity,
                None => merged.push(s.clone()),
            }
        }
        merged.sort_by(|a, b| b.degree.cmp(&a.degree).then(b.epsilon.cmp(&a.epsilon)));
        ModuleSpec {
            algebra: self.algebra,
            q: self.q.clone(),
            summands: merged,
        }
    }
}

/// Matrices of the standard generators on a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardGenerators {
    Sl2 {
        h: Matrix,
        e: Matrix,
        f: Matrix,
    },
    Uq {
        q: Rational,
        k: Matrix,
        k_inv: Matrix,
        e: Matrix,
        f: Matrix,
    },
}

impl StandardGenerators {
    pub fn algebra(&self) -> Algebra {
        match self {
            StandardGenerators::Sl2 { .. } => Algebra::Sl2,
            StandardGenerators::Uq { .. } => Algebra::Uq,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            StandardGenerators::Sl2 { h, .. } => h.rows(),
            StandardGenerators::Uq { k, .. } => k.rows(),
        }
    }

    /// Checks the defining relations exactly.
    pub fn verify(&self) -> Result<()> {
        match self {
            StandardGenerators::Sl2 { h, e, f } => verify_sl2(h, e, f),
            StandardGenerators::Uq { q, k, k_inv, e, f } => verify_uq(q, k, k_inv, e, f),
        }
    }
}

/// The equitable generators `X, Y, Z` (sl2) or `x, y, z` (U_q) and the
/// standard generators they were built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquitableActions {
    pub x: Matrix,
    pub y: Matrix,
    pub z: Matrix,
    pub generators: StandardGenerators,
}

fn violation(name: &str) -> Error {
    Error::RelationViolation(name.to_string())
}

fn require(holds: bool, name: &str) -> Result<()> {
    if holds {
        Ok(())
    } else {
        Err(violation(name))
    }
}

fn same_size(ms: &[&Matrix]) -> Result<()> {
    let n = ms[0].rows();
    if ms.iter().any(|m| !m.is_square() || m.rows() != n) {
        return Err(Error::InvalidModule("generators of different sizes".into()));
    }
    Ok(())
}

/// `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn verify_sl2(h: &Matrix, e: &Matrix, f: &Matrix) -> Result<()> {
    same_size(&[h, e, f])?;
    let two = int(2);
    require(Matrix::commutator(h, e) == e.scale(&two), "[h,e] = 2e")?;
    require(Matrix::commutator(h, f) == f.scale(&-two), "[h,f] = -2f")?;
    require(&Matrix::commutator(e, f) == h, "[e,f] = h")
}

/// `kk⁻¹ = 1`, `ke = q²ek`, `kf = q⁻²fk`, `ef - fe = (k - k⁻¹)/(q - q⁻¹)`.
pub fn verify_uq(q: &Rational, k: &Matrix, k_inv: &Matrix, e: &Matrix, f: &Matrix) -> Result<()> {
    same_size(&[k, k_inv, e, f])?;
    let n = k.rows();
    let q2 = q * q;
    require(k * k_inv == Matrix::identity(n), "k k^-1 = 1")?;
    require(k_inv * k == Matrix::identity(n), "k^-1 k = 1")?;
    require(k * e == (e * k).scale(&q2), "k e = q^2 e k")?;
    require(k * f == (f * k).scale(&q2.recip()), "k f = q^-2 f k")?;
    let c = (q - q.recip()).recip();
    require(
        &(e * f) - &(f * e) == (k - k_inv).scale(&c),
        "e f - f e = (k - k^-1)/(q - q^-1)",
    )
}

/// `[X,Y] = 2X + 2Y` and its cyclic images.
pub fn verify_equitable_sl2(x: &Matrix, y: &Matrix, z: &Matrix) -> Result<()> {
    same_size(&[x, y, z])?;
    let two = int(2);
    for (a, b, name) in [
        (x, y, "[X,Y] = 2X + 2Y"),
        (y, z, "[Y,Z] = 2Y + 2Z"),
        (z, x, "[Z,X] = 2Z + 2X"),
    ] {
        require(Matrix::commutator(a, b) == (a + b).scale(&two), name)?;
    }
    Ok(())
}

/// `q xy - q⁻¹ yx = (q - q⁻¹)·1` and its cyclic images.
pub fn verify_equitable_uq(q: &Rational, x: &Matrix, y: &Matrix, z: &Matrix) -> Result<()> {
    same_size(&[x, y, z])?;
    let qi = q.recip();
    let rhs = Matrix::scalar(x.rows(), q - &qi);
    for (a, b, name) in [
        (x, y, "q xy - q^-1 yx = (q - q^-1)1"),
        (y, z, "q yz - q^-1 zy = (q - q^-1)1"),
        (z, x, "q zx - q^-1 xz = (q - q^-1)1"),
    ] {
        require(&(a * b).scale(q) - &(b * a).scale(&qi) == rhs, name)?;
    }
    Ok(())
}

/// `[n]_q = (q^n - q^-n)/(q - q^-1)`.
pub fn q_integer(q: &Rational, n: i64) -> Rational {
    (pow(q, n) - pow(q, -n)) / (q - q.recip())
}

fn sl2_irreducible(d: usize) -> [Matrix; 3] {
    let n = d + 1;
    let di = d as i64;
    let mut h = Matrix::zeros(n, n);
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    for i in 0..n {
        let ii = i as i64;
        h.set(i, i, int(di - 2 * ii));
        if i + 1 < n {
            f.set(i + 1, i, int(ii + 1));
        }
        if i >= 1 {
            e.set(i - 1, i, int(di - ii + 1));
        }
    }
    [h, e, f]
}

fn uq_irreducible(d: usize, epsilon: i8, q: &Rational) -> [Matrix; 4] {
    let n = d + 1;
    let di = d as i64;
    let eps = int(i64::from(epsilon));
    let mut k = Matrix::zeros(n, n);
    let mut k_inv = Matrix::zeros(n, n);
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    for i in 0..n {
        let ii = i as i64;
        let kv = &eps * pow(q, di - 2 * ii);
        k_inv.set(i, i, kv.recip());
        k.set(i, i, kv);
        if i + 1 < n {
            f.set(i + 1, i, q_integer(q, ii + 1));
        }
        if i >= 1 {
            e.set(i - 1, i, &eps * q_integer(q, di - ii + 1));
        }
    }
    [k, k_inv, e, f]
}

fn blocks<const N: usize>(spec: &ModuleSpec, irr: impl Fn(&Summand) -> [Matrix; N]) -> [Matrix; N] {
    let pieces: Vec<[Matrix; N]> = spec
        .summands
        .iter()
        .flat_map(|s| std::iter::repeat_n(irr(s), s.multiplicity))
        .collect();
    std::array::from_fn(|g| {
        let parts: Vec<Matrix> = pieces.iter().map(|p| p[g].clone()).collect();
        Matrix::block_diagonal(&parts)
    })
}

/// Block-diagonal standard generators in the concatenated basis.
pub fn build_module(spec: &ModuleSpec) -> StandardGenerators {
    match spec.algebra {
        Algebra::Sl2 => {
            let [h, e, f] = blocks(spec, |s| sl2_irreducible(s.degree));
            StandardGenerators::Sl2 { h, e, f }
        }
        Algebra::Uq => {
            let q = spec.q.clone().expect("uq spec carries q");
            let [k, k_inv, e, f] = blocks(spec, |s| uq_irreducible(s.degree, s.epsilon, &q));
            StandardGenerators::Uq { q, k, k_inv, e, f }
        }
    }
}

/// `X = 2e - h, Y = -2f - h, Z = h`, or
/// `x = k, y = k⁻¹ + f(q - q⁻¹), z = k⁻¹ - k⁻¹e q(q - q⁻¹)`.
pub fn equitable_from_generators(generators: StandardGenerators) -> Result<EquitableActions> {
    let (x, y, z) = match &generators {
        StandardGenerators::Sl2 { h, e, f } => {
            let two = int(2);
            let x = &e.scale(&two) - h;
            let y = &f.scale(&-two.clone()) - h;
            let (x, y, z) = (x, y, h.clone());
            verify_equitable_sl2(&x, &y, &z)?;
            (x, y, z)
        }
        StandardGenerators::Uq { q, k, k_inv, e, f } => {
            let c = q - q.recip();
            let y = k_inv + &f.scale(&c);
            let z = k_inv - &(k_inv * e).scale(&(q * &c));
            verify_equitable_uq(q, k, &y, &z)?;
            (k.clone(), y, z)
        }
    };
    Ok(EquitableActions {
        x,
        y,
        z,
        generators,
    })
}

pub fn equitable_actions(spec: &ModuleSpec) -> Result<EquitableActions> {
    equitable_from_generators(build_module(spec))
}

/// The equitable actions of a segregated module as a verified reduced
/// triple `A = X, A' = Y, A'' = Z`.
pub fn module_to_triple(spec: &ModuleSpec) -> Result<VerifiedTriple> {
    if !spec.is_segregated() {
        return Err(Error::NotSegregated);
    }
    let actions = equitable_actions(spec)?;
    let t = verify_bd_triple(&BdTriple::new(actions.x, actions.y, actions.z)?)?;
    let expected = match spec.algebra {
        Algebra::Sl2 => ReducedKind::Classical,
        Algebra::Uq => ReducedKind::Quantum(spec.q.clone().expect("uq spec carries q")),
    };
    if reduced_kind(t.parameter_array(), spec.q.as_ref()) != Some(expected) {
        return Err(Error::InternalInvariantViolation(
            "equitable actions of a segregated module are not reduced".into(),
        ));
    }
    Ok(t)
}

/// A module structure read off a reduced triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredModule {
    pub spec: ModuleSpec,
    pub generators: StandardGenerators,
}

/// Standard generators from a reduced triple via the inverse equitable
/// maps, checked against the defining relations, together with the
/// summand multiplicities counted from the weight spaces.
///
/// `q` is needed only for a diameter-0 triple with sequences `(1)`.
pub fn triple_to_module(t: &VerifiedTriple, q: Option<&Rational>) -> Result<RecoveredModule> {
    let kind = reduced_kind(t.parameter_array(), q).ok_or(Error::NotReduced)?;
    let (a, a1, a2) = (
        t.triple().a(),
        t.triple().a_prime(),
        t.triple().a_double(),
    );
    let n = t.dim();
    let d = t.diameter();
    let generators = match &kind {
        ReducedKind::Classical => {
            let half = Rational::new(1.into(), 2.into());
            StandardGenerators::Sl2 {
                h: a2.clone(),
                e: (a + a2).scale(&half),
                f: (a1 + a2).scale(&-half),
            }
        }
        ReducedKind::Quantum(q) => {
            let c = q - q.recip();
            let k_inv = a.inverse()?;
            let f = (a1 - &k_inv).scale(&c.recip());
            let e = (&Matrix::identity(n) - &(a * a2)).scale(&(q * &c).recip());
            StandardGenerators::Uq {
                q: q.clone(),
                k: a.clone(),
                k_inv,
                e,
                f,
            }
        }
    };
    generators.verify()?;
    let split = segregation_split(&generators)?;
    if !split.segregated {
        return Err(Error::InternalInvariantViolation(
            "module of a reduced triple is not segregated".into(),
        ));
    }

    // weight λ_i = d - 2i (resp. q^(d-2i)); m_(d-2i) = dim λ_i - dim λ_(i-1)
    let weight_dim = |i: usize| -> usize {
        match &generators {
            StandardGenerators::Sl2 { h, .. } => {
                eigenspace(h, &int(d as i64 - 2 * i as i64)).dim()
            }
            StandardGenerators::Uq { q, k, .. } => {
                eigenspace(k, &pow(q, d as i64 - 2 * i as i64)).dim()
            }
        }
    };
    let mut summands = Vec::new();
    let mut previous = 0;
    for i in 0..=d / 2 {
        let current = weight_dim(i);
        let m = current
            .checked_sub(previous)
            .ok_or_else(|| Error::InternalInvariantViolation("weight dimensions decrease".into()))?;
        if m > 0 {
            summands.push(Summand::new(d - 2 * i, m));
        }
        previous = current;
    }
    let spec = match kind {
        ReducedKind::Classical => ModuleSpec::sl2(summands)?,
        ReducedKind::Quantum(q) => ModuleSpec::uq(q, summands)?,
    };
    if spec.dim() != n {
        return Err(Error::InternalInvariantViolation(
            "summand dimensions do not add up".into(),
        ));
    }
    Ok(RecoveredModule { spec, generators })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// The sum of the weight spaces with a given sign and exponent parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegregationPart {
    pub epsilon: i8,
    pub parity: Parity,
    pub space: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegregationSplit {
    /// Even and odd parts for sl2; `(+1, even), (-1, even), (+1, odd),
    /// (-1, odd)` for U_q.
    pub parts: Vec<SegregationPart>,
    pub segregated: bool,
}

/// `λ = ε q^m` with `|m| ≤ bound`.
fn signed_q_exponent(lambda: &Rational, q: &Rational, bound: usize) -> Option<(i8, i64)> {
    let b = bound as i64;
    (-b..=b).find_map(|m| {
        let p = pow(q, m);
        if &p == lambda {
            Some((1, m))
        } else if &-p == lambda {
            Some((-1, m))
        } else {
            None
        }
    })
}

/// Splits a module into the invariant parts of fixed weight parity (and
/// sign, for U_q).
pub fn segregation_split(generators: &StandardGenerators) -> Result<SegregationSplit> {
    generators.verify()?;
    let n = generators.dim();
    let weight = match generators {
        StandardGenerators::Sl2 { h, .. } => h,
        StandardGenerators::Uq { k, .. } => k,
    };
    let spaces = diagonalize(weight)
        .map_err(|_| Error::InvalidModule("weight operator has no rational eigenbasis".into()))?;
    let labels: Vec<(i8, Parity)> = match generators.algebra() {
        Algebra::Sl2 => vec![(1, Parity::Even), (1, Parity::Odd)],
        Algebra::Uq => vec![
            (1, Parity::Even),
            (-1, Parity::Even),
            (1, Parity::Odd),
            (-1, Parity::Odd),
        ],
    };
    let mut parts: Vec<SegregationPart> = labels
        .into_iter()
        .map(|(epsilon, parity)| SegregationPart {
            epsilon,
            parity,
            space: Subspace::zero(n),
        })
        .collect();
    for (lambda, space) in spaces {
        let (epsilon, exponent) = match generators {
            StandardGenerators::Sl2 { .. } => {
                if !lambda.is_integer() {
                    return Err(Error::InvalidModule(format!("weight {lambda} is not an integer")));
                }
                (1, i64::try_from(lambda.to_integer()).unwrap_or(1))
            }
            StandardGenerators::Uq { q, .. } => signed_q_exponent(&lambda, q, n)
                .ok_or_else(|| Error::InvalidModule(format!("weight {lambda} is not ±q^m")))?,
        };
        let parity = if exponent % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        let part = parts
            .iter_mut()
            .find(|p| p.epsilon == epsilon && p.parity == parity)
            .expect("every label has a part");
        part.space = part.space.sum(&space)?;
    }
    let segregated = parts
        .iter()
        .any(|p| p.epsilon == 1 && p.space.dim() == n);
    Ok(SegregationSplit { parts, segregated })
}

impl SegregationSplit {
    pub fn part(&self, epsilon: i8, parity: Parity) -> Option<&Subspace> {
        self.parts
            .iter()
            .find(|p| p.epsilon == epsilon && p.parity == parity)
            .map(|p| &p.space)
    }
}

/// Whether every generator maps `space` into itself.
pub fn is_submodule(generators: &StandardGenerators, space: &Subspace) -> bool {
    let mats: Vec<&Matrix> = match generators {
        StandardGenerators::Sl2 { h, e, f } => vec![h, e, f],
        StandardGenerators::Uq { k, k_inv, e, f, .. } => vec![k, k_inv, e, f],
    };
    mats.into_iter()
        .all(|m| space.contains(&space.image(m)).unwrap_or(false))
}
