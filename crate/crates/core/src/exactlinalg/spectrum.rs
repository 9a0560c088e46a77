//! Exact eigenvalue discovery for matrices with rational spectra.
//!
//! The matrix is scaled to an integer matrix, its characteristic polynomial
//! is expanded with the division-free Berkowitz recurrence, and the distinct
//! roots are found by Sturm-sequence bisection on integer endpoints. A monic
//! integer polynomial has only integer rational roots, so any root that does
//! not land on an integer is reported as irrational.
//!
//! Before the exact search, floating-point eigenvalues are rounded to
//! candidate roots. Confirmed candidates are divided out, and the exact
//! search only runs on whatever is left.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use super::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumError {
    /// Some eigenvalue is not rational (or not real).
    Irrational,
    /// The eigenspaces do not fill the space.
    NotDiagonalizable,
}

/// `ker(m - λI)`; possibly zero.
pub fn eigenspace(m: &Matrix, lambda: &Rational) -> Subspace {
    assert!(m.is_square(), "eigenspace of a non-square matrix");
    m.shift(&-lambda).kernel()
}

/// `eigenspace(m, λ)` for each `λ` in `values`, in the same order.
pub fn eigenspaces(m: &Matrix, values: &[Rational]) -> Vec<Subspace> {
    assert!(m.is_square(), "eigenspace of a non-square matrix");
    super::modular::shifted_kernels(m, values)
        .into_iter()
        .zip(values)
        .map(|(k, v)| k.unwrap_or_else(|| eigenspace(m, v)))
        .collect()
}

/// Characteristic polynomial `det(λI - m)`, coefficients from the constant
/// term upwards.
pub fn characteristic_polynomial(m: &Matrix) -> Vec<Rational> {
    let (scaled, l) = integer_scaling(m);
    let chi = berkowitz(&scaled);
    // chi_D(λ) = L^n chi_M(λ / L)
    let n = chi.len() - 1;
    let l = Rational::from_integer(l);
    let mut lp = Rational::one();
    let mut out = vec![Rational::zero(); n + 1];
    for k in (0..=n).rev() {
        out[k] = Rational::from_integer(chi[k].clone()) / &lp;
        lp = &lp * &l;
    }
    out
}

/// Distinct rational eigenvalues in increasing order.
pub fn rational_eigenvalues(m: &Matrix) -> Result<Vec<Rational>, SpectrumError> {
    assert!(m.is_square(), "eigenvalues of a non-square matrix");
    let (scaled, l) = integer_scaling(m);
    let chi = berkowitz(&scaled);
    let (mut roots, rest) = approximate_roots(&scaled, &chi, &l);
    if rest.len() > 1 {
        roots.extend(integer_roots(&square_free_part(&rest))?);
        roots.sort();
    }
    Ok(roots
        .into_iter()
        .map(|r| Rational::new(r, l.clone()))
        .collect())
}

/// Eigenvalues with their eigenspaces, in increasing eigenvalue order.
pub fn diagonalize(m: &Matrix) -> Result<Vec<(Rational, Subspace)>, SpectrumError> {
    let values = rational_eigenvalues(m)?;
    let spaces: Vec<Subspace> = eigenspaces(m, &values);
    let spaces: Vec<(Rational, Subspace)> = values.into_iter().zip(spaces).collect();
    if spaces.iter().map(|(_, s)| s.dim()).sum::<usize>() != m.rows() {
        return Err(SpectrumError::NotDiagonalizable);
    }
    Ok(spaces)
}

/// Integer matrix `L·m` and the scale `L` (lcm of the denominators).
fn integer_scaling(m: &Matrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let l = m
        .entries()
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let rows = m
        .row_vectors()
        .map(|row| {
            row.iter()
                .map(|e| e.numer() * (&l / e.denom()))
                .collect()
        })
        .collect();
    (rows, l)
}

/// `det(λI - a)` for an integer matrix; coefficients from the constant term.
fn berkowitz(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    // highest degree first while iterating
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // a_(r+1) = [[a_r, c], [row, diag]]
        let diag = &a[r][r];
        let row = &a[r][..r];
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-diag);
        let mut v: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let dot: BigInt = row.iter().zip(&v).map(|(x, y)| x * y).sum();
            t.push(-dot);
            v = (0..r)
                .map(|i| (0..r).map(|j| &a[i][j] * &v[j]).sum())
                .collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                if i - j < t.len() {
                    *slot += &t[i - j] * pj;
                }
            }
        }
        p = next;
    }
    p.reverse();
    p
}

type Poly = Vec<Rational>;

fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &Poly) -> usize {
    p.len() - 1
}

fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(Zero::is_zero)
}

/// Quotient and remainder of polynomial division.
fn div_rem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = degree(b);
    let lead = b[db].clone();
    if degree(&r) < db {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); degree(&r) - db + 1];
    while !is_zero_poly(&r) && degree(&r) >= db {
        let shift = degree(&r) - db;
        let c = &r[degree(&r)] / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &c * bi;
        }
        q[shift] = c;
        r.pop();
        if r.is_empty() {
            r.push(Rational::zero());
        }
        trim(&mut r);
    }
    (q, r)
}

fn monic(p: &Poly) -> Poly {
    let lead = p[degree(p)].clone();
    p.iter().map(|c| c / &lead).collect()
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !is_zero_poly(&y) {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

fn derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![Rational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect()
}

/// `f / gcd(f, f')` for a monic integer polynomial; the result is again
/// monic with integer coefficients.
fn square_free_part(f: &[BigInt]) -> Vec<BigInt> {
    let fr: Poly = f.iter().cloned().map(Rational::from_integer).collect();
    let g = gcd(&fr, &derivative(&fr));
    let (q, _) = div_rem(&fr, &g);
    q.into_iter()
        .map(|c| {
            assert!(c.is_integer(), "monic factor of an integer polynomial");
            c.to_integer()
        })
        .collect()
}

/// Rational polynomial scaled by a positive constant to a primitive integer
/// polynomial (sign preserved).
fn positive_integer_multiple(p: &Poly) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        ints
    } else {
        ints.into_iter().map(|c| c / &content).collect()
    }
}

struct Sturm {
    chain: Vec<Vec<BigInt>>,
}

impl Sturm {
    fn new(g: &[BigInt]) -> Self {
        let mut chain = vec![g.to_vec()];
        let gr: Poly = g.iter().cloned().map(Rational::from_integer).collect();
        let mut prev = gr.clone();
        let mut cur = derivative(&gr);
        while !is_zero_poly(&cur) {
            chain.push(positive_integer_multiple(&cur));
            let (_, r) = div_rem(&prev, &cur);
            prev = cur;
            cur = r.iter().map(|c| -c).collect();
        }
        Sturm { chain }
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn at(&self, x: &BigInt) -> usize {
        Self::variations(self.chain.iter().map(|p| sign(&eval(p, x))))
    }

    fn at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let lead = sign(p.last().expect("nonempty"));
            if positive || (p.len() - 1) % 2 == 0 {
                lead
            } else {
                -lead
            }
        }))
    }
}

fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// All roots of a square-free monic integer polynomial, provided they are
/// all integers.
fn integer_roots(g: &[BigInt]) -> Result<Vec<BigInt>, SpectrumError> {
    let deg = g.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let sturm = Sturm::new(g);
    if sturm.at_infinity(false) - sturm.at_infinity(true) != deg {
        return Err(SpectrumError::Irrational);
    }
    // Fujiwara: every root is below 2·max |a_(n-k)|^(1/k) for monic g
    let exponent = (1..=deg)
        .map(|k| g[deg - k].bits().div_ceil(k as u64))
        .max()
        .unwrap_or(0);
    let bound = BigInt::one() << (exponent + 2);
    let lo = -bound.clone();
    let mut roots = Vec::with_capacity(deg);
    let count = sturm.at(&lo) - sturm.at(&bound);
    isolate(g, &sturm, lo, bound, count, &mut roots)?;
    roots.sort();
    Ok(roots)
}

/// Integer roots of `chi` guessed from floating-point eigenvalues, each
/// confirmed exactly, with `chi` stripped of every confirmed root. Guesses
/// come from `scaled / l` and its inverse, then from the companion matrix
/// of what is left.
fn approximate_roots(scaled: &[Vec<BigInt>], chi: &[BigInt], l: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut rest = chi.to_vec();
    let mut roots: Vec<BigInt> = Vec::new();
    absorb(&mut rest, &mut roots, float_eigenvalues(scaled, l), l);
    for _ in 0..3 {
        if rest.len() == 1 {
            break;
        }
        let before = rest.len();
        let lf = l.to_f64().unwrap_or(f64::INFINITY);
        let guesses = float_roots(&rest).into_iter().map(|r| r / lf).collect();
        absorb(&mut rest, &mut roots, guesses, l);
        if rest.len() == before {
            break;
        }
    }
    roots.sort();
    (roots, rest)
}

/// Divides `rest` by every candidate root snapped from `guesses`.
fn absorb(rest: &mut Vec<BigInt>, roots: &mut Vec<BigInt>, guesses: Vec<f64>, l: &BigInt) {
    for x in guesses {
        if rest.len() == 1 {
            return;
        }
        for r in snap(x, l) {
            if let Some(q) = deflate(rest, &r) {
                *rest = q;
                while let Some(q) = deflate(rest, &r) {
                    *rest = q;
                }
                roots.push(r);
                break;
            }
        }
    }
}

/// Real roots of a monic integer polynomial from its companion matrix,
/// after rescaling the variable so the coefficients stay in range.
fn float_roots(p: &[BigInt]) -> Vec<f64> {
    let deg = p.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let e = (1..=deg)
        .map(|k| p[deg - k].bits().div_ceil(k as u64))
        .max()
        .unwrap_or(0) as i32;
    // p(2^e y) / 2^(e·deg) = y^deg + sum c_k y^k
    let coeffs: Option<Vec<f64>> = (0..deg)
        .map(|k| {
            let shift = e * (deg - k) as i32;
            let bits = p[k].bits() as i32;
            // drop low bits before converting so the f64 stays finite
            let drop = (bits - 60).max(0);
            let top = (&p[k] >> drop as usize).to_f64()?;
            Some(top * 2f64.powi(drop - shift))
        })
        .collect();
    let Some(coeffs) = coeffs else {
        return Vec::new();
    };
    let mut companion = nalgebra::DMatrix::<f64>::zeros(deg, deg);
    for k in 0..deg {
        companion[(k, deg - 1)] = -coeffs[k];
        if k > 0 {
            companion[(k, k - 1)] = 1.0;
        }
    }
    if companion.iter().all(|&x| x == 0.0) {
        return vec![0.0];
    }
    let scale = 2f64.powi(e);
    nalgebra::Schur::try_new(companion, 1e-14, 10_000)
        .map(|s| {
            s.complex_eigenvalues()
                .iter()
                .filter(|z| z.im.abs() <= 1e-6 * (1.0 + z.re.abs()))
                .map(|z| z.re * scale)
                .collect()
        })
        .unwrap_or_default()
}

/// Real parts of the (nearly) real eigenvalues of `scaled / l`, followed by
/// reciprocals of those of its inverse, which resolve small eigenvalues
/// more accurately.
fn float_eigenvalues(scaled: &[Vec<BigInt>], l: &BigInt) -> Vec<f64> {
    let n = scaled.len();
    let Some(lf) = l.to_f64() else {
        return Vec::new();
    };
    let Some(entries) = scaled
        .iter()
        .flatten()
        .map(|x| x.to_f64().map(|v| v / lf))
        .collect::<Option<Vec<f64>>>()
    else {
        return Vec::new();
    };
    if entries.iter().all(|&x| x == 0.0) {
        // the Schur iteration does not handle the zero matrix
        return vec![0.0];
    }
    let dense = nalgebra::DMatrix::from_row_slice(n, n, &entries);
    let real = |m: nalgebra::DMatrix<f64>| -> Vec<f64> {
        nalgebra::Schur::try_new(m, 1e-13, 10_000)
            .map(|s| {
                s.complex_eigenvalues()
                    .iter()
                    .filter(|z| z.im.abs() <= 1e-6 * (1.0 + z.re.abs()))
                    .map(|z| z.re)
                    .collect()
            })
            .unwrap_or_default()
    };
    let mut out = real(dense.clone());
    if let Some(inv) = dense.try_inverse() {
        out.extend(real(inv).into_iter().filter(|&y| y != 0.0).map(|y| 1.0 / y));
    }
    out
}

/// Integers `r` with `r / l` close to `x`: `x·l` rounded when that is
/// exact enough, then continued-fraction convergents of `x` whose
/// denominators divide `l`.
fn snap(x: f64, l: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let xl = x * l.to_f64().unwrap_or(f64::INFINITY);
    if xl.is_finite() && xl.abs() < 1e12 {
        out.push(BigInt::from(xl.round() as i64));
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        (h0, h1) = (h1, a * h1 + h0);
        (k0, k1) = (k1, a * k1 + k0);
        if k1 > 1 << 40 {
            break;
        }
        let den = BigInt::from(k1);
        if (l % &den).is_zero() {
            out.push(BigInt::from(h1) * (l / &den));
        }
        let frac = y - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// `p / (x - r)` when `r` is a root of `p`.
fn deflate(p: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    if p.len() < 2 {
        return None;
    }
    let mut q = vec![BigInt::zero(); p.len() - 1];
    let mut carry = BigInt::zero();
    for k in (1..p.len()).rev() {
        carry = &p[k] + r * &carry;
        q[k - 1] = carry.clone();
    }
    (&p[0] + r * &carry).is_zero().then_some(q)
}

/// Collects the roots in `(a, b]`, known to number `count`.
fn isolate(
    g: &[BigInt],
    sturm: &Sturm,
    a: BigInt,
    b: BigInt,
    count: usize,
    roots: &mut Vec<BigInt>,
) -> Result<(), SpectrumError> {
    if count == 0 {
        return Ok(());
    }
    if &b - &a == BigInt::one() {
        if count == 1 && eval(g, &b).is_zero() {
            roots.push(b);
            return Ok(());
        }
        return Err(SpectrumError::Irrational);
    }
    let mid: BigInt = (&a + &b).div_floor(&BigInt::from(2));
    let vm = sturm.at(&mid);
    let left = sturm.at(&a) - vm;
    isolate(g, sturm, a, mid.clone(), left, roots)?;
    isolate(g, sturm, mid, b, count - left, roots)
}
