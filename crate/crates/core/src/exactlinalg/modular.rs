//! Kernels and ranks by elimination modulo word-sized primes.
//!
//! Reduction modulo a prime can only lower the rank. So a kernel recovered
//! by rational reconstruction is accepted when it has `n - rank_p` vectors
//! in echelon shape that are confirmed exactly; and a rank modulo `p` that
//! is already maximal is the rank over the rationals. Anything else is left
//! to exact elimination by the caller.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::rational::Rational;
use super::subspace::Subspace;

/// The largest primes below `2^62`.
const PRIMES: [u64; 8] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
];

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn int_mod(x: &BigInt, p: u64) -> u64 {
    let r = (x.magnitude() % p).to_u64().expect("residue below p");
    if x.is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

/// `x mod p`, or `None` when the denominator vanishes modulo `p`.
fn rational_mod(x: &Rational, p: u64) -> Option<u64> {
    if x.denom().is_one() {
        return Some(int_mod(x.numer(), p));
    }
    let d = int_mod(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(int_mod(x.numer(), p), inv_mod(d, p), p))
}

fn reduce(m: &Matrix, p: u64) -> Option<Vec<Vec<u64>>> {
    m.row_vectors()
        .map(|row| row.iter().map(|x| rational_mod(x, p)).collect())
        .collect()
}

fn reduce_ints(rows: &[Vec<BigInt>], p: u64) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|row| row.iter().map(|x| int_mod(x, p)).collect())
        .collect()
}

/// In-place reduced row-echelon form modulo `p`; returns the pivots.
fn rref_mod(rows: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(k, r);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if i == r || f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = (*x + p - mul_mod(f, y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Canonical kernel basis modulo `p` and its pivots.
fn kernel_mod(rows: &mut [Vec<u64>], n: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let pivots = rref_mod(rows, n, p);
    let mut basis: Vec<Vec<u64>> = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = (p - rows[row][f]) % p;
            }
            v
        })
        .collect();
    let kernel_pivots = rref_mod(&mut basis, n, p);
    (basis, kernel_pivots)
}

/// `n/d ≡ a (mod m)` with `|n|, d` below `sqrt(m/2)`.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Entry-wise reconstruction sharing one running denominator: an entry
/// whose multiple by the denominator so far is already small needs no
/// Euclidean run of its own.
fn reconstruct_vector(v: &[BigInt], m: &BigInt) -> Option<Vec<Rational>> {
    let bound = (m >> 1usize).sqrt();
    let half = m >> 1usize;
    let mut d = BigInt::one();
    let mut out = Vec::with_capacity(v.len());
    for a in v {
        if a.is_zero() {
            out.push(Rational::zero());
            continue;
        }
        let mut x = (a * &d).mod_floor(m);
        if x > half {
            x -= m;
        }
        if x.abs() <= bound {
            out.push(Rational::new(x, d.clone()));
            continue;
        }
        let r = reconstruct(a, m)?;
        d = d.lcm(r.denom());
        if d > bound {
            return None;
        }
        out.push(r);
    }
    Some(out)
}

/// `v` scaled to a primitive-free integer vector (times the lcm of its
/// denominators).
fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Kernel residues combined over the primes seen so far.
#[derive(Default)]
struct Lift {
    // residues, their modulus and the kernel pivot pattern
    state: Option<(Vec<Vec<BigInt>>, BigInt, Vec<usize>)>,
}

impl Lift {
    fn absorb(&mut self, basis: Vec<Vec<u64>>, pivots: Vec<usize>, p: u64) {
        let residues: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let fresh = (residues, BigInt::from(p), pivots);
        self.state = Some(match self.state.take() {
            None => fresh,
            // a smaller kernel modulo p shows the earlier primes were unlucky
            Some(state) if fresh.0.len() < state.0.len() => fresh,
            Some(state) if fresh.0.len() > state.0.len() || fresh.2 != state.2 => state,
            Some((old, modulus, pivots)) => {
                // CRT: x ≡ old (mod modulus), x ≡ new (mod p)
                let pb = BigInt::from(p);
                let inv = BigInt::from(inv_mod(int_mod(&modulus, p), p));
                let combined = old
                    .iter()
                    .zip(&fresh.0)
                    .map(|(ov, nv)| {
                        ov.iter()
                            .zip(nv)
                            .map(|(o, v)| {
                                let t = ((v - o) * &inv).mod_floor(&pb);
                                o + &modulus * t
                            })
                            .collect()
                    })
                    .collect();
                (combined, &modulus * &pb, pivots)
            }
        });
    }

    /// The kernel, once reconstruction succeeds and `in_kernel` confirms
    /// every vector.
    fn finish(&self, n: usize, in_kernel: impl Fn(&[Rational]) -> bool) -> Option<Subspace> {
        let (values, modulus, pivots) = self.state.as_ref()?;
        if values.is_empty() {
            return Some(Subspace::zero(n));
        }
        let recovered: Vec<Vec<Rational>> = values
            .iter()
            .map(|v| reconstruct_vector(v, modulus))
            .collect::<Option<_>>()?;
        if !recovered.iter().all(|v| in_kernel(v)) {
            return None;
        }
        let entries = recovered.into_iter().flatten().collect();
        let basis = Matrix::new(values.len(), n, entries).expect("kernel shape");
        Some(Subspace::from_echelon_parts(basis, pivots.clone()))
    }
}

/// The kernel of `m` in canonical form, if the modular route settles it.
pub(crate) fn kernel(m: &Matrix) -> Option<Subspace> {
    let n = m.cols();
    // rows scaled to integers have the same kernel
    let int_rows = m.integer_rows();
    let annihilates = |v: &[Rational]| {
        let w = clear_denominators(v);
        int_rows.iter().all(|row| dot(row, &w).is_zero())
    };
    let mut lift = Lift::default();
    for &p in &PRIMES {
        let mut rows = reduce_ints(&int_rows, p);
        let (basis, pivots) = kernel_mod(&mut rows, n, p);
        lift.absorb(basis, pivots, p);
        if let Some(k) = lift.finish(n, annihilates) {
            return Some(k);
        }
    }
    None
}

/// Kernels of `m - λ` for each shift `λ`, reducing `m` once per prime.
/// `None` marks the shifts the modular route did not settle.
pub(crate) fn shifted_kernels(m: &Matrix, shifts: &[Rational]) -> Vec<Option<Subspace>> {
    let n = m.cols();
    // m = mi / l, and m - r/s is a positive multiple of s·mi - l·r
    let l = m.entries().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mi: Vec<Vec<BigInt>> = m
        .row_vectors()
        .map(|row| row.iter().map(|x| x.numer() * (&l / x.denom())).collect())
        .collect();
    let diagonal: Vec<BigInt> = shifts.iter().map(|x| &l * x.numer()).collect();
    let mut lifts: Vec<Lift> = shifts.iter().map(|_| Lift::default()).collect();
    let mut out: Vec<Option<Subspace>> = vec![None; shifts.len()];
    for &p in &PRIMES {
        if out.iter().all(Option::is_some) {
            break;
        }
        let base = reduce_ints(&mi, p);
        for (t, shift) in shifts.iter().enumerate() {
            if out[t].is_some() {
                continue;
            }
            let (s, c) = (int_mod(shift.denom(), p), int_mod(&diagonal[t], p));
            let mut rows: Vec<Vec<u64>> = base
                .iter()
                .map(|row| row.iter().map(|&x| mul_mod(x, s, p)).collect())
                .collect();
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = (row[i] + p - c) % p;
            }
            let (basis, pivots) = kernel_mod(&mut rows, n, p);
            lifts[t].absorb(basis, pivots, p);
            out[t] = lifts[t].finish(n, |v| {
                let w = clear_denominators(v);
                mi.iter()
                    .zip(&w)
                    .all(|(row, wi)| shift.denom() * dot(row, &w) == &diagonal[t] * wi)
            });
        }
    }
    out
}

/// The rank of `m` when one modular elimination already shows it is as
/// large as possible.
pub(crate) fn full_rank(m: &Matrix) -> Option<usize> {
    let p = PRIMES[0];
    let mut rows = reduce(m, p)?;
    let rank = rref_mod(&mut rows, m.cols(), p).len();
    (rank == m.rows().min(m.cols())).then_some(rank)
}
