//! Certified kernel vectors by p-adic lifting.
//!
//! Given a matrix `M`, an echelon form modulo a random prime `p` selects
//! independent rows `R` and pivot columns `C`. When `M` has a kernel, the
//! first free column `f` gives a kernel vector `v` with `v[f] = 1`, zeros on
//! the other free columns, and `v[C]` the solution of the square system
//! `M[R, C] x = -M[R, f]`. That system is solved modulo `p^N` by Dixon
//! lifting, the solution is recovered as rationals with a shared
//! denominator, and the resulting integer vector is multiplied against the
//! whole of `M` to confirm it. A failed confirmation means the prime was
//! unlucky; a fresh prime is tried, and after three misses the routine falls
//! back to rational Gauss-Jordan elimination.

use std::collections::HashMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::matrix::{integer_rows, kernel_basis, RatMatrix};
use super::modp::{echelon_mod_p, random_prime, PrimeModulus};
use super::BigRational;

const PRIME_ATTEMPTS: usize = 3;

/// A nonzero vector `v` with `m * v = 0`, or `None` when the kernel is trivial.
/// The vector is a primitive integer vector (entries coprime), returned as
/// rationals. Both answers are exact.
pub fn kernel_vector<R: Rng + ?Sized>(m: &RatMatrix, rng: &mut R) -> Option<Vec<BigRational>> {
    kernel_vector_with_attempts(m, PRIME_ATTEMPTS, rng)
}

/// As [`kernel_vector`], trying `attempts` random primes before falling back
/// to rational elimination.
pub fn kernel_vector_with_attempts<R: Rng + ?Sized>(
    m: &RatMatrix,
    attempts: usize,
    rng: &mut R,
) -> Option<Vec<BigRational>> {
    if m.cols() == 0 {
        return None;
    }
    let rows = integer_rows(m);
    for _ in 0..attempts {
        let p = random_prime(rng);
        match attempt(&rows, m.cols(), p) {
            Attempt::NoKernel => return None,
            Attempt::Found(v) => return Some(v),
            Attempt::UnluckyPrime => continue,
        }
    }
    kernel_basis(m).into_iter().next().map(primitive)
}

/// As [`kernel_vector`] with a caller-chosen first prime. Used by tests that
/// need to force the unlucky-prime path.
pub fn kernel_vector_with_prime<R: Rng + ?Sized>(
    m: &RatMatrix,
    p: PrimeModulus,
    rng: &mut R,
) -> Option<Vec<BigRational>> {
    if m.cols() == 0 {
        return None;
    }
    match attempt(&integer_rows(m), m.cols(), p) {
        Attempt::NoKernel => None,
        Attempt::Found(v) => Some(v),
        Attempt::UnluckyPrime => kernel_vector(m, rng),
    }
}

enum Attempt {
    NoKernel,
    Found(Vec<BigRational>),
    UnluckyPrime,
}

fn attempt(rows: &[Vec<BigInt>], cols: usize, p: PrimeModulus) -> Attempt {
    let reduced: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| p.reduce_int(x)).collect())
        .collect();
    let ech = echelon_mod_p(reduced, cols, p);
    if ech.rank() == cols {
        // rank over Q is at least the rank mod p
        return Attempt::NoKernel;
    }
    let mut is_pivot = vec![false; cols];
    for &c in &ech.pivot_cols {
        is_pivot[c] = true;
    }
    let free = (0..cols).find(|&c| !is_pivot[c]).expect("rank < cols");

    let mut w = vec![BigInt::zero(); cols];
    if ech.rank() == 0 {
        w[free] = BigInt::one();
    } else {
        let a: Vec<Vec<BigInt>> = ech
            .pivot_rows
            .iter()
            .map(|&i| ech.pivot_cols.iter().map(|&j| rows[i][j].clone()).collect())
            .collect();
        let b: Vec<BigInt> = ech.pivot_rows.iter().map(|&i| -&rows[i][free]).collect();
        let Some((nums, den)) = solve_dixon(&a, &b, p) else {
            return Attempt::UnluckyPrime;
        };
        for (k, &c) in ech.pivot_cols.iter().enumerate() {
            w[c] = nums[k].clone();
        }
        w[free] = den;
    }
    let in_kernel = rows.iter().all(|row| {
        row.iter()
            .zip(&w)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            .is_zero()
    });
    if !in_kernel {
        return Attempt::UnluckyPrime;
    }
    Attempt::Found(primitive(w.into_iter().map(BigRational::from_integer).collect()))
}

/// Scales a nonzero rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
fn primitive(v: Vec<BigRational>) -> Vec<BigRational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect()
}

fn mat_inverse_mod(a: &[Vec<u64>], p: PrimeModulus) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut aug: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let k = (c..n).find(|&i| aug[i][c] != 0)?;
        aug.swap(c, k);
        let inv = p.inv(aug[c][c]);
        for x in aug[c].iter_mut() {
            *x = p.mul(*x, inv);
        }
        let pivot = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == c || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in 0..2 * n {
                if pivot[j] != 0 {
                    row[j] = p.sub(row[j], p.mul(f, pivot[j]));
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// log2 of the Hadamard bound on every maximal minor of `[a | b]`.
fn hadamard_log2(a: &[Vec<BigInt>], b: &[BigInt]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, bi)| {
            let sq: BigInt = row.iter().chain(std::iter::once(bi)).map(|x| x * x).sum();
            if sq.is_zero() {
                0.0
            } else {
                0.5 * log2_int(&sq)
            }
        })
        .sum()
}

fn log2_int(x: &BigInt) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(52);
    let top: BigInt = x >> shift;
    let top = top.iter_u64_digits().next().unwrap_or(0) as f64;
    top.log2() + shift as f64
}

/// Solves `a x = b` for nonsingular (mod p) `a`, returning numerators and a
/// common positive denominator. `None` if no candidate up to the Hadamard
/// bound reproduces `b` exactly.
fn solve_dixon(a: &[Vec<BigInt>], b: &[BigInt], p: PrimeModulus) -> Option<(Vec<BigInt>, BigInt)> {
    let n = a.len();
    let a_mod: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| p.reduce_int(x)).collect()).collect();
    let inv = mat_inverse_mod(&a_mod, p)?;

    let log_p = (p.value() as f64).log2();
    let max_steps = ((2.0 * hadamard_log2(a, b) + 4.0) / log_p).ceil() as usize + 2;
    let mut checkpoint = 4usize.min(max_steps);
    let mut digits: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut residual: Vec<BigInt> = b.to_vec();
    let pb = BigInt::from(p.value());
    let mut powers = PowerCache::new(p.value());

    for step in 1..=max_steps {
        let res_mod: Vec<u64> = residual.iter().map(|x| p.reduce_int(x)).collect();
        let x: Vec<u64> = inv
            .iter()
            .map(|row| row.iter().zip(&res_mod).fold(0, |acc, (&g, &r)| p.add(acc, p.mul(g, r))))
            .collect();
        for (i, res) in residual.iter_mut().enumerate() {
            let mut s = BigInt::zero();
            for (aij, &xj) in a[i].iter().zip(&x) {
                if xj != 0 && !aij.is_zero() {
                    s += aij * xj;
                }
            }
            *res -= s;
            *res /= &pb;
        }
        for (d, xj) in digits.iter_mut().zip(x) {
            d.push(xj);
        }
        if step == checkpoint || step == max_steps {
            let modulus = powers.get(step);
            let lifted: Vec<BigInt> = digits.iter().map(|d| powers.combine(d)).collect();
            if let Some((nums, den)) = reconstruct_vector(&lifted, &modulus) {
                let ok = a.iter().zip(b).all(|(row, bi)| {
                    let lhs: BigInt = row.iter().zip(&nums).map(|(x, y)| x * y).sum();
                    lhs == bi * &den
                });
                if ok {
                    return Some((nums, den));
                }
            }
            checkpoint = (checkpoint * 3 / 2).max(checkpoint + 1).min(max_steps);
        }
    }
    None
}

/// Memoized powers of `p` for divide-and-conquer digit recombination.
struct PowerCache {
    p: BigInt,
    cache: HashMap<usize, BigInt>,
}

impl PowerCache {
    fn new(p: u64) -> Self {
        PowerCache { p: BigInt::from(p), cache: HashMap::new() }
    }

    fn get(&mut self, k: usize) -> BigInt {
        if let Some(v) = self.cache.get(&k) {
            return v.clone();
        }
        let v = if k == 0 {
            BigInt::one()
        } else if k == 1 {
            self.p.clone()
        } else {
            let h = self.get(k / 2);
            let sq = &h * &h;
            if k % 2 == 1 {
                sq * &self.p
            } else {
                sq
            }
        };
        self.cache.insert(k, v.clone());
        v
    }

    /// `sum(digits[i] * p^i)`.
    fn combine(&mut self, digits: &[u64]) -> BigInt {
        if digits.len() <= 16 {
            return digits.iter().rev().fold(BigInt::zero(), |acc, &d| acc * &self.p + d);
        }
        let mid = digits.len() / 2;
        let lo = self.combine(&digits[..mid]);
        let hi = self.combine(&digits[mid..]);
        lo + hi * self.get(mid)
    }
}

/// Recovers rationals `nums[i] / den` congruent to `xs[i]` modulo `modulus`,
/// with every numerator and the denominator below `sqrt(modulus / 2)`.
fn reconstruct_vector(xs: &[BigInt], modulus: &BigInt) -> Option<(Vec<BigInt>, BigInt)> {
    let bound = (modulus >> 1u32).sqrt();
    let mut den = BigInt::one();
    let mut nums: Vec<BigInt> = Vec::with_capacity(xs.len());
    for x in xs {
        let y = (x * &den).mod_floor(modulus);
        let (n, d) = if y <= bound {
            (y, BigInt::one())
        } else if modulus - &y <= bound {
            (y - modulus, BigInt::one())
        } else {
            rational_reconstruction(&y, modulus, &bound)?
        };
        if !d.is_one() {
            for prev in nums.iter_mut() {
                *prev *= &d;
            }
            den *= &d;
            if den > bound {
                return None;
            }
        }
        nums.push(n);
    }
    Some((nums, den))
}

/// Half-extended Euclid: `n / d ≡ y (mod modulus)` with `|n|, d <= bound`.
fn rational_reconstruction(y: &BigInt, modulus: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (modulus.clone(), y.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    let (mut n, mut d) = (r1, t1);
    if d.sign() == Sign::Minus {
        n = -n;
        d = -d;
    }
    if d.is_zero() || &d > bound || !n.gcd(&d).is_one() {
        return None;
    }
    Some((n, d))
}
