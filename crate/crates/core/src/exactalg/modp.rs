use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{BigRational, RatMatrix};
use crate::error::{Error, Result};

/// A prime modulus below 2^63. Products are formed in `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeModulus {
    p: u64,
}

impl PrimeModulus {
    /// Panics unless `p` is a prime above 2^30.
    pub fn new(p: u64) -> Self {
        assert!(p > 1 << 30 && p < 1 << 63, "modulus out of range: {p}");
        assert!(is_prime(p), "modulus is not prime: {p}");
        PrimeModulus { p }
    }

    pub fn value(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce_int(self, x: &BigInt) -> u64 {
        let r = (x % BigInt::from(self.p)).to_i128().expect("residue fits");
        if r < 0 {
            (r + self.p as i128) as u64
        } else {
            r as u64
        }
    }

    pub fn reduce(self, x: &BigRational) -> Result<u64> {
        let d = self.reduce_int(x.denom());
        if d == 0 {
            return Err(Error::BadPrime(self.p));
        }
        Ok(self.mul(self.reduce_int(x.numer()), self.inv(d)))
    }
}

/// An element of the prime field `Z/pZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeFieldElement {
    residue: u64,
    modulus: PrimeModulus,
}

impl PrimeFieldElement {
    pub fn new(value: u64, modulus: PrimeModulus) -> Self {
        PrimeFieldElement {
            residue: value % modulus.p,
            modulus,
        }
    }

    pub fn from_rational(x: &BigRational, modulus: PrimeModulus) -> Result<Self> {
        Ok(PrimeFieldElement {
            residue: modulus.reduce(x)?,
            modulus,
        })
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    pub fn inverse(self) -> Option<Self> {
        (!self.is_zero()).then(|| PrimeFieldElement {
            residue: self.modulus.inv(self.residue),
            modulus: self.modulus,
        })
    }
}

macro_rules! field_op {
    ($tr:ident, $method:ident, $op:ident) => {
        impl std::ops::$tr for PrimeFieldElement {
            type Output = PrimeFieldElement;
            fn $method(self, rhs: Self) -> Self {
                assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
                PrimeFieldElement {
                    residue: self.modulus.$op(self.residue, rhs.residue),
                    modulus: self.modulus,
                }
            }
        }
    };
}

field_op!(Add, add, add);
field_op!(Sub, sub, sub);
field_op!(Mul, mul, mul);

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus.p)
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime in `[2^61, 2^62)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> PrimeModulus {
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime(candidate) {
            return PrimeModulus { p: candidate };
        }
    }
}

/// Row echelon data of a matrix reduced modulo a prime.
#[derive(Debug, Clone)]
pub(crate) struct ModpEchelon {
    /// Original indices of the rows used as pivots; these rows are
    /// independent modulo `p`.
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

impl ModpEchelon {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }
}

/// Forward elimination over `Z/pZ` on already reduced rows.
pub(crate) fn echelon_mod_p(mut rows: Vec<Vec<u64>>, cols: usize, p: PrimeModulus) -> ModpEchelon {
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        order.swap(r, k);
        let inv = p.inv(rows[r][c]);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let factor = p.mul(row[c], inv);
            for j in c..cols {
                if pivot[j] != 0 {
                    row[j] = p.sub(row[j], p.mul(factor, pivot[j]));
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    ModpEchelon {
        pivot_rows: order[..r].to_vec(),
        pivot_cols,
    }
}

pub(crate) fn reduce_matrix(m: &RatMatrix, p: PrimeModulus) -> Result<Vec<Vec<u64>>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| p.reduce(x)).collect())
        .collect()
}

/// Rank of the reduction of `m` modulo `p`. Never exceeds the rational rank.
pub fn rank_mod_p(m: &RatMatrix, p: PrimeModulus) -> Result<usize> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0);
    }
    let rows = reduce_matrix(m, p)?;
    Ok(echelon_mod_p(rows, m.cols(), p).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        let primes = [2u64, 3, 1_000_000_007, 2_147_483_647, 4_611_686_018_427_387_847];
        for p in primes {
            assert!(is_prime(p), "{p}");
        }
        let composites = [1u64, 4, 561, 1_000_000_007 * 3, 3_215_031_751, 4_611_686_018_427_387_849];
        for n in composites {
            assert!(!is_prime(n), "{n}");
        }
    }

    #[test]
    fn random_primes_are_large_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let p = random_prime(&mut rng).value();
            assert!(p > 1 << 30);
            assert!(is_prime(p));
        }
    }

    #[test]
    fn field_arithmetic() {
        let p = PrimeModulus::new(2_147_483_647);
        let a = PrimeFieldElement::new(5, p);
        let b = PrimeFieldElement::from_rational(&rat(1, 5), p).unwrap();
        assert_eq!((a * b).residue(), 1);
        assert_eq!((b - b).residue(), 0);
        assert_eq!(a.inverse().unwrap(), b);
        assert!(PrimeFieldElement::new(0, p).inverse().is_none());
        let neg = PrimeFieldElement::from_rational(&int(-1), p).unwrap();
        assert_eq!((neg + PrimeFieldElement::new(1, p)).residue(), 0);
    }

    #[test]
    fn bad_prime_detected() {
        let p = PrimeModulus::new(2_147_483_647);
        let m = RatMatrix::from_rows(vec![vec![rat(1, 2_147_483_647)]]);
        assert_eq!(rank_mod_p(&m, p), Err(Error::BadPrime(2_147_483_647)));
    }

    #[test]
    fn identity_and_zero() {
        let p = PrimeModulus::new(2_147_483_647);
        assert_eq!(rank_mod_p(&RatMatrix::identity(4), p).unwrap(), 4);
        assert_eq!(rank_mod_p(&RatMatrix::zeros(2, 7), p).unwrap(), 0);
    }
}
