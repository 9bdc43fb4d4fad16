//! Value types for finite-model functions: floating complex numbers, and exact
//! elements of the cyclotomic field Q(ζ_p) for prime p.

use std::f64::consts::PI;
use std::fmt::Debug;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

/// Arithmetic needed by the transforms and identity checks.
///
/// `n` is the modulus of the character group; exact implementations may
/// require it to be prime.
pub trait Scalar: Clone + Debug + Send + Sync {
    /// Whether equality checks are exact.
    const EXACT: bool;

    fn zero(n: u64) -> Self;
    fn from_int(v: i64, n: u64) -> Self;
    /// ζ_n^k with ζ_n = exp(2πi/n).
    fn root_of_unity(k: u64, n: u64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Multiplication by ζ_n^k.
    fn mul_root(&self, k: u64, n: u64) -> Self;
    /// [`Scalar::mul_root`] with `table[k] = ζ_n^k` precomputed.
    fn mul_root_table(&self, k: u64, n: u64, table: &[Complex64]) -> Self {
        let _ = table;
        self.mul_root(k, n)
    }
    fn scale(&self, num: i64, den: i64) -> Self;
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_complex(&self) -> Complex64;

    /// |a − b|; exactly zero iff the values agree for exact types.
    fn distance(&self, o: &Self) -> f64 {
        let d = self.sub(o);
        if d.is_zero() {
            return 0.0;
        }
        let r = d.to_complex().norm();
        if Self::EXACT {
            r.max(f64::EPSILON)
        } else {
            r
        }
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero(_: u64) -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn from_int(v: i64, _: u64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn root_of_unity(k: u64, n: u64) -> Self {
        Complex64::from_polar(1.0, 2.0 * PI * (k % n) as f64 / n as f64)
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }

    fn sub(&self, o: &Self) -> Self {
        self - o
    }

    fn mul(&self, o: &Self) -> Self {
        self * o
    }

    fn mul_root(&self, k: u64, n: u64) -> Self {
        self * <Complex64 as Scalar>::root_of_unity(k, n)
    }

    fn mul_root_table(&self, k: u64, _n: u64, table: &[Complex64]) -> Self {
        self * table[k as usize]
    }

    fn scale(&self, num: i64, den: i64) -> Self {
        self * (num as f64 / den as f64)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Element `Σ c_k ζ^k` of Q(ζ_p), stored with `c_{p−1} = 0`
/// (using `1 + ζ + … + ζ^{p−1} = 0`), which makes the representation unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    c: Vec<Rational64>,
}

impl Cyclotomic {
    fn normalized(mut c: Vec<Rational64>) -> Self {
        let last = *c.last().unwrap();
        if !last.is_zero() {
            for x in c.iter_mut() {
                *x -= last;
            }
        }
        Cyclotomic { c }
    }

    pub fn modulus(&self) -> u64 {
        self.c.len() as u64
    }

    pub fn coefficients(&self) -> &[Rational64] {
        &self.c
    }

    /// Rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational64> {
        self.c[1..].iter().all(Zero::is_zero).then_some(self.c[0])
    }
}

impl Scalar for Cyclotomic {
    const EXACT: bool = true;

    fn zero(n: u64) -> Self {
        Cyclotomic { c: vec![Rational64::zero(); n as usize] }
    }

    fn from_int(v: i64, n: u64) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = Rational64::from_integer(v);
        z
    }

    fn root_of_unity(k: u64, n: u64) -> Self {
        let mut z = Self::zero(n);
        z.c[(k % n) as usize] = Rational64::from_integer(1);
        Self::normalized(z.c)
    }

    fn add(&self, o: &Self) -> Self {
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect();
        Self::normalized(c)
    }

    fn sub(&self, o: &Self) -> Self {
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect();
        Self::normalized(c)
    }

    fn mul(&self, o: &Self) -> Self {
        let n = self.c.len();
        let mut c = vec![Rational64::zero(); n];
        for (i, a) in self.c.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.c.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                c[(i + j) % n] += a * b;
            }
        }
        Self::normalized(c)
    }

    fn mul_root(&self, k: u64, n: u64) -> Self {
        let n = n as usize;
        let k = (k as usize) % n;
        let mut c = vec![Rational64::zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            c[(i + k) % n] = *a;
        }
        Self::normalized(c)
    }

    fn scale(&self, num: i64, den: i64) -> Self {
        let s = Rational64::new(num, den);
        Cyclotomic { c: self.c.iter().map(|a| a * s).collect() }
    }

    fn conj(&self) -> Self {
        let n = self.c.len();
        let mut c = vec![Rational64::zero(); n];
        for (i, a) in self.c.iter().enumerate() {
            c[(n - i) % n] = *a;
        }
        Self::normalized(c)
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    fn to_complex(&self) -> Complex64 {
        let n = self.c.len() as u64;
        self.c
            .iter()
            .enumerate()
            .map(|(k, a)| <Complex64 as Scalar>::root_of_unity(k as u64, n) * a.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_relation() {
        let n = 5;
        let mut s = Cyclotomic::zero(n);
        for k in 0..n {
            s = s.add(&Cyclotomic::root_of_unity(k, n));
        }
        assert!(s.is_zero());
        let z = Cyclotomic::root_of_unity(2, n);
        assert_eq!(z.mul(&z.conj()), Cyclotomic::from_int(1, n));
        assert_eq!(z.mul_root(3, n), Cyclotomic::from_int(1, n));
    }

    #[test]
    fn cyclotomic_matches_complex() {
        let n = 7;
        let a = Cyclotomic::root_of_unity(3, n).add(&Cyclotomic::from_int(2, n)).scale(1, 3);
        let b = Cyclotomic::root_of_unity(6, n);
        let exact = a.mul(&b).to_complex();
        let float = a.to_complex() * b.to_complex();
        assert!((exact - float).norm() < 1e-12);
    }
}
