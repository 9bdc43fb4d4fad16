//! The finite model: functions on V(Z/N) = (Z/N)⁴ with the character
//! `ψ(t) = exp(2πi·t/N)` and Fourier transform
//! `φ̂(y) = N⁻² Σ_x φ(x)·ψ([x, y])`.
//!
//! Values are generic over [`Scalar`], so every identity can be checked both
//! in floating point and exactly in Q(ζ_N).

pub mod identities;
pub mod scalar;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use num_integer::Integer;
use rand::Rng;

use crate::error::{Error, Result};
use crate::forms::substitute;

pub use identities::*;
pub use scalar::{Cyclotomic, Scalar};

/// Point of (Z/N)⁴, coordinates in `0..N`.
pub type Point = [u64; 4];
/// 2×2 matrix over Z/N.
pub type ModMat = [[u64; 2]; 2];

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Inverse of `a` mod `n`, if it exists.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let e = (a as i64).extended_gcd(&(n as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i64) as u64)
}

fn check_modulus(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    if n % 3 == 0 {
        return Err(Error::ModulusDivisibleBy3(n));
    }
    Ok(())
}

fn check_modulus_for<S: Scalar>(n: u64) -> Result<()> {
    check_modulus(n)?;
    if S::EXACT && !is_prime(n) {
        return Err(Error::ModulusNotPrime(n));
    }
    Ok(())
}

/// `[x, y] = x1·y4 − x2·y3/3 + x3·y2/3 − x4·y1` in Z/N.
pub fn pairing_mod(x: &Point, y: &Point, n: u64) -> u64 {
    let i3 = inv_mod(3, n).expect("3 invertible");
    let m = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let pos = (x[0] * y[3] % n + m(i3, m(x[2], y[1]))) % n;
    let neg = (x[3] * y[0] % n + m(i3, m(x[1], y[2]))) % n;
    (pos + n - neg) % n
}

/// Twisted action `det(l)·x((u,v)·l⁻¹)` on coefficient vectors mod N.
pub fn act_mod(x: &Point, l: &ModMat, n: u64) -> Result<Point> {
    let ni = n as i128;
    let det = ((l[0][0] as i128 * l[1][1] as i128 - l[0][1] as i128 * l[1][0] as i128) % ni + ni) % ni;
    let dinv = inv_mod(det as u64, n).ok_or(Error::SingularMatrix)? as i128;
    let inv = [
        [l[1][1] as i128 * dinv % ni, (ni - l[0][1] as i128) * dinv % ni],
        [(ni - l[1][0] as i128) * dinv % ni, l[0][0] as i128 * dinv % ni],
    ];
    let c = x.map(|v| v as i128);
    let out = substitute(&c, &inv);
    Ok(out.map(|v| ((v % ni) * det % ni + ni) as u64 % n))
}

/// `l^ι = det(l)⁻¹·l` mod N.
pub fn iota_mod(l: &ModMat, n: u64) -> Result<ModMat> {
    let det = (l[0][0] * l[1][1] + n * n - l[0][1] * l[1][0] % n) % n;
    let dinv = inv_mod(det, n).ok_or(Error::SingularMatrix)?;
    Ok(l.map(|r| r.map(|v| v * dinv % n)))
}

/// P(x) mod N.
pub fn discriminant_mod(x: &Point, n: u64) -> u64 {
    let v = crate::forms::discriminant_of(&x.map(|c| c as i128));
    v.rem_euclid(n as i128) as u64
}

/// All of GL(2, Z/N) (or SL(2, Z/N)).
pub fn gl2_mod(n: u64, sl2: bool) -> Vec<ModMat> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let det = (a * d + n * n - b * c) % n;
                    let ok = if sl2 { det == 1 % n } else { inv_mod(det, n).is_some() };
                    if ok {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

/// Complex-valued (or exact) function on (Z/N)⁴.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteModelFunction<S: Scalar = Complex64> {
    n: u64,
    values: Vec<S>,
}

impl<S: Scalar> FiniteModelFunction<S> {
    pub fn from_fn(n: u64, mut f: impl FnMut(Point) -> S) -> Result<Self> {
        check_modulus_for::<S>(n)?;
        let values = (0..n.pow(4)).map(|i| f(Self::point_of(n, i as usize))).collect();
        Ok(FiniteModelFunction { n, values })
    }

    pub fn from_values(n: u64, values: Vec<S>) -> Result<Self> {
        check_modulus_for::<S>(n)?;
        if values.len() as u64 != n.pow(4) {
            return Err(Error::Parse(format!(
                "expected {} values, got {}",
                n.pow(4),
                values.len()
            )));
        }
        Ok(FiniteModelFunction { n, values })
    }

    pub fn constant(n: u64, v: i64) -> Result<Self> {
        Self::from_fn(n, |_| S::from_int(v, n))
    }

    pub fn delta(n: u64, at: Point) -> Result<Self> {
        Self::from_fn(n, |x| S::from_int(i64::from(x == at), n))
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn index(&self, x: &Point) -> usize {
        let n = self.n;
        (((x[0] * n + x[1]) * n + x[2]) * n + x[3]) as usize
    }

    pub fn point_of(n: u64, i: usize) -> Point {
        let i = i as u64;
        [i / (n * n * n), i / (n * n) % n, i / n % n, i % n]
    }

    pub fn at(&self, x: &Point) -> &S {
        &self.values[self.index(x)]
    }

    pub fn sum(&self) -> S {
        self.values.iter().fold(S::zero(self.n), |a, v| a.add(v))
    }

    pub fn sum_where(&self, pred: impl Fn(&Point) -> bool) -> S {
        let n = self.n;
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| pred(&Self::point_of(n, *i)))
            .fold(S::zero(n), |a, (_, v)| a.add(v))
    }

    /// `(l·φ)(x) = φ(act(x, l))`.
    pub fn translate(&self, l: &ModMat) -> Result<Self> {
        let n = self.n;
        let mut values = Vec::with_capacity(self.values.len());
        for i in 0..self.values.len() {
            let y = act_mod(&Self::point_of(n, i), l, n)?;
            values.push(self.at(&y).clone());
        }
        Ok(FiniteModelFunction { n, values })
    }

    pub(crate) fn map(&self, f: impl Fn(&S) -> S) -> Self {
        FiniteModelFunction { n: self.n, values: self.values.iter().map(f).collect() }
    }

    /// Unnormalized DFT along one axis (0-based) with character `ψ(coef·j·k)`.
    fn axis_dft(&self, axis: usize, coef: u64) -> Self {
        let n = self.n;
        let stride = n.pow(3 - axis as u32) as usize;
        let block = stride * n as usize;
        let table: Vec<Complex64> = (0..n).map(|k| <Complex64 as Scalar>::root_of_unity(k, n)).collect();
        let mut out = vec![S::zero(n); self.values.len()];
        for start in (0..self.values.len()).step_by(block) {
            for off in 0..stride {
                let base = start + off;
                for k in 0..n {
                    let mut acc = S::zero(n);
                    for j in 0..n {
                        let v = &self.values[base + j as usize * stride];
                        if !v.is_zero() {
                            acc = acc.add(&v.mul_root_table(coef * j % n * k % n, n, &table));
                        }
                    }
                    out[base + k as usize * stride] = acc;
                }
            }
        }
        FiniteModelFunction { n, values: out }
    }

    /// `φ̂(y) = N⁻² Σ_x φ(x)·ψ([x, y])`.
    pub fn fourier(&self) -> Self {
        let n = self.n;
        let i3 = inv_mod(3, n).expect("3 invertible");
        let r = self
            .axis_dft(0, 1)
            .axis_dft(1, n - i3)
            .axis_dft(2, i3)
            .axis_dft(3, n - 1);
        // r(k0, k1, k2, k3) pairs x1..x4 against y4, y3, y2, y1
        let mut values = Vec::with_capacity(r.values.len());
        for i in 0..r.values.len() {
            let y = Self::point_of(n, i);
            values.push(r.at(&[y[3], y[2], y[1], y[0]]).scale(1, (n * n) as i64));
        }
        FiniteModelFunction { n, values }
    }

    fn partial(&self, axes: &[usize], sign: i8) -> Result<Self> {
        let ok = matches!(axes, [3] | [4] | [3, 4] | [4, 3]);
        if !ok {
            return Err(Error::InvalidAxes(axes.to_vec()));
        }
        let n = self.n;
        let mut g = self.clone();
        for &a in axes {
            g = if sign > 0 {
                g.axis_dft(a - 1, 1).map(|v| v.scale(1, n as i64))
            } else {
                g.axis_dft(a - 1, n - 1)
            };
        }
        Ok(g)
    }

    /// Partial transform on the axes {4}, {3} or {3, 4} (1-based):
    /// `φ^{(4)}(x) = N⁻¹ Σ_{y4} φ(x1, x2, x3, y4)·ψ(x4·y4)`.
    ///
    /// The N⁻¹ factor per axis is not self-dual: applying the transform twice
    /// gives `N^{−|axes|}·φ` with the transformed coordinates negated. See
    /// [`FiniteModelFunction::inverse_partial_fourier`].
    pub fn partial_fourier(&self, axes: &[usize]) -> Result<Self> {
        self.partial(axes, 1)
    }

    /// Inverse of [`FiniteModelFunction::partial_fourier`]: conjugate
    /// character, no normalization.
    pub fn inverse_partial_fourier(&self, axes: &[usize]) -> Result<Self> {
        self.partial(axes, -1)
    }

    /// `x ↦ φ(x)` with the listed (1-based) coordinates negated.
    pub fn reflect(&self, axes: &[usize]) -> Self {
        let n = self.n;
        let mut values = Vec::with_capacity(self.values.len());
        for i in 0..self.values.len() {
            let mut y = Self::point_of(n, i);
            for &a in axes {
                y[a - 1] = (n - y[a - 1]) % n;
            }
            values.push(self.at(&y).clone());
        }
        FiniteModelFunction { n, values }
    }

    /// Largest pointwise distance to `other`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    pub fn to_complex(&self) -> FiniteModelFunction<Complex64> {
        FiniteModelFunction { n: self.n, values: self.values.iter().map(S::to_complex).collect() }
    }
}

impl FiniteModelFunction<Complex64> {
    /// Values with real and imaginary parts uniform in [−1, 1].
    pub fn random<R: Rng>(n: u64, rng: &mut R) -> Result<Self> {
        Self::from_fn(n, |_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    }
}

impl FiniteModelFunction<Cyclotomic> {
    /// Small integer values, mostly zero.
    pub fn random_exact<R: Rng>(n: u64, rng: &mut R) -> Result<Self> {
        Self::from_fn(n, |_| {
            let v = if rng.gen_bool(0.1) { rng.gen_range(-3..=3) } else { 0 };
            Cyclotomic::from_int(v, n)
        })
    }
}

/// The singular strata of V(F_p): nonzero cubes of linear forms (S1), forms
/// with exactly a double root (S2), and the nondegenerate forms (V⁰).
#[derive(Debug, Clone)]
pub struct OrbitFibers {
    pub p: u64,
    pub s1: Vec<Point>,
    pub s2: Vec<Point>,
    pub v0: Vec<Point>,
}

fn orbit(x: &Point, group: &[ModMat], p: u64) -> Result<Vec<Point>> {
    let mut pts: Vec<Point> = group.iter().map(|l| act_mod(x, l, p)).collect::<Result<_>>()?;
    pts.sort();
    pts.dedup();
    Ok(pts)
}

fn compute_fibers(p: u64) -> Result<OrbitFibers> {
    let group = gl2_mod(p, false);
    let s1 = orbit(&[0, 0, 0, 1], &group, p)?;
    let s2 = orbit(&[0, 0, 1, 0], &group, p)?;
    let mut v0 = Vec::new();
    for i in 0..p.pow(4) {
        let x = FiniteModelFunction::<Complex64>::point_of(p, i as usize);
        if discriminant_mod(&x, p) != 0 {
            v0.push(x);
        }
    }
    Ok(OrbitFibers { p, s1, s2, v0 })
}

/// GL(2, F_p)-orbit fibers of V(F_p), cached per prime.
pub fn orbit_fibers(p: u64) -> Result<Arc<OrbitFibers>> {
    check_modulus(p)?;
    if !is_prime(p) {
        return Err(Error::ModulusNotPrime(p));
    }
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<OrbitFibers>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().expect("fiber cache").get(&p) {
        return Ok(f.clone());
    }
    let f = Arc::new(compute_fibers(p)?);
    cache.lock().expect("fiber cache").insert(p, f.clone());
    Ok(f)
}

/// Function on the plane F_q².
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneFunction<S: Scalar = Complex64> {
    q: u64,
    values: Vec<S>,
}

impl<S: Scalar> PlaneFunction<S> {
    pub fn from_fn(q: u64, f: impl Fn(u64, u64) -> S) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::ModulusNotPrime(q));
        }
        let values = (0..q * q).map(|i| f(i / q, i % q)).collect();
        Ok(PlaneFunction { q, values })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn at(&self, a: u64, b: u64) -> &S {
        &self.values[(a * self.q + b) as usize]
    }
}

impl PlaneFunction<Complex64> {
    pub fn random<R: Rng>(q: u64, rng: &mut R) -> Result<Self> {
        let v: Vec<Complex64> = (0..q * q)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Self::from_fn(q, |a, b| v[(a * q + b) as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F = FiniteModelFunction<Complex64>;
    type E = FiniteModelFunction<Cyclotomic>;

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(F::constant(6, 1), Err(Error::ModulusDivisibleBy3(6))));
        assert!(matches!(F::constant(1, 1), Err(Error::InvalidModulus(1))));
        assert!(matches!(E::constant(25, 1), Err(Error::ModulusNotPrime(25))));
        assert!(F::constant(25, 1).is_ok());
    }

    #[test]
    fn fourier_of_delta_and_constant() {
        let n = 5;
        let d = E::delta(n, [0; 4]).unwrap().fourier();
        let want = Cyclotomic::from_int(1, n).scale(1, 25);
        assert!(d.values().iter().all(|v| *v == want));
        let c = E::constant(n, 1).unwrap().fourier();
        let peak = E::delta(n, [0; 4]).unwrap().map(|v| v.scale(25, 1));
        assert_eq!(c, peak);
    }

    #[test]
    fn fourier_matches_direct_sum() {
        let n = 5;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let phi = F::random(n, &mut rng).unwrap();
        let hat = phi.fourier();
        for y in [[0, 1, 2, 3], [4, 4, 0, 1], [1, 0, 0, 0]] {
            let mut s = Complex64::new(0.0, 0.0);
            for i in 0..phi.values().len() {
                let x = F::point_of(n, i);
                s += phi.values()[i] * <Complex64 as Scalar>::root_of_unity(pairing_mod(&x, &y, n), n);
            }
            assert!((s / 25.0 - hat.at(&y)).norm() < 1e-12);
        }
    }

    #[test]
    fn fourier_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in [5, 7] {
            let phi = F::random(n, &mut rng).unwrap();
            assert!(phi.fourier().fourier().max_distance(&phi) < 1e-12);
        }
        let phi = E::random_exact(5, &mut rng).unwrap();
        assert_eq!(phi.fourier().fourier(), phi);
    }

    #[test]
    fn partial_transforms() {
        let n = 7;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let phi = F::random(n, &mut rng).unwrap();
        for axes in [&[4][..], &[3, 4]] {
            let t = phi.partial_fourier(axes).unwrap();
            assert!(t.inverse_partial_fourier(axes).unwrap().max_distance(&phi) < 1e-12);
            let twice = t.partial_fourier(axes).unwrap();
            let want = phi.reflect(axes).map(|v| Scalar::scale(v, 1, n.pow(axes.len() as u32) as i64));
            assert!(twice.max_distance(&want) < 1e-12);
        }
        let both = phi.partial_fourier(&[3, 4]).unwrap();
        let nested = phi.partial_fourier(&[4]).unwrap().partial_fourier(&[3]).unwrap();
        assert!(both.max_distance(&nested) < 1e-12);
        // value at the origin
        let s: Complex64 = (0..n * n).map(|i| *phi.at(&[0, 0, i / n, i % n])).sum();
        assert!((both.at(&[0; 4]) - s / 49.0).norm() < 1e-12);
        assert!(matches!(phi.partial_fourier(&[1, 2]), Err(Error::InvalidAxes(_))));
    }

    #[test]
    fn partial_of_delta() {
        let n = 5;
        let d = E::delta(n, [0; 4]).unwrap().partial_fourier(&[4]).unwrap();
        let fifth = Cyclotomic::from_int(1, n).scale(1, 5);
        for i in 0..d.values().len() {
            let x = E::point_of(n, i);
            let want = if x[..3] == [0, 0, 0] { fifth.clone() } else { Cyclotomic::zero(n) };
            assert_eq!(d.values()[i], want);
        }
    }

    #[test]
    fn pairing_is_equivariant() {
        let n = 7;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let group = gl2_mod(n, false);
        for _ in 0..50 {
            let l = group[rng.gen_range(0..group.len())];
            let x: Point = std::array::from_fn(|_| rng.gen_range(0..n));
            let y: Point = std::array::from_fn(|_| rng.gen_range(0..n));
            let xl = act_mod(&x, &l, n).unwrap();
            let yl = act_mod(&y, &iota_mod(&l, n).unwrap(), n).unwrap();
            assert_eq!(pairing_mod(&xl, &yl, n), pairing_mod(&x, &y, n));
            assert_eq!(pairing_mod(&x, &x, n), 0);
        }
    }

    #[test]
    fn fibers_partition_v() {
        for p in [5, 7] {
            let f = orbit_fibers(p).unwrap();
            // |S1| = p² − 1 and |S2| = p(p² − 1)
            assert_eq!(f.s1.len() as u64, p * p - 1);
            assert_eq!(f.s2.len() as u64, p * (p * p - 1));
            assert_eq!((1 + f.s1.len() + f.s2.len() + f.v0.len()) as u64, p.pow(4));
            for x in f.s1.iter().chain(&f.s2) {
                assert_eq!(discriminant_mod(x, p), 0);
            }
        }
        assert!(matches!(orbit_fibers(25), Err(Error::ModulusNotPrime(25))));
    }
}
