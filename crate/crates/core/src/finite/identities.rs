//! Exactly checkable identities of the finite model.
//!
//! Each check returns a [`FiniteReport`]; floating checks pass at residual
//! ≤ [`FLOAT_TOL`], exact (cyclotomic) checks only at residual 0.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    act_mod, gl2_mod, iota_mod, orbit_fibers, Cyclotomic, FiniteModelFunction, ModMat, PlaneFunction,
    Scalar,
};
use crate::error::Result;

pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteReport {
    pub identity_name: String,
    pub modulus: u64,
    pub max_residual: f64,
    pub pass: bool,
}

impl FiniteReport {
    fn new<S: Scalar>(name: &str, modulus: u64, residual: f64) -> Self {
        let tol = if S::EXACT { 0.0 } else { FLOAT_TOL };
        FiniteReport {
            identity_name: name.to_string(),
            modulus,
            max_residual: residual,
            pass: residual <= tol,
        }
    }

    /// Folds another run of the same identity into this report.
    pub fn absorb(&mut self, other: &FiniteReport) {
        self.max_residual = self.max_residual.max(other.max_residual);
        self.pass &= other.pass;
    }
}

type F<S> = FiniteModelFunction<S>;

/// `fourier(fourier(φ)) = φ`.
pub fn verify_fourier_involution<S: Scalar>(phi: &F<S>) -> FiniteReport {
    let r = phi.fourier().fourier().max_distance(phi);
    FiniteReport::new::<S>("fourier_involution", phi.modulus(), r)
}

/// `Σ|φ|² = Σ|φ̂|²`.
pub fn verify_plancherel<S: Scalar>(phi: &F<S>) -> FiniteReport {
    let n = phi.modulus();
    let norm2 = |f: &F<S>| {
        f.values()
            .iter()
            .fold(S::zero(n), |a, v| a.add(&v.mul(&v.conj())))
    };
    let r = norm2(phi).distance(&norm2(&phi.fourier()));
    FiniteReport::new::<S>("plancherel", n, r)
}

/// Partial transforms: inverse recovers φ, and `φ^{(3,4)} = (φ^{(4)})^{(3)}`.
pub fn verify_partial_transforms<S: Scalar>(phi: &F<S>) -> Result<FiniteReport> {
    let mut r: f64 = 0.0;
    for axes in [&[4][..], &[3, 4]] {
        let t = phi.partial_fourier(axes)?;
        r = r.max(t.inverse_partial_fourier(axes)?.max_distance(phi));
        let k = phi.modulus().pow(axes.len() as u32) as i64;
        let twice = t.partial_fourier(axes)?.map(|v| v.scale(k, 1));
        r = r.max(twice.max_distance(&phi.reflect(axes)));
    }
    let nested = phi.partial_fourier(&[4])?.partial_fourier(&[3])?;
    r = r.max(phi.partial_fourier(&[3, 4])?.max_distance(&nested));
    Ok(FiniteReport::new::<S>("partial_transforms", phi.modulus(), r))
}

/// `Σ_x φ(x) = N²·φ̂(0)` and its orbit rearrangement
/// `Σ_{V⁰} φ = −φ(0) − Σ_{S1} φ − Σ_{S2} φ + N²·φ̂(0)` (prime N).
pub fn verify_poisson_rearrangement<S: Scalar>(phi: &F<S>) -> Result<FiniteReport> {
    let n = phi.modulus();
    let fib = orbit_fibers(n)?;
    let hat0 = phi.fourier().at(&[0; 4]).scale((n * n) as i64, 1);
    let total = phi.sum();
    let r1 = total.distance(&hat0);
    let sum_over = |pts: &[[u64; 4]]| pts.iter().fold(S::zero(n), |a, x| a.add(phi.at(x)));
    let lhs = sum_over(&fib.v0);
    let rhs = hat0
        .sub(phi.at(&[0; 4]))
        .sub(&sum_over(&fib.s1))
        .sub(&sum_over(&fib.s2));
    let r2 = lhs.distance(&rhs);
    Ok(FiniteReport::new::<S>("poisson_rearrangement", n, r1.max(r2)))
}

/// `φ^{(3,4)}(0) = (φ̂)^{(3,4)}(0)` (prime N).
pub fn verify_remarkable_equality<S: Scalar>(phi: &F<S>) -> Result<FiniteReport> {
    let n = phi.modulus();
    orbit_fibers(n)?;
    let a = phi.partial_fourier(&[3, 4])?;
    let hat_a = phi.fourier().partial_fourier(&[3, 4])?;
    let r = a.at(&[0; 4]).distance(hat_a.at(&[0; 4]));
    Ok(FiniteReport::new::<S>("remarkable_equality", n, r))
}

/// `Σ_{x3≠0} (φ̂)^{(3,4)}(0,0,x3,0) = N⁻² Σ_{x2≠0} Σ_{y3,y4} φ(0,x2,y3,y4)` (prime N).
pub fn verify_slice_identity<S: Scalar>(phi: &F<S>) -> Result<FiniteReport> {
    let n = phi.modulus();
    orbit_fibers(n)?;
    let hat_a = phi.fourier().partial_fourier(&[3, 4])?;
    let lhs = (1..n).fold(S::zero(n), |s, x3| s.add(hat_a.at(&[0, 0, x3, 0])));
    let rhs = phi
        .sum_where(|x| x[0] == 0 && x[1] != 0)
        .scale(1, (n * n) as i64);
    Ok(FiniteReport::new::<S>("slice_identity", n, lhs.distance(&rhs)))
}

/// `fourier(l·φ)(y) = φ̂(act(y, l^ι))`.
pub fn fourier_covariance_check<S: Scalar>(phi: &F<S>, l: &ModMat) -> Result<FiniteReport> {
    let n = phi.modulus();
    orbit_fibers(n)?;
    let li = iota_mod(l, n)?;
    let lhs = phi.translate(l)?.fourier();
    let hat = phi.fourier();
    let mut r: f64 = 0.0;
    for (i, v) in lhs.values().iter().enumerate() {
        let y = F::<S>::point_of(n, i);
        r = r.max(v.distance(hat.at(&act_mod(&y, &li, n)?)));
    }
    Ok(FiniteReport::new::<S>("fourier_covariance", n, r))
}

/// `|SL2(F_q)|⁻¹ Σ_h Σ_{y≠0} φ(y·h) = Σ_{x≠0} φ(x)`.
pub fn verify_mean_value<S: Scalar>(phi: &PlaneFunction<S>) -> FiniteReport {
    let q = phi.modulus();
    let group = gl2_mod(q, true);
    let mut lhs = S::zero(q);
    for h in &group {
        for y1 in 0..q {
            for y2 in 0..q {
                if (y1, y2) == (0, 0) {
                    continue;
                }
                let a = (y1 * h[0][0] + y2 * h[1][0]) % q;
                let b = (y1 * h[0][1] + y2 * h[1][1]) % q;
                lhs = lhs.add(phi.at(a, b));
            }
        }
    }
    let lhs = lhs.scale(1, group.len() as i64);
    let mut rhs = S::zero(q);
    for a in 0..q {
        for b in 0..q {
            if (a, b) != (0, 0) {
                rhs = rhs.add(phi.at(a, b));
            }
        }
    }
    FiniteReport::new::<S>("mean_value", q, lhs.distance(&rhs))
}

/// Every identity above on one function; `l` feeds the covariance check.
pub fn all_identities<S: Scalar>(phi: &F<S>, l: &ModMat) -> Result<Vec<FiniteReport>> {
    Ok(vec![
        verify_fourier_involution(phi),
        verify_plancherel(phi),
        verify_partial_transforms(phi)?,
        verify_poisson_rearrangement(phi)?,
        verify_remarkable_equality(phi)?,
        verify_slice_identity(phi)?,
        fourier_covariance_check(phi, l)?,
    ])
}

fn merge(into: &mut Vec<FiniteReport>, batch: Vec<FiniteReport>) {
    for r in batch {
        match into.iter_mut().find(|x| x.identity_name == r.identity_name) {
            Some(x) => x.absorb(&r),
            None => into.push(r),
        }
    }
}

/// `count` seeded random functions (and random `l`) at prime modulus `n`,
/// plus as many plane functions for the mean value formula; one merged
/// report per identity.
pub fn random_suite<R: Rng>(n: u64, count: usize, rng: &mut R) -> Result<Vec<FiniteReport>> {
    let group = gl2_mod(n, false);
    // inputs are drawn serially so the stream does not depend on scheduling
    let mut inputs = Vec::with_capacity(count);
    for _ in 0..count {
        let phi = FiniteModelFunction::<Complex64>::random(n, rng)?;
        let l = group[rng.gen_range(0..group.len())];
        let plane = PlaneFunction::<Complex64>::random(n, rng)?;
        inputs.push((phi, l, plane));
    }
    let batches: Vec<Result<Vec<FiniteReport>>> = inputs
        .par_iter()
        .map(|(phi, l, plane)| {
            let mut b = all_identities(phi, l)?;
            b.push(verify_mean_value(plane));
            Ok(b)
        })
        .collect();
    let mut out = Vec::new();
    for b in batches {
        merge(&mut out, b?);
    }
    Ok(out)
}

/// Exact checks on every point indicator δ_x of V(F_p), which span all
/// functions; one merged report per identity.
pub fn exhaustive_exact(p: u64) -> Result<Vec<FiniteReport>> {
    let group = gl2_mod(p, false);
    let mut out = Vec::new();
    for i in 0..p.pow(4) as usize {
        let x = F::<Cyclotomic>::point_of(p, i);
        let phi = F::<Cyclotomic>::delta(p, x)?;
        let l = group[i % group.len()];
        merge(&mut out, all_identities(&phi, &l)?);
    }
    for a in 0..p {
        for b in 0..p {
            let plane = PlaneFunction::<Cyclotomic>::from_fn(p, |u, v| {
                Cyclotomic::from_int(i64::from((u, v) == (a, b)), p)
            })?;
            merge(&mut out, vec![verify_mean_value(&plane)]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type C = FiniteModelFunction<Complex64>;
    type E = FiniteModelFunction<Cyclotomic>;

    #[test]
    fn poisson_examples() {
        let one = E::constant(5, 1).unwrap();
        let r = verify_poisson_rearrangement(&one).unwrap();
        assert!(r.pass && r.max_residual == 0.0);
        let d = E::delta(5, [0; 4]).unwrap();
        assert!(verify_poisson_rearrangement(&d).unwrap().pass);
        let c = C::constant(25, 1).unwrap();
        assert!(matches!(verify_poisson_rearrangement(&c), Err(Error::ModulusNotPrime(25))));
    }

    #[test]
    fn constant_function_counts_nondegenerate_forms() {
        // |V⁰(F_5)| = 5⁴ − 1 − |S1| − |S2| = 625 − 1 − 24 − 120
        let fib = orbit_fibers(5).unwrap();
        assert_eq!(fib.v0.len(), 480);
    }

    #[test]
    fn remarkable_examples() {
        let d = E::delta(5, [0; 4]).unwrap();
        let a = d.partial_fourier(&[3, 4]).unwrap();
        assert_eq!(*a.at(&[0; 4]), Cyclotomic::from_int(1, 5).scale(1, 25));
        assert!(verify_remarkable_equality(&d).unwrap().pass);
        let one = E::constant(7, 1).unwrap();
        assert!(verify_remarkable_equality(&one).unwrap().pass);
        assert!(verify_slice_identity(&d).unwrap().pass);
        assert!(verify_slice_identity(&one).unwrap().pass);
    }

    #[test]
    fn mean_value_examples() {
        let one = PlaneFunction::<Cyclotomic>::from_fn(5, |_, _| Cyclotomic::from_int(1, 5)).unwrap();
        assert!(verify_mean_value(&one).pass);
        let e = PlaneFunction::<Cyclotomic>::from_fn(7, |a, b| Cyclotomic::from_int(i64::from((a, b) == (1, 0)), 7))
            .unwrap();
        assert!(verify_mean_value(&e).pass);
    }

    #[test]
    fn covariance_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let phi = C::random(7, &mut rng).unwrap();
        let id = [[1, 0], [0, 1]];
        assert!(fourier_covariance_check(&phi, &id).unwrap().max_residual < 1e-12);
        let diag = [[3, 0], [0, 1]];
        assert!(fourier_covariance_check(&phi, &diag).unwrap().pass);
        assert!(matches!(fourier_covariance_check(&phi, &[[1, 2], [2, 4]]), Err(Error::SingularMatrix)));
    }

    #[test]
    fn small_random_suite_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for r in random_suite(5, 5, &mut rng).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn report_json_shape() {
        let r = verify_fourier_involution(&E::delta(5, [1, 2, 3, 4]).unwrap());
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for k in ["identity_name", "modulus", "max_residual", "pass"] {
            assert!(v.get(k).is_some());
        }
    }
}
