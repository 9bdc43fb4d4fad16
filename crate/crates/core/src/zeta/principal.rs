//! The principal part of the zeta integral, its residues, and the truncated
//! variant `Z̃(φ, s, T)`.
//!
//! The principal part is
//!
//! ```text
//! Z₊(φ,s) + Z₊(φ̂,2−s) − vol_L φ(0)/s + vol_L φ̂(0)/(s−2)
//!   − vol_M0 Σ₁(φ)/(c_F(3s−1)) + vol_M0 Σ₁(φ̂)/(c_F(3s−5))
//!   − vol_M0 dbl_phihat/(c_F s) + vol_M0 dbl_phi/(c_F(s−2))
//! ```
//!
//! Its pole structure is kept symbolically as a list of [`PoleTerm`]s, so
//! residues are read off rather than fitted.

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;

use super::bundle::FunctionalBundle;
use crate::error::{Error, Result};
use crate::g2::{self, TruncationParam};
use crate::quadrature;

/// `coeff/(s − pole)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleTerm {
    pub pole: Rational64,
    pub coeff: f64,
    pub label: &'static str,
}

pub fn poles() -> [Rational64; 4] {
    [
        Rational64::from_integer(0),
        Rational64::new(1, 3),
        Rational64::new(5, 3),
        Rational64::from_integer(2),
    ]
}

/// The six polar terms of the template, each rewritten as `c/(s − s₀)`.
pub fn pole_terms(b: &FunctionalBundle) -> Vec<PoleTerm> {
    let m = b.vol_m0 / b.c_f;
    let [p0, p13, p53, p2] = poles();
    vec![
        PoleTerm { pole: p0, coeff: -b.vol_l * b.phi0, label: "vol_L phi(0) / s" },
        PoleTerm { pole: p2, coeff: b.vol_l * b.phihat0, label: "vol_L phihat(0) / (s-2)" },
        PoleTerm { pole: p13, coeff: -m * b.sigma1_phi / 3.0, label: "Sigma1(phi) / (3s-1)" },
        PoleTerm { pole: p53, coeff: m * b.sigma1_phihat / 3.0, label: "Sigma1(phihat) / (3s-5)" },
        PoleTerm { pole: p0, coeff: -m * b.dbl_phihat, label: "dbl_phihat / s" },
        PoleTerm { pole: p2, coeff: m * b.dbl_phi, label: "dbl_phi / (s-2)" },
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residue {
    pub pole: Rational64,
    pub value: f64,
}

/// Residues at 0, 1/3, 5/3, 2 (in that order), summed from the pole terms.
pub fn residues(b: &FunctionalBundle) -> Vec<Residue> {
    let terms = pole_terms(b);
    poles()
        .into_iter()
        .map(|p| Residue {
            pole: p,
            value: terms.iter().filter(|t| t.pole == p).map(|t| t.coeff).sum(),
        })
        .collect()
}

/// Poles with a nonzero residue.
pub fn pole_set(b: &FunctionalBundle) -> Vec<Rational64> {
    residues(b).into_iter().filter(|r| r.value != 0.0).map(|r| r.pole).collect()
}

fn check_off_poles(s: Complex64) -> Result<()> {
    for p in poles() {
        if s.im == 0.0 && s.re == p.to_f64().unwrap_or(f64::NAN) {
            return Err(Error::AtPole(p.to_string()));
        }
    }
    Ok(())
}

fn entire(b: &FunctionalBundle, s: Complex64) -> Complex64 {
    b.zplus_phi.eval(s) + b.zplus_phihat.eval(Complex64::new(2.0, 0.0) - s)
}

/// Term-by-term evaluation of the template.
pub fn principal_part(b: &FunctionalBundle, s: Complex64) -> Result<Complex64> {
    b.validate()?;
    check_off_poles(s)?;
    let m = b.vol_m0 / b.c_f;
    let one = Complex64::new(1.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    Ok(entire(b, s) - one / s * (b.vol_l * b.phi0) + one / (s - two) * (b.vol_l * b.phihat0)
        - one / (3.0 * s - 1.0) * (m * b.sigma1_phi)
        + one / (3.0 * s - 5.0) * (m * b.sigma1_phihat)
        - one / s * (m * b.dbl_phihat)
        + one / (s - two) * (m * b.dbl_phi))
}

/// The same function assembled from the symbolic pole list.
pub fn principal_part_from_poles(b: &FunctionalBundle, s: Complex64) -> Result<Complex64> {
    b.validate()?;
    check_off_poles(s)?;
    Ok(pole_terms(b).iter().fold(entire(b, s), |acc, t| {
        acc + t.coeff / (s - t.pole.to_f64().unwrap_or(f64::NAN))
    }))
}

/// Constant term of the Laurent expansion at `s = 2`, i.e.
/// `lim_{s→2} d/ds (s − 2)·PP(s)`.
pub fn regular_part_at_2(b: &FunctionalBundle) -> f64 {
    let m = b.vol_m0 / b.c_f;
    let s = Complex64::new(2.0, 0.0);
    entire(b, s).re - b.vol_l * b.phi0 / 2.0 - m * b.sigma1_phi / 5.0 + m * b.sigma1_phihat
        - m * b.dbl_phihat / 2.0
}

/// `(s − 2)·PP(s)` at `s = 2 + 10^{−m}` for `m = 1..=m_max`.
pub fn residue_limit_sequence(b: &FunctionalBundle, m_max: u32) -> Result<Vec<f64>> {
    (1..=m_max)
        .map(|m| {
            let s = 2.0 + 10f64.powi(-(m as i32));
            let h = s - 2.0;
            Ok((principal_part(b, Complex64::new(s, 0.0))? * h).re)
        })
        .collect()
}

/// Richardson extrapolation of the last two entries of the limit sequence
/// (step ratio 10, error linear in the step).
pub fn richardson_limit(seq: &[f64]) -> Option<f64> {
    match seq {
        [.., a, b] => Some((10.0 * b - a) / 9.0),
        _ => None,
    }
}

/// `∫₁^{e^{T2}} t^{−(s−2)} d^×t`.
pub fn t2_integral(s: f64, t2: f64) -> f64 {
    if s == 2.0 {
        t2
    } else {
        -(-(s - 2.0) * t2).exp_m1() / (s - 2.0)
    }
}

/// `Z̃(φ, s, T)` for real `s > 5/3`.
///
/// At `s = 2` the last term is `(vol_M0/c_F)·(T1·dbl_phi − dbl_phi_log)`;
/// elsewhere it is `(vol_M0/c_F)·(e^{(2−s)T1}·M(s) − M(2))/(2 − s)` with the
/// bundle's moment sampler `M`, or `M ≡ dbl_phi` when none is given.
pub fn tilde_z_principal(b: &FunctionalBundle, s: f64, t: &TruncationParam) -> Result<f64> {
    b.validate()?;
    if !(s > 5.0 / 3.0) {
        return Err(Error::OutOfRange(s, "s must exceed 5/3"));
    }
    let m = b.vol_m0 / b.c_f;
    let sc = Complex64::new(s, 0.0);
    let last = if s == 2.0 {
        m * (t.t1 * b.dbl_phi - b.dbl_phi_log)
    } else {
        let (ms, m2) = match &b.moment_phi {
            Some(mom) => (mom.eval_real(s), mom.eval_real(2.0)),
            None => (b.dbl_phi, b.dbl_phi),
        };
        m * (((2.0 - s) * t.t1).exp() * ms - m2) / (2.0 - s)
    };
    Ok(entire(b, sc).re - b.vol_l * b.phi0 / s + t2_integral(s, t.t2) * b.vol_l * b.phihat0
        - m * b.sigma1_phi / (3.0 * s - 1.0)
        + m * b.sigma1_phihat / (3.0 * s - 5.0)
        - m * b.dbl_phihat / s
        + last)
}

/// The final term of `Z̃(φ, 2, T)` computed from an `a`-profile
/// `g(a) = ∫φ(0, a, x3, x4) dx3 dx4` on `a > 0`: the inner `b`-integral of the
/// truncation difference is evaluated numerically at every node.
pub fn final_term_from_profile<F: Fn(f64) -> f64>(vol_m0: f64, c_f: f64, g: &F, t1: f64) -> f64 {
    let inner = |a: f64| g(a) * a * g2::truncation_residual(a, t1);
    vol_m0 / c_f * quadrature::exp_sinh(&inner, 0.0, 1e-11)
}

/// `lim_term − vol_M1·log_height_int + T1·vol_M1·n1 + T2·vol_M2·n2`.
pub fn theorem_rhs(b: &FunctionalBundle, t: &TruncationParam) -> f64 {
    b.lim_term - b.vol_m1 * b.log_height_int + t.t1 * b.vol_m1 * b.n1 + t.t2 * b.vol_m2 * b.n2
}

/// Fills `lim_term`, `log_height_int`, `n1`, `n2` from the principal-part
/// functionals, so that [`theorem_rhs`] equals `Z̃(φ, 2, T)`.
pub fn with_bookkeeping(b: &FunctionalBundle) -> FunctionalBundle {
    let m = b.vol_m0 / b.c_f;
    FunctionalBundle {
        lim_term: regular_part_at_2(b),
        n2: b.vol_l * b.phihat0 / b.vol_m2,
        n1: m * b.dbl_phi / b.vol_m1,
        log_height_int: m * b.dbl_phi_log / b.vol_m1,
        ..b.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::bundle::Sampler;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(s: f64) -> Complex64 {
        Complex64::new(s, 0.0)
    }

    #[test]
    fn zero_bundle() {
        let b = FunctionalBundle::zero();
        assert_eq!(principal_part(&b, c(0.7)).unwrap(), c(0.0));
        assert!(residues(&b).iter().all(|r| r.value == 0.0));
        assert!(pole_set(&b).is_empty());
        assert_eq!(theorem_rhs(&b, &TruncationParam { t1: 1.0, t2: 2.0 }), 0.0);
    }

    #[test]
    fn residues_match_template() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = FunctionalBundle::random(&mut rng);
        let r = residues(&b);
        let m = b.vol_m0 / b.c_f;
        assert_eq!(r[3].value, b.vol_l * b.phihat0 + m * b.dbl_phi);
        assert_eq!(r[1].value, -m * b.sigma1_phi / 3.0);
        assert_eq!(pole_set(&b), poles().to_vec());
        for s in [c(0.3), c(2.5), Complex64::new(1.0, 1.0)] {
            let d = principal_part(&b, s).unwrap() - principal_part_from_poles(&b, s).unwrap();
            assert!(d.norm() < 1e-12);
        }
        assert!(matches!(principal_part(&b, c(2.0)), Err(Error::AtPole(_))));
        assert!(matches!(principal_part(&b, c(1.0 / 3.0)), Err(Error::AtPole(_))));
    }

    #[test]
    fn limit_converges() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let b = FunctionalBundle::random(&mut rng);
        let seq = residue_limit_sequence(&b, 6).unwrap();
        let res = residues(&b)[3].value;
        assert!((richardson_limit(&seq).unwrap() - res).abs() < 1e-9);
        // error of the raw sequence shrinks by ~10 per step
        let e: Vec<f64> = seq.iter().map(|v| (v - res).abs()).collect();
        assert!(e[5] < e[4] && e[4] < e[3]);
    }

    #[test]
    fn truncated_variant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = FunctionalBundle::random(&mut rng);
        assert_eq!(t2_integral(2.0, 1.7), 1.7);
        assert_eq!(t2_integral(2.4, 0.0), 0.0);
        let t = TruncationParam { t1: 0.5, t2: 0.0 };
        let base = tilde_z_principal(&b, 2.0, &t).unwrap();
        let m = b.vol_m0 / b.c_f;
        let shifted = tilde_z_principal(&b, 2.0, &TruncationParam { t1: 1.5, t2: 0.0 }).unwrap();
        assert!((shifted - base - m * b.dbl_phi).abs() < 1e-12);
        // continuity of the s ≠ 2 branch at s = 2
        let near = tilde_z_principal(&b, 2.0 + 1e-7, &t).unwrap();
        assert!((near - base).abs() < 1e-5);
        assert!(tilde_z_principal(&b, 1.6, &t).is_err());
    }

    #[test]
    fn difference_depends_on_few_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut b = FunctionalBundle::random(&mut rng);
        b.moment_phi = None;
        let t = TruncationParam { t1: 0.8, t2: 1.3 };
        let diff = |b: &FunctionalBundle, s: f64| tilde_z_principal(b, s, &t).unwrap() - principal_part(b, c(s)).unwrap().re;
        for s in [1.8, 2.2, 3.0] {
            let d0 = diff(&b, s);
            let mut o = FunctionalBundle::random(&mut rng);
            o.moment_phi = None;
            o.vol_l = b.vol_l;
            o.vol_m0 = b.vol_m0;
            o.c_f = b.c_f;
            o.phihat0 = b.phihat0;
            o.dbl_phi = b.dbl_phi;
            assert!((diff(&o, s) - d0).abs() < 1e-12);
            let m = b.vol_m0 / b.c_f;
            let closed = b.vol_l * b.phihat0 * (t2_integral(s, t.t2) - 1.0 / (s - 2.0))
                + m * b.dbl_phi * ((2.0 - s) * t.t1).exp() / (2.0 - s);
            assert!((d0 - closed).abs() < 1e-12);
        }
    }

    #[test]
    fn bookkeeping_matches_truncated_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b = with_bookkeeping(&FunctionalBundle::random(&mut rng));
        for (t1, t2) in [(0.0, 0.0), (1.0, 2.0), (-0.5, 3.25)] {
            let t = TruncationParam { t1, t2 };
            let d = theorem_rhs(&b, &t) - tilde_z_principal(&b, 2.0, &t).unwrap();
            assert!(d.abs() < 1e-12, "{d}");
        }
    }

    #[test]
    fn final_term_by_quadrature() {
        // g(a) = e^{−πa²}: dbl_phi = 1/(2π), dbl_phi_log = −(γ + log π)/(4π)
        let gamma = 0.577_215_664_901_532_9;
        let pi = std::f64::consts::PI;
        let mut b = FunctionalBundle { vol_m0: 1.5, c_f: 0.75, ..Default::default() };
        b.dbl_phi = 1.0 / (2.0 * pi);
        b.dbl_phi_log = -(gamma + pi.ln()) / (4.0 * pi);
        for t1 in [0.0, 0.7, -1.2] {
            let t = TruncationParam { t1, t2: 0.0 };
            let q = final_term_from_profile(b.vol_m0, b.c_f, &|a: f64| (-pi * a * a).exp(), t1);
            let closed = tilde_z_principal(&b, 2.0, &t).unwrap();
            assert!((q - closed).abs() < 1e-8, "{q} vs {closed}");
        }
    }

    #[test]
    fn lim_term_is_derivative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut b = FunctionalBundle::random(&mut rng);
        b.zplus_phi = Sampler::custom(|s| (s * 0.3).exp());
        let g = |s: f64| (principal_part(&b, c(s)).unwrap() * (s - 2.0)).re;
        let h = 1e-4;
        let d = (g(2.0 + h) - g(2.0 - h)) / (2.0 * h);
        assert!((d - regular_part_at_2(&b)).abs() < 1e-6);
    }
}
