//! The scalar inputs of the principal-part formulas.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

type SamplerFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// An entire function of `s` supplied by the user.
#[derive(Clone)]
pub enum Sampler {
    /// `Σ c_k s^k`.
    Polynomial(Vec<f64>),
    Custom(SamplerFn),
}

impl Sampler {
    pub fn zero() -> Sampler {
        Sampler::Polynomial(Vec::new())
    }

    pub fn custom(f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Sampler {
        Sampler::Custom(Arc::new(f))
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        match self {
            Sampler::Polynomial(c) => c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * s + a),
            Sampler::Custom(f) => f(s),
        }
    }

    pub fn eval_real(&self, s: f64) -> f64 {
        self.eval(Complex64::new(s, 0.0)).re
    }

    fn parse(v: &str) -> Result<Sampler> {
        let body = v
            .strip_prefix("poly:")
            .ok_or_else(|| Error::Config(format!("sampler must be `poly:c0,c1,...`, got `{v}`")))?;
        let c = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad coefficient `{t}`"))))
            .collect::<Result<_>>()?;
        Ok(Sampler::Polynomial(c))
    }
}

impl fmt::Debug for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sampler::Polynomial(c) => write!(f, "Polynomial({c:?})"),
            Sampler::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// Volumes, special values and functionals of a test function φ.
///
/// `dbl_phi` is `∫|a|²φ(0, a, x3, x4)` and `dbl_phi_log` its twin with an
/// extra `log|a|`; `moment_phi(σ)` is the same integral with `|a|^σ`, needed
/// only for the truncated variant away from `s = 2`.
#[derive(Debug, Clone)]
pub struct FunctionalBundle {
    pub vol_l: f64,
    pub vol_m0: f64,
    pub vol_m1: f64,
    pub vol_m2: f64,
    pub c_f: f64,
    pub phi0: f64,
    pub phihat0: f64,
    pub sigma1_phi: f64,
    pub sigma1_phihat: f64,
    pub dbl_phi: f64,
    pub dbl_phihat: f64,
    pub dbl_phi_log: f64,
    pub zplus_phi: Sampler,
    pub zplus_phihat: Sampler,
    pub moment_phi: Option<Sampler>,
    pub lim_term: f64,
    pub log_height_int: f64,
    pub n1: f64,
    pub n2: f64,
}

impl Default for FunctionalBundle {
    fn default() -> Self {
        FunctionalBundle {
            vol_l: 1.0,
            vol_m0: 1.0,
            vol_m1: 1.0,
            vol_m2: 1.0,
            c_f: 1.0,
            phi0: 0.0,
            phihat0: 0.0,
            sigma1_phi: 0.0,
            sigma1_phihat: 0.0,
            dbl_phi: 0.0,
            dbl_phihat: 0.0,
            dbl_phi_log: 0.0,
            zplus_phi: Sampler::zero(),
            zplus_phihat: Sampler::zero(),
            moment_phi: None,
            lim_term: 0.0,
            log_height_int: 0.0,
            n1: 0.0,
            n2: 0.0,
        }
    }
}

impl FunctionalBundle {
    pub fn validate(&self) -> Result<()> {
        for (v, name) in [
            (self.vol_l, "vol_L"),
            (self.vol_m0, "vol_M0"),
            (self.vol_m1, "vol_M1"),
            (self.vol_m2, "vol_M2"),
            (self.c_f, "c_F"),
        ] {
            if !(v > 0.0) {
                return Err(Error::NonPositive(name));
            }
        }
        Ok(())
    }

    /// Random bundle with volumes in [0.5, 2] and the other scalars in [−1, 1];
    /// samplers are random quadratics, and the moment sampler is affine.
    pub fn random<R: Rng>(rng: &mut R) -> FunctionalBundle {
        let mut u = || rng.gen_range(-1.0..1.0);
        let mut b = FunctionalBundle {
            phi0: u(),
            phihat0: u(),
            sigma1_phi: u(),
            sigma1_phihat: u(),
            dbl_phi: u(),
            dbl_phihat: u(),
            dbl_phi_log: u(),
            zplus_phi: Sampler::Polynomial(vec![u(), u(), u()]),
            zplus_phihat: Sampler::Polynomial(vec![u(), u(), u()]),
            lim_term: u(),
            log_height_int: u(),
            n1: u(),
            n2: u(),
            ..Default::default()
        };
        // M(σ) = dbl_phi + dbl_phi_log·(σ − 2) keeps M(2) and M'(2) consistent
        b.moment_phi = Some(Sampler::Polynomial(vec![b.dbl_phi - 2.0 * b.dbl_phi_log, b.dbl_phi_log]));
        for v in [&mut b.vol_l, &mut b.vol_m0, &mut b.vol_m1, &mut b.vol_m2, &mut b.c_f] {
            *v = rng.gen_range(0.5..2.0);
        }
        b
    }

    /// An all-zero bundle (unit volumes).
    pub fn zero() -> FunctionalBundle {
        FunctionalBundle::default()
    }

    /// Parses `key = value` lines (`#` comments allowed). Sampler values are
    /// written `poly:c0,c1,...` in ascending powers of `s`.
    pub fn parse(text: &str) -> Result<FunctionalBundle> {
        let mut b = FunctionalBundle::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let num = || v.parse::<f64>().map_err(|_| Error::Config(format!("line {}: bad number `{v}`", no + 1)));
            match k {
                "vol_L" | "vol_l" => b.vol_l = num()?,
                "vol_M0" | "vol_m0" => b.vol_m0 = num()?,
                "vol_M1" | "vol_m1" => b.vol_m1 = num()?,
                "vol_M2" | "vol_m2" => b.vol_m2 = num()?,
                "c_F" | "c_f" => b.c_f = num()?,
                "phi0" => b.phi0 = num()?,
                "phihat0" => b.phihat0 = num()?,
                "sigma1_phi" => b.sigma1_phi = num()?,
                "sigma1_phihat" => b.sigma1_phihat = num()?,
                "dbl_phi" => b.dbl_phi = num()?,
                "dbl_phihat" => b.dbl_phihat = num()?,
                "dbl_phi_log" => b.dbl_phi_log = num()?,
                "zplus_phi" => b.zplus_phi = Sampler::parse(v)?,
                "zplus_phihat" => b.zplus_phihat = Sampler::parse(v)?,
                "moment_phi" => b.moment_phi = Some(Sampler::parse(v)?),
                "lim_term" => b.lim_term = num()?,
                "log_height_int" => b.log_height_int = num()?,
                "n1" => b.n1 = num()?,
                "n2" => b.n2 = num()?,
                _ => return Err(Error::Config(format!("line {}: unknown key `{k}`", no + 1))),
            }
        }
        b.validate()?;
        Ok(b)
    }
}
