//! The log-height term `∫_{R²} φ(y)·log‖y‖ dy`.
//!
//! The Euclidean norm is the default; the sup norm differs by the angular
//! constant `∫_0^{2π} log max(|cos θ|, |sin θ|) dθ = 4G − 2π log 2`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature;

const CATALAN: f64 = 0.915_965_594_177_219_015_054_6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeightNorm {
    #[default]
    Euclidean,
    Sup,
}

impl HeightNorm {
    pub fn eval(self, y1: f64, y2: f64) -> f64 {
        match self {
            HeightNorm::Euclidean => y1.hypot(y2),
            HeightNorm::Sup => y1.abs().max(y2.abs()),
        }
    }
}

impl fmt::Display for HeightNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeightNorm::Euclidean => "euclidean",
            HeightNorm::Sup => "sup",
        })
    }
}

impl FromStr for HeightNorm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" | "l2" => Ok(HeightNorm::Euclidean),
            "sup" | "max" => Ok(HeightNorm::Sup),
            _ => Err(Error::Parse(format!("unknown norm `{s}`"))),
        }
    }
}

/// `∫_0^{2π} log max(|cos θ|, |sin θ|) dθ`, closed form.
pub fn sup_norm_angular_constant() -> f64 {
    4.0 * CATALAN - 2.0 * PI * 2f64.ln()
}

/// Same constant by quadrature: eight copies of `∫_0^{π/4} log cos θ dθ`.
pub fn sup_norm_angular_quadrature() -> f64 {
    8.0 * quadrature::tanh_sinh(&|t: f64| t.cos().ln(), 0.0, PI / 4.0, 1e-13)
}

type Radial = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type General = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A rapidly decreasing function on the real plane.
#[derive(Clone)]
pub enum PlaneTestFunction {
    /// `φ(y) = f(‖y‖₂)`.
    Radial(Radial),
    General(General),
}

impl fmt::Debug for PlaneTestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneTestFunction::Radial(_) => f.write_str("Radial(..)"),
            PlaneTestFunction::General(_) => f.write_str("General(..)"),
        }
    }
}

impl PlaneTestFunction {
    pub fn radial(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        PlaneTestFunction::Radial(Arc::new(f))
    }

    pub fn general(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        PlaneTestFunction::General(Arc::new(f))
    }

    /// `e^{−π‖y‖²}`.
    pub fn gaussian() -> Self {
        Self::radial(|r| (-PI * r * r).exp())
    }

    pub fn zero() -> Self {
        Self::radial(|_| 0.0)
    }

    pub fn eval(&self, y1: f64, y2: f64) -> f64 {
        match self {
            PlaneTestFunction::Radial(f) => f(y1.hypot(y2)),
            PlaneTestFunction::General(f) => f(y1, y2),
        }
    }

    /// `y ↦ φ(y/c)`.
    pub fn scaled(&self, c: f64) -> Self {
        match self {
            PlaneTestFunction::Radial(f) => {
                let f = f.clone();
                Self::radial(move |r| f(r / c))
            }
            PlaneTestFunction::General(f) => {
                let f = f.clone();
                Self::general(move |a, b| f(a / c, b / c))
            }
        }
    }

    /// Treats a radial function as a general one, so that the polar scheme
    /// does not get to use radiality.
    pub fn forget_radial(&self) -> Self {
        let g = self.clone();
        Self::general(move |a, b| g.eval(a, b))
    }

    fn check_decay(&self) -> Result<()> {
        for r in [1e3, 1e4, 1e5] {
            for k in 0..8 {
                let t = k as f64 * PI / 4.0 + 0.3;
                let v = self.eval(r * t.cos(), r * t.sin());
                if !v.is_finite() {
                    return Err(Error::NonIntegrable(format!("value {v} at radius {r}")));
                }
                if r.powf(2.5) * v.abs() > 1e-3 {
                    return Err(Error::NonIntegrable(format!("|φ| = {v:e} at radius {r} decays too slowly")));
                }
            }
        }
        Ok(())
    }
}

/// Two independent evaluations of the log-height term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeightTerm {
    pub norm: HeightNorm,
    pub polar: f64,
    pub cartesian: f64,
}

impl HeightTerm {
    pub fn value(&self) -> f64 {
        self.polar
    }

    pub fn discrepancy(&self) -> f64 {
        (self.polar - self.cartesian).abs()
    }
}

const TOL: f64 = 1e-11;

/// `∫ φ(y) log‖y‖ dy` by polar and by cartesian quadrature.
pub fn log_height_term(phi: &PlaneTestFunction, norm: HeightNorm) -> Result<HeightTerm> {
    phi.check_decay()?;
    Ok(HeightTerm { norm, polar: polar(phi, norm), cartesian: cartesian(phi, norm) })
}

/// `∫ φ(y) dy`, polar.
pub fn mass(phi: &PlaneTestFunction) -> f64 {
    match phi {
        PlaneTestFunction::Radial(f) => 2.0 * PI * quadrature::exp_sinh(&|r: f64| f(r) * r, 0.0, TOL),
        PlaneTestFunction::General(_) => angular(|t| {
            let (c, s) = (t.cos(), t.sin());
            quadrature::exp_sinh(&|r: f64| phi.eval(r * c, r * s) * r, 0.0, TOL)
        }),
    }
}

fn polar(phi: &PlaneTestFunction, norm: HeightNorm) -> f64 {
    match phi {
        PlaneTestFunction::Radial(f) => {
            let radial = 2.0 * PI * quadrature::exp_sinh(&|r: f64| f(r) * r * r.ln(), 0.0, TOL);
            match norm {
                HeightNorm::Euclidean => radial,
                HeightNorm::Sup => {
                    let m = quadrature::exp_sinh(&|r: f64| f(r) * r, 0.0, TOL);
                    radial + m * sup_norm_angular_constant()
                }
            }
        }
        PlaneTestFunction::General(_) => angular(|t| {
            let (c, s) = (t.cos(), t.sin());
            let ang = norm.eval(c, s).ln();
            quadrature::exp_sinh(&|r: f64| phi.eval(r * c, r * s) * r * (r.ln() + ang), 0.0, TOL)
        }),
    }
}

/// `∫_0^{2π} g(θ) dθ` on eight octants, whose endpoints carry the kinks of
/// the sup norm.
fn angular<G: Fn(f64) -> f64>(g: G) -> f64 {
    (0..8)
        .map(|k| {
            let a = k as f64 * PI / 4.0;
            quadrature::adaptive_gauss(&g, a, a + PI / 4.0, 1e-12)
        })
        .sum()
}

fn cartesian(phi: &PlaneTestFunction, norm: HeightNorm) -> f64 {
    let mut total = 0.0;
    for (s1, s2) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
        total += quadrature::exp_sinh(
            &|y1: f64| {
                quadrature::exp_sinh(&|y2: f64| phi.eval(s1 * y1, s2 * y2) * norm.eval(y1, y2).ln(), 0.0, TOL)
            },
            0.0,
            TOL,
        );
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn angular_constant() {
        assert!((sup_norm_angular_constant() - sup_norm_angular_quadrature()).abs() < 1e-12);
    }

    #[test]
    fn zero_function() {
        let h = log_height_term(&PlaneTestFunction::zero(), HeightNorm::Euclidean).unwrap();
        assert_eq!(h.polar, 0.0);
        assert_eq!(h.cartesian, 0.0);
    }

    #[test]
    fn gaussian_closed_form() {
        let h = log_height_term(&PlaneTestFunction::gaussian(), HeightNorm::Euclidean).unwrap();
        let exact = -(GAMMA + PI.ln()) / 2.0;
        assert!((h.polar - exact).abs() < 1e-10, "{h:?}");
        assert!(h.discrepancy() < 1e-8, "{h:?}");
        assert!((mass(&PlaneTestFunction::gaussian()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sup_norm_schemes_agree() {
        let h = log_height_term(&PlaneTestFunction::gaussian(), HeightNorm::Sup).unwrap();
        assert!(h.discrepancy() < 1e-8, "{h:?}");
        let g = log_height_term(&PlaneTestFunction::gaussian().forget_radial(), HeightNorm::Sup).unwrap();
        assert!((g.polar - h.polar).abs() < 1e-9);
    }

    #[test]
    fn scaling() {
        let phi = PlaneTestFunction::general(|a, b| (-PI * (a * a + 2.0 * b * b) - 0.5 * a * b).exp());
        let base = log_height_term(&phi, HeightNorm::Euclidean).unwrap();
        assert!(base.discrepancy() < 1e-8, "{base:?}");
        let m = mass(&phi);
        for c in [0.5, 3.0] {
            let h = log_height_term(&phi.scaled(c), HeightNorm::Euclidean).unwrap();
            let expect = c * c * (base.value() + c.ln() * m);
            assert!((h.value() - expect).abs() < 1e-8, "c = {c}");
        }
    }

    #[test]
    fn rejects_slow_decay() {
        let phi = PlaneTestFunction::radial(|r| 1.0 / (1.0 + r * r));
        assert!(matches!(log_height_term(&phi, HeightNorm::Euclidean), Err(Error::NonIntegrable(_))));
        let nan = PlaneTestFunction::radial(|_| f64::NAN);
        assert!(log_height_term(&nan, HeightNorm::Euclidean).is_err());
        assert_eq!("sup".parse::<HeightNorm>().unwrap(), HeightNorm::Sup);
    }
}
