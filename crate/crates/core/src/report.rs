//! Verification suites and their machine-readable reports.
//!
//! Every check yields a [`CheckRecord`] with a residual and a tolerance; a
//! check passes iff `residual ≤ tolerance`. Exact checks count mismatches and
//! carry tolerance 0. Reports contain no timestamps and are assembled in a
//! fixed order, so a fixed seed and version give byte-identical output.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::enumeration::{class_table, ClassTable, Strategy};
use crate::error::{Error, Result};
use crate::finite::{self, identities, FiniteModelFunction};
use crate::forms::reduce::canonical_int;
use crate::forms::{self, act, discriminant, hessian, iota, pairing, BinaryCubicForm, GL2Elt, IntForm, IntMat, OrbitClass, Q};
use crate::g2::{self, TruncationParam};
use crate::zeta::height::{log_height_term, HeightNorm, PlaneTestFunction};
use crate::zeta::local::{local_disc_densities, partition_holds, sigma1_arch, sigma1_closed, sigma1_factor, sigma1_tail_bound};
use crate::zeta::principal::{
    pole_set, pole_terms, poles, regular_part_at_2, residue_limit_sequence, residues, richardson_limit, t2_integral,
    theorem_rhs, tilde_z_principal, with_bookkeeping,
};
use crate::zeta::FunctionalBundle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    G2,
    Forms,
    Finite,
    Classes,
    Zeta,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::G2, Suite::Forms, Suite::Finite, Suite::Classes, Suite::Zeta];

    fn salt(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::G2 => "g2",
            Suite::Forms => "forms",
            Suite::Finite => "finite",
            Suite::Classes => "classes",
            Suite::Zeta => "zeta",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// Parses `g2`, `zeta`, ..., or `all`.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if t == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(t.parse()?);
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::Config("no suite selected".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    /// Moduli for the seeded floating finite-model checks.
    pub moduli: Vec<u64>,
    /// Prime for the exhaustive exact finite-model checks.
    pub exact_modulus: Option<u64>,
    pub random_functions: usize,
    pub rational_instances: usize,
    pub max_disc: u64,
    pub twists: usize,
    pub sl2: bool,
    pub primes: Vec<u64>,
    pub max_level: u32,
    /// Tolerance of floating identity checks.
    pub tolerance: f64,
    /// Tolerance of cross-quadrature checks.
    pub quad_tolerance: f64,
    pub seed: u64,
    pub height_norm: HeightNorm,
    pub bundle: Option<PathBuf>,
    pub report_out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Suite::ALL.to_vec(),
            moduli: vec![5, 7, 11],
            exact_modulus: Some(5),
            random_functions: 100,
            rational_instances: 1000,
            max_disc: 300,
            twists: 20,
            sl2: false,
            primes: vec![2, 5, 7],
            max_level: 4,
            tolerance: 1e-9,
            quad_tolerance: 1e-8,
            seed: 20240607,
            height_norm: HeightNorm::Euclidean,
            bundle: None,
            report_out: None,
        }
    }
}

fn list<T: FromStr>(v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Config(format!("bad list entry `{t}`"))))
        .collect()
}

fn scalar<T: FromStr>(k: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("bad value `{v}` for `{k}`")))
}

impl SuiteConfig {
    /// Flat `key = value` text; `#` starts a comment. Unknown keys are errors.
    pub fn parse(text: &str) -> Result<SuiteConfig> {
        let mut c = SuiteConfig::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            c.set(k.trim(), v.trim())?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn set(&mut self, k: &str, v: &str) -> Result<()> {
        match k {
            "suites" | "suite" => self.suites = parse_suites(v)?,
            "moduli" => self.moduli = list(v)?,
            "exact_modulus" => self.exact_modulus = if v == "none" { None } else { Some(scalar(k, v)?) },
            "random_functions" => self.random_functions = scalar(k, v)?,
            "rational_instances" => self.rational_instances = scalar(k, v)?,
            "max_disc" => self.max_disc = scalar(k, v)?,
            "twists" => self.twists = scalar(k, v)?,
            "sl2" => self.sl2 = scalar(k, v)?,
            "primes" => self.primes = list(v)?,
            "max_level" => self.max_level = scalar(k, v)?,
            "tolerance" => self.tolerance = scalar(k, v)?,
            "quad_tolerance" => self.quad_tolerance = scalar(k, v)?,
            "seed" => self.seed = scalar(k, v)?,
            "height_norm" => self.height_norm = v.parse()?,
            "bundle" => self.bundle = Some(PathBuf::from(v)),
            "report" | "report_out" => self.report_out = Some(PathBuf::from(v)),
            _ => return Err(Error::Config(format!("unknown key `{k}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for (t, name) in [(self.tolerance, "tolerance"), (self.quad_tolerance, "quad_tolerance")] {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("{name} must be a finite non-negative number")));
            }
        }
        for &n in self.moduli.iter().chain(&self.exact_modulus) {
            if !finite::is_prime(n) || n % 3 == 0 {
                return Err(Error::Config(format!("modulus {n} must be a prime other than 3")));
            }
            if n > 31 {
                return Err(Error::ResourceGuard(format!("modulus {n} exceeds 31")));
            }
        }
        if self.max_disc == 0 || self.max_disc > 20_000 {
            return Err(Error::ResourceGuard(format!("max_disc {} outside 1..=20000", self.max_disc)));
        }
        if self.random_functions > 10_000 || self.rational_instances > 1_000_000 || self.twists > 1000 {
            return Err(Error::ResourceGuard("sample counts too large".into()));
        }
        for &p in &self.primes {
            if !finite::is_prime(p) {
                return Err(Error::Config(format!("{p} is not prime")));
            }
        }
        if self.max_level == 0 || self.max_level > 8 {
            return Err(Error::ResourceGuard(format!("max_level {} outside 1..=8", self.max_level)));
        }
        Ok(())
    }

    /// Key/value echo embedded in reports.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let mut m = BTreeMap::new();
        m.insert("suites".into(), self.suites.iter().map(Suite::to_string).collect::<Vec<_>>().join(","));
        m.insert("moduli".into(), join(&self.moduli));
        m.insert("exact_modulus".into(), self.exact_modulus.map_or("none".into(), |n| n.to_string()));
        m.insert("random_functions".into(), self.random_functions.to_string());
        m.insert("rational_instances".into(), self.rational_instances.to_string());
        m.insert("max_disc".into(), self.max_disc.to_string());
        m.insert("twists".into(), self.twists.to_string());
        m.insert("sl2".into(), self.sl2.to_string());
        m.insert("primes".into(), join(&self.primes));
        m.insert("max_level".into(), self.max_level.to_string());
        m.insert("tolerance".into(), format!("{:e}", self.tolerance));
        m.insert("quad_tolerance".into(), format!("{:e}", self.quad_tolerance));
        m.insert("height_norm".into(), self.height_norm.to_string());
        if let Some(b) = &self.bundle {
            m.insert("bundle".into(), b.display().to_string());
        }
        m
    }
}

/// Anchor registry: check family → what the check pins down.
pub const ANCHORS: &[(&str, &str)] = &[
    ("g2.jacobi", "Chevalley basis of g2: Jacobi identity on all basis triples"),
    ("g2.grading", "Chevalley basis of g2: [g_a, g_b] in g_(a+b), Cartan acts by coroot pairings"),
    ("g2.levi_action", "Levi of the second maximal parabolic acting on V as GL2 twisted by det on binary cubics"),
    ("g2.weight_spectrum", "ad of the first simple coroot on V has weights -3, -1, 1, 3"),
    ("g2.truncation_residual", "truncation difference integral equals T1 - log a"),
    ("forms.discriminant_covariance", "P(x.l) = det(l)^-2 P(x) for the twisted action"),
    ("forms.pairing_equivariance", "[x.l, y.l^iota] = [x, y] for the alternating pairing"),
    ("forms.hessian_relation", "discriminant of the Hessian covariant equals -3 P(f)"),
    ("forms.classification", "orbit type equals factorization type over Q"),
    ("forms.witnesses", "orbit witnesses for S1, S2 and splitting indices 3, 2, 1"),
    ("finite.fourier_involution", "finite Fourier transform with the pairing character is an involution"),
    ("finite.plancherel", "Plancherel for the normalized finite transform"),
    ("finite.partial_transforms", "partial transforms in x4 and (x3, x4): inverses and nesting"),
    ("finite.poisson_rearrangement", "Poisson summation and the orbit rearrangement of the lattice sum"),
    ("finite.remarkable_equality", "partial (3,4) transform at 0 agrees for phi and its Fourier transform"),
    ("finite.slice_identity", "x3-slice of the transformed function against the x2-slice of phi"),
    ("finite.fourier_covariance", "Fourier transform of l.phi is phi-hat at y.l^iota"),
    ("finite.mean_value", "finite mean value formula on the plane"),
    ("classes.strategies_agree", "box oracle and reduction give the same class set"),
    ("classes.witnesses", "discriminants 1, -23, -27 are represented"),
    ("classes.twist_invariance", "canonical representatives are fixed under unimodular twists"),
    ("classes.roundtrip", "CSV and JSON exports re-import to the same table"),
    ("zeta.residues", "residues of the principal part at 0, 1/3, 5/3, 2 equal the template coefficients"),
    ("zeta.pole_set", "a generic bundle has poles exactly at 0, 1/3, 5/3, 2"),
    ("zeta.residue_limit", "(s-2) times the principal part tends to the residue at 2"),
    ("zeta.truncated", "truncated variant at s = 2: T2 term equals T2, affine in T1"),
    ("zeta.theorem_rhs", "right-hand side template equals the truncated variant at s = 2 under the bookkeeping"),
    ("zeta.final_term", "final term by quadrature of the truncation difference"),
    ("zeta.sigma1", "local Tate factor against its closed form within the geometric tail"),
    ("zeta.sigma1_arch", "archimedean Tate factor of the Gaussian by two quadratures"),
    ("zeta.densities", "discriminant valuation densities: partition and stabilization"),
    ("zeta.height", "log-height term by polar and cartesian quadrature"),
    ("zeta.bundle", "residues of a user-supplied bundle"),
];

pub fn anchor(family: &str) -> &'static str {
    ANCHORS
        .iter()
        .find(|(k, _)| *k == family)
        .map(|(_, v)| *v)
        .unwrap_or("unregistered")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub anchor: String,
    pub inputs_digest: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// `family` selects the anchor; `id` refines it; `inputs` is hashed.
    pub fn new(family: &str, id: &str, inputs: &str, residual: f64, tolerance: f64) -> CheckRecord {
        let digest = Sha256::digest(format!("{family}|{id}|{inputs}").as_bytes());
        let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        CheckRecord {
            check_id: if id.is_empty() { family.to_string() } else { format!("{family}.{id}") },
            anchor: anchor(family).to_string(),
            inputs_digest: hex,
            residual,
            tolerance,
            // NaN never passes
            pass: residual <= tolerance,
        }
    }

    fn exact(family: &str, id: &str, inputs: &str, mismatches: usize) -> CheckRecord {
        CheckRecord::new(family, id, inputs, mismatches as f64, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub rng: String,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {:<48} residual {:.3e} (tol {:.1e})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.check_id,
                c.residual,
                c.tolerance
            ));
        }
        s.push_str(&format!("{} checks, {} passed, {} failed\n", self.summary.total, self.summary.passed, self.summary.failed));
        s
    }
}

/// The seeded generator of one suite.
pub fn suite_rng(seed: u64, suite: Suite) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ suite.salt().wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Runs the selected suites concurrently and merges in suite order. The
/// report is also written to `cfg.report_out` when set.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let bundle = match &cfg.bundle {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            Some(FunctionalBundle::parse(&text)?)
        }
        None => None,
    };
    let parts: Vec<Result<Vec<CheckRecord>>> = cfg
        .suites
        .par_iter()
        .map(|&s| {
            let mut rng = suite_rng(cfg.seed, s);
            match s {
                Suite::G2 => g2_checks(cfg),
                Suite::Forms => forms_checks(cfg, &mut rng),
                Suite::Finite => finite_checks(cfg, &mut rng),
                Suite::Classes => classes_checks(cfg, &mut rng),
                Suite::Zeta => zeta_checks(cfg, bundle.as_ref(), &mut rng),
            }
        })
        .collect();
    let mut checks = Vec::new();
    for p in parts {
        checks.extend(p?);
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let report = VerificationReport {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.seed,
        rng: "ChaCha8, seeded per suite from seed".to_string(),
        config: cfg.echo(),
        summary: Summary { total: checks.len(), passed, failed: checks.len() - passed },
        checks,
    };
    if let Some(path) = &cfg.report_out {
        crate::enumeration::write_atomic(path, report.to_json()?.as_bytes())?;
    }
    Ok(report)
}

pub fn g2_checks(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let t = g2::build_chevalley_table();
    let mut out = vec![
        CheckRecord::exact("g2.jacobi", "", "14^3 basis triples", g2::jacobi_violations(t).len()),
        CheckRecord::exact("g2.grading", "", "14^2 basis pairs", g2::grading_violations(t).len()),
        CheckRecord::exact("g2.levi_action", "", "4 Levi basis elements", forms::levi_mismatches()),
    ];
    let spec = g2::v_weight_spectrum();
    out.push(CheckRecord::exact(
        "g2.weight_spectrum",
        "",
        &format!("{spec:?}"),
        usize::from(spec != vec![-3, -1, 1, 3]),
    ));
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let a = 10f64.powf(-3.0 + 6.0 * i as f64 / 19.0);
        for j in 0..20 {
            let t1 = -5.0 + 10.0 * j as f64 / 19.0;
            worst = worst.max((g2::truncation_residual(a, t1) - g2::truncation_residual_closed(a, t1)).abs());
        }
    }
    out.push(CheckRecord::new("g2.truncation_residual", "", "20x20 grid a in [1e-3,1e3], T1 in [-5,5]", worst, cfg.tolerance));
    Ok(out)
}

fn random_q<R: Rng>(rng: &mut R) -> Q {
    Q::new(rng.gen_range(-20i64..=20).into(), rng.gen_range(1i64..=6).into())
}

/// Random rational form and random invertible rational matrix.
pub fn random_rational_form<R: Rng>(rng: &mut R) -> BinaryCubicForm {
    BinaryCubicForm::new(std::array::from_fn(|_| random_q(rng)))
}

pub fn random_gl2<R: Rng>(rng: &mut R) -> GL2Elt {
    loop {
        if let Ok(l) = GL2Elt::new(std::array::from_fn(|_| std::array::from_fn(|_| random_q(rng)))) {
            return l;
        }
    }
}

/// Orbit type of an integral form from its rational roots, found by
/// enumerating projective points `(r : s)` with `|r|, |s| ≤ bound`, and their
/// multiplicities from partial derivatives. Valid when `bound` dominates
/// every coefficient.
pub fn brute_force_orbit(c: [i64; 4], bound: i64) -> OrbitClass {
    if c == [0; 4] {
        return OrbitClass::S0;
    }
    let [a, b, cc, d] = c;
    let f = |u: i64, v: i64| a * u * u * u + b * u * u * v + cc * u * v * v + d * v * v * v;
    let fu = |u: i64, v: i64| 3 * a * u * u + 2 * b * u * v + cc * v * v;
    let fv = |u: i64, v: i64| b * u * u + 2 * cc * u * v + 3 * d * v * v;
    let fuu = |u: i64, v: i64| 6 * a * u + 2 * b * v;
    let fuv = |u: i64, v: i64| 2 * b * u + 2 * cc * v;
    let fvv = |u: i64, v: i64| 2 * cc * u + 6 * d * v;
    let mut roots = 0;
    for s in 0..=bound {
        for r in -bound..=bound {
            let canonical = if s == 0 { r == 1 } else { num_integer::gcd(r, s) == 1 };
            if !canonical || f(r, s) != 0 {
                continue;
            }
            roots += 1;
            if fu(r, s) == 0 && fv(r, s) == 0 {
                return if fuu(r, s) == 0 && fuv(r, s) == 0 && fvv(r, s) == 0 {
                    OrbitClass::S1
                } else {
                    OrbitClass::S2
                };
            }
        }
    }
    match roots {
        0 => OrbitClass::Regular(3),
        1 => OrbitClass::Regular(2),
        _ => OrbitClass::Regular(1),
    }
}

pub const ORBIT_WITNESSES: [([i64; 4], OrbitClass); 5] = [
    ([0, 0, 0, 5], OrbitClass::S1),
    ([0, 0, 1, 2], OrbitClass::S2),
    ([1, 0, -1, -1], OrbitClass::Regular(3)),
    ([1, 0, 0, 1], OrbitClass::Regular(2)),
    ([0, 1, 1, 0], OrbitClass::Regular(1)),
];

pub fn forms_checks<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> Result<Vec<CheckRecord>> {
    let n = cfg.rational_instances;
    let (mut disc_bad, mut pair_bad, mut hess_bad) = (0, 0, 0);
    for _ in 0..n {
        let x = random_rational_form(rng);
        let y = random_rational_form(rng);
        let l = random_gl2(rng);
        let det = l.det();
        let det2 = &det * &det;
        if discriminant(&act(&x, &l)) * &det2 != discriminant(&x) {
            disc_bad += 1;
        }
        if pairing(&act(&x, &l), &act(&y, &iota(&l))) != pairing(&x, &y) {
            pair_bad += 1;
        }
        if hessian(&x).disc() != -Q::from_integer(3.into()) * discriminant(&x) {
            hess_bad += 1;
        }
    }
    let inputs = format!("{n} random rational instances");
    let mut out = vec![
        CheckRecord::exact("forms.discriminant_covariance", "", &inputs, disc_bad),
        CheckRecord::exact("forms.pairing_equivariance", "", &inputs, pair_bad),
        CheckRecord::exact("forms.hessian_relation", "", &inputs, hess_bad),
    ];
    let mut class_bad = 0;
    for i in 0..7i64.pow(4) {
        let c: [i64; 4] = std::array::from_fn(|k| (i / 7i64.pow(k as u32)) % 7 - 3);
        if forms::classify_orbit(&BinaryCubicForm::from_ints(c)) != brute_force_orbit(c, 3) {
            class_bad += 1;
        }
    }
    out.push(CheckRecord::exact("forms.classification", "", "all 2401 forms in [-3,3]^4", class_bad));
    let wit_bad = ORBIT_WITNESSES
        .iter()
        .filter(|(c, o)| forms::classify_orbit(&BinaryCubicForm::from_ints(*c)) != *o)
        .count();
    out.push(CheckRecord::exact("forms.witnesses", "", "5 witnesses", wit_bad));
    Ok(out)
}

pub fn finite_checks<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for &n in &cfg.moduli {
        for r in identities::random_suite(n, cfg.random_functions, rng)? {
            out.push(CheckRecord::new(
                &format!("finite.{}", r.identity_name),
                &format!("N{n}"),
                &format!("{} seeded random functions", cfg.random_functions),
                r.max_residual,
                cfg.tolerance,
            ));
        }
    }
    if let Some(p) = cfg.exact_modulus {
        for r in identities::exhaustive_exact(p)? {
            out.push(CheckRecord::new(
                &format!("finite.{}", r.identity_name),
                &format!("exact.N{p}"),
                "all point indicators, cyclotomic arithmetic",
                r.max_residual,
                0.0,
            ));
        }
    }
    Ok(out)
}

/// Random element of GL(2,Z) (or SL(2,Z)) as a word in S, T^{±1} and, for
/// GL, diag(1, −1).
pub fn random_unimodular<R: Rng>(rng: &mut R, sl2: bool) -> IntMat {
    let flip = IntMat([[1, 0], [0, -1]]);
    let mut m = IntMat::IDENTITY;
    for _ in 0..8 {
        let g = match rng.gen_range(0..if sl2 { 3 } else { 4 }) {
            0 => IntMat::S,
            1 => IntMat::translation(1),
            2 => IntMat::translation(-1),
            _ => flip,
        };
        m = m.mul(&g);
    }
    m
}

pub const DISC_WITNESSES: [(i64, [i64; 4]); 3] = [(1, [0, 1, 1, 0]), (-23, [1, 0, -1, -1]), (-27, [1, 0, 0, 1])];

pub fn classes_checks<R: Rng>(cfg: &SuiteConfig, rng: &mut R) -> Result<Vec<CheckRecord>> {
    let x = cfg.max_disc;
    let inputs = format!("X={x} sl2={}", cfg.sl2);
    let boxed = class_table(x, Strategy::BoxOracle, cfg.sl2)?;
    let red = class_table(x, Strategy::Reduction, cfg.sl2)?;
    let diff = boxed.class_set().symmetric_difference(&red.class_set()).count();
    let mut out = vec![CheckRecord::exact("classes.strategies_agree", "", &inputs, diff)];
    let mut missing = 0;
    for (d, f) in DISC_WITNESSES {
        if d.unsigned_abs() > x {
            continue;
        }
        let (canon, _) = canonical_int(&IntForm(f), cfg.sl2)?;
        if !red.records.iter().any(|r| r.disc == d && r.representative == canon) {
            missing += 1;
        }
    }
    out.push(CheckRecord::exact("classes.witnesses", "", &inputs, missing));
    let mut bad = 0;
    for r in &red.records {
        for _ in 0..cfg.twists {
            let m = random_unimodular(rng, cfg.sl2);
            let (canon, _) = canonical_int(&r.representative.act(&m), cfg.sl2)?;
            if canon != r.representative {
                bad += 1;
            }
        }
    }
    out.push(CheckRecord::exact("classes.twist_invariance", "", &format!("{inputs} twists={}", cfg.twists), bad));
    let csv = ClassTable::from_csv(&red.to_csv(), red.bound, red.strategy, red.sl2)?;
    let json = ClassTable::from_json(&red.to_json()?)?;
    out.push(CheckRecord::exact(
        "classes.roundtrip",
        "",
        &inputs,
        usize::from(csv != red) + usize::from(json != red),
    ));
    Ok(out)
}

pub fn zeta_checks<R: Rng>(cfg: &SuiteConfig, bundle: Option<&FunctionalBundle>, rng: &mut R) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let tol = cfg.tolerance;
    let (mut res_bad, mut pole_bad) = (0, 0);
    let (mut lim_err, mut raw_err, mut rate_err): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let (mut trunc_err, mut rhs_err): (f64, f64) = (0.0, 0.0);
    let mut t2_bad = 0;
    for _ in 0..20 {
        let b = FunctionalBundle::random(rng);
        let m = b.vol_m0 / b.c_f;
        let expect = [
            -b.vol_l * b.phi0 - m * b.dbl_phihat,
            -m * b.sigma1_phi / 3.0,
            m * b.sigma1_phihat / 3.0,
            b.vol_l * b.phihat0 + m * b.dbl_phi,
        ];
        res_bad += residues(&b).iter().zip(expect).filter(|(r, e)| r.value != *e).count();
        pole_bad += usize::from(pole_set(&b) != poles().to_vec() || pole_terms(&b).len() != 6);
        let seq = residue_limit_sequence(&b, 6)?;
        let r2 = expect[3];
        lim_err = lim_err.max((richardson_limit(&seq).unwrap_or(f64::NAN) - r2).abs());
        let e5 = (seq[4] - r2).abs();
        let e6 = (seq[5] - r2).abs();
        raw_err = raw_err.max(e6);
        // linear convergence: the error shrinks tenfold per step
        rate_err = rate_err.max(((e5 / e6) / 10.0 - 1.0).abs());
        for t2 in [0.0, 0.5, 3.0] {
            t2_bad += usize::from(t2_integral(2.0, t2) != t2);
        }
        let at = |t1: f64, t2: f64| tilde_z_principal(&b, 2.0, &TruncationParam::new(t1, t2));
        let base = at(0.0, 0.0)?;
        for (t1, t2) in [(1.0, 0.0), (-2.5, 0.0), (0.0, 1.0), (1.5, 2.0)] {
            let pred = base + t1 * m * b.dbl_phi + t2 * b.vol_l * b.phihat0;
            trunc_err = trunc_err.max((at(t1, t2)? - pred).abs());
        }
        let bk = with_bookkeeping(&b);
        for (t1, t2) in [(0.0, 0.0), (1.0, -1.0), (2.5, 0.75)] {
            let t = TruncationParam::new(t1, t2);
            rhs_err = rhs_err.max((theorem_rhs(&bk, &t) - tilde_z_principal(&bk, 2.0, &t)?).abs());
        }
        let _ = regular_part_at_2(&b);
    }
    let inputs = "20 seeded random bundles";
    out.push(CheckRecord::exact("zeta.residues", "", inputs, res_bad));
    out.push(CheckRecord::exact("zeta.pole_set", "", inputs, pole_bad));
    out.push(CheckRecord::new("zeta.residue_limit", "richardson_m6", inputs, lim_err, 1e-6));
    out.push(CheckRecord::new("zeta.residue_limit", "raw_m6", inputs, raw_err, f64::INFINITY));
    out.push(CheckRecord::new("zeta.residue_limit", "rate", inputs, rate_err, 1e-3));
    out.push(CheckRecord::exact("zeta.truncated", "t2_integral", inputs, t2_bad));
    out.push(CheckRecord::new("zeta.truncated", "affine", inputs, trunc_err, tol));
    out.push(CheckRecord::new("zeta.theorem_rhs", "", inputs, rhs_err, tol));

    // final term of the Gaussian profile e^{−πa²}: dbl_phi = 1/(2π), dbl_phi_log = −(γ + log π)/(4π)
    let pi = std::f64::consts::PI;
    let gb = FunctionalBundle {
        dbl_phi: 1.0 / (2.0 * pi),
        dbl_phi_log: -(EULER_GAMMA + pi.ln()) / (4.0 * pi),
        ..Default::default()
    };
    let mut fe: f64 = 0.0;
    for t1 in [-1.0, 0.0, 0.5, 2.0] {
        let q = crate::zeta::principal::final_term_from_profile(1.0, 1.0, &|a: f64| (-pi * a * a).exp(), t1);
        fe = fe.max((q - tilde_z_principal(&gb, 2.0, &TruncationParam::new(t1, 0.0))?).abs());
    }
    out.push(CheckRecord::new("zeta.final_term", "", "gaussian profile", fe, cfg.quad_tolerance));

    let mut tail_excess: f64 = 0.0;
    for &p in &cfg.primes {
        for s in [2.0 / 3.0, 2.0, 3.0] {
            for k in [1, 4, 16] {
                let gap = sigma1_closed(p, s) - sigma1_factor(p, s, k)?;
                let excess = if gap < 0.0 { -gap } else { (gap - sigma1_tail_bound(p, s, k)).max(0.0) };
                tail_excess = tail_excess.max(excess);
            }
        }
    }
    out.push(CheckRecord::new("zeta.sigma1", "", "primes x s in {2/3,2,3} x K in {1,4,16}", tail_excess, tol));
    let mut arch: f64 = 0.0;
    for s in [2.0 / 3.0, 2.0, 3.0] {
        arch = arch.max(sigma1_arch(s)?.discrepancy());
    }
    out.push(CheckRecord::new("zeta.sigma1_arch", "", "s in {2/3,2,3}", arch, cfg.quad_tolerance));

    for &p in &cfg.primes {
        let tables = (1..=cfg.max_level)
            .map(|k| local_disc_densities(p, k))
            .collect::<Result<Vec<_>>>()?;
        let part_bad = tables.iter().filter(|t| !t.is_exact() || !partition_holds(t)).count();
        let mut stab_bad = 0;
        for w in tables.windows(2) {
            let k = w[0].k as usize;
            let upto = k.saturating_sub(1).max(1);
            stab_bad += (0..upto).filter(|&j| w[0].density(j) != w[1].density(j)).count();
        }
        let inputs = format!("p={p} k=1..={}", cfg.max_level);
        out.push(CheckRecord::exact("zeta.densities", &format!("partition.p{p}"), &inputs, part_bad));
        out.push(CheckRecord::exact("zeta.densities", &format!("stabilize.p{p}"), &inputs, stab_bad));
    }

    let h = log_height_term(&PlaneTestFunction::gaussian(), cfg.height_norm)?;
    out.push(CheckRecord::new("zeta.height", "schemes", &format!("gaussian {}", cfg.height_norm), h.discrepancy(), cfg.quad_tolerance));
    if cfg.height_norm == HeightNorm::Euclidean {
        let exact = -(EULER_GAMMA + pi.ln()) / 2.0;
        out.push(CheckRecord::new("zeta.height", "closed_form", "gaussian euclidean", (h.value() - exact).abs(), cfg.quad_tolerance));
    }

    if let Some(b) = bundle {
        let r = residues(b);
        let direct = crate::zeta::principal_part(b, Complex64::new(2.0 + 1e-7, 0.0))? * 1e-7;
        let err = (direct.re - r[3].value).abs();
        let scale = 1e-7 * (1.0 + regular_part_at_2(b).abs()) * 10.0;
        out.push(CheckRecord::new("zeta.bundle", "residue_2", "bundle file", err, scale));
        let finite_ok = r.iter().all(|x| x.value.is_finite()) && !r.iter().all(|x| x.value.is_zero());
        out.push(CheckRecord::exact("zeta.bundle", "nontrivial", "bundle file", usize::from(!finite_ok)));
    }
    Ok(out)
}

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Residue table of a bundle, for the CLI.
pub fn residue_lines(b: &FunctionalBundle) -> Vec<String> {
    residues(b)
        .into_iter()
        // adding 0.0 turns −0 into 0
        .map(|r| format!("{},{}", r.pole, r.value + 0.0))
        .collect()
}

/// Converts a residue value to f64 for display; kept for symmetry with
/// rational pole labels.
pub fn pole_to_f64(p: num_rational::Rational64) -> f64 {
    p.to_f64().unwrap_or(f64::NAN)
}

/// A finite-model function from the seeded generator, for examples.
pub fn sample_finite_function(n: u64, seed: u64) -> Result<FiniteModelFunction<Complex64>> {
    FiniteModelFunction::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let c = SuiteConfig::parse("suites = finite\nmoduli = 5\n# c\ntolerance = 0\nseed = 9\n").unwrap();
        assert_eq!(c.suites, vec![Suite::Finite]);
        assert_eq!(c.moduli, vec![5]);
        assert_eq!(c.tolerance, 0.0);
        assert!(SuiteConfig::parse("moduli = 9").is_err());
        assert!(SuiteConfig::parse("tolerance = -1").is_err());
        assert!(SuiteConfig::parse("max_disc = 10000000").is_err());
        assert!(SuiteConfig::parse("nonsense = 1").is_err());
        assert_eq!(parse_suites("all").unwrap(), Suite::ALL.to_vec());
    }

    #[test]
    fn registry_covers_checks() {
        for (k, v) in ANCHORS {
            assert!(!v.is_empty(), "{k}");
        }
        let r = CheckRecord::new("g2.jacobi", "", "x", 0.0, 0.0);
        assert!(r.pass);
        assert_ne!(r.anchor, "unregistered");
        assert!(!CheckRecord::new("g2.jacobi", "", "x", f64::NAN, 1.0).pass);
    }

    #[test]
    fn brute_force_agrees_on_witnesses() {
        for (c, o) in ORBIT_WITNESSES {
            assert_eq!(brute_force_orbit(c, 3), o);
        }
    }

    #[test]
    fn small_runs_are_deterministic() {
        let cfg = SuiteConfig {
            suites: vec![Suite::G2, Suite::Forms],
            rational_instances: 50,
            ..Default::default()
        };
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert!(a.all_pass(), "{}", a.to_text());
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn zero_tolerance_fails_floating_checks() {
        let cfg = SuiteConfig {
            suites: vec![Suite::Finite],
            moduli: vec![5],
            exact_modulus: Some(5),
            random_functions: 3,
            tolerance: 0.0,
            ..Default::default()
        };
        let r = run_suite(&cfg).unwrap();
        assert!(!r.all_pass());
        assert!(r.checks.iter().filter(|c| c.check_id.contains("exact")).all(|c| c.pass && c.residual == 0.0));
    }
}
