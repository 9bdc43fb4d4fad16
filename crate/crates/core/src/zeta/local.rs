//! Local factors: the Σ₁ geometric factor, its archimedean twin for the
//! Gaussian, and p-adic densities of the discriminant valuation.
//!
//! Densities are counted exactly by a stratified Hensel recursion. A residue
//! class `a + p^s·Z_p⁴` is described by the shifted polynomial
//! `Q(y) = P(a + p^s y)` reduced mod `p^K`. After stripping the content `p^c`,
//! two cases close immediately:
//!
//! * `Q/p^c` is a unit constant mod p, so every point has valuation `c`;
//! * some variable enters `Q/p^c` linearly with a unit coefficient and in no
//!   higher monomial mod p, so `Q/p^c` is equidistributed mod `p^{K−c}` on the
//!   class and the valuation law is geometric.
//!
//! Everything else splits into p⁴ subclasses. Classes divisible by p reuse
//! the table one level down, since `P` is homogeneous of degree 4.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::is_prime;
use crate::quadrature;

/// Partial Euler factor `Σ_{n=0}^{K} p^{−ns}`.
pub fn sigma1_factor(p: u64, s: f64, k: u32) -> Result<f64> {
    check_s(s)?;
    if !is_prime(p) {
        return Err(Error::ModulusNotPrime(p));
    }
    if k == 0 {
        return Err(Error::OutOfRange(0.0, "truncation level K must be at least 1"));
    }
    let r = (p as f64).powf(-s);
    Ok((0..=k).map(|n| r.powi(n as i32)).sum())
}

/// `(1 − p^{−s})^{−1}`.
pub fn sigma1_closed(p: u64, s: f64) -> f64 {
    1.0 / (1.0 - (p as f64).powf(-s))
}

/// Bound on `closed − partial`: `p^{−(K+1)s}/(1 − p^{−s})`.
pub fn sigma1_tail_bound(p: u64, s: f64, k: u32) -> f64 {
    (p as f64).powf(-((k + 1) as f64) * s) * sigma1_closed(p, s)
}

fn check_s(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange(s, "s must be positive"))
    }
}

/// Two evaluations of `2∫_0^∞ a^s e^{−πa²} d^×a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArchFactor {
    pub exp_sinh: f64,
    pub log_trapezoid: f64,
}

impl ArchFactor {
    pub fn value(&self) -> f64 {
        self.exp_sinh
    }

    pub fn discrepancy(&self) -> f64 {
        (self.exp_sinh - self.log_trapezoid).abs()
    }
}

pub fn sigma1_arch(s: f64) -> Result<ArchFactor> {
    check_s(s)?;
    let pi = std::f64::consts::PI;
    let g = |a: f64| 2.0 * (s * a.ln() - pi * a * a).exp();
    let es = quadrature::exp_sinh(&|a: f64| g(a) / a, 0.0, 1e-12);
    // g(e^x) decays like e^{sx} on the left and doubly exponentially on the right
    let lo = -(40.0 / s).max(5.0);
    let lt = quadrature::log_trapezoid(&g, lo, 4.0, 1.0 / 64.0);
    Ok(ArchFactor { exp_sinh: es, log_trapezoid: lt })
}

/// How a [`LocalDensityTable`] was produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum DensityMode {
    Stratified,
    Exhaustive,
    /// `counts` are sample hits; `std_err[j]` is the binomial standard error.
    Sampled { samples: u64, std_err: Vec<f64> },
}

/// `counts[j]` for `j < k` is `#{x mod p^k : v_p(P(x)) = j}`; `counts[k]` is
/// the tail `v_p(P(x)) ≥ k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalDensityTable {
    pub p: u64,
    pub k: u32,
    pub counts: Vec<u128>,
    pub mode: DensityMode,
}

impl LocalDensityTable {
    pub fn total(&self) -> u128 {
        match self.mode {
            DensityMode::Sampled { samples, .. } => samples as u128,
            _ => (self.p as u128).pow(4 * self.k),
        }
    }

    pub fn densities(&self) -> Vec<BigRational> {
        let den = BigInt::from(self.total());
        self.counts.iter().map(|&c| BigRational::new(BigInt::from(c), den.clone())).collect()
    }

    pub fn density(&self, j: usize) -> BigRational {
        self.densities()[j].clone()
    }

    pub fn tail(&self) -> BigRational {
        self.density(self.k as usize)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.mode, DensityMode::Sampled { .. })
    }

    /// `p,k,j,count,density_num,density_den`; the last row has `j = k` and
    /// holds the tail.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,k,j,count,density_num,density_den\n");
        for (j, d) in self.densities().iter().enumerate() {
            out.push_str(&format!("{},{},{},{},{},{}\n", self.p, self.k, j, self.counts[j], d.numer(), d.denom()));
        }
        out
    }
}

/// Work limits for [`local_disc_densities`].
#[derive(Debug, Clone, Copy)]
pub struct DensityGuard {
    /// Maximum recursion nodes for the stratified count.
    pub max_nodes: u64,
    /// Samples drawn when the guard trips.
    pub samples: u64,
    pub seed: u64,
}

impl Default for DensityGuard {
    fn default() -> Self {
        DensityGuard { max_nodes: 50_000_000, samples: 2_000_000, seed: 0 }
    }
}

pub fn local_disc_densities(p: u64, k: u32) -> Result<LocalDensityTable> {
    local_disc_densities_guarded(p, k, DensityGuard::default())
}

pub fn local_disc_densities_guarded(p: u64, k: u32, guard: DensityGuard) -> Result<LocalDensityTable> {
    check_level(p, k)?;
    let mut memo = HashMap::new();
    match stratified(p, k, guard.max_nodes, &mut memo) {
        Some(counts) => Ok(LocalDensityTable { p, k, counts, mode: DensityMode::Stratified }),
        None => sampled(p, k, guard.samples, guard.seed),
    }
}

fn check_level(p: u64, k: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::ModulusNotPrime(p));
    }
    if k == 0 {
        return Err(Error::OutOfRange(0.0, "level k must be at least 1"));
    }
    // p^{4k} must fit in u128 and p^k·p^k in u64
    if (k as f64) * (p as f64).log2() > 31.0 {
        return Err(Error::ResourceGuard(format!("p^k too large for p = {p}, k = {k}")));
    }
    Ok(())
}

/// `v_p(P(x))` capped at `k`, for `x` reduced mod `p^k`.
pub fn disc_valuation(x: [u64; 4], p: u64, k: u32) -> u32 {
    let m = p.pow(k) as i128;
    let [a, b, c, d] = x.map(|v| v as i128 % m);
    let r = |v: i128| v.rem_euclid(m);
    let t = [
        r(r(b * b) * r(c * c)),
        r(18 * r(a * b) % m * r(c * d)),
        r(-4 * r(b * b) % m * r(b * d)),
        r(-4 * r(a * c) % m * r(c * c)),
        r(-27 * r(a * a) % m * r(d * d)),
    ];
    let v = t.iter().fold(0i128, |acc, &x| r(acc + x)) as u64;
    valuation_capped(v, p, k)
}

fn valuation_capped(mut v: u64, p: u64, k: u32) -> u32 {
    if v == 0 {
        return k;
    }
    let mut j = 0;
    while v % p == 0 && j < k {
        v /= p;
        j += 1;
    }
    j
}

/// Exhaustive oracle over all `p^{4k}` points; refuses more than `limit`.
pub fn exhaustive_densities(p: u64, k: u32, limit: u64) -> Result<LocalDensityTable> {
    check_level(p, k)?;
    let m = p.pow(k);
    let n = (m as u128).pow(4);
    if n > limit as u128 {
        return Err(Error::ResourceGuard(format!("{n} points exceed the limit {limit}")));
    }
    let counts = (0..m)
        .into_par_iter()
        .map(|a| {
            let mut c = vec![0u128; k as usize + 1];
            for b in 0..m {
                for cc in 0..m {
                    for d in 0..m {
                        c[disc_valuation([a, b, cc, d], p, k) as usize] += 1;
                    }
                }
            }
            c
        })
        .reduce(|| vec![0u128; k as usize + 1], add_counts);
    Ok(LocalDensityTable { p, k, counts, mode: DensityMode::Exhaustive })
}

fn add_counts(mut a: Vec<u128>, b: Vec<u128>) -> Vec<u128> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn sampled(p: u64, k: u32, samples: u64, seed: u64) -> Result<LocalDensityTable> {
    use rand::SeedableRng;
    let m = p.pow(k);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u128; k as usize + 1];
    for _ in 0..samples {
        let x = [0; 4].map(|_: u64| rng.gen_range(0..m));
        counts[disc_valuation(x, p, k) as usize] += 1;
    }
    let n = samples as f64;
    let std_err = counts
        .iter()
        .map(|&c| {
            let q = c as f64 / n;
            (q * (1.0 - q) / n).sqrt()
        })
        .collect();
    Ok(LocalDensityTable { p, k, counts, mode: DensityMode::Sampled { samples, std_err } })
}

// Dense polynomials in y1..y4 of total degree ≤ 4, indexed by exponent
// vectors e ∈ [0,4]⁴ as e1 + 5e2 + 25e3 + 125e4.
const DIM: usize = 625;

#[derive(Clone)]
struct Poly {
    c: Vec<u64>,
}

fn exps(i: usize) -> [usize; 4] {
    [i % 5, i / 5 % 5, i / 25 % 5, i / 125]
}

fn idx(e: [usize; 4]) -> usize {
    e[0] + 5 * e[1] + 25 * e[2] + 125 * e[3]
}

const BINOM: [[u64; 5]; 5] = [[1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [1, 2, 1, 0, 0], [1, 3, 3, 1, 0], [1, 4, 6, 4, 1]];

impl Poly {
    /// The discriminant in `x1..x4`, mod `m`.
    fn discriminant(m: u64) -> Poly {
        let mut c = vec![0u64; DIM];
        let mut put = |e: [usize; 4], v: i64| c[idx(e)] = v.rem_euclid(m as i64) as u64;
        put([0, 2, 2, 0], 1);
        put([1, 1, 1, 1], 18);
        put([0, 3, 0, 1], -4);
        put([1, 0, 3, 0], -4);
        put([2, 0, 0, 2], -27);
        Poly { c }
    }

    /// `y_i ↦ b + q·y_i` mod `m`.
    fn shift(&self, i: usize, b: u64, q: u64, m: u64) -> Poly {
        let mut out = vec![0u64; DIM];
        let mut bp = [1u64; 5];
        let mut qp = [1u64; 5];
        for t in 1..5 {
            bp[t] = bp[t - 1] * (b % m) % m;
            qp[t] = qp[t - 1] * (q % m) % m;
        }
        for (j, &v) in self.c.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let e = exps(j);
            let f = e[i];
            for g in 0..=f {
                let mut e2 = e;
                e2[i] = g;
                let w = BINOM[f][g] * bp[f - g] % m * qp[g] % m;
                let t = &mut out[idx(e2)];
                *t = (*t + v * w % m) % m;
            }
        }
        Poly { c: out }
    }

    /// Minimum p-adic valuation of the coefficients (capped at `k`).
    fn content(&self, p: u64, k: u32) -> u32 {
        self.c.iter().map(|&v| valuation_capped(v, p, k)).min().unwrap_or(k)
    }

    fn divide(&self, d: u64) -> Poly {
        Poly { c: self.c.iter().map(|&v| v / d).collect() }
    }

    fn reduce(&self, m: u64) -> Poly {
        Poly { c: self.c.iter().map(|&v| v % m).collect() }
    }
}

impl Poly {
    /// Drops every monomial containing `y_i`, i.e. sets `y_i = 0`.
    fn kill(&mut self, i: usize) {
        for (j, v) in self.c.iter_mut().enumerate() {
            if exps(j)[i] > 0 {
                *v = 0;
            }
        }
    }

    /// Variables occurring in a monomial with a unit coefficient.
    fn live_mod_p(&self, p: u64) -> [bool; 4] {
        let mut live = [false; 4];
        for (j, &v) in self.c.iter().enumerate() {
            if v % p != 0 {
                for (i, &e) in exps(j).iter().enumerate() {
                    live[i] |= e > 0;
                }
            }
        }
        live
    }
}

/// One residue class: `Q(y)` known mod `p^kk`, whose value mod `p^kk`
/// depends only on `y_i mod p^{r_i}`. The valuation of the original
/// discriminant on the class is `offset + v_p(Q(y))`.
struct Ctx<'a> {
    p: u64,
    cap: u32,
    nodes: u64,
    max_nodes: u64,
    counts: &'a mut Vec<u128>,
}

impl Ctx<'_> {
    fn add(&mut self, j: u32, n: u128) {
        let j = j.min(self.cap) as usize;
        self.counts[j] += n;
    }

    fn visit(&mut self, mut q: Poly, kk: u32, r: [u32; 4], offset: u32) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return false;
        }
        let p = self.p;
        let class = (p as u128).pow(r.iter().sum());
        for i in 0..4 {
            if r[i] == 0 {
                q.kill(i);
            }
        }
        if kk == 0 {
            self.add(offset, class);
            return true;
        }
        let c = q.content(p, kk);
        if c >= kk {
            self.add(offset + kk, class);
            return true;
        }
        let (q, kk, offset) = if c > 0 {
            (q.divide(p.pow(c)).reduce(p.pow(kk - c)), kk - c, offset + c)
        } else {
            (q, kk, offset)
        };
        let live = q.live_mod_p(p);
        if q.c[0] % p != 0 && live == [false; 4] {
            self.add(offset, class);
            return true;
        }
        if self.linear_unit(&q) {
            // equidistributed mod p^kk: mass (1 − 1/p)p^{−j} at j < kk
            let pu = p as u128;
            let mut rest = class;
            for j in 0..kk {
                let n = rest / pu * (pu - 1);
                self.add(offset + j, n);
                rest -= n;
            }
            self.add(offset + kk, rest);
            return true;
        }
        // split along one variable that matters mod p
        let i = (0..4).find(|&i| live[i]).expect("unit coefficient after stripping content");
        let m = p.pow(kk);
        let mut child_r = r;
        child_r[i] -= 1;
        for b in 0..p {
            if !self.visit(q.shift(i, b, p, m), kk, child_r, offset) {
                return false;
            }
        }
        true
    }

    /// Some y_i has a unit linear coefficient and occurs in no other monomial
    /// with a unit coefficient.
    fn linear_unit(&self, q: &Poly) -> bool {
        let p = self.p;
        (0..4).any(|i| {
            let mut e = [0; 4];
            e[i] = 1;
            q.c[idx(e)] % p != 0
                && q.c.iter().enumerate().all(|(j, &v)| j == idx(e) || exps(j)[i] == 0 || v % p == 0)
        })
    }
}

/// Exact counts by the stratified recursion; `None` when the node budget
/// is exhausted.
fn stratified(p: u64, k: u32, max_nodes: u64, memo: &mut HashMap<u32, Vec<u128>>) -> Option<Vec<u128>> {
    if let Some(c) = memo.get(&k) {
        return Some(c.clone());
    }
    let m = p.pow(k);
    let base = Poly::discriminant(m);
    let mut counts = vec![0u128; k as usize + 1];
    // x ≡ 0 mod p: x = p·x' with x' mod p^{k−1}, valuation 4 + v(x')
    if k == 1 {
        counts[1] += 1;
    } else {
        let lower = stratified(p, k - 1, max_nodes, memo)?;
        for (j, n) in lower.into_iter().enumerate() {
            // the tail of level k−1 stays in the tail of level k
            let v = if j == (k - 1) as usize { k as usize } else { (j + 4).min(k as usize) };
            counts[v] += n;
        }
    }
    let leaves: Vec<u64> = (1..p.pow(4)).collect();
    let per_leaf: Vec<Option<Vec<u128>>> = leaves
        .par_iter()
        .map(|&b| {
            let mut s = base.clone();
            let mut bb = b;
            for i in 0..4 {
                s = s.shift(i, bb % p, p, m);
                bb /= p;
            }
            let mut local = vec![0u128; k as usize + 1];
            let mut ctx = Ctx { p, cap: k, nodes: 0, max_nodes, counts: &mut local };
            ctx.visit(s, k, [k - 1; 4], 0).then_some(local)
        })
        .collect();
    for c in per_leaf {
        counts = add_counts(counts, c?);
    }
    memo.insert(k, counts.clone());
    Some(counts)
}

/// `Σ_j d_j = 1` as an exact rational identity.
pub fn partition_holds(t: &LocalDensityTable) -> bool {
    t.densities().into_iter().fold(BigRational::zero(), |a, b| a + b) == BigRational::one()
}
