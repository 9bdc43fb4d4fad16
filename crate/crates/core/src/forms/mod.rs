//! Binary cubic forms `x1·u³ + x2·u²v + x3·uv² + x4·v³` with the twisted
//! right action `f·l = det(l)·f((u,v)·l⁻¹)` of GL(2).
//!
//! All arithmetic here is exact. Rational forms use [`BigRational`]; the
//! reduction machinery in [`reduce`] works on machine integers.

pub mod reduce;

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::g2;

pub use reduce::{equivalent, reduce, stabilizer, IntForm, IntMat};

pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Coefficient quadruple (x1, x2, x3, x4).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryCubicForm(pub [Q; 4]);

impl BinaryCubicForm {
    pub fn new(c: [Q; 4]) -> Self {
        BinaryCubicForm(c)
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        BinaryCubicForm(c.map(q))
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 4])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients when the form is integral and fits in i64.
    pub fn to_ints(&self) -> Option<[i64; 4]> {
        let mut out = [0i64; 4];
        for (o, c) in out.iter_mut().zip(&self.0) {
            if !c.is_integer() {
                return None;
            }
            *o = c.to_integer().to_i64()?;
        }
        Some(out)
    }

    pub fn scale(&self, s: &Q) -> Self {
        BinaryCubicForm(self.0.clone().map(|c| c * s))
    }
}

impl fmt::Display for BinaryCubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let err = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| err())?)),
    }
}

impl FromStr for BinaryCubicForm {
    type Err = Error;

    /// `"x1,x2,x3,x4"` with entries `n` or `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected 4 coefficients in `{s}`")));
        }
        let c: Vec<Q> = parts.into_iter().map(parse_q).collect::<Result<_>>()?;
        Ok(BinaryCubicForm([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
    }
}

/// Invertible 2×2 rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GL2Elt([[Q; 2]; 2]);

impl GL2Elt {
    pub fn new(m: [[Q; 2]; 2]) -> Result<Self> {
        let g = GL2Elt(m);
        if g.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(g)
    }

    pub fn from_ints(m: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(m.map(|r| r.map(q)))
    }

    pub fn identity() -> Self {
        GL2Elt([[q(1), q(0)], [q(0), q(1)]])
    }

    pub fn diag(a: Q, d: Q) -> Result<Self> {
        Self::new([[a, q(0)], [q(0), d]])
    }

    pub fn antidiag(b: Q, c: Q) -> Result<Self> {
        Self::new([[q(0), b], [c, q(0)]])
    }

    pub fn scalar(l: Q) -> Result<Self> {
        Self::diag(l.clone(), l)
    }

    pub fn entries(&self) -> &[[Q; 2]; 2] {
        &self.0
    }

    pub fn det(&self) -> Q {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let m = &self.0;
        GL2Elt([
            [&m[1][1] / &d, -&m[0][1] / &d],
            [-&m[1][0] / &d, &m[0][0] / &d],
        ])
    }

    pub fn mul(&self, o: &GL2Elt) -> Self {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        GL2Elt([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().flatten().all(|c| c.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMat> {
        let mut out = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let c = &self.0[i][j];
                if !c.is_integer() {
                    return None;
                }
                out[i][j] = c.to_integer().to_i64()?;
            }
        }
        Some(IntMat(out))
    }
}

impl From<IntMat> for GL2Elt {
    fn from(m: IntMat) -> Self {
        GL2Elt(m.0.map(|r| r.map(q)))
    }
}

impl fmt::Display for GL2Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "{},{};{},{}", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl FromStr for GL2Elt {
    type Err = Error;

    /// `"a,b;c,d"`.
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 2 {
            return Err(Error::Parse(format!("expected `a,b;c,d`, got `{s}`")));
        }
        let mut m: Vec<[Q; 2]> = Vec::new();
        for r in rows {
            let e: Vec<Q> = r.split(',').map(parse_q).collect::<Result<_>>()?;
            if e.len() != 2 {
                return Err(Error::Parse(format!("expected 2 entries in row `{r}`")));
            }
            m.push([e[0].clone(), e[1].clone()]);
        }
        GL2Elt::new([m[0].clone(), m[1].clone()])
    }
}

/// Commutative ring operations used by the coefficient formulas, so they can
/// be evaluated over Q, machine integers, residues or polynomial rings.
pub trait Ring:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>
{
}

fn konst<T: Ring>(n: i32) -> T {
    let one = if n < 0 { T::zero() - T::one() } else { T::one() };
    (0..n.unsigned_abs()).fold(T::zero(), |acc, _| acc + one.clone())
}

/// Substitutes `u → p·u + r·v`, `v → q·u + s·v` into the cubic with the given
/// coefficients (`sub = [[p, q], [r, s]]`, i.e. `(u, v)·sub`).
pub fn substitute<T: Ring>(c: &[T; 4], sub: &[[T; 2]; 2]) -> [T; 4] {
    let lin_u = [sub[0][0].clone(), sub[1][0].clone()]; // p·u + r·v
    let lin_v = [sub[0][1].clone(), sub[1][1].clone()]; // q·u + s·v
    let mul = |a: &[T], b: &[T]| -> Vec<T> {
        let mut out = vec![T::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        out
    };
    let mut out = [T::zero(), T::zero(), T::zero(), T::zero()];
    for (k, ck) in c.iter().enumerate() {
        // u^{3−k} v^k
        let mut poly: Vec<T> = vec![ck.clone()];
        for _ in 0..(3 - k) {
            poly = mul(&poly, &lin_u);
        }
        for _ in 0..k {
            poly = mul(&poly, &lin_v);
        }
        for (o, p) in out.iter_mut().zip(poly) {
            *o = o.clone() + p;
        }
    }
    out
}

/// P(x) = x2²x3² + 18x1x2x3x4 − 4x2³x4 − 4x1x3³ − 27x1²x4².
pub fn discriminant_of<T: Ring>(x: &[T; 4]) -> T {
    let [a, b, c, d] = x.clone();
    let k = konst::<T>;
    b.clone() * b.clone() * c.clone() * c.clone()
        + k(18) * a.clone() * b.clone() * c.clone() * d.clone()
        - k(4) * b.clone() * b.clone() * b.clone() * d.clone()
        - k(4) * a.clone() * c.clone() * c.clone() * c.clone()
        - k(27) * a.clone() * a * d.clone() * d
}

/// Hessian coefficients `(x2² − 3x1x3, x2x3 − 9x1x4, x3² − 3x2x4)`.
pub fn hessian_of<T: Ring>(x: &[T; 4]) -> [T; 3] {
    let [a, b, c, d] = x.clone();
    let k = konst::<T>;
    [
        b.clone() * b.clone() - k(3) * a.clone() * c.clone(),
        b.clone() * c.clone() - k(9) * a * d.clone(),
        c.clone() * c - k(3) * b * d,
    ]
}

/// `3·[x, y] = 3x1·y4 − x2·y3 + x3·y2 − 3x4·y1`.
pub fn pairing3_of<T: Ring>(x: &[T; 4], y: &[T; 4]) -> T {
    let k = konst::<T>;
    k(3) * x[0].clone() * y[3].clone() - x[1].clone() * y[2].clone() + x[2].clone() * y[1].clone()
        - k(3) * x[3].clone() * y[0].clone()
}

pub fn discriminant(f: &BinaryCubicForm) -> Q {
    discriminant_of(&f.0)
}

/// `[x, y] = x1·y4 − x2·y3/3 + x3·y2/3 − x4·y1`.
pub fn pairing(x: &BinaryCubicForm, y: &BinaryCubicForm) -> Q {
    pairing3_of(&x.0, &y.0) / q(3)
}

/// `f·l = det(l)·f((u,v)·l⁻¹)`.
pub fn act(f: &BinaryCubicForm, l: &GL2Elt) -> BinaryCubicForm {
    let det = l.det();
    let inv = l.inverse();
    let c = substitute(&f.0, &inv.0);
    BinaryCubicForm(c.map(|x| x * &det))
}

/// `l^ι = det(l)⁻¹·l`.
pub fn iota(l: &GL2Elt) -> GL2Elt {
    let d = l.det();
    GL2Elt(l.0.clone().map(|r| r.map(|x| x / &d)))
}

/// Quadratic covariant `h1·u² + h2·uv + h3·v²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticCovariant(pub [Q; 3]);

impl QuadraticCovariant {
    pub fn disc(&self) -> Q {
        let h = &self.0;
        &h[1] * &h[1] - q(4) * &h[0] * &h[2]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// Hessian `(x2² − 3x1x3, x2x3 − 9x1x4, x3² − 3x2x4)`.
pub fn hessian(f: &BinaryCubicForm) -> QuadraticCovariant {
    QuadraticCovariant(hessian_of(&f.0))
}

/// Orbit type of a rational form: the zero form, nonzero cubes of a linear
/// form, forms with a double root, and regular forms tagged with the largest
/// degree of an irreducible factor over Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum OrbitClass {
    S0,
    S1,
    S2,
    Regular(u8),
}

impl OrbitClass {
    pub fn splitting_index(&self) -> Option<u8> {
        match self {
            OrbitClass::Regular(i) => Some(*i),
            _ => None,
        }
    }
}

/// Clears denominators and content, returning primitive integer coefficients.
pub(crate) fn primitive_integral(f: &BinaryCubicForm) -> [BigInt; 4] {
    let den = f
        .0
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .0
        .iter()
        .map(|c| (c * Q::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let g = if g.is_zero() { BigInt::one() } else { g };
    [&ints[0] / &g, &ints[1] / &g, &ints[2] / &g, &ints[3] / &g]
}

fn eval_int(c: &[BigInt], s: &BigInt) -> BigInt {
    c.iter().fold(BigInt::zero(), |acc, a| acc * s + a)
}

/// The root of a monic polynomial that is monotone on `[lo, hi]`, if it is an integer.
fn bisect_integer_root(c: &[BigInt], mut lo: BigInt, mut hi: BigInt) -> Option<BigInt> {
    if lo > hi {
        return None;
    }
    let (mut flo, fhi) = (eval_int(c, &lo), eval_int(c, &hi));
    if flo.is_zero() {
        return Some(lo);
    }
    if fhi.is_zero() {
        return Some(hi);
    }
    if flo.sign() == fhi.sign() {
        return None;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        let fm = eval_int(c, &mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.sign() == flo.sign() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    None
}

/// Integer roots of the monic cubic `s³ + b·s² + c·s + d`.
fn integer_roots_monic_cubic(b: &BigInt, c: &BigInt, d: &BigInt) -> Vec<BigInt> {
    let poly = [BigInt::one(), b.clone(), c.clone(), d.clone()];
    let bound = BigInt::one() + [b, c, d].iter().map(|x| x.abs()).max().unwrap();
    let mut out: Vec<BigInt> = Vec::new();
    let mut push = |r: Option<BigInt>| {
        if let Some(r) = r {
            if !out.contains(&r) {
                out.push(r);
            }
        }
    };
    // critical points (−b ± √(b² − 3c))/3
    let dd = b * b - BigInt::from(3) * c;
    if dd.sign() != Sign::Plus {
        push(bisect_integer_root(&poly, -bound.clone(), bound));
        return out;
    }
    let r = dd.sqrt();
    let three = BigInt::from(3);
    let k1 = (-b - &r - BigInt::one()).div_floor(&three);
    let k2 = (-b + &r + BigInt::one()).div_ceil(&three);
    // integers near the critical points are tested one by one
    for base in [&k1, &k2] {
        for off in -2i64..=2 {
            let s = base + BigInt::from(off);
            if eval_int(&poly, &s).is_zero() {
                push(Some(s));
            }
        }
    }
    push(bisect_integer_root(&poly, -bound.clone(), &k1 - 3));
    push(bisect_integer_root(&poly, &k1 + 3, &k2 - 3));
    push(bisect_integer_root(&poly, &k2 + 3, bound));
    out
}

/// Distinct rational roots `t` of `c[0]·t^n + ... + c[n]` for `n ≤ 3`
/// (integer coefficients, leading coefficient nonzero).
fn rational_roots(c: &[BigInt]) -> Vec<Q> {
    let mut c: Vec<BigInt> = c.to_vec();
    let mut roots = Vec::new();
    // strip zero roots
    while c.len() > 1 && c.last().unwrap().is_zero() {
        if !roots.contains(&Q::zero()) {
            roots.push(Q::zero());
        }
        c.pop();
    }
    let mut add = |t: Q| {
        if !roots.contains(&t) {
            roots.push(t);
        }
    };
    match c.len() {
        2 => add(Q::new(-&c[1], c[0].clone())),
        3 => {
            let disc = &c[1] * &c[1] - BigInt::from(4) * &c[0] * &c[2];
            if disc.sign() != Sign::Minus {
                let r = disc.sqrt();
                if &r * &r == disc {
                    let two_a = BigInt::from(2) * &c[0];
                    add(Q::new(-&c[1] + &r, two_a.clone()));
                    add(Q::new(-&c[1] - &r, two_a));
                }
            }
        }
        4 => {
            // t = s/a turns a·t³ + b·t² + c·t + d into s³ + b·s² + ac·s + a²d
            let a = &c[0];
            for s in integer_roots_monic_cubic(&c[1], &(a * &c[2]), &(a * a * &c[3])) {
                add(Q::new(s, a.clone()));
            }
        }
        _ => {}
    }
    roots
}

/// Number of distinct roots of a nonzero binary cubic in P¹(Q).
pub(crate) fn rational_projective_roots(f: &BinaryCubicForm) -> usize {
    let c = primitive_integral(f);
    // roots at infinity: the leading coefficients vanish
    let lead = c.iter().position(|x| !x.is_zero()).unwrap_or(3);
    let at_infinity = usize::from(lead > 0);
    at_infinity + rational_roots(&c[lead..]).len()
}

/// Orbit type of `f` under GL(2, Q).
pub fn classify_orbit(f: &BinaryCubicForm) -> OrbitClass {
    if f.is_zero() {
        return OrbitClass::S0;
    }
    if discriminant(f).is_zero() {
        // a nonzero binary cubic is the cube of a linear form iff its Hessian vanishes
        return if hessian(f).is_zero() {
            OrbitClass::S1
        } else {
            OrbitClass::S2
        };
    }
    match rational_projective_roots(f) {
        0 => OrbitClass::Regular(3),
        1 => OrbitClass::Regular(2),
        _ => OrbitClass::Regular(1),
    }
}

pub type Mat2Q = [[Q; 2]; 2];
pub type Mat4Q = [[Q; 4]; 4];

/// Derivative at t = 0 of `f ↦ act(f, exp(tA))`, as a matrix on coefficient
/// vectors (entry (i, j) is the x_i-coefficient of the image of the j-th basis form).
///
/// `d/dt det(e^{tA})·f((u,v)e^{−tA}) = tr(A)·f − ((u,v)·A)·∇f`.
pub fn infinitesimal_action(a: &Mat2Q) -> Mat4Q {
    let tr = &a[0][0] + &a[1][1];
    let mut m: Mat4Q = std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()));
    for k in 0..4usize {
        let kq = q(k as i64);
        let rest = q(3 - k as i64);
        // tr(A)·x_k
        m[k][k] += &tr;
        // −(a11·u + a21·v)·f_u
        m[k][k] -= &a[0][0] * &rest;
        if k < 3 {
            m[k + 1][k] -= &a[1][0] * &rest;
        }
        // −(a12·u + a22·v)·f_v
        if k > 0 {
            m[k - 1][k] -= &a[0][1] * &kq;
        }
        m[k][k] -= &a[1][1] * &kq;
    }
    m
}

/// The gl2 matrix acting on forms as `Y` acts on V under the identification
/// `x ↦ x1·X_{α2} + (x2/3)·X_{α1+α2} + (x3/3)·X_{2α1+α2} + x4·X_{3α1+α2}`:
/// H_{α1} ↦ diag(−1, 1), H_{α2} ↦ diag(1, 0), X_{α1} ↦ E21, X_{−α1} ↦ E12.
pub fn levi_gl2_image(y: &g2::LieElement) -> Result<Mat2Q> {
    let [h1, h2, xp, xm] = g2::levi_indices();
    let mut a: Mat2Q = std::array::from_fn(|_| std::array::from_fn(|_| Q::zero()));
    for (i, c) in y.support() {
        let c = Q::new(BigInt::from(*c.numer()), BigInt::from(*c.denom()));
        match i {
            _ if i == h1 => {
                a[0][0] -= &c;
                a[1][1] += &c;
            }
            _ if i == h2 => a[0][0] += &c,
            _ if i == xp => a[1][0] += &c,
            _ if i == xm => a[0][1] += &c,
            _ => return Err(Error::NotInLevi(i)),
        }
    }
    Ok(a)
}

/// `ad(Y)|_V` transported to coefficient vectors: `−D⁻¹·M·D` with
/// `D = diag(1, 1/3, 1/3, 1)`. The sign turns the left adjoint action into
/// the derivative of the right action on forms.
pub fn levi_action_on_forms(y: &g2::LieElement) -> Result<Mat4Q> {
    let m = g2::levi_action_matrix(y)?;
    let d = [1i64, 3, 3, 1];
    Ok(std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let v = m[r][c] * num_rational::Rational64::new(d[r], d[c]);
            -Q::new(BigInt::from(*v.numer()), BigInt::from(*v.denom()))
        })
    }))
}

/// Number of matrix entries where the adjoint action and the infinitesimal
/// twisted action disagree, over the four Levi basis elements.
pub fn levi_mismatches() -> usize {
    g2::levi_indices()
        .iter()
        .map(|&i| {
            let y = g2::LieElement::basis(i);
            let lhs = levi_action_on_forms(&y).expect("Levi basis element");
            let rhs = infinitesimal_action(&levi_gl2_image(&y).expect("Levi basis element"));
            (0..16).filter(|k| lhs[k / 4][k % 4] != rhs[k / 4][k % 4]).count()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(c: [i64; 4]) -> BinaryCubicForm {
        BinaryCubicForm::from_ints(c)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&f([0, 0, 0, 0])), q(0));
        assert_eq!(discriminant(&f([1, 0, 0, 1])), q(-27));
        assert_eq!(discriminant(&f([1, 0, -1, -1])), q(-23));
        assert_eq!(discriminant(&f([0, 1, 1, 0])), q(1));
        assert_eq!(discriminant_of(&[1i64, 0, -1, -1]), -23);
    }

    #[test]
    fn pairing_examples() {
        let x = f([1, 2, 3, 4]);
        assert!(pairing(&x, &x).is_zero());
        assert_eq!(pairing(&f([1, 0, 0, 0]), &f([0, 0, 0, 1])), q(1));
        assert_eq!(
            pairing(&f([0, 1, 0, 0]), &f([0, 0, 1, 0])),
            Q::new(BigInt::from(-1), BigInt::from(3))
        );
    }

    #[test]
    fn act_examples() {
        let x = f([1, 2, 3, 4]);
        assert_eq!(act(&x, &GL2Elt::identity()), x);
        let t = Q::new(BigInt::from(5), BigInt::from(2));
        let l = GL2Elt::diag(t.clone(), q(1)).unwrap();
        let y = act(&x, &l);
        let want = BinaryCubicForm([
            q(1) / (&t * &t),
            q(2) / &t,
            q(3),
            q(4) * &t,
        ]);
        assert_eq!(y, want);
        let s = GL2Elt::antidiag(q(1), q(1)).unwrap();
        assert_eq!(act(&x, &s), f([-4, -3, -2, -1]));
    }

    #[test]
    fn act_rejects_singular() {
        assert!(matches!(GL2Elt::from_ints([[1, 2], [2, 4]]), Err(Error::SingularMatrix)));
    }

    #[test]
    fn scalar_action_is_inverse_scaling() {
        let x = f([1, -2, 3, 5]);
        let l = GL2Elt::scalar(q(3)).unwrap();
        assert_eq!(act(&x, &l), x.scale(&Q::new(BigInt::from(1), BigInt::from(3))));
    }

    #[test]
    fn large_coefficient_roots() {
        // products of linear forms (p·u − q·v) with large coprime p, q
        let lin = |a: i64, b: i64| [q(a), q(-b)];
        let mul2 = |a: [Q; 2], b: [Q; 2]| [&a[0] * &b[0], &a[0] * &b[1] + &a[1] * &b[0], &a[1] * &b[1]];
        let mul3 = |a: [Q; 3], b: [Q; 2]| {
            BinaryCubicForm::new([
                &a[0] * &b[0],
                &a[0] * &b[1] + &a[1] * &b[0],
                &a[1] * &b[1] + &a[2] * &b[0],
                &a[2] * &b[1],
            ])
        };
        let split = mul3(mul2(lin(1_000_003, 999_983), lin(-7_777_777, 123_457)), lin(65_537, 2_147_483_647));
        assert_eq!(classify_orbit(&split), OrbitClass::Regular(1));
        let one = mul3([q(1), q(0), q(1_000_000_007)], lin(999_999_937, -3));
        assert_eq!(classify_orbit(&one), OrbitClass::Regular(2));
        let irreducible = BinaryCubicForm::new([q(1), q(0), q(-1_000_000_007), q(-1)]);
        assert_eq!(classify_orbit(&irreducible), OrbitClass::Regular(3));
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota(&GL2Elt::identity()), GL2Elt::identity());
        let t = q(7);
        let l = GL2Elt::diag(t.clone(), q(1)).unwrap();
        assert_eq!(iota(&l), GL2Elt::diag(q(1), q(1) / t).unwrap());
    }

    #[test]
    fn hessian_examples() {
        assert!(hessian(&f([0, 0, 0, 0])).is_zero());
        assert_eq!(hessian(&f([1, 0, 0, 1])).0, [q(0), q(-9), q(0)]);
        assert_eq!(hessian(&f([1, 0, -1, -1])).disc(), q(69));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_orbit(&f([0, 0, 0, 0])), OrbitClass::S0);
        assert_eq!(classify_orbit(&f([0, 0, 0, 5])), OrbitClass::S1);
        assert_eq!(classify_orbit(&f([0, 0, 1, 2])), OrbitClass::S2);
        assert_eq!(classify_orbit(&f([1, 0, -1, -1])), OrbitClass::Regular(3));
        assert_eq!(classify_orbit(&f([1, 0, 0, 1])), OrbitClass::Regular(2));
        assert_eq!(classify_orbit(&f([0, 1, 1, 0])), OrbitClass::Regular(1));
    }

    #[test]
    fn classify_rational_coefficients() {
        let g: BinaryCubicForm = "1/2,0,-1/2,-1/2".parse().unwrap();
        assert_eq!(classify_orbit(&g), OrbitClass::Regular(3));
        // (2u − v)(u + v)(u − 3v)
        let h: BinaryCubicForm = "2,-5,-4,3".parse().unwrap();
        assert_eq!(classify_orbit(&h), OrbitClass::Regular(1));
    }

    #[test]
    fn parse_formats() {
        let g: BinaryCubicForm = "1, -2/3, 0, 4".parse().unwrap();
        assert_eq!(g.0[1], Q::new(BigInt::from(-2), BigInt::from(3)));
        assert!("1,2,3".parse::<BinaryCubicForm>().is_err());
        let m: GL2Elt = "0,1;1,0".parse().unwrap();
        assert_eq!(m, GL2Elt::antidiag(q(1), q(1)).unwrap());
        assert!("1,1;1,1".parse::<GL2Elt>().is_err());
        assert_eq!(g.to_string().parse::<BinaryCubicForm>().unwrap(), g);
    }

    #[test]
    fn levi_actions_agree() {
        assert_eq!(levi_mismatches(), 0);
        let y = g2::LieElement::basis(g2::root_index(g2::ALPHA2).unwrap());
        assert!(levi_gl2_image(&y).is_err());
    }

    #[test]
    fn infinitesimal_diag() {
        // A = diag(−1, 1) acts with weights 3, 1, −1, −3
        let a = [[q(-1), q(0)], [q(0), q(1)]];
        let m = infinitesimal_action(&a);
        for k in 0..4 {
            assert_eq!(m[k][k], q([3, 1, -1, -3][k]));
        }
    }
}
