//! Exact reduction of integral binary cubic forms with nonzero discriminant.
//!
//! Every form is attached to a point `w` of the upper half plane: for P > 0
//! the root of its (definite) Hessian, for P < 0 the complex root of its real
//! quadratic factor. Both are covariant, so moving `w` into the standard
//! fundamental domain with translations and `w ↦ −1/w` reduces the form. All
//! comparisons are done in integer arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use super::{discriminant_of, hessian_of, substitute, BinaryCubicForm, GL2Elt};
use crate::error::{Error, Result};

/// Integral 2×2 matrix, usually of determinant ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat(pub [[i64; 2]; 2]);

impl IntMat {
    pub const IDENTITY: IntMat = IntMat([[1, 0], [0, 1]]);
    /// `w ↦ −1/w`.
    pub const S: IntMat = IntMat([[0, -1], [1, 0]]);

    /// Shifts every root `u/v` by `−k`.
    pub fn translation(k: i64) -> IntMat {
        IntMat([[1, 0], [-k, 1]])
    }

    pub fn det(&self) -> i64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn mul(&self, o: &IntMat) -> IntMat {
        let (a, b) = (&self.0, &o.0);
        let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
        IntMat([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> IntMat {
        let d = self.det();
        debug_assert!(d == 1 || d == -1);
        let m = &self.0;
        IntMat([[d * m[1][1], -d * m[0][1]], [-d * m[1][0], d * m[0][0]]])
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "{},{};{},{}", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

/// Integral binary cubic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct IntForm(pub [i64; 4]);

impl IntForm {
    pub fn disc(&self) -> i128 {
        discriminant_of(&self.0.map(i128::from))
    }

    /// Hessian coefficients `(x2² − 3x1x3, x2x3 − 9x1x4, x3² − 3x2x4)`.
    pub fn hessian(&self) -> [i128; 3] {
        hessian_of(&self.0.map(i128::from))
    }

    /// Twisted action by a unimodular matrix.
    pub fn act(&self, l: &IntMat) -> IntForm {
        let inv = l.inverse();
        let c = self.0.map(i128::from);
        let sub = inv.0.map(|r| r.map(i128::from));
        let out = substitute(&c, &sub);
        let det = i128::from(l.det());
        IntForm(out.map(|x| i64::try_from(det * x).expect("coefficient overflow in act")))
    }

    /// `f(n, d)`.
    fn eval(&self, n: i128, d: i128) -> i128 {
        let [a, b, c, e] = self.0.map(i128::from);
        a * n * n * n + b * n * n * d + c * n * d * d + e * d * d * d
    }

    pub fn to_form(&self) -> BinaryCubicForm {
        BinaryCubicForm::from_ints(self.0)
    }
}

impl fmt::Display for IntForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a},{b},{c},{d}")
    }
}

impl TryFrom<&BinaryCubicForm> for IntForm {
    type Error = Error;

    fn try_from(f: &BinaryCubicForm) -> Result<IntForm> {
        f.to_ints()
            .map(IntForm)
            .ok_or_else(|| Error::NotIntegral(f.to_string()))
    }
}

/// The half-plane point attached to a form.
enum RootPoint {
    /// Root of the positive definite form `A·u² + B·uv + C·v²`.
    Quadratic(i128, i128, i128),
    /// Real root θ of the cubic (x1, x4 ≠ 0, P < 0), with
    /// `Re w = −(θ + x2/x1)/2` and `|w|² = −x4/(x1·θ)`.
    Cubic(IntForm),
}

fn definite(a: i128, b: i128, c: i128) -> RootPoint {
    if a > 0 {
        RootPoint::Quadratic(a, b, c)
    } else {
        RootPoint::Quadratic(-a, -b, -c)
    }
}

impl RootPoint {
    fn of(f: &IntForm) -> RootPoint {
        let [a, b, c, d] = f.0.map(i128::from);
        if f.disc() > 0 {
            let [h1, h2, h3] = f.hessian();
            definite(h1, h2, h3)
        } else if a == 0 {
            definite(b, c, d)
        } else if d == 0 {
            definite(a, b, c)
        } else {
            RootPoint::Cubic(*f)
        }
    }

    /// Compares θ with `n/d`.
    fn theta_cmp(f: &IntForm, n: i128, d: i128) -> Ordering {
        let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
        let v = f.eval(n, d) * i128::from(f.0[0].signum());
        // sign(x1)·f(t, 1) has the sign of t − θ
        0.cmp(&v)
    }

    /// `|Re w| ≤ 1/2`.
    fn centered(&self) -> bool {
        match *self {
            RootPoint::Quadratic(a, b, _) => b.abs() <= a,
            RootPoint::Cubic(f) => {
                let (x1, x2) = (i128::from(f.0[0]), i128::from(f.0[1]));
                // −1 − x2/x1 ≤ θ ≤ 1 − x2/x1
                Self::theta_cmp(&f, -x1 - x2, x1) != Ordering::Less
                    && Self::theta_cmp(&f, x1 - x2, x1) != Ordering::Greater
            }
        }
    }

    /// `|w|² < 1`.
    fn inside_unit(&self) -> bool {
        match *self {
            RootPoint::Quadratic(a, _, c) => c < a,
            RootPoint::Cubic(f) => {
                let (x1, x4) = (i128::from(f.0[0]).abs(), i128::from(f.0[3]).abs());
                Self::theta_cmp(&f, x4, x1) == Ordering::Greater
                    || Self::theta_cmp(&f, -x4, x1) == Ordering::Less
            }
        }
    }

    fn is_reduced(&self) -> bool {
        self.centered() && !self.inside_unit()
    }

    /// `k = ⌈Re w − 1/2⌉`, so that translating by `k` puts `Re w` in (−1/2, 1/2].
    fn shift(&self) -> i128 {
        match *self {
            RootPoint::Quadratic(a, b, _) => Integer::div_ceil(&(-b - a), &(2 * a)),
            RootPoint::Cubic(f) => {
                // k = −⌊(θ + x2/x1 + 1)/2⌋; find the largest m with
                // θ ≥ 2m − 1 − x2/x1 = (2m·x1 − x1 − x2)/x1
                let [x1, x2, x3, x4] = f.0.map(i128::from);
                let r = 1 + (x2.abs().max(x3.abs()).max(x4.abs())) / x1.abs() + 1;
                let c = x2 / x1;
                let above = |m: i128| Self::theta_cmp(&f, 2 * m * x1 - x1 - x2, x1) != Ordering::Less;
                let mut lo = (-r + c - 1) / 2 - 2;
                let mut hi = (r + c + 1) / 2 + 2;
                debug_assert!(above(lo) && !above(hi));
                while hi - lo > 1 {
                    let mid = lo + (hi - lo) / 2;
                    if above(mid) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                -lo
            }
        }
    }
}

/// Whether `f` lies in the fundamental domain used for reduction.
pub fn is_reduced(f: &IntForm) -> bool {
    RootPoint::of(f).is_reduced()
}

const WALK_LIMIT: usize = 100_000;

/// Moves `f` into the fundamental domain with determinant-one moves.
fn walk(f: &IntForm) -> (IntForm, IntMat) {
    let mut g = *f;
    let mut w = IntMat::IDENTITY;
    for _ in 0..WALK_LIMIT {
        let rp = RootPoint::of(&g);
        if rp.is_reduced() {
            return (g, w);
        }
        let k = rp.shift();
        let step = if k != 0 {
            IntMat::translation(i64::try_from(k).expect("translation overflow"))
        } else {
            IntMat::S
        };
        g = g.act(&step);
        w = w.mul(&step);
    }
    panic!("reduction of {f} did not terminate");
}

fn small_unimodular(det_one_only: bool) -> Vec<IntMat> {
    let mut out = vec![IntMat::IDENTITY];
    let r = -2..=2i64;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    let m = IntMat([[a, b], [c, d]]);
                    let det = m.det();
                    let ok = if det_one_only { det == 1 } else { det.abs() == 1 };
                    if ok && m != IntMat::IDENTITY {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn candidates(sl2: bool) -> &'static [IntMat] {
    use std::sync::OnceLock;
    static GL: OnceLock<Vec<IntMat>> = OnceLock::new();
    static SL: OnceLock<Vec<IntMat>> = OnceLock::new();
    if sl2 {
        SL.get_or_init(|| small_unimodular(true))
    } else {
        GL.get_or_init(|| small_unimodular(false))
    }
}

/// Canonical representative of the orbit of `f` under GL(2, Z) (or SL(2, Z)
/// when `sl2` is set), with a witness `W` such that `act(f, W)` is canonical.
pub fn canonical_int(f: &IntForm, sl2: bool) -> Result<(IntForm, IntMat)> {
    if f.disc() == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    let (g, w) = walk(f);
    let mut best: Option<(IntForm, IntMat)> = None;
    for a in candidates(sl2) {
        let h = g.act(a);
        if !is_reduced(&h) {
            continue;
        }
        if best.as_ref().map_or(true, |(b, _)| h < *b) {
            best = Some((h, w.mul(a)));
        }
    }
    Ok(best.expect("walk output is reduced"))
}

/// Stabilizer of `f` in GL(2, Z) (or SL(2, Z)).
pub fn stabilizer_int(f: &IntForm, sl2: bool) -> Result<Vec<IntMat>> {
    if f.disc() == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    let (g, w) = walk(f);
    let winv = w.inverse();
    let mut out: Vec<IntMat> = candidates(sl2)
        .iter()
        .filter(|a| g.act(a) == g)
        .map(|a| w.mul(a).mul(&winv))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn int_of(f: &BinaryCubicForm) -> Result<IntForm> {
    IntForm::try_from(f)
}

/// Reduced representative `g` of the GL(2, Z)-orbit of an integral form, with
/// `g = act(f, W)`.
pub fn reduce(f: &BinaryCubicForm) -> Result<(BinaryCubicForm, GL2Elt)> {
    let (g, w) = canonical_int(&int_of(f)?, false)?;
    Ok((g.to_form(), w.into()))
}

/// `Some(l)` with `act(f, l) = g` when the forms are GL(2, Z)-equivalent.
pub fn equivalent(f: &BinaryCubicForm, g: &BinaryCubicForm) -> Result<Option<GL2Elt>> {
    equivalent_in(f, g, false)
}

pub fn equivalent_in(f: &BinaryCubicForm, g: &BinaryCubicForm, sl2: bool) -> Result<Option<GL2Elt>> {
    let (cf, wf) = canonical_int(&int_of(f)?, sl2)?;
    let (cg, wg) = canonical_int(&int_of(g)?, sl2)?;
    Ok((cf == cg).then(|| wf.mul(&wg.inverse()).into()))
}

/// Finite stabilizer in GL(2, Z).
pub fn stabilizer(f: &BinaryCubicForm) -> Result<Vec<GL2Elt>> {
    Ok(stabilizer_int(&int_of(f)?, false)?
        .into_iter()
        .map(GL2Elt::from)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::act;
    use proptest::prelude::*;

    #[test]
    fn reduce_is_idempotent_on_examples() {
        for c in [[1, 0, 0, 1], [1, 0, -1, -1], [0, 1, 1, 0], [3, -7, 2, 5]] {
            let f = BinaryCubicForm::from_ints(c);
            let (g, w) = reduce(&f).unwrap();
            assert_eq!(act(&f, &w), g);
            let (g2, w2) = reduce(&g).unwrap();
            assert_eq!(g2, g);
            assert_eq!(w2, GL2Elt::identity());
        }
    }

    #[test]
    fn reduce_rejects_bad_input() {
        let f = BinaryCubicForm::from_ints([0, 0, 1, 0]);
        assert!(matches!(reduce(&f), Err(Error::ZeroDiscriminant)));
        let g: BinaryCubicForm = "1/2,0,0,1".parse().unwrap();
        assert!(matches!(reduce(&g), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn stabilizer_of_uv_u_plus_v() {
        let f = BinaryCubicForm::from_ints([0, 1, 1, 0]);
        let st = stabilizer(&f).unwrap();
        assert_eq!(st.len(), 6);
        for l in &st {
            assert_eq!(act(&f, l), f);
        }
    }

    #[test]
    fn stabilizer_trivial_example() {
        let f = BinaryCubicForm::from_ints([1, 0, -1, -1]);
        assert_eq!(stabilizer(&f).unwrap().len(), 1);
    }

    #[test]
    fn equivalence_detects_translate() {
        let f = BinaryCubicForm::from_ints([1, 0, -1, -1]);
        let l = GL2Elt::from_ints([[2, 1], [5, 3]]).unwrap();
        let g = act(&f, &l);
        let m = equivalent(&f, &g).unwrap().unwrap();
        assert_eq!(act(&f, &m), g);
        let h = BinaryCubicForm::from_ints([1, 0, 0, 1]);
        assert!(equivalent(&f, &h).unwrap().is_none());
    }

    fn nondegenerate() -> impl Strategy<Value = IntForm> {
        prop::array::uniform4(-6i64..=6)
            .prop_map(IntForm)
            .prop_filter("P != 0", |f| f.disc() != 0)
    }

    fn unimodular() -> impl Strategy<Value = IntMat> {
        prop::collection::vec(0..4usize, 0..8).prop_map(|steps| {
            steps.into_iter().fold(IntMat::IDENTITY, |m, s| {
                let g = match s {
                    0 => IntMat::translation(1),
                    1 => IntMat::translation(-1),
                    2 => IntMat::S,
                    _ => IntMat([[1, 0], [0, -1]]),
                };
                m.mul(&g)
            })
        })
    }

    proptest! {
        #[test]
        fn canonical_is_orbit_invariant(f in nondegenerate(), a in unimodular()) {
            let g = f.act(&a);
            let (cf, wf) = canonical_int(&f, false).unwrap();
            let (cg, wg) = canonical_int(&g, false).unwrap();
            prop_assert_eq!(cf, cg);
            prop_assert_eq!(f.act(&wf), cf);
            prop_assert_eq!(g.act(&wg), cg);
            prop_assert_eq!(cf.disc(), f.disc());
            prop_assert!(is_reduced(&cf));
        }

        #[test]
        fn stabilizer_is_a_group(f in nondegenerate()) {
            let st = stabilizer_int(&f, false).unwrap();
            prop_assert!([1usize, 2, 3, 6].contains(&st.len()));
            for a in &st {
                prop_assert_eq!(f.act(a), f);
                for b in &st {
                    prop_assert!(st.contains(&a.mul(b)));
                }
            }
        }

        #[test]
        fn act_is_a_right_action(f in nondegenerate(), a in unimodular(), b in unimodular()) {
            prop_assert_eq!(f.act(&a).act(&b), f.act(&a.mul(&b)));
        }
    }
}
