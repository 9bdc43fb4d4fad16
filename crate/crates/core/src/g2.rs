//! The split Lie algebra of type G2 in a Chevalley basis, the root datum,
//! and the truncation combinatorics of the torus of the minimal parabolic.
//!
//! The basis is built from a 7-dimensional matrix realization. Positive root
//! vectors are iterated brackets of the simple generators divided by `p + 1`,
//! negative root vectors are images under the Chevalley involution, so the
//! resulting structure constants are integral with `|N_{α,β}| = p + 1`.
//! Structure constants are then read off exactly in rational arithmetic.

use std::fmt;
use std::sync::OnceLock;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quadrature;

/// A root (or weight) written in the basis of simple roots: `c1·α1 + c2·α2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    pub c1: i32,
    pub c2: i32,
}

impl RootVector {
    pub const fn new(c1: i32, c2: i32) -> Self {
        RootVector { c1, c2 }
    }

    pub const ZERO: RootVector = RootVector::new(0, 0);

    /// Squared length with the short simple root normalized to 2.
    pub fn norm2(self) -> i32 {
        2 * self.c1 * self.c1 - 6 * self.c1 * self.c2 + 6 * self.c2 * self.c2
    }

    pub fn inner(self, other: RootVector) -> i32 {
        2 * self.c1 * other.c1 - 3 * (self.c1 * other.c2 + self.c2 * other.c1)
            + 6 * self.c2 * other.c2
    }

    /// ⟨self, β∨⟩ = 2(self, β)/(β, β).
    pub fn pair_coroot(self, beta: RootVector) -> i32 {
        2 * self.inner(beta) / beta.norm2()
    }

    pub fn is_root(self) -> bool {
        ALL_ROOTS.contains(&self)
    }

    pub fn is_short(self) -> bool {
        self.norm2() == 2
    }

    /// Coroot of `self` in the basis {α1∨, α2∨}.
    pub fn coroot(self) -> (Rational64, Rational64) {
        let (a, b) = (self.c1 as i64, self.c2 as i64);
        if self.is_short() {
            (Rational64::from(a), Rational64::from(3 * b))
        } else {
            (Rational64::new(a, 3), Rational64::from(b))
        }
    }
}

impl std::ops::Add for RootVector {
    type Output = RootVector;
    fn add(self, o: RootVector) -> RootVector {
        RootVector::new(self.c1 + o.c1, self.c2 + o.c2)
    }
}

impl std::ops::Sub for RootVector {
    type Output = RootVector;
    fn sub(self, o: RootVector) -> RootVector {
        RootVector::new(self.c1 - o.c1, self.c2 - o.c2)
    }
}

impl std::ops::Neg for RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector::new(-self.c1, -self.c2)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.c1, self.c2)
    }
}

pub const ALPHA1: RootVector = RootVector::new(1, 0);
pub const ALPHA2: RootVector = RootVector::new(0, 1);

/// Positive roots in the order α1, α2, α1+α2, 2α1+α2, 3α1+α2, 3α1+2α2.
pub const POSITIVE_ROOTS: [RootVector; 6] = [
    RootVector::new(1, 0),
    RootVector::new(0, 1),
    RootVector::new(1, 1),
    RootVector::new(2, 1),
    RootVector::new(3, 1),
    RootVector::new(3, 2),
];

const ALL_ROOTS: [RootVector; 12] = [
    RootVector::new(1, 0),
    RootVector::new(0, 1),
    RootVector::new(1, 1),
    RootVector::new(2, 1),
    RootVector::new(3, 1),
    RootVector::new(3, 2),
    RootVector::new(-1, 0),
    RootVector::new(0, -1),
    RootVector::new(-1, -1),
    RootVector::new(-2, -1),
    RootVector::new(-3, -1),
    RootVector::new(-3, -2),
];

/// Number of basis elements of the Lie algebra.
pub const DIM: usize = 14;

/// Basis index of `H_{α1}` and `H_{α2}`.
pub const H_ALPHA1: usize = 0;
pub const H_ALPHA2: usize = 1;

/// Basis labels: two Cartan elements followed by root vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    /// `H_{α1}` (index 1) or `H_{α2}` (index 2).
    Cartan(u8),
    Root(RootVector),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Cartan(1) => write!(f, "H[1,0]"),
            BasisLabel::Cartan(_) => write!(f, "H[0,1]"),
            BasisLabel::Root(r) => write!(f, "X{r}"),
        }
    }
}

pub fn basis_label(i: usize) -> BasisLabel {
    match i {
        0 => BasisLabel::Cartan(1),
        1 => BasisLabel::Cartan(2),
        _ => BasisLabel::Root(ALL_ROOTS[i - 2]),
    }
}

/// Basis index of the root vector `X_α`.
pub fn root_index(alpha: RootVector) -> Option<usize> {
    ALL_ROOTS.iter().position(|&r| r == alpha).map(|p| p + 2)
}

/// Element of the Lie algebra with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElement(pub [Rational64; DIM]);

impl LieElement {
    pub fn zero() -> Self {
        LieElement([Rational64::zero(); DIM])
    }

    pub fn basis(i: usize) -> Self {
        let mut e = Self::zero();
        e.0[i] = Rational64::one();
        e
    }

    pub fn root(alpha: RootVector) -> Self {
        Self::basis(root_index(alpha).expect("not a root"))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: Rational64) -> Self {
        let mut out = self.clone();
        out.0.iter_mut().for_each(|x| *x *= c);
        out
    }

    pub fn add(&self, o: &LieElement) -> Self {
        let mut out = self.clone();
        for (a, b) in out.0.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, o: &LieElement) -> Self {
        self.add(&o.scale(-Rational64::one()))
    }

    /// Nonzero coordinates as (index, coefficient) pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, Rational64)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, *c))
    }
}

type Mat7 = [[Rational64; 7]; 7];

fn mat_zero() -> Mat7 {
    [[Rational64::zero(); 7]; 7]
}

fn mat_mul(a: &Mat7, b: &Mat7) -> Mat7 {
    let mut c = mat_zero();
    for i in 0..7 {
        for k in 0..7 {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..7 {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

fn mat_comm(a: &Mat7, b: &Mat7) -> Mat7 {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    let mut c = mat_zero();
    for i in 0..7 {
        for j in 0..7 {
            c[i][j] = ab[i][j] - ba[i][j];
        }
    }
    c
}

fn mat_scale(a: &Mat7, s: Rational64) -> Mat7 {
    let mut c = *a;
    c.iter_mut().flatten().for_each(|x| *x *= s);
    c
}

/// Simple generators e1, f1, e2, f2 acting on the 7-dimensional module with
/// weights 2α1+α2, α1+α2, α1, 0, −α1, −α1−α2, −2α1−α2.
fn generators() -> [Mat7; 4] {
    let r = |n: i64| Rational64::from(n);
    let (mut e1, mut f1, mut e2, mut f2) = (mat_zero(), mat_zero(), mat_zero(), mat_zero());
    e1[5][6] = r(1);
    f1[6][5] = r(1);
    e1[3][4] = r(1);
    f1[4][3] = r(2);
    e1[2][3] = r(2);
    f1[3][2] = r(1);
    e1[0][1] = r(1);
    f1[1][0] = r(1);
    e2[4][5] = r(1);
    f2[5][4] = r(1);
    e2[1][2] = r(1);
    f2[2][1] = r(1);
    [e1, f1, e2, f2]
}

/// Structure-constant table of the Chevalley basis.
#[derive(Debug, Clone)]
pub struct G2Table {
    brackets: Vec<Vec<LieElement>>,
}

impl G2Table {
    /// `[B_i, B_j]` for basis indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &LieElement {
        &self.brackets[i][j]
    }

    /// `N_{α,β}` with `[X_α, X_β] = N_{α,β} X_{α+β}`; zero when α+β is not a root.
    pub fn n_const(&self, alpha: RootVector, beta: RootVector) -> Rational64 {
        let (i, j) = (root_index(alpha).unwrap(), root_index(beta).unwrap());
        match root_index(alpha + beta) {
            Some(k) => self.brackets[i][j].0[k],
            None => Rational64::zero(),
        }
    }

    /// Text dump of all nonzero structure constants with `i < j` in basis
    /// order, one per line: `X[a1,a2] X[b1,b2] -> c * X[s1,s2]`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                for (k, c) in self.brackets[i][j].support() {
                    out.push_str(&format!(
                        "{} {} -> {} * {}\n",
                        basis_label(i),
                        basis_label(j),
                        c,
                        basis_label(k)
                    ));
                }
            }
        }
        out
    }
}

/// Builds (once) and returns the structure-constant table.
pub fn build_chevalley_table() -> &'static G2Table {
    static TABLE: OnceLock<G2Table> = OnceLock::new();
    TABLE.get_or_init(construct_table)
}

fn construct_table() -> G2Table {
    let [e1, f1, e2, f2] = generators();
    let e = [e1, e2];
    // θ(e_i) = −f_i
    let theta_e = [mat_scale(&f1, Rational64::from(-1)), mat_scale(&f2, Rational64::from(-1))];

    // (root, simple index applied, previous root) in build order
    let steps: [(RootVector, usize, RootVector); 4] = [
        (RootVector::new(1, 1), 0, ALPHA2),
        (RootVector::new(2, 1), 0, RootVector::new(1, 1)),
        (RootVector::new(3, 1), 0, RootVector::new(2, 1)),
        (RootVector::new(3, 2), 1, RootVector::new(3, 1)),
    ];
    let mut pos: Vec<(RootVector, Mat7)> = vec![(ALPHA1, e1), (ALPHA2, e2)];
    let mut pos_theta: Vec<(RootVector, Mat7)> = vec![(ALPHA1, theta_e[0]), (ALPHA2, theta_e[1])];
    for (root, i, prev) in steps {
        let simple = if i == 0 { ALPHA1 } else { ALPHA2 };
        let mut p = 0;
        while (prev - simple * (p + 1)).is_root() {
            p += 1;
        }
        let div = Rational64::new(1, (p + 1) as i64);
        let x_prev = pos.iter().find(|(r, _)| *r == prev).unwrap().1;
        let t_prev = pos_theta.iter().find(|(r, _)| *r == prev).unwrap().1;
        pos.push((root, mat_scale(&mat_comm(&e[i], &x_prev), div)));
        pos_theta.push((root, mat_scale(&mat_comm(&theta_e[i], &t_prev), div)));
    }

    let mut mats: Vec<Mat7> = vec![mat_comm(&e1, &f1), mat_comm(&e2, &f2)];
    for r in POSITIVE_ROOTS {
        mats.push(pos.iter().find(|(q, _)| *q == r).unwrap().1);
    }
    for r in POSITIVE_ROOTS {
        let t = pos_theta.iter().find(|(q, _)| *q == r).unwrap().1;
        mats.push(mat_scale(&t, Rational64::from(-1)));
    }

    let solver = CoordinateSolver::new(&mats);
    let mut brackets = vec![vec![LieElement::zero(); DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            brackets[i][j] = solver.coordinates(&mat_comm(&mats[i], &mats[j]));
        }
    }
    G2Table { brackets }
}

impl std::ops::Mul<i32> for RootVector {
    type Output = RootVector;
    fn mul(self, k: i32) -> RootVector {
        RootVector::new(self.c1 * k, self.c2 * k)
    }
}

/// Exact coordinates of matrices in the span of the 14 basis matrices.
struct CoordinateSolver {
    /// Row-reduced system: for each basis vector a pivot entry.
    rows: Vec<Vec<Rational64>>,
    pivots: Vec<usize>,
}

impl CoordinateSolver {
    fn new(mats: &[Mat7]) -> Self {
        // Augmented matrix: 49 entries | identity(14); reduce columns of entries.
        let n = mats.len();
        let mut rows: Vec<Vec<Rational64>> = mats
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let mut row: Vec<Rational64> = m.iter().flatten().copied().collect();
                row.extend((0..n).map(|t| if t == k { Rational64::one() } else { Rational64::zero() }));
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..49 {
            let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            rows[r].iter_mut().for_each(|x| *x *= inv);
            for i in 0..n {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col];
                    let pivot_row = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == n {
                break;
            }
        }
        assert_eq!(r, n, "basis matrices are linearly dependent");
        CoordinateSolver { rows, pivots }
    }

    fn coordinates(&self, m: &Mat7) -> LieElement {
        let flat: Vec<Rational64> = m.iter().flatten().copied().collect();
        let mut out = LieElement::zero();
        let mut residual = flat.clone();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let c = residual[col];
            if c.is_zero() {
                continue;
            }
            for t in 0..49 {
                residual[t] -= c * row[t];
            }
            for k in 0..DIM {
                out.0[k] += c * row[49 + k];
            }
        }
        assert!(residual.iter().all(|x| x.is_zero()), "matrix outside the span");
        out
    }
}

/// Bilinear extension of the structure constants.
pub fn bracket(x: &LieElement, y: &LieElement, t: &G2Table) -> LieElement {
    let mut out = LieElement::zero();
    for (i, a) in x.support() {
        for (j, b) in y.support() {
            let ab = a * b;
            for (k, c) in t.brackets[i][j].support() {
                out.0[k] += ab * c;
            }
        }
    }
    out
}

/// Root datum: simple coroots in the (H1, H2) basis, fundamental weights,
/// and the evaluation of roots on `t1·H1 + t2·H2`.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub positive_roots: [RootVector; 6],
    /// α1∨ = H2 − H1, α2∨ = H1, as (H1, H2)-coordinates.
    pub coroots: [(i32, i32); 2],
    pub fundamental_weights: [RootVector; 2],
}

pub fn root_datum() -> RootDatum {
    RootDatum {
        positive_roots: POSITIVE_ROOTS,
        coroots: [(-1, 1), (1, 0)],
        fundamental_weights: [RootVector::new(2, 1), RootVector::new(3, 2)],
    }
}

impl RootDatum {
    /// α(t1·H1 + t2·H2) for α = c1·α1 + c2·α2.
    pub fn evaluate(&self, alpha: RootVector, t1: f64, t2: f64) -> f64 {
        alpha.c1 as f64 * (t2 - t1) + alpha.c2 as f64 * (2.0 * t1 - t2)
    }

    /// Integer evaluation on the lattice spanned by H1, H2.
    pub fn evaluate_int(&self, alpha: RootVector, t1: i32, t2: i32) -> i32 {
        alpha.c1 * (t2 - t1) + alpha.c2 * (2 * t1 - t2)
    }

    /// ⟨α_j∨, ϖ_k⟩.
    pub fn coroot_weight_pairing(&self, j: usize, k: usize) -> i32 {
        let (t1, t2) = self.coroots[j];
        self.evaluate_int(self.fundamental_weights[k], t1, t2)
    }
}

/// Ordered basis of V: X_{α2}, X_{α1+α2}, X_{2α1+α2}, X_{3α1+α2}.
pub const V_ROOTS: [RootVector; 4] = [
    RootVector::new(0, 1),
    RootVector::new(1, 1),
    RootVector::new(2, 1),
    RootVector::new(3, 1),
];

/// Basis indices spanning the Levi subalgebra of the second maximal parabolic.
pub fn levi_indices() -> [usize; 4] {
    [
        H_ALPHA1,
        H_ALPHA2,
        root_index(ALPHA1).unwrap(),
        root_index(-ALPHA1).unwrap(),
    ]
}

pub type Mat4 = [[Rational64; 4]; 4];

/// Matrix of ad(Y) restricted to V in the basis [`V_ROOTS`];
/// entry (i, j) is the coefficient of the i-th basis vector in ad(Y)(j-th).
pub fn levi_action_matrix(y: &LieElement) -> Result<Mat4> {
    let levi = levi_indices();
    if let Some((i, _)) = y.support().find(|(i, _)| !levi.contains(i)) {
        return Err(Error::NotInLevi(i));
    }
    let t = build_chevalley_table();
    let mut m = [[Rational64::zero(); 4]; 4];
    for (j, &beta) in V_ROOTS.iter().enumerate() {
        let img = bracket(y, &LieElement::root(beta), t);
        for (k, c) in img.support() {
            let pos = V_ROOTS
                .iter()
                .position(|&r| root_index(r) == Some(k))
                .expect("Levi action leaves V");
            m[pos][j] = c;
        }
    }
    Ok(m)
}

/// Point (a, b) of the diagonal torus in the real model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    pub a: f64,
    pub b: f64,
}

impl TorusPoint {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::OutOfRange(a.min(b), "torus coordinates must be positive"));
        }
        Ok(TorusPoint { a, b })
    }

    /// H_0(m) as (H1, H2)-coordinates: (log a, log b).
    pub fn h0(&self) -> (f64, f64) {
        (self.a.ln(), self.b.ln())
    }
}

/// Truncation parameter T = T1·α1∨ + T2·α2∨.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TruncationParam {
    pub t1: f64,
    pub t2: f64,
}

impl TruncationParam {
    pub fn new(t1: f64, t2: f64) -> Self {
        TruncationParam { t1, t2 }
    }

    /// T in (H1, H2)-coordinates.
    pub fn h_coords(&self) -> (f64, f64) {
        // T1(H2 − H1) + T2·H1
        (self.t2 - self.t1, self.t1)
    }
}

/// Characteristic function τ̂_{P_j}(H_{P_j}(m) − T) evaluated as ϖ_j(H_0(m) − T) > 0.
pub fn tau_hat(j: u8, m: TorusPoint, t: TruncationParam) -> Result<bool> {
    if j != 1 && j != 2 {
        return Err(Error::InvalidParabolic(j));
    }
    let datum = root_datum();
    let (h1, h2) = m.h0();
    let (s1, s2) = t.h_coords();
    let w = datum.fundamental_weights[(j - 1) as usize];
    Ok(datum.evaluate(w, h1 - s1, h2 - s2) > 0.0)
}

/// ∫_0^∞ (1_{b>a} − 1_{b>e^{T1}}) db/b by Gauss–Legendre over geometric
/// panels of ratio at most 2 covering the interval where the integrand is
/// nonzero.
pub fn truncation_residual(a: f64, t1: f64) -> f64 {
    static RULE: std::sync::OnceLock<(Vec<f64>, Vec<f64>)> = std::sync::OnceLock::new();
    let rule = RULE.get_or_init(|| quadrature::gauss_legendre(20));
    let e = t1.exp();
    if a == e {
        return 0.0;
    }
    let (lo, hi, sign) = if a < e { (a, e, 1.0) } else { (e, a, -1.0) };
    let panels = ((hi / lo).log2().ceil() as usize).max(1);
    let r = (hi / lo).powf(1.0 / panels as f64);
    let f = |b: f64| 1.0 / b;
    let mut x = lo;
    let mut total = 0.0;
    for k in 0..panels {
        let y = if k + 1 == panels { hi } else { x * r };
        total += quadrature::gauss_fixed(&f, x, y, rule);
        x = y;
    }
    sign * total
}

/// Closed form of [`truncation_residual`]: T1 − log a.
pub fn truncation_residual_closed(a: f64, t1: f64) -> f64 {
    t1 - a.ln()
}

/// Weight of a basis element; zero for the Cartan part.
pub fn basis_weight(i: usize) -> RootVector {
    match basis_label(i) {
        BasisLabel::Cartan(_) => RootVector::ZERO,
        BasisLabel::Root(r) => r,
    }
}

/// Basis triples (i, j, k) where the Jacobi sum
/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` is nonzero.
pub fn jacobi_violations(t: &G2Table) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    for i in 0..DIM {
        let x = LieElement::basis(i);
        for j in 0..DIM {
            let y = LieElement::basis(j);
            for k in 0..DIM {
                let z = LieElement::basis(k);
                let sum = bracket(&x, &bracket(&y, &z, t), t)
                    .add(&bracket(&y, &bracket(&z, &x, t), t))
                    .add(&bracket(&z, &bracket(&x, &y, t), t));
                if !sum.is_zero() {
                    bad.push((i, j, k));
                }
            }
        }
    }
    bad
}

/// Basis pairs whose bracket leaves `g_{α+β}`, or where a Cartan element
/// fails to act on `X_α` by `⟨α, α_i∨⟩`.
pub fn grading_violations(t: &G2Table) -> Vec<(usize, usize)> {
    let simple = [ALPHA1, ALPHA2];
    let mut bad = Vec::new();
    for i in 0..DIM {
        for j in 0..DIM {
            let w = basis_weight(i) + basis_weight(j);
            let b = t.bracket_basis(i, j);
            let mut ok = b.support().all(|(k, _)| basis_weight(k) == w);
            if w != RootVector::ZERO && !w.is_root() {
                ok &= b.is_zero();
            }
            if let BasisLabel::Cartan(c) = basis_label(i) {
                let expect = match basis_label(j) {
                    BasisLabel::Cartan(_) => LieElement::zero(),
                    BasisLabel::Root(a) => {
                        let n = a.pair_coroot(simple[(c - 1) as usize]);
                        LieElement::basis(j).scale(Rational64::from(n as i64))
                    }
                };
                ok &= *b == expect;
            }
            if !ok {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Eigenvalues of `ad(H_{α1})` on V, sorted.
pub fn v_weight_spectrum() -> Vec<i64> {
    let m = levi_action_matrix(&LieElement::basis(H_ALPHA1)).expect("Cartan element");
    let mut w: Vec<i64> = (0..4).map(|i| m[i][i].to_integer()).collect();
    w.sort();
    w
}

/// Writes a 4×4 rational matrix as rows separated by `;`.
pub fn format_mat4(m: &Mat4) -> String {
    m.iter()
        .map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn mat4_is_zero(m: &Mat4) -> bool {
        m.iter().flatten().all(|c| c.is_zero())
    }

    fn abs_int(c: Rational64) -> Option<i64> {
        c.is_integer().then(|| c.abs().to_integer())
    }

    fn r(n: i64) -> Rational64 {
        Rational64::from(n)
    }

    #[test]
    fn h_acts_by_root_pairing() {
        let t = build_chevalley_table();
        let x = bracket(&LieElement::basis(H_ALPHA1), &LieElement::root(ALPHA1), t);
        assert_eq!(x, LieElement::root(ALPHA1).scale(r(2)));
        let x = bracket(&LieElement::basis(H_ALPHA2), &LieElement::root(ALPHA1), t);
        assert_eq!(x, LieElement::root(ALPHA1).scale(r(-1)));
        let x = bracket(&LieElement::basis(H_ALPHA1), &LieElement::root(ALPHA2), t);
        assert_eq!(x, LieElement::root(ALPHA2).scale(r(-3)));
    }

    #[test]
    fn chain_constants() {
        let t = build_chevalley_table();
        assert_eq!(t.n_const(ALPHA1, ALPHA2).abs(), r(1));
        assert_eq!(t.n_const(ALPHA1, RootVector::new(1, 1)).abs(), r(2));
        assert_eq!(t.n_const(ALPHA1, RootVector::new(2, 1)).abs(), r(3));
    }

    #[test]
    fn bracket_self_is_zero() {
        let t = build_chevalley_table();
        for i in 0..DIM {
            assert!(bracket(&LieElement::basis(i), &LieElement::basis(i), t).is_zero());
        }
    }

    #[test]
    fn coroots_of_all_roots() {
        let t = build_chevalley_table();
        for alpha in POSITIVE_ROOTS {
            let h = bracket(&LieElement::root(alpha), &LieElement::root(-alpha), t);
            let (a, b) = alpha.coroot();
            let mut want = LieElement::zero();
            want.0[H_ALPHA1] = a;
            want.0[H_ALPHA2] = b;
            assert_eq!(h, want, "root {alpha}");
        }
    }

    #[test]
    fn datum_values() {
        let d = root_datum();
        assert_eq!(d.positive_roots.len(), 6);
        assert_eq!(d.fundamental_weights[0], RootVector::new(2, 1));
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(d.coroot_weight_pairing(j, k), (j == k) as i32);
            }
        }
        // α1(t1H1+t2H2) = t2 − t1, α2(...) = 2t1 − t2
        assert_eq!(d.evaluate_int(ALPHA1, 3, 7), 4);
        assert_eq!(d.evaluate_int(ALPHA2, 3, 7), -1);
    }

    #[test]
    fn levi_matrix_of_h_alpha1() {
        let m = levi_action_matrix(&LieElement::basis(H_ALPHA1)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { [-3, -1, 1, 3][i] } else { 0 };
                assert_eq!(m[i][j], r(want));
            }
        }
        assert!(mat4_is_zero(&levi_action_matrix(&LieElement::zero()).unwrap()));
    }

    #[test]
    fn levi_matrix_of_x_alpha1_is_shift() {
        let m = levi_action_matrix(&LieElement::root(ALPHA1)).unwrap();
        let mut mags = vec![];
        for i in 0..4 {
            for j in 0..4 {
                if i == j + 1 {
                    mags.push(abs_int(m[i][j]).unwrap());
                } else {
                    assert!(m[i][j].is_zero());
                }
            }
        }
        assert_eq!(mags, vec![1, 2, 3]);
    }

    #[test]
    fn levi_rejects_outside() {
        assert!(matches!(
            levi_action_matrix(&LieElement::root(ALPHA2)),
            Err(Error::NotInLevi(_))
        ));
    }

    #[test]
    fn tau_hat_examples() {
        let t = TruncationParam::new(1.0, 0.0);
        assert!(tau_hat(1, TorusPoint::new(1.0, 3.0).unwrap(), t).unwrap());
        let t0 = TruncationParam::new(0.0, 0.0);
        assert!(!tau_hat(2, TorusPoint::new(1.0, 1.0).unwrap(), t0).unwrap());
        assert!(tau_hat(2, TorusPoint::new(2.0, 1.0).unwrap(), t0).unwrap());
        assert!(tau_hat(3, TorusPoint::new(2.0, 1.0).unwrap(), t0).is_err());
    }

    #[test]
    fn truncation_residual_examples() {
        assert_eq!(truncation_residual(1.0, 0.0), 0.0);
        assert!((truncation_residual(1.0, 2.0) - 2.0).abs() < 1e-12);
        assert!((truncation_residual(2f64.exp(), 0.0) + 2.0).abs() < 1e-12);
    }

    #[test]
    fn structure_checks() {
        let t = build_chevalley_table();
        assert!(jacobi_violations(t).is_empty());
        assert!(grading_violations(t).is_empty());
        assert_eq!(v_weight_spectrum(), vec![-3, -1, 1, 3]);
    }

    #[test]
    fn dump_format() {
        let d = build_chevalley_table().dump();
        assert!(d.lines().any(|l| l == "H[1,0] X[1,0] -> 2 * X[1,0]"));
        assert!(d.lines().all(|l| l.contains(" -> ") && l.contains(" * ")));
    }
}
