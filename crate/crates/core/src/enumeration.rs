//! Class tables of integral binary cubic forms under GL(2, Z) (or SL(2, Z)).
//!
//! # Covering region
//!
//! Reduced forms with `0 < |P| ≤ X` lie in an explicit coefficient region:
//!
//! * `P > 0`: write `f = Re(κ(u − zv)³)` with `z` the root of the reduced
//!   Hessian, so `|Re z| ≤ 1/2`, `|z| ≥ 1` and `P = 108|κ|⁴y⁶` (`y = Im z`).
//!   Then `|κ|⁴ ≤ 16X/729`, `|x_k| ≤ C(3,k)·|κ|·|z|^k`, and when `x1 ≠ 0`,
//!   `|κ| ≥ |x1|` gives `y⁶ ≤ X/(108·x1⁴)`.
//! * `P < 0`, `x1 ≠ 0`: `f = x1(u − θv)(u − wv)(u − w̄v)` with `w` reduced and
//!   `|P| = 4·x1⁴·|θ − w|⁴·y²`, giving `|x1| ≤ (16X/27)^{1/4}`,
//!   `|θ| ≤ (X/3)^{1/4}/|x1| + 1/2` and `y⁶ ≤ X/(4x1⁴)`; the coefficients
//!   are the elementary symmetric functions of `θ, w, w̄` times `x1`.
//! * `x1 = 0`: `f = v·q` with `q = (x2, x3, x4)`, and `P = x2²·disc(q)`.
//!   Reduction of `q` (P < 0) or of the Hessian `(x2², x2x3, x3² − 3x2x4)`
//!   (P > 0) forces `|x3| ≤ |x2| ≤ X^{1/4}` and bounds `|x4|` in terms of `x2`.
//!
//! Every bound gets a margin of one. The box oracle asserts at runtime that
//! each canonical representative it finds lies inside the region.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::reduce::{canonical_int, is_reduced, stabilizer_int};
use crate::forms::{classify_orbit, IntForm, OrbitClass};

/// Bumped whenever table contents could change; part of the cache key.
pub const TABLE_VERSION: u32 = 1;

/// All forms with coefficients in `[−c, c]`, in lexicographic order.
pub fn enumerate_box(c: i64) -> impl Iterator<Item = IntForm> {
    let r = move || -c..=c;
    r().flat_map(move |a| {
        r().flat_map(move |b| r().flat_map(move |d| r().map(move |e| IntForm([a, b, d, e]))))
    })
}

/// Coefficient bounds for reduced forms with `|P| ≤ X`: for each admissible
/// `x1`, the bounds on `|x2|`, `|x3|`, `|x4|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub bound: u64,
    /// `(x1, [b2, b3, b4])` for `x1 ≠ 0`.
    pub rows: Vec<(i64, [i64; 3])>,
    /// `(x2, b4)` for `x1 = 0`, `x2 ≠ 0`; `|x3| ≤ |x2|`.
    pub zero_rows: Vec<(i64, i64)>,
}

fn ceil1(v: f64) -> i64 {
    v.floor() as i64 + 1
}

impl Region {
    pub fn new(bound: u64) -> Region {
        let x = bound as f64;
        let kappa = (16.0 * x / 729.0).powf(0.25);
        let a_max = ceil1((16.0 * x / 27.0).powf(0.25));
        let mut rows = Vec::new();
        for a in 1..=a_max {
            let af = a as f64;
            // P < 0
            let theta = (x / 3.0).powf(0.25) / af + 0.5;
            let w2 = 0.25 + (x / (4.0 * af.powi(4))).cbrt();
            let mut b = [af * (theta + 1.0), af * (theta + w2), af * theta * w2];
            // P > 0
            if af <= kappa {
                let z2 = 0.25 + (x / (108.0 * af.powi(4))).cbrt();
                let z = z2.sqrt();
                let p = [3.0 * kappa * z, 3.0 * kappa * z2, kappa * z2 * z];
                for (bi, pi) in b.iter_mut().zip(p) {
                    *bi = bi.max(pi);
                }
            }
            let b = b.map(ceil1);
            rows.push((a, b));
            rows.push((-a, b));
        }
        rows.sort();
        let mut zero_rows = Vec::new();
        for c in 1..=ceil1(x.powf(0.25)) {
            let cf = c as f64;
            let neg = (x / (cf * cf) + cf * cf) / (4.0 * cf);
            let pos = ((3.0 * x + cf.powi(4)) / (4.0 * cf * cf) + cf * cf) / (3.0 * cf);
            let b4 = ceil1(neg.max(pos));
            zero_rows.push((c, b4));
            zero_rows.push((-c, b4));
        }
        zero_rows.sort();
        Region { bound, rows, zero_rows }
    }

    pub fn contains(&self, f: &IntForm) -> bool {
        let [a, b, c, d] = f.0;
        if a == 0 {
            return self
                .zero_rows
                .iter()
                .any(|&(x2, b4)| x2 == b && c.abs() <= b.abs() && d.abs() <= b4);
        }
        self.rows
            .iter()
            .any(|&(x1, [b2, b3, b4])| x1 == a && b.abs() <= b2 && c.abs() <= b3 && d.abs() <= b4)
    }

    /// Forms in the region with `0 < |P| ≤ X`, grouped by leading coefficients
    /// so callers can parallelize over the groups.
    fn slices(&self) -> Vec<(i64, i64, i64, i64)> {
        // (x1, x2, b3, b4) slices
        let mut out = Vec::new();
        for &(x1, [b2, b3, b4]) in &self.rows {
            for x2 in -b2..=b2 {
                out.push((x1, x2, b3, b4));
            }
        }
        for &(x2, b4) in &self.zero_rows {
            out.push((0, x2, x2.abs(), b4));
        }
        out
    }

    fn slice_forms(&self, (x1, x2, b3, b4): (i64, i64, i64, i64)) -> impl Iterator<Item = IntForm> + '_ {
        let x = self.bound as i128;
        (-b3..=b3)
            .flat_map(move |x3| (-b4..=b4).map(move |x4| IntForm([x1, x2, x3, x4])))
            .filter(move |f| {
                let p = f.disc();
                p != 0 && p.abs() <= x
            })
    }

    /// Number of candidate forms in the region (before any filtering).
    pub fn volume(&self) -> u64 {
        self.slices()
            .iter()
            .map(|&(_, _, b3, b4)| ((2 * b3 + 1) * (2 * b4 + 1)) as u64)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Canonicalize every form in the covering region.
    BoxOracle,
    /// Keep the forms of the region that are their own canonical representative.
    Reduction,
}

impl Strategy {
    pub fn tag(&self) -> &'static str {
        match self {
            Strategy::BoxOracle => "box-oracle",
            Strategy::Reduction => "reduction",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box-oracle" | "box" => Ok(Strategy::BoxOracle),
            "reduction" => Ok(Strategy::Reduction),
            _ => Err(Error::Parse(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub disc: i64,
    pub representative: IntForm,
    pub stab_order: u32,
    pub splitting: OrbitClass,
}

impl ClassRecord {
    fn of(f: IntForm, sl2: bool) -> Result<ClassRecord> {
        Ok(ClassRecord {
            disc: f.disc() as i64,
            representative: f,
            stab_order: stabilizer_int(&f, sl2)?.len() as u32,
            splitting: classify_orbit(&f.to_form()),
        })
    }

    pub fn splitting_index(&self) -> u8 {
        self.splitting.splitting_index().unwrap_or(0)
    }

    fn sort_key(&self) -> (i64, i64, IntForm) {
        (self.disc.abs(), self.disc.signum(), self.representative)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTable {
    pub bound: u64,
    pub strategy: Strategy,
    pub sl2: bool,
    pub records: Vec<ClassRecord>,
}

/// Class table for `0 < |P| ≤ X`.
pub fn class_table(bound: u64, strategy: Strategy, sl2: bool) -> Result<ClassTable> {
    if bound == 0 {
        return Err(Error::NonPositive("disc bound"));
    }
    let region = Region::new(bound);
    let slices = region.slices();
    let per_slice: Vec<Result<BTreeSet<IntForm>>> = slices
        .into_par_iter()
        .map(|s| {
            let mut found = BTreeSet::new();
            for f in region.slice_forms(s) {
                match strategy {
                    Strategy::BoxOracle => {
                        let (c, _) = canonical_int(&f, sl2)?;
                        assert!(region.contains(&c), "canonical form {c} escapes the covering region");
                        found.insert(c);
                    }
                    Strategy::Reduction => {
                        if is_reduced(&f) && canonical_int(&f, sl2)?.0 == f {
                            found.insert(f);
                        }
                    }
                }
            }
            Ok(found)
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in per_slice {
        all.extend(s?);
    }
    let mut records: Vec<ClassRecord> = all
        .into_iter()
        .map(|f| ClassRecord::of(f, sl2))
        .collect::<Result<_>>()?;
    records.sort_by_key(ClassRecord::sort_key);
    Ok(ClassTable { bound, strategy, sl2, records })
}

impl ClassTable {
    /// Records with `|disc| ≤ x`.
    pub fn truncate(&self, x: u64) -> ClassTable {
        ClassTable {
            bound: x.min(self.bound),
            records: self
                .records
                .iter()
                .filter(|r| r.disc.unsigned_abs() <= x)
                .cloned()
                .collect(),
            ..self.clone()
        }
    }

    /// The set of canonical representatives.
    pub fn class_set(&self) -> BTreeSet<IntForm> {
        self.records.iter().map(|r| r.representative).collect()
    }

    /// Record of the class containing `f`, if present.
    pub fn find(&self, f: &IntForm) -> Result<Option<&ClassRecord>> {
        let (c, _) = canonical_int(f, self.sl2)?;
        Ok(self.records.iter().find(|r| r.representative == c))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("disc,x1,x2,x3,x4,stab_order,splitting_index\n");
        for r in &self.records {
            let [a, b, c, d] = r.representative.0;
            s.push_str(&format!(
                "{},{a},{b},{c},{d},{},{}\n",
                r.disc,
                r.stab_order,
                r.splitting_index()
            ));
        }
        s
    }

    /// Parses the CSV written by [`ClassTable::to_csv`].
    pub fn from_csv(text: &str, bound: u64, strategy: Strategy, sl2: bool) -> Result<ClassTable> {
        let mut lines = text.lines();
        if lines.next() != Some("disc,x1,x2,x3,x4,stab_order,splitting_index") {
            return Err(Error::Parse("missing class-table header".into()));
        }
        let mut records = Vec::new();
        for line in lines.filter(|l| !l.is_empty()) {
            let v: Vec<i64> = line
                .split(',')
                .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad field in `{line}`"))))
                .collect::<Result<_>>()?;
            if v.len() != 7 {
                return Err(Error::Parse(format!("expected 7 fields in `{line}`")));
            }
            records.push(ClassRecord {
                disc: v[0],
                representative: IntForm([v[1], v[2], v[3], v[4]]),
                stab_order: v[5] as u32,
                splitting: OrbitClass::Regular(v[6] as u8),
            });
        }
        Ok(ClassTable { bound, strategy, sl2, records })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<ClassTable> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Counts by splitting index `i ∈ {1, 2, 3}` (slot `i − 1`).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub positive: [u64; 3],
    pub negative: [u64; 3],
    /// Same, weighted by `1/stab_order`.
    pub positive_weighted: [f64; 3],
    pub negative_weighted: [f64; 3],
}

impl Partition {
    pub fn total(&self) -> u64 {
        self.positive.iter().chain(&self.negative).sum()
    }
}

pub fn taniguchi_partition(t: &ClassTable) -> Partition {
    let mut p = Partition::default();
    for r in &t.records {
        let i = usize::from(r.splitting_index()) - 1;
        let w = 1.0 / f64::from(r.stab_order);
        if r.disc > 0 {
            p.positive[i] += 1;
            p.positive_weighted[i] += w;
        } else {
            p.negative[i] += 1;
            p.negative_weighted[i] += w;
        }
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscSign {
    Positive,
    Negative,
}

impl DiscSign {
    fn matches(&self, disc: i64) -> bool {
        match self {
            DiscSign::Positive => disc > 0,
            DiscSign::Negative => disc < 0,
        }
    }
}

fn dirichlet(t: &ClassTable, s: f64, sign: DiscSign, weighted: bool) -> Result<f64> {
    if s <= 0.0 {
        return Err(Error::NonPositive("s"));
    }
    Ok(t.records
        .iter()
        .filter(|r| sign.matches(r.disc))
        .map(|r| {
            let w = if weighted { 1.0 / f64::from(r.stab_order) } else { 1.0 };
            w * (r.disc.abs() as f64).powf(-s)
        })
        .sum())
}

/// `Σ (1/stab_order)·|disc|^{−s}` over records of the given sign.
pub fn dirichlet_partial(t: &ClassTable, s: f64, sign: DiscSign) -> Result<f64> {
    dirichlet(t, s, sign, true)
}

/// Unweighted `Σ |disc|^{−s}`.
pub fn dirichlet_partial_raw(t: &ClassTable, s: f64, sign: DiscSign) -> Result<f64> {
    dirichlet(t, s, sign, false)
}

fn cache_path(dir: &Path, bound: u64, strategy: Strategy, sl2: bool) -> PathBuf {
    let group = if sl2 { "sl2" } else { "gl2" };
    dir.join(format!("classes-X{bound}-{}-{group}-v{TABLE_VERSION}.json", strategy.tag()))
}

/// [`class_table`] backed by a JSON cache in `dir`.
pub fn class_table_cached(dir: &Path, bound: u64, strategy: Strategy, sl2: bool) -> Result<ClassTable> {
    let path = cache_path(dir, bound, strategy, sl2);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(t) = ClassTable::from_json(&text) {
            return Ok(t);
        }
    }
    let t = class_table(bound, strategy, sl2)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_atomic(&path, t.to_json()?.as_bytes())?;
    Ok(t)
}

/// Writes via a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    f.write_all(bytes).map_err(|e| Error::io(&tmp, e))?;
    f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_sizes() {
        assert_eq!(enumerate_box(1).count(), 81);
        let v: Vec<IntForm> = enumerate_box(3).collect();
        assert_eq!(v.len(), 2401);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn seed_classes_and_partition() {
        let t = class_table(30, Strategy::Reduction, false).unwrap();
        let get = |c| t.find(&IntForm(c)).unwrap().unwrap().clone();
        let a = get([1, 0, -1, -1]);
        assert_eq!((a.disc, a.splitting_index()), (-23, 3));
        let b = get([1, 0, 0, 1]);
        assert_eq!((b.disc, b.splitting_index()), (-27, 2));
        let c = get([0, 1, 1, 0]);
        assert_eq!((c.disc, c.splitting_index(), c.stab_order), (1, 1, 6));
        let p = taniguchi_partition(&t);
        assert_eq!(p.total() as usize, t.records.len());
    }

    #[test]
    fn strategies_agree_small() {
        for sl2 in [false, true] {
            let a = class_table(120, Strategy::BoxOracle, sl2).unwrap();
            let b = class_table(120, Strategy::Reduction, sl2).unwrap();
            assert_eq!(a.class_set(), b.class_set());
        }
    }

    #[test]
    fn records_are_sorted_and_distinct() {
        let t = class_table(100, Strategy::Reduction, false).unwrap();
        assert!(t.records.windows(2).all(|w| w[0].sort_key() < w[1].sort_key()));
        for r in &t.records {
            assert_eq!(canonical_int(&r.representative, false).unwrap().0, r.representative);
        }
    }

    #[test]
    fn dirichlet_oracle() {
        let t = class_table(60, Strategy::Reduction, false).unwrap();
        let small = t.truncate(23);
        let v = dirichlet_partial(&small, 2.0, DiscSign::Negative).unwrap();
        let fold = small
            .records
            .iter()
            .filter(|r| r.disc < 0)
            .fold(0.0, |a, r| a + (r.disc as f64).powi(-2) / r.stab_order as f64);
        assert!((v - fold).abs() < 1e-15);
        let empty = t.truncate(0);
        assert_eq!(dirichlet_partial(&empty, 2.0, DiscSign::Positive).unwrap(), 0.0);
        assert!(dirichlet_partial(&t, 0.0, DiscSign::Positive).is_err());
    }

    #[test]
    fn csv_and_json_round_trip() {
        let t = class_table(50, Strategy::Reduction, false).unwrap();
        let csv = t.to_csv();
        assert!(!csv.contains('\r'));
        assert_eq!(ClassTable::from_csv(&csv, 50, Strategy::Reduction, false).unwrap(), t);
        assert_eq!(ClassTable::from_json(&t.to_json().unwrap()).unwrap(), t);
    }

    #[test]
    fn cache_reuse_is_identical() {
        let dir = tempfile::tempdir().unwrap();
        let a = class_table_cached(dir.path(), 40, Strategy::BoxOracle, false).unwrap();
        let path = cache_path(dir.path(), 40, Strategy::BoxOracle, false);
        let bytes = fs::read(&path).unwrap();
        let b = class_table_cached(dir.path(), 40, Strategy::BoxOracle, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(fs::read(&path).unwrap(), bytes);
    }
}
