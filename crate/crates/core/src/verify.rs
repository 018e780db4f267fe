//! Self-verification suites bundling the engine's end-to-end checks.

use std::sync::Arc;

use num::rational::BigRational;
use num::{BigInt, Signed, Zero};
use serde_json::{json, Value};

use crate::blockdata::{d21a_branches, g3_lambda, BlockTable};
use crate::diagrams::{core, diagram_of, principal_index, principal_weight};
use crate::dimensions::{g2_dim, so7_dim, sp_row_dim, weyl_dim, EvenRootSystem};
use crate::error::{usage, Result};
use crate::geometry::{geometric_report, rows};
use crate::growth::{complexity_report, sequence, z_from_terms, complexity_from_terms, Degree, Window};
use crate::loperator::{datum, l_inv, l_op};
use crate::resolutions::{term, zigzag_for, zigzag_term, ModuleDescriptor};
use crate::rootdata::{atypicality, build_datum, is_dominant, Alpha, Family, SuperWeight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemma31,
    Lemma32,
    Blocks,
    Oracle,
    Counts,
    Geometry,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "lemma31" => Self::Lemma31,
            "lemma32" => Self::Lemma32,
            "blocks" => Self::Blocks,
            "oracle" => Self::Oracle,
            "counts" => Self::Counts,
            "geometry" => Self::Geometry,
            "all" => Self::All,
            _ => return Err(usage!("unknown suite {s:?}")),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Lemma31 => "lemma31",
            Self::Lemma32 => "lemma32",
            Self::Blocks => "blocks",
            Self::Oracle => "oracle",
            Self::Counts => "counts",
            Self::Geometry => "geometry",
            Self::All => "all",
        }
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Self::All => vec![
                Self::Lemma31,
                Self::Lemma32,
                Self::Blocks,
                Self::Oracle,
                Self::Counts,
                Self::Geometry,
            ],
            s => vec![s],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub skipped: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            skipped: false,
            detail: detail.into(),
        }
    }

    fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass: true,
            skipped: true,
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, r: Result<String>) -> Self {
        match r {
            Ok(detail) => Self::new(name, true, detail),
            Err(e) => Self::new(name, false, e.to_string()),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"name": self.name, "pass": self.pass, "detail": self.detail});
        if self.skipped {
            v["skipped"] = json!(true);
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.suite,
            "pass": self.pass(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Options shared by the suites.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// F(4) block table for the conditional checks.
    pub f4: Option<Arc<BlockTable>>,
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Vec<SuiteReport> {
    suite
        .members()
        .into_iter()
        .map(|s| SuiteReport {
            suite: s.name(),
            checks: match s {
                Suite::Lemma31 => lemma31(),
                Suite::Lemma32 => lemma32(),
                Suite::Blocks => blocks(),
                Suite::Oracle => oracle(),
                Suite::Counts => counts(opts),
                Suite::Geometry => geometry(opts),
                Suite::All => unreachable!(),
            },
        })
        .collect()
}

pub fn to_json(reports: &[SuiteReport]) -> Value {
    json!({
        "pass": reports.iter().all(SuiteReport::pass),
        "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
    })
}

/// All weakly decreasing sequences of `n` integers in [0, max].
pub fn partitions(n: usize, max: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let top = prefix.last().copied().unwrap_or(max);
        for v in (0..=top).rev() {
            prefix.push(v);
            go(n, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, &mut Vec::new(), &mut out);
    out
}

fn row_weight(n: usize, eps: i64, d: i64) -> SuperWeight {
    let mut c = vec![0; n];
    c[0] = d;
    SuperWeight::integral(Family::Osp2n { n }, eps, c).expect("length n")
}

/// L-orbit identities and the inverse on n ≤ 4, d ≤ 100.
pub fn lemma31() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=4usize {
        let r = (|| -> Result<String> {
            let dt = datum(n)?;
            let two_n = 2 * n as i64;
            let mut mismatches = Vec::new();
            let mut checked = 0;
            for d in 0..=100i64 {
                let mut cases = vec![(row_weight(n, -d, d), row_weight(n, -d - 1, d + 1))];
                if d >= 1 {
                    cases.push((row_weight(n, two_n + d, d), row_weight(n, two_n + d - 1, d - 1)));
                } else {
                    cases.push((row_weight(n, two_n, 0), SuperWeight::zero(dt.family)));
                }
                for (lam, expect) in cases {
                    let (img, _) = l_op(&dt, &lam)?;
                    if img != expect {
                        mismatches.push(format!("{lam} -> {img}, expected {expect}"));
                    }
                    if l_inv(&dt, &img)? != lam {
                        mismatches.push(format!("inverse fails at {img}"));
                    }
                    checked += 1;
                }
                if principal_weight(n, d) != row_weight(n, -d, d)
                    || principal_weight(n, -d - 1) != row_weight(n, two_n + d, d)
                {
                    mismatches.push(format!("orbit labels at d={d}"));
                }
            }
            if mismatches.is_empty() {
                Ok(format!("{checked} weights"))
            } else {
                Err(crate::Error::Internal(mismatches.join("; ")))
            }
        })();
        checks.push(Check::from_result(format!("l-orbit n={n}"), r));
    }
    checks
}

fn finite_difference_degree(values: &[BigInt]) -> Option<usize> {
    let mut cur = values.to_vec();
    let mut passes = 0usize;
    while !cur.is_empty() {
        if cur.iter().all(Zero::is_zero) {
            return passes.checked_sub(1);
        }
        cur = cur.windows(2).map(|w| &w[1] - &w[0]).collect();
        passes += 1;
    }
    None
}

/// Row dimensions of sp(2n), their growth constants, and the Weyl engine.
pub fn lemma32() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=5usize {
        let seq: Vec<BigInt> = (0..=4 * n as u64).map(|r| BigInt::from(sp_row_dim(n, r))).collect();
        let deg = finite_difference_degree(&seq);
        checks.push(Check::new(
            format!("row degree n={n}"),
            deg == Some(2 * n - 1),
            format!("degree {}", deg.map_or("none".into(), |d| d.to_string())),
        ));
        let ratios = (1..=1000u64).map(|r| {
            BigRational::new(BigInt::from(sp_row_dim(n, r)), BigInt::from(r).pow(2 * n as u32 - 1))
        });
        let (lo, hi) = ratios.fold((None::<BigRational>, None::<BigRational>), |(lo, hi), x| {
            (
                Some(lo.map_or(x.clone(), |l| l.min(x.clone()))),
                Some(hi.map_or(x.clone(), |h| h.max(x))),
            )
        });
        let (lo, hi) = (lo.expect("nonempty"), hi.expect("nonempty"));
        checks.push(Check::new(
            format!("row constants n={n}"),
            lo.is_positive(),
            format!("min {:.6} max {:.6}", ratio_f64(&lo), ratio_f64(&hi)),
        ));
    }
    for n in 1..=4usize {
        let desc = ModuleDescriptor::SimplePrincipal { n, label: 0 };
        let check = match complexity_report(&desc, Window::default()) {
            Ok(r) => match (&r.constants, r.c == 2 * n as u32 + 1) {
                (Some((lo, hi)), true) => Check::new(
                    format!("projective sandwich n={n}"),
                    lo.is_positive() && hi >= lo,
                    format!("dim P_d / d^{}: min {:.6} max {:.6}", 2 * n, ratio_f64(lo), ratio_f64(hi)),
                ),
                _ => Check::new(format!("projective sandwich n={n}"), false, format!("c={}", r.c)),
            },
            Err(e) => Check::new(format!("projective sandwich n={n}"), false, e.to_string()),
        };
        checks.push(check);
    }
    let mut trivial = vec![EvenRootSystem::A1, EvenRootSystem::G2, EvenRootSystem::B3];
    trivial.extend((1..=5).map(EvenRootSystem::C));
    let bad: Vec<String> = trivial
        .iter()
        .filter(|s| weyl_dim(s, &vec![0; s.rank()]).map(|d| d != 1u8.into()).unwrap_or(true))
        .map(|s| format!("{s:?}"))
        .collect();
    checks.push(Check::new(
        "trivial weight dimension",
        bad.is_empty(),
        if bad.is_empty() { format!("{} systems", trivial.len()) } else { bad.join(",") },
    ));
    let mut mismatches = 0;
    for a in 0..=6u64 {
        for b in 0..=6u64 {
            if weyl_dim(&EvenRootSystem::G2, &[a as i64, b as i64]).ok() != Some(g2_dim(a, b)) {
                mismatches += 1;
            }
            for c in 0..=6u64 {
                if weyl_dim(&EvenRootSystem::B3, &[a as i64, b as i64, c as i64]).ok() != Some(so7_dim(a, b, c)) {
                    mismatches += 1;
                }
            }
        }
    }
    checks.push(Check::new(
        "closed forms vs engine",
        mismatches == 0,
        format!("{mismatches} mismatches over 392 weights"),
    ));
    checks
}

fn ratio_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Principal-block classification and block-table sanity.
pub fn blocks() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=3usize {
        let r = (|| -> Result<String> {
            let dt = build_datum(Family::osp2n(n)?)?;
            let c0 = core(&diagram_of(&dt, &SuperWeight::zero(dt.family))?);
            let (mut atypical, mut principal, mut mismatch) = (0, 0, Vec::new());
            for part in partitions(n, 30) {
                for a in -30..=30 {
                    let lam = SuperWeight::integral(dt.family, a, part.clone())?;
                    if atypicality(&dt, &lam)?.degree == 0 {
                        continue;
                    }
                    atypical += 1;
                    let same_core = core(&diagram_of(&dt, &lam)?) == c0;
                    let indexed = principal_index(&dt, &lam)?.is_some();
                    principal += usize::from(indexed);
                    if same_core != indexed {
                        mismatch.push(lam.to_string());
                    }
                }
            }
            if mismatch.is_empty() {
                Ok(format!("{atypical} atypical weights, {principal} principal"))
            } else {
                Err(crate::Error::Internal(format!("mismatches: {}", mismatch.join(" "))))
            }
        })();
        checks.push(Check::from_result(format!("principal block n={n}"), r));
    }
    let mut overlaps = Vec::new();
    for (p, q) in [(1, 1), (2, 3), (3, 2)] {
        for k in 1..=4 {
            for l in -3 * k * p - 2..=3 * k * q + 2 {
                let b = d21a_branches(p, q, k, l);
                if b.windows(2).any(|w| w[0] != w[1]) {
                    overlaps.push(format!("p={p} q={q} k={k} l={l}"));
                }
            }
        }
    }
    checks.push(Check::new(
        "D(2,1;a) branch agreement",
        overlaps.is_empty(),
        format!("{} disagreements {}", overlaps.len(), overlaps.join(";")).trim_end().to_string(),
    ));
    let g3 = build_datum(Family::G3).expect("G(3) datum");
    let bad: Vec<String> = (0..=3)
        .flat_map(|k| (0..=60).map(move |l| (k, l)))
        .filter(|&(k, l)| !g3_lambda(k, l).map(|w| is_dominant(&g3, &w)).unwrap_or(false))
        .map(|(k, l)| format!("({k},{l})"))
        .collect();
    checks.push(Check::new(
        "G(3) table dominance",
        bad.is_empty(),
        format!("{} non-dominant {}", bad.len(), bad.join(",")).trim_end().to_string(),
    ));
    checks
}

/// Closed-form resolutions against the Ext-quiver recursion.
pub fn oracle() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=3usize {
        let mut mismatches = 0;
        for d in 0..=64 {
            let closed = term(&ModuleDescriptor::SimplePrincipal { n, label: 0 }, d);
            let zig = zigzag_term(n, 0, d);
            match (closed, zig) {
                (Ok(a), Ok(b)) if a.multiset() == b.multiset() => {}
                _ => mismatches += 1,
            }
        }
        checks.push(Check::new(
            format!("chain oracle n={n}"),
            mismatches == 0,
            format!("{mismatches} mismatches over d <= 64"),
        ));
    }
    let mut mismatches = 0;
    for label in 0..=12 {
        let desc = ModuleDescriptor::Osp32Simple { label };
        match zigzag_for(&desc, 64) {
            Ok(terms) => {
                for t in terms {
                    if term(&desc, t.d).ok().as_ref() != Some(&t) {
                        mismatches += 1;
                    }
                }
            }
            Err(_) => mismatches += 1,
        }
    }
    checks.push(Check::new(
        "fork oracle",
        mismatches == 0,
        format!("{mismatches} mismatches over labels <= 12, d <= 64"),
    ));
    checks
}

fn growth_check(name: String, desc: &ModuleDescriptor, want_c: u32, want_z: u32, window: Window) -> Check {
    let r = (|| -> Result<(bool, String)> {
        let terms = sequence(desc, window)?;
        let c = complexity_from_terms(desc, &terms, window)?;
        let z = z_from_terms(desc, &terms, window)?;
        let degrees = format!("{}/{}", c.even, c.odd);
        let detail = format!("c={} z={} degrees {degrees}", c.c, z.c);
        Ok((c.c == want_c && z.c == want_z, detail))
    })();
    match r {
        Ok((pass, detail)) => Check::new(name, pass, detail),
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

/// Complexity and z-complexity of every module family.
pub fn counts(opts: &VerifyOptions) -> Vec<Check> {
    let w = Window::default();
    let mut checks = Vec::new();
    for n in 1..=4usize {
        let desc = ModuleDescriptor::SimplePrincipal { n, label: 0 };
        let mut check = growth_check(format!("simple osp(2|{}) trivial", 2 * n), &desc, 2 * n as u32 + 1, 2, w);
        if check.pass {
            let even_odd = complexity_report(&desc, w).map(|r| (r.even, r.odd));
            let want = Degree::Exact(2 * n as u32);
            check.pass = even_odd == Ok((want, want));
        }
        checks.push(check);
        let kac = ModuleDescriptor::KacPrincipal { n, label: 0 };
        checks.push(growth_check(format!("kac osp(2|{}) K(0)", 2 * n), &kac, 2 * n as u32, 1, w));
    }
    for label in 0..=3 {
        let desc = ModuleDescriptor::Osp32Simple { label };
        checks.push(growth_check(format!("osp(3|2) lambda_{label}"), &desc, 4, 2, w));
    }
    for alpha in [Alpha::rational(1, 1).expect("valid"), Alpha::rational(2, 3).expect("valid")] {
        for k in 0..=2 {
            let desc = ModuleDescriptor::D21aSimple { alpha, k, label: if k == 0 { 0 } else { 1 } };
            checks.push(growth_check(format!("D(2,1;{alpha}) k={k}"), &desc, 5, 2, w));
        }
    }
    let irr = ModuleDescriptor::D21aSimple { alpha: Alpha::irrational(), k: 0, label: 0 };
    checks.push(growth_check("D(2,1;irrational) k=0".into(), &irr, 5, 2, w));
    for k in 0..=1 {
        let desc = ModuleDescriptor::G3Simple { k, label: 0 };
        checks.push(growth_check(format!("G(3) k={k}"), &desc, 8, 2, w));
    }
    match &opts.f4 {
        Some(table) => {
            let desc = ModuleDescriptor::F4Simple { table: table.clone(), label: 0 };
            let mut c = growth_check("F(4) (conditional on external table)".into(), &desc, 9, 2, w);
            c.detail.push_str(" [external table]");
            checks.push(c);
        }
        None => checks.push(Check::skipped("F(4) (conditional on external table)", "skipped: no table")),
    }
    checks
}

/// c = dim X + dim V and z = dim V_f on every supported row.
pub fn geometry(opts: &VerifyOptions) -> Vec<Check> {
    let mut checks: Vec<Check> = rows(opts.f4.clone())
        .into_iter()
        .map(|(family, kind, atypical)| {
            let name = format!("{family} {kind:?} atypical={}", u8::from(atypical)).to_lowercase();
            match geometric_report(family, kind, atypical, opts.f4.clone(), Window::default()) {
                Ok(r) => Check::new(
                    name,
                    r.identity_c && r.identity_z,
                    format!(
                        "c={} = {}+{}, z={} = {}",
                        r.c, r.dims.dim_associated, r.dims.dim_support, r.z, r.dims.dim_detecting
                    ),
                ),
                Err(e) => Check::new(name, false, e.to_string()),
            }
        })
        .collect();
    if opts.f4.is_none() {
        checks.push(Check::skipped("f(4) rows", "skipped: no table"));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(1, 5).len(), 6);
        assert_eq!(partitions(2, 3).len(), 10);
        assert!(partitions(3, 4).iter().all(|p| p.windows(2).all(|w| w[0] >= w[1])));
    }

    #[test]
    fn fast_suites_pass() {
        for s in [Suite::Lemma31, Suite::Oracle] {
            for r in run(s, &VerifyOptions::default()) {
                assert!(r.pass(), "{:?}", r.checks);
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::All.members() {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("nope").is_err());
    }
}
