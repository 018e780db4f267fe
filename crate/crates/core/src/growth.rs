//! Polynomial rate of growth by exact finite differences, and the complexity
//! and z-complexity of a module computed from its resolution.
//!
//! The samples are split into residue classes of d (mod 2, or mod 4 when a
//! parity class does not settle). A class has degree k when its (k+1)-th
//! difference sequence ends in at least [`ZERO_RUN`] zeros; the rate of growth
//! is the largest class degree plus one.

use std::fmt;

use num::rational::BigRational;
use num::{BigInt, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dimensions::BigDim;
use crate::error::{usage, Error, Result};
use crate::resolutions::{ModuleDescriptor, ResolutionTerm, Resolver};

/// Length of the zero run that certifies a vanishing difference.
pub const ZERO_RUN: usize = 8;

/// Inclusive range of resolution degrees sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub dmin: u64,
    pub dmax: u64,
}

impl Default for Window {
    fn default() -> Self {
        Self { dmin: 16, dmax: 256 }
    }
}

impl Window {
    pub fn new(dmin: u64, dmax: u64) -> Result<Self> {
        let w = Self { dmin, dmax };
        w.validate()?;
        Ok(w)
    }

    /// Each residue class mod 4 must leave room for a certified zero run
    /// after differences of moderate order.
    pub fn validate(&self) -> Result<()> {
        if self.dmin < 1 {
            return Err(usage!("window must start at d >= 1"));
        }
        if self.dmax < self.dmin || self.dmax - self.dmin + 1 < 40 {
            return Err(usage!(
                "window [{}, {}] is too short; it needs at least 40 values",
                self.dmin,
                self.dmax
            ));
        }
        Ok(())
    }

    pub fn degrees(&self) -> impl Iterator<Item = u64> {
        self.dmin..=self.dmax
    }
}

/// Detected degree of one residue class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    /// Eventually zero.
    Zero,
    Exact(u32),
    NotPolynomial,
}

impl Degree {
    fn to_json(self) -> Value {
        match self {
            Degree::Zero => json!("zero"),
            Degree::Exact(k) => json!(k),
            Degree::NotPolynomial => json!("not-polynomial"),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Zero => f.write_str("zero"),
            Degree::Exact(k) => write!(f, "{k}"),
            Degree::NotPolynomial => f.write_str("not-polynomial"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub even: Degree,
    pub odd: Degree,
    /// Rate of growth; a lower bound when `flags` contains "not-polynomial".
    pub c: u32,
    pub window: Window,
    pub flags: Vec<String>,
    /// min and max of value / d^{c−1} over the window (absent when c = 0).
    pub constants: Option<(BigRational, BigRational)>,
}

impl GrowthReport {
    pub fn is_polynomial(&self) -> bool {
        !self.flags.iter().any(|f| f == "not-polynomial")
    }

    /// `{"c","constants","degrees":{"even","odd"},"flags","window"}`; `key`
    /// renames "c" (e.g. to "z").
    pub fn to_json(&self, key: &str) -> Value {
        let mut v = json!({
            "degrees": {"even": self.even.to_json(), "odd": self.odd.to_json()},
            "window": [self.window.dmin, self.window.dmax],
            "flags": self.flags,
        });
        v[key] = json!(self.c);
        if let Some((lo, hi)) = &self.constants {
            v["constants"] = json!({"min": lo.to_string(), "max": hi.to_string()});
        }
        v
    }
}

/// Degree of one sequence, or `NotPolynomial` if no difference vanishes on a
/// tail of length ≥ [`ZERO_RUN`].
pub fn sequence_degree(values: &[BigInt]) -> Degree {
    let zero_tail = |s: &[BigInt]| s.len() >= ZERO_RUN && s[s.len() - ZERO_RUN..].iter().all(Zero::is_zero);
    if zero_tail(values) {
        return Degree::Zero;
    }
    let mut cur = values.to_vec();
    let mut passes = 0u32;
    while cur.len() > ZERO_RUN {
        cur = cur.windows(2).map(|w| &w[1] - &w[0]).collect();
        passes += 1;
        if zero_tail(&cur) {
            return Degree::Exact(passes - 1);
        }
    }
    Degree::NotPolynomial
}

fn class_degrees(samples: &[(u64, BigInt)], period: u64) -> Vec<(u64, Degree)> {
    (0..period)
        .map(|r| {
            let class: Vec<BigInt> = samples
                .iter()
                .filter(|(d, _)| d % period == r)
                .map(|(_, v)| v.clone())
                .collect();
            (r, sequence_degree(&class))
        })
        .collect()
}

fn merge(degrees: &[(u64, Degree)], parity: u64) -> Degree {
    degrees
        .iter()
        .filter(|(r, _)| r % 2 == parity)
        .map(|(_, d)| *d)
        .max()
        .unwrap_or(Degree::Zero)
}

/// Rate of growth of `d ↦ values[d − window.dmin]`.
pub fn rate_of_growth_values(values: &[BigDim], window: Window) -> Result<GrowthReport> {
    window.validate()?;
    if values.len() as u64 != window.dmax - window.dmin + 1 {
        return Err(usage!("{} samples do not fill the window", values.len()));
    }
    let samples: Vec<(u64, BigInt)> = window
        .degrees()
        .zip(values)
        .map(|(d, v)| (d, BigInt::from(v.clone())))
        .collect();
    let mut flags = Vec::new();
    let mut classes = class_degrees(&samples, 2);
    if classes.iter().any(|(_, d)| *d == Degree::NotPolynomial) {
        let by4 = class_degrees(&samples, 4);
        if by4.iter().all(|(_, d)| *d != Degree::NotPolynomial) {
            flags.push("period-4".to_string());
        }
        classes = by4;
    }
    let polynomial = classes.iter().all(|(_, d)| *d != Degree::NotPolynomial);
    if !polynomial {
        flags.push("not-polynomial".to_string());
    }
    let top = classes
        .iter()
        .filter_map(|(_, d)| match d {
            Degree::Exact(k) => Some(k + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let constants = (top > 0).then(|| {
        let ratios: Vec<BigRational> = samples
            .iter()
            .map(|(d, v)| BigRational::new(v.clone(), BigInt::from(*d).pow(top - 1)))
            .collect();
        let lo = ratios.iter().min().cloned().expect("nonempty window");
        let hi = ratios.iter().max().cloned().expect("nonempty window");
        (lo, hi)
    });
    Ok(GrowthReport {
        even: merge(&classes, 0),
        odd: merge(&classes, 1),
        c: top,
        window,
        flags,
        constants,
    })
}

/// Rate of growth of a sampler evaluated over the window (in parallel).
pub fn rate_of_growth<F>(sampler: F, window: Window) -> Result<GrowthReport>
where
    F: Fn(u64) -> Result<BigDim> + Sync,
{
    window.validate()?;
    let values: Vec<BigDim> = window
        .degrees()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(&sampler)
        .collect::<Result<_>>()?;
    rate_of_growth_values(&values, window)
}

/// Resolution terms over the window, in order of d.
pub fn sequence(desc: &ModuleDescriptor, window: Window) -> Result<Vec<ResolutionTerm>> {
    window.validate()?;
    let resolver = Resolver::new(desc.clone())?;
    window
        .degrees()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|d| resolver.term(d))
        .collect()
}

fn require_polynomial(report: GrowthReport, what: &str, desc: &ModuleDescriptor) -> Result<GrowthReport> {
    if report.is_polynomial() {
        Ok(report)
    } else {
        Err(Error::Inconsistency(format!(
            "{what} of {desc} show no polynomial growth on [{}, {}]",
            report.window.dmin, report.window.dmax
        )))
    }
}

/// Growth of dim P_d. For bound pairs both sequences must grow at the same
/// rate; the lower sequence's report is returned with the flag "bound-pair".
pub fn complexity_report(desc: &ModuleDescriptor, window: Window) -> Result<GrowthReport> {
    let terms = sequence(desc, window)?;
    complexity_from_terms(desc, &terms, window)
}

pub fn complexity_from_terms(
    desc: &ModuleDescriptor,
    terms: &[ResolutionTerm],
    window: Window,
) -> Result<GrowthReport> {
    let lower: Vec<BigDim> = terms.iter().map(|t| t.dim_lower.clone()).collect();
    let upper: Vec<BigDim> = terms.iter().map(|t| t.dim_upper.clone()).collect();
    let lo = require_polynomial(rate_of_growth_values(&lower, window)?, "dimensions", desc)?;
    if lower == upper {
        return Ok(lo);
    }
    let hi = require_polynomial(rate_of_growth_values(&upper, window)?, "dimension bounds", desc)?;
    if lo.c != hi.c {
        return Err(Error::Inconsistency(format!(
            "lower and upper dimension bounds of {desc} grow at rates {} and {}",
            lo.c, hi.c
        )));
    }
    let mut out = lo;
    out.flags.push("bound-pair".to_string());
    Ok(out)
}

/// Growth of the number of summands of P_d.
pub fn z_report(desc: &ModuleDescriptor, window: Window) -> Result<GrowthReport> {
    let terms = sequence(desc, window)?;
    z_from_terms(desc, &terms, window)
}

pub fn z_from_terms(desc: &ModuleDescriptor, terms: &[ResolutionTerm], window: Window) -> Result<GrowthReport> {
    let counts: Vec<BigDim> = terms.iter().map(|t| BigDim::from(t.count)).collect();
    require_polynomial(rate_of_growth_values(&counts, window)?, "summand counts", desc)
}

pub fn complexity(desc: &ModuleDescriptor, window: Window) -> Result<u32> {
    Ok(complexity_report(desc, window)?.c)
}

pub fn z_complexity(desc: &ModuleDescriptor, window: Window) -> Result<u32> {
    Ok(z_report(desc, window)?.c)
}

/// True when every value lies between the report's constants times d^{c−1}.
pub fn within_constants(report: &GrowthReport) -> bool {
    match &report.constants {
        Some((lo, hi)) => lo.is_positive() && hi >= lo,
        None => report.c == 0,
    }
}
