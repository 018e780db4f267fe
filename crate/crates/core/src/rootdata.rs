//! Root data, the invariant form, ρ, dominance and atypicality.
//!
//! Full root data are built for osp(2|2n) and osp(3|2). For D(2,1;α), G(3)
//! and F(4) a datum only records coordinate labels, the even part and the
//! dimension of the odd part; atypicality there is answered from the block
//! tables in [`crate::blockdata`].

use std::fmt;
use std::str::FromStr;

use num::integer::gcd;
use num::rational::Ratio;
use num::{Signed, Zero};

use crate::blockdata::{self, BlockPosition};
use crate::dimensions::EvenRootSystem;
use crate::error::{usage, Error, Result};

/// Exact rational scalar used for weight coordinates and form values.
pub type Rat = Ratio<i64>;

/// The parameter α of D(2,1;α): either p/q in lowest terms or an irrational value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alpha {
    p: u32,
    q: u32,
    irrational: bool,
}

impl Alpha {
    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if p <= 0 || q <= 0 {
            return Err(Error::Parameter(format!(
                "D(2,1;alpha) needs p, q > 0, got p={p}, q={q}"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(Error::Parameter(format!(
                "D(2,1;alpha) needs gcd(p, q) = 1, got p={p}, q={q}"
            )));
        }
        let conv = |v: i64| u32::try_from(v).map_err(|_| Error::Parameter(format!("{v} too large")));
        Ok(Self {
            p: conv(p)?,
            q: conv(q)?,
            irrational: false,
        })
    }

    pub fn irrational() -> Self {
        Self {
            p: 0,
            q: 0,
            irrational: true,
        }
    }

    pub fn p(&self) -> i64 {
        self.p as i64
    }

    pub fn q(&self) -> i64 {
        self.q as i64
    }

    pub fn is_irrational(&self) -> bool {
        self.irrational
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irrational {
            write!(f, "irrational")
        } else if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// A supported Lie superalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Osp2n { n: usize },
    Osp32,
    D21a(Alpha),
    G3,
    F4,
}

impl Family {
    pub fn osp2n(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("osp(2|2n) needs n >= 1".into()));
        }
        Ok(Family::Osp2n { n })
    }

    pub fn d21a(p: i64, q: i64) -> Result<Self> {
        Ok(Family::D21a(Alpha::rational(p, q)?))
    }

    /// Number of integer coordinates following the first (ε / `a`) coordinate.
    pub fn coeff_len(&self) -> usize {
        match *self {
            Family::Osp2n { n } => n,
            Family::Osp32 => 1,
            Family::D21a(_) | Family::G3 => 2,
            Family::F4 => 3,
        }
    }

    /// dim g_1̄.
    pub fn odd_dim(&self) -> u32 {
        match *self {
            Family::Osp2n { n } => 4 * n as u32,
            Family::Osp32 => 6,
            Family::D21a(_) => 8,
            Family::G3 => 14,
            Family::F4 => 16,
        }
    }

    /// Even part as a product of simple root systems. The centre of
    /// gl(1) ⊕ sp(2n) contributes nothing to dimensions and is dropped.
    pub fn even_part(&self) -> EvenRootSystem {
        use EvenRootSystem::*;
        match *self {
            Family::Osp2n { n } => C(n),
            Family::Osp32 => Product(vec![A1, A1]),
            Family::D21a(_) => Product(vec![A1, A1, A1]),
            Family::G3 => Product(vec![A1, G2]),
            Family::F4 => Product(vec![A1, B3]),
        }
    }

    pub fn is_exceptional(&self) -> bool {
        !matches!(self, Family::Osp2n { .. })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Osp2n { n } => write!(f, "osp(2|{})", 2 * n),
            Family::Osp32 => write!(f, "osp(3|2)"),
            Family::D21a(a) => write!(f, "D(2,1;{a})"),
            Family::G3 => write!(f, "G(3)"),
            Family::F4 => write!(f, "F(4)"),
        }
    }
}

/// A weight: an exact-rational first coordinate followed by integer coordinates.
///
/// For osp(2|2n) this is `λ₋₁ε₁ + Σ λᵢδᵢ`, written `λ₋₁|λ₁,…,λₙ`. For the
/// exceptional families it is the tuple `(a, b, …)` of the block tables,
/// written `a|b,…`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperWeight {
    family: Family,
    eps: Rat,
    coeffs: Vec<i64>,
}

impl SuperWeight {
    pub fn new(family: Family, eps: Rat, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != family.coeff_len() {
            return Err(usage!(
                "{family} weights have {} coordinates after '|', got {}",
                family.coeff_len(),
                coeffs.len()
            ));
        }
        Ok(Self {
            family,
            eps,
            coeffs,
        })
    }

    pub fn integral(family: Family, eps: i64, coeffs: Vec<i64>) -> Result<Self> {
        Self::new(family, Rat::from_integer(eps), coeffs)
    }

    pub fn zero(family: Family) -> Self {
        Self {
            family,
            eps: Rat::zero(),
            coeffs: vec![0; family.coeff_len()],
        }
    }

    /// Parses `a|b1,…,bn` where `a` is an integer or `p/q`.
    pub fn parse(family: Family, text: &str) -> Result<Self> {
        let (head, tail) = text
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("weight {text:?} lacks '|'")))?;
        let eps = parse_rat(head)?;
        let coeffs = if tail.is_empty() {
            Vec::new()
        } else {
            tail.split(',')
                .map(|s| {
                    i64::from_str(s)
                        .map_err(|_| Error::Parse(format!("bad integer {s:?} in weight {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(family, eps, coeffs).map_err(|e| match e {
            Error::Usage(m) => Error::Parse(m),
            other => other,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn eps(&self) -> Rat {
        self.eps
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn eps_integer(&self) -> Option<i64> {
        self.eps.is_integer().then(|| self.eps.to_integer())
    }

    /// All coordinates as rationals, first coordinate first.
    pub fn coords(&self) -> Vec<Rat> {
        std::iter::once(self.eps)
            .chain(self.coeffs.iter().map(|&c| Rat::from_integer(c)))
            .collect()
    }

    fn from_coords(family: Family, coords: &[Rat]) -> Result<Self> {
        let coeffs = coords[1..]
            .iter()
            .map(|c| {
                c.is_integer()
                    .then(|| c.to_integer())
                    .ok_or_else(|| Error::Internal(format!("non-integral coordinate {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(family, coords[0], coeffs)
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        None => i64::from_str(s).map(Rat::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = i64::from_str(p).map_err(|_| bad())?;
            let q = i64::from_str(q).map_err(|_| bad())?;
            if q <= 0 {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

impl fmt::Display for SuperWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|", self.eps)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// A root, in coordinates over the datum's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<i64>,
    pub parity: Parity,
    pub label: String,
}

impl Root {
    fn new(coords: Vec<i64>, parity: Parity, basis: &[String]) -> Self {
        let label = root_label(&coords, basis);
        Self {
            coords,
            parity,
            label,
        }
    }

    fn neg(&self, basis: &[String]) -> Self {
        Self::new(self.coords.iter().map(|c| -c).collect(), self.parity, basis)
    }

    pub fn rat_coords(&self) -> Vec<Rat> {
        self.coords.iter().map(|&c| Rat::from_integer(c)).collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn root_label(coords: &[i64], basis: &[String]) -> String {
    let mut out = String::new();
    for (c, b) in coords.iter().zip(basis) {
        if *c == 0 {
            continue;
        }
        let sign = if *c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = c.unsigned_abs();
        if mag == 1 {
            out.push_str(&format!("{sign}{b}"));
        } else {
            out.push_str(&format!("{sign}{mag}{b}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Roots, form and ρ of a family with an explicit root system.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem {
    pub basis: Vec<String>,
    /// Symmetric form on the basis.
    pub form: Vec<Vec<Rat>>,
    pub even_roots: Vec<Root>,
    pub odd_roots: Vec<Root>,
    pub positive: Vec<Root>,
    pub simple: Vec<Root>,
    /// Half the sum of positive even roots minus half the sum of positive odd roots.
    pub rho: Vec<Rat>,
}

impl RootSystem {
    pub fn pair(&self, v: &[Rat], w: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                acc += *vi * self.form[i][j] * *wj;
            }
        }
        acc
    }

    pub fn positive_odd(&self) -> impl Iterator<Item = &Root> {
        self.positive.iter().filter(|r| r.parity == Parity::Odd)
    }

    pub fn positive_even(&self) -> impl Iterator<Item = &Root> {
        self.positive.iter().filter(|r| r.parity == Parity::Even)
    }

    pub fn is_isotropic(&self, r: &Root) -> bool {
        let c = r.rat_coords();
        self.pair(&c, &c).is_zero()
    }

    /// ρ recomputed from the positive roots.
    pub fn half_sum_rho(&self) -> Vec<Rat> {
        let half = Rat::new(1, 2);
        let mut rho = vec![Rat::zero(); self.basis.len()];
        for r in &self.positive {
            let s = match r.parity {
                Parity::Even => half,
                Parity::Odd => -half,
            };
            for (acc, &c) in rho.iter_mut().zip(&r.coords) {
                *acc += s * Rat::from_integer(c);
            }
        }
        rho
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum {
    pub family: Family,
    /// Names of the weight coordinates, first coordinate first.
    pub labels: Vec<String>,
    pub even_part: EvenRootSystem,
    pub odd_dim: u32,
    /// Present for osp(2|2n) and osp(3|2) only.
    pub system: Option<RootSystem>,
}

impl RootDatum {
    pub fn system(&self) -> Result<&RootSystem> {
        self.system.as_ref().ok_or_else(|| {
            Error::Unsupported(format!(
                "{} carries no explicit root system; use its block tables",
                self.family
            ))
        })
    }

    /// ρ as a weight, when it is integral in the δ-coordinates.
    pub fn rho(&self) -> Result<SuperWeight> {
        let sys = self.system()?;
        SuperWeight::from_coords(self.family, &sys.rho)
    }

    fn check_family(&self, w: &SuperWeight) -> Result<()> {
        if w.family != self.family {
            return Err(usage!(
                "weight {w} belongs to {}, datum is {}",
                w.family,
                self.family
            ));
        }
        Ok(())
    }
}

pub fn build_datum(family: Family) -> Result<RootDatum> {
    match family {
        Family::Osp2n { n } => {
            if n == 0 {
                return Err(Error::Parameter("osp(2|2n) needs n >= 1".into()));
            }
            let mut labels = vec!["e1".to_string()];
            labels.extend((1..=n).map(|i| format!("d{i}")));
            Ok(RootDatum {
                family,
                even_part: family.even_part(),
                odd_dim: family.odd_dim(),
                system: Some(osp2n_system(n, &labels)),
                labels,
            })
        }
        Family::Osp32 => {
            let labels = vec!["e".to_string(), "d".to_string()];
            Ok(RootDatum {
                family,
                even_part: family.even_part(),
                odd_dim: family.odd_dim(),
                system: Some(osp32_system(&labels)),
                labels,
            })
        }
        Family::D21a(alpha) => {
            if !alpha.is_irrational() {
                Alpha::rational(alpha.p(), alpha.q())?;
            }
            Ok(RootDatum {
                family,
                labels: vec!["a".into(), "b".into(), "c".into()],
                even_part: family.even_part(),
                odd_dim: family.odd_dim(),
                system: None,
            })
        }
        Family::G3 => Ok(RootDatum {
            family,
            labels: vec!["a (sl2)".into(), "b (G2 w1)".into(), "c (G2 w2)".into()],
            even_part: family.even_part(),
            odd_dim: family.odd_dim(),
            system: None,
        }),
        Family::F4 => Ok(RootDatum {
            family,
            labels: vec![
                "a (sl2)".into(),
                "m1 (so7 w1)".into(),
                "m2 (so7 w2)".into(),
                "m3 (so7 w3)".into(),
            ],
            even_part: family.even_part(),
            odd_dim: family.odd_dim(),
            system: None,
        }),
    }
}

fn diagonal_form(diag: &[i64]) -> Vec<Vec<Rat>> {
    let m = diag.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { Rat::from_integer(diag[i]) } else { Rat::zero() })
                .collect()
        })
        .collect()
}

fn osp2n_system(n: usize, basis: &[String]) -> RootSystem {
    let dim = n + 1;
    let unit = |i: usize| {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v
    };
    let add = |a: &[i64], b: &[i64], s: i64| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + s * y).collect() };
    let eps = unit(0);
    let delta = |i: usize| unit(i); // δ_i sits at coordinate i, 1 ≤ i ≤ n

    let mut positive = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            positive.push(Root::new(add(&delta(i), &delta(j), 1), Parity::Even, basis));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            positive.push(Root::new(add(&delta(i), &delta(j), -1), Parity::Even, basis));
        }
    }
    for i in 1..=n {
        positive.push(Root::new(add(&eps, &delta(i), -1), Parity::Odd, basis));
        positive.push(Root::new(add(&eps, &delta(i), 1), Parity::Odd, basis));
    }

    let mut simple: Vec<Root> = (1..n)
        .map(|i| Root::new(add(&delta(i), &delta(i + 1), -1), Parity::Even, basis))
        .collect();
    simple.push(Root::new(add(&delta(n), &delta(n), 1), Parity::Even, basis));
    simple.push(Root::new(add(&eps, &delta(1), -1), Parity::Odd, basis));

    let (even_roots, odd_roots) = all_roots(&positive, basis);

    let mut diag = vec![-1i64; dim];
    diag[0] = 1;
    let mut sys = RootSystem {
        basis: basis.to_vec(),
        form: diagonal_form(&diag),
        even_roots,
        odd_roots,
        positive,
        simple,
        rho: Vec::new(),
    };
    // ρ = −nε₁ + Σ (n−i+1)δᵢ
    sys.rho = std::iter::once(Rat::from_integer(-(n as i64)))
        .chain((1..=n).map(|i| Rat::from_integer((n - i + 1) as i64)))
        .collect();
    sys
}

fn osp32_system(basis: &[String]) -> RootSystem {
    let r = |c: [i64; 2], p| Root::new(c.to_vec(), p, basis);
    let positive = vec![
        r([1, 0], Parity::Even),
        r([0, 2], Parity::Even),
        r([0, 1], Parity::Odd),
        r([1, 1], Parity::Odd),
        r([-1, 1], Parity::Odd),
    ];
    let simple = vec![r([-1, 1], Parity::Odd), r([1, 0], Parity::Even)];
    let (even_roots, odd_roots) = all_roots(&positive, basis);
    let mut sys = RootSystem {
        basis: basis.to_vec(),
        form: diagonal_form(&[1, -1]),
        even_roots,
        odd_roots,
        positive,
        simple,
        rho: Vec::new(),
    };
    sys.rho = sys.half_sum_rho();
    sys
}

fn all_roots(positive: &[Root], basis: &[String]) -> (Vec<Root>, Vec<Root>) {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for r in positive {
        let target = match r.parity {
            Parity::Even => &mut even,
            Parity::Odd => &mut odd,
        };
        target.push(r.clone());
        target.push(r.neg(basis));
    }
    (even, odd)
}

pub fn bilinear(datum: &RootDatum, v: &SuperWeight, w: &SuperWeight) -> Result<Rat> {
    datum.check_family(v)?;
    datum.check_family(w)?;
    let sys = datum.system()?;
    Ok(sys.pair(&v.coords(), &w.coords()))
}

/// Membership in the dominant set X⁺ of the family.
///
/// osp(2|2n): the δ-part is a weakly decreasing sequence of nonnegative
/// integers (λ₋₁ arbitrary). The exceptional rules are Kac's: osp(3|2)
/// `(a,b) ∈ ½ℕ × ℕ, b=0 ⇒ a=0`; D(2,1;α) `a=0 ⇒ b=c=0, a=1 ⇒ b+1 = α(c+1)`;
/// G(3) `a=0 ⇒ b=c=0, a≠1, a=2 ⇒ b=0`. F(4) is only checked for
/// nonnegativity.
pub fn is_dominant(datum: &RootDatum, lambda: &SuperWeight) -> bool {
    if lambda.family != datum.family {
        return false;
    }
    let c = lambda.coeffs();
    let a = lambda.eps();
    let nonneg = c.iter().all(|&x| x >= 0);
    match datum.family {
        Family::Osp2n { .. } => nonneg && c.windows(2).all(|w| w[0] >= w[1]),
        Family::Osp32 => {
            let twice = a * Rat::from_integer(2);
            nonneg
                && twice.is_integer()
                && !a.is_negative()
                && (c[0] != 0 || a.is_zero())
        }
        Family::D21a(alpha) => {
            let Some(a) = lambda.eps_integer() else { return false };
            if !nonneg || a < 0 {
                return false;
            }
            if a == 0 {
                return c[0] == 0 && c[1] == 0;
            }
            if a == 1 {
                return !alpha.is_irrational() && alpha.q() * (c[0] + 1) == alpha.p() * (c[1] + 1);
            }
            true
        }
        Family::G3 => {
            let Some(a) = lambda.eps_integer() else { return false };
            nonneg
                && a >= 0
                && a != 1
                && (a != 0 || (c[0] == 0 && c[1] == 0))
                && (a != 2 || c[0] == 0)
        }
        Family::F4 => lambda.eps_integer().is_some_and(|a| a >= 0) && nonneg,
    }
}

/// Result of an atypicality computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atypicality {
    pub degree: u32,
    /// Every positive odd isotropic root orthogonal to λ+ρ (root-search path only).
    pub witnesses: Vec<Root>,
    /// Position in a block table (table path only).
    pub block: Option<BlockPosition>,
}

/// Atypicality of a dominant weight.
///
/// For osp(2|2n) this searches the positive odd isotropic roots γ with
/// (λ+ρ, γ) = 0 and returns the size of a largest pairwise orthogonal subset.
/// For the exceptional families it is table membership.
pub fn atypicality(datum: &RootDatum, lambda: &SuperWeight) -> Result<Atypicality> {
    datum.check_family(lambda)?;
    if !is_dominant(datum, lambda) {
        return Err(usage!("{lambda} is not dominant for {}", datum.family));
    }
    match datum.family {
        Family::Osp2n { .. } => {
            if !lambda.eps().is_integer() {
                return Ok(Atypicality {
                    degree: 0,
                    witnesses: Vec::new(),
                    block: None,
                });
            }
            let sys = datum.system()?;
            let shifted = shifted_coords(sys, lambda);
            let witnesses: Vec<Root> = sys
                .positive_odd()
                .filter(|g| sys.is_isotropic(g) && sys.pair(&shifted, &g.rat_coords()).is_zero())
                .cloned()
                .collect();
            let degree = max_orthogonal_subset(sys, &witnesses);
            Ok(Atypicality {
                degree,
                witnesses,
                block: None,
            })
        }
        Family::F4 => Err(Error::Unsupported(
            "F(4) atypicality needs an external block table; use BlockTable::position".into(),
        )),
        _ => {
            let block = blockdata::locate(lambda)?;
            Ok(Atypicality {
                degree: u32::from(block.is_some()),
                witnesses: Vec::new(),
                block,
            })
        }
    }
}

/// Coordinates of λ+ρ.
pub(crate) fn shifted_coords(sys: &RootSystem, lambda: &SuperWeight) -> Vec<Rat> {
    lambda
        .coords()
        .iter()
        .zip(&sys.rho)
        .map(|(a, b)| a + b)
        .collect()
}

fn max_orthogonal_subset(sys: &RootSystem, roots: &[Root]) -> u32 {
    let m = roots.len();
    debug_assert!(m < 16);
    let coords: Vec<Vec<Rat>> = roots.iter().map(Root::rat_coords).collect();
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let members: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let ok = members.iter().enumerate().all(|(x, &i)| {
            members[x + 1..]
                .iter()
                .all(|&j| sys.pair(&coords[i], &coords[j]).is_zero())
        });
        if ok {
            best = best.max(members.len() as u32);
        }
    }
    best
}
