//! f-coordinates, weight diagrams, cores and block membership for osp(2|2n).
//!
//! With λ+ρ = (a | b₁,…,bₙ) the f-coordinates are f₋₁ = a and fᵢ = −bᵢ. The
//! diagram carries `>` at |f₋₁| (when f₋₁ is an integer) and `<` at each |fᵢ|;
//! a `>` and a `<` on the same position merge into `×`.

use std::collections::BTreeMap;
use std::fmt;

use num::Signed;

use crate::error::{usage, Result};
use crate::rootdata::{atypicality, is_dominant, shifted_coords, Family, Rat, RootDatum, SuperWeight};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FCoords {
    pub f_minus1: Rat,
    pub f: Vec<i64>,
}

impl fmt::Display for FCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|", self.f_minus1)?;
        let parts: Vec<String> = self.f.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

fn osp2n(datum: &RootDatum, lambda: &SuperWeight) -> Result<usize> {
    match datum.family {
        Family::Osp2n { n } if lambda.family() == datum.family => Ok(n),
        Family::Osp2n { .. } => Err(usage!("{lambda} is not a {} weight", datum.family)),
        other => Err(usage!("weight diagrams are defined for osp(2|2n), not {other}")),
    }
}

pub fn f_coords(datum: &RootDatum, lambda: &SuperWeight) -> Result<FCoords> {
    osp2n(datum, lambda)?;
    if !is_dominant(datum, lambda) {
        return Err(usage!("{lambda} is not dominant"));
    }
    let v = shifted_coords(datum.system()?, lambda);
    Ok(FCoords {
        f_minus1: v[0],
        f: v[1..].iter().map(|b| -b.to_integer()).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Gt,
    Lt,
    Times,
    Zero,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Gt => '>',
            Symbol::Lt => '<',
            Symbol::Times => 'x',
            Symbol::Zero => '0',
        }
    }
}

/// Sparse weight diagram; absent positions hold `0`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightDiagram {
    symbols: BTreeMap<u64, Symbol>,
}

impl WeightDiagram {
    pub fn get(&self, pos: u64) -> Symbol {
        self.symbols.get(&pos).copied().unwrap_or(Symbol::Zero)
    }

    /// Nonzero positions in increasing order.
    pub fn marks(&self) -> impl Iterator<Item = (u64, Symbol)> + '_ {
        self.symbols.iter().map(|(&p, &s)| (p, s))
    }

    pub fn count(&self, sym: Symbol) -> usize {
        self.symbols.values().filter(|&&s| s == sym).count()
    }

    /// `pos:sym` pairs sorted by position, e.g. `1:<,2:x`.
    pub fn to_sparse(&self) -> String {
        let parts: Vec<String> = self
            .marks()
            .map(|(p, s)| format!("{p}:{}", s.as_char()))
            .collect();
        parts.join(",")
    }
}

/// Dense form from position 0 to the last mark, e.g. `0,<,x`.
impl fmt::Display for WeightDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.symbols.keys().next_back().copied().unwrap_or(0);
        let cells: Vec<String> = (0..=last).map(|p| self.get(p).as_char().to_string()).collect();
        f.write_str(&cells.join(","))
    }
}

pub fn weight_diagram(fc: &FCoords) -> WeightDiagram {
    let mut symbols = BTreeMap::new();
    for &fi in &fc.f {
        symbols.insert(fi.unsigned_abs(), Symbol::Lt);
    }
    if fc.f_minus1.is_integer() {
        let t = fc.f_minus1.abs().to_integer() as u64;
        let merged = match symbols.get(&t) {
            Some(Symbol::Lt) => Symbol::Times,
            _ => Symbol::Gt,
        };
        symbols.insert(t, merged);
    }
    WeightDiagram { symbols }
}

pub fn diagram_of(datum: &RootDatum, lambda: &SuperWeight) -> Result<WeightDiagram> {
    Ok(weight_diagram(&f_coords(datum, lambda)?))
}

/// Block key: the diagram with every `×` erased, in sparse form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoreId(String);

impl CoreId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CoreId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn core_diagram(d: &WeightDiagram) -> WeightDiagram {
    WeightDiagram {
        symbols: d
            .symbols
            .iter()
            .filter(|(_, &s)| s != Symbol::Times)
            .map(|(&p, &s)| (p, s))
            .collect(),
    }
}

pub fn core(d: &WeightDiagram) -> CoreId {
    CoreId(core_diagram(d).to_sparse())
}

/// Whether two dominant weights lie in the same block.
///
/// Atypical weights are compared by atypicality and core; a typical block
/// consists of a single weight.
pub fn same_block(datum: &RootDatum, lambda: &SuperWeight, mu: &SuperWeight) -> Result<bool> {
    osp2n(datum, lambda)?;
    osp2n(datum, mu)?;
    let (al, am) = (atypicality(datum, lambda)?.degree, atypicality(datum, mu)?.degree);
    if al != am {
        return Ok(false);
    }
    if al == 0 {
        return Ok(lambda == mu);
    }
    Ok(core(&diagram_of(datum, lambda)?) == core(&diagram_of(datum, mu)?))
}

/// The l with λ = 0^{(l)}, if λ is in the principal block.
///
/// 0^{(d)} = (−d | d,0,…,0) and 0^{(−d−1)} = (2n+d | d,0,…,0) for d ≥ 0.
pub fn principal_index(datum: &RootDatum, lambda: &SuperWeight) -> Result<Option<i64>> {
    let n = osp2n(datum, lambda)? as i64;
    if !is_dominant(datum, lambda) {
        return Err(usage!("{lambda} is not dominant"));
    }
    let c = lambda.coeffs();
    let Some(a) = lambda.eps_integer() else {
        return Ok(None);
    };
    if c[1..].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    let d = c[0];
    Ok(if a == -d {
        Some(d)
    } else if a == 2 * n + d {
        Some(-d - 1)
    } else {
        None
    })
}

/// The principal-block weight 0^{(l)} in closed form.
pub fn principal_weight(n: usize, l: i64) -> SuperWeight {
    let family = Family::Osp2n { n };
    let mut c = vec![0; n];
    let eps = if l >= 0 {
        c[0] = l;
        -l
    } else {
        c[0] = -l - 1;
        2 * n as i64 - l - 1
    };
    SuperWeight::integral(family, eps, c).expect("length n")
}

/// All dominant weights with integral ε-coefficient whose diagram is `d`.
///
/// The `<`/`×` positions fix the δ-part; the `>`/`×` position t fixes
/// λ+ρ up to the sign of its ε-coordinate, so there are at most two.
pub fn preimages(datum: &RootDatum, d: &WeightDiagram) -> Result<Vec<SuperWeight>> {
    let n = match datum.family {
        Family::Osp2n { n } => n,
        other => return Err(usage!("weight diagrams are defined for osp(2|2n), not {other}")),
    };
    let mut b: Vec<i64> = d
        .marks()
        .filter(|(_, s)| matches!(s, Symbol::Lt | Symbol::Times))
        .map(|(p, _)| p as i64)
        .collect();
    let t: Vec<i64> = d
        .marks()
        .filter(|(_, s)| matches!(s, Symbol::Gt | Symbol::Times))
        .map(|(p, _)| p as i64)
        .collect();
    if b.len() != n || t.len() != 1 {
        return Ok(Vec::new());
    }
    b.reverse();
    let rho = datum.rho()?;
    let coeffs: Vec<i64> = b.iter().zip(rho.coeffs()).map(|(x, r)| x - r).collect();
    let rho_eps = rho.eps_integer().expect("integral rho");
    let mut signs = vec![t[0]];
    if t[0] != 0 {
        signs.push(-t[0]);
    }
    let mut out = Vec::new();
    for a in signs {
        let w = SuperWeight::integral(datum.family, a - rho_eps, coeffs.clone())?;
        if is_dominant(datum, &w) && diagram_of(datum, &w)? == *d {
            out.push(w);
        }
    }
    Ok(out)
}
