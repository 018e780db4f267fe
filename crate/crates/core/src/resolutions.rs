//! Terms of minimal projective resolutions.
//!
//! Every block in scope has an Ext-quiver of one of two shapes (see
//! [`BlockShape`]) and projective indecomposables of Loewy length three, so the
//! heads of consecutive syzygies satisfy t_{d+1} = A·t_d − t_{d−1} with A the
//! adjacency operator of the quiver. [`term`] evaluates the closed forms of
//! these recursions; [`zigzag_term`] runs the recursion itself and serves as
//! an independent oracle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num::Zero;
use serde_json::{json, Value};

use crate::blockdata::{BlockShape, BlockTable};
use crate::dimensions::{g0_dim, kac_dim, proj_dim_bounds, proj_dim_principal, BigDim};
use crate::error::{Error, Result};
use crate::rootdata::{atypicality, build_datum, Alpha, Family, SuperWeight};

/// A module whose resolution the engine knows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleDescriptor {
    /// The simple module L(0^{(label)}) of osp(2|2n).
    SimplePrincipal { n: usize, label: i64 },
    /// The Kac module K(0^{(label)}) of osp(2|2n).
    KacPrincipal { n: usize, label: i64 },
    Osp32Simple { label: i64 },
    /// S(λ_{k,label}) of D(2,1;α); k = 0 uses the principal-block labels λ₀, λ₁, ….
    D21aSimple { alpha: Alpha, k: i64, label: i64 },
    G3Simple { k: i64, label: i64 },
    F4Simple { table: Arc<BlockTable>, label: i64 },
    /// A typical simple (hence projective) module.
    Typical { weight: SuperWeight },
}

impl ModuleDescriptor {
    pub fn family(&self) -> Family {
        match self {
            Self::SimplePrincipal { n, .. } | Self::KacPrincipal { n, .. } => Family::Osp2n { n: *n },
            Self::Osp32Simple { .. } => Family::Osp32,
            Self::D21aSimple { alpha, .. } => Family::D21a(*alpha),
            Self::G3Simple { .. } => Family::G3,
            Self::F4Simple { .. } => Family::F4,
            Self::Typical { weight } => weight.family(),
        }
    }

    pub fn is_kac(&self) -> bool {
        matches!(self, Self::KacPrincipal { .. })
    }

    /// The block table of an exceptional-family descriptor.
    pub fn block(&self) -> Result<Option<BlockTable>> {
        Ok(match self {
            Self::Osp32Simple { .. } => Some(BlockTable::osp32()),
            Self::D21aSimple { alpha, k, .. } => Some(BlockTable::d21a(*alpha, *k)?),
            Self::G3Simple { k, .. } => Some(BlockTable::g3(*k)?),
            Self::F4Simple { table, .. } => Some((**table).clone()),
            _ => None,
        })
    }

    pub fn provenance(&self) -> Option<&'static str> {
        match self {
            Self::F4Simple { table, .. } => table.provenance(),
            _ => None,
        }
    }

    /// Checks indices against the block's label range and the family parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::SimplePrincipal { n, .. } | Self::KacPrincipal { n, .. } => {
                Family::osp2n(*n)?;
            }
            Self::Typical { weight } => {
                let datum = build_datum(weight.family())?;
                if weight.family().is_exceptional() {
                    if !crate::rootdata::is_dominant(&datum, weight) {
                        return Err(Error::Usage(format!("{weight} is not dominant")));
                    }
                    if weight.family() != Family::F4 && crate::blockdata::locate(weight)?.is_some() {
                        return Err(Error::Usage(format!("{weight} is atypical")));
                    }
                } else if atypicality(&datum, weight)?.degree != 0 {
                    return Err(Error::Usage(format!("{weight} is atypical")));
                }
            }
            _ => {
                let table = self.block()?.expect("exceptional descriptor");
                let label = self.label().expect("labelled");
                if !table.contains(label) {
                    return Err(Error::Usage(format!("label {label} is outside {table}")));
                }
            }
        }
        Ok(())
    }

    fn label(&self) -> Option<i64> {
        match self {
            Self::SimplePrincipal { label, .. }
            | Self::KacPrincipal { label, .. }
            | Self::Osp32Simple { label }
            | Self::D21aSimple { label, .. }
            | Self::G3Simple { label, .. }
            | Self::F4Simple { label, .. } => Some(*label),
            Self::Typical { .. } => None,
        }
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SimplePrincipal { n, label } => write!(f, "L(0^({label})) over osp(2|{})", 2 * n),
            Self::KacPrincipal { n, label } => write!(f, "K(0^({label})) over osp(2|{})", 2 * n),
            Self::Osp32Simple { label } => write!(f, "S(lambda_{label}) over osp(3|2)"),
            Self::D21aSimple { alpha, k, label } => write!(f, "S(lambda_{{{k},{label}}}) over D(2,1;{alpha})"),
            Self::G3Simple { k, label } => write!(f, "S(lambda_{{{k},{label}}}) over G(3)"),
            Self::F4Simple { label, .. } => write!(f, "S(lambda_{label}) over F(4)"),
            Self::Typical { weight } => write!(f, "L({weight}) over {}", weight.family()),
        }
    }
}

/// Label of an indecomposable projective summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// P(0^{(i)}) in the osp(2|2n) principal block.
    Principal(i64),
    /// P(λ_{k,l}) in an exceptional block table.
    Block { k: i64, l: i64 },
    /// The projective cover of a typical simple module (the module itself).
    Weight(SuperWeight),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Principal(i) => write!(f, "0^({i})"),
            Label::Block { k: 0, l } => write!(f, "lambda_{l}"),
            Label::Block { k, l } => write!(f, "lambda_{{{k},{l}}}"),
            Label::Weight(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionTerm {
    pub d: u64,
    /// Summands with multiplicity ≥ 1, sorted by label.
    pub summands: Vec<(Label, u64)>,
    pub dim_lower: BigDim,
    pub dim_upper: BigDim,
    pub count: u64,
    pub provenance: Option<&'static str>,
}

impl ResolutionTerm {
    /// `{"count","d","dim_lower","dim_upper","summands":[{"label","mult"}]}` plus
    /// `"provenance"` for terms built on external tables.
    pub fn to_json(&self) -> Value {
        let summands: Vec<Value> = self
            .summands
            .iter()
            .map(|(l, m)| json!({"label": l.to_string(), "mult": m}))
            .collect();
        let mut v = json!({
            "d": self.d,
            "summands": summands,
            "dim_lower": self.dim_lower.to_string(),
            "dim_upper": self.dim_upper.to_string(),
            "count": self.count,
        });
        if let Some(p) = self.provenance {
            v["provenance"] = json!(p);
        }
        v
    }

    pub fn multiset(&self) -> BTreeMap<Label, u64> {
        self.summands.iter().cloned().collect()
    }
}

/// Ext-quiver of a block, as an adjacency operator on labels.
pub trait ExtQuiver {
    fn neighbours(&self, v: i64) -> Vec<i64>;
}

impl ExtQuiver for BlockShape {
    fn neighbours(&self, v: i64) -> Vec<i64> {
        match self {
            BlockShape::Chain => vec![v - 1, v + 1],
            BlockShape::Fork => match v {
                0 | 1 => vec![2],
                2 => vec![0, 1, 3],
                _ => vec![v - 1, v + 1],
            },
        }
    }
}

/// Heads of the syzygies Ω⁰ … Ω^{dmax} of the simple at `start`, by the
/// recursion t_{d+1} = A·t_d − t_{d−1}.
pub fn zigzag_heads(quiver: &impl ExtQuiver, start: i64, dmax: u64) -> Result<Vec<BTreeMap<i64, u64>>> {
    let mut out: Vec<BTreeMap<i64, u64>> = vec![BTreeMap::from([(start, 1)])];
    let mut prev: BTreeMap<i64, i64> = BTreeMap::new();
    let mut cur: BTreeMap<i64, i64> = BTreeMap::from([(start, 1)]);
    for d in 1..=dmax {
        let mut next: BTreeMap<i64, i64> = BTreeMap::new();
        for (&v, &m) in &cur {
            for u in quiver.neighbours(v) {
                *next.entry(u).or_default() += m;
            }
        }
        for (&v, &m) in &prev {
            *next.entry(v).or_default() -= m;
        }
        next.retain(|_, m| *m != 0);
        if let Some((v, m)) = next.iter().find(|(_, m)| **m < 0) {
            return Err(Error::Internal(format!("negative multiplicity {m} at {v} in step {d}")));
        }
        out.push(next.iter().map(|(&v, &m)| (v, m as u64)).collect());
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(out)
}

/// Oracle term for L(0^{(l)}) over osp(2|2n): the recursion on the ℤ-chain.
pub fn zigzag_term(n: usize, l: i64, d: u64) -> Result<ResolutionTerm> {
    let heads = zigzag_heads(&BlockShape::Chain, l, d)?.pop().expect("nonempty");
    let summands = heads.into_iter().map(|(i, m)| (Label::Principal(i), m)).collect();
    let desc = ModuleDescriptor::SimplePrincipal { n, label: l };
    Resolver::new(desc)?.finish(d, summands)
}

/// Heads of P_d by closed form, as (label, multiplicity).
fn closed_form(desc: &ModuleDescriptor, d: u64) -> Result<Vec<(Label, u64)>> {
    let di = d as i64;
    Ok(match desc {
        ModuleDescriptor::SimplePrincipal { label, .. } => (0..=di)
            .map(|j| (Label::Principal(label - di + 2 * j), 1))
            .collect(),
        ModuleDescriptor::KacPrincipal { label, .. } => vec![(Label::Principal(label - di), 1)],
        ModuleDescriptor::Typical { weight } => {
            if d == 0 {
                vec![(Label::Weight(weight.clone()), 1)]
            } else {
                Vec::new()
            }
        }
        _ => {
            let table = desc.block()?.expect("exceptional descriptor");
            let label = desc.label().expect("labelled");
            let k = table.k();
            let labels = match table.shape() {
                BlockShape::Chain => (0..=di).map(|j| (label - di + 2 * j, 1)).collect(),
                BlockShape::Fork => fork_term(label, di),
            };
            labels.into_iter().map(|(l, m)| (Label::Block { k, l }, m)).collect()
        }
    })
}

/// P_d for the simple at node `label` of the fork quiver.
///
/// Nodes 0 and 1 alternate at the bottom of the even terms; for label ≥ 2 the
/// term is the ℤ-chain zigzag from a = label−1 folded along m ↦ |m|, with the
/// fixed point m = 0 splitting into nodes 0 and 1.
fn fork_term(label: i64, d: i64) -> Vec<(i64, u64)> {
    let mut out = Vec::new();
    if label <= 1 {
        if d == 0 {
            return vec![(label, 1)];
        }
        let mut top = d + 1;
        let bottom = if d % 2 == 1 { 2 } else { 3 };
        while top >= bottom {
            out.push((top, 1));
            top -= 2;
        }
        if d % 2 == 0 {
            let tail = if (d % 4 == 0) == (label == 0) { 0 } else { 1 };
            out.push((tail, 1));
        }
        out.reverse();
        return out;
    }
    let a = label - 1;
    if a <= d && (a - d) % 2 == 0 {
        out.push((0, 1));
        out.push((1, 1));
    }
    let first = if (a + d) % 2 == 0 { 2 } else { 1 };
    let mut m = first;
    while m <= a + d {
        let mult = u64::from((m - a).abs() <= d) + u64::from(m + a <= d);
        if mult > 0 {
            out.push((m + 1, mult));
        }
        m += 2;
    }
    out
}

/// Evaluates terms of one descriptor, caching summand dimensions.
#[derive(Debug)]
pub struct Resolver {
    desc: ModuleDescriptor,
    table: Option<BlockTable>,
    cache: RwLock<HashMap<Label, (BigDim, BigDim)>>,
}

impl Resolver {
    pub fn new(desc: ModuleDescriptor) -> Result<Self> {
        desc.validate()?;
        let table = desc.block()?;
        Ok(Self {
            desc,
            table,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn descriptor(&self) -> &ModuleDescriptor {
        &self.desc
    }

    /// (lower, upper) bounds for dim P(label); equal when exact.
    pub fn summand_dims(&self, label: &Label) -> Result<(BigDim, BigDim)> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(label) {
            return Ok(hit.clone());
        }
        let family = self.desc.family();
        let dims = match (label, &self.table) {
            (Label::Principal(i), _) => {
                let Family::Osp2n { n } = family else { unreachable!() };
                let p = proj_dim_principal(n, *i);
                (p.clone(), p)
            }
            (Label::Block { l, .. }, Some(table)) => proj_dim_bounds(family, &table.weight_at(*l)?)?,
            (Label::Weight(w), _) => match family {
                Family::Osp2n { n } => {
                    let k = kac_dim(n, w)?;
                    (k.clone(), k)
                }
                _ => {
                    let g0 = g0_dim(family, w)?;
                    let hi = &g0 << family.odd_dim();
                    (g0, hi)
                }
            },
            (Label::Block { .. }, None) => {
                return Err(Error::Internal(format!("block label {label} without a table")))
            }
        };
        self.cache
            .write()
            .expect("cache lock")
            .insert(label.clone(), dims.clone());
        Ok(dims)
    }

    pub fn term(&self, d: u64) -> Result<ResolutionTerm> {
        let summands = closed_form(&self.desc, d)?;
        self.finish(d, summands)
    }

    fn finish(&self, d: u64, mut summands: Vec<(Label, u64)>) -> Result<ResolutionTerm> {
        summands.sort();
        let mut lower = BigDim::zero();
        let mut upper = BigDim::zero();
        let mut count = 0;
        for (label, mult) in &summands {
            let (lo, hi) = self.summand_dims(label)?;
            lower += lo * *mult;
            upper += hi * *mult;
            count += mult;
        }
        Ok(ResolutionTerm {
            d,
            summands,
            dim_lower: lower,
            dim_upper: upper,
            count,
            provenance: self.desc.provenance(),
        })
    }
}

/// P_d of the minimal projective resolution of `desc`.
pub fn term(desc: &ModuleDescriptor, d: u64) -> Result<ResolutionTerm> {
    Resolver::new(desc.clone())?.term(d)
}

pub fn term_dim_bounds(desc: &ModuleDescriptor, d: u64) -> Result<(BigDim, BigDim)> {
    let t = term(desc, d)?;
    Ok((t.dim_lower, t.dim_upper))
}

/// Oracle for any labelled descriptor: the recursion on the block's quiver.
pub fn zigzag_for(desc: &ModuleDescriptor, dmax: u64) -> Result<Vec<ResolutionTerm>> {
    let resolver = Resolver::new(desc.clone())?;
    let (shape, k) = match (&resolver.table, desc) {
        (Some(t), _) => (t.shape(), t.k()),
        (None, ModuleDescriptor::SimplePrincipal { .. }) => (BlockShape::Chain, 0),
        _ => return Err(Error::Unsupported(format!("no Ext-quiver oracle for {desc}"))),
    };
    let start = desc.label().expect("labelled");
    zigzag_heads(&shape, start, dmax)?
        .into_iter()
        .enumerate()
        .map(|(d, heads)| {
            let summands = heads
                .into_iter()
                .map(|(l, m)| {
                    let label = match desc {
                        ModuleDescriptor::SimplePrincipal { .. } => Label::Principal(l),
                        _ => Label::Block { k, l },
                    };
                    (label, m)
                })
                .collect();
            resolver.finish(d as u64, summands)
        })
        .collect()
}
