//! The L-operator λ ↦ λ^L = ω(λ+ρ−kγ) − ρ on atypical dominant weights of
//! osp(2|2n), its inverse and its powers λ^{(l)}.
//!
//! γ is the unique positive odd root orthogonal to λ+ρ, k ≥ 1 is minimal such
//! that λ+ρ−kγ is regular for the even roots (its δ-entries are nonzero and
//! pairwise distinct in absolute value), and ω is the signed permutation
//! sorting those entries to a strictly decreasing positive sequence.

use std::fmt;

use num::Signed;

use crate::error::{Error, Result};
use crate::rootdata::{atypicality, build_datum, shifted_coords, Family, Rat, Root, RootDatum, SuperWeight};

/// Signed permutation of the δ-coordinates: `out[i] = signs[i] * in[perm[i]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&j, &s)| s as i64 * v[j])
            .collect()
    }

    fn sorting(v: &[i64]) -> Self {
        let mut perm: Vec<usize> = (0..v.len()).collect();
        perm.sort_by_key(|&j| std::cmp::Reverse(v[j].abs()));
        let signs = perm.iter().map(|&j| if v[j] < 0 { -1 } else { 1 }).collect();
        Self { perm, signs }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(j, s)| format!("{}d{}", if *s < 0 { "-" } else { "" }, j + 1))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LStep {
    pub gamma: Root,
    pub k: i64,
    pub omega: SignedPermutation,
}

fn require_osp2n(datum: &RootDatum) -> Result<usize> {
    match datum.family {
        Family::Osp2n { n } => Ok(n),
        other => Err(Error::Unsupported(format!("the L-operator is defined for osp(2|2n), not {other}"))),
    }
}

fn is_regular(b: &[i64]) -> bool {
    let mut abs: Vec<i64> = b.iter().map(|x| x.abs()).collect();
    abs.sort_unstable();
    abs[0] != 0 && abs.windows(2).all(|w| w[0] != w[1])
}

/// λ^L together with the data (γ, k, ω) used to produce it.
pub fn l_op(datum: &RootDatum, lambda: &SuperWeight) -> Result<(SuperWeight, LStep)> {
    require_osp2n(datum)?;
    let atyp = atypicality(datum, lambda)?;
    match atyp.witnesses.len() {
        0 => return Err(Error::Domain(format!("{lambda} is typical"))),
        1 => {}
        m => return Err(Error::Internal(format!("{lambda} has {m} odd witnesses"))),
    }
    let gamma = atyp.witnesses[0].clone();
    let sys = datum.system()?;
    let v: Vec<i64> = shifted_coords(sys, lambda).iter().map(Rat::to_integer).collect();

    let cap = 4 * lambda.coeffs().len() as i64
        + lambda.coeffs().iter().map(|c| c.abs()).sum::<i64>()
        + lambda.eps().abs().ceil().to_integer()
        + 4;
    let k = (1..=cap)
        .find(|k| {
            let b: Vec<i64> = v[1..].iter().zip(&gamma.coords[1..]).map(|(x, g)| x - k * g).collect();
            is_regular(&b)
        })
        .ok_or_else(|| Error::Internal(format!("no regular shift for {lambda} within k <= {cap}")))?;

    let shifted: Vec<i64> = v.iter().zip(&gamma.coords).map(|(x, g)| x - k * g).collect();
    let omega = SignedPermutation::sorting(&shifted[1..]);
    let rho = datum.rho()?;
    let eps = shifted[0] - rho.eps_integer().expect("integral rho");
    let coeffs: Vec<i64> = omega
        .apply(&shifted[1..])
        .iter()
        .zip(rho.coeffs())
        .map(|(x, r)| x - r)
        .collect();
    let result = SuperWeight::integral(datum.family, eps, coeffs)?;
    Ok((result, LStep { gamma, k, omega }))
}

/// σ(μ) = β − ω₀μ with β = 2nε₁ and ω₀ = −1 on the δ-space, followed by ω₀⁻¹
/// on the way back; on λ+ρ it is the reflection of the ε-coordinate.
fn sigma(n: usize, mu: &SuperWeight) -> SuperWeight {
    SuperWeight::new(mu.family(), Rat::from_integer(2 * n as i64) - mu.eps(), mu.coeffs().to_vec())
        .expect("same shape")
}

/// μ^{L⁻¹} = ω₀⁻¹(β − (β − ω₀μ)^L). The result is checked against `l_op`.
pub fn l_inv(datum: &RootDatum, mu: &SuperWeight) -> Result<SuperWeight> {
    let n = require_osp2n(datum)?;
    let (image, _) = l_op(datum, &sigma(n, mu))?;
    let candidate = sigma(n, &image);
    let (back, _) = l_op(datum, &candidate)
        .map_err(|e| Error::Internal(format!("inverse of {mu} gave {candidate}, outside the domain: {e}")))?;
    if back != *mu {
        return Err(Error::Internal(format!(
            "inverse of {mu} gave {candidate}, but its L-image is {back}"
        )));
    }
    Ok(candidate)
}

/// λ^{(l)}: l applications of L (l ≥ 0) or −l of L⁻¹.
pub fn l_power(datum: &RootDatum, lambda: &SuperWeight, l: i64) -> Result<SuperWeight> {
    let mut cur = lambda.clone();
    for _ in 0..l.unsigned_abs() {
        cur = if l > 0 { l_op(datum, &cur)?.0 } else { l_inv(datum, &cur)? };
    }
    Ok(cur)
}

/// λ^{(l)} for l in `from..=to`, walking outward from λ.
pub fn orbit(datum: &RootDatum, lambda: &SuperWeight, from: i64, to: i64) -> Result<Vec<(i64, SuperWeight)>> {
    let start = l_power(datum, lambda, from)?;
    let mut out = vec![(from, start)];
    for l in from + 1..=to {
        let next = l_op(datum, &out.last().unwrap().1)?.0;
        out.push((l, next));
    }
    Ok(out)
}

/// Convenience for osp(2|2n).
pub fn datum(n: usize) -> Result<RootDatum> {
    build_datum(Family::osp2n(n)?)
}
