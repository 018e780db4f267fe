//! Weyl dimension formula over the even parts, Kac-module and projective-cover
//! dimensions.
//!
//! The general engine evaluates ∏ (λ+δ, α)/(δ, α) over explicit positive roots
//! and is the reference every closed form in this module is tested against.

use num::{BigInt, BigUint, Integer, One, Zero};

use crate::error::{usage, Error, Result};
use crate::rootdata::{Family, SuperWeight};

/// Arbitrary-precision dimension.
pub type BigDim = BigUint;

/// Even part of a supported superalgebra, as a product of simple types.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EvenRootSystem {
    /// sl₂; highest weight `[m]`.
    A1,
    /// sp(2n); highest weight a partition `[λ₁ ≥ … ≥ λₙ ≥ 0]` in ε-coordinates.
    C(usize),
    /// Highest weight `[m1, m2]` over the fundamental weights (ω₁ short).
    G2,
    /// so₇; highest weight `[m1, m2, m3]` over the fundamental weights (ω₃ spin).
    B3,
    Product(Vec<EvenRootSystem>),
}

/// Integral Euclidean realization: positive roots and the half-sum δ.
///
/// B3 is scaled by 2 so that δ is integral; the Weyl quotient is scale invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub positive_roots: Vec<Vec<i64>>,
    pub delta: Vec<i64>,
}

impl EvenRootSystem {
    /// Number of highest-weight coordinates.
    pub fn rank(&self) -> usize {
        match self {
            EvenRootSystem::A1 => 1,
            EvenRootSystem::C(n) => *n,
            EvenRootSystem::G2 => 2,
            EvenRootSystem::B3 => 3,
            EvenRootSystem::Product(parts) => parts.iter().map(Self::rank).sum(),
        }
    }

    /// Parses `a1`, `c:N`, `g2`, `b3`.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "a1" => Ok(Self::A1),
            "g2" => Ok(Self::G2),
            "b3" => Ok(Self::B3),
            _ => {
                let n = text
                    .strip_prefix("c:")
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown root system {text:?}")))?;
                Ok(Self::C(n))
            }
        }
    }

    /// Realization of a simple factor. Products have none.
    pub fn realization(&self) -> Option<Realization> {
        let unit = |dim: usize, i: usize, s: i64| {
            let mut v = vec![0; dim];
            v[i] = s;
            v
        };
        let plus = |a: Vec<i64>, b: Vec<i64>| -> Vec<i64> { a.iter().zip(&b).map(|(x, y)| x + y).collect() };
        match self {
            EvenRootSystem::A1 => Some(Realization {
                positive_roots: vec![vec![2]],
                delta: vec![1],
            }),
            EvenRootSystem::C(n) => {
                let n = *n;
                let mut roots = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        roots.push(plus(unit(n, i, 1), unit(n, j, -1)));
                        roots.push(plus(unit(n, i, 1), unit(n, j, 1)));
                    }
                    roots.push(unit(n, i, 2));
                }
                Some(Realization {
                    positive_roots: roots,
                    delta: (1..=n as i64).rev().collect(),
                })
            }
            EvenRootSystem::G2 => Some(Realization {
                positive_roots: vec![
                    vec![1, -1, 0],
                    vec![-2, 1, 1],
                    vec![-1, 0, 1],
                    vec![0, -1, 1],
                    vec![1, -2, 1],
                    vec![-1, -1, 2],
                ],
                delta: vec![-1, -2, 3],
            }),
            EvenRootSystem::B3 => {
                let mut roots = Vec::new();
                for i in 0..3 {
                    for j in i + 1..3 {
                        roots.push(plus(unit(3, i, 1), unit(3, j, -1)));
                        roots.push(plus(unit(3, i, 1), unit(3, j, 1)));
                    }
                    roots.push(unit(3, i, 1));
                }
                Some(Realization {
                    positive_roots: roots,
                    delta: vec![5, 3, 1],
                })
            }
            EvenRootSystem::Product(_) => None,
        }
    }

    /// Highest weight in the realization's coordinates.
    fn embed(&self, hw: &[i64]) -> Result<Vec<i64>> {
        let nonneg = hw.iter().all(|&m| m >= 0);
        match self {
            EvenRootSystem::A1 if nonneg => Ok(vec![hw[0]]),
            EvenRootSystem::C(_) if nonneg && hw.windows(2).all(|w| w[0] >= w[1]) => Ok(hw.to_vec()),
            EvenRootSystem::G2 if nonneg => {
                let (m1, m2) = (hw[0], hw[1]);
                Ok(vec![-m2, -m1 - m2, m1 + 2 * m2])
            }
            EvenRootSystem::B3 if nonneg => {
                let (m1, m2, m3) = (hw[0], hw[1], hw[2]);
                Ok(vec![2 * m1 + 2 * m2 + m3, 2 * m2 + m3, m3])
            }
            _ => Err(usage!("{hw:?} is not a dominant highest weight for {self:?}")),
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Weyl dimension formula.
pub fn weyl_dim(sys: &EvenRootSystem, hw: &[i64]) -> Result<BigDim> {
    if hw.len() != sys.rank() {
        return Err(usage!(
            "{sys:?} expects {} highest-weight coordinates, got {}",
            sys.rank(),
            hw.len()
        ));
    }
    if let EvenRootSystem::Product(parts) = sys {
        let mut dim = BigDim::one();
        let mut rest = hw;
        for p in parts {
            let (head, tail) = rest.split_at(p.rank());
            dim *= weyl_dim(p, head)?;
            rest = tail;
        }
        return Ok(dim);
    }
    let real = sys.realization().expect("simple factor");
    let v = sys.embed(hw)?;
    let shifted: Vec<i64> = v.iter().zip(&real.delta).map(|(a, b)| a + b).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for alpha in &real.positive_roots {
        num *= dot(&shifted, alpha);
        den *= dot(&real.delta, alpha);
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal(format!("Weyl product for {hw:?} on {sys:?} is not integral")));
    }
    q.to_biguint()
        .ok_or_else(|| Error::Internal(format!("negative Weyl product for {hw:?} on {sys:?}")))
}

/// dim of the sp(2n)-module with highest weight (r, 0, …, 0).
pub fn sp_row_dim(n: usize, r: u64) -> BigDim {
    let mut hw = vec![0i64; n];
    hw[0] = r as i64;
    weyl_dim(&EvenRootSystem::C(n), &hw).expect("row weights are dominant")
}

fn product_over(factors: &[i64], den: u64) -> BigDim {
    let num = factors
        .iter()
        .fold(BigUint::one(), |acc, &f| acc * BigUint::from(f as u64));
    num / den
}

/// dim of the simple G₂-module m₁ω₁ + m₂ω₂ (ω₁ the 7-dimensional weight).
pub fn g2_dim(m1: u64, m2: u64) -> BigDim {
    let (a, b) = (m1 as i64, m2 as i64);
    product_over(
        &[a + 1, b + 1, a + b + 2, a + 2 * b + 3, a + 3 * b + 4, 2 * a + 3 * b + 5],
        120,
    )
}

/// dim of the simple so₇-module m₁ω₁ + m₂ω₂ + m₃ω₃.
pub fn so7_dim(m1: u64, m2: u64, m3: u64) -> BigDim {
    let (a, b, c) = (m1 as i64, m2 as i64, m3 as i64);
    product_over(
        &[
            a + 1,
            b + 1,
            c + 1,
            a + b + 2,
            b + c + 2,
            2 * b + c + 3,
            a + b + c + 3,
            a + 2 * b + c + 4,
            2 * a + 2 * b + c + 5,
        ],
        720,
    )
}

fn nonneg(v: i64, what: &str, lambda: &SuperWeight) -> Result<u64> {
    u64::try_from(v).map_err(|_| usage!("{what} of {lambda} must be nonnegative"))
}

/// Dimension of the simple g₀̄-module of highest weight λ.
///
/// The first coordinate of an exceptional weight labels the sl₂ factor
/// (dimension a+1); osp(2|2n) ignores the central ε-coordinate.
pub fn g0_dim(family: Family, lambda: &SuperWeight) -> Result<BigDim> {
    if lambda.family() != family {
        return Err(usage!("weight {lambda} is not a {family} weight"));
    }
    if let Family::Osp2n { n } = family {
        return weyl_dim(&EvenRootSystem::C(n), lambda.coeffs());
    }
    let a = lambda
        .eps_integer()
        .ok_or_else(|| Error::Unsupported(format!("non-integral first coordinate in {lambda}")))?;
    let a = BigDim::from(nonneg(a, "first coordinate", lambda)? + 1);
    let c: Vec<u64> = lambda
        .coeffs()
        .iter()
        .map(|&x| nonneg(x, "coordinates", lambda))
        .collect::<Result<_>>()?;
    Ok(match family {
        Family::Osp2n { .. } => unreachable!(),
        Family::Osp32 => a * (c[0] + 1),
        Family::D21a(_) => a * (c[0] + 1) * (c[1] + 1),
        Family::G3 => a * g2_dim(c[0], c[1]),
        Family::F4 => a * so7_dim(c[0], c[1], c[2]),
    })
}

/// dim K(λ) = 2^{2n} · dim L₀(λ) for osp(2|2n).
pub fn kac_dim(n: usize, lambda: &SuperWeight) -> Result<BigDim> {
    if lambda.family() != (Family::Osp2n { n }) {
        return Err(usage!("weight {lambda} is not an osp(2|{}) weight", 2 * n));
    }
    Ok(weyl_dim(&EvenRootSystem::C(n), lambda.coeffs())? << (2 * n))
}

/// δ₁-coefficient of the principal-block weight 0^{(i)}.
pub(crate) fn principal_row(i: i64) -> u64 {
    if i >= 0 {
        i as u64
    } else {
        (-i - 1) as u64
    }
}

/// dim K(0^{(i)}).
pub fn kac_dim_principal(n: usize, i: i64) -> BigDim {
    sp_row_dim(n, principal_row(i)) << (2 * n)
}

/// dim P(0^{(i)}) from the 2-step Kac flag 0 → K^{(i−1)} → P^{(i)} → K^{(i)} → 0.
pub fn proj_dim_principal(n: usize, i: i64) -> BigDim {
    kac_dim_principal(n, i) + kac_dim_principal(n, i - 1)
}

/// (dim S₀̄(λ), 2^{dim g₁̄} · dim S₀̄(λ)): the g₀̄-composition-factor sandwich for dim P(λ).
pub fn proj_dim_bounds(family: Family, lambda: &SuperWeight) -> Result<(BigDim, BigDim)> {
    let lower = g0_dim(family, lambda)?;
    let upper = &lower << family.odd_dim();
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;

    fn big(v: u64) -> BigDim {
        BigDim::from(v)
    }

    fn binom(n: u64, k: u64) -> BigDim {
        (0..k).fold(BigDim::one(), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_examples() {
        assert_eq!(weyl_dim(&EvenRootSystem::A1, &[5]).unwrap(), big(6));
        assert_eq!(weyl_dim(&EvenRootSystem::C(2), &[1, 0]).unwrap(), big(4));
        assert_eq!(weyl_dim(&EvenRootSystem::G2, &[0, 0]).unwrap(), big(1));
        assert_eq!(weyl_dim(&EvenRootSystem::B3, &[0, 0, 0]).unwrap(), big(1));
        assert_eq!(weyl_dim(&EvenRootSystem::G2, &[1, 0]).unwrap(), big(7));
        assert_eq!(weyl_dim(&EvenRootSystem::G2, &[0, 1]).unwrap(), big(14));
        assert_eq!(weyl_dim(&EvenRootSystem::B3, &[1, 0, 0]).unwrap(), big(7));
        assert_eq!(weyl_dim(&EvenRootSystem::B3, &[0, 1, 0]).unwrap(), big(21));
        assert_eq!(weyl_dim(&EvenRootSystem::B3, &[0, 0, 1]).unwrap(), big(8));
        // adjoint of sp(6)
        assert_eq!(weyl_dim(&EvenRootSystem::C(3), &[2, 0, 0]).unwrap(), big(21));
        assert_eq!(weyl_dim(&EvenRootSystem::C(2), &[1, 1]).unwrap(), big(5));
    }

    #[test]
    fn rejects_non_dominant() {
        assert!(matches!(weyl_dim(&EvenRootSystem::C(2), &[0, 1]), Err(Error::Usage(_))));
        assert!(matches!(weyl_dim(&EvenRootSystem::A1, &[-1]), Err(Error::Usage(_))));
        assert!(matches!(weyl_dim(&EvenRootSystem::G2, &[1]), Err(Error::Usage(_))));
    }

    #[test]
    fn sp_rows() {
        assert_eq!(sp_row_dim(1, 3), big(4));
        assert_eq!(sp_row_dim(2, 1), big(4));
        assert_eq!(sp_row_dim(2, 2), big(10));
        // Sym^r of the 2n-dimensional vector representation
        for n in 1..=6u64 {
            for r in 0..40u64 {
                assert_eq!(sp_row_dim(n as usize, r), binom(r + 2 * n - 1, 2 * n - 1), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn trivial_weight_is_one() {
        let mut systems = vec![EvenRootSystem::A1, EvenRootSystem::G2, EvenRootSystem::B3];
        systems.extend((1..=5).map(EvenRootSystem::C));
        for s in systems {
            assert_eq!(weyl_dim(&s, &vec![0; s.rank()]).unwrap(), big(1), "{s:?}");
        }
    }

    #[test]
    fn closed_forms_match_engine() {
        for a in 0..=6 {
            for b in 0..=6 {
                assert_eq!(g2_dim(a, b), weyl_dim(&EvenRootSystem::G2, &[a as i64, b as i64]).unwrap());
                for c in 0..=6 {
                    assert_eq!(
                        so7_dim(a, b, c),
                        weyl_dim(&EvenRootSystem::B3, &[a as i64, b as i64, c as i64]).unwrap()
                    );
                }
            }
        }
    }

    // The printed G2 product carries a repeated factor (m1+3m2+4); it disagrees
    // with the engine already at the 7-dimensional module.
    #[test]
    fn printed_g2_form_diverges() {
        let printed = |a: i64, b: i64| {
            BigRational::new(
                BigInt::from((a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3) * (a + 3 * b + 4).pow(2) * (2 * a + 3 * b + 5)),
                BigInt::from(120),
            )
        };
        assert_eq!(printed(0, 0), BigRational::from_integer(BigInt::from(4)));
        assert_ne!(printed(1, 0), BigRational::from_integer(BigInt::from(7)));
    }

    // The printed sp(2n) row formula gives (r+2)/2 at n=1.
    #[test]
    fn printed_sp_row_form_diverges() {
        let printed = |n: i64, r: i64| {
            let mut num = BigInt::from(2 * n + r);
            let mut den = BigInt::from(2 * n);
            for j in 2..=n {
                num *= (r + j - 1) * (2 * n + r - j + 1);
                den *= (j - 1) * (2 * n - j + 2);
            }
            BigRational::new(num, den)
        };
        assert_eq!(printed(1, 4), BigRational::from_integer(BigInt::from(3)));
        assert_eq!(sp_row_dim(1, 4), big(5));
        assert_ne!(printed(2, 1), BigRational::from_integer(BigInt::from(4)));
    }

    #[test]
    fn g0_dims() {
        let osp32 = SuperWeight::integral(Family::Osp32, 2, vec![3]).unwrap();
        assert_eq!(g0_dim(Family::Osp32, &osp32).unwrap(), big(12));
        let f = Family::osp2n(1).unwrap();
        let w = SuperWeight::integral(f, -2, vec![2]).unwrap();
        assert_eq!(g0_dim(f, &w).unwrap(), big(3));
        let d = Family::d21a(1, 1).unwrap();
        assert_eq!(g0_dim(d, &SuperWeight::zero(d)).unwrap(), big(1));
        let g = SuperWeight::integral(Family::G3, 2, vec![0, 1]).unwrap();
        assert_eq!(g0_dim(Family::G3, &g).unwrap(), big(42));
        let f4 = SuperWeight::integral(Family::F4, 1, vec![0, 0, 1]).unwrap();
        assert_eq!(g0_dim(Family::F4, &f4).unwrap(), big(16));
        assert!(g0_dim(Family::G3, &osp32).is_err());
    }

    #[test]
    fn kac_dims() {
        let f1 = Family::osp2n(1).unwrap();
        let f2 = Family::osp2n(2).unwrap();
        assert_eq!(kac_dim(1, &SuperWeight::integral(f1, -2, vec![2]).unwrap()).unwrap(), big(12));
        assert_eq!(kac_dim(2, &SuperWeight::zero(f2)).unwrap(), big(16));
        assert_eq!(kac_dim(2, &SuperWeight::integral(f2, 4, vec![0, 0]).unwrap()).unwrap(), big(16));
        assert!(kac_dim(2, &SuperWeight::integral(f2, 0, vec![0, 1]).unwrap()).is_err());
    }

    #[test]
    fn projective_principal() {
        assert_eq!(proj_dim_principal(1, 0), big(8));
        assert_eq!(proj_dim_principal(1, 1), big(12));
        assert_eq!(proj_dim_principal(2, 0), big(32));
        // independent: K dims through kac_dim on explicit weights
        for n in 1..=3 {
            let f = Family::osp2n(n).unwrap();
            let weight = |i: i64| {
                let mut c = vec![0; n];
                if i >= 0 {
                    c[0] = i;
                    SuperWeight::integral(f, -i, c).unwrap()
                } else {
                    c[0] = -i - 1;
                    SuperWeight::integral(f, 2 * n as i64 - i - 1, c).unwrap()
                }
            };
            for i in -20..=20 {
                let expect = kac_dim(n, &weight(i)).unwrap() + kac_dim(n, &weight(i - 1)).unwrap();
                assert_eq!(proj_dim_principal(n, i), expect);
            }
        }
    }

    #[test]
    fn bounds() {
        let l3 = SuperWeight::integral(Family::Osp32, 2, vec![3]).unwrap();
        assert_eq!(proj_dim_bounds(Family::Osp32, &l3).unwrap(), (big(12), big(12 << 6)));
        for fam in [Family::Osp32, Family::d21a(2, 3).unwrap(), Family::G3, Family::F4] {
            let (lo, hi) = proj_dim_bounds(fam, &SuperWeight::zero(fam)).unwrap();
            assert_eq!(lo, big(1));
            assert_eq!(hi, big(1) << fam.odd_dim());
        }
    }

    #[test]
    fn row_dims_have_degree_2n_minus_1() {
        for n in 1..=5usize {
            let mut seq: Vec<BigInt> = (0..=4 * n as u64).map(|r| BigInt::from(sp_row_dim(n, r))).collect();
            let mut degree = 0;
            while seq.iter().any(|v| !v.is_zero()) {
                seq = seq.windows(2).map(|w| &w[1] - &w[0]).collect();
                degree += 1;
            }
            assert_eq!(degree - 1, 2 * n - 1, "n={n}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn c_dims_positive_and_integral(n in 1usize..5, mut hw in proptest::collection::vec(0i64..12, 4)) {
                let mut hw: Vec<i64> = hw.drain(..n).collect();
                hw.sort_unstable_by(|a, b| b.cmp(a));
                let d = weyl_dim(&EvenRootSystem::C(n), &hw).unwrap();
                prop_assert!(d >= BigDim::one());
            }

            #[test]
            fn products_multiply(a in 0i64..20, b in 0i64..8, c in 0i64..8) {
                let p = EvenRootSystem::Product(vec![EvenRootSystem::A1, EvenRootSystem::G2]);
                let d = weyl_dim(&p, &[a, b, c]).unwrap();
                prop_assert_eq!(d, BigDim::from((a + 1) as u64) * g2_dim(b as u64, c as u64));
            }
        }
    }
}
