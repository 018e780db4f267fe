//! Atypical blocks of the exceptional families as closed-form weight tables.
//!
//! osp(3|2), D(2,1;α) (principal block), G(3) and F(4) blocks are indexed by
//! l ∈ ℕ and share the Ext-quiver of the osp(3|2) principal block: a ray
//! 2 − 3 − 4 − ⋯ whose end node 2 is joined to both λ₀ and λ₁. The
//! non-principal blocks Γ_k (k ≥ 1) of D(2,1;α) with rational α are indexed by
//! l ∈ ℤ and form a two-sided chain.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{usage, Error, Result};
use crate::rootdata::{Alpha, Family, Rat, SuperWeight};

/// λ_l of the osp(3|2) principal block: λ₀ = (0,0), λ_l = (l−1, l).
pub fn osp32_lambda(l: i64) -> Result<SuperWeight> {
    if l < 0 {
        return Err(usage!("osp(3|2) block index must be nonnegative, got {l}"));
    }
    let (a, b) = if l == 0 { (0, 0) } else { (l - 1, l) };
    SuperWeight::integral(Family::Osp32, a, vec![b])
}

/// λ_{k,l} of the D(2,1;p/q) block Γ_k, as the raw four-branch table.
pub fn d21a_lambda(p: i64, q: i64, k: i64, l: i64) -> Result<SuperWeight> {
    let family = Family::d21a(p, q).map_err(|e| usage!("{e}"))?;
    if k < 0 {
        return Err(usage!("block index k must be nonnegative, got {k}"));
    }
    let (kp, kq) = (k * p, k * q);
    let t = if l <= -kp {
        (-l + 2, -l - kp, -l + kq)
    } else if l <= 0 {
        (-l + 1, l + kp - 1, -l + kq - 1)
    } else if l < kq {
        (l + 1, l + kp - 1, -l + kq - 1)
    } else {
        (l + 2, l + kp, l - kq)
    };
    SuperWeight::integral(family, t.0, vec![t.1, t.2])
}

/// Every branch of the D(2,1;α) table whose condition holds at (k, l).
pub(crate) fn d21a_branches(p: i64, q: i64, k: i64, l: i64) -> Vec<(i64, i64, i64)> {
    let (kp, kq) = (k * p, k * q);
    let mut out = Vec::new();
    if l <= -kp {
        out.push((-l + 2, -l - kp, -l + kq));
    }
    if -kp < l && l <= 0 {
        out.push((-l + 1, l + kp - 1, -l + kq - 1));
    }
    if 0 <= l && l < kq {
        out.push((l + 1, l + kp - 1, -l + kq - 1));
    }
    if kq <= l {
        out.push((l + 2, l + kp, l - kq));
    }
    out
}

/// λ_{k,l} of the G(3) block Γ_k.
pub fn g3_lambda(k: i64, l: i64) -> Result<SuperWeight> {
    if k < 0 || l < 0 {
        return Err(usage!("G(3) block indices must be nonnegative, got k={k}, l={l}"));
    }
    let t = match (k, l) {
        (0, 0) => (0, 0, 0),
        (0, 1) => (5, 0, 0),
        (_, 0) => (2, 0, k - 1),
        (_, 1) => (3, 0, k - 1),
        _ if l <= k => (l + 2, 2 * l - 2, k - l),
        _ if l <= 3 * k => (l + 3, 3 * k - l, l - k - 1),
        _ => (l + 4, l - 3 * k - 1, 2 * k),
    };
    SuperWeight::integral(Family::G3, t.0, vec![t.1, t.2])
}

/// Shape of a block's Ext-quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockShape {
    /// Labels l ≥ 0; edges 0–2, 1–2 and j–(j+1) for j ≥ 2.
    Fork,
    /// Labels l ∈ ℤ; edges j–(j+1).
    Chain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Source {
    Osp32,
    D21aPrincipal(Alpha),
    D21a { p: i64, q: i64, k: i64 },
    G3 { k: i64 },
    External(Vec<SuperWeight>),
}

/// One atypical block: its labels, their weights and metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTable {
    family: Family,
    k: i64,
    casimir: Option<Rat>,
    source: Source,
}

/// Location of a weight inside a block table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockPosition {
    pub k: i64,
    pub index: i64,
}

impl BlockTable {
    pub fn osp32() -> Self {
        Self {
            family: Family::Osp32,
            k: 0,
            casimir: None,
            source: Source::Osp32,
        }
    }

    /// Block Γ_k of D(2,1;α). For k = 0 the labels are those of the principal
    /// block: λ₀ = 0 and λ_j = λ_{0,j−1} = (j+1, j−1, j−1). Irrational α has
    /// only this block.
    pub fn d21a(alpha: Alpha, k: i64) -> Result<Self> {
        let family = Family::D21a(alpha);
        if k < 0 {
            return Err(usage!("block index k must be nonnegative, got {k}"));
        }
        if alpha.is_irrational() {
            if k != 0 {
                return Err(usage!("irrational alpha has only the principal block"));
            }
            return Ok(Self {
                family,
                k,
                casimir: None,
                source: Source::D21aPrincipal(alpha),
            });
        }
        let (p, q) = (alpha.p(), alpha.q());
        let casimir = Some(Rat::new(p * (p + q) * k * k, 2));
        let source = if k == 0 {
            Source::D21aPrincipal(alpha)
        } else {
            Source::D21a { p, q, k }
        };
        Ok(Self {
            family,
            k,
            casimir,
            source,
        })
    }

    pub fn g3(k: i64) -> Result<Self> {
        if k < 0 {
            return Err(usage!("block index k must be nonnegative, got {k}"));
        }
        Ok(Self {
            family: Family::G3,
            k,
            casimir: Some(Rat::from_integer(6 * k * (k + 1))),
            source: Source::G3 { k },
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// Casimir eigenvalue on the block, where the family records one.
    pub fn casimir_eigenvalue(&self) -> Option<Rat> {
        self.casimir
    }

    pub fn shape(&self) -> BlockShape {
        match self.source {
            Source::D21a { .. } => BlockShape::Chain,
            _ => BlockShape::Fork,
        }
    }

    /// "external" for tables read from a file.
    pub fn provenance(&self) -> Option<&'static str> {
        matches!(self.source, Source::External(_)).then_some("external")
    }

    /// Inclusive label range, `None` meaning unbounded on that side.
    pub fn range(&self) -> (Option<i64>, Option<i64>) {
        match &self.source {
            Source::D21a { .. } => (None, None),
            Source::External(rows) => (Some(0), Some(rows.len() as i64 - 1)),
            _ => (Some(0), None),
        }
    }

    pub fn contains(&self, l: i64) -> bool {
        let (lo, hi) = self.range();
        lo.is_none_or(|lo| l >= lo) && hi.is_none_or(|hi| l <= hi)
    }

    pub fn weight_at(&self, l: i64) -> Result<SuperWeight> {
        if !self.contains(l) {
            return Err(Error::Unsupported(format!(
                "label {l} is outside the {} block table range {:?}",
                self.family,
                self.range()
            )));
        }
        match &self.source {
            Source::Osp32 => osp32_lambda(l),
            Source::D21aPrincipal(_) => {
                let (a, b) = if l == 0 { (0, 0) } else { (l + 1, l - 1) };
                SuperWeight::integral(self.family, a, vec![b, b])
            }
            Source::D21a { p, q, k } => d21a_lambda(*p, *q, *k, l),
            Source::G3 { k } => g3_lambda(*k, l),
            Source::External(rows) => Ok(rows[l as usize].clone()),
        }
    }

    /// Label of λ in this block.
    pub fn position(&self, lambda: &SuperWeight) -> Option<i64> {
        if lambda.family() != self.family {
            return None;
        }
        let a = lambda.eps_integer()?;
        let c = lambda.coeffs();
        let candidates: Vec<i64> = match &self.source {
            Source::Osp32 => vec![0, c[0]],
            Source::D21aPrincipal(_) => vec![0, a - 1],
            Source::D21a { .. } => vec![2 - a, 1 - a, a - 1, a - 2],
            Source::G3 { .. } => vec![0, 1, a - 2, a - 3, a - 4],
            Source::External(rows) => return rows.iter().position(|r| r == lambda).map(|i| i as i64),
        };
        candidates
            .into_iter()
            .find(|&l| self.contains(l) && self.weight_at(l).ok().as_ref() == Some(lambda))
    }
}

impl fmt::Display for BlockTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} block k={}", self.family, self.k)
    }
}

/// Finds the block containing λ among the closed-form tables.
///
/// For D(2,1;α) with rational α and G(3) the block index k is recovered from
/// the table formulas and the candidate is verified by re-evaluation.
pub fn locate(lambda: &SuperWeight) -> Result<Option<BlockPosition>> {
    let at = |t: BlockTable| t.position(lambda).map(|index| BlockPosition { k: t.k, index });
    let Some(a) = lambda.eps_integer() else {
        return Ok(None);
    };
    let c = lambda.coeffs();
    match lambda.family() {
        Family::Osp32 => Ok(at(BlockTable::osp32())),
        Family::D21a(alpha) => {
            if let Some(pos) = at(BlockTable::d21a(alpha, 0)?) {
                return Ok(Some(pos));
            }
            if alpha.is_irrational() {
                return Ok(None);
            }
            let (p, q) = (alpha.p(), alpha.q());
            // k from the b- and c-coordinates of each branch, with l read off a
            let (b, c) = (c[0], c[1]);
            let mut ks = Vec::new();
            for kp in [a - 2 - b, a + b, b - a + 2] {
                if kp > 0 && kp % p == 0 {
                    ks.push(kp / p);
                }
            }
            for kq in [c + 2 - a, c + a, a - 2 - c] {
                if kq > 0 && kq % q == 0 {
                    ks.push(kq / q);
                }
            }
            ks.sort_unstable();
            ks.dedup();
            for k in ks {
                if let Some(pos) = at(BlockTable::d21a(Alpha::rational(p, q)?, k)?) {
                    return Ok(Some(pos));
                }
            }
            Ok(None)
        }
        Family::G3 => {
            let mut ks = vec![0, c[1] + 1, c[1] + a - 2, c[1] / 2];
            if (c[0] + a - 3) % 3 == 0 {
                ks.push((c[0] + a - 3) / 3);
            }
            ks.retain(|&k| k >= 0);
            ks.sort_unstable();
            ks.dedup();
            for k in ks {
                if let Some(pos) = at(BlockTable::g3(k)?) {
                    return Ok(Some(pos));
                }
            }
            Ok(None)
        }
        Family::F4 => Err(Error::Unsupported(
            "F(4) blocks come from an external table".into(),
        )),
        Family::Osp2n { .. } => Err(usage!("osp(2|2n) blocks are computed from weight diagrams")),
    }
}

/// Loads an F(4) block table: one row `l a m1 m2 m3` per line, `#` comments.
///
/// Labels must be exactly 0, 1, …, N (in any order).
pub fn f4_table_load(source: &str) -> Result<BlockTable> {
    let mut rows: BTreeMap<i64, SuperWeight> = BTreeMap::new();
    for (lineno, raw) in source.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Error::Parse(format!("F(4) table line {}: {what}: {raw:?}", lineno + 1));
        let fields: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| bad("non-integer field")))
            .collect::<Result<_>>()?;
        if fields.len() != 5 {
            return Err(bad("expected 5 fields"));
        }
        if fields.iter().any(|&v| v < 0) {
            return Err(bad("negative field"));
        }
        let w = SuperWeight::integral(Family::F4, fields[1], fields[2..].to_vec())?;
        if rows.insert(fields[0], w).is_some() {
            return Err(bad("duplicate label"));
        }
    }
    if rows.is_empty() {
        return Err(Error::Parse("F(4) table has no rows".into()));
    }
    if let Some((pos, (&l, _))) = rows.iter().enumerate().find(|(i, (&l, _))| l != *i as i64) {
        return Err(Error::Parse(format!(
            "F(4) table labels must be 0..N without gaps; found {l} at position {pos}"
        )));
    }
    let mut seen = std::collections::HashSet::new();
    for w in rows.values() {
        if !seen.insert(w.clone()) {
            return Err(Error::Parse(format!("F(4) table repeats weight {w}")));
        }
    }
    Ok(BlockTable {
        family: Family::F4,
        k: 0,
        casimir: None,
        source: Source::External(rows.into_values().collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_datum, is_dominant};

    fn t(w: &SuperWeight) -> (i64, Vec<i64>) {
        (w.eps_integer().unwrap(), w.coeffs().to_vec())
    }

    #[test]
    fn osp32_examples() {
        assert_eq!(t(&osp32_lambda(0).unwrap()), (0, vec![0]));
        assert_eq!(t(&osp32_lambda(1).unwrap()), (0, vec![1]));
        assert_eq!(t(&osp32_lambda(4).unwrap()), (3, vec![4]));
        assert!(matches!(osp32_lambda(-1), Err(Error::Usage(_))));
    }

    #[test]
    fn d21a_examples() {
        for l in 0..20 {
            assert_eq!(t(&d21a_lambda(2, 3, 0, l).unwrap()), (l + 2, vec![l, l]));
        }
        assert_eq!(t(&d21a_lambda(1, 1, 1, 0).unwrap()), (1, vec![0, 0]));
        assert!(matches!(d21a_lambda(2, 4, 1, 0), Err(Error::Usage(_))));
        assert!(matches!(d21a_lambda(1, 1, -1, 0), Err(Error::Usage(_))));
    }

    #[test]
    fn d21a_branches_agree_where_they_overlap() {
        for (p, q) in [(1, 1), (2, 3), (3, 2), (1, 4)] {
            for k in 1..=4 {
                let boundary = [-k * p, -k * p + 1, 0, k * q - 1, k * q];
                for l in (-3 * k * p - 3..=3 * k * q + 3).chain(boundary) {
                    let b = d21a_branches(p, q, k, l);
                    assert!(!b.is_empty());
                    assert!(b.windows(2).all(|w| w[0] == w[1]), "p={p} q={q} k={k} l={l}: {b:?}");
                }
            }
        }
    }

    #[test]
    fn d21a_blocks_are_dominant() {
        for (p, q) in [(1, 1), (2, 3)] {
            let fam = Family::d21a(p, q).unwrap();
            let datum = build_datum(fam).unwrap();
            for k in 0..=3 {
                let table = BlockTable::d21a(Alpha::rational(p, q).unwrap(), k).unwrap();
                let range: Vec<i64> = if k == 0 { (0..60).collect() } else { (-60..60).collect() };
                for l in range {
                    let w = table.weight_at(l).unwrap();
                    assert!(is_dominant(&datum, &w), "{w} at k={k} l={l}");
                    assert_eq!(table.position(&w), Some(l));
                    assert_eq!(locate(&w).unwrap(), Some(BlockPosition { k, index: l }));
                }
            }
        }
    }

    #[test]
    fn d21a_casimir() {
        let a = Alpha::rational(2, 3).unwrap();
        assert_eq!(BlockTable::d21a(a, 2).unwrap().casimir_eigenvalue(), Some(Rat::from_integer(20)));
        assert_eq!(BlockTable::d21a(Alpha::irrational(), 0).unwrap().casimir_eigenvalue(), None);
        assert!(BlockTable::d21a(Alpha::irrational(), 1).is_err());
    }

    #[test]
    fn irrational_principal_block() {
        let table = BlockTable::d21a(Alpha::irrational(), 0).unwrap();
        assert_eq!(t(&table.weight_at(0).unwrap()), (0, vec![0, 0]));
        for l in 1..30 {
            assert_eq!(t(&table.weight_at(l).unwrap()), (l + 1, vec![l - 1, l - 1]));
        }
    }

    #[test]
    fn g3_examples() {
        assert_eq!(t(&g3_lambda(0, 0).unwrap()), (0, vec![0, 0]));
        assert_eq!(t(&g3_lambda(1, 2).unwrap()), (5, vec![1, 0]));
        assert_eq!(t(&g3_lambda(1, 5).unwrap()), (9, vec![1, 2]));
        assert_eq!(t(&g3_lambda(0, 1).unwrap()), (5, vec![0, 0]));
        assert_eq!(t(&g3_lambda(2, 0).unwrap()), (2, vec![0, 1]));
        assert!(matches!(g3_lambda(-1, 0), Err(Error::Usage(_))));
        assert_eq!(BlockTable::g3(2).unwrap().casimir_eigenvalue(), Some(Rat::from_integer(36)));
    }

    #[test]
    fn g3_tables_are_dominant_and_injective() {
        let datum = build_datum(Family::G3).unwrap();
        let mut seen = std::collections::HashMap::new();
        for k in 0..=3 {
            for l in 0..=60 {
                let w = g3_lambda(k, l).unwrap();
                assert!(is_dominant(&datum, &w), "{w} at k={k} l={l}");
                assert_eq!(locate(&w).unwrap(), Some(BlockPosition { k, index: l }), "{w}");
                assert!(seen.insert(w, (k, l)).is_none());
            }
        }
    }

    #[test]
    fn g3_even_dims_have_degree_six() {
        use crate::dimensions::g0_dim;
        use num::{BigInt, Zero};
        for k in 0..=2 {
            let start = 3 * k + 1;
            let mut seq: Vec<BigInt> = (start..start + 30)
                .map(|l| BigInt::from(g0_dim(Family::G3, &g3_lambda(k, l).unwrap()).unwrap()))
                .collect();
            let mut passes = 0;
            while seq.iter().any(|v| !v.is_zero()) {
                seq = seq.windows(2).map(|w| &w[1] - &w[0]).collect();
                passes += 1;
            }
            assert_eq!(passes - 1, 6, "k={k}");
        }
    }

    #[test]
    fn osp32_locate() {
        let l4 = osp32_lambda(4).unwrap();
        assert_eq!(locate(&l4).unwrap(), Some(BlockPosition { k: 0, index: 4 }));
        let typ = SuperWeight::integral(Family::Osp32, 1, vec![4]).unwrap();
        assert_eq!(locate(&typ).unwrap(), None);
    }

    #[test]
    fn f4_loading() {
        let table = f4_table_load("# l a m1 m2 m3\n0 0 0 0 0\n1 4 0 0 1 # comment\n2 5 0 0 2\n").unwrap();
        assert_eq!(table.range(), (Some(0), Some(2)));
        assert_eq!(table.provenance(), Some("external"));
        assert_eq!(table.weight_at(2).unwrap().to_string(), "5|0,0,2");
        assert!(matches!(table.weight_at(3), Err(Error::Unsupported(_))));
        assert_eq!(table.position(&table.weight_at(1).unwrap()), Some(1));
        assert!(matches!(f4_table_load("# nothing\n"), Err(Error::Parse(_))));
        assert!(matches!(f4_table_load("0 0 0 0 0\n0 1 0 0 0\n"), Err(Error::Parse(_))));
        assert!(matches!(f4_table_load("0 0 0 0 0\n2 1 0 0 0\n"), Err(Error::Parse(_))));
        assert!(matches!(f4_table_load("0 0 0 0\n"), Err(Error::Parse(_))));
        assert!(matches!(f4_table_load("0 0 0 x 0\n"), Err(Error::Parse(_))));
    }
}
