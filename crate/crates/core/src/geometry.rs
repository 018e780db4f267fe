//! Dimensions of the associated variety X_M, the support variety V_{(g,g₀)}(M)
//! and the support variety over the detecting subalgebra f, and the identities
//! c(M) = dim X_M + dim V and z(M) = dim V_{(f,f₀)}(M).
//!
//! The variety dimensions are stored values; c and z are recomputed from
//! resolutions.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::blockdata::{locate, BlockTable};
use crate::error::{usage, Error, Result};
use crate::growth::{complexity_report, z_report, Window};
use crate::resolutions::ModuleDescriptor;
use crate::rootdata::{Alpha, Family, Rat, SuperWeight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Simple,
    Kac,
}

impl ModuleKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(Self::Simple),
            "kac" => Ok(Self::Kac),
            _ => Err(usage!("module kind must be simple or kac, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyDims {
    pub dim_associated: u32,
    pub dim_support: u32,
    pub dim_detecting: u32,
    /// Root α spanning the detecting subalgebra f, where one is recorded.
    pub detecting_root: Option<&'static str>,
}

/// Stored variety dimensions for a (family, kind, atypicality) row.
pub fn variety_dims(family: Family, kind: ModuleKind, atypical: bool) -> Result<VarietyDims> {
    let row = |x, v, f, root| VarietyDims {
        dim_associated: x,
        dim_support: v,
        dim_detecting: f,
        detecting_root: root,
    };
    if !atypical {
        if kind == ModuleKind::Kac && family.is_exceptional() {
            return Err(usage!("no Kac-module row for {family}"));
        }
        return Ok(row(0, 0, 0, None));
    }
    Ok(match (family, kind) {
        (Family::Osp2n { n }, ModuleKind::Simple) => row(2 * n as u32, 1, 2, Some("e1-d1")),
        (Family::Osp2n { n }, ModuleKind::Kac) => row(2 * n as u32, 0, 1, Some("e1-d1")),
        (Family::Osp32, ModuleKind::Simple) => row(3, 1, 2, Some("e1+d")),
        (Family::D21a(_), ModuleKind::Simple) => row(4, 1, 2, Some("e1+e2+e3")),
        (Family::G3, ModuleKind::Simple) => row(7, 1, 2, Some("e3+d")),
        (Family::F4, ModuleKind::Simple) => row(8, 1, 2, Some("(e1+e2+e3+d)/2")),
        (f, ModuleKind::Kac) => return Err(usage!("no Kac-module row for {f}")),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricReport {
    pub c: u32,
    pub z: u32,
    pub dims: VarietyDims,
    pub identity_c: bool,
    pub identity_z: bool,
    pub module: String,
}

impl GeometricReport {
    pub fn to_json(&self) -> Value {
        json!({
            "c": self.c,
            "z": self.z,
            "dim_X": self.dims.dim_associated,
            "dim_V": self.dims.dim_support,
            "dim_Vf": self.dims.dim_detecting,
            "detecting_root": self.dims.detecting_root,
            "identity_c": self.identity_c,
            "identity_z": self.identity_z,
            "module": self.module,
        })
    }
}

/// A typical dominant weight of the family, found by scanning small weights.
fn typical_weight(family: Family, f4: Option<&BlockTable>) -> Result<SuperWeight> {
    match family {
        Family::Osp2n { n } => SuperWeight::new(family, Rat::new(1, 2), vec![0; n]),
        _ => {
            let datum = crate::rootdata::build_datum(family)?;
            for a in 2..20 {
                for b in 1..4 {
                    let coeffs = vec![b; family.coeff_len()];
                    let w = SuperWeight::integral(family, a, coeffs)?;
                    if !crate::rootdata::is_dominant(&datum, &w) {
                        continue;
                    }
                    let atypical = match family {
                        Family::F4 => f4.ok_or_else(|| usage!("F(4) rows need a block table"))?.position(&w).is_some(),
                        _ => locate(&w)?.is_some(),
                    };
                    if !atypical {
                        return Ok(w);
                    }
                }
            }
            Err(Error::Internal(format!("no small typical weight found for {family}")))
        }
    }
}

/// Representative module of a row.
pub fn representative(
    family: Family,
    kind: ModuleKind,
    atypical: bool,
    f4: Option<Arc<BlockTable>>,
) -> Result<ModuleDescriptor> {
    variety_dims(family, kind, atypical)?;
    if !atypical {
        return Ok(ModuleDescriptor::Typical {
            weight: typical_weight(family, f4.as_deref())?,
        });
    }
    Ok(match (family, kind) {
        (Family::Osp2n { n }, ModuleKind::Simple) => ModuleDescriptor::SimplePrincipal { n, label: 0 },
        (Family::Osp2n { n }, ModuleKind::Kac) => ModuleDescriptor::KacPrincipal { n, label: 0 },
        (Family::Osp32, _) => ModuleDescriptor::Osp32Simple { label: 0 },
        (Family::D21a(alpha), _) => ModuleDescriptor::D21aSimple { alpha, k: 0, label: 0 },
        (Family::G3, _) => ModuleDescriptor::G3Simple { k: 0, label: 0 },
        (Family::F4, _) => ModuleDescriptor::F4Simple {
            table: f4.ok_or_else(|| usage!("F(4) rows need a block table"))?,
            label: 0,
        },
    })
}

/// Row check for a given module.
pub fn report_for(desc: &ModuleDescriptor, atypical: bool, window: Window) -> Result<GeometricReport> {
    let kind = if desc.is_kac() { ModuleKind::Kac } else { ModuleKind::Simple };
    let dims = variety_dims(desc.family(), kind, atypical)?;
    let c = complexity_report(desc, window)?.c;
    let z = z_report(desc, window)?.c;
    Ok(GeometricReport {
        c,
        z,
        identity_c: c == dims.dim_associated + dims.dim_support,
        identity_z: z == dims.dim_detecting,
        dims,
        module: desc.to_string(),
    })
}

pub fn geometric_report(
    family: Family,
    kind: ModuleKind,
    atypical: bool,
    f4: Option<Arc<BlockTable>>,
    window: Window,
) -> Result<GeometricReport> {
    let desc = representative(family, kind, atypical, f4)?;
    report_for(&desc, atypical, window)
}

/// The supported rows, for the verification suite.
pub fn rows(f4: Option<Arc<BlockTable>>) -> Vec<(Family, ModuleKind, bool)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        let f = Family::Osp2n { n };
        for kind in [ModuleKind::Simple, ModuleKind::Kac] {
            out.push((f, kind, true));
            out.push((f, kind, false));
        }
    }
    let mut exceptional = vec![
        Family::Osp32,
        Family::D21a(Alpha::rational(1, 1).expect("valid")),
        Family::D21a(Alpha::rational(2, 3).expect("valid")),
        Family::D21a(Alpha::irrational()),
        Family::G3,
    ];
    if f4.is_some() {
        exceptional.push(Family::F4);
    }
    for f in exceptional {
        out.push((f, ModuleKind::Simple, true));
        out.push((f, ModuleKind::Simple, false));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn osp_rows() {
        let w = Window::default();
        let f = Family::osp2n(2).unwrap();
        let r = geometric_report(f, ModuleKind::Simple, true, None, w).unwrap();
        assert_eq!((r.c, r.dims.dim_associated, r.dims.dim_support), (5, 4, 1));
        assert!(r.identity_c && r.identity_z);
        let k = geometric_report(f, ModuleKind::Kac, true, None, w).unwrap();
        assert_eq!((k.c, k.dims.dim_associated, k.dims.dim_support, k.z), (4, 4, 0, 1));
        assert!(k.identity_c && k.identity_z);
        let t = geometric_report(f, ModuleKind::Simple, false, None, w).unwrap();
        assert_eq!((t.c, t.z), (0, 0));
        assert!(t.identity_c && t.identity_z);
    }

    #[test]
    fn exceptional_rows() {
        let w = Window::default();
        for (fam, c) in [(Family::Osp32, 4), (Family::d21a(2, 3).unwrap(), 5), (Family::G3, 8)] {
            let r = geometric_report(fam, ModuleKind::Simple, true, None, w).unwrap();
            assert_eq!((r.c, r.z), (c, 2), "{fam}");
            assert!(r.identity_c && r.identity_z);
            let t = geometric_report(fam, ModuleKind::Simple, false, None, w).unwrap();
            assert_eq!((t.c, t.z), (0, 0));
        }
        assert!(matches!(variety_dims(Family::G3, ModuleKind::Kac, true), Err(Error::Usage(_))));
        assert!(matches!(
            geometric_report(Family::F4, ModuleKind::Simple, true, None, w),
            Err(Error::Usage(_))
        ));
    }
}
