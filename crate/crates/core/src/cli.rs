//! Command-line front end. `run` never touches the process streams, so the
//! binary and the tests share it.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::blockdata::{f4_table_load, BlockTable};
use crate::diagrams::{core, diagram_of, f_coords};
use crate::dimensions::{kac_dim, weyl_dim, EvenRootSystem};
use crate::error::{usage, Error, Result};
use crate::geometry::{report_for, representative, ModuleKind};
use crate::growth::{complexity_from_terms, sequence, z_from_terms, Window};
use crate::loperator::{datum, l_inv, l_op, orbit};
use crate::resolutions::{term, ModuleDescriptor, ResolutionTerm};
use crate::rootdata::{atypicality, build_datum, Alpha, Family, SuperWeight};
use crate::verify::{self, Suite, VerifyOptions};

/// Verification-suite failure.
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "superres", version, about = "Exact resolutions and complexity invariants of Lie superalgebra modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for per-degree work (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
struct WeightArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    weight: String,
}

#[derive(Debug, Args)]
struct Selectors {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<i64>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// D(2,1;α) with α irrational.
    #[arg(long)]
    irrational: bool,
    /// F(4) block table.
    #[arg(long)]
    table: Option<String>,
}

#[derive(Debug, Args)]
struct ModuleArgs {
    #[command(flatten)]
    sel: Selectors,
    #[arg(long)]
    module: String,
    #[arg(long, allow_hyphen_values = true)]
    label: i64,
}

#[derive(Debug, Args)]
struct WindowArgs {
    #[arg(long, default_value_t = 16)]
    dmin: u64,
    #[arg(long, default_value_t = 256)]
    dmax: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    Atyp(WeightArgs),
    Fcoords(WeightArgs),
    Diagram(WeightArgs),
    Lop(WeightArgs),
    Linv(WeightArgs),
    Orbit {
        #[command(flatten)]
        w: WeightArgs,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    Dim {
        #[arg(long)]
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        hw: String,
    },
    Kacdim {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    Resolve {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long)]
        d: u64,
    },
    Complexity {
        #[command(flatten)]
        m: ModuleArgs,
        #[command(flatten)]
        w: WindowArgs,
        /// Include degrees, flags and growth constants.
        #[arg(long)]
        detail: bool,
    },
    Zcomplexity {
        #[command(flatten)]
        m: ModuleArgs,
        #[command(flatten)]
        w: WindowArgs,
        #[arg(long)]
        detail: bool,
    },
    Geom {
        #[command(flatten)]
        sel: Selectors,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        atypical: u8,
        #[command(flatten)]
        w: WindowArgs,
    },
    Verify {
        #[arg(long)]
        suite: String,
        /// F(4) block table enabling the conditional checks.
        #[arg(long)]
        table: Option<String>,
    },
}

/// Exit status and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, message: &str) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr: format!("{}\n", json!({"code": code, "error": message})),
        }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.render().to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let msg = e.render().to_string();
                    let first = msg.lines().next().unwrap_or("invalid arguments");
                    Outcome::error(2, first.trim_start_matches("error: "))
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => return Outcome::error(1, &format!("thread pool: {e}")),
    };
    match pool.install(|| execute(&cli)) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::error(e.exit_code(), &e.to_string()),
    }
}

fn osp2_weight(w: &WeightArgs) -> Result<SuperWeight> {
    if w.family != "osp2" {
        return Err(usage!("--family must be osp2 for this command, got {:?}", w.family));
    }
    SuperWeight::parse(Family::osp2n(w.n)?, &w.weight)
}

fn load_table(path: &str) -> Result<Arc<BlockTable>> {
    let text = std::fs::read_to_string(path).map_err(|e| usage!("cannot read table {path:?}: {e}"))?;
    Ok(Arc::new(f4_table_load(&text)?))
}

impl Selectors {
    fn family(&self) -> Result<Family> {
        match self.family.as_str() {
            "osp2" => Family::osp2n(self.n.ok_or_else(|| usage!("osp2 needs --n"))?),
            "osp32" => Ok(Family::Osp32),
            "d21a" if self.irrational => {
                if self.p.is_some() || self.q.is_some() {
                    return Err(usage!("--irrational excludes --p and --q"));
                }
                Ok(Family::D21a(Alpha::irrational()))
            }
            "d21a" => match (self.p, self.q) {
                (Some(p), Some(q)) => Family::d21a(p, q),
                _ => Err(usage!("d21a needs --p and --q, or --irrational")),
            },
            "g3" => Ok(Family::G3),
            "f4" => Ok(Family::F4),
            other => Err(usage!("unknown family {other:?}; expected osp2, osp32, d21a, g3 or f4")),
        }
    }

    fn f4_table(&self) -> Result<Option<Arc<BlockTable>>> {
        self.table.as_deref().map(load_table).transpose()
    }

    fn block_k(&self) -> i64 {
        self.k.unwrap_or(0)
    }
}

fn descriptor(m: &ModuleArgs) -> Result<ModuleDescriptor> {
    let family = m.sel.family()?;
    let kind = ModuleKind::parse(&m.module)?;
    let label = m.label;
    let desc = match (family, kind) {
        (Family::Osp2n { n }, ModuleKind::Simple) => ModuleDescriptor::SimplePrincipal { n, label },
        (Family::Osp2n { n }, ModuleKind::Kac) => ModuleDescriptor::KacPrincipal { n, label },
        (f, ModuleKind::Kac) => return Err(usage!("Kac modules are only supported for osp(2|2n), not {f}")),
        (Family::Osp32, _) => ModuleDescriptor::Osp32Simple { label },
        (Family::D21a(alpha), _) => ModuleDescriptor::D21aSimple {
            alpha,
            k: m.sel.block_k(),
            label,
        },
        (Family::G3, _) => ModuleDescriptor::G3Simple { k: m.sel.block_k(), label },
        (Family::F4, _) => ModuleDescriptor::F4Simple {
            table: m.sel.f4_table()?.ok_or_else(|| usage!("f4 needs --table PATH"))?,
            label,
        },
    };
    desc.validate()?;
    Ok(desc)
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let fmt = cli.format;
    let value = match &cli.command {
        Command::Atyp(w) => {
            let lam = osp2_weight(w)?;
            let a = atypicality(&build_datum(lam.family())?, &lam)?;
            let witnesses: Vec<String> = a.witnesses.iter().map(|r| r.label.clone()).collect();
            json!({"atypicality": a.degree, "witnesses": witnesses})
        }
        Command::Fcoords(w) => {
            let lam = osp2_weight(w)?;
            json!({"result": f_coords(&build_datum(lam.family())?, &lam)?.to_string()})
        }
        Command::Diagram(w) => {
            let lam = osp2_weight(w)?;
            let d = diagram_of(&build_datum(lam.family())?, &lam)?;
            json!({"diagram": d.to_string(), "sparse": d.to_sparse(), "core": core(&d).to_string()})
        }
        Command::Lop(w) => {
            let lam = osp2_weight(w)?;
            json!({"result": l_op(&datum(w.n)?, &lam)?.0.to_string()})
        }
        Command::Linv(w) => {
            let lam = osp2_weight(w)?;
            json!({"result": l_inv(&datum(w.n)?, &lam)?.to_string()})
        }
        Command::Orbit { w, from, to } => {
            if from > to {
                return Err(usage!("--from must not exceed --to"));
            }
            let lam = osp2_weight(w)?;
            let rows = orbit(&datum(w.n)?, &lam, *from, *to)?;
            if fmt == Format::Csv {
                let mut out = String::from("l,weight\n");
                for (l, mu) in rows {
                    writeln!(out, "{l},\"{mu}\"").expect("string write");
                }
                return Ok((0, out));
            }
            let orbit: Vec<Value> = rows.iter().map(|(l, mu)| json!({"l": l, "weight": mu.to_string()})).collect();
            json!({"orbit": orbit})
        }
        Command::Dim { system, hw } => {
            let sys = EvenRootSystem::parse(system)?;
            let hw: Vec<i64> = hw
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("--hw entry {t:?} is not an integer"))))
                .collect::<Result<_>>()?;
            json!({"dim": weyl_dim(&sys, &hw)?.to_string()})
        }
        Command::Kacdim { n, weight } => {
            let lam = SuperWeight::parse(Family::osp2n(*n)?, weight)?;
            json!({"dim": kac_dim(*n, &lam)?.to_string()})
        }
        Command::Resolve { m, d } => {
            let t = term(&descriptor(m)?, *d)?;
            if fmt == Format::Csv {
                return Ok((0, terms_csv(std::slice::from_ref(&t))));
            }
            t.to_json()
        }
        Command::Complexity { m, w, detail } | Command::Zcomplexity { m, w, detail } => {
            let desc = descriptor(m)?;
            let window = Window::new(w.dmin, w.dmax)?;
            let terms = sequence(&desc, window)?;
            let is_z = matches!(cli.command, Command::Zcomplexity { .. });
            let report = if is_z {
                z_from_terms(&desc, &terms, window)?
            } else {
                complexity_from_terms(&desc, &terms, window)?
            };
            if fmt == Format::Csv {
                return Ok((0, terms_csv(&terms)));
            }
            let key = if is_z { "z" } else { "c" };
            let mut v = if *detail { report.to_json(key) } else { json!({key: report.c}) };
            if let Some(p) = desc.provenance() {
                v["provenance"] = json!(p);
            }
            v
        }
        Command::Geom { sel, kind, atypical, w } => {
            let atypical = match atypical {
                0 => false,
                1 => true,
                _ => return Err(usage!("--atypical must be 0 or 1")),
            };
            let desc = representative(sel.family()?, ModuleKind::parse(kind)?, atypical, sel.f4_table()?)?;
            report_for(&desc, atypical, Window::new(w.dmin, w.dmax)?)?.to_json()
        }
        Command::Verify { suite, table } => {
            let suite = Suite::parse(suite)?;
            let opts = VerifyOptions {
                f4: table.as_deref().map(load_table).transpose()?,
            };
            let reports = verify::run(suite, &opts);
            let v = verify::to_json(&reports);
            let code = if v["pass"] == json!(true) { 0 } else { EXIT_VERIFY };
            let text = match fmt {
                Format::Json => format!("{v}\n"),
                _ => verify_table(&reports),
            };
            return Ok((code, text));
        }
    };
    Ok((0, render(&value, fmt)))
}

fn terms_csv(terms: &[ResolutionTerm]) -> String {
    let mut out = String::from("d,dim_lower,dim_upper,count\n");
    for t in terms {
        writeln!(out, "{},{},{},{}", t.d, t.dim_lower, t.dim_upper, t.count).expect("string write");
    }
    out
}

fn verify_table(reports: &[verify::SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        for c in &r.checks {
            let status = match (c.skipped, c.pass) {
                (true, _) => "SKIP",
                (false, true) => "PASS",
                (false, false) => "FAIL",
            };
            writeln!(out, "{status} {}: {}: {}", r.suite, c.name, c.detail).expect("string write");
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// JSON: one compact line with sorted keys. CSV: a header row and a value
/// row. Table: `key  value` lines.
fn render(value: &Value, fmt: Format) -> String {
    let empty = Map::new();
    let obj = value.as_object().unwrap_or(&empty);
    match fmt {
        Format::Json => format!("{value}\n"),
        Format::Csv => {
            let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
            let vals: Vec<String> = obj
                .values()
                .map(|v| {
                    let s = scalar(v);
                    if s.contains([',', '"', '|']) {
                        format!("\"{}\"", s.replace('"', "\"\""))
                    } else {
                        s
                    }
                })
                .collect();
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
        Format::Table => {
            let width = obj.keys().map(String::len).max().unwrap_or(0);
            obj.iter()
                .map(|(k, v)| format!("{k:<width$}  {}\n", scalar(v)))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &str) -> Outcome {
        run(std::iter::once("superres").chain(args.split_whitespace()))
    }

    #[test]
    fn lop_example() {
        let o = run(["superres", "lop", "--family", "osp2", "--n", "2", "--weight", "0|0,0"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "{\"result\":\"-1|1,0\"}\n");
    }

    #[test]
    fn negative_weight_values() {
        let o = go("linv --family osp2 --n 2 --weight -3|3,0");
        assert_eq!(o.stdout, "{\"result\":\"-2|2,0\"}\n");
    }

    #[test]
    fn errors_are_json_lines() {
        let o = go("lop --family osp2 --n 2");
        assert_eq!(o.code, 2);
        let v: Value = serde_json::from_str(o.stderr.trim()).unwrap();
        assert_eq!(v["code"], 2);
        let o = go("lop --family osp2 --n 2 --weight 1/2|0,0");
        assert_eq!(o.code, 2);
        let o = go("resolve --family g3 --module kac --label 0 --d 1");
        assert_eq!(o.code, 2);
        let o = go("complexity --family osp2 --n 1 --module simple --label 0 --dmin 16 --dmax 20");
        assert_eq!(o.code, 2);
    }

    #[test]
    fn formats() {
        let o = go("resolve --family osp32 --module simple --label 0 --d 4 --format csv");
        assert_eq!(o.stdout, "d,dim_lower,dim_upper,count\n4,43,2752,3\n");
        let o = go("dim --system g2 --hw 1,0 --format table");
        assert_eq!(o.stdout, "dim  7\n");
        let o = go("kacdim --n 1 --weight 0|0 --format csv");
        assert_eq!(o.stdout, "dim\n4\n");
    }
}
