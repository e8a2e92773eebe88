//! `evalbirep`: run computations and verification suites from the shell.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use evalbirep::bireps::evaluation::{decompose, x_object, EvalAction};
use evalbirep::bireps::lemmas::{apply_steps, parse_steps};
use evalbirep::cellmods::{gram_matrix, radical, CellModule};
use evalbirep::error::{Error, Result};
use evalbirep::evalmaps::{ev_kind, EvalKind, EvalParam};
use evalbirep::hecke::parse_hecke;
use evalbirep::homotopy::Complex;
use evalbirep::linalg::Matrix;
use evalbirep::scalars::{parse_scalar, RationalFunction};
use evalbirep::suites::{run, Suite, SuiteConfig, DEFAULT_SEED};
use evalbirep::zigzag::ZigzagAlgebra;

/// Largest rank accepted without `--allow-large`.
const MAX_D: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "evalbirep", version, about = "Exact Hecke, cell module and evaluation birepresentation computations")]
struct Cli {
    /// Rank.
    #[arg(long, global = true, default_value_t = 3)]
    d: usize,
    /// Grading shift of the rotation (default d-2).
    #[arg(long, global = true, allow_hyphen_values = true)]
    r: Option<i32>,
    /// Homological shift of the rotation (default 2-d).
    #[arg(long, global = true, allow_hyphen_values = true)]
    s: Option<i32>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also write the result as JSON to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Accept d above the resource cap.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Products and evaluation-map images, expanded in the standard basis.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Matrices, form and radical of a cell module.
    Cell {
        /// Defaults to (-q)^d.
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        lambda: String,
    },
    /// Zigzag algebra structure.
    Zigzag {
        #[arg(long)]
        finite: bool,
        #[command(subcommand)]
        op: Option<ZigzagCmd>,
    },
    /// Minimal model of a word applied to `Ze_j` or `X_j`.
    ///
    /// Words are space-separated factors `Ti`, `Ti'` (inverse), `Bi`, `rho`,
    /// `rho'`; the rightmost factor acts first.
    Complex {
        word: String,
        #[arg(long, conflicts_with = "x")]
        vertex: Option<usize>,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        finite: bool,
        /// Also split the result into shifted X objects.
        #[arg(long)]
        decompose: bool,
    },
    /// Run a named verification suite; exit status 0 iff every check passes.
    Verify {
        suite: String,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum HeckeCmd {
    /// Expand an expression such as `T1*T1` or `rho*b1*rho^-1`.
    Mul { expr: String },
    /// Image of an expression under the evaluation map.
    Eval {
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        a: String,
        /// Use the map sending rho to a T_1 ... T_{d-1}.
        #[arg(long)]
        prime: bool,
        expr: String,
    },
}

#[derive(Subcommand, Debug)]
enum ZigzagCmd {
    /// Dimension, basis, trace form and rotation order.
    Info,
    /// Product `x y` (x after y), e.g. `mul "p0|1" "p1|0"`.
    Mul { x: String, y: String },
    /// Image under the rotation automorphism.
    Tau { x: String },
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            if let Some(p) = &cli.json {
                if let Err(e) = write_json(p, &out.json) {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn write_json(p: &Path, v: &Value) -> std::io::Result<()> {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    std::fs::write(p, s)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    if cli.d < 3 {
        return Err(Error::InvalidArgument("d must be at least 3".into()));
    }
    if cli.d > MAX_D && !cli.allow_large {
        return Err(Error::InvalidArgument(format!(
            "d = {} exceeds the resource cap {MAX_D}; pass --allow-large to run anyway",
            cli.d
        )));
    }
    match &cli.cmd {
        Cmd::Hecke(h) => hecke(cli.d, h),
        Cmd::Cell { z, lambda } => cell(cli.d, z.as_deref(), lambda),
        Cmd::Zigzag { finite, op } => zigzag(cli.d, *finite, op.as_ref().unwrap_or(&ZigzagCmd::Info)),
        Cmd::Complex {
            word,
            vertex,
            x,
            finite,
            decompose,
        } => complex(cli, word, *vertex, *x, *finite, *decompose),
        Cmd::Verify { suite, z, lambda } => verify(cli, suite, z.as_deref(), lambda.as_deref()),
    }
}

fn hecke(d: usize, cmd: &HeckeCmd) -> Result<Output> {
    match cmd {
        HeckeCmd::Mul { expr } => {
            let x = parse_hecke(d, expr)?;
            let json = json!({"d": d, "input": expr, "text": x.to_string(), "element": x.to_json()});
            Ok(Output::new(x.to_string(), json))
        }
        HeckeCmd::Eval { a, prime, expr } => {
            let param = EvalParam::new(parse_scalar(a)?)?;
            let kind = if *prime { EvalKind::Prime } else { EvalKind::Plain };
            let x = parse_hecke(d, expr)?;
            let y = ev_kind(kind, &param, &x)?;
            let json = json!({
                "d": d,
                "a": param.value().to_string(),
                "kind": kind,
                "input": expr,
                "text": y.to_string(),
                "element": y.to_json(),
            });
            Ok(Output::new(y.to_string(), json))
        }
    }
}

fn matrix_strings(m: &Matrix<RationalFunction>) -> Vec<Vec<String>> {
    m.to_rows()
        .into_iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect()
}

fn matrix_text(name: &str, m: &Matrix<RationalFunction>) -> String {
    let mut s = format!("{name}:\n");
    for r in matrix_strings(m) {
        s.push_str(&format!("  [{}]\n", r.join(", ")));
    }
    s
}

fn cell(d: usize, z: Option<&str>, lambda: &str) -> Result<Output> {
    let z = match z {
        Some(s) => parse_scalar(s)?,
        None => RationalFunction::neg_q_pow(d as i32),
    };
    let lambda = parse_scalar(lambda)?;
    let cell = CellModule::new(d, z.clone(), lambda.clone())?;
    let gram = gram_matrix(d, &z)?;
    let rad = radical(d, &z)?;
    let mut text = format!("cell module d={d} z={z} lambda={lambda}\n");
    text.push_str(&matrix_text("gram", &gram));
    text.push_str(&format!("form rank {}, radical dimension {}\n", gram.rank(), rad.len()));
    for v in &rad {
        let cs: Vec<String> = v.coords.iter().map(|c| c.to_string()).collect();
        text.push_str(&format!("  radical vector [{}]\n", cs.join(", ")));
    }
    let mut bs = vec![];
    for i in 0..d {
        let m = cell.b_matrix(i)?;
        text.push_str(&matrix_text(&format!("b{i}"), &m));
        bs.push(matrix_strings(&m));
    }
    let rho = cell.rho_matrix();
    text.push_str(&matrix_text("rho", &rho));
    let json = json!({
        "d": d,
        "z": z.to_string(),
        "lambda": lambda.to_string(),
        "gram": matrix_strings(&gram),
        "rank": gram.rank(),
        "radical": rad.iter().map(|v| v.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "b": bs,
        "rho": matrix_strings(&rho),
    });
    Ok(Output::new(text, json))
}

fn algebra(d: usize, finite: bool) -> Result<ZigzagAlgebra> {
    if finite {
        ZigzagAlgebra::finite(d)
    } else {
        ZigzagAlgebra::affine(d)
    }
}

fn zigzag(d: usize, finite: bool, op: &ZigzagCmd) -> Result<Output> {
    let alg = algebra(d, finite)?;
    match op {
        ZigzagCmd::Info => {
            let names: Vec<String> = alg.basis().iter().map(|&b| alg.name(b)).collect();
            let degrees: Vec<i32> = alg.basis().iter().map(|&b| alg.degree(b)).collect();
            let form = alg.trace_form();
            let form_rank = form.rank();
            let tau_order = tau_order(&alg)?;
            let text = format!(
                "{:?} zigzag algebra d={d}\ndimension {}\nbasis {}\ntrace form rank {form_rank}\nrotation order {}\n",
                alg.flavor(),
                alg.dim(),
                names.join(" "),
                tau_order.map_or("n/a".into(), |k| k.to_string()),
            );
            let json = json!({
                "d": d,
                "flavor": alg.flavor(),
                "dim": alg.dim(),
                "basis": names,
                "degrees": degrees,
                "trace_form_rank": form_rank,
                "rotation_order": tau_order,
            });
            Ok(Output::new(text, json))
        }
        ZigzagCmd::Mul { x, y } => {
            let (a, b) = (alg.parse(x)?, alg.parse(y)?);
            let p = alg.format(&alg.mul(&a, &b));
            Ok(Output::new(p.clone(), json!({"d": d, "x": x, "y": y, "product": p})))
        }
        ZigzagCmd::Tau { x } => {
            let a = alg.parse(x)?;
            let t = alg.format(&alg.tau(&a)?);
            Ok(Output::new(t.clone(), json!({"d": d, "x": x, "tau": t})))
        }
    }
}

/// Smallest `k` with `tau^k = id` on the basis, for the affine algebra.
fn tau_order(alg: &ZigzagAlgebra) -> Result<Option<usize>> {
    if alg.flavor() != evalbirep::zigzag::ZigzagFlavor::Affine {
        return Ok(None);
    }
    let basis: Vec<_> = alg.basis().iter().map(|&b| alg.basis_element(b)).collect();
    let mut cur = basis.clone();
    for k in 1..=2 * alg.rank() {
        cur = cur.iter().map(|x| alg.tau(x)).collect::<Result<_>>()?;
        if cur == basis {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn complex(cli: &Cli, word: &str, vertex: Option<usize>, x: Option<usize>, finite: bool, split: bool) -> Result<Output> {
    let d = cli.d;
    let alg = algebra(d, finite)?;
    let steps = parse_steps(word)?;
    let (source, start) = match (vertex, x) {
        (_, Some(j)) => (format!("X{j}"), x_object(alg, j)?),
        (Some(j), None) => (format!("Ze_{j}"), Complex::indecomposable(alg, j)?),
        (None, None) => return Err(Error::InvalidArgument("give --vertex or --x".into())),
    };
    let ev = if finite {
        None
    } else {
        let cfg = SuiteConfig {
            r: cli.r,
            s: cli.s,
            ..SuiteConfig::new(d)
        };
        let (r, s) = cfg.rs();
        Some(EvalAction::new(d, r, s)?)
    };
    let cur = apply_steps(alg, ev.as_ref(), &steps, &start)?;
    let decat: Vec<(usize, String)> = cur.decat().into_iter().map(|(v, p)| (v, p.to_string())).collect();
    let mut text = format!("{word} applied to {source}\nminimal model: {cur}\n");
    for (v, p) in &decat {
        text.push_str(&format!("  [e{v}]: {p}\n"));
    }
    let mut json = json!({
        "d": d,
        "word": word,
        "source": source,
        "minimal": cur.to_serial(),
        "decat": decat.iter().map(|(v, p)| json!({"vertex": v, "class": p})).collect::<Vec<_>>(),
    });
    if split {
        let parts = decompose(&cur)?;
        let label = match &parts {
            Some(ps) if ps.is_empty() => "0".to_string(),
            Some(ps) => ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" + "),
            None => "not a sum of X objects".to_string(),
        };
        text.push_str(&format!("X decomposition: {label}\n"));
        json["x_decomposition"] = json!(parts.map(|ps| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
    }
    Ok(Output::new(text, json))
}

fn verify(cli: &Cli, suite: &str, z: Option<&str>, lambda: Option<&str>) -> Result<Output> {
    let suite: Suite = suite.parse()?;
    let cfg = SuiteConfig {
        r: cli.r,
        s: cli.s,
        seed: cli.seed,
        z: z.map(parse_scalar).transpose()?,
        lambda: lambda.map(parse_scalar).transpose()?,
        ..SuiteConfig::new(cli.d)
    };
    let rep = run(suite, &cfg)?;
    let json: Value = serde_json::to_value(&rep).expect("reports serialize");
    Ok(Output {
        text: rep.summary(),
        ok: rep.all_pass(),
        json,
    })
}
