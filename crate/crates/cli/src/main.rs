//! `twisted`: command-line front end for twisted-core.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twisted_core::curves::classify_cubic;
use twisted_core::families::{classify_type, iso_decide, sigma_order_label, table_report, FamilyId};
use twisted_core::freealg::{parse_presentation, Presentation};
use twisted_core::geometry::{build_mn, curve_points, gamma_points, sigma_at};
use twisted_core::groebner::{center_in_degree, hilbert_function, truncated_groebner, MonomialOrder};
use twisted_core::poly::Poly3;
use twisted_core::sklyanin::{
    degenerate_class, dual_gamma_report, is_type_ec, skew_pair_analysis, sklyanin_translation_check, DegenerateClass,
    SklyaninParams,
};
use twisted_core::ttp::{build_ore_extension, build_ttp_algebra, case_label, verify_ttp, TwistCoeffs};
use twisted_core::verify::{run_suite, SUITES};
use twisted_core::{Error, FieldSpec};

/// Environment variable giving the default worker count.
const WORKERS_ENV: &str = "TWISTED_WORKERS";
const SCHEMA: &str = "1";

#[derive(Parser)]
#[command(name = "twisted", version, about = "Exact computations for quadratic algebras on three generators")]
struct Cli {
    /// Worker threads (default: $TWISTED_WORKERS, else all cores). Never affects results.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct FieldArg {
    /// Q, QSqrt:d or Fp:p.
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Presentation JSON file ("-" for stdin).
    #[arg(long = "in", conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Named family, e.g. Tgh, Pa, Sklyanin.
    #[arg(long, alias = "id")]
    family: Option<String>,
    /// Family parameters, e.g. "g=1,h=2".
    #[arg(long, default_value = "")]
    params: String,
    #[command(flatten)]
    field: FieldArg,
}

#[derive(Subcommand)]
enum Command {
    /// Point-scheme type of an algebra.
    Classify(AlgebraArgs),
    /// Print the presentation of a named family.
    MakeFamily(AlgebraArgs),
    /// Hilbert function dim A_0..dim A_n.
    Hilbert {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Truncated Groebner basis.
    Groebner {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Generator order, smallest first, e.g. "x<y<z".
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Basis of the center in one degree.
    Center {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        /// Centrality is checked against words up to this total degree (default degree + 2).
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Gamma: common zeros of the bilinearized relations over F_p.
    Gamma(AlgebraArgs),
    /// sigma on the F_p points of the point scheme.
    Sigma {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 400)]
        max_order: usize,
    },
    /// Components, singularities and j of a plane cubic.
    ClassifyCubic {
        /// Cubic form, e.g. "y^2*z - x^3 - x*z^2".
        #[arg(long)]
        poly: String,
        /// Variable names in order.
        #[arg(long, default_value = "xyz")]
        vars: String,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Decide isomorphism of two named algebras ("Name" or "Name:k=v,...").
    Iso {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Case label and truncated TTP verification of twisting coefficients.
    Ttp {
        /// e.g. "f=1,A=1,a=2"; omitted coefficients are zero.
        #[arg(long)]
        coeffs: String,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Ore data of f = 0 coefficients and the graded Ore extension.
    Ore {
        #[arg(long)]
        coeffs: String,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Sklyanin algebra S(a,b,c) report.
    Sklyanin {
        /// "a,b,c".
        #[arg(long)]
        abc: String,
        #[arg(long, value_enum, default_value_t = Report::All)]
        report: Report,
        #[arg(long, default_value = "Fp:13")]
        field: String,
    },
    /// Reproduce the case tables over F_p.
    TableReport {
        /// Table numbers (1, 2, 3); all when omitted.
        #[arg(long, value_delimiter = ',')]
        table: Vec<u8>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "Fp:13")]
        field: String,
    },
    /// Run a named verification suite, or all of them.
    VerifySuite {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Prime field for the F_p parts (default Fp:13).
        #[arg(long)]
        field: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    All,
    Degeneracy,
    Ec,
    Points,
    Sigma,
    Dual,
    SkewPairs,
}

/// A finished command: JSON body, text rendering, and whether every
/// verification it ran passed.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn report(json: Value, text: impl Into<String>) -> Outcome {
        Outcome { json, text: text.into(), ok: true }
    }
}

type CmdResult = Result<Outcome, Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers.or_else(|| std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()));
    if let Some(n) = workers {
        if n == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let name = command_name(&cli.command);
    match run(cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    let mut body = json!({"schema": SCHEMA, "command": name});
                    if let (Value::Object(m), Value::Object(extra)) = (&mut body, out.json) {
                        m.extend(extra);
                    }
                    println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
                }
                Format::Text => println!("{}", out.text.trim_end()),
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

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify(_) => "classify",
        Command::MakeFamily(_) => "make-family",
        Command::Hilbert { .. } => "hilbert",
        Command::Groebner { .. } => "groebner",
        Command::Center { .. } => "center",
        Command::Gamma(_) => "gamma",
        Command::Sigma { .. } => "sigma",
        Command::ClassifyCubic { .. } => "classify-cubic",
        Command::Iso { .. } => "iso",
        Command::Ttp { .. } => "ttp",
        Command::Ore { .. } => "ore",
        Command::Sklyanin { .. } => "sklyanin",
        Command::TableReport { .. } => "table-report",
        Command::VerifySuite { .. } => "verify-suite",
    }
}

fn input_error(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn load(alg: &AlgebraArgs) -> Result<Presentation, Error> {
    match (&alg.input, &alg.family) {
        (Some(path), _) => {
            let text = if path.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin()).map_err(|e| input_error(format!("stdin: {e}")))?
            } else {
                std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?
            };
            parse_presentation(&text)
        }
        (None, Some(name)) => {
            let f = FieldSpec::parse(&alg.field.field)?;
            FamilyId::parse(name, &alg.params, &f)?.make(&f)
        }
        (None, None) => Err(input_error("give --in FILE or --family NAME")),
    }
}

/// "Name" or "Name:k=v,...".
fn parse_family_ref(s: &str, f: &FieldSpec) -> Result<FamilyId, Error> {
    let (name, params) = s.split_once(':').unwrap_or((s, ""));
    FamilyId::parse(name.trim(), params, f)
}

fn vars_of(s: &str) -> Result<[char; 3], Error> {
    let v: Vec<char> = s.chars().collect();
    match v.as_slice() {
        [a, b, c] if a != b && b != c && a != c => Ok([*a, *b, *c]),
        _ => Err(input_error(format!("--vars needs three distinct letters, got {s:?}"))),
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Classify(alg) => classify(&load(&alg)?),
        Command::MakeFamily(alg) => {
            let p = load(&alg)?;
            Ok(Outcome::report(json!({"presentation": p.to_json()}), p.to_string()))
        }
        Command::Hilbert { alg, degree } => {
            let h = hilbert_function(&load(&alg)?, degree)?;
            Ok(Outcome::report(json!({"degree": degree, "hilbert": h}), format!("{h:?}")))
        }
        Command::Groebner { alg, order, degree } => {
            let p = load(&alg)?;
            let order = match order {
                Some(o) => MonomialOrder::parse(&o, p.gens)?,
                None => MonomialOrder::standard(),
            };
            let gb = truncated_groebner(&p, &order, degree)?;
            let elems: Vec<String> = gb.elements().iter().map(|e| gb.format(e)).collect();
            let text = elems.join("\n");
            Ok(Outcome::report(json!({"degree": degree, "elements": elems}), text))
        }
        Command::Center { alg, degree, bound } => {
            let p = load(&alg)?;
            let bound = bound.unwrap_or(degree + 2);
            let z = center_in_degree(&p, degree, bound)?;
            let verified = z.verify();
            let basis = z.strings();
            let text = format!(
                "dim Z_{degree} = {} (center to order {bound}, {})\n{}",
                z.dim(),
                if verified { "verified" } else { "NOT verified" },
                basis.join("\n")
            );
            Ok(Outcome {
                json: json!({"degree": degree, "bound": bound, "dim": z.dim(), "basis": basis, "verified": verified}),
                text,
                ok: verified,
            })
        }
        Command::Gamma(alg) => {
            let g = gamma_points(&load(&alg)?)?;
            let text = g.points.iter().map(|(a, b)| format!("{a} x {b}")).chain([format!("{} points", g.count)]).collect::<Vec<_>>();
            Ok(Outcome::report(json!({"points": g.points, "count": g.count}), text.join("\n")))
        }
        Command::Sigma { alg, max_order } => sigma(&load(&alg)?, max_order),
        Command::ClassifyCubic { poly, vars, field } => {
            let f = FieldSpec::parse(&field.field)?;
            let c = Poly3::parse(&poly, &f, vars_of(&vars)?)?;
            let class = classify_cubic(&c)?;
            let text = format!(
                "{:?}, split: {}, singular points: {}, j: {}",
                class.shape,
                class.split,
                class.singular_points.len(),
                class.j.as_ref().map_or("undefined".into(), |j| j.to_string())
            );
            Ok(Outcome::report(json!({"cubic": c.to_string(), "class": class}), text))
        }
        Command::Iso { a, b, field } => {
            let f = FieldSpec::parse(&field.field)?;
            let (ia, ib) = (parse_family_ref(&a, &f)?, parse_family_ref(&b, &f)?);
            let d = iso_decide(&ia, &ib, &f)?;
            let text = format!("{ia} vs {ib}: {}", d.verdict());
            Ok(Outcome::report(json!({"a": ia.to_string(), "b": ib.to_string(), "decision": d.to_json()}), text))
        }
        Command::Ttp { coeffs, degree, field } => {
            let f = FieldSpec::parse(&field.field)?;
            let t = TwistCoeffs::parse(&coeffs, &f)?;
            let p = build_ttp_algebra(&t);
            let case = case_label(&t);
            let verified = verify_ttp(&p, degree)?;
            let text = format!(
                "case {}, TTP to degree {degree}: {}\n{p}",
                case.map_or("none".into(), |c| c.to_string()),
                if verified { "verified" } else { "FAILED" }
            );
            Ok(Outcome {
                json: json!({"coeffs": t.to_json(), "case": case, "degree": degree, "verified": verified, "presentation": p.to_json()}),
                text,
                ok: verified,
            })
        }
        Command::Ore { coeffs, degree, field } => {
            let f = FieldSpec::parse(&field.field)?;
            let t = TwistCoeffs::parse(&coeffs, &f)?;
            let o = t.ore_data().ok_or_else(|| input_error("Ore data needs f = 0"))?;
            let p = build_ore_extension(&o)?;
            let same = p.relation_space() == build_ttp_algebra(&t).relation_space();
            let verified = !o.nu_invertible() || verify_ttp(&p, degree)?;
            let text = format!(
                "nu invertible: {}, matches the TTP presentation: {same}, TTP to degree {degree}: {}\n{p}",
                o.nu_invertible(),
                if verified { "ok" } else { "FAILED" }
            );
            Ok(Outcome {
                json: json!({
                    "ore": o.to_json(),
                    "nu_invertible": o.nu_invertible(),
                    "matches_ttp": same,
                    "verified": verified,
                    "presentation": p.to_json(),
                }),
                text,
                ok: same && verified,
            })
        }
        Command::Sklyanin { abc, report, field } => sklyanin(&abc, report, &field),
        Command::TableReport { table, samples, seed, field } => {
            let f = FieldSpec::parse(&field)?;
            let tables = if table.is_empty() { vec![1, 2, 3] } else { table };
            if let Some(t) = tables.iter().find(|t| !(1..=3).contains(*t)) {
                return Err(input_error(format!("no table {t}")));
            }
            let rep = table_report(&f, samples, seed, &tables)?;
            let mut body = rep.to_json();
            if let Value::Object(m) = &mut body {
                m.insert("seed".into(), json!(seed));
            }
            Ok(Outcome { json: body, text: format!("seed {seed}\n{rep}"), ok: rep.mismatches() == 0 })
        }
        Command::VerifySuite { suite, seed, field } => {
            let f = field.as_deref().map(FieldSpec::parse).transpose()?;
            let names: Vec<&str> = if suite == "all" { SUITES.iter().map(|(n, _)| *n).collect() } else { vec![suite.as_str()] };
            let mut results = Vec::new();
            for n in names {
                results.push(run_suite(n, f.as_ref(), seed)?);
            }
            let ok = results.iter().all(|r| r.passed());
            let text = results.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n\n");
            Ok(Outcome {
                json: json!({"seed": seed, "passed": ok, "suites": results.iter().map(|r| r.to_json()).collect::<Vec<_>>()}),
                text,
                ok,
            })
        }
    }
}

fn classify(p: &Presentation) -> CmdResult {
    let t = classify_type(p)?;
    let mn = build_mn(p)?;
    let det = mn.det_m();
    let j = if det.is_zero() { None } else { classify_cubic(&det)?.j };
    let text = format!(
        "type {t}, j: {}",
        j.as_ref().map_or("undefined".into(), |j| j.to_string())
    );
    Ok(Outcome::report(json!({"field": p.field, "type": t.name(), "subtag": t.subtag(), "j": j}), text))
}

fn sigma(p: &Presentation, max_order: usize) -> CmdResult {
    let mn = build_mn(p)?;
    let pts = curve_points(&mn)?;
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for pt in &pts {
        let image = sigma_at(&mn, pt).ok();
        text.push(format!("{pt} -> {}", image.as_ref().map_or("undefined".into(), |q| q.to_string())));
        rows.push(json!({"point": pt, "image": image}));
    }
    let order = sigma_order_label(p, max_order).ok().flatten();
    text.push(format!("order: {}", order.map_or(format!("undetermined up to {max_order}"), |o| o.to_string())));
    Ok(Outcome::report(json!({"points": rows, "count": pts.len(), "order": order}), text.join("\n")))
}

fn sklyanin(abc: &str, report: Report, field: &str) -> CmdResult {
    let f = FieldSpec::parse(field)?;
    let parts: Vec<&str> = abc.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(input_error(format!("--abc needs three comma-separated values, got {abc:?}")));
    };
    let s = SklyaninParams::new(f.parse_scalar(a)?, f.parse_scalar(b)?, f.parse_scalar(c)?)?;
    let want = |r: Report| report == Report::All || report == r;
    let class = degenerate_class(&s);
    let mut body = serde_json::Map::new();
    let mut text = vec![format!("S{} over {f}", s.point)];
    let mut ok = true;
    body.insert("point".into(), json!(s.point));
    if want(Report::Degeneracy) {
        body.insert("degenerate_class".into(), json!(class));
        text.push(format!("degeneracy: {class:?}"));
    }
    let ec = if class == DegenerateClass::NonDegenerate { Some(is_type_ec(&s)?) } else { None };
    if want(Report::Ec) {
        body.insert("type_ec".into(), json!(ec));
        text.push(format!("type EC: {}", ec.map_or("n/a (degenerate)".into(), |e| e.to_string())));
    }
    if want(Report::Points) && f.is_finite() {
        let p = s.clone().allow_degenerate().presentation()?;
        let pts = curve_points(&build_mn(&p)?)?;
        text.push(format!("point scheme: {} points over {f}", pts.len()));
        body.insert("point_scheme".into(), json!({"count": pts.len(), "points": pts}));
    }
    if want(Report::Sigma) && ec == Some(true) && f.is_finite() {
        let r = sklyanin_translation_check(&s)?;
        ok &= r.ok();
        text.push(format!(
            "sigma is translation by {} with identity {}: {}",
            r.translation,
            r.identity,
            if r.ok() { "verified".into() } else { format!("FAILED at {} points", r.failures.len()) }
        ));
        body.insert("sigma_translation".into(), json!(r));
    }
    if want(Report::Dual) && f.is_finite() {
        let g = dual_gamma_report(&s)?;
        text.push(format!("Gamma of the quadratic dual: {} points", g.count));
        body.insert("dual_gamma".into(), json!(g));
    }
    if want(Report::SkewPairs) && f.is_finite() {
        let (ca, cb, cc) = s.abc();
        if ca == cb && ec == Some(true) {
            let c = cc / ca;
            let r = skew_pair_analysis(&c)?;
            ok &= r.ok();
            text.push(format!(
                "skew pairs rs = -sr: {}, |Gamma(S(-c,-c,2))| = {}, bijection: {}",
                r.pairs.len(),
                r.gamma_count,
                r.bijection
            ));
            body.insert("skew_pairs".into(), json!(r));
        } else {
            text.push("skew pairs: analysed only for S(1,1,c) of type EC".into());
            body.insert("skew_pairs".into(), Value::Null);
        }
    }
    Ok(Outcome { json: Value::Object(body), text: text.join("\n"), ok })
}
