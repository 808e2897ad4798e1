//! The `dahaw` command line. Exit codes: 0 when every check passes, 1 when a
//! check fails, 2 for usage and configuration errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dahaw_core::analysis::{
    algebra_dimension, composition_series_aw, criterion_daha, criterion_vd, irreducibility,
    leonard_check, match_predicted_factors, predicted_factors, verify_aw_centrality,
    verify_daha_relations, CompositionSeries, VerificationReport,
};
use dahaw_core::linalg::{is_multiplicity_free, Matrix};
use dahaw_core::realizations::{build_daha, push_to_aw, AwRealization};
use dahaw_core::{Field, Rational, RationalFunction};
use serde_json::{json, Value};

use crate::formats::{
    matrix_json, report_json, report_text, scalar_token, write_matrix, Family, Module,
    ModuleRequest, Params, WorkingField,
};
use crate::harness::{replay, run_suite, sample_irreducible, Sampler, SweepConfig};

#[derive(Parser, Debug)]
#[command(name = "dahaw", version, about = "Exact checks on Askey-Wilson and DAHA modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the generator matrices.
    Build(ModuleArgs),
    /// Check defining relations and centrality.
    Verify(ModuleArgs),
    /// Compare the closed-form criterion with the algebra dimension.
    Irreducible(ModuleArgs),
    /// Composition series of the Askey-Wilson module and predicted factors.
    Factors(ModuleArgs),
    /// Leonard pair and triple verdicts on every composition factor.
    Leonard(ModuleArgs),
    /// Run a sweep from a JSON config.
    Suite(SuiteArgs),
    /// Re-run one point of a sweep.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write the JSON result to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    d: usize,
    /// A rational number, or `q` for the symbolic parameter.
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Comma-separated `k0..k3` (or `k1..k3` with `--k0` for E); one entry
    /// may be `auto`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k: Option<Vec<String>>,
    #[arg(long, allow_hyphen_values = true)]
    k0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, default_value_t = 0)]
    twist: u8,
    /// Draw parameters satisfying the irreducibility criterion from this seed.
    #[arg(long, conflicts_with_all = ["k", "k0", "a", "b", "c"])]
    kseed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long)]
    config: PathBuf,
    /// Replaces the seed of a random sampler.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    /// Point id as printed in a suite result.
    id: String,
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

enum Failure {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

/// Runs the command line on `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<bool, Failure> {
    match command {
        Command::Build(m) => module_command(m, out, Build),
        Command::Verify(m) => module_command(m, out, Verify),
        Command::Irreducible(m) => module_command(m, out, Irreducible),
        Command::Factors(m) => module_command(m, out, Factors),
        Command::Leonard(m) => module_command(m, out, Leonard),
        Command::Suite(s) => suite(s, out),
        Command::Replay(r) => replay_command(r, out),
    }
}

/// What a module command produced: human text, JSON, and whether every
/// check passed.
struct Output {
    text: String,
    json: Value,
    pass: bool,
}

/// A module command generic over the working field.
trait ModuleCommand {
    fn call<F: WorkingField>(&self, m: &Module<F>) -> Result<Output, String>;
}

macro_rules! handler {
    ($name:ident, $f:ident) => {
        struct $name;
        impl ModuleCommand for $name {
            fn call<F: WorkingField>(&self, m: &Module<F>) -> Result<Output, String> {
                $f(m)
            }
        }
    };
}

handler!(Build, build_impl);
handler!(Verify, verify_impl);
handler!(Irreducible, irreducible_impl);
handler!(Factors, factors_impl);
handler!(Leonard, leonard_impl);

fn request(args: &ModuleArgs) -> Result<ModuleRequest, Failure> {
    let mut params = Params {
        k: args.k.clone(),
        k0: args.k0.clone(),
        a: args.a.clone(),
        b: args.b.clone(),
        c: args.c.clone(),
    };
    if let Some(seed) = args.kseed {
        let drawn = sample_irreducible(args.family, args.d, &args.q, seed).map_err(usage)?;
        params = match args.family {
            Family::Vd => Params {
                a: Some(drawn[0].clone()),
                b: Some(drawn[1].clone()),
                c: Some(drawn[2].clone()),
                ..Params::default()
            },
            _ => Params {
                k: Some(drawn),
                ..Params::default()
            },
        };
    }
    Ok(ModuleRequest {
        family: args.family,
        d: args.d,
        q: args.q.clone(),
        params,
        twist: args.twist,
    })
}

fn module_command(
    args: ModuleArgs,
    out: &mut dyn Write,
    cmd: impl ModuleCommand,
) -> Result<bool, Failure> {
    let req = request(&args)?;
    let result = if req.is_symbolic().map_err(usage)? {
        let m = req.resolve::<RationalFunction>().map_err(usage)?;
        let resolved = ModuleRequest::from_module(req.family, &req.q, &m);
        (resolved, cmd.call(&m).map_err(usage)?)
    } else {
        let m = req.resolve::<Rational>().map_err(usage)?;
        let resolved = ModuleRequest::from_module(req.family, &req.q, &m);
        (resolved, cmd.call(&m).map_err(usage)?)
    };
    let (resolved, output) = result;
    let json = json!({ "module": resolved, "result": output.json, "pass": output.pass });
    emit(&args.output, out, &describe(&resolved), &output.text, &json)?;
    Ok(output.pass)
}

fn describe(r: &ModuleRequest) -> String {
    let p = &r.params;
    let params = match r.family {
        Family::Vd => format!(
            "a={} b={} c={}",
            p.a.as_deref().unwrap_or("?"),
            p.b.as_deref().unwrap_or("?"),
            p.c.as_deref().unwrap_or("?")
        ),
        _ => format!("k={}", p.k.as_ref().map(|k| k.join(",")).unwrap_or_default()),
    };
    let twist = if r.family == Family::Vd {
        String::new()
    } else {
        format!(" twist={}", r.twist)
    };
    format!("module {} d={} q={} {params}{twist}\n", r.family, r.d, r.q)
}

fn emit(
    output: &OutputArgs,
    out: &mut dyn Write,
    header: &str,
    text: &str,
    json: &Value,
) -> Result<(), Failure> {
    let pretty = serde_json::to_string_pretty(json).expect("serializable");
    match output.format {
        Format::Text => write!(out, "{header}{text}")?,
        Format::Json => writeln!(out, "{pretty}")?,
    }
    if let Some(path) = &output.out {
        std::fs::write(path, pretty + "\n")?;
    }
    Ok(())
}

fn named_matrices<F: Field>(named: &[(&str, &Matrix<F>)]) -> (String, Value) {
    let mut text = String::new();
    let mut map = serde_json::Map::new();
    for (name, m) in named {
        text.push_str(&format!("{name}:\n{}", write_matrix(m)));
        map.insert(name.to_string(), matrix_json(m));
    }
    (text, Value::Object(map))
}

fn build_impl<F: WorkingField>(m: &Module<F>) -> Result<Output, String> {
    let aw = m.aw().map_err(|e| e.to_string())?;
    let (text, json) = match m.daha().map_err(|e| e.to_string())? {
        Some(d) => {
            let product = d.t(0) * d.t(1);
            let product = &(&product * d.t(2)) * d.t(3);
            named_matrices(&[
                ("t0", d.t(0)),
                ("t1", d.t(1)),
                ("t2", d.t(2)),
                ("t3", d.t(3)),
                ("t0t1t2t3", &product),
                ("A", &aw.a),
                ("B", &aw.b),
                ("C", &aw.c),
            ])
        }
        None => named_matrices(&[("A", &aw.a), ("B", &aw.b), ("C", &aw.c)]),
    };
    Ok(Output {
        text,
        json,
        pass: true,
    })
}

fn report_output(report: VerificationReport, mut extra: Value, text: String) -> Output {
    let pass = report.all_pass();
    if let Value::Object(map) = &mut extra {
        map.insert("checks".into(), report_json(&report));
    }
    Output {
        text: text + &report_text(&report),
        json: extra,
        pass,
    }
}

fn verify_impl<F: WorkingField>(m: &Module<F>) -> Result<Output, String> {
    let report = match m.daha().map_err(|e| e.to_string())? {
        Some(d) => {
            let mut r = verify_daha_relations(&d);
            for mut c in verify_aw_centrality(&push_to_aw(&d)).checks {
                c.id = format!("aw_{}", c.id);
                r.checks.push(c);
            }
            r
        }
        None => verify_aw_centrality(&m.aw().map_err(|e| e.to_string())?),
    };
    Ok(report_output(report, json!({}), String::new()))
}

fn irreducible_impl<F: WorkingField>(m: &Module<F>) -> Result<Output, String> {
    let (gens, criterion): (Vec<Matrix<F>>, bool) = match m {
        Module::Vd(spec) => (m.aw().map_err(|e| e.to_string())?.generators().to_vec(), criterion_vd(spec)),
        Module::Daha { spec, .. } => (
            build_daha(spec).map_err(|e| e.to_string())?.generators().to_vec(),
            criterion_daha(spec),
        ),
    };
    let verdict = irreducibility(&gens, Some(criterion));
    let n = gens[0].rows();
    let dim = algebra_dimension(&gens);
    let mut report = VerificationReport::new();
    report.push(
        "criterion_iff_burnside",
        "the closed-form criterion holds iff the generated algebra has dimension n^2",
        verdict.consistent(),
        format!("algebra dimension {dim} of {}", n * n),
    );
    let mut text = format!(
        "criterion: {}\nburnside: {} (algebra dimension {dim} of {})\n",
        if criterion { "irreducible" } else { "reducible" },
        if verdict.by_burnside { "irreducible" } else { "reducible" },
        n * n
    );
    let witness = verdict.witness.as_ref().map(|w| {
        let rows: Vec<Vec<String>> =
            w.basis().iter().map(|v| v.iter().map(scalar_token).collect()).collect();
        text.push_str(&format!("witness: invariant subspace of dimension {}\n", w.dim()));
        for r in &rows {
            text.push_str(&format!("  [{}]\n", r.join(" ")));
        }
        rows
    });
    if !verdict.by_burnside {
        let ok = verdict
            .witness
            .as_ref()
            .is_some_and(|w| w.is_proper_nonzero() && w.is_invariant(&gens));
        report.push(
            "reducible_witness",
            "a reducible module exhibits a proper invariant subspace",
            ok,
            if ok { "found" } else { "none found over the working field" },
        );
    }
    let extra = json!({
        "criterion": criterion,
        "burnside": verdict.by_burnside,
        "algebra_dimension": dim,
        "witness": witness,
    });
    Ok(report_output(report, extra, text))
}

fn series_of<F: WorkingField>(m: &Module<F>) -> Result<(AwRealization<F>, CompositionSeries<F>), String> {
    let aw = m.aw().map_err(|e| e.to_string())?;
    let series = composition_series_aw(&aw).map_err(|e| e.to_string())?;
    Ok((aw, series))
}

fn factors_impl<F: WorkingField>(m: &Module<F>) -> Result<Output, String> {
    let (_, series) = series_of(m)?;
    let mut text = format!("factor dimensions: {:?}\n", series.dimensions());
    let mut list = Vec::new();
    for (i, f) in series.factors.iter().enumerate() {
        text.push_str(&format!(
            "factor {i}: dim {}, char poly A {}, char poly B {}\n",
            f.dim, f.char_poly_a, f.char_poly_b
        ));
        list.push(json!({
            "dim": f.dim,
            "char_poly_a": f.char_poly_a.to_string(),
            "char_poly_b": f.char_poly_b.to_string(),
            "character": f.character.as_ref().map(|c| json!({
                "alpha": scalar_token(&c.alpha),
                "beta": scalar_token(&c.beta),
                "gamma": scalar_token(&c.gamma),
            })),
            "irreducible": f.irreducible,
        }));
    }
    let report = match m {
        Module::Daha { spec, twist } => match predicted_factors(spec, *twist) {
            Some(predicted) => {
                text.push_str(&format!(
                    "predicted dimensions: {:?}\n",
                    predicted.iter().map(|v| v.d + 1).collect::<Vec<_>>()
                ));
                match_predicted_factors(&series, &predicted).map_err(|e| e.to_string())?
            }
            None => {
                text.push_str("no predicted factors for this twist\n");
                let mut r = VerificationReport::new();
                r.push(
                    "factors_irreducible",
                    "every computed factor is absolutely irreducible",
                    series.factors.iter().all(|f| f.irreducible),
                    String::new(),
                );
                r
            }
        },
        Module::Vd(_) => {
            let mut r = VerificationReport::new();
            r.push(
                "factors_irreducible",
                "every computed factor is absolutely irreducible",
                series.factors.iter().all(|f| f.irreducible),
                String::new(),
            );
            r
        }
    };
    let extra = json!({ "dimensions": series.dimensions(), "factors": list });
    Ok(report_output(report, extra, text))
}

fn leonard_impl<F: WorkingField>(m: &Module<F>) -> Result<Output, String> {
    let (_, series) = series_of(m)?;
    let names = ["A", "B", "C"];
    let mut report = VerificationReport::new();
    let mut text = String::new();
    let mut pieces = Vec::new();
    for (i, f) in series.factors.iter().enumerate() {
        let ops = [&f.a, &f.b, &f.c];
        let mf: Vec<bool> = ops.iter().map(|x| is_multiplicity_free(x)).collect();
        text.push_str(&format!("factor {i} (dim {}):\n", f.dim));
        let mut entries = Vec::new();
        let groups: [&[usize]; 4] = [&[0, 1], &[1, 2], &[2, 0], &[0, 1, 2]];
        for g in groups {
            let label: String = g.iter().map(|&j| names[j]).collect();
            let verdict = leonard_check(&g.iter().map(|&j| ops[j]).collect::<Vec<_>>());
            let expected = g.iter().all(|&j| mf[j]);
            let kind = if g.len() == 2 { "pair" } else { "triple" };
            report.push(
                format!("factor{i}_{kind}_{label}"),
                format!("{label} act as a Leonard {kind} iff each is multiplicity-free"),
                verdict.holds == expected,
                verdict.reason.clone().unwrap_or_default(),
            );
            let certs: Vec<Vec<String>> = verdict
                .certificates
                .iter()
                .map(|c| c.iter().map(scalar_token).collect())
                .collect();
            text.push_str(&format!(
                "  {kind} {label}: {}",
                if verdict.holds { "Leonard" } else { "not Leonard" }
            ));
            match &verdict.reason {
                Some(r) => text.push_str(&format!(" ({r})\n")),
                None => {
                    text.push('\n');
                    for (j, c) in g.iter().zip(&certs) {
                        text.push_str(&format!("    {} eigenvalue order: {}\n", names[*j], c.join(" ")));
                    }
                }
            }
            entries.push(json!({
                "operators": label,
                "kind": kind,
                "holds": verdict.holds,
                "multiplicity_free": verdict.multiplicity_free,
                "certificates": certs,
                "reason": verdict.reason,
            }));
        }
        pieces.push(json!({ "dim": f.dim, "verdicts": entries }));
    }
    Ok(report_output(report, json!({ "factors": pieces }), text))
}

fn load_config(path: &PathBuf, seed: Option<u64>) -> Result<SweepConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut cfg = SweepConfig::from_json(&text).map_err(usage)?;
    if let Some(s) = seed {
        match &mut cfg.sampler {
            Sampler::Random { seed, .. } => *seed = s,
            _ => return Err(usage("--seed needs a random sampler")),
        }
    }
    Ok(cfg)
}

fn suite(args: SuiteArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    let cfg = load_config(&args.config, args.seed)?;
    let result = run_suite(&cfg).map_err(usage)?;
    emit(&args.output, out, "", &result.summary_text(), &result.to_json())?;
    Ok(result.all_pass())
}

fn replay_command(args: ReplayArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    let cfg = load_config(&args.config, args.seed)?;
    let result = replay(&cfg, &args.id).map_err(usage)?;
    let text = format!(
        "{}\n{}",
        result.id(),
        report_text(&result.outcome.report)
    );
    emit(&args.output, out, "", &text, &result.to_json())?;
    Ok(result.pass())
}
