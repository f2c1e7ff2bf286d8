use std::process::ExitCode;

use braidcong::braid::{tw_construct_capped, RepSpec};
use braidcong::catalog::catalog_listing;
use braidcong::closure::{enumerate_group, DEFAULT_CLOSURE_CAP};
use braidcong::cyclotomic::DEFAULT_MAX_CONDUCTOR;
use braidcong::linear::DEFAULT_ORDER_CAP;
use braidcong::pipeline::{
    full_pipeline, full_pipeline_all, modular_matrices, Limits, PipelineReport, ThetaPolicy,
    VerdictReport,
};
use braidcong::suite::{hsu_oracle, to_json, verify_mtc, verify_theorem_a, verify_theorem_b};
use braidcong::{braid, RootFraction};
use clap::{Args, Parser, Subcommand};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_NOT_APPLICABLE: u8 = 2;

/// Congruence tests for kernels of two- and three-dimensional B3
/// representations. Eigenvalues are written k/n, meaning e^{2 pi i k/n}.
/// `println!` that exits quietly when stdout is closed (e.g. piped into `head`).
macro_rules! out {
    () => { out!("") };
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
        }
    }};
}

#[derive(Parser, Debug)]
#[command(name = "braidcong", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the kernel of a representation is a congruence subgroup.
    Classify(ClassifyArgs),
    /// Run every finite-image case with projective order 2..=5.
    VerifyTheoremA {
        /// Run only the case (or family prefix) with this name, e.g. A2:r4j1:λ=7/24.
        #[arg(long)]
        only: Option<String>,
        #[command(flatten)]
        caps: Caps,
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Check the non-congruence families rho_{l,+} and rho_{l,-}.
    VerifyTheoremB {
        /// Odd l >= 3; repeatable.
        #[arg(long = "ell", default_values_t = [3u64, 5, 7, 9])]
        ells: Vec<u64>,
        #[command(flatten)]
        caps: Caps,
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Check the modular tensor category examples C, D, sigma and G.
    VerifyMtc {
        #[command(flatten)]
        caps: Caps,
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// List every named representation.
    Catalog {
        #[arg(long = "ell", default_values_t = [3u64, 5, 7, 9])]
        ells: Vec<u64>,
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate Hsu's generators as integer matrices mod N.
    HsuOracle {
        #[arg(long, default_value_t = 2)]
        from: u64,
        #[arg(long, default_value_t = 60)]
        to: u64,
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the image of the rescaled modular representation.
    Closure(ClosureArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct Caps {
    /// Largest matrix order searched for.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: u64,
    /// Largest cyclotomic conductor accepted for input spectra.
    #[arg(long, default_value_t = DEFAULT_MAX_CONDUCTOR)]
    max_conductor: u64,
    /// Largest group enumerated before giving up.
    #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
    closure_cap: usize,
}

impl Caps {
    fn limits(&self) -> Limits {
        Limits {
            order_cap: self.order_cap,
            conductor_cap: self.max_conductor,
            closure_cap: self.closure_cap,
            ..Limits::default()
        }
    }
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Dimension, 2 or 3.
    #[arg(long)]
    dim: usize,
    /// Eigenvalue of the image of sigma_1 as k/n; repeat once per dimension.
    #[arg(long = "eig", required = true, allow_hyphen_values = true)]
    eigs: Vec<String>,
    /// Scale by e^{2 pi i k/n} instead of the default choice.
    #[arg(long, conflicts_with = "all_scalings", allow_hyphen_values = true)]
    theta: Option<String>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Report all six scalings that factor through the modular group.
    #[arg(long)]
    all_scalings: bool,
    /// List every failing generator, not only the first.
    #[arg(long)]
    all_failing: bool,
    /// Enumerate the image to report its order.
    #[arg(long)]
    image_order: bool,
    /// Include per-stage timings in the report.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    caps: Caps,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ClosureArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    all_scalings: bool,
    #[command(flatten)]
    caps: Caps,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

fn parse_fraction(s: &str, flag: &str) -> Result<RootFraction, String> {
    s.parse().map_err(|e| format!("--{flag} {s:?}: {e}"))
}

fn parse_spec(a: &SpecArgs) -> Result<(RepSpec, ThetaPolicy), String> {
    let eigs = a
        .eigs
        .iter()
        .map(|s| parse_fraction(s, "eig"))
        .collect::<Result<Vec<_>, _>>()?;
    if eigs.len() != a.dim {
        return Err(format!(
            "--dim {} needs {} --eig values, got {}",
            a.dim,
            a.dim,
            eigs.len()
        ));
    }
    let spec = RepSpec::new(eigs).map_err(|e| e.to_string())?;
    let policy = match &a.theta {
        Some(t) => ThetaPolicy::Explicit(parse_fraction(t, "theta")?),
        None => ThetaPolicy::Auto,
    };
    Ok((spec, policy))
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn verdict_line(v: &VerdictReport) -> String {
    match v {
        VerdictReport::Congruence { level } => format!("congruence, level {level}"),
        VerdictReport::NonCongruence { .. } => "non-congruence".into(),
        VerdictReport::NotApplicable { reason } => format!("not applicable: {reason}"),
    }
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".into(), |x| x.to_string())
}

fn fractions(v: &[RootFraction]) -> String {
    let parts: Vec<String> = v.iter().map(|f| f.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn print_report(r: &PipelineReport) {
    out!("spec        {}", r.spec);
    out!("theta       {}", opt(&r.theta));
    out!("po          {}", r.po);
    out!("spectrum    {}", fractions(&r.spectrum));
    out!(
        "finiteness  {:?} ({:?})",
        r.classification.finiteness,
        r.classification.clause
    );
    out!("glevel      {}", opt(&r.glevel));
    out!("verdict     {}", verdict_line(&r.verdict));
    if let VerdictReport::NonCongruence {
        witness,
        witness_label,
        evaluated_matrix,
        ..
    } = &r.verdict
    {
        out!("witness     {witness}   ({witness_label})");
        for row in evaluated_matrix {
            out!("            [{}]", row.join(", "));
        }
    }
    if let Some(ws) = &r.failing_words {
        out!("failing     {}", ws.len());
        for w in ws {
            out!("            {}", w.witness);
        }
    }
    if let Some(n) = r.image_order {
        out!("image order {n}");
    }
    if r.conditional {
        out!("conditional yes");
    }
    for n in &r.notes {
        out!("note        {n}");
    }
    if let Some(t) = &r.timings_ms {
        let parts: Vec<String> = t.iter().map(|(k, v)| format!("{k}={v}ms")).collect();
        out!("timings     {}", parts.join(" "));
    }
}

fn verdict_exit(reports: &[PipelineReport]) -> ExitCode {
    if reports.iter().all(|r| r.verdict.is_definitive()) {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_NOT_APPLICABLE)
    }
}

fn pass_exit(all_pass: bool) -> ExitCode {
    ExitCode::from(if all_pass { EXIT_OK } else { EXIT_INPUT })
}

fn classify(a: &ClassifyArgs) -> ExitCode {
    let (spec, policy) = match parse_spec(&a.spec) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let limits = Limits {
        all_failing: a.all_failing,
        image_order: a.image_order,
        timings: a.timings,
        ..a.caps.limits()
    };
    let reports = if a.all_scalings {
        full_pipeline_all(&spec, &limits)
    } else {
        full_pipeline(&spec, policy, &limits).map(|r| vec![r])
    };
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    if a.json {
        if a.all_scalings {
            out!("{}", to_json(&reports));
        } else {
            out!("{}", reports[0].to_json());
        }
    } else {
        for (i, r) in reports.iter().enumerate() {
            if i > 0 {
                out!();
            }
            print_report(r);
        }
    }
    verdict_exit(&reports)
}

fn closure(a: &ClosureArgs) -> ExitCode {
    let (spec, policy) = match parse_spec(&a.spec) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let run = || -> braidcong::Result<Vec<(RootFraction, braidcong::closure::ClosureResult)>> {
        let rep = tw_construct_capped(&spec, a.caps.max_conductor)?;
        let thetas = match policy {
            _ if a.all_scalings => braid::modular_scalings(&rep)?,
            ThetaPolicy::Explicit(t) => vec![t],
            _ => vec![braid::scale_to_modular(&rep)?.1],
        };
        thetas
            .into_iter()
            .map(|t| {
                let (x, y) = modular_matrices(&rep, t)?;
                Ok((t, enumerate_group(&[x, y], a.caps.closure_cap)?))
            })
            .collect()
    };
    let results = match run() {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    if a.json {
        let v: Vec<serde_json::Value> = results
            .iter()
            .map(|(t, r)| serde_json::json!({ "theta": t, "closure": r }))
            .collect();
        out!("{}", to_json(&v));
    } else {
        for (t, r) in &results {
            let size = if r.finite {
                format!("finite, order {}", r.order)
            } else {
                format!("cap hit after {} elements", r.order)
            };
            out!("theta {t}: {size} (explored {})", r.elements_explored);
        }
    }
    if results.iter().all(|(_, r)| r.finite) {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_NOT_APPLICABLE)
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Classify(a) => classify(&a),
        Command::Closure(a) => closure(&a),
        Command::VerifyTheoremA { only, caps, json } => {
            let out = match verify_theorem_a(only.as_deref(), &caps.limits()) {
                Ok(o) => o,
                Err(e) => return fail(e),
            };
            if json {
                out!("{}", to_json(&out));
            } else {
                for o in &out {
                    out!(
                        "{:<4} {:<24} expected {:<4} {:<10} {}",
                        if o.pass { "PASS" } else { "FAIL" },
                        o.name,
                        opt(&o.expected_level),
                        format!("{:?}", o.level_source).to_lowercase(),
                        verdict_line(&o.verdict)
                    );
                }
                let passed = out.iter().filter(|o| o.pass).count();
                out!("{passed}/{} cases pass", out.len());
            }
            pass_exit(out.iter().all(|o| o.pass))
        }
        Command::VerifyTheoremB { ells, caps, json } => {
            let out = match verify_theorem_b(&ells, &caps.limits()) {
                Ok(o) => o,
                Err(e) => return fail(e),
            };
            if json {
                out!("{}", to_json(&out));
            } else {
                for o in &out {
                    out!(
                        "{:<4} {:<9} po {:<3} order {:<4} glevel {:<4} {} witness {} eigenvector {} printed X {} Y {}",
                        if o.pass { "PASS" } else { "FAIL" },
                        o.name,
                        o.po,
                        opt(&o.order_x),
                        opt(&o.glevel),
                        verdict_line(&o.verdict),
                        o.commutator_word,
                        if o.eigenvector_check { "ok" } else { "wrong" },
                        if o.printed.x_matches { "matches" } else { "differs" },
                        if o.printed.y_matches { "matches" } else { "differs" },
                    );
                }
            }
            pass_exit(out.iter().all(|o| o.pass))
        }
        Command::VerifyMtc { caps, json } => {
            let out = match verify_mtc(&caps.limits()) {
                Ok(o) => o,
                Err(e) => return fail(e),
            };
            if json {
                out!("{}", to_json(&out));
            } else {
                for o in &out {
                    out!(
                        "{:<4} {:<9} po {} theta {:<6} spectrum {} {}",
                        if o.pass { "PASS" } else { "FAIL" },
                        o.name,
                        o.po,
                        opt(&o.theta),
                        fractions(&o.spectrum),
                        verdict_line(&o.verdict)
                    );
                }
            }
            pass_exit(out.iter().all(|o| o.pass))
        }
        Command::Catalog { ells, json } => {
            let out = match catalog_listing(&ells) {
                Ok(o) => o,
                Err(e) => return fail(e),
            };
            if json {
                out!("{}", to_json(&out));
            } else {
                for e in &out {
                    let level = e
                        .expected_level
                        .map(|l| format!("level {l}"))
                        .unwrap_or_default();
                    out!("{:<24} {:<32} {level}", e.name, e.spec.to_string());
                }
            }
            ExitCode::from(EXIT_OK)
        }
        Command::HsuOracle { from, to, json } => {
            let out = match hsu_oracle(from, to) {
                Ok(o) => o,
                Err(e) => return fail(e),
            };
            if json {
                out!("{}", to_json(&out));
            } else {
                for o in &out {
                    out!(
                        "{:<4} N={:<4} {:<12} words {} c={} d={} t={} f={}{}",
                        if o.pass { "PASS" } else { "FAIL" },
                        o.n,
                        format!("{:?}", o.branch).to_lowercase(),
                        o.words,
                        opt(&o.c),
                        opt(&o.d),
                        opt(&o.t),
                        opt(&o.f),
                        if o.failures.is_empty() {
                            String::new()
                        } else {
                            format!(" failing: {}", o.failures.join("; "))
                        }
                    );
                }
            }
            pass_exit(out.iter().all(|o| o.pass))
        }
    }
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            ExitCode::from(code)
        }
    }
}
