//! `ezd`: verify exact zerodivisor pairs over graded quotient rings and
//! build certified families of indecomposable totally reflexive modules.
//!
//! Exit codes: 0 = verified/success, 1 = mathematical refusal,
//! 2 = input error. Output is deterministic for fixed inputs.

use clap::{Args, Parser, Subcommand};
use ezd_core::family::{generate_family, FamilyConfig, FamilyError};
use ezd_core::fp_module::Window;
use ezd_core::invariant::{s_invariant, InvariantError};
use ezd_core::parser::ParseError;
use ezd_core::report::{
    self, family_entry, full_report, render_csv, render_text, ring_description,
    GregReport, HypothesisChecks, MainReport, PairReport,
};
use ezd_core::resolution::minimal_free_resolution;
use ezd_core::ring::{
    g_regularity_certificate, is_exact_zerodivisor_pair, EzdPair, QuotientRing, RingElement,
    RingError,
};
use ezd_core::extension::ExtensionMatrix;
use ezd_core::hilbert::{hilbert_data, krull_dim};
use ezd_core::{FieldKind, MonomialOrder, RingCtx};
use serde::{Deserialize, Serialize};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "ezd", version, about = "exact zerodivisor pairs and totally reflexive module families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify that {x, y} is an exact zerodivisor pair of the ring
    CheckEzd(CheckArgs),
    /// Build the parameterized family T(x, y, a1 + r*b, a2, ..., an)
    Family(FamilyArgs),
    /// Generator counts of powers of the maximal ideal over R/(x,y)
    SInvariant(SInvArgs),
    /// Minimal free resolution of the extension module of given witnesses
    Resolve(ResolveArgs),
    /// Full report: hypotheses, multiplicities, certified members r = 0..r_max
    Report(ReportArgs),
}

#[derive(Args)]
struct RingFlag {
    /// Ring specification file (TOML: field, vars, relations, order)
    #[arg(long)]
    ring: String,
    /// First element of the pair
    #[arg(long)]
    x: String,
    /// Second element of the pair
    #[arg(long)]
    y: String,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    ring: RingFlag,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct FamilyArgs {
    #[command(flatten)]
    ring: RingFlag,
    /// Number of witnesses a1..an (the extension rank)
    #[arg(long)]
    n: usize,
    /// Semicolon-separated witness expressions a1;...;an;b
    #[arg(long)]
    witnesses: String,
    /// Comma-separated parameter values
    #[arg(long)]
    r: String,
    #[arg(long, default_value_t = 8)]
    trunc: u32,
    #[arg(long, default_value_t = 6)]
    steps: usize,
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    #[arg(long)]
    assume_g_regular: Option<String>,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct SInvArgs {
    #[command(flatten)]
    ring: RingFlag,
    /// Highest power of the maximal ideal to examine
    #[arg(long, default_value_t = 5)]
    powers: u32,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct ResolveArgs {
    #[command(flatten)]
    ring: RingFlag,
    /// Semicolon-separated witness expressions a1;...;an
    #[arg(long, default_value = "")]
    witnesses: String,
    #[arg(long, default_value_t = 8)]
    trunc: u32,
    #[arg(long, default_value_t = 6)]
    steps: usize,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    ring: RingFlag,
    /// Largest extension rank to certify
    #[arg(long, default_value_t = 2)]
    r_max: usize,
    #[arg(long, default_value_t = 8)]
    trunc: u32,
    #[arg(long, default_value_t = 6)]
    steps: usize,
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    #[arg(long)]
    assume_g_regular: Option<String>,
    #[arg(long, default_value = "text")]
    format: String,
}

enum Failure {
    /// exit 1: a mathematically meaningful refusal
    Refusal(String),
    /// exit 2: bad input
    Input(String),
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Failure {
        match e {
            RingError::NotExactPair { .. }
            | RingError::ZeroElement
            | RingError::UnitElement(_) => Failure::Refusal(e.to_string()),
            RingError::Parse(_) | RingError::UnitIdeal | RingError::NonHomogeneous(_) => {
                Failure::Input(e.to_string())
            }
            other => Failure::Refusal(other.to_string()),
        }
    }
}

impl From<ezd_core::hilbert::HilbertError> for Failure {
    fn from(e: ezd_core::hilbert::HilbertError) -> Failure {
        use ezd_core::hilbert::HilbertError;
        match e {
            // a fit that never stabilizes is a mathematical outcome
            HilbertError::FitFailed { .. } => Failure::Refusal(e.to_string()),
            HilbertError::NonHomogeneous(_) | HilbertError::UnitIdeal => {
                Failure::Input(e.to_string())
            }
        }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Failure {
        match e {
            InvariantError::WitnessRefusal { .. } => Failure::Refusal(e.to_string()),
            InvariantError::Ring(r) => r.into(),
            InvariantError::Hilbert(h) => h.into(),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Failure {
        match e {
            FamilyError::NuCheckFailed { .. }
            | FamilyError::NothingToReduce(_)
            | FamilyError::SeparationFailed { .. }
            | FamilyError::MeasureMismatch(_) => Failure::Refusal(e.to_string()),
            FamilyError::Ring(r) => r.into(),
            FamilyError::Invariant(i) => i.into(),
            FamilyError::Hilbert(h) => h.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

#[derive(Deserialize)]
struct RingSpecFile {
    field: String,
    p: Option<u32>,
    vars: Vec<String>,
    relations: Vec<String>,
    #[serde(default)]
    order: Option<String>,
}

fn parse_field(spec: &RingSpecFile) -> Result<FieldKind, Failure> {
    let text = spec.field.trim();
    if text.eq_ignore_ascii_case("q") {
        return Ok(FieldKind::Rational);
    }
    let p = if let Some(rest) = text.strip_prefix('F').or_else(|| text.strip_prefix('f')) {
        if rest.eq_ignore_ascii_case("p") {
            spec.p.ok_or_else(|| {
                Failure::Input("field \"Fp\" requires the key p = <prime>".to_string())
            })?
        } else {
            rest.parse::<u32>().map_err(|_| {
                Failure::Input(format!("unrecognized field `{text}`; use \"Q\" or \"F<p>\""))
            })?
        }
    } else {
        return Err(Failure::Input(format!(
            "unrecognized field `{text}`; use \"Q\" or \"F<p>\""
        )));
    };
    if p < 2 || !(2..p).all(|d| d * d > p || p % d != 0) {
        return Err(Failure::Input(format!("{p} is not a prime")));
    }
    Ok(FieldKind::prime(p))
}

fn load_ring(path: &str) -> Result<Arc<QuotientRing>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read ring file {path}: {e}")))?;
    let spec: RingSpecFile =
        toml::from_str(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    let field = parse_field(&spec)?;
    let order = match spec.order.as_deref() {
        None | Some("grevlex") => MonomialOrder::GrevLex,
        Some("lex") => MonomialOrder::Lex,
        Some(other) => {
            return Err(Failure::Input(format!("unknown order `{other}`; use grevlex or lex")))
        }
    };
    if spec.vars.is_empty() {
        return Err(Failure::Input("ring needs at least one variable".to_string()));
    }
    let ctx = RingCtx::new(field, spec.vars.clone(), order);
    let mut relations = Vec::new();
    for (idx, rel) in spec.relations.iter().enumerate() {
        let p = ezd_core::parse_polynomial(rel, &ctx).map_err(|e| {
            Failure::Input(format!(
                "{path}: relation {} (line entry \"{rel}\"), column {}: {e}",
                idx + 1,
                e.column()
            ))
        })?;
        relations.push(p);
    }
    QuotientRing::new(&ctx, relations).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn parse_element(ring: &Arc<QuotientRing>, text: &str, what: &str) -> Result<RingElement, Failure> {
    RingElement::parse(ring, text)
        .map_err(|e: ParseError| Failure::Input(format!("{what} `{text}`, column {}: {e}", e.column())))
}

fn verified_pair(
    ring: &Arc<QuotientRing>,
    x_expr: &str,
    y_expr: &str,
) -> Result<EzdPair, Failure> {
    let x = parse_element(ring, x_expr, "pair element x")?;
    let y = parse_element(ring, y_expr, "pair element y")?;
    Ok(is_exact_zerodivisor_pair(ring, &x, &y)?)
}

fn greg_for_pair(
    ring: &Arc<QuotientRing>,
    pair: &EzdPair,
    note: Option<&str>,
) -> Result<ezd_core::ring::GRegularityCertificate, Failure> {
    let ring_x = ring.mod_out(&[pair.x().rep().clone()])?;
    Ok(g_regularity_certificate(&ring_x, note)?)
}

#[derive(Serialize)]
struct CheckReport {
    ring: String,
    pair: PairReport,
    ann_x: Vec<String>,
    ann_y: Vec<String>,
}

fn cmd_check(args: &CheckArgs) -> Result<String, Failure> {
    let ring = load_ring(&args.ring.ring)?;
    let pair = verified_pair(&ring, &args.ring.x, &args.ring.y)?;
    let rep = CheckReport {
        ring: ring_description(&ring),
        pair: PairReport {
            x: pair.x().to_string(),
            y: pair.y().to_string(),
            verified: true,
        },
        ann_x: pair.checks().ann_x.clone(),
        ann_y: pair.checks().ann_y.clone(),
    };
    match args.format.as_str() {
        "json" => Ok(serde_json::to_string_pretty(&rep).unwrap() + "\n"),
        _ => Ok(format!(
            "ring: {}\nverified: {{{}, {}}} is an exact zerodivisor pair\n(0:{}) = ({})\n(0:{}) = ({})\n",
            rep.ring,
            rep.pair.x,
            rep.pair.y,
            rep.pair.x,
            rep.ann_x.join(", "),
            rep.pair.y,
            rep.ann_y.join(", "),
        )),
    }
}

fn split_exprs(list: &str) -> Vec<String> {
    list.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn family_config(ring: &Arc<QuotientRing>, trunc: u32, steps: usize, budget: u64) -> Result<FamilyConfig, Failure> {
    if trunc < 2 || steps < 2 {
        return Err(Failure::Input("trunc and steps must both be at least 2".to_string()));
    }
    Ok(FamilyConfig {
        window: Window::for_ring(ring, trunc),
        steps,
        budget,
        multiplicity_degree: trunc,
    })
}

fn cmd_family(args: &FamilyArgs) -> Result<String, Failure> {
    let ring = load_ring(&args.ring.ring)?;
    let pair = verified_pair(&ring, &args.ring.x, &args.ring.y)?;
    let greg = greg_for_pair(&ring, &pair, args.assume_g_regular.as_deref())?;
    let config = family_config(&ring, args.trunc, args.steps, args.budget)?;

    let exprs = split_exprs(&args.witnesses);
    if exprs.len() != args.n + 1 {
        return Err(Failure::Input(format!(
            "expected {} witnesses (a1..a{};b), got {}",
            args.n + 1,
            args.n,
            exprs.len()
        )));
    }
    let mut wits = Vec::new();
    for e in &exprs {
        wits.push(parse_element(&ring, e, "witness")?);
    }
    let b = wits.pop().unwrap();
    let mut r_values = Vec::new();
    for e in args.r.split(',').map(|s| s.trim()).filter(|s| !s.is_empty()) {
        r_values.push(parse_element(&ring, e, "parameter r")?);
    }
    if r_values.is_empty() {
        return Err(Failure::Input("at least one parameter value is required".to_string()));
    }

    let outcome = generate_family(&pair, &wits, &b, &r_values, &greg, &config)?;

    let coset = pair.coset_ring()?;
    let dim_ok = krull_dim(coset.defining_ideal()).unwrap_or(0) >= 2;
    let ring_x = ring.mod_out(&[pair.x().rep().clone()])?;
    let ring_y = ring.mod_out(&[pair.y().rep().clone()])?;
    let s_mult = hilbert_data(ring_x.defining_ideal(), config.multiplicity_degree)?.multiplicity;
    let t_mult = hilbert_data(ring_y.defining_ideal(), config.multiplicity_degree)?.multiplicity;
    let est = s_invariant(&pair, &[], 5)?;

    let report = MainReport {
        ring: ring_description(&ring),
        pair: PairReport {
            x: pair.x().to_string(),
            y: pair.y().to_string(),
            verified: true,
        },
        greg: GregReport { verdict: greg.verdict.to_string(), evidence: greg.evidence.clone() },
        s_invariant: report::s_invariant_report(&est),
        hypothesis_checks: HypothesisChecks { dim_ok },
        s_mult,
        t_mult,
        family: outcome
            .members
            .iter()
            .map(|m| family_entry(m, m.parameter.to_string()))
            .collect(),
        warnings: Vec::new(),
    };
    match args.format.as_str() {
        "json" => Ok(serde_json::to_string_pretty(&report).unwrap() + "\n"),
        "csv" => Ok(render_csv(&report)),
        _ => {
            let mut text = render_text(&report);
            text.push_str("pairwise comparisons:\n");
            for c in &outcome.comparisons {
                text.push_str(&format!(
                    "  members {} vs {}: {} (residues differ: {})\n",
                    c.left, c.right, c.outcome, c.residues_differ
                ));
            }
            Ok(text)
        }
    }
}

#[derive(Serialize)]
struct SInvReport {
    ring: String,
    pair: PairReport,
    verdict: String,
    nu_values: Vec<report::NuEntry>,
}

fn cmd_s_invariant(args: &SInvArgs) -> Result<String, Failure> {
    let ring = load_ring(&args.ring.ring)?;
    let pair = verified_pair(&ring, &args.ring.x, &args.ring.y)?;
    let est = s_invariant(&pair, &[], args.powers)?;
    let rep = SInvReport {
        ring: ring_description(&ring),
        pair: PairReport {
            x: pair.x().to_string(),
            y: pair.y().to_string(),
            verified: true,
        },
        verdict: est.verdict.to_string(),
        nu_values: report::s_invariant_report(&est).nu_values,
    };
    match args.format.as_str() {
        "json" => Ok(serde_json::to_string_pretty(&rep).unwrap() + "\n"),
        "csv" => {
            let mut out = String::from("ideal,power,nu\n");
            for v in &rep.nu_values {
                out.push_str(&format!("{},{},{}\n", v.ideal, v.power, v.nu));
            }
            Ok(out)
        }
        _ => {
            let mut out = format!("ring: {}\npair: ({}, {})\n", rep.ring, rep.pair.x, rep.pair.y);
            out.push_str("power | nu\n");
            for v in &rep.nu_values {
                out.push_str(&format!("{:>5} | {}\n", v.power, v.nu));
            }
            out.push_str(&format!("verdict: {}\n", rep.verdict));
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct ResolveReport {
    ring: String,
    presentation: String,
    differentials: Vec<String>,
    minimal: Vec<bool>,
    period: Option<usize>,
    period_at_most_2: bool,
    method: String,
}

fn cmd_resolve(args: &ResolveArgs) -> Result<String, Failure> {
    let ring = load_ring(&args.ring.ring)?;
    let pair = verified_pair(&ring, &args.ring.x, &args.ring.y)?;
    let mut wits = Vec::new();
    for e in split_exprs(&args.witnesses) {
        wits.push(parse_element(&ring, &e, "witness")?);
    }
    if args.trunc < 2 || args.steps < 2 {
        return Err(Failure::Input("trunc and steps must both be at least 2".to_string()));
    }
    let ext = ExtensionMatrix::new(&pair, &wits).map_err(|e| Failure::Refusal(e.to_string()))?;
    let window = Window::for_ring(&ring, args.trunc);
    let companion = ext.companion();
    let res = minimal_free_resolution(&ext.module(), args.steps, window, Some(&companion))
        .map_err(|e| Failure::Refusal(e.to_string()))?;
    let rep = ResolveReport {
        ring: ring_description(&ring),
        presentation: ext.matrix().pretty(),
        differentials: res.differentials.iter().map(|d| d.pretty()).collect(),
        minimal: res.minimal.clone(),
        period: res.period,
        period_at_most_2: res.period_at_most_two,
        method: format!("{:?}", res.method),
    };
    match args.format.as_str() {
        "json" => Ok(serde_json::to_string_pretty(&rep).unwrap() + "\n"),
        _ => {
            let mut out = format!("ring: {}\npresentation: {}\n", rep.ring, rep.presentation);
            for (i, d) in rep.differentials.iter().enumerate() {
                out.push_str(&format!(
                    "d{}: {} (minimal: {})\n",
                    i + 1,
                    d,
                    rep.minimal[i]
                ));
            }
            out.push_str(&format!(
                "period: {} (at most 2: {}, method {})\n",
                rep.period.map(|p| p.to_string()).unwrap_or_else(|| "none".to_string()),
                rep.period_at_most_2,
                rep.method
            ));
            Ok(out)
        }
    }
}

fn cmd_report(args: &ReportArgs) -> Result<String, Failure> {
    let ring = load_ring(&args.ring.ring)?;
    let pair = verified_pair(&ring, &args.ring.x, &args.ring.y)?;
    let greg = greg_for_pair(&ring, &pair, args.assume_g_regular.as_deref())?;
    let config = family_config(&ring, args.trunc, args.steps, args.budget)?;
    let report = full_report(&ring, &pair, &greg, args.r_max, &config)?;
    match args.format.as_str() {
        "json" => Ok(serde_json::to_string_pretty(&report).unwrap() + "\n"),
        "csv" => Ok(render_csv(&report)),
        _ => Ok(render_text(&report)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::CheckEzd(a) => cmd_check(a),
        Command::Family(a) => cmd_family(a),
        Command::SInvariant(a) => cmd_s_invariant(a),
        Command::Resolve(a) => cmd_resolve(a),
        Command::Report(a) => cmd_report(a),
    };
    match result {
        Ok(payload) => {
            print!("{payload}");
            ExitCode::SUCCESS
        }
        Err(Failure::Refusal(msg)) => {
            println!("refused: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
