//! Command-line front end. Each subcommand prints a line-oriented report to
//! the given writer and maps its verdict to an exit status.

use crate::error::{Error, Result};
use crate::families::{
    config_from_presentation, emit_presentation, example_sequences, plan_construction, validate_family_conditions,
    validate_pq, ConstructionConfig, Dim, Target,
};
use crate::presentation::{
    check_cprime, parse_rational, quasigeodesic_audit, AuditOutcome, BfsConfig, CentralExtSpec, Presentation,
};
use crate::report::{Provenance, Report, Status};
use crate::scalednorm::{
    check_norm_equivalences, cube_embedding, geodesic_form, norm_induced, norm_qu, Order, ScaledSum, SumElement,
};
use crate::vkd::{
    builtin_presentation, face_counts, faces_are_disks, generate_corpus, greendlinger_check, is_bare, is_reduced,
    normalize, parse_diagram, perimeter_check, validate_diagram, write_diagram, GreendlingerOutcome, Hypotheses, Level,
    RelatorTable,
};
use crate::words::Alphabet;
use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "smallcancel",
    version,
    about = "Small-cancellation presentations, scaled norms and van Kampen diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a truncated presentation of A, B, H or G.
    Gen(GenArgs),
    /// Check family conditions, the p/q conditions, or C'(λ) of a file.
    Validate(ValidateArgs),
    /// Evaluate scaled norms, norm equivalences and cube certificates.
    Norm(NormArgs),
    /// Audit the quasigeodesic bound for u = ũ ∏ u_i^{k_i}.
    Audit(AuditArgs),
    /// Diagram checks, normalization and corpus generation.
    Diagram(DiagramArgs),
    /// Print the construction recipe for prescribed dimensions.
    Plan(PlanArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub m: String,
    #[arg(long)]
    pub n: String,
    /// Truncation: number of indices emitted.
    #[arg(long = "N")]
    pub big_n: usize,
    #[arg(long, default_value = "G")]
    pub target: String,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Use the explicit k = 14 families.
    #[arg(long = "paper-example", conflicts_with = "presentation")]
    pub explicit: bool,
    #[arg(long, default_value = "1")]
    pub m: String,
    #[arg(long, default_value = "2")]
    pub n: String,
    #[arg(long = "N", default_value_t = 16)]
    pub big_n: usize,
    /// Indices checked by the p/q conditions.
    #[arg(long = "J", default_value_t = 64)]
    pub big_j: u64,
    /// A presentation file; family headers select the family checks,
    /// otherwise C'(λ) is checked.
    #[arg(long)]
    pub presentation: Option<PathBuf>,
    #[arg(long)]
    pub lambda: Option<String>,
    /// Stop the C'(λ) sweep after this many pairs.
    #[arg(long)]
    pub pairs: Option<usize>,
}

#[derive(Args, Debug)]
pub struct NormArgs {
    /// Comma-separated orders; `inf` for Z.
    #[arg(long)]
    pub orders: String,
    /// Comma-separated positive rationals.
    #[arg(long)]
    pub scalings: String,
    /// Comma-separated coordinates of one element.
    #[arg(long)]
    pub element: Option<String>,
    /// Sample this many elements and check the norm equivalences.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Certify a cube on these coordinates (comma-separated).
    #[arg(long)]
    pub cube: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub s_p: u64,
    #[arg(long, default_value_t = 1)]
    pub k_p: u64,
    /// Cube dimension; defaults to the block size.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[arg(long, default_value = "a x")]
    pub alphabet: String,
    /// A central relator word u_i; repeat for several.
    #[arg(long = "u", required = true)]
    pub us: Vec<String>,
    /// Order of each u_i, in the same order.
    #[arg(long = "order")]
    pub orders: Vec<String>,
    #[arg(long, default_value = "e")]
    pub tilde: String,
    /// Exponents k_i, comma-separated.
    #[arg(long, default_value = "")]
    pub k: String,
    #[arg(long, default_value = "1/13")]
    pub lambda: String,
    #[arg(long, default_value_t = 8)]
    pub radius: usize,
    #[arg(long, default_value_t = 100_000)]
    pub max_states: usize,
}

#[derive(Args, Debug)]
pub struct DiagramArgs {
    #[command(subcommand)]
    pub action: DiagramAction,
}

#[derive(Subcommand, Debug)]
pub enum DiagramAction {
    /// Validate a diagram and run the counts, geometry, Greendlinger and
    /// perimeter checks that apply.
    Check {
        file: PathBuf,
        /// Builtin name or presentation file; defaults to the diagram's own.
        #[arg(long)]
        presentation: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Normalize and print the result in the diagram format.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        presentation: Option<String>,
        #[arg(long, default_value = "wlog4")]
        level: String,
        #[arg(long)]
        generators_nontrivial: bool,
        #[arg(long)]
        aspherical: bool,
    },
    /// Write the seeded corpus, one file per diagram.
    Corpus {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct PlanArgs {
    #[arg(long)]
    pub k: String,
    #[arg(long)]
    pub m: String,
    #[arg(long)]
    pub n: String,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Errors go to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_code(&e)
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge(_) | Error::TruncationTooSmall(_) => EXIT_INCONCLUSIVE,
        Error::Precondition(_) | Error::Refused(_) | Error::Unsupported(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<()> {
    write!(out, "{text}")?;
    Ok(())
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Gen(a) => gen(a, out),
        Command::Validate(a) => validate(a, out),
        Command::Norm(a) => norm(a, out),
        Command::Audit(a) => audit(a, out),
        Command::Diagram(a) => diagram(&a.action, out),
        Command::Plan(a) => {
            let recipe = plan_construction(Dim::parse(&a.k)?, Dim::parse(&a.m)?, Dim::parse(&a.n)?)?;
            emit(out, format_args!("{recipe}\n"))?;
            Ok(EXIT_PASS)
        }
    }
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = ConstructionConfig::explicit_example(Dim::parse(&a.m)?, Dim::parse(&a.n)?, a.big_n)?;
    let p = emit_presentation(&cfg, Target::parse(&a.target)?)?;
    emit(out, p.to_text())?;
    Ok(EXIT_PASS)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn validate(a: &ValidateArgs, out: &mut dyn Write) -> Result<i32> {
    let mut rep = Report::new("validate");
    if let Some(path) = &a.presentation {
        let p = Presentation::parse(&read(path)?)?;
        if !p.meta.is_empty() {
            let (cfg, _) = config_from_presentation(&p)?;
            rep.extend(validate_family_conditions(&cfg));
        } else {
            let lambda = match (&a.lambda, &p.lambda) {
                (Some(l), _) => parse_rational(l)?,
                (None, Some(l)) => l.clone(),
                (None, None) => return Err(Error::Parse("no λ given: pass --lambda or a `lambda:` line".into())),
            };
            let cp = check_cprime(&p, &lambda, a.pairs)?;
            let worst = cp.worst_pair.map(|(i, j)| format!(" at pair ({i},{j})")).unwrap_or_default();
            rep.check(
                format!("C'({lambda})"),
                cp.holds,
                format!("max piece ratio {}{worst}, {} pairs", cp.max_ratio, cp.pairs_checked),
            );
            if a.pairs.is_some_and(|b| cp.pairs_checked >= b) {
                rep.push(
                    "pair bound",
                    Status::Inconclusive,
                    format!("stopped after {} pairs", cp.pairs_checked),
                    Some(Provenance::CapLimited),
                );
            }
        }
    } else if a.explicit {
        let (m, n) = (Dim::parse(&a.m)?, Dim::parse(&a.n)?);
        let (p, q) = example_sequences(m, n)?;
        rep.extend(validate_pq(m, n, &p, &q, a.big_j));
        rep.extend(validate_family_conditions(&ConstructionConfig::explicit_example(m, n, a.big_n)?));
    } else {
        return Err(Error::Parse("pass --paper-example or --presentation FILE".into()));
    }
    emit(out, &rep)?;
    Ok(status_code(rep.status()))
}

fn list<T>(s: &str, f: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(f).collect()
}

fn int(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::Parse(format!("expected an integer, got `{s}`")))
}

fn norm(a: &NormArgs, out: &mut dyn Write) -> Result<i32> {
    let orders = list(&a.orders, |t| {
        if t == "inf" {
            Ok(Order::Infinite)
        } else {
            t.parse::<BigUint>().map(Order::Finite).map_err(|_| Error::Parse(format!("bad order `{t}`")))
        }
    })?;
    let group = ScaledSum::new(orders, list(&a.scalings, parse_rational)?)?;
    let mut rep = Report::new("scaled norm");
    if let Some(e) = &a.element {
        let coords = list(e, int)?;
        let x = SumElement::new(&group, coords.into_iter().enumerate())?;
        let form: Vec<String> = geodesic_form(&x, &group).coeffs.iter().map(|(i, v)| format!("{i}:{v}")).collect();
        rep.pass("geodesic form", format!("[{}]", form.join(" ")));
        rep.pass("norm_s", norm_induced(&x, &group).to_string());
        match norm_qu(&x, &group) {
            Ok(q) => rep.pass("norm_qu", q.to_string()),
            Err(e) => rep.push("norm_qu", Status::Inconclusive, e.to_string(), None),
        }
    }
    if let Some(samples) = a.samples {
        rep.extend(check_norm_equivalences(&group, samples, a.seed));
    }
    if let Some(b) = &a.cube {
        let block = list(b, |t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad index `{t}`"))))?;
        let n = a.dim.unwrap_or(block.len());
        let cube = cube_embedding(&group, &block, a.s_p, a.k_p, n)?;
        let name = format!("cube {{0..{}}}^{n} scaled by {}", a.k_p, a.s_p);
        match cube.mismatches {
            Some(m) => rep.check(name, m == 0, format!("{m} mismatches over {} pairs", cube.pairs_checked)),
            None => rep.push(name, Status::Inconclusive, "too many points to certify", Some(Provenance::CapLimited)),
        }
    }
    if rep.checks.is_empty() {
        return Err(Error::Parse("nothing to do: pass --element, --samples or --cube".into()));
    }
    emit(out, &rep)?;
    Ok(status_code(rep.status()))
}

fn audit(a: &AuditArgs, out: &mut dyn Write) -> Result<i32> {
    let alphabet = Alphabet::new(a.alphabet.split_whitespace())?;
    let us = a.us.iter().map(|w| alphabet.parse_word(w)).collect::<Result<Vec<_>>>()?;
    let orders = if a.orders.is_empty() {
        return Err(Error::Parse("each --u needs an --order".into()));
    } else {
        a.orders.iter().map(|o| int(o)).collect::<Result<Vec<_>>>()?
    };
    let spec = CentralExtSpec::a_type(alphabet.clone(), us, orders)?;
    let tilde = alphabet.parse_word(&a.tilde)?;
    let ks = list(&a.k, int)?;
    let cfg = BfsConfig { radius: a.radius, max_states: a.max_states };
    let r = quasigeodesic_audit(&tilde, &ks, &spec, &parse_rational(&a.lambda)?, &cfg)?;
    emit(out, &r.report)?;
    Ok(match r.outcome {
        AuditOutcome::Pass => EXIT_PASS,
        AuditOutcome::Inconclusive => EXIT_INCONCLUSIVE,
        AuditOutcome::Violation | AuditOutcome::HypothesisFailed => EXIT_FAIL,
    })
}

/// The presentation for a diagram: `--presentation` (builtin name or file),
/// else the diagram's own `presentation` line as a builtin name or as a
/// path beside the diagram file.
fn diagram_presentation(requested: Option<&str>, text: &str, file: &Path) -> Result<Presentation> {
    let own = text
        .lines()
        .find_map(|l| l.trim().strip_prefix("presentation "))
        .map(str::trim)
        .ok_or_else(|| Error::Parse("missing `presentation` line".into()))?;
    let (name, base) = match requested {
        Some(r) => (r, Path::new(".")),
        None => (own, file.parent().unwrap_or(Path::new("."))),
    };
    if let Some(p) = builtin_presentation(name) {
        return Ok(p);
    }
    Presentation::parse(&read(&base.join(name))?)
}

fn load(file: &Path, presentation: Option<&str>) -> Result<(crate::vkd::Diagram, RelatorTable)> {
    let text = read(file)?;
    let p = diagram_presentation(presentation, &text, file)?;
    let d = parse_diagram(&text, &p.alphabet)?;
    Ok((d, RelatorTable::new(&p)?))
}

fn not_applicable(rep: &mut Report, name: &str, why: impl std::fmt::Display) {
    rep.push(name, Status::Pass, format!("not applicable: {why}"), None);
}

fn diagram(action: &DiagramAction, out: &mut dyn Write) -> Result<i32> {
    match action {
        DiagramAction::Check { file, presentation, lambda } => {
            let (d, table) = load(file, presentation.as_deref())?;
            let mut rep = validate_diagram(&d, &table);
            if !rep.all_pass() {
                emit(out, &rep)?;
                return Ok(EXIT_FAIL);
            }
            let c = face_counts(&d, &table)?;
            for r in 0..table.len() {
                rep.pass(format!("r{r} counts"), format!("kappa {} sigma {}", c.kappa[r], c.sigma[r]));
            }
            let bare_reduced = is_bare(&d, &table) && is_reduced(&d, &table);
            if bare_reduced {
                rep.extend(faces_are_disks(&d));
            } else {
                not_applicable(&mut rep, "face geometry", "diagram is not bare and reduced");
            }
            match greendlinger_check(&d, &table) {
                Ok(GreendlingerOutcome::Face { dart, shared, length, .. }) => {
                    rep.pass("greendlinger", format!("face at dart {dart} shares {shared} of {length} edges"))
                }
                Ok(GreendlingerOutcome::NotApplicable(why)) => not_applicable(&mut rep, "greendlinger", why),
                Ok(GreendlingerOutcome::Violation { best }) => {
                    rep.fail("greendlinger", format!("no face shares more than half; best run {best}"))
                }
                Err(Error::Precondition(why)) => not_applicable(&mut rep, "greendlinger", why),
                Err(e) => return Err(e),
            }
            let lam = match (lambda, &table.presentation.lambda) {
                (Some(l), _) => parse_rational(l)?,
                (None, Some(l)) => l.clone(),
                (None, None) => BigRational::new(1.into(), 6.into()),
            };
            match perimeter_check(&d, &table, &lam) {
                Ok(p) => rep.extend(p),
                Err(Error::Precondition(why)) => not_applicable(&mut rep, "perimeter", why),
                Err(e) => return Err(e),
            }
            emit(out, &rep)?;
            Ok(status_code(rep.status()))
        }
        DiagramAction::Normalize { file, presentation, level, generators_nontrivial, aspherical } => {
            let (d, table) = load(file, presentation.as_deref())?;
            let level: Level = level.parse()?;
            let hyp = Hypotheses { generators_nontrivial: *generators_nontrivial, aspherical: *aspherical };
            let m = normalize(&d, &table, level, hyp)?;
            emit(out, write_diagram(&m, &table.presentation.alphabet))?;
            let c = face_counts(&m, &table)?;
            emit(out, format_args!("# edges {} -> {}, sigma {:?}\n", d.edge_count(), m.edge_count(), c.sigma))?;
            Ok(EXIT_PASS)
        }
        DiagramAction::Corpus { seed, out: dir } => {
            let (entries, stats) = generate_corpus(*seed)?;
            std::fs::create_dir_all(dir)?;
            let alphabet = builtin_presentation("corpus").expect("builtin").alphabet;
            for e in &entries {
                std::fs::write(dir.join(format!("{}.vkd", e.name)), write_diagram(&e.diagram, &alphabet))?;
            }
            emit(
                out,
                format_args!(
                    "corpus seed {seed}: {} diagrams, {} attempts, {} padding steps skipped\n",
                    entries.len(),
                    stats.attempts,
                    stats.skipped_unsupported
                ),
            )?;
            Ok(EXIT_PASS)
        }
    }
}
