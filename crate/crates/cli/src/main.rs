//! Command line front end for the sturmian-jsr library.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use sturmian_jsr::contfrac::{cf_of_quadratic, cf_of_real};
use sturmian_jsr::family::{builtin_bousch_mairesse, builtin_hmst, builtin_kozyakin, check_technical_hypotheses};
use sturmian_jsr::float::{format_fixed, format_sci, parse_decimal_rational};
use sturmian_jsr::irrational_preimage::{alpha_for_irrational, AlphaOptions};
use sturmian_jsr::oracle::jsr_bounds;
use sturmian_jsr::rational_preimage::{preimage_of, Endpoint, IntervalKind, PreimageInterval};
use sturmian_jsr::staircase::{build_staircase, export, export_to_writer, ratio_at, ExportFormat, RatioAnswer};
use sturmian_jsr::{Ball, CfExpansion, Error, ErrorKind, FloatCtx, MatrixFamily, Rational, Real};

#[derive(Parser)]
#[command(name = "sturmian-jsr", version, about = "Plateaus and irrational points of the Sturmian ratio function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// hmst, bm:KAPPA,H0,H1, kozyakin:A,B,C,D, or a JSON family file.
    #[arg(long, default_value = "hmst")]
    family: String,
    /// Working precision in bits (at least 64).
    #[arg(long, default_value_t = 256)]
    prec: usize,
    /// Decimal digits to print.
    #[arg(long, default_value_t = 20)]
    digits: usize,
    /// Output format: text or json (csv or json for staircase).
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// The plateau of alpha values with ratio P/Q.
    Interval {
        fraction: String,
        #[command(flatten)]
        common: Common,
        /// Print endpoints in exact quadratic-field form.
        #[arg(long)]
        exact: bool,
    },
    /// The unique alpha with an irrational ratio gamma.
    Alpha {
        #[command(flatten)]
        common: Common,
        /// Continued fraction of gamma: "2,1,1,..." or "3,1,5,1;period=2".
        #[arg(long, conflicts_with_all = ["quadratic", "decimal"])]
        cf: Option<String>,
        /// gamma = a + b*sqrt(D), given as "a,b,D".
        #[arg(long, allow_hyphen_values = true, conflicts_with = "decimal")]
        quadratic: Option<String>,
        /// gamma as a decimal, with --radius.
        #[arg(long)]
        decimal: Option<String>,
        /// Radius of the decimal enclosure of gamma.
        #[arg(long, default_value = "0")]
        radius: String,
        /// Use exactly this many terms.
        #[arg(long)]
        terms: Option<usize>,
        /// Known upper bound on every continued fraction coefficient.
        #[arg(long)]
        coeff_bound: Option<u64>,
    },
    /// alpha at gamma = (3 - sqrt 5)/2 for the hmst family.
    AlphaStar {
        #[command(flatten)]
        common: Common,
    },
    /// All plateaus with denominator up to qmax.
    Staircase {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 30)]
        qmax: u64,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Keep only plateaus meeting [A, B]; B may be "inf".
        #[arg(long)]
        range: Option<String>,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// The ratio at a given alpha.
    Ratio {
        alpha: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
    /// Brute-force bounds on the joint spectral radius at alpha.
    Oracle {
        alpha: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 12)]
        maxlen: usize,
    },
    /// Check the technical hypotheses of a family.
    Check {
        /// Family selector (overrides --family).
        name: Option<String>,
        #[command(flatten)]
        common: Common,
        /// Word length for the mixed-product positivity enumeration.
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Domain => 2,
        ErrorKind::Precision => 3,
        ErrorKind::Hypothesis => 4,
        ErrorKind::Io => 1,
    }
}

type Res<T> = std::result::Result<T, Error>;

fn run(cli: Cli, out: &mut impl Write) -> Res<ExitCode> {
    match cli.command {
        Command::Interval { fraction, common, exact } => cmd_interval(&fraction, &common, exact, out),
        Command::Alpha { common, cf, quadratic, decimal, radius, terms, coeff_bound } => {
            let gamma = Gamma::resolve(cf, quadratic, decimal, &radius, &ctx_of(&common))?;
            cmd_alpha(&gamma, &common, terms, coeff_bound, out)
        }
        Command::AlphaStar { mut common } => {
            common.family = "hmst".into();
            if common.digits == 20 {
                common.digits = 29;
            }
            let gamma =
                Gamma::Quadratic(Rational::new(3.into(), 2.into()), Rational::new((-1).into(), 2.into()), 5.into());
            cmd_alpha(&gamma, &common, None, None, out)
        }
        Command::Staircase { common, qmax, out: path, range, threads } => {
            if let Some(n) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .map_err(|e| Error::Domain(e.to_string()))?;
            }
            cmd_staircase(&common, qmax, path.as_deref(), range.as_deref(), out)
        }
        Command::Ratio { alpha, common, depth } => cmd_ratio(&alpha, &common, depth, out),
        Command::Oracle { alpha, common, maxlen } => cmd_oracle(&alpha, &common, maxlen, out),
        Command::Check { name, mut common, depth } => {
            if let Some(n) = name {
                common.family = n;
            }
            cmd_check(&common, depth, out)
        }
    }
}

fn ctx_of(c: &Common) -> FloatCtx {
    FloatCtx::new(c.prec)
}

fn io(e: std::io::Error) -> Error {
    // A closed downstream pipe (e.g. `| head`) is not an error.
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    Error::Io(e.to_string())
}

fn resolve_family(name: &str, ctx: &FloatCtx) -> Res<MatrixFamily> {
    let name = name.trim();
    if name == "hmst" {
        return Ok(builtin_hmst());
    }
    let args = |rest: &str, n: usize| -> Res<Vec<String>> {
        let v: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
        if v.len() != n {
            return Err(Error::Parse(format!("expected {n} comma-separated parameters in {name:?}")));
        }
        Ok(v)
    };
    if let Some(rest) = name.strip_prefix("bm:") {
        let v = args(rest, 3)?;
        let p = |s: &str| Real::parse(s);
        return builtin_bousch_mairesse(&p(&v[0])?, &p(&v[1])?, &p(&v[2])?, ctx);
    }
    if let Some(rest) = name.strip_prefix("kozyakin:") {
        let v = args(rest, 4)?;
        let p = |s: &str| parse_decimal_rational(s);
        return builtin_kozyakin(&p(&v[0])?, &p(&v[1])?, &p(&v[2])?, &p(&v[3])?);
    }
    let path = Path::new(name);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(io)?;
        return MatrixFamily::from_json(&text, ctx);
    }
    Err(Error::Domain(format!("unknown family {name:?}")))
}

fn json_mode(c: &Common) -> Res<bool> {
    match c.format.as_str() {
        "text" => Ok(false),
        "json" => Ok(true),
        other => Err(Error::Domain(format!("unsupported format {other:?} for this command"))),
    }
}

fn print_json(out: &mut impl Write, v: &Value) -> Res<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{s}").map_err(io)
}

fn endpoint_note(e: &Endpoint, digits: usize, bits: usize, exact: bool) -> String {
    match &e.exact {
        Some(x) => match x.to_rational() {
            Some(r) => format!("{r} (exact)"),
            None if exact => format!("{x} (exact), ~ {}", e.decimal(digits)),
            None => format!("{} (rounded to {digits} digits; exact in Q(sqrt({})))", e.decimal(digits), x.d()),
        },
        None => {
            let r = e.radius.as_ref().map(|r| format_sci(r, 3)).unwrap_or_else(|| "?".into());
            format!("{} (float at {bits} bits, radius {r})", e.decimal(digits))
        }
    }
}

fn describe_interval(iv: &PreimageInterval, digits: usize, exact: bool) -> Vec<String> {
    let mut lines = vec![iv.display(digits)];
    match iv.kind {
        IntervalKind::Empty => lines.push("empty".into()),
        IntervalKind::Singleton => lines.push(format!("point = {}", endpoint_note(&iv.lo, digits, iv.bits, exact))),
        IntervalKind::UnboundedAbove => {
            lines.push(format!("lo = {}", endpoint_note(&iv.lo, digits, iv.bits, exact)));
            lines.push("hi = inf".into());
        }
        IntervalKind::Bounded => {
            lines.push(format!("lo = {}", endpoint_note(&iv.lo, digits, iv.bits, exact)));
            lines.push(format!("hi = {}", endpoint_note(&iv.hi, digits, iv.bits, exact)));
        }
    }
    if let Some(p) = &iv.pair {
        lines.push(format!("standard pair u = {}, v = {}", p.u, p.v));
    }
    if iv.conditional {
        lines.push("conditional on the family producing Sturmian extremal words".into());
    }
    lines
}

fn cmd_interval(fraction: &str, c: &Common, exact: bool, out: &mut impl Write) -> Res<ExitCode> {
    let ctx = ctx_of(c);
    let fam = resolve_family(&c.family, &ctx)?;
    let pq = parse_decimal_rational(fraction)?;
    let iv = preimage_of(&fam, &pq, &ctx)?;
    if json_mode(c)? {
        let mut v = iv.to_json(c.digits);
        v["family"] = json!(fam.label());
        v["bits"] = json!(iv.bits);
        print_json(out, &v)?;
    } else {
        for line in describe_interval(&iv, c.digits, exact) {
            writeln!(out, "{line}").map_err(io)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

enum Gamma {
    Cf(CfExpansion),
    Quadratic(Rational, Rational, BigInt),
    Decimal(String, String),
}

impl Gamma {
    fn resolve(
        cf: Option<String>,
        quad: Option<String>,
        dec: Option<String>,
        radius: &str,
        _ctx: &FloatCtx,
    ) -> Res<Self> {
        match (cf, quad, dec) {
            (Some(s), None, None) => Ok(Gamma::Cf(s.parse()?)),
            (None, Some(s), None) => {
                let parts: Vec<&str> = s.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(Error::Parse("--quadratic expects a,b,D".into()));
                }
                let d: BigInt = parts[2].parse().map_err(|_| Error::Parse(format!("bad D {:?}", parts[2])))?;
                Ok(Gamma::Quadratic(parse_decimal_rational(parts[0])?, parse_decimal_rational(parts[1])?, d))
            }
            (None, None, Some(s)) => Ok(Gamma::Decimal(s, radius.to_string())),
            _ => Err(Error::Domain("give exactly one of --cf, --quadratic, --decimal".into())),
        }
    }

    fn expansion(&self, ctx: &FloatCtx) -> Res<CfExpansion> {
        match self {
            Gamma::Cf(cf) => Ok(cf.clone()),
            Gamma::Quadratic(a, b, d) => cf_of_quadratic(a, b, d),
            Gamma::Decimal(x, r) => {
                let w = ctx.with_extra(64);
                let ball = Ball::new(w.parse(x)?, w.parse(r)?);
                // Keep every coefficient the enclosure determines.
                let mut n = 200;
                loop {
                    match cf_of_real(&ball, n) {
                        Ok(cf) => return Ok(cf),
                        Err(Error::InsufficientPrecision { index }) if index > 2 => n = index - 1,
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }

    fn to_json(&self, cf: &CfExpansion) -> Value {
        match self {
            Gamma::Quadratic(a, b, d) => {
                json!({"quadratic": {"a": a.to_string(), "b": b.to_string(), "D": d.to_string()}})
            }
            _ => {
                let coeffs: Vec<u64> = cf.prefix().iter().chain(cf.period()).copied().collect();
                let mut v = json!({"cf": coeffs});
                if !cf.period().is_empty() {
                    v["period"] = json!(cf.period().len());
                }
                v
            }
        }
    }
}

fn cmd_alpha(
    gamma: &Gamma,
    c: &Common,
    terms: Option<usize>,
    bound: Option<u64>,
    out: &mut impl Write,
) -> Res<ExitCode> {
    let ctx = ctx_of(c);
    let fam = resolve_family(&c.family, &ctx)?;
    let cf = gamma.expansion(&ctx)?;
    let opts = AlphaOptions { digits: c.digits, terms, coefficient_bound: bound, ..AlphaOptions::default() };
    let r = alpha_for_irrational(&fam, &cf, &opts, &ctx)?;
    if json_mode(c)? {
        print_json(out, &r.to_json(gamma.to_json(&cf), c.digits))?;
        return Ok(ExitCode::SUCCESS);
    }
    let kind = if r.rigorous { "rigorous radius" } else { "heuristic radius" };
    writeln!(out, "gamma = [{cf}]").map_err(io)?;
    writeln!(out, "alpha = {}", r.decimal(c.digits)).map_err(io)?;
    writeln!(out, "{kind} {} (N = {}, {} bits)", r.radius_decimal(), r.terms, r.bits).map_err(io)?;
    if let Some(cert) = &r.certificate {
        writeln!(out, "certificate L = {}, K = {}, n0 = {}, C0 = {}", cert.l, cert.k, cert.n0, cert.c0).map_err(io)?;
    }
    if r.via_complement {
        writeln!(out, "computed as 1/alpha(1 - gamma)").map_err(io)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_range(s: &str) -> Res<(Rational, Option<Rational>)> {
    let (a, b) = s.split_once(',').ok_or_else(|| Error::Parse("--range expects A,B".into()))?;
    let a = parse_decimal_rational(a.trim())?;
    let b = match b.trim() {
        "inf" => None,
        t => Some(parse_decimal_rational(t)?),
    };
    Ok((a, b))
}

fn cmd_staircase(
    c: &Common,
    qmax: u64,
    path: Option<&Path>,
    range: Option<&str>,
    out: &mut impl Write,
) -> Res<ExitCode> {
    let ctx = ctx_of(c);
    let fam = resolve_family(&c.family, &ctx)?;
    let format = match c.format.as_str() {
        "csv" | "text" => ExportFormat::Csv,
        "json" => ExportFormat::Json,
        other => return Err(Error::Domain(format!("unsupported staircase format {other:?}"))),
    };
    let st = build_staircase(&fam, qmax, &ctx)?;
    let range = range.map(parse_range).transpose()?;
    let r = range.as_ref().map(|(a, b)| (a, b.as_ref()));
    match path {
        Some(p) => {
            export(&st, format, p, r, c.digits)?;
            let n = match r {
                Some((a, b)) => st.restricted(a, b).len(),
                None => st.len(),
            };
            writeln!(
                out,
                "wrote {n} steps (qmax {qmax}, family {}, {} bits) to {}",
                fam.label(),
                ctx.bits(),
                p.display()
            )
            .map_err(io)?;
        }
        None => {
            // Buffer so a closed stdout surfaces as an io::Error rather than a csv or serde error.
            let mut buf = Vec::new();
            export_to_writer(&st, format, r, c.digits, &mut buf)?;
            out.write_all(&buf).map_err(io)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_ratio(alpha: &str, c: &Common, depth: usize, out: &mut impl Write) -> Res<ExitCode> {
    let ctx = ctx_of(c);
    let fam = resolve_family(&c.family, &ctx)?;
    let a = Real::parse(alpha)?;
    let ans = ratio_at(&fam, &a, depth, None, &ctx)?;
    if json_mode(c)? {
        let mut v = ans.to_json();
        v["alpha"] = json!(a.to_string());
        v["depth"] = json!(depth);
        return print_json(out, &v).map(|_| ExitCode::SUCCESS);
    }
    match &ans {
        RatioAnswer::Exact(r) => {
            let iv = preimage_of(&fam, r, &ctx)?;
            writeln!(out, "{r}").map_err(io)?;
            writeln!(out, "alpha = {} lies in the plateau {} (exact)", a, iv.display(c.digits)).map_err(io)?;
        }
        RatioAnswer::Bracket { .. } => {
            writeln!(out, "{ans}").map_err(io)?;
            writeln!(out, "no plateau found within depth {depth}").map_err(io)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(alpha: &str, c: &Common, maxlen: usize, out: &mut impl Write) -> Res<ExitCode> {
    let ctx = ctx_of(c);
    let fam = resolve_family(&c.family, &ctx)?;
    let a = Real::parse(alpha)?;
    let b = jsr_bounds(&fam, &a, maxlen, &ctx)?;
    if json_mode(c)? {
        let mut v = b.to_json(c.digits);
        v["bits"] = json!(ctx.bits());
        return print_json(out, &v).map(|_| ExitCode::SUCCESS);
    }
    writeln!(out, "alpha = {a}, words up to length {maxlen}").map_err(io)?;
    writeln!(
        out,
        "lower = {} (spectral radius of witness {} at {} bits, slope {})",
        format_fixed(&b.lower, c.digits),
        b.witness,
        ctx.bits(),
        b.witness_slope()
    )
    .map_err(io)?;
    writeln!(out, "upper = {} (double-precision norm bound, inflated for rounding)", format_fixed(&b.upper, c.digits))
        .map_err(io)?;
    writeln!(out, "leading words (double-precision screening values):").map_err(io)?;
    writeln!(out, "{:<22} {:>8} {:>20} {:>12}", "word", "slope", "rho^(1/|w|)", "gap").map_err(io)?;
    let lead = b.leaders[0].1;
    for (w, v) in &b.leaders {
        let slope = w.slope().map(|s| s.to_string()).unwrap_or_default();
        writeln!(out, "{:<22} {:>8} {:>20.15} {:>12.3e}", w.to_string(), slope, v, lead - v).map_err(io)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(c: &Common, depth: usize, out: &mut impl Write) -> Res<ExitCode> {
    let ctx = ctx_of(c);
    let fam = resolve_family(&c.family, &ctx)?;
    let rep = check_technical_hypotheses(&fam, depth);
    if json_mode(c)? {
        print_json(out, &serde_json::to_value(&rep).map_err(|e| Error::Io(e.to_string()))?)?;
    } else {
        writeln!(out, "{rep}").map_err(io)?;
    }
    if rep.overall == sturmian_jsr::family::Verdict::Fail {
        return Ok(ExitCode::from(4));
    }
    Ok(ExitCode::SUCCESS)
}
