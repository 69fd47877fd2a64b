mod props;
mod verify;

use std::fmt::{self, Write as _};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use traceideal::catalog::{self, Params};
use traceideal::groebner::buchberger_bounded;
use traceideal::matfac::verify_factorization;
use traceideal::parse::{parse_ideal_generators, parse_matrix, parse_polynomial, parse_ring_spec};
use traceideal::trace::trace_ideal_oracle;
use traceideal::{
    Error, Field, Ideal, McmModule, ModulePresentation, MonomialOrder, PolyMatrix, Polynomial, RingContext,
    ZFormFactorization,
};

#[derive(Parser)]
#[command(
    name = "traceideal",
    version,
    about = "Exact trace ideals of MCM modules over hypersurface rings"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Coefficient field (QQ, QQi or Fp:<p>); overrides the ring's field
    #[arg(long, global = true)]
    field: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Format {
    Text,
    /// Tab-separated fields, one record per line
    Lines,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Groebner basis of an ideal together with the defining ideal
    Gb {
        #[arg(long)]
        ring: String,
        /// grevlex, lex or elim:K (the first K variables are eliminated)
        #[arg(long, default_value = "grevlex")]
        order: String,
        /// Generators, as `(f1, ..., fk)`
        ideal: String,
    },
    /// Ideal arithmetic in the ring
    Ideal {
        #[command(subcommand)]
        op: IdealOp,
    },
    /// Matrix factorizations
    Mf {
        #[command(subcommand)]
        op: MfOp,
    },
    /// Trace ideal of coker(A), computed from Hom(coker A, R)
    Trace {
        #[arg(long)]
        ring: String,
        /// Presentation matrix A
        #[arg(long)]
        matrix: String,
    },
    /// MCM test ideal of a catalog family, checked against the catalog's claim
    Mcm {
        family: String,
        /// Parameter values, e.g. `n=5`
        #[arg(long)]
        param: Option<String>,
        /// Also list the trace ideal of each module
        #[arg(long)]
        modules: bool,
    },
    /// List the catalog, or the modules of one family
    Catalog {
        family: Option<String>,
        #[arg(long)]
        param: Option<String>,
    },
    /// Check every catalog claim and the consistency properties
    VerifyPaper,
}

#[derive(Args)]
struct TwoIdeals {
    #[arg(long)]
    ring: String,
    a: String,
    b: String,
}

#[derive(Args)]
struct IdealAndPoly {
    #[arg(long)]
    ring: String,
    ideal: String,
    poly: String,
}

#[derive(Subcommand)]
enum IdealOp {
    Sum(TwoIdeals),
    Intersect(TwoIdeals),
    /// The colon ideal A : B
    Quotient(TwoIdeals),
    Equal(TwoIdeals),
    /// Ideal membership of a polynomial
    Contains(IdealAndPoly),
    /// Membership of a polynomial in the radical
    Radical(IdealAndPoly),
}

#[derive(Args)]
struct ZFormArgs {
    #[arg(long)]
    ring: String,
    #[arg(long)]
    phi: String,
    /// The distinguished variable
    #[arg(long)]
    z: String,
    /// g in z^2 + g; defaults to the ring's defining polynomial minus z^2
    #[arg(long)]
    g: Option<String>,
}

#[derive(Subcommand)]
enum MfOp {
    /// Check AB = BA = f id
    Verify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        f: String,
    },
    /// Validate phi^2 = -g id and print the factorization of z^2 + g
    Zform(ZFormArgs),
    /// Trace ideal of coker(z id - phi) from the entries of z id + phi
    Trace {
        #[command(flatten)]
        args: ZFormArgs,
        /// Also compute it from Hom(M, R) and compare
        #[arg(long)]
        oracle: bool,
    },
    /// Check ker(z id - phi) = im(z id + phi) over the ring
    Kerimage(ZFormArgs),
    /// The transposed factorization
    Transpose(ZFormArgs),
}

/// Errors with the exit status they map to.
enum CliError {
    Usage(String),
    Fail(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Fail(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Factorization(_) | Error::DegreeLimit { .. } => CliError::Fail(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Attaches the argument name and a caret under the failing column.
fn input<T>(what: &str, src: &str, r: traceideal::Result<T>) -> CliResult<T> {
    r.map_err(|e| match &e {
        Error::Parse { line, column, .. } => {
            let text = src.lines().nth(line.saturating_sub(1)).unwrap_or("");
            let caret = " ".repeat(column.saturating_sub(1));
            CliError::Usage(format!("{what}: {e}\n  {text}\n  {caret}^"))
        }
        _ => CliError::from(e).with_prefix(what),
    })
}

impl CliError {
    fn with_prefix(self, what: &str) -> CliError {
        match self {
            CliError::Usage(m) => CliError::Usage(format!("{what}: {m}")),
            CliError::Fail(m) => CliError::Fail(format!("{what}: {m}")),
        }
    }
}

fn max_degree() -> CliResult<Option<u32>> {
    match std::env::var("TRACEIDEAL_MAX_DEGREE") {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map(Some).map_err(|_| {
            CliError::Usage(format!(
                "TRACEIDEAL_MAX_DEGREE must be a nonnegative integer, got `{v}`"
            ))
        }),
        _ => Ok(None),
    }
}

fn parse_field(src: &Option<String>) -> CliResult<Option<Field>> {
    src.as_deref().map(|s| input("--field", s, s.parse())).transpose()
}

fn ring_context(spec: &str, field: &Option<Field>) -> CliResult<Arc<RingContext>> {
    let spec = match field {
        Some(f) => {
            let mut parts: Vec<String> = spec.splitn(3, ';').map(str::to_string).collect();
            parts.resize(3, String::new());
            parts[1] = f.to_string();
            parts.join(";")
        }
        None => spec.to_string(),
    };
    let (ring, defs) = input("--ring", &spec, parse_ring_spec(&spec))?;
    Ok(RingContext::with_max_degree(&ring, defs, max_degree()?)?)
}

fn ideal_arg(ctx: &Arc<RingContext>, what: &str, src: &str) -> CliResult<Ideal> {
    let gens = input(what, src, parse_ideal_generators(src, ctx.ring()))?;
    Ok(Ideal::new(ctx, gens)?)
}

fn poly_arg(ctx: &Arc<RingContext>, what: &str, src: &str) -> CliResult<Polynomial> {
    input(what, src, parse_polynomial(src, ctx.ring()))
}

fn matrix_arg(ctx: &Arc<RingContext>, what: &str, src: &str) -> CliResult<PolyMatrix> {
    input(what, src, parse_matrix(src, ctx.ring()))
}

fn parse_order(src: &str, nvars: usize) -> CliResult<MonomialOrder> {
    let bad = || CliError::Usage(format!("unknown order `{src}` (expected grevlex, lex or elim:K)"));
    match src.to_ascii_lowercase().as_str() {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        s => {
            let k: usize = s.strip_prefix("elim:").ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if k == 0 || k >= nvars {
                return Err(CliError::Usage(format!("elim:{k} needs 0 < K < {nvars}")));
            }
            Ok(MonomialOrder::BlockElim { k })
        }
    }
}

fn params_arg(src: &Option<String>) -> CliResult<Params> {
    match src {
        Some(s) => input("--param", s, Params::parse(s)),
        None => Ok(Params::none()),
    }
}

fn show_ideal(i: &Ideal, format: Format) -> String {
    match format {
        Format::Text => i.to_string(),
        Format::Lines if i.is_unit() => "1".into(),
        Format::Lines => {
            let gens = i.canonical_generators();
            if gens.is_empty() {
                "0".into()
            } else {
                gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("\n")
            }
        }
    }
}

fn show_matrix(m: &PolyMatrix, format: Format) -> String {
    match format {
        Format::Text => m.to_string(),
        Format::Lines => (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| m.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join("\t")
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn zform(args: &ZFormArgs, field: &Option<Field>) -> CliResult<(Arc<RingContext>, ZFormFactorization)> {
    let ctx = ring_context(&args.ring, field)?;
    let ring = ctx.ring();
    let z = ring
        .var_index(&args.z)
        .ok_or_else(|| CliError::Usage(format!("--z: `{}` is not a variable of the ring", args.z)))?;
    let g = match &args.g {
        Some(src) => poly_arg(&ctx, "--g", src)?,
        None => match ctx.defining() {
            [q] => q - &Polynomial::var(ring, z).pow(2),
            _ => {
                return Err(CliError::Usage(
                    "--g is required unless the ring has exactly one defining polynomial z^2 + g".into(),
                ))
            }
        },
    };
    let phi = matrix_arg(&ctx, "--phi", &args.phi)?;
    let zf = ZFormFactorization::new(phi, g, z)?;
    Ok((ctx, zf))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Runs one command, returning its output and whether it passed.
fn run(cli: &Cli) -> CliResult<(String, bool)> {
    let field = parse_field(&cli.field)?;
    max_degree()?;
    let fmt = cli.format;
    let mut out = String::new();
    let mut pass = true;
    match &cli.cmd {
        Cmd::Gb { ring, order, ideal } => {
            let ctx = ring_context(ring, &field)?;
            let order = parse_order(order, ctx.ring().nvars())?;
            let mut gens = input("ideal", ideal, parse_ideal_generators(ideal, ctx.ring()))?;
            gens.extend(ctx.defining().iter().cloned());
            let gb = buchberger_bounded(&gens, order, ctx.max_degree())?;
            let items: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
            match fmt {
                Format::Text if items.is_empty() => out.push_str("(0)"),
                Format::Text => write!(out, "({})", items.join(", ")).unwrap(),
                Format::Lines => out.push_str(&items.join("\n")),
            }
        }
        Cmd::Ideal { op } => match op {
            IdealOp::Sum(t) | IdealOp::Intersect(t) | IdealOp::Quotient(t) | IdealOp::Equal(t) => {
                let ctx = ring_context(&t.ring, &field)?;
                let a = ideal_arg(&ctx, "first ideal", &t.a)?;
                let b = ideal_arg(&ctx, "second ideal", &t.b)?;
                let result = match op {
                    IdealOp::Sum(_) => a.sum(&b)?,
                    IdealOp::Intersect(_) => a.intersection(&b)?,
                    IdealOp::Quotient(_) => a.quotient(&b)?,
                    _ => {
                        pass = a.equals(&b)?;
                        out.push_str(if pass { "true" } else { "false" });
                        return Ok((out, pass));
                    }
                };
                out.push_str(&show_ideal(&result, fmt));
            }
            IdealOp::Contains(t) | IdealOp::Radical(t) => {
                let ctx = ring_context(&t.ring, &field)?;
                let i = ideal_arg(&ctx, "ideal", &t.ideal)?;
                let f = poly_arg(&ctx, "polynomial", &t.poly)?;
                pass = match op {
                    IdealOp::Contains(_) => i.contains(&f)?,
                    _ => i.radical_contains(&f)?,
                };
                out.push_str(if pass { "true" } else { "false" });
            }
        },
        Cmd::Mf { op } => match op {
            MfOp::Verify { ring, a, b, f } => {
                let ctx = ring_context(ring, &field)?;
                let a = matrix_arg(&ctx, "--a", a)?;
                let b = matrix_arg(&ctx, "--b", b)?;
                let f = poly_arg(&ctx, "--f", f)?;
                let v = verify_factorization(&a, &b, &f)?;
                pass = v.is_valid();
                write!(out, "{v}").unwrap();
            }
            MfOp::Zform(args) => {
                let (_, zf) = zform(args, &field)?;
                match fmt {
                    Format::Text => write!(
                        out,
                        "valid: phi^2 = -({}) id, rank {}\nz id - phi = {}\nz id + phi = {}",
                        zf.g(),
                        zf.rank(),
                        zf.minus(),
                        zf.plus()
                    )
                    .unwrap(),
                    Format::Lines => write!(
                        out,
                        "valid\t{}\t{}\t{}\t{}",
                        zf.rank(),
                        zf.hypersurface(),
                        zf.minus(),
                        zf.plus()
                    )
                    .unwrap(),
                }
            }
            MfOp::Trace { args, oracle } => {
                let (ctx, zf) = zform(args, &field)?;
                let tau = zf.trace_ideal_cor(&ctx)?;
                out.push_str(&show_ideal(&tau, fmt));
                if *oracle {
                    let o = trace_ideal_oracle(&ModulePresentation::new(&ctx, zf.minus())?)?;
                    pass = o == tau;
                    match fmt {
                        Format::Text => write!(out, "\noracle {o} {}", verdict(pass)).unwrap(),
                        Format::Lines => write!(out, "\noracle\t{o}\t{}", verdict(pass)).unwrap(),
                    }
                }
            }
            MfOp::Kerimage(args) => {
                let (ctx, zf) = zform(args, &field)?;
                pass = zf.ker_image_check(&ctx)?;
                out.push_str(if pass { "true" } else { "false" });
            }
            MfOp::Transpose(args) => {
                let (_, zf) = zform(args, &field)?;
                out.push_str(&show_matrix(zf.transpose().phi(), fmt));
            }
        },
        Cmd::Trace { ring, matrix } => {
            let ctx = ring_context(ring, &field)?;
            let a = matrix_arg(&ctx, "--matrix", matrix)?;
            let tau = trace_ideal_oracle(&ModulePresentation::new(&ctx, &a)?)?;
            out.push_str(&show_ideal(&tau, fmt));
        }
        Cmd::Mcm { family, param, modules } => {
            let spec = catalog::family(family)?;
            let inst = spec.instantiate_bounded(&params_arg(param)?, field.as_ref(), max_degree()?)?;
            let traced = inst.traces()?;
            if *modules {
                let width = traced.iter().map(|t| t.module.name.len()).max().unwrap_or(0);
                for t in &traced {
                    let free = if t.trace.is_unit() { " (free)" } else { "" };
                    match fmt {
                        Format::Text => writeln!(out, "{:width$}  {}{free}", t.module.name, t.trace).unwrap(),
                        Format::Lines => writeln!(out, "module\t{}\t{}", t.module.name, t.trace).unwrap(),
                    }
                }
            }
            let tau = inst.mcm_test_ideal()?;
            match (&inst.expected_mcm, fmt) {
                (Some(expected), _) => {
                    pass = tau == *expected;
                    let claimed = inst.expected_mcm_text.as_deref().unwrap_or("");
                    match fmt {
                        Format::Text => write!(out, "{tau}\n{} (claimed {claimed})", verdict(pass)).unwrap(),
                        Format::Lines => write!(out, "tau_MCM\t{tau}\t{claimed}\t{}", verdict(pass)).unwrap(),
                    }
                }
                (None, Format::Text) => write!(out, "{tau}").unwrap(),
                (None, Format::Lines) => write!(out, "tau_MCM\t{tau}").unwrap(),
            }
        }
        Cmd::Catalog { family: None, .. } => {
            for f in catalog::families() {
                let grid: Vec<String> = f
                    .grid
                    .iter()
                    .map(|(n, v)| format!("{n} in {}", v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
                    .collect();
                let grid = if grid.is_empty() {
                    "-".to_string()
                } else {
                    grid.join("; ")
                };
                match fmt {
                    Format::Text => writeln!(
                        out,
                        "{:12} {:5} {:18} {}",
                        f.name,
                        f.field.to_string(),
                        grid,
                        f.description
                    ),
                    Format::Lines => writeln!(out, "{}\t{}\t{}\t{}", f.name, f.field, grid, f.description),
                }
                .unwrap();
            }
        }
        Cmd::Catalog {
            family: Some(name),
            param,
        } => {
            let spec = catalog::family(name)?;
            let inst = spec.instantiate_bounded(&params_arg(param)?, field.as_ref(), max_degree()?)?;
            if fmt == Format::Text {
                writeln!(out, "{} {}: {}", inst.family, inst.params, spec.description).unwrap();
                writeln!(out, "ring {}", ring_text(&inst.ctx)).unwrap();
            }
            for m in &inst.modules {
                let (kind, matrix) = match &m.module {
                    McmModule::ZForm(zf) => ("phi", zf.phi().to_string()),
                    McmModule::Presentation(p) => ("presentation", p.matrix().to_string()),
                };
                let tau = m.expected_tau_text.as_deref().unwrap_or("-");
                match fmt {
                    Format::Text => writeln!(out, "  {} {kind} {matrix}  tau {tau}", m.name),
                    Format::Lines => writeln!(out, "{}\t{kind}\t{matrix}\t{tau}", m.name),
                }
                .unwrap();
            }
            if let Some(t) = &inst.expected_mcm_text {
                match fmt {
                    Format::Text => writeln!(out, "tau_MCM {t}"),
                    Format::Lines => writeln!(out, "tau_MCM\t{t}"),
                }
                .unwrap();
            }
        }
        Cmd::VerifyPaper => {
            let report = verify::run(max_degree()?)?;
            pass = report.pass();
            out = report.render(fmt);
        }
    }
    Ok((out, pass))
}

fn ring_text(ctx: &RingContext) -> String {
    let defs: Vec<String> = ctx.defining().iter().map(|q| q.to_string()).collect();
    format!(
        "{};{};{}",
        ctx.ring().names().join(","),
        ctx.ring().field(),
        defs.join(",")
    )
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, pass)) => {
            let out = out.trim_end();
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Fail(_) => 1,
            })
        }
    }
}
