//! `doublecoil`: continued fractions, curve intersections, diagrams and
//! volume / spectral bounds from the command line.

mod output;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use doublecoil::bounds::{coil_report, REPORT_CSV_HEADER};
use doublecoil::family::uniform_lambda_lower;
use doublecoil::*;
use serde_json::{json, Value};

use output::{emit, fmt_sig, json_text, read_input, write_file, DEFAULT_PRECISION};

#[derive(Parser)]
#[command(
    name = "doublecoil",
    version,
    about = "Double coil knots: diagrams, intersection numbers and volume / spectral bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format (each subcommand has its own default)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the main output here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Significant digits for real numbers
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION as u8,
          value_parser = clap::value_parser!(u8).range(1..=15))]
    precision: u8,

    /// Worker threads for `family` and `verify` (default: all cores)
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical continued fraction of a slope p/q with 0 < p < q
    Cfrac {
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
    },
    /// Reduced, canonical (0 < p < q) and mirror forms of a slope
    Slope {
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
    },
    /// Intersection numbers of two slopes as closed curves and as arc/curve
    Curve {
        #[arg(allow_hyphen_values = true)]
        first: Slope,
        #[arg(allow_hyphen_values = true)]
        second: Slope,
        /// Count with the lattice-trace oracle instead of the closed form
        #[arg(long)]
        oracle: bool,
        /// Largest denominator the oracle accepts
        #[arg(long, value_name = "N", default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: i64,
        /// Draw the first curve on the pillowcase
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Generate a diagram and print its PD code
    Gen {
        #[arg(value_enum)]
        family: GenFamily,
        #[command(flatten)]
        params: Params,
        /// Continued fraction for `twobridge`, e.g. [2,2]
        #[arg(long)]
        cfrac: Option<ContinuedFraction>,
        /// Also draw the diagram
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[arg(long, value_name = "N", default_value_t = 0)]
        seed_layout: usize,
    },
    /// Volume bounds for a double coil knot
    Bounds {
        #[command(flatten)]
        params: Params,
    },
    /// Spectral-gap bounds for a double coil knot
    Lambda {
        #[command(flatten)]
        params: Params,
    },
    /// Sweep a family of double coils described by a config file
    Family {
        /// Family description (key = value lines)
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
    },
    /// Run the built-in oracle and property sweep, or check one PD code
    Verify {
        /// PD code to check instead (`-` reads stdin)
        #[arg(long, value_name = "PATH")]
        pd: Option<PathBuf>,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: i64,
    },
    /// Draw a PD code (`-` reads stdin), or a curve with --slope
    Render {
        pdfile: Option<PathBuf>,
        /// Draw the curve of this slope instead
        #[arg(long, conflicts_with = "pdfile", allow_hyphen_values = true)]
        slope: Option<Slope>,
        #[arg(long, value_name = "N", default_value_t = 0)]
        seed_layout: usize,
        /// Same as --out
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFamily {
    Twobridge,
    Clasped,
    Coil,
    Augmented,
}

#[derive(Args, Clone, Default)]
struct Params {
    #[arg(long, allow_negative_numbers = true)]
    p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    n1: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    n2: Option<i64>,
    /// p/q in place of --p and --q
    #[arg(long, allow_negative_numbers = true)]
    slope: Option<Slope>,
}

impl Params {
    fn slope(&self) -> Result<Slope, CliError> {
        match (self.slope, self.p, self.q) {
            (Some(s), None, None) => Ok(s),
            (None, Some(p), Some(q)) => Slope::new(p, q).map_err(CliError::domain),
            (Some(_), _, _) => Err(CliError::Usage("give either --slope or --p/--q".into())),
            _ => Err(CliError::Usage("missing --slope (or --p and --q)".into())),
        }
    }

    /// The raw (p, q, n1, n2), so that a non-reduced pair reaches the
    /// validator and fails as NotAKnot.
    fn coil(&self) -> Result<CoilSpec, CliError> {
        let (p, q) = match (self.slope, self.p, self.q) {
            (None, Some(p), Some(q)) => (p, q),
            _ => {
                let s = self.slope()?;
                (s.numerator(), s.denominator())
            }
        };
        let n = |v: Option<i64>, flag: &str| {
            v.ok_or_else(|| CliError::Usage(format!("missing {flag}")))
        };
        Ok(CoilSpec::new(
            p,
            q,
            n(self.n1, "--n1")?,
            n(self.n2, "--n2")?,
        ))
    }
}

#[derive(Debug)]
enum CliError {
    /// Bad invocation: exit 2.
    Usage(String),
    /// A named mathematical or input error: exit 1.
    Domain { name: String, message: String },
}

impl CliError {
    fn domain<E: std::fmt::Display + Named>(e: E) -> CliError {
        CliError::Domain {
            name: e.error_name().into(),
            message: e.to_string(),
        }
    }

    fn io(what: impl Into<String>) -> impl FnOnce(std::io::Error) -> CliError {
        let what = what.into();
        move |e| CliError::Domain {
            name: "IoError".into(),
            message: format!("IoError: {what}: {e}"),
        }
    }
}

trait Named {
    fn error_name(&self) -> &'static str;
}

macro_rules! named {
    ($($t:ty),*) => {$(
        impl Named for $t {
            fn error_name(&self) -> &'static str {
                self.name()
            }
        }
    )*};
}
named!(
    SlopeError,
    CurveError,
    DiagramError,
    BoundsError,
    FamilyError
);

struct Ctx {
    format: Option<Format>,
    out: Option<PathBuf>,
    digits: usize,
}

impl Ctx {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn num(&self, x: f64) -> String {
        fmt_sig(x, self.digits)
    }

    fn json(&self, v: Value) -> Result<(), CliError> {
        emit(&json_text(v, self.digits), self.out.as_deref())
    }

    fn text(&self, s: String) -> Result<(), CliError> {
        emit(&s, self.out.as_deref())
    }

    fn no_csv(&self, default: Format) -> Result<Format, CliError> {
        match self.format(default) {
            Format::Csv => Err(CliError::Usage("this subcommand has no CSV form".into())),
            f => Ok(f),
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn cmd_cfrac(ctx: &Ctx, s: Slope) -> Result<(), CliError> {
    let c = cfrac_expand(s).map_err(CliError::domain)?;
    match ctx.no_csv(Format::Text)? {
        Format::Json => ctx.json(json!({ "slope": s, "terms": c.terms(), "k": c.len() })),
        _ => ctx.text(format!("{c} k={}\n", c.len())),
    }
}

fn cmd_slope(ctx: &Ctx, s: Slope) -> Result<(), CliError> {
    let canonical = canonical_coil_slope(s).map_err(CliError::domain)?;
    let mirror = mirror_slope(canonical).map_err(CliError::domain)?;
    let k = cfrac_length(canonical).map_err(CliError::domain)?;
    match ctx.no_csv(Format::Text)? {
        Format::Json => ctx.json(json!({
            "slope": s,
            "canonical": canonical,
            "mirror": mirror,
            "k": k,
        })),
        _ => ctx.text(format!("{s} canonical={canonical} mirror={mirror} k={k}\n")),
    }
}

fn cmd_curve(
    ctx: &Ctx,
    a: Slope,
    b: Slope,
    oracle: bool,
    cap: i64,
    svg: Option<&Path>,
) -> Result<(), CliError> {
    let (cc, ac, method) = if oracle {
        let run = |mode| brute_force_intersection(a, b, mode, cap).map_err(CliError::domain);
        (
            run(IntersectionMode::CurveCurve)?,
            run(IntersectionMode::ArcCurve)?,
            "lattice-oracle",
        )
    } else {
        (
            curve_curve_intersection(a, b),
            arc_curve_intersection(a, b),
            "closed-form",
        )
    };
    if let Some(path) = svg {
        write_file(path, &curve_coordinates(a).render_svg())?;
    }
    match ctx.format(Format::Text) {
        Format::Json => ctx.json(json!({
            "slopes": [a, b],
            "curveCurve": cc,
            "arcCurve": ac,
            "method": method,
        })),
        Format::Csv => ctx.text(format!(
            "first,second,curve_curve,arc_curve,method\n{a},{b},{cc},{ac},{method}\n"
        )),
        Format::Text => ctx.text(format!("curve-curve {cc}\narc-curve {ac}\n")),
    }
}

fn generate(
    family: GenFamily,
    params: &Params,
    cfrac: Option<ContinuedFraction>,
) -> Result<PlanarDiagram, CliError> {
    match family {
        GenFamily::Twobridge => {
            let c = match cfrac {
                Some(c) => c,
                None => cfrac_expand(params.slope()?).map_err(CliError::domain)?,
            };
            Ok(gen_two_bridge(&c))
        }
        GenFamily::Clasped => gen_clasped_two_bridge(params.slope()?).map_err(CliError::domain),
        GenFamily::Coil => gen_double_coil(params.coil()?).map_err(CliError::domain),
        GenFamily::Augmented => gen_augmented(params.slope()?).map_err(CliError::domain),
    }
}

fn cmd_gen(ctx: &Ctx, d: &PlanarDiagram, svg: Option<&Path>, seed: usize) -> Result<(), CliError> {
    let pd = emit_pd(d);
    if let Some(path) = svg {
        write_file(
            path,
            &render_svg(
                d,
                &RenderOptions {
                    seed_layout: seed,
                    ..Default::default()
                },
            ),
        )?;
    }
    match ctx.no_csv(Format::Text)? {
        Format::Json => ctx.json(json!({
            "pd": pd,
            "crossings": d.crossing_count(),
            "components": d.component_count(),
            "twistRegions": twist_regions(d).count(),
            "generalizedTwistRegions": generalized_twist_regions(d).count,
            "writhe": d.writhe(),
            "alternating": d.is_alternating(),
            "provenance": d.provenance().map(to_value),
        })),
        _ => ctx.text(format!("{pd}\n")),
    }
}

fn cmd_bounds(ctx: &Ctx, spec: CoilSpec) -> Result<(), CliError> {
    let r = coil_report(&spec).map_err(CliError::domain)?;
    match ctx.format(Format::Json) {
        Format::Json => ctx.json(to_value(&r)),
        Format::Csv => ctx.text(format!(
            "{REPORT_CSV_HEADER}\n{}\n",
            r.csv_row(|x| ctx.num(x))
        )),
        Format::Text => ctx.text(format!(
            "k = {}\nell = {}\ncertificate = {:?}\nvolume in [{}, {}{}\nlambda1 in [{}, {}]\n",
            r.k,
            ctx.num(r.ell),
            r.certificate.condition,
            ctx.num(r.volume.lower),
            ctx.num(r.volume.upper),
            if r.volume.strict_upper { ")" } else { "]" },
            ctx.num(r.lambda.lower),
            ctx.num(r.lambda.upper),
        )),
    }
}

fn cmd_lambda(ctx: &Ctx, spec: CoilSpec) -> Result<(), CliError> {
    let l = coil_lambda_interval(&spec).map_err(CliError::domain)?;
    let v = coil_volume_interval(&spec).map_err(CliError::domain)?;
    let k = doublecoil::coil_k(&spec).map_err(CliError::domain)?;
    match ctx.format(Format::Json) {
        Format::Json => ctx.json(json!({
            "spec": spec,
            "k": k,
            "volume": { "lower": v.lower, "upper": v.upper, "strictUpper": v.strict_upper },
            "lambda": { "lower": l.lower, "upper": l.upper },
            "methods": l.method,
        })),
        Format::Csv => ctx.text(format!(
            "p,q,n1,n2,k,lambda_lower,lambda_upper\n{},{},{},{},{k},{},{}\n",
            spec.p,
            spec.q,
            spec.n1,
            spec.n2,
            ctx.num(l.lower),
            ctx.num(l.upper)
        )),
        Format::Text => ctx.text(format!(
            "lambda1 in [{}, {}]\n",
            ctx.num(l.lower),
            ctx.num(l.upper)
        )),
    }
}

fn cmd_family(ctx: &Ctx, config: &Path) -> Result<(), CliError> {
    let f = parse_family_config(&read_input(config)?).map_err(CliError::domain)?;
    let r = analyze_family(&f).map_err(CliError::domain)?;
    match ctx.format(Format::Csv) {
        Format::Json => {
            let mut v = to_value(&r);
            v["uniformLambdaLower"] = json!(uniform_lambda_lower(&r));
            ctx.json(v)
        }
        Format::Csv => ctx.text(r.to_csv(|x| ctx.num(x))),
        Format::Text => {
            let mut s = format!(
                "{} certified, {} uncertified\n",
                r.rows.len(),
                r.uncertified.len()
            );
            if let Some(sum) = &r.summary {
                s += &format!(
                    "volume upper <= {}\nlambda1 lower >= {}\nlambda1 upper trend {:?}\n",
                    ctx.num(sum.sup_volume_upper),
                    ctx.num(sum.inf_lambda_lower),
                    sum.lambda_upper_trend
                );
            }
            s += &format!("verdict {:?}\n", r.verdict);
            ctx.text(s)
        }
    }
}

fn cmd_verify(ctx: &Ctx, pd: Option<&Path>, cap: i64) -> Result<(), CliError> {
    if let Some(path) = pd {
        let summary = verify::check_pd(&read_input(path)?).map_err(CliError::domain)?;
        return match ctx.no_csv(Format::Text)? {
            Format::Json => ctx.json(to_value(&summary)),
            _ => ctx.text(format!(
                "crossings {}\ncomponents {}\nfaces {}\neuler {}\ntwist regions {}\nwrithe {}\nalternating {}\nround trip {}\n",
                summary.crossings,
                summary.components,
                summary.faces,
                summary.euler_characteristic,
                summary.twist_regions,
                summary.writhe,
                summary.alternating,
                summary.round_trip
            )),
        };
    }
    let checks = verify::run_all(cap);
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name)
        .collect();
    match ctx.no_csv(Format::Text)? {
        Format::Json => ctx.json(json!({ "checks": checks, "passed": failed.is_empty() }))?,
        _ => {
            let mut s = String::new();
            for c in &checks {
                match &c.detail {
                    None => s += &format!("PASS {} ({} cases)\n", c.name, c.cases),
                    Some(d) => s += &format!("FAIL {}: {d}\n", c.name),
                }
            }
            ctx.text(s)?
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Domain {
            name: "VerificationFailed".into(),
            message: format!("VerificationFailed: {}", failed.join(", ")),
        })
    }
}

fn cmd_render(
    ctx: &Ctx,
    pdfile: Option<&Path>,
    slope: Option<Slope>,
    seed: usize,
    svg: Option<&Path>,
) -> Result<(), CliError> {
    let doc = match (pdfile, slope) {
        (_, Some(s)) => curve_coordinates(s).render_svg(),
        (Some(path), None) => {
            let d = parse_pd(&read_input(path)?).map_err(CliError::domain)?;
            render_svg(
                &d,
                &RenderOptions {
                    seed_layout: seed,
                    ..Default::default()
                },
            )
        }
        (None, None) => return Err(CliError::Usage("give a PD file or --slope".into())),
    };
    emit(&doc, svg.or(ctx.out.as_deref()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Ctx {
        format: cli.format,
        out: cli.out,
        digits: cli.precision as usize,
    };
    match cli.command {
        Command::Cfrac { slope } => cmd_cfrac(&ctx, slope),
        Command::Slope { slope } => cmd_slope(&ctx, slope),
        Command::Curve {
            first,
            second,
            oracle,
            oracle_cap,
            svg,
        } => cmd_curve(&ctx, first, second, oracle, oracle_cap, svg.as_deref()),
        Command::Gen {
            family,
            params,
            cfrac,
            svg,
            seed_layout,
        } => {
            let d = generate(family, &params, cfrac)?;
            cmd_gen(&ctx, &d, svg.as_deref(), seed_layout)
        }
        Command::Bounds { params } => cmd_bounds(&ctx, params.coil()?),
        Command::Lambda { params } => cmd_lambda(&ctx, params.coil()?),
        Command::Family { config } => cmd_family(&ctx, &config),
        Command::Verify { pd, oracle_cap } => cmd_verify(&ctx, pd.as_deref(), oracle_cap),
        Command::Render {
            pdfile,
            slope,
            seed_layout,
            svg,
        } => cmd_render(&ctx, pdfile.as_deref(), slope, seed_layout, svg.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
        {
            eprintln!("warning: could not size the worker pool: {e}");
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain { name, message }) => {
            if message.starts_with(&name) {
                eprintln!("error: {message}");
            } else {
                eprintln!("error: {name}: {message}");
            }
            ExitCode::FAILURE
        }
    }
}
