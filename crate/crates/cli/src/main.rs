use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Map, Value};

use hopfpath::graded_hopf::{verify_graded_bialgebra_with, GradedCheckOptions, GradedHopf};
use hopfpath::hopf_quiver::{build_hopf_quiver, is_connected_hopf_quiver, GroupSpec, QuiverKind, RamificationDatum};
use hopfpath::linear::Combination;
use hopfpath::presentations::confluence::exponent_window;
use hopfpath::presentations::{
    check_confluence, classify_iso, multiply_alg, normal_form, pbw_monomials, simple_pointed_catalog, AlgElement,
    Family, HopfFamilyDescriptor, RewriteSystem,
};
use hopfpath::report::VerificationReport;
use hopfpath::scalars::{root_of_unity, CyclotomicContext};
use hopfpath::verifier::{forced_vanishing_suite, verify_antipode, verify_degeneration, verify_hopf};

#[derive(Parser)]
#[command(name = "hopfpath", version, about = "Exact Hopf structures on basic cycles and the linear chain")]
struct Cli {
    /// Conductor N of the scalar field Q(ζ_N); defaults to the lcm of the requested root orders.
    #[arg(long, global = true, env = "HOPFPATH_CONDUCTOR")]
    conductor: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    json: bool,
    /// Write to a file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Hopf quivers of groups with ramification data.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Graded path Hopf algebras.
    #[command(subcommand)]
    Graded(GradedCmd),
    /// Presentations by generators and relations.
    #[command(subcommand)]
    Present(PresentCmd),
    /// Hopf-axiom verification.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Catalogs of classified algebras.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Args)]
struct QuiverArgs {
    /// cyclic:N, symmetric:N or infinite-cyclic
    #[arg(long)]
    group: String,
    /// Ramification datum, e.g. "g=1" or "(1 2)=1,e=2".
    #[arg(long)]
    ram: String,
    /// Vertex window g^-R..g^R for the infinite cyclic group.
    #[arg(long)]
    radius: Option<u64>,
}

#[derive(Subcommand)]
enum QuiverCmd {
    Build(QuiverArgs),
    Connected(QuiverArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Cycle,
    Chain,
}

#[derive(Args)]
struct GradedArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    q_order: Option<u64>,
    /// q as a scalar literal, e.g. "2" or "-1/3".
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, default_value_t = 5)]
    max_len: u64,
}

#[derive(Subcommand)]
enum GradedCmd {
    Verify {
        #[command(flatten)]
        args: GradedArgs,
        /// Length bound for associativity triples; defaults to max-len − 1.
        #[arg(long)]
        triple_len: Option<u64>,
    },
    Table(GradedArgs),
}

#[derive(Args)]
struct FamilyArgs {
    /// cycle-graded, cycle-deform, cycle-half, chain-graded, chain-q1, chain-root,
    /// type-one-cycle or type-one-chain
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    q_order: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// factorial or q-integer
    #[arg(long)]
    half_coefficient: Option<String>,
    /// corrected or literal
    #[arg(long)]
    chain_commutator: Option<String>,
}

#[derive(Subcommand)]
enum PresentCmd {
    /// Normal form of a word such as "a p a h^3".
    Nf {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        word: String,
    },
    Confluence {
        #[command(flatten)]
        family: FamilyArgs,
        /// Defaults to 3·scale.
        #[arg(long)]
        weight_bound: Option<u64>,
    },
    /// Decide whether two descriptors (JSON) present isomorphic Hopf algebras.
    Classify {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Products of PBW monomials of total weight at most max-weight.
    Table {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        max_weight: Option<u64>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    Hopf(VerifyArgs),
    Antipode(VerifyArgs),
    Degeneration(VerifyArgs),
    ForcedVanishing {
        #[arg(long)]
        n: u64,
        /// Root order used for the chain argument.
        #[arg(long, default_value_t = 2)]
        chain_d: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, default_value_t = 6)]
    degree: u64,
}

#[derive(Subcommand)]
enum CatalogCmd {
    SimplePointed {
        #[arg(long, default_value_t = 4)]
        max_n: u64,
    },
}

/// Input the user can fix; reported with exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

/// Rendered output and whether every check passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn lcm_all(orders: impl IntoIterator<Item = u64>) -> u64 {
    orders.into_iter().filter(|&m| m > 0).fold(1, |acc, m| acc.lcm(&m))
}

fn context(explicit: Option<u64>, orders: impl IntoIterator<Item = u64>) -> Result<Arc<CyclotomicContext>> {
    let n = explicit.unwrap_or_else(|| lcm_all(orders));
    CyclotomicContext::new(n).map_err(|e| Usage(e.to_string()).into())
}

fn input<T>(r: hopfpath::Result<T>) -> Result<T> {
    r.map_err(|e| Usage(e.to_string()).into())
}

impl FamilyArgs {
    fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("family".into(), json!(self.family));
        if let Some(n) = self.n {
            obj.insert("n".into(), json!(n));
        }
        if let Some(m) = self.q_order {
            obj.insert("qOrder".into(), json!(m));
        }
        let strings = [
            ("q", &self.q),
            ("lambda", &self.lambda),
            ("mu", &self.mu),
            ("halfCoefficient", &self.half_coefficient),
            ("chainCommutator", &self.chain_commutator),
        ];
        for (key, v) in strings {
            if let Some(v) = v {
                obj.insert(key.into(), json!(v));
            }
        }
        Value::Object(obj)
    }

    fn descriptor(&self, conductor: Option<u64>) -> Result<HopfFamilyDescriptor> {
        if self.q.is_some() && self.q_order.is_some() {
            return usage("give either --q or --q-order, not both");
        }
        let family = input(Family::from_tag(&self.family))?;
        for (name, given) in [("lambda", &self.lambda), ("mu", &self.mu)] {
            if given.is_some() && family.param_name() != Some(name) {
                return usage(format!("{} takes no --{name}", self.family));
            }
        }
        let value = self.to_json();
        let ctx = context(conductor, self.q_order)?;
        input(HopfFamilyDescriptor::from_json(&ctx, &value))
    }
}

fn descriptor_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Usage(format!("descriptor JSON: {e}")).into())
}

fn alg_rows(x: &AlgElement) -> Value {
    Value::Array(
        x.iter()
            .map(|(m, c)| json!({"coeff": c.to_string(), "k": m.k, "j": m.j, "i": m.i}))
            .collect(),
    )
}

fn report_outcome(report: &VerificationReport, format: Format) -> Result<Outcome> {
    let text = match format {
        Format::Text => report.to_string(),
        Format::Json => pretty(&report.to_json())?,
        Format::Csv => return usage("csv output is available for tables only"),
    };
    Ok(Outcome {
        text,
        pass: report.passed(),
    })
}

fn pretty(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn no_csv(format: Format) -> Result<()> {
    if format == Format::Csv {
        return usage("csv output is available for tables only");
    }
    Ok(())
}

fn group_and_datum(args: &QuiverArgs) -> Result<(GroupSpec, RamificationDatum)> {
    Ok((input(GroupSpec::parse(&args.group))?, input(RamificationDatum::parse(&args.ram))?))
}

fn quiver(cmd: &QuiverCmd, format: Format) -> Result<Outcome> {
    no_csv(format)?;
    match cmd {
        QuiverCmd::Build(args) => {
            let (g, r) = group_and_datum(args)?;
            let window = args.radius.map(|r| -(r as i64)..=r as i64);
            let q = input(build_hopf_quiver(&g, &r, window))?;
            let text = match format {
                Format::Json => pretty(&q.to_json())?,
                _ => {
                    let mut s = format!("vertices ({}): {}\n", q.vertices.len(), q.vertices.join(" "));
                    s += &format!("arrows ({}):\n", q.arrows.len());
                    for a in &q.arrows {
                        s += &format!("  {} -> {} [{}#{}]\n", a.source, a.target, a.class, a.copy);
                    }
                    s
                }
            };
            Ok(Outcome::ok(text))
        }
        QuiverCmd::Connected(args) => {
            let (g, r) = group_and_datum(args)?;
            let connected = input(is_connected_hopf_quiver(&g, &r))?;
            let text = match format {
                Format::Json => pretty(&json!({"connected": connected}))?,
                _ => format!("connected: {connected}\n"),
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn graded_algebra(args: &GradedArgs, conductor: Option<u64>) -> Result<GradedHopf> {
    let ctx = context(conductor, args.q_order)?;
    let q = match (&args.q, args.q_order) {
        (Some(_), Some(_)) => return usage("give either --q or --q-order, not both"),
        (Some(s), None) => input(ctx.parse(s))?,
        (None, Some(m)) => input(root_of_unity(&ctx, m))?,
        (None, None) => return usage("--q or --q-order is required"),
    };
    let kind = match (args.kind, args.n) {
        (KindArg::Cycle, Some(n)) if n > 0 => QuiverKind::Cycle(n),
        (KindArg::Cycle, _) => return usage("--n is required for the cycle"),
        (KindArg::Chain, None) => QuiverKind::Chain,
        (KindArg::Chain, Some(_)) => return usage("the chain takes no --n"),
    };
    input(GradedHopf::new(kind, &q))
}

#[derive(Serialize)]
struct GradedRow<'a> {
    left: &'a str,
    right: &'a str,
    coeff: &'a str,
    result: &'a str,
}

fn csv_text<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn graded(cmd: &GradedCmd, conductor: Option<u64>, format: Format) -> Result<Outcome> {
    match cmd {
        GradedCmd::Verify { args, triple_len } => {
            let h = graded_algebra(args, conductor)?;
            let opts = GradedCheckOptions {
                pair_len: args.max_len,
                triple_len: triple_len.unwrap_or(args.max_len.saturating_sub(1)),
                window: None,
            };
            report_outcome(&verify_graded_bialgebra_with(&h, &opts), format)
        }
        GradedCmd::Table(args) => {
            let h = graded_algebra(args, conductor)?;
            let window = match h.kind() {
                QuiverKind::Cycle(n) => 0..=n as i64 - 1,
                QuiverKind::Chain => 0..=0,
            };
            let rows = h.structure_table(args.max_len, window);
            let text = match format {
                Format::Csv => csv_text(rows.iter().map(|r| GradedRow {
                    left: &r.left,
                    right: &r.right,
                    coeff: &r.coeff,
                    result: &r.result,
                }))?,
                Format::Json => pretty(&Value::Array(
                    rows.iter()
                        .map(|r| json!({"left": r.left, "right": r.right, "coeff": r.coeff, "result": r.result}))
                        .collect(),
                ))?,
                Format::Text => rows
                    .iter()
                    .map(|r| {
                        let rhs = if r.result == "0" { "0".to_string() } else { format!("{} * {}", r.coeff, r.result) };
                        format!("{} . {} = {}\n", r.left, r.right, rhs)
                    })
                    .collect(),
            };
            Ok(Outcome::ok(text))
        }
    }
}

#[derive(Serialize)]
struct AlgRow {
    left: String,
    right: String,
    result: String,
}

fn present(cmd: &PresentCmd, conductor: Option<u64>, format: Format) -> Result<Outcome> {
    match cmd {
        PresentCmd::Nf { family, word } => {
            no_csv(format)?;
            let d = family.descriptor(conductor)?;
            let one = d.context().one();
            let x = input(normal_form(&d, word, &one))?;
            let text = match format {
                Format::Json => pretty(&json!({"word": word, "normalForm": alg_rows(&x)}))?,
                _ => format!("{x}\n"),
            };
            Ok(Outcome::ok(text))
        }
        PresentCmd::Confluence { family, weight_bound } => {
            let d = family.descriptor(conductor)?;
            let bound = weight_bound.unwrap_or(3 * d.scale());
            report_outcome(&check_confluence(&RewriteSystem::presentation(&d), bound), format)
        }
        PresentCmd::Classify { left, right } => {
            no_csv(format)?;
            let (l, r) = (descriptor_json(left)?, descriptor_json(right)?);
            let order = |v: &Value| v.get("qOrder").and_then(Value::as_u64).unwrap_or(1);
            let ctx = context(conductor, [order(&l), order(&r)])?;
            let a = input(HopfFamilyDescriptor::from_json(&ctx, &l))?;
            let b = input(HopfFamilyDescriptor::from_json(&ctx, &r))?;
            let iso = classify_iso(&a, &b);
            let text = match format {
                Format::Json => pretty(&json!({"left": a.to_json(), "right": b.to_json(), "isomorphic": iso}))?,
                _ => format!("isomorphic: {iso}\n"),
            };
            Ok(Outcome::ok(text))
        }
        PresentCmd::Table { family, max_weight } => {
            let d = family.descriptor(conductor)?;
            let bound = max_weight.unwrap_or(d.scale());
            let rs = RewriteSystem::presentation(&d);
            let dp = rs.p_weight();
            let monos = pbw_monomials(&d, bound, exponent_window(&d, d.scale()));
            let ctx = d.context();
            let mut rows = Vec::new();
            for x in &monos {
                for y in &monos {
                    if x.weight(dp) + y.weight(dp) > bound {
                        continue;
                    }
                    let xy = multiply_alg(&d, &Combination::basis(ctx, *x), &Combination::basis(ctx, *y));
                    rows.push((x.to_string(), y.to_string(), xy));
                }
            }
            let text = match format {
                Format::Csv => csv_text(rows.iter().map(|(l, r, xy)| AlgRow {
                    left: l.clone(),
                    right: r.clone(),
                    result: xy.to_string(),
                }))?,
                Format::Json => pretty(&Value::Array(
                    rows.iter()
                        .map(|(l, r, xy)| json!({"left": l, "right": r, "result": alg_rows(xy)}))
                        .collect(),
                ))?,
                Format::Text => rows.iter().map(|(l, r, xy)| format!("({l})({r}) = {xy}\n")).collect(),
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn verify(cmd: &VerifyCmd, conductor: Option<u64>, format: Format) -> Result<Outcome> {
    match cmd {
        VerifyCmd::Hopf(a) => report_outcome(&verify_hopf(&a.family.descriptor(conductor)?, a.degree), format),
        VerifyCmd::Antipode(a) => report_outcome(&verify_antipode(&a.family.descriptor(conductor)?, a.degree), format),
        VerifyCmd::Degeneration(a) => {
            let d = a.family.descriptor(conductor)?;
            report_outcome(&input(verify_degeneration(&d, a.degree))?, format)
        }
        VerifyCmd::ForcedVanishing { n, chain_d } => {
            let ctx = context(conductor, [*n, *chain_d])?;
            report_outcome(&input(forced_vanishing_suite(&ctx, *n, *chain_d))?, format)
        }
    }
}

fn catalog(cmd: &CatalogCmd, conductor: Option<u64>, format: Format) -> Result<Outcome> {
    no_csv(format)?;
    let CatalogCmd::SimplePointed { max_n } = cmd;
    let ctx = context(conductor, 1..=*max_n)?;
    let list = input(simple_pointed_catalog(&ctx, *max_n))?;
    let text = match format {
        Format::Json => pretty(&Value::Array(list.iter().map(HopfFamilyDescriptor::to_json).collect()))?,
        _ => list.iter().map(|d| format!("{d}\n")).collect(),
    };
    Ok(Outcome::ok(text))
}

fn run(cli: &Cli) -> Result<Outcome> {
    let format = if cli.json { Format::Json } else { cli.format };
    if cli.json && cli.format != Format::Text && cli.format != Format::Json {
        bail!(Usage("--json conflicts with --format".into()));
    }
    let c = cli.conductor;
    match &cli.command {
        Command::Quiver(cmd) => quiver(cmd, format),
        Command::Graded(cmd) => graded(cmd, c, format),
        Command::Present(cmd) => present(cmd, c, format),
        Command::Verify(cmd) => verify(cmd, c, format),
        Command::Catalog(cmd) => catalog(cmd, c, format),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush().map_err(|e| anyhow!(e))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|o| emit(&cli, &o.text).map(|_| o.pass));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
