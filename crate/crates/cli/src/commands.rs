use std::path::PathBuf;

use branchmod::curve::{
    generic_parametrization, CharExponents, CurveEquation, Direction, DirectionComponent, Parametrization,
};
use branchmod::moduli::{classify_rigidity, closed_form_nh, generic_dimension, sigma, RigidityReport};
use branchmod::resolution::{intersection_report, resolve, IntersectionReport, ResolutionData};
use branchmod::saito::{
    check_saito_criterion, curve_valuation, default_bounds, delta_p_data, foliation_mult_identity,
    numbered_dual_tree, p1_table_crosscheck, saito_basis, trace_with_direction, verify_generic_minimum,
    CriterionReport, DeltaPData, FoliationIdentity, GenericMinimumReport, NumberedDualTree, SaitoBasis,
    SaitoBounds, SaitoCurve,
};
use branchmod::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::parse::{characteristic_parametrization, parse_char, parse_form, parse_list, parse_pairs, parse_param, parse_poly};

/// Default room for exact parametrizations; they extend on demand.
const EXACT_PRECISION: usize = 64;

#[derive(Debug, Parser)]
#[command(name = "branchmod", version, about = "Moduli, resolution and Saito-module invariants of plane branches")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic exponents, Puiseux pairs, semigroup and conductor.
    Invariants(CurveArgs),
    /// Minimal embedded resolution: proximity matrix, inverse, dual graph.
    Resolve {
        #[command(flatten)]
        curve: CurveArgs,
        /// Write the dual graph in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Generic dimension of the moduli space with the per-center breakdown.
    Dim(CurveArgs),
    /// Minimal valuation of forms tangent to the curve and its direction.
    Saito(SaitoArgs),
    /// δ-sequence, p-vector, property checks and the numbered dual tree.
    Tree {
        #[command(flatten)]
        curve: CurveArgs,
        #[command(flatten)]
        direction: DirectionArgs,
        /// Write the numbered dual tree in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Rigidity classification over a window of topological classes.
    Rigid {
        #[arg(long, default_value_t = 4)]
        max_mult: u64,
        /// Bound on the largest semigroup generator.
        #[arg(long, default_value_t = 40)]
        bound: u64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Parametrization `x=<poly in t>; y=<poly in t>`.
    #[arg(long)]
    pub param: Option<String>,
    /// Equation `f(x,y)`, e.g. `y^5-x^13`.
    #[arg(long)]
    pub equation: Option<String>,
    /// Characteristic exponents, e.g. `5,13`.
    #[arg(long = "char")]
    pub chars: Option<String>,
    /// Puiseux pairs, e.g. `(2,3),(2,7)`.
    #[arg(long)]
    pub pairs: Option<String>,
    /// Minimal semigroup generators, e.g. `8,20,50,105`.
    #[arg(long)]
    pub semigroup: Option<String>,
    /// Use a seeded generic member of the class instead of `x=t^β₀, y=Σt^βᵢ`.
    #[arg(long)]
    pub generic: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Truncation order of generic parametrizations.
    #[arg(long)]
    pub trunc: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionChoice {
    None,
    X,
    Y,
    Xy,
}

#[derive(Debug, Clone, Args)]
pub struct DirectionArgs {
    /// Coordinate axes in the direction.
    #[arg(long, value_enum, default_value = "none")]
    pub direction: DirectionChoice,
    /// Extra smooth component `x=<poly in t>; y=<poly in t>`; repeatable.
    #[arg(long = "dparam")]
    pub dparam: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SaitoArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[command(flatten)]
    pub direction: DirectionArgs,
    /// Number of consecutive seeds, starting at `--seed`, for `--generic`.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long)]
    pub degree_bound: Option<usize>,
    #[arg(long)]
    pub jet_order: Option<usize>,
    /// Check whether `--form1` and `--form2` form a basis.
    #[arg(long, requires_all = ["form1", "form2"])]
    pub basis_check: bool,
    /// Form `dx=<poly>; dy=<poly>`.
    #[arg(long)]
    pub form1: Option<String>,
    #[arg(long)]
    pub form2: Option<String>,
}

/// Text written by a command and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Exit status for each error kind.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) => 2,
        Error::Truncation { .. } | Error::Math(_) => 3,
        Error::BoundExhausted(_) => 4,
    }
}

/// Parses arguments (the first is the program name) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    match run(&cli.command) {
        Ok(stdout) => Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        },
        Err(e) => {
            let advice = match &e {
                Error::BoundExhausted(_) => "\nhint: raise --degree-bound and --jet-order",
                Error::Truncation { .. } => "\nhint: raise --trunc",
                _ => "",
            };
            Outcome {
                stdout: String::new(),
                stderr: format!("error: {e}{advice}\n"),
                code: exit_code(&e),
            }
        }
    }
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input: &'a Input,
    result: T,
}

/// Echo of everything that determines the output.
#[derive(Debug, Default, Serialize)]
struct Input {
    source: String,
    value: String,
    generic: bool,
    seed: u64,
    truncation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    direction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<SaitoBounds>,
}

fn emit<T: Serialize>(command: &'static str, input: &Input, result: T) -> Result<String> {
    let report = Report {
        tool: "branchmod",
        version: env!("CARGO_PKG_VERSION"),
        command,
        input,
        result,
    };
    let mut s = serde_json::to_string_pretty(&report).map_err(|e| Error::math(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn write_file(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display())))
}

/// The curve as given on the command line.
enum Curve {
    Param(Parametrization),
    Equation(CurveEquation),
    Class(CharExponents),
}

fn load_curve(args: &CurveArgs) -> Result<(Curve, Input)> {
    let sources: Vec<(&str, &String)> = [
        ("param", &args.param),
        ("equation", &args.equation),
        ("char", &args.chars),
        ("pairs", &args.pairs),
        ("semigroup", &args.semigroup),
    ]
    .into_iter()
    .filter_map(|(n, v)| v.as_ref().map(|v| (n, v)))
    .collect();
    let [(name, value)] = sources.as_slice() else {
        return Err(Error::invalid(
            "give exactly one of --param, --equation, --char, --pairs, --semigroup",
        ));
    };
    if args.trunc == Some(0) {
        return Err(Error::invalid("--trunc must be positive"));
    }
    let curve = match *name {
        "param" => Curve::Param(parse_param(value, args.trunc.unwrap_or(EXACT_PRECISION))?),
        "equation" => Curve::Equation(CurveEquation::new(parse_poly(value)?)?),
        "char" => Curve::Class(parse_char(value)?),
        "pairs" => Curve::Class(CharExponents::from_pairs(&parse_pairs(value)?)?),
        _ => Curve::Class(CharExponents::from_semigroup(&parse_list(value)?)?),
    };
    if args.generic && !matches!(curve, Curve::Class(_)) {
        return Err(Error::invalid("--generic needs --char, --pairs or --semigroup"));
    }
    let input = Input {
        source: name.to_string(),
        value: value.to_string(),
        generic: args.generic,
        seed: args.seed,
        truncation: args.trunc,
        ..Input::default()
    };
    Ok((curve, input))
}

/// A parametrization of the curve, recording the truncation used.
fn parametrize(curve: &Curve, args: &CurveArgs, input: &mut Input) -> Result<Parametrization> {
    match curve {
        Curve::Param(p) => Ok(p.clone()),
        Curve::Equation(e) => e.monomial_parametrization(EXACT_PRECISION).ok_or_else(|| {
            Error::invalid("only equations y^a - c*x^b with coprime a, b are parametrized; pass --param")
        }),
        Curve::Class(c) if args.generic => {
            let t = args.trunc.unwrap_or_else(|| c.default_truncation());
            input.truncation = Some(t);
            generic_parametrization(c, args.seed, t)
        }
        Curve::Class(c) => Ok(characteristic_parametrization(c, EXACT_PRECISION)),
    }
}

fn class_of(curve: &Curve, args: &CurveArgs, input: &mut Input) -> Result<CharExponents> {
    match curve {
        Curve::Class(c) => Ok(c.clone()),
        _ => parametrize(curve, args, input)?.char_exponents(),
    }
}

fn direction(args: &DirectionArgs) -> Result<Direction> {
    let mut comps = match args.direction {
        DirectionChoice::None => vec![],
        DirectionChoice::X => vec![DirectionComponent::XAxis],
        DirectionChoice::Y => vec![DirectionComponent::YAxis],
        DirectionChoice::Xy => vec![DirectionComponent::XAxis, DirectionComponent::YAxis],
    };
    for s in &args.dparam {
        comps.push(DirectionComponent::Smooth(parse_param(s, EXACT_PRECISION)?));
    }
    Direction::new(comps)
}

fn run(command: &Command) -> Result<String> {
    match command {
        Command::Invariants(args) => invariants(args),
        Command::Resolve { curve, dot } => resolve_cmd(curve, dot.as_ref()),
        Command::Dim(args) => dim(args),
        Command::Saito(args) => saito(args),
        Command::Tree { curve, direction, dot } => tree(curve, direction, dot.as_ref()),
        Command::Rigid { max_mult, bound } => rigid(*max_mult, *bound),
    }
}

#[derive(Serialize)]
struct Invariants {
    char_exponents: CharExponents,
    puiseux_pairs: Vec<(u64, u64)>,
    semigroup_generators: Vec<u64>,
    multiplicity: u64,
    genus: usize,
    conductor: u64,
    delta_invariant: u64,
}

fn invariants(args: &CurveArgs) -> Result<String> {
    let (curve, mut input) = load_curve(args)?;
    let c = class_of(&curve, args, &mut input)?;
    emit(
        "invariants",
        &input,
        Invariants {
            puiseux_pairs: c.puiseux_pairs(),
            semigroup_generators: c.semigroup_generators(),
            multiplicity: c.multiplicity(),
            genus: c.genus(),
            conductor: c.conductor(),
            delta_invariant: c.conductor() / 2,
            char_exponents: c,
        },
    )
}

#[derive(Serialize)]
struct ResolveResult {
    blow_ups: usize,
    resolution: ResolutionData,
    intersection: IntersectionReport,
}

fn resolve_cmd(args: &CurveArgs, dot: Option<&PathBuf>) -> Result<String> {
    let (curve, mut input) = load_curve(args)?;
    let param = parametrize(&curve, args, &mut input)?;
    let res = resolve(&param)?;
    if let Some(path) = dot {
        write_file(path, &res.to_dot())?;
    }
    emit(
        "resolve",
        &input,
        ResolveResult {
            blow_ups: res.len(),
            intersection: intersection_report(&res)?,
            resolution: res,
        },
    )
}

#[derive(Serialize)]
struct DimStep {
    index: usize,
    strict_multiplicity: u64,
    reduced_total_multiplicity: u64,
    sigma: u64,
}

#[derive(Serialize)]
struct ClosedForm {
    n: u64,
    h: u64,
    value: u64,
}

#[derive(Serialize)]
struct DimensionReport {
    char_exponents: CharExponents,
    steps: Vec<DimStep>,
    total: u64,
    rigid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<ClosedForm>,
}

fn dim(args: &CurveArgs) -> Result<String> {
    let (curve, mut input) = load_curve(args)?;
    let param = parametrize(&curve, args, &mut input)?;
    let chars = param.char_exponents()?;
    let res = resolve(&param)?;
    let total = generic_dimension(&res)?;
    let steps = res
        .steps
        .iter()
        .map(|s| {
            Ok(DimStep {
                index: s.index,
                strict_multiplicity: s.strict_multiplicity,
                reduced_total_multiplicity: s.reduced_total_multiplicity,
                sigma: sigma(s.reduced_total_multiplicity)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let b = chars.betas();
    let closed_form = if b.len() == 2 && b[1] % b[0] == 1 {
        let (n, h) = (b[0], b[1] / b[0]);
        Some(ClosedForm {
            n,
            h,
            value: closed_form_nh(n, h)?,
        })
    } else {
        None
    };
    emit(
        "dim",
        &input,
        DimensionReport {
            char_exponents: chars,
            steps,
            total,
            rigid: total == 0,
            closed_form,
        },
    )
}

#[derive(Serialize)]
struct SaitoResult {
    curve_valuation: u64,
    generic_expectation: u64,
    #[serde(flatten)]
    basis: SaitoBasis,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis_check: Option<CriterionReport>,
}

fn saito(args: &SaitoArgs) -> Result<String> {
    let (curve, mut input) = load_curve(&args.curve)?;
    let d = direction(&args.direction)?;
    input.direction = Some(d.to_string());
    if args.degree_bound == Some(0) || args.jet_order == Some(0) {
        return Err(Error::invalid("bounds must be positive"));
    }
    if args.curve.generic {
        let Curve::Class(c) = &curve else { unreachable!("checked by load_curve") };
        if args.seeds == 0 {
            return Err(Error::invalid("--seeds must be positive"));
        }
        if args.degree_bound.is_some() || args.jet_order.is_some() || args.curve.trunc.is_some() {
            return Err(Error::invalid(
                "--generic uses the default truncation and bounds, then checks them doubled",
            ));
        }
        let seeds: Vec<u64> = (args.curve.seed..args.curve.seed + args.seeds).collect();
        let report: GenericMinimumReport = verify_generic_minimum(c, &d, &seeds)?;
        input.truncation = Some(report.truncation);
        input.bounds = Some(report.bounds);
        return emit("saito", &input, report);
    }
    let sc = match &curve {
        Curve::Equation(e) => SaitoCurve::Equation(e.clone()),
        _ => SaitoCurve::Param(parametrize(&curve, &args.curve, &mut input)?),
    };
    let mut bounds = default_bounds(&sc, &d)?;
    if let Some(b) = args.degree_bound {
        bounds.degree_bound = b;
    }
    if let Some(m) = args.jet_order {
        bounds.jet_order = m;
    }
    input.bounds = Some(bounds);
    let basis_check = if args.basis_check {
        let w1 = parse_form(args.form1.as_deref().unwrap_or_default())?;
        let w2 = parse_form(args.form2.as_deref().unwrap_or_default())?;
        Some(check_saito_criterion(&w1, &w2, &sc, &d, bounds.jet_order)?)
    } else {
        None
    };
    let nu_sd = curve_valuation(&sc, &d)?;
    let basis = saito_basis(&sc, &d, &bounds)?;
    emit(
        "saito",
        &input,
        SaitoResult {
            curve_valuation: nu_sd,
            generic_expectation: nu_sd / 2,
            basis,
            basis_check,
        },
    )
}

#[derive(Serialize)]
struct TableCheck {
    table: i64,
    computed: i64,
    agree: bool,
}

#[derive(Serialize)]
struct TreeResult {
    multiplicities: Vec<u64>,
    #[serde(flatten)]
    data: DeltaPData,
    foliation_multiplicity: FoliationIdentity,
    #[serde(skip_serializing_if = "Option::is_none")]
    p1_table: Option<TableCheck>,
    tree: NumberedDualTree,
    dot: String,
}

fn tree(args: &CurveArgs, dargs: &DirectionArgs, dot: Option<&PathBuf>) -> Result<String> {
    let (curve, mut input) = load_curve(args)?;
    let d = direction(dargs)?;
    input.direction = Some(d.to_string());
    let param = parametrize(&curve, args, &mut input)?;
    let trace = trace_with_direction(&param, &d)?;
    let data = delta_p_data(&trace, &d)?;
    let identity = foliation_mult_identity(&trace.data, &data.delta, &data.p)?;
    let tree = numbered_dual_tree(&trace.data, &data.p, &data.direction_attachments)?;
    let chars = param.char_exponents()?;
    let b = chars.betas();
    let p1_table = if b.len() == 2 && data.delta.len() >= 2 {
        p1_table_crosscheck(b[0], b[1], data.delta[0], data.delta[1])
            .ok()
            .map(|table| TableCheck {
                table,
                computed: data.p[0],
                agree: table == data.p[0],
            })
    } else {
        None
    };
    let text = tree.to_dot();
    if let Some(path) = dot {
        write_file(path, &text)?;
    }
    emit(
        "tree",
        &input,
        TreeResult {
            multiplicities: trace.data.multiplicities(),
            data,
            foliation_multiplicity: identity,
            p1_table,
            tree,
            dot: text,
        },
    )
}

fn rigid(max_mult: u64, bound: u64) -> Result<String> {
    if max_mult == 0 || bound == 0 {
        return Err(Error::invalid("bounds must be positive"));
    }
    let report: RigidityReport = classify_rigidity(max_mult, bound)?;
    let input = Input {
        source: "window".into(),
        value: format!("max_mult={max_mult}, bound={bound}"),
        ..Input::default()
    };
    emit("rigid", &input, report)
}
