use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use srs_core::cartan::{ade_srs, ade_table, group_order, weyl_orbit, weyl_rep, CartanDatum};
use srs_core::extend::{extend_minimal, NeighborhoodIndicator};
use srs_core::grp2::{burnside_check, commutativity_graph, extraspecial_sign, lift_decoration, make_group};
use srs_core::srs::{coclique_bound_check, enumerate_quotients, srs_isomorphic, type_histogram};
use srs_core::verify::{self, Suite, DEFAULT_SEED};
use srs_core::{BitVec, DynkinFamily, Graph, Srs, SpaceType};

mod text;

#[derive(Parser)]
#[command(name = "srs", version, about = "Symplectic root systems over F2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Type (n,k) of the minimal root system.
    Type(GraphInput),
    /// The minimal root system as JSON.
    Minimal(GraphInput),
    /// All root systems on the graph, one per quotient class.
    Quotients(GraphInput),
    /// Attach a node to a minimal root system.
    Extend(ExtendArgs),
    /// Decide whether two root systems on the same graph are isomorphic.
    Iso(IsoArgs),
    /// Quotient table and explicit decorations of a simply-laced diagram.
    Ade(DiagramArgs),
    /// Weyl group action on the space of the parity graph.
    Weyl(WeylArgs),
    /// The 2-group realizing the minimal root system.
    Group(GraphInput),
    /// Run a property sweep.
    Verify(VerifyArgs),
    /// Coclique bound n <= |G| - gamma.
    Coclique(GraphInput),
}

fn parse_family(s: &str) -> Result<DynkinFamily, String> {
    s.parse()
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Graph file: edge list or JSON.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Diagram family (with --rank).
    #[arg(long, value_parser = parse_family, requires = "rank")]
    family: Option<DynkinFamily>,
}

#[derive(Args)]
struct GraphInput {
    #[command(flatten)]
    source: GraphSource,
    /// Diagram rank (with --family).
    #[arg(long, requires = "family")]
    rank: Option<usize>,
}

#[derive(Args)]
struct DiagramArgs {
    #[arg(long, value_parser = parse_family)]
    family: DynkinFamily,
    #[arg(long)]
    rank: usize,
}

#[derive(Args)]
struct WeylArgs {
    #[command(flatten)]
    diagram: DiagramArgs,
    /// Compute the group order even above rank 4.
    #[arg(long)]
    order: bool,
}

#[derive(Args)]
struct ExtendArgs {
    /// Root system JSON to extend; must be minimal.
    #[arg(long, required_unless_present = "graph", conflicts_with = "graph")]
    srs: Option<PathBuf>,
    /// Extend the minimal root system of this graph instead.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Neighbourhood of the new node as a bitstring over the existing nodes.
    #[arg(long)]
    indicator: String,
}

#[derive(Args)]
struct IsoArgs {
    #[arg(long)]
    srs: PathBuf,
    #[arg(long)]
    other: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    max_rank: Option<usize>,
    /// Smaller sweeps.
    #[arg(long)]
    quick: bool,
}

type CmdResult = Result<(Value, bool), String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    Graph::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_srs(path: &Path) -> Result<Srs, String> {
    let value: Value = serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    Srs::from_json_value(&value).map_err(|e| format!("{}: {e}", path.display()))
}

fn resolve_graph(input: &GraphInput) -> Result<Graph, String> {
    match (&input.source.graph, input.source.family, input.rank) {
        (Some(path), _, _) => load_graph(path),
        (None, Some(f), Some(r)) => Graph::dynkin(f, r).map_err(|e| e.to_string()),
        _ => Err("either --graph or --family with --rank is required".into()),
    }
}

/// Minimal root system; named simply-laced diagrams use the explicit
/// decorations.
fn resolve_srs(input: &GraphInput) -> Result<Srs, String> {
    if let (Some(f), Some(r)) = (input.source.family, input.rank) {
        if f.is_simply_laced() {
            return ade_srs(f, r).map_err(|e| e.to_string());
        }
    }
    Ok(Srs::minimal(&resolve_graph(input)?))
}

fn type_json(t: SpaceType) -> Value {
    json!([t.n, t.k])
}

fn histogram_json(hist: &[(SpaceType, usize)]) -> Value {
    hist.iter()
        .map(|(t, c)| json!({"type": type_json(*t), "count": c}))
        .collect()
}

fn cmd_type(input: &GraphInput) -> CmdResult {
    let g = resolve_graph(input)?;
    Ok((json!({"type": type_json(Srs::minimal(&g).space_type())}), true))
}

fn cmd_minimal(input: &GraphInput) -> CmdResult {
    Ok((resolve_srs(input)?.to_json_value(), true))
}

fn cmd_quotients(input: &GraphInput) -> CmdResult {
    let g = resolve_graph(input)?;
    let classes = enumerate_quotients(&g).map_err(|e| e.to_string())?;
    let hist = type_histogram(&classes);
    let list: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "type": type_json(c.srs.space_type()),
                "kernel": c.kernel.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "srs": c.srs.to_json_value(),
            })
        })
        .collect();
    Ok((
        json!({"count": classes.len(), "histogram": histogram_json(&hist), "classes": list}),
        true,
    ))
}

fn cmd_extend(args: &ExtendArgs) -> CmdResult {
    let s = match (&args.srs, &args.graph) {
        (Some(p), _) => load_srs(p)?,
        (None, Some(p)) => Srs::minimal(&load_graph(p)?),
        (None, None) => return Err("either --srs or --graph is required".into()),
    };
    let lambda: BitVec = if args.indicator.is_empty() {
        BitVec::zeros(0)
    } else {
        args.indicator.parse().map_err(|e| format!("indicator: {e}"))?
    };
    let (ext, witness) =
        extend_minimal(&s, &NeighborhoodIndicator::new(lambda), None).map_err(|e| e.to_string())?;
    let mut out = ext.to_json_value();
    out["witness"] = witness.to_json_value();
    Ok((out, true))
}

fn cmd_iso(args: &IsoArgs) -> CmdResult {
    let a = load_srs(&args.srs)?;
    let b = load_srs(&args.other)?;
    let map = srs_isomorphic(&a, &b).map_err(|e| e.to_string())?;
    Ok((
        json!({
            "isomorphic": map.is_some(),
            "matrix": map.map(|m| m.matrix.to_bitstrings()),
        }),
        true,
    ))
}

fn cmd_ade(args: &DiagramArgs) -> CmdResult {
    let s = ade_srs(args.family, args.rank).map_err(|e| e.to_string())?;
    let table = ade_table(args.family, args.rank).map_err(|e| e.to_string())?;
    Ok((
        json!({
            "diagram": format!("{}{}", args.family, args.rank),
            "type": type_json(s.space_type()),
            "table": histogram_json(&table),
            "srs": s.to_json_value(),
        }),
        true,
    ))
}

fn cmd_weyl(args: &WeylArgs) -> CmdResult {
    let (f, r) = (args.diagram.family, args.diagram.rank);
    let datum = CartanDatum::of(f, r).map_err(|e| e.to_string())?;
    let rep = weyl_rep(&datum).map_err(|e| e.to_string())?;
    let order = if r <= 4 || args.order {
        Some(group_order(&rep).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let orbits: Vec<Value> = (0..r)
        .map(|i| {
            weyl_orbit(&rep, &BitVec::unit(r, i))
                .map(|o| json!(o.iter().map(ToString::to_string).collect::<Vec<_>>()))
                .map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let fibers: Vec<Value> = rep
        .fibers()
        .iter()
        .map(|(v, roots)| json!({"image": v.to_string(), "roots": roots}))
        .collect();
    Ok((
        json!({
            "diagram": format!("{f}{r}"),
            "cartan": datum.cartan(),
            "symmetrizers": datum.symmetrizers(),
            "parity_graph": rep.srs.graph().to_json_value(),
            "type": type_json(rep.srs.space_type()),
            "generators": rep.generators.iter().map(|m| m.to_bitstrings()).collect::<Vec<_>>(),
            "root_count": rep.extended_deco.len(),
            "group_order": order,
            "orbits": orbits,
            "fibers": fibers,
        }),
        true,
    ))
}

fn cmd_group(input: &GraphInput) -> CmdResult {
    let s = Srs::minimal(&resolve_graph(input)?);
    let grp = make_group(s.space());
    let lifts = lift_decoration(&s, &grp).map_err(|e| e.to_string())?;
    let burnside = burnside_check(&grp, &lifts).map_err(|e| e.to_string())?;
    let comm = commutativity_graph(&grp, &lifts).map_err(|e| e.to_string())?;
    let center = if s.space().dim() <= 10 {
        Some(grp.center().map_err(|e| e.to_string())?.len())
    } else {
        None
    };
    let sign = extraspecial_sign(&grp).map_err(|e| e.to_string())?;
    Ok((
        json!({
            "type": type_json(s.space_type()),
            "order_log2": grp.order_log2(),
            "center_order": center,
            "sign": sign.as_str(),
            "beta": grp.beta().to_bitstrings(),
            "lifts": lifts.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "commutativity_graph": comm.to_json_value(),
            "matches_graph": comm.adjacency() == s.graph().adjacency(),
            "burnside": {
                "generates": burnside.generates,
                "minimal": burnside.minimal,
                "basis_size": burnside.basis_size,
                "frattini_dim": burnside.frattini_dim,
            },
        }),
        true,
    ))
}

fn cmd_verify(args: &VerifyArgs, seed: u64) -> CmdResult {
    let opts = verify::Options {
        max_nodes: args.max_nodes,
        max_rank: args.max_rank,
        quick: args.quick,
        seed,
    };
    let reports = verify::run(args.suite, &opts).map_err(|e| e.to_string())?;
    let passed = reports.iter().all(verify::SuiteReport::passed);
    Ok((
        json!({
            "suite": args.suite.name(),
            "passed": passed,
            "reports": reports.iter().map(verify::SuiteReport::to_json_value).collect::<Vec<_>>(),
        }),
        passed,
    ))
}

fn cmd_coclique(input: &GraphInput) -> CmdResult {
    let g = resolve_graph(input)?;
    let b = coclique_bound_check(&g).map_err(|e| e.to_string())?;
    let witness = g.max_coclique().map_err(|e| e.to_string())?;
    Ok((
        json!({
            "n": b.n,
            "gamma": b.gamma,
            "bound": b.bound,
            "holds": b.holds,
            "coclique": witness,
        }),
        b.holds,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Type(a) => cmd_type(a),
        Command::Minimal(a) => cmd_minimal(a),
        Command::Quotients(a) => cmd_quotients(a),
        Command::Extend(a) => cmd_extend(a),
        Command::Iso(a) => cmd_iso(a),
        Command::Ade(a) => cmd_ade(a),
        Command::Weyl(a) => cmd_weyl(a),
        Command::Group(a) => cmd_group(a),
        Command::Verify(a) => cmd_verify(a, cli.seed),
        Command::Coclique(a) => cmd_coclique(a),
    };
    match result {
        Ok((value, ok)) => {
            let out = match cli.format {
                Format::Json => format!("{value}\n"),
                Format::Text => text::render(&value),
            };
            // A closed pipe downstream is not an error of ours.
            let _ = io::stdout().lock().write_all(out.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
