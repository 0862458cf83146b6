//! Command-line interface: validation, hom-set and automorphism enumeration,
//! factorizations, rooting, cofaces, nerve values, Segal and inner-horn
//! checks, cyclic-operad maps, built-in examples, and DOT export.
//!
//! Exit codes: 0 success, 1 validation failure (diagnostic JSON on stdout),
//! 2 size cap exceeded, 3 malformed input.

use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyctree::{
    active_inert_factor, cofaces, enumerate_cyc_maps, enumerate_homs_bruteforce,
    enumerate_homs_structured, example_a, example_c, example_c_prime, is_segal, nerve, reedy_factor,
    representable, rootify, tree_to_dot, unique_inner_filler, CofaceKind, EnumConfig, EnumError,
    FiniteCyclicOperad, Morphism, MorphismDto, NervePresheaf, OperadDto, Presheaf,
    RepresentablePresheaf, StarImagePresheaf, Tree, TreeDto,
};

#[derive(Parser)]
#[command(name = "cyctree", version, about = "Unrooted trees with legs, morphisms, and cyclic operads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Vertex bound for checks that quantify over trees.
    #[arg(long, global = true, default_value_t = 4)]
    bound: usize,
    /// Search-space cap for enumerations.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    cap: u128,
    /// Seed for sampled checks (fixed default for reproducibility).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Rooting,
    Bruteforce,
}

#[derive(Clone, Copy, ValueEnum)]
enum FactorKind {
    Reedy,
    ActiveInert,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a tree, morphism, or operad given as JSON.
    Validate {
        #[arg(value_parser = ["tree", "morphism", "operad"])]
        kind: String,
        /// Inline JSON, @file, or a builtin name.
        input: String,
    },
    /// Enumerate morphisms R -> S.
    Homs {
        r: String,
        s: String,
        #[arg(long, value_enum, default_value_t = Via::Rooting)]
        via: Via,
    },
    /// Enumerate automorphisms of a tree.
    Aut { s: String },
    /// Factor a morphism.
    Factor {
        morphism: String,
        #[arg(long, value_enum, default_value_t = FactorKind::Reedy)]
        kind: FactorKind,
    },
    /// Root a tree at a leg.
    Root { s: String, s0: String },
    /// Distance and minimal path between two edges of a tree.
    Distance { s: String, e1: String, e2: String },
    /// List the cofaces of a tree.
    Cofaces { s: String },
    /// Elements of the nerve of an operad over a tree.
    Nerve { operad: String, s: String },
    /// Check the Segal condition for a presheaf up to the vertex bound.
    SegalCheck { presheaf: String },
    /// Check unique inner-horn filling at the inner coface collapsing `edge`.
    HornCheck {
        presheaf: String,
        s: String,
        edge: String,
    },
    /// Enumerate maps of cyclic operads A -> B.
    CycHoms { a: String, b: String },
    /// Print a builtin operad (C, Cprime, A) as JSON.
    Example { name: String },
    /// DOT export of a tree.
    Dot { s: String },
}

enum CliError {
    /// Exit 1: input parsed but failed validation; diagnostic JSON printed.
    Validation(Value),
    /// Exit 2: a configured search cap was exceeded.
    Cap(String),
    /// Exit 3: malformed input.
    Malformed(String),
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> CliError {
        CliError::Cap(e.to_string())
    }
}

fn read_input(input: &str) -> Result<String, CliError> {
    if let Some(path) = input.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("cannot read {path}: {e}")))
    } else {
        Ok(input.to_string())
    }
}

/// Trees accept builtin shorthands (eta, star:N, linear:N or lN, figure3,
/// figure5) or JSON (inline or @file).
fn parse_tree(input: &str) -> Result<Arc<Tree>, CliError> {
    let named = match input.to_ascii_lowercase().as_str() {
        "eta" => Some(Tree::eta()),
        "figure3" => Some(cyctree::fixtures::figure3()),
        "figure5" => Some(cyctree::fixtures::figure5()),
        lower => {
            if let Some(n) = lower.strip_prefix("star:") {
                let n: usize = n.parse().map_err(|_| CliError::Malformed(format!("bad star size {n:?}")))?;
                Some(Tree::star(n))
            } else if let Some(n) = lower.strip_prefix("linear:").or_else(|| lower.strip_prefix('l')) {
                match n.parse::<usize>() {
                    Ok(n) => Some(Tree::linear(n)),
                    Err(_) if lower.starts_with("linear:") => {
                        return Err(CliError::Malformed(format!("bad linear size {n:?}")))
                    }
                    Err(_) => None,
                }
            } else {
                None
            }
        }
    };
    if let Some(t) = named {
        return Ok(Arc::new(t));
    }
    let text = read_input(input)?;
    let dto: TreeDto = serde_json::from_str(&text)
        .map_err(|e| CliError::Malformed(format!("bad tree JSON: {e}")))?;
    let tree = dto
        .to_tree()
        .map_err(|e| CliError::Validation(json!({"check": "tree", "pass": false, "error": e.to_string()})))?;
    Ok(Arc::new(tree))
}

fn parse_morphism(input: &str) -> Result<Morphism, CliError> {
    let text = read_input(input)?;
    let dto: MorphismDto = serde_json::from_str(&text)
        .map_err(|e| CliError::Malformed(format!("bad morphism JSON: {e}")))?;
    dto.to_morphism().map_err(|e| {
        CliError::Validation(json!({"check": "morphism", "pass": false, "error": e.to_string()}))
    })
}

/// Operads accept builtin names (C, Cprime, A) or JSON (inline or @file).
fn parse_operad(input: &str) -> Result<FiniteCyclicOperad, CliError> {
    let o = match input {
        "C" => example_c(),
        "Cprime" | "C'" => example_c_prime(),
        "A" => example_a(),
        _ => {
            let text = read_input(input)?;
            let dto: OperadDto = serde_json::from_str(&text)
                .map_err(|e| CliError::Malformed(format!("bad operad JSON: {e}")))?;
            dto.to_operad().map_err(|e| {
                CliError::Validation(json!({"check": "operad", "pass": false, "error": e.to_string()}))
            })?
        }
    };
    o.validate().map_err(|e| {
        CliError::Validation(json!({"check": "operad", "pass": false, "error": e.to_string()}))
    })?;
    Ok(o)
}

/// Presheaves: `nerve:<operad>`, `representable:<tree>`, or `nonsegal`
/// (the Segal core of the representable of L2 — fails the Segal condition).
enum PresheafSpec {
    Nerve(NervePresheaf),
    Representable(RepresentablePresheaf),
    NonSegal(StarImagePresheaf),
}

fn parse_presheaf(input: &str, cfg: &EnumConfig) -> Result<PresheafSpec, CliError> {
    if let Some(rest) = input.strip_prefix("nerve:") {
        Ok(PresheafSpec::Nerve(nerve(parse_operad(rest)?)))
    } else if let Some(rest) = input.strip_prefix("representable:") {
        let mut p = representable(parse_tree(rest)?);
        p.cfg = cfg.clone();
        Ok(PresheafSpec::Representable(p))
    } else if input == "nonsegal" {
        Ok(PresheafSpec::NonSegal(StarImagePresheaf {
            target: Arc::new(Tree::linear(2)),
            cfg: cfg.clone(),
        }))
    } else {
        Err(CliError::Malformed(format!(
            "unknown presheaf {input:?}: use nerve:<operad>, representable:<tree>, or nonsegal"
        )))
    }
}

fn morphism_json(m: &Morphism) -> Value {
    serde_json::to_value(MorphismDto::from_morphism(m)).expect("morphism serializes")
}

fn tree_json(t: &Tree) -> Value {
    serde_json::to_value(TreeDto::from_tree(t)).expect("tree serializes")
}

fn segal_check(x: &impl Presheaf, bound: usize) -> Value {
    let r = is_segal(x, bound);
    json!({
        "check": "segal",
        "bound": bound,
        "pass": r.pass,
        "witness": r.witness.map(|(t, reason)| json!({"tree": tree_json(&t), "reason": reason})),
    })
}

fn horn_check(
    x: &impl Presheaf,
    s: &Arc<Tree>,
    edge: &str,
    cfg: &EnumConfig,
) -> Result<Value, CliError> {
    let delta = cofaces(s)
        .into_iter()
        .find(|d| matches!(&d.kind, CofaceKind::Inner { edge: e } if e == edge))
        .ok_or_else(|| CliError::Malformed(format!("{edge:?} is not an interior edge of the tree")))?;
    let report = unique_inner_filler(x, s, &delta, cfg)?;
    Ok(json!({
        "tree": tree_json(s),
        "check": "inner-horn",
        "edge": edge,
        "pass": report.pass,
        "hornCount": report.horn_count,
        "elementCount": report.element_count,
        "witness": if report.pass { Value::Null } else { Value::String(report.detail) },
    }))
}

fn coface_kind_json(kind: &CofaceKind) -> Value {
    match kind {
        CofaceKind::Inner { edge } => json!({"kind": "inner", "edge": edge}),
        CofaceKind::Outer { vertex, edge } => json!({"kind": "outer", "vertex": vertex, "edge": edge}),
        CofaceKind::LegInclusion { index } => json!({"kind": "legInclusion", "index": index}),
    }
}

fn run(cli: Cli) -> Result<Value, CliError> {
    let cfg = EnumConfig {
        cap: cli.cap,
        ..EnumConfig::default()
    };
    match cli.command {
        Command::Validate { kind, input } => match kind.as_str() {
            "tree" => {
                let t = parse_tree(&input)?;
                Ok(json!({"check": "tree", "pass": true, "tree": tree_json(&t)}))
            }
            "morphism" => {
                let m = parse_morphism(&input)?;
                Ok(json!({"check": "morphism", "pass": true, "morphism": morphism_json(&m)}))
            }
            "operad" => {
                let o = parse_operad(&input)?;
                Ok(json!({"check": "operad", "pass": true, "ops": o.profiles.len()}))
            }
            _ => unreachable!("clap restricts the kind"),
        },
        Command::Homs { r, s, via } => {
            let (r, s) = (parse_tree(&r)?, parse_tree(&s)?);
            let homs = match via {
                Via::Rooting => enumerate_homs_structured(&r, &s, &cfg)?,
                Via::Bruteforce => enumerate_homs_bruteforce(&r, &s, &cfg)?,
            };
            Ok(json!({
                "count": homs.len(),
                "morphisms": homs.iter().map(morphism_json).collect::<Vec<_>>(),
            }))
        }
        Command::Aut { s } => {
            let s = parse_tree(&s)?;
            let auts = cyctree::automorphisms(&s, &cfg)?;
            Ok(json!({
                "count": auts.len(),
                "morphisms": auts.iter().map(morphism_json).collect::<Vec<_>>(),
            }))
        }
        Command::Factor { morphism, kind } => {
            let m = parse_morphism(&morphism)?;
            let f = match kind {
                FactorKind::Reedy => reedy_factor(&m),
                FactorKind::ActiveInert => active_inert_factor(&m),
            };
            let kind = match kind {
                FactorKind::Reedy => "reedy",
                FactorKind::ActiveInert => "active-inert",
            };
            Ok(json!({
                "kind": kind,
                "mid": tree_json(&f.mid),
                "first": morphism_json(&f.first),
                "second": morphism_json(&f.second),
            }))
        }
        Command::Root { s, s0 } => {
            let s = parse_tree(&s)?;
            let r = rootify(&s, &s0).map_err(|e| {
                CliError::Validation(json!({"check": "root", "pass": false, "error": e.to_string()}))
            })?;
            let mut dto = TreeDto::from_tree(r.rooted.tree());
            dto.root = Some(r.rooted.root().clone());
            Ok(json!({
                "rooted": serde_json::to_value(dto).expect("tree serializes"),
                "iso": morphism_json(&r.iso),
            }))
        }
        Command::Distance { s, e1, e2 } => {
            let s = parse_tree(&s)?;
            if !s.has_edge(&e1) || !s.has_edge(&e2) {
                return Err(CliError::Malformed("both edges must belong to the tree".into()));
            }
            let path = s.minimal_path(
                &cyctree::Item::Edge(e1.clone()),
                &cyctree::Item::Edge(e2.clone()),
            );
            Ok(json!({
                "distance": s.edge_distance(&e1, &e2),
                "path": path.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Cofaces { s } => {
            let s = parse_tree(&s)?;
            let list = cofaces(&s);
            Ok(json!({
                "count": list.len(),
                "cofaces": list
                    .iter()
                    .map(|d| {
                        let mut v = coface_kind_json(&d.kind);
                        v["map"] = morphism_json(&d.map);
                        v
                    })
                    .collect::<Vec<_>>(),
            }))
        }
        Command::Nerve { operad, s } => {
            let o = parse_operad(&operad)?;
            let s = parse_tree(&s)?;
            let elems = nerve(o).value(&s);
            Ok(json!({
                "count": elems.len(),
                "elements": elems
                    .iter()
                    .map(|e| json!({"coloring": e.coloring, "vertexOps": e.vertex_ops}))
                    .collect::<Vec<_>>(),
            }))
        }
        Command::SegalCheck { presheaf } => Ok(match parse_presheaf(&presheaf, &cfg)? {
            PresheafSpec::Nerve(x) => segal_check(&x, cli.bound),
            PresheafSpec::Representable(x) => segal_check(&x, cli.bound),
            PresheafSpec::NonSegal(x) => segal_check(&x, cli.bound),
        }),
        Command::HornCheck { presheaf, s, edge } => {
            let s = parse_tree(&s)?;
            match parse_presheaf(&presheaf, &cfg)? {
                PresheafSpec::Nerve(x) => horn_check(&x, &s, &edge, &cfg),
                PresheafSpec::Representable(x) => horn_check(&x, &s, &edge, &cfg),
                PresheafSpec::NonSegal(x) => horn_check(&x, &s, &edge, &cfg),
            }
        }
        Command::CycHoms { a, b } => {
            let (a, b) = (parse_operad(&a)?, parse_operad(&b)?);
            let maps = enumerate_cyc_maps(&a, &b, &cfg)?;
            Ok(json!({
                "count": maps.len(),
                "maps": maps
                    .iter()
                    .map(|m| json!({"onColors": m.on_colors, "onOps": m.on_ops}))
                    .collect::<Vec<_>>(),
            }))
        }
        Command::Example { name } => {
            let o = match name.as_str() {
                "C" => example_c(),
                "Cprime" | "C'" => example_c_prime(),
                "A" => example_a(),
                _ => return Err(CliError::Malformed(format!("unknown example {name:?}"))),
            };
            Ok(serde_json::to_value(OperadDto::from_operad(&o)).expect("operad serializes"))
        }
        Command::Dot { s } => {
            let s = parse_tree(&s)?;
            Ok(Value::String(tree_to_dot(&s)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dot = matches!((&cli.format, &cli.command), (Format::Dot, _) | (_, Command::Dot { .. }));
    match run(cli) {
        Ok(Value::String(text)) if dot => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("valid JSON"));
            ExitCode::SUCCESS
        }
        Err(CliError::Validation(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("valid JSON"));
            ExitCode::from(1)
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("size cap exceeded: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Malformed(msg)) => {
            eprintln!("malformed input: {msg}");
            ExitCode::from(3)
        }
    }
}
