use std::fmt::{self, Write as _};
use std::io::Read;
use std::time::Instant;

use magset::families::{self, FamilyKind, FamilySpec};
use magset::io::{self, Graph};
use magset::monitoring::{forced_vertices, is_extremal, min_meg_set, ForceReason};
use magset::reductions::{
    nae3sat_to_graph, vc_to_mag_instance, verify_nae_reduction_report, verify_vc_reduction_report,
    Nae3SatInstance, ReductionArtifact, VertexCoverInstance,
};
use magset::spectrum::{extremal_orientation, orient, spectrum, OrientationMask, SpectrumOptions};
use magset::{mag, min_mag_set, Error, OrientedGraph, SearchStats, SolverConfig, UndirectedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{digest, RunReport, SCHEMA};
use crate::{
    Cli, Command, CycleKind, FamilyArgs, FamilyName, Format, InputArg, ReduceCmd, VerifyCmd,
};

#[derive(Debug)]
pub enum AppError {
    Core(Error),
    Io(String),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Core(e) => write!(f, "{e}"),
            AppError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        AppError::Core(e)
    }
}

pub struct CliError {
    pub err: AppError,
    /// JSON report to print before failing, when `--json` was given.
    pub report: Option<String>,
}

pub struct Output {
    pub text: String,
    pub code: u8,
}

pub fn exit_code(e: &AppError) -> u8 {
    match e {
        AppError::Core(e) => match e {
            Error::Parse { .. } => 2,
            Error::BudgetExceeded { .. } => 3,
            Error::TooManyEdges { .. } | Error::TooLarge(_) => 4,
            Error::DisconnectedInput => 5,
            _ => 6,
        },
        AppError::Io(_) => 7,
    }
}

struct Done {
    text: String,
    result: Value,
    stats: Option<SearchStats>,
    code: u8,
}

impl Done {
    fn ok(text: String, result: Value) -> Self {
        Done {
            text,
            result,
            stats: None,
            code: 0,
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    digest: Option<String>,
}

impl Ctx<'_> {
    fn read(&mut self, input: &Option<String>) -> Result<String, AppError> {
        let mut buf = Vec::new();
        match input.as_deref() {
            None | Some("-") => std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| AppError::Io(format!("reading stdin: {e}")))?,
            Some(path) => {
                buf = std::fs::read(path).map_err(|e| AppError::Io(format!("{path}: {e}")))?;
                buf.len()
            }
        };
        self.digest = Some(digest(&buf));
        String::from_utf8(buf).map_err(|_| AppError::Io("input is not UTF-8".into()))
    }

    fn solver(&self) -> SolverConfig {
        let mut cfg = SolverConfig::default();
        if let Some(b) = self.cli.budget {
            cfg.max_nodes = b;
        }
        cfg
    }

    fn render(&self, g: &Graph) -> String {
        match self.cli.format {
            Format::Edgelist => g.to_edge_list(),
            Format::Dot => g.to_dot(),
        }
    }

    fn render_artifact(&self, art: &ReductionArtifact) -> String {
        match self.cli.format {
            Format::Edgelist => art.to_edge_list(),
            Format::Dot => art.graph.to_dot(),
        }
    }
}

pub fn run(cli: &Cli, command: &str) -> Result<Output, CliError> {
    let start = Instant::now();
    let mut ctx = Ctx { cli, digest: None };
    let res = dispatch(&mut ctx);
    let report = |result: Value, stats: Option<SearchStats>| {
        RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            input_digest: ctx.digest.clone(),
            result,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
            stats,
        }
        .to_json()
    };
    match res {
        Ok(d) => Ok(Output {
            text: if cli.json {
                report(d.result, d.stats)
            } else {
                d.text
            },
            code: d.code,
        }),
        Err(err) => {
            let report = cli.json.then(|| {
                let mut v = json!({ "error": err.to_string(), "exit_code": exit_code(&err) });
                if let AppError::Core(Error::BudgetExceeded {
                    best,
                    best_size,
                    nodes,
                }) = &err
                {
                    v["best"] = json!(best);
                    v["best_size"] = json!(best_size);
                    v["nodes"] = json!(nodes);
                }
                report(v, None)
            });
            Err(CliError { err, report })
        }
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn dispatch(ctx: &mut Ctx) -> Result<Done, AppError> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Mag(a) => cmd_mag(ctx, a),
        Command::Meg(a) => cmd_meg(ctx, a),
        Command::Spectrum(a) => {
            let g = io::parse_undirected(&ctx.read(&a.input.input)?)?;
            let opts = SpectrumOptions {
                solver: ctx.solver(),
                max_edges: a.max_edges,
                stop_at_n: a.stop_at_n,
                stop_at_two: a.stop_at_two,
            };
            let s = spectrum(&g, &opts)?;
            let mut text = format!(
                "mag- {}\nmag+ {}\nspectrum {}\ngap {}\nwitness-min {}\nwitness-max {}\n",
                s.mag_minus,
                s.mag_plus,
                join(&s.spectrum),
                s.gap,
                s.witness_min,
                s.witness_max
            );
            if !s.complete {
                text.push_str("# stopped early; values are bounds seen so far\n");
            }
            let mut v = serde_json::to_value(&s).expect("serializable");
            v["complete"] = json!(s.complete);
            v["orientations_solved"] = json!(s.orientations_solved);
            Ok(Done::ok(text, v))
        }
        Command::Extremal(a) => match io::parse_edge_list(&ctx.read(&a.input)?)? {
            Graph::Directed(g) => {
                let c = is_extremal(&g)?;
                let mut text = format!("extremal {}\n", c.extremal);
                if let Some(v) = c.counterexample {
                    let _ = writeln!(text, "counterexample {v}");
                }
                Ok(Done::ok(
                    text,
                    serde_json::to_value(&c).expect("serializable"),
                ))
            }
            Graph::Undirected(g) => {
                let found = extremal_orientation(&g)?;
                let text = match found {
                    Some(m) => format!("extremal-orientation {m}\n"),
                    None => "extremal-orientation none\n".to_string(),
                };
                Ok(Done::ok(
                    text,
                    json!({ "exists": found.is_some(), "orientation": found }),
                ))
            }
        },
        Command::Forced(a) => {
            let g = io::parse_directed(&ctx.read(&a.input)?)?;
            let r = forced_vertices(&g);
            let mut text = String::new();
            for (v, reason) in &r.reasons {
                let why = match reason {
                    ForceReason::Source => "source".to_string(),
                    ForceReason::Sink => "sink".to_string(),
                    ForceReason::Twin { partner } => format!("twin of {partner}"),
                    ForceReason::CondIi { in_neighbor } => {
                        format!("in-neighbour {in_neighbor} reaches every out-neighbour")
                    }
                    ForceReason::CondIii { out_neighbor } => {
                        format!("out-neighbour {out_neighbor} is reached from every in-neighbour")
                    }
                };
                let _ = writeln!(text, "{v} {why}");
            }
            Ok(Done::ok(
                text,
                serde_json::to_value(&r).expect("serializable"),
            ))
        }
        Command::Family(a) => {
            let g = build_family(ctx, a)?;
            Ok(Done::ok(
                ctx.render(&g),
                json!({ "graph": g.to_edge_list() }),
            ))
        }
        Command::Reduce(ReduceCmd::Nae3sat(a)) => {
            let phi = Nae3SatInstance::parse(&ctx.read(&a.input)?)?;
            let art = nae3sat_to_graph(&phi);
            Ok(Done::ok(
                ctx.render_artifact(&art),
                json!({ "graph": art.to_edge_list(), "labels": art.labels }),
            ))
        }
        Command::Reduce(ReduceCmd::Vertexcover { input, k }) => {
            let g = io::parse_undirected(&ctx.read(&input.input)?)?;
            let art = vc_to_mag_instance(&VertexCoverInstance::new(g, *k)?);
            Ok(Done::ok(
                ctx.render_artifact(&art),
                json!({
                    "graph": art.to_edge_list(),
                    "labels": art.labels,
                    "role_set": art.role_set,
                    "target": art.target,
                }),
            ))
        }
        Command::Verify(v) => cmd_verify(ctx, v),
        Command::ExportDot(a) => {
            let g = io::parse_edge_list(&ctx.read(&a.input)?)?;
            Ok(Done::ok(g.to_dot(), json!({ "dot": g.to_dot() })))
        }
    }
}

fn cmd_mag(ctx: &mut Ctx, a: &InputArg) -> Result<Done, AppError> {
    let g = io::parse_directed(&ctx.read(&a.input)?)?;
    let r = min_mag_set(&g, &ctx.solver())?;
    let text = format!(
        "mag {}\nwitness {}\nforced {}\n",
        r.size,
        join(&r.witness),
        join(&r.forced)
    );
    Ok(Done {
        text,
        result: serde_json::to_value(&r).expect("serializable"),
        stats: Some(r.stats),
        code: 0,
    })
}

fn cmd_meg(ctx: &mut Ctx, a: &InputArg) -> Result<Done, AppError> {
    let g = io::parse_undirected(&ctx.read(&a.input)?)?;
    let r = min_meg_set(&g, &ctx.solver())?;
    if !r.optimal {
        return Err(Error::BudgetExceeded {
            nodes: ctx.solver().max_nodes,
            best_size: r.size,
            best: r.witness,
        }
        .into());
    }
    let text = format!("meg {}\nwitness {}\n", r.size, join(&r.witness));
    Ok(Done::ok(
        text,
        serde_json::to_value(&r).expect("serializable"),
    ))
}

fn family_kind(a: &FamilyArgs) -> Result<FamilyKind, Error> {
    Ok(match a.name {
        FamilyName::Path => FamilyKind::DirectedPath,
        FamilyName::Cycle => match a.class {
            Some(CycleKind::C0) => FamilyKind::CycleC0,
            Some(CycleKind::C1) => FamilyKind::CycleC1,
            Some(CycleKind::C2) => FamilyKind::CycleC2,
            Some(CycleKind::C3) => FamilyKind::CycleC3,
            None => return Err(Error::BadParam("cycle needs --kind".into())),
        },
        FamilyName::RootedTree => FamilyKind::RootedTree,
        FamilyName::TransitiveTournament => FamilyKind::TransitiveTournament,
        FamilyName::FlippedTournament => FamilyKind::FlippedTournament,
        FamilyName::Gj => FamilyKind::Gj,
        FamilyName::BipartiteExtremal => FamilyKind::BipartiteExtremal,
        FamilyName::GirthAlternating => FamilyKind::GirthAlternating,
        FamilyName::RandomOrientation => {
            return Err(Error::BadParam(
                "random-orientation has no family spec".into(),
            ))
        }
    })
}

fn needs_base(name: FamilyName) -> bool {
    matches!(
        name,
        FamilyName::RootedTree
            | FamilyName::BipartiteExtremal
            | FamilyName::GirthAlternating
            | FamilyName::RandomOrientation
    )
}

fn family_spec(
    ctx: &mut Ctx,
    a: &FamilyArgs,
) -> Result<(FamilySpec, Option<UndirectedGraph>), AppError> {
    let base = if needs_base(a.name) {
        Some(io::parse_undirected(&ctx.read(&a.input)?)?)
    } else {
        None
    };
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| AppError::Core(Error::BadParam(format!("missing --{flag}"))))
    };
    let kind = family_kind(a)?;
    let mut spec = FamilySpec::new(kind);
    spec.base = base.clone();
    spec.root = a.root;
    spec.d = a.d;
    spec.pattern = a.pattern.clone();
    match kind {
        FamilyKind::DirectedPath
        | FamilyKind::CycleC0
        | FamilyKind::CycleC1
        | FamilyKind::CycleC2
        | FamilyKind::CycleC3
        | FamilyKind::TransitiveTournament
        | FamilyKind::FlippedTournament => spec.n = need(a.n, "n")?,
        FamilyKind::Gj => spec.j = need(a.j, "j")?,
        _ => {}
    }
    Ok((spec, base))
}

fn build_family(ctx: &mut Ctx, a: &FamilyArgs) -> Result<Graph, AppError> {
    if a.name == FamilyName::RandomOrientation {
        let g = io::parse_undirected(&ctx.read(&a.input)?)?;
        if g.m() > 64 {
            return Err(Error::TooManyEdges { m: g.m(), cap: 64 }.into());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.cli.seed);
        let bits = (0..g.m()).fold(0u64, |acc, i| acc | (u64::from(rng.gen::<bool>()) << i));
        return Ok(Graph::Directed(orient(
            &g,
            OrientationMask::new(bits, g.m())?,
        )?));
    }
    if a.name == FamilyName::Gj {
        let j =
            a.j.ok_or_else(|| AppError::Core(Error::BadParam("missing --j".into())))?;
        return Ok(Graph::Undirected(families::construction_gj(j)?));
    }
    let (spec, _) = family_spec(ctx, a)?;
    Ok(Graph::Directed(spec.build()?))
}

fn verdict(text: String, result: Value, agree: bool) -> Done {
    Done {
        text,
        result,
        stats: None,
        code: if agree { 0 } else { 1 },
    }
}

fn cmd_verify(ctx: &mut Ctx, v: &VerifyCmd) -> Result<Done, AppError> {
    match v {
        VerifyCmd::Nae(a) => {
            let phi = Nae3SatInstance::parse(&ctx.read(&a.input)?)?;
            let r = verify_nae_reduction_report(&phi)?;
            let text = format!(
                "satisfiable {}\nextremal-orientation {}\nagree {}\n",
                r.satisfiable,
                r.extremal_orientation
                    .map_or("none".to_string(), |m| m.to_string()),
                r.agree
            );
            Ok(verdict(
                text,
                serde_json::to_value(&r).expect("serializable"),
                r.agree,
            ))
        }
        VerifyCmd::Vc { input, k } => {
            let g = io::parse_undirected(&ctx.read(&input.input)?)?;
            let inst = VertexCoverInstance::new(g, *k)?;
            let r = verify_vc_reduction_report(&inst, &ctx.solver())?;
            let text = format!(
                "cover {}\nmag {}\ntarget {}\nagree {}\n",
                r.cover
                    .as_ref()
                    .map_or("none".to_string(), |c| format!("{{{}}}", join(c))),
                r.mag,
                r.target,
                r.agree
            );
            Ok(verdict(
                text,
                serde_json::to_value(&r).expect("serializable"),
                r.agree,
            ))
        }
        VerifyCmd::Family(a) => verify_family(ctx, a),
        VerifyCmd::Thm32(a) => {
            let g = io::parse_directed(&ctx.read(&a.input)?)?;
            let check = is_extremal(&g)?;
            let size = mag(&g, &ctx.solver())?;
            let agree = check.extremal == (size == g.n());
            let text = format!(
                "extremal {}\nmag {}\nn {}\nagree {}\n",
                check.extremal,
                size,
                g.n(),
                agree
            );
            Ok(verdict(
                text,
                json!({ "extremal": check.extremal, "mag": size, "n": g.n(), "agree": agree }),
                agree,
            ))
        }
    }
}

fn verify_family(ctx: &mut Ctx, a: &FamilyArgs) -> Result<Done, AppError> {
    let cfg = ctx.solver();
    let (spec, _) = family_spec(ctx, a)?;
    if spec.kind == FamilyKind::Gj {
        let g = families::construction_gj(spec.j)?;
        let s = spectrum(
            &g,
            &SpectrumOptions {
                solver: cfg,
                ..SpectrumOptions::default()
            },
        )?;
        let meg = min_meg_set(&g, &cfg)?;
        let agree = s.mag_minus == spec.j + 3 && meg.size == spec.j + 2;
        let text = format!(
            "mag- {} (expected {})\nmeg {} (expected {})\nagree {}\n",
            s.mag_minus,
            spec.j + 3,
            meg.size,
            spec.j + 2,
            agree
        );
        return Ok(verdict(
            text,
            json!({ "mag_minus": s.mag_minus, "meg": meg.size, "agree": agree }),
            agree,
        ));
    }
    let g: OrientedGraph = spec.build()?;
    let size = mag(&g, &cfg)?;
    let (expected, agree) = match spec.closed_form_mag() {
        Some(e) => (json!(e), size == e),
        None => {
            // girth-alternating: only a lower bound is known
            let girth = spec
                .base
                .as_ref()
                .and_then(|b| b.find_shortest_cycle())
                .map_or(0, |c| c.len());
            let bound = if girth % 2 == 1 { girth - 1 } else { girth };
            (json!({ "at_least": bound }), size >= bound)
        }
    };
    let text = format!("mag {size}\nexpected {expected}\nagree {agree}\n");
    Ok(verdict(
        text,
        json!({ "mag": size, "expected": expected, "agree": agree }),
        agree,
    ))
}
