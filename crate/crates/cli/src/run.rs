//! Command execution and output framing.

use std::error::Error;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use hyperrank::combinat::{cascade_decompose, kk_lower_shadow_bound, kk_upper_shadow_min, star_shadow_size};
use hyperrank::experiments::{
    curve_csv, graph_census, kk_oracle, resilience_trial, rex_oracle, threshold_grid, threshold_sweep,
    verify_construction, verify_gottlieb, verify_hamilton, verify_r, ExperimentReport, SweepPoint, Verdict,
};
use hyperrank::hypergraph::{
    complete, hamilton_frame, random_hypergraph, read_text, shadow, star_configuration, star_deleted_graph,
    tightness_graph, write_text, ShadowDirection,
};
use hyperrank::rankcore::nullspace_certified;
use hyperrank::{rank, Hypergraph, InclusionMatrix, RankMode};

use crate::{Cli, Command, Construct, Direction, Format, Formula, Mode, Verify};

type Res<T> = std::result::Result<T, Box<dyn Error>>;

const TOOL: &str = concat!("hyperrank-cli ", env!("CARGO_PKG_VERSION"));

#[derive(Serialize)]
struct RunConfig<'a> {
    command: String,
    parameters: Value,
    seed: u64,
    output: Option<&'a Path>,
    format: Format,
    threads: usize,
}

struct Ctx<'a> {
    cli: &'a Cli,
    format: Format,
}

impl Ctx<'_> {
    fn config(&self) -> RunConfig<'_> {
        let (command, parameters) =
            split_command(serde_json::to_value(&self.cli.command).expect("arguments serialize"));
        RunConfig {
            command,
            parameters,
            seed: self.cli.seed,
            output: self.cli.output.as_deref(),
            format: self.format,
            threads: self.cli.threads.unwrap_or_else(rayon::current_num_threads),
        }
    }

    fn config_line(&self) -> String {
        serde_json::to_string(&self.config()).expect("config serializes")
    }

    /// `# config:` and `# tool:` lines for the text formats.
    fn hash_header(&self) -> String {
        format!("# config: {}\n# tool: {TOOL}\n", self.config_line())
    }

    fn emit(&self, text: &str) -> Res<()> {
        match &self.cli.output {
            Some(path) => {
                fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?
            }
            None => print!("{text}"),
        }
        Ok(())
    }

    fn emit_json(&self, result: impl Serialize) -> Res<()> {
        let doc = json!({ "config": self.config(), "tool": TOOL, "result": result });
        self.emit(&(serde_json::to_string_pretty(&doc)? + "\n"))
    }

    fn emit_graph(&self, g: &Hypergraph) -> Res<()> {
        match self.format {
            Format::Json => self.emit_json(g),
            _ => self.emit(&(self.hash_header() + &write_text(g))),
        }
    }

    fn emit_report(&self, rep: &ExperimentReport) -> Res<u8> {
        self.emit_json(rep)?;
        Ok(if rep.verdict == Verdict::Fail { 1 } else { 0 })
    }
}

/// `{"verify": {"gottlieb": {...}}}` becomes `("verify gottlieb", {...})`.
fn split_command(mut v: Value) -> (String, Value) {
    let mut names = Vec::new();
    loop {
        match v {
            Value::Object(ref mut map) if map.len() == 1 && map.values().all(Value::is_object) => {
                let (k, inner) = map.iter_mut().next().unwrap();
                names.push(k.clone());
                v = inner.take();
            }
            Value::String(s) => {
                names.push(s);
                return (names.join(" "), json!({}));
            }
            _ => return (names.join(" "), v),
        }
    }
}

fn allowed(cli: &Cli, default: Format, accepted: &[Format]) -> Res<Format> {
    let f = cli.format.unwrap_or(default);
    if accepted.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<Value> = accepted
            .iter()
            .map(|a| serde_json::to_value(a).unwrap())
            .collect();
        Err(format!(
            "--format {} is not available here (accepted: {})",
            serde_json::to_value(f)?,
            json!(names)
        )
        .into())
    }
}

fn read_input(path: &Option<PathBuf>) -> Res<String> {
    match path.as_deref() {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| format!("cannot read --input {}: {e}", p.display()).into())
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_graph(path: &Option<PathBuf>) -> Res<Hypergraph> {
    Ok(read_text(&read_input(path)?).map_err(|e| format!("--input: {e}"))?)
}

/// MatrixMarket input carries its own `s`; hypergraph text needs `--s`.
fn read_matrix(path: &Option<PathBuf>, s: Option<usize>) -> Res<InclusionMatrix> {
    let text = read_input(path)?;
    if text.trim_start().starts_with("%%MatrixMarket") {
        let m = InclusionMatrix::from_matrix_market(&text).map_err(|e| format!("--input: {e}"))?;
        if let Some(s) = s.filter(|&s| s != m.s()) {
            return Err(format!("--s {s} disagrees with the matrix (s = {})", m.s()).into());
        }
        Ok(m)
    } else {
        let g = read_text(&text).map_err(|e| format!("--input: {e}"))?;
        let s = s.ok_or("--s is required for hypergraph input")?;
        Ok(InclusionMatrix::build(&g, s)?)
    }
}

fn big(key: &str, text: &str) -> Res<BigUint> {
    text.parse()
        .map_err(|_| format!("--{key} expects a non-negative integer, got {text:?}").into())
}

pub fn dispatch(cli: &Cli) -> Res<u8> {
    use Format::*;
    let json_only = |cli: &Cli| allowed(cli, Json, &[Json]);
    match &cli.command {
        Command::Construct(c) => {
            let ctx = Ctx {
                cli,
                format: allowed(cli, HypergraphText, &[HypergraphText, Json])?,
            };
            let g = match c {
                Construct::Complete(a) => complete(a.n, a.r)?,
                Construct::Star(a) => Hypergraph::new(a.n, a.s, star_configuration(a.n, a.t, a.s)?)?,
                Construct::Gts(a) => star_deleted_graph(a.n, a.t, a.r, a.s)?,
                Construct::R(a) => tightness_graph(a.n, a.r, a.s)?,
                Construct::Hamilton(a) => hamilton_frame(a.n, a.r)?.graph(a.n, a.r),
                Construct::Random(a) => random_hypergraph(a.n, a.r, a.p, cli.seed)?,
            };
            ctx.emit_graph(&g)?;
        }
        Command::Matrix(a) => {
            let ctx = Ctx {
                cli,
                format: allowed(cli, Matrixmarket, &[Matrixmarket])?,
            };
            let m = InclusionMatrix::build(&read_graph(&a.input)?, a.s)?;
            let comments = [format!("config: {}", ctx.config_line()), format!("tool: {TOOL}")];
            ctx.emit(&m.to_matrix_market(&comments))?;
        }
        Command::Rank(a) => {
            let ctx = Ctx {
                cli,
                format: json_only(cli)?,
            };
            let mode = match a.mode {
                Mode::Exact => RankMode::Exact,
                Mode::Modular => RankMode::Modular(a.p.ok_or("--p is required with --mode modular")?),
                Mode::Certified => RankMode::Certified { seed: cli.seed },
            };
            let m = read_matrix(&a.input, a.s)?;
            ctx.emit_json(rank(&m, mode)?)?;
        }
        Command::Nullspace(a) => {
            let ctx = Ctx {
                cli,
                format: json_only(cli)?,
            };
            let m = read_matrix(&a.input, a.s)?;
            let basis: Vec<Value> = nullspace_certified(&m, cli.seed)
                .iter()
                .map(|alpha| json!({ "alpha": alpha.to_strings(), "associated_graph": alpha.support().edges() }))
                .collect();
            ctx.emit_json(json!({ "n": m.n(), "s": m.s(), "dimension": basis.len(), "basis": basis }))?;
        }
        Command::Shadow(a) => {
            let ctx = Ctx {
                cli,
                format: allowed(cli, HypergraphText, &[HypergraphText, Json])?,
            };
            let g = read_graph(&a.input)?;
            let (dir, k) = match a.direction {
                Direction::Lower => (
                    ShadowDirection::Lower,
                    g.r().checked_sub(a.p).ok_or("--p exceeds the edge size")?,
                ),
                Direction::Upper => (ShadowDirection::Upper, g.r() + a.p),
            };
            let family = shadow(g.edges(), a.p, dir, g.n())?;
            ctx.emit_graph(&Hypergraph::new(g.n(), k, family)?)?;
        }
        Command::Cascade(a) => {
            let ctx = Ctx {
                cli,
                format: json_only(cli)?,
            };
            ctx.emit_json(cascade_decompose(&big("m", &a.m)?, a.k)?)?;
        }
        Command::Formula(f) => {
            let ctx = Ctx {
                cli,
                format: json_only(cli)?,
            };
            let value = match f {
                Formula::N(a) => star_shadow_size(a.n, a.t, a.r, a.s)?,
                Formula::K(a) => kk_upper_shadow_min(a.n, &big("m", &a.m)?, a.k, a.p)?,
                Formula::KkBound(a) => kk_lower_shadow_bound(&big("m", &a.m)?, a.k, a.p)?,
            };
            ctx.emit_json(value.to_string())?;
        }
        Command::Verify(v) => {
            let ctx = Ctx {
                cli,
                format: json_only(cli)?,
            };
            let rep = match v {
                Verify::Gottlieb(a) => verify_gottlieb(a.n_max)?,
                Verify::Construction(a) => verify_construction(a.n, a.t, a.r, a.s)?,
                Verify::R(a) => verify_r(a.n, a.r, a.s)?,
                Verify::Hamilton(a) => verify_hamilton(a.n, a.r)?,
                Verify::Census(a) => graph_census(a.n)?,
                Verify::Kk(a) => kk_oracle(a.n, a.k, a.p)?,
            };
            return ctx.emit_report(&rep);
        }
        Command::Rex(a) => {
            let ctx = Ctx {
                cli,
                format: json_only(cli)?,
            };
            return ctx.emit_report(&rex_oracle(a.n, a.t, a.r, a.s, a.f_cap, a.budget)?);
        }
        Command::Sweep(a) => {
            let ctx = Ctx {
                cli,
                format: allowed(cli, Json, &[Json, Csv])?,
            };
            let grid = a.p_grid.clone().unwrap_or_else(|| threshold_grid(a.n, a.r, a.s));
            let rep = threshold_sweep(a.n, a.r, a.s, &grid, a.trials, cli.seed)?;
            if ctx.format == Csv {
                let curve: Vec<SweepPoint> =
                    serde_json::from_value(rep.stat("curve").cloned().unwrap_or_default())?;
                ctx.emit(&(ctx.hash_header() + &curve_csv(&curve)))?;
                return Ok(if rep.verdict == Verdict::Fail { 1 } else { 0 });
            }
            return ctx.emit_report(&rep);
        }
        Command::Resilience(a) => {
            let ctx = Ctx {
                cli,
                format: json_only(cli)?,
            };
            let rep = resilience_trial(a.n, a.r, a.s, a.family_size, a.degree_cap, a.trials, cli.seed)?;
            return ctx.emit_report(&rep);
        }
    }
    Ok(0)
}
