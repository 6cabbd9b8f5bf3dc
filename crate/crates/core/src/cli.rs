//! Command-line front end. [`run_with`] takes the argument list and output
//! streams so it can be driven from tests; the `polypack` binary is a thin
//! wrapper around it.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, CommandFactory, Parser, Subcommand};
use num_rational::Rational64;
use rayon::prelude::*;
use serde_json::json;

use crate::exact::parse_ratio;
use crate::generators::{generate, Family, GenConfig};
use crate::model::{
    read_instance, read_solution, write_instance, write_solution, Instance, ModelError,
    ValidationError,
};
use crate::render::{render, Palette, RenderError, RenderSpec};
use crate::scoring::{build_leaderboard, read_records};
use crate::selection::{compute_metrics, features_csv, select_diverse, SelectionConfig};
use crate::solver::{solve, ItemOrder, PlacementMode, SolverConfig};
use crate::valuation::{assign_values, ValueKind};
use crate::verifier::{verify, VerifyReport, ViolationKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "polypack",
    version,
    about = "Generate, solve, verify and score polygon packing instances"
)]
pub struct Cli {
    /// Random seed (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for multi-instance commands; 1 gives a fully sequential run.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Only print warnings and errors on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Output file (or directory for `generate --count`); stdout when absent.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate instances of one family.
    Generate(GenerateArgs),
    /// Replace the item values of an instance.
    Value(ValueArgs),
    /// Pack an instance and write the solution.
    Solve(SolveArgs),
    /// Check a solution; exit status 1 when it is invalid.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Rank teams from submission records.
    Score {
        /// Directory of instance files.
        #[arg(long)]
        instances: PathBuf,
        /// CSV with columns team,instance,value,timestamp.
        #[arg(long)]
        records: PathBuf,
    },
    /// Pick a diverse subset of candidate instances.
    Select {
        /// Directory of candidate instance files.
        #[arg(long)]
        candidates: PathBuf,
        #[arg(long)]
        k: usize,
        /// Write the feature matrix as CSV.
        #[arg(long)]
        features: Option<PathBuf>,
        /// PCA components to keep; default keeps 95% of the variance.
        #[arg(long)]
        components: Option<usize>,
    },
    /// Draw an instance and optionally a solution as SVG.
    Render(RenderArgs),
    /// Print the man page.
    Man,
}

#[derive(Debug, Args)]
struct ValueFlags {
    /// area, convex_hull_area, rotated_bounding_box or uniform.
    #[arg(long)]
    value_function: Option<ValueKind>,
    /// Noise amplitude, e.g. 0.1 or 1/10.
    #[arg(long, value_parser = ratio)]
    value_noise: Option<Rational64>,
    #[arg(long, value_parser = ratio)]
    value_scale: Option<Rational64>,
    /// Leave the value function out of the instance metadata.
    #[arg(long)]
    hide_value_function: bool,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    family: Family,
    /// Item count target.
    #[arg(long)]
    n: Option<usize>,
    /// File of `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of instances, with seeds seed, seed+1, ...; needs --out as a directory.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    width: Option<i64>,
    #[arg(long)]
    height: Option<i64>,
    /// Area multiple t in [1, 2] for the polyomino families.
    #[arg(long, value_parser = ratio)]
    area_multiple: Option<Rational64>,
    #[arg(long, value_parser = ratio)]
    shear_probability: Option<Rational64>,
    #[arg(long, value_parser = ratio)]
    convexity_ratio: Option<Rational64>,
    #[arg(long)]
    lines: Option<usize>,
    #[arg(long)]
    copies: Option<usize>,
    /// Keep jigsaw pieces an exact tiling of the container.
    #[arg(long)]
    no_perturb: bool,
    #[command(flatten)]
    values: ValueFlags,
}

#[derive(Debug, Args)]
struct ValueArgs {
    instance: PathBuf,
    #[command(flatten)]
    values: ValueFlags,
}

#[derive(Debug, Args)]
struct SolveArgs {
    instance: PathBuf,
    /// Time budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    budget: f64,
    /// value_density, value_desc or area_desc.
    #[arg(long, value_parser = order)]
    ordering: Option<ItemOrder>,
    #[arg(long)]
    grid_levels: Option<usize>,
    /// Cap on local search iterations; makes runs independent of machine speed.
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Use shelf packing over bounding boxes instead of the grid scan.
    #[arg(long)]
    shelf: bool,
}

#[derive(Debug, Args)]
struct RenderArgs {
    instance: PathBuf,
    solution: Option<PathBuf>,
    /// pastel or mono.
    #[arg(long, default_value = "pastel")]
    palette: Palette,
    /// Pixels per coordinate unit.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Draw unplaced items beside the container.
    #[arg(long)]
    tray: bool,
    /// Draw the solution even if it is invalid.
    #[arg(long)]
    force: bool,
}

fn ratio(s: &str) -> Result<Rational64, String> {
    parse_ratio(s).ok_or_else(|| format!("not a number or fraction: {s:?}"))
}

fn order(s: &str) -> Result<ItemOrder, String> {
    match s {
        "value_density" => Ok(ItemOrder::ValueDensity),
        "value_desc" => Ok(ItemOrder::ValueDesc),
        "area_desc" => Ok(ItemOrder::AreaDesc),
        _ => Err(format!("unknown ordering {s:?}")),
    }
}

/// Failure of a subcommand, carrying its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

fn internal(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        message: message.to_string(),
    }
}

type Outcome = Result<i32, Failure>;

struct Ctx<'a> {
    seed: u64,
    pool: Option<rayon::ThreadPool>,
    out: Option<PathBuf>,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Ctx<'_> {
    /// Runs `f` on the `--jobs` pool, or the global one.
    fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    /// Writes to `--out` if given, else to stdout.
    fn emit(&mut self, bytes: &[u8]) -> Result<(), Failure> {
        match &self.out {
            Some(path) => {
                fs::write(path, bytes).map_err(|e| internal(format!("{}: {e}", path.display())))
            }
            None => {
                self.stdout.write_all(bytes).map_err(internal)?;
                if !bytes.ends_with(b"\n") {
                    self.stdout.write_all(b"\n").map_err(internal)?;
                }
                Ok(())
            }
        }
    }

    fn print_json(&mut self, value: &serde_json::Value) -> Result<(), Failure> {
        writeln!(self.stdout, "{value}").map_err(internal)
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    read_instance(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// All instance files (`*.json`) in a directory, sorted by file name.
fn load_dir(ctx: &Ctx, dir: &Path) -> Result<Vec<Instance>, Failure> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| usage(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    ctx.install(|| paths.par_iter().map(|p| load_instance(p)).collect())
}

fn apply_value_flags(spec: &mut crate::valuation::ValueSpec, flags: &ValueFlags) {
    if let Some(kind) = flags.value_function {
        spec.kind = kind;
    }
    if let Some(noise) = flags.value_noise {
        spec.noise = noise;
    }
    if let Some(scale) = flags.value_scale {
        spec.global_scale = scale;
    }
    if flags.hide_value_function {
        spec.record_in_meta = false;
    }
}

fn cmd_generate(ctx: &mut Ctx, args: &GenerateArgs, seed_given: bool) -> Outcome {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = String::from_utf8(read_file(path)?)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            GenConfig::from_config_str(&text).map_err(usage)?
        }
        None => GenConfig::default(),
    };
    if seed_given || args.config.is_none() {
        cfg.seed = ctx.seed;
    }
    if let Some(n) = args.n {
        cfg.n_target = n;
    }
    match (args.width, args.height) {
        (Some(w), Some(h)) => (cfg.container_width, cfg.container_height) = (w, h),
        (None, None) => {}
        _ => return Err(usage("--width and --height must be given together")),
    }
    if let Some(t) = args.area_multiple {
        cfg.area_multiple_t = t;
    }
    if let Some(p) = args.shear_probability {
        cfg.shear_probability = p;
    }
    if let Some(p) = args.convexity_ratio {
        cfg.convexity_ratio = p;
    }
    if let Some(l) = args.lines {
        cfg.jigsaw_line_count = l;
    }
    if let Some(c) = args.copies {
        cfg.jigsaw_copies = c;
    }
    if args.no_perturb {
        cfg.jigsaw_perturb = false;
    }
    apply_value_flags(&mut cfg.value_spec, &args.values);
    cfg.validate().map_err(usage)?;

    if args.count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    if args.count == 1 {
        let inst = generate(args.family, &cfg).map_err(internal)?;
        ctx.emit(&write_instance(&inst))?;
        if ctx.out.is_some() {
            ctx.print_json(&json!({"name": inst.name(), "items": inst.len(), "total_value": inst.total_value()}))?;
        }
        return Ok(EXIT_OK);
    }
    let dir = ctx
        .out
        .clone()
        .ok_or_else(|| usage("--count needs --out <directory>"))?;
    fs::create_dir_all(&dir).map_err(|e| internal(format!("{}: {e}", dir.display())))?;
    let written: Result<Vec<String>, Failure> = ctx.install(|| {
        (0..args.count as u64)
            .into_par_iter()
            .map(|k| {
                let mut c = cfg.clone();
                c.seed = cfg.seed.wrapping_add(k);
                    if let Some(name) = &cfg.name {
                    c.name = Some(format!("{name}_{k}"));
                }
                let inst = generate(args.family, &c).map_err(internal)?;
                let path = dir.join(format!("{}.json", inst.name()));
                fs::write(&path, write_instance(&inst))
                    .map_err(|e| internal(format!("{}: {e}", path.display())))?;
                Ok(inst.name().to_string())
            })
            .collect()
    });
    ctx.print_json(&json!({ "generated": written? }))?;
    Ok(EXIT_OK)
}

fn cmd_value(ctx: &mut Ctx, args: &ValueArgs) -> Outcome {
    let inst = load_instance(&args.instance)?;
    let mut spec = crate::valuation::ValueSpec::new(ValueKind::Area);
    spec.seed = ctx.seed;
    apply_value_flags(&mut spec, &args.values);
    let valued = assign_values(&inst, &spec).map_err(usage)?;
    ctx.emit(&write_instance(&valued))?;
    Ok(EXIT_OK)
}

fn cmd_solve(ctx: &mut Ctx, args: &SolveArgs) -> Outcome {
    let inst = load_instance(&args.instance)?;
    if !args.budget.is_finite() || args.budget < 0.0 {
        return Err(usage("--budget must be a non-negative number of seconds"));
    }
    let mut cfg = SolverConfig {
        seed: ctx.seed,
        time_budget: Duration::from_secs_f64(args.budget),
        max_iterations: args.max_iterations,
        ..SolverConfig::default()
    };
    if let Some(o) = args.ordering {
        cfg.ordering = o;
    }
    if let Some(g) = args.grid_levels {
        cfg.grid_levels = g.max(1);
    }
    if args.shelf {
        cfg.mode = PlacementMode::Shelf;
    }
    let sol = solve(&inst, &cfg);
    let value = sol.packed_value(&inst);
    let _ = writeln!(
        ctx.stderr,
        "packed {} of {} items, value {value}",
        sol.placements.len(),
        inst.len()
    );
    ctx.emit(&write_solution(&sol))?;
    if ctx.out.is_some() {
        ctx.print_json(
            &json!({"instance": inst.name(), "items": sol.placements.len(), "value": value}),
        )?;
    }
    Ok(EXIT_OK)
}

fn report_exit(ctx: &mut Ctx, report: &VerifyReport) -> Outcome {
    writeln!(ctx.stdout, "{}", report.to_json()).map_err(internal)?;
    Ok(if report.valid { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_verify(ctx: &mut Ctx, instance: &Path, solution: &Path) -> Outcome {
    let inst = load_instance(instance)?;
    let sol = match read_solution(&read_file(solution)?) {
        Ok(sol) => sol,
        Err(ModelError::Validation(ValidationError::DuplicateItem(i))) => {
            return report_exit(
                ctx,
                &VerifyReport::invalid(ViolationKind::DuplicateItem, vec![i]),
            );
        }
        Err(e) => return Err(usage(format!("{}: {e}", solution.display()))),
    };
    match verify(&inst, &sol) {
        Ok(report) => report_exit(ctx, &report),
        Err(e) => {
            ctx.print_json(&json!({"valid": false, "error": e.to_string()}))?;
            Ok(EXIT_INVALID)
        }
    }
}

fn cmd_score(ctx: &mut Ctx, instances: &Path, records: &Path) -> Outcome {
    let insts = load_dir(ctx, instances)?;
    let file = fs::File::open(records).map_err(|e| usage(format!("{}: {e}", records.display())))?;
    let recs = read_records(file).map_err(usage)?;
    for r in &recs {
        if let Some(inst) = insts.iter().find(|i| i.name() == r.instance) {
            if r.value > inst.total_value() {
                return Err(usage(format!(
                    "record of {} on {} claims {}, more than the instance's total value",
                    r.team, r.instance, r.value
                )));
            }
        }
    }
    let names: Vec<String> = insts.iter().map(|i| i.name().to_string()).collect();
    let board = build_leaderboard(&recs, &names).map_err(usage)?;
    ctx.print_json(&board.to_json())?;
    let _ = write!(ctx.stderr, "{}", board.render_table());
    Ok(EXIT_OK)
}

fn cmd_select(
    ctx: &mut Ctx,
    dir: &Path,
    k: usize,
    features: Option<&Path>,
    components: Option<usize>,
) -> Outcome {
    let insts = load_dir(ctx, dir)?;
    let mut cfg = SelectionConfig::new(k, ctx.seed);
    cfg.pca_components = components;
    let sel = select_diverse(&insts, &cfg).map_err(usage)?;
    if let Some(path) = features {
        let rows: Vec<_> = ctx.install(|| insts.par_iter().map(compute_metrics).collect());
        fs::write(path, features_csv(&rows))
            .map_err(|e| internal(format!("{}: {e}", path.display())))?;
    }
    let body = json!({
        "selected": sel.picked,
        "components": sel.components,
        "explained_variance": sel.explained_variance,
        "dropped_features": sel.dropped,
    });
    ctx.emit(format!("{body}\n").as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_render(ctx: &mut Ctx, args: &RenderArgs) -> Outcome {
    let inst = load_instance(&args.instance)?;
    let sol = match &args.solution {
        Some(p) => Some(
            read_solution(&read_file(p)?).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        ),
        None => None,
    };
    if !(args.scale.is_finite() && args.scale > 0.0) {
        return Err(usage("--scale must be positive"));
    }
    let spec = RenderSpec {
        palette: args.palette,
        scale: args.scale,
        show_unplaced: args.tray,
        force: args.force,
    };
    match render(&inst, sol.as_ref(), &spec) {
        Ok(svg) => {
            ctx.emit(svg.as_bytes())?;
            Ok(EXIT_OK)
        }
        Err(e @ RenderError::RenderOfInvalidSolution(_))
        | Err(e @ RenderError::InstanceMismatch(_)) => Err(Failure {
            code: EXIT_INVALID,
            message: e.to_string(),
        }),
    }
}

fn cmd_man(ctx: &mut Ctx) -> Outcome {
    let mut page = Vec::new();
    clap_mangen::Man::new(Cli::command())
        .render(&mut page)
        .map_err(internal)?;
    ctx.emit(&page)?;
    Ok(EXIT_OK)
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Outcome {
    match &cli.command {
        Command::Generate(a) => cmd_generate(ctx, a, cli.seed.is_some()),
        Command::Value(a) => cmd_value(ctx, a),
        Command::Solve(a) => cmd_solve(ctx, a),
        Command::Verify { instance, solution } => cmd_verify(ctx, instance, solution),
        Command::Score { instances, records } => cmd_score(ctx, instances, records),
        Command::Select {
            candidates,
            k,
            features,
            components,
        } => cmd_select(ctx, candidates, *k, features.as_deref(), *components),
        Command::Render(a) => cmd_render(ctx, a),
        Command::Man => cmd_man(ctx),
    }
}

/// Runs one command line and returns the process exit status.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    if cli.quiet {
        log::set_max_level(log::LevelFilter::Warn);
    }
    let pool = match cli.jobs {
        Some(0) => {
            let _ = writeln!(stderr, "error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => Some(pool),
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INTERNAL;
            }
        },
        None => None,
    };
    let mut ctx = Ctx {
        seed: cli.seed.unwrap_or(0),
        pool,
        out: cli.out.clone(),
        stdout,
        stderr,
    };
    let outcome = dispatch(&cli, &mut ctx);
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(ctx.stderr, "error: {}", f.message);
            f.code
        }
    }
}
