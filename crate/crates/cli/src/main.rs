use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use vhj_core::acceptance::{random_ordered_pairs, run_all, AcceptanceOptions};
use vhj_core::analysis::{beta_exponent, comparison_harness, holder_seminorm_of, slope_of};
use vhj_core::barriers::{
    auto_constants, eval_w1, local_barrier_constants, verify_ubar, verify_wr, DomainNorms, Smoother,
};
use vhj_core::config::{DomainConfig, RunConfig};
use vhj_core::domain::Grid;
use vhj_core::ergodic::{barrier_m2, ergodic_solve, ErgodicOptions};
use vhj_core::exec;
use vhj_core::parabolic::{
    default_detachment_tol, detect_boundary_loss, solve_parabolic, ParabolicProblem, Trajectory,
};
use vhj_core::stationary::{
    default_tol, solve_state_constraint_with, solve_stationary_with, BoundaryCondition, StateConstraintOptions,
    StationaryOptions, StationaryProblem,
};
use vhj_core::supconv::{
    check_initial_layer, check_maximizer_window, check_time_lipschitz, sup_convolve, TimeSeriesField,
};

/// Exit code for configuration and input errors.
const EXIT_CONFIG: u8 = 2;
/// Exit code for solver failures.
const EXIT_SOLVER: u8 = 3;
/// Exit code when an acceptance criterion fails.
const EXIT_ACCEPTANCE: u8 = 4;

#[derive(Parser)]
#[command(name = "vhj-lab", version, about = "Viscous Hamilton-Jacobi solvers and diagnostics")]
struct Cli {
    /// Config file, or the name of a built-in preset.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Overrides the seed of the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the output directory of the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time-march the generalized Dirichlet problem up to the horizon.
    SolveParabolic,
    /// Solve the discounted stationary problem (Dirichlet or state constraint).
    SolveStationary,
    /// Estimate the ergodic constant along the discount sequence.
    Ergodic,
    /// Compute and check the barrier constants for the configured domain.
    VerifyBarrier,
    /// Sup-convolution in time of a trajectory.
    Supconv {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Hölder seminorm of a field.
    Holder {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// Large-time slope of a trajectory.
    Slope {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        window_fraction: Option<f64>,
    },
    /// Discrete comparison on random ordered pairs.
    Compare {
        #[arg(long)]
        pairs: Option<usize>,
    },
    /// Run the acceptance criteria.
    Acceptance,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::SolveParabolic => "solve-parabolic",
            Command::SolveStationary => "solve-stationary",
            Command::Ergodic => "ergodic",
            Command::VerifyBarrier => "verify-barrier",
            Command::Supconv { .. } => "supconv",
            Command::Holder { .. } => "holder",
            Command::Slope { .. } => "slope",
            Command::Compare { .. } => "compare",
            Command::Acceptance => "acceptance",
        }
    }
}

#[derive(Debug)]
struct AcceptanceFailed(Vec<u8>);

impl std::fmt::Display for AcceptanceFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "acceptance criteria failed: {:?}", self.0)
    }
}

impl std::error::Error for AcceptanceFailed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<AcceptanceFailed>().is_some() {
        return EXIT_ACCEPTANCE;
    }
    let core = err.chain().find_map(|e| e.downcast_ref::<vhj_core::Error>());
    match core {
        Some(e) => {
            use vhj_core::Error::*;
            match e {
                Exponents { .. } | Domain(_) | Parameter(_) | Compatibility { .. } | Expression { .. } | Config(_)
                | Io(_) => EXIT_CONFIG,
                _ => EXIT_SOLVER,
            }
        }
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("VHJ_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        exec::set_threads(n);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// Files written by one command, all named `<prefix>_<command>.<ext>`.
struct Outputs {
    dir: PathBuf,
    stem: String,
    written: Vec<String>,
}

impl Outputs {
    fn new(cfg: &RunConfig, override_dir: Option<PathBuf>, command: &str) -> anyhow::Result<Self> {
        let dir = override_dir.unwrap_or_else(|| PathBuf::from(&cfg.output.dir));
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Outputs { dir, stem: format!("{}_{}", cfg.output.prefix, command.replace('-', "_")), written: Vec::new() })
    }

    fn create(&mut self, suffix: &str) -> anyhow::Result<BufWriter<File>> {
        let name = format!("{}{suffix}", self.stem);
        let path = self.dir.join(&name);
        let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        self.written.push(name);
        Ok(BufWriter::new(file))
    }

    fn dat(&mut self, suffix: &str, header: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> anyhow::Result<()> {
        let mut w = self.create(suffix)?;
        writeln!(w, "# {header}")?;
        for row in rows {
            let cols: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
            writeln!(w, "{}", cols.join(" "))?;
        }
        w.flush()?;
        Ok(())
    }

    fn field_csv(&mut self, suffix: &str, grid: &Grid, values: &[f64]) -> anyhow::Result<()> {
        let mut w = self.create(suffix)?;
        write_field(&mut w, grid.coords(), grid.dimension(), values)?;
        w.flush()?;
        Ok(())
    }

    fn summary(mut self, command: &str, cfg: &RunConfig, result: Value) -> anyhow::Result<PathBuf> {
        let name = format!("{}.json", self.stem);
        self.written.push(name.clone());
        let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let doc = json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "seed": cfg.seed,
            "timestamp": stamp,
            "config": serde_json::to_value(cfg)?,
            "outputs": self.written,
            "result": result,
        });
        let path = self.dir.join(name);
        fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}

fn write_field<W: Write>(w: &mut W, coords: &[[f64; 2]], dimension: usize, values: &[f64]) -> std::io::Result<()> {
    writeln!(w, "{}", if dimension == 1 { "x,u" } else { "x,y,u" })?;
    for (c, u) in coords.iter().zip(values) {
        if dimension == 1 {
            writeln!(w, "{},{u}", c[0])?;
        } else {
            writeln!(w, "{},{},{u}", c[0], c[1])?;
        }
    }
    Ok(())
}

fn coord_row(c: [f64; 2], dimension: usize, rest: &[f64]) -> Vec<f64> {
    let mut row = vec![c[0]];
    if dimension == 2 {
        row.push(c[1]);
    }
    row.extend_from_slice(rest);
    row
}

fn load_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(source) => RunConfig::load(source)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let cfg = load_config(&cli)?;
    let command = cli.command.name();
    let mut out = Outputs::new(&cfg, cli.out.clone(), command)?;
    let result = match &cli.command {
        Command::SolveParabolic => solve_parabolic_cmd(&cfg, &mut out)?,
        Command::SolveStationary => solve_stationary_cmd(&cfg, &mut out)?,
        Command::Ergodic => ergodic_cmd(&cfg, &mut out)?,
        Command::VerifyBarrier => verify_barrier_cmd(&cfg, &mut out)?,
        Command::Supconv { input, alpha } => supconv_cmd(&cfg, &mut out, input.as_deref(), *alpha)?,
        Command::Holder { input, beta } => holder_cmd(&cfg, &mut out, input.as_deref(), *beta)?,
        Command::Slope { input, window_fraction } => slope_cmd(&cfg, &mut out, input.as_deref(), *window_fraction)?,
        Command::Compare { pairs } => compare_cmd(&cfg, &mut out, *pairs)?,
        Command::Acceptance => {
            let (result, failed) = acceptance_cmd(&cfg)?;
            let path = out.summary(command, &cfg, result)?;
            println!("summary: {}", path.display());
            if !failed.is_empty() {
                return Err(AcceptanceFailed(failed).into());
            }
            return Ok(());
        }
    };
    let path = out.summary(command, &cfg, result)?;
    println!("summary: {}", path.display());
    Ok(())
}

fn parabolic_problem(cfg: &RunConfig) -> anyhow::Result<ParabolicProblem> {
    let grid = cfg.grid()?;
    let u0 = cfg.u0()?;
    Ok(ParabolicProblem::with_initial(
        grid,
        cfg.equation.p,
        cfg.equation.q,
        cfg.f()?.to_fn(),
        cfg.g()?.to_fn(),
        move |x| u0.eval(x, 0.0),
        cfg.parabolic.horizon,
    )?)
}

/// Steady source sampled at t = 0.
fn steady_source(cfg: &RunConfig, grid: &Grid) -> anyhow::Result<Vec<f64>> {
    let f = cfg.f()?;
    Ok(grid.coords().iter().map(|&x| f.eval(x, 0.0)).collect())
}

fn solve_parabolic_cmd(cfg: &RunConfig, out: &mut Outputs) -> anyhow::Result<Value> {
    let problem = parabolic_problem(cfg)?;
    let traj = solve_parabolic(&problem, &cfg.control)?;
    {
        let mut w = out.create(".csv")?;
        traj.write_csv(&mut w)?;
        w.flush()?;
    }
    let dim = traj.grid.dimension();
    out.dat(
        "_final.dat",
        if dim == 1 { "x u(x,T)" } else { "x y u(x,T)" },
        traj.grid.coords().iter().zip(traj.final_values()).map(|(&c, &u)| coord_row(c, dim, &[u])),
    )?;
    out.dat("_boundary_gap.dat", "t max over boundary of g - u", boundary_gaps(&traj))?;
    let g_sup = traj.boundary_data.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = default_detachment_tol(g_sup);
    let detachments = detect_boundary_loss(&traj, tol);
    let max_gradient = traj.diagnostics.iter().fold(0.0f64, |m, d| m.max(d.max_gradient));
    Ok(json!({
        "nodes": traj.grid.len(),
        "horizon": problem.horizon,
        "steps": traj.total_steps(),
        "max_gradient": max_gradient,
        "detachment_tol": tol,
        "detachment_count": detachments.len(),
        "first_detachment": detachments.first(),
        "max_detachment_gap": detachments.iter().fold(0.0f64, |m, d| m.max(d.gap)),
        "final_sup": traj.final_values().iter().fold(0.0f64, |m, v| m.max(v.abs())),
        "intervals": traj.diagnostics,
    }))
}

fn boundary_gaps(traj: &Trajectory) -> Vec<Vec<f64>> {
    traj.times
        .iter()
        .zip(&traj.snapshots)
        .zip(&traj.boundary_data)
        .map(|((&t, snap), g)| {
            let gap = traj.boundary_nodes.iter().zip(g).fold(0.0f64, |m, (&b, &gv)| m.max(gv - snap[b]));
            vec![t, gap]
        })
        .collect()
}

fn stationary_options(cfg: &RunConfig) -> StationaryOptions {
    StationaryOptions {
        method: cfg.stationary.method,
        max_iterations: cfg.stationary.max_iterations,
        ..Default::default()
    }
}

fn solve_stationary_cmd(cfg: &RunConfig, out: &mut Outputs) -> anyhow::Result<Value> {
    let grid = cfg.grid()?;
    let (p, q, lambda) = (cfg.equation.p, cfg.equation.q, cfg.equation.lambda);
    let f = steady_source(cfg, &grid)?;
    let tol = cfg.stationary.tol.unwrap_or_else(|| default_tol(&f));
    let result = if cfg.stationary.state_constraint {
        let m2 = match cfg.stationary.m2 {
            Some(m) => m,
            None => barrier_m2(&grid, p, q, &f, lambda)?,
        };
        let opts = StateConstraintOptions { stationary: stationary_options(cfg), ..Default::default() };
        let sc = solve_state_constraint_with(grid.clone(), p, q, lambda, &f, m2, &cfg.control, tol, &opts)?;
        out.field_csv(".csv", &grid, sc.solution.field.values())?;
        json!({
            "boundary": "state-constraint",
            "m2": m2,
            "r": sc.r_value,
            "boundary_margin": sc.boundary_margin,
            "discrepancy": sc.discrepancy,
            "iterations": sc.solution.iterations,
            "residual": sc.solution.residual,
            "method": sc.solution.method,
            "tol": tol,
        })
    } else {
        let g = cfg.g()?;
        let gd: Vec<f64> = grid.coords().iter().map(|&x| g.eval(x, 0.0)).collect();
        let problem =
            StationaryProblem { grid: grid.clone(), p, q, lambda, f, boundary: BoundaryCondition::Dirichlet(gd.clone()) };
        let s = solve_stationary_with(&problem, &cfg.control, tol, &stationary_options(cfg))?;
        out.field_csv(".csv", &grid, s.field.values())?;
        let u = s.field.values();
        let detached = grid.boundary_nodes().iter().filter(|&&b| gd[b] - u[b] > 10.0 * tol).count();
        json!({
            "boundary": "dirichlet",
            "iterations": s.iterations,
            "residual": s.residual,
            "method": s.method,
            "tol": tol,
            "detached_boundary_nodes": detached,
        })
    };
    Ok(result)
}

fn ergodic_cmd(cfg: &RunConfig, out: &mut Outputs) -> anyhow::Result<Value> {
    let grid = cfg.grid()?;
    let f = steady_source(cfg, &grid)?;
    let e = &cfg.ergodic;
    let mut opts = ErgodicOptions { lambdas: e.lambdas.clone(), reference: e.reference, m2: e.m2, ..Default::default() };
    opts.state.cross_check = e.cross_check;
    opts.state.stationary = stationary_options(cfg);
    opts.tol = cfg.stationary.tol;
    let r = ergodic_solve(grid.clone(), cfg.equation.p, cfg.equation.q, &f, &cfg.control, &opts)?;
    out.field_csv(".csv", &grid, &r.profile)?;
    out.dat("_c.dat", "lambda c_lambda", r.c_sequence().into_iter().map(|(l, c)| vec![l, c]))?;
    Ok(json!({
        "c": r.c,
        "converged": r.converged,
        "reference": r.reference,
        "reference_point": grid.coord(r.reference),
        "m2": r.m2,
        "band": r.band,
        "band_violations": r.band_violations,
        "estimates": r.estimates,
    }))
}

fn verify_barrier_cmd(cfg: &RunConfig, out: &mut Outputs) -> anyhow::Result<Value> {
    let grid = cfg.grid()?;
    let (p, q, lambda) = (cfg.equation.p, cfg.equation.q, cfg.equation.lambda);
    let b = &cfg.barrier;
    let f = steady_source(cfg, &grid)?;
    let (c1, c2, h2) = local_barrier_constants(p, q, b.target_c, grid.dimension(), b.sample_count)?;
    let norms = DomainNorms::from_grid(&grid, p, q, &f)?;
    let params = auto_constants(p, q, &norms, lambda, b.target_c, b.sample_count)?;
    let ubar = verify_ubar(&grid, p, q, lambda, &f, &params)?;
    let scales = b
        .scales
        .iter()
        .map(|&r| verify_wr(r, &params, b.target_c, b.sample_count))
        .collect::<vhj_core::Result<Vec<_>>>()?;
    let smoother = Smoother;
    let radial = (1..=200)
        .map(|k| {
            let r = k as f64 / 200.0;
            let mut x = vec![0.0; params.dimension];
            x[0] = r;
            eval_w1(&x, &params, &smoother).map(|e| vec![r, e.value, e.radial_slope, e.radial_curvature])
        })
        .collect::<vhj_core::Result<Vec<_>>>()?;
    out.dat("_w1.dat", "r w1 w1' w1''", radial)?;
    let beta = params.beta;
    Ok(json!({
        "beta": beta,
        "beta_identity_error": ((beta - 1.0) * (q - p + 2.0) - (beta - 2.0)).abs(),
        "c1": c1,
        "c2": c2,
        "h2": h2,
        "params": params,
        "norms": norms,
        "ubar": ubar,
        "scales": scales,
    }))
}

/// A trajectory CSV (`t,x[,y],u`) from `input`, or a fresh parabolic run.
fn series_input(cfg: &RunConfig, input: Option<&Path>) -> anyhow::Result<(TimeSeriesField, Value)> {
    match input_path(cfg, input) {
        Some(path) => {
            let file = File::open(&path).with_context(|| format!("opening {}", path.display()))?;
            let series = TimeSeriesField::read_csv(BufReader::new(file))
                .with_context(|| format!("reading {}", path.display()))?;
            Ok((series, json!(path.display().to_string())))
        }
        None => {
            let traj = solve_parabolic(&parabolic_problem(cfg)?, &cfg.control)?;
            Ok((TimeSeriesField::from_trajectory(&traj)?, json!("solve-parabolic")))
        }
    }
}

fn input_path(cfg: &RunConfig, input: Option<&Path>) -> Option<PathBuf> {
    input.map(Path::to_path_buf).or_else(|| cfg.analysis.input.as_ref().map(PathBuf::from))
}

fn supconv_cmd(cfg: &RunConfig, out: &mut Outputs, input: Option<&Path>, alpha: Option<f64>) -> anyhow::Result<Value> {
    let alpha = alpha.unwrap_or(cfg.analysis.alpha);
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(vhj_core::Error::Config(format!("alpha must lie in (0, 1], got {alpha}")).into());
    }
    let (series, source) = series_input(cfg, input)?;
    let conv = sup_convolve(&series, alpha, cfg.control.execution)?;
    {
        let mut w = out.create(".csv")?;
        conv.field.write_csv(&mut w)?;
        w.flush()?;
    }
    let rows = series.times().iter().zip(series.values()).zip(conv.field.values()).map(|((&t, u), ua)| {
        let top = |v: &[f64]| v.iter().fold(f64::NEG_INFINITY, |m, &x| m.max(x));
        vec![t, top(u), top(ua)]
    });
    out.dat("_max.dat", "t max_x u max_x u^alpha", rows)?;
    let window = (series.times()[conv.window.start.min(series.times().len() - 1)], conv.window.len());
    Ok(json!({
        "input": source,
        "alpha": alpha,
        "k": conv.k,
        "window_start": window.0,
        "window_len": window.1,
        "lipschitz": check_time_lipschitz(&conv),
        "maximizer_window": check_maximizer_window(&conv),
        "initial_layer": check_initial_layer(&series, &conv),
    }))
}

/// Reads `x[,y],u` fields or the last snapshot of a trajectory CSV.
fn read_field(path: &Path) -> anyhow::Result<(Vec<[f64; 2]>, usize, Vec<f64>)> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut reader = BufReader::new(file);
    let mut header = String::new();
    reader.read_line(&mut header)?;
    if header.trim_start().starts_with('t') {
        let text = header + &std::io::read_to_string(reader)?;
        let series = TimeSeriesField::read_csv(text.as_bytes())?;
        let last = series.values().last().cloned().unwrap_or_default();
        let dim = if text.lines().next().is_some_and(|h| h.contains('y')) { 2 } else { 1 };
        return Ok((series.coords().to_vec(), dim, last));
    }
    let dim = match header.split(',').map(str::trim).collect::<Vec<_>>().as_slice() {
        ["x", "u"] => 1,
        ["x", "y", "u"] => 2,
        _ => return Err(vhj_core::Error::Io(format!("unexpected CSV header '{}'", header.trim())).into()),
    };
    let (mut coords, mut values) = (Vec::new(), Vec::new());
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let nums: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| vhj_core::Error::Io(format!("line {}: {e}", k + 2)))?;
        if nums.len() != dim + 1 {
            return Err(vhj_core::Error::Io(format!("line {}: expected {} columns", k + 2, dim + 1)).into());
        }
        coords.push([nums[0], if dim == 2 { nums[1] } else { 0.0 }]);
        values.push(nums[dim]);
    }
    Ok((coords, dim, values))
}

fn holder_cmd(cfg: &RunConfig, out: &mut Outputs, input: Option<&Path>, beta: Option<f64>) -> anyhow::Result<Value> {
    let beta = match beta.or(cfg.analysis.beta) {
        Some(b) => b,
        None => beta_exponent(cfg.equation.p, cfg.equation.q)?,
    };
    let (coords, dim, values, source) = match input_path(cfg, input) {
        Some(path) => {
            let (c, d, v) = read_field(&path)?;
            (c, d, v, json!(path.display().to_string()))
        }
        None => {
            let grid = cfg.grid()?;
            let f = steady_source(cfg, &grid)?;
            let g = cfg.g()?;
            let gd: Vec<f64> = grid.coords().iter().map(|&x| g.eval(x, 0.0)).collect();
            let (p, q, lambda) = (cfg.equation.p, cfg.equation.q, cfg.equation.lambda);
            let tol = cfg.stationary.tol.unwrap_or_else(|| default_tol(&f));
            let problem =
                StationaryProblem { grid: grid.clone(), p, q, lambda, f, boundary: BoundaryCondition::Dirichlet(gd) };
            let s = solve_stationary_with(&problem, &cfg.control, tol, &stationary_options(cfg))?;
            (grid.coords().to_vec(), grid.dimension(), s.field.into_values(), json!("solve-stationary"))
        }
    };
    let report = holder_seminorm_of(&coords, &values, beta, cfg.control.execution)?;
    {
        let mut w = out.create(".csv")?;
        write_field(&mut w, &coords, dim, &values)?;
        w.flush()?;
    }
    let (i, j) = report.pair;
    Ok(json!({
        "input": source,
        "nodes": values.len(),
        "beta": report.beta,
        "seminorm": report.seminorm,
        "pair": [coords[i], coords[j]],
    }))
}

fn slope_cmd(
    cfg: &RunConfig,
    out: &mut Outputs,
    input: Option<&Path>,
    window_fraction: Option<f64>,
) -> anyhow::Result<Value> {
    let wf = window_fraction.unwrap_or(cfg.analysis.window_fraction);
    let (series, source) = series_input(cfg, input)?;
    let report = slope_of(series.times(), series.values(), wf)?;
    let rows = series
        .times()
        .iter()
        .zip(series.values())
        .map(|(&t, u)| vec![t, u.iter().sum::<f64>() / u.len() as f64]);
    out.dat("_mean.dat", "t mean_x u", rows)?;
    Ok(json!({
        "input": source,
        "window_fraction": wf,
        "slope": report.slope,
        "max_deviation": report.max_deviation,
        "samples": report.samples,
        "window": report.window,
    }))
}

fn compare_cmd(cfg: &RunConfig, out: &mut Outputs, pairs: Option<usize>) -> anyhow::Result<Value> {
    let n = match cfg.domain {
        DomainConfig::Interval { a, b, n, .. } if a == 0.0 && b == 1.0 => n,
        _ => return Err(vhj_core::Error::Config("compare runs on the interval [0, 1]".into()).into()),
    };
    let count = pairs.unwrap_or(cfg.analysis.pairs);
    let (p, q) = (cfg.equation.p, cfg.equation.q);
    let set = random_ordered_pairs(cfg.seed, p, q, count, n, cfg.parabolic.horizon)?;
    let report = comparison_harness(&set, &cfg.control)?;
    out.dat(
        "_pairs.dat",
        "pair violation min_gap max_gap envelope_excess",
        report
            .pairs
            .iter()
            .enumerate()
            .map(|(k, o)| vec![k as f64, o.violation, o.min_gap, o.max_gap, o.envelope_excess]),
    )?;
    Ok(json!({
        "pairs": count,
        "max_violation": report.max_violation,
        "max_envelope_excess": report.max_envelope_excess,
        "outcomes": report.pairs,
    }))
}

fn acceptance_cmd(cfg: &RunConfig) -> anyhow::Result<(Value, Vec<u8>)> {
    let opts = AcceptanceOptions { seed: cfg.seed, execution: cfg.control.execution };
    let outcomes = run_all(&opts);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if outcomes.is_empty() {
        return Err(anyhow!("no criteria ran"));
    }
    Ok((json!({ "passed": failed.is_empty(), "failed": failed, "criteria": outcomes }), failed))
}

