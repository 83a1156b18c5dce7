//! `critpoint` command-line front end.
//!
//! Exit codes: 0 success, 1 solver or I/O failure, 2 unparsable input,
//! 3 count mismatch under `--strict`.

mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use critpoint::critical::{
    build_cegm_scattering, build_discrete_mle, build_ed_system_with, build_gaussian_concentration,
    build_gaussian_covariance, build_linear_section_system, cegm_minors, negative_log_likelihood, random,
    random_mandelstam, EdForm,
};
use critpoint::degree::{
    cegm_ml_degree, ed_degree_ci, ed_degree_curve, gaussian_ml_degrees_n4, ml_degree_ci, polar_degrees_surface,
    space_curve_degree_genus,
};
use critpoint::homotopy::solve;
use critpoint::pde::{
    build_wave_solution, general_solution, hankel_module, hankel_rank, hankel_syzygies, is_module_solution,
    membership, noetherian_operators, syzygy_solution, verify_general_solution, wave_forms,
};
use critpoint::{ModelSpec, Rational, Ring, SolutionSet, SquareSystem, TrackerConfig};
use num::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use input::{parse_degrees, parse_rationals, read_model, DegList, RatList};
use report::RunReport;

#[derive(Parser)]
#[command(name = "critpoint", version, about = "Critical points of distance and likelihood functions")]
struct Cli {
    /// Seed for random data and the homotopy constant.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for path tracking; 0 uses all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Exit with status 3 when the found count differs from the expected one.
    #[arg(long, global = true)]
    strict: bool,
    /// Write the JSON report here; `-` means stdout.
    #[arg(long, global = true, value_name = "FILE")]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical points of the squared distance to a data point.
    SolveEd {
        #[command(flatten)]
        model: ModelArgs,
        /// Data point, e.g. `7/8,1/100`. Random when omitted.
        #[arg(long, value_parser = parse_rationals, allow_hyphen_values = true)]
        u: Option<RatList>,
        #[arg(long, value_enum, default_value = "auto")]
        form: FormArg,
    },
    /// Maximum likelihood estimation.
    SolveMle {
        #[command(subcommand)]
        variant: MleVariant,
    },
    /// Scattering equations of the CEGM model with random Mandelstam data.
    SolveCegm {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Linear objectives on random affine sections, counting polar degrees.
    SolveSection {
        #[command(flatten)]
        model: ModelArgs,
        /// Section index; all indices when omitted.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Closed-form degree formulas.
    Degree {
        #[command(subcommand)]
        query: DegreeQuery,
    },
    /// Exact checks of polynomial-exponential PDE solutions.
    Pde {
        #[command(subcommand)]
        check: PdeCheck,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Model JSON: `{"variables": [...], "generators": [...], "codim": c}`.
    #[arg(long, value_name = "FILE", conflicts_with = "random_degs", required_unless_present = "random_degs")]
    model: Option<PathBuf>,
    /// Random dense complete intersection with these degrees.
    #[arg(long, value_parser = parse_degrees, requires = "n")]
    random_degs: Option<DegList>,
    /// Ambient dimension of the random model.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormArg {
    Auto,
    Multiplier,
    Determinant,
}

#[derive(Subcommand)]
enum MleVariant {
    /// Linear concentration model with random subspace and sample covariance.
    GaussianConc {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Linear covariance model with random subspace and sample covariance.
    GaussianCov {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Discrete model in probability coordinates.
    Discrete {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        /// Counts, e.g. `4,2,2,1`.
        #[arg(long, value_parser = parse_rationals, allow_hyphen_values = true)]
        u: RatList,
    },
}

#[derive(Subcommand)]
enum DegreeQuery {
    /// ED degree of a generic complete intersection.
    EdCi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, value_parser = parse_degrees)]
        degs: DegList,
    },
    /// ML degree of a generic complete intersection.
    MlCi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, value_parser = parse_degrees)]
        degs: DegList,
    },
    /// ED degree of a smooth curve of degree d and genus g.
    EdCurve {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        g: u64,
    },
    /// Degree, genus and ED degree of a complete-intersection space curve.
    SpaceCurve {
        #[arg(long)]
        d1: u64,
        #[arg(long)]
        d2: u64,
    },
    /// Polar degrees of a generic surface of degree d.
    Polar {
        #[arg(long)]
        d: u64,
    },
    /// ML and reciprocal ML degree of a generic linear Gaussian model, n = 4.
    Gaussian {
        #[arg(long)]
        k: usize,
    },
    /// ML degree of the CEGM model.
    Cegm {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Subcommand)]
enum PdeCheck {
    /// Wave solutions and syzygy solutions for the Hankel module of `u`.
    HankelWave {
        #[arg(long, value_parser = parse_rationals, allow_hyphen_values = true)]
        u: RatList,
        /// Polynomial in `w1..wr`, r the kernel dimension; their product by default.
        #[arg(long)]
        psi: Option<String>,
    },
    /// The general solution of the axis-scheme PDE for given data.
    GeneralSolution {
        /// Univariate polynomial in `t`.
        #[arg(long)]
        xi: String,
        #[arg(long)]
        psi: String,
        #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, value_parser = input::parse_rational, allow_hyphen_values = true)]
        beta: Rational,
    },
    /// Ideal membership through the Noetherian operators of the axis scheme.
    Membership {
        /// Polynomial in `x1, x2, x3`.
        #[arg(long)]
        f: String,
    },
}

/// A failure that maps to an exit status.
enum Failure {
    Input(String),
    Run(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Run(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Run(m) => m,
        }
    }
}

fn bad_input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn run_err<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Run(e.to_string())
}

struct Ctx {
    seed: u64,
    config: TrackerConfig,
    rng: ChaCha8Rng,
}

impl Ctx {
    fn solve(&self, system: &SquareSystem) -> Result<SolutionSet, Failure> {
        solve(system, &self.config).map_err(run_err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut config = TrackerConfig::with_seed(cli.seed);
    if let Some(t) = cli.threads {
        config.threads = t;
    }
    let mut ctx = Ctx { seed: cli.seed, config, rng: ChaCha8Rng::seed_from_u64(cli.seed) };

    let outcome = match &cli.command {
        Command::SolveEd { model, u, form } => solve_ed(&mut ctx, model, u.as_ref().map(|u| u.0.as_slice()), *form),
        Command::SolveMle { variant } => solve_mle(&mut ctx, variant),
        Command::SolveCegm { k, m } => solve_cegm(&mut ctx, *k, *m),
        Command::SolveSection { model, index } => solve_section(&mut ctx, model, *index),
        Command::Degree { query } => degree(query),
        Command::Pde { check } => pde(check),
    };
    let mut report = match outcome {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return ExitCode::from(f.code());
        }
    };
    report.command = std::env::args().skip(1).collect();
    report.seed = ctx.seed;
    report.wall_time_seconds = started.elapsed().as_secs_f64();

    report.print_summary();
    if let Some(path) = &cli.json_out {
        if let Err(e) = report.write_json(path) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    if cli.strict && report.mismatch() {
        eprintln!("error: expected count not met");
        return ExitCode::from(3);
    }
    ExitCode::SUCCESS
}

fn model_from(args: &ModelArgs, rng: &mut ChaCha8Rng) -> Result<ModelSpec, Failure> {
    match (&args.model, &args.random_degs) {
        (Some(path), _) => read_model(path),
        (None, Some(DegList(degs))) => {
            let n = args.n.ok_or_else(|| Failure::Input("--random-degs needs --n".into()))?;
            let ring = Ring::standard(n);
            let gens = degs.iter().map(|&d| random::dense_poly(&ring, d, false, rng)).collect();
            ModelSpec::new(gens, degs.len()).map_err(bad_input)
        }
        (None, None) => Err(Failure::Input("give --model or --random-degs".into())),
    }
}

fn solve_ed(ctx: &mut Ctx, args: &ModelArgs, u: Option<&[Rational]>, form: FormArg) -> Result<RunReport, Failure> {
    let model = model_from(args, &mut ctx.rng)?;
    let u = match u {
        Some(u) => u.to_vec(),
        None => random::rational_vector(model.n(), &mut ctx.rng),
    };
    let form = match form {
        FormArg::Auto => EdForm::Auto,
        FormArg::Multiplier => EdForm::Multiplier,
        FormArg::Determinant => EdForm::Determinant,
    };
    let system = build_ed_system_with(&model, &u, form).map_err(bad_input)?;
    let set = ctx.solve(&system)?;
    let uf: Vec<f64> = u.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect();
    let n = model.n();
    let closest = set
        .select_minimizer(|x| Some(x[..n].iter().zip(&uf).map(|(a, b)| (a - b) * (a - b)).sum()))
        .ok()
        .map(|s| s.real_parts()[..n].to_vec());
    let mut report = RunReport::from_set(&system.label, &set, &ctx.config);
    report.minimizer = closest;
    report.data = json!({ "u": input::rationals_to_strings(&u) });
    Ok(report)
}

fn solve_mle(ctx: &mut Ctx, variant: &MleVariant) -> Result<RunReport, Failure> {
    match variant {
        MleVariant::GaussianConc { n, k } | MleVariant::GaussianCov { n, k } => {
            if *k == 0 || *k > n * (n + 1) / 2 {
                return Err(Failure::Input(format!("k = {k} out of range for n = {n}")));
            }
            let l = random::lssm(*n, *k, &mut ctx.rng);
            let s = random::sample_covariance(*n, &mut ctx.rng);
            let system = match variant {
                MleVariant::GaussianConc { .. } => build_gaussian_concentration(&l, &s),
                _ => build_gaussian_covariance(&l, &s),
            }
            .map_err(bad_input)?;
            let set = ctx.solve(&system)?;
            Ok(RunReport::from_set(&system.label, &set, &ctx.config))
        }
        MleVariant::Discrete { model, u } => {
            let u = &u.0;
            let model = read_model(model)?;
            let system = build_discrete_mle(&model, u).map_err(bad_input)?;
            let set = ctx.solve(&system)?;
            let np = model.n();
            let best = set.select_minimizer(negative_log_likelihood(u)).ok().map(|s| s.real_parts()[..np].to_vec());
            let mut report = RunReport::from_set(&system.label, &set, &ctx.config);
            if best.is_none() {
                report.warnings.push("no critical point in the open simplex".into());
            }
            report.minimizer = best;
            report.data = json!({ "u": input::rationals_to_strings(u) });
            Ok(report)
        }
    }
}

fn solve_cegm(ctx: &mut Ctx, k: usize, m: usize) -> Result<RunReport, Failure> {
    let u = random_mandelstam(k, m, &mut ctx.rng).map_err(bad_input)?;
    let system = build_cegm_scattering(k, m, &u).map_err(bad_input)?;
    let set = ctx.solve(&system)?;
    let minors = cegm_minors(k, m).map_err(bad_input)?;
    let smallest = set
        .solutions
        .iter()
        .flat_map(|s| minors.iter().filter_map(move |(_, p)| p.evaluate(&s.point).ok().map(|v| v.norm())))
        .fold(f64::INFINITY, f64::min);
    let mut report = RunReport::from_set(&system.label, &set, &ctx.config);
    report.data = json!({
        "mandelstam": u.iter().map(|(idx, v)| (format!("{idx:?}"), v.to_string())).collect::<Vec<_>>(),
        "min_abs_minor": if smallest.is_finite() { Some(smallest) } else { None },
    });
    Ok(report)
}

fn solve_section(ctx: &mut Ctx, args: &ModelArgs, index: Option<usize>) -> Result<RunReport, Failure> {
    let model = model_from(args, &mut ctx.rng)?;
    let indices: Vec<usize> = match index {
        Some(i) => vec![i],
        None => (1..=model.n()).collect(),
    };
    let mut sections = Vec::new();
    let mut total: Option<RunReport> = None;
    for i in indices {
        let system = build_linear_section_system(&model, i, &mut ctx.rng).map_err(bad_input)?;
        let set = ctx.solve(&system)?;
        let r = RunReport::from_set(&system.label, &set, &ctx.config);
        sections.push(json!({ "index": i, "expected_count": r.expected_count, "found_count": r.found_count }));
        total = Some(match total {
            None => r,
            Some(acc) => acc.merge(r),
        });
    }
    let mut report = total.expect("at least one section");
    report.label = "linear-sections".into();
    report.data = json!({ "sections": sections });
    Ok(report)
}

fn degree(query: &DegreeQuery) -> Result<RunReport, Failure> {
    let (value, formula) = match query {
        DegreeQuery::EdCi { n, c, degs } => (
            ed_degree_ci(*n, *c, &degs.0).map_err(bad_input)?.to_string(),
            "d1...dc * sum over i1+...+ic <= n-c of (d1-1)^i1...(dc-1)^ic".to_string(),
        ),
        DegreeQuery::MlCi { n, c, degs } => (
            ml_degree_ci(*n, *c, &degs.0).map_err(bad_input)?.to_string(),
            "d1...dc * sum over i1+...+ic <= n-c of d1^i1...dc^ic".to_string(),
        ),
        DegreeQuery::EdCurve { d, g } => (ed_degree_curve(*d, *g).map_err(bad_input)?.to_string(), "3d + 2g - 2".to_string()),
        DegreeQuery::SpaceCurve { d1, d2 } => {
            let (d, g) = space_curve_degree_genus(*d1, *d2);
            let ed = ed_degree_curve(d, g).map_err(bad_input)?;
            (ed.to_string(), format!("d = d1 d2 = {d}, g = d1 d2 (d1 + d2 - 4)/2 + 1 = {g}, 3d + 2g - 2"))
        }
        DegreeQuery::Polar { d } => {
            let (a, b, c) = polar_degrees_surface(*d).map_err(bad_input)?;
            (format!("{a},{b},{c}"), "d(d-1)^2, d(d-1), d".to_string())
        }
        DegreeQuery::Gaussian { k } => {
            let (ml, rml) = gaussian_ml_degrees_n4(*k).map_err(bad_input)?;
            (format!("{ml},{rml}"), "table of ML and reciprocal ML degrees for n = 4".to_string())
        }
        DegreeQuery::Cegm { k, m } => {
            let v = cegm_ml_degree(*k, *m).map_err(bad_input)?;
            let formula = if (*k).min(m - k) == 2 { "(m-3)!" } else { "table of known values" };
            (v.to_string(), formula.to_string())
        }
    };
    Ok(RunReport::degree(value, formula))
}

fn pde(check: &PdeCheck) -> Result<RunReport, Failure> {
    match check {
        PdeCheck::HankelWave { u, psi } => {
            let u = &u.0;
            let rank = hankel_rank(u).map_err(bad_input)?;
            let forms = wave_forms(u).map_err(bad_input)?;
            let w = Ring::with_prefix("w", forms.len());
            let psi = match psi {
                Some(text) => critpoint::parse(text, &w).map_err(bad_input)?,
                None => {
                    let names: Vec<String> = (1..=forms.len()).map(|i| format!("w{i}")).collect();
                    critpoint::parse(&names.join("*"), &w).map_err(bad_input)?
                }
            };
            let module = hankel_module();
            let wave = build_wave_solution(u, &psi).map_err(bad_input)?;
            let wave_ok = is_module_solution(&module, &wave).map_err(run_err)?;
            let z = Ring::with_prefix("z", 4);
            let probe = critpoint::parse("z1^3*z2*z3*z4 + z2^2", &z).map_err(run_err)?;
            let mut syz_ok = true;
            let mut pairings_zero = true;
            for s in hankel_syzygies() {
                pairings_zero &= module.pairings(&s).map_err(run_err)?.iter().all(|p| p.is_zero());
                let phi = syzygy_solution(&s, &probe).map_err(run_err)?;
                syz_ok &= is_module_solution(&module, &phi).map_err(run_err)?;
            }
            let verified = wave_ok && syz_ok && pairings_zero;
            Ok(RunReport::check(
                "hankel-wave",
                verified,
                json!({
                    "hankel_rank": rank,
                    "kernel_forms": forms.iter().map(|f| input::rationals_to_strings(f)).collect::<Vec<_>>(),
                    "psi": psi.to_string(),
                    "wave_solution": wave.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "wave_is_solution": wave_ok,
                    "syzygy_pairings_zero": pairings_zero,
                    "syzygy_solutions_verified": syz_ok,
                }),
            ))
        }
        PdeCheck::GeneralSolution { xi, psi, alpha, beta } => {
            let t = Ring::new(["t"]);
            let xi = critpoint::parse(xi, &t).map_err(bad_input)?;
            let psi = critpoint::parse(psi, &t).map_err(bad_input)?;
            let phi = general_solution(&xi, &psi, alpha, beta).map_err(bad_input)?;
            let ok = verify_general_solution(&xi, &psi, alpha, beta).map_err(run_err)?;
            Ok(RunReport::check("general-solution", ok, json!({ "phi": phi.to_string() })))
        }
        PdeCheck::Membership { f } => {
            let f = critpoint::parse(f, &Ring::standard(3)).map_err(bad_input)?;
            let member = membership(&noetherian_operators(), &f).map_err(run_err)?;
            // the answer itself is the result, so the check always succeeds
            Ok(RunReport::check("membership", true, json!({ "f": f.to_string(), "member": member })))
        }
    }
}
