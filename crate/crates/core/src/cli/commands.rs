use std::fmt::Write;

use super::report::{
    comparison_csv, comparison_human, comparison_json, fit_csv, fit_human, fit_json, sig6,
};
use super::{
    read_series, Cli, CliError, Command, CoxianArgs, CurvesArgs, FitArgs, Format, MatchArgs,
    Matching, ModelChoice, RepairmanArgs, RepairmanMode, Scenario, SimControl,
};
use crate::fit::{compare_models, fit_series, ModelKind};
use crate::models::{match_asymptotic, match_leading, ScalingParams};
use crate::queueing::{
    coxian_moments, pk_response, repairman_exact_series, sync_capacity, sync_response,
    sync_throughput, uniform_coxian_utilization, CoxianSpec, RepairmanConfig,
};
use crate::sim::{replicate, simulate_mg1_coxian, simulate_repairman, SimConfig, SimEstimate};
use crate::Error;

/// Executes one command and returns what it prints on stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Fit(args) => cmd_fit(args),
        Command::Curves(args) => cmd_curves(args),
        Command::Repairman(args) => cmd_repairman(args),
        Command::Coxian(args) => cmd_coxian(args),
        Command::Simulate(args) => cmd_simulate(&args.scenario),
        Command::Match(args) => cmd_match(args),
    }
}

fn cmd_fit(args: &FitArgs) -> Result<String, CliError> {
    let series = read_series(&args.input, &args.column)?;
    let format = args.format.format();
    let kind = match args.model {
        ModelChoice::Amdahl => ModelKind::Amdahl,
        ModelChoice::Mpf => ModelKind::Geometric,
        ModelChoice::Usl => ModelKind::Usl,
        ModelChoice::All => {
            let cmp = compare_models(&series, args.baseline, &args.extrapolate)?;
            if cmp.ranked.is_empty() {
                let reasons: Vec<String> = cmp
                    .skipped
                    .iter()
                    .map(|(k, e)| format!("{}: {e}", k.name()))
                    .collect();
                return Err(CliError::input(format!(
                    "no model could be fitted ({})",
                    reasons.join("; ")
                )));
            }
            return Ok(match format {
                Format::Human => comparison_human(&cmp),
                Format::Csv => comparison_csv(&cmp),
                Format::Json => json_text(&comparison_json(&cmp)),
            });
        }
    };
    let report = fit_series(&series, kind, args.baseline)?.with_predictions(&args.extrapolate)?;
    Ok(match format {
        Format::Human => fit_human(&report),
        Format::Csv => fit_csv(&report),
        Format::Json => json_text(&fit_json(&report)),
    })
}

fn json_text(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn cmd_curves(args: &CurvesArgs) -> Result<String, CliError> {
    let mut models: Vec<(&str, ScalingParams)> = Vec::new();
    if let Some(sigma) = args.amdahl {
        models.push(("C_amdahl", ScalingParams::amdahl(sigma)?));
    }
    match args.matching {
        Matching::None => {
            if let Some(phi) = args.mpf {
                models.push(("C_mpf", ScalingParams::geometric(phi)?));
            }
        }
        Matching::Asymptotic | Matching::Leading => {
            let sigma = args.amdahl.ok_or_else(|| {
                CliError::input("--matching needs --amdahl to derive the MPF curve")
            })?;
            if args.mpf.is_some() {
                return Err(CliError::input("--mpf cannot be combined with --matching"));
            }
            let phi = if args.matching == Matching::Asymptotic {
                match_asymptotic(sigma)?
            } else {
                match_leading(sigma)?
            };
            models.push(("C_mpf", ScalingParams::geometric(phi)?));
        }
    }
    if let Some(usl) = &args.usl {
        models.push(("C_usl", ScalingParams::usl(usl[0], usl[1])?));
    }
    if models.is_empty() {
        return Err(CliError::input(
            "give at least one of --amdahl, --mpf, --usl",
        ));
    }
    if args.p_max == 0 {
        return Err(Error::ZeroProcessors.into());
    }

    let mut out = String::from("p");
    for (name, _) in &models {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for p in 1..=args.p_max {
        let _ = write!(out, "{p}");
        for (_, params) in &models {
            let _ = write!(out, ",{}", params.capacity(p)?);
        }
        out.push('\n');
    }
    Ok(out)
}

fn cmd_repairman(args: &RepairmanArgs) -> Result<String, CliError> {
    let cfg = RepairmanConfig::new(args.p_max, args.d, args.z)?;
    let exact = repairman_exact_series(&cfg)?;
    let x1 = exact[0].x;
    let sigma = crate::queueing::sigma_from(&cfg);

    let mut out = String::from("p");
    let exact_cols = matches!(args.mode, RepairmanMode::Exact | RepairmanMode::Both);
    let sync_cols = matches!(args.mode, RepairmanMode::Sync | RepairmanMode::Both);
    if exact_cols {
        out.push_str(",X_exact,R_exact,C_exact");
    }
    if sync_cols {
        out.push_str(",X_sync,R_sync,C_sync");
    }
    if args.mode == RepairmanMode::Both {
        out.push_str(",C_amdahl");
    }
    out.push('\n');
    for (i, sol) in exact.iter().enumerate() {
        let p = i as u32 + 1;
        let at = cfg.with_population(p);
        let _ = write!(out, "{p}");
        if exact_cols {
            let _ = write!(out, ",{},{},{}", sol.x, sol.r, sol.x / x1);
        }
        if sync_cols {
            let _ = write!(
                out,
                ",{},{},{}",
                sync_throughput(&at),
                sync_response(&at),
                sync_capacity(&at)
            );
        }
        if args.mode == RepairmanMode::Both {
            let _ = write!(out, ",{}", crate::models::amdahl_capacity(sigma, p)?);
        }
        out.push('\n');
    }
    Ok(out)
}

fn check_rho(rho: f64) -> Result<(), CliError> {
    if rho >= 1.0 {
        return Err(Error::Unstable(rho).into());
    }
    if !(rho > 0.0) {
        return Err(Error::OutOfRange {
            name: "rho",
            value: rho,
            range: "(0, 1)",
        }
        .into());
    }
    Ok(())
}

fn cmd_coxian(args: &CoxianArgs) -> Result<String, CliError> {
    check_rho(args.rho)?;
    if !(args.phi > 0.0 && args.phi <= 1.0) {
        return Err(Error::OutOfRange {
            name: "phi",
            value: args.phi,
            range: "(0, 1]",
        }
        .into());
    }
    if args.sweep {
        return coxian_sweep(args);
    }
    if args.p_max == 0 {
        return Err(Error::ZeroProcessors.into());
    }
    let mut out = String::from("p,mean,scv,lambda,stage_load,utilization,response\n");
    for p in 1..=args.p_max {
        let moments = coxian_moments(&CoxianSpec::uniform(args.mu, args.phi, p)?);
        let lambda = args.rho / moments.mean;
        let u = uniform_coxian_utilization(lambda, args.mu, args.phi, p)?;
        let r = pk_response(&moments, args.rho)?;
        let _ = writeln!(
            out,
            "{p},{},{},{lambda},{},{},{r}",
            moments.mean,
            moments.scv,
            lambda / args.mu,
            u.value
        );
    }
    Ok(out)
}

/// Response against utilization for several chain lengths, next to the
/// M/M/1 curve with the single-stage mean.
fn coxian_sweep(args: &CoxianArgs) -> Result<String, CliError> {
    if args.stages.is_empty() || args.rho_points == 0 {
        return Err(CliError::input(
            "--sweep needs --stages and a positive --rho-points",
        ));
    }
    let moments = args
        .stages
        .iter()
        .map(|&p| Ok(coxian_moments(&CoxianSpec::uniform(args.mu, args.phi, p)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let mm1_mean = 1.0 / args.mu;

    let mut out = String::from("rho");
    for p in &args.stages {
        let _ = write!(out, ",R_p{p}");
    }
    out.push_str(",R_mm1\n");
    for i in 1..=args.rho_points {
        let rho = args.rho * f64::from(i) / f64::from(args.rho_points);
        let _ = write!(out, "{rho}");
        for m in &moments {
            let _ = write!(out, ",{}", pk_response(m, rho)?);
        }
        let _ = writeln!(out, ",{}", mm1_mean / (1.0 - rho));
    }
    Ok(out)
}

fn sim_config(control: &SimControl) -> Result<SimConfig, CliError> {
    let sim = SimConfig {
        seed: control.seed,
        warmup_completions: control.warmup,
        measured_completions: control.completions,
        batches: control.batches,
    };
    sim.validate()?;
    if control.reps == 0 {
        return Err(CliError::input("--reps must be at least 1"));
    }
    Ok(sim)
}

struct Row {
    seed: u64,
    quantity: &'static str,
    estimate: SimEstimate,
    analytic: f64,
}

fn verdict(estimate: &SimEstimate, analytic: f64) -> &'static str {
    if estimate.contains(analytic) {
        "PASS"
    } else {
        "FAIL"
    }
}

fn simulation_report(header: String, sim: &SimConfig, rows: &[Row], notes: &[String]) -> String {
    let mut out = header;
    let _ = writeln!(
        out,
        "warmup: {}  measured: {}  batches: {}",
        sim.warmup_completions, sim.measured_completions, sim.batches
    );
    let _ = writeln!(
        out,
        "{:>20}  {:<8}  {:>12}  {:>12}  {:>12}  verdict",
        "seed", "quantity", "estimate", "half-width", "analytic"
    );
    for row in rows {
        let _ = writeln!(
            out,
            "{:>20}  {:<8}  {:>12}  {:>12}  {:>12}  {}",
            row.seed,
            row.quantity,
            sig6(row.estimate.mean),
            sig6(row.estimate.half_width),
            sig6(row.analytic),
            verdict(&row.estimate, row.analytic)
        );
    }
    let passed = rows
        .iter()
        .filter(|r| r.estimate.contains(r.analytic))
        .count();
    let _ = writeln!(out, "inside 95% CI: {passed}/{}", rows.len());
    for note in notes {
        let _ = writeln!(out, "{note}");
    }
    out
}

fn cmd_simulate(scenario: &Scenario) -> Result<String, CliError> {
    match scenario {
        Scenario::Repairman { p, d, z, control } => {
            let cfg = RepairmanConfig::new(*p, *d, *z)?;
            let sim = sim_config(control)?;
            let exact = *repairman_exact_series(&cfg)?.last().expect("p >= 1");
            let bound = sync_throughput(&cfg);
            let runs = replicate(&sim, control.reps, |c| {
                (c.seed, simulate_repairman(&cfg, c))
            });
            let mut rows = Vec::new();
            let mut below_bound = 0;
            for (seed, result) in runs {
                let est = result?;
                if est.x.upper() < bound {
                    below_bound += 1;
                }
                rows.push(Row {
                    seed,
                    quantity: "X",
                    estimate: est.x,
                    analytic: exact.x,
                });
                rows.push(Row {
                    seed,
                    quantity: "R",
                    estimate: est.r,
                    analytic: exact.r,
                });
            }
            let header = format!("scenario: repairman  p={p}  D={d}  Z={z}\n");
            let note = format!(
                "synchronous bound X_sync = {}: {}",
                sig6(bound),
                if below_bound == 0 {
                    "respected"
                } else {
                    "VIOLATED"
                }
            );
            Ok(simulation_report(header, &sim, &rows, &[note]))
        }
        Scenario::Mg1 {
            lambda,
            rho,
            mu,
            phi,
            stages,
            control,
        } => {
            let spec = CoxianSpec::uniform(*mu, *phi, *stages)?;
            let moments = coxian_moments(&spec);
            let lambda = match (lambda, rho) {
                (Some(l), _) => *l,
                (None, Some(r)) => r / moments.mean,
                (None, None) => return Err(CliError::input("give --lambda or --rho")),
            };
            let load = lambda * moments.mean;
            if load >= 1.0 {
                return Err(Error::Unstable(load).into());
            }
            let sim = sim_config(control)?;
            let analytic = pk_response(&moments, load)?;
            let runs = replicate(&sim, control.reps, |c| {
                (c.seed, simulate_mg1_coxian(lambda, &spec, c))
            });
            let mut rows = Vec::new();
            for (seed, result) in runs {
                rows.push(Row {
                    seed,
                    quantity: "R",
                    estimate: result?.r,
                    analytic,
                });
            }
            let header = format!(
                "scenario: mg1  lambda={lambda}  mu={mu}  phi={phi}  stages={stages}  utilization={}\n",
                sig6(load)
            );
            let note = format!(
                "E{{S}} = {}  scv = {}",
                sig6(moments.mean),
                sig6(moments.scv)
            );
            Ok(simulation_report(header, &sim, &rows, &[note]))
        }
    }
}

fn cmd_match(args: &MatchArgs) -> Result<String, CliError> {
    let asymptotic = match_asymptotic(args.sigma)?;
    let leading = match_leading(args.sigma)?;
    Ok(format!(
        "sigma,phi_asymptotic,phi_leading\n{},{asymptotic},{leading}\n",
        args.sigma
    ))
}
