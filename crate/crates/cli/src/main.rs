mod args;
mod report;

use std::fs;
use std::net::SocketAddr;
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use clap::Parser;
use mivs_core::io::{
    bench_csv, curve_json, generate_instance, parse_bid_csv, policy_json, run_bench, write_bid_csv,
    write_solution_json, BenchConfig, GeneratorParams,
};
use mivs_core::milp::export_integer_program;
use mivs_core::model::constraints_from_refs;
use mivs_core::policy::{policy_cheapest_per_item, policy_single_vendor};
use mivs_core::solver::solve_with_constraints;
use mivs_core::whatif::{cost_curve, CurveMode};
use mivs_core::{Cardinality, Constraints, CoverageMode, Error, ErrorClass, Instance, Money, SolverOptions};
use mivs_service::ServiceConfig;

use crate::args::{Cli, Command, ConstraintArgs, SolverArgs};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Input => 2,
                ErrorClass::Infeasible => 3,
                ErrorClass::SizeCap => 4,
            })
        }
    }
}

fn read_instance(path: &Path) -> Result<Instance, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_bid_csv(&text)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, contents: &str) -> Result<(), Error> {
    match output {
        Some(path) => write_file(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn constraints(instance: &Instance, args: &ConstraintArgs) -> Result<Constraints, Error> {
    let cardinality = match (args.exact_vendors, args.max_vendors) {
        (Some(k), _) => Some(Cardinality::exactly(k)),
        (None, Some(k)) => Some(Cardinality::at_most(k)),
        (None, None) => None,
    };
    let coverage = if args.partial { CoverageMode::Partial } else { CoverageMode::Full };
    constraints_from_refs(instance, &args.require, &args.forbid, cardinality, coverage)
}

fn solver_options(args: &SolverArgs) -> SolverOptions {
    SolverOptions::default().with_pruning(args.prune).with_workers(args.workers).with_vendor_cap(args.vendor_cap)
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Solve { csv, constraints: c, solver, json, output } => {
            let instance = read_instance(&csv)?;
            let constraints = constraints(&instance, &c)?;
            let report = solve_with_constraints(&instance, &constraints, &solver_options(&solver))?;
            let doc = write_solution_json(&instance, &report);
            if let Some(path) = &output {
                write_file(path, &doc)?;
            }
            if json {
                print!("{doc}");
            } else if output.is_none() {
                print!("{}", report::solution_text(&instance, &report.best));
            }
            let s = report.stats;
            eprintln!(
                "{} candidate subsets: {} evaluated, {} pruned, {} infeasible in {:.3} ms",
                s.candidates,
                s.evaluated,
                s.pruned,
                s.infeasible,
                report.wall_time.as_secs_f64() * 1e3
            );
            Ok(())
        }
        Command::Policy { csv, alt1, alt2: _, json } => {
            let instance = read_instance(&csv)?;
            let result = if alt1 { policy_single_vendor(&instance)? } else { policy_cheapest_per_item(&instance)? };
            if json {
                print!("{}", policy_json(&instance, &result));
            } else {
                print!("{}", report::policy_text(&instance, &result));
            }
            Ok(())
        }
        Command::Curve { csv, constraints: c, solver, single_sweep, json } => {
            let instance = read_instance(&csv)?;
            let constraints = constraints(&instance, &c)?;
            let mode = if single_sweep { CurveMode::SingleSweep } else { CurveMode::PerCount };
            let curve = cost_curve(&instance, &constraints, &solver_options(&solver), mode)?;
            if json {
                print!("{}", curve_json(&instance, &curve));
            } else {
                print!("{}", report::curve_text(&instance, &curve));
            }
            Ok(())
        }
        Command::ExportLp { csv, output } => {
            let instance = read_instance(&csv)?;
            emit(output.as_deref(), &export_integer_program(&instance)?.to_lp_string())
        }
        Command::Gen { items, vendors, seed, density, price_min, price_max, fixed_min, fixed_max, output } => {
            let params = GeneratorParams::new(items, vendors, seed)
                .with_density(density)
                .with_price_range(price_min, price_max)
                .with_fixed_range(fixed_min, fixed_max);
            let instance: Instance = generate_instance(&params)?;
            emit(output.as_deref(), &write_bid_csv(&instance))
        }
        Command::Bench { vendors, items, workers, reps, prune, seed, output } => {
            let config =
                BenchConfig { vendors, items, workers, repetitions: reps, pruning: prune, seed, ..Default::default() };
            let records = run_bench::<Money>(&config)?;
            emit(output.as_deref(), &bench_csv(&records))
        }
        Command::Serve { port, host, max_instances, time_budget_secs, cors_origin, solver } => {
            let config = ServiceConfig {
                max_instances,
                time_budget: Duration::from_secs(time_budget_secs),
                solver: solver_options(&solver),
                cors_origin,
            };
            let addr = SocketAddr::new(host, port);
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Error::Io(e.to_string()))?;
            eprintln!("listening on http://{addr}");
            runtime.block_on(mivs_service::serve(addr, config)).map_err(|e| Error::Io(e.to_string()))
        }
    }
}
