mod args;
mod commands;
mod error;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::error::CliError;

/// Library operation and the subcommand that reaches it.
pub const OPERATION_TABLE: &[(&str, &str)] = &[
    ("numerics::solve_unit_equation", "param-admissible"),
    ("numerics::refine", "expand"),
    ("expansion::transform", "expand"),
    ("expansion::digits", "expand"),
    ("expansion::infinite_expansion_of_one", "expand"),
    ("expansion::lex_compare", "admissible"),
    ("admissibility::is_admissible", "admissible"),
    ("admissibility::enumerate", "enumerate"),
    ("admissibility::count", "enumerate"),
    ("admissibility::zero_run_table", "enumerate"),
    ("admissibility::make_full", "admissible"),
    ("admissibility::beta_n", "construct"),
    ("cylinders::interval", "cylinder"),
    ("cylinders::is_full", "admissible"),
    ("cylinders::locate", "cylinder"),
    ("cylinders::concat_length_check", "cylinder"),
    ("runlength::run_profile", "runlength"),
    ("runlength::limit_estimates", "runlength"),
    ("runlength::exponents_from_runs", "exponents"),
    ("runlength::exponents_from_orbit", "exponents"),
    ("runlength::erdos_renyi", "montecarlo"),
    ("levelset::make_schedule", "construct"),
    ("levelset::block_alphabet", "construct"),
    ("levelset::construct_point", "construct"),
    ("levelset::mu_mass", "construct"),
    ("levelset::local_dimension_series", "construct"),
    ("levelset::residual_witness", "witness"),
    ("paramspace::is_self_admissible", "param-admissible"),
    ("paramspace::recurrence", "param-admissible"),
    ("paramspace::beta_from_expansion", "param-admissible"),
    ("paramspace::param_cylinder", "param-cylinder"),
    ("paramspace::construct_param_point", "param-construct"),
    ("paramspace::param_residual_witness", "param-witness"),
    ("dimension::dim_e_ab", "formula"),
    ("dimension::dim_e_a", "formula"),
    ("dimension::dim_f_b", "formula"),
    ("dimension::dim_v_geq", "formula"),
    ("dimension::dim_u", "formula"),
    ("dimension::dim_p_v_geq", "formula"),
    ("dimension::dim_p_u", "formula"),
    ("dimension::box_count", "boxcount"),
];

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs as usize)
        .build()
        .map_err(CliError::from)
        .and_then(|pool| pool.install(|| commands::run(&cli)));
    match result {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
