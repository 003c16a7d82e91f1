//! The `maxmin` command-line tool.

pub mod args;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use maxmin::oracle::min_revenue_bruteforce_with;
use maxmin::{
    comonotonic_welfare, discretize_exponential, discretize_uniform, gen_identical_eqrev, gen_mis,
    gen_truncated_eqrev, half_threshold_pricing, max_median_single_price, revenue_of_coupling, search_maxmin,
    Adversary, BestResponse, Coupling, Instance, ItemRef, OracleLimits, Pricing, Rational, SearchOptions,
};

use crate::args::{Cli, Command, GenCommand, OracleCommand, PriceCommand};
use crate::input::{InputError, Inputs};
use crate::report::{digest, Report, Results};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Core(#[from] maxmin::Error),
}

enum Output {
    Report {
        params: Vec<(&'static str, String)>,
        results: Results,
        witness: Option<Coupling>,
    },
    Text(String),
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().ansi().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let command: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let mut inputs = Inputs::default();
    match execute(&cli, &mut inputs) {
        Ok(Output::Text(text)) => {
            let _ = write!(out, "{text}");
            EXIT_OK
        }
        Ok(Output::Report {
            mut params,
            results,
            witness,
        }) => {
            params.insert(0, ("tie_break", cli.tie_break.to_string()));
            params.insert(1, ("budget", format!("{:?}", cli.budget)));
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let report = Report::new(command, digest(&params, &inputs), results, witness, elapsed);
            let _ = write!(out, "{}", report.render(cli.format));
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_COMPUTE
        }
    }
}

fn item_label(inst: &Instance, it: ItemRef) -> String {
    match it {
        ItemRef::Item(i) => inst.items()[i].name.clone(),
        ItemRef::Null => "null".into(),
    }
}

fn sale_fields(r: &mut Results, inst: &Instance, br: &BestResponse) {
    r.rat("revenue", &br.revenue)
        .rats("sale_prob", &br.sale_prob)
        .rat("no_sale_prob", &br.no_sale_prob)
        .put(
            "order",
            br.order.iter().map(|&it| item_label(inst, it)).collect::<Vec<_>>(),
        )
        .rats("prefix_sale_probs", &br.prefix_sale_probs());
}

fn pricing_strings(p: &Pricing) -> Vec<String> {
    p.prices.iter().map(ToString::to_string).collect()
}

fn execute(cli: &Cli, inputs: &mut Inputs) -> Result<Output, Failure> {
    let rule = cli.tie_break;
    let keep = |c: Coupling| cli.witness.then_some(c);
    let mut results = Results::default();
    let mut params: Vec<(&'static str, String)> = Vec::new();
    let witness = match &cli.command {
        Command::BestResponse { instance, pricing } => {
            params.push(("command", "best-response".into()));
            let inst = inputs.instance(instance)?;
            let p = inputs.pricing(pricing)?;
            let br = Adversary::new(&inst).best_response(&p, rule)?;
            sale_fields(&mut results, &inst, &br);
            keep(br.coupling)
        }
        Command::Revenue {
            instance,
            pricing,
            coupling,
        } => {
            params.push(("command", "revenue".into()));
            let inst = inputs.instance(instance)?;
            let p = inputs.pricing(pricing)?;
            let c = inputs.coupling(coupling)?;
            let br = revenue_of_coupling(&inst, &p, &c, rule)?;
            sale_fields(&mut results, &inst, &br);
            keep(br.coupling)
        }
        Command::Report { instance, pricing } => {
            params.push(("command", "report".into()));
            let inst = inputs.instance(instance)?;
            let p = inputs.pricing(pricing)?;
            let rep = maxmin::robust_revenue(&inst, &p, rule)?;
            results
                .put("pricing", pricing_strings(&rep.pricing))
                .rat("robust_revenue", &rep.robust_revenue)
                .rat("comonotonic_revenue", &rep.comonotonic_revenue)
                .rat("myerson_sum_bound", &rep.myerson_sum_bound);
            keep(rep.witness)
        }
        Command::Price(PriceCommand::Mhr { instance }) => {
            params.push(("command", "price mhr".into()));
            let inst = inputs.instance(instance)?;
            let p = max_median_single_price(&inst);
            let br = Adversary::new(&inst).best_response(&p, rule)?;
            results
                .put("pricing", pricing_strings(&p))
                .rat("robust_revenue", &br.revenue)
                .rat("comonotonic_welfare", &comonotonic_welfare(&inst));
            keep(br.coupling)
        }
        Command::Price(PriceCommand::HalfThreshold { instance, set }) => {
            params.push(("command", "price half-threshold".into()));
            params.push(("set", format!("{set:?}")));
            let inst = inputs.instance(instance)?;
            let t: Vec<Rational> = inst.marginals().map(|m| m.max_value().clone()).collect();
            let zero_based = set
                .iter()
                .map(|&j| {
                    j.checked_sub(1)
                        .ok_or_else(|| maxmin::Error::InvalidParams("items are numbered from 1".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let p = half_threshold_pricing(&t, &zero_based)?;
            let br = Adversary::new(&inst).best_response(&p, rule)?;
            results
                .put("pricing", pricing_strings(&p))
                .rats("truncation_points", &t)
                .rat("robust_revenue", &br.revenue);
            keep(br.coupling)
        }
        Command::Search {
            instance,
            max_distinct,
            candidates,
            jobs,
        } => {
            params.push(("command", "search".into()));
            params.push(("max_distinct", format!("{max_distinct:?}")));
            let inst = inputs.instance(instance)?;
            let mut opts = SearchOptions {
                max_distinct: *max_distinct,
                rule,
                jobs: (*jobs).max(1),
                ..SearchOptions::default()
            };
            if let Some(path) = candidates {
                opts.grid = inputs.candidates(path)?;
            }
            if let Some(b) = cli.budget {
                opts.budget = b;
            }
            let out = search_maxmin(&inst, &opts)?;
            results
                .put("label", "best-on-grid")
                .put("pricing", pricing_strings(&out.best.pricing))
                .rat("robust_revenue", &out.best.robust_revenue)
                .rat("comonotonic_revenue", &out.best.comonotonic_revenue)
                .rat("myerson_sum_bound", &out.best.myerson_sum_bound)
                .put("visited", out.visited)
                .put("evaluated", out.evaluated);
            keep(out.best.witness)
        }
        Command::Oracle(OracleCommand::Min { instance, pricing }) => {
            params.push(("command", "oracle min".into()));
            let inst = inputs.instance(instance)?;
            let p = inputs.pricing(pricing)?;
            let mut limits = OracleLimits::default();
            if let Some(b) = cli.budget {
                limits.budget = b;
            }
            let (min, c) = min_revenue_bruteforce_with(&inst, &p, rule, limits)?;
            results.rat("revenue", &min);
            keep(c)
        }
        Command::Gen(g) => return generate(g, inputs).map(Output::Text),
    };
    Ok(Output::Report {
        params,
        results,
        witness,
    })
}

fn generate(g: &GenCommand, inputs: &mut Inputs) -> Result<String, Failure> {
    let inst = match g {
        GenCommand::Mis { graph } => gen_mis(&inputs.graph(graph)?)?,
        GenCommand::Eqrev { n, grid, identical } => match identical {
            Some(e) => gen_identical_eqrev(*n, *e, *grid)?,
            None => gen_truncated_eqrev(*n, *grid)?.0,
        },
        GenCommand::Uniform { m, ranges } => {
            let marginals = ranges
                .iter()
                .map(|r| {
                    let (a, b) = parse_range(r)?;
                    discretize_uniform(&a, &b, *m)
                })
                .collect::<maxmin::Result<Vec<_>>>()?;
            Instance::from_marginals(marginals)?
        }
        GenCommand::Exp { m, q_cap, rates } => {
            let marginals = rates
                .iter()
                .map(|rate| discretize_exponential(rate, *m, q_cap))
                .collect::<maxmin::Result<Vec<_>>>()?;
            Instance::from_marginals(marginals)?
        }
    };
    Ok(serde_json::to_string_pretty(&inst).expect("instances serialize") + "\n")
}

fn parse_range(s: &str) -> maxmin::Result<(Rational, Rational)> {
    let bad = || maxmin::Error::InvalidRange(format!("expected `a:b`, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}
