use std::cmp::Ordering;
use std::path::Path;

use betadyn::admissibility::{beta_n, count, enumerate, is_admissible, make_full, zero_run_table};
use betadyn::cylinders::{concat_length_check, interval, is_full, locate, CylinderInterval};
use betadyn::dimension::{box_count, box_count_points, BoxCountOptions, DimensionFormula, DimensionValue};
use betadyn::expansion::{infinite_expansion_of_one, OneKind};
use betadyn::levelset::{construct_point, make_schedule, residual_witness, LevelSetPoint, Schedule};
use betadyn::numerics::{parse_rational, Enclosure};
use betadyn::paramspace::{
    beta_from_expansion, construct_param_point, is_self_admissible, param_cylinder, param_residual_witness,
    recurrence, ParamTargets,
};
use betadyn::runlength::{
    default_tail_start, erdos_renyi, exponents_from_orbit, exponents_from_runs, limit_estimates, run_profile,
    ExponentEstimate, PointOrbit, RunProfile,
};
use betadyn::{digits, lex_compare, BetaSpec, Word};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::output::{bounds, decimal, float, rational, write_file, Report};

/// Probe depth for deciding whether the expansion of 1 terminates.
const ONE_PROBE_DEPTH: usize = 512;

/// Digits per line in stream files.
const STREAM_WIDTH: usize = 64;

pub fn run(cli: &Cli) -> CliResult<String> {
    let prec = cli.precision;
    let json = cli.json;
    match &cli.command {
        Command::Expand(a) => expand(a, prec, json),
        Command::Admissible(a) => admissible(a, prec, json),
        Command::Enumerate(a) => enumerate_cmd(a, prec, json),
        Command::Cylinder(a) => cylinder(a, prec, json),
        Command::Runlength(a) => runlength(a, prec, json),
        Command::Exponents(a) => exponents(a, prec, json),
        Command::Construct(a) => construct(a, prec, json),
        Command::Witness(a) => witness(a, prec, json),
        Command::ParamAdmissible(a) => param_admissible(a, prec, json),
        Command::ParamCylinder(a) => param_cylinder_cmd(a, prec, json),
        Command::ParamConstruct(a) => param_construct(a, prec, json),
        Command::ParamWitness(a) => param_witness(a, prec, json),
        Command::Formula(a) => formula(a, json),
        Command::Boxcount(a) => boxcount(a, prec, json),
        Command::Montecarlo(a) => montecarlo(a, prec, json),
    }
}

fn with_prec(beta: &BetaSpec, prec: u32) -> BetaSpec {
    beta.with_precision(prec)
}

fn cmp_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn big(n: &BigUint) -> String {
    n.to_string()
}

fn expand(a: &ExpandArgs, prec: u32, json: bool) -> CliResult<String> {
    let beta = with_prec(&a.beta, prec);
    let mut r = Report::new(json);
    r.field("beta", beta.to_string());
    let word = if a.one {
        let one = infinite_expansion_of_one(&beta, ONE_PROBE_DEPTH.max(a.n))?;
        let eps_one = one.eps_one(a.n)?;
        let eps_star = one.eps_star(a.n)?;
        let (status, period) = match one.kind() {
            OneKind::SimpleParry { period, .. } => ("simple-parry", Value::from(period.to_string())),
            OneKind::Aperiodic { certified: true, .. } => ("not-simple-parry", Value::Null),
            OneKind::Aperiodic { certified: false, .. } => ("unknown", Value::Null),
        };
        r.field("value", decimal(&beta.refine(prec), prec))
            .field("n", a.n)
            .field("eps_one", eps_one.to_string())
            .field("eps_star", eps_star.to_string())
            .field("status", status)
            .field("period", period);
        eps_one
    } else {
        let x = a.x.as_ref().expect("clap enforces --x or --one");
        let w = digits(x, &beta, a.n)?;
        r.field("x", rational(x)).field("n", a.n).field("digits", w.to_string());
        w
    };
    if let Some(path) = &a.out {
        write_file(path, &word.to_stream_text(STREAM_WIDTH))?;
    }
    if !json && !a.one {
        return Ok(format!("{word}\n"));
    }
    Ok(r.render())
}

fn admissible(a: &AdmissibleArgs, prec: u32, json: bool) -> CliResult<String> {
    let beta = with_prec(&a.beta, prec);
    let ok = is_admissible(&a.word, &beta)?;
    if !json {
        return Ok(format!("{ok}\n"));
    }
    let star = beta.expansion_of_one().eps_star(a.word.len())?;
    let mut r = Report::new(true);
    r.field("beta", beta.to_string())
        .field("word", a.word.to_string())
        .field("admissible", ok)
        .field("compare_eps_star", cmp_name(lex_compare(&a.word, &star)));
    if ok {
        r.field("full", is_full(&a.word, &beta)?).field("made_full", make_full(&a.word, &beta)?.to_string());
    }
    Ok(r.render())
}

fn enumerate_cmd(a: &EnumerateArgs, prec: u32, json: bool) -> CliResult<String> {
    let beta = with_prec(&a.beta, prec);
    let mut r = Report::new(json);
    r.field("beta", beta.to_string()).field("n", a.n);
    let words = if a.count_only { None } else { Some(enumerate(&beta, a.n)?) };
    let total = match &words {
        Some(ws) => BigUint::from(ws.len()),
        None => count(&beta, a.n)?,
    };
    r.field("count", big(&total));
    if a.gamma {
        let g = zero_run_table(&beta, a.n)?;
        r.field("t", json!(g.t_values())).field("gamma", json!(g.gamma_values()));
    }
    if let Some(ws) = &words {
        let lines: Vec<String> = ws.iter().map(Word::to_string).collect();
        if let Some(path) = &a.out {
            let mut text = format!("# count {}\n", lines.len());
            for l in &lines {
                text.push_str(l);
                text.push('\n');
            }
            write_file(path, &text)?;
        } else if json {
            r.field("words", json!(lines));
        } else {
            let mut s = r.render();
            for l in lines {
                s.push_str(&l);
                s.push('\n');
            }
            return Ok(s);
        }
    }
    Ok(r.render())
}

fn cylinder_fields(r: &mut Report, c: &CylinderInterval, prec: u32) {
    let right = c.left.add(&c.length);
    r.field("word", c.word.to_string())
        .field("order", c.order)
        .field("left", decimal(&c.left, prec))
        .field("right", decimal(&right, prec))
        .field("length", decimal(&c.length, prec))
        .field("full", c.full)
        .field("left_bounds", bounds(&c.left, prec))
        .field("length_bounds", bounds(&c.length, prec));
}

fn cylinder(a: &CylinderArgs, prec: u32, json: bool) -> CliResult<String> {
    let beta = with_prec(&a.beta, prec);
    let c = match (&a.word, &a.x) {
        (Some(w), _) => interval(w, &beta)?,
        (None, Some(x)) => locate(x, &beta, a.n.expect("clap requires --n with --x"))?,
        (None, None) => unreachable!("clap requires --word or --x"),
    };
    let mut r = Report::new(json);
    r.field("beta", beta.to_string());
    cylinder_fields(&mut r, &c, prec);
    if let Some(v) = &a.concat {
        let check = concat_length_check(&c.word, v, &beta)?;
        r.field(
            "concat",
            json!({
                "suffix": v.to_string(),
                "lhs": decimal(&check.lhs, prec),
                "rhs": decimal(&check.rhs, prec),
                "equal": check.equal,
            }),
        );
    }
    Ok(r.render())
}

fn tail_for(depth: usize, tail: Option<usize>) -> usize {
    tail.unwrap_or_else(|| default_tail_start(depth))
}

fn profile_csv(path: &Path, p: &RunProfile, ln_beta: f64) -> CliResult<()> {
    let csv_err = |source| CliError::Csv { path: path.to_path_buf(), source };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["n", "r_n", "r_n/n", "r_n/log_beta_n"]).map_err(csv_err)?;
    for n in 1..=p.depth() {
        let lr = p.log_ratio(n, ln_beta);
        let lr = if lr.is_finite() { lr.to_string() } else { String::new() };
        w.write_record([n.to_string(), p.r(n).to_string(), p.ratio(n).to_string(), lr]).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

fn runlength(a: &RunlengthArgs, prec: u32, json: bool) -> CliResult<String> {
    let beta = with_prec(&a.beta, prec);
    let w = digits(&a.x, &beta, a.n)?;
    let p = run_profile(&w);
    if let Some(path) = &a.profile_out {
        profile_csv(path, &p, beta.ln())?;
    }
    let mut r = Report::new(json);
    r.field("beta", beta.to_string())
        .field("x", rational(&a.x))
        .field("n", a.n)
        .field("r_n", p.r(a.n))
        .field("r_n/n", float(p.ratio(a.n)))
        .field("r_n/log_beta_n", float(p.log_ratio(a.n, beta.ln())));
    if a.n >= 2 {
        let est = limit_estimates(&p, tail_for(a.n, a.tail_start))?;
        r.field("tail_start", est.tail_start).field("liminf", float(est.liminf)).field("limsup", float(est.limsup));
    }
    Ok(r.render())
}

fn exponent_fields(r: &mut Report, e: &ExponentEstimate) {
    r.field("method", e.method.as_str())
        .field("depth", e.depth)
        .field("tail_start", e.tail_start)
        .field("v", float(e.v))
        .field("vhat", float(e.vhat));
}

fn exponents(a: &ExponentsArgs, prec: u32, json: bool) -> CliResult<String> {
    let beta = with_prec(&a.beta, prec);
    let tail = tail_for(a.depth, a.tail_start);
    let e = match a.method {
        Method::Runs => exponents_from_runs(&run_profile(&digits(&a.x, &beta, a.depth)?), tail)?,
        Method::Orbit => exponents_from_orbit(&PointOrbit::new(&beta, a.x.clone())?, a.depth, tail)?,
    };
    let mut r = Report::new(json);
    r.field("beta", beta.to_string()).field("x", rational(&a.x));
    exponent_fields(&mut r, &e);
    Ok(r.render())
}

/// Tail window starting two levels below the top, or the default window for shallow schedules.
fn level_tail(s: &Schedule, len: usize) -> usize {
    let k = s.depth().saturating_sub(2).max(1);
    let t = s.n(k) as usize;
    if t + 1 < len {
        t
    } else {
        default_tail_start(len)
    }
}

fn schedule_json(s: &Schedule) -> Value {
    let rows: Vec<Value> = (1..=s.depth())
        .map(|k| {
            let mut row = json!({ "k": k, "n": s.n(k), "m": s.m(k) });
            if k < s.depth() {
                row["t"] = json!(s.t(k));
                row["p"] = json!(s.p(k));
            }
            row
        })
        .collect();
    json!({
        "a": rational(s.a()),
        "b": rational(s.b()),
        "N": s.big_n(),
        "k0": s.k0(),
        "levels": rows,
        "stolz_value": float(s.stolz_value(s.depth())),
    })
}

fn point_estimates(p: &LevelSetPoint) -> CliResult<(Value, Value)> {
    let prof = run_profile(p.word());
    let tail = level_tail(p.schedule(), p.word().len());
    let est = limit_estimates(&prof, tail)?;
    let ex = exponents_from_runs(&prof, tail)?;
    Ok((
        json!({ "tail_start": tail, "liminf": float(est.liminf), "limsup": float(est.limsup) }),
        json!({ "v": float(ex.v), "vhat": float(ex.vhat) }),
    ))
}

fn construct(a: &ConstructArgs, prec: u32, json: bool) -> CliResult<String> {
    let beta = with_prec(&a.beta, prec);
    let s = make_schedule(&a.a, &a.b, a.big_n as usize, a.depth as usize)?;
    let json = json || a.report == ReportFormat::Json;
    let seeds: Vec<u64> = (0..a.seeds).map(|i| a.seed.wrapping_add(i)).collect();
    let points: Vec<LevelSetPoint> =
        seeds.par_iter().map(|&sd| construct_point(&s, &beta, sd)).collect::<Result<_, _>>()?;
    let p = &points[0];
    if let Some(path) = &a.digits_out {
        write_file(path, &p.point_digits().to_stream_text(STREAM_WIDTH))?;
    }
    let bn = beta_n(&beta, s.big_n())?;
    let levels: Vec<Value> = p
        .levels()
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "start": l.start,
                "end": l.end,
                "g_count": big(&l.g_count),
                "q": big(&l.q),
                "mu_mass": rational(&p.mu_mass(l.level)),
            })
        })
        .collect();
    let local: Vec<Value> = p
        .local_dimension_series()
        .iter()
        .map(|d| json!({ "level": d.level, "n": d.n, "ratio": float(d.ratio), "lo": float(d.lo), "hi": float(d.hi) }))
        .collect();
    let (est, ex) = point_estimates(p)?;
    let mut r = Report::new(json);
    r.field("beta", beta.to_string())
        .field("beta_N", bn.to_string())
        .field("seed", a.seed)
        .field("length", p.word().len())
        .field("schedule", schedule_json(&s))
        .field("levels", levels)
        .field("local_dimension", local)
        .field("local_dimension_target", float(p.local_dimension_target(&bn)))
        .field("tail_estimates", est)
        .field("exponents", ex);
    if points.len() > 1 {
        let rows = points
            .iter()
            .zip(&seeds)
            .map(|(q, sd)| point_estimates(q).map(|(e, _)| json!({ "seed": sd, "tail_estimates": e })))
            .collect::<CliResult<Vec<_>>>()?;
        r.field("seeds", rows);
    }
    Ok(r.render())
}

fn checkpoints(c: &[(BigUint, f64)]) -> Value {
    c.iter().map(|(n, x)| json!({ "n": big(n), "ratio": float(*x) })).collect()
}

fn witness(a: &WitnessArgs, prec: u32, json: bool) -> CliResult<String> {
    let beta = with_prec(&a.beta, prec);
    let w = residual_witness(&beta, &a.target, &a.radius, a.n)?;
    let mut r = Report::new(json);
    r.field("beta", beta.to_string())
        .field("target", rational(&a.target))
        .field("radius", rational(&a.radius))
        .field("level", w.level)
        .field("prefix", w.prefix.to_string())
        .field("n_level", big(&w.n_level))
        .field("m_level", big(&w.m_level))
        .field("n_next", big(&w.n_next))
        .field("t", big(&w.t))
        .field("p", big(&w.p))
        .field("y", bounds(&w.y, prec))
        .field("distance_bound", decimal(&Enclosure::point(w.distance_bound.clone()), prec))
        .field("checkpoints", checkpoints(&w.checkpoints));
    Ok(r.render())
}

fn param_admissible(a: &ParamAdmissibleArgs, prec: u32, json: bool) -> CliResult<String> {
    let ok = is_self_admissible(&a.word);
    if !json {
        return Ok(format!("{ok}\n"));
    }
    let mut r = Report::new(true);
    r.field("word", a.word.to_string()).field("self_admissible", ok);
    if ok {
        let (tau, t) = recurrence(&a.word)?;
        let b = beta_from_expansion(&a.word, prec)?;
        r.field("tau", tau)
            .field("t", t)
            .field("non_recurrent", tau == a.word.len())
            .field("beta", decimal(&b.refine(prec), prec));
    }
    Ok(r.render())
}

fn bound_json(value: &Enclosure, holds: bool, certified: bool, prec: u32) -> Value {
    json!({ "value": decimal(value, prec), "holds": holds, "certified": certified })
}

fn param_cylinder_cmd(a: &ParamCylinderArgs, prec: u32, json: bool) -> CliResult<String> {
    let c = param_cylinder(&a.word, prec)?;
    let lower = if c.word.non_recurrent() {
        bound_json(&c.lower_bound(), c.lower_bound_holds(), c.lower_bound_certified(), prec)
    } else {
        Value::Null
    };
    let mut r = Report::new(json);
    r.field("word", a.word.to_string())
        .field("tau", c.word.tau())
        .field("t", c.word.t())
        .field("non_recurrent", c.word.non_recurrent())
        .field("beta_lower", decimal(&c.beta_lower, prec))
        .field("beta_upper", decimal(&c.beta_upper, prec))
        .field("length", decimal(&c.length(), prec))
        .field(
            "bounds",
            json!({
                "upper": bound_json(&c.upper_bound(), c.upper_bound_holds(), c.upper_bound_certified(), prec),
                "lower_if_nonrecurrent": lower,
            }),
        );
    Ok(r.render())
}

fn param_construct(a: &ParamConstructArgs, prec: u32, json: bool) -> CliResult<String> {
    let b1 = with_prec(&a.beta1, prec);
    let b2 = with_prec(&a.beta2, prec);
    let targets = ParamTargets { a: a.a.clone(), b: a.b.clone(), big_n: a.big_n, depth: a.depth as usize };
    let p = construct_param_point(&targets, &b1, &b2, a.seed)?;
    if let Some(path) = &a.digits_out {
        write_file(path, &p.word().to_stream_text(STREAM_WIDTH))?;
    }
    let levels: Vec<Value> = p
        .levels()
        .iter()
        .map(|l| json!({ "level": l.level, "start": l.start, "end": l.end, "g_count": big(&l.g_count), "q": big(&l.q) }))
        .collect();
    let chain: Vec<Value> = p.chain().iter().map(|c| json!({ "n": c.n, "holds": c.holds })).collect();
    let prof = run_profile(p.word());
    let tail = level_tail(p.schedule(), p.word().len());
    let est = limit_estimates(&prof, tail)?;
    let mut r = Report::new(json);
    r.field("beta1", b1.to_string())
        .field("beta2", b2.to_string())
        .field("N", p.big_n())
        .field("head", p.head().to_string())
        .field("length", p.word().len())
        .field("beta", decimal(p.beta(), prec))
        .field("beta_bounds", bounds(p.beta(), prec))
        .field("in_range", p.in_range())
        .field("schedule", schedule_json(p.schedule()))
        .field("levels", levels)
        .field("chain_holds", p.chain().iter().all(|c| c.holds))
        .field("chain", chain)
        .field(
            "tail_estimates",
            json!({ "tail_start": tail, "liminf": float(est.liminf), "limsup": float(est.limsup) }),
        );
    Ok(r.render())
}

fn param_witness(a: &ParamWitnessArgs, prec: u32, json: bool) -> CliResult<String> {
    let w = param_residual_witness(&a.target, &a.radius, a.n)?;
    let mut r = Report::new(json);
    r.field("target", rational(&a.target))
        .field("radius", rational(&a.radius))
        .field("level", w.level)
        .field("prefix", w.prefix.to_string())
        .field("n_level", big(&w.n_level))
        .field("m_level", big(&w.m_level))
        .field("n_next", big(&w.n_next))
        .field("t", big(&w.t))
        .field("p", big(&w.p))
        .field("beta", bounds(&w.beta, prec))
        .field("distance_bound", decimal(&Enclosure::point(w.distance_bound.clone()), prec))
        .field("checkpoints", checkpoints(&w.checkpoints));
    Ok(r.render())
}

fn formula(a: &FormulaArgs, json: bool) -> CliResult<String> {
    let given = [("a", a.a), ("b", a.b), ("v", a.v), ("vhat", a.vhat)];
    let needed = a.family.params();
    for (name, value) in given {
        if value.is_some() && !needed.contains(&name) {
            return Err(CliError::Usage(format!("--{name} does not apply to family {}", a.family.name())));
        }
    }
    let params = needed
        .iter()
        .map(|name| {
            given
                .iter()
                .find(|(n, _)| n == name)
                .and_then(|(_, v)| *v)
                .ok_or_else(|| CliError::Usage(format!("--{name} is required for family {}", a.family.name())))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    let value = DimensionFormula::new(a.family, params.clone())?.evaluate()?;
    if !json {
        return Ok(match value {
            DimensionValue::Value(v) => format!("{v:.12}\n"),
            DimensionValue::Empty => "empty\n".into(),
            DimensionValue::FullMeasure => "1 (full measure)\n".into(),
        });
    }
    let args: serde_json::Map<String, Value> =
        needed.iter().zip(&params).map(|(n, v)| (n.to_string(), float(*v))).collect();
    let mut r = Report::new(true);
    r.field("family", a.family.name())
        .field("params", Value::Object(args))
        .field("value", value.value().map_or(Value::Null, float))
        .field("empty", value.is_empty())
        .field("full_measure", value == DimensionValue::FullMeasure);
    Ok(r.render())
}

fn read_points(path: &Path) -> CliResult<Vec<BigRational>> {
    let csv_err = |source| CliError::Csv { path: path.to_path_buf(), source };
    let mut rd = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_err)?;
    let mut out = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let Some(field) = rec.get(0).filter(|f| !f.is_empty()) else { continue };
        match parse_rational(field) {
            Ok(x) => out.push(x),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn boxcount(a: &BoxcountArgs, prec: u32, json: bool) -> CliResult<String> {
    if a.nmin > a.nmax {
        return Err(CliError::Usage(format!("--nmin {} exceeds --nmax {}", a.nmin, a.nmax)));
    }
    let beta = with_prec(&a.beta, prec);
    let pts = read_points(&a.points)?;
    let (nmin, nmax) = (a.nmin as usize, a.nmax as usize);
    let opts = BoxCountOptions { trim: a.trim, ..BoxCountOptions::default() };
    let one = BigRational::one();
    let two = &one + &one;
    let (space, rep) = if pts.iter().all(|x| x >= &BigRational::default() && x < &one) {
        ("unit-interval", box_count_points(&pts, &beta, nmin, nmax, opts)?)
    } else if pts.iter().all(|x| x > &one && x < &two) {
        let words = pts
            .par_iter()
            .map(|x| BetaSpec::rational(x.clone())?.expansion_of_one().eps_one(nmax))
            .collect::<Result<Vec<_>, _>>()?;
        ("parameter", box_count(&words, &beta, nmin, nmax, opts)?)
    } else {
        return Err(betadyn::Error::DomainError("points must all lie in [0, 1) or all in (1, 2)".into()).into());
    };
    let mut r = Report::new(json);
    r.field("beta", beta.to_string())
        .field("space", space)
        .field("points", pts.len())
        .field("orders", json!(rep.orders))
        .field("counts", json!(rep.counts))
        .field("fit_orders", json!([rep.fit_orders.0, rep.fit_orders.1]))
        .field("slope", float(rep.slope))
        .field("intercept", float(rep.intercept))
        .field("residual", float(rep.residual));
    Ok(r.render())
}

fn montecarlo(a: &MontecarloArgs, prec: u32, json: bool) -> CliResult<String> {
    let beta = with_prec(&a.beta, prec);
    let rep = erdos_renyi(&beta, a.samples, a.n, a.seed)?;
    let mut r = Report::new(json);
    r.field("beta", beta.to_string())
        .field("samples", rep.samples)
        .field("n", rep.n)
        .field("seed", a.seed)
        .field("mean", float(rep.mean))
        .field("std_dev", float(rep.std_dev))
        .field("min", float(rep.min))
        .field("max", float(rep.max));
    Ok(r.render())
}
