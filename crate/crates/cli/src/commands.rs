use std::fmt::Write;

use fivedec::decisions::DecisionRegions;
use fivedec::power::{power_wald, reduction, reduction_table, sample_size, whole_percent};
use fivedec::simulation::{run_simulation, run_simulation_with_workers};
use fivedec::{Decision, Hypothesis, NullDistribution, PowerSpec, Procedure, SampleSizeInputs, SimulationConfig, SimulationReport};
use serde_json::{json, Value};

use crate::input::{self, TwoGroups};
use crate::{CliError, DecideArgs, Format, NullKind, PowerArgs, RegionsArgs, SampleSizeArgs, SimulateArgs, TableArgs, SCHEMA_VERSION};

fn only(format: Format, allowed: &[Format], command: &str) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{command} does not support --format {format:?}").to_lowercase()))
    }
}

fn to_json(mut body: Value) -> String {
    body.as_object_mut()
        .expect("json body is an object")
        .insert("schema_version".into(), json!(SCHEMA_VERSION));
    let mut s = serde_json::to_string_pretty(&body).expect("serializable");
    s.push('\n');
    s
}

fn bound(x: f64, p: usize) -> String {
    if x.is_infinite() {
        if x > 0.0 { "+inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.p$}")
    }
}

/// Statement under the reading in which `θ = θ₀` is impossible.
fn jones_tukey_statement(d: Decision, theta0: f64) -> String {
    match d.rejected_if_point_null_impossible() {
        Some(h) => match h.complement() {
            Some(c) => format!("reject {} (H3 impossible) ⇒ accept {}", h.describe(theta0), c.describe(theta0)),
            None => format!("reject {} (H3 impossible)", h.describe(theta0)),
        },
        None => "none rejected".into(),
    }
}

fn procedure_outcome(p: Procedure, regions: &DecisionRegions, t: f64, theta0: f64) -> (Decision, Option<Hypothesis>, String) {
    let d = p.decide(regions, t);
    match p {
        Procedure::JonesTukey => (d, d.rejected_if_point_null_impossible(), jones_tukey_statement(d, theta0)),
        _ => (d, d.rejected(), d.statement(theta0)),
    }
}

pub fn decide(args: &DecideArgs, precision: usize) -> Result<String, CliError> {
    only(args.format, &[Format::Text, Format::Json], "decide")?;
    let src = &args.source;
    let groups: TwoGroups = if let Some(s) = &src.summary {
        input::inline_summary(s, args.theta0)?
    } else if let Some(path) = &src.input {
        input::raw_csv(path, args.theta0)?
    } else if let Some(path) = &src.summary_file {
        input::summary_file(path, args.theta0)?
    } else {
        unreachable!("clap requires one input source")
    };
    let r = &groups.result;
    let regions = DecisionRegions::new(r.null, args.alpha)?;
    let levels = [1.0 - args.alpha, 1.0 - 2.0 * args.alpha];
    let intervals = levels
        .iter()
        .map(|&level| Ok((level, r.confidence_interval(level)?)))
        .collect::<Result<Vec<_>, fivedec::Error>>()?;
    let outcomes: Vec<_> = Procedure::ALL
        .iter()
        .map(|&p| (p, procedure_outcome(p, &regions, r.t_stat, args.theta0)))
        .collect();
    let df = r.null.df();
    let contrast = format!("{} - {}", groups.second.label, groups.first.label);

    if args.format == Format::Json {
        let group = |g: &input::Group| json!({"label": g.label, "n": g.summary.n, "mean": g.summary.mean, "sd": g.summary.sd});
        return Ok(to_json(json!({
            "command": "decide",
            "groups": [group(&groups.first), group(&groups.second)],
            "contrast": contrast,
            "theta0": args.theta0,
            "alpha": args.alpha,
            "estimate": r.estimate,
            "se": r.se,
            "t_stat": r.t_stat,
            "df": df,
            "p_two_sided": r.p_two_sided,
            "boundaries": regions.boundaries,
            "intervals": intervals.iter().map(|(level, (lo, hi))| json!({"level": level, "lower": lo, "upper": hi})).collect::<Vec<_>>(),
            "decisions": outcomes.iter().map(|(p, (d, h, s))| json!({
                "procedure": p.name(),
                "decision": d.index(),
                "rejected": h.map(|h| format!("{h:?}")),
                "statement": s,
            })).collect::<Vec<_>>(),
        })));
    }

    let p = precision;
    let mut out = String::new();
    writeln!(out, "two-sample t-test of θ = {contrast} against θ₀ = {}", args.theta0).unwrap();
    for g in [&groups.first, &groups.second] {
        let s = &g.summary;
        writeln!(out, "  {}: n = {}, mean = {:.p$}, sd = {:.p$}", g.label, s.n, s.mean, s.sd).unwrap();
    }
    writeln!(out, "estimate = {:.p$}, se = {:.p$}", r.estimate, r.se).unwrap();
    match df {
        Some(df) => writeln!(out, "t = {:.p$}, df = {df}, p = {:.p$}", r.t_stat, r.p_two_sided).unwrap(),
        None => writeln!(out, "z = {:.p$}, p = {:.p$}", r.t_stat, r.p_two_sided).unwrap(),
    }
    for (level, (lo, hi)) in &intervals {
        writeln!(out, "{}% CI: [{lo:.p$}, {hi:.p$}]", percent_label(*level)).unwrap();
    }
    let b = regions.boundaries.map(|x| format!("{x:.p$}"));
    writeln!(out, "boundaries at α = {}: {}", args.alpha, b.join(", ")).unwrap();
    for (proc_, (d, _, s)) in &outcomes {
        writeln!(out, "{:<15}decision {}: {s}", format!("{}:", proc_.name()), d.index()).unwrap();
    }
    Ok(out)
}

pub fn power(args: &PowerArgs, precision: usize) -> Result<String, CliError> {
    only(args.format, &[Format::Text, Format::Json], "power")?;
    let targets: Vec<Hypothesis> = match args.target {
        Some(t) => vec![t.into()],
        None => vec![Hypothesis::H1, Hypothesis::H2, Hypothesis::H4, Hypothesis::H5],
    };
    let mut rows = Vec::new();
    for target in targets {
        let spec = PowerSpec {
            alpha: args.alpha,
            effect: args.effect,
            target,
        };
        let psi = power_wald(&spec)?;
        if let Some(w) = spec.warning() {
            eprintln!("warning: {w}");
        }
        rows.push((target, psi));
    }
    if args.format == Format::Json {
        return Ok(to_json(json!({
            "command": "power",
            "alpha": args.alpha,
            "effect": args.effect,
            "power": rows.iter().map(|(h, psi)| json!({"target": format!("{h:?}"), "relation": h.relation(), "psi": psi})).collect::<Vec<_>>(),
        })));
    }
    let p = precision;
    let mut out = String::new();
    for (h, psi) in rows {
        writeln!(out, "P(reject {h:?}: θ{}θ₀) = {psi:.p$}", h.relation()).unwrap();
    }
    Ok(out)
}

pub fn samplesize(args: &SampleSizeArgs, precision: usize) -> Result<String, CliError> {
    only(args.format, &[Format::Text, Format::Json], "samplesize")?;
    let tau = match (args.variance.tau, args.variance.tau_sq) {
        (Some(t), None) => t,
        (None, Some(t2)) if t2 >= 0.0 => t2.sqrt(),
        (None, Some(t2)) => return Err(CliError::Usage(format!("--tau-sq must be non-negative, got {t2}"))),
        _ => unreachable!("clap requires exactly one of --tau and --tau-sq"),
    };
    let inputs = SampleSizeInputs {
        alpha: args.alpha,
        psi: args.power,
        delta: args.delta,
        tau,
    };
    let large = sample_size(&inputs, false)?;
    let strict = sample_size(&inputs, true)?;
    let gain = reduction(args.alpha, args.power)?;
    if args.format == Format::Json {
        return Ok(to_json(json!({
            "command": "samplesize",
            "alpha": args.alpha,
            "power": args.power,
            "delta": args.delta,
            "tau": tau,
            "n_nonstrict": large.n,
            "n_nonstrict_exact": large.n_exact,
            "n_strict": strict.n,
            "n_strict_exact": strict.n_exact,
            "reduction": gain,
            "reduction_percent": whole_percent(gain),
        })));
    }
    let p = precision;
    let mut out = String::new();
    writeln!(out, "non-strict (reject H5): n = {} ({:.p$})", large.n, large.n_exact).unwrap();
    writeln!(out, "strict (reject H4):     n = {} ({:.p$})", strict.n, strict.n_exact).unwrap();
    writeln!(out, "reduction: {}% ({gain:.p$})", whole_percent(gain)).unwrap();
    Ok(out)
}

/// `0.005` -> `"0.5"`, `0.8` -> `"80"`.
fn percent_label(fraction: f64) -> String {
    let s = format!("{:.10}", fraction * 100.0);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn table(args: &TableArgs) -> Result<String, CliError> {
    let cells = reduction_table(&args.alpha, &args.power)?;
    let mut out = String::new();
    match args.format {
        Format::Json => {
            return Ok(to_json(json!({
                "command": "table",
                "alphas": args.alpha,
                "powers": args.power,
                "reduction": cells,
                "percent": cells.iter().map(|row| row.iter().map(|&c| whole_percent(c)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })));
        }
        Format::Tsv => {
            let header: Vec<String> = args.power.iter().map(|p| p.to_string()).collect();
            writeln!(out, "alpha\t{}", header.join("\t")).unwrap();
            for (alpha, row) in args.alpha.iter().zip(&cells) {
                let row: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                writeln!(out, "{alpha}\t{}", row.join("\t")).unwrap();
            }
        }
        Format::Text => {
            write!(out, "{:>8}", "α \\ ψ").unwrap();
            for p in &args.power {
                write!(out, "{:>7}", format!("{}%", percent_label(*p))).unwrap();
            }
            out.push('\n');
            for (alpha, row) in args.alpha.iter().zip(&cells) {
                write!(out, "{:>8}", format!("{}%", percent_label(*alpha))).unwrap();
                for c in row {
                    write!(out, "{:>7}", format!("{}%", whole_percent(*c))).unwrap();
                }
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn simulate_one(cfg: &SimulationConfig, workers: Option<usize>) -> Result<SimulationReport, CliError> {
    Ok(match workers {
        Some(w) => run_simulation_with_workers(cfg, w)?,
        None => run_simulation(cfg)?,
    })
}

pub fn simulate(args: &SimulateArgs, precision: usize) -> Result<String, CliError> {
    only(args.format, &[Format::Text, Format::Json], "simulate")?;
    let cfg = SimulationConfig {
        n_per_group: args.n,
        mean_diff_over_sigma: args.effect,
        alpha: args.alpha,
        trials: args.trials,
        seed: args.seed,
        procedure: args.procedure,
    };
    let p = precision;
    let mut out = String::new();
    if let Some(effects) = &args.effects {
        let mut points = Vec::with_capacity(effects.len());
        for &effect in effects {
            let r = simulate_one(&SimulationConfig { mean_diff_over_sigma: effect, ..cfg }, args.workers)?;
            points.push((effect, r.wrong_rejection_rate, r.wrong_rejection_mc_se));
        }
        if args.format == Format::Json {
            return Ok(to_json(json!({
                "command": "simulate",
                "config": cfg,
                "grid": points.iter().map(|(e, rate, se)| json!({"effect": e, "wrong_rejection_rate": rate, "mc_se": se})).collect::<Vec<_>>(),
            })));
        }
        writeln!(
            out,
            "wrong rejections, {}, n = {} per group, α = {}, {} trials per effect, seed {}",
            cfg.procedure, cfg.n_per_group, cfg.alpha, cfg.trials, cfg.seed
        )
        .unwrap();
        writeln!(out, "{:>10}  {:>10}  {:>10}", "effect", "rate", "mc_se").unwrap();
        for (e, rate, se) in points {
            writeln!(out, "{e:>10}  {rate:>10.p$}  {se:>10.p$}").unwrap();
        }
        return Ok(out);
    }
    let r = simulate_one(&cfg, args.workers)?;
    if args.format == Format::Json {
        let mut body = serde_json::to_value(&r).expect("serializable");
        body.as_object_mut().unwrap().insert("command".into(), json!("simulate"));
        return Ok(to_json(body));
    }
    writeln!(
        out,
        "{}, n = {} per group, effect = {}, α = {}, {} trials, seed {}",
        cfg.procedure, cfg.n_per_group, cfg.mean_diff_over_sigma, cfg.alpha, cfg.trials, cfg.seed
    )
    .unwrap();
    writeln!(out, "{:>8}  {:>9}  {:>9}  {:>9}", "decision", "count", "freq", "mc_se").unwrap();
    for d in Decision::ALL {
        let i = d.index();
        writeln!(out, "{i:>8}  {:>9}  {:>9.p$}  {:>9.p$}", r.counts[&i], r.freq[&i], r.mc_se[&i]).unwrap();
    }
    let (strict, strict_se) = r.freq_of_any(&[Decision::RejectH4, Decision::RejectH5]);
    let (low, low_se) = r.freq_of_any(&[Decision::RejectH1, Decision::RejectH2]);
    writeln!(out, "decision 4 or 5: {strict:.p$} ± {strict_se:.p$}").unwrap();
    writeln!(out, "decision 1 or 2: {low:.p$} ± {low_se:.p$}").unwrap();
    writeln!(out, "wrong-rejection rate: {:.p$} ± {:.p$}", r.wrong_rejection_rate, r.wrong_rejection_mc_se).unwrap();
    Ok(out)
}

pub fn regions(args: &RegionsArgs, precision: usize) -> Result<String, CliError> {
    let null = match args.null {
        NullKind::T => NullDistribution::student_t(args.df)?,
        NullKind::Normal => NullDistribution::StandardNormal,
    };
    let all = args
        .alpha
        .iter()
        .map(|&a| DecisionRegions::new(null, a))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = String::new();
    match args.format {
        Format::Tsv => {
            writeln!(out, "null\talpha\tb1\tb2\tb3\tb4").unwrap();
            for r in &all {
                let b = r.boundaries.map(|x| x.to_string());
                writeln!(out, "{null}\t{}\t{}", r.alpha, b.join("\t")).unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<Value> = all
                .iter()
                .map(|r| {
                    json!({
                        "alpha": r.alpha,
                        "boundaries": r.boundaries,
                        "intervals": r.intervals().iter().map(|iv| json!({
                            "decision": iv.decision.index(),
                            "rejected": iv.decision.rejected().map(|h| format!("{h:?}")),
                            "lower": iv.lower.is_finite().then_some(iv.lower),
                            "upper": iv.upper.is_finite().then_some(iv.upper),
                            "lower_closed": iv.lower_closed,
                            "upper_closed": iv.upper_closed,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            return Ok(to_json(json!({"command": "regions", "null": null, "regions": rows})));
        }
        Format::Text => {
            let p = precision;
            for r in &all {
                writeln!(out, "{null}, α = {}", r.alpha).unwrap();
                for iv in r.intervals() {
                    let open = if iv.lower_closed { '[' } else { '(' };
                    let close = if iv.upper_closed { ']' } else { ')' };
                    let what = match iv.decision.rejected() {
                        Some(h) => format!("reject {h:?}"),
                        None => "none rejected".into(),
                    };
                    writeln!(
                        out,
                        "  decision {}: {open}{}, {}{close}  {what}",
                        iv.decision.index(),
                        bound(iv.lower, p),
                        bound(iv.upper, p)
                    )
                    .unwrap();
                }
            }
        }
    }
    Ok(out)
}
