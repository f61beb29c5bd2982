//! The four subcommands, as functions from options to artifacts.

use std::path::PathBuf;

use influence_core::checkerboard::{
    discrepancy, kernel, reversal_count, verify_propagator_constraints, CheckerboardField, Kernel, KernelMethod,
    PropagatorPair, Spinor,
};
use influence_core::kinematics::{
    count_orderings, enumerate_orderings, kinematic_state, net_displacement, random_sequence, rates, sequence_to_path,
    InfluenceSequence, Move, UnorderedInfluenceCount,
};
use influence_core::quantify::{check_coordination, event_coordinates, ChainValuation};
use influence_core::scalar::int;
use influence_core::{ChainId, Rational, Scalar};
use serde_json::{json, Value};

use crate::canonical::float;
use crate::document;
use crate::error::{CliError, ExitKind};
use crate::run::{Artifacts, Outcome, RunConfig, TOLERANCE};
use crate::svg::bar_chart;
use crate::table::{float_cell, rational_cell, Table};

fn exact(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn exact_opt(r: Option<&Rational>) -> Value {
    r.map_or(Value::Null, exact)
}

pub fn validate(input: PathBuf, config: RunConfig) -> Result<Outcome, CliError> {
    let poset = document::load(&input)?;
    let report = poset.validate();
    let mut table = Table::new("violations", &["rule", "message", "events"]);
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    for v in &report.violations {
        let events: Vec<&str> = v.events.iter().map(|e| e.as_str()).collect();
        table.push(vec![v.rule.to_string(), v.message.clone(), events.join(";")]);
        violations.push(json!({"rule": v.rule, "message": v.message, "events": events}));
        notes.push(format!("{}: {}", v.rule, v.message));
    }
    let summary = json!({
        "run": config,
        "ok": report.ok(),
        "events": poset.len(),
        "chains": poset.chain_ids().count(),
        "chain_edges": poset.chain_edge_count(),
        "influence_edges": poset.influence_edges().count(),
        "violations": violations,
    });
    Ok(Outcome {
        artifacts: Artifacts {
            name: "validate",
            report: summary,
            tables: vec![table],
            svg: None,
        },
        status: if report.ok() { ExitKind::Success } else { ExitKind::Domain },
        notes,
    })
}

pub struct QuantifyOptions {
    pub input: PathBuf,
    pub chain: String,
    pub chain2: Option<String>,
    pub mu: Rational,
    /// Chain positions, zero based, over which to check coordination.
    pub coordination: Option<(usize, usize)>,
}

pub fn quantify(opts: QuantifyOptions, config: RunConfig) -> Result<Outcome, CliError> {
    let poset = document::load(&opts.input)?;
    let report = poset.validate();
    if !report.ok() {
        let listing: Vec<String> = report.violations.iter().map(|v| v.message.clone()).collect();
        return Err(CliError::Domain(format!("poset is invalid: {}", listing.join("; "))));
    }
    let p = ChainValuation::new(&poset, &ChainId::from(opts.chain.as_str()), opts.mu.clone())?;
    let q = opts
        .chain2
        .as_deref()
        .map(|c| ChainValuation::new(&poset, &ChainId::from(c), opts.mu.clone()))
        .transpose()?;
    let rows = event_coordinates(&poset, &p, q.as_ref())?;

    let mut table = Table::new("quantify", &["event_id", "p_fwd", "p_bwd", "q_fwd", "q_bwd", "t", "x"]);
    let mut events = Vec::new();
    for r in &rows {
        table.push(vec![
            r.event.to_string(),
            rational_cell(r.p_fwd.as_ref()),
            rational_cell(r.p_bwd.as_ref()),
            rational_cell(r.q_fwd.as_ref()),
            rational_cell(r.q_bwd.as_ref()),
            rational_cell(r.t.as_ref()),
            rational_cell(r.x.as_ref()),
        ]);
        events.push(json!({
            "event_id": r.event.as_str(),
            "p_fwd": exact_opt(r.p_fwd.as_ref()),
            "p_bwd": exact_opt(r.p_bwd.as_ref()),
            "q_fwd": exact_opt(r.q_fwd.as_ref()),
            "q_bwd": exact_opt(r.q_bwd.as_ref()),
            "t": exact_opt(r.t.as_ref()),
            "x": exact_opt(r.x.as_ref()),
        }));
    }
    let coordination = match (&q, opts.coordination) {
        (Some(q), Some((lo, hi))) => {
            let coordinated = check_coordination(&poset, &p, q, lo..=hi)?;
            json!({"from": lo, "to": hi, "coordinated": coordinated})
        }
        (None, Some(_)) => return Err(CliError::Input("--coordination needs --chain2".into())),
        _ => Value::Null,
    };
    let summary = json!({
        "run": config,
        "mode": if q.is_some() { "coordinated" } else { "single-chain" },
        "chain": opts.chain,
        "chain2": opts.chain2,
        "mu": exact(&opts.mu),
        "coordination": coordination,
        "events": events,
    });
    Ok(Outcome::success(Artifacts {
        name: "quantify",
        report: summary,
        tables: vec![table],
        svg: None,
    }))
}

pub enum ParticleSource {
    Counts(u64, u64),
    Sequence(String),
    Random { length: usize, prob_p: f64, seed: u64 },
}

pub struct ParticleOptions {
    pub source: ParticleSource,
    pub initial: Option<Move>,
    pub dp: Option<Rational>,
    pub dq: Option<Rational>,
    pub events: Option<Rational>,
    pub list: bool,
}

pub fn particle(opts: ParticleOptions, config: RunConfig) -> Result<Outcome, CliError> {
    let sequence = match &opts.source {
        ParticleSource::Counts(..) => None,
        ParticleSource::Sequence(s) => Some(s.parse::<InfluenceSequence>()?),
        ParticleSource::Random { length, prob_p, seed } => Some(random_sequence(*length, *prob_p, *seed)?),
    };
    let sequence = sequence.map(|s| match opts.initial {
        Some(h) => s.with_helicity(h),
        None => s,
    });
    let counts = match (&opts.source, &sequence) {
        (ParticleSource::Counts(p, q), _) => UnorderedInfluenceCount::new(*p, *q),
        (_, Some(s)) => s.counts(),
        _ => unreachable!("sequence sources always yield a sequence"),
    };

    let (net_t, net_x) = net_displacement(counts);
    let mut report = serde_json::Map::new();
    report.insert("run".into(), serde_json::to_value(&config).expect("config serializes"));
    report.insert("counts".into(), json!({"p": counts.p, "q": counts.q}));
    report.insert("orderings".into(), Value::String(count_orderings(counts).to_string()));
    report.insert("net_displacement".into(), json!({"t": exact(&net_t), "x": exact(&net_x)}));
    if opts.list {
        let all: Vec<String> = enumerate_orderings(counts)?.iter().map(|s| s.to_string()).collect();
        report.insert("enumeration".into(), json!(all));
    }

    let mut tables = Vec::new();
    let mut svg = None;
    if let Some(seq) = &sequence {
        let path = sequence_to_path(seq, (int(0), int(0)));
        let mut table = Table::new("path", &["step", "t", "x", "move", "beta", "helicity"]);
        for (k, (seg, (t, x))) in path.segments.iter().zip(&path.points[1..]).enumerate() {
            table.push(vec![
                (k + 1).to_string(),
                t.to_string(),
                x.to_string(),
                seg.mv.to_string(),
                seg.beta.to_string(),
                seg.helicity.to_string(),
            ]);
        }
        tables.push(table);
        report.insert("sequence".into(), Value::String(seq.to_string()));
        report.insert("initial_helicity".into(), json!(seq.initial_helicity.map(|h| h.to_string())));
        if seq.initial_helicity.is_some() {
            let r = reversal_count(seq).map_err(|e| CliError::Domain(e.to_string()))?;
            report.insert("reversals".into(), json!(r));
        }
        let bars: Vec<(f64, f64)> = path
            .points
            .iter()
            .map(|(t, x)| (Scalar::to_f64(t), Scalar::to_f64(x)))
            .collect();
        svg = Some(path_svg(&bars));
    }

    match (&opts.dp, &opts.dq) {
        (Some(dp), Some(dq)) => {
            let n = match &opts.events {
                Some(n) => n.clone(),
                None => int(counts.total() as i64),
            };
            let (rp, rq) = rates(&n, dp, dq)?;
            let s = kinematic_state(&rp, &rq)?;
            report.insert(
                "kinematics".into(),
                json!({
                    "events": exact(&n),
                    "dp": exact(dp),
                    "dq": exact(dq),
                    "r_p": exact(&s.r_p),
                    "r_q": exact(&s.r_q),
                    "mass": s.mass.to_string(),
                    "mass_squared": exact(&s.mass_squared()),
                    "mass_value": float(s.mass.to_f64()),
                    "energy": exact(&s.energy),
                    "momentum": exact(&s.momentum),
                    "beta": exact(&s.beta),
                }),
            );
        }
        (None, None) => {}
        _ => return Err(CliError::Input("--dp and --dq must be given together".into())),
    }

    Ok(Outcome::success(Artifacts {
        name: "particle",
        report: Value::Object(report),
        tables,
        svg,
    }))
}

fn path_svg(points: &[(f64, f64)]) -> String {
    use std::fmt::Write;
    let scale = 20.0;
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for (_, x) in points {
        lo = lo.min(*x);
        hi = hi.max(*x);
    }
    let t_max = points.last().map_or(0.0, |p| p.0);
    let width = (hi - lo) * scale + 40.0;
    let height = t_max * scale + 40.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let coords: Vec<String> = points
        .iter()
        .map(|(t, x)| format!("{},{}", 20.0 + (x - lo) * scale, height - 20.0 - t * scale))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
        coords.join(" ")
    );
    out.push_str("</svg>\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Pathsum,
    Matrix,
    Both,
}

pub enum Propagator {
    ZeroMomentum,
    Angle(f64),
    Mass { mass: f64, epsilon: f64 },
}

pub struct CheckerboardOptions {
    pub steps: usize,
    pub propagator: Propagator,
    pub initial: Move,
    pub method: Method,
}

/// Half-unit label of a lattice point: step `t`, site `x` ↦ `(t/2, x/2)`.
fn half(n: i64) -> String {
    float_cell(n as f64 / 2.0)
}

pub fn checkerboard(opts: CheckerboardOptions, config: RunConfig) -> Result<Outcome, CliError> {
    let pp = match opts.propagator {
        Propagator::ZeroMomentum => PropagatorPair::zero_momentum(),
        Propagator::Angle(theta) => PropagatorPair::from_angle(theta)?,
        Propagator::Mass { mass, epsilon } => PropagatorPair::from_mass(mass, epsilon)?,
    };
    let epsilon = match opts.propagator {
        Propagator::Mass { epsilon, .. } => epsilon,
        _ => 1.0,
    };
    let steps = opts.steps;

    let mut totals = Vec::with_capacity(steps + 1);
    let matrix = if opts.method != Method::Pathsum {
        let mut field = CheckerboardField::for_steps(epsilon, steps, Spinor::basis(opts.initial))?;
        totals.push(field.total_probability());
        for _ in 0..steps {
            field.step(&pp)?;
            totals.push(field.total_probability());
        }
        Some(Kernel::from_field(&field))
    } else {
        None
    };
    let pathsum = if opts.method != Method::Matrix {
        let k = kernel(steps, &pp, opts.initial, KernelMethod::PathSum)?;
        if matrix.is_none() {
            for t in 0..steps {
                totals.push(kernel(t, &pp, opts.initial, KernelMethod::PathSum)?.total_probability());
            }
            totals.push(k.total_probability());
        }
        Some(k)
    } else {
        None
    };
    let gap = match (&matrix, &pathsum) {
        (Some(a), Some(b)) => discrepancy(a, b),
        _ => None,
    };
    let final_kernel = matrix.as_ref().or(pathsum.as_ref()).expect("at least one method ran");

    let mut table = Table::new("kernel", &["t", "x", "helicity", "amp_re", "amp_im", "probability"]);
    let mut entries = Vec::new();
    let mut bars: Vec<(f64, f64)> = Vec::new();
    for e in &final_kernel.entries {
        let prob = e.amplitude.born();
        table.push(vec![
            half(steps as i64),
            half(e.x),
            e.helicity.to_string(),
            float_cell(e.amplitude.re),
            float_cell(e.amplitude.im),
            float_cell(prob),
        ]);
        entries.push(json!({
            "x": e.x as f64 / 2.0,
            "helicity": e.helicity.to_string(),
            "re": float(e.amplitude.re),
            "im": float(e.amplitude.im),
            "probability": float(prob),
        }));
        let x = e.x as f64 / 2.0;
        match bars.last_mut() {
            Some((bx, v)) if *bx == x => *v += prob,
            _ => bars.push((x, prob)),
        }
    }
    let mut totals_table = Table::new("totals", &["t", "probability_sum"]);
    for (t, p) in totals.iter().enumerate() {
        totals_table.push(vec![half(t as i64), float_cell(*p)]);
    }
    let worst = totals.iter().map(|p| (p - 1.0).abs()).fold(0.0, f64::max);

    let constraints = verify_propagator_constraints(&pp);
    let checks: Vec<Value> = constraints
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "deviation": float(c.deviation), "passed": c.passed}))
        .collect();
    let report = json!({
        "run": config,
        "steps": steps,
        "epsilon": float(epsilon),
        "elapsed": float(steps as f64 * epsilon),
        "initial_helicity": opts.initial.to_string(),
        "method": match opts.method { Method::Pathsum => "pathsum", Method::Matrix => "matrix", Method::Both => "both" },
        "propagator": {
            "a": float(pp.a()),
            "b": float(pp.b()),
            "phase_alpha": float(pp.phase_alpha()),
            "phase_beta": float(pp.phase_beta()),
            "canonical_gauge": constraints.canonical_gauge,
            "constraints": checks,
            "constraints_passed": constraints.passed(),
        },
        "discrepancy": gap.map_or(Value::Null, float),
        "total_probability": float(final_kernel.total_probability()),
        "max_probability_deviation": float(worst),
        "kernel": entries,
    });

    let mut notes = Vec::new();
    let mut status = ExitKind::Success;
    if let Some(g) = gap {
        notes.push(format!("max componentwise discrepancy between methods: {g:e}"));
        if g > TOLERANCE {
            status = ExitKind::Domain;
            notes.push(format!("discrepancy exceeds tolerance {TOLERANCE:e}"));
        }
    }
    let title = format!("probability after {steps} steps (t = {})", half(steps as i64));
    Ok(Outcome {
        artifacts: Artifacts {
            name: "checkerboard",
            report,
            tables: vec![table, totals_table],
            svg: Some(bar_chart(&title, "x", &bars)),
        },
        status,
        notes,
    })
}
