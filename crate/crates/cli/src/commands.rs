use circle_escape::mellin::{residue_numeric, zeros_for, CLOSED_FORM_MODULI};
use circle_escape::probe::{fluctuation_with, log_grid, q_hole_comparator_with};
use circle_escape::{
    estimate_survival, find_zeros, ComplexValue, Error, HoleConfiguration, MellinModel,
    ProbeOptions, SurvivalEngine,
};

use crate::args::{Args, CliError, Subcommand};
use crate::output::{Cell, Table};
use crate::reference;

pub fn run(args: &Args) -> Result<Table, CliError> {
    match args.command {
        Subcommand::Exact => exact(args),
        Subcommand::Qholes => qholes(args),
        Subcommand::Mellin => mellin(args),
        Subcommand::Residues => residues(args),
        Subcommand::Zeros => zeros(args),
        Subcommand::Simulate => simulate(args),
        Subcommand::Probe => probe(args),
        Subcommand::ReproduceTables => reproduce_tables(args),
    }
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Engine failure, tagged with the parameters that caused it.
fn engine(context: String) -> impl FnOnce(Error) -> CliError {
    move |e| CliError::Runtime(format!("{context}: {e}"))
}

enum Layout {
    Angle(f64),
    Rational(u64, u64),
    Equal(u64),
}

fn layout(args: &Args) -> Result<Layout, CliError> {
    let rational = args.r.is_some() || args.q.is_some();
    let set = [args.theta.is_some(), rational, args.q_holes.is_some()];
    if set.iter().filter(|&&b| b).count() > 1 {
        return Err(config("give at most one of --theta, --r/--q, --q-holes"));
    }
    Ok(if let Some(n) = args.q_holes {
        Layout::Equal(n)
    } else if rational {
        Layout::Rational(args.r.unwrap_or(1), args.q.unwrap_or(1))
    } else {
        Layout::Angle(args.theta.unwrap_or(0.0))
    })
}

fn holes(layout: &Layout, delta: f64) -> Result<HoleConfiguration, CliError> {
    let built = match *layout {
        Layout::Angle(0.0) => HoleConfiguration::one_hole(delta),
        Layout::Angle(t) => HoleConfiguration::two_holes(t, delta),
        Layout::Rational(_, 1) => HoleConfiguration::one_hole(delta),
        Layout::Rational(r, q) => HoleConfiguration::rational(r, q, delta),
        Layout::Equal(n) => HoleConfiguration::equally_spaced(n, delta),
    };
    built.map_err(|e| config(format!("invalid hole configuration (delta = {delta}): {e}")))
}

fn model(layout: &Layout) -> Result<MellinModel, CliError> {
    let built = match *layout {
        Layout::Angle(0.0) => MellinModel::closed_form(1),
        Layout::Angle(t) => {
            return Err(config(format!(
                "transforms need a rational angle; use --r/--q instead of --theta {t}"
            )))
        }
        Layout::Rational(r, q) => MellinModel::for_angle(r, q),
        Layout::Equal(n) => MellinModel::q_holes(n),
    };
    built.map_err(|e| config(e.to_string()))
}

/// `--delta`, or `--count` points on `[--delta-min, --delta-max]`, decreasing.
fn delta_grid(args: &Args, default: (f64, f64, usize)) -> Result<Vec<f64>, CliError> {
    let ranged = args.delta_min.is_some() || args.delta_max.is_some() || args.count.is_some();
    if let Some(d) = args.delta {
        if ranged {
            return Err(config("--delta excludes --delta-min/--delta-max/--count"));
        }
        return Ok(vec![d]);
    }
    let lo = args.delta_min.unwrap_or(default.0);
    let hi = args.delta_max.unwrap_or(default.1);
    let n = args.count.unwrap_or(default.2);
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) || n == 0 || (n == 1 && lo != hi) {
        return Err(config(format!(
            "bad grid: delta-min = {lo}, delta-max = {hi}, count = {n}"
        )));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok(if args.log {
        log_grid(lo, hi, n)
    } else {
        (0..n)
            .map(|i| hi - (hi - lo) * i as f64 / (n - 1) as f64)
            .collect()
    })
}

fn engine_for(grid: &[f64]) -> Result<SurvivalEngine, CliError> {
    let smallest = grid.iter().cloned().fold(f64::INFINITY, f64::min);
    SurvivalEngine::for_delta_min(smallest).map_err(|e| config(format!("delta = {smallest}: {e}")))
}

fn exact(args: &Args) -> Result<Table, CliError> {
    let layout = layout(args)?;
    let grid = delta_grid(args, (0.01, 1.0, 100))?;
    let eng = engine_for(&grid)?;
    let mut t = Table::new(&["delta", "p_infinity", "delta_p_infinity", "terms_used"]);
    for d in grid {
        let h = holes(&layout, d)?;
        let c = eng
            .evaluate(&h)
            .map_err(engine(format!("exact at delta = {d}")))?;
        t.push(vec![
            d.into(),
            c.value.into(),
            (d * c.value).into(),
            c.terms_used.into(),
        ]);
    }
    Ok(t)
}

fn qholes(args: &Args) -> Result<Table, CliError> {
    if args.theta.is_some() || args.r.is_some() {
        return Err(config(
            "qholes takes --q (or --q-holes), not --theta or --r",
        ));
    }
    let q = match (args.q, args.q_holes) {
        (Some(a), Some(b)) if a != b => return Err(config("--q and --q-holes disagree")),
        (a, b) => a.or(b).ok_or_else(|| config("qholes needs --q"))?,
    };
    let grid = delta_grid(args, (0.01, 1.0, 100))?;
    let eng = engine_for(&grid)?;
    let mut t = Table::new(&[
        "q",
        "delta",
        "p_infinity",
        "regrouped",
        "abs_difference",
        "terms_used",
    ]);
    for d in grid {
        let h = holes(&Layout::Equal(q), d)?;
        let ctx = || format!("qholes at q = {q}, delta = {d}");
        let c = eng.evaluate(&h).map_err(engine(ctx()))?;
        let g = eng.q_holes_regrouped(q, d).map_err(engine(ctx()))?;
        t.push(vec![
            q.into(),
            d.into(),
            c.value.into(),
            g.into(),
            (c.value - g).abs().into(),
            c.terms_used.into(),
        ]);
    }
    Ok(t)
}

fn point(args: &Args) -> Result<ComplexValue, CliError> {
    let sigma = args
        .sigma
        .ok_or_else(|| config("mellin needs --sigma (and optionally --tau)"))?;
    Ok(ComplexValue::new(sigma, args.tau.unwrap_or(0.0)))
}

fn mellin(args: &Args) -> Result<Table, CliError> {
    let layout = layout(args)?;
    let s = point(args)?;
    let primary = model(&layout)?;
    let mut models = vec![primary.clone()];
    // The series is an independent evaluator for the tabulated angles too.
    if let Layout::Rational(r, q) = layout {
        if primary.source() != circle_escape::MellinSource::CharacterSeries {
            if let Ok(m) = MellinModel::character_series(r % q.max(1), q) {
                models.push(m);
            }
        }
    }
    let ctx = |m: &MellinModel| {
        format!(
            "{} (r = {}, q = {}) at s = {s}",
            m.source().name(),
            m.r(),
            m.q()
        )
    };
    if args.probe {
        let delta = args.delta.unwrap_or(1.0);
        let mut t = Table::new(&[
            "source",
            "pole_re",
            "pole_im",
            "coefficient_re",
            "coefficient_im",
            "log_coefficient_re",
            "log_coefficient_im",
            "radius",
        ]);
        for m in &models {
            let r = residue_numeric(m, s, delta).map_err(engine(ctx(m)))?;
            t.push(vec![
                m.source().name().into(),
                r.pole.re.into(),
                r.pole.im.into(),
                r.coefficient.re.into(),
                r.coefficient.im.into(),
                r.log_coefficient.re.into(),
                r.log_coefficient.im.into(),
                r.radius.into(),
            ]);
        }
        return Ok(t);
    }
    let mut t = Table::new(&["source", "s_re", "s_im", "value_re", "value_im"]);
    for m in &models {
        let v = m.evaluate(s).map_err(engine(ctx(m)))?;
        t.push(vec![
            m.source().name().into(),
            s.re.into(),
            s.im.into(),
            v.re.into(),
            v.im.into(),
        ]);
    }
    Ok(t)
}

const RESIDUE_COLUMNS: [&str; 6] = ["q", "s", "quantity", "measured", "expected", "abs_error"];

fn residue_report(q: u64) -> Result<Table, CliError> {
    let m = MellinModel::closed_form(q).map_err(|e| config(e.to_string()))?;
    let mut t = Table::new(&RESIDUE_COLUMNS);
    for e in reference::table(q) {
        let s0 = ComplexValue::new(e.s as f64, 0.0);
        let r = residue_numeric(&m, s0, 1.0)
            .map_err(engine(format!("residue of q = {q} at s = {}", e.s)))?;
        let mut row = |quantity: &str, measured: f64, expected: f64| {
            t.push(vec![
                q.into(),
                e.s.into(),
                quantity.into(),
                measured.into(),
                expected.into(),
                (measured - expected).abs().into(),
            ]);
        };
        row("residue", r.coefficient.re, e.constant);
        if let Some(l) = e.log {
            row("log_coefficient", r.log_coefficient.re, l);
        }
    }
    Ok(t)
}

fn residues(args: &Args) -> Result<Table, CliError> {
    if args.r.is_some() || args.theta.is_some() || args.q_holes.is_some() {
        return Err(config("residues takes only --q"));
    }
    match args.q {
        Some(q) => residue_report(q),
        None => {
            let mut t = Table::new(&RESIDUE_COLUMNS);
            for q in CLOSED_FORM_MODULI {
                t.extend(residue_report(q)?);
            }
            Ok(t)
        }
    }
}

fn zeros(args: &Args) -> Result<Table, CliError> {
    let list =
        find_zeros(args.t_max).map_err(|e| config(format!("t-max = {}: {e}", args.t_max)))?;
    let mut t = Table::new(&["index", "ordinate", "multiplicity"]);
    for (i, (&o, &m)) in list.ordinates.iter().zip(&list.multiplicities).enumerate() {
        t.push(vec![(i + 1).into(), o.into(), m.into()]);
    }
    Ok(t)
}

fn simulate(args: &Args) -> Result<Table, CliError> {
    let layout = layout(args)?;
    let delta = args.delta.ok_or_else(|| config("simulate needs --delta"))?;
    let horizon = args.t.ok_or_else(|| config("simulate needs --t"))?;
    let h = holes(&layout, delta)?;
    let est =
        estimate_survival(&h, horizon, args.samples, args.seed, args.streams).map_err(|e| {
            config(format!(
                "simulate (delta = {delta}, t = {horizon}, samples = {}, streams = {}): {e}",
                args.samples, args.streams
            ))
        })?;
    let mut t = Table::new(&[
        "t",
        "samples",
        "survivors",
        "p_hat",
        "std_error",
        "tp_hat",
        "tp_std_error",
        "seed",
        "streams",
        "below_regime",
    ]);
    t.push(vec![
        est.t.into(),
        est.samples.into(),
        est.survivors.into(),
        est.p_hat.into(),
        est.std_error.into(),
        est.tp_hat.into(),
        est.tp_std_error().into(),
        est.seed.into(),
        est.streams.into(),
        est.below_regime.into(),
    ]);
    Ok(t)
}

fn probe(args: &Args) -> Result<Table, CliError> {
    let layout = layout(args)?;
    if args.delta.is_some() {
        return Err(config(
            "probe needs a grid (--delta-min, --delta-max, --count), not --delta",
        ));
    }
    let lo = args.delta_min.unwrap_or(1e-4);
    let hi = args.delta_max.unwrap_or(1e-2);
    let n = args.count.unwrap_or(200);
    if !(lo > 0.0 && hi > lo) || n < 2 {
        return Err(config(format!(
            "bad grid: delta-min = {lo}, delta-max = {hi}, count = {n}"
        )));
    }
    let grid = log_grid(lo, hi, n);
    let opts = ProbeOptions {
        real_pole_cutoff: args.real_poles,
        zero_count: args.zeros,
        ..ProbeOptions::default()
    };
    let zero_list = if args.zeros > 0 {
        Some(
            zeros_for::<f64>(args.zeros)
                .map_err(|e| config(format!("zeros = {}: {e}", args.zeros)))?,
        )
    } else {
        None
    };
    let ctx = format!("probe on [{lo}, {hi}] with {n} points");
    let series = match layout {
        Layout::Equal(q) => q_hole_comparator_with(q, &grid, opts, zero_list.as_ref()),
        _ => fluctuation_with(&model(&layout)?, &grid, opts, zero_list.as_ref()),
    }
    .map_err(engine(ctx))?;
    let mut t = Table::new(&[
        "delta",
        "residual",
        "envelope_exponent",
        "exponent_half_width",
        "sign_changes",
    ]);
    for (&d, &r) in series.deltas.iter().zip(&series.residuals) {
        t.push(vec![
            d.into(),
            r.into(),
            series.envelope_exponent.into(),
            series.exponent_half_width.into(),
            series.sign_changes.into(),
        ]);
    }
    Ok(t)
}

/// Closed forms against quadrature of the exact constant, then every residue.
fn reproduce_tables(_args: &Args) -> Result<Table, CliError> {
    let points = [
        ComplexValue::new(2.0, 0.0),
        ComplexValue::new(2.5, 1.5),
        ComplexValue::new(3.0, -4.0),
        ComplexValue::new(4.0, 0.5),
    ];
    let mut t = Table::new(&[
        "table",
        "q",
        "s_re",
        "s_im",
        "quantity",
        "measured",
        "expected",
        "abs_error",
    ]);
    for q in CLOSED_FORM_MODULI {
        let m = MellinModel::closed_form(q).map_err(|e| config(e.to_string()))?;
        let ctx = || format!("transform check for q = {q}");
        let profile = m.profile(1e-4).map_err(engine(ctx()))?;
        for &s in &points {
            let quad = profile.mellin_transform(s).map_err(engine(ctx()))?;
            let closed = m.evaluate(s).map_err(engine(ctx()))?;
            for (name, a, b) in [("re", quad.re, closed.re), ("im", quad.im, closed.im)] {
                t.push(vec![
                    "transform".into(),
                    q.into(),
                    s.re.into(),
                    s.im.into(),
                    name.into(),
                    a.into(),
                    b.into(),
                    (a - b).abs().into(),
                ]);
            }
        }
    }
    for q in CLOSED_FORM_MODULI {
        for row in residue_report(q)?.rows {
            let mut it = row.into_iter();
            let (qq, s) = (it.next().unwrap(), it.next().unwrap());
            let s_re = match s {
                Cell::Int(v) => Cell::Float(v as f64),
                other => other,
            };
            let mut out = vec!["residue".into(), qq, s_re, 0.0.into()];
            out.extend(it);
            t.push(out);
        }
    }
    Ok(t)
}
