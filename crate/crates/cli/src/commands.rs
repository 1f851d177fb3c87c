use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;

use bevholt::analysis::PERIOD_TOLERANCE;
use bevholt::figures::{Figure, FIGURES};
use bevholt::{
    classify_all, compare_methods, detect_period, iterate, predict_period, symmetry_residual,
    zeta1_obstruction, Backend, Complex64, Error, FamilyKind, InfinitesimalFamily, Rational,
    Scalar, Trajectory,
};

use crate::config::{FamilyChoice, OutputFormat, OutputSpec, RunConfig};
use crate::error::CliError;
use crate::output;

macro_rules! dispatch {
    ($backend:expr, $func:ident ( $($arg:expr),* )) => {
        match $backend {
            Backend::Rational => $func::<Rational>($($arg),*),
            Backend::Float => $func::<f64>($($arg),*),
            Backend::Complex => $func::<Complex64>($($arg),*),
        }
    };
}

fn write_outputs<T: Scalar>(
    trajectory: &Trajectory<T>,
    spec: &OutputSpec,
    dir: &Path,
    title: &str,
) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for format in &spec.formats {
        let path = dir.join(format!("{}.{}", spec.stem, format.extension()));
        let contents = match format {
            OutputFormat::Csv => output::csv(trajectory),
            OutputFormat::PlotData => output::plot_data(trajectory),
            OutputFormat::Svg => output::svg(trajectory, title),
        };
        output::write_atomic(&path, &contents)?;
        written.push(path);
    }
    Ok(written)
}

fn truncation_error<T: Scalar>(trajectory: &Trajectory<T>) -> Result<(), CliError> {
    match trajectory.truncated_at() {
        None => Ok(()),
        Some(index) => {
            let k = trajectory.order();
            Err(CliError::Singular(format!(
                "A_{0} + B_{0} z_{0} = 0, so z_{index} is undefined; {1} of {2} terms computed",
                index - k,
                trajectory.len(),
                trajectory.horizon()
            )))
        }
    }
}

pub fn simulate(cfg: &RunConfig, out: &Path, w: &mut dyn Write) -> Result<(), CliError> {
    dispatch!(cfg.backend(), simulate_in(cfg, out, w))
}

fn simulate_in<T: Scalar>(cfg: &RunConfig, out: &Path, w: &mut dyn Write) -> Result<(), CliError> {
    let model = cfg.model.build::<T>()?;
    let ic = cfg.initial.build(&model)?;
    let trajectory = iterate(&model, &ic, cfg.horizon())?;
    let title = format!("{} (k = {}, {} backend)", cfg.output.stem, model.order(), T::BACKEND);
    let written = write_outputs(&trajectory, &cfg.output, out, &title)?;
    for path in written {
        writeln!(w, "wrote {}", path.display())?;
    }
    writeln!(w, "{} terms, {} backend", trajectory.len(), T::BACKEND)?;
    truncation_error(&trajectory)
}

pub fn compare(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    dispatch!(cfg.backend(), compare_in(cfg, w))
}

fn compare_in<T: Scalar>(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    let model = cfg.model.build::<T>()?;
    let ic = cfg.initial.build(&model)?;
    let report = compare_methods(&model, &ic, cfg.horizon())?;
    writeln!(
        w,
        "{:<12} {:>9} {:>14} {:>6} {:>15} {:>17}",
        "method", "compared", "max rel. diff", "exact", "first singular", "truncation agrees"
    )?;
    for m in &report.methods {
        let singular = m.first_singular.map_or("-".to_string(), |i| i.to_string());
        writeln!(
            w,
            "{:<12} {:>9} {:>14.3e} {:>6} {:>15} {:>17}",
            m.method.name(),
            m.compared,
            m.max_discrepancy,
            yes_no(m.exact),
            singular,
            yes_no(m.truncation_agrees)
        )?;
        if !m.skipped_strands.is_empty() {
            writeln!(w, "  skipped strands with A_j = 1: {:?}", m.skipped_strands)?;
        }
    }
    if let Some(t) = report.iterate_truncated_at {
        writeln!(w, "iteration stops at index {t} (singular denominator)")?;
    }
    if report.is_consistent::<T>(cfg.tolerance()) {
        Ok(())
    } else if T::is_exact() {
        Err(CliError::Invariant("closed forms disagree with iteration".into()))
    } else {
        Err(CliError::Invariant(format!(
            "closed forms disagree with iteration beyond {:e}",
            cfg.tolerance()
        )))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn symmetry(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    dispatch!(cfg.backend(), symmetry_in(cfg, w))
}

fn symmetry_in<T: Scalar>(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    let spec = cfg
        .symmetry
        .as_ref()
        .ok_or_else(|| CliError::Config("the [symmetry] section is missing".into()))?;
    let model = cfg.model.build::<T>()?;
    let k = model.order();
    let kind = match spec.family {
        FamilyChoice::Zeta1 => FamilyKind::Zeta1,
        FamilyChoice::Zeta2 => FamilyKind::Zeta2,
        FamilyChoice::Zeta3 => FamilyKind::Zeta3 { p: spec.p },
    };
    let seeds = spec.seeds::<T>(k)?;
    let points = spec.points::<T>()?;
    let family = InfinitesimalFamily::build(kind, &model, &seeds, spec.indices + k)?;

    let mut evaluated = 0;
    let mut skipped = 0;
    let mut nonzero = 0;
    let mut worst: f64 = 0.0;
    for n in 0..spec.indices {
        for z in &points {
            match symmetry_residual(&model, &family, n, z) {
                Ok(r) => {
                    evaluated += 1;
                    if !r.is_zero() {
                        nonzero += 1;
                    }
                    worst = worst.max(r.magnitude());
                }
                Err(Error::Domain(_)) => skipped += 1,
                Err(e) => return Err(e.into()),
            }
        }
    }
    writeln!(
        w,
        "family {}: n = 0..{}, {} z values, {evaluated} points evaluated, {skipped} on the forbidden set",
        kind.name(),
        spec.indices,
        points.len()
    )?;
    writeln!(w, "nonzero residuals: {nonzero}")?;
    writeln!(w, "max |residual|: {worst:.3e}")?;
    if kind == FamilyKind::Zeta1 {
        let blocked = (0..spec.indices)
            .filter(|&n| zeta1_obstruction(&model, n).is_ok_and(|o| !o.is_zero()))
            .count();
        writeln!(
            w,
            "A(n+k) B(n) + B(n+k) is nonzero at {blocked} of {} indices",
            spec.indices
        )?;
    }
    let violated = if T::is_exact() {
        nonzero > 0
    } else {
        worst > cfg.tolerance()
    };
    if violated {
        Err(CliError::Invariant(format!(
            "{} does not satisfy the invariance condition (max |residual| {worst:e})",
            kind.name()
        )))
    } else {
        Ok(())
    }
}

pub fn stability(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    dispatch!(cfg.backend(), stability_in(cfg, w))
}

fn stability_in<T: Scalar>(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    let model = cfg.model.build::<T>()?;
    let reports = classify_all(&model)?;
    writeln!(
        w,
        "{:<24} {:<24} {:>10} {:<30} {:>12}",
        "equilibrium", "multiplier", "|lambda|", "classification", "root check"
    )?;
    for r in &reports {
        let modulus = r.roots.first().map_or(f64::NAN, |l| l.norm());
        writeln!(
            w,
            "{:<24} {:<24} {:>10.6} {:<30} {:>12.2e}",
            r.equilibrium.render(),
            r.multiplier.render(),
            modulus,
            r.classification.to_string(),
            r.root_residual()
        )?;
    }
    Ok(())
}

pub fn period(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    dispatch!(cfg.backend(), period_in(cfg, w))
}

fn period_in<T: Scalar>(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), CliError> {
    let model = cfg.model.build::<T>()?;
    let ic = cfg.initial.build(&model)?;
    let trajectory = iterate(&model, &ic, cfg.horizon())?;
    let report = detect_period(&trajectory, cfg.tolerance());
    writeln!(w, "terms examined: {}", report.horizon)?;
    match report.minimal_period {
        Some(p) => {
            writeln!(w, "minimal period: {p} ({})", report.certified_by)?;
            writeln!(w, "max |z(n+{p}) - z(n)|: {:.3e}", report.max_deviation)?;
        }
        None => writeln!(w, "minimal period: none up to {}", report.horizon / 2)?,
    }
    let predicted = predict_period(&model, &ic, cfg.tolerance());
    if let Some(pred) = &predicted {
        if let Some(p) = pred.minimal_period {
            writeln!(w, "predicted: {p} ({})", pred.certified_by)?;
        }
    }
    truncation_error(&trajectory)?;
    if let Some(p) = predicted.and_then(|pred| pred.minimal_period) {
        if 2 * p <= report.horizon && report.minimal_period != Some(p) {
            return Err(CliError::Invariant(format!(
                "predicted period {p}, observed {:?}",
                report.minimal_period
            )));
        }
    }
    Ok(())
}

/// Writes the data, plot and configuration of every built-in figure and
/// returns one summary line per figure.
pub fn figures(out: &Path, w: &mut dyn Write) -> Result<(), CliError> {
    std::fs::create_dir_all(out)?;
    let results: Vec<Result<String, CliError>> = thread::scope(|scope| {
        let handles: Vec<_> = FIGURES
            .iter()
            .map(|fig| scope.spawn(move || run_figure(fig, out)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("figure worker panicked"))
            .collect()
    });
    for result in results {
        writeln!(w, "{}", result?)?;
    }
    Ok(())
}

fn run_figure(fig: &Figure, out: &Path) -> Result<String, CliError> {
    let cfg = RunConfig::from_figure(fig);
    output::write_atomic(&out.join(format!("{}.toml", fig.file_stem())), &cfg.to_toml())?;
    dispatch!(fig.backend, run_figure_in(fig, &cfg, out))
}

fn run_figure_in<T: Scalar>(fig: &Figure, cfg: &RunConfig, out: &Path) -> Result<String, CliError> {
    let model = cfg.model.build::<T>()?;
    let ic = cfg.initial.build(&model)?;
    let trajectory = iterate(&model, &ic, cfg.horizon())?;
    write_outputs(&trajectory, &cfg.output, out, fig.equation)?;
    truncation_error(&trajectory)?;
    let report = detect_period(&trajectory, PERIOD_TOLERANCE);
    let last = trajectory.values().last().expect("nonempty trajectory");
    let period = report
        .minimal_period
        .map_or("no period".to_string(), |p| format!("minimal period {p}"));
    Ok(format!(
        "figure {}: {} terms, {period}, z_{} = {}",
        fig.id,
        trajectory.len(),
        trajectory.len() - 1,
        last.render()
    ))
}
