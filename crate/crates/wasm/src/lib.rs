//! Browser bindings: simulate a model, classify its equilibria, and load
//! the built-in figure presets.
//!
//! Everything runs in the `f64` backend. The plain Rust functions
//! (`run_simulation`, `run_stability`, `preset_fields`) carry the logic and
//! are what the native tests exercise; the `#[wasm_bindgen]` exports only
//! convert errors.

use bevholt::analysis::PERIOD_TOLERANCE;
use bevholt::figures::{self, figure, SeedSpec};
use bevholt::{
    classify_all, detect_period, iterate, periodic_initial_conditions, CoefficientSequence,
    Formula, InitialConditions, Model, Scalar,
};
use wasm_bindgen::prelude::*;

/// Longest trajectory the page may ask for.
pub const MAX_HORIZON: usize = 20_000;

/// Reads a coefficient: one number, a comma-separated list of `order`
/// numbers, or a formula in `n` (repeating every `period` terms if given).
pub fn parse_sequence(
    text: &str,
    order: usize,
    period: Option<usize>,
    name: &str,
) -> Result<CoefficientSequence<f64>, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() > 1 {
        if parts.len() != order {
            return Err(format!("{name}: expected {order} values, got {}", parts.len()));
        }
        let values = parts
            .iter()
            .map(|p| f64::parse_literal(p).map_err(|e| format!("{name}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        return CoefficientSequence::periodic(values).map_err(|e| e.to_string());
    }
    if let Ok(value) = f64::parse_literal(text) {
        return Ok(CoefficientSequence::Constant(value));
    }
    let formula = Formula::parse(text).map_err(|e| format!("{name}: {e}"))?;
    CoefficientSequence::sampled(formula, period).map_err(|e| e.to_string())
}

/// `fixed` seeds every strand at its nonzero fixed point; anything else is
/// a comma-separated list of `order` numbers.
pub fn parse_initial(text: &str, model: &Model<f64>) -> Result<InitialConditions<f64>, String> {
    if text.trim().eq_ignore_ascii_case("fixed") {
        return periodic_initial_conditions(model).map_err(|e| e.to_string());
    }
    let values = text
        .split(',')
        .map(|p| f64::parse_literal(p.trim()).map_err(|e| format!("initial values: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    let ic = InitialConditions::new(values);
    ic.validate(model).map_err(|e| e.to_string())?;
    Ok(ic)
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Run {
    values: Vec<f64>,
    order: usize,
    truncated_at: Option<usize>,
    period: Option<usize>,
    max_deviation: f64,
}

#[wasm_bindgen]
impl Run {
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Index whose denominator vanished, if the run stopped early.
    #[wasm_bindgen(js_name = truncatedAt)]
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    /// Minimal period at relative tolerance 1e-9, if any.
    pub fn period(&self) -> Option<usize> {
        self.period
    }

    #[wasm_bindgen(js_name = maxDeviation)]
    pub fn max_deviation(&self) -> f64 {
        self.max_deviation
    }
}

pub fn run_simulation(
    order: usize,
    a: &str,
    b: &str,
    period: Option<usize>,
    initial: &str,
    horizon: usize,
) -> Result<Run, String> {
    if horizon > MAX_HORIZON {
        return Err(format!("horizon is limited to {MAX_HORIZON} terms"));
    }
    let model = Model::new(
        order,
        parse_sequence(a, order, period, "A")?,
        parse_sequence(b, order, period, "B")?,
    )
    .map_err(|e| e.to_string())?;
    let ic = parse_initial(initial, &model)?;
    let trajectory = iterate(&model, &ic, horizon).map_err(|e| e.to_string())?;
    let report = detect_period(&trajectory, PERIOD_TOLERANCE);
    Ok(Run {
        order,
        truncated_at: trajectory.truncated_at(),
        period: report.minimal_period,
        max_deviation: report.max_deviation,
        values: trajectory.into_values(),
    })
}

#[wasm_bindgen]
pub fn simulate(
    order: usize,
    a: &str,
    b: &str,
    period: Option<usize>,
    initial: &str,
    horizon: usize,
) -> Result<Run, JsError> {
    run_simulation(order, a, b, period, initial, horizon).map_err(|e| JsError::new(&e))
}

#[derive(Debug, Clone)]
struct Row {
    value: f64,
    multiplier: f64,
    classification: String,
    roots: Vec<f64>,
}

/// Equilibria of a constant model with their characteristic roots.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Equilibria {
    rows: Vec<Row>,
}

#[wasm_bindgen]
impl Equilibria {
    pub fn count(&self) -> usize {
        self.rows.len()
    }

    pub fn value(&self, i: usize) -> f64 {
        self.rows[i].value
    }

    pub fn multiplier(&self, i: usize) -> f64 {
        self.rows[i].multiplier
    }

    pub fn classification(&self, i: usize) -> String {
        self.rows[i].classification.clone()
    }

    /// Roots as `[re0, im0, re1, im1, …]`.
    pub fn roots(&self, i: usize) -> Vec<f64> {
        self.rows[i].roots.clone()
    }
}

pub fn run_stability(order: usize, a: &str, b: &str) -> Result<Equilibria, String> {
    let parse = |s: &str, name: &str| f64::parse_literal(s).map_err(|e| format!("{name}: {e}"));
    let model = Model::constant(order, parse(a, "A")?, parse(b, "B")?).map_err(|e| e.to_string())?;
    let reports = classify_all(&model).map_err(|e| e.to_string())?;
    let rows = reports
        .into_iter()
        .map(|r| Row {
            value: r.equilibrium,
            multiplier: r.multiplier,
            classification: r.classification.to_string(),
            roots: r.roots.iter().flat_map(|l| [l.re, l.im]).collect(),
        })
        .collect();
    Ok(Equilibria { rows })
}

#[wasm_bindgen]
pub fn stability(order: usize, a: &str, b: &str) -> Result<Equilibria, JsError> {
    run_stability(order, a, b).map_err(|e| JsError::new(&e))
}

/// Form values reproducing one of the built-in figures.
#[wasm_bindgen(getter_with_clone)]
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub order: usize,
    pub a: String,
    pub b: String,
    pub period: Option<usize>,
    pub initial: String,
    pub horizon: usize,
    pub equation: String,
}

pub fn preset_fields(id: u8) -> Option<Preset> {
    let fig = figure(id)?;
    let mut period = None;
    let mut text = |spec: figures::CoefficientSpec| match spec {
        figures::CoefficientSpec::Literal(s) => s.to_string(),
        figures::CoefficientSpec::Formula { source, period: p } => {
            period = Some(p);
            source.to_string()
        }
    };
    let (a, b) = (text(fig.a), text(fig.b));
    let initial = match fig.seed {
        SeedSpec::Literals(values) => values.join(", "),
        SeedSpec::FixedPoints => "fixed".to_string(),
    };
    Some(Preset {
        order: fig.order,
        a,
        b,
        period,
        initial,
        horizon: fig.horizon,
        equation: fig.equation.to_string(),
    })
}

#[wasm_bindgen]
pub fn preset(id: u8) -> Result<Preset, JsError> {
    preset_fields(id).ok_or_else(|| JsError::new(&format!("no figure {id}")))
}
