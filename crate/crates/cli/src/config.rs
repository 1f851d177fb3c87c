//! Run configuration: a TOML file describing the model, its initial
//! conditions and what to write.
//!
//! ```toml
//! backend = "rational"
//! horizon = 64
//!
//! [model]
//! order = 8
//! a = "-1"
//! b = 12
//!
//! [initial]
//! values = ["1", "2", "1", "-1/2", "1", "1/2", "-1/4", "1/2"]
//! ```
//!
//! A coefficient is a single literal, a list of exactly `order` literals
//! (one per strand, repeated), or a formula table `{ formula = "...",
//! period = 16 }`. A bare string that is not a number is read as a formula
//! without a declared period.

use std::path::Path;

use bevholt::figures::{self, Figure, SeedSpec};
use bevholt::{
    periodic_initial_conditions, Backend, CoefficientSequence, Formula, InitialConditions,
    Model, Rational, Scalar,
};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_HORIZON: usize = 100;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BackendChoice {
    Rational,
    Float,
    Complex,
}

impl From<BackendChoice> for Backend {
    fn from(choice: BackendChoice) -> Self {
        match choice {
            BackendChoice::Rational => Backend::Rational,
            BackendChoice::Float => Backend::Float,
            BackendChoice::Complex => Backend::Complex,
        }
    }
}

impl From<Backend> for BackendChoice {
    fn from(backend: Backend) -> Self {
        match backend {
            Backend::Rational => BackendChoice::Rational,
            Backend::Float => BackendChoice::Float,
            Backend::Complex => BackendChoice::Complex,
        }
    }
}

/// A number as written in the file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Integer(i64),
    Float(f64),
    Text(String),
}

impl Literal {
    pub fn text(&self) -> String {
        match self {
            Literal::Integer(i) => i.to_string(),
            Literal::Float(x) => format!("{x:?}"),
            Literal::Text(s) => s.clone(),
        }
    }

    fn parse<T: Scalar>(&self, field: &str) -> Result<T, CliError> {
        T::parse_literal(&self.text()).map_err(|e| CliError::Config(format!("{field}: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientSpec {
    Formula {
        formula: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        period: Option<usize>,
    },
    List(Vec<Literal>),
    Single(Literal),
}

impl CoefficientSpec {
    fn is_formula(&self) -> bool {
        match self {
            CoefficientSpec::Formula { .. } => true,
            CoefficientSpec::List(_) => false,
            CoefficientSpec::Single(lit) => Rational::parse_literal(&lit.text()).is_err(),
        }
    }

    pub fn build<T: Scalar>(&self, order: usize, field: &str) -> Result<CoefficientSequence<T>, CliError> {
        match self {
            CoefficientSpec::Formula { formula, period } => {
                let parsed = Formula::parse(formula)
                    .map_err(|e| CliError::Config(format!("{field}: {e}")))?;
                Ok(CoefficientSequence::sampled(parsed, *period)?)
            }
            CoefficientSpec::List(values) => {
                if values.len() != order {
                    return Err(CliError::Config(format!(
                        "{field}: expected {order} entries (one per strand), got {}",
                        values.len()
                    )));
                }
                let parsed = values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v.parse(&format!("{field}[{i}]")))
                    .collect::<Result<Vec<T>, _>>()?;
                Ok(CoefficientSequence::periodic(parsed)?)
            }
            CoefficientSpec::Single(lit) => match T::parse_literal(&lit.text()) {
                Ok(value) => Ok(CoefficientSequence::Constant(value)),
                Err(_) => {
                    let parsed = Formula::parse(&lit.text())
                        .map_err(|e| CliError::Config(format!("{field}: {e}")))?;
                    Ok(CoefficientSequence::sampled(parsed, None)?)
                }
            },
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeSpec {
    #[default]
    Direct,
    Ecological,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub order: usize,
    #[serde(default)]
    pub mode: ModeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<CoefficientSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<CoefficientSpec>,
    /// Growth rate `μ` (ecological mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<CoefficientSpec>,
    /// Carrying capacity `K` (ecological mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<CoefficientSpec>,
}

impl ModelSpec {
    fn coefficient_specs(&self) -> impl Iterator<Item = &CoefficientSpec> {
        [&self.a, &self.b, &self.growth, &self.capacity]
            .into_iter()
            .flatten()
    }

    pub fn build<T: Scalar>(&self) -> Result<Model<T>, CliError> {
        let k = self.order;
        let mode = self.mode_name();
        fn required<'a>(
            spec: &'a Option<CoefficientSpec>,
            field: &str,
            mode: &str,
        ) -> Result<&'a CoefficientSpec, CliError> {
            spec.as_ref()
                .ok_or_else(|| CliError::Config(format!("{field} is required in {mode} mode")))
        }
        let forbidden = |spec: &Option<CoefficientSpec>, field: &str| match spec {
            Some(_) => Err(CliError::Config(format!("{field} is not used in {mode} mode"))),
            None => Ok(()),
        };
        match self.mode {
            ModeSpec::Direct => {
                forbidden(&self.growth, "model.growth")?;
                forbidden(&self.capacity, "model.capacity")?;
                let a = required(&self.a, "model.a", mode)?.build(k, "model.a")?;
                let b = required(&self.b, "model.b", mode)?.build(k, "model.b")?;
                Ok(Model::new(k, a, b)?)
            }
            ModeSpec::Ecological => {
                forbidden(&self.a, "model.a")?;
                forbidden(&self.b, "model.b")?;
                let growth = required(&self.growth, "model.growth", mode)?.build(k, "model.growth")?;
                let capacity =
                    required(&self.capacity, "model.capacity", mode)?.build(k, "model.capacity")?;
                Ok(Model::ecological(k, growth, capacity)?)
            }
        }
    }

    fn mode_name(&self) -> &'static str {
        match self.mode {
            ModeSpec::Direct => "direct",
            ModeSpec::Ecological => "ecological",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedChoice {
    /// `z_j = (1−A_j)/B_j` for every strand.
    FixedPoints,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Literal>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<SeedChoice>,
}

impl InitialSpec {
    pub fn build<T: Scalar>(&self, model: &Model<T>) -> Result<InitialConditions<T>, CliError> {
        match (&self.values, self.seed) {
            (Some(values), None) => {
                if values.len() != model.order() {
                    return Err(CliError::Config(format!(
                        "initial.values: expected {} entries, got {}",
                        model.order(),
                        values.len()
                    )));
                }
                let parsed = values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v.parse(&format!("initial.values[{i}]")))
                    .collect::<Result<Vec<T>, _>>()?;
                let ic = InitialConditions::new(parsed);
                ic.validate(model)?;
                Ok(ic)
            }
            (None, Some(SeedChoice::FixedPoints)) => Ok(periodic_initial_conditions(model)?),
            _ => Err(CliError::Config(
                "initial: give exactly one of `values` or `seed`".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    PlotData,
    Svg,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::PlotData => "dat",
            OutputFormat::Svg => "svg",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_formats")]
    pub formats: Vec<OutputFormat>,
    #[serde(default = "default_stem")]
    pub stem: String,
}

fn default_formats() -> Vec<OutputFormat> {
    vec![OutputFormat::Csv]
}

fn default_stem() -> String {
    "trajectory".into()
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            formats: default_formats(),
            stem: default_stem(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyChoice {
    Zeta1,
    Zeta2,
    Zeta3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetrySpec {
    pub family: FamilyChoice,
    /// Mode of `λ_n = e^{2πi pn/k}` for `zeta3`.
    #[serde(default)]
    pub p: usize,
    /// Values of the family's coefficient on `n = 0..k`; all ones if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<Literal>>,
    /// Residuals are evaluated for `n = 0..indices`.
    #[serde(default = "default_indices")]
    pub indices: usize,
    /// `z` values of the grid.
    #[serde(default = "default_points")]
    pub points: Vec<Literal>,
}

fn default_indices() -> usize {
    20
}

fn default_points() -> Vec<Literal> {
    ["1", "-1/2", "3/7", "2", "-5/3", "1/9"]
        .iter()
        .map(|s| Literal::Text(s.to_string()))
        .collect()
}

impl SymmetrySpec {
    pub fn seeds<T: Scalar>(&self, order: usize) -> Result<Vec<T>, CliError> {
        match &self.seeds {
            None => Ok(vec![T::one(); order]),
            Some(values) if values.len() != order => Err(CliError::Config(format!(
                "symmetry.seeds: expected {order} entries, got {}",
                values.len()
            ))),
            Some(values) => values
                .iter()
                .enumerate()
                .map(|(i, v)| v.parse(&format!("symmetry.seeds[{i}]")))
                .collect(),
        }
    }

    pub fn points<T: Scalar>(&self) -> Result<Vec<T>, CliError> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, v)| v.parse(&format!("symmetry.points[{i}]")))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<BackendChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub model: ModelSpec,
    pub initial: InitialSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetrySpec>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("configuration serializes")
    }

    /// Rational unless some coefficient is a formula.
    pub fn backend(&self) -> Backend {
        match self.backend {
            Some(choice) => choice.into(),
            None if self.model.coefficient_specs().any(CoefficientSpec::is_formula) => {
                Backend::Float
            }
            None => Backend::Rational,
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon.unwrap_or(DEFAULT_HORIZON)
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(DEFAULT_TOLERANCE)
    }

    /// Fills every defaulted field so the dumped file is self-describing.
    pub fn resolved(mut self) -> Self {
        self.backend = Some(self.backend().into());
        self.horizon = Some(self.horizon());
        self.tolerance = Some(self.tolerance());
        self
    }

    pub fn from_figure(fig: &Figure) -> Self {
        let coefficient = |spec: figures::CoefficientSpec| match spec {
            figures::CoefficientSpec::Literal(s) => CoefficientSpec::Single(Literal::Text(s.into())),
            figures::CoefficientSpec::Formula { source, period } => CoefficientSpec::Formula {
                formula: source.into(),
                period: Some(period),
            },
        };
        let initial = match fig.seed {
            SeedSpec::Literals(values) => InitialSpec {
                values: Some(values.iter().map(|s| Literal::Text(s.to_string())).collect()),
                seed: None,
            },
            SeedSpec::FixedPoints => InitialSpec {
                values: None,
                seed: Some(SeedChoice::FixedPoints),
            },
        };
        RunConfig {
            backend: Some(fig.backend.into()),
            horizon: Some(fig.horizon),
            tolerance: Some(DEFAULT_TOLERANCE),
            model: ModelSpec {
                order: fig.order,
                mode: ModeSpec::Direct,
                a: Some(coefficient(fig.a)),
                b: Some(coefficient(fig.b)),
                growth: None,
                capacity: None,
            },
            initial,
            output: OutputSpec {
                formats: vec![OutputFormat::Csv, OutputFormat::PlotData, OutputFormat::Svg],
                stem: fig.file_stem(),
            },
            symmetry: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bevholt::figures::FIGURES;

    const FIG3: &str = r#"
backend = "rational"
horizon = 64

[model]
order = 8
a = "-1"
b = 12

[initial]
values = ["1", "2", "1", "-1/2", "1", "1/2", "-1/4", "1/2"]
"#;

    #[test]
    fn parses_a_literal_model() {
        let cfg = RunConfig::parse(FIG3).unwrap();
        let model = cfg.model.build::<Rational>().unwrap();
        assert_eq!(model.constant_coefficients(), Some((Rational::from_i64(-1), Rational::from_i64(12))));
        assert_eq!(cfg.initial.build(&model).unwrap().len(), 8);
        assert_eq!(cfg.backend(), Backend::Rational);
    }

    #[test]
    fn dumped_config_rebuilds_the_same_model() {
        let cfg = RunConfig::parse(FIG3).unwrap().resolved();
        let again = RunConfig::parse(&cfg.to_toml()).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(
            cfg.model.build::<Rational>().unwrap(),
            again.model.build::<Rational>().unwrap()
        );
    }

    #[test]
    fn figure_configs_round_trip() {
        for fig in &FIGURES {
            let cfg = RunConfig::from_figure(fig);
            let again = RunConfig::parse(&cfg.to_toml()).unwrap();
            assert_eq!(cfg, again, "figure {}", fig.id);
            assert_eq!(again.backend(), fig.backend);
        }
    }

    #[test]
    fn list_length_must_match_order() {
        let text = FIG3.replace("b = 12", "b = [1, 2, 3]");
        let cfg = RunConfig::parse(&text).unwrap();
        let err = cfg.model.build::<Rational>().unwrap_err();
        assert!(err.to_string().contains("model.b: expected 8 entries"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn formula_strings_select_the_float_backend() {
        let text = FIG3
            .replace("backend = \"rational\"\n", "")
            .replace("a = \"-1\"", "a = { formula = \"3 + sin(n*pi/4)\", period = 8 }");
        let cfg = RunConfig::parse(&text).unwrap();
        assert_eq!(cfg.backend(), Backend::Float);
        let model = cfg.model.build::<f64>().unwrap();
        assert!(model.is_k_periodic());
        assert!(cfg.model.build::<Rational>().is_err());
    }

    #[test]
    fn ecological_mode_needs_growth_and_capacity() {
        let text = r#"
[model]
order = 2
mode = "ecological"
growth = [2, 4]
capacity = 1

[initial]
seed = "fixed-points"
"#;
        let cfg = RunConfig::parse(text).unwrap();
        let model = cfg.model.build::<Rational>().unwrap();
        assert_eq!(model.a(1), Rational::from_i64(1) / Rational::from_i64(4));
        let seed = cfg.initial.build(&model).unwrap();
        assert_eq!(seed.values(), &[Rational::from_i64(1), Rational::from_i64(1)]);

        let bad = text.replace("growth = [2, 4]", "a = 2");
        let err = RunConfig::parse(&bad).unwrap().model.build::<Rational>().unwrap_err();
        assert!(err.to_string().contains("model.a is not used"), "{err}");
    }

    #[test]
    fn unknown_keys_name_their_line() {
        let err = RunConfig::parse(&FIG3.replace("order = 8", "order = 8\nordr = 3")).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("ordr") && text.contains("line"), "{text}");
    }

    #[test]
    fn initial_needs_exactly_one_source() {
        let text = FIG3.replace("[initial]\n", "[initial]\nseed = \"fixed-points\"\n");
        let cfg = RunConfig::parse(&text).unwrap();
        let model = cfg.model.build::<Rational>().unwrap();
        assert!(cfg.initial.build(&model).is_err());
    }
}
