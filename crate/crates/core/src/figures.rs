//! Built-in parameter sets for six reference runs: two `k`-periodic fixed
//! seeds, two `A = −1` orbits, and the two stability regimes.

use crate::analysis::periodic_initial_conditions;
use crate::error::Result;
use crate::formula::Formula;
use crate::model::Model;
use crate::scalar::{Backend, Scalar};
use crate::sequence::CoefficientSequence;
use crate::solver::InitialConditions;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientSpec {
    Literal(&'static str),
    /// Formula in `n`, sampled on one period and repeated.
    Formula {
        source: &'static str,
        period: usize,
    },
}

impl CoefficientSpec {
    pub fn build<T: Scalar>(&self) -> Result<CoefficientSequence<T>> {
        match *self {
            CoefficientSpec::Literal(s) => Ok(CoefficientSequence::Constant(T::parse_literal(s)?)),
            CoefficientSpec::Formula { source, period } => {
                CoefficientSequence::sampled(Formula::parse(source)?, Some(period))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedSpec {
    Literals(&'static [&'static str]),
    /// `z_j = (1−A_j)/B_j`.
    FixedPoints,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Figure {
    pub id: u8,
    pub equation: &'static str,
    pub order: usize,
    pub a: CoefficientSpec,
    pub b: CoefficientSpec,
    pub seed: SeedSpec,
    pub horizon: usize,
    /// Backend the run is meant for: exact where the data allow it.
    pub backend: Backend,
}

const MINUS_ONE_EIGHT: &[&str] = &["1", "2", "1", "-1/2", "1", "1/2", "-1/4", "1/2"];

// Printed as "z_9= 5 z_{10} = 8"; read as two entries.
const MINUS_ONE_FOURTEEN: &[&str] = &[
    "1", "2", "1", "-1/2", "1", "1/2", "-4", "1/2", "11", "5", "8", "-4", "-1/2", "1",
];

const STABILITY_FOURTEEN: &[&str] = &[
    "1", "2", "1", "-1/2", "1", "1/2", "-4", "1/2", "1", "15", "8", "4", "-1/2", "1",
];

pub const FIGURES: [Figure; 6] = [
    Figure {
        id: 1,
        equation: "z(n+16) = z(n) / ((3 + sin(n pi/8)) + (2 + cos(n pi/8)) z(n))",
        order: 16,
        a: CoefficientSpec::Formula {
            source: "3 + sin(n*pi/8)",
            period: 16,
        },
        b: CoefficientSpec::Formula {
            source: "2 + cos(n*pi/8)",
            period: 16,
        },
        seed: SeedSpec::FixedPoints,
        horizon: 300,
        backend: Backend::Float,
    },
    Figure {
        id: 2,
        equation: "z(n+8) = z(n) / ((3 + sin(n pi/4)) + (2 + cos(n pi/4)) z(n))",
        order: 8,
        a: CoefficientSpec::Formula {
            source: "3 + sin(n*pi/4)",
            period: 8,
        },
        b: CoefficientSpec::Formula {
            source: "2 + cos(n*pi/4)",
            period: 8,
        },
        seed: SeedSpec::FixedPoints,
        horizon: 300,
        backend: Backend::Float,
    },
    Figure {
        id: 3,
        equation: "z(n+8) = z(n) / (-1 + 12 z(n))",
        order: 8,
        a: CoefficientSpec::Literal("-1"),
        b: CoefficientSpec::Literal("12"),
        seed: SeedSpec::Literals(MINUS_ONE_EIGHT),
        horizon: 64,
        backend: Backend::Rational,
    },
    Figure {
        id: 4,
        equation: "z(n+14) = z(n) / (-1 + 15 z(n))",
        order: 14,
        a: CoefficientSpec::Literal("-1"),
        b: CoefficientSpec::Literal("15"),
        seed: SeedSpec::Literals(MINUS_ONE_FOURTEEN),
        horizon: 112,
        backend: Backend::Rational,
    },
    Figure {
        id: 5,
        equation: "z(n+14) = z(n) / (14 - 2 z(n))",
        order: 14,
        a: CoefficientSpec::Literal("14"),
        b: CoefficientSpec::Literal("-2"),
        seed: SeedSpec::Literals(STABILITY_FOURTEEN),
        horizon: 600,
        backend: Backend::Float,
    },
    Figure {
        id: 6,
        equation: "z(n+14) = z(n) / (0.25 + 2 z(n))",
        order: 14,
        a: CoefficientSpec::Literal("0.25"),
        b: CoefficientSpec::Literal("2"),
        seed: SeedSpec::Literals(STABILITY_FOURTEEN),
        horizon: 1200,
        backend: Backend::Float,
    },
];

pub fn figure(id: u8) -> Option<&'static Figure> {
    FIGURES.iter().find(|f| f.id == id)
}

impl Figure {
    pub fn model<T: Scalar>(&self) -> Result<Model<T>> {
        Model::new(self.order, self.a.build()?, self.b.build()?)
    }

    pub fn initial_conditions<T: Scalar>(&self, model: &Model<T>) -> Result<InitialConditions<T>> {
        match self.seed {
            SeedSpec::Literals(values) => Ok(InitialConditions::new(
                values
                    .iter()
                    .map(|s| T::parse_literal(s))
                    .collect::<Result<_>>()?,
            )),
            SeedSpec::FixedPoints => periodic_initial_conditions(model),
        }
    }

    pub fn file_stem(&self) -> String {
        format!("figure-{}", self.id)
    }
}
