//! The order-`k` Beverton–Holt recurrence `z_{n+k} = z_n / (A_n + B_n z_n)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::formula::{BinOp, Formula};
use crate::scalar::{checked_div, Scalar};
use crate::sequence::{formula_op, CoefficientSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `A_n`, `B_n` given directly; only `A_n ≠ 0` is enforced.
    Math,
    /// Built from growth rate `μ_n > 1` and carrying capacity `K_n > 0`.
    Ecological,
}

/// Growth rate and carrying capacity of an ecological model.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecology<T> {
    pub growth: CoefficientSequence<T>,
    pub capacity: CoefficientSequence<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Model<T> {
    order: usize,
    a: CoefficientSequence<T>,
    b: CoefficientSequence<T>,
    ecology: Option<Ecology<T>>,
}

/// `A_n = 1/μ_n`, `B_n = (μ_n − 1)/(K_n μ_n)`.
pub fn coefficients_from_ecology<T: Scalar>(
    growth: &CoefficientSequence<T>,
    capacity: &CoefficientSequence<T>,
) -> Result<(CoefficientSequence<T>, CoefficientSequence<T>)> {
    for (index, mu) in growth.stored() {
        if mu.is_zero() {
            return Err(Error::Domain(format!("growth rate μ vanishes at index {index}")));
        }
    }
    for (index, k) in capacity.stored() {
        if k.is_zero() {
            return Err(Error::Domain(format!("carrying capacity K vanishes at index {index}")));
        }
    }
    let one = Formula::constant(1.0);
    let a = growth.map(
        |mu| T::one() / mu.clone(),
        |mu| Formula::combine(BinOp::Div, &one, mu),
    );
    let b = growth.zip_with(
        capacity,
        |mu, k| (mu.clone() - T::one()) / (k.clone() * mu.clone()),
        |mu, k| {
            Formula::combine(
                BinOp::Div,
                &Formula::combine(BinOp::Sub, mu, &one),
                &formula_op(BinOp::Mul)(k, mu),
            )
        },
    )?;
    Ok((a, b))
}

fn check_backend<T: Scalar>(seq: &CoefficientSequence<T>, name: &str) -> Result<()> {
    if T::is_exact() && seq.is_sampled() {
        return Err(Error::Config(format!(
            "coefficient {name} is a formula; formulas need the float or complex backend"
        )));
    }
    Ok(())
}

fn check_ecology_value<T: Scalar>(index: usize, mu: &T, k: &T) -> Result<()> {
    let violation = |detail: String| Error::Ecology { index, detail };
    match mu.real_cmp(&T::one()) {
        Some(Ordering::Greater) => {}
        Some(_) => return Err(violation(format!("growth rate μ = {} must exceed 1", mu.render()))),
        None => return Err(violation(format!("growth rate μ = {} is not real", mu.render()))),
    }
    match k.real_cmp(&T::zero()) {
        Some(Ordering::Greater) => Ok(()),
        Some(_) => Err(violation(format!("capacity K = {} must be positive", k.render()))),
        None => Err(violation(format!("capacity K = {} is not real", k.render()))),
    }
}

impl<T: Scalar> Model<T> {
    /// Math-mode model from `A_n` and `B_n` directly.
    pub fn new(order: usize, a: CoefficientSequence<T>, b: CoefficientSequence<T>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        check_backend(&a, "A")?;
        check_backend(&b, "B")?;
        for (index, value) in a.stored() {
            if value.is_zero() {
                return Err(Error::ZeroCoefficient { name: "A", index });
            }
        }
        Ok(Model {
            order,
            a,
            b,
            ecology: None,
        })
    }

    /// Constant-coefficient shorthand.
    pub fn constant(order: usize, a: T, b: T) -> Result<Self> {
        Model::new(
            order,
            CoefficientSequence::Constant(a),
            CoefficientSequence::Constant(b),
        )
    }

    /// Ecological model from growth rate `μ_n` and carrying capacity `K_n`.
    pub fn ecological(
        order: usize,
        growth: CoefficientSequence<T>,
        capacity: CoefficientSequence<T>,
    ) -> Result<Self> {
        check_backend(&growth, "μ")?;
        check_backend(&capacity, "K")?;
        if !growth.is_sampled() && !capacity.is_sampled() {
            let p = crate::sequence::lcm(
                growth.period().unwrap_or(1),
                capacity.period().unwrap_or(1),
            );
            for index in 0..p {
                check_ecology_value(index, &growth.sample(index), &capacity.sample(index))?;
            }
        }
        let (a, b) = coefficients_from_ecology(&growth, &capacity)?;
        let mut model = Model::new(order, a, b)?;
        model.ecology = Some(Ecology { growth, capacity });
        Ok(model)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mode(&self) -> Mode {
        if self.ecology.is_some() {
            Mode::Ecological
        } else {
            Mode::Math
        }
    }

    pub fn ecology(&self) -> Option<&Ecology<T>> {
        self.ecology.as_ref()
    }

    pub fn a_sequence(&self) -> &CoefficientSequence<T> {
        &self.a
    }

    pub fn b_sequence(&self) -> &CoefficientSequence<T> {
        &self.b
    }

    /// `(A_n, B_n)`, checking the per-index model constraints that cannot be
    /// verified up front for formula-defined sequences.
    pub fn coefficients(&self, n: usize) -> Result<(T, T)> {
        let a = self.a.sample(n);
        if a.is_zero() || !a.is_finite() {
            return Err(Error::ZeroCoefficient { name: "A", index: n });
        }
        let b = self.b.sample(n);
        if !b.is_finite() {
            return Err(Error::Domain(format!("coefficient B is not finite at index {n}")));
        }
        if let Some(eco) = &self.ecology {
            if eco.growth.is_sampled() || eco.capacity.is_sampled() {
                check_ecology_value(n, &eco.growth.sample(n), &eco.capacity.sample(n))?;
            }
        }
        Ok((a, b))
    }

    pub fn a(&self, n: usize) -> T {
        self.a.sample(n)
    }

    pub fn b(&self, n: usize) -> T {
        self.b.sample(n)
    }

    /// One application of the map: `z_{n+k} = z / (A_n + B_n z)`.
    pub fn step(&self, z: &T, n: usize) -> Result<T> {
        let (a, b) = self.coefficients(n)?;
        let den = a + b * z.clone();
        checked_div(z, &den).map_err(|reason| Error::Singular {
            index: n,
            z: z.render(),
            reason,
        })
    }

    /// True when both coefficient sequences repeat with period `k`.
    pub fn is_k_periodic(&self) -> bool {
        self.a.is_periodic_with(self.order) && self.b.is_periodic_with(self.order)
    }

    /// `(A, B)` when both coefficients are constant.
    pub fn constant_coefficients(&self) -> Option<(T, T)> {
        Some((self.a.constant_value()?, self.b.constant_value()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::SingularReason;
    use crate::scalar::Rational;

    fn q(s: &str) -> Rational {
        Rational::parse_literal(s).unwrap()
    }

    fn konst(s: &str) -> CoefficientSequence<Rational> {
        CoefficientSequence::Constant(q(s))
    }

    fn periodic(xs: &[&str]) -> CoefficientSequence<Rational> {
        CoefficientSequence::periodic(xs.iter().map(|s| q(s)).collect()).unwrap()
    }

    #[test]
    fn ecology_constant() {
        let (a, b) = coefficients_from_ecology(&konst("2"), &konst("1")).unwrap();
        assert_eq!(a, konst("1/2"));
        assert_eq!(b, konst("1/2"));
    }

    #[test]
    fn ecology_two_periodic() {
        let (a, b) = coefficients_from_ecology(&periodic(&["2", "4"]), &periodic(&["1", "3"])).unwrap();
        assert_eq!(a, periodic(&["1/2", "1/4"]));
        assert_eq!(b, periodic(&["1/2", "1/4"]));
    }

    #[test]
    fn ecology_unit_growth_kills_b() {
        let (a, b) = coefficients_from_ecology(&konst("1"), &konst("1")).unwrap();
        assert_eq!(a, konst("1"));
        assert_eq!(b, konst("0"));
        // μ = 1 is outside the ecological regime.
        assert!(matches!(
            Model::ecological(1, konst("1"), konst("1")),
            Err(Error::Ecology { index: 0, .. })
        ));
    }

    #[test]
    fn ecology_rejects_zero_inputs() {
        let err = coefficients_from_ecology(&periodic(&["2", "0"]), &konst("1")).unwrap_err();
        assert!(err.to_string().contains("index 1"), "{err}");
        let err = coefficients_from_ecology(&konst("2"), &periodic(&["1", "1", "0"])).unwrap_err();
        assert!(err.to_string().contains("index 2"), "{err}");
    }

    #[test]
    fn ecology_with_formula() {
        let growth: CoefficientSequence<f64> =
            CoefficientSequence::sampled(Formula::parse("3 + sin(n)").unwrap(), None).unwrap();
        let model = Model::ecological(2, growth, CoefficientSequence::Constant(2.0)).unwrap();
        for n in 0..10 {
            let mu = 3.0 + (n as f64).sin();
            assert!((model.a(n) - 1.0 / mu).abs() < 1e-15);
            assert!((model.b(n) - (mu - 1.0) / (2.0 * mu)).abs() < 1e-15);
        }
    }

    #[test]
    fn step_examples() {
        let m = Model::constant(1, q("1/2"), q("1/2")).unwrap();
        assert_eq!(m.step(&q("1"), 7).unwrap(), q("1"));

        let m = Model::constant(8, q("-1"), q("12")).unwrap();
        assert_eq!(m.step(&q("1"), 0).unwrap(), q("1/11"));

        let m = Model::constant(1, q("1/2"), q("-1")).unwrap();
        match m.step(&q("1/2"), 3) {
            Err(Error::Singular { index, z, reason }) => {
                assert_eq!(index, 3);
                assert_eq!(z, "1/2");
                assert_eq!(reason, SingularReason::ZeroDenominator);
            }
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn constructor_invariants() {
        assert_eq!(Model::constant(0, q("1"), q("1")), Err(Error::ZeroOrder));
        assert_eq!(
            Model::new(2, periodic(&["1", "0"]), konst("1")),
            Err(Error::ZeroCoefficient { name: "A", index: 1 })
        );
        let formula = CoefficientSequence::sampled(Formula::parse("n").unwrap(), None).unwrap();
        assert!(matches!(
            Model::<Rational>::new(1, formula, konst("1")),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn sampled_zero_coefficient_is_caught_lazily() {
        let a = CoefficientSequence::sampled(Formula::parse("n - 3").unwrap(), None).unwrap();
        let m = Model::<f64>::new(1, a, CoefficientSequence::Constant(1.0)).unwrap();
        assert!(m.step(&2.0, 2).is_ok());
        assert_eq!(
            m.step(&1.0, 3),
            Err(Error::ZeroCoefficient { name: "A", index: 3 })
        );
    }

    #[test]
    fn periodicity_queries() {
        let m = Model::new(4, periodic(&["2", "3"]), konst("1")).unwrap();
        assert!(m.is_k_periodic());
        assert_eq!(m.constant_coefficients(), None);
        let m = Model::new(3, periodic(&["2", "3"]), konst("1")).unwrap();
        assert!(!m.is_k_periodic());
    }
}
