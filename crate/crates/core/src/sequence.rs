use crate::error::{Error, Result};
use crate::formula::{BinOp, Formula};
use crate::scalar::Scalar;

/// A coefficient sequence `c_n`, defined for every `n ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientSequence<T> {
    Constant(T),
    /// `values[n mod values.len()]`.
    Periodic(Vec<T>),
    /// A formula in `n`; evaluated in floating point. When `period` is set
    /// the formula is only evaluated on `0..period` and repeated, so the
    /// sampled values are exactly periodic.
    Sampled {
        formula: Formula,
        period: Option<usize>,
    },
}

impl<T: Scalar> CoefficientSequence<T> {
    pub fn constant(value: T) -> Self {
        CoefficientSequence::Constant(value)
    }

    pub fn periodic(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config("periodic sequence needs at least one value".into()));
        }
        Ok(CoefficientSequence::Periodic(values))
    }

    pub fn sampled(formula: Formula, period: Option<usize>) -> Result<Self> {
        if period == Some(0) {
            return Err(Error::Config("formula period must be positive".into()));
        }
        Ok(CoefficientSequence::Sampled { formula, period })
    }

    pub fn sample(&self, n: usize) -> T {
        match self {
            CoefficientSequence::Constant(c) => c.clone(),
            CoefficientSequence::Periodic(values) => values[n % values.len()].clone(),
            CoefficientSequence::Sampled { formula, period } => {
                let index = period.map_or(n, |p| n % p);
                T::from_f64(formula.eval(index))
            }
        }
    }

    /// A period of the sequence, when one is known.
    pub fn period(&self) -> Option<usize> {
        match self {
            CoefficientSequence::Constant(_) => Some(1),
            CoefficientSequence::Periodic(values) => Some(values.len()),
            CoefficientSequence::Sampled { formula, period } => {
                if formula.is_constant() {
                    Some(1)
                } else {
                    *period
                }
            }
        }
    }

    /// True when `sample(n + k) == sample(n)` for all `n`.
    pub fn is_periodic_with(&self, k: usize) -> bool {
        self.period().is_some_and(|p| k.is_multiple_of(p))
    }

    /// The common value when the sequence is constant.
    pub fn constant_value(&self) -> Option<T> {
        match self {
            CoefficientSequence::Constant(c) => Some(c.clone()),
            CoefficientSequence::Periodic(values) => {
                let first = &values[0];
                values.iter().all(|v| v == first).then(|| first.clone())
            }
            CoefficientSequence::Sampled { formula, .. } => {
                formula.is_constant().then(|| T::from_f64(formula.eval(0)))
            }
        }
    }

    pub fn is_sampled(&self) -> bool {
        matches!(self, CoefficientSequence::Sampled { .. })
    }

    /// Stored values together with their indices; empty for formulas.
    pub(crate) fn stored(&self) -> Vec<(usize, T)> {
        match self {
            CoefficientSequence::Constant(c) => vec![(0, c.clone())],
            CoefficientSequence::Periodic(values) => {
                values.iter().cloned().enumerate().collect()
            }
            CoefficientSequence::Sampled { .. } => Vec::new(),
        }
    }

    fn as_formula(&self) -> Option<Formula> {
        match self {
            CoefficientSequence::Sampled { formula, .. } => Some(formula.clone()),
            _ => self
                .constant_value()
                .map(|c| Formula::constant(c.to_complex().re)),
        }
    }

    /// Index-wise map that keeps the sequence's shape.
    pub(crate) fn map(
        &self,
        op: impl Fn(&T) -> T,
        formula_op: impl Fn(&Formula) -> Formula,
    ) -> Self {
        match self {
            CoefficientSequence::Constant(c) => CoefficientSequence::Constant(op(c)),
            CoefficientSequence::Periodic(values) => {
                CoefficientSequence::Periodic(values.iter().map(op).collect())
            }
            CoefficientSequence::Sampled { formula, period } => CoefficientSequence::Sampled {
                formula: formula_op(formula),
                period: *period,
            },
        }
    }

    /// Index-wise combination that keeps whatever periodicity both sides have.
    pub(crate) fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&T, &T) -> T,
        formula_op: impl Fn(&Formula, &Formula) -> Formula,
    ) -> Result<Self> {
        use CoefficientSequence::*;
        match (self, other) {
            (Constant(x), Constant(y)) => Ok(Constant(op(x, y))),
            (Sampled { .. }, _) | (_, Sampled { .. })
                if self.as_formula().is_some() && other.as_formula().is_some() =>
            {
                let (lhs, rhs) = (self.as_formula().unwrap(), other.as_formula().unwrap());
                let period = match (self.period(), other.period()) {
                    (Some(p), Some(q)) => Some(lcm(p, q)),
                    _ => None,
                };
                CoefficientSequence::sampled(formula_op(&lhs, &rhs), period)
            }
            _ => {
                let (Some(p), Some(q)) = (self.period(), other.period()) else {
                    return Err(Error::Config(
                        "cannot combine a periodic list with an aperiodic formula".into(),
                    ));
                };
                let p = lcm(p, q);
                Ok(Periodic(
                    (0..p).map(|n| op(&self.sample(n), &other.sample(n))).collect(),
                ))
            }
        }
    }
}

pub(crate) fn formula_op(op: BinOp) -> impl Fn(&Formula, &Formula) -> Formula {
    move |a, b| Formula::combine(op, a, b)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(s: &str) -> Rational {
        Rational::parse_literal(s).unwrap()
    }

    #[test]
    fn periodic_sampling_wraps() {
        let s = CoefficientSequence::periodic(vec![q("1"), q("2"), q("3")]).unwrap();
        for n in 0..30 {
            assert_eq!(s.sample(n), s.sample(n % 3));
            assert_eq!(s.sample(n + 3), s.sample(n));
        }
        assert!(s.is_periodic_with(6));
        assert!(!s.is_periodic_with(4));
        assert_eq!(s.constant_value(), None);
    }

    #[test]
    fn sampled_period_is_exact() {
        let f = Formula::parse("3 + sin(n*pi/8)").unwrap();
        let s: CoefficientSequence<f64> = CoefficientSequence::sampled(f.clone(), Some(16)).unwrap();
        assert_eq!(s.sample(16 + 5), s.sample(5));
        let free: CoefficientSequence<f64> = CoefficientSequence::sampled(f, None).unwrap();
        assert_eq!(free.period(), None);
        assert!((free.sample(21) - s.sample(5)).abs() < 1e-14);
    }

    #[test]
    fn constant_detection() {
        let s = CoefficientSequence::periodic(vec![q("1/2"), q("1/2")]).unwrap();
        assert_eq!(s.constant_value(), Some(q("1/2")));
        assert!(CoefficientSequence::<Rational>::periodic(vec![]).is_err());
    }

    #[test]
    fn zip_keeps_periodicity() {
        let a = CoefficientSequence::periodic(vec![q("1"), q("2")]).unwrap();
        let b = CoefficientSequence::periodic(vec![q("1"), q("2"), q("3")]).unwrap();
        let s = a.zip_with(&b, |x, y| x + y, formula_op(BinOp::Add)).unwrap();
        assert_eq!(s.period(), Some(6));
        for n in 0..12 {
            assert_eq!(s.sample(n), a.sample(n) + b.sample(n));
        }
    }
}
