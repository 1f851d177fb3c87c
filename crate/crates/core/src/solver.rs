//! Trajectories by direct iteration and by the closed-form solutions.
//!
//! Each strand `z_{kn+j}` of the order-`k` recurrence linearises under
//! `S̃ = 1/z` to `S̃_{n+k} = A_n S̃_n + B_n`, which gives
//!
//! ```text
//! z_{kn+j} = z_j / ( P + z_j S ),
//!     P = ∏_{i<n} A_{ki+j},
//!     S = Σ_{l<n} B_{kl+j} ∏_{l<i<n} A_{ki+j}.
//! ```
//!
//! The specialised forms for `k`-periodic and constant coefficients are
//! geometric sums of the same expression.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{Mode, Model};
use crate::scalar::{checked_div, relative_difference, Scalar};
use crate::trajectory::{Status, Trajectory};

/// Seed values `z_0 … z_{k−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialConditions<T>(Vec<T>);

impl<T: Scalar> InitialConditions<T> {
    pub fn new(values: Vec<T>) -> Self {
        InitialConditions(values)
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> Option<&T> {
        self.0.get(j)
    }

    /// Checks the seed against the model: length `k`, and positivity in
    /// ecological mode.
    pub fn validate(&self, model: &Model<T>) -> Result<()> {
        if self.0.len() != model.order() {
            return Err(Error::Precondition(format!(
                "expected {} initial conditions, got {}",
                model.order(),
                self.0.len()
            )));
        }
        if model.mode() == Mode::Ecological {
            for (j, z) in self.0.iter().enumerate() {
                if z.real_cmp(&T::zero()) != Some(Ordering::Greater) {
                    return Err(Error::Precondition(format!(
                        "ecological initial condition z_{j} = {} must be positive",
                        z.render()
                    )));
                }
            }
        }
        Ok(())
    }
}

impl<T> From<Vec<T>> for InitialConditions<T> {
    fn from(values: Vec<T>) -> Self {
        InitialConditions(values)
    }
}

/// Iterates the recurrence for `horizon` terms, truncating at the first
/// singular denominator.
pub fn iterate<T: Scalar>(
    model: &Model<T>,
    ic: &InitialConditions<T>,
    horizon: usize,
) -> Result<Trajectory<T>> {
    ic.validate(model)?;
    let k = model.order();
    if horizon < k {
        return Err(Error::Precondition(format!(
            "horizon {horizon} is shorter than the order {k}"
        )));
    }
    let mut values = Vec::with_capacity(horizon);
    values.extend_from_slice(ic.values());
    let mut status = Status::Complete;
    for m in k..horizon {
        match model.step(&values[m - k], m - k) {
            Ok(z) => values.push(z),
            Err(Error::Singular { reason, .. }) => {
                status = Status::Truncated { index: m, reason };
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Trajectory::new(k, horizon, values, status))
}

fn check_strand<T: Scalar>(model: &Model<T>, ic: &InitialConditions<T>, j: usize) -> Result<T> {
    if j >= model.order() {
        return Err(Error::Precondition(format!(
            "strand {j} out of range for order {}",
            model.order()
        )));
    }
    ic.validate(model)?;
    Ok(ic.values()[j].clone())
}

/// `(∏_{i<n} a_i, Σ_{l<n} b_l ∏_{l<i<n} a_i)` for one strand, built from
/// the right so every suffix product is formed once.
pub(crate) fn product_and_weighted_sum<T: Scalar>(
    n: usize,
    mut coeffs: impl FnMut(usize) -> Result<(T, T)>,
) -> Result<(T, T)> {
    let mut suffix = T::one();
    let mut sum = T::zero();
    for l in (0..n).rev() {
        let (a, b) = coeffs(l)?;
        sum = sum + b * suffix.clone();
        suffix = suffix * a;
    }
    Ok((suffix, sum))
}

fn strand_quotient<T: Scalar>(z: &T, den: &T, n: usize, j: usize) -> Result<T> {
    checked_div(z, den).map_err(|_| Error::ClosedFormSingular { n, j })
}

/// `z_{kn+j}` from the general closed form. `n = 0` returns `z_j`.
pub fn closed_form_general<T: Scalar>(
    model: &Model<T>,
    ic: &InitialConditions<T>,
    n: usize,
    j: usize,
) -> Result<T> {
    let z = check_strand(model, ic, j)?;
    let k = model.order();
    let (product, sum) = product_and_weighted_sum(n, |l| model.coefficients(k * l + j))?;
    strand_quotient(&z, &(product + z.clone() * sum), n, j)
}

/// The general closed form written in growth rate and carrying capacity.
pub fn closed_form_ecological<T: Scalar>(
    model: &Model<T>,
    ic: &InitialConditions<T>,
    n: usize,
    j: usize,
) -> Result<T> {
    let z = check_strand(model, ic, j)?;
    let eco = model.ecology().ok_or_else(|| {
        Error::Precondition("closed_form_ecological needs an ecological model".into())
    })?;
    let k = model.order();
    let (product, sum) = product_and_weighted_sum(n, |l| {
        let index = k * l + j;
        let mu = eco.growth.sample(index);
        let cap = eco.capacity.sample(index);
        if mu.is_zero() || cap.is_zero() {
            return Err(Error::Domain(format!("μ or K vanishes at index {index}")));
        }
        let inv_mu = T::one() / mu.clone();
        let weight = (mu.clone() - T::one()) / (cap * mu);
        Ok((inv_mu, weight))
    })?;
    strand_quotient(&z, &(product + z.clone() * sum), n, j)
}

/// Geometric-sum form for `k`-periodic coefficients:
/// `(1−A_j) z_j / ((1−A_j) A_j^n + B_j (1−A_j^n) z_j)`.
pub fn closed_form_k_periodic<T: Scalar>(
    model: &Model<T>,
    ic: &InitialConditions<T>,
    n: usize,
    j: usize,
) -> Result<T> {
    let z = check_strand(model, ic, j)?;
    if !model.is_k_periodic() {
        return Err(Error::Precondition(
            "closed_form_k_periodic needs k-periodic coefficients".into(),
        ));
    }
    let (a, b) = model.coefficients(j)?;
    if a.is_one() {
        return Err(Error::Precondition(format!(
            "A_{j} = 1; the geometric form is 0/0 there, use closed_form_general"
        )));
    }
    let one_minus_a = T::one() - a.clone();
    let a_pow = num_traits::pow(a, n);
    let num = one_minus_a.clone() * z.clone();
    let den = one_minus_a * a_pow.clone() + b * (T::one() - a_pow) * z;
    strand_quotient(&num, &den, n, j)
}

/// Constant-coefficient forms: `z_j / (1 + n B z_j)` when `A = 1`, else
/// `z_j / (A^n + z_j B (1−A^n)/(1−A))`.
pub fn closed_form_constant<T: Scalar>(
    model: &Model<T>,
    ic: &InitialConditions<T>,
    n: usize,
    j: usize,
) -> Result<T> {
    let z = check_strand(model, ic, j)?;
    let (a, b) = model.constant_coefficients().ok_or_else(|| {
        Error::Precondition("closed_form_constant needs constant coefficients".into())
    })?;
    let steps = T::from_i64(n as i64);
    let den = if a.is_one() {
        T::one() + steps * b * z.clone()
    } else {
        let a_pow = num_traits::pow(a.clone(), n);
        let geometric = (T::one() - a_pow.clone()) / (T::one() - a);
        a_pow + z.clone() * b * geometric
    };
    strand_quotient(&z, &den, n, j)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    General,
    Ecological,
    KPeriodic,
    Constant,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::General => "general",
            Method::Ecological => "ecological",
            Method::KPeriodic => "k-periodic",
            Method::Constant => "constant",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodComparison {
    pub method: Method,
    /// Indices compared against the iterated trajectory.
    pub compared: usize,
    /// Largest relative difference `|a − b| / max(|a|, |b|)`.
    pub max_discrepancy: f64,
    /// Every compared value was bit-for-bit equal.
    pub exact: bool,
    /// First index at which the closed form was singular.
    pub first_singular: Option<usize>,
    /// The closed form and the iteration stop at the same index.
    pub truncation_agrees: bool,
    /// Strands the method does not apply to (e.g. `A_j = 1` for the
    /// geometric form).
    pub skipped_strands: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub horizon: usize,
    pub iterate_truncated_at: Option<usize>,
    pub methods: Vec<MethodComparison>,
}

impl Comparison {
    pub fn max_discrepancy(&self) -> f64 {
        self.methods
            .iter()
            .map(|m| m.max_discrepancy)
            .fold(0.0, f64::max)
    }

    pub fn all_exact(&self) -> bool {
        self.methods.iter().all(|m| m.exact)
    }

    /// Exact agreement for exact backends, `max_discrepancy ≤ tolerance`
    /// otherwise; truncation points must agree either way.
    pub fn is_consistent<T: Scalar>(&self, tolerance: f64) -> bool {
        let values_ok = if T::is_exact() {
            self.all_exact()
        } else {
            self.max_discrepancy() <= tolerance
        };
        values_ok && self.methods.iter().all(|m| m.truncation_agrees)
    }
}

fn applicable_methods<T: Scalar>(model: &Model<T>) -> Vec<Method> {
    let mut methods = vec![Method::General];
    if model.mode() == Mode::Ecological {
        methods.push(Method::Ecological);
    }
    if model.is_k_periodic() {
        methods.push(Method::KPeriodic);
    }
    if model.constant_coefficients().is_some() {
        methods.push(Method::Constant);
    }
    methods
}

/// Evaluates every applicable closed form at each index of the iterated
/// trajectory and reports the largest discrepancy per method.
pub fn compare_methods<T: Scalar>(
    model: &Model<T>,
    ic: &InitialConditions<T>,
    horizon: usize,
) -> Result<Comparison> {
    let trajectory = iterate(model, ic, horizon)?;
    let k = model.order();
    let truncated = trajectory.truncated_at();
    // Closed forms are scanned up to and including the iteration's stop.
    let scan_end = truncated.map_or(horizon, |t| t + 1);

    let mut methods = Vec::new();
    for method in applicable_methods(model) {
        let skipped_strands: Vec<usize> = match method {
            Method::KPeriodic => (0..k).filter(|&j| model.a(j).is_one()).collect(),
            _ => Vec::new(),
        };
        let mut report = MethodComparison {
            method,
            compared: 0,
            max_discrepancy: 0.0,
            exact: true,
            first_singular: None,
            truncation_agrees: true,
            skipped_strands,
        };
        for m in 0..scan_end {
            let (n, j) = (m / k, m % k);
            if report.skipped_strands.contains(&j) {
                continue;
            }
            let value = match method {
                Method::General => closed_form_general(model, ic, n, j),
                Method::Ecological => closed_form_ecological(model, ic, n, j),
                Method::KPeriodic => closed_form_k_periodic(model, ic, n, j),
                Method::Constant => closed_form_constant(model, ic, n, j),
            };
            match value {
                Ok(v) => {
                    if let Some(reference) = trajectory.get(m) {
                        report.compared += 1;
                        if &v != reference {
                            report.exact = false;
                            report.max_discrepancy =
                                report.max_discrepancy.max(relative_difference(&v, reference));
                        }
                    }
                }
                Err(Error::ClosedFormSingular { .. }) => {
                    report.first_singular = Some(m);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        let expected = truncated.filter(|t| !report.skipped_strands.contains(&(t % k)));
        report.truncation_agrees = report.first_singular == expected;
        methods.push(report);
    }
    Ok(Comparison {
        horizon,
        iterate_truncated_at: truncated,
        methods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::sequence::CoefficientSequence;

    fn q(s: &str) -> Rational {
        Rational::parse_literal(s).unwrap()
    }

    fn qs(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|s| q(s)).collect()
    }

    fn ic(xs: &[&str]) -> InitialConditions<Rational> {
        InitialConditions::new(qs(xs))
    }

    fn fig3() -> (Model<Rational>, InitialConditions<Rational>) {
        (
            Model::constant(8, q("-1"), q("12")).unwrap(),
            ic(&["1", "2", "1", "-1/2", "1", "1/2", "-1/4", "1/2"]),
        )
    }

    #[test]
    fn iterate_harmonic_sequence() {
        let m = Model::constant(1, q("1"), q("1")).unwrap();
        let t = iterate(&m, &ic(&["1"]), 5).unwrap();
        assert_eq!(t.values(), qs(&["1", "1/2", "1/3", "1/4", "1/5"]).as_slice());
        assert!(t.is_complete());
    }

    #[test]
    fn iterate_figure_three_repeats_every_sixteen() {
        let (m, seed) = fig3();
        let t = iterate(&m, &seed, 32).unwrap();
        for n in 0..16 {
            assert_eq!(t.values()[n + 16], t.values()[n]);
        }
        assert_ne!(t.values()[8], t.values()[0]);
    }

    #[test]
    fn iterate_fixed_seed_gives_constant_strands() {
        let a = CoefficientSequence::periodic(qs(&["1/2", "1/3"])).unwrap();
        let b = CoefficientSequence::periodic(qs(&["1/2", "2/3"])).unwrap();
        let m = Model::new(2, a, b).unwrap();
        let t = iterate(&m, &ic(&["1", "1"]), 20).unwrap();
        assert!(t.values().iter().all(|z| *z == q("1")));
    }

    #[test]
    fn iterate_truncates_at_forbidden_set() {
        let m = Model::constant(2, q("1/2"), q("-1")).unwrap();
        // strand 1 hits 1/2 − 1/2 = 0 at its first step.
        let t = iterate(&m, &ic(&["1", "1/2"]), 10).unwrap();
        assert_eq!(t.truncated_at(), Some(3));
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn iterate_preconditions() {
        let m = Model::constant(2, q("1/2"), q("1")).unwrap();
        assert!(matches!(iterate(&m, &ic(&["1"]), 5), Err(Error::Precondition(_))));
        assert!(matches!(iterate(&m, &ic(&["1", "1"]), 1), Err(Error::Precondition(_))));
        let eco = Model::ecological(
            2,
            CoefficientSequence::Constant(q("2")),
            CoefficientSequence::Constant(q("1")),
        )
        .unwrap();
        assert!(matches!(
            iterate(&eco, &ic(&["1", "-1"]), 5),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn closed_form_general_examples() {
        let m = Model::constant(1, q("1/2"), q("1/2")).unwrap();
        assert_eq!(closed_form_general(&m, &ic(&["2"]), 0, 0).unwrap(), q("2"));
        assert_eq!(closed_form_general(&m, &ic(&["2"]), 2, 0).unwrap(), q("8/7"));
        let (m, seed) = fig3();
        assert_eq!(closed_form_general(&m, &seed, 2, 0).unwrap(), q("1"));
        assert!(closed_form_general(&m, &seed, 1, 8).is_err());
    }

    #[test]
    fn closed_form_ecological_examples() {
        let m = Model::ecological(
            1,
            CoefficientSequence::Constant(q("2")),
            CoefficientSequence::Constant(q("1")),
        )
        .unwrap();
        assert_eq!(closed_form_ecological(&m, &ic(&["1"]), 1, 0).unwrap(), q("1"));
        assert_eq!(closed_form_ecological(&m, &ic(&["2"]), 1, 0).unwrap(), q("4/3"));

        let m = Model::ecological(
            2,
            CoefficientSequence::periodic(qs(&["3", "2"])).unwrap(),
            CoefficientSequence::periodic(qs(&["1", "1"])).unwrap(),
        )
        .unwrap();
        let seed = ic(&["5", "7/3"]);
        assert_eq!(closed_form_ecological(&m, &seed, 0, 0).unwrap(), q("5"));
        assert_eq!(closed_form_ecological(&m, &seed, 0, 1).unwrap(), q("7/3"));
        for n in 0..8 {
            for j in 0..2 {
                assert_eq!(
                    closed_form_ecological(&m, &seed, n, j).unwrap(),
                    closed_form_general(&m, &seed, n, j).unwrap()
                );
            }
        }

        let math = Model::constant(1, q("1/2"), q("1/2")).unwrap();
        assert!(matches!(
            closed_form_ecological(&math, &ic(&["1"]), 1, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn closed_form_k_periodic_examples() {
        let m = Model::constant(1, q("1/2"), q("1/2")).unwrap();
        assert_eq!(closed_form_k_periodic(&m, &ic(&["2"]), 0, 0).unwrap(), q("2"));
        assert_eq!(closed_form_k_periodic(&m, &ic(&["2"]), 2, 0).unwrap(), q("8/7"));

        let a = CoefficientSequence::periodic(qs(&["1/2", "3"])).unwrap();
        let b = CoefficientSequence::periodic(qs(&["1/4", "-5"])).unwrap();
        let m = Model::new(2, a, b).unwrap();
        // (1 − A_j)/B_j = 2, 2/5
        let seed = ic(&["2", "2/5"]);
        for n in 0..10 {
            assert_eq!(closed_form_k_periodic(&m, &seed, n, 0).unwrap(), q("2"));
            assert_eq!(closed_form_k_periodic(&m, &seed, n, 1).unwrap(), q("2/5"));
        }

        let unit = Model::constant(1, q("1"), q("1")).unwrap();
        assert!(matches!(
            closed_form_k_periodic(&unit, &ic(&["1"]), 3, 0),
            Err(Error::Precondition(_))
        ));
        let not_periodic = Model::new(
            3,
            CoefficientSequence::periodic(qs(&["2", "3"])).unwrap(),
            CoefficientSequence::Constant(q("1")),
        )
        .unwrap();
        assert!(matches!(
            closed_form_k_periodic(&not_periodic, &ic(&["1", "1", "1"]), 3, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn closed_form_constant_examples() {
        let m = Model::constant(1, q("1"), q("1")).unwrap();
        assert_eq!(closed_form_constant(&m, &ic(&["1"]), 4, 0).unwrap(), q("1/5"));

        let (m, seed) = fig3();
        assert_eq!(closed_form_constant(&m, &seed, 1, 0).unwrap(), q("1/11"));
        assert_eq!(closed_form_constant(&m, &seed, 2, 0).unwrap(), q("1"));

        let m = Model::constant(14, 14.0, -2.0).unwrap();
        let seed = InitialConditions::new(vec![1.0; 14]);
        let far = closed_form_constant(&m, &seed, 40, 0).unwrap();
        assert!(far.abs() < 1e-40, "{far}");
    }

    #[test]
    fn compare_rational_is_exact() {
        let (m, seed) = fig3();
        let report = compare_methods(&m, &seed, 64).unwrap();
        assert_eq!(report.methods.len(), 3);
        assert!(report.all_exact());
        assert_eq!(report.max_discrepancy(), 0.0);
        assert!(report.is_consistent::<Rational>(0.0));
    }

    #[test]
    fn compare_agrees_on_truncation() {
        let m = Model::constant(2, q("1/2"), q("-1")).unwrap();
        let report = compare_methods(&m, &ic(&["1", "1/2"]), 10).unwrap();
        assert_eq!(report.iterate_truncated_at, Some(3));
        for method in &report.methods {
            assert_eq!(method.first_singular, Some(3), "{:?}", method.method);
            assert!(method.truncation_agrees);
        }
    }

    #[test]
    fn compare_skips_unit_strands_for_geometric_form() {
        let a = CoefficientSequence::periodic(qs(&["1", "1/3"])).unwrap();
        let b = CoefficientSequence::periodic(qs(&["2", "1"])).unwrap();
        let m = Model::new(2, a, b).unwrap();
        let report = compare_methods(&m, &ic(&["1", "3"]), 30).unwrap();
        let geometric = report
            .methods
            .iter()
            .find(|r| r.method == Method::KPeriodic)
            .unwrap();
        assert_eq!(geometric.skipped_strands, vec![0]);
        assert!(report.all_exact());
    }
}
