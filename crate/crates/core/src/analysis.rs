//! Periodic orbits and equilibrium stability.
//!
//! For constant coefficients the map `f(z) = z/(A + Bz)` acts on each strand
//! independently, so the characteristic equation at an equilibrium `z̄` is
//! the binomial `λ^k = f'(z̄)`. With `f'(0) = 1/A` and `f'((1−A)/B) = A`
//! (because `A + B z̄ = 1` there), every root has modulus `|f'(z̄)|^{1/k}`
//! and the classification reduces to comparing `|f'(z̄)|` with 1.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::Model;
use crate::scalar::{approx_eq, Scalar};
use crate::solver::InitialConditions;
use crate::trajectory::Trajectory;

/// Relative tolerance used to recognise `(1−A)/B` in the floating backends.
pub const EQUILIBRIUM_MATCH_TOLERANCE: f64 = 1e-9;

/// Default relative tolerance for floating-point period detection.
pub const PERIOD_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    LocallyAsymptoticallyStable,
    Unstable,
    /// Some characteristic root lies on the unit circle.
    NonHyperbolic,
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stability::LocallyAsymptoticallyStable => "locally asymptotically stable",
            Stability::Unstable => "unstable",
            Stability::NonHyperbolic => "non-hyperbolic",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport<T> {
    pub equilibrium: T,
    /// `f'(z̄)`, the only nonzero characteristic coefficient.
    pub multiplier: T,
    pub roots: Vec<Complex64>,
    pub classification: Stability,
}

impl<T: Scalar> EquilibriumReport<T> {
    /// `max_i |λ_i^k − f'(z̄)|`.
    pub fn root_residual(&self) -> f64 {
        root_residual(&self.roots, self.multiplier.to_complex())
    }
}

fn constant_coefficients<T: Scalar>(model: &Model<T>) -> Result<(T, T)> {
    model.constant_coefficients().ok_or_else(|| {
        Error::Precondition("equilibrium analysis needs constant coefficients A and B".into())
    })
}

/// Solutions of `z̄ (A + B z̄ − 1) = 0`.
pub fn equilibria<T: Scalar>(model: &Model<T>) -> Result<Vec<T>> {
    let (a, b) = constant_coefficients(model)?;
    if b.is_zero() || a.is_one() {
        return Ok(vec![T::zero()]);
    }
    Ok(vec![T::zero(), (T::one() - a) / b])
}

/// `f'(z̄)` at an equilibrium: `1/A` at zero, `A` at `(1−A)/B`.
pub fn multiplier<T: Scalar>(model: &Model<T>, equilibrium: &T) -> Result<T> {
    let (a, b) = constant_coefficients(model)?;
    if a.is_zero() {
        return Err(Error::ZeroCoefficient { name: "A", index: 0 });
    }
    if equilibrium.is_zero() {
        return Ok(T::one() / a);
    }
    if !b.is_zero() {
        let nonzero = (T::one() - a.clone()) / b;
        if approx_eq(equilibrium, &nonzero, EQUILIBRIUM_MATCH_TOLERANCE) {
            return Ok(a);
        }
    }
    Err(Error::Domain(format!(
        "{} is not an equilibrium of the model",
        equilibrium.render()
    )))
}

/// `p_0 … p_{k−1}` of `λ^k − p_{k−1}λ^{k−1} − … − p_0`; only `p_0` is nonzero.
pub fn characteristic_coefficients<T: Scalar>(model: &Model<T>, equilibrium: &T) -> Result<Vec<T>> {
    let m = multiplier(model, equilibrium)?;
    let mut p = vec![T::zero(); model.order()];
    p[0] = m;
    Ok(p)
}

/// The `k` roots of `λ^k = m`.
pub fn binomial_roots(m: Complex64, k: usize) -> Vec<Complex64> {
    let (r, theta) = m.to_polar();
    let modulus = r.powf(1.0 / k as f64);
    (0..k)
        .map(|j| Complex64::from_polar(modulus, (theta + 2.0 * PI * j as f64) / k as f64))
        .collect()
}

/// `max_i |λ_i^k − m|`.
pub fn root_residual(roots: &[Complex64], m: Complex64) -> f64 {
    let k = roots.len() as u32;
    roots
        .iter()
        .map(|l| (l.powu(k) - m).norm())
        .fold(0.0, f64::max)
}

pub fn characteristic_roots<T: Scalar>(model: &Model<T>, equilibrium: &T) -> Result<Vec<Complex64>> {
    let m = multiplier(model, equilibrium)?;
    Ok(binomial_roots(m.to_complex(), model.order()))
}

pub fn classify<T: Scalar>(model: &Model<T>, equilibrium: &T) -> Result<EquilibriumReport<T>> {
    let m = multiplier(model, equilibrium)?;
    let roots = binomial_roots(m.to_complex(), model.order());
    // |λ| = |m|^{1/k}, so the comparison is made on m without rounding.
    let classification = match m.modulus_cmp_one() {
        std::cmp::Ordering::Less => Stability::LocallyAsymptoticallyStable,
        std::cmp::Ordering::Greater => Stability::Unstable,
        std::cmp::Ordering::Equal => Stability::NonHyperbolic,
    };
    Ok(EquilibriumReport {
        equilibrium: equilibrium.clone(),
        multiplier: m,
        roots,
        classification,
    })
}

/// Classifies every equilibrium of a constant-coefficient model.
pub fn classify_all<T: Scalar>(model: &Model<T>) -> Result<Vec<EquilibriumReport<T>>> {
    equilibria(model)?
        .iter()
        .map(|z| classify(model, z))
        .collect()
}

/// `Σ|p_i| < 1`, which confines all characteristic roots to the open unit
/// disk. `false` is inconclusive.
pub fn sufficient_stability(p: &[f64]) -> bool {
    p.iter().map(|x| x.abs()).sum::<f64>() < 1.0
}

/// How a period was established.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Certificate {
    /// Exact equality over the whole window (rational backend).
    ExactEquality,
    /// Relative tolerance over the whole window.
    Tolerance(f64),
    /// `k`-periodic coefficients seeded at `z_j = (1−A_j)/B_j`.
    FixedSeed,
    /// Constant coefficients seeded at the nonzero equilibrium.
    ConstantEquilibrium,
    /// `A = −1`: each strand map is an involution, period `2k`.
    Involution,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::ExactEquality => f.write_str("exact equality"),
            Certificate::Tolerance(eps) => write!(f, "relative tolerance {eps:e}"),
            Certificate::FixedSeed => f.write_str("fixed-point seed"),
            Certificate::ConstantEquilibrium => f.write_str("constant equilibrium seed"),
            Certificate::Involution => f.write_str("A = -1 involution"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodReport {
    pub minimal_period: Option<usize>,
    pub certified_by: Certificate,
    /// Number of terms examined.
    pub horizon: usize,
    /// `max |z_{n+p} − z_n|` over the window for the reported period.
    pub max_deviation: f64,
}

fn is_period<T: Scalar>(values: &[T], p: usize, rel_tol: f64) -> bool {
    values
        .iter()
        .zip(&values[p..])
        .all(|(x, y)| approx_eq(x, y, rel_tol))
}

/// Smallest `p ≤ N/2` with `z_{n+p} = z_n` for every `n` in the defined
/// prefix. Candidates are scanned in increasing order, so a returned period
/// has no smaller period (divisor or otherwise) over the window.
pub fn detect_period<T: Scalar>(trajectory: &Trajectory<T>, rel_tol: f64) -> PeriodReport {
    let values = trajectory.values();
    let certified_by = if T::is_exact() {
        Certificate::ExactEquality
    } else {
        Certificate::Tolerance(rel_tol)
    };
    let found = (1..=values.len() / 2).find(|&p| is_period(values, p, rel_tol));
    let max_deviation = found.map_or(f64::NAN, |p| {
        values
            .iter()
            .zip(&values[p..])
            .map(|(x, y)| (y.clone() - x.clone()).magnitude())
            .fold(0.0, f64::max)
    });
    PeriodReport {
        minimal_period: found,
        certified_by,
        horizon: values.len(),
        max_deviation,
    }
}

/// Smallest `p` dividing `values.len()` with `values` invariant under a
/// cyclic shift by `p`.
pub fn minimal_cyclic_period<T: Scalar>(values: &[T], rel_tol: f64) -> usize {
    let n = values.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (0..n).all(|i| approx_eq(&values[i], &values[(i + p) % n], rel_tol)))
        .unwrap_or(n)
}

/// `z_j = (1−A_j)/B_j`: each strand starts at its own fixed point.
///
/// In floating point the seed is only as good as the rounded quotient, and
/// the fixed point is unstable when `|A_j| > 1`, so a one-ulp error grows
/// like `|A_j|^n` along the strand.
pub fn periodic_initial_conditions<T: Scalar>(model: &Model<T>) -> Result<InitialConditions<T>> {
    if !model.is_k_periodic() {
        return Err(Error::Precondition(
            "fixed-point seeding needs k-periodic coefficients".into(),
        ));
    }
    let seeds = (0..model.order())
        .map(|j| {
            let (a, b) = model.coefficients(j)?;
            if a.is_one() {
                return Err(Error::Domain(format!("A_{j} = 1 has no nonzero fixed point")));
            }
            if b.is_zero() {
                return Err(Error::Domain(format!("B_{j} = 0 has no nonzero fixed point")));
            }
            Ok((T::one() - a) / b)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InitialConditions::new(seeds))
}

/// The period the closed-form theory predicts for `(model, ic)`, when one
/// of the known periodic regimes applies.
pub fn predict_period<T: Scalar>(
    model: &Model<T>,
    ic: &InitialConditions<T>,
    rel_tol: f64,
) -> Option<PeriodReport> {
    let k = model.order();
    if ic.len() != k {
        return None;
    }
    let report = |p: usize, certified_by| PeriodReport {
        minimal_period: Some(p),
        certified_by,
        horizon: 0,
        max_deviation: 0.0,
    };

    if let Some((a, b)) = model.constant_coefficients() {
        if a == -T::one() {
            // One application sends z_j to z_j/(−1 + B z_j); a second returns it.
            let mut block: Vec<T> = ic.values().to_vec();
            for (j, z) in ic.values().iter().enumerate() {
                block.push(model.step(z, j).ok()?);
            }
            return Some(report(minimal_cyclic_period(&block, rel_tol), Certificate::Involution));
        }
        if !a.is_one() && !b.is_zero() {
            let fixed = (T::one() - a) / b;
            if ic.values().iter().all(|z| approx_eq(z, &fixed, rel_tol)) {
                return Some(report(1, Certificate::ConstantEquilibrium));
            }
        }
    }

    if model.is_k_periodic() {
        let on_fixed_points = (0..k).all(|j| {
            let (a, b) = (model.a(j), model.b(j));
            !a.is_one()
                && !b.is_zero()
                && approx_eq(&ic.values()[j], &((T::one() - a) / b), rel_tol)
        });
        if on_fixed_points {
            return Some(report(
                minimal_cyclic_period(ic.values(), rel_tol),
                Certificate::FixedSeed,
            ));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::sequence::CoefficientSequence;
    use crate::solver::iterate;

    fn q(s: &str) -> Rational {
        Rational::parse_literal(s).unwrap()
    }

    fn qs(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn equilibria_examples() {
        let m = Model::constant(3, q("1/2"), q("1/2")).unwrap();
        assert_eq!(equilibria(&m).unwrap(), qs(&["0", "1"]));
        let m = Model::constant(14, 0.25, 2.0).unwrap();
        assert_eq!(equilibria(&m).unwrap(), vec![0.0, 0.375]);
        let m = Model::constant(2, q("1"), q("1")).unwrap();
        assert_eq!(equilibria(&m).unwrap(), qs(&["0"]));
        let m = Model::constant(2, q("3"), q("0")).unwrap();
        assert_eq!(equilibria(&m).unwrap(), qs(&["0"]));

        let varying = Model::new(
            2,
            CoefficientSequence::periodic(qs(&["2", "3"])).unwrap(),
            CoefficientSequence::Constant(q("1")),
        )
        .unwrap();
        assert!(matches!(equilibria(&varying), Err(Error::Precondition(_))));
    }

    #[test]
    fn roots_examples() {
        let m = Model::constant(14, 14.0, -2.0).unwrap();
        let roots = characteristic_roots(&m, &0.0).unwrap();
        assert_eq!(roots.len(), 14);
        let expected = 14f64.powf(-1.0 / 14.0);
        assert!((expected - 0.828_197).abs() < 1e-6);
        for r in &roots {
            assert!((r.norm() - expected).abs() < 1e-14);
            assert!(((r.powu(14) * 14.0) - 1.0).norm() < 1e-12);
        }

        let m = Model::constant(5, q("1"), q("1")).unwrap();
        for r in characteristic_roots(&m, &q("0")).unwrap() {
            assert!((r.powu(5) - 1.0).norm() < 1e-14);
        }

        let m = Model::constant(14, 0.25, 2.0).unwrap();
        let roots = characteristic_roots(&m, &0.375).unwrap();
        let expected = 0.25f64.powf(1.0 / 14.0);
        assert!((expected - 0.906).abs() < 1e-3);
        assert!(roots.iter().all(|r| (r.norm() - expected).abs() < 1e-14));

        assert!(matches!(characteristic_roots(&m, &0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn classify_examples() {
        let m = Model::constant(14, q("14"), q("-2")).unwrap();
        let reports = classify_all(&m).unwrap();
        assert_eq!(reports[0].classification, Stability::LocallyAsymptoticallyStable);
        assert_eq!(reports[1].equilibrium, q("13/2"));
        assert_eq!(reports[1].classification, Stability::Unstable);

        let m = Model::constant(14, q("1/4"), q("2")).unwrap();
        let reports = classify_all(&m).unwrap();
        assert_eq!(reports[0].classification, Stability::Unstable);
        assert_eq!(reports[1].equilibrium, q("3/8"));
        assert_eq!(reports[1].classification, Stability::LocallyAsymptoticallyStable);

        let m = Model::constant(3, q("1"), q("5")).unwrap();
        let reports = classify_all(&m).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].classification, Stability::NonHyperbolic);

        let m = Model::constant(8, q("-1"), q("12")).unwrap();
        for r in classify_all(&m).unwrap() {
            assert_eq!(r.classification, Stability::NonHyperbolic);
            assert!(r.roots.iter().all(|l| (l.norm() - 1.0).abs() < 1e-15));
        }
    }

    #[test]
    fn characteristic_coefficients_feed_the_sufficient_test() {
        let m = Model::constant(4, 14.0, -2.0).unwrap();
        let p = characteristic_coefficients(&m, &0.0).unwrap();
        assert_eq!(p.len(), 4);
        assert!(sufficient_stability(&p));
        assert!(!sufficient_stability(&[1.0, 0.0, 0.0]));
        assert!(!sufficient_stability(&[0.5, 0.6]));
        assert!(sufficient_stability(&[0.5, -0.4]));
    }

    #[test]
    fn detect_period_examples() {
        let constant = Trajectory::from_values(2, qs(&["3"; 10]));
        let r = detect_period(&constant, 0.0);
        assert_eq!(r.minimal_period, Some(1));
        assert_eq!(r.certified_by, Certificate::ExactEquality);

        let m = Model::constant(8, q("-1"), q("12")).unwrap();
        let seed = InitialConditions::new(qs(&["1", "2", "1", "-1/2", "1", "1/2", "-1/4", "1/2"]));
        let t = iterate(&m, &seed, 64).unwrap();
        assert_eq!(detect_period(&t, 0.0).minimal_period, Some(16));

        let aperiodic = Trajectory::from_values(1, qs(&["1", "1/2", "1/3", "1/4", "1/5", "1/6"]));
        assert_eq!(detect_period(&aperiodic, 0.0).minimal_period, None);

        let noisy = Trajectory::from_values(1, vec![1.0, 2.0, 1.0 + 1e-12, 2.0, 1.0]);
        let r = detect_period(&noisy, 1e-9);
        assert_eq!(r.minimal_period, Some(2));
        assert!(r.max_deviation > 0.0 && r.max_deviation < 1e-11);
    }

    #[test]
    fn detect_period_uses_defined_prefix_of_truncated_runs() {
        let m = Model::constant(2, q("1/2"), q("-1")).unwrap();
        let t = iterate(&m, &InitialConditions::new(qs(&["1", "1/2"])), 20).unwrap();
        assert_eq!(t.truncated_at(), Some(3));
        let r = detect_period(&t, 0.0);
        assert_eq!(r.horizon, 3);
    }

    #[test]
    fn fixed_point_seeds() {
        let m = Model::constant(3, q("1/2"), q("1/2")).unwrap();
        assert_eq!(periodic_initial_conditions(&m).unwrap().values(), qs(&["1", "1", "1"]).as_slice());

        let m = Model::new(
            2,
            CoefficientSequence::periodic(qs(&["1/2", "1/3"])).unwrap(),
            CoefficientSequence::periodic(qs(&["1", "2"])).unwrap(),
        )
        .unwrap();
        assert_eq!(periodic_initial_conditions(&m).unwrap().values(), qs(&["1/2", "1/3"]).as_slice());

        let m = Model::new(
            2,
            CoefficientSequence::periodic(qs(&["1/2", "1"])).unwrap(),
            CoefficientSequence::Constant(q("1")),
        )
        .unwrap();
        let err = periodic_initial_conditions(&m).unwrap_err();
        assert!(err.to_string().contains("A_1"), "{err}");

        let m = Model::constant(2, q("1/2"), q("0")).unwrap();
        assert!(periodic_initial_conditions(&m).unwrap_err().to_string().contains("B_0"));
    }

    #[test]
    fn predictions() {
        let m = Model::constant(8, q("-1"), q("12")).unwrap();
        let seed = InitialConditions::new(qs(&["1", "2", "1", "-1/2", "1", "1/2", "-1/4", "1/2"]));
        let p = predict_period(&m, &seed, 0.0).unwrap();
        assert_eq!(p.minimal_period, Some(16));
        assert_eq!(p.certified_by, Certificate::Involution);

        let m = Model::constant(3, q("1/3"), q("2")).unwrap();
        let seed = InitialConditions::new(qs(&["1/3", "1/3", "1/3"]));
        assert_eq!(
            predict_period(&m, &seed, 0.0).unwrap().certified_by,
            Certificate::ConstantEquilibrium
        );

        let m = Model::new(
            4,
            CoefficientSequence::periodic(qs(&["1/2", "1/3"])).unwrap(),
            CoefficientSequence::periodic(qs(&["1", "2"])).unwrap(),
        )
        .unwrap();
        let seed = periodic_initial_conditions(&m).unwrap();
        let p = predict_period(&m, &seed, 0.0).unwrap();
        assert_eq!(p.minimal_period, Some(2));
        assert_eq!(p.certified_by, Certificate::FixedSeed);

        let seed = InitialConditions::new(qs(&["1", "1", "1", "1"]));
        assert_eq!(predict_period(&m, &seed, 0.0), None);
    }

    #[test]
    fn minimal_cyclic_period_examples() {
        assert_eq!(minimal_cyclic_period(&qs(&["1", "2", "1", "2"]), 0.0), 2);
        assert_eq!(minimal_cyclic_period(&qs(&["1", "2", "3"]), 0.0), 3);
        assert_eq!(minimal_cyclic_period(&qs(&["5", "5", "5"]), 0.0), 1);
    }
}
