//! Lie point symmetries `z_n ↦ z_n + ε ζ(n, z_n)` of the recurrence and
//! the canonical coordinate that linearises it.
//!
//! A characteristic `ζ` is a symmetry when it satisfies the linearised
//! invariance condition
//!
//! ```text
//! ζ(n+k, z/(A_n + B_n z)) − A_n/(A_n + B_n z)² · ζ(n, z) = 0.
//! ```
//!
//! Three families are built here:
//!
//! * `ζ₁ = α_n + (B_n/A_n) α_n z` with `A_n α_{n+k} = α_n`,
//! * `ζ₂ = β_n z²` with `β_{n+k} = A_n β_n`,
//! * `ζ₃ = λ_n z + γ_n z²` with `λ_n = e^{2πi pn/k}` and
//!   `γ_{n+k} = A_n γ_n − B_n λ_n`.
//!
//! `ζ₂` and `ζ₃` satisfy the condition identically. `ζ₁` only does so where
//! `A_{n+k} B_n + B_{n+k} = 0` (see [`zeta1_obstruction`]); the residual is
//! computed rather than assumed, so callers can see where it fails.

use crate::error::{Error, Result};
use crate::model::Model;
use crate::scalar::{checked_div, relative_difference, Scalar};
use crate::solver::{iterate, product_and_weighted_sum, InitialConditions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Zeta1,
    Zeta2,
    /// `p` selects `λ_n = e^{2πi pn/k}`.
    Zeta3 { p: usize },
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Zeta1 => "zeta1",
            FamilyKind::Zeta2 => "zeta2",
            FamilyKind::Zeta3 { .. } => "zeta3",
        }
    }
}

fn check_seeds<T: Scalar>(model: &Model<T>, seeds: &[T]) -> Result<()> {
    if seeds.len() != model.order() {
        return Err(Error::Precondition(format!(
            "expected {} seeds, got {}",
            model.order(),
            seeds.len()
        )));
    }
    Ok(())
}

/// Runs `c_{n+k} = next(n, c_n)` from the seeds through index `n_max`.
fn build_strandwise<T: Scalar>(
    model: &Model<T>,
    seeds: &[T],
    n_max: usize,
    mut next: impl FnMut(usize, &T) -> Result<T>,
) -> Result<Vec<T>> {
    check_seeds(model, seeds)?;
    let k = model.order();
    let mut out: Vec<T> = seeds.iter().take(n_max + 1).cloned().collect();
    for m in k..=n_max {
        let value = next(m - k, &out[m - k])?;
        out.push(value);
    }
    Ok(out)
}

/// `α_0 … α_{n_max}` with `α_{n+k} = α_n / A_n`.
pub fn build_alpha<T: Scalar>(model: &Model<T>, seeds: &[T], n_max: usize) -> Result<Vec<T>> {
    build_strandwise(model, seeds, n_max, |n, alpha| {
        let (a, _) = model.coefficients(n)?;
        Ok(alpha.clone() / a)
    })
}

/// `β_0 … β_{n_max}` with `β_{n+k} = A_n β_n`.
pub fn build_beta<T: Scalar>(model: &Model<T>, seeds: &[T], n_max: usize) -> Result<Vec<T>> {
    build_strandwise(model, seeds, n_max, |n, beta| {
        let (a, _) = model.coefficients(n)?;
        Ok(a * beta.clone())
    })
}

/// `λ_n = e^{2πi pn/k}` for `n = 0 … n_max`.
///
/// Real backends can only represent `λ ≡ ±1`, i.e. `2p ≡ 0 (mod k)`.
pub fn build_lambda<T: Scalar>(order: usize, p: usize, n_max: usize) -> Result<Vec<T>> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    if p >= order {
        return Err(Error::Precondition(format!("mode p = {p} must be below k = {order}")));
    }
    (0..=n_max)
        .map(|n| {
            T::unit_root((p * n) % order, order).ok_or_else(|| {
                Error::Config(format!(
                    "λ_n = exp(2πi·{p}n/{order}) is not real; use the complex backend"
                ))
            })
        })
        .collect()
}

/// `γ_0 … γ_{n_max}` by iterating `γ_{n+k} = A_n γ_n − B_n λ_n`.
pub fn build_gamma<T: Scalar>(
    model: &Model<T>,
    seeds: &[T],
    p: usize,
    n_max: usize,
) -> Result<Vec<T>> {
    let lambda = build_lambda::<T>(model.order(), p, n_max)?;
    gamma_from_lambda(model, seeds, &lambda, n_max)
}

fn gamma_from_lambda<T: Scalar>(
    model: &Model<T>,
    seeds: &[T],
    lambda: &[T],
    n_max: usize,
) -> Result<Vec<T>> {
    build_strandwise(model, seeds, n_max, |n, gamma| {
        let (a, b) = model.coefficients(n)?;
        Ok(a * gamma.clone() - b * lambda[n].clone())
    })
}

/// One of the three infinitesimal families, with its coefficient sequences
/// built through a fixed index.
#[derive(Debug, Clone, PartialEq)]
pub struct InfinitesimalFamily<T> {
    kind: FamilyKind,
    model: Model<T>,
    /// `α`, `β` or `γ`, depending on the kind.
    coefficients: Vec<T>,
    /// `λ` for `ζ₃`, empty otherwise.
    lambda: Vec<T>,
}

impl<T: Scalar> InfinitesimalFamily<T> {
    pub fn zeta1(model: &Model<T>, seeds: &[T], n_max: usize) -> Result<Self> {
        Ok(InfinitesimalFamily {
            kind: FamilyKind::Zeta1,
            model: model.clone(),
            coefficients: build_alpha(model, seeds, n_max)?,
            lambda: Vec::new(),
        })
    }

    pub fn zeta2(model: &Model<T>, seeds: &[T], n_max: usize) -> Result<Self> {
        Ok(InfinitesimalFamily {
            kind: FamilyKind::Zeta2,
            model: model.clone(),
            coefficients: build_beta(model, seeds, n_max)?,
            lambda: Vec::new(),
        })
    }

    pub fn zeta3(model: &Model<T>, seeds: &[T], p: usize, n_max: usize) -> Result<Self> {
        let lambda = build_lambda::<T>(model.order(), p, n_max)?;
        let coefficients = gamma_from_lambda(model, seeds, &lambda, n_max)?;
        Ok(InfinitesimalFamily {
            kind: FamilyKind::Zeta3 { p },
            model: model.clone(),
            coefficients,
            lambda,
        })
    }

    pub fn build(kind: FamilyKind, model: &Model<T>, seeds: &[T], n_max: usize) -> Result<Self> {
        match kind {
            FamilyKind::Zeta1 => Self::zeta1(model, seeds, n_max),
            FamilyKind::Zeta2 => Self::zeta2(model, seeds, n_max),
            FamilyKind::Zeta3 { p } => Self::zeta3(model, seeds, p, n_max),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn model(&self) -> &Model<T> {
        &self.model
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// Mutable access, e.g. to corrupt a coefficient in a test.
    pub fn coefficients_mut(&mut self) -> &mut [T] {
        &mut self.coefficients
    }

    pub fn lambda(&self) -> &[T] {
        &self.lambda
    }

    /// Largest index the coefficients were built for.
    pub fn n_max(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// `ζ(n, z)`.
    pub fn characteristic(&self, n: usize, z: &T) -> Result<T> {
        let c = self.coefficients.get(n).ok_or_else(|| {
            Error::Domain(format!(
                "{} built through n = {}, asked for n = {n}",
                self.kind.name(),
                self.n_max()
            ))
        })?;
        let z = z.clone();
        match self.kind {
            FamilyKind::Zeta1 => {
                let (a, b) = self.model.coefficients(n)?;
                Ok(c.clone() + b / a * c.clone() * z)
            }
            FamilyKind::Zeta2 => Ok(c.clone() * z.clone() * z),
            FamilyKind::Zeta3 { .. } => {
                Ok(self.lambda[n].clone() * z.clone() + c.clone() * z.clone() * z)
            }
        }
    }
}

/// `ζ(n, z)` for a built family.
pub fn characteristic_value<T: Scalar>(
    family: &InfinitesimalFamily<T>,
    n: usize,
    z: &T,
) -> Result<T> {
    family.characteristic(n, z)
}

/// Invariance residual of an arbitrary characteristic at `(n, z)`.
pub fn invariance_residual<T: Scalar>(
    model: &Model<T>,
    n: usize,
    z: &T,
    zeta: impl Fn(usize, &T) -> Result<T>,
) -> Result<T> {
    let (a, b) = model.coefficients(n)?;
    let den = a.clone() + b * z.clone();
    let image = checked_div(z, &den).map_err(|_| {
        Error::Domain(format!("({n}, {}) lies on the forbidden set", z.render()))
    })?;
    let slope = a / (den.clone() * den);
    Ok(zeta(n + model.order(), &image)? - slope * zeta(n, z)?)
}

/// `ζ(n+k, z/(A_n+B_n z)) − A_n/(A_n+B_n z)² ζ(n, z)` for a family.
pub fn symmetry_residual<T: Scalar>(
    model: &Model<T>,
    family: &InfinitesimalFamily<T>,
    n: usize,
    z: &T,
) -> Result<T> {
    invariance_residual(model, n, z, |m, w| family.characteristic(m, w))
}

/// `A_{n+k} B_n + B_{n+k}`.
///
/// The `ζ₁` residual equals `α_n z (A_{n+k} B_n + B_{n+k}) / (A_n A_{n+k}
/// (A_n + B_n z))`, so `ζ₁` is a symmetry at step `n` exactly when this
/// vanishes (or `α_n = 0`).
pub fn zeta1_obstruction<T: Scalar>(model: &Model<T>, n: usize) -> Result<T> {
    let (_, b) = model.coefficients(n)?;
    let (a_next, b_next) = model.coefficients(n + model.order())?;
    Ok(a_next * b + b_next)
}

/// Canonical coordinate of `ζ₂`: `S_n = ∫ dz/(β_n z²) = −1/(β_n z)`.
pub fn canonical_coordinate<T: Scalar>(
    family: &InfinitesimalFamily<T>,
    n: usize,
    z: &T,
) -> Result<T> {
    if family.kind() != FamilyKind::Zeta2 {
        return Err(Error::Precondition(
            "the canonical coordinate is taken from the ζ₂ family".into(),
        ));
    }
    let beta = family.coefficients().get(n).ok_or_else(|| {
        Error::Domain(format!("ζ₂ built through n = {}, asked for n = {n}", family.n_max()))
    })?;
    let den = beta.clone() * z.clone();
    checked_div(&-T::one(), &den)
        .map_err(|_| Error::Domain(format!("S_{n} undefined: β_n·z = 0")))
}

/// `S̃_n = 1/z_n` along an iterated trajectory, with the checks that it obeys
/// `S̃_{n+k} = A_n S̃_n + B_n` and matches the summed form directly.
#[derive(Debug, Clone, PartialEq)]
pub struct Linearization<T> {
    /// `S̃_n` from the iterated trajectory.
    pub s_tilde: Vec<T>,
    /// `S̃_{kn+j} = S̃_j ∏A + Σ B∏A` evaluated directly.
    pub direct: Vec<T>,
    /// Largest relative violation of the linear recurrence.
    pub recurrence_residual: f64,
    pub recurrence_exact: bool,
    /// Largest relative gap between `s_tilde` and `direct`.
    pub direct_discrepancy: f64,
    pub direct_exact: bool,
    /// First index where `S̃` is undefined (zero state or truncated
    /// trajectory).
    pub truncated_at: Option<usize>,
}

pub fn linearized_trajectory<T: Scalar>(
    model: &Model<T>,
    ic: &InitialConditions<T>,
    horizon: usize,
) -> Result<Linearization<T>> {
    let trajectory = iterate(model, ic, horizon)?;
    let k = model.order();
    let mut s_tilde = Vec::with_capacity(trajectory.len());
    let mut truncated_at = trajectory.truncated_at();
    for (n, z) in trajectory.values().iter().enumerate() {
        match checked_div(&T::one(), z) {
            Ok(s) => s_tilde.push(s),
            Err(_) => {
                truncated_at = Some(n);
                break;
            }
        }
    }

    let mut recurrence_residual: f64 = 0.0;
    let mut recurrence_exact = true;
    for n in 0..s_tilde.len().saturating_sub(k) {
        let (a, b) = model.coefficients(n)?;
        let predicted = a * s_tilde[n].clone() + b;
        if predicted != s_tilde[n + k] {
            recurrence_exact = false;
            recurrence_residual =
                recurrence_residual.max(relative_difference(&predicted, &s_tilde[n + k]));
        }
    }

    let mut direct = Vec::with_capacity(s_tilde.len());
    let mut direct_discrepancy: f64 = 0.0;
    let mut direct_exact = true;
    for (m, s) in s_tilde.iter().enumerate() {
        let (n, j) = (m / k, m % k);
        let (product, sum) = product_and_weighted_sum(n, |l| model.coefficients(k * l + j))?;
        let value = s_tilde[j].clone() * product + sum;
        if &value != s {
            direct_exact = false;
            direct_discrepancy = direct_discrepancy.max(relative_difference(&value, s));
        }
        direct.push(value);
    }

    Ok(Linearization {
        s_tilde,
        direct,
        recurrence_residual,
        recurrence_exact,
        direct_discrepancy,
        direct_exact,
        truncated_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::sequence::CoefficientSequence;
    use num_complex::Complex64;

    fn q(s: &str) -> Rational {
        Rational::parse_literal(s).unwrap()
    }

    fn qs(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|s| q(s)).collect()
    }

    fn two_periodic(a: &[&str], b: &[&str]) -> Model<Rational> {
        Model::new(
            a.len(),
            CoefficientSequence::periodic(qs(a)).unwrap(),
            CoefficientSequence::periodic(qs(b)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn alpha_examples() {
        let m = Model::constant(3, q("1"), q("5")).unwrap();
        assert!(build_alpha(&m, &qs(&["1", "1", "1"]), 20).unwrap().iter().all(|a| *a == q("1")));

        let m = Model::constant(1, q("1/2"), q("1")).unwrap();
        let alpha = build_alpha(&m, &qs(&["1"]), 10).unwrap();
        for (n, a) in alpha.iter().enumerate() {
            assert_eq!(*a, Rational::from_integer(num_bigint::BigInt::from(1u64 << n)));
        }

        let m = two_periodic(&["1/2", "1/3"], &["1", "1"]);
        let alpha = build_alpha(&m, &qs(&["1", "1"]), 7).unwrap();
        assert_eq!(alpha, qs(&["1", "1", "2", "3", "4", "9", "8", "27"]));
    }

    #[test]
    fn beta_examples() {
        let m = Model::constant(2, q("1"), q("3")).unwrap();
        assert!(build_beta(&m, &qs(&["1", "1"]), 9).unwrap().iter().all(|b| *b == q("1")));

        let m = Model::constant(1, q("1/2"), q("3")).unwrap();
        let beta = build_beta(&m, &qs(&["1"]), 5).unwrap();
        assert_eq!(beta, qs(&["1", "1/2", "1/4", "1/8", "1/16", "1/32"]));

        let m = two_periodic(&["1/2", "1/3"], &["1", "1"]);
        let seeds = qs(&["3", "-2"]);
        let alpha = build_alpha(&m, &seeds, 20).unwrap();
        let beta = build_beta(&m, &seeds, 20).unwrap();
        for n in 0..=20 {
            let j = n % 2;
            assert_eq!(alpha[n].clone() * beta[n].clone(), seeds[j].clone() * seeds[j].clone());
        }
    }

    #[test]
    fn lambda_examples() {
        let ones: Vec<Rational> = build_lambda(5, 0, 12).unwrap();
        assert!(ones.iter().all(|l| *l == q("1")));

        let quarter: Vec<Complex64> = build_lambda(4, 1, 5).unwrap();
        let i = Complex64::new(0.0, 1.0);
        assert_eq!(quarter, vec![1.0.into(), i, (-1.0).into(), -i, 1.0.into(), i]);

        let alternating: Vec<Rational> = build_lambda(2, 1, 4).unwrap();
        assert_eq!(alternating, qs(&["1", "-1", "1", "-1", "1"]));

        assert!(matches!(build_lambda::<Rational>(3, 1, 4), Err(Error::Config(_))));
        assert!(matches!(build_lambda::<Complex64>(3, 3, 4), Err(Error::Precondition(_))));

        let third: Vec<Complex64> = build_lambda(3, 2, 30).unwrap();
        for n in 0..third.len() - 3 {
            assert_eq!(third[n + 3], third[n]);
            assert!((third[n].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn gamma_examples() {
        let m = Model::constant(2, q("1/3"), q("0")).unwrap();
        let seeds = qs(&["2", "5"]);
        assert_eq!(build_gamma(&m, &seeds, 0, 15).unwrap(), build_beta(&m, &seeds, 15).unwrap());

        let m = Model::constant(1, q("1/2"), q("1")).unwrap();
        let gamma = build_gamma(&m, &qs(&["0"]), 0, 3).unwrap();
        assert_eq!(gamma, qs(&["0", "-1", "-3/2", "-7/4"]));

        let m = Model::constant(3, q("1"), q("1")).unwrap();
        let gamma = build_gamma(&m, &qs(&["0", "0", "0"]), 0, 20).unwrap();
        for (idx, g) in gamma.iter().enumerate() {
            assert_eq!(*g, -Rational::from_integer(((idx / 3) as i64).into()));
        }
    }

    #[test]
    fn characteristic_examples() {
        let m = Model::constant(1, q("1/2"), q("1/2")).unwrap();
        let zeta2 = InfinitesimalFamily::zeta2(&m, &qs(&["1"]), 3).unwrap();
        assert_eq!(characteristic_value(&zeta2, 0, &q("3")).unwrap(), q("9"));

        let zeta1 = InfinitesimalFamily::zeta1(&m, &qs(&["1"]), 3).unwrap();
        assert_eq!(characteristic_value(&zeta1, 0, &q("1")).unwrap(), q("2"));

        let zeta3 = InfinitesimalFamily::zeta3(&m, &qs(&["0"]), 0, 3).unwrap();
        assert_eq!(characteristic_value(&zeta3, 0, &q("5")).unwrap(), q("5"));

        assert!(matches!(zeta2.characteristic(4, &q("1")), Err(Error::Domain(_))));
    }

    #[test]
    fn residual_vanishes_for_zeta2_and_zeta3() {
        let m = two_periodic(&["1/2", "-3"], &["2/3", "1/5"]);
        let zeta2 = InfinitesimalFamily::zeta2(&m, &qs(&["1", "-4"]), 40).unwrap();
        let zeta3 = InfinitesimalFamily::zeta3(&m, &qs(&["7", "1/2"]), 1, 40).unwrap();
        for n in 0..30 {
            for z in ["-3", "-1/2", "1/7", "2", "9"] {
                let z = q(z);
                assert_eq!(symmetry_residual(&m, &zeta2, n, &z).unwrap(), q("0"));
                assert_eq!(symmetry_residual(&m, &zeta3, n, &z).unwrap(), q("0"));
            }
        }
    }

    #[test]
    fn zeta1_residual_matches_its_obstruction() {
        let m = two_periodic(&["1/2", "2"], &["3", "-1/4"]);
        let zeta1 = InfinitesimalFamily::zeta1(&m, &qs(&["1", "5"]), 30).unwrap();
        for n in 0..20 {
            for z in ["-2", "1/3", "4"] {
                let z = q(z);
                let (a, b) = m.coefficients(n).unwrap();
                let a_next = m.a(n + 2);
                let expected = zeta1.coefficients()[n].clone()
                    * z.clone()
                    * zeta1_obstruction(&m, n).unwrap()
                    / (a.clone() * a_next * (a + b * z.clone()));
                assert_eq!(symmetry_residual(&m, &zeta1, n, &z).unwrap(), expected);
            }
        }
    }

    #[test]
    fn zeta1_is_a_symmetry_when_a_is_minus_one() {
        let m = Model::constant(8, q("-1"), q("12")).unwrap();
        let seeds = qs(&["1", "2", "3", "4", "5", "6", "7", "8"]);
        let zeta1 = InfinitesimalFamily::zeta1(&m, &seeds, 40).unwrap();
        for n in 0..30 {
            assert_eq!(zeta1_obstruction(&m, n).unwrap(), q("0"));
            for z in ["-1", "1/5", "3"] {
                assert_eq!(symmetry_residual(&m, &zeta1, n, &q(z)).unwrap(), q("0"));
            }
        }
    }

    #[test]
    fn corrupted_family_is_detected() {
        let m = Model::constant(2, q("1/2"), q("1")).unwrap();
        let mut zeta2 = InfinitesimalFamily::zeta2(&m, &qs(&["1", "1"]), 10).unwrap();
        zeta2.coefficients_mut()[2] += q("1");
        assert_ne!(symmetry_residual(&m, &zeta2, 0, &q("1")).unwrap(), q("0"));
        assert_eq!(symmetry_residual(&m, &zeta2, 1, &q("1")).unwrap(), q("0"));
    }

    #[test]
    fn residual_rejects_forbidden_set() {
        let m = Model::constant(1, q("1/2"), q("-1")).unwrap();
        let zeta2 = InfinitesimalFamily::zeta2(&m, &qs(&["1"]), 5).unwrap();
        assert!(matches!(
            symmetry_residual(&m, &zeta2, 0, &q("1/2")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn canonical_coordinate_examples() {
        let m = Model::constant(1, q("1"), q("1")).unwrap();
        let zeta2 = InfinitesimalFamily::zeta2(&m, &qs(&["1"]), 3).unwrap();
        assert_eq!(canonical_coordinate(&zeta2, 0, &q("1")).unwrap(), q("-1"));
        let zeta2 = InfinitesimalFamily::zeta2(&m, &qs(&["2"]), 3).unwrap();
        assert_eq!(canonical_coordinate(&zeta2, 0, &q("-1/2")).unwrap(), q("1"));
        // −β S = 1/z
        let z = q("3/7");
        let s = canonical_coordinate(&zeta2, 1, &z).unwrap();
        assert_eq!(-zeta2.coefficients()[1].clone() * s, q("7/3"));
        assert!(canonical_coordinate(&zeta2, 0, &q("0")).is_err());
        let zeta1 = InfinitesimalFamily::zeta1(&m, &qs(&["1"]), 3).unwrap();
        assert!(canonical_coordinate(&zeta1, 0, &q("1")).is_err());
    }

    #[test]
    fn linearization_examples() {
        let m = Model::constant(1, q("1"), q("1")).unwrap();
        let lin = linearized_trajectory(&m, &InitialConditions::new(qs(&["1"])), 6).unwrap();
        assert_eq!(lin.s_tilde, qs(&["1", "2", "3", "4", "5", "6"]));
        assert!(lin.recurrence_exact && lin.direct_exact);

        let m = Model::constant(8, q("-1"), q("12")).unwrap();
        let seed = InitialConditions::new(qs(&["1", "2", "1", "-1/2", "1", "1/2", "-1/4", "1/2"]));
        let lin = linearized_trajectory(&m, &seed, 40).unwrap();
        for n in 0..32 {
            assert_eq!(lin.s_tilde[n + 8], q("12") - lin.s_tilde[n].clone());
        }
        assert_eq!(lin.direct, lin.s_tilde);

        let m = Model::constant(2, q("1/3"), q("2")).unwrap();
        let fixed = InitialConditions::new(qs(&["1/3", "1/3"]));
        let lin = linearized_trajectory(&m, &fixed, 10).unwrap();
        assert!(lin.s_tilde.iter().all(|s| *s == q("3")));
    }

    #[test]
    fn linearization_stops_at_zero_state() {
        let m = Model::constant(2, q("1/3"), q("2")).unwrap();
        let seed = InitialConditions::new(qs(&["1", "0"]));
        let lin = linearized_trajectory(&m, &seed, 10).unwrap();
        assert_eq!(lin.truncated_at, Some(1));
        assert_eq!(lin.s_tilde.len(), 1);
    }
}
