//! Seeded random models for the acceptance run.
//!
//! Every generator takes an explicit RNG or seed, so a run is reproducible
//! bit for bit.

use bevholt::{CoefficientSequence, Complex64, InitialConditions, Model, Rational, Scalar};
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Case = (Model<Rational>, InitialConditions<Rational>);

/// Orders drawn by the random suites.
pub const ORDERS: [usize; 4] = [1, 2, 3, 5];

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::from_i64(p) / Rational::from_i64(q)
}

/// `p/q` with `0 < |p| ≤ 7`, `1 ≤ q ≤ 6`.
pub fn random_nonzero(rng: &mut impl Rng) -> Rational {
    loop {
        let p = rng.gen_range(-7i64..=7);
        if p != 0 {
            return rational(p, rng.gen_range(1i64..=6));
        }
    }
}

pub fn random_not_one(rng: &mut impl Rng) -> Rational {
    loop {
        let x = random_nonzero(rng);
        if !x.is_one() {
            return x;
        }
    }
}

/// `count` models cycling through [`ORDERS`]. Every third has constant
/// coefficients, the rest are `k`-periodic with independent entries. No
/// `A_j` equals 1, so every closed form applies.
pub fn random_suite(seed: u64, count: usize) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let k = ORDERS[i % ORDERS.len()];
            let (a, b) = if i % 3 == 0 {
                (
                    CoefficientSequence::Constant(random_not_one(&mut rng)),
                    CoefficientSequence::Constant(random_nonzero(&mut rng)),
                )
            } else {
                (
                    CoefficientSequence::Periodic((0..k).map(|_| random_not_one(&mut rng)).collect()),
                    CoefficientSequence::Periodic((0..k).map(|_| random_nonzero(&mut rng)).collect()),
                )
            };
            let model = Model::new(k, a, b).expect("valid random model");
            let ic = InitialConditions::new((0..k).map(|_| random_nonzero(&mut rng)).collect());
            (model, ic)
        })
        .collect()
}

/// Rational models with random order, alternating constant and
/// `k`-periodic coefficients.
pub fn random_models(rng: &mut impl Rng, count: usize) -> Vec<Model<Rational>> {
    (0..count)
        .map(|i| {
            let k = *ORDERS.choose(rng).unwrap();
            let (a, b) = if i % 2 == 0 {
                (
                    CoefficientSequence::Constant(random_nonzero(rng)),
                    CoefficientSequence::Constant(random_nonzero(rng)),
                )
            } else {
                (
                    CoefficientSequence::Periodic((0..k).map(|_| random_nonzero(rng)).collect()),
                    CoefficientSequence::Periodic((0..k).map(|_| random_nonzero(rng)).collect()),
                )
            };
            Model::new(k, a, b).expect("valid random model")
        })
        .collect()
}

/// Real coefficients of modulus in `[0.5, 2)` carried by the complex
/// backend.
pub fn random_complex_model(rng: &mut impl Rng, k: usize, constant: bool) -> Model<Complex64> {
    let mut coeff = || {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        Complex64::new(sign * rng.gen_range(0.5..2.0), 0.0)
    };
    let (a, b) = if constant {
        (
            CoefficientSequence::Constant(coeff()),
            CoefficientSequence::Constant(coeff()),
        )
    } else {
        (
            CoefficientSequence::Periodic((0..k).map(|_| coeff()).collect()),
            CoefficientSequence::Periodic((0..k).map(|_| coeff()).collect()),
        )
    };
    Model::new(k, a, b).expect("valid random model")
}
