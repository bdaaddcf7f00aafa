use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LatticePoint, LatticeSimplexConfig};
use crate::scalar::int;
use crate::{Error, Result, Scalar};

/// Denominator of every perturbation: `eps_m = k_m / PERTURBATION_DENOMINATOR`.
pub const PERTURBATION_DENOMINATOR: i64 = 1_000_000;

/// The piecewise linear convex function that vanishes on `[0, 1]`, is linear
/// between consecutive integers and bends by 1 at each integer; at integers
/// it is `n (n - 1) / 2`.
pub fn phi0<S: Scalar>(x: &S) -> S {
    let k = x.floor();
    let at_k = k.clone() * (k.clone() - S::one()) / int::<S>(2);
    at_k + (x.clone() - k.clone()) * k
}

/// Sum of `phi0` over the ten consecutive partial sums of the coordinates.
pub fn phi1<S: Scalar>(x: &[S; 4]) -> S {
    let mut total = S::zero();
    for start in 0..4 {
        let mut partial = S::zero();
        for v in &x[start..] {
            partial = partial + v.clone();
            total = total + phi0(&partial);
        }
    }
    total
}

/// Heights `a_m` on the boundary lattice points, indexed like
/// [`LatticeSimplexConfig::points`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightFunction<S> {
    pub seed: u64,
    pub magnitude: S,
    values: Vec<S>,
}

impl<S: Scalar> HeightFunction<S> {
    /// Heights given explicitly, one per boundary point.
    pub fn from_values(seed: u64, magnitude: S, values: Vec<S>) -> Result<Self> {
        let n = LatticeSimplexConfig::get().points().len();
        if values.len() != n {
            return Err(Error::Parse(format!("expected {n} heights, got {}", values.len())));
        }
        Ok(HeightFunction { seed, magnitude, values })
    }

    /// The symmetric heights `a_m = phi1(m)`.
    pub fn symmetric() -> Self {
        let values = LatticeSimplexConfig::get().points().iter().map(|m| phi1(&m.map(S::from_i64))).collect();
        HeightFunction { seed: 0, magnitude: S::zero(), values }
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn at_index(&self, i: usize) -> &S {
        &self.values[i]
    }

    pub fn at(&self, m: &LatticePoint) -> Option<&S> {
        LatticeSimplexConfig::get().index_of(m).map(|i| &self.values[i])
    }

    /// Same heights plus a constant.
    pub fn shifted(&self, c: &S) -> Self {
        HeightFunction {
            seed: self.seed,
            magnitude: self.magnitude.clone(),
            values: self.values.iter().map(|v| v.clone() + c.clone()).collect(),
        }
    }
}

/// Symmetric heights plus a seeded perturbation.
///
/// `eps_m = k_m / 10^6` where `k_m` is drawn uniformly from `0..=K`,
/// `K = magnitude * 10^6`, by `ChaCha8Rng::seed_from_u64(seed)` through
/// `gen_range`, one draw per boundary point in lexicographic order. The
/// perturbation is one-sided so heights stay nonnegative; shifting all
/// heights by a constant does not change any subdivision.
pub fn make_heights<S: Scalar>(seed: u64, magnitude: &S) -> Result<HeightFunction<S>> {
    let scaled = magnitude.clone() * int::<S>(PERTURBATION_DENOMINATOR);
    if magnitude.is_negative() || !scaled.is_integral() {
        return Err(Error::InvalidMagnitude(magnitude.to_string()));
    }
    let bound: i64 =
        scaled.to_big().to_integer().try_into().map_err(|_| Error::InvalidMagnitude(magnitude.to_string()))?;
    let mut h = HeightFunction::<S>::symmetric();
    h.seed = seed;
    h.magnitude = magnitude.clone();
    if bound == 0 {
        return Ok(h);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in h.values.iter_mut() {
        let k: i64 = rng.gen_range(0..=bound);
        *v = v.clone() + S::from_frac(k, PERTURBATION_DENOMINATOR);
    }
    Ok(h)
}
