//! Seeded random instances for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Instance, SparsityPattern};

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub p: usize,
    pub m: usize,
    /// Probability of each extra nonzero in `A`, `B` and `C`, in `(0, 1]`.
    pub edge_density: f64,
    /// Guarantee a strongly connected `D(A)`.
    pub irreducible: bool,
    /// Inclusive integer range for every finite cost.
    pub cost_range: (u32, u32),
    /// Probability that a link cost is infinite, in `[0, 1)`.
    pub inf_fraction: f64,
    pub seed: u64,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            n: 5,
            p: 2,
            m: 2,
            edge_density: 0.3,
            irreducible: true,
            cost_range: (0, 20),
            inf_fraction: 0.2,
            seed: 0,
        }
    }
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if !(self.edge_density > 0.0 && self.edge_density <= 1.0) {
            return Err(Error::InvalidSpec(format!("edge density {} not in (0, 1]", self.edge_density)));
        }
        if !(0.0..1.0).contains(&self.inf_fraction) {
            return Err(Error::InvalidSpec(format!("inf fraction {} not in [0, 1)", self.inf_fraction)));
        }
        if self.cost_range.0 > self.cost_range.1 {
            return Err(Error::InvalidSpec(format!("empty cost range {:?}", self.cost_range)));
        }
        Ok(())
    }
}

/// Deterministic in `spec.seed`. With `irreducible`, the states are first
/// linked by a random Hamiltonian cycle (a self-loop when `n = 1`), so no
/// rejection sampling is needed.
pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (n, p, m) = (spec.n, spec.p, spec.m);

    let mut a = SparsityPattern::zeros(n, n);
    if spec.irreducible {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for k in 0..n {
            // edge order[k] -> order[k+1] lives at A[to][from]
            a.insert(order[(k + 1) % n], order[k])?;
        }
    }
    let sprinkle = |pattern: &mut SparsityPattern, rng: &mut ChaCha8Rng| -> Result<()> {
        for i in 0..pattern.rows() {
            for j in 0..pattern.cols() {
                if rng.gen_bool(spec.edge_density) {
                    pattern.insert(i, j)?;
                }
            }
        }
        Ok(())
    };
    sprinkle(&mut a, &mut rng)?;
    let mut b = SparsityPattern::zeros(n, p);
    sprinkle(&mut b, &mut rng)?;
    let mut c = SparsityPattern::zeros(m, n);
    sprinkle(&mut c, &mut rng)?;

    let (lo, hi) = spec.cost_range;
    let cost = |rng: &mut ChaCha8Rng| rng.gen_range(lo..=hi) as f64;
    let cost_u = (0..p).map(|_| cost(&mut rng)).collect();
    let cost_y = (0..m).map(|_| cost(&mut rng)).collect();
    let cost_f = (0..p)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if rng.gen_bool(spec.inf_fraction) {
                        f64::INFINITY
                    } else {
                        cost(&mut rng)
                    }
                })
                .collect()
        })
        .collect();
    Instance::new(a, b, c, cost_u, cost_y, cost_f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_irreducible;

    #[test]
    fn single_state_gets_a_self_loop() {
        for seed in 0..5 {
            let inst = generate(&GenSpec {
                n: 1,
                p: 1,
                m: 1,
                seed,
                ..GenSpec::default()
            })
            .unwrap();
            assert!(inst.a().get(0, 0));
            assert!(is_irreducible(inst.a()).unwrap());
        }
    }

    #[test]
    fn irreducible_when_requested() {
        for seed in 0..50 {
            let inst = generate(&GenSpec {
                n: 5,
                edge_density: 0.05,
                seed,
                ..GenSpec::default()
            })
            .unwrap();
            assert!(is_irreducible(inst.a()).unwrap());
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let spec = GenSpec {
            seed: 42,
            ..GenSpec::default()
        };
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GenSpec { seed: 43, ..spec };
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn costs_in_range() {
        let inst = generate(&GenSpec {
            p: 3,
            m: 3,
            cost_range: (3, 7),
            inf_fraction: 0.0,
            ..GenSpec::default()
        })
        .unwrap();
        let all = inst.cost_u().iter().chain(inst.cost_y()).chain(inst.cost_f().iter().flatten());
        for c in all {
            assert!((3.0..=7.0).contains(&c.value()) && c.value().fract() == 0.0);
        }
    }

    #[test]
    fn invalid_specs() {
        for spec in [
            GenSpec { n: 0, ..GenSpec::default() },
            GenSpec { edge_density: 0.0, ..GenSpec::default() },
            GenSpec { inf_fraction: 1.0, ..GenSpec::default() },
            GenSpec { cost_range: (5, 1), ..GenSpec::default() },
        ] {
            assert!(matches!(generate(&spec), Err(Error::InvalidSpec(_))));
        }
    }
}
