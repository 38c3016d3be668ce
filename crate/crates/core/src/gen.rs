//! Seeded random 3-CNF generator over uniform-cardinality variables.
//!
//! Randomness comes from xoshiro256++ seeded through SplitMix64 (the
//! `seed_from_u64` expansion of `rand_xoshiro`). Bounded integers use
//! Lemire's multiply-and-reject method, so a port that follows the same
//! steps reproduces the instances bit for bit:
//!
//! * clause variables: draw `below(N)` until three distinct ids are found,
//!   kept in draw order;
//! * literal size: `1 + below(C - 1)`;
//! * literal states: a partial Fisher-Yates shuffle of `0..C`, where step
//!   `i` swaps position `i` with `i + below(C - i)`.

use crate::logic::{Clause, Cnf, Literal};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use thiserror::Error;

pub struct Rng(Xoshiro256PlusPlus);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let mut m = self.next_u64() as u128 * n as u128;
        if (m as u64) < n {
            let t = n.wrapping_neg() % n;
            while (m as u64) < t {
                m = self.next_u64() as u128 * n as u128;
            }
        }
        (m >> 64) as u64
    }

    pub fn below_usize(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("cardinality must be at least 2, got {0}")]
    Cardinality(usize),
    #[error("need at least 3 variables for 3-literal clauses, got {0}")]
    TooFewVariables(usize),
    #[error("no transition ratio known for cardinality {0} (known: 2, 4, 8, 16, 32, 48, 64)")]
    UnknownCardinality(usize),
}

/// `spec.m` clauses over three distinct variables each. Literal sizes are
/// uniform on `1..=C-1`, and states are uniform given the size.
pub fn generate(spec: &GenSpec) -> Result<Cnf, GenError> {
    if spec.c < 2 {
        return Err(GenError::Cardinality(spec.c));
    }
    if spec.n < 3 {
        return Err(GenError::TooFewVariables(spec.n));
    }
    let mut rng = Rng::new(spec.seed);
    let mut perm: Vec<usize> = (0..spec.c).collect();
    let mut clauses = Vec::with_capacity(spec.m);
    for _ in 0..spec.m {
        let mut vars = [usize::MAX; 3];
        for k in 0..3 {
            vars[k] = loop {
                let v = rng.below_usize(spec.n);
                if !vars[..k].contains(&v) {
                    break v;
                }
            };
        }
        let lits = vars.iter().map(|&v| random_literal(&mut rng, &mut perm, v)).collect();
        clauses.push(Clause::new(lits));
    }
    Ok(Cnf::new(vec![spec.c; spec.n], clauses))
}

fn random_literal(rng: &mut Rng, perm: &mut [usize], var: usize) -> Literal {
    let c = perm.len();
    let size = 1 + rng.below_usize(c - 1);
    for (i, p) in perm.iter_mut().enumerate() {
        *p = i;
    }
    for i in 0..size {
        let j = i + rng.below_usize(c - i);
        perm.swap(i, j);
    }
    Literal::from_states(var, c, perm[..size].iter().copied())
}

/// Clause-to-variable ratio near which random instances are about half
/// satisfiable.
pub fn transition_ratio(c: usize) -> Result<f64, GenError> {
    Ok(match c {
        2 => 1027.0 / 240.0,
        4 => 8.1,
        8 => 11.9,
        16 => 16.1,
        32 => 20.8,
        48 => 23.2,
        64 => 25.6,
        _ => return Err(GenError::UnknownCardinality(c)),
    })
}

/// `round(ratio * n)` with ties to even.
pub fn clauses_for_ratio(ratio: f64, n: usize) -> usize {
    (ratio * n as f64).round_ties_even() as usize
}
