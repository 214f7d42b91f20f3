//! Random machines for experiments and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::machine::{compose, Machine};
use crate::rule::LocalRule;
use crate::vector::{hypercube, Dims, IntVector};
use crate::zoo::{involution_walker, local_permutation, shift_machine, state_permutation};

fn random_subset<R: Rng>(rng: &mut R, pool: &[IntVector]) -> Vec<IntVector> {
    pool.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

fn random_move<R: Rng>(rng: &mut R, d: usize, r: i64) -> IntVector {
    IntVector((0..d).map(|_| rng.gen_range(-r..=r)).collect())
}

/// Uniform table over random supports inside `[-r, r]^d`; usually not
/// reversible.
pub fn random_rule<R: Rng>(rng: &mut R, dims: Dims, r: i64) -> Machine {
    let pool = hypercube(dims.d, r);
    let read = random_subset(rng, &pool);
    let write = random_subset(rng, &pool);
    let w = write.len();
    let rule = LocalRule::from_fn(dims, read, write, |_, _| {
        (
            (0..w).map(|_| rng.gen_range(0..dims.n)).collect(),
            rng.gen_range(1..=dims.k),
            random_move(rng, dims.d, r),
        )
    })
    .expect("small random rule");
    Machine::new(&rule)
}

/// A uniformly random local permutation on `support`.
pub fn random_local_permutation<R: Rng>(rng: &mut R, dims: Dims, support: &[IntVector]) -> Machine {
    let size = dims.k as usize * (dims.n as usize).pow(support.len() as u32);
    let mut perm: Vec<usize> = (0..size).collect();
    perm.shuffle(rng);
    local_permutation(dims, support, &perm).expect("valid permutation")
}

/// A state permutation controlled by the pattern on `support`.
pub fn random_state_permutation<R: Rng>(rng: &mut R, dims: Dims, support: &[IntVector]) -> Machine {
    let pats = (dims.n as usize).pow(support.len() as u32);
    let perms: Vec<Vec<usize>> = (0..pats)
        .map(|_| {
            let mut p: Vec<usize> = (0..dims.k as usize).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    state_permutation(dims, support, &perms).expect("valid permutations")
}

/// Moves by `dirs[q - 1]` in state `q`, no reads or writes.
pub fn state_shift(dims: Dims, dirs: &[IntVector]) -> Machine {
    let rule = LocalRule::from_fn(dims, vec![], vec![], |_, q| (vec![], q, dirs[q as usize - 1].clone()))
        .expect("empty supports");
    Machine::new(&rule)
}

/// A random reversible finite-state automaton of radius at most `r`: a
/// state-dependent shift or a walker after a pattern-controlled state
/// permutation.
pub fn random_rfa<R: Rng>(rng: &mut R, dims: Dims, r: i64) -> Machine {
    let window = hypercube(dims.d, r);
    loop {
        let support = random_subset(rng, &window);
        let p = random_state_permutation(rng, dims, &support);
        let outer = if dims.d == 1 && dims.n >= 2 && r >= 1 && rng.gen_bool(0.3) {
            involution_walker(dims, rng.gen_range(0..dims.n)).unwrap()
        } else {
            let dirs: Vec<IntVector> = (0..dims.k).map(|_| random_move(rng, dims.d, r.min(1))).collect();
            state_shift(dims, &dirs)
        };
        let m = compose(&outer, &p).unwrap();
        if m.radius() <= r {
            return m;
        }
    }
}

/// A random reversible machine of radius at most `r`: a product of one to
/// three local permutations, state permutations, RFAs and shifts.
pub fn random_reversible<R: Rng>(rng: &mut R, dims: Dims, r: i64) -> Machine {
    let window = hypercube(dims.d, r);
    loop {
        let mut acc = Machine::identity(dims);
        for _ in 0..rng.gen_range(1..=3) {
            let support = random_subset(rng, &window);
            let g = match rng.gen_range(0..4) {
                0 => random_local_permutation(rng, dims, &support),
                1 => random_state_permutation(rng, dims, &support),
                2 => random_rfa(rng, dims, r),
                _ => shift_machine(dims, &random_move(rng, dims.d, r.min(1))).unwrap(),
            };
            acc = compose(&g, &acc).unwrap();
            if acc.radius() > r {
                break;
            }
        }
        if acc.radius() <= r {
            return acc;
        }
    }
}
