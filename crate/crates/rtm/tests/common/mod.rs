//! Brute-force oracles built only on single-step simulation.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtm::vector::hypercube;
use rtm::{apply_moving_head, Dims, HeadConfiguration, IntVector, Machine};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn v1(x: i64) -> IntVector {
    IntVector(vec![x])
}

/// Every assignment of symbols to `cells`.
pub fn assignments(n: u32, cells: &[IntVector]) -> Vec<Vec<(IntVector, u32)>> {
    let total = (n as usize).pow(cells.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut out = Vec::with_capacity(cells.len());
            for c in cells.iter().rev() {
                out.push((c.clone(), (code % n as usize) as u32));
                code /= n as usize;
            }
            out
        })
        .collect()
}

fn config(dims: Dims, tape: &[(IntVector, u32)], head: IntVector, q: u32) -> HeadConfiguration {
    HeadConfiguration::with_tape(dims, tape.iter().cloned(), Some((head, q)))
}

/// Injectivity on every configuration that could take part in a collision:
/// heads at 0 and within twice the radius, tapes free on `[-3r, 3r]^d`.
pub fn brute_injective(m: &Machine) -> bool {
    let dims = m.dims();
    let r = m.radius().max(0);
    let cells = hypercube(dims.d, 3 * r);
    let heads = hypercube(dims.d, 2 * r);
    let mut seen = HashSet::new();
    for tape in assignments(dims.n, &cells) {
        for h in &heads {
            for q in 1..=dims.k {
                let img = apply_moving_head(m, &config(dims, &tape, h.clone(), q)).unwrap();
                if !seen.insert(img) {
                    return false;
                }
            }
        }
    }
    true
}

/// Surjectivity: every configuration with tape on `[-2r, 2r]^d` and head
/// at 0 has a preimage, searched among heads in `[-r, r]^d` and all
/// rewrites of the cells the machine writes.
pub fn brute_surjective(m: &Machine) -> bool {
    let dims = m.dims();
    let r = m.radius().max(0);
    let cells = hypercube(dims.d, 2 * r);
    let g = m.rule().write_support().to_vec();
    let rewrites = assignments(dims.n, &g);
    for tape in assignments(dims.n, &cells) {
        for q in 1..=dims.k {
            let y = config(dims, &tape, IntVector::zero(dims.d), q);
            let found = hypercube(dims.d, r).into_iter().any(|h| {
                (1..=dims.k).any(|q0| {
                    rewrites.iter().any(|rw| {
                        let mut x = y.clone();
                        x.head = Some((h.clone(), q0));
                        for (a, s) in rw {
                            x.set(&h + a, *s);
                        }
                        apply_moving_head(m, &x).unwrap() == y
                    })
                })
            });
            if !found {
                return false;
            }
        }
    }
    true
}

/// One-step behaviour on every tape over a ball large enough for both.
pub fn behaviour_equal(a: &Machine, b: &Machine) -> bool {
    let dims = a.dims();
    let r = a.radius().max(b.radius()).max(0);
    let cells = hypercube(dims.d, r);
    assignments(dims.n, &cells).iter().all(|tape| {
        (1..=dims.k).all(|q| {
            let c = config(dims, tape, IntVector::zero(dims.d), q);
            apply_moving_head(a, &c).unwrap() == apply_moving_head(b, &c).unwrap()
        })
    })
}

/// Uniform measure of the image of the whole space, counted on a window
/// large enough to contain every image cylinder.
pub fn brute_image_measure(m: &Machine) -> (usize, usize) {
    let dims = m.dims();
    let r = m.radius().max(0);
    let cells = hypercube(dims.d, 2 * r);
    let all = assignments(dims.n, &cells);
    let total = all.len() * dims.k as usize;
    let mut hit: HashMap<(Vec<u32>, u32), bool> = HashMap::new();
    let pre = assignments(dims.n, &hypercube(dims.d, 3 * r));
    for tape in &pre {
        for q in 1..=dims.k {
            let img = apply_moving_head(m, &config(dims, tape, IntVector::zero(dims.d), q)).unwrap();
            let (h, q2) = img.head.clone().unwrap();
            let key: Vec<u32> = cells.iter().map(|c| img.get(&(&h + c))).collect();
            hit.insert((key, q2), true);
        }
    }
    (hit.len(), total)
}
