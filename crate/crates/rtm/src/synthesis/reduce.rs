//! Reduction of an arbitrary permutation of `Q × Σ^m` to applications of
//! permutations of `Q × Σ^4`.
//!
//! Even permutations split into controlled 3-cycles, each of which becomes
//! four controlled swaps on `m - 2` wires. A swap on more than four wires is
//! widened by one idle wire and reduced again on `m - 1` wires. For odd `n`
//! an odd target first absorbs one controlled swap on four wires; for even
//! `n` every application on fewer wires is even, so an odd target needs a
//! borrowed wire.

use crate::error::{Error, Result};

use super::gates::three_cycle_from_swaps;
use super::perm::{
    applications_product, compose_perms, controlled_three_cycles, is_even, is_permutation, transposition,
    widen, Application, Perm, PointSpace,
};

/// Width-4 applications realizing a permutation, possibly with one extra
/// borrowed wire (the last one), which is restored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub space: PointSpace,
    pub ancilla: bool,
    pub apps: Vec<Application>,
}

pub fn reduce_to_width4(space: PointSpace, target: &[usize], allow_ancilla: bool) -> Result<Reduction> {
    if target.len() != space.size() || !is_permutation(target) {
        return Err(Error::NotBijective);
    }
    let needs_wire = space.m < 6 || (space.n % 2 == 0 && !is_even(target));
    if needs_wire {
        if !allow_ancilla {
            return Err(if space.m < 6 {
                Error::Malformed("reduction needs at least 6 wires".into())
            } else {
                Error::ParityObstruction
            });
        }
        let (wide, lifted) = widen(space, target);
        if wide.m < 6 {
            return Err(Error::Malformed("reduction needs at least 5 wires plus the ancilla".into()));
        }
        return Ok(Reduction {
            space: wide,
            ancilla: true,
            apps: reduce(wide, &lifted)?,
        });
    }
    Ok(Reduction {
        space,
        ancilla: false,
        apps: reduce(space, target)?,
    })
}

fn reduce(space: PointSpace, target: &[usize]) -> Result<Vec<Application>> {
    let mut apps = Vec::new();
    let mut rest: Perm = target.to_vec();
    if !is_even(target) {
        let sub = PointSpace::new(space.n, space.k, 4);
        let g0 = Application {
            wires: vec![0, 1, 2, 3],
            perm: transposition(sub.size(), 0, 1),
        };
        rest = compose_perms(&g0.to_perm(space), &rest);
        apps.push(g0);
    }
    for cycle in controlled_three_cycles(space, &rest)? {
        for swap in three_cycle_from_swaps(space, cycle)? {
            if swap.width() == 4 {
                apps.push(swap);
                continue;
            }
            let extra = (0..space.m).find(|w| !swap.wires.contains(w)).unwrap();
            let sub = PointSpace::new(space.n, space.k, swap.width());
            let (wide, lifted) = widen(sub, &swap.perm);
            let mut wires = swap.wires.clone();
            wires.push(extra);
            for a in reduce(wide, &lifted)? {
                apps.push(Application {
                    wires: a.wires.iter().map(|&w| wires[w]).collect(),
                    perm: a.perm,
                });
            }
        }
    }
    debug_assert_eq!(applications_product(space, &apps), target);
    Ok(apps)
}
