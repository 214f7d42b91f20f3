//! A controlled 3-cycle on `m >= 6` wires as four controlled swaps on
//! `m - 2` wires.
//!
//! Write the cycle as `corner -> next -> prev -> corner`, where `corner` is
//! adjacent to both other points. `X` is the coordinate where `corner` and
//! `prev` differ, `Y` where `corner` and `next` differ. With `A, B, C, D`
//! the first four tape wires outside `{X, Y}`:
//!
//! * `p1` swaps `X` between `corner[X]` and `prev[X]` when `Y = corner[Y]`
//!   and every wire except `C, D` agrees with `corner`;
//! * `p2` swaps `Y` between `corner[Y]` and `next[Y]` when `X = corner[X]`
//!   and every wire except `A, B` agrees with `corner`.
//!
//! Then `p1 p2 p1 p2` (left to right) is the 3-cycle: on points where both
//! gates are enabled it cycles the three points, and elsewhere at most one
//! of the two involutions acts, twice.

use crate::error::{Error, Result};

use super::perm::{controlled_corner, transposition, Application, PointSpace};

fn restricted(space: PointSpace, wires: &[usize], x: usize) -> usize {
    let sub = PointSpace::new(space.n, space.k, wires.len());
    let dg = space.digits(x);
    let mut sd = vec![dg[0]];
    sd.extend(wires.iter().map(|&w| dg[w + 1]));
    sub.index(&sd)
}

fn swap_on(space: PointSpace, excluded: [usize; 2], a: usize, b: usize) -> Application {
    let wires: Vec<usize> = (0..space.m).filter(|w| !excluded.contains(w)).collect();
    let sub = PointSpace::new(space.n, space.k, wires.len());
    let perm = transposition(sub.size(), restricted(space, &wires, a), restricted(space, &wires, b));
    Application { wires, perm }
}

/// The four controlled swaps `[p1, p2, p1, p2]`, each on `m - 2` wires.
pub fn three_cycle_from_swaps(space: PointSpace, cycle: [usize; 3]) -> Result<[Application; 4]> {
    if space.m < 6 || cycle.iter().any(|&x| x >= space.size()) {
        return Err(Error::NotAControlled3Cycle);
    }
    let corner = controlled_corner(space, cycle).ok_or(Error::NotAControlled3Cycle)?;
    let i = cycle.iter().position(|&x| x == corner).unwrap();
    let next = cycle[(i + 1) % 3];
    let prev = cycle[(i + 2) % 3];
    let x = space.differing(corner, prev)[0];
    let y = space.differing(corner, next)[0];
    // tape wire w is coordinate w + 1
    let free: Vec<usize> = (0..space.m).filter(|&w| w + 1 != x && w + 1 != y).take(4).collect();
    let p1 = swap_on(space, [free[2], free[3]], corner, prev);
    let p2 = swap_on(space, [free[0], free[1]], corner, next);
    Ok([p1.clone(), p2.clone(), p1, p2])
}
