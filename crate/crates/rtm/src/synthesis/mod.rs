//! Compiling oblivious machines into words over a fixed finite generating
//! set: unit shifts, swaps of the scanned cell with a unit neighbour, and
//! local permutations on the window `E0 = {0, e1, 2e1, 3e1}`.
//!
//! An oblivious machine is `T_v ∘ P_π` for a local permutation `π` of
//! `Σ^U × Q`. For `|U| <= 4` the window is padded to four cells; otherwise
//! one borrowed cell is added and `π` is reduced to permutations of four
//! cells at a time. Each of those is moved onto `E0` by a cell permutation
//! built from adjacent swaps, and the shift comes last.

mod gates;
mod perm;
mod reduce;

pub use gates::three_cycle_from_swaps;
pub use perm::{
    applications_product, compose_perms, controlled_corner, controlled_three_cycles, cycle3, hamming_transpositions,
    invert_perm, is_even, transposition, widen, word_product, Application, Perm, PointSpace,
};
pub use reduce::{reduce_to_width4, Reduction};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::machine::{compose, Machine};
use crate::rule::LocalRule;
use crate::vector::{box_points, least_point_outside, normalize_support, Dims, IntVector};
use crate::zoo::{cell_swap, classify, shift_machine};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorToken {
    /// `T_{± e_axis}`.
    Shift { axis: usize, dir: i8 },
    /// Swap the scanned cell with its `e_axis` neighbour.
    CellSwap(usize),
    /// Local permutation of `Q × Σ^{E0}`, as images of point indices (state
    /// most significant, then the cells of `E0` in order).
    WindowPerm(Perm),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorWord {
    pub dims: Dims,
    pub tokens: Vec<GeneratorToken>,
}

/// The window of the `WindowPerm` generators.
pub fn window_e0(d: usize) -> Vec<IntVector> {
    (0..4).map(|i| IntVector::unit(d, 0).scale(i)).collect()
}

/// Whether the token belongs to the finite generating set for `dims`.
pub fn is_generator(dims: Dims, t: &GeneratorToken) -> bool {
    match t {
        GeneratorToken::Shift { axis, dir } => *axis < dims.d && dir.abs() == 1,
        GeneratorToken::CellSwap(axis) => *axis < dims.d,
        GeneratorToken::WindowPerm(p) => {
            p.len() == PointSpace::new(dims.n, dims.k, 4).size() && crate::zoo::is_permutation(p)
        }
    }
}

/// `P_ρ` on `cells` (in wire order) for a permutation `ρ` of `Q × Σ^cells`.
pub fn window_machine(dims: Dims, cells: &[IntVector], rho: &[usize]) -> Result<Machine> {
    let space = PointSpace::new(dims.n, dims.k, cells.len());
    if rho.len() != space.size() || !crate::zoo::is_permutation(rho) {
        return Err(Error::NotBijective);
    }
    let sorted = normalize_support(cells.to_vec());
    if sorted.len() != cells.len() {
        return Err(Error::Malformed("window has repeated cells".into()));
    }
    let pos: Vec<usize> = cells.iter().map(|c| sorted.binary_search(c).unwrap()).collect();
    let rule = LocalRule::from_fn(dims, sorted.clone(), sorted.clone(), |p, q| {
        let mut dg = vec![q as usize - 1];
        dg.extend(pos.iter().map(|&j| p[j] as usize));
        let img = space.digits(rho[space.index(&dg)]);
        let mut out = vec![0u32; p.len()];
        for (i, &j) in pos.iter().enumerate() {
            out[j] = img[i + 1] as u32;
        }
        (out, img[0] as u32 + 1, IntVector::zero(dims.d))
    })?;
    Ok(Machine::new(&rule))
}

pub fn token_machine(dims: Dims, t: &GeneratorToken) -> Result<Machine> {
    if !is_generator(dims, t) {
        return Err(Error::Malformed(format!("{t:?} is not a generator")));
    }
    match t {
        GeneratorToken::Shift { axis, dir } => shift_machine(dims, &IntVector::unit(dims.d, *axis).scale(*dir as i64)),
        GeneratorToken::CellSwap(axis) => cell_swap(dims, *axis),
        GeneratorToken::WindowPerm(p) => window_machine(dims, &window_e0(dims.d), p),
    }
}

/// Compose the word, first token applied first.
pub fn eval_word(w: &GeneratorWord) -> Result<Machine> {
    let mut cache: HashMap<&GeneratorToken, Machine> = HashMap::new();
    let mut acc = Machine::identity(w.dims);
    for t in &w.tokens {
        if !cache.contains_key(t) {
            cache.insert(t, token_machine(w.dims, t)?);
        }
        acc = compose(&cache[t], &acc)?;
    }
    Ok(acc)
}

fn cancels(a: &GeneratorToken, b: &GeneratorToken) -> bool {
    use GeneratorToken::*;
    match (a, b) {
        (Shift { axis: x, dir: s }, Shift { axis: y, dir: t }) => x == y && s == &-t,
        (CellSwap(x), CellSwap(y)) => x == y,
        (WindowPerm(p), WindowPerm(r)) => p.iter().enumerate().all(|(i, &j)| r[j] == i),
        _ => false,
    }
}

/// Remove adjacent inverse pairs until none are left.
pub fn peephole(tokens: Vec<GeneratorToken>) -> Vec<GeneratorToken> {
    let mut out: Vec<GeneratorToken> = Vec::with_capacity(tokens.len());
    for t in tokens {
        if out.last().is_some_and(|l| cancels(l, &t)) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    out
}

fn shifts_to(v: &IntVector, sign: i64, out: &mut Vec<GeneratorToken>) {
    let axes: Vec<usize> = if sign > 0 { (0..v.dim()).collect() } else { (0..v.dim()).rev().collect() };
    for axis in axes {
        let c = v.0[axis] * sign;
        for _ in 0..c.abs() {
            out.push(GeneratorToken::Shift { axis, dir: c.signum() as i8 });
        }
    }
}

/// Tokens for swapping the cells `u` and `u + e_axis`.
fn swap_tokens(u: &IntVector, axis: usize, out: &mut Vec<GeneratorToken>) {
    shifts_to(u, 1, out);
    out.push(GeneratorToken::CellSwap(axis));
    shifts_to(u, -1, out);
}

/// Boustrophedon order of a box: consecutive points are unit neighbours and
/// the first axis varies fastest.
fn snake(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    if lo.len() == 1 {
        return (lo[0]..=hi[0]).map(|x| vec![x]).collect();
    }
    let mut out = Vec::new();
    for (r, row) in snake(&lo[1..], &hi[1..]).into_iter().enumerate() {
        let xs: Vec<i64> = if r % 2 == 0 {
            (lo[0]..=hi[0]).collect()
        } else {
            (lo[0]..=hi[0]).rev().collect()
        };
        for x in xs {
            let mut p = vec![x];
            p.extend(row.iter().copied());
            out.push(p);
        }
    }
    out
}

/// Adjacent swaps `(u, axis)` that carry the content of `from[i]` to
/// `to[i]` for every `i` (other cells get shuffled). Swaps are listed in
/// the order they are performed.
fn routing(d: usize, from: &[IntVector], to: &[IntVector]) -> Vec<(IntVector, usize)> {
    let all: Vec<&IntVector> = from.iter().chain(to).collect();
    let lo: Vec<i64> = (0..d).map(|i| all.iter().map(|v| v.0[i]).min().unwrap_or(0)).collect();
    let hi: Vec<i64> = (0..d).map(|i| all.iter().map(|v| v.0[i]).max().unwrap_or(0)).collect();
    let line: Vec<IntVector> = snake(&lo, &hi).into_iter().map(IntVector).collect();
    debug_assert_eq!(line.len(), box_points(&lo, &hi).len());
    let at: HashMap<&IntVector, usize> = line.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut dest = vec![usize::MAX; line.len()];
    for (f, t) in from.iter().zip(to) {
        dest[at[f]] = at[t];
    }
    let taken: Vec<bool> = {
        let mut t = vec![false; line.len()];
        for v in to {
            t[at[v]] = true;
        }
        t
    };
    let mut spare = (0..line.len()).filter(|&i| !taken[i]);
    for x in dest.iter_mut() {
        if *x == usize::MAX {
            *x = spare.next().unwrap();
        }
    }
    let mut swaps = Vec::new();
    let mut sorted = false;
    while !sorted {
        sorted = true;
        for i in 0..line.len().saturating_sub(1) {
            if dest[i] > dest[i + 1] {
                dest.swap(i, i + 1);
                sorted = false;
                let diff = &line[i + 1] - &line[i];
                let axis = diff.0.iter().position(|&c| c != 0).unwrap();
                let u = if diff.0[axis] > 0 { line[i].clone() } else { line[i + 1].clone() };
                swaps.push((u, axis));
            }
        }
    }
    swaps
}

/// Tokens for a cell permutation moving the content of `from[i]` to
/// `to[i]`, followed by the body, followed by the inverse permutation.
fn conjugated(d: usize, from: &[IntVector], to: &[IntVector], body: Vec<GeneratorToken>) -> Vec<GeneratorToken> {
    let swaps = routing(d, from, to);
    let mut out = Vec::new();
    for (u, a) in &swaps {
        swap_tokens(u, *a, &mut out);
    }
    out.extend(body);
    for (u, a) in swaps.iter().rev() {
        swap_tokens(u, *a, &mut out);
    }
    out
}

/// If the local permutation only moves cell contents around, the source
/// cell of every cell of `cells`.
fn as_cell_permutation(rule: &LocalRule, cells: &[IntVector]) -> Option<Vec<usize>> {
    if rule.dims().n < 2 {
        return None;
    }
    let mut src = Vec::new();
    for v in 0..cells.len() {
        let found = (0..cells.len()).find(|&a| {
            (0..rule.len()).all(|i| {
                let (p, _) = rule.lhs(i);
                rule.output(i).out[v] == p[a]
            })
        })?;
        src.push(found);
    }
    let states_fixed = (0..rule.len()).all(|i| rule.output(i).state == rule.lhs(i).1);
    (states_fixed && crate::zoo::is_permutation(&src)).then_some(src)
}

/// Compile an oblivious machine. `eval_word` of the result is the machine.
pub fn synthesize_ob(m: &Machine) -> Result<GeneratorWord> {
    let dims = m.dims();
    let v = match m.constant_move() {
        Some(v) if classify(m).is_oblivious => v,
        _ => return Err(Error::NotOblivious),
    };
    let lp = compose(&shift_machine(dims, &-&v)?, m)?;
    let rule = lp.rule();
    let u = normalize_support(rule.read_support().iter().chain(rule.write_support()).cloned().collect());
    let padded = rule.padded_to(&u);
    let mut tokens = Vec::new();
    if let Some(src) = as_cell_permutation(&padded, &u) {
        let from: Vec<IntVector> = src.iter().map(|&a| u[a].clone()).collect();
        for (uu, a) in routing(dims.d, &from, &u) {
            swap_tokens(&uu, a, &mut tokens);
        }
    } else {
        let mut cells = u.clone();
        let mut space = PointSpace::new(dims.n, dims.k, u.len());
        let mut target: Perm = (0..space.size())
            .map(|x| {
                let dg = space.digits(x);
                let pat: Vec<u32> = dg[1..].iter().map(|&s| s as u32).collect();
                let o = padded.lookup(&pat, dg[0] as u32 + 1);
                let mut img = vec![o.state as usize - 1];
                img.extend(o.out.iter().map(|&s| s as usize));
                space.index(&img)
            })
            .collect();
        while cells.len() < 4 || (cells.len() == u.len() && cells.len() > 4) {
            cells.push(least_point_outside(dims.d, &cells));
            (space, target) = widen(space, &target);
        }
        let apps = if cells.len() == 4 {
            vec![Application {
                wires: vec![0, 1, 2, 3],
                perm: target,
            }]
        } else {
            reduce_to_width4(space, &target, false)?.apps
        };
        let e0 = window_e0(dims.d);
        for a in apps {
            if a.perm.iter().enumerate().all(|(i, &j)| i == j) {
                continue;
            }
            let h: Vec<IntVector> = a.wires.iter().map(|&w| cells[w].clone()).collect();
            tokens.extend(conjugated(dims.d, &h, &e0, vec![GeneratorToken::WindowPerm(a.perm)]));
        }
    }
    shifts_to(&v, 1, &mut tokens);
    Ok(GeneratorWord {
        dims,
        tokens: peephole(tokens),
    })
}
