//! Permutations of `Q × Σ^m` and their decomposition into controlled gates.
//!
//! A point `(q, s_1, ..., s_m)` (state 0-based here) has index
//! `q n^m + Σ s_i n^(m-i)`: coordinate 0 is the state, coordinate `i >= 1`
//! is tape wire `i - 1`. Words of permutations are applied first element
//! first.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Perm = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointSpace {
    pub n: u32,
    pub k: u32,
    /// Number of tape wires.
    pub m: usize,
}

impl PointSpace {
    pub fn new(n: u32, k: u32, m: usize) -> Self {
        PointSpace { n, k, m }
    }

    pub fn size(&self) -> usize {
        self.k as usize * (self.n as usize).pow(self.m as u32)
    }

    fn radix(&self, coord: usize) -> usize {
        if coord == 0 {
            self.k as usize
        } else {
            self.n as usize
        }
    }

    fn weight(&self, coord: usize) -> usize {
        (self.n as usize).pow((self.m - coord) as u32)
    }

    /// Coordinates of a point, state first.
    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.m + 1];
        for c in (0..=self.m).rev() {
            out[c] = idx % self.radix(c);
            idx /= self.radix(c);
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        (0..=self.m).fold(0, |acc, c| acc * self.radix(c) + digits[c])
    }

    pub fn digit(&self, idx: usize, coord: usize) -> usize {
        idx / self.weight(coord) % self.radix(coord)
    }

    fn with_digit(&self, idx: usize, coord: usize, v: usize) -> usize {
        let w = self.weight(coord);
        idx - self.digit(idx, coord) * w + v * w
    }

    /// Coordinates in which two points differ.
    pub fn differing(&self, a: usize, b: usize) -> Vec<usize> {
        (0..=self.m)
            .filter(|&c| self.digit(a, c) != self.digit(b, c))
            .collect()
    }

    pub fn hamming(&self, a: usize, b: usize) -> usize {
        self.differing(a, b).len()
    }

    /// Neighbours differing in exactly `coord`.
    fn neighbours_in(&self, a: usize, coord: usize) -> impl Iterator<Item = usize> + '_ {
        let here = self.digit(a, coord);
        (0..self.radix(coord))
            .filter(move |&v| v != here)
            .map(move |v| self.with_digit(a, coord, v))
    }

    /// The space with one more wire appended.
    pub fn widened(&self) -> PointSpace {
        PointSpace::new(self.n, self.k, self.m + 1)
    }
}

pub fn identity(size: usize) -> Perm {
    (0..size).collect()
}

pub fn is_permutation(p: &[usize]) -> bool {
    crate::zoo::is_permutation(p)
}

/// `then ∘ first`.
pub fn compose_perms(first: &[usize], then: &[usize]) -> Perm {
    first.iter().map(|&i| then[i]).collect()
}

pub fn invert_perm(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

pub fn is_even(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut x = s;
        let mut len = 0;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        transpositions += len.max(1) - 1;
    }
    transpositions % 2 == 0
}

pub fn transposition(size: usize, a: usize, b: usize) -> Perm {
    let mut p = identity(size);
    p.swap(a, b);
    p
}

/// `a -> b -> c -> a`.
pub fn cycle3(size: usize, [a, b, c]: [usize; 3]) -> Perm {
    let mut p = identity(size);
    p[a] = b;
    p[b] = c;
    p[c] = a;
    p
}

/// Product of a word of permutations, first element applied first.
pub fn word_product<'a, I: IntoIterator<Item = &'a Perm>>(size: usize, word: I) -> Perm {
    word.into_iter()
        .fold(identity(size), |acc, p| compose_perms(&acc, p))
}

/// Extend by one wire that the permutation leaves alone.
pub fn widen(space: PointSpace, p: &[usize]) -> (PointSpace, Perm) {
    let n = space.n as usize;
    let mut out = vec![0; p.len() * n];
    for (i, &j) in p.iter().enumerate() {
        for a in 0..n {
            out[i * n + a] = j * n + a;
        }
    }
    (space.widened(), out)
}

fn tree_parent(space: PointSpace, v: usize) -> Option<usize> {
    (0..=space.m)
        .find(|&c| space.digit(v, c) != 0)
        .map(|c| space.with_digit(v, c, 0))
}

fn tree_path(space: PointSpace, a: usize, b: usize) -> Vec<usize> {
    let up = |mut v: usize| {
        let mut chain = vec![v];
        while let Some(p) = tree_parent(space, v) {
            chain.push(p);
            v = p;
        }
        chain
    };
    let (ua, ub) = (up(a), up(b));
    let lca = *ua.iter().find(|x| ub.contains(x)).unwrap();
    let mut path: Vec<usize> = ua.iter().copied().take_while(|&x| x != lca).collect();
    path.push(lca);
    let back: Vec<usize> = ub.iter().copied().take_while(|&x| x != lca).collect();
    path.extend(back.into_iter().rev());
    path
}

/// Controlled swaps (transpositions at Hamming distance one) whose product
/// is `target`. Each cycle is split into transpositions, and each of those
/// is routed along the tree where every point hangs off its least-index
/// neighbour.
pub fn hamming_transpositions(space: PointSpace, target: &[usize]) -> Result<Vec<(usize, usize)>> {
    if target.len() != space.size() || !is_permutation(target) {
        return Err(Error::NotBijective);
    }
    let mut out = Vec::new();
    let mut seen = vec![false; target.len()];
    for s in 0..target.len() {
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = target[x];
        }
        for w in cyc.windows(2).rev() {
            let path = tree_path(space, w[0], w[1]);
            let steps: Vec<(usize, usize)> = path.windows(2).map(|e| (e[0], e[1])).collect();
            out.extend(steps.iter().copied());
            out.extend(steps.iter().rev().skip(1).copied());
        }
    }
    Ok(out)
}

/// The corner of a controlled 3-cycle: the point adjacent to both others.
pub fn controlled_corner(space: PointSpace, pts: [usize; 3]) -> Option<usize> {
    let d = |a, b| space.hamming(a, b);
    let [a, b, c] = pts;
    let mut ds = [d(a, b), d(b, c), d(a, c)];
    ds.sort();
    if ds != [1, 1, 2] {
        return None;
    }
    [a, b, c]
        .into_iter()
        .find(|&x| pts.iter().filter(|&&y| y != x).all(|&y| d(x, y) == 1))
}

/// A third point making `(a b z)` a controlled 3-cycle, inside `alive`.
fn third_point(space: PointSpace, a: usize, b: usize, alive: &[bool]) -> Option<usize> {
    let c = space.differing(a, b)[0];
    let mut best: Option<usize> = None;
    for coord in (0..=space.m).filter(|&x| x != c) {
        for z in space.neighbours_in(a, coord).chain(space.neighbours_in(b, coord)) {
            if alive[z] && best.is_none_or(|bz| z < bz) {
                best = Some(z);
            }
        }
    }
    best
}

/// Controlled 3-cycles `[a, b, c]` (meaning `a -> b -> c -> a`) whose product
/// is the even permutation `target`.
///
/// Points are fixed one at a time in descending index order: the point
/// currently sent to `v` is pushed towards `v` along Hamming edges, one
/// controlled 3-cycle per edge, never touching points already fixed. The
/// last three points `0, 1, n` form a controlled 3-cycle themselves.
pub fn controlled_three_cycles(space: PointSpace, target: &[usize]) -> Result<Vec<[usize; 3]>> {
    let size = space.size();
    if target.len() != size || !is_permutation(target) {
        return Err(Error::NotBijective);
    }
    if !is_even(target) {
        return Err(Error::ParityObstruction);
    }
    if target.iter().enumerate().all(|(i, &j)| i == j) {
        return Ok(Vec::new());
    }
    let n = space.n as usize;
    if n < 2 || size <= n {
        return Err(Error::Malformed("point space too small for controlled 3-cycles".into()));
    }
    let last = [0, 1, n];
    let mut sigma = target.to_vec();
    let mut alive = vec![true; size];
    let mut applied: Vec<[usize; 3]> = Vec::new();
    let apply = |sigma: &mut Vec<usize>, c: [usize; 3]| {
        let p = cycle3(size, c);
        for x in sigma.iter_mut() {
            *x = p[*x];
        }
    };
    for v in (0..size).rev() {
        if last.contains(&v) {
            continue;
        }
        let w = sigma[v];
        if w != v {
            for (a, b) in route(space, w, v, &alive)? {
                let z = third_point(space, a, b, &alive).unwrap();
                applied.push([a, b, z]);
                apply(&mut sigma, [a, b, z]);
            }
            debug_assert_eq!(sigma[v], v);
        }
        alive[v] = false;
    }
    if sigma[0] != 0 {
        let (s0, s1) = (sigma[0], sigma[sigma[0]]);
        let c = [0, s1, s0];
        applied.push(c);
        apply(&mut sigma, c);
    }
    debug_assert!(sigma.iter().enumerate().all(|(i, &j)| i == j));
    Ok(applied.into_iter().rev().map(|[a, b, c]| [a, c, b]).collect())
}

/// Shortest path of usable edges from `from` to `to` inside `alive`.
fn route(space: PointSpace, from: usize, to: usize, alive: &[bool]) -> Result<Vec<(usize, usize)>> {
    let mut prev = vec![usize::MAX; alive.len()];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(a) = queue.pop_front() {
        if a == to {
            break;
        }
        for coord in 0..=space.m {
            for b in space.neighbours_in(a, coord) {
                if alive[b] && prev[b] == usize::MAX && third_point(space, a, b, alive).is_some() {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
    }
    if prev[to] == usize::MAX {
        return Err(Error::Malformed("no route between points".into()));
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    Ok(path.windows(2).map(|e| (e[0], e[1])).collect())
}

/// A permutation of `Q × Σ^ℓ` applied on the listed tape wires of a larger
/// space; the state always takes part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Application {
    pub wires: Vec<usize>,
    pub perm: Perm,
}

impl Application {
    pub fn width(&self) -> usize {
        self.wires.len()
    }

    pub fn apply(&self, space: PointSpace, x: usize) -> usize {
        let sub = PointSpace::new(space.n, space.k, self.wires.len());
        let mut dg = space.digits(x);
        let mut sd: Vec<usize> = vec![dg[0]];
        sd.extend(self.wires.iter().map(|&w| dg[w + 1]));
        let img = sub.digits(self.perm[sub.index(&sd)]);
        dg[0] = img[0];
        for (i, &w) in self.wires.iter().enumerate() {
            dg[w + 1] = img[i + 1];
        }
        space.index(&dg)
    }

    pub fn to_perm(&self, space: PointSpace) -> Perm {
        (0..space.size()).map(|x| self.apply(space, x)).collect()
    }
}

/// Product of applications, first applied first.
pub fn applications_product(space: PointSpace, apps: &[Application]) -> Perm {
    let mut acc = identity(space.size());
    for a in apps {
        for x in acc.iter_mut() {
            *x = a.apply(space, *x);
        }
    }
    acc
}
