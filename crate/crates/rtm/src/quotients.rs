//! Finite quotients `Y_m`: `m`-periodic tapes with one head per period cell
//! of the sublattice `offset + m Z^d`, all in the same state.
//!
//! Points are indexed state first, then head offset, then tape digits, each
//! in mixed radix with the first coordinate most significant.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::machine::{compose, Machine};
use crate::reversibility::is_reversible;
use crate::vector::{Dims, IntVector};

/// Largest quotient we are willing to enumerate.
pub const MAX_POINTS: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicConfiguration {
    pub dims: Dims,
    pub m: usize,
    /// Symbols on `[0, m)^d`.
    pub tape: Vec<u32>,
    pub head_offset: IntVector,
    pub state: u32,
}

fn cells(dims: Dims, m: usize) -> usize {
    m.pow(dims.d as u32)
}

/// `|Y_m| = k m^d n^(m^d)`, or `None` past [`MAX_POINTS`].
pub fn quotient_size(dims: Dims, m: usize) -> Option<usize> {
    let c = cells(dims, m);
    let mut s = dims.k as usize * c;
    for _ in 0..c {
        s = s.checked_mul(dims.n as usize)?;
        if s > MAX_POINTS {
            return None;
        }
    }
    Some(s)
}

fn cell_index(v: &IntVector, m: usize) -> usize {
    v.0.iter()
        .fold(0, |acc, &c| acc * m + c.rem_euclid(m as i64) as usize)
}

fn cell_vector(mut i: usize, d: usize, m: usize) -> IntVector {
    let mut v = vec![0i64; d];
    for c in v.iter_mut().rev() {
        *c = (i % m) as i64;
        i /= m;
    }
    IntVector(v)
}

impl PeriodicConfiguration {
    pub fn index(&self) -> usize {
        let c = cells(self.dims, self.m);
        let mut idx = (self.state as usize - 1) * c + cell_index(&self.head_offset, self.m);
        for &s in &self.tape {
            idx = idx * self.dims.n as usize + s as usize;
        }
        idx
    }

    pub fn from_index(dims: Dims, m: usize, mut idx: usize) -> Self {
        let c = cells(dims, m);
        let mut tape = vec![0u32; c];
        for s in tape.iter_mut().rev() {
            *s = (idx % dims.n as usize) as u32;
            idx /= dims.n as usize;
        }
        let off = idx % c;
        let state = (idx / c) as u32 + 1;
        PeriodicConfiguration {
            dims,
            m,
            tape,
            head_offset: cell_vector(off, dims.d, m),
            state,
        }
    }

    pub fn get(&self, v: &IntVector) -> u32 {
        self.tape[cell_index(v, self.m)]
    }
}

/// One synchronized step at every head of the lattice.
pub fn act_on_periodic(t: &Machine, c: &PeriodicConfiguration) -> Result<PeriodicConfiguration> {
    if t.dims() != c.dims {
        return Err(Error::DimsMismatch);
    }
    if !t.never_writes() && c.m as i64 <= 2 * t.radius() {
        return Err(Error::PeriodTooSmall {
            m: c.m,
            radius: t.radius(),
        });
    }
    let rule = t.rule();
    let h = &c.head_offset;
    let o = rule.output(rule.index_at(h, c.state, |x| c.get(x)));
    let mut next = c.clone();
    for (a, &s) in rule.write_support().iter().zip(o.out) {
        next.tape[cell_index(&(h + a), c.m)] = s;
    }
    let moved = h + o.mv;
    next.head_offset = IntVector(moved.0.iter().map(|x| x.rem_euclid(c.m as i64)).collect());
    next.state = o.state;
    Ok(next)
}

/// The induced map on all of `Y_m`, as images of point indices.
pub fn quotient_map(t: &Machine, m: usize) -> Result<Vec<usize>> {
    let size = quotient_size(t.dims(), m).ok_or(Error::PeriodTooSmall {
        m,
        radius: t.radius(),
    })?;
    (0..size)
        .map(|i| Ok(act_on_periodic(t, &PeriodicConfiguration::from_index(t.dims(), m, i))?.index()))
        .collect()
}

/// A bijection of `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePermutation(pub Vec<usize>);

impl FinitePermutation {
    pub fn identity(n: usize) -> Self {
        FinitePermutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &FinitePermutation) -> FinitePermutation {
        FinitePermutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> FinitePermutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        FinitePermutation(inv)
    }

    /// Cycle lengths, in order of least element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn sign(&self) -> i8 {
        let odd = self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count() % 2;
        if odd == 1 {
            -1
        } else {
            1
        }
    }

    pub fn order(&self) -> BigUint {
        self.cycle_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, l| acc.lcm(&BigUint::from(l)))
    }
}

fn require_rfa(t: &Machine) -> Result<()> {
    if !t.never_writes() || !is_reversible(t) {
        return Err(Error::NotRFA);
    }
    Ok(())
}

/// The permutation of `Y_m` induced by a reversible finite-state automaton.
pub fn phi(t: &Machine, m: usize) -> Result<FinitePermutation> {
    require_rfa(t)?;
    Ok(FinitePermutation(quotient_map(t, m)?))
}

pub fn sign_vector(t: &Machine, ms: &[usize]) -> Result<Vec<i8>> {
    ms.iter().map(|&m| Ok(phi(t, m)?.sign())).collect()
}

/// Outcome of [`lef_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefReport {
    pub period: usize,
    pub holds: bool,
    pub witness: Option<String>,
}

fn first_collision(map: &[usize]) -> Option<(usize, usize)> {
    let mut pre = vec![usize::MAX; map.len()];
    for (i, &j) in map.iter().enumerate() {
        if pre[j] != usize::MAX {
            return Some((pre[j], i));
        }
        pre[j] = i;
    }
    None
}

/// Check that single local application on `Y_{8r}` is injective for every
/// machine in `ms` and every product of two, and multiplicative on pairs.
pub fn lef_check(ms: &[Machine], r: i64) -> Result<LefReport> {
    for t in ms {
        if t.radius() > r {
            return Err(Error::RadiusBound {
                radius: t.radius(),
                bound: r,
            });
        }
    }
    let period = (8 * r).max(1) as usize;
    let maps: Vec<Vec<usize>> = ms.iter().map(|t| quotient_map(t, period)).collect::<Result<_>>()?;
    let fail = |w: String| LefReport {
        period,
        holds: false,
        witness: Some(w),
    };
    for (i, map) in maps.iter().enumerate() {
        if let Some((a, b)) = first_collision(map) {
            return Ok(fail(format!("machine {i} maps points {a} and {b} together")));
        }
    }
    for (i, t) in ms.iter().enumerate() {
        for (j, u) in ms.iter().enumerate() {
            let prod = quotient_map(&compose(t, u)?, period)?;
            if let Some((a, b)) = first_collision(&prod) {
                return Ok(fail(format!("product {i}*{j} maps points {a} and {b} together")));
            }
            for (x, &y) in prod.iter().enumerate() {
                if maps[i][maps[j][x]] != y {
                    return Ok(fail(format!("product {i}*{j} differs at point {x}")));
                }
            }
        }
    }
    Ok(LefReport {
        period,
        holds: true,
        witness: None,
    })
}
