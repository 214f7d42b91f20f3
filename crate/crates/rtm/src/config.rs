//! Configurations and the two application semantics.
//!
//! In the moving-head model the tape stays put and the head walks over it.
//! In the moving-tape model the head sits at the origin: after each step the
//! tape is recentered on the new head position and the accumulated
//! displacement is kept in `offset`, so the absolute tape is `σ_offset(tape)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::machine::Machine;
use crate::vector::{Dims, IntVector};

/// Finite-support tape over background 0 with at most one head.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeadConfiguration {
    pub dims: Dims,
    tape: BTreeMap<IntVector, u32>,
    pub head: Option<(IntVector, u32)>,
}

fn set_cell(tape: &mut BTreeMap<IntVector, u32>, at: IntVector, s: u32) {
    if s == 0 {
        tape.remove(&at);
    } else {
        tape.insert(at, s);
    }
}

impl HeadConfiguration {
    pub fn new(dims: Dims, head: Option<(IntVector, u32)>) -> Self {
        HeadConfiguration {
            dims,
            tape: BTreeMap::new(),
            head,
        }
    }

    /// Build from (cell, symbol) pairs; zero symbols are dropped.
    pub fn with_tape<I: IntoIterator<Item = (IntVector, u32)>>(
        dims: Dims,
        cells: I,
        head: Option<(IntVector, u32)>,
    ) -> Self {
        let mut c = Self::new(dims, head);
        for (v, s) in cells {
            c.set(v, s);
        }
        c
    }

    pub fn get(&self, at: &IntVector) -> u32 {
        self.tape.get(at).copied().unwrap_or(0)
    }

    pub fn set(&mut self, at: IntVector, s: u32) {
        set_cell(&mut self.tape, at, s);
    }

    /// Nonzero cells in sorted order.
    pub fn cells(&self) -> impl Iterator<Item = (&IntVector, &u32)> {
        self.tape.iter()
    }

    /// Translate tape and head by `v`.
    pub fn translated(&self, v: &IntVector) -> Self {
        HeadConfiguration {
            dims: self.dims,
            tape: self.tape.iter().map(|(a, &s)| (a + v, s)).collect(),
            head: self.head.as_ref().map(|(h, q)| (h + v, *q)),
        }
    }
}

/// Head-centered tape plus the displacement accumulated so far.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TapeState {
    pub dims: Dims,
    tape: BTreeMap<IntVector, u32>,
    pub offset: IntVector,
    pub state: u32,
}

impl TapeState {
    pub fn new<I: IntoIterator<Item = (IntVector, u32)>>(dims: Dims, cells: I, state: u32) -> Self {
        let mut tape = BTreeMap::new();
        for (v, s) in cells {
            set_cell(&mut tape, v, s);
        }
        TapeState {
            dims,
            tape,
            offset: IntVector::zero(dims.d),
            state,
        }
    }

    pub fn get(&self, at: &IntVector) -> u32 {
        self.tape.get(at).copied().unwrap_or(0)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&IntVector, &u32)> {
        self.tape.iter()
    }

    /// Recenter a configuration on its head. `None` for headless input.
    pub fn from_head(c: &HeadConfiguration) -> Option<TapeState> {
        let (h, q) = c.head.as_ref()?;
        Some(TapeState {
            dims: c.dims,
            tape: c.tape.iter().map(|(a, &s)| (a - h, s)).collect(),
            offset: h.clone(),
            state: *q,
        })
    }

    /// Back to absolute coordinates, head at `offset`.
    pub fn to_head(&self) -> HeadConfiguration {
        HeadConfiguration {
            dims: self.dims,
            tape: self.tape.iter().map(|(a, &s)| (a + &self.offset, s)).collect(),
            head: Some((self.offset.clone(), self.state)),
        }
    }
}

fn check(m: &Machine, dims: Dims) -> Result<()> {
    if m.dims() != dims {
        return Err(Error::DimsMismatch);
    }
    Ok(())
}

/// One step of the moving-head machine. Headless configurations are fixed.
pub fn apply_moving_head(m: &Machine, c: &HeadConfiguration) -> Result<HeadConfiguration> {
    check(m, c.dims)?;
    let Some((h, q)) = &c.head else {
        return Ok(c.clone());
    };
    let rule = m.rule();
    let o = rule.output(rule.index_at(h, *q, |x| c.get(x)));
    let mut next = c.clone();
    for (a, &s) in rule.write_support().iter().zip(o.out) {
        next.set(h + a, s);
    }
    next.head = Some((h + o.mv, o.state));
    Ok(next)
}

/// Iterate [`apply_moving_head`].
pub fn run_moving_head(m: &Machine, c: &HeadConfiguration, steps: usize) -> Result<HeadConfiguration> {
    let mut c = c.clone();
    for _ in 0..steps {
        c = apply_moving_head(m, &c)?;
    }
    Ok(c)
}

/// One step of the moving-tape machine.
pub fn apply_moving_tape(m: &Machine, t: &TapeState) -> Result<TapeState> {
    check(m, t.dims)?;
    let rule = m.rule();
    let o = rule.output(rule.index_at(&IntVector::zero(t.dims.d), t.state, |x| t.get(x)));
    let mut tape = t.tape.clone();
    for (a, &s) in rule.write_support().iter().zip(o.out) {
        set_cell(&mut tape, a.clone(), s);
    }
    Ok(TapeState {
        dims: t.dims,
        tape: tape.into_iter().map(|(a, s)| (&a - o.mv, s)).collect(),
        offset: &t.offset + o.mv,
        state: o.state,
    })
}

/// The move vector emitted on this input.
pub fn shift_indicator(m: &Machine, t: &TapeState) -> Result<IntVector> {
    check(m, t.dims)?;
    let rule = m.rule();
    Ok(rule
        .output(rule.index_at(&IntVector::zero(t.dims.d), t.state, |x| t.get(x)))
        .mv
        .clone())
}
