//! Orders of machines, and the torsion decision procedure for
//! one-dimensional reversible finite-state automata.
//!
//! An RFA of infinite order on `Z` has a head that walks off to infinity on
//! some configuration, and by a pigeonhole argument also on a periodic one.
//! Finite order is semi-decided by checking `T^B = id`, infinite order by
//! searching periodic tapes `w^∞` for a drifting cycle; running both with a
//! growing budget always terminates, though no bound on the budget is known.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::machine::{power, Machine};
use crate::quotients::phi;
use crate::reversibility::is_reversible;
use crate::vector::IntVector;

/// A periodic walk to infinity: from phase `phase` of `word^∞` in state
/// `state`, the machine returns to the same phase and state for the first
/// time after `cycle_length` steps, displaced by `displacement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapeCertificate {
    pub word: Vec<u32>,
    pub state: u32,
    pub phase: usize,
    pub cycle_length: usize,
    pub displacement: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionVerdict {
    Finite(u64),
    Infinite(EscapeCertificate),
    /// No answer within this budget.
    Unknown(u64),
}

#[derive(Clone)]
struct Branch {
    head: IntVector,
    state: u32,
    start: u32,
    /// cell -> (original, current); `None` original means never observed
    cells: HashMap<IntVector, (Option<u32>, u32)>,
    mismatched: usize,
    poisoned: bool,
    t: u64,
}

/// `ok[t]` is true iff `T^t` is the identity, for `1 <= t <= bound`.
///
/// Runs every start state from head 0 and branches lazily on the symbol of
/// each cell the first time it is read. A branch where some cell has been
/// overwritten without being read can never be the identity (for `n >= 2`).
fn identity_times(m: &Machine, bound: u64) -> Vec<bool> {
    let dims = m.dims();
    let rule = m.rule();
    let mut ok = vec![true; bound as usize + 1];
    ok[0] = false;
    let mut stack: Vec<Branch> = (1..=dims.k)
        .rev()
        .map(|q| Branch {
            head: IntVector::zero(dims.d),
            state: q,
            start: q,
            cells: HashMap::new(),
            mismatched: 0,
            poisoned: false,
            t: 0,
        })
        .collect();
    while let Some(mut b) = stack.pop() {
        if !ok.iter().any(|&x| x) {
            break;
        }
        'run: while b.t < bound {
            if b.poisoned {
                for x in &mut ok[b.t as usize + 1..] {
                    *x = false;
                }
                break;
            }
            for a in rule.read_support() {
                let c = &b.head + a;
                if !b.cells.contains_key(&c) {
                    for s in (1..dims.n).rev() {
                        let mut nb = b.clone();
                        nb.cells.insert(c.clone(), (Some(s), s));
                        stack.push(nb);
                    }
                    b.cells.insert(c, (Some(0), 0));
                    continue 'run;
                }
            }
            let o = rule.output(rule.index_at(&b.head, b.state, |x| b.cells[x].1));
            for (a, &s) in rule.write_support().iter().zip(o.out) {
                let c = &b.head + a;
                let e = b.cells.entry(c).or_insert((None, s));
                match e.0 {
                    None if dims.n >= 2 => b.poisoned = true,
                    None => e.0 = Some(0),
                    Some(orig) => {
                        let before = e.1 != orig;
                        e.1 = s;
                        let after = e.1 != orig;
                        if before && !after {
                            b.mismatched -= 1;
                        } else if !before && after {
                            b.mismatched += 1;
                        }
                    }
                }
            }
            b.head = &b.head + o.mv;
            b.state = o.state;
            b.t += 1;
            let home = !b.poisoned && b.mismatched == 0 && b.state == b.start && b.head.is_zero();
            if !home {
                ok[b.t as usize] = false;
            }
        }
    }
    ok
}

/// Whether `T^e` is the identity, by lazy simulation.
pub fn power_is_identity(m: &Machine, e: u64) -> bool {
    e == 0 || identity_times(m, e)[e as usize]
}

/// Whether `T^e` is the identity, by composing tables.
pub fn power_is_identity_by_composition(m: &Machine, e: u64) -> Result<bool> {
    Ok(power(m, e as i64)?.is_identity())
}

/// Least `o <= bound` with `T^o = id`.
pub fn order_upto(m: &Machine, bound: u64) -> TorsionVerdict {
    let ok = identity_times(m, bound);
    match ok.iter().position(|&x| x) {
        Some(o) => TorsionVerdict::Finite(o as u64),
        None => TorsionVerdict::Unknown(bound),
    }
}

fn require_rfa1(m: &Machine) -> Result<()> {
    if m.dims().d != 1 {
        return Err(Error::NotOneDimensional);
    }
    if !m.never_writes() || !is_reversible(m) {
        return Err(Error::NotRFA);
    }
    Ok(())
}

/// Run on `word^∞` from `(phase, state)` until a `(phase, state)` pair
/// repeats; return the cycle entered as a certificate (displacement may be 0).
fn cycle_on(m: &Machine, word: &[u32], phase: usize, state: u32) -> EscapeCertificate {
    let rule = m.rule();
    let len = word.len() as i64;
    let mut seen: HashMap<(usize, u32), (usize, i64)> = HashMap::new();
    let (mut pos, mut q) = (phase as i64, state);
    let mut step = 0usize;
    loop {
        let ph = pos.rem_euclid(len) as usize;
        if let Some(&(s0, p0)) = seen.get(&(ph, q)) {
            return EscapeCertificate {
                word: word.to_vec(),
                state: q,
                phase: ph,
                cycle_length: step - s0,
                displacement: pos - p0,
            };
        }
        seen.insert((ph, q), (step, pos));
        let o = rule.output(rule.index_at(&IntVector(vec![pos]), q, |x| word[x.0[0].rem_euclid(len) as usize]));
        pos += o.mv.0[0];
        q = o.state;
        step += 1;
    }
}

fn escape_with_period(m: &Machine, len: usize) -> Option<EscapeCertificate> {
    let dims = m.dims();
    let total = (dims.n as usize).checked_pow(len as u32)?;
    let mut word = vec![0u32; len];
    for mut code in 0..total {
        for s in word.iter_mut().rev() {
            *s = (code % dims.n as usize) as u32;
            code /= dims.n as usize;
        }
        for q in 1..=dims.k {
            for phase in 0..len {
                let c = cycle_on(m, &word, phase, q);
                if c.displacement != 0 {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// First drifting cycle over periods `1..=max_period`, in the order
/// (period length, word lexicographically, state, phase).
pub fn find_escape_witness(m: &Machine, max_period: usize) -> Result<Option<EscapeCertificate>> {
    require_rfa1(m)?;
    Ok((1..=max_period).find_map(|len| escape_with_period(m, len)))
}

/// Decide torsion for `RFA(Z, n, k)`: never returns `Unknown`.
pub fn decide_torsion_rfa1(m: &Machine) -> Result<TorsionVerdict> {
    require_rfa1(m)?;
    let mut budget = 1u64;
    loop {
        if power_is_identity(m, budget) {
            return Ok(order_upto(m, budget));
        }
        if let Some(c) = escape_with_period(m, budget as usize) {
            return Ok(TorsionVerdict::Infinite(c));
        }
        budget += 1;
    }
}

/// Replay a certificate. False for anything malformed.
pub fn verify_certificate(m: &Machine, c: &EscapeCertificate) -> bool {
    let dims = m.dims();
    if require_rfa1(m).is_err()
        || c.word.is_empty()
        || c.word.iter().any(|&s| s >= dims.n)
        || c.state == 0
        || c.state > dims.k
        || c.phase >= c.word.len()
        || c.cycle_length == 0
        || c.displacement == 0
    {
        return false;
    }
    let rule = m.rule();
    let len = c.word.len() as i64;
    let (mut pos, mut q) = (c.phase as i64, c.state);
    for step in 1..=c.cycle_length {
        let o = rule.output(rule.index_at(&IntVector(vec![pos]), q, |x| c.word[x.0[0].rem_euclid(len) as usize]));
        pos += o.mv.0[0];
        q = o.state;
        let back = pos.rem_euclid(len) as usize == c.phase && q == c.state;
        if back != (step == c.cycle_length) {
            return false;
        }
    }
    pos - c.phase as i64 == c.displacement
}

/// lcm over the given periods of the order of the quotient permutation.
/// Divides the order of the machine whenever that is finite.
pub fn quotient_order_lcm(m: &Machine, ms: &[usize]) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for &p in ms {
        acc = acc.lcm(&phi(m, p)?.order());
    }
    Ok(acc)
}
