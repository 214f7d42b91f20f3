//! Local rules and their canonical form.
//!
//! A rule reads a pattern over a finite read support `F`, writes a pattern
//! over a write support `G`, updates the state and moves the head. The table
//! is total and indexed in mixed radix: pattern digits in sorted-support
//! order, then the state (least significant).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::vector::{normalize_support, Dims, IntVector};

/// Hard cap on table sizes, to fail loudly instead of exhausting memory.
pub const MAX_TABLE: usize = 1 << 26;

/// One table line, as accepted by [`make_rule`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub pattern: Vec<u32>,
    pub state: u32,
    pub out: Vec<u32>,
    pub out_state: u32,
    pub mv: IntVector,
}

/// Borrowed view of the right-hand side of one table line.
#[derive(Clone, Copy, Debug)]
pub struct Output<'a> {
    pub out: &'a [u32],
    pub state: u32,
    pub mv: &'a IntVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalRule {
    dims: Dims,
    read: Vec<IntVector>,
    write: Vec<IntVector>,
    outs: Vec<u32>,
    states: Vec<u32>,
    move_set: Vec<IntVector>,
    move_idx: Vec<u32>,
}

pub(crate) fn table_size(dims: Dims, cells: usize) -> Result<usize> {
    let mut s = dims.k as usize;
    for _ in 0..cells {
        s = s
            .checked_mul(dims.n as usize)
            .filter(|&s| s <= MAX_TABLE)
            .ok_or_else(|| Error::Malformed(format!("table over {cells} cells is too large")))?;
    }
    Ok(s)
}

/// Decode a table index into (pattern digits, state).
pub(crate) fn decode(dims: Dims, cells: usize, mut idx: usize, pat: &mut [u32]) -> u32 {
    let q = (idx % dims.k as usize) as u32 + 1;
    idx /= dims.k as usize;
    for i in (0..cells).rev() {
        pat[i] = (idx % dims.n as usize) as u32;
        idx /= dims.n as usize;
    }
    q
}

pub(crate) fn encode(dims: Dims, pat: &[u32], q: u32) -> usize {
    let mut idx = 0usize;
    for &s in pat {
        idx = idx * dims.n as usize + s as usize;
    }
    idx * dims.k as usize + (q - 1) as usize
}

fn check_support(dims: Dims, s: &[IntVector]) -> Result<()> {
    for v in s {
        if v.dim() != dims.d {
            return Err(Error::BadVector(v.clone()));
        }
    }
    Ok(())
}

impl LocalRule {
    /// Build a rule from a function on (pattern over `read`, state). Supports
    /// are sorted first; the function sees pattern digits in sorted order and
    /// must return write digits in sorted `write` order.
    pub fn from_fn<Fn_>(
        dims: Dims,
        read: Vec<IntVector>,
        write: Vec<IntVector>,
        mut f: Fn_,
    ) -> Result<LocalRule>
    where
        Fn_: FnMut(&[u32], u32) -> (Vec<u32>, u32, IntVector),
    {
        let read = normalize_support(read);
        let write = normalize_support(write);
        check_support(dims, &read)?;
        check_support(dims, &write)?;
        let size = table_size(dims, read.len())?;
        let mut outs = Vec::with_capacity(size * write.len());
        let mut states = Vec::with_capacity(size);
        let mut moves: BTreeMap<IntVector, u32> = BTreeMap::new();
        let mut raw_idx = Vec::with_capacity(size);
        let mut pat = vec![0u32; read.len()];
        for idx in 0..size {
            let q = decode(dims, read.len(), idx, &mut pat);
            let (o, q2, mv) = f(&pat, q);
            if o.len() != write.len() {
                return Err(Error::Malformed(format!(
                    "output for {pat:?} in state {q} has {} symbols, expected {}",
                    o.len(),
                    write.len()
                )));
            }
            if let Some(&s) = o.iter().find(|&&s| s >= dims.n) {
                return Err(Error::SymbolOutOfRange {
                    pattern: pat.clone(),
                    state: q,
                    symbol: s,
                });
            }
            if q2 < 1 || q2 > dims.k {
                return Err(Error::StateOutOfRange {
                    pattern: pat.clone(),
                    state: q,
                    value: q2,
                });
            }
            if mv.dim() != dims.d {
                return Err(Error::BadVector(mv));
            }
            outs.extend_from_slice(&o);
            states.push(q2);
            let next = moves.len() as u32;
            raw_idx.push(*moves.entry(mv).or_insert(next));
        }
        Ok(Self::assemble(dims, read, write, outs, states, moves, raw_idx))
    }

    fn assemble(
        dims: Dims,
        read: Vec<IntVector>,
        write: Vec<IntVector>,
        outs: Vec<u32>,
        states: Vec<u32>,
        moves: BTreeMap<IntVector, u32>,
        raw_idx: Vec<u32>,
    ) -> LocalRule {
        // BTreeMap iteration is sorted; remap insertion ids to sorted ids.
        let mut remap = vec![0u32; moves.len()];
        let mut move_set = Vec::with_capacity(moves.len());
        for (i, (mv, id)) in moves.into_iter().enumerate() {
            remap[id as usize] = i as u32;
            move_set.push(mv);
        }
        let move_idx = raw_idx.into_iter().map(|i| remap[i as usize]).collect();
        LocalRule {
            dims,
            read,
            write,
            outs,
            states,
            move_set,
            move_idx,
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn read_support(&self) -> &[IntVector] {
        &self.read
    }

    pub fn write_support(&self) -> &[IntVector] {
        &self.write
    }

    /// Number of table lines, `k * n^|F|`.
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The distinct move vectors, sorted.
    pub fn moves(&self) -> &[IntVector] {
        &self.move_set
    }

    pub fn output(&self, idx: usize) -> Output<'_> {
        let w = self.write.len();
        Output {
            out: &self.outs[idx * w..(idx + 1) * w],
            state: self.states[idx],
            mv: &self.move_set[self.move_idx[idx] as usize],
        }
    }

    pub fn index_of(&self, pattern: &[u32], state: u32) -> usize {
        encode(self.dims, pattern, state)
    }

    pub fn lookup(&self, pattern: &[u32], state: u32) -> Output<'_> {
        self.output(self.index_of(pattern, state))
    }

    /// Decode a line index into its pattern and state.
    pub fn lhs(&self, idx: usize) -> (Vec<u32>, u32) {
        let mut pat = vec![0; self.read.len()];
        let q = decode(self.dims, self.read.len(), idx, &mut pat);
        (pat, q)
    }

    /// Read the pattern at `head` through `tape` and return the line index.
    pub fn index_at<T: Fn(&IntVector) -> u32>(&self, head: &IntVector, state: u32, tape: T) -> usize {
        let mut idx = 0usize;
        for a in &self.read {
            idx = idx * self.dims.n as usize + tape(&(head + a)) as usize;
        }
        idx * self.dims.k as usize + (state - 1) as usize
    }

    /// All lines in index order.
    pub fn entries(&self) -> Vec<Entry> {
        (0..self.len())
            .map(|i| {
                let (pattern, state) = self.lhs(i);
                let o = self.output(i);
                Entry {
                    pattern,
                    state,
                    out: o.out.to_vec(),
                    out_state: o.state,
                    mv: o.mv.clone(),
                }
            })
            .collect()
    }

    /// The unique minimal rule defining the same machine.
    pub fn canonicalize(&self) -> LocalRule {
        Full::pad(self).minimize().into_rule()
    }

    /// An equivalent rule reading and writing exactly `window`, which must
    /// contain both supports.
    pub fn padded_to(&self, window: &[IntVector]) -> LocalRule {
        let window = normalize_support(window.to_vec());
        let fpos: Vec<usize> = self
            .read
            .iter()
            .map(|a| window.binary_search(a).expect("window must contain read support"))
            .collect();
        let gpos: Vec<Option<usize>> = window
            .iter()
            .map(|a| self.write.binary_search(a).ok())
            .collect();
        assert!(self.write.iter().all(|a| window.binary_search(a).is_ok()));
        let mut sub = vec![0u32; self.read.len()];
        LocalRule::from_fn(self.dims, window.clone(), window.clone(), |p, q| {
            for (i, &j) in fpos.iter().enumerate() {
                sub[i] = p[j];
            }
            let o = self.lookup(&sub, q);
            let out = gpos
                .iter()
                .enumerate()
                .map(|(j, g)| match g {
                    Some(g) => o.out[*g],
                    None => p[j],
                })
                .collect();
            (out, o.state, o.mv.clone())
        })
        .expect("padding a valid rule")
    }
}

/// Validating constructor for rules given as explicit lines.
pub fn make_rule(
    dims: Dims,
    read: Vec<IntVector>,
    write: Vec<IntVector>,
    table: &[Entry],
) -> Result<LocalRule> {
    let read_sorted = normalize_support(read.clone());
    let write_sorted = normalize_support(write.clone());
    if read_sorted.len() != read.len() || write_sorted.len() != write.len() {
        return Err(Error::Malformed("support has duplicate cells".into()));
    }
    check_support(dims, &read)?;
    check_support(dims, &write)?;
    // Reorder digits from the given support order into sorted order.
    let rperm: Vec<usize> = read_sorted
        .iter()
        .map(|a| read.iter().position(|b| b == a).unwrap())
        .collect();
    let wperm: Vec<usize> = write_sorted
        .iter()
        .map(|a| write.iter().position(|b| b == a).unwrap())
        .collect();
    let size = table_size(dims, read.len())?;
    let mut slots: Vec<Option<&Entry>> = vec![None; size];
    for e in table {
        if e.pattern.len() != read.len() || e.out.len() != write.len() {
            return Err(Error::Malformed(format!(
                "line for {:?} has the wrong arity",
                e.pattern
            )));
        }
        if e.state < 1 || e.state > dims.k {
            return Err(Error::StateOutOfRange {
                pattern: e.pattern.clone(),
                state: e.state,
                value: e.state,
            });
        }
        if e.out_state < 1 || e.out_state > dims.k {
            return Err(Error::StateOutOfRange {
                pattern: e.pattern.clone(),
                state: e.state,
                value: e.out_state,
            });
        }
        if let Some(&s) = e.pattern.iter().chain(&e.out).find(|&&s| s >= dims.n) {
            return Err(Error::SymbolOutOfRange {
                pattern: e.pattern.clone(),
                state: e.state,
                symbol: s,
            });
        }
        if e.mv.dim() != dims.d {
            return Err(Error::BadVector(e.mv.clone()));
        }
        let sorted: Vec<u32> = rperm.iter().map(|&i| e.pattern[i]).collect();
        let idx = encode(dims, &sorted, e.state);
        if slots[idx].is_some() {
            return Err(Error::DuplicateEntry {
                pattern: e.pattern.clone(),
                state: e.state,
            });
        }
        slots[idx] = Some(e);
    }
    let mut pat = vec![0u32; read.len()];
    for (idx, s) in slots.iter().enumerate() {
        if s.is_none() {
            let q = decode(dims, read.len(), idx, &mut pat);
            let given: Vec<u32> = (0..read.len())
                .map(|i| pat[rperm.iter().position(|&j| j == i).unwrap()])
                .collect();
            return Err(Error::MissingEntry {
                pattern: given,
                state: q,
            });
        }
    }
    LocalRule::from_fn(dims, read_sorted, write_sorted, |p, q| {
        let e = slots[encode(dims, p, q)].unwrap();
        let out = wperm.iter().map(|&i| e.out[i]).collect();
        (out, e.out_state, e.mv.clone())
    })
}

/// Working form during canonicalization: reads and writes the same cells.
struct Full {
    dims: Dims,
    cells: Vec<IntVector>,
    outs: Vec<u32>,
    states: Vec<u32>,
    moves: Vec<u32>,
    move_set: Vec<IntVector>,
}

impl Full {
    fn pad(rule: &LocalRule) -> Full {
        let cells = normalize_support(
            rule.read
                .iter()
                .chain(rule.write.iter())
                .cloned()
                .collect(),
        );
        let p = rule.padded_to(&cells);
        Full {
            dims: p.dims,
            cells,
            outs: p.outs,
            states: p.states,
            moves: p.move_idx,
            move_set: p.move_set,
        }
    }

    fn stride(&self, a: usize) -> usize {
        let mut s = self.dims.k as usize;
        for _ in a + 1..self.cells.len() {
            s *= self.dims.n as usize;
        }
        s
    }

    fn writes_identity(&self, a: usize) -> bool {
        let w = self.cells.len();
        let st = self.stride(a);
        let n = self.dims.n as usize;
        (0..self.states.len()).all(|i| self.outs[i * w + a] as usize == (i / st) % n)
    }

    /// Whether the outputs restricted to `cols` (plus state and move) ignore
    /// the digit at `a`.
    fn independent_of(&self, a: usize, cols: &dyn Fn(usize) -> bool) -> bool {
        let w = self.cells.len();
        let st = self.stride(a);
        let n = self.dims.n as usize;
        for i in 0..self.states.len() {
            if (i / st) % n != 0 {
                continue;
            }
            for c in 1..n {
                let j = i + c * st;
                if self.states[i] != self.states[j] || self.moves[i] != self.moves[j] {
                    return false;
                }
                for col in 0..w {
                    if cols(col) && self.outs[i * w + col] != self.outs[j * w + col] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn droppable(&self, a: usize) -> bool {
        self.writes_identity(a) && self.independent_of(a, &|c| c != a)
    }

    fn drop_cell(&self, a: usize) -> Full {
        let w = self.cells.len();
        let st = self.stride(a);
        let n = self.dims.n as usize;
        let mut outs = Vec::new();
        let mut states = Vec::new();
        let mut moves = Vec::new();
        for i in 0..self.states.len() {
            if (i / st) % n != 0 {
                continue;
            }
            for c in 0..w {
                if c != a {
                    outs.push(self.outs[i * w + c]);
                }
            }
            states.push(self.states[i]);
            moves.push(self.moves[i]);
        }
        let mut cells = self.cells.clone();
        cells.remove(a);
        Full {
            dims: self.dims,
            cells,
            outs,
            states,
            moves,
            move_set: self.move_set.clone(),
        }
    }

    fn minimize(mut self) -> Full {
        'outer: loop {
            for a in 0..self.cells.len() {
                if self.droppable(a) {
                    self = self.drop_cell(a);
                    continue 'outer;
                }
            }
            return self;
        }
    }

    fn into_rule(self) -> LocalRule {
        let w = self.cells.len();
        let gcols: Vec<usize> = (0..w).filter(|&a| !self.writes_identity(a)).collect();
        let in_g = |c: usize| gcols.contains(&c);
        let fcols: Vec<usize> = (0..w).filter(|&a| !self.independent_of(a, &in_g)).collect();
        let read: Vec<IntVector> = fcols.iter().map(|&a| self.cells[a].clone()).collect();
        let write: Vec<IntVector> = gcols.iter().map(|&a| self.cells[a].clone()).collect();
        let mut full = vec![0u32; w];
        LocalRule::from_fn(self.dims, read, write, |p, q| {
            for (i, &c) in fcols.iter().enumerate() {
                full[c] = p[i];
            }
            // cells outside F do not influence the outputs we keep; read them as 0
            for c in 0..w {
                if !fcols.contains(&c) {
                    full[c] = 0;
                }
            }
            let idx = encode(self.dims, &full, q);
            let out = gcols.iter().map(|&c| self.outs[idx * w + c]).collect();
            (
                out,
                self.states[idx],
                self.move_set[self.moves[idx] as usize].clone(),
            )
        })
        .expect("canonical rule is valid")
    }
}
