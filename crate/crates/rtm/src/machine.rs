//! Machines: canonical rules with cached radii, composition and powers.

use std::fmt;

use crate::error::{Error, Result};
use crate::rule::LocalRule;
use crate::vector::{normalize_support, Dims, IntVector};

/// A Turing machine given by its canonical local rule. Two machines are equal
/// exactly when their canonical rules are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Machine {
    rule: LocalRule,
    in_radius: i64,
    out_radius: i64,
    move_radius: i64,
}

fn support_radius(s: &[IntVector]) -> i64 {
    s.iter().map(|v| v.norm()).max().unwrap_or(-1)
}

impl Machine {
    /// Canonicalizes `rule`.
    pub fn new(rule: &LocalRule) -> Machine {
        Self::from_canonical(rule.canonicalize())
    }

    fn from_canonical(rule: LocalRule) -> Machine {
        let in_radius = support_radius(rule.read_support());
        let out_radius = support_radius(rule.write_support());
        let move_radius = rule.moves().iter().map(|v| v.norm()).max().unwrap_or(0);
        Machine {
            rule,
            in_radius,
            out_radius,
            move_radius,
        }
    }

    pub fn identity(dims: Dims) -> Machine {
        Self::from_canonical(
            LocalRule::from_fn(dims, vec![], vec![], |_, q| (vec![], q, IntVector::zero(dims.d)))
                .unwrap(),
        )
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn dims(&self) -> Dims {
        self.rule.dims()
    }

    /// (in-radius, out-radius, move-radius); the first two are -1 for empty
    /// supports.
    pub fn radii(&self) -> (i64, i64, i64) {
        (self.in_radius, self.out_radius, self.move_radius)
    }

    pub fn radius(&self) -> i64 {
        self.in_radius.max(self.out_radius).max(self.move_radius)
    }

    pub fn is_identity(&self) -> bool {
        *self == Machine::identity(self.dims())
    }

    /// True when the machine never changes the tape.
    pub fn never_writes(&self) -> bool {
        self.rule.write_support().is_empty()
    }

    /// The move vector if it does not depend on the input.
    pub fn constant_move(&self) -> Option<IntVector> {
        match self.rule.moves() {
            [v] => Some(v.clone()),
            _ => None,
        }
    }
}

impl fmt::Debug for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::serialize_machine(self))
    }
}

fn same_dims(a: &Machine, b: &Machine) -> Result<Dims> {
    if a.dims() != b.dims() {
        return Err(Error::DimsMismatch);
    }
    Ok(a.dims())
}

pub fn machines_equal(a: &Machine, b: &Machine) -> Result<bool> {
    same_dims(a, b)?;
    Ok(a == b)
}

/// `f ∘ g`: run `g`, then `f`.
pub fn compose(f: &Machine, g: &Machine) -> Result<Machine> {
    let dims = same_dims(f, g)?;
    let (fr, gr) = (&f.rule, &g.rule);
    let mut fc: Vec<IntVector> = gr.read_support().to_vec();
    fc.extend(gr.write_support().iter().cloned());
    let mut gc: Vec<IntVector> = gr.write_support().to_vec();
    for v in gr.moves() {
        fc.extend(fr.read_support().iter().map(|a| v + a));
        for a in fr.write_support() {
            fc.push(v + a);
            gc.push(v + a);
        }
    }
    let fc = normalize_support(fc);
    let gc = normalize_support(gc);
    let pos = |a: &IntVector| fc.binary_search(a).expect("cell inside composite window");
    let gpos: Vec<usize> = gr.write_support().iter().map(pos).collect();
    let gcpos: Vec<usize> = gc.iter().map(pos).collect();
    // f's read and write offsets per move of g, precomputed
    let shifted: Vec<(Vec<usize>, Vec<usize>)> = gr
        .moves()
        .iter()
        .map(|v| {
            (
                fr.read_support().iter().map(|a| pos(&(v + a))).collect(),
                fr.write_support().iter().map(|a| pos(&(v + a))).collect(),
            )
        })
        .collect();
    let gread: Vec<usize> = gr.read_support().iter().map(pos).collect();
    let mut cur = vec![0u32; fc.len()];
    let mut pat_g = vec![0u32; gread.len()];
    let mut pat_f = vec![0u32; fr.read_support().len()];
    let rule = LocalRule::from_fn(dims, fc.clone(), gc.clone(), |p, q| {
        cur.copy_from_slice(p);
        for (i, &j) in gread.iter().enumerate() {
            pat_g[i] = cur[j];
        }
        let og = gr.lookup(&pat_g, q);
        for (i, &j) in gpos.iter().enumerate() {
            cur[j] = og.out[i];
        }
        let mi = gr.moves().binary_search(og.mv).unwrap();
        let (rp, wp) = &shifted[mi];
        for (i, &j) in rp.iter().enumerate() {
            pat_f[i] = cur[j];
        }
        let of = fr.lookup(&pat_f, og.state);
        for (i, &j) in wp.iter().enumerate() {
            cur[j] = of.out[i];
        }
        let out = gcpos.iter().map(|&j| cur[j]).collect();
        (out, of.state, og.mv + of.mv)
    })?;
    Ok(Machine::new(&rule))
}

/// Compose a sequence; the first machine is applied first.
pub fn compose_seq<'a, I: IntoIterator<Item = &'a Machine>>(dims: Dims, ms: I) -> Result<Machine> {
    let mut acc = Machine::identity(dims);
    for m in ms {
        acc = compose(m, &acc)?;
    }
    Ok(acc)
}

/// `T^e`; negative exponents go through the inverse.
pub fn power(t: &Machine, e: i64) -> Result<Machine> {
    let base = if e < 0 {
        crate::reversibility::invert(t)?
    } else {
        t.clone()
    };
    let mut e = e.unsigned_abs();
    let mut acc = Machine::identity(t.dims());
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = compose(&sq, &acc)?;
        }
        e >>= 1;
        if e > 0 {
            sq = compose(&sq, &sq)?;
        }
    }
    Ok(acc)
}
