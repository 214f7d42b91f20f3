//! Classical machines (radii 0, 0, ≤1) and their factorization into a
//! state-dependent shift after a state-symbol permutation.

use crate::error::{Error, Result};
use crate::machine::Machine;
use crate::rule::LocalRule;
use crate::vector::{Dims, IntVector};

use super::is_permutation;

/// `T = shift ∘ permutation`.
#[derive(Clone, Debug)]
pub struct ClassicalDecomposition {
    /// Moves by `directions[r - 1]` in state `r`, no reads or writes.
    pub shift: Machine,
    /// Permutes (symbol, state) at the head, no movement.
    pub permutation: Machine,
    /// Image of `(a, q)` under the permutation, indexed by `a * k + (q - 1)`.
    pub perm: Vec<usize>,
    pub directions: Vec<i64>,
}

fn cell0() -> Vec<IntVector> {
    vec![IntVector(vec![0])]
}

/// Rebuild both factors from a permutation of `Σ × Q` and one direction per
/// state.
pub fn classical_from_parts(dims: Dims, perm: &[usize], directions: &[i64]) -> Result<ClassicalDecomposition> {
    if dims.d != 1 {
        return Err(Error::NotOneDimensional);
    }
    let size = (dims.n * dims.k) as usize;
    if perm.len() != size || !is_permutation(perm) || directions.len() != dims.k as usize {
        return Err(Error::NotBijective);
    }
    if directions.iter().any(|d| d.abs() > 1) {
        return Err(Error::NotClassical);
    }
    let k = dims.k as usize;
    let permutation = Machine::new(&LocalRule::from_fn(dims, cell0(), cell0(), |p, q| {
        let j = perm[p[0] as usize * k + (q as usize - 1)];
        (vec![(j / k) as u32], (j % k) as u32 + 1, IntVector(vec![0]))
    })?);
    let shift = Machine::new(&LocalRule::from_fn(dims, vec![], vec![], |_, q| {
        (vec![], q, IntVector(vec![directions[q as usize - 1]]))
    })?);
    Ok(ClassicalDecomposition {
        shift,
        permutation,
        perm: perm.to_vec(),
        directions: directions.to_vec(),
    })
}

fn show(cells: &[(i64, u32)], head: i64, q: u32) -> String {
    let tape: Vec<String> = cells
        .iter()
        .filter(|(_, s)| *s != 0)
        .map(|(x, s)| format!("({x}):{s}"))
        .collect();
    format!("tape [{}] head ({head}) state {q}", tape.join(" "))
}

/// Factor a reversible classical machine. Non-reversible input yields a pair
/// of distinct configurations with the same image.
pub fn classical_decompose(m: &Machine) -> Result<ClassicalDecomposition> {
    let dims = m.dims();
    let (ri, ro, rm) = m.radii();
    if dims.d != 1 || ri > 0 || ro > 0 || rm > 1 {
        return Err(Error::NotClassical);
    }
    let rule = m.rule().padded_to(&cell0());
    let k = dims.k as usize;
    let size = dims.n as usize * k;
    // line index of the padded rule is a * k + (q - 1), matching `perm`
    let mut img = vec![0usize; size];
    let mut dir = vec![0i64; size];
    for (i, (im, dr)) in img.iter_mut().zip(dir.iter_mut()).enumerate() {
        let o = rule.output(i);
        *im = o.out[0] as usize * k + (o.state as usize - 1);
        *dr = o.mv.0[0];
    }
    // movement must be a function of the entered state
    for i in 0..size {
        for j in i + 1..size {
            if img[i] % k == img[j] % k && dir[i] != dir[j] {
                let (a, q) = ((i / k) as u32, (i % k) as u32 + 1);
                let (a2, q2) = ((j / k) as u32, (j % k) as u32 + 1);
                let b = (img[i] / k) as u32;
                let b2 = (img[j] / k) as u32;
                let h = dir[i] - dir[j];
                let w = format!(
                    "{} and {} collide",
                    show(&[(0, a), (h, b2)], 0, q),
                    show(&[(0, b), (h, a2)], h, q2)
                );
                return Err(Error::NotReversible { witness: Some(w) });
            }
        }
    }
    for i in 0..size {
        for j in i + 1..size {
            if img[i] == img[j] {
                let (a, q) = ((i / k) as u32, (i % k) as u32 + 1);
                let (a2, q2) = ((j / k) as u32, (j % k) as u32 + 1);
                let w = format!(
                    "{} and {} collide",
                    show(&[(0, a)], 0, q),
                    show(&[(0, a2)], 0, q2)
                );
                return Err(Error::NotReversible { witness: Some(w) });
            }
        }
    }
    let mut directions = vec![0i64; k];
    for i in 0..size {
        directions[img[i] % k] = dir[i];
    }
    classical_from_parts(dims, &img, &directions)
}

/// Every classical rule over `F = G = {0}` for the given dims, in a fixed
/// order: `(n k · 3)^(n k)` of them.
pub fn all_classical_rules(dims: Dims) -> Vec<Machine> {
    let size = (dims.n * dims.k) as usize;
    let choices = size * 3;
    let total = choices.pow(size as u32);
    let k = dims.k as usize;
    (0..total)
        .map(|mut code| {
            let mut outs = Vec::with_capacity(size);
            for _ in 0..size {
                outs.push(code % choices);
                code /= choices;
            }
            let rule = LocalRule::from_fn(dims, cell0(), cell0(), |p, q| {
                let c = outs[p[0] as usize * k + (q as usize - 1)];
                let (img, d) = (c / 3, c % 3);
                (
                    vec![(img / k) as u32],
                    (img % k) as u32 + 1,
                    IntVector(vec![d as i64 - 1]),
                )
            })
            .unwrap();
            Machine::new(&rule)
        })
        .collect()
}
