//! Named machine families and subgroup membership.

mod classical;
mod snake;

pub use classical::{all_classical_rules, classical_decompose, classical_from_parts, ClassicalDecomposition};
pub use snake::{bits_of, segment, segment_dirs, state_of, DirectedTileSet, SnakeGadgets, Tile, DIRECTIONS, PATH_ALPHABET};

use crate::config::HeadConfiguration;
use crate::error::{Error, Result};
use crate::machine::Machine;
use crate::reversibility::is_reversible;
use crate::rule::{table_size, LocalRule};
use crate::vector::{normalize_support, Dims, IntVector};

/// The shift `T_v`: no reads, no writes, constant move.
pub fn shift_machine(dims: Dims, v: &IntVector) -> Result<Machine> {
    if v.dim() != dims.d {
        return Err(Error::BadVector(v.clone()));
    }
    let rule = LocalRule::from_fn(dims, vec![], vec![], |_, q| (vec![], q, v.clone()))?;
    Ok(Machine::new(&rule))
}

/// `P_π` for a permutation `π` of `Σ^F × Q`, given as images of line
/// indices (pattern digits in sorted `F` order, state last).
pub fn local_permutation(dims: Dims, support: &[IntVector], perm: &[usize]) -> Result<Machine> {
    let support = normalize_support(support.to_vec());
    let size = table_size(dims, support.len())?;
    if perm.len() != size || !is_permutation(perm) {
        return Err(Error::NotBijective);
    }
    let mut pat = vec![0u32; support.len()];
    let rule = LocalRule::from_fn(dims, support.clone(), support.clone(), |p, q| {
        let j = perm[crate::rule::encode(dims, p, q)];
        let q2 = crate::rule::decode(dims, pat.len(), j, &mut pat);
        (pat.clone(), q2, IntVector::zero(dims.d))
    })?;
    Ok(Machine::new(&rule))
}

pub(crate) fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// `C_α` with `p'_v = p_{α(v)}`; `alpha` lists `(v, α(v))` for moved cells.
pub fn cell_permutation(dims: Dims, alpha: &[(IntVector, IntVector)]) -> Result<Machine> {
    let mut dom: Vec<IntVector> = alpha.iter().map(|(a, _)| a.clone()).collect();
    let mut img: Vec<IntVector> = alpha.iter().map(|(_, b)| b.clone()).collect();
    dom.sort();
    img.sort();
    let before = dom.len();
    dom.dedup();
    if dom.len() != before || dom != img {
        return Err(Error::NotBijective);
    }
    let src: Vec<usize> = dom
        .iter()
        .map(|v| {
            let a = &alpha.iter().find(|(x, _)| x == v).unwrap().1;
            dom.binary_search(a).unwrap()
        })
        .collect();
    let rule = LocalRule::from_fn(dims, dom.clone(), dom.clone(), |p, q| {
        (src.iter().map(|&j| p[j]).collect(), q, IntVector::zero(dims.d))
    })?;
    Ok(Machine::new(&rule))
}

/// The generator `C_i` swapping the scanned cell with its `e_i` neighbor.
pub fn cell_swap(dims: Dims, axis: usize) -> Result<Machine> {
    let z = IntVector::zero(dims.d);
    let e = IntVector::unit(dims.d, axis);
    cell_permutation(dims, &[(z.clone(), e.clone()), (e, z)])
}

/// Reads `0^m a` on `{0, e1, ..., m e1}`, rewrites it as `a 0^m` and steps
/// along `e1`; identity on every other window.
pub fn surf_machine(dims: Dims, m: usize) -> Result<Machine> {
    let e1 = IntVector::unit(dims.d, 0);
    let window: Vec<IntVector> = (0..=m as i64).map(|i| e1.scale(i)).collect();
    let rule = LocalRule::from_fn(dims, window.clone(), window, |p, q| {
        if p[..m].iter().all(|&s| s == 0) {
            let mut out = vec![0; m + 1];
            out[0] = p[m];
            (out, q, e1.clone())
        } else {
            (p.to_vec(), q, IntVector::zero(dims.d))
        }
    })?;
    Ok(Machine::new(&rule))
}

/// The involution `T_a`: right if `x_0 = a ≠ x_1`, left if `x_{-1} = a ≠ x_0`,
/// otherwise stay. Walks along `e1`.
pub fn involution_walker(dims: Dims, a: u32) -> Result<Machine> {
    if dims.n < 2 || a >= dims.n {
        return Err(Error::SymbolOutOfRange {
            pattern: vec![],
            state: 1,
            symbol: a,
        });
    }
    let e1 = IntVector::unit(dims.d, 0);
    let window = vec![e1.scale(-1), IntVector::zero(dims.d), e1.clone()];
    let rule = LocalRule::from_fn(dims, window, vec![], |p, q| {
        let mv = if p[1] == a && p[2] != a {
            e1.clone()
        } else if p[0] == a && p[1] != a {
            e1.scale(-1)
        } else {
            IntVector::zero(dims.d)
        };
        (vec![], q, mv)
    })?;
    Ok(Machine::new(&rule))
}

/// Configuration on which the walkers `T_{w_1}`, then `T_{w_2}`, ... each push
/// the head one step right: cell `j - 1` holds `w_j`, cell `t` differs from
/// cell `t - 1`, and everything else is blank. `word` must not repeat a
/// letter twice in a row.
pub fn free_product_witness(dims: Dims, word: &[u32]) -> Result<HeadConfiguration> {
    if dims.n < 2 || word.iter().any(|&a| a >= dims.n) || word.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Malformed("not a reduced word over the alphabet".into()));
    }
    let e1 = IntVector::unit(dims.d, 0);
    let mut cells: Vec<(IntVector, u32)> = word
        .iter()
        .enumerate()
        .map(|(j, &a)| (e1.scale(j as i64), a))
        .collect();
    if let Some(&last) = word.last() {
        cells.push((e1.scale(word.len() as i64), (last + 1) % dims.n));
    }
    Ok(HeadConfiguration::with_tape(dims, cells, Some((IntVector::zero(dims.d), 1))))
}

/// Increments the state cyclically and steps along `e_axis` on entering
/// state 1.
pub fn state_cycler(dims: Dims, axis: usize) -> Result<Machine> {
    if axis >= dims.d {
        return Err(Error::BadVector(IntVector::unit(axis + 1, axis)));
    }
    let rule = LocalRule::from_fn(dims, vec![], vec![], |_, q| {
        let next = q % dims.k + 1;
        let mv = if next == 1 {
            IntVector::unit(dims.d, axis)
        } else {
            IntVector::zero(dims.d)
        };
        (vec![], next, mv)
    })?;
    Ok(Machine::new(&rule))
}

/// Overwrites the scanned cell with 0. Not reversible for n ≥ 2.
pub fn write_zero(dims: Dims) -> Result<Machine> {
    let z = IntVector::zero(dims.d);
    let rule = LocalRule::from_fn(dims, vec![], vec![z.clone()], |_, q| (vec![0], q, z.clone()))?;
    Ok(Machine::new(&rule))
}

/// Machines `T_s` for each given permutation `s` of `{0..m-1}` (acting on
/// the cells `{0, ..., (m-1) e1}`), followed by the shifts `T_{m e_j}`.
pub fn lamplighter_generators(dims: Dims, m: usize, gens: &[Vec<usize>]) -> Result<Vec<Machine>> {
    let e1 = IntVector::unit(dims.d, 0);
    let mut out = Vec::new();
    for s in gens {
        if s.len() != m || !is_permutation(s) {
            return Err(Error::NotBijective);
        }
        let alpha: Vec<(IntVector, IntVector)> = (0..m)
            .filter(|&i| s[i] != i)
            .map(|i| (e1.scale(i as i64), e1.scale(s[i] as i64)))
            .collect();
        out.push(cell_permutation(dims, &alpha)?);
    }
    for j in 0..dims.d {
        out.push(shift_machine(dims, &IntVector::unit(dims.d, j).scale(m as i64))?);
    }
    Ok(out)
}

/// State permutation depending on the scanned window: `perms[pattern index]`
/// is a permutation of `0..k` applied to the state.
pub fn state_permutation(dims: Dims, support: &[IntVector], perms: &[Vec<usize>]) -> Result<Machine> {
    let support = normalize_support(support.to_vec());
    let pats = table_size(dims, support.len())? / dims.k as usize;
    if perms.len() != pats || perms.iter().any(|p| p.len() != dims.k as usize || !is_permutation(p)) {
        return Err(Error::NotBijective);
    }
    let rule = LocalRule::from_fn(dims, support.clone(), vec![], |p, q| {
        let pi = crate::rule::encode(dims, p, 1) / dims.k as usize;
        (vec![], perms[pi][q as usize - 1] as u32 + 1, IntVector::zero(dims.d))
    })?;
    Ok(Machine::new(&rule))
}

/// Membership flags for the named subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SubgroupFlags {
    pub is_sp: bool,
    pub is_lp: bool,
    pub is_shift: bool,
    pub is_oblivious: bool,
    pub is_rfa: bool,
    pub is_classical: bool,
}

pub fn classify(m: &Machine) -> SubgroupFlags {
    let rev = is_reversible(m);
    let rule = m.rule();
    let cmove = m.constant_move();
    let is_rfa = rev && m.never_writes();
    let is_lp = rev && cmove.as_ref().is_some_and(|v| v.is_zero());
    let is_shift = rule.read_support().is_empty()
        && rule.write_support().is_empty()
        && cmove.is_some()
        && (0..rule.len()).all(|i| rule.output(i).state == i as u32 % m.dims().k + 1);
    let (ri, ro, rm) = m.radii();
    SubgroupFlags {
        is_sp: is_rfa && is_lp,
        is_lp,
        is_shift,
        is_oblivious: rev && cmove.is_some(),
        is_rfa,
        is_classical: m.dims().d == 1 && ri <= 0 && ro <= 0 && rm <= 1,
    }
}
