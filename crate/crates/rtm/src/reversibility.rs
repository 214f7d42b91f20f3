//! Reversibility via image cylinders, exact inverses, average movement and
//! measure defect.
//!
//! Fix a window `W` containing the read and write supports. Each input
//! cylinder `[p] × {q}` with `p` over `W` is mapped bijectively onto a
//! cylinder over `W - v` (seen from the new head), where `v` is the move.
//! The machine is injective iff these images are pairwise disjoint, and
//! surjective iff they cover everything; by measure counting the two are
//! the same condition. All of this is exponential in `|W|`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::machine::Machine;
use crate::rule::{table_size, LocalRule};
use crate::vector::{hypercube, normalize_support, IntVector};

/// Image of one full-window input cylinder, in coordinates centered on the
/// new head position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderImage {
    /// The move that produced this image.
    pub shift: IntVector,
    /// `window - shift`, sorted.
    pub support: Vec<IntVector>,
    pub values: Vec<u32>,
    pub state: u32,
}

pub type RationalVector = Vec<BigRational>;

fn images_over(m: &Machine, window: &[IntVector]) -> Vec<CylinderImage> {
    let padded = m.rule().padded_to(window);
    (0..padded.len())
        .map(|i| {
            let o = padded.output(i);
            CylinderImage {
                shift: o.mv.clone(),
                support: window.iter().map(|a| a - o.mv).collect(),
                values: o.out.to_vec(),
                state: o.state,
            }
        })
        .collect()
}

/// One image per (pattern over `[-r, r]^d`, state), in input index order.
pub fn image_cylinders(m: &Machine) -> Vec<CylinderImage> {
    images_over(m, &hypercube(m.dims().d, m.radius()))
}

/// The union of read and write supports, the smallest window the cylinder
/// argument works with.
fn tight_window(m: &Machine) -> Vec<IntVector> {
    let r = m.rule();
    normalize_support(
        r.read_support()
            .iter()
            .chain(r.write_support())
            .cloned()
            .collect(),
    )
}

/// A pair of input line indices (over the tight window) whose images
/// intersect, if any.
fn collision(m: &Machine) -> Option<(usize, usize)> {
    let window = tight_window(m);
    let imgs = images_over(m, &window);
    let moves = m.rule().moves();
    let mut groups: HashMap<(u32, usize), Vec<usize>> = HashMap::new();
    for (i, im) in imgs.iter().enumerate() {
        let mi = moves.binary_search(&im.shift).unwrap();
        groups.entry((im.state, mi)).or_default().push(i);
    }
    let mut keys: Vec<_> = groups.keys().copied().collect();
    keys.sort();
    for (x, &(q1, m1)) in keys.iter().enumerate() {
        for &(q2, m2) in &keys[x..] {
            if q1 != q2 {
                continue;
            }
            // cells of window - v1 that also lie in window - v2, as index pairs
            let (v1, v2) = (&moves[m1], &moves[m2]);
            let mut pairs = Vec::new();
            for (i, a) in window.iter().enumerate() {
                let c = a - v1;
                if let Ok(j) = window.binary_search(&(&c + v2)) {
                    pairs.push((i, j));
                }
            }
            let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
            for &i in &groups[&(q1, m1)] {
                let key: Vec<u32> = pairs.iter().map(|&(a, _)| imgs[i].values[a]).collect();
                if m1 == m2 {
                    if let Some(&prev) = seen.get(&key) {
                        return Some((prev, i));
                    }
                }
                seen.insert(key, i);
            }
            if m1 == m2 {
                continue;
            }
            for &j in &groups[&(q2, m2)] {
                let key: Vec<u32> = pairs.iter().map(|&(_, b)| imgs[j].values[b]).collect();
                if let Some(&prev) = seen.get(&key) {
                    return Some((prev, j));
                }
            }
        }
    }
    None
}

pub fn is_reversible(m: &Machine) -> bool {
    collision(m).is_none()
}

fn describe_collision(m: &Machine, (i, j): (usize, usize)) -> String {
    let window = tight_window(m);
    let padded = m.rule().padded_to(&window);
    let show = |idx: usize| {
        let (p, q) = padded.lhs(idx);
        let cells: Vec<String> = window
            .iter()
            .zip(&p)
            .map(|(a, s)| format!("{a}:{s}"))
            .collect();
        format!("[{}] state {q}", cells.join(" "))
    };
    format!("{} and {} have intersecting images", show(i), show(j))
}

/// Exact inverse, built from the cylinder bijection.
pub fn invert(m: &Machine) -> Result<Machine> {
    if let Some(c) = collision(m) {
        return Err(Error::NotReversible {
            witness: Some(describe_collision(m, c)),
        });
    }
    let dims = m.dims();
    let window = tight_window(m);
    let padded = m.rule().padded_to(&window);
    let moves = m.rule().moves().to_vec();
    let mut h: Vec<IntVector> = Vec::new();
    for v in &moves {
        h.extend(window.iter().map(|a| a - v));
    }
    let h = normalize_support(h);
    // for each move: positions of window - v inside h, and the image index
    let mut lookup: Vec<(Vec<usize>, HashMap<(u32, Vec<u32>), usize>)> = moves
        .iter()
        .map(|v| {
            let pos = window
                .iter()
                .map(|a| h.binary_search(&(a - v)).unwrap())
                .collect();
            (pos, HashMap::new())
        })
        .collect();
    for idx in 0..padded.len() {
        let o = padded.output(idx);
        let mi = moves.binary_search(o.mv).unwrap();
        lookup[mi].1.insert((o.state, o.out.to_vec()), idx);
    }
    let mut found = Ok(());
    let rule = LocalRule::from_fn(dims, h.clone(), h.clone(), |p, q| {
        for (mi, (pos, map)) in lookup.iter().enumerate() {
            let key: Vec<u32> = pos.iter().map(|&j| p[j]).collect();
            if let Some(&idx) = map.get(&(q, key)) {
                let (orig, q0) = padded.lhs(idx);
                let mut out = p.to_vec();
                for (&j, &s) in pos.iter().zip(&orig) {
                    out[j] = s;
                }
                return (out, q0, -&moves[mi]);
            }
        }
        found = Err(Error::NotReversible { witness: None });
        (p.to_vec(), q, IntVector::zero(dims.d))
    })?;
    found?;
    Ok(Machine::new(&rule))
}

/// Exact average movement: the mean move over the uniform measure.
pub fn average_movement(m: &Machine) -> RationalVector {
    let rule = m.rule();
    let d = m.dims().d;
    let mut sum = vec![BigInt::zero(); d];
    for i in 0..rule.len() {
        for (s, c) in sum.iter_mut().zip(&rule.output(i).mv.0) {
            *s += *c;
        }
    }
    let denom = BigInt::from(rule.len());
    sum.into_iter()
        .map(|s| BigRational::new(s, denom.clone()))
        .collect()
}

/// `1 - μ(T(X))`, counted exactly on the common refinement of all images.
pub fn measure_defect(m: &Machine) -> BigRational {
    let dims = m.dims();
    let window = tight_window(m);
    let imgs = images_over(m, &window);
    let mut common: Vec<IntVector> = Vec::new();
    for v in m.rule().moves() {
        common.extend(window.iter().map(|a| a - v));
    }
    let common = normalize_support(common);
    let total = table_size(dims, common.len()).expect("refined window too large");
    let mut covered = vec![false; total];
    let mut pat = vec![0u32; common.len()];
    for im in &imgs {
        let fixed: Vec<usize> = im
            .support
            .iter()
            .map(|a| common.binary_search(a).unwrap())
            .collect();
        let free: Vec<usize> = (0..common.len()).filter(|j| !fixed.contains(j)).collect();
        for (&j, &s) in fixed.iter().zip(&im.values) {
            pat[j] = s;
        }
        let combos = table_size(dims, free.len()).unwrap() / dims.k as usize;
        for mut c in 0..combos {
            for &j in free.iter().rev() {
                pat[j] = (c % dims.n as usize) as u32;
                c /= dims.n as usize;
            }
            covered[crate::rule::encode(dims, &pat, im.state)] = true;
        }
    }
    let count = covered.iter().filter(|&&b| b).count();
    BigRational::one() - BigRational::new(BigInt::from(count), BigInt::from(total))
}

/// Print a rational vector: bare for d = 1, parenthesized otherwise.
pub fn format_rational_vector(v: &RationalVector) -> String {
    let parts: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join(","))
    }
}
