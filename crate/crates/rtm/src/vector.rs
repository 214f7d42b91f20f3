use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A lattice point of Z^d. Ordered lexicographically on components.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn zero(d: usize) -> Self {
        IntVector(vec![0; d])
    }

    /// The unit vector along `axis` (0-based).
    pub fn unit(d: usize, axis: usize) -> Self {
        let mut v = vec![0; d];
        v[axis] = 1;
        IntVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Max-norm.
    pub fn norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, s: i64) -> Self {
        IntVector(self.0.iter().map(|c| c * s).collect())
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v)
    }
}

impl From<&[i64]> for IntVector {
    fn from(v: &[i64]) -> Self {
        IntVector(v.to_vec())
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, o: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, o: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dimension, alphabet size and state count of a machine.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Dims {
    pub d: usize,
    pub n: u32,
    pub k: u32,
}

impl Dims {
    pub fn new(d: usize, n: u32, k: u32) -> Self {
        assert!(d >= 1 && n >= 1 && k >= 1, "dims must be positive");
        Dims { d, n, k }
    }
}

/// All points of [-r, r]^d in sorted order. Empty for r < 0.
pub fn hypercube(d: usize, r: i64) -> Vec<IntVector> {
    box_points(&vec![-r; d], &vec![r; d])
}

/// All points of the box lo..=hi in sorted order.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<IntVector> {
    let d = lo.len();
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = lo.to_vec();
    loop {
        out.push(IntVector(cur.clone()));
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
        }
    }
}

/// The fixed enumeration of Z^d used wherever a "least" lattice point is
/// needed: by max-norm, then lexicographically.
pub fn enumeration_key(v: &IntVector) -> (i64, IntVector) {
    (v.norm(), v.clone())
}

/// Least point (in the fixed enumeration) not contained in `avoid`.
pub fn least_point_outside(d: usize, avoid: &[IntVector]) -> IntVector {
    let mut r = 0;
    loop {
        let mut pts = hypercube(d, r);
        pts.sort_by_key(enumeration_key);
        if let Some(p) = pts.into_iter().find(|p| !avoid.contains(p)) {
            return p;
        }
        r += 1;
    }
}

/// Sort and deduplicate a support.
pub fn normalize_support(mut s: Vec<IntVector>) -> Vec<IntVector> {
    s.sort();
    s.dedup();
    s
}
