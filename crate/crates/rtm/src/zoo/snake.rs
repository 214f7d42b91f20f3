//! Gadget machines for the two-dimensional snake construction.
//!
//! Alphabet: symbol 0 is blank, symbols 1..=12 are path segments `(in, out)`
//! with `in != out` taken from the four unit directions. `in` points from the
//! cell towards its predecessor, `out` towards its successor. The state is
//! `1 + dir + 2 * aux` for a direction bit and an auxiliary bit, so `k = 4`.

use crate::error::{Error, Result};
use crate::machine::{compose_seq, Machine};
use crate::rule::LocalRule;
use crate::vector::{Dims, IntVector};

use super::shift_machine;

/// Unit directions in the order used by the segment encoding.
pub const DIRECTIONS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Alphabet size of the path alphabet.
pub const PATH_ALPHABET: u32 = 13;

/// A Wang tile with edge colors (north, east, south, west).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub edges: [u32; 4],
    pub direction: (i64, i64),
}

/// Tiles together with their direction function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedTileSet {
    pub tiles: Vec<Tile>,
}

impl DirectedTileSet {
    pub fn new(tiles: Vec<Tile>) -> Result<Self> {
        if tiles.is_empty() {
            return Err(Error::Malformed("tile set is empty".into()));
        }
        if tiles.iter().any(|t| !DIRECTIONS.contains(&t.direction)) {
            return Err(Error::Malformed("tile direction is not a unit vector".into()));
        }
        Ok(DirectedTileSet { tiles })
    }
}

/// Segment symbol for the pair of direction indices.
pub fn segment(inn: usize, out: usize) -> u32 {
    assert!(inn != out && inn < 4 && out < 4);
    let o = if out > inn { out - 1 } else { out };
    1 + (inn * 3 + o) as u32
}

/// Direction indices `(in, out)` of a segment symbol; `None` for blank.
pub fn segment_dirs(s: u32) -> Option<(usize, usize)> {
    if s == 0 || s > 12 {
        return None;
    }
    let c = (s - 1) as usize;
    let (inn, o) = (c / 3, c % 3);
    Some((inn, if o >= inn { o + 1 } else { o }))
}

fn opposite(i: usize) -> usize {
    i ^ 1
}

fn dir_vec(i: usize) -> IntVector {
    IntVector(vec![DIRECTIONS[i].0, DIRECTIONS[i].1])
}

pub fn state_of(dir: u32, aux: u32) -> u32 {
    1 + dir + 2 * aux
}

pub fn bits_of(q: u32) -> (u32, u32) {
    ((q - 1) & 1, (q - 1) >> 1)
}

/// The generator family of the construction.
pub struct SnakeGadgets {
    pub dims: Dims,
    pub tiles: DirectedTileSet,
}

impl SnakeGadgets {
    pub fn new(tiles: DirectedTileSet) -> Self {
        SnakeGadgets {
            dims: Dims::new(2, PATH_ALPHABET, 4),
            tiles,
        }
    }

    fn at_cell(&self, s: u32, f: impl Fn(u32, u32) -> (u32, u32)) -> Result<Machine> {
        let z = IntVector::zero(2);
        let rule = LocalRule::from_fn(self.dims, vec![z.clone()], vec![], |p, q| {
            let (dir, aux) = bits_of(q);
            let (d2, a2) = if p[0] == s { f(dir, aux) } else { (dir, aux) };
            (vec![], state_of(d2, a2), z.clone())
        })?;
        Ok(Machine::new(&rule))
    }

    /// `g_s`: flip the direction bit on symbol `s`.
    pub fn g(&self, s: u32) -> Result<Machine> {
        self.at_cell(s, |d, a| (d ^ 1, a))
    }

    /// `h_s`: flip the aux bit on symbol `s`.
    pub fn h(&self, s: u32) -> Result<Machine> {
        self.at_cell(s, |d, a| (d, a ^ 1))
    }

    /// `g_{+,s}`: add the aux bit to the direction bit on symbol `s`.
    pub fn g_plus(&self, s: u32) -> Result<Machine> {
        self.at_cell(s, |d, a| (d ^ a, a))
    }

    /// `h_{+,s}`: add the direction bit to the aux bit on symbol `s`.
    pub fn h_plus(&self, s: u32) -> Result<Machine> {
        self.at_cell(s, |d, a| (d, a ^ d))
    }

    /// `T_v` for a unit direction.
    pub fn step(&self, v: (i64, i64)) -> Result<Machine> {
        shift_machine(self.dims, &IntVector(vec![v.0, v.1]))
    }

    /// `T_walk`: follow the path forward (direction bit 0) or backward (1);
    /// where the link is broken, flip the direction bit instead of moving.
    /// Reads the head cell and its four neighbours, so its table has
    /// `4 * 13^5` lines.
    pub fn walk(&self) -> Result<Machine> {
        let mut window = vec![IntVector::zero(2)];
        window.extend((0..4).map(dir_vec));
        let window = crate::vector::normalize_support(window);
        let pos = |v: &IntVector| window.binary_search(v).unwrap();
        let center = pos(&IntVector::zero(2));
        let nb: Vec<usize> = (0..4).map(|i| pos(&dir_vec(i))).collect();
        let rule = LocalRule::from_fn(self.dims, window.clone(), vec![], |p, q| {
            let (dir, aux) = bits_of(q);
            let stay = (vec![], state_of(dir ^ 1, aux), IntVector::zero(2));
            let Some((inn, out)) = segment_dirs(p[center]) else {
                return stay;
            };
            let toward = if dir == 0 { out } else { inn };
            match segment_dirs(p[nb[toward]]) {
                Some((i2, o2)) => {
                    let back = if dir == 0 { i2 } else { o2 };
                    if back == opposite(toward) {
                        (vec![], q, dir_vec(toward))
                    } else {
                        stay
                    }
                }
                None => stay,
            }
        })?;
        Ok(Machine::new(&rule))
    }

    /// `g_p`, flipping the direction bit iff the pattern `p` (cells relative
    /// to the head) is present.
    pub fn g_pattern(&self, p: &[(IntVector, u32)]) -> Result<Machine> {
        self.pattern_flip(p, true)
    }

    /// `h_p`, flipping the aux bit iff `p` is present.
    pub fn h_pattern(&self, p: &[(IntVector, u32)]) -> Result<Machine> {
        self.pattern_flip(p, false)
    }

    fn pattern_flip(&self, p: &[(IntVector, u32)], direction: bool) -> Result<Machine> {
        let Some(((v, s), rest)) = p.split_last() else {
            return Err(Error::EmptyPattern);
        };
        let to = shift_machine(self.dims, v)?;
        let back = shift_machine(self.dims, &-v)?;
        if rest.is_empty() {
            let base = if direction { self.g(*s)? } else { self.h(*s)? };
            return compose_seq(self.dims, [&to, &base, &back]);
        }
        let (inner, plus) = if direction {
            (self.h_pattern(rest)?, self.g_plus(*s)?)
        } else {
            (self.g_pattern(rest)?, self.h_plus(*s)?)
        };
        let round = compose_seq(self.dims, [&inner, &to, &plus, &back])?;
        compose_seq(self.dims, [&round, &round])
    }
}
