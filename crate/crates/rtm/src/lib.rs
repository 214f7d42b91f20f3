//! Exact algebra for generalized Turing machines on `Z^d`.
//!
//! A `(d, n, k)` machine has tape alphabet `{0..n-1}`, states `{1..k}` and a
//! local rule: read a finite window around the head, write a finite window,
//! change state and move by a vector. Machines are kept in a canonical form,
//! so equality is structural, and they compose into a group once restricted
//! to the reversible ones.
//!
//! * [`machine`], [`rule`], [`config`]: rules, canonical forms, composition,
//!   both step semantics.
//! * [`reversibility`]: deciding reversibility, exact inverses, average
//!   movement, measure defect.
//! * [`zoo`]: named machine families and subgroup membership.
//! * [`quotients`]: actions on periodic configurations, signs, the local
//!   embedding check.
//! * [`torsion`]: orders and the torsion decision for one-dimensional
//!   finite-state automata.
//! * [`synthesis`]: compiling oblivious machines to a finite generating set.
//! * [`format`], [`cli`]: text formats and the `rtm` command.

pub mod cli;
pub mod config;
pub mod error;
pub mod format;
pub mod machine;
pub mod quotients;
pub mod reversibility;
pub mod rule;
pub mod sample;
pub mod synthesis;
pub mod torsion;
pub mod vector;
pub mod zoo;

pub use config::{apply_moving_head, apply_moving_tape, run_moving_head, shift_indicator, HeadConfiguration, TapeState};
pub use error::{Error, Result};
pub use machine::{compose, compose_seq, machines_equal, power, Machine};
pub use rule::{make_rule, Entry, LocalRule};
pub use vector::{Dims, IntVector};
