mod common;

use common::{assignments, behaviour_equal, rng, v1};
use proptest::prelude::*;
use rand::Rng;
use rtm::sample::{random_reversible, random_rule};
use rtm::vector::hypercube;
use rtm::zoo::{involution_walker, shift_machine, surf_machine};
use rtm::{
    apply_moving_head, apply_moving_tape, compose, make_rule, power, run_moving_head, shift_indicator, Dims, Entry,
    Error, HeadConfiguration, IntVector, LocalRule, Machine, TapeState,
};

fn d1(n: u32, k: u32) -> Dims {
    Dims::new(1, n, k)
}

#[test]
fn identity_has_empty_supports() {
    let id = Machine::identity(d1(2, 2));
    assert!(id.rule().read_support().is_empty());
    assert!(id.rule().write_support().is_empty());
    assert_eq!(id.radii(), (-1, -1, 0));
}

#[test]
fn padded_identity_canonicalizes_to_identity() {
    let dims = d1(2, 2);
    let w = vec![v1(-1), v1(0), v1(1)];
    let r = LocalRule::from_fn(dims, w.clone(), w, |p, q| (p.to_vec(), q, v1(0))).unwrap();
    assert!(Machine::new(&r).is_identity());
}

#[test]
fn make_rule_reports_missing_and_duplicate_lines() {
    let dims = d1(2, 1);
    let line = |a: u32| Entry {
        pattern: vec![a],
        state: 1,
        out: vec![a],
        out_state: 1,
        mv: v1(0),
    };
    let err = make_rule(dims, vec![v1(0)], vec![v1(0)], &[line(0)]).unwrap_err();
    assert_eq!(err, Error::MissingEntry { pattern: vec![1], state: 1 });
    let err = make_rule(dims, vec![v1(0)], vec![v1(0)], &[line(0), line(1), line(1)]).unwrap_err();
    assert_eq!(err, Error::DuplicateEntry { pattern: vec![1], state: 1 });
    let mut bad = line(0);
    bad.out = vec![2];
    assert!(matches!(
        make_rule(dims, vec![v1(0)], vec![v1(0)], &[bad, line(1)]),
        Err(Error::SymbolOutOfRange { symbol: 2, .. })
    ));
    let mut bad = line(0);
    bad.out_state = 3;
    assert!(matches!(
        make_rule(dims, vec![v1(0)], vec![v1(0)], &[bad, line(1)]),
        Err(Error::StateOutOfRange { value: 3, .. })
    ));
}

#[test]
fn make_rule_accepts_unsorted_supports() {
    let dims = d1(2, 1);
    // reads (1),(0) in that order, moves right iff cell 1 holds a 1
    let table: Vec<Entry> = assignments(2, &[v1(1), v1(0)])
        .into_iter()
        .map(|a| {
            let p: Vec<u32> = a.iter().map(|x| x.1).collect();
            Entry {
                pattern: p.clone(),
                state: 1,
                out: vec![],
                out_state: 1,
                mv: v1(p[0] as i64),
            }
        })
        .collect();
    let m = Machine::new(&make_rule(dims, vec![v1(1), v1(0)], vec![], &table).unwrap());
    assert_eq!(m.rule().read_support(), &[v1(1)]);
    let c = HeadConfiguration::with_tape(dims, [(v1(1), 1)], Some((v1(0), 1)));
    assert_eq!(apply_moving_head(&m, &c).unwrap().head, Some((v1(1), 1)));
}

#[test]
fn headless_configuration_is_fixed() {
    let dims = d1(2, 1);
    let c = HeadConfiguration::with_tape(dims, [(v1(0), 1), (v1(3), 1)], None);
    let m = surf_machine(dims, 1).unwrap();
    assert_eq!(apply_moving_head(&m, &c).unwrap(), c);
}

#[test]
fn surf_moves_a_symbol_left_and_steps_right() {
    let dims = d1(2, 1);
    let m = surf_machine(dims, 1).unwrap();
    let c = HeadConfiguration::with_tape(dims, [(v1(1), 1)], Some((v1(0), 1)));
    let out = apply_moving_head(&m, &c).unwrap();
    assert_eq!(out.get(&v1(0)), 1);
    assert_eq!(out.get(&v1(1)), 0);
    assert_eq!(out.head, Some((v1(1), 1)));
    let t = TapeState::from_head(&c).unwrap();
    assert_eq!(shift_indicator(&m, &t).unwrap(), v1(1));
}

#[test]
fn walker_radii() {
    let m = involution_walker(d1(2, 1), 1).unwrap();
    let (ri, ro, rm) = m.radii();
    assert_eq!((ri, ro, rm), (1, -1, 1));
}

#[test]
fn moving_tape_shift_updates_offset_only() {
    let dims = d1(3, 2);
    let t = TapeState::new(dims, [(v1(0), 2), (v1(2), 1)], 2);
    let id = Machine::identity(dims);
    assert_eq!(apply_moving_tape(&id, &t).unwrap(), t);
    let s = apply_moving_tape(&shift_machine(dims, &v1(1)).unwrap(), &t).unwrap();
    assert_eq!(s.offset, v1(1));
    assert_eq!(s.state, 2);
    assert_eq!(s.to_head(), HeadConfiguration::with_tape(dims, [(v1(0), 2), (v1(2), 1)], Some((v1(1), 2))));
}

fn random_config<R: Rng>(r: &mut R, dims: Dims, span: i64) -> HeadConfiguration {
    let cells: Vec<(IntVector, u32)> = hypercube(dims.d, span)
        .into_iter()
        .map(|v| (v, r.gen_range(0..dims.n)))
        .collect();
    let head = IntVector((0..dims.d).map(|_| r.gen_range(-span..=span)).collect());
    HeadConfiguration::with_tape(dims, cells, Some((head, r.gen_range(1..=dims.k))))
}

#[test]
fn moving_tape_agrees_with_moving_head() {
    let mut r = rng(11);
    for i in 0..100 {
        let dims = if i % 3 == 0 { Dims::new(2, 2, 2) } else { d1(2 + i % 2, 1 + (i as u32 % 3)) };
        let m = random_rule(&mut r, dims, 1);
        let c = random_config(&mut r, dims, 3);
        let via_tape = apply_moving_tape(&m, &TapeState::from_head(&c).unwrap()).unwrap();
        assert_eq!(via_tape.to_head(), apply_moving_head(&m, &c).unwrap());
    }
}

#[test]
fn canonical_equality_matches_behaviour() {
    let mut r = rng(12);
    let dims = d1(2, 2);
    for _ in 0..300 {
        let a = random_rule(&mut r, dims, 1);
        let b = if r.gen_bool(0.3) {
            // same machine written over a larger window
            let w = hypercube(1, 2);
            Machine::new(&a.rule().padded_to(&w))
        } else {
            random_rule(&mut r, dims, 1)
        };
        assert_eq!(a == b, behaviour_equal(&a, &b));
    }
}

// Composite windows grow quickly in two dimensions; keep the factors thin.
fn small_rule<R: Rng>(r: &mut R, dims: Dims) -> Machine {
    loop {
        let m = random_rule(r, dims, 1);
        let rule = m.rule();
        if rule.read_support().len() + rule.write_support().len() <= 6 {
            return m;
        }
    }
}

#[test]
fn composition_is_sequential_application() {
    let mut r = rng(13);
    for i in 0..100 {
        let dims = if i % 4 == 0 { Dims::new(2, 2, 1) } else { d1(2, 2) };
        let f = small_rule(&mut r, dims);
        let g = small_rule(&mut r, dims);
        let fg = compose(&f, &g).unwrap();
        let c = random_config(&mut r, dims, 4);
        let two = apply_moving_head(&f, &apply_moving_head(&g, &c).unwrap()).unwrap();
        assert_eq!(apply_moving_head(&fg, &c).unwrap(), two);
    }
}

#[test]
fn power_matches_repeated_steps() {
    let mut r = rng(14);
    let dims = d1(2, 2);
    for _ in 0..30 {
        let t = random_reversible(&mut r, dims, 1);
        let e = r.gen_range(0..6);
        let c = random_config(&mut r, dims, 4);
        assert_eq!(
            apply_moving_head(&power(&t, e).unwrap(), &c).unwrap(),
            run_moving_head(&t, &c, e as usize).unwrap()
        );
        let back = compose(&power(&t, -e).unwrap(), &power(&t, e).unwrap()).unwrap();
        assert!(back.is_identity());
    }
}

#[test]
fn dims_mismatch_is_an_error() {
    let a = Machine::identity(d1(2, 1));
    let b = Machine::identity(d1(3, 1));
    assert_eq!(compose(&a, &b).unwrap_err(), Error::DimsMismatch);
    let c = HeadConfiguration::new(d1(3, 1), None);
    assert_eq!(apply_moving_head(&a, &c).unwrap_err(), Error::DimsMismatch);
}

fn arb_rule() -> impl Strategy<Value = Machine> {
    any::<u64>().prop_map(|s| {
        let mut r = rng(s);
        let k = r.gen_range(1..=2);
        random_rule(&mut r, d1(2, k), 1)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonicalization_is_idempotent(m in arb_rule()) {
        let again = m.rule().canonicalize();
        prop_assert_eq!(&again, m.rule());
    }

    #[test]
    fn canonical_form_is_independent_of_padding(m in arb_rule(), extra in -3i64..=3) {
        let mut w = hypercube(1, 1);
        w.push(v1(extra));
        let padded = Machine::new(&m.rule().padded_to(&w));
        prop_assert_eq!(padded, m);
    }

    #[test]
    fn composition_is_associative(s in any::<u64>()) {
        let mut r = rng(s);
        let dims = d1(2, 2);
        let (a, b, c) = (random_rule(&mut r, dims, 1), random_rule(&mut r, dims, 1), random_rule(&mut r, dims, 1));
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn steps_commute_with_translation(s in any::<u64>(), shift in -5i64..=5) {
        let mut r = rng(s);
        let dims = d1(2, 2);
        let m = random_rule(&mut r, dims, 1);
        let c = random_config(&mut r, dims, 3);
        let v = v1(shift);
        prop_assert_eq!(
            apply_moving_head(&m, &c.translated(&v)).unwrap(),
            apply_moving_head(&m, &c).unwrap().translated(&v)
        );
    }

    #[test]
    fn steps_are_local(s in any::<u64>()) {
        let mut r = rng(s);
        let dims = d1(3, 2);
        let m = random_rule(&mut r, dims, 1);
        let c = random_config(&mut r, dims, 3);
        let out = apply_moving_head(&m, &c).unwrap();
        let (h, _) = c.head.clone().unwrap();
        let (h2, _) = out.head.clone().unwrap();
        prop_assert!((&h2 - &h).norm() <= m.radii().2);
        for x in -8..=8 {
            let cell = v1(x);
            if !m.rule().write_support().contains(&(&cell - &h)) {
                prop_assert_eq!(out.get(&cell), c.get(&cell));
            }
        }
    }
}
