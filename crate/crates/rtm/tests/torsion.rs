mod common;

use common::{rng, v1};
use num_bigint::BigUint;
use num_integer::Integer;
use rtm::sample::{random_rfa, random_reversible};
use rtm::torsion::*;
use rtm::zoo::{cell_swap, involution_walker, shift_machine, state_cycler, surf_machine, write_zero};
use rtm::{compose, Dims, Error, Machine};

fn d122() -> Dims {
    Dims::new(1, 2, 2)
}

#[test]
fn walker_has_order_two() {
    let t = involution_walker(Dims::new(1, 2, 1), 0).unwrap();
    assert_eq!(decide_torsion_rfa1(&t).unwrap(), TorsionVerdict::Finite(2));
    assert!(power_is_identity(&t, 2));
    assert!(!power_is_identity(&t, 1));
    assert!(power_is_identity(&t, 4));
}

#[test]
fn shift_escapes() {
    let t = shift_machine(Dims::new(1, 2, 1), &v1(1)).unwrap();
    let v = decide_torsion_rfa1(&t).unwrap();
    let TorsionVerdict::Infinite(c) = v else { panic!("{v:?}") };
    assert_eq!(
        c,
        EscapeCertificate {
            word: vec![0],
            state: 1,
            phase: 0,
            cycle_length: 1,
            displacement: 1
        }
    );
    assert!(verify_certificate(&t, &c));
    let mut neg = c.clone();
    neg.displacement = -1;
    assert!(!verify_certificate(&t, &neg));
    let mut long = c.clone();
    long.cycle_length = 2;
    long.displacement = 2;
    assert!(!verify_certificate(&t, &long), "return is not the first one");
    let mut bad = c.clone();
    bad.word = vec![];
    assert!(!verify_certificate(&t, &bad));
}

#[test]
fn cycler_escapes_slowly() {
    let t = state_cycler(d122(), 0).unwrap();
    let TorsionVerdict::Infinite(c) = decide_torsion_rfa1(&t).unwrap() else { panic!() };
    assert_eq!((c.cycle_length, c.displacement), (2, 1));
    assert!(verify_certificate(&t, &c));
    // the certificate does not transfer to a different machine
    let w = involution_walker(d122(), 0).unwrap();
    assert!(!verify_certificate(&w, &c));
}

#[test]
fn identity_has_order_one() {
    let id = Machine::identity(d122());
    assert_eq!(decide_torsion_rfa1(&id).unwrap(), TorsionVerdict::Finite(1));
    assert_eq!(order_upto(&id, 5), TorsionVerdict::Finite(1));
}

#[test]
fn rejects_non_rfa() {
    let dims = Dims::new(1, 2, 1);
    assert_eq!(decide_torsion_rfa1(&write_zero(dims).unwrap()).unwrap_err(), Error::NotRFA);
    assert_eq!(decide_torsion_rfa1(&surf_machine(dims, 1).unwrap()).unwrap_err(), Error::NotRFA);
    let two = shift_machine(Dims::new(2, 2, 1), &rtm::IntVector(vec![1, 0])).unwrap();
    assert_eq!(decide_torsion_rfa1(&two).unwrap_err(), Error::NotOneDimensional);
}

#[test]
fn order_of_general_machines() {
    let dims = Dims::new(2, 2, 1);
    assert_eq!(order_upto(&cell_swap(dims, 1).unwrap(), 10), TorsionVerdict::Finite(2));
    let s = surf_machine(Dims::new(1, 2, 1), 1).unwrap();
    assert_eq!(order_upto(&s, 6), TorsionVerdict::Unknown(6));
    let c = state_cycler(Dims::new(1, 2, 3), 0).unwrap();
    assert_eq!(order_upto(&c, 12), TorsionVerdict::Unknown(12));
}

#[test]
fn simulation_agrees_with_composition() {
    let mut r = rng(51);
    for i in 0..60 {
        let dims = Dims::new(1, 2, 1 + (i % 2) as u32);
        let t = if i % 3 == 0 { random_reversible(&mut r, dims, 1) } else { random_rfa(&mut r, dims, 1) };
        for e in 1..=4 {
            assert_eq!(power_is_identity(&t, e), power_is_identity_by_composition(&t, e).unwrap(), "{t:?}^{e}");
        }
    }
}

#[test]
fn random_rfa_battery() {
    let mut r = rng(52);
    let (mut fin, mut inf) = (0, 0);
    for _ in 0..50 {
        let t = random_rfa(&mut r, d122(), 1);
        match decide_torsion_rfa1(&t).unwrap() {
            TorsionVerdict::Finite(o) => {
                fin += 1;
                assert!(power_is_identity_by_composition(&t, o).unwrap());
                let lcm = quotient_order_lcm(&t, &[1, 2, 3, 4]).unwrap();
                assert!(BigUint::from(o).is_multiple_of(&lcm), "lcm {lcm} order {o}");
            }
            TorsionVerdict::Infinite(c) => {
                inf += 1;
                assert!(verify_certificate(&t, &c));
                let again = find_escape_witness(&t, c.word.len()).unwrap().unwrap();
                assert_eq!(again, c);
            }
            TorsionVerdict::Unknown(_) => unreachable!(),
        }
    }
    assert!(fin > 0 && inf > 0, "finite {fin} infinite {inf}");
}

#[test]
fn products_of_walkers() {
    let dims = Dims::new(1, 3, 1);
    let a = involution_walker(dims, 0).unwrap();
    let b = involution_walker(dims, 1).unwrap();
    let ab = compose(&a, &b).unwrap();
    let v = decide_torsion_rfa1(&ab).unwrap();
    let TorsionVerdict::Infinite(c) = v else { panic!("{v:?}") };
    assert!(verify_certificate(&ab, &c));
}
