//! Orders of machines and the torsion decision for one-dimensional RFAs.
//!
//!     cargo run --example torsion

use rtm::format::serialize_certificate;
use rtm::sample::random_rfa;
use rtm::torsion::{decide_torsion_rfa1, order_upto, verify_certificate, TorsionVerdict};
use rtm::zoo::{cell_swap, involution_walker, state_cycler};
use rtm::{compose, Dims};
use rand::SeedableRng;

fn main() -> rtm::Result<()> {
    let d = Dims::new(1, 2, 2);
    let a = involution_walker(d, 0)?;
    let b = involution_walker(d, 1)?;
    println!("walker: {:?}", decide_torsion_rfa1(&a)?);
    if let TorsionVerdict::Infinite(c) = decide_torsion_rfa1(&compose(&a, &b)?)? {
        println!("product of two walkers escapes; certificate valid: {}", verify_certificate(&compose(&a, &b)?, &c));
        print!("{}", serialize_certificate(&c));
    }
    println!("cycler: {:?}", decide_torsion_rfa1(&state_cycler(d, 0)?)?);

    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for i in 0..5 {
        let t = random_rfa(&mut rng, d, 1);
        let v = match decide_torsion_rfa1(&t)? {
            TorsionVerdict::Finite(o) => format!("finite, order {o}"),
            TorsionVerdict::Infinite(c) => format!("infinite, drifts {} per {} steps", c.displacement, c.cycle_length),
            TorsionVerdict::Unknown(b) => format!("unknown at {b}"),
        };
        println!("random RFA {i}: {v}");
    }

    // general machines only get a semi-decision
    println!("2D cell swap: {:?}", order_upto(&cell_swap(Dims::new(2, 2, 1), 1)?, 8));
    Ok(())
}
