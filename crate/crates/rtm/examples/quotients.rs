//! Finite quotients on periodic configurations, signs and the LEF check.
//!
//!     cargo run --example quotients

use rtm::quotients::{lef_check, phi, quotient_size, sign_vector};
use rtm::sample::random_reversible;
use rtm::zoo::{involution_walker, state_cycler};
use rtm::Dims;
use rand::SeedableRng;

fn main() -> rtm::Result<()> {
    let dims = Dims::new(1, 2, 2);
    let cyc = state_cycler(dims, 0)?;
    for m in 1..=4 {
        let p = phi(&cyc, m)?;
        println!("cycler on Y_{m}: {} points, order {}, sign {:+}", quotient_size(dims, m).unwrap(), p.order(), p.sign());
    }
    let w = involution_walker(Dims::new(1, 3, 1), 2)?;
    println!("walker signs over m = 1..5: {:?}", sign_vector(&w, &[1, 2, 3, 4, 5])?);

    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let ms = vec![random_reversible(&mut rng, dims, 1), random_reversible(&mut rng, dims, 1)];
    let rep = lef_check(&ms, 1)?;
    println!("LEF check on Y_{}: {}", rep.period, if rep.holds { "holds" } else { "fails" });
    Ok(())
}
