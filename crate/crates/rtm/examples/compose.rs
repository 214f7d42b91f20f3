//! Build machines, compose them and watch one run.
//!
//!     cargo run --example compose

use rtm::format::{serialize_config, serialize_machine};
use rtm::zoo::{involution_walker, shift_machine, surf_machine};
use rtm::{apply_moving_head, compose, power, Dims, HeadConfiguration, IntVector};

fn main() -> rtm::Result<()> {
    let dims = Dims::new(1, 2, 1);
    let right = shift_machine(dims, &IntVector(vec![1]))?;
    let surf = surf_machine(dims, 1)?;

    // first surf, then a step right
    let both = compose(&right, &surf)?;
    println!("shift ∘ surf has radii {:?}", both.radii());
    print!("{}", serialize_machine(&both));

    let walker = involution_walker(dims, 1)?;
    println!("walker squared is the identity: {}", power(&walker, 2)?.is_identity());

    let mut c = HeadConfiguration::with_tape(dims, [(IntVector(vec![1]), 1)], Some((IntVector(vec![0]), 1)));
    for t in 1..=3 {
        c = apply_moving_head(&surf, &c)?;
        println!("after step {t}: head {:?}", c.head);
    }
    print!("{}", serialize_config(&c));
    Ok(())
}
