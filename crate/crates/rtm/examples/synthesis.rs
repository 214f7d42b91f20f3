//! Compile oblivious machines into words over the finite generating set.
//!
//!     cargo run --example synthesis

use rtm::format::serialize_word;
use rtm::sample::random_local_permutation;
use rtm::synthesis::{eval_word, reduce_to_width4, synthesize_ob, PointSpace};
use rtm::zoo::{cell_swap, shift_machine};
use rtm::{compose, Dims, IntVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn main() -> rtm::Result<()> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let dims = Dims::new(1, 2, 1);

    print!("{}", serialize_word(&synthesize_ob(&cell_swap(dims, 0)?)?));

    let lp = random_local_permutation(&mut rng, dims, &[IntVector(vec![0]), IntVector(vec![2])]);
    let m = compose(&shift_machine(dims, &IntVector(vec![-1]))?, &lp)?;
    let w = synthesize_ob(&m)?;
    println!("shift ∘ random permutation of 2 cells: {} tokens, round trip {}", w.tokens.len(), eval_word(&w)? == m);

    // the reduction behind wide windows
    let space = PointSpace::new(2, 1, 6);
    let mut p: Vec<usize> = (0..space.size()).collect();
    p.shuffle(&mut rng);
    match reduce_to_width4(space, &p, false) {
        Ok(r) => println!("even target on 6 wires: {} four-wire applications", r.apps.len()),
        Err(e) => println!("without a borrowed wire: {e}"),
    }
    let r = reduce_to_width4(space, &p, true)?;
    println!("allowing a borrowed wire: {} applications, ancilla used: {}", r.apps.len(), r.ancilla);
    Ok(())
}
