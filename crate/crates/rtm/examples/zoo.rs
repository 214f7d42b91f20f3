//! Named machine families: classical decomposition, the free product of
//! walkers, lamplighter generators and the subgroup flags.
//!
//!     cargo run --example zoo

use rtm::reversibility::is_reversible;
use rtm::zoo::*;
use rtm::{apply_moving_head, compose, compose_seq, Dims};

fn main() -> rtm::Result<()> {
    let dims = Dims::new(1, 2, 1);
    let classical = all_classical_rules(dims);
    let rev: Vec<_> = classical.iter().filter(|m| is_reversible(m)).collect();
    println!("{} of {} classical rules are reversible", rev.len(), classical.len());
    for m in rev {
        let dc = classical_decompose(m)?;
        println!("  perm {:?}, directions {:?}", dc.perm, dc.directions);
    }

    let t = [involution_walker(dims, 0)?, involution_walker(dims, 1)?];
    let word = [0u32, 1, 0, 1, 0];
    let m = compose_seq(dims, word.iter().map(|&a| &t[a as usize]))?;
    let x = free_product_witness(dims, &word)?;
    println!("word {word:?} moves the head to {:?}", apply_moving_head(&m, &x)?.head);

    let gens = lamplighter_generators(dims, 3, &[vec![1, 0, 2]])?;
    let flags = classify(&gens[0]);
    println!("lamplighter swap: lp={} oblivious={} rfa={}", flags.is_lp, flags.is_oblivious, flags.is_rfa);
    let ab = compose(&gens[1], &gens[0])?;
    println!("shift ∘ swap oblivious: {}", classify(&ab).is_oblivious);

    let walker = classify(&t[0]);
    println!("walker: rfa={} lp={}", walker.is_rfa, walker.is_lp);
    Ok(())
}
