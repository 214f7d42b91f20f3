//! Decide reversibility, invert, and measure average movement and defect.
//!
//!     cargo run --example reversibility

use rtm::reversibility::{average_movement, format_rational_vector, invert, is_reversible, measure_defect};
use rtm::zoo::{state_cycler, surf_machine, write_zero};
use rtm::{compose, Dims};

fn main() -> rtm::Result<()> {
    for n in [2, 3] {
        for m in 1..=3 {
            let s = surf_machine(Dims::new(1, n, 1), m)?;
            println!("surf n={n} m={m}: alpha = {}", format_rational_vector(&average_movement(&s)));
        }
    }

    let cyc = state_cycler(Dims::new(2, 2, 3), 1)?;
    println!("cycler k=3 along e2: alpha = {}", format_rational_vector(&average_movement(&cyc)));

    let s = surf_machine(Dims::new(1, 2, 1), 2)?;
    let inv = invert(&s)?;
    println!("surf^-1 reads {} cells, surf^-1 ∘ surf = id: {}", inv.rule().read_support().len(), compose(&inv, &s)?.is_identity());

    let w = write_zero(Dims::new(1, 2, 1))?;
    println!("write-0 reversible: {}, defect {}", is_reversible(&w), measure_defect(&w));
    match invert(&w) {
        Ok(_) => unreachable!(),
        Err(e) => println!("invert(write-0): {e}"),
    }
    Ok(())
}
