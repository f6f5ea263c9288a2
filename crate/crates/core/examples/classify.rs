//! Classify X3(α) with a balanced multiplicity by three independent methods.
//!
//! ```text
//! cargo run --example classify
//! ```

use freemult::algebra::Field;
use freemult::arrangement::MultiArrangement;
use freemult::derivation::decide_free_bruteforce;
use freemult::x3::{classify_predicted, decide_free_homological};

fn main() -> freemult::Result<()> {
    let q = Field::Rationals;
    for a in [-1, 2] {
        let alpha = q.from_i64(a);
        for n in 2..=4 {
            let m = [n, n, n, 1, 1, 1];
            let hom = decide_free_homological(&alpha, &m)?;
            let predicted = classify_predicted(&alpha, &m)?;
            let arrangement = MultiArrangement::x3(&alpha)?.with_multiplicities(&m)?;
            let brute = decide_free_bruteforce(&arrangement)?;
            println!(
                "alpha = {a:>2}, m = {m:?}: homological {}, predicted {predicted:?}, bruteforce {:?}",
                if hom.free { "free" } else { "not free" },
                brute.exponents()
            );
        }
    }
    Ok(())
}
