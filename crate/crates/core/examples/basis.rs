//! The explicit basis for (X3(−1), [2k,2k,2k,1,1,1]) and its Saito determinant.

use freemult::algebra::Field;
use freemult::arrangement::MultiArrangement;
use freemult::derivation::saito_check;
use freemult::x3::canonical_basis;

fn main() -> freemult::Result<()> {
    let alpha = Field::Rationals.from_i64(-1);
    for k in 1..=2 {
        let m = [2 * k, 2 * k, 2 * k, 1, 1, 1];
        let a = MultiArrangement::x3(&alpha)?.with_multiplicities(&m)?;
        let basis = canonical_basis(k)?;
        for (i, theta) in basis.iter().enumerate() {
            println!("k = {k}, theta{} = {theta}", i + 1);
        }
        println!("  {:?}", saito_check(&a, &basis)?);
    }
    Ok(())
}
