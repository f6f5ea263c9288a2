//! Exactness of the chain complex behind the homological criterion, for a few α.

use freemult::algebra::Field;
use freemult::x3::verify_chain_exactness;

fn main() -> freemult::Result<()> {
    for (field, values) in [(Field::Rationals, vec![-1, 2, 3, 7]), (Field::Prime(11), vec![2, 5, 10])] {
        for v in values {
            let alpha = field.from_i64(v);
            println!("alpha = {alpha} over {field}: exact = {}", verify_chain_exactness(&alpha)?);
        }
    }
    Ok(())
}
