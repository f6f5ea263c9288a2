//! Exponents of multiarrangements on four points of P^1.
//!
//! The exponents depend on the cross-ratio, not only on the multiplicities.

use freemult::algebra::Field;
use freemult::arrangement::MultiArrangement;
use freemult::yoshinaga::p1_exponents;

fn main() -> freemult::Result<()> {
    let q = Field::Rationals;
    for alpha in [-1, 2, 3] {
        let a = MultiArrangement::from_integer_forms(q, &[&[1, 0], &[0, 1], &[1, 1], &[1, alpha]])?
            .with_multiplicities(&[3, 3, 1, 1])?;
        let forms: Vec<String> = (0..a.len()).map(|i| a.form_polynomial(i).to_string()).collect();
        println!("{} with m = [3,3,1,1]: {:?}", forms.join(", "), p1_exponents(&a)?);
    }
    Ok(())
}
