//! Intersection lattice and characteristic polynomial of X3(α).

use freemult::algebra::Field;
use freemult::arrangement::MultiArrangement;

fn main() -> freemult::Result<()> {
    let q = Field::Rationals;
    let a = MultiArrangement::x3(&q.from_i64(2))?;
    for i in 0..a.len() {
        println!("H{i}: {}", a.form_polynomial(i));
    }
    let chi = a.lattice().char_poly();
    println!("chi(t) = {chi}");
    println!("       = {}", chi.factored());
    Ok(())
}
