//! Build a rank-4 arrangement whose restriction to w = 0 is X3(−1), and check
//! freeness through the restriction, the local rank-3 flats, and Saito.

use freemult::algebra::Field;
use freemult::arrangement::MultiArrangement;
use freemult::extension::{build_extension, terao_trace, verify_extension, verify_extension_with, ExtensionSpec, VerifyOptions};

fn main() -> freemult::Result<()> {
    let q = Field::Rationals;
    let spec = ExtensionSpec::new(q.from_i64(-1), vec![q.one()])?;
    let a = build_extension(&spec)?;
    let h0 = a.len() - 1;
    for i in 0..a.len() {
        println!("  {}", a.form_polynomial(i));
    }

    let report = verify_extension_with(&a, h0, VerifyOptions { full_saito: true })?;
    println!("free: {}, saito: {:?}", report.free, report.saito.as_ref().and_then(|s| s.exponents()));
    for step in terao_trace(&a, h0)?.steps {
        println!("  [{}] {}: {}", if step.passed { "ok" } else { "!!" }, step.name, step.detail);
    }

    // Moving x - w to x - 3w keeps the restriction but breaks two local grids.
    let mut forms = a.forms().to_vec();
    forms[0] = vec![q.one(), q.zero(), q.zero(), q.from_i64(-3)];
    let perturbed = verify_extension(&MultiArrangement::simple(q, forms)?, h0)?;
    println!("perturbed free: {}", perturbed.free);
    for flat in perturbed.failed_flats() {
        println!("  fails at {:?}", flat.hyperplanes);
    }
    Ok(())
}
