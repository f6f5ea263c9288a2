//! Scan every multiplicity of weight at most 10 over F7 and list the free cells.

use freemult::algebra::Field;
use freemult::cli::{nondegenerate_elements, scan_grid};

fn main() -> freemult::Result<()> {
    let f7 = Field::Prime(7);
    let alphas = nondegenerate_elements(f7).expect("finite field");
    let report = scan_grid(&alphas, 10, false)?;
    println!("{} cells, {} free", report.cells, report.free_cells.len());
    for cell in &report.free_cells {
        println!("  alpha = {}  m = {:?}", cell.alpha, cell.m);
    }
    assert!(report.disagreements.is_empty());
    Ok(())
}
