//! A grid of lines plus one extra line: freeness is decided by counting
//! grid points on the extra line, and agrees with the rank-3 criterion.

use freemult::algebra::Field;
use freemult::cli::check_grid;
use freemult::yoshinaga::GridLineSpec;

fn main() -> freemult::Result<()> {
    let f = Field::Prime(11);
    // x = 0, 1, 2 and y = 0, 1, 2 with the lines y = x and x + y = 1
    for line in [[1, -1, 0], [1, 1, -1]] {
        let spec = GridLineSpec::from_i64(f, &[0, 1, 2], &[0, 1, 2], line)?;
        let g = check_grid(spec)?;
        println!(
            "line {line:?}: q = {}, grid {}, rank-3 {}, chi = {}",
            g.q,
            g.grid_free,
            g.yoshinaga_free,
            g.chi.factored()
        );
    }
    Ok(())
}
