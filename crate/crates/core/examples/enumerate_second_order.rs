// Brute-force count of the symmetries of order at most two, compared with
// the canonical operators built from Killing tensors.

use bisym::cktsolve::second_order_symmetry_dimension;
use bisym::suite::second_order_bases;
use bisym::symalg::{canonical_second_order_symmetries, enumerate_symmetries, operator_rank};

pub fn run_example() -> bisym::Result<()> {
    let n = 3;
    let sym = enumerate_symmetries(n, 2, 6)?;
    println!("enumerated: {}", sym.dimension());
    println!("formula: {}", second_order_symmetry_dimension(n));
    let (k1, k2, l2) = second_order_bases(n)?;
    let canon = canonical_second_order_symmetries(&k1.basis, &k2.basis, &l2.basis, n)?;
    let mut both = canon.clone();
    both.extend(sym.basis);
    println!("canonical operators: {}, rank {}", canon.len(), operator_rank(&canon));
    println!("rank of both families together: {}", operator_rank(&both));
    Ok(())
}

#[allow(dead_code)]
fn main() -> bisym::Result<()> {
    run_example()
}
