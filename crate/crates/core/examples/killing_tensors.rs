// Solving the conformal Killing equations over polynomials.

use bisym::cktsolve::{solve_ckt, solve_gckt, verify_divergence_identities};

pub fn run_example() -> bisym::Result<()> {
    let n = 3;
    let k1 = solve_ckt(n, 1, 2)?;
    let k2 = solve_ckt(n, 2, 4)?;
    let l0 = solve_gckt(n, 0, 4)?;
    println!("conformal Killing vectors on R^{n}: {}", k1.dimension());
    println!("conformal Killing 2-tensors: {}", k2.dimension());
    println!("generalised conformal Killing scalars: {}", l0.dimension());
    for v in k1.basis.iter().take(3) {
        println!("  {v}");
    }
    let id = verify_divergence_identities(&k2.basis[0])?;
    println!("divergence identities hold on the first 2-tensor: {}", id.all_hold());
    Ok(())
}

#[allow(dead_code)]
fn main() -> bisym::Result<()> {
    run_example()
}
