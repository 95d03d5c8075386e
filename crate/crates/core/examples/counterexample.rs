// A nonzero fourth-order tensor whose induced operator is a multiple of
// q Δ², hence trivial as a symmetry.

use bisym::rational::format_rational;
use bisym::symalg::{counterexample_check, quartic_power};

pub fn run_example() -> bisym::Result<()> {
    let n = 3;
    let z = quartic_power(n, 1);
    let r = counterexample_check(&z)?;
    println!("X has {} independent components", r.tensor.len());
    println!("outer traces vanish: {}", r.first_trace_vanishes && r.last_trace_vanishes);
    if let Some(c) = &r.mixed_trace_multiple {
        println!("mixed trace = {} Z", format_rational(c));
    }
    println!("q = {}", r.quartic);
    match &r.operator_multiple {
        Some(k) => println!("induced operator = {} q bilaplacian", format_rational(k)),
        None => println!("induced operator is not a multiple of q bilaplacian"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> bisym::Result<()> {
    run_example()
}
