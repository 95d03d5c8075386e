// Splitting U ⊗ V into its six summands and the operators they induce.

use bisym::ambient::{induce, two_pair_operator};
use bisym::rational::rat;
use bisym::symalg::{decompose_pair, LieElement};

pub fn run_example() -> bisym::Result<()> {
    let n = 3;
    let u = LieElement::dilation(n);
    let v = LieElement::translation(n, 0).add(&LieElement::inversion(n, 1));
    let parts = decompose_pair(&u, &v);
    let names = ["cartan", "bullet", "scalar", "hook", "adjoint", "fully skew"];
    let w = rat(1, 3);
    for (name, part) in names.iter().zip(parts.embedded().iter()) {
        let op = two_pair_operator(part);
        let induced = if op.is_zero() { op.clone() } else { induce(&op, &w)? };
        println!("{name:>10}: {} components, induced order {:?}", part.len(), induced.order());
    }
    println!("recombines: {}", parts.recombine() == u.tensor().tensor(v.tensor()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> bisym::Result<()> {
    run_example()
}
