// Inducing operators on R^n from homogeneous operators on R^(n+2).

use bisym::ambient::{ambient_op_w, induce};
use bisym::rational::int;
use bisym::suite::{bilaplacian_weight, laplacian_weight};
use bisym::symalg::{bullet_tensor, tail_tensor, LieElement};
use bisym::{DiffOp, VarSpace};

pub fn run_example() -> bisym::Result<()> {
    let n = 3;
    let amb = VarSpace::ambient(n);
    println!("ambient laplacian: {}", DiffOp::laplacian(amb));
    println!("induced at w = 1 - n/2: {}", induce(&DiffOp::laplacian(amb), &laplacian_weight(n))?);

    // the ambient laplacian is only well defined on the cone at that weight
    match induce(&DiffOp::laplacian(amb), &int(0)) {
        Ok(_) => println!("unexpectedly well defined at w = 0"),
        Err(e) => println!("at w = 0: {e}"),
    }

    let u = LieElement::translation(n, 0);
    let v = LieElement::inversion(n, 1);
    let w = tail_tensor(&bullet_tensor(&u, &v));
    let op = induce(&ambient_op_w(&w)?, &bilaplacian_weight(n))?;
    println!("W-operator at w = 2 - n/2: {op}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> bisym::Result<()> {
    run_example()
}
