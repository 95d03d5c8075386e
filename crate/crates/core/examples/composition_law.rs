// D_X D_Y = D_{X⊛Y} + D_{X∙Y} + ½ D_{[X,Y]} + c(w) ⟨X,Y⟩ on so(4,1).

use bisym::rational::{format_rational, rat};
use bisym::symalg::{composition_law, killing_form, lie_basis, scalar_coefficient, LieElement};

pub fn run_example() -> bisym::Result<()> {
    let n = 3;
    let basis = lie_basis(n);
    for w in [rat(1, 2), rat(-1, 2), rat(1, 7)] {
        let mut holds = 0;
        let mut total = 0;
        for (i, u) in basis.iter().enumerate() {
            for v in &basis[i..] {
                total += 1;
                if composition_law(u, v, &w)?.holds() {
                    holds += 1;
                }
            }
        }
        println!(
            "w = {}: {holds}/{total} pairs, scalar coefficient {}",
            format_rational(&w),
            format_rational(&scalar_coefficient(n, &w))
        );
    }
    let d = LieElement::dilation(n);
    println!("<dilation, dilation> = {}", killing_form(&d, &d));
    Ok(())
}

#[allow(dead_code)]
fn main() -> bisym::Result<()> {
    run_example()
}
