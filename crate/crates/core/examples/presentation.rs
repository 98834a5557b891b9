//! The presentation of G_4(d) on m generators and C(m, 2) relators, checked
//! against the closed-form relations.

use padic_uniform::family::FamilyParams;
use padic_uniform::group::UniformGroup;
use padic_uniform::padic::PAdicContext;
use padic_uniform::presentation::{compare_with_remark, emit_presentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PAdicContext::new(5, 12)?;
    let group = UniformGroup::family(&FamilyParams::from_i64(ctx, 4, 2)?)?;
    let pres = emit_presentation(&group)?;
    print!("{}", pres.render());
    println!("relators hold in the group: {}", pres.verify(&group)?);
    println!("smallest exponent valuation: {}", pres.min_exponent_valuation());
    for pair in compare_with_remark(&group)? {
        println!("[{}, {}] agrees to 5^{}", pair.left, pair.right, pair.agreement);
    }
    Ok(())
}
