//! The normalised invariant recovers d from L_k(d) whatever complement is
//! used, so distinct parameters give non-isomorphic algebras.

use padic_uniform::cli::show;
use padic_uniform::family::{build_family, commensurability_invariant, distinguish, FamilyParams, InvariantLevel};
use padic_uniform::lie::LieVector;
use padic_uniform::padic::PAdicContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PAdicContext::new(7, 24)?;
    let k = 6;
    let d = ctx.from_i64(10);
    let alg = build_family(&FamilyParams::new(k, d)?);

    for coords in [[1, 0, 0, 0, 0, 0], [3, 1, -2, 0, 5, 9], [-1, 4, 4, 4, 4, 4]] {
        let y = LieVector::from_i64(ctx, &coords);
        let v = commensurability_invariant(&alg, Some(&y), InvariantLevel::Integral)?;
        println!(
            "y = {coords:?}: tr = {}, det = {}, recovered d = {}",
            show(&v.trace),
            show(&v.determinant),
            show(&v.recovered_d)
        );
    }

    // 10 and 10 + 7^20 agree to 20 digits but not to 24
    let close = d.add(&ctx.p_power(20));
    for l in [ctx.from_i64(3), close, d] {
        let r = distinguish(k, &d, &l)?;
        println!("d = 10 vs l = {}: {:?}", l.to_digit_string(), r.verdict);
    }
    Ok(())
}
