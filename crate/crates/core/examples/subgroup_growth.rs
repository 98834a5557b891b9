//! Counts subgroups of index p^i in G_m(d) through finite quotients and
//! compares the layered counter with plain enumeration on a small quotient.

use padic_uniform::family::FamilyParams;
use padic_uniform::group::UniformGroup;
use padic_uniform::growth::{count_subgroups_layered, count_subgroups_naive, zeta_coefficients};
use padic_uniform::padic::PAdicContext;
use padic_uniform::quotient::{FiniteQuotient, DEFAULT_BUDGET};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, m) in [(2, 3), (3, 3), (3, 4)] {
        let ctx = PAdicContext::new(p, 24)?;
        let group = UniformGroup::family(&FamilyParams::from_i64(ctx, m, 1)?)?;
        let table = zeta_coefficients(&group, 2, DEFAULT_BUDGET)?;
        for r in &table.rows {
            println!(
                "p = {p}, m = {m}: a_(p^{}) = {} (normal {}) from level {}{}",
                r.i,
                r.a,
                r.a_normal,
                r.level,
                if r.stabilized { "" } else { ", not yet stable" }
            );
        }
    }

    let ctx = PAdicContext::new(2, 24)?;
    let group = UniformGroup::family(&FamilyParams::from_i64(ctx, 3, 1)?)?;
    let q = FiniteQuotient::new(&group, 3, DEFAULT_BUDGET)?;
    let naive = count_subgroups_naive(&q, 9)?;
    let layered = count_subgroups_layered(&q, 9);
    let totals: Vec<u64> = layered.iter().map(|c| c.total).collect();
    println!("G_3 / G^8 at p = 2: subgroups by index {totals:?}, naive agrees: {}", naive == layered);
    let mut out = Vec::new();
    zeta_coefficients(&group, 1, DEFAULT_BUDGET)?.write_csv(&mut out)?;
    print!("{}", String::from_utf8(out)?);
    Ok(())
}
