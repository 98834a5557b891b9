//! Lower p-series of the finite quotients G_3(d) / G^{3^j}: every step has
//! index 3^3 and matches the image of a power subgroup.

use padic_uniform::family::FamilyParams;
use padic_uniform::group::UniformGroup;
use padic_uniform::padic::PAdicContext;
use padic_uniform::pseries::{frattini_rank, is_powerful_group, lower_p_series};
use padic_uniform::quotient::{FiniteQuotient, DEFAULT_BUDGET};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PAdicContext::new(3, 24)?;
    let group = UniformGroup::family(&FamilyParams::from_i64(ctx, 3, 1)?)?;
    for level in 1..=3 {
        let q = FiniteQuotient::new(&group, level, DEFAULT_BUDGET)?;
        let s = lower_p_series(&q, level as usize + 1);
        println!(
            "level {level}: order {}, abelian {}, powerful {}, rank {}, indices {:?}, power images {:?}",
            q.order(),
            q.is_abelian(),
            is_powerful_group(&q),
            frattini_rank(&q),
            s.indices,
            s.matches_power_image
        );
    }
    Ok(())
}
