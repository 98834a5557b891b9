//! Recovers the Lie operations from the group law alone:
//! g + h = lim (g^{p^n} h^{p^n})^{p^-n} and [g, h] = lim [g^{p^n}, h^{p^n}]^{p^-2n}.

use padic_uniform::family::FamilyParams;
use padic_uniform::group::UniformGroup;
use padic_uniform::padic::PAdicContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PAdicContext::new(5, 24)?;
    let group = UniformGroup::family(&FamilyParams::from_i64(ctx, 4, 2)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = group.random_element(&mut rng);
    let h = group.random_element(&mut rng);
    let sum = g.coords().add(h.coords());
    let bracket = group.algebra().bracket(g.coords(), h.coords())?;

    println!(" n  v(sum error)  v(bracket error)");
    for n in 1..=8 {
        let s = group.intrinsic_sum(&g, &h, n)?;
        let b = group.intrinsic_bracket(&g, &h, n)?;
        let vs = group.ambient_valuation(&s.sub(&sum)).min(26);
        let vb = group.ambient_valuation(&b.sub(&bracket)).min(26);
        println!("{n:>2}  {vs:>12}  {vb:>16}");
    }
    Ok(())
}
