//! Multiplies in G_m(d) with the Campbell-Hausdorff law and with the
//! semidirect-product law and converts between the two charts.

use padic_uniform::family::FamilyParams;
use padic_uniform::group::{Backend, UniformGroup};
use padic_uniform::padic::PAdicContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = PAdicContext::new(5, 24)?;
    let group = UniformGroup::family(&FamilyParams::from_i64(ctx, 4, 3)?)?;
    println!("truncation degree {}", group.truncation_degree());

    let g = group.element_from_i64(&[1, 2, 0, -1])?;
    let h = group.element_from_i64(&[0, 1, 1, 4])?;
    let a = group.mul(&g, &h, Backend::Bch)?;
    let b = group.mul(&g, &h, Backend::Split)?;
    let show = |e: &padic_uniform::group::GroupElement| {
        e.coords().coords().iter().map(|c| c.to_digit_string()).collect::<Vec<_>>().join(", ")
    };
    println!("bch product:   ({})", show(&a));
    println!("split product: ({}) in the {} chart", show(&b), b.chart());
    println!("agree mod 5^24: {}", group.agrees_mod(&a, &b, 24)?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = group.random_element(&mut rng);
    let c = group.commutator(&g, &x, Backend::Bch)?;
    println!("commutator [g, x] lies in G^5: {}", group.root(&c, 1).is_ok());
    println!("g^-1 g is the identity: {}", group.is_identity(&group.mul(&group.inv(&g)?, &g, Backend::Bch)?)?);
    Ok(())
}
