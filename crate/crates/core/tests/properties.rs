use proptest::prelude::*;

use padic_uniform::family::FamilyParams;
use padic_uniform::group::{Backend, UniformGroup};
use padic_uniform::lie::LieVector;
use padic_uniform::padic::{PAdicContext, PAdicMatrix};
use padic_uniform::quotient::{FiniteQuotient, DEFAULT_BUDGET};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

/// Integer determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * cofactor_det(&minor)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in prime(), a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000) {
        let ctx = PAdicContext::new(p, 20).unwrap();
        let (x, y, z) = (ctx.from_i64(a), ctx.from_i64(b), ctx.from_i64(c));
        prop_assert!(x.add(&y).agrees_mod(&ctx.from_i64(a + b), 20));
        prop_assert!(x.mul(&y).agrees_mod(&ctx.from_i64(a * b), 20));
        prop_assert!(x.mul(&y.add(&z)).agrees_mod(&x.mul(&y).add(&x.mul(&z)), 20));
        prop_assert!(x.sub(&x).is_zero());
        prop_assert_eq!(x.mul(&y).valuation(), x.valuation().saturating_add(y.valuation()));
    }

    #[test]
    fn inverses(p in prime(), a in 1i64..1_000_000) {
        let ctx = PAdicContext::new(p, 24).unwrap();
        let x = ctx.from_i64(a);
        let inv = x.inverse().unwrap();
        prop_assert!(x.mul(&inv).agrees_mod(&ctx.one(), 24 - x.valuation()));
        prop_assert_eq!(inv.valuation(), -x.valuation());
    }

    #[test]
    fn digit_strings_round_trip(p in prime(), a in -1_000_000i64..1_000_000) {
        let ctx = PAdicContext::new(p, 24).unwrap();
        let x = ctx.from_i64(a);
        prop_assert!(ctx.parse(&x.to_digit_string()).unwrap().agrees_mod(&x, 24));
    }

    #[test]
    fn determinant_matches_cofactors(
        p in prime(),
        entries in prop::collection::vec(-50i64..50, 25),
        n in 1usize..=5,
    ) {
        let ctx = PAdicContext::new(p, 24).unwrap();
        let rows: Vec<Vec<i64>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = PAdicMatrix::from_i64_rows(ctx, &refs);
        let want = ctx.from_bigint(&cofactor_det(&rows).into());
        prop_assert!(m.determinant().unwrap().agrees_mod(&want, 24));
    }

    #[test]
    fn exp_is_a_one_parameter_group(
        p in prop::sample::select(vec![3u64, 5]),
        entries in prop::collection::vec(-20i64..20, 9),
        s in -5i64..5,
        t in -5i64..5,
    ) {
        let ctx = PAdicContext::new(p, 16).unwrap();
        let base = PAdicMatrix::from_fn(ctx, 3, 3, |i, j| ctx.from_i64(entries[3 * i + j] * p as i64));
        let e = |k: i64| base.scale(&ctx.from_i64(k)).exp().unwrap();
        prop_assert!(e(s).matmul(&e(t)).unwrap().agrees_mod(&e(s + t), 16));
    }

    #[test]
    fn group_inverse_and_power_law(m in 3usize..=5, p in prop::sample::select(vec![3u64, 5]), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let ctx = PAdicContext::new(p, 16).unwrap();
        let group = UniformGroup::family(&FamilyParams::from_i64(ctx, m, 1).unwrap()).unwrap();
        let g = group.random_element(&mut rng);
        for backend in [Backend::Bch, Backend::Split] {
            let gb = group.to_chart(&g, backend).unwrap();
            let e = group.mul(&gb, &group.inv(&gb).unwrap(), backend).unwrap();
            prop_assert!(group.is_identity(&e).unwrap());
        }
        let cube = group.power_i64(&g, 3).unwrap();
        let twice = group.mul(&g, &group.mul(&g, &g, Backend::Bch).unwrap(), Backend::Bch).unwrap();
        prop_assert!(group.agrees_mod(&cube, &twice, 16).unwrap());
        let pth = group.power_i64(&g, p as i64).unwrap();
        let root = group.root(&pth, 1).unwrap();
        prop_assert!(group.agrees_mod(&root, &g, 16 - 1).unwrap());
    }

    #[test]
    fn quotient_map_is_a_homomorphism(seed in any::<u64>(), level in 1u32..=3) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let ctx = PAdicContext::new(3, 24).unwrap();
        let group = UniformGroup::family(&FamilyParams::from_i64(ctx, 3, 2).unwrap()).unwrap();
        let q = FiniteQuotient::new(&group, level, DEFAULT_BUDGET).unwrap();
        let g = group.random_element(&mut rng);
        let h = group.random_element(&mut rng);
        let gh = group.mul(&g, &h, Backend::Bch).unwrap();
        let image = |x| q.from_group_element(&group, x).unwrap();
        prop_assert_eq!(q.mul(image(&g), image(&h)), image(&gh));
        prop_assert_eq!(q.inv(image(&g)), image(&group.inv(&g).unwrap()));
    }

    #[test]
    fn lie_bracket_is_antisymmetric(k in 3usize..=8, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let ctx = PAdicContext::new(5, 20).unwrap();
        let alg = padic_uniform::family::build_family(&FamilyParams::from_i64(ctx, k, 3).unwrap());
        let mut v = || LieVector::new(ctx, (0..k).map(|_| ctx.from_i64(rng.gen_range(-100..100))).collect());
        let (a, b) = (v(), v());
        let ab = alg.bracket(&a, &b).unwrap();
        let ba = alg.bracket(&b, &a).unwrap();
        prop_assert!(ab.add(&ba).is_negligible());
    }
}
