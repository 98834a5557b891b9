//! Lower central p-series, powerfulness and generator rank of finite quotients.

use crate::quotient::{closure, frattini_subgroup, normalize, Elem, FiniteQuotient, Subgroup};

/// `P_1 = Q`, `P_{i+1} = P_i^p [P_i, Q]`, computed by closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerPSeries {
    /// `|P_i|` for `i = 1, 2, ...`.
    pub orders: Vec<u64>,
    /// `|P_i : P_{i+1}|`.
    pub indices: Vec<u64>,
    /// Whether `P_{i+1}` is exactly the set of elements with all coordinates
    /// divisible by `p^i`.
    pub matches_power_image: Vec<bool>,
}

impl LowerPSeries {
    /// All consecutive indices equal `p^m`.
    pub fn is_uniform(&self, p: u64, m: usize) -> bool {
        let want = p.pow(m as u32);
        !self.indices.is_empty() && self.indices.iter().all(|&i| i == want)
    }
}

fn next_term(q: &FiniteQuotient, h: &Subgroup) -> Subgroup {
    let mut gens: Vec<Elem> = h.elements().map(|x| q.pow(x, q.p())).collect();
    for &x in &h.gens {
        for &g in q.generators() {
            gens.push(q.commutator(x, g));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let mut k = Subgroup::trivial(q);
    for g in gens {
        if !k.contains(g) {
            k = crate::quotient::extend(q, &k, &[g]);
        }
    }
    normalize(q, k, q.generators())
}

/// Terms of the series until the trivial group or `i_max` steps.
pub fn lower_p_series(q: &FiniteQuotient, i_max: usize) -> LowerPSeries {
    let mut current = closure(q, q.generators());
    let mut out = LowerPSeries {
        orders: vec![current.order],
        indices: Vec::new(),
        matches_power_image: Vec::new(),
    };
    for i in 1..=i_max {
        if current.order == 1 {
            break;
        }
        let next = next_term(q, &current);
        out.indices.push(current.order / next.order);
        out.orders.push(next.order);
        out.matches_power_image
            .push(next.members == q.power_image(i as u32));
        current = next;
    }
    out
}

/// `[Q, Q] <= Q^p` (`Q^4` when p = 2), checked on generator commutators.
pub fn is_powerful_group(q: &FiniteQuotient) -> bool {
    let e = if q.p() == 2 { 4 } else { q.p() };
    let mut powers: Vec<Elem> = q.elements().map(|x| q.pow(x, e)).collect();
    powers.sort_unstable();
    powers.dedup();
    let mut k = Subgroup::trivial(q);
    for g in powers {
        if !k.contains(g) {
            k = crate::quotient::extend(q, &k, &[g]);
        }
    }
    let gens = q.generators();
    gens.iter()
        .all(|&a| gens.iter().all(|&b| k.contains(q.commutator(a, b))))
}

/// `log_p |Q : Q^p [Q, Q]|`, the minimal number of generators.
pub fn frattini_rank(q: &FiniteQuotient) -> u32 {
    let whole = closure(q, q.generators());
    let phi = frattini_subgroup(q, &whole);
    let mut r = whole.order / phi.order;
    let mut e = 0;
    while r > 1 {
        r /= q.p();
        e += 1;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyParams;
    use crate::group::UniformGroup;
    use crate::padic::PAdicContext;
    use crate::quotient::DEFAULT_BUDGET;

    fn quotient(p: u64, m: usize, level: u32) -> FiniteQuotient {
        let ctx = PAdicContext::new(p, 24).unwrap();
        let g = UniformGroup::family(&FamilyParams::from_i64(ctx, m, 1).unwrap()).unwrap();
        FiniteQuotient::new(&g, level, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn series_of_small_quotients() {
        let q = quotient(3, 3, 2);
        let s = lower_p_series(&q, 5);
        assert_eq!(s.indices, vec![27, 27]);
        assert!(s.matches_power_image.iter().all(|&b| b));
        assert_eq!(s.orders.last(), Some(&1));
    }

    #[test]
    fn powerful_and_rank() {
        for (p, m) in [(3, 3), (3, 4), (5, 3)] {
            let q = quotient(p, m, 2);
            assert!(is_powerful_group(&q));
            assert_eq!(frattini_rank(&q), m as u32);
        }
        let q = quotient(3, 3, 3);
        assert!(is_powerful_group(&q));
        assert_eq!(frattini_rank(&q), 3);
    }
}
