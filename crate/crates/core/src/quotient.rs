//! Finite quotients `G / G^{p^j}` as explicit groups.
//!
//! Elements are split-chart coordinates `(t, a_1, ..., a_{m-1})` reduced
//! modulo `q = p^j`, packed into a mixed-radix index with `t` least
//! significant.  The law `(a, t)(b, s) = (a + E(t) b, t + s)` only needs
//! `E(t) mod q`, and `E(t) = E(1)^t` because `t -> E(t)` is a one-parameter
//! group; `E(q) = exp(q S) = 1 mod q` since `S = 0 mod p`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Backend, GroupElement, UniformGroup};
use crate::lie::LieVector;

/// Default cap on the order of an enumerated quotient.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Index of an element of a [`FiniteQuotient`].
pub type Elem = u32;

/// Quotients up to this order keep a full multiplication table.
const TABLE_LIMIT: u64 = 1024;

/// Largest rank handled by the allocation-free law.
const MAX_RANK: usize = 32;

/// `G / G^{p^j}` with multiplication evaluated on demand.
#[derive(Debug, Clone)]
pub struct FiniteQuotient {
    p: u64,
    rank: usize,
    level: u32,
    q: u64,
    order: u64,
    /// `E(t) mod q` for `t = 0..q`, row-major `(m-1) x (m-1)`.
    action: Vec<Vec<u64>>,
    generators: Vec<Elem>,
    table: Option<Vec<Elem>>,
}

impl FiniteQuotient {
    /// Builds the level-`j` quotient of a group with a split backend.
    pub fn new(group: &UniformGroup, level: u32, budget: u64) -> Result<Self> {
        let p = group.ctx().p();
        let rank = group.rank();
        let exponent = level * rank as u32;
        let order = (p as u128).checked_pow(exponent).filter(|o| *o <= budget as u128);
        let order = order.ok_or(Error::Budget {
            p,
            exponent,
            budget,
        })? as u64;
        if level > group.ctx().prec() {
            return Err(Error::Precision(format!(
                "level {level} exceeds the working precision {}",
                group.ctx().prec()
            )));
        }
        if rank > MAX_RANK {
            return Err(Error::Invalid(format!("quotients support rank at most {MAX_RANK}")));
        }
        let q = p.pow(level);
        let n = rank - 1;
        let e1 = group.split_action(&group.ctx().one())?;
        let e1: Vec<u64> = (0..n * n)
            .map(|k| residue(&e1.get(k / n, k % n), level))
            .collect::<Result<_>>()?;
        let mut action = Vec::with_capacity(q as usize);
        let mut cur: Vec<u64> = (0..n * n).map(|k| u64::from(k / n == k % n) % q.max(1)).collect();
        for _ in 0..q {
            action.push(cur.clone());
            cur = matmul_mod(&cur, &e1, n, q);
        }
        let mut quotient = Self {
            p,
            rank,
            level,
            q,
            order,
            action,
            generators: Vec::new(),
            table: None,
        };
        if order <= TABLE_LIMIT {
            let table = (0..order as Elem)
                .flat_map(|x| (0..order as Elem).map(move |y| (x, y)))
                .map(|(x, y)| quotient.mul_direct(x, y))
                .collect();
            quotient.table = Some(table);
        }
        quotient.generators = (0..rank)
            .map(|i| quotient.from_group_element(group, &group.generator(i)))
            .collect::<Result<_>>()?;
        Ok(quotient)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Images of the group's basis generators.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn decode(&self, x: Elem) -> Vec<u64> {
        let mut x = x as u64;
        let mut out = Vec::with_capacity(self.rank);
        for _ in 0..self.rank {
            out.push(if self.q == 1 { 0 } else { x % self.q });
            if self.q > 1 {
                x /= self.q;
            }
        }
        out
    }

    pub fn encode(&self, coords: &[u64]) -> Elem {
        if self.q == 1 {
            return 0;
        }
        coords.iter().rev().fold(0u64, |acc, c| acc * self.q + c % self.q) as Elem
    }

    /// Image of a group element.
    pub fn from_group_element(&self, group: &UniformGroup, g: &GroupElement) -> Result<Elem> {
        if self.q == 1 {
            return Ok(0);
        }
        let s = group.to_chart(g, Backend::Split)?;
        let coords: Vec<u64> = s
            .coords()
            .coords()
            .iter()
            .map(|c| residue(c, self.level))
            .collect::<Result<_>>()?;
        Ok(self.encode(&coords))
    }

    /// A lift of `x` to the group.
    pub fn lift(&self, group: &UniformGroup, x: Elem) -> Result<GroupElement> {
        let ctx = group.ctx();
        let coords = self.decode(x).iter().map(|&c| ctx.from_i64(c as i64)).collect();
        let s = GroupElement::new(Backend::Split, LieVector::new(ctx, coords));
        group.to_chart(&s, Backend::Bch)
    }

    fn act(&self, t: u64, b: &[u64]) -> Vec<u64> {
        let n = self.rank - 1;
        let e = &self.action[t as usize];
        (0..n)
            .map(|i| (0..n).fold(0u64, |acc, j| (acc + e[i * n + j] * b[j]) % self.q))
            .collect()
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.table {
            Some(t) => t[x as usize * self.order as usize + y as usize],
            None => self.mul_direct(x, y),
        }
    }

    fn mul_direct(&self, x: Elem, y: Elem) -> Elem {
        if self.q == 1 {
            return 0;
        }
        let (q, n) = (self.q, self.rank);
        let mut a = [0u64; MAX_RANK];
        let mut b = [0u64; MAX_RANK];
        let (mut xs, mut ys) = (x as u64, y as u64);
        for i in 0..n {
            a[i] = xs % q;
            b[i] = ys % q;
            xs /= q;
            ys /= q;
        }
        let e = &self.action[a[0] as usize];
        let k = n - 1;
        let mut out = 0u64;
        for i in (1..n).rev() {
            let row = &e[(i - 1) * k..i * k];
            let moved = row.iter().zip(&b[1..n]).fold(0u64, |acc, (r, c)| (acc + r * c) % q);
            out = out * q + (a[i] + moved) % q;
        }
        (out * q + (a[0] + b[0]) % q) as Elem
    }

    pub fn inv(&self, x: Elem) -> Elem {
        if self.q == 1 {
            return 0;
        }
        let a = self.decode(x);
        let neg_t = (self.q - a[0]) % self.q;
        let moved = self.act(neg_t, &a[1..]);
        let mut out = vec![neg_t];
        out.extend(moved.iter().map(|v| (self.q - v) % self.q));
        self.encode(&out)
    }

    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut acc = self.identity();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^{-1} y^{-1} x y`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// `y^{-1} x y`.
    pub fn conjugate(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// Elements whose coordinates are all divisible by `p^i`: the image of
    /// `G^{p^i}`.
    pub fn power_image(&self, i: u32) -> FixedBitSet {
        let step = self.p.pow(i.min(self.level));
        let mut set = FixedBitSet::with_capacity(self.order as usize);
        for x in self.elements() {
            if self.decode(x).iter().all(|c| c % step == 0) {
                set.insert(x as usize);
            }
        }
        set
    }

    /// Checks associativity, identity and inverses, exhaustively when
    /// `|Q|^3 <= limit` and otherwise on `limit` pseudo-random triples.
    pub fn check_axioms(&self, limit: u64) -> bool {
        let n = self.order;
        let triples: Box<dyn Iterator<Item = (Elem, Elem, Elem)>> = if n.saturating_pow(3) <= limit {
            Box::new(self.elements().flat_map(move |a| {
                (0..n as Elem).flat_map(move |b| (0..n as Elem).map(move |c| (a, b, c)))
            }))
        } else {
            // a fixed linear congruential walk keeps the check deterministic
            let mut s = 0x2545_f491_4f6c_dd1du64;
            let mut next = move || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 33) % n) as Elem
            };
            Box::new((0..limit).map(move |_| (next(), next(), next())))
        };
        for (a, b, c) in triples {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return false;
            }
            if self.mul(a, 0) != a || self.mul(0, a) != a || self.mul(a, self.inv(a)) != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&x| g.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }
}

fn residue(c: &crate::padic::PAdic, level: u32) -> Result<u64> {
    Ok(c.residue_mod_pow(level)? as u64)
}

fn matmul_mod(a: &[u64], b: &[u64], n: usize, q: u64) -> Vec<u64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).fold(0u64, |acc, k| (acc + a[i * n + k] * b[k * n + j]) % q);
        }
    }
    out
}

/// A subgroup of a finite quotient with the generators it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub members: FixedBitSet,
    pub gens: Vec<Elem>,
    pub order: u64,
}

impl Subgroup {
    pub fn trivial(q: &FiniteQuotient) -> Self {
        let mut members = FixedBitSet::with_capacity(q.order() as usize);
        members.insert(0);
        Self {
            members,
            gens: Vec::new(),
            order: 1,
        }
    }

    pub fn whole(q: &FiniteQuotient) -> Self {
        let mut members = FixedBitSet::with_capacity(q.order() as usize);
        members.insert_range(..);
        Self {
            members,
            gens: q.generators().to_vec(),
            order: q.order(),
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones().map(|x| x as Elem)
    }

    /// `log_p |Q : H|`.
    pub fn index_exponent(&self, q: &FiniteQuotient) -> u32 {
        let mut r = q.order() / self.order;
        let mut e = 0;
        while r > 1 {
            r /= q.p();
            e += 1;
        }
        e
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Normal in `q`: conjugates of the generators by the group's generators
    /// stay inside.
    pub fn is_normal(&self, q: &FiniteQuotient) -> bool {
        self.gens
            .iter()
            .all(|&h| q.generators().iter().all(|&g| self.contains(q.conjugate(h, g))))
    }
}

/// The subgroup generated by `gens`.
pub fn closure(q: &FiniteQuotient, gens: &[Elem]) -> Subgroup {
    extend(q, &Subgroup::trivial(q), gens)
}

/// The subgroup generated by `h` and `extra`.
pub fn extend(q: &FiniteQuotient, h: &Subgroup, extra: &[Elem]) -> Subgroup {
    let mut gens = h.gens.clone();
    for &x in extra {
        if !h.contains(x) && !gens.contains(&x) {
            gens.push(x);
        }
    }
    let mut members = h.members.clone();
    let mut list: Vec<Elem> = h.elements().collect();
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &g in &gens {
            let y = q.mul(x, g);
            if !members.put(y as usize) {
                list.push(y);
            }
        }
        i += 1;
    }
    Subgroup {
        order: list.len() as u64,
        members,
        gens,
    }
}

/// Smallest subgroup containing `gens` that is normalised by `normalizer`.
pub fn normal_closure(q: &FiniteQuotient, gens: &[Elem], normalizer: &[Elem]) -> Subgroup {
    normalize(q, closure(q, gens), normalizer)
}

/// Enlarges `h` until it is normalised by `normalizer`.
pub fn normalize(q: &FiniteQuotient, mut h: Subgroup, normalizer: &[Elem]) -> Subgroup {
    loop {
        let missing: Vec<Elem> = h
            .gens
            .iter()
            .flat_map(|&x| normalizer.iter().map(move |&g| (x, g)))
            .map(|(x, g)| q.conjugate(x, g))
            .filter(|c| !h.contains(*c))
            .collect();
        if missing.is_empty() {
            return h;
        }
        h = extend(q, &h, &missing);
    }
}

/// `H^p [H, H]`: generated by the `p`-th powers of all elements of `h` and the
/// commutators of its generators, closed under conjugation by `h`.
pub fn frattini_subgroup(q: &FiniteQuotient, h: &Subgroup) -> Subgroup {
    let mut gens: Vec<Elem> = Vec::new();
    let mut seen = FixedBitSet::with_capacity(q.order() as usize);
    for x in h.elements() {
        let y = q.pow(x, q.p());
        if !seen.put(y as usize) {
            gens.push(y);
        }
    }
    for (i, &a) in h.gens.iter().enumerate() {
        for &b in &h.gens[i + 1..] {
            let c = q.commutator(a, b);
            if !seen.put(c as usize) {
                gens.push(c);
            }
        }
    }
    // generate incrementally so the generator list stays short
    let mut k = Subgroup::trivial(q);
    for g in gens {
        if !k.contains(g) {
            k = extend(q, &k, &[g]);
        }
    }
    normalize(q, k, &h.gens)
}

/// A basis of `H / Phi` as elements of `H`.
pub fn frattini_basis(q: &FiniteQuotient, h: &Subgroup, phi: &Subgroup) -> Vec<Elem> {
    let mut basis = Vec::new();
    let mut span = phi.clone();
    for &g in h.gens.iter().chain(h.elements().collect::<Vec<_>>().iter()) {
        if span.order == h.order {
            break;
        }
        if !span.contains(g) {
            basis.push(g);
            span = extend(q, &span, &[g]);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyParams;
    use crate::padic::PAdicContext;

    fn quotient(p: u64, m: usize, d: i64, level: u32) -> FiniteQuotient {
        let ctx = PAdicContext::new(p, 24).unwrap();
        let g = UniformGroup::family(&FamilyParams::from_i64(ctx, m, d).unwrap()).unwrap();
        FiniteQuotient::new(&g, level, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn orders_and_trivial_level() {
        assert_eq!(quotient(3, 3, 1, 0).order(), 1);
        assert_eq!(quotient(3, 3, 1, 1).order(), 27);
        assert_eq!(quotient(3, 3, 1, 2).order(), 729);
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = PAdicContext::new(5, 24).unwrap();
        let g = UniformGroup::family(&FamilyParams::from_i64(ctx, 4, 1).unwrap()).unwrap();
        assert!(matches!(FiniteQuotient::new(&g, 3, DEFAULT_BUDGET), Err(Error::Budget { .. })));
    }

    #[test]
    fn low_levels_are_abelian() {
        assert!(quotient(3, 3, 1, 1).is_abelian());
        assert!(quotient(3, 3, 1, 2).is_abelian());
        assert!(!quotient(3, 3, 1, 3).is_abelian());
    }

    #[test]
    fn axioms_hold() {
        assert!(quotient(3, 3, 2, 1).check_axioms(1 << 20));
        assert!(quotient(2, 3, 1, 3).check_axioms(20_000));
    }

    #[test]
    fn encode_round_trip() {
        let q = quotient(3, 4, 1, 2);
        for x in [0, 5, 100, 6560] {
            assert_eq!(q.encode(&q.decode(x)), x);
        }
    }

    #[test]
    fn law_matches_group() {
        let ctx = PAdicContext::new(3, 24).unwrap();
        let g = UniformGroup::family(&FamilyParams::from_i64(ctx, 3, 2).unwrap()).unwrap();
        let q = FiniteQuotient::new(&g, 3, DEFAULT_BUDGET).unwrap();
        for (x, y) in [(5, 700), (123, 4000), (19682, 77)] {
            let gx = q.lift(&g, x).unwrap();
            let gy = q.lift(&g, y).unwrap();
            let prod = g.mul(&gx, &gy, Backend::Bch).unwrap();
            assert_eq!(q.from_group_element(&g, &prod).unwrap(), q.mul(x, y));
        }
    }

    #[test]
    fn closures() {
        let q = quotient(3, 3, 1, 2);
        let whole = closure(&q, q.generators());
        assert_eq!(whole.order, 729);
        let phi = frattini_subgroup(&q, &whole);
        assert_eq!(phi.order, 27);
        assert_eq!(phi.members, q.power_image(1));
        assert_eq!(frattini_basis(&q, &whole, &phi).len(), 3);
    }
}
