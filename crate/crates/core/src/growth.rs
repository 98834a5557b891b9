//! Counting subgroups of small `p`-power index in finite quotients.
//!
//! Two counters are provided.  The layered counter walks down from the whole
//! group through maximal subgroups: a maximal subgroup of a finite `p`-group
//! `H` contains the Frattini subgroup `Phi(H)` and is the preimage of a
//! hyperplane of `H / Phi(H)`, so the subgroups of index `p^{k+1}` are the
//! maximal subgroups of those of index `p^k`.  The naive counter enumerates
//! every subgroup by adding one element at a time and serves as the oracle.

use std::collections::{HashMap, HashSet, VecDeque};
use std::io::Write;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::UniformGroup;
use crate::quotient::{
    closure, extend, frattini_basis, frattini_subgroup, Elem, FiniteQuotient, Subgroup,
};

/// Largest quotient the naive counter accepts.
pub const NAIVE_LIMIT: u64 = 4096;

/// Number of subgroups (and normal subgroups) of index `p^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupCount {
    pub index_exponent: u32,
    pub total: u64,
    pub normal: u64,
}

fn tally(q: &FiniteQuotient, subgroups: &[&Subgroup], i_max: u32) -> Vec<SubgroupCount> {
    let mut out: Vec<SubgroupCount> = (0..=i_max)
        .map(|i| SubgroupCount {
            index_exponent: i,
            total: 0,
            normal: 0,
        })
        .collect();
    for h in subgroups {
        let i = h.index_exponent(q);
        if i <= i_max {
            out[i as usize].total += 1;
            if h.is_normal(q) {
                out[i as usize].normal += 1;
            }
        }
    }
    out
}

/// Enumerates every subgroup of `q` and counts those of index `<= p^{i_max}`.
pub fn count_subgroups_naive(q: &FiniteQuotient, i_max: u32) -> Result<Vec<SubgroupCount>> {
    if q.order() > NAIVE_LIMIT {
        return Err(Error::Budget {
            p: q.p(),
            exponent: q.level() * q.rank() as u32,
            budget: NAIVE_LIMIT,
        });
    }
    let start = Subgroup::trivial(q);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    seen.insert(start.members.clone());
    let mut all = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(h) = queue.pop_front() {
        // <H, g> only depends on the coset Hg
        let mut covered = h.members.clone();
        for g in q.elements() {
            if covered.contains(g as usize) {
                continue;
            }
            for x in h.elements() {
                covered.insert(q.mul(x, g) as usize);
            }
            let k = extend(q, &h, &[g]);
            if seen.insert(k.members.clone()) {
                all.push(k.clone());
                queue.push_back(k);
            }
        }
    }
    let refs: Vec<&Subgroup> = all.iter().collect();
    Ok(tally(q, &refs, i_max))
}

/// Maximal subgroups of `h`, one per hyperplane of `h / Phi(h)`.
pub fn maximal_subgroups(q: &FiniteQuotient, h: &Subgroup) -> Vec<Subgroup> {
    let phi = frattini_subgroup(q, h);
    let basis = frattini_basis(q, h, &phi);
    let r = basis.len();
    let p = q.p();
    let phi_elems: Vec<Elem> = phi.elements().collect();
    let mut out = Vec::new();
    for functional in projective_points(p, r) {
        let kernel = kernel_basis(p, &functional);
        let kernel_elems: Vec<Elem> = kernel.iter().map(|v| combine(q, &basis, v)).collect();
        let mut members = FixedBitSet::with_capacity(q.order() as usize);
        for coeffs in all_vectors(p, kernel.len()) {
            let mut rep = q.identity();
            for (e, &c) in kernel_elems.iter().zip(&coeffs) {
                rep = q.mul(rep, q.pow(*e, c));
            }
            for &f in &phi_elems {
                members.insert(q.mul(rep, f) as usize);
            }
        }
        let mut gens = phi.gens.clone();
        gens.extend(kernel_elems);
        out.push(Subgroup {
            order: phi.order * p.pow(r as u32 - 1),
            members,
            gens,
        });
    }
    out
}

fn combine(q: &FiniteQuotient, basis: &[Elem], v: &[u64]) -> Elem {
    basis
        .iter()
        .zip(v)
        .fold(q.identity(), |acc, (b, &c)| q.mul(acc, q.pow(*b, c)))
}

/// All vectors of `F_p^r`.
fn all_vectors(p: u64, r: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Nonzero vectors of `F_p^r` whose first nonzero entry is 1.
fn projective_points(p: u64, r: usize) -> Vec<Vec<u64>> {
    all_vectors(p, r)
        .into_iter()
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect()
}

/// Basis of `{ v : f . v = 0 }` for a normalised functional `f`.
fn kernel_basis(p: u64, f: &[u64]) -> Vec<Vec<u64>> {
    let r = f.len();
    let pivot = f.iter().position(|&c| c != 0).expect("nonzero functional");
    (0..r)
        .filter(|&j| j != pivot)
        .map(|j| {
            let mut v = vec![0; r];
            v[j] = 1;
            // f[pivot] = 1, so v[pivot] = -f[j]
            v[pivot] = (p - f[j] % p) % p;
            v
        })
        .collect()
}

/// Counts subgroups of index `<= p^{i_max}` by descending through maximal
/// subgroups layer by layer.
pub fn count_subgroups_layered(q: &FiniteQuotient, i_max: u32) -> Vec<SubgroupCount> {
    let whole = closure(q, q.generators());
    let mut layer = vec![whole];
    let mut out = Vec::new();
    for i in 0..=i_max {
        let refs: Vec<&Subgroup> = layer.iter().collect();
        let normal = refs.iter().filter(|h| h.is_normal(q)).count() as u64;
        out.push(SubgroupCount {
            index_exponent: i,
            total: layer.len() as u64,
            normal,
        });
        if i == i_max {
            break;
        }
        let mut next: HashMap<FixedBitSet, Subgroup> = HashMap::new();
        for h in &layer {
            if h.order == 1 {
                continue;
            }
            for m in maximal_subgroups(q, h) {
                next.entry(m.members.clone()).or_insert(m);
            }
        }
        let mut v: Vec<Subgroup> = next.into_values().collect();
        // deterministic order
        v.sort_by(|a, b| a.members.ones().cmp(b.members.ones()));
        layer = v;
    }
    out
}

/// One line of a growth table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub p: u64,
    pub m: usize,
    pub d_digest: String,
    pub i: u32,
    pub a: u64,
    pub a_normal: u64,
    pub level: u32,
    pub stabilized: bool,
}

/// Coefficients `a_{p^i}` and `a^normal_{p^i}` for `i <= i_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTable {
    pub p: u64,
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        for row in &self.rows {
            wr.serialize(row)?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let rows = rd.deserialize().collect::<std::result::Result<Vec<GrowthRow>, _>>()?;
        let p = rows.first().map(|r| r.p).unwrap_or(0);
        Ok(Self { p, rows })
    }
}

/// Counts of the level-`j` quotient for each `j` in `levels`.
pub fn counts_by_level(
    group: &UniformGroup,
    levels: &[u32],
    i_max: u32,
    budget: u64,
) -> Result<Vec<(u32, Vec<SubgroupCount>)>> {
    levels
        .iter()
        .map(|&j| {
            let q = FiniteQuotient::new(group, j, budget)?;
            Ok((j, count_subgroups_layered(&q, i_max)))
        })
        .collect()
}

/// A short label for the family parameter (its first p-adic digits).
pub fn digest(group: &UniformGroup) -> String {
    match group.family_params() {
        Some(f) => {
            let digits = f.d().digits(8);
            digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(".")
        }
        None => "-".into(),
    }
}

/// For each `i <= i_max`, counts at levels `j = i, i + 1, ...` until two
/// consecutive levels agree.  Counts that never settle within the budget are
/// reported with `stabilized = false` at the last level reached.
pub fn zeta_coefficients(group: &UniformGroup, i_max: u32, budget: u64) -> Result<GrowthTable> {
    let p = group.ctx().p();
    let mut cache: HashMap<u32, Option<Vec<SubgroupCount>>> = HashMap::new();
    let mut counts_at = |j: u32| -> Result<Option<Vec<SubgroupCount>>> {
        if let Some(c) = cache.get(&j) {
            return Ok(c.clone());
        }
        let c = match FiniteQuotient::new(group, j, budget) {
            Ok(q) => Some(count_subgroups_layered(&q, i_max)),
            Err(Error::Budget { .. }) => None,
            Err(e) => return Err(e),
        };
        cache.insert(j, c.clone());
        Ok(c)
    };
    let mut rows = Vec::new();
    for i in 0..=i_max {
        let mut j = i;
        let Some(mut here) = counts_at(j)? else {
            return Err(Error::Budget {
                p,
                exponent: j * group.rank() as u32,
                budget,
            });
        };
        let stabilized = loop {
            match counts_at(j + 1)? {
                Some(next) => {
                    if next[i as usize] == here[i as usize] {
                        break true;
                    }
                    here = next;
                    j += 1;
                }
                None => break false,
            }
        };
        let c = here[i as usize];
        rows.push(GrowthRow {
            p,
            m: group.rank(),
            d_digest: digest(group),
            i,
            a: c.total,
            a_normal: c.normal,
            level: j,
            stabilized,
        });
    }
    Ok(GrowthTable { p, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyParams;
    use crate::padic::PAdicContext;
    use crate::quotient::DEFAULT_BUDGET;

    fn group(p: u64, m: usize, d: i64) -> UniformGroup {
        let ctx = PAdicContext::new(p, 24).unwrap();
        UniformGroup::family(&FamilyParams::from_i64(ctx, m, d).unwrap()).unwrap()
    }

    #[test]
    fn hyperplane_helpers() {
        assert_eq!(projective_points(3, 3).len(), 13);
        assert_eq!(projective_points(2, 4).len(), 15);
        let f = vec![0, 1, 2];
        for v in kernel_basis(3, &f) {
            let dot: u64 = f.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert_eq!(dot % 3, 0);
        }
    }

    #[test]
    fn elementary_abelian_counts() {
        let q = FiniteQuotient::new(&group(3, 3, 1), 1, DEFAULT_BUDGET).unwrap();
        let layered = count_subgroups_layered(&q, 3);
        let totals: Vec<u64> = layered.iter().map(|c| c.total).collect();
        assert_eq!(totals, vec![1, 13, 13, 1]);
        assert_eq!(count_subgroups_naive(&q, 3).unwrap(), layered);
    }

    #[test]
    fn naive_matches_layered_on_nonabelian_quotient() {
        let q = FiniteQuotient::new(&group(2, 3, 1), 3, DEFAULT_BUDGET).unwrap();
        assert!(!q.is_abelian());
        assert_eq!(count_subgroups_naive(&q, 3).unwrap(), count_subgroups_layered(&q, 3));
    }

    #[test]
    fn stabilized_index_p_count() {
        let t = zeta_coefficients(&group(3, 3, 2), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(t.rows[0].a, 1);
        assert_eq!(t.rows[1].a, 13);
        assert_eq!(t.rows[1].a_normal, 13);
        assert!(t.rows.iter().all(|r| r.stabilized));
    }

    #[test]
    fn csv_round_trip() {
        let t = zeta_coefficients(&group(2, 3, 1), 1, DEFAULT_BUDGET).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("p,m,d_digest,i,a,a_normal,level,stabilized"));
        assert_eq!(GrowthTable::read_csv(&buf[..]).unwrap(), t);
    }
}
