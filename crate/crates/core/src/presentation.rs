//! Coordinates of the second kind and the finite presentation
//! `< x_1, ..., x_m ; [x_i, x_j] x_1^{a_1(i,j)} ... x_m^{a_m(i,j)} >`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Backend, GroupElement, UniformGroup};
use crate::lie::LieVector;
use crate::padic::{PAdic, PAdicContext};

/// The ordered product `x_1^{l_1} ... x_m^{l_m}` of the basis generators.
pub fn ordered_product(group: &UniformGroup, lambda: &[PAdic]) -> Result<GroupElement> {
    let mut acc = group.identity();
    for (i, l) in lambda.iter().enumerate() {
        let factor = group.power(&group.generator(i), l)?;
        acc = group.mul(&acc, &factor, Backend::Bch)?;
    }
    Ok(acc)
}

/// The unique `l` with `x_1^{l_1} ... x_m^{l_m} = g`.  Starting from `l = 0`,
/// each step adds the coordinate difference between `g` and the current
/// product; the difference gains at least the structure floor in valuation
/// per step.
pub fn coords_second_kind(group: &UniformGroup, g: &GroupElement) -> Result<Vec<PAdic>> {
    let target = group.log(g)?;
    let prec = group.ctx().prec() as i32;
    let mut lambda = vec![group.ctx().zero(); group.rank()];
    for _ in 0..=prec {
        let current = group.log(&ordered_product(group, &lambda)?)?;
        let diff = target.sub(&current);
        if diff.is_negligible() {
            return Ok(lambda);
        }
        for (l, d) in lambda.iter_mut().zip(diff.coords()) {
            *l = l.add(d);
        }
    }
    Err(Error::NoConvergenceIter(
        "ordered-product coordinates did not settle".into(),
    ))
}

/// Exponents `a(i, j)` with `[x_i, x_j] x_1^{a_1} ... x_m^{a_m} = 1`.
pub fn commutator_exponents(group: &UniformGroup, i: usize, j: usize) -> Result<Vec<PAdic>> {
    let c = generator_commutator(group, i, j)?;
    coords_second_kind(group, &group.inv(&c)?)
}

fn generator_commutator(group: &UniformGroup, i: usize, j: usize) -> Result<GroupElement> {
    let m = group.rank();
    if i == j || i >= m || j >= m {
        return Err(Error::Invalid(format!(
            "commutator exponents need two distinct generators below {m}, got ({i}, {j})"
        )));
    }
    group.commutator(&group.generator(i), &group.generator(j), Backend::Bch)
}

/// One relator `[x_i, x_j] x^a`.
#[derive(Debug, Clone, PartialEq)]
pub struct Relator {
    pub i: usize,
    pub j: usize,
    /// `a(i, j)`: the word that cancels the commutator.
    pub exponents: Vec<PAdic>,
    /// Second-kind coordinates of `[x_i, x_j]` itself.
    pub commutator: Vec<PAdic>,
}

/// A presentation on the basis generators of a uniform group.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub ctx: PAdicContext,
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
}

/// Names `y, z_2, ..., z_m` for family groups, the algebra's names otherwise.
pub fn generator_names(group: &UniformGroup) -> Vec<String> {
    if group.family_params().is_some() {
        std::iter::once("y".to_string())
            .chain((2..=group.rank()).map(|i| format!("z_{i}")))
            .collect()
    } else {
        group.algebra().names().to_vec()
    }
}

/// All `C(m, 2)` relators over pairs `i < j`.
pub fn emit_presentation(group: &UniformGroup) -> Result<Presentation> {
    let m = group.rank();
    let mut relators = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let c = generator_commutator(group, i, j)?;
            relators.push(Relator {
                i,
                j,
                exponents: coords_second_kind(group, &group.inv(&c)?)?,
                commutator: coords_second_kind(group, &c)?,
            });
        }
    }
    Ok(Presentation {
        ctx: group.ctx(),
        generators: generator_names(group),
        relators,
    })
}

/// Digits `d0.d1...` of `x mod p^n`, trailing zeros dropped.
pub fn digit_string(x: &PAdic, n: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut digits = x.digits(n);
    while digits.len() > 1 && digits.last() == Some(&0) {
        digits.pop();
    }
    digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(".")
}

impl Presentation {
    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    /// Smallest valuation over all relator exponents.
    pub fn min_exponent_valuation(&self) -> i32 {
        self.relators
            .iter()
            .flat_map(|r| r.exponents.iter())
            .map(PAdic::valuation)
            .min()
            .unwrap_or(i32::MAX)
    }

    /// Every exponent lies in `pZ_p` (`4Z_2` when p = 2).
    pub fn exponents_in_pzp(&self) -> bool {
        let need = if self.ctx.p() == 2 { 2 } else { 1 };
        self.min_exponent_valuation() >= need
    }

    /// Evaluates every relator word in `group` and checks it is trivial.
    pub fn verify(&self, group: &UniformGroup) -> Result<bool> {
        for r in &self.relators {
            let c = generator_commutator(group, r.i, r.j)?;
            let w = ordered_product(group, &r.exponents)?;
            if !group.is_identity(&group.mul(&c, &w, Backend::Bch)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One line per pair: `[g_i, g_j] = g_1^{b_1} ... g_m^{b_m}`, listing the
    /// nonzero factors of the commutator's ordered-product expansion.
    pub fn render(&self) -> String {
        let n = self.ctx.prec();
        let mut out = String::new();
        let _ = writeln!(out, "generators: {}", self.generators.join(", "));
        let _ = writeln!(out, "mod {}^{}", self.ctx.p(), n);
        for r in &self.relators {
            let factors: Vec<String> = r
                .commutator
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero() && e.valuation() < n as i32)
                .map(|(k, e)| format!("{}^{{{}}}", self.generators[k], digit_string(e, n)))
                .collect();
            let rhs = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join(" ")
            };
            let _ = writeln!(
                out,
                "[{}, {}] = {}",
                self.generators[r.i], self.generators[r.j], rhs
            );
        }
        out
    }

    pub fn to_file(&self) -> PresentationFile {
        let n = self.ctx.prec();
        let digits = |v: &[PAdic]| v.iter().map(|x| digit_string(x, n)).collect();
        PresentationFile {
            p: self.ctx.p(),
            precision: n,
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|r| RelatorRecord {
                    i: r.i,
                    j: r.j,
                    exponents: digits(&r.exponents),
                    commutator: digits(&r.commutator),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &PresentationFile) -> Result<Self> {
        let ctx = PAdicContext::new(file.p, file.precision)?;
        let parse = |v: &[String]| -> Result<Vec<PAdic>> {
            v.iter().map(|s| Ok(ctx.parse(s)?)).collect()
        };
        let relators = file
            .relators
            .iter()
            .map(|r| {
                Ok(Relator {
                    i: r.i,
                    j: r.j,
                    exponents: parse(&r.exponents)?,
                    commutator: parse(&r.commutator)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            ctx,
            generators: file.generators.clone(),
            relators,
        })
    }
}

/// Machine-readable companion of the rendered presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub p: u64,
    pub precision: u32,
    pub generators: Vec<String>,
    pub relators: Vec<RelatorRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelatorRecord {
    pub i: usize,
    pub j: usize,
    /// Relator exponents `a(i, j)` as digit strings.
    pub exponents: Vec<String>,
    /// Ordered-product exponents of `[x_i, x_j]`.
    pub commutator: Vec<String>,
}

/// Comparison of one commutator equation `[a, b] = w` with the computed
/// relator exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormPair {
    pub left: String,
    pub right: String,
    /// Expected exponent vector of `[a, b]`.
    pub expected: Vec<PAdic>,
    /// Computed relator exponents `a(a, b)`.
    pub relator: Vec<PAdic>,
    /// `v_p(a(a, b) + expected)`: the relator must cancel the commutator.
    pub agreement: i32,
}

impl ClosedFormPair {
    pub fn agrees_mod(&self, k: i32) -> bool {
        self.agreement >= k
    }
}

/// Compares the relators of `G_4(d)` with the closed-form commutator
/// relations `[z_2, z_3] = [z_3, z_4] = [z_4, z_2] = 1`,
/// `[z_2, y] = z_4^{d p^2}`, `[z_3, y] = z_3^{p^2}`, `[z_4, y] = z_2^{p^2}`.
pub fn compare_with_remark(group: &UniformGroup) -> Result<Vec<ClosedFormPair>> {
    let params = group
        .family_params()
        .filter(|f| f.k() == 4)
        .ok_or_else(|| Error::Invalid("the closed-form relations describe G_4(d)".into()))?;
    let ctx = group.ctx();
    let p2 = ctx.p_power(2);
    let names = generator_names(group);
    let vector = |slot: Option<(usize, PAdic)>| {
        let mut v = vec![ctx.zero(); 4];
        if let Some((k, x)) = slot {
            v[k] = x;
        }
        v
    };
    let equations = [
        (1, 2, vector(None)),
        (2, 3, vector(None)),
        (3, 1, vector(None)),
        (1, 0, vector(Some((3, params.d().mul(&p2))))),
        (2, 0, vector(Some((2, p2)))),
        (3, 0, vector(Some((1, p2)))),
    ];
    equations
        .into_iter()
        .map(|(a, b, expected)| {
            let relator = commutator_exponents(group, a, b)?;
            let sum: Vec<PAdic> = relator.iter().zip(&expected).map(|(x, y)| x.add(y)).collect();
            let agreement = LieVector::new(ctx, sum).valuation().min(ctx.prec() as i32);
            Ok(ClosedFormPair {
                left: names[a].clone(),
                right: names[b].clone(),
                expected,
                relator,
                agreement,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilyParams;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group(p: u64, m: usize, d: i64) -> UniformGroup {
        let ctx = PAdicContext::new(p, 24).unwrap();
        UniformGroup::family(&FamilyParams::from_i64(ctx, m, d).unwrap()).unwrap()
    }

    #[test]
    fn second_kind_basics() {
        let g = group(5, 4, 1);
        let zero = coords_second_kind(&g, &g.identity()).unwrap();
        assert!(zero.iter().all(PAdic::is_zero));
        let x = g.power_i64(&g.generator(1), 5).unwrap();
        let l = coords_second_kind(&g, &x).unwrap();
        assert_eq!(l[1], g.ctx().from_i64(5));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = g.random_element(&mut rng);
        let l = coords_second_kind(&g, &r).unwrap();
        assert!(g.agrees_mod(&ordered_product(&g, &l).unwrap(), &r, 24).unwrap());
    }

    #[test]
    fn presentation_counts_and_round_trip() {
        let g = group(3, 4, 2);
        let pres = emit_presentation(&g).unwrap();
        assert_eq!(pres.relator_count(), 6);
        assert_eq!(pres.generators, vec!["y", "z_2", "z_3", "z_4"]);
        assert!(pres.min_exponent_valuation() >= 2);
        assert!(pres.verify(&g).unwrap());
        // the file keeps every digit modulo p^N
        let back = Presentation::from_file(&pres.to_file()).unwrap();
        for (a, b) in back.relators.iter().zip(&pres.relators) {
            for (x, y) in a.exponents.iter().zip(&b.exponents) {
                assert!(x.agrees_mod(y, 24));
            }
        }
    }

    #[test]
    fn diagonal_pair_is_rejected() {
        assert!(commutator_exponents(&group(5, 3, 1), 1, 1).is_err());
    }

    #[test]
    fn closed_form_relations_hold_to_leading_order() {
        for d in [1, 2, 7] {
            let g = group(5, 4, d);
            for pair in compare_with_remark(&g).unwrap() {
                assert!(pair.agrees_mod(3), "{pair:?}");
            }
        }
    }

    #[test]
    fn render_format() {
        let g = group(5, 3, 1);
        let text = emit_presentation(&g).unwrap().render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "generators: y, z_2, z_3");
        assert_eq!(lines[1], "mod 5^24");
        assert_eq!(lines.len(), 5);
        assert!(lines[2].starts_with("[y, z_2] = "));
    }
}
