//! Uniform groups on the underlying set of a powerful algebra.
//!
//! Elements are stored in one of two charts.  In the `Bch` chart an element is
//! the algebra vector `c` itself and multiplication is the truncated
//! Campbell–Hausdorff law.  In the `Split` chart, available when the span of
//! all basis vectors but the first is an abelian ideal, the element
//! `exp(a) exp(t y)` (`y` the first basis vector) is stored as `(t, a)` and
//! multiplied with matrix exponentials only:
//! `(a, t)(b, s) = (a + E(t) b, t + s)`, `E(t) = exp(t S)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bch::{
    cached_metabelian, cached_series, truncation_degree, BchSeries, MetabelianEvaluator,
    TruncationCertificate, MAX_GENERAL_DEGREE,
};
use crate::error::{Error, Result};
use crate::family::{build_family, FamilyParams};
use crate::lie::{LieAlgebra, LieVector};
use crate::padic::{PAdic, PAdicContext, PAdicMatrix, PadicError};

/// Which multiplication (and which coordinate chart) to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Bch,
    Split,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Bch => "bch",
            Backend::Split => "split",
        })
    }
}

/// A group element together with the chart its coordinates refer to.  In the
/// split chart coordinate 0 is `t` and the others are `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    chart: Backend,
    coords: LieVector,
}

impl GroupElement {
    pub fn new(chart: Backend, coords: LieVector) -> Self {
        Self { chart, coords }
    }

    pub fn chart(&self) -> Backend {
        self.chart
    }

    pub fn coords(&self) -> &LieVector {
        &self.coords
    }

    pub fn into_coords(self) -> LieVector {
        self.coords
    }
}

#[derive(Debug, Clone)]
enum Law {
    Metabelian(MetabelianEvaluator),
    General(Arc<BchSeries>),
}

#[derive(Debug, Clone)]
struct SplitData {
    /// Row `i` holds `[f_i, y]` in the ideal basis.
    adjoint: PAdicMatrix,
    /// Generator of `t -> E(t)` acting on column vectors.
    generator: PAdicMatrix,
}

/// A uniform group `exp(L)` for a powerful algebra `L` given in a basis with
/// integral structure constants.
#[derive(Debug, Clone)]
pub struct UniformGroup {
    algebra: LieAlgebra,
    scale_exponent: u32,
    family: Option<FamilyParams>,
    floor: u32,
    certificate: TruncationCertificate,
    law: Law,
    split: Option<SplitData>,
    split_unavailable: Option<String>,
    lifted: Arc<Mutex<HashMap<u32, Arc<UniformGroup>>>>,
}

fn structure_floor(alg: &LieAlgebra) -> Result<u32> {
    if !alg.is_powerful() {
        return Err(Error::NotPowerful);
    }
    let floor = alg.bracket_valuation_floor();
    // an abelian algebra behaves like any floor; pick the smallest admissible
    let min = if alg.ctx().p() == 2 { 2 } else { 1 };
    Ok(floor.clamp(min, 64) as u32)
}

impl UniformGroup {
    /// `G_m(d)`: the group on `p^2 L_m(d)`.
    pub fn family(params: &FamilyParams) -> Result<Self> {
        let alg = build_family(params).scale(2);
        let mut g = Self::from_algebra(alg, 2)?;
        g.family = Some(*params);
        Ok(g)
    }

    /// The group of a powerful algebra.  `scale_exponent` records that the
    /// basis is `p^s` times an ambient basis; it only affects valuations
    /// reported in ambient coordinates.
    pub fn from_algebra(algebra: LieAlgebra, scale_exponent: u32) -> Result<Self> {
        Self::build(algebra, scale_exponent, true)
    }

    fn build(algebra: LieAlgebra, scale_exponent: u32, with_split: bool) -> Result<Self> {
        if !algebra.jacobi_check().passed() {
            return Err(Error::Invalid("structure constants violate the Jacobi identity".into()));
        }
        let floor = structure_floor(&algebra)?;
        let ctx = algebra.ctx();
        let p = ctx.p();
        let mut certificate = truncation_degree(p, ctx.prec() + floor, floor)?;
        let degree = certificate.degree;
        let law = if algebra.is_metabelian() {
            let table = cached_metabelian(degree + 2);
            if !certificate.spot_check(|m| Some(table.denominator_valuation(m, p))) {
                return Err(Error::Certificate {
                    degree,
                    valuation: -1,
                });
            }
            Law::Metabelian(table.truncate(degree).evaluator(ctx))
        } else {
            if degree > MAX_GENERAL_DEGREE {
                return Err(Error::Precision(format!(
                    "non-metabelian law needs degree {degree}, above the supported {MAX_GENERAL_DEGREE}; lower the precision"
                )));
            }
            let series = cached_series(degree);
            certificate.spot_check(|m| (m <= degree).then(|| series.denominator_valuation(m, p)));
            Law::General(series)
        };
        let mut group = Self {
            algebra,
            scale_exponent,
            family: None,
            floor,
            certificate,
            law,
            split: None,
            split_unavailable: None,
            lifted: Default::default(),
        };
        if with_split {
            match group.split_data() {
                Ok(data) => group.split = Some(data),
                Err(Error::NoSplit(reason)) => group.split_unavailable = Some(reason),
                Err(e) => return Err(e),
            }
        }
        Ok(group)
    }

    /// Builds the split backend and pins the orientation of `E(t)` against
    /// the Campbell–Hausdorff law on a probe pair.
    fn split_data(&self) -> Result<SplitData> {
        let alg = &self.algebra;
        let m = alg.rank();
        if m < 2 {
            return Err(Error::NoSplit("rank below 2".into()));
        }
        let ideal: Vec<LieVector> = (1..m).map(|i| alg.basis_vector(i)).collect();
        for i in 1..m {
            for j in i + 1..m {
                if !alg.basis_bracket(i, j).is_zero() {
                    return Err(Error::NoSplit(format!(
                        "basis vectors {i} and {j} do not commute"
                    )));
                }
            }
        }
        let adjoint = match alg.adjoint_matrix(&alg.basis_vector(0), &ideal) {
            Ok(a) => a,
            Err(Error::NotInvariant(i)) => {
                return Err(Error::NoSplit(format!("ideal is not invariant at vector {}", i + 1)))
            }
            Err(e) => return Err(e),
        };
        let need = if self.ctx().p() == 2 { 2 } else { 1 };
        if adjoint.min_valuation() < need {
            return Err(Error::NoSplit("adjoint action too large for the matrix exponential".into()));
        }
        let expected = adjoint.transpose().neg();
        let ctx = self.ctx();
        let probe_u = LieVector::new(ctx, (0..m).map(|i| ctx.from_i64(1 + i as i64)).collect());
        let probe_v = LieVector::new(ctx, (0..m).map(|i| ctx.from_i64(2 * i as i64 + 3)).collect());
        let reference = self.bch_product(&probe_u, &probe_v)?;
        for generator in [expected.clone(), expected.neg()] {
            let candidate = Self {
                split: Some(SplitData {
                    adjoint: adjoint.clone(),
                    generator: generator.clone(),
                }),
                ..self.clone()
            };
            let gu = candidate.bch_to_split(&probe_u)?;
            let gv = candidate.bch_to_split(&probe_v)?;
            let prod = candidate.split_product(&gu, &gv)?;
            let back = candidate.split_to_bch(&prod)?;
            if back.agrees_mod(&reference, ctx.prec() as i32) {
                return Ok(SplitData { adjoint, generator });
            }
        }
        Err(Error::BackendDisagreement(
            "split law matches neither orientation of the adjoint action".into(),
        ))
    }

    pub fn ctx(&self) -> PAdicContext {
        self.algebra.ctx()
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn scale_exponent(&self) -> u32 {
        self.scale_exponent
    }

    pub fn family_params(&self) -> Option<&FamilyParams> {
        self.family.as_ref()
    }

    /// Smallest valuation of a structure constant, used as the series floor.
    pub fn structure_floor(&self) -> u32 {
        self.floor
    }

    pub fn certificate(&self) -> &TruncationCertificate {
        &self.certificate
    }

    pub fn truncation_degree(&self) -> usize {
        self.certificate.degree
    }

    pub fn has_split(&self) -> bool {
        self.split.is_some()
    }

    /// Matrix of `v -> [v, y]` on the ideal (rows are images), when split.
    pub fn split_adjoint(&self) -> Option<&PAdicMatrix> {
        self.split.as_ref().map(|s| &s.adjoint)
    }

    fn require_split(&self) -> Result<&SplitData> {
        self.split.as_ref().ok_or_else(|| {
            Error::NoSplit(
                self.split_unavailable
                    .clone()
                    .unwrap_or_else(|| "split backend not built".into()),
            )
        })
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.coords.ctx() != self.ctx() {
            return Err(PadicError::ContextMismatch.into());
        }
        if g.coords.len() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: g.coords.len(),
            });
        }
        Ok(())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(Backend::Bch, LieVector::zeros(self.ctx(), self.rank()))
    }

    /// The element with bch-chart coordinates `coords`, which must be integral.
    pub fn element(&self, coords: LieVector) -> Result<GroupElement> {
        let g = GroupElement::new(Backend::Bch, coords);
        self.check(&g)?;
        if !g.coords.is_integral() {
            return Err(Error::Invalid("group elements have integral coordinates".into()));
        }
        Ok(g)
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(LieVector::from_i64(self.ctx(), coords))
    }

    /// The `i`-th basis vector as a group element.
    pub fn generator(&self, i: usize) -> GroupElement {
        GroupElement::new(Backend::Bch, self.algebra.basis_vector(i))
    }

    /// Uniformly random coordinates modulo `p^N`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        let ctx = self.ctx();
        let coords = (0..self.rank())
            .map(|_| ctx.from_residue(rng.gen_range(0..ctx.modulus())))
            .collect();
        GroupElement::new(Backend::Bch, LieVector::new(ctx, coords))
    }

    /// The truncated Campbell–Hausdorff product of two algebra vectors.
    pub fn bch_product(&self, u: &LieVector, v: &LieVector) -> Result<LieVector> {
        if !u.is_integral() || !v.is_integral() {
            return Err(Error::Invalid("Campbell-Hausdorff inputs must be integral".into()));
        }
        match &self.law {
            Law::Metabelian(e) => e.eval(&self.algebra, u, v),
            Law::General(s) => s.eval(&self.algebra, u, v),
        }
    }

    fn y_times(&self, t: &PAdic) -> LieVector {
        let mut v = LieVector::zeros(self.ctx(), self.rank());
        v.set(0, *t);
        v
    }

    fn bch_to_split(&self, c: &LieVector) -> Result<LieVector> {
        let t = c.get(0);
        let mut a = self.bch_product(c, &self.y_times(&t.neg()))?;
        if !a.get(0).is_zero() && a.get(0).valuation() < self.ctx().prec() as i32 {
            return Err(Error::NoConvergenceIter(
                "chart conversion left a component along y".into(),
            ));
        }
        a.set(0, t);
        Ok(a)
    }

    fn split_to_bch(&self, ta: &LieVector) -> Result<LieVector> {
        let t = ta.get(0);
        let mut a = ta.clone();
        a.set(0, self.ctx().zero());
        self.bch_product(&a, &self.y_times(&t))
    }

    /// `E(t) = exp(t S)` on the ideal.
    pub fn split_action(&self, t: &PAdic) -> Result<PAdicMatrix> {
        let s = self.require_split()?;
        if t.is_zero() {
            return Ok(PAdicMatrix::identity(self.ctx(), self.rank() - 1));
        }
        Ok(s.generator.scale(t).exp()?)
    }

    fn split_product(&self, g: &LieVector, h: &LieVector) -> Result<LieVector> {
        let (t, s) = (g.get(0), h.get(0));
        let e = self.split_action(&t)?;
        let moved = e.apply(&h.coords()[1..]);
        let mut out = Vec::with_capacity(self.rank());
        out.push(t.add(&s));
        for (a, b) in g.coords()[1..].iter().zip(&moved) {
            out.push(a.add(b));
        }
        Ok(LieVector::new(self.ctx(), out))
    }

    /// The same element in the requested chart.
    pub fn to_chart(&self, g: &GroupElement, chart: Backend) -> Result<GroupElement> {
        self.check(g)?;
        if g.chart == chart {
            return Ok(g.clone());
        }
        self.require_split()?;
        let coords = match chart {
            Backend::Split => self.bch_to_split(&g.coords)?,
            Backend::Bch => self.split_to_bch(&g.coords)?,
        };
        Ok(GroupElement::new(chart, coords))
    }

    /// Bch-chart coordinates of `g`.
    pub fn log(&self, g: &GroupElement) -> Result<LieVector> {
        Ok(self.to_chart(g, Backend::Bch)?.coords)
    }

    /// Product in the given backend; the result is in that backend's chart.
    pub fn mul(&self, g: &GroupElement, h: &GroupElement, backend: Backend) -> Result<GroupElement> {
        let g = self.to_chart(g, backend)?;
        let h = self.to_chart(h, backend)?;
        let coords = match backend {
            Backend::Bch => self.bch_product(&g.coords, &h.coords)?,
            Backend::Split => self.split_product(&g.coords, &h.coords)?,
        };
        Ok(GroupElement::new(backend, coords))
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        match g.chart {
            Backend::Bch => Ok(GroupElement::new(Backend::Bch, g.coords.neg())),
            Backend::Split => {
                let t = g.coords.get(0);
                let e = self.split_action(&t.neg())?;
                let moved = e.apply(&g.coords.coords()[1..]);
                let mut out = vec![t.neg()];
                out.extend(moved.iter().map(PAdic::neg));
                Ok(GroupElement::new(Backend::Split, LieVector::new(self.ctx(), out)))
            }
        }
    }

    /// `g^{-1} h^{-1} g h`.
    pub fn commutator(&self, g: &GroupElement, h: &GroupElement, backend: Backend) -> Result<GroupElement> {
        let left = self.mul(&self.inv(g)?, &self.inv(h)?, backend)?;
        let right = self.mul(g, h, backend)?;
        self.mul(&left, &right, backend)
    }

    /// `g^z` for `z` in `Z_p`: the scalar multiple `z c` of the bch coordinates.
    pub fn power(&self, g: &GroupElement, z: &PAdic) -> Result<GroupElement> {
        if !z.is_integral() {
            return Err(Error::Invalid("exponent must lie in Z_p".into()));
        }
        let c = self.log(g)?;
        Ok(GroupElement::new(Backend::Bch, c.scale(z)))
    }

    pub fn power_i64(&self, g: &GroupElement, z: i64) -> Result<GroupElement> {
        self.power(g, &self.ctx().from_i64(z))
    }

    /// The unique `p^n`-th root of an element of `G^{p^n}`.
    pub fn root(&self, g: &GroupElement, n: u32) -> Result<GroupElement> {
        let c = self.log(g)?;
        let coords = c
            .coords()
            .iter()
            .map(|x| x.divide_by_p_power(n, true).map_err(|_| Error::NotAPower(n)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement::new(Backend::Bch, LieVector::new(self.ctx(), coords)))
    }

    /// True when `g` and `h` agree modulo `p^m` in the bch chart.
    pub fn agrees_mod(&self, g: &GroupElement, h: &GroupElement, m: i32) -> Result<bool> {
        Ok(self.log(g)?.agrees_mod(&self.log(h)?, m))
    }

    pub fn is_identity(&self, g: &GroupElement) -> Result<bool> {
        Ok(self.log(g)?.is_negligible())
    }

    /// Valuation of an algebra vector measured in the ambient basis, i.e.
    /// before the `p^s` rescaling of the basis.
    pub fn ambient_valuation(&self, v: &LieVector) -> i32 {
        let val = v.valuation();
        if v.is_zero() {
            val
        } else {
            val + self.scale_exponent as i32
        }
    }

    /// The same group with structure constants carried to precision `prec`.
    pub fn with_precision(&self, prec: u32) -> Result<Arc<UniformGroup>> {
        if let Some(g) = self.lifted.lock().unwrap().get(&prec) {
            return Ok(g.clone());
        }
        let ctx = PAdicContext::new(self.ctx().p(), prec)?;
        let mut g = Self::build(self.algebra.change_precision(ctx)?, self.scale_exponent, false)?;
        g.family = self.family;
        let g = Arc::new(g);
        self.lifted.lock().unwrap().insert(prec, g.clone());
        Ok(g)
    }

    fn lift(&self, g: &GroupElement, target: &UniformGroup) -> Result<GroupElement> {
        let c = self.log(g)?;
        Ok(GroupElement::new(Backend::Bch, c.change_precision(target.ctx())?))
    }

    fn intrinsic_precondition(&self, n: u32) -> Result<()> {
        let prec = self.ctx().prec();
        if n == 0 || n + 4 > prec {
            return Err(Error::Precision(format!(
                "limit order n = {n} must satisfy 1 <= n <= N - 4 = {}",
                prec as i64 - 4
            )));
        }
        Ok(())
    }

    fn working_group(&self, extra: u32) -> Result<Arc<UniformGroup>> {
        let want = self.ctx().prec() + extra;
        self.with_precision(want).map_err(|e| match e {
            Error::Padic(PadicError::PrecisionTooLarge { .. }) => Error::Precision(format!(
                "limit approximant needs {want} digits of working precision"
            )),
            e => e,
        })
    }

    /// `(g^{p^n} h^{p^n})^{p^{-n}}`, an approximation of `g + h`.  The
    /// computation runs with `n` extra digits so that the root does not eat
    /// into the reported precision.
    pub fn intrinsic_sum(&self, g: &GroupElement, h: &GroupElement, n: u32) -> Result<LieVector> {
        self.intrinsic_precondition(n)?;
        let w = self.working_group(n)?;
        let pn = w.ctx().p_power(n as i32);
        let a = w.power(&self.lift(g, &w)?, &pn)?;
        let b = w.power(&self.lift(h, &w)?, &pn)?;
        let r = w.root(&w.mul(&a, &b, Backend::Bch)?, n)?;
        r.coords.change_precision(self.ctx())
    }

    /// `[g^{p^n}, h^{p^n}]^{p^{-2n}}`, an approximation of the bracket.
    pub fn intrinsic_bracket(&self, g: &GroupElement, h: &GroupElement, n: u32) -> Result<LieVector> {
        self.intrinsic_precondition(n)?;
        let w = self.working_group(2 * n)?;
        let pn = w.ctx().p_power(n as i32);
        let a = w.power(&self.lift(g, &w)?, &pn)?;
        let b = w.power(&self.lift(h, &w)?, &pn)?;
        let r = w.root(&w.commutator(&a, &b, Backend::Bch)?, 2 * n)?;
        r.coords.change_precision(self.ctx())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g4(p: u64, d: i64) -> UniformGroup {
        let ctx = PAdicContext::new(p, 24).unwrap();
        UniformGroup::family(&FamilyParams::from_i64(ctx, 4, d).unwrap()).unwrap()
    }

    #[test]
    fn split_backend_is_available_for_the_family() {
        let g = g4(5, 1);
        assert!(g.has_split());
        assert!(g.truncation_degree() <= 14);
    }

    #[test]
    fn identity_and_inverse() {
        let g = g4(5, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let x = g.random_element(&mut rng);
            for b in [Backend::Bch, Backend::Split] {
                let e = g.mul(&x, &g.identity(), b).unwrap();
                assert!(g.agrees_mod(&e, &x, 24).unwrap());
                let xs = g.to_chart(&x, b).unwrap();
                let one = g.mul(&xs, &g.inv(&xs).unwrap(), b).unwrap();
                assert!(g.is_identity(&one).unwrap());
            }
        }
    }

    #[test]
    fn ideal_part_multiplies_additively() {
        let g = g4(5, 2);
        let ctx = g.ctx();
        let a = GroupElement::new(Backend::Split, LieVector::from_i64(ctx, &[0, 3, 4, 5]));
        let b = GroupElement::new(Backend::Split, LieVector::from_i64(ctx, &[0, 1, 7, 2]));
        let c = g.mul(&a, &b, Backend::Split).unwrap();
        assert_eq!(c.coords(), &LieVector::from_i64(ctx, &[0, 4, 11, 7]));
    }

    #[test]
    fn backends_agree() {
        let g = g4(3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let x = g.random_element(&mut rng);
            let y = g.random_element(&mut rng);
            let a = g.mul(&x, &y, Backend::Bch).unwrap();
            let b = g.mul(&x, &y, Backend::Split).unwrap();
            assert!(g.agrees_mod(&a, &b, 24).unwrap());
        }
    }

    #[test]
    fn chart_round_trip() {
        let g = g4(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = g.random_element(&mut rng);
        let s = g.to_chart(&x, Backend::Split).unwrap();
        let back = g.to_chart(&s, Backend::Bch).unwrap();
        assert!(back.coords().agrees_mod(x.coords(), 24));
        // the complement line is a one-parameter subgroup
        let line = g.element_from_i64(&[6, 0, 0, 0]).unwrap();
        assert_eq!(g.to_chart(&line, Backend::Split).unwrap().coords(), line.coords());
    }

    #[test]
    fn powers_and_roots() {
        let g = g4(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = g.random_element(&mut rng);
        let cube = g.mul(&g.mul(&x, &x, Backend::Bch).unwrap(), &x, Backend::Bch).unwrap();
        assert!(g.agrees_mod(&cube, &g.power_i64(&x, 3).unwrap(), 24).unwrap());
        let x25 = g.power_i64(&x, 25).unwrap();
        assert!(g.agrees_mod(&g.root(&x25, 2).unwrap(), &x, 24).unwrap());
        let unit = g.element_from_i64(&[1, 0, 0, 0]).unwrap();
        assert!(matches!(g.root(&unit, 1), Err(Error::NotAPower(1))));
    }

    #[test]
    fn commutator_leading_term() {
        let p = 5;
        let d = 3;
        let g = g4(p, d);
        let c = g.commutator(&g.generator(1), &g.generator(0), Backend::Bch).unwrap();
        // p^2 d in the e_4 slot of the scaled basis, i.e. p^4 d in ambient terms
        let expect = LieVector::from_i64(g.ctx(), &[0, 0, 0, 25 * d]);
        assert!(c.coords().agrees_mod(&expect, 4));
        assert!(g.is_identity(&g.commutator(&g.generator(2), &g.generator(2), Backend::Bch).unwrap()).unwrap());
    }

    #[test]
    fn intrinsic_limits() {
        let g = g4(5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = g.random_element(&mut rng);
        let y = g.random_element(&mut rng);
        let sum = x.coords().add(y.coords());
        let br = g.algebra().bracket(x.coords(), y.coords()).unwrap();
        for n in 1..=4 {
            let s = g.intrinsic_sum(&x, &y, n).unwrap();
            assert!(g.ambient_valuation(&s.sub(&sum)) >= n as i32 + 3);
            let b = g.intrinsic_bracket(&x, &y, n).unwrap();
            assert!(g.ambient_valuation(&b.sub(&br)) >= n as i32 + 3);
        }
        assert!(matches!(g.intrinsic_sum(&x, &y, 0), Err(Error::Precision(_))));
        assert!(matches!(g.intrinsic_sum(&x, &y, 21), Err(Error::Precision(_))));
    }

    #[test]
    fn unscaled_family_is_refused() {
        let ctx = PAdicContext::new(5, 24).unwrap();
        let alg = build_family(&FamilyParams::from_i64(ctx, 4, 1).unwrap());
        assert!(matches!(UniformGroup::from_algebra(alg, 0), Err(Error::NotPowerful)));
    }

    #[test]
    fn two_adic_family_group() {
        let ctx = PAdicContext::new(2, 24).unwrap();
        let g = UniformGroup::family(&FamilyParams::from_i64(ctx, 3, 1).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = g.random_element(&mut rng);
        let y = g.random_element(&mut rng);
        let a = g.mul(&x, &y, Backend::Bch).unwrap();
        let b = g.mul(&x, &y, Backend::Split).unwrap();
        assert!(g.agrees_mod(&a, &b, 24).unwrap());
    }
}
