//! Lie algebras over `Z_p` given by structure constants.
//!
//! Only the brackets `[b_i, b_j]` with `i < j` are stored; the rest of the
//! table is synthesised by antisymmetry, so a stored algebra cannot violate
//! it.  The Jacobi identity is checked on demand with [`LieAlgebra::jacobi_check`].

use std::fmt;

use crate::error::{Error, Result};
use crate::padic::{PAdic, PAdicContext, PAdicMatrix, INFINITE_VALUATION};

/// Coordinates of an element with respect to an algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieVector {
    ctx: PAdicContext,
    coords: Vec<PAdic>,
}

impl fmt::Debug for LieVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl LieVector {
    pub fn new(ctx: PAdicContext, coords: Vec<PAdic>) -> Self {
        debug_assert!(coords.iter().all(|c| c.ctx() == ctx));
        Self { ctx, coords }
    }

    pub fn zeros(ctx: PAdicContext, k: usize) -> Self {
        Self::new(ctx, vec![ctx.zero(); k])
    }

    /// The `i`-th standard basis vector.
    pub fn basis(ctx: PAdicContext, k: usize, i: usize) -> Self {
        let mut v = Self::zeros(ctx, k);
        v.coords[i] = ctx.one();
        v
    }

    pub fn from_i64(ctx: PAdicContext, coords: &[i64]) -> Self {
        Self::new(ctx, coords.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn ctx(&self) -> PAdicContext {
        self.ctx
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[PAdic] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<PAdic> {
        self.coords
    }

    pub fn get(&self, i: usize) -> PAdic {
        self.coords[i]
    }

    pub fn set(&mut self, i: usize, x: PAdic) {
        self.coords[i] = x;
    }

    fn same_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("vector lengths differ")
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_len(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_, _>>()?;
        Ok(Self::new(self.ctx, coords))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        Self::new(self.ctx, self.coords.iter().map(PAdic::neg).collect())
    }

    pub fn scale(&self, s: &PAdic) -> Self {
        Self::new(self.ctx, self.coords.iter().map(|c| c.mul(s)).collect())
    }

    pub fn mul_p_power(&self, n: i32) -> Self {
        Self::new(self.ctx, self.coords.iter().map(|c| c.mul_p_power(n)).collect())
    }

    /// Smallest coordinate valuation ([`INFINITE_VALUATION`] for zero).
    pub fn valuation(&self) -> i32 {
        self.coords
            .iter()
            .map(PAdic::valuation)
            .min()
            .unwrap_or(INFINITE_VALUATION)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(PAdic::is_zero)
    }

    /// Zero up to the working precision (all valuations `>= N`).
    pub fn is_negligible(&self) -> bool {
        self.valuation() >= self.ctx.prec() as i32
    }

    pub fn agrees_mod(&self, other: &Self, m: i32) -> bool {
        self.len() == other.len() && self.sub(other).valuation() >= m
    }

    /// Coordinates carried into another context of the same prime.
    pub fn change_precision(&self, ctx: PAdicContext) -> Result<Self> {
        let coords = self
            .coords
            .iter()
            .map(|c| c.change_precision(ctx))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { ctx, coords })
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(PAdic::is_integral)
    }
}

/// Outcome of a Jacobi-identity scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobiReport {
    Pass,
    /// First basis triple `(i, j, h)`, `i < j < h`, whose cyclic sum is nonzero.
    Violation {
        triple: (usize, usize, usize),
        residual: LieVector,
    },
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        matches!(self, JacobiReport::Pass)
    }
}

/// Generators of the derived subalgebra `[L, L]`.
#[derive(Debug, Clone)]
pub struct DerivedSubalgebra {
    /// Echelon basis of the `Z_p`-span of all `[b_i, b_j]`.
    pub basis: Vec<LieVector>,
    /// Pivot coordinate of each basis vector.
    pub pivots: Vec<usize>,
    /// Valuations of the elementary divisors of the span inside `Z_p^k`.
    pub elementary_divisors: Vec<i32>,
    /// True when every elementary divisor is a unit (the span is a direct summand).
    pub saturated: bool,
}

impl DerivedSubalgebra {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// A finite-rank Lie algebra over `Z_p` (or `Q_p`) by structure constants.
#[derive(Clone)]
pub struct LieAlgebra {
    ctx: PAdicContext,
    names: Vec<String>,
    /// `[b_i, b_j]` for `i < j`, indexed by [`pair_index`].
    upper: Vec<LieVector>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("LieAlgebra");
        s.field("p", &self.ctx.p())
            .field("prec", &self.ctx.prec())
            .field("basis", &self.names);
        let k = self.rank();
        let brackets: Vec<String> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.upper[pair_index(k, i, j)].is_zero())
            .map(|(i, j)| {
                format!(
                    "[{}, {}] = {:?}",
                    self.names[i],
                    self.names[j],
                    self.upper[pair_index(k, i, j)]
                )
            })
            .collect();
        s.field("brackets", &brackets).finish()
    }
}

fn pair_index(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < k);
    i * k + j
}

impl LieAlgebra {
    /// Builds an algebra from a list of brackets `[b_i, b_j] = coords`.
    ///
    /// Both orientations of a pair may be listed; they must be negatives of
    /// each other.  A nonzero `[b_i, b_i]` is rejected.  Unlisted pairs are zero.
    pub fn from_brackets(
        ctx: PAdicContext,
        names: Vec<String>,
        brackets: &[(usize, usize, LieVector)],
    ) -> Result<Self> {
        let k = names.len();
        let mut upper = vec![LieVector::zeros(ctx, k); k * k];
        let mut seen = vec![false; k * k];
        for (i, j, v) in brackets {
            let (i, j) = (*i, *j);
            for idx in [i, j] {
                if idx >= k {
                    return Err(Error::BasisIndex { index: idx, rank: k });
                }
            }
            if v.len() != k {
                return Err(Error::Dimension {
                    expected: k,
                    got: v.len(),
                });
            }
            if v.ctx() != ctx {
                return Err(crate::padic::PadicError::ContextMismatch.into());
            }
            if i == j {
                if !v.is_zero() {
                    return Err(Error::Antisymmetry { i, j });
                }
                continue;
            }
            let (a, b, val) = if i < j { (i, j, v.clone()) } else { (j, i, v.neg()) };
            let idx = pair_index(k, a, b);
            if seen[idx] {
                if !upper[idx].agrees_mod(&val, ctx.prec() as i32) {
                    return Err(Error::Antisymmetry { i, j });
                }
            } else {
                seen[idx] = true;
                upper[idx] = val;
            }
        }
        Ok(Self { ctx, names, upper })
    }

    /// The abelian algebra of rank `k`.
    pub fn abelian(ctx: PAdicContext, k: usize) -> Self {
        let names = (1..=k).map(|i| format!("b_{i}")).collect();
        Self::from_brackets(ctx, names, &[]).expect("abelian algebra")
    }

    pub fn ctx(&self) -> PAdicContext {
        self.ctx
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `[b_i, b_j]` as a vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> LieVector {
        let k = self.rank();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(k, i, j)].clone(),
            std::cmp::Ordering::Greater => self.upper[pair_index(k, j, i)].neg(),
            std::cmp::Ordering::Equal => LieVector::zeros(self.ctx, k),
        }
    }

    /// Structure constant `c[i][j][l]` with `[b_i, b_j] = sum_l c[i][j][l] b_l`.
    pub fn structure_constant(&self, i: usize, j: usize, l: usize) -> PAdic {
        self.basis_bracket(i, j).get(l)
    }

    pub fn basis_vector(&self, i: usize) -> LieVector {
        LieVector::basis(self.ctx, self.rank(), i)
    }

    fn check_vec(&self, v: &LieVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, u: &LieVector, v: &LieVector) -> Result<LieVector> {
        self.check_vec(u)?;
        self.check_vec(v)?;
        let k = self.rank();
        let mut out = vec![self.ctx.zero(); k];
        for i in 0..k {
            for j in i + 1..k {
                let c = &self.upper[pair_index(k, i, j)];
                if c.is_zero() {
                    continue;
                }
                let w = u.coords[i].mul(&v.coords[j]).sub(&u.coords[j].mul(&v.coords[i]));
                if w.is_zero() {
                    continue;
                }
                for (o, cl) in out.iter_mut().zip(&c.coords) {
                    if !cl.is_zero() {
                        *o = o.add(&w.mul(cl));
                    }
                }
            }
        }
        Ok(LieVector::new(self.ctx, out))
    }

    /// Checks `[[b_i,b_j],b_h] + [[b_j,b_h],b_i] + [[b_h,b_i],b_j] = 0` modulo
    /// `p^N` for every triple `i < j < h`.
    pub fn jacobi_check(&self) -> JacobiReport {
        let k = self.rank();
        for i in 0..k {
            for j in i + 1..k {
                for h in j + 1..k {
                    let b = |a: usize| self.basis_vector(a);
                    let t1 = self.bracket(&self.basis_bracket(i, j), &b(h)).unwrap();
                    let t2 = self.bracket(&self.basis_bracket(j, h), &b(i)).unwrap();
                    let t3 = self.bracket(&self.basis_bracket(h, i), &b(j)).unwrap();
                    let sum = t1.add(&t2).add(&t3);
                    if !sum.is_negligible() {
                        return JacobiReport::Violation {
                            triple: (i, j, h),
                            residual: sum,
                        };
                    }
                }
            }
        }
        JacobiReport::Pass
    }

    /// Echelon basis of the span of all basis brackets, with saturation data.
    pub fn derived_subalgebra(&self) -> DerivedSubalgebra {
        let k = self.rank();
        let gens: Vec<LieVector> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .map(|(i, j)| self.upper[pair_index(k, i, j)].clone())
            .filter(|v| !v.is_negligible())
            .collect();
        let (basis, pivots) = echelon(&gens);
        let elementary_divisors = elementary_divisor_valuations(&gens);
        let saturated = elementary_divisors.iter().all(|&v| v == 0);
        DerivedSubalgebra {
            basis,
            pivots,
            elementary_divisors,
            saturated,
        }
    }

    /// True when `[L', L'] = 0`.
    pub fn is_metabelian(&self) -> bool {
        let d = self.derived_subalgebra();
        d.basis.iter().enumerate().all(|(a, u)| {
            d.basis[a + 1..]
                .iter()
                .all(|v| self.bracket(u, v).unwrap().is_negligible())
        })
    }

    /// Matrix of `v -> [v, y]` on the span of `ideal_basis`.  Row `i` holds the
    /// coordinates of `[ideal_basis[i], y]` in that basis.
    pub fn adjoint_matrix(&self, y: &LieVector, ideal_basis: &[LieVector]) -> Result<PAdicMatrix> {
        self.check_vec(y)?;
        let n = ideal_basis.len();
        let mut rows = Vec::with_capacity(n);
        for (i, v) in ideal_basis.iter().enumerate() {
            self.check_vec(v)?;
            let w = self.bracket(v, y)?;
            let coords = solve_in_span(ideal_basis, &w).ok_or(Error::NotInvariant(i))?;
            rows.push(coords);
        }
        if n == 0 {
            return Ok(PAdicMatrix::zeros(self.ctx, 0, 0));
        }
        Ok(PAdicMatrix::from_rows(self.ctx, &rows)?)
    }

    /// Smallest valuation among all structure constants.
    pub fn bracket_valuation_floor(&self) -> i32 {
        self.upper
            .iter()
            .map(LieVector::valuation)
            .min()
            .unwrap_or(INFINITE_VALUATION)
    }

    /// `(L, L) ⊆ pL` for odd p, `(L, L) ⊆ 4L` for p = 2.
    pub fn is_powerful(&self) -> bool {
        let need = if self.ctx.p() == 2 { 2 } else { 1 };
        self.bracket_valuation_floor() >= need
    }

    /// The algebra `p^n L` in the basis `p^n b_i`: every structure constant is
    /// multiplied by `p^n`.
    pub fn scale(&self, n: u32) -> Self {
        let upper = self.upper.iter().map(|v| v.mul_p_power(n as i32)).collect();
        Self {
            ctx: self.ctx,
            names: self.names.clone(),
            upper,
        }
    }

    /// Structure constants carried into another context of the same prime.
    pub fn change_precision(&self, ctx: PAdicContext) -> Result<Self> {
        let upper = self
            .upper
            .iter()
            .map(|v| v.change_precision(ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ctx,
            names: self.names.clone(),
            upper,
        })
    }

    /// Same algebra with renamed basis vectors.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }

    /// All stored brackets `(i, j, [b_i, b_j])` with `i < j` and nonzero value.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, LieVector)> {
        let k = self.rank();
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let v = &self.upper[pair_index(k, i, j)];
                (!v.is_zero()).then(|| (i, j, v.clone()))
            })
            .collect()
    }
}

/// Row echelon form of the `Z_p`-span of `rows` using unimodular row
/// operations.  Pivots are taken column by column (leftmost first) with the
/// smallest available valuation, normalised to a pure power of `p`, and
/// entries above a pivot are cleared whenever the pivot divides them.
pub fn echelon(rows: &[LieVector]) -> (Vec<LieVector>, Vec<usize>) {
    let Some(first) = rows.first() else {
        return (Vec::new(), Vec::new());
    };
    let ctx = first.ctx();
    let k = first.len();
    let prec = ctx.prec() as i32;
    let mut work: Vec<Vec<PAdic>> = rows.iter().map(|r| r.coords.clone()).collect();
    let mut out: Vec<Vec<PAdic>> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..k {
        let best = work
            .iter()
            .enumerate()
            .filter(|(_, r)| r[col].valuation() < prec)
            .min_by_key(|(_, r)| r[col].valuation())
            .map(|(i, _)| i);
        let Some(bi) = best else {
            continue;
        };
        let mut pivot_row = work.swap_remove(bi);
        let pv = pivot_row[col];
        let unit_inv = ctx
            .from_residue(pv.unit())
            .inverse()
            .expect("pivot unit part is invertible");
        for x in pivot_row.iter_mut() {
            *x = x.mul(&unit_inv);
        }
        let pivot = pivot_row[col];
        let pivot_inv = pivot.inverse().expect("nonzero pivot");
        for r in work.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let f = r[col].mul(&pivot_inv);
            for (x, y) in r.iter_mut().zip(&pivot_row) {
                *x = x.sub(&f.mul(y));
            }
            r[col] = ctx.zero();
        }
        for r in out.iter_mut() {
            if !r[col].is_zero() && r[col].valuation() >= pivot.valuation() {
                let f = r[col].mul(&pivot_inv);
                for (x, y) in r.iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(y));
                }
                r[col] = ctx.zero();
            }
        }
        work.retain(|r| r.iter().any(|x| x.valuation() < prec));
        out.push(pivot_row);
        pivots.push(col);
    }
    (
        out.into_iter().map(|c| LieVector::new(ctx, c)).collect(),
        pivots,
    )
}

/// Valuations of the elementary divisors of the lattice spanned by `rows`,
/// by full minimal-valuation pivoting.  Entries of valuation `>= N` count as zero.
pub fn elementary_divisor_valuations(rows: &[LieVector]) -> Vec<i32> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let ctx = first.ctx();
    let prec = ctx.prec() as i32;
    let mut m: Vec<Vec<PAdic>> = rows.iter().map(|r| r.coords.clone()).collect();
    let mut cols: Vec<usize> = (0..first.len()).collect();
    let mut out = Vec::new();
    loop {
        let mut best: Option<(usize, usize, i32)> = None;
        for (ri, r) in m.iter().enumerate() {
            for &c in &cols {
                let v = r[c].valuation();
                if v < prec && best.is_none_or(|b| v < b.2) {
                    best = Some((ri, c, v));
                }
            }
        }
        let Some((ri, c, v)) = best else {
            break;
        };
        out.push(v);
        let pivot_row = m.swap_remove(ri);
        let inv = pivot_row[c].inverse().expect("nonzero pivot");
        for r in m.iter_mut() {
            if r[c].is_zero() {
                continue;
            }
            let f = r[c].mul(&inv);
            for &cc in &cols {
                r[cc] = r[cc].sub(&f.mul(&pivot_row[cc]));
            }
        }
        cols.retain(|&cc| cc != c);
    }
    out
}

/// Solves `sum_j x_j basis[j] = w` over `Q_p`.  Returns `None` when `w` is
/// not in the span (residual of valuation `< N`).
pub fn solve_in_span(basis: &[LieVector], w: &LieVector) -> Option<Vec<PAdic>> {
    let ctx = w.ctx();
    let prec = ctx.prec() as i32;
    let n = basis.len();
    let k = w.len();
    // augmented k x (n + 1) system, columns are basis vectors
    let mut a: Vec<Vec<PAdic>> = (0..k)
        .map(|r| {
            let mut row: Vec<PAdic> = basis.iter().map(|b| b.coords[r]).collect();
            row.push(w.coords[r]);
            row
        })
        .collect();
    let mut pivot_of_col = vec![None; n];
    let mut next_row = 0;
    for col in 0..n {
        let best = (next_row..k)
            .filter(|&r| a[r][col].valuation() < prec)
            .min_by_key(|&r| a[r][col].valuation());
        let Some(br) = best else {
            continue;
        };
        a.swap(next_row, br);
        let inv = a[next_row][col].inverse().expect("nonzero pivot");
        for r in 0..k {
            if r == next_row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            let pivot_row = a[next_row].clone();
            for (x, y) in a[r][col..=n].iter_mut().zip(&pivot_row[col..=n]) {
                *x = x.sub(&f.mul(y));
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
    }
    if (next_row..k).any(|r| a[r][n].valuation() < prec) {
        return None;
    }
    Some(
        pivot_of_col
            .iter()
            .enumerate()
            .map(|(col, pr)| match pr {
                Some(r) => a[*r][n].div(&a[*r][col]).expect("nonzero pivot"),
                None => ctx.zero(),
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PAdicContext {
        PAdicContext::new(5, 24).unwrap()
    }

    fn heisenberg(c: PAdicContext) -> LieAlgebra {
        let names = vec!["a".into(), "b".into(), "z".into()];
        LieAlgebra::from_brackets(c, names, &[(0, 1, LieVector::from_i64(c, &[0, 0, 1]))]).unwrap()
    }

    #[test]
    fn antisymmetry_is_synthesised() {
        let c = ctx();
        let h = heisenberg(c);
        assert_eq!(h.basis_bracket(1, 0), LieVector::from_i64(c, &[0, 0, -1]));
        assert_eq!(h.structure_constant(0, 0, 2), c.zero());
    }

    #[test]
    fn inconsistent_orientations_are_rejected() {
        let c = ctx();
        let names = vec!["a".into(), "b".into()];
        let r = LieAlgebra::from_brackets(
            c,
            names,
            &[
                (0, 1, LieVector::from_i64(c, &[1, 0])),
                (1, 0, LieVector::from_i64(c, &[1, 0])),
            ],
        );
        assert!(matches!(r, Err(Error::Antisymmetry { .. })));
    }

    #[test]
    fn self_bracket_must_vanish() {
        let c = ctx();
        let r = LieAlgebra::from_brackets(
            c,
            vec!["a".into(), "b".into()],
            &[(1, 1, LieVector::from_i64(c, &[1, 0]))],
        );
        assert!(matches!(r, Err(Error::Antisymmetry { i: 1, j: 1 })));
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let c = ctx();
        let h = heisenberg(c);
        let r = h.bracket(&LieVector::zeros(c, 2), &LieVector::zeros(c, 3));
        assert!(matches!(r, Err(Error::Dimension { .. })));
    }

    #[test]
    fn heisenberg_is_nilpotent_and_jacobi() {
        let c = ctx();
        let h = heisenberg(c);
        assert!(h.jacobi_check().passed());
        let d = h.derived_subalgebra();
        assert_eq!(d.rank(), 1);
        assert!(d.saturated);
        assert!(h.is_metabelian());
    }

    #[test]
    fn jacobi_failure_is_pinpointed() {
        // [a,b] = c, [b,c] = a, [c,a] = a is not a Lie algebra
        let c = ctx();
        let names = vec!["a".into(), "b".into(), "c".into()];
        let alg = LieAlgebra::from_brackets(
            c,
            names,
            &[
                (0, 1, LieVector::from_i64(c, &[0, 0, 1])),
                (1, 2, LieVector::from_i64(c, &[1, 0, 0])),
                (2, 0, LieVector::from_i64(c, &[1, 0, 0])),
            ],
        )
        .unwrap();
        match alg.jacobi_check() {
            JacobiReport::Violation { triple, .. } => assert_eq!(triple, (0, 1, 2)),
            JacobiReport::Pass => panic!("expected violation"),
        }
    }

    #[test]
    fn abelian_algebra_properties() {
        let c = ctx();
        let a = LieAlgebra::abelian(c, 4);
        assert!(a.jacobi_check().passed());
        assert_eq!(a.derived_subalgebra().rank(), 0);
        assert!(a.is_powerful());
    }

    #[test]
    fn scale_composes() {
        let c = ctx();
        let h = heisenberg(c);
        let twice = h.scale(1).scale(1);
        let once = h.scale(2);
        assert_eq!(twice.nonzero_brackets(), once.nonzero_brackets());
        assert_eq!(h.scale(0).nonzero_brackets(), h.nonzero_brackets());
    }

    #[test]
    fn elementary_divisors_detect_saturation() {
        let c = ctx();
        // span of (5, 1) is saturated even though its first entry is not a unit
        let v = [LieVector::from_i64(c, &[5, 1])];
        assert_eq!(elementary_divisor_valuations(&v), vec![0]);
        let w = [LieVector::from_i64(c, &[5, 25])];
        assert_eq!(elementary_divisor_valuations(&w), vec![1]);
    }

    #[test]
    fn span_solver() {
        let c = ctx();
        let basis = [LieVector::from_i64(c, &[1, 1, 0]), LieVector::from_i64(c, &[0, 5, 0])];
        let w = LieVector::from_i64(c, &[2, 7, 0]);
        let x = solve_in_span(&basis, &w).unwrap();
        assert_eq!(x, vec![c.from_i64(2), c.from_i64(1)]);
        assert!(solve_in_span(&basis, &LieVector::from_i64(c, &[0, 0, 1])).is_none());
    }

    #[test]
    fn non_invariant_subspace_is_reported() {
        let c = ctx();
        let h = heisenberg(c);
        // span{a} is not invariant under ad b
        let r = h.adjoint_matrix(&h.basis_vector(1), &[h.basis_vector(0)]);
        assert!(matches!(r, Err(Error::NotInvariant(0))));
    }
}
