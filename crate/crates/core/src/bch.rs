//! The Campbell–Hausdorff series `log(exp X exp Y)`.
//!
//! The series is generated exactly: `log(exp X exp Y)` is expanded in the
//! free associative algebra on `X, Y` truncated at degree `D` with rational
//! coefficients, and the homogeneous part `P_m` of degree `m` is turned into a
//! Lie element with the Dynkin idempotent, `P_m = (1/m) sum_w c_w [w]`, where
//! `[w]` is the left-normed bracketing `[...[[w_1, w_2], w_3], ..., w_m]`.
//!
//! On a metabelian algebra the operators `ad u`, `ad v` commute on the derived
//! algebra, so every left-normed word collapses to `ad_u^a ad_v^b [u, v]` and
//! the series reduces to coefficients `C[a][b]`.  These are produced both by
//! collecting the Dynkin terms and, independently, by a dynamic programme over
//! the block structure of `(exp X exp Y - 1)^n`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieVector};
use crate::padic::{bigint_valuation, PAdic, PAdicContext};

/// Largest degree for which the full word expansion is generated.
pub const MAX_GENERAL_DEGREE: usize = 16;

/// Largest degree the metabelian coefficient table supports.
pub const MAX_METABELIAN_DEGREE: usize = 40;

/// A word in `X` (bit 0) and `Y` (bit 1); the first letter is the most
/// significant of the `len` bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub len: u8,
    pub bits: u32,
}

impl Word {
    pub fn letter(&self, i: usize) -> u8 {
        ((self.bits >> (self.len as usize - 1 - i)) & 1) as u8
    }

    pub fn letters(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len as usize).map(|i| self.letter(i))
    }

    pub fn parse(s: &str) -> Option<Self> {
        let mut bits = 0u32;
        for ch in s.chars() {
            bits = (bits << 1)
                | match ch {
                    'X' => 0,
                    'Y' => 1,
                    _ => return None,
                };
        }
        Some(Self {
            len: s.len() as u8,
            bits,
        })
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in self.letters() {
            f.write_str(if l == 0 { "X" } else { "Y" })?;
        }
        Ok(())
    }
}

/// One term `coefficient * [w]` of the Dynkin form.
#[derive(Debug, Clone, PartialEq)]
pub struct BchTerm {
    pub degree: usize,
    pub coefficient: BigRational,
    pub word: Word,
}

/// All Dynkin terms of the series through degree `max_degree`.
#[derive(Debug, Clone)]
pub struct BchSeries {
    pub max_degree: usize,
    pub terms: Vec<BchTerm>,
}

fn factorials(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for i in 1..=n {
        let next = &f[i - 1] * BigInt::from(i);
        f.push(next);
    }
    f
}

/// Homogeneous components (by degree) of `log(exp X exp Y)` in the truncated
/// free associative algebra.  Entry `[m][bits]` is the coefficient of the
/// word of length `m` with letters `bits`.
pub fn log_exp_exp(max_degree: usize) -> Vec<Vec<BigRational>> {
    assert!(
        max_degree <= MAX_GENERAL_DEGREE,
        "word expansion limited to degree {MAX_GENERAL_DEGREE}"
    );
    let fact = factorials(max_degree);
    let zero = BigRational::zero();
    // coefficient of X^a Y^b in exp X exp Y
    let block = |a: usize, b: usize| BigRational::new(BigInt::one(), &fact[a] * &fact[b]);
    let mut log: Vec<Vec<BigRational>> = (0..=max_degree).map(|m| vec![zero.clone(); 1 << m]).collect();
    // power[m][bits] of Z^n, Z = exp X exp Y - 1
    let mut power: Vec<Vec<BigRational>> = (0..=max_degree).map(|m| vec![zero.clone(); 1 << m]).collect();
    power[0][0] = BigRational::one();
    for n in 1..=max_degree {
        let mut next: Vec<Vec<BigRational>> =
            (0..=max_degree).map(|m| vec![zero.clone(); 1 << m]).collect();
        for (m0, comp) in power.iter().enumerate() {
            for (bits, c) in comp.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for s in 1..=max_degree - m0 {
                    for b in 0..=s {
                        let a = s - b;
                        let w = (bits << s) | ((1 << b) - 1);
                        next[m0 + s][w] += c * block(a, b);
                    }
                }
            }
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let scale = BigRational::new(BigInt::from(sign), BigInt::from(n));
        for (m, comp) in next.iter().enumerate() {
            for (bits, c) in comp.iter().enumerate() {
                if !c.is_zero() {
                    log[m][bits] += c * &scale;
                }
            }
        }
        power = next;
    }
    log
}

/// Generates the Dynkin-form series through degree `max_degree`.
pub fn bch_coefficients(max_degree: usize) -> BchSeries {
    assert!(max_degree >= 1);
    let log = log_exp_exp(max_degree);
    let mut terms = vec![
        BchTerm {
            degree: 1,
            coefficient: BigRational::one(),
            word: Word { len: 1, bits: 0 },
        },
        BchTerm {
            degree: 1,
            coefficient: BigRational::one(),
            word: Word { len: 1, bits: 1 },
        },
    ];
    for (m, comp) in log.iter().enumerate().skip(2) {
        let inv_m = BigRational::new(BigInt::one(), BigInt::from(m));
        for (bits, c) in comp.iter().enumerate() {
            let word = Word {
                len: m as u8,
                bits: bits as u32,
            };
            if c.is_zero() || word.letter(0) == word.letter(1) {
                continue;
            }
            terms.push(BchTerm {
                degree: m,
                coefficient: c * &inv_m,
                word,
            });
        }
    }
    BchSeries { max_degree, terms }
}

/// Cached series by degree.
pub fn cached_series(max_degree: usize) -> Arc<BchSeries> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<BchSeries>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&max_degree) {
        return s.clone();
    }
    let s = Arc::new(bch_coefficients(max_degree));
    cache.lock().unwrap().insert(max_degree, s.clone());
    s
}

/// Row of the audit dump of a series.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesDumpRow {
    pub degree: usize,
    pub numerator: String,
    pub denominator: String,
    pub word: String,
}

impl BchSeries {
    pub fn terms_of_degree(&self, m: usize) -> impl Iterator<Item = &BchTerm> {
        self.terms.iter().filter(move |t| t.degree == m)
    }

    pub fn dump(&self) -> Vec<SeriesDumpRow> {
        self.terms
            .iter()
            .map(|t| SeriesDumpRow {
                degree: t.degree,
                numerator: t.coefficient.numer().to_string(),
                denominator: t.coefficient.denom().to_string(),
                word: t.word.to_string(),
            })
            .collect()
    }

    /// Largest `v_p` of a coefficient denominator among degree-`m` terms.
    pub fn denominator_valuation(&self, m: usize, p: u64) -> u32 {
        self.terms_of_degree(m)
            .map(|t| bigint_valuation(t.coefficient.denom(), p))
            .max()
            .unwrap_or(0)
    }

    /// Collects the terms into metabelian coefficients `C[a][b]`.
    pub fn metabelian_collect(&self) -> MetabelianBch {
        let d = self.max_degree;
        let mut coeffs = empty_table(d);
        for t in &self.terms {
            if t.degree < 2 {
                continue;
            }
            let (first, second) = (t.word.letter(0), t.word.letter(1));
            let ys = t.word.letters().skip(2).filter(|&l| l == 1).count();
            let xs = t.degree - 2 - ys;
            match (first, second) {
                (0, 1) => coeffs[xs][ys] += &t.coefficient,
                (1, 0) => coeffs[xs][ys] -= &t.coefficient,
                _ => {}
            }
        }
        MetabelianBch {
            max_degree: d,
            coeffs,
        }
    }

    /// Evaluates every term on an arbitrary algebra by walking the prefix
    /// tree of left-normed words.
    pub fn eval(&self, alg: &LieAlgebra, u: &LieVector, v: &LieVector) -> Result<LieVector> {
        let ctx = alg.ctx();
        let mut by_word: HashMap<Word, PAdic> = HashMap::new();
        for t in self.terms.iter().filter(|t| t.degree >= 2) {
            by_word.insert(t.word, ctx.from_rational(&t.coefficient));
        }
        let mut acc = u.add(v);
        let letters = [u, v];
        for (first, second) in [(0u8, 1u8), (1, 0)] {
            let start = alg.bracket(letters[first as usize], letters[second as usize])?;
            let word = Word {
                len: 2,
                bits: ((first as u32) << 1) | second as u32,
            };
            self.walk(alg, &by_word, &letters, word, start, &mut acc)?;
        }
        Ok(acc)
    }

    fn walk(
        &self,
        alg: &LieAlgebra,
        coeffs: &HashMap<Word, PAdic>,
        letters: &[&LieVector; 2],
        word: Word,
        value: LieVector,
        acc: &mut LieVector,
    ) -> Result<()> {
        if value.is_zero() {
            return Ok(());
        }
        if let Some(c) = coeffs.get(&word) {
            let term = value.scale(c);
            if !term.is_integral() {
                return Err(Error::Certificate {
                    degree: word.len as usize,
                    valuation: term.valuation(),
                });
            }
            *acc = acc.add(&term);
        }
        if (word.len as usize) < self.max_degree {
            for l in 0..2u8 {
                let next = alg.bracket(&value, letters[l as usize])?;
                let w = Word {
                    len: word.len + 1,
                    bits: (word.bits << 1) | l as u32,
                };
                self.walk(alg, coeffs, letters, w, next, acc)?;
            }
        }
        Ok(())
    }
}

fn empty_table(max_degree: usize) -> Vec<Vec<BigRational>> {
    let n = max_degree.saturating_sub(1);
    (0..n).map(|a| vec![BigRational::zero(); n - a]).collect()
}

/// Coefficients `C[a][b]` (`a + b <= D - 2`) of
/// `BCH(u, v) = u + v + sum C[a][b] ad_u^a ad_v^b [u, v]` on algebras whose
/// derived algebra is abelian; `ad_z` acts as `w -> [w, z]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetabelianBch {
    pub max_degree: usize,
    pub coeffs: Vec<Vec<BigRational>>,
}

const EMPTY: usize = 0;
const ONE_X: usize = 1;
const ONE_Y: usize = 2;
const XX: usize = 3;
const XY: usize = 4;
const YX: usize = 5;
const YY: usize = 6;

fn append_block(state: usize, a: usize, b: usize) -> usize {
    match state {
        EMPTY => match (a, b) {
            (1, 0) => ONE_X,
            (0, 1) => ONE_Y,
            (a, _) if a >= 2 => XX,
            (1, _) => XY,
            _ => YY,
        },
        ONE_X => {
            if a >= 1 {
                XX
            } else {
                XY
            }
        }
        ONE_Y => {
            if a >= 1 {
                YX
            } else {
                YY
            }
        }
        s => s,
    }
}

impl MetabelianBch {
    /// Dynamic programme over `(exp X exp Y - 1)^n`: every word in the
    /// expansion is a concatenation of blocks `X^a Y^b`; only its first two
    /// letters and its letter counts matter after collection.
    pub fn generate(max_degree: usize) -> Self {
        assert!((1..=MAX_METABELIAN_DEGREE).contains(&max_degree));
        let d = max_degree;
        // Scaling the coefficient of a word with x letters X and y letters Y
        // by x! y! turns the block weights 1/(a! b!) into binomials, so the
        // walk runs over integers.
        let mut binom = vec![vec![0u64; d + 1]; d + 1];
        for n in 0..=d {
            binom[n][0] = 1;
            for k in 1..=n {
                binom[n][k] = binom[n - 1][k - 1] + if k < n { binom[n - 1][k] } else { 0 };
            }
        }
        let idx = |s: usize, x: usize, y: usize| (s * (d + 1) + x) * (d + 1) + y;
        let size = 7 * (d + 1) * (d + 1);
        let mut cur = vec![BigInt::zero(); size];
        cur[idx(EMPTY, 0, 0)] = BigInt::one();
        let mut log = vec![BigRational::zero(); size];
        for n in 1..=d {
            let mut next = vec![BigInt::zero(); size];
            for s in 0..7 {
                for x in 0..=d {
                    for y in 0..=d - x {
                        let c = &cur[idx(s, x, y)];
                        if c.is_zero() {
                            continue;
                        }
                        let room = d - x - y;
                        for a in 0..=room {
                            for b in 0..=room - a {
                                if a + b == 0 {
                                    continue;
                                }
                                let t = append_block(s, a, b);
                                let w = binom[x + a][a] * binom[y + b][b];
                                next[idx(t, x + a, y + b)] += c * w;
                            }
                        }
                    }
                }
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            for state in [XY, YX] {
                for x in 0..=d {
                    for y in 0..=d - x {
                        let c = &next[idx(state, x, y)];
                        if !c.is_zero() {
                            log[idx(state, x, y)] +=
                                BigRational::new(c * sign, BigInt::from(n));
                        }
                    }
                }
            }
            cur = next;
        }
        let fact = factorials(d);
        for state in [XY, YX] {
            for x in 0..=d {
                for y in 0..=d - x {
                    let l = &mut log[idx(state, x, y)];
                    if !l.is_zero() {
                        *l /= BigRational::from_integer(&fact[x] * &fact[y]);
                    }
                }
            }
        }
        let mut coeffs = empty_table(d);
        for (a, row) in coeffs.iter_mut().enumerate() {
            for (b, c) in row.iter_mut().enumerate() {
                let m = a + b + 2;
                let diff = &log[idx(XY, a + 1, b + 1)] - &log[idx(YX, a + 1, b + 1)];
                *c = diff / BigRational::from_integer(BigInt::from(m));
            }
        }
        Self {
            max_degree: d,
            coeffs,
        }
    }

    pub fn coefficient(&self, a: usize, b: usize) -> &BigRational {
        &self.coeffs[a][b]
    }

    /// Largest `v_p` of a coefficient denominator in degree `m`.
    pub fn denominator_valuation(&self, m: usize, p: u64) -> u32 {
        if m < 2 || m > self.max_degree {
            return 0;
        }
        (0..=m - 2)
            .map(|a| &self.coeffs[a][m - 2 - a])
            .filter(|c| !c.is_zero())
            .map(|c| bigint_valuation(c.denom(), p))
            .max()
            .unwrap_or(0)
    }

    /// Restriction to a lower degree.
    pub fn truncate(&self, max_degree: usize) -> Self {
        let mut coeffs = empty_table(max_degree);
        for (a, row) in coeffs.iter_mut().enumerate() {
            for (b, c) in row.iter_mut().enumerate() {
                *c = self.coeffs[a][b].clone();
            }
        }
        Self { max_degree, coeffs }
    }

    pub fn evaluator(&self, ctx: PAdicContext) -> MetabelianEvaluator {
        let mut terms = Vec::new();
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((a, b, ctx.from_rational(c)));
                }
            }
        }
        MetabelianEvaluator {
            max_degree: self.max_degree,
            terms,
        }
    }
}

/// Cached metabelian coefficients by degree.
pub fn cached_metabelian(max_degree: usize) -> Arc<MetabelianBch> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<MetabelianBch>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&max_degree) {
        return s.clone();
    }
    // reuse a larger table when one exists
    let larger = cache
        .lock()
        .unwrap()
        .iter()
        .filter(|(d, _)| **d > max_degree)
        .map(|(_, s)| s.clone())
        .next();
    let s = Arc::new(match larger {
        Some(l) => l.truncate(max_degree),
        None => {
            // one generous table serves every smaller request
            let top = max_degree.clamp(32, MAX_METABELIAN_DEGREE);
            let full = Arc::new(MetabelianBch::generate(top));
            cache.lock().unwrap().insert(top, full.clone());
            if top == max_degree {
                return full;
            }
            full.truncate(max_degree)
        }
    });
    cache.lock().unwrap().insert(max_degree, s.clone());
    s
}

/// Metabelian coefficients mapped into `Q_p`.
#[derive(Debug, Clone)]
pub struct MetabelianEvaluator {
    pub max_degree: usize,
    terms: Vec<(usize, usize, PAdic)>,
}

impl MetabelianEvaluator {
    pub fn eval(&self, alg: &LieAlgebra, u: &LieVector, v: &LieVector) -> Result<LieVector> {
        let mut acc = u.add(v);
        let w0 = alg.bracket(u, v)?;
        if w0.is_zero() || self.max_degree < 2 {
            return Ok(acc);
        }
        let n = self.max_degree - 1;
        // chain[a][b] = ad_u^a ad_v^b [u, v]
        let mut chain: Vec<Vec<LieVector>> = Vec::with_capacity(n);
        let mut col = Vec::with_capacity(n);
        col.push(w0);
        for b in 1..n {
            let next = alg.bracket(&col[b - 1], v)?;
            col.push(next);
        }
        chain.push(col);
        for a in 1..n {
            let mut row = Vec::with_capacity(n - a);
            for prev in &chain[a - 1][..n - a] {
                row.push(alg.bracket(prev, u)?);
            }
            chain.push(row);
        }
        for (a, b, c) in &self.terms {
            let t = &chain[*a][*b];
            if t.is_zero() {
                continue;
            }
            let term = t.scale(c);
            if !term.is_integral() {
                return Err(Error::Certificate {
                    degree: a + b + 2,
                    valuation: term.valuation(),
                });
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// `floor((m-1)/(p-1)) + floor(log_p m)`, an upper bound for `v_p` of every
/// Dynkin coefficient denominator in degree `m`.
pub fn denominator_envelope(m: usize, p: u64) -> u32 {
    let mut log = 0u32;
    let mut pw = p as usize;
    while pw <= m {
        log += 1;
        pw = pw.saturating_mul(p as usize);
    }
    ((m - 1) as u64 / (p - 1)) as u32 + log
}

/// One row of the certificate table.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DegreeBound {
    pub degree: usize,
    pub envelope: u32,
    /// `m * v0 - envelope`.
    pub bound: i64,
    /// Largest denominator valuation actually present, when computed.
    pub actual: Option<u32>,
}

/// Why truncating at `degree` is sound: every discarded degree-`m` term has
/// valuation at least `m * v0 - envelope(m) >= target`, valuations being
/// measured on elements of valuation `>= v0` in an algebra with integral
/// structure constants.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TruncationCertificate {
    pub p: u64,
    pub target: u32,
    pub v0: u32,
    pub degree: usize,
    pub table: Vec<DegreeBound>,
}

impl TruncationCertificate {
    /// Fills in the actual denominator valuations reported by `actual` and
    /// checks them against the envelope.
    pub fn spot_check(&mut self, actual: impl Fn(usize) -> Option<u32>) -> bool {
        let mut ok = true;
        for row in &mut self.table {
            if row.degree >= 2 {
                if let Some(a) = actual(row.degree) {
                    ok &= a <= row.envelope;
                    row.actual = Some(a);
                }
            }
        }
        ok
    }
}

/// Smallest `D` such that all terms of degree `> D` are `0 mod p^target`
/// for inputs of valuation `>= v0`.
pub fn truncation_degree(p: u64, target: u32, v0: u32) -> Result<TruncationCertificate> {
    let min_v0 = if p == 2 { 2 } else { 1 };
    if v0 < min_v0 {
        return Err(Error::NoConvergence { p, v0 });
    }
    let bound = |m: usize| v0 as i64 * m as i64 - denominator_envelope(m, p) as i64;
    // bound(m) >= (v0 - 1/(p-1)) m - log_p m, so beyond this every m passes
    let horizon = 4 * (target as usize + 8) * (p as usize) + 64;
    let mut degree = 1;
    for m in 2..=horizon {
        if bound(m) < target as i64 {
            degree = m;
        }
    }
    let table = (1..=degree + 2)
        .map(|m| DegreeBound {
            degree: m,
            envelope: denominator_envelope(m, p),
            bound: bound(m),
            actual: None,
        })
        .collect();
    Ok(TruncationCertificate {
        p,
        target,
        v0,
        degree,
        table,
    })
}

/// `BCH(u, v)` on a powerful algebra, truncated at degree `max_degree`.
/// Metabelian algebras use the collected coefficients; others walk the
/// full word expansion.
pub fn bch_eval(alg: &LieAlgebra, u: &LieVector, v: &LieVector, max_degree: usize) -> Result<LieVector> {
    if !alg.is_powerful() {
        return Err(Error::NotPowerful);
    }
    if !u.is_integral() || !v.is_integral() {
        return Err(Error::Invalid("Campbell-Hausdorff inputs must be integral".into()));
    }
    if alg.is_metabelian() {
        cached_metabelian(max_degree).evaluator(alg.ctx()).eval(alg, u, v)
    } else {
        cached_series(max_degree).eval(alg, u, v)
    }
}

/// Rational number helper for tests and dumps.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// True when the coefficient is a nonzero rational with negative sign.
pub fn is_negative(c: &BigRational) -> bool {
    c.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two_is_half_commutator() {
        let s = bch_coefficients(2);
        let t: Vec<_> = s.terms_of_degree(2).collect();
        // (1/2)[X,Y] comes out as (1/4)[X,Y] - (1/4)[Y,X] in Dynkin form
        assert_eq!(t.len(), 2);
        let m = s.metabelian_collect();
        assert_eq!(m.coefficient(0, 0), &ratio(1, 2));
    }

    #[test]
    fn degree_three_collected() {
        let m = bch_coefficients(3).metabelian_collect();
        // (1/12)[X,[X,Y]] + (1/12)[Y,[Y,X]] = -(1/12)[[X,Y],X] + (1/12)[[X,Y],Y]
        assert_eq!(m.coefficient(1, 0), &ratio(-1, 12));
        assert_eq!(m.coefficient(0, 1), &ratio(1, 12));
    }

    #[test]
    fn collection_routes_agree() {
        for d in 2..=10 {
            let via_words = bch_coefficients(d).metabelian_collect();
            let via_blocks = MetabelianBch::generate(d);
            assert_eq!(via_words, via_blocks, "degree {d}");
        }
    }

    #[test]
    fn degree_four_has_single_collected_term() {
        // degree 4 of BCH is -(1/24)[Y,[X,[X,Y]]]
        let m = MetabelianBch::generate(4);
        assert_eq!(m.coefficient(2, 0), &ratio(0, 1));
        assert_eq!(m.coefficient(0, 2), &ratio(0, 1));
        assert_eq!(m.coefficient(1, 1), &ratio(-1, 24));
    }

    #[test]
    fn word_round_trip() {
        let w = Word::parse("XYYX").unwrap();
        assert_eq!(w.to_string(), "XYYX");
        assert_eq!(w.letter(1), 1);
        assert!(Word::parse("XZ").is_none());
    }

    #[test]
    fn envelope_bounds_actual_denominators() {
        let s = bch_coefficients(12);
        for p in [2u64, 3, 5, 7, 11] {
            for m in 2..=12 {
                assert!(
                    s.denominator_valuation(m, p) <= denominator_envelope(m, p),
                    "p = {p}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn truncation_examples() {
        let c5 = truncation_degree(5, 24, 2).unwrap();
        assert!(c5.degree <= 14);
        assert!(c5.table.iter().filter(|r| r.degree > c5.degree).all(|r| r.bound >= 24));
        let c3 = truncation_degree(3, 24, 2).unwrap();
        assert!(c3.degree > c5.degree);
        assert_eq!(truncation_degree(3, 1, 1).unwrap().degree, 1);
        assert_eq!(truncation_degree(2, 1, 2).unwrap().degree, 1);
        assert!(matches!(truncation_degree(2, 24, 1), Err(Error::NoConvergence { .. })));
    }
}
