//! Fixed-precision arithmetic in `Z_p` and `Q_p`.
//!
//! A nonzero [`PAdic`] is `p^v * u` where `u` is a unit known modulo `p^N`
//! (`N` significant digits).  Zero has a single canonical representation.
//! Sums are correct modulo `p^(N + min valuation)`; products and quotients
//! keep `N` significant digits.  Precision lost to cancellation is not
//! tracked per value, so callers compare results with [`PAdic::agrees_mod`]
//! at a precision they can justify.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Working precision used when nothing else is requested.
pub const DEFAULT_PRECISION: u32 = 24;

/// Valuation reported for zero.
pub const INFINITE_VALUATION: i32 = i32::MAX;

const MODULUS_BITS_LIMIT: u32 = 96;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("working precision must be at least 1")]
    ZeroPrecision,
    #[error("p^N = {p}^{prec} does not fit the 96-bit residue representation")]
    PrecisionTooLarge { p: u64, prec: u32 },
    #[error("operands live in different p-adic contexts")]
    ContextMismatch,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("valuation {valuation} is below the required {required}")]
    ValuationTooSmall { valuation: i32, required: i32 },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("exponential series does not converge: entry valuation {0} < 2")]
    ExpDoesNotConverge(i32),
    #[error("cannot parse p-adic number from {0:?}")]
    Parse(String),
}

/// The prime `p` and the number of significant digits `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicContext {
    p: u64,
    prec: u32,
    modulus: u128,
}

impl PAdicContext {
    pub fn new(p: u64, prec: u32) -> Result<Self, PadicError> {
        if !is_prime(p) {
            return Err(PadicError::NotPrime(p));
        }
        if prec == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        let limit = 1u128 << MODULUS_BITS_LIMIT;
        let mut modulus: u128 = 1;
        for _ in 0..prec {
            modulus = modulus
                .checked_mul(p as u128)
                .filter(|m| *m < limit)
                .ok_or(PadicError::PrecisionTooLarge { p, prec })?;
        }
        Ok(Self { p, prec, modulus })
    }

    pub fn with_default_precision(p: u64) -> Result<Self, PadicError> {
        Self::new(p, DEFAULT_PRECISION)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of significant p-adic digits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `p^N`.
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// `p^k` as an integer, for `k <= N`.
    pub fn pow_p(&self, k: u32) -> u128 {
        assert!(k <= self.prec, "p^{k} exceeds the working modulus");
        (self.p as u128).pow(k)
    }

    pub fn zero(&self) -> PAdic {
        PAdic {
            ctx: *self,
            val: INFINITE_VALUATION,
            unit: 0,
        }
    }

    pub fn one(&self) -> PAdic {
        PAdic {
            ctx: *self,
            val: 0,
            unit: 1,
        }
    }

    /// `p^k` for any integer `k` (negative `k` gives an element of `Q_p`).
    pub fn p_power(&self, k: i32) -> PAdic {
        PAdic {
            ctx: *self,
            val: k,
            unit: 1,
        }
    }

    pub fn from_i64(&self, n: i64) -> PAdic {
        let r = if n >= 0 {
            n as u128 % self.modulus
        } else {
            let m = (n.unsigned_abs() as u128) % self.modulus;
            (self.modulus - m) % self.modulus
        };
        self.from_residue(r)
    }

    /// Element of `Z_p` from a residue; digits above `p^N` are dropped.
    pub fn from_residue(&self, r: u128) -> PAdic {
        normalize(*self, 0, r % self.modulus)
    }

    pub fn from_bigint(&self, n: &BigInt) -> PAdic {
        if n.is_zero() {
            return self.zero();
        }
        let p = BigInt::from(self.p);
        let mut m = n.clone();
        let mut val = 0i32;
        loop {
            let (q, r) = m.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            m = q;
            val += 1;
        }
        let modulus = BigInt::from(self.modulus);
        let r = m.mod_floor(&modulus);
        let r = r.to_u128().expect("residue below modulus");
        PAdic {
            ctx: *self,
            val,
            unit: r,
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> PAdic {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.div(&den).expect("rational with nonzero denominator")
    }

    /// Parses a decimal integer (`-17`) or a little-endian digit string
    /// `d0.d1.d2...`, optionally prefixed by `p^k*` to shift the valuation.
    pub fn parse(&self, s: &str) -> Result<PAdic, PadicError> {
        let s = s.trim();
        let err = || PadicError::Parse(s.to_string());
        if let Some(rest) = s.strip_prefix("p^") {
            let (exp, digits) = rest.split_once('*').ok_or_else(err)?;
            let k: i32 = exp.parse().map_err(|_| err())?;
            let base = self.parse(digits)?;
            return Ok(base.mul(&self.p_power(k)));
        }
        if s.contains('.') {
            let mut acc = self.zero();
            for (i, d) in s.split('.').enumerate() {
                let d: u64 = d.parse().map_err(|_| err())?;
                if d >= self.p {
                    return Err(err());
                }
                if d != 0 {
                    acc = acc.add(&self.from_i64(d as i64).mul(&self.p_power(i as i32)));
                }
            }
            return Ok(acc);
        }
        let n: BigInt = s.parse().map_err(|_| err())?;
        Ok(self.from_bigint(&n))
    }

    fn mulmod(&self, a: u128, b: u128) -> u128 {
        let m = self.modulus;
        if m <= u64::MAX as u128 {
            return a * b % m;
        }
        // m < 2^96: r << 32 and chunk * b both stay below 2^128
        let mut r: u128 = 0;
        for shift in (0..3).rev() {
            let chunk = (a >> (32 * shift)) & 0xffff_ffff;
            r = (r << 32) % m;
            r = (r + chunk * b % m) % m;
        }
        r
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn normalize(ctx: PAdicContext, val: i32, residue: u128) -> PAdic {
    if residue == 0 {
        return ctx.zero();
    }
    let p = ctx.p as u128;
    let mut r = residue;
    let mut v = val;
    while r.is_multiple_of(p) {
        r /= p;
        v += 1;
    }
    PAdic {
        ctx,
        val: v,
        unit: r,
    }
}

/// An element of `Q_p` at the working precision of its context.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdic {
    ctx: PAdicContext,
    val: i32,
    unit: u128,
}

impl PAdic {
    pub fn ctx(&self) -> PAdicContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    pub fn is_unit(&self) -> bool {
        self.val == 0
    }

    /// `v_p(self)`, or [`INFINITE_VALUATION`] for zero.
    pub fn valuation(&self) -> i32 {
        self.val
    }

    /// The unit part `u` of `p^v u`, as a residue modulo `p^N` (0 for zero).
    pub fn unit(&self) -> u128 {
        self.unit
    }

    pub fn is_integral(&self) -> bool {
        self.val >= 0
    }

    fn check(&self, other: &PAdic) -> Result<(), PadicError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PadicError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &PAdic) -> Result<PAdic, PadicError> {
        self.check(other)?;
        if self.is_zero() {
            return Ok(*other);
        }
        if other.is_zero() {
            return Ok(*self);
        }
        let (lo, hi) = if self.val <= other.val {
            (self, other)
        } else {
            (other, self)
        };
        let shift = (hi.val as i64 - lo.val as i64) as u64;
        if shift >= self.ctx.prec as u64 {
            return Ok(*lo);
        }
        let m = self.ctx.modulus;
        let scaled = self.ctx.mulmod(hi.unit, self.ctx.pow_p(shift as u32));
        Ok(normalize(self.ctx, lo.val, (lo.unit + scaled) % m))
    }

    pub fn checked_sub(&self, other: &PAdic) -> Result<PAdic, PadicError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &PAdic) -> Result<PAdic, PadicError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ctx.zero());
        }
        Ok(PAdic {
            ctx: self.ctx,
            val: self.val + other.val,
            unit: self.ctx.mulmod(self.unit, other.unit),
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &PAdic) -> PAdic {
        self.checked_add(other).expect("p-adic context mismatch")
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &PAdic) -> PAdic {
        self.checked_sub(other).expect("p-adic context mismatch")
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &PAdic) -> PAdic {
        self.checked_mul(other).expect("p-adic context mismatch")
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> PAdic {
        if self.is_zero() {
            return *self;
        }
        PAdic {
            unit: self.ctx.modulus - self.unit,
            ..*self
        }
    }

    /// Multiplicative inverse; `p^v u` maps to `p^-v u^-1`.
    pub fn inverse(&self) -> Result<PAdic, PadicError> {
        if self.is_zero() {
            return Err(PadicError::ZeroInverse);
        }
        Ok(PAdic {
            ctx: self.ctx,
            val: -self.val,
            unit: self.unit_inverse_residue(),
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(&self, other: &PAdic) -> Result<PAdic, PadicError> {
        self.check(other)?;
        Ok(self.mul(&other.inverse()?))
    }

    fn unit_inverse_residue(&self) -> u128 {
        let ctx = &self.ctx;
        let p = ctx.p as i128;
        // inverse mod p by extended Euclid, then Newton lifting to p^N
        let a0 = (self.unit % ctx.p as u128) as i128;
        let (mut r0, mut r1) = (a0, p);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        let mut x = s0.rem_euclid(p) as u128;
        let m = ctx.modulus;
        let mut known = 1u32;
        while known < ctx.prec {
            let ax = ctx.mulmod(self.unit % m, x);
            let corr = (2 + m - ax) % m;
            x = ctx.mulmod(x, corr);
            known *= 2;
        }
        x
    }

    /// Divides by `p^n`.  With `require_integral` the result must stay in
    /// `Z_p`, i.e. `v_p(self) >= n`.
    pub fn divide_by_p_power(&self, n: u32, require_integral: bool) -> Result<PAdic, PadicError> {
        if self.is_zero() {
            return Ok(*self);
        }
        if require_integral && self.val < n as i32 {
            return Err(PadicError::ValuationTooSmall {
                valuation: self.val,
                required: n as i32,
            });
        }
        Ok(PAdic {
            val: self.val - n as i32,
            ..*self
        })
    }

    /// `p^n * self`.
    pub fn mul_p_power(&self, n: i32) -> PAdic {
        if self.is_zero() {
            return *self;
        }
        PAdic {
            val: self.val + n,
            ..*self
        }
    }

    pub fn pow(&self, mut e: u64) -> PAdic {
        let mut base = *self;
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// True when `self ≡ other (mod p^m)`.
    pub fn agrees_mod(&self, other: &PAdic, m: i32) -> bool {
        self.sub(other).valuation() >= m
    }

    /// The value modulo `p^j` as an integer in `[0, p^j)`.  Requires the
    /// element to be integral and `j <= N + valuation` to be meaningful.
    pub fn residue_mod_pow(&self, j: u32) -> Result<u128, PadicError> {
        if self.is_zero() || self.val >= j as i32 {
            return Ok(0);
        }
        if self.val < 0 {
            return Err(PadicError::ValuationTooSmall {
                valuation: self.val,
                required: 0,
            });
        }
        let p = self.ctx.p as u128;
        let modj = p.checked_pow(j).ok_or(PadicError::PrecisionTooLarge {
            p: self.ctx.p,
            prec: j,
        })?;
        let keep = j - self.val as u32;
        let unit = if keep < self.ctx.prec {
            self.unit % self.ctx.pow_p(keep)
        } else {
            self.unit
        };
        Ok(BigInt::from(unit)
            .checked_mul(&BigInt::from(p.pow(self.val as u32)))
            .and_then(|v| (v % BigInt::from(modj)).to_u128())
            .expect("residue fits"))
    }

    /// Residue modulo `p^N` for integral elements.
    pub fn residue(&self) -> Result<u128, PadicError> {
        self.residue_mod_pow(self.ctx.prec)
    }

    /// The integral representative in `(-p^N/2, p^N/2]` when the element is
    /// integral.
    pub fn to_symmetric_i128(&self) -> Option<i128> {
        let r = self.residue().ok()?;
        let m = self.ctx.modulus;
        if r <= m / 2 {
            Some(r as i128)
        } else {
            Some(-((m - r) as i128))
        }
    }

    /// Little-endian base-p digits of an integral element, `count` digits.
    pub fn digits(&self, count: u32) -> Vec<u64> {
        let mut out = Vec::with_capacity(count as usize);
        if self.is_zero() {
            out.resize(count as usize, 0);
            return out;
        }
        let p = self.ctx.p as u128;
        let lead = self.val.max(0) as u32;
        for i in 0..count {
            if i < lead {
                out.push(0);
            } else {
                let k = i - lead;
                if k >= self.ctx.prec {
                    out.push(0);
                } else {
                    out.push(((self.unit / p.pow(k)) % p) as u64);
                }
            }
        }
        out
    }

    /// Canonical text form: `0`, a digit string `d0.d1...` covering every
    /// known digit of an integral element, or `p^k*<digits of the unit>` for
    /// negative valuation.  [`PAdicContext::parse`] reads it back.
    pub fn to_digit_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.val < 0 {
            let unit = PAdic { val: 0, ..*self };
            return format!("p^{}*{}", self.val, unit.to_digit_string());
        }
        let n = self.val as u32 + self.ctx.prec;
        let mut digits = self.digits(n);
        while digits.len() > 1 && digits.last() == Some(&0) {
            digits.pop();
        }
        digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// The same residue data in another context of the same prime; lifting to
    /// a higher precision pads the unit with zero digits.
    pub fn change_precision(&self, ctx: PAdicContext) -> Result<PAdic, PadicError> {
        if ctx.p != self.ctx.p {
            return Err(PadicError::ContextMismatch);
        }
        if self.is_zero() {
            return Ok(ctx.zero());
        }
        Ok(PAdic {
            ctx,
            val: self.val,
            unit: self.unit % ctx.modulus,
        })
    }

    /// Same value at a lower precision.
    pub fn reduce_precision(&self, ctx: PAdicContext) -> Result<PAdic, PadicError> {
        if ctx.p != self.ctx.p || ctx.prec > self.ctx.prec {
            return Err(PadicError::ContextMismatch);
        }
        if self.is_zero() {
            return Ok(ctx.zero());
        }
        Ok(PAdic {
            ctx,
            val: self.val,
            unit: self.unit % ctx.modulus,
        })
    }
}

impl fmt::Debug for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}^{}*{}", self.ctx.p, self.val, self.unit)
        }
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_symmetric_i128() {
            Some(v) if v.unsigned_abs() < 1 << 40 => write!(f, "{v}"),
            _ => write!(f, "{}", self.to_digit_string()),
        }
    }
}

impl<'a> Add<&'a PAdic> for &'a PAdic {
    type Output = PAdic;
    fn add(self, rhs: &PAdic) -> PAdic {
        PAdic::add(self, rhs)
    }
}

impl<'a> Sub<&'a PAdic> for &'a PAdic {
    type Output = PAdic;
    fn sub(self, rhs: &PAdic) -> PAdic {
        PAdic::sub(self, rhs)
    }
}

impl<'a> Mul<&'a PAdic> for &'a PAdic {
    type Output = PAdic;
    fn mul(self, rhs: &PAdic) -> PAdic {
        PAdic::mul(self, rhs)
    }
}

impl Neg for &PAdic {
    type Output = PAdic;
    fn neg(self) -> PAdic {
        PAdic::neg(self)
    }
}

impl AddAssign<&PAdic> for PAdic {
    fn add_assign(&mut self, rhs: &PAdic) {
        *self = PAdic::add(self, rhs);
    }
}

impl SubAssign<&PAdic> for PAdic {
    fn sub_assign(&mut self, rhs: &PAdic) {
        *self = PAdic::sub(self, rhs);
    }
}

/// `v_p(n)` for a nonzero big integer.
pub fn bigint_valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    while (&m % &p).is_zero() {
        m /= &p;
        v += 1;
    }
    v
}

/// Sign of a big integer as -1, 0, 1.
pub fn bigint_sign(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Dense matrix over `Q_p`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PAdicMatrix {
    ctx: PAdicContext,
    rows: usize,
    cols: usize,
    data: Vec<PAdic>,
}

impl fmt::Debug for PAdicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl PAdicMatrix {
    pub fn zeros(ctx: PAdicContext, rows: usize, cols: usize) -> Self {
        Self {
            ctx,
            rows,
            cols,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    pub fn identity(ctx: PAdicContext, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn from_fn(
        ctx: PAdicContext,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> PAdic,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.ctx, ctx, "entry context differs from matrix context");
                data.push(x);
            }
        }
        Self {
            ctx,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(ctx: PAdicContext, rows: &[Vec<PAdic>]) -> Result<Self, PadicError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(PadicError::DimensionMismatch("ragged rows".into()));
        }
        if rows.iter().flatten().any(|x| x.ctx != ctx) {
            return Err(PadicError::ContextMismatch);
        }
        Ok(Self {
            ctx,
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn from_i64_rows(ctx: PAdicContext, rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<PAdic>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| ctx.from_i64(x)).collect())
            .collect();
        Self::from_rows(ctx, &v).expect("rectangular literal")
    }

    pub fn ctx(&self) -> PAdicContext {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> PAdic {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: PAdic) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[PAdic] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ctx, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, s: &PAdic) -> Self {
        Self {
            data: self.data.iter().map(|x| x.mul(s)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            data: self.data.iter().map(PAdic::neg).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.same_shape(other)?;
        Ok(Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        self.add(&other.neg())
    }

    fn same_shape(&self, other: &Self) -> Result<(), PadicError> {
        if self.ctx != other.ctx {
            return Err(PadicError::ContextMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PadicError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, PadicError> {
        if self.ctx != other.ctx {
            return Err(PadicError::ContextMismatch);
        }
        if self.cols != other.rows {
            return Err(PadicError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j);
                        out.set(i, j, cur.add(&a.mul(&b)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[PAdic]) -> Vec<PAdic> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.ctx.zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// Smallest valuation over all entries.
    pub fn min_valuation(&self) -> i32 {
        self.data
            .iter()
            .map(PAdic::valuation)
            .min()
            .unwrap_or(INFINITE_VALUATION)
    }

    /// True when every entry agrees with `other` modulo `p^m`.
    pub fn agrees_mod(&self, other: &Self, m: i32) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.agrees_mod(b, m))
    }

    pub fn trace(&self) -> Result<PAdic, PadicError> {
        self.require_square()?;
        Ok((0..self.rows).fold(self.ctx.zero(), |acc, i| acc.add(&self.get(i, i))))
    }

    fn require_square(&self) -> Result<(), PadicError> {
        if self.rows != self.cols {
            Err(PadicError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        } else {
            Ok(())
        }
    }

    /// Determinant.  Sizes up to 3 use cofactor expansion; larger matrices
    /// use fraction-free (Bareiss) elimination with minimal-valuation
    /// pivoting, where each division by the previous pivot is exact.
    pub fn determinant(&self) -> Result<PAdic, PadicError> {
        self.require_square()?;
        let n = self.rows;
        match n {
            0 => Ok(self.ctx.one()),
            1 => Ok(self.get(0, 0)),
            2 => Ok(self
                .get(0, 0)
                .mul(&self.get(1, 1))
                .sub(&self.get(0, 1).mul(&self.get(1, 0)))),
            3 => {
                let m = |i, j| self.get(i, j);
                let minor = |a: usize, b: usize| m(1, a).mul(&m(2, b)).sub(&m(1, b).mul(&m(2, a)));
                Ok(m(0, 0)
                    .mul(&minor(1, 2))
                    .sub(&m(0, 1).mul(&minor(0, 2)))
                    .add(&m(0, 2).mul(&minor(0, 1))))
            }
            _ => Ok(self.bareiss()),
        }
    }

    fn bareiss(&self) -> PAdic {
        let n = self.rows;
        let mut a: Vec<Vec<PAdic>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign_flip = false;
        let mut prev = self.ctx.one();
        for k in 0..n - 1 {
            let pivot_row = (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| a[r][k].valuation());
            let Some(pr) = pivot_row else {
                return self.ctx.zero();
            };
            if pr != k {
                a.swap(pr, k);
                sign_flip = !sign_flip;
            }
            let pivot = a[k][k];
            let prev_inv = prev.inverse().expect("nonzero previous pivot");
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot.mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = v.mul(&prev_inv);
                }
                a[i][k] = self.ctx.zero();
            }
            prev = pivot;
        }
        let det = a[n - 1][n - 1];
        if sign_flip {
            det.neg()
        } else {
            det
        }
    }

    /// Determinant and trace together.
    pub fn det_trace(&self) -> Result<(PAdic, PAdic), PadicError> {
        Ok((self.determinant()?, self.trace()?))
    }

    /// Matrix exponential `sum M^k / k!`.  Every entry must have valuation at
    /// least 1 (2 when p = 2), which makes `v_p(M^k / k!) >= vk - (k-1)/(p-1)`
    /// grow without bound; the sum stops once that bound reaches `N`.
    pub fn exp(&self) -> Result<Self, PadicError> {
        self.require_square()?;
        let v = self.min_valuation();
        let need = if self.ctx.p == 2 { 2 } else { 1 };
        if v < need {
            return Err(PadicError::ExpDoesNotConverge(v));
        }
        let n = self.rows;
        let prec = self.ctx.prec as i64;
        let p = self.ctx.p as i64;
        let mut result = Self::identity(self.ctx, n);
        if v == INFINITE_VALUATION {
            return Ok(result);
        }
        let mut term = Self::identity(self.ctx, n);
        let mut k: i64 = 1;
        loop {
            // lower bound on v_p(M^k/k!) for this and all later k
            let bound = v as i64 * k - (k - 1) / (p - 1);
            if bound >= prec {
                break;
            }
            let inv_k = self.ctx.from_i64(k).inverse().expect("k > 0");
            term = term.matmul(self)?.scale(&inv_k);
            result = result.add(&term)?;
            k += 1;
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, n: u32) -> PAdicContext {
        PAdicContext::new(p, n).unwrap()
    }

    fn random_unit(c: PAdicContext, rng: &mut impl Rng) -> PAdic {
        loop {
            let r = rng.gen_range(1..c.modulus());
            if r % c.p() as u128 != 0 {
                return c.from_residue(r);
            }
        }
    }

    #[test]
    fn context_rejects_non_primes_and_huge_moduli() {
        assert_eq!(PAdicContext::new(4, 3), Err(PadicError::NotPrime(4)));
        assert_eq!(PAdicContext::new(5, 0), Err(PadicError::ZeroPrecision));
        assert!(matches!(
            PAdicContext::new(7, 40),
            Err(PadicError::PrecisionTooLarge { .. })
        ));
        assert!(PAdicContext::new(7, 24).is_ok());
    }

    #[test]
    fn addition_carries() {
        let c = ctx(5, 24);
        let s = c.from_i64(1).add(&c.from_i64(4));
        assert_eq!(s.valuation(), 1);
        assert_eq!(s.unit(), 1);
    }

    #[test]
    fn zero_absorbs() {
        let c = ctx(5, 24);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = random_unit(c, &mut rng).mul_p_power(rng.gen_range(-3..5));
            assert!(x.mul(&c.zero()).is_zero());
        }
    }

    #[test]
    fn small_products_match_integers() {
        let c = ctx(5, 4);
        assert_eq!(c.from_i64(2).mul(&c.from_i64(3)), c.from_i64(6));
        assert_eq!(c.from_i64(6).residue().unwrap(), 6);
    }

    #[test]
    fn inverse_of_two_mod_125() {
        let c = ctx(5, 3);
        let inv = c.from_i64(2).inverse().unwrap();
        assert_eq!(inv.residue().unwrap(), 63);
        assert_eq!(c.one().inverse().unwrap(), c.one());
        assert_eq!(c.zero().inverse(), Err(PadicError::ZeroInverse));
    }

    #[test]
    fn inverse_of_non_unit_has_negative_valuation() {
        let c = ctx(5, 10);
        let u = c.from_i64(7);
        let inv = u.mul_p_power(1).inverse().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.unit(), u.inverse().unwrap().unit());
    }

    #[test]
    fn valuations() {
        let c = ctx(3, 24);
        assert_eq!(c.zero().valuation(), INFINITE_VALUATION);
        assert_eq!(c.from_i64(9).valuation(), 2);
        // p^2 u + p^5 w
        let v = c.from_i64(9 * 2 + 243 * 4);
        assert_eq!(v.valuation(), 2);
    }

    #[test]
    fn division_by_powers_of_p() {
        let c = ctx(3, 24);
        let u = c.from_i64(7);
        assert_eq!(u.mul_p_power(3).divide_by_p_power(3, true).unwrap(), u);
        assert!(c.zero().divide_by_p_power(5, true).unwrap().is_zero());
        let x = c.from_i64(9 * 7).divide_by_p_power(1, true).unwrap();
        assert_eq!(x, c.from_i64(21));
        assert!(matches!(
            c.from_i64(7).divide_by_p_power(1, true),
            Err(PadicError::ValuationTooSmall { .. })
        ));
        let q = c.from_i64(7).divide_by_p_power(1, false).unwrap();
        assert_eq!(q.valuation(), -1);
    }

    #[test]
    fn large_modulus_multiplication() {
        // 7^24 exceeds 64 bits and exercises the chunked reduction
        let c = ctx(7, 24);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let a = rng.gen_range(0..c.modulus());
            let b = rng.gen_range(0..c.modulus());
            let expect = (BigInt::from(a) * BigInt::from(b)) % BigInt::from(c.modulus());
            assert_eq!(BigInt::from(c.mulmod(a, b)), expect);
        }
    }

    #[test]
    fn digit_strings_round_trip() {
        let c = ctx(5, 6);
        for s in ["0", "1.2.3", "0.0.4.4.4.4.4.4", "-17", "p^-2*3.1"] {
            let x = c.parse(s).unwrap();
            let back = c.parse(&x.to_digit_string()).unwrap();
            assert_eq!(x, back, "{s}");
        }
        assert_eq!(c.parse("3.1").unwrap(), c.from_i64(8));
        assert!(c.parse("7.1").is_err());
    }

    #[test]
    fn rationals_map_into_qp() {
        let c = ctx(3, 10);
        let half = c.from_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(half.mul(&c.from_i64(2)), c.one());
        let third = c.from_rational(&BigRational::new(1.into(), 3.into()));
        assert_eq!(third.valuation(), -1);
    }

    #[test]
    fn identity_det_trace() {
        let c = ctx(5, 24);
        let (d, t) = PAdicMatrix::identity(c, 3).det_trace().unwrap();
        assert_eq!(d, c.one());
        assert_eq!(t, c.from_i64(3));
    }

    #[test]
    fn det_of_non_square_fails() {
        let c = ctx(5, 24);
        assert!(matches!(
            PAdicMatrix::zeros(c, 2, 3).determinant(),
            Err(PadicError::NotSquare { .. })
        ));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let c = ctx(5, 24);
        assert_eq!(PAdicMatrix::zeros(c, 3, 3).exp().unwrap(), PAdicMatrix::identity(c, 3));
    }

    #[test]
    fn exp_of_p_squared_scalar() {
        let c = ctx(5, 6);
        let m = PAdicMatrix::from_i64_rows(c, &[&[25]]);
        let e = m.exp().unwrap();
        // 1 + 25 + 625/2, summed directly
        let expect = c
            .one()
            .add(&c.from_i64(25))
            .add(&c.from_i64(625).mul(&c.from_i64(2).inverse().unwrap()));
        assert!(e.get(0, 0).agrees_mod(&expect, 6));
    }

    #[test]
    fn exp_rejects_low_valuation() {
        let c = ctx(5, 24);
        let m = PAdicMatrix::from_i64_rows(c, &[&[1]]);
        assert_eq!(m.exp(), Err(PadicError::ExpDoesNotConverge(0)));
        let c = ctx(2, 24);
        let m = PAdicMatrix::from_i64_rows(c, &[&[2]]);
        assert_eq!(m.exp(), Err(PadicError::ExpDoesNotConverge(1)));
    }

    #[test]
    fn exp_inverse_identity() {
        let c = ctx(2, 24);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let m = PAdicMatrix::from_fn(c, 3, 3, |_, _| {
                c.from_residue(rng.gen_range(0..c.modulus())).mul_p_power(2)
            });
            let prod = m.exp().unwrap().matmul(&m.neg().exp().unwrap()).unwrap();
            assert!(prod.agrees_mod(&PAdicMatrix::identity(c, 3), 24));
        }
    }
}
