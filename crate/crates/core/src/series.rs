//! Exact truncated power series over the rationals, and generating functions
//! of the form `(A + B·s) / D` with `s = sqrt(1 - 4x)`.
//!
//! A [`TruncatedSeries`] of order `N` knows coefficients `0..=N`. Binary
//! operations truncate to the smaller order of their inputs, and the
//! derivative loses one order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least its constant term");
        Self { coeffs }
    }

    pub fn from_ints<T: Into<BigInt> + Clone>(coeffs: &[T], order: usize) -> Self {
        let mut c: Vec<BigRational> =
            coeffs.iter().take(order + 1).map(|v| BigRational::from_integer(v.clone().into())).collect();
        c.resize(order + 1, BigRational::zero());
        Self { coeffs: c }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(rat(1), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = rat(1);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; panics past the order.
    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let coeffs = (0..=n).map(|i| if i < k { BigRational::zero() } else { self.coeffs[i - k].clone() }).collect();
        Self { coeffs }
    }

    /// Divides by `x^k`; the lowest `k` coefficients must vanish. The order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        let dividend = self.valuation().unwrap_or(usize::MAX);
        if dividend < k || k > self.order() {
            return Err(Error::Valuation { dividend, divisor: k });
        }
        Ok(Self { coeffs: self.coeffs[k..].to_vec() })
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.order()).map(|i| &self.coeffs[i] * rat(i as i64)).collect();
        Self { coeffs }
    }

    /// Exact division. When the divisor has valuation `v > 0`, the dividend's
    /// lowest `v` coefficients must vanish and the result has order `N - v`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        let v = other.valuation().ok_or(Error::Valuation { dividend: 0, divisor: usize::MAX })?;
        let num = self.truncate(n).shift_down(v)?;
        let den = other.truncate(n).shift_down(v)?;
        let m = num.order();
        let lead = den.coeffs[0].clone();
        let mut q: Vec<BigRational> = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let mut acc = num.coeffs[i].clone();
            for j in 1..=i {
                acc -= &den.coeffs[j] * &q[i - j];
            }
            q.push(acc / &lead);
        }
        Ok(Self { coeffs: q })
    }

    /// Square root with constant term 1, by matching coefficients of `r² = self`.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NoSquareRoot);
        }
        let n = self.order();
        let mut r = vec![rat(1)];
        for i in 1..=n {
            let mut acc = self.coeffs[i].clone();
            for j in 1..i {
                acc -= &r[j] * &r[i - j];
            }
            r.push(acc / rat(2));
        }
        Ok(Self { coeffs: r })
    }

    /// Coefficients as integers, failing on a non-integral one.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NotIntegral(c.to_string())) })
            .collect()
    }

    /// `n,coefficient` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,coefficient\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            s.push_str(&format!("{i},{c}\n"));
        }
        s
    }
}

/// `n: coefficient` lines.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{i}: {c}")?;
        }
        Ok(())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries { coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..=i {
                    if !self.coeffs[j].is_zero() && !rhs.coeffs[i - j].is_zero() {
                        acc += &self.coeffs[j] * &rhs.coeffs[i - j];
                    }
                }
                acc
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: Self) -> TruncatedSeries { (&self).$m(&rhs) }
        }
        impl $tr<&TruncatedSeries> for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: &TruncatedSeries) -> TruncatedSeries { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// `s = sqrt(1 - 4x)` to order `order`; every coefficient is an integer.
pub fn sqrt_1m4x(order: usize) -> TruncatedSeries {
    let one_minus_4x = TruncatedSeries::from_ints(&[1, -4], order);
    one_minus_4x.sqrt().expect("constant term is 1")
}

/// Catalan generating function `c = (1 - s) / (2x)` to order `order`.
pub fn catalan_gf(order: usize) -> TruncatedSeries {
    let s = sqrt_1m4x(order + 1);
    let num = &TruncatedSeries::one(order + 1) - &s;
    num.shift_down(1).expect("1 - s has no constant term").scale(&BigRational::new(1.into(), 2.into()))
}

/// Integer polynomial, coefficients lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = Self(coeffs.into_iter().map(Into::into).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly::new(self.0.iter().map(|c| c * k))
    }

    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_ints(&self.0, order)
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().cloned().map(BigRational::from_integer).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

// Dense rational polynomial helpers for the normal-form gcd.
fn rtrim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rdivmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = rtrim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let k = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &k * c;
        }
        q[shift] = k;
        r = rtrim(r);
    }
    (rtrim(q), r)
}

fn rgcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (mut a, mut b) = (rtrim(a.to_vec()), rtrim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = rdivmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// `(A + B·s) / D` with `s = sqrt(1 - 4x)` and integer polynomials `A, B, D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicGF {
    pub a: Poly,
    pub b: Poly,
    pub d: Poly,
}

impl AlgebraicGF {
    /// Builds the reduced form: no common factor of positive degree, no common
    /// integer content, and the lowest nonzero coefficient of `D` positive.
    pub fn new(a: Poly, b: Poly, d: Poly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut g = rgcd(&a.to_rational(), &b.to_rational());
        g = rgcd(&g, &d.to_rational());
        let (a, b, d) = if g.len() > 1 {
            let parts: Vec<Vec<BigRational>> =
                [&a, &b, &d].iter().map(|p| rdivmod(&p.to_rational(), &g).0).collect();
            // One common rescale so the quotient keeps its value.
            let lcm = parts.iter().flatten().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            let k = BigRational::from_integer(lcm);
            let fix = |v: &[BigRational]| Poly::new(v.iter().map(|c| (c * &k).to_integer()));
            (fix(&parts[0]), fix(&parts[1]), fix(&parts[2]))
        } else {
            (a, b, d)
        };
        let content = a.content().gcd(&b.content()).gcd(&d.content());
        let lowest = d.0.iter().find(|c| !c.is_zero()).expect("d is nonzero");
        let unit = if lowest.is_negative() { -content } else { content };
        let div = |p: &Poly| Poly::new(p.0.iter().map(|c| c / &unit));
        Ok(Self { a: div(&a), b: div(&b), d: div(&d) })
    }

    /// `(A + B·s) / (D·s)`, rationalised to `(B(1-4x) + A·s) / (D(1-4x))`.
    pub fn with_sqrt_denominator(a: Poly, b: Poly, d: Poly) -> Result<Self> {
        let one_m4x = Poly::new([1, -4]);
        Self::new(b.mul(&one_m4x), a, d.mul(&one_m4x))
    }

    /// Parses `(A; B; D)`, each a comma- or space-separated list of integer
    /// coefficients, lowest degree first.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::ParseGf("expected `(A; B; D)`".into()))?;
        let parts: Vec<&str> = inner.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::ParseGf(format!("expected 3 polynomials, found {}", parts.len())));
        }
        let poly = |s: &str| -> Result<Poly> {
            let toks: Vec<&str> = s.split(|c: char| c == ',' || c.is_whitespace()).filter(|w| !w.is_empty()).collect();
            let v: Result<Vec<BigInt>> =
                toks.iter().map(|w| w.parse::<BigInt>().map_err(|_| Error::ParseGf(format!("bad coefficient `{w}`")))).collect();
            Ok(Poly::new(v?))
        };
        Self::new(poly(parts[0])?, poly(parts[1])?, poly(parts[2])?)
    }

    /// Coefficients `0..=order`. Fails if the numerator does not vanish to
    /// the order of `x` dividing `D`, which flags a mistyped form.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries> {
        let v = self.d.0.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroDenominator)?;
        let work = order + v;
        let s = sqrt_1m4x(work);
        let num = &self.a.to_series(work) + &(&self.b.to_series(work) * &s);
        num.div(&self.d.to_series(work))
    }

    /// The `(A; B; D)` text form.
    pub fn to_text(&self) -> String {
        format!("({}; {}; {})", self.a, self.b, self.d)
    }
}

pub fn expand_algebraic(g: &AlgebraicGF, order: usize) -> Result<TruncatedSeries> {
    g.expand(order)
}

/// Closed form for `Av(321)+1`:
/// `(1-8x+13x²+24x³-48x⁴ - (1-6x+x²+34x³-26x⁴-4x⁵)s) / (2x²(1-x)(1-4x)²)`.
pub fn gf_321p1() -> AlgebraicGF {
    let a = Poly::new([1, -8, 13, 24, -48]);
    let b = Poly::new([1, -6, 1, 34, -26, -4]).scale(&BigInt::from(-1));
    let d = Poly::new([0, 0, 2]).mul(&Poly::new([1, -1])).mul(&Poly::new([1, -4])).mul(&Poly::new([1, -4]));
    AlgebraicGF::new(a, b, d).expect("nonzero denominator")
}

/// Closed form for `Av(231)+1`:
/// `(1-5x-6x²+45x³-24x⁴ - (1+x-4x²+x³)(1-4x)^{3/2}) / (-2x²(1-4x)^{3/2})`.
pub fn gf_231p1() -> AlgebraicGF {
    // Numerator and denominator both carry (1-4x)^{3/2} = (1-4x)·s; divide
    // through by (1-4x) once, leaving (P - Q(1-4x)s) / (-2x²(1-4x)s).
    let p = Poly::new([1, -5, -6, 45, -24]);
    let q = Poly::new([1, 1, -4, 1]);
    let one_m4x = Poly::new([1, -4]);
    let rational_over_s = p;
    let sqrt_over_s = q.mul(&one_m4x).scale(&BigInt::from(-1));
    let den = Poly::new([0, 0, -2]).mul(&one_m4x);
    // (P + B s)/(D s) with B = -Q(1-4x), D = -2x²(1-4x)
    AlgebraicGF::with_sqrt_denominator(rational_over_s, sqrt_over_s, den).expect("nonzero denominator")
}

/// Generating functions of the pieces of `Av(231)+1`, all built from `c`,
/// `c'` and (for the first piece) `f` itself.
#[derive(Clone, Debug)]
pub struct Decomposition231 {
    /// Members not avoiding 231 whose greatest entry is in no 231: `2(f-c)xc`.
    pub no_greatest_in_231: TruncatedSeries,
    /// Essential greatest (or leftmost, rightmost, least) entry: `x²c'+xc-c+1`.
    pub extreme_essential: TruncatedSeries,
    /// `x⁴c'² + xc(x²c'+xc-c+1)`.
    pub small_essential: TruncatedSeries,
    /// `x²c'(x²c'+xc-c+1) + (x²c'+x²c-c+x+1)(c-1)`.
    pub large_essential: TruncatedSeries,
}

struct CatalanTerms {
    one: TruncatedSeries,
    x: TruncatedSeries,
    c: TruncatedSeries,
    x2cp: TruncatedSeries,
}

impl CatalanTerms {
    fn new(order: usize) -> Self {
        let c_ext = catalan_gf(order + 1);
        let cp = c_ext.derivative();
        let c = c_ext.truncate(order);
        let x = TruncatedSeries::x(order);
        let x2cp = cp.shift_up(2);
        Self { one: TruncatedSeries::one(order), x, c, x2cp }
    }

    /// `x²c' + xc - c + 1`
    fn extreme(&self) -> TruncatedSeries {
        &(&(&self.x2cp + &(&self.x * &self.c)) - &self.c) + &self.one
    }

    /// Everything in the decomposition except the piece that needs `f`.
    fn without_f(&self) -> (TruncatedSeries, TruncatedSeries, TruncatedSeries) {
        let e = self.extreme();
        let xc = &self.x * &self.c;
        let small = &(&self.x2cp * &self.x2cp) + &(&xc * &e);
        let x2c = xc.shift_up(1);
        let tail = &(&(&(&self.x2cp + &x2c) - &self.c) + &self.x) + &self.one;
        let large = &(&self.x2cp * &e) + &(&tail * &(&self.c - &self.one));
        (e, small, large)
    }
}

impl Decomposition231 {
    /// Uses `f` from the closed form.
    pub fn new(order: usize) -> Self {
        let f = gf_231p1().expand(order).expect("closed form is well formed");
        Self::with_f(&f)
    }

    pub fn with_f(f: &TruncatedSeries) -> Self {
        let order = f.order();
        let t = CatalanTerms::new(order);
        let (extreme_essential, small_essential, large_essential) = t.without_f();
        let two = rat(2);
        let no_greatest_in_231 = (&(f - &t.c) * &(&t.x * &t.c)).scale(&two);
        Self { no_greatest_in_231, extreme_essential, small_essential, large_essential }
    }

    /// `c + ` every piece, which should reproduce `f`.
    pub fn total(&self) -> TruncatedSeries {
        let c = catalan_gf(self.extreme_essential.order());
        &(&(&(&c + &self.no_greatest_in_231) + &self.extreme_essential) + &self.small_essential) + &self.large_essential
    }
}

/// Solves `f = c + 2xc(f-c) + R` for `f`, where `R` collects the pieces that
/// do not involve `f`, one coefficient at a time:
/// `f_n = (c - 2xc² + R)_n + Σ_{k≥1} (2xc)_k f_{n-k}`.
pub fn solve_functional_equation_231(order: usize) -> TruncatedSeries {
    let t = CatalanTerms::new(order);
    let (e, small, large) = t.without_f();
    let two_xc = (&t.x * &t.c).scale(&rat(2));
    let rhs = &(&(&(&t.c - &(&two_xc * &t.c)) + &e) + &small) + &large;
    let mut f: Vec<BigRational> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = rhs.coeff(n).clone();
        for k in 1..=n {
            acc += two_xc.coeff(k) * &f[n - k];
        }
        f.push(acc);
    }
    TruncatedSeries::from_coeffs(f)
}

/// Convenience: coefficient `n` as `u64`, panicking if it is not a small
/// non-negative integer.
pub fn coeff_u64(s: &TruncatedSeries, n: usize) -> u64 {
    let c = s.coeff(n);
    assert!(c.is_integer(), "coefficient {n} = {c} is not an integer");
    c.to_integer().to_u64().unwrap_or_else(|| panic!("coefficient {n} = {c} does not fit u64"))
}
