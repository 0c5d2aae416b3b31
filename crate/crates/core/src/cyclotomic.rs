//! Exact arithmetic in the cyclotomic fields `Q(ζ_N)`.
//!
//! An element of order `N` is stored as its rational coordinate vector in the
//! power basis `1, ζ, …, ζ^{φ(N)-1}`, i.e. as a polynomial reduced modulo the
//! cyclotomic polynomial `Φ_N`. Reduction modulo a monic irreducible
//! polynomial is unique, so two elements of the same order are equal iff their
//! coordinate vectors are identical. Elements of different orders are compared
//! after lifting both into `Q(ζ_lcm)`.
//!
//! Elements that turn out to be rational are always stored with order 1.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper end of the precision schedule used by [`real_sign`].
pub const DEFAULT_PRECISION_CAP: u32 = 1024;

/// Environment variable overriding the precision cap.
pub const PRECISION_ENV: &str = "NLSYM_PRECISION_BITS";

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn poly_cache() -> &'static Mutex<HashMap<u32, std::sync::Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, std::sync::Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of `Φ_n`, lowest degree first (monic, degree `φ(n)`).
pub fn cyclotomic_polynomial(n: u32) -> std::sync::Arc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = exact_divide(&num, &div);
        }
    }
    let arc = std::sync::Arc::new(num);
    poly_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduces an integer polynomial in `ζ_n` (index = exponent, any length)
/// to the canonical basis of length `φ(n)`.
pub fn reduce_integer(raw: &[i64], n: u32) -> Vec<i64> {
    let n_us = n as usize;
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    let mut r = vec![0i64; n_us.max(d)];
    for (e, &c) in raw.iter().enumerate() {
        r[e % n_us] += c;
    }
    for i in (d..r.len()).rev() {
        let c = r[i];
        if c != 0 {
            r[i] = 0;
            for j in 0..d {
                r[i - d + j] -= c * phi[j];
            }
        }
    }
    r.truncate(d);
    r
}

fn reduce_rational(raw: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let n_us = n as usize;
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    let mut r = vec![BigRational::zero(); n_us.max(d)];
    for (e, c) in raw.into_iter().enumerate() {
        if !c.is_zero() {
            r[e % n_us] += c;
        }
    }
    for i in (d..r.len()).rev() {
        if !r[i].is_zero() {
            let c = std::mem::take(&mut r[i]);
            for j in 0..d {
                if phi[j] != 0 {
                    r[i - d + j] -= &c * BigInt::from(phi[j]);
                }
            }
        }
    }
    r.truncate(d);
    r
}

/// Element of `Q(ζ_N)` in canonical reduced form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

/// Sign of a real algebraic number.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RealSign {
    Negative,
    Zero,
    Positive,
}

impl Cyclotomic {
    /// Canonicalizes a raw coefficient vector over `ζ_N^0, …, ζ_N^{len-1}`
    /// (exponents are taken mod `N`).
    pub fn canonicalize(raw: Vec<BigRational>, order: u32) -> Cyclotomic {
        assert!(order >= 1, "cyclotomic order must be positive");
        let coeffs = reduce_rational(raw, order);
        Cyclotomic { order, coeffs }.settle()
    }

    pub fn from_integer_raw(raw: &[i64], order: u32) -> Cyclotomic {
        let red = reduce_integer(raw, order);
        Cyclotomic {
            order,
            coeffs: red.into_iter().map(|c| BigRational::from_integer(c.into())).collect(),
        }
        .settle()
    }

    pub fn zero() -> Cyclotomic {
        Cyclotomic { order: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Cyclotomic {
        Cyclotomic { order: 1, coeffs: vec![q] }
    }

    pub fn from_int(v: i64) -> Cyclotomic {
        Cyclotomic::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Cyclotomic {
        Cyclotomic::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `ζ_order^k`.
    pub fn root_of_unity(order: u32, k: i64) -> Cyclotomic {
        let e = k.rem_euclid(order as i64) as usize;
        let mut raw = vec![0i64; order as usize];
        raw[e] = 1;
        Cyclotomic::from_integer_raw(&raw, order)
    }

    /// `√5 = 1 + 2(ζ₅ + ζ₅⁴)`.
    pub fn sqrt5() -> Cyclotomic {
        Cyclotomic::from_integer_raw(&[1, 2, 0, 0, 2], 5)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.order == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn settle(mut self) -> Cyclotomic {
        if self.order > 1 && self.coeffs.iter().skip(1).all(Zero::is_zero) {
            let c = self.coeffs.swap_remove(0);
            self.coeffs = vec![c];
            self.order = 1;
        }
        self
    }

    /// Re-expresses `self` in `Q(ζ_target)`; `target` must be a multiple of the order.
    pub fn lift(&self, target: u32) -> Cyclotomic {
        if target == self.order {
            return self.clone();
        }
        assert!(target % self.order == 0, "lift target must be a multiple of the order");
        let step = (target / self.order) as usize;
        let mut raw = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[(k * step) % target as usize] += c;
        }
        let coeffs = reduce_rational(raw, target);
        Cyclotomic { order: target, coeffs }
    }

    fn common(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic, u32) {
        let l = self.order.lcm(&other.order);
        (self.lift(l), other.lift(l), l)
    }

    pub fn conj(&self) -> Cyclotomic {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut raw = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[(n - k) % n] += c;
        }
        Cyclotomic::canonicalize(raw, self.order)
    }

    pub fn is_real(&self) -> bool {
        self.order == 1 || self.conj() == *self
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }.settle()
    }

    pub fn scale_int(&self, v: i64) -> Cyclotomic {
        self.scale(&BigRational::from_integer(v.into()))
    }

    pub fn div_int(&self, v: i64) -> Cyclotomic {
        assert!(v != 0, "division by zero");
        self.scale(&BigRational::new(1.into(), v.into()))
    }

    /// `conj(x)·x` as a certified real value.
    pub fn abs_squared(&self) -> RealCyclo {
        RealCyclo::new(&self.conj() * self).expect("conj(x)x is real")
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Cyclotomic::from_rational(q.recip()));
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        // Extended Euclid: find s with s*a ≡ 1 mod Φ.
        let mut r0 = phi;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            if r1.is_empty() {
                // Φ is irreducible so a nonzero remainder chain never hits zero first.
                unreachable!("gcd with cyclotomic polynomial is nontrivial");
            }
        }
        let inv_c = r1[0].recip();
        let raw: Vec<BigRational> = s1.into_iter().map(|c| c * &inv_c).collect();
        Some(Cyclotomic::canonicalize(raw, self.order))
    }

    /// Complex approximation `(re, im)`.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += cf * ang.cos();
            im += cf * ang.sin();
        }
        (re, im)
    }

    pub fn approx_re(&self) -> f64 {
        self.approx().0
    }

    /// Canonical byte-stable key at a fixed order (after lifting).
    pub fn key_at(&self, order: u32) -> Vec<BigRational> {
        self.lift(order).coeffs
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == rhs.order {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return Cyclotomic { order: self.order, coeffs }.settle();
        }
        let (a, b, l) = self.common(rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { order: l, coeffs }.settle()
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if let Some(q) = self.as_rational() {
            return rhs.scale(q).settle();
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(q).settle();
        }
        let (a, b, l) = self.common(rhs);
        let mut raw = vec![BigRational::zero(); 2 * a.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Cyclotomic::canonicalize(raw, l)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (_, true) => write!(f, "z{}^{}", self.order, k)?,
                (_, false) => write!(f, "{}*z{}^{}", mag, self.order, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A cyclotomic value proven fixed by complex conjugation, with a float shadow.
#[derive(Clone, Debug, PartialEq)]
pub struct RealCyclo {
    value: Cyclotomic,
    approx: f64,
}

impl RealCyclo {
    pub fn new(value: Cyclotomic) -> Result<RealCyclo> {
        if !value.is_real() {
            return Err(Error::NotReal(value.to_string()));
        }
        let approx = real_approx(&value);
        Ok(RealCyclo { value, approx })
    }

    pub fn from_rational(q: BigRational) -> RealCyclo {
        let approx = q.to_f64().unwrap_or(f64::NAN);
        RealCyclo { value: Cyclotomic::from_rational(q), approx }
    }

    pub fn value(&self) -> &Cyclotomic {
        &self.value
    }

    pub fn into_value(self) -> Cyclotomic {
        self.value
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    pub fn sign(&self) -> RealSign {
        real_sign(&self.value)
    }
}

fn real_approx(x: &Cyclotomic) -> f64 {
    if let Some(q) = x.as_rational() {
        return q.to_f64().unwrap_or(f64::NAN);
    }
    let iv = real_interval(x, 64);
    iv.midpoint_f64()
}

/// Precision cap for the interval schedule (64, 128, … up to the cap).
pub fn precision_cap() -> u32 {
    std::env::var(PRECISION_ENV)
        .ok()
        .and_then(|s| s.parse::<u32>().ok())
        .filter(|&b| b >= 64)
        .unwrap_or(DEFAULT_PRECISION_CAP)
}

/// Sign of a real cyclotomic number.
///
/// Exact zero is decided on the canonical form. Nonzero values are resolved by
/// evaluating the real embedding in fixed-point interval arithmetic at 64 bits,
/// doubling until the interval excludes zero. Nonzero algebraic numbers always
/// separate from zero eventually, so the loop continues past the cap if needed.
pub fn real_sign(x: &Cyclotomic) -> RealSign {
    if x.is_zero() {
        return RealSign::Zero;
    }
    if let Some(q) = x.as_rational() {
        return if q.is_negative() { RealSign::Negative } else { RealSign::Positive };
    }
    debug_assert!(x.is_real(), "real_sign on a non-real value");
    let cap = precision_cap();
    let mut bits = 64;
    loop {
        let iv = real_interval(x, bits);
        if let Some(s) = iv.sign() {
            return s;
        }
        bits = if bits < cap { (bits * 2).min(cap) } else { bits * 2 };
    }
}

/// Fixed-point enclosure `value·L·2^P ∈ [centre - radius, centre + radius]`.
struct Enclosure {
    centre: BigInt,
    radius: BigInt,
    scale_den: BigInt,
    frac_bits: u32,
}

impl Enclosure {
    fn sign(&self) -> Option<RealSign> {
        if self.centre.abs() > self.radius {
            Some(if self.centre.sign() == Sign::Minus { RealSign::Negative } else { RealSign::Positive })
        } else {
            None
        }
    }

    fn midpoint_f64(&self) -> f64 {
        let num = BigRational::new(self.centre.clone(), self.scale_den.clone() << self.frac_bits as usize);
        num.to_f64().unwrap_or(f64::NAN)
    }
}

const GUARD_BITS: u32 = 32;

fn real_interval(x: &Cyclotomic, bits: u32) -> Enclosure {
    let frac = bits + GUARD_BITS;
    let cosines = cos_table(x.order, frac);
    let l = x
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut centre = BigInt::zero();
    let mut weight = BigInt::zero();
    for (k, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let a = c.numer() * (&l / c.denom());
        centre += &a * &cosines[k];
        weight += a.abs();
    }
    // Each table entry is within 2^GUARD_BITS units of the true scaled cosine.
    let radius = weight << GUARD_BITS as usize;
    Enclosure { centre, radius, scale_den: l, frac_bits: frac }
}

fn cos_cache() -> &'static Mutex<HashMap<(u32, u32), std::sync::Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), std::sync::Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `floor(2^frac · cos(2πk/n))` (up to a few units) for `k < φ(n)`.
fn cos_table(n: u32, frac: u32) -> std::sync::Arc<Vec<BigInt>> {
    if let Some(t) = cos_cache().lock().unwrap().get(&(n, frac)) {
        return t.clone();
    }
    let work = frac + 16;
    let pi = fixed_pi(work);
    let phi = euler_phi(n) as usize;
    let mut table = Vec::with_capacity(phi);
    for k in 0..phi as u64 {
        let kk = k % n as u64;
        let kk = kk.min(n as u64 - kk);
        let theta = (&pi * BigInt::from(2 * kk)) / BigInt::from(n);
        let c = fixed_cos(&theta, work);
        table.push(c >> 16usize);
    }
    let arc = std::sync::Arc::new(table);
    cos_cache().lock().unwrap().insert((n, frac), arc.clone());
    arc
}

fn fixed_atan_inv(m: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits as usize;
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut power = &one / &m;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m2;
        k += 1;
    }
    sum
}

fn fixed_pi(bits: u32) -> BigInt {
    let a = fixed_atan_inv(5, bits);
    let b = fixed_atan_inv(239, bits);
    a * 16 - b * 4
}

fn fixed_cos(theta: &BigInt, bits: u32) -> BigInt {
    let one = BigInt::one() << bits as usize;
    let theta2 = (theta * theta) >> bits as usize;
    let mut term = one.clone();
    let mut sum = one;
    let mut j = 0u64;
    loop {
        term = (&term * &theta2) >> bits as usize;
        term /= BigInt::from((2 * j + 1) * (2 * j + 2));
        if term.is_zero() {
            break;
        }
        if j % 2 == 0 {
            sum -= &term;
        } else {
            sum += &term;
        }
        j += 1;
    }
    sum
}

/// Compares two real values exactly.
pub fn compare_real(a: &Cyclotomic, b: &Cyclotomic) -> Ordering {
    match real_sign(&(a - b)) {
        RealSign::Negative => Ordering::Less,
        RealSign::Zero => Ordering::Equal,
        RealSign::Positive => Ordering::Greater,
    }
}

/// Serialized form `{"order": N, "coeffs": ["p/q", …], "approx": float}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycloJson {
    pub order: u32,
    pub coeffs: Vec<String>,
    pub approx: f64,
}

impl From<&Cyclotomic> for CycloJson {
    fn from(x: &Cyclotomic) -> CycloJson {
        CycloJson {
            order: x.order,
            coeffs: x.coeffs.iter().map(|c| c.to_string()).collect(),
            approx: x.approx_re(),
        }
    }
}

impl TryFrom<&CycloJson> for Cyclotomic {
    type Error = Error;
    fn try_from(j: &CycloJson) -> Result<Cyclotomic> {
        if j.order == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        let raw = j.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        Ok(Cyclotomic::canonicalize(raw, j.order))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`.
pub fn rational_approximation(x: f64, max_den: u64) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let a_int = a as u128;
        let p2 = a_int * p1 + p0;
        let q2 = a_int * q1 + q0;
        if q2 > max_den as u128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return BigRational::zero();
    }
    let r = BigRational::new(BigInt::from(p1), BigInt::from(q1));
    if neg {
        -r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(12).len() - 1, 4);
    }

    #[test]
    fn vanishing_sum_of_fifth_roots() {
        let s: Cyclotomic = (0..5).map(|k| z(5, k)).sum();
        assert!(s.is_zero());
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_int(-1));
    }

    #[test]
    fn zeta6_equals_one_plus_zeta3() {
        let lhs = z(6, 1);
        let rhs = &Cyclotomic::one() + &z(3, 1);
        assert_eq!(lhs, rhs);
        let (a, b) = (lhs.approx(), rhs.approx());
        assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let s = Cyclotomic::sqrt5();
        assert_eq!(&s * &s, Cyclotomic::from_int(5));
        assert!((s.approx_re() - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn signs() {
        assert_eq!(real_sign(&Cyclotomic::zero()), RealSign::Zero);
        // 5 - 3√5 < 0
        let v = &Cyclotomic::from_int(5) - &Cyclotomic::sqrt5().scale_int(3);
        assert_eq!(real_sign(&v), RealSign::Negative);
        // 2 + ζ² + ζ³ ≈ 0.382
        let w = Cyclotomic::from_integer_raw(&[2, 0, 1, 1, 0], 5);
        assert_eq!(real_sign(&w), RealSign::Positive);
        assert!((RealCyclo::new(w).unwrap().approx() - 0.381966).abs() < 1e-6);
    }

    #[test]
    fn abs_squared_examples() {
        for k in 0..7 {
            assert_eq!(*z(7, k).abs_squared().value(), Cyclotomic::one());
        }
        let x = Cyclotomic::from_integer_raw(&[3, 0, 1, 1, 0], 5);
        let expect = Cyclotomic::from_integer_raw(&[10, 0, 5, 5, 0], 5);
        assert_eq!(*x.abs_squared().value(), expect);
        let y = Cyclotomic::from_integer_raw(&[2, 2, 0, 1, 0], 5);
        assert_eq!(*y.abs_squared().value(), Cyclotomic::from_int(5));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Cyclotomic::from_integer_raw(&[2, -1, 3, 0, 0, 1, 0], 7);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, Cyclotomic::one());
        assert!(Cyclotomic::zero().inverse().is_none());
    }

    #[test]
    fn non_real_rejected() {
        assert!(RealCyclo::new(z(5, 1)).is_err());
    }

    #[test]
    fn tiny_nonzero_needs_refinement() {
        // (1 + 2^-80) - 1 style: a rational is trivial, so use an irrational that is
        // very close to a rational: ε = φ^-60 ≈ 3e-13 in Q(√5).
        let phi = (&Cyclotomic::one() + &Cyclotomic::sqrt5()).scale(&BigRational::new(1.into(), 2.into()));
        let mut p = Cyclotomic::one();
        let inv = phi.inverse().unwrap();
        for _ in 0..60 {
            p = &p * &inv;
        }
        assert_eq!(real_sign(&p), RealSign::Positive);
        assert_eq!(real_sign(&-p), RealSign::Negative);
    }

    #[test]
    fn rational_rounding() {
        assert_eq!(rational_approximation(0.333333333, 1000), BigRational::new(1.into(), 3.into()));
        assert_eq!(rational_approximation(-2.5, 10), BigRational::new((-5).into(), 2.into()));
    }

    #[test]
    fn json_roundtrip() {
        let x = Cyclotomic::from_integer_raw(&[1, 0, 2, 2, 0], 5).div_int(5);
        let j = CycloJson::from(&x);
        let back = Cyclotomic::try_from(&j).unwrap();
        assert_eq!(back, x);
    }
}
