//! Text formatting of exact values next to their float shadows.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use nlsym::cyclotomic::Cyclotomic;
use nlsym::locality::LocalityStatus;
use nlsym::perm::Perm;

/// `x` to six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        let decimals = (5 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

/// Writes `x` as `a + b√5` when it lies in `Q(√5)`, else in the power basis.
pub fn exact(x: &Cyclotomic) -> String {
    if let Some(q) = x.as_rational() {
        return q.to_string();
    }
    if let Some((a, b)) = root_five_parts(x) {
        let neg = b.is_negative();
        let mag = b.abs();
        let coef = if mag.is_one() { String::new() } else { format!("{mag}*") };
        return if a.is_zero() {
            format!("{}{coef}√5", if neg { "-" } else { "" })
        } else {
            format!("{a} {} {coef}√5", if neg { "-" } else { "+" })
        };
    }
    x.to_string()
}

/// `(a, b)` with `x = a + b√5`, using the automorphism `ζ₅ ↦ ζ₅²` which negates `√5`.
fn root_five_parts(x: &Cyclotomic) -> Option<(BigRational, BigRational)> {
    if x.order() != 5 {
        return None;
    }
    let mut raw = vec![BigRational::zero(); 10];
    for (k, c) in x.coeffs().iter().enumerate() {
        raw[2 * k] = c.clone();
    }
    let conj = Cyclotomic::canonicalize(raw, 5);
    let a = (x + &conj).div_int(2);
    let b = (&(x - &conj) * &Cyclotomic::sqrt5()).div_int(10);
    Some((a.as_rational()?.clone(), b.as_rational()?.clone()))
}

pub fn value(x: &Cyclotomic) -> String {
    let e = exact(x);
    let f = sig6(x.approx_re());
    if x.is_rational() && e == f {
        e
    } else {
        format!("{e} ≈ {f}")
    }
}

pub fn status(s: LocalityStatus) -> &'static str {
    match s {
        LocalityStatus::Local => "LOCAL",
        LocalityStatus::Nonlocal => "NONLOCAL",
        LocalityStatus::NumericInconclusive => "NUMERIC_INCONCLUSIVE",
    }
}

pub fn perm(p: &Perm) -> String {
    p.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_perm(s: &str) -> Option<Perm> {
    nlsym::perm::parse(s)
}

pub fn omega_vector(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .map(|&e| match e {
            0 => "1".to_string(),
            1 => "ω".to_string(),
            _ => format!("ω^{e}"),
        })
        .collect();
    format!("({})", parts.join(", "))
}
