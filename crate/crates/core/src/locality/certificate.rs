//! Separating-hyperplane certificates and their independent re-verification.
//!
//! A certificate is a rational functional `h` on correlation tables together
//! with a claimed minimum over deterministic correlations. It proves
//! nonlocality of `p` when the minimum is exact and `⟨h,p⟩` lies strictly below it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::correlation::{Correlation, EntryValue};
use crate::cyclotomic::{parse_rational, real_sign, CycloJson, Cyclotomic, RealSign};
use crate::error::{Error, Result};
use crate::perm::{self, Perm};

#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneEntry {
    pub l: usize,
    pub k: usize,
    pub i: usize,
    pub j: usize,
    pub coef: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub labels: Vec<String>,
    pub hyperplane: Vec<HyperplaneEntry>,
    pub min_over_deterministic: BigRational,
    /// Exact value of the functional on the certified correlation.
    pub value_on_p: Option<Cyclotomic>,
    pub value_on_p_approx: f64,
}

/// The deterministic correlations a certificate is checked against.
#[derive(Clone, Debug)]
pub enum Admissible {
    All(usize),
    List(Vec<Perm>),
}

impl Admissible {
    pub fn for_each(&self, mut f: impl FnMut(&[usize])) {
        match self {
            Admissible::All(n) => {
                let mut p = perm::identity(*n);
                loop {
                    f(&p);
                    if !perm::next_lex(&mut p) {
                        break;
                    }
                }
            }
            Admissible::List(v) => v.iter().for_each(|p| f(p)),
        }
    }

    pub fn len(&self) -> u64 {
        match self {
            Admissible::All(n) => perm::factorial(*n),
            Admissible::List(v) => v.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verification {
    pub min_over_deterministic: BigRational,
    pub value_on_p: Option<Cyclotomic>,
    pub value_on_p_approx: f64,
    /// The recomputed minimum matches the claim and the value lies strictly below it.
    pub sound: bool,
}

impl Certificate {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Recomputes the minimum over `admissible` and the value on `p` exactly.
    pub fn verify(&self, p: &Correlation, admissible: &Admissible) -> Result<Verification> {
        let n = self.n();
        if p.n() != n {
            return Err(Error::IndexMismatch);
        }
        let den = self.hyperplane.iter().fold(BigInt::from(1), |acc, e| acc.lcm(e.coef.denom()));
        let mut table = vec![BigInt::zero(); n.pow(4)];
        for e in &self.hyperplane {
            let pos = p.flat_index(e.l, e.k, e.i, e.j);
            table[pos] += e.coef.numer() * (&den / e.coef.denom());
        }
        let small: Option<Vec<i128>> = table.iter().map(ToPrimitive::to_i128).collect();
        let min_num: BigInt = match small {
            Some(t) if bit_width(&t) + 2 * (usize::BITS - n.leading_zeros()) < 126 => {
                let mut best: Option<i128> = None;
                admissible.for_each(|pi| {
                    let mut s = 0i128;
                    for i in 0..n {
                        for j in 0..n {
                            s += t[((pi[i] * n + pi[j]) * n + i) * n + j];
                        }
                    }
                    best = Some(best.map_or(s, |b| b.min(s)));
                });
                BigInt::from(best.ok_or_else(|| Error::Invalid("empty admissible set".into()))?)
            }
            _ => {
                let mut best: Option<BigInt> = None;
                admissible.for_each(|pi| {
                    let mut s = BigInt::zero();
                    for i in 0..n {
                        for j in 0..n {
                            s += &table[((pi[i] * n + pi[j]) * n + i) * n + j];
                        }
                    }
                    if best.as_ref().is_none_or(|b| s < *b) {
                        best = Some(s);
                    }
                });
                best.ok_or_else(|| Error::Invalid("empty admissible set".into()))?
            }
        };
        let min = BigRational::new(min_num, den);
        let (value, approx) = match p.exact_values() {
            Some(_) => {
                let mut acc = Cyclotomic::zero();
                for e in &self.hyperplane {
                    let x = p.exact(e.l, e.k, e.i, e.j).unwrap();
                    if !x.is_zero() {
                        acc += &x.scale(&e.coef);
                    }
                }
                let a = acc.approx_re();
                (Some(acc), a)
            }
            None => {
                let s = self
                    .hyperplane
                    .iter()
                    .map(|e| e.coef.to_f64().unwrap_or(f64::NAN) * p.approx(e.l, e.k, e.i, e.j))
                    .sum();
                (None, s)
            }
        };
        let below = match &value {
            Some(v) => real_sign(&(v - &Cyclotomic::from_rational(min.clone()))) == RealSign::Negative,
            None => approx < min.to_f64().unwrap_or(f64::NAN) - 1e-9,
        };
        let sound = below && min >= self.min_over_deterministic;
        Ok(Verification { min_over_deterministic: min, value_on_p: value, value_on_p_approx: approx, sound })
    }

    pub fn to_json(&self) -> CertificateJson {
        let lab = |x: usize| Value::String(self.labels[x].clone());
        CertificateJson {
            labels: Some(self.labels.iter().cloned().map(Value::String).collect()),
            hyperplane: self
                .hyperplane
                .iter()
                .map(|e| HyperplaneJson { l: lab(e.l), k: lab(e.k), i: lab(e.i), j: lab(e.j), coef: e.coef.to_string() })
                .collect(),
            min_over_deterministic: self.min_over_deterministic.to_string(),
            value_on_p: ValueJson {
                exact: self.value_on_p.as_ref().map(|v| match v.as_rational() {
                    Some(q) => EntryValue::Rational(q.to_string()),
                    None => EntryValue::Exact(CycloJson::from(v)),
                }),
                approx: self.value_on_p_approx,
            },
        }
    }

    /// Reads a certificate; labels are resolved against `labels` (the correlation's).
    pub fn from_json(doc: &CertificateJson, labels: &[String]) -> Result<Certificate> {
        let find = |v: &Value| {
            let s = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            labels.iter().position(|l| *l == s).ok_or_else(|| Error::Parse(format!("unknown label {s}")))
        };
        let hyperplane = doc
            .hyperplane
            .iter()
            .map(|e| {
                Ok(HyperplaneEntry {
                    l: find(&e.l)?,
                    k: find(&e.k)?,
                    i: find(&e.i)?,
                    j: find(&e.j)?,
                    coef: parse_rational(&e.coef)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let value_on_p = match &doc.value_on_p.exact {
            Some(EntryValue::Rational(s)) => Some(Cyclotomic::from_rational(parse_rational(s)?)),
            Some(EntryValue::Exact(c)) => Some(Cyclotomic::try_from(c)?),
            _ => None,
        };
        Ok(Certificate {
            labels: labels.to_vec(),
            hyperplane,
            min_over_deterministic: parse_rational(&doc.min_over_deterministic)?,
            value_on_p,
            value_on_p_approx: doc.value_on_p.approx,
        })
    }
}

fn bit_width(t: &[i128]) -> u32 {
    let m = t.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    (128 - m.leading_zeros()).max(1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperplaneJson {
    pub l: Value,
    pub k: Value,
    pub i: Value,
    pub j: Value,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueJson {
    pub exact: Option<EntryValue>,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Value>>,
    pub hyperplane: Vec<HyperplaneJson>,
    pub min_over_deterministic: String,
    pub value_on_p: ValueJson,
}
