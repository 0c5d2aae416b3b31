//! JSON reports written by `--json`; each parses back into the same structure.

use serde::{Deserialize, Serialize};

use nlsym::correlation::CorrelationJson;
use nlsym::graph::{GraphVerdict, Rule};
use nlsym::locality::certificate::CertificateJson;
use nlsym::locality::LocalityStatus;

/// An exact value with its float shadow.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Value {
    pub exact: String,
    pub approx: f64,
}

impl From<&nlsym::Cyclotomic> for Value {
    fn from(x: &nlsym::Cyclotomic) -> Value {
        Value { exact: crate::render::exact(x), approx: x.approx_re() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalityReport {
    pub status: LocalityStatus,
    pub gap: f64,
    pub certificate_verified: bool,
    pub decomposition: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub perm: Vec<usize>,
    pub weight: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

impl From<&nlsym::LocalityVerdict> for LocalityReport {
    fn from(v: &nlsym::LocalityVerdict) -> LocalityReport {
        LocalityReport {
            status: v.status,
            gap: v.gap,
            certificate_verified: v.certificate_verified,
            decomposition: v
                .decomposition
                .iter()
                .map(|t| Term { perm: t.perm.clone(), weight: t.weight, exact: t.exact.as_ref().map(crate::render::exact) })
                .collect(),
            certificate: v.certificate.as_ref().map(|c| c.to_json()),
            note: v.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QlsReport {
    pub group: String,
    pub perm: Vec<usize>,
    /// Exponents of `ζ_N` per entry, `square[a][b][t]`.
    pub square: Vec<Vec<Vec<u32>>>,
    pub orthogonal: bool,
    pub classical: bool,
    pub characteristic: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locality: Option<LocalityReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct K5Report {
    pub square: Vec<Vec<Vec<u32>>>,
    pub characteristic: Vec<Vec<Value>>,
    pub inequality: String,
    pub terms: Vec<(String, Value)>,
    pub violation: Value,
    pub matches_closed_form: bool,
    pub sign: nlsym::RealSign,
    pub locality: LocalityReport,
    pub reverified_over: u64,
    pub reverified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct K4CheckReport {
    pub source: String,
    pub min_slack: Value,
    pub violated: Option<String>,
    pub negative_slacks: usize,
    pub locality: LocalityReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: GraphVerdict,
    pub rule: Rule,
    pub detail: String,
    pub attested: bool,
    pub via_complement: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locality: Option<LocalityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correlation: Option<CorrelationJson>,
}

impl From<&nlsym::graph::Classification> for ClassificationReport {
    fn from(c: &nlsym::graph::Classification) -> ClassificationReport {
        let w = c.witness.as_ref();
        ClassificationReport {
            verdict: c.verdict,
            rule: c.rule,
            detail: c.detail.clone(),
            attested: c.attested,
            via_complement: c.via_complement,
            automorphisms: w.and_then(|w| w.automorphisms.clone()),
            locality: w.and_then(|w| w.verdict.as_ref()).map(LocalityReport::from),
            correlation: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphReport {
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    pub graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table2Report {
    pub index: usize,
    pub name: String,
    pub expected: GraphVerdict,
    pub classification: ClassificationReport,
    pub matches: bool,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub points: usize,
    pub deterministic: u64,
    pub min_over_deterministic: String,
    pub claimed_min: String,
    pub value_on_p: Option<Value>,
    pub value_on_p_approx: f64,
    pub sound: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use nlsym::graph::{classify, Graph};

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(x: &T) {
        let s = serde_json::to_string(x).unwrap();
        let back: T = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, x);
    }

    #[test]
    fn graph_report_round_trips() {
        let g = Graph::from_name("3K2").unwrap();
        let c = classify(&g).unwrap();
        let r = GraphReport {
            graph: g.to_string(),
            vertices: g.n(),
            edges: g.edges().len(),
            graph6: g.to_graph6(),
            automorphisms: Some(48),
            classification: Some(ClassificationReport::from(&c)),
        };
        round_trip(&r);
    }

    #[test]
    fn locality_report_round_trips() {
        let p = nlsym::graph::five_point_witness();
        let v = nlsym::locality::decide_local(&p, &nlsym::perm::all(5)).unwrap();
        round_trip(&LocalityReport::from(&v));
    }
}
