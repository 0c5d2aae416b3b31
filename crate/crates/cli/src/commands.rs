use std::fmt::Write as _;
use std::fs;

use serde::Serialize;

use nlsym::correlation::{Correlation, CorrelationJson};
use nlsym::cyclotomic::{real_sign, Cyclotomic, RealSign};
use nlsym::graph::{self, automorphisms, classify, five_point_witness, Graph, GraphVerdict};
use nlsym::locality::certificate::{Admissible, Certificate, CertificateJson};
use nlsym::locality::k4::{k4_decide, k4_inequalities};
use nlsym::locality::{decide_local, decide_local_invariant};
use nlsym::perm::{self, Perm};
use nlsym::qls::{characteristic_matrix, is_classical_qls, survey, QuantumLatinSquare, SURVEY_BOUND};
use nlsym::{AbelianGroup, CharacteristicMatrix, Error};

use crate::render::{self, sig6, value};
use crate::report::*;

/// Surveys of groups at least this large need `--extended`.
pub const EXTENDED_ORDER: usize = 9;
/// Largest index set accepted by `certify` (all `n!` deterministic correlations are enumerated).
pub const CERTIFY_BOUND: usize = 10;

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::BoundExceeded(_)) => 2,
            CliError::Lib(Error::CertificateFailed(_) | Error::Inconsistent(_)) => 70,
            _ => 64,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
}

fn write_json<T: Serialize>(path: &str, x: &T) -> CliResult<()> {
    let s = serde_json::to_string_pretty(x).map_err(|e| CliError::Usage(e.to_string()))?;
    if path == "-" {
        println!("{s}");
        Ok(())
    } else {
        fs::write(path, s + "\n").map_err(|e| CliError::Usage(format!("cannot write {path}: {e}")))
    }
}

fn parse_json<T: for<'de> serde::Deserialize<'de>>(path: &str) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Lib(Error::Parse(format!("{path}: {e}"))))
}

fn parse_group(s: &str) -> CliResult<AbelianGroup> {
    Ok(s.parse::<AbelianGroup>()?)
}

fn parse_perm_for(g: &AbelianGroup, s: &str) -> CliResult<Perm> {
    let p = render::parse_perm(s).ok_or_else(|| CliError::Lib(Error::Parse(format!("invalid permutation {s:?}"))))?;
    if p.len() != g.order() {
        return Err(CliError::Lib(Error::Parse(format!("permutation has {} entries, |{g}| = {}", p.len(), g.order()))));
    }
    Ok(p)
}

fn matrix_lines(out: &mut String, d: &CharacteristicMatrix) {
    let exact: Vec<Vec<String>> = d.entries().iter().map(|r| r.iter().map(render::exact).collect()).collect();
    let width = exact.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    for (row, erow) in d.entries().iter().zip(&exact) {
        let e: Vec<String> = erow.iter().map(|s| format!("{s:>width$}")).collect();
        let f: Vec<String> = row.iter().map(|x| format!("{:>10}", sig6(x.approx_re()))).collect();
        let _ = writeln!(out, "  [{}]   ≈ [{}]", e.join("  "), f.join(" "));
    }
}

fn matrix_values(d: &CharacteristicMatrix) -> Vec<Vec<Value>> {
    d.entries().iter().map(|r| r.iter().map(Value::from).collect()).collect()
}

fn square_exponents(s: &QuantumLatinSquare) -> Vec<Vec<Vec<u32>>> {
    let n = s.group().order();
    (0..n).map(|a| (0..n).map(|b| s.exponents(a, b).to_vec()).collect()).collect()
}

fn square_lines(out: &mut String, s: &QuantumLatinSquare) {
    let n = s.group().order();
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| render::omega_vector(s.exponents(a, b))).collect();
        let _ = writeln!(out, "  {}", row.join(" | "));
    }
}

fn locality_lines(out: &mut String, v: &nlsym::LocalityVerdict) {
    let _ = writeln!(out, "locality: {}", render::status(v.status));
    if v.is_nonlocal() {
        let _ = writeln!(
            out,
            "  separating value {} (re-verified exactly: {})",
            sig6(v.gap),
            if v.certificate_verified { "yes" } else { "NO" }
        );
    }
    for t in &v.decomposition {
        let w = t.exact.as_ref().map(value).unwrap_or_else(|| sig6(t.weight));
        let _ = writeln!(out, "  {w} × p_[{}]", render::perm(&t.perm));
    }
    if let Some(note) = &v.note {
        let _ = writeln!(out, "  note: {note}");
    }
}

fn require_verified(v: &nlsym::LocalityVerdict, what: &str) -> CliResult<()> {
    if v.is_nonlocal() && !v.certificate_verified {
        return Err(CliError::Lib(Error::CertificateFailed(what.to_string())));
    }
    Ok(())
}

pub fn survey_cmd(group: &str, extended: bool, json: Option<&str>) -> CliResult<String> {
    let g = parse_group(group)?;
    let n = g.order();
    if n > SURVEY_BOUND {
        return Err(Error::BoundExceeded(format!("|{g}| = {n} exceeds {SURVEY_BOUND} for surveys")).into());
    }
    if n >= EXTENDED_ORDER && !extended {
        return Err(CliError::Usage(format!("surveys of groups of order {EXTENDED_ORDER} or more need --extended ({g})")));
    }
    let r = survey(&g)?;
    let mut out = String::new();
    let _ = writeln!(out, "group {}  order={}  automorphisms={}  locality-orbits={}", r.group, r.order, r.automorphisms, r.locality_orbits);
    let _ = writeln!(
        out,
        "distinct={} classical={} local={} nonlocal={}{}",
        r.distinct,
        r.classical,
        r.local,
        r.nonlocal,
        if r.inconclusive > 0 { format!(" inconclusive={}", r.inconclusive) } else { String::new() }
    );
    let _ = writeln!(out, "row: {} {} {} {}", r.distinct, r.classical, r.local, r.nonlocal);
    let _ = writeln!(out, "classes (representative, matrices, classical, status, certificate):");
    for c in &r.classes {
        let cert = c.certificate_id.map(|i| format!("#{i} value {}", sig6(r.certificates[i].value))).unwrap_or_default();
        let _ = writeln!(
            out,
            "  [{}]  {:>5}  {:>4}  {:<8}  {cert}",
            render::perm(&c.representative),
            c.size,
            c.classical,
            render::status(c.status)
        );
    }
    let _ = writeln!(out, "elapsed {} ms", r.elapsed_ms);
    if let Some(path) = json {
        write_json(path, &r)?;
    }
    Ok(out)
}

pub fn qls_cmd(group: &str, perm_text: &str, json: Option<&str>, emit: Option<&str>) -> CliResult<String> {
    let g = parse_group(group)?;
    let pi = parse_perm_for(&g, perm_text)?;
    let s = QuantumLatinSquare::new(&g, &pi)?;
    let d = characteristic_matrix(&g, &pi)?;
    let check = is_classical_qls(&g, &pi)?;
    let mut out = String::new();
    let _ = writeln!(out, "quantum Latin square for {g}, π = [{}] (unnormalized; divide by √{})", render::perm(&pi), g.order());
    square_lines(&mut out, &s);
    let _ = writeln!(out, "orthogonal: {}", s.is_orthogonal());
    match &check.witness {
        Some((z, sigma)) => {
            let _ = writeln!(out, "classical: yes (translation {}, automorphism [{}])", g.element_label(*z), render::perm(&sigma.map));
        }
        None => {
            let _ = writeln!(out, "classical: no");
        }
    }
    let _ = writeln!(out, "characteristic matrix:");
    matrix_lines(&mut out, &d);
    let locality = if g.order() <= nlsym::locality::INVARIANT_BOUND {
        let v = decide_local_invariant(&d, None)?.verdict;
        locality_lines(&mut out, &v);
        require_verified(&v, "QLS correlation")?;
        Some(LocalityReport::from(&v))
    } else {
        let _ = writeln!(out, "locality: skipped (order above {})", nlsym::locality::INVARIANT_BOUND);
        None
    };
    if let Some(path) = emit {
        write_json(path, &s.correlation().to_json())?;
    }
    if let Some(path) = json {
        let r = QlsReport {
            group: g.to_string(),
            perm: pi,
            square: square_exponents(&s),
            orthogonal: s.is_orthogonal(),
            classical: check.is_classical(),
            characteristic: matrix_values(&d),
            locality,
        };
        write_json(path, &r)?;
    }
    Ok(out)
}

pub struct K5Options<'a> {
    pub json: Option<&'a str>,
    pub emit_certificate: Option<&'a str>,
    pub emit_correlation: Option<&'a str>,
}

pub fn k5_demo(opts: &K5Options<'_>) -> CliResult<String> {
    let g = AbelianGroup::cyclic(5);
    let pi = vec![0, 1, 2, 4, 3];
    let s = QuantumLatinSquare::new(&g, &pi)?;
    let p = five_point_witness();
    let d = characteristic_matrix(&g, &pi)?;
    let mut out = String::new();
    let _ = writeln!(out, "order-five quantum Latin square (ω = e^(2πi/5), unnormalized; divide by √5):");
    square_lines(&mut out, &s);
    let _ = writeln!(out, "characteristic matrix D (exact, then float):");
    matrix_lines(&mut out, &d);
    let inequality = "2·q(0,2|0,2) + q(0,3|0,1) − q(0,4|0,4) ≥ 0".to_string();
    let _ = writeln!(out, "invariant inequality: {inequality}");
    let q = |a, b, c, dd| p.exact(a, b, c, dd).expect("exact witness").clone();
    let terms = [("q(0,2|0,2)", q(0, 2, 0, 2)), ("q(0,3|0,1)", q(0, 3, 0, 1)), ("q(0,4|0,4)", q(0, 4, 0, 4))];
    for (name, v) in &terms {
        let _ = writeln!(out, "  {name} = {}", value(v));
    }
    let violation = terms[0].1.scale_int(2) + &terms[1].1 - &terms[2].1;
    let closed = (Cyclotomic::from_int(5) - Cyclotomic::sqrt5().scale_int(3)).div_int(50);
    let sign = real_sign(&violation);
    let _ = writeln!(out, "value = {}  (equals (5 − 3√5)/50: {})", value(&violation), violation == closed);
    let _ = writeln!(out, "real_sign = {}", match sign {
        RealSign::Negative => "NEGATIVE",
        RealSign::Zero => "ZERO",
        RealSign::Positive => "POSITIVE",
    });
    let all = perm::all(5);
    let v = decide_local(&p, &all)?;
    require_verified(&v, "five-point witness")?;
    let cert = v.certificate.clone().ok_or_else(|| Error::Inconsistent("five-point witness found local".into()))?;
    let check = cert.verify(&p, &Admissible::All(5))?;
    if !check.sound {
        return Err(Error::CertificateFailed("five-point certificate".into()).into());
    }
    let _ = writeln!(
        out,
        "LP over all 120 deterministic correlations: {}; certificate with {} terms, min {} on deterministic points, {} on q",
        render::status(v.status),
        cert.hyperplane.len(),
        check.min_over_deterministic,
        check.value_on_p.as_ref().map(value).unwrap_or_else(|| sig6(check.value_on_p_approx))
    );
    let _ = writeln!(out, "certificate re-verification: passed");
    if let Some(path) = opts.emit_certificate {
        write_json(path, &cert.to_json())?;
    }
    if let Some(path) = opts.emit_correlation {
        write_json(path, &p.to_json())?;
    }
    if let Some(path) = opts.json {
        let r = K5Report {
            square: square_exponents(&s),
            characteristic: matrix_values(&d),
            inequality,
            terms: terms.iter().map(|(n, v)| (n.to_string(), Value::from(v))).collect(),
            violation: Value::from(&violation),
            matches_closed_form: violation == closed,
            sign,
            locality: LocalityReport::from(&v),
            reverified_over: 120,
            reverified: check.sound,
        };
        write_json(path, &r)?;
    }
    Ok(out)
}

/// Where `k4-check` takes its correlations from.
pub enum K4Source<'a> {
    File(&'a str),
    Qls { group: &'a str, perm: Option<&'a str> },
    Uniform(&'a str),
}

fn four_point_group(spec: &str) -> CliResult<AbelianGroup> {
    let g = parse_group(spec)?;
    if g.order() != 4 {
        return Err(Error::NotB4(format!("{g} has order {}", g.order())).into());
    }
    Ok(g)
}

pub fn k4_check(src: &K4Source<'_>, json: Option<&str>) -> CliResult<String> {
    let labels = Correlation::numeric_labels(4);
    let inputs: Vec<(String, Correlation)> = match src {
        K4Source::File(path) => {
            let doc: CorrelationJson = parse_json(path)?;
            vec![(path.to_string(), Correlation::from_json(&doc)?)]
        }
        K4Source::Uniform(group) => {
            let g = four_point_group(group)?;
            vec![(format!("p_Γ for {g}"), Correlation::uniform_group(&g).with_labels(labels))]
        }
        K4Source::Qls { group, perm } => {
            let g = four_point_group(group)?;
            let perms = match perm {
                Some(p) => vec![parse_perm_for(&g, p)?],
                None => perm::all(4),
            };
            perms
                .into_iter()
                .map(|pi| {
                    let c = QuantumLatinSquare::new(&g, &pi)?.correlation().with_labels(labels.clone());
                    Ok((format!("q_[{}] over {g}", render::perm(&pi)), c))
                })
                .collect::<nlsym::Result<_>>()?
        }
    };
    let ineqs = k4_inequalities();
    let mut out = String::new();
    let mut reports = Vec::new();
    for (name, p) in &inputs {
        let rep = k4_decide(p)?;
        require_verified(&rep.verdict, name)?;
        let min = &rep.slacks[rep.min_slack];
        let negative = rep.slacks.iter().filter(|s| real_sign(s) == RealSign::Negative).count();
        let violated = (real_sign(min) == RealSign::Negative).then(|| ineqs[rep.min_slack].label());
        let _ = writeln!(out, "{name}");
        let _ = writeln!(out, "  slacks: 144 evaluated, {negative} negative, minimum {} at {}", value(min), ineqs[rep.min_slack].label());
        if let Some(v) = &violated {
            let _ = writeln!(out, "  violated inequality: {v}");
        }
        let mut lines = String::new();
        locality_lines(&mut lines, &rep.verdict);
        for l in lines.lines() {
            let _ = writeln!(out, "  {l}");
        }
        reports.push(K4CheckReport {
            source: name.clone(),
            min_slack: Value::from(min),
            violated,
            negative_slacks: negative,
            locality: LocalityReport::from(&rep.verdict),
        });
    }
    if inputs.len() > 1 {
        let local = reports.iter().filter(|r| r.negative_slacks == 0).count();
        let _ = writeln!(out, "summary: {local}/{} with every slack nonnegative", reports.len());
    }
    if let Some(path) = json {
        write_json(path, &reports)?;
    }
    Ok(out)
}

/// Graph selected on the command line.
pub enum GraphSource<'a> {
    Name(&'a str),
    Edges(&'a str),
    Graph6(&'a str),
}

fn load_graph(src: &GraphSource<'_>) -> CliResult<Graph> {
    Ok(match src {
        GraphSource::Name(n) => Graph::from_name(n)?,
        GraphSource::Edges(path) => Graph::from_edge_list(&read(path)?)?,
        GraphSource::Graph6(s) => Graph::from_graph6(s)?,
    })
}

fn verdict_name(v: GraphVerdict) -> &'static str {
    match v {
        GraphVerdict::Nonlocal => "NONLOCAL",
        GraphVerdict::NoNonlocal => "NO_NONLOCAL",
        GraphVerdict::Undecided => "UNDECIDED",
    }
}

fn check_witness(c: &graph::Classification) -> CliResult<()> {
    if let Some(v) = c.witness.as_ref().and_then(|w| w.verdict.as_ref()) {
        require_verified(v, &c.graph)?;
    }
    Ok(())
}

pub fn graph_cmd(src: &GraphSource<'_>, do_classify: bool, json: Option<&str>) -> CliResult<String> {
    let g = load_graph(src)?;
    let mut out = String::new();
    let _ = writeln!(out, "graph {g}: {} vertices, {} edges, graph6 {}", g.n(), g.edges().len(), g.to_graph6());
    let aut = match automorphisms(&g) {
        Ok(a) => {
            let _ = writeln!(out, "automorphisms: {}", a.len());
            Some(a.len())
        }
        Err(Error::BoundExceeded(why)) if !do_classify => {
            let _ = writeln!(out, "automorphisms: not enumerated ({why})");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let classification = if do_classify {
        let c = classify(&g)?;
        check_witness(&c)?;
        let _ = writeln!(out, "verdict: {}", verdict_name(c.verdict));
        let _ = writeln!(out, "rule: {}", c.rule.label());
        let _ = writeln!(out, "detail: {}", c.detail);
        if c.via_complement {
            let _ = writeln!(out, "decided on the complement");
        }
        if c.attested {
            let _ = writeln!(out, "rests on a bundled attestation");
        }
        if let Some(w) = &c.witness {
            match &w.verdict {
                Some(v) => {
                    let _ = writeln!(
                        out,
                        "witness: LP against Aut(G) says {}, certificate re-verified: {}",
                        render::status(v.status),
                        if v.certificate_verified { "yes" } else { "no" }
                    );
                }
                None => {
                    let _ = writeln!(out, "witness: LP confirmation skipped");
                }
            }
        }
        Some(ClassificationReport::from(&c))
    } else {
        None
    };
    if let Some(path) = json {
        let r = GraphReport {
            graph: g.to_string(),
            vertices: g.n(),
            edges: g.edges().len(),
            graph6: g.to_graph6(),
            automorphisms: aut,
            classification,
        };
        write_json(path, &r)?;
    }
    Ok(out)
}

pub fn table2_cmd(json: Option<&str>) -> CliResult<String> {
    let rows = graph::table2()?;
    let mut out = String::new();
    let _ = writeln!(out, "{:<4} {:<8} {:<9} {:<12} {:<6} {:>8}  rule", "row", "graph", "expected", "computed", "match", "ms");
    let mut reports = Vec::new();
    for r in &rows {
        check_witness(&r.classification)?;
        let dagger = if r.classification.attested { "†" } else { "" };
        let yes_no = |v: GraphVerdict| match v {
            GraphVerdict::Nonlocal => "yes",
            GraphVerdict::NoNonlocal => "no",
            GraphVerdict::Undecided => "?",
        };
        let _ = writeln!(
            out,
            "({:>2}) {:<8} {:<9} {:<12} {:<6} {:>8}  {}",
            r.index,
            r.name,
            yes_no(r.expected),
            format!("{}{dagger}", yes_no(r.classification.verdict)),
            if r.matches() { "ok" } else { "DIFF" },
            r.elapsed_ms,
            r.classification.detail
        );
        reports.push(Table2Report {
            index: r.index,
            name: r.name.to_string(),
            expected: r.expected,
            classification: ClassificationReport::from(&r.classification),
            matches: r.matches(),
            elapsed_ms: r.elapsed_ms,
        });
    }
    let matched = rows.iter().filter(|r| r.matches()).count();
    let _ = writeln!(out, "{matched}/{} verdicts match", rows.len());
    if rows.iter().any(|r| r.classification.attested) {
        let _ = writeln!(out, "† verdict depends on a bundled attestation (not computed here)");
    }
    if let Some(path) = json {
        write_json(path, &reports)?;
    }
    Ok(out)
}

pub fn certify_cmd(cert_path: &str, corr_path: &str, json: Option<&str>) -> CliResult<String> {
    let corr_doc: CorrelationJson = parse_json(corr_path)?;
    let p = Correlation::from_json(&corr_doc)?;
    let n = p.n();
    if n > CERTIFY_BOUND {
        return Err(Error::BoundExceeded(format!("{n} points exceeds {CERTIFY_BOUND} for exhaustive verification")).into());
    }
    let cert_doc: CertificateJson = parse_json(cert_path)?;
    let cert = Certificate::from_json(&cert_doc, p.labels())?;
    let admissible = Admissible::All(n);
    let check = cert.verify(&p, &admissible)?;
    let mut out = String::new();
    let _ = writeln!(out, "certificate with {} terms on {n} points", cert.hyperplane.len());
    let _ = writeln!(
        out,
        "minimum over all {} deterministic correlations: {} (claimed {})",
        admissible.len(),
        check.min_over_deterministic,
        cert.min_over_deterministic
    );
    let shown = check.value_on_p.as_ref().map(value).unwrap_or_else(|| sig6(check.value_on_p_approx));
    let _ = writeln!(out, "value on the correlation: {shown}");
    let _ = writeln!(out, "verdict: {}", if check.sound { "SOUND (correlation is nonlocal)" } else { "REJECTED" });
    if let Some(path) = json {
        let r = CertifyReport {
            points: n,
            deterministic: admissible.len(),
            min_over_deterministic: check.min_over_deterministic.to_string(),
            claimed_min: cert.min_over_deterministic.to_string(),
            value_on_p: check.value_on_p.as_ref().map(Value::from),
            value_on_p_approx: check.value_on_p_approx,
            sound: check.sound,
        };
        write_json(path, &r)?;
    }
    if !check.sound {
        print!("{out}");
        return Err(Error::CertificateFailed(format!("{cert_path} does not separate {corr_path}")).into());
    }
    Ok(out)
}
