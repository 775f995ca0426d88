//! Line-based bundle files holding complexes and maps, and JSON reports.
//!
//! ```text
//! # comment
//! complex S2_4
//! dim 2
//! facet A B C
//! map f src S2_4
//! 0 -> A
//! ```

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::fibers::{certify_component, extract_fiber_oriented, verify_lower_bound, BoundReport, CertificateKind, Orientations};
use crate::hopf::{check_preconditions, hopf_invariant_oriented, perturbation_trials, HopfResult, WellDefinednessCheck};
use crate::manifold::{validate_closed_oriented_3_manifold, validate_sphere_2, ManifoldReport};
use crate::maps::{SimplicialMap, SimplicialityReport};
use crate::simplex::VertexId;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown complex `{name}`")]
    UnknownComplex { line: usize, name: String },
    #[error("line {line}: unknown vertex `{label}`")]
    UnknownVertex { line: usize, label: String },
    #[error("line {line}: vertex `{label}` of `{complex}` is not mapped")]
    UnmappedVertex { line: usize, complex: String, label: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: Error },
}

#[derive(Clone, Debug, Default)]
pub struct Bundle {
    pub complexes: Vec<SimplicialComplex>,
    pub maps: Vec<SimplicialMap>,
}

impl Bundle {
    pub fn complex(&self, name: &str) -> Option<&SimplicialComplex> {
        self.complexes.iter().find(|c| c.name() == name)
    }

    pub fn map(&self, name: &str) -> Option<&SimplicialMap> {
        self.maps.iter().find(|m| m.name() == name)
    }

    /// A bundle with one map and its two complexes.
    pub fn from_map(f: &SimplicialMap) -> Bundle {
        Bundle {
            complexes: vec![f.source().clone(), f.target().clone()],
            maps: vec![f.clone()],
        }
    }
}

fn is_label(t: &str) -> bool {
    !t.is_empty() && t.chars().all(|c| c.is_ascii_alphanumeric())
}

fn is_name(t: &str) -> bool {
    !t.is_empty() && t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

struct ComplexSection {
    line: usize,
    name: String,
    dim: Option<(usize, usize)>,
    facets: Vec<(usize, Vec<String>)>,
}

struct MapSection {
    line: usize,
    name: String,
    source: String,
    target: String,
    pairs: Vec<(usize, String, String)>,
}

enum Section {
    Complex(ComplexSection),
    Map(MapSection),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_bundle(text: &str) -> Result<Bundle, ParseError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "complex" => {
                if tokens.len() != 2 || !is_name(tokens[1]) {
                    return Err(syntax(line, "expected `complex <name>`"));
                }
                sections.push(Section::Complex(ComplexSection {
                    line,
                    name: tokens[1].to_string(),
                    dim: None,
                    facets: Vec::new(),
                }));
            }
            "map" => {
                if tokens.len() != 4 || !tokens[1..].iter().all(|t| is_name(t)) {
                    return Err(syntax(line, "expected `map <name> <source> <target>`"));
                }
                sections.push(Section::Map(MapSection {
                    line,
                    name: tokens[1].to_string(),
                    source: tokens[2].to_string(),
                    target: tokens[3].to_string(),
                    pairs: Vec::new(),
                }));
            }
            "dim" => {
                let Some(Section::Complex(c)) = sections.last_mut() else {
                    return Err(syntax(line, "`dim` outside a complex section"));
                };
                let d = match tokens.as_slice() {
                    [_, d] => d.parse::<usize>().map_err(|_| syntax(line, "dimension must be a nonnegative integer"))?,
                    _ => return Err(syntax(line, "expected `dim <d>`")),
                };
                if c.dim.replace((line, d)).is_some() {
                    return Err(syntax(line, "repeated `dim`"));
                }
            }
            "facet" => {
                let Some(Section::Complex(c)) = sections.last_mut() else {
                    return Err(syntax(line, "`facet` outside a complex section"));
                };
                if tokens.len() < 2 {
                    return Err(syntax(line, "empty facet"));
                }
                if let Some(bad) = tokens[1..].iter().find(|t| !is_label(t)) {
                    return Err(syntax(line, format!("vertex label `{bad}` is not alphanumeric")));
                }
                c.facets.push((line, tokens[1..].iter().map(|s| s.to_string()).collect()));
            }
            _ => {
                let Some(Section::Map(m)) = sections.last_mut() else {
                    return Err(syntax(line, format!("unexpected `{}`", tokens[0])));
                };
                match tokens.as_slice() {
                    [a, "->", b] if is_label(a) && is_label(b) => m.pairs.push((line, a.to_string(), b.to_string())),
                    _ => return Err(syntax(line, "expected `<vertex> -> <vertex>`")),
                }
            }
        }
    }
    if sections.is_empty() {
        return Err(syntax(1, "no complex or map sections"));
    }

    let mut bundle = Bundle::default();
    let mut by_name: HashMap<String, usize> = HashMap::new();
    for s in &sections {
        let Section::Complex(c) = s else { continue };
        if c.facets.is_empty() {
            return Err(syntax(c.line, format!("complex `{}` has no facets", c.name)));
        }
        let facets: Vec<Vec<String>> = c.facets.iter().map(|(_, f)| f.clone()).collect();
        let complex = SimplicialComplex::from_labeled_facets(&c.name, &facets).map_err(|e| {
            // Point at the offending facet where possible.
            let line = match &e {
                Error::DuplicateVertexInFacet(text) => c
                    .facets
                    .iter()
                    .find(|(_, f)| &f.join(" ") == text)
                    .map_or(c.line, |(l, _)| *l),
                _ => c.line,
            };
            ParseError::Invalid { line, source: e }
        })?;
        if let Some((line, d)) = c.dim {
            if complex.dim() != d {
                return Err(syntax(line, format!("declared dim {d} but facets have dim {}", complex.dim())));
            }
        }
        if by_name.insert(c.name.clone(), bundle.complexes.len()).is_some() {
            return Err(syntax(c.line, format!("complex `{}` defined twice", c.name)));
        }
        bundle.complexes.push(complex);
    }
    for s in &sections {
        let Section::Map(m) = s else { continue };
        let lookup = |name: &str| {
            by_name.get(name).map(|&i| bundle.complexes[i].clone()).ok_or_else(|| ParseError::UnknownComplex {
                line: m.line,
                name: name.to_string(),
            })
        };
        let source = lookup(&m.source)?;
        let target = lookup(&m.target)?;
        let mut assignment: Vec<Option<VertexId>> = vec![None; source.vertex_count()];
        for (line, a, b) in &m.pairs {
            let v = source.vertex_by_label(a).ok_or_else(|| ParseError::UnknownVertex {
                line: *line,
                label: a.clone(),
            })?;
            let w = target.vertex_by_label(b).ok_or_else(|| ParseError::UnknownVertex {
                line: *line,
                label: b.clone(),
            })?;
            if assignment[v.index()].replace(w).is_some() {
                return Err(syntax(*line, format!("vertex `{a}` mapped twice")));
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| ParseError::UnmappedVertex {
                    line: m.line,
                    complex: source.name().to_string(),
                    label: source.labels()[i].clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if bundle.map(&m.name).is_some() {
            return Err(syntax(m.line, format!("map `{}` defined twice", m.name)));
        }
        let map = SimplicialMap::new(&m.name, source, target, assignment).map_err(|e| ParseError::Invalid {
            line: m.line,
            source: e,
        })?;
        bundle.maps.push(map);
    }
    Ok(bundle)
}

/// Writes complexes with facets in input order and maps vertex by vertex.
pub fn serialize_bundle(bundle: &Bundle) -> String {
    let mut out = String::new();
    for c in &bundle.complexes {
        writeln!(out, "complex {}", c.name()).unwrap();
        writeln!(out, "dim {}", c.dim()).unwrap();
        for f in c.facets() {
            let labels: Vec<&str> = f.vertices().iter().map(|&v| c.label(v)).collect();
            writeln!(out, "facet {}", labels.join(" ")).unwrap();
        }
        out.push('\n');
    }
    for m in &bundle.maps {
        writeln!(out, "map {} {} {}", m.name(), m.source().name(), m.target().name()).unwrap();
        for v in m.source().vertices() {
            writeln!(out, "{} -> {}", m.source().label(v), m.target().label(m.apply(v))).unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationSection {
    pub simpliciality: SimplicialityReport,
    pub source: ManifoldReport,
    pub target: ManifoldReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub s_len: usize,
    pub v_len: usize,
    pub initial_image_len: usize,
    pub certificate: CertificateKind,
    pub disk_cells: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub triangle: String,
    pub mu: usize,
    pub components: Vec<ComponentReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub map: String,
    pub validation: ValidationSection,
    pub mu: BTreeMap<String, usize>,
    pub fibers: Vec<FiberReport>,
    pub hopf: Option<HopfResult>,
    pub perturbation_trials: Vec<WellDefinednessCheck>,
    pub bound: Vec<BoundReport>,
    pub theorem_holds: bool,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn validation_section(f: &SimplicialMap) -> ValidationSection {
    ValidationSection {
        simpliciality: f.validate_simplicial(),
        source: validate_closed_oriented_3_manifold(f.source()),
        target: validate_sphere_2(f.target()),
    }
}

/// Fiber summaries with lemma certificates for one base triangle.
pub fn fiber_report(f: &SimplicialMap, s: &crate::simplex::Simplex, o: &Orientations) -> Result<FiberReport, Error> {
    let d = extract_fiber_oriented(f, s, o)?;
    let mut components = Vec::new();
    for (i, c) in d.components.iter().enumerate() {
        let cert = certify_component(f, c, i)?;
        crate::fibers::verify_certificate(f, &d, &cert)?;
        components.push(ComponentReport {
            s_len: c.len(),
            v_len: c.v_set().len(),
            initial_image_len: c.initial_image().len(),
            certificate: cert.which,
            disk_cells: cert.disk.as_ref().map(|d| d.len()),
        });
    }
    Ok(FiberReport {
        triangle: f.target().display_simplex(s),
        mu: d.segment_count(),
        components,
    })
}

/// Full verification of one map: validation, μ table, fibers with
/// certificates, H with well-definedness trials, and the lower bound on
/// every triangle. A failed bound is returned as `TheoremViolation`.
pub fn check_theorem(f: &SimplicialMap, trials: usize, seed: u64) -> Result<ReportDocument, Error> {
    let validation = validation_section(f);
    let o = check_preconditions(f)?;
    let hopf = hopf_invariant_oriented(f, &o)?;
    let perturbation = perturbation_trials(f, &o, trials, seed)?;
    if let Some(t) = perturbation.iter().find(|t| t.value != hopf.value) {
        return Err(Error::InvalidInput(format!("H changed to {} under {}", t.value, t.choice)));
    }
    let mut fibers = Vec::new();
    let mut bound = Vec::new();
    for s in f.target().faces(2) {
        fibers.push(fiber_report(f, s, &o)?);
        bound.push(verify_lower_bound(f, s, hopf.value, &o)?);
    }
    let theorem_holds = bound.iter().all(|b| b.bound_holds);
    let mu = f
        .mu_all()
        .into_iter()
        .map(|(s, m)| (f.target().display_simplex(&s), m))
        .collect();
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        map: f.name().to_string(),
        validation,
        mu,
        fibers,
        hopf: Some(hopf),
        perturbation_trials: perturbation,
        bound,
        theorem_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_collapse5;

    const COLLAPSE5: &str = "\
# boundary of the 4-simplex folded onto a triangle
complex S3_5
dim 3
facet 0 1 2 3
facet 0 1 2 4
facet 0 1 3 4
facet 0 2 3 4
facet 1 2 3 4

complex S2_4
dim 2
facet A B C
facet A B D
facet A C D
facet B C D

map collapse5 S3_5 S2_4
0 -> A
1 -> B
2 -> C
3 -> A   # folded
4 -> A
";

    #[test]
    fn parses_fixture() {
        let b = parse_bundle(COLLAPSE5).unwrap();
        assert_eq!(b.complexes.len(), 2);
        assert_eq!(b.maps.len(), 1);
        let g = gen_collapse5().unwrap();
        assert_eq!(b.maps[0].assignment(), g.map.assignment());
    }

    #[test]
    fn roundtrip() {
        let b = parse_bundle(COLLAPSE5).unwrap();
        let text = serialize_bundle(&b);
        let again = parse_bundle(&text).unwrap();
        assert_eq!(serialize_bundle(&again), text);
        assert_eq!(again.complexes[0].facets(), b.complexes[0].facets());
    }

    #[test]
    fn errors_carry_lines() {
        assert!(matches!(parse_bundle(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_bundle("# only a comment\n"), Err(ParseError::Syntax { .. })));
        let bad = COLLAPSE5.replace("2 -> C", "2 -> X");
        assert_eq!(
            parse_bundle(&bad).unwrap_err(),
            ParseError::UnknownVertex {
                line: 20,
                label: "X".into()
            }
        );
        let missing = COLLAPSE5.replace("4 -> A\n", "");
        assert!(matches!(parse_bundle(&missing), Err(ParseError::UnmappedVertex { line: 17, .. })));
        let unknown = COLLAPSE5.replace("map collapse5 S3_5 S2_4", "map collapse5 S3_5 T");
        assert!(matches!(parse_bundle(&unknown), Err(ParseError::UnknownComplex { line: 17, .. })));
        let dup = COLLAPSE5.replace("facet 0 1 2 4", "facet 0 1 1 4");
        assert!(matches!(parse_bundle(&dup), Err(ParseError::Invalid { line: 5, .. })));
        let dim = COLLAPSE5.replace("dim 3", "dim 2");
        assert!(matches!(parse_bundle(&dim), Err(ParseError::Syntax { line: 3, .. })));
    }

    #[test]
    fn report_for_collapse5() {
        let b = parse_bundle(COLLAPSE5).unwrap();
        let r = check_theorem(&b.maps[0], 3, 7).unwrap();
        assert_eq!(r.hopf.as_ref().unwrap().value, 0);
        assert!(r.theorem_holds);
        assert_eq!(r.mu["A,B,C"], 3);
        let json = r.to_json();
        assert!(json.contains("\"schema_version\": 1"));
        assert_eq!(json, check_theorem(&b.maps[0], 3, 7).unwrap().to_json());
    }
}
