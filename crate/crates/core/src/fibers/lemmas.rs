//! Disks bounding fiber circles, and the lower bound on μ for maps with
//! nonzero Hopf invariant.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::{extract_fiber_oriented, FiberComponent, FiberDiagram, FormalChain2, GeomPoint, Orientations};
use crate::error::{Error, Result};
use crate::maps::SimplicialMap;
use crate::simplex::{Simplex, VertexId};

/// A vertex of `V_i` outside the image of `init_i`, smallest id first.
pub fn lemma1_condition(component: &FiberComponent) -> Option<VertexId> {
    let init = component.initial_image();
    component.v_set().into_iter().find(|v| !init.contains(v))
}

/// The first vertex of the base triangle with at most two preimages in
/// `V_i`.
pub fn lemma2_condition(f: &SimplicialMap, component: &FiberComponent) -> Option<VertexId> {
    let base = f.image_simplex(&component.segments.first()?.tetra).ok()?;
    let counts = component.preimage_counts(f);
    base.vertices().iter().copied().find(|a| counts.get(a).copied().unwrap_or(0) <= 2)
}

fn cone(disk: &mut FormalChain2, apex: VertexId, component: &FiberComponent, only: impl Fn(usize) -> bool) {
    for (i, g) in component.segments.iter().enumerate() {
        if only(i) {
            disk.add_cell([GeomPoint::Vertex(apex), g.a.clone().into(), g.b.clone().into()], &BigInt::one())
                .expect("a vertex is never an interior fiber point");
        }
    }
}

/// `D = Σ (v, a(σ), b(σ))`, whose boundary telescopes to `Σ [a(σ), b(σ)]`.
pub fn build_disk_lemma1(component: &FiberComponent, v: VertexId) -> Result<FormalChain2> {
    if component.initial_image().contains(&v) || !component.v_set().contains(&v) {
        return Err(Error::ConditionNotMet(format!("vertex {v} is an initial vertex or not in V")));
    }
    if let Some(g) = component.segments.iter().find(|g| !g.tetra.contains(v)) {
        return Err(Error::ConditionNotMet(format!("vertex {v} is not in {}", g.tetra)));
    }
    let mut disk = FormalChain2::new();
    cone(&mut disk, v, component, |_| true);
    Ok(disk)
}

/// Partition of a component with exactly two preimages `u`, `v` of α.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma2Partition {
    pub u: VertexId,
    pub v: VertexId,
    pub only_u: Vec<usize>,
    pub only_v: Vec<usize>,
    pub r_u: Vec<usize>,
    pub r_v: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    U,
    V,
    Ru,
    Rv,
}

fn partition(f: &SimplicialMap, component: &FiberComponent, alpha: VertexId) -> Result<Lemma2Partition> {
    let first = component
        .segments
        .iter()
        .find(|g| g.pivot.collapsed_target_vertex == alpha)
        .ok_or_else(|| Error::ConditionNotMet(format!("no pivot edge over {alpha}")))?;
    let (v, u) = (first.initial, first.terminal);
    let mut parts = Vec::with_capacity(component.len());
    for g in &component.segments {
        let part = match (g.tetra.contains(u), g.tetra.contains(v)) {
            (true, false) => Part::U,
            (false, true) => Part::V,
            (true, true) if g.initial == u => Part::Ru,
            (true, true) if g.initial == v => Part::Rv,
            _ => {
                return Err(Error::PartitionInconsistent(format!(
                    "{} does not fit the partition for {u}, {v}",
                    f.source().display_simplex(&g.tetra)
                )))
            }
        };
        parts.push(part);
    }
    for (i, &p) in parts.iter().enumerate() {
        let q = parts[component.next_index(i)];
        let ok = match p {
            Part::U => matches!(q, Part::U | Part::Ru),
            Part::V => matches!(q, Part::V | Part::Rv),
            Part::Ru => q == Part::V,
            Part::Rv => q == Part::U,
        };
        if !ok {
            return Err(Error::PartitionInconsistent(format!(
                "transition out of {} breaks the rules",
                component.segments[i].tetra
            )));
        }
    }
    let pick = |want: Part| -> Vec<usize> { (0..parts.len()).filter(|&i| parts[i] == want).collect() };
    let p = Lemma2Partition {
        u,
        v,
        only_u: pick(Part::U),
        only_v: pick(Part::V),
        r_u: pick(Part::Ru),
        r_v: pick(Part::Rv),
    };
    if p.r_u.len() != p.r_v.len() {
        return Err(Error::PartitionInconsistent(format!("|R_u| = {} but |R_v| = {}", p.r_u.len(), p.r_v.len())));
    }
    Ok(p)
}

/// Disk over the preimages of α. With a single preimage `w` this is the
/// cone from `w`; with two, `u` and `v`, cones cover the tetrahedra holding
/// one of them, and each tetrahedron holding both contributes the
/// trapezoid `(init, a, b) + (init, b, ter)`.
pub fn build_disk_lemma2(f: &SimplicialMap, component: &FiberComponent, alpha: VertexId) -> Result<(FormalChain2, Option<Lemma2Partition>)> {
    let pre: Vec<VertexId> = component.v_set().into_iter().filter(|&w| f.apply(w) == alpha).collect();
    match pre.len() {
        0 => Err(Error::ConditionNotMet(format!("{alpha} has no preimage in V"))),
        1 => {
            let mut disk = FormalChain2::new();
            cone(&mut disk, pre[0], component, |_| true);
            Ok((disk, None))
        }
        2 => {
            if let Some(w) = lemma1_condition(component) {
                return Err(Error::ConditionNotMet(format!("vertex {w} is not initial; use the cone over it")));
            }
            let p = partition(f, component, alpha)?;
            let mut disk = FormalChain2::new();
            cone(&mut disk, p.u, component, |i| p.only_u.contains(&i));
            cone(&mut disk, p.v, component, |i| p.only_v.contains(&i));
            for &i in p.r_u.iter().chain(&p.r_v) {
                let g = &component.segments[i];
                let (a, b): (GeomPoint, GeomPoint) = (g.a.clone().into(), g.b.clone().into());
                let init = GeomPoint::Vertex(g.initial);
                let ter = GeomPoint::Vertex(g.terminal);
                disk.add_cell([init.clone(), a, b.clone()], &BigInt::one())?;
                disk.add_cell([init, b, ter], &BigInt::one())?;
            }
            Ok((disk, Some(p)))
        }
        n => Err(Error::ConditionNotMet(format!("{alpha} has {n} preimages in V"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum CertificateKind {
    Lemma1 { vertex: VertexId },
    Lemma2 { alpha: VertexId, partition: Option<Lemma2Partition> },
    Neither,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCertificate {
    pub component: usize,
    pub which: CertificateKind,
    pub disk: Option<FormalChain2>,
}

/// Tries the vertex disk first, then the median disk.
pub fn certify_component(f: &SimplicialMap, component: &FiberComponent, index: usize) -> Result<LemmaCertificate> {
    if let Some(v) = lemma1_condition(component) {
        return Ok(LemmaCertificate {
            component: index,
            which: CertificateKind::Lemma1 { vertex: v },
            disk: Some(build_disk_lemma1(component, v)?),
        });
    }
    if let Some(alpha) = lemma2_condition(f, component) {
        let (disk, partition) = build_disk_lemma2(f, component, alpha)?;
        return Ok(LemmaCertificate {
            component: index,
            which: CertificateKind::Lemma2 { alpha, partition },
            disk: Some(disk),
        });
    }
    Ok(LemmaCertificate {
        component: index,
        which: CertificateKind::Neither,
        disk: None,
    })
}

/// Checks `∂D = C` and that every point of `D` maps to `p` or to the
/// certificate's target vertex.
pub fn verify_certificate(f: &SimplicialMap, diagram: &FiberDiagram, cert: &LemmaCertificate) -> Result<()> {
    let component = &diagram.components[cert.component];
    let Some(disk) = &cert.disk else {
        return Ok(());
    };
    let alpha = match &cert.which {
        CertificateKind::Lemma1 { vertex } => f.apply(*vertex),
        CertificateKind::Lemma2 { alpha, .. } => *alpha,
        CertificateKind::Neither => return Err(Error::InvalidInput("disk without a lemma".into())),
    };
    if disk.boundary() != component.cycle() {
        return Err(Error::TheoremViolation(format!(
            "disk for component {} does not bound its circle",
            cert.component
        )));
    }
    let allowed = [GeomPoint::from(diagram.p.clone()), GeomPoint::Vertex(alpha)];
    for pt in disk.points() {
        let img = pt.push_forward(|v| f.apply(v));
        if !allowed.contains(&img) {
            return Err(Error::TheoremViolation(format!("disk point {pt} maps to {img}, off the median")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    pub index: usize,
    pub s_len: usize,
    pub v_len: usize,
    pub initial_image_len: usize,
    pub certificate: CertificateKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub triangle: Simplex,
    pub mu: usize,
    pub hopf: i64,
    pub components: Vec<ComponentSummary>,
    /// Every component carries a verified disk.
    pub all_certified: bool,
    pub bound_holds: bool,
}

/// Runs the argument of the lower bound on the fiber over `s`.
///
/// Every certificate found is verified. When `hopf ≠ 0` some component must
/// fail both lemmas, and for each such component
/// `|S| ≥ |init(S)| = |V| ≥ 9` is checked. Any failure is a
/// `TheoremViolation`.
pub fn verify_lower_bound(f: &SimplicialMap, s: &Simplex, hopf: i64, orientations: &Orientations) -> Result<BoundReport> {
    let diagram = extract_fiber_oriented(f, s, orientations)?;
    let mut components = Vec::new();
    let mut all_certified = true;
    for (i, c) in diagram.components.iter().enumerate() {
        let cert = certify_component(f, c, i)?;
        verify_certificate(f, &diagram, &cert)?;
        let summary = ComponentSummary {
            index: i,
            s_len: c.len(),
            v_len: c.v_set().len(),
            initial_image_len: c.initial_image().len(),
            certificate: cert.which.clone(),
        };
        if summary.certificate == CertificateKind::Neither {
            all_certified = false;
            let counts = c.preimage_counts(f);
            let three_each = s.vertices().iter().all(|a| counts.get(a).copied().unwrap_or(0) >= 3);
            if !(summary.s_len >= summary.initial_image_len && summary.initial_image_len == summary.v_len && three_each && summary.v_len >= 9) {
                return Err(Error::TheoremViolation(format!(
                    "component {i} over {} fails |S| ≥ |init| = |V| ≥ 9",
                    f.target().display_simplex(s)
                )));
            }
        }
        components.push(summary);
    }
    let mu = diagram.segment_count();
    if hopf != 0 && all_certified {
        return Err(Error::TheoremViolation(format!(
            "H = {hopf} but every fiber component over {} bounds a disk",
            f.target().display_simplex(s)
        )));
    }
    let bound_holds = hopf == 0 || mu >= 9;
    if !bound_holds {
        return Err(Error::TheoremViolation(format!("H = {hopf} and μ = {mu} < 9")));
    }
    Ok(BoundReport {
        triangle: s.clone(),
        mu,
        hopf,
        components,
        all_certified,
        bound_holds,
    })
}
