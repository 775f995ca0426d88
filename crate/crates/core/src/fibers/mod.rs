//! Preimages of the barycenter of a base triangle, as oriented circles made
//! of one segment per tetrahedron, and null-homology certificates for them.

mod lemmas;
mod points;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::complex::Orientation;
use crate::error::{Error, Result};
use crate::maps::{PivotEdge, SimplicialMap};
use crate::simplex::{permutation_sign, Simplex, VertexId};

pub use lemmas::{
    build_disk_lemma1, build_disk_lemma2, certify_component, lemma1_condition, lemma2_condition, verify_certificate,
    verify_lower_bound, BoundReport, CertificateKind, ComponentSummary, LemmaCertificate, Lemma2Partition,
};
pub use points::{BarycentricPoint, FormalChain, FormalChain1, FormalChain2, GeomPoint};

/// Coherent orientations of source and target used to orient fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientations {
    pub source: Orientation,
    pub target: Orientation,
}

impl Orientations {
    /// The breadth-first orientations with the first facet of each complex
    /// positive.
    pub fn coherent(f: &SimplicialMap) -> Result<Self> {
        let source = f
            .source()
            .coherent_orientation()
            .ok_or_else(|| Error::NotOriented(f.source().name().to_string()))?;
        let target = f
            .target()
            .coherent_orientation()
            .ok_or_else(|| Error::NotOriented(f.target().name().to_string()))?;
        Ok(Orientations { source, target })
    }

    pub fn reverse_source(&self) -> Self {
        Orientations {
            source: self.source.reversed(),
            target: self.target.clone(),
        }
    }

    pub fn reverse_target(&self) -> Self {
        Orientations {
            source: self.source.clone(),
            target: self.target.reversed(),
        }
    }
}

/// The piece of the fiber inside one tetrahedron, directed along its pivot
/// edge from `initial` to `terminal`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSegment {
    pub tetra: Simplex,
    /// Entry point, on the face opposite `terminal`.
    pub a: BarycentricPoint,
    /// Exit point, on the face opposite `initial`.
    pub b: BarycentricPoint,
    pub pivot: PivotEdge,
    pub initial: VertexId,
    pub terminal: VertexId,
}

impl FiberSegment {
    pub fn entry_face(&self) -> Simplex {
        self.tetra.without(self.terminal)
    }

    pub fn exit_face(&self) -> Simplex {
        self.tetra.without(self.initial)
    }
}

fn sign_in(orientation: &Orientation, facet_index: usize, ordered: &[VertexId]) -> i32 {
    orientation.sign(facet_index) * permutation_sign(ordered)
}

/// The fiber segment of `tetra` over the barycenter of `s`.
///
/// With pivot `{x, y} ↦ α` and remaining vertices `u, w`, the segment joins
/// the points with weight 1/3 on `x, u, w` and on `y, u, w`. Order `u, w` so
/// that `(α, f(u), f(w))` is positive in the target; the segment runs from
/// `x` to `y` when `(x, y, u, w)` is positive in the source.
pub fn fiber_segment(f: &SimplicialMap, tetra: &Simplex, s: &Simplex, orientations: &Orientations) -> Result<FiberSegment> {
    let pivot = f.pivot_edge(tetra)?;
    let image = f.image_simplex(tetra)?;
    if &image != s {
        return Err(Error::TriangleMismatch {
            tetra: tetra.clone(),
            image,
            expected: s.clone(),
        });
    }
    let tet_index = f.source().facet_index(tetra).ok_or_else(|| Error::SimplexNotInComplex(tetra.clone()))?;
    let tri_index = f.target().facet_index(s).ok_or_else(|| Error::NotMaximal(s.clone()))?;
    let alpha = pivot.collapsed_target_vertex;
    let (x, y) = pivot.edge;
    let (mut u, mut w) = pivot.others();
    if sign_in(&orientations.target, tri_index, &[alpha, f.apply(u), f.apply(w)]) < 0 {
        std::mem::swap(&mut u, &mut w);
    }
    let (initial, terminal) = if sign_in(&orientations.source, tet_index, &[x, y, u, w]) > 0 {
        (x, y)
    } else {
        (y, x)
    };
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let point = |z: VertexId| BarycentricPoint::new([z, u, w].map(|v| (v, third.clone())));
    Ok(FiberSegment {
        tetra: tetra.clone(),
        a: point(initial)?,
        b: point(terminal)?,
        pivot,
        initial,
        terminal,
    })
}

/// One oriented circle of the fiber, as its cyclic sequence of segments.
#[derive(Clone, Debug, Serialize)]
pub struct FiberComponent {
    pub segments: Vec<FiberSegment>,
}

impl FiberComponent {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// The tetrahedra met by the circle.
    pub fn s_set(&self) -> BTreeSet<Simplex> {
        self.segments.iter().map(|g| g.tetra.clone()).collect()
    }

    /// All vertices of those tetrahedra.
    pub fn v_set(&self) -> BTreeSet<VertexId> {
        self.segments.iter().flat_map(|g| g.tetra.vertices().iter().copied()).collect()
    }

    pub fn initial_image(&self) -> BTreeSet<VertexId> {
        self.segments.iter().map(|g| g.initial).collect()
    }

    pub fn next_index(&self, i: usize) -> usize {
        (i + 1) % self.segments.len()
    }

    pub fn prev_index(&self, i: usize) -> usize {
        (i + self.segments.len() - 1) % self.segments.len()
    }

    /// `C_i = Σ [a(σ), b(σ)]`.
    pub fn cycle(&self) -> FormalChain1 {
        let mut c = FormalChain1::new();
        for g in &self.segments {
            c.add_cell([g.a.clone().into(), g.b.clone().into()], &BigInt::one())
                .expect("segment endpoints are distinct");
        }
        c
    }

    /// Number of vertices of `V_i` sent to each target vertex.
    pub fn preimage_counts(&self, f: &SimplicialMap) -> BTreeMap<VertexId, usize> {
        let mut m = BTreeMap::new();
        for v in self.v_set() {
            *m.entry(f.apply(v)).or_insert(0) += 1;
        }
        m
    }

    /// Checks that consecutive segments meet exactly and that
    /// `σ = (σ ∩ next σ) ⊔ {init σ} = (σ ∩ prev σ) ⊔ {ter σ}`.
    pub fn check_structure(&self) -> Result<()> {
        for (i, g) in self.segments.iter().enumerate() {
            let next = &self.segments[self.next_index(i)];
            let prev = &self.segments[self.prev_index(i)];
            if g.b != next.a {
                return Err(Error::OpenChain(g.tetra.clone()));
            }
            let with_next = intersection(&g.tetra, &next.tetra);
            let with_prev = intersection(&g.tetra, &prev.tetra);
            if self.segments.len() > 1
                && (with_next.contains(g.initial)
                    || with_next.len() != 3
                    || with_prev.contains(g.terminal)
                    || with_prev.len() != 3)
            {
                return Err(Error::OrientationMismatch(g.tetra.clone(), next.tetra.clone()));
            }
        }
        Ok(())
    }
}

fn intersection(a: &Simplex, b: &Simplex) -> Simplex {
    Simplex::from_set(a.vertices().iter().copied().filter(|v| b.contains(*v)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberDiagram {
    pub base_triangle: Simplex,
    /// Barycenter of the base triangle, in target coordinates.
    pub p: BarycentricPoint,
    pub components: Vec<FiberComponent>,
}

impl FiberDiagram {
    pub fn segment_count(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum()
    }
}

pub fn extract_fiber(f: &SimplicialMap, s: &Simplex) -> Result<FiberDiagram> {
    extract_fiber_oriented(f, s, &Orientations::coherent(f)?)
}

/// Chains the segments over `s` through their shared faces into circles.
pub fn extract_fiber_oriented(f: &SimplicialMap, s: &Simplex, orientations: &Orientations) -> Result<FiberDiagram> {
    if f.target().facet_index(s).is_none() || s.len() != 3 {
        return Err(Error::NotMaximal(s.clone()));
    }
    let segments: Vec<FiberSegment> = f
        .facets_over(s)
        .into_iter()
        .map(|i| fiber_segment(f, &f.source().facets()[i], s, orientations))
        .collect::<Result<_>>()?;
    let mut by_entry: HashMap<Simplex, usize> = HashMap::new();
    for (i, g) in segments.iter().enumerate() {
        if let Some(j) = by_entry.insert(g.entry_face(), i) {
            return Err(Error::OrientationMismatch(segments[j].tetra.clone(), g.tetra.clone()));
        }
    }
    let mut next = vec![usize::MAX; segments.len()];
    let mut has_prev = vec![false; segments.len()];
    for (i, g) in segments.iter().enumerate() {
        let j = *by_entry.get(&g.exit_face()).ok_or_else(|| Error::OpenChain(g.tetra.clone()))?;
        if has_prev[j] {
            return Err(Error::OrientationMismatch(g.tetra.clone(), segments[j].tetra.clone()));
        }
        if g.b != segments[j].a {
            return Err(Error::OpenChain(g.tetra.clone()));
        }
        has_prev[j] = true;
        next[i] = j;
    }
    let mut seen = vec![false; segments.len()];
    let mut components = Vec::new();
    for start in 0..segments.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(segments[i].clone());
            i = next[i];
        }
        if i != start {
            return Err(Error::OpenChain(segments[start].tetra.clone()));
        }
        let component = FiberComponent { segments: cycle };
        component.check_structure()?;
        components.push(component);
    }
    Ok(FiberDiagram {
        base_triangle: s.clone(),
        p: BarycentricPoint::barycenter(s),
        components,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::manifold::fixtures::{d4, tetra_boundary};

    pub(crate) fn collapse5() -> SimplicialMap {
        SimplicialMap::from_labels(
            "collapse5",
            d4(),
            tetra_boundary(),
            &[("0", "A"), ("1", "B"), ("2", "C"), ("3", "A"), ("4", "A")],
        )
        .unwrap()
    }

    pub(crate) fn s(ids: &[u32]) -> Simplex {
        Simplex::from_ids(ids).unwrap()
    }

    #[test]
    fn collapse5_segments() {
        let f = collapse5();
        let o = Orientations::coherent(&f).unwrap();
        let abc = s(&[0, 1, 2]);
        let g = fiber_segment(&f, &s(&[0, 1, 2, 3]), &abc, &o).unwrap();
        let carriers = BTreeSet::from([g.a.carrier(), g.b.carrier()]);
        assert_eq!(carriers, BTreeSet::from([s(&[1, 2, 3]), s(&[0, 1, 2])]));
        let g = fiber_segment(&f, &s(&[1, 2, 3, 4]), &abc, &o).unwrap();
        let carriers = BTreeSet::from([g.a.carrier(), g.b.carrier()]);
        assert_eq!(carriers, BTreeSet::from([s(&[1, 2, 4]), s(&[1, 2, 3])]));
        assert!(matches!(
            fiber_segment(&f, &s(&[0, 1, 3, 4]), &abc, &o),
            Err(Error::DegenerateTetra(_))
        ));
        assert!(matches!(
            fiber_segment(&f, &s(&[0, 1, 2, 3]), &s(&[0, 1, 3]), &o),
            Err(Error::TriangleMismatch { .. })
        ));
    }

    #[test]
    fn collapse5_fiber_is_one_triangle_circle() {
        let f = collapse5();
        let d = extract_fiber(&f, &s(&[0, 1, 2])).unwrap();
        assert_eq!(d.components.len(), 1);
        let c = &d.components[0];
        assert_eq!(c.len(), 3);
        assert_eq!(c.v_set().len(), 5);
        let order: Vec<Simplex> = c.segments.iter().map(|g| g.tetra.clone()).collect();
        let pos = |t: &Simplex| order.iter().position(|x| x == t).unwrap();
        let (i, j, k) = (pos(&s(&[0, 1, 2, 3])), pos(&s(&[1, 2, 3, 4])), pos(&s(&[0, 1, 2, 4])));
        // The cyclic order is one of the two orientations of the 3-cycle.
        assert!((j == (i + 1) % 3 && k == (j + 1) % 3) || (j == (i + 2) % 3 && k == (j + 2) % 3));
        assert_eq!(c.initial_image().len(), 3);
    }

    #[test]
    fn reversing_source_reverses_segments() {
        let f = collapse5();
        let o = Orientations::coherent(&f).unwrap();
        let abc = s(&[0, 1, 2]);
        let d = extract_fiber_oriented(&f, &abc, &o).unwrap();
        let r = extract_fiber_oriented(&f, &abc, &o.reverse_source()).unwrap();
        assert_eq!(r.components[0].cycle(), d.components[0].cycle().negated());
        let t = extract_fiber_oriented(&f, &abc, &o.reverse_target()).unwrap();
        assert_eq!(t.components[0].cycle(), d.components[0].cycle().negated());
    }

    #[test]
    fn empty_fibers() {
        let f = collapse5();
        assert!(extract_fiber(&f, &s(&[0, 1, 3])).unwrap().components.is_empty());
        assert!(matches!(extract_fiber(&f, &s(&[0, 1])), Err(Error::NotMaximal(_))));
    }
}
