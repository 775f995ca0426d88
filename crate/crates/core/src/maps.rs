//! Simplicial maps given by vertex assignments.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::chains::Cochain;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::{OrientedSimplex, Simplex, VertexId};

#[derive(Clone, Debug)]
pub struct SimplicialMap {
    name: String,
    source: SimplicialComplex,
    target: SimplicialComplex,
    assignment: Vec<VertexId>,
}

/// Outcome of [`SimplicialMap::validate_simplicial`]: the facets whose image
/// vertex set is not a simplex of the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialityReport {
    pub checked_facets: usize,
    pub violations: Vec<Simplex>,
}

impl SimplicialityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PivotEdge {
    pub tetra: Simplex,
    pub edge: (VertexId, VertexId),
    pub collapsed_target_vertex: VertexId,
}

impl PivotEdge {
    /// The two vertices of the tetrahedron off the pivot edge, in id order.
    pub fn others(&self) -> (VertexId, VertexId) {
        let rest: Vec<VertexId> = self
            .tetra
            .vertices()
            .iter()
            .copied()
            .filter(|&v| v != self.edge.0 && v != self.edge.1)
            .collect();
        (rest[0], rest[1])
    }
}

impl SimplicialMap {
    pub fn new(name: &str, source: SimplicialComplex, target: SimplicialComplex, assignment: Vec<VertexId>) -> Result<Self> {
        if assignment.len() != source.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "assignment has {} entries for {} source vertices",
                assignment.len(),
                source.vertex_count()
            )));
        }
        if let Some(w) = assignment.iter().find(|w| w.index() >= target.vertex_count()) {
            return Err(Error::UnknownVertex(w.to_string()));
        }
        Ok(SimplicialMap {
            name: name.to_string(),
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from `(source label, target label)` pairs. Every source
    /// vertex must be assigned exactly once.
    pub fn from_labels<S: AsRef<str>>(
        name: &str,
        source: SimplicialComplex,
        target: SimplicialComplex,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut assignment: Vec<Option<VertexId>> = vec![None; source.vertex_count()];
        for (a, b) in pairs {
            let v = source
                .vertex_by_label(a.as_ref())
                .ok_or_else(|| Error::UnknownVertex(a.as_ref().to_string()))?;
            let w = target
                .vertex_by_label(b.as_ref())
                .ok_or_else(|| Error::UnknownVertex(b.as_ref().to_string()))?;
            if assignment[v.index()].replace(w).is_some() {
                return Err(Error::InvalidInput(format!("vertex {} assigned twice", a.as_ref())));
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| Error::InvalidInput(format!("vertex {} is unmapped", source.labels()[i]))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, source, target, assignment)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn assignment(&self) -> &[VertexId] {
        &self.assignment
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.assignment[v.index()]
    }

    pub fn validate_simplicial(&self) -> SimplicialityReport {
        let violations = self
            .source
            .facets()
            .iter()
            .filter(|f| !self.target.contains(&self.image_unchecked(f)))
            .cloned()
            .collect();
        SimplicialityReport {
            checked_facets: self.source.facets().len(),
            violations,
        }
    }

    fn image_unchecked(&self, s: &Simplex) -> Simplex {
        Simplex::from_set(s.vertices().iter().map(|&v| self.apply(v)).collect())
    }

    pub fn image_simplex(&self, s: &Simplex) -> Result<Simplex> {
        if !self.source.contains(s) {
            return Err(Error::SimplexNotInComplex(s.clone()));
        }
        Ok(self.image_unchecked(s))
    }

    /// Source facets whose image is exactly `s`, as facet indices.
    pub fn facets_over(&self, s: &Simplex) -> Vec<usize> {
        self.source
            .facets()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.len() == s.len() + 1 && &self.image_unchecked(f) == s)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn mu(&self, s: &Simplex) -> Result<usize> {
        if self.target.facet_index(s).is_none() {
            return Err(Error::NotMaximal(s.clone()));
        }
        Ok(self
            .source
            .facets()
            .iter()
            .filter(|f| &self.image_unchecked(f) == s)
            .count())
    }

    /// μ for every facet of the target, keyed by facet.
    pub fn mu_all(&self) -> BTreeMap<Simplex, usize> {
        let mut m: BTreeMap<Simplex, usize> = self.target.facets().iter().map(|s| (s.clone(), 0)).collect();
        for f in self.source.facets() {
            if let Some(c) = m.get_mut(&self.image_unchecked(f)) {
                *c += 1;
            }
        }
        m
    }

    /// `(f*c)(v0..vk) = c(f(v0)..f(vk))`, zero when two images coincide.
    pub fn pullback(&self, c: &Cochain) -> Cochain {
        let k = c.degree();
        let mut out = Cochain::zero(k);
        for s in self.source.faces(k) {
            let img: Vec<VertexId> = s.vertices().iter().map(|&v| self.apply(v)).collect();
            if let Some(o) = OrientedSimplex::new(img) {
                out.set(s.clone(), c.evaluate(&o));
            }
        }
        out
    }

    pub fn pivot_edge(&self, tetra: &Simplex) -> Result<PivotEdge> {
        if tetra.len() != 4 || !self.source.contains(tetra) {
            return Err(Error::SimplexNotInComplex(tetra.clone()));
        }
        let image = self.image_unchecked(tetra);
        match image.len() {
            3 => {}
            4 => return Err(Error::NotSimplicial(format!("{tetra} maps onto 4 vertices"))),
            _ => return Err(Error::DegenerateTetra(tetra.clone())),
        }
        let vs = tetra.vertices();
        for i in 0..4 {
            for j in i + 1..4 {
                if self.apply(vs[i]) == self.apply(vs[j]) {
                    return Ok(PivotEdge {
                        tetra: tetra.clone(),
                        edge: (vs[i], vs[j]),
                        collapsed_target_vertex: self.apply(vs[i]),
                    });
                }
            }
        }
        unreachable!("three images among four vertices force a repeat")
    }
}
