//! Finite abstract simplicial complexes given by their maximal simplices.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};

/// A complex stored by its facets (in input order) together with the full
/// face closure, indexed per dimension in lexicographic order.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    name: String,
    labels: Vec<String>,
    facets: Vec<Simplex>,
    faces: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

/// Sign per facet, aligned with [`SimplicialComplex::facets`]. A sign of `+1`
/// means the increasing vertex order is positively oriented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    signs: Vec<i32>,
}

impl Orientation {
    pub fn from_signs(signs: Vec<i32>) -> Self {
        Orientation { signs }
    }

    pub fn signs(&self) -> &[i32] {
        &self.signs
    }

    pub fn sign(&self, facet_index: usize) -> i32 {
        self.signs[facet_index]
    }

    pub fn reversed(&self) -> Orientation {
        Orientation {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

/// Orders labels so that embedded digit runs compare numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(cb.iter()) {
        let ord = match (x, y) {
            ((true, p), (true, q)) => {
                let (p, q) = (p.trim_start_matches('0'), q.trim_start_matches('0'));
                p.len().cmp(&q.len()).then_with(|| p.cmp(q))
            }
            ((_, p), (_, q)) => p.cmp(q),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

impl SimplicialComplex {
    /// Builds a complex from facets given by vertex labels. Vertex ids are
    /// assigned in natural label order, so `"2"` precedes `"10"`.
    pub fn from_labeled_facets<S: AsRef<str>>(name: &str, facets: &[Vec<S>]) -> Result<Self> {
        let mut labels: Vec<String> = facets
            .iter()
            .flatten()
            .map(|s| s.as_ref().to_string())
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        labels.sort_by(|a, b| natural_cmp(a, b));
        let ids: HashMap<&str, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), VertexId(i as u32)))
            .collect();
        let mut simplices = Vec::with_capacity(facets.len());
        for facet in facets {
            let verts: Vec<VertexId> = facet.iter().map(|l| ids[l.as_ref()]).collect();
            let simplex = Simplex::new(verts).ok_or_else(|| {
                Error::DuplicateVertexInFacet(
                    facet.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(" "),
                )
            })?;
            simplices.push(simplex);
        }
        Self::from_simplices(name, labels.clone(), simplices)
    }

    /// Builds a complex from integer vertex tuples; labels are the decimal ids
    /// and ids are kept as given as long as they are dense from zero.
    pub fn from_facets(name: &str, facets: &[Vec<u32>]) -> Result<Self> {
        let labeled: Vec<Vec<String>> = facets
            .iter()
            .map(|f| f.iter().map(|v| v.to_string()).collect())
            .collect();
        Self::from_labeled_facets(name, &labeled)
    }

    /// Builds a complex over an existing label table. Facets are deduplicated;
    /// a facet contained in another is rejected.
    pub fn from_simplices(name: &str, labels: Vec<String>, facets: Vec<Simplex>) -> Result<Self> {
        let mut seen = HashSet::new();
        let facets: Vec<Simplex> = facets.into_iter().filter(|f| seen.insert(f.clone())).collect();
        for f in &facets {
            if let Some(v) = f.vertices().iter().find(|v| v.index() >= labels.len()) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        let mut proper: HashMap<Simplex, usize> = HashMap::new();
        for (i, f) in facets.iter().enumerate() {
            for face in f.all_faces() {
                if face.len() < f.len() {
                    proper.entry(face).or_insert(i);
                }
            }
        }
        for f in &facets {
            if let Some(&i) = proper.get(f) {
                return Err(Error::NonMaximalFacet {
                    facet: f.clone(),
                    container: facets[i].clone(),
                });
            }
        }
        let top = facets.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut by_dim: Vec<HashSet<Simplex>> = vec![HashSet::new(); top];
        for f in &facets {
            for face in f.all_faces() {
                by_dim[face.dim()].insert(face);
            }
        }
        let faces: Vec<Vec<Simplex>> = by_dim
            .into_iter()
            .map(|s| {
                let mut v: Vec<Simplex> = s.into_iter().collect();
                v.sort();
                v
            })
            .collect();
        let index = faces
            .iter()
            .map(|v| v.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        Ok(SimplicialComplex {
            name: name.to_string(),
            labels,
            facets,
            faces,
            index,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Dimension of the largest facet; `0` for the empty complex.
    pub fn dim(&self) -> usize {
        self.faces.len().saturating_sub(1)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// All faces of dimension `k`, sorted.
    pub fn faces(&self, k: usize) -> &[Simplex] {
        self.faces.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face_count(&self, k: usize) -> usize {
        self.faces(k).len()
    }

    pub fn face_index(&self, s: &Simplex) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.face_index(s).is_some()
    }

    pub fn facet_index(&self, s: &Simplex) -> Option<usize> {
        self.facets.iter().position(|f| f == s)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.faces(0).iter().map(|s| s.vertices()[0])
    }

    pub fn vertex_count(&self) -> usize {
        self.face_count(0)
    }

    /// Label table indexed by vertex id (may include vertices of a parent
    /// complex that do not occur here).
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        let v = VertexId(self.labels.iter().position(|l| l == label)? as u32);
        self.contains(&Simplex::from_set(vec![v])).then_some(v)
    }

    /// Renders a simplex with labels, e.g. `A,B,C`.
    pub fn display_simplex(&self, s: &Simplex) -> String {
        s.vertices()
            .iter()
            .map(|&v| self.label(v))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(k, f)| if k % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
            .sum()
    }

    /// Facets containing `v`, as a subcomplex, and their faces avoiding `v`.
    pub fn star_and_link(&self, v: VertexId) -> Result<(SimplicialComplex, SimplicialComplex)> {
        if !self.contains(&Simplex::from_set(vec![v])) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let star: Vec<Simplex> = self.facets.iter().filter(|f| f.contains(v)).cloned().collect();
        let link: Vec<Simplex> = star
            .iter()
            .map(|f| f.without(v))
            .filter(|f| !f.is_empty())
            .collect();
        let star_c = Self::from_simplices(&format!("star({})", self.label(v)), self.labels.clone(), star)?;
        let link_c = Self::from_simplices(&format!("link({})", self.label(v)), self.labels.clone(), link)?;
        Ok((star_c, link_c))
    }

    /// Facets incident to each ridge, as facet indices.
    pub fn ridge_incidence(&self) -> HashMap<Simplex, Vec<usize>> {
        let mut map: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.boundary_faces() {
                map.entry(r).or_default().push(i);
            }
        }
        map
    }

    /// Dual-graph connectivity of the facets (through shared ridges).
    pub fn facets_connected(&self) -> bool {
        if self.facets.is_empty() {
            return false;
        }
        let incidence = self.ridge_incidence();
        let mut seen = vec![false; self.facets.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for r in self.facets[i].boundary_faces() {
                for &j in &incidence[&r] {
                    if !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Connectivity of the 1-skeleton.
    pub fn is_connected(&self) -> bool {
        let n = self.labels.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in self.faces(1) {
            let (a, b) = (e.vertices()[0].index(), e.vertices()[1].index());
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut roots = self.vertices().map(|v| find(&mut parent, v.index()));
        match roots.next() {
            None => false,
            Some(r) => roots.all(|x| x == r),
        }
    }

    /// Coherent orientation by breadth-first traversal of the dual graph in
    /// facet input order; the first facet of each component gets `+1`.
    /// Returns `None` when a ridge lies in more than two facets or when the
    /// traversal meets a contradiction.
    pub fn coherent_orientation(&self) -> Option<Orientation> {
        let incidence = self.ridge_incidence();
        if incidence.values().any(|v| v.len() > 2) {
            return None;
        }
        let mut signs = vec![0i32; self.facets.len()];
        for start in 0..self.facets.len() {
            if signs[start] != 0 {
                continue;
            }
            signs[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let f = &self.facets[i];
                for (pos, r) in f.boundary_faces().enumerate() {
                    let induced = signs[i] * if pos % 2 == 0 { 1 } else { -1 };
                    for &j in &incidence[&r] {
                        if j == i {
                            continue;
                        }
                        let jpos = self.facets[j].vertices().iter().position(|v| !r.contains(*v)).unwrap();
                        let want = -induced * if jpos % 2 == 0 { 1 } else { -1 };
                        if signs[j] == 0 {
                            signs[j] = want;
                            queue.push_back(j);
                        } else if signs[j] != want {
                            return None;
                        }
                    }
                }
            }
        }
        Some(Orientation { signs })
    }

    /// Checks that every shared ridge receives opposite induced orientations.
    pub fn is_coherent(&self, orientation: &Orientation) -> bool {
        self.ridge_incidence().iter().all(|(r, fs)| {
            let induced: Vec<i32> = fs
                .iter()
                .map(|&i| {
                    let pos = self.facets[i].vertices().iter().position(|v| !r.contains(*v)).unwrap();
                    orientation.sign(i) * if pos % 2 == 0 { 1 } else { -1 }
                })
                .collect();
            induced.len() != 2 || induced[0] == -induced[1]
        })
    }

    /// Same complex with vertex ids permuted: vertex `v` becomes `perm[v]`.
    /// Facet order and labels travel with the vertices.
    pub fn relabeled(&self, perm: &[u32]) -> Result<SimplicialComplex> {
        let mut labels = vec![String::new(); self.labels.len()];
        for (old, &new) in perm.iter().enumerate() {
            labels[new as usize] = self.labels[old].clone();
        }
        let facets = self
            .facets
            .iter()
            .map(|f| Simplex::from_set(f.vertices().iter().map(|v| VertexId(perm[v.index()])).collect()))
            .collect();
        Self::from_simplices(&self.name, labels, facets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn boundary_4simplex() -> SimplicialComplex {
        SimplicialComplex::from_facets(
            "d4",
            &[vec![0, 1, 2, 3], vec![0, 1, 2, 4], vec![0, 1, 3, 4], vec![0, 2, 3, 4], vec![1, 2, 3, 4]],
        )
        .unwrap()
    }

    #[test]
    fn boundary_of_4_simplex_counts() {
        let c = boundary_4simplex();
        assert_eq!(c.dim(), 3);
        assert_eq!(
            (c.face_count(0), c.face_count(1), c.face_count(2), c.face_count(3)),
            (5, 10, 10, 5)
        );
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn labeled_boundary_of_tetrahedron() {
        let c = SimplicialComplex::from_labeled_facets(
            "s2",
            &[vec!["A", "B", "C"], vec!["A", "B", "D"], vec!["A", "C", "D"], vec!["B", "C", "D"]],
        )
        .unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.euler_characteristic(), 2);
        assert_eq!(c.vertex_by_label("C"), Some(VertexId(2)));
    }

    #[test]
    fn rejects_non_maximal_and_repeated() {
        let err = SimplicialComplex::from_facets("x", &[vec![0, 1, 2], vec![0, 1, 2, 3]]).unwrap_err();
        assert!(matches!(err, Error::NonMaximalFacet { .. }));
        let err = SimplicialComplex::from_facets("x", &[vec![0, 0, 1]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateVertexInFacet(_)));
    }

    #[test]
    fn duplicates_are_merged() {
        let c = SimplicialComplex::from_facets("x", &[vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(c.facets().len(), 1);
    }

    #[test]
    fn single_tetrahedron_euler_and_link() {
        let c = SimplicialComplex::from_facets("t", &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(c.euler_characteristic(), 1);
        let (star, link) = c.star_and_link(VertexId(0)).unwrap();
        assert_eq!(star.facets().len(), 1);
        assert_eq!(link.facets(), &[Simplex::from_ids(&[1, 2, 3]).unwrap()]);
        assert_eq!(link.euler_characteristic(), 1);
    }

    #[test]
    fn links_in_spheres() {
        let c = boundary_4simplex();
        let (_, link) = c.star_and_link(VertexId(0)).unwrap();
        assert_eq!(link.facets().len(), 4);
        assert!(link.facets().iter().all(|f| !f.contains(VertexId(0))));
        assert_eq!(link.euler_characteristic(), 2);

        let s2 = SimplicialComplex::from_labeled_facets(
            "s2",
            &[vec!["A", "B", "C"], vec!["A", "B", "D"], vec!["A", "C", "D"], vec!["B", "C", "D"]],
        )
        .unwrap();
        let (_, link) = s2.star_and_link(VertexId(0)).unwrap();
        assert_eq!(link.facets().len(), 3);
        assert_eq!(link.dim(), 1);
        assert!(c.star_and_link(VertexId(9)).is_err());
    }

    #[test]
    fn orientation_is_coherent() {
        let c = boundary_4simplex();
        let o = c.coherent_orientation().unwrap();
        assert_eq!(o.sign(0), 1);
        assert!(c.is_coherent(&o));
        assert!(c.is_coherent(&o.reversed()));
        assert!(!c.is_coherent(&Orientation::from_signs(vec![1; 5])));
    }

    #[test]
    fn natural_order() {
        let mut v = vec!["a10", "a2", "b1", "a2x", "10", "9"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, vec!["9", "10", "a2", "a2x", "a10", "b1"]);
    }
}
