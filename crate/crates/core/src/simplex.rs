//! Vertices, unoriented simplices and oriented simplices.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer identity of a vertex inside one complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A simplex stored as a strictly increasing vertex tuple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts the vertices; returns `None` when a vertex repeats.
    pub fn new(mut vertices: Vec<VertexId>) -> Option<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Simplex(vertices))
    }

    /// Builds a simplex from raw ids, collapsing repeats (used for images).
    pub fn from_set(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn from_ids(ids: &[u32]) -> Option<Self> {
        Self::new(ids.iter().map(|&i| VertexId(i)).collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Codimension-one faces; the `i`-th omits vertex `i`.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |i| self.without_index(i))
    }

    pub fn without_index(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    pub fn without(&self, vertex: VertexId) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&v| v != vertex).collect())
    }

    /// Every nonempty face, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u32..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn oriented(&self) -> OrientedSimplex {
        OrientedSimplex(self.0.clone())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// An ordered tuple of distinct vertices. Two tuples related by an even
/// permutation denote the same oriented simplex; an odd permutation negates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedSimplex(Vec<VertexId>);

impl OrientedSimplex {
    pub fn new(vertices: Vec<VertexId>) -> Option<Self> {
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(OrientedSimplex(vertices))
    }

    pub fn from_ids(ids: &[u32]) -> Option<Self> {
        Self::new(ids.iter().map(|&i| VertexId(i)).collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Sorted representative together with the sign of the sorting permutation.
    pub fn canonical(&self) -> (Simplex, i32) {
        let sign = permutation_sign(&self.0);
        let mut v = self.0.clone();
        v.sort_unstable();
        (Simplex(v), sign)
    }

    pub fn negated(&self) -> OrientedSimplex {
        let mut v = self.0.clone();
        if v.len() >= 2 {
            v.swap(0, 1);
        }
        OrientedSimplex(v)
    }

    /// Equality as oriented simplices (up to even permutation).
    pub fn same_orientation(&self, other: &OrientedSimplex) -> Option<bool> {
        let (a, sa) = self.canonical();
        let (b, sb) = other.canonical();
        (a == b).then_some(sa == sb)
    }
}

/// Sign of the permutation sorting `items` (which must be distinct).
pub fn permutation_sign<T: Ord>(items: &[T]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_and_repeats() {
        let s = Simplex::from_ids(&[3, 1, 2]).unwrap();
        assert_eq!(s.vertices(), &[VertexId(1), VertexId(2), VertexId(3)]);
        assert!(Simplex::from_ids(&[1, 1]).is_none());
        assert_eq!(s.dim(), 2);
        assert_eq!(s.all_faces().len(), 7);
    }

    #[test]
    fn orientation_sign() {
        let a = OrientedSimplex::from_ids(&[0, 1, 2]).unwrap();
        let b = OrientedSimplex::from_ids(&[1, 2, 0]).unwrap();
        let c = OrientedSimplex::from_ids(&[1, 0, 2]).unwrap();
        assert_eq!(a.same_orientation(&b), Some(true));
        assert_eq!(a.same_orientation(&c), Some(false));
        assert_eq!(c.canonical().1, -1);
        assert_eq!(a.negated().same_orientation(&a), Some(false));
    }
}
