//! Exact points of a geometric realization and formal chains over them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::simplex::{permutation_sign, Simplex, VertexId};

/// A point given by positive rational weights on the vertices of its
/// carrier simplex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarycentricPoint {
    weights: BTreeMap<VertexId, BigRational>,
}

impl BarycentricPoint {
    /// Zero weights are dropped; the rest must be positive and sum to 1.
    pub fn new<I: IntoIterator<Item = (VertexId, BigRational)>>(weights: I) -> Result<Self> {
        let mut w: BTreeMap<VertexId, BigRational> = BTreeMap::new();
        for (v, x) in weights {
            *w.entry(v).or_insert_with(BigRational::zero) += x;
        }
        w.retain(|_, x| !x.is_zero());
        if w.values().any(|x| x.is_negative()) {
            return Err(Error::InvalidInput("negative barycentric weight".into()));
        }
        if w.values().sum::<BigRational>() != BigRational::one() {
            return Err(Error::InvalidInput("barycentric weights do not sum to 1".into()));
        }
        Ok(BarycentricPoint { weights: w })
    }

    pub fn vertex(v: VertexId) -> Self {
        BarycentricPoint {
            weights: BTreeMap::from([(v, BigRational::one())]),
        }
    }

    /// Equal weights on the vertices of `s`.
    pub fn barycenter(s: &Simplex) -> Self {
        let w = BigRational::new(BigInt::one(), BigInt::from(s.len()));
        BarycentricPoint {
            weights: s.vertices().iter().map(|&v| (v, w.clone())).collect(),
        }
    }

    pub fn carrier(&self) -> Simplex {
        Simplex::from_set(self.weights.keys().copied().collect())
    }

    pub fn weight(&self, v: VertexId) -> BigRational {
        self.weights.get(&v).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn weights(&self) -> impl Iterator<Item = (VertexId, &BigRational)> {
        self.weights.iter().map(|(v, w)| (*v, w))
    }

    /// Image under the affine extension of a vertex map.
    pub fn push_forward(&self, f: impl Fn(VertexId) -> VertexId) -> BarycentricPoint {
        let mut w: BTreeMap<VertexId, BigRational> = BTreeMap::new();
        for (v, x) in &self.weights {
            *w.entry(f(*v)).or_insert_with(BigRational::zero) += x;
        }
        BarycentricPoint { weights: w }
    }
}

impl fmt::Display for BarycentricPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (v, w)) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{w}·{v}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for BarycentricPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = self.weights.iter().map(|(v, w)| (v.to_string(), w.to_string())).collect();
        m.serialize(s)
    }
}

/// A vertex of the complex or a point in the interior of one of its faces.
/// Points carried by a single vertex are always stored as `Vertex`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeomPoint {
    Vertex(VertexId),
    Point(BarycentricPoint),
}

impl From<BarycentricPoint> for GeomPoint {
    fn from(p: BarycentricPoint) -> Self {
        if p.weights.len() == 1 {
            GeomPoint::Vertex(*p.weights.keys().next().unwrap())
        } else {
            GeomPoint::Point(p)
        }
    }
}

impl From<VertexId> for GeomPoint {
    fn from(v: VertexId) -> Self {
        GeomPoint::Vertex(v)
    }
}

impl GeomPoint {
    pub fn push_forward(&self, f: impl Fn(VertexId) -> VertexId) -> GeomPoint {
        match self {
            GeomPoint::Vertex(v) => GeomPoint::Vertex(f(*v)),
            GeomPoint::Point(p) => p.push_forward(f).into(),
        }
    }
}

impl fmt::Display for GeomPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomPoint::Vertex(v) => write!(f, "v{v}"),
            GeomPoint::Point(p) => write!(f, "{p}"),
        }
    }
}

/// Integer combination of oriented cells spanned by `N` distinct points.
/// Keys are sorted point tuples; permutation signs are folded into the
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalChain<const N: usize> {
    cells: BTreeMap<[GeomPoint; N], BigInt>,
}

pub type FormalChain1 = FormalChain<2>;
pub type FormalChain2 = FormalChain<3>;

impl<const N: usize> FormalChain<N> {
    pub fn new() -> Self {
        FormalChain { cells: BTreeMap::new() }
    }

    /// Adds `k` times the oriented cell `pts`; repeated points are rejected.
    pub fn add_cell(&mut self, pts: [GeomPoint; N], k: &BigInt) -> Result<()> {
        let sign = permutation_sign(&pts);
        let mut sorted = pts;
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("degenerate cell in a formal chain".into()));
        }
        let e = self.cells.entry(sorted.clone()).or_insert_with(BigInt::zero);
        *e += k * sign;
        if e.is_zero() {
            self.cells.remove(&sorted);
        }
        Ok(())
    }

    pub fn cells(&self) -> impl Iterator<Item = (&[GeomPoint; N], &BigInt)> {
        self.cells.iter()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn negated(&self) -> Self {
        FormalChain {
            cells: self.cells.iter().map(|(c, k)| (c.clone(), -k)).collect(),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = &GeomPoint> {
        self.cells.keys().flat_map(|c| c.iter())
    }
}

impl FormalChain2 {
    /// `∂(x, y, z) = (y, z) − (x, z) + (x, y)`.
    pub fn boundary(&self) -> FormalChain1 {
        let mut out = FormalChain1::new();
        for ([x, y, z], k) in &self.cells {
            // Faces of a nondegenerate cell are nondegenerate.
            out.add_cell([y.clone(), z.clone()], k).unwrap();
            out.add_cell([x.clone(), z.clone()], &-k).unwrap();
            out.add_cell([x.clone(), y.clone()], k).unwrap();
        }
        out
    }
}

impl<const N: usize> Serialize for FormalChain<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let cells: Vec<(Vec<String>, String)> = self
            .cells
            .iter()
            .map(|(c, k)| (c.iter().map(|p| p.to_string()).collect(), k.to_string()))
            .collect();
        cells.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn points_normalize() {
        let p = BarycentricPoint::new([(VertexId(2), q(1, 2)), (VertexId(1), q(1, 2)), (VertexId(3), q(0, 1))]).unwrap();
        assert_eq!(p.carrier(), Simplex::from_ids(&[1, 2]).unwrap());
        assert!(BarycentricPoint::new([(VertexId(0), q(1, 2))]).is_err());
        let v: GeomPoint = BarycentricPoint::new([(VertexId(4), q(1, 1))]).unwrap().into();
        assert_eq!(v, GeomPoint::Vertex(VertexId(4)));
        let img = p.push_forward(|_| VertexId(0));
        assert_eq!(GeomPoint::from(img), GeomPoint::Vertex(VertexId(0)));
    }

    #[test]
    fn boundary_of_boundary_telescopes() {
        let pts: Vec<GeomPoint> = (0..4).map(|i| GeomPoint::Vertex(VertexId(i))).collect();
        let mut d = FormalChain2::new();
        let one = BigInt::one();
        d.add_cell([pts[0].clone(), pts[1].clone(), pts[2].clone()], &one).unwrap();
        d.add_cell([pts[0].clone(), pts[2].clone(), pts[3].clone()], &one).unwrap();
        let b = d.boundary();
        // The shared diagonal (0,2) cancels.
        assert_eq!(b.len(), 4);
        let mut expected = FormalChain1::new();
        for i in 0..4 {
            expected.add_cell([pts[i].clone(), pts[(i + 1) % 4].clone()], &one).unwrap();
        }
        assert_eq!(b, expected);
        assert!(d.add_cell([pts[0].clone(), pts[0].clone(), pts[1].clone()], &one).is_err());
    }
}
