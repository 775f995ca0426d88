//! Integer chains and cochains on a simplicial complex.
//!
//! Simplices are stored by their sorted representative; an oriented simplex
//! contributes with the sign of its sorting permutation. Cup products use
//! the front-face/back-face rule with respect to increasing vertex id.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::{Orientation, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::IntegerMatrix;
use crate::simplex::{permutation_sign, OrientedSimplex, Simplex, VertexId};

/// A finitely supported integer combination of `degree`-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    coeffs: BTreeMap<Simplex, BigInt>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_oriented<I: IntoIterator<Item = (OrientedSimplex, i64)>>(degree: usize, terms: I) -> Self {
        let mut c = Chain::zero(degree);
        for (s, k) in terms {
            c.add_oriented(&s, &BigInt::from(k));
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_oriented(&mut self, s: &OrientedSimplex, k: &BigInt) {
        assert_eq!(s.vertices().len(), self.degree + 1, "simplex of wrong degree");
        let (simplex, sign) = s.canonical();
        self.add(simplex, &(k * sign));
    }

    pub fn add(&mut self, s: Simplex, k: &BigInt) {
        let e = self.coeffs.entry(s.clone()).or_default();
        *e += k;
        if e.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn coefficient(&self, s: &Simplex) -> BigInt {
        self.coeffs.get(s).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn negated(&self) -> Chain {
        Chain {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(s, k)| (s.clone(), -k)).collect(),
        }
    }
}

/// An integer-valued function on the `degree`-simplices of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    values: BTreeMap<Simplex, BigInt>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain {
            degree,
            values: BTreeMap::new(),
        }
    }

    /// The constant 0-cochain with value 1 on every vertex.
    pub fn unit(complex: &SimplicialComplex) -> Self {
        let mut c = Cochain::zero(0);
        for v in complex.faces(0) {
            c.set(v.clone(), BigInt::one());
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set(&mut self, s: Simplex, value: BigInt) {
        assert_eq!(s.len(), self.degree + 1, "simplex of wrong degree");
        if value.is_zero() {
            self.values.remove(&s);
        } else {
            self.values.insert(s, value);
        }
    }

    pub fn value(&self, s: &Simplex) -> BigInt {
        self.values.get(s).cloned().unwrap_or_default()
    }

    /// Value on an oriented simplex, with the permutation sign applied.
    pub fn evaluate(&self, s: &OrientedSimplex) -> BigInt {
        let (simplex, sign) = s.canonical();
        self.value(&simplex) * sign
    }

    pub fn support(&self) -> impl Iterator<Item = (&Simplex, &BigInt)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn pair(&self, chain: &Chain) -> BigInt {
        assert_eq!(self.degree, chain.degree());
        chain.terms().map(|(s, k)| k * self.value(s)).sum()
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (s, v) in &other.values {
            let nv = out.value(s) + v;
            out.set(s.clone(), nv);
        }
        out
    }

    pub fn negated(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|(s, v)| (s.clone(), -v)).collect(),
        }
    }

    /// Values in the order of `complex.faces(degree)`.
    pub fn to_vector(&self, complex: &SimplicialComplex) -> Vec<BigInt> {
        complex.faces(self.degree).iter().map(|s| self.value(s)).collect()
    }

    pub fn from_vector(complex: &SimplicialComplex, degree: usize, values: &[BigInt]) -> Cochain {
        let mut c = Cochain::zero(degree);
        for (s, v) in complex.faces(degree).iter().zip(values) {
            c.set(s.clone(), v.clone());
        }
        c
    }
}

fn alternating(i: usize) -> BigInt {
    if i % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Simplicial boundary; every simplex in the support must lie in `complex`.
pub fn boundary(complex: &SimplicialComplex, chain: &Chain) -> Result<Chain> {
    if chain.degree() == 0 {
        return Err(Error::InvalidInput("boundary of a 0-chain".into()));
    }
    let mut out = Chain::zero(chain.degree() - 1);
    for (s, k) in chain.terms() {
        if !complex.contains(s) {
            return Err(Error::SimplexNotInComplex(s.clone()));
        }
        for (i, face) in s.boundary_faces().enumerate() {
            out.add(face, &(k * alternating(i)));
        }
    }
    Ok(out)
}

/// `(δc)(σ) = c(∂σ)` over the `(k+1)`-simplices of `complex`.
pub fn coboundary(complex: &SimplicialComplex, c: &Cochain) -> Cochain {
    let mut out = Cochain::zero(c.degree() + 1);
    for s in complex.faces(c.degree() + 1) {
        let v: BigInt = s
            .boundary_faces()
            .enumerate()
            .map(|(i, f)| c.value(&f) * alternating(i))
            .sum();
        out.set(s.clone(), v);
    }
    out
}

/// Cup product `(a ∪ b)(v0..v_{p+q}) = a(v0..vp) · b(vp..v_{p+q})` on
/// increasing vertex tuples.
pub fn cup(complex: &SimplicialComplex, a: &Cochain, b: &Cochain) -> Cochain {
    cup_ordered(complex, a, b, |v| v)
}

/// Cup product with respect to the total vertex order given by `key`
/// (which must be injective). Values are stored on sorted simplices with
/// the sign of the reordering folded in.
pub fn cup_ordered<K: Ord>(complex: &SimplicialComplex, a: &Cochain, b: &Cochain, key: impl Fn(VertexId) -> K) -> Cochain {
    let (p, q) = (a.degree(), b.degree());
    let mut out = Cochain::zero(p + q);
    for s in complex.faces(p + q) {
        let mut vs = s.vertices().to_vec();
        vs.sort_by_key(|&v| key(v));
        let front = OrientedSimplex::new(vs[..=p].to_vec()).expect("distinct");
        let fa = a.evaluate(&front);
        if fa.is_zero() {
            continue;
        }
        let back = OrientedSimplex::new(vs[p..].to_vec()).expect("distinct");
        let sign = permutation_sign(&vs);
        out.set(s.clone(), fa * b.evaluate(&back) * sign);
    }
    out
}

fn check_closed_oriented(complex: &SimplicialComplex, orientation: &Orientation) -> Result<()> {
    let closed = complex.is_pure() && complex.ridge_incidence().values().all(|v| v.len() == 2);
    if !closed || orientation.signs().len() != complex.facets().len() || !complex.is_coherent(orientation) {
        return Err(Error::NotOriented(complex.name().to_string()));
    }
    Ok(())
}

/// `Σ sign(σ)·σ` over the facets of a closed, coherently oriented complex.
pub fn fundamental_class(complex: &SimplicialComplex, orientation: &Orientation) -> Result<Chain> {
    check_closed_oriented(complex, orientation)?;
    let mut c = Chain::zero(complex.dim());
    for (i, f) in complex.facets().iter().enumerate() {
        c.add(f.clone(), &BigInt::from(orientation.sign(i)));
    }
    Ok(c)
}

/// The 2-cocycle supported on the triangle `s` that pairs to 1 with the
/// fundamental class.
pub fn fundamental_cocycle(surface: &SimplicialComplex, orientation: &Orientation, s: &Simplex) -> Result<Cochain> {
    check_closed_oriented(surface, orientation)?;
    let i = surface
        .facet_index(s)
        .filter(|_| s.len() == 3)
        .ok_or_else(|| Error::TriangleNotInComplex(s.clone()))?;
    let mut c = Cochain::zero(2);
    c.set(s.clone(), BigInt::from(orientation.sign(i)));
    Ok(c)
}

/// Matrix of `∂_k : C_k → C_{k-1}` in the sorted face bases.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> IntegerMatrix {
    let rows = if k == 0 { 0 } else { complex.face_count(k - 1) };
    let mut m = IntegerMatrix::new(rows, complex.face_count(k));
    if k == 0 {
        return m;
    }
    for (j, s) in complex.faces(k).iter().enumerate() {
        for (i, f) in s.boundary_faces().enumerate() {
            let r = complex.face_index(&f).expect("closure");
            m.add(r, j, &alternating(i));
        }
    }
    m
}

/// Matrix of `δ_k : C^k → C^{k+1}`, the transpose of `∂_{k+1}`.
pub fn coboundary_matrix(complex: &SimplicialComplex, k: usize) -> IntegerMatrix {
    boundary_matrix(complex, k + 1).transpose()
}

/// A 1-cochain `ψ` with `δψ = target`, or `NotACoboundary`.
pub fn solve_coboundary(complex: &SimplicialComplex, target: &Cochain) -> Result<Cochain> {
    let k = target
        .degree()
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidInput("cannot solve for a cochain of degree -1".into()))?;
    for (s, _) in target.support() {
        if !complex.contains(s) {
            return Err(Error::SimplexNotInComplex(s.clone()));
        }
    }
    let m = coboundary_matrix(complex, k);
    let b = target.to_vector(complex);
    let x = m.solve(&b).ok_or(Error::NotACoboundary)?;
    let psi = Cochain::from_vector(complex, k, &x);
    debug_assert_eq!(&coboundary(complex, &psi), target);
    Ok(psi)
}

/// Rank and torsion coefficients of one integral homology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<String>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            rank,
            torsion: Vec::new(),
        }
    }
}

fn homology_from(complex: &SimplicialComplex, invariants: impl Fn(&IntegerMatrix) -> Vec<BigInt>) -> Vec<HomologyGroup> {
    let d = complex.dim();
    if complex.vertex_count() == 0 {
        return Vec::new();
    }
    let inv: Vec<Vec<BigInt>> = (0..=d + 1).map(|k| invariants(&boundary_matrix(complex, k))).collect();
    (0..=d)
        .map(|k| {
            let n = complex.face_count(k);
            let rank = n - inv[k].len() - inv[k + 1].len();
            let torsion = inv[k + 1].iter().filter(|x| !x.is_one()).map(|x| x.to_string()).collect();
            HomologyGroup { rank, torsion }
        })
        .collect()
}

/// Integral homology `H_0 … H_dim`, from Smith invariants of the boundary
/// matrices.
pub fn homology(complex: &SimplicialComplex) -> Vec<HomologyGroup> {
    homology_from(complex, IntegerMatrix::smith_invariants)
}

/// Same as [`homology`] but through the dense Smith reduction only.
pub fn homology_dense(complex: &SimplicialComplex) -> Vec<HomologyGroup> {
    homology_from(complex, IntegerMatrix::smith_invariants_dense)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> SimplicialComplex {
        SimplicialComplex::from_facets(
            "d4",
            &[vec![0, 1, 2, 3], vec![0, 1, 2, 4], vec![0, 1, 3, 4], vec![0, 2, 3, 4], vec![1, 2, 3, 4]],
        )
        .unwrap()
    }

    fn s2() -> SimplicialComplex {
        SimplicialComplex::from_labeled_facets(
            "s2",
            &[vec!["A", "B", "C"], vec!["A", "B", "D"], vec!["A", "C", "D"], vec!["B", "C", "D"]],
        )
        .unwrap()
    }

    #[test]
    fn boundary_of_triangle() {
        let c = d4();
        let t = Chain::from_oriented(2, [(OrientedSimplex::from_ids(&[0, 1, 2]).unwrap(), 1)]);
        let b = boundary(&c, &t).unwrap();
        let expected = Chain::from_oriented(
            1,
            [
                (OrientedSimplex::from_ids(&[1, 2]).unwrap(), 1),
                (OrientedSimplex::from_ids(&[0, 2]).unwrap(), -1),
                (OrientedSimplex::from_ids(&[0, 1]).unwrap(), 1),
            ],
        );
        assert_eq!(b, expected);
        let tet = Chain::from_oriented(3, [(OrientedSimplex::from_ids(&[0, 1, 2, 3]).unwrap(), 1)]);
        assert!(boundary(&c, &boundary(&c, &tet).unwrap()).unwrap().is_zero());
        let foreign = Chain::from_oriented(1, [(OrientedSimplex::from_ids(&[0, 7]).unwrap(), 1)]);
        assert!(matches!(boundary(&c, &foreign), Err(Error::SimplexNotInComplex(_))));
    }

    #[test]
    fn fundamental_classes_are_cycles() {
        for c in [d4(), s2()] {
            let o = c.coherent_orientation().unwrap();
            let fc = fundamental_class(&c, &o).unwrap();
            assert_eq!(fc.len(), c.facets().len());
            assert!(boundary(&c, &fc).unwrap().is_zero());
        }
        let t = SimplicialComplex::from_facets("t", &[vec![0, 1, 2, 3]]).unwrap();
        let o = t.coherent_orientation().unwrap();
        assert!(matches!(fundamental_class(&t, &o), Err(Error::NotOriented(_))));
    }

    #[test]
    fn vertex_indicator_coboundary() {
        let c = s2();
        let mut a = Cochain::zero(0);
        a.set(Simplex::from_ids(&[0]).unwrap(), BigInt::one());
        let d = coboundary(&c, &a);
        // δ1_A(A,X) = 1_A(X) - 1_A(A) = -1 on the three edges at A.
        assert_eq!(d.support().count(), 3);
        assert!(d.support().all(|(s, v)| s.contains(VertexId(0)) && *v == -BigInt::one()));
        assert!(coboundary(&c, &d).is_zero());
    }

    #[test]
    fn fundamental_cocycle_pairs_to_one() {
        let c = s2();
        let o = c.coherent_orientation().unwrap();
        let fc = fundamental_class(&c, &o).unwrap();
        for t in c.faces(2) {
            let w = fundamental_cocycle(&c, &o, t).unwrap();
            assert_eq!(w.pair(&fc), BigInt::one());
            assert!(coboundary(&c, &w).is_zero());
        }
        let bad = Simplex::from_ids(&[0, 1]).unwrap();
        assert!(matches!(fundamental_cocycle(&c, &o, &bad), Err(Error::TriangleNotInComplex(_))));
    }

    #[test]
    fn generator_of_h2_is_not_exact() {
        let c = s2();
        let o = c.coherent_orientation().unwrap();
        let w = fundamental_cocycle(&c, &o, &c.faces(2)[0]).unwrap();
        assert_eq!(solve_coboundary(&c, &w), Err(Error::NotACoboundary));
    }

    #[test]
    fn cup_unit() {
        let c = d4();
        let mut a = Cochain::zero(2);
        for (i, s) in c.faces(2).iter().enumerate() {
            a.set(s.clone(), BigInt::from(i as i64 - 3));
        }
        assert_eq!(cup(&c, &Cochain::unit(&c), &a), a);
        assert_eq!(cup(&c, &a, &Cochain::unit(&c)), a);
    }

    #[test]
    fn homology_of_spheres() {
        let h = homology(&d4());
        assert_eq!(h, vec![HomologyGroup::free(1), HomologyGroup::free(0), HomologyGroup::free(0), HomologyGroup::free(1)]);
        let h = homology(&s2());
        assert_eq!(h, vec![HomologyGroup::free(1), HomologyGroup::free(0), HomologyGroup::free(1)]);
        assert_eq!(homology_dense(&d4()), homology(&d4()));
    }
}
