//! Combinatorial recognition of closed 3-manifolds and 2-spheres.

use serde::Serialize;

use crate::chains::{homology, HomologyGroup};
use crate::complex::{Orientation, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ClosedOriented3Manifold,
    ClosedSurfaceSphere,
    Invalid(String),
}

impl Verdict {
    pub fn is_positive(&self) -> bool {
        !matches!(self, Verdict::Invalid(_))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ManifoldReport {
    pub name: String,
    pub dim: usize,
    pub is_pure: bool,
    pub is_closed_pseudomanifold: bool,
    pub is_connected: bool,
    pub all_links_spheres: bool,
    pub orientable: bool,
    pub euler_characteristic: i64,
    pub homology: Vec<HomologyGroup>,
    /// Set when the homology is that of S³.
    pub s3_homology_certified: bool,
    pub verdict: Verdict,
    #[serde(skip)]
    pub orientation: Option<Orientation>,
}

impl ManifoldReport {
    pub fn is_valid(&self) -> bool {
        self.verdict.is_positive()
    }

    pub fn summary(&self) -> String {
        match &self.verdict {
            Verdict::ClosedOriented3Manifold if self.s3_homology_certified => {
                "closed oriented 3-manifold, S³ homology certified".to_string()
            }
            Verdict::ClosedOriented3Manifold => "closed oriented 3-manifold".to_string(),
            Verdict::ClosedSurfaceSphere => "2-sphere".to_string(),
            Verdict::Invalid(r) => format!("invalid: {r}"),
        }
    }
}

fn closed_pseudomanifold(c: &SimplicialComplex) -> bool {
    c.is_pure() && c.ridge_incidence().values().all(|v| v.len() == 2)
}

/// A 1-dimensional link must be a single cycle.
fn is_circle(c: &SimplicialComplex) -> bool {
    c.dim() == 1 && closed_pseudomanifold(c) && c.is_connected() && c.face_count(0) >= 3
}

/// A 2-dimensional complex is a combinatorial 2-sphere when it is a closed
/// connected surface (vertex links are circles) with χ = 2.
fn is_sphere_2(c: &SimplicialComplex) -> bool {
    if c.dim() != 2 || !closed_pseudomanifold(c) || !c.is_connected() || c.euler_characteristic() != 2 {
        return false;
    }
    c.vertices().all(|v| c.star_and_link(v).map(|(_, l)| is_circle(&l)).unwrap_or(false))
}

fn is_s3_homology(h: &[HomologyGroup]) -> bool {
    h.len() == 4
        && h[0] == HomologyGroup::free(1)
        && h[1] == HomologyGroup::free(0)
        && h[2] == HomologyGroup::free(0)
        && h[3] == HomologyGroup::free(1)
}

fn base_report(c: &SimplicialComplex) -> ManifoldReport {
    let orientation = c.coherent_orientation();
    ManifoldReport {
        name: c.name().to_string(),
        dim: c.dim(),
        is_pure: c.is_pure(),
        is_closed_pseudomanifold: closed_pseudomanifold(c),
        is_connected: c.is_connected() && c.facets_connected(),
        all_links_spheres: false,
        orientable: orientation.is_some(),
        euler_characteristic: c.euler_characteristic(),
        homology: Vec::new(),
        s3_homology_certified: false,
        verdict: Verdict::Invalid(String::new()),
        orientation,
    }
}

/// Checks purity, the pseudomanifold property, connectivity, that every
/// vertex link is a 2-sphere and orientability, then computes homology.
pub fn validate_closed_oriented_3_manifold(c: &SimplicialComplex) -> ManifoldReport {
    let mut r = base_report(c);
    if r.dim != 3 {
        r.verdict = Verdict::Invalid(format!("dimension {} is not 3", r.dim));
        return r;
    }
    r.all_links_spheres = r.is_pure
        && c.vertices()
            .all(|v| c.star_and_link(v).map(|(_, l)| is_sphere_2(&l)).unwrap_or(false));
    r.homology = homology(c);
    r.s3_homology_certified = is_s3_homology(&r.homology);
    r.verdict = if !r.is_pure {
        Verdict::Invalid("not pure".into())
    } else if !r.is_closed_pseudomanifold {
        Verdict::Invalid("some triangle does not lie in exactly two tetrahedra".into())
    } else if !r.is_connected {
        Verdict::Invalid("disconnected".into())
    } else if !r.all_links_spheres {
        Verdict::Invalid("some vertex link is not a 2-sphere".into())
    } else if !r.orientable {
        Verdict::Invalid("not orientable".into())
    } else {
        Verdict::ClosedOriented3Manifold
    };
    r
}

pub fn validate_sphere_2(c: &SimplicialComplex) -> ManifoldReport {
    let mut r = base_report(c);
    if r.dim != 2 {
        r.verdict = Verdict::Invalid(format!("dimension {} is not 2", r.dim));
        return r;
    }
    r.all_links_spheres = r.is_pure
        && c.vertices()
            .all(|v| c.star_and_link(v).map(|(_, l)| is_circle(&l)).unwrap_or(false));
    r.homology = homology(c);
    r.verdict = if !r.is_pure {
        Verdict::Invalid("not pure".into())
    } else if !r.is_closed_pseudomanifold {
        Verdict::Invalid("some edge does not lie in exactly two triangles".into())
    } else if !r.is_connected {
        Verdict::Invalid("disconnected".into())
    } else if !r.all_links_spheres {
        Verdict::Invalid("some vertex link is not a circle".into())
    } else if r.euler_characteristic != 2 {
        Verdict::Invalid(format!("Euler characteristic {} is not 2", r.euler_characteristic))
    } else if !r.orientable {
        Verdict::Invalid("not orientable".into())
    } else {
        Verdict::ClosedSurfaceSphere
    };
    r
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn boundary_of_4_simplex_is_s3() {
        let r = validate_closed_oriented_3_manifold(&d4());
        assert_eq!(r.verdict, Verdict::ClosedOriented3Manifold);
        assert!(r.s3_homology_certified);
        assert_eq!(r.euler_characteristic, 0);
    }

    #[test]
    fn punctured_sphere_is_invalid() {
        let c = SimplicialComplex::from_facets(
            "punctured",
            &[vec![0, 1, 2, 3], vec![0, 1, 2, 4], vec![0, 1, 3, 4], vec![0, 2, 3, 4]],
        )
        .unwrap();
        let r = validate_closed_oriented_3_manifold(&c);
        assert!(!r.is_closed_pseudomanifold);
        assert!(!r.is_valid());
    }

    #[test]
    fn spheres_and_non_spheres() {
        let r = validate_sphere_2(&tetra_boundary());
        assert_eq!(r.verdict, Verdict::ClosedSurfaceSphere);
        assert_eq!(r.euler_characteristic, 2);

        let two = SimplicialComplex::from_facets(
            "two",
            &[
                vec![0, 1, 2],
                vec![0, 1, 3],
                vec![0, 2, 3],
                vec![1, 2, 3],
                vec![4, 5, 6],
                vec![4, 5, 7],
                vec![4, 6, 7],
                vec![5, 6, 7],
            ],
        )
        .unwrap();
        assert_eq!(validate_sphere_2(&two).verdict, Verdict::Invalid("disconnected".into()));

        let t = validate_sphere_2(&torus7());
        assert_eq!(t.euler_characteristic, 0);
        assert!(!t.is_valid());
        assert_eq!(t.homology[1], HomologyGroup::free(2));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(!validate_closed_oriented_3_manifold(&tetra_boundary()).is_valid());
        assert!(!validate_sphere_2(&d4()).is_valid());
    }
}
