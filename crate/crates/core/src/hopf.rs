//! Hopf invariant `H(f) = ⟨ψ ∪ f*ω, [K₁]⟩` with `δψ = f*ω`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chains::{coboundary, cup_ordered, fundamental_class, fundamental_cocycle, homology, solve_coboundary, Cochain, HomologyGroup};
use crate::error::{Error, Result};
use crate::fibers::{certify_component, extract_fiber_oriented, verify_certificate, CertificateKind, LemmaCertificate, Orientations};
use crate::maps::SimplicialMap;
use crate::simplex::Simplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellDefinednessCheck {
    pub choice: String,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfResult {
    pub value: i64,
    pub base_triangle_used: Simplex,
    pub well_definedness_checks: Vec<WellDefinednessCheck>,
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InvalidInput(format!("Hopf invariant {x} does not fit in 64 bits")))
}

/// Checks that the source is closed and oriented with the integral homology
/// of S³, and that the target is an oriented 2-complex.
pub fn check_preconditions(f: &SimplicialMap) -> Result<Orientations> {
    if !f.validate_simplicial().is_valid() {
        return Err(Error::NotSimplicial(f.name().to_string()));
    }
    if f.source().dim() != 3 || f.target().dim() != 2 {
        return Err(Error::NotHomologySphere("source must be 3-dimensional and target 2-dimensional".into()));
    }
    let o = Orientations::coherent(f)?;
    let h = homology(f.source());
    if h.len() != 4 || h[1] != HomologyGroup::free(0) || h[2] != HomologyGroup::free(0) || h[3] != HomologyGroup::free(1) {
        return Err(Error::NotHomologySphere(format!(
            "H_1 rank {} torsion {:?}, H_2 rank {} torsion {:?}",
            h.get(1).map_or(0, |g| g.rank),
            h.get(1).map(|g| g.torsion.clone()).unwrap_or_default(),
            h.get(2).map_or(0, |g| g.rank),
            h.get(2).map(|g| g.torsion.clone()).unwrap_or_default()
        )));
    }
    Ok(o)
}

/// `f*ω` for the fundamental cocycle on `s0`.
pub fn pulled_back_cocycle(f: &SimplicialMap, orientations: &Orientations, s0: &Simplex) -> Result<Cochain> {
    let omega = fundamental_cocycle(f.target(), &orientations.target, s0)?;
    Ok(f.pullback(&omega))
}

/// `⟨ψ ∪ f*ω, [K₁]⟩` for a given primitive `ψ`.
///
/// The cup product orders source vertices by image first and id second.
/// With this order `f` is monotone, so `f*ω ∪ f*ω = f*(ω ∪ ω) = 0` on the
/// cochain level, which is what makes the value independent of the order.
pub fn evaluate_with_primitive(f: &SimplicialMap, orientations: &Orientations, psi: &Cochain, pulled: &Cochain) -> Result<BigInt> {
    let fc = fundamental_class(f.source(), &orientations.source)?;
    Ok(cup_ordered(f.source(), psi, pulled, |v| (f.apply(v), v)).pair(&fc))
}

/// `H(f)` for fixed orientations and base triangle, without the
/// homology precondition.
pub fn hopf_with(f: &SimplicialMap, orientations: &Orientations, s0: &Simplex) -> Result<i64> {
    let pulled = pulled_back_cocycle(f, orientations, s0)?;
    let psi = solve_coboundary(f.source(), &pulled)?;
    to_i64(&evaluate_with_primitive(f, orientations, &psi, &pulled)?)
}

/// `H(f)` computed over the first target triangle and recomputed over every
/// other one.
pub fn hopf_invariant(f: &SimplicialMap) -> Result<HopfResult> {
    let o = check_preconditions(f)?;
    hopf_invariant_oriented(f, &o)
}

pub fn hopf_invariant_oriented(f: &SimplicialMap, o: &Orientations) -> Result<HopfResult> {
    let triangles = f.target().faces(2);
    let base = triangles
        .first()
        .ok_or_else(|| Error::InvalidInput("target has no triangles".into()))?
        .clone();
    let value = hopf_with(f, o, &base)?;
    let mut checks = Vec::new();
    for s in &triangles[1..] {
        let v = hopf_with(f, o, s)?;
        checks.push(WellDefinednessCheck {
            choice: format!("base triangle {}", f.target().display_simplex(s)),
            value: v,
        });
        if v != value {
            return Err(Error::InvalidInput(format!(
                "H depends on the base triangle: {value} over {} but {v} over {}",
                f.target().display_simplex(&base),
                f.target().display_simplex(s)
            )));
        }
    }
    Ok(HopfResult {
        value,
        base_triangle_used: base,
        well_definedness_checks: checks,
    })
}

/// Re-evaluates `H` with `ψ + δχ` for random integer 0-cochains `χ`. When
/// `H¹ = 0` every other primitive of `f*ω` has this form.
pub fn perturbation_trials(f: &SimplicialMap, orientations: &Orientations, trials: usize, seed: u64) -> Result<Vec<WellDefinednessCheck>> {
    let s0 = f.target().faces(2)[0].clone();
    let pulled = pulled_back_cocycle(f, orientations, &s0)?;
    let psi = solve_coboundary(f.source(), &pulled)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for t in 0..trials {
        let mut chi = Cochain::zero(0);
        for v in f.source().faces(0) {
            chi.set(v.clone(), BigInt::from(rng.gen_range(-5i64..=5)));
        }
        let perturbed = psi.add(&coboundary(f.source(), &chi));
        debug_assert_eq!(coboundary(f.source(), &perturbed), pulled);
        let v = to_i64(&evaluate_with_primitive(f, orientations, &perturbed, &pulled)?)?;
        out.push(WellDefinednessCheck {
            choice: format!("ψ + δχ, trial {t}"),
            value: v,
        });
    }
    Ok(out)
}

/// Lemma certificates for every fiber component over `s`, or `None` when
/// some component admits neither lemma.
pub fn null_certificate(f: &SimplicialMap, s: &Simplex, orientations: &Orientations) -> Result<Option<Vec<LemmaCertificate>>> {
    let diagram = extract_fiber_oriented(f, s, orientations)?;
    let mut certs = Vec::with_capacity(diagram.components.len());
    for (i, c) in diagram.components.iter().enumerate() {
        let cert = certify_component(f, c, i)?;
        if cert.which == CertificateKind::Neither {
            return Ok(None);
        }
        verify_certificate(f, &diagram, &cert)?;
        certs.push(cert);
    }
    Ok(Some(certs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibers::tests::{collapse5, s};

    #[test]
    fn collapse5_is_null() {
        let f = collapse5();
        let r = hopf_invariant(&f).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.well_definedness_checks.len(), 3);
        let o = Orientations::coherent(&f).unwrap();
        let certs = null_certificate(&f, &s(&[0, 1, 2]), &o).unwrap().unwrap();
        assert_eq!(certs.len(), 1);
        assert!(null_certificate(&f, &s(&[0, 1, 3]), &o).unwrap().unwrap().is_empty());
        for t in perturbation_trials(&f, &o, 5, 1).unwrap() {
            assert_eq!(t.value, 0);
        }
    }
}
