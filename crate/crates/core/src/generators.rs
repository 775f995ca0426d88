//! Fixture maps onto the boundary of the tetrahedron `ABCD`.
//!
//! Source vertices are labelled by the target letter they map to, so the
//! assignment can be read off the label. Every generated map is run through
//! the validators before it is returned.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hopf::hopf_invariant_oriented;
use crate::manifold::{validate_closed_oriented_3_manifold, validate_sphere_2};
use crate::maps::SimplicialMap;
use crate::simplex::{Simplex, VertexId};
use crate::fibers::Orientations;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Collapse5,
    HopfPrism,
    Zeta(u32),
    SeifertXi(u32),
}

#[derive(Clone, Debug)]
pub struct GeneratedMap {
    pub map: SimplicialMap,
    pub provenance: Provenance,
    pub construction_log: Vec<String>,
}

/// The 4-vertex 2-sphere with facets `ABC, ABD, ACD, BCD`.
pub fn tetrahedron_boundary() -> SimplicialComplex {
    SimplicialComplex::from_labeled_facets(
        "S2_4",
        &[vec!["A", "B", "C"], vec!["A", "B", "D"], vec!["A", "C", "D"], vec!["B", "C", "D"]],
    )
    .expect("static complex")
}

/// Boundary of the 4-simplex on `0..=4`.
pub fn boundary_4_simplex() -> SimplicialComplex {
    SimplicialComplex::from_facets(
        "S3_5",
        &[vec![0, 1, 2, 3], vec![0, 1, 2, 4], vec![0, 1, 3, 4], vec![0, 2, 3, 4], vec![1, 2, 3, 4]],
    )
    .expect("static complex")
}

const LETTERS: [char; 3] = ['A', 'B', 'C'];

fn next_letter(x: usize) -> usize {
    (x + 1) % 3
}

/// Collects tetrahedra by vertex label and remembers each label's image.
#[derive(Default)]
struct Builder {
    images: BTreeMap<String, char>,
    tets: Vec<[String; 4]>,
    log: Vec<String>,
}

impl Builder {
    fn v(&mut self, label: String, image: char) -> String {
        self.images.entry(label.clone()).or_insert(image);
        label
    }

    /// Vertex on circle `j` at position `k` over letter `x`.
    fn ring(&mut self, x: usize, j: usize, k: usize) -> String {
        let c = LETTERS[x];
        self.v(format!("{}{j}n{k}", c.to_ascii_lowercase()), c)
    }

    fn tet(&mut self, t: [String; 4]) {
        self.tets.push(t);
    }

    fn finish(self, name: &str, provenance: Provenance) -> Result<GeneratedMap> {
        let mut seen = HashSet::new();
        for t in &self.tets {
            let mut key = t.clone();
            key.sort();
            if !seen.insert(key) {
                return Err(Error::ConstructionInvariantFailed(format!("{name}: repeated tetrahedron {t:?}")));
            }
        }
        let facets: Vec<Vec<String>> = self.tets.iter().map(|t| t.to_vec()).collect();
        let source = SimplicialComplex::from_labeled_facets(&format!("{name}_src"), &facets)
            .map_err(|e| Error::ConstructionInvariantFailed(format!("{name}: {e}")))?;
        let pairs: Vec<(String, String)> = self.images.iter().map(|(l, c)| (l.clone(), c.to_string())).collect();
        let map = SimplicialMap::from_labels(name, source, tetrahedron_boundary(), &pairs)?;
        let mut log = self.log;
        log.push(format!(
            "{} vertices, {} tetrahedra",
            map.source().vertex_count(),
            map.source().facets().len()
        ));
        Ok(GeneratedMap {
            map,
            provenance,
            construction_log: log,
        })
    }
}

/// Cyclic stack of `len` prisms over `ABC` on circle `j`, each prism cut
/// along the staircase `A < B < C`.
fn stack(b: &mut Builder, j: usize, len: usize) {
    for k in 0..len {
        let [a, bb, c] = [0, 1, 2].map(|x| b.ring(x, j, k % len));
        let [a2, b2, c2] = [0, 1, 2].map(|x| b.ring(x, j, (k + 1) % len));
        b.tet([a.clone(), bb.clone(), c, c2.clone()]);
        b.tet([a.clone(), bb, b2.clone(), c2.clone()]);
        b.tet([a, a2, b2, c2]);
    }
    b.log.push(format!("circle {j}: cyclic stack of {len} prisms"));
}

/// For each letter `X` with successor `Y`, and each square of the ladder
/// between the `X` and `Y` circles, whether the diagonal runs from `X_k` to
/// `Y_{k+1}` ("forward").
type Pattern = [Vec<bool>; 3];

fn stack_pattern(len: usize) -> Pattern {
    // In the staircase stack the A–B and B–C ladders use the forward
    // diagonal and the C–A ladder the backward one.
    [vec![true; len], vec![true; len], vec![false; len]]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Inner,
    Outer,
}

/// Triangulated annulus between an inner cycle of length `p` and an outer
/// cycle of length `q`, interleaving the two sides evenly.
fn wall(p: usize, q: usize) -> Vec<[(Side, usize); 3]> {
    let (mut i, mut j) = (0, 0);
    let mut tris = Vec::with_capacity(p + q);
    for _ in 0..p + q {
        if i * q <= j * p && i < p {
            tris.push([(Side::Inner, i % p), (Side::Inner, (i + 1) % p), (Side::Outer, j % q)]);
            i += 1;
        } else {
            tris.push([(Side::Inner, i % p), (Side::Outer, j % q), (Side::Outer, (j + 1) % q)]);
            j += 1;
        }
    }
    tris
}

/// The layer between circle `jin` (length `p`) and circle `jout` (length
/// `q`): a prism over every wall triangle from each letter to the next.
/// Vertex order inside a prism puts the inner side first and follows the
/// ladder diagonals along each cycle, so neighbouring prisms agree.
fn shell(b: &mut Builder, jin: usize, p: usize, pat_in: &Pattern, jout: usize, q: usize, pat_out: &Pattern) {
    let w = wall(p, q);
    for x in 0..3 {
        let y = next_letter(x);
        let less = |u: (Side, usize), t: (Side, usize)| -> bool {
            if u.0 != t.0 {
                return u.0 == Side::Inner;
            }
            let (len, pat) = if u.0 == Side::Inner { (p, &pat_in[x]) } else { (q, &pat_out[x]) };
            let (a, c) = (u.1, t.1);
            if (a + 1) % len == c {
                pat[a]
            } else if (c + 1) % len == a {
                !pat[c]
            } else {
                unreachable!("wall triangles span consecutive cycle vertices")
            }
        };
        for tri in &w {
            let mut order = *tri;
            order.sort_by_key(|&u| tri.iter().filter(|&&t| t != u && less(t, u)).count());
            let [pp, qq, rr] = order.map(|(side, k)| {
                let j = if side == Side::Inner { jin } else { jout };
                (j, k)
            });
            let mut at = |z: usize, (j, k): (usize, usize)| b.ring(z, j, k);
            let t1 = [at(x, pp), at(x, qq), at(x, rr), at(y, rr)];
            let t2 = [at(x, pp), at(x, qq), at(y, qq), at(y, rr)];
            let t3 = [at(x, pp), at(y, pp), at(y, qq), at(y, rr)];
            b.tet(t1);
            b.tet(t2);
            b.tet(t3);
        }
    }
    b.log.push(format!("shell between circle {jin} ({p} prisms) and circle {jout} ({q} prisms)"));
}

/// Solid torus over `D`: the mapping cylinder of the boundary torus of circle
/// `j` (length divisible by 3) onto the triangle `D0 D1 D2`, sending the
/// vertex at position `k` over letter `X` to `D_{(X − k) mod 3}`.
fn cap(b: &mut Builder, j: usize, len: usize) {
    let d: Vec<String> = (0..3).map(|i| b.v(format!("d{i}"), 'D')).collect();
    let g = |x: usize, k: usize| d[(x + 3 - k % 3) % 3].clone();
    for x in 0..3 {
        let y = next_letter(x);
        for k in 0..len {
            for tri in [[(x, k), (y, k), (y, k + 1)], [(x, k), (x, k + 1), (y, k + 1)]] {
                let vs: Vec<String> = tri.iter().map(|&(z, kk)| b.ring(z, j, kk % len)).collect();
                let gs: Vec<String> = tri.iter().map(|&(z, kk)| g(z, kk)).collect();
                for i in 0..3 {
                    let mut set: Vec<String> = vs[..=i].iter().chain(&gs[i..]).cloned().collect();
                    set.sort();
                    set.dedup();
                    if let Ok(t) = <[String; 4]>::try_from(set) {
                        b.tet(t);
                    }
                }
            }
        }
    }
    b.log.push(format!("cap over D on circle {j} ({len} prisms)"));
}

fn check(g: GeneratedMap, expected_h: Option<i64>, expected_abc: Option<usize>) -> Result<GeneratedMap> {
    let f = &g.map;
    let fail = |m: String| Error::ConstructionInvariantFailed(format!("{}: {m}", f.name()));
    let simp = f.validate_simplicial();
    if !simp.is_valid() {
        return Err(fail(format!("not simplicial on {:?}", simp.violations)));
    }
    let r = validate_closed_oriented_3_manifold(f.source());
    if !r.is_valid() || !r.s3_homology_certified {
        return Err(fail(format!("source: {}", r.summary())));
    }
    let t = validate_sphere_2(f.target());
    if !t.is_valid() {
        return Err(fail(format!("target: {}", t.summary())));
    }
    if let Some(m) = expected_abc {
        let abc = f.target().faces(2)[0].clone();
        let got = f.mu(&abc)?;
        if got != m {
            return Err(fail(format!("μ over ABC is {got}, expected {m}")));
        }
    }
    if let Some(h) = expected_h {
        let o = Orientations::coherent(f)?;
        let got = hopf_invariant_oriented(f, &o)?.value;
        if got.abs() != h {
            return Err(fail(format!("|H| = {}, expected {h}", got.abs())));
        }
    }
    Ok(g)
}

/// `∂Δ⁴ → ∂Δ³` with `0↦A, 1↦B, 2↦C, 3↦A, 4↦A`.
pub fn gen_collapse5() -> Result<GeneratedMap> {
    let map = SimplicialMap::from_labels(
        "collapse5",
        boundary_4_simplex(),
        tetrahedron_boundary(),
        &[("0", "A"), ("1", "B"), ("2", "C"), ("3", "A"), ("4", "A")],
    )?;
    check(
        GeneratedMap {
            map,
            provenance: Provenance::Collapse5,
            construction_log: vec!["boundary of the 4-simplex folded onto ABC".into()],
        },
        Some(0),
        Some(3),
    )
}

/// Sweeps through the prisms over the triangle `tri` (letters into `ABCD`):
/// the current triangle starts at the given offsets and each letter of
/// `word` advances one of its three vertices by one step around a 3-cycle.
fn sweep(b: &mut Builder, tri: [usize; 3], offsets: [usize; 3], word: [usize; 9]) {
    const ABCD: [char; 4] = ['A', 'B', 'C', 'D'];
    let mut at = |x: usize, i: usize| {
        let c = ABCD[x];
        b.v(format!("{}{}", c.to_ascii_lowercase(), i % 3), c)
    };
    let mut cur = offsets;
    let mut tets = Vec::with_capacity(9);
    for &m in &word {
        let face: Vec<String> = (0..3).map(|t| at(tri[t], cur[t])).collect();
        cur[m] += 1;
        let apex = at(tri[m], cur[m]);
        tets.push([face[0].clone(), face[1].clone(), face[2].clone(), apex]);
    }
    for t in tets {
        b.tet(t);
    }
    let name: String = tri.iter().map(|&x| ABCD[x]).collect();
    b.log.push(format!("solid torus over {name}: 9 tetrahedra"));
}

/// A 12-vertex, 36-tetrahedron map with μ = 9 on every triangle and
/// Hopf invariant 1. Each vertex of the target has the three preimages
/// `x0, x1, x2`; the preimage of each triangle is a solid torus of three
/// prisms, and the four tori fit along their common boundary annuli.
pub fn gen_hopf() -> Result<GeneratedMap> {
    let mut b = Builder::default();
    sweep(&mut b, [0, 1, 2], [0, 0, 0], [0, 0, 1, 1, 2, 0, 1, 2, 2]);
    sweep(&mut b, [0, 1, 3], [0, 0, 0], [0, 0, 2, 1, 1, 0, 2, 2, 1]);
    sweep(&mut b, [0, 2, 3], [0, 0, 0], [0, 0, 1, 2, 0, 1, 1, 2, 2]);
    sweep(&mut b, [1, 2, 3], [0, 0, 1], [0, 0, 2, 2, 1, 0, 2, 1, 1]);
    let g = check(b.finish("hopf", Provenance::HopfPrism)?, Some(1), Some(9))?;
    for s in g.map.target().faces(2) {
        if g.map.mu(s)? != 9 {
            return Err(Error::ConstructionInvariantFailed(format!("hopf: μ over {s} is not 9")));
        }
    }
    Ok(g)
}

fn seifert(n: u32, nested: bool) -> Result<GeneratedMap> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    let n = n as usize;
    let mut b = Builder::default();
    let outer = 2 * n - 1;
    let (mut j, mut len, mut pat);
    if nested {
        // Innermost torus of three prisms, then one shell per added prism.
        stack(&mut b, 0, 3);
        j = 0;
        len = 3;
        pat = stack_pattern(3);
        while len < outer {
            let widened: Pattern = pat.clone().map(|v| vec![v[0]; len + 1]);
            shell(&mut b, j, len, &pat, j + 1, len + 1, &widened);
            j += 1;
            len += 1;
            pat = widened;
        }
    } else {
        stack(&mut b, 0, outer);
        j = 0;
        len = outer;
        pat = stack_pattern(outer);
    }
    // Collar to a torus of 3n prisms whose ladders all run forward, then
    // the solid torus over D. Its meridian crosses the collar torus once
    // meridionally and n times longitudinally, which gives |H| = n.
    let collar = 3 * n;
    let forward: Pattern = [vec![true; collar], vec![true; collar], vec![true; collar]];
    shell(&mut b, j, len, &pat, j + 1, collar, &forward);
    cap(&mut b, j + 1, collar);
    if nested {
        let g = b.finish(&format!("zeta{n}"), Provenance::Zeta(n as u32))?;
        check(g, Some(n as i64), Some(9))
    } else {
        let g = b.finish(&format!("xi{n}"), Provenance::SeifertXi(n as u32))?;
        check(g, Some(n as i64), Some(3 * outer))
    }
}

/// The Seifert-fibration map: `2n − 1` prisms over `ABC`, a collar shell and
/// a solid torus over `D` containing the exceptional fiber.
pub fn gen_seifert_xi(n: u32) -> Result<GeneratedMap> {
    seifert(n, false)
}

/// As [`gen_seifert_xi`] but with the prisms over `ABC` replaced by a
/// three-prism torus and `2n − 4` nested shells whose tetrahedra all
/// miss the interior of `ABC`, so μ over `ABC` is 9.
pub fn gen_zeta(n: u32) -> Result<GeneratedMap> {
    seifert(n, true)
}

/// Every vertex of `source` sent to the target vertex labelled `to`.
pub fn constant_map(source: SimplicialComplex, target: SimplicialComplex, to: &str) -> Result<SimplicialMap> {
    let w = target.vertex_by_label(to).ok_or_else(|| Error::UnknownVertex(to.to_string()))?;
    let n = source.vertex_count();
    SimplicialMap::new(&format!("const_{to}"), source, target, vec![w; n])
}

/// The same map with source vertex `v` renamed to `perm[v]`.
pub fn relabel_source(f: &SimplicialMap, perm: &[u32]) -> Result<SimplicialMap> {
    let source = f.source().relabeled(perm)?;
    let mut assignment = vec![VertexId(0); perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        assignment[new as usize] = f.assignment()[old];
    }
    SimplicialMap::new(&format!("{}_relabeled", f.name()), source, f.target().clone(), assignment)
}

/// Number of source tetrahedra over each target triangle, by label.
pub fn mu_table(f: &SimplicialMap) -> BTreeMap<String, usize> {
    f.mu_all()
        .into_iter()
        .map(|(s, m)| (f.target().display_simplex(&s), m))
        .collect()
}

/// Facets over `s` that are not degenerate, grouped by their pivot letter.
pub fn pivot_histogram(f: &SimplicialMap, s: &Simplex) -> HashMap<VertexId, usize> {
    let mut h = HashMap::new();
    for i in f.facets_over(s) {
        if let Ok(p) = f.pivot_edge(&f.source().facets()[i]) {
            *h.entry(p.collapsed_target_vertex).or_insert(0) += 1;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::hopf_invariant;

    #[test]
    fn collapse5() {
        let g = gen_collapse5().unwrap();
        assert_eq!(mu_table(&g.map).values().copied().collect::<Vec<_>>(), vec![3, 0, 0, 0]);
    }

    #[test]
    fn hopf_map() {
        let g = gen_hopf().unwrap();
        let f = &g.map;
        assert_eq!(f.source().vertex_count(), 12);
        assert_eq!(f.source().facets().len(), 36);
        assert!(f.mu_all().values().all(|&m| m == 9));
        assert_eq!(hopf_invariant(f).unwrap().value, 1);
    }

    #[test]
    fn zeta_two_equals_xi_two() {
        let z = gen_zeta(2).unwrap();
        let x = gen_seifert_xi(2).unwrap();
        assert_eq!(z.map.source().facets(), x.map.source().facets());
        assert_eq!(z.map.mu(&z.map.target().faces(2)[0].clone()).unwrap(), 9);
    }

    #[test]
    fn zeta_three() {
        let g = gen_zeta(3).unwrap();
        let f = &g.map;
        assert_eq!(hopf_invariant(f).unwrap().value.abs(), 3);
        assert!(f.mu_all().values().all(|&m| m >= 9));
    }

    #[test]
    fn small_n_rejected() {
        assert!(gen_zeta(1).is_err());
        assert!(gen_seifert_xi(0).is_err());
    }
}
