//! The accordiohedron and its companions: vertex points and facet halfspaces,
//! normal-fan certification, zonotope support functions, the parallelepiped,
//! matriochka inclusions, linear orientation, projections of accordiohedra,
//! exact vertex enumeration at small dimension, and rotation-invariant
//! subcomplexes and slices.

use crate::complex::{face_dissection, oriented_flip_graph, OrientedFlipGraph};
use crate::error::{Error, Result};
use crate::linalg::{feasible, rat, solve, Inequality, Rat};
use crate::polygon::{accordion_diagonals, rotate_max, rotate_min, Diag, Dissection};
use crate::symmetry::Symmetry;
use crate::vectors::{c_vector_set, c_vector_unchecked, g_vector, IntVector};
use num::{BigRational, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Facet inequality <normal, x> <= rhs. Normals are g-vectors, right-hand
/// sides are crossing-count heights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: IntVector,
    pub rhs: i64,
}

/// A polytope vertex together with the maximal face it realizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPoint {
    pub face: Vec<Diag>,
    pub point: IntVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeRep {
    pub basis: Vec<Diag>,
    pub vertices: Vec<VertexPoint>,
    pub halfspaces: Vec<HalfSpace>,
    pub dim: usize,
}

impl PolytopeRep {
    pub fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": self.basis.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "vertices": self.vertices.iter().map(|v| serde_json::json!({
                "face": v.face.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "point": v.point.0,
            })).collect::<Vec<_>>(),
            "halfspaces": self.halfspaces.iter().map(|h| serde_json::json!({
                "normal": h.normal.0,
                "rhs": h.rhs,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Heights of all internal accordion diagonals: pairwise crossing counts.
pub fn heights_map(reference: &Dissection) -> BTreeMap<Diag, i64> {
    let acc = accordion_diagonals(reference);
    let circle = reference.circle();
    acc.iter()
        .map(|q| {
            let h = acc.iter().filter(|o| circle.crosses(**o, *q)).count() as i64;
            (*q, h)
        })
        .collect()
}

fn height_of(circle: crate::polygon::Circle, heights: &BTreeMap<Diag, i64>, d: Diag) -> i64 {
    if circle.is_boundary(d) {
        0 // boundary edges cross nothing
    } else {
        heights[&d]
    }
}

/// Vertex point of a maximal face: sum of height-weighted c-vectors.
pub fn vertex_point(
    reference: &Dissection,
    heights: &BTreeMap<Diag, i64>,
    face: &[Diag],
) -> IntVector {
    let member = face_dissection(reference, face);
    let mut p = IntVector::zeros(reference.len());
    for &delta in face {
        let c = c_vector_unchecked(reference, &member, delta).expect("face member");
        p = &p + &c.scaled(heights[&delta]);
    }
    p
}

/// The accordiohedron: vertex points over all maximal faces and the facet
/// halfspaces over all internal accordion diagonals.
pub fn accordiohedron(reference: &Dissection) -> Result<PolytopeRep> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let graph = oriented_flip_graph(reference);
    accordiohedron_with(reference, &graph)
}

pub fn accordiohedron_with(
    reference: &Dissection,
    graph: &OrientedFlipGraph,
) -> Result<PolytopeRep> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let heights = heights_map(reference);
    let vertices: Vec<VertexPoint> = graph
        .nodes
        .iter()
        .map(|face| VertexPoint {
            face: face.clone(),
            point: vertex_point(reference, &heights, face),
        })
        .collect();
    let halfspaces: Vec<HalfSpace> = accordion_diagonals(reference)
        .into_iter()
        .map(|q| HalfSpace {
            normal: g_vector(reference, q).expect("accordion diagonal"),
            rhs: heights[&q],
        })
        .collect();
    Ok(PolytopeRep {
        basis: reference.diagonals().to_vec(),
        vertices,
        halfspaces,
        dim: reference.len(),
    })
}

/// Every vertex satisfies every halfspace, with equality exactly on its own
/// face's normals (so each vertex sits on exactly dim facet hyperplanes).
pub fn verify_vertices_on_facets(reference: &Dissection, rep: &PolytopeRep) -> bool {
    let acc: Vec<Diag> = accordion_diagonals(reference);
    for v in &rep.vertices {
        for (q, h) in acc.iter().zip(&rep.halfspaces) {
            let val = h.normal.dot(&v.point);
            if val > h.rhs {
                return false;
            }
            let tight = val == h.rhs;
            if tight != v.face.contains(q) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct NormalFanReport {
    pub ok: bool,
    /// First failing arc index, if any.
    pub witness: Option<usize>,
}

/// Across every flip: the vertex difference is an integer multiple
/// lambda <= -2 of the leaving diagonal's c-vector, the multiple agrees with
/// the height formula, and the entering diagonal's c-vector is the antipode.
pub fn verify_normal_fan(
    reference: &Dissection,
    rep: &PolytopeRep,
    graph: &OrientedFlipGraph,
    heights: &BTreeMap<Diag, i64>,
) -> NormalFanReport {
    let circle = reference.circle();
    let points: BTreeMap<usize, &IntVector> = rep
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (i, &v.point))
        .collect();
    for (k, arc) in graph.arcs.iter().enumerate() {
        let from_member = face_dissection(reference, &graph.nodes[arc.from]);
        let to_member = face_dissection(reference, &graph.nodes[arc.to]);
        let c_from = c_vector_unchecked(reference, &from_member, arc.removed).expect("face member");
        let c_to = c_vector_unchecked(reference, &to_member, arc.added).expect("face member");
        if c_to != -&c_from {
            return NormalFanReport {
                ok: false,
                witness: Some(k),
            };
        }
        let lambda = height_of(circle, heights, arc.mu) + height_of(circle, heights, arc.nu)
            - height_of(circle, heights, arc.removed)
            - height_of(circle, heights, arc.added);
        if lambda > -2 {
            return NormalFanReport {
                ok: false,
                witness: Some(k),
            };
        }
        let diff = points[&arc.to] - points[&arc.from];
        if diff != c_from.scaled(lambda) {
            return NormalFanReport {
                ok: false,
                witness: Some(k),
            };
        }
        // lambda recovered by exact division of the difference by the
        // c-vector must agree with the height formula
        match c_from.support().first() {
            Some(&i) => {
                if diff.0[i] % c_from.0[i] != 0 || diff.0[i] / c_from.0[i] != lambda {
                    return NormalFanReport {
                        ok: false,
                        witness: Some(k),
                    };
                }
            }
            None => {
                return NormalFanReport {
                    ok: false,
                    witness: Some(k),
                }
            }
        }
    }
    NormalFanReport {
        ok: true,
        witness: None,
    }
}

/// Support function of the zonotope (the Minkowski sum of segments [0, c]
/// over the deduplicated c-vectors; the set is closed under negation so this
/// is the centered segment sum).
pub fn zonotope_support(reference: &Dissection, y: &IntVector) -> i64 {
    zonotope_support_with(&c_vector_set(reference), y)
}

pub fn zonotope_support_with(cset: &[IntVector], y: &IntVector) -> i64 {
    cset.iter().map(|c| c.dot(y).max(0)).sum()
}

/// Box cut out by the rotate_min and rotate_max facet inequalities alone.
pub fn parallelepiped(reference: &Dissection) -> Result<PolytopeRep> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let heights = heights_map(reference);
    let dim = reference.len();
    let min_face: Vec<Diag> = rotate_min(reference).diagonals().to_vec();
    let max_face: Vec<Diag> = rotate_max(reference).diagonals().to_vec();
    let mut halfspaces = Vec::new();
    for q in min_face.iter().chain(&max_face) {
        halfspaces.push(HalfSpace {
            normal: g_vector(reference, *q).expect("rotated copies are accordion diagonals"),
            rhs: heights[q],
        });
    }
    // vertices: one per sign pattern; coordinate i ranges over
    // [-h(max_i), +h(min_i)] in the +-unit normals
    let mut upper = vec![0i64; dim];
    let mut lower = vec![0i64; dim];
    for q in &min_face {
        let g = g_vector(reference, *q).unwrap();
        let i = g.support()[0];
        debug_assert_eq!(g.0[i], 1);
        upper[i] = heights[q];
    }
    for q in &max_face {
        let g = g_vector(reference, *q).unwrap();
        let i = g.support()[0];
        debug_assert_eq!(g.0[i], -1);
        lower[i] = -heights[q];
    }
    let mut vertices = Vec::new();
    for mask in 0..(1usize << dim) {
        let coords: Vec<i64> = (0..dim)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    upper[i]
                } else {
                    lower[i]
                }
            })
            .collect();
        vertices.push(VertexPoint {
            face: Vec::new(),
            point: IntVector(coords),
        });
    }
    Ok(PolytopeRep {
        basis: reference.diagonals().to_vec(),
        vertices,
        halfspaces,
        dim,
    })
}

/// Zonotope inside accordiohedron inside parallelepiped, via support
/// functions and halfspace inclusion.
pub fn matriochka_check(reference: &Dissection) -> bool {
    let Ok(acco) = accordiohedron(reference) else {
        return false;
    };
    let cset = c_vector_set(reference);
    // zonotope support never exceeds the accordiohedron right-hand side
    let z_in_a = acco
        .halfspaces
        .iter()
        .all(|h| zonotope_support_with(&cset, &h.normal) <= h.rhs);
    let Ok(para) = parallelepiped(reference) else {
        return false;
    };
    let a_in_p = para.halfspaces.iter().all(|h| acco.halfspaces.contains(h));
    z_in_a && a_in_p
}

/// Number of unordered pairs of facets with opposite normals.
pub fn parallel_facets(reference: &Dissection) -> usize {
    let acc = accordion_diagonals(reference);
    let gv: Vec<IntVector> = acc
        .iter()
        .map(|q| g_vector(reference, *q).expect("accordion diagonal"))
        .collect();
    let mut count = 0;
    for i in 0..gv.len() {
        for j in i + 1..gv.len() {
            if gv[j] == -&gv[i] {
                count += 1;
            }
        }
    }
    count
}

/// The graph of the accordiohedron oriented by the functional -1 (all-ones
/// negated) reproduces the increasing flip orientation.
pub fn orientation_check(reference: &Dissection) -> bool {
    let graph = oriented_flip_graph(reference);
    let Ok(rep) = accordiohedron_with(reference, &graph) else {
        return false;
    };
    let ones = IntVector(vec![1; reference.len()]);
    for arc in &graph.arcs {
        let diff = &rep.vertices[arc.to].point - &rep.vertices[arc.from].point;
        // increasing arcs must have <-1, p' - p> > 0
        if -ones.dot(&diff) <= 0 {
            return false;
        }
    }
    // the source is the unique node without incoming arcs
    let sources: Vec<usize> = (0..graph.nodes.len())
        .filter(|&i| graph.in_degree(i) == 0)
        .collect();
    sources.len() == 1
}

/// Orthogonal projection of the big accordiohedron onto the small coordinate
/// subspace: vertex points use the big heights with the small c-vectors, and
/// the halfspaces are the big halfspaces whose normals live in the subspace.
pub fn project_accordiohedron(small: &Dissection, big: &Dissection) -> Result<PolytopeRep> {
    if small.n() != big.n()
        || small.parity() != big.parity()
        || !small.diagonals().iter().all(|d| big.contains(*d))
    {
        return Err(Error::NotNested);
    }
    if small.is_empty() {
        return Err(Error::EmptyReference);
    }
    let graph = oriented_flip_graph(small);
    let big_heights = heights_map(big);
    let circle = small.circle();
    let h = |d: Diag| height_of(circle, &big_heights, d);
    let vertices: Vec<VertexPoint> = graph
        .nodes
        .iter()
        .map(|face| {
            let member = face_dissection(small, face);
            let mut p = IntVector::zeros(small.len());
            for &delta in face {
                let c = c_vector_unchecked(small, &member, delta).expect("face member");
                p = &p + &c.scaled(h(delta));
            }
            VertexPoint {
                face: face.clone(),
                point: p,
            }
        })
        .collect();
    let halfspaces: Vec<HalfSpace> = accordion_diagonals(small)
        .into_iter()
        .map(|q| {
            // rays coincide, so the restricted big normal is the small g-vector
            HalfSpace {
                normal: g_vector(small, q).expect("accordion diagonal"),
                rhs: h(q),
            }
        })
        .collect();
    Ok(PolytopeRep {
        basis: small.diagonals().to_vec(),
        vertices,
        halfspaces,
        dim: small.len(),
    })
}

/// Normal-fan certification of the projected polytope against the small flip
/// graph, with heights measured in the big reference.
pub fn verify_projected_normal_fan(small: &Dissection, big: &Dissection) -> Result<bool> {
    let rep = project_accordiohedron(small, big)?;
    let graph = oriented_flip_graph(small);
    let big_heights = heights_map(big);
    Ok(verify_normal_fan(small, &rep, &graph, &big_heights).ok)
}

/// Exact brute-force vertex enumeration of a halfspace intersection at
/// dimension <= 4: solve every dim-subset, keep feasible solutions, dedupe.
pub fn vertex_enumeration_desk(
    halfspaces: &[(Vec<Rat>, Rat)],
    dim: usize,
) -> Result<Vec<Vec<Rat>>> {
    assert!(dim <= 4, "desk-scale enumeration only");
    if dim == 0 {
        return Ok(vec![Vec::new()]);
    }
    // boundedness: the recession cone {Ax <= 0} must not contain any +-e_i
    // direction, checked by exact LP feasibility
    for i in 0..dim {
        for sign in [1i64, -1] {
            let eqs = vec![Inequality::new(
                {
                    let mut c = vec![rat(0); dim];
                    c[i] = rat(sign);
                    c
                },
                rat(1),
            )];
            let ineqs: Vec<Inequality> = halfspaces
                .iter()
                .map(|(n, _)| Inequality::new(n.clone(), rat(0)))
                .collect();
            if feasible(&eqs, &ineqs) {
                return Err(Error::Unbounded);
            }
        }
    }
    let m = halfspaces.len();
    let mut vertices: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut subset: Vec<usize> = Vec::with_capacity(dim);
    enumerate_subsets(m, dim, 0, &mut subset, &mut |chosen| {
        let a: Vec<Vec<Rat>> = chosen.iter().map(|&i| halfspaces[i].0.clone()).collect();
        let b: Vec<Rat> = chosen.iter().map(|&i| halfspaces[i].1.clone()).collect();
        if let Some(x) = solve(&a, &b) {
            let ok = halfspaces.iter().all(|(n, r)| {
                let lhs: Rat = n
                    .iter()
                    .zip(&x)
                    .map(|(c, xi)| c * xi)
                    .fold(BigRational::zero(), |acc, t| acc + t);
                lhs <= *r
            });
            if ok {
                vertices.insert(x);
            }
        }
    });
    Ok(vertices.into_iter().collect())
}

fn enumerate_subsets(
    m: usize,
    k: usize,
    start: usize,
    current: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if current.len() == k {
        visit(current);
        return;
    }
    for i in start..m {
        current.push(i);
        enumerate_subsets(m, k, i + 1, current, visit);
        current.pop();
    }
}

/// Halfspaces of a polytope rep in rational form for the desk enumerator.
pub fn rational_halfspaces(rep: &PolytopeRep) -> Vec<(Vec<Rat>, Rat)> {
    rep.halfspaces
        .iter()
        .map(|h| (h.normal.0.iter().map(|&x| rat(x)).collect(), rat(h.rhs)))
        .collect()
}

/// The rotation-invariant subcomplex: vertices are crossing-free orbits of
/// accordion diagonals, faces are orbit sets with crossing-free union.
#[derive(Debug, Clone)]
pub struct InvariantComplex {
    /// Crossing-free orbits, canonically ordered.
    pub orbits: Vec<Vec<Diag>>,
    /// Maximal faces as sorted orbit index lists.
    pub maximal_faces: Vec<Vec<usize>>,
}

pub fn invariant_complex(reference: &Dissection, sigma: Symmetry) -> Result<InvariantComplex> {
    sigma.validate(reference.circle().points())?;
    if !sigma.is_rotation() {
        return Err(Error::NotRotation);
    }
    if sigma.apply_dissection(reference) != *reference {
        return Err(Error::NotInvariant);
    }
    let circle = reference.circle();
    let points = circle.points();
    let mut orbits: BTreeSet<Vec<Diag>> = BTreeSet::new();
    for q in accordion_diagonals(reference) {
        let orbit = sigma.orbit(points, q);
        let free = orbit
            .iter()
            .enumerate()
            .all(|(i, d1)| orbit[i + 1..].iter().all(|d2| !circle.crosses(*d1, *d2)));
        if free {
            orbits.insert(orbit);
        }
    }
    let orbits: Vec<Vec<Diag>> = orbits.into_iter().collect();
    let compatible = |i: usize, j: usize| {
        orbits[i]
            .iter()
            .all(|d1| orbits[j].iter().all(|d2| !circle.crosses(*d1, *d2)))
    };
    // maximal independent sets over orbit compatibility
    let k = orbits.len();
    let mut maximal_faces = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn rec(
        k: usize,
        start: usize,
        current: &mut Vec<usize>,
        compatible: &impl Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        let extendable =
            (0..k).any(|j| !current.contains(&j) && current.iter().all(|&i| compatible(i, j)));
        if !extendable {
            out.push(current.clone());
        }
        for j in start..k {
            if current.iter().all(|&i| compatible(i, j)) {
                current.push(j);
                rec(k, j + 1, current, compatible, out);
                current.pop();
            }
        }
    }
    rec(k, 0, &mut current, &compatible, &mut maximal_faces);
    maximal_faces.retain(|f| {
        // keep only genuinely maximal sets (the recursion may emit subsets
        // whose extension sits before `start`)
        (0..k).all(|j| f.contains(&j) || f.iter().any(|&i| !compatible(i, j)))
    });
    maximal_faces.sort();
    maximal_faces.dedup();
    Ok(InvariantComplex {
        orbits,
        maximal_faces,
    })
}

/// The invariant accordiohedron slice: vertex points of the sigma-invariant
/// maximal faces, certified inside the fixed subspace and against all
/// accordiohedron halfspaces, with an exact slice cross-check at fixed-space
/// dimension <= 4.
#[derive(Debug, Clone)]
pub struct InvariantPolytope {
    pub rep: PolytopeRep,
    pub in_fixed_space: bool,
    pub satisfies_halfspaces: bool,
    /// Exact comparison with the sliced H-description, when dim(fix) <= 4.
    pub slice_verified: Option<bool>,
}

pub fn invariant_polytope(reference: &Dissection, sigma: Symmetry) -> Result<InvariantPolytope> {
    sigma.validate(reference.circle().points())?;
    if !sigma.is_rotation() {
        return Err(Error::NotRotation);
    }
    if sigma.apply_dissection(reference) != *reference {
        return Err(Error::NotInvariant);
    }
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let graph = oriented_flip_graph(reference);
    let acco = accordiohedron_with(reference, &graph)?;
    let points = reference.circle().points();
    let invariant_nodes: Vec<usize> = (0..graph.nodes.len())
        .filter(|&i| {
            let image: BTreeSet<Diag> = graph.nodes[i]
                .iter()
                .map(|d| sigma.apply_diag(points, *d))
                .collect();
            image == graph.nodes[i].iter().copied().collect()
        })
        .collect();
    let vertices: Vec<VertexPoint> = invariant_nodes
        .iter()
        .map(|&i| acco.vertices[i].clone())
        .collect();

    // orbits of the reference's own diagonals index the fixed subspace
    let mut orbit_of: Vec<usize> = vec![usize::MAX; reference.len()];
    let mut orbit_reps: Vec<usize> = Vec::new();
    for (i, d) in reference.diagonals().iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let orbit = sigma.orbit(points, *d);
        let id = orbit_reps.len();
        for o in &orbit {
            let j = reference.index_of(*o).expect("invariant dissection");
            orbit_of[j] = id;
        }
        orbit_reps.push(i);
    }
    let fix_dim = orbit_reps.len();

    let in_fixed_space = vertices
        .iter()
        .all(|v| (0..reference.len()).all(|i| v.point.0[i] == v.point.0[orbit_reps[orbit_of[i]]]));
    let satisfies_halfspaces = vertices.iter().all(|v| {
        acco.halfspaces
            .iter()
            .all(|h| h.normal.dot(&v.point) <= h.rhs)
    });

    let slice_verified = if fix_dim <= 4 {
        // slice the H-description: x = L y with y indexed by orbits
        let sliced: Vec<(Vec<Rat>, Rat)> = acco
            .halfspaces
            .iter()
            .map(|h| {
                let mut coeffs = vec![rat(0); fix_dim];
                for (i, &g) in h.normal.0.iter().enumerate() {
                    coeffs[orbit_of[i]] = &coeffs[orbit_of[i]] + &rat(g);
                }
                (coeffs, rat(h.rhs))
            })
            .collect();
        let enumerated = vertex_enumeration_desk(&sliced, fix_dim)?;
        let expected: BTreeSet<Vec<Rat>> = vertices
            .iter()
            .map(|v| {
                orbit_reps
                    .iter()
                    .map(|&i| rat(v.point.0[i]))
                    .collect::<Vec<Rat>>()
            })
            .collect();
        let got: BTreeSet<Vec<Rat>> = enumerated.into_iter().collect();
        Some(expected == got)
    } else {
        None
    };

    Ok(InvariantPolytope {
        rep: PolytopeRep {
            basis: acco.basis.clone(),
            vertices,
            halfspaces: acco.halfspaces.clone(),
            dim: fix_dim,
        },
        in_fixed_space,
        satisfies_halfspaces,
        slice_verified,
    })
}
