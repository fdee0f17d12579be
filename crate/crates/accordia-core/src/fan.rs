//! Complete-simplicial-fan certification for the g- and d-vector cones over
//! the accordion complex, plus smoothness, coarsening of the c-vector
//! arrangement, and coordinate sections.
//!
//! The two-condition criterion: (1) some base facet's rays form a basis and
//! its open cone meets no other facet's open cone (decided by exact rational
//! LP feasibility); (2) across every flip, the unique linear dependence has
//! same-sign coefficients on the exchanged pair.

use crate::complex::{all_faces, face_dissection, oriented_flip_graph, OrientedFlipGraph};
use crate::error::{Error, Result};
use crate::linalg::{det_i128, feasible, kernel, rat, Inequality, Rat};
use crate::polygon::{accordion_diagonals, rotate_min, Diag, Dissection};
use crate::vectors::{d_vector, g_vector, IntVector};
use num::{Signed, Zero};
use std::collections::BTreeMap;

/// Rays of one maximal cone, in face order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCone {
    pub rays: Vec<IntVector>,
}

/// Linear dependence across a flip, normalized so the removed diagonal's
/// coefficient is +1. Coefficient order: removed, added, then the common
/// diagonals in face order.
#[derive(Debug, Clone)]
pub struct FlipDependence {
    pub arc: usize,
    pub coefficients: Vec<Rat>,
}

/// A maximal cone whose rays are linearly dependent, with the kernel vector
/// over its rays (first nonzero coefficient normalized to +1).
#[derive(Debug, Clone)]
pub struct DegenerateFace {
    pub face: usize,
    pub dependence: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct SignFailure {
    pub arc: usize,
    pub coefficients: Vec<Rat>,
}

/// Everything the two-condition criterion produced.
#[derive(Debug, Clone)]
pub struct FanCertificate {
    pub ok: bool,
    pub base_face: usize,
    pub base_is_basis: bool,
    /// Faces whose open cone meets the base face's open cone.
    pub base_overlaps: Vec<usize>,
    pub degenerate_faces: Vec<DegenerateFace>,
    pub sign_failures: Vec<SignFailure>,
    /// Condition-2 records for every flip between full-rank faces.
    pub dependences: Vec<FlipDependence>,
}

fn ray_columns(rays: &[IntVector]) -> Vec<Vec<Rat>> {
    let dim = rays.first().map(|r| r.dim()).unwrap_or(0);
    (0..dim)
        .map(|row| rays.iter().map(|r| rat(r.0[row])).collect())
        .collect()
}

/// The unique-up-to-scale kernel vector of the rays of two adjacent faces,
/// ordered removed, added, common. Errors when the kernel is not a line.
pub fn flip_dependence(
    ray_of: &BTreeMap<Diag, IntVector>,
    face: &[Diag],
    removed: Diag,
    added: Diag,
) -> Result<Vec<Rat>> {
    let mut order: Vec<Diag> = vec![removed, added];
    order.extend(face.iter().copied().filter(|d| *d != removed));
    let rays: Vec<IntVector> = order.iter().map(|d| ray_of[d].clone()).collect();
    let matrix = ray_columns(&rays);
    let null = kernel(&matrix, order.len());
    if null.len() != 1 {
        return Err(Error::RankDeficient);
    }
    let mut coeffs = null.into_iter().next().unwrap();
    let lead = coeffs[0].clone();
    if lead.is_zero() {
        return Err(Error::RankDeficient);
    }
    for c in coeffs.iter_mut() {
        *c = &*c / &lead;
    }
    Ok(coeffs)
}

/// Does the open cone of `a` meet the open cone of `b`? Exact LP: a strictly
/// positive combination of a's rays equal to one of b's rays, scaled so all
/// multipliers are >= 1.
fn open_cones_intersect(a: &[IntVector], b: &[IntVector]) -> bool {
    if a.is_empty() || b.is_empty() {
        // zero-dimensional cones at the origin always meet
        return a.is_empty() && b.is_empty();
    }
    let dim = a[0].dim();
    let vars = a.len() + b.len();
    let mut eqs = Vec::new();
    for row in 0..dim {
        let mut coeffs = Vec::with_capacity(vars);
        for r in a {
            coeffs.push(rat(r.0[row]));
        }
        for r in b {
            coeffs.push(rat(-r.0[row]));
        }
        eqs.push(Inequality::new(coeffs, rat(0)));
    }
    let mut ineqs = Vec::new();
    for v in 0..vars {
        let mut coeffs = vec![rat(0); vars];
        coeffs[v] = rat(-1);
        ineqs.push(Inequality::new(coeffs, rat(-1))); // -x_v <= -1, i.e. x_v >= 1
    }
    feasible(&eqs, &ineqs)
}

/// Run the two-condition criterion over the complex with the given rays.
pub fn verify_complete_simplicial_fan(
    complex: &OrientedFlipGraph,
    ray_of: &BTreeMap<Diag, IntVector>,
    base_face: usize,
) -> FanCertificate {
    let face_rays =
        |face: &[Diag]| -> Vec<IntVector> { face.iter().map(|d| ray_of[d].clone()).collect() };
    let dim = complex.nodes[base_face].len();

    let base = face_rays(&complex.nodes[base_face]);
    let base_is_basis = if dim == 0 {
        true
    } else {
        base.len() == dim && {
            let m: Vec<Vec<i64>> = (0..dim)
                .map(|r| base.iter().map(|v| v.0[r]).collect())
                .collect();
            det_i128(&m) != 0
        }
    };

    let mut degenerate_faces = Vec::new();
    for (i, face) in complex.nodes.iter().enumerate() {
        let rays = face_rays(face);
        if rays.is_empty() {
            continue;
        }
        let matrix = ray_columns(&rays);
        let null = kernel(&matrix, rays.len());
        if !null.is_empty() {
            let mut dep = null.into_iter().next().unwrap();
            if let Some(lead) = dep.iter().position(|c| !c.is_zero()) {
                let l = dep[lead].clone();
                for c in dep.iter_mut() {
                    *c = &*c / &l;
                }
            }
            degenerate_faces.push(DegenerateFace {
                face: i,
                dependence: dep,
            });
        }
    }

    let mut base_overlaps = Vec::new();
    if base_is_basis {
        for (i, face) in complex.nodes.iter().enumerate() {
            if i == base_face {
                continue;
            }
            if open_cones_intersect(&base, &face_rays(face)) {
                base_overlaps.push(i);
            }
        }
    }

    let mut dependences = Vec::new();
    let mut sign_failures = Vec::new();
    let degenerate_set: Vec<usize> = degenerate_faces.iter().map(|d| d.face).collect();
    for (k, arc) in complex.arcs.iter().enumerate() {
        if degenerate_set.contains(&arc.from) || degenerate_set.contains(&arc.to) {
            continue;
        }
        match flip_dependence(ray_of, &complex.nodes[arc.from], arc.removed, arc.added) {
            Ok(coeffs) => {
                // normalized removed coefficient is +1; condition 2 wants the
                // added coefficient strictly positive
                if coeffs[1].is_positive() {
                    dependences.push(FlipDependence {
                        arc: k,
                        coefficients: coeffs,
                    });
                } else {
                    sign_failures.push(SignFailure {
                        arc: k,
                        coefficients: coeffs,
                    });
                }
            }
            Err(_) => sign_failures.push(SignFailure {
                arc: k,
                coefficients: Vec::new(),
            }),
        }
    }

    let ok = base_is_basis
        && base_overlaps.is_empty()
        && degenerate_faces.is_empty()
        && sign_failures.is_empty();
    FanCertificate {
        ok,
        base_face,
        base_is_basis,
        base_overlaps,
        degenerate_faces,
        sign_failures,
        dependences,
    }
}

/// A certified fan: complex, rays per accordion diagonal, certificate.
#[derive(Debug, Clone)]
pub struct Fan {
    pub graph: OrientedFlipGraph,
    pub rays: BTreeMap<Diag, IntVector>,
    pub certificate: FanCertificate,
}

impl Fan {
    pub fn ray_labels(&self) -> Vec<Diag> {
        self.rays.keys().copied().collect()
    }
}

#[derive(Debug, Clone)]
pub struct GFan {
    pub fan: Fan,
    pub smooth: bool,
}

fn base_face_index(reference: &Dissection, graph: &OrientedFlipGraph) -> usize {
    let mut base: Vec<Diag> = rotate_min(reference).diagonals().to_vec();
    base.sort();
    graph
        .node_index(&base)
        .expect("rotate_min is a maximal face")
}

/// g-vector fan with certificate and smoothness (all maximal-cone
/// determinants +-1).
pub fn build_gfan(reference: &Dissection) -> GFan {
    build_gfan_with(reference, oriented_flip_graph(reference))
}

/// As [`build_gfan`] with a precomputed flip graph.
pub fn build_gfan_with(reference: &Dissection, graph: OrientedFlipGraph) -> GFan {
    let mut rays = BTreeMap::new();
    for q in accordion_diagonals(reference) {
        rays.insert(q, g_vector(reference, q).expect("accordion diagonal"));
    }
    let base = base_face_index(reference, &graph);
    let certificate = verify_complete_simplicial_fan(&graph, &rays, base);
    let dim = reference.len();
    let smooth = graph.nodes.iter().all(|face| {
        if dim == 0 {
            return true;
        }
        let m: Vec<Vec<i64>> = (0..dim)
            .map(|r| face.iter().map(|d| rays[d].0[r]).collect())
            .collect();
        det_i128(&m).abs() == 1
    });
    GFan {
        fan: Fan {
            graph,
            rays,
            certificate,
        },
        smooth,
    }
}

/// Does the reference contain a cell with an even number of edges, all of
/// them internal diagonals?
pub fn even_interior_cell(reference: &Dissection) -> bool {
    let circle = reference.circle();
    reference
        .cells()
        .iter()
        .any(|cell| cell.len() % 2 == 0 && cell.edges.iter().all(|e| !circle.is_boundary(*e)))
}

/// d-vector fan attempt. The certificate succeeds exactly when the reference
/// has no even interior cell.
pub fn build_dfan(reference: &Dissection) -> Fan {
    build_dfan_with(reference, oriented_flip_graph(reference))
}

/// As [`build_dfan`] with a precomputed flip graph.
pub fn build_dfan_with(reference: &Dissection, graph: OrientedFlipGraph) -> Fan {
    let mut rays = BTreeMap::new();
    for q in accordion_diagonals(reference) {
        rays.insert(q, d_vector(reference, q));
    }
    let base = base_face_index(reference, &graph);
    let certificate = verify_complete_simplicial_fan(&graph, &rays, base);
    Fan {
        graph,
        rays,
        certificate,
    }
}

/// Every wall of the g-fan lies in the hyperplane orthogonal to the c-vector
/// of the removed diagonal, which belongs to the c-vector arrangement; this
/// is the coarsening statement checked through the dual-basis pairing.
pub fn coarsening_check(reference: &Dissection) -> bool {
    let graph = oriented_flip_graph(reference);
    coarsening_check_with(reference, &graph)
}

/// As [`coarsening_check`] with a precomputed flip graph.
pub fn coarsening_check_with(reference: &Dissection, graph: &OrientedFlipGraph) -> bool {
    let cset = crate::vectors::c_vector_set_with(reference, graph);
    for arc in &graph.arcs {
        let face = &graph.nodes[arc.from];
        let member = face_dissection(reference, face);
        let Ok(c) = crate::vectors::c_vector_unchecked(reference, &member, arc.removed) else {
            return false;
        };
        if c.is_zero() || !cset.contains(&c) {
            return false;
        }
        for d in face.iter().filter(|d| **d != arc.removed) {
            let g = g_vector(reference, *d).expect("face member");
            if c.dot(&g) != 0 {
                return false;
            }
        }
    }
    true
}

/// Ray-coincidence and subfan-equals-section checks for nested references.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectionReport {
    pub ray_coincidence: bool,
    pub subfan_equals_section: bool,
}

fn check_nested(small: &Dissection, big: &Dissection) -> Result<()> {
    if small.n() != big.n()
        || small.parity() != big.parity()
        || !small.diagonals().iter().all(|d| big.contains(*d))
    {
        return Err(Error::NotNested);
    }
    Ok(())
}

/// For nested references small ⊆ big: every big-accordion diagonal has its
/// g-vector inside the small coordinate subspace iff it is a small-accordion
/// diagonal, and then the two g-vectors agree; and the faces of the small
/// complex are exactly the big-complex faces lying in the subspace.
pub fn section_check(small: &Dissection, big: &Dissection) -> Result<SectionReport> {
    check_nested(small, big)?;
    let outside: Vec<usize> = big
        .diagonals()
        .iter()
        .enumerate()
        .filter(|(_, d)| !small.contains(**d))
        .map(|(i, _)| i)
        .collect();
    let restrict = |v: &IntVector| -> IntVector {
        IntVector(
            big.diagonals()
                .iter()
                .enumerate()
                .filter(|(_, d)| small.contains(**d))
                .map(|(i, _)| v.0[i])
                .collect(),
        )
    };
    let mut ray_coincidence = true;
    for q in accordion_diagonals(big) {
        let g_big = g_vector(big, q).expect("accordion diagonal");
        let in_subspace = outside.iter().all(|&i| g_big.0[i] == 0);
        let is_small = crate::polygon::is_accordion_diagonal(small, q);
        if in_subspace != is_small {
            ray_coincidence = false;
            break;
        }
        if is_small {
            let g_small = g_vector(small, q).expect("small accordion diagonal");
            if g_small != restrict(&g_big) {
                ray_coincidence = false;
                break;
            }
        }
    }
    // Subfan equality as face sets: a big-complex face lies in the subspace
    // iff all its diagonals are small-accordion diagonals.
    let small_faces = all_faces(small);
    let sub_faces: Vec<Vec<Diag>> = all_faces(big)
        .into_iter()
        .filter(|f| {
            f.iter()
                .all(|d| crate::polygon::is_accordion_diagonal(small, *d))
        })
        .collect();
    let subfan_equals_section = small_faces == sub_faces;
    Ok(SectionReport {
        ray_coincidence,
        subfan_equals_section,
    })
}

/// The face complex of the coordinate section of the big d-fan equals the
/// link of the rotated removed diagonals in the big complex.
pub fn dsection_link_check(small: &Dissection, big: &Dissection) -> Result<bool> {
    check_nested(small, big)?;
    if even_interior_cell(big) {
        return Err(Error::DfanUnavailable);
    }
    let circle = big.circle();
    let removed: Vec<Diag> = big
        .diagonals()
        .iter()
        .filter(|d| !small.contains(**d))
        .map(|d| Diag::raw(circle.step(d.a(), -1), circle.step(d.b(), -1)))
        .collect();
    let outside: Vec<usize> = big
        .diagonals()
        .iter()
        .enumerate()
        .filter(|(_, d)| !small.contains(**d))
        .map(|(i, _)| i)
        .collect();
    // Faces of the section: all d-rays inside the small coordinate subspace.
    let section: Vec<Vec<Diag>> = all_faces(big)
        .into_iter()
        .filter(|f| {
            f.iter()
                .all(|q| outside.iter().all(|&i| d_vector(big, *q).0[i] == 0))
        })
        .collect();
    // Link of the removed rotated diagonals.
    let link: Vec<Vec<Diag>> = all_faces(big)
        .into_iter()
        .filter(|f| {
            f.iter().all(|q| !removed.contains(q))
                && f.iter()
                    .all(|q| removed.iter().all(|r| !circle.crosses(*q, *r)))
        })
        .collect();
    Ok(section == link)
}

/// Fan JSON: basis, labeled rays, maximal cones as ray index lists, and the
/// certificate summary.
pub fn fan_json(reference: &Dissection, fan: &Fan) -> serde_json::Value {
    let labels: Vec<Diag> = fan.rays.keys().copied().collect();
    let ray_index: BTreeMap<Diag, usize> =
        labels.iter().enumerate().map(|(i, d)| (*d, i)).collect();
    serde_json::json!({
        "basis": reference.diagonals().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "rays": labels.iter().map(|d| serde_json::json!({
            "diagonal": d.to_string(),
            "coords": fan.rays[d].0,
        })).collect::<Vec<_>>(),
        "cones": fan.graph.nodes.iter().map(|face| {
            face.iter().map(|d| ray_index[d]).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "certificate": {
            "ok": fan.certificate.ok,
            "base_face": fan.certificate.base_face,
            "base_is_basis": fan.certificate.base_is_basis,
            "base_overlaps": fan.certificate.base_overlaps,
            "degenerate_faces": fan.certificate.degenerate_faces.iter().map(|d| d.face).collect::<Vec<_>>(),
            "sign_failures": fan.certificate.sign_failures.iter().map(|s| s.arc).collect::<Vec<_>>(),
            "flip_dependences": fan.certificate.dependences.len(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::Parity;

    fn diag(a: usize, b: usize) -> Diag {
        Diag::new(a, b).unwrap()
    }

    fn running_example() -> Dissection {
        Dissection::from_iter(7, Parity::Hollow, [diag(3, 7), diag(3, 13), diag(9, 13)]).unwrap()
    }

    fn octagon_square() -> Dissection {
        Dissection::from_iter(
            8,
            Parity::Hollow,
            [diag(1, 5), diag(5, 9), diag(9, 13), diag(1, 13)],
        )
        .unwrap()
    }

    #[test]
    fn gfan_running_example_certifies() {
        let d = running_example();
        let g = build_gfan(&d);
        assert!(g.fan.certificate.ok);
        assert!(g.smooth);
        assert_eq!(g.fan.rays.len(), 8);
        assert_eq!(g.fan.graph.nodes.len(), 12);
        // base cone is the positive orthant
        let base = &g.fan.graph.nodes[g.fan.certificate.base_face];
        let mut rays: Vec<IntVector> = base.iter().map(|d| g.fan.rays[d].clone()).collect();
        rays.sort();
        assert_eq!(
            rays,
            vec![
                IntVector(vec![0, 0, 1]),
                IntVector(vec![0, 1, 0]),
                IntVector(vec![1, 0, 0])
            ]
        );
    }

    #[test]
    fn gfan_dependences_match_flip_witnesses() {
        // g(removed) + g(added) = g(mu) + g(nu) across every flip
        let d = running_example();
        let g = build_gfan(&d);
        for arc in &g.fan.graph.arcs {
            let lhs = &g.fan.rays[&arc.removed] + &g.fan.rays[&arc.added];
            let mu = g_vector(&d, arc.mu).unwrap();
            let nu = g_vector(&d, arc.nu).unwrap();
            let rhs = &mu + &nu;
            assert_eq!(lhs, rhs, "arc {arc:?}");
        }
    }

    #[test]
    fn dfan_running_example_certifies() {
        let d = running_example();
        assert!(!even_interior_cell(&d));
        let f = build_dfan(&d);
        assert!(f.certificate.ok);
        // base cone is the negative orthant
        let base = &f.graph.nodes[f.certificate.base_face];
        let mut rays: Vec<IntVector> = base.iter().map(|x| f.rays[x].clone()).collect();
        rays.sort();
        assert_eq!(
            rays,
            vec![
                IntVector(vec![-1, 0, 0]),
                IntVector(vec![0, -1, 0]),
                IntVector(vec![0, 0, -1])
            ]
        );
    }

    #[test]
    fn octagon_square_dfan_fails_with_witness() {
        let d = octagon_square();
        assert!(even_interior_cell(&d));
        let f = build_dfan(&d);
        assert!(!f.certificate.ok);
        // the sink face {2-6, 2-14, 6-10, 10-14} is degenerate with the
        // alternating dependence d(2-6) + d(10-14) = d(6-10) + d(2-14)
        let mut sink: Vec<Diag> = crate::polygon::rotate_max(&d).diagonals().to_vec();
        sink.sort();
        let sink_idx = f.graph.node_index(&sink).unwrap();
        let witness = f
            .certificate
            .degenerate_faces
            .iter()
            .find(|w| w.face == sink_idx)
            .expect("sink face is degenerate");
        // face order: 2-6, 2-14, 6-10, 10-14; dependence 1, -1, -1, 1
        assert_eq!(witness.dependence, vec![rat(1), rat(-1), rat(-1), rat(1)]);
        // g-fan still certifies
        assert!(build_gfan(&d).fan.certificate.ok);
    }

    #[test]
    fn corrupted_ray_fails_certification() {
        let d = running_example();
        let g = build_gfan(&d);
        let mut rays = g.fan.rays.clone();
        let key = diag(2, 10);
        let flipped = -&rays[&key];
        rays.insert(key, flipped);
        let cert = verify_complete_simplicial_fan(&g.fan.graph, &rays, g.fan.certificate.base_face);
        assert!(!cert.ok);
        assert!(
            !cert.sign_failures.is_empty(),
            "negated ray must trip a sign check"
        );
    }

    #[test]
    fn coarsening_running_example() {
        assert!(coarsening_check(&running_example()));
        let single = Dissection::from_iter(4, Parity::Hollow, [diag(3, 7)]).unwrap();
        assert!(coarsening_check(&single));
    }

    #[test]
    fn section_identity() {
        let d = running_example();
        let rep = section_check(&d, &d).unwrap();
        assert!(rep.ray_coincidence);
        assert!(rep.subfan_equals_section);
    }

    #[test]
    fn section_inside_refining_triangulation() {
        let d = running_example();
        // refine the quadrilateral cell {3,7,9,13} with 7-13
        let t = Dissection::from_iter(
            7,
            Parity::Hollow,
            [diag(3, 7), diag(3, 13), diag(9, 13), diag(7, 13)],
        )
        .unwrap();
        let rep = section_check(&d, &t).unwrap();
        assert!(rep.ray_coincidence);
        assert!(rep.subfan_equals_section);
    }

    #[test]
    fn section_rejects_non_nested() {
        let d = running_example();
        let other = Dissection::from_iter(7, Parity::Hollow, [diag(1, 5)]).unwrap();
        assert_eq!(section_check(&d, &other).unwrap_err(), Error::NotNested);
    }

    #[test]
    fn dsection_link_hexagon() {
        let t =
            Dissection::from_iter(6, Parity::Hollow, [diag(1, 5), diag(1, 7), diag(1, 9)]).unwrap();
        // remove one diagonal
        let small = Dissection::from_iter(6, Parity::Hollow, [diag(1, 5), diag(1, 9)]).unwrap();
        assert!(dsection_link_check(&small, &t).unwrap());
        // identity: link of the empty set is the full complex
        assert!(dsection_link_check(&t, &t).unwrap());
        // removing all diagonals: link of rotate_min is the single maximal face
        let empty = Dissection::from_iter(6, Parity::Hollow, []).unwrap();
        assert!(dsection_link_check(&empty, &t).unwrap());
    }

    #[test]
    fn dsection_unavailable_for_even_interior_cell() {
        let d = octagon_square();
        let small = Dissection::from_iter(8, Parity::Hollow, [diag(1, 5)]).unwrap();
        assert_eq!(
            dsection_link_check(&small, &d).unwrap_err(),
            Error::DfanUnavailable
        );
    }
}
