//! Slalom signs and the g-, c- and d-vectors of accordion diagonals, indexed
//! by the internal diagonals of a reference dissection.
//!
//! All vectors are dense integer vectors over the reference's canonical
//! diagonal order. The two sign forms share one path classification: the
//! reference form maps Z to +1, the member form maps S to +1 (the two
//! conventions are opposite because swapping the roles of the two dissections
//! reverses the orientation).

use crate::complex::{is_maximal_face, path_shape, PathShape};
use crate::error::{Error, Result};
use crate::polygon::{accordion_diagonals, crossed_set, is_accordion_diagonal, Diag, Dissection};
use serde_json::json;
use std::collections::BTreeSet;
use std::ops::{Add, Neg, Sub};

/// Dense integer vector over the reference dissection's diagonals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn zeros(dim: usize) -> IntVector {
        IntVector(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize, sign: i64) -> IntVector {
        let mut v = vec![0; dim];
        v[i] = sign;
        IntVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &IntVector) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0)
    }

    pub fn scaled(&self, k: i64) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// All coordinates >= 0 or all <= 0.
    pub fn sign_coherent(&self) -> bool {
        self.0.iter().all(|x| *x >= 0) || self.0.iter().all(|x| *x <= 0)
    }

    pub fn json(&self, basis: &[Diag]) -> serde_json::Value {
        json!({
            "basis": basis.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "coords": self.0,
        })
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|x| -x).collect())
    }
}

/// Slalom shape of `member`'s neighborhood in `crosser`'s crossing order over
/// the barred dissection containing `member`. `None` when they do not cross.
fn member_shape(dissection: &Dissection, member: Diag, crosser: Diag) -> Result<Option<PathShape>> {
    if !dissection.circle().crosses(member, crosser) {
        return Ok(None);
    }
    let set = crossed_set(dissection, crosser)?;
    let i = set
        .crossed
        .iter()
        .position(|d| *d == member)
        .expect("member crosses crosser, so it appears in the crossed set");
    // Internal diagonals are never first or last: the crossed set starts and
    // ends with boundary edges (or, for a boundary crosser, every crossed
    // diagonal shares the apex and the shape is V).
    if i == 0 || i + 1 == set.crossed.len() {
        let apex_shared = set.crossed.len() >= 2;
        debug_assert!(
            !apex_shared || dissection.circle().is_boundary(crosser),
            "internal crossers enter and leave through boundary edges"
        );
        return Ok(Some(PathShape::V));
    }
    let mu = set.crossed[i - 1];
    let nu = set.crossed[i + 1];
    if mu.common_endpoint(&member).is_none() || nu.common_endpoint(&member).is_none() {
        // the crossed set is not an accordion around `member`
        return Err(Error::NotAccordion(crosser));
    }
    Ok(Some(path_shape(dissection.circle(), mu, member, nu)))
}

/// Reference-form slalom sign: +1 for Z, -1 for S, 0 for V or no crossing.
/// `delta` must belong to the reference dissection.
pub fn slalom_sign_hollow(delta: Diag, reference: &Dissection, crosser: Diag) -> Result<i64> {
    if !reference.contains(delta) {
        return Err(Error::NotMember(delta));
    }
    if !is_accordion_diagonal(reference, crosser) {
        return Err(Error::NotAccordion(crosser));
    }
    Ok(match member_shape(reference, delta, crosser)? {
        Some(PathShape::Z) => 1,
        Some(PathShape::S) => -1,
        _ => 0,
    })
}

/// Member-form slalom sign: +1 for S, -1 for Z, 0 for V or no crossing.
/// `delta` must belong to `member_dissection`, which must be a maximal
/// accordion dissection of some reference; the construction fails with
/// NotMaximal when the crossed sets are not accordions.
pub fn slalom_sign_solid(
    crosser: Diag,
    member_dissection: &Dissection,
    delta: Diag,
) -> Result<i64> {
    if !member_dissection.contains(delta) {
        return Err(Error::NotMember(delta));
    }
    match member_shape(member_dissection, delta, crosser) {
        Ok(Some(PathShape::S)) => Ok(1),
        Ok(Some(PathShape::Z)) => Ok(-1),
        Ok(_) => Ok(0),
        Err(_) => Err(Error::NotMaximal),
    }
}

/// g-vector of the accordion diagonal `q` over the reference: reference-form
/// signs of the reference diagonals along q's crossed accordion. Boundary
/// edges give the zero vector.
pub fn g_vector(reference: &Dissection, q: Diag) -> Result<IntVector> {
    let dim = reference.len();
    if reference.circle().is_boundary(q) {
        return Ok(IntVector::zeros(dim));
    }
    if !is_accordion_diagonal(reference, q) {
        return Err(Error::NotAccordion(q));
    }
    let set = crossed_set(reference, q)?;
    let mut coords = vec![0i64; dim];
    for (i, d) in set.crossed.iter().enumerate() {
        let Some(k) = reference.index_of(*d) else {
            continue;
        };
        debug_assert!(i > 0 && i + 1 < set.crossed.len());
        let mu = set.crossed[i - 1];
        let nu = set.crossed[i + 1];
        coords[k] = match path_shape(reference.circle(), mu, *d, nu) {
            PathShape::Z => 1,
            PathShape::S => -1,
            PathShape::V => 0,
        };
    }
    Ok(IntVector(coords))
}

/// c-vector of `delta` in the maximal face carried by `member`: member-form
/// signs of `delta`'s neighborhoods in the crossing orders of the reference
/// diagonals over the member dissection.
pub fn c_vector(reference: &Dissection, member: &Dissection, delta: Diag) -> Result<IntVector> {
    if !member.contains(delta) {
        return Err(Error::NotMember(delta));
    }
    if !is_maximal_face(reference, member.diagonals()) {
        return Err(Error::NotMaximal);
    }
    c_vector_unchecked(reference, member, delta)
}

/// As [`c_vector`] but without revalidating that `member` is a maximal face;
/// used on faces coming out of the flip-graph enumeration.
pub(crate) fn c_vector_unchecked(
    reference: &Dissection,
    member: &Dissection,
    delta: Diag,
) -> Result<IntVector> {
    let mut coords = vec![0i64; reference.len()];
    for (k, d) in reference.diagonals().iter().enumerate() {
        coords[k] = slalom_sign_solid(*d, member, delta)?;
    }
    Ok(IntVector(coords))
}

/// Deduplicated c-vectors over all maximal faces.
pub fn c_vector_set(reference: &Dissection) -> Vec<IntVector> {
    c_vector_set_with(reference, &crate::complex::oriented_flip_graph(reference))
}

/// As [`c_vector_set`] with a precomputed flip graph.
pub fn c_vector_set_with(
    reference: &Dissection,
    graph: &crate::complex::OrientedFlipGraph,
) -> Vec<IntVector> {
    let mut out: BTreeSet<IntVector> = BTreeSet::new();
    for face in &graph.nodes {
        let member = crate::complex::face_dissection(reference, face);
        for &delta in face {
            out.insert(
                c_vector_unchecked(reference, &member, delta).expect("nodes are maximal faces"),
            );
        }
    }
    out.into_iter().collect()
}

/// Compatibility degree of a reference diagonal i-j with a solid diagonal:
/// -1 when the solid diagonal is the rotated copy (i-1)-(j-1), +1 when it
/// crosses the rotated copy, 0 otherwise.
pub fn comp(reference: &Dissection, delta_ref: Diag, q: Diag) -> i64 {
    let circle = reference.circle();
    let rotated = Diag::raw(
        circle.step(delta_ref.a(), -1),
        circle.step(delta_ref.b(), -1),
    );
    if q == rotated {
        -1
    } else if circle.crosses(q, rotated) {
        1
    } else {
        0
    }
}

/// d-vector of any solid diagonal: compatibility degrees against the rotated
/// reference diagonals. Defined for all solid diagonals; fans restrict to
/// accordion diagonals.
pub fn d_vector(reference: &Dissection, q: Diag) -> IntVector {
    IntVector(
        reference
            .diagonals()
            .iter()
            .map(|d| comp(reference, *d, q))
            .collect(),
    )
}

/// Height of an accordion diagonal: the number of internal accordion
/// diagonals crossing it.
pub fn height(reference: &Dissection, q: Diag) -> Result<usize> {
    if !is_accordion_diagonal(reference, q) {
        return Err(Error::NotAccordion(q));
    }
    let circle = reference.circle();
    Ok(accordion_diagonals(reference)
        .into_iter()
        .filter(|other| circle.crosses(*other, q))
        .count())
}

/// The g-vectors of a face as matrix columns (rows indexed by the reference).
pub fn g_matrix(reference: &Dissection, face: &[Diag]) -> Result<Vec<IntVector>> {
    face.iter().map(|q| g_vector(reference, *q)).collect()
}

/// The c-vectors of a face as matrix columns.
pub fn c_matrix(reference: &Dissection, face: &[Diag]) -> Result<Vec<IntVector>> {
    let member = crate::complex::face_dissection(reference, face);
    face.iter()
        .map(|q| c_vector_unchecked(reference, &member, *q))
        .collect()
}
