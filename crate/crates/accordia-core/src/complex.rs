//! The accordion complex: faces, flips with their witnessing cell edges, the
//! oriented flip graph, the lattice check, join/link reductions, reciprocity
//! and cell-sequences.

use crate::error::{Error, Result};
use crate::polygon::{
    accordion_diagonals, angles, closing_diagonal_unchecked, is_accordion_diagonal, Angle, Diag,
    Dissection, Label, Parity,
};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A face of the accordion complex: pairwise non-crossing internal accordion
/// diagonals, kept sorted.
pub type Face = Vec<Diag>;

pub fn is_face(reference: &Dissection, face: &[Diag]) -> bool {
    let circle = reference.circle();
    face.iter().all(|d| {
        !circle.is_boundary(*d)
            && d.parity() == reference.parity().other()
            && is_accordion_diagonal(reference, *d)
    }) && face
        .iter()
        .enumerate()
        .all(|(i, d1)| face[i + 1..].iter().all(|d2| !circle.crosses(*d1, *d2)))
}

/// A face no accordion diagonal can be added to.
pub fn is_maximal_face(reference: &Dissection, face: &[Diag]) -> bool {
    if !is_face(reference, face) {
        return false;
    }
    let circle = reference.circle();
    accordion_diagonals(reference)
        .into_iter()
        .all(|q| face.contains(&q) || face.iter().any(|d| circle.crosses(*d, q)))
}

/// Build the opposite-parity dissection carried by a maximal face.
pub fn face_dissection(reference: &Dissection, face: &[Diag]) -> Dissection {
    Dissection::from_iter(
        reference.n(),
        reference.parity().other(),
        face.iter().copied(),
    )
    .expect("faces are non-crossing")
}

/// How a flip moves in the oriented graph: increasing goes from the face
/// holding the S to the face holding the Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// A flip of `removed` out of `face`, with the unique replacement and the two
/// witnessing cell edges separating the removed diagonal from the closed-angle
/// apices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipRecord {
    pub face: Face,
    pub removed: Diag,
    pub added: Diag,
    pub new_face: Face,
    pub mu: Diag,
    pub nu: Diag,
}

impl FlipRecord {
    pub fn reversed(&self) -> FlipRecord {
        FlipRecord {
            face: self.new_face.clone(),
            removed: self.added,
            added: self.removed,
            new_face: self.face.clone(),
            mu: self.mu,
            nu: self.nu,
        }
    }
}

/// The two angles of the barred reference closed by `delta` in the maximal
/// face `solid`, one apex on each side.
fn closed_angles(reference: &Dissection, solid: &Dissection, delta: Diag) -> Vec<Angle> {
    angles(reference)
        .into_iter()
        .filter(|a| closing_diagonal_unchecked(solid, a) == delta)
        .collect()
}

/// Flip `removed` in the maximal face `face`.
pub fn flip(reference: &Dissection, face: &[Diag], removed: Diag) -> Result<FlipRecord> {
    if !face.contains(&removed) {
        return Err(Error::NotMember(removed));
    }
    if !is_maximal_face(reference, face) {
        return Err(Error::NotMaximal);
    }
    flip_unchecked(reference, face, removed)
}

/// Flip without revalidating maximality; callers guarantee `face` is a
/// maximal face containing `removed` (the BFS maintains this inductively).
pub(crate) fn flip_unchecked(
    reference: &Dissection,
    face: &[Diag],
    removed: Diag,
) -> Result<FlipRecord> {
    let circle = reference.circle();
    let solid = face_dissection(reference, face);

    let apices: Vec<Label> = closed_angles(reference, &solid, removed)
        .iter()
        .map(|a| a.apex)
        .collect();
    debug_assert_eq!(apices.len(), 2, "an internal diagonal closes two angles");
    // One apex on each side of the removed diagonal.
    let (u, v) = (apices[0], apices[1]);
    let mu = cell_edge_toward(&solid, removed, u);
    let nu = cell_edge_toward(&solid, removed, v);

    // The quadrilateral on the endpoints of mu and nu has diagonals
    // `removed` and the unique replacement.
    let mut corners: BTreeSet<Label> = BTreeSet::new();
    for d in [mu, nu] {
        corners.insert(d.a());
        corners.insert(d.b());
    }
    debug_assert_eq!(corners.len(), 4);
    let cs: Vec<Label> = corners.into_iter().collect();
    // cs is sorted, hence cyclic; the two quadrilateral diagonals pair
    // opposite corners.
    let d1 = Diag::raw(cs[0], cs[2]);
    let d2 = Diag::raw(cs[1], cs[3]);
    let added = if d1 == removed {
        d2
    } else {
        debug_assert_eq!(d2, removed);
        d1
    };
    debug_assert!(circle.crosses(removed, added));

    let mut new_face: Face = face.iter().copied().filter(|d| *d != removed).collect();
    new_face.push(added);
    new_face.sort();

    Ok(FlipRecord {
        face: face.to_vec(),
        removed,
        added,
        new_face,
        mu,
        nu,
    })
}

/// The edge of the cell of `solid` adjacent to `delta` on `apex`'s side that
/// subtends the apex.
fn cell_edge_toward(solid: &Dissection, delta: Diag, apex: Label) -> Diag {
    let circle = solid.circle();
    let cells = solid.cells_with_edge(delta);
    debug_assert_eq!(cells.len(), 2);
    for cell in cells {
        // The cell lies on apex's side of delta iff its other vertices do.
        let side_ok = cell
            .vertices
            .iter()
            .filter(|w| !delta.has_endpoint(**w))
            .all(|w| {
                circle.in_open_arc(delta.a(), delta.b(), apex)
                    == circle.in_open_arc(delta.a(), delta.b(), *w)
            });
        if !side_ok {
            continue;
        }
        let k = cell.vertices.len();
        for i in 0..k {
            let e = cell.edges[i];
            if e == delta {
                continue;
            }
            let (from, to) = (cell.vertices[i], cell.vertices[(i + 1) % k]);
            if circle.in_open_arc(from, to, apex) {
                return e;
            }
        }
    }
    unreachable!("apex {apex} subtended by no cell edge of {delta}");
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathShape {
    Z,
    S,
    V,
}

/// Shape of the path mu-delta-nu read off the circle: V when both arms attach
/// at the same endpoint of delta; otherwise Z iff mu's free endpoint lies in
/// the clockwise arc from nu's attach point to mu's attach point.
pub fn path_shape(circle: crate::polygon::Circle, mu: Diag, delta: Diag, nu: Diag) -> PathShape {
    let b = mu
        .common_endpoint(&delta)
        .expect("mu shares one endpoint with delta");
    let c = nu
        .common_endpoint(&delta)
        .expect("nu shares one endpoint with delta");
    if b == c {
        return PathShape::V;
    }
    let a = mu.other_endpoint(b);
    if circle.in_open_arc(c, b, a) {
        PathShape::Z
    } else {
        PathShape::S
    }
}

/// Orientation of a flip: increasing iff mu-removed-nu forms an S in the
/// source face.
pub fn flip_direction(reference: &Dissection, record: &FlipRecord) -> Direction {
    match path_shape(reference.circle(), record.mu, record.removed, record.nu) {
        PathShape::S => Direction::Increasing,
        PathShape::Z => Direction::Decreasing,
        PathShape::V => unreachable!("flip witnesses attach at opposite endpoints"),
    }
}

/// An arc of the oriented flip graph, oriented along the increasing flip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipArc {
    pub from: usize,
    pub to: usize,
    pub removed: Diag,
    pub added: Diag,
    pub mu: Diag,
    pub nu: Diag,
}

/// Maximal faces as nodes, increasing flips as arcs. Node order is canonical
/// (sorted face lists), independent of discovery order.
#[derive(Debug, Clone)]
pub struct OrientedFlipGraph {
    pub nodes: Vec<Face>,
    pub arcs: Vec<FlipArc>,
}

impl OrientedFlipGraph {
    pub fn node_index(&self, face: &[Diag]) -> Option<usize> {
        self.nodes.binary_search_by(|f| f.as_slice().cmp(face)).ok()
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.arcs.iter().filter(|a| a.from == node).count()
    }

    pub fn in_degree(&self, node: usize) -> usize {
        self.arcs.iter().filter(|a| a.to == node).count()
    }
}

/// BFS closure of flips seeded at rotate_min.
pub fn oriented_flip_graph(reference: &Dissection) -> OrientedFlipGraph {
    let mut source: Face = crate::polygon::rotate_min(reference).diagonals().to_vec();
    source.sort();
    assert!(
        is_maximal_face(reference, &source),
        "the rotated reference seeds the flip graph"
    );

    let mut seen: BTreeSet<Face> = BTreeSet::new();
    let mut queue: VecDeque<Face> = VecDeque::new();
    let mut records: Vec<FlipRecord> = Vec::new();
    seen.insert(source.clone());
    queue.push_back(source);
    while let Some(face) = queue.pop_front() {
        for &delta in &face {
            let rec =
                flip_unchecked(reference, &face, delta).expect("flips of maximal faces succeed");
            if seen.insert(rec.new_face.clone()) {
                queue.push_back(rec.new_face.clone());
            }
            records.push(rec);
        }
    }

    let nodes: Vec<Face> = seen.into_iter().collect();
    let index: BTreeMap<&Face, usize> = nodes.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut arcs: Vec<FlipArc> = Vec::new();
    let mut arc_keys: BTreeSet<(usize, usize)> = BTreeSet::new();
    for rec in &records {
        let i = index[&rec.face];
        let j = index[&rec.new_face];
        let key = (i.min(j), i.max(j));
        if !arc_keys.insert(key) {
            continue;
        }
        let (from, to, removed, added) = match flip_direction(reference, rec) {
            Direction::Increasing => (i, j, rec.removed, rec.added),
            Direction::Decreasing => (j, i, rec.added, rec.removed),
        };
        arcs.push(FlipArc {
            from,
            to,
            removed,
            added,
            mu: rec.mu,
            nu: rec.nu,
        });
    }
    arcs.sort_by_key(|a| (a.from, a.to));
    OrientedFlipGraph { nodes, arcs }
}

/// Result of the meet/join existence check on the flip-graph order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub is_lattice: bool,
    pub witness: Option<(usize, usize)>,
}

/// Transitive closure plus pairwise meet/join existence; the partial order is
/// reachability along increasing flips.
pub fn lattice_check(graph: &OrientedFlipGraph) -> Result<LatticeReport> {
    let v = graph.nodes.len();
    let mut reach = vec![vec![false; v]; v];
    for i in 0..v {
        reach[i][i] = true;
    }
    for arc in &graph.arcs {
        reach[arc.from][arc.to] = true;
    }
    for k in 0..v {
        for i in 0..v {
            if reach[i][k] {
                for j in 0..v {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..v {
        for j in 0..v {
            if i != j && reach[i][j] && reach[j][i] {
                return Err(Error::CyclicGraph);
            }
        }
    }
    let le = |a: usize, b: usize| reach[a][b];
    for a in 0..v {
        for b in a..v {
            if !has_bound(v, a, b, |x, y| le(x, y)) || !has_bound(v, a, b, |x, y| le(y, x)) {
                return Ok(LatticeReport {
                    is_lattice: false,
                    witness: Some((a, b)),
                });
            }
        }
    }
    Ok(LatticeReport {
        is_lattice: true,
        witness: None,
    })
}

/// Does {a, b} have a least upper bound under `le`? (Greatest lower bound when
/// `le` is flipped.) In a finite poset this is equivalent to the set of common
/// upper bounds having a unique minimal element.
fn has_bound(v: usize, a: usize, b: usize, le: impl Fn(usize, usize) -> bool) -> bool {
    let ubs: Vec<usize> = (0..v).filter(|&u| le(a, u) && le(b, u)).collect();
    ubs.iter().any(|&m| ubs.iter().all(|&u| le(m, u)))
}

/// Join factors of a dissection: pick a cell with p >= 2 boundary edges; its
/// boundary edges split the cyclic edge list into p (possibly empty) runs of
/// internal edges, and factor t collects the run's edges together with every
/// diagonal beyond them. Two distinct runs are separated by boundary edges,
/// so their diagonals share no endpoint and the accordion complex is the join
/// of the factor complexes.
pub fn decompose(reference: &Dissection) -> Result<Vec<Dissection>> {
    let circle = reference.circle();
    let cell = reference
        .cells()
        .iter()
        .find(|c| c.edges.iter().filter(|e| circle.is_boundary(**e)).count() >= 2)
        // unreachable for valid dissections: n boundary edges spread over
        // at most n-2 cells
        .ok_or(Error::NoDecomposition)?;
    let k = cell.edges.len();
    let bpos: Vec<usize> = (0..k)
        .filter(|&i| circle.is_boundary(cell.edges[i]))
        .collect();
    let mut factors = Vec::new();
    for (t, &start) in bpos.iter().enumerate() {
        let end = bpos[(t + 1) % bpos.len()];
        let mut run: Vec<Diag> = Vec::new();
        let mut i = (start + 1) % k;
        while i != end {
            run.push(cell.edges[i]);
            i = (i + 1) % k;
        }
        let mut diags: BTreeSet<Diag> = BTreeSet::new();
        for edge in run {
            diags.insert(edge);
            // everything on the far side of `edge` from the cell
            let far_witness = cell
                .vertices
                .iter()
                .find(|w| !edge.has_endpoint(**w))
                .copied()
                .expect("cells have at least three vertices");
            let cell_side = |x: Label| {
                circle.in_open_arc(edge.a(), edge.b(), x)
                    == circle.in_open_arc(edge.a(), edge.b(), far_witness)
            };
            for d in reference.diagonals() {
                if *d == edge {
                    continue;
                }
                let a_far = edge.has_endpoint(d.a()) || !cell_side(d.a());
                let b_far = edge.has_endpoint(d.b()) || !cell_side(d.b());
                if a_far && b_far {
                    diags.insert(*d);
                }
            }
        }
        factors.push(Dissection::build(reference.n(), reference.parity(), &diags).unwrap());
    }
    Ok(factors)
}

/// All faces (including the empty one) of the accordion complex, by
/// backtracking over the canonical ground-set order. Exponential, desk scale.
pub fn all_faces(reference: &Dissection) -> Vec<Face> {
    let ground = accordion_diagonals(reference);
    let circle = reference.circle();
    let mut out: Vec<Face> = Vec::new();
    let mut current: Face = Vec::new();
    fn recurse(
        circle: crate::polygon::Circle,
        ground: &[Diag],
        start: usize,
        current: &mut Face,
        out: &mut Vec<Face>,
    ) {
        out.push(current.clone());
        for i in start..ground.len() {
            let q = ground[i];
            if current.iter().all(|d| !circle.crosses(*d, q)) {
                current.push(q);
                recurse(circle, ground, i + 1, current, out);
                current.pop();
            }
        }
    }
    recurse(circle, &ground, 0, &mut current, &mut out);
    out.sort();
    out
}

/// Maximal faces by exhaustive search over the non-crossing compatibility
/// graph. Independent of the flip BFS; kept as the connectivity oracle.
pub fn maximal_faces_by_cliques(reference: &Dissection) -> Vec<Face> {
    let circle = reference.circle();
    all_faces(reference)
        .into_iter()
        .filter(|f| {
            accordion_diagonals(reference)
                .into_iter()
                .all(|q| f.contains(&q) || f.iter().any(|d| circle.crosses(*d, q)))
        })
        .collect()
}

/// Contract every hollow boundary edge in `contract` (merging the clockwise
/// endpoint into the counterclockwise one), relabel the surviving points
/// 1..2n' keeping parity, and map the dissection through. Returns the smaller
/// dissection and the label map for surviving points.
pub fn contract_boundary_edges(
    reference: &Dissection,
    contract: &BTreeSet<Diag>,
) -> (Dissection, BTreeMap<Label, Label>) {
    let circle = reference.circle();
    for e in contract {
        debug_assert!(circle.is_boundary(*e) && e.parity() == reference.parity());
    }
    // Union-find over same-parity vertices along contracted edges.
    let mut parent: BTreeMap<Label, Label> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<Label, Label>, v: Label) -> Label {
        let p = *parent.entry(v).or_insert(v);
        if p == v {
            v
        } else {
            let r = find(parent, p);
            parent.insert(v, r);
            r
        }
    }
    for e in contract {
        let ra = find(&mut parent, e.a());
        let rb = find(&mut parent, e.b());
        if ra != rb {
            let (keep, drop) = (ra.min(rb), ra.max(rb));
            parent.insert(drop, keep);
        }
    }
    // Surviving points: representative same-parity vertices, plus the
    // opposite-parity vertices not swallowed by a contraction.
    let mut survivors: Vec<Label> = Vec::new();
    for v in 1..=circle.points() {
        if Parity::of(v) == reference.parity() {
            if find(&mut parent, v) == v {
                survivors.push(v);
            }
        } else {
            let e = Diag::raw(circle.step(v, -1), circle.step(v, 1));
            if !contract.contains(&e) {
                survivors.push(v);
            }
        }
    }
    // Relabel so the smallest surviving reference-parity vertex becomes the
    // right parity anchor.
    let anchor_parity = reference.parity();
    let start = survivors
        .iter()
        .position(|v| Parity::of(*v) == anchor_parity)
        .expect("a reference-parity vertex survives");
    let mut order = survivors.clone();
    order.rotate_left(start);
    let first_label = match anchor_parity {
        Parity::Hollow => 1,
        Parity::Solid => 2,
    };
    let map: BTreeMap<Label, Label> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, (first_label + i - 1) % order.len() + 1))
        .collect();
    let new_n = order.len() / 2;
    let new_circle =
        crate::polygon::Circle::new(new_n).expect("contracted polygon stays a polygon");
    let mut new_diags: BTreeSet<Diag> = BTreeSet::new();
    for d in reference.diagonals() {
        let ra = find(&mut parent, d.a());
        let rb = find(&mut parent, d.b());
        if ra == rb {
            continue;
        }
        let image = Diag::raw(map[&ra], map[&rb]);
        if !new_circle.is_boundary(image) {
            new_diags.insert(image);
        }
    }
    let contracted = Dissection::build(new_n, reference.parity(), &new_diags)
        .expect("contraction preserves non-crossing");
    (contracted, map)
}

/// The link factors of face `face`: per cell of the face, the reference with
/// all boundary edges not crossing that cell contracted away. Also returns the
/// label map of each contraction so callers can transport the cell's own
/// diagonals into the factor.
pub fn link_factors(
    reference: &Dissection,
    face: &[Diag],
) -> Result<Vec<(Dissection, BTreeMap<Label, Label>)>> {
    if !is_face(reference, face) {
        let bad = face
            .iter()
            .find(|d| !is_accordion_diagonal(reference, **d))
            .copied()
            .unwrap_or_else(|| face[0]);
        return Err(Error::NotAccordion(bad));
    }
    let circle = reference.circle();
    let solid = Dissection::from_iter(
        reference.n(),
        reference.parity().other(),
        face.iter().copied(),
    )
    .expect("faces are non-crossing");
    let mut factors = Vec::new();
    for cell in solid.cells() {
        let contract: BTreeSet<Diag> = circle
            .boundary_edges(reference.parity())
            .into_iter()
            .filter(|e| !cell.edges.iter().any(|ce| circle.crosses(*e, *ce)))
            .collect();
        factors.push(contract_boundary_edges(reference, &contract));
    }
    Ok(factors)
}

/// The contracted dissections of the face's cells; see [`link_factors`].
pub fn link(reference: &Dissection, face: &[Diag]) -> Result<Vec<Dissection>> {
    Ok(link_factors(reference, face)?
        .into_iter()
        .map(|(d, _)| d)
        .collect())
}

/// Both directions of the reciprocity statement, evaluated independently:
/// `solid` maximal over `hollow` iff `hollow` maximal over `solid`.
pub fn reciprocity_check(hollow: &Dissection, solid: &Dissection) -> bool {
    let fwd = is_maximal_face(hollow, solid.diagonals());
    let bwd = is_maximal_face(solid, hollow.diagonals());
    fwd == bwd
}

/// Cell-sequence of a dissection (re-exported here because flips preserve it).
pub fn cell_sequence(d: &Dissection) -> Vec<usize> {
    d.cell_sequence()
}
