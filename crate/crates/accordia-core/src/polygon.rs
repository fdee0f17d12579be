//! Labeled circle points, diagonals, dissections and their cells, accordions,
//! zigzags, angles and the closing map.
//!
//! Everything lives on 2n points labeled clockwise 1..=2n. Odd labels are
//! hollow, even labels are solid. The hollow polygon is spanned by the odd
//! points, the solid polygon by the even points; a diagonal always joins two
//! points of the same parity. All operations are pure and all returned
//! collections are canonically ordered.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type Label = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Hollow,
    Solid,
}

impl Parity {
    pub fn of(label: Label) -> Parity {
        if label % 2 == 1 {
            Parity::Hollow
        } else {
            Parity::Solid
        }
    }

    pub fn other(self) -> Parity {
        match self {
            Parity::Hollow => Parity::Solid,
            Parity::Solid => Parity::Hollow,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Hollow => write!(f, "hollow"),
            Parity::Solid => write!(f, "solid"),
        }
    }
}

/// A chord of the circle joining two same-parity labels, stored with the
/// smaller label first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diag {
    a: Label,
    b: Label,
}

impl Diag {
    pub fn new(x: Label, y: Label) -> Result<Diag> {
        if x == y {
            return Err(Error::BadLabel(format!("degenerate diagonal {x}-{y}")));
        }
        if Parity::of(x) != Parity::of(y) {
            return Err(Error::BadLabel(format!("mixed-parity diagonal {x}-{y}")));
        }
        Ok(Diag {
            a: x.min(y),
            b: x.max(y),
        })
    }

    /// Internal constructor for labels already known to be valid.
    pub(crate) fn raw(x: Label, y: Label) -> Diag {
        debug_assert!(x != y && Parity::of(x) == Parity::of(y));
        Diag {
            a: x.min(y),
            b: x.max(y),
        }
    }

    pub fn a(&self) -> Label {
        self.a
    }

    pub fn b(&self) -> Label {
        self.b
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.a)
    }

    pub fn has_endpoint(&self, v: Label) -> bool {
        self.a == v || self.b == v
    }

    pub fn shares_endpoint(&self, other: &Diag) -> bool {
        self.has_endpoint(other.a) || self.has_endpoint(other.b)
    }

    /// The endpoint shared with `other`, if there is exactly one.
    pub fn common_endpoint(&self, other: &Diag) -> Option<Label> {
        match (other.has_endpoint(self.a), other.has_endpoint(self.b)) {
            (true, false) => Some(self.a),
            (false, true) => Some(self.b),
            _ => None,
        }
    }

    pub fn other_endpoint(&self, v: Label) -> Label {
        debug_assert!(self.has_endpoint(v));
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Display for Diag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl fmt::Debug for Diag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// The 2n-point circle: modular label arithmetic, arc membership and the
/// crossing predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Circle {
    pub n: usize,
}

impl Circle {
    pub fn new(n: usize) -> Result<Circle> {
        if n < 3 {
            return Err(Error::BadLabel(format!(
                "polygon needs at least 3 same-parity vertices, got {n}"
            )));
        }
        Ok(Circle { n })
    }

    pub fn points(&self) -> usize {
        2 * self.n
    }

    /// Label shifted by `k`, wrapping modulo 2n into 1..=2n.
    pub fn step(&self, label: Label, k: isize) -> Label {
        let m = self.points() as isize;
        let v = ((label as isize - 1 + k) % m + m) % m;
        (v + 1) as usize
    }

    /// Clockwise distance from `a` to `b` in {0, .., 2n-1}.
    pub fn dist_cw(&self, a: Label, b: Label) -> usize {
        let m = self.points();
        (b + m - a) % m
    }

    /// Is `x` strictly inside the clockwise arc from `from` to `to`?
    pub fn in_open_arc(&self, from: Label, to: Label, x: Label) -> bool {
        let d = self.dist_cw(from, to);
        let dx = self.dist_cw(from, x);
        dx > 0 && dx < d
    }

    pub fn check_label(&self, v: Label) -> Result<()> {
        if v == 0 || v > self.points() {
            return Err(Error::BadLabel(format!(
                "label {v} out of range 1..={}",
                self.points()
            )));
        }
        Ok(())
    }

    /// Boundary edge: consecutive same-parity labels (two apart on the circle).
    pub fn is_boundary(&self, d: Diag) -> bool {
        let dist = self.dist_cw(d.a, d.b);
        dist == 2 || dist == self.points() - 2
    }

    /// Strict interleaving of endpoints on the circle; diagonals sharing an
    /// endpoint never cross.
    pub fn crosses(&self, d1: Diag, d2: Diag) -> bool {
        if d1.shares_endpoint(&d2) {
            return false;
        }
        self.in_open_arc(d1.a, d1.b, d2.a) != self.in_open_arc(d1.a, d1.b, d2.b)
    }

    /// Number of labels strictly on `p`'s side of chord `d` (p not an endpoint).
    pub fn side_size(&self, d: Diag, p: Label) -> usize {
        debug_assert!(!d.has_endpoint(p));
        if self.in_open_arc(d.a, d.b, p) {
            self.dist_cw(d.a, d.b) - 1
        } else {
            self.dist_cw(d.b, d.a) - 1
        }
    }

    pub fn labels(&self, parity: Parity) -> Vec<Label> {
        let start = match parity {
            Parity::Hollow => 1,
            Parity::Solid => 2,
        };
        (0..self.n).map(|k| start + 2 * k).collect()
    }

    pub fn boundary_edges(&self, parity: Parity) -> Vec<Diag> {
        self.labels(parity)
            .into_iter()
            .map(|v| Diag::raw(v, self.step(v, 2)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn internal_diagonals(&self, parity: Parity) -> Vec<Diag> {
        let labels = self.labels(parity);
        let mut out = Vec::new();
        for (i, &u) in labels.iter().enumerate() {
            for &v in &labels[i + 1..] {
                let d = Diag::raw(u, v);
                if !self.is_boundary(d) {
                    out.push(d);
                }
            }
        }
        out.sort();
        out
    }
}

/// A cell of a dissection: vertices in clockwise order (starting at the
/// smallest label), edges[i] joining vertices[i] and vertices[i+1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub vertices: Vec<Label>,
    pub edges: Vec<Diag>,
}

impl Cell {
    fn from_vertices(vertices: Vec<Label>) -> Cell {
        let k = vertices.len();
        let edges = (0..k)
            .map(|i| Diag::raw(vertices[i], vertices[(i + 1) % k]))
            .collect();
        Cell { vertices, edges }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: Label) -> bool {
        self.vertices.contains(&v)
    }
}

/// A set of pairwise non-crossing internal diagonals of one parity, with its
/// derived cell structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dissection {
    circle: Circle,
    parity: Parity,
    diagonals: Vec<Diag>,
    cells: Vec<Cell>,
}

impl Dissection {
    pub fn build(n: usize, parity: Parity, diagonals: &BTreeSet<Diag>) -> Result<Dissection> {
        let circle = Circle::new(n)?;
        for d in diagonals {
            circle.check_label(d.a())?;
            circle.check_label(d.b())?;
            if d.parity() != parity {
                return Err(Error::BadLabel(format!(
                    "diagonal {d} has the wrong parity for a {parity} dissection"
                )));
            }
            if circle.is_boundary(*d) {
                return Err(Error::BoundaryInput(*d));
            }
        }
        let diagonals: Vec<Diag> = diagonals.iter().copied().collect();
        for (i, d1) in diagonals.iter().enumerate() {
            for d2 in &diagonals[i + 1..] {
                if circle.crosses(*d1, *d2) {
                    return Err(Error::CrossingPair(*d1, *d2));
                }
            }
        }
        let cells = derive_cells(&circle, parity, &diagonals);
        debug_assert_eq!(cells.len(), diagonals.len() + 1);
        Ok(Dissection {
            circle,
            parity,
            diagonals,
            cells,
        })
    }

    pub fn from_iter<I: IntoIterator<Item = Diag>>(
        n: usize,
        parity: Parity,
        diagonals: I,
    ) -> Result<Dissection> {
        Dissection::build(n, parity, &diagonals.into_iter().collect())
    }

    pub fn circle(&self) -> Circle {
        self.circle
    }

    pub fn n(&self) -> usize {
        self.circle.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Internal diagonals in canonical order.
    pub fn diagonals(&self) -> &[Diag] {
        &self.diagonals
    }

    pub fn len(&self) -> usize {
        self.diagonals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonals.is_empty()
    }

    pub fn contains(&self, d: Diag) -> bool {
        self.diagonals.binary_search(&d).is_ok()
    }

    /// Index of a diagonal in the canonical order, used as vector coordinate.
    pub fn index_of(&self, d: Diag) -> Option<usize> {
        self.diagonals.binary_search(&d).ok()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// The dissection together with all boundary edges of its polygon.
    pub fn barred(&self) -> Vec<Diag> {
        let mut all: BTreeSet<Diag> = self.diagonals.iter().copied().collect();
        all.extend(self.circle.boundary_edges(self.parity));
        all.into_iter().collect()
    }

    /// Cells having `d` among their edges (two for an internal diagonal).
    pub fn cells_with_edge(&self, d: Diag) -> Vec<&Cell> {
        self.cells.iter().filter(|c| c.edges.contains(&d)).collect()
    }

    /// Number of (i+2)-gonal cells at entry i (1-based), trailing zeros trimmed.
    pub fn cell_sequence(&self) -> Vec<usize> {
        let mut seq = Vec::new();
        for cell in &self.cells {
            let i = cell.len() - 2;
            if seq.len() < i {
                seq.resize(i, 0);
            }
            seq[i - 1] += 1;
        }
        while seq.last() == Some(&0) {
            seq.pop();
        }
        seq
    }

    /// Shift every label by `k`; odd shifts swap parity.
    pub fn rotate(&self, k: isize) -> Dissection {
        let circle = self.circle;
        let diagonals: BTreeSet<Diag> = self
            .diagonals
            .iter()
            .map(|d| Diag::raw(circle.step(d.a(), k), circle.step(d.b(), k)))
            .collect();
        let parity = if k.rem_euclid(2) == 0 {
            self.parity
        } else {
            self.parity.other()
        };
        Dissection::build(circle.n, parity, &diagonals).expect("rotation preserves non-crossing")
    }
}

/// Source of the oriented flip graph: labels shifted by -1.
pub fn rotate_min(d: &Dissection) -> Dissection {
    d.rotate(-1)
}

/// Sink of the oriented flip graph: labels shifted by +1.
pub fn rotate_max(d: &Dissection) -> Dissection {
    d.rotate(1)
}

fn derive_cells(circle: &Circle, parity: Parity, diagonals: &[Diag]) -> Vec<Cell> {
    let mut out = Vec::new();
    let region: Vec<Label> = circle.labels(parity);
    split_region(region, diagonals, &mut out);
    out.sort_by(|c1, c2| c1.vertices.cmp(&c2.vertices));
    out
}

fn split_region(region: Vec<Label>, diagonals: &[Diag], out: &mut Vec<Cell>) {
    // Find a diagonal that is a proper chord of this region.
    let pos: BTreeMap<Label, usize> = region.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let chord = diagonals
        .iter()
        .find(|d| match (pos.get(&d.a()), pos.get(&d.b())) {
            (Some(&i), Some(&j)) => {
                let (i, j) = (i.min(j), i.max(j));
                j - i >= 2 && !(i == 0 && j == region.len() - 1)
            }
            _ => false,
        });
    match chord {
        None => out.push(Cell::from_vertices(rotate_to_min(region))),
        Some(d) => {
            let i = pos[&d.a()].min(pos[&d.b()]);
            let j = pos[&d.a()].max(pos[&d.b()]);
            let first: Vec<Label> = region[i..=j].to_vec();
            let mut second: Vec<Label> = region[j..].to_vec();
            second.extend_from_slice(&region[..=i]);
            let inside = |r: &[Label], dd: &Diag| r.contains(&dd.a()) && r.contains(&dd.b());
            let d1: Vec<Diag> = diagonals
                .iter()
                .filter(|dd| *dd != d && inside(&first, dd))
                .copied()
                .collect();
            let d2: Vec<Diag> = diagonals
                .iter()
                .filter(|dd| *dd != d && inside(&second, dd))
                .copied()
                .collect();
            split_region(first, &d1, out);
            split_region(second, &d2, out);
        }
    }
}

fn rotate_to_min(mut region: Vec<Label>) -> Vec<Label> {
    let k = region
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    region.rotate_left(k);
    region
}

/// Diagonals of the barred reference crossed by `q`, listed in crossing order
/// from `q`'s smaller endpoint, plus whether they form a connected set.
#[derive(Debug, Clone)]
pub struct CrossedSet {
    pub crossed: Vec<Diag>,
    pub connected: bool,
}

/// All diagonals of the barred `reference` crossed by the opposite-parity
/// chord `q`, sorted along `q`.
pub fn crossed_set(reference: &Dissection, q: Diag) -> Result<CrossedSet> {
    let circle = reference.circle();
    circle.check_label(q.a())?;
    circle.check_label(q.b())?;
    if q.parity() == reference.parity() {
        return Err(Error::BadLabel(format!(
            "query {q} has the same parity as the reference dissection"
        )));
    }
    let mut crossed: Vec<Diag> = reference
        .barred()
        .into_iter()
        .filter(|d| circle.crosses(*d, q))
        .collect();
    crossed.sort_by_key(|d| circle.side_size(*d, q.a()));
    debug_assert!(crossed
        .windows(2)
        .all(|w| { circle.side_size(w[0], q.a()) < circle.side_size(w[1], q.a()) }));
    let connected = is_connected(&crossed);
    Ok(CrossedSet { crossed, connected })
}

fn is_connected(diags: &[Diag]) -> bool {
    if diags.is_empty() {
        return false;
    }
    let mut uf: BTreeMap<Label, Label> = BTreeMap::new();
    fn find(uf: &mut BTreeMap<Label, Label>, v: Label) -> Label {
        let p = *uf.entry(v).or_insert(v);
        if p == v {
            v
        } else {
            let r = find(uf, p);
            uf.insert(v, r);
            r
        }
    }
    for d in diags {
        let ra = find(&mut uf, d.a());
        let rb = find(&mut uf, d.b());
        uf.insert(ra, rb);
    }
    let root = find(&mut uf, diags[0].a());
    diags
        .iter()
        .all(|d| find(&mut uf, d.a()) == root && find(&mut uf, d.b()) == root)
}

/// A connected cut of the barred reference: the tree of diagonals crossed by
/// one chord, kept in crossing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Accordion {
    pub diagonals: Vec<Diag>,
}

impl Accordion {
    /// The chain left after one round of deleting all degree-1 vertices and
    /// their incident edges, in crossing order.
    pub fn zigzag(&self) -> Vec<Diag> {
        let mut degree: BTreeMap<Label, usize> = BTreeMap::new();
        for d in &self.diagonals {
            *degree.entry(d.a()).or_insert(0) += 1;
            *degree.entry(d.b()).or_insert(0) += 1;
        }
        self.diagonals
            .iter()
            .filter(|d| degree[&d.a()] >= 2 && degree[&d.b()] >= 2)
            .copied()
            .collect()
    }
}

/// Result of testing whether a solid diagonal crosses an accordion of the
/// reference.
#[derive(Debug, Clone)]
pub struct CrossedAccordion {
    pub crossed: Vec<Diag>,
    pub is_accordion: bool,
    pub accordion: Option<Accordion>,
}

/// The crossed set of the internal opposite-parity diagonal `q` over the
/// barred reference, packaged as an accordion when connected.
pub fn crossed_accordion(reference: &Dissection, q: Diag) -> Result<CrossedAccordion> {
    if reference.circle().is_boundary(q) {
        return Err(Error::BoundaryInput(q));
    }
    let set = crossed_set(reference, q)?;
    let accordion = set.connected.then(|| {
        debug_assert!(vertex_count(&set.crossed) == set.crossed.len() + 1);
        Accordion {
            diagonals: set.crossed.clone(),
        }
    });
    Ok(CrossedAccordion {
        is_accordion: set.connected,
        crossed: set.crossed,
        accordion,
    })
}

fn vertex_count(diags: &[Diag]) -> usize {
    let mut vs = BTreeSet::new();
    for d in diags {
        vs.insert(d.a());
        vs.insert(d.b());
    }
    vs.len()
}

/// Is `q` an accordion diagonal of the reference? Boundary edges always are.
pub fn is_accordion_diagonal(reference: &Dissection, q: Diag) -> bool {
    if reference.circle().is_boundary(q) {
        return true;
    }
    crossed_set(reference, q)
        .map(|s| s.connected)
        .unwrap_or(false)
}

/// All internal opposite-parity accordion diagonals, canonically ordered.
pub fn accordion_diagonals(reference: &Dissection) -> Vec<Diag> {
    reference
        .circle()
        .internal_diagonals(reference.parity().other())
        .into_iter()
        .filter(|q| is_accordion_diagonal(reference, *q))
        .collect()
}

/// A pair of consecutive barred-dissection diagonals around a common apex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Angle {
    pub apex: Label,
    pub arms: (Diag, Diag),
}

/// All angles of the barred dissection: consecutive pairs in the rotational
/// fan of incident diagonals around each vertex. There are 2|D| + n of them.
pub fn angles(d: &Dissection) -> Vec<Angle> {
    let circle = d.circle();
    let barred = d.barred();
    let mut out = Vec::new();
    for v in circle.labels(d.parity()) {
        let mut incident: Vec<Diag> = barred
            .iter()
            .filter(|e| e.has_endpoint(v))
            .copied()
            .collect();
        incident.sort_by_key(|e| circle.dist_cw(v, e.other_endpoint(v)));
        for pair in incident.windows(2) {
            out.push(Angle {
                apex: v,
                arms: (pair[0], pair[1]),
            });
        }
    }
    out.sort();
    out
}

/// The diagonal of the barred `opposite` dissection closing `angle`: the
/// farthest from the apex among those crossing both arms. The purity
/// bookkeeping is only guaranteed when `opposite` is a maximal accordion
/// dissection of `reference`.
pub fn closing_diagonal(
    reference: &Dissection,
    opposite: &Dissection,
    angle: &Angle,
) -> Result<Diag> {
    if !crate::complex::is_maximal_face(reference, opposite.diagonals()) {
        return Err(Error::NotMaximal);
    }
    Ok(closing_diagonal_unchecked(opposite, angle))
}

pub(crate) fn closing_diagonal_unchecked(opposite: &Dissection, angle: &Angle) -> Diag {
    let circle = opposite.circle();
    let mut candidates: Vec<Diag> = opposite
        .barred()
        .into_iter()
        .filter(|d| circle.crosses(*d, angle.arms.0) && circle.crosses(*d, angle.arms.1))
        .collect();
    debug_assert!(
        !candidates.is_empty(),
        "the boundary edge around the apex always qualifies"
    );
    candidates.sort_by_key(|d| circle.side_size(*d, angle.apex));
    *candidates.last().unwrap()
}

/// Map from each angle of the barred reference to its closer in the barred
/// opposite dissection; the opposite must be a maximal face.
pub fn closing_map(reference: &Dissection, opposite: &Dissection) -> Vec<(Angle, Diag)> {
    angles(reference)
        .into_iter()
        .map(|a| {
            let c = closing_diagonal_unchecked(opposite, &a);
            (a, c)
        })
        .collect()
}

/// Connected subsets of the dissection crossed by a segment interior to the
/// polygon: edge sets of dual-tree paths that are connected as diagonal
/// graphs. Canonically ordered, no empty set.
pub fn subaccordions(d: &Dissection) -> Vec<Vec<Diag>> {
    // Dual tree: one node per cell, one edge per internal diagonal.
    let cells = d.cells();
    let mut adj: Vec<Vec<(usize, Diag)>> = vec![Vec::new(); cells.len()];
    for diag in d.diagonals() {
        let touching: Vec<usize> = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.edges.contains(diag))
            .map(|(i, _)| i)
            .collect();
        debug_assert_eq!(touching.len(), 2);
        adj[touching[0]].push((touching[1], *diag));
        adj[touching[1]].push((touching[0], *diag));
    }
    let mut found: BTreeSet<Vec<Diag>> = BTreeSet::new();
    // Walk all simple dual paths from each cell.
    for start in 0..cells.len() {
        let mut stack = vec![(start, Vec::<Diag>::new(), vec![start])];
        while let Some((node, path, visited)) = stack.pop() {
            if !path.is_empty() && is_connected(&path) {
                let mut sorted = path.clone();
                sorted.sort();
                found.insert(sorted);
            }
            for (next, via) in &adj[node] {
                if !visited.contains(next) {
                    let mut p = path.clone();
                    p.push(*via);
                    let mut vis = visited.clone();
                    vis.push(*next);
                    stack.push((*next, p, vis));
                }
            }
        }
    }
    found.into_iter().collect()
}
