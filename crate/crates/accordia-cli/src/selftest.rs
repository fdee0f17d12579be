//! The exhaustive self-test driver: every invariant suite over every hollow
//! dissection up to a bound, reported as a pass/fail matrix keyed by property
//! and dissection. Expected obstructions (the even-interior-cell d-fan
//! failures) are part of the property statement and therefore count as
//! passes. Never panics; failures are aggregated.

use accordia_core::complex::{
    face_dissection, lattice_check, maximal_faces_by_cliques, oriented_flip_graph,
};
use accordia_core::enumerate::all_dissections;
use accordia_core::fan::{
    build_dfan_with, build_gfan_with, coarsening_check_with, even_interior_cell,
};
use accordia_core::linalg::rat;
use accordia_core::polygon::{angles, closing_map, rotate_max, rotate_min, Dissection};
use accordia_core::polytope::{
    accordiohedron_with, heights_map, matriochka_check, orientation_check, parallel_facets,
    rational_halfspaces, verify_normal_fan, verify_vertices_on_facets, vertex_enumeration_desk,
};
use accordia_core::text::serialize_dissection;
use accordia_core::vectors::{c_matrix, g_matrix};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct SelfTestReport {
    /// (property, n) -> (passes, failures)
    pub matrix: BTreeMap<(String, usize), (usize, usize)>,
    /// (property, dissection) for every failure
    pub failures: Vec<(String, String)>,
    pub dissections: usize,
}

impl SelfTestReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut properties: Vec<&String> = self.matrix.keys().map(|(p, _)| p).collect();
        properties.sort();
        properties.dedup();
        let ns: Vec<usize> = {
            let mut v: Vec<usize> = self.matrix.keys().map(|(_, n)| *n).collect();
            v.sort();
            v.dedup();
            v
        };
        for p in properties {
            let _ = write!(out, "{p:<24}");
            for n in &ns {
                match self.matrix.get(&(p.clone(), *n)) {
                    Some((pass, 0)) => {
                        let _ = write!(out, " n={n}:{pass}/{pass}");
                    }
                    Some((pass, fail)) => {
                        let _ = write!(out, " n={n}:{pass}/{}", pass + fail);
                    }
                    None => {}
                }
            }
            out.push('\n');
        }
        if self.failures.is_empty() {
            let _ = writeln!(
                out,
                "all properties hold over {} dissections",
                self.dissections
            );
        } else {
            let _ = writeln!(out, "FAILURES:");
            for (p, d) in &self.failures {
                let _ = writeln!(out, "  {p}: {d}");
            }
        }
        out
    }
}

pub fn run_selftest(max_n: usize) -> SelfTestReport {
    let mut report = SelfTestReport {
        matrix: BTreeMap::new(),
        failures: Vec::new(),
        dissections: 0,
    };
    for n in 3..=max_n {
        for d in all_dissections(n) {
            report.dissections += 1;
            let text = serialize_dissection(&d);
            let mut record = |property: &str, pass: bool| {
                let entry = report
                    .matrix
                    .entry((property.to_string(), n))
                    .or_insert((0, 0));
                if pass {
                    entry.0 += 1;
                } else {
                    entry.1 += 1;
                    report.failures.push((property.to_string(), text.clone()));
                }
            };
            // a panicking property counts as a failed enumeration, never as
            // a crashed run
            let outcome = std::panic::catch_unwind(|| {
                let mut results: Vec<(String, bool)> = Vec::new();
                run_one(&d, &mut |p: &str, pass: bool| {
                    results.push((p.to_string(), pass));
                });
                results
            });
            match outcome {
                Ok(results) => {
                    for (p, pass) in results {
                        record(&p, pass);
                    }
                }
                Err(_) => record("no_panic", false),
            }
        }
    }
    report
}

fn run_one(d: &Dissection, record: &mut dyn FnMut(&str, bool)) {
    let n = d.n();
    let graph = oriented_flip_graph(d);

    record("purity", graph.nodes.iter().all(|f| f.len() == d.len()));
    record(
        "thinness",
        graph
            .nodes
            .iter()
            .enumerate()
            .all(|(i, _)| graph.out_degree(i) + graph.in_degree(i) == d.len()),
    );
    record("clique_oracle", graph.nodes == maximal_faces_by_cliques(d));
    let sources: Vec<usize> = (0..graph.nodes.len())
        .filter(|&i| graph.in_degree(i) == 0)
        .collect();
    let sinks: Vec<usize> = (0..graph.nodes.len())
        .filter(|&i| graph.out_degree(i) == 0)
        .collect();
    let mut min_face = rotate_min(d).diagonals().to_vec();
    min_face.sort();
    let mut max_face = rotate_max(d).diagonals().to_vec();
    max_face.sort();
    record(
        "source_sink",
        sources.len() == 1
            && sinks.len() == 1
            && graph.nodes[sources[0]] == min_face
            && graph.nodes[sinks[0]] == max_face,
    );
    record(
        "cell_sequence",
        graph
            .nodes
            .iter()
            .all(|f| face_dissection(d, f).cell_sequence() == d.cell_sequence()),
    );
    record("angle_count", angles(d).len() == 2 * d.len() + n);
    record(
        "closing_double_count",
        graph.nodes.iter().all(|f| {
            let solid = face_dissection(d, f);
            let mut hits: BTreeMap<accordia_core::Diag, usize> = BTreeMap::new();
            for (_, closer) in closing_map(d, &solid) {
                *hits.entry(closer).or_insert(0) += 1;
            }
            solid.barred().into_iter().all(|e| {
                let expected = if d.circle().is_boundary(e) { 1 } else { 2 };
                hits.get(&e) == Some(&expected)
            })
        }),
    );
    record(
        "dual_bases",
        graph.nodes.iter().all(|f| {
            let g = g_matrix(d, f).unwrap();
            let c = c_matrix(d, f).unwrap();
            let k = g.len();
            (0..k).all(|i| (0..k).all(|j| g[i].dot(&c[j]) == i64::from(i == j)))
        }),
    );
    record(
        "sign_coherence",
        graph.nodes.iter().all(|f| {
            c_matrix(d, f).unwrap().iter().all(|c| c.sign_coherent()) && {
                let g = g_matrix(d, f).unwrap();
                (0..d.len()).all(|i| {
                    let row: Vec<i64> = g.iter().map(|col| col.0[i]).collect();
                    row.iter().all(|x| *x >= 0) || row.iter().all(|x| *x <= 0)
                })
            }
        }),
    );

    let gfan = build_gfan_with(d, graph.clone());
    record(
        "gfan_certificate",
        gfan.fan.certificate.ok && gfan.smooth && coarsening_check_with(d, &graph),
    );
    let dfan = build_dfan_with(d, graph.clone());
    record(
        "dfan_obstruction",
        dfan.certificate.ok == !even_interior_cell(d),
    );

    if !d.is_empty() {
        let heights = heights_map(d);
        let acco_ok = match accordiohedron_with(d, &graph) {
            Ok(rep) => {
                verify_vertices_on_facets(d, &rep)
                    && verify_normal_fan(d, &rep, &graph, &heights).ok
            }
            Err(_) => false,
        };
        record("accordiohedron", acco_ok);
        record(
            "orientation_parallel_matriochka",
            orientation_check(d) && parallel_facets(d) == d.len() && matriochka_check(d),
        );
        if d.len() <= 4 {
            let v_eq_h = accordiohedron_with(d, &graph)
                .ok()
                .and_then(|rep| {
                    let verts =
                        vertex_enumeration_desk(&rational_halfspaces(&rep), d.len()).ok()?;
                    let expected: std::collections::BTreeSet<Vec<accordia_core::linalg::Rat>> = rep
                        .vertices
                        .iter()
                        .map(|v| v.point.0.iter().map(|&x| rat(x)).collect())
                        .collect();
                    Some(expected == verts.into_iter().collect())
                })
                .unwrap_or(false);
            record("v_eq_h", v_eq_h);
        }
    }
    if n <= 7 {
        record(
            "lattice",
            lattice_check(&graph).map(|r| r.is_lattice).unwrap_or(false),
        );
    }
}
