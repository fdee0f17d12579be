//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Every tolerance is exact (integer or rational equality); the only numeric
//! bound is the golden-example timing budget, pinned as stated.

use accordia_cli::svg::{emit_svg_stereographic, project_rays, FanKind};
use accordia_core::complex::{
    face_dissection, lattice_check, maximal_faces_by_cliques, oriented_flip_graph,
};
use accordia_core::enumerate::{all_dissections, all_triangulations};
use accordia_core::fan::{
    build_dfan_with, build_gfan_with, coarsening_check_with, even_interior_cell, section_check,
};
use accordia_core::linalg::{rat, Rat};
use accordia_core::polygon::{angles, closing_map, rotate_max, rotate_min, Diag, Dissection};
use accordia_core::polytope::{
    accordiohedron_with, heights_map, matriochka_check, orientation_check, parallel_facets,
    rational_halfspaces, verify_normal_fan, verify_projected_normal_fan, verify_vertices_on_facets,
    vertex_enumeration_desk,
};
use accordia_core::text::parse_dissection;
use accordia_core::vectors::{c_matrix, c_vector, d_vector, g_matrix, g_vector, IntVector};
use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

fn diag(a: usize, b: usize) -> Diag {
    Diag::new(a, b).unwrap()
}

fn running_example() -> Dissection {
    parse_dissection("n=7;parity=hollow;diagonals=3-7,3-13,9-13").unwrap()
}

fn solid_example() -> Dissection {
    parse_dissection("n=7;parity=solid;diagonals=2-6,2-10,10-14").unwrap()
}

#[test]
fn criterion_1_running_example_golden_vectors() {
    let d = running_example();
    let s = solid_example();
    let compute = || -> [(IntVector, IntVector); 9] {
        [
            (g_vector(&d, diag(2, 6)).unwrap(), IntVector(vec![1, 0, 0])),
            (
                g_vector(&d, diag(2, 10)).unwrap(),
                IntVector(vec![0, 1, -1]),
            ),
            (
                g_vector(&d, diag(10, 14)).unwrap(),
                IntVector(vec![0, 0, -1]),
            ),
            (
                c_vector(&d, &s, diag(2, 6)).unwrap(),
                IntVector(vec![1, 0, 0]),
            ),
            (
                c_vector(&d, &s, diag(2, 10)).unwrap(),
                IntVector(vec![0, 1, 0]),
            ),
            (
                c_vector(&d, &s, diag(10, 14)).unwrap(),
                IntVector(vec![0, -1, -1]),
            ),
            (d_vector(&d, diag(2, 6)), IntVector(vec![-1, 0, 0])),
            (d_vector(&d, diag(2, 10)), IntVector(vec![0, 0, 1])),
            (d_vector(&d, diag(10, 14)), IntVector(vec![0, 1, 1])),
        ]
    };
    // warm pass, then the timed pass
    for (got, want) in compute() {
        assert_eq!(got, want);
    }
    let start = Instant::now();
    let results = compute();
    let all_match = results.iter().all(|(got, want)| got == want);
    let elapsed = start.elapsed();
    assert!(all_match, "golden vectors mismatch");
    assert!(
        elapsed.as_micros() < 1000,
        "golden vectors took {elapsed:?}, budget is 1 ms"
    );
    println!("criterion 1: PASS — nine golden vectors exact, {elapsed:?}");
}

#[test]
fn criterion_2_structural_suite_n_up_to_8() {
    let start = Instant::now();
    let mut dissections = 0;
    for n in 3..=8 {
        for d in all_dissections(n) {
            dissections += 1;
            let graph = oriented_flip_graph(&d);
            // purity
            assert!(
                graph.nodes.iter().all(|f| f.len() == d.len()),
                "purity fails for {d:?}"
            );
            // thinness: flips are defined and unique, so every node meets
            // exactly |D| arcs, and the flip closure reaches exactly the
            // exhaustively enumerated maximal faces
            assert!(
                (0..graph.nodes.len()).all(|i| graph.out_degree(i) + graph.in_degree(i) == d.len()),
                "thinness degrees fail for {d:?}"
            );
            assert_eq!(
                graph.nodes,
                maximal_faces_by_cliques(&d),
                "flip closure misses faces of {d:?}"
            );
            // every ridge lies in exactly two maximal faces
            let mut ridge_count: BTreeMap<Vec<Diag>, usize> = BTreeMap::new();
            for f in &graph.nodes {
                for skip in f {
                    let ridge: Vec<Diag> = f.iter().copied().filter(|x| x != skip).collect();
                    *ridge_count.entry(ridge).or_insert(0) += 1;
                }
            }
            assert!(
                ridge_count.values().all(|&c| c == 2),
                "a ridge of {d:?} is not in exactly two facets"
            );
            // unique source and sink at the rotated copies
            let sources: Vec<usize> = (0..graph.nodes.len())
                .filter(|&i| graph.in_degree(i) == 0)
                .collect();
            let sinks: Vec<usize> = (0..graph.nodes.len())
                .filter(|&i| graph.out_degree(i) == 0)
                .collect();
            let mut min_face = rotate_min(&d).diagonals().to_vec();
            min_face.sort();
            let mut max_face = rotate_max(&d).diagonals().to_vec();
            max_face.sort();
            assert!(sources.len() == 1 && graph.nodes[sources[0]] == min_face);
            assert!(sinks.len() == 1 && graph.nodes[sinks[0]] == max_face);
            // cell-sequence preservation
            assert!(graph
                .nodes
                .iter()
                .all(|f| face_dissection(&d, f).cell_sequence() == d.cell_sequence()));
            // angle count
            assert_eq!(angles(&d).len(), 2 * d.len() + n);
            // closing-map double counting re-proves purity
            for f in &graph.nodes {
                let solid = face_dissection(&d, f);
                let mut hits: BTreeMap<Diag, usize> = BTreeMap::new();
                for (_, closer) in closing_map(&d, &solid) {
                    *hits.entry(closer).or_insert(0) += 1;
                }
                for e in solid.barred() {
                    let expected = if d.circle().is_boundary(e) { 1 } else { 2 };
                    assert_eq!(hits.get(&e), Some(&expected), "closing count in {d:?}");
                }
            }
        }
    }
    println!(
        "criterion 2: PASS — structural suite over {dissections} dissections (n <= 8) in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_3_dual_bases_and_reciprocity_n_up_to_8() {
    let start = Instant::now();
    let mut faces_checked = 0usize;
    for n in 3..=8 {
        for d in all_dissections(n) {
            let graph = oriented_flip_graph(&d);
            for face in &graph.nodes {
                faces_checked += 1;
                let g = g_matrix(&d, face).unwrap();
                let c = c_matrix(&d, face).unwrap();
                let k = g.len();
                for i in 0..k {
                    for j in 0..k {
                        assert_eq!(
                            g[i].dot(&c[j]),
                            i64::from(i == j),
                            "dual bases fail for {d:?} {face:?}"
                        );
                    }
                }
                // G(D|E) = -transpose(C(E|D)) exactly
                let solid = face_dissection(&d, face);
                let c_bwd = c_matrix(&solid, d.diagonals()).unwrap();
                for (j, col) in g.iter().enumerate() {
                    for i in 0..d.len() {
                        assert_eq!(col.0[i], -c_bwd[i].0[j], "reciprocity fails for {d:?}");
                    }
                }
            }
        }
    }
    println!(
        "criterion 3: PASS — dual bases and reciprocity over {faces_checked} maximal faces in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_4_gfan_certification_n_up_to_8() {
    let start = Instant::now();
    let mut count = 0;
    for n in 3..=8 {
        for d in all_dissections(n) {
            count += 1;
            let graph = oriented_flip_graph(&d);
            let g = build_gfan_with(&d, graph.clone());
            assert!(g.fan.certificate.ok, "g-fan conditions fail for {d:?}");
            assert!(g.smooth, "smoothness fails for {d:?}");
            assert!(
                coarsening_check_with(&d, &graph),
                "coarsening fails for {d:?}"
            );
        }
    }
    println!(
        "criterion 4: PASS — g-fan certified, smooth, coarsening over {count} dissections in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_5_dfan_iff_even_interior_cell() {
    let start = Instant::now();
    let mut obstructed = 0;
    for n in 3..=8 {
        for d in all_dissections(n) {
            let graph = oriented_flip_graph(&d);
            let f = build_dfan_with(&d, graph);
            let even = even_interior_cell(&d);
            assert_eq!(f.certificate.ok, !even, "d-fan obstruction wrong for {d:?}");
            if even {
                obstructed += 1;
            }
        }
    }
    // octagon with an interior square: fails with the alternating dependence
    let d = parse_dissection("n=8;parity=hollow;diagonals=1-5,1-13,5-9,9-13").unwrap();
    let graph = oriented_flip_graph(&d);
    let f = build_dfan_with(&d, graph);
    assert!(!f.certificate.ok);
    let mut sink = rotate_max(&d).diagonals().to_vec();
    sink.sort();
    assert_eq!(
        sink,
        vec![diag(2, 6), diag(2, 14), diag(6, 10), diag(10, 14)]
    );
    let sink_idx = f.graph.node_index(&sink).unwrap();
    let witness = f
        .certificate
        .degenerate_faces
        .iter()
        .find(|w| w.face == sink_idx)
        .expect("sink face carries the dependence witness");
    // d(2-6) + d(10-14) = d(2-14) + d(6-10), normalized on the face order
    assert_eq!(witness.dependence, vec![rat(1), rat(-1), rat(-1), rat(1)]);
    println!(
        "criterion 5: PASS — d-fan certificate equals the obstruction ({obstructed} even interior cells), octagon witness exact, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_6_accordiohedron_certification_n_up_to_8() {
    let start = Instant::now();
    let mut count = 0;
    for n in 3..=8 {
        for d in all_dissections(n) {
            if d.is_empty() {
                continue;
            }
            count += 1;
            let graph = oriented_flip_graph(&d);
            let rep = accordiohedron_with(&d, &graph).unwrap();
            let heights = heights_map(&d);
            // vertex-facet incidences and the flip law p' - p = lambda c
            // with integer lambda <= -2
            assert!(
                verify_vertices_on_facets(&d, &rep),
                "incidences fail for {d:?}"
            );
            assert!(
                verify_normal_fan(&d, &rep, &graph, &heights).ok,
                "normal-fan flip law fails for {d:?}"
            );
            assert!(orientation_check(&d), "-1 orientation fails for {d:?}");
            assert_eq!(
                parallel_facets(&d),
                d.len(),
                "parallel facets fail for {d:?}"
            );
            assert!(matriochka_check(&d), "matriochka fails for {d:?}");
            if d.len() <= 4 {
                let verts = vertex_enumeration_desk(&rational_halfspaces(&rep), d.len()).unwrap();
                let expected: BTreeSet<Vec<Rat>> = rep
                    .vertices
                    .iter()
                    .map(|v| v.point.0.iter().map(|&x| rat(x)).collect())
                    .collect();
                assert_eq!(
                    expected,
                    verts.into_iter().collect::<BTreeSet<_>>(),
                    "V=H fails for {d:?}"
                );
            }
        }
    }
    println!(
        "criterion 6: PASS — accordiohedra certified over {count} dissections in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_7_lattice_n_up_to_7_and_tamari() {
    let start = Instant::now();
    for n in 3..=7 {
        for d in all_dissections(n) {
            let graph = oriented_flip_graph(&d);
            let report = lattice_check(&graph).unwrap();
            assert!(report.is_lattice, "lattice fails for {d:?}: {report:?}");
        }
    }
    // hexagon fan triangulation: the Tamari lattice on 14 elements
    let fan = parse_dissection("n=6;parity=hollow;diagonals=1-5,1-7,1-9").unwrap();
    let graph = oriented_flip_graph(&fan);
    assert_eq!(graph.nodes.len(), 14);
    assert!(lattice_check(&graph).unwrap().is_lattice);
    println!(
        "criterion 7: PASS — lattice property over all n <= 7, Tamari case on 14 elements, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_8_sections_and_projections_n_up_to_7() {
    let start = Instant::now();
    let mut pairs = 0;
    for n in 3..=7 {
        let triangulations = all_triangulations(n);
        for t in &triangulations {
            // all proper sub-dissections of the triangulation
            for d in all_dissections(n) {
                if d.len() >= t.len() || !d.diagonals().iter().all(|x| t.contains(*x)) {
                    continue;
                }
                pairs += 1;
                let rep = section_check(&d, t).unwrap();
                assert!(rep.ray_coincidence, "ray coincidence fails: {d:?} in {t:?}");
                assert!(
                    rep.subfan_equals_section,
                    "subfan/section fails: {d:?} in {t:?}"
                );
                if !d.is_empty() {
                    assert!(
                        verify_projected_normal_fan(&d, t).unwrap(),
                        "projected normal fan fails: {d:?} in {t:?}"
                    );
                }
            }
        }
    }
    println!(
        "criterion 8: PASS — section and projection checks over {pairs} nested pairs in {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_9_render_determinism_and_outer_face() {
    let d = running_example();
    let graph = oriented_flip_graph(&d);
    let gfan = build_gfan_with(&d, graph);
    let first = emit_svg_stereographic(&d, &gfan.fan, FanKind::G).unwrap();
    let second = emit_svg_stereographic(&d, &gfan.fan, FanKind::G).unwrap();
    assert_eq!(
        first.as_bytes(),
        second.as_bytes(),
        "emitter is not deterministic"
    );
    // byte-identical across separate process runs of the CLI
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_accordia"))
            .args([
                "render",
                "--dissection",
                "n=7;parity=hollow;diagonals=3-7,3-13,9-13",
                "--kind",
                "g",
            ])
            .output()
            .expect("render runs")
    };
    let out1 = run();
    let out2 = run();
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout, "render differs across runs");
    assert_eq!(
        out1.stdout,
        first.as_bytes(),
        "CLI render differs from the emitter"
    );

    // the outer face is the rotate_min cone: its three rays bound a triangle
    // strictly containing every other projected ray
    let rays = project_rays(&gfan.fan, FanKind::G).unwrap();
    let min: Vec<Diag> = rotate_min(&d).diagonals().to_vec();
    let corner: Vec<(f64, f64)> = rays
        .iter()
        .filter(|(q, _, _)| min.contains(q))
        .map(|(_, x, y)| (*x, *y))
        .collect();
    assert_eq!(corner.len(), 3);
    let inside = |p: (f64, f64)| {
        let sign = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| {
            (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
        };
        let d1 = sign(corner[0], corner[1], p);
        let d2 = sign(corner[1], corner[2], p);
        let d3 = sign(corner[2], corner[0], p);
        (d1 > 0.0 && d2 > 0.0 && d3 > 0.0) || (d1 < 0.0 && d2 < 0.0 && d3 < 0.0)
    };
    for (q, x, y) in &rays {
        if !min.contains(q) {
            assert!(inside((*x, *y)), "ray {q} escapes the outer face");
        }
    }
    println!(
        "criterion 9: PASS — byte-identical SVG across runs, outer face is the rotate_min cone"
    );
}
