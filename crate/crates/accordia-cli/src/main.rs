//! `accordia` — accordion complexes of polygon dissections, exact arithmetic
//! end to end. Exit codes: 0 all checks pass, 1 a check failed, 2 bad input.

use accordia_cli::dot::emit_dot;
use accordia_cli::selftest::run_selftest;
use accordia_cli::svg::{emit_svg_stereographic, FanKind};
use accordia_core::complex::{lattice_check, oriented_flip_graph};
use accordia_core::fan::{build_dfan_with, build_gfan_with, even_interior_cell, fan_json};
use accordia_core::polygon::accordion_diagonals;
use accordia_core::polytope::{
    accordiohedron_with, matriochka_check, orientation_check, parallel_facets,
    project_accordiohedron, verify_projected_normal_fan,
};
use accordia_core::text::parse_dissection;
use accordia_core::vectors::{c_vector_set_with, d_vector, g_vector};
use accordia_core::Dissection;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "accordia",
    about = "accordion complexes of polygon dissections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VectorKind {
    G,
    C,
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// List the accordion diagonals and maximal accordion dissections
    Enumerate {
        #[arg(long)]
        dissection: String,
    },
    /// Emit the oriented flip graph
    Flipgraph {
        #[arg(long)]
        dissection: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Print g-, c- or d-vectors
    Vectors {
        #[arg(long)]
        dissection: String,
        #[arg(long, value_enum, default_value_t = VectorKind::G)]
        kind: VectorKind,
    },
    /// Build and certify the g- or d-vector fan
    Fan {
        #[arg(long)]
        dissection: String,
        #[arg(long, value_enum, default_value_t = VectorKind::G)]
        kind: VectorKind,
    },
    /// Build the accordiohedron and run its certifications
    Polytope {
        #[arg(long)]
        dissection: String,
    },
    /// Project the accordiohedron of the ambient dissection onto a
    /// sub-dissection's coordinate subspace
    Project {
        #[arg(long)]
        dissection: String,
        #[arg(long)]
        sub: String,
    },
    /// Check the lattice property of the oriented flip graph
    Lattice {
        #[arg(long)]
        dissection: String,
    },
    /// Render the stereographic projection of a 3-dimensional fan as SVG
    Render {
        #[arg(long)]
        dissection: String,
        #[arg(long, value_enum, default_value_t = VectorKind::G)]
        kind: VectorKind,
    },
    /// Run every invariant suite over all dissections up to a size bound
    Selftest {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                0
            } else {
                1
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    });
}

fn parse(text: &str) -> Result<Dissection, accordia_core::Error> {
    parse_dissection(text)
}

fn run(cli: Cli) -> Result<bool, accordia_core::Error> {
    match cli.command {
        Command::Enumerate { dissection } => {
            let d = parse(&dissection)?;
            let graph = oriented_flip_graph(&d);
            let payload = serde_json::json!({
                "accordion_diagonals": accordion_diagonals(&d)
                    .iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "maximal_dissections": graph.nodes.iter().map(|f| {
                    f.iter().map(|x| x.to_string()).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(true)
        }
        Command::Flipgraph { dissection, format } => {
            let d = parse(&dissection)?;
            let graph = oriented_flip_graph(&d);
            match format {
                Format::Dot => print!("{}", emit_dot(&graph)),
                Format::Json => {
                    let payload = serde_json::json!({
                        "nodes": graph.nodes.iter().map(|f| {
                            f.iter().map(|x| x.to_string()).collect::<Vec<_>>()
                        }).collect::<Vec<_>>(),
                        "arcs": graph.arcs.iter().map(|a| serde_json::json!({
                            "from": a.from,
                            "to": a.to,
                            "removed": a.removed.to_string(),
                            "added": a.added.to_string(),
                        })).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
                }
                Format::Svg => {
                    return Err(accordia_core::Error::BadLabel(
                        "flipgraph renders as dot or json".into(),
                    ))
                }
            }
            Ok(true)
        }
        Command::Vectors { dissection, kind } => {
            let d = parse(&dissection)?;
            let payload = match kind {
                VectorKind::G => serde_json::json!(accordion_diagonals(&d)
                    .iter()
                    .map(|q| {
                        let v = g_vector(&d, *q).expect("accordion diagonal");
                        serde_json::json!({"diagonal": q.to_string(), "vector": v.json(d.diagonals())})
                    })
                    .collect::<Vec<_>>()),
                VectorKind::D => serde_json::json!(accordion_diagonals(&d)
                    .iter()
                    .map(|q| {
                        let v = d_vector(&d, *q);
                        serde_json::json!({"diagonal": q.to_string(), "vector": v.json(d.diagonals())})
                    })
                    .collect::<Vec<_>>()),
                VectorKind::C => {
                    let graph = oriented_flip_graph(&d);
                    serde_json::json!(c_vector_set_with(&d, &graph)
                        .iter()
                        .map(|v| v.json(d.diagonals()))
                        .collect::<Vec<_>>())
                }
            };
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(true)
        }
        Command::Fan { dissection, kind } => {
            let d = parse(&dissection)?;
            let graph = oriented_flip_graph(&d);
            let (fan, extra) = match kind {
                VectorKind::G => {
                    let g = build_gfan_with(&d, graph);
                    let smooth = g.smooth;
                    (g.fan, serde_json::json!({"smooth": smooth}))
                }
                VectorKind::D => {
                    let f = build_dfan_with(&d, graph);
                    let even = even_interior_cell(&d);
                    (f, serde_json::json!({"even_interior_cell": even}))
                }
                VectorKind::C => {
                    return Err(accordia_core::Error::BadLabel(
                        "fans are built from g- or d-vectors".into(),
                    ))
                }
            };
            let mut payload = fan_json(&d, &fan);
            payload["extra"] = extra;
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(fan.certificate.ok)
        }
        Command::Polytope { dissection } => {
            let d = parse(&dissection)?;
            let graph = oriented_flip_graph(&d);
            let rep = accordiohedron_with(&d, &graph)?;
            let orientation = orientation_check(&d);
            let pairs = parallel_facets(&d);
            let nested = matriochka_check(&d);
            let mut payload = rep.json();
            payload["checks"] = serde_json::json!({
                "orientation": orientation,
                "parallel_facets": pairs,
                "matriochka": nested,
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(orientation && pairs == d.len() && nested)
        }
        Command::Project { dissection, sub } => {
            let big = parse(&dissection)?;
            let small = parse(&sub)?;
            let rep = project_accordiohedron(&small, &big)?;
            let ok = verify_projected_normal_fan(&small, &big)?;
            let mut payload = rep.json();
            payload["normal_fan_check"] = serde_json::json!(ok);
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(ok)
        }
        Command::Lattice { dissection } => {
            let d = parse(&dissection)?;
            let graph = oriented_flip_graph(&d);
            let report = lattice_check(&graph)?;
            println!(
                "{}",
                serde_json::json!({
                    "nodes": graph.nodes.len(),
                    "is_lattice": report.is_lattice,
                    "witness": report.witness.map(|(a, b)| vec![a, b]),
                })
            );
            Ok(report.is_lattice)
        }
        Command::Render { dissection, kind } => {
            let d = parse(&dissection)?;
            let graph = oriented_flip_graph(&d);
            let (fan, fan_kind) = match kind {
                VectorKind::G => (build_gfan_with(&d, graph).fan, FanKind::G),
                VectorKind::D => (build_dfan_with(&d, graph), FanKind::D),
                VectorKind::C => {
                    return Err(accordia_core::Error::BadLabel(
                        "rendering draws the g- or d-vector fan".into(),
                    ))
                }
            };
            print!("{}", emit_svg_stereographic(&d, &fan, fan_kind)?);
            Ok(true)
        }
        Command::Selftest { max_n } => {
            let report = run_selftest(max_n);
            print!("{}", report.render());
            Ok(report.all_pass())
        }
    }
}
