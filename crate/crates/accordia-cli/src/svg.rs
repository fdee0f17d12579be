//! Stereographic SVG rendering of three-dimensional g- and d-vector fans.
//! The projection pole sits inside the base cone (all-ones for the g-fan,
//! negated for the d-fan), so the source dissection's cone becomes the outer
//! face. The only floating point in the whole workspace lives here.

use accordia_core::error::{Error, Result};
use accordia_core::fan::Fan;
use accordia_core::polygon::{Diag, Dissection};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanKind {
    G,
    D,
}

/// Projected ray positions in the drawing plane, canonically ordered by
/// diagonal.
pub fn project_rays(fan: &Fan, kind: FanKind) -> Result<Vec<(Diag, f64, f64)>> {
    let dim = fan.rays.values().next().map(|r| r.dim()).unwrap_or(0);
    if dim != 3 {
        return Err(Error::WrongDimension(dim));
    }
    let sign = match kind {
        FanKind::G => 1.0,
        FanKind::D => -1.0,
    };
    let s3 = 3.0f64.sqrt();
    let pole = [sign / s3; 3];
    // orthonormal basis of the plane through the origin orthogonal to the pole
    let s2 = 2.0f64.sqrt();
    let u1 = [1.0 / s2, -1.0 / s2, 0.0];
    let u2 = cross(pole, u1);
    let mut out = Vec::new();
    for (d, r) in &fan.rays {
        let norm = (r.0.iter().map(|&x| (x * x) as f64).sum::<f64>()).sqrt();
        let hat: Vec<f64> = r.0.iter().map(|&x| x as f64 / norm).collect();
        let t: f64 = hat.iter().zip(&pole).map(|(a, b)| a * b).sum();
        let denom = 1.0 - t;
        let proj: Vec<f64> = (0..3).map(|i| (hat[i] - t * pole[i]) / denom).collect();
        let x: f64 = proj.iter().zip(&u1).map(|(a, b)| a * b).sum();
        let y: f64 = proj.iter().zip(&u2).map(|(a, b)| a * b).sum();
        out.push((*d, x, y));
    }
    Ok(out)
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// SVG of the stereographic projection: one labeled point per ray, one line
/// per two-dimensional cone. Deterministic byte-for-byte.
pub fn emit_svg_stereographic(reference: &Dissection, fan: &Fan, kind: FanKind) -> Result<String> {
    if reference.len() != 3 {
        return Err(Error::WrongDimension(reference.len()));
    }
    let rays = project_rays(fan, kind)?;
    let scale = 80.0;
    let circle = reference.circle();
    // two-dimensional cones: pairs of compatible rays
    let labels: Vec<Diag> = rays.iter().map(|(d, _, _)| *d).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if !circle.crosses(labels[i], labels[j]) {
                edges.push((i, j));
            }
        }
    }
    let mut svg = String::new();
    svg.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-260 -260 520 520\" width=\"520\" height=\"520\">\n",
    );
    svg.push_str("  <rect x=\"-260\" y=\"-260\" width=\"520\" height=\"520\" fill=\"white\"/>\n");
    for (i, j) in &edges {
        let (_, x1, y1) = rays[*i];
        let (_, x2, y2) = rays[*j];
        svg.push_str(&format!(
            "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"#555\" stroke-width=\"1\"/>\n",
            x1 * scale,
            y1 * scale,
            x2 * scale,
            y2 * scale
        ));
    }
    for (d, x, y) in &rays {
        svg.push_str(&format!(
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"3\" fill=\"#c22\"/>\n",
            x * scale,
            y * scale
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.4}\" y=\"{:.4}\" font-size=\"10\" font-family=\"monospace\">{}</text>\n",
            x * scale + 5.0,
            y * scale - 5.0,
            d
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use accordia_core::fan::{build_dfan, build_gfan};
    use accordia_core::polygon::{Diag, Dissection, Parity};

    fn running_example() -> Dissection {
        Dissection::from_iter(
            7,
            Parity::Hollow,
            [
                Diag::new(3, 7).unwrap(),
                Diag::new(3, 13).unwrap(),
                Diag::new(9, 13).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn svg_has_all_rays_and_edges() {
        let d = running_example();
        let g = build_gfan(&d);
        let svg = emit_svg_stereographic(&d, &g.fan, FanKind::G).unwrap();
        assert_eq!(svg.matches("<circle").count(), 8);
        assert_eq!(svg.matches("<line").count(), 18);
        assert_eq!(svg.matches("<text").count(), 8);
        // the d-fan renders the same combinatorics at different coordinates
        let df = build_dfan(&d);
        let svg_d = emit_svg_stereographic(&d, &df, FanKind::D).unwrap();
        assert_eq!(svg_d.matches("<line").count(), 18);
        assert_ne!(svg, svg_d);
    }

    #[test]
    fn outer_face_is_the_source_cone_for_both_kinds() {
        let d = running_example();
        let min: Vec<Diag> = accordia_core::polygon::rotate_min(&d).diagonals().to_vec();
        let inside = |corner: &[(f64, f64)], p: (f64, f64)| {
            let sign = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| {
                (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
            };
            let d1 = sign(corner[0], corner[1], p);
            let d2 = sign(corner[1], corner[2], p);
            let d3 = sign(corner[2], corner[0], p);
            (d1 > 0.0 && d2 > 0.0 && d3 > 0.0) || (d1 < 0.0 && d2 < 0.0 && d3 < 0.0)
        };
        let cases = [
            (project_rays(&build_gfan(&d).fan, FanKind::G).unwrap(), "g"),
            (project_rays(&build_dfan(&d), FanKind::D).unwrap(), "d"),
        ];
        for (rays, kind) in cases {
            let corner: Vec<(f64, f64)> = rays
                .iter()
                .filter(|(q, _, _)| min.contains(q))
                .map(|(_, x, y)| (*x, *y))
                .collect();
            assert_eq!(corner.len(), 3);
            for (q, x, y) in &rays {
                if !min.contains(q) {
                    assert!(inside(&corner, (*x, *y)), "{kind}-fan ray {q} outside");
                }
            }
        }
    }

    #[test]
    fn wrong_dimension_rejected() {
        let d = Dissection::from_iter(4, Parity::Hollow, [Diag::new(3, 7).unwrap()]).unwrap();
        let g = build_gfan(&d);
        assert!(matches!(
            emit_svg_stereographic(&d, &g.fan, FanKind::G),
            Err(Error::WrongDimension(1))
        ));
    }
}
