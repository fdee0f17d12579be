//! Property tests: crossing symmetry, text round-trips, and equivariance of
//! heights and vertex points under label symmetries.

use accordia_core::complex::oriented_flip_graph;
use accordia_core::enumerate::all_dissections;
use accordia_core::polygon::{accordion_diagonals, Circle, Diag, Dissection, Parity};
use accordia_core::polytope::{heights_map, vertex_point};
use accordia_core::symmetry::Symmetry;
use accordia_core::text::{parse_dissection, serialize_dissection};
use accordia_core::vectors::height;
use proptest::prelude::*;

fn arb_diag(n: usize) -> impl Strategy<Value = Diag> {
    let m = 2 * n;
    (1..=m, 1..=m).prop_filter_map("same-parity distinct pair", move |(a, b)| {
        if a == b || a % 2 != b % 2 {
            None
        } else {
            Some(Diag::new(a, b).unwrap())
        }
    })
}

fn arb_dissection() -> impl Strategy<Value = Dissection> {
    (3usize..=7).prop_flat_map(|n| {
        let all = all_dissections(n);
        let len = all.len();
        (0..len).prop_map(move |i| all[i].clone())
    })
}

fn arb_diag_pair() -> impl Strategy<Value = (usize, Diag, Diag)> {
    (3usize..=8).prop_flat_map(|n| (Just(n), arb_diag(n), arb_diag(n)))
}

proptest! {
    #[test]
    fn crosses_symmetric_irreflexive((n, d1, d2) in arb_diag_pair()) {
        let circle = Circle::new(n).unwrap();
        prop_assert!(!circle.crosses(d1, d1));
        prop_assert_eq!(circle.crosses(d1, d2), circle.crosses(d2, d1));
        if d1.shares_endpoint(&d2) {
            prop_assert!(!circle.crosses(d1, d2));
        }
    }

    #[test]
    fn parse_serialize_round_trip(d in arb_dissection()) {
        let text = serialize_dissection(&d);
        let back = parse_dissection(&text).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn cells_count_diagonals(d in arb_dissection()) {
        prop_assert_eq!(d.cells().len(), d.len() + 1);
    }

    #[test]
    fn heights_are_symmetry_equivariant(d in arb_dissection(), shift in 0usize..8, reflect in any::<bool>()) {
        let points = d.circle().points();
        let sigma = if reflect {
            Symmetry::Reflection { offset: (2 * shift) % points }
        } else {
            Symmetry::Rotation { shift: (2 * shift) % points }
        };
        let image = sigma.apply_dissection(&d);
        for q in accordion_diagonals(&d) {
            let h = height(&d, q).unwrap();
            let hq = height(&image, sigma.apply_diag(points, q)).unwrap();
            prop_assert_eq!(h, hq);
        }
    }

    #[test]
    fn vertex_points_are_symmetry_equivariant(d in arb_dissection(), shift in 0usize..8, reflect in any::<bool>()) {
        prop_assume!(!d.is_empty());
        let points = d.circle().points();
        let sigma = if reflect {
            Symmetry::Reflection { offset: (2 * shift) % points }
        } else {
            Symmetry::Rotation { shift: (2 * shift) % points }
        };
        let image = sigma.apply_dissection(&d);
        let heights = heights_map(&d);
        let image_heights = heights_map(&image);
        let graph = oriented_flip_graph(&d);
        for face in graph.nodes.iter().take(4) {
            let p = vertex_point(&d, &heights, face);
            let mut image_face: Vec<Diag> =
                face.iter().map(|x| sigma.apply_diag(points, *x)).collect();
            image_face.sort();
            let p_image = vertex_point(&image, &image_heights, &image_face);
            prop_assert_eq!(p_image, sigma.apply_vector(&d, &p));
        }
    }
}

#[test]
fn parity_mixture_rejected() {
    assert!(Diag::new(3, 8).is_err());
    assert!(Dissection::from_iter(4, Parity::Hollow, [Diag::new(2, 6).unwrap()]).is_err());
}
