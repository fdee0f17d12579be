//! Exhaustive enumeration of hollow dissections for the self-test driver and
//! the structural suites. Backtracking over non-crossing diagonal subsets.

use crate::polygon::{Circle, Diag, Dissection, Parity};

/// All dissections of the hollow n-gon, canonically ordered. Counts follow
/// the super-Catalan sequence: 1, 3, 11, 45, 197, 903 for n = 3..8.
pub fn all_dissections(n: usize) -> Vec<Dissection> {
    let circle = Circle::new(n).expect("n >= 3");
    let candidates = circle.internal_diagonals(Parity::Hollow);
    let mut out = Vec::new();
    let mut current: Vec<Diag> = Vec::new();
    fn rec(
        circle: Circle,
        candidates: &[Diag],
        start: usize,
        current: &mut Vec<Diag>,
        out: &mut Vec<Dissection>,
    ) {
        out.push(
            Dissection::from_iter(circle.n, Parity::Hollow, current.iter().copied())
                .expect("non-crossing by construction"),
        );
        for i in start..candidates.len() {
            let d = candidates[i];
            if current.iter().all(|c| !circle.crosses(*c, d)) {
                current.push(d);
                rec(circle, candidates, i + 1, current, out);
                current.pop();
            }
        }
    }
    rec(circle, &candidates, 0, &mut current, &mut out);
    out.sort_by(|a, b| a.diagonals().cmp(b.diagonals()));
    out
}

/// Dissections with every cell a triangle.
pub fn all_triangulations(n: usize) -> Vec<Dissection> {
    all_dissections(n)
        .into_iter()
        .filter(|d| d.len() == n - 3)
        .collect()
}

/// Triangulations refining the given dissection.
pub fn refining_triangulations(d: &Dissection) -> Vec<Dissection> {
    all_triangulations(d.n())
        .into_iter()
        .filter(|t| d.diagonals().iter().all(|x| t.contains(*x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn super_catalan_counts() {
        let expected = [(3, 1), (4, 3), (5, 11), (6, 45), (7, 197), (8, 903)];
        for (n, count) in expected {
            assert_eq!(all_dissections(n).len(), count, "n = {n}");
        }
    }

    #[test]
    fn catalan_triangulation_counts() {
        let expected = [(3, 1), (4, 2), (5, 5), (6, 14), (7, 42)];
        for (n, count) in expected {
            assert_eq!(all_triangulations(n).len(), count, "n = {n}");
        }
    }

    #[test]
    fn refinements_contain_the_dissection() {
        let d = Dissection::from_iter(
            7,
            crate::polygon::Parity::Hollow,
            [
                Diag::new(3, 7).unwrap(),
                Diag::new(3, 13).unwrap(),
                Diag::new(9, 13).unwrap(),
            ],
        )
        .unwrap();
        let refs = refining_triangulations(&d);
        // the quadrilateral cell {3,7,9,13} splits two ways
        assert_eq!(refs.len(), 2);
        for t in refs {
            assert!(d.diagonals().iter().all(|x| t.contains(*x)));
        }
    }
}
