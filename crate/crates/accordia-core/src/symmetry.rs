//! Label symmetries of the 2n circle preserving the hollow/solid split:
//! rotations by even shifts and reflections with even offset, and their
//! induced signed coordinate action on vectors.

use crate::error::{Error, Result};
use crate::polygon::{Diag, Dissection, Label};
use crate::vectors::IntVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    /// k -> k + shift, shift even
    Rotation { shift: usize },
    /// k -> offset - k, offset even
    Reflection { offset: usize },
}

impl Symmetry {
    pub fn validate(&self, points: usize) -> Result<()> {
        let even = |x: usize| x % 2 == 0;
        match self {
            Symmetry::Rotation { shift } if even(*shift) && *shift < points => Ok(()),
            Symmetry::Reflection { offset } if even(*offset) && *offset < points => Ok(()),
            _ => Err(Error::BadLabel(
                "symmetry shift must be even and in range".into(),
            )),
        }
    }

    pub fn apply_label(&self, points: usize, v: Label) -> Label {
        let m = points as isize;
        let w = match self {
            Symmetry::Rotation { shift } => v as isize + *shift as isize,
            Symmetry::Reflection { offset } => *offset as isize - v as isize,
        };
        ((w - 1).rem_euclid(m) + 1) as usize
    }

    pub fn apply_diag(&self, points: usize, d: Diag) -> Diag {
        Diag::raw(
            self.apply_label(points, d.a()),
            self.apply_label(points, d.b()),
        )
    }

    pub fn apply_dissection(&self, d: &Dissection) -> Dissection {
        let points = d.circle().points();
        Dissection::from_iter(
            d.n(),
            d.parity(),
            d.diagonals().iter().map(|x| self.apply_diag(points, *x)),
        )
        .expect("symmetries preserve non-crossing")
    }

    /// +1 for rotations, -1 for reflections.
    pub fn signature(&self) -> i64 {
        match self {
            Symmetry::Rotation { .. } => 1,
            Symmetry::Reflection { .. } => -1,
        }
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, Symmetry::Rotation { .. })
    }

    /// The induced map on vectors indexed by `source`'s diagonals, landing in
    /// the index set of the image dissection: coordinate at sigma(delta) is
    /// signature * coordinate at delta.
    pub fn apply_vector(&self, source: &Dissection, v: &IntVector) -> IntVector {
        let points = source.circle().points();
        let image = self.apply_dissection(source);
        let mut out = vec![0i64; v.dim()];
        for (i, d) in source.diagonals().iter().enumerate() {
            let target = self.apply_diag(points, *d);
            let j = image.index_of(target).expect("image diagonal");
            out[j] = self.signature() * v.0[i];
        }
        IntVector(out)
    }

    /// Orbit of a diagonal under the cyclic group generated by this symmetry.
    pub fn orbit(&self, points: usize, d: Diag) -> Vec<Diag> {
        let mut out = vec![d];
        let mut cur = self.apply_diag(points, d);
        while cur != d {
            out.push(cur);
            cur = self.apply_diag(points, cur);
        }
        out.sort();
        out.dedup();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::Parity;

    fn diag(a: usize, b: usize) -> Diag {
        Diag::new(a, b).unwrap()
    }

    #[test]
    fn rotation_and_reflection_act_on_labels() {
        let rot = Symmetry::Rotation { shift: 4 };
        assert_eq!(rot.apply_label(16, 1), 5);
        assert_eq!(rot.apply_label(16, 13), 1);
        let refl = Symmetry::Reflection { offset: 2 };
        // k -> 2 - k mod 16: 1 -> 1, 3 -> 15, 2 -> 16
        assert_eq!(refl.apply_label(16, 1), 1);
        assert_eq!(refl.apply_label(16, 3), 15);
        assert_eq!(refl.apply_label(16, 2), 16);
    }

    #[test]
    fn octagon_square_invariant_under_quarter_turn() {
        let d = Dissection::from_iter(
            8,
            Parity::Hollow,
            [diag(1, 5), diag(5, 9), diag(9, 13), diag(1, 13)],
        )
        .unwrap();
        let rot = Symmetry::Rotation { shift: 4 };
        assert_eq!(rot.apply_dissection(&d), d);
        let orbit = rot.orbit(16, diag(1, 5));
        assert_eq!(orbit.len(), 4);
    }
}
