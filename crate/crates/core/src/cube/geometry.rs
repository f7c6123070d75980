//! Sticker geometry of the 2x2x2 cube.
//!
//! Axes: +x points through R, +y through U, +z through F. Corner slot `i`
//! sits at `CORNER_POSITIONS[i]`; its three facelets are listed in
//! `CORNER_FACELETS[i]`, starting with the U/D sticker and continuing
//! clockwise as seen from outside the corner.
//!
//! Facelet layout (face order U, D, R, L, F, B; row-major from the upper-left
//! of each face in the usual unfolded net):
//!
//! ```text
//!           ┌──┬──┐
//!           │ 0│ 1│
//!           ├──┼──┤
//!           │ 2│ 3│
//!     ┌──┬──┼──┼──┼──┬──┬──┬──┐
//!     │12│13│16│17│ 8│ 9│20│21│
//!     ├──┼──┼──┼──┼──┼──┼──┼──┤
//!     │14│15│18│19│10│11│22│23│
//!     └──┴──┼──┼──┼──┴──┴──┴──┘
//!           │ 4│ 5│
//!           ├──┼──┤
//!           │ 6│ 7│
//!           └──┴──┘
//! ```

use super::moves::Face;

pub(crate) type Vec3 = [i8; 3];

/// Slot positions: URF, UFL, ULB, UBR, DFR, DLF, DRB, DBL.
pub(crate) const CORNER_POSITIONS: [Vec3; 8] = [
    [1, 1, 1],
    [-1, 1, 1],
    [-1, 1, -1],
    [1, 1, -1],
    [1, -1, 1],
    [-1, -1, 1],
    [1, -1, -1],
    [-1, -1, -1],
];

pub(crate) const CORNER_FACELETS: [[usize; 3]; 8] = [
    [3, 8, 17],
    [2, 16, 13],
    [0, 12, 21],
    [1, 20, 9],
    [5, 19, 10],
    [4, 15, 18],
    [7, 11, 22],
    [6, 23, 14],
];

pub(crate) fn face_normal(face: Face) -> Vec3 {
    match face {
        Face::U => [0, 1, 0],
        Face::D => [0, -1, 0],
        Face::R => [1, 0, 0],
        Face::L => [-1, 0, 0],
        Face::F => [0, 0, 1],
        Face::B => [0, 0, -1],
    }
}

fn face_of_normal(n: Vec3) -> Face {
    Face::ALL
        .into_iter()
        .find(|&f| face_normal(f) == n)
        .expect("axis-aligned unit normal")
}

pub(crate) fn dot(a: Vec3, b: Vec3) -> i8 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Quarter rotation of `v` about the unit axis `axis`. `clockwise` means
/// clockwise when looking at the cube from the tip of `axis` (-90° by the
/// right-hand rule).
pub(crate) fn quarter_turn(axis: Vec3, v: Vec3, clockwise: bool) -> Vec3 {
    let c = cross(axis, v);
    let along = dot(axis, v);
    let s = if clockwise { -1 } else { 1 };
    [
        s * c[0] + axis[0] * along,
        s * c[1] + axis[1] * along,
        s * c[2] + axis[2] * along,
    ]
}

fn slot_at(pos: Vec3) -> usize {
    CORNER_POSITIONS
        .iter()
        .position(|&p| p == pos)
        .expect("corner position")
}

/// Facelet index of the sticker on corner `pos` facing `normal`.
pub(crate) fn facelet_at(pos: Vec3, normal: Vec3) -> usize {
    let face = face_of_normal(normal);
    let slot = slot_at(pos);
    CORNER_FACELETS[slot]
        .into_iter()
        .find(|&f| f / 4 == face as usize)
        .expect("corner has a sticker on this face")
}

/// Returns `(position, normal)` of a facelet.
pub(crate) fn facelet_geometry(facelet: usize) -> (Vec3, Vec3) {
    for (slot, stickers) in CORNER_FACELETS.iter().enumerate() {
        if stickers.contains(&facelet) {
            return (CORNER_POSITIONS[slot], face_normal(Face::ALL[facelet / 4]));
        }
    }
    unreachable!("facelet index out of range: {facelet}")
}

/// Destination map of a quarter turn: sticker at facelet `i` ends up at
/// `map[i]`. With `layer_only`, only corners on the positive side of `axis`
/// move; otherwise the whole cube turns.
pub(crate) fn turn_map(axis: Vec3, clockwise: bool, layer_only: bool) -> [usize; 24] {
    let mut map = [0; 24];
    for (i, dest) in map.iter_mut().enumerate() {
        let (pos, normal) = facelet_geometry(i);
        *dest = if !layer_only || dot(pos, axis) > 0 {
            facelet_at(
                quarter_turn(axis, pos, clockwise),
                quarter_turn(axis, normal, clockwise),
            )
        } else {
            i
        };
    }
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_facelet_listed_once() {
        let mut seen = [false; 24];
        for f in CORNER_FACELETS.iter().flatten() {
            assert!(!seen[*f]);
            seen[*f] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn facelets_sit_on_their_corner() {
        for (slot, stickers) in CORNER_FACELETS.iter().enumerate() {
            let pos = CORNER_POSITIONS[slot];
            for &f in stickers {
                let n = face_normal(Face::ALL[f / 4]);
                // the sticker's face must contain the corner
                assert_eq!(dot(pos, n), 1, "facelet {f} slot {slot}");
            }
            // first sticker is the U/D one
            assert!(matches!(stickers[0] / 4, 0 | 1));
        }
    }

    #[test]
    fn corner_sticker_order_has_consistent_handedness() {
        for (slot, stickers) in CORNER_FACELETS.iter().enumerate() {
            let n0 = face_normal(Face::ALL[stickers[0] / 4]);
            let n1 = face_normal(Face::ALL[stickers[1] / 4]);
            // clockwise seen from outside
            assert_eq!(
                dot(cross(n0, n1), CORNER_POSITIONS[slot]),
                -1,
                "slot {slot}"
            );
        }
    }

    #[test]
    fn u_turn_sends_front_to_left() {
        let v = quarter_turn([0, 1, 0], [0, 0, 1], true);
        assert_eq!(v, [-1, 0, 0]);
    }

    #[test]
    fn turn_maps_are_permutations_of_order_four() {
        for face in Face::ALL {
            let map = turn_map(face_normal(face), true, true);
            let mut seen = [false; 24];
            for &d in &map {
                seen[d] = true;
            }
            assert!(seen.iter().all(|&s| s));
            let mut i_map: [usize; 24] = std::array::from_fn(|i| i);
            for _ in 0..4 {
                i_map = i_map.map(|i| map[i]);
            }
            assert!(i_map.iter().enumerate().all(|(i, &d)| i == d));
        }
    }
}
