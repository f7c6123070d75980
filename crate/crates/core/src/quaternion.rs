use std::ops::{Mul, Neg};

use rand::Rng;

/// Rotation quaternion, scalar first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const IDENTITY: Quaternion = Quaternion {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    /// Rotation by `angle` radians about `axis` (need not be normalized).
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let (s, c) = (angle / 2.0).sin_cos();
        Quaternion::new(c, axis[0] / n * s, axis[1] / n * s, axis[2] / n * s)
    }

    /// Rotation whose axis and angle are the direction and length of `v`.
    pub fn from_rotation_vector(v: [f64; 3]) -> Self {
        let angle = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if angle == 0.0 {
            Self::IDENTITY
        } else {
            Self::from_axis_angle(v, angle)
        }
    }

    /// Haar-uniform random rotation (Shoemake's subgroup algorithm).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        use std::f64::consts::TAU;
        let u1: f64 = rng.gen();
        let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
        let (s2, c2) = (TAU * rng.gen::<f64>()).sin_cos();
        let (s3, c3) = (TAU * rng.gen::<f64>()).sin_cos();
        Quaternion::new(b * c3, a * s2, a * c2, b * s3)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Quaternion::new(self.w / n, self.x / n, self.y / n, self.z / n)
    }

    pub fn rotate(self, v: [f64; 3]) -> [f64; 3] {
        let p = self * Quaternion::new(0.0, v[0], v[1], v[2]) * self.conj();
        [p.x, p.y, p.z]
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion {
            w: self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            x: self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            y: self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            z: self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        }
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Rotation angle between two orientations, in [0, π]. `q` and `-q` are the
/// same orientation.
pub fn orientation_distance(q: Quaternion, target: Quaternion) -> f64 {
    let re = (target * q.conj()).w;
    2.0 * re.abs().clamp(0.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn distance_basics() {
        let q = Quaternion::from_axis_angle([1.0, 2.0, -0.5], 0.7);
        assert_eq!(orientation_distance(q, q), 0.0);
        assert!(orientation_distance(q, -q) < 1e-12);
        for axis in [
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [1.0, -1.0, 2.0],
        ] {
            let r = Quaternion::from_axis_angle(axis, FRAC_PI_2);
            assert!((orientation_distance(Quaternion::IDENTITY, r) - FRAC_PI_2).abs() < 1e-9);
        }
    }

    #[test]
    fn rotate_matches_right_hand_rule() {
        let r = Quaternion::from_axis_angle([0.0, 0.0, 1.0], FRAC_PI_2);
        let v = r.rotate([1.0, 0.0, 0.0]);
        assert!((v[0]).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_rotations_are_unit_and_spread() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut mean_w2 = 0.0;
        let n = 20_000;
        for _ in 0..n {
            let q = Quaternion::random(&mut rng);
            assert!((q.norm() - 1.0).abs() < 1e-9);
            mean_w2 += q.w * q.w / n as f64;
        }
        // E[w^2] = 1/4 for Haar measure on S^3
        assert!((mean_w2 - 0.25).abs() < 0.01, "{mean_w2}");
    }

    #[test]
    fn metric_axioms_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..2000 {
            let (a, b, c) = (
                Quaternion::random(&mut rng),
                Quaternion::random(&mut rng),
                Quaternion::random(&mut rng),
            );
            let ab = orientation_distance(a, b);
            assert!((ab - orientation_distance(b, a)).abs() < 1e-9);
            assert!(ab <= orientation_distance(a, c) + orientation_distance(c, b) + 1e-9);
        }
    }
}
