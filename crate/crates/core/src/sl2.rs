//! Integer 2×2 matrices and the generators of the modular group.

use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1, 0, 0, 1);
    /// `[[1,1],[0,1]]`
    pub const T: Mat2 = Mat2::new(1, 1, 0, 1);
    /// `[[0,-1],[1,0]]`
    pub const S: Mat2 = Mat2::new(0, -1, 1, 0);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn t_pow(k: i64) -> Self {
        Mat2::new(1, k, 0, 1)
    }

    pub fn neg(&self) -> Self {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }

    /// Equality in `PSL(2,ℤ)`.
    pub fn proj_eq(&self, other: &Mat2) -> bool {
        self == other || *self == other.neg()
    }

    pub fn apply(&self, x: i64, y: i64) -> (i64, i64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_unimodular(&self) -> Self {
        debug_assert_eq!(self.det(), 1);
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{},{}]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Returns `(g, x, y)` with `x·a + y·b = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn generator_relations() {
        assert_eq!(Mat2::S * Mat2::S, Mat2::IDENTITY.neg());
        let st = Mat2::S * Mat2::T;
        assert_eq!(st * st * st, Mat2::IDENTITY.neg());
        assert!((st * st * st).proj_eq(&Mat2::IDENTITY));
    }

    proptest! {
        #[test]
        fn ext_gcd_bezout(a in -500i64..500, b in -500i64..500) {
            let (g, x, y) = ext_gcd(a, b);
            prop_assert_eq!(x * a + y * b, g);
            prop_assert_eq!(g, num_integer::Integer::gcd(&a, &b));
        }
    }
}
