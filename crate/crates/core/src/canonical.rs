//! Constant matrices of the mode basis `(a₁†, a₁, a₂†, a₂)`.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

pub type Mat2 = Matrix2<Complex64>;
pub type Mat4 = Matrix4<Complex64>;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `diag(1, −1)`.
pub fn z() -> Mat2 {
    Mat2::from_diagonal(&nalgebra::Vector2::new(re(1.0), re(-1.0)))
}

/// Antidiagonal `[[0, 1], [1, 0]]`, swapping `a` and `a†` within a mode.
pub fn x() -> Mat2 {
    Mat2::new(re(0.0), re(1.0), re(1.0), re(0.0))
}

pub fn identity2() -> Mat2 {
    Mat2::identity()
}

pub fn identity4() -> Mat4 {
    Mat4::identity()
}

/// Block-diagonal matrix `a ⊕ b`.
pub fn direct_sum(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(b);
    m
}

/// Symplectic form `E = Z ⊕ Z`.
pub fn e() -> Mat4 {
    direct_sum(&z(), &z())
}

/// Partial mirror reflection `T = I ⊕ X` (time reversal on mode 2).
pub fn t() -> Mat4 {
    direct_sum(&identity2(), &x())
}
