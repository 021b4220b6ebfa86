//! 2×2 tensors used for permeability values.

pub type Tensor2 = [[f64; 2]; 2];

pub const ZERO: Tensor2 = [[0.0; 2]; 2];

pub fn identity() -> Tensor2 {
    [[1.0, 0.0], [0.0, 1.0]]
}

pub fn scaled(a: &Tensor2, s: f64) -> Tensor2 {
    [[s * a[0][0], s * a[0][1]], [s * a[1][0], s * a[1][1]]]
}

pub fn add(a: &Tensor2, b: &Tensor2) -> Tensor2 {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

pub fn sub(a: &Tensor2, b: &Tensor2) -> Tensor2 {
    add(a, &scaled(b, -1.0))
}

pub fn apply(a: &Tensor2, v: [f64; 2]) -> [f64; 2] {
    [
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    ]
}

pub fn is_symmetric(a: &Tensor2) -> bool {
    (a[0][1] - a[1][0]).abs() <= 1e-14 * (a[0][1].abs() + a[1][0].abs()).max(1.0)
}

/// Symmetric with both leading principal minors positive.
pub fn is_spd(a: &Tensor2) -> bool {
    is_symmetric(a) && a[0][0] > 0.0 && a[0][0] * a[1][1] - a[0][1] * a[1][0] > 0.0
}
