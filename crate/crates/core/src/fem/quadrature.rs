//! Quadrature on the reference triangle `{(ξ, η) : ξ, η ≥ 0, ξ + η ≤ 1}`.
//! Weights sum to the reference area 1/2.

#![allow(clippy::excessive_precision)]

use crate::mesh::Point;

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    points: Vec<Point>,
    weights: Vec<f64>,
    degree: usize,
}

impl QuadratureRule {
    /// Symmetric 6-point rule, exact for total degree 4.
    pub fn degree4() -> Self {
        let orbits = [
            (0.111_690_794_839_005_732_847_503_504_216_561, 0.445_948_490_915_964_886_318_329_253_883_052),
            (0.054_975_871_827_660_933_819_163_162_450_105, 0.091_576_213_509_770_743_459_571_463_402_202),
        ];
        let mut rule = Self::empty(4);
        for (w, a) in orbits {
            rule.push_s21(w, a);
        }
        rule
    }

    /// Symmetric 12-point rule, exact for total degree 6.
    pub fn degree6() -> Self {
        let mut rule = Self::empty(6);
        rule.push_s21(0.058_393_137_863_189_699_282_844_848_777_040, 0.249_286_745_170_910_401_265_933_382_311_744);
        rule.push_s21(0.025_422_453_185_103_413_476_517_717_224_076, 0.063_089_014_491_502_235_691_286_189_477_880);
        let (w, a, b) = (
            0.041_425_537_809_186_776_953_652_050_332_775,
            0.053_145_049_844_816_933_810_370_002_832_784,
            0.310_352_451_033_784_426_348_346_085_789_804,
        );
        let c = 1.0 - a - b;
        for (x, y) in [(a, b), (b, a), (a, c), (c, a), (b, c), (c, b)] {
            rule.points.push([x, y]);
            rule.weights.push(w);
        }
        rule
    }

    /// Collapsed (Duffy) tensor Gauss-Legendre rule with `m` points per
    /// direction; exact for total degree `2m - 2`.
    pub fn collapsed_gauss(m: usize) -> Self {
        let (nodes, weights) = gauss_legendre_unit(m);
        let mut rule = Self::empty(2 * m - 2);
        for (a, wa) in nodes.iter().zip(&weights) {
            for (b, wb) in nodes.iter().zip(&weights) {
                rule.points.push([a * (1.0 - b), *b]);
                rule.weights.push(wa * wb * (1.0 - b));
            }
        }
        rule
    }

    /// Cheapest available rule exact for polynomials of total degree `degree`.
    pub fn for_degree(degree: usize) -> Self {
        match degree {
            0..=4 => Self::degree4(),
            5..=6 => Self::degree6(),
            d => Self::collapsed_gauss((d + 3) / 2),
        }
    }

    fn empty(degree: usize) -> Self {
        Self {
            points: Vec::new(),
            weights: Vec::new(),
            degree,
        }
    }

    fn push_s21(&mut self, w: f64, a: f64) {
        let b = 1.0 - 2.0 * a;
        for p in [[a, a], [a, b], [b, a]] {
            self.points.push(p);
            self.weights.push(w);
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Polynomial exactness degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Barycentric coordinates `(1 - ξ - η, ξ, η)` of every point.
    pub fn barycentric(&self) -> Vec<[f64; 3]> {
        self.points
            .iter()
            .map(|&[x, y]| [1.0 - x - y, x, y])
            .collect()
    }

    pub fn integrate(&self, f: impl Fn(Point) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&p, &w)| w * f(p))
            .sum()
    }
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre_unit(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // Legendre recurrence for P_m(x) and P_m'(x)
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { x } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            dp = m as f64 * (x * pm - pm1) / (x * x - 1.0);
            let dx = pm / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(0.5 * (1.0 - x));
        weights.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}
