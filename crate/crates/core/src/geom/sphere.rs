use crate::linalg::{cross3, dot3, norm3, Point3};
use crate::spectral::SpectralGrid;

/// Componentwise spectral derivative of a periodic sampled curve in ℝ³.
pub fn derivative3(points: &[Point3], period: f64, order: usize) -> Vec<Point3> {
    let g = SpectralGrid::new(points.len(), period);
    let cols: Vec<Vec<f64>> = (0..3).map(|c| g.derivative(&points.iter().map(|p| p[c]).collect::<Vec<_>>(), order)).collect();
    (0..points.len()).map(|i| [cols[0][i], cols[1][i], cols[2][i]]).collect()
}

/// Speed and geodesic curvature `det(η, η', η'')/|η'|³` of a periodic curve on S².
pub fn speed_and_geodesic_curvature(points: &[Point3], period: f64) -> (Vec<f64>, Vec<f64>) {
    let d1 = derivative3(points, period, 1);
    let d2 = derivative3(points, period, 2);
    points
        .iter()
        .zip(d1.iter().zip(&d2))
        .map(|(p, (a, b))| {
            let v = norm3(a);
            (v, dot3(&cross3(p, a), b) / v.powi(3))
        })
        .unzip()
}

/// Rows `(η, T, η × T)` with `T = η'/|η'|`.
pub fn frenet_rotation(point: &Point3, tangent: &Point3) -> [[f64; 3]; 3] {
    let v = norm3(tangent);
    let t = [tangent[0] / v, tangent[1] / v, tangent[2] / v];
    let n = cross3(point, &t);
    std::array::from_fn(|i| [point[i], t[i], n[i]])
}
