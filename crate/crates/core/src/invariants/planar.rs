use std::f64::consts::TAU;

use crate::error::{Error, Result};

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn segment(points: &[[f64; 2]], i: usize) -> [f64; 2] {
    sub(points[(i + 1) % points.len()], points[i])
}

/// Winding number of the tangent direction of a closed polyline (counterclockwise positive).
pub fn turning_number(planar: &[[f64; 2]]) -> Result<i64> {
    let n = planar.len();
    if n < 3 {
        return Err(Error::InvalidInput("closed polyline needs at least three points".into()));
    }
    let scale = planar.iter().fold(0.0f64, |a, p| a.max(p[0].abs()).max(p[1].abs())).max(f64::MIN_POSITIVE);
    let mut total = 0.0;
    for i in 0..n {
        let a = segment(planar, i);
        let b = segment(planar, (i + 1) % n);
        if dot(a, a).sqrt() <= 1e-14 * scale {
            return Err(Error::DegenerateSegment(i));
        }
        total += cross(a, b).atan2(dot(a, b));
    }
    Ok((total / TAU).round() as i64)
}

/// A transversal double point of a closed polyline with heights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub segments: (usize, usize),
    pub params: (f64, f64),
    pub point: [f64; 2],
    pub sign: i8,
    pub angle: f64,
}

pub const MIN_CROSSING_ANGLE: f64 = 1e-3;
const VERTEX_BAND: f64 = 1e-9;

/// Outcome of a crossing sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    Crossings(Vec<Crossing>),
    /// A crossing fell within the numerical band of a vertex; resample and retry.
    NearVertex,
}

/// Double points of the closed polyline `planar` with over/under decided by `height`.
///
/// The sign of a crossing is the sign of `over × under` for the segment directions.
pub fn crossings(planar: &[[f64; 2]], height: &[f64]) -> Result<Sweep> {
    let n = planar.len();
    let mut order: Vec<usize> = (0..n).collect();
    let xmin = |i: usize| planar[i][0].min(planar[(i + 1) % n][0]);
    let xmax = |i: usize| planar[i][0].max(planar[(i + 1) % n][0]);
    order.sort_by(|&a, &b| xmin(a).total_cmp(&xmin(b)));
    let mut found = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        let hi = xmax(i);
        let ri = segment(planar, i);
        for &j in &order[pos + 1..] {
            if xmin(j) > hi {
                break;
            }
            if (i + 1) % n == j || (j + 1) % n == i {
                continue;
            }
            let rj = segment(planar, j);
            let denom = cross(ri, rj);
            let qp = sub(planar[j], planar[i]);
            let lens = dot(ri, ri).sqrt() * dot(rj, rj).sqrt();
            if denom.abs() <= 1e-15 * lens {
                if cross(qp, ri).abs() <= 1e-12 * lens.sqrt() * dot(qp, qp).sqrt().max(1e-300) {
                    let t0 = dot(qp, ri) / dot(ri, ri);
                    let t1 = t0 + dot(rj, ri) / dot(ri, ri);
                    if t0.max(t1) >= 0.0 && t0.min(t1) <= 1.0 {
                        return Err(Error::Tangency(0.0));
                    }
                }
                continue;
            }
            let t = cross(qp, rj) / denom;
            let u = cross(qp, ri) / denom;
            if !(-VERTEX_BAND..1.0 + VERTEX_BAND).contains(&t) || !(-VERTEX_BAND..1.0 + VERTEX_BAND).contains(&u) {
                continue;
            }
            if t.abs() < VERTEX_BAND || (1.0 - t).abs() < VERTEX_BAND || u.abs() < VERTEX_BAND || (1.0 - u).abs() < VERTEX_BAND {
                return Ok(Sweep::NearVertex);
            }
            let angle = (denom.abs() / lens).asin();
            if angle < MIN_CROSSING_ANGLE {
                return Err(Error::Tangency(angle));
            }
            let zi = height[i] + t * (height[(i + 1) % n] - height[i]);
            let zj = height[j] + u * (height[(j + 1) % n] - height[j]);
            let (over, under) = if zi > zj { (ri, rj) } else { (rj, ri) };
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            let (ta, tb) = if i < j { (t, u) } else { (u, t) };
            found.push(Crossing {
                segments: (a, b),
                params: (ta, tb),
                point: [planar[i][0] + t * ri[0], planar[i][1] + t * ri[1]],
                sign: if cross(over, under) > 0.0 { 1 } else { -1 },
                angle,
            });
        }
    }
    found.sort_by_key(|c| c.segments);
    Ok(Sweep::Crossings(found))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize, laps: f64) -> Vec<[f64; 2]> {
        (0..n)
            .map(|i| {
                let t = laps * TAU * i as f64 / n as f64;
                [t.cos(), t.sin()]
            })
            .collect()
    }

    #[test]
    fn circle_turns_once() {
        assert_eq!(turning_number(&circle(100, 1.0)).unwrap(), 1);
        let mut cw = circle(100, 1.0);
        cw.reverse();
        assert_eq!(turning_number(&cw).unwrap(), -1);
    }

    #[test]
    fn degenerate_segment() {
        let pts = vec![[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        assert!(matches!(turning_number(&pts), Err(Error::DegenerateSegment(0))));
    }

    #[test]
    fn figure_eight_has_one_crossing() {
        let n = 400;
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let t = TAU * (i as f64 + 0.5) / n as f64;
                [t.sin(), (2.0 * t).sin() * 0.5]
            })
            .collect();
        let z: Vec<f64> = (0..n).map(|i| (TAU * (i as f64 + 0.5) / n as f64).cos()).collect();
        let Sweep::Crossings(c) = crossings(&pts, &z).unwrap() else { panic!("near vertex") };
        assert_eq!(c.len(), 1);
        assert_eq!(turning_number(&pts).unwrap(), 0);
    }
}
