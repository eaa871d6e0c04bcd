//! JSON and CSV export of curves, profiles and traces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::ConservationRecord;
use crate::geom::{CurvatureProfile, SampledCurve};
use crate::linalg::Point3;
use crate::stationary::ModularPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Json => "json",
            Self::Csv => "csv",
        }
    }
}

/// Fixed 17-significant-digit float formatting.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_table<const W: usize>(header: [&str; W], rows: impl Iterator<Item = [f64; W]>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.map(fmt_f64).join(","));
        out.push('\n');
    }
    out
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct PolylineRecord {
    s: f64,
    re_z1: f64,
    im_z1: f64,
    re_z2: f64,
    im_z2: f64,
}

#[derive(Serialize)]
struct PointRecord {
    x: f64,
    y: f64,
    z: f64,
}

pub fn polyline(curve: &SampledCurve, format: Format) -> Result<String> {
    let rows = curve.nodes().into_iter().zip(&curve.samples).map(|(s, p)| [s, p.z1.re, p.z1.im, p.z2.re, p.z2.im]);
    match format {
        Format::Csv => Ok(csv_table(["s", "re_z1", "im_z1", "re_z2", "im_z2"], rows)),
        Format::Json => {
            let recs: Vec<PolylineRecord> =
                rows.map(|[s, re_z1, im_z1, re_z2, im_z2]| PolylineRecord { s, re_z1, im_z1, re_z2, im_z2 }).collect();
            to_json(&recs)
        }
    }
}

pub fn points(pts: &[Point3], format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(csv_table(["x", "y", "z"], pts.iter().copied())),
        Format::Json => to_json(&pts.iter().map(|p| PointRecord { x: p[0], y: p[1], z: p[2] }).collect::<Vec<_>>()),
    }
}

pub fn profile_csv(k: &CurvatureProfile) -> String {
    let h = k.spacing();
    csv_table(["s", "k"], k.values.iter().enumerate().map(|(i, v)| [i as f64 * h, *v]))
}

/// Reads an `s,k` table at uniform nodes; the period is node count × spacing.
pub fn read_profile_csv(text: &str) -> Result<CurvatureProfile> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    if headers.len() != 2 || &headers[0] != "s" || &headers[1] != "k" {
        return Err(Error::Parse("profile header must be `s,k`".into()));
    }
    let mut s = Vec::new();
    let mut k = Vec::new();
    for rec in rdr.deserialize::<(f64, f64)>() {
        let (a, b) = rec.map_err(|e| Error::Parse(e.to_string()))?;
        s.push(a);
        k.push(b);
    }
    if s.len() < 2 {
        return Err(Error::Parse("profile needs at least two nodes".into()));
    }
    let h = s[1] - s[0];
    if h.is_nan() || h <= 0.0 {
        return Err(Error::Parse("nodes must increase".into()));
    }
    if let Some(i) = s.windows(2).position(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1.0)) {
        return Err(Error::Parse(format!("non-uniform spacing at row {}", i + 2)));
    }
    CurvatureProfile::new(k, h * s.len() as f64)
}

pub fn conservation_csv(records: &[ConservationRecord]) -> String {
    csv_table(
        ["t", "rho1", "rho2", "rho3", "max_abs_k"],
        records.iter().map(|r| [r.t, r.integrals[0], r.integrals[1], r.integrals[2], r.max_abs]),
    )
}

pub fn modular_trace_csv(points: &[ModularPoint]) -> String {
    csv_table(
        ["e1", "e3", "phi2_regularized", "lambda", "omega", "period_function"],
        points.iter().map(|p| [p.e1, p.e3, p.phi2_regularized, p.lambda, p.omega, p.period_function]),
    )
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    to_json(value)
}
