//! Instance, trajectory and free-space file formats.
//!
//! JSON floats are written in scientific notation with 17 significant
//! digits, so a save/load round trip is bit-identical.

use sc_freespace::{CellFreeSpace, ExternalCriticalPoint, FreeSpaceDiagram, InternalCriticalPoint, InternalScan};
use sc_geometry::{free_interval_point_vs_segment, Point2, SCInstance, Trajectory};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: line {line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },
    #[error("{path}: {msg}")]
    Invalid { path: PathBuf, msg: String },
    #[error("unknown format {0:?}")]
    Format(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::Io { path: path.to_path_buf(), source }
}

/// On-disk SC instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub trajectory: Vec<[f64; 2]>,
    pub m: usize,
    pub ell: f64,
    pub d: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

impl InstanceFile {
    pub fn from_instance(inst: &SCInstance) -> Self {
        InstanceFile { trajectory: points(&inst.t), m: inst.m, ell: inst.ell, d: inst.d, margin: None, meta: None }
    }

    pub fn instance(&self) -> Result<SCInstance, String> {
        if self.trajectory.len() < 2 {
            return Err("trajectory needs at least two vertices".into());
        }
        if !(self.ell.is_finite() && self.d.is_finite()) || self.margin.is_some_and(|m| !m.is_finite()) {
            return Err("non-finite number".into());
        }
        let t = trajectory_of(&self.trajectory).map_err(|e| e.to_string())?;
        Ok(SCInstance::new(t, self.m, self.ell, self.d))
    }
}

pub fn points(t: &Trajectory) -> Vec<[f64; 2]> {
    t.vertices().iter().map(|p| [p.x, p.y]).collect()
}

fn trajectory_of(pts: &[[f64; 2]]) -> Result<Trajectory, sc_geometry::GeometryError> {
    Trajectory::new(pts.iter().map(|p| Point2::new(p[0], p[1])).collect())
}

struct Sci17;

impl serde_json::ser::Formatter for Sci17 {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> std::io::Result<()> {
        write!(w, "{v:.16e}")
    }
}

/// Pretty JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sci17);
    v.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

pub fn write_json<T: Serialize>(v: &T, path: &Path) -> Result<(), IoError> {
    std::fs::write(path, to_json(v) + "\n").map_err(io_err(path))
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(io_err(path))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse { path: path.to_path_buf(), line: e.line(), msg: e.to_string() })
}

pub fn save_instance(inst: &InstanceFile, path: &Path) -> Result<(), IoError> {
    write_json(inst, path)
}

pub fn load_instance(path: &Path) -> Result<InstanceFile, IoError> {
    let f: InstanceFile = parse_json(path, &read(path)?)?;
    f.instance().map_err(|msg| IoError::Invalid { path: path.to_path_buf(), msg })?;
    Ok(f)
}

/// Reads `x,y` lines; blank lines and `#` comments are skipped.
pub fn parse_csv_trajectory(path: &Path, text: &str) -> Result<Trajectory, IoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut pts = Vec::new();
    for rec in rdr.records() {
        let perr = |line: usize, msg: String| IoError::Parse { path: path.to_path_buf(), line, msg };
        let rec = rec.map_err(|e| perr(e.position().map_or(0, |p| p.line() as usize), e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != 2 {
            return Err(perr(line, format!("expected 2 fields, found {}", rec.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| perr(line, format!("{s:?}: {e}")));
        pts.push([num(&rec[0])?, num(&rec[1])?]);
    }
    trajectory_of(&pts).map_err(|e| IoError::Invalid { path: path.to_path_buf(), msg: e.to_string() })
}

/// A trajectory from CSV (by extension) or JSON. JSON may be a bare point
/// list or any object with a `trajectory` field.
pub fn load_trajectory(path: &Path) -> Result<Trajectory, IoError> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        return parse_csv_trajectory(path, &text);
    }
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Shape {
        Bare(Vec<[f64; 2]>),
        Wrapped { trajectory: Vec<[f64; 2]> },
    }
    let pts = match parse_json::<Shape>(path, &text)? {
        Shape::Bare(p) | Shape::Wrapped { trajectory: p } => p,
    };
    trajectory_of(&pts).map_err(|e| IoError::Invalid { path: path.to_path_buf(), msg: e.to_string() })
}

/// Joins trajectories into one, with a separator vertex between
/// consecutive parts. Each separator sits 4× the bounding-box diameter
/// from the box centre, on alternating sides. Returns the 0-based indices
/// of the separator vertices.
pub fn concat_with_separator(parts: &[Trajectory]) -> (Trajectory, Vec<usize>) {
    let all: Vec<Point2> = parts.iter().flat_map(|t| t.vertices().iter().copied()).collect();
    let (lo, hi) = Trajectory::new(all).expect("parts are non-empty").bounding_box();
    let c = lo.lerp(hi, 0.5);
    let diam = lo.dist(hi).max(1.0);
    let mut v = Vec::new();
    let mut seps = Vec::new();
    for (k, t) in parts.iter().enumerate() {
        if k > 0 {
            seps.push(v.len());
            let side = if k % 2 == 1 { 1.0 } else { -1.0 };
            v.push(Point2::new(c.x + side * 4.0 * diam, c.y));
        }
        v.extend_from_slice(t.vertices());
    }
    (Trajectory::new(v).expect("non-empty"), seps)
}

#[derive(Serialize)]
struct FsdJson<'a> {
    n1: usize,
    n2: usize,
    d: f64,
    cells: Vec<CellFreeSpace>,
    external: &'a [ExternalCriticalPoint],
    #[serde(skip_serializing_if = "Option::is_none")]
    internal: Option<Vec<InternalCriticalPoint>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsdFormat {
    Json,
    Svg,
}

impl std::str::FromStr for FsdFormat {
    type Err = IoError;
    fn from_str(s: &str) -> Result<Self, IoError> {
        match s {
            "json" => Ok(FsdFormat::Json),
            "svg" => Ok(FsdFormat::Svg),
            _ => Err(IoError::Format(s.into())),
        }
    }
}

fn internal_points(fsd: &FreeSpaceDiagram, ell: Option<f64>) -> Vec<InternalCriticalPoint> {
    InternalScan::new(fsd, ell).stream().collect()
}

/// JSON dump: per-cell edge intervals (cell-local), external critical
/// points and, if asked, internal ones (both in diagram coordinates).
pub fn fsd_json(fsd: &FreeSpaceDiagram, internal: Option<Option<f64>>) -> String {
    to_json(&FsdJson {
        n1: fsd.n1(),
        n2: fsd.n2(),
        d: fsd.d(),
        cells: fsd.cells().collect(),
        external: fsd.external(),
        internal: internal.map(|ell| internal_points(fsd, ell)),
    })
}

const UNIT: f64 = 100.0;
const SAMPLES: usize = 48;

/// SVG dump. Each nonempty edge interval is one `<path>`; cells are
/// `<rect>`s, free-space boundaries `<polyline>`s, critical points `<circle>`s.
pub fn fsd_svg(fsd: &FreeSpaceDiagram, internal: Option<Option<f64>>) -> String {
    let (w, h) = (fsd.cols() as f64 * UNIT, fsd.rows() as f64 * UNIT);
    let px = |x: f64| x * UNIT;
    let py = |y: f64| h - y * UNIT;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="-10 -10 {} {}">"#, w + 20.0, h + 20.0);
    for j in 0..fsd.rows() {
        for i in 0..fsd.cols() {
            let _ = writeln!(
                s,
                r##"<rect x="{}" y="{}" width="{UNIT}" height="{UNIT}" fill="#eee" stroke="#999"/>"##,
                px(i as f64),
                py(j as f64 + 1.0)
            );
            for part in cell_boundary(fsd, i, j) {
                let pts: Vec<String> = part.iter().map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y))).collect();
                let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="blue"/>"#, pts.join(" "));
            }
        }
    }
    let mut edge = |(x0, y0): (f64, f64), (x1, y1): (f64, f64)| {
        let _ = writeln!(
            s,
            r#"<path d="M{:.3},{:.3} L{:.3},{:.3}" stroke="green" stroke-width="3"/>"#,
            px(x0),
            py(y0),
            px(x1),
            py(y1)
        );
    };
    for j in 0..fsd.rows() {
        for e in 0..fsd.n1() {
            let sp = fsd.vert(e, j);
            if !sp.is_empty() {
                edge((e as f64, sp.lo), (e as f64, sp.hi));
            }
        }
    }
    for k in 0..fsd.n2() {
        for i in 0..fsd.cols() {
            let sp = fsd.horiz(k, i);
            if !sp.is_empty() {
                edge((sp.lo, k as f64), (sp.hi, k as f64));
            }
        }
    }
    for p in fsd.external() {
        let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="2" fill="black"/>"#, px(p.x), py(p.y));
    }
    if let Some(ell) = internal {
        for p in internal_points(fsd, ell) {
            let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="2" fill="red"/>"#, px(p.x), py(p.y));
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Lower and upper boundary of the free set in cell `(i, j)`, sampled
/// column by column; each run of free columns gives two polylines.
fn cell_boundary(fsd: &FreeSpaceDiagram, i: usize, j: usize) -> Vec<Vec<(f64, f64)>> {
    let (a, b) = (fsd.t2().vertex(j), fsd.t2().vertex(j + 1));
    let mut out = Vec::new();
    let (mut lo, mut hi) = (Vec::new(), Vec::new());
    for k in 0..=SAMPLES {
        let x = i as f64 + k as f64 / SAMPLES as f64;
        match free_interval_point_vs_segment(fsd.t1().eval0(x), a, b, fsd.d()) {
            Some(iv) => {
                lo.push((x, j as f64 + iv.lo));
                hi.push((x, j as f64 + iv.hi));
            }
            None if !lo.is_empty() => {
                out.push(std::mem::take(&mut lo));
                out.push(std::mem::take(&mut hi));
            }
            None => {}
        }
    }
    if !lo.is_empty() {
        out.push(lo);
        out.push(hi);
    }
    out
}

pub fn dump_fsd(fsd: &FreeSpaceDiagram, format: FsdFormat, internal: Option<Option<f64>>, path: &Path) -> Result<(), IoError> {
    let text = match format {
        FsdFormat::Json => fsd_json(fsd, internal),
        FsdFormat::Svg => fsd_svg(fsd, internal),
    };
    std::fs::write(path, text).map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_use_seventeen_digits() {
        assert_eq!(to_json(&[0.1f64, -2.0]), "[1.0000000000000001e-1,-2.0000000000000000e0]");
        let back: Vec<f64> = serde_json::from_str(&to_json(&[0.1f64, 1.0 / 3.0])).unwrap();
        assert_eq!(back, vec![0.1, 1.0 / 3.0]);
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        let p = Path::new("t.csv");
        let e = parse_csv_trajectory(p, "# c\n0,0\n1,x\n").unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 3, .. }), "{e}");
        assert_eq!(parse_csv_trajectory(p, "0,0\n# c\n\n1,2\n").unwrap().len(), 2);
    }

    #[test]
    fn separator_is_far() {
        let a = Trajectory::from_xy(&[(0., 0.), (1., 0.)]).unwrap();
        let b = Trajectory::from_xy(&[(0., 1.), (1., 1.)]).unwrap();
        let (t, seps) = concat_with_separator(&[a.clone(), b, a]);
        assert_eq!(t.len(), 8);
        assert_eq!(seps, vec![2, 5]);
        assert!(t.vertex(2).dist(t.vertex(0)) > 3.0 * 2f64.sqrt());
        assert!(t.vertex(5).x < 0.0);
    }
}
