//! Sampled surface meshes and the text formats they are written in.
//! OBJ vertices use the shortest float representation that round-trips;
//! CSV values are written with 17 significant digits for the same reason.

use crate::domain::Domain;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse: {0}")]
    Parse(String),
    #[error("domain could not be sampled after {attempts} shrink steps")]
    Unsampleable { attempts: u32 },
}

#[derive(Clone, Debug)]
pub struct ScalarField {
    pub name: String,
    pub values: Vec<f64>,
}

/// Row-major quad grid; vertex (r, c) sits at index r * cols + c.
#[derive(Clone, Debug)]
pub struct SurfaceMesh {
    pub rows: usize,
    pub cols: usize,
    pub params: Vec<(f64, f64)>,
    pub vertices: Vec<[f64; 3]>,
    pub fields: Vec<ScalarField>,
}

#[derive(Debug)]
pub struct SampleOutcome {
    pub mesh: SurfaceMesh,
    pub requested: Domain<f64>,
    pub domain: Domain<f64>,
    pub shrink_steps: u32,
}

const MAX_SHRINK_STEPS: u32 = 60;

/// Sample an evaluator over a grid. If any point fails, the domain is
/// shrunk by 10% about its center and the whole grid is retried, so a
/// partially singular boundary degrades gracefully. A singularity at the
/// center cannot be shrunk away and surfaces as `Unsampleable`.
pub fn sample_chart(
    eval: impl Fn(f64, f64) -> Option<[f64; 3]>,
    requested: &Domain<f64>,
    rows: usize,
    cols: usize,
) -> Result<SampleOutcome, MeshError> {
    assert!(rows >= 2 && cols >= 2);
    for step in 0..=MAX_SHRINK_STEPS {
        let domain = requested.shrink(0.9f64.powi(step as i32));
        let mut params = Vec::with_capacity(rows * cols);
        let mut vertices = Vec::with_capacity(rows * cols);
        let mut ok = true;
        'grid: for r in 0..rows {
            let t = r as f64 / (rows - 1) as f64;
            for c in 0..cols {
                let s = c as f64 / (cols - 1) as f64;
                let u = domain.u0 + s * domain.width();
                let v = domain.v0 + t * domain.height();
                match eval(u, v) {
                    Some(p) => {
                        params.push((u, v));
                        vertices.push(p);
                    }
                    None => {
                        ok = false;
                        break 'grid;
                    }
                }
            }
        }
        if ok {
            return Ok(SampleOutcome {
                mesh: SurfaceMesh {
                    rows,
                    cols,
                    params,
                    vertices,
                    fields: Vec::new(),
                },
                requested: requested.clone(),
                domain,
                shrink_steps: step,
            });
        }
    }
    Err(MeshError::Unsampleable {
        attempts: MAX_SHRINK_STEPS,
    })
}

pub fn obj_text(mesh: &SurfaceMesh) -> String {
    let mut out = String::new();
    for v in &mesh.vertices {
        writeln!(out, "v {} {} {}", v[0], v[1], v[2]).unwrap();
    }
    for r in 0..mesh.rows - 1 {
        for c in 0..mesh.cols - 1 {
            let a = r * mesh.cols + c + 1;
            writeln!(
                out,
                "f {} {} {} {}",
                a,
                a + 1,
                a + mesh.cols + 1,
                a + mesh.cols
            )
            .unwrap();
        }
    }
    out
}

/// Vertex positions of an OBJ document; faces and other elements are
/// ignored.
pub fn obj_vertices(text: &str) -> Result<Vec<[f64; 3]>, MeshError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let mut it = line.split_whitespace();
        if it.next() != Some("v") {
            continue;
        }
        let mut p = [0.0; 3];
        for slot in &mut p {
            let tok = it
                .next()
                .ok_or_else(|| MeshError::Parse(format!("line {}: short vertex", lineno + 1)))?;
            *slot = tok
                .parse()
                .map_err(|e| MeshError::Parse(format!("line {}: {e}", lineno + 1)))?;
        }
        out.push(p);
    }
    Ok(out)
}

/// CSV with a header row; every value is printed as `{:.16e}`.
pub fn csv_text(headers: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = String::new();
    out.push_str(&headers.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), headers.len());
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Parameter and field columns of a sampled mesh: u, v, then each named
/// field in order.
pub fn mesh_csv(mesh: &SurfaceMesh) -> String {
    let mut headers = vec!["u", "v"];
    for f in &mesh.fields {
        headers.push(&f.name);
    }
    let rows = (0..mesh.params.len()).map(|k| {
        let mut row = vec![mesh.params[k].0, mesh.params[k].1];
        for f in &mesh.fields {
            row.push(f.values[k]);
        }
        row
    });
    csv_text(&headers, rows)
}

/// Write via a temporary file and rename, so a crash cannot leave a
/// truncated artifact behind.
pub fn write_atomic(path: &Path, content: &str) -> Result<(), MeshError> {
    let tmp = path.with_extension("tmp-write");
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}
