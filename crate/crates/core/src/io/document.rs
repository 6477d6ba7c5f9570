use serde::{Deserialize, Serialize};

use crate::develop::{Tiling, VerificationReport};
use crate::error::{Error, Result};
use crate::polyhedron::ConvexPolyhedron;
use crate::quaternion::{Quat, Side, UnitQuat};

pub const POLYHEDRON_SCHEMA: &str = "dualtile/polyhedron";
pub const TILING_SCHEMA: &str = "dualtile/tiling";
pub const SCHEMA_VERSION: u32 = 1;
/// Tiling document vertices must have unit norm within this.
pub const TOL_DOCUMENT_UNIT: f64 = 1e-9;

fn doc_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Document { location: location.into(), message: message.into() }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        doc_err(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })
}

fn render<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn check_header(schema: &str, version: u32, want: &str) -> Result<()> {
    if schema != want {
        return Err(doc_err("schema", format!("expected {want:?}, found {schema:?}")));
    }
    if version != SCHEMA_VERSION {
        return Err(doc_err("version", format!("unsupported version {version}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_length: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<f64>,
}

/// Vertices as `[w, x, y, z]` and faces as index cycles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronDocument {
    pub schema: String,
    pub version: u32,
    pub vertices: Vec<[f64; 4]>,
    pub faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl PolyhedronDocument {
    pub fn from_polyhedron(p: &ConvexPolyhedron, metadata: Option<Metadata>) -> Self {
        Self {
            schema: POLYHEDRON_SCHEMA.into(),
            version: SCHEMA_VERSION,
            vertices: p.vertices().iter().map(|v| v.to_array()).collect(),
            faces: p.faces().to_vec(),
            metadata,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = parse(text)?;
        check_header(&doc.schema, doc.version, POLYHEDRON_SCHEMA)?;
        Ok(doc)
    }

    /// Compact JSON followed by a newline.
    pub fn to_json(&self) -> String {
        render(self)
    }

    /// Validates the document and builds the polyhedron.
    pub fn to_polyhedron(&self) -> Result<ConvexPolyhedron> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let q = Quat::from_array(*v);
            if !q.is_finite() {
                return Err(doc_err(format!("vertices[{i}]"), "non-finite coordinate"));
            }
            let u = UnitQuat::new(q).map_err(|e| doc_err(format!("vertices[{i}]"), e.to_string()))?;
            vertices.push(u);
        }
        for (f, cyc) in self.faces.iter().enumerate() {
            for (k, &v) in cyc.iter().enumerate() {
                if v >= vertices.len() {
                    return Err(doc_err(
                        format!("faces[{f}][{k}]"),
                        format!("vertex index {v} out of range (have {})", vertices.len()),
                    ));
                }
            }
        }
        ConvexPolyhedron::from_parts(vertices, self.faces.clone())
            .map_err(|e| doc_err("faces", e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TileEntryKind {
    Face,
    Vertex,
    EdgeSegment,
}

/// One tile; vertices are coefficients on `i, j, k`.
///
/// Edge segments list the four corner images in order along the segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileEntry {
    pub kind: TileEntryKind,
    pub source: usize,
    pub vertices: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingDocument {
    pub schema: String,
    pub version: u32,
    pub side: Side,
    pub tiles: Vec<TileEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
}

impl TilingDocument {
    pub fn from_tiling(t: &Tiling, verification: Option<VerificationReport>) -> Self {
        let mut tiles = Vec::new();
        for (kind, list) in [(TileEntryKind::Face, &t.faces), (TileEntryKind::Vertex, &t.vertices)] {
            for d in list {
                tiles.push(TileEntry {
                    kind,
                    source: d.source.index,
                    vertices: d.polygon.vertices().iter().map(|v| v.quat().vector_part()).collect(),
                });
            }
        }
        for s in &t.segments {
            let mut order: Vec<usize> = (0..4).collect();
            order.sort_by(|&a, &b| s.corner_params[a].total_cmp(&s.corner_params[b]));
            tiles.push(TileEntry {
                kind: TileEntryKind::EdgeSegment,
                source: s.edge,
                vertices: order.iter().map(|&k| s.corners[k].vector()).collect(),
            });
        }
        Self {
            schema: TILING_SCHEMA.into(),
            version: SCHEMA_VERSION,
            side: t.side,
            tiles,
            verification,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Self = parse(text)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        render(self)
    }

    pub fn validate(&self) -> Result<()> {
        check_header(&self.schema, self.version, TILING_SCHEMA)?;
        for (i, t) in self.tiles.iter().enumerate() {
            let min = if t.kind == TileEntryKind::EdgeSegment { 2 } else { 3 };
            if t.vertices.len() < min {
                return Err(doc_err(format!("tiles[{i}]"), format!("{} vertices", t.vertices.len())));
            }
            for (k, v) in t.vertices.iter().enumerate() {
                let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                if !((n - 1.0).abs() <= TOL_DOCUMENT_UNIT) {
                    return Err(doc_err(
                        format!("tiles[{i}].vertices[{k}]"),
                        format!("norm {n} is not 1"),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn count(&self, kind: TileEntryKind) -> usize {
        self.tiles.iter().filter(|t| t.kind == kind).count()
    }
}
