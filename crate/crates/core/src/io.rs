//! The complex file format.
//!
//! ```json
//! {"name": "octahedron",
//!  "vertices": [{"id": 0, "label": "a", "color": 1}, ...],
//!  "facets": [[0, 2, 4], ...]}
//! ```
//!
//! Ids are dense from 0, colors are 1-based, facets are written in
//! lexicographic order. Labels and colors are optional per file (colors must
//! be given for every vertex or none).

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{Coloring, Face, Labels, SimplicialComplex, VertexId, MAX_VERTICES};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDocument {
    pub name: String,
    pub complex: SimplicialComplex,
    pub coloring: Option<Coloring>,
}

#[derive(Serialize, Deserialize)]
struct VertexRecord {
    id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    color: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct FileRecord {
    #[serde(default)]
    name: String,
    #[serde(default)]
    vertices: Vec<VertexRecord>,
    facets: Vec<Vec<usize>>,
}

impl ComplexDocument {
    pub fn new(name: impl Into<String>, complex: SimplicialComplex, coloring: Option<Coloring>) -> Self {
        ComplexDocument { name: name.into(), complex, coloring }
    }

    /// The coloring, or an input error naming what was expected.
    pub fn require_coloring(&self) -> Result<&Coloring> {
        self.coloring.as_ref().ok_or_else(|| Error::Input(format!("complex {:?} carries no coloring", self.name)))
    }

    /// Vertex id for a label, falling back to a numeric id.
    pub fn resolve_vertex(&self, token: &str) -> Result<VertexId> {
        let token = token.trim();
        if let Some(v) = self.complex.vertex_by_label(token) {
            return Ok(v);
        }
        match token.parse::<usize>() {
            Ok(v) if self.complex.vertex_set().contains(v) => Ok(v),
            _ => Err(Error::Input(format!("unknown vertex {token:?}"))),
        }
    }

    /// Renumber vertices densely from 0, preserving order.
    pub fn compacted(&self) -> ComplexDocument {
        let (complex, old) = self.complex.compacted();
        let coloring = self.coloring.as_ref().map(|c| {
            let mut pos = [usize::MAX; MAX_VERTICES];
            for (i, &v) in old.iter().enumerate() {
                pos[v] = i;
            }
            let assignments: Vec<(VertexId, usize)> =
                old.iter().filter_map(|&v| c.color(v).map(|col| (pos[v], col))).collect();
            Coloring::new(c.num_colors(), assignments).expect("colors stay in range")
        });
        ComplexDocument { name: self.name.clone(), complex, coloring }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = self.compacted();
        let k = &doc.complex;
        let vertices = k
            .vertex_ids()
            .into_iter()
            .map(|v| VertexRecord {
                id: v,
                label: k.labels().get(v).map(str::to_owned),
                color: doc.coloring.as_ref().and_then(|c| c.color(v)).map(|c| c + 1),
            })
            .collect();
        let facets = k.facets().iter().map(|f| f.to_vec()).collect();
        serde_json::to_value(FileRecord { name: doc.name.clone(), vertices, facets }).expect("plain data serializes")
    }

    pub fn to_json_string(&self) -> String {
        let v = self.to_json_value();
        // One facet per line keeps large files diffable.
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"name\": {},\n", v["name"]));
        out.push_str("  \"vertices\": [");
        let verts = v["vertices"].as_array().expect("array");
        for (i, rec) in verts.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&rec.to_string());
        }
        out.push_str(if verts.is_empty() { "],\n" } else { "\n  ],\n" });
        out.push_str("  \"facets\": [");
        let facets = v["facets"].as_array().expect("array");
        for (i, f) in facets.iter().enumerate() {
            out.push_str(if i == 0 { "\n    " } else { ",\n    " });
            out.push_str(&f.to_string());
        }
        out.push_str(if facets.is_empty() { "]\n" } else { "\n  ]\n" });
        out.push_str("}\n");
        out
    }

    pub fn from_json_str(text: &str) -> Result<ComplexDocument> {
        let rec: FileRecord = serde_json::from_str(text)?;
        Self::from_record(rec)
    }

    fn from_record(rec: FileRecord) -> Result<ComplexDocument> {
        let mut faces = Vec::with_capacity(rec.facets.len());
        for f in &rec.facets {
            faces.push(Face::new(f)?);
        }
        let complex = if faces.is_empty() {
            return Err(Error::EmptyComplex);
        } else {
            SimplicialComplex::from_facets(faces)?
        };
        let mut labels: Vec<Option<String>> = Vec::new();
        let mut seen_ids = std::collections::HashSet::new();
        let mut seen_labels = std::collections::HashSet::new();
        let mut colors = Vec::new();
        for v in &rec.vertices {
            if v.id >= MAX_VERTICES {
                return Err(Error::Input(format!("vertex id {} exceeds the {MAX_VERTICES}-vertex limit", v.id)));
            }
            if !seen_ids.insert(v.id) {
                return Err(Error::Input(format!("vertex id {} listed twice", v.id)));
            }
            if let Some(l) = &v.label {
                if !seen_labels.insert(l.clone()) {
                    return Err(Error::Input(format!("label {l:?} used twice")));
                }
                if labels.len() <= v.id {
                    labels.resize(v.id + 1, None);
                }
                labels[v.id] = Some(l.clone());
            }
            if let Some(c) = v.color {
                if c == 0 {
                    return Err(Error::Input("colors are 1-based".into()));
                }
                colors.push((v.id, c - 1));
            }
        }
        for v in complex.vertex_ids() {
            if !rec.vertices.is_empty() && !seen_ids.contains(&v) {
                return Err(Error::Input(format!("facet vertex {v} missing from the vertex list")));
            }
        }
        let coloring = if colors.is_empty() {
            None
        } else {
            if colors.len() != complex.num_vertices() {
                return Err(Error::Input("either every vertex or no vertex must carry a color".into()));
            }
            let d = colors.iter().map(|&(_, c)| c + 1).max().unwrap_or(0);
            Some(Coloring::new(d, colors)?)
        };
        let complex = complex.with_labels(Labels::new(labels));
        Ok(ComplexDocument { name: rec.name, complex, coloring })
    }

    pub fn read_from(mut reader: impl Read) -> Result<ComplexDocument> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        Self::from_json_str(&text)
    }

    pub fn load(path: &Path) -> Result<ComplexDocument> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn write_to(&self, mut writer: impl Write) -> Result<()> {
        writer.write_all(self.to_json_string().as_bytes())?;
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_labels_and_colors() {
        let text = r#"{"name":"edge","vertices":[{"id":0,"label":"a","color":1},{"id":1,"label":"b","color":2}],"facets":[[0,1]]}"#;
        let doc = ComplexDocument::from_json_str(text).unwrap();
        assert_eq!(doc.coloring.as_ref().unwrap().num_colors(), 2);
        let again = ComplexDocument::from_json_str(&doc.to_json_string()).unwrap();
        assert_eq!(again, doc);
        assert_eq!(doc.resolve_vertex("b").unwrap(), 1);
    }

    #[test]
    fn sparse_ids_are_compacted_on_output() {
        let k = SimplicialComplex::from_vertex_lists(&[[3, 7], [7, 9]]).unwrap();
        let doc = ComplexDocument::new("path", k, None);
        let v = doc.to_json_value();
        assert_eq!(v["facets"], serde_json::json!([[0, 1], [1, 2]]));
    }

    #[test]
    fn partial_colors_rejected() {
        let text = r#"{"name":"x","vertices":[{"id":0,"color":1},{"id":1}],"facets":[[0,1]]}"#;
        assert!(ComplexDocument::from_json_str(text).is_err());
        let dup = r#"{"name":"x","facets":[[0,0]]}"#;
        assert!(matches!(ComplexDocument::from_json_str(dup), Err(Error::Input(_))));
    }
}
