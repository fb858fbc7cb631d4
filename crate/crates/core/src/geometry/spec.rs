//! Serializable domain descriptions.

use serde::{Deserialize, Serialize};

use super::path::Piece;
use super::Space;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub space: Space,
    pub shape: ShapeSpec,
}

/// Shape parameters. Coordinates of hyperbolic points are `[x, y]` (lifted to
/// the hyperboloid) or `[x, y, z]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ShapeSpec {
    Polygon {
        vertices: Vec<Vec<f64>>,
    },
    Disc {
        center: Vec<f64>,
        radius: f64,
    },
    Annulus {
        center: Vec<f64>,
        inner: f64,
        outer: f64,
    },
    Ellipse {
        center: [f64; 2],
        a: f64,
        b: f64,
        #[serde(default)]
        angle: f64,
    },
    RegularPolygon {
        n: usize,
        circumradius: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<f64>>,
        #[serde(default)]
        rotation: f64,
    },
    Dumbbell {
        a: f64,
        b: f64,
        c: f64,
    },
    Tube2d {
        path: Vec<Piece>,
        radius: f64,
    },
    Union {
        parts: Vec<ShapeSpec>,
    },
}

impl DomainSpec {
    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            let msg = full.rsplit_once(" at line ").map_or(full.as_str(), |(m, _)| m);
            crate::Error::Parse(format!("line {}, column {}: {msg}", e.line(), e.column()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("domain spec serializes")
    }
}
