//! JSON domain specs.
//!
//! ```json
//! {"kind": "polygon", "vertices": [[6, 1], [1, 1], [1, 4], [-1, 4], [-1, -1], [6, -1]], "ns": 512}
//! {"kind": "regular_polygon", "sides": 8}
//! {"kind": "ellipse", "a": 1, "b": 0.5, "exterior": true, "n": 4096}
//! {"kind": "amoeba", "n": 4096}
//! {"kind": "arcs", "arcs": [{"center": [0, 0], "radius": 1, "start": 0, "end": 3.14159}, ...]}
//! {"kind": "rectangle", "r": 2}
//! {"kind": "opened_slit", "case": "G3", "r": 0.5, "a": 0.25}
//! ```
//!
//! `n` applies to smooth curves, `ns` (nodes per side or arc) and
//! `grading_p` to piecewise ones. Command-line flags override them.

use std::path::Path;

use confinv_core::{
    make_amoeba, make_circular_arc_polygon, make_ellipse, make_opened_slit_disk, make_polygon,
    make_rectangle, regular_polygon_vertices, ArcSpec, BoundaryCurve, Complex64, EllipseKind, SlitCase,
    DEFAULT_GRADING,
};
use serde::Deserialize;

use crate::CliError;

pub const DEFAULT_N: usize = 1024;
pub const DEFAULT_NS: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct Point(pub f64, pub f64);

impl From<Point> for Complex64 {
    fn from(p: Point) -> Self {
        Complex64::new(p.0, p.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcJson {
    pub center: Point,
    pub radius: f64,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum SlitKind {
    G1,
    G2,
    G3,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Shape {
    Polygon {
        vertices: Vec<Point>,
    },
    RegularPolygon {
        sides: usize,
    },
    Ellipse {
        a: f64,
        b: f64,
        #[serde(default)]
        exterior: bool,
    },
    Amoeba {},
    Arcs {
        arcs: Vec<ArcJson>,
    },
    Rectangle {
        r: f64,
    },
    OpenedSlit {
        case: SlitKind,
        r: f64,
        #[serde(default)]
        a: f64,
    },
}

/// A parsed spec: the shape plus optional discretization fields.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub shape: Shape,
    pub n: Option<usize>,
    pub ns: Option<usize>,
    pub grading_p: Option<f64>,
}

#[derive(Deserialize)]
struct Sizes {
    n: Option<usize>,
    ns: Option<usize>,
    grading_p: Option<f64>,
}

/// Discretization overrides from the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Discretization {
    pub n: Option<usize>,
    pub ns: Option<usize>,
    pub grading_p: Option<f64>,
}

impl DomainSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let mut value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::Validation(format!("domain spec: {e}")))?;
        let sizes: Sizes = serde_json::from_value(value.clone())
            .map_err(|e| CliError::Validation(format!("domain spec: {e}")))?;
        if let Some(obj) = value.as_object_mut() {
            for key in ["n", "ns", "grading_p"] {
                obj.remove(key);
            }
        }
        let shape: Shape =
            serde_json::from_value(value).map_err(|e| CliError::Validation(format!("domain spec: {e}")))?;
        Ok(Self {
            shape,
            n: sizes.n,
            ns: sizes.ns,
            grading_p: sizes.grading_p,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self.shape, Shape::Ellipse { exterior: true, .. })
    }

    /// Polygon vertices for polygon-like shapes.
    pub fn vertices(&self) -> Option<Vec<Complex64>> {
        match &self.shape {
            Shape::Polygon { vertices } => Some(vertices.iter().map(|&p| p.into()).collect()),
            Shape::RegularPolygon { sides } => Some(regular_polygon_vertices(*sides)),
            Shape::Rectangle { r } => Some(vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, *r),
                Complex64::new(0.0, *r),
            ]),
            _ => None,
        }
    }

    pub fn slit_case(&self) -> Option<SlitCase> {
        match self.shape {
            Shape::OpenedSlit { case, r, a } => Some(match case {
                SlitKind::G1 => SlitCase::G1 { r },
                SlitKind::G2 => SlitCase::G2 { r },
                SlitKind::G3 => SlitCase::G3 { r, a },
            }),
            _ => None,
        }
    }

    pub fn resolve(&self, overrides: Discretization) -> Resolved {
        Resolved {
            n: overrides.n.or(self.n).unwrap_or(DEFAULT_N),
            ns: overrides.ns.or(self.ns).unwrap_or(DEFAULT_NS),
            grading_p: overrides.grading_p.or(self.grading_p).unwrap_or(DEFAULT_GRADING),
        }
    }

    pub fn build(&self, overrides: Discretization) -> Result<BoundaryCurve, CliError> {
        let Resolved { n, ns, grading_p: p } = self.resolve(overrides);
        let curve = match &self.shape {
            Shape::Polygon { .. } | Shape::RegularPolygon { .. } => {
                if let Shape::RegularPolygon { sides } = self.shape {
                    if sides < 3 {
                        return Err(CliError::Validation("regular polygon needs at least 3 sides".into()));
                    }
                }
                make_polygon(&self.vertices().unwrap_or_default(), ns, p)?
            }
            Shape::Ellipse { a, b, exterior } => {
                let kind = if *exterior { EllipseKind::Exterior } else { EllipseKind::Interior };
                make_ellipse(*a, *b, n, kind)?
            }
            Shape::Amoeba {} => make_amoeba(n)?,
            Shape::Arcs { arcs } => {
                let arcs: Vec<ArcSpec> = arcs
                    .iter()
                    .map(|a| ArcSpec {
                        center: a.center.into(),
                        radius: a.radius,
                        start: a.start,
                        end: a.end,
                    })
                    .collect();
                make_circular_arc_polygon(&arcs, ns, p)?
            }
            Shape::Rectangle { r } => make_rectangle(*r, ns, p)?,
            Shape::OpenedSlit { .. } => make_opened_slit_disk(self.slit_case().unwrap(), ns, p)?,
        };
        Ok(curve)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved {
    pub n: usize,
    pub ns: usize,
    pub grading_p: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let specs = [
            r#"{"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]], "ns": 16}"#,
            r#"{"kind": "regular_polygon", "sides": 5, "grading_p": 4}"#,
            r#"{"kind": "ellipse", "a": 1, "b": 0.5, "exterior": true, "n": 64}"#,
            r#"{"kind": "amoeba", "n": 128}"#,
            r#"{"kind": "arcs", "arcs": [{"center": [0,0], "radius": 1, "start": 0, "end": 6.283185307179586}], "ns": 64, "grading_p": 1}"#,
            r#"{"kind": "rectangle", "r": 2, "ns": 16}"#,
            r#"{"kind": "opened_slit", "case": "G3", "r": 0.5, "a": 0.25, "ns": 32}"#,
        ];
        for text in specs {
            let spec = DomainSpec::from_json(text).unwrap();
            spec.build(Discretization::default()).unwrap();
        }
        let spec = DomainSpec::from_json(specs[2]).unwrap();
        assert!(spec.is_unbounded());
        assert_eq!(spec.n, Some(64));
    }

    #[test]
    fn overrides_win() {
        let spec = DomainSpec::from_json(r#"{"kind": "rectangle", "r": 2, "ns": 16}"#).unwrap();
        let r = spec.resolve(Discretization { ns: Some(32), ..Default::default() });
        assert_eq!(r.ns, 32);
        assert_eq!(r.grading_p, DEFAULT_GRADING);
        assert_eq!(spec.build(Discretization { ns: Some(32), ..Default::default() }).unwrap().n(), 128);
    }

    #[test]
    fn rejects_bad_specs() {
        for text in [
            "not json",
            r#"{"kind": "hexagon"}"#,
            r#"{"kind": "ellipse", "a": 1}"#,
            r#"{"kind": "rectangle", "r": 2, "colour": "red"}"#,
        ] {
            assert!(matches!(DomainSpec::from_json(text), Err(CliError::Validation(_))), "{text}");
        }
        let bowtie = DomainSpec::from_json(r#"{"kind": "polygon", "vertices": [[0,0],[1,1],[1,0],[0,1]], "ns": 16}"#).unwrap();
        assert!(matches!(bowtie.build(Discretization::default()), Err(CliError::Validation(_))));
    }
}
