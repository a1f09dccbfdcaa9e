//! Resolution of space and action specifications into a combinatorial action
//! and, where available, a geometric model with its isometric action.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ScenarioError;
use crate::complex::{models, SimplicialComplex, Vertex};
use crate::pathspace::{GSpace, GraphSpace, Sphere, Torus};
use crate::planners::{wedge_of_cycles, Wedge};
use crate::symmetry::{product_complex, FiniteGroup, GroupAction};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SpaceSpec {
    Point,
    Sphere { dim: usize },
    Torus { dim: usize },
    Cycle { vertices: u32 },
    /// Wedge of |G| copies of a cycle, one per group element.
    Wedge { summand: usize },
    /// A complex file, relative to the scenario file.
    Complex { path: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(String),
    Detailed {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
    },
    File {
        file: String,
    },
    Generators {
        generators: Vec<Vec<Vertex>>,
    },
}

impl ActionSpec {
    fn name(&self) -> Option<(&str, Option<usize>)> {
        match self {
            ActionSpec::Named(n) => Some((n, None)),
            ActionSpec::Detailed { name, order } => Some((name, *order)),
            _ => None,
        }
    }
}

/// Names of the standard actions.
pub const ACTION_NAMES: &[&str] = &[
    "trivial",
    "antipodal",
    "flip",
    "codim1-involution",
    "rotation",
    "torus-halfturn",
    "wedge-swap",
    "wedge-cyclic",
];

#[derive(Clone, Debug)]
pub enum Geometry {
    Sphere(GSpace<Sphere>),
    Torus(GSpace<Torus>),
    Graph(GSpace<GraphSpace>),
    None,
}

/// A scenario's configuration space in both models.
#[derive(Clone, Debug)]
pub struct Model {
    pub action: GroupAction,
    pub geometry: Geometry,
    pub wedge: Option<Wedge>,
}

/// Sⁿ as the boundary of the cross-polytope with `+eᵢ ↦ 2i` and `−eᵢ ↦ 2i+1`.
/// Every coordinate negation preserves the vertex order on each simplex.
pub fn signed_cross_polytope(n: usize) -> SimplicialComplex {
    let m = n + 1;
    let facets: Vec<Vec<Vertex>> = (0..1u32 << m)
        .map(|signs| (0..m as u32).map(|i| 2 * i + ((signs >> i) & 1)).collect())
        .collect();
    SimplicialComplex::from_maximal(&facets).expect("cross-polytope facets")
}

/// Negates the coordinates in `coords` on [`signed_cross_polytope`].
fn negation(n: usize, coords: &[usize]) -> Vec<Vertex> {
    (0..2 * (n as u32 + 1)).map(|v| if coords.contains(&(v as usize / 2)) { v ^ 1 } else { v }).collect()
}

/// A 4-cycle on which the half turn `v ↦ v + 2` preserves the vertex order.
fn shift_cycle() -> SimplicialComplex {
    SimplicialComplex::from_maximal(&[[0, 2], [1, 2], [1, 3], [0, 3]]).expect("4-cycle")
}

/// `Tⁿ` as an n-fold staircase product of [`shift_cycle`].
fn torus_complex(dim: usize) -> SimplicialComplex {
    (1..dim).fold(shift_cycle(), |acc, _| product_complex(&acc, &shift_cycle()).complex)
}

fn unknown(space: &str, action: &str) -> ScenarioError {
    ScenarioError::Model(format!("action {action:?} is not available on {space}"))
}

fn z2(complex: SimplicialComplex, image: Vec<Vertex>) -> Result<GroupAction, ScenarioError> {
    GroupAction::from_generators(complex, &[image]).map_err(|e| ScenarioError::Model(e.to_string()))
}

fn file_action(complex: SimplicialComplex, spec: &ActionSpec, base: &Path) -> Result<Option<GroupAction>, ScenarioError> {
    match spec {
        ActionSpec::File { file } => {
            let path = base.join(file);
            let text = std::fs::read_to_string(&path).map_err(|e| ScenarioError::Io(format!("{}: {e}", path.display())))?;
            Ok(Some(GroupAction::parse(complex, &text).map_err(|e| ScenarioError::Model(e.to_string()))?))
        }
        ActionSpec::Generators { generators } => Ok(Some(
            GroupAction::from_generators(complex, generators).map_err(|e| ScenarioError::Model(e.to_string()))?,
        )),
        _ => Ok(None),
    }
}

fn graph_geometry(action: &GroupAction, name: &str) -> Result<Geometry, ScenarioError> {
    if action.complex().dimension() > 1 {
        return Ok(Geometry::None);
    }
    Ok(Geometry::Graph(
        GSpace::from_graph_action(action, name).map_err(|e| ScenarioError::Model(e.to_string()))?,
    ))
}

pub fn build_model(space: &SpaceSpec, action: &ActionSpec, base: &Path) -> Result<Model, ScenarioError> {
    let named = action.name();
    let name = named.map(|n| n.0).unwrap_or("custom");
    let model = |action, geometry| Model {
        action,
        geometry,
        wedge: None,
    };
    match space {
        SpaceSpec::Point => match name {
            "trivial" => {
                let a = GroupAction::trivial(models::point());
                let g = graph_geometry(&a, "trivial")?;
                Ok(model(a, g))
            }
            other => Err(unknown("a point", other)),
        },
        SpaceSpec::Sphere { dim } => {
            let n = *dim;
            if n == 0 {
                return Err(ScenarioError::Model("sphere dimension must be positive".into()));
            }
            let k = signed_cross_polytope(n);
            let (a, g) = match name {
                "trivial" => (GroupAction::trivial(k), GSpace::trivial(Sphere::new(n))),
                "antipodal" => (z2(k, negation(n, &(0..=n).collect::<Vec<_>>()))?, GSpace::sphere_antipodal(n)),
                "flip" | "codim1-involution" => (z2(k, negation(n, &[0]))?, GSpace::sphere_reflection(n)),
                "rotation" if n >= 2 => (z2(k, negation(n, &[0, 1]))?, GSpace::sphere_half_turn(n)),
                other => return Err(unknown(&format!("S^{n}"), other)),
            };
            Ok(model(a, Geometry::Sphere(g)))
        }
        SpaceSpec::Torus { dim } => {
            let n = *dim;
            if n == 0 {
                return Err(ScenarioError::Model("torus dimension must be positive".into()));
            }
            let k = torus_complex(n);
            let (a, g) = match name {
                "trivial" => (GroupAction::trivial(k), GSpace::trivial(Torus::standard(n))),
                "torus-halfturn" => {
                    // first factor shifted by half a turn: vertex (a, b) = a·4^{n−1} + b
                    let block = 4u32.pow(n as u32 - 1);
                    let image = (0..4 * block).map(|v| ((v / block) ^ 1) * block + v % block).collect();
                    (z2(k, image)?, GSpace::torus_half_turn(n))
                }
                other => return Err(unknown(&format!("T^{n}"), other)),
            };
            Ok(model(a, Geometry::Torus(g)))
        }
        SpaceSpec::Cycle { vertices } => {
            let m = *vertices;
            if m < 3 {
                return Err(ScenarioError::Model("a cycle needs at least 3 vertices".into()));
            }
            let k = models::cycle(m);
            let a = match name {
                "trivial" => GroupAction::trivial(k),
                "antipodal" if m % 2 == 0 => z2(k, (0..m).map(|v| (v + m / 2) % m).collect())?,
                "flip" => z2(k, (0..m).map(|v| (m - v) % m).collect())?,
                _ if named.is_none() => file_action(k, action, base)?.expect("custom actions come from files or generators"),
                other => return Err(unknown(&format!("the {m}-cycle"), other)),
            };
            let g = graph_geometry(&a, name)?;
            Ok(model(a, g))
        }
        SpaceSpec::Wedge { summand } => {
            let group = match named {
                Some(("trivial", _)) => FiniteGroup::trivial(),
                Some(("wedge-swap", _)) => FiniteGroup::cyclic(2),
                Some(("wedge-cyclic", Some(order))) if order >= 1 => FiniteGroup::cyclic(order),
                Some(("wedge-cyclic", _)) => {
                    return Err(ScenarioError::Model("wedge-cyclic needs an \"order\"".into()))
                }
                _ => return Err(unknown("a wedge", name)),
            };
            let w = wedge_of_cycles(&group, *summand).map_err(|e| ScenarioError::Model(e.to_string()))?;
            Ok(Model {
                action: w.action.clone(),
                geometry: Geometry::Graph(w.gspace.clone()),
                wedge: Some(w),
            })
        }
        SpaceSpec::Complex { path } => {
            let p = base.join(path);
            let text = std::fs::read_to_string(&p).map_err(|e| ScenarioError::Io(format!("{}: {e}", p.display())))?;
            let k = SimplicialComplex::parse(&text).map_err(|e| ScenarioError::Model(e.to_string()))?;
            let a = match name {
                "trivial" => GroupAction::trivial(k),
                _ if named.is_none() => file_action(k, action, base)?.expect("custom actions come from files or generators"),
                other => return Err(unknown("a complex file", other)),
            };
            let g = graph_geometry(&a, name)?;
            Ok(model(a, g))
        }
    }
}
