use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{edge_of, end_of, half_edge, Edge, End, PlaneGraph, Side, Vertex};
use crate::error::{Error, Result};

/// A half-edge reference as written in graph files: `["e", edge_id, "tail" | "head"]`.
pub type RawHalfEdge = (String, i64, End);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawVertex {
    pub id: i64,
    pub rotation: Vec<RawHalfEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEdge {
    pub id: i64,
    pub tail: i64,
    pub head: i64,
    pub color: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub vertices: Vec<RawVertex>,
    pub edges: Vec<RawEdge>,
    pub base_edge: i64,
    pub outer_face_corner: (String, i64, Side),
}

fn index_by_id<T>(items: &[T], id: impl Fn(&T) -> i64, what: &str) -> Result<HashMap<i64, usize>> {
    let mut map = HashMap::new();
    for (i, item) in items.iter().enumerate() {
        if map.insert(id(item), i).is_some() {
            return Err(Error::Structural(format!("duplicate {what} id {}", id(item))));
        }
    }
    Ok(map)
}

fn check_tag(tag: &str) -> Result<()> {
    if tag == "e" {
        Ok(())
    } else {
        Err(Error::Structural(format!("unknown reference tag `{tag}`, expected \"e\"")))
    }
}

pub(super) fn from_raw(raw: &RawGraph) -> Result<PlaneGraph> {
    // dense indices follow ascending ids
    let mut vs: Vec<&RawVertex> = raw.vertices.iter().collect();
    vs.sort_by_key(|v| v.id);
    let mut es: Vec<&RawEdge> = raw.edges.iter().collect();
    es.sort_by_key(|e| e.id);
    let vidx = index_by_id(&vs, |v| v.id, "vertex")?;
    let eidx = index_by_id(&es, |e| e.id, "edge")?;
    let lookup_v = |id: i64| {
        vidx.get(&id).copied().ok_or_else(|| Error::Structural(format!("unknown vertex id {id}")))
    };
    let lookup_e = |id: i64| {
        eidx.get(&id).copied().ok_or_else(|| Error::Structural(format!("unknown edge id {id}")))
    };
    let edges = es
        .iter()
        .map(|e| Ok(Edge { label: e.id, tail: lookup_v(e.tail)?, head: lookup_v(e.head)?, color: e.color }))
        .collect::<Result<Vec<_>>>()?;
    let vertices = vs
        .iter()
        .map(|v| {
            let rotation = v
                .rotation
                .iter()
                .map(|(tag, id, end)| {
                    check_tag(tag)?;
                    Ok(half_edge(lookup_e(*id)?, *end))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Vertex { label: v.id, rotation })
        })
        .collect::<Result<Vec<_>>>()?;
    let base = lookup_e(raw.base_edge)?;
    let (tag, id, side) = &raw.outer_face_corner;
    check_tag(tag)?;
    let oe = lookup_e(*id)?;
    let outer_dart = match side {
        Side::Right => 2 * oe,
        Side::Left => 2 * oe + 1,
    };
    PlaneGraph::new(vertices, edges, base, outer_dart)
}

pub(super) fn to_raw(g: &PlaneGraph) -> RawGraph {
    let vertices = g
        .vertices
        .iter()
        .map(|v| RawVertex {
            id: v.label,
            rotation: v.rotation.iter().map(|&h| ("e".to_string(), g.edges[edge_of(h)].label, end_of(h))).collect(),
        })
        .collect();
    let edges = g
        .edges
        .iter()
        .map(|e| RawEdge {
            id: e.label,
            tail: g.vertices[e.tail].label,
            head: g.vertices[e.head].label,
            color: e.color,
        })
        .collect();
    let od = g.outer_dart;
    let side = if od.is_multiple_of(2) { Side::Right } else { Side::Left };
    RawGraph {
        vertices,
        edges,
        base_edge: g.edges[g.base_edge].label,
        outer_face_corner: ("e".to_string(), g.edges[edge_of(od)].label, side),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIGON: &str = r#"{"vertices":[{"id":0,"rotation":[["e",0,"tail"],["e",1,"head"]]},
        {"id":1,"rotation":[["e",1,"tail"],["e",0,"head"]]}],
        "edges":[{"id":0,"tail":0,"head":1,"color":1},{"id":1,"tail":1,"head":0,"color":1}],
        "base_edge":0,"outer_face_corner":["e",0,"left"]}"#;

    #[test]
    fn parse_and_round_trip() {
        let g = PlaneGraph::from_json(DIGON).unwrap();
        assert_eq!(g.vertex_count(), 2);
        let again = PlaneGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn sparse_ids() {
        let s = r#"{"vertices":[{"id":70,"rotation":[["e",9,"tail"],["e",4,"head"]]},
            {"id":-3,"rotation":[["e",4,"tail"],["e",9,"head"]]}],
            "edges":[{"id":9,"tail":70,"head":-3,"color":1},{"id":4,"tail":-3,"head":70,"color":1}],
            "base_edge":9,"outer_face_corner":["e",4,"right"]}"#;
        let g = PlaneGraph::from_json(s).unwrap();
        assert!(g.validate().is_valid());
        assert_eq!(g.vertices()[0].label, -3);
        assert_eq!(g.edge(g.base_edge()).label, 9);
    }

    #[test]
    fn unknown_reference_is_structural() {
        let s = DIGON.replace("\"base_edge\":0", "\"base_edge\":9");
        assert!(matches!(PlaneGraph::from_json(&s), Err(Error::Structural(_))));
        let s = DIGON.replace("[\"e\",0,\"tail\"]", "[\"v\",0,\"tail\"]");
        assert!(matches!(PlaneGraph::from_json(&s), Err(Error::Structural(_))));
    }
}
