//! Balls in Cayley graphs, enumerated breadth-first.
//!
//! The vertex order is canonical: breadth-first from the identity, expanding
//! each vertex by +g0, -g0, +g1, -g1, ... in the model's generator order.
//! Every search, witness, and rendering downstream relies on this order, so
//! it must never depend on hash iteration or thread timing.

use std::collections::HashMap;

use super::{GroupElement, GroupError, GroupModel};

#[derive(Clone, Debug)]
pub struct BallGraph {
    pub model: GroupModel,
    pub radius: u32,
    /// Vertices in canonical BFS order; index 0 is the identity.
    pub vertices: Vec<GroupElement>,
    /// Word norm of each vertex (sphere marker).
    pub distance: Vec<u32>,
    /// Undirected adjacency by vertex index, sorted, no duplicates.
    pub adjacency: Vec<Vec<usize>>,
    index: HashMap<GroupElement, usize>,
}

impl BallGraph {
    /// Enumerates the ball of the given radius, failing once more than `cap`
    /// vertices would be created.
    pub fn build(model: &GroupModel, radius: u32, cap: usize) -> Result<Self, GroupError> {
        model.validate_model()?;
        let signed = model.signed_generators()?;
        let mut vertices = vec![model.identity()];
        let mut distance = vec![0u32];
        let mut index = HashMap::new();
        index.insert(model.identity(), 0usize);
        let mut adjacency: Vec<std::collections::BTreeSet<usize>> =
            vec![std::collections::BTreeSet::new()];

        let mut head = 0usize;
        while head < vertices.len() {
            let d = distance[head];
            let v = vertices[head].clone();
            for s in &signed {
                let w = model.multiply(&v, s)?;
                match index.get(&w) {
                    Some(&wi) => {
                        if wi != head {
                            adjacency[head].insert(wi);
                            adjacency[wi].insert(head);
                        }
                    }
                    None => {
                        if d + 1 <= radius {
                            if vertices.len() >= cap {
                                return Err(GroupError::BallBudget { cap });
                            }
                            let wi = vertices.len();
                            index.insert(w.clone(), wi);
                            vertices.push(w);
                            distance.push(d + 1);
                            adjacency.push(std::collections::BTreeSet::new());
                            adjacency[head].insert(wi);
                            adjacency[wi].insert(head);
                        }
                    }
                }
            }
            head += 1;
        }

        Ok(BallGraph {
            model: model.clone(),
            radius,
            vertices,
            distance,
            adjacency: adjacency
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn center(&self) -> &GroupElement {
        &self.vertices[0]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    /// Vertex indices at exactly distance `d`, in canonical order.
    pub fn sphere(&self, d: u32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.distance[i] == d).collect()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }
}
