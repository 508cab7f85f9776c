//! Weighted plumbing graphs.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::form::SymmetricForm;

/// The two Dynkin tree shapes used by the families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::D => "D",
        })
    }
}

impl Family {
    /// Smallest admissible number of vertices.
    pub fn min_size(self) -> usize {
        match self {
            Family::A => 1,
            Family::D => 3,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlumbingError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(u32),
    #[error("edge {0}-{1} is a loop")]
    Loop(u32, u32),
    #[error("edge {0}-{1} appears twice")]
    MultiEdge(u32, u32),
    #[error("edge {0}-{1} uses an unknown vertex")]
    UnknownVertex(u32, u32),
    #[error("{family} family needs at least {min} vertices, got {got}")]
    FamilyTooSmall { family: Family, min: usize, got: usize },
}

/// A simple graph with an Euler number on every vertex. Vertex order is
/// significant: it fixes the basis of the intersection form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlumbingGraph {
    vertices: Vec<(u32, i64)>,
    edges: Vec<(u32, u32)>,
}

impl PlumbingGraph {
    pub fn new(vertices: Vec<(u32, i64)>, edges: Vec<(u32, u32)>) -> Result<Self, PlumbingError> {
        let mut ids = BTreeSet::new();
        for &(id, _) in &vertices {
            if !ids.insert(id) {
                return Err(PlumbingError::DuplicateVertex(id));
            }
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u == v {
                return Err(PlumbingError::Loop(u, v));
            }
            if !ids.contains(&u) || !ids.contains(&v) {
                return Err(PlumbingError::UnknownVertex(u, v));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(PlumbingError::MultiEdge(u, v));
            }
        }
        Ok(PlumbingGraph { vertices, edges })
    }

    /// `A_k` is the chain `1-2-...-k`; `D_k` has edges `1-3, 2-3, 3-4, ...,
    /// (k-1)-k`. All weights equal `weight`.
    pub fn family(family: Family, k: usize, weight: i64) -> Result<Self, PlumbingError> {
        if k < family.min_size() {
            return Err(PlumbingError::FamilyTooSmall { family, min: family.min_size(), got: k });
        }
        let k32 = k as u32;
        let vertices = (1..=k32).map(|i| (i, weight)).collect();
        let edges = match family {
            Family::A => (1..k32).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e = alloc::vec![(1, 3), (2, 3)];
                e.extend((3..k32).map(|i| (i, i + 1)));
                e
            }
        };
        Ok(PlumbingGraph { vertices, edges })
    }

    pub fn vertices(&self) -> &[(u32, i64)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The common weight, if all vertices carry the same one.
    pub fn uniform_weight(&self) -> Option<i64> {
        let w = self.vertices.first()?.1;
        self.vertices.iter().all(|v| v.1 == w).then_some(w)
    }

    /// `(family, k, weight)` when the graph is literally the output of
    /// [`PlumbingGraph::family`].
    pub fn as_family(&self) -> Option<(Family, usize, i64)> {
        let w = self.uniform_weight()?;
        let k = self.len();
        [Family::A, Family::D].into_iter().find_map(|f| {
            let g = PlumbingGraph::family(f, k, w).ok()?;
            (g == *self).then_some((f, k, w))
        })
    }

    /// Dynkin shape of the underlying graph up to relabelling. A chain is
    /// reported as `A` (so the three-vertex `D` tree reads as `A_3`) unless
    /// the graph is literally the `D_3` family graph.
    pub fn shape(&self) -> Option<(Family, usize)> {
        if let Some((f, k, _)) = self.as_family() {
            return Some((f, k));
        }
        let k = self.len();
        if k == 0 || self.edges.len() + 1 != k || !self.is_connected() {
            return None;
        }
        let deg = |id: u32| self.edges.iter().filter(|&&(u, v)| u == id || v == id).count();
        let degrees: Vec<usize> = self.vertices.iter().map(|&(id, _)| deg(id)).collect();
        let max = degrees.iter().copied().max().unwrap_or(0);
        if max <= 2 {
            return Some((Family::A, k));
        }
        let branch_points: Vec<u32> = self
            .vertices
            .iter()
            .zip(&degrees)
            .filter(|(_, &d)| d >= 3)
            .map(|(v, _)| v.0)
            .collect();
        if max > 3 || branch_points.len() != 1 {
            return None;
        }
        let c = branch_points[0];
        let leaves = self
            .edges
            .iter()
            .filter_map(|&(u, v)| match (u == c, v == c) {
                (true, _) => Some(v),
                (_, true) => Some(u),
                _ => None,
            })
            .filter(|&nb| deg(nb) == 1)
            .count();
        (leaves >= 2).then_some((Family::D, k))
    }

    fn is_connected(&self) -> bool {
        let Some(&(start, _)) = self.vertices.first() else { return true };
        let mut reached = BTreeSet::from([start]);
        let mut stack = alloc::vec![start];
        while let Some(x) = stack.pop() {
            for &(u, v) in &self.edges {
                let other = if u == x {
                    v
                } else if v == x {
                    u
                } else {
                    continue;
                };
                if reached.insert(other) {
                    stack.push(other);
                }
            }
        }
        reached.len() == self.vertices.len()
    }

    /// Weights on the diagonal and `1` for every edge.
    pub fn form(&self) -> SymmetricForm {
        let n = self.len();
        let pos = |id: u32| self.vertices.iter().position(|v| v.0 == id).expect("validated edge");
        let mut rows = alloc::vec![alloc::vec![0i64; n]; n];
        for (i, &(_, w)) in self.vertices.iter().enumerate() {
            rows[i][i] = w;
        }
        for &(u, v) in &self.edges {
            let (i, j) = (pos(u), pos(v));
            rows[i][j] = 1;
            rows[j][i] = 1;
        }
        SymmetricForm::from_rows(&rows).expect("plumbing matrix is symmetric")
    }
}

/// `P(A,4;2)` for family graphs, otherwise the `G{id:w,...;u-v,...}` literal.
impl fmt::Display for PlumbingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((fam, k, w)) = self.as_family() {
            return write!(f, "P({fam},{k};{w})");
        }
        f.write_str("G{")?;
        for (i, (id, w)) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}:{w}")?;
        }
        f.write_str(";")?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use num_bigint::BigInt;

    #[test]
    fn validation() {
        assert_eq!(
            PlumbingGraph::new(vec![(1, 2), (1, 3)], vec![]),
            Err(PlumbingError::DuplicateVertex(1))
        );
        assert_eq!(PlumbingGraph::new(vec![(1, 2)], vec![(1, 1)]), Err(PlumbingError::Loop(1, 1)));
        assert_eq!(
            PlumbingGraph::new(vec![(1, 2), (2, 2)], vec![(1, 2), (2, 1)]),
            Err(PlumbingError::MultiEdge(2, 1))
        );
        assert_eq!(
            PlumbingGraph::new(vec![(1, 2)], vec![(1, 5)]),
            Err(PlumbingError::UnknownVertex(1, 5))
        );
        assert!(PlumbingGraph::family(Family::D, 2, 2).is_err());
        assert!(PlumbingGraph::family(Family::A, 0, 2).is_err());
    }

    #[test]
    fn family_forms() {
        let a2 = PlumbingGraph::family(Family::A, 2, 2).unwrap().form();
        assert_eq!(a2, SymmetricForm::from_i64([[2, 1], [1, 2]]));
        for k in 1..10 {
            let a = PlumbingGraph::family(Family::A, k, 2).unwrap().form();
            assert_eq!(a.determinant(), BigInt::from(k as i64 + 1));
        }
        for k in 3..12 {
            let d = PlumbingGraph::family(Family::D, k, 2).unwrap().form();
            assert_eq!(d.determinant(), BigInt::from(4));
            assert_eq!(d.signature(), k as i64);
        }
    }

    #[test]
    fn shapes_up_to_relabelling() {
        let g = PlumbingGraph::new(vec![(7, 2), (4, 2), (9, 2), (1, 2)], vec![(9, 4), (4, 1), (4, 7)])
            .unwrap();
        assert_eq!(g.shape(), Some((Family::D, 4)));
        assert_eq!(g.as_family(), None);
        let path = PlumbingGraph::new(vec![(3, -1), (1, 5)], vec![(1, 3)]).unwrap();
        assert_eq!(path.shape(), Some((Family::A, 2)));
        let d3 = PlumbingGraph::family(Family::D, 3, 2).unwrap();
        assert_eq!(d3.shape(), Some((Family::D, 3)));
        let cycle =
            PlumbingGraph::new(vec![(1, 2), (2, 2), (3, 2)], vec![(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(cycle.shape(), None);
    }

    #[test]
    fn display() {
        assert_eq!(PlumbingGraph::family(Family::D, 7, 2).unwrap().to_string(), "P(D,7;2)");
        let g = PlumbingGraph::new(vec![(1, 2), (2, -3)], vec![(1, 2)]).unwrap();
        assert_eq!(g.to_string(), "G{1:2,2:-3;1-2}");
    }
}
