//! The monograph data model.
//!
//! A monograph is a finite map from edge identifiers to sequences of edge
//! identifiers. Every identifier occurring in a sequence must itself be a
//! key of the map (closure). Nodes are the edges mapped to the empty
//! sequence; the trace is the set of sequence lengths. A monograph is
//! standard when every sequence entry is a node, and an O-monograph when
//! its trace is contained in O.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// An edge identifier. Equality is string equality and the ordering is
/// lexicographic; all iteration in this crate follows that ordering so
/// results are deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(String);

impl EdgeId {
    pub fn new(name: impl Into<String>) -> Self {
        EdgeId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The tagged copy of this identifier used by disjoint unions, e.g.
    /// `x` tagged with 0 becomes `x.0`.
    pub fn tagged(&self, tag: usize) -> EdgeId {
        EdgeId(format!("{}.{}", self.0, tag))
    }

    /// The pair identifier `(x,y)` used by products and pullbacks.
    pub fn paired(x: &EdgeId, y: &EdgeId) -> EdgeId {
        EdgeId(format!("({},{})", x.0, y.0))
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeId({})", self.0)
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId(s.to_string())
    }
}

impl From<String> for EdgeId {
    fn from(s: String) -> Self {
        EdgeId(s)
    }
}

/// The set of edge lengths occurring in a monograph.
pub type Trace = BTreeSet<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("edge `{edge}` refers to unknown edge `{target}` at position {position}")]
    DanglingEdge {
        edge: EdgeId,
        target: EdgeId,
        position: usize,
    },
    #[error("`{edge}` is not an edge of the parent monograph")]
    UnknownEdge { edge: EdgeId },
    #[error("subset is not adjacency-closed: `{edge}` needs `{target}`")]
    NotClosed { edge: EdgeId, target: EdgeId },
    #[error("submonograph operands have different parent monographs")]
    ParentMismatch,
}

/// A finite monograph: edge identifiers mapped to their adjacency
/// sequences. Values are immutable after construction and every
/// operation on them is a pure function.
#[derive(Clone, Eq)]
pub struct Monograph {
    edges: BTreeMap<EdgeId, Vec<EdgeId>>,
    name: Option<String>,
}

// The optional label never takes part in equality: two monographs are
// equal exactly when they have the same functional relation.
impl PartialEq for Monograph {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges
    }
}

impl std::hash::Hash for Monograph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.edges.hash(state);
    }
}

impl fmt::Debug for Monograph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (e, seq) in &self.edges {
            m.entry(
                &e.as_str(),
                &seq.iter().map(|t| t.as_str()).collect::<Vec<_>>(),
            );
        }
        m.finish()
    }
}

impl Monograph {
    /// Checks the closure condition and wraps the raw relation.
    pub fn validate(raw: BTreeMap<EdgeId, Vec<EdgeId>>) -> Result<Monograph, ModelError> {
        for (edge, seq) in &raw {
            for (position, target) in seq.iter().enumerate() {
                if !raw.contains_key(target) {
                    return Err(ModelError::DanglingEdge {
                        edge: edge.clone(),
                        target: target.clone(),
                        position,
                    });
                }
            }
        }
        Ok(Monograph {
            edges: raw,
            name: None,
        })
    }

    /// Convenience constructor from string slices, mostly for fixtures.
    pub fn build(entries: &[(&str, &[&str])]) -> Result<Monograph, ModelError> {
        let raw = entries
            .iter()
            .map(|(e, seq)| {
                (
                    EdgeId::from(*e),
                    seq.iter().map(|t| EdgeId::from(*t)).collect(),
                )
            })
            .collect();
        Monograph::validate(raw)
    }

    pub fn empty() -> Monograph {
        Monograph {
            edges: BTreeMap::new(),
            name: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Monograph {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> {
        self.edges.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EdgeId, &[EdgeId])> {
        self.edges.iter().map(|(e, seq)| (e, seq.as_slice()))
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges.keys().cloned().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &EdgeId) -> bool {
        self.edges.contains_key(e)
    }

    pub fn seq(&self, e: &EdgeId) -> Option<&[EdgeId]> {
        self.edges.get(e).map(|s| s.as_slice())
    }

    pub fn len_of(&self, e: &EdgeId) -> Option<usize> {
        self.edges.get(e).map(|s| s.len())
    }

    pub fn trace(&self) -> Trace {
        self.edges.values().map(|s| s.len()).collect()
    }

    pub fn nodes(&self) -> BTreeSet<EdgeId> {
        self.edges
            .iter()
            .filter(|(_, s)| s.is_empty())
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// Every sequence entry is a node.
    pub fn is_standard(&self) -> bool {
        self.edges
            .values()
            .flatten()
            .all(|t| self.edges[t].is_empty())
    }

    pub fn is_o_monograph(&self, o: &BTreeSet<usize>) -> bool {
        self.trace().is_subset(o)
    }

    pub fn classify(&self) -> Classification {
        Classification {
            trace: self.trace(),
            nodes: self.nodes(),
            is_standard: self.is_standard(),
        }
    }

    /// The monograph induced on an adjacency-closed subset of edges.
    /// Fails with `NotClosed` when some kept edge mentions a dropped one.
    pub fn induced(&self, keep: &BTreeSet<EdgeId>) -> Result<Monograph, ModelError> {
        let mut raw = BTreeMap::new();
        for e in keep {
            let seq = self
                .seq(e)
                .ok_or_else(|| ModelError::UnknownEdge { edge: e.clone() })?;
            for t in seq {
                if !keep.contains(t) {
                    return Err(ModelError::NotClosed {
                        edge: e.clone(),
                        target: t.clone(),
                    });
                }
            }
            raw.insert(e.clone(), seq.to_vec());
        }
        Ok(Monograph {
            edges: raw,
            name: None,
        })
    }
}

/// Summary produced by [`Monograph::classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub trace: Trace,
    pub nodes: BTreeSet<EdgeId>,
    pub is_standard: bool,
}

/// An adjacency-closed subset of a parent monograph's edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submonograph {
    parent: Monograph,
    keep: BTreeSet<EdgeId>,
}

impl Submonograph {
    /// Wraps a subset, checking that it is adjacency-closed.
    pub fn new(parent: &Monograph, keep: BTreeSet<EdgeId>) -> Result<Submonograph, ModelError> {
        for e in &keep {
            let seq = parent
                .seq(e)
                .ok_or_else(|| ModelError::UnknownEdge { edge: e.clone() })?;
            for t in seq {
                if !keep.contains(t) {
                    return Err(ModelError::NotClosed {
                        edge: e.clone(),
                        target: t.clone(),
                    });
                }
            }
        }
        Ok(Submonograph {
            parent: parent.clone(),
            keep,
        })
    }

    pub fn full(parent: &Monograph) -> Submonograph {
        Submonograph {
            keep: parent.edge_set(),
            parent: parent.clone(),
        }
    }

    pub fn empty(parent: &Monograph) -> Submonograph {
        Submonograph {
            parent: parent.clone(),
            keep: BTreeSet::new(),
        }
    }

    pub fn parent(&self) -> &Monograph {
        &self.parent
    }

    pub fn keep(&self) -> &BTreeSet<EdgeId> {
        &self.keep
    }

    pub fn contains(&self, e: &EdgeId) -> bool {
        self.keep.contains(e)
    }

    pub fn is_full(&self) -> bool {
        self.keep.len() == self.parent.edge_count()
    }

    /// The monograph induced on the kept edges.
    pub fn induced(&self) -> Monograph {
        self.parent
            .induced(&self.keep)
            .expect("submonograph invariant: kept edges are closed")
    }

    pub fn union(&self, other: &Submonograph) -> Result<Submonograph, ModelError> {
        if self.parent != other.parent {
            return Err(ModelError::ParentMismatch);
        }
        Ok(Submonograph {
            parent: self.parent.clone(),
            keep: self.keep.union(&other.keep).cloned().collect(),
        })
    }

    pub fn intersection(&self, other: &Submonograph) -> Result<Submonograph, ModelError> {
        if self.parent != other.parent {
            return Err(ModelError::ParentMismatch);
        }
        Ok(Submonograph {
            parent: self.parent.clone(),
            keep: self.keep.intersection(&other.keep).cloned().collect(),
        })
    }
}

/// The greatest adjacency-closed subset of `keep`, computed by deleting
/// edges whose sequence mentions a dropped edge until nothing changes.
pub fn submonograph_close_down(parent: &Monograph, keep: &BTreeSet<EdgeId>) -> Submonograph {
    let mut kept: BTreeSet<EdgeId> = keep
        .iter()
        .filter(|e| parent.contains(e))
        .cloned()
        .collect();
    loop {
        let violators: Vec<EdgeId> = kept
            .iter()
            .filter(|e| parent.seq(e).unwrap().iter().any(|t| !kept.contains(t)))
            .cloned()
            .collect();
        if violators.is_empty() {
            break;
        }
        for v in violators {
            kept.remove(&v);
        }
    }
    Submonograph {
        parent: parent.clone(),
        keep: kept,
    }
}
