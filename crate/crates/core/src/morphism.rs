//! Morphisms of monographs.
//!
//! A morphism is a total map on edges that preserves lengths and is
//! compatible with adjacency: the image of the ι-th entry of an edge is
//! the ι-th entry of the image. The module also provides exhaustive
//! morphism enumeration (used for matching and for universal-property
//! oracles in the test suites) and an isomorphism finder.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{EdgeId, ModelError, Monograph, Submonograph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphismError {
    #[error("length of `{edge}` is {dom_len} but its image has length {cod_len}")]
    LengthMismatch {
        edge: EdgeId,
        dom_len: usize,
        cod_len: usize,
    },
    #[error("adjacency mismatch at `{edge}` position {position}")]
    AdjacencyMismatch { edge: EdgeId, position: usize },
    #[error("no image given for edge `{edge}`")]
    Untotal { edge: EdgeId },
    #[error("image `{target}` of `{edge}` is not an edge of the codomain")]
    UnknownTarget { edge: EdgeId, target: EdgeId },
    #[error("codomain of the inner morphism differs from domain of the outer one")]
    CompositionMismatch,
    #[error("image of `{edge}` escapes the target submonograph")]
    ImageEscapes { edge: EdgeId },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A validated morphism between two monographs. Equality is
/// componentwise: equal domains, equal codomains and equal edge maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    dom: Monograph,
    cod: Monograph,
    map: BTreeMap<EdgeId, EdgeId>,
}

/// A morphism into a designated type monograph. The codomain plays the
/// role of the type; the fibers over its edges are the typed carriers.
pub type TypedMonograph = Morphism;

impl Morphism {
    /// Checks totality, length preservation and adjacency compatibility.
    pub fn new(
        dom: Monograph,
        cod: Monograph,
        map: BTreeMap<EdgeId, EdgeId>,
    ) -> Result<Morphism, MorphismError> {
        for e in dom.edge_ids() {
            let img = map
                .get(e)
                .ok_or_else(|| MorphismError::Untotal { edge: e.clone() })?;
            let img_seq = cod.seq(img).ok_or_else(|| MorphismError::UnknownTarget {
                edge: e.clone(),
                target: img.clone(),
            })?;
            let seq = dom.seq(e).unwrap();
            if seq.len() != img_seq.len() {
                return Err(MorphismError::LengthMismatch {
                    edge: e.clone(),
                    dom_len: seq.len(),
                    cod_len: img_seq.len(),
                });
            }
            for (position, t) in seq.iter().enumerate() {
                match map.get(t) {
                    Some(img_t) if *img_t == img_seq[position] => {}
                    _ => {
                        return Err(MorphismError::AdjacencyMismatch {
                            edge: e.clone(),
                            position,
                        })
                    }
                }
            }
        }
        let map = map.into_iter().filter(|(k, _)| dom.contains(k)).collect();
        Ok(Morphism { dom, cod, map })
    }

    /// Convenience constructor from string slices.
    pub fn build(
        dom: &Monograph,
        cod: &Monograph,
        pairs: &[(&str, &str)],
    ) -> Result<Morphism, MorphismError> {
        let map = pairs
            .iter()
            .map(|(a, b)| (EdgeId::from(*a), EdgeId::from(*b)))
            .collect();
        Morphism::new(dom.clone(), cod.clone(), map)
    }

    pub fn identity(m: &Monograph) -> Morphism {
        Morphism {
            dom: m.clone(),
            cod: m.clone(),
            map: m.edge_ids().map(|e| (e.clone(), e.clone())).collect(),
        }
    }

    /// The inclusion of an induced submonograph into its parent.
    pub fn inclusion(sub: &Submonograph) -> Morphism {
        Morphism {
            dom: sub.induced(),
            cod: sub.parent().clone(),
            map: sub.keep().iter().map(|e| (e.clone(), e.clone())).collect(),
        }
    }

    pub fn dom(&self) -> &Monograph {
        &self.dom
    }

    pub fn cod(&self) -> &Monograph {
        &self.cod
    }

    pub fn map(&self) -> &BTreeMap<EdgeId, EdgeId> {
        &self.map
    }

    pub fn apply(&self, e: &EdgeId) -> Option<&EdgeId> {
        self.map.get(e)
    }

    /// `outer` after `inner`; the codomain of `inner` must equal the
    /// domain of `outer` as a value.
    pub fn compose(outer: &Morphism, inner: &Morphism) -> Result<Morphism, MorphismError> {
        if inner.cod != outer.dom {
            return Err(MorphismError::CompositionMismatch);
        }
        let map = inner
            .map
            .iter()
            .map(|(e, mid)| (e.clone(), outer.map[mid].clone()))
            .collect();
        Ok(Morphism {
            dom: inner.dom.clone(),
            cod: outer.cod.clone(),
            map,
        })
    }

    /// Direct image of a set of domain edges.
    pub fn image_edges(&self, set: &BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
        set.iter().map(|e| self.map[e].clone()).collect()
    }

    /// Preimage of a set of codomain edges.
    pub fn preimage_edges(&self, set: &BTreeSet<EdgeId>) -> BTreeSet<EdgeId> {
        self.map
            .iter()
            .filter(|(_, v)| set.contains(v))
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// The image of a submonograph of the domain; automatically closed.
    pub fn image(&self, a: &Submonograph) -> Result<Submonograph, ModelError> {
        if a.parent() != &self.dom {
            return Err(ModelError::ParentMismatch);
        }
        Submonograph::new(&self.cod, self.image_edges(a.keep()))
    }

    /// The preimage of a submonograph of the codomain; automatically
    /// closed.
    pub fn preimage(&self, c: &Submonograph) -> Result<Submonograph, ModelError> {
        if c.parent() != &self.cod {
            return Err(ModelError::ParentMismatch);
        }
        Submonograph::new(&self.dom, self.preimage_edges(c.keep()))
    }

    /// Restriction to submonographs of domain and codomain; requires
    /// that the image of `a` lies within `c`.
    pub fn restrict(&self, a: &Submonograph, c: &Submonograph) -> Result<Morphism, MorphismError> {
        for e in a.keep() {
            if !c.contains(&self.map[e]) {
                return Err(MorphismError::ImageEscapes { edge: e.clone() });
            }
        }
        Ok(Morphism {
            dom: a.induced(),
            cod: c.induced(),
            map: a
                .keep()
                .iter()
                .map(|e| (e.clone(), self.map[e].clone()))
                .collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let values: BTreeSet<&EdgeId> = self.map.values().collect();
        values.len() == self.map.len()
    }

    pub fn is_surjective(&self) -> bool {
        let values: BTreeSet<&EdgeId> = self.map.values().collect();
        values.len() == self.cod.edge_count()
    }

    /// The inverse morphism when this one is bijective. Bijectivity is
    /// enough: the inverse map always passes validation, which is
    /// asserted here rather than assumed.
    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_injective() || !self.is_surjective() {
            return None;
        }
        let inv = self
            .map
            .iter()
            .map(|(k, v)| (v.clone(), k.clone()))
            .collect();
        Some(
            Morphism::new(self.cod.clone(), self.dom.clone(), inv)
                .expect("inverse of a bijective morphism is a morphism"),
        )
    }

    pub fn classify(&self) -> MorphismClass {
        let injective = self.is_injective();
        let surjective = self.is_surjective();
        MorphismClass {
            injective,
            surjective,
            iso: injective && surjective && self.inverse().is_some(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismClass {
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
}

/// Shared backtracking over edge assignments. Candidates for each
/// domain edge are codomain edges of equal length; assigning an edge
/// immediately propagates the forced assignments of its adjacency
/// entries. `injective` restricts the search to injective assignments
/// and `first_only` stops at the first complete solution.
fn search_assignments(
    dom: &Monograph,
    cod: &Monograph,
    injective: bool,
    first_only: bool,
    limit: Option<usize>,
) -> Vec<BTreeMap<EdgeId, EdgeId>> {
    let dom_edges: Vec<EdgeId> = dom.edge_ids().cloned().collect();
    let mut by_len: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
    for e in cod.edge_ids() {
        by_len
            .entry(cod.len_of(e).unwrap())
            .or_default()
            .push(e.clone());
    }

    let mut results = Vec::new();
    let mut assign: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut used: BTreeSet<EdgeId> = BTreeSet::new();

    // Assigns `e -> t`, recording every edge forced along the way on
    // `trail` so the caller can undo. Returns false on conflict.
    #[allow(clippy::too_many_arguments)]
    fn propagate(
        dom: &Monograph,
        cod: &Monograph,
        assign: &mut BTreeMap<EdgeId, EdgeId>,
        used: &mut BTreeSet<EdgeId>,
        injective: bool,
        trail: &mut Vec<EdgeId>,
        e: EdgeId,
        t: EdgeId,
    ) -> bool {
        if let Some(prev) = assign.get(&e) {
            return *prev == t;
        }
        if dom.len_of(&e) != cod.len_of(&t) {
            return false;
        }
        if injective && !used.insert(t.clone()) {
            return false;
        }
        assign.insert(e.clone(), t.clone());
        trail.push(e.clone());
        let seq = dom.seq(&e).unwrap().to_vec();
        let img_seq = cod.seq(&t).unwrap().to_vec();
        for (s, i) in seq.into_iter().zip(img_seq) {
            if !propagate(dom, cod, assign, used, injective, trail, s, i) {
                return false;
            }
        }
        true
    }

    fn undo(assign: &mut BTreeMap<EdgeId, EdgeId>, used: &mut BTreeSet<EdgeId>, trail: &[EdgeId]) {
        for e in trail {
            if let Some(t) = assign.remove(e) {
                used.remove(&t);
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        dom: &Monograph,
        cod: &Monograph,
        dom_edges: &[EdgeId],
        by_len: &BTreeMap<usize, Vec<EdgeId>>,
        assign: &mut BTreeMap<EdgeId, EdgeId>,
        used: &mut BTreeSet<EdgeId>,
        injective: bool,
        first_only: bool,
        results: &mut Vec<BTreeMap<EdgeId, EdgeId>>,
    ) -> bool {
        let next = dom_edges.iter().find(|e| !assign.contains_key(e));
        let e = match next {
            Some(e) => e.clone(),
            None => {
                results.push(assign.clone());
                return first_only;
            }
        };
        let len = dom.len_of(&e).unwrap();
        if let Some(cands) = by_len.get(&len) {
            for t in cands {
                let mut trail = Vec::new();
                let ok = propagate(
                    dom,
                    cod,
                    assign,
                    used,
                    injective,
                    &mut trail,
                    e.clone(),
                    t.clone(),
                );
                if ok
                    && rec(
                        dom, cod, dom_edges, by_len, assign, used, injective, first_only, results,
                    )
                {
                    return true;
                }
                undo(assign, used, &trail);
            }
        }
        false
    }

    rec(
        dom,
        cod,
        &dom_edges,
        &by_len,
        &mut assign,
        &mut used,
        injective,
        first_only,
        &mut results,
    );

    // The propagation order is not the plain lexicographic assignment
    // order, so sort before truncating.
    results.sort_by(|a, b| {
        a.values()
            .collect::<Vec<_>>()
            .cmp(&b.values().collect::<Vec<_>>())
    });
    if let Some(n) = limit {
        results.truncate(n);
    }
    results
}

/// All morphisms `dom -> cod`, sorted by their assignment vectors in
/// lexicographic order; `limit` truncates after sorting.
pub fn enumerate_morphisms(
    dom: &Monograph,
    cod: &Monograph,
    limit: Option<usize>,
) -> Vec<Morphism> {
    search_assignments(dom, cod, false, false, limit)
        .into_iter()
        .map(|map| Morphism {
            dom: dom.clone(),
            cod: cod.clone(),
            map,
        })
        .collect()
}

/// Some isomorphism `a -> b`, or `None` when the two monographs are not
/// isomorphic. Exponential in the worst case; candidate pruning by
/// length and adjacency keeps desk-scale inputs fast.
pub fn find_isomorphism(a: &Monograph, b: &Monograph) -> Option<Morphism> {
    if a.edge_count() != b.edge_count() || a.trace() != b.trace() {
        return None;
    }
    // Cheap invariant screen: the multiset of (length, adjacent lengths)
    // profiles must agree before any search is attempted.
    let profile = |m: &Monograph| -> Vec<(usize, Vec<usize>)> {
        let mut ps: Vec<(usize, Vec<usize>)> = m
            .iter()
            .map(|(e, seq)| {
                (
                    m.len_of(e).unwrap(),
                    seq.iter().map(|t| m.len_of(t).unwrap()).collect(),
                )
            })
            .collect();
        ps.sort();
        ps
    };
    if profile(a) != profile(b) {
        return None;
    }
    let found = search_assignments(a, b, true, true, None);
    found.into_iter().next().map(|map| Morphism {
        dom: a.clone(),
        cod: b.clone(),
        map,
    })
}
