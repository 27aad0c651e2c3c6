//! Many-sorted signatures, algebras, and the bridge to type
//! monographs.
//!
//! A signature whose operators all take exactly one argument is a graph
//! structure. Every monograph `T` induces such a signature with one
//! sort per edge and one operator `e.ι` per sequence position, and
//! conversely every graph structure arises this way from a type
//! monograph, one per choice of operator numeration. Typed monographs
//! over `T` correspond to algebras of the induced signature: carriers
//! are the typing fibers and the operators read off adjacency.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{EdgeId, Monograph};
use crate::morphism::{Morphism, TypedMonograph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigError {
    #[error("operator `{0}` is declared twice")]
    DuplicateOperator(String),
    #[error("operator `{op}` uses undeclared sort `{sort}`")]
    UnknownSort { op: String, sort: String },
    #[error("operator `{0}` is not monadic")]
    NotMonadic(String),
    #[error("ordering for sort `{sort}` is not a permutation of its operators")]
    BadOrdering { sort: String },
    #[error("algebra does not fit the signature: {0}")]
    SignatureMismatch(String),
    #[error("carrier of sort `{sort}` misses element `{element}` required by `{op}`")]
    PartialInterpretation {
        sort: String,
        element: String,
        op: String,
    },
}

/// An operator with its domain sorts and range sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator {
    pub name: String,
    pub dom: Vec<String>,
    pub rng: String,
}

/// A many-sorted signature. Operators keep their declaration order,
/// which serves as the default numeration when synthesizing a type
/// monograph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    sorts: BTreeSet<String>,
    ops: Vec<Operator>,
}

impl Signature {
    pub fn new(sorts: BTreeSet<String>, ops: Vec<Operator>) -> Result<Signature, SigError> {
        let mut seen = BTreeSet::new();
        for op in &ops {
            if !seen.insert(op.name.clone()) {
                return Err(SigError::DuplicateOperator(op.name.clone()));
            }
            for s in op.dom.iter().chain(std::iter::once(&op.rng)) {
                if !sorts.contains(s) {
                    return Err(SigError::UnknownSort {
                        op: op.name.clone(),
                        sort: s.clone(),
                    });
                }
            }
        }
        Ok(Signature { sorts, ops })
    }

    /// Convenience constructor from string slices.
    pub fn build(sorts: &[&str], ops: &[(&str, &[&str], &str)]) -> Result<Signature, SigError> {
        Signature::new(
            sorts.iter().map(|s| s.to_string()).collect(),
            ops.iter()
                .map(|(name, dom, rng)| Operator {
                    name: name.to_string(),
                    dom: dom.iter().map(|s| s.to_string()).collect(),
                    rng: rng.to_string(),
                })
                .collect(),
        )
    }

    pub fn sorts(&self) -> &BTreeSet<String> {
        &self.sorts
    }

    pub fn operators(&self) -> &[Operator] {
        &self.ops
    }

    pub fn operator(&self, name: &str) -> Option<&Operator> {
        self.ops.iter().find(|o| o.name == name)
    }

    /// All operators are monadic: one domain sort each.
    pub fn is_graph_structure(&self) -> bool {
        self.ops.iter().all(|o| o.dom.len() == 1)
    }

    /// The operators whose single domain sort is `s`, in declaration
    /// order. Only meaningful for graph structures.
    pub fn monadic_ops_of(&self, s: &str) -> Vec<&Operator> {
        self.ops
            .iter()
            .filter(|o| o.dom.as_slice() == [s.to_string()])
            .collect()
    }
}

/// The signature induced by a type monograph: one sort per edge, one
/// monadic operator `e.ι` per position of each sequence.
pub fn sig_of_monograph(t: &Monograph) -> Signature {
    let sorts = t.edge_ids().map(|e| e.as_str().to_string()).collect();
    let ops = t
        .iter()
        .flat_map(|(e, seq)| {
            seq.iter().enumerate().map(move |(i, target)| Operator {
                name: format!("{}.{}", e, i),
                dom: vec![e.as_str().to_string()],
                rng: target.as_str().to_string(),
            })
        })
        .collect();
    Signature::new(sorts, ops).expect("edge sorts cover all operators")
}

/// Synthesizes a type monograph from a graph structure: edges are the
/// sorts and the sequence of a sort lists the range sorts of its
/// operators in numeration order. The numeration defaults to
/// declaration order and can be overridden per sort. Also returns the
/// witnessing bijection from the given operator names to the canonical
/// `sort.ι` names.
pub fn type_monograph_of_sig(
    sig: &Signature,
    orderings: &BTreeMap<String, Vec<String>>,
) -> Result<(Monograph, BTreeMap<String, String>), SigError> {
    if let Some(op) = sig.ops.iter().find(|o| o.dom.len() != 1) {
        return Err(SigError::NotMonadic(op.name.clone()));
    }
    let mut raw: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    let mut witness: BTreeMap<String, String> = BTreeMap::new();
    for s in &sig.sorts {
        let declared = sig.monadic_ops_of(s);
        let ordered: Vec<&Operator> = match orderings.get(s) {
            None => declared,
            Some(names) => {
                let declared_names: BTreeSet<&str> =
                    declared.iter().map(|o| o.name.as_str()).collect();
                let given: BTreeSet<&str> = names.iter().map(|n| n.as_str()).collect();
                if declared_names != given || names.len() != declared.len() {
                    return Err(SigError::BadOrdering { sort: s.clone() });
                }
                names.iter().map(|n| sig.operator(n).unwrap()).collect()
            }
        };
        let seq = ordered
            .iter()
            .map(|o| EdgeId::from(o.rng.as_str()))
            .collect();
        for (i, o) in ordered.iter().enumerate() {
            witness.insert(o.name.clone(), format!("{}.{}", s, i));
        }
        raw.insert(EdgeId::from(s.as_str()), seq);
    }
    let t = Monograph::validate(raw).expect("all range sorts are sorts");
    Ok((t, witness))
}

/// A signature morphism: a sort map together with an operator map
/// making the profile squares commute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigMorphism {
    pub sort_map: BTreeMap<String, String>,
    pub op_map: BTreeMap<String, String>,
}

/// A sort-fixed isomorphism between two signatures on the same sorts:
/// an operator bijection preserving profiles exactly. Operators with
/// equal profiles are matched in name order, which makes the returned
/// witness deterministic.
pub fn sig_iso_over_sorts(g1: &Signature, g2: &Signature) -> Option<SigMorphism> {
    if g1.sorts != g2.sorts || g1.ops.len() != g2.ops.len() {
        return None;
    }
    let group = |sig: &Signature| -> BTreeMap<(Vec<String>, String), Vec<String>> {
        let mut m: BTreeMap<(Vec<String>, String), Vec<String>> = BTreeMap::new();
        for o in &sig.ops {
            m.entry((o.dom.clone(), o.rng.clone()))
                .or_default()
                .push(o.name.clone());
        }
        for v in m.values_mut() {
            v.sort();
        }
        m
    };
    let a = group(g1);
    let b = group(g2);
    if a.keys().collect::<Vec<_>>() != b.keys().collect::<Vec<_>>() {
        return None;
    }
    let mut op_map = BTreeMap::new();
    for (profile, names) in &a {
        let others = &b[profile];
        if names.len() != others.len() {
            return None;
        }
        for (x, y) in names.iter().zip(others) {
            op_map.insert(x.clone(), y.clone());
        }
    }
    Some(SigMorphism {
        sort_map: g1.sorts.iter().map(|s| (s.clone(), s.clone())).collect(),
        op_map,
    })
}

/// The number of sort-fixed isomorphisms between two signatures: the
/// product over profiles of the factorial of the group size, or zero
/// when the profiles disagree.
pub fn sig_iso_count_over_sorts(g1: &Signature, g2: &Signature) -> usize {
    if sig_iso_over_sorts(g1, g2).is_none() {
        return 0;
    }
    let mut groups: BTreeMap<(Vec<String>, String), usize> = BTreeMap::new();
    for o in &g1.ops {
        *groups.entry((o.dom.clone(), o.rng.clone())).or_default() += 1;
    }
    groups
        .values()
        .map(|n| (1..=*n).product::<usize>())
        .product()
}

/// A finite algebra with explicit interpretation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    sig: Signature,
    carriers: BTreeMap<String, BTreeSet<String>>,
    interps: BTreeMap<String, BTreeMap<Vec<String>, String>>,
}

impl Algebra {
    pub fn new(
        sig: Signature,
        carriers: BTreeMap<String, BTreeSet<String>>,
        interps: BTreeMap<String, BTreeMap<Vec<String>, String>>,
    ) -> Result<Algebra, SigError> {
        for s in carriers.keys() {
            if !sig.sorts().contains(s) {
                return Err(SigError::SignatureMismatch(format!(
                    "carrier declared for unknown sort `{s}`"
                )));
            }
        }
        let empty = BTreeSet::new();
        let carrier = |s: &str| carriers.get(s).unwrap_or(&empty);
        for op in sig.operators() {
            let table = interps.get(&op.name).cloned().unwrap_or_default();
            let mut expected = vec![Vec::new()];
            for s in &op.dom {
                expected = expected
                    .into_iter()
                    .flat_map(|tuple: Vec<String>| {
                        carrier(s).iter().map(move |x| {
                            let mut t = tuple.clone();
                            t.push(x.clone());
                            t
                        })
                    })
                    .collect();
            }
            for tuple in &expected {
                match table.get(tuple) {
                    None => {
                        return Err(SigError::SignatureMismatch(format!(
                            "operator `{}` has no value on ({})",
                            op.name,
                            tuple.join(",")
                        )))
                    }
                    Some(v) if !carrier(&op.rng).contains(v) => {
                        return Err(SigError::PartialInterpretation {
                            sort: op.rng.clone(),
                            element: v.clone(),
                            op: op.name.clone(),
                        })
                    }
                    _ => {}
                }
            }
            if table.len() != expected.len() {
                return Err(SigError::SignatureMismatch(format!(
                    "operator `{}` is interpreted on tuples outside its domain",
                    op.name
                )));
            }
        }
        Ok(Algebra {
            sig,
            carriers,
            interps,
        })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn carrier(&self, sort: &str) -> BTreeSet<String> {
        self.carriers.get(sort).cloned().unwrap_or_default()
    }

    pub fn carriers(&self) -> &BTreeMap<String, BTreeSet<String>> {
        &self.carriers
    }

    pub fn interps(&self) -> &BTreeMap<String, BTreeMap<Vec<String>, String>> {
        &self.interps
    }

    pub fn apply(&self, op: &str, args: &[String]) -> Option<&String> {
        self.interps.get(op)?.get(args)
    }
}

/// The algebra of a typed monograph: carriers are the typing fibers
/// and the operator `e.ι` sends an edge to its ι-th sequence entry.
pub fn algebra_of_typed(a: &TypedMonograph) -> Algebra {
    let t = a.cod();
    let sig = sig_of_monograph(t);
    let mut carriers: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for s in sig.sorts() {
        carriers.insert(s.clone(), BTreeSet::new());
    }
    for (x, e) in a.map() {
        carriers
            .get_mut(e.as_str())
            .unwrap()
            .insert(x.as_str().to_string());
    }
    let mut interps: BTreeMap<String, BTreeMap<Vec<String>, String>> = BTreeMap::new();
    for op in sig.operators() {
        let sort = &op.dom[0];
        let i: usize = op.name.rsplit('.').next().unwrap().parse().unwrap();
        let table = carriers[sort]
            .iter()
            .map(|x| {
                let seq = a.dom().seq(&EdgeId::from(x.as_str())).unwrap();
                (vec![x.clone()], seq[i].as_str().to_string())
            })
            .collect();
        interps.insert(op.name.clone(), table);
    }
    Algebra::new(sig, carriers, interps).expect("fibers interpret adjacency totally")
}

/// Rebuilds a typed monograph from an algebra over the signature of a
/// type monograph. Edges are `element@sort` pairs; the sequence reads
/// off the operator tables; the typing projects to the sort.
pub fn typed_of_algebra(c: &Algebra, t: &Monograph) -> Result<TypedMonograph, SigError> {
    if c.sig() != &sig_of_monograph(t) {
        return Err(SigError::SignatureMismatch(
            "algebra signature is not the one induced by the type monograph".into(),
        ));
    }
    let tag = |x: &str, s: &EdgeId| EdgeId::from(format!("{}@{}", x, s));
    let mut raw: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    let mut typing: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for s in t.edge_ids() {
        let targets = t.seq(s).unwrap();
        for x in c.carrier(s.as_str()) {
            let seq = targets
                .iter()
                .enumerate()
                .map(|(i, target)| {
                    let v = c
                        .apply(&format!("{}.{}", s, i), std::slice::from_ref(&x))
                        .expect("validated algebra is total");
                    tag(v, target)
                })
                .collect();
            raw.insert(tag(&x, s), seq);
            typing.insert(tag(&x, s), s.clone());
        }
    }
    let dom = Monograph::validate(raw).expect("operator values live in the range carriers");
    Ok(Morphism::new(dom, t.clone(), typing).expect("projection to sorts is a morphism"))
}

/// A homomorphism between algebras of the same signature: one function
/// per sort, commuting with every operator.
pub type Homomorphism = BTreeMap<String, BTreeMap<String, String>>;

pub fn is_homomorphism(a: &Algebra, b: &Algebra, h: &Homomorphism) -> bool {
    if a.sig() != b.sig() {
        return false;
    }
    for s in a.sig().sorts() {
        let Some(hs) = h.get(s) else {
            if !a.carrier(s).is_empty() {
                return false;
            }
            continue;
        };
        let ca = a.carrier(s);
        let cb = b.carrier(s);
        if hs.len() != ca.len() || !ca.iter().all(|x| hs.get(x).is_some_and(|y| cb.contains(y))) {
            return false;
        }
    }
    for op in a.sig().operators() {
        for (args, v) in a.interps().get(&op.name).into_iter().flatten() {
            let mapped: Vec<String> = args
                .iter()
                .zip(&op.dom)
                .map(|(x, s)| h[s][x].clone())
                .collect();
            let lhs = b.apply(&op.name, &mapped);
            let rhs = h[&op.rng].get(v);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// All homomorphisms `a -> b` by brute force over per-sort functions,
/// in lexicographic order. Desk-scale only.
pub fn enumerate_homomorphisms(a: &Algebra, b: &Algebra) -> Vec<Homomorphism> {
    if a.sig() != b.sig() {
        return Vec::new();
    }
    let sorts: Vec<String> = a.sig().sorts().iter().cloned().collect();
    let mut partials: Vec<Homomorphism> = vec![BTreeMap::new()];
    for s in &sorts {
        let ca: Vec<String> = a.carrier(s).into_iter().collect();
        let cb: Vec<String> = b.carrier(s).into_iter().collect();
        if !ca.is_empty() && cb.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::new();
        for p in partials {
            let mut maps: Vec<BTreeMap<String, String>> = vec![BTreeMap::new()];
            for x in &ca {
                maps = maps
                    .into_iter()
                    .flat_map(|m| {
                        cb.iter().map(move |y| {
                            let mut m2 = m.clone();
                            m2.insert(x.clone(), y.clone());
                            m2
                        })
                    })
                    .collect();
            }
            for m in maps {
                let mut p2 = p.clone();
                p2.insert(s.clone(), m);
                next.push(p2);
            }
        }
        partials = next;
    }
    partials
        .into_iter()
        .filter(|h| is_homomorphism(a, b, h))
        .collect()
}

/// Some algebra isomorphism, found by filtering the brute-force
/// enumeration for per-sort bijections with homomorphic inverses.
pub fn find_algebra_isomorphism(a: &Algebra, b: &Algebra) -> Option<Homomorphism> {
    enumerate_homomorphisms(a, b).into_iter().find(|h| {
        let inverse: Option<Homomorphism> = h
            .iter()
            .map(|(s, m)| {
                let inv: BTreeMap<String, String> =
                    m.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
                (inv.len() == m.len() && inv.len() == b.carrier(s).len()).then(|| (s.clone(), inv))
            })
            .collect();
        inverse.is_some_and(|inv| is_homomorphism(b, a, &inv))
    })
}
