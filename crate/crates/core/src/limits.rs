//! Finite limits and colimits of monographs.
//!
//! Colimits: coproduct (tagged disjoint union), coequalizer (union-find
//! quotient), pushout (coproduct followed by coequalizer). Limits:
//! product (greatest fixpoint over length-matching pairs), equalizer,
//! pullback, and the terminal objects of the standard trace-bounded
//! subcategories. All constructions name their edges deterministically:
//! disjoint unions suffix `.0` / `.1`, quotient classes take their
//! lexicographically least member, pairs become `(x,y)`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{EdgeId, Monograph};
use crate::morphism::{enumerate_morphisms, Morphism, MorphismError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LimitError {
    #[error("morphisms are not a parallel pair")]
    NotParallel,
    #[error("morphisms do not share their domain")]
    NotSpan,
    #[error("morphisms do not share their codomain")]
    NotCospan,
    #[error("monograph is not standard")]
    NotStandard,
    #[error("trace contains length {length} outside the requested set")]
    TraceEscapesO { length: usize },
    #[error("the given cone/cocone admits no mediating morphism")]
    NoMediator,
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// A pushout square: `left: B -> apex` and `right: C -> apex` closing a
/// span out of a common domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushoutResult {
    pub apex: Monograph,
    pub left: Morphism,
    pub right: Morphism,
}

/// A pullback square: `left: apex -> A` and `right: apex -> B` over a
/// cospan into a common codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackResult {
    pub apex: Monograph,
    pub left: Morphism,
    pub right: Morphism,
}

/// Tagged disjoint union with injections. Edge `x` of `a` becomes
/// `x.0`, edge `y` of `b` becomes `y.1`.
pub fn coproduct(a: &Monograph, b: &Monograph) -> (Monograph, Morphism, Morphism) {
    let mut raw = BTreeMap::new();
    for (tag, m) in [(0, a), (1, b)] {
        for (e, seq) in m.iter() {
            raw.insert(e.tagged(tag), seq.iter().map(|t| t.tagged(tag)).collect());
        }
    }
    let sum = Monograph::validate(raw).expect("tagged union is closed");
    let inj = |m: &Monograph, tag: usize| {
        Morphism::new(
            m.clone(),
            sum.clone(),
            m.edge_ids().map(|e| (e.clone(), e.tagged(tag))).collect(),
        )
        .expect("tagging preserves adjacency")
    };
    let mu1 = inj(a, 0);
    let mu2 = inj(b, 1);
    (sum, mu1, mu2)
}

/// Quotient of the codomain by the equivalence generated by
/// `f(x) ~ g(x)`. Each class is named after its lexicographically least
/// member; the second component maps each codomain edge to its class.
pub fn coequalizer(f: &Morphism, g: &Morphism) -> Result<(Monograph, Morphism), LimitError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(LimitError::NotParallel);
    }
    let cod = f.cod();
    let ids: Vec<EdgeId> = cod.edge_ids().cloned().collect();
    let index: BTreeMap<&EdgeId, usize> = ids.iter().enumerate().map(|(i, e)| (e, i)).collect();

    // Plain union-find with path halving.
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for x in f.dom().edge_ids() {
        let a = find(&mut parent, index[f.apply(x).unwrap()]);
        let b = find(&mut parent, index[g.apply(x).unwrap()]);
        parent[a] = b;
    }

    let mut class_name: BTreeMap<usize, EdgeId> = BTreeMap::new();
    for (i, e) in ids.iter().enumerate() {
        let root = find(&mut parent, i);
        match class_name.get(&root) {
            Some(n) if n <= e => {}
            _ => {
                class_name.insert(root, e.clone());
            }
        }
    }
    let rename: BTreeMap<EdgeId, EdgeId> = ids
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), class_name[&find(&mut parent, i)].clone()))
        .collect();

    let mut raw = BTreeMap::new();
    for (root, name) in &class_name {
        let seq = cod.seq(&ids[*root]).unwrap();
        // Any member of the class induces the same quotient sequence;
        // the root is as good as the least member.
        raw.insert(
            name.clone(),
            seq.iter().map(|t| rename[t].clone()).collect(),
        );
    }
    let q = Monograph::validate(raw).expect("quotient of a closed relation is closed");
    let c = Morphism::new(cod.clone(), q.clone(), rename).expect("quotient map is a morphism");
    Ok((q, c))
}

/// Canonical pushout of a span `f: A -> B`, `g: A -> C`: the
/// coequalizer of the two coproduct composites.
pub fn pushout(f: &Morphism, g: &Morphism) -> Result<PushoutResult, LimitError> {
    if f.dom() != g.dom() {
        return Err(LimitError::NotSpan);
    }
    let (_, mu1, mu2) = coproduct(f.cod(), g.cod());
    let p = Morphism::compose(&mu1, f)?;
    let q = Morphism::compose(&mu2, g)?;
    let (_, c) = coequalizer(&p, &q)?;
    Ok(PushoutResult {
        apex: c.cod().clone(),
        left: Morphism::compose(&c, &mu1)?,
        right: Morphism::compose(&c, &mu2)?,
    })
}

/// The unique morphism out of a pushout apex agreeing with a commuting
/// cocone `v: B -> Z`, `w: C -> Z`.
pub fn pushout_mediator(
    po: &PushoutResult,
    v: &Morphism,
    w: &Morphism,
) -> Result<Morphism, LimitError> {
    if v.cod() != w.cod() {
        return Err(LimitError::NotCospan);
    }
    let mut map: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let mut put = |q: &EdgeId, z: &EdgeId| -> bool {
        match map.get(q) {
            Some(prev) => prev == z,
            None => {
                map.insert(q.clone(), z.clone());
                true
            }
        }
    };
    for (b, q) in po.left.map() {
        if !put(q, v.apply(b).unwrap()) {
            return Err(LimitError::NoMediator);
        }
    }
    for (c, q) in po.right.map() {
        if !put(q, w.apply(c).unwrap()) {
            return Err(LimitError::NoMediator);
        }
    }
    Morphism::new(po.apex.clone(), v.cod().clone(), map).map_err(|_| LimitError::NoMediator)
}

/// Rebuilds a pushout square under an injective renaming of its apex
/// edges. Used by the rewriting engine to give results stable names.
pub fn relabel_apex(po: &PushoutResult, rename: &BTreeMap<EdgeId, EdgeId>) -> PushoutResult {
    let raw = po
        .apex
        .iter()
        .map(|(e, seq)| {
            (
                rename[e].clone(),
                seq.iter().map(|t| rename[t].clone()).collect(),
            )
        })
        .collect();
    let apex = Monograph::validate(raw).expect("renaming preserves closure");
    let relabel = |leg: &Morphism| {
        Morphism::new(
            leg.dom().clone(),
            apex.clone(),
            leg.map()
                .iter()
                .map(|(k, v)| (k.clone(), rename[v].clone()))
                .collect(),
        )
        .expect("renaming preserves the morphism equations")
    };
    let left = relabel(&po.left);
    let right = relabel(&po.right);
    PushoutResult { apex, left, right }
}

/// Product with projections. The edge set is the greatest subset of
/// the length-matching pairs closed under componentwise adjacency,
/// computed as a shrinking fixpoint.
pub fn product(a: &Monograph, b: &Monograph) -> (Monograph, Morphism, Morphism) {
    let mut pairs: BTreeSet<(EdgeId, EdgeId)> = BTreeSet::new();
    for x in a.edge_ids() {
        for y in b.edge_ids() {
            if a.len_of(x) == b.len_of(y) {
                pairs.insert((x.clone(), y.clone()));
            }
        }
    }
    loop {
        let drop: Vec<(EdgeId, EdgeId)> = pairs
            .iter()
            .filter(|(x, y)| {
                a.seq(x)
                    .unwrap()
                    .iter()
                    .zip(b.seq(y).unwrap())
                    .any(|(s, t)| !pairs.contains(&(s.clone(), t.clone())))
            })
            .cloned()
            .collect();
        if drop.is_empty() {
            break;
        }
        for p in drop {
            pairs.remove(&p);
        }
    }
    let raw = pairs
        .iter()
        .map(|(x, y)| {
            (
                EdgeId::paired(x, y),
                a.seq(x)
                    .unwrap()
                    .iter()
                    .zip(b.seq(y).unwrap())
                    .map(|(s, t)| EdgeId::paired(s, t))
                    .collect(),
            )
        })
        .collect();
    let prod = Monograph::validate(raw).expect("fixpoint set is closed");
    let proj = |side: usize, target: &Monograph| {
        Morphism::new(
            prod.clone(),
            target.clone(),
            pairs
                .iter()
                .map(|(x, y)| {
                    (
                        EdgeId::paired(x, y),
                        if side == 0 { x.clone() } else { y.clone() },
                    )
                })
                .collect(),
        )
        .expect("projections are morphisms")
    };
    let pi1 = proj(0, a);
    let pi2 = proj(1, b);
    (prod, pi1, pi2)
}

/// Equalizer of a parallel pair: the monograph induced on the edges
/// where the two morphisms agree, with its inclusion.
pub fn equalizer(f: &Morphism, g: &Morphism) -> Result<(Monograph, Morphism), LimitError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(LimitError::NotParallel);
    }
    let keep: BTreeSet<EdgeId> = f
        .dom()
        .edge_ids()
        .filter(|x| f.apply(x) == g.apply(x))
        .cloned()
        .collect();
    // The agreement set is automatically adjacency-closed.
    let sub = crate::model::Submonograph::new(f.dom(), keep).expect("equalizer subset is closed");
    Ok((sub.induced(), Morphism::inclusion(&sub)))
}

/// Pullback of a cospan `f: A -> C`, `g: B -> C`: pairs with equal
/// image, named `(x,y)`, with componentwise sequences and projections.
pub fn pullback(f: &Morphism, g: &Morphism) -> Result<PullbackResult, LimitError> {
    if f.cod() != g.cod() {
        return Err(LimitError::NotCospan);
    }
    let pairs: Vec<(EdgeId, EdgeId)> = f
        .dom()
        .edge_ids()
        .flat_map(|x| {
            g.dom()
                .edge_ids()
                .filter(|y| f.apply(x) == g.apply(y))
                .map(|y| (x.clone(), y.clone()))
                .collect::<Vec<_>>()
        })
        .collect();
    let a = f.dom();
    let b = g.dom();
    let raw = pairs
        .iter()
        .map(|(x, y)| {
            (
                EdgeId::paired(x, y),
                a.seq(x)
                    .unwrap()
                    .iter()
                    .zip(b.seq(y).unwrap())
                    .map(|(s, t)| EdgeId::paired(s, t))
                    .collect(),
            )
        })
        .collect();
    let apex = Monograph::validate(raw).expect("matched pairs are closed componentwise");
    let proj = |side: usize, target: &Monograph| {
        Morphism::new(
            apex.clone(),
            target.clone(),
            pairs
                .iter()
                .map(|(x, y)| {
                    (
                        EdgeId::paired(x, y),
                        if side == 0 { x.clone() } else { y.clone() },
                    )
                })
                .collect(),
        )
        .expect("projections are morphisms")
    };
    Ok(PullbackResult {
        left: proj(0, a),
        right: proj(1, b),
        apex,
    })
}

/// The unique morphism into a pullback apex agreeing with a commuting
/// cone `v: Z -> A`, `w: Z -> B`.
pub fn pullback_mediator(
    pb: &PullbackResult,
    v: &Morphism,
    w: &Morphism,
) -> Result<Morphism, LimitError> {
    if v.dom() != w.dom() {
        return Err(LimitError::NotSpan);
    }
    let map = v
        .map()
        .iter()
        .map(|(z, x)| (z.clone(), EdgeId::paired(x, w.apply(z).unwrap())))
        .collect();
    Morphism::new(v.dom().clone(), pb.apex.clone(), map).map_err(|_| LimitError::NoMediator)
}

/// The terminal standard monograph for the length set `O`: one edge per
/// length, each mapped to that many copies of the node `0`. Empty when
/// `0` is not in `O`, since no other edge could then be closed.
pub fn terminal(o: &BTreeSet<usize>) -> Monograph {
    if !o.contains(&0) {
        return Monograph::empty();
    }
    let zero = EdgeId::from("0");
    let raw = o
        .iter()
        .map(|len| (EdgeId::from(len.to_string()), vec![zero.clone(); *len]))
        .collect();
    Monograph::validate(raw).expect("length edges are closed over the node 0")
}

/// The unique morphism from a standard monograph with trace inside `O`
/// into `terminal(O)`: every edge goes to its length.
pub fn bang(m: &Monograph, o: &BTreeSet<usize>) -> Result<Morphism, LimitError> {
    if !m.is_standard() {
        return Err(LimitError::NotStandard);
    }
    if let Some(len) = m.trace().iter().find(|l| !o.contains(l)).copied() {
        return Err(LimitError::TraceEscapesO { length: len });
    }
    let t = terminal(o);
    let map = m
        .iter()
        .map(|(e, seq)| (e.clone(), EdgeId::from(seq.len().to_string())))
        .collect();
    Ok(Morphism::new(m.clone(), t, map).expect("length map is a morphism"))
}

/// Whether the commuting square `p ∘ f = q ∘ g` is a pushout: the
/// canonical apex must map to the candidate by an isomorphism.
pub fn is_pushout_square(
    f: &Morphism,
    g: &Morphism,
    p: &Morphism,
    q: &Morphism,
) -> Result<bool, LimitError> {
    let lhs = Morphism::compose(p, f)?;
    let rhs = Morphism::compose(q, g)?;
    if lhs != rhs {
        return Ok(false);
    }
    let po = pushout(f, g)?;
    match pushout_mediator(&po, p, q) {
        Ok(u) => Ok(u.classify().iso),
        Err(LimitError::NoMediator) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Whether the commuting square `f ∘ p = g ∘ q` is a pullback: the
/// candidate apex must map to the canonical one by an isomorphism.
pub fn is_pullback_square(
    p: &Morphism,
    q: &Morphism,
    f: &Morphism,
    g: &Morphism,
) -> Result<bool, LimitError> {
    let lhs = Morphism::compose(f, p)?;
    let rhs = Morphism::compose(g, q)?;
    if lhs != rhs {
        return Ok(false);
    }
    let pb = pullback(f, g)?;
    match pullback_mediator(&pb, p, q) {
        Ok(u) => Ok(u.classify().iso),
        Err(LimitError::NoMediator) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Checks a coequalizer's universal property against an explicit
/// cocone: `d` must factor uniquely through `c`. Test-suite helper.
pub fn unique_factorization_through(c: &Morphism, d: &Morphism) -> Result<Morphism, LimitError> {
    let candidates: Vec<Morphism> = enumerate_morphisms(c.cod(), d.cod(), None)
        .into_iter()
        .filter(|h| Morphism::compose(h, c).ok().as_ref() == Some(d))
        .collect();
    match candidates.len() {
        1 => Ok(candidates.into_iter().next().unwrap()),
        _ => Err(LimitError::NoMediator),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Submonograph;

    fn mutual() -> Monograph {
        Monograph::build(&[("x", &["x", "y", "x"]), ("y", &["y", "x", "y"])]).unwrap()
    }

    fn graph2() -> Monograph {
        Monograph::build(&[("n1", &[]), ("n2", &[]), ("e", &["n1", "n2"])]).unwrap()
    }

    #[test]
    fn coproduct_tags_and_unions_traces() {
        let a = mutual();
        let (sum, mu1, mu2) = coproduct(&a, &a);
        assert_eq!(sum.edge_count(), 4);
        assert_eq!(sum.trace(), BTreeSet::from([3]));
        assert!(mu1.classify().injective);
        assert!(mu2.classify().injective);

        let (s2, _, m2) = coproduct(&Monograph::empty(), &graph2());
        assert!(m2.classify().iso || s2.edge_count() == graph2().edge_count());
        assert_eq!(
            s2.trace(),
            graph2().trace().union(&BTreeSet::new()).cloned().collect()
        );
    }

    #[test]
    fn coequalizer_of_equal_pair_is_iso() {
        let a = mutual();
        let id = Morphism::identity(&a);
        let (q, c) = coequalizer(&id, &id).unwrap();
        assert_eq!(q.edge_count(), a.edge_count());
        assert!(c.classify().iso);
    }

    #[test]
    fn coequalizer_bends_an_edge_into_a_loop() {
        let pt = Monograph::build(&[("p", &[])]).unwrap();
        let g = graph2();
        let f = Morphism::build(&pt, &g, &[("p", "n1")]).unwrap();
        let h = Morphism::build(&pt, &g, &[("p", "n2")]).unwrap();
        let (q, c) = coequalizer(&f, &h).unwrap();
        let expect = Monograph::build(&[("e", &["n1", "n1"]), ("n1", &[])]).unwrap();
        assert_eq!(q, expect);
        assert_eq!(q.trace(), g.trace());
        assert_eq!(
            Morphism::compose(&c, &f).unwrap(),
            Morphism::compose(&c, &h).unwrap()
        );
    }

    /// Oracle: the quotient partition equals the naive transitive
    /// closure of the generating relation.
    #[test]
    fn coequalizer_matches_naive_closure() {
        let a = Monograph::build(&[("s", &[]), ("t", &[])]).unwrap();
        let g = Monograph::build(&[("m1", &[]), ("m2", &[]), ("m3", &[]), ("m4", &[])]).unwrap();
        let f1 = Morphism::build(&a, &g, &[("s", "m1"), ("t", "m2")]).unwrap();
        let f2 = Morphism::build(&a, &g, &[("s", "m2"), ("t", "m3")]).unwrap();
        let (q, c) = coequalizer(&f1, &f2).unwrap();
        assert_eq!(q.edge_count(), 2);
        assert_eq!(c.apply(&"m1".into()), c.apply(&"m3".into()));
        assert_eq!(c.apply(&"m1".into()).unwrap(), &EdgeId::from("m1"));
        assert_eq!(c.apply(&"m4".into()).unwrap(), &EdgeId::from("m4"));
    }

    #[test]
    fn coequalizer_universal_property_on_small_cocones() {
        let pt = Monograph::build(&[("p", &[])]).unwrap();
        let g = graph2();
        let f = Morphism::build(&pt, &g, &[("p", "n1")]).unwrap();
        let h = Morphism::build(&pt, &g, &[("p", "n2")]).unwrap();
        let (_, c) = coequalizer(&f, &h).unwrap();
        let z = Monograph::build(&[("u", &[]), ("l", &["u", "u"])]).unwrap();
        for d in enumerate_morphisms(&g, &z, None) {
            if Morphism::compose(&d, &f).unwrap() == Morphism::compose(&d, &h).unwrap() {
                assert!(unique_factorization_through(&c, &d).is_ok());
            }
        }
    }

    #[test]
    fn pushout_glues_two_edges_at_a_node() {
        let pt = Monograph::build(&[("p", &[])]).unwrap();
        let g = graph2();
        let into_n2 = Morphism::build(&pt, &g, &[("p", "n2")]).unwrap();
        let into_n1 = Morphism::build(&pt, &g, &[("p", "n1")]).unwrap();
        let po = pushout(&into_n2, &into_n1).unwrap();
        // A path of two edges through three nodes.
        assert_eq!(po.apex.trace(), BTreeSet::from([0, 2]));
        assert_eq!(po.apex.nodes().len(), 3);
        assert_eq!(po.apex.edge_count(), 5);
        // Legs are jointly surjective.
        let mut hit: BTreeSet<EdgeId> = po.left.map().values().cloned().collect();
        hit.extend(po.right.map().values().cloned());
        assert_eq!(hit, po.apex.edge_set());
    }

    #[test]
    fn pushout_along_identity_is_iso() {
        let g = graph2();
        let id = Morphism::identity(&g);
        let f = Morphism::build(
            &g,
            &mutual_like_target(),
            &[("n1", "m"), ("n2", "m"), ("e", "l")],
        )
        .unwrap();
        let po = pushout(&id, &f).unwrap();
        assert!(po.right.classify().iso);
    }

    fn mutual_like_target() -> Monograph {
        Monograph::build(&[("m", &[]), ("l", &["m", "m"])]).unwrap()
    }

    #[test]
    fn product_of_the_two_edge_example_with_itself() {
        let a = mutual();
        let (p, pi1, pi2) = product(&a, &a);
        assert_eq!(p.edge_count(), 4);
        assert_eq!(p.trace(), BTreeSet::from([3]));
        assert!(p.contains(&"(x,y)".into()));
        assert!(pi1.classify().surjective);
        assert!(pi2.classify().surjective);
    }

    /// Oracle: union of all closed subsets of the length-matching pairs.
    #[test]
    fn product_matches_exhaustive_greatest_subset() {
        let cases = [
            (mutual(), mutual()),
            (graph2(), graph2()),
            (graph2(), mutual_like_target()),
            (mutual(), Monograph::empty()),
        ];
        for (a, b) in cases {
            let (p, _, _) = product(&a, &b);
            let mut all: Vec<(EdgeId, EdgeId)> = Vec::new();
            for x in a.edge_ids() {
                for y in b.edge_ids() {
                    if a.len_of(x) == b.len_of(y) {
                        all.push((x.clone(), y.clone()));
                    }
                }
            }
            let mut greatest: BTreeSet<(EdgeId, EdgeId)> = BTreeSet::new();
            for mask in 0u64..(1 << all.len()) {
                let cand: BTreeSet<(EdgeId, EdgeId)> = all
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, p)| p.clone())
                    .collect();
                let closed = cand.iter().all(|(x, y)| {
                    a.seq(x)
                        .unwrap()
                        .iter()
                        .zip(b.seq(y).unwrap())
                        .all(|(s, t)| cand.contains(&(s.clone(), t.clone())))
                });
                if closed {
                    greatest.extend(cand);
                }
            }
            let expect: BTreeSet<EdgeId> =
                greatest.iter().map(|(x, y)| EdgeId::paired(x, y)).collect();
            assert_eq!(p.edge_set(), expect);
        }
    }

    #[test]
    fn product_with_empty_is_empty() {
        let (p, _, _) = product(&mutual(), &Monograph::empty());
        assert!(p.is_empty());
    }

    #[test]
    fn equalizer_of_identity_and_swap_is_empty() {
        let a = mutual();
        let id = Morphism::identity(&a);
        let swap = Morphism::build(&a, &a, &[("x", "y"), ("y", "x")]).unwrap();
        let (e, _) = equalizer(&id, &swap).unwrap();
        assert!(e.is_empty());
        let (full, inc) = equalizer(&id, &id).unwrap();
        assert_eq!(full, a);
        assert!(inc.classify().iso);
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let a = mutual();
        let id = Morphism::identity(&a);
        let pb = pullback(&id, &id).unwrap();
        assert_eq!(pb.apex.edge_count(), a.edge_count());
        assert!(pb.left.classify().iso);
    }

    /// Oracle: the apex edge set equals the set-level pullback.
    #[test]
    fn pullback_matches_set_pullback() {
        let g = graph2();
        let t = mutual_like_target();
        let f = Morphism::build(&g, &t, &[("n1", "m"), ("n2", "m"), ("e", "l")]).unwrap();
        let pb = pullback(&f, &f).unwrap();
        let mut expect = BTreeSet::new();
        for x in g.edge_ids() {
            for y in g.edge_ids() {
                if f.apply(x) == f.apply(y) {
                    expect.insert(EdgeId::paired(x, y));
                }
            }
        }
        assert_eq!(pb.apex.edge_set(), expect);
    }

    #[test]
    fn pullback_along_mono_is_preimage() {
        let g = graph2();
        let sub = Submonograph::new(&g, BTreeSet::from([EdgeId::from("n1")])).unwrap();
        let inc = Morphism::inclusion(&sub);
        let t = mutual_like_target();
        let f = Morphism::build(&g, &t, &[("n1", "m"), ("n2", "m"), ("e", "l")]).unwrap();
        let to_g = Morphism::identity(&g);
        let pb = pullback(&to_g, &inc).unwrap();
        // Pulling the submonograph back along the identity recovers it.
        assert_eq!(pb.apex.edge_count(), 1);
        let _ = f;
    }

    #[test]
    fn terminal_objects_and_bang() {
        let o = BTreeSet::from([0usize, 1, 2]);
        let t = terminal(&o);
        assert_eq!(
            t,
            Monograph::build(&[("0", &[]), ("1", &["0"]), ("2", &["0", "0"])]).unwrap()
        );
        assert!(t.is_standard());
        assert_eq!(t.trace(), o);

        assert!(terminal(&BTreeSet::new()).is_empty());
        assert!(terminal(&BTreeSet::from([2usize])).is_empty());

        let g = graph2();
        let o2 = BTreeSet::from([0usize, 2]);
        let b = bang(&g, &o2).unwrap();
        assert_eq!(b.apply(&"e".into()).unwrap(), &EdgeId::from("2"));
        assert_eq!(b.apply(&"n1".into()).unwrap(), &EdgeId::from("0"));
        let all = enumerate_morphisms(&g, &terminal(&o2), None);
        assert_eq!(all, vec![b]);

        assert_eq!(
            bang(&mutual(), &BTreeSet::from([3usize])),
            Err(LimitError::NotStandard)
        );
        assert_eq!(
            bang(&g, &BTreeSet::from([0usize])),
            Err(LimitError::TraceEscapesO { length: 2 })
        );
    }

    #[test]
    fn no_morphism_into_smaller_terminal() {
        // A monograph with a longer edge admits no morphism into T_O,
        // so T_O cannot be terminal for all monographs.
        let o = BTreeSet::from([0usize, 1]);
        let bigger = terminal(&BTreeSet::from([0usize, 1, 2]));
        assert!(enumerate_morphisms(&bigger, &terminal(&o), None).is_empty());
    }

    #[test]
    fn pushout_square_checker_accepts_canonical_and_rejects_junk() {
        let pt = Monograph::build(&[("p", &[])]).unwrap();
        let g = graph2();
        let f = Morphism::build(&pt, &g, &[("p", "n1")]).unwrap();
        let h = Morphism::build(&pt, &g, &[("p", "n2")]).unwrap();
        let po = pushout(&f, &h).unwrap();
        assert!(is_pushout_square(&f, &h, &po.left, &po.right).unwrap());

        // The same cocone into an apex with a junk extra node is not one.
        let mut raw: BTreeMap<EdgeId, Vec<EdgeId>> = po
            .apex
            .iter()
            .map(|(e, s)| (e.clone(), s.to_vec()))
            .collect();
        raw.insert("junk".into(), vec![]);
        let fat = Monograph::validate(raw).unwrap();
        let lift =
            |m: &Morphism| Morphism::new(m.dom().clone(), fat.clone(), m.map().clone()).unwrap();
        assert!(!is_pushout_square(&f, &h, &lift(&po.left), &lift(&po.right)).unwrap());
    }

    #[test]
    fn relabel_apex_keeps_squares_intact() {
        let pt = Monograph::build(&[("p", &[])]).unwrap();
        let g = graph2();
        let f = Morphism::build(&pt, &g, &[("p", "n1")]).unwrap();
        let h = Morphism::build(&pt, &g, &[("p", "n2")]).unwrap();
        let po = pushout(&f, &h).unwrap();
        let rename: BTreeMap<EdgeId, EdgeId> = po
            .apex
            .edge_ids()
            .map(|e| (e.clone(), EdgeId::from(format!("r_{}", e))))
            .collect();
        let r = relabel_apex(&po, &rename);
        assert!(is_pushout_square(&f, &h, &r.left, &r.right).unwrap());
    }
}
