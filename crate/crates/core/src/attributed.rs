//! Attributed typed monographs.
//!
//! An attributed typed monograph pairs a typing `a : A -> T` with a
//! data algebra whose carriers, on every sort that is also an edge of
//! `T`, coincide with the typing fibers. Attributes are the elements of
//! those shared carriers. Morphisms that fix every attribute pointwise
//! ("stabilizing" morphisms) are exactly the ones that extend to
//! attributed morphisms with the identity on the data part, and the
//! rewrite gate admits only rules and matches built from them.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::EdgeId;
use crate::morphism::{Morphism, MorphismError, TypedMonograph};
use crate::rewriting::{dpo_apply, spo_apply, PartialRule, RewriteError, SpanRule};
use crate::signature::{algebra_of_typed, Algebra, Operator, SigError, Signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtmError {
    #[error("operator `{0}` appears in both signatures")]
    OperatorClash(String),
    #[error("carrier of shared sort `{sort}` is {actual:?} but the typing fiber is {expected:?}")]
    CarrierMismatch {
        sort: String,
        expected: BTreeSet<String>,
        actual: BTreeSet<String>,
    },
    #[error("morphism `{role}` does not stabilize attribute `{attribute}`")]
    NotStabilizing { role: String, attribute: EdgeId },
    #[error("rule typing does not commute with the rule morphisms")]
    TypingMismatch,
    #[error("data part of the morphism disagrees with its monograph part on a shared sort")]
    SharedSortDisagreement { sort: String },
    #[error(transparent)]
    Sig(#[from] SigError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// The sum of a graph-structure signature and a data signature:
/// shared sorts are identified, operator sets stay disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinedSignature {
    pub merged: Signature,
    pub left: Signature,
    pub right: Signature,
}

pub fn combine_signatures(
    left: &Signature,
    right: &Signature,
) -> Result<CombinedSignature, AtmError> {
    for o in left.operators() {
        if right.operator(&o.name).is_some() {
            return Err(AtmError::OperatorClash(o.name.clone()));
        }
    }
    let sorts: BTreeSet<String> = left.sorts().union(right.sorts()).cloned().collect();
    let ops: Vec<Operator> = left
        .operators()
        .iter()
        .chain(right.operators())
        .cloned()
        .collect();
    let merged = Signature::new(sorts, ops)?;
    Ok(CombinedSignature {
        merged,
        left: left.clone(),
        right: right.clone(),
    })
}

/// A validated attributed typed monograph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atm {
    typing: TypedMonograph,
    data: Algebra,
}

impl Atm {
    pub fn typing(&self) -> &TypedMonograph {
        &self.typing
    }

    pub fn data(&self) -> &Algebra {
        &self.data
    }

    /// The sorts of the data signature that are also edges of the type.
    pub fn shared_sorts(&self) -> BTreeSet<String> {
        self.data
            .sig()
            .sorts()
            .iter()
            .filter(|s| self.typing.cod().contains(&EdgeId::from(s.as_str())))
            .cloned()
            .collect()
    }

    /// The attribute set: the union of all shared-sort carriers, read
    /// back as edges of the underlying monograph. Always derived, never
    /// user-supplied.
    pub fn attributes(&self) -> BTreeSet<EdgeId> {
        self.shared_sorts()
            .iter()
            .flat_map(|s| self.data.carrier(s))
            .map(EdgeId::from)
            .collect()
    }
}

/// Checks the shared-carrier condition: on every sort of the data
/// signature that is also a type edge, the data carrier must equal the
/// typing fiber.
pub fn atm_validate(typing: &TypedMonograph, data: &Algebra) -> Result<Atm, AtmError> {
    for s in data.sig().sorts() {
        let sort_edge = EdgeId::from(s.as_str());
        if !typing.cod().contains(&sort_edge) {
            continue;
        }
        let fiber: BTreeSet<String> = typing
            .map()
            .iter()
            .filter(|(_, t)| **t == sort_edge)
            .map(|(x, _)| x.as_str().to_string())
            .collect();
        let carrier = data.carrier(s);
        if fiber != carrier {
            return Err(AtmError::CarrierMismatch {
                sort: s.clone(),
                expected: fiber,
                actual: carrier,
            });
        }
    }
    Ok(Atm {
        typing: typing.clone(),
        data: data.clone(),
    })
}

/// The combined algebra of an attributed typed monograph: typing fibers
/// with adjacency projections on the type side, the data algebra on the
/// data side, coinciding on shared sorts.
pub fn atm_to_algebra(x: &Atm) -> Result<Algebra, AtmError> {
    let graph_side = algebra_of_typed(&x.typing);
    let combined = combine_signatures(graph_side.sig(), x.data.sig())?;
    let mut carriers = graph_side.carriers().clone();
    for (s, c) in x.data.carriers() {
        carriers.entry(s.clone()).or_insert_with(|| c.clone());
    }
    let mut interps = graph_side.interps().clone();
    for (op, table) in x.data.interps() {
        interps.insert(op.clone(), table.clone());
    }
    Ok(Algebra::new(combined.merged, carriers, interps)?)
}

/// Whether `f` stabilizes the attribute set: an attribute occurring on
/// either side must be fixed by `f`, and nothing else ever maps onto an
/// attribute, so each attribute's preimage is exactly itself wherever
/// it appears. In particular an attribute in the codomain that the
/// domain misses breaks stabilization, which is what stops rules from
/// marking attributes for deletion.
pub fn stabilizes(f: &Morphism, attributes: &BTreeSet<EdgeId>) -> bool {
    attributes.iter().all(|x| stabilizes_at(f, x))
}

fn stabilizes_at(f: &Morphism, x: &EdgeId) -> bool {
    let covers = !f.cod().contains(x) || f.apply(x) == Some(x);
    covers && stabilizes_into_at(f, x)
}

/// The one-sided reading used for matches: a match lands in the whole
/// host and need not cover every attribute, but the attributes it does
/// mention must be fixed and must not be hit by anything else.
fn stabilizes_into_at(f: &Morphism, x: &EdgeId) -> bool {
    let fixed = !f.dom().contains(x) || f.apply(x) == Some(x);
    fixed && f.map().iter().all(|(k, v)| v != x || k == x)
}

/// Validates an attributed morphism whose data part is a family of
/// per-sort maps: the monograph part must commute with the typings and
/// agree with the data part on every shared sort.
pub fn atm_morphism_valid(
    from: &Atm,
    to: &Atm,
    f: &Morphism,
    data_part: &BTreeMap<String, BTreeMap<String, String>>,
) -> Result<(), AtmError> {
    let lhs = Morphism::compose(to.typing(), f)?;
    if lhs != from.typing {
        return Err(AtmError::TypingMismatch);
    }
    for s in from.shared_sorts() {
        let id: &BTreeMap<String, String> = match data_part.get(&s) {
            Some(m) => m,
            None => continue,
        };
        for x in from.data.carrier(&s) {
            let via_f = f
                .apply(&EdgeId::from(x.as_str()))
                .map(|e| e.as_str().to_string());
            if via_f != id.get(&x).cloned() {
                return Err(AtmError::SharedSortDisagreement { sort: s });
            }
        }
    }
    Ok(())
}

/// A span rule whose three objects carry typings into a common type
/// monograph, commuting with the rule morphisms.
#[derive(Debug, Clone)]
pub struct TypedSpanRule {
    pub rule: SpanRule,
    pub typing_left: TypedMonograph,
    pub typing_interface: TypedMonograph,
    pub typing_right: TypedMonograph,
}

impl TypedSpanRule {
    pub fn new(
        rule: SpanRule,
        typing_left: TypedMonograph,
        typing_interface: TypedMonograph,
        typing_right: TypedMonograph,
    ) -> Result<TypedSpanRule, AtmError> {
        let via_l = Morphism::compose(&typing_left, &rule.left)?;
        let via_r = Morphism::compose(&typing_right, &rule.right)?;
        if via_l != typing_interface || via_r != typing_interface {
            return Err(AtmError::TypingMismatch);
        }
        Ok(TypedSpanRule {
            rule,
            typing_left,
            typing_interface,
            typing_right,
        })
    }
}

/// A partial rule with typings on both sides.
#[derive(Debug, Clone)]
pub struct TypedPartialRule {
    pub rule: PartialRule,
    pub typing_left: TypedMonograph,
    pub typing_right: TypedMonograph,
}

impl TypedPartialRule {
    pub fn new(
        rule: PartialRule,
        typing_left: TypedMonograph,
        typing_right: TypedMonograph,
    ) -> Result<TypedPartialRule, AtmError> {
        let inc = Morphism::inclusion(rule.map.def());
        let on_def = Morphism::compose(&typing_left, &inc)?;
        let via_rule = Morphism::compose(&typing_right, rule.map.total())?;
        if on_def != via_rule {
            return Err(AtmError::TypingMismatch);
        }
        Ok(TypedPartialRule {
            rule,
            typing_left,
            typing_right,
        })
    }
}

fn require_stabilizing(
    role: &str,
    f: &Morphism,
    attributes: &BTreeSet<EdgeId>,
    as_match: bool,
) -> Result<(), AtmError> {
    let ok = |x: &EdgeId| {
        if as_match {
            stabilizes_into_at(f, x)
        } else {
            stabilizes_at(f, x)
        }
    };
    match attributes.iter().find(|x| !ok(x)) {
        None => Ok(()),
        Some(witness) => Err(AtmError::NotStabilizing {
            role: role.to_string(),
            attribute: witness.clone(),
        }),
    }
}

/// Double-pushout rewriting guarded for attributes: every rule morphism
/// and the match must stabilize the attribute set; the rewritten typed
/// monograph is then revalidated as an attributed one with the same
/// data algebra, so attribute carriers survive element by element.
pub fn atm_rewrite_gate_dpo(
    host: &Atm,
    rule: &TypedSpanRule,
    m: &Morphism,
) -> Result<Atm, AtmError> {
    if Morphism::compose(host.typing(), m)? != rule.typing_left {
        return Err(AtmError::TypingMismatch);
    }
    let attrs = host.attributes();
    require_stabilizing("left", &rule.rule.left, &attrs, false)?;
    require_stabilizing("right", &rule.rule.right, &attrs, false)?;
    require_stabilizing("match", m, &attrs, true)?;
    let out = dpo_apply(&rule.rule, m)?;
    // Transport the typing through the result square: surviving host
    // edges keep theirs, fresh edges take the right-hand side's.
    let mut typing_map: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for (d, n) in out.embed.map() {
        typing_map.insert(n.clone(), host.typing().apply(d).unwrap().clone());
    }
    for (r, n) in out.coglue.map() {
        typing_map
            .entry(n.clone())
            .or_insert_with(|| rule.typing_right.apply(r).unwrap().clone());
    }
    let typing = Morphism::new(out.result.clone(), host.typing().cod().clone(), typing_map)?;
    atm_validate(&typing, host.data())
}

/// Single-pushout analogue of the gate; deletion cascades are allowed
/// but can never touch an attribute, because the match and both rule
/// parts stabilize them.
pub fn atm_rewrite_gate_spo(
    host: &Atm,
    rule: &TypedPartialRule,
    m: &Morphism,
) -> Result<Atm, AtmError> {
    if Morphism::compose(host.typing(), m)? != rule.typing_left {
        return Err(AtmError::TypingMismatch);
    }
    let attrs = host.attributes();
    // An attribute in the left side but outside the definition region
    // would be deleted, so the partial map must be defined on all of
    // them before its total part is checked.
    if let Some(x) = attrs
        .iter()
        .find(|x| rule.typing_left.dom().contains(x) && !rule.rule.map.def().contains(x))
    {
        return Err(AtmError::NotStabilizing {
            role: "rule".to_string(),
            attribute: x.clone(),
        });
    }
    require_stabilizing("rule", rule.rule.map.total(), &attrs, false)?;
    require_stabilizing("match", m, &attrs, true)?;
    let out = spo_apply(&rule.rule, m)?;
    let mut typing_map: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for (d, n) in out.embed.total().map() {
        typing_map.insert(n.clone(), host.typing().apply(d).unwrap().clone());
    }
    for (r, n) in out.coglue.total().map() {
        typing_map
            .entry(n.clone())
            .or_insert_with(|| rule.typing_right.apply(r).unwrap().clone());
    }
    let typing = Morphism::new(out.result.clone(), host.typing().cod().clone(), typing_map)?;
    atm_validate(&typing, host.data())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Monograph;
    use crate::signature::{find_algebra_isomorphism, sig_of_monograph};

    /// The mutually-typed pair: a type with one unary edge `e` over a
    /// data sort `s`, which is itself typed by `e`.
    fn looped_type() -> Monograph {
        Monograph::build(&[("e", &["s"]), ("s", &["e"])]).unwrap()
    }

    fn data_sig() -> Signature {
        Signature::build(&["s"], &[]).unwrap()
    }

    /// Two attribute edges a and b typed by `s`, each carried by an
    /// `e`-typed edge.
    fn two_attribute_host() -> (TypedMonograph, Algebra) {
        let t = looped_type();
        let g = Monograph::build(&[
            ("a", &["xa"]),
            ("b", &["xb"]),
            ("xa", &["a"]),
            ("xb", &["b"]),
        ])
        .unwrap();
        let typing =
            Morphism::build(&g, &t, &[("a", "s"), ("b", "s"), ("xa", "e"), ("xb", "e")]).unwrap();
        let data = Algebra::new(
            data_sig(),
            BTreeMap::from([("s".into(), BTreeSet::from(["a".into(), "b".into()]))]),
            BTreeMap::new(),
        )
        .unwrap();
        (typing, data)
    }

    #[test]
    fn combine_disjoint_signatures() {
        let graph = sig_of_monograph(
            &Monograph::build(&[("nodes", &[]), ("edges", &["nodes", "nodes"])]).unwrap(),
        );
        let data = Signature::build(&["int"], &[("plus", &["int", "int"], "int")]).unwrap();
        let c = combine_signatures(&graph, &data).unwrap();
        assert_eq!(c.merged.sorts().len(), 3);
        assert_eq!(c.merged.operators().len(), 3);
        let clash = Signature::build(&["int"], &[("edges.0", &["int"], "int")]).unwrap();
        assert_eq!(
            combine_signatures(&graph, &clash).unwrap_err(),
            AtmError::OperatorClash("edges.0".into())
        );
    }

    #[test]
    fn shared_sorts_merge() {
        let t = looped_type();
        let graph = sig_of_monograph(&t);
        let c = combine_signatures(&graph, &data_sig()).unwrap();
        assert_eq!(c.merged.sorts().len(), 2);
    }

    #[test]
    fn valid_two_attribute_atm() {
        let (typing, data) = two_attribute_host();
        let atm = atm_validate(&typing, &data).unwrap();
        assert_eq!(
            atm.attributes(),
            BTreeSet::from([EdgeId::from("a"), EdgeId::from("b")])
        );
    }

    #[test]
    fn empty_data_signature_accepts_everything() {
        let (typing, _) = two_attribute_host();
        let data = Algebra::new(
            Signature::build(&[], &[]).unwrap(),
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        let atm = atm_validate(&typing, &data).unwrap();
        assert!(atm.attributes().is_empty());
    }

    #[test]
    fn carrier_mismatch_is_reported() {
        let t = looped_type();
        let g = Monograph::build(&[
            ("a", &["xa"]),
            ("b", &["xa"]),
            ("c", &["xa"]),
            ("xa", &["a"]),
        ])
        .unwrap();
        let typing =
            Morphism::build(&g, &t, &[("a", "s"), ("b", "s"), ("c", "s"), ("xa", "e")]).unwrap();
        let data = Algebra::new(
            data_sig(),
            BTreeMap::from([("s".into(), BTreeSet::from(["a".into(), "b".into()]))]),
            BTreeMap::new(),
        )
        .unwrap();
        assert!(matches!(
            atm_validate(&typing, &data).unwrap_err(),
            AtmError::CarrierMismatch { sort, .. } if sort == "s"
        ));
    }

    #[test]
    fn combined_algebra_carries_fibers_and_data() {
        let (typing, data) = two_attribute_host();
        let atm = atm_validate(&typing, &data).unwrap();
        let alg = atm_to_algebra(&atm).unwrap();
        assert_eq!(alg.carrier("s"), BTreeSet::from(["a".into(), "b".into()]));
        assert_eq!(alg.carrier("e"), BTreeSet::from(["xa".into(), "xb".into()]));
        assert_eq!(alg.apply("e.0", &["xa".into()]), Some(&"a".to_string()));
        // Same data, same typing: isomorphic combined algebras.
        let again = atm_to_algebra(&atm).unwrap();
        assert!(find_algebra_isomorphism(&alg, &again).is_some());
    }

    /// A host where the two e-typed carriers of the attributes share a
    /// single attribute; the merge morphism onto it stabilizes.
    #[test]
    fn merging_non_attributes_stabilizes() {
        let t = looped_type();
        let merged = Monograph::build(&[("a", &["x"]), ("b", &["x"]), ("x", &["a"])]).unwrap();
        // One carrier edge x for attribute a; both attributes present.
        let typing_to =
            Morphism::build(&merged, &t, &[("a", "s"), ("b", "s"), ("x", "e")]).unwrap();
        let wide = Monograph::build(&[
            ("a", &["x"]),
            ("b", &["x"]),
            ("x", &["a"]),
            ("y", &["a"]),
            ("z", &["a"]),
        ])
        .unwrap();
        let typing_from = Morphism::build(
            &wide,
            &t,
            &[("a", "s"), ("b", "s"), ("x", "e"), ("y", "e"), ("z", "e")],
        )
        .unwrap();
        let f = Morphism::build(
            &wide,
            &merged,
            &[("a", "a"), ("b", "b"), ("x", "x"), ("y", "x"), ("z", "x")],
        )
        .unwrap();
        assert_eq!(Morphism::compose(&typing_to, &f).unwrap(), typing_from);
        let attrs = BTreeSet::from([EdgeId::from("a"), EdgeId::from("b")]);
        assert!(stabilizes(&f, &attrs));
        // Mapping a non-attribute onto an attribute fails.
        let bad_target = Monograph::build(&[("a", &["a"])]).unwrap();
        let bad = Morphism::build(
            &Monograph::build(&[("a", &["a"]), ("y", &["a"])]).unwrap(),
            &bad_target,
            &[("a", "a"), ("y", "a")],
        )
        .unwrap();
        assert!(!stabilizes(&bad, &BTreeSet::from([EdgeId::from("a")])));
        assert!(stabilizes(&Morphism::identity(&merged), &attrs));
    }

    #[test]
    fn stabilization_matches_atm_morphism_validity() {
        let (typing, data) = two_attribute_host();
        let host = atm_validate(&typing, &data).unwrap();
        let id_data: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::from([(
            "s".to_string(),
            BTreeMap::from([
                ("a".to_string(), "a".to_string()),
                ("b".to_string(), "b".to_string()),
            ]),
        )]);
        for f in crate::morphism::enumerate_morphisms(typing.dom(), typing.dom(), None) {
            if Morphism::compose(&typing, &f).unwrap() != typing {
                continue;
            }
            let valid = atm_morphism_valid(&host, &host, &f, &id_data).is_ok();
            assert_eq!(valid, stabilizes(&f, &host.attributes()));
        }
    }

    fn add_carrier_rule(t: &Monograph) -> TypedSpanRule {
        // L = K = one attribute a with its carrier x; R adds a second
        // carrier edge y on a.
        let l = Monograph::build(&[("a", &["x"]), ("x", &["a"])]).unwrap();
        let r = Monograph::build(&[("a", &["x"]), ("x", &["a"]), ("y", &["a"])]).unwrap();
        let tl = Morphism::build(&l, t, &[("a", "s"), ("x", "e")]).unwrap();
        let tr = Morphism::build(&r, t, &[("a", "s"), ("x", "e"), ("y", "e")]).unwrap();
        let lm = Morphism::identity(&l);
        let rm = Morphism::build(&l, &r, &[("a", "a"), ("x", "x")]).unwrap();
        TypedSpanRule::new(SpanRule::new("grow", lm, rm).unwrap(), tl.clone(), tl, tr).unwrap()
    }

    #[test]
    fn gate_accepts_attribute_preserving_rules() {
        let t = looped_type();
        let g = Monograph::build(&[("a", &["x"]), ("b", &["xb"]), ("x", &["a"]), ("xb", &["b"])])
            .unwrap();
        let typing =
            Morphism::build(&g, &t, &[("a", "s"), ("b", "s"), ("x", "e"), ("xb", "e")]).unwrap();
        let data = Algebra::new(
            data_sig(),
            BTreeMap::from([("s".into(), BTreeSet::from(["a".into(), "b".into()]))]),
            BTreeMap::new(),
        )
        .unwrap();
        let host = atm_validate(&typing, &data).unwrap();
        let rule = add_carrier_rule(&t);
        let m = Morphism::build(rule.typing_left.dom(), &g, &[("a", "a"), ("x", "x")]).unwrap();
        let out = atm_rewrite_gate_dpo(&host, &rule, &m).unwrap();
        assert_eq!(out.attributes(), host.attributes());
        assert_eq!(out.typing().dom().edge_count(), 5);
    }

    #[test]
    fn gate_rejects_attribute_deletion() {
        let t = looped_type();
        let (typing, data) = two_attribute_host();
        let host = atm_validate(&typing, &data).unwrap();
        // A rule whose left morphism misses attribute b marks it for
        // removal, so it cannot stabilize.
        let l = Monograph::build(&[("a", &["x"]), ("b", &["xb"]), ("x", &["a"]), ("xb", &["b"])])
            .unwrap();
        let k = Monograph::build(&[("a", &["x"]), ("x", &["a"])]).unwrap();
        let lm = Morphism::build(&k, &l, &[("a", "a"), ("x", "x")]).unwrap();
        let rm = Morphism::identity(&k);
        let tl =
            Morphism::build(&l, &t, &[("a", "s"), ("b", "s"), ("x", "e"), ("xb", "e")]).unwrap();
        let tk = Morphism::build(&k, &t, &[("a", "s"), ("x", "e")]).unwrap();
        let rule = TypedSpanRule::new(SpanRule::new("dropb", lm, rm).unwrap(), tl, tk.clone(), tk)
            .unwrap();
        let m = Morphism::build(
            rule.typing_left.dom(),
            typing.dom(),
            &[("a", "a"), ("b", "b"), ("x", "xa"), ("xb", "xb")],
        )
        .unwrap();
        assert!(matches!(
            atm_rewrite_gate_dpo(&host, &rule, &m).unwrap_err(),
            AtmError::NotStabilizing { role, .. } if role == "left"
        ));
    }

    #[test]
    fn identity_rule_leaves_the_atm_unchanged() {
        let (typing, data) = two_attribute_host();
        let host = atm_validate(&typing, &data).unwrap();
        let id = Morphism::identity(typing.dom());
        let rule = TypedSpanRule::new(
            SpanRule::new("noop", id.clone(), id.clone()).unwrap(),
            typing.clone(),
            typing.clone(),
            typing.clone(),
        )
        .unwrap();
        let out = atm_rewrite_gate_dpo(&host, &rule, &id).unwrap();
        assert_eq!(out.typing().dom(), typing.dom());
        assert_eq!(out.data(), host.data());
    }
}
