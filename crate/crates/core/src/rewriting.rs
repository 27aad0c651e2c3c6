//! Rule-based transformation of monographs.
//!
//! Double-pushout rewriting deletes through a pushout complement and
//! adds through a pushout; it requires the gluing condition. Single-
//! pushout rewriting applies a partial rule through a pushout of
//! partial morphisms and is always defined, deleting whole fibers in
//! cascade when necessary. Span rules convert to partial rules, and
//! whenever the gluing condition holds the two disciplines agree up to
//! isomorphism.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::limits::{pushout, relabel_apex, LimitError, PushoutResult};
use crate::model::{EdgeId, ModelError, Monograph, Submonograph};
use crate::morphism::{Morphism, MorphismError};
use crate::partial::{pushout_partial, PartialError, PartialMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("the two rule morphisms do not share their domain")]
    NotSpan,
    #[error("match domain is not the rule's left-hand side")]
    MatchMismatch,
    #[error("gluing condition violated: {0:?}")]
    GluingViolated(Vec<GluingViolation>),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Limit(#[from] LimitError),
    #[error(transparent)]
    Partial(#[from] PartialError),
}

/// A span rule `L <- K -> R` with a name used to label fresh edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanRule {
    pub name: String,
    /// `l : K -> L`
    pub left: Morphism,
    /// `r : K -> R`
    pub right: Morphism,
}

impl SpanRule {
    pub fn new(
        name: impl Into<String>,
        left: Morphism,
        right: Morphism,
    ) -> Result<SpanRule, RewriteError> {
        if left.dom() != right.dom() {
            return Err(RewriteError::NotSpan);
        }
        Ok(SpanRule {
            name: name.into(),
            left,
            right,
        })
    }
}

/// A partial rule `L ⇀ R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialRule {
    pub name: String,
    pub map: PartialMorphism,
}

/// One clause failure of the gluing condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GluingViolation {
    /// A removal-marked edge shares its image with another edge.
    Identification { marked: EdgeId, other: EdgeId },
    /// A surviving edge's sequence mentions an edge marked for removal.
    Dangling { needed: EdgeId, by: EdgeId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingReport {
    pub holds: bool,
    pub violations: Vec<GluingViolation>,
}

/// Edges of `L` outside the image of `l`: those the rule removes.
fn removal_marked(l: &Morphism) -> BTreeSet<EdgeId> {
    let image: BTreeSet<EdgeId> = l.map().values().cloned().collect();
    l.cod()
        .edge_ids()
        .filter(|e| !image.contains(e))
        .cloned()
        .collect()
}

/// Checks the two gluing clauses for `l : K -> L` and a match
/// `m : L -> M`: no removal-marked edge may share its image with any
/// other edge, and nothing surviving may remain adjacent to a removed
/// image.
pub fn gluing_condition(l: &Morphism, m: &Morphism) -> Result<GluingReport, RewriteError> {
    if l.cod() != m.dom() {
        return Err(RewriteError::MatchMismatch);
    }
    let marked = removal_marked(l);
    let marked_images: BTreeSet<EdgeId> =
        marked.iter().map(|x| m.apply(x).unwrap().clone()).collect();
    let mut violations = Vec::new();
    for x in &marked {
        for other in m.dom().edge_ids() {
            if other != x && m.apply(other) == m.apply(x) {
                violations.push(GluingViolation::Identification {
                    marked: x.clone(),
                    other: other.clone(),
                });
            }
        }
    }
    let host = m.cod();
    for (e2, seq) in host.iter() {
        if marked_images.contains(e2) {
            continue;
        }
        for t in seq {
            if marked_images.contains(t) {
                violations.push(GluingViolation::Dangling {
                    needed: t.clone(),
                    by: e2.clone(),
                });
            }
        }
    }
    Ok(GluingReport {
        holds: violations.is_empty(),
        violations,
    })
}

/// A pushout complement: the host minus the removed images, with the
/// corestricted rule morphism and the canonical inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complement {
    pub context: Monograph,
    /// `k : K -> D`
    pub embed: Morphism,
    /// the canonical inclusion `D -> M`
    pub include: Morphism,
}

/// The pushout complement of `l : K -> L` and `m : L -> M`: exists
/// exactly when the gluing condition holds, and then its edge set is
/// the host's minus the removed images.
pub fn pushout_complement(l: &Morphism, m: &Morphism) -> Result<Complement, RewriteError> {
    let report = gluing_condition(l, m)?;
    if !report.holds {
        return Err(RewriteError::GluingViolated(report.violations));
    }
    let marked = removal_marked(l);
    let marked_images: BTreeSet<EdgeId> =
        marked.iter().map(|x| m.apply(x).unwrap().clone()).collect();
    let keep: BTreeSet<EdgeId> = m
        .cod()
        .edge_ids()
        .filter(|e| !marked_images.contains(e))
        .cloned()
        .collect();
    // The dangling clause is exactly closure of the kept subset.
    let sub = Submonograph::new(m.cod(), keep)?;
    let context = sub.induced();
    let embed = Morphism::new(
        l.dom().clone(),
        context.clone(),
        l.dom()
            .edge_ids()
            .map(|x| (x.clone(), m.apply(l.apply(x).unwrap()).unwrap().clone()))
            .collect(),
    )?;
    Ok(Complement {
        include: Morphism::inclusion(&sub),
        context,
        embed,
    })
}

/// A completed double-pushout step.
#[derive(Debug, Clone)]
pub struct DpoResult {
    pub complement: Complement,
    pub result: Monograph,
    /// `D -> N`
    pub embed: Morphism,
    /// `R -> N`
    pub coglue: Morphism,
}

/// Renames a pushout apex so that edges hit from the `keep` leg take
/// the least name of their fiber there, and the remaining edges get
/// fresh `rule.edge.counter` names built from the other leg.
fn canonical_result_names(
    po: &PushoutResult,
    keep_leg_is_right: bool,
    rule_name: &str,
) -> PushoutResult {
    let (keep, fresh) = if keep_leg_is_right {
        (&po.right, &po.left)
    } else {
        (&po.left, &po.right)
    };
    let mut taken: BTreeSet<EdgeId> = BTreeSet::new();
    let mut rename: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for q in po.apex.edge_ids() {
        if let Some((d, _)) = keep.map().iter().find(|(_, v)| *v == q) {
            rename.insert(q.clone(), d.clone());
            taken.insert(d.clone());
        }
    }
    // Survivor names win; everything else must avoid them.
    for d in keep.dom().edge_ids() {
        taken.insert(d.clone());
    }
    for e in fresh.dom().edge_ids() {
        taken.insert(e.clone());
    }
    for q in po.apex.edge_ids() {
        if rename.contains_key(q) {
            continue;
        }
        let base = fresh
            .map()
            .iter()
            .filter(|(_, v)| *v == q)
            .map(|(k, _)| k.clone())
            .min()
            .expect("pushout legs are jointly surjective");
        let mut counter = 0usize;
        let name = loop {
            let cand = EdgeId::from(format!("{}.{}.{}", rule_name, base, counter));
            if !taken.contains(&cand) {
                break cand;
            }
            counter += 1;
        };
        taken.insert(name.clone());
        rename.insert(q.clone(), name);
    }
    relabel_apex(po, &rename)
}

/// Applies a span rule at a match through a double pushout: first the
/// complement removes the matched removal-marked edges, then the
/// pushout with the right-hand side adds the new material. Surviving
/// host edges keep their names; fresh edges are named
/// `rule.edge.counter`.
pub fn dpo_apply(rule: &SpanRule, m: &Morphism) -> Result<DpoResult, RewriteError> {
    if m.dom() != rule.left.cod() {
        return Err(RewriteError::MatchMismatch);
    }
    let complement = pushout_complement(&rule.left, m)?;
    let po = pushout(&rule.right, &complement.embed)?;
    let named = canonical_result_names(&po, true, &rule.name);
    Ok(DpoResult {
        result: named.apex.clone(),
        coglue: named.left,
        embed: named.right,
        complement,
    })
}

/// Converts a span rule into its partial form: defined on the image of
/// `l` inside `L`, with the total part obtained by pushing `r` out
/// along the corestriction of `l`. When `l` is injective the right-hand
/// side is recovered unchanged.
pub fn span_to_partial(rule: &SpanRule) -> Result<PartialRule, RewriteError> {
    let image = rule.left.image(&Submonograph::full(rule.left.dom()))?;
    let l_corestricted = rule
        .left
        .restrict(&Submonograph::full(rule.left.dom()), &image)?;
    let po = pushout(&rule.right, &l_corestricted)?;
    // Every apex fiber meets the right-hand side, so naming from that
    // leg keeps R recognizable.
    let named = canonical_result_names(&po, false, &rule.name);
    let def = Submonograph::new(rule.left.cod(), image.keep().clone())?;
    let total = Morphism::new(
        image.induced(),
        named.apex.clone(),
        named.right.map().clone(),
    )?;
    Ok(PartialRule {
        name: rule.name.clone(),
        map: PartialMorphism::new(def, total)?,
    })
}

/// A completed single-pushout step.
#[derive(Debug, Clone)]
pub struct SpoResult {
    pub result: Monograph,
    /// partial `M ⇀ N`
    pub embed: PartialMorphism,
    /// partial `R ⇀ N`
    pub coglue: PartialMorphism,
}

/// Applies a partial rule at a total match through a pushout of partial
/// morphisms. Always succeeds; edges whose fibers conflict with a
/// deletion disappear in cascade. Surviving host edges keep their
/// names.
pub fn spo_apply(rule: &PartialRule, m: &Morphism) -> Result<SpoResult, RewriteError> {
    if m.dom() != rule.map.dom() {
        return Err(RewriteError::MatchMismatch);
    }
    let pp = pushout_partial(&rule.map, &PartialMorphism::from_total(m))?;
    // Rebuild a total pushout view of the legs to rename the apex: the
    // host-side leg keeps names, the rule side supplies fresh ones.
    let po = PushoutResult {
        apex: pp.apex.clone(),
        left: pp.left.total().clone(),
        right: pp.right.total().clone(),
    };
    let named = canonical_result_names(&po, true, &rule.name);
    let embed = PartialMorphism::new(pp.right.def().clone(), named.right)?;
    let coglue = PartialMorphism::new(pp.left.def().clone(), named.left)?;
    Ok(SpoResult {
        result: named.apex,
        embed,
        coglue,
    })
}
