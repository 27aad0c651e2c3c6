//! Partial morphisms and their pushouts.
//!
//! A partial morphism is a total morphism defined on an adjacency-closed
//! part of its domain. Composition restricts the definition domain,
//! coequalizers and pushouts of total morphisms restrict along
//! compatible subsets, and every span of partial morphisms has a
//! pushout, computed by shrinking the shared definition domain to its
//! greatest fiber-stable core.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::limits::{pushout, LimitError, PushoutResult};
use crate::model::{submonograph_close_down, EdgeId, ModelError, Monograph, Submonograph};
use crate::morphism::{Morphism, MorphismError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartialError {
    #[error("total part is not a morphism out of the induced definition domain")]
    DefinitionMismatch,
    #[error("codomain of the first partial morphism differs from the domain of the second")]
    CompositionMismatch,
    #[error("the two morphisms do not share their domain monograph")]
    NotSpan,
    #[error("restriction precondition violated: preimages of the kept part disagree with it")]
    PreconditionViolated,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Limit(#[from] LimitError),
}

/// A morphism defined on a submonograph of its domain. Two partial
/// morphisms are equal exactly when domain, definition subset and total
/// part coincide; there is no identification up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMorphism {
    def: Submonograph,
    total: Morphism,
}

impl PartialMorphism {
    pub fn new(def: Submonograph, total: Morphism) -> Result<PartialMorphism, PartialError> {
        if total.dom() != &def.induced() {
            return Err(PartialError::DefinitionMismatch);
        }
        Ok(PartialMorphism { def, total })
    }

    /// An everywhere-defined partial morphism.
    pub fn from_total(f: &Morphism) -> PartialMorphism {
        PartialMorphism {
            def: Submonograph::full(f.dom()),
            total: f.clone(),
        }
    }

    pub fn dom(&self) -> &Monograph {
        self.def.parent()
    }

    pub fn cod(&self) -> &Monograph {
        self.total.cod()
    }

    pub fn def(&self) -> &Submonograph {
        &self.def
    }

    pub fn total(&self) -> &Morphism {
        &self.total
    }

    pub fn is_total(&self) -> bool {
        self.def.is_full()
    }

    pub fn apply(&self, e: &EdgeId) -> Option<&EdgeId> {
        if self.def.contains(e) {
            self.total.apply(e)
        } else {
            None
        }
    }

    /// `g` after `f`: defined where `f` is defined and lands inside the
    /// definition domain of `g`.
    pub fn compose(
        g: &PartialMorphism,
        f: &PartialMorphism,
    ) -> Result<PartialMorphism, PartialError> {
        if f.cod() != g.dom() {
            return Err(PartialError::CompositionMismatch);
        }
        let pulled = f.total.preimage(&g.def)?;
        // Carry the preimage back to a submonograph of f's full domain.
        let def = Submonograph::new(f.dom(), pulled.keep().clone())?;
        let corestricted = f.total.restrict(&pulled, &g.def)?;
        let total = Morphism::compose(&g.total, &corestricted)?;
        PartialMorphism::new(def, total)
    }
}

/// A coequalizer together with its restriction along a compatible part
/// of the codomain.
#[derive(Debug, Clone)]
pub struct RestrictedCoequalizer {
    pub full: (Monograph, Morphism),
    pub apex: Monograph,
    pub map: Morphism,
}

/// Restricts the coequalizer of `f, g : A -> B` along `B'`, provided
/// both preimages of `B'` equal `A'`. The restricted pair is again a
/// coequalizer (of the restricted morphisms), and the preimage of the
/// restricted apex under the full quotient map recovers `B'`.
pub fn coequalizer_restriction(
    f: &Morphism,
    g: &Morphism,
    a_part: &Submonograph,
    b_part: &Submonograph,
) -> Result<RestrictedCoequalizer, PartialError> {
    if f.preimage(b_part)? != *a_part || g.preimage(b_part)? != *a_part {
        return Err(PartialError::PreconditionViolated);
    }
    let (q, c) = crate::limits::coequalizer(f, g)?;
    let q_part = c.image(b_part)?;
    let c_restricted = c.restrict(b_part, &q_part)?;
    debug_assert_eq!(c.preimage(&q_part)?, *b_part);
    Ok(RestrictedCoequalizer {
        full: (q, c),
        apex: q_part.induced(),
        map: c_restricted,
    })
}

/// A pushout together with its restriction along compatible parts of
/// both codomains.
#[derive(Debug, Clone)]
pub struct RestrictedPushout {
    pub full: PushoutResult,
    pub apex: Monograph,
    pub left: Morphism,
    pub right: Morphism,
}

/// Restricts the pushout of `f : A -> B`, `g : A -> C` along `B'` and
/// `C'`, provided the preimage of `B'` under `f` and of `C'` under `g`
/// both equal `A'`.
pub fn pushout_restriction(
    f: &Morphism,
    g: &Morphism,
    a_part: &Submonograph,
    b_part: &Submonograph,
    c_part: &Submonograph,
) -> Result<RestrictedPushout, PartialError> {
    if f.preimage(b_part)? != *a_part || g.preimage(c_part)? != *a_part {
        return Err(PartialError::PreconditionViolated);
    }
    let po = pushout(f, g)?;
    let q_part = po.left.image(b_part)?.union(&po.right.image(c_part)?)?;
    let left = po.left.restrict(b_part, &q_part)?;
    let right = po.right.restrict(c_part, &q_part)?;
    Ok(RestrictedPushout {
        apex: q_part.induced(),
        full: po,
        left,
        right,
    })
}

/// A pushout of partial morphisms: the apex with its two partial legs
/// and the core on which both input morphisms stay defined.
#[derive(Debug, Clone)]
pub struct PartialPushout {
    pub apex: Monograph,
    pub left: PartialMorphism,
    pub right: PartialMorphism,
    pub core: Submonograph,
}

/// The greatest submonograph `I` of the intersection of the two
/// definition domains whose `f`- and `g`-fibers never escape it:
/// deleting an edge outside `I` never forces deletion inside unless it
/// shares an image with an `I` edge.
fn stable_core(f: &PartialMorphism, g: &PartialMorphism) -> Result<Submonograph, PartialError> {
    let a = f.dom();
    let mut keep = f.def().intersection(g.def())?.keep().clone();
    loop {
        let mut drop: BTreeSet<EdgeId> = BTreeSet::new();
        for h in [f, g] {
            for x in &keep {
                let img = h.apply(x).unwrap();
                let escapes = h
                    .def()
                    .keep()
                    .iter()
                    .any(|x2| !keep.contains(x2) && h.apply(x2).unwrap() == img);
                if escapes {
                    drop.insert(x.clone());
                }
            }
        }
        if drop.is_empty() {
            break;
        }
        for x in &drop {
            keep.remove(x);
        }
        keep = submonograph_close_down(a, &keep).keep().clone();
    }
    Ok(Submonograph::new(a, keep)?)
}

/// The greatest submonograph of the codomain whose fibers under the
/// partial morphism lie inside `core`.
fn stable_side(h: &PartialMorphism, core: &Submonograph) -> Submonograph {
    let keep: BTreeSet<EdgeId> = h
        .cod()
        .edge_ids()
        .filter(|b| {
            h.def()
                .keep()
                .iter()
                .all(|x| h.apply(x).unwrap() != *b || core.contains(x))
        })
        .cloned()
        .collect();
    submonograph_close_down(h.cod(), &keep)
}

/// Pushout of a span of partial morphisms out of a common domain. The
/// construction always succeeds: the definition domains shrink to the
/// greatest stable core `I`, the codomains shrink to the greatest parts
/// whose fibers stay in `I`, and the total pushout of the restrictions
/// provides the apex.
pub fn pushout_partial(
    f: &PartialMorphism,
    g: &PartialMorphism,
) -> Result<PartialPushout, PartialError> {
    if f.dom() != g.dom() {
        return Err(PartialError::NotSpan);
    }
    let core = stable_core(f, g)?;
    let x_side = stable_side(f, &core);
    let y_side = stable_side(g, &core);

    let restrict_to =
        |h: &PartialMorphism, side: &Submonograph| -> Result<Morphism, PartialError> {
            // Carry the core over to a part of h's definition domain.
            let part = Submonograph::new(&h.def().induced(), core.keep().clone())?;
            Ok(h.total().restrict(&part, side)?)
        };
    let f_core = restrict_to(f, &x_side)?;
    let g_core = restrict_to(g, &y_side)?;
    let po = pushout(&f_core, &g_core)?;

    let left = PartialMorphism::new(
        Submonograph::new(f.cod(), x_side.keep().clone())?,
        Morphism::new(x_side.induced(), po.apex.clone(), po.left.map().clone())?,
    )?;
    let right = PartialMorphism::new(
        Submonograph::new(g.cod(), y_side.keep().clone())?,
        Morphism::new(y_side.induced(), po.apex.clone(), po.right.map().clone())?,
    )?;
    Ok(PartialPushout {
        apex: po.apex,
        left,
        right,
        core,
    })
}
