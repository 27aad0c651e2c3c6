//! Property-based tests: text format round trips, closure operator
//! laws, and the category laws for composition.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use monogr::doc::Document;
use monogr::model::submonograph_close_down;
use monogr::{enumerate_morphisms, EdgeId, Monograph, Morphism};

/// Closed monographs built edge by edge: every sequence entry refers
/// to an earlier edge, so the edge set is closed by construction.
fn arb_seqs(max_edges: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1..=max_edges).prop_flat_map(|n| {
        (0..n)
            .map(|i| {
                if i == 0 {
                    Just(Vec::new()).boxed()
                } else {
                    prop::collection::vec(0..i, 0..=2).boxed()
                }
            })
            .collect::<Vec<_>>()
    })
}

fn monograph_from(seqs: &[Vec<usize>], names: &[String]) -> Monograph {
    let id = |i: usize| EdgeId::new(names[i].clone());
    let raw: BTreeMap<EdgeId, Vec<EdgeId>> = seqs
        .iter()
        .enumerate()
        .map(|(i, s)| (id(i), s.iter().map(|&j| id(j)).collect()))
        .collect();
    Monograph::validate(raw).unwrap()
}

fn arb_monograph(max_edges: usize) -> impl Strategy<Value = Monograph> {
    arb_seqs(max_edges).prop_map(|seqs| {
        let names: Vec<String> = (0..seqs.len()).map(|i| format!("e{}", i)).collect();
        monograph_from(&seqs, &names)
    })
}

/// A monograph whose edge names range over printable ASCII, so the
/// round trip exercises quoting and escaping.
fn arb_named_monograph() -> impl Strategy<Value = Monograph> {
    arb_seqs(5).prop_flat_map(|seqs| {
        let n = seqs.len();
        prop::collection::btree_set("[ -~]{1,12}", n).prop_map(move |names| {
            let names: Vec<String> = names.into_iter().collect();
            monograph_from(&seqs, &names)
        })
    })
}

proptest! {
    #[test]
    fn doc_round_trip(ms in prop::collection::vec(arb_named_monograph(), 1..4),
                      names in prop::collection::btree_set("[ -~]{1,12}", 4)) {
        let mut doc = Document::default();
        for (name, m) in names.iter().zip(ms) {
            doc.monographs.insert(name.clone(), m);
        }
        let text = doc.serialize();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn close_down_laws(m in arb_monograph(7),
                       picks in prop::collection::vec(any::<bool>(), 7)) {
        let all: Vec<EdgeId> = m.edge_ids().cloned().collect();
        let keep: BTreeSet<EdgeId> = all
            .iter()
            .zip(&picks)
            .filter(|(_, &p)| p)
            .map(|(e, _)| e.clone())
            .collect();
        let closed = submonograph_close_down(&m, &keep);
        // Deflationary: the closure stays inside the chosen set.
        prop_assert!(closed.keep().is_subset(&keep));
        // Idempotent.
        let twice = submonograph_close_down(&m, closed.keep());
        prop_assert_eq!(twice.keep(), closed.keep());
        // The result really is closed under taking sequence entries.
        for e in closed.keep() {
            for x in m.seq(e).unwrap() {
                prop_assert!(closed.contains(x));
            }
        }
        // Monotone: closing a larger set yields a larger closure.
        let bigger: BTreeSet<EdgeId> = m.edge_set();
        let closed_bigger = submonograph_close_down(&m, &bigger);
        prop_assert!(closed.keep().is_subset(closed_bigger.keep()));
    }

    #[test]
    fn category_laws(a in arb_monograph(3),
                     b in arb_monograph(3),
                     c in arb_monograph(3),
                     d in arb_monograph(3)) {
        let fs = enumerate_morphisms(&a, &b, Some(4));
        let gs = enumerate_morphisms(&b, &c, Some(4));
        let hs = enumerate_morphisms(&c, &d, Some(4));
        for f in &fs {
            // Identity is a two-sided unit.
            let lid = Morphism::compose(&Morphism::identity(&b), f).unwrap();
            let rid = Morphism::compose(f, &Morphism::identity(&a)).unwrap();
            prop_assert_eq!(&lid, f);
            prop_assert_eq!(&rid, f);
            for g in &gs {
                for h in &hs {
                    let left = Morphism::compose(
                        h,
                        &Morphism::compose(g, f).unwrap(),
                    )
                    .unwrap();
                    let right = Morphism::compose(
                        &Morphism::compose(h, g).unwrap(),
                        f,
                    )
                    .unwrap();
                    prop_assert_eq!(left, right);
                }
            }
        }
    }
}
