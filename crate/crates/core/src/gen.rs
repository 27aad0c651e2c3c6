//! Seeded random generation of monographs and morphisms.
//!
//! Used by the test suites, the benchmarks, and any CLI helper that
//! samples instances. Everything is driven by a caller-supplied RNG so
//! runs are reproducible from a seed.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{EdgeId, Monograph};
use crate::morphism::Morphism;

/// A random monograph with up to `max_edges` edges and sequence lengths
/// up to `max_len`. Closure holds by construction: sequences only
/// mention generated edge names.
pub fn random_monograph(rng: &mut impl Rng, max_edges: usize, max_len: usize) -> Monograph {
    let n = rng.gen_range(0..=max_edges);
    let names: Vec<EdgeId> = (0..n).map(|i| EdgeId::from(format!("e{}", i))).collect();
    let mut raw = BTreeMap::new();
    for e in &names {
        let len = rng.gen_range(0..=max_len);
        let seq = (0..len)
            .map(|_| names[rng.gen_range(0..names.len())].clone())
            .collect();
        raw.insert(e.clone(), seq);
    }
    Monograph::validate(raw).expect("generated names are all present")
}

/// A random standard monograph whose trace is contained in `lengths`.
/// When `lengths` contains a positive number it must also contain 0,
/// since longer edges need nodes to point at.
pub fn random_standard_monograph(
    rng: &mut impl Rng,
    max_edges: usize,
    lengths: &BTreeSet<usize>,
) -> Monograph {
    let positive: Vec<usize> = lengths.iter().copied().filter(|l| *l > 0).collect();
    if !lengths.contains(&0) {
        return Monograph::empty();
    }
    let n_nodes = rng.gen_range(1..=max_edges.max(1));
    let mut raw: BTreeMap<EdgeId, Vec<EdgeId>> = (0..n_nodes)
        .map(|i| (EdgeId::from(format!("n{}", i)), Vec::new()))
        .collect();
    let nodes: Vec<EdgeId> = raw.keys().cloned().collect();
    if !positive.is_empty() {
        let n_long = rng.gen_range(0..=max_edges.saturating_sub(n_nodes));
        for i in 0..n_long {
            let len = positive[rng.gen_range(0..positive.len())];
            let seq = (0..len)
                .map(|_| nodes[rng.gen_range(0..nodes.len())].clone())
                .collect();
            raw.insert(EdgeId::from(format!("e{}", i)), seq);
        }
    }
    Monograph::validate(raw).expect("sequences only mention nodes")
}

/// A random morphism `dom -> cod`, or `None` when none exists. Uses the
/// same propagating backtracking as enumeration but explores candidate
/// targets in a shuffled order, so the returned morphism varies with
/// the RNG while staying valid.
pub fn random_morphism(rng: &mut impl Rng, dom: &Monograph, cod: &Monograph) -> Option<Morphism> {
    fn rec(
        rng: &mut impl Rng,
        dom: &Monograph,
        cod: &Monograph,
        order: &[EdgeId],
        assign: &mut BTreeMap<EdgeId, EdgeId>,
    ) -> bool {
        let e = match order.iter().find(|e| !assign.contains_key(e)) {
            Some(e) => e.clone(),
            None => return true,
        };
        let mut cands: Vec<EdgeId> = cod
            .edge_ids()
            .filter(|t| cod.len_of(t) == dom.len_of(&e))
            .cloned()
            .collect();
        cands.shuffle(rng);
        for t in cands {
            let mut trail = Vec::new();
            if try_assign(dom, cod, assign, &mut trail, e.clone(), t)
                && rec(rng, dom, cod, order, assign)
            {
                return true;
            }
            for k in &trail {
                assign.remove(k);
            }
        }
        false
    }

    fn try_assign(
        dom: &Monograph,
        cod: &Monograph,
        assign: &mut BTreeMap<EdgeId, EdgeId>,
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
        assign.insert(e.clone(), t.clone());
        trail.push(e.clone());
        let seq = dom.seq(&e).unwrap().to_vec();
        let img = cod.seq(&t).unwrap().to_vec();
        seq.into_iter()
            .zip(img)
            .all(|(s, i)| try_assign(dom, cod, assign, trail, s, i))
    }

    let order: Vec<EdgeId> = dom.edge_ids().cloned().collect();
    let mut assign = BTreeMap::new();
    if rec(rng, dom, cod, &order, &mut assign) {
        Some(
            Morphism::new(dom.clone(), cod.clone(), assign).expect("search respects the equations"),
        )
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_monographs_validate() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..100 {
            let m = random_monograph(&mut rng, 6, 3);
            assert!(m.trace().iter().all(|l| *l <= 3));
        }
    }

    #[test]
    fn generated_standard_monographs_stay_in_their_trace() {
        let mut rng = StdRng::seed_from_u64(7);
        let lengths = BTreeSet::from([0usize, 2, 3]);
        for _ in 0..100 {
            let m = random_standard_monograph(&mut rng, 6, &lengths);
            assert!(m.is_standard());
            assert!(m.trace().is_subset(&lengths));
        }
    }

    #[test]
    fn random_morphisms_are_valid_when_found() {
        let mut rng = StdRng::seed_from_u64(42);
        let mut found = 0;
        for _ in 0..50 {
            let a = random_monograph(&mut rng, 4, 2);
            let b = random_monograph(&mut rng, 4, 2);
            if let Some(f) = random_morphism(&mut rng, &a, &b) {
                assert_eq!(f.dom(), &a);
                assert_eq!(f.cod(), &b);
                found += 1;
            } else {
                assert!(crate::morphism::enumerate_morphisms(&a, &b, Some(1)).is_empty());
            }
        }
        assert!(found > 0);
    }
}
