//! Subgroup enumeration and conjugacy classes of subgroups.
//!
//! Exhaustive enumeration repeatedly joins already-found subgroups with cyclic
//! subgroups of prime-power order. Every subgroup is the join of its
//! prime-power cyclic subgroups, so the process reaches all of them, perfect
//! subgroups included. Above the order cap only subgroups generated by at most
//! three elements are produced and the lattice is flagged incomplete.

use std::collections::HashMap;

use super::{prime_power_base, ElemSet, Group, Subgroup};
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 2000;

/// Generator bound of the fallback enumeration above the cap.
pub const HEURISTIC_GENERATORS: usize = 3;

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub index: usize,
    /// Lattice index of the lexicographically least member.
    pub representative: usize,
    /// Lattice indices of all conjugates, ascending.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    lookup: HashMap<ElemSet, usize>,
    classes: Vec<SubgroupClass>,
    class_of: Vec<usize>,
    complete: bool,
}

fn cyclic_subgroups(g: &Group, prime_power_only: bool) -> Vec<Subgroup> {
    let mut seen: HashMap<ElemSet, ()> = HashMap::new();
    let mut out = Vec::new();
    for x in 1..g.order() {
        let o = g.element_order(x) as u64;
        if prime_power_only && prime_power_base(o).is_none() {
            continue;
        }
        let z = g.generate(&[x]);
        if seen.insert(z.set().clone(), ()).is_none() {
            out.push(z);
        }
    }
    out
}

impl SubgroupLattice {
    /// Exhaustive enumeration; fails when `|G| > order_cap`.
    pub fn new(g: &Group, order_cap: usize) -> Result<Self> {
        if g.order() > order_cap {
            return Err(Error::EnumerationIncomplete { order: g.order(), cap: order_cap });
        }
        let cyclics = cyclic_subgroups(g, true);
        let mut found: HashMap<ElemSet, usize> = HashMap::new();
        let mut list = vec![g.trivial_subgroup()];
        found.insert(list[0].set().clone(), 0);
        let mut i = 0;
        while i < list.len() {
            let h = list[i].clone();
            for z in &cyclics {
                if z.is_subgroup_of(&h) {
                    continue;
                }
                let mut gens = h.generators().to_vec();
                gens.extend_from_slice(z.generators());
                let k = g.generate(&gens);
                if !found.contains_key(k.set()) {
                    found.insert(k.set().clone(), list.len());
                    list.push(k);
                }
            }
            i += 1;
        }
        Ok(Self::finish(g, list, true))
    }

    /// Subgroups generated by at most `max_gens` elements; flagged incomplete.
    pub fn bounded(g: &Group, max_gens: usize) -> Self {
        let cyclics = cyclic_subgroups(g, false);
        let mut found: HashMap<ElemSet, usize> = HashMap::new();
        let mut list = vec![g.trivial_subgroup()];
        found.insert(list[0].set().clone(), 0);
        let mut layer = vec![0usize];
        for _ in 0..max_gens {
            let mut next = Vec::new();
            for &hi in &layer {
                let h = list[hi].clone();
                for z in &cyclics {
                    if z.is_subgroup_of(&h) {
                        continue;
                    }
                    let mut gens = h.generators().to_vec();
                    gens.extend_from_slice(z.generators());
                    let k = g.generate(&gens);
                    if !found.contains_key(k.set()) {
                        found.insert(k.set().clone(), list.len());
                        next.push(list.len());
                        list.push(k);
                    }
                }
            }
            layer = next;
        }
        Self::finish(g, list, false)
    }

    /// Exhaustive when under the cap, otherwise the bounded-generator fallback.
    pub fn best_effort(g: &Group, order_cap: usize) -> Self {
        Self::new(g, order_cap).unwrap_or_else(|_| Self::bounded(g, HEURISTIC_GENERATORS))
    }

    fn finish(g: &Group, mut list: Vec<Subgroup>, complete: bool) -> Self {
        // Close under conjugation (a no-op for exhaustive runs).
        let mut present: HashMap<ElemSet, ()> =
            list.iter().map(|h| (h.set().clone(), ())).collect();
        let mut i = 0;
        while i < list.len() {
            for &s in g.generator_indices() {
                let c = g.conjugate_subgroup(s, &list[i]);
                if present.insert(c.set().clone(), ()).is_none() {
                    list.push(c);
                }
            }
            i += 1;
        }
        list.sort();
        let lookup: HashMap<ElemSet, usize> =
            list.iter().enumerate().map(|(i, h)| (h.set().clone(), i)).collect();
        let mut class_of = vec![usize::MAX; list.len()];
        let mut classes = Vec::new();
        for start in 0..list.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut members = vec![start];
            class_of[start] = idx;
            let mut j = 0;
            while j < members.len() {
                let h = &list[members[j]];
                for &s in g.generator_indices() {
                    let c = g.conjugate_subgroup(s, h);
                    let ci = lookup[c.set()];
                    if class_of[ci] == usize::MAX {
                        class_of[ci] = idx;
                        members.push(ci);
                    }
                }
                j += 1;
            }
            members.sort_unstable();
            classes.push(SubgroupClass { index: idx, representative: members[0], members });
        }
        SubgroupLattice { subgroups: list, lookup, classes, class_of, complete }
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.lookup.get(h.set()).copied()
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &SubgroupClass {
        &self.classes[c]
    }

    pub fn class_of(&self, subgroup_index: usize) -> usize {
        self.class_of[subgroup_index]
    }

    pub fn representative(&self, c: usize) -> &Subgroup {
        &self.subgroups[self.classes[c].representative]
    }

    /// Class of the whole group (always the last one).
    pub fn top_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// Class of the trivial subgroup (always the first one).
    pub fn bottom_class(&self) -> usize {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, symmetric};

    #[test]
    fn small_counts() {
        let s3 = SubgroupLattice::new(&symmetric(3), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3.classes().len(), 4);
        let c6 = SubgroupLattice::new(&cyclic(6), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(c6.len(), 4);
        assert_eq!(c6.classes().len(), 4);
        let a4 = SubgroupLattice::new(&alternating(4), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(a4.len(), 10);
        let orders: Vec<usize> =
            (0..a4.classes().len()).map(|c| a4.representative(c).order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 12]);
    }

    #[test]
    fn a5_and_s5_counts() {
        let a5 = SubgroupLattice::new(&alternating(5), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(a5.len(), 59);
        assert_eq!(a5.classes().len(), 9);
        let s5 = SubgroupLattice::new(&symmetric(5), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(s5.len(), 156);
        assert_eq!(s5.classes().len(), 19);
    }

    #[test]
    fn cap_exceeded_is_explicit() {
        let err = SubgroupLattice::new(&symmetric(4), 10).unwrap_err();
        assert_eq!(err, Error::EnumerationIncomplete { order: 24, cap: 10 });
        let fallback = SubgroupLattice::best_effort(&symmetric(4), 10);
        assert!(!fallback.is_complete());
        // S4 subgroups are all 2-generated.
        assert_eq!(fallback.len(), 30);
    }

    #[test]
    fn representative_is_least_member() {
        let s4 = SubgroupLattice::new(&symmetric(4), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(s4.classes().len(), 11);
        for c in s4.classes() {
            for &m in &c.members {
                assert!(s4.subgroup(c.representative) <= s4.subgroup(m));
            }
        }
        assert_eq!(s4.representative(s4.top_class()).order(), 24);
        assert!(s4.representative(s4.bottom_class()).is_trivial());
    }
}
