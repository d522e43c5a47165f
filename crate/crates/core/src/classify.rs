//! Group-class predicates: p-groups, cyclic mod p, the Dress family, depth,
//! and the dimension-bound formulas built on depth.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{prime_factors, Group, Subgroup, SubgroupLattice};

pub fn is_power_of(n: usize, p: u64) -> bool {
    let mut n = n as u64;
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn is_p_group(h: &Subgroup, p: u64) -> bool {
    is_power_of(h.order(), p)
}

/// Prime `p` when `h` is a nontrivial p-group.
pub fn p_group_prime(h: &Subgroup) -> Option<u64> {
    let f = prime_factors(h.order() as u64);
    (f.len() == 1).then(|| f[0])
}

pub fn is_cyclic(g: &Group, h: &Subgroup) -> bool {
    h.elements().iter().any(|&x| g.element_order(x) == h.order())
}

/// `H` is cyclic mod `P` when some element has order `|H/P|` modulo `P`.
fn quotient_generator(g: &Group, h: &Subgroup, p_sub: &Subgroup) -> Option<usize> {
    let index = h.order() / p_sub.order();
    h.elements().iter().copied().find(|&x| g.order_mod(x, p_sub) == index)
}

fn normalizes(g: &Group, h: &Subgroup, n: &Subgroup) -> bool {
    h.generators().iter().all(|&x| n.generators().iter().all(|&y| n.contains(g.conj(x, y))))
}

/// Witness that `H` is cyclic mod `p`: a normal p-subgroup with cyclic quotient.
#[derive(Clone, Debug)]
pub struct CyclicModWitness {
    pub p_sub: Subgroup,
    /// Element of `H` whose coset generates `H/P`.
    pub generator: usize,
}

/// Searches the normal p-subgroups of `h` (largest first) for one with cyclic quotient.
pub fn cyclic_mod_p(
    g: &Group,
    lattice: &SubgroupLattice,
    h: &Subgroup,
    p: u64,
) -> Option<CyclicModWitness> {
    let mut candidates: Vec<&Subgroup> = lattice
        .subgroups()
        .iter()
        .filter(|k| is_p_group(k, p) && k.is_subgroup_of(h) && normalizes(g, h, k))
        .collect();
    candidates.sort_by(|a, b| b.cmp(a));
    candidates.into_iter().find_map(|k| {
        quotient_generator(g, h, k).map(|generator| CyclicModWitness { p_sub: k.clone(), generator })
    })
}

/// True when `h` is cyclic mod some prime dividing `|G|` (or cyclic outright).
pub fn in_cyc_p(g: &Group, lattice: &SubgroupLattice, h: &Subgroup) -> bool {
    is_cyclic(g, h)
        || prime_factors(h.order() as u64)
            .into_iter()
            .any(|p| cyclic_mod_p(g, lattice, h, p).is_some())
}

#[derive(Clone, Debug)]
pub struct DressWitness {
    /// Prime of `P`; `None` when `P` is trivial and no prime was chosen.
    pub p: Option<u64>,
    /// Prime of `G/H`; `None` when `H = G` and no prime was chosen.
    pub q: Option<u64>,
    pub p_sub: Subgroup,
    pub h_sub: Subgroup,
    pub normalized: bool,
}

#[derive(Clone, Debug)]
pub enum DressVerdict {
    Dress(DressWitness),
    NotDress,
    /// No witness found and the subgroup lattice was not exhaustive.
    Unknown,
}

impl DressVerdict {
    pub fn is_dress(&self) -> Option<bool> {
        match self {
            DressVerdict::Dress(_) => Some(true),
            DressVerdict::NotDress => Some(false),
            DressVerdict::Unknown => None,
        }
    }

    pub fn witness(&self) -> Option<&DressWitness> {
        match self {
            DressVerdict::Dress(w) => Some(w),
            _ => None,
        }
    }
}

fn prime_opt_is_power(n: usize, p: Option<u64>) -> bool {
    match p {
        Some(p) => is_power_of(n, p),
        None => n == 1,
    }
}

fn coprime_to(n: usize, p: Option<u64>) -> bool {
    p.map_or(true, |p| n as u64 % p != 0)
}

/// Checks `P ⊴ H ⊴ G`, `P` a p-group, `H/P` cyclic, `G/H` a q-group, and the
/// extra normal-form conditions when `normalized` is set.
pub fn check_witness(g: &Group, w: &DressWitness) -> Result<()> {
    let fail = |m: &str| Err(Error::InvalidWitness(m.to_string()));
    if !w.p_sub.is_subgroup_of(&w.h_sub) {
        return fail("P is not contained in H");
    }
    if !normalizes(g, &w.h_sub, &w.p_sub) {
        return fail("P is not normal in H");
    }
    if !g.is_normal(&w.h_sub) {
        return fail("H is not normal in G");
    }
    if !prime_opt_is_power(w.p_sub.order(), w.p) {
        return fail("P is not a p-group");
    }
    if quotient_generator(g, &w.h_sub, &w.p_sub).is_none() {
        return fail("H/P is not cyclic");
    }
    if !prime_opt_is_power(g.order() / w.h_sub.order(), w.q) {
        return fail("G/H is not a q-group");
    }
    if w.normalized {
        let c = w.h_sub.order() / w.p_sub.order();
        if !coprime_to(c, w.p) || !coprime_to(c, w.q) {
            return fail("|H/P| is not coprime to p and q");
        }
        if !g.is_normal(&w.p_sub) {
            return fail("P is not normal in G");
        }
    }
    Ok(())
}

/// Exhaustive search over normal subgroups `H` (largest first) with `G/H` of
/// prime-power order, testing each for being cyclic mod some prime.
pub fn is_dress(g: &Group, lattice: &SubgroupLattice) -> DressVerdict {
    let primes = prime_factors(g.order() as u64);
    let mut normals: Vec<&Subgroup> =
        lattice.subgroups().iter().filter(|h| g.is_normal(h)).collect();
    normals.sort_by(|a, b| b.cmp(a));
    for h in normals {
        let index = g.order() / h.order();
        let q = if index == 1 {
            None
        } else {
            match primes.iter().copied().find(|&q| is_power_of(index, q)) {
                Some(q) => Some(q),
                None => continue,
            }
        };
        if is_cyclic(g, h) {
            return DressVerdict::Dress(DressWitness {
                p: None,
                q,
                p_sub: g.trivial_subgroup(),
                h_sub: h.clone(),
                normalized: false,
            });
        }
        for &p in &primes {
            if let Some(cw) = cyclic_mod_p(g, lattice, h, p) {
                let p = (!cw.p_sub.is_trivial()).then_some(p);
                return DressVerdict::Dress(DressWitness {
                    p,
                    q,
                    p_sub: cw.p_sub,
                    h_sub: h.clone(),
                    normalized: false,
                });
            }
        }
    }
    if lattice.is_complete() {
        DressVerdict::NotDress
    } else {
        DressVerdict::Unknown
    }
}

/// Normal form of a Dress series: first pull back the p-Sylow of the cyclic
/// quotient `H'/P'` to get `P`, then (when `p != q`) strip the q-part of `H'/P`.
pub fn dress_normalize(g: &Group, w: &DressWitness) -> Result<DressWitness> {
    check_witness(g, &DressWitness { normalized: false, ..w.clone() })?;
    let h1 = &w.h_sub;
    let p_elems: Vec<usize> = match w.p {
        Some(p) => h1
            .elements()
            .iter()
            .copied()
            .filter(|&x| is_power_of(g.order_mod(x, &w.p_sub), p))
            .collect(),
        None => w.p_sub.elements().to_vec(),
    };
    let p_sub = g.subgroup_from_elements(&p_elems)?;
    let h_sub = match (w.p, w.q) {
        (Some(p), Some(q)) if p == q => h1.clone(),
        (_, Some(q)) => {
            let elems: Vec<usize> = h1
                .elements()
                .iter()
                .copied()
                .filter(|&x| g.order_mod(x, &p_sub) as u64 % q != 0)
                .collect();
            g.subgroup_from_elements(&elems)?
        }
        (_, None) => h1.clone(),
    };
    let out = DressWitness { p: w.p, q: w.q, p_sub, h_sub, normalized: true };
    check_witness(g, &out)?;
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthReport {
    pub depth: usize,
    /// Lattice indices of a longest strictly descending chain, starting at `G`.
    pub chain: Vec<usize>,
    /// Prime factors of `|G|` counted with multiplicity.
    pub omega: u32,
}

/// Longest strictly descending chain of subgroups, counted by members.
pub fn depth(g: &Group, lattice: &SubgroupLattice) -> Result<DepthReport> {
    if !lattice.is_complete() {
        return Err(Error::LatticeIncomplete);
    }
    let subs = lattice.subgroups();
    let n = subs.len();
    // Subgroups are sorted by order, so every proper subgroup precedes its overgroups.
    let mut best = vec![1usize; n];
    let mut next = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..i {
            if subs[j].order() < subs[i].order()
                && best[j] + 1 > best[i]
                && subs[j].is_subgroup_of(&subs[i])
            {
                best[i] = best[j] + 1;
                next[i] = j;
            }
        }
    }
    let top = n - 1;
    let mut chain = vec![top];
    while next[*chain.last().expect("nonempty")] != usize::MAX {
        chain.push(next[*chain.last().expect("nonempty")]);
    }
    Ok(DepthReport { depth: best[top], chain, omega: omega(g.order() as u64) })
}

pub fn omega(n: u64) -> u32 {
    assert!(n >= 1, "omega is defined for positive integers");
    num_prime::nt_funcs::factorize64(n).values().map(|&e| e as u32).sum()
}

/// Dimension bound for fixed-point-free contractible complexes: `4d + 2`.
pub fn bd(d: u64) -> u64 {
    4 * d + 2
}

/// `Σ_{∅ ≠ M ⊆ {1..d}} Π_{m ∈ M} bd(m)`, i.e. `Π (1 + bd(m)) - 1`.
pub fn cor27_bound(d: u64) -> BigUint {
    let prod = (1..=d).fold(BigUint::one(), |acc, m| acc * BigUint::from(1 + bd(m)));
    prod - BigUint::one()
}

/// The coarser majorant `2^d · bd(d)^d`.
pub fn cor27_majorant(d: u64) -> BigUint {
    BigUint::from(2u32).pow(d as u32) * BigUint::from(bd(d)).pow(d as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        alternating, cyclic, dihedral, klein_four, symmetric, DEFAULT_ORDER_CAP,
    };

    fn lat(g: &Group) -> SubgroupLattice {
        SubgroupLattice::new(g, DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn p_groups_and_cyclicity() {
        let v = klein_four();
        assert!(is_p_group(&v.whole(), 2));
        assert!(!is_cyclic(&v, &v.whole()));
        let c6 = cyclic(6);
        assert!(is_cyclic(&c6, &c6.whole()));
        let s3 = symmetric(3);
        assert!(!is_cyclic(&s3, &s3.whole()));
        assert!(is_p_group(&s3.trivial_subgroup(), 7));
    }

    #[test]
    fn cyclic_mod_p_examples() {
        let s3 = symmetric(3);
        let l = lat(&s3);
        let w = cyclic_mod_p(&s3, &l, &s3.whole(), 3).unwrap();
        assert_eq!(w.p_sub.order(), 3);
        assert!(cyclic_mod_p(&s3, &l, &s3.whole(), 2).is_none());
        let d4 = dihedral(4);
        let w = cyclic_mod_p(&d4, &lat(&d4), &d4.whole(), 2).unwrap();
        assert_eq!(w.p_sub.order(), 8);
        let a5 = alternating(5);
        let l5 = lat(&a5);
        for p in [2, 3, 5] {
            assert!(cyclic_mod_p(&a5, &l5, &a5.whole(), p).is_none());
        }
    }

    #[test]
    fn dress_examples() {
        let s4 = symmetric(4);
        let w = is_dress(&s4, &lat(&s4)).witness().cloned().unwrap();
        assert_eq!(w.h_sub.order(), 12);
        assert_eq!(w.p_sub.order(), 4);
        assert_eq!((w.p, w.q), (Some(2), Some(2)));
        assert_eq!(is_dress(&alternating(5), &lat(&alternating(5))).is_dress(), Some(false));
        assert_eq!(is_dress(&symmetric(5), &lat(&symmetric(5))).is_dress(), Some(false));
        for n in 1..=12 {
            assert_eq!(is_dress(&cyclic(n), &lat(&cyclic(n))).is_dress(), Some(true));
        }
    }

    #[test]
    fn incomplete_lattice_gives_unknown() {
        let a5 = alternating(5);
        let l = SubgroupLattice::bounded(&a5, 1);
        assert!(matches!(is_dress(&a5, &l), DressVerdict::Unknown));
    }

    #[test]
    fn normalize_cyclic_six() {
        let c6 = cyclic(6);
        let w = DressWitness {
            p: Some(2),
            q: Some(3),
            p_sub: c6.trivial_subgroup(),
            h_sub: c6.whole(),
            normalized: false,
        };
        let n = dress_normalize(&c6, &w).unwrap();
        assert_eq!(n.p_sub.order(), 2);
        assert_eq!(n.h_sub.order(), 2);
        assert_eq!(c6.order() / n.h_sub.order(), 3);
        let again = dress_normalize(&c6, &n).unwrap();
        assert_eq!(again.p_sub, n.p_sub);
        assert_eq!(again.h_sub, n.h_sub);
    }

    #[test]
    fn normalize_s4() {
        let s4 = symmetric(4);
        let w = is_dress(&s4, &lat(&s4)).witness().cloned().unwrap();
        let n = dress_normalize(&s4, &w).unwrap();
        assert_eq!(n.p_sub.order(), 4);
        assert_eq!(n.h_sub.order(), 12);
        assert!(s4.is_normal(&n.p_sub));
    }

    #[test]
    fn normalize_rejects_bad_witness() {
        let s3 = symmetric(3);
        let t = s3.generator_indices()[0];
        let w = DressWitness {
            p: None,
            q: None,
            p_sub: s3.trivial_subgroup(),
            h_sub: s3.generate(&[t]),
            normalized: false,
        };
        assert!(dress_normalize(&s3, &w).is_err());
    }

    #[test]
    fn depth_examples() {
        let t = Group::trivial();
        assert_eq!(depth(&t, &lat(&t)).unwrap().depth, 1);
        let s3 = symmetric(3);
        assert_eq!(depth(&s3, &lat(&s3)).unwrap().depth, 3);
        let a5 = alternating(5);
        let r = depth(&a5, &lat(&a5)).unwrap();
        assert_eq!(r.depth, 5);
        assert_eq!(r.chain.len(), 5);
        assert_eq!(r.omega, 4);
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(omega(60), 4);
        assert_eq!(omega(12), 3);
        assert_eq!(omega(1), 0);
        assert_eq!(bd(1), 6);
        assert_eq!(bd(2), 10);
        assert_eq!(cor27_bound(2), BigUint::from(76u32));
        assert!(cor27_bound(2) <= cor27_majorant(2));
        assert_eq!(cor27_majorant(2), BigUint::from(400u32));
    }
}
