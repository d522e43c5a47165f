//! Exact permutation-group arithmetic.
//!
//! A [`Group`] stores its full element list in canonical (lexicographic) order.
//! Elements are referred to by their index in that list; index `0` is always
//! the identity because the identity is the lexicographically least permutation.

mod constructors;
mod hom;
mod lattice;
mod set;

use std::collections::{HashMap, VecDeque};
use std::fmt;

pub use constructors::*;
pub use hom::{action_images, quotient, GroupHom};
pub use lattice::{SubgroupClass, SubgroupLattice, DEFAULT_ORDER_CAP};
pub use set::ElemSet;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Hard ceiling on the number of elements a [`Group`] may hold.
pub const MAX_GROUP_ORDER: usize = 200_000;

/// Groups up to this order get a full Cayley table.
const TABLE_LIMIT: usize = 2048;

/// Generates the closure of `generators`, sorted canonically.
pub fn closure(degree: usize, generators: &[Perm]) -> Result<Vec<Perm>> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
    }
    let id = Perm::identity(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.compose(g);
            if !seen.contains_key(&y) {
                if seen.len() >= MAX_GROUP_ORDER {
                    return Err(Error::CapExceeded { size: seen.len() + 1, cap: MAX_GROUP_ORDER });
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
    }
    let mut elems: Vec<Perm> = seen.into_keys().collect();
    elems.sort();
    Ok(elems)
}

/// A finite permutation group with its elements enumerated.
#[derive(Clone)]
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    gen_indices: Vec<usize>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverse: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl Group {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        let elements = closure(degree, &generators)?;
        let index: HashMap<Perm, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let gen_indices = generators.iter().map(|g| index[g]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for (a, pa) in elements.iter().enumerate() {
                for (b, pb) in elements.iter().enumerate() {
                    t[a * n + b] = index[&pa.compose(pb)] as u32;
                }
            }
            t
        });
        Ok(Group { degree, generators, gen_indices, elements, index, inverse, table })
    }

    /// Parses generators given as cycle lists.
    pub fn from_cycles(degree: usize, generators: &[Vec<Vec<u32>>]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|c| Perm::from_cycles(degree, c))
            .collect::<Result<Vec<_>>>()?;
        Group::new(degree, gens)
    }

    pub fn trivial() -> Self {
        Group::new(1, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Element indices of the generators, in the order given.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_indices
    }

    /// Generators together with their inverses, identity removed, sorted.
    pub fn symmetric_generators(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .gen_indices
            .iter()
            .flat_map(|&g| [g, self.inverse[g]])
            .filter(|&g| g != self.identity())
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g * h * g^-1`
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse[g])
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut result = self.identity();
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Evaluates a word in the generators, read left to right.
    pub fn word(&self, word: &[usize]) -> Result<usize> {
        let mut x = self.identity();
        for &w in word {
            let g = *self.gen_indices.get(w).ok_or_else(|| {
                Error::InvalidInput(format!("generator index {w} out of range"))
            })?;
            x = self.mul(x, g);
        }
        Ok(x)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gen_indices;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut set = ElemSet::new(self.order());
        set.insert(self.identity());
        let mut elems = vec![self.identity()];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        let mut generators: Vec<usize> =
            gens.iter().copied().filter(|&g| g != self.identity()).collect();
        generators.sort_unstable();
        generators.dedup();
        Subgroup { elements: elems, set, generators }
    }

    /// Wraps an element set known to be a subgroup, checking closure.
    pub fn subgroup_from_elements(&self, elems: &[usize]) -> Result<Subgroup> {
        let mut set = ElemSet::new(self.order());
        for &e in elems {
            if e >= self.order() {
                return Err(Error::NotASubgroup(format!("element index {e} out of range")));
            }
            set.insert(e);
        }
        if !set.contains(self.identity()) {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for a in set.iter() {
            if !set.contains(self.inverse[a]) {
                return Err(Error::NotASubgroup("not closed under inverses".into()));
            }
            for b in set.iter() {
                if !set.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup("not closed under products".into()));
                }
            }
        }
        let elements: Vec<usize> = set.iter().collect();
        let sub = self.generate(&elements);
        let generators = minimal_generators(self, &sub);
        Ok(Subgroup { generators, ..sub })
    }

    pub fn whole(&self) -> Subgroup {
        let mut s = self.generate(&self.gen_indices);
        s.generators = self.gen_indices.clone();
        s
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.generate(&[])
    }

    /// Re-represents a subgroup as a group in its own right (same degree).
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Group {
        let gens: Vec<Perm> = h.generators.iter().map(|&g| self.elements[g].clone()).collect();
        Group::new(self.degree, gens).expect("subgroup of a finite group")
    }

    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        let mut set = ElemSet::new(self.order());
        let mut elements: Vec<usize> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
        for &e in &elements {
            set.insert(e);
        }
        elements.sort_unstable();
        let mut generators: Vec<usize> = h.generators.iter().map(|&x| self.conj(g, x)).collect();
        generators.sort_unstable();
        Subgroup { elements, set, generators }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = (0..self.order())
            .filter(|&g| h.generators.iter().all(|&x| h.contains(self.conj(g, x))))
            .collect();
        let mut n = self.generate(&elems);
        n.generators = minimal_generators(self, &n);
        n
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.gen_indices
            .iter()
            .all(|&g| h.generators.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// Order of `H` modulo the normal subgroup `P`, i.e., least `k` with `h^k` in `P`.
    pub fn order_mod(&self, h: usize, p: &Subgroup) -> usize {
        let mut x = h;
        let mut k = 1;
        while !p.contains(x) {
            x = self.mul(x, h);
            k += 1;
        }
        k
    }
}

/// A small generating set found greedily: add elements until the span is reached.
fn minimal_generators(g: &Group, sub: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.generate(&[]);
    // Prefer elements of large order so few generators are needed.
    let mut candidates = sub.elements.clone();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    for x in candidates {
        if span.order() == sub.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = g.generate(&gens);
        }
    }
    gens.sort_unstable();
    gens
}

/// A subgroup, identified by its sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    elements: Vec<usize>,
    set: ElemSet,
    generators: Vec<usize>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order(), self.generators)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by size, then lexicographically by element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.elements.len(), &self.elements).cmp(&(other.elements.len(), &other.elements))
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn set(&self) -> &ElemSet {
        &self.set
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order()
            && other.order() % self.order() == 0
            && self.generators.iter().all(|&g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some(p)` when `n` is a positive power of the prime `p`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    let f = prime_factors(n);
    (f.len() == 1).then(|| f[0])
}
