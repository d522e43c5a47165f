//! Brute-force oracles built from raw permutations, and random instance
//! generators for equivariant complexes.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use fixres::gcomplex::{GComplex, SimplicialComplex};
use fixres::group::{Group, Subgroup, SubgroupLattice, DEFAULT_ORDER_CAP};
use fixres::perm::Perm;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Simplex = Vec<u32>;

/// A permutation group with its Cayley table, closed by breadth-first search.
pub struct Naive {
    pub elems: Vec<Vec<u32>>,
    pub index: HashMap<Vec<u32>, usize>,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub id: usize,
}

fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&x| a[x as usize]).collect()
}

impl Naive {
    pub fn new(degree: usize, gens: &[Vec<u32>]) -> Self {
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut elems = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            head += 1;
            for s in gens {
                let y = compose(s, &x);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let mul: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| index[&compose(&elems[a], &elems[b])]).collect()).collect();
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a][b] == 0).expect("group")).collect();
        Naive { elems, index, mul, inv, id: 0 }
    }

    pub fn from_group(g: &Group) -> Self {
        let gens: Vec<Vec<u32>> = g.generators().iter().map(|p| p.images().to_vec()).collect();
        Self::new(g.degree(), &gens)
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// Element set of a library subgroup, in this table's numbering.
    pub fn embed(&self, g: &Group, h: &Subgroup) -> Vec<usize> {
        let mut v: Vec<usize> = h.elements().iter().map(|&x| self.index[g.element(x).images()]).collect();
        v.sort_unstable();
        v
    }

    /// Library element index of a table element.
    pub fn lift(&self, g: &Group, x: usize) -> usize {
        g.index_of(&Perm::from_images(self.elems[x].clone()).unwrap()).expect("same group")
    }

    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.id] = true;
        let mut list = vec![self.id];
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &s in gens {
                let y = self.mul[s][x];
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
        }
        list.sort_unstable();
        list
    }

    pub fn mask(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.order()];
        for &x in set {
            m[x] = true;
        }
        m
    }

    /// Every subgroup, by adjoining single elements to known subgroups.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut queue: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![self.id], vec![])];
        seen.insert(vec![self.id]);
        let mut head = 0;
        while head < queue.len() {
            let (set, gens) = queue[head].clone();
            head += 1;
            let m = self.mask(&set);
            for x in 0..self.order() {
                if m[x] {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let t = self.closure(&g2);
                if seen.insert(t.clone()) {
                    queue.push((t, g2));
                }
            }
        }
        let mut out: Vec<Vec<usize>> = queue.into_iter().map(|(s, _)| s).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul[self.mul[g][x]][self.inv[g]]
    }

    pub fn normalizes(&self, g: &[usize], n: &[usize]) -> bool {
        let m = self.mask(n);
        g.iter().all(|&a| n.iter().all(|&x| m[self.conj(a, x)]))
    }

    pub fn normalizer_order(&self, h: &[usize]) -> usize {
        let m = self.mask(h);
        (0..self.order()).filter(|&a| h.iter().all(|&x| m[self.conj(a, x)])).count()
    }

    /// Normal subgroups of `h`: normal closures of elements, then their products.
    pub fn normal_subgroups_of(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let closure_of = |gens: Vec<usize>| -> Vec<usize> {
            let mut conj: Vec<usize> = gens.iter().flat_map(|&x| h.iter().map(move |&a| (a, x))).map(|(a, x)| self.conj(a, x)).collect();
            conj.sort_unstable();
            conj.dedup();
            self.closure(&conj)
        };
        let mut found: BTreeSet<Vec<usize>> = h.iter().map(|&x| closure_of(vec![x])).collect();
        loop {
            let list: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for a in &list {
                for b in &list {
                    let mut u = a.clone();
                    u.extend(b);
                    grew |= found.insert(self.closure(&u));
                }
            }
            if !grew {
                return list;
            }
        }
    }

    /// Whether `h / p` is cyclic, for `p` normal in `h`.
    pub fn cyclic_quotient(&self, h: &[usize], p: &[usize]) -> bool {
        h.iter().any(|&x| {
            let mut gens = p.to_vec();
            gens.push(x);
            self.closure(&gens).len() == h.len()
        })
    }

    /// `P ⊴ H ⊴ G` with `P` a p-group, `H/P` cyclic and `G/H` a q-group.
    pub fn is_dress(&self) -> bool {
        let all: Vec<usize> = (0..self.order()).collect();
        self.normal_subgroups_of(&all).iter().any(|h| {
            prime_power(self.order() / h.len())
                && self
                    .normal_subgroups_of(h)
                    .iter()
                    .any(|p| prime_power(p.len()) && self.cyclic_quotient(h, p))
        })
    }

    /// Some normal subgroup of prime-power order has cyclic quotient in `h`.
    pub fn cyclic_mod_p(&self, subgroups: &[Vec<usize>], h: &[usize]) -> bool {
        let hm = self.mask(h);
        subgroups.iter().any(|p| {
            prime_power(p.len())
                && h.len() % p.len() == 0
                && p.iter().all(|&x| hm[x])
                && self.normalizes(h, p)
                && self.cyclic_quotient(h, p)
        })
    }

    /// `|(G/H)^K|`: cosets `aH` with `K ⊆ aHa⁻¹`.
    pub fn fixed_cosets(&self, h: &[usize], k: &[usize]) -> usize {
        let m = self.mask(h);
        let count = (0..self.order()).filter(|&a| k.iter().all(|&x| m[self.conj(self.inv[a], x)])).count();
        count / h.len()
    }

    /// `rank(H) = 1 + max rank of proper overgroups`, per subgroup.
    pub fn ranks(&self, subgroups: &[Vec<usize>]) -> Vec<usize> {
        let masks: Vec<Vec<bool>> = subgroups.iter().map(|s| self.mask(s)).collect();
        let mut rank = vec![0usize; subgroups.len()];
        for i in (0..subgroups.len()).rev() {
            let above = (i + 1..subgroups.len())
                .filter(|&j| subgroups[j].len() > subgroups[i].len() && subgroups[i].iter().all(|&x| masks[j][x]))
                .map(|j| rank[j])
                .max()
                .unwrap_or(0);
            rank[i] = above + 1;
        }
        rank
    }

    pub fn contains_all(&self, big: &[usize], small: &[usize]) -> bool {
        let m = self.mask(big);
        small.iter().all(|&x| m[x])
    }
}

pub fn prime_power(n: usize) -> bool {
    if n == 1 {
        return true;
    }
    let p = (2..=n).find(|p| n % p == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

/// Library class index of every subgroup, keyed by its element set in `naive`.
pub fn class_map(naive: &Naive, g: &Group, lattice: &SubgroupLattice) -> HashMap<Vec<usize>, usize> {
    lattice
        .subgroups()
        .iter()
        .enumerate()
        .map(|(i, s)| (naive.embed(g, s), lattice.class_of(i)))
        .collect()
}

/// Library groups of order at most `max`, taken from the catalog.
pub fn small_groups(max: usize) -> Vec<(String, Arc<Group>)> {
    fixres::catalog::catalog()
        .into_iter()
        .filter(|e| e.order <= max)
        .map(|e| (e.name.clone(), Arc::new(e.build().unwrap())))
        .collect()
}

/// Left multiplication on the cosets `xK`, one image list per generator.
pub fn coset_action(g: &Group, k: &Subgroup) -> (usize, Vec<Vec<u32>>) {
    let mut label = vec![usize::MAX; g.order()];
    let mut count = 0;
    for x in 0..g.order() {
        if label[x] == usize::MAX {
            for &h in k.elements() {
                label[g.mul(x, h)] = count;
            }
            count += 1;
        }
    }
    let mut rep = vec![0; count];
    for x in (0..g.order()).rev() {
        rep[label[x]] = x;
    }
    let images = g
        .generator_indices()
        .iter()
        .map(|&s| (0..count).map(|c| label[g.mul(s, rep[c])] as u32).collect())
        .collect();
    (count, images)
}

/// A random `G`-set with at most `max` points, as generator images.
pub fn random_gset(rng: &mut impl Rng, g: &Group, lattice: &SubgroupLattice, max: usize) -> (usize, Vec<Vec<u32>>) {
    let ngen = g.generator_indices().len();
    loop {
        let mut total = 0;
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); ngen];
        let orbits = rng.gen_range(1..=3);
        for _ in 0..orbits {
            let k = lattice.subgroups().choose(rng).unwrap();
            let size = g.order() / k.order();
            if total + size > max {
                continue;
            }
            let (n, act) = coset_action(g, k);
            for (img, a) in images.iter_mut().zip(&act) {
                img.extend(a.iter().map(|&v| v + total as u32));
            }
            total += n;
        }
        if total > 0 {
            return (total, images);
        }
    }
}

/// A random `G`-simplicial complex with at most `max_vertices` vertices and
/// facets of dimension at most `max_dim`, every vertex included.
pub fn random_gcomplex(rng: &mut impl Rng, g: &Arc<Group>, max_vertices: usize, max_dim: usize) -> GComplex {
    let lattice = SubgroupLattice::new(g, DEFAULT_ORDER_CAP).unwrap();
    loop {
        let (n, images) = random_gset(rng, g, &lattice, max_vertices);
        let gens: Vec<Perm> = images.into_iter().map(|i| Perm::from_images(i).unwrap()).collect();
        let points: Vec<Simplex> = (0..n as u32).map(|v| vec![v]).collect();
        let skeleton = GComplex::new(g.clone(), SimplicialComplex::from_facets(n, &points), gens.clone()).unwrap();
        let mut facets = points.clone();
        for _ in 0..rng.gen_range(0..=3) {
            let size = rng.gen_range(2..=(max_dim + 1).min(n).max(2));
            if size > n {
                continue;
            }
            let mut verts: Vec<u32> = (0..n as u32).collect();
            verts.shuffle(rng);
            let s: Simplex = verts[..size].to_vec();
            for h in 0..g.order() {
                facets.push(skeleton.act_simplex(h, &s));
            }
        }
        let x = GComplex::new(g.clone(), SimplicialComplex::from_facets(n, &facets), gens).unwrap();
        if x.validate().is_ok() {
            return x;
        }
    }
}

/// A random complex over `h`: a point, a simplex with trivial action, a
/// simplex boundary, or a random `h`-complex.
pub fn random_fiber(rng: &mut impl Rng, h: &Arc<Group>, max_vertices: usize) -> GComplex {
    match rng.gen_range(0..5) {
        0 => GComplex::trivial_action(h.clone(), SimplicialComplex::simplex(0)),
        1 => GComplex::trivial_action(h.clone(), SimplicialComplex::simplex(rng.gen_range(1..=2))),
        2 => GComplex::trivial_action(h.clone(), SimplicialComplex::simplex_boundary(2)),
        _ => random_gcomplex(rng, h, max_vertices, 2),
    }
}

/// All vertices fixed by every element of `k`, with the simplices on them.
pub fn naive_fixed(x: &GComplex, k: &Subgroup) -> BTreeSet<Simplex> {
    let fixed: BTreeSet<u32> = (0..x.complex().vertex_count() as u32)
        .filter(|&v| k.elements().iter().all(|&a| x.act_vertex(a, v) == v))
        .collect();
    x.complex().simplices().iter().filter(|s| s.iter().all(|v| fixed.contains(v))).cloned().collect()
}

/// Join of simplex sets, with `b` shifted by `shift`.
pub fn naive_join(a: &BTreeSet<Simplex>, b: &BTreeSet<Simplex>, shift: u32) -> BTreeSet<Simplex> {
    let sb: Vec<Simplex> = b.iter().map(|s| s.iter().map(|v| v + shift).collect()).collect();
    let mut out: BTreeSet<Simplex> = a.clone();
    out.extend(sb.iter().cloned());
    for s in a {
        for t in &sb {
            let mut u = s.clone();
            u.extend(t);
            u.sort_unstable();
            out.insert(u);
        }
    }
    out
}

pub fn simplex_set(c: &SimplicialComplex) -> BTreeSet<Simplex> {
    c.simplices().iter().cloned().collect()
}

/// `Σ (−1)^dim` over the simplices.
pub fn naive_chi(s: &BTreeSet<Simplex>) -> i64 {
    s.iter().map(|x| if x.len() % 2 == 1 { 1 } else { -1 }).sum()
}

/// Reduced Betti numbers over `F_p` by Gaussian elimination of boundary matrices.
pub fn reduced_betti_mod_p(s: &BTreeSet<Simplex>, p: i64) -> Vec<usize> {
    let top = s.iter().map(|x| x.len()).max().unwrap_or(0);
    let by_dim: Vec<Vec<&Simplex>> = (0..=top).map(|k| s.iter().filter(|x| x.len() == k).collect()).collect();
    let mut counts: Vec<usize> = by_dim.iter().map(|v| v.len()).collect();
    counts[0] = 1;
    let rank = |k: usize| -> usize {
        // Boundary from size k to size k - 1 (size 0 is the augmentation).
        if k == 0 || k > top {
            return 0;
        }
        let rows: HashMap<&Simplex, usize> = if k == 1 {
            HashMap::new()
        } else {
            by_dim[k - 1].iter().enumerate().map(|(i, &x)| (x, i)).collect()
        };
        let nrows = if k == 1 { 1 } else { by_dim[k - 1].len() };
        let mut m: Vec<Vec<i64>> = by_dim[k]
            .iter()
            .map(|x| {
                let mut col = vec![0i64; nrows];
                if k == 1 {
                    col[0] = 1;
                } else {
                    for i in 0..x.len() {
                        let mut face = (*x).clone();
                        face.remove(i);
                        col[rows[&face]] = if i % 2 == 0 { 1 } else { p - 1 };
                    }
                }
                col
            })
            .collect();
        rank_mod(&mut m, p)
    };
    let ranks: Vec<usize> = (0..=top + 1).map(rank).collect();
    (0..=top).map(|k| counts[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0)).collect()
}

fn pow_mod(mut a: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn rank_mod(m: &mut [Vec<i64>], p: i64) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Fixed-order map from library elements of `h` to the group `fiber.group()`.
pub fn fiber_index(g: &Group, fiber: &GComplex, x: usize) -> usize {
    fiber.group().index_of(g.element(x)).expect("element of the fiber group")
}
