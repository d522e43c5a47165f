//! Resolutions `X[R]` of a G-complex by stabilizer complexes over its vertices.
//!
//! Fibers are stored once per vertex orbit, over the orbit representative,
//! together with a transport element `t_x` with `t_x · rep = x` for each vertex
//! of the orbit. The fiber over `x` is then the representative fiber relabeled
//! by `t_x`. Vertices of `X[R]` are pairs `(x, e)` with `e` a vertex of the
//! representative fiber, and `g · (x, e) = (gx, (t_{gx}⁻¹ g t_x) · e)`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::classify::{depth, is_dress, cor27_bound, DressVerdict};
use crate::error::{Error, Result};
use crate::gcomplex::{
    l1_distance, reduced_homology, same_group, Coefficients, GComplex, RealPoint, Simplex,
    SimplicialComplex, Weight,
};
use crate::group::{Group, Subgroup, SubgroupLattice, DEFAULT_ORDER_CAP};
use crate::obligation::{Obligation, ObligationKind};
use crate::perm::Perm;

#[derive(Clone, Debug)]
pub struct OrbitData {
    pub rep: u32,
    pub stabilizer: Subgroup,
    /// Complex over the stabilizer, realized as a group in its own right.
    pub fiber: GComplex,
    /// Transport element (index in G) for each vertex of the orbit.
    pub transport: BTreeMap<u32, usize>,
}

#[derive(Clone, Debug)]
pub struct ResolutionData {
    base: GComplex,
    orbits: Vec<OrbitData>,
    orbit_of: Vec<usize>,
}

/// Transport elements from `rep` by breadth-first search over generators.
pub fn transport_from(x: &GComplex, rep: u32) -> BTreeMap<u32, usize> {
    let g = x.group();
    let mut t = BTreeMap::from([(rep, g.identity())]);
    let mut queue = vec![rep];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let tv = t[&v];
        for &s in g.generator_indices() {
            let w = x.act_vertex(s, v);
            if let std::collections::btree_map::Entry::Vacant(e) = t.entry(w) {
                e.insert(g.mul(s, tv));
                queue.push(w);
            }
        }
    }
    t
}

impl ResolutionData {
    /// Fibers given per representative; stabilizers and transports are derived.
    pub fn new(base: GComplex, fibers: Vec<(u32, GComplex)>) -> Result<Self> {
        let orbits = fibers
            .into_iter()
            .map(|(rep, fiber)| OrbitData {
                rep,
                stabilizer: base.vertex_stabilizer(rep),
                transport: transport_from(&base, rep),
                fiber,
            })
            .collect();
        Self::from_parts(base, orbits)
    }

    /// Fibers built by `make` from each representative's stabilizer group.
    pub fn uniform(base: GComplex, make: impl Fn(&Arc<Group>) -> GComplex) -> Result<Self> {
        let g = base.group().clone();
        let fibers = base
            .vertex_orbits()
            .into_iter()
            .map(|orbit| {
                let rep = orbit[0];
                let stab = Arc::new(g.subgroup_as_group(&base.vertex_stabilizer(rep)));
                (rep, make(&stab))
            })
            .collect();
        Self::new(base, fibers)
    }

    /// Every fiber a single point.
    pub fn points(base: GComplex) -> Result<Self> {
        Self::uniform(base, |h| GComplex::trivial_action(h.clone(), SimplicialComplex::simplex(0)))
    }

    /// Checks orbit coverage, transports, stabilizers and fiber validity.
    pub fn from_parts(base: GComplex, orbits: Vec<OrbitData>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidResolutionData(m));
        let g = base.group().clone();
        let n = base.complex().vertex_count();
        let mut orbit_of = vec![usize::MAX; n];
        for (i, o) in orbits.iter().enumerate() {
            if o.rep as usize >= n {
                return bad(format!("representative {} out of range", o.rep));
            }
            for (&x, &t) in &o.transport {
                if x as usize >= n || t >= g.order() {
                    return bad(format!("transport entry {x} -> {t} out of range"));
                }
                if base.act_vertex(t, o.rep) != x {
                    return bad(format!("transport element does not carry {} to {x}", o.rep));
                }
                if orbit_of[x as usize] != usize::MAX {
                    return bad(format!("vertex {x} covered twice"));
                }
                orbit_of[x as usize] = i;
            }
            let orbit: HashSet<u32> = (0..g.order()).map(|h| base.act_vertex(h, o.rep)).collect();
            if orbit.len() != o.transport.len() {
                return bad(format!("transport for {} misses part of its orbit", o.rep));
            }
            if o.stabilizer != base.vertex_stabilizer(o.rep) {
                return bad(format!("wrong stabilizer for {}", o.rep));
            }
            let fg = o.fiber.group();
            let stab_perms: Vec<&Perm> = o.stabilizer.elements().iter().map(|&x| g.element(x)).collect();
            if fg.order() != stab_perms.len() || stab_perms.iter().any(|p| fg.index_of(p).is_none()) {
                return bad(format!("fiber over {} is not over its stabilizer", o.rep));
            }
            if let Err(v) = o.fiber.validate() {
                return bad(format!("fiber over {}: {v}", o.rep));
            }
        }
        if let Some(x) = orbit_of.iter().position(|&i| i == usize::MAX) {
            return bad(format!("vertex {x} has no fiber"));
        }
        Ok(ResolutionData { base, orbits, orbit_of })
    }

    pub fn base(&self) -> &GComplex {
        &self.base
    }

    pub fn orbits(&self) -> &[OrbitData] {
        &self.orbits
    }

    pub fn orbit_of(&self, x: u32) -> &OrbitData {
        &self.orbits[self.orbit_of[x as usize]]
    }

    /// `t_{gx}⁻¹ g t_x`, as an element of the representative's fiber group.
    fn twist(&self, g: usize, x: u32) -> usize {
        let grp = self.base.group();
        let o = self.orbit_of(x);
        let gx = self.base.act_vertex(g, x);
        let d = grp.mul(grp.inv(o.transport[&gx]), grp.mul(g, o.transport[&x]));
        o.fiber.group().index_of(grp.element(d)).expect("twist lies in the stabilizer")
    }
}

/// The realization of `X[R]` with its fiber bookkeeping.
#[derive(Clone, Debug)]
pub struct ResolvedComplex {
    pub complex: GComplex,
    /// Base vertex `x(y)` of each vertex `y`.
    pub fiber_of: Vec<u32>,
    /// Label of `y` in the representative fiber.
    pub local: Vec<u32>,
    /// First global vertex of the fiber over each base vertex.
    pub offset: Vec<u32>,
    pub base_dim: i64,
    pub fiber_dim: i64,
}

pub fn resolve(data: &ResolutionData) -> Result<ResolvedComplex> {
    let base = &data.base;
    let g = base.group().clone();
    let n = base.complex().vertex_count();
    let mut offset = Vec::with_capacity(n);
    let mut fiber_of = Vec::new();
    let mut local = Vec::new();
    for x in 0..n as u32 {
        offset.push(fiber_of.len() as u32);
        let size = data.orbit_of(x).fiber.complex().vertex_count();
        for e in 0..size as u32 {
            fiber_of.push(x);
            local.push(e);
        }
    }
    let total = fiber_of.len();
    let mut simplices: Vec<Simplex> = Vec::new();
    for sigma in base.complex().simplices() {
        let choices: Vec<Vec<Simplex>> = sigma
            .iter()
            .map(|&x| {
                let off = offset[x as usize];
                data.orbit_of(x)
                    .fiber
                    .complex()
                    .simplices()
                    .iter()
                    .map(|s| s.iter().map(|&e| e + off).collect())
                    .collect()
            })
            .collect();
        let mut partial: Vec<Simplex> = vec![Vec::new()];
        for c in &choices {
            let mut next = Vec::with_capacity(partial.len() * c.len());
            for p in &partial {
                for s in c {
                    let mut q = p.clone();
                    q.extend_from_slice(s);
                    next.push(q);
                }
            }
            partial = next;
        }
        simplices.extend(partial);
    }
    let complex = SimplicialComplex::new(total, simplices);
    let gen_action = g
        .generator_indices()
        .iter()
        .map(|&s| {
            let images = (0..total)
                .map(|y| {
                    let x = fiber_of[y];
                    let gx = base.act_vertex(s, x);
                    let d = data.twist(s, x);
                    let e = data.orbit_of(x).fiber.act_vertex(d, local[y]);
                    offset[gx as usize] + e
                })
                .collect();
            Perm::from_images(images).expect("fiberwise bijection")
        })
        .collect();
    let complex = GComplex::new(g, complex, gen_action)?;
    let fiber_dim = data.orbits.iter().map(|o| o.fiber.dimension()).max().unwrap_or(-1);
    Ok(ResolvedComplex { complex, fiber_of, local, offset, base_dim: base.dimension(), fiber_dim })
}

impl ResolvedComplex {
    /// `nk + n + k` for base dimension `n` and maximal fiber dimension `k`.
    pub fn dimension_bound(&self) -> i64 {
        let (n, k) = (self.base_dim, self.fiber_dim);
        n * k + n + k
    }

    /// `S_x(y)` for each base vertex met by `y`.
    pub fn partition(&self, y: &[u32]) -> BTreeMap<u32, Simplex> {
        let mut parts: BTreeMap<u32, Simplex> = BTreeMap::new();
        for &v in y {
            parts.entry(self.fiber_of[v as usize]).or_default().push(self.local[v as usize]);
        }
        parts
    }

    /// Checks that every simplex projects to a base simplex and meets each
    /// fiber in a fiber simplex, and that the parts reassemble the simplex.
    pub fn check_partition(&self, data: &ResolutionData) -> std::result::Result<(), Simplex> {
        for y in self.complex.complex().simplices() {
            let parts = self.partition(y);
            let s: Simplex = parts.keys().copied().collect();
            if !data.base.complex().contains(&s) {
                return Err(y.clone());
            }
            let mut rebuilt: Simplex = Vec::new();
            for (&x, part) in &parts {
                if !data.orbit_of(x).fiber.complex().contains(part) {
                    return Err(y.clone());
                }
                rebuilt.extend(part.iter().map(|&e| e + self.offset[x as usize]));
            }
            rebuilt.sort_unstable();
            if rebuilt != *y {
                return Err(y.clone());
            }
        }
        Ok(())
    }

    /// Checks that the stabilizer of each vertex `(x, e)` is the stabilizer of
    /// `e` in the fiber over `x`, and that each simplex stabilizer lies in the
    /// stabilizer of one of its fiber parts.
    pub fn check_stabilizers(&self, data: &ResolutionData) -> std::result::Result<(), Simplex> {
        let g = self.complex.group();
        let fiber_stab = |x: u32, part: &[u32]| -> Subgroup {
            let o = data.orbit_of(x);
            let t = o.transport[&x];
            // G_x acting on the fiber over x is the conjugate of the representative action.
            let elems: Vec<usize> = o
                .stabilizer
                .elements()
                .iter()
                .map(|&h| g.conj(t, h))
                .filter(|&h| {
                    let d = data.twist(h, x);
                    part.iter().all(|&e| o.fiber.act_vertex(d, e) == e)
                })
                .collect();
            g.subgroup_from_elements(&elems).expect("fiber stabilizer")
        };
        for y in self.complex.complex().simplices() {
            let stab = self.complex.simplex_stabilizer(y);
            let parts = self.partition(y);
            if y.len() == 1 {
                let (&x, part) = parts.iter().next().expect("one part");
                if stab != fiber_stab(x, part) {
                    return Err(y.clone());
                }
            } else if !parts.iter().any(|(&x, part)| stab.is_subgroup_of(&fiber_stab(x, part))) {
                return Err(y.clone());
            }
        }
        Ok(())
    }

    pub fn canonical_projection(&self) -> SimplicialMap {
        SimplicialMap { vertex_map: self.fiber_of.clone() }
    }

    /// Groups weights by fiber; zero-weight fibers are omitted.
    pub fn to_alt<W: Weight>(&self, p: &RealPoint<W>) -> Result<AltPoint<W>> {
        if !p.lies_in(self.complex.complex()) {
            return Err(Error::InvalidInput("point support is not a simplex".into()));
        }
        let mut groups: BTreeMap<u32, Vec<(u32, W)>> = BTreeMap::new();
        for (&v, w) in p.weights() {
            groups.entry(self.fiber_of[v as usize]).or_default().push((v, w.clone()));
        }
        let mut parts = BTreeMap::new();
        for (x, pairs) in groups {
            let lambda = pairs.iter().fold(W::zero(), |acc, (_, w)| acc + w.clone());
            let eta = RealPoint::from_weights(pairs.into_iter().map(|(v, w)| (v, w / lambda.clone())))?;
            parts.insert(x, (lambda, eta));
        }
        Ok(AltPoint { parts })
    }

    /// `Σ_x λ_x η_x`, after checking the supports form a simplex.
    pub fn from_alt<W: Weight>(&self, a: &AltPoint<W>) -> Result<RealPoint<W>> {
        for (&x, (_, eta)) in &a.parts {
            if eta.support().iter().any(|&v| self.fiber_of.get(v as usize) != Some(&x)) {
                return Err(Error::InvalidInput(format!("fiber point over {x} leaves its fiber")));
            }
        }
        let terms: Vec<(W, &RealPoint<W>)> = a.parts.values().map(|(l, e)| (l.clone(), e)).collect();
        let p = RealPoint::combine(&terms)?;
        if !p.lies_in(self.complex.complex()) {
            return Err(Error::InvalidInput("alt form support is not a simplex".into()));
        }
        Ok(p)
    }

    pub fn d1_metric<W: Weight>(&self, a: &AltPoint<W>, b: &AltPoint<W>) -> Result<W> {
        Ok(l1_distance(&self.from_alt(a)?, &self.from_alt(b)?))
    }

    /// Compares `d¹(a, b)` with `Σ λ_x d(η_x, θ_x) + Σ |λ_x − μ_x|`.
    pub fn bound_check<W: Weight>(&self, a: &AltPoint<W>, b: &AltPoint<W>) -> Result<BoundCheck<W>> {
        let lhs = self.d1_metric(a, b)?;
        let rhs = a.d1_bound(b);
        let holds = lhs <= rhs || (lhs.clone() - rhs.clone()).to_float() <= 1e-9 * (1.0 + rhs.to_float());
        Ok(BoundCheck { lhs, rhs, holds })
    }
}

/// The pairs `(λ_x, η_x)` of a point, keyed by base vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct AltPoint<W> {
    pub parts: BTreeMap<u32, (W, RealPoint<W>)>,
}

impl<W: Weight> AltPoint<W> {
    pub fn lambda(&self, x: u32) -> W {
        self.parts.get(&x).map_or_else(W::zero, |(l, _)| l.clone())
    }

    /// A fiber missing on one side contributes nothing to the first sum.
    pub fn d1_bound(&self, other: &AltPoint<W>) -> W {
        let mut keys: Vec<u32> = self.parts.keys().chain(other.parts.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        let mut total = W::zero();
        for x in keys {
            let (l, m) = (self.lambda(x), other.lambda(x));
            if let (Some((_, eta)), Some((_, theta))) = (self.parts.get(&x), other.parts.get(&x)) {
                total = total + l.clone() * l1_distance(eta, theta);
            }
            total = total + (l - m).abs();
        }
        total
    }
}

#[derive(Clone, Debug)]
pub struct BoundCheck<W> {
    pub lhs: W,
    pub rhs: W,
    pub holds: bool,
}

/// A vertex map between complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub vertex_map: Vec<u32>,
}

impl SimplicialMap {
    pub fn apply(&self, s: &[u32]) -> Simplex {
        let mut out: Simplex = s.iter().map(|&v| self.vertex_map[v as usize]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_simplicial(&self, src: &SimplicialComplex, dst: &SimplicialComplex) -> bool {
        self.vertex_map.len() == src.vertex_count()
            && src.simplices().iter().all(|s| dst.contains(&self.apply(s)))
    }

    /// `f(g·v) = g·f(v)` for all generators.
    pub fn is_equivariant(&self, src: &GComplex, dst: &GComplex) -> bool {
        src.gen_action().iter().zip(dst.gen_action()).all(|(p, q)| {
            (0..self.vertex_map.len() as u32)
                .all(|v| self.vertex_map[p.apply(v) as usize] == q.apply(self.vertex_map[v as usize]))
        })
    }
}

/// The map `X[R] → X[R']` induced by per-orbit fiber maps `τ_i`, given on the
/// representative fibers and required to be equivariant for the stabilizer.
pub fn induced_map(
    data: &ResolutionData,
    data2: &ResolutionData,
    resolved: &ResolvedComplex,
    resolved2: &ResolvedComplex,
    tau: &[Vec<u32>],
) -> Result<SimplicialMap> {
    if !same_group(data.base.group(), data2.base.group())
        || data.base.complex() != data2.base.complex()
        || data.orbits.len() != tau.len()
        || data2.orbits.len() != tau.len()
    {
        return Err(Error::InvalidInput("induced map needs matching bases and one map per orbit".into()));
    }
    for (i, ((o, o2), t)) in data.orbits.iter().zip(&data2.orbits).zip(tau).enumerate() {
        if o.rep != o2.rep || o.transport != o2.transport {
            return Err(Error::InvalidInput(format!("orbit {i} differs between the two data sets")));
        }
        let m = SimplicialMap { vertex_map: t.clone() };
        if !m.is_simplicial(o.fiber.complex(), o2.fiber.complex()) {
            return Err(Error::InvalidInput(format!("fiber map {i} is not simplicial")));
        }
        let fg = o.fiber.group();
        for h in 0..fg.order() {
            let h2 = o2.fiber.group().index_of(fg.element(h)).expect("same stabilizer");
            for e in 0..t.len() as u32 {
                if t[o.fiber.act_vertex(h, e) as usize] != o2.fiber.act_vertex(h2, t[e as usize]) {
                    return Err(Error::InvalidInput(format!("fiber map {i} does not commute with transport")));
                }
            }
        }
    }
    let vertex_map = (0..resolved.fiber_of.len())
        .map(|y| {
            let x = resolved.fiber_of[y];
            let t = &tau[data.orbit_of[x as usize]];
            resolved2.offset[x as usize] + t[resolved.local[y] as usize]
        })
        .collect();
    Ok(SimplicialMap { vertex_map })
}

/// Supplies fixed-point free complexes for stabilizers outside the Dress family.
pub trait Provider {
    fn provide(&self, group: &Arc<Group>) -> Option<GComplex>;
}

impl<F: Fn(&Arc<Group>) -> Option<GComplex>> Provider for F {
    fn provide(&self, group: &Arc<Group>) -> Option<GComplex> {
        self(group)
    }
}

/// For a transitive permutation group of degree `m`: the subdivided boundary
/// of `Δ^{m-1}` with the group permuting the corners. Fixed-point free because
/// no proper nonempty subset of corners is invariant.
pub fn corner_sphere(group: &Arc<Group>) -> Option<GComplex> {
    let m = group.degree();
    if m < 2 || group.generators().is_empty() {
        return None;
    }
    let x = GComplex::new(group.clone(), SimplicialComplex::simplex_boundary(m - 1), group.generators().to_vec()).ok()?;
    let sd = x.barycentric_subdivision().ok()?;
    sd.is_fixed_point_free().then_some(sd)
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionReport {
    pub steps: usize,
    pub dimension: i64,
    pub depth: usize,
    pub bound: String,
    pub within_bound: bool,
    pub obligations: Vec<Obligation>,
}

fn dress_verdict(h: &Group) -> DressVerdict {
    let lattice = SubgroupLattice::best_effort(h, DEFAULT_ORDER_CAP);
    is_dress(h, &lattice)
}

/// Resolves vertices with non-Dress stabilizers by provider complexes until
/// every remaining stabilizer is Dress or was declined.
pub fn recursive_resolution(x: &GComplex, provider: &dyn Provider) -> Result<(GComplex, RecursionReport)> {
    let g = x.group().clone();
    let mut current = x.clone();
    let mut obligations = Vec::new();
    let mut declined: HashSet<Vec<usize>> = HashSet::new();
    let mut steps = 0;
    loop {
        let mut fibers = Vec::new();
        let mut changed = false;
        for orbit in current.vertex_orbits() {
            let rep = orbit[0];
            let stab = current.vertex_stabilizer(rep);
            let sg = Arc::new(g.subgroup_as_group(&stab));
            let point = || GComplex::trivial_action(sg.clone(), SimplicialComplex::simplex(0));
            if declined.contains(stab.elements()) || dress_verdict(&sg).is_dress() == Some(true) {
                fibers.push((rep, point()));
                continue;
            }
            match provider.provide(&sg) {
                None => {
                    declined.insert(stab.elements().to_vec());
                    obligations.push(Obligation::new(
                        ObligationKind::Declined,
                        format!("no complex supplied for a stabilizer of order {} at vertex {rep}", stab.order()),
                    ));
                    fibers.push((rep, point()));
                }
                Some(c) => {
                    if !same_group(c.group(), &sg) {
                        return Err(Error::InvalidComplex("provider complex is over the wrong group".into()));
                    }
                    if let Err(v) = c.validate() {
                        return Err(Error::InvalidComplex(format!("provider complex: {v}")));
                    }
                    if !c.is_fixed_point_free() {
                        return Err(Error::InvalidComplex("provider complex has fixed points".into()));
                    }
                    let h = reduced_homology(c.complex(), Coefficients::Integers)?;
                    if !h.vanishes() {
                        obligations.push(Obligation::new(
                            ObligationKind::Contractibility,
                            format!(
                                "supplied complex for a stabilizer of order {} has nonvanishing reduced homology",
                                stab.order()
                            ),
                        ));
                    }
                    fibers.push((rep, c));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        let data = ResolutionData::new(current.clone(), fibers)?;
        current = resolve(&data)?.complex;
        steps += 1;
    }
    let lattice = SubgroupLattice::new(&g, DEFAULT_ORDER_CAP)?;
    let d = depth(&g, &lattice)?.depth;
    let bound: BigUint = cor27_bound(d as u64);
    let dimension = current.dimension();
    let within_bound = BigUint::from(dimension.max(0) as u64) <= bound;
    let report = RecursionReport { steps, dimension, depth: d, bound: bound.to_string(), within_bound, obligations };
    Ok((current, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcomplex::{homology, ExactPoint};
    use crate::group::{alternating, cyclic, symmetric};
    use num_rational::BigRational;

    fn trivial() -> Arc<Group> {
        Arc::new(Group::trivial())
    }

    fn edge_over_edge() -> (ResolutionData, ResolvedComplex) {
        let base = GComplex::trivial_action(trivial(), SimplicialComplex::simplex(1));
        let data = ResolutionData::uniform(base, |h| GComplex::trivial_action(h.clone(), SimplicialComplex::simplex(1))).unwrap();
        let r = resolve(&data).unwrap();
        (data, r)
    }

    #[test]
    fn edge_over_edge_is_tetrahedron() {
        let (data, r) = edge_over_edge();
        assert_eq!(*r.complex.complex(), SimplicialComplex::simplex(3));
        assert_eq!(r.complex.dimension(), 3);
        assert_eq!(r.dimension_bound(), 3);
        r.check_partition(&data).unwrap();
    }

    #[test]
    fn point_fibers_give_base() {
        let g = Arc::new(cyclic(3));
        let rot = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let base = GComplex::new(g, SimplicialComplex::simplex_boundary(2), vec![rot]).unwrap();
        let data = ResolutionData::points(base.clone()).unwrap();
        let r = resolve(&data).unwrap();
        assert_eq!(r.complex.complex(), base.complex());
        assert_eq!(r.complex.gen_action(), base.gen_action());
    }

    #[test]
    fn circle_with_edge_fibers() {
        let g = Arc::new(cyclic(3));
        let rot = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let base = GComplex::new(g, SimplicialComplex::simplex_boundary(2), vec![rot]).unwrap();
        let data = ResolutionData::uniform(base.clone(), |h| GComplex::trivial_action(h.clone(), SimplicialComplex::simplex(1))).unwrap();
        let r = resolve(&data).unwrap();
        assert!(r.complex.validate().is_ok());
        r.check_partition(&data).unwrap();
        r.check_stabilizers(&data).unwrap();
        let a = homology(r.complex.complex(), Coefficients::Integers).unwrap().trimmed();
        let b = homology(base.complex(), Coefficients::Integers).unwrap().trimmed();
        assert_eq!(a, b);
        let proj = r.canonical_projection();
        assert!(proj.is_simplicial(r.complex.complex(), base.complex()));
        assert!(proj.is_equivariant(&r.complex, &base));
    }

    #[test]
    fn nontrivial_stabilizer_fibers() {
        // S3 on sd(Δ²); fibers over the three corners carry the C2 swap on Δ¹ subdivided.
        let g = Arc::new(symmetric(3));
        let tri = GComplex::new(g.clone(), SimplicialComplex::simplex(2), g.generators().to_vec()).unwrap();
        let base = tri.barycentric_subdivision().unwrap();
        let data = ResolutionData::uniform(base.clone(), |h| {
            // Odd permutations swap the two ends.
            let gens: Vec<Perm> = h
                .generators()
                .iter()
                .map(|p| {
                    let odd = p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
                    if odd { Perm::from_images(vec![1, 0]).unwrap() } else { Perm::identity(2) }
                })
                .collect();
            let c = GComplex::new(h.clone(), SimplicialComplex::simplex(1), gens).unwrap();
            c.barycentric_subdivision().unwrap()
        })
        .unwrap();
        let r = resolve(&data).unwrap();
        assert!(r.complex.validate().is_ok());
        r.check_partition(&data).unwrap();
        r.check_stabilizers(&data).unwrap();
        assert!(r.complex.dimension() <= r.dimension_bound());
        let h = reduced_homology(r.complex.complex(), Coefficients::Integers).unwrap();
        assert!(h.vanishes());
    }

    #[test]
    fn alt_round_trip_and_bound() {
        let (_, r) = edge_over_edge();
        let p = ExactPoint::barycenter(&[0, 1, 2, 3]);
        let a = r.to_alt(&p).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(a.lambda(0), half);
        assert_eq!(a.parts[&1].1, ExactPoint::barycenter(&[2, 3]));
        assert_eq!(r.from_alt(&a).unwrap(), p);
        let v = ExactPoint::vertex(2);
        let av = r.to_alt(&v).unwrap();
        assert_eq!(av.parts.len(), 1);
        let c = r.bound_check(&a, &av).unwrap();
        assert!(c.holds);
        assert_eq!(r.d1_metric(&a, &a).unwrap(), BigRational::from_integer(0.into()));
    }

    #[test]
    fn shared_fiber_is_tight() {
        let (_, r) = edge_over_edge();
        let a = r.to_alt(&ExactPoint::vertex(0)).unwrap();
        let b = r.to_alt(&ExactPoint::barycenter(&[0, 1])).unwrap();
        let c = r.bound_check(&a, &b).unwrap();
        assert_eq!(c.lhs, c.rhs);
    }

    #[test]
    fn induced_collapse_to_points() {
        let (data, r) = edge_over_edge();
        let pts = ResolutionData::points(data.base().clone()).unwrap();
        let rp = resolve(&pts).unwrap();
        let m = induced_map(&data, &pts, &r, &rp, &[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(m.is_simplicial(r.complex.complex(), rp.complex.complex()));
        assert!(m.is_equivariant(&r.complex, &rp.complex));
        let flipped = induced_map(&data, &data, &r, &r, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(flipped.is_simplicial(r.complex.complex(), r.complex.complex()));
    }

    #[test]
    fn invalid_data_rejected() {
        let g = Arc::new(cyclic(2));
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        let base = GComplex::new(g.clone(), SimplicialComplex::new(2, vec![vec![0], vec![1]]), vec![swap]).unwrap();
        // fiber over the wrong group
        let fiber = GComplex::trivial_action(g.clone(), SimplicialComplex::simplex(0));
        assert!(ResolutionData::new(base.clone(), vec![(0, fiber)]).is_err());
        // missing orbit
        assert!(ResolutionData::new(base, vec![]).is_err());
    }

    #[test]
    fn recursion_trivial_cases() {
        let g = Arc::new(symmetric(3));
        let x = GComplex::trivial_action(g.clone(), SimplicialComplex::simplex(0));
        let decline = |_: &Arc<Group>| None;
        let (y, rep) = recursive_resolution(&x, &decline).unwrap();
        assert_eq!(rep.steps, 0);
        assert!(rep.obligations.is_empty());
        assert_eq!(y.complex(), x.complex());
        let a5 = Arc::new(alternating(5));
        let x = GComplex::trivial_action(a5, SimplicialComplex::simplex(0));
        let (_, rep) = recursive_resolution(&x, &decline).unwrap();
        assert_eq!(rep.obligations.len(), 1);
        assert_eq!(rep.obligations[0].kind, ObligationKind::Declined);
    }

    #[test]
    fn recursion_a5_point() {
        let a5 = Arc::new(alternating(5));
        let x = GComplex::trivial_action(a5, SimplicialComplex::simplex(0));
        let (y, rep) = recursive_resolution(&x, &corner_sphere).unwrap();
        assert_eq!(rep.steps, 1);
        assert!(y.is_fixed_point_free());
        assert!(y.validate().is_ok());
        for v in 0..y.complex().vertex_count() as u32 {
            let s = y.group().subgroup_as_group(&y.vertex_stabilizer(v));
            assert_eq!(dress_verdict(&s).is_dress(), Some(true));
        }
        assert!(rep.within_bound);
        assert!(rep.obligations.iter().any(|o| o.kind == ObligationKind::Contractibility));
    }
}
