//! Witnesses for the two reducibility conditions on finite groups, their
//! checkers, and the assembly turning bounded-depth Dress data into a
//! transfer-reducibility witness through a resolution.
//!
//! Maps are vertex tables of barycentric points, extended affinely. Maps out
//! of `G` are only known on a finite sample of elements.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::classify::{depth, is_dress, DressVerdict};
use crate::error::{Error, Result};
use crate::gcomplex::{l1_distance, reduced_homology, Coefficients, GComplex, RealPoint, SimplicialComplex, Weight};
use crate::group::{Group, GroupHom, Subgroup, SubgroupLattice, DEFAULT_ORDER_CAP};
use crate::perm::Perm;
use crate::resolution::{resolve, AltPoint, ResolutionData, ResolvedComplex};

pub const DENSE_SAMPLES: usize = 10_000;

/// A family of subgroups of `G`, closed under conjugation and subgroups.
#[derive(Clone, Debug)]
pub enum Family {
    All,
    /// Everything subconjugate to one of the listed subgroups.
    Generated(Vec<Subgroup>),
}

impl Family {
    pub fn contains(&self, g: &Group, h: &Subgroup) -> bool {
        match self {
            Family::All => true,
            Family::Generated(members) => members.iter().any(|m| {
                m.order() >= h.order()
                    && (0..g.order()).any(|x| h.is_subgroup_of(&g.conjugate_subgroup(x, m)))
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
    /// Offending distance, rendered exactly in rational mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<String>,
}

impl Failure {
    fn new(check: &str, detail: impl Into<String>) -> Self {
        Failure { check: check.into(), detail: detail.into(), distance: None }
    }

    fn at<W: Weight>(check: &str, detail: impl Into<String>, d: &W) -> Self {
        Failure { check: check.into(), detail: detail.into(), distance: Some(d.to_string()) }
    }
}

fn within<W: Weight>(d: &W, eps: &W) -> bool {
    *d <= eps.clone() + W::tolerance()
}

/// Re-expresses a subgroup of `h` (a group in its own right whose elements are
/// elements of `g`) as a subgroup of `g`.
fn lift(g: &Group, h: &Group, s: &Subgroup) -> Result<Subgroup> {
    let elems = s
        .elements()
        .iter()
        .map(|&x| g.index_of(h.element(x)).ok_or_else(|| Error::InvalidInput("element outside the group".into())))
        .collect::<Result<Vec<_>>>()?;
    g.subgroup_from_elements(&elems)
}

/// Same underlying element set.
fn same_elements(g: &Group, s: &Subgroup, h: &Group) -> bool {
    h.order() == s.order() && s.elements().iter().all(|&x| h.index_of(g.element(x)).is_some())
}

fn group_is_dress(g: &Group) -> Result<bool> {
    let lattice = SubgroupLattice::new(g, DEFAULT_ORDER_CAP)?;
    match is_dress(g, &lattice) {
        DressVerdict::Dress(_) => Ok(true),
        DressVerdict::NotDress => Ok(false),
        DressVerdict::Unknown => Err(Error::LatticeIncomplete),
    }
}

/// Stabilizer failures of a complex over a subgroup group `h` of `g`.
fn stabilizer_failures(g: &Group, family: &Family, e: &GComplex, label: &str) -> Result<Vec<Failure>> {
    let mut out = Vec::new();
    let mut seen: HashMap<Vec<usize>, bool> = HashMap::new();
    for s in e.complex().simplices() {
        let stab = lift(g, e.group(), &e.simplex_stabilizer(s))?;
        let ok = *seen.entry(stab.elements().to_vec()).or_insert_with(|| family.contains(g, &stab));
        if !ok {
            out.push(Failure::new("family", format!("{label}: stabilizer of {s:?} (order {}) is outside the family", stab.order())));
        }
    }
    Ok(out)
}

fn symmetric_generating(g: &Group, s: &[usize]) -> Vec<Failure> {
    let mut out = Vec::new();
    if let Some(&x) = s.iter().find(|&&x| x >= g.order()) {
        return vec![Failure::new("generators", format!("element {x} out of range"))];
    }
    for &x in s {
        if !s.contains(&g.inv(x)) {
            out.push(Failure::new("symmetric", format!("inverse of {x} missing from S")));
        }
    }
    if g.generate(s).order() != g.order() {
        out.push(Failure::new("generators", "S does not generate G"));
    }
    out
}

/// Data over one Dress subgroup `D ≤ F`.
#[derive(Clone, Debug)]
pub struct DfhEntry<W> {
    /// Subgroup of `F`.
    pub d: Subgroup,
    /// Complex over `π⁻¹(D)`, realized as a group.
    pub complex: GComplex,
    /// Sampled map: element of `G` to a point of the complex.
    pub map: BTreeMap<usize, RealPoint<W>>,
}

#[derive(Clone, Debug)]
pub struct DfhWitness<W> {
    pub pi: GroupHom,
    pub s: Vec<usize>,
    pub n: usize,
    pub b: usize,
    pub epsilon: W,
    pub family: Family,
    pub entries: Vec<DfhEntry<W>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DfhReport {
    pub passed: bool,
    pub depth: Option<usize>,
    /// Largest sampled `S`-neighbor distance per entry.
    pub max_distance: Vec<String>,
    pub failures: Vec<Failure>,
}

pub fn check_dfh<W: Weight>(w: &DfhWitness<W>) -> Result<DfhReport> {
    let g = w.pi.source().clone();
    let f = w.pi.target().clone();
    let mut failures = symmetric_generating(&g, &w.s);
    if !w.pi.is_surjective() {
        failures.push(Failure::new("surjective", "π is not onto F"));
    }
    let f_lattice = SubgroupLattice::new(&f, DEFAULT_ORDER_CAP)?;
    let d_f = depth(&f, &f_lattice)?.depth;
    if d_f > w.b {
        failures.push(Failure::new("depth", format!("d(F) = {d_f} exceeds B = {}", w.b)));
    }
    for c in 0..f_lattice.classes().len() {
        let rep = f_lattice.representative(c);
        if group_is_dress(&f.subgroup_as_group(rep))?
            && !w.entries.iter().any(|e| {
                e.d.order() == rep.order() && (0..f.order()).any(|x| f.conjugate_subgroup(x, rep) == e.d)
            })
        {
            failures.push(Failure::new("coverage", format!("no entry for Dress class {c} (order {})", rep.order())));
        }
    }
    let mut max_distance = Vec::new();
    for (i, e) in w.entries.iter().enumerate() {
        let label = format!("entry {i}");
        if !group_is_dress(&f.subgroup_as_group(&e.d))? {
            failures.push(Failure::new("dress", format!("{label}: D is not a Dress group")));
        }
        let dbar = w.pi.preimage(&e.d);
        let h = e.complex.group();
        if !same_elements(&g, &dbar, h) {
            failures.push(Failure::new("preimage", format!("{label}: complex is not over π⁻¹(D)")));
            max_distance.push("-".into());
            continue;
        }
        if let Err(v) = e.complex.validate() {
            failures.push(Failure::new("complex", format!("{label}: {v}")));
            max_distance.push("-".into());
            continue;
        }
        if e.complex.dimension() > w.n as i64 {
            failures.push(Failure::new("dimension", format!("{label}: dim {} exceeds N = {}", e.complex.dimension(), w.n)));
        }
        failures.extend(stabilizer_failures(&g, &w.family, &e.complex, &label)?);
        for (&x, p) in &e.map {
            if x >= g.order() || !p.lies_in(e.complex.complex()) {
                failures.push(Failure::new("map", format!("{label}: value at {x} is not a point of E_D")));
            }
        }
        for &d in dbar.elements() {
            let dh = h.index_of(g.element(d)).expect("same elements");
            let act = e.complex.action(dh);
            for (&x, p) in &e.map {
                if let Some(q) = e.map.get(&g.mul(d, x)) {
                    let dist = l1_distance(&p.push_forward(act), q);
                    if !within(&dist, &W::zero()) {
                        failures.push(Failure::at("equivariance", format!("{label}: f({d}·{x}) ≠ {d}·f({x})"), &dist));
                    }
                }
            }
        }
        let mut worst = W::zero();
        for (&x, p) in &e.map {
            for &s in &w.s {
                let y = g.mul(x, s);
                if let Some(q) = e.map.get(&y) {
                    let dist = l1_distance(p, q);
                    if !within(&dist, &w.epsilon) {
                        failures.push(Failure::at("contraction", format!("{label}: pair ({x}, {y})"), &dist));
                    }
                    if dist > worst {
                        worst = dist;
                    }
                }
            }
        }
        max_distance.push(worst.to_string());
    }
    Ok(DfhReport { passed: failures.is_empty(), depth: Some(d_f), max_distance, failures })
}

#[derive(Clone, Debug)]
pub struct TrWitness<W> {
    pub nu: usize,
    pub x: GComplex,
    /// Vertex whose cone over the rest is all of `X`.
    pub cone_apex: Option<u32>,
    pub e: GComplex,
    pub family: Family,
    pub s: Vec<usize>,
    pub epsilon: W,
    /// Image of each vertex of `X`.
    pub map: Vec<RealPoint<W>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CtrReport {
    pub passed: bool,
    pub max_defect: String,
    #[serde(serialize_with = "float_string")]
    pub max_defect_float: f64,
    #[serde(serialize_with = "float_string")]
    pub dense_max: f64,
    pub samples: usize,
    pub failures: Vec<Failure>,
}

fn float_string<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:?}"))
}

fn is_cone_on(x: &SimplicialComplex, apex: u32) -> bool {
    x.simplices().iter().all(|s| {
        let mut t = s.clone();
        if !t.contains(&apex) {
            t.push(apex);
            t.sort_unstable();
        }
        x.contains(&t)
    })
}

fn dense(p: &RealPoint<impl Weight>) -> BTreeMap<u32, f64> {
    p.weights().iter().map(|(&v, w)| (v, w.to_float())).collect()
}

fn dense_l1(a: &BTreeMap<u32, f64>, b: &BTreeMap<u32, f64>) -> f64 {
    let mut total: f64 = a.iter().map(|(v, x)| (x - b.get(v).copied().unwrap_or(0.0)).abs()).sum();
    total += b.iter().filter(|(v, _)| !a.contains_key(v)).map(|(_, y)| y.abs()).sum::<f64>();
    total
}

fn accumulate(acc: &mut BTreeMap<u32, f64>, t: f64, p: &BTreeMap<u32, f64>) {
    for (&v, &w) in p {
        *acc.entry(v).or_insert(0.0) += t * w;
    }
}

/// Vertex defects `d(s·f(x), f(s·x))`, then a dense cross-check on random
/// interior points with `samples` draws seeded by `seed`.
pub fn check_ctr<W: Weight>(w: &TrWitness<W>, samples: usize, seed: u64) -> Result<CtrReport> {
    let g = w.x.group().clone();
    let mut failures = Vec::new();
    if !crate::gcomplex::same_group(&g, w.e.group()) {
        return Err(Error::InvalidInput("X and E are over different groups".into()));
    }
    failures.extend(symmetric_generating(&g, &w.s));
    if let Err(v) = w.x.validate() {
        failures.push(Failure::new("complex", format!("X: {v}")));
    }
    if let Err(v) = w.e.validate() {
        failures.push(Failure::new("complex", format!("E: {v}")));
    }
    if !failures.is_empty() {
        return Ok(CtrReport { passed: false, max_defect: "-".into(), max_defect_float: f64::NAN, dense_max: f64::NAN, samples: 0, failures });
    }
    if !reduced_homology(w.x.complex(), Coefficients::Integers)?.vanishes() {
        failures.push(Failure::new("acyclic", "X has nonvanishing reduced homology"));
    }
    if let Some(a) = w.cone_apex {
        if a as usize >= w.x.complex().vertex_count() || !is_cone_on(w.x.complex(), a) {
            failures.push(Failure::new("cone", format!("X is not a cone with apex {a}")));
        }
    }
    if w.e.dimension() > w.nu as i64 {
        failures.push(Failure::new("dimension", format!("dim E = {} exceeds ν = {}", w.e.dimension(), w.nu)));
    }
    failures.extend(stabilizer_failures(&g, &w.family, &w.e, "E")?);
    let nx = w.x.complex().vertex_count();
    if w.map.len() != nx {
        failures.push(Failure::new("map", format!("{} images for {nx} vertices", w.map.len())));
        return Ok(CtrReport { passed: false, max_defect: "-".into(), max_defect_float: f64::NAN, dense_max: f64::NAN, samples: 0, failures });
    }
    for (v, p) in w.map.iter().enumerate() {
        if !p.lies_in(w.e.complex()) {
            failures.push(Failure::new("map", format!("image of vertex {v} is not a point of E")));
        }
    }
    let mut worst = W::zero();
    for &s in &w.s {
        let act = w.e.action(s);
        for x in 0..nx as u32 {
            let d = l1_distance(&w.map[x as usize].push_forward(act), &w.map[w.x.act_vertex(s, x) as usize]);
            if !within(&d, &w.epsilon) {
                failures.push(Failure::at("defect", format!("vertex {x}, generator {s}"), &d));
            }
            if d > worst {
                worst = d;
            }
        }
    }
    let dense_max = sampled_defect(w, samples, seed);
    if dense_max > worst.to_float() + 1e-9 {
        failures.push(Failure::new("convexity", format!("sampled defect {dense_max} exceeds vertex maximum {worst}")));
    }
    Ok(CtrReport {
        passed: failures.is_empty(),
        max_defect: worst.to_string(),
        max_defect_float: worst.to_float(),
        dense_max,
        samples,
        failures,
    })
}

fn sampled_defect<W: Weight>(w: &TrWitness<W>, samples: usize, seed: u64) -> f64 {
    let simplices = w.x.complex().simplices();
    if simplices.is_empty() || w.s.is_empty() {
        return 0.0;
    }
    let images: Vec<BTreeMap<u32, f64>> = w.map.iter().map(dense).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut best = 0.0f64;
    for _ in 0..samples {
        let sigma = &simplices[rng.gen_range(0..simplices.len())];
        let raw: Vec<f64> = sigma.iter().map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let total: f64 = raw.iter().sum();
        for &s in &w.s {
            let act = w.e.action(s);
            let mut lhs = BTreeMap::new();
            let mut rhs = BTreeMap::new();
            for (&v, r) in sigma.iter().zip(&raw) {
                let t = r / total;
                let moved: BTreeMap<u32, f64> = images[v as usize].iter().map(|(&u, &x)| (act.apply(u), x)).collect();
                accumulate(&mut lhs, t, &moved);
                accumulate(&mut rhs, t, &images[w.x.act_vertex(s, v) as usize]);
            }
            best = best.max(dense_l1(&lhs, &rhs));
        }
    }
    best
}

/// Complex and map over one vertex orbit of `X_F`.
#[derive(Clone, Debug)]
pub struct AssemblyFiber<W> {
    /// Orbit representative in `X_F`.
    pub rep: u32,
    /// Complex over `D̄ = π⁻¹(F_rep)`, realized as a group.
    pub complex: GComplex,
    /// `f'(h)` for every element `h` of `G`.
    pub map: Vec<RealPoint<W>>,
}

#[derive(Clone, Debug)]
pub struct Assembly<W> {
    pub witness: TrWitness<W>,
    pub resolved: ResolvedComplex,
    pub beta: i64,
    pub n: i64,
    /// Largest `d(f'(h), f'(hs))` over all fibers, `h ∈ G`, `s ∈ S`.
    pub input_defect: W,
    /// Pairs checked against the triangle-inequality bound, and failures.
    pub bound_checks: usize,
    pub bound_violations: usize,
}

/// `F`-stabilizers of `X_F` must be Dress groups; `X_F` must be acyclic.
fn check_base(x_f: &GComplex) -> Result<()> {
    let f = x_f.group();
    if !reduced_homology(x_f.complex(), Coefficients::Integers)?.vanishes() {
        return Err(Error::Precondition("X_F has nonvanishing reduced homology".into()));
    }
    let mut seen: HashMap<Vec<usize>, bool> = HashMap::new();
    for s in x_f.complex().simplices() {
        let stab = x_f.simplex_stabilizer(s);
        let key = stab.elements().to_vec();
        let ok = match seen.get(&key) {
            Some(&b) => b,
            None => {
                let b = group_is_dress(&f.subgroup_as_group(&stab))?;
                seen.insert(key, b);
                b
            }
        };
        if !ok {
            return Err(Error::Precondition(format!("stabilizer of {s:?} is not a Dress group")));
        }
    }
    Ok(())
}

/// `X_F` viewed as a `G`-complex through `π`.
pub fn pull_back(pi: &GroupHom, x_f: &GComplex) -> Result<GComplex> {
    if !crate::gcomplex::same_group(pi.target(), x_f.group()) {
        return Err(Error::InvalidInput("X_F is not over the target of π".into()));
    }
    let g = pi.source().clone();
    let actions: Vec<Perm> = g.generator_indices().iter().map(|&s| x_f.action(pi.apply(s)).clone()).collect();
    GComplex::new(g, x_f.complex().clone(), actions)
}

pub fn assemble<W: Weight>(
    pi: &GroupHom,
    x_f: &GComplex,
    fibers: &[AssemblyFiber<W>],
    s: &[usize],
    epsilon: W,
    family: Family,
) -> Result<Assembly<W>> {
    check_base(x_f)?;
    let x = pull_back(pi, x_f)?;
    let g = x.group().clone();
    let orbits = x.vertex_orbits();
    let mut chosen: Vec<Option<usize>> = vec![None; orbits.len()];
    for (i, fib) in fibers.iter().enumerate() {
        let o = orbits
            .iter()
            .position(|orb| orb.contains(&fib.rep))
            .ok_or_else(|| Error::Precondition(format!("representative {} is not a vertex", fib.rep)))?;
        if chosen[o].replace(i).is_some() {
            return Err(Error::Precondition(format!("two fibers over the orbit of {}", fib.rep)));
        }
    }
    if let Some(o) = chosen.iter().position(Option::is_none) {
        return Err(Error::Precondition(format!("no fiber over the orbit of {}", orbits[o][0])));
    }
    let mut input_defect = W::zero();
    for fib in fibers {
        let dbar = x.vertex_stabilizer(fib.rep);
        let h = fib.complex.group();
        if !same_elements(&g, &dbar, h) {
            return Err(Error::Precondition(format!("fiber over {} is not over its stabilizer", fib.rep)));
        }
        if fib.map.len() != g.order() {
            return Err(Error::Precondition(format!("map over {} is not defined on all of G", fib.rep)));
        }
        for (hx, p) in fib.map.iter().enumerate() {
            if !p.lies_in(fib.complex.complex()) {
                return Err(Error::Precondition(format!("f'({hx}) over {} leaves its complex", fib.rep)));
            }
            for &d in dbar.elements() {
                let act = fib.complex.action(h.index_of(g.element(d)).expect("same elements"));
                if !within(&l1_distance(&p.push_forward(act), &fib.map[g.mul(d, hx)]), &W::zero()) {
                    return Err(Error::Precondition(format!("f' over {} is not equivariant at {hx}", fib.rep)));
                }
            }
            for &t in s {
                let d = l1_distance(p, &fib.map[g.mul(hx, t)]);
                if d > input_defect {
                    input_defect = d;
                }
            }
        }
    }
    let data = ResolutionData::new(x.clone(), fibers.iter().map(|f| (f.rep, f.complex.clone())).collect())?;
    let resolved = resolve(&data)?;
    let beta = x.dimension();
    let n = resolved.fiber_dim;
    let nu = beta * n + beta + n;
    let nx = x.complex().vertex_count() as u32;
    let alt: Vec<AltPoint<W>> = (0..nx)
        .map(|v| {
            let o = data.orbit_of(v);
            let fib = fibers.iter().find(|f| f.rep == o.rep).expect("fiber per orbit");
            let local = &fib.map[g.inv(o.transport[&v])];
            let off = resolved.offset[v as usize];
            let eta = local.map_vertices(|e| e + off);
            AltPoint { parts: BTreeMap::from([(v, (W::one(), eta))]) }
        })
        .collect();
    let map = alt.iter().map(|a| resolved.from_alt(a)).collect::<Result<Vec<_>>>()?;
    let mut bound_checks = 0;
    let mut bound_violations = 0;
    for &t in s {
        let act = resolved.complex.action(t);
        for v in 0..nx {
            let moved = resolved.to_alt(&map[v as usize].push_forward(act))?;
            let target = &alt[x.act_vertex(t, v) as usize];
            bound_checks += 1;
            if !resolved.bound_check(&moved, target)?.holds {
                bound_violations += 1;
            }
        }
    }
    let witness = TrWitness {
        nu: nu.max(0) as usize,
        x,
        cone_apex: None,
        e: resolved.complex.clone(),
        family,
        s: s.to_vec(),
        epsilon,
        map,
    };
    Ok(Assembly { witness, resolved, beta, n, input_defect, bound_checks, bound_violations })
}

/// The cone on the elements of `h`: one edge from each element to a fixed
/// apex (the last vertex), acted on by left multiplication.
pub fn regular_star(h: Arc<Group>) -> GComplex {
    let n = h.order();
    let actions = h
        .generator_indices()
        .iter()
        .map(|&s| {
            let mut images: Vec<u32> = (0..n).map(|x| h.mul(s, x) as u32).collect();
            images.push(n as u32);
            Perm::from_images(images).expect("left multiplication")
        })
        .collect();
    let edges: Vec<Vec<u32>> = (0..n as u32).map(|x| vec![x, n as u32]).collect();
    GComplex::new(h, SimplicialComplex::from_facets(n + 1, &edges), actions).expect("regular action")
}

/// `f(d·r) = (1 − λ)·d + λ·apex` on the star over `D̄`, with `r` the least
/// element of its coset `D̄r`. Equivariant by construction.
pub fn coset_map<W: Weight>(g: &Group, dbar: &Subgroup, e: &GComplex, lambda: &W) -> Vec<RealPoint<W>> {
    let h = e.group();
    let apex = RealPoint::<W>::vertex(h.order() as u32);
    (0..g.order())
        .map(|x| {
            let r = dbar.elements().iter().map(|&d| g.mul(d, x)).min().expect("nonempty coset");
            let d = g.mul(x, g.inv(r));
            let vertex = RealPoint::vertex(h.index_of(g.element(d)).expect("d lies in D̄") as u32);
            if lambda.is_zero() {
                vertex
            } else if lambda.is_one() {
                apex.clone()
            } else {
                RealPoint::combine(&[(W::one() - lambda.clone(), &vertex), (lambda.clone(), &apex)]).expect("convex")
            }
        })
        .collect()
}

/// Assembly inputs over `π = id`, with star fibers and coset maps.
pub fn regular_fibers<W: Weight>(x_f: &GComplex, lambda: &W) -> Vec<AssemblyFiber<W>> {
    let g = x_f.group().clone();
    x_f.vertex_orbits()
        .into_iter()
        .map(|orbit| {
            let rep = orbit[0];
            let dbar = x_f.vertex_stabilizer(rep);
            let complex = regular_star(Arc::new(g.subgroup_as_group(&dbar)));
            let map = coset_map(&g, &dbar, &complex, lambda);
            AssemblyFiber { rep, complex, map }
        })
        .collect()
}

/// Point fibers with constant maps.
pub fn point_fibers<W: Weight>(pi: &GroupHom, x_f: &GComplex) -> Result<Vec<AssemblyFiber<W>>> {
    let x = pull_back(pi, x_f)?;
    let g = x.group().clone();
    Ok(x.vertex_orbits()
        .into_iter()
        .map(|orbit| {
            let rep = orbit[0];
            let h = Arc::new(g.subgroup_as_group(&x.vertex_stabilizer(rep)));
            AssemblyFiber {
                rep,
                complex: GComplex::trivial_action(h, SimplicialComplex::simplex(0)),
                map: vec![RealPoint::vertex(0); g.order()],
            }
        })
        .collect())
}

/// `C₂` swapping the ends of a subdivided edge.
pub fn c2_edge() -> GComplex {
    let g = Arc::new(crate::group::cyclic(2));
    let edge = GComplex::new(g.clone(), SimplicialComplex::simplex(1), g.generators().to_vec()).expect("swap");
    edge.barycentric_subdivision().expect("subdivision")
}

/// `S₃` permuting the corners of a subdivided triangle.
pub fn s3_triangle() -> GComplex {
    let g = Arc::new(crate::group::symmetric(3));
    let tri = GComplex::new(g.clone(), SimplicialComplex::simplex(2), g.generators().to_vec()).expect("corners");
    tri.barycentric_subdivision().expect("subdivision")
}

/// A witness over `π = id` with an entry per Dress class of `G`, regular
/// simplex complexes and coset maps sampled on all of `G`.
pub fn dfh_fixture<W: Weight>(g: Arc<Group>, lambda: &W, epsilon: W) -> Result<DfhWitness<W>> {
    let lattice = SubgroupLattice::new(&g, DEFAULT_ORDER_CAP)?;
    let mut entries = Vec::new();
    for c in 0..lattice.classes().len() {
        let d = lattice.representative(c).clone();
        if !group_is_dress(&g.subgroup_as_group(&d))? {
            continue;
        }
        let complex = regular_star(Arc::new(g.subgroup_as_group(&d)));
        let map = coset_map(&g, &d, &complex, lambda).into_iter().enumerate().collect();
        entries.push(DfhEntry { d, complex, map });
    }
    let n = entries.iter().map(|e| e.complex.dimension().max(0) as usize).max().unwrap_or(0);
    let b = depth(&g, &lattice)?.depth;
    Ok(DfhWitness {
        pi: GroupHom::identity(g.clone()),
        s: g.symmetric_generators(),
        n,
        b,
        epsilon,
        family: Family::All,
        entries,
    })
}
