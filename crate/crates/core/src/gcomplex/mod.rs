//! Finite simplicial complexes with a simplicial group action.

mod homology;
mod point;

use std::collections::HashMap;
use std::sync::Arc;

pub use homology::{homology, reduced_homology, Coefficients, Homology, HomologyGroup};
pub use point::{l1_distance, ExactPoint, FloatPoint, RealPoint, Weight};

use crate::error::{Error, Result};
use crate::group::{action_images, Group, Subgroup};
use crate::perm::Perm;

pub type Simplex = Vec<u32>;

fn for_each_face(s: &[u32], f: &mut impl FnMut(Simplex)) {
    let k = s.len();
    for mask in 1u64..(1 << k) {
        f((0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect());
    }
}

/// Abstract simplicial complex on vertices `0..n`; simplices are sorted vertex
/// lists, stored ordered by size and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// Takes the simplex list as given (duplicates removed); face closure is
    /// checked by [`GComplex::validate`], not enforced.
    pub fn new(vertices: usize, simplices: Vec<Simplex>) -> Self {
        let mut simplices: Vec<Simplex> = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .filter(|s| !s.is_empty())
            .collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        simplices.dedup();
        let index = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        SimplicialComplex { vertices, simplices, index }
    }

    /// Closes the given facets under taking nonempty faces.
    pub fn from_facets(vertices: usize, facets: &[Simplex]) -> Self {
        let mut all: HashMap<Simplex, ()> = HashMap::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            for_each_face(&f, &mut |s| {
                all.insert(s, ());
            });
        }
        Self::new(vertices, all.into_keys().collect())
    }

    pub fn empty() -> Self {
        Self::new(0, Vec::new())
    }

    /// The full simplex `Δ^n`.
    pub fn simplex(n: usize) -> Self {
        Self::from_facets(n + 1, &[(0..=n as u32).collect()])
    }

    /// The boundary `∂Δ^n`, an `(n-1)`-sphere.
    pub fn simplex_boundary(n: usize) -> Self {
        let facets: Vec<Simplex> =
            (0..=n as u32).map(|skip| (0..=n as u32).filter(|&v| v != skip).collect()).collect();
        Self::from_facets(n + 1, &facets)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index.contains_key(s)
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Maximal simplex size minus one; `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.simplices.last().map_or(-1, |s| s.len() as i64 - 1)
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.len() == d + 1)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let dim = self.dimension();
        let mut f = vec![0; (dim + 1).max(0) as usize];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn euler_char(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    /// Vertices that occur in some simplex.
    pub fn used_vertices(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.simplices.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect();
        v.sort_unstable();
        v
    }

    /// Subcomplex of simplices whose vertices all satisfy `keep`.
    pub fn induced(&self, keep: impl Fn(u32) -> bool) -> Self {
        let simplices = self.simplices.iter().filter(|s| s.iter().all(|&v| keep(v))).cloned().collect();
        Self::new(self.vertices, simplices)
    }

    pub fn first_missing_face(&self) -> Option<(Simplex, Simplex)> {
        for s in &self.simplices {
            let mut missing = None;
            for_each_face(s, &mut |f| {
                if missing.is_none() && !self.contains(&f) {
                    missing = Some(f);
                }
            });
            if let Some(f) = missing {
                return Some((s.clone(), f));
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { simplex: Simplex },
    NotFaceClosed { simplex: Simplex, missing_face: Simplex },
    NotSimplicial { generator: usize, simplex: Simplex },
    /// `g` fixes the simplex setwise but moves one of its vertices.
    NotPointwiseFixed { element: usize, simplex: Simplex },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::VertexOutOfRange { simplex } => write!(f, "vertex out of range in {simplex:?}"),
            Violation::NotFaceClosed { simplex, missing_face } => {
                write!(f, "face {missing_face:?} of {simplex:?} is missing")
            }
            Violation::NotSimplicial { generator, simplex } => {
                write!(f, "generator {generator} maps {simplex:?} outside the complex")
            }
            Violation::NotPointwiseFixed { element, simplex } => {
                write!(f, "element {element} fixes {simplex:?} setwise but not pointwise")
            }
        }
    }
}

/// A simplicial complex with an action of a finite group, given on generators
/// and tabulated for every element.
#[derive(Clone, Debug)]
pub struct GComplex {
    group: Arc<Group>,
    complex: SimplicialComplex,
    gen_action: Vec<Perm>,
    table: Vec<Perm>,
}

pub fn same_group(a: &Group, b: &Group) -> bool {
    a.degree() == b.degree() && a.generators() == b.generators()
}

impl GComplex {
    /// Builds the complex; fails when the generator permutations do not define
    /// an action of the group on the vertex set.
    pub fn new(group: Arc<Group>, complex: SimplicialComplex, gen_action: Vec<Perm>) -> Result<Self> {
        let n = complex.vertex_count();
        if let Some(p) = gen_action.iter().find(|p| p.degree() != n) {
            return Err(Error::InvalidComplex(format!(
                "action has degree {} on {n} vertices",
                p.degree()
            )));
        }
        let table = if group.generators().is_empty() {
            vec![Perm::identity(n)]
        } else {
            action_images(&group, &gen_action)
                .map_err(|e| Error::InvalidComplex(format!("vertex action: {e}")))?
        };
        Ok(GComplex { group, complex, gen_action, table })
    }

    pub fn trivial_action(group: Arc<Group>, complex: SimplicialComplex) -> Self {
        let n = complex.vertex_count();
        let gens = vec![Perm::identity(n); group.generators().len()];
        Self::new(group, complex, gens).expect("trivial action")
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn gen_action(&self) -> &[Perm] {
        &self.gen_action
    }

    /// Vertex permutation of group element `g`.
    pub fn action(&self, g: usize) -> &Perm {
        &self.table[g]
    }

    pub fn act_vertex(&self, g: usize, v: u32) -> u32 {
        self.table[g].apply(v)
    }

    pub fn act_simplex(&self, g: usize, s: &[u32]) -> Simplex {
        let mut out: Simplex = s.iter().map(|&v| self.table[g].apply(v)).collect();
        out.sort_unstable();
        out
    }

    pub fn dimension(&self) -> i64 {
        self.complex.dimension()
    }

    pub fn euler_char(&self) -> i64 {
        self.complex.euler_char()
    }

    pub fn vertex_stabilizer(&self, v: u32) -> Subgroup {
        let elems: Vec<usize> = (0..self.group.order()).filter(|&g| self.table[g].apply(v) == v).collect();
        self.group.subgroup_from_elements(&elems).expect("stabilizer")
    }

    /// Stabilizer of a simplex (setwise, which equals pointwise after validation).
    pub fn simplex_stabilizer(&self, s: &[u32]) -> Subgroup {
        let elems: Vec<usize> =
            (0..self.group.order()).filter(|&g| s.iter().all(|&v| self.table[g].apply(v) == v)).collect();
        self.group.subgroup_from_elements(&elems).expect("stabilizer")
    }

    /// Vertex orbits, each sorted, ordered by least member.
    pub fn vertex_orbits(&self) -> Vec<Vec<u32>> {
        let n = self.complex.vertex_count();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for v in 0..n as u32 {
            if seen[v as usize] {
                continue;
            }
            let mut orbit: Vec<u32> = self.table.iter().map(|p| p.apply(v)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &w in &orbit {
                seen[w as usize] = true;
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Checks face closure, that the action is simplicial, and the
    /// pointwise-fix condition; returns the first violation found.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.complex.vertex_count() as u32;
        for s in self.complex.simplices() {
            if s.iter().any(|&v| v >= n) {
                return Err(Violation::VertexOutOfRange { simplex: s.clone() });
            }
        }
        if let Some((simplex, missing_face)) = self.complex.first_missing_face() {
            return Err(Violation::NotFaceClosed { simplex, missing_face });
        }
        for (i, p) in self.gen_action.iter().enumerate() {
            for s in self.complex.simplices() {
                let mut img: Simplex = s.iter().map(|&v| p.apply(v)).collect();
                img.sort_unstable();
                if !self.complex.contains(&img) {
                    return Err(Violation::NotSimplicial { generator: i, simplex: s.clone() });
                }
            }
        }
        for (g, p) in self.table.iter().enumerate().skip(1) {
            for s in self.complex.simplices().iter().filter(|s| s.len() > 1) {
                let moved = s.iter().any(|&v| p.apply(v) != v);
                if moved {
                    let mut img: Simplex = s.iter().map(|&v| p.apply(v)).collect();
                    img.sort_unstable();
                    if img == *s {
                        return Err(Violation::NotPointwiseFixed { element: g, simplex: s.clone() });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_simplicial(&self) -> bool {
        !matches!(
            self.validate(),
            Err(Violation::NotSimplicial { .. } | Violation::VertexOutOfRange { .. } | Violation::NotFaceClosed { .. })
        )
    }

    /// Simplices fixed pointwise by every element of `h`.
    pub fn fixed_subcomplex(&self, h: &Subgroup) -> SimplicialComplex {
        let fixed: Vec<bool> = (0..self.complex.vertex_count() as u32)
            .map(|v| h.generators().iter().all(|&g| self.table[g].apply(v) == v))
            .collect();
        self.complex.induced(|v| fixed[v as usize])
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_subcomplex(&self.group.whole()).is_empty()
    }

    /// Vertices are the simplices of `self`; simplices are chains under inclusion.
    pub fn barycentric_subdivision(&self) -> Result<GComplex> {
        if !self.is_simplicial() {
            return Err(Error::InvalidComplex(
                "subdivision needs a face-closed complex with simplicial action".into(),
            ));
        }
        let simplices = self.complex.simplices();
        // Proper faces of each simplex, by index.
        let faces: Vec<Vec<usize>> = simplices
            .iter()
            .map(|s| {
                let mut out = Vec::new();
                for_each_face(s, &mut |f| {
                    if f.len() < s.len() {
                        out.push(self.complex.index_of(&f).expect("face closed"));
                    }
                });
                out
            })
            .collect();
        // Chains ending at each simplex, built in order of size.
        let mut chains: Vec<Vec<Simplex>> = Vec::with_capacity(simplices.len());
        for (i, _) in simplices.iter().enumerate() {
            let mut here = vec![vec![i as u32]];
            for &f in &faces[i] {
                for c in &chains[f] {
                    let mut c = c.clone();
                    c.push(i as u32);
                    here.push(c);
                }
            }
            chains.push(here);
        }
        let all: Vec<Simplex> = chains.into_iter().flatten().collect();
        let complex = SimplicialComplex::new(simplices.len(), all);
        let gen_action = self
            .gen_action
            .iter()
            .map(|p| {
                let images = simplices
                    .iter()
                    .map(|s| {
                        let mut img: Simplex = s.iter().map(|&v| p.apply(v)).collect();
                        img.sort_unstable();
                        self.complex.index_of(&img).expect("simplicial") as u32
                    })
                    .collect();
                Perm::from_images(images).expect("bijection on simplices")
            })
            .collect();
        GComplex::new(self.group.clone(), complex, gen_action)
    }

    /// Adds a fixed apex (the last vertex) and coned simplices.
    pub fn cone(&self) -> GComplex {
        let n = self.complex.vertex_count();
        let apex = n as u32;
        let mut simplices = vec![vec![apex]];
        for s in self.complex.simplices() {
            simplices.push(s.clone());
            let mut c = s.clone();
            c.push(apex);
            simplices.push(c);
        }
        let complex = SimplicialComplex::new(n + 1, simplices);
        let gen_action = self.gen_action.iter().map(|p| p.extended(n + 1)).collect();
        GComplex::new(self.group.clone(), complex, gen_action).expect("cone action")
    }

    /// Join with diagonal action; vertices of `other` are shifted past those of `self`.
    pub fn join(&self, other: &GComplex) -> Result<GComplex> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::InvalidComplex("join needs both complexes over one group".into()));
        }
        let (n, m) = (self.complex.vertex_count(), other.complex.vertex_count());
        let shift = |s: &Simplex| -> Simplex { s.iter().map(|&v| v + n as u32).collect() };
        let mut simplices: Vec<Simplex> = self.complex.simplices().to_vec();
        simplices.extend(other.complex.simplices().iter().map(shift));
        for a in self.complex.simplices() {
            for b in other.complex.simplices() {
                let mut s = a.clone();
                s.extend(shift(b));
                simplices.push(s);
            }
        }
        let complex = SimplicialComplex::new(n + m, simplices);
        let gen_action = self
            .gen_action
            .iter()
            .zip(&other.gen_action)
            .map(|(p, q)| {
                let images = p
                    .images()
                    .iter()
                    .copied()
                    .chain(q.images().iter().map(|&x| x + n as u32))
                    .collect();
                Perm::from_images(images).expect("disjoint union")
            })
            .collect();
        GComplex::new(self.group.clone(), complex, gen_action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    fn swap_edge() -> GComplex {
        let g = Arc::new(cyclic(2));
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        GComplex::new(g, SimplicialComplex::simplex(1), vec![swap]).unwrap()
    }

    #[test]
    fn swapped_edge_violates_then_subdivision_fixes() {
        let x = swap_edge();
        assert!(matches!(x.validate(), Err(Violation::NotPointwiseFixed { simplex, .. }) if simplex == vec![0, 1]));
        let sd = x.barycentric_subdivision().unwrap();
        assert!(sd.validate().is_ok());
        assert_eq!(sd.complex().f_vector(), vec![3, 2]);
        // the middle vertex is the edge itself, fixed by the swap
        let mid = sd.complex().vertex_count() as u32 - 1;
        assert_eq!(sd.act_vertex(1, mid), mid);
    }

    #[test]
    fn subdivided_triangle() {
        let g = Arc::new(Group::trivial());
        let x = GComplex::trivial_action(g, SimplicialComplex::simplex(2));
        assert!(x.validate().is_ok());
        let sd = x.barycentric_subdivision().unwrap();
        assert_eq!(sd.complex().f_vector(), vec![7, 12, 6]);
        assert_eq!(sd.euler_char(), 1);
    }

    #[test]
    fn rotation_fixed_points() {
        let g = Arc::new(cyclic(3));
        let rot = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let x = GComplex::new(g.clone(), SimplicialComplex::simplex_boundary(2), vec![rot]).unwrap();
        assert!(x.validate().is_ok());
        assert!(x.fixed_subcomplex(&g.whole()).is_empty());
        assert_eq!(x.euler_char(), 0);
        assert_eq!(x.fixed_subcomplex(&g.trivial_subgroup()), *x.complex());
        assert!(x.is_fixed_point_free());
    }

    #[test]
    fn non_simplicial_action_is_reported() {
        let g = Arc::new(cyclic(2));
        let swap = Perm::from_images(vec![2, 1, 0]).unwrap();
        let c = SimplicialComplex::from_facets(3, &[vec![0, 1]]);
        let x = GComplex::new(g, c, vec![swap]).unwrap();
        assert!(matches!(x.validate(), Err(Violation::NotSimplicial { generator: 0, .. })));
        assert!(x.barycentric_subdivision().is_err());
    }

    #[test]
    fn bad_action_rejected() {
        let g = Arc::new(cyclic(3));
        let swap = Perm::from_images(vec![1, 0]).unwrap();
        assert!(GComplex::new(g, SimplicialComplex::simplex(1), vec![swap]).is_err());
    }

    #[test]
    fn join_and_cone_shapes() {
        let g = Arc::new(Group::trivial());
        let pt = GComplex::trivial_action(g.clone(), SimplicialComplex::simplex(0));
        let j = pt.join(&pt).unwrap();
        assert_eq!(*j.complex(), SimplicialComplex::simplex(1));
        let s0 = GComplex::trivial_action(g.clone(), SimplicialComplex::simplex_boundary(1));
        let sq = s0.join(&s0).unwrap();
        assert_eq!(sq.complex().f_vector(), vec![4, 4]);
        assert_eq!(sq.euler_char(), 0);
        let c = s0.cone();
        assert_eq!(c.euler_char(), 1);
        assert_eq!(c.dimension(), 1);
    }

    #[test]
    fn orbit_complex_matches_marks() {
        // S3 acting on the three cosets of C2, as a 0-dimensional complex.
        let g = Arc::new(symmetric(3));
        let pts = SimplicialComplex::new(3, (0..3).map(|v| vec![v]).collect());
        let x = GComplex::new(g.clone(), pts, g.generators().to_vec()).unwrap();
        let t = g.index_of(&Perm::from_cycles(3, &[vec![0, 1]]).unwrap()).unwrap();
        assert_eq!(x.fixed_subcomplex(&g.generate(&[t])).len(), 1);
        assert_eq!(x.vertex_orbits(), vec![vec![0, 1, 2]]);
        assert_eq!(x.vertex_stabilizer(2).order(), 2);
    }
}
