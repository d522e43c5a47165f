//! JSON formats for groups, complexes, points, resolution data and witnesses.
//!
//! Group elements are written in disjoint-cycle notation. Weights are exact
//! rationals written as `"p/q"` strings; integers that can grow without bound
//! are written as decimal strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcomplex::{GComplex, RealPoint, SimplicialComplex, Weight};
use crate::group::{Group, GroupHom, Subgroup};
use crate::perm::Perm;
use crate::resolution::{transport_from, OrbitData, ResolutionData};
use crate::transfer::{pull_back, AssemblyFiber, DfhEntry, DfhWitness, Family, TrWitness};

pub type Cycles = Vec<Vec<u32>>;

fn invalid(m: impl Into<String>) -> Error {
    Error::InvalidInput(m.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Cycles>,
}

impl GroupSpec {
    pub fn from_group(g: &Group) -> Self {
        GroupSpec { degree: g.degree(), generators: g.generators().iter().map(Perm::cycles).collect() }
    }

    pub fn build(&self) -> Result<Group> {
        Group::from_cycles(self.degree, &self.generators)
    }
}

pub fn element_index(g: &Group, c: &Cycles) -> Result<usize> {
    let p = Perm::from_cycles(g.degree(), c)?;
    g.index_of(&p).ok_or_else(|| invalid(format!("{c:?} is not an element of the group")))
}

pub fn element_spec(g: &Group, x: usize) -> Cycles {
    g.element(x).cycles()
}

pub fn elements_index(g: &Group, cs: &[Cycles]) -> Result<Vec<usize>> {
    cs.iter().map(|c| element_index(g, c)).collect()
}

/// A subgroup is written as a list of generators.
pub fn subgroup_from_spec(g: &Group, gens: &[Cycles]) -> Result<Subgroup> {
    Ok(g.generate(&elements_index(g, gens)?))
}

pub fn subgroup_spec(g: &Group, h: &Subgroup) -> Vec<Cycles> {
    h.generators().iter().map(|&x| element_spec(g, x)).collect()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || invalid(format!("{s:?} is not a rational of the form p/q"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn parse_weight<W: Weight>(s: &str) -> Result<W> {
    Ok(W::from_rational(&parse_rational(s)?))
}

/// Vertex (as a decimal string) to weight.
pub type PointSpec = BTreeMap<String, String>;

pub fn point_spec<W: Weight>(p: &RealPoint<W>) -> PointSpec {
    p.weights().iter().map(|(v, w)| (v.to_string(), w.to_string())).collect()
}

pub fn point_from_spec<W: Weight>(p: &PointSpec) -> Result<RealPoint<W>> {
    let pairs = p
        .iter()
        .map(|(v, w)| {
            let v: u32 = v.parse().map_err(|_| invalid(format!("vertex key {v:?} is not a number")))?;
            Ok((v, parse_weight::<W>(w)?))
        })
        .collect::<Result<Vec<_>>>()?;
    RealPoint::from_weights(pairs)
}

/// A complex with a group action given on generators: `action["gen_i"]` is the
/// image list of generator `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    pub vertices: usize,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<u32>>,
    /// Facets or the full simplex list; faces are closed downward on input.
    pub simplices: Vec<Vec<u32>>,
}

impl ComplexSpec {
    pub fn from_gcomplex(x: &GComplex, with_group: bool) -> Self {
        ComplexSpec {
            group: with_group.then(|| GroupSpec::from_group(x.group())),
            vertices: x.complex().vertex_count(),
            action: x
                .gen_action()
                .iter()
                .enumerate()
                .map(|(i, p)| (format!("gen_{i}"), p.images().to_vec()))
                .collect(),
            simplices: x.complex().simplices().to_vec(),
        }
    }

    /// The embedded group, or `fallback` when none is given.
    pub fn group_or(&self, fallback: Option<Arc<Group>>) -> Result<Arc<Group>> {
        match (&self.group, fallback) {
            (Some(g), _) => Ok(Arc::new(g.build()?)),
            (None, Some(g)) => Ok(g),
            (None, None) => Err(invalid("complex has no \"group\" and none was supplied")),
        }
    }

    pub fn to_gcomplex(&self, group: Arc<Group>) -> Result<GComplex> {
        let k = group.generators().len();
        if let Some(key) = self.action.keys().find(|key| {
            key.strip_prefix("gen_").and_then(|i| i.parse::<usize>().ok()).map_or(true, |i| i >= k)
        }) {
            return Err(invalid(format!("action key {key:?} does not name one of {k} generators")));
        }
        let n = self.vertices;
        let mut gens = Vec::with_capacity(k);
        for i in 0..k {
            let p = match self.action.get(&format!("gen_{i}")) {
                Some(images) => Perm::from_images(images.clone())?,
                None if n == 0 => Perm::identity(0),
                None => return Err(invalid(format!("action of gen_{i} is missing"))),
            };
            if p.degree() != n {
                return Err(invalid(format!("gen_{i} acts on {} points, complex has {n}", p.degree())));
            }
            gens.push(p);
        }
        if let Some(s) = self.simplices.iter().find(|s| s.iter().any(|&v| v as usize >= n)) {
            return Err(invalid(format!("simplex {s:?} uses a vertex outside 0..{n}")));
        }
        GComplex::new(group, SimplicialComplex::from_facets(n, &self.simplices), gens)
    }
}

/// Loads a complex whose group is embedded in the spec.
pub fn gcomplex_from_spec(spec: &ComplexSpec, fallback: Option<Arc<Group>>) -> Result<GComplex> {
    let g = spec.group_or(fallback)?;
    spec.to_gcomplex(g)
}

/// Resolution data over a base complex. Transport entries map a vertex of the
/// orbit to a word in the generators of `G` carrying the representative to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<ComplexSpec>,
    pub orbits: Vec<OrbitSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitSpec {
    pub rep: u32,
    /// Its `group`, when given, must have the stabilizer's elements.
    pub complex: ComplexSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transport: Option<BTreeMap<String, Vec<usize>>>,
}

impl ResolutionSpec {
    pub fn build(&self, base: GComplex) -> Result<ResolutionData> {
        let g = base.group().clone();
        let mut orbits = Vec::with_capacity(self.orbits.len());
        for o in &self.orbits {
            if o.rep as usize >= base.complex().vertex_count() {
                return Err(invalid(format!("representative {} is not a vertex", o.rep)));
            }
            let stabilizer = base.vertex_stabilizer(o.rep);
            let fiber_group = o.complex.group_or(Some(Arc::new(g.subgroup_as_group(&stabilizer))))?;
            let fiber = o.complex.to_gcomplex(fiber_group)?;
            let transport = match &o.transport {
                None => transport_from(&base, o.rep),
                Some(words) => words
                    .iter()
                    .map(|(v, w)| {
                        let v: u32 = v.parse().map_err(|_| invalid(format!("transport key {v:?} is not a vertex")))?;
                        Ok((v, g.word(w)?))
                    })
                    .collect::<Result<_>>()?,
            };
            orbits.push(OrbitData { rep: o.rep, stabilizer, fiber, transport });
        }
        ResolutionData::from_parts(base, orbits)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub source: GroupSpec,
    pub target: GroupSpec,
    /// Images of the source generators.
    pub images: Vec<Cycles>,
}

impl HomSpec {
    pub fn from_hom(pi: &GroupHom) -> Self {
        HomSpec {
            source: GroupSpec::from_group(pi.source()),
            target: GroupSpec::from_group(pi.target()),
            images: pi.gen_images().iter().map(|&x| element_spec(pi.target(), x)).collect(),
        }
    }

    pub fn build(&self) -> Result<GroupHom> {
        let source = Arc::new(self.source.build()?);
        let target = Arc::new(self.target.build()?);
        let images = elements_index(&target, &self.images)?;
        GroupHom::new(source, target, images)
    }
}

fn family_from_spec(g: &Group, f: &Option<Vec<Vec<Cycles>>>) -> Result<Family> {
    match f {
        None => Ok(Family::All),
        Some(list) => Ok(Family::Generated(
            list.iter().map(|gens| subgroup_from_spec(g, gens)).collect::<Result<_>>()?,
        )),
    }
}

fn family_spec(g: &Group, f: &Family) -> Option<Vec<Vec<Cycles>>> {
    match f {
        Family::All => None,
        Family::Generated(list) => Some(list.iter().map(|h| subgroup_spec(g, h)).collect()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSpec {
    pub element: Cycles,
    pub point: PointSpec,
}

fn samples_from_spec<W: Weight>(g: &Group, s: &[SampleSpec]) -> Result<BTreeMap<usize, RealPoint<W>>> {
    let mut out = BTreeMap::new();
    for e in s {
        let x = element_index(g, &e.element)?;
        if out.insert(x, point_from_spec(&e.point)?).is_some() {
            return Err(invalid(format!("element {:?} sampled twice", e.element)));
        }
    }
    Ok(out)
}

fn samples_spec<'a, W: Weight + 'a>(
    g: &Group,
    it: impl Iterator<Item = (usize, &'a RealPoint<W>)>,
) -> Vec<SampleSpec> {
    it.map(|(x, p)| SampleSpec { element: element_spec(g, x), point: point_spec(p) }).collect()
}

/// The first transfer condition: per-Dress-subgroup complexes and sampled maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfhSpec {
    pub pi: HomSpec,
    pub s: Vec<Cycles>,
    pub n: usize,
    pub b: usize,
    pub epsilon: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<Vec<Cycles>>>,
    pub entries: Vec<DfhEntrySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfhEntrySpec {
    /// Generators of `D` inside the target of `pi`.
    pub d: Vec<Cycles>,
    /// Defaults to a group on the preimage of `D` when `group` is absent.
    pub complex: ComplexSpec,
    pub map: Vec<SampleSpec>,
}

impl DfhSpec {
    pub fn from_witness<W: Weight>(w: &DfhWitness<W>) -> Self {
        let g = w.pi.source();
        let f = w.pi.target();
        DfhSpec {
            pi: HomSpec::from_hom(&w.pi),
            s: w.s.iter().map(|&x| element_spec(g, x)).collect(),
            n: w.n,
            b: w.b,
            epsilon: w.epsilon.to_string(),
            family: family_spec(g, &w.family),
            entries: w
                .entries
                .iter()
                .map(|e| DfhEntrySpec {
                    d: subgroup_spec(f, &e.d),
                    complex: ComplexSpec::from_gcomplex(&e.complex, true),
                    map: samples_spec(g, e.map.iter().map(|(&x, p)| (x, p))),
                })
                .collect(),
        }
    }

    pub fn build<W: Weight>(&self) -> Result<DfhWitness<W>> {
        let pi = self.pi.build()?;
        let g = pi.source().clone();
        let f = pi.target().clone();
        let mut entries = Vec::new();
        for e in &self.entries {
            let d = subgroup_from_spec(&f, &e.d)?;
            let pre = Arc::new(g.subgroup_as_group(&pi.preimage(&d)));
            let complex = gcomplex_from_spec(&e.complex, Some(pre))?;
            entries.push(DfhEntry { d, complex, map: samples_from_spec(&g, &e.map)? });
        }
        Ok(DfhWitness {
            s: elements_index(&g, &self.s)?,
            n: self.n,
            b: self.b,
            epsilon: parse_weight(&self.epsilon)?,
            family: family_from_spec(&g, &self.family)?,
            entries,
            pi,
        })
    }
}

/// The second transfer condition: a map from `X` into a complex `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrSpec {
    pub nu: usize,
    /// Carries the group `G`.
    pub x: ComplexSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_apex: Option<u32>,
    /// Over the group of `x` unless it carries its own.
    pub e: ComplexSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<Vec<Cycles>>>,
    pub s: Vec<Cycles>,
    pub epsilon: String,
    /// Image of each vertex of `x`.
    pub map: Vec<PointSpec>,
}

impl TrSpec {
    pub fn from_witness<W: Weight>(w: &TrWitness<W>) -> Self {
        let g = w.x.group();
        TrSpec {
            nu: w.nu,
            x: ComplexSpec::from_gcomplex(&w.x, true),
            cone_apex: w.cone_apex,
            e: ComplexSpec::from_gcomplex(&w.e, false),
            family: family_spec(g, &w.family),
            s: w.s.iter().map(|&x| element_spec(g, x)).collect(),
            epsilon: w.epsilon.to_string(),
            map: w.map.iter().map(point_spec).collect(),
        }
    }

    pub fn build<W: Weight>(&self) -> Result<TrWitness<W>> {
        let x = gcomplex_from_spec(&self.x, None)?;
        let g = x.group().clone();
        let e = gcomplex_from_spec(&self.e, Some(g.clone()))?;
        Ok(TrWitness {
            nu: self.nu,
            cone_apex: self.cone_apex,
            family: family_from_spec(&g, &self.family)?,
            s: elements_index(&g, &self.s)?,
            epsilon: parse_weight(&self.epsilon)?,
            map: self.map.iter().map(point_from_spec).collect::<Result<_>>()?,
            x,
            e,
        })
    }
}

/// Inputs to the transfer assembly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssembleSpec {
    pub pi: HomSpec,
    /// Over the target of `pi` unless it carries its own group.
    pub x_f: ComplexSpec,
    pub fibers: Vec<FiberSpec>,
    pub s: Vec<Cycles>,
    pub epsilon: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Vec<Vec<Cycles>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberSpec {
    pub rep: u32,
    /// Defaults to a group on the stabilizer of `rep` when `group` is absent.
    pub complex: ComplexSpec,
    /// Must cover every element of `G`.
    pub map: Vec<SampleSpec>,
}

pub struct AssemblyInput<W> {
    pub pi: GroupHom,
    pub x_f: GComplex,
    pub fibers: Vec<AssemblyFiber<W>>,
    pub s: Vec<usize>,
    pub epsilon: W,
    pub family: Family,
}

impl AssembleSpec {
    pub fn from_parts<W: Weight>(
        pi: &GroupHom,
        x_f: &GComplex,
        fibers: &[AssemblyFiber<W>],
        s: &[usize],
        epsilon: &W,
        family: &Family,
    ) -> Self {
        let g = pi.source();
        AssembleSpec {
            pi: HomSpec::from_hom(pi),
            x_f: ComplexSpec::from_gcomplex(x_f, false),
            fibers: fibers
                .iter()
                .map(|f| FiberSpec {
                    rep: f.rep,
                    complex: ComplexSpec::from_gcomplex(&f.complex, true),
                    map: samples_spec(g, f.map.iter().enumerate()),
                })
                .collect(),
            s: s.iter().map(|&x| element_spec(g, x)).collect(),
            epsilon: epsilon.to_string(),
            family: family_spec(g, family),
        }
    }

    pub fn build<W: Weight>(&self) -> Result<AssemblyInput<W>> {
        let pi = self.pi.build()?;
        let g = pi.source().clone();
        let x_f = gcomplex_from_spec(&self.x_f, Some(pi.target().clone()))?;
        let x = pull_back(&pi, &x_f)?;
        let mut fibers = Vec::new();
        for f in &self.fibers {
            if f.rep as usize >= x.complex().vertex_count() {
                return Err(invalid(format!("representative {} is not a vertex", f.rep)));
            }
            let stab = Arc::new(g.subgroup_as_group(&x.vertex_stabilizer(f.rep)));
            let complex = gcomplex_from_spec(&f.complex, Some(stab))?;
            let samples = samples_from_spec::<W>(&g, &f.map)?;
            if samples.len() != g.order() {
                return Err(invalid(format!("fiber map over {} covers {} of {} elements", f.rep, samples.len(), g.order())));
            }
            fibers.push(AssemblyFiber { rep: f.rep, complex, map: samples.into_values().collect() });
        }
        Ok(AssemblyInput {
            s: elements_index(&g, &self.s)?,
            epsilon: parse_weight(&self.epsilon)?,
            family: family_from_spec(&g, &self.family)?,
            pi,
            x_f,
            fibers,
        })
    }
}

/// An integer given either as a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum IntSpec {
    Num(i64),
    Str(String),
}

impl IntSpec {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntSpec::Num(n) => Ok(BigInt::from(*n)),
            IntSpec::Str(s) => s.trim().parse().map_err(|_| invalid(format!("{s:?} is not an integer"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};
    use crate::resolution::resolve;
    use crate::transfer::{check_ctr, check_dfh, dfh_fixture, regular_fibers, s3_triangle};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn group_round_trip() {
        let g = symmetric(4);
        let spec = GroupSpec::from_group(&g);
        let back = spec.build().unwrap();
        assert_eq!(back.order(), 24);
        assert_eq!(back.generators(), g.generators());
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<GroupSpec>(&json).unwrap(), spec);
    }

    #[test]
    fn elements_and_subgroups() {
        let g = symmetric(3);
        for x in 0..g.order() {
            assert_eq!(element_index(&g, &element_spec(&g, x)).unwrap(), x);
        }
        assert!(element_index(&g, &vec![vec![0, 3]]).is_err());
        let h = g.generate(&[element_index(&g, &vec![vec![0, 1, 2]]).unwrap()]);
        assert_eq!(subgroup_from_spec(&g, &subgroup_spec(&g, &h)).unwrap(), h);
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-2").unwrap(), q(-2, 1));
        for bad in ["1/0", "x", "1/2/3", ""] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(q(1, 2).to_string(), "1/2");
        assert_eq!(parse_weight::<f64>("1/4").unwrap(), 0.25);
    }

    #[test]
    fn points_round_trip() {
        let p = RealPoint::from_weights([(0, q(1, 3)), (4, q(2, 3))]).unwrap();
        let spec = point_spec(&p);
        assert_eq!(spec["4"], "2/3");
        assert_eq!(point_from_spec::<BigRational>(&spec).unwrap(), p);
        let mut bad = spec.clone();
        bad.insert("x".into(), "0".into());
        assert!(point_from_spec::<BigRational>(&bad).is_err());
    }

    #[test]
    fn complex_round_trip() {
        let x = s3_triangle();
        let spec = ComplexSpec::from_gcomplex(&x, true);
        let json = serde_json::to_string(&spec).unwrap();
        let back = gcomplex_from_spec(&serde_json::from_str(&json).unwrap(), None).unwrap();
        assert_eq!(back.complex().simplices(), x.complex().simplices());
        assert_eq!(back.gen_action(), x.gen_action());
    }

    #[test]
    fn complex_errors() {
        let g = Arc::new(cyclic(2));
        let ok = ComplexSpec {
            group: None,
            vertices: 2,
            action: BTreeMap::from([("gen_0".to_string(), vec![1, 0])]),
            simplices: vec![vec![0, 1]],
        };
        let x = ok.to_gcomplex(g.clone()).unwrap();
        assert_eq!(x.complex().len(), 3);
        let mut bad = ok.clone();
        bad.action.insert("gen_1".into(), vec![0, 1]);
        assert!(bad.to_gcomplex(g.clone()).is_err());
        let mut bad = ok.clone();
        bad.simplices.push(vec![0, 2]);
        assert!(bad.to_gcomplex(g.clone()).is_err());
        let mut bad = ok.clone();
        bad.action.clear();
        assert!(bad.to_gcomplex(g.clone()).is_err());
        assert!(ok.group_or(None).is_err());
        assert!(serde_json::from_str::<ComplexSpec>(r#"{"vertices":1,"simplices":[[0]],"extra":1}"#).is_err());
    }

    #[test]
    fn resolution_spec_with_words() {
        // Two swapped points, an edge over each.
        let base = ComplexSpec {
            group: Some(GroupSpec::from_group(&cyclic(2))),
            vertices: 2,
            action: BTreeMap::from([("gen_0".to_string(), vec![1, 0])]),
            simplices: vec![vec![0], vec![1]],
        };
        let spec = ResolutionSpec {
            base: None,
            orbits: vec![OrbitSpec {
                rep: 0,
                complex: ComplexSpec {
                    group: None,
                    vertices: 2,
                    action: BTreeMap::new(),
                    simplices: vec![vec![0, 1]],
                },
                transport: Some(BTreeMap::from([("0".to_string(), vec![]), ("1".to_string(), vec![0])])),
            }],
        };
        let x = gcomplex_from_spec(&base, None).unwrap();
        let data = spec.build(x.clone()).unwrap();
        let y = resolve(&data).unwrap();
        assert_eq!(y.complex.dimension(), 1);
        assert_eq!(y.complex.complex().vertex_count(), 4);
        let mut wrong = spec.clone();
        wrong.orbits[0].transport = Some(BTreeMap::from([("0".to_string(), vec![]), ("1".to_string(), vec![])]));
        assert!(wrong.build(x).is_err());
    }

    #[test]
    fn dfh_round_trip() {
        let g = Arc::new(symmetric(3));
        let w = dfh_fixture(g, &q(1, 2), q(1, 1)).unwrap();
        let spec = DfhSpec::from_witness(&w);
        let json = serde_json::to_string(&spec).unwrap();
        let back: DfhWitness<BigRational> = serde_json::from_str::<DfhSpec>(&json).unwrap().build().unwrap();
        let (a, b) = (check_dfh(&w).unwrap(), check_dfh(&back).unwrap());
        assert!(a.passed);
        assert_eq!(a.max_distance, b.max_distance);
    }

    #[test]
    fn assembly_round_trip() {
        let x_f = s3_triangle();
        let pi = GroupHom::identity(x_f.group().clone());
        let fibers = regular_fibers(&x_f, &q(1, 2));
        let s = x_f.group().symmetric_generators();
        let spec = AssembleSpec::from_parts(&pi, &x_f, &fibers, &s, &q(1, 1), &Family::All);
        let json = serde_json::to_string(&spec).unwrap();
        let input: AssemblyInput<BigRational> = serde_json::from_str::<AssembleSpec>(&json).unwrap().build().unwrap();
        assert_eq!(input.fibers.len(), fibers.len());
        for (a, b) in input.fibers.iter().zip(&fibers) {
            assert_eq!(a.map, b.map);
        }
        let out = crate::transfer::assemble(&input.pi, &input.x_f, &input.fibers, &input.s, input.epsilon, input.family)
            .unwrap();
        let tr = TrSpec::from_witness(&out.witness);
        let w: TrWitness<BigRational> = tr.build().unwrap();
        let r = check_ctr(&w, 100, 7).unwrap();
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn int_specs() {
        let v: Vec<IntSpec> = serde_json::from_str(r#"[1, "-7", "123456789012345678901234567890"]"#).unwrap();
        let b: Vec<BigInt> = v.iter().map(|x| x.to_bigint().unwrap()).collect();
        assert_eq!(b[1], BigInt::from(-7));
        assert_eq!(b[2].to_string(), "123456789012345678901234567890");
        assert!(IntSpec::Str("1.5".into()).to_bigint().is_err());
    }
}
