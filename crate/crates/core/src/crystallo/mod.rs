//! Finite quotients `Γ_s = (Z/s)ⁿ ⋊ F` of split crystallographic groups
//! `Zⁿ ⋊ F`, and the subgroup analyses run on them.

mod numbers;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

pub use numbers::{
    congruence_primes, gl_order, kernel_hom, mod_inverse, o_poly, omega_u128, prime_search, threshold_primes,
    totient, CongruencePrimes, Poly, PrimeSearch, ThresholdPrimes,
};

use crate::classify::{is_dress, DressVerdict, DressWitness};
use crate::error::{Error, Result};
use crate::group::{cyclic, semidirect_product, Group, GroupHom, Subgroup, SubgroupLattice, DEFAULT_ORDER_CAP};
use crate::intmat::integer_kernel;
use crate::perm::Perm;

pub const REPRESENTABILITY_CAP: usize = 5000;
pub const MATRIX_GROUP_CAP: usize = 10_000;

pub type Matrix = Vec<Vec<i64>>;

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0i64;
            for k in 0..n {
                acc = a[i][k]
                    .checked_mul(b[k][j])
                    .and_then(|x| acc.checked_add(x))
                    .ok_or(Error::Overflow("matrix product"))?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

pub fn det(m: &Matrix) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Matrix = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                    .collect();
                let t = m[0][j] * det(&minor);
                if j % 2 == 0 { t } else { -t }
            })
            .sum(),
    }
}

/// Rank and generators of a finite `F ≤ GL_n(Z)`, with its closure.
#[derive(Clone, Debug)]
pub struct CrystalData {
    n: usize,
    f_gens: Vec<Matrix>,
    /// Elements of `F`, identity first.
    f_elements: Vec<Matrix>,
    f_index: HashMap<Matrix, usize>,
}

impl CrystalData {
    pub fn new(n: usize, f_gens: Vec<Matrix>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("rank must be positive".into()));
        }
        for m in &f_gens {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidInput(format!("expected {n}x{n} matrices")));
            }
            if det(m).abs() != 1 {
                return Err(Error::InvalidInput(format!("{m:?} is not invertible over Z")));
            }
        }
        let mut f_elements = vec![identity(n)];
        let mut f_index = HashMap::from([(identity(n), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &f_gens {
                let m = mat_mul(g, &f_elements[i]).map_err(|_| Error::InvalidInput("F is infinite".into()))?;
                if !f_index.contains_key(&m) {
                    if f_elements.len() >= MATRIX_GROUP_CAP {
                        return Err(Error::CapExceeded { size: f_elements.len() + 1, cap: MATRIX_GROUP_CAP });
                    }
                    f_index.insert(m.clone(), f_elements.len());
                    queue.push_back(f_elements.len());
                    f_elements.push(m);
                }
            }
        }
        Ok(CrystalData { n, f_gens, f_elements, f_index })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn f_generators(&self) -> &[Matrix] {
        &self.f_gens
    }

    pub fn f_elements(&self) -> &[Matrix] {
        &self.f_elements
    }

    pub fn f_order(&self) -> usize {
        self.f_elements.len()
    }

    /// `F` as a permutation group, acting on its elements by left multiplication.
    pub fn f_group(&self) -> Group {
        let gens = self
            .f_gens
            .iter()
            .map(|g| {
                let images = self
                    .f_elements
                    .iter()
                    .map(|m| self.f_index[&mat_mul(g, m).expect("closed")] as u32)
                    .collect();
                Perm::from_images(images).expect("regular action")
            })
            .collect();
        Group::new(self.f_order(), gens).expect("regular representation")
    }
}

/// `Γ_s` realized on `(Z/s)ⁿ ⊔ F`, with `A_s` and `pr_s`.
#[derive(Clone, Debug)]
pub struct QuotientBundle {
    pub s: u64,
    pub data: CrystalData,
    pub group: Arc<Group>,
    pub f_group: Arc<Group>,
    /// `pr_s: Γ_s → F`.
    pub pr: GroupHom,
    /// `A_s = (Z/s)ⁿ`.
    pub a: Subgroup,
}

impl QuotientBundle {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    fn block(&self) -> usize {
        (self.s as usize).pow(self.data.n as u32)
    }

    /// `(v, f)` acting by `x ↦ M_f x + v`: translation part and index in `F`.
    pub fn decode(&self, x: usize) -> (Vec<i64>, usize) {
        let p = self.group.element(x);
        let v = crate::group::decode_vector(p.apply(0), self.data.n, self.s as i64);
        let f = p.apply(self.block() as u32) as usize - self.block();
        (v, f)
    }

    pub fn encode(&self, v: &[i64], f: usize) -> Option<usize> {
        let s = self.s as i64;
        let m = &self.data.f_elements[f];
        let block = self.block();
        let mut images: Vec<u32> = (0..block as u32)
            .map(|c| {
                let x = crate::group::decode_vector(c, self.data.n, s);
                let y: Vec<i64> = crate::group::mat_vec_mod(m, &x, s).iter().zip(v).map(|(a, b)| a + b).collect();
                crate::group::encode_vector(&y, s)
            })
            .collect();
        images.extend(self.f_perm(f).images().iter().map(|&i| i + block as u32));
        self.group.index_of(&Perm::from_images(images).ok()?)
    }

    fn f_perm(&self, f: usize) -> Perm {
        // Left multiplication by the f-th matrix on the element list.
        let m = &self.data.f_elements[f];
        let images = self
            .data
            .f_elements
            .iter()
            .map(|x| self.data.f_index[&mat_mul(m, x).expect("closed")] as u32)
            .collect();
        Perm::from_images(images).expect("regular action")
    }

    /// `π: Γ_s ↠ Γ_t` for `t | s`, reducing translations mod `t`.
    pub fn divisor_map(&self, target: &QuotientBundle) -> Result<GroupHom> {
        if self.s % target.s != 0 {
            return Err(Error::Precondition(format!("{} does not divide {}", target.s, self.s)));
        }
        if self.data.f_gens != target.data.f_gens {
            return Err(Error::Precondition("bundles over different crystal data".into()));
        }
        GroupHom::new(self.group.clone(), target.group.clone(), target.group.generator_indices().to_vec())
    }
}

pub fn quotient_bundle(data: &CrystalData, s: u64) -> Result<QuotientBundle> {
    if s == 0 {
        return Err(Error::InvalidInput("modulus must be positive".into()));
    }
    let size = (s as usize)
        .checked_pow(data.n as u32)
        .and_then(|x| x.checked_mul(data.f_order()))
        .ok_or(Error::Overflow("quotient order"))?;
    if size > REPRESENTABILITY_CAP {
        return Err(Error::CapExceeded { size, cap: REPRESENTABILITY_CAP });
    }
    let f_group = Arc::new(data.f_group());
    let group = Arc::new(semidirect_product(s as u32, data.n, &f_group, &data.f_gens)?);
    let n = data.n;
    let translations: Vec<usize> = group.generator_indices()[..n].to_vec();
    let mut images = vec![f_group.identity(); n];
    images.extend_from_slice(f_group.generator_indices());
    let pr = GroupHom::new(group.clone(), f_group.clone(), images)?;
    let a = group.generate(&translations);
    if group.order() != size || a.order() != size / data.f_order() || pr.kernel() != a || !pr.is_surjective() {
        return Err(Error::InvalidInput("quotient invariants failed".into()));
    }
    Ok(QuotientBundle { s, data: data.clone(), group, f_group, pr, a })
}

fn dress_verdict(g: &Group, h: &Subgroup) -> Result<Option<DressWitness>> {
    let sub = g.subgroup_as_group(h);
    let lattice = SubgroupLattice::new(&sub, DEFAULT_ORDER_CAP)?;
    match is_dress(&sub, &lattice) {
        DressVerdict::Dress(w) => Ok(Some(w)),
        DressVerdict::NotDress => Ok(None),
        DressVerdict::Unknown => Err(Error::LatticeIncomplete),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectingDress {
    pub index: usize,
    pub order: usize,
    #[serde(skip)]
    pub subgroup: Subgroup,
    #[serde(skip)]
    pub witness: DressWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectingReport {
    /// Whether the subgroup enumeration is exhaustive.
    pub complete: bool,
    pub subgroups: Vec<SurjectingDress>,
}

/// Every Dress subgroup `D ≤ Γ_s` with `pr_s(D) = F`.
pub fn dress_subgroups_surjecting(bundle: &QuotientBundle) -> Result<SurjectingReport> {
    let lattice = SubgroupLattice::best_effort(&bundle.group, DEFAULT_ORDER_CAP);
    let mut subgroups = Vec::new();
    for (index, d) in lattice.subgroups().iter().enumerate() {
        if bundle.pr.image_of(d).order() != bundle.f_group.order() {
            continue;
        }
        if let Some(witness) = dress_verdict(&bundle.group, d)? {
            subgroups.push(SurjectingDress { index, order: d.order(), subgroup: d.clone(), witness });
        }
    }
    Ok(SurjectingReport { complete: lattice.is_complete(), subgroups })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCyclic {
    pub found: bool,
    /// Generator of an `F`-invariant cyclic subgroup of `π(D) ∩ A_t`.
    pub generator: Option<Vec<i64>>,
}

/// Looks for a nontrivial cyclic subgroup of `π(D) ∩ A_t` invariant under
/// conjugation by lifts of `F`, where `π: Γ_s ↠ Γ_t`.
pub fn invariant_cyclic_check(source: &QuotientBundle, target: &QuotientBundle, d: &Subgroup) -> Result<InvariantCyclic> {
    let pi = source.divisor_map(target)?;
    if source.pr.image_of(d).order() != source.f_group.order() {
        return Err(Error::Precondition("pr_s(D) ≠ F".into()));
    }
    if d.elements().iter().all(|&x| !source.a.contains(x) || x == source.group.identity()) {
        return Err(Error::Precondition("D ∩ A_s is trivial".into()));
    }
    let g = &target.group;
    let image = pi.image_of(d);
    let lifts: Vec<usize> = g.generator_indices()[target.data.n..].to_vec();
    let mut candidates: Vec<(Vec<i64>, usize)> = image
        .elements()
        .iter()
        .filter(|&&x| x != g.identity() && target.a.contains(x))
        .map(|&x| (target.decode(x).0, x))
        .collect();
    candidates.sort();
    for (v, x) in candidates {
        let c = g.generate(&[x]);
        if lifts.iter().all(|&f| g.conjugate_subgroup(f, &c) == c) {
            return Ok(InvariantCyclic { found: true, generator: Some(v) });
        }
    }
    Ok(InvariantCyclic { found: false, generator: None })
}

fn primitive_sign(v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let mut v: Vec<i64> = v.into_iter().map(|x| x / g.max(1)).collect();
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Splitting {
    Split { z1: Vec<i64>, z2: Vec<i64> },
    /// No `F`-invariant line at all.
    NoInvariantLine,
    /// Invariant lines exist but no two span `Z²`.
    NotComplementary { lines: Vec<Vec<i64>> },
}

/// `Z² = Z₁ ⊕ Z₂` with both summands rank-one and `F`-invariant.
pub fn invariant_splitting(data: &CrystalData) -> Result<Splitting> {
    if data.n != 2 {
        return Err(Error::Precondition("invariant splitting needs rank 2".into()));
    }
    let k = data.f_gens.len();
    let mut lines: Vec<Vec<i64>> = Vec::new();
    for signs in 0..(1u32 << k) {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (i, m) in data.f_gens.iter().enumerate() {
            let lambda = if signs >> i & 1 == 0 { 1 } else { -1 };
            for r in 0..2 {
                rows.push((0..2).map(|c| BigInt::from(m[r][c] - if r == c { lambda } else { 0 })).collect());
            }
        }
        let kernel = if rows.is_empty() { vec![vec![1.into(), 0.into()], vec![0.into(), 1.into()]] } else { integer_kernel(&rows, 2) };
        match kernel.len() {
            2 => return Ok(Splitting::Split { z1: vec![1, 0], z2: vec![0, 1] }),
            1 => {
                let v = primitive_sign(kernel[0].iter().map(|x| i64::try_from(x).expect("small")).collect());
                if !lines.contains(&v) {
                    lines.push(v);
                }
            }
            _ => {}
        }
    }
    lines.sort_by(|a, b| b.cmp(a));
    if lines.is_empty() {
        return Ok(Splitting::NoInvariantLine);
    }
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if (a[0] * b[1] - a[1] * b[0]).abs() == 1 {
                return Ok(Splitting::Split { z1: a.clone(), z2: b.clone() });
            }
        }
    }
    Ok(Splitting::NotComplementary { lines })
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyEntry {
    pub class: usize,
    pub order: usize,
    pub class_size: usize,
    /// `ν′` with `G ∩ A ⊆ ν′A`, `ν′ ≥ ν`, `ν′ | s`, `ν′ ≡ 1 (mod o)`.
    pub nu_prime: Option<u64>,
    /// `[Z/r : π(G)]`.
    pub index: u64,
    pub holds_a: bool,
    pub holds_b: bool,
}

impl DichotomyEntry {
    pub fn verdict(&self) -> &'static str {
        match (self.holds_a, self.holds_b) {
            (true, true) => "both",
            (true, false) => "3a",
            (false, true) => "3b",
            (false, false) => "neither",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub group_order: usize,
    pub entries: Vec<DichotomyEntry>,
    pub all_hold: bool,
}

/// Multiplicative order of `M` modulo `s`, if invertible.
pub fn matrix_order_mod(m: &Matrix, s: u64) -> Option<u64> {
    let s = s as i64;
    let n = m.len();
    let reduce = |a: &Matrix| -> Matrix { a.iter().map(|r| r.iter().map(|x| x.rem_euclid(s)).collect()).collect() };
    let id = reduce(&identity(n));
    let base = reduce(m);
    let mut acc = base.clone();
    for k in 1..=(s.pow(n as u32 * n as u32).min(1 << 20) as u64) {
        if acc == id {
            return Some(k);
        }
        acc = reduce(&mat_mul(&acc, &base).ok()?);
    }
    None
}

/// Builds `(Z/s)ⁿ ⋊_M Z/r` and reports both alternatives for every class of
/// Dress subgroups.
pub fn dichotomy_check(m: &Matrix, s: u64, r: u64, nu: u64, o: u64) -> Result<DichotomyReport> {
    let n = m.len();
    if n == 0 || m.iter().any(|row| row.len() != n) || s == 0 || r == 0 || o == 0 {
        return Err(Error::InvalidInput("expected a square matrix and positive s, r, o".into()));
    }
    let ord = matrix_order_mod(m, s).ok_or_else(|| Error::Precondition(format!("M is not invertible mod {s}")))?;
    if r % ord != 0 {
        return Err(Error::Precondition(format!("order {ord} of M mod {s} does not divide r = {r}")));
    }
    let size = (s as usize).checked_pow(n as u32).and_then(|x| x.checked_mul(r as usize)).ok_or(Error::Overflow("group order"))?;
    if size > REPRESENTABILITY_CAP {
        return Err(Error::CapExceeded { size, cap: REPRESENTABILITY_CAP });
    }
    let zr = Arc::new(cyclic(r as usize));
    let g = Arc::new(semidirect_product(s as u32, n, &zr, &[m.clone()])?);
    let translations = g.generator_indices()[..n].to_vec();
    let a = g.generate(&translations);
    let mut images = vec![zr.identity(); n];
    images.push(zr.generator_indices()[0]);
    let pi = GroupHom::new(g.clone(), zr.clone(), images)?;
    let lattice = SubgroupLattice::new(&g, DEFAULT_ORDER_CAP)?;
    let candidates: Vec<u64> = (1..=s).filter(|&v| s % v == 0 && v >= nu && v % o == 1 % o).collect();
    let mut entries = Vec::new();
    for class in lattice.classes() {
        let h = lattice.subgroup(class.representative);
        if dress_verdict(&g, h)?.is_none() {
            continue;
        }
        let vectors: Vec<Vec<i64>> = h
            .elements()
            .iter()
            .filter(|&&x| a.contains(x))
            .map(|&x| crate::group::decode_vector(g.element(x).apply(0), n, s as i64))
            .collect();
        let nu_prime = candidates
            .iter()
            .copied()
            .find(|&v| vectors.iter().all(|w| w.iter().all(|&c| c % v as i64 == 0)));
        let index = r / pi.image_of(h).order() as u64;
        entries.push(DichotomyEntry {
            class: class.index,
            order: h.order(),
            class_size: class.members.len(),
            holds_a: nu_prime.is_some(),
            nu_prime,
            index,
            holds_b: index >= nu,
        });
    }
    let all_hold = entries.iter().all(|e| e.holds_a || e.holds_b);
    Ok(DichotomyReport { group_order: g.order(), entries, all_hold })
}
