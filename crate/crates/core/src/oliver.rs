//! Fixed-point removal at the level of Euler characteristics: a virtual
//! G-CW complex is built class by class so that each fixed set has the Euler
//! characteristic prescribed by a resolving function, then joined with itself.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::burnside::{containment_counts, marks, verify_resolving, BurnsideElement, TableOfMarks};
use crate::classify::{bd, depth, p_group_prime};
use crate::error::{Error, Result};
use crate::group::{Group, SubgroupLattice};
use crate::obligation::{Obligation, ObligationKind};

#[derive(Clone, Debug, Serialize)]
pub struct RankedLattice {
    /// Rank per class: one more than the largest rank of a proper overgroup.
    pub rank: Vec<usize>,
    /// Classes sorted by rank, then by class index.
    pub order: Vec<usize>,
}

pub fn rank_order(lattice: &SubgroupLattice) -> Result<RankedLattice> {
    if !lattice.is_complete() {
        return Err(Error::LatticeIncomplete);
    }
    let n = lattice.classes().len();
    let subs = lattice.subgroups();
    let mut rank = vec![0usize; n];
    // Proper overgroups have larger order, hence larger class index.
    for c in (0..n).rev() {
        let h = lattice.representative(c);
        rank[c] = 1 + subs
            .iter()
            .enumerate()
            .filter(|(_, k)| k.order() > h.order() && h.is_subgroup_of(k))
            .map(|(i, _)| rank[lattice.class_of(i)])
            .max()
            .unwrap_or(0);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&c| (rank[c], c));
    Ok(RankedLattice { rank, order })
}

/// Cell counts by `(class, dimension)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualGCW {
    pub cells: BTreeMap<(usize, usize), u64>,
    pub obligations: Vec<Obligation>,
}

#[derive(Serialize)]
struct CellEntry {
    class: usize,
    dim: usize,
    count: u64,
}

impl Serialize for VirtualGCW {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let cells: Vec<CellEntry> =
            self.cells.iter().map(|(&(class, dim), &count)| CellEntry { class, dim, count }).collect();
        let mut st = s.serialize_struct("VirtualGCW", 2)?;
        st.serialize_field("cells", &cells)?;
        st.serialize_field("obligations", &self.obligations)?;
        st.end()
    }
}

impl VirtualGCW {
    pub fn add(&mut self, class: usize, dim: usize, count: u64) {
        if count > 0 {
            *self.cells.entry((class, dim)).or_insert(0) += count;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.cells.keys().map(|&(_, d)| d).max()
    }

    pub fn cells_of_class(&self, class: usize) -> u64 {
        self.cells.iter().filter(|((c, _), _)| *c == class).map(|(_, &n)| n).sum()
    }

    /// Largest dimension of a cell present in the `K`-fixed set, if any.
    pub fn fixed_dimension(&self, t: &TableOfMarks, k: usize) -> Option<usize> {
        self.cells.keys().filter(|&&(h, _)| t.marks[h][k] != 0).map(|&(_, d)| d).max()
    }
}

/// `χ(Y^K) = Σ_i (−1)^i Σ_H c[H][i] · m[H][K]`.
pub fn chi_fixed(w: &VirtualGCW, t: &TableOfMarks, k: usize) -> i64 {
    w.cells
        .iter()
        .map(|(&(h, d), &n)| {
            let v = n as i64 * t.marks[h][k];
            if d % 2 == 0 { v } else { -v }
        })
        .sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildStep {
    pub class: usize,
    pub order: usize,
    pub rank: usize,
    pub target: i64,
    pub current: i64,
    pub weyl: i64,
    pub n: i64,
    /// Dimension receiving the `|n|` cells, when `n ≠ 0`.
    pub dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildTrace {
    pub y0: VirtualGCW,
    pub steps: Vec<BuildStep>,
    pub ranked: RankedLattice,
    /// `1 + Σ_{K ⊇ H} φ(K)` per class.
    pub targets: Vec<i64>,
}

/// Runs the induction over nontrivial classes in `≼` order.
///
/// Cells of type `G/H` go into the lowest dimension above the current fixed
/// set `Y^H` whose parity matches the sign of the deficit: even to raise the
/// Euler characteristic, odd to lower it.
pub fn build_y(g: &Group, lattice: &SubgroupLattice, phi: &[i64]) -> Result<BuildTrace> {
    let n = lattice.classes().len();
    if phi.len() != n {
        return Err(Error::Precondition(format!("{} values for {n} classes", phi.len())));
    }
    if phi[n - 1] != -1 {
        return Err(Error::Precondition("φ(G) must be -1".into()));
    }
    let big: Vec<BigInt> = phi.iter().map(|&x| BigInt::from(x)).collect();
    verify_resolving(g, lattice, &big)?;
    let t = marks(g, lattice)?;
    let nu = containment_counts(lattice)?;
    let ranked = rank_order(lattice)?;
    let targets: Vec<i64> =
        (0..n).map(|h| 1 + (0..n).map(|k| nu[h][k] * phi[k]).sum::<i64>()).collect();
    let mut w = VirtualGCW::default();
    let mut steps = Vec::new();
    for &h in ranked.order.iter().filter(|&&c| c != lattice.bottom_class()) {
        let current = chi_fixed(&w, &t, h);
        let weyl = t.weyl(h);
        let deficit = targets[h] - current;
        if deficit % weyl != 0 {
            return Err(Error::NonIntegral { class: h, numerator: deficit.to_string(), weyl: weyl.to_string() });
        }
        let count = deficit / weyl;
        let dim = (count != 0).then(|| {
            let floor = w.fixed_dimension(&t, h).map_or(0, |d| d + 1);
            let parity = if count > 0 { 0 } else { 1 };
            if floor % 2 == parity { floor } else { floor + 1 }
        });
        if let Some(d) = dim {
            w.add(h, d, count.unsigned_abs());
        }
        let order = lattice.representative(h).order();
        if let Some(p) = p_group_prime(lattice.representative(h)) {
            w.obligations.push(Obligation::new(
                ObligationKind::Acyclicity,
                format!("fixed set of class {h} (a {p}-group of order {order}) must be mod-{p} acyclic"),
            ));
        }
        steps.push(BuildStep { class: h, order, rank: ranked.rank[h], target: targets[h], current, weyl, n: count, dim });
    }
    Ok(BuildTrace { y0: w, steps, ranked, targets })
}

/// Re-checks the build: no cells of type `G/G`, every nontrivial fixed set
/// has the target Euler characteristic, and cell dimensions respect rank.
pub fn verify_build(lattice: &SubgroupLattice, t: &TableOfMarks, trace: &BuildTrace) -> Result<()> {
    let fail = |m: String| Err(Error::InvalidWitness(m));
    if trace.y0.cells_of_class(lattice.top_class()) > 0 {
        return fail("cells of type G/G".into());
    }
    for k in 1..lattice.classes().len() {
        let chi = chi_fixed(&trace.y0, t, k);
        if chi != trace.targets[k] {
            return fail(format!("class {k}: χ = {chi}, target {}", trace.targets[k]));
        }
    }
    for &(h, d) in trace.y0.cells.keys() {
        if d + 2 > 2 * trace.ranked.rank[h] {
            return fail(format!("class {h} has a cell in dimension {d} above 2·rank − 2"));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiRow {
    pub class: usize,
    pub order: usize,
    pub chi_y0: i64,
    pub chi_join: i64,
    pub chi_final: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct JoinReport {
    /// Set when `Y₀` has no cells at all.
    pub vacuous: bool,
    pub y0_dim: Option<usize>,
    pub y_dim: usize,
    pub join_dim: usize,
    pub final_dim: usize,
    pub depth: usize,
    pub bound: u64,
    pub within_bound: bool,
    pub chi: Vec<ChiRow>,
    /// Coefficients of the final mark vector in the orbit basis, if integral.
    pub burnside: Option<Vec<i64>>,
    pub obligations: Vec<Obligation>,
}

/// Free cells raise `Y₀` to a complex `Y` one dimension higher; `Y * Y` then
/// carries `χ((Y*Y)^K) = 2c − c²` for `c = χ(Y^K)`, and two final free layers
/// make the whole complex acyclic.
pub fn complete_and_join(g: &Group, lattice: &SubgroupLattice, w: &VirtualGCW) -> Result<JoinReport> {
    let t = marks(g, lattice)?;
    let d = depth(g, lattice)?.depth;
    let mut obligations = w.obligations.clone();
    let vacuous = w.is_empty();
    let y0_dim = w.dimension();
    let y_dim = y0_dim.map_or(0, |n| n + 1);
    let join_dim = 2 * y_dim + 1;
    let final_dim = join_dim + 1;
    obligations.push(Obligation::new(
        ObligationKind::Connectivity,
        format!(
            "free cells up to dimension {y_dim} make Y highly connected; their number is not determined here"
        ),
    ));
    obligations.push(Obligation::new(
        ObligationKind::Connectivity,
        format!("two free layers in dimensions {join_dim} and {final_dim} kill the top homology of the join"),
    ));
    let n = lattice.classes().len();
    let chi: Vec<ChiRow> = (0..n)
        .map(|k| {
            let c = chi_fixed(w, &t, k);
            let (chi_join, chi_final) = if k == lattice.bottom_class() { (1, 1) } else { (2 * c - c * c, 2 * c - c * c) };
            ChiRow { class: k, order: lattice.representative(k).order(), chi_y0: c, chi_join, chi_final }
        })
        .collect();
    let mv: Vec<i64> = chi.iter().map(|r| r.chi_final).collect();
    let burnside = BurnsideElement::from_marks(&t, &mv).map(|b| b.coefficients);
    let bound = bd(d as u64);
    Ok(JoinReport {
        vacuous,
        y0_dim,
        y_dim,
        join_dim,
        final_dim,
        depth: d,
        bound,
        within_bound: final_dim as u64 <= bound,
        chi,
        burnside,
        obligations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::{find_unit_resolving, phi_to_i64};
    use crate::gcomplex::{GComplex, SimplicialComplex};
    use crate::group::{alternating, cyclic, symmetric, DEFAULT_ORDER_CAP};
    use std::sync::Arc;

    fn lat(g: &Group) -> SubgroupLattice {
        SubgroupLattice::new(g, DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn ranks() {
        let s3 = symmetric(3);
        let r = rank_order(&lat(&s3)).unwrap();
        assert_eq!(r.rank, vec![3, 2, 2, 1]);
        assert_eq!(r.order, vec![3, 1, 2, 0]);
        let c4 = cyclic(4);
        assert_eq!(rank_order(&lat(&c4)).unwrap().rank, vec![3, 2, 1]);
        let t = Group::trivial();
        assert_eq!(rank_order(&lat(&t)).unwrap().rank, vec![1]);
    }

    #[test]
    fn chi_of_single_orbit() {
        let g = symmetric(3);
        let l = lat(&g);
        let t = marks(&g, &l).unwrap();
        let mut w = VirtualGCW::default();
        assert!((0..4).all(|k| chi_fixed(&w, &t, k) == 0));
        w.add(1, 0, 1);
        for k in 0..4 {
            assert_eq!(chi_fixed(&w, &t, k), t.marks[1][k]);
        }
    }

    #[test]
    fn chi_matches_actual_complex() {
        // S3 on sd(Δ²): cells are the simplices of the subdivision.
        let g = Arc::new(symmetric(3));
        let l = lat(&g);
        let t = marks(&g, &l).unwrap();
        let x = GComplex::new(g.clone(), SimplicialComplex::simplex(2), g.generators().to_vec())
            .unwrap()
            .barycentric_subdivision()
            .unwrap();
        let mut w = VirtualGCW::default();
        let mut seen = std::collections::HashSet::new();
        for s in x.complex().simplices() {
            if seen.contains(s) {
                continue;
            }
            for e in 0..g.order() {
                seen.insert(x.act_simplex(e, s));
            }
            let stab = x.simplex_stabilizer(s);
            w.add(l.class_of(l.index_of(&stab).unwrap()), s.len() - 1, 1);
        }
        for k in 0..l.classes().len() {
            let fixed = x.fixed_subcomplex(l.representative(k));
            assert_eq!(chi_fixed(&w, &t, k), fixed.euler_char());
        }
    }

    #[test]
    fn a5_build_and_join() {
        let g = alternating(5);
        let l = lat(&g);
        let phi = phi_to_i64(&find_unit_resolving(&g, &l).unwrap()).unwrap();
        let trace = build_y(&g, &l, &phi).unwrap();
        let t = marks(&g, &l).unwrap();
        verify_build(&l, &t, &trace).unwrap();
        assert_eq!(trace.y0.cells_of_class(l.top_class()), 0);
        let report = complete_and_join(&g, &l, &trace.y0).unwrap();
        assert!(!report.vacuous);
        assert!(report.final_dim <= 22);
        assert!(report.within_bound);
        assert_eq!(report.chi[l.top_class()].chi_final, 0);
    }

    #[test]
    fn zero_deficit_adds_nothing() {
        let g = alternating(5);
        let l = lat(&g);
        let phi = phi_to_i64(&find_unit_resolving(&g, &l).unwrap()).unwrap();
        let trace = build_y(&g, &l, &phi).unwrap();
        let top = trace.steps.first().unwrap();
        assert_eq!(top.class, l.top_class());
        assert_eq!(top.n, 0);
        assert_eq!(top.dim, None);
    }

    #[test]
    fn preconditions() {
        let g = symmetric(4);
        let l = lat(&g);
        let zero = vec![0; l.classes().len()];
        assert!(matches!(build_y(&g, &l, &zero), Err(Error::Precondition(_))));
        let empty = complete_and_join(&g, &l, &VirtualGCW::default()).unwrap();
        assert!(empty.vacuous);
    }
}
