//! Table of marks, the Burnside ring at the level of mark vectors, and the
//! lattice of resolving functions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::classify::in_cyc_p;
use crate::error::{Error, Result};
use crate::group::{Group, SubgroupLattice};
use crate::intmat::{integer_kernel, l1_closest};

/// `m[H][K] = |(G/H)^K|` over subgroup classes in lattice order.
#[derive(Clone, Debug, Serialize)]
pub struct TableOfMarks {
    pub class_orders: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub marks: Vec<Vec<i64>>,
}

impl TableOfMarks {
    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    /// `[N_G(H):H]`, the diagonal.
    pub fn weyl(&self, h: usize) -> i64 {
        self.marks[h][h]
    }

    pub fn weyl_orders(&self) -> Vec<i64> {
        (0..self.len()).map(|h| self.weyl(h)).collect()
    }
}

fn require_complete(lattice: &SubgroupLattice) -> Result<()> {
    if lattice.is_complete() {
        Ok(())
    } else {
        Err(Error::LatticeIncomplete)
    }
}

/// `m[H][K] = #{K' ~ K : K' ⊆ H} · |N_G(K)| / |H|`.
pub fn marks(g: &Group, lattice: &SubgroupLattice) -> Result<TableOfMarks> {
    require_complete(lattice)?;
    let n = lattice.classes().len();
    let class_orders: Vec<usize> = (0..n).map(|c| lattice.representative(c).order()).collect();
    let class_sizes: Vec<usize> = lattice.classes().iter().map(|c| c.members.len()).collect();
    let mut m = vec![vec![0i64; n]; n];
    for h in 0..n {
        let hs = lattice.representative(h);
        for k in 0..=h {
            if class_orders[k] > class_orders[h] || class_orders[h] % class_orders[k] != 0 {
                continue;
            }
            let inside = lattice.class(k)
                .members
                .iter()
                .filter(|&&i| lattice.subgroup(i).is_subgroup_of(hs))
                .count();
            let normalizer = g.order() / class_sizes[k];
            m[h][k] = (inside * normalizer / hs.order()) as i64;
        }
    }
    Ok(TableOfMarks { class_orders, class_sizes, marks: m })
}

/// `ν[H][K] = #{K' ∈ [K] : K' ⊇ H}` for representatives `H`.
pub fn containment_counts(lattice: &SubgroupLattice) -> Result<Vec<Vec<i64>>> {
    require_complete(lattice)?;
    let n = lattice.classes().len();
    let mut nu = vec![vec![0i64; n]; n];
    for (h, row) in nu.iter_mut().enumerate() {
        let hs = lattice.representative(h);
        for (k, slot) in row.iter_mut().enumerate() {
            *slot = lattice.class(k)
                .members
                .iter()
                .filter(|&&i| hs.is_subgroup_of(lattice.subgroup(i)))
                .count() as i64;
        }
    }
    Ok(nu)
}

/// An integer combination of the basis orbits `[G/H]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsideElement {
    pub coefficients: Vec<i64>,
}

impl BurnsideElement {
    pub fn basis(n: usize, h: usize) -> Self {
        let mut coefficients = vec![0; n];
        coefficients[h] = 1;
        BurnsideElement { coefficients }
    }

    /// `mv[K] = Σ_H c[H] · m[H][K]`.
    pub fn mark_vector(&self, t: &TableOfMarks) -> Vec<i64> {
        (0..t.len())
            .map(|k| self.coefficients.iter().zip(&t.marks).map(|(c, row)| c * row[k]).sum())
            .collect()
    }

    /// Inverts the triangular marks matrix; `None` if the vector is not integral.
    pub fn from_marks(t: &TableOfMarks, mv: &[i64]) -> Option<Self> {
        let n = t.len();
        let mut c = vec![0i64; n];
        for h in (0..n).rev() {
            let rest: i64 = (h + 1..n).map(|j| c[j] * t.marks[j][h]).sum();
            let num = mv[h] - rest;
            if num % t.marks[h][h] != 0 {
                return None;
            }
            c[h] = num / t.marks[h][h];
        }
        Some(BurnsideElement { coefficients: c })
    }

    pub fn add(&self, other: &Self) -> Self {
        let coefficients =
            self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect();
        BurnsideElement { coefficients }
    }

    /// Product through pointwise multiplication of mark vectors.
    pub fn mul(&self, other: &Self, t: &TableOfMarks) -> Self {
        let a = self.mark_vector(t);
        let b = other.mark_vector(t);
        let prod: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        Self::from_marks(t, &prod).expect("products of G-sets are G-sets")
    }
}

/// Value of the mark vector at the whole group.
pub fn ghost(t: &TableOfMarks, x: &BurnsideElement) -> i64 {
    let top = t.len() - 1;
    x.coefficients.iter().zip(&t.marks).map(|(c, row)| c * row[top]).sum()
}

/// Everything needed to solve for resolving functions over one group.
#[derive(Clone, Debug, Serialize)]
pub struct ResolvingLattice {
    pub weyl: Vec<i64>,
    /// Whether each class representative is cyclic mod some prime.
    pub cyc_p: Vec<bool>,
    pub containment: Vec<Vec<i64>>,
    /// Hermite normal form of the ψ-lattice, columns ordered with the whole
    /// group first and then the remaining classes ascending.
    pub hnf_psi: Vec<Vec<BigInt>>,
    /// The same basis in φ-coordinates, indexed by class.
    pub basis: Vec<Vec<BigInt>>,
}

fn column_order(n: usize) -> Vec<usize> {
    std::iter::once(n - 1).chain(0..n - 1).collect()
}

/// Solves `Σ_{K ⊇ H} φ(K) = 0` over every Cyc_p class `H`, with `φ = w·ψ`.
pub fn resolving_lattice(g: &Group, lattice: &SubgroupLattice) -> Result<ResolvingLattice> {
    let t = marks(g, lattice)?;
    let nu = containment_counts(lattice)?;
    let n = t.len();
    let weyl = t.weyl_orders();
    let cyc_p: Vec<bool> = (0..n).map(|c| in_cyc_p(g, lattice, lattice.representative(c))).collect();
    let order = column_order(n);
    let rows: Vec<Vec<BigInt>> = (0..n)
        .filter(|&h| cyc_p[h])
        .map(|h| order.iter().map(|&k| BigInt::from(nu[h][k] * weyl[k])).collect())
        .collect();
    let hnf_psi = if rows.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect()
    } else {
        integer_kernel(&rows, n)
    };
    let basis = hnf_psi
        .iter()
        .map(|row| {
            let mut phi = vec![BigInt::zero(); n];
            for (col, &k) in order.iter().enumerate() {
                phi[k] = &row[col] * weyl[k];
            }
            phi
        })
        .collect();
    Ok(ResolvingLattice { weyl, cyc_p, containment: nu, hnf_psi, basis })
}

impl ResolvingLattice {
    pub fn top(&self) -> usize {
        self.weyl.len() - 1
    }

    /// Nonnegative generator of the values `φ(G)`.
    pub fn r_invariant(&self) -> BigInt {
        let top = self.top();
        self.basis.iter().fold(BigInt::zero(), |acc, v| acc.gcd(&v[top]))
    }

    /// The φ with `φ(G) = -1` of least ℓ¹ norm, ties broken lexicographically.
    pub fn find_unit_resolving(&self) -> Result<Vec<BigInt>> {
        if !self.r_invariant().is_one() {
            return Err(Error::NoUnitResolving);
        }
        // The HNF puts all of φ(G) into the first row, whose pivot is then 1.
        let x0: Vec<BigInt> = self.basis[0].iter().map(|x| -x).collect();
        Ok(l1_closest(&x0, &self.basis[1..]))
    }
}

pub fn r_invariant(g: &Group, lattice: &SubgroupLattice) -> Result<BigInt> {
    Ok(resolving_lattice(g, lattice)?.r_invariant())
}

pub fn find_unit_resolving(g: &Group, lattice: &SubgroupLattice) -> Result<Vec<BigInt>> {
    resolving_lattice(g, lattice)?.find_unit_resolving()
}

/// Re-checks both resolving-function conditions from the subgroup lattice
/// directly: Weyl divisibility via normalizers, and the containment sums by
/// walking every subgroup containing each Cyc_p representative.
pub fn verify_resolving(g: &Group, lattice: &SubgroupLattice, phi: &[BigInt]) -> Result<()> {
    require_complete(lattice)?;
    let n = lattice.classes().len();
    if phi.len() != n {
        return Err(Error::InvalidResolving(format!("{} values for {n} classes", phi.len())));
    }
    for c in 0..n {
        let h = lattice.representative(c);
        let w = g.normalizer(h).order() / h.order();
        if !(&phi[c] % BigInt::from(w)).is_zero() {
            return Err(Error::InvalidResolving(format!("Weyl order {w} does not divide φ at class {c}")));
        }
    }
    for c in 0..n {
        let h = lattice.representative(c);
        if !in_cyc_p(g, lattice, h) {
            continue;
        }
        let sum = lattice
            .subgroups()
            .iter()
            .enumerate()
            .filter(|(_, k)| h.is_subgroup_of(k))
            .fold(BigInt::zero(), |acc, (i, _)| acc + &phi[lattice.class_of(i)]);
        if !sum.is_zero() {
            return Err(Error::InvalidResolving(format!("containment sum {sum} at class {c}")));
        }
    }
    Ok(())
}

/// Converts to machine integers, for downstream χ bookkeeping.
pub fn phi_to_i64(phi: &[BigInt]) -> Result<Vec<i64>> {
    phi.iter().map(|x| x.to_i64().ok_or(Error::Overflow("resolving function"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, symmetric, DEFAULT_ORDER_CAP};

    fn lat(g: &Group) -> SubgroupLattice {
        SubgroupLattice::new(g, DEFAULT_ORDER_CAP).unwrap()
    }

    /// `|(G/H)^K|` by testing each coset.
    fn marks_oracle(g: &Group, l: &SubgroupLattice, h: usize, k: usize) -> i64 {
        let hs = l.representative(h);
        let ks = l.representative(k);
        let mut seen = vec![false; g.order()];
        let mut count = 0;
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            for &y in hs.elements() {
                seen[g.mul(x, y)] = true;
            }
            let xi = g.inv(x);
            if ks.elements().iter().all(|&kk| hs.contains(g.mul(xi, g.mul(kk, x)))) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn s3_marks() {
        let g = symmetric(3);
        let l = lat(&g);
        let t = marks(&g, &l).unwrap();
        // classes: 1, C2, C3, S3
        assert_eq!(t.class_orders, vec![1, 2, 3, 6]);
        assert_eq!(t.marks[0][0], 6);
        assert_eq!(t.marks[1][0], 3);
        assert_eq!(t.marks[1][1], 1);
        assert_eq!(t.marks[2][2], 2);
        assert!(t.marks[3].iter().all(|&x| x == 1));
        for h in 0..4 {
            for k in 0..4 {
                assert_eq!(t.marks[h][k], marks_oracle(&g, &l, h, k));
            }
        }
    }

    #[test]
    fn marks_match_oracle_on_s4_and_a5() {
        for g in [symmetric(4), alternating(5)] {
            let l = lat(&g);
            let t = marks(&g, &l).unwrap();
            for h in 0..t.len() {
                for k in 0..t.len() {
                    assert_eq!(t.marks[h][k], marks_oracle(&g, &l, h, k));
                    if k > h {
                        assert_eq!(t.marks[h][k], 0);
                    }
                }
            }
        }
    }

    #[test]
    fn ghost_examples() {
        let g = symmetric(3);
        let t = marks(&g, &lat(&g)).unwrap();
        assert_eq!(ghost(&t, &BurnsideElement::basis(4, 3)), 1);
        assert_eq!(ghost(&t, &BurnsideElement::basis(4, 0)), 0);
        // S3 fixes no coset of the normal C3, so m[C3][S3] = 0.
        assert_eq!(t.marks[2][3], 0);
        let x = BurnsideElement { coefficients: vec![0, 0, 2, -1] };
        assert_eq!(ghost(&t, &x), -1);
    }

    /// Orbit decomposition of `G/H × G/K`, identified by stabilizer class.
    fn product_oracle(g: &Group, l: &SubgroupLattice, h: usize, k: usize) -> Vec<i64> {
        let hs = l.representative(h).clone();
        let ks = l.representative(k).clone();
        let coset = |s: &crate::group::Subgroup, x: usize| -> usize {
            s.elements().iter().map(|&y| g.mul(x, y)).min().unwrap()
        };
        let mut seen = std::collections::HashSet::new();
        let mut out = vec![0i64; l.classes().len()];
        for a in 0..g.order() {
            for b in 0..g.order() {
                let p = (coset(&hs, a), coset(&ks, b));
                if seen.contains(&p) {
                    continue;
                }
                for x in 0..g.order() {
                    seen.insert((coset(&hs, g.mul(x, p.0)), coset(&ks, g.mul(x, p.1))));
                }
                let stab: Vec<usize> = (0..g.order())
                    .filter(|&x| coset(&hs, g.mul(x, p.0)) == p.0 && coset(&ks, g.mul(x, p.1)) == p.1)
                    .collect();
                let s = g.subgroup_from_elements(&stab).unwrap();
                out[l.class_of(l.index_of(&s).unwrap())] += 1;
            }
        }
        out
    }

    #[test]
    fn product_matches_orbit_count() {
        let g = symmetric(3);
        let l = lat(&g);
        let t = marks(&g, &l).unwrap();
        for h in 0..4 {
            for k in 0..4 {
                let p = BurnsideElement::basis(4, h).mul(&BurnsideElement::basis(4, k), &t);
                assert_eq!(p.coefficients, product_oracle(&g, &l, h, k));
            }
        }
    }

    #[test]
    fn containment_examples() {
        let g = symmetric(3);
        let l = lat(&g);
        let nu = containment_counts(&l).unwrap();
        assert_eq!(nu[0], vec![1, 3, 1, 1]);
        assert_eq!(nu[1][3], 1);
        for h in 0..4 {
            assert_eq!(nu[h][h], 1);
        }
    }

    #[test]
    fn cyclic_lattices_vanish_at_top() {
        for n in [1, 2, 3, 5, 6] {
            let g = cyclic(n);
            let rl = resolving_lattice(&g, &lat(&g)).unwrap();
            assert!(rl.r_invariant().is_zero());
            assert!(rl.basis.iter().all(|v| v[rl.top()].is_zero()));
        }
        let g = cyclic(5);
        let rl = resolving_lattice(&g, &lat(&g)).unwrap();
        assert!(rl.basis.is_empty());
        assert_eq!(find_unit_resolving(&g, &lat(&g)).unwrap_err(), Error::NoUnitResolving);
    }

    #[test]
    fn a5_has_unit_resolving() {
        let g = alternating(5);
        let l = lat(&g);
        let rl = resolving_lattice(&g, &l).unwrap();
        assert!(rl.r_invariant().is_one());
        let phi = rl.find_unit_resolving().unwrap();
        assert_eq!(phi[rl.top()], BigInt::from(-1));
        verify_resolving(&g, &l, &phi).unwrap();
        for v in &rl.basis {
            verify_resolving(&g, &l, v).unwrap();
        }
    }

    #[test]
    fn s4_has_none() {
        let g = symmetric(4);
        let l = lat(&g);
        let r = r_invariant(&g, &l).unwrap();
        assert!(!r.is_one());
        assert!(find_unit_resolving(&g, &l).is_err());
    }
}
