//! Simplicial homology through Smith normal form of boundary matrices.

use serde::Serialize;

use super::SimplicialComplex;
use crate::error::Result;
use crate::intmat::{rank_mod_p, smith_invariants};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Invariant factors greater than one (always empty over a field).
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Homology {
    /// Degree of `groups[0]`: `-1` for reduced homology, `0` otherwise.
    pub first_degree: i64,
    pub groups: Vec<HomologyGroup>,
}

impl Homology {
    pub fn degree(&self, d: i64) -> HomologyGroup {
        let i = d - self.first_degree;
        if i < 0 || i as usize >= self.groups.len() {
            return HomologyGroup { rank: 0, torsion: Vec::new() };
        }
        self.groups[i as usize].clone()
    }

    pub fn vanishes(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    pub fn euler_char(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let d = i as i64 + self.first_degree;
                if d.rem_euclid(2) == 0 { g.rank as i64 } else { -(g.rank as i64) }
            })
            .sum()
    }

    /// Drops trailing zero groups so that equal homology compares equal.
    pub fn trimmed(mut self) -> Self {
        while self.groups.last().is_some_and(HomologyGroup::is_zero) {
            self.groups.pop();
        }
        self
    }
}

/// Boundary matrix `∂_d : C_d → C_{d-1}` as rows indexed by `(d-1)`-simplices.
/// With `augmented`, `∂_0` is the augmentation onto one copy of the integers.
fn boundary(x: &SimplicialComplex, d: usize, augmented: bool) -> Vec<Vec<i64>> {
    let cols: Vec<&Vec<u32>> = x.simplices_of_dim(d).collect();
    if d == 0 {
        return if augmented { vec![vec![1; cols.len()]] } else { Vec::new() };
    }
    let rows: Vec<&Vec<u32>> = x.simplices_of_dim(d - 1).collect();
    let row_index: std::collections::HashMap<&Vec<u32>, usize> =
        rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, s) in cols.iter().enumerate() {
        for skip in 0..s.len() {
            let face: Vec<u32> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
            let sign = if skip % 2 == 0 { 1 } else { -1 };
            m[row_index[&face]][j] = sign;
        }
    }
    m
}

fn compute(x: &SimplicialComplex, coeff: Coefficients, reduced: bool) -> Result<Homology> {
    let dim = x.dimension();
    let top = dim.max(0) as usize;
    let sizes: Vec<usize> = (0..=top).map(|d| x.simplices_of_dim(d).count()).collect();
    // ranks[d] = rank ∂_d and torsion[d] = invariant factors of ∂_d; ∂_{top+1} = 0.
    let mut ranks = vec![0usize; top + 2];
    let mut torsion = vec![Vec::new(); top + 2];
    for d in 0..=top {
        let m = boundary(x, d, reduced);
        if m.is_empty() || m[0].is_empty() {
            continue;
        }
        match coeff {
            Coefficients::Integers => {
                let inv = smith_invariants(&m)?;
                ranks[d] = inv.len();
                torsion[d] = inv.into_iter().filter(|&f| f > 1).collect();
            }
            Coefficients::Prime(p) => ranks[d] = rank_mod_p(&m, p),
        }
    }
    let mut groups = Vec::new();
    if reduced {
        // C_{-1} has rank one; ∂_0 is the augmentation.
        groups.push(HomologyGroup { rank: 1 - ranks[0], torsion: Vec::new() });
    }
    if dim >= 0 {
        for d in 0..=top {
            let rank = sizes[d] - ranks[d] - ranks[d + 1];
            groups.push(HomologyGroup { rank, torsion: torsion[d + 1].clone() });
        }
    }
    Ok(Homology { first_degree: if reduced { -1 } else { 0 }, groups })
}

pub fn homology(x: &SimplicialComplex, coeff: Coefficients) -> Result<Homology> {
    compute(x, coeff, false)
}

/// Reduced homology; the empty complex has a single class in degree `-1`.
pub fn reduced_homology(x: &SimplicialComplex, coeff: Coefficients) -> Result<Homology> {
    compute(x, coeff, true)
}
