//! Standard families of permutation groups.

use super::hom::action_images;
use super::Group;
use crate::error::{Error, Result};
use crate::perm::Perm;

fn cycle(degree: usize, points: &[u32]) -> Perm {
    Perm::from_cycles(degree, &[points.to_vec()]).expect("valid cycle")
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> Group {
    assert!(n >= 1, "cyclic group needs n >= 1");
    if n == 1 {
        return Group::trivial();
    }
    let pts: Vec<u32> = (0..n as u32).collect();
    Group::new(n, vec![cycle(n, &pts)]).expect("cyclic")
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Group {
    assert!(n >= 1, "dihedral group needs n >= 1");
    match n {
        1 => cyclic(2),
        2 => Group::from_cycles(4, &[vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]])
            .expect("klein four"),
        _ => {
            let pts: Vec<u32> = (0..n as u32).collect();
            let refl: Vec<u32> = (0..n).map(|i| ((n - i) % n) as u32).collect();
            Group::new(n, vec![cycle(n, &pts), Perm::from_images(refl).expect("reflection")])
                .expect("dihedral")
        }
    }
}

pub fn symmetric(n: usize) -> Group {
    assert!(n >= 1, "symmetric group needs n >= 1");
    if n == 1 {
        return Group::trivial();
    }
    let pts: Vec<u32> = (0..n as u32).collect();
    let mut gens = vec![cycle(n, &[0, 1])];
    if n > 2 {
        gens.push(cycle(n, &pts));
    }
    Group::new(n, gens).expect("symmetric")
}

pub fn alternating(n: usize) -> Group {
    assert!(n >= 1, "alternating group needs n >= 1");
    if n < 3 {
        return Group::new(n, Vec::new()).expect("trivial");
    }
    let gens = (2..n as u32).map(|k| cycle(n, &[0, 1, k])).collect();
    Group::new(n, gens).expect("alternating")
}

pub fn klein_four() -> Group {
    dihedral(2)
}

pub fn quaternion() -> Group {
    Group::from_cycles(
        8,
        &[vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]], vec![vec![0, 4, 2, 6], vec![1, 7, 3, 5]]],
    )
    .expect("quaternion")
}

/// Direct product acting on the disjoint union of the two domains.
pub fn direct_product(g: &Group, h: &Group) -> Group {
    let (dg, dh) = (g.degree(), h.degree());
    let mut gens = Vec::new();
    for p in g.generators() {
        gens.push(p.extended(dg + dh));
    }
    for p in h.generators() {
        let mut images: Vec<u32> = (0..dg as u32).collect();
        images.extend(p.images().iter().map(|&x| x + dg as u32));
        gens.push(Perm::from_images(images).expect("shifted"));
    }
    Group::new(dg + dh, gens).expect("direct product")
}

pub(crate) fn encode_vector(v: &[i64], modulus: i64) -> u32 {
    v.iter().rev().fold(0i64, |acc, &x| acc * modulus + x.rem_euclid(modulus)) as u32
}

pub(crate) fn decode_vector(mut code: u32, rank: usize, modulus: i64) -> Vec<i64> {
    let mut v = Vec::with_capacity(rank);
    for _ in 0..rank {
        v.push(code as i64 % modulus);
        code /= modulus as u32;
    }
    v
}

pub(crate) fn mat_vec_mod(m: &[Vec<i64>], v: &[i64], modulus: i64) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(modulus))
        .collect()
}

/// Permutation of `(Z/modulus)^rank` induced by an integer matrix; errors when not invertible.
pub(crate) fn matrix_perm(m: &[Vec<i64>], rank: usize, modulus: i64) -> Result<Perm> {
    if m.len() != rank || m.iter().any(|r| r.len() != rank) {
        return Err(Error::InvalidInput(format!("expected a {rank}x{rank} matrix")));
    }
    let size = (modulus as u32).pow(rank as u32);
    let images: Vec<u32> = (0..size)
        .map(|c| encode_vector(&mat_vec_mod(m, &decode_vector(c, rank, modulus), modulus), modulus))
        .collect();
    Perm::from_images(images)
        .map_err(|_| Error::NotAnAutomorphism(format!("{m:?} is not invertible mod {modulus}")))
}

/// `(Z/modulus)^rank ⋊ Q`, where the `i`-th generator of `Q` acts by `action[i]`.
///
/// Realized on `(Z/modulus)^rank ⊔ dom(Q)`: `(v, q)` sends `x ↦ M_q x + v` and moves
/// the second block by `q`. The map `q ↦ M_q` is checked to be a homomorphism
/// into the automorphism group.
pub fn semidirect_product(
    modulus: u32,
    rank: usize,
    q: &Group,
    action: &[Vec<Vec<i64>>],
) -> Result<Group> {
    if modulus == 0 {
        return Err(Error::InvalidInput("modulus must be positive".into()));
    }
    if action.len() != q.generators().len() {
        return Err(Error::InvalidInput(format!(
            "{} action matrices for {} generators",
            action.len(),
            q.generators().len()
        )));
    }
    let s = modulus as i64;
    let size = modulus.checked_pow(rank as u32).ok_or(Error::Overflow("semidirect product"))?;
    let mats = action
        .iter()
        .map(|m| matrix_perm(m, rank, s))
        .collect::<Result<Vec<_>>>()?;
    // Homomorphism check for the action.
    action_images(q, &mats).map_err(|e| Error::NotAnAutomorphism(e.to_string()))?;

    let degree = size as usize + q.degree();
    let mut gens = Vec::new();
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        let images: Vec<u32> = (0..size)
            .map(|c| {
                let v = decode_vector(c, rank, s);
                let w: Vec<i64> = v.iter().zip(&e).map(|(a, b)| a + b).collect();
                encode_vector(&w, s)
            })
            .chain(size..degree as u32)
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    for (m, qg) in mats.iter().zip(q.generators()) {
        let images: Vec<u32> = m
            .images()
            .iter()
            .copied()
            .chain(qg.images().iter().map(|&x| x + size))
            .collect();
        gens.push(Perm::from_images(images)?);
    }
    Group::new(degree, gens)
}

fn det_mod(m: &[Vec<i64>], p: i64) -> i64 {
    // Laplace expansion is fine for the small ranks used here.
    let n = m.len();
    if n == 1 {
        return m[0][0].rem_euclid(p);
    }
    let mut acc = 0i64;
    for j in 0..n {
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect()).collect();
        let term = m[0][j] * det_mod(&minor, p);
        acc = if j % 2 == 0 { acc + term } else { acc - term }.rem_euclid(p);
    }
    acc
}

/// Matrix group over `F_p` acting on the nonzero vectors of `F_p^n`.
pub fn linear_group_on_vectors(p: u32, gens: &[Vec<Vec<i64>>]) -> Result<Group> {
    let n = gens.first().map(|m| m.len()).unwrap_or(1);
    let size = p.pow(n as u32);
    let mut perms = Vec::new();
    for m in gens {
        if det_mod(m, p as i64) == 0 {
            return Err(Error::NotAnAutomorphism(format!("{m:?} is singular mod {p}")));
        }
        let full = matrix_perm(m, n, p as i64)?;
        // Point 0 is the zero vector; drop it.
        let images = (1..size).map(|c| full.apply(c) - 1).collect();
        perms.push(Perm::from_images(images)?);
    }
    Group::new(size as usize - 1, perms)
}

/// Matrix group over `F_p` acting on the lines of `F_p^n`.
pub fn projective_group(p: u32, gens: &[Vec<Vec<i64>>]) -> Result<Group> {
    let n = gens.first().map(|m| m.len()).unwrap_or(1);
    let pi = p as i64;
    let normalize = |v: &[i64]| -> Vec<i64> {
        let lead = v.iter().copied().find(|&x| x != 0).expect("nonzero");
        let inv = (1..pi).find(|&k| (k * lead).rem_euclid(pi) == 1).expect("field");
        v.iter().map(|&x| (x * inv).rem_euclid(pi)).collect()
    };
    let size = p.pow(n as u32);
    let mut lines: Vec<Vec<i64>> = (1..size)
        .map(|c| decode_vector(c, n, pi))
        .map(|v| normalize(&v))
        .collect();
    lines.sort();
    lines.dedup();
    let mut perms = Vec::new();
    for m in gens {
        if det_mod(m, pi) == 0 {
            return Err(Error::NotAnAutomorphism(format!("{m:?} is singular mod {p}")));
        }
        let images = lines
            .iter()
            .map(|l| {
                let w = normalize(&mat_vec_mod(m, l, pi));
                lines.binary_search(&w).expect("line") as u32
            })
            .collect();
        perms.push(Perm::from_images(images)?);
    }
    Group::new(lines.len(), perms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(1).order(), 1);
        assert_eq!(cyclic(12).order(), 12);
        assert_eq!(dihedral(1).order(), 2);
        assert_eq!(dihedral(2).order(), 4);
        assert_eq!(dihedral(7).order(), 14);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(quaternion().order(), 8);
        assert!(!quaternion().is_abelian());
        let involutions = (1..8).filter(|&x| quaternion().element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn direct_product_of_coprime_cyclics_is_cyclic() {
        let g = direct_product(&cyclic(2), &cyclic(3));
        assert_eq!(g.order(), 6);
        assert!((0..6).any(|x| g.element_order(x) == 6));
    }

    #[test]
    fn semidirect_orders() {
        let c2 = cyclic(2);
        let g = semidirect_product(3, 2, &c2, &[vec![vec![-1, 0], vec![0, -1]]]).unwrap();
        assert_eq!(g.order(), 18);
        assert!(!g.is_abelian());
        let frob = semidirect_product(5, 1, &cyclic(4), &[vec![vec![2]]]).unwrap();
        assert_eq!(frob.order(), 20);
        // Frobenius group of order 20: no element of order 10 or 20.
        assert!((0..20).all(|x| ![10, 20].contains(&frob.element_order(x))));
    }

    #[test]
    fn semidirect_rejects_non_homomorphic_action() {
        // Z/2 cannot act by multiplication with 2 mod 5 (order 4).
        assert!(matches!(
            semidirect_product(5, 1, &cyclic(2), &[vec![vec![2]]]),
            Err(Error::NotAnAutomorphism(_))
        ));
        // Singular matrix.
        assert!(semidirect_product(4, 1, &cyclic(2), &[vec![vec![2]]]).is_err());
    }

    #[test]
    fn linear_groups() {
        let t = vec![vec![1, 1], vec![0, 1]];
        let w = vec![vec![0, -1], vec![1, 0]];
        assert_eq!(linear_group_on_vectors(5, &[t.clone(), w.clone()]).unwrap().order(), 120);
        assert_eq!(projective_group(7, &[t, w]).unwrap().order(), 168);
    }
}
