//! Integer linear algebra: Hermite and Smith normal forms, integer kernels,
//! LLL reduction and ℓ¹-closest points of affine lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Row echelon form over the integers using Euclidean row operations; the
/// first `cols` columns drive the elimination, remaining columns ride along.
/// Returns the number of pivot rows.
fn echelon(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            let pivot = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()));
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut clean = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let (head, tail) = m.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * y;
                }
                if !m[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !m[r][c].is_zero() {
            r += 1;
        }
    }
    r
}

/// Row-style Hermite normal form: positive pivots, entries above each pivot
/// reduced into `[0, pivot)`, zero rows dropped.
pub fn hnf(rows: &[Vec<BigInt>]) -> IntMatrix {
    let Some(width) = rows.first().map(|r| r.len()) else { return Vec::new() };
    let mut m = rows.to_vec();
    let rank = echelon(&mut m, width);
    m.truncate(rank);
    let mut col = 0;
    for r in 0..m.len() {
        while m[r][col].is_zero() {
            col += 1;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = m[i][col].div_floor(&m[r][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = m.split_at_mut(r);
            for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
        col += 1;
    }
    m
}

/// Basis (in Hermite normal form) of `{x ∈ Z^n : A x = 0}`.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> IntMatrix {
    let m = a.len();
    let mut aug: IntMatrix = (0..n)
        .map(|j| {
            let mut row: Vec<BigInt> = a.iter().map(|r| r[j].clone()).collect();
            row.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let rank = echelon(&mut aug, m);
    let kernel: IntMatrix = aug[rank..].iter().map(|r| r[m..].to_vec()).collect();
    hnf(&kernel)
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_invariants(rows: &[Vec<i64>]) -> Result<Vec<i64>> {
    let overflow = Error::Overflow("smith normal form");
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let h = a.len();
    let w = a.first().map(|r| r.len()).unwrap_or(0);
    let mut out = Vec::new();
    let mut t = 0;
    while t < h.min(w) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..h {
            for j in t..w {
                let v = a[i][j];
                if v != 0 && best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                    if v.abs() == 1 {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| a[bi][bj].abs() == 1) {
                break;
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            let p = a[t][t];
            for i in t + 1..h {
                if a[i][t] == 0 {
                    continue;
                }
                let q = a[i][t].div_euclid(p);
                for j in t..w {
                    let v = a[t][j].checked_mul(q).ok_or(overflow.clone())?;
                    a[i][j] = a[i][j].checked_sub(v).ok_or(overflow.clone())?;
                }
                if a[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..w {
                if a[t][j] == 0 {
                    continue;
                }
                let q = a[t][j].div_euclid(p);
                for row in a.iter_mut().skip(t) {
                    let v = row[t].checked_mul(q).ok_or(overflow.clone())?;
                    row[j] = row[j].checked_sub(v).ok_or(overflow.clone())?;
                }
                if a[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // Enforce divisibility of the remaining block by the pivot.
                let p = a[t][t];
                let bad = (t + 1..h).find(|&i| (t + 1..w).any(|j| a[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        for j in t..w {
                            a[t][j] = a[t][j].checked_add(a[i][j]).ok_or(overflow.clone())?;
                        }
                    }
                    None => break,
                }
            } else {
                // Move the smallest remaining entry of row/column t to the pivot.
                let mut bi = t;
                let mut bj = t;
                for i in t..h {
                    if a[i][t] != 0 && (a[bi][bj] == 0 || a[i][t].abs() < a[bi][bj].abs()) {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t..w {
                    if a[t][j] != 0 && (a[bi][bj] == 0 || a[t][j].abs() < a[bi][bj].abs()) {
                        bi = t;
                        bj = j;
                    }
                }
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    Ok(out)
}

pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let p = p as i128;
    let mut a: Vec<Vec<i128>> =
        rows.iter().map(|r| r.iter().map(|&x| (x as i128).rem_euclid(p)).collect()).collect();
    let h = a.len();
    let w = a.first().map(|r| r.len()).unwrap_or(0);
    let inv = |x: i128| -> i128 {
        let (mut t, mut nt, mut r, mut nr) = (0i128, 1i128, p, x);
        while nr != 0 {
            let q = r / nr;
            (t, nt) = (nt, t - q * nt);
            (r, nr) = (nr, r - q * nr);
        }
        t.rem_euclid(p)
    };
    let mut rank = 0;
    for c in 0..w {
        let Some(piv) = (rank..h).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = (*x * s) % p;
        }
        for i in 0..h {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..w {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>, Vec<Vec<BigRational>>) {
    let k = b.len();
    let rat: Vec<Vec<BigRational>> =
        b.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut norms: Vec<BigRational> = Vec::with_capacity(k);
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        let mut v = rat[i].clone();
        for j in 0..i {
            mu[i][j] = dot(&rat[i], &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (star, norms, mu)
}

/// Exact LLL reduction (δ = 3/4) of linearly independent rows.
pub fn lll(basis: &[Vec<BigInt>]) -> IntMatrix {
    let mut b = basis.to_vec();
    let k = b.len();
    if k <= 1 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let (_, mut norms, mut mu) = gram_schmidt(&b);
    let mut i = 1;
    while i < k {
        for j in (0..i).rev() {
            if mu[i][j].abs() > half {
                let q = mu[i][j].round().to_integer();
                let (head, tail) = b.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= &q * y;
                }
                let qr = BigRational::from_integer(q);
                for l in 0..=j {
                    let sub = if l == j { qr.clone() } else { &qr * &mu[j][l] };
                    mu[i][l] -= sub;
                }
            }
        }
        let lhs = &norms[i] + &mu[i][i - 1] * &mu[i][i - 1] * &norms[i - 1];
        if lhs >= &delta * &norms[i - 1] {
            i += 1;
        } else {
            b.swap(i, i - 1);
            (_, norms, mu) = gram_schmidt(&b);
            i = (i - 1).max(1);
        }
    }
    b
}

fn l1(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc + x.abs())
}

fn better(cand: &[BigInt], best: &[BigInt]) -> bool {
    let (a, b) = (l1(cand), l1(best));
    a < b || (a == b && cand < best)
}

/// The point of `x0 + span_Z(basis)` with least ℓ¹ norm, ties broken by the
/// lexicographically least coordinate vector.
///
/// LLL-reduces the basis, then enumerates every lattice point in the ℓ²-ball of
/// radius equal to the best ℓ¹ norm found so far; ℓ² ≤ ℓ¹ makes this exhaustive.
pub fn l1_closest(x0: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    if basis.is_empty() {
        return x0.to_vec();
    }
    let b = lll(basis);
    let k = b.len();
    let (star, norms, mu) = gram_schmidt(&b);
    let f = |x: &BigRational| x.to_f64().expect("finite");
    let bn: Vec<f64> = norms.iter().map(f).collect();
    let muf: Vec<Vec<f64>> = mu.iter().map(|r| r.iter().map(f).collect()).collect();
    // Target c = -x0 in Gram-Schmidt coordinates.
    let c: Vec<BigRational> = x0.iter().map(|x| BigRational::from_integer(-x)).collect();
    let gamma: Vec<BigRational> = (0..k).map(|i| dot(&c, &star[i]) / &norms[i]).collect();
    let proj = gamma.iter().zip(&norms).fold(BigRational::zero(), |acc, (g, n)| acc + g * g * n);
    let perp = f(&(dot(&c, &c) - proj)).max(0.0);
    let gamma: Vec<f64> = gamma.iter().map(f).collect();

    let point = |t: &[i64]| -> Vec<BigInt> {
        let mut v = x0.to_vec();
        for (ti, bi) in t.iter().zip(&b) {
            if *ti != 0 {
                let ti = BigInt::from(*ti);
                for (x, y) in v.iter_mut().zip(bi) {
                    *x += &ti * y;
                }
            }
        }
        v
    };

    // Babai rounding for the starting radius.
    let mut t = vec![0i64; k];
    for i in (0..k).rev() {
        let center = gamma[i] - (i + 1..k).map(|j| muf[j][i] * t[j] as f64).sum::<f64>();
        t[i] = center.round() as i64;
    }
    let mut best = point(&t);
    let mut radius2 = l1(&best).to_f64().expect("finite").powi(2);

    struct Search<'a> {
        k: usize,
        bn: &'a [f64],
        mu: &'a [Vec<f64>],
        gamma: &'a [f64],
    }
    fn recurse(
        s: &Search,
        level: usize,
        partial: f64,
        t: &mut Vec<i64>,
        radius2: &mut f64,
        visit: &mut dyn FnMut(&[i64]) -> Option<f64>,
    ) {
        let slack = |r: f64| r * (1.0 + 1e-9) + 1e-6;
        let center = s.gamma[level] - (level + 1..s.k).map(|j| s.mu[j][level] * t[j] as f64).sum::<f64>();
        let room = (slack(*radius2) - partial).max(0.0) / s.bn[level];
        let span = room.sqrt();
        let lo = (center - span).ceil() as i64;
        let hi = (center + span).floor() as i64;
        for v in lo..=hi {
            let d = v as f64 - center;
            let next = partial + s.bn[level] * d * d;
            if next > slack(*radius2) {
                continue;
            }
            t[level] = v;
            if level == 0 {
                if let Some(r2) = visit(t) {
                    *radius2 = r2;
                }
            } else {
                recurse(s, level - 1, next, t, radius2, visit);
            }
        }
        t[level] = 0;
    }
    let search = Search { k, bn: &bn, mu: &muf, gamma: &gamma };
    let mut t = vec![0i64; k];
    let mut visit = |t: &[i64]| -> Option<f64> {
        let cand = point(t);
        if better(&cand, &best) {
            best = cand;
            return Some(l1(&best).to_f64().expect("finite").powi(2));
        }
        None
    };
    recurse(&search, k - 1, perp, &mut t, &mut radius2, &mut visit);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_small() {
        let h = hnf(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(h, big(&[&[2, 4, 4], &[0, 6, 0], &[0, 0, 12]]));
    }

    #[test]
    fn kernel_is_exact() {
        let a = big(&[&[1, 1, 1], &[0, 2, 4]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k, big(&[&[1, -2, 1]]));
        let a = big(&[&[2, 2]]);
        assert_eq!(integer_kernel(&a, 2), big(&[&[1, -1]]));
        assert_eq!(integer_kernel(&big(&[&[1, 0], &[0, 1]]), 2).len(), 0);
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_invariants(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap(), vec![2, 6, 12]);
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]).unwrap(), vec![1, 6]);
        assert_eq!(smith_invariants(&[vec![0, 0]]).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn rank_mod_two_differs_from_rational() {
        let m = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 2);
        assert_eq!(smith_invariants(&m).unwrap().len(), 2);
    }

    #[test]
    fn lll_keeps_lattice() {
        let b = big(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        let r = lll(&b);
        assert_eq!(hnf(&r), hnf(&b));
    }

    #[test]
    fn closest_matches_brute_force() {
        let x0: Vec<BigInt> = [7, -3, 5].iter().map(|&x| BigInt::from(x)).collect();
        let basis = big(&[&[2, 1, 0], &[0, 3, -1]]);
        let got = l1_closest(&x0, &basis);
        let mut best: Option<Vec<BigInt>> = None;
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let v: Vec<BigInt> = (0..3)
                    .map(|i| &x0[i] + BigInt::from(a) * &basis[0][i] + BigInt::from(b) * &basis[1][i])
                    .collect();
                if best.as_ref().map_or(true, |bb| better(&v, bb)) {
                    best = Some(v);
                }
            }
        }
        assert_eq!(got, best.unwrap());
    }
}
