//! Named groups built from short recipes, with expected invariants.
//!
//! Recipe grammar (factors separated by `*` form a direct product):
//!
//! ```text
//! cyclic:n | dihedral:n | symmetric:n | alternating:n | klein | quaternion
//! semidirect:modulus:rank:<factor>:<json matrices>
//! linear:p:<json matrices> | projective:p:<json matrices>
//! ```
//!
//! `dihedral:n` has order `2n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{self, Group};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub recipe: String,
    pub order: usize,
    pub dress: bool,
    pub depth: usize,
    /// `None` when the invariant is not recorded.
    pub r: Option<u32>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Group> {
        let g = from_recipe(&self.recipe)?;
        if g.order() != self.order {
            return Err(Error::InvalidInput(format!(
                "recipe {} gives order {}, expected {}",
                self.recipe,
                g.order(),
                self.order
            )));
        }
        Ok(g)
    }
}

fn entry(name: &str, recipe: &str, order: usize, dress: bool, depth: usize, r: u32) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        recipe: recipe.to_string(),
        order,
        dress,
        depth,
        r: Some(r),
    }
}

fn is_prime_power(n: usize) -> bool {
    n > 1 && {
        let p = (2..=n).find(|p| n % p == 0).expect("n > 1");
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        m == 1
    }
}

fn big_omega(mut n: usize) -> usize {
    let mut k = 0;
    let mut p = 2;
    while n > 1 {
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        p += 1;
    }
    k
}

/// The full catalog in its fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 1..=24 {
        out.push(entry(&format!("C{n}"), &format!("cyclic:{n}"), n, true, big_omega(n) + 1, 0));
    }
    for n in 2..=12 {
        let o = 2 * n;
        // Cyclic modulo a normal p-subgroup exactly when n is a prime power.
        let r = if is_prime_power(n) { 0 } else { 2 };
        out.push(entry(&format!("D{o}"), &format!("dihedral:{n}"), o, true, big_omega(o) + 1, r));
    }
    let fixed = [
        ("V4", "klein", 4, true, 3, 0),
        ("Q8", "quaternion", 8, true, 4, 0),
        ("S3", "symmetric:3", 6, true, 3, 0),
        ("A4", "alternating:4", 12, true, 4, 0),
        ("S4", "symmetric:4", 24, true, 5, 2),
        ("A5", "alternating:5", 60, false, 5, 1),
        ("S5", "symmetric:5", 120, false, 6, 1),
        ("C2xC2xC3", "cyclic:2*cyclic:2*cyclic:3", 12, true, 4, 0),
        ("Dic3", "semidirect:3:1:cyclic:4:[[[-1]]]", 12, true, 4, 0),
        ("C3^2:C2", "semidirect:3:2:cyclic:2:[[[-1,0],[0,-1]]]", 18, true, 4, 0),
        ("C3xS3", "cyclic:3*symmetric:3", 18, true, 4, 0),
        ("F20", "semidirect:5:1:cyclic:4:[[[2]]]", 20, true, 4, 0),
        ("Dic5", "semidirect:5:1:cyclic:4:[[[-1]]]", 20, true, 4, 0),
        ("SL(2,3)", "linear:3:[[[0,1],[-1,0]],[[1,1],[0,1]]]", 24, true, 5, 0),
        ("S3xS3", "symmetric:3*symmetric:3", 36, true, 5, 2),
        ("C3xS4", "cyclic:3*symmetric:4", 72, false, 6, 1),
        ("A5xC2", "alternating:5*cyclic:2", 120, false, 6, 1),
        ("SL(2,5)", "linear:5:[[[0,1],[-1,0]],[[1,1],[0,1]]]", 120, false, 6, 1),
        ("PSL(2,7)", "projective:7:[[[0,1],[-1,0]],[[1,1],[0,1]]]", 168, false, 6, 1),
    ];
    for (name, recipe, order, dress, depth, r) in fixed {
        out.push(entry(name, recipe, order, dress, depth, r));
    }
    out
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

fn bad(recipe: &str, why: &str) -> Error {
    Error::InvalidInput(format!("recipe {recipe:?}: {why}"))
}

fn parse_num<T: std::str::FromStr>(recipe: &str, s: Option<&str>) -> Result<T> {
    s.and_then(|s| s.trim().parse().ok()).ok_or_else(|| bad(recipe, "expected a number"))
}

fn parse_matrices(recipe: &str, s: &str) -> Result<Vec<Vec<Vec<i64>>>> {
    serde_json::from_str(s).map_err(|e| bad(recipe, &format!("matrices: {e}")))
}

/// Splits on `*` outside brackets.
fn split_product(recipe: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in recipe.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            '*' if depth == 0 => {
                parts.push(&recipe[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&recipe[start..]);
    parts
}

pub fn from_recipe(recipe: &str) -> Result<Group> {
    let parts = split_product(recipe);
    let mut acc = factor(parts[0].trim())?;
    for p in &parts[1..] {
        acc = group::direct_product(&acc, &factor(p.trim())?);
    }
    Ok(acc)
}

fn factor(recipe: &str) -> Result<Group> {
    let (kind, rest) = recipe.split_once(':').unwrap_or((recipe, ""));
    let positive = |n: usize| if n == 0 { Err(bad(recipe, "size must be positive")) } else { Ok(n) };
    match kind {
        "cyclic" => Ok(group::cyclic(positive(parse_num(recipe, Some(rest))?)?)),
        "dihedral" => Ok(group::dihedral(positive(parse_num(recipe, Some(rest))?)?)),
        "symmetric" => Ok(group::symmetric(positive(parse_num(recipe, Some(rest))?)?)),
        "alternating" => Ok(group::alternating(positive(parse_num(recipe, Some(rest))?)?)),
        "klein" => Ok(group::klein_four()),
        "quaternion" => Ok(group::quaternion()),
        "linear" | "projective" => {
            let (p, mats) = rest.split_once(':').ok_or_else(|| bad(recipe, "expected p:matrices"))?;
            let p: u32 = parse_num(recipe, Some(p))?;
            let mats = parse_matrices(recipe, mats)?;
            if kind == "linear" {
                group::linear_group_on_vectors(p, &mats)
            } else {
                group::projective_group(p, &mats)
            }
        }
        "semidirect" => {
            let mut it = rest.splitn(3, ':');
            let modulus: u32 = parse_num(recipe, it.next())?;
            let rank: usize = parse_num(recipe, it.next())?;
            let tail = it.next().ok_or_else(|| bad(recipe, "missing acting group"))?;
            let cut = tail.rfind(":[").ok_or_else(|| bad(recipe, "missing action matrices"))?;
            let q = factor(&tail[..cut])?;
            let mats = parse_matrices(recipe, &tail[cut + 1..])?;
            group::semidirect_product(modulus, rank, &q, &mats)
        }
        _ => Err(bad(recipe, "unknown constructor")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_recipe_has_its_order() {
        let cat = catalog();
        assert!(cat.len() >= 25);
        for e in &cat {
            e.build().unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
    }

    #[test]
    fn names_are_unique() {
        let cat = catalog();
        let mut names: Vec<_> = cat.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), cat.len());
    }

    #[test]
    fn required_groups_present() {
        for n in 1..=24 {
            assert!(lookup(&format!("C{n}")).is_some());
        }
        for name in ["S3", "S4", "S5", "A4", "A5", "Q8", "V4", "C2xC2xC3", "C3^2:C2", "F20"] {
            assert!(lookup(name).is_some(), "{name}");
        }
        assert!(!lookup("A5").unwrap().dress);
        assert!(lookup("S4").unwrap().dress);
        assert_eq!(lookup("A5").unwrap().depth, 5);
    }

    #[test]
    fn recipe_errors() {
        for r in ["", "cyclic", "cyclic:0", "cyclic:x", "nope:3", "semidirect:3:1:cyclic:2", "linear:5:[[1]"] {
            assert!(from_recipe(r).is_err(), "{r}");
        }
    }

    #[test]
    fn products_and_semidirects() {
        assert_eq!(from_recipe("cyclic:2*cyclic:3").unwrap().order(), 6);
        let g = from_recipe("semidirect:3:1:cyclic:2:[[[-1]]]").unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert!(from_recipe("semidirect:5:1:cyclic:4:[[[2]]]*cyclic:2").unwrap().order() == 40);
    }
}
