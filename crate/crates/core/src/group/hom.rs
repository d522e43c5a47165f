use std::sync::Arc;

use super::{Group, Subgroup};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Extends generator images to a permutation for every element of `g`.
///
/// Walks the Cayley graph; the images define a homomorphism exactly when every
/// edge `x -> x*s` is consistent, which is what is checked.
pub fn action_images(g: &Group, gen_images: &[Perm]) -> Result<Vec<Perm>> {
    if gen_images.len() != g.generators().len() {
        return Err(Error::NotAHomomorphism(format!(
            "{} images for {} generators",
            gen_images.len(),
            g.generators().len()
        )));
    }
    let degree = gen_images.first().map(|p| p.degree()).unwrap_or(0);
    if let Some(p) = gen_images.iter().find(|p| p.degree() != degree) {
        return Err(Error::DegreeMismatch(degree, p.degree()));
    }
    let mut img: Vec<Option<Perm>> = vec![None; g.order()];
    img[g.identity()] = Some(Perm::identity(degree));
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let px = img[x].clone().expect("visited");
        for (&s, ps) in g.generator_indices().iter().zip(gen_images) {
            let y = g.mul(x, s);
            let py = px.compose(ps);
            match &img[y] {
                Some(existing) if *existing != py => {
                    return Err(Error::NotAHomomorphism(format!(
                        "images disagree at element {:?}",
                        g.element(y)
                    )))
                }
                Some(_) => {}
                None => {
                    img[y] = Some(py);
                    queue.push(y);
                }
            }
        }
    }
    Ok(img.into_iter().map(|p| p.expect("connected")).collect())
}

/// A homomorphism given on generators, with its full element table.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<Group>,
    target: Arc<Group>,
    gen_images: Vec<usize>,
    map: Vec<usize>,
}

impl GroupHom {
    /// Verifies that the generator images extend to a homomorphism.
    pub fn new(source: Arc<Group>, target: Arc<Group>, gen_images: Vec<usize>) -> Result<Self> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} images for {} generators",
                gen_images.len(),
                source.generators().len()
            )));
        }
        if let Some(&bad) = gen_images.iter().find(|&&x| x >= target.order()) {
            return Err(Error::NotAHomomorphism(format!("image index {bad} out of range")));
        }
        let mut map: Vec<Option<usize>> = vec![None; source.order()];
        map[source.identity()] = Some(target.identity());
        let mut queue = vec![source.identity()];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let fx = map[x].expect("visited");
            for (&s, &fs) in source.generator_indices().iter().zip(&gen_images) {
                let y = source.mul(x, s);
                let fy = target.mul(fx, fs);
                match map[y] {
                    Some(existing) if existing != fy => {
                        return Err(Error::NotAHomomorphism(format!(
                            "relation violated at {:?}",
                            source.element(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        map[y] = Some(fy);
                        queue.push(y);
                    }
                }
            }
        }
        let map = map.into_iter().map(|x| x.expect("connected")).collect();
        Ok(GroupHom { source, target, gen_images, map })
    }

    pub fn identity(g: Arc<Group>) -> Self {
        let gen_images = g.generator_indices().to_vec();
        let map = (0..g.order()).collect();
        GroupHom { source: g.clone(), target: g, gen_images, map }
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn gen_images(&self) -> &[usize] {
        &self.gen_images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Subgroup {
        let elems: Vec<usize> = (0..self.source.order())
            .filter(|&x| self.map[x] == self.target.identity())
            .collect();
        self.source.subgroup_from_elements(&elems).expect("kernel is a subgroup")
    }

    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = h.generators().iter().map(|&x| self.map[x]).collect();
        self.target.generate(&gens)
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, d: &Subgroup) -> Subgroup {
        let elems: Vec<usize> =
            (0..self.source.order()).filter(|&x| d.contains(self.map[x])).collect();
        self.source.subgroup_from_elements(&elems).expect("preimage is a subgroup")
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if !Arc::ptr_eq(&self.target, &other.source) && *self.target.elements() != *other.source.elements() {
            return Err(Error::NotAHomomorphism("composable maps need matching groups".into()));
        }
        let gen_images = self.gen_images.iter().map(|&x| other.apply(x)).collect();
        let map = self.map.iter().map(|&x| other.apply(x)).collect();
        Ok(GroupHom { source: self.source.clone(), target: other.target.clone(), gen_images, map })
    }
}

/// `G/N` as a permutation group on left cosets, together with the projection.
pub fn quotient(g: &Arc<Group>, n: &Subgroup) -> Result<(Arc<Group>, GroupHom)> {
    if !g.is_normal(n) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut count = 0;
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &m in n.elements() {
            coset_of[g.mul(x, m)] = count;
        }
        count += 1;
    }
    let reps: Vec<usize> = {
        let mut r = vec![usize::MAX; count];
        for x in (0..g.order()).rev() {
            r[coset_of[x]] = x;
        }
        r
    };
    let degree = count.max(1);
    let gens: Vec<Perm> = g
        .generator_indices()
        .iter()
        .map(|&s| {
            let images = reps.iter().map(|&r| coset_of[g.mul(s, r)] as u32).collect();
            Perm::from_images(images).expect("coset action")
        })
        .collect();
    let q = Arc::new(Group::new(degree, gens.clone())?);
    let images = gens.iter().map(|p| q.index_of(p).expect("generator")).collect();
    let hom = GroupHom::new(g.clone(), q.clone(), images)?;
    Ok((q, hom))
}
