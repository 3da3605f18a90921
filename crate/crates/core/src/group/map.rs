use rayon::prelude::*;

use super::{Group, Subgroup};
use crate::error::{Error, Result};

/// A total function between two groups, stored as its image table, with a
/// flag recording whether it was verified to be a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMap {
    source: u64,
    target: u64,
    target_order: usize,
    images: Vec<u32>,
    homomorphism: bool,
}

impl GroupMap {
    /// Wraps an arbitrary map; the homomorphism flag is computed exhaustively.
    pub fn new(source: &Group, target: &Group, images: Vec<usize>) -> Result<GroupMap> {
        if images.len() != source.order() {
            return Err(Error::InvalidParameters(format!(
                "map has {} images for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        images.iter().try_for_each(|&x| target.check_id(x))?;
        let images: Vec<u32> = images.into_iter().map(|x| x as u32).collect();
        let homomorphism = first_violation(source, target, &images).is_none();
        Ok(GroupMap { source: source.uid(), target: target.uid(), target_order: target.order(), images, homomorphism })
    }

    /// Like [`GroupMap::new`] but fails unless the map is a homomorphism.
    pub fn homomorphism(source: &Group, target: &Group, images: Vec<usize>) -> Result<GroupMap> {
        let map = GroupMap::new(source, target, images)?;
        if !map.homomorphism {
            let images: Vec<u32> = map.images.clone();
            let (g, h) = first_violation(source, target, &images).expect("flag was computed");
            return Err(Error::NotHomomorphism { g, h });
        }
        Ok(map)
    }

    pub fn endomorphism(group: &Group, images: Vec<usize>) -> Result<GroupMap> {
        GroupMap::homomorphism(group, group, images)
    }

    pub fn identity(group: &Group) -> GroupMap {
        GroupMap::endomorphism(group, group.elements().collect()).expect("identity is a homomorphism")
    }

    /// The trivial endomorphism `g -> 1`.
    pub fn zero(group: &Group) -> GroupMap {
        GroupMap::endomorphism(group, vec![0; group.order()]).expect("zero is a homomorphism")
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn source_order(&self) -> usize {
        self.images.len()
    }

    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism
    }

    pub fn is_endomorphism_of(&self, group: &Group) -> bool {
        self.homomorphism && self.source == group.uid() && self.target == group.uid()
    }

    pub fn ensure_endomorphism(&self, group: &Group) -> Result<()> {
        if self.is_endomorphism_of(group) {
            Ok(())
        } else {
            Err(Error::NotEndomorphism)
        }
    }

    pub fn is_bijective(&self) -> bool {
        if self.images.len() != self.target_order {
            return false;
        }
        let mut seen = vec![false; self.target_order];
        self.images.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GroupMap) -> Result<GroupMap> {
        if other.target != self.source {
            return Err(Error::HostMismatch);
        }
        Ok(GroupMap {
            source: other.source,
            target: self.target,
            target_order: self.target_order,
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
            homomorphism: self.homomorphism && other.homomorphism,
        })
    }

    /// `self^k` for an endomorphism; `k = 0` gives the identity.
    pub fn power(&self, group: &Group, k: usize) -> Result<GroupMap> {
        self.ensure_endomorphism(group)?;
        let mut acc = GroupMap::identity(group);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn kernel(&self, source: &Group) -> Result<Subgroup> {
        self.ensure_hom_from(source)?;
        let elems = source.elements().filter(|&g| self.images[g] == 0).collect();
        source.subgroup_from_elements(elems)
    }

    /// Image of a subgroup of the source, as a subgroup of the target.
    pub fn image_of(&self, source: &Group, target: &Group, sub: &Subgroup) -> Result<Subgroup> {
        self.ensure_hom_from(source)?;
        if target.uid() != self.target || !source.owns(sub) {
            return Err(Error::HostMismatch);
        }
        let mut hit = vec![false; target.order()];
        sub.elements().iter().for_each(|&g| hit[self.apply(g)] = true);
        target.subgroup_from_elements(hit.iter().enumerate().filter(|(_, &h)| h).map(|(x, _)| x).collect())
    }

    /// `ψ(G)` for an endomorphism.
    pub fn image(&self, group: &Group) -> Result<Subgroup> {
        self.ensure_endomorphism(group)?;
        self.image_of(group, group, &group.whole())
    }

    pub fn fixed_points(&self, group: &Group) -> Result<Subgroup> {
        self.ensure_endomorphism(group)?;
        group.subgroup_from_elements(group.elements().filter(|&g| self.apply(g) == g).collect())
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&x| (x as usize) < self.images.len() && self.images[x as usize] == x)
    }

    fn ensure_hom_from(&self, source: &Group) -> Result<()> {
        if !self.homomorphism {
            return Err(Error::NotHomomorphism { g: 0, h: 0 });
        }
        if self.source != source.uid() {
            return Err(Error::HostMismatch);
        }
        Ok(())
    }
}

fn first_violation(source: &Group, target: &Group, images: &[u32]) -> Option<(usize, usize)> {
    let f = |x: usize| images[x] as usize;
    let n = source.order();
    (0..n)
        .into_par_iter()
        .find_map_first(|g| (0..n).find(|&h| f(source.mul(g, h)) != target.mul(f(g), f(h))).map(|h| (g, h)))
}
