use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A permutation of `0..n`, stored as its image list.
///
/// Composition is right-to-left: `p.compose(&q)` is the permutation
/// `x -> p(q(x))`, matching the way endomorphisms compose.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Perm {
    images: Vec<u32>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.images, f)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n as u32).collect() }
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (x, &y) in images.iter().enumerate() {
            if y >= n {
                return Err(Error::InvalidPermutation(format!("{x} -> {y} out of range")));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidPermutation(format!("{y} hit twice")));
            }
        }
        Ok(Perm { images: images.into_iter().map(|y| y as u32).collect() })
    }

    /// Builds a permutation from a closure without validating it. Callers
    /// guarantee bijectivity (e.g. the closure is a group translation).
    pub(crate) fn from_fn_unchecked(n: usize, f: impl Fn(usize) -> usize) -> Perm {
        Perm { images: (0..n).map(|x| f(x) as u32).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    /// `x -> self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::HostMismatch);
        }
        Ok(Perm { images: other.images.iter().map(|&y| self.images[y as usize]).collect() })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Perm { images: inv }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.degree() == other.degree()
            && (0..self.degree()).all(|x| self.apply(other.apply(x)) == other.apply(self.apply(x)))
    }

    /// `self * other * self^-1`.
    pub fn conjugate(&self, other: &Perm) -> Result<Perm> {
        self.compose(other)?.compose(&self.inverse())
    }
}

/// Free-function form of [`Perm::compose`].
pub fn perm_compose(p: &Perm, q: &Perm) -> Result<Perm> {
    p.compose(q)
}

/// Free-function form of [`Perm::inverse`].
pub fn perm_inverse(p: &Perm) -> Perm {
    p.inverse()
}

/// The permutation group generated by `gens`, by breadth-first closure.
/// Intended for degrees and group sizes in the tens to low thousands.
pub fn perm_closure(degree: usize, gens: &[Perm]) -> Result<Vec<Perm>> {
    if gens.iter().any(|g| g.degree() != degree) {
        return Err(Error::HostMismatch);
    }
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut next = 0;
    while next < out.len() {
        let x = out[next].clone();
        next += 1;
        for g in gens {
            let y = x.compose(g)?;
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// All permutations of `0..degree` commuting with every element of `gens`,
/// found by a backtracking search over point images with constraint
/// propagation `pi(g(x)) = g(pi(x))`. Makes no assumption on the structure of
/// the generated group; it is fast when that group is transitive.
pub fn centralizer_in_symmetric(degree: usize, gens: &[Perm]) -> Result<Vec<Perm>> {
    if gens.iter().any(|g| g.degree() != degree) {
        return Err(Error::HostMismatch);
    }
    let inverses: Vec<Perm> = gens.iter().map(Perm::inverse).collect();
    let mut search = CentralizerSearch {
        gens: gens.iter().chain(&inverses).collect(),
        image: vec![None; degree],
        used: vec![false; degree],
        trail: Vec::new(),
        found: Vec::new(),
    };
    search.run();
    Ok(search.found)
}

struct CentralizerSearch<'a> {
    gens: Vec<&'a Perm>,
    image: Vec<Option<u32>>,
    used: Vec<bool>,
    trail: Vec<usize>,
    found: Vec<Perm>,
}

impl CentralizerSearch<'_> {
    fn run(&mut self) {
        let Some(x) = self.image.iter().position(Option::is_none) else {
            let images = self.image.iter().map(|y| y.expect("complete") as usize).collect();
            self.found.push(Perm::from_images(images).expect("injective by construction"));
            return;
        };
        for y in 0..self.image.len() {
            if self.used[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.propagate(x, y) {
                self.run();
            }
            self.undo(mark);
        }
    }

    fn propagate(&mut self, x: usize, y: usize) -> bool {
        let mut work = vec![(x, y)];
        while let Some((x, y)) = work.pop() {
            match self.image[x] {
                Some(z) if z as usize == y => continue,
                Some(_) => return false,
                None if self.used[y] => return false,
                None => {}
            }
            self.image[x] = Some(y as u32);
            self.used[y] = true;
            self.trail.push(x);
            for g in &self.gens {
                work.push((g.apply(x), g.apply(y)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            let y = self.image[x].take().expect("trail entries are assigned");
            self.used[y as usize] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Perm {
        Perm::from_images((0..n).map(|x| (x + 1) % n).collect()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn compose_is_right_to_left() {
        let p = Perm::from_images(vec![1, 0, 2]).unwrap();
        let q = Perm::from_images(vec![0, 2, 1]).unwrap();
        let pq = p.compose(&q).unwrap();
        for x in 0..3 {
            assert_eq!(pq.apply(x), p.apply(q.apply(x)));
        }
    }

    #[test]
    fn inverse_cancels() {
        let p = Perm::from_images(vec![2, 0, 3, 1]).unwrap();
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert!(p.inverse().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn mismatched_degrees_are_rejected() {
        assert_eq!(cycle(3).compose(&cycle(4)), Err(Error::HostMismatch));
    }

    #[test]
    fn closure_of_a_cycle_is_cyclic() {
        assert_eq!(perm_closure(5, &[cycle(5)]).unwrap().len(), 5);
    }

    #[test]
    fn centralizer_of_a_full_cycle_is_its_powers() {
        let c = centralizer_in_symmetric(6, &[cycle(6)]).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.iter().all(|p| p.commutes_with(&cycle(6))));
    }

    #[test]
    fn centralizer_of_nothing_is_everything() {
        assert_eq!(centralizer_in_symmetric(4, &[]).unwrap().len(), 24);
    }
}
