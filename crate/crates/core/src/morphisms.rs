//! Endomorphisms: construction, enumeration and the commutator conditions
//! that decide which regular families are subgroups.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Group, GroupMap, Subgroup};

const UNSET: usize = usize::MAX;

/// `[g, ψ] = g·ψ(g)⁻¹`.
pub fn psi_commutator(group: &Group, psi: &GroupMap, g: usize) -> Result<usize> {
    psi.ensure_endomorphism(group)?;
    group.check_id(g)?;
    Ok(group.mul(g, group.inv(psi.apply(g))))
}

/// `[G, ψ] = ⟨[g, ψ] : g ∈ G⟩`.
pub fn psi_commutator_subgroup(group: &Group, psi: &GroupMap) -> Result<Subgroup> {
    psi.ensure_endomorphism(group)?;
    let values: Vec<usize> = group.elements().map(|g| group.mul(g, group.inv(psi.apply(g)))).collect();
    group.generated_subgroup(&values)
}

pub fn is_fixed_point_free(group: &Group, psi: &GroupMap) -> Result<bool> {
    psi.ensure_endomorphism(group)?;
    Ok(group.elements().skip(1).all(|g| psi.apply(g) != g))
}

/// The three images under `ψ` whose position relative to the centre decides
/// everything else.
#[derive(Debug, Clone)]
pub struct ConditionSubgroups {
    /// `ψ([G, G])`
    pub psi_derived: Subgroup,
    /// `ψ([[G, ψ], G])`
    pub psi_twisted: Subgroup,
    /// `ψ([ψ(G), G])`
    pub psi_image_commutator: Subgroup,
    pub center: Subgroup,
}

pub fn condition_subgroups(group: &Group, psi: &GroupMap) -> Result<ConditionSubgroups> {
    psi.ensure_endomorphism(group)?;
    let whole = group.whole();
    let image = psi.image(group)?;
    let twisted = psi_commutator_subgroup(group, psi)?;
    let apply = |s: &Subgroup| psi.image_of(group, group, s);
    Ok(ConditionSubgroups {
        psi_derived: apply(&group.commutator_subgroup(&whole, &whole)?)?,
        psi_twisted: apply(&group.commutator_subgroup(&twisted, &whole)?)?,
        psi_image_commutator: apply(&group.commutator_subgroup(&image, &whole)?)?,
        center: group.center(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EndoFlags {
    /// `ψ([G,G]) = 1`, i.e. `ψ` is abelian.
    pub koch_abelian: bool,
    /// `ψ([[G,ψ],G]) ≤ Z(G)`
    pub thm1_d: bool,
    /// `ψ([ψ(G),G]) ≤ Z(G)`
    pub thm2_c: bool,
    /// `ψ([G,G]) ≤ Z(G)`
    pub thm2_b2: bool,
    pub fpf: bool,
    pub idempotent: bool,
    /// `ψ([[G,ψ],G]) = 1`
    pub twisted_vanishes: bool,
    /// `ψ([ψ(G),G]) = 1`
    pub image_commutator_vanishes: bool,
}

#[derive(Debug, Clone)]
pub struct EndoProfile {
    pub psi: GroupMap,
    pub flags: EndoFlags,
}

pub fn classify(group: &Group, psi: &GroupMap) -> Result<EndoProfile> {
    let c = condition_subgroups(group, psi)?;
    let flags = EndoFlags {
        koch_abelian: c.psi_derived.is_trivial(),
        thm1_d: c.psi_twisted.is_subset_of(&c.center),
        thm2_c: c.psi_image_commutator.is_subset_of(&c.center),
        thm2_b2: c.psi_derived.is_subset_of(&c.center),
        fpf: is_fixed_point_free(group, psi)?,
        idempotent: psi.is_idempotent(),
        twisted_vanishes: c.psi_twisted.is_trivial(),
        image_commutator_vanishes: c.psi_image_commutator.is_trivial(),
    };
    Ok(EndoProfile { psi: psi.clone(), flags })
}

/// A short generating set, chosen greedily by largest gain for small groups
/// and by largest element order otherwise.
pub fn small_generating_set(group: &Group) -> Vec<usize> {
    let n = group.order();
    let mut gens = Vec::new();
    let mut current = group.trivial();
    if n <= 512 {
        while current.order() < n {
            let best = group
                .elements()
                .into_par_iter()
                .filter(|&g| !current.contains(g))
                .map(|g| {
                    let mut trial = gens.clone();
                    trial.push(g);
                    (group.generated_subgroup(&trial).expect("valid ids").order(), std::cmp::Reverse(g))
                })
                .max()
                .expect("some element lies outside a proper subgroup")
                .1
                 .0;
            gens.push(best);
            current = group.generated_subgroup(&gens).expect("valid ids");
        }
    } else {
        let mut by_order: Vec<usize> = group.elements().collect();
        by_order.sort_by_key(|&g| std::cmp::Reverse(group.element_order(g)));
        for g in by_order {
            if current.order() == n {
                break;
            }
            if !current.contains(g) {
                gens.push(g);
                current = group.generated_subgroup(&gens).expect("valid ids");
            }
        }
    }
    gens
}

fn ensure_generates(group: &Group, gens: &[usize]) -> Result<()> {
    if group.generated_subgroup(gens)?.order() != group.order() {
        return Err(Error::DoesNotGenerate(gens.to_vec()));
    }
    Ok(())
}

/// Extends `gens[i] -> images[i]` (for the first `images.len()` generators)
/// along the Cayley graph of the subgroup they generate. Returns `None` if
/// two paths disagree; unreached elements stay [`UNSET`].
fn extend_partial(source: &Group, target: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![UNSET; source.order()];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut next = 0;
    while next < queue.len() {
        let x = queue[next];
        next += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let fy = target.mul(map[x], t);
            if map[y] == UNSET {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

struct Search<'a> {
    source: &'a Group,
    target: &'a Group,
    gens: &'a [usize],
    admissible: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(source: &'a Group, target: &'a Group, gens: &'a [usize], exact_orders: bool) -> Self {
        let target_orders: Vec<usize> = target.elements().map(|t| target.element_order(t)).collect();
        let admissible = gens
            .iter()
            .map(|&s| {
                let o = source.element_order(s);
                target
                    .elements()
                    .filter(|&t| if exact_orders { target_orders[t] == o } else { o.is_multiple_of(target_orders[t]) })
                    .collect()
            })
            .collect();
        Search { source, target, gens, admissible }
    }

    fn dfs(&self, assigned: &mut Vec<usize>, visit: &mut dyn FnMut(Vec<usize>) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(map) = extend_partial(self.source, self.target, &self.gens[..assigned.len()], assigned) else {
            return ControlFlow::Continue(());
        };
        let j = assigned.len();
        if j == self.gens.len() {
            return visit(map);
        }
        for &t in &self.admissible[j] {
            assigned.push(t);
            let flow = self.dfs(assigned, visit);
            assigned.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn first_images(&self) -> Vec<Option<usize>> {
        match self.admissible.first() {
            Some(first) => first.iter().copied().map(Some).collect(),
            None => vec![None],
        }
    }

    fn run_from(&self, first: Option<usize>, visit: &mut dyn FnMut(Vec<usize>) -> ControlFlow<()>) -> ControlFlow<()> {
        let mut assigned: Vec<usize> = first.into_iter().collect();
        self.dfs(&mut assigned, visit)
    }
}

/// Every homomorphism `source -> target` as an image table, each exactly once,
/// in lexicographic order of generator images.
pub fn enumerate_homomorphisms(source: &Group, target: &Group, gens: &[usize]) -> Result<Vec<Vec<usize>>> {
    ensure_generates(source, gens)?;
    let search = Search::new(source, target, gens, false);
    let parts: Vec<Vec<Vec<usize>>> = search
        .first_images()
        .into_par_iter()
        .map(|first| {
            let mut found = Vec::new();
            let _ = search.run_from(first, &mut |m| {
                found.push(m);
                ControlFlow::Continue(())
            });
            found
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

/// Every endomorphism of `group`, each verified as a homomorphism.
pub fn enumerate_endomorphisms(group: &Group, gens: &[usize]) -> Result<Vec<GroupMap>> {
    enumerate_homomorphisms(group, group, gens)?
        .into_iter()
        .map(|images| GroupMap::endomorphism(group, images))
        .collect()
}

/// An isomorphism `a -> b` as an image table, if one exists.
pub fn find_isomorphism(a: &Group, b: &Group) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.is_abelian() != b.is_abelian() || a.center().order() != b.center().order() {
        return None;
    }
    let profile = |g: &Group| {
        let mut orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
        orders.sort_unstable();
        orders
    };
    if profile(a) != profile(b) {
        return None;
    }
    let gens = small_generating_set(a);
    let search = Search::new(a, b, &gens, true);
    search.first_images().into_par_iter().find_map_first(|first| {
        let mut hit = None;
        let _ = search.run_from(first, &mut |m| {
            let mut seen = vec![false; b.order()];
            if m.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                hit = Some(m);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        hit
    })
}

pub fn is_isomorphic(a: &Group, b: &Group) -> bool {
    find_isomorphism(a, b).is_some()
}

/// The endomorphism determined by generator images `g_i -> x_i`.
pub fn extend_from_generators(group: &Group, pairs: &[(usize, usize)]) -> Result<GroupMap> {
    let gens: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let images: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    images.iter().try_for_each(|&x| group.check_id(x))?;
    ensure_generates(group, &gens)?;
    let map = extend_partial(group, group, &gens, &images).ok_or(Error::InconsistentImages)?;
    GroupMap::endomorphism(group, map)
}

/// Parses a full image table: `|G|` whitespace-separated ids.
pub fn parse_endomorphism_table(group: &Group, text: &str) -> Result<GroupMap> {
    let images = text
        .split_whitespace()
        .map(|tok| tok.parse::<usize>().map_err(|_| Error::Parse(format!("bad element id {tok:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if images.len() != group.order() {
        return Err(Error::Parse(format!("expected {} images, found {}", group.order(), images.len())));
    }
    GroupMap::endomorphism(group, images)
}

/// Parses `g1->x1,g2->x2,...` (`→` is accepted for `->`).
pub fn parse_generator_form(group: &Group, text: &str) -> Result<GroupMap> {
    let pairs = text
        .split(',')
        .map(|item| {
            let item = item.replace('→', "->");
            let (g, x) = item.split_once("->").ok_or_else(|| Error::Parse(format!("expected g->x, found {item:?}")))?;
            let id = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad element id {s:?}")));
            Ok((id(g)?, id(x)?))
        })
        .collect::<Result<Vec<_>>>()?;
    pairs.iter().try_for_each(|&(g, _)| group.check_id(g))?;
    extend_from_generators(group, &pairs)
}
