//! Finite groups as Cayley tables.
//!
//! Element ids are `0..order` and id `0` is always the identity. Groups are
//! immutable once built; every derived object (subgroups, maps, quotients,
//! products) is a fresh value.

mod cayley;
mod map;
mod perm;
mod subgroup;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::check::DEFAULT_SEED;
use crate::error::{Error, Result};

pub use map::GroupMap;
pub use perm::{centralizer_in_symmetric, perm_closure, perm_compose, perm_inverse, Perm};
pub use subgroup::Subgroup;

/// Orders up to this are checked for associativity on every triple.
pub const ASSOCIATIVITY_EXHAUSTIVE_CAP: usize = 256;
/// Random triples checked above [`ASSOCIATIVITY_EXHAUSTIVE_CAP`].
pub const ASSOCIATIVITY_SAMPLES: usize = 1_000_000;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

fn fresh_uid() -> u64 {
    NEXT_UID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Clone)]
pub struct Group {
    uid: u64,
    name: String,
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("name", &self.name).field("order", &self.order).finish()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Group) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Group {}

impl Group {
    /// Builds a group from a row-major Cayley table, validating identity at
    /// id 0, the Latin-square property, inverses and associativity.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Group> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if order > u32::MAX as usize || table.len() != order * order {
            return Err(Error::InvalidTable(format!("expected {} entries, found {}", order * order, table.len())));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let table: Vec<u32> = table.into_iter().map(|x| x as u32).collect();
        Group::validated(name.into(), order, table)
    }

    /// Builds the Cayley table from a multiplication closure, then validates.
    pub fn from_fn(name: impl Into<String>, order: usize, mul: impl Fn(usize, usize) -> usize + Sync) -> Result<Group> {
        let table: Vec<usize> = (0..order * order).into_par_iter().map(|gh| mul(gh / order, gh % order)).collect();
        Group::from_table(name, order, table)
    }

    fn validated(name: String, order: usize, table: Vec<u32>) -> Result<Group> {
        let at = |g: usize, h: usize| table[g * order + h] as usize;
        for g in 0..order {
            if at(0, g) != g || at(g, 0) != g {
                return Err(Error::InvalidTable(format!("id 0 is not an identity (element {g})")));
            }
        }
        let mut inv = vec![u32::MAX; order];
        let mut seen = vec![false; order];
        for (g, slot) in inv.iter_mut().enumerate() {
            seen.iter_mut().for_each(|s| *s = false);
            for h in 0..order {
                let x = at(g, h);
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!("row {g} repeats {x}")));
                }
                if x == 0 {
                    *slot = h as u32;
                }
            }
        }
        for (g, &i) in inv.iter().enumerate() {
            if at(i as usize, g) != 0 {
                return Err(Error::InvalidTable(format!("element {g} has no two-sided inverse")));
            }
        }
        let assoc = |(g, h, k): (usize, usize, usize)| at(at(g, h), k) == at(g, at(h, k));
        let bad = if order <= ASSOCIATIVITY_EXHAUSTIVE_CAP {
            (0..order * order).into_par_iter().find_map_any(|gh| {
                let (g, h) = (gh / order, gh % order);
                (0..order).map(|k| (g, h, k)).find(|&t| !assoc(t))
            })
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            let triples: Vec<_> = (0..ASSOCIATIVITY_SAMPLES)
                .map(|_| (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order)))
                .collect();
            triples.into_par_iter().find_any(|&t| !assoc(t))
        };
        if let Some((g, h, k)) = bad {
            return Err(Error::InvalidTable(format!("not associative at ({g}, {h}, {k})")));
        }
        Ok(Group { uid: fresh_uid(), name, order, table, inv })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Identity token; clones share it, independently built groups do not.
    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Unchecked product `g * h`; panics if an id is out of range.
    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h] as usize
    }

    /// Checked product `g * h`.
    pub fn multiply(&self, g: usize, h: usize) -> Result<usize> {
        self.check_id(g)?;
        self.check_id(h)?;
        Ok(self.mul(g, h))
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    /// `x * y * x^-1`.
    #[inline]
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inv(x))
    }

    /// `[a, b] = a * b * a^-1 * b^-1`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn check_id(&self, g: usize) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::OutOfRange { id: g, order: self.order })
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..g).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.elements().map(|g| self.element_order(g)).fold(1, |l, k| l / gcd(l, k) * k)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self, (0..self.order).collect(), None)
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(self, vec![0], Some(Vec::new()))
    }

    /// `{z : z*g = g*z for all g}`.
    pub fn center(&self) -> Subgroup {
        let elements: Vec<usize> = (0..self.order)
            .into_par_iter()
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_sorted(self, elements, None)
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Result<Subgroup> {
        gens.iter().try_for_each(|&g| self.check_id(g))?;
        Ok(self.close(gens.iter().copied()))
    }

    fn close(&self, candidates: impl IntoIterator<Item = usize>) -> Subgroup {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut list = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        for s in candidates {
            if member[s] {
                continue;
            }
            gens.push(s);
            let mut next = 0;
            while next < list.len() {
                let x = list[next];
                next += 1;
                for &t in &gens {
                    let y = self.mul(x, t);
                    if !member[y] {
                        member[y] = true;
                        list.push(y);
                    }
                }
            }
        }
        list.sort_unstable();
        Subgroup::from_sorted(self, list, Some(gens))
    }

    /// Validates that `elements` form a subgroup and wraps them.
    pub fn subgroup_from_elements(&self, mut elements: Vec<usize>) -> Result<Subgroup> {
        elements.iter().try_for_each(|&g| self.check_id(g))?;
        elements.sort_unstable();
        elements.dedup();
        let mut member = vec![false; self.order];
        elements.iter().for_each(|&g| member[g] = true);
        let closed = member[0]
            && elements.iter().all(|&a| member[self.inv(a)])
            && elements.iter().all(|&a| elements.iter().all(|&b| member[self.mul(a, b)]));
        if !closed {
            return Err(Error::InvalidParameters("element set is not a subgroup".into()));
        }
        Ok(Subgroup::from_sorted(self, elements, None))
    }

    pub fn owns(&self, sub: &Subgroup) -> bool {
        sub.host_uid() == self.uid
    }

    fn ensure_owns(&self, sub: &Subgroup) -> Result<()> {
        if self.owns(sub) {
            Ok(())
        } else {
            Err(Error::HostMismatch)
        }
    }

    /// `[A, B]`, the subgroup generated by all `[a, b]`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.ensure_owns(a)?;
        self.ensure_owns(b)?;
        let mut hit = vec![false; self.order];
        for &x in a.elements() {
            for &y in b.elements() {
                hit[self.commutator(x, y)] = true;
            }
        }
        Ok(self.close(hit.iter().enumerate().filter(|(_, &h)| h).map(|(c, _)| c)))
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g).expect("same host")
    }

    /// `G = γ1 ≥ γ2 ≥ ...` with `γ(i+1) = [γi, G]`, stopping at the first
    /// term that is trivial or repeats.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().expect("non-empty");
            if last.is_trivial() {
                return series;
            }
            let next = self.commutator_subgroup(last, &whole).expect("same host");
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotency class, or `None` if the group is not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series.last().expect("non-empty").is_trivial().then(|| series.len() - 1)
    }

    pub fn is_normal(&self, n: &Subgroup) -> Result<bool> {
        self.ensure_owns(n)?;
        Ok((0..self.order).all(|g| n.elements().iter().all(|&x| n.contains(self.conj(g, x)))))
    }

    /// `G/N` with its projection. Cosets are numbered by their smallest
    /// element, so the identity coset gets id 0.
    pub fn quotient(&self, n: &Subgroup) -> Result<(Group, GroupMap)> {
        if !self.is_normal(n)? {
            return Err(Error::NotNormal);
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset[g] == usize::MAX {
                for &x in n.elements() {
                    coset[self.mul(g, x)] = reps.len();
                }
                reps.push(g);
            }
        }
        let q = reps.len();
        let table = (0..q * q).map(|ij| coset[self.mul(reps[ij / q], reps[ij % q])]).collect();
        let quotient = Group::from_table(format!("{}/N{}", self.name, n.order()), q, table)?;
        let projection = GroupMap::new(self, &quotient, coset)?;
        Ok((quotient, projection))
    }

    /// The opposite group `g *' h = h * g`.
    pub fn reversed(&self) -> Group {
        let n = self.order;
        let table = (0..n * n).map(|gh| self.table[(gh % n) * n + gh / n]).collect();
        Group { uid: fresh_uid(), name: format!("{}^op", self.name), order: n, table, inv: self.inv.clone() }
    }

    /// Re-indexes a subgroup as a group in its own right. Returns the group and
    /// the embedding (new id -> host id); the identity stays at id 0.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> Result<(Group, Vec<usize>)> {
        self.ensure_owns(sub)?;
        let elems = sub.elements().to_vec();
        let mut index = vec![usize::MAX; self.order];
        elems.iter().enumerate().for_each(|(i, &g)| index[g] = i);
        let m = elems.len();
        let table = (0..m * m).map(|ij| index[self.mul(elems[ij / m], elems[ij % m])]).collect();
        let group = Group::from_table(format!("{}<{}>", self.name, m), m, table)?;
        Ok((group, elems))
    }

    /// Left regular representation `λ(g): h -> g*h`.
    pub fn lambda(&self, g: usize) -> Perm {
        Perm::from_fn_unchecked(self.order, |h| self.mul(g, h))
    }

    /// Right regular representation `ρ(g): h -> h*g^-1`.
    pub fn rho(&self, g: usize) -> Perm {
        let gi = self.inv(g);
        Perm::from_fn_unchecked(self.order, |h| self.mul(h, gi))
    }

    /// Conjugation `ι(g): h -> g*h*g^-1`.
    pub fn iota(&self, g: usize) -> Perm {
        Perm::from_fn_unchecked(self.order, |h| self.conj(g, h))
    }

    pub fn lambda_rho_iota(&self, g: usize) -> Result<(Perm, Perm, Perm)> {
        self.check_id(g)?;
        Ok((self.lambda(g), self.rho(g), self.iota(g)))
    }
}

/// Coordinates of an iterated direct product `A1 x A2 x ... x Ak`, encoded
/// lexicographically (the last factor varies fastest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCoords {
    orders: Vec<usize>,
}

impl ProductCoords {
    pub fn factor_orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn encode(&self, parts: &[usize]) -> usize {
        debug_assert_eq!(parts.len(), self.orders.len());
        parts.iter().zip(&self.orders).fold(0, |acc, (&x, &n)| acc * n + x)
    }

    pub fn decode(&self, mut id: usize) -> Vec<usize> {
        let mut parts = vec![0; self.orders.len()];
        for (slot, &n) in parts.iter_mut().zip(&self.orders).rev() {
            *slot = id % n;
            id /= n;
        }
        parts
    }
}

/// The direct product of several groups, with its coordinate system.
pub fn direct_product_of(factors: &[&Group]) -> Result<(Group, ProductCoords)> {
    if factors.is_empty() {
        return Err(Error::InvalidParameters("empty direct product".into()));
    }
    let coords = ProductCoords { orders: factors.iter().map(|g| g.order()).collect() };
    let order: usize = coords.orders.iter().product();
    let name = factors.iter().map(|g| g.name()).collect::<Vec<_>>().join(" x ");
    let group = Group::from_fn(name, order, |a, b| {
        let (xa, xb) = (coords.decode(a), coords.decode(b));
        let parts: Vec<usize> = factors.iter().zip(xa.iter().zip(&xb)).map(|(g, (&x, &y))| g.mul(x, y)).collect();
        coords.encode(&parts)
    })?;
    Ok((group, coords))
}

/// `A x B` with the canonical injections and projections.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: Group,
    pub coords: ProductCoords,
    pub inject_left: GroupMap,
    pub inject_right: GroupMap,
    pub project_left: GroupMap,
    pub project_right: GroupMap,
}

pub fn direct_product(a: &Group, b: &Group) -> Result<DirectProduct> {
    let (group, coords) = direct_product_of(&[a, b])?;
    let inject_left = GroupMap::new(a, &group, a.elements().map(|x| coords.encode(&[x, 0])).collect())?;
    let inject_right = GroupMap::new(b, &group, b.elements().map(|y| coords.encode(&[0, y])).collect())?;
    let project_left = GroupMap::new(&group, a, group.elements().map(|g| coords.decode(g)[0]).collect())?;
    let project_right = GroupMap::new(&group, b, group.elements().map(|g| coords.decode(g)[1]).collect())?;
    Ok(DirectProduct { group, coords, inject_left, inject_right, project_left, project_right })
}
