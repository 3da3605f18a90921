use std::fmt;

use super::Group;

/// A subgroup of a specific host group, as a sorted element list plus a
/// membership bitmap.
#[derive(Clone)]
pub struct Subgroup {
    host: u64,
    elements: Vec<usize>,
    member: Vec<bool>,
    generators: Option<Vec<usize>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup").field("elements", &self.elements).finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Subgroup) -> bool {
        self.host == other.host && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub(super) fn from_sorted(host: &Group, elements: Vec<usize>, generators: Option<Vec<usize>>) -> Self {
        let mut member = vec![false; host.order()];
        elements.iter().for_each(|&g| member[g] = true);
        Subgroup { host: host.uid(), elements, member, generators }
    }

    pub(crate) fn host_uid(&self) -> u64 {
        self.host
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Generators recorded when the subgroup was built by closure.
    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        self.member.get(g).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.host == other.host && self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.elements.iter().filter(|&&g| other.contains(g)).count()
    }
}
