use std::sync::Arc;

use super::{BitSet, Group};
use crate::{Error, Result};

/// A subgroup of a finite group, stored as a sorted member list plus a bit set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: Arc<Group>,
    members: Vec<usize>,
    mask: BitSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.members == other.members
    }
}

impl Subgroup {
    /// Smallest subgroup containing `generators`.
    pub fn closure(group: &Arc<Group>, generators: &[usize]) -> Result<Subgroup> {
        for &g in generators {
            group.check_id(g)?;
        }
        let mut mask = BitSet::new(group.order());
        mask.insert(0);
        let mut members = vec![0];
        let mut next = 0;
        while next < members.len() {
            let h = members[next];
            next += 1;
            for &g in generators {
                let hg = group.mul(h, g);
                if mask.insert(hg) {
                    members.push(hg);
                }
            }
        }
        members.sort_unstable();
        Ok(Subgroup {
            group: group.clone(),
            members,
            mask,
        })
    }

    /// Wraps an explicit member set, checking the subgroup axioms.
    pub fn from_members(group: &Arc<Group>, members: &[usize]) -> Result<Subgroup> {
        let mut mask = BitSet::new(group.order());
        for &m in members {
            group.check_id(m)?;
            mask.insert(m);
        }
        let sorted: Vec<usize> = mask.iter().collect();
        let sub = Subgroup {
            group: group.clone(),
            members: sorted,
            mask,
        };
        if !sub.contains(0) {
            return Err(Error::InvalidInput(
                "subgroup must contain the identity".into(),
            ));
        }
        for &a in &sub.members {
            if !sub.contains(group.inv(a)) {
                return Err(Error::InvalidInput(
                    "member set not closed under inverses".into(),
                ));
            }
            for &b in &sub.members {
                if !sub.contains(group.mul(a, b)) {
                    return Err(Error::InvalidInput(
                        "member set not closed under products".into(),
                    ));
                }
            }
        }
        Ok(sub)
    }

    pub fn trivial(group: &Arc<Group>) -> Subgroup {
        Subgroup::closure(group, &[]).expect("no generators")
    }

    pub fn whole(group: &Arc<Group>) -> Subgroup {
        Subgroup::from_members(group, &(0..group.order()).collect::<Vec<_>>())
            .expect("whole group is a subgroup")
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    /// Whether `c H c⁻¹ = H`.
    pub fn is_normalized_by(&self, c: usize) -> bool {
        let g = &self.group;
        let ci = g.inv(c);
        self.members
            .iter()
            .all(|&h| self.contains(g.mul(g.mul(c, h), ci)))
    }

    pub fn is_normal(&self) -> bool {
        (0..self.group.order()).all(|c| self.is_normalized_by(c))
    }

    /// `N(H) = {c : cHc⁻¹ = H}` by brute force over `G`.
    ///
    /// Also checks that every left coset of `H` lies entirely inside or
    /// entirely outside `N(H)`, and that the canonical transversal meets
    /// `N(H)` in exactly `|N(H)|/|H|` representatives.
    pub fn normalizer(&self) -> Result<Subgroup> {
        let g = &self.group;
        let members: Vec<usize> = (0..g.order())
            .filter(|&c| self.is_normalized_by(c))
            .collect();
        let normalizer = Subgroup::from_members(g, &members)?;
        if !self.members.iter().all(|&h| normalizer.contains(h)) {
            return Err(Error::InvariantViolated(
                "normalizer does not contain H".into(),
            ));
        }
        let transversal = self.left_transversal();
        for &c in transversal.reps() {
            let inside = self
                .members
                .iter()
                .filter(|&&h| normalizer.contains(g.mul(c, h)))
                .count();
            if inside != 0 && inside != self.order() {
                return Err(Error::InvariantViolated(format!(
                    "coset of {} straddles the normalizer",
                    g.format_element(c)
                )));
            }
        }
        let reps_inside = transversal
            .reps()
            .iter()
            .filter(|&&c| normalizer.contains(c))
            .count();
        if reps_inside * self.order() != normalizer.order() {
            return Err(Error::InvariantViolated(
                "|T ∩ N(H)| differs from |N(H)|/|H|".into(),
            ));
        }
        Ok(normalizer)
    }

    /// Canonical left transversal: repeatedly take the smallest uncovered id.
    pub fn left_transversal(&self) -> Transversal {
        let g = &self.group;
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::with_capacity(self.index());
        for x in 0..g.order() {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let k = reps.len() as u32;
            reps.push(x);
            for &h in &self.members {
                coset_of[g.mul(x, h)] = k;
            }
        }
        Transversal {
            subgroup: self.clone(),
            reps,
            coset_of,
        }
    }

    /// `H ∩ cHc⁻¹` and `H ∩ cHc`, exactly, by enumeration over `H`.
    pub fn intersections(&self, c: usize) -> Result<Intersections> {
        let g = &self.group;
        g.check_id(c)?;
        let ci = g.inv(c);
        // h ∈ cHc⁻¹ iff c⁻¹hc ∈ H; h ∈ cHc iff c⁻¹hc⁻¹ ∈ H.
        let conj_inverse: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&h| self.contains(g.mul(g.mul(ci, h), c)))
            .collect();
        let conj_same: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&h| self.contains(g.mul(g.mul(ci, h), ci)))
            .collect();
        if !conj_same.is_empty() && conj_same.len() != conj_inverse.len() {
            return Err(Error::InvariantViolated(format!(
                "|H ∩ cHc| = {} but |H ∩ cHc⁻¹| = {} for c = {}",
                conj_same.len(),
                conj_inverse.len(),
                g.format_element(c)
            )));
        }
        Ok(Intersections {
            conj_inverse,
            conj_same,
        })
    }
}

/// The two intersections used by the coset-extension lemmas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersections {
    /// `H ∩ cHc⁻¹`
    pub conj_inverse: Vec<usize>,
    /// `H ∩ cHc`
    pub conj_same: Vec<usize>,
}

/// Left coset representatives of a subgroup; `reps[0]` is the identity.
#[derive(Debug, Clone)]
pub struct Transversal {
    subgroup: Subgroup,
    reps: Vec<usize>,
    coset_of: Vec<u32>,
}

impl Transversal {
    /// Checks that `reps` starts with the identity and that the cosets `rep·H` partition `G`.
    pub fn from_reps(subgroup: &Subgroup, reps: Vec<usize>) -> Result<Transversal> {
        let g = subgroup.group();
        if reps.first() != Some(&0) {
            return Err(Error::InvalidInput(
                "transversal must start with the identity".into(),
            ));
        }
        if reps.len() != subgroup.index() {
            return Err(Error::InvalidInput(format!(
                "expected {} representatives, got {}",
                subgroup.index(),
                reps.len()
            )));
        }
        let mut coset_of = vec![u32::MAX; g.order()];
        for (k, &c) in reps.iter().enumerate() {
            g.check_id(c)?;
            for &h in subgroup.members() {
                let x = g.mul(c, h);
                if coset_of[x] != u32::MAX {
                    return Err(Error::InvalidInput(format!(
                        "representatives {} and {} share a coset",
                        g.format_element(reps[coset_of[x] as usize]),
                        g.format_element(c)
                    )));
                }
                coset_of[x] = k as u32;
            }
        }
        Ok(Transversal {
            subgroup: subgroup.clone(),
            reps,
            coset_of,
        })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn group(&self) -> &Arc<Group> {
        self.subgroup.group()
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    #[inline]
    pub fn coset_index(&self, x: usize) -> usize {
        self.coset_of[x] as usize
    }

    /// Writes `x = c·h` and returns `(index of c, h)`.
    #[inline]
    pub fn decompose(&self, x: usize) -> (usize, usize) {
        let k = self.coset_index(x);
        let g = self.group();
        (k, g.mul(g.inv(self.reps[k]), x))
    }

    pub fn is_involutive(&self) -> bool {
        let g = self.group();
        self.reps.iter().all(|&c| g.mul(c, c) == 0)
    }
}
