//! Finite groups with integer element ids.
//!
//! Element ids are `0..order`, and id 0 is always the identity. Permutation
//! groups number their elements in lexicographic order of one-line notation;
//! direct products number pairs row-major in the component ids; `D<k>` is the
//! dihedral group of order `2k` with `r^i s^j` at id `j*k + i`.
//!
//! Groups up to [`GroupLimits::table_cap`] elements carry a dense
//! multiplication table. Larger groups multiply on the fly.

mod bitset;
mod classes;
mod embed;
mod subgroup;

use std::fmt;
use std::sync::Arc;

use crate::exec::Exec;
use crate::perm::{self, MAX_DEGREE};
use crate::{Error, Result};

pub use bitset::BitSet;
pub use classes::{ClassStructure, ConjugacyClasses};
pub use embed::{embed_parity_subgroup_an, ParityEmbedding};
pub use subgroup::{Intersections, Subgroup, Transversal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupLimits {
    pub max_order: usize,
    pub table_cap: usize,
}

impl Default for GroupLimits {
    fn default() -> Self {
        GroupLimits {
            max_order: 40320,
            table_cap: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Factor {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
}

impl Factor {
    fn order(&self) -> u64 {
        match *self {
            Factor::Cyclic(k) => k as u64,
            Factor::Dihedral(k) => 2 * k as u64,
            Factor::Symmetric(n) => perm::factorial(n),
            Factor::Alternating(n) => (perm::factorial(n) / 2).max(1),
        }
    }
}

#[derive(Clone)]
enum Kind {
    Cyclic(usize),
    Dihedral(usize),
    Perm {
        degree: usize,
        alternating: bool,
        points: Vec<u8>,
    },
    Product(Box<Group>, Box<Group>),
}

#[derive(Clone)]
pub struct Group {
    spec: String,
    order: usize,
    kind: Kind,
    table: Option<Vec<u16>>,
    inverse: Vec<u32>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("spec", &self.spec)
            .field("order", &self.order)
            .field("table", &self.table.is_some())
            .finish()
    }
}

/// Builds a group from a spec such as `Z12`, `D5`, `A5` or `Z2xZ2xZ3`.
pub fn make_group(spec: &str, limits: GroupLimits) -> Result<Arc<Group>> {
    Group::build(spec, limits).map(Arc::new)
}

fn parse_factor(spec: &str, token: &str) -> Result<Factor> {
    let err = |reason: &str| Error::Parse {
        input: spec.to_string(),
        reason: reason.to_string(),
    };
    let mut chars = token.chars();
    let letter = chars.next().ok_or_else(|| err("empty factor"))?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(&format!("factor `{token}` needs a positive integer")));
    }
    let k: usize = digits
        .parse()
        .map_err(|_| err(&format!("factor `{token}` is too large")))?;
    if k == 0 {
        return Err(err(&format!("factor `{token}` must be at least 1")));
    }
    let factor = match letter {
        'Z' => Factor::Cyclic(k),
        'D' => Factor::Dihedral(k),
        'S' => Factor::Symmetric(k),
        'A' => Factor::Alternating(k),
        _ => return Err(err(&format!("unknown family `{letter}`"))),
    };
    if matches!(factor, Factor::Symmetric(_) | Factor::Alternating(_)) && k > MAX_DEGREE {
        return Err(err(&format!("permutation degree {k} exceeds {MAX_DEGREE}")));
    }
    Ok(factor)
}

impl Group {
    pub fn parse(spec: &str) -> Result<Arc<Group>> {
        make_group(spec, GroupLimits::default())
    }

    fn build(spec: &str, limits: GroupLimits) -> Result<Group> {
        let factors = spec
            .split('x')
            .map(|t| parse_factor(spec, t))
            .collect::<Result<Vec<_>>>()?;
        let order = factors
            .iter()
            .try_fold(1u64, |acc, f| acc.checked_mul(f.order()))
            .unwrap_or(u64::MAX);
        if order > limits.max_order as u64 {
            return Err(Error::OrderLimit {
                order,
                limit: limits.max_order,
            });
        }
        let tokens: Vec<&str> = spec.split('x').collect();
        let mut group = Group::from_factor(tokens[0], &factors[0], limits);
        for (token, factor) in tokens.iter().zip(&factors).skip(1) {
            let right = Group::from_factor(token, factor, limits);
            group = Group::product(group, right, limits);
        }
        group.spec = spec.to_string();
        group.validate()?;
        Ok(group)
    }

    fn from_factor(token: &str, factor: &Factor, limits: GroupLimits) -> Group {
        let (order, kind) = match *factor {
            Factor::Cyclic(k) => (k, Kind::Cyclic(k)),
            Factor::Dihedral(k) => (2 * k, Kind::Dihedral(k)),
            Factor::Symmetric(n) | Factor::Alternating(n) => {
                let alternating = matches!(factor, Factor::Alternating(_));
                let mut points = Vec::new();
                let total = perm::factorial(n) as usize;
                for rank in 0..total {
                    let p = perm::lex_unrank(n, rank);
                    if !alternating || perm::is_even(&p) {
                        points.extend_from_slice(&p);
                    }
                }
                let order = points.len() / n.max(1);
                let order = if n == 0 { 1 } else { order };
                (
                    order,
                    Kind::Perm {
                        degree: n,
                        alternating,
                        points,
                    },
                )
            }
        };
        Group::finish(token.to_string(), order, kind, limits)
    }

    fn product(left: Group, right: Group, limits: GroupLimits) -> Group {
        let spec = format!("{}x{}", left.spec, right.spec);
        let order = left.order * right.order;
        Group::finish(
            spec,
            order,
            Kind::Product(Box::new(left), Box::new(right)),
            limits,
        )
    }

    fn finish(spec: String, order: usize, kind: Kind, limits: GroupLimits) -> Group {
        let mut group = Group {
            spec,
            order,
            kind,
            table: None,
            inverse: Vec::new(),
        };
        group.inverse = (0..order).map(|x| group.inv_direct(x) as u32).collect();
        if order <= limits.table_cap {
            let rows = Exec::default().map(0..order, |x| {
                (0..order)
                    .map(|y| group.mul_direct(x, y) as u16)
                    .collect::<Vec<u16>>()
            });
            group.table = Some(rows.concat());
        }
        group
    }

    fn validate(&self) -> Result<()> {
        for x in 0..self.order {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::InvariantViolated(format!(
                    "id 0 is not the identity at {x} in {}",
                    self.spec
                )));
            }
            if self.mul(x, self.inv(x)) != 0 {
                return Err(Error::InvariantViolated(format!(
                    "bad inverse for {x} in {}",
                    self.spec
                )));
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Row `x` of the dense table: `row(x)[y] = xy`.
    pub fn row(&self, x: usize) -> Option<&[u16]> {
        self.table
            .as_ref()
            .map(|t| &t[x * self.order..(x + 1) * self.order])
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.table {
            Some(t) => t[x * self.order + y] as usize,
            None => self.mul_direct(x, y),
        }
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    /// `c⁻¹ x c`.
    #[inline]
    pub fn conjugate(&self, x: usize, c: usize) -> usize {
        self.mul(self.mul(self.inv(c), x), c)
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn check_id(&self, id: usize) -> Result<()> {
        if id < self.order {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                id,
                order: self.order,
            })
        }
    }

    fn mul_direct(&self, x: usize, y: usize) -> usize {
        match &self.kind {
            Kind::Cyclic(k) => (x + y) % k,
            Kind::Dihedral(k) => {
                let (i1, j1) = (x % k, x / k);
                let (i2, j2) = (y % k, y / k);
                let i = if j1 == 0 { i1 + i2 } else { i1 + k - i2 } % k;
                ((j1 + j2) % 2) * k + i
            }
            Kind::Perm {
                degree,
                alternating,
                points,
            } => {
                let n = *degree;
                if n == 0 {
                    return 0;
                }
                let mut buf = [0u8; MAX_DEGREE];
                perm::compose_into(
                    &points[x * n..(x + 1) * n],
                    &points[y * n..(y + 1) * n],
                    &mut buf[..n],
                );
                let rank = perm::lex_rank(&buf[..n]);
                if *alternating {
                    rank / 2
                } else {
                    rank
                }
            }
            Kind::Product(a, b) => {
                let m = b.order;
                a.mul(x / m, y / m) * m + b.mul(x % m, y % m)
            }
        }
    }

    fn inv_direct(&self, x: usize) -> usize {
        match &self.kind {
            Kind::Cyclic(k) => (k - x) % k,
            Kind::Dihedral(k) => {
                if x < *k {
                    (k - x) % k
                } else {
                    x
                }
            }
            Kind::Perm {
                degree,
                alternating,
                points,
            } => {
                let n = *degree;
                if n == 0 {
                    return 0;
                }
                let rank = perm::lex_rank(&perm::inverse(&points[x * n..(x + 1) * n]));
                if *alternating {
                    rank / 2
                } else {
                    rank
                }
            }
            Kind::Product(a, b) => {
                let m = b.order;
                a.inv(x / m) * m + b.inv(x % m)
            }
        }
    }

    /// Degree of a permutation-backed group.
    pub fn degree(&self) -> Option<usize> {
        match &self.kind {
            Kind::Perm { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    /// `Some(n)` when this is the full symmetric group `S_n`.
    pub fn symmetric_degree(&self) -> Option<usize> {
        match &self.kind {
            Kind::Perm {
                degree,
                alternating: false,
                ..
            } => Some(*degree),
            _ => None,
        }
    }

    /// `Some(n)` when this is the alternating group `A_n`.
    pub fn alternating_degree(&self) -> Option<usize> {
        match &self.kind {
            Kind::Perm {
                degree,
                alternating: true,
                ..
            } => Some(*degree),
            _ => None,
        }
    }

    /// One-line notation of element `x` of a permutation group.
    pub fn perm(&self, x: usize) -> Option<&[u8]> {
        match &self.kind {
            Kind::Perm { degree, points, .. } => Some(&points[x * degree..(x + 1) * degree]),
            _ => None,
        }
    }

    /// Id of a permutation, if it belongs to this permutation group.
    pub fn perm_id(&self, p: &[u8]) -> Option<usize> {
        match &self.kind {
            Kind::Perm {
                degree,
                alternating,
                ..
            } => {
                if p.len() != *degree {
                    return None;
                }
                if *alternating && !perm::is_even(p) {
                    return None;
                }
                let rank = perm::lex_rank(p);
                Some(if *alternating { rank / 2 } else { rank })
            }
            _ => None,
        }
    }

    /// Moduli of the cyclic factors when the group is a direct product of `Z<k>`.
    pub fn cyclic_factors(&self) -> Option<Vec<usize>> {
        match &self.kind {
            Kind::Cyclic(k) => Some(vec![*k]),
            Kind::Product(a, b) => {
                let mut left = a.cyclic_factors()?;
                left.extend(b.cyclic_factors()?);
                Some(left)
            }
            _ => None,
        }
    }

    /// Component coordinates of `x` in a product of cyclic groups (row-major).
    pub fn cyclic_coordinates(&self, moduli: &[usize], mut x: usize) -> Vec<usize> {
        let mut coords = vec![0; moduli.len()];
        for (c, &m) in coords.iter_mut().zip(moduli).rev() {
            *c = x % m;
            x /= m;
        }
        coords
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Exhaustive `O(|G|³)` associativity check.
    pub fn check_associativity(&self) -> bool {
        let n = self.order;
        Exec::default()
            .map(0..n, |x| {
                (0..n).all(|y| {
                    let xy = self.mul(x, y);
                    (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
                })
            })
            .into_iter()
            .all(|ok| ok)
    }

    /// Parses a generator: an element id, or cycle notation for permutation groups.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let text = text.trim();
        if text.starts_with('(') {
            let degree = self.degree().ok_or_else(|| Error::Parse {
                input: text.to_string(),
                reason: "cycle notation needs a permutation group".into(),
            })?;
            let p = perm::parse_cycles(text, degree)?;
            return self.perm_id(&p).ok_or_else(|| {
                Error::InvalidInput(format!("{text} is not an element of {}", self.spec))
            });
        }
        let id: usize = text.parse().map_err(|_| Error::Parse {
            input: text.to_string(),
            reason: "expected an element id or cycle notation".into(),
        })?;
        self.check_id(id)?;
        Ok(id)
    }

    /// Parses a `;`-separated generator list.
    pub fn parse_generators(&self, text: &str) -> Result<Vec<usize>> {
        text.split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.parse_element(s))
            .collect()
    }

    pub fn format_element(&self, x: usize) -> String {
        match &self.kind {
            Kind::Perm { .. } => perm::format_cycles(self.perm(x).unwrap_or(&[])),
            Kind::Product(a, b) => {
                let m = b.order;
                format!("({}, {})", a.format_element(x / m), b.format_element(x % m))
            }
            Kind::Dihedral(k) => format!("r^{} s^{}", x % k, x / k),
            Kind::Cyclic(_) => x.to_string(),
        }
    }

    /// Distinct cyclic subgroups `⟨g⟩`, ordered by the smallest generating id.
    pub fn cyclic_subgroups(self: &Arc<Self>) -> Vec<(usize, Subgroup)> {
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for g in 0..self.order {
            let sub = Subgroup::closure(self, &[g]).expect("valid id");
            if !seen.iter().any(|m| m.as_slice() == sub.members()) {
                seen.push(sub.members().to_vec());
                out.push((g, sub));
            }
        }
        out
    }
}
