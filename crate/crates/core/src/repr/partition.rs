use std::fmt;

use crate::perm::{factorial, MAX_DEGREE};
use crate::{Error, Result};

/// Weakly decreasing positive parts; `(n)` labels the trivial representation of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..cols)
                .map(|c| self.0.iter().filter(|&&p| p > c).count())
                .collect(),
        )
    }

    /// `n! / Π hook(cell)`.
    pub fn hook_dimension(&self) -> u64 {
        let conj = self.conjugate();
        let mut hooks = 1u64;
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = conj.0[c] - r - 1;
                hooks *= (arm + leg + 1) as u64;
            }
        }
        factorial(self.size()) / hooks
    }

    /// Standard Young tableaux, each given as the `(row, col)` of the numbers `1..=n` in order.
    pub fn standard_tableaux(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        let mut filled = vec![0usize; self.0.len()];
        let mut cells = Vec::with_capacity(self.size());
        self.fill(&mut filled, &mut cells, &mut out);
        out
    }

    fn fill(
        &self,
        filled: &mut Vec<usize>,
        cells: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cells.len() == self.size() {
            out.push(cells.clone());
            return;
        }
        for r in 0..self.0.len() {
            let c = filled[r];
            if c < self.0[r] && (r == 0 || filled[r - 1] > c) {
                filled[r] += 1;
                cells.push((r, c));
                self.fill(filled, cells, out);
                cells.pop();
                filled[r] -= 1;
            }
        }
    }

    /// Counts standard tableaux by removing corners recursively.
    pub fn count_standard_tableaux(&self) -> u64 {
        if self.size() <= 1 {
            return 1;
        }
        let mut total = 0;
        for r in 0..self.0.len() {
            let is_corner = r + 1 == self.0.len() || self.0[r + 1] < self.0[r];
            if is_corner {
                let mut smaller = self.0.clone();
                smaller[r] -= 1;
                total += Partition::new(smaller)
                    .expect("corner removal")
                    .count_standard_tableaux();
            }
        }
        total
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` in reverse lexicographic order, starting with `(n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with their hook-length dimensions, cross-checked against tableau counts.
pub fn partitions_and_dims(n: usize) -> Result<Vec<(Partition, u64)>> {
    if !(1..=MAX_DEGREE).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "n = {n} outside 1..={MAX_DEGREE}"
        )));
    }
    let out: Vec<(Partition, u64)> = partitions(n)
        .into_iter()
        .map(|p| {
            let d = p.hook_dimension();
            (p, d)
        })
        .collect();
    for (p, d) in &out {
        if p.count_standard_tableaux() != *d {
            return Err(Error::InvariantViolated(format!(
                "hook length disagrees for {p}"
            )));
        }
    }
    let sum: u64 = out.iter().map(|(_, d)| d * d).sum();
    if sum != factorial(n) {
        return Err(Error::InvariantViolated(format!("Σ d² = {sum} != {n}!")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_dimensions() {
        let p4 = partitions_and_dims(4).unwrap();
        assert_eq!(p4.len(), 5);
        assert_eq!(p4.iter().map(|(_, d)| d * d).sum::<u64>(), 24);
        assert_eq!(p4[0].0.parts(), &[4]);
        assert_eq!(p4[0].1, 1);
        for n in 2..=8 {
            let hook = Partition::new(vec![n - 1, 1]).unwrap();
            assert_eq!(hook.count_standard_tableaux(), (n - 1) as u64);
        }
        assert_eq!(partitions(8).len(), 22);
        assert!(partitions_and_dims(0).is_err());
        assert!(partitions_and_dims(9).is_err());
    }

    #[test]
    fn tableaux_enumeration_matches_count() {
        for n in 1..=7 {
            for p in partitions(n) {
                assert_eq!(
                    p.standard_tableaux().len() as u64,
                    p.count_standard_tableaux()
                );
            }
        }
    }

    #[test]
    fn conjugate_and_display() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.conjugate().parts(), &[2, 1, 1]);
        assert_eq!(p.to_string(), "(3,1)");
        assert!(Partition::new(vec![1, 2]).is_err());
    }
}
