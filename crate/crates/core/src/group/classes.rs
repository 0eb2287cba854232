use std::sync::Arc;

use super::Group;
use crate::exec::Exec;

/// Partition of a group into conjugacy classes.
///
/// Classes are ordered by their smallest id, which is also the class
/// representative, so the identity class comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ConjugacyClasses {
    /// Brute force: the class of `x` is `{g⁻¹xg : g ∈ G}`.
    pub fn compute(group: &Group) -> ConjugacyClasses {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let k = classes.len();
            let mut members = Vec::new();
            for g in 0..n {
                let y = group.conjugate(x, g);
                if class_of[y] == usize::MAX {
                    class_of[y] = k;
                    members.push(y);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjugacyClasses { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

/// Class multiplication coefficients
/// `c[i][j][k] = #{(a, b) ∈ C_i × C_j : ab = z_k}` for the representative `z_k` of `C_k`.
#[derive(Debug, Clone)]
pub struct ClassStructure {
    pub classes: ConjugacyClasses,
    rank: usize,
    coeffs: Vec<u64>,
}

impl ClassStructure {
    pub fn compute(group: &Arc<Group>) -> ClassStructure {
        let classes = ConjugacyClasses::compute(group);
        let r = classes.len();
        let reps = classes.representatives();
        let blocks = Exec::default().map(0..r, |i| {
            let mut block = vec![0u64; r * r];
            for &a in &classes.classes()[i] {
                let ai = group.inv(a);
                for (k, &z) in reps.iter().enumerate() {
                    let j = classes.class_of(group.mul(ai, z));
                    block[j * r + k] += 1;
                }
            }
            block
        });
        ClassStructure {
            classes,
            rank: r,
            coeffs: blocks.concat(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u64 {
        self.coeffs[(i * self.rank + j) * self.rank + k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_sizes(spec: &str) -> Vec<usize> {
        let g = Group::parse(spec).unwrap();
        let mut s = ConjugacyClasses::compute(&g).sizes();
        s.sort_unstable();
        s
    }

    #[test]
    fn class_sizes() {
        assert_eq!(sorted_sizes("Z5"), vec![1; 5]);
        assert_eq!(sorted_sizes("S3"), vec![1, 2, 3]);
        assert_eq!(sorted_sizes("S4"), vec![1, 3, 6, 6, 8]);
        assert_eq!(sorted_sizes("A5"), vec![1, 12, 12, 15, 20]);
        assert_eq!(sorted_sizes("A4"), vec![1, 3, 4, 4]);
    }

    #[test]
    fn class_sizes_divide_order_and_identity_is_alone() {
        for spec in ["D6", "S4", "A5", "Z2xS3", "A6"] {
            let g = Group::parse(spec).unwrap();
            let cc = ConjugacyClasses::compute(&g);
            assert_eq!(cc.classes()[0], vec![0]);
            assert_eq!(cc.sizes().iter().sum::<usize>(), g.order());
            assert!(cc.sizes().iter().all(|&s| g.order().is_multiple_of(s)));
        }
    }

    #[test]
    fn structure_constants_count_products() {
        let g = Group::parse("S4").unwrap();
        let cs = ClassStructure::compute(&g);
        let r = cs.rank();
        let sizes = cs.classes.sizes();
        // Σ_k c_ijk |C_k| = |C_i||C_j|
        for i in 0..r {
            for j in 0..r {
                let total: u64 = (0..r).map(|k| cs.coeff(i, j, k) * sizes[k] as u64).sum();
                assert_eq!(total, (sizes[i] * sizes[j]) as u64);
            }
        }
        for i in 0..r {
            for k in 0..r {
                assert_eq!(cs.coeff(i, 0, k), u64::from(i == k));
            }
        }
    }
}
