//! Balanced ±1 functions and their exact homomorphism bias.
//!
//! For `f: G -> {±1}` the triple correlation is
//! `T = E_{x,y}[f(x) f(y) f(xy)]` and the bias is
//! `Pr_{x,y}[f(x) f(y) = f(xy)] = (1 + T) / 2`. Both are exact rationals
//! with denominator dividing `|G|²`.
//!
//! Values are bit-packed (bit set means `-1`). The fast kernel evaluates
//! `Σ_y f(y) f(xy)` for each `x` as `|G| - 2·popcount(F ⊕ R_x)`, where `R_x`
//! is `f` pulled back along left multiplication by `x`.

use std::sync::Arc;

use rand::seq::SliceRandom;

use crate::exec::Exec;
use crate::group::{ConjugacyClasses, Group};
use crate::{rng, Error, Rational, Result};

#[derive(Debug, Clone)]
pub struct SignFunction {
    group: Arc<Group>,
    bits: Vec<u64>,
}

impl PartialEq for SignFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.spec() == other.group.spec() && self.bits == other.bits
    }
}

impl Eq for SignFunction {}

impl SignFunction {
    pub fn constant(group: &Arc<Group>, value: i8) -> SignFunction {
        let n = group.order();
        let mut bits = vec![0u64; n.div_ceil(64)];
        if value < 0 {
            for i in 0..n {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        SignFunction {
            group: group.clone(),
            bits,
        }
    }

    pub fn from_values(group: &Arc<Group>, values: &[i8]) -> Result<SignFunction> {
        if values.len() != group.order() {
            return Err(Error::InvalidInput(format!(
                "expected {} values, got {}",
                group.order(),
                values.len()
            )));
        }
        let mut f = SignFunction::constant(group, 1);
        for (x, &v) in values.iter().enumerate() {
            match v {
                1 => {}
                -1 => f.set(x, -1),
                _ => return Err(Error::InvalidInput(format!("value {v} at {x} is not ±1"))),
            }
        }
        Ok(f)
    }

    /// Builds `f` from a bit mask over ids `0..64` (bit set means `-1`).
    pub fn from_mask(group: &Arc<Group>, mask: u64) -> SignFunction {
        assert!(group.order() <= 64);
        let keep = if group.order() == 64 {
            u64::MAX
        } else {
            (1u64 << group.order()) - 1
        };
        SignFunction {
            group: group.clone(),
            bits: vec![mask & keep],
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.group.order()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Packed values; bit `x` set means `f(x) = -1`.
    pub fn bits(&self) -> &[u64] {
        &self.bits
    }

    #[inline]
    pub fn value(&self, x: usize) -> i8 {
        if (self.bits[x / 64] >> (x % 64)) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn set(&mut self, x: usize, v: i8) {
        if v < 0 {
            self.bits[x / 64] |= 1 << (x % 64);
        } else {
            self.bits[x / 64] &= !(1 << (x % 64));
        }
    }

    pub fn flip(&mut self, x: usize) {
        self.bits[x / 64] ^= 1 << (x % 64);
    }

    pub fn values(&self) -> Vec<i8> {
        (0..self.len()).map(|x| self.value(x)).collect()
    }

    pub fn as_f64(&self) -> Vec<f64> {
        (0..self.len()).map(|x| self.value(x) as f64).collect()
    }

    pub fn negative_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `E f = Σ_x f(x) / |G|`.
    pub fn expectation(&self) -> Rational {
        let n = self.len() as i64;
        Rational::new(n - 2 * self.negative_count() as i64, n)
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.negative_count() == self.len()
    }

    pub fn is_class_function(&self, classes: &ConjugacyClasses) -> bool {
        classes
            .classes()
            .iter()
            .all(|c| c.iter().all(|&x| self.value(x) == self.value(c[0])))
    }

    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        let n = g.order();
        Exec::default()
            .map(0..n, |x| {
                (0..n).all(|y| self.value(x) * self.value(y) == self.value(g.mul(x, y)))
            })
            .into_iter()
            .all(|ok| ok)
    }

    /// `S = Σ_{x,y} f(x) f(y) f(xy)` by the plain double loop.
    pub fn triple_sum_naive(&self) -> i64 {
        let g = &self.group;
        let n = g.order();
        let mut s = 0i64;
        for x in 0..n {
            let fx = self.value(x) as i64;
            for y in 0..n {
                s += fx * self.value(y) as i64 * self.value(g.mul(x, y)) as i64;
            }
        }
        s
    }

    /// `S = Σ_{x,y} f(x) f(y) f(xy)` with the packed XOR/popcount kernel.
    pub fn triple_sum(&self, exec: Exec) -> i64 {
        let g = &self.group;
        let n = g.order();
        let words = self.bits.len();
        exec.sum_i64(0..n, |x| {
            let mut row = vec![0u64; words];
            match g.row(x) {
                Some(ids) => {
                    for (y, &xy) in ids.iter().enumerate() {
                        let xy = xy as usize;
                        row[y / 64] |= ((self.bits[xy / 64] >> (xy % 64)) & 1) << (y % 64);
                    }
                }
                None => {
                    for y in 0..n {
                        let xy = g.mul(x, y);
                        row[y / 64] |= ((self.bits[xy / 64] >> (xy % 64)) & 1) << (y % 64);
                    }
                }
            }
            let mismatches: u32 = row
                .iter()
                .zip(&self.bits)
                .map(|(a, b)| (a ^ b).count_ones())
                .sum();
            let inner = n as i64 - 2 * mismatches as i64;
            self.value(x) as i64 * inner
        })
    }

    /// `T = E_{x,y}[f(x) f(y) f(xy)]`, exact.
    pub fn triple_correlation(&self) -> Rational {
        self.triple_correlation_with(Exec::default())
    }

    pub fn triple_correlation_with(&self, exec: Exec) -> Rational {
        let n = self.len() as i64;
        Rational::new(self.triple_sum(exec), n * n)
    }

    pub fn triple_correlation_naive(&self) -> Rational {
        let n = self.len() as i64;
        Rational::new(self.triple_sum_naive(), n * n)
    }

    /// `Pr[f(x) f(y) = f(xy)] = (1 + T) / 2`.
    pub fn bias(&self) -> Rational {
        bias_from_t(self.triple_correlation())
    }

    /// The same probability by counting agreeing pairs directly.
    pub fn bias_by_counting(&self) -> Rational {
        let g = &self.group;
        let n = g.order();
        let agree = Exec::default().sum_i64(0..n, |x| {
            (0..n)
                .filter(|&y| self.value(x) * self.value(y) == self.value(g.mul(x, y)))
                .count() as i64
        });
        Rational::new(agree, (n * n) as i64)
    }

    /// Uniformly random balanced function, reproducible from `seed`.
    pub fn random_balanced(group: &Arc<Group>, seed: u64) -> Result<SignFunction> {
        let mut rng = rng::rng(seed);
        SignFunction::random_balanced_from(group, &mut rng)
    }

    pub fn random_balanced_from(group: &Arc<Group>, rng: &mut rng::Rng) -> Result<SignFunction> {
        let n = group.order();
        if n % 2 == 1 {
            return Err(Error::OddOrder(n));
        }
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(rng);
        let mut f = SignFunction::constant(group, 1);
        for &x in &ids[..n / 2] {
            f.set(x, -1);
        }
        Ok(f)
    }

    /// JSON array of ±1 in element-id order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.values()).expect("serializable")
    }

    pub fn from_json(group: &Arc<Group>, text: &str) -> Result<SignFunction> {
        let values: Vec<i8> = serde_json::from_str(text).map_err(|e| Error::Parse {
            input: "sign function JSON".into(),
            reason: e.to_string(),
        })?;
        SignFunction::from_values(group, &values)
    }
}

pub fn bias_from_t(t: Rational) -> Rational {
    (Rational::from_integer(1) + t) / 2
}

/// `T ≤ 1/√d`, decided exactly.
pub fn within_sqrt_bound(t: Rational, d: usize) -> bool {
    if *t.numer() <= 0 {
        return true;
    }
    let (p, q) = (*t.numer() as i128, *t.denom() as i128);
    p * p * d as i128 <= q * q
}

/// `T ≤ 1/d`, decided exactly.
pub fn within_linear_bound(t: Rational, d: usize) -> bool {
    t <= Rational::new(1, d as i64)
}

/// Repeated evaluation of `S(mask) = Σ_{x,y} f(x) f(y) f(xy)` for groups of
/// order at most 64, with `f` given as a bit mask.
///
/// `R_x(mask)`, the mask pulled back along `y ↦ xy`, is assembled from
/// per-byte lookup tables, so one evaluation costs `|G|` table reads per byte
/// of the mask plus `|G|` popcounts.
#[derive(Debug, Clone)]
pub struct MaskKernel {
    n: usize,
    chunks: usize,
    lut: Vec<u64>,
}

impl MaskKernel {
    pub const MAX_ORDER: usize = 64;

    pub fn new(group: &Group) -> Result<MaskKernel> {
        let n = group.order();
        if n > Self::MAX_ORDER {
            return Err(Error::TooLarge {
                what: "group for the mask kernel",
                size: n,
                limit: Self::MAX_ORDER,
            });
        }
        let chunks = n.div_ceil(8);
        let mut lut = vec![0u64; n * chunks * 256];
        for x in 0..n {
            let xi = group.inv(x);
            for c in 0..chunks {
                for v in 0..256usize {
                    let mut out = 0u64;
                    for b in 0..8 {
                        let z = 8 * c + b;
                        if (v >> b) & 1 == 1 && z < n {
                            out |= 1 << group.mul(xi, z);
                        }
                    }
                    lut[(x * chunks + c) * 256 + v] = out;
                }
            }
        }
        Ok(MaskKernel { n, chunks, lut })
    }

    #[inline]
    pub fn triple_sum(&self, mask: u64) -> i64 {
        let n = self.n as i64;
        let mut s = 0i64;
        for x in 0..self.n {
            let base = x * self.chunks * 256;
            let mut row = 0u64;
            for c in 0..self.chunks {
                row |= self.lut[base + c * 256 + ((mask >> (8 * c)) & 0xff) as usize];
            }
            let inner = n - 2 * (row ^ mask).count_ones() as i64;
            s += if (mask >> x) & 1 == 1 { -inner } else { inner };
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z4() -> Arc<Group> {
        Group::parse("Z4").unwrap()
    }

    fn sign_character(g: &Arc<Group>) -> SignFunction {
        let values: Vec<i8> = (0..g.order())
            .map(|x| {
                if crate::perm::is_even(g.perm(x).unwrap()) {
                    1
                } else {
                    -1
                }
            })
            .collect();
        SignFunction::from_values(g, &values).unwrap()
    }

    #[test]
    fn expectation_examples() {
        let g = z4();
        let one = SignFunction::constant(&g, 1);
        assert_eq!(one.expectation(), Rational::from_integer(1));
        assert!(!one.is_balanced());
        let s3 = Group::parse("S3").unwrap();
        let sgn = sign_character(&s3);
        assert_eq!(sgn.expectation(), Rational::from_integer(0));
        assert!(sgn.is_balanced());
        let r = SignFunction::random_balanced(&Group::parse("A5").unwrap(), 3).unwrap();
        assert!(r.is_balanced());
    }

    #[test]
    fn predicates() {
        let s3 = Group::parse("S3").unwrap();
        let sgn = sign_character(&s3);
        assert!(sgn.is_class_function(&ConjugacyClasses::compute(&s3)));
        assert!(sgn.is_homomorphism());
        // -1 exactly on the two classes of size 6 in S4.
        let s4 = Group::parse("S4").unwrap();
        let cc = ConjugacyClasses::compute(&s4);
        let mut f = SignFunction::constant(&s4, 1);
        for class in cc.classes().iter().filter(|c| c.len() == 6) {
            for &x in class {
                f.set(x, -1);
            }
        }
        assert!(f.is_class_function(&cc) && f.is_balanced());
        let mut g = SignFunction::constant(&s4, 1);
        g.set(1, -1);
        assert!(!g.is_class_function(&cc) && !g.is_homomorphism());
    }

    #[test]
    fn triple_correlation_z4_examples() {
        // Brute force over all 16 pairs: the only non-cancelling terms are counted by hand.
        let g = z4();
        let f = SignFunction::from_values(&g, &[1, 1, -1, -1]).unwrap();
        assert_eq!(f.triple_correlation(), Rational::new(1, 2));
        assert_eq!(f.bias(), Rational::new(3, 4));
        let f = SignFunction::from_values(&g, &[1, -1, -1, 1]).unwrap();
        assert_eq!(f.triple_correlation(), Rational::new(1, 2));
        let hom = SignFunction::from_values(&g, &[1, -1, 1, -1]).unwrap();
        assert_eq!(hom.triple_correlation(), Rational::from_integer(1));
        assert_eq!(hom.bias(), Rational::from_integer(1));
    }

    #[test]
    fn random_balanced_is_deterministic() {
        let g = Group::parse("A5").unwrap();
        let a = SignFunction::random_balanced(&g, 11).unwrap();
        let b = SignFunction::random_balanced(&g, 11).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            SignFunction::random_balanced(&Group::parse("Z5").unwrap(), 0),
            Err(Error::OddOrder(5))
        ));
    }

    #[test]
    fn fast_kernel_matches_naive_loop() {
        for spec in ["Z12", "S4", "A5", "D7", "Z2xS3", "S5"] {
            let g = Group::parse(spec).unwrap();
            for seed in 0..100 {
                let f = SignFunction::random_balanced(&g, seed).unwrap();
                let naive = f.triple_sum_naive();
                assert_eq!(f.triple_sum(Exec::Sequential), naive, "{spec} seed {seed}");
                assert_eq!(f.triple_sum(Exec::Parallel), naive);
                assert_eq!(f.bias(), f.bias_by_counting());
            }
        }
    }

    #[test]
    fn kernel_without_table_matches() {
        let limits = crate::GroupLimits {
            max_order: 40320,
            table_cap: 0,
        };
        let g = crate::group::make_group("S4", limits).unwrap();
        let f = SignFunction::random_balanced(&g, 5).unwrap();
        assert_eq!(f.triple_sum(Exec::default()), f.triple_sum_naive());
    }

    #[test]
    fn mask_kernel_matches() {
        for spec in ["Z4", "S4", "A4", "D5", "Z2xZ2xZ3"] {
            let g = Group::parse(spec).unwrap();
            let k = MaskKernel::new(&g).unwrap();
            for seed in 0..50 {
                let f = SignFunction::random_balanced(&g, seed).unwrap();
                assert_eq!(k.triple_sum(f.bits()[0]), f.triple_sum_naive());
            }
        }
        assert!(MaskKernel::new(&Group::parse("S5").unwrap()).is_err());
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let g = z4();
        let f = SignFunction::from_values(&g, &[1, -1, -1, 1]).unwrap();
        assert_eq!(f.to_json(), "[1,-1,-1,1]");
        assert_eq!(SignFunction::from_json(&g, &f.to_json()).unwrap(), f);
        assert!(SignFunction::from_json(&g, "[1,0,1,1]").is_err());
        assert!(SignFunction::from_json(&g, "[1,1]").is_err());
    }

    #[test]
    fn exact_bound_predicates() {
        assert!(within_sqrt_bound(Rational::new(1, 2), 4));
        assert!(!within_sqrt_bound(Rational::new(51, 100), 4));
        assert!(within_sqrt_bound(Rational::new(-1, 1), 100));
        assert!(within_linear_bound(Rational::new(1, 3), 3));
        assert!(!within_linear_bound(Rational::new(34, 100), 3));
    }

    proptest! {
        #[test]
        fn bias_identity_holds(seed in any::<u64>(), spec in prop::sample::select(vec!["S3", "D4", "Z6", "A4", "Z2xZ4"])) {
            let g = Group::parse(spec).unwrap();
            let f = SignFunction::random_balanced(&g, seed).unwrap();
            let t = f.triple_correlation();
            prop_assert_eq!(f.bias_by_counting(), (Rational::from_integer(1) + t) / 2);
            if f.is_homomorphism() {
                prop_assert_eq!(f.bias(), Rational::from_integer(1));
            }
            if f.bias() == Rational::from_integer(1) {
                prop_assert!(f.is_homomorphism());
            }
        }
    }
}
