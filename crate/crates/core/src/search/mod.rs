//! Searches for balanced functions of large bias.
//!
//! Exhaustive, class-function and coset-constant searches return exact maxima
//! over their families. Local search returns a lower bound only. Outputs are
//! empirical data about the gap between the constructions and the spectral
//! bound, not proofs.
//!
//! The global sign symmetry is not used to halve enumerations: `T(-f) = -T(f)`.

mod local;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use local::{local_search_max_bias, LocalSearchConfig};

use crate::group::{ClassStructure, Group, Subgroup};
use crate::signfun::{bias_from_t, MaskKernel};
use crate::{Error, Exec, Rational, Result, SignFunction};

pub const MAX_EXHAUSTIVE_ORDER: usize = 24;
pub const MAX_COSET_INDEX: usize = 24;
pub const MAX_CLASSES: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Exhaustive,
    ClassFunction,
    CosetConstant,
    Local,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::ClassFunction => "class",
            Strategy::CosetConstant => "coset",
            Strategy::Local => "local",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "class" => Ok(Strategy::ClassFunction),
            "coset" => Ok(Strategy::CosetConstant),
            "local" => Ok(Strategy::Local),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected exhaustive, class, coset or local".into(),
            }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub best_f: SignFunction,
    pub best_t: Rational,
    pub best_bias: Rational,
    pub strategy: Strategy,
    /// True when `best_bias` is the maximum over the whole searched family.
    pub exhaustive: bool,
    pub evaluations: u64,
    pub seed: Option<u64>,
}

impl SearchResult {
    fn new(
        best_f: SignFunction,
        strategy: Strategy,
        exhaustive: bool,
        evaluations: u64,
        seed: Option<u64>,
    ) -> SearchResult {
        let best_t = best_f.triple_correlation();
        SearchResult {
            best_bias: bias_from_t(best_t),
            best_t,
            best_f,
            strategy,
            exhaustive,
            evaluations,
            seed,
        }
    }

    /// Recomputes the bias from scratch and checks balance.
    pub fn verify(&self) -> Result<()> {
        if !self.best_f.is_balanced() {
            return Err(Error::InvariantViolated(
                "search result is not balanced".into(),
            ));
        }
        if self.best_f.bias_by_counting() != self.best_bias {
            return Err(Error::InvariantViolated(
                "search result bias mismatch".into(),
            ));
        }
        Ok(())
    }
}

fn require_even(group: &Group) -> Result<()> {
    if group.order() % 2 == 1 {
        Err(Error::OddOrder(group.order()))
    } else {
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// The `rank`-th `k`-subset of `0..n` in increasing mask order.
fn unrank_combination(mut rank: u64, k: usize) -> u64 {
    let mut mask = 0u64;
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        mask |= 1 << c;
    }
    mask
}

#[inline]
fn next_combination(v: u64) -> u64 {
    let t = v | (v - 1);
    (t + 1) | (((!t & (!t).wrapping_neg()) - 1) >> (v.trailing_zeros() + 1))
}

const CHUNK: u64 = 1 << 12;

/// Maximum of `score` over all `k`-subsets of `0..n`; ties go to the smallest mask.
fn best_combination<F>(n: usize, k: usize, exec: Exec, score: F) -> (i64, u64, u64)
where
    F: Fn(u64) -> i64 + Sync + Send,
{
    let total = binomial(n, k);
    let chunks = total.div_ceil(CHUNK) as usize;
    let partial = exec.map(0..chunks, |c| {
        let start = c as u64 * CHUNK;
        let end = (start + CHUNK).min(total);
        let mut mask = unrank_combination(start, k);
        let mut best = (score(mask), mask);
        for _ in start + 1..end {
            mask = next_combination(mask);
            let s = score(mask);
            if s > best.0 {
                best = (s, mask);
            }
        }
        best
    });
    let mut best = partial[0];
    for &p in &partial[1..] {
        if p.0 > best.0 {
            best = p;
        }
    }
    (best.0, best.1, total)
}

/// Exact maximum bias over all balanced functions, `|G| ≤ 24`.
pub fn exhaustive_max_bias(group: &Arc<Group>, exec: Exec) -> Result<SearchResult> {
    let n = group.order();
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::TooLarge {
            what: "group for exhaustive search",
            size: n,
            limit: MAX_EXHAUSTIVE_ORDER,
        });
    }
    require_even(group)?;
    let kernel = MaskKernel::new(group)?;
    let (_, mask, evaluations) = best_combination(n, n / 2, exec, |m| kernel.triple_sum(m));
    let f = SignFunction::from_mask(group, mask);
    Ok(SearchResult::new(
        f,
        Strategy::Exhaustive,
        true,
        evaluations,
        None,
    ))
}

/// Exact maximum bias over balanced class functions.
pub fn class_function_max_bias(group: &Arc<Group>) -> Result<SearchResult> {
    require_even(group)?;
    let cs = ClassStructure::compute(group);
    let r = cs.rank();
    if r > MAX_CLASSES {
        return Err(Error::TooLarge {
            what: "class count for class-function search",
            size: r,
            limit: MAX_CLASSES,
        });
    }
    let sizes = cs.classes.sizes();
    // pairs[i][j][k] = #{(x, y) : x ∈ C_i, y ∈ C_j, xy ∈ C_k}
    let mut pairs = vec![0i64; r * r * r];
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                pairs[(i * r + j) * r + k] = (cs.coeff(i, j, k) * sizes[k] as u64) as i64;
            }
        }
    }
    let mut suffix = vec![0usize; r + 1];
    for i in (0..r).rev() {
        suffix[i] = suffix[i + 1] + sizes[i];
    }
    let mut state = ClassDfs {
        r,
        sizes: &sizes,
        suffix: &suffix,
        pairs: &pairs,
        signs: vec![1i8; r],
        best: None,
        evaluations: 0,
    };
    state.visit(0, group.order() / 2);
    let signs = state.best.ok_or(Error::NoBalancedClassFunction)?.1;
    let evaluations = state.evaluations;
    let mut f = SignFunction::constant(group, 1);
    for (i, class) in cs.classes.classes().iter().enumerate() {
        for &x in class {
            f.set(x, signs[i]);
        }
    }
    Ok(SearchResult::new(
        f,
        Strategy::ClassFunction,
        true,
        evaluations,
        None,
    ))
}

struct ClassDfs<'a> {
    r: usize,
    sizes: &'a [usize],
    suffix: &'a [usize],
    pairs: &'a [i64],
    signs: Vec<i8>,
    best: Option<(i64, Vec<i8>)>,
    evaluations: u64,
}

impl ClassDfs<'_> {
    fn visit(&mut self, i: usize, need: usize) {
        if need == 0 {
            self.evaluate();
            return;
        }
        if i == self.r || self.suffix[i] < need {
            return;
        }
        self.visit(i + 1, need);
        if self.sizes[i] <= need {
            self.signs[i] = -1;
            self.visit(i + 1, need - self.sizes[i]);
            self.signs[i] = 1;
        }
    }

    fn evaluate(&mut self) {
        let r = self.r;
        let s = &self.signs;
        let mut total = 0i64;
        for i in 0..r {
            for j in 0..r {
                let sij = (s[i] * s[j]) as i64;
                let row = &self.pairs[(i * r + j) * r..(i * r + j + 1) * r];
                let inner: i64 = row.iter().zip(s).map(|(&p, &sk)| p * sk as i64).sum();
                total += sij * inner;
            }
        }
        self.evaluations += 1;
        if self.best.as_ref().is_none_or(|b| total > b.0) {
            self.best = Some((total, s.clone()));
        }
    }
}

/// Exact maximum bias over balanced functions constant on the left cosets of `subgroup`.
pub fn coset_constant_search(subgroup: &Subgroup, exec: Exec) -> Result<SearchResult> {
    let group = subgroup.group();
    let m = subgroup.index();
    if m > MAX_COSET_INDEX {
        return Err(Error::TooLarge {
            what: "subgroup index for coset search",
            size: m,
            limit: MAX_COSET_INDEX,
        });
    }
    if m % 2 == 1 {
        return Err(Error::InvalidInput(format!(
            "subgroup index {m} is odd, so no coset-constant function is balanced"
        )));
    }
    let transversal = subgroup.left_transversal();
    let n = group.order();
    let coset: Vec<usize> = (0..n).map(|x| transversal.coset_index(x)).collect();
    let mut counts = vec![0i64; m * m * m];
    for x in 0..n {
        for y in 0..n {
            counts[(coset[x] * m + coset[y]) * m + coset[group.mul(x, y)]] += 1;
        }
    }
    let tensor: Vec<Vec<(u8, i64)>> = (0..m * m)
        .map(|ab| {
            (0..m)
                .filter(|&c| counts[ab * m + c] != 0)
                .map(|c| (c as u8, counts[ab * m + c]))
                .collect()
        })
        .collect();
    let sign = |mask: u64, k: usize| 1 - 2 * ((mask >> k) & 1) as i64;
    let (_, mask, evaluations) = best_combination(m, m / 2, exec, |mask| {
        let mut total = 0i64;
        for a in 0..m {
            let sa = sign(mask, a);
            for b in 0..m {
                let inner: i64 = tensor[a * m + b]
                    .iter()
                    .map(|&(c, count)| count * sign(mask, c as usize))
                    .sum();
                total += sa * sign(mask, b) * inner;
            }
        }
        total
    });
    let values: Vec<i8> = coset.iter().map(|&k| sign(mask, k) as i8).collect();
    let f = SignFunction::from_values(group, &values)?;
    Ok(SearchResult::new(
        f,
        Strategy::CosetConstant,
        true,
        evaluations,
        None,
    ))
}
