//! First-improvement hill climbing over balance-preserving swaps.
//!
//! With `S = Σ_{x,y} f(x) f(y) f(xy)` the climber maintains
//! `R(u) = Σ_y f(y) f(uy)`, `L(u) = Σ_x f(x) f(xu)` and `C(u) = (f * f)(u)`.
//! Flipping `a` changes `S` by `-2 Q(a)`, where `Q(a)` sums the terms in which
//! `a` occurs an odd number of times; a swap of `a` and `b` changes it by
//! `-2 (Q(a) + Q(b) - 2 X(a, b))`, where `X` sums the terms holding exactly
//! one `a` and one `b`. Each candidate swap costs O(1) and an accepted swap
//! costs O(|G|).

use std::sync::Arc;

use rand::seq::SliceRandom;

use super::{require_even, SearchResult, Strategy};
use crate::group::Group;
use crate::{rng, Error, Exec, Result, SignFunction};

#[derive(Debug, Clone)]
pub struct LocalSearchConfig {
    pub seed: u64,
    /// Random starting points, in addition to `starts`.
    pub restarts: usize,
    /// Cap on accepted swaps per restart.
    pub max_steps: usize,
    /// Extra starting points, climbed first.
    pub starts: Vec<SignFunction>,
}

impl Default for LocalSearchConfig {
    fn default() -> Self {
        LocalSearchConfig {
            seed: 0,
            restarts: 20,
            max_steps: 100_000,
            starts: Vec::new(),
        }
    }
}

/// Left and right multiplication tables shared by all restarts.
pub(super) struct Tables {
    n: usize,
    e: usize,
    /// `left[x·n + y] = xy`
    left: Vec<u16>,
    /// `right[y·n + x] = xy`
    right: Vec<u16>,
    inv: Vec<usize>,
    square: Vec<usize>,
}

impl Tables {
    pub(super) fn new(group: &Group) -> Tables {
        let n = group.order();
        let mut left = vec![0u16; n * n];
        let mut right = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                let xy = group.mul(x, y) as u16;
                left[x * n + y] = xy;
                right[y * n + x] = xy;
            }
        }
        Tables {
            n,
            e: group.identity(),
            left,
            right,
            inv: (0..n).map(|x| group.inv(x)).collect(),
            square: (0..n).map(|x| group.mul(x, x)).collect(),
        }
    }

    #[inline]
    fn lrow(&self, x: usize) -> &[u16] {
        &self.left[x * self.n..(x + 1) * self.n]
    }

    #[inline]
    fn rrow(&self, y: usize) -> &[u16] {
        &self.right[y * self.n..(y + 1) * self.n]
    }
}

pub(super) struct Climber<'a> {
    t: &'a Tables,
    pub(super) f: Vec<i8>,
    r: Vec<i64>,
    l: Vec<i64>,
    c: Vec<i64>,
    pub(super) s: i64,
}

impl<'a> Climber<'a> {
    pub(super) fn new(t: &'a Tables, f: Vec<i8>) -> Climber<'a> {
        let n = t.n;
        let v = |x: u16| f[x as usize] as i64;
        let mut r = vec![0i64; n];
        let mut l = vec![0i64; n];
        let mut c = vec![0i64; n];
        for u in 0..n {
            let (lu, ru) = (t.lrow(u), t.rrow(u));
            for y in 0..n {
                let fy = f[y] as i64;
                r[u] += fy * v(lu[y]);
                l[u] += fy * v(ru[y]);
                c[u] += fy * v(ru[t.inv[y]]);
            }
        }
        let s = (0..n).map(|x| f[x] as i64 * r[x]).sum();
        Climber { t, f, r, l, c, s }
    }

    #[inline]
    fn v(&self, x: usize) -> i64 {
        self.f[x] as i64
    }

    /// Sum of the terms of `S` containing `a` an odd number of times.
    #[inline]
    pub(super) fn odd_terms(&self, a: usize) -> i64 {
        let base = self.v(a) * (self.r[a] + self.l[a] + self.c[a]);
        if a == self.t.e {
            base - 2 * self.v(a)
        } else {
            base - 2 * self.v(self.t.square[a]) - 4 * self.v(self.t.e)
        }
    }

    /// Sum of the terms containing exactly one `a`, one `b` and a third element.
    #[inline]
    fn cross(&self, a: usize, b: usize) -> i64 {
        let t = self.t;
        let (ai, bi) = (t.inv[a], t.inv[b]);
        let (la, lai, ra, rai) = (t.lrow(a), t.lrow(ai), t.rrow(a), t.rrow(ai));
        let thirds = [la[b], ra[b], lai[b], ra[bi], rai[b], la[bi]];
        let sum: i64 = thirds
            .iter()
            .map(|&x| x as usize)
            .filter(|&x| x != a && x != b)
            .map(|x| self.v(x))
            .sum();
        self.v(a) * self.v(b) * sum
    }

    /// Change in `S` from flipping both `a` and `b`.
    #[inline]
    pub(super) fn swap_delta(&self, a: usize, b: usize) -> i64 {
        -2 * (self.odd_terms(a) + self.odd_terms(b) - 2 * self.cross(a, b))
    }

    pub(super) fn flip(&mut self, a: usize) {
        let t = self.t;
        let delta = -2 * self.odd_terms(a);
        let va = self.v(a);
        let ai = t.inv[a];
        let a2 = t.square[a];
        let (la, ra, lai, rai) = (t.lrow(a), t.rrow(a), t.lrow(ai), t.rrow(ai));
        let f = &self.f;
        let v = |x: u16| f[x as usize] as i64;
        for u in 0..t.n {
            let ui = t.inv[u];
            if u != t.e {
                self.r[u] -= 2 * va * (v(ra[u]) + v(ra[ui]));
                self.l[u] -= 2 * va * (v(la[u]) + v(la[ui]));
            }
            if u != a2 {
                self.c[u] -= 2 * va * (v(lai[u]) + v(rai[u]));
            }
        }
        self.f[a] = -self.f[a];
        self.s += delta;
    }

    /// Climbs until no swap improves or `max_steps` swaps were accepted.
    fn climb(&mut self, rng: &mut rng::Rng, max_steps: usize) -> u64 {
        let n = self.f.len();
        let mut pos: Vec<usize> = (0..n).filter(|&x| self.f[x] == 1).collect();
        let mut neg: Vec<usize> = (0..n).filter(|&x| self.f[x] == -1).collect();
        pos.shuffle(rng);
        neg.shuffle(rng);
        let mut steps = 0;
        let mut evaluations = 0u64;
        loop {
            let mut improved = false;
            for plus in pos.iter_mut() {
                for minus in neg.iter_mut() {
                    if steps == max_steps {
                        return evaluations;
                    }
                    let (a, b) = (*plus, *minus);
                    evaluations += 1;
                    if self.swap_delta(a, b) > 0 {
                        self.flip(a);
                        self.flip(b);
                        *plus = b;
                        *minus = a;
                        steps += 1;
                        improved = true;
                    }
                }
            }
            if !improved {
                return evaluations;
            }
        }
    }
}

/// Best balanced function found by hill climbing: a lower bound on the maximum bias.
pub fn local_search_max_bias(
    group: &Arc<Group>,
    config: &LocalSearchConfig,
    exec: Exec,
) -> Result<SearchResult> {
    require_even(group)?;
    if !group.has_table() {
        return Err(Error::TooLarge {
            what: "group for local search (needs a multiplication table)",
            size: group.order(),
            limit: crate::GroupLimits::default().table_cap,
        });
    }
    for s in &config.starts {
        if s.group().spec() != group.spec() || !s.is_balanced() {
            return Err(Error::InvalidInput(
                "local search starts must be balanced functions on the searched group".into(),
            ));
        }
    }
    let total = config.starts.len() + config.restarts;
    if total == 0 {
        return Err(Error::InvalidInput(
            "local search needs at least one start".into(),
        ));
    }
    let tables = Tables::new(group);
    let runs = exec.map(0..total, |k| -> Result<(i64, Vec<i8>, u64)> {
        let mut rng = rng::stream_rng(config.seed, k as u64);
        let start = match config.starts.get(k) {
            Some(f) => f.clone(),
            None => SignFunction::random_balanced_from(group, &mut rng)?,
        };
        let mut climber = Climber::new(&tables, start.values());
        let evaluations = climber.climb(&mut rng, config.max_steps);
        Ok((climber.s, climber.f, evaluations))
    });
    let mut best: Option<(i64, Vec<i8>)> = None;
    let mut evaluations = 0;
    for run in runs {
        let (s, f, e) = run?;
        evaluations += e;
        if best.as_ref().is_none_or(|b| s > b.0) {
            best = Some((s, f));
        }
    }
    let (_, values) = best.expect("at least one start");
    let f = SignFunction::from_values(group, &values)?;
    Ok(SearchResult::new(
        f,
        Strategy::Local,
        false,
        evaluations,
        Some(config.seed),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::{bound_thm1, min_nontrivial_dim, ChartabConfig};
    use crate::search::exhaustive_max_bias;
    use rand::Rng as _;

    #[test]
    fn deltas_match_brute_force() {
        for spec in ["S4", "D5", "Z2xZ6", "A4"] {
            let g = Group::parse(spec).unwrap();
            let mut rng = rng::rng(11);
            let f = SignFunction::random_balanced_from(&g, &mut rng).unwrap();
            let tables = Tables::new(&g);
            let mut c = Climber::new(&tables, f.values());
            assert_eq!(c.s, f.triple_sum_naive());
            for _ in 0..200 {
                let a = rng.random_range(0..g.order());
                let b = rng.random_range(0..g.order());
                if a == b {
                    continue;
                }
                let predicted = c.swap_delta(a, b);
                let before = c.s;
                c.flip(a);
                c.flip(b);
                let brute = SignFunction::from_values(&g, &c.f)
                    .unwrap()
                    .triple_sum_naive();
                assert_eq!(c.s, brute, "{spec}");
                assert_eq!(c.s - before, predicted, "{spec}");
            }
        }
    }

    #[test]
    fn deterministic_and_bounded() {
        let g = Group::parse("A5").unwrap();
        let config = LocalSearchConfig {
            seed: 3,
            restarts: 4,
            ..Default::default()
        };
        let a = local_search_max_bias(&g, &config, Exec::Parallel).unwrap();
        let b = local_search_max_bias(&g, &config, Exec::Sequential).unwrap();
        assert_eq!(a.best_f, b.best_f);
        assert_eq!(a.evaluations, b.evaluations);
        a.verify().unwrap();
        let d = min_nontrivial_dim(&g, &ChartabConfig::default()).unwrap();
        let bias = *a.best_bias.numer() as f64 / *a.best_bias.denom() as f64;
        assert!(bias <= bound_thm1(d));
    }

    #[test]
    fn reaches_homomorphisms_on_small_groups() {
        let g = Group::parse("A4xZ2").unwrap();
        let exact = exhaustive_max_bias(&g, Exec::default()).unwrap();
        let found =
            local_search_max_bias(&g, &LocalSearchConfig::default(), Exec::default()).unwrap();
        assert!(found.best_bias <= exact.best_bias);
        let start = exact.best_f.clone();
        let seeded = LocalSearchConfig {
            restarts: 0,
            starts: vec![start],
            ..Default::default()
        };
        let r = local_search_max_bias(&g, &seeded, Exec::default()).unwrap();
        assert_eq!(r.best_bias, exact.best_bias);
    }
}
