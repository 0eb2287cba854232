//! Lower-bound constructions: extending a sign character of a subgroup to a
//! balanced function on the whole group, one random sign per left coset.
//!
//! Given `φ: H -> {±1}` and a left transversal `T` with `T[0] = 1`, the
//! extension is `f(c·h) = s(c)·φ(h)` with `s(1) = +1`. Averaged over the
//! signs, `E[T(f)] ≥ ½(|H|/|G|)(1 - |N(H)|/|G|) + |H|²/|G|²`, and
//! `E[T(f)] ≥ |H|/|G|` when every representative squares into `ker φ`.

use std::sync::Arc;

use rand::Rng as _;

use crate::exec::Exec;
use crate::group::{Group, Subgroup, Transversal};
use crate::signfun::SignFunction;
use crate::{perm, rng, Error, Rational, Result};

/// A homomorphism `φ: H -> {±1}`, stored densely over the parent group's ids.
#[derive(Debug, Clone)]
pub struct SubgroupSign {
    subgroup: Subgroup,
    values: Vec<i8>,
}

impl SubgroupSign {
    /// Validates that `values` covers `H` exactly and is multiplicative.
    pub fn new(subgroup: &Subgroup, values: &[(usize, i8)]) -> Result<SubgroupSign> {
        let g = subgroup.group();
        let mut dense = vec![0i8; g.order()];
        for &(h, v) in values {
            g.check_id(h)?;
            if !subgroup.contains(h) {
                return Err(Error::InvalidInput(format!(
                    "{} is not in the subgroup",
                    g.format_element(h)
                )));
            }
            if v != 1 && v != -1 {
                return Err(Error::InvalidInput(format!("sign {v} is not ±1")));
            }
            dense[h] = v;
        }
        if subgroup.members().iter().any(|&h| dense[h] == 0) {
            return Err(Error::InvalidInput(
                "sign missing for a subgroup element".into(),
            ));
        }
        let sign = SubgroupSign {
            subgroup: subgroup.clone(),
            values: dense,
        };
        if !sign.is_homomorphism() {
            return Err(Error::InvalidInput(
                "subgroup sign is not a homomorphism".into(),
            ));
        }
        Ok(sign)
    }

    /// First nontrivial homomorphism determined by ±1 values on `generators`,
    /// trying assignments in binary order with `-1` encoded as a set bit.
    pub fn from_generators(subgroup: &Subgroup, generators: &[usize]) -> Result<SubgroupSign> {
        let g = subgroup.group();
        if generators.len() > 20 {
            return Err(Error::TooLarge {
                what: "generator list",
                size: generators.len(),
                limit: 20,
            });
        }
        for assignment in 1u32..(1 << generators.len()) {
            let mut dense = vec![0i8; g.order()];
            dense[0] = 1;
            let mut queue = vec![0usize];
            let mut consistent = true;
            let mut next = 0;
            'bfs: while next < queue.len() {
                let h = queue[next];
                next += 1;
                for (k, &gen) in generators.iter().enumerate() {
                    let v = if (assignment >> k) & 1 == 1 { -1 } else { 1 };
                    let hg = g.mul(h, gen);
                    let want = dense[h] * v;
                    if dense[hg] == 0 {
                        dense[hg] = want;
                        queue.push(hg);
                    } else if dense[hg] != want {
                        consistent = false;
                        break 'bfs;
                    }
                }
            }
            if consistent && queue.len() == subgroup.order() {
                let sign = SubgroupSign {
                    subgroup: subgroup.clone(),
                    values: dense,
                };
                if sign.is_nontrivial() {
                    return Ok(sign);
                }
            }
        }
        Err(Error::InvalidInput(
            "subgroup has no nontrivial homomorphism to ±1".into(),
        ))
    }

    /// `φ(g^k) = (-1)^k` on `⟨g⟩`, which is a homomorphism iff the order of `g` is even;
    /// the trivial character otherwise.
    pub fn cyclic(group: &Arc<Group>, generator: usize) -> Result<SubgroupSign> {
        let sub = Subgroup::closure(group, &[generator])?;
        let order = group.element_order(generator);
        let mut values = Vec::with_capacity(order);
        let mut x = 0;
        for k in 0..order {
            let v = if order.is_multiple_of(2) && k % 2 == 1 {
                -1
            } else {
                1
            };
            values.push((x, v));
            x = group.mul(x, generator);
        }
        SubgroupSign::new(&sub, &values)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn group(&self) -> &Arc<Group> {
        self.subgroup.group()
    }

    /// `φ(h)`; panics if `h ∉ H`.
    #[inline]
    pub fn value(&self, h: usize) -> i8 {
        let v = self.values[h];
        assert!(v != 0, "element outside the subgroup");
        v
    }

    pub fn is_nontrivial(&self) -> bool {
        self.subgroup
            .members()
            .iter()
            .any(|&h| self.values[h] == -1)
    }

    fn is_homomorphism(&self) -> bool {
        let g = self.group();
        let m = self.subgroup.members();
        m.iter().all(|&a| {
            m.iter()
                .all(|&b| self.values[g.mul(a, b)] == self.values[a] * self.values[b])
        })
    }
}

/// How the coset signs are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignSource {
    /// One sign per representative, in transversal order; the first must be `+1`.
    Explicit(Vec<i8>),
    /// Independent uniform signs for every nontrivial representative.
    Seed(u64),
}

#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub f: SignFunction,
    /// `(representative id, sign)` in transversal order.
    pub signs: Vec<(usize, i8)>,
    pub t_exact: Rational,
    pub bound_thm3: Rational,
    /// Present when the weakened involution premise holds.
    pub bound_thm4: Option<Rational>,
    pub transversal_involutive: bool,
    pub weakened_premise_holds: bool,
}

fn check_pair(phi: &SubgroupSign, transversal: &Transversal) -> Result<()> {
    if phi.subgroup() != transversal.subgroup() {
        return Err(Error::InvalidInput(
            "transversal and sign belong to different subgroups".into(),
        ));
    }
    if !phi.is_nontrivial() {
        return Err(Error::InvalidInput(
            "the subgroup sign is trivial, so the extension is not balanced".into(),
        ));
    }
    Ok(())
}

fn resolve_signs(source: &SignSource, count: usize) -> Result<Vec<i8>> {
    match source {
        SignSource::Explicit(signs) => {
            if signs.len() != count {
                return Err(Error::InvalidInput(format!(
                    "expected {count} coset signs, got {}",
                    signs.len()
                )));
            }
            if signs[0] != 1 {
                return Err(Error::InvalidInput(
                    "the identity coset sign must be +1".into(),
                ));
            }
            if signs.iter().any(|&s| s != 1 && s != -1) {
                return Err(Error::InvalidInput("coset signs must be ±1".into()));
            }
            Ok(signs.clone())
        }
        SignSource::Seed(seed) => Ok(random_signs(&mut rng::rng(*seed), count)),
    }
}

fn random_signs(rng: &mut rng::Rng, count: usize) -> Vec<i8> {
    let mut signs = vec![1i8; count];
    for s in signs.iter_mut().skip(1) {
        *s = if rng.random::<bool>() { 1 } else { -1 };
    }
    signs
}

/// `f(c·h) = signs[c]·φ(h)`.
fn extension(phi: &SubgroupSign, transversal: &Transversal, signs: &[i8]) -> SignFunction {
    let g = transversal.group();
    let mut f = SignFunction::constant(g, 1);
    for (k, &c) in transversal.reps().iter().enumerate() {
        for &h in phi.subgroup().members() {
            f.set(g.mul(c, h), signs[k] * phi.value(h));
        }
    }
    f
}

/// Extends `φ` along the cosets of `transversal`.
pub fn extend_by_cosets(
    phi: &SubgroupSign,
    transversal: &Transversal,
    signs: &SignSource,
) -> Result<ConstructionReport> {
    check_pair(phi, transversal)?;
    let signs = resolve_signs(signs, transversal.len())?;
    report_for(phi, transversal, &signs, Exec::default())
}

fn report_for(
    phi: &SubgroupSign,
    transversal: &Transversal,
    signs: &[i8],
    exec: Exec,
) -> Result<ConstructionReport> {
    let f = extension(phi, transversal, signs);
    if !f.is_balanced() {
        return Err(Error::InvariantViolated(
            "coset extension is not balanced".into(),
        ));
    }
    let weakened = check_weakened_premise(phi, transversal)?;
    Ok(ConstructionReport {
        t_exact: f.triple_correlation_with(exec),
        f,
        signs: transversal
            .reps()
            .iter()
            .copied()
            .zip(signs.iter().copied())
            .collect(),
        bound_thm3: theorem3_bound(phi.subgroup())?,
        bound_thm4: weakened.then(|| theorem4_bound(phi.subgroup())),
        transversal_involutive: transversal.is_involutive(),
        weakened_premise_holds: weakened,
    })
}

/// `½(|H|/|G|)(1 - |N(H)|/|G|) + |H|²/|G|²`.
pub fn theorem3_bound(subgroup: &Subgroup) -> Result<Rational> {
    let g = subgroup.group().order() as i64;
    let h = subgroup.order() as i64;
    let n = subgroup.normalizer()?.order() as i64;
    Ok(
        Rational::new(h, 2 * g) * (Rational::from_integer(1) - Rational::new(n, g))
            + Rational::new(h * h, g * g),
    )
}

/// `|H|/|G|`.
pub fn theorem4_bound(subgroup: &Subgroup) -> Rational {
    Rational::new(subgroup.order() as i64, subgroup.group().order() as i64)
}

/// Representatives of the cosets of the embedded `S_{n-2}` in `A_n`, all involutions.
///
/// One representative per unordered pair `{i, j}`, in lexicographic pair
/// order: the identity for `{1,2}`, `(1 i)(2 j)` when `{i,j}` avoids
/// `{1,2}`, `(2 j)(k l)` for `{1,j}` and `(1 j)(k l)` for `{2,j}`, where
/// `k < l` are the two smallest points of `{3..n} \ {j}`.
pub fn involutive_transversal_an(subgroup: &Subgroup) -> Result<Transversal> {
    let g = subgroup.group();
    let n = g
        .alternating_degree()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not alternating", g.spec())))?;
    if n <= 4 {
        return Err(Error::InvalidInput(format!(
            "no even involution maps {{1,2}} to {{1,3}} in A{n}; need n >= 5"
        )));
    }
    let transpositions = |pairs: &[(usize, usize)]| {
        let mut p = perm::identity(n);
        for &(a, b) in pairs {
            p.swap(a - 1, b - 1);
        }
        g.perm_id(&p).expect("even permutation")
    };
    let smallest_two = |j: usize| {
        let mut free = (3..=n).filter(|&p| p != j);
        (free.next().unwrap(), free.next().unwrap())
    };
    let mut reps = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let rep = match (i, j) {
                (1, 2) => 0,
                (1, j) => {
                    let (k, l) = smallest_two(j);
                    transpositions(&[(2, j), (k, l)])
                }
                (2, j) => {
                    let (k, l) = smallest_two(j);
                    transpositions(&[(1, j), (k, l)])
                }
                (i, j) => transpositions(&[(1, i), (2, j)]),
            };
            reps.push(rep);
        }
    }
    Transversal::from_reps(subgroup, reps)
}

/// For every representative `c` with `H ∩ cHc ≠ ∅`: `c² ∈ H` and `φ(c²) = 1`.
pub fn check_weakened_premise(phi: &SubgroupSign, transversal: &Transversal) -> Result<bool> {
    let g = transversal.group();
    let h = phi.subgroup();
    for &c in transversal.reps() {
        if h.intersections(c)?.conj_same.is_empty() {
            continue;
        }
        let c2 = g.mul(c, c);
        if !h.contains(c2) || phi.value(c2) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1 {
    /// `H ∩ cHc⁻¹`
    pub domain: Vec<usize>,
    /// `ψ(h) = φ(h) φ(c⁻¹hc)` over `domain`.
    pub psi: Vec<i8>,
    /// Fraction of the domain where `ψ = +1`.
    pub fraction: Rational,
}

/// `ψ(h) = φ(h)φ(c⁻¹hc)` on `H ∩ cHc⁻¹`; checks that `ψ` is a homomorphism
/// and that its kernel is at least half of the domain.
pub fn lemma1_kernel(phi: &SubgroupSign, c: usize) -> Result<Lemma1> {
    let g = phi.group();
    let domain = phi.subgroup().intersections(c)?.conj_inverse;
    let psi: Vec<i8> = domain
        .iter()
        .map(|&h| phi.value(h) * phi.value(g.conjugate(h, c)))
        .collect();
    let index_of = |x: usize| domain.binary_search(&x).ok();
    for (a, &ha) in domain.iter().enumerate() {
        for (b, &hb) in domain.iter().enumerate() {
            let k = index_of(g.mul(ha, hb))
                .ok_or_else(|| Error::InvariantViolated("H ∩ cHc⁻¹ is not closed".into()))?;
            if psi[k] != psi[a] * psi[b] {
                return Err(Error::InvariantViolated("ψ is not a homomorphism".into()));
            }
        }
    }
    let plus = psi.iter().filter(|&&v| v == 1).count();
    let fraction = Rational::new(plus as i64, domain.len() as i64);
    if fraction < Rational::new(1, 2) {
        return Err(Error::InvariantViolated(format!(
            "ker ψ covers only {fraction} of H ∩ cHc⁻¹"
        )));
    }
    Ok(Lemma1 {
        domain,
        psi,
        fraction,
    })
}

/// `c ∉ N(H) ⇒ |H ∩ cHc| ≤ |H|/2`.
pub fn lemma2_check(subgroup: &Subgroup, c: usize) -> Result<bool> {
    if subgroup.is_normalized_by(c) {
        return Ok(true);
    }
    let both = subgroup.intersections(c)?;
    Ok(2 * both.conj_same.len() <= subgroup.order())
}

/// `(h, φ(h), φ(chc))` for every `h ∈ H` with `chc ∈ H`.
pub fn chc_signs(phi: &SubgroupSign, c: usize) -> Vec<(usize, i8, i8)> {
    let g = phi.group();
    phi.subgroup()
        .members()
        .iter()
        .filter_map(|&h| {
            let chc = g.mul(g.mul(c, h), c);
            phi.subgroup()
                .contains(chc)
                .then(|| (h, phi.value(h), phi.value(chc)))
        })
        .collect()
}

pub const MAX_EXACT_COSETS: usize = 20;

/// `E_s[T]` averaged over all `2^(|T|-1)` sign patterns.
pub fn exact_sign_expectation(
    phi: &SubgroupSign,
    transversal: &Transversal,
    exec: Exec,
) -> Result<Rational> {
    check_pair(phi, transversal)?;
    let m = transversal.len();
    if m > MAX_EXACT_COSETS {
        return Err(Error::TooLarge {
            what: "transversal for exact sign enumeration",
            size: m,
            limit: MAX_EXACT_COSETS,
        });
    }
    let patterns = 1usize << (m - 1);
    let total = exec.sum_i64(0..patterns, |p| {
        let signs: Vec<i8> = (0..m)
            .map(|k| {
                if k > 0 && (p >> (k - 1)) & 1 == 1 {
                    -1
                } else {
                    1
                }
            })
            .collect();
        extension(phi, transversal, &signs).triple_sum(Exec::Sequential)
    });
    let n = transversal.group().order() as i64;
    Ok(Rational::new(total, n * n * patterns as i64))
}

/// The same expectation in closed form: the only triples that survive the
/// average over independent signs are those whose nontrivial cosets pair up.
pub fn expected_t_closed_form(phi: &SubgroupSign, transversal: &Transversal) -> Result<Rational> {
    check_pair(phi, transversal)?;
    let g = transversal.group();
    let n = g.order();
    let parts: Vec<(usize, i8)> = (0..n)
        .map(|x| {
            let (k, h) = transversal.decompose(x);
            (k, phi.value(h))
        })
        .collect();
    let total = Exec::default().sum_i64(0..n, |x| {
        let (a, px) = parts[x];
        let mut s = 0i64;
        for (y, &(b, py)) in parts.iter().enumerate() {
            let (c, pz) = parts[g.mul(x, y)];
            let survives = match (a == 0, b == 0, c == 0) {
                (true, true, true) => true,
                (true, false, false) => b == c,
                (false, true, false) => a == c,
                (false, false, true) => a == b,
                _ => false,
            };
            if survives {
                s += (px * py * pz) as i64;
            }
        }
        s
    });
    Ok(Rational::new(total, (n * n) as i64))
}

/// `(1/|G|²) Σ_{x ∈ G, y ∈ H} f(x) f(y) f(xy)`.
pub fn y_in_subgroup_contribution(f: &SignFunction, subgroup: &Subgroup) -> Rational {
    let g = f.group();
    let n = g.order();
    let mut s = 0i64;
    for x in 0..n {
        for &y in subgroup.members() {
            s += (f.value(x) * f.value(y) * f.value(g.mul(x, y))) as i64;
        }
    }
    Rational::new(s, (n * n) as i64)
}

#[derive(Debug, Clone)]
pub struct MonteCarlo {
    pub t_values: Vec<Rational>,
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator).
    pub std: f64,
    /// Index of the first trial attaining the largest `T`.
    pub best_trial: usize,
    pub seed: u64,
}

impl MonteCarlo {
    /// Signs used by trial `k`.
    pub fn trial_signs(seed: u64, trial: usize, count: usize) -> Vec<i8> {
        random_signs(&mut rng::stream_rng(seed, trial as u64), count)
    }
}

/// Independent sign draws; trial `k` uses stream `k` of `seed`.
pub fn monte_carlo(
    phi: &SubgroupSign,
    transversal: &Transversal,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<MonteCarlo> {
    check_pair(phi, transversal)?;
    if trials == 0 {
        return Err(Error::InvalidInput(
            "Monte Carlo needs at least one trial".into(),
        ));
    }
    let m = transversal.len();
    let n = transversal.group().order() as i64;
    let sums = exec.map(0..trials, |k| {
        let signs = MonteCarlo::trial_signs(seed, k, m);
        extension(phi, transversal, &signs).triple_sum(Exec::Sequential)
    });
    let t_values: Vec<Rational> = sums.iter().map(|&s| Rational::new(s, n * n)).collect();
    let xs: Vec<f64> = sums.iter().map(|&s| s as f64 / (n * n) as f64).collect();
    let mean = xs.iter().sum::<f64>() / trials as f64;
    let std = if trials > 1 {
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64).sqrt()
    } else {
        0.0
    };
    let best = sums.iter().max().copied().unwrap_or_default();
    let best_trial = sums.iter().position(|&s| s == best).unwrap_or(0);
    Ok(MonteCarlo {
        t_values,
        mean,
        std,
        best_trial,
        seed,
    })
}

/// Report for one Monte Carlo trial, reproduced from its derived signs.
pub fn trial_report(
    phi: &SubgroupSign,
    transversal: &Transversal,
    seed: u64,
    trial: usize,
) -> Result<ConstructionReport> {
    check_pair(phi, transversal)?;
    let signs = MonteCarlo::trial_signs(seed, trial, transversal.len());
    report_for(phi, transversal, &signs, Exec::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::embed_parity_subgroup_an;

    fn z4_setup() -> (Arc<Group>, SubgroupSign, Transversal) {
        let g = Group::parse("Z4").unwrap();
        let h = Subgroup::from_members(&g, &[0, 2]).unwrap();
        let phi = SubgroupSign::new(&h, &[(0, 1), (2, -1)]).unwrap();
        let t = h.left_transversal();
        (g, phi, t)
    }

    #[test]
    fn z4_both_sign_patterns() {
        let (_, phi, t) = z4_setup();
        for s in [1, -1] {
            let r = extend_by_cosets(&phi, &t, &SignSource::Explicit(vec![1, s])).unwrap();
            assert!(r.f.is_balanced());
            assert_eq!(r.t_exact, Rational::new(1, 2));
            assert_eq!(r.f.bias(), Rational::new(3, 4));
            assert_eq!(r.bound_thm3, Rational::new(1, 4));
            assert!(!r.weakened_premise_holds);
            assert_eq!(r.bound_thm4, None);
        }
    }

    #[test]
    fn z4_chc_flips_every_sign() {
        let (_, phi, _) = z4_setup();
        let pairs = chc_signs(&phi, 1);
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|&(_, a, b)| a == -b));
    }

    #[test]
    fn extension_restricts_to_phi_on_cosets() {
        let a5 = Group::parse("A5").unwrap();
        let e = embed_parity_subgroup_an(&a5).unwrap();
        let t = e.subgroup.left_transversal();
        let r = extend_by_cosets(&e.sign, &t, &SignSource::Seed(9)).unwrap();
        for (k, &(c, s)) in r.signs.iter().enumerate() {
            assert_eq!(c, t.reps()[k]);
            for &h in e.subgroup.members() {
                assert_eq!(r.f.value(a5.mul(c, h)), s * e.sign.value(h));
            }
        }
        assert_eq!(r.signs[0], (0, 1));
    }

    #[test]
    fn whole_group_extension_is_phi() {
        let s3 = Group::parse("S3").unwrap();
        let whole = Subgroup::whole(&s3);
        let phi = SubgroupSign::from_generators(&whole, &[1, 2, 3, 4, 5]).unwrap();
        let t = whole.left_transversal();
        let r = extend_by_cosets(&phi, &t, &SignSource::Seed(0)).unwrap();
        assert_eq!(r.t_exact, Rational::from_integer(1));
    }

    #[test]
    fn rejects_bad_inputs() {
        let (g, phi, t) = z4_setup();
        assert!(extend_by_cosets(&phi, &t, &SignSource::Explicit(vec![1])).is_err());
        assert!(extend_by_cosets(&phi, &t, &SignSource::Explicit(vec![-1, 1])).is_err());
        let h = t.subgroup().clone();
        let trivial = SubgroupSign::new(&h, &[(0, 1), (2, 1)]).unwrap();
        assert!(extend_by_cosets(&trivial, &t, &SignSource::Seed(1)).is_err());
        let bad = Subgroup::from_members(&g, &[0, 2]).unwrap();
        assert!(SubgroupSign::new(&bad, &[(0, -1), (2, -1)]).is_err());
    }

    #[test]
    fn bounds_examples() {
        let (_, phi, _) = z4_setup();
        assert_eq!(theorem3_bound(phi.subgroup()).unwrap(), Rational::new(1, 4));
        let a5 = Group::parse("A5").unwrap();
        let e5 = embed_parity_subgroup_an(&a5).unwrap();
        assert_eq!(theorem4_bound(&e5.subgroup), Rational::new(1, 10));
        let a6 = Group::parse("A6").unwrap();
        let e6 = embed_parity_subgroup_an(&a6).unwrap();
        assert_eq!(theorem4_bound(&e6.subgroup), Rational::new(1, 15));
    }

    #[test]
    fn involutive_transversal_a5() {
        let a5 = Group::parse("A5").unwrap();
        let e = embed_parity_subgroup_an(&a5).unwrap();
        let t = involutive_transversal_an(&e.subgroup).unwrap();
        assert_eq!(t.len(), 10);
        for &c in t.reps() {
            assert_eq!(a5.mul(c, c), 0);
            assert!(perm::is_even(a5.perm(c).unwrap()));
        }
        // Pairs in lexicographic order: {1,2},{1,3},{1,4},{1,5},{2,3},..,{3,4} is index 7.
        assert_eq!(a5.format_element(t.reps()[7]), "(1 3)(2 4)");
        assert!(check_weakened_premise(&e.sign, &t).unwrap());
    }

    #[test]
    fn involutive_transversal_a6_hits_every_coset_once() {
        let a6 = Group::parse("A6").unwrap();
        let e = embed_parity_subgroup_an(&a6).unwrap();
        let t = involutive_transversal_an(&e.subgroup).unwrap();
        let canonical = e.subgroup.left_transversal();
        let mut hit: Vec<usize> = t.reps().iter().map(|&c| canonical.coset_index(c)).collect();
        hit.sort_unstable();
        assert_eq!(hit, (0..15).collect::<Vec<_>>());
    }

    #[test]
    fn involutive_transversal_refuses_a4() {
        let a4 = Group::parse("A4").unwrap();
        let e = embed_parity_subgroup_an(&a4).unwrap();
        assert!(involutive_transversal_an(&e.subgroup).is_err());
        // Exhaustive: no even involution sends {1,2} to {1,3}.
        let none = (0..a4.order()).all(|x| {
            let p = a4.perm(x).unwrap();
            let image = [p[0].min(p[1]), p[0].max(p[1])];
            !(a4.mul(x, x) == 0 && image == [0, 2])
        });
        assert!(none);
    }

    #[test]
    fn weakened_premise_examples() {
        let (_, phi, t) = z4_setup();
        assert!(!check_weakened_premise(&phi, &t).unwrap());
        let k = Group::parse("Z2xZ2").unwrap();
        let h = Subgroup::from_members(&k, &[0, 2]).unwrap();
        let phi = SubgroupSign::new(&h, &[(0, 1), (2, -1)]).unwrap();
        let t = Transversal::from_reps(&h, vec![0, 1]).unwrap();
        assert!(check_weakened_premise(&phi, &t).unwrap());
    }

    #[test]
    fn lemma1_examples() {
        let (_, phi, _) = z4_setup();
        let l = lemma1_kernel(&phi, 1).unwrap();
        assert_eq!(l.domain, vec![0, 2]);
        assert_eq!(l.fraction, Rational::from_integer(1));
        let a5 = Group::parse("A5").unwrap();
        let e = embed_parity_subgroup_an(&a5).unwrap();
        let t = involutive_transversal_an(&e.subgroup).unwrap();
        for &c in t.reps() {
            let f = lemma1_kernel(&e.sign, c).unwrap().fraction;
            assert!(
                f == Rational::new(1, 2) || f == Rational::from_integer(1),
                "{f}"
            );
        }
    }

    #[test]
    fn lemma2_examples() {
        let s4 = Group::parse("S4").unwrap();
        let x = s4.parse_element("(1 2 3 4)").unwrap();
        let h = Subgroup::closure(&s4, &[x]).unwrap();
        for c in 0..s4.order() {
            assert!(lemma2_check(&h, c).unwrap());
            if !h.is_normalized_by(c) {
                assert!(h.intersections(c).unwrap().conj_same.len() <= 2);
            }
        }
        assert!(lemma2_check(&h, 0).unwrap());
    }

    #[test]
    fn exact_expectation_routes_agree() {
        let a5 = Group::parse("A5").unwrap();
        let e = embed_parity_subgroup_an(&a5).unwrap();
        for t in [
            e.subgroup.left_transversal(),
            involutive_transversal_an(&e.subgroup).unwrap(),
        ] {
            let by_enumeration = exact_sign_expectation(&e.sign, &t, Exec::default()).unwrap();
            let closed = expected_t_closed_form(&e.sign, &t).unwrap();
            assert_eq!(by_enumeration, closed);
        }
        let (_, phi, t) = z4_setup();
        assert_eq!(
            exact_sign_expectation(&phi, &t, Exec::Sequential).unwrap(),
            Rational::new(1, 2)
        );
    }

    #[test]
    fn monte_carlo_is_schedule_independent() {
        let a5 = Group::parse("A5").unwrap();
        let e = embed_parity_subgroup_an(&a5).unwrap();
        let t = involutive_transversal_an(&e.subgroup).unwrap();
        let a = monte_carlo(&e.sign, &t, 64, 7, Exec::Sequential).unwrap();
        let b = monte_carlo(&e.sign, &t, 64, 7, Exec::Parallel).unwrap();
        assert_eq!(a.t_values, b.t_values);
        assert_eq!(a.best_trial, b.best_trial);
        let best = trial_report(&e.sign, &t, 7, a.best_trial).unwrap();
        assert_eq!(best.t_exact, a.t_values[a.best_trial]);
    }

    #[test]
    fn cyclic_sign() {
        let z6 = Group::parse("Z6").unwrap();
        let phi = SubgroupSign::cyclic(&z6, 1).unwrap();
        assert!(phi.is_nontrivial());
        assert_eq!(phi.value(3), -1);
        let odd = SubgroupSign::cyclic(&z6, 2).unwrap();
        assert!(!odd.is_nontrivial());
    }
}
