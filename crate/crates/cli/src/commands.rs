use std::sync::Arc;
use std::time::Instant;

use hombias::chartab::{self, character_table, ChartabConfig, SpectralBounds};
use hombias::construct::{
    check_weakened_premise, exact_sign_expectation, expected_t_closed_form,
    involutive_transversal_an, monte_carlo, theorem3_bound, theorem4_bound, trial_report,
    y_in_subgroup_contribution, SubgroupSign,
};
use hombias::fourier::{FourierSystem, IDENTITY_TOL, PRODUCT_TOL};
use hombias::group::{embed_parity_subgroup_an, ConjugacyClasses};
use hombias::search::{self, LocalSearchConfig, SearchResult, Strategy};
use hombias::{rng, Error, Exec, Group, Result, SignFunction, Subgroup};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{ratio_f64, ratio_string, GapReport, VERSION};
use crate::{AnGapArgs, Command, ConstructArgs, SearchArgs, StrategyArg, TransversalArg};

pub(crate) fn execute(command: &Command) -> Result<Value> {
    match command {
        Command::Bound { spec, seed } => bound(spec, *seed),
        Command::Construct(args) => construct(args),
        Command::Search(args) => search_cmd(args),
        Command::FourierVerify { spec, seed, count } => fourier_verify(spec, *seed, *count),
        Command::Chartab { spec, seed } => chartab_cmd(spec, *seed),
        Command::AnGap(args) => an_gap(args),
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::InvariantViolated(format!("encoding: {e}")))
}

fn bounds_for(group: &Arc<Group>, seed: u64) -> Result<SpectralBounds> {
    let config = ChartabConfig {
        seed,
        ..Default::default()
    };
    chartab::spectral_bounds(group, &config)
}

fn bound(spec: &str, seed: u64) -> Result<Value> {
    let g = Group::parse(spec)?;
    let b = bounds_for(&g, seed)?;
    Ok(json!({
        "version": VERSION,
        "group": g.spec(),
        "order": g.order(),
        "d_min": b.d_min,
        "upper_bound_thm1": b.thm1,
        "upper_bound_thm2": ratio_string(b.thm2),
        "upper_bound_thm2_f64": ratio_f64(b.thm2),
        "seed": seed,
    }))
}

#[derive(Serialize)]
struct ConstructOutput {
    version: &'static str,
    group: String,
    order: usize,
    subgroup_order: usize,
    index: usize,
    subgroup_generators: Vec<String>,
    normalizer_order: usize,
    transversal: &'static str,
    transversal_involutive: bool,
    weakened_premise_holds: bool,
    thm3_bound: String,
    thm3_bound_f64: f64,
    thm4_bound: Option<String>,
    thm4_bound_f64: Option<f64>,
    #[serde(rename = "closed_form_mean_T")]
    closed_form_mean_t: String,
    #[serde(rename = "closed_form_mean_T_f64")]
    closed_form_mean_t_f64: f64,
    #[serde(rename = "exact_mean_T", skip_serializing_if = "Option::is_none")]
    exact_mean_t: Option<String>,
    trials: usize,
    seed: u64,
    #[serde(rename = "mc_mean_T")]
    mc_mean_t: f64,
    mc_std: f64,
    best_trial: usize,
    #[serde(rename = "best_T")]
    best_t: String,
    #[serde(rename = "best_T_f64")]
    best_t_f64: f64,
    best_bias: String,
    best_bias_f64: f64,
    #[serde(rename = "y_in_H_contribution")]
    y_in_h_contribution: String,
    coset_signs: Vec<(String, i8)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<Vec<i8>>,
}

fn construct(args: &ConstructArgs) -> Result<Value> {
    let g = Group::parse(&args.spec)?;
    let (phi, transversal, generators, kind) = if let Some(n) = args.n {
        if g.alternating_degree() != Some(n) {
            return Err(Error::InvalidInput(format!(
                "--n {n} requires the group spec A{n}, got {}",
                g.spec()
            )));
        }
        let emb = embed_parity_subgroup_an(&g)?;
        let (t, kind) = match args.transversal.unwrap_or(TransversalArg::Involutive) {
            TransversalArg::Involutive => (involutive_transversal_an(&emb.subgroup)?, "involutive"),
            TransversalArg::Greedy => (emb.subgroup.left_transversal(), "greedy"),
        };
        (emb.sign, t, emb.generators, kind)
    } else {
        let text = args.subgroup.as_deref().unwrap_or_default();
        let gens = g.parse_generators(text)?;
        if args.transversal == Some(TransversalArg::Involutive) {
            return Err(Error::InvalidInput(
                "--transversal involutive needs --n".into(),
            ));
        }
        let h = Subgroup::closure(&g, &gens)?;
        let phi = SubgroupSign::from_generators(&h, &gens)?;
        let t = h.left_transversal();
        (phi, t, gens, "greedy")
    };
    let h = phi.subgroup();
    let mc = monte_carlo(&phi, &transversal, args.trials, args.seed, Exec::default())?;
    let best = trial_report(&phi, &transversal, args.seed, mc.best_trial)?;
    let closed = expected_t_closed_form(&phi, &transversal)?;
    let exact = if args.exact_signs {
        let e = exact_sign_expectation(&phi, &transversal, Exec::default())?;
        if e != closed {
            return Err(Error::InvariantViolated(format!(
                "sign enumeration {e} disagrees with the closed form {closed}"
            )));
        }
        Some(ratio_string(e))
    } else {
        None
    };
    let thm3 = theorem3_bound(h)?;
    let weakened = check_weakened_premise(&phi, &transversal)?;
    let thm4 = weakened.then(|| theorem4_bound(h));
    let out = ConstructOutput {
        version: VERSION,
        group: g.spec().to_string(),
        order: g.order(),
        subgroup_order: h.order(),
        index: h.index(),
        subgroup_generators: generators.iter().map(|&x| g.format_element(x)).collect(),
        normalizer_order: h.normalizer()?.order(),
        transversal: kind,
        transversal_involutive: transversal.is_involutive(),
        weakened_premise_holds: weakened,
        thm3_bound: ratio_string(thm3),
        thm3_bound_f64: ratio_f64(thm3),
        thm4_bound: thm4.map(ratio_string),
        thm4_bound_f64: thm4.map(ratio_f64),
        closed_form_mean_t: ratio_string(closed),
        closed_form_mean_t_f64: ratio_f64(closed),
        exact_mean_t: exact,
        trials: args.trials,
        seed: args.seed,
        mc_mean_t: mc.mean,
        mc_std: mc.std,
        best_trial: mc.best_trial,
        best_t: ratio_string(best.t_exact),
        best_t_f64: ratio_f64(best.t_exact),
        best_bias: ratio_string(best.f.bias()),
        best_bias_f64: ratio_f64(best.f.bias()),
        y_in_h_contribution: ratio_string(y_in_subgroup_contribution(&best.f, h)),
        coset_signs: best
            .signs
            .iter()
            .map(|&(c, s)| (g.format_element(c), s))
            .collect(),
        f: args.dump_f.then(|| best.f.values()),
    };
    to_value(&out)
}

fn result_value(r: &SearchResult, group: &Group, seed: u64, dump_f: bool) -> Value {
    let evidence = if r.exhaustive {
        "exact maximum over the searched family"
    } else {
        "empirical lower bound"
    };
    let mut v = json!({
        "version": VERSION,
        "group": group.spec(),
        "order": group.order(),
        "strategy": r.strategy.name(),
        "exhaustive": r.exhaustive,
        "evidence": evidence,
        "best_T": ratio_string(r.best_t),
        "best_T_f64": ratio_f64(r.best_t),
        "best_bias": ratio_string(r.best_bias),
        "best_bias_f64": ratio_f64(r.best_bias),
        "evaluations": r.evaluations,
        "seed": seed,
    });
    if dump_f {
        v["f"] = json!(r.best_f.values());
    }
    v
}

fn search_cmd(args: &SearchArgs) -> Result<Value> {
    let g = Group::parse(&args.spec)?;
    let exec = Exec::default();
    let mut subgroup_order = None;
    let r = match args.strategy {
        StrategyArg::Exhaustive => search::exhaustive_max_bias(&g, exec)?,
        StrategyArg::Class => search::class_function_max_bias(&g)?,
        StrategyArg::Coset => {
            let gens = g.parse_generators(args.subgroup.as_deref().unwrap_or_default())?;
            let h = Subgroup::closure(&g, &gens)?;
            subgroup_order = Some(h.order());
            search::coset_constant_search(&h, exec)?
        }
        StrategyArg::Local => {
            let config = LocalSearchConfig {
                seed: args.seed,
                restarts: args.restarts,
                max_steps: args.max_steps,
                starts: Vec::new(),
            };
            search::local_search_max_bias(&g, &config, exec)?
        }
    };
    r.verify()?;
    debug_assert_eq!(r.strategy.name(), Strategy::from(args.strategy).name());
    let mut v = result_value(&r, &g, args.seed, args.dump_f);
    if let Some(o) = subgroup_order {
        v["subgroup_order"] = json!(o);
    }
    Ok(v)
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Class => Strategy::ClassFunction,
            StrategyArg::Coset => Strategy::CosetConstant,
            StrategyArg::Local => Strategy::Local,
        }
    }
}

fn fourier_verify(spec: &str, seed: u64, count: usize) -> Result<Value> {
    let g = Group::parse(spec)?;
    if count == 0 {
        return Err(Error::InvalidInput("--count must be at least 1".into()));
    }
    let system = FourierSystem::new(&g)?;
    let n = g.order() as f64;
    let fs: Vec<SignFunction> = (0..count)
        .map(|k| SignFunction::random_balanced_from(&g, &mut rng::stream_rng(seed, k as u64)))
        .collect::<Result<_>>()?;
    let mut inversion: f64 = 0.0;
    let mut plancherel: f64 = 0.0;
    let mut convolution: f64 = 0.0;
    let mut spectral: f64 = 0.0;
    let mut chain_holds = true;
    let mut min_slack = f64::INFINITY;
    for (k, f) in fs.iter().enumerate() {
        let fv = f.as_f64();
        inversion = inversion.max(system.inversion_residual(&fv));
        plancherel = plancherel.max(system.plancherel_residual(&fv) / n);
        let other = fs[(k + 1) % fs.len()].as_f64();
        convolution = convolution.max(system.convolution_theorem_residual(&fv, &other) / (n * n));
        let exact = ratio_f64(f.triple_correlation());
        spectral = spectral.max((system.triple_correlation_spectral(f)? - exact).abs());
        let chain = system.norm_chain_certificate(f)?;
        chain_holds &= chain.all_hold();
        min_slack = min_slack.min(chain.slack());
    }
    let class = match search::class_function_max_bias(&g) {
        Ok(r) => {
            let classes = ConjugacyClasses::compute(&g);
            let checks = system.class_scalar_check(&r.best_f, &classes)?;
            let off = checks.iter().map(|c| c.off_diagonal).fold(0.0, f64::max);
            let dev = checks
                .iter()
                .map(|c| c.diagonal_deviation)
                .fold(0.0, f64::max);
            let bound_holds = checks.iter().all(|c| c.class_bound_holds);
            Some((off, dev, bound_holds))
        }
        Err(Error::NoBalancedClassFunction) => None,
        Err(e) => return Err(e),
    };
    let class_ok =
        class.is_none_or(|(off, dev, holds)| off <= PRODUCT_TOL && dev <= PRODUCT_TOL && holds);
    let passed = inversion <= IDENTITY_TOL
        && plancherel <= IDENTITY_TOL
        && convolution <= PRODUCT_TOL
        && spectral <= IDENTITY_TOL
        && chain_holds
        && class_ok;
    let summary = json!({
        "version": VERSION,
        "group": g.spec(),
        "order": g.order(),
        "irreps": system.irreps().len(),
        "seed": seed,
        "count": count,
        "max_inversion_residual": inversion,
        "max_plancherel_residual_rel": plancherel,
        "max_convolution_residual_rel": convolution,
        "max_spectral_T_error": spectral,
        "norm_chain_holds": chain_holds,
        "min_certificate_slack": min_slack,
        "class_function_max_offdiagonal": class.map(|c| c.0),
        "class_function_max_diagonal_deviation": class.map(|c| c.1),
        "class_function_bound_holds": class.map(|c| c.2),
        "passed": passed,
    });
    if !passed {
        return Err(Error::InvariantViolated(format!(
            "Fourier identities out of tolerance: {summary}"
        )));
    }
    Ok(summary)
}

fn chartab_cmd(spec: &str, seed: u64) -> Result<Value> {
    let g = Group::parse(spec)?;
    let config = ChartabConfig {
        seed,
        ..Default::default()
    };
    let t = character_table(&g, &config)?;
    let classes: Vec<Value> = t
        .class_reps
        .iter()
        .zip(&t.class_sizes)
        .map(|(&r, &s)| json!({ "representative": r, "element": g.format_element(r), "size": s }))
        .collect();
    let snap = |v: f64| {
        let r = v.round();
        if (v - r).abs() < 1e-12 {
            r + 0.0
        } else {
            v
        }
    };
    let characters: Vec<Vec<[f64; 2]>> = t
        .characters
        .iter()
        .map(|row| row.iter().map(|c| [snap(c.re), snap(c.im)]).collect())
        .collect();
    Ok(json!({
        "version": VERSION,
        "group": g.spec(),
        "order": g.order(),
        "seed": seed,
        "classes": classes,
        "dims": t.dims,
        "d_min": t.min_nontrivial_dim(),
        "characters": characters,
        "attempts": t.attempts,
    }))
}

fn an_gap(args: &AnGapArgs) -> Result<Value> {
    let started = Instant::now();
    let g = Group::parse(&format!("A{}", args.n))?;
    let exec = Exec::default();
    let b = bounds_for(&g, args.seed)?;
    let emb = embed_parity_subgroup_an(&g)?;
    let h = &emb.subgroup;
    let transversal = involutive_transversal_an(h)?;
    let thm3 = theorem3_bound(h)?;
    let thm4 = check_weakened_premise(&emb.sign, &transversal)?.then(|| theorem4_bound(h));
    let exact_mean = expected_t_closed_form(&emb.sign, &transversal)?;
    let mut starts = Vec::new();
    let (mc_mean, mc_std) = if args.trials > 0 {
        let mc = monte_carlo(&emb.sign, &transversal, args.trials, args.seed, exec)?;
        starts.push(trial_report(&emb.sign, &transversal, args.seed, mc.best_trial)?.f);
        (Some(mc.mean), Some(mc.std))
    } else {
        (None, None)
    };
    let config = LocalSearchConfig {
        seed: args.seed,
        restarts: args.restarts,
        max_steps: args.max_steps,
        starts,
    };
    let found = search::local_search_max_bias(&g, &config, exec)?;
    found.verify()?;
    let report = GapReport {
        version: VERSION.to_string(),
        group: g.spec().to_string(),
        order: g.order(),
        d_min: b.d_min,
        upper_bound_thm1: b.thm1,
        upper_bound_thm2: ratio_string(b.thm2),
        upper_bound_thm2_f64: ratio_f64(b.thm2),
        thm3_bound: ratio_string(thm3),
        thm3_bound_f64: ratio_f64(thm3),
        thm4_bound: thm4.map(ratio_string),
        thm4_bound_f64: thm4.map(ratio_f64),
        exact_mean_t: ratio_string(exact_mean),
        exact_mean_t_f64: ratio_f64(exact_mean),
        mc_mean_t: mc_mean,
        mc_std,
        trials: args.trials,
        best_search_bias: ratio_string(found.best_bias),
        best_search_bias_f64: ratio_f64(found.best_bias),
        search_evidence: "empirical lower bound from local search".into(),
        seed: args.seed,
        runtime_ms: started.elapsed().as_millis() as u64,
    };
    to_value(&report)
}
