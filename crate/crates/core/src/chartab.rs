//! Character tables from simultaneous eigenvectors of the class algebra.
//!
//! With class multiplication coefficients `c_ijk`, the central character
//! `w_i = |C_i| χ(g_i) / χ(1)` of each irreducible `χ` satisfies
//! `w_i w_j = Σ_k c_ijk w_k`: it is a common eigenvector of the matrices
//! `(A_i)_{jk} = c_ijk`. A random real combination of the `A_i` separates
//! the eigenvectors; normalizing `w_0 = 1` and using
//! `Σ_i |C_i| |χ(g_i)|² = |G|` recovers `χ(1)` and then every value.
//!
//! Every table is validated before it is returned: `Σ d² = |G|`, integral
//! dimensions and row orthogonality.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use rand::Rng as _;

use crate::group::{ClassStructure, Group};
use crate::{rng, Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChartabConfig {
    pub max_order: usize,
    pub seed: u64,
    pub max_attempts: usize,
}

impl Default for ChartabConfig {
    fn default() -> Self {
        ChartabConfig {
            max_order: 5040,
            seed: 0,
            max_attempts: 32,
        }
    }
}

pub const DIM_ROUNDING_TOL: f64 = 1e-6;
pub const ORTHOGONALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub class_sizes: Vec<usize>,
    pub class_reps: Vec<usize>,
    /// `characters[i][k] = χ_i(g_k)`; row 0 is the trivial character and rows
    /// are ordered by dimension, then by value.
    pub characters: Vec<Vec<Complex64>>,
    pub dims: Vec<usize>,
    /// Attempts used before the eigenvalues separated.
    pub attempts: usize,
    pub max_dim_rounding_error: f64,
    pub max_orthogonality_error: f64,
}

impl CharacterTable {
    pub fn order(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    /// `min_{ρ≠1} d_ρ`; `None` for the trivial group.
    pub fn min_nontrivial_dim(&self) -> Option<usize> {
        self.dims.iter().skip(1).copied().min()
    }

    pub fn sorted_dims(&self) -> Vec<usize> {
        let mut d = self.dims.clone();
        d.sort_unstable();
        d
    }
}

pub fn character_table(group: &Arc<Group>, config: &ChartabConfig) -> Result<CharacterTable> {
    if group.order() > config.max_order {
        return Err(Error::TooLarge {
            what: "group for character tables",
            size: group.order(),
            limit: config.max_order,
        });
    }
    let cs = ClassStructure::compute(group);
    let r = cs.rank();
    let sizes = cs.classes.sizes();
    let reps = cs.classes.representatives();
    let class_matrices: Vec<DMatrix<f64>> = (0..r)
        .map(|i| DMatrix::from_fn(r, r, |j, k| cs.coeff(i, j, k) as f64))
        .collect();
    let mut last_failure = String::from("no attempts made");
    for attempt in 0..config.max_attempts {
        let mut rng = rng::stream_rng(config.seed, attempt as u64);
        let mut combo = DMatrix::<f64>::zeros(r, r);
        for m in &class_matrices {
            combo += m * rng.random_range(-1.0..1.0);
        }
        match central_characters(&combo, &class_matrices) {
            Ok(ws) => match assemble(group.order(), &sizes, &reps, ws, attempt + 1) {
                Ok(table) => return Ok(table),
                Err(e) => last_failure = e.to_string(),
            },
            Err(e) => last_failure = e,
        }
    }
    Err(Error::Degenerate(format!(
        "{} after {} attempts: {last_failure}",
        group.spec(),
        config.max_attempts
    )))
}

/// Eigenvectors of `combo`, normalized to `w_0 = 1` and checked against every `A_i`.
fn central_characters(
    combo: &DMatrix<f64>,
    class_matrices: &[DMatrix<f64>],
) -> std::result::Result<Vec<DVector<Complex64>>, String> {
    let r = combo.nrows();
    let schur = Schur::try_new(combo.clone(), 1e-14, 10_000)
        .ok_or_else(|| "Schur decomposition did not converge".to_string())?;
    let eigenvalues = schur.complex_eigenvalues();
    let scale = eigenvalues.iter().map(|l| l.norm()).fold(1.0, f64::max);
    for a in 0..r {
        for b in a + 1..r {
            if (eigenvalues[a] - eigenvalues[b]).norm() < 1e-6 * scale {
                return Err("eigenvalues of the class-sum combination collide".into());
            }
        }
    }
    let combo_c = combo.map(|v| Complex64::new(v, 0.0));
    let class_c: Vec<DMatrix<Complex64>> = class_matrices
        .iter()
        .map(|m| m.map(|v| Complex64::new(v, 0.0)))
        .collect();
    let mut out = Vec::with_capacity(r);
    for &lambda in eigenvalues.iter() {
        let shifted = &combo_c - DMatrix::<Complex64>::identity(r, r) * lambda;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.ok_or("SVD without V")?;
        let k = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| k)
            .ok_or("empty SVD")?;
        let mut w: DVector<Complex64> = v_t.row(k).adjoint();
        if w[0].norm() < 1e-12 {
            return Err("eigenvector vanishes on the identity class".into());
        }
        w /= w[0];
        for (i, a) in class_c.iter().enumerate() {
            let residual = (a * &w - &w * w[i]).norm();
            if residual > 1e-7 * scale * w.norm() {
                return Err(format!("eigenvector residual {residual:e} for class {i}"));
            }
        }
        out.push(w);
    }
    Ok(out)
}

fn assemble(
    order: usize,
    sizes: &[usize],
    reps: &[usize],
    ws: Vec<DVector<Complex64>>,
    attempts: usize,
) -> Result<CharacterTable> {
    let n = order as f64;
    let mut rows: Vec<(usize, Vec<Complex64>)> = Vec::with_capacity(ws.len());
    let mut max_rounding: f64 = 0.0;
    for w in ws {
        let norm: f64 = w
            .iter()
            .zip(sizes)
            .map(|(wi, &s)| wi.norm_sqr() / s as f64)
            .sum();
        let d = (n / norm).sqrt();
        let rounded = d.round();
        max_rounding = max_rounding.max((d - rounded).abs());
        if (d - rounded).abs() > DIM_ROUNDING_TOL || rounded < 1.0 {
            return Err(Error::InvariantViolated(format!(
                "non-integral dimension {d}"
            )));
        }
        let chi: Vec<Complex64> = w
            .iter()
            .zip(sizes)
            .map(|(wi, &s)| wi * rounded / s as f64)
            .collect();
        rows.push((rounded as usize, chi));
    }
    let key = |row: &(usize, Vec<Complex64>)| {
        let trivial = row
            .1
            .iter()
            .all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-6);
        let values: Vec<(i64, i64)> = row
            .1
            .iter()
            .map(|v| ((v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64))
            .collect();
        (row.0, !trivial, values)
    };
    rows.sort_by_key(key);
    let dims: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let characters: Vec<Vec<Complex64>> = rows.into_iter().map(|r| r.1).collect();

    if dims.iter().map(|d| d * d).sum::<usize>() != order {
        return Err(Error::InvariantViolated(format!("Σ d² != {order}")));
    }
    let mut max_orth: f64 = 0.0;
    for (i, a) in characters.iter().enumerate() {
        for (j, b) in characters.iter().enumerate() {
            let inner: Complex64 = a
                .iter()
                .zip(b)
                .zip(sizes)
                .map(|((x, y), &s)| x * y.conj() * s as f64)
                .sum();
            let expected = if i == j { n } else { 0.0 };
            max_orth = max_orth.max((inner - Complex64::new(expected, 0.0)).norm() / n);
        }
    }
    if max_orth > ORTHOGONALITY_TOL {
        return Err(Error::InvariantViolated(format!(
            "row orthogonality error {max_orth:e}"
        )));
    }
    Ok(CharacterTable {
        class_sizes: sizes.to_vec(),
        class_reps: reps.to_vec(),
        characters,
        dims,
        attempts,
        max_dim_rounding_error: max_rounding,
        max_orthogonality_error: max_orth,
    })
}

/// Spectral bounds on the bias of balanced functions, from `d = min_{ρ≠1} d_ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralBounds {
    pub d_min: usize,
    /// `½(1 + 1/√d)`, any balanced `f`.
    pub thm1: f64,
    /// `½(1 + 1/d)`, balanced class functions.
    pub thm2: Rational,
}

impl SpectralBounds {
    pub fn from_dim(d_min: usize) -> SpectralBounds {
        SpectralBounds {
            d_min,
            thm1: bound_thm1(d_min),
            thm2: bound_thm2(d_min),
        }
    }
}

pub fn bound_thm1(d: usize) -> f64 {
    0.5 * (1.0 + 1.0 / (d as f64).sqrt())
}

pub fn bound_thm2(d: usize) -> Rational {
    Rational::new(d as i64 + 1, 2 * d as i64)
}

pub fn min_nontrivial_dim(group: &Arc<Group>, config: &ChartabConfig) -> Result<usize> {
    character_table(group, config)?
        .min_nontrivial_dim()
        .ok_or_else(|| Error::InvalidInput("the trivial group has no nontrivial irreps".into()))
}

pub fn spectral_bounds(group: &Arc<Group>, config: &ChartabConfig) -> Result<SpectralBounds> {
    min_nontrivial_dim(group, config).map(SpectralBounds::from_dim)
}
