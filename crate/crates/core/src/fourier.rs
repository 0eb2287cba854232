//! Nonabelian Fourier analysis with the normalization `f̂(ρ) = Σ_x f(x) ρ(x)`.
//!
//! Under this convention:
//!
//! - inversion: `f(x) = (1/|G|) Σ_ρ d_ρ tr(f̂(ρ) ρ(x)†)`
//! - Plancherel: `⟨f, f⟩ = (1/|G|) Σ_ρ d_ρ ‖f̂(ρ)‖_F²`
//! - convolution `(f*g)(x) = Σ_y f(y) g(y⁻¹x)` transforms to `f̂(ρ) ĝ(ρ)`
//! - for balanced `f`, `E[f(x)f(y)f(xy)] = (1/|G|³) Σ_{ρ≠1} d_ρ tr(f̂ f̂ f̂†)`
//!
//! Complete irrep systems are available for products of cyclic groups and
//! for `S_n` with `n ≤ 7` (`n = 8` with the `large-fourier` feature).

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::exec::Exec;
use crate::group::{ConjugacyClasses, Group};
use crate::repr::{abelian_characters, symmetric_irreps, Irrep, IrrepLabel};
use crate::signfun::SignFunction;
use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Tolerance for identities that are exact in exact arithmetic.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Tolerance for identities that go through chained matrix products.
pub const PRODUCT_TOL: f64 = 1e-8;

#[cfg(feature = "large-fourier")]
pub const MAX_SYMMETRIC_DEGREE: usize = 8;
#[cfg(not(feature = "large-fourier"))]
pub const MAX_SYMMETRIC_DEGREE: usize = 7;

/// A group together with a complete system of irreducible unitary representations.
#[derive(Debug, Clone)]
pub struct FourierSystem {
    group: Arc<Group>,
    irreps: Vec<Irrep>,
    exec: Exec,
}

#[derive(Debug, Clone)]
pub struct FourierTransform {
    /// `f̂(ρ)` in the order of [`FourierSystem::irreps`].
    pub coeffs: Vec<CMatrix>,
}

impl FourierSystem {
    pub fn new(group: &Arc<Group>) -> Result<FourierSystem> {
        let irreps = if let Some(n) = group.symmetric_degree() {
            if n > MAX_SYMMETRIC_DEGREE {
                return Err(Error::Unsupported(format!(
                    "Fourier transforms on S{n} need n <= {MAX_SYMMETRIC_DEGREE}"
                )));
            }
            symmetric_irreps(n)?
        } else if group.cyclic_factors().is_some() {
            abelian_characters(group)?
        } else {
            return Err(Error::Unsupported(format!(
                "no explicit irrep system for {}; use S<n> or products of Z<k>",
                group.spec()
            )));
        };
        FourierSystem::from_irreps(group, irreps)
    }

    /// Wraps an explicit irrep list, rejecting incomplete systems (`Σ d² ≠ |G|`).
    pub fn from_irreps(group: &Arc<Group>, irreps: Vec<Irrep>) -> Result<FourierSystem> {
        let total: usize = irreps.iter().map(|r| r.dim() * r.dim()).sum();
        if total != group.order() {
            return Err(Error::InvalidInput(format!(
                "incomplete irrep system: Σ d² = {total}, |G| = {}",
                group.order()
            )));
        }
        Ok(FourierSystem {
            group: group.clone(),
            irreps,
            exec: Exec::default(),
        })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn transform(&self, f: &[f64]) -> FourierTransform {
        assert_eq!(f.len(), self.group.order());
        let g = &self.group;
        let coeffs = self.exec.map_slice(&self.irreps, |rho| {
            let d = rho.dim();
            let mut acc = CMatrix::zeros(d, d);
            for (x, &fx) in f.iter().enumerate() {
                if fx != 0.0 {
                    acc += rho.evaluate(g, x) * Complex64::new(fx, 0.0);
                }
            }
            acc
        });
        FourierTransform { coeffs }
    }

    pub fn transform_sign(&self, f: &SignFunction) -> FourierTransform {
        self.transform(&f.as_f64())
    }

    /// `f(x) = (1/|G|) Σ_ρ d_ρ tr(f̂(ρ) ρ(x)†)`; returns real parts.
    pub fn inverse(&self, ft: &FourierTransform) -> Vec<f64> {
        let g = &self.group;
        let n = g.order() as f64;
        self.exec.map(0..g.order(), |x| {
            let mut total = Complex64::new(0.0, 0.0);
            for (rho, coeff) in self.irreps.iter().zip(&ft.coeffs) {
                let m = rho.evaluate(g, x);
                let tr: Complex64 = coeff.iter().zip(m.iter()).map(|(a, b)| a * b.conj()).sum();
                total += tr * rho.dim() as f64;
            }
            total.re / n
        })
    }

    /// `max_x |f(x) - inverse(transform(f))(x)|`.
    pub fn inversion_residual(&self, f: &[f64]) -> f64 {
        let back = self.inverse(&self.transform(f));
        f.iter()
            .zip(&back)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `|⟨f,f⟩ - (1/|G|) Σ_ρ d_ρ ‖f̂(ρ)‖_F²|`.
    pub fn plancherel_residual(&self, f: &[f64]) -> f64 {
        let ft = self.transform(f);
        let lhs: f64 = f.iter().map(|v| v * v).sum();
        let rhs: f64 = self
            .irreps
            .iter()
            .zip(&ft.coeffs)
            .map(|(rho, c)| rho.dim() as f64 * c.norm_squared())
            .sum::<f64>()
            / self.group.order() as f64;
        (lhs - rhs).abs()
    }

    /// `max_ρ ‖(f*g)^(ρ) - f̂(ρ) ĝ(ρ)‖_F`.
    pub fn convolution_theorem_residual(&self, f: &[f64], g: &[f64]) -> f64 {
        let conv = convolution(&self.group, f, g);
        let (fc, ff, gf) = (self.transform(&conv), self.transform(f), self.transform(g));
        fc.coeffs
            .iter()
            .zip(ff.coeffs.iter().zip(&gf.coeffs))
            .map(|(c, (a, b))| (c - a * b).norm())
            .fold(0.0, f64::max)
    }

    /// `(1/|G|³) Σ_{ρ≠1} d_ρ tr(f̂(ρ) f̂(ρ) f̂(ρ)†)` for balanced `f`.
    pub fn triple_correlation_spectral(&self, f: &SignFunction) -> Result<f64> {
        if !f.is_balanced() {
            return Err(Error::Unbalanced);
        }
        let ft = self.transform_sign(f);
        Ok(self.spectral_sum(&ft))
    }

    fn spectral_sum(&self, ft: &FourierTransform) -> f64 {
        let n = self.group.order() as f64;
        let total: Complex64 = self
            .irreps
            .iter()
            .zip(&ft.coeffs)
            .filter(|(rho, _)| !rho.is_trivial())
            .map(|(rho, c)| (c * c * c.adjoint()).trace() * rho.dim() as f64)
            .sum();
        total.re / (n * n * n)
    }

    /// Evaluates every link of the operator-norm argument for a balanced `f`.
    pub fn norm_chain_certificate(&self, f: &SignFunction) -> Result<NormChain> {
        if !f.is_balanced() {
            return Err(Error::Unbalanced);
        }
        let n = self.group.order() as f64;
        let ft = self.transform_sign(f);
        let slack = |scale: f64| IDENTITY_TOL * scale.max(1.0);
        let irreps: Vec<IrrepNorms> = self
            .irreps
            .iter()
            .zip(&ft.coeffs)
            .filter(|(rho, _)| !rho.is_trivial())
            .map(|(rho, c)| {
                let op = operator_norm(c);
                let frob = c.norm();
                let trace_nnn = (c * c * c.adjoint()).trace().norm();
                let d = rho.dim() as f64;
                let frob_cap = n / d.sqrt();
                IrrepNorms {
                    label: label_string(rho.label()),
                    dim: rho.dim(),
                    op_norm: op,
                    frob_norm: frob,
                    trace_nnn,
                    nnn_holds: trace_nnn <= op * frob * frob + slack(op * frob * frob),
                    norm_ineq_holds: op <= frob + slack(frob),
                    frob_upper_holds: frob <= frob_cap + slack(frob_cap),
                    opnorm_upper_holds: op <= frob_cap + slack(frob_cap),
                }
            })
            .collect();
        let t_exact = f.triple_correlation().to_f64().unwrap_or(f64::NAN);
        let t_spectral = self.spectral_sum(&ft);
        let max_op_ratio = irreps.iter().map(|r| r.op_norm / n).fold(0.0, f64::max);
        let sqrt_dim_bound = irreps
            .iter()
            .map(|r| 1.0 / (r.dim as f64).sqrt())
            .fold(0.0, f64::max);
        Ok(NormChain {
            max_norm_holds: t_exact <= max_op_ratio + slack(1.0),
            final_holds: max_op_ratio <= sqrt_dim_bound + slack(1.0),
            irreps,
            t_exact,
            t_spectral,
            max_op_ratio,
            sqrt_dim_bound,
        })
    }

    /// For a class function every `f̂(ρ)` is a scalar matrix `c·I`.
    pub fn class_scalar_check(
        &self,
        f: &SignFunction,
        classes: &ConjugacyClasses,
    ) -> Result<Vec<ScalarCheck>> {
        if !f.is_class_function(classes) {
            return Err(Error::InvalidInput("not a class function".into()));
        }
        let n = self.group.order() as f64;
        let ft = self.transform_sign(f);
        Ok(self
            .irreps
            .iter()
            .zip(&ft.coeffs)
            .map(|(rho, c)| {
                let d = rho.dim();
                let scalar = c.trace() / d as f64;
                let mut off_diagonal = 0.0;
                let mut diagonal_deviation: f64 = 0.0;
                for i in 0..d {
                    for j in 0..d {
                        if i == j {
                            diagonal_deviation =
                                diagonal_deviation.max((c[(i, i)] - scalar).norm());
                        } else {
                            off_diagonal += c[(i, j)].norm_sqr();
                        }
                    }
                }
                let op = operator_norm(c);
                let frob = c.norm();
                let df = d as f64;
                ScalarCheck {
                    label: label_string(rho.label()),
                    dim: d,
                    scalar,
                    off_diagonal: off_diagonal.sqrt(),
                    diagonal_deviation,
                    norm_identity_residual: (op - frob / df.sqrt()).abs(),
                    class_bound_holds: rho.is_trivial() || op <= n / df + PRODUCT_TOL * n,
                }
            })
            .collect())
    }
}

/// `(f*g)(x) = Σ_y f(y) g(y⁻¹x)` by the double loop.
pub fn convolution(group: &Group, f: &[f64], g: &[f64]) -> Vec<f64> {
    let n = group.order();
    Exec::default().map(0..n, |x| {
        (0..n).map(|y| f[y] * g[group.mul(group.inv(y), x)]).sum()
    })
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 1 && m.ncols() == 1 {
        return m[(0, 0)].norm();
    }
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

fn label_string(label: &IrrepLabel) -> String {
    match label {
        IrrepLabel::Partition(p) => p.to_string(),
        IrrepLabel::Character(k) => format!("chi{k:?}"),
    }
}

#[derive(Debug, Clone)]
pub struct IrrepNorms {
    pub label: String,
    pub dim: usize,
    pub op_norm: f64,
    pub frob_norm: f64,
    /// `|tr(N N N†)|`
    pub trace_nnn: f64,
    /// `|tr(NNN†)| ≤ ‖N‖_op ‖N‖_F²`
    pub nnn_holds: bool,
    /// `‖N‖_op ≤ ‖N‖_F`
    pub norm_ineq_holds: bool,
    /// `‖N‖_F ≤ |G|/√d`
    pub frob_upper_holds: bool,
    /// `‖N‖_op ≤ |G|/√d`
    pub opnorm_upper_holds: bool,
}

#[derive(Debug, Clone)]
pub struct NormChain {
    /// Nontrivial irreps only.
    pub irreps: Vec<IrrepNorms>,
    pub t_exact: f64,
    pub t_spectral: f64,
    /// `max_{ρ≠1} ‖f̂(ρ)‖_op / |G|`
    pub max_op_ratio: f64,
    /// `max_{ρ≠1} 1/√d_ρ`
    pub sqrt_dim_bound: f64,
    /// `T ≤ max_op_ratio`
    pub max_norm_holds: bool,
    /// `max_op_ratio ≤ sqrt_dim_bound`
    pub final_holds: bool,
}

impl NormChain {
    pub fn all_hold(&self) -> bool {
        self.max_norm_holds
            && self.final_holds
            && self.irreps.iter().all(|r| {
                r.nnn_holds && r.norm_ineq_holds && r.frob_upper_holds && r.opnorm_upper_holds
            })
    }

    /// How far the certificate sits above the exact `T`.
    pub fn slack(&self) -> f64 {
        self.max_op_ratio - self.t_exact
    }
}

#[derive(Debug, Clone)]
pub struct ScalarCheck {
    pub label: String,
    pub dim: usize,
    pub scalar: Complex64,
    /// Frobenius norm of the off-diagonal part.
    pub off_diagonal: f64,
    /// `max_i |N_ii - c|`
    pub diagonal_deviation: f64,
    /// `|‖N‖_op - ‖N‖_F/√d|`
    pub norm_identity_residual: f64,
    /// `‖N‖_op ≤ |G|/d` for nontrivial `ρ`.
    pub class_bound_holds: bool,
}
