//! Explicit unitary irreducible representations.
//!
//! `S_n` uses Young's orthogonal form: real orthogonal matrices on the basis
//! of standard Young tableaux, built from the images of the adjacent
//! transpositions. Products of cyclic groups use their linear characters.

mod partition;

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::group::Group;
use crate::perm;
use crate::{Error, Result};

pub use partition::{partitions, partitions_and_dims, Partition};

/// Image of an adjacent transposition `s_j` in Young's orthogonal form.
///
/// Row `t` has diagonal `1/d` and, when swapping `j+1, j+2` in tableau `t`
/// gives another standard tableau `u`, the entry `sqrt(1 - 1/d²)` at `(t, u)`;
/// `d` is the content of `j+2` minus the content of `j+1`.
#[derive(Debug, Clone)]
struct AdjacentImage {
    diag: Vec<f64>,
    partner: Vec<Option<(usize, f64)>>,
}

impl AdjacentImage {
    fn dense(&self) -> DMatrix<f64> {
        let d = self.diag.len();
        let mut m = DMatrix::zeros(d, d);
        for t in 0..d {
            m[(t, t)] = self.diag[t];
            if let Some((u, v)) = self.partner[t] {
                m[(t, u)] = v;
            }
        }
        m
    }

    /// `self · m`, using the two-nonzeros-per-row structure.
    fn left_mul(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(m.nrows(), m.ncols());
        for t in 0..self.diag.len() {
            let mut row = m.row(t) * self.diag[t];
            if let Some((u, v)) = self.partner[t] {
                row += m.row(u) * v;
            }
            out.row_mut(t).copy_from(&row);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrrepLabel {
    Partition(Partition),
    /// Character index in each cyclic factor.
    Character(Vec<usize>),
}

#[derive(Debug, Clone)]
enum Kind {
    Young {
        generators: Vec<AdjacentImage>,
    },
    Character {
        moduli: Vec<usize>,
        index: Vec<usize>,
    },
}

#[derive(Debug, Clone)]
pub struct Irrep {
    label: IrrepLabel,
    dim: usize,
    kind: Kind,
}

impl Irrep {
    /// Young's orthogonal form for `λ`.
    pub fn young(partition: &Partition) -> Irrep {
        let n = partition.size();
        let tableaux = partition.standard_tableaux();
        let index: std::collections::HashMap<&[(usize, usize)], usize> = tableaux
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_slice(), i))
            .collect();
        let content = |cell: (usize, usize)| cell.1 as i64 - cell.0 as i64;
        let generators = (0..n.saturating_sub(1))
            .map(|j| {
                let mut diag = Vec::with_capacity(tableaux.len());
                let mut partner = Vec::with_capacity(tableaux.len());
                for t in &tableaux {
                    let d = (content(t[j + 1]) - content(t[j])) as f64;
                    diag.push(1.0 / d);
                    if d.abs() == 1.0 {
                        partner.push(None);
                    } else {
                        let mut swapped = t.clone();
                        swapped.swap(j, j + 1);
                        let u = index[swapped.as_slice()];
                        partner.push(Some((u, (1.0 - 1.0 / (d * d)).sqrt())));
                    }
                }
                AdjacentImage { diag, partner }
            })
            .collect();
        Irrep {
            label: IrrepLabel::Partition(partition.clone()),
            dim: tableaux.len(),
            kind: Kind::Young { generators },
        }
    }

    pub fn label(&self) -> &IrrepLabel {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_trivial(&self) -> bool {
        match &self.label {
            IrrepLabel::Partition(p) => p.is_trivial(),
            IrrepLabel::Character(index) => index.iter().all(|&k| k == 0),
        }
    }

    /// Dense image of `s_j = (j+1 j+2)` (0-based `j`), for Young irreps.
    pub fn generator_image(&self, j: usize) -> Option<DMatrix<f64>> {
        match &self.kind {
            Kind::Young { generators } => generators.get(j).map(AdjacentImage::dense),
            Kind::Character { .. } => None,
        }
    }

    /// Orthogonal matrix of a permutation (Young irreps only).
    pub fn evaluate_perm(&self, p: &[u8]) -> DMatrix<f64> {
        let Kind::Young { generators } = &self.kind else {
            panic!("evaluate_perm on a non-Young irrep");
        };
        let mut m = DMatrix::identity(self.dim, self.dim);
        for &j in &perm::adjacent_word(p) {
            m = generators[j].left_mul(&m);
        }
        m
    }

    /// `ρ(x)` for an element of the group this irrep was built for.
    pub fn evaluate(&self, group: &Group, x: usize) -> DMatrix<Complex64> {
        match &self.kind {
            Kind::Young { .. } => {
                let p = group
                    .perm(x)
                    .expect("Young irreps need a permutation group");
                self.evaluate_perm(p).map(|v| Complex64::new(v, 0.0))
            }
            Kind::Character { moduli, index } => {
                let coords = group.cyclic_coordinates(moduli, x);
                let phase: f64 = coords
                    .iter()
                    .zip(index)
                    .zip(moduli)
                    .map(|((&c, &k), &m)| ((c * k) % m) as f64 / m as f64)
                    .sum();
                DMatrix::from_element(1, 1, Complex64::from_polar(1.0, 2.0 * PI * phase))
            }
        }
    }
}

/// `ρ_λ(x)` in Young's orthogonal form.
pub fn yor_evaluate(partition: &Partition, p: &[u8]) -> DMatrix<f64> {
    Irrep::young(partition).evaluate_perm(p)
}

/// Every Young irrep of `S_n`, in reverse lexicographic partition order.
pub fn symmetric_irreps(n: usize) -> Result<Vec<Irrep>> {
    Ok(partitions_and_dims(n)?
        .iter()
        .map(|(p, _)| Irrep::young(p))
        .collect())
}

/// The `|G|` linear characters `χ_k(x) = Π_j exp(2πi k_j x_j / m_j)` of a
/// product of cyclic groups, indexed row-major like the elements.
pub fn abelian_characters(group: &Arc<Group>) -> Result<Vec<Irrep>> {
    let moduli = group.cyclic_factors().ok_or_else(|| {
        if group.is_abelian() {
            Error::Unsupported(format!(
                "{} is abelian but not written as a product of Z factors",
                group.spec()
            ))
        } else {
            Error::Unsupported(format!("{} is not abelian", group.spec()))
        }
    })?;
    Ok((0..group.order())
        .map(|k| {
            let index = group.cyclic_coordinates(&moduli, k);
            Irrep {
                label: IrrepLabel::Character(index.clone()),
                dim: 1,
                kind: Kind::Character {
                    moduli: moduli.clone(),
                    index,
                },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::Rng;

    fn random_perm(rng: &mut rng::Rng, n: usize) -> Vec<u8> {
        perm::lex_unrank(n, rng.random_range(0..perm::factorial(n) as usize))
    }

    #[test]
    fn identity_and_sign() {
        for p in partitions(5) {
            let m = yor_evaluate(&p, &perm::identity(5));
            assert!(
                (m - DMatrix::identity(p.hook_dimension() as usize, p.hook_dimension() as usize))
                    .norm()
                    < 1e-14
            );
        }
        let sign = Partition::new(vec![1; 5]).unwrap();
        for r in 0..120 {
            let x = perm::lex_unrank(5, r);
            let m = yor_evaluate(&sign, &x);
            let expected = if perm::is_even(&x) { 1.0 } else { -1.0 };
            assert_eq!(m.shape(), (1, 1));
            assert!((m[(0, 0)] - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn homomorphism_and_orthogonality_s5() {
        let mut rng = rng::rng(42);
        let irreps = symmetric_irreps(5).unwrap();
        for _ in 0..200 {
            let x = random_perm(&mut rng, 5);
            let y = random_perm(&mut rng, 5);
            let xy = perm::compose(&x, &y);
            for rho in &irreps {
                let (mx, my) = (rho.evaluate_perm(&x), rho.evaluate_perm(&y));
                assert!((rho.evaluate_perm(&xy) - &mx * &my).norm() <= 1e-10);
                let d = rho.dim();
                assert!((&mx * mx.transpose() - DMatrix::identity(d, d)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn generators_satisfy_coxeter_relations() {
        for p in partitions(6) {
            let rho = Irrep::young(&p);
            let d = rho.dim();
            let id = DMatrix::<f64>::identity(d, d);
            for j in 0..5 {
                let s = rho.generator_image(j).unwrap();
                assert!((&s * &s - &id).norm() < 1e-12);
                assert!((&s - s.transpose()).norm() < 1e-12);
                if j + 1 < 5 {
                    let t = rho.generator_image(j + 1).unwrap();
                    let st = &s * &t;
                    assert!((&st * &st * &st - &id).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn abelian_examples() {
        let z2 = Group::parse("Z2").unwrap();
        let chars = abelian_characters(&z2).unwrap();
        assert!((chars[1].evaluate(&z2, 1)[(0, 0)] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let z4 = Group::parse("Z4").unwrap();
        let chars = abelian_characters(&z4).unwrap();
        assert_eq!(chars.len(), 4);
        assert!((chars[1].evaluate(&z4, 1)[(0, 0)] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let k = Group::parse("Z2xZ2").unwrap();
        for chi in abelian_characters(&k).unwrap() {
            for x in 0..4 {
                let v = chi.evaluate(&k, x)[(0, 0)];
                assert!(v.im.abs() < 1e-15 && (v.re.abs() - 1.0).abs() < 1e-15);
            }
        }
        assert!(matches!(
            abelian_characters(&Group::parse("S3").unwrap()),
            Err(Error::Unsupported(_))
        ));
        assert!(abelian_characters(&Group::parse("D2").unwrap()).is_err());
    }

    #[test]
    fn abelian_orthogonality() {
        let g = Group::parse("Z2xZ6").unwrap();
        let chars = abelian_characters(&g).unwrap();
        for (a, ca) in chars.iter().enumerate() {
            for (b, cb) in chars.iter().enumerate() {
                let inner: Complex64 = (0..g.order())
                    .map(|x| ca.evaluate(&g, x)[(0, 0)].conj() * cb.evaluate(&g, x)[(0, 0)])
                    .sum();
                let expected = if a == b { g.order() as f64 } else { 0.0 };
                assert!((inner - Complex64::new(expected, 0.0)).norm() < 1e-10);
            }
        }
    }
}
