//! Irreducible representations of maximal subgroups and group Fourier
//! transforms.

mod reps;
mod transform;

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupTable;

pub use reps::{
    abelian_reps_for, cyclic_reps_for, irreps_cyclic, irreps_for_class, irreps_symmetric, irreps_symmetric_capped,
    irreps_wreath_abelian, partitions, standard_tableaux, symmetric_reps_for, trivial_reps_for, wreath_reps_for,
    young_orthogonal, SYMMETRIC_CAP,
};
pub use transform::{
    cyclic_dft_naive, cyclic_ft_fast, cyclic_ift_fast, group_ft, group_ft_counted, group_ift, group_ift_counted,
    GroupSpectrum,
};

pub type CMatrix = DMatrix<Complex64>;

/// One representation: a matrix per group element, indexed by local id.
#[derive(Clone, Debug)]
pub struct Rep {
    pub label: String,
    pub dim: usize,
    pub matrices: Vec<CMatrix>,
}

impl Rep {
    pub fn character(&self, x: usize) -> Complex64 {
        self.matrices[x].trace()
    }
}

/// A set of representations of one finite group.
#[derive(Clone, Debug)]
pub struct GroupRepSet {
    group: Arc<GroupTable>,
    reps: Vec<Rep>,
    /// `powers[t]` is the local id of `g^t` when the group is cyclic with
    /// generator `g` and rep `j` is `g^t ↦ exp(2πi jt/|G|)`.
    powers: Option<Vec<usize>>,
}

impl GroupRepSet {
    pub fn new(group: Arc<GroupTable>, reps: Vec<Rep>) -> Result<Self> {
        for rep in &reps {
            if rep.matrices.len() != group.order() {
                return Err(Error::Contract(format!(
                    "rep {} has {} matrices for a group of order {}",
                    rep.label,
                    rep.matrices.len(),
                    group.order()
                )));
            }
            if rep
                .matrices
                .iter()
                .any(|m| m.nrows() != rep.dim || m.ncols() != rep.dim)
            {
                return Err(Error::Contract(format!(
                    "rep {} has a matrix of the wrong size",
                    rep.label
                )));
            }
        }
        Ok(GroupRepSet {
            group,
            reps,
            powers: None,
        })
    }

    pub(crate) fn with_powers(mut self, powers: Vec<usize>) -> Self {
        self.powers = Some(powers);
        self
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn reps(&self) -> &[Rep] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.reps.iter().map(|r| r.dim).collect()
    }

    /// Present when the set is the standard character set of a cyclic group.
    pub fn cyclic_powers(&self) -> Option<&[usize]> {
        self.powers.as_deref()
    }

    pub fn dimension_square_sum(&self) -> usize {
        self.reps.iter().map(|r| r.dim * r.dim).sum()
    }

    /// `Σ d_ρ² = |G|`
    pub fn check_completeness(&self) -> Result<()> {
        let total = self.dimension_square_sum();
        if total != self.group.order() {
            return Err(Error::Contract(format!(
                "sum of squared dimensions is {total}, group order is {}",
                self.group.order()
            )));
        }
        Ok(())
    }

    /// Largest entrywise deviation of `ρ(ab)` from `ρ(a)ρ(b)`, over all
    /// pairs for groups of order ≤ 120 and `samples` random pairs otherwise.
    pub fn homomorphism_error<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> f64 {
        let n = self.group.order();
        let pairs: Vec<(usize, usize)> = if n <= 120 {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
        } else {
            (0..samples)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect()
        };
        let mut worst = 0.0f64;
        for rep in &self.reps {
            for &(a, b) in &pairs {
                let lhs = &rep.matrices[self.group.mul(a, b)];
                let rhs = &rep.matrices[a] * &rep.matrices[b];
                worst = worst.max(max_abs_diff(lhs, &rhs));
            }
        }
        worst
    }

    /// Gram matrix of characters, `⟨χ_ρ, χ_σ⟩ = (1/|G|) Σ χ_ρ(x) conj(χ_σ(x))`.
    pub fn character_gram(&self) -> Vec<Vec<Complex64>> {
        let n = self.group.order();
        let chars: Vec<Vec<Complex64>> = self
            .reps
            .iter()
            .map(|r| (0..n).map(|x| r.character(x)).collect())
            .collect();
        chars
            .iter()
            .map(|a| {
                chars
                    .iter()
                    .map(|b| a.iter().zip(b).map(|(x, y)| x * y.conj()).sum::<Complex64>() / n as f64)
                    .collect()
            })
            .collect()
    }

    /// Largest deviation of the character Gram matrix from the identity.
    pub fn inequivalence_error(&self) -> f64 {
        let gram = self.character_gram();
        let mut worst = 0.0f64;
        for (i, row) in gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - target).norm());
            }
        }
        worst
    }

    /// Runs the three gates: homomorphism and inequivalence within `tol`,
    /// completeness exactly.
    pub fn validate<R: Rng + ?Sized>(&self, tol: f64, rng: &mut R) -> Result<()> {
        self.check_completeness()?;
        let hom = self.homomorphism_error(1000, rng);
        if hom > tol {
            return Err(Error::Structural(format!("homomorphism error {hom:e} exceeds {tol:e}")));
        }
        let ineq = self.inequivalence_error();
        if ineq > tol {
            return Err(Error::Structural(format!(
                "character orthogonality error {ineq:e} exceeds {tol:e}"
            )));
        }
        Ok(())
    }

    pub fn to_export(&self) -> RepSetExport {
        RepSetExport {
            group_order: self.group.order(),
            reps: self
                .reps
                .iter()
                .map(|r| RepExport {
                    label: r.label.clone(),
                    dim: r.dim,
                    matrices: r.matrices.iter().map(row_major_pairs).collect(),
                })
                .collect(),
        }
    }
}

/// JSON form of a [`GroupRepSet`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RepSetExport {
    pub group_order: usize,
    pub reps: Vec<RepExport>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RepExport {
    pub label: String,
    pub dim: usize,
    /// Per group element id, the matrix entries row-major as `[re, im]`.
    pub matrices: Vec<Vec<[f64; 2]>>,
}

pub(crate) fn row_major_pairs(m: &CMatrix) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.push([z.re, z.im]);
        }
    }
    out
}

pub(crate) fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
