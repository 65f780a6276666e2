//! Fourier transforms on the semigroup algebra relative to induced
//! representations.
//!
//! For a D-class `D_k` with idempotents `e_1 < … < e_r`, connectors `p_a`
//! and maximal subgroup `G_k`, each `ρ ∈ IRR(G_k)` induces `ρ̄` of dimension
//! `r·d_ρ` with `ρ̄(⌊s⌋) = E_{ran s, dom s} ⊗ ρ(p_{ran s}⁻¹ s p_{dom s})` on
//! groupoid basis elements of `D_k` and zero elsewhere.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fast::{fast_mobius, fast_zeta, OpCounter};
use crate::harmonics::{
    cyclic_ft_fast, cyclic_ift_fast, group_ft_counted, group_ift_counted, irreps_for_class, CMatrix, GroupRepSet,
    GroupSpectrum,
};
use crate::structure::{Basis, FunctionOnS, SemigroupStructure};

/// One induced representation `ρ̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedRep {
    pub class: usize,
    /// Index of `ρ` in the class's [`GroupRepSet`].
    pub rep: usize,
    pub label: String,
    /// Number of idempotents `r_k`.
    pub r: usize,
    /// `d_ρ`
    pub d: usize,
}

impl InducedRep {
    pub fn dim(&self) -> usize {
        self.r * self.d
    }
}

/// The induced set `Y`: one [`GroupRepSet`] per D-class.
#[derive(Clone, Debug)]
pub struct InducedRepSet {
    classes: Vec<GroupRepSet>,
    reps: Vec<InducedRep>,
    /// `first[k]` is the index of the first induced rep of class `k`.
    first: Vec<usize>,
}

/// Builds `Y` from one complete rep set per D-class.
pub fn induce(s: &SemigroupStructure, per_class: Vec<GroupRepSet>) -> Result<InducedRepSet> {
    if per_class.len() != s.classes().len() {
        return Err(Error::Contract(format!(
            "{} rep sets for {} D-classes",
            per_class.len(),
            s.classes().len()
        )));
    }
    let mut reps = Vec::new();
    let mut first = Vec::new();
    for (k, (class, set)) in s.classes().iter().zip(&per_class).enumerate() {
        if set.group().order() != class.subgroup().order() {
            return Err(Error::Contract(format!(
                "rep set for class {k} is for a group of order {}, subgroup has order {}",
                set.group().order(),
                class.subgroup().order()
            )));
        }
        set.check_completeness()
            .map_err(|e| Error::Contract(format!("incomplete rep set for class {k}: {e}")))?;
        first.push(reps.len());
        for (j, rep) in set.reps().iter().enumerate() {
            reps.push(InducedRep {
                class: k,
                rep: j,
                label: rep.label.clone(),
                r: class.idempotent_count(),
                d: rep.dim,
            });
        }
    }
    Ok(InducedRepSet {
        classes: per_class,
        reps,
        first,
    })
}

impl InducedRepSet {
    /// Induced set from the built-in irreducibles of every maximal subgroup.
    pub fn builtin(s: &SemigroupStructure) -> Result<Self> {
        let sets = s.classes().iter().map(irreps_for_class).collect::<Result<Vec<_>>>()?;
        induce(s, sets)
    }

    pub fn reps(&self) -> &[InducedRep] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_set(&self, k: usize) -> &GroupRepSet {
        &self.classes[k]
    }

    /// Indices of the induced reps belonging to class `k`.
    pub fn class_range(&self, k: usize) -> std::ops::Range<usize> {
        self.first[k]..self.first[k] + self.classes[k].len()
    }

    pub fn dimension_square_sum(&self) -> usize {
        self.reps.iter().map(|r| r.dim() * r.dim()).sum()
    }

    /// `ρ̄_i(⌊x⌋)`, or `None` when `x` lies outside the rep's class.
    pub fn groupoid_matrix(&self, s: &SemigroupStructure, i: usize, x: usize) -> Option<CMatrix> {
        let rep = &self.reps[i];
        let c = s.coordinates(x);
        if c.class != rep.class {
            return None;
        }
        let mut m = CMatrix::zeros(rep.dim(), rep.dim());
        let inner = &self.classes[rep.class].reps()[rep.rep].matrices[c.group_element];
        m.view_mut((c.row * rep.d, c.col * rep.d), (rep.d, rep.d))
            .copy_from(inner);
        Some(m)
    }

    /// `ρ̄_i(x) = Σ_{t ≤ x} ρ̄_i(⌊t⌋)` on a natural basis element.
    pub fn natural_matrix(&self, s: &SemigroupStructure, i: usize, x: usize) -> CMatrix {
        let rep = &self.reps[i];
        let mut m = CMatrix::zeros(rep.dim(), rep.dim());
        let inner = self.classes[rep.class].reps()[rep.rep].matrices.as_slice();
        for t in s.downset(x) {
            let c = s.coordinates(t);
            if c.class == rep.class {
                let mut view = m.view_mut((c.row * rep.d, c.col * rep.d), (rep.d, rep.d));
                view += &inner[c.group_element];
            }
        }
        m
    }

    /// Largest entrywise error of `ρ̄(xy) = ρ̄(x)ρ̄(y)` over `pairs` random
    /// pairs of natural basis elements.
    pub fn homomorphism_error<R: Rng + ?Sized>(&self, s: &SemigroupStructure, pairs: usize, rng: &mut R) -> f64 {
        let mut worst = 0.0f64;
        for _ in 0..pairs {
            let x = rng.gen_range(0..s.size());
            let y = rng.gen_range(0..s.size());
            let xy = s.product(x, y);
            for i in 0..self.len() {
                let lhs = self.natural_matrix(s, i, xy);
                let rhs = self.natural_matrix(s, i, x) * self.natural_matrix(s, i, y);
                worst = worst.max(max_abs_diff(&lhs, &rhs));
            }
        }
        worst
    }
}

/// `f̂(ρ̄)` for every induced rep, in the order of [`InducedRepSet::reps`]
/// (class ascending, then rep order within the class).
#[derive(Clone, Debug, PartialEq)]
pub struct FourierCoefficients {
    pub blocks: Vec<CMatrix>,
}

impl FourierCoefficients {
    pub fn zeros(y: &InducedRepSet) -> Self {
        FourierCoefficients {
            blocks: y.reps().iter().map(|r| CMatrix::zeros(r.dim(), r.dim())).collect(),
        }
    }

    pub fn check_shape(&self, y: &InducedRepSet) -> Result<()> {
        if self.blocks.len() != y.len() {
            return Err(Error::Contract(format!(
                "spectrum has {} blocks, rep set has {} induced reps",
                self.blocks.len(),
                y.len()
            )));
        }
        for (b, r) in self.blocks.iter().zip(y.reps()) {
            if b.nrows() != r.dim() || b.ncols() != r.dim() {
                return Err(Error::Contract(format!(
                    "block for class {} rep {} is {}x{}, expected {}x{}",
                    r.class,
                    r.label,
                    b.nrows(),
                    b.ncols(),
                    r.dim(),
                    r.dim()
                )));
            }
        }
        Ok(())
    }

    /// The `d_ρ × d_ρ` sub-block at idempotent positions `(a, b)`.
    pub fn sub_block(&self, y: &InducedRepSet, i: usize, a: usize, b: usize) -> CMatrix {
        let d = y.reps()[i].d;
        self.blocks[i].view((a * d, b * d), (d, d)).into_owned()
    }

    /// Blockwise product, the spectrum of a convolution.
    pub fn multiply(&self, other: &FourierCoefficients) -> Result<FourierCoefficients> {
        if self.blocks.len() != other.blocks.len()
            || self
                .blocks
                .iter()
                .zip(&other.blocks)
                .any(|(a, b)| a.shape() != b.shape())
        {
            return Err(Error::Contract("spectra have different shapes".into()));
        }
        Ok(FourierCoefficients {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| b.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `max |self - other| / max(1, max |other|)`.
    pub fn relative_error(&self, other: &FourierCoefficients) -> f64 {
        let diff = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| max_abs_diff(a, b))
            .fold(0.0, f64::max);
        diff / other.max_abs().max(1.0)
    }
}

fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `max |a - b| / max(1, max |b|)` for value vectors.
pub fn relative_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    diff / scale
}

fn block_tasks(s: &SemigroupStructure) -> Vec<(usize, usize, usize)> {
    s.classes()
        .iter()
        .enumerate()
        .flat_map(|(k, c)| {
            let r = c.idempotent_count();
            (0..r).flat_map(move |a| (0..r).map(move |b| (k, a, b)))
        })
        .collect()
}

fn check_structure(s: &SemigroupStructure, y: &InducedRepSet) -> Result<()> {
    let total = y.dimension_square_sum();
    if y.classes.len() != s.classes().len() || total != s.size() {
        return Err(Error::Contract(format!(
            "rep set does not match the semigroup: dimension squares sum to {total}, |S| = {}",
            s.size()
        )));
    }
    Ok(())
}

/// Group Fourier transform of one block function, using the cyclic fast
/// path when the rep set is the standard character set.
fn block_ft(h: &[Complex64], set: &GroupRepSet, counter: &mut OpCounter) -> Result<Vec<CMatrix>> {
    match set.cyclic_powers() {
        Some(powers) if h.len() > 1 => {
            let ordered: Vec<Complex64> = powers.iter().map(|&x| h[x]).collect();
            let out = cyclic_ft_fast(&ordered, counter);
            Ok(out.into_iter().map(|v| CMatrix::from_element(1, 1, v)).collect())
        }
        _ => Ok(group_ft_counted(h, set, counter)?.blocks),
    }
}

fn block_ift(blocks: Vec<CMatrix>, set: &GroupRepSet, counter: &mut OpCounter) -> Result<Vec<Complex64>> {
    match set.cyclic_powers() {
        Some(powers) if powers.len() > 1 => {
            let spectrum: Vec<Complex64> = blocks.iter().map(|b| b[(0, 0)]).collect();
            let ordered = cyclic_ift_fast(&spectrum, counter);
            let mut h = vec![Complex64::new(0.0, 0.0); powers.len()];
            for (t, &x) in powers.iter().enumerate() {
                h[x] = ordered[t];
            }
            Ok(h)
        }
        _ => {
            let spec = GroupSpectrum {
                labels: set.reps().iter().map(|r| r.label.clone()).collect(),
                blocks,
            };
            group_ift_counted(&spec, set, counter)
        }
    }
}

pub fn fft(s: &SemigroupStructure, f: &FunctionOnS, y: &InducedRepSet) -> Result<FourierCoefficients> {
    fft_counted(s, f, y, &mut OpCounter::new())
}

/// Forward transform: fast zeta transform to the groupoid basis, then one
/// group Fourier transform per D-class and idempotent pair.
pub fn fft_counted(
    s: &SemigroupStructure,
    f: &FunctionOnS,
    y: &InducedRepSet,
    counter: &mut OpCounter,
) -> Result<FourierCoefficients> {
    f.expect(Basis::Semigroup, s.size())?;
    check_structure(s, y)?;
    let g = fast_zeta(s, f, counter)?;
    let results: Vec<(Vec<CMatrix>, OpCounter)> = block_tasks(s)
        .into_par_iter()
        .map(|(k, a, b)| {
            let class = &s.classes()[k];
            let order = class.subgroup().order();
            let h: Vec<Complex64> = (0..order).map(|x| g.values[class.cell(a, b, x)]).collect();
            let mut c = OpCounter::new();
            let blocks = block_ft(&h, y.class_set(k), &mut c)?;
            Ok((blocks, c))
        })
        .collect::<Result<_>>()?;

    let mut out = FourierCoefficients::zeros(y);
    for ((k, a, b), (blocks, c)) in block_tasks(s).into_iter().zip(results) {
        counter.merge(c);
        for (i, block) in y.class_range(k).zip(blocks) {
            let d = y.reps()[i].d;
            out.blocks[i].view_mut((a * d, b * d), (d, d)).copy_from(&block);
        }
    }
    Ok(out)
}

pub fn ifft(s: &SemigroupStructure, c: &FourierCoefficients, y: &InducedRepSet) -> Result<FunctionOnS> {
    ifft_counted(s, c, y, &mut OpCounter::new())
}

/// Inverse transform: per-block group inversion recovers the groupoid
/// coefficients, then the fast Möbius transform returns to the semigroup
/// basis.
pub fn ifft_counted(
    s: &SemigroupStructure,
    c: &FourierCoefficients,
    y: &InducedRepSet,
    counter: &mut OpCounter,
) -> Result<FunctionOnS> {
    check_structure(s, y)?;
    c.check_shape(y)?;
    let results: Vec<(Vec<Complex64>, OpCounter)> = block_tasks(s)
        .into_par_iter()
        .map(|(k, a, b)| {
            let blocks = y.class_range(k).map(|i| c.sub_block(y, i, a, b)).collect();
            let mut ops = OpCounter::new();
            let h = block_ift(blocks, y.class_set(k), &mut ops)?;
            Ok((h, ops))
        })
        .collect::<Result<_>>()?;
    let mut g = vec![Complex64::new(0.0, 0.0); s.size()];
    for ((k, a, b), (h, ops)) in block_tasks(s).into_iter().zip(results) {
        counter.merge(ops);
        let class = &s.classes()[k];
        for (x, v) in h.into_iter().enumerate() {
            g[class.cell(a, b, x)] = v;
        }
    }
    fast_mobius(s, &FunctionOnS::new(Basis::Groupoid, g), counter)
}

/// Reference transform `Σ_x f(x) ρ̄(x)`, with `ρ̄(x)` expanded over the
/// down-set of `x`.
pub fn naive_ft(s: &SemigroupStructure, f: &FunctionOnS, y: &InducedRepSet) -> Result<FourierCoefficients> {
    f.expect(Basis::Semigroup, s.size())?;
    check_structure(s, y)?;
    let mut out = FourierCoefficients::zeros(y);
    for (x, &fx) in f.values.iter().enumerate() {
        if fx == Complex64::new(0.0, 0.0) {
            continue;
        }
        for t in s.downset(x) {
            let c = s.coordinates(t);
            for i in y.class_range(c.class) {
                let rep = &y.reps()[i];
                let inner = &y.class_set(c.class).reps()[rep.rep].matrices[c.group_element];
                let mut view = out.blocks[i].view_mut((c.row * rep.d, c.col * rep.d), (rep.d, rep.d));
                view += inner * fx;
            }
        }
    }
    Ok(out)
}

/// `g(x) = (1/|G_k|) Σ_ρ d_ρ tr(ĝ(ρ̄)_{ran x, dom x} ρ(y⁻¹))` with
/// `y = p_{ran x}⁻¹ x p_{dom x}`.
pub fn invert_groupoid_local(
    s: &SemigroupStructure,
    y: &InducedRepSet,
    c: &FourierCoefficients,
    x: usize,
) -> Result<Complex64> {
    c.check_shape(y)?;
    let co = s.coordinates(x);
    let set = y.class_set(co.class);
    let yinv = set.group().inverse(co.group_element);
    let mut total = Complex64::new(0.0, 0.0);
    for i in y.class_range(co.class) {
        let rep = &y.reps()[i];
        let block = c.sub_block(y, i, co.row, co.col);
        let m = &set.reps()[rep.rep].matrices[yinv];
        total += (block * m).trace() * rep.d as f64;
    }
    Ok(total / set.group().order() as f64)
}

/// Representations `ρ̃_i = A_i ρ̄_i A_i⁻¹` equivalent to `Y`.
#[derive(Clone, Debug)]
pub struct ConjugatedRepSet {
    a: Vec<CMatrix>,
    a_inv: Vec<CMatrix>,
}

/// Condition number `σ_max / σ_min` of a square matrix.
pub fn condition_number(m: &CMatrix) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

impl ConjugatedRepSet {
    pub fn identity(y: &InducedRepSet) -> Self {
        let a: Vec<CMatrix> = y.reps().iter().map(|r| CMatrix::identity(r.dim(), r.dim())).collect();
        ConjugatedRepSet { a_inv: a.clone(), a }
    }

    /// Uses the given conjugating matrices; singular or badly conditioned
    /// ones (condition number above 1e12) are rejected.
    pub fn from_matrices(y: &InducedRepSet, a: Vec<CMatrix>) -> Result<Self> {
        if a.len() != y.len() {
            return Err(Error::Contract(format!("{} matrices for {} reps", a.len(), y.len())));
        }
        let mut a_inv = Vec::with_capacity(a.len());
        for (m, r) in a.iter().zip(y.reps()) {
            if m.shape() != (r.dim(), r.dim()) {
                return Err(Error::Contract(format!(
                    "conjugating matrix for class {} rep {} has the wrong size",
                    r.class, r.label
                )));
            }
            let cond = condition_number(m);
            let inv = m.clone().try_inverse().filter(|_| cond.is_finite() && cond <= 1e12);
            a_inv.push(inv.ok_or_else(|| Error::Domain("conjugating matrix is singular".into()))?);
        }
        Ok(ConjugatedRepSet { a, a_inv })
    }

    /// Random complex conjugators with entries in `[-1, 1) + i[-1, 1)` and
    /// condition number at most `max_condition`.
    pub fn random<R: Rng + ?Sized>(y: &InducedRepSet, max_condition: f64, rng: &mut R) -> Result<Self> {
        let mut mats = Vec::with_capacity(y.len());
        for r in y.reps() {
            let n = r.dim();
            let mut tries = 0;
            loop {
                let m = DMatrix::from_fn(n, n, |_, _| {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                });
                if condition_number(&m) <= max_condition {
                    mats.push(m);
                    break;
                }
                tries += 1;
                if tries > 1000 {
                    return Err(Error::Domain(format!(
                        "no random {n}x{n} matrix with condition number below {max_condition}"
                    )));
                }
            }
        }
        Self::from_matrices(y, mats)
    }

    /// `ĝ(ρ̃_i) = A_i ĝ(ρ̄_i) A_i⁻¹`.
    pub fn conjugate_spectrum(&self, c: &FourierCoefficients) -> FourierCoefficients {
        FourierCoefficients {
            blocks: c
                .blocks
                .iter()
                .zip(self.a.iter().zip(&self.a_inv))
                .map(|(b, (a, ai))| a * b * ai)
                .collect(),
        }
    }

    fn conj(&self, i: usize, m: &CMatrix) -> CMatrix {
        &self.a[i] * m * &self.a_inv[i]
    }

    /// `ρ̃_i(⌊x⌋)`, or `None` when it vanishes.
    pub fn groupoid_matrix(&self, s: &SemigroupStructure, y: &InducedRepSet, i: usize, x: usize) -> Option<CMatrix> {
        y.groupoid_matrix(s, i, x).map(|m| self.conj(i, &m))
    }

    /// `ρ̃_i(x)` on a natural basis element.
    pub fn natural_matrix(&self, s: &SemigroupStructure, y: &InducedRepSet, i: usize, x: usize) -> CMatrix {
        self.conj(i, &y.natural_matrix(s, i, x))
    }
}

/// `g(x) = (1/|G_k|) Σ_{ρ ∈ IRR(G_k)} d_ρ tr(ĝ(ρ̃) ρ̃(⌊x⁻¹⌋))`.
pub fn invert_equivalent_reps(
    s: &SemigroupStructure,
    y: &InducedRepSet,
    reps: &ConjugatedRepSet,
    c: &FourierCoefficients,
    x: usize,
) -> Result<Complex64> {
    c.check_shape(y)?;
    let xinv = s.inverse(x);
    let k = s.class_of(x);
    let mut total = Complex64::new(0.0, 0.0);
    for i in y.class_range(k) {
        if let Some(m) = reps.groupoid_matrix(s, y, i, xinv) {
            total += (&c.blocks[i] * m).trace() * y.reps()[i].d as f64;
        }
    }
    Ok(total / y.class_set(k).group().order() as f64)
}

/// `g(x) = (1/(r_k |G_k|)) Σ_{ρ ∈ X} d_ρ tr(ĝ(ρ) ρ(⌊x⁻¹⌋))`, with no
/// reference to the subgroup reps.
pub fn invert_uniform(
    s: &SemigroupStructure,
    y: &InducedRepSet,
    reps: &ConjugatedRepSet,
    c: &FourierCoefficients,
    x: usize,
) -> Result<Complex64> {
    c.check_shape(y)?;
    let xinv = s.inverse(x);
    let class = &s.classes()[s.class_of(x)];
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..y.len() {
        if let Some(m) = reps.groupoid_matrix(s, y, i, xinv) {
            total += (&c.blocks[i] * m).trace() * y.reps()[i].dim() as f64;
        }
    }
    Ok(total / (class.idempotent_count() * class.subgroup().order()) as f64)
}

/// `f(x)` in the semigroup basis straight from the spectrum relative to
/// `X`, through two Möbius expansions. Quadratic in `|S|` per element.
pub fn invert_semigroup_basis(
    s: &SemigroupStructure,
    y: &InducedRepSet,
    reps: &ConjugatedRepSet,
    c: &FourierCoefficients,
    x: usize,
) -> Result<Complex64> {
    c.check_shape(y)?;
    // Σ_ρ d_ρ tr(f̂(ρ) ρ(u)) on natural basis elements, computed on demand
    let mut trace_cache: Vec<Option<Complex64>> = vec![None; s.size()];
    let mut traced = |u: usize| -> Complex64 {
        *trace_cache[u].get_or_insert_with(|| {
            (0..y.len())
                .map(|i| (&c.blocks[i] * reps.natural_matrix(s, y, i, u)).trace() * y.reps()[i].dim() as f64)
                .sum()
        })
    };
    let mut total = Complex64::new(0.0, 0.0);
    for (t, mu_st) in s.mobius_row(x) {
        let class = &s.classes()[s.class_of(t)];
        let weight = mu_st as f64 / (class.idempotent_count() * class.subgroup().order()) as f64;
        let mut inner = Complex64::new(0.0, 0.0);
        for (u, mu) in s.groupoid_element(s.inverse(t)) {
            inner += traced(u) * mu as f64;
        }
        total += inner * weight;
    }
    Ok(total)
}

fn check_same(s: &SemigroupStructure, f: &FunctionOnS, g: &FunctionOnS) -> Result<()> {
    f.expect(Basis::Semigroup, s.size())?;
    g.expect(Basis::Semigroup, s.size())
}

/// `(f * g)(u) = Σ_{xy = u} f(x) g(y)` by direct multiplication.
pub fn convolve_naive(s: &SemigroupStructure, f: &FunctionOnS, g: &FunctionOnS) -> Result<FunctionOnS> {
    check_same(s, f, g)?;
    let zero = Complex64::new(0.0, 0.0);
    let mut out = vec![zero; s.size()];
    for (x, &fx) in f.values.iter().enumerate() {
        if fx == zero {
            continue;
        }
        for (y, &gy) in g.values.iter().enumerate() {
            if gy != zero {
                out[s.product(x, y)] += fx * gy;
            }
        }
    }
    Ok(FunctionOnS::new(Basis::Semigroup, out))
}

/// Convolution through the spectrum: `ifft(fft(f) · fft(g))`.
pub fn convolve_fft(
    s: &SemigroupStructure,
    y: &InducedRepSet,
    f: &FunctionOnS,
    g: &FunctionOnS,
) -> Result<FunctionOnS> {
    check_same(s, f, g)?;
    let product = fft(s, f, y)?.multiply(&fft(s, g, y)?)?;
    ifft(s, &product, y)
}

/// Maps a groupoid-basis function supported on `D_k` to its `r × r` grid
/// of group-algebra coefficients: entry `(a, b)` is `y ↦ x(p_a y p_b⁻¹)`.
pub fn steinberg_phi(s: &SemigroupStructure, x: &FunctionOnS, k: usize) -> Result<Vec<Vec<Vec<Complex64>>>> {
    x.expect(Basis::Groupoid, s.size())?;
    let class = s
        .classes()
        .get(k)
        .ok_or_else(|| Error::Domain(format!("no D-class {k}")))?;
    if let Some(bad) = (0..s.size()).find(|&id| s.class_of(id) != k && x.values[id] != Complex64::new(0.0, 0.0)) {
        return Err(Error::Contract(format!(
            "support contains {} outside class {k}",
            s.encode(bad)
        )));
    }
    let r = class.idempotent_count();
    let order = class.subgroup().order();
    Ok((0..r)
        .map(|a| {
            (0..r)
                .map(|b| (0..order).map(|y| x.values[class.cell(a, b, y)]).collect())
                .collect()
        })
        .collect())
}

/// Inverse of [`steinberg_phi`]: `y E_{a,b} ↦ ⌊p_a y p_b⁻¹⌋`.
pub fn steinberg_phi_inverse(s: &SemigroupStructure, grid: &[Vec<Vec<Complex64>>], k: usize) -> Result<FunctionOnS> {
    let class = s
        .classes()
        .get(k)
        .ok_or_else(|| Error::Domain(format!("no D-class {k}")))?;
    let r = class.idempotent_count();
    let order = class.subgroup().order();
    if grid.len() != r
        || grid
            .iter()
            .any(|row| row.len() != r || row.iter().any(|c| c.len() != order))
    {
        return Err(Error::Contract(format!(
            "grid must be {r}x{r} with {order} coefficients per entry"
        )));
    }
    let mut out = FunctionOnS::zeros(Basis::Groupoid, s.size());
    for (a, row) in grid.iter().enumerate() {
        for (b, coeffs) in row.iter().enumerate() {
            for (y, &v) in coeffs.iter().enumerate() {
                out.values[class.cell(a, b, y)] = v;
            }
        }
    }
    Ok(out)
}
