use std::f64::consts::PI;

use num_complex::Complex64;

use super::{CMatrix, GroupRepSet};
use crate::error::{Error, Result};
use crate::fast::OpCounter;

/// `f̂(ρ)` for every rep of a [`GroupRepSet`], in rep order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpectrum {
    pub labels: Vec<String>,
    pub blocks: Vec<CMatrix>,
}

impl GroupSpectrum {
    pub fn check_shape(&self, reps: &GroupRepSet) -> Result<()> {
        if self.blocks.len() != reps.len() {
            return Err(Error::Contract(format!(
                "spectrum has {} blocks, rep set has {} reps",
                self.blocks.len(),
                reps.len()
            )));
        }
        for (b, r) in self.blocks.iter().zip(reps.reps()) {
            if b.nrows() != r.dim || b.ncols() != r.dim {
                return Err(Error::Contract(format!(
                    "block for {} is not {}x{}",
                    r.label, r.dim, r.dim
                )));
            }
        }
        Ok(())
    }
}

pub fn group_ft(f: &[Complex64], reps: &GroupRepSet) -> Result<GroupSpectrum> {
    group_ft_counted(f, reps, &mut OpCounter::new())
}

/// `f̂(ρ) = Σ_x f(x) ρ(x)`, summed in local id order.
pub fn group_ft_counted(f: &[Complex64], reps: &GroupRepSet, counter: &mut OpCounter) -> Result<GroupSpectrum> {
    let order = reps.group().order();
    if f.len() != order {
        return Err(Error::Contract(format!(
            "function has {} values, group order is {order}",
            f.len()
        )));
    }
    let mut blocks = Vec::with_capacity(reps.len());
    for rep in reps.reps() {
        let mut acc = CMatrix::zeros(rep.dim, rep.dim);
        for (x, m) in rep.matrices.iter().enumerate() {
            let c = f[x];
            acc.zip_apply(m, |a, b| *a += c * b);
        }
        let work = (order * rep.dim * rep.dim) as u64;
        counter.add(work);
        counter.mul(work);
        blocks.push(acc);
    }
    Ok(GroupSpectrum {
        labels: reps.reps().iter().map(|r| r.label.clone()).collect(),
        blocks,
    })
}

pub fn group_ift(spec: &GroupSpectrum, reps: &GroupRepSet) -> Result<Vec<Complex64>> {
    group_ift_counted(spec, reps, &mut OpCounter::new())
}

/// `f(x) = (1/|G|) Σ_ρ d_ρ tr(f̂(ρ) ρ(x⁻¹))`.
pub fn group_ift_counted(spec: &GroupSpectrum, reps: &GroupRepSet, counter: &mut OpCounter) -> Result<Vec<Complex64>> {
    spec.check_shape(reps)?;
    let group = reps.group();
    let order = group.order();
    let scale = 1.0 / order as f64;
    let mut out = Vec::with_capacity(order);
    for x in 0..order {
        let xinv = group.inverse(x);
        let mut total = Complex64::new(0.0, 0.0);
        for (block, rep) in spec.blocks.iter().zip(reps.reps()) {
            let m = &rep.matrices[xinv];
            let mut tr = Complex64::new(0.0, 0.0);
            for i in 0..rep.dim {
                for j in 0..rep.dim {
                    tr += block[(i, j)] * m[(j, i)];
                }
            }
            total += tr * rep.dim as f64;
            let work = (rep.dim * rep.dim + 1) as u64;
            counter.add(work);
            counter.mul(work);
        }
        out.push(total * scale);
        counter.mul(1);
    }
    Ok(out)
}

/// `out[j] = Σ_t f[t] exp(2πi jt/k)` by direct summation.
pub fn cyclic_dft_naive(f: &[Complex64]) -> Vec<Complex64> {
    let k = f.len();
    (0..k)
        .map(|j| {
            f.iter()
                .enumerate()
                .map(|(t, &v)| v * Complex64::from_polar(1.0, 2.0 * PI * ((j * t) % k) as f64 / k as f64))
                .sum()
        })
        .collect()
}

/// `out[j] = Σ_t f[t] exp(2πi jt/k)`: radix-2 for powers of two, Bluestein
/// chirp embedding otherwise.
pub fn cyclic_ft_fast(f: &[Complex64], counter: &mut OpCounter) -> Vec<Complex64> {
    dft(f, 1.0, counter)
}

/// `f[t] = (1/k) Σ_j spec[j] exp(-2πi jt/k)`.
pub fn cyclic_ift_fast(spec: &[Complex64], counter: &mut OpCounter) -> Vec<Complex64> {
    let k = spec.len();
    let mut out = dft(spec, -1.0, counter);
    if k > 1 {
        let s = 1.0 / k as f64;
        out.iter_mut().for_each(|v| *v *= s);
        counter.mul(k as u64);
    }
    out
}

fn dft(x: &[Complex64], sign: f64, counter: &mut OpCounter) -> Vec<Complex64> {
    let k = x.len();
    if k <= 1 {
        return x.to_vec();
    }
    if k.is_power_of_two() {
        let mut v = x.to_vec();
        radix2(&mut v, sign, counter);
        v
    } else {
        bluestein(x, sign, counter)
    }
}

fn radix2(v: &mut [Complex64], sign: f64, counter: &mut OpCounter) {
    let n = v.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            v.swap(i, j);
        }
    }
    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|m| Complex64::from_polar(1.0, sign * 2.0 * PI * m as f64 / n as f64))
        .collect();
    let mut len = 2;
    while len <= n {
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for m in 0..len / 2 {
                let a = v[start + m];
                let b = v[start + m + len / 2] * twiddles[m * stride];
                v[start + m] = a + b;
                v[start + m + len / 2] = a - b;
            }
        }
        counter.mul((n / 2) as u64);
        counter.add(n as u64);
        len *= 2;
    }
}

fn bluestein(x: &[Complex64], sign: f64, counter: &mut OpCounter) -> Vec<Complex64> {
    let k = x.len();
    let m = (2 * k - 1).next_power_of_two();
    // jt = (j² + t² - (j - t)²) / 2, with squares reduced mod 2k
    let chirp: Vec<Complex64> = (0..k)
        .map(|t| {
            let sq = (t * t) % (2 * k);
            Complex64::from_polar(1.0, sign * PI * sq as f64 / k as f64)
        })
        .collect();
    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for t in 0..k {
        a[t] = x[t] * chirp[t];
    }
    counter.mul(k as u64);
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for t in 1..k {
        b[t] = chirp[t].conj();
        b[m - t] = chirp[t].conj();
    }
    radix2(&mut a, 1.0, counter);
    radix2(&mut b, 1.0, counter);
    for (u, w) in a.iter_mut().zip(&b) {
        *u *= w;
    }
    counter.mul(m as u64);
    radix2(&mut a, -1.0, counter);
    let s = 1.0 / m as f64;
    let out = (0..k).map(|j| a[j] * s * chirp[j]).collect();
    counter.mul(2 * k as u64);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::{irreps_cyclic, irreps_symmetric};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(len: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
        (0..len)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn delta_at_identity_gives_identity_blocks() {
        let reps = irreps_symmetric(3).unwrap();
        let mut f = vec![Complex64::new(0.0, 0.0); 6];
        f[reps.group().identity()] = Complex64::new(1.0, 0.0);
        let spec = group_ft(&f, &reps).unwrap();
        for b in &spec.blocks {
            assert_eq!(b, &CMatrix::identity(b.nrows(), b.nrows()));
        }
        let back = group_ift(&spec, &reps).unwrap();
        assert!(max_diff(&back, &f) < 1e-14);
    }

    #[test]
    fn z2_character_sums() {
        let reps = irreps_cyclic(2).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let spec = group_ft(&[one, one], &reps).unwrap();
        assert!((spec.blocks[0][(0, 0)] - 2.0).norm() < 1e-15);
        assert!(spec.blocks[1][(0, 0)].norm() < 1e-15);
    }

    #[test]
    fn length_mismatch_is_contract_error() {
        let reps = irreps_cyclic(3).unwrap();
        assert!(matches!(
            group_ft(&[Complex64::new(0.0, 0.0); 2], &reps),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn fast_cyclic_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in [1, 2, 3, 5, 8, 12, 17, 64] {
            let f = random(k, &mut rng);
            let mut ops = OpCounter::new();
            let fast = cyclic_ft_fast(&f, &mut ops);
            assert!(max_diff(&fast, &cyclic_dft_naive(&f)) < 1e-9 * k as f64);
            let back = cyclic_ift_fast(&fast, &mut ops);
            assert!(max_diff(&back, &f) < 1e-12);
        }
        let mut delta = vec![Complex64::new(0.0, 0.0); 8];
        delta[0] = Complex64::new(1.0, 0.0);
        let flat = cyclic_ft_fast(&delta, &mut OpCounter::new());
        assert!(flat.iter().all(|v| (v - 1.0).norm() < 1e-15));
    }
}
