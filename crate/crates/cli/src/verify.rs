use std::fmt::Write;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use invsemi::fast::{fast_mobius, fast_zeta};
use invsemi::fourier::{
    convolve_fft, convolve_naive, invert_equivalent_reps, invert_groupoid_local, invert_semigroup_basis,
    invert_uniform, relative_error, ConjugatedRepSet,
};
use invsemi::structure::zeta_naive;
use invsemi::{
    fft, ifft, naive_ft, Basis, FamilySpec, FunctionOnS, InducedRepSet, OpCounter, Result, SemigroupStructure,
};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Above this size the quadratic convolution oracle is skipped.
const CONVOLUTION_LIMIT: usize = 4096;
/// Elements checked by the inversion formulas.
const FORMULA_SAMPLES: usize = 200;
const MAX_CONDITION: f64 = 1e3;

#[derive(Serialize)]
pub struct Report {
    pub family: FamilySpec,
    pub size: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub trials: usize,
    pub suites: Vec<Suite>,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct Suite {
    pub name: &'static str,
    /// `pass`, `fail` or `skip`.
    pub status: &'static str,
    pub max_error: Option<f64>,
    pub detail: String,
}

impl Suite {
    fn measured(name: &'static str, error: f64, tol: f64, detail: String) -> Self {
        let status = if error <= tol { "pass" } else { "fail" };
        Suite {
            name,
            status,
            max_error: Some(error),
            detail,
        }
    }

    fn exact(name: &'static str, ok: bool, detail: String) -> Self {
        Suite {
            name,
            status: if ok { "pass" } else { "fail" },
            max_error: None,
            detail,
        }
    }
}

impl Report {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "verify {}: |S| = {}, seed {}, {} trials, tolerance {:e}",
            self.family, self.size, self.seed, self.trials, self.tolerance
        );
        for suite in &self.suites {
            let error = suite
                .max_error
                .map_or_else(|| "exact".to_string(), |e| format!("{e:.3e}"));
            let _ = writeln!(
                out,
                "  {:<4}  {:<20} {:>10}  {}",
                suite.status, suite.name, error, suite.detail
            );
        }
        let _ = writeln!(out, "result: {}", if self.passed { "pass" } else { "fail" });
        out
    }
}

fn max_abs(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn structure(s: &SemigroupStructure, predicted: u128) -> Suite {
    let regular = (0..s.size()).all(|x| {
        let inv = s.inverse(x);
        s.inverse(inv) == x && s.product(s.product(x, inv), x) == x
    });
    let cells: usize = s
        .classes()
        .iter()
        .map(|c| c.idempotent_count().pow(2) * c.subgroup().order())
        .sum();
    let ok = regular && cells == s.size() && predicted == s.size() as u128;
    Suite::exact(
        "structure",
        ok,
        format!(
            "{} classes, closed-form count {predicted}, sum r^2|G| = {cells}",
            s.classes().len()
        ),
    )
}

fn representations(s: &SemigroupStructure, y: &InducedRepSet, tol: f64, rng: &mut ChaCha8Rng) -> Suite {
    let mut worst = 0.0f64;
    let mut complete = y.dimension_square_sum() == s.size();
    for k in 0..s.classes().len() {
        let set = y.class_set(k);
        complete &= set.check_completeness().is_ok();
        worst = worst
            .max(set.homomorphism_error(1000, rng))
            .max(set.inequivalence_error());
    }
    worst = worst.max(y.homomorphism_error(s, 500, rng));
    let mut suite = Suite::measured(
        "representations",
        worst,
        tol,
        format!("{} induced reps, sum d^2 = {}", y.len(), y.dimension_square_sum()),
    );
    if !complete {
        suite.status = "fail";
    }
    suite
}

fn zeta_oracle(s: &SemigroupStructure, inputs: &[FunctionOnS], tol: f64) -> Result<Suite> {
    let mut worst = 0.0f64;
    for f in inputs {
        let g = fast_zeta(s, f, &mut OpCounter::new())?;
        worst = worst.max(max_abs(&g.values, &zeta_naive(s, f)?.values));
        worst = worst.max(max_abs(&fast_mobius(s, &g, &mut OpCounter::new())?.values, &f.values));
    }
    Ok(Suite::measured(
        "zeta_mobius",
        worst,
        tol,
        "fast vs naive zeta, mobius after zeta".into(),
    ))
}

fn fft_oracle(s: &SemigroupStructure, y: &InducedRepSet, inputs: &[FunctionOnS], tol: f64) -> Result<Suite> {
    let mut worst = 0.0f64;
    for f in inputs {
        worst = worst.max(fft(s, f, y)?.relative_error(&naive_ft(s, f, y)?));
    }
    Ok(Suite::measured(
        "fft_oracle",
        worst,
        tol,
        "fft vs naive Wedderburn sum".into(),
    ))
}

fn round_trip(s: &SemigroupStructure, y: &InducedRepSet, inputs: &[FunctionOnS], tol: f64) -> Result<Suite> {
    let mut worst = 0.0f64;
    for f in inputs {
        let back = ifft(s, &fft(s, f, y)?, y)?;
        worst = worst.max(relative_error(&back.values, &f.values));
    }
    Ok(Suite::measured("round_trip", worst, tol, "ifft after fft".into()))
}

fn formulas(
    s: &SemigroupStructure,
    y: &InducedRepSet,
    f: &FunctionOnS,
    tol: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Suite> {
    let x = ConjugatedRepSet::random(y, MAX_CONDITION, rng)?;
    let c = fft(s, f, y)?;
    let cx = x.conjugate_spectrum(&c);
    let g = zeta_naive(s, f)?;
    let ids: Vec<usize> = if s.size() <= FORMULA_SAMPLES {
        (0..s.size()).collect()
    } else {
        let mut picked = sample(rng, s.size(), FORMULA_SAMPLES).into_vec();
        picked.sort_unstable();
        picked
    };
    let scale = g.values.iter().chain(&f.values).map(|z| z.norm()).fold(1.0, f64::max);
    let mut worst = 0.0f64;
    for &id in &ids {
        let groupoid = [
            invert_groupoid_local(s, y, &c, id)?,
            invert_equivalent_reps(s, y, &x, &cx, id)?,
            invert_uniform(s, y, &x, &cx, id)?,
        ];
        for v in groupoid {
            worst = worst.max((v - g.values[id]).norm() / scale);
        }
        worst = worst.max((invert_semigroup_basis(s, y, &x, &cx, id)? - f.values[id]).norm() / scale);
    }
    Ok(Suite::measured(
        "inversion_formulas",
        worst,
        tol,
        format!("four formulas at {} elements", ids.len()),
    ))
}

fn convolution(s: &SemigroupStructure, y: &InducedRepSet, f: &FunctionOnS, g: &FunctionOnS, tol: f64) -> Result<Suite> {
    if s.size() > CONVOLUTION_LIMIT {
        return Ok(Suite {
            name: "convolution",
            status: "skip",
            max_error: None,
            detail: format!("|S| above {CONVOLUTION_LIMIT}"),
        });
    }
    let fast = convolve_fft(s, y, f, g)?;
    let naive = convolve_naive(s, f, g)?;
    Ok(Suite::measured(
        "convolution",
        relative_error(&fast.values, &naive.values),
        tol,
        "fft vs naive product".into(),
    ))
}

pub fn run(s: &SemigroupStructure, seed: u64, tol: f64, trials: usize) -> Result<Report> {
    let family = s.family().cloned().expect("built-in family");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y = InducedRepSet::builtin(s)?;
    let inputs: Vec<FunctionOnS> = (0..trials.max(2))
        .map(|_| FunctionOnS::random(Basis::Semigroup, s.size(), &mut rng))
        .collect();

    let suites = vec![
        structure(s, family.predicted_size()?),
        representations(s, &y, tol, &mut rng),
        zeta_oracle(s, &inputs, tol)?,
        fft_oracle(s, &y, &inputs, tol)?,
        round_trip(s, &y, &inputs, tol)?,
        formulas(s, &y, &inputs[0], tol, &mut rng)?,
        convolution(s, &y, &inputs[0], &inputs[1], tol)?,
    ];
    let passed = suites.iter().all(|suite| suite.status != "fail");
    Ok(Report {
        family,
        size: s.size(),
        seed,
        tolerance: tol,
        trials: inputs.len(),
        suites,
        passed,
    })
}
