use std::fmt::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use invsemi::fast::{fast_mobius, fast_zeta};
use invsemi::fourier::{fft_counted, ifft_counted};
use invsemi::{Basis, FunctionOnS, InducedRepSet, OpCounter, Result, SemigroupStructure};

pub const HEADER: &str = "family,n,size,transform,additions,multiplications,wall_seconds\n";

/// One CSV row per transform, each run once on a seeded random input.
pub fn rows(s: &SemigroupStructure, seed: u64) -> Result<String> {
    let spec = s.family().expect("built-in family");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = FunctionOnS::random(Basis::Semigroup, s.size(), &mut rng);
    let mut out = String::new();
    let mut row = |name: &str, ops: OpCounter, seconds: f64| {
        let _ = writeln!(
            out,
            "{},{},{},{name},{},{},{seconds:.6}",
            spec.family,
            spec.n,
            s.size(),
            ops.additions,
            ops.multiplications
        );
    };

    let mut ops = OpCounter::new();
    let start = Instant::now();
    let g = fast_zeta(s, &f, &mut ops)?;
    row("zeta", ops, start.elapsed().as_secs_f64());

    let mut ops = OpCounter::new();
    let start = Instant::now();
    fast_mobius(s, &g, &mut ops)?;
    row("mobius", ops, start.elapsed().as_secs_f64());

    // the wreath family with non-abelian labels has no built-in reps
    if let Ok(y) = InducedRepSet::builtin(s) {
        let mut ops = OpCounter::new();
        let start = Instant::now();
        let c = fft_counted(s, &f, &y, &mut ops)?;
        row("fft", ops, start.elapsed().as_secs_f64());

        let mut ops = OpCounter::new();
        let start = Instant::now();
        ifft_counted(s, &c, &y, &mut ops)?;
        row("ifft", ops, start.elapsed().as_secs_f64());
    }
    Ok(out)
}
