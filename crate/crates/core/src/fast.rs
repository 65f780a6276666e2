//! Fast zeta and Möbius transforms with operation counters.
//!
//! * [`zeta_sweep`] / [`mobius_sweep`]: extension-sweep dynamic program for
//!   restriction-closed families (`R_n`, `P_n`, `C_n`, `G ≀ R_n`). Step `i`
//!   adds to `f(s)` the current values at all one-pair extensions of `s`
//!   at domain point `i`; every `t ≥ s` is reached along exactly one chain
//!   of extensions adding domain points in increasing order. Each step is
//!   `I + A_i` with `A_i² = 0`, so the Möbius transform runs the steps in
//!   reverse with subtraction.
//! * [`zeta_boolean`] / [`mobius_boolean`]: superset sums on `B_n`.
//! * [`zeta_rotation`] / [`mobius_rotation`]: `Rot_n` is `n` copies of
//!   `B_n` glued at the empty map; transform each copy, then correct the
//!   bottom value.
//! * [`zeta_chain`] / [`mobius_chain`]: suffix sums and differences.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::element::Pair;
use crate::error::{Error, Result};
use crate::families::FamilyTag;
use crate::structure::{mobius_naive, zeta_naive, Basis, FunctionOnS, SemigroupStructure};

/// Counts complex additions (subtractions included) and multiplications.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub additions: u64,
    pub multiplications: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, k: u64) {
        self.additions += k;
    }

    #[inline]
    pub fn mul(&mut self, k: u64) {
        self.multiplications += k;
    }

    pub fn merge(&mut self, other: OpCounter) {
        self.additions += other.additions;
        self.multiplications += other.multiplications;
    }

    /// Operations in the multiply-and-add sense: each operation is one
    /// complex multiplication paired with one complex addition, so a run
    /// needs at least `max(additions, multiplications)` of them.
    pub fn operations(&self) -> u64 {
        self.additions.max(self.multiplications)
    }
}

/// Precomputed one-pair extensions per domain point.
#[derive(Debug)]
pub struct SweepPlan {
    /// `steps[i - 1]` lists `(s, t)` with `t = s ∪ {(i, j, g)}`, sorted.
    steps: Vec<Vec<(u32, u32)>>,
}

impl SweepPlan {
    fn new(s: &SemigroupStructure) -> Self {
        let n = s.ambient_size();
        let h = s.label_group().map_or(1, |g| g.order() as u32);
        let mut steps = vec![Vec::new(); n as usize];
        for (sid, el) in s.elements().iter().enumerate() {
            let dmask = el.domain_mask();
            let rmask = el.range_mask();
            for i in 1..=n {
                if dmask & (1 << (i - 1)) != 0 {
                    continue;
                }
                for j in 1..=n {
                    if rmask & (1 << (j - 1)) != 0 {
                        continue;
                    }
                    for g in 0..h {
                        let ext = el.extend_with(Pair::labeled(i, j, g)).expect("free point");
                        if let Some(t) = s.id_of(&ext) {
                            steps[(i - 1) as usize].push((sid as u32, t as u32));
                        }
                    }
                }
            }
        }
        SweepPlan { steps }
    }

    pub fn positions(&self) -> usize {
        self.steps.len()
    }

    pub fn step(&self, position: usize) -> &[(u32, u32)] {
        &self.steps[position - 1]
    }
}

fn family_tag(s: &SemigroupStructure) -> Option<FamilyTag> {
    s.family().map(|f| f.family)
}

fn sweep_plan(s: &SemigroupStructure) -> Result<&SweepPlan> {
    match family_tag(s) {
        Some(t) if t.is_restriction_closed() => Ok(s.sweep_plan.get_or_init(|| SweepPlan::new(s))),
        other => Err(Error::Capability(format!(
            "the extension sweep needs a restriction-closed family, got {}",
            other.map_or("an unnamed semigroup".to_string(), |t| t.to_string())
        ))),
    }
}

/// The step operator `A_i`: `(A_i f)(s) = Σ f(t)` over one-pair
/// extensions `t` of `s` at domain point `position`.
pub fn extension_operator(s: &SemigroupStructure, position: usize, values: &[Complex64]) -> Result<Vec<Complex64>> {
    let plan = sweep_plan(s)?;
    if position == 0 || position > plan.positions() {
        return Err(Error::Domain(format!("no domain point {position}")));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); values.len()];
    for &(a, t) in plan.step(position) {
        out[a as usize] += values[t as usize];
    }
    Ok(out)
}

/// Zeta transform by the extension sweep.
pub fn zeta_sweep(s: &SemigroupStructure, f: &FunctionOnS, counter: &mut OpCounter) -> Result<FunctionOnS> {
    f.expect(Basis::Semigroup, s.size())?;
    let plan = sweep_plan(s)?;
    let mut v = f.values.clone();
    for i in 1..=plan.positions() {
        let step = plan.step(i);
        for &(a, t) in step {
            v[a as usize] = v[a as usize] + v[t as usize];
        }
        counter.add(step.len() as u64);
    }
    Ok(FunctionOnS::new(Basis::Groupoid, v))
}

/// Möbius transform by undoing the sweep steps in reverse order.
pub fn mobius_sweep(s: &SemigroupStructure, g: &FunctionOnS, counter: &mut OpCounter) -> Result<FunctionOnS> {
    g.expect(Basis::Groupoid, s.size())?;
    let plan = sweep_plan(s)?;
    let mut v = g.values.clone();
    for i in (1..=plan.positions()).rev() {
        let step = plan.step(i);
        for &(a, t) in step {
            v[a as usize] = v[a as usize] - v[t as usize];
        }
        counter.add(step.len() as u64);
    }
    Ok(FunctionOnS::new(Basis::Semigroup, v))
}

fn check_cube(values: &[Complex64], n: usize) -> Result<()> {
    if n >= usize::BITS as usize || values.len() != 1usize << n {
        return Err(Error::Contract(format!(
            "boolean transform on B_{n} needs 2^{n} values, got {}",
            values.len()
        )));
    }
    Ok(())
}

/// Superset sums in place: `f(A) ← Σ_{B ⊇ A} f(B)`, index = bitmask.
pub fn zeta_boolean(values: &mut [Complex64], n: usize, counter: &mut OpCounter) -> Result<()> {
    check_cube(values, n)?;
    for b in 0..n {
        let bit = 1usize << b;
        for m in 0..values.len() {
            if m & bit == 0 {
                values[m] += values[m | bit];
            }
        }
        counter.add((values.len() / 2) as u64);
    }
    Ok(())
}

/// Inverse of [`zeta_boolean`].
pub fn mobius_boolean(values: &mut [Complex64], n: usize, counter: &mut OpCounter) -> Result<()> {
    check_cube(values, n)?;
    for b in 0..n {
        let bit = 1usize << b;
        for m in 0..values.len() {
            if m & bit == 0 {
                values[m] -= values[m | bit];
            }
        }
        counter.add((values.len() / 2) as u64);
    }
    Ok(())
}

/// `ideals[i][mask]` = id of `r^i` restricted to `mask`.
fn rotation_ideals(s: &SemigroupStructure) -> Result<Vec<Vec<usize>>> {
    if family_tag(s) != Some(FamilyTag::Rotation) {
        return Err(Error::Capability("rotation transforms need a rotation family".into()));
    }
    let n = s.ambient_size();
    let full = crate::element::PartialMapElement::identity(n);
    (0..n)
        .map(|i| {
            let pairs: Vec<Pair> = (1..=n).map(|x| Pair::new(x, (x - 1 + i) % n + 1)).collect();
            let r_i = crate::element::PartialMapElement::new(n, pairs)?;
            debug_assert_eq!(r_i.rank(), full.rank());
            Ok((0u64..(1u64 << n))
                .map(|m| s.id_of(&r_i.restrict_mask(m)).expect("closed"))
                .collect())
        })
        .collect()
}

fn rotation_transform(
    s: &SemigroupStructure,
    input: &[Complex64],
    counter: &mut OpCounter,
    inverse: bool,
) -> Result<Vec<Complex64>> {
    let n = s.ambient_size() as usize;
    let ideals = rotation_ideals(s)?;
    let per_ideal: Vec<(Vec<Complex64>, OpCounter)> = ideals
        .par_iter()
        .map(|ids| {
            let mut buf: Vec<Complex64> = ids.iter().map(|&id| input[id]).collect();
            let mut c = OpCounter::new();
            if inverse {
                mobius_boolean(&mut buf, n, &mut c).expect("sized");
            } else {
                zeta_boolean(&mut buf, n, &mut c).expect("sized");
            }
            (buf, c)
        })
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); input.len()];
    let bottom = ideals[0][0];
    // (1 - n) f(σ) + Σ_i f_i(σ) at the empty map
    let mut acc = input[bottom] * (1.0 - n as f64);
    counter.mul(1);
    for (ids, (buf, c)) in ideals.iter().zip(per_ideal) {
        counter.merge(c);
        for (m, &id) in ids.iter().enumerate().skip(1) {
            out[id] = buf[m];
        }
        acc += buf[0];
        counter.add(1);
    }
    out[bottom] = acc;
    Ok(out)
}

/// Zeta transform on `Rot_n` via per-ideal boolean transforms.
pub fn zeta_rotation(s: &SemigroupStructure, f: &FunctionOnS, counter: &mut OpCounter) -> Result<FunctionOnS> {
    f.expect(Basis::Semigroup, s.size())?;
    let v = rotation_transform(s, &f.values, counter, false)?;
    Ok(FunctionOnS::new(Basis::Groupoid, v))
}

/// Möbius transform on `Rot_n` via per-ideal boolean transforms.
pub fn mobius_rotation(s: &SemigroupStructure, g: &FunctionOnS, counter: &mut OpCounter) -> Result<FunctionOnS> {
    g.expect(Basis::Groupoid, s.size())?;
    let v = rotation_transform(s, &g.values, counter, true)?;
    Ok(FunctionOnS::new(Basis::Semigroup, v))
}

/// Suffix sums over a chain listed bottom to top; `len - 1` additions.
pub fn zeta_chain_values(values: &mut [Complex64], counter: &mut OpCounter) {
    for i in (0..values.len().saturating_sub(1)).rev() {
        values[i] += values[i + 1];
        counter.add(1);
    }
}

/// Adjacent differences over a chain listed bottom to top.
pub fn mobius_chain_values(values: &mut [Complex64], counter: &mut OpCounter) {
    for i in 0..values.len().saturating_sub(1) {
        values[i] -= values[i + 1];
        counter.add(1);
    }
}

fn check_chain(s: &SemigroupStructure) -> Result<()> {
    if family_tag(s) != Some(FamilyTag::Chain) {
        return Err(Error::Capability("chain transforms need a chain family".into()));
    }
    Ok(())
}

pub fn zeta_chain(s: &SemigroupStructure, f: &FunctionOnS, counter: &mut OpCounter) -> Result<FunctionOnS> {
    check_chain(s)?;
    f.expect(Basis::Semigroup, s.size())?;
    let mut v = f.values.clone();
    zeta_chain_values(&mut v, counter);
    Ok(FunctionOnS::new(Basis::Groupoid, v))
}

pub fn mobius_chain(s: &SemigroupStructure, g: &FunctionOnS, counter: &mut OpCounter) -> Result<FunctionOnS> {
    check_chain(s)?;
    g.expect(Basis::Groupoid, s.size())?;
    let mut v = g.values.clone();
    mobius_chain_values(&mut v, counter);
    Ok(FunctionOnS::new(Basis::Semigroup, v))
}

/// Fastest available zeta transform for the structure; the quadratic
/// oracle for semigroups outside the built-in families.
pub fn fast_zeta(s: &SemigroupStructure, f: &FunctionOnS, counter: &mut OpCounter) -> Result<FunctionOnS> {
    match family_tag(s) {
        Some(t) if t.is_restriction_closed() => zeta_sweep(s, f, counter),
        Some(FamilyTag::Rotation) => zeta_rotation(s, f, counter),
        Some(FamilyTag::Chain) => zeta_chain(s, f, counter),
        _ => zeta_naive(s, f),
    }
}

/// Fastest available Möbius transform for the structure.
pub fn fast_mobius(s: &SemigroupStructure, g: &FunctionOnS, counter: &mut OpCounter) -> Result<FunctionOnS> {
    match family_tag(s) {
        Some(t) if t.is_restriction_closed() => mobius_sweep(s, g, counter),
        Some(FamilyTag::Rotation) => mobius_rotation(s, g, counter),
        Some(FamilyTag::Chain) => mobius_chain(s, g, counter),
        _ => mobius_naive(s, g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sweep_on_r2_examples() {
        let r2 = build(&FamilySpec::new(FamilyTag::Rook, 2)).unwrap();
        let mut ops = OpCounter::new();
        let d = FunctionOnS::delta(Basis::Semigroup, 7, 0);
        assert_eq!(zeta_sweep(&r2, &d, &mut ops).unwrap().values, d.values);

        let ones = FunctionOnS::new(Basis::Semigroup, vec![c(1.0); 7]);
        let g = zeta_sweep(&r2, &ones, &mut ops).unwrap();
        for id in 0..7 {
            let expect = match r2.rank(id) {
                0 => 7.0,
                1 => 2.0,
                _ => 1.0,
            };
            assert_eq!(g.values[id], c(expect));
        }
        let back = mobius_sweep(&r2, &g, &mut ops).unwrap();
        assert_eq!(back.values, ones.values);

        let dg = FunctionOnS::delta(Basis::Groupoid, 7, 0);
        assert_eq!(mobius_sweep(&r2, &dg, &mut ops).unwrap().values, dg.values);
    }

    #[test]
    fn sweep_refuses_unsupported_families() {
        let rot = build(&FamilySpec::new(FamilyTag::Rotation, 3)).unwrap();
        let f = FunctionOnS::zeros(Basis::Semigroup, rot.size());
        assert!(matches!(
            zeta_sweep(&rot, &f, &mut OpCounter::new()),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn boolean_examples() {
        let (a, b) = (Complex64::new(2.0, 1.0), Complex64::new(-3.0, 0.5));
        let mut v = vec![a, b];
        let mut ops = OpCounter::new();
        zeta_boolean(&mut v, 1, &mut ops).unwrap();
        assert_eq!(v, vec![a + b, b]);

        let mut v = vec![c(1.0); 4];
        zeta_boolean(&mut v, 2, &mut ops).unwrap();
        assert_eq!(v, vec![c(4.0), c(2.0), c(2.0), c(1.0)]);
        mobius_boolean(&mut v, 2, &mut ops).unwrap();
        assert_eq!(v, vec![c(1.0); 4]);

        assert!(zeta_boolean(&mut [c(0.0); 3], 2, &mut ops).is_err());
    }

    #[test]
    fn rotation_examples() {
        let rot1 = build(&FamilySpec::new(FamilyTag::Rotation, 1)).unwrap();
        let (a, b) = (c(5.0), c(-2.0));
        let f = FunctionOnS::new(Basis::Semigroup, vec![a, b]);
        let z = zeta_rotation(&rot1, &f, &mut OpCounter::new()).unwrap();
        assert_eq!(z.values, vec![a + b, b]);

        let rot3 = build(&FamilySpec::new(FamilyTag::Rotation, 3)).unwrap();
        let d = FunctionOnS::delta(Basis::Semigroup, rot3.size(), 0);
        let z = zeta_rotation(&rot3, &d, &mut OpCounter::new()).unwrap();
        assert_eq!(z.values, d.values);
    }

    #[test]
    fn chain_examples() {
        let ch = build(&FamilySpec::new(FamilyTag::Chain, 3)).unwrap();
        let mut ops = OpCounter::new();
        let f = FunctionOnS::new(Basis::Semigroup, vec![c(1.0); 3]);
        let z = zeta_chain(&ch, &f, &mut ops).unwrap();
        assert_eq!(z.values, vec![c(3.0), c(2.0), c(1.0)]);
        assert_eq!(ops.additions, 2);
        let back = mobius_chain(&ch, &z, &mut ops).unwrap();
        assert_eq!(back.values, f.values);
        assert_eq!(ops.additions, 4);
        let top = FunctionOnS::delta(Basis::Semigroup, 3, 2);
        assert_eq!(zeta_chain(&ch, &top, &mut ops).unwrap().values, vec![c(1.0); 3]);
    }

    #[test]
    fn counters() {
        let mut a = OpCounter::new();
        a.add(3);
        a.mul(5);
        let mut b = OpCounter::new();
        b.add(4);
        b.merge(a);
        assert_eq!(
            b,
            OpCounter {
                additions: 7,
                multiplications: 5
            }
        );
        assert_eq!(b.operations(), 7);
    }
}
