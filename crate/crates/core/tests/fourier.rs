use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use invsemi::fourier::{
    convolve_fft, convolve_naive, invert_equivalent_reps, invert_groupoid_local, invert_semigroup_basis,
    invert_uniform, relative_error, ConjugatedRepSet,
};
use invsemi::harmonics::{group_ft, group_ift, CMatrix};
use invsemi::structure::zeta_naive;
use invsemi::{
    build, fft, ifft, naive_ft, Basis, FamilySpec, FamilyTag, FunctionOnS, InducedRepSet, SemigroupStructure,
};

fn setup(fs: &FamilySpec) -> (SemigroupStructure, InducedRepSet) {
    let s = build(fs).unwrap();
    let y = InducedRepSet::builtin(&s).unwrap();
    (s, y)
}

#[test]
fn induced_reps_are_homomorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for fs in [
        FamilySpec::new(FamilyTag::Rook, 3),
        FamilySpec::new(FamilyTag::CyclicShift, 3),
        FamilySpec::new(FamilyTag::Rotation, 4),
        FamilySpec::new(FamilyTag::Chain, 4),
        FamilySpec::wreath(2, "Z2"),
    ] {
        let (s, y) = setup(&fs);
        assert!(y.homomorphism_error(&s, 500, &mut rng) <= 1e-9, "{fs}");
    }
}

#[test]
fn planar_dimensions_are_binomials() {
    for n in 0..=6 {
        let (s, y) = setup(&FamilySpec::new(FamilyTag::PlanarRook, n));
        let binom = |k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
        let dims: Vec<usize> = y.reps().iter().map(|r| r.dim()).collect();
        assert_eq!(dims, (0..=n).map(binom).collect::<Vec<_>>());
        assert_eq!(y.dimension_square_sum(), s.size());
    }
}

#[test]
fn wedderburn_map_is_invertible() {
    for fs in [
        FamilySpec::new(FamilyTag::Rook, 3),
        FamilySpec::new(FamilyTag::Rook, 4),
        FamilySpec::new(FamilyTag::PlanarRook, 4),
        FamilySpec::new(FamilyTag::CyclicShift, 4),
        FamilySpec::new(FamilyTag::Rotation, 5),
        FamilySpec::new(FamilyTag::Chain, 5),
        FamilySpec::wreath(2, "Z2"),
    ] {
        let (s, y) = setup(&fs);
        let n = s.size();
        assert!(n <= 250);
        let mut m = CMatrix::zeros(n, n);
        for x in 0..n {
            let spec = naive_ft(&s, &FunctionOnS::delta(Basis::Semigroup, n, x), &y).unwrap();
            let column: Vec<Complex64> = spec.blocks.iter().flat_map(|b| b.iter().copied()).collect();
            for (r, v) in column.into_iter().enumerate() {
                m[(r, x)] = v;
            }
        }
        let sv = m.svd(false, false).singular_values;
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = sv.iter().cloned().fold(0.0, f64::max);
        assert!(min > 1e-9 * max, "{fs}: condition number {}", max / min);
    }
}

#[test]
fn fft_matches_naive_and_inverts() {
    for (i, fs) in [
        FamilySpec::new(FamilyTag::Rook, 4),
        FamilySpec::new(FamilyTag::CyclicShift, 5),
        FamilySpec::new(FamilyTag::Chain, 6),
        FamilySpec::wreath(2, "Z3"),
        FamilySpec::wreath(2, "Z4"),
    ]
    .iter()
    .enumerate()
    {
        let (s, y) = setup(fs);
        let mut rng = ChaCha8Rng::seed_from_u64(22 + i as u64);
        for _ in 0..10 {
            let f = FunctionOnS::random(Basis::Semigroup, s.size(), &mut rng);
            let c = fft(&s, &f, &y).unwrap();
            assert!(c.relative_error(&naive_ft(&s, &f, &y).unwrap()) <= 1e-9, "{fs}");
            assert!(
                relative_error(&ifft(&s, &c, &y).unwrap().values, &f.values) <= 1e-9,
                "{fs}"
            );
        }
    }
}

#[test]
fn rot5_spectra_round_trip() {
    let (s, y) = setup(&FamilySpec::new(FamilyTag::Rotation, 5));
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let f = FunctionOnS::random(Basis::Semigroup, s.size(), &mut rng);
        let c = fft(&s, &f, &y).unwrap();
        let again = fft(&s, &ifft(&s, &c, &y).unwrap(), &y).unwrap();
        assert!(again.relative_error(&c) <= 1e-9);
    }
}

#[test]
fn top_class_of_units_sees_group_reps() {
    let (s, y) = setup(&FamilySpec::new(FamilyTag::Rook, 3));
    let top = s.classes().len() - 1;
    let class = &s.classes()[top];
    for yloc in 0..class.subgroup().order() {
        let x = class.cell(0, 0, yloc);
        let c = fft(&s, &FunctionOnS::delta(Basis::Semigroup, s.size(), x), &y).unwrap();
        for i in y.class_range(top) {
            let rep = &y.class_set(top).reps()[y.reps()[i].rep];
            assert_eq!(c.blocks[i], rep.matrices[yloc]);
        }
    }
    let zero = naive_ft(&s, &FunctionOnS::zeros(Basis::Semigroup, s.size()), &y).unwrap();
    assert_eq!(zero.max_abs(), 0.0);
}

#[test]
fn convolution_units_and_deltas() {
    let (s, y) = setup(&FamilySpec::new(FamilyTag::Rook, 2));
    let id = s.parse_element("1>1;2>2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let g = FunctionOnS::random(Basis::Semigroup, s.size(), &mut rng);
    let unit = FunctionOnS::delta(Basis::Semigroup, s.size(), id);
    assert_eq!(convolve_naive(&s, &unit, &g).unwrap(), g);
    assert!(relative_error(&convolve_fft(&s, &y, &unit, &g).unwrap().values, &g.values) <= 1e-12);
    for a in 0..s.size() {
        for b in 0..s.size() {
            let da = FunctionOnS::delta(Basis::Semigroup, s.size(), a);
            let db = FunctionOnS::delta(Basis::Semigroup, s.size(), b);
            let expected = FunctionOnS::delta(Basis::Semigroup, s.size(), s.product(a, b));
            assert_eq!(convolve_naive(&s, &da, &db).unwrap(), expected);
            assert!(relative_error(&convolve_fft(&s, &y, &da, &db).unwrap().values, &expected.values) <= 1e-12);
        }
    }
}

#[test]
fn identity_conjugation_reduces_to_local_formula() {
    let (s, y) = setup(&FamilySpec::new(FamilyTag::Rook, 2));
    let x = ConjugatedRepSet::identity(&y);
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let f = FunctionOnS::random(Basis::Semigroup, s.size(), &mut rng);
    let c = fft(&s, &f, &y).unwrap();
    for id in 0..s.size() {
        let a = invert_groupoid_local(&s, &y, &c, id).unwrap();
        let b = invert_equivalent_reps(&s, &y, &x, &c, id).unwrap();
        assert!((a - b).norm() <= 1e-12);
    }
}

#[test]
fn random_conjugation_on_r2() {
    let (s, y) = setup(&FamilySpec::new(FamilyTag::Rook, 2));
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..20 {
        let f = FunctionOnS::random(Basis::Semigroup, s.size(), &mut rng);
        let c = fft(&s, &f, &y).unwrap();
        let x = ConjugatedRepSet::random(&y, 1e3, &mut rng).unwrap();
        let cx = x.conjugate_spectrum(&c);
        for id in 0..s.size() {
            let a = invert_groupoid_local(&s, &y, &c, id).unwrap();
            assert!((a - invert_equivalent_reps(&s, &y, &x, &cx, id).unwrap()).norm() <= 1e-8);
            assert!((a - invert_uniform(&s, &y, &x, &cx, id).unwrap()).norm() <= 1e-8);
        }
    }
}

#[test]
fn delta_recovery_in_semigroup_basis() {
    let (s, y) = setup(&FamilySpec::new(FamilyTag::Rook, 2));
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let x = ConjugatedRepSet::random(&y, 1e3, &mut rng).unwrap();
    for target in 0..s.size() {
        let c = x.conjugate_spectrum(&fft(&s, &FunctionOnS::delta(Basis::Semigroup, s.size(), target), &y).unwrap());
        for id in 0..s.size() {
            let v = invert_semigroup_basis(&s, &y, &x, &c, id).unwrap();
            let expected = if id == target { 1.0 } else { 0.0 };
            assert!((v - expected).norm() <= 1e-8);
        }
        let g = invert_uniform(&s, &y, &x, &c, target).unwrap();
        assert!((g - 1.0).norm() <= 1e-8);
    }
}

#[test]
fn formulas_on_top_of_rot3_and_c3() {
    for fs in [
        FamilySpec::new(FamilyTag::Rotation, 3),
        FamilySpec::new(FamilyTag::CyclicShift, 3),
    ] {
        let (s, y) = setup(&fs);
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        let x = ConjugatedRepSet::random(&y, 1e3, &mut rng).unwrap();
        for _ in 0..10 {
            let f = FunctionOnS::random(Basis::Semigroup, s.size(), &mut rng);
            let c = fft(&s, &f, &y).unwrap();
            let cx = x.conjugate_spectrum(&c);
            let inv = ifft(&s, &c, &y).unwrap();
            let g = zeta_naive(&s, &inv).unwrap();
            for id in 0..s.size() {
                assert!((invert_semigroup_basis(&s, &y, &x, &cx, id).unwrap() - inv.values[id]).norm() <= 1e-8);
                assert!((invert_groupoid_local(&s, &y, &c, id).unwrap() - g.values[id]).norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn formulas_degenerate_to_group_inversion_on_units() {
    let (s, y) = setup(&FamilySpec::new(FamilyTag::Rook, 3));
    let top = s.classes().len() - 1;
    let class = &s.classes()[top];
    let set = y.class_set(top);
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let x = ConjugatedRepSet::random(&y, 1e3, &mut rng).unwrap();
    for _ in 0..10 {
        let mut f = FunctionOnS::zeros(Basis::Semigroup, s.size());
        let local = FunctionOnS::random(Basis::Semigroup, class.subgroup().order(), &mut rng);
        for (yloc, v) in local.values.iter().enumerate() {
            f.values[class.cell(0, 0, yloc)] = *v;
        }
        let group_values = group_ift(&group_ft(&local.values, set).unwrap(), set).unwrap();
        let c = fft(&s, &f, &y).unwrap();
        let cx = x.conjugate_spectrum(&c);
        for (yloc, expected) in group_values.iter().enumerate() {
            let id = class.cell(0, 0, yloc);
            for v in [
                invert_groupoid_local(&s, &y, &c, id).unwrap(),
                invert_equivalent_reps(&s, &y, &x, &cx, id).unwrap(),
                invert_uniform(&s, &y, &x, &cx, id).unwrap(),
                invert_semigroup_basis(&s, &y, &x, &cx, id).unwrap(),
            ] {
                assert!((v - expected).norm() <= 1e-10);
            }
        }
    }
}

#[test]
fn contract_errors() {
    let (s, y) = setup(&FamilySpec::new(FamilyTag::Rook, 2));
    let (s3, y3) = setup(&FamilySpec::new(FamilyTag::Rook, 3));
    let f = FunctionOnS::zeros(Basis::Semigroup, s.size());
    assert!(fft(&s, &FunctionOnS::zeros(Basis::Groupoid, s.size()), &y).is_err());
    assert!(fft(&s, &f, &y3).is_err());
    let c3 = fft(&s3, &FunctionOnS::zeros(Basis::Semigroup, s3.size()), &y3).unwrap();
    assert!(ifft(&s, &c3, &y).is_err());
    assert!(convolve_naive(&s, &f, &FunctionOnS::zeros(Basis::Semigroup, 3)).is_err());
}

#[test]
fn threads_do_not_change_bits() {
    let (s, y) = setup(&FamilySpec::new(FamilyTag::Rook, 4));
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let f = FunctionOnS::random(Basis::Semigroup, s.size(), &mut rng);
    let many = fft(&s, &f, &y).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let one = pool.install(|| fft(&s, &f, &y).unwrap());
    assert_eq!(many, one);
}
