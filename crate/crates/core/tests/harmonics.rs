use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use invsemi::group::{cyclic_group, named_label_group};
use invsemi::harmonics::{
    cyclic_dft_naive, cyclic_ft_fast, cyclic_ift_fast, group_ft, group_ift, irreps_cyclic, irreps_symmetric,
    irreps_wreath_abelian, partitions, CMatrix, GroupRepSet, GroupSpectrum,
};
use invsemi::{Error, OpCounter};

fn random(len: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn max_abs(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn test_groups() -> Vec<GroupRepSet> {
    let z2 = Arc::new(cyclic_group(2).unwrap());
    let mut sets: Vec<GroupRepSet> = [1, 2, 3, 4, 7, 12, 16, 64]
        .iter()
        .map(|&k| irreps_cyclic(k).unwrap())
        .collect();
    sets.extend((1..=5).map(|k| irreps_symmetric(k).unwrap()));
    sets.extend((1..=3).map(|k| irreps_wreath_abelian(z2.clone(), k).unwrap()));
    sets
}

#[test]
fn inversion_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for set in test_groups() {
        for _ in 0..100 {
            let f = random(set.group().order(), &mut rng);
            let back = group_ift(&group_ft(&f, &set).unwrap(), &set).unwrap();
            assert!(max_abs(&back, &f) <= 1e-10);
        }
    }
    let z4 = irreps_cyclic(4).unwrap();
    for _ in 0..100 {
        let f = random(4, &mut rng);
        assert!(max_abs(&group_ift(&group_ft(&f, &z4).unwrap(), &z4).unwrap(), &f) <= 1e-12);
    }
}

#[test]
fn parseval() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for set in test_groups() {
        let n = set.group().order();
        let f = random(n, &mut rng);
        let spec = group_ft(&f, &set).unwrap();
        let lhs: f64 = spec
            .blocks
            .iter()
            .zip(set.reps())
            .map(|(b, r)| r.dim as f64 * b.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            / n as f64;
        let rhs: f64 = f.iter().map(|z| z.norm_sqr()).sum();
        assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1.0));
    }
}

#[test]
fn identity_spectrum_inverts_to_delta() {
    let set = irreps_symmetric(3).unwrap();
    let spec = GroupSpectrum {
        labels: set.reps().iter().map(|r| r.label.clone()).collect(),
        blocks: set.reps().iter().map(|r| CMatrix::identity(r.dim, r.dim)).collect(),
    };
    let f = group_ift(&spec, &set).unwrap();
    for (x, v) in f.iter().enumerate() {
        let expected = if x == set.group().identity() { 1.0 } else { 0.0 };
        assert!((v - expected).norm() < 1e-14);
    }
}

#[test]
fn rep_values_invert_to_delta() {
    let set = irreps_symmetric(3).unwrap();
    for g0 in 0..6 {
        let spec = GroupSpectrum {
            labels: set.reps().iter().map(|r| r.label.clone()).collect(),
            blocks: set.reps().iter().map(|r| r.matrices[g0].clone()).collect(),
        };
        let f = group_ift(&spec, &set).unwrap();
        for (x, v) in f.iter().enumerate() {
            let expected = if x == g0 { 1.0 } else { 0.0 };
            assert!((v - expected).norm() < 1e-13);
        }
    }
}

#[test]
fn s3_transform_matches_entrywise_sum() {
    let set = irreps_symmetric(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f = random(6, &mut rng);
    let spec = group_ft(&f, &set).unwrap();
    for (b, rep) in spec.blocks.iter().zip(set.reps()) {
        for i in 0..rep.dim {
            for j in 0..rep.dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for (x, fx) in f.iter().enumerate() {
                    acc += fx * rep.matrices[x][(i, j)];
                }
                assert!((acc - b[(i, j)]).norm() < 1e-13);
            }
        }
    }
}

#[test]
fn hook_length_dimensions() {
    fn hook(shape: &[usize]) -> usize {
        let k: usize = shape.iter().sum();
        let mut prod = 1;
        for (r, &len) in shape.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = shape[r + 1..].iter().filter(|&&l| l > c).count();
                prod *= arm + leg + 1;
            }
        }
        (1..=k).product::<usize>() / prod
    }
    for k in 1..=6 {
        let set = irreps_symmetric(k).unwrap();
        let expected: Vec<usize> = partitions(k).iter().map(|p| hook(p)).collect();
        assert_eq!(set.dims(), expected);
    }
}

#[test]
fn symmetric_matrices_are_orthogonal() {
    let set = irreps_symmetric(5).unwrap();
    for rep in set.reps() {
        for m in &rep.matrices {
            let err = (m * m.transpose() - CMatrix::identity(rep.dim, rep.dim))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(err <= 1e-12);
            assert!(m.iter().all(|z| z.im == 0.0));
        }
    }
}

#[test]
fn hyperoctahedral_b2() {
    // B_2 is dihedral of order 8: four linear characters and one of degree 2
    let z2 = Arc::new(cyclic_group(2).unwrap());
    let set = irreps_wreath_abelian(z2, 2).unwrap();
    assert_eq!(set.dims(), vec![1, 1, 2, 1, 1]);
    assert_eq!(set.dimension_square_sum(), 8);
    let z3 = named_label_group("Z3").unwrap();
    let set = irreps_wreath_abelian(z3, 2).unwrap();
    assert_eq!(set.dimension_square_sum(), 18);
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    set.validate(1e-9, &mut rng).unwrap();
}

#[test]
fn wreath_with_trivial_labels_is_symmetric() {
    let z1 = Arc::new(cyclic_group(1).unwrap());
    assert_eq!(
        irreps_wreath_abelian(z1, 3).unwrap().dims(),
        irreps_symmetric(3).unwrap().dims()
    );
}

#[test]
fn non_abelian_labels_are_a_capability_error() {
    let s3 = named_label_group("S3").unwrap();
    assert!(matches!(irreps_wreath_abelian(s3, 2), Err(Error::Capability(_))));
}

#[test]
fn fast_cyclic_agrees_with_group_transform() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for k in 1..=70 {
        let set = irreps_cyclic(k).unwrap();
        let f = random(k, &mut rng);
        let slow: Vec<Complex64> = group_ft(&f, &set).unwrap().blocks.iter().map(|b| b[(0, 0)]).collect();
        let fast = cyclic_ft_fast(&f, &mut OpCounter::new());
        let scale = slow.iter().map(|z| z.norm()).fold(1.0, f64::max);
        assert!(max_abs(&fast, &slow) <= 1e-9 * scale, "k = {k}");
        assert!(max_abs(&cyclic_ift_fast(&fast, &mut OpCounter::new()), &f) <= 1e-12);
    }
    let f = random(12, &mut rng);
    assert!(max_abs(&cyclic_ft_fast(&f, &mut OpCounter::new()), &cyclic_dft_naive(&f)) <= 1e-9);
}

#[test]
fn fast_cyclic_operation_constant() {
    let mut worst = 0.0f64;
    for k in 2..=1024usize {
        let mut ops = OpCounter::new();
        cyclic_ft_fast(&vec![Complex64::new(1.0, 0.0); k], &mut ops);
        let c = ops.operations() as f64 / (k as f64 * (k as f64).log2());
        worst = worst.max(c);
    }
    assert!(worst <= 20.0, "measured constant {worst}");
    let mut ops = OpCounter::new();
    cyclic_ft_fast(&[Complex64::new(3.0, 0.0)], &mut ops);
    assert_eq!(ops.operations(), 0);
}

#[test]
fn json_export_shape() {
    let set = irreps_symmetric(3).unwrap();
    let export = set.to_export();
    assert_eq!(export.group_order, 6);
    assert_eq!(export.reps[1].dim, 2);
    assert_eq!(export.reps[1].matrices.len(), 6);
    assert!(export.reps[1].matrices.iter().all(|m| m.len() == 4));
    let text = serde_json::to_string(&export).unwrap();
    let back: invsemi::harmonics::RepSetExport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, export);
}

#[test]
fn spectrum_shape_mismatch() {
    let set = irreps_symmetric(3).unwrap();
    let spec = GroupSpectrum {
        labels: vec![],
        blocks: vec![CMatrix::identity(1, 1)],
    };
    assert!(matches!(group_ift(&spec, &set), Err(Error::Contract(_))));
}
