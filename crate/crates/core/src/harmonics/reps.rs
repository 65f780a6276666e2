use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{CMatrix, GroupRepSet, Rep};
use crate::error::{Error, Result};
use crate::group::{cyclic_group, permutations, symmetric_group_capped, wreath_group, GroupTable, DEFAULT_GROUP_CAP};
use crate::structure::{DClass, SubgroupKind};

/// Largest `k` for which Young representations of `S_k` are built.
pub const SYMMETRIC_CAP: usize = 7;

/// Partitions of `k` in decreasing lexicographic order.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Standard Young tableaux of `shape`, each as the row of every letter
/// `0..k`. Ordered lexicographically by that row word.
pub fn standard_tableaux(shape: &[usize]) -> Vec<Vec<usize>> {
    fn rec(shape: &[usize], fill: &mut Vec<usize>, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k: usize = shape.iter().sum();
        if word.len() == k {
            out.push(word.clone());
            return;
        }
        for row in 0..shape.len() {
            let ok = fill[row] < shape[row] && (row == 0 || fill[row - 1] > fill[row]);
            if ok {
                fill[row] += 1;
                word.push(row);
                rec(shape, fill, word, out);
                word.pop();
                fill[row] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(shape, &mut vec![0; shape.len()], &mut Vec::new(), &mut out);
    out
}

/// Lexicographic rank of a permutation of `0..k`.
fn perm_rank(w: &[usize]) -> usize {
    let k = w.len();
    let mut rank = 0;
    for i in 0..k {
        let smaller = w[i + 1..].iter().filter(|&&x| x < w[i]).count();
        rank = rank * (k - i) + smaller;
    }
    rank
}

fn inversions(w: &[usize]) -> usize {
    (0..w.len())
        .map(|i| (i + 1..w.len()).filter(|&j| w[j] < w[i]).count())
        .sum()
}

/// Column of a simple transposition: diagonal entry and the optional
/// off-diagonal `(other row, value)`.
type SparseColumn = (f64, Option<(usize, f64)>);

/// Young's orthogonal form of the irreducible rep of `S_k` for `shape`,
/// one matrix per permutation in lexicographic order.
pub fn young_orthogonal(shape: &[usize]) -> Vec<DMatrix<f64>> {
    let k: usize = shape.iter().sum();
    let tableaux = standard_tableaux(shape);
    let d = tableaux.len();
    let index: HashMap<&[usize], usize> = tableaux.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    // content (col - row) of each letter in each tableau
    let contents: Vec<Vec<i64>> = tableaux
        .iter()
        .map(|t| {
            let mut fill = vec![0i64; shape.len()];
            t.iter()
                .map(|&row| {
                    let c = fill[row] - row as i64;
                    fill[row] += 1;
                    c
                })
                .collect()
        })
        .collect();
    let generators: Vec<Vec<SparseColumn>> = (0..k.saturating_sub(1))
        .map(|p| {
            (0..d)
                .map(|col| {
                    let r = (contents[col][p + 1] - contents[col][p]) as f64;
                    let mut swapped = tableaux[col].clone();
                    swapped.swap(p, p + 1);
                    let other = index.get(swapped.as_slice()).copied().filter(|&o| o != col);
                    (1.0 / r, other.map(|o| (o, (1.0 - 1.0 / (r * r)).sqrt())))
                })
                .collect()
        })
        .collect();

    let mut perms = permutations(k);
    perms.sort_by_key(|w| inversions(w));
    let mut mats: Vec<Option<DMatrix<f64>>> = vec![None; perms.len()];
    for w in perms {
        let rank = perm_rank(&w);
        let Some(p) = (0..k.saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            mats[rank] = Some(DMatrix::identity(d, d));
            continue;
        };
        // w = w' ∘ s_p with w' one inversion shorter
        let mut shorter = w.clone();
        shorter.swap(p, p + 1);
        let prev = mats[perm_rank(&shorter)].as_ref().expect("shorter word first");
        let mut m = DMatrix::zeros(d, d);
        for (col, &(diag, off)) in generators[p].iter().enumerate() {
            let mut target = m.column_mut(col);
            target.axpy(diag, &prev.column(col), 0.0);
            if let Some((o, v)) = off {
                target.axpy(v, &prev.column(o), 1.0);
            }
        }
        mats[rank] = Some(m);
    }
    mats.into_iter().map(|m| m.expect("all permutations reached")).collect()
}

fn shape_label(shape: &[usize]) -> String {
    let parts: Vec<String> = shape.iter().map(|p| p.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Each group element as a permutation of the positions of the identity's
/// domain, together with the label carried at each position.
fn positional(table: &GroupTable) -> Vec<(Vec<usize>, Vec<usize>)> {
    let id = table.element(table.identity());
    let dom: Vec<u32> = id.domain().collect();
    let mut pos = vec![usize::MAX; id.ambient_size() as usize + 1];
    for (i, &x) in dom.iter().enumerate() {
        pos[x as usize] = i;
    }
    table
        .elements()
        .iter()
        .map(|e| {
            dom.iter()
                .map(|&x| {
                    let (y, label) = e.apply(x).expect("group element is a bijection of its domain");
                    (pos[y as usize], label as usize)
                })
                .unzip()
        })
        .collect()
}

pub fn trivial_reps_for(table: Arc<GroupTable>) -> Result<GroupRepSet> {
    if table.order() != 1 {
        return Err(Error::Contract(format!(
            "trivial rep set for a group of order {}",
            table.order()
        )));
    }
    let rep = Rep {
        label: "trivial".into(),
        dim: 1,
        matrices: vec![CMatrix::identity(1, 1)],
    };
    Ok(GroupRepSet::new(table, vec![rep])?.with_powers(vec![0]))
}

/// Characters `χ_j(g^t) = exp(2πi jt/k)` of a cyclic group with the
/// given generator.
pub fn cyclic_reps_for(table: Arc<GroupTable>, generator: usize) -> Result<GroupRepSet> {
    let k = table.order();
    let mut powers = Vec::with_capacity(k);
    let mut exponent = vec![usize::MAX; k];
    let mut x = table.identity();
    for t in 0..k {
        if exponent[x] != usize::MAX {
            return Err(Error::Structural(format!(
                "element {generator} does not generate the group"
            )));
        }
        exponent[x] = t;
        powers.push(x);
        x = table.mul(x, generator);
    }
    let reps = (0..k)
        .map(|j| Rep {
            label: format!("chi{j}"),
            dim: 1,
            matrices: exponent
                .iter()
                .map(|&t| {
                    let a = 2.0 * PI * ((j * t) % k) as f64 / k as f64;
                    CMatrix::from_element(1, 1, Complex64::from_polar(1.0, a))
                })
                .collect(),
        })
        .collect();
    Ok(GroupRepSet::new(table, reps)?.with_powers(powers))
}

pub fn irreps_cyclic(k: usize) -> Result<GroupRepSet> {
    let table = Arc::new(cyclic_group(k)?);
    let generator = if k > 1 { 1 } else { 0 };
    cyclic_reps_for(table, generator)
}

/// Linear characters of any abelian group.
pub fn abelian_reps_for(table: Arc<GroupTable>) -> Result<GroupRepSet> {
    let chars = table.abelian_characters()?;
    let reps = chars
        .into_iter()
        .enumerate()
        .map(|(j, values)| Rep {
            label: format!("chi{j}"),
            dim: 1,
            matrices: values.into_iter().map(|v| CMatrix::from_element(1, 1, v)).collect(),
        })
        .collect();
    GroupRepSet::new(table, reps)
}

/// Young orthogonal representations of a group of all permutations of a
/// point set.
pub fn symmetric_reps_for(table: Arc<GroupTable>, cap: usize) -> Result<GroupRepSet> {
    let k = table.element(table.identity()).rank();
    if k > cap {
        return Err(Error::Capability(format!(
            "symmetric group representations are built up to k = {cap}, got {k}"
        )));
    }
    if table.order() as u128 != (1..=k as u128).product::<u128>() {
        return Err(Error::Contract(
            "group is not the full symmetric group of its domain".into(),
        ));
    }
    let ranks: Vec<usize> = positional(&table).iter().map(|(w, _)| perm_rank(w)).collect();
    let reps = partitions(k)
        .into_iter()
        .map(|shape| {
            let mats = young_orthogonal(&shape);
            Rep {
                label: shape_label(&shape),
                dim: mats[0].nrows(),
                matrices: ranks.iter().map(|&r| to_complex(&mats[r])).collect(),
            }
        })
        .collect();
    GroupRepSet::new(table, reps)
}

pub fn irreps_symmetric(k: usize) -> Result<GroupRepSet> {
    irreps_symmetric_capped(k, SYMMETRIC_CAP)
}

pub fn irreps_symmetric_capped(k: usize, cap: usize) -> Result<GroupRepSet> {
    if k > cap {
        return Err(Error::Capability(format!(
            "symmetric group representations are built up to k = {cap}, got {k}"
        )));
    }
    let table = Arc::new(symmetric_group_capped(k, DEFAULT_GROUP_CAP)?);
    symmetric_reps_for(table, cap)
}

/// Compositions of `k` into `h` parts, first part largest first.
fn compositions(k: usize, h: usize) -> Vec<Vec<usize>> {
    if h == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in compositions(k - first, h - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Irreducible representations of `G ≀ S_k` for abelian `G`, one per
/// `h`-tuple of partitions, by induction from block stabilizers.
pub fn wreath_reps_for(table: Arc<GroupTable>, cap: usize) -> Result<GroupRepSet> {
    let labels = table
        .label_group()
        .cloned()
        .ok_or_else(|| Error::Contract("wreath group without a label group".into()))?;
    let chars = labels.abelian_characters()?;
    let h = chars.len();
    let k = table.element(table.identity()).rank();
    if k > cap {
        return Err(Error::Capability(format!(
            "symmetric group representations are built up to k = {cap}, got {k}"
        )));
    }
    let expected = (1..=k as u128).product::<u128>() * (h as u128).pow(k as u32);
    if table.order() as u128 != expected {
        return Err(Error::Contract(
            "group is not the full wreath product of its domain".into(),
        ));
    }
    let elems = positional(&table);
    let mut young_cache: HashMap<Vec<usize>, Vec<DMatrix<f64>>> = HashMap::new();
    let mut reps = Vec::new();

    for sizes in compositions(k, h) {
        let mut tuples: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for &m in &sizes {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    partitions(m).into_iter().map(move |p| {
                        let mut t = t.clone();
                        t.push(p);
                        t
                    })
                })
                .collect();
        }
        let mut block_of = Vec::with_capacity(k);
        let mut offsets = Vec::with_capacity(h);
        for (c, &m) in sizes.iter().enumerate() {
            offsets.push(block_of.len());
            block_of.extend(std::iter::repeat_n(c, m));
        }
        let coset_key = |w: &[usize]| -> Vec<usize> {
            let mut key = vec![0; k];
            for p in 0..k {
                key[w[p]] = block_of[p];
            }
            key
        };
        let mut transversal = Vec::new();
        let mut coset_index: HashMap<Vec<usize>, usize> = HashMap::new();
        for (x, (w, _)) in elems.iter().enumerate() {
            let key = coset_key(w);
            if let std::collections::hash_map::Entry::Vacant(e) = coset_index.entry(key) {
                e.insert(transversal.len());
                transversal.push(x);
            }
        }
        let m = transversal.len();

        for shapes in tuples {
            for shape in &shapes {
                young_cache
                    .entry(shape.clone())
                    .or_insert_with(|| young_orthogonal(shape));
            }
            let sigma = |x: usize| -> CMatrix {
                let (w, g) = &elems[x];
                let scalar: Complex64 = (0..k).map(|p| chars[block_of[p]][g[p]]).product();
                let mut acc = DMatrix::<f64>::identity(1, 1);
                for (c, shape) in shapes.iter().enumerate() {
                    let local: Vec<usize> = (0..sizes[c]).map(|i| w[offsets[c] + i] - offsets[c]).collect();
                    let mats = &young_cache[shape];
                    acc = acc.kronecker(&mats[perm_rank(&local)]);
                }
                to_complex(&acc) * scalar
            };
            let ds = shapes.iter().map(|s| standard_tableaux(s).len()).product::<usize>();
            let dim = m * ds;
            let mut sigma_cache: HashMap<usize, CMatrix> = HashMap::new();
            let mut matrices = Vec::with_capacity(elems.len());
            for x in 0..elems.len() {
                let mut big = CMatrix::zeros(dim, dim);
                for (j, &tj) in transversal.iter().enumerate() {
                    let y = table.mul(x, tj);
                    let i = coset_index[&coset_key(&elems[y].0)];
                    let inner = table.mul(table.inverse(transversal[i]), y);
                    let block = sigma_cache.entry(inner).or_insert_with(|| sigma(inner));
                    big.view_mut((i * ds, j * ds), (ds, ds)).copy_from(block);
                }
                matrices.push(big);
            }
            let label = shapes.iter().map(|s| shape_label(s)).collect::<Vec<_>>().join("|");
            reps.push(Rep { label, dim, matrices });
        }
    }
    GroupRepSet::new(table, reps)
}

pub fn irreps_wreath_abelian(labels: Arc<GroupTable>, k: usize) -> Result<GroupRepSet> {
    if !labels.is_abelian() {
        return Err(Error::Capability(
            "built-in wreath representations need an abelian label group".into(),
        ));
    }
    if k > SYMMETRIC_CAP {
        return Err(Error::Capability(format!(
            "symmetric group representations are built up to k = {SYMMETRIC_CAP}, got {k}"
        )));
    }
    let table = Arc::new(wreath_group(labels, k)?);
    wreath_reps_for(table, SYMMETRIC_CAP)
}

/// Built-in irreducible representations of a D-class's maximal subgroup.
pub fn irreps_for_class(class: &DClass) -> Result<GroupRepSet> {
    let table = class.subgroup().clone();
    match class.subgroup_kind() {
        SubgroupKind::Trivial => trivial_reps_for(table),
        SubgroupKind::Cyclic { generator } => cyclic_reps_for(table, generator),
        SubgroupKind::Symmetric => symmetric_reps_for(table, SYMMETRIC_CAP),
        SubgroupKind::Wreath => wreath_reps_for(table, SYMMETRIC_CAP),
        SubgroupKind::Unknown if table.order() == 1 => trivial_reps_for(table),
        SubgroupKind::Unknown => abelian_reps_for(table),
    }
}
