//! Finite groups realized as full-rank labeled maps, with explicit tables.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::element::{inverse_of, multiply_unchecked, Pair, PartialMapElement};
use crate::error::{Error, Result};

/// Default cap on the order of groups built by the group builders.
pub const DEFAULT_GROUP_CAP: u128 = 5_000_000;

/// A finite group with a dense multiplication table.
///
/// Elements are labeled partial maps that are bijections of one common
/// point set; local indices `0..order` follow the canonical element order.
#[derive(Clone, Debug)]
pub struct GroupTable {
    elements: Vec<PartialMapElement>,
    index: HashMap<PartialMapElement, usize>,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Arc<GroupTable>>,
}

impl GroupTable {
    /// Builds the table of the group formed by `elements`, which must be
    /// closed under composition (with `labels` as the label group).
    pub fn from_elements(mut elements: Vec<PartialMapElement>, labels: Option<Arc<GroupTable>>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Structural("a group needs at least one element".into()));
        }
        elements.sort();
        elements.dedup();
        let index: HashMap<_, _> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let order = elements.len();
        let lg = labels.as_deref();
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                let ab = multiply_unchecked(a, b, lg);
                let id = *index
                    .get(&ab)
                    .ok_or_else(|| Error::Structural(format!("group not closed: {a} * {b} = {ab}")))?;
                table.push(id as u32);
            }
        }
        // the only idempotent of a group is its identity
        let identity = (0..order)
            .find(|&e| table[e * order + e] as usize == e)
            .filter(|&e| (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x))
            .ok_or_else(|| Error::Structural("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for (x, slot) in inverse.iter_mut().enumerate() {
            let inv = index
                .get(&inverse_of(&elements[x], lg))
                .copied()
                .ok_or_else(|| Error::Structural("group not closed under inverse".into()))?;
            if table[x * order + inv] as usize != identity {
                return Err(Error::Structural(format!(
                    "element {} is not invertible in the group",
                    elements[x]
                )));
            }
            *slot = inv;
        }
        Ok(GroupTable {
            elements,
            index,
            table,
            identity,
            inverse,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[PartialMapElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartialMapElement {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &PartialMapElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Label group used when composing this group's elements.
    pub fn label_group(&self) -> Option<&Arc<GroupTable>> {
        self.labels.as_ref()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order of element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Exhaustive associativity check, `O(order³)`.
    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    /// All linear characters of an abelian group, as value tables indexed
    /// by local element index. The trivial character comes first.
    pub fn abelian_characters(&self) -> Result<Vec<Vec<Complex64>>> {
        if !self.is_abelian() {
            return Err(Error::Capability("characters are only built for abelian groups".into()));
        }
        let n = self.order();
        // greedy generating set
        let mut gens = Vec::new();
        let mut reached = vec![false; n];
        reached[self.identity] = true;
        let close = |reached: &mut Vec<bool>, gens: &[usize]| {
            let mut frontier: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(x) = frontier.pop() {
                for &g in gens {
                    let y = self.mul(x, g);
                    if !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                    }
                }
            }
        };
        while let Some(g) = (0..n).find(|&x| !reached[x]) {
            gens.push(g);
            close(&mut reached, &gens);
        }
        let exponent = (0..n).fold(1usize, |acc, x| lcm(acc, self.element_order(x)));
        let mut chars = Vec::new();
        let total = exponent.checked_pow(gens.len() as u32).unwrap_or(usize::MAX);
        if total > 1 << 24 {
            return Err(Error::Capability("label group too large for character search".into()));
        }
        for code in 0..total {
            let mut c = code;
            let assign: Vec<usize> = gens
                .iter()
                .map(|_| {
                    let a = c % exponent;
                    c /= exponent;
                    a
                })
                .collect();
            if let Some(exps) = self.extend_character(&gens, &assign, exponent) {
                chars.push(exps);
            }
        }
        chars.sort();
        if chars.len() != n {
            return Err(Error::Structural(format!(
                "found {} characters for an abelian group of order {}",
                chars.len(),
                n
            )));
        }
        Ok(chars
            .into_iter()
            .map(|exps| {
                exps.into_iter()
                    .map(|a| Complex64::from_polar(1.0, 2.0 * PI * a as f64 / exponent as f64))
                    .collect()
            })
            .collect())
    }

    /// Extends generator exponents to a character (exponents mod `e`),
    /// or `None` when the assignment is inconsistent.
    fn extend_character(&self, gens: &[usize], assign: &[usize], e: usize) -> Option<Vec<usize>> {
        let n = self.order();
        let mut val = vec![usize::MAX; n];
        val[self.identity] = 0;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for (&g, &a) in gens.iter().zip(assign) {
                let y = self.mul(x, g);
                let v = (val[x] + a) % e;
                if val[y] == usize::MAX {
                    val[y] = v;
                    stack.push(y);
                } else if val[y] != v {
                    return None;
                }
            }
        }
        Some(val)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

fn cap_check(what: &str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        return Err(Error::SizeCap {
            what: what.to_string(),
            size,
            cap,
        });
    }
    Ok(())
}

/// The rotation group `Z_k` of `{1, …, k}`; local index `t` is the shift
/// `x ↦ x + t (mod k)`.
pub fn cyclic_group(k: usize) -> Result<GroupTable> {
    if k == 0 {
        return Err(Error::Domain("cyclic group needs k >= 1".into()));
    }
    cap_check("cyclic group", k as u128, DEFAULT_GROUP_CAP)?;
    let n = k as u32;
    let elements = (0..n)
        .map(|t| {
            PartialMapElement::from_sorted_unchecked(n, (1..=n).map(|x| Pair::new(x, (x - 1 + t) % n + 1)).collect())
        })
        .collect();
    GroupTable::from_elements(elements, None)
}

/// All permutations of `{0, …, k-1}` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in 0..k {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                rec(k, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// The symmetric group `S_k` acting on `{1, …, k}`.
pub fn symmetric_group(k: usize) -> Result<GroupTable> {
    symmetric_group_capped(k, DEFAULT_GROUP_CAP)
}

pub fn symmetric_group_capped(k: usize, cap: u128) -> Result<GroupTable> {
    cap_check("symmetric group", factorial(k), cap)?;
    let n = k as u32;
    let elements = permutations(k)
        .into_iter()
        .map(|w| {
            PartialMapElement::from_sorted_unchecked(
                n,
                w.iter()
                    .enumerate()
                    .map(|(i, &j)| Pair::new(i as u32 + 1, j as u32 + 1))
                    .collect(),
            )
        })
        .collect();
    GroupTable::from_elements(elements, None)
}

/// The wreath product `G ≀ S_k`: bijections of `{1, …, k}` carrying a
/// label from `labels` on every edge.
pub fn wreath_group(labels: Arc<GroupTable>, k: usize) -> Result<GroupTable> {
    wreath_group_capped(labels, k, DEFAULT_GROUP_CAP)
}

pub fn wreath_group_capped(labels: Arc<GroupTable>, k: usize, cap: u128) -> Result<GroupTable> {
    let h = labels.order() as u128;
    cap_check("wreath group", factorial(k) * h.pow(k as u32), cap)?;
    let n = k as u32;
    let mut elements = Vec::new();
    for w in permutations(k) {
        let total = labels.order().pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let pairs = w
                .iter()
                .enumerate()
                .map(|(i, &j)| {
                    let l = c % labels.order();
                    c /= labels.order();
                    Pair::labeled(i as u32 + 1, j as u32 + 1, l as u32)
                })
                .collect();
            elements.push(PartialMapElement::from_sorted_unchecked(n, pairs));
        }
    }
    GroupTable::from_elements(elements, Some(labels))
}

/// Built-in label groups by name: `Z1`–`Z4` and `S3`.
pub fn named_label_group(name: &str) -> Result<Arc<GroupTable>> {
    let g = match name {
        "Z1" => cyclic_group(1)?,
        "Z2" => cyclic_group(2)?,
        "Z3" => cyclic_group(3)?,
        "Z4" => cyclic_group(4)?,
        "S3" => symmetric_group(3)?,
        other => return Err(Error::Parse(format!("unknown label group `{other}`"))),
    };
    Ok(Arc::new(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_relations() {
        let z4 = cyclic_group(4).unwrap();
        assert_eq!(z4.order(), 4);
        assert_eq!(z4.identity(), 0);
        let r = 1;
        let r4 = z4.mul(z4.mul(r, r), z4.mul(r, r));
        assert_eq!(r4, z4.identity());
        assert_eq!(z4.element_order(r), 4);
        assert!(z4.is_abelian());
        assert!(cyclic_group(0).is_err());
    }

    #[test]
    fn builder_orders() {
        assert_eq!(symmetric_group(3).unwrap().order(), 6);
        assert_eq!(symmetric_group(0).unwrap().order(), 1);
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let b2 = wreath_group(z2.clone(), 2).unwrap();
        assert_eq!(b2.order(), 8);
        assert!(b2.elements().iter().all(|e| e.rank() == 2));
        assert_eq!(wreath_group(z2, 3).unwrap().order(), 48);
        assert!(!symmetric_group(3).unwrap().is_abelian());
    }

    #[test]
    fn group_axioms_hold() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        for g in [
            cyclic_group(5).unwrap(),
            symmetric_group(4).unwrap(),
            wreath_group(z2, 2).unwrap(),
        ] {
            assert!(g.is_associative());
            let e = g.identity();
            for a in 0..g.order() {
                assert_eq!(g.mul(a, g.inverse(a)), e);
                assert_eq!(g.mul(g.inverse(a), a), e);
            }
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        assert!(matches!(symmetric_group_capped(6, 100), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn characters_of_small_abelian_groups() {
        let z4 = cyclic_group(4).unwrap();
        let chars = z4.abelian_characters().unwrap();
        assert_eq!(chars.len(), 4);
        assert!(chars[0].iter().all(|c| (c - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        assert!((chars[1][1] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(symmetric_group(3).unwrap().abelian_characters().is_err());
        // Klein four group as Z2 ≀ S1 × … is not built in; use Z2 wreath S1
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let g = wreath_group(z2, 1).unwrap();
        assert_eq!(g.abelian_characters().unwrap().len(), 2);
    }

    #[test]
    fn named_groups() {
        assert_eq!(named_label_group("Z3").unwrap().order(), 3);
        assert_eq!(named_label_group("S3").unwrap().order(), 6);
        assert!(named_label_group("Q8").is_err());
    }
}
