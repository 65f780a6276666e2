//! The built-in families: rook monoid `R_n`, planar rook monoid `P_n`,
//! partial cyclic shift monoid `C_n`, partial rotation monoid `Rot_n`,
//! wreath products `G ≀ R_n`, and the chain semilattice.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::element::{Pair, PartialMapElement};
use crate::error::{Error, Result};
use crate::group::{named_label_group, GroupTable};
use crate::structure::{analyze, AnalyzeOptions, ConnectorRule, SemigroupStructure, SubgroupKind};

/// Default cap on the number of elements a family may have.
pub const DEFAULT_ELEMENT_CAP: u128 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Rook,
    PlanarRook,
    CyclicShift,
    Rotation,
    WreathRook,
    Chain,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] = [
        FamilyTag::Rook,
        FamilyTag::PlanarRook,
        FamilyTag::CyclicShift,
        FamilyTag::Rotation,
        FamilyTag::WreathRook,
        FamilyTag::Chain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::Rook => "rook",
            FamilyTag::PlanarRook => "planar_rook",
            FamilyTag::CyclicShift => "cyclic_shift",
            FamilyTag::Rotation => "rotation",
            FamilyTag::WreathRook => "wreath_rook",
            FamilyTag::Chain => "chain",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown family `{name}`")))
    }

    /// Every restriction of a member is a member, which is what the
    /// extension sweep needs.
    pub fn is_restriction_closed(self) -> bool {
        matches!(
            self,
            FamilyTag::Rook | FamilyTag::PlanarRook | FamilyTag::CyclicShift | FamilyTag::WreathRook
        )
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family together with its parameters, e.g. `{"family":"rook","n":4}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: FamilyTag,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_group: Option<String>,
}

impl FamilySpec {
    pub fn new(family: FamilyTag, n: usize) -> Self {
        FamilySpec {
            family,
            n,
            label_group: None,
        }
    }

    pub fn wreath(n: usize, label_group: &str) -> Self {
        FamilySpec {
            family: FamilyTag::WreathRook,
            n,
            label_group: Some(label_group.to_string()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match (self.family, &self.label_group) {
            (FamilyTag::WreathRook, None) => return Err(Error::Contract("wreath_rook needs a label group".into())),
            (FamilyTag::WreathRook, Some(_)) => {}
            (_, Some(_)) => return Err(Error::Contract(format!("{} does not take a label group", self.family))),
            _ => {}
        }
        if matches!(self.family, FamilyTag::Rotation | FamilyTag::Chain) && self.n == 0 {
            return Err(Error::Domain(format!("{} needs n >= 1", self.family)));
        }
        if self.n > 63 {
            return Err(Error::Domain("n must be at most 63".into()));
        }
        Ok(())
    }

    /// Closed-form element count.
    pub fn predicted_size(&self) -> Result<u128> {
        self.validate()?;
        let h = match &self.label_group {
            Some(name) => named_label_group(name)?.order() as u128,
            None => 1,
        };
        Ok(predicted_size(self.family, self.n, h))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.label_group {
            Some(g) => write!(f, "{}(n={}, G={})", self.family, self.n, g),
            None => write!(f, "{}(n={})", self.family, self.n),
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Element-count formulas, with `h = |G|` for the wreath family.
pub fn predicted_size(family: FamilyTag, n: usize, h: u128) -> u128 {
    let sum = |term: &dyn Fn(usize) -> u128| (0..=n).map(term).fold(0u128, u128::saturating_add);
    match family {
        FamilyTag::Rook => sum(&|k| binomial(n, k).pow(2) * factorial(k)),
        FamilyTag::PlanarRook => sum(&|k| binomial(n, k).pow(2)),
        FamilyTag::CyclicShift => 1 + sum(&|k| binomial(n, k).pow(2) * k as u128),
        FamilyTag::Rotation => (1u128 << n) * n as u128 - n as u128 + 1,
        FamilyTag::WreathRook => sum(&|k| binomial(n, k).pow(2) * factorial(k) * h.saturating_pow(k as u32)),
        FamilyTag::Chain => n as u128,
    }
}

/// Enumerates and analyzes a family with the default size cap.
pub fn build(spec: &FamilySpec) -> Result<SemigroupStructure> {
    build_with_cap(spec, DEFAULT_ELEMENT_CAP)
}

pub fn build_with_cap(spec: &FamilySpec, cap: u128) -> Result<SemigroupStructure> {
    let predicted = spec.predicted_size()?;
    if predicted > cap {
        return Err(Error::SizeCap {
            what: spec.to_string(),
            size: predicted,
            cap,
        });
    }
    let n = spec.n as u32;
    let labels: Option<Arc<GroupTable>> = match &spec.label_group {
        Some(name) => Some(named_label_group(name)?),
        None => None,
    };
    let elements = match spec.family {
        FamilyTag::Rook => rook_elements(n, 1),
        FamilyTag::WreathRook => rook_elements(n, labels.as_ref().map_or(1, |g| g.order() as u32)),
        FamilyTag::PlanarRook => planar_elements(n),
        FamilyTag::CyclicShift => cyclic_shift_elements(n),
        FamilyTag::Rotation => rotation_elements(n),
        FamilyTag::Chain => (1..=n).map(|i| PartialMapElement::partial_identity(n, 1..=i)).collect(),
    };
    debug_assert_eq!(elements.len() as u128, predicted);
    let connectors = match spec.family {
        FamilyTag::Rotation => ConnectorRule::MinimalRotation,
        FamilyTag::Chain => ConnectorRule::SmallestId,
        _ => ConnectorRule::OrderPreserving,
    };
    let options = AnalyzeOptions {
        labels,
        connectors,
        boolean_intervals: spec.family != FamilyTag::Chain,
        // families are closed by construction; tests check closure separately
        closure_check_limit: 0,
    };
    let mut s = analyze(elements, options)?;
    s.family = Some(spec.clone());
    for class in &mut s.classes {
        if class.subgroup.order() == 1 {
            class.kind = SubgroupKind::Trivial;
            continue;
        }
        let rep = s.elements[class.representative].clone();
        class.kind = match spec.family {
            FamilyTag::Rook => SubgroupKind::Symmetric,
            FamilyTag::WreathRook => SubgroupKind::Wreath,
            FamilyTag::PlanarRook | FamilyTag::Chain => SubgroupKind::Trivial,
            FamilyTag::CyclicShift => {
                // x ↦ next point of dom(e_k), cyclically
                let dom: Vec<u32> = rep.domain().collect();
                let k = dom.len();
                let pairs = (0..k).map(|r| Pair::new(dom[r], dom[(r + 1) % k])).collect();
                let g = PartialMapElement::new(n, pairs)?;
                SubgroupKind::Cyclic {
                    generator: subgroup_local(class.subgroup.as_ref(), &g)?,
                }
            }
            FamilyTag::Rotation => {
                let j = rot_orbit_size(&rep, n)?;
                let pairs = rep.domain().map(|x| Pair::new(x, (x - 1 + j) % n + 1)).collect();
                let g = PartialMapElement::new(n, pairs)?;
                SubgroupKind::Cyclic {
                    generator: subgroup_local(class.subgroup.as_ref(), &g)?,
                }
            }
        };
    }
    Ok(s)
}

fn subgroup_local(g: &GroupTable, e: &PartialMapElement) -> Result<usize> {
    g.index_of(e)
        .ok_or_else(|| Error::Structural(format!("generator {e} is not in the maximal subgroup")))
}

fn rook_elements(n: u32, labels: u32) -> Vec<PartialMapElement> {
    fn rec(n: u32, labels: u32, i: u32, used: u64, cur: &mut Vec<Pair>, out: &mut Vec<PartialMapElement>) {
        if i > n {
            out.push(PartialMapElement::from_sorted_unchecked(n, cur.clone()));
            return;
        }
        rec(n, labels, i + 1, used, cur, out);
        for j in 1..=n {
            if used & (1 << (j - 1)) == 0 {
                for g in 0..labels {
                    cur.push(Pair::labeled(i, j, g));
                    rec(n, labels, i + 1, used | (1 << (j - 1)), cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(n, labels, 1, 0, &mut Vec::new(), &mut out);
    out
}

fn points(mask: u64) -> Vec<u32> {
    (0..64).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

fn subsets_by_size(n: u32) -> Vec<Vec<Vec<u32>>> {
    let mut by_size = vec![Vec::new(); n as usize + 1];
    for mask in 0u64..(1u64 << n) {
        by_size[mask.count_ones() as usize].push(points(mask));
    }
    by_size
}

fn planar_elements(n: u32) -> Vec<PartialMapElement> {
    let mut out = Vec::new();
    for sets in subsets_by_size(n) {
        for a in &sets {
            for b in &sets {
                let pairs = a.iter().zip(b).map(|(&i, &j)| Pair::new(i, j)).collect();
                out.push(PartialMapElement::from_sorted_unchecked(n, pairs));
            }
        }
    }
    out
}

fn cyclic_shift_elements(n: u32) -> Vec<PartialMapElement> {
    let mut out = vec![PartialMapElement::empty(n)];
    for sets in subsets_by_size(n).into_iter().skip(1) {
        for a in &sets {
            for b in &sets {
                let k = a.len();
                for shift in 0..k {
                    let pairs = (0..k).map(|r| Pair::new(a[r], b[(r + shift) % k])).collect();
                    out.push(PartialMapElement::from_sorted_unchecked(n, pairs));
                }
            }
        }
    }
    out
}

fn rotation_elements(n: u32) -> Vec<PartialMapElement> {
    let mut out = vec![PartialMapElement::empty(n)];
    for t in 0..n {
        for mask in 1u64..(1u64 << n) {
            let pairs = points(mask)
                .into_iter()
                .map(|x| Pair::new(x, (x - 1 + t) % n + 1))
                .collect();
            out.push(PartialMapElement::from_sorted_unchecked(n, pairs));
        }
    }
    out
}

/// Whether an unlabeled map is a cyclic shift from its sorted domain onto
/// its sorted range.
pub fn is_cyclic_shift(m: &PartialMapElement) -> bool {
    let k = m.rank();
    if k == 0 {
        return true;
    }
    let range = m.range();
    let first = m.pairs()[0].ran;
    let j = range.iter().position(|&t| t == first).unwrap();
    m.pairs().iter().enumerate().all(|(r, p)| p.ran == range[(j + r) % k])
}

/// Whether an unlabeled map on `{1, …, n}` is the restriction of a rotation.
pub fn is_partial_rotation(m: &PartialMapElement) -> bool {
    let n = m.ambient_size();
    let mut shifts = m.pairs().iter().map(|p| (p.ran + n - p.dom) % n);
    match shifts.next() {
        None => true,
        Some(k) => shifts.all(|s| s == k),
    }
}

/// `j(e)`: size of the rotation orbit of the idempotent's domain.
pub fn rot_orbit_size(e: &PartialMapElement, n: u32) -> Result<u32> {
    if !e.is_idempotent() {
        return Err(Error::Domain(format!("{e} is not idempotent")));
    }
    let mask = e.domain_mask();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let rotate = |m: u64| ((m << 1) | (m >> (n - 1))) & full;
    let mut cur = rotate(mask);
    let mut j = 1;
    while cur != mask {
        cur = rotate(cur);
        j += 1;
    }
    Ok(j)
}
