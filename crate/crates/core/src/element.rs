//! Labeled partial injective maps on `{1, …, n}`.
//!
//! Every built-in family is realized inside the rook monoid `R_n` or its
//! wreath product `G ≀ R_n`. An element is a set of triples `(i, j, g)`
//! meaning "`i` is sent to `j` carrying label `g`", where `g` indexes an
//! element of the label group. Plain families use label `0` everywhere,
//! which is the identity of every label group built by this crate.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupTable;

/// One edge `dom -> ran` of a partial map, with its group label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub dom: u32,
    pub ran: u32,
    pub label: u32,
}

impl Pair {
    pub fn new(dom: u32, ran: u32) -> Self {
        Pair { dom, ran, label: 0 }
    }

    pub fn labeled(dom: u32, ran: u32, label: u32) -> Self {
        Pair { dom, ran, label }
    }
}

/// A labeled partial injective map on `{1, …, n}`.
///
/// Pairs are kept sorted by domain point. Two maps compare first by ambient
/// size, then by rank, then lexicographically by their pair lists; this is
/// the canonical element order used for ids everywhere in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialMapElement {
    n: u32,
    pairs: Vec<Pair>,
}

impl PartialMapElement {
    /// Builds an element, validating point ranges and injectivity.
    pub fn new(n: u32, mut pairs: Vec<Pair>) -> Result<Self> {
        pairs.sort_unstable();
        let mut seen_ran = vec![false; n as usize + 1];
        for (idx, p) in pairs.iter().enumerate() {
            if p.dom == 0 || p.dom > n || p.ran == 0 || p.ran > n {
                return Err(Error::Structural(format!("pair {}>{} outside 1..{}", p.dom, p.ran, n)));
            }
            if idx > 0 && pairs[idx - 1].dom == p.dom {
                return Err(Error::Structural(format!("domain point {} mapped twice", p.dom)));
            }
            if seen_ran[p.ran as usize] {
                return Err(Error::Structural(format!("range point {} hit twice", p.ran)));
            }
            seen_ran[p.ran as usize] = true;
        }
        Ok(PartialMapElement { n, pairs })
    }

    /// Unlabeled map from `(i, j)` pairs.
    pub fn from_map(n: u32, map: &[(u32, u32)]) -> Result<Self> {
        Self::new(n, map.iter().map(|&(i, j)| Pair::new(i, j)).collect())
    }

    /// Caller guarantees sorted, injective, in-range pairs.
    pub(crate) fn from_sorted_unchecked(n: u32, pairs: Vec<Pair>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].dom < w[1].dom));
        PartialMapElement { n, pairs }
    }

    pub fn empty(n: u32) -> Self {
        PartialMapElement { n, pairs: Vec::new() }
    }

    pub fn identity(n: u32) -> Self {
        Self::partial_identity(n, 1..=n)
    }

    pub fn partial_identity(n: u32, points: impl IntoIterator<Item = u32>) -> Self {
        let mut pairs: Vec<Pair> = points.into_iter().map(|i| Pair::new(i, i)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        PartialMapElement { n, pairs }
    }

    pub fn ambient_size(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    /// Domain points in increasing order.
    pub fn domain(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs.iter().map(|p| p.dom)
    }

    /// Range points in increasing order.
    pub fn range(&self) -> Vec<u32> {
        let mut r: Vec<u32> = self.pairs.iter().map(|p| p.ran).collect();
        r.sort_unstable();
        r
    }

    /// Bitmask of the domain (bit `i - 1` for point `i`).
    pub fn domain_mask(&self) -> u64 {
        self.pairs.iter().fold(0, |m, p| m | (1u64 << (p.dom - 1)))
    }

    pub fn range_mask(&self) -> u64 {
        self.pairs.iter().fold(0, |m, p| m | (1u64 << (p.ran - 1)))
    }

    /// Image and label of a point, if it lies in the domain.
    pub fn apply(&self, x: u32) -> Option<(u32, u32)> {
        self.pairs
            .binary_search_by_key(&x, |p| p.dom)
            .ok()
            .map(|k| (self.pairs[k].ran, self.pairs[k].label))
    }

    pub fn has_identity_labels(&self) -> bool {
        self.pairs.iter().all(|p| p.label == 0)
    }

    /// Partial identity with identity labels.
    pub fn is_idempotent(&self) -> bool {
        self.pairs.iter().all(|p| p.dom == p.ran && p.label == 0)
    }

    /// `s⁻¹ s`, the partial identity on the domain.
    pub fn dom_idempotent(&self) -> Self {
        Self::partial_identity(self.n, self.domain())
    }

    /// `s s⁻¹`, the partial identity on the range.
    pub fn ran_idempotent(&self) -> Self {
        Self::partial_identity(self.n, self.range())
    }

    /// Restriction of the map to the domain points in `mask`.
    pub fn restrict_mask(&self, mask: u64) -> Self {
        PartialMapElement {
            n: self.n,
            pairs: self
                .pairs
                .iter()
                .copied()
                .filter(|p| mask & (1u64 << (p.dom - 1)) != 0)
                .collect(),
        }
    }

    /// Adds one pair; `None` if the domain or range point is already used.
    pub fn extend_with(&self, pair: Pair) -> Option<Self> {
        if self.pairs.iter().any(|p| p.dom == pair.dom || p.ran == pair.ran) {
            return None;
        }
        let pos = self.pairs.partition_point(|p| p.dom < pair.dom);
        let mut pairs = Vec::with_capacity(self.pairs.len() + 1);
        pairs.extend_from_slice(&self.pairs[..pos]);
        pairs.push(pair);
        pairs.extend_from_slice(&self.pairs[pos..]);
        Some(PartialMapElement { n: self.n, pairs })
    }

    /// Canonical string: `"1>3;2>1"`, `"#"` for the empty map, and
    /// `"i>j:k"` entries when `labeled` is set.
    pub fn encode(&self, labeled: bool) -> String {
        if self.pairs.is_empty() {
            return "#".to_string();
        }
        self.pairs
            .iter()
            .map(|p| {
                if labeled {
                    format!("{}>{}:{}", p.dom, p.ran, p.label)
                } else {
                    format!("{}>{}", p.dom, p.ran)
                }
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses the canonical string. Missing labels default to `0`.
    pub fn parse(text: &str, n: u32) -> Result<Self> {
        let text = text.trim();
        if text == "#" {
            return Ok(Self::empty(n));
        }
        let mut pairs = Vec::new();
        for item in text.split(';') {
            let (map, label) = match item.split_once(':') {
                Some((m, l)) => (m, Some(l)),
                None => (item, None),
            };
            let (i, j) = map
                .split_once('>')
                .ok_or_else(|| Error::Parse(format!("bad pair `{item}` in `{text}`")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad number `{s}` in `{text}`")))
            };
            let label = match label {
                Some(l) => num(l)?,
                None => 0,
            };
            pairs.push(Pair::labeled(num(i)?, num(j)?, label));
        }
        Self::new(n, pairs).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Ord for PartialMapElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.pairs.len().cmp(&other.pairs.len()))
            .then_with(|| self.pairs.cmp(&other.pairs))
    }
}

impl PartialOrd for PartialMapElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PartialMapElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labeled = self.pairs.iter().any(|p| p.label != 0);
        f.write_str(&self.encode(labeled))
    }
}

fn check_labels(a: &PartialMapElement, labels: Option<&GroupTable>) -> Result<()> {
    match labels {
        None if !a.has_identity_labels() => Err(Error::Structural(format!(
            "element {a} carries labels but no label group was given"
        ))),
        Some(g) if a.pairs.iter().any(|p| p.label as usize >= g.order()) => Err(Error::Structural(format!(
            "element {a} has a label outside the label group"
        ))),
        _ => Ok(()),
    }
}

/// Composition `a ∘ b`: first apply `b`, then `a`.
///
/// The label of the composite at `x` is `label_a(b(x)) · label_b(x)`.
pub fn multiply(
    a: &PartialMapElement,
    b: &PartialMapElement,
    labels: Option<&GroupTable>,
) -> Result<PartialMapElement> {
    if a.n != b.n {
        return Err(Error::Structural(format!("ambient sizes differ: {} vs {}", a.n, b.n)));
    }
    check_labels(a, labels)?;
    check_labels(b, labels)?;
    Ok(multiply_unchecked(a, b, labels))
}

/// [`multiply`] without operand validation, for hot loops over a family
/// whose elements are already known to be well-formed.
pub fn multiply_unchecked(
    a: &PartialMapElement,
    b: &PartialMapElement,
    labels: Option<&GroupTable>,
) -> PartialMapElement {
    let pairs = b
        .pairs
        .iter()
        .filter_map(|pb| {
            a.apply(pb.ran).map(|(z, la)| {
                let label = match labels {
                    Some(g) => g.mul(la as usize, pb.label as usize) as u32,
                    None => 0,
                };
                Pair::labeled(pb.dom, z, label)
            })
        })
        .collect();
    PartialMapElement::from_sorted_unchecked(a.n, pairs)
}

/// The unique inverse: swaps every pair and inverts its label.
pub fn inverse_of(s: &PartialMapElement, labels: Option<&GroupTable>) -> PartialMapElement {
    let mut pairs: Vec<Pair> = s
        .pairs
        .iter()
        .map(|p| {
            let label = match labels {
                Some(g) => g.inverse(p.label as usize) as u32,
                None => 0,
            };
            Pair::labeled(p.ran, p.dom, label)
        })
        .collect();
    pairs.sort_unstable();
    PartialMapElement::from_sorted_unchecked(s.n, pairs)
}

/// Natural partial order on labeled partial maps: `t ≤ s` iff `s` extends
/// `t` as a labeled partial function.
pub fn natural_leq(t: &PartialMapElement, s: &PartialMapElement) -> bool {
    if t.n != s.n || t.pairs.len() > s.pairs.len() {
        return false;
    }
    let mut it = s.pairs.iter();
    't: for p in &t.pairs {
        for q in it.by_ref() {
            if q.dom == p.dom {
                if q == p {
                    continue 't;
                }
                return false;
            }
            if q.dom > p.dom {
                return false;
            }
        }
        return false;
    }
    true
}
