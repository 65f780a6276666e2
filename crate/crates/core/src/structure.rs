//! Structural analysis of a finite inverse semigroup of labeled partial
//! maps: inverses, idempotents, the natural partial order and its Möbius
//! function, D-classes with connectors and maximal subgroups, and the
//! quadratic zeta/Möbius basis changes used as reference oracles.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use rand::Rng;

use crate::element::{inverse_of, multiply_unchecked, natural_leq, Pair, PartialMapElement};
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::group::GroupTable;

/// Which basis a coefficient vector is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `f = Σ f(s) s`
    Semigroup,
    /// `f = Σ g(s) ⌊s⌋`
    Groupoid,
}

/// Complex coefficients indexed by element id, tagged with their basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionOnS {
    pub basis: Basis,
    pub values: Vec<Complex64>,
}

impl FunctionOnS {
    pub fn new(basis: Basis, values: Vec<Complex64>) -> Self {
        FunctionOnS { basis, values }
    }

    pub fn zeros(basis: Basis, len: usize) -> Self {
        FunctionOnS {
            basis,
            values: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    pub fn delta(basis: Basis, len: usize, at: usize) -> Self {
        let mut f = Self::zeros(basis, len);
        f.values[at] = Complex64::new(1.0, 0.0);
        f
    }

    /// Coefficients with real and imaginary parts uniform in `[-1, 1)`.
    pub fn random<R: Rng + ?Sized>(basis: Basis, len: usize, rng: &mut R) -> Self {
        let values = (0..len)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        FunctionOnS { basis, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub(crate) fn expect(&self, basis: Basis, len: usize) -> Result<()> {
        if self.basis != basis {
            return Err(Error::Contract(format!(
                "expected a function in the {basis:?} basis, got {:?}",
                self.basis
            )));
        }
        if self.values.len() != len {
            return Err(Error::Contract(format!(
                "function has {} coefficients, semigroup has {} elements",
                self.values.len(),
                len
            )));
        }
        Ok(())
    }
}

/// How connectors `p_e` (with `dom(p_e) = e_k`, `ran(p_e) = e`) are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectorRule {
    /// The order-preserving bijection `ran(e_k) → ran(e)` with identity labels.
    OrderPreserving,
    /// `r^m e_k` for the rotation `r: i ↦ i + 1 (mod n)`, `m` minimal.
    MinimalRotation,
    /// The element of smallest canonical id with the right domain and range.
    SmallestId,
}

/// What kind of group a maximal subgroup is, which determines how its
/// irreducible representations are built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubgroupKind {
    Trivial,
    /// Cyclic, with the given local index as the generator `g`; the local
    /// element `g^t` gets character values `exp(2πi jt/|G|)`.
    Cyclic {
        generator: usize,
    },
    /// All permutations of the representative idempotent's domain.
    Symmetric,
    /// All labeled permutations of the representative's domain.
    Wreath,
    /// No built-in representation construction.
    Unknown,
}

/// One D-class together with the data fixing Steinberg's isomorphism.
#[derive(Clone, Debug)]
pub struct DClass {
    pub(crate) elements: Vec<usize>,
    pub(crate) idempotents: Vec<usize>,
    pub(crate) representative: usize,
    pub(crate) connectors: Vec<usize>,
    pub(crate) subgroup: Arc<GroupTable>,
    pub(crate) subgroup_ids: Vec<usize>,
    pub(crate) kind: SubgroupKind,
    /// `cells[(a * r + b) * |G| + y]` is the element `p_a y p_b⁻¹`.
    pub(crate) cells: Vec<usize>,
}

impl DClass {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Idempotent ids in increasing order; row/column order of the blocks.
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// `r_k`
    pub fn idempotent_count(&self) -> usize {
        self.idempotents.len()
    }

    /// The chosen idempotent `e_k`.
    pub fn representative(&self) -> usize {
        self.representative
    }

    /// Connector `p_e` for the idempotent at position `a`.
    pub fn connector(&self, a: usize) -> usize {
        self.connectors[a]
    }

    pub fn connectors(&self) -> &[usize] {
        &self.connectors
    }

    /// Maximal subgroup `G_k` at `e_k`.
    pub fn subgroup(&self) -> &Arc<GroupTable> {
        &self.subgroup
    }

    /// Semigroup id of a subgroup element given by local index.
    pub fn subgroup_id(&self, local: usize) -> usize {
        self.subgroup_ids[local]
    }

    pub fn subgroup_kind(&self) -> SubgroupKind {
        self.kind
    }

    /// The element `p_a y p_b⁻¹` for idempotent positions `a`, `b` and
    /// subgroup element `y`.
    pub fn cell(&self, a: usize, b: usize, y: usize) -> usize {
        let r = self.idempotents.len();
        self.cells[(a * r + b) * self.subgroup.order() + y]
    }
}

/// Steinberg coordinates of an element `s ∈ D_k`: the idempotent positions
/// of `ran(s)` and `dom(s)` and `y = p_ran⁻¹ s p_dom ∈ G_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coordinates {
    pub class: usize,
    pub row: usize,
    pub col: usize,
    pub group_element: usize,
}

/// Options for [`analyze`].
#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub labels: Option<Arc<GroupTable>>,
    pub connectors: ConnectorRule,
    /// Exhaustive product-closure check is run when `|S|² ≤` this value.
    pub closure_check_limit: usize,
    /// Every interval of the order is a boolean lattice, so
    /// `μ(s, t) = (-1)^{rk t - rk s}`.
    pub boolean_intervals: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            labels: None,
            connectors: ConnectorRule::SmallestId,
            closure_check_limit: 4_000_000,
            boolean_intervals: false,
        }
    }
}

/// A fully analyzed finite inverse semigroup. Immutable once built.
#[derive(Debug)]
pub struct SemigroupStructure {
    pub(crate) family: Option<FamilySpec>,
    pub(crate) n: u32,
    pub(crate) labels: Option<Arc<GroupTable>>,
    pub(crate) elements: Vec<PartialMapElement>,
    pub(crate) index: HashMap<PartialMapElement, usize>,
    pub(crate) inverse: Vec<usize>,
    pub(crate) dom: Vec<usize>,
    pub(crate) ran: Vec<usize>,
    pub(crate) idempotents: Vec<usize>,
    pub(crate) class_of: Vec<usize>,
    pub(crate) coords: Vec<Coordinates>,
    pub(crate) classes: Vec<DClass>,
    pub(crate) boolean_intervals: bool,
    upsets: OnceLock<Vec<Vec<usize>>>,
    pub(crate) sweep_plan: OnceLock<crate::fast::SweepPlan>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Analyzes an element set closed under composition and inverse.
pub fn analyze(elements: Vec<PartialMapElement>, options: AnalyzeOptions) -> Result<SemigroupStructure> {
    let mut elements = elements;
    elements.sort();
    elements.dedup();
    if elements.is_empty() {
        return Err(Error::Structural("empty element set".into()));
    }
    let n = elements[0].ambient_size();
    if elements.iter().any(|e| e.ambient_size() != n) {
        return Err(Error::Structural("elements have different ambient sizes".into()));
    }
    let labels = options.labels.clone();
    let lg = labels.as_deref();
    if lg.is_none() && elements.iter().any(|e| !e.has_identity_labels()) {
        return Err(Error::Structural("labeled elements need a label group".into()));
    }
    if let Some(g) = lg {
        if g.identity() != 0 {
            return Err(Error::Structural("label group identity must have index 0".into()));
        }
    }
    let index: HashMap<PartialMapElement, usize> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let size = elements.len();
    let lookup = |e: &PartialMapElement, what: &str| {
        index
            .get(e)
            .copied()
            .ok_or_else(|| Error::Structural(format!("not closed: {what} {e} is missing")))
    };

    let mut inverse = Vec::with_capacity(size);
    let mut dom = Vec::with_capacity(size);
    let mut ran = Vec::with_capacity(size);
    for e in &elements {
        inverse.push(lookup(&inverse_of(e, lg), "inverse")?);
        dom.push(lookup(&e.dom_idempotent(), "domain idempotent")?);
        ran.push(lookup(&e.ran_idempotent(), "range idempotent")?);
    }
    if size * size <= options.closure_check_limit {
        for a in &elements {
            for b in &elements {
                lookup(&multiply_unchecked(a, b, lg), "product")?;
            }
        }
    }
    let idempotents: Vec<usize> = (0..size).filter(|&i| elements[i].is_idempotent()).collect();

    // s D t iff ran(s) and ran(t) are joined by some x with dom(x)=ran(s), ran(x)=ran(t)
    let mut uf = UnionFind((0..size).collect());
    for x in 0..size {
        uf.union(dom[x], ran[x]);
    }
    let mut class_by_root: HashMap<usize, usize> = HashMap::new();
    let mut class_idems: Vec<Vec<usize>> = Vec::new();
    for &e in &idempotents {
        let root = uf.find(e);
        let k = *class_by_root.entry(root).or_insert_with(|| {
            class_idems.push(Vec::new());
            class_idems.len() - 1
        });
        class_idems[k].push(e);
    }
    // idempotents are visited in increasing id order, so classes are
    // ordered by their smallest idempotent and each list is sorted
    let mut class_of = vec![0; size];
    let mut class_elems: Vec<Vec<usize>> = vec![Vec::new(); class_idems.len()];
    for s in 0..size {
        let k = class_by_root[&uf.find(ran[s])];
        class_of[s] = k;
        class_elems[k].push(s);
    }

    let mut classes = Vec::with_capacity(class_idems.len());
    let mut coords = vec![
        Coordinates {
            class: 0,
            row: 0,
            col: 0,
            group_element: 0
        };
        size
    ];
    for (k, (idems, members)) in class_idems.into_iter().zip(class_elems).enumerate() {
        let rep = idems[0];
        let rep_el = &elements[rep];
        let mut connectors = Vec::with_capacity(idems.len());
        for &a in &idems {
            let p = if a == rep {
                rep
            } else {
                choose_connector(
                    options.connectors,
                    n,
                    rep_el,
                    &elements[a],
                    &members,
                    &dom,
                    &ran,
                    rep,
                    a,
                    &index,
                )?
            };
            if dom[p] != rep || ran[p] != a {
                return Err(Error::Structural(format!(
                    "connector {} does not join {} to {}",
                    elements[p], rep_el, elements[a]
                )));
            }
            connectors.push(p);
        }
        let group_members: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&s| dom[s] == rep && ran[s] == rep)
            .collect();
        let subgroup = GroupTable::from_elements(
            group_members.iter().map(|&s| elements[s].clone()).collect(),
            labels.clone(),
        )?;
        let subgroup_ids: Vec<usize> = subgroup.elements().iter().map(|e| index[e]).collect();
        let order = subgroup.order();
        let r = idems.len();
        if members.len() != r * r * order {
            return Err(Error::Structural(format!(
                "D-class of {} has {} elements, expected r²|G| = {}",
                rep_el,
                members.len(),
                r * r * order
            )));
        }
        let pos: HashMap<usize, usize> = idems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let conn_inv: Vec<PartialMapElement> = connectors.iter().map(|&p| elements[inverse[p]].clone()).collect();
        let mut cells = vec![usize::MAX; r * r * order];
        for &s in &members {
            let a = pos[&ran[s]];
            let b = pos[&dom[s]];
            let y_el = multiply_unchecked(
                &multiply_unchecked(&conn_inv[a], &elements[s], lg),
                &elements[connectors[b]],
                lg,
            );
            let y = subgroup
                .index_of(&y_el)
                .ok_or_else(|| Error::Structural(format!("p⁻¹ s p = {y_el} is not in the maximal subgroup")))?;
            let slot = &mut cells[(a * r + b) * order + y];
            if *slot != usize::MAX {
                return Err(Error::Structural("Steinberg coordinates are not injective".into()));
            }
            *slot = s;
            coords[s] = Coordinates {
                class: k,
                row: a,
                col: b,
                group_element: y,
            };
        }
        classes.push(DClass {
            elements: members,
            idempotents: idems,
            representative: rep,
            connectors,
            subgroup: Arc::new(subgroup),
            subgroup_ids,
            kind: SubgroupKind::Unknown,
            cells,
        });
    }
    for c in &mut classes {
        if c.subgroup.order() == 1 {
            c.kind = SubgroupKind::Trivial;
        }
    }

    Ok(SemigroupStructure {
        family: None,
        n,
        labels,
        elements,
        index,
        inverse,
        dom,
        ran,
        idempotents,
        class_of,
        coords,
        classes,
        boolean_intervals: options.boolean_intervals,
        upsets: OnceLock::new(),
        sweep_plan: OnceLock::new(),
    })
}

#[allow(clippy::too_many_arguments)]
fn choose_connector(
    rule: ConnectorRule,
    n: u32,
    rep: &PartialMapElement,
    target: &PartialMapElement,
    members: &[usize],
    dom: &[usize],
    ran: &[usize],
    rep_id: usize,
    target_id: usize,
    index: &HashMap<PartialMapElement, usize>,
) -> Result<usize> {
    let found = match rule {
        ConnectorRule::OrderPreserving => {
            let pairs: Vec<Pair> = rep
                .domain()
                .zip(target.domain())
                .map(|(i, j)| Pair::new(i, j))
                .collect();
            index.get(&PartialMapElement::from_sorted_unchecked(n, pairs)).copied()
        }
        ConnectorRule::MinimalRotation => (0..n).find_map(|m| {
            let mut pairs: Vec<Pair> = rep.domain().map(|x| Pair::new(x, (x - 1 + m) % n + 1)).collect();
            pairs.sort_unstable();
            let cand = PartialMapElement::from_sorted_unchecked(n, pairs);
            index.get(&cand).copied().filter(|&p| ran[p] == target_id)
        }),
        ConnectorRule::SmallestId => members
            .iter()
            .copied()
            .find(|&s| dom[s] == rep_id && ran[s] == target_id),
    };
    found.ok_or_else(|| Error::Structural(format!("no connector from {rep} to {target} under {rule:?}")))
}

impl SemigroupStructure {
    pub fn family(&self) -> Option<&FamilySpec> {
        self.family.as_ref()
    }

    pub fn ambient_size(&self) -> u32 {
        self.n
    }

    pub fn label_group(&self) -> Option<&Arc<GroupTable>> {
        self.labels.as_ref()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[PartialMapElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &PartialMapElement {
        &self.elements[id]
    }

    pub fn id_of(&self, e: &PartialMapElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn rank(&self, id: usize) -> usize {
        self.elements[id].rank()
    }

    pub fn inverse(&self, id: usize) -> usize {
        self.inverse[id]
    }

    /// `s⁻¹ s` as an element id.
    pub fn dom(&self, id: usize) -> usize {
        self.dom[id]
    }

    /// `s s⁻¹` as an element id.
    pub fn ran(&self, id: usize) -> usize {
        self.ran[id]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn classes(&self) -> &[DClass] {
        &self.classes
    }

    pub fn class_of(&self, id: usize) -> usize {
        self.class_of[id]
    }

    pub fn coordinates(&self, id: usize) -> Coordinates {
        self.coords[id]
    }

    pub fn has_boolean_intervals(&self) -> bool {
        self.boolean_intervals
    }

    /// Element string for file formats; labels are written for wreath
    /// structures.
    pub fn encode(&self, id: usize) -> String {
        self.elements[id].encode(self.labels.is_some())
    }

    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let e = PartialMapElement::parse(text, self.n)?;
        self.id_of(&e)
            .ok_or_else(|| Error::Parse(format!("`{text}` is not an element of this semigroup")))
    }

    /// Product of two elements by id.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let ab = multiply_unchecked(&self.elements[a], &self.elements[b], self.labels.as_deref());
        self.index[&ab]
    }

    /// `t ≤ s` in the natural partial order.
    pub fn leq(&self, t: usize, s: usize) -> bool {
        natural_leq(&self.elements[t], &self.elements[s])
    }

    /// All `t ≥ s`, by brute force over the element list (cached).
    pub fn upset(&self, s: usize) -> &[usize] {
        let sets = self.upsets.get_or_init(|| {
            (0..self.size())
                .map(|s| (0..self.size()).filter(|&t| self.leq(s, t)).collect())
                .collect()
        });
        &sets[s]
    }

    /// All `t ≤ s`, in increasing id order.
    pub fn downset(&self, s: usize) -> Vec<usize> {
        (0..self.size()).filter(|&t| self.leq(t, s)).collect()
    }

    /// Möbius function of the natural partial order on `[s, t]`, by the
    /// recursion `μ(s,s) = 1`, `μ(s,t) = -Σ_{s ≤ u < t} μ(s,u)`.
    pub fn mobius_value(&self, s: usize, t: usize) -> Result<i64> {
        if !self.leq(s, t) {
            return Err(Error::Domain(format!(
                "{} is not below {}",
                self.elements[s], self.elements[t]
            )));
        }
        // interval members in increasing id order; u < v in the order
        // forces rank u < rank v, hence id u < id v
        let interval: Vec<usize> = (s..=t).filter(|&u| self.leq(s, u) && self.leq(u, t)).collect();
        let mu = mobius_over(&interval, |u, v| self.leq(u, v));
        Ok(*mu.last().unwrap())
    }

    /// `(-1)^{rk t - rk s}`, valid whenever intervals are boolean.
    pub fn mobius_closed_form(&self, s: usize, t: usize) -> i64 {
        if (self.rank(t) - self.rank(s)).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `(t, μ(s, t))` for every `t ≥ s`.
    pub fn mobius_row(&self, s: usize) -> Vec<(usize, i64)> {
        let up = self.upset(s);
        if self.boolean_intervals {
            up.iter().map(|&t| (t, self.mobius_closed_form(s, t))).collect()
        } else {
            let mu = mobius_over(up, |u, v| self.leq(u, v));
            up.iter().copied().zip(mu).collect()
        }
    }

    /// Expansion `⌊s⌋ = Σ_{t ≤ s} μ(t, s) t` in the semigroup basis.
    pub fn groupoid_element(&self, s: usize) -> Vec<(usize, i64)> {
        self.downset(s)
            .into_iter()
            .map(|t| {
                let mu = if self.boolean_intervals {
                    self.mobius_closed_form(t, s)
                } else {
                    self.mobius_value(t, s).expect("t below s")
                };
                (t, mu)
            })
            .collect()
    }
}

/// Möbius values `μ(chain[0], chain[i])` for an up-closed list that starts
/// at its minimum and is sorted compatibly with the order.
fn mobius_over(list: &[usize], leq: impl Fn(usize, usize) -> bool) -> Vec<i64> {
    let mut mu: Vec<i64> = Vec::with_capacity(list.len());
    for (i, &t) in list.iter().enumerate() {
        if i == 0 {
            mu.push(1);
            continue;
        }
        let sum: i64 = (0..i).filter(|&j| leq(list[j], t)).map(|j| mu[j]).sum();
        mu.push(-sum);
    }
    mu
}

/// `g(s) = Σ_{t ≥ s} f(t)`, quadratic reference implementation.
pub fn zeta_naive(s: &SemigroupStructure, f: &FunctionOnS) -> Result<FunctionOnS> {
    f.expect(Basis::Semigroup, s.size())?;
    let values = (0..s.size())
        .map(|x| s.upset(x).iter().map(|&t| f.values[t]).sum())
        .collect();
    Ok(FunctionOnS::new(Basis::Groupoid, values))
}

/// `f(s) = Σ_{t ≥ s} μ(s, t) g(t)`, quadratic reference implementation.
pub fn mobius_naive(s: &SemigroupStructure, g: &FunctionOnS) -> Result<FunctionOnS> {
    g.expect(Basis::Groupoid, s.size())?;
    let values = (0..s.size())
        .map(|x| s.mobius_row(x).into_iter().map(|(t, mu)| g.values[t] * mu as f64).sum())
        .collect();
    Ok(FunctionOnS::new(Basis::Semigroup, values))
}
