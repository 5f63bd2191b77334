//! Set families and the greedoid / augmentoid axiom checkers.

use std::collections::HashSet;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::VertexSet;

/// A finite family of distinct subsets of `0..ground_size`, kept sorted.
#[derive(Clone, Debug)]
pub struct SetFamily {
    ground: usize,
    members: Vec<VertexSet>,
    index: HashSet<VertexSet>,
}

impl SetFamily {
    /// Sorts and deduplicates `members`. Panics if a member lives on a
    /// different ground set.
    pub fn new<I: IntoIterator<Item = VertexSet>>(ground: usize, members: I) -> Self {
        let mut members: Vec<VertexSet> = members.into_iter().collect();
        for m in &members {
            assert_eq!(m.ground_size(), ground, "member {m} not over 0..{ground}");
        }
        members.sort();
        members.dedup();
        let index = members.iter().cloned().collect();
        SetFamily {
            ground,
            members,
            index,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.index.contains(s)
    }

    /// Intersection of all members; the whole ground set for an empty family.
    pub fn intersection(&self) -> VertexSet {
        let mut acc = VertexSet::full(self.ground);
        for m in &self.members {
            acc.intersect_with(m);
        }
        acc
    }

    pub fn max_size(&self) -> Option<usize> {
        self.members.iter().map(VertexSet::len).max()
    }

    /// The members of maximum cardinality.
    pub fn maximum_members(&self) -> SetFamily {
        let top = self.max_size().unwrap_or(0);
        SetFamily::new(
            self.ground,
            self.members.iter().filter(|m| m.len() == top).cloned(),
        )
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    /// Members of `self` missing from `other`.
    pub fn minus(&self, other: &SetFamily) -> Vec<VertexSet> {
        self.members
            .iter()
            .filter(|m| !other.contains(m))
            .cloned()
            .collect()
    }

    pub fn filter(&self, mut keep: impl FnMut(&VertexSet) -> bool) -> SetFamily {
        SetFamily::new(
            self.ground,
            self.members.iter().filter(|m| keep(m)).cloned(),
        )
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for SetFamily {}

impl Serialize for SetFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members.iter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Accessibility,
    Exchange,
    Augmentation,
    ExtendsToMaximum,
}

/// A tuple of members that violates the named axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub axiom: Axiom,
    /// `X` (the set with no removable element, the larger exchange set, the
    /// first augmentation set, or the non-extendable set).
    pub first: VertexSet,
    /// `Y` for the pairwise axioms.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second: Option<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AxiomWitness>,
}

impl AxiomVerdict {
    fn holds() -> Self {
        AxiomVerdict {
            holds: true,
            witness: None,
        }
    }

    fn fails(axiom: Axiom, first: &VertexSet, second: Option<&VertexSet>) -> Self {
        AxiomVerdict {
            holds: false,
            witness: Some(AxiomWitness {
                axiom,
                first: first.clone(),
                second: second.cloned(),
            }),
        }
    }
}

fn non_empty(f: &SetFamily) -> Result<()> {
    if f.is_empty() {
        Err(Error::EmptyFamily)
    } else {
        Ok(())
    }
}

fn with_element(s: &VertexSet, x: usize) -> VertexSet {
    let mut t = s.clone();
    t.insert(x);
    t
}

fn without_element(s: &VertexSet, x: usize) -> VertexSet {
    let mut t = s.clone();
    t.remove(x);
    t
}

/// Accessibility: every non-empty `X` has some `x` with `X - x` feasible.
pub fn check_accessibility(f: &SetFamily) -> Result<AxiomVerdict> {
    non_empty(f)?;
    for x in f.iter().filter(|x| !x.is_empty()) {
        if !x.iter().any(|e| f.contains(&without_element(x, e))) {
            return Ok(AxiomVerdict::fails(Axiom::Accessibility, x, None));
        }
    }
    Ok(AxiomVerdict::holds())
}

/// Exchange: for `|X| = |Y| + 1` some `x ∈ X - Y` has `Y ∪ {x}` feasible.
pub fn check_exchange(f: &SetFamily) -> Result<AxiomVerdict> {
    non_empty(f)?;
    let top = f.max_size().unwrap_or(0);
    let mut by_size: Vec<Vec<&VertexSet>> = vec![Vec::new(); top + 1];
    for m in f.iter() {
        by_size[m.len()].push(m);
    }
    for k in 0..top {
        for x in &by_size[k + 1] {
            for y in &by_size[k] {
                let ok = x
                    .difference(y)
                    .iter()
                    .any(|e| f.contains(&with_element(y, e)));
                if !ok {
                    return Ok(AxiomVerdict::fails(Axiom::Exchange, x, Some(y)));
                }
            }
        }
    }
    Ok(AxiomVerdict::holds())
}

pub fn is_greedoid(f: &SetFamily) -> Result<AxiomVerdict> {
    let acc = check_accessibility(f)?;
    if !acc.holds {
        return Ok(acc);
    }
    check_exchange(f)
}

/// Sizes `|base ∪ B|` over `B ⊆ extra` with `base ∪ B` feasible, as a
/// membership table indexed by size.
fn reachable_sizes(f: &SetFamily, base: &VertexSet, extra: &VertexSet) -> Vec<bool> {
    let mut sizes = vec![false; f.ground_size() + 1];
    let k = extra.len();
    let cheaper_to_enumerate = k < 20 && (1usize << k) <= 4 * f.len();
    if cheaper_to_enumerate {
        for b in extra.subsets_by_size() {
            let cand = base.union(&b);
            if f.contains(&cand) {
                sizes[cand.len()] = true;
            }
        }
    } else {
        let span = base.union(extra);
        for z in f.iter() {
            if base.is_subset(z) && z.is_subset(&span) {
                sizes[z.len()] = true;
            }
        }
    }
    sizes
}

/// Augmentation: for all `X, Y` there are `A ⊆ X - Y`, `B ⊆ Y - X` with
/// `Y ∪ A`, `X ∪ B` feasible and of equal size.
pub fn is_augmentoid(f: &SetFamily) -> Result<AxiomVerdict> {
    non_empty(f)?;
    let ms = f.members();
    for (i, x) in ms.iter().enumerate() {
        for y in &ms[i + 1..] {
            if f.contains(&x.union(y)) {
                continue;
            }
            let from_x = reachable_sizes(f, x, &y.difference(x));
            let from_y = reachable_sizes(f, y, &x.difference(y));
            if !from_x.iter().zip(&from_y).any(|(a, b)| *a && *b) {
                return Ok(AxiomVerdict::fails(Axiom::Augmentation, x, Some(y)));
            }
        }
    }
    Ok(AxiomVerdict::holds())
}

/// Every member is contained in some member of maximum cardinality.
pub fn every_feasible_extends_to_maximum(f: &SetFamily) -> Result<AxiomVerdict> {
    non_empty(f)?;
    let tops = f.maximum_members();
    for x in f.iter() {
        if !tops.iter().any(|t| x.is_subset(t)) {
            return Ok(AxiomVerdict::fails(Axiom::ExtendsToMaximum, x, None));
        }
    }
    Ok(AxiomVerdict::holds())
}

/// A chain `∅ = S_0 ⊂ S_1 ⊂ … ⊂ S_k = S` of members with `|S_i| = i`,
/// found by removing one element at a time with backtracking.
pub fn accessibility_chain(f: &SetFamily, s: &VertexSet) -> Result<Option<Vec<VertexSet>>> {
    if !f.contains(s) {
        return Err(Error::NotAMember(s.clone()));
    }
    fn descend(f: &SetFamily, cur: &VertexSet, dead: &mut HashSet<VertexSet>) -> Option<Vec<VertexSet>> {
        if cur.is_empty() {
            return Some(vec![cur.clone()]);
        }
        // drop the largest element first so chains grow in vertex order
        for e in cur.to_vec().into_iter().rev() {
            let next = without_element(cur, e);
            if !f.contains(&next) || dead.contains(&next) {
                continue;
            }
            if let Some(mut chain) = descend(f, &next, dead) {
                chain.push(cur.clone());
                return Some(chain);
            }
            dead.insert(next);
        }
        None
    }
    Ok(descend(f, s, &mut HashSet::new()))
}


/// A family of subsets of `0..n` (`n <= 16`) stored as bit masks with a
/// membership bitmap; the fast path behind the corpus sweeps.
#[derive(Clone, Debug)]
pub(crate) struct MaskFamily {
    n: usize,
    members: Vec<u64>,
    bitmap: Vec<u64>,
}

pub(crate) const MASK_FAMILY_LIMIT: usize = 16;

impl MaskFamily {
    pub(crate) fn new(n: usize, mut members: Vec<u64>) -> Self {
        assert!(n <= MASK_FAMILY_LIMIT);
        members.sort_unstable();
        members.dedup();
        let mut bitmap = vec![0u64; ((1usize << n) + 63) / 64];
        for &m in &members {
            bitmap[(m >> 6) as usize] |= 1u64 << (m & 63);
        }
        MaskFamily { n, members, bitmap }
    }

    pub(crate) fn members(&self) -> &[u64] {
        &self.members
    }


    #[inline]
    pub(crate) fn contains(&self, m: u64) -> bool {
        (m >> self.n) == 0 && self.bitmap[(m >> 6) as usize] & (1u64 << (m & 63)) != 0
    }

    pub(crate) fn to_set_family(&self) -> SetFamily {
        SetFamily::new(
            self.n,
            self.members.iter().map(|&m| VertexSet::from_mask(self.n, m)),
        )
    }

    fn verdict(&self, axiom: Axiom, first: u64, second: Option<u64>) -> AxiomVerdict {
        AxiomVerdict::fails(
            axiom,
            &VertexSet::from_mask(self.n, first),
            second.map(|m| VertexSet::from_mask(self.n, m)).as_ref(),
        )
    }

    pub(crate) fn accessibility(&self) -> AxiomVerdict {
        for &x in &self.members {
            if x == 0 {
                continue;
            }
            let mut rest = x;
            let mut ok = false;
            while rest != 0 {
                let e = rest & rest.wrapping_neg();
                rest &= rest - 1;
                if self.contains(x & !e) {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return self.verdict(Axiom::Accessibility, x, None);
            }
        }
        AxiomVerdict::holds()
    }

    pub(crate) fn exchange(&self) -> AxiomVerdict {
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); self.n + 2];
        for &m in &self.members {
            by_size[m.count_ones() as usize].push(m);
        }
        for k in 0..=self.n {
            for &x in &by_size[k + 1] {
                for &y in &by_size[k] {
                    let mut rest = x & !y;
                    let mut ok = false;
                    while rest != 0 {
                        let e = rest & rest.wrapping_neg();
                        rest &= rest - 1;
                        if self.contains(y | e) {
                            ok = true;
                            break;
                        }
                    }
                    if !ok {
                        return self.verdict(Axiom::Exchange, x, Some(y));
                    }
                }
            }
        }
        AxiomVerdict::holds()
    }

    pub(crate) fn greedoid(&self) -> AxiomVerdict {
        let acc = self.accessibility();
        if !acc.holds {
            return acc;
        }
        self.exchange()
    }

    /// Bit `k` set iff some `B ⊆ extra` has `base | B` feasible with
    /// `|base | B| = k`.
    fn reachable_sizes(&self, base: u64, extra: u64) -> u64 {
        let mut sizes = 0u64;
        let k = extra.count_ones();
        if k <= 12 && (1usize << k) <= 4 * self.members.len() {
            let mut b = 0u64;
            loop {
                if self.contains(base | b) {
                    sizes |= 1u64 << (base | b).count_ones();
                }
                if b == extra {
                    break;
                }
                b = b.wrapping_sub(extra) & extra;
            }
        } else {
            let span = base | extra;
            for &z in &self.members {
                if z & base == base && z & !span == 0 {
                    sizes |= 1u64 << z.count_ones();
                }
            }
        }
        sizes
    }

    pub(crate) fn augmentation(&self) -> AxiomVerdict {
        let ms = &self.members;
        for (i, &x) in ms.iter().enumerate() {
            for &y in &ms[i + 1..] {
                if self.contains(x | y) {
                    continue;
                }
                let from_x = self.reachable_sizes(x, y & !x);
                let from_y = self.reachable_sizes(y, x & !y);
                if from_x & from_y == 0 {
                    return self.verdict(Axiom::Augmentation, x, Some(y));
                }
            }
        }
        AxiomVerdict::holds()
    }
}
