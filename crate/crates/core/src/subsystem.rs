//! Root subsystems, their Weyl orbits and conjugacy classes.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_linalg::{integer_rank, IntMatrix, Lattice};
use crate::root_system::{RootSystem, TypeLabel, MAX_ROOTS};
use crate::stratification::dim_top;

const WORDS: usize = MAX_ROOTS / 64;

/// A subset of the roots of an ambient [`RootSystem`], as a fixed-width bit
/// mask over root indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subsystem {
    bits: [u64; WORDS],
}

impl Subsystem {
    pub fn empty() -> Self {
        Self::default()
    }

    /// All roots of a system with `n` roots.
    pub fn full(n: usize) -> Self {
        Self::from_indices(0..n)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty();
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < MAX_ROOTS && self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Subsystem) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image under a permutation of root indices.
    pub fn permute(&self, perm: &[usize]) -> Subsystem {
        Subsystem::from_indices(self.iter().map(|i| perm[i]))
    }
}

/// Lexicographic order on the sorted index lists.
impl Ord for Subsystem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subsystem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for Subsystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subsystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&i| i >= MAX_ROOTS) {
            return Err(serde::de::Error::custom(format!("root index {bad} out of range")));
        }
        Ok(Subsystem::from_indices(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapabilityError {
    #[error("subsystem enumeration is limited to rank {limit}; {spec} has rank {rank}")]
    RankLimit { spec: String, rank: usize, limit: usize },
}

/// Soft limits for the enumeration-level operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_rank: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_rank: 4 }
    }
}

fn lattice_of(rs: &RootSystem, roots: impl IntoIterator<Item = usize>) -> Lattice {
    let rows: Vec<&[i64]> = roots.into_iter().map(|i| rs.root(i)).collect();
    let m = IntMatrix::from_rows(rs.rank(), rows).expect("roots have ambient rank length");
    Lattice::new(&m)
}

/// Smallest root subsystem containing `roots`: (Span_ℤ S) ∩ Φ.
pub fn closure(rs: &RootSystem, roots: impl IntoIterator<Item = usize>) -> Subsystem {
    let lattice = lattice_of(rs, roots);
    let mut out = Subsystem::empty();
    if lattice.rank() == 0 {
        return out;
    }
    for i in 0..rs.n_positive() {
        if lattice.contains(rs.root(i)).expect("dimensions agree") {
            out.insert(i);
            out.insert(rs.neg(i));
        }
    }
    out
}

/// Rank of the span of the roots in Ψ.
pub fn subsystem_rank(rs: &RootSystem, psi: &Subsystem) -> usize {
    let rows: Vec<&[i64]> = psi.iter().map(|i| rs.root(i)).collect();
    integer_rank(&IntMatrix::from_rows(rs.rank(), rows).expect("roots have ambient rank length"))
}

/// Checks the three defining conditions directly: symmetric, closed under
/// sums that are roots, and saturated ((Span_ℤ Ψ) ∩ Φ = Ψ).
pub fn is_subsystem(rs: &RootSystem, psi: &Subsystem) -> bool {
    let symmetric = psi.iter().all(|i| psi.contains(rs.neg(i)));
    let closed = psi
        .iter()
        .all(|a| psi.iter().all(|b| rs.sum(a, b).map_or(true, |s| psi.contains(s))));
    symmetric && closed && closure(rs, psi.iter()) == *psi
}

/// All root subsystems of `rs`, sorted by mask.
///
/// Every subsystem is the closure of a base, and the closure does not change
/// when base elements are replaced by their negatives, so it suffices to
/// close linearly independent sets of positive roots of size ≤ rank.
pub fn enumerate_subsystems(rs: &RootSystem, limits: &Limits) -> Result<Vec<Subsystem>, CapabilityError> {
    if rs.rank() > limits.max_rank {
        return Err(CapabilityError::RankLimit {
            spec: rs.spec().to_string(),
            rank: rs.rank(),
            limit: limits.max_rank,
        });
    }
    let npos = rs.n_positive();
    // candidate bases by first element; each worker walks its own subtree
    let found: HashSet<Subsystem> = (0..npos)
        .into_par_iter()
        .map(|first| {
            let mut acc = HashSet::new();
            let mut stack = vec![first];
            extend_bases(rs, &mut stack, &mut acc);
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut all: Vec<Subsystem> = found.into_iter().collect();
    all.push(Subsystem::empty());
    all.sort();
    all.dedup();
    Ok(all)
}

fn extend_bases(rs: &RootSystem, stack: &mut Vec<usize>, acc: &mut HashSet<Subsystem>) {
    acc.insert(closure(rs, stack.iter().copied()));
    if stack.len() == rs.rank() {
        return;
    }
    let last = *stack.last().expect("nonempty");
    for next in last + 1..rs.n_positive() {
        stack.push(next);
        if subsystem_rank_of(rs, stack) == stack.len() {
            extend_bases(rs, stack, acc);
        }
        stack.pop();
    }
}

fn subsystem_rank_of(rs: &RootSystem, roots: &[usize]) -> usize {
    let rows: Vec<&[i64]> = roots.iter().map(|&i| rs.root(i)).collect();
    integer_rank(&IntMatrix::from_rows(rs.rank(), rows).expect("roots have ambient rank length"))
}

/// W-orbit of Ψ, by breadth-first search over the simple reflections.
pub fn weyl_orbit(rs: &RootSystem, psi: &Subsystem) -> Vec<Subsystem> {
    let mut seen = HashSet::from([*psi]);
    let mut order = vec![*psi];
    let mut queue = VecDeque::from([*psi]);
    while let Some(cur) = queue.pop_front() {
        for g in rs.weyl_gens() {
            let img = cur.permute(g);
            if seen.insert(img) {
                order.push(img);
                queue.push_back(img);
            }
        }
    }
    order.sort();
    order
}

/// |W_Φ : W_Ψ|, from the identified type of Ψ.
pub fn weyl_index(rs: &RootSystem, psi: &Subsystem) -> u128 {
    rs.weyl_order() / rs.identify_type(psi).weyl_order()
}

/// m(Ψ) = |W_Φ : W_Ψ| · |W·Ψ|.
pub fn embedding_number(rs: &RootSystem, psi: &Subsystem) -> u128 {
    weyl_index(rs, psi) * weyl_orbit(rs, psi).len() as u128
}

/// One W-conjugacy class of root subsystems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemClass {
    pub class_id: usize,
    pub representative: Subsystem,
    pub orbit_size: usize,
    pub weyl_index: u128,
    pub embedding_number: u128,
    pub label: TypeLabel,
    pub rank: usize,
    pub dim_top: u64,
}

/// Partition of the subsystems into W-orbits.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    pub classes: Vec<SubsystemClass>,
    /// class id of each entry of the subsystem list
    pub class_of: Vec<usize>,
}

fn norm_profile(rs: &RootSystem, psi: &Subsystem) -> Vec<i64> {
    let mut n: Vec<i64> = psi.iter().map(|i| rs.norm(i)).collect();
    n.sort_unstable_by(|a, b| b.cmp(a));
    n
}

/// Groups `subsystems` (which must be the complete list) into W-orbits and
/// numbers the classes by (dim_top desc, label, long roots first,
/// representative mask).
pub fn conjugacy_classes(rs: &RootSystem, subsystems: &[Subsystem]) -> ClassPartition {
    let position: HashMap<Subsystem, usize> = subsystems.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut slot = vec![usize::MAX; subsystems.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for (i, psi) in subsystems.iter().enumerate() {
        if slot[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = weyl_orbit(rs, psi)
            .iter()
            .map(|s| *position.get(s).expect("orbit stays inside the subsystem list"))
            .collect();
        for &m in &members {
            slot[m] = orbits.len();
        }
        orbits.push(members);
    }
    let mut classes: Vec<SubsystemClass> = orbits
        .iter()
        .map(|members| {
            let rep = members.iter().map(|&m| subsystems[m]).min().expect("orbit nonempty");
            let label = rs.identify_type(&rep);
            let weyl_index = rs.weyl_order() / label.weyl_order();
            SubsystemClass {
                class_id: 0,
                representative: rep,
                orbit_size: members.len(),
                weyl_index,
                embedding_number: weyl_index * members.len() as u128,
                rank: label.rank(),
                label,
                dim_top: dim_top(rs, &rep),
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (&classes[a], &classes[b]);
        y.dim_top
            .cmp(&x.dim_top)
            .then_with(|| x.label.render().cmp(&y.label.render()))
            .then_with(|| norm_profile(rs, &y.representative).cmp(&norm_profile(rs, &x.representative)))
            .then_with(|| x.representative.cmp(&y.representative))
    });
    let mut new_id = vec![0; classes.len()];
    for (id, &old) in order.iter().enumerate() {
        new_id[old] = id;
    }
    for (old, c) in classes.iter_mut().enumerate() {
        c.class_id = new_id[old];
    }
    classes.sort_by_key(|c| c.class_id);
    let class_of = slot.iter().map(|&s| new_id[s]).collect();
    ClassPartition { classes, class_of }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::TypeSpec;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(&s.parse::<TypeSpec>().unwrap()).unwrap()
    }

    fn long_roots(r: &RootSystem) -> Vec<usize> {
        let max = (0..r.len()).map(|i| r.norm(i)).max().unwrap();
        (0..r.len()).filter(|&i| r.norm(i) == max).collect()
    }

    #[test]
    fn mask_basics() {
        let s = Subsystem::from_indices([3, 70, 200]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.indices(), vec![3, 70, 200]);
        assert!(s.contains(70) && !s.contains(71));
        assert!(Subsystem::from_indices([3]).is_subset(&s));
        assert!(!s.is_subset(&Subsystem::from_indices([3, 70])));
        assert!(Subsystem::from_indices([0, 5]) < Subsystem::from_indices([1]));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[3,70,200]");
        assert_eq!(serde_json::from_str::<Subsystem>(&json).unwrap(), s);
    }

    #[test]
    fn closure_examples() {
        let g2 = rs("G2");
        assert!(closure(&g2, []).is_empty());
        assert_eq!(closure(&g2, [0]), Subsystem::from_indices([0, g2.neg(0)]));
        let long = long_roots(&g2);
        // two long roots at 120 degrees
        let a = long[0];
        let b = *long.iter().find(|&&b| g2.cartan_pairing(b, a) == -1).unwrap();
        assert_eq!(closure(&g2, [a, b]), Subsystem::from_indices(long));

        let b2 = rs("B2");
        let short: Vec<usize> = (0..b2.n_positive()).filter(|&i| b2.norm(i) == 1).collect();
        assert_eq!(short.len(), 2);
        assert_eq!(closure(&b2, short).len(), 8);
    }

    #[test]
    fn small_enumerations() {
        let lim = Limits::default();
        assert_eq!(enumerate_subsystems(&rs("A1"), &lim).unwrap().len(), 2);
        assert_eq!(enumerate_subsystems(&rs("B2"), &lim).unwrap().len(), 7);
        assert_eq!(enumerate_subsystems(&rs("G2"), &lim).unwrap().len(), 12);
        assert_eq!(enumerate_subsystems(&rs("A2"), &lim).unwrap().len(), 5);
    }

    #[test]
    fn rank_limit_is_a_capability_error() {
        let e6 = rs("E6");
        assert!(matches!(
            enumerate_subsystems(&e6, &Limits::default()),
            Err(CapabilityError::RankLimit { rank: 6, limit: 4, .. })
        ));
    }

    #[test]
    fn orbits() {
        let g2 = rs("G2");
        assert_eq!(weyl_orbit(&g2, &Subsystem::empty()), vec![Subsystem::empty()]);
        let full = Subsystem::full(12);
        assert_eq!(weyl_orbit(&g2, &full), vec![full]);
        let subs = enumerate_subsystems(&g2, &Limits::default()).unwrap();
        let a1sq: Vec<&Subsystem> = subs.iter().filter(|s| g2.identify_type(s).render() == "A1^2").collect();
        assert_eq!(a1sq.len(), 3);
        assert_eq!(weyl_orbit(&g2, a1sq[0]).len(), 3);
    }

    #[test]
    fn g2_embedding_numbers() {
        let g2 = rs("G2");
        let subs = enumerate_subsystems(&g2, &Limits::default()).unwrap();
        let part = conjugacy_classes(&g2, &subs);
        let got: Vec<(String, u128)> = part
            .classes
            .iter()
            .map(|c| (c.label.render(), c.embedding_number))
            .collect();
        assert_eq!(
            got,
            vec![
                ("G2".to_string(), 1),
                ("A2".to_string(), 2),
                ("A1^2".to_string(), 9),
                ("A1".to_string(), 18),
                ("A1".to_string(), 18),
                ("".to_string(), 12),
            ]
        );
        assert_eq!(embedding_number(&g2, &Subsystem::full(12)), 1);
        assert_eq!(embedding_number(&g2, &Subsystem::empty()), 12);
        for (psi, &c) in subs.iter().zip(&part.class_of) {
            assert_eq!(g2.identify_type(psi), part.classes[c].label);
        }
    }

    #[test]
    fn dimensions() {
        let g2 = rs("G2");
        assert_eq!(dim_top(&g2, &Subsystem::empty()), 0);
        assert_eq!(dim_top(&g2, &closure(&g2, [0])), 4);
        assert_eq!(dim_top(&g2, &Subsystem::full(12)), 40);
    }
}
