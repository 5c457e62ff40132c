//! Fine and coarse stratification posets and their Hasse diagrams.
//!
//! The fine poset has one node per root subsystem, ordered by inclusion. The
//! coarse poset has one node per conjugacy class, with `[Ψ₁] ≤ [Ψ₂]` iff
//! some conjugate of Ψ₁ is contained in Ψ₂. Nodes are layered by the real
//! dimension of the top stratum, `4(|Ψ| − rk Ψ)`.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atlas::Atlas;
use crate::root_system::RootSystem;
use crate::subsystem::{subsystem_rank, weyl_orbit, Subsystem, SubsystemClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not reflexive at node {0}")]
    NotReflexive(usize),
    #[error("relation has a cycle through nodes {0} and {1}")]
    Cycle(usize, usize),
    #[error("relation is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("covers reference node {0}, but the poset has {1} nodes")]
    NodeOutOfRange(usize, usize),
}

/// A finite poset given by its up-sets: `leq[i]` holds every `j` with
/// `i ≤ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratPoset {
    /// Index of each node in the atlas subsystem list (fine) or class list
    /// (coarse).
    pub nodes: Vec<usize>,
    pub leq: Vec<FixedBitSet>,
    /// Cover edges `(lower, upper)`, sorted.
    pub covers: Vec<(usize, usize)>,
    /// Diagram level of each node (dim_top).
    pub level: Vec<u64>,
}

impl StratPoset {
    pub fn from_relation(nodes: Vec<usize>, leq: Vec<FixedBitSet>, level: Vec<u64>) -> Result<Self, PosetError> {
        let covers = transitive_reduction(&leq)?;
        Ok(Self {
            nodes,
            leq,
            covers,
            level,
        })
    }

    /// Rebuilds the order from cover edges by transitive closure.
    pub fn from_covers(nodes: Vec<usize>, covers: Vec<(usize, usize)>, level: Vec<u64>) -> Result<Self, PosetError> {
        let n = nodes.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &covers {
            if a >= n || b >= n {
                return Err(PosetError::NodeOutOfRange(a.max(b), n));
            }
            up[a].push(b);
        }
        // memoized DFS; a node on the current path means a cycle
        let mut leq: Vec<Option<FixedBitSet>> = vec![None; n];
        let mut on_path = vec![false; n];
        fn visit(
            v: usize,
            up: &[Vec<usize>],
            leq: &mut Vec<Option<FixedBitSet>>,
            on_path: &mut [bool],
        ) -> Result<(), PosetError> {
            if leq[v].is_some() {
                return Ok(());
            }
            on_path[v] = true;
            let mut set = FixedBitSet::with_capacity(up.len());
            set.insert(v);
            for &w in &up[v] {
                if on_path[w] {
                    return Err(PosetError::Cycle(v, w));
                }
                visit(w, up, leq, on_path)?;
                set.union_with(leq[w].as_ref().expect("visited"));
            }
            on_path[v] = false;
            leq[v] = Some(set);
            Ok(())
        }
        for v in 0..n {
            visit(v, &up, &mut leq, &mut on_path)?;
        }
        let leq: Vec<FixedBitSet> = leq.into_iter().map(|s| s.expect("all visited")).collect();
        let mut covers = covers;
        covers.sort_unstable();
        covers.dedup();
        Ok(Self {
            nodes,
            leq,
            covers,
            level,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a].contains(b)
    }

    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.leq[i].count_ones(..) == 1).collect()
    }

    pub fn minima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| j == i || !self.le(j, i)))
            .collect()
    }

    pub fn to_record(&self) -> PosetRecord {
        PosetRecord {
            nodes: self.nodes.clone(),
            covers: self.covers.clone(),
            levels: self.level.clone(),
        }
    }
}

/// Serialized form: the order itself is implied by the covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetRecord {
    pub nodes: Vec<usize>,
    pub covers: Vec<(usize, usize)>,
    pub levels: Vec<u64>,
}

impl TryFrom<PosetRecord> for StratPoset {
    type Error = PosetError;

    fn try_from(r: PosetRecord) -> Result<Self, PosetError> {
        StratPoset::from_covers(r.nodes, r.covers, r.levels)
    }
}

/// Validates that `leq` is a partial order and returns its cover relation
/// `(i, j)`: `i < j` with nothing strictly between.
pub fn transitive_reduction(leq: &[FixedBitSet]) -> Result<Vec<(usize, usize)>, PosetError> {
    let n = leq.len();
    for i in 0..n {
        if !leq[i].contains(i) {
            return Err(PosetError::NotReflexive(i));
        }
        for j in leq[i].ones() {
            if j >= n {
                return Err(PosetError::NodeOutOfRange(j, n));
            }
            if j != i && leq[j].contains(i) {
                return Err(PosetError::Cycle(i, j));
            }
            if !leq[j].is_subset(&leq[i]) {
                let k = leq[j].difference(&leq[i]).next().expect("nonempty difference");
                return Err(PosetError::NotTransitive(i, j, k));
            }
        }
    }
    // a strictly larger element has a strictly smaller up-set, so visiting
    // candidates by decreasing up-set size is a linear extension
    let size: Vec<usize> = leq.iter().map(|s| s.count_ones(..)).collect();
    let mut covers = Vec::new();
    let mut dominated = FixedBitSet::with_capacity(n);
    for i in 0..n {
        let mut cand: Vec<usize> = leq[i].ones().filter(|&j| j != i).collect();
        cand.sort_by(|&a, &b| size[b].cmp(&size[a]).then(a.cmp(&b)));
        dominated.clear();
        for k in cand {
            if dominated.contains(k) {
                continue;
            }
            covers.push((i, k));
            dominated.union_with(&leq[k]);
        }
    }
    covers.sort_unstable();
    Ok(covers)
}

/// Fine poset: subsystems ordered by inclusion.
pub fn fine_poset(rs: &RootSystem, subsystems: &[Subsystem]) -> StratPoset {
    let n = subsystems.len();
    let leq: Vec<FixedBitSet> = subsystems
        .iter()
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(n);
            for (j, b) in subsystems.iter().enumerate() {
                if a.is_subset(b) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let level = subsystems.iter().map(|s| dim_top(rs, s)).collect();
    StratPoset::from_relation((0..n).collect(), leq, level).expect("inclusion is a partial order")
}

/// `[Ψ₁] ≤ [Ψ₂]` iff some w·rep₁ ⊆ rep₂.
pub fn coarse_leq(rs: &RootSystem, lower: &SubsystemClass, upper: &SubsystemClass) -> bool {
    weyl_orbit(rs, &lower.representative)
        .iter()
        .any(|s| s.is_subset(&upper.representative))
}

/// Coarse poset: conjugacy classes under conjugate inclusion.
pub fn coarse_poset(rs: &RootSystem, classes: &[SubsystemClass]) -> StratPoset {
    let n = classes.len();
    let orbits: Vec<Vec<Subsystem>> = classes.iter().map(|c| weyl_orbit(rs, &c.representative)).collect();
    let leq: Vec<FixedBitSet> = (0..n)
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(n);
            for (b, cb) in classes.iter().enumerate() {
                if orbits[a].iter().any(|s| s.is_subset(&cb.representative)) {
                    row.insert(b);
                }
            }
            row
        })
        .collect();
    let level = classes.iter().map(|c| c.dim_top).collect();
    StratPoset::from_relation((0..n).collect(), leq, level).expect("conjugate inclusion is a partial order")
}

/// 4(|Ψ| − rk Ψ).
pub fn dim_top(rs: &RootSystem, psi: &Subsystem) -> u64 {
    4 * (psi.len() - subsystem_rank(rs, psi)) as u64
}

/// Diagram label `mL`: `m` is dropped when it is 1 and `L` when trivial.
pub fn node_label(class: &SubsystemClass) -> String {
    let l = class.label.render();
    match (class.embedding_number, l.is_empty()) {
        (1, false) => l,
        (m, _) => format!("{m}{l}"),
    }
}

/// One named pass/fail line of a [`ConsistencyReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub checks: Vec<Check>,
}

impl ConsistencyReport {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Re-derives the structural identities of an atlas from its stored data.
///
/// The geometric frontier condition is not decidable from combinatorics;
/// what is checked is its shadow: both orders are genuine partial orders,
/// the fine order is inclusion, and coarse covers lift to inclusions.
pub fn consistency_check(atlas: &Atlas) -> ConsistencyReport {
    let rs = &atlas.root_system;
    let w = rs.weyl_order();
    let mut report = ConsistencyReport::default();
    let full = Subsystem::full(rs.len());

    let class_of_mask = |s: &Subsystem| {
        atlas
            .subsystems
            .iter()
            .position(|x| x == s)
            .map(|i| &atlas.classes[atlas.class_of[i]])
    };
    let top = class_of_mask(&full);
    report.push(
        "m_top_is_one",
        top.is_some_and(|c| c.embedding_number == 1),
        format!("m(top) = {:?}", top.map(|c| c.embedding_number)),
    );
    let bottom = class_of_mask(&Subsystem::empty());
    report.push(
        "m_bottom_is_weyl_order",
        bottom.is_some_and(|c| c.embedding_number == w),
        format!("m(bottom) = {:?}, |W| = {w}", bottom.map(|c| c.embedding_number)),
    );

    let bad_product: Vec<usize> = atlas
        .classes
        .iter()
        .filter(|c| c.embedding_number != c.weyl_index * c.orbit_size as u128)
        .map(|c| c.class_id)
        .collect();
    report.push(
        "m_is_index_times_orbit",
        bad_product.is_empty(),
        format!("violating classes: {bad_product:?}"),
    );

    let bad_index: Vec<usize> = atlas
        .classes
        .iter()
        .filter(|c| c.weyl_index * c.label.weyl_order() != w)
        .map(|c| c.class_id)
        .collect();
    report.push(
        "weyl_index_integral",
        bad_index.is_empty(),
        format!("violating classes: {bad_index:?}"),
    );

    let sum_m: u128 = atlas.classes.iter().map(|c| c.embedding_number).sum();
    let sum_index: u128 = atlas
        .subsystems
        .iter()
        .map(|s| w / rs.identify_type(s).weyl_order())
        .sum();
    report.push(
        "sum_m_equals_sum_weyl_index",
        sum_m == sum_index,
        format!("sum over classes of m = {sum_m}, sum over subsystems of |W:W_psi| = {sum_index}"),
    );

    let orbit_total: usize = atlas.classes.iter().map(|c| c.orbit_size).sum();
    let bad_divides: Vec<usize> = atlas
        .classes
        .iter()
        .filter(|c| c.orbit_size == 0 || w % c.orbit_size as u128 != 0)
        .map(|c| c.class_id)
        .collect();
    report.push(
        "orbit_sizes_divide_weyl_order",
        bad_divides.is_empty(),
        format!("violating classes: {bad_divides:?}"),
    );
    report.push(
        "orbit_sizes_sum_to_subsystem_count",
        orbit_total == atlas.subsystems.len(),
        format!("{orbit_total} vs {}", atlas.subsystems.len()),
    );

    let mut sorted = atlas.subsystems.clone();
    sorted.sort();
    sorted.dedup();
    report.push(
        "subsystems_distinct",
        sorted.len() == atlas.subsystems.len(),
        format!("{} distinct of {}", sorted.len(), atlas.subsystems.len()),
    );

    for (name, poset) in [("fine", &atlas.fine), ("coarse", &atlas.coarse)] {
        let order = transitive_reduction(&poset.leq);
        let ok = matches!(&order, Ok(c) if *c == poset.covers);
        report.push(
            &format!("{name}_is_partial_order_with_reduced_covers"),
            ok,
            match order {
                Ok(_) if ok => String::new(),
                Ok(_) => "stored covers differ from the transitive reduction".to_string(),
                Err(e) => e.to_string(),
            },
        );
        let unique_max = poset.maxima().len() == 1;
        let unique_min = poset.minima().len() == 1;
        report.push(
            &format!("{name}_has_unique_extremes"),
            unique_max && unique_min,
            format!("maxima {:?}, minima {:?}", poset.maxima(), poset.minima()),
        );
        let flat: Vec<(usize, usize)> = poset
            .covers
            .iter()
            .copied()
            .filter(|&(a, b)| poset.level[a] >= poset.level[b])
            .collect();
        report.push(
            &format!("{name}_dim_strict_along_covers"),
            flat.is_empty(),
            format!("non-increasing covers: {flat:?}"),
        );
    }

    let n = atlas.subsystems.len();
    let mut inclusion_ok = atlas.fine.len() == n;
    if inclusion_ok {
        'outer: for i in 0..n {
            for j in 0..n {
                let a = &atlas.subsystems[atlas.fine.nodes[i]];
                let b = &atlas.subsystems[atlas.fine.nodes[j]];
                if atlas.fine.le(i, j) != a.is_subset(b) {
                    inclusion_ok = false;
                    break 'outer;
                }
            }
        }
    }
    report.push("fine_order_is_inclusion", inclusion_ok, "");

    let members: Vec<Vec<&Subsystem>> = {
        let mut m = vec![Vec::new(); atlas.classes.len()];
        for (s, &c) in atlas.subsystems.iter().zip(&atlas.class_of) {
            m[c].push(s);
        }
        m
    };
    let unlifted: Vec<(usize, usize)> = atlas
        .coarse
        .covers
        .iter()
        .copied()
        .filter(|&(a, b)| {
            let (ca, cb) = (atlas.coarse.nodes[a], atlas.coarse.nodes[b]);
            !members[ca].iter().any(|x| members[cb].iter().any(|y| x.is_subset(y)))
        })
        .collect();
    report.push(
        "coarse_covers_lift_to_inclusions",
        unlifted.is_empty(),
        format!("unlifted covers: {unlifted:?}"),
    );

    let bad_dims: Vec<usize> = atlas
        .classes
        .iter()
        .filter(|c| c.dim_top != dim_top(rs, &c.representative))
        .map(|c| c.class_id)
        .collect();
    report.push("dim_top_formula", bad_dims.is_empty(), format!("violating classes: {bad_dims:?}"));

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relation(n: usize, pairs: &[(usize, usize)]) -> Vec<FixedBitSet> {
        let mut leq: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(i);
                s
            })
            .collect();
        for &(a, b) in pairs {
            leq[a].insert(b);
        }
        leq
    }

    #[test]
    fn chain_and_antichain() {
        let chain = relation(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(transitive_reduction(&chain).unwrap(), vec![(0, 1), (1, 2)]);
        let anti = relation(4, &[]);
        assert!(transitive_reduction(&anti).unwrap().is_empty());
    }

    #[test]
    fn cycles_are_rejected() {
        let cyc = relation(2, &[(0, 1), (1, 0)]);
        assert!(matches!(transitive_reduction(&cyc), Err(PosetError::Cycle(..))));
        let not_trans = relation(3, &[(0, 1), (1, 2)]);
        assert!(matches!(transitive_reduction(&not_trans), Err(PosetError::NotTransitive(..))));
        let mut not_refl = relation(2, &[]);
        not_refl[1].set(1, false);
        assert_eq!(transitive_reduction(&not_refl), Err(PosetError::NotReflexive(1)));
    }

    #[test]
    fn closure_from_covers_round_trips() {
        let leq = relation(4, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
        let p = StratPoset::from_relation((0..4).collect(), leq.clone(), vec![0; 4]).unwrap();
        assert_eq!(p.covers, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        let q = StratPoset::try_from(p.to_record()).unwrap();
        assert_eq!(q.leq, leq);
        assert!(matches!(
            StratPoset::from_covers(vec![0, 1], vec![(0, 1), (1, 0)], vec![0, 0]),
            Err(PosetError::Cycle(..))
        ));
    }

    #[test]
    fn labels() {
        use crate::root_system::TypeLabel;
        let mk = |m: u128, label: &str| SubsystemClass {
            class_id: 0,
            representative: Subsystem::empty(),
            orbit_size: 1,
            weyl_index: m,
            embedding_number: m,
            label: if label.is_empty() {
                TypeLabel::trivial()
            } else {
                label.parse::<crate::root_system::TypeSpec>().unwrap().label()
            },
            rank: 0,
            dim_top: 0,
        };
        assert_eq!(node_label(&mk(1, "G2")), "G2");
        assert_eq!(node_label(&mk(9, "A1A1")), "9A1^2");
        assert_eq!(node_label(&mk(12, "")), "12");
    }
}
