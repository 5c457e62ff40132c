//! Crystallographic root systems in the simple-root basis.
//!
//! Roots are integer coordinate vectors with respect to the simple roots, so
//! every vector here is exact. The inner product is carried by an integer
//! Gram matrix of the simple roots; only Cartan integers are ever derived
//! from it.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::subsystem::Subsystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("cannot parse type string {0:?}")]
    Parse(String),
    #[error("no simple Lie algebra of type {family}{rank}")]
    InvalidRank { family: Family, rank: usize },
    #[error("root systems with more than {max} roots are not supported")]
    TooLarge { max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// One simple factor, e.g. `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    pub fn new(family: Family, rank: usize) -> Result<Self, TypeError> {
        let ok = match family {
            Family::A | Family::B | Family::C => rank >= 1,
            Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(TypeError::InvalidRank { family, rank })
        }
    }

    /// Folds the low-rank coincidences onto one name each:
    /// rank one is `A1`, `C2` is `B2`, `D2` is `A1A1`, `D3` is `A3`.
    pub fn canonical(self) -> Vec<Component> {
        use Family::*;
        let c = |family, rank| Component { family, rank };
        match (self.family, self.rank) {
            (_, 1) => vec![c(A, 1)],
            (C, 2) => vec![c(B, 2)],
            (D, 2) => vec![c(A, 1), c(A, 1)],
            (D, 3) => vec![c(A, 3)],
            _ => vec![self],
        }
    }

    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Gram matrix of the simple roots (Bourbaki numbering), scaled to be
    /// integral.
    fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut g = vec![vec![0i64; n]; n];
        let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 1..n {
                    link(&mut g, i - 1, i, -1);
                }
            }
            Family::B => {
                // long roots have square length 2, the last simple root 1
                for i in 0..n {
                    g[i][i] = 2;
                }
                g[n - 1][n - 1] = 1;
                for i in 1..n {
                    link(&mut g, i - 1, i, -1);
                }
            }
            Family::C => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                g[n - 1][n - 1] = 4;
                for i in 1..n - 1 {
                    link(&mut g, i - 1, i, -1);
                }
                if n >= 2 {
                    link(&mut g, n - 2, n - 1, -2);
                }
            }
            Family::D => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                for i in 1..n - 1 {
                    link(&mut g, i - 1, i, -1);
                }
                if n >= 3 {
                    link(&mut g, n - 3, n - 1, -1);
                }
            }
            Family::E => {
                for i in 0..n {
                    g[i][i] = 2;
                }
                // 1-3-4-5-6-7-8 with 2 attached to 4
                link(&mut g, 0, 2, -1);
                link(&mut g, 1, 3, -1);
                for i in 3..n {
                    link(&mut g, i - 1, i, -1);
                }
            }
            Family::F => {
                g[0][0] = 4;
                g[1][1] = 4;
                g[2][2] = 2;
                g[3][3] = 2;
                link(&mut g, 0, 1, -2);
                link(&mut g, 1, 2, -2);
                link(&mut g, 2, 3, -1);
            }
            Family::G => {
                // first simple root short, second long
                g[0][0] = 2;
                g[1][1] = 6;
                link(&mut g, 0, 1, -3);
            }
        }
        g
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// The Lie type requested by a caller: an ordered list of simple factors.
///
/// Construction canonicalizes each factor (see [`Component::canonical`]) but
/// keeps the order, since the order fixes the coordinate layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeSpec {
    components: Vec<Component>,
}

impl TypeSpec {
    pub fn new(components: impl IntoIterator<Item = Component>) -> Self {
        Self {
            components: components.into_iter().flat_map(Component::canonical).collect(),
        }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn label(&self) -> TypeLabel {
        TypeLabel::new(self.components.iter().copied())
    }

    pub fn weyl_order(&self) -> u128 {
        weyl_order(self)
    }
}

impl FromStr for TypeSpec {
    type Err = TypeError;

    /// Grammar: one or more `<family><rank>` tokens, each optionally
    /// followed by `^<count>`, e.g. `G2`, `A1A1`, `A1^2B2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || TypeError::Parse(s.to_string());
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.is_empty() {
            return Err(err());
        }
        let mut comps = Vec::new();
        let mut i = 0;
        let number = |i: &mut usize| -> Option<usize> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            chars[start..*i].iter().collect::<String>().parse().ok()
        };
        while i < chars.len() {
            let family = Family::from_char(chars[i].to_ascii_uppercase()).ok_or_else(err)?;
            i += 1;
            let rank = number(&mut i).ok_or_else(err)?;
            let mut count = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                count = number(&mut i).filter(|&k| k > 0).ok_or_else(err)?;
            }
            let c = Component::new(family, rank)?;
            comps.extend(std::iter::repeat_n(c, count));
        }
        Ok(TypeSpec::new(comps))
    }
}

impl fmt::Display for TypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Isomorphism type of a (sub)system, as a sorted multiset of canonical
/// simple factors. Renders multiplicatively, e.g. `A1^2B2`; the trivial
/// label renders as the empty string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TypeLabel(Vec<Component>);

impl TypeLabel {
    pub fn new(components: impl IntoIterator<Item = Component>) -> Self {
        let mut v: Vec<Component> = components.into_iter().flat_map(Component::canonical).collect();
        v.sort();
        Self(v)
    }

    pub fn trivial() -> Self {
        Self(Vec::new())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[Component] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|c| c.rank).sum()
    }

    pub fn weyl_order(&self) -> u128 {
        self.0.iter().map(Component::weyl_order).product()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let c = self.0[i];
            let mut k = 1;
            while i + k < self.0.len() && self.0[i + k] == c {
                k += 1;
            }
            out.push_str(&c.to_string());
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
            i += k;
        }
        out
    }
}

impl FromStr for TypeLabel {
    type Err = TypeError;

    /// Accepts the rendered form; the empty string is the trivial label.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Ok(Self::trivial());
        }
        Ok(s.parse::<TypeSpec>()?.label())
    }
}

impl Serialize for TypeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for TypeLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "0")
        } else {
            write!(f, "{}", self.render())
        }
    }
}

/// Product of the classical Weyl group orders of the factors.
pub fn weyl_order(spec: &TypeSpec) -> u128 {
    spec.components.iter().map(Component::weyl_order).product()
}

/// Which G2 simple root is long; recorded in atlas metadata.
pub const CARTAN_CONVENTION: &str =
    "Bourbaki numbering; B_n: last simple root short; C_n: last simple root long; \
     F4: roots 1,2 long; G2: simple root 1 short, simple root 2 long";

/// Hard cap from the fixed-width subsystem masks.
pub const MAX_ROOTS: usize = 256;

/// A root system with all roots listed, Cartan integers for every pair and
/// the simple reflections as permutations of the root list.
///
/// Root order: positive roots sorted by height (simple roots first, in
/// order), then the negatives in the same order, so `neg(i) = i ± n_pos`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    spec: TypeSpec,
    rank: usize,
    roots: Vec<Vec<i64>>,
    n_positive: usize,
    gram: Vec<Vec<i64>>,
    norms: Vec<i64>,
    pairing: Vec<i8>,
    weyl_gens: Vec<Vec<usize>>,
    negation: Vec<usize>,
    index: HashMap<Vec<i64>, usize>,
    max_height: i64,
}

impl RootSystem {
    pub fn new(spec: &TypeSpec) -> Result<Self, TypeError> {
        let rank = spec.rank();
        let mut gram = vec![vec![0i64; rank]; rank];
        let mut off = 0;
        for c in spec.components() {
            let g = c.gram();
            for i in 0..c.rank {
                for j in 0..c.rank {
                    gram[off + i][off + j] = g[i][j];
                }
            }
            off += c.rank;
        }
        let ip = |a: &[i64], b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..rank {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..rank {
                    s += a[i] * gram[i][j] * b[j];
                }
            }
            s
        };
        let simple: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                v
            })
            .collect();

        // close the simple roots under the simple reflections
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for s in &simple {
            seen.insert(s.clone(), ());
            queue.push_back(s.clone());
        }
        while let Some(beta) = queue.pop_front() {
            for a in &simple {
                let n = 2 * ip(&beta, a) / ip(a, a);
                let img: Vec<i64> = beta.iter().zip(a).map(|(b, x)| b - n * x).collect();
                if !seen.contains_key(&img) {
                    if seen.len() >= MAX_ROOTS {
                        return Err(TypeError::TooLarge { max: MAX_ROOTS });
                    }
                    seen.insert(img.clone(), ());
                    queue.push_back(img);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = seen.into_keys().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_positive = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        if roots.len() > MAX_ROOTS {
            return Err(TypeError::TooLarge { max: MAX_ROOTS });
        }
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let norms: Vec<i64> = roots.iter().map(|r| ip(r, r)).collect();
        let n = roots.len();
        let mut pairing = vec![0i8; n * n];
        for b in 0..n {
            for a in 0..n {
                let num = 2 * ip(&roots[b], &roots[a]);
                debug_assert_eq!(num % norms[a], 0);
                pairing[b * n + a] = (num / norms[a]) as i8;
            }
        }
        let negation: Vec<usize> = (0..n).map(|i| (i + n_positive) % n).collect();
        let reflect_vec = |a: usize, b: usize| -> Vec<i64> {
            let k = pairing[b * n + a] as i64;
            roots[b].iter().zip(&roots[a]).map(|(x, y)| x - k * y).collect()
        };
        let weyl_gens: Vec<Vec<usize>> = (0..rank)
            .map(|s| (0..n).map(|b| index[&reflect_vec(s, b)]).collect())
            .collect();
        let max_height = roots[..n_positive].iter().map(|r| r.iter().sum::<i64>()).max().unwrap_or(0);

        Ok(Self {
            spec: spec.clone(),
            rank,
            roots,
            n_positive,
            gram,
            norms,
            pairing,
            weyl_gens,
            negation,
            index,
            max_height,
        })
    }

    pub fn spec(&self) -> &TypeSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn n_positive(&self) -> usize {
        self.n_positive
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_positive
    }

    pub fn simple_indices(&self) -> Vec<usize> {
        (0..self.rank).collect()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Squared length of root `i` in the integral normalization.
    pub fn norm(&self, i: usize) -> i64 {
        self.norms[i]
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn neg(&self, i: usize) -> usize {
        self.negation[i]
    }

    pub fn negation(&self) -> &[usize] {
        &self.negation
    }

    pub fn weyl_gens(&self) -> &[Vec<usize>] {
        &self.weyl_gens
    }

    pub fn max_height(&self) -> i64 {
        self.max_height
    }

    pub fn weyl_order(&self) -> u128 {
        self.spec.weyl_order()
    }

    /// n(β, α) = 2(β, α)/(α, α).
    pub fn cartan_pairing(&self, beta: usize, alpha: usize) -> i64 {
        self.pairing[beta * self.len() + alpha] as i64
    }

    /// Index of s_α(β) = β − n(β, α)·α.
    pub fn reflect(&self, alpha: usize, beta: usize) -> usize {
        let k = self.cartan_pairing(beta, alpha);
        let v: Vec<i64> = self.roots[beta].iter().zip(&self.roots[alpha]).map(|(b, a)| b - k * a).collect();
        self.index[&v]
    }

    /// Index of α + β if that is a root.
    pub fn sum(&self, alpha: usize, beta: usize) -> Option<usize> {
        let v: Vec<i64> = self.roots[alpha].iter().zip(&self.roots[beta]).map(|(a, b)| a + b).collect();
        self.index_of(&v)
    }

    /// Generic functional used to split a subsystem into positive and
    /// negative halves: coefficients (1, N, N², …) with N = 1 + max height.
    pub fn functional(&self, i: usize) -> i128 {
        let n = (self.max_height + 1) as i128;
        let mut w = 1i128;
        let mut s = 0i128;
        for &x in &self.roots[i] {
            s += x as i128 * w;
            w *= n;
        }
        s
    }

    /// Whether all roots share one length (simply laced).
    pub fn is_simply_laced(&self) -> bool {
        self.norms.iter().all(|&x| x == self.norms[0])
    }

    /// A base of the subsystem: the positive roots of Ψ (under the generic
    /// functional) that are not a sum of two positive roots of Ψ.
    pub fn simple_system(&self, psi: &Subsystem) -> Vec<usize> {
        let pos: Vec<usize> = psi.iter().filter(|&i| self.functional(i) > 0).collect();
        pos.iter()
            .copied()
            .filter(|&b| {
                !pos.iter().any(|&g| {
                    let diff: Vec<i64> = self.roots[b].iter().zip(&self.roots[g]).map(|(x, y)| x - y).collect();
                    self.index_of(&diff).is_some_and(|d| psi.contains(d) && self.functional(d) > 0)
                })
            })
            .collect()
    }

    /// Dynkin type of a subsystem.
    pub fn identify_type(&self, psi: &Subsystem) -> TypeLabel {
        let base = self.simple_system(psi);
        let cartan: Vec<Vec<i64>> = base
            .iter()
            .map(|&i| base.iter().map(|&j| self.cartan_pairing(i, j)).collect())
            .collect();
        classify_cartan(&cartan).expect("a base of a root subsystem has a finite-type Cartan matrix")
    }
}

/// Splits a Cartan matrix (entry (i, j) = n(α_i, α_j)) into connected
/// components and names each one.
pub fn classify_cartan(cartan: &[Vec<i64>]) -> Option<TypeLabel> {
    let n = cartan.len();
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut k = 0;
        while k < members.len() {
            let v = members[k];
            for w in 0..n {
                if w != v && cartan[v][w] != 0 && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
            k += 1;
        }
        comps.push(members);
    }
    let mut out = Vec::new();
    for members in comps {
        let sub: Vec<Vec<i64>> = members
            .iter()
            .map(|&i| members.iter().map(|&j| cartan[i][j]).collect())
            .collect();
        out.push(classify_connected(&sub)?);
    }
    Some(TypeLabel::new(out))
}

fn classify_connected(a: &[Vec<i64>]) -> Option<Component> {
    let n = a.len();
    if n == 1 {
        return (a[0][0] == 2).then_some(Component { family: Family::A, rank: 1 });
    }
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for i in 0..n {
        if a[i][i] != 2 {
            return None;
        }
        for j in i + 1..n {
            let bond = a[i][j] * a[j][i];
            if bond != 0 {
                if a[i][j] >= 0 || a[j][i] >= 0 || bond > 3 {
                    return None;
                }
                degree[i] += 1;
                degree[j] += 1;
                edges.push((i, j, bond));
            }
        }
    }
    if edges.len() != n - 1 {
        return None; // a cycle
    }
    let comp = |family, rank| Some(Component { family, rank });
    let multi: Vec<&(usize, usize, i64)> = edges.iter().filter(|e| e.2 > 1).collect();
    match multi.as_slice() {
        [] => {}
        [&(_, _, 3)] => return (n == 2).then_some(Component { family: Family::G, rank: 2 }),
        [&(i, j, 2)] => {
            if degree.iter().any(|&d| d > 2) {
                return None;
            }
            if n == 2 {
                return comp(Family::B, 2);
            }
            // |n(α_i, α_j)| = 2 means α_i is the long one
            let (long, short) = if a[i][j] == -2 { (i, j) } else { (j, i) };
            if degree[short] == 1 {
                return comp(Family::B, n);
            }
            if degree[long] == 1 {
                return comp(Family::C, n);
            }
            return (n == 4).then_some(Component { family: Family::F, rank: 4 });
        }
        _ => return None,
    }
    let branch: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
    match branch.as_slice() {
        [] => comp(Family::A, n),
        [b] if degree[*b] == 3 => {
            // arm lengths from the branch node
            let mut arms = Vec::new();
            for &(i, j, _) in &edges {
                let start = if i == *b {
                    j
                } else if j == *b {
                    i
                } else {
                    continue;
                };
                let (mut prev, mut cur, mut len) = (*b, start, 1);
                loop {
                    let next = (0..n).find(|&w| w != prev && w != cur && a[cur][w] != 0);
                    match next {
                        Some(w) => {
                            prev = cur;
                            cur = w;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort();
            match arms.as_slice() {
                [1, 1, k] => comp(Family::D, k + 3),
                [1, 2, 2] => comp(Family::E, 6),
                [1, 2, 3] => comp(Family::E, 7),
                [1, 2, 4] => comp(Family::E, 8),
                _ => None,
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_and_fold() {
        assert_eq!("G2".parse::<TypeSpec>().unwrap().to_string(), "G2");
        assert_eq!("A1A1".parse::<TypeSpec>().unwrap().to_string(), "A1A1");
        assert_eq!("D3".parse::<TypeSpec>().unwrap().to_string(), "A3");
        assert_eq!("D2".parse::<TypeSpec>().unwrap().to_string(), "A1A1");
        assert_eq!("C2".parse::<TypeSpec>().unwrap().to_string(), "B2");
        assert_eq!("B1".parse::<TypeSpec>().unwrap().to_string(), "A1");
        assert_eq!("A1^2B2".parse::<TypeSpec>().unwrap().to_string(), "A1A1B2");
        assert!(matches!("Z9".parse::<TypeSpec>(), Err(TypeError::Parse(_))));
        assert!(matches!("G3".parse::<TypeSpec>(), Err(TypeError::InvalidRank { .. })));
        assert!(matches!("E5".parse::<TypeSpec>(), Err(TypeError::InvalidRank { .. })));
        assert!("".parse::<TypeSpec>().is_err());
        assert!("A".parse::<TypeSpec>().is_err());
        assert!("A0".parse::<TypeSpec>().is_err());
    }

    #[test]
    fn labels_render_multiplicatively() {
        let spec: TypeSpec = "B2A1A1".parse().unwrap();
        assert_eq!(spec.label().render(), "A1^2B2");
        assert_eq!(TypeLabel::trivial().render(), "");
        assert_eq!(TypeLabel::trivial().to_string(), "0");
    }

    #[test]
    fn root_counts() {
        for (t, n) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("A4", 20),
            ("B2", 8),
            ("B3", 18),
            ("B4", 32),
            ("C3", 18),
            ("C4", 32),
            ("D4", 24),
            ("F4", 48),
            ("G2", 12),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
            ("A1A1", 4),
        ] {
            assert_eq!(rs(t).len(), n, "{t}");
        }
    }

    #[test]
    fn g2_has_six_long_and_six_short() {
        let g2 = rs("G2");
        let long = (0..12).filter(|&i| g2.norm(i) == 6).count();
        let short = (0..12).filter(|&i| g2.norm(i) == 2).count();
        assert_eq!((long, short), (6, 6));
    }

    #[test]
    fn g2_pairings() {
        let g2 = rs("G2");
        assert_eq!(g2.cartan_pairing(0, 1), -1);
        assert_eq!(g2.cartan_pairing(1, 0), -3);
        for i in 0..g2.len() {
            assert_eq!(g2.cartan_pairing(i, i), 2);
        }
    }

    #[test]
    fn reflections_are_involutions() {
        for t in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"] {
            let r = rs(t);
            for a in 0..r.len() {
                assert_eq!(r.reflect(a, a), r.neg(a));
                for b in 0..r.len() {
                    assert_eq!(r.reflect(a, r.reflect(a, b)), b);
                    if r.cartan_pairing(b, a) == 0 {
                        assert_eq!(r.reflect(a, b), b);
                    }
                    assert!(matches!(r.cartan_pairing(b, a), -3..=3));
                }
            }
        }
    }

    #[test]
    fn weyl_orders() {
        let w = |s: &str| s.parse::<TypeSpec>().unwrap().weyl_order();
        assert_eq!(w("A1"), 2);
        assert_eq!(w("G2"), 12);
        assert_eq!(w("B4"), 384);
        assert_eq!(w("F4"), 1152);
        assert_eq!(w("D4"), 192);
        assert_eq!(w("E8"), 696_729_600);
        assert_eq!(w("A1A1B2"), 32);
    }

    #[test]
    fn simple_roots_come_first() {
        let f4 = rs("F4");
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            assert_eq!(f4.root(i), e.as_slice());
        }
        assert_eq!(f4.n_positive(), 24);
        assert_eq!(f4.max_height(), 11);
    }

    #[test]
    fn whole_system_identifies_as_itself() {
        for t in ["A1", "A4", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "E6", "E7", "E8", "A1A1", "G2B3A1"] {
            let r = rs(t);
            let full = Subsystem::full(r.len());
            assert_eq!(r.identify_type(&full), r.spec().label(), "{t}");
            assert_eq!(r.simple_system(&full), r.simple_indices());
        }
    }

    #[test]
    fn g2_long_roots_are_a2() {
        let g2 = rs("G2");
        let long = Subsystem::from_indices((0..12).filter(|&i| g2.norm(i) == 6));
        let base = g2.simple_system(&long);
        assert_eq!(base.len(), 2);
        assert_eq!(g2.cartan_pairing(base[0], base[1]), -1);
        assert_eq!(g2.cartan_pairing(base[1], base[0]), -1);
        assert_eq!(g2.identify_type(&long).render(), "A2");
    }

    #[test]
    fn trivial_and_rank_one() {
        let b2 = rs("B2");
        assert!(b2.simple_system(&Subsystem::empty()).is_empty());
        assert!(b2.identify_type(&Subsystem::empty()).is_trivial());
        let pair = Subsystem::from_indices([b2.neg(1), 1]);
        assert_eq!(b2.simple_system(&pair), vec![1]);
        assert_eq!(b2.identify_type(&pair).render(), "A1");
    }

    #[test]
    fn classify_b_versus_c() {
        // C3 in Bourbaki form: last root long
        let c3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]];
        assert_eq!(classify_cartan(&c3).unwrap().render(), "C3");
        let b3 = vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]];
        assert_eq!(classify_cartan(&b3).unwrap().render(), "B3");
        let cyc = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(classify_cartan(&cyc).is_none());
    }
}
