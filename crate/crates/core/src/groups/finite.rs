use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::abelian::{prime_divisors, Prime};
use crate::{Error, Result};

/// Default bound on the order of groups built from tables or generators.
pub const DEFAULT_ORDER_CAP: usize = 2000;

/// A finite group on the elements `0..order`, stored as a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

/// JSON description of a group: a Cayley table or permutation generators.
///
/// Permutations act on `0..degree` and compose right to left:
/// `(a * b)(i) = a(b(i))`. Elements of a generated group are numbered with
/// the identity at `0` and the generators at `1..=k` in input order,
/// followed by the remaining elements in breadth-first order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Table { order: usize, table: Vec<Vec<usize>> },
    Permutations { perm_gens: Vec<Vec<usize>>, degree: usize },
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/m` with element `i` standing for `i mod m`.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1, "cyclic group of order zero");
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        let inverses = (0..m).map(|a| (m - a) % m).collect();
        let generators = if m > 1 { vec![1] } else { Vec::new() };
        FiniteGroup { table, identity: 0, inverses, generators }
    }

    /// The symmetric group on `n` letters, generated by a transposition and
    /// an `n`-cycle.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n <= 1 {
            return Ok(Self::trivial());
        }
        let mut gens = vec![(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>()];
        if n > 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.insert(0, t);
        }
        Self::from_permutations(&gens, n, DEFAULT_ORDER_CAP)
    }

    pub fn from_spec(spec: &GroupSpec, cap: usize) -> Result<Self> {
        match spec {
            GroupSpec::Table { order, table } => {
                if table.len() != *order {
                    return Err(Error::InvalidGroup(format!("declared order {order} but table has {} rows", table.len())));
                }
                Self::from_table(table.clone(), cap)
            }
            GroupSpec::Permutations { perm_gens, degree } => Self::from_permutations(perm_gens, *degree, cap),
        }
    }

    /// The table form of this group.
    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec::Table { order: self.order(), table: self.table.clone() }
    }

    /// Validates a Cayley table: Latin square, two-sided identity and
    /// associativity (Light's test over a generating set).
    pub fn from_table(table: Vec<Vec<usize>>, cap: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > cap {
            return Err(Error::OrderCap { order: n, cap });
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has length {}, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} out of range in row {a}")));
            }
            if !is_permutation(row) {
                return Err(Error::InvalidGroup(format!("row {a} repeats an element")));
            }
        }
        for b in 0..n {
            if !is_permutation(&(0..n).map(|a| table[a][b]).collect::<Vec<_>>()) {
                return Err(Error::InvalidGroup(format!("column {b} repeats an element")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let inverses: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("Latin square row contains the identity"))
            .collect();
        let mut g = FiniteGroup { table, identity, inverses, generators: Vec::new() };
        g.generators = g.greedy_generators();
        for &s in &g.generators {
            for x in 0..n {
                for y in 0..n {
                    if g.mul(g.mul(x, s), y) != g.mul(x, g.mul(s, y)) {
                        return Err(Error::InvalidGroup(format!("not associative: ({x}*{s})*{y} != {x}*({s}*{y})")));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn from_permutations(gens: &[Vec<usize>], degree: usize, cap: usize) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.len() != degree || !is_permutation(g) {
                return Err(Error::InvalidGroup(format!("generator {i} is not a permutation of 0..{degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elements: Vec<Vec<usize>> = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut gen_indices = Vec::new();
        for g in gens {
            if index.contains_key(g) {
                return Err(Error::InvalidGroup("generators must be distinct and non-trivial".into()));
            }
            index.insert(g.clone(), elements.len());
            gen_indices.push(elements.len());
            elements.push(g.clone());
        }
        let mut queue: VecDeque<usize> = (0..elements.len()).collect();
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let prod = compose(&elements[i], g);
                if !index.contains_key(&prod) {
                    if elements.len() == cap {
                        return Err(Error::OrderCap { order: elements.len() + 1, cap });
                    }
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        let n = elements.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| index[&compose(&elements[a], &elements[b])]).collect())
            .collect();
        let inverses = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).expect("group element has an inverse")).collect();
        Ok(FiniteGroup { table, identity: 0, inverses, generators: gen_indices })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `g x g^{-1}`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted elements commuting with `x`.
    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        self.elements().filter(|&g| self.mul(g, x) == self.mul(x, g)).collect()
    }

    /// The primes dividing the group order.
    pub fn primes(&self) -> BTreeSet<Prime> {
        prime_divisors(self.order() as u64)
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }

    /// Re-indexes a subgroup as a group in its own right.
    ///
    /// Returns the group together with the embedding: element `i` of the new
    /// group is element `embedding[i]` of `self`. The identity becomes `0`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut embedding: Vec<usize> = elements.to_vec();
        embedding.sort_unstable();
        embedding.dedup();
        if embedding.binary_search(&self.identity).is_err() {
            return Err(Error::InvalidGroup("subset does not contain the identity".into()));
        }
        embedding.retain(|&x| x != self.identity);
        embedding.insert(0, self.identity);
        let position: HashMap<usize, usize> = embedding.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = Vec::with_capacity(embedding.len());
        for &a in &embedding {
            let mut row = Vec::with_capacity(embedding.len());
            for &b in &embedding {
                let Some(&c) = position.get(&self.mul(a, b)) else {
                    return Err(Error::InvalidGroup("subset is not closed under multiplication".into()));
                };
                row.push(c);
            }
            table.push(row);
        }
        let inverses = embedding.iter().map(|&a| position[&self.inverse(a)]).collect();
        let mut sub = FiniteGroup { table, identity: 0, inverses, generators: Vec::new() };
        sub.generators = sub.greedy_generators();
        Ok((sub, embedding))
    }

    /// Smallest-index-first generating set.
    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut covered = vec![false; self.order()];
        covered[self.identity] = true;
        for x in self.elements() {
            if !covered[x] {
                gens.push(x);
                for y in self.generated_subgroup(&gens) {
                    covered[y] = true;
                }
            }
        }
        gens
    }
}

fn is_permutation(xs: &[usize]) -> bool {
    let mut seen = vec![false; xs.len()];
    for &x in xs {
        if x >= xs.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_basics() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.inverse(1), 5);
        assert!(g.is_abelian());
        assert_eq!(g.primes().into_iter().map(Prime::get).collect::<Vec<_>>(), vec![2, 3]);
        assert!(FiniteGroup::trivial().primes().is_empty());
    }

    #[test]
    fn symmetric_group_from_generators() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.generators(), &[1, 2]);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        // The table form validates.
        assert_eq!(FiniteGroup::from_table(s3.table().to_vec(), 100).unwrap().order(), 6);
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(vec![], 10).is_err());
        // Latin square without identity.
        assert!(FiniteGroup::from_table(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]], 10).is_err());
        // Latin square with identity that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(loop5, 10), Err(Error::InvalidGroup(_))));
        assert!(matches!(FiniteGroup::from_table(FiniteGroup::cyclic(5).table().to_vec(), 4), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn generator_validation_and_cap() {
        assert!(FiniteGroup::from_permutations(&[vec![0, 0]], 2, 10).is_err());
        assert!(FiniteGroup::from_permutations(&[vec![0, 1]], 2, 10).is_err());
        let s5 = [vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]];
        assert!(matches!(FiniteGroup::from_permutations(&s5, 5, 100), Err(Error::OrderCap { .. })));
        assert_eq!(FiniteGroup::from_permutations(&s5, 5, 120).unwrap().order(), 120);
    }

    #[test]
    fn subgroups() {
        let g = FiniteGroup::cyclic(6);
        let (h, emb) = g.subgroup(&[0, 2, 4]).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(emb, vec![0, 2, 4]);
        assert_eq!(h.mul(1, 2), 0);
        assert!(g.subgroup(&[0, 1]).is_err());
        assert!(g.subgroup(&[1, 2]).is_err());
    }

    #[test]
    fn spec_json() {
        let spec: GroupSpec = serde_json::from_str(r#"{"perm_gens": [[1,0,2],[1,2,0]], "degree": 3}"#).unwrap();
        assert_eq!(FiniteGroup::from_spec(&spec, 100).unwrap().order(), 6);
        let spec: GroupSpec = serde_json::from_str(r#"{"order": 2, "table": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(FiniteGroup::from_spec(&spec, 100).unwrap().order(), 2);
        let bad: GroupSpec = serde_json::from_str(r#"{"order": 3, "table": [[0,1],[1,0]]}"#).unwrap();
        assert!(FiniteGroup::from_spec(&bad, 100).is_err());
    }
}
