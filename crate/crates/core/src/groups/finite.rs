//! Finite groups given by a multiplication table or by permutations.
//!
//! Both store, for every element, a word in the generators found by
//! breadth-first search. Those words give the element's normal form for
//! homomorphism evaluation and a complete presentation: the relators
//! `w(x) * s * w(x*s)^-1` over all elements `x` and generators `s`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::Letters;
use crate::{Budget, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<u32>,
    words: Vec<Letters>,
}

impl FiniteTable {
    /// `table[i][j]` is the product of elements `i` and `j`; element 0 must
    /// be the identity.
    pub fn new(table: &[Vec<u32>], generators: &[u32]) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(invalid("empty multiplication table"));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(invalid(&format!("row {i} has {} entries, expected {order}", row.len())));
            }
            let mut seen = vec![false; order];
            for &v in row {
                let v = v as usize;
                if v >= order || seen[v] {
                    return Err(invalid(&format!("row {i} is not a permutation of 0..{order}")));
                }
                seen[v] = true;
            }
            flat.extend_from_slice(row);
        }
        let at = |i: usize, j: usize| flat[i * order + j] as usize;
        for i in 0..order {
            if at(0, i) != i || at(i, 0) != i {
                return Err(invalid("element 0 is not the identity"));
            }
        }
        for j in 0..order {
            let mut seen = vec![false; order];
            for i in 0..order {
                if core::mem::replace(&mut seen[at(i, j)], true) {
                    return Err(invalid(&format!("column {j} repeats an entry")));
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(invalid(&format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let inverse = (0..order)
            .map(|i| (0..order).find(|&j| at(i, j) == 0).map(|j| j as u32))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| invalid("missing inverse"))?;
        for &g in generators {
            if g as usize >= order {
                return Err(invalid(&format!("generator index {g} out of range")));
            }
        }
        let words = spanning_words(order, 0, generators.len(), |x, s| at(x, generators[s] as usize))
            .ok_or_else(|| invalid("generators do not generate the table"))?;
        Ok(FiniteTable { order, table: flat, inverse, generators: generators.to_vec(), words })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn mul(&self, a: u32, b: u32) -> Option<u32> {
        let (a, b) = (a as usize, b as usize);
        (a < self.order && b < self.order).then(|| self.table[a * self.order + b])
    }

    pub(crate) fn inv(&self, a: u32) -> Option<u32> {
        self.inverse.get(a as usize).copied()
    }

    pub(crate) fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub(crate) fn word(&self, a: u32) -> Option<&Letters> {
        self.words.get(a as usize)
    }

    pub(crate) fn relators(&self) -> Vec<Letters> {
        cayley_relators(self.order, self.generators.len(), &self.words, |x, s| {
            self.table[x * self.order + self.generators[s] as usize] as usize
        })
    }
}

/// A permutation group on `0..degree`, fully enumerated at construction.
///
/// Products compose left to right: `(p * q)[i] = q[p[i]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<u32>>,
    elements: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
    words: Vec<Letters>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Vec<u32>>, budget: Budget) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !is_permutation(g, degree) {
                return Err(invalid(&format!("generator {i} is not a permutation of 0..{degree}")));
            }
        }
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut index = BTreeMap::from([(identity, 0usize)]);
        let mut parent: Vec<Option<(usize, usize)>> = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, g) in generators.iter().enumerate() {
                let y = compose(&elements[x], g);
                if !index.contains_key(&y) {
                    budget.check(elements.len() + 1)?;
                    index.insert(y.clone(), elements.len());
                    parent.push(Some((x, s)));
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let words = words_from_parents(&parent);
        Ok(PermGroup { degree, generators, elements, index, words })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub(crate) fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub(crate) fn is_member(&self, p: &[u32]) -> bool {
        self.index.contains_key(p)
    }

    pub(crate) fn word(&self, p: &[u32]) -> Option<&Letters> {
        self.index.get(p).map(|&i| &self.words[i])
    }

    pub(crate) fn relators(&self) -> Vec<Letters> {
        cayley_relators(self.elements.len(), self.generators.len(), &self.words, |x, s| {
            self.index[&compose(&self.elements[x], &self.generators[s])]
        })
    }
}

pub(crate) fn is_permutation(p: &[u32], degree: usize) -> bool {
    if p.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    p.iter().all(|&v| (v as usize) < degree && !core::mem::replace(&mut seen[v as usize], true))
}

pub(crate) fn compose(p: &[u32], q: &[u32]) -> Vec<u32> {
    p.iter().map(|&i| q[i as usize]).collect()
}

pub(crate) fn invert(p: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; p.len()];
    for (i, &v) in p.iter().enumerate() {
        out[v as usize] = i as u32;
    }
    out
}

/// Breadth-first spanning tree of the right Cayley graph; `None` when some
/// element is unreachable.
fn spanning_words(
    order: usize,
    root: usize,
    generators: usize,
    step: impl Fn(usize, usize) -> usize,
) -> Option<Vec<Letters>> {
    let mut parent: Vec<Option<Option<(usize, usize)>>> = vec![None; order];
    parent[root] = Some(None);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for s in 0..generators {
            let y = step(x, s);
            if parent[y].is_none() {
                parent[y] = Some(Some((x, s)));
                queue.push_back(y);
            }
        }
    }
    let parent: Vec<Option<(usize, usize)>> = parent.into_iter().collect::<Option<Vec<_>>>()?;
    Some(words_from_parents(&parent))
}

fn words_from_parents(parent: &[Option<(usize, usize)>]) -> Vec<Letters> {
    let mut words: Vec<Option<Letters>> = vec![None; parent.len()];
    for start in 0..parent.len() {
        let mut path = Vec::new();
        let mut x = start;
        while words[x].is_none() {
            match parent[x] {
                Some((p, s)) => {
                    path.push((x, s));
                    x = p;
                }
                None => {
                    words[x] = Some(Vec::new());
                }
            }
        }
        while let Some((y, s)) = path.pop() {
            let mut w = words[x].clone().unwrap_or_default();
            w.push((s, 1));
            words[y] = Some(w);
            x = y;
        }
    }
    words.into_iter().map(Option::unwrap_or_default).collect()
}

fn cayley_relators(
    order: usize,
    generators: usize,
    words: &[Letters],
    step: impl Fn(usize, usize) -> usize,
) -> Vec<Letters> {
    let mut relators = Vec::new();
    for x in 0..order {
        for s in 0..generators {
            let y = step(x, s);
            let mut rel = words[x].clone();
            rel.push((s, 1));
            rel.extend(words[y].iter().rev().map(|&(g, e)| (g, -e)));
            relators.push(rel);
        }
    }
    relators
}

fn invalid(msg: &str) -> Error {
    Error::InvalidBackend(msg.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_table() -> Vec<Vec<u32>> {
        (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect()
    }

    #[test]
    fn table_validation() {
        assert!(FiniteTable::new(&z3_table(), &[1]).is_ok());
        assert!(FiniteTable::new(&z3_table(), &[]).is_err());
        let mut bad = z3_table();
        bad[1][1] = 1;
        assert!(FiniteTable::new(&bad, &[1]).is_err());
        assert!(FiniteTable::new(&[], &[]).is_err());
    }

    #[test]
    fn words_reach_every_element() {
        let t = FiniteTable::new(&z3_table(), &[1]).unwrap();
        assert_eq!(t.word(0).unwrap(), &Vec::<(usize, i64)>::new());
        assert_eq!(t.word(2).unwrap(), &vec![(0, 1), (0, 1)]);
    }

    #[test]
    fn symmetric_group_enumerates() {
        let g = PermGroup::new(3, vec![vec![1, 0, 2], vec![1, 2, 0]], Budget::DEFAULT).unwrap();
        assert_eq!(g.order(), 6);
        let g = PermGroup::new(5, vec![vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]], Budget::DEFAULT).unwrap();
        assert_eq!(g.order(), 120);
        assert!(matches!(
            PermGroup::new(5, vec![vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]], Budget(50)),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(PermGroup::new(3, vec![vec![0, 0, 1]], Budget::DEFAULT).is_err());
    }
}
