//! A finite group of signed permutations with its Cayley table.

use std::collections::HashMap;

use crate::error::AnalysisError;
use crate::signed_weyl::{find_non_closed_pair, SignedPermutation};

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    elements: Vec<SignedPermutation>,
    index: HashMap<SignedPermutation, usize>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Elements are sorted; the identity comes first.
    pub fn new(elements: &[SignedPermutation]) -> Result<FiniteGroup, AnalysisError> {
        let mut elements = elements.to_vec();
        elements.sort();
        elements.dedup();
        if let Some((a, b)) = find_non_closed_pair(&elements) {
            return Err(AnalysisError::inconsistent("group", "closure", format!("{a} * {b} missing")));
        }
        if !elements.first().is_some_and(|e| e.is_identity()) {
            return Err(AnalysisError::inconsistent("group", "identity", "no identity element"));
        }
        let index: HashMap<SignedPermutation, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let table: Vec<Vec<usize>> =
            elements.iter().map(|a| elements.iter().map(|b| index[&(a * b)]).collect()).collect();
        let inverse = (0..elements.len()).map(|a| table[a].iter().position(|&p| p == 0).expect("closed")).collect();
        Ok(FiniteGroup { elements, index, table, inverse })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SignedPermutation {
        &self.elements[i]
    }

    pub fn index_of(&self, w: &SignedPermutation) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `x⁻¹ g x`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut acc = a;
        let mut n = 1;
        while acc != 0 {
            acc = self.mul(acc, a);
            n += 1;
        }
        n
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    /// Classes ordered by their least element; each class sorted.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for g in 0..self.order() {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order()).map(|x| self.conj(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    pub fn is_abelian_subset(&self, set: &[usize]) -> bool {
        set.iter().all(|&a| set.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &h in subgroup {
            member[h] = true;
        }
        subgroup.iter().all(|&h| (0..self.order()).all(|x| member[self.conj(h, x)]))
    }
}
