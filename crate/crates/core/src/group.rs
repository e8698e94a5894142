//! Finite groups generated by a handful of elements: closure, shortest words,
//! inverses and conjugacy classes.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};

/// Default bound on the number of elements enumerated by [`GroupTable::generate`].
pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// Anything that can be multiplied and hashed.
pub trait GroupElement: Clone {
    type Key: Hash + Eq + Clone;
    fn key(&self) -> Self::Key;
    /// `self · other`.
    fn compose(&self, other: &Self) -> Self;
}

#[derive(Clone, Debug)]
pub struct GroupTable<E> {
    elements: Vec<E>,
    generators: Vec<usize>,
    right_mul: Vec<Vec<usize>>,
    words: Vec<Vec<usize>>,
    parent: Vec<Option<(usize, usize)>>,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl<E: GroupElement> GroupTable<E> {
    /// Breadth-first closure from the identity under right multiplication by
    /// the generators. Element 0 is the identity.
    pub fn generate(identity: E, generators: &[E], cap: usize) -> Result<Self> {
        let mut elements = vec![identity];
        let mut index: HashMap<E::Key, usize> = HashMap::new();
        index.insert(elements[0].key(), 0);
        let mut words = vec![Vec::new()];
        let mut parent = vec![None];
        let mut right_mul: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(generators.len());
            for (g, gen) in generators.iter().enumerate() {
                let prod = elements[i].compose(gen);
                let k = prod.key();
                let j = match index.get(&k) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::GroupNotFinite { cap });
                        }
                        let j = elements.len();
                        elements.push(prod);
                        index.insert(k, j);
                        let mut w = words[i].clone();
                        w.push(g);
                        words.push(w);
                        parent.push(Some((i, g)));
                        queue.push_back(j);
                        j
                    }
                };
                row.push(j);
            }
            if right_mul.len() <= i {
                right_mul.resize(i + 1, Vec::new());
            }
            right_mul[i] = row;
        }
        let n = elements.len();
        let gen_index: Vec<usize> = (0..generators.len()).map(|g| right_mul[0][g]).collect();

        let mul = |rm: &Vec<Vec<usize>>, a: usize, word: &[usize]| word.iter().fold(a, |x, &g| rm[x][g]);
        // generator inverses as powers
        let gen_inv_words: Vec<Vec<usize>> = (0..generators.len())
            .map(|g| {
                let mut x = right_mul[0][g];
                let mut order = 1;
                while x != 0 {
                    x = right_mul[x][g];
                    order += 1;
                }
                vec![g; order - 1]
            })
            .collect();
        let inverse: Vec<usize> = (0..n)
            .map(|i| {
                words[i]
                    .iter()
                    .rev()
                    .fold(0, |x, &g| mul(&right_mul, x, &gen_inv_words[g]))
            })
            .collect();

        // conjugacy classes: closure of x ↦ g⁻¹ x g over generators
        let conj = |x: usize, g: usize| {
            let y = mul(&right_mul, inverse[gen_index[g]], &words[x]);
            right_mul[y][g]
        };
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                for g in 0..generators.len() {
                    let y = conj(x, g);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }

        Ok(GroupTable { elements, generators: gen_index, right_mul, words, parent, inverse, classes, class_of })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Element indices of the generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Index of `elements[i] · generator[g]`.
    pub fn right_mul_gen(&self, i: usize, g: usize) -> usize {
        self.right_mul[i][g]
    }

    /// Shortest word in the generators.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn word_length(&self, i: usize) -> usize {
        self.words[i].len()
    }

    /// `(prefix element, last generator)` of the shortest word; `None` for the identity.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |x, &g| self.right_mul[x][g])
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn conjugate(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(self.inverse[by], x), by)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    /// Class containing the inverses of class `c`.
    pub fn class_inverse(&self, c: usize) -> usize {
        self.class_of[self.inverse[self.class_rep(c)]]
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// Extends a map on generators to all elements along shortest words.
    pub fn extend<T: Clone>(&self, identity: T, gens: &[T], mut mul: impl FnMut(&T, &T) -> T) -> Vec<T> {
        let mut out: Vec<Option<T>> = vec![None; self.order()];
        out[0] = Some(identity);
        for i in 1..self.order() {
            let (p, g) = self.parent[i].expect("non-identity has a parent");
            let v = mul(out[p].as_ref().expect("parents precede children"), &gens[g]);
            out[i] = Some(v);
        }
        out.into_iter().map(|x| x.expect("filled")).collect()
    }
}

/// Permutations of `0..n`, composed as functions (`(a·b)(x) = a(b(x))`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(pub Vec<u32>);

impl GroupElement for Perm {
    type Key = Vec<u32>;
    fn key(&self) -> Vec<u32> {
        self.0.clone()
    }
    fn compose(&self, other: &Self) -> Self {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> GroupTable<Perm> {
        let id = Perm((0..n as u32).collect());
        let gens: Vec<Perm> = (0..n - 1)
            .map(|i| {
                let mut p: Vec<u32> = (0..n as u32).collect();
                p.swap(i, i + 1);
                Perm(p)
            })
            .collect();
        GroupTable::generate(id, &gens, DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn symmetric_groups() {
        let s3 = sym(3);
        assert_eq!(s3.order(), 6);
        let mut sizes: Vec<usize> = s3.classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let s4 = sym(4);
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.num_classes(), 5);
        for a in 0..24 {
            assert_eq!(s4.mul(a, s4.inverse(a)), 0);
            for b in 0..24 {
                let ab = s4.element(a).compose(s4.element(b));
                assert_eq!(s4.element(s4.mul(a, b)), &ab);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let id = Perm((0..5).collect());
        let gens = vec![Perm(vec![1, 0, 2, 3, 4]), Perm(vec![1, 2, 3, 4, 0])];
        assert_eq!(GroupTable::generate(id, &gens, 50).unwrap_err(), Error::GroupNotFinite { cap: 50 });
    }
}
