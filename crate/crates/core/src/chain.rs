//! Stabiliser chain on the fixed base `0, 1, .., n-1` (Knuth's variant of
//! Schreier–Sims). Level `k` stores a transversal for the orbit of `k` under
//! the pointwise stabiliser of `0..k`.

use std::collections::BTreeMap;

use crate::perm::Permutation;

#[derive(Clone, Debug, Default)]
struct Level {
    gens: Vec<Permutation>,
    /// orbit point -> element mapping the level's base point onto it
    trans: BTreeMap<usize, Permutation>,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Option<Level>>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: vec![None; degree],
        };
        for g in gens {
            chain.add(0, g.clone());
        }
        chain
    }

    fn level_mut(&mut self, k: usize) -> &mut Level {
        let degree = self.degree;
        self.levels[k].get_or_insert_with(|| {
            let mut trans = BTreeMap::new();
            trans.insert(k, Permutation::identity(degree));
            Level {
                gens: Vec::new(),
                trans,
            }
        })
    }

    fn sifts_from(&self, k: usize, g: &Permutation) -> bool {
        let mut g = g.clone();
        for l in k..self.degree {
            let j = g.image(l);
            if j == l {
                continue;
            }
            match self.levels[l].as_ref().and_then(|lv| lv.trans.get(&j)) {
                Some(t) => g = &g * &t.inverse(),
                None => return false,
            }
        }
        true
    }

    fn add(&mut self, k: usize, g: Permutation) {
        // Explicit work list: orbit closures can be long for large degrees.
        enum Task {
            Add(usize, Permutation),
            Close(usize, Permutation),
        }
        let mut work = vec![Task::Add(k, g)];
        while let Some(task) = work.pop() {
            match task {
                Task::Add(k, g) => {
                    if k >= self.degree || self.sifts_from(k, &g) {
                        continue;
                    }
                    let level = self.level_mut(k);
                    level.gens.push(g.clone());
                    for sigma in level.trans.values() {
                        work.push(Task::Close(k, sigma * &g));
                    }
                }
                Task::Close(k, tau) => {
                    let j = tau.image(k);
                    let level = self.level_mut(k);
                    match level.trans.get(&j) {
                        None => {
                            for s in &level.gens {
                                work.push(Task::Close(k, &tau * s));
                            }
                            level.trans.insert(j, tau);
                        }
                        Some(t) => {
                            let residue = &tau * &t.inverse();
                            work.push(Task::Add(k + 1, residue));
                        }
                    }
                }
            }
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sifts_from(0, g)
    }

    pub fn order(&self) -> u64 {
        self.levels
            .iter()
            .flatten()
            .map(|l| l.trans.len() as u64)
            .product()
    }

    /// All elements, as products of transversal elements.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev().flatten() {
            if level.trans.len() == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * level.trans.len());
            for h in &out {
                for t in level.trans.values() {
                    next.push(h * t);
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_alternating_orders() {
        let s5 = [
            Permutation::parse(5, "(0 1)").unwrap(),
            Permutation::parse(5, "(0 1 2 3 4)").unwrap(),
        ];
        let chain = StabChain::new(5, &s5);
        assert_eq!(chain.order(), 120);
        assert_eq!(chain.elements().len(), 120);

        let a5 = [
            Permutation::parse(5, "(0 1 2)").unwrap(),
            Permutation::parse(5, "(0 1 2 3 4)").unwrap(),
        ];
        let chain = StabChain::new(5, &a5);
        assert_eq!(chain.order(), 60);
        assert!(!chain.contains(&Permutation::parse(5, "(0 1)").unwrap()));
        assert!(chain.contains(&Permutation::parse(5, "(0 1)(2 3)").unwrap()));
    }

    #[test]
    fn trivial_chain() {
        let chain = StabChain::new(4, &[]);
        assert_eq!(chain.order(), 1);
        assert_eq!(chain.elements(), vec![Permutation::identity(4)]);
    }
}
