//! Fully enumerated groups: elements indexed in lexicographic order of their
//! image arrays, with a Cayley table. Subgroups of a tabulated group are
//! bitsets over element indices.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;

pub type ElemSet = FixedBitSet;

/// Index of an element in a [`GroupTable`]. The identity is always `0`.
pub type Elem = u32;

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elems: ElemSet,
    pub order: usize,
    pub gens: Vec<Elem>,
}

impl Subgroup {
    pub fn contains(&self, x: Elem) -> bool {
        self.elems.contains(x as usize)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.elems.is_subset(&other.elems)
    }

    pub fn members(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elems.ones().map(|i| i as Elem)
    }
}

pub struct GroupTable {
    group: FiniteGroup,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, Elem>,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    orders: Vec<u32>,
    gens: Vec<Elem>,
}

impl GroupTable {
    pub fn new(group: &FiniteGroup, cutoff: u64) -> Result<Self> {
        let order = group.order();
        if order > cutoff {
            return Err(Error::CutoffExceeded { order, cutoff });
        }
        let elements: Vec<Permutation> = group.elements()?.as_ref().clone();
        let n = elements.len();
        let index: HashMap<Permutation, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as Elem))
            .collect();
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                mul.push(index[&(a * b)]);
            }
        }
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        let orders = elements.iter().map(|a| a.order() as u32).collect();
        let gens = group.generators().iter().map(|g| index[g]).collect();
        Ok(GroupTable {
            group: group.clone(),
            elements,
            index,
            mul,
            inv,
            orders,
            gens,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        let a = self.mul(self.inv(x), self.inv(y));
        self.mul(a, self.mul(x, y))
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.orders[a as usize]
    }

    pub fn element(&self, a: Elem) -> &Permutation {
        &self.elements[a as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        self.index.get(p).copied()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn empty_set(&self) -> ElemSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn trivial(&self) -> Subgroup {
        let mut elems = self.empty_set();
        elems.insert(0);
        Subgroup {
            elems,
            order: 1,
            gens: Vec::new(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        let mut elems = self.empty_set();
        elems.insert_range(..);
        Subgroup {
            elems,
            order: self.len(),
            gens: self.gens.clone(),
        }
    }

    /// `⟨base, extra⟩` by Dimino's coset method. Returns `None` as soon as the
    /// result would exceed `cap` elements.
    pub fn extend(&self, base: &Subgroup, extra: &[Elem], cap: Option<usize>) -> Option<Subgroup> {
        let fresh: Vec<Elem> = extra
            .iter()
            .copied()
            .filter(|&x| !base.contains(x))
            .collect();
        if fresh.is_empty() {
            return Some(base.clone());
        }
        let base_list: Vec<Elem> = base.members().collect();
        let mut gens = base.gens.clone();
        let mut elems = base.elems.clone();
        let mut order = base.order;
        let mut reps: Vec<Elem> = vec![0];
        let mut used: Vec<Elem> = Vec::new();
        for g in fresh {
            if elems.contains(g as usize) {
                continue;
            }
            used.push(g);
            gens.push(g);
            // every new generator may open new cosets from every known coset
            let mut i = 0;
            while i < reps.len() {
                for &g in &gens {
                    let x = self.mul(reps[i], g);
                    if !elems.contains(x as usize) {
                        for &s in &base_list {
                            elems.insert(self.mul(s, x) as usize);
                        }
                        order += base_list.len();
                        if cap.is_some_and(|c| order > c) {
                            return None;
                        }
                        reps.push(x);
                    }
                }
                i += 1;
            }
        }
        Some(Subgroup { elems, order, gens })
    }

    pub fn generate(&self, gens: &[Elem]) -> Subgroup {
        self.extend(&self.trivial(), gens, None).expect("uncapped")
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let (big, small) = if a.order >= b.order { (a, b) } else { (b, a) };
        self.extend(big, &small.gens, None).expect("uncapped")
    }

    /// Intersection; generators are recomputed from the element set.
    pub fn meet(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut elems = a.elems.clone();
        elems.intersect_with(&b.elems);
        self.subgroup_from_elems(elems)
    }

    /// A subgroup from an element set known to be closed.
    pub fn subgroup_from_elems(&self, elems: ElemSet) -> Subgroup {
        let mut acc = self.trivial();
        for x in elems.ones() {
            if !acc.contains(x as Elem) {
                acc = self.extend(&acc, &[x as Elem], None).expect("uncapped");
            }
        }
        debug_assert_eq!(acc.elems, elems, "element set is not a subgroup");
        acc
    }

    pub fn conjugate(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let mut elems = self.empty_set();
        for x in h.members() {
            elems.insert(self.conj(x, g) as usize);
        }
        Subgroup {
            elems,
            order: h.order,
            gens: h.gens.iter().map(|&x| self.conj(x, g)).collect(),
        }
    }

    /// `HK` as an element set (the product set, not necessarily a subgroup).
    pub fn product_set(&self, h: &Subgroup, k: &Subgroup) -> ElemSet {
        let mut out = self.empty_set();
        let ks: Vec<Elem> = k.members().collect();
        for x in h.members() {
            for &y in &ks {
                out.insert(self.mul(x, y) as usize);
            }
        }
        out
    }

    /// `HK = KH`, decided by capping the join at `|H||K|/|H ∩ K|`.
    pub fn permutes(&self, h: &Subgroup, k: &Subgroup) -> bool {
        if h.is_subset(k) || k.is_subset(h) {
            return true;
        }
        let meet = h.elems.intersection(&k.elems).count();
        let target = h.order * k.order / meet;
        let (big, small) = if h.order >= k.order { (h, k) } else { (k, h) };
        self.extend(big, &small.gens, Some(target)).is_some()
    }

    /// `g` normalises `h`.
    pub fn normalizes(&self, g: Elem, h: &Subgroup) -> bool {
        h.gens.iter().all(|&x| h.contains(self.conj(x, g)))
    }

    /// Tabulated subgroup for a subgroup of the tabulated group.
    pub fn subgroup_of(&self, h: &FiniteGroup) -> Result<Subgroup> {
        let gens = h
            .generators()
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::NotInAmbient))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.generate(&gens))
    }

    /// The subgroup as a [`FiniteGroup`] with the tabulated group as parent.
    pub fn to_group(&self, h: &Subgroup) -> FiniteGroup {
        let gens = h.gens.iter().map(|&x| self.element(x).clone()).collect();
        FiniteGroup::from_generators(self.group.degree(), gens)
            .expect("same degree")
            .with_parent(&self.group)
    }
}
