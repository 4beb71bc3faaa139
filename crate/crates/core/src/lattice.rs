//! The complete subgroup lattice of a tabulated group, together with the
//! normal-structure machinery built on top of it (chief series, Frattini and
//! Fitting subgroups, subnormality, supersolubility).
//!
//! Every structural query takes an `ambient` subgroup id, so the same lattice
//! answers questions about any subgroup `K` of the top group: the lattice of
//! `K` is exactly the set of lattice members contained in `K`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;
use crate::primes;
use crate::table::{Elem, ElemSet, GroupTable, Subgroup};

/// Default upper bound on the order of groups whose lattice is enumerated.
pub const DEFAULT_LATTICE_CUTOFF: u64 = 2016;

/// Index of a subgroup in a [`SubgroupLattice`].
pub type SubId = usize;

pub struct SubgroupLattice {
    table: Arc<GroupTable>,
    subs: Vec<Subgroup>,
    lookup: HashMap<ElemSet, SubId>,
    classes: Vec<Vec<SubId>>,
    class_of: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalStructure {
    pub normal_subgroups: Vec<SubId>,
    pub minimal_normal_subgroups: Vec<SubId>,
    pub maximal_subgroups: Vec<SubId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefFactor {
    pub upper: SubId,
    pub lower: SubId,
    pub order: u64,
    pub is_cyclic_of_prime_order: bool,
}

/// Ascending chief series `1 = terms[0] < .. < terms[r] = K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefSeries {
    pub terms: Vec<SubId>,
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharacteristicSubgroups {
    pub frattini: SubId,
    pub fitting: SubId,
}

/// Sorted-element-list order on subgroups, used for reproducible tie-breaks.
pub fn fingerprint_cmp(a: &Subgroup, b: &Subgroup) -> Ordering {
    a.elems.ones().cmp(b.elems.ones())
}

impl SubgroupLattice {
    pub fn new(group: &FiniteGroup, cutoff: u64) -> Result<Self> {
        let table = Arc::new(GroupTable::new(group, cutoff)?);
        Ok(Self::from_table(table))
    }

    /// Enumerates all subgroups: starting from the trivial group, every
    /// conjugacy-class representative is joined with every cyclic subgroup of
    /// prime-power order, and each new subgroup brings in its whole class.
    pub fn from_table(table: Arc<GroupTable>) -> Self {
        let n = table.len();
        let mut cyclic: Vec<Subgroup> = Vec::new();
        let mut seen_cyclic: HashMap<ElemSet, ()> = HashMap::new();
        for x in 1..n as Elem {
            if primes::is_prime_power(table.element_order(x) as u64) {
                let c = table.generate(&[x]);
                if seen_cyclic.insert(c.elems.clone(), ()).is_none() {
                    cyclic.push(c);
                }
            }
        }

        let mut subs: Vec<Subgroup> = Vec::new();
        let mut lookup: HashMap<ElemSet, SubId> = HashMap::new();
        let mut raw_classes: Vec<Vec<SubId>> = Vec::new();
        let mut queue: Vec<SubId> = Vec::new();

        let mut add_class = |s: Subgroup,
                             subs: &mut Vec<Subgroup>,
                             lookup: &mut HashMap<ElemSet, SubId>,
                             queue: &mut Vec<SubId>| {
            let rep = subs.len();
            lookup.insert(s.elems.clone(), rep);
            subs.push(s);
            let mut class = vec![rep];
            let mut i = 0;
            while i < class.len() {
                for &g in table.generators() {
                    let c = table.conjugate(&subs[class[i]], g);
                    if !lookup.contains_key(&c.elems) {
                        let id = subs.len();
                        lookup.insert(c.elems.clone(), id);
                        subs.push(c);
                        class.push(id);
                    }
                }
                i += 1;
            }
            raw_classes.push(class);
            queue.push(rep);
        };

        add_class(table.trivial(), &mut subs, &mut lookup, &mut queue);
        while let Some(r) = queue.pop() {
            for c in &cyclic {
                if c.is_subset(&subs[r]) {
                    continue;
                }
                let j = table.extend(&subs[r], &c.gens, None).expect("uncapped");
                if !lookup.contains_key(&j.elems) {
                    add_class(j, &mut subs, &mut lookup, &mut queue);
                }
            }
        }

        // canonical order: by order, then by fingerprint
        let mut perm: Vec<SubId> = (0..subs.len()).collect();
        perm.sort_by(|&a, &b| {
            subs[a]
                .order
                .cmp(&subs[b].order)
                .then_with(|| fingerprint_cmp(&subs[a], &subs[b]))
        });
        let mut new_id = vec![0; subs.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_id[old] = new;
        }
        let mut slots: Vec<Option<Subgroup>> = subs.into_iter().map(Some).collect();
        let subs: Vec<Subgroup> = perm.iter().map(|&old| slots[old].take().unwrap()).collect();
        let lookup = subs
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elems.clone(), i))
            .collect();
        let mut classes: Vec<Vec<SubId>> = raw_classes
            .into_iter()
            .map(|c| {
                let mut c: Vec<SubId> = c.into_iter().map(|i| new_id[i]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort();
        let mut class_of = vec![0; subs.len()];
        for (k, c) in classes.iter().enumerate() {
            for &i in c {
                class_of[i] = k;
            }
        }
        SubgroupLattice {
            table,
            subs,
            lookup,
            classes,
            class_of,
        }
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn shared_table(&self) -> Arc<GroupTable> {
        self.table.clone()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.table.group()
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn trivial(&self) -> SubId {
        0
    }

    pub fn top(&self) -> SubId {
        self.subs.len() - 1
    }

    pub fn sub(&self, id: SubId) -> &Subgroup {
        &self.subs[id]
    }

    pub fn order(&self, id: SubId) -> u64 {
        self.subs[id].order as u64
    }

    pub fn ids(&self) -> impl Iterator<Item = SubId> {
        0..self.subs.len()
    }

    pub fn id_of(&self, s: &Subgroup) -> SubId {
        self.lookup[&s.elems]
    }

    pub fn id_of_elems(&self, elems: &ElemSet) -> Option<SubId> {
        self.lookup.get(elems).copied()
    }

    /// Id of a subgroup given as a [`FiniteGroup`] on the same points.
    pub fn find(&self, h: &FiniteGroup) -> Result<SubId> {
        let s = self.table.subgroup_of(h)?;
        Ok(self.id_of(&s))
    }

    pub fn generated_by(&self, perms: &[Permutation]) -> Result<SubId> {
        let gens = perms
            .iter()
            .map(|p| self.table.index_of(p).ok_or(Error::NotInAmbient))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.id_of(&self.table.generate(&gens)))
    }

    pub fn to_group(&self, id: SubId) -> FiniteGroup {
        self.table.to_group(&self.subs[id])
    }

    pub fn classes(&self) -> &[Vec<SubId>] {
        &self.classes
    }

    pub fn class_of(&self, id: SubId) -> usize {
        self.class_of[id]
    }

    /// `a ≤ b`.
    pub fn le(&self, a: SubId, b: SubId) -> bool {
        self.subs[a].is_subset(&self.subs[b])
    }

    /// Subgroups of `k`, ascending by order.
    pub fn below(&self, k: SubId) -> Vec<SubId> {
        (0..=k).filter(|&i| self.le(i, k)).collect()
    }

    /// Subgroups containing `h`, ascending by order.
    pub fn above(&self, h: SubId) -> Vec<SubId> {
        (h..self.subs.len()).filter(|&i| self.le(h, i)).collect()
    }

    pub fn meet(&self, a: SubId, b: SubId) -> SubId {
        let mut elems = self.subs[a].elems.clone();
        elems.intersect_with(&self.subs[b].elems);
        self.lookup[&elems]
    }

    pub fn meet_order(&self, a: SubId, b: SubId) -> u64 {
        self.subs[a].elems.intersection(&self.subs[b].elems).count() as u64
    }

    pub fn join(&self, a: SubId, b: SubId) -> SubId {
        self.id_of(&self.table.join(&self.subs[a], &self.subs[b]))
    }

    pub fn join_all(&self, ids: impl IntoIterator<Item = SubId>) -> SubId {
        let mut acc = self.table.trivial();
        for i in ids {
            acc = self.table.join(&acc, &self.subs[i]);
        }
        self.id_of(&acc)
    }

    /// `|HK| = |H||K| / |H ∩ K|`.
    pub fn product_order(&self, a: SubId, b: SubId) -> u64 {
        self.order(a) * self.order(b) / self.meet_order(a, b)
    }

    pub fn permutes(&self, a: SubId, b: SubId) -> bool {
        self.table.permutes(&self.subs[a], &self.subs[b])
    }

    pub fn conjugate(&self, h: SubId, g: Elem) -> SubId {
        self.id_of(&self.table.conjugate(&self.subs[h], g))
    }

    /// Conjugates of `h` under the subgroup `k` (which need not contain `h`).
    pub fn conjugates_under(&self, h: SubId, k: SubId) -> Vec<SubId> {
        let mut orbit = vec![h];
        let mut i = 0;
        while i < orbit.len() {
            for &g in &self.subs[k].gens {
                let c = self.conjugate(orbit[i], g);
                if !orbit.contains(&c) {
                    orbit.push(c);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_normal(&self, h: SubId, k: SubId) -> bool {
        self.le(h, k)
            && self.subs[k]
                .gens
                .iter()
                .all(|&g| self.table.normalizes(g, &self.subs[h]))
    }

    /// Largest normal subgroup of `k` inside `h`.
    pub fn core(&self, h: SubId, k: SubId) -> SubId {
        let t = &self.table;
        let mut elems = self.subs[h].elems.clone();
        loop {
            let mut next = elems.clone();
            for &g in &self.subs[k].gens {
                let gi = t.inv(g);
                // x stays iff g x g⁻¹ lies in the current set, i.e. x ∈ current^g
                let mut keep = t.empty_set();
                for x in elems.ones() {
                    if elems.contains(t.conj(x as Elem, gi) as usize) {
                        keep.insert(x);
                    }
                }
                next.intersect_with(&keep);
            }
            if next == elems {
                break;
            }
            elems = next;
        }
        self.lookup[&elems]
    }

    /// Smallest normal subgroup of `k` containing `h`.
    pub fn normal_closure(&self, h: SubId, k: SubId) -> SubId {
        let t = &self.table;
        let mut acc = self.subs[h].clone();
        let mut i = 0;
        while i < acc.gens.len() {
            let x = acc.gens[i];
            for &g in &self.subs[k].gens {
                let y = t.conj(x, g);
                if !acc.contains(y) {
                    acc = t.extend(&acc, &[y], None).expect("uncapped");
                }
            }
            i += 1;
        }
        self.id_of(&acc)
    }

    pub fn normalizer(&self, h: SubId, k: SubId) -> SubId {
        let t = &self.table;
        let mut elems = t.empty_set();
        for g in self.subs[k].members() {
            if t.normalizes(g, &self.subs[h]) {
                elems.insert(g as usize);
            }
        }
        self.lookup[&elems]
    }

    pub fn centralizer(&self, h: SubId, k: SubId) -> SubId {
        let t = &self.table;
        let mut elems = t.empty_set();
        for g in self.subs[k].members() {
            if self.subs[h]
                .gens
                .iter()
                .all(|&x| t.mul(x, g) == t.mul(g, x))
            {
                elems.insert(g as usize);
            }
        }
        self.lookup[&elems]
    }

    /// `C_K(U/L) = {g ∈ K : [u, g] ∈ L for all u ∈ U}` for `L ⊴ U`.
    pub fn centralizer_of_factor(&self, upper: SubId, lower: SubId, k: SubId) -> SubId {
        let t = &self.table;
        let mut elems = t.empty_set();
        for g in self.subs[k].members() {
            if self.subs[upper]
                .gens
                .iter()
                .all(|&u| self.subs[lower].contains(t.commutator(u, g)))
            {
                elems.insert(g as usize);
            }
        }
        self.lookup[&elems]
    }

    pub fn commutator_subgroup(&self, a: SubId, b: SubId) -> SubId {
        let t = &self.table;
        let mut seeds = Vec::new();
        for &x in &self.subs[a].gens {
            for &y in &self.subs[b].gens {
                seeds.push(t.commutator(x, y));
            }
        }
        let seed = self.id_of(&t.generate(&seeds));
        let ab = self.join(a, b);
        self.normal_closure(seed, ab)
    }

    pub fn normal_subgroups(&self, k: SubId) -> Vec<SubId> {
        self.below(k)
            .into_iter()
            .filter(|&h| self.is_normal(h, k))
            .collect()
    }

    pub fn normal_structure(&self, k: SubId) -> NormalStructure {
        let below = self.below(k);
        let normal_subgroups: Vec<SubId> = below
            .iter()
            .copied()
            .filter(|&h| self.is_normal(h, k))
            .collect();
        let nontrivial: Vec<SubId> = normal_subgroups
            .iter()
            .copied()
            .filter(|&h| h != 0)
            .collect();
        let minimal_normal_subgroups = minimal_elements(self, &nontrivial);
        let proper: Vec<SubId> = below.iter().copied().filter(|&h| h != k).collect();
        let maximal_subgroups = maximal_elements(self, &proper);
        NormalStructure {
            normal_subgroups,
            minimal_normal_subgroups,
            maximal_subgroups,
        }
    }

    pub fn maximal_subgroups(&self, k: SubId) -> Vec<SubId> {
        let proper: Vec<SubId> = self.below(k).into_iter().filter(|&h| h != k).collect();
        maximal_elements(self, &proper)
    }

    /// Chief series of `k` through `through` (if given), choosing at each step
    /// the minimal candidate with the smallest fingerprint.
    pub fn chief_series(&self, k: SubId, through: Option<SubId>) -> Result<ChiefSeries> {
        self.chief_series_by(k, through, |cands| cands[0])
    }

    /// Chief series with a caller-supplied tie-break among the minimal
    /// candidates (given in fingerprint order).
    pub fn chief_series_by(
        &self,
        k: SubId,
        through: Option<SubId>,
        mut choose: impl FnMut(&[SubId]) -> SubId,
    ) -> Result<ChiefSeries> {
        if let Some(n) = through {
            if !self.is_normal(n, k) {
                return Err(Error::NotNormal);
            }
        }
        let normals = self.normal_subgroups(k);
        let mut terms = vec![0];
        let stops: Vec<SubId> = through.into_iter().chain(std::iter::once(k)).collect();
        for bound in stops {
            while *terms.last().unwrap() != bound {
                let cur = *terms.last().unwrap();
                let cands: Vec<SubId> = normals
                    .iter()
                    .copied()
                    .filter(|&x| x != cur && self.le(cur, x) && self.le(x, bound))
                    .collect();
                let mut minimal = minimal_elements(self, &cands);
                minimal.sort_by(|&a, &b| fingerprint_cmp(&self.subs[a], &self.subs[b]));
                terms.push(choose(&minimal));
            }
        }
        let factors = terms
            .windows(2)
            .map(|w| {
                let order = self.order(w[1]) / self.order(w[0]);
                ChiefFactor {
                    upper: w[1],
                    lower: w[0],
                    order,
                    is_cyclic_of_prime_order: primes::is_prime(order),
                }
            })
            .collect();
        Ok(ChiefSeries { terms, factors })
    }

    pub fn is_soluble(&self, k: SubId) -> bool {
        self.chief_series(k, None)
            .expect("no through-term")
            .factors
            .iter()
            .all(|f| primes::is_prime_power(f.order))
    }

    /// Every chief factor is central.
    pub fn is_nilpotent(&self, k: SubId) -> bool {
        self.chief_series(k, None)
            .expect("no through-term")
            .factors
            .iter()
            .all(|f| self.centralizer_of_factor(f.upper, f.lower, k) == k)
    }

    pub fn is_supersoluble(&self, k: SubId) -> bool {
        self.chief_series(k, None)
            .expect("no through-term")
            .factors
            .iter()
            .all(|f| f.is_cyclic_of_prime_order)
    }

    pub fn is_cyclic(&self, k: SubId) -> bool {
        let n = self.subs[k].order as u32;
        n == 1
            || self.subs[k]
                .members()
                .any(|x| self.table.element_order(x) == n)
    }

    pub fn is_abelian(&self, k: SubId) -> bool {
        let gens = &self.subs[k].gens;
        gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| self.table.mul(a, b) == self.table.mul(b, a))
        })
    }

    pub fn is_p_group(&self, k: SubId) -> bool {
        primes::is_prime_power(self.order(k))
    }

    /// Classical subnormality via the descending normal-closure chain
    /// `K ⊵ H^K ⊵ H^(H^K) ⊵ ..`.
    pub fn is_subnormal(&self, h: SubId, k: SubId) -> bool {
        if !self.le(h, k) {
            return false;
        }
        let mut cur = k;
        loop {
            if cur == h {
                return true;
            }
            let next = self.normal_closure(h, cur);
            if next == cur {
                return false;
            }
            cur = next;
        }
    }

    pub fn frattini(&self, k: SubId) -> SubId {
        let maximal = self.maximal_subgroups(k);
        if maximal.is_empty() {
            return k;
        }
        let mut elems = self.subs[k].elems.clone();
        for m in maximal {
            elems.intersect_with(&self.subs[m].elems);
        }
        self.lookup[&elems]
    }

    pub fn fitting(&self, k: SubId) -> SubId {
        let nilpotent: Vec<SubId> = self
            .normal_subgroups(k)
            .into_iter()
            .filter(|&n| self.is_nilpotent(n))
            .collect();
        self.join_all(nilpotent)
    }

    pub fn characteristic_subgroups(&self, k: SubId) -> CharacteristicSubgroups {
        CharacteristicSubgroups {
            frattini: self.frattini(k),
            fitting: self.fitting(k),
        }
    }

    /// Subgroups of `k` of order `|k|_p`.
    pub fn sylow_subgroups(&self, k: SubId, p: u64) -> Vec<SubId> {
        let target = primes::p_part(self.order(k), p);
        self.below(k)
            .into_iter()
            .filter(|&h| self.order(h) == target)
            .collect()
    }

    /// All Sylow subgroups of `k`, over every prime dividing `|k|`.
    pub fn all_sylow_subgroups(&self, k: SubId) -> Vec<SubId> {
        primes::prime_divisors(self.order(k))
            .into_iter()
            .flat_map(|p| self.sylow_subgroups(k, p))
            .collect()
    }

    /// `G/N` with its own lattice, and the projection of elements.
    pub fn quotient(&self, n: SubId, cutoff: u64) -> Result<LatticeQuotient> {
        let top = self.top();
        if !self.is_normal(n, top) {
            return Err(Error::NotNormal);
        }
        let t = &self.table;
        let size = t.len();
        let mut coset = vec![u32::MAX; size];
        let mut reps: Vec<Elem> = Vec::new();
        for x in 0..size as Elem {
            if coset[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for m in self.subs[n].members() {
                coset[t.mul(m, x) as usize] = id;
            }
        }
        let project = |g: Elem| -> Permutation {
            let images = reps.iter().map(|&r| coset[t.mul(r, g) as usize]).collect();
            Permutation::new(images).expect("coset action")
        };
        let gens = t.generators().iter().map(|&g| project(g)).collect();
        let qgroup = FiniteGroup::from_generators(reps.len(), gens)?;
        let lattice = SubgroupLattice::new(&qgroup, cutoff)?;
        let mut by_coset: Vec<Elem> = vec![0; reps.len()];
        for (c, &r) in reps.iter().enumerate() {
            by_coset[c] = lattice
                .table
                .index_of(&project(r))
                .expect("image in quotient");
        }
        let map = coset.iter().map(|&c| by_coset[c as usize]).collect();
        Ok(LatticeQuotient {
            lattice: Arc::new(lattice),
            map,
        })
    }
}

/// A quotient `G/N` with its lattice and the element projection `G → G/N`.
pub struct LatticeQuotient {
    pub lattice: Arc<SubgroupLattice>,
    map: Vec<Elem>,
}

impl LatticeQuotient {
    pub fn project(&self, x: Elem) -> Elem {
        self.map[x as usize]
    }

    /// `HN/N` as a subgroup id of the quotient lattice.
    pub fn push(&self, from: &SubgroupLattice, h: SubId) -> SubId {
        let mut elems = self.lattice.table().empty_set();
        for x in from.sub(h).members() {
            elems.insert(self.map[x as usize] as usize);
        }
        self.lattice
            .id_of_elems(&elems)
            .expect("image of a subgroup")
    }

    /// Full preimage of a quotient subgroup.
    pub fn preimage(&self, from: &SubgroupLattice, q: SubId) -> SubId {
        let target = &self.lattice.sub(q).elems;
        let mut elems = from.table().empty_set();
        for (x, &y) in self.map.iter().enumerate() {
            if target.contains(y as usize) {
                elems.insert(x);
            }
        }
        from.id_of_elems(&elems).expect("preimage of a subgroup")
    }
}

fn minimal_elements(l: &SubgroupLattice, ids: &[SubId]) -> Vec<SubId> {
    ids.iter()
        .copied()
        .filter(|&a| !ids.iter().any(|&b| b != a && l.le(b, a)))
        .collect()
}

fn maximal_elements(l: &SubgroupLattice, ids: &[SubId]) -> Vec<SubId> {
    ids.iter()
        .copied()
        .filter(|&a| !ids.iter().any(|&b| b != a && l.le(a, b)))
        .collect()
}
