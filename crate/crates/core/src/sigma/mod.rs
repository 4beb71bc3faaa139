//! Predicates relative to a partition σ of the primes.
//!
//! Everything is evaluated on a [`SubgroupLattice`]; each query names an
//! ambient subgroup `k` of the lattice's top group, so the same context
//! answers questions inside any subgroup. Results are memoised per
//! `(ambient, σ)` and the context may be shared between threads.

mod classical;
mod partition;
mod witness;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use crate::lattice::{SubId, SubgroupLattice};

pub use classical::Classical;
pub use partition::{Block, SigmaClass, SigmaPartition};
pub use witness::{PermutablePart, SigmaWitness, WitnessKind};

/// One Hall σ_i-subgroup of the ambient for every block of σ(|ambient|).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteHallSigmaSet {
    pub ambient: SubId,
    pub members: BTreeMap<Block, SubId>,
}

/// Outcome of a σ-permutability test under both quantifier readings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutability {
    /// Some complete Hall σ-set works.
    pub existential: bool,
    /// The ambient is σ-full and every complete Hall σ-set works.
    pub universal: bool,
    /// A complete Hall σ-set that works, when one exists.
    pub hall_set: Option<CompleteHallSigmaSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaSolubility {
    pub sigma_soluble: bool,
    pub sigma_nilpotent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaOperators {
    pub o_upper: SubId,
    pub o_lower: SubId,
}

/// Which complete Hall σ-sets σ-permutability quantifies over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Reading {
    /// Some complete Hall σ-set works.
    #[default]
    Existential,
    /// The ambient is σ-full and every complete Hall σ-set works.
    Universal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reach {
    No,
    Top,
    Via(SubId),
}

struct Memo<K, V>(Mutex<HashMap<K, V>>);

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo(Mutex::new(HashMap::new()))
    }

    // Computed outside the lock; concurrent duplicates compute the same value.
    fn get_or(&self, key: K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.0.lock().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = f();
        self.0
            .lock()
            .expect("memo lock")
            .entry(key)
            .or_insert(v)
            .clone()
    }
}

pub struct SigmaContext {
    lattice: Arc<SubgroupLattice>,
    sigma: SigmaPartition,
    reading: Reading,
    reach: Memo<SubId, Arc<Vec<Reach>>>,
    hall_classes: Memo<(SubId, Block), Arc<Vec<Vec<SubId>>>>,
    permutable: Memo<(SubId, SubId), Arc<Permutability>>,
    cores: Memo<(SubId, SubId), SubId>,
    weak: Memo<(SubId, SubId), Option<SubId>>,
    d_groups: Memo<(usize, Block), bool>,
}

impl SigmaContext {
    pub fn new(lattice: Arc<SubgroupLattice>, sigma: SigmaPartition) -> Self {
        Self::with_reading(lattice, sigma, Reading::Existential)
    }

    /// A context whose σ-permutability (and so σ-cores and weak
    /// σ-permutability) follows the given reading.
    pub fn with_reading(
        lattice: Arc<SubgroupLattice>,
        sigma: SigmaPartition,
        reading: Reading,
    ) -> Self {
        SigmaContext {
            lattice,
            sigma,
            reading,
            reach: Memo::new(),
            hall_classes: Memo::new(),
            permutable: Memo::new(),
            cores: Memo::new(),
            weak: Memo::new(),
            d_groups: Memo::new(),
        }
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn shared_lattice(&self) -> Arc<SubgroupLattice> {
        self.lattice.clone()
    }

    pub fn sigma(&self) -> &SigmaPartition {
        &self.sigma
    }

    pub fn reading(&self) -> Reading {
        self.reading
    }

    pub fn top(&self) -> SubId {
        self.lattice.top()
    }

    /// σ(|k|).
    pub fn sigma_of(&self, k: SubId) -> BTreeSet<Block> {
        self.sigma.sigma_of(self.lattice.order(k)).blocks
    }

    pub fn is_sigma_primary(&self, k: SubId) -> bool {
        self.sigma.is_primary(self.lattice.order(k))
    }

    /// |k| is a Π-number.
    pub fn is_pi_group(&self, k: SubId, pi: &BTreeSet<Block>) -> bool {
        self.sigma_of(k).is_subset(pi)
    }

    /// Hall Π-subgroups of `k`.
    pub fn hall_subgroups(&self, k: SubId, pi: &BTreeSet<Block>) -> Vec<SubId> {
        let target = self.sigma.pi_part(self.lattice.order(k), pi);
        self.lattice
            .below(k)
            .into_iter()
            .filter(|&h| self.lattice.order(h) == target)
            .collect()
    }

    /// Hall σ_b-subgroups of `k`, grouped into `k`-conjugacy classes.
    fn hall_classes(&self, k: SubId, b: Block) -> Arc<Vec<Vec<SubId>>> {
        self.hall_classes.get_or((k, b), || {
            let mut classes: Vec<Vec<SubId>> = Vec::new();
            for h in self.hall_subgroups(k, &BTreeSet::from([b])) {
                if classes.iter().all(|c| !c.contains(&h)) {
                    classes.push(self.lattice.conjugates_under(h, k));
                }
            }
            Arc::new(classes)
        })
    }

    pub fn hall_for_block(&self, k: SubId, b: Block) -> Vec<SubId> {
        let mut out: Vec<SubId> = self.hall_classes(k, b).iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn is_sigma_full(&self, k: SubId) -> bool {
        self.sigma_of(k)
            .into_iter()
            .all(|b| !self.hall_classes(k, b).is_empty())
    }

    /// `k` has a Hall σ_i-subgroup for every σ_i ∈ Π ∩ σ(k).
    pub fn is_pi_full(&self, k: SubId, pi: &BTreeSet<Block>) -> bool {
        self.sigma_of(k)
            .intersection(pi)
            .all(|&b| !self.hall_classes(k, b).is_empty())
    }

    /// Every complete Hall σ-set of `k`: the cartesian product of the
    /// per-block Hall lists.
    pub fn complete_hall_sigma_sets(&self, k: SubId) -> Vec<CompleteHallSigmaSet> {
        let mut sets = vec![BTreeMap::new()];
        for b in self.sigma_of(k) {
            let halls = self.hall_for_block(k, b);
            sets = sets
                .into_iter()
                .flat_map(|s| {
                    halls.iter().map(move |&h| {
                        let mut s = s.clone();
                        s.insert(b, h);
                        s
                    })
                })
                .collect();
        }
        sets.into_iter()
            .map(|members| CompleteHallSigmaSet {
                ambient: k,
                members,
            })
            .collect()
    }

    /// `e` is a D_{σ_b}-group: Hall σ_b-subgroups exist, are conjugate, and
    /// contain every σ_b-subgroup of `e`. Invariant under conjugation, so
    /// memoised per conjugacy class.
    pub fn is_d_group(&self, e: SubId, b: Block) -> bool {
        let l = &self.lattice;
        self.d_groups.get_or((l.class_of(e), b), || {
            let classes = self.hall_classes(e, b);
            if classes.len() != 1 {
                return false;
            }
            let halls = &classes[0];
            let pi = BTreeSet::from([b]);
            l.below(e)
                .into_iter()
                .filter(|&x| self.is_pi_group(x, &pi))
                .all(|x| halls.iter().any(|&h| l.le(x, h)))
        })
    }

    /// Every subgroup of `k` is a D_{σ_i}-group for each σ_i ∈ σ(k).
    pub fn is_sigma_full_of_sylow_type(&self, k: SubId) -> bool {
        let blocks = self.sigma_of(k);
        self.lattice
            .below(k)
            .into_iter()
            .all(|e| blocks.iter().all(|&b| self.is_d_group(e, b)))
    }

    /// `a → b` step of a σ-subnormal chain, for `a ≤ b`.
    fn edge(&self, a: SubId, b: SubId) -> bool {
        let l = &self.lattice;
        if self.is_sigma_primary(b) {
            return true;
        }
        if self.sigma.is_primary(l.order(b) / l.order(a)) {
            let core = l.core(a, b);
            if self.sigma.is_primary(l.order(b) / l.order(core)) {
                return true;
            }
        }
        l.is_normal(a, b)
    }

    fn reach(&self, k: SubId) -> Arc<Vec<Reach>> {
        self.reach.get_or(k, || {
            let l = &self.lattice;
            let mut reach = vec![Reach::No; l.len()];
            reach[k] = Reach::Top;
            // descending by order, so the largest supergroups are tried first
            let mut reached = vec![k];
            for &a in l.below(k).iter().rev().skip(1) {
                let step = reached
                    .iter()
                    .copied()
                    .find(|&b| l.order(b) > l.order(a) && l.le(a, b) && self.edge(a, b));
                if let Some(b) = step {
                    reach[a] = Reach::Via(b);
                    reached.push(a);
                }
            }
            Arc::new(reach)
        })
    }

    pub fn is_sigma_subnormal(&self, h: SubId, k: SubId) -> bool {
        self.lattice.le(h, k) && self.reach(k)[h] != Reach::No
    }

    /// A chain `h = H_0 < .. < H_t = k` witnessing σ-subnormality.
    pub fn subnormal_chain(&self, h: SubId, k: SubId) -> Option<Vec<SubId>> {
        if !self.lattice.le(h, k) {
            return None;
        }
        let reach = self.reach(k);
        let mut chain = vec![h];
        let mut cur = h;
        loop {
            match reach[cur] {
                Reach::No => return None,
                Reach::Top => return Some(chain),
                Reach::Via(b) => {
                    chain.push(b);
                    cur = b;
                }
            }
        }
    }

    pub fn permutability(&self, h: SubId, k: SubId) -> Arc<Permutability> {
        self.permutable
            .get_or((k, h), || Arc::new(self.compute_permutability(h, k)))
    }

    fn compute_permutability(&self, h: SubId, k: SubId) -> Permutability {
        let l = &self.lattice;
        if !l.le(h, k) {
            return Permutability {
                existential: false,
                universal: false,
                hall_set: None,
            };
        }
        let full = self.is_sigma_full(k);
        let any_set = || {
            full.then(|| {
                let members = self
                    .sigma_of(k)
                    .into_iter()
                    .map(|b| (b, self.hall_classes(k, b)[0][0]))
                    .collect();
                CompleteHallSigmaSet {
                    ambient: k,
                    members,
                }
            })
        };
        if h == l.trivial() || h == k {
            return Permutability {
                existential: true,
                universal: true,
                hall_set: any_set(),
            };
        }
        if !full {
            return Permutability {
                existential: false,
                universal: false,
                hall_set: None,
            };
        }
        // H permutes with every conjugate of every member iff it does so per
        // block, so the search factorises over blocks and conjugacy classes.
        let mut members = BTreeMap::new();
        let mut universal = true;
        let mut existential = true;
        for b in self.sigma_of(k) {
            let mut found = None;
            for class in self.hall_classes(k, b).iter() {
                if class.iter().all(|&a| l.permutes(h, a)) {
                    found.get_or_insert(class[0]);
                } else {
                    universal = false;
                }
            }
            match found {
                Some(a) => {
                    members.insert(b, a);
                }
                None => existential = false,
            }
        }
        Permutability {
            existential,
            universal,
            hall_set: existential.then_some(CompleteHallSigmaSet {
                ambient: k,
                members,
            }),
        }
    }

    pub fn is_sigma_permutable(&self, h: SubId, k: SubId) -> bool {
        let p = self.permutability(h, k);
        match self.reading {
            Reading::Existential => p.existential,
            Reading::Universal => p.universal,
        }
    }

    /// Join of the subgroups of `h` that are σ-permutable in `k`.
    pub fn sigma_core(&self, h: SubId, k: SubId) -> SubId {
        self.cores.get_or((k, h), || {
            if self.is_sigma_permutable(h, k) {
                return h;
            }
            let parts = self
                .lattice
                .below(h)
                .into_iter()
                .filter(|&x| self.is_sigma_permutable(x, k));
            self.lattice.join_all(parts)
        })
    }

    /// The σ-permutable subgroups of `h` needed to generate its σ-core.
    pub fn sigma_core_parts(&self, h: SubId, k: SubId) -> Vec<SubId> {
        let l = &self.lattice;
        let core = self.sigma_core(h, k);
        let mut acc = l.trivial();
        let mut parts = Vec::new();
        for x in l.below(core).into_iter().rev() {
            if acc == core {
                break;
            }
            if !l.le(x, acc) && self.is_sigma_permutable(x, k) {
                acc = l.join(acc, x);
                parts.push(x);
            }
        }
        parts
    }

    /// A σ-subnormal `T ≤ k` with `k = hT` and `h ∩ T ≤ sigma_core(h, k)`,
    /// of least order.
    pub fn weak_supplement(&self, h: SubId, k: SubId) -> Option<SubId> {
        let l = &self.lattice;
        if !l.le(h, k) {
            return None;
        }
        self.weak.get_or((k, h), || {
            let order = l.order(k);
            let core = l.sub(self.sigma_core(h, k)).elems.clone();
            l.below(k).into_iter().find(|&t| {
                l.order(t) * l.order(h) >= order
                    && l.product_order(h, t) == order
                    && l.sub(h)
                        .elems
                        .intersection(&l.sub(t).elems)
                        .all(|x| core.contains(x))
                    && self.is_sigma_subnormal(t, k)
            })
        })
    }

    pub fn is_weakly_sigma_permutable(&self, h: SubId, k: SubId) -> bool {
        self.weak_supplement(h, k).is_some()
    }

    pub fn sigma_solubility(&self, k: SubId) -> SigmaSolubility {
        let l = &self.lattice;
        let series = l.chief_series(k, None).expect("no intermediate term");
        let sigma_soluble = series
            .factors
            .iter()
            .all(|f| self.sigma.is_primary(f.order));
        let sigma_nilpotent = series.factors.iter().all(|f| {
            let c = l.centralizer_of_factor(f.upper, f.lower, k);
            self.sigma.is_primary(f.order * (l.order(k) / l.order(c)))
        });
        SigmaSolubility {
            sigma_soluble,
            sigma_nilpotent,
        }
    }

    /// O^Π(k) and O_Π(k).
    pub fn sigma_operators(&self, k: SubId, pi: &BTreeSet<Block>) -> SigmaOperators {
        let l = &self.lattice;
        let below = l.below(k);
        let o_upper = l.join_all(
            below
                .iter()
                .copied()
                .filter(|&x| self.sigma_of(x).is_disjoint(pi)),
        );
        let o_lower = l.join_all(
            below
                .iter()
                .copied()
                .filter(|&x| self.is_pi_group(x, pi) && l.is_normal(x, k)),
        );
        SigmaOperators { o_upper, o_lower }
    }
}

#[cfg(test)]
mod tests;
