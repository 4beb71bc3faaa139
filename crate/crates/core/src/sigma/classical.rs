use std::sync::Arc;

use super::Memo;
use crate::error::{Error, Result};
use crate::lattice::{SubId, SubgroupLattice};
use crate::primes;

/// Partition-free predicates: s-permutability, c-normality, weak
/// s-permutability and hypercyclic embedding.
pub struct Classical {
    lattice: Arc<SubgroupLattice>,
    sylows: Memo<SubId, Arc<Vec<SubId>>>,
    s_permutable: Memo<(SubId, SubId), bool>,
    s_cores: Memo<(SubId, SubId), SubId>,
}

impl Classical {
    pub fn new(lattice: Arc<SubgroupLattice>) -> Self {
        Classical {
            lattice,
            sylows: Memo::new(),
            s_permutable: Memo::new(),
            s_cores: Memo::new(),
        }
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    fn sylows(&self, k: SubId) -> Arc<Vec<SubId>> {
        self.sylows
            .get_or(k, || Arc::new(self.lattice.all_sylow_subgroups(k)))
    }

    /// `h` permutes with every Sylow subgroup of `k`.
    pub fn is_s_permutable(&self, h: SubId, k: SubId) -> bool {
        let l = &self.lattice;
        l.le(h, k)
            && self
                .s_permutable
                .get_or((k, h), || self.sylows(k).iter().all(|&p| l.permutes(h, p)))
    }

    /// Join of the s-permutable subgroups of `k` inside `h`.
    pub fn s_core(&self, h: SubId, k: SubId) -> SubId {
        self.s_cores.get_or((k, h), || {
            let l = &self.lattice;
            let core = l.join_all(
                l.below(h)
                    .into_iter()
                    .filter(|&x| self.is_s_permutable(x, k)),
            );
            assert!(
                self.is_s_permutable(core, k),
                "join of s-permutable subgroups"
            );
            core
        })
    }

    /// A normal `T ⊴ k` with `k = hT` and `h ∩ T ≤ core_k(h)`.
    pub fn c_normal_supplement(&self, h: SubId, k: SubId) -> Option<SubId> {
        let l = &self.lattice;
        let core = l.core(h, k);
        self.supplement(h, k, core, |t| l.is_normal(t, k))
    }

    /// A subnormal `T ≤ k` with `k = hT` and `h ∩ T ≤ s_core(h, k)`.
    pub fn weak_s_supplement(&self, h: SubId, k: SubId) -> Option<SubId> {
        let l = &self.lattice;
        let core = self.s_core(h, k);
        self.supplement(h, k, core, |t| l.is_subnormal(t, k))
    }

    fn supplement(
        &self,
        h: SubId,
        k: SubId,
        core: SubId,
        ok: impl Fn(SubId) -> bool,
    ) -> Option<SubId> {
        let l = &self.lattice;
        if !l.le(h, k) {
            return None;
        }
        let order = l.order(k);
        let core = &l.sub(core).elems;
        l.below(k).into_iter().find(|&t| {
            l.product_order(h, t) == order
                && l.sub(h)
                    .elems
                    .intersection(&l.sub(t).elems)
                    .all(|x| core.contains(x))
                && ok(t)
        })
    }

    pub fn is_c_normal(&self, h: SubId, k: SubId) -> bool {
        self.c_normal_supplement(h, k).is_some()
    }

    pub fn is_weakly_s_permutable(&self, h: SubId, k: SubId) -> bool {
        self.weak_s_supplement(h, k).is_some()
    }

    /// Every chief factor of `k` below the normal subgroup `e` has prime order.
    pub fn is_hypercyclically_embedded(&self, e: SubId, k: SubId) -> Result<bool> {
        let l = &self.lattice;
        if !l.is_normal(e, k) {
            return Err(Error::NotNormal);
        }
        let series = l.chief_series(k, Some(e))?;
        Ok(series
            .factors
            .iter()
            .filter(|f| l.le(f.upper, e))
            .all(|f| primes::is_prime(f.order)))
    }

    /// Z_𝔘(k): the join of the hypercyclically embedded normal subgroups.
    pub fn z_u_hypercentre(&self, k: SubId) -> SubId {
        let l = &self.lattice;
        l.join_all(
            l.normal_subgroups(k)
                .into_iter()
                .filter(|&e| self.is_hypercyclically_embedded(e, k).expect("normal")),
        )
    }
}
