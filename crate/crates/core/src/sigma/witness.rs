//! Certificates for positive answers, and a verifier that re-checks them
//! with generator-level group operations only (orders, membership, joins,
//! meets, cores). It never touches the Cayley table or the lattice.

use std::collections::{BTreeSet, HashSet};

use super::{SigmaContext, SigmaPartition};
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::lattice::SubId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    SubnormalChain,
    HallSet,
    SupplementT,
    CoreGenerators,
}

/// A subgroup with the complete Hall σ-set it permutes with.
#[derive(Clone, Debug)]
pub struct PermutablePart {
    pub subgroup: FiniteGroup,
    pub hall_set: Vec<FiniteGroup>,
}

#[derive(Clone, Debug)]
pub enum SigmaWitness {
    /// `H = H_0 ≤ .. ≤ H_t = G`.
    SubnormalChain { chain: Vec<FiniteGroup> },
    /// A complete Hall σ-set all of whose conjugates permute with `H`.
    HallSet { members: Vec<FiniteGroup> },
    /// `T` with its σ-subnormal chain, and σ-permutable subgroups of `H`
    /// whose join contains `H ∩ T`.
    SupplementT {
        t: FiniteGroup,
        chain: Vec<FiniteGroup>,
        core_parts: Vec<PermutablePart>,
    },
    /// σ-permutable subgroups of `H` generating `core`.
    CoreGenerators {
        core: FiniteGroup,
        parts: Vec<PermutablePart>,
    },
}

impl SigmaWitness {
    pub fn kind(&self) -> WitnessKind {
        match self {
            SigmaWitness::SubnormalChain { .. } => WitnessKind::SubnormalChain,
            SigmaWitness::HallSet { .. } => WitnessKind::HallSet,
            SigmaWitness::SupplementT { .. } => WitnessKind::SupplementT,
            SigmaWitness::CoreGenerators { .. } => WitnessKind::CoreGenerators,
        }
    }

    /// Re-checks the certificate for the pair `h ≤ g`.
    pub fn verify(&self, h: &FiniteGroup, g: &FiniteGroup, sigma: &SigmaPartition) -> Result<bool> {
        if !h.is_subgroup_of(g) {
            return Ok(false);
        }
        match self {
            SigmaWitness::SubnormalChain { chain } => verify_chain(h, g, sigma, chain),
            SigmaWitness::HallSet { members } => verify_hall_set(h, g, sigma, members),
            SigmaWitness::SupplementT {
                t,
                chain,
                core_parts,
            } => {
                if !verify_chain(t, g, sigma, chain)? {
                    return Ok(false);
                }
                if h.order() * t.order() != g.order() * h.meet(t)?.order() {
                    return Ok(false);
                }
                let Some(core) = verify_parts(h, g, sigma, core_parts)? else {
                    return Ok(false);
                };
                Ok(h.meet(t)?.is_subgroup_of(&core))
            }
            SigmaWitness::CoreGenerators { core, parts } => {
                let Some(joined) = verify_parts(h, g, sigma, parts)? else {
                    return Ok(false);
                };
                Ok(&joined == core)
            }
        }
    }
}

fn verify_chain(
    h: &FiniteGroup,
    g: &FiniteGroup,
    sigma: &SigmaPartition,
    chain: &[FiniteGroup],
) -> Result<bool> {
    let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
        return Ok(false);
    };
    if first != h || last != g {
        return Ok(false);
    }
    for w in chain.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if !a.is_subgroup_of(b) {
            return Ok(false);
        }
        if !(a.is_normal_in(b) || sigma.is_primary(b.order() / b.core(a)?.order())) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify_hall_set(
    h: &FiniteGroup,
    g: &FiniteGroup,
    sigma: &SigmaPartition,
    members: &[FiniteGroup],
) -> Result<bool> {
    let mut blocks = BTreeSet::new();
    for m in members {
        if !m.is_subgroup_of(g) {
            return Ok(false);
        }
        let own = sigma.sigma_of(m.order()).blocks;
        let [b] = own.iter().copied().collect::<Vec<_>>()[..] else {
            return Ok(false);
        };
        if sigma.sigma_of(g.order() / m.order()).blocks.contains(&b) || !blocks.insert(b) {
            return Ok(false);
        }
    }
    let full = blocks == sigma.sigma_of(g.order()).blocks;
    // 1 and G are permutable by convention, whatever the Hall sets
    if h.is_trivial() || h == g {
        return Ok(members.is_empty() || full);
    }
    if !full {
        return Ok(false);
    }
    let elements = g.elements()?;
    for a in members {
        let a_elems = a.elements()?;
        let mut seen = HashSet::new();
        for x in elements.iter() {
            let mut conj: Vec<_> = a_elems
                .iter()
                .map(|y| y.conjugate_by(x))
                .collect::<Result<_>>()?;
            conj.sort();
            if seen.insert(conj) && !h.permutes(&a.conjugate(x))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks each part and returns the join of the parts.
fn verify_parts(
    h: &FiniteGroup,
    g: &FiniteGroup,
    sigma: &SigmaPartition,
    parts: &[PermutablePart],
) -> Result<Option<FiniteGroup>> {
    let mut join = FiniteGroup::trivial(g.degree());
    for p in parts {
        if !p.subgroup.is_subgroup_of(h) || !verify_hall_set(&p.subgroup, g, sigma, &p.hall_set)? {
            return Ok(None);
        }
        join = join.join(&p.subgroup)?;
    }
    Ok(Some(join))
}

impl SigmaContext {
    fn groups(&self, ids: &[SubId]) -> Vec<FiniteGroup> {
        ids.iter().map(|&i| self.lattice.to_group(i)).collect()
    }

    pub fn subnormal_witness(&self, h: SubId, k: SubId) -> Option<SigmaWitness> {
        let chain = self.subnormal_chain(h, k)?;
        Some(SigmaWitness::SubnormalChain {
            chain: self.groups(&chain),
        })
    }

    pub fn permutable_witness(&self, h: SubId, k: SubId) -> Option<SigmaWitness> {
        if !self.is_sigma_permutable(h, k) {
            return None;
        }
        let p = self.permutability(h, k);
        let members: Vec<SubId> = p
            .hall_set
            .as_ref()
            .map(|s| s.members.values().copied().collect())
            .unwrap_or_default();
        Some(SigmaWitness::HallSet {
            members: self.groups(&members),
        })
    }

    fn parts(&self, h: SubId, k: SubId) -> Vec<PermutablePart> {
        self.sigma_core_parts(h, k)
            .into_iter()
            .map(|x| {
                let Some(SigmaWitness::HallSet { members }) = self.permutable_witness(x, k) else {
                    unreachable!("core parts are σ-permutable")
                };
                PermutablePart {
                    subgroup: self.lattice.to_group(x),
                    hall_set: members,
                }
            })
            .collect()
    }

    pub fn core_witness(&self, h: SubId, k: SubId) -> SigmaWitness {
        SigmaWitness::CoreGenerators {
            core: self.lattice.to_group(self.sigma_core(h, k)),
            parts: self.parts(h, k),
        }
    }

    pub fn weak_witness(&self, h: SubId, k: SubId) -> Option<SigmaWitness> {
        let t = self.weak_supplement(h, k)?;
        Some(SigmaWitness::SupplementT {
            t: self.lattice.to_group(t),
            chain: self.groups(&self.subnormal_chain(t, k).expect("T is σ-subnormal")),
            core_parts: self.parts(h, k),
        })
    }
}
