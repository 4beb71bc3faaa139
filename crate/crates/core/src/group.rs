//! Permutation groups given by generators.
//!
//! A [`FiniteGroup`] is immutable apart from lazily filled caches (stabiliser
//! chain and, for groups of order at most [`ENUMERATION_CUTOFF`], the sorted
//! element list). Subgroups produced by the operations here carry a `parent`
//! pointing at the group they were computed in.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::primes;

/// Groups above this order are never enumerated element by element.
pub const ENUMERATION_CUTOFF: u64 = 200_000;

#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    parent: Option<Arc<FiniteGroup>>,
    chain: OnceLock<Arc<StabChain>>,
    elements: OnceLock<Arc<Vec<Permutation>>>,
}

/// A subgroup together with the group it is measured against.
#[derive(Clone, Debug)]
pub struct SubgroupPair {
    pub sub: FiniteGroup,
    pub ambient: FiniteGroup,
}

impl SubgroupPair {
    pub fn new(sub: FiniteGroup, ambient: FiniteGroup) -> Result<Self> {
        if !sub.is_subgroup_of(&ambient) {
            return Err(Error::NotInAmbient);
        }
        Ok(SubgroupPair { sub, ambient })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Structure {
    pub soluble: bool,
    pub nilpotent: bool,
}

impl FiniteGroup {
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidParams("degree must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        let mut generators: Vec<Permutation> = generators
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect();
        generators.dedup();
        Ok(FiniteGroup {
            degree,
            generators,
            parent: None,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        FiniteGroup::from_generators(degree, Vec::new()).expect("positive degree")
    }

    /// Same group, recorded as a subgroup of `parent`.
    pub fn with_parent(mut self, parent: &FiniteGroup) -> Self {
        self.parent = Some(Arc::new(parent.clone()));
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn parent(&self) -> Option<&FiniteGroup> {
        self.parent.as_deref()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| Arc::new(StabChain::new(self.degree, &self.generators)))
    }

    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(self.chain().contains(p))
    }

    /// Membership without the degree check (false on mismatch).
    pub fn has(&self, p: &Permutation) -> bool {
        self.chain().contains(p)
    }

    /// The elements in increasing lexicographic order of their image arrays.
    pub fn elements(&self) -> Result<Arc<Vec<Permutation>>> {
        let order = self.order();
        if order > ENUMERATION_CUTOFF {
            return Err(Error::CutoffExceeded {
                order,
                cutoff: ENUMERATION_CUTOFF,
            });
        }
        Ok(self
            .elements
            .get_or_init(|| {
                let mut els = self.chain().elements();
                els.sort_unstable();
                Arc::new(els)
            })
            .clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.has(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a * b == b * a))
    }

    pub fn is_cyclic(&self) -> Result<bool> {
        let n = self.order();
        if n == 1 {
            return Ok(true);
        }
        Ok(self.elements()?.iter().any(|x| x.order() == n))
    }

    fn check_sub(&self, h: &FiniteGroup) -> Result<()> {
        if h.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: h.degree,
            });
        }
        if !h.is_subgroup_of(self) {
            return Err(Error::NotInAmbient);
        }
        Ok(())
    }

    fn child(&self, generators: Vec<Permutation>) -> FiniteGroup {
        FiniteGroup::from_generators(self.degree, generators)
            .expect("degrees checked")
            .with_parent(self)
    }

    /// `h` normalised by every generator of `self`.
    pub fn normalizes(&self, h: &FiniteGroup) -> bool {
        self.generators.iter().all(|g| {
            h.generators
                .iter()
                .all(|x| h.has(&x.conjugate_by(g).expect("same degree")))
        })
    }

    pub fn is_normal_in(&self, ambient: &FiniteGroup) -> bool {
        self.is_subgroup_of(ambient) && ambient.normalizes(self)
    }

    /// ⟨seeds⟩ as a subgroup of `self`.
    pub fn subgroup_generated(&self, seeds: &[Permutation]) -> Result<FiniteGroup> {
        for s in seeds {
            if !self.contains(s)? {
                return Err(Error::NotInAmbient);
            }
        }
        Ok(self.child(seeds.to_vec()))
    }

    pub fn conjugate(&self, by: &Permutation) -> FiniteGroup {
        let gens = self
            .generators
            .iter()
            .map(|g| g.conjugate_by(by).expect("same degree"))
            .collect();
        let mut out = FiniteGroup::from_generators(self.degree, gens).expect("same degree");
        out.parent = self.parent.clone();
        out
    }

    /// Smallest normal subgroup of `self` containing `h`.
    pub fn normal_closure(&self, h: &FiniteGroup) -> Result<FiniteGroup> {
        self.check_sub(h)?;
        let mut gens = h.generators.clone();
        let mut current = FiniteGroup::from_generators(self.degree, gens.clone())?;
        let mut i = 0;
        while i < gens.len() {
            for g in &self.generators {
                let y = gens[i].conjugate_by(g)?;
                if !current.has(&y) {
                    gens.push(y);
                    current = FiniteGroup::from_generators(self.degree, gens.clone())?;
                }
            }
            i += 1;
        }
        Ok(self.child(gens))
    }

    /// Largest normal subgroup of `self` contained in `h`.
    pub fn core(&self, h: &FiniteGroup) -> Result<FiniteGroup> {
        self.check_sub(h)?;
        let mut current = h.clone();
        loop {
            let mut next = current.clone();
            for g in &self.generators {
                next = next.meet(&current.conjugate(g))?;
            }
            if next.order() == current.order() {
                return Ok(self.child(current.generators));
            }
            current = next;
        }
    }

    pub fn normalizer(&self, h: &FiniteGroup) -> Result<FiniteGroup> {
        self.check_sub(h)?;
        let els = self.elements()?;
        let gens = minimal_generators(
            self.degree,
            els.iter().filter(|g| {
                h.generators
                    .iter()
                    .all(|x| h.has(&x.conjugate_by(g).expect("same degree")))
            }),
        );
        Ok(self.child(gens))
    }

    pub fn centralizer(&self, h: &FiniteGroup) -> Result<FiniteGroup> {
        self.check_sub(h)?;
        let els = self.elements()?;
        let gens = minimal_generators(
            self.degree,
            els.iter()
                .filter(|g| h.generators.iter().all(|x| (*g * x) == (x * *g))),
        );
        Ok(self.child(gens))
    }

    /// `H ∩ K`, computed by filtering the smaller group's elements.
    pub fn meet(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        if other.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let els = small.elements()?;
        let gens = minimal_generators(self.degree, els.iter().filter(|x| big.has(x)));
        let mut out = FiniteGroup::from_generators(self.degree, gens)?;
        out.parent = self.parent.clone();
        Ok(out)
    }

    /// `⟨H, K⟩`.
    pub fn join(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        if other.degree != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().filter(|g| !self.has(g)).cloned());
        let mut out = FiniteGroup::from_generators(self.degree, gens)?;
        out.parent = self.parent.clone();
        Ok(out)
    }

    /// `HK = KH`, tested through the order of the join:
    /// `|⟨H, K⟩| = |H||K| / |H ∩ K|`.
    pub fn permutes(&self, other: &FiniteGroup) -> Result<bool> {
        let meet = self.meet(other)?.order();
        let join = self.join(other)?.order();
        Ok(join * meet == self.order() * other.order())
    }

    /// A Sylow `p`-subgroup, grown inside successive normalisers.
    pub fn sylow_subgroup(&self, p: u64) -> Result<FiniteGroup> {
        if !primes::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let target = primes::p_part(self.order(), p);
        let mut sylow = self.child(Vec::new());
        while sylow.order() < target {
            let normalizer = self.normalizer(&sylow)?;
            let els = normalizer.elements()?;
            let x = els
                .iter()
                .find(|x| {
                    if sylow.has(x) {
                        return false;
                    }
                    // x has p-power order modulo the current p-subgroup
                    let mut y = (*x).clone();
                    for _ in 0..64 {
                        if sylow.has(&y) {
                            return true;
                        }
                        y = y.pow(p);
                    }
                    false
                })
                .expect("a p-subgroup below the Sylow order grows inside its normaliser")
                .clone();
            let mut gens = sylow.generators.clone();
            gens.push(x);
            sylow = self.child(gens);
        }
        Ok(sylow)
    }

    /// `[A, B]` as the normal closure in `⟨A, B⟩`-invariant form: the subgroup
    /// generated by commutators of generators, closed under conjugation by `self`.
    fn commutator_in(&self, a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
        let mut seeds = Vec::new();
        for x in &a.generators {
            for y in &b.generators {
                let c = &(&x.inverse() * &y.inverse()) * &(x * y);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        let seed = FiniteGroup::from_generators(self.degree, seeds)?;
        self.normal_closure(&seed)
    }

    pub fn derived_subgroup(&self) -> Result<FiniteGroup> {
        self.commutator_in(self, self)
    }

    /// Solubility via the derived series, nilpotency via the lower central series.
    pub fn structure(&self) -> Result<Structure> {
        let mut d = self.clone();
        let soluble = loop {
            if d.order() == 1 {
                break true;
            }
            let next = d.derived_subgroup()?;
            if next.order() == d.order() {
                break false;
            }
            d = next;
        };
        let mut gamma = self.clone();
        let nilpotent = loop {
            if gamma.order() == 1 {
                break true;
            }
            let next = self.commutator_in(&gamma, self)?;
            if next.order() == gamma.order() {
                break false;
            }
            gamma = next;
        };
        Ok(Structure { soluble, nilpotent })
    }
}

/// A generating set for the subgroup formed by `elements`, grown greedily.
pub(crate) fn minimal_generators<'a>(
    degree: usize,
    elements: impl Iterator<Item = &'a Permutation>,
) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut chain = StabChain::new(degree, &[]);
    for x in elements {
        if !chain.contains(x) {
            gens.push(x.clone());
            chain = StabChain::new(degree, &gens);
        }
    }
    gens
}

impl PartialEq for FiniteGroup {
    /// Equality as subgroups: mutual membership of generators.
    fn eq(&self, other: &Self) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Quotient `G/N` realised as the action of `G` on the right cosets of `N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    reps: Vec<Permutation>,
    coset_of: HashMap<Permutation, usize>,
}

impl Quotient {
    /// Image of an element of `G` as a permutation of the cosets.
    pub fn project(&self, g: &Permutation) -> Permutation {
        let images = self
            .reps
            .iter()
            .map(|r| self.coset_of[&(r * g)] as u32)
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// `HN/N` for a subgroup `H` of `G`.
    pub fn push(&self, h: &FiniteGroup) -> FiniteGroup {
        let gens = h.generators.iter().map(|g| self.project(g)).collect();
        FiniteGroup::from_generators(self.group.degree, gens)
            .expect("coset degree")
            .with_parent(&self.group)
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }
}

impl FiniteGroup {
    pub fn quotient(&self, n: &FiniteGroup) -> Result<Quotient> {
        self.check_sub(n)?;
        if !self.normalizes(n) {
            return Err(Error::NotNormal);
        }
        let els = self.elements()?;
        let n_els = n.elements()?;
        let mut coset_of = HashMap::with_capacity(els.len());
        let mut reps = Vec::new();
        for x in els.iter() {
            if coset_of.contains_key(x) {
                continue;
            }
            let id = reps.len();
            reps.push(x.clone());
            for m in n_els.iter() {
                coset_of.insert(m * x, id);
            }
        }
        let degree = reps.len();
        let project = |g: &Permutation| {
            let images = reps.iter().map(|r| coset_of[&(r * g)] as u32).collect();
            Permutation::from_images_unchecked(images)
        };
        let gens = self.generators.iter().map(project).collect();
        let group = FiniteGroup::from_generators(degree, gens)?;
        Ok(Quotient {
            group,
            reps,
            coset_of,
        })
    }
}
