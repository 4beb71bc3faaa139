use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::primes;

/// Index of a block of a [`SigmaPartition`].
pub type Block = usize;

/// A partition of a finite set of primes into disjoint non-empty blocks.
///
/// Primes outside every block belong to an implicit residual block whose
/// index is `blocks().len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaPartition {
    blocks: Vec<BTreeSet<u64>>,
}

/// σ(n) for a positive integer `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaClass {
    pub blocks: BTreeSet<Block>,
}

impl SigmaClass {
    pub fn is_primary(&self) -> bool {
        self.blocks.len() <= 1
    }

    /// `n` is a Π-number.
    pub fn is_pi_number(&self, pi: &BTreeSet<Block>) -> bool {
        self.blocks.is_subset(pi)
    }
}

impl SigmaPartition {
    pub fn new(blocks: Vec<BTreeSet<u64>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Partition("empty block".into()));
            }
            for &p in b {
                if !primes::is_prime(p) {
                    return Err(Error::Partition(format!("{p} is not prime")));
                }
                if !seen.insert(p) {
                    return Err(Error::Partition(format!("{p} occurs in two blocks")));
                }
            }
        }
        Ok(SigmaPartition { blocks })
    }

    /// One block per prime.
    pub fn singletons(primes: &[u64]) -> Self {
        SigmaPartition {
            blocks: primes.iter().map(|&p| BTreeSet::from([p])).collect(),
        }
    }

    /// A single block holding every given prime.
    pub fn whole(primes: &[u64]) -> Self {
        if primes.is_empty() {
            return SigmaPartition { blocks: Vec::new() };
        }
        SigmaPartition {
            blocks: vec![primes.iter().copied().collect()],
        }
    }

    /// Parses `2,3,5|7`, `singletons` or `whole` relative to a group order.
    /// Primes of the order left uncovered by the listed blocks form one extra
    /// block (the complement of the listed ones).
    pub fn parse(text: &str, group_order: u64) -> Result<Self> {
        let pi = primes::prime_divisors(group_order);
        let text = text.trim();
        match text {
            "singletons" => return Ok(Self::singletons(&pi)),
            "whole" => return Ok(Self::whole(&pi)),
            _ => {}
        }
        let mut blocks = Vec::new();
        for chunk in text.split('|') {
            let block = chunk
                .split(',')
                .map(|s| {
                    s.trim().parse::<u64>().map_err(|_| {
                        Error::Partition(format!("bad prime `{}` in `{text}`", s.trim()))
                    })
                })
                .collect::<Result<BTreeSet<u64>>>()?;
            blocks.push(block);
        }
        let mut partition = SigmaPartition::new(blocks)?;
        let rest: BTreeSet<u64> = pi
            .into_iter()
            .filter(|p| partition.blocks.iter().all(|b| !b.contains(p)))
            .collect();
        if !rest.is_empty() {
            partition.blocks.push(rest);
        }
        Ok(partition)
    }

    /// Every set partition of `primes`, in a fixed order.
    pub fn all_partitions(primes: &[u64]) -> Vec<SigmaPartition> {
        fn go(
            i: usize,
            primes: &[u64],
            cur: &mut Vec<BTreeSet<u64>>,
            out: &mut Vec<SigmaPartition>,
        ) {
            if i == primes.len() {
                out.push(SigmaPartition {
                    blocks: cur.clone(),
                });
                return;
            }
            for k in 0..cur.len() {
                cur[k].insert(primes[i]);
                go(i + 1, primes, cur, out);
                cur[k].remove(&primes[i]);
            }
            cur.push(BTreeSet::from([primes[i]]));
            go(i + 1, primes, cur, out);
            cur.pop();
        }
        let mut out = Vec::new();
        go(0, primes, &mut Vec::new(), &mut out);
        out
    }

    pub fn blocks(&self) -> &[BTreeSet<u64>] {
        &self.blocks
    }

    pub fn residual(&self) -> Block {
        self.blocks.len()
    }

    pub fn block_of(&self, p: u64) -> Block {
        self.blocks
            .iter()
            .position(|b| b.contains(&p))
            .unwrap_or(self.residual())
    }

    pub fn classify(&self, n: u64) -> Result<SigmaClass> {
        if n == 0 {
            return Err(Error::InvalidParams("σ(0) is undefined".into()));
        }
        Ok(self.sigma_of(n))
    }

    pub(crate) fn sigma_of(&self, n: u64) -> SigmaClass {
        SigmaClass {
            blocks: primes::prime_divisors(n)
                .into_iter()
                .map(|p| self.block_of(p))
                .collect(),
        }
    }

    pub fn is_primary(&self, n: u64) -> bool {
        self.sigma_of(n).is_primary()
    }

    /// The Π-part of `n`: the product of its prime powers for primes in Π.
    pub fn pi_part(&self, n: u64, pi: &BTreeSet<Block>) -> u64 {
        primes::factorize(n)
            .into_iter()
            .filter(|&(p, _)| pi.contains(&self.block_of(p)))
            .map(|(p, e)| p.pow(e))
            .product()
    }

    pub fn is_singletons(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            let ps: Vec<String> = b.iter().map(|p| p.to_string()).collect();
            write!(f, "{}", ps.join(","))?;
        }
        Ok(())
    }
}
