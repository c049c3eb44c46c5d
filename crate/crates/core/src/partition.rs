//! Set partitions as restricted-growth strings (RGS).
//!
//! An RGS `a` of length `m` has `a[0] = 0` and `a[i] <= 1 + max(a[..i])`;
//! element `i` lies in block `a[i]`. Enumeration is in lexicographic RGS
//! order, and the parallel drivers shard by prefix and merge in that order.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Prefix length used to shard the parallel drivers.
const SHARD_PREFIX: usize = 6;

/// All RGS of a fixed length extending a fixed prefix, in lexicographic order.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    /// `max(rgs[..=i])` for each position.
    maxes: Vec<usize>,
    fixed: usize,
    started: bool,
    done: bool,
}

impl SetPartitions {
    pub fn new(m: usize) -> Self {
        Self::extending(&[], m)
    }

    /// Partitions whose RGS starts with `prefix` (which must itself be a
    /// valid RGS no longer than `m`).
    pub fn extending(prefix: &[usize], m: usize) -> Self {
        let mut rgs = prefix.to_vec();
        rgs.resize(m, 0);
        let mut maxes = Vec::with_capacity(m);
        let mut top = 0;
        for &v in &rgs {
            top = top.max(v);
            maxes.push(top);
        }
        Self {
            rgs,
            maxes,
            fixed: prefix.len().max(1),
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let m = self.rgs.len();
        let mut i = m;
        while i > self.fixed {
            i -= 1;
            if self.rgs[i] <= self.maxes[i - 1] {
                self.rgs[i] += 1;
                self.maxes[i] = self.maxes[i - 1].max(self.rgs[i]);
                for j in i + 1..m {
                    self.rgs[j] = 0;
                    self.maxes[j] = self.maxes[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.rgs.clone())
    }
}

fn shard_prefixes(m: usize) -> Vec<Vec<usize>> {
    SetPartitions::new(m.min(SHARD_PREFIX)).collect()
}

/// The partitions accepted by `keep`, in RGS order, computed in parallel.
pub fn par_filter_partitions<F>(m: usize, keep: F) -> Vec<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    shard_prefixes(m)
        .into_par_iter()
        .flat_map_iter(|prefix| SetPartitions::extending(&prefix, m).filter(|a| keep(a)).collect::<Vec<_>>())
        .collect()
}

pub fn par_count_partitions<F>(m: usize, keep: F) -> u64
where
    F: Fn(&[usize]) -> bool + Sync,
{
    shard_prefixes(m)
        .into_par_iter()
        .map(|prefix| SetPartitions::extending(&prefix, m).filter(|a| keep(a)).count() as u64)
        .sum()
}

/// A partition of the hyperplane indices `0..m`, stored as its RGS.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HyperplanePartition {
    rgs: Vec<usize>,
}

impl HyperplanePartition {
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        let mut next = 0;
        for (i, &v) in rgs.iter().enumerate() {
            if v > next {
                return Err(Error::BadPartition(format!(
                    "entry {v} at position {i} skips a block"
                )));
            }
            if v == next {
                next += 1;
            }
        }
        Ok(Self { rgs })
    }

    /// Builds the canonical form of an arbitrary block list covering `0..m`.
    pub fn from_blocks(m: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![None; m];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::BadPartition("empty block".into()));
            }
            for &x in block {
                let slot = owner
                    .get_mut(x)
                    .ok_or_else(|| Error::BadPartition(format!("index {x} out of range")))?;
                if slot.replace(b).is_some() {
                    return Err(Error::BadPartition(format!("index {x} appears twice")));
                }
            }
        }
        let mut relabel = vec![None; blocks.len()];
        let mut next = 0;
        let mut rgs = Vec::with_capacity(m);
        for (x, o) in owner.into_iter().enumerate() {
            let b = o.ok_or_else(|| Error::BadPartition(format!("index {x} is not covered")))?;
            let v = *relabel[b].get_or_insert_with(|| {
                next += 1;
                next - 1
            });
            rgs.push(v);
        }
        Ok(Self { rgs })
    }

    pub fn discrete(m: usize) -> Self {
        Self { rgs: (0..m).collect() }
    }

    /// The one-block partition.
    pub fn trivial(m: usize) -> Self {
        Self { rgs: vec![0; m] }
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn n_blocks(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&b| b + 1)
    }

    /// Blocks in order of their smallest member, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_blocks()];
        for (x, &b) in self.rgs.iter().enumerate() {
            out[b].push(x);
        }
        out
    }
}

/// Block sizes of an RGS with `m` entries.
pub fn block_sizes(rgs: &[usize]) -> Vec<usize> {
    let mut sizes = Vec::new();
    for &b in rgs {
        if b == sizes.len() {
            sizes.push(0);
        }
        sizes[b] += 1;
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    const BELL: [usize; 10] = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147];

    #[test]
    fn counts_are_bell_numbers() {
        for (m, &b) in BELL.iter().enumerate().skip(1) {
            assert_eq!(SetPartitions::new(m).count(), b, "m = {m}");
        }
    }

    #[test]
    fn lexicographic_and_valid() {
        let all: Vec<_> = SetPartitions::new(6).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|a| HyperplanePartition::from_rgs(a.clone()).is_ok()));
        assert_eq!(all.first().unwrap(), &vec![0; 6]);
        assert_eq!(all.last().unwrap(), &(0..6).collect::<Vec<_>>());
    }

    #[test]
    fn parallel_matches_sequential() {
        let keep = |a: &[usize]| block_sizes(a).iter().all(|&s| s != 2);
        let seq: Vec<_> = SetPartitions::new(9).filter(|a| keep(a)).collect();
        assert_eq!(par_filter_partitions(9, keep), seq);
        assert_eq!(par_count_partitions(9, keep), seq.len() as u64);
        assert_eq!(par_count_partitions(3, |_| true), 5);
    }

    #[test]
    fn blocks_round_trip() {
        let p = HyperplanePartition::from_blocks(5, &[vec![4, 1], vec![0], vec![2, 3]]).unwrap();
        assert_eq!(p.rgs(), &[0, 1, 2, 2, 1]);
        assert_eq!(p.blocks(), vec![vec![0], vec![1, 4], vec![2, 3]]);
        assert!(HyperplanePartition::from_rgs(vec![0, 2]).is_err());
        assert!(HyperplanePartition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(HyperplanePartition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert_eq!(HyperplanePartition::trivial(4).n_blocks(), 1);
        assert_eq!(HyperplanePartition::discrete(4).n_blocks(), 4);
    }
}
