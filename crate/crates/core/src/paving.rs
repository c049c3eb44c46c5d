//! Paving matroids described by their dependent hyperplanes.
//!
//! A rank-`n` paving matroid on `d` elements is determined by a family `L`
//! of subsets, each of size at least `n`, in which two distinct members
//! share at most `n - 2` elements. A set is dependent iff it has more than
//! `n` elements or contains `n` elements of a single hyperplane.

use std::sync::Arc;

use crate::element_set::{binomial, Combinations, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{DependenceOracle, Matroid, Origin};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PavingMatroid {
    ground_size: usize,
    rank: usize,
    hyperplanes: Vec<ElementSet>,
}

/// The successive degree-≥2 element sets `S_{M_0}, S_{M_1}, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentChain {
    pub chain: Vec<ElementSet>,
    /// True iff the chain reached the empty set.
    pub terminates: bool,
}

/// Outcome of stripping elements of degree at most one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeOneCore {
    /// The surviving paving matroid (re-indexed) with its labels in the
    /// parent, or `None` when nothing survives.
    pub core: Option<(PavingMatroid, Vec<usize>)>,
    /// Deleted elements paired with their degree at deletion time, in order.
    pub deleted: Vec<(usize, usize)>,
}

impl DegreeOneCore {
    pub fn degree_zero_deletions(&self) -> impl Iterator<Item = usize> + '_ {
        self.deleted.iter().filter(|(_, deg)| *deg == 0).map(|(p, _)| *p)
    }
}

fn restrict_hyperplanes(hyperplanes: &[ElementSet], to: &ElementSet, n: usize) -> Vec<ElementSet> {
    hyperplanes
        .iter()
        .map(|h| h.intersection(to))
        .filter(|h| h.len() >= n)
        .collect()
}

fn degree_set(hyperplanes: &[ElementSet], ground: &ElementSet) -> ElementSet {
    ground
        .iter()
        .filter(|&p| hyperplanes.iter().filter(|h| h.contains(p)).count() >= 2)
        .collect()
}

impl PavingMatroid {
    /// Validates a hyperplane system. A ground set of exactly `n` elements is
    /// accepted only without hyperplanes (the free matroid).
    pub fn new(d: usize, n: usize, hyperplanes: Vec<ElementSet>) -> Result<Self> {
        if d < n || (d == n && !hyperplanes.is_empty()) {
            return Err(Error::GroundTooSmall {
                rank: n,
                ground_size: d,
            });
        }
        let full = ElementSet::full(d);
        for h in &hyperplanes {
            if !h.is_subset(&full) {
                return Err(Error::OutOfRange {
                    element: h.last().unwrap(),
                    ground_size: d,
                });
            }
            if h.len() < n {
                return Err(Error::HyperplaneTooSmall(h.clone()));
            }
            if h == &full {
                return Err(Error::SpanningHyperplane(h.clone()));
            }
        }
        for (i, a) in hyperplanes.iter().enumerate() {
            for b in &hyperplanes[i + 1..] {
                if a.intersection_len(b) + 2 > n {
                    return Err(Error::IntersectionTooLarge {
                        first: a.clone(),
                        second: b.clone(),
                    });
                }
            }
        }
        Ok(Self {
            ground_size: d,
            rank: n,
            hyperplanes,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn hyperplanes(&self) -> &[ElementSet] {
        &self.hyperplanes
    }

    /// Hyperplanes in canonical order, for labeled comparison.
    pub fn sorted_hyperplanes(&self) -> Vec<ElementSet> {
        let mut h = self.hyperplanes.clone();
        h.sort();
        h
    }

    pub fn degree(&self, p: usize) -> usize {
        self.hyperplanes.iter().filter(|h| h.contains(p)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.ground_size];
        for h in &self.hyperplanes {
            for p in h {
                deg[p] += 1;
            }
        }
        deg
    }

    /// Indices of the hyperplanes containing `p`.
    pub fn hyperplanes_through(&self, p: usize) -> Vec<usize> {
        (0..self.hyperplanes.len())
            .filter(|&i| self.hyperplanes[i].contains(p))
            .collect()
    }

    /// Tame: no element lies on three hyperplanes.
    pub fn is_tame(&self) -> bool {
        self.degrees().into_iter().all(|d| d <= 2)
    }

    pub fn nilpotent_chain(&self) -> NilpotentChain {
        let mut hyperplanes = self.hyperplanes.clone();
        let mut ground = ElementSet::full(self.ground_size);
        let mut chain = Vec::new();
        loop {
            let next = degree_set(&hyperplanes, &ground);
            let stable = next == ground;
            let empty = next.is_empty();
            chain.push(next.clone());
            if empty {
                return NilpotentChain {
                    chain,
                    terminates: true,
                };
            }
            if stable {
                return NilpotentChain {
                    chain,
                    terminates: false,
                };
            }
            hyperplanes = restrict_hyperplanes(&hyperplanes, &next, self.rank);
            ground = next;
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotent_chain().terminates
    }

    /// `M^L`: the paving matroid on the union of the chosen hyperplanes,
    /// re-indexed in increasing label order. Also returns the labels.
    pub fn hyperplane_submatroid(&self, chosen: &[usize]) -> Result<(PavingMatroid, Vec<usize>)> {
        if chosen.len() < 2 {
            return Err(Error::TooFewHyperplanes(chosen.len()));
        }
        let mut picked = Vec::with_capacity(chosen.len());
        for &i in chosen {
            picked.push(
                self.hyperplanes
                    .get(i)
                    .ok_or(Error::NoSuchHyperplane(i))?
                    .clone(),
            );
        }
        let union = picked.iter().fold(ElementSet::new(), |acc, h| acc.union(h));
        Ok(self.reindexed(&union, picked))
    }

    fn reindexed(&self, ground: &ElementSet, hyperplanes: Vec<ElementSet>) -> (PavingMatroid, Vec<usize>) {
        let kept = ground.to_vec();
        let mut map = vec![None; self.ground_size];
        for (new, &old) in kept.iter().enumerate() {
            map[old] = Some(new);
        }
        let sub = PavingMatroid {
            ground_size: kept.len(),
            rank: self.rank,
            hyperplanes: hyperplanes.iter().map(|h| h.relabel(&map)).collect(),
        };
        (sub, kept)
    }

    /// Deletes elements of degree at most one, smallest label first, until
    /// every survivor lies on at least two hyperplanes. Hyperplanes that
    /// shrink below `n` elements are dropped along the way.
    pub fn degree_one_core(&self) -> DegreeOneCore {
        let n = self.rank;
        let mut ground = ElementSet::full(self.ground_size);
        let mut hyperplanes = self.hyperplanes.clone();
        let mut deleted = Vec::new();
        loop {
            let victim = ground.iter().find_map(|p| {
                let deg = hyperplanes.iter().filter(|h| h.contains(p)).count();
                (deg <= 1).then_some((p, deg))
            });
            let Some((p, deg)) = victim else { break };
            deleted.push((p, deg));
            ground.remove(p);
            hyperplanes = hyperplanes
                .into_iter()
                .map(|h| h.without(p))
                .filter(|h| h.len() >= n)
                .collect();
        }
        let core = (!ground.is_empty()).then(|| self.reindexed(&ground, hyperplanes));
        DegreeOneCore { core, deleted }
    }

    pub fn to_matroid(&self) -> Matroid {
        self.to_matroid_with_budget(crate::matroid::DEFAULT_CIRCUIT_BUDGET)
    }

    /// Circuits are the `n`-subsets of hyperplanes and the `(n+1)`-subsets
    /// containing none of them. Above the budget only the oracle is kept.
    pub fn to_matroid_with_budget(&self, budget: usize) -> Matroid {
        let d = self.ground_size;
        let n = self.rank;
        let expected = binomial(d, n + 1)
            + self
                .hyperplanes
                .iter()
                .map(|h| binomial(h.len(), n))
                .sum::<u128>();
        let oracle: Arc<dyn DependenceOracle> = Arc::new(self.clone());
        let circuits = (expected <= budget as u128).then(|| {
            let mut out: Vec<ElementSet> = self
                .hyperplanes
                .iter()
                .flat_map(|h| Combinations::new(h, n))
                .collect();
            out.extend(
                Combinations::of_range(d, n + 1)
                    .filter(|s| self.hyperplanes.iter().all(|h| h.intersection_len(s) < n)),
            );
            out
        });
        Matroid::from_parts(d, circuits, oracle, Origin::Paving)
    }
}

impl DependenceOracle for PavingMatroid {
    fn is_dependent(&self, set: &ElementSet) -> bool {
        set.len() > self.rank
            || self
                .hyperplanes
                .iter()
                .any(|h| h.intersection_len(set) >= self.rank)
    }
}

/// The seven lines of the Fano plane (1-based labels).
pub const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 4],
    [1, 3, 7],
    [1, 5, 6],
    [2, 3, 5],
    [2, 6, 7],
    [3, 4, 6],
    [4, 5, 7],
];

/// The four lines of the quadrilateral set (1-based labels).
pub const QUADRILATERAL_LINES: [[usize; 3]; 4] = [[1, 2, 3], [1, 5, 6], [3, 4, 5], [2, 4, 6]];

/// Builds a paving matroid from 1-based hyperplane labels.
pub fn paving_from_labels<H: AsRef<[usize]>>(d: usize, n: usize, lines: &[H]) -> Result<PavingMatroid> {
    let hyperplanes = lines
        .iter()
        .map(|l| {
            ElementSet::from_one_based(l.as_ref().iter().copied())
                .ok_or_else(|| Error::Format("labels are 1-based".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    PavingMatroid::new(d, n, hyperplanes)
}
