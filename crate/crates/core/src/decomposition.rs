//! Components of circuit varieties of tame paving matroids, indexed by the
//! nice partitions of their dependent hyperplanes.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::families::{grid_matroid, line_matroid, GridLayout, LineArrangement};
use crate::matroid::{Matroid, DEFAULT_CIRCUIT_BUDGET};
use crate::partition::{block_sizes, par_filter_partitions, HyperplanePartition};
use crate::paving::PavingMatroid;
use crate::quasi::QuasiRep;

/// Largest number of grid hyperplanes (`k + l`) enumerated by default.
pub const GRID_PARTITION_BUDGET: usize = 14;
/// Largest number of lines enumerated by default.
pub const LINES_PARTITION_BUDGET: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Liftability {
    Liftable,
    NotLiftable,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictReason {
    Nilpotent,
    /// The degree-one core is a full `rows × cols` grid.
    GridCore { rows: usize, cols: usize },
    /// The degree-one core is the arrangement of `lines` general lines.
    LineCore { lines: usize },
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LiftabilityVerdict {
    pub verdict: Liftability,
    pub reason: VerdictReason,
}

impl LiftabilityVerdict {
    fn unknown() -> Self {
        Self {
            verdict: Liftability::Unknown,
            reason: VerdictReason::None,
        }
    }
}

/// Partition of the hyperplanes into two classes such that each element
/// lies on exactly one hyperplane of each class and every cross pair meets
/// in exactly one element.
fn grid_pattern(p: &PavingMatroid) -> Option<(usize, usize)> {
    let hs = p.hyperplanes();
    let mut side: Vec<Option<bool>> = vec![None; hs.len()];
    let through: Vec<Vec<usize>> = (0..p.ground_size()).map(|x| p.hyperplanes_through(x)).collect();
    if through.iter().any(|t| t.len() != 2) {
        return None;
    }
    for start in 0..hs.len() {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(h) = stack.pop() {
            let here = side[h]?;
            for x in hs[h].iter() {
                let other = if through[x][0] == h { through[x][1] } else { through[x][0] };
                match side[other] {
                    None => {
                        side[other] = Some(!here);
                        stack.push(other);
                    }
                    Some(s) if s == here => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let rows: Vec<usize> = (0..hs.len()).filter(|&i| side[i] == Some(false)).collect();
    let cols: Vec<usize> = (0..hs.len()).filter(|&i| side[i] == Some(true)).collect();
    let full = rows
        .iter()
        .all(|&r| cols.iter().all(|&c| hs[r].intersection_len(&hs[c]) == 1));
    (full && !rows.is_empty() && !cols.is_empty()).then_some((rows.len(), cols.len()))
}

/// `m >= 4` lines, pairwise meeting in one point, every point on two lines.
fn line_pattern(p: &PavingMatroid) -> Option<usize> {
    let hs = p.hyperplanes();
    let m = hs.len();
    let ok = m >= 4
        && p.degrees().iter().all(|&d| d == 2)
        && hs.iter().all(|h| h.len() + 1 == m)
        && (0..m).all(|i| (i + 1..m).all(|j| hs[i].intersection_len(&hs[j]) == 1));
    ok.then_some(m)
}

/// Decides liftability only where a proven verdict applies: nilpotent
/// matroids are liftable; otherwise the degree-one core is matched against
/// the grid and line-arrangement patterns.
pub fn liftability_oracle(p: &PavingMatroid) -> LiftabilityVerdict {
    if p.is_nilpotent() {
        return LiftabilityVerdict {
            verdict: Liftability::Liftable,
            reason: VerdictReason::Nilpotent,
        };
    }
    let stripped = p.degree_one_core();
    let Some((core, _)) = &stripped.core else {
        return LiftabilityVerdict::unknown();
    };
    if core.rank() != 3 {
        return LiftabilityVerdict::unknown();
    }
    let lost_isolated = stripped.degree_zero_deletions().next().is_some();
    if let Some((rows, cols)) = grid_pattern(core) {
        let liftable = rows < 3 || cols < 3 || (rows == 3 && cols == 3);
        if !liftable && lost_isolated {
            return LiftabilityVerdict::unknown();
        }
        return LiftabilityVerdict {
            verdict: if liftable { Liftability::Liftable } else { Liftability::NotLiftable },
            reason: VerdictReason::GridCore { rows, cols },
        };
    }
    if let Some(lines) = line_pattern(core) {
        if lost_isolated {
            return LiftabilityVerdict::unknown();
        }
        return LiftabilityVerdict {
            verdict: Liftability::NotLiftable,
            reason: VerdictReason::LineCore { lines },
        };
    }
    LiftabilityVerdict::unknown()
}

fn block_unions(p: &PavingMatroid, q: &HyperplanePartition) -> Vec<ElementSet> {
    q.blocks()
        .iter()
        .map(|b| b.iter().fold(ElementSet::new(), |acc, &i| acc.union(&p.hyperplanes()[i])))
        .collect()
}

fn check_partition(p: &PavingMatroid, q: &HyperplanePartition) -> Result<()> {
    if !p.is_tame() {
        return Err(Error::NotTame);
    }
    if q.len() != p.hyperplanes().len() {
        return Err(Error::BadPartition(format!(
            "partition covers {} hyperplanes, matroid has {}",
            q.len(),
            p.hyperplanes().len()
        )));
    }
    Ok(())
}

/// The hypergraph `H_i = ∪_{l ∈ Q_i} l` at level `rank(P)`.
pub fn mq_rep(p: &PavingMatroid, q: &HyperplanePartition) -> Result<QuasiRep> {
    check_partition(p, q)?;
    QuasiRep::new(p.ground_size(), p.rank(), block_unions(p, q))
}

/// `M(Q)`, the quasi-paving matroid of the block unions.
pub fn build_mq(p: &PavingMatroid, q: &HyperplanePartition) -> Result<Matroid> {
    Ok(mq_rep(p, q)?.matroid())
}

/// Nice partitions of the grid hyperplanes (rows `0..k`, then columns).
pub fn is_nice_grid(k: usize, l: usize, q: &HyperplanePartition) -> bool {
    debug_assert_eq!(q.len(), k + l);
    nice_grid_rgs(k, l, q.rgs())
}

fn nice_grid_rgs(k: usize, l: usize, rgs: &[usize]) -> bool {
    let blocks = rgs.iter().max().map_or(0, |&b| b + 1);
    let mut rows = vec![0usize; blocks];
    let mut cols = vec![0usize; blocks];
    for (i, &b) in rgs.iter().enumerate() {
        if i < k {
            rows[b] += 1;
        } else {
            cols[b] += 1;
        }
    }
    (0..blocks).all(|b| {
        let (r, c) = (rows[b], cols[b]);
        r + c < 2 || (r >= 3 && c >= 3 && r.max(c) >= 4 && (blocks == 1 || (r < k && c < l)))
    })
}

/// Nice partitions of `n` lines: no block of size 2, 3 or `n - 1`.
pub fn is_nice_lines(n: usize, q: &HyperplanePartition) -> bool {
    nice_lines_rgs(n, q.rgs())
}

fn nice_lines_rgs(n: usize, rgs: &[usize]) -> bool {
    block_sizes(rgs)
        .into_iter()
        .all(|s| s != 2 && s != 3 && s + 1 != n)
}

/// Niceness checked from the definition. `None` when some block needs a
/// liftability verdict the oracle cannot give.
pub fn is_nice_generic(p: &PavingMatroid, q: &HyperplanePartition) -> Result<Option<bool>> {
    check_partition(p, q)?;
    let blocks = q.blocks();
    let unions = block_unions(p, q);
    for (b, union) in unions.iter().enumerate() {
        let covered = (0..p.hyperplanes().len())
            .any(|h| q.rgs()[h] != b && p.hyperplanes()[h].is_subset(union));
        if covered {
            return Ok(Some(false));
        }
    }
    let mut unknown = false;
    for block in blocks.iter().filter(|b| b.len() >= 2) {
        let (sub, _) = p.hyperplane_submatroid(block)?;
        match liftability_oracle(&sub).verdict {
            Liftability::Liftable => return Ok(Some(false)),
            Liftability::NotLiftable => {}
            Liftability::Unknown => unknown = true,
        }
    }
    Ok((!unknown).then_some(true))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Classification {
    EqualsBase,
    Uniform { rank: usize, d: usize },
    Other {
        rank: usize,
        d: usize,
        /// Number of circuits of each size.
        circuit_sizes: BTreeMap<usize, usize>,
    },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EqualsBase => write!(f, "equals-base"),
            Self::Uniform { rank, d } => write!(f, "uniform({rank},{d})"),
            Self::Other { rank, d, circuit_sizes } => {
                let sizes: Vec<String> = circuit_sizes.iter().map(|(s, c)| format!("{s}:{c}")).collect();
                write!(f, "other(rank {rank}, d {d}, circuits {})", sizes.join(" "))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub partition: HyperplanePartition,
    pub matroid: Matroid,
    pub classification: Classification,
}

/// A decomposition together with the hyperplane labels it refers to.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub base: PavingMatroid,
    pub hyperplane_labels: Vec<String>,
    pub components: Vec<ComponentReport>,
}

impl Decomposition {
    /// Blocks of a component's partition written with hyperplane labels.
    pub fn labeled_blocks(&self, c: &ComponentReport) -> Vec<Vec<String>> {
        c.partition
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&i| self.hyperplane_labels[i].clone()).collect())
            .collect()
    }

    /// Whether the component matroids are pairwise distinct as labeled
    /// circuit sets.
    pub fn components_distinct(&self) -> Result<bool> {
        let mut seen = HashSet::new();
        for c in &self.components {
            let circuits: Arc<[ElementSet]> = c.matroid.circuit_list(DEFAULT_CIRCUIT_BUDGET)?;
            if !seen.insert(circuits) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn classify(base: &Matroid, m: &Matroid) -> Result<Classification> {
    if let Some((rank, d)) = m.is_uniform() {
        return Ok(Classification::Uniform { rank, d });
    }
    if m.same_dependence(base, DEFAULT_CIRCUIT_BUDGET)? {
        return Ok(Classification::EqualsBase);
    }
    let mut circuit_sizes = BTreeMap::new();
    for c in m.circuit_list(DEFAULT_CIRCUIT_BUDGET)?.iter() {
        *circuit_sizes.entry(c.len()).or_insert(0) += 1;
    }
    Ok(Classification::Other {
        rank: m.rank(),
        d: m.ground_size(),
        circuit_sizes,
    })
}

fn check_budget(m: usize, budget: usize) -> Result<()> {
    if m > budget {
        return Err(Error::TooLarge {
            budget: "partition enumeration",
            needed: m as u128,
            limit: budget as u128,
        });
    }
    Ok(())
}

fn decompose_with(
    base: PavingMatroid,
    hyperplane_labels: Vec<String>,
    nice: impl Fn(&[usize]) -> bool + Sync,
) -> Result<Decomposition> {
    let base_matroid = base.to_matroid();
    let partitions = par_filter_partitions(base.hyperplanes().len(), nice);
    let components = partitions
        .into_iter()
        .map(|rgs| {
            let partition = HyperplanePartition::from_rgs(rgs)?;
            let matroid = build_mq(&base, &partition)?;
            let classification = classify(&base_matroid, &matroid)?;
            Ok(ComponentReport {
                partition,
                matroid,
                classification,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition {
        base,
        hyperplane_labels,
        components,
    })
}

fn grid_base(k: usize, l: usize) -> Result<(PavingMatroid, Vec<String>)> {
    if k < 3 || l < 3 {
        return Err(Error::BadParams(format!("grid decomposition needs k, l >= 3, got {k}x{l}")));
    }
    let labels = GridLayout::new(k, l)?.hyperplanes().into_iter().map(|(name, _)| name).collect();
    Ok((grid_matroid(k, l)?, labels))
}

pub fn decompose_grid(k: usize, l: usize) -> Result<Decomposition> {
    decompose_grid_with_budget(k, l, GRID_PARTITION_BUDGET)
}

/// One component per nice partition of the rows and columns of `G_{k,l}`.
pub fn decompose_grid_with_budget(k: usize, l: usize, budget: usize) -> Result<Decomposition> {
    let (base, labels) = grid_base(k, l)?;
    check_budget(k + l, budget)?;
    decompose_with(base, labels, |rgs| nice_grid_rgs(k, l, rgs))
}

pub fn decompose_lines(n: usize) -> Result<Decomposition> {
    decompose_lines_with_budget(n, LINES_PARTITION_BUDGET)
}

/// One component per nice partition of the lines of `L_n`.
pub fn decompose_lines_with_budget(n: usize, budget: usize) -> Result<Decomposition> {
    LineArrangement::new(n)?;
    check_budget(n, budget)?;
    let labels = (1..=n).map(|i| format!("l{i}")).collect();
    decompose_with(line_matroid(n)?, labels, |rgs| nice_lines_rgs(n, rgs))
}

/// Number of nice grid partitions, without building matroids.
pub fn count_nice_grid(k: usize, l: usize, budget: usize) -> Result<u64> {
    check_budget(k + l, budget)?;
    Ok(crate::partition::par_count_partitions(k + l, |rgs| nice_grid_rgs(k, l, rgs)))
}

pub fn count_nice_lines(n: usize, budget: usize) -> Result<u64> {
    LineArrangement::new(n)?;
    check_budget(n, budget)?;
    Ok(crate::partition::par_count_partitions(n, |rgs| nice_lines_rgs(n, rgs)))
}
