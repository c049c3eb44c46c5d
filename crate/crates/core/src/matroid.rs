//! Finite matroids given by circuits or by a dependence oracle.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::element_set::{binomial, Combinations, ElementSet};
use crate::error::{Error, Result};

/// Refuse to materialize more circuits than this unless told otherwise.
pub const DEFAULT_CIRCUIT_BUDGET: usize = 5_000_000;
/// Largest ground set for which bases are listed.
pub const DEFAULT_ENUMERATION_GUARD: usize = 24;
/// Largest ground set handled by basis-level constructions.
pub const BASIS_TABLE_LIMIT: usize = 20;
/// Ground sets up to this size get a full dependence table.
const DEPENDENCE_TABLE_LIMIT: usize = 16;

/// Decides dependence of subsets of a fixed ground set.
pub trait DependenceOracle: Send + Sync + fmt::Debug {
    fn is_dependent(&self, set: &ElementSet) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    Explicit,
    QuasiRep,
    Paving,
    Extension,
    Hypergraph,
}

/// Answers dependence queries against an explicit circuit list.
#[derive(Debug)]
pub(crate) enum CircuitIndex {
    Table(Vec<bool>),
    Hashed {
        circuits: Arc<[ElementSet]>,
        lookup: HashSet<ElementSet>,
        sizes: Vec<usize>,
    },
}

impl CircuitIndex {
    pub(crate) fn new(d: usize, circuits: Arc<[ElementSet]>) -> Self {
        if d <= DEPENDENCE_TABLE_LIMIT {
            let mut dep = vec![false; 1 << d];
            for c in circuits.iter() {
                dep[c.as_u64().unwrap() as usize] = true;
            }
            for s in 1..dep.len() {
                if dep[s] {
                    continue;
                }
                let mut rest = s;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    if dep[s ^ bit] {
                        dep[s] = true;
                        break;
                    }
                    rest ^= bit;
                }
            }
            CircuitIndex::Table(dep)
        } else {
            let lookup: HashSet<ElementSet> = circuits.iter().cloned().collect();
            let mut sizes: Vec<usize> = circuits.iter().map(ElementSet::len).collect();
            sizes.sort_unstable();
            sizes.dedup();
            CircuitIndex::Hashed {
                circuits,
                lookup,
                sizes,
            }
        }
    }
}

impl DependenceOracle for CircuitIndex {
    fn is_dependent(&self, set: &ElementSet) -> bool {
        match self {
            CircuitIndex::Table(dep) => dep[set.as_u64().unwrap() as usize],
            CircuitIndex::Hashed {
                circuits,
                lookup,
                sizes,
            } => {
                let m = set.len();
                for &k in sizes.iter().filter(|&&k| k <= m) {
                    if binomial(m, k) <= circuits.len() as u128 {
                        if Combinations::new(set, k).any(|s| lookup.contains(&s)) {
                            return true;
                        }
                    } else if circuits
                        .iter()
                        .any(|c| c.len() == k && c.is_subset(set))
                    {
                        return true;
                    }
                }
                false
            }
        }
    }
}

/// A matroid on the ground set `{0, ..., d-1}`.
///
/// Every matroid carries a dependence oracle; an explicit, canonically
/// ordered circuit list is present when it was given or materialized.
#[derive(Clone)]
pub struct Matroid {
    ground_size: usize,
    rank: usize,
    circuits: Option<Arc<[ElementSet]>>,
    oracle: Arc<dyn DependenceOracle>,
    origin: Origin,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("ground_size", &self.ground_size)
            .field("rank", &self.rank)
            .field("circuits", &self.circuits.as_ref().map(|c| c.len()))
            .field("origin", &self.origin)
            .finish()
    }
}

/// Result of comparing two matroids in the dependency order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyVerdict {
    pub leq: bool,
    /// A circuit of the smaller matroid that is independent in the larger one.
    pub witness: Option<ElementSet>,
}

/// A deletion together with the relabeling it induced.
#[derive(Clone, Debug)]
pub struct Deletion {
    pub matroid: Matroid,
    /// Old index -> new index, `None` for deleted elements.
    pub index_map: Vec<Option<usize>>,
    /// New index -> old index.
    pub kept: Vec<usize>,
}

#[derive(Debug)]
struct RelabeledOracle {
    inner: Arc<dyn DependenceOracle>,
    kept: Vec<usize>,
}

impl DependenceOracle for RelabeledOracle {
    fn is_dependent(&self, set: &ElementSet) -> bool {
        let lifted: ElementSet = set.iter().map(|x| self.kept[x]).collect();
        self.inner.is_dependent(&lifted)
    }
}

pub(crate) fn canonicalize(mut sets: Vec<ElementSet>) -> Vec<ElementSet> {
    sets.sort_by(ElementSet::cmp_size_lex);
    sets.dedup();
    sets
}

fn check_range(d: usize, set: &ElementSet) -> Result<()> {
    if set.bound() > d {
        return Err(Error::OutOfRange {
            element: set.last().unwrap(),
            ground_size: d,
        });
    }
    Ok(())
}

/// Checks minimality and the circuit elimination axiom exhaustively.
///
/// `circuits` must be canonical (see [`Matroid::circuits`]).
pub fn check_circuit_axioms(d: usize, circuits: &[ElementSet]) -> Result<()> {
    for c in circuits {
        check_range(d, c)?;
    }
    // canonical order puts any contained circuit before its container
    let containment = (0..circuits.len()).into_par_iter().find_map_first(|j| {
        circuits[..j]
            .iter()
            .find(|c| c.is_subset(&circuits[j]))
            .map(|c| Error::ContainmentViolation {
                smaller: c.clone(),
                larger: circuits[j].clone(),
            })
    });
    if let Some(e) = containment {
        return Err(e);
    }
    let shared: Arc<[ElementSet]> = circuits.to_vec().into();
    let index = CircuitIndex::new(d, shared);
    let violation = (0..circuits.len()).into_par_iter().find_map_first(|i| {
        let c1 = &circuits[i];
        for c2 in &circuits[i + 1..] {
            let common = c1.intersection(c2);
            if common.is_empty() {
                continue;
            }
            let union = c1.union(c2);
            for x in &common {
                if !index.is_dependent(&union.without(x)) {
                    return Some(Error::AxiomViolation {
                        first: c1.clone(),
                        second: c2.clone(),
                        element: x,
                    });
                }
            }
        }
        None
    });
    match violation {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

pub(crate) fn greedy_rank(oracle: &dyn DependenceOracle, within: &ElementSet) -> ElementSet {
    let mut basis = ElementSet::new();
    for x in within {
        let grown = basis.with(x);
        if !oracle.is_dependent(&grown) {
            basis = grown;
        }
    }
    basis
}

impl Matroid {
    /// Builds a matroid from a (possibly unsorted, duplicated) circuit list,
    /// validating the circuit axioms and the declared rank.
    pub fn from_circuits(d: usize, rank: usize, circuits: Vec<ElementSet>) -> Result<Self> {
        let circuits = canonicalize(circuits);
        check_circuit_axioms(d, &circuits)?;
        let m = Self::from_canonical_circuits(d, circuits, Origin::Explicit);
        if m.rank != rank {
            return Err(Error::RankMismatch {
                declared: rank,
                computed: m.rank,
            });
        }
        Ok(m)
    }

    /// Trusted constructor: the circuits are known to satisfy the axioms.
    pub(crate) fn from_canonical_circuits(
        d: usize,
        circuits: Vec<ElementSet>,
        origin: Origin,
    ) -> Self {
        let circuits: Arc<[ElementSet]> = circuits.into();
        let oracle: Arc<dyn DependenceOracle> = Arc::new(CircuitIndex::new(d, circuits.clone()));
        let rank = greedy_rank(oracle.as_ref(), &ElementSet::full(d)).len();
        Self {
            ground_size: d,
            rank,
            circuits: Some(circuits),
            oracle,
            origin,
        }
    }

    /// Wraps a dependence oracle. The caller vouches that it describes a matroid.
    pub fn from_oracle(d: usize, oracle: Arc<dyn DependenceOracle>, origin: Origin) -> Self {
        let rank = greedy_rank(oracle.as_ref(), &ElementSet::full(d)).len();
        Self {
            ground_size: d,
            rank,
            circuits: None,
            oracle,
            origin,
        }
    }

    /// Trusted constructor pairing a fast oracle with an optional explicit
    /// circuit list describing the same matroid.
    pub(crate) fn from_parts(
        d: usize,
        circuits: Option<Vec<ElementSet>>,
        oracle: Arc<dyn DependenceOracle>,
        origin: Origin,
    ) -> Self {
        let rank = greedy_rank(oracle.as_ref(), &ElementSet::full(d)).len();
        Self {
            ground_size: d,
            rank,
            circuits: circuits.map(|c| canonicalize(c).into()),
            oracle,
            origin,
        }
    }

    /// Builds a matroid from its list of bases (ground size at most
    /// [`BASIS_TABLE_LIMIT`]).
    pub fn from_bases(d: usize, bases: &[ElementSet], origin: Origin) -> Result<Self> {
        if d > BASIS_TABLE_LIMIT {
            return Err(Error::TooLarge {
                budget: "basis table ground size",
                needed: d as u128,
                limit: BASIS_TABLE_LIMIT as u128,
            });
        }
        let mut indep = vec![false; 1 << d];
        for b in bases {
            check_range(d, b)?;
            indep[b.as_u64().unwrap() as usize] = true;
        }
        // downward closure, larger masks first
        for s in (0..indep.len()).rev() {
            if indep[s] {
                continue;
            }
            let mut missing = !s & ((1usize << d) - 1);
            while missing != 0 {
                let bit = missing & missing.wrapping_neg();
                if indep[s | bit] {
                    indep[s] = true;
                    break;
                }
                missing ^= bit;
            }
        }
        let mut circuits = Vec::new();
        for s in 1..indep.len() {
            if indep[s] {
                continue;
            }
            let mut rest = s;
            let mut minimal = true;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                if !indep[s ^ bit] {
                    minimal = false;
                    break;
                }
                rest ^= bit;
            }
            if minimal {
                circuits.push(ElementSet::from_bits(s as u64));
            }
        }
        Ok(Self::from_canonical_circuits(d, canonicalize(circuits), origin))
    }

    /// The uniform matroid `U_{n,d}`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        if n > d {
            return Err(Error::BadRank {
                rank: n,
                ground_size: d,
            });
        }
        let circuits: Vec<_> = Combinations::of_range(d, n + 1).collect();
        Ok(Self::from_canonical_circuits(d, circuits, Origin::Explicit))
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// The explicit circuit list, sorted by (size, lexicographic), if present.
    pub fn circuits(&self) -> Option<&[ElementSet]> {
        self.circuits.as_deref()
    }

    pub fn oracle(&self) -> &Arc<dyn DependenceOracle> {
        &self.oracle
    }

    fn check(&self, set: &ElementSet) -> Result<()> {
        check_range(self.ground_size, set)
    }

    /// Dependence without range checking.
    pub fn dependent(&self, set: &ElementSet) -> bool {
        self.oracle.is_dependent(set)
    }

    pub fn is_independent(&self, set: &ElementSet) -> Result<bool> {
        self.check(set)?;
        Ok(!self.dependent(set))
    }

    /// Explicit-mode independence: no listed circuit inside `set`.
    pub fn is_independent_by_circuits(&self, set: &ElementSet) -> Option<bool> {
        self.circuits
            .as_ref()
            .map(|cs| !cs.iter().any(|c| c.is_subset(set)))
    }

    pub fn rank_of(&self, set: &ElementSet) -> Result<usize> {
        self.check(set)?;
        Ok(greedy_rank(self.oracle.as_ref(), set).len())
    }

    /// A maximal independent subset of `set`, grown greedily in index order.
    pub fn independent_subset(&self, set: &ElementSet) -> Result<ElementSet> {
        self.check(set)?;
        Ok(greedy_rank(self.oracle.as_ref(), set))
    }

    pub fn closure_of(&self, set: &ElementSet) -> Result<ElementSet> {
        self.check(set)?;
        let basis = greedy_rank(self.oracle.as_ref(), set);
        Ok((0..self.ground_size)
            .filter(|&x| set.contains(x) || self.dependent(&basis.with(x)))
            .collect())
    }

    pub fn is_flat(&self, set: &ElementSet) -> Result<bool> {
        Ok(&self.closure_of(set)? == set)
    }

    pub fn bases(&self) -> Result<Vec<ElementSet>> {
        self.bases_with_guard(DEFAULT_ENUMERATION_GUARD)
    }

    /// All bases in lexicographic order.
    pub fn bases_with_guard(&self, guard: usize) -> Result<Vec<ElementSet>> {
        if self.ground_size > guard {
            return Err(Error::TooLarge {
                budget: "basis enumeration ground size",
                needed: self.ground_size as u128,
                limit: guard as u128,
            });
        }
        Ok(Combinations::of_range(self.ground_size, self.rank)
            .filter(|s| !self.dependent(s))
            .collect())
    }

    /// Materializes the circuit list from the oracle when necessary.
    pub fn circuit_list(&self, budget: usize) -> Result<Arc<[ElementSet]>> {
        if let Some(c) = &self.circuits {
            return Ok(c.clone());
        }
        let d = self.ground_size;
        let candidates: u128 = (1..=self.rank + 1).map(|k| binomial(d, k)).sum();
        if candidates > (budget as u128).saturating_mul(64) {
            return Err(Error::TooLarge {
                budget: "circuit materialization",
                needed: candidates,
                limit: budget as u128 * 64,
            });
        }
        let mut out: Vec<ElementSet> = Vec::new();
        for k in 1..=(self.rank + 1).min(d) {
            let level: Vec<ElementSet> = Combinations::of_range(d, k)
                .collect::<Vec<_>>()
                .into_par_iter()
                .filter(|s| self.dependent(s) && s.iter().all(|x| !self.dependent(&s.without(x))))
                .collect();
            out.extend(level);
            if out.len() > budget {
                return Err(Error::TooLarge {
                    budget: "circuit materialization",
                    needed: out.len() as u128,
                    limit: budget as u128,
                });
            }
        }
        Ok(out.into())
    }

    /// A copy carrying an explicit circuit list.
    pub fn materialized(&self, budget: usize) -> Result<Self> {
        let circuits = self.circuit_list(budget)?;
        Ok(Self {
            circuits: Some(circuits),
            ..self.clone()
        })
    }

    /// `M \ Z`, re-indexed onto `{0, ..., d-|Z|-1}` preserving order.
    pub fn deletion(&self, z: &ElementSet) -> Result<Deletion> {
        self.check(z)?;
        let kept: Vec<usize> = (0..self.ground_size).filter(|x| !z.contains(*x)).collect();
        let mut index_map = vec![None; self.ground_size];
        for (new, &old) in kept.iter().enumerate() {
            index_map[old] = Some(new);
        }
        let d = kept.len();
        let matroid = match &self.circuits {
            Some(cs) => {
                let circuits = cs
                    .iter()
                    .filter(|c| c.is_disjoint(z))
                    .map(|c| c.relabel(&index_map))
                    .collect();
                Self::from_canonical_circuits(d, canonicalize(circuits), self.origin)
            }
            None => Self::from_oracle(
                d,
                Arc::new(RelabeledOracle {
                    inner: self.oracle.clone(),
                    kept: kept.clone(),
                }),
                self.origin,
            ),
        };
        Ok(Deletion {
            matroid,
            index_map,
            kept,
        })
    }

    /// `M | S`, i.e. the deletion of the complement.
    pub fn restriction(&self, s: &ElementSet) -> Result<Deletion> {
        self.check(s)?;
        self.deletion(&ElementSet::full(self.ground_size).difference(s))
    }

    /// `Some((n, d))` when this is exactly the labeled uniform matroid `U_{n,d}`.
    pub fn is_uniform(&self) -> Option<(usize, usize)> {
        let r = self.rank;
        let uniform = match &self.circuits {
            Some(cs) => cs.iter().all(|c| c.len() == r + 1),
            None => Combinations::of_range(self.ground_size, r).all(|s| !self.dependent(&s)),
        };
        uniform.then_some((r, self.ground_size))
    }

    /// Labeled equality of dependence predicates.
    pub fn same_dependence(&self, other: &Self, budget: usize) -> Result<bool> {
        if self.ground_size != other.ground_size || self.rank != other.rank {
            return Ok(false);
        }
        Ok(self.circuit_list(budget)? == other.circuit_list(budget)?)
    }
}

/// `N1 <= N2` in the dependency order: every dependent set of `N1` is
/// dependent in `N2`. It suffices to test the circuits of `N1`.
pub fn dependency_leq(n1: &Matroid, n2: &Matroid, budget: usize) -> Result<DependencyVerdict> {
    if n1.ground_size != n2.ground_size {
        return Err(Error::GroundMismatch {
            left: n1.ground_size,
            right: n2.ground_size,
        });
    }
    let circuits = n1.circuit_list(budget)?;
    let witness = circuits.iter().find(|c| !n2.dependent(c)).cloned();
    Ok(DependencyVerdict {
        leq: witness.is_none(),
        witness,
    })
}
