//! Quasi-paving matroids built from hypergraphs without triple
//! intersections, principal extensions, and the reduction to a tame core.

use std::sync::Arc;

use crate::element_set::{binomial, Combinations, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{DependenceOracle, Matroid, Origin, BASIS_TABLE_LIMIT, DEFAULT_CIRCUIT_BUDGET};
use crate::paving::PavingMatroid;

/// A hypergraph `H_1, ..., H_k` on `d` elements together with the level `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiRep {
    ground_size: usize,
    level: usize,
    members: Vec<ElementSet>,
}

/// One deleted element of [`decompose_to_tame`], in original labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionStep {
    pub element: usize,
    pub flat: ElementSet,
    pub source_pair: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameDecomposition {
    pub core: PavingMatroid,
    /// Original label of each core element.
    pub kept: Vec<usize>,
    /// Steps in deletion order; replay runs them backwards.
    pub steps: Vec<ExtensionStep>,
}

/// Circuits of a quasi-paving matroid grouped by type.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypedCircuits {
    /// `(n-1)`-subsets of pairwise intersections.
    pub type1: Vec<ElementSet>,
    /// `n`-subsets of members containing no type-1 circuit.
    pub type2: Vec<ElementSet>,
    /// `(n+1)`-sets containing no circuit of the other types.
    pub type3: Vec<ElementSet>,
}

impl TypedCircuits {
    pub fn len(&self) -> usize {
        self.type1.len() + self.type2.len() + self.type3.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn into_vec(self) -> Vec<ElementSet> {
        let mut all = self.type1;
        all.extend(self.type2);
        all.extend(self.type3);
        all
    }
}

impl QuasiRep {
    pub fn new(d: usize, n: usize, members: Vec<ElementSet>) -> Result<Self> {
        if n < 2 {
            return Err(Error::LevelTooSmall(n));
        }
        if n > d {
            return Err(Error::BadRank {
                rank: n,
                ground_size: d,
            });
        }
        let full = ElementSet::full(d);
        for h in &members {
            if !h.is_subset(&full) {
                return Err(Error::OutOfRange {
                    element: h.last().unwrap(),
                    ground_size: d,
                });
            }
        }
        for p in 0..d {
            let through: Vec<usize> = (0..members.len()).filter(|&i| members[i].contains(p)).take(3).collect();
            if let [i, j, r] = through[..] {
                return Err(Error::TripleIntersection { i, j, r });
            }
        }
        Ok(Self {
            ground_size: d,
            level: n,
            members,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    /// Members too small to generate any circuit (`|H_i| < n - 1`).
    pub fn inert_members(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i].len() + 1 < self.level)
            .collect()
    }

    /// Nonempty pairwise intersections `(i, j, H_i ∩ H_j)` with `i < j`.
    pub fn intersections(&self) -> Vec<(usize, usize, ElementSet)> {
        let mut out = Vec::new();
        for (i, a) in self.members.iter().enumerate() {
            for (j, b) in self.members.iter().enumerate().skip(i + 1) {
                let x = a.intersection(b);
                if !x.is_empty() {
                    out.push((i, j, x));
                }
            }
        }
        out
    }

    /// Whether every pairwise intersection already has at most `n - 2` elements.
    pub fn is_tame(&self) -> bool {
        self.intersections().iter().all(|(_, _, x)| x.len() + 2 <= self.level)
    }

    fn oracle(&self) -> QuasiOracle {
        QuasiOracle {
            level: self.level,
            members: self.members.clone(),
            intersections: self
                .intersections()
                .into_iter()
                .map(|(_, _, x)| x)
                .filter(|x| x.len() + 1 >= self.level)
                .collect(),
        }
    }

    fn circuit_estimate(&self) -> u128 {
        let n = self.level;
        binomial(self.ground_size, n + 1)
            + self.members.iter().map(|h| binomial(h.len(), n)).sum::<u128>()
            + self
                .intersections()
                .iter()
                .map(|(_, _, x)| binomial(x.len(), n - 1))
                .sum::<u128>()
    }

    /// Lists the circuits by type straight from the hypergraph.
    pub fn typed_circuits(&self, budget: usize) -> Result<TypedCircuits> {
        let needed = self.circuit_estimate();
        if needed > budget as u128 {
            return Err(Error::TooLarge {
                budget: "circuit materialization",
                needed,
                limit: budget as u128,
            });
        }
        let n = self.level;
        let oracle = self.oracle();
        let type1: Vec<ElementSet> = oracle
            .intersections
            .iter()
            .flat_map(|x| Combinations::new(x, n - 1))
            .collect();
        let mut type2: Vec<ElementSet> = self
            .members
            .iter()
            .flat_map(|h| Combinations::new(h, n))
            .filter(|s| !oracle.has_type1(s))
            .collect();
        type2.sort();
        type2.dedup();
        let type3 = Combinations::of_range(self.ground_size, n + 1)
            .filter(|s| !oracle.has_type1(s) && !oracle.has_type2(s))
            .collect();
        Ok(TypedCircuits { type1, type2, type3 })
    }

    pub fn matroid(&self) -> Matroid {
        self.matroid_with_budget(DEFAULT_CIRCUIT_BUDGET)
    }

    /// The quasi-paving matroid; circuits are listed only within `budget`.
    pub fn matroid_with_budget(&self, budget: usize) -> Matroid {
        let circuits = self.typed_circuits(budget).ok().map(TypedCircuits::into_vec);
        Matroid::from_parts(self.ground_size, circuits, Arc::new(self.oracle()), Origin::QuasiRep)
    }

    /// `M \ Z` as a hypergraph on the remaining elements, re-indexed in
    /// increasing order. Elements of `Z` outside the ground set are ignored.
    pub fn deletion(&self, z: &ElementSet) -> QuasiRep {
        let kept: Vec<usize> = (0..self.ground_size).filter(|&p| !z.contains(p)).collect();
        let mut map = vec![None; self.ground_size];
        for (new, &old) in kept.iter().enumerate() {
            map[old] = Some(new);
        }
        QuasiRep {
            ground_size: kept.len(),
            level: self.level,
            members: self.members.iter().map(|h| h.relabel(&map)).collect(),
        }
    }

    /// Pairs whose intersection is a flat of rank `n - 2` (for `n >= 3`; at
    /// level 2 the loops of all intersections share one closure).
    pub fn pairwise_intersection_flats(&self) -> Vec<(usize, usize, ElementSet)> {
        let floor = self.level.saturating_sub(2).max(1);
        self.intersections()
            .into_iter()
            .filter(|(_, _, x)| x.len() >= floor)
            .collect()
    }
}

#[derive(Clone, Debug)]
struct QuasiOracle {
    level: usize,
    members: Vec<ElementSet>,
    /// Pairwise intersections with at least `n - 1` elements.
    intersections: Vec<ElementSet>,
}

impl QuasiOracle {
    fn has_type1(&self, s: &ElementSet) -> bool {
        self.intersections
            .iter()
            .any(|x| x.intersection_len(s) + 1 >= self.level)
    }

    fn has_type2(&self, s: &ElementSet) -> bool {
        self.members.iter().any(|h| h.intersection_len(s) >= self.level)
    }
}

impl DependenceOracle for QuasiOracle {
    fn is_dependent(&self, s: &ElementSet) -> bool {
        s.len() > self.level || self.has_type2(s) || self.has_type1(s)
    }
}

pub fn quasi_matroid(rep: &QuasiRep) -> Matroid {
    rep.matroid()
}

pub fn quasi_deletion(rep: &QuasiRep, z: &ElementSet) -> QuasiRep {
    rep.deletion(z)
}

pub fn pairwise_intersection_flats(rep: &QuasiRep) -> Vec<(usize, usize, ElementSet)> {
    rep.pairwise_intersection_flats()
}

/// Shifts indices at or above `position` up by one.
fn shifted(set: &ElementSet, position: usize) -> ElementSet {
    set.iter().map(|x| if x >= position { x + 1 } else { x }).collect()
}

/// The principal extension of `m` into the flat `flat`. The new element
/// gets index `position`; old elements at or above it move up by one.
/// Bases are those of `m` together with `(B - b) + a` for `b ∈ B ∩ F`.
pub fn principal_extension(m: &Matroid, flat: &ElementSet, position: usize) -> Result<Matroid> {
    let d = m.ground_size();
    if position > d {
        return Err(Error::OutOfRange {
            element: position,
            ground_size: d + 1,
        });
    }
    if d + 1 > BASIS_TABLE_LIMIT {
        return Err(Error::TooLarge {
            budget: "basis table ground size",
            needed: d as u128 + 1,
            limit: BASIS_TABLE_LIMIT as u128,
        });
    }
    if !m.is_flat(flat)? {
        return Err(Error::NotAFlat(flat.clone()));
    }
    let old = m.bases_with_guard(BASIS_TABLE_LIMIT)?;
    let mut bases: Vec<ElementSet> = Vec::with_capacity(old.len() * 2);
    for b in &old {
        let moved = shifted(b, position);
        for x in b.intersection(flat).iter() {
            let x = if x >= position { x + 1 } else { x };
            bases.push(moved.without(x).with(position));
        }
        bases.push(moved);
    }
    bases.sort();
    bases.dedup();
    Matroid::from_bases(d + 1, &bases, Origin::Extension)
}

/// Chooses the element to delete next: the first pair (in index order)
/// whose intersection has at least `n - 1` elements, and its largest element.
fn next_deletion(members: &[ElementSet], n: usize) -> Option<(usize, usize, usize)> {
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate().skip(i + 1) {
            let x = a.intersection(b);
            if x.len() + 1 >= n {
                return Some((i, j, x.last()?));
            }
        }
    }
    None
}

/// Peels elements off large pairwise intersections until the hypergraph is
/// tame; the rest is a tame paving matroid from which the original matroid
/// is recovered by principal extensions.
pub fn decompose_to_tame(rep: &QuasiRep) -> Result<TameDecomposition> {
    decompose_with(rep, next_deletion)
}

fn decompose_with(
    rep: &QuasiRep,
    choose: impl Fn(&[ElementSet], usize) -> Option<(usize, usize, usize)>,
) -> Result<TameDecomposition> {
    let n = rep.level;
    let rank = rep.matroid_with_budget(0).rank();
    if rank < n {
        return Err(Error::RankDeficient { rank, level: n });
    }
    let oracle = rep.oracle();
    let mut members = rep.members.clone();
    let mut steps = Vec::new();
    let mut ground = ElementSet::full(rep.ground_size);
    while let Some((i, j, a)) = choose(&members, n) {
        ground.remove(a);
        // at level 2 the remaining loops of other intersections join the flat
        let part = members[i].intersection(&members[j]).without(a);
        let basis = crate::matroid::greedy_rank(&oracle, &part);
        let flat = ground
            .iter()
            .filter(|&x| part.contains(x) || oracle.is_dependent(&basis.with(x)))
            .collect();
        steps.push(ExtensionStep {
            element: a,
            flat,
            source_pair: (i, j),
        });
        for h in &mut members {
            h.remove(a);
        }
    }
    let kept = ground.to_vec();
    let mut map = vec![None; rep.ground_size];
    for (new, &old) in kept.iter().enumerate() {
        map[old] = Some(new);
    }
    let hyperplanes = members
        .iter()
        .filter(|h| h.len() >= n)
        .map(|h| h.relabel(&map))
        .collect();
    let core = PavingMatroid::new(kept.len(), n, hyperplanes)?;
    Ok(TameDecomposition { core, kept, steps })
}

impl TameDecomposition {
    /// Rebuilds the original matroid by extending the core back along the
    /// recorded flats, latest deletion first.
    pub fn replay(&self) -> Result<Matroid> {
        let mut m = self.core.to_matroid();
        let mut labels = self.kept.clone();
        for step in self.steps.iter().rev() {
            let position = labels.partition_point(|&l| l < step.element);
            let flat: ElementSet = step
                .flat
                .iter()
                .map(|x| labels.binary_search(&x).map_err(|_| Error::NotAFlat(step.flat.clone())))
                .collect::<Result<_>>()?;
            m = principal_extension(&m, &flat, position)?;
            labels.insert(position, step.element);
        }
        Ok(m)
    }
}

/// The two hypergraphs of the worked example with `n = 3`: the first on nine
/// elements reduces to the quadrilateral set, the second on seven elements
/// to two lines through a point.
pub const EXAMPLE_H1: [&[usize]; 4] = [&[1, 2, 3, 7, 8], &[1, 5, 6, 7, 9], &[2, 4, 6, 9], &[3, 4, 5, 8]];
pub const EXAMPLE_H2: [&[usize]; 2] = [&[1, 4, 5, 6, 7], &[1, 2, 3, 6, 7]];

pub fn quasi_from_labels<H: AsRef<[usize]>>(d: usize, n: usize, members: &[H]) -> Result<QuasiRep> {
    let members = members
        .iter()
        .map(|h| {
            ElementSet::from_one_based(h.as_ref().iter().copied())
                .ok_or_else(|| Error::Format("labels are 1-based".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    QuasiRep::new(d, n, members)
}
