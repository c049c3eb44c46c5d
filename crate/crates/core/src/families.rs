//! Concrete families: the grid matroids `G_{k,l}`, the line arrangements
//! `L_n`, and the CI hypergraph `Δ^{s,t}` with its minor generators.

use std::fmt;
use std::sync::Arc;

use crate::element_set::{binomial, Combinations, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{canonicalize, DependenceOracle, Matroid, Origin, DEFAULT_CIRCUIT_BUDGET};
use crate::paving::PavingMatroid;

/// The `k × l` matrix of variables, numbered down the columns: the cell in
/// row `i`, column `j` (0-based) is element `j*k + i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridLayout {
    pub k: usize,
    pub l: usize,
}

impl GridLayout {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::BadParams(format!("grid {k}x{l} is empty")));
        }
        Ok(Self { k, l })
    }

    pub fn size(&self) -> usize {
        self.k * self.l
    }

    pub fn cell(&self, i: usize, j: usize) -> usize {
        j * self.k + i
    }

    /// `(row, column)` of an element.
    pub fn position(&self, p: usize) -> (usize, usize) {
        (p % self.k, p / self.k)
    }

    pub fn row(&self, i: usize) -> ElementSet {
        (0..self.l).map(|j| self.cell(i, j)).collect()
    }

    pub fn col(&self, j: usize) -> ElementSet {
        (0..self.k).map(|i| self.cell(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<ElementSet> {
        (0..self.k).map(|i| self.row(i)).collect()
    }

    pub fn cols(&self) -> Vec<ElementSet> {
        (0..self.l).map(|j| self.col(j)).collect()
    }

    /// With a single row or column the rank-3 construction collapses.
    pub fn is_degenerate(&self) -> bool {
        self.k.min(self.l) == 1
    }

    /// The grid hyperplanes in order: rows (when `l >= 3`) then columns
    /// (when `k >= 3`), with their labels `R1.., C1..`.
    pub fn hyperplanes(&self) -> Vec<(String, ElementSet)> {
        let mut out = Vec::new();
        if self.l >= 3 {
            out.extend((0..self.k).map(|i| (format!("R{}", i + 1), self.row(i))));
        }
        if self.k >= 3 {
            out.extend((0..self.l).map(|j| (format!("C{}", j + 1), self.col(j))));
        }
        out
    }
}

/// `n` lines in general position and their `C(n,2)` intersection points,
/// indexed by the lexicographic rank of the pair of lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineArrangement {
    pub n_lines: usize,
}

impl LineArrangement {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::TooFewLines(n));
        }
        Ok(Self { n_lines: n })
    }

    pub fn n_points(&self) -> usize {
        self.n_lines * (self.n_lines - 1) / 2
    }

    /// Point index of the intersection of lines `i` and `j` (0-based, `i != j`).
    pub fn point(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let n = self.n_lines;
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn pair(&self, p: usize) -> (usize, usize) {
        let mut rest = p;
        for i in 0..self.n_lines {
            let on_row = self.n_lines - i - 1;
            if rest < on_row {
                return (i, i + 1 + rest);
            }
            rest -= on_row;
        }
        panic!("point {p} out of range")
    }

    pub fn line(&self, i: usize) -> ElementSet {
        (0..self.n_lines)
            .filter(|&j| j != i)
            .map(|j| self.point(i, j))
            .collect()
    }

    pub fn lines(&self) -> Vec<ElementSet> {
        (0..self.n_lines).map(|i| self.line(i)).collect()
    }

    /// Display label of a point, e.g. `{1,2}`.
    pub fn point_label(&self, p: usize) -> String {
        let (i, j) = self.pair(p);
        format!("{{{},{}}}", i + 1, j + 1)
    }
}

/// `G_{k,l}`: rank 3 with the rows and columns of at least three cells as
/// hyperplanes. With a single row or column the matroid is `U_{2,kl}` (or
/// free when `kl <= 2`); [`GridLayout::is_degenerate`] reports this.
pub fn grid_matroid(k: usize, l: usize) -> Result<PavingMatroid> {
    let grid = GridLayout::new(k, l)?;
    if grid.is_degenerate() {
        return PavingMatroid::new(grid.size(), grid.size().min(2), vec![]);
    }
    let hyperplanes = grid.hyperplanes().into_iter().map(|(_, h)| h).collect();
    PavingMatroid::new(grid.size(), 3, hyperplanes)
}

/// `L_n` on the `C(n,2)` intersection points.
pub fn line_matroid(n: usize) -> Result<PavingMatroid> {
    let arr = LineArrangement::new(n)?;
    PavingMatroid::new(arr.n_points(), 3, arr.lines())
}

fn check_ci_params(k: usize, l: usize, s: usize, t: usize) -> Result<GridLayout> {
    let grid = GridLayout::new(k, l)?;
    if s == 0 || t == 0 {
        return Err(Error::BadParams("s and t must be positive".into()));
    }
    if s > k {
        return Err(Error::BadParams(format!("s = {s} exceeds k = {k}")));
    }
    if t > l {
        return Err(Error::BadParams(format!("t = {t} exceeds l = {l}")));
    }
    Ok(grid)
}

/// `Δ^{s,t}`: the `t`-subsets of rows and the `s`-subsets of columns.
pub fn ci_hypergraph(k: usize, l: usize, s: usize, t: usize) -> Result<Vec<ElementSet>> {
    let grid = check_ci_params(k, l, s, t)?;
    let mut sets: Vec<ElementSet> = grid
        .rows()
        .iter()
        .flat_map(|r| Combinations::new(r, t))
        .collect();
    sets.extend(grid.cols().iter().flat_map(|c| Combinations::new(c, s)));
    Ok(canonicalize(sets))
}

#[derive(Clone, Debug)]
struct CiOracle {
    grid: GridLayout,
    s: usize,
    t: usize,
    n: usize,
}

impl DependenceOracle for CiOracle {
    fn is_dependent(&self, set: &ElementSet) -> bool {
        set.len() > self.n
            || (0..self.grid.k).any(|i| set.intersection_len(&self.grid.row(i)) >= self.t)
            || (0..self.grid.l).any(|j| set.intersection_len(&self.grid.col(j)) >= self.s)
    }
}

/// The matroid whose circuits are the minimal members of `Δ^{s,t}` together
/// with all `(n+1)`-subsets, under `3 <= s <= t <= l`, `s <= k` and
/// `t <= n <= s+t-3`.
pub fn ci_matroid(k: usize, l: usize, s: usize, t: usize, n: usize) -> Result<Matroid> {
    let checks = [
        (3 <= s, "3 <= s"),
        (s <= t, "s <= t"),
        (t <= l, "t <= l"),
        (s <= k, "s <= k"),
        (t <= n, "t <= n"),
        (n + 3 <= s + t, "n <= s+t-3"),
    ];
    if let Some((_, rule)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::HypothesisViolated(format!(
            "{rule} fails for k={k}, l={l}, s={s}, t={t}, n={n}"
        )));
    }
    let grid = GridLayout::new(k, l)?;
    let oracle = CiOracle { grid, s, t, n };
    let d = grid.size();
    let estimate = binomial(d, n + 1) + k as u128 * binomial(l, t) + l as u128 * binomial(k, s);
    let m = Matroid::from_oracle(d, Arc::new(oracle), Origin::Hypergraph);
    if estimate <= DEFAULT_CIRCUIT_BUDGET as u128 && d <= 16 {
        m.materialized(DEFAULT_CIRCUIT_BUDGET)
    } else {
        Ok(m)
    }
}

/// A minor `[A | B]_X` of the `n × kl` matrix `X`: rows `A`, columns `B`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MinorGenerator {
    pub rows: ElementSet,
    pub cols: ElementSet,
}

impl fmt::Display for MinorGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &ElementSet| {
            s.to_one_based()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{};{}", join(&self.rows), join(&self.cols))
    }
}

/// Every `(A, B)` with `B ∈ Δ^{s,t}`, `A ⊆ [n]` and `|A| = |B|`.
pub fn ci_ideal_generators(k: usize, l: usize, s: usize, t: usize, n: usize) -> Result<Vec<MinorGenerator>> {
    let hypergraph = ci_hypergraph(k, l, s, t)?;
    if n < s.max(t) {
        return Err(Error::BadParams(format!(
            "n = {n} is below max(s, t) = {}",
            s.max(t)
        )));
    }
    let mut out = Vec::new();
    for b in hypergraph {
        for a in Combinations::of_range(n, b.len()) {
            out.push(MinorGenerator {
                rows: a,
                cols: b.clone(),
            });
        }
    }
    Ok(out)
}

/// CSV rendering: header `A;B`, then one generator per line.
pub fn generators_csv(gens: &[MinorGenerator]) -> String {
    let mut out = String::from("A;B\n");
    for g in gens {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> ElementSet {
        ElementSet::from_one_based(v.iter().copied()).unwrap()
    }

    #[test]
    fn layout_matches_matrix_numbering() {
        let g = GridLayout::new(3, 4).unwrap();
        assert_eq!(g.row(0), set(&[1, 4, 7, 10]));
        assert_eq!(g.col(1), set(&[4, 5, 6]));
        assert_eq!(g.position(g.cell(2, 3)), (2, 3));
        for i in 0..3 {
            for j in 0..4 {
                assert_eq!(g.row(i).intersection(&g.col(j)), ElementSet::singleton(g.cell(i, j)));
            }
        }
    }

    #[test]
    fn grid_hyperplane_counts() {
        let g33 = grid_matroid(3, 3).unwrap();
        assert_eq!(g33.hyperplanes().len(), 6);
        assert!(g33.is_tame());
        assert_eq!(grid_matroid(4, 5).unwrap().hyperplanes().len(), 9);
        let g25 = grid_matroid(2, 5).unwrap();
        assert_eq!(g25.hyperplanes(), &[set(&[1, 3, 5, 7, 9]), set(&[2, 4, 6, 8, 10])]);
    }

    #[test]
    fn degenerate_grids() {
        let g = grid_matroid(1, 5).unwrap();
        assert_eq!(g.rank(), 2);
        assert_eq!(g.to_matroid().is_uniform(), Some((2, 5)));
        assert_eq!(grid_matroid(2, 2).unwrap().to_matroid().is_uniform(), Some((3, 4)));
        assert_eq!(grid_matroid(1, 1).unwrap().rank(), 1);
        assert!(GridLayout::new(1, 4).unwrap().is_degenerate());
    }

    #[test]
    fn line_arrangement_points() {
        let arr = LineArrangement::new(5).unwrap();
        for p in 0..arr.n_points() {
            let (i, j) = arr.pair(p);
            assert_eq!(arr.point(i, j), p);
            assert_eq!(arr.point(j, i), p);
        }
        assert_eq!(arr.point_label(0), "{1,2}");
        assert_eq!(arr.point_label(9), "{4,5}");
        assert_eq!(LineArrangement::new(3).unwrap_err(), Error::TooFewLines(3));
    }

    #[test]
    fn line_matroids() {
        let l4 = line_matroid(4).unwrap();
        let qs = crate::paving::paving_from_labels(6, 3, &crate::paving::QUADRILATERAL_LINES).unwrap();
        // L_4 and QS agree up to relabeling: both have 4 lines of 3 with all degrees 2
        assert_eq!(l4.hyperplanes().len(), 4);
        assert!(l4.degrees().iter().all(|&d| d == 2));
        assert_eq!(l4.to_matroid().circuits().unwrap().len(), qs.to_matroid().circuits().unwrap().len());
        let l5 = line_matroid(5).unwrap();
        assert_eq!(l5.ground_size(), 10);
        let circuits = l5.to_matroid();
        assert_eq!(circuits.circuits().unwrap().iter().filter(|c| c.len() == 3).count(), 20);
        let l6 = line_matroid(6).unwrap();
        assert_eq!((l6.ground_size(), l6.hyperplanes().len()), (15, 6));
        assert!(l6.hyperplanes().iter().all(|h| h.len() == 5));
    }

    #[test]
    fn hypergraph_counts() {
        assert_eq!(ci_hypergraph(3, 3, 3, 3).unwrap().len(), 6);
        assert_eq!(ci_hypergraph(3, 4, 3, 3).unwrap().len(), 16);
        assert!(matches!(ci_hypergraph(3, 4, 4, 3), Err(Error::BadParams(_))));
    }

    #[test]
    fn ci_matroid_matches_grid() {
        let ci = ci_matroid(3, 3, 3, 3, 3).unwrap();
        let grid = grid_matroid(3, 3).unwrap().to_matroid();
        assert!(ci.same_dependence(&grid, 100_000).unwrap());
        let ci = ci_matroid(3, 4, 3, 3, 3).unwrap();
        let grid = grid_matroid(3, 4).unwrap().to_matroid();
        assert!(ci.same_dependence(&grid, 100_000).unwrap());
        let err = ci_matroid(3, 4, 3, 3, 4).unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated(ref m) if m.starts_with("n <= s+t-3")));
        assert!(matches!(ci_matroid(3, 4, 3, 4, 3), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn generator_counts_and_csv() {
        let gens = ci_ideal_generators(3, 3, 3, 3, 3).unwrap();
        assert_eq!(gens.len(), 6);
        assert!(gens.iter().all(|g| g.rows == ElementSet::full(3)));
        assert_eq!(ci_ideal_generators(3, 4, 3, 3, 4).unwrap().len(), 64);
        assert!(matches!(ci_ideal_generators(3, 3, 3, 3, 2), Err(Error::BadParams(_))));
        let csv = generators_csv(&gens);
        assert!(csv.starts_with("A;B\n1,2,3;1,2,3\n"));
        assert_eq!(csv.lines().count(), 7);
    }
}
