//! Brute-force reference computations shared by the integration tests.
//! Nothing here calls the library's enumeration or counting code.

#![allow(dead_code)]

use quasipave::ElementSet;

/// Calls `f` on every set partition of `0..m`, built by placing each element
/// into an existing block or a new one.
pub fn for_each_partition(m: usize, f: &mut impl FnMut(&[Vec<usize>])) {
    fn go(next: usize, m: usize, blocks: &mut Vec<Vec<usize>>, f: &mut impl FnMut(&[Vec<usize>])) {
        if next == m {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(next);
            go(next + 1, m, blocks, f);
            blocks[b].pop();
        }
        blocks.push(vec![next]);
        go(next + 1, m, blocks, f);
        blocks.pop();
    }
    go(0, m, &mut Vec::new(), f);
}

/// Set partitions of `[n_1] ⊔ [n_2] ⊔ ...` whose block profiles all pass `allowed`.
pub fn brute_q(target: &[usize], allowed: impl Fn(&[usize]) -> bool) -> u64 {
    let colour: Vec<usize> = target
        .iter()
        .enumerate()
        .flat_map(|(c, &n)| std::iter::repeat_n(c, n))
        .collect();
    let mut count = 0;
    for_each_partition(colour.len(), &mut |blocks| {
        let ok = blocks.iter().all(|b| {
            let mut profile = vec![0; target.len()];
            for &x in b {
                profile[colour[x]] += 1;
            }
            allowed(&profile)
        });
        if ok {
            count += 1;
        }
    });
    count
}

/// Block profiles allowed in the grid count: not in the forbidden set
/// `{(a,b) : a < 3 or b < 3} ∪ {(3,3)}` minus the two unit vectors.
pub fn grid_profile_allowed(p: &[usize]) -> bool {
    let (a, b) = (p[0], p[1]);
    (a, b) == (1, 0) || (a, b) == (0, 1) || (a >= 3 && b >= 3 && (a, b) != (3, 3))
}

pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Cells of the `k × l` grid, numbered down the columns.
pub fn grid_lines(k: usize, l: usize) -> Vec<ElementSet> {
    let rows = (0..k).map(|i| (0..l).map(|j| j * k + i).collect());
    let cols = (0..l).map(|j| (0..k).map(|i| j * k + i).collect());
    rows.chain(cols).collect()
}

/// Niceness of a partition of the grid lines straight from the definition:
/// (ii) no outside line is covered by a block's union; (i) every multi-line
/// block has a non-liftable associated matroid, which for a block with `r`
/// rows and `c` columns reduces to the `r × c` grid.
pub fn brute_nice_grid(k: usize, l: usize, blocks: &[Vec<usize>]) -> bool {
    let lines = grid_lines(k, l);
    for b in blocks {
        let union = b.iter().fold(ElementSet::new(), |acc, &i| acc.union(&lines[i]));
        if (0..k + l).any(|i| !b.contains(&i) && lines[i].is_subset(&union)) {
            return false;
        }
        if b.len() >= 2 {
            let r = b.iter().filter(|&&i| i < k).count();
            let c = b.len() - r;
            let liftable = r < 3 || c < 3 || (r == 3 && c == 3);
            if liftable {
                return false;
            }
        }
    }
    true
}

/// Niceness for `n` lines in general position, from the definition: the
/// associated matroid of a block of `m` lines reduces to `L_m` (liftable
/// when `m <= 3`), and a block of `n - 1` lines covers the remaining line.
pub fn brute_nice_lines(n: usize, blocks: &[Vec<usize>]) -> bool {
    let point = |i: usize, j: usize| {
        let (a, b) = (i.min(j), i.max(j));
        a * n + b
    };
    let lines: Vec<ElementSet> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).map(|j| point(i, j)).collect())
        .collect();
    for b in blocks {
        let union = b.iter().fold(ElementSet::new(), |acc, &i| acc.union(&lines[i]));
        if (0..n).any(|i| !b.contains(&i) && lines[i].is_subset(&union)) {
            return false;
        }
        if b.len() >= 2 && b.len() <= 3 {
            return false;
        }
    }
    true
}

pub fn brute_count_nice_grid(k: usize, l: usize) -> u64 {
    let mut count = 0;
    for_each_partition(k + l, &mut |blocks| {
        if brute_nice_grid(k, l, blocks) {
            count += 1;
        }
    });
    count
}

pub fn brute_count_nice_lines(n: usize) -> u64 {
    let mut count = 0;
    for_each_partition(n, &mut |blocks| {
        if brute_nice_lines(n, blocks) {
            count += 1;
        }
    });
    count
}

/// Dependence straight from a circuit list.
pub fn contains_circuit(circuits: &[ElementSet], s: &ElementSet) -> bool {
    circuits.iter().any(|c| c.is_subset(s))
}

/// All subsets of `0..d` of size at most `max`, as bitmasks.
pub fn small_subsets(d: usize, max: usize) -> Vec<ElementSet> {
    (0u64..1 << d)
        .filter(|m| m.count_ones() as usize <= max)
        .map(ElementSet::from_bits)
        .collect()
}

/// Deterministic RNG for randomized tests.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// A random hypergraph in which each element joins at most two members.
pub fn random_quasi_rep(rng: &mut impl rand::Rng, max_d: usize) -> quasipave::QuasiRep {
    let n = rng.gen_range(2..=4);
    let d = rng.gen_range(n.max(4)..=max_d);
    let k = rng.gen_range(1..=5);
    let mut members = vec![ElementSet::new(); k];
    for p in 0..d {
        let joins = rng.gen_range(0..=2usize).min(k);
        let first = rng.gen_range(0..k);
        members[first].insert(p);
        if joins == 2 {
            let second = (first + rng.gen_range(1..k.max(2))) % k;
            members[second].insert(p);
        } else if joins == 0 {
            members[first].remove(p);
        }
    }
    quasipave::QuasiRep::new(d, n, members).expect("at most two members per element")
}

/// A random paving hyperplane system, grown greedily from random subsets.
pub fn random_paving(rng: &mut impl rand::Rng, d: usize, n: usize) -> quasipave::PavingMatroid {
    let mut hyperplanes: Vec<ElementSet> = Vec::new();
    for _ in 0..rng.gen_range(0..8) {
        let size = rng.gen_range(n..=(n + 2).min(d - 1));
        let mut h = ElementSet::new();
        while h.len() < size {
            h.insert(rng.gen_range(0..d));
        }
        if hyperplanes.iter().all(|g| g.intersection_len(&h) + 2 <= n) {
            hyperplanes.push(h);
        }
    }
    quasipave::PavingMatroid::new(d, n, hyperplanes).expect("intersection bound enforced")
}
