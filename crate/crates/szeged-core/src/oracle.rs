//! Independent brute-force reference implementations.
//!
//! Rooted trees are enumerated through level sequences in descending
//! lexicographic order (Beyer-Hedetniemi successor rule); free trees are the
//! rooted ones deduplicated by canonical encoding. Everything here avoids
//! the dynamic programs so the two sides can check each other.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::branch::BranchShape;
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedTree};
use crate::Cost;

/// Largest order accepted for free-tree enumeration (106 trees at 10,
/// 123 867 at 18).
pub const FREE_TREE_CAP: usize = 18;
/// Largest size accepted for rooted branch-shape enumeration (32 973 shapes
/// at 14).
pub const BRANCH_SHAPE_CAP: usize = 14;

/// Level sequences (root level 1) of all rooted trees on `n` vertices, in
/// descending lexicographic order: the path first, the star last.
pub struct LevelSequences {
    seq: Vec<usize>,
    started: bool,
    done: bool,
}

pub fn level_sequences(n: usize) -> LevelSequences {
    LevelSequences { seq: (1..=n).collect(), started: false, done: n == 0 }
}

impl Iterator for LevelSequences {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.seq.clone());
        }
        // successor: find the rightmost entry above 2, drop it by one and
        // replay the prefix pattern that ends at its new parent level
        let n = self.seq.len();
        let Some(p) = (0..n).rev().find(|&i| self.seq[i] >= 3) else {
            self.done = true;
            return None;
        };
        let q = (0..p).rev().find(|&i| self.seq[i] == self.seq[p] - 1).unwrap();
        for i in p..n {
            self.seq[i] = self.seq[i - (p - q)];
        }
        Some(self.seq.clone())
    }
}

/// Parent array (root 0) for a level sequence.
pub fn parents_from_levels(levels: &[usize]) -> Vec<Option<u32>> {
    let n = levels.len();
    let mut parent: Vec<Option<u32>> = vec![None; n];
    let mut last_at_level: Vec<u32> = vec![0; n + 2];
    for (i, &lv) in levels.iter().enumerate() {
        if lv > 1 {
            parent[i] = Some(last_at_level[lv - 1]);
        }
        last_at_level[lv] = i as u32;
    }
    parent
}

/// Weighted Szeged index straight from a parent array, without building a
/// graph. Used to keep the exhaustive search fast.
pub fn weighted_szeged_from_parents(parent: &[Option<u32>]) -> Result<Cost> {
    let n = parent.len();
    let mut deg = vec![0i64; n];
    let mut sub = vec![1i64; n];
    for v in (1..n).rev() {
        let p = parent[v].ok_or_else(|| Error::Validation("vertex without parent".into()))? as usize;
        if p >= v {
            return Err(Error::Validation("parents must precede children".into()));
        }
        deg[v] += 1;
        deg[p] += 1;
        sub[p] += sub[v];
    }
    let nn = n as i64;
    let mut total: Cost = 0;
    for v in 1..n {
        let p = parent[v].unwrap() as usize;
        let term = crate::num::mul(deg[v] + deg[p], crate::num::mul(sub[v], nn - sub[v])?)?;
        total = crate::num::add(total, term)?;
    }
    Ok(total)
}

fn shape_from_levels(levels: &[usize]) -> BranchShape {
    fn build(levels: &[usize], i: &mut usize) -> BranchShape {
        let my = levels[*i];
        *i += 1;
        let mut children = Vec::new();
        while *i < levels.len() && levels[*i] == my + 1 {
            children.push(build(levels, i));
        }
        BranchShape::new(children)
    }
    let mut i = 0;
    build(levels, &mut i)
}

/// Every rooted shape on `size` vertices, canonical form.
pub fn enumerate_branch_shapes(size: usize) -> Result<impl Iterator<Item = BranchShape>> {
    if size == 0 || size > BRANCH_SHAPE_CAP {
        return Err(Error::CapExceeded { requested: size, cap: BRANCH_SHAPE_CAP });
    }
    Ok(level_sequences(size).map(|ls| shape_from_levels(&ls)))
}

/// Every free (unrooted) tree on `n` vertices, one representative per
/// isomorphism class.
pub fn enumerate_free_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n == 0 || n > FREE_TREE_CAP {
        return Err(Error::CapExceeded { requested: n, cap: FREE_TREE_CAP });
    }
    let mut seen: HashSet<String> = HashSet::new();
    Ok(level_sequences(n).filter_map(move |ls| {
        let tree = RootedTree::from_parents(parents_from_levels(&ls)).ok()?;
        let g = tree.to_graph();
        let canon = g.free_canonical().ok()?;
        seen.insert(canon).then_some(g)
    }))
}

/// Exhaustive minimum weighted Szeged index over all trees on `n` vertices,
/// with every minimizing tree (up to isomorphism).
pub fn brute_force_min_tree(n: usize) -> Result<(Cost, Vec<Graph>)> {
    if n == 0 || n > FREE_TREE_CAP {
        return Err(Error::CapExceeded { requested: n, cap: FREE_TREE_CAP });
    }
    if n == 1 {
        return Ok((0, vec![Graph::new(1, Vec::new())?]));
    }
    let mut best: Option<Cost> = None;
    let mut seen: HashSet<String> = HashSet::new();
    let mut mins: Vec<Graph> = Vec::new();
    for ls in level_sequences(n) {
        let parent = parents_from_levels(&ls);
        let w = weighted_szeged_from_parents(&parent)?;
        if best.map_or(true, |b| w < b) {
            best = Some(w);
            seen.clear();
            mins.clear();
        }
        if best == Some(w) {
            let g = RootedTree::from_parents(parent)?.to_graph();
            if seen.insert(g.free_canonical()?) {
                mins.push(g);
            }
        }
    }
    Ok((best.unwrap(), mins))
}

/// Exhaustive minimum branch cost over all shapes of `size` vertices in a
/// host of total order `n`, with every minimizing shape.
pub fn brute_force_min_branch(size: usize, n: usize) -> Result<(Cost, Vec<BranchShape>)> {
    if size >= n {
        return Err(Error::Domain(format!(
            "branch size {size} must be below the total order {n}"
        )));
    }
    let mut best: Option<Cost> = None;
    let mut mins: Vec<BranchShape> = Vec::new();
    for shape in enumerate_branch_shapes(size)? {
        let w = shape.cost_affine::<Cost>()?.eval(n as Cost)?;
        if best.map_or(true, |b| w < b) {
            best = Some(w);
            mins.clear();
        }
        if best == Some(w) && !mins.contains(&shape) {
            mins.push(shape);
        }
    }
    mins.sort();
    Ok((best.unwrap(), mins))
}

/// Uniform random labeled tree via a decoded random Prüfer sequence,
/// deterministic for a given seed.
pub fn random_tree(n: usize, seed: u64) -> Result<RootedTree> {
    if n == 0 {
        return Err(Error::Domain("a tree needs at least one vertex".into()));
    }
    if n == 1 {
        return RootedTree::from_parents(vec![None]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(n - 1);
    let mut degree = degree;
    for &v in &seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf as u32, v as u32));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((last[0] as u32, last[1] as u32));
    RootedTree::from_graph(&Graph::new(n, edges)?, 0)
}

/// Rooted tree counts r(1..=max) by isomorphism class, via the Euler
/// transform recurrence.
pub fn rooted_tree_counts(max: usize) -> Vec<i64> {
    let mut r = vec![0i64; max + 1];
    if max >= 1 {
        r[1] = 1;
    }
    for n in 2..=max {
        let mut acc = 0i64;
        for k in 1..n {
            let mut divisor_sum = 0i64;
            for d in 1..=k {
                if k % d == 0 {
                    divisor_sum += d as i64 * r[d];
                }
            }
            acc += divisor_sum * r[n - k];
        }
        r[n] = acc / (n as i64 - 1);
    }
    r
}

/// Free tree counts t(1..=max) from the rooted counts (Otter's dissimilarity
/// formula).
pub fn free_tree_counts(max: usize) -> Vec<i64> {
    let r = rooted_tree_counts(max);
    let mut t = vec![0i64; max + 1];
    for n in 1..=max {
        let s: i64 = (1..n).map(|i| r[i] * r[n - i]).sum();
        let middle = if n % 2 == 0 { r[n / 2] } else { 0 };
        t[n] = r[n] - (s - middle) / 2;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_formulas() {
        let r = rooted_tree_counts(9);
        assert_eq!(&r[1..], &[1, 1, 2, 4, 9, 20, 48, 115, 286]);
        let t = free_tree_counts(12);
        assert_eq!(&t[1..], &[1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]);
    }

    #[test]
    fn enumeration_matches_counts() {
        let r = rooted_tree_counts(10);
        for n in 1..=10 {
            assert_eq!(level_sequences(n).count(), r[n] as usize, "rooted n={n}");
        }
        let t = free_tree_counts(10);
        for n in 1..=10 {
            assert_eq!(enumerate_free_trees(n).unwrap().count(), t[n] as usize, "free n={n}");
        }
    }

    #[test]
    fn shapes_are_distinct_and_complete() {
        for size in 1..=8 {
            let shapes: Vec<_> = enumerate_branch_shapes(size).unwrap().collect();
            let mut unique = shapes.clone();
            unique.sort();
            unique.dedup();
            assert_eq!(unique.len(), shapes.len());
            assert!(shapes.iter().all(|s| s.size() == size));
        }
    }

    #[test]
    fn parent_wsz_matches_graph() {
        for ls in level_sequences(7) {
            let parent = parents_from_levels(&ls);
            let direct = weighted_szeged_from_parents(&parent).unwrap();
            let tree = RootedTree::from_parents(parent).unwrap();
            let via_graph: Cost = tree.to_graph().weighted_szeged_index().unwrap();
            assert_eq!(direct, via_graph);
        }
    }

    #[test]
    fn brute_force_small_minima() {
        // stars minimize among tiny orders; n = 5 prefers the path (72 < 80)
        let (w, trees) = brute_force_min_tree(4).unwrap();
        assert_eq!(w, 34);
        assert_eq!(trees.len(), 1);
        let (w, trees) = brute_force_min_tree(5).unwrap();
        assert_eq!(w, 72);
        assert_eq!(trees.len(), 1);
        let max_deg = (0..5).map(|v| trees[0].degree(v)).max();
        assert_eq!(max_deg, Some(2));
        // n = 6 ties: the path and the (1,2,2) spider both reach 130
        let (w, trees) = brute_force_min_tree(6).unwrap();
        assert_eq!(w, 130);
        assert_eq!(trees.len(), 2);
    }

    #[test]
    fn brute_force_branch_matches_known() {
        let (w, mins) = brute_force_min_branch(4, 10).unwrap();
        assert_eq!(w, 215);
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].children().len(), 2);
        // below the crossing at 6 the chain wins
        let (w, mins) = brute_force_min_branch(4, 5).unwrap();
        assert_eq!(w, 31 * 5 - 87);
        assert_eq!(mins[0].children().len(), 1);
    }

    #[test]
    fn random_trees_are_trees() {
        for seed in 0..20 {
            let t = random_tree(25, seed).unwrap();
            let g = t.to_graph();
            assert_eq!(g.vertex_count(), 25);
            assert_eq!(g.edges().len(), 24);
        }
        let a = random_tree(30, 7).unwrap();
        let b = random_tree(30, 7).unwrap();
        assert_eq!(a.to_graph().edges(), b.to_graph().edges());
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(
            enumerate_free_trees(FREE_TREE_CAP + 1),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            enumerate_branch_shapes(BRANCH_SHAPE_CAP + 1).map(|_| ()),
            Err(Error::CapExceeded { .. })
        ));
    }
}
