//! Dynamic programs for minimal ending branches B(m; n) and minimum
//! weighted Szeged index trees W(n), the Table-1 threshold engine, and the
//! order-326 regular-vs-optimal comparison.
//!
//! Optimal substructure: in a minimum tree every ending branch is itself
//! minimal, so B(m; n) minimizes over partitions of m - 1 into child orders
//! with children replaced by already-computed minima. A branch root with k
//! children has degree k + 1 (the half-edge counts); the tree root has
//! degree k.

use std::collections::HashMap;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::branch::{AffineCost, BranchShape};
use crate::error::{Error, Result};
use crate::graph::RootedTree;
use crate::num::{self};
use crate::partition::{for_each_partition, partition_min};
use crate::{Cost, Rational};

/// Minimal-branch results for every size at a fixed total order `n`.
#[derive(Debug, Clone)]
pub struct DpTable {
    n: usize,
    entries: Vec<DpEntry>, // index by size, entry 0 unused
}

/// Minimal cost and all co-optimal structures for one branch size.
#[derive(Debug, Clone)]
pub struct DpEntry {
    pub cost: Cost,
    /// Co-optimal child-size multisets, each ascending, list sorted.
    pub child_multisets: Vec<Vec<usize>>,
    /// All co-optimal canonical shapes.
    pub shapes: Vec<BranchShape>,
}

impl DpTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_size(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, size: usize) -> &DpEntry {
        &self.entries[size]
    }

    pub fn cost(&self, size: usize) -> Cost {
        self.entries[size].cost
    }
}

fn count(v: usize) -> Cost {
    v as Cost
}

/// Minimal ending branches of every size `1..=max_size` inside a tree of
/// total order `n`, with all co-optimal structures.
pub fn minimal_branches(n: usize, max_size: usize) -> Result<DpTable> {
    if max_size < 1 || max_size >= n {
        return Err(Error::Domain(format!(
            "branch sizes must satisfy 1 <= max_size <= n - 1 (got max_size {max_size}, n {n})"
        )));
    }
    let nn = count(n);
    let mut entries = Vec::with_capacity(max_size + 1);
    entries.push(DpEntry { cost: 0, child_multisets: Vec::new(), shapes: Vec::new() });
    entries.push(DpEntry {
        cost: nn - 1,
        child_multisets: vec![Vec::new()],
        shapes: vec![BranchShape::leaf()],
    });
    for m in 2..=max_size {
        let mut best: Option<Cost> = None;
        let mut multisets: Vec<Vec<usize>> = Vec::new();
        for k in 1..=(m - 1) {
            // exact lower bound for any k-child structure, increasing in k
            let lb = lower_bound_branch(n, m, k)?;
            if let Some(b) = best {
                if lb > b {
                    break;
                }
            }
            let d = count(k + 1);
            let score = |x: usize| -> Result<Cost> {
                let xx = count(x);
                num::add(num::mul(d, num::mul(xx, nn - xx)?)?, entries[x].cost)
            };
            let base = num::mul(d, num::mul(count(m), nn - count(m))?)?;
            let seed = best.map(|b| b - base);
            let Some((inner, args)) = partition_min(m - 1, k, score, seed)? else { continue };
            let total = num::add(base, inner)?;
            match best {
                Some(b) if total > b => {}
                Some(b) if total == b => multisets.extend(args),
                _ => {
                    best = Some(total);
                    multisets = args;
                }
            }
        }
        let cost = best.expect("k = 1 always yields a candidate");
        multisets.sort();
        multisets.dedup();
        let shapes = materialize_shapes(&entries, &multisets);
        entries.push(DpEntry { cost, child_multisets: multisets, shapes });
    }
    Ok(DpTable { n, entries })
}

fn lower_bound_branch(n: usize, m: usize, k: usize) -> Result<Cost> {
    let nn = count(n);
    let d = count(k + 1);
    // sum of x(n-x) over the children is at least (m-1)(n-m+1); each child
    // branch costs at least n-1
    let half = num::mul(count(m), nn - count(m))?;
    let kids = num::mul(count(m - 1), nn - count(m - 1))?;
    num::add(num::mul(d, num::add(half, kids)?)?, num::mul(count(k), nn - 1)?)
}

/// All co-optimal canonical shapes for the given child-size multisets.
fn materialize_shapes(entries: &[DpEntry], multisets: &[Vec<usize>]) -> Vec<BranchShape> {
    let mut out: Vec<BranchShape> = Vec::new();
    for sizes in multisets {
        for combo in shape_combinations(entries, sizes) {
            let shape = BranchShape::new(combo);
            if !out.contains(&shape) {
                out.push(shape);
            }
        }
    }
    out.sort();
    out
}

/// Cartesian product of co-optimal child shapes for a child-size multiset.
fn shape_combinations(entries: &[DpEntry], sizes: &[usize]) -> Vec<Vec<BranchShape>> {
    let mut combos: Vec<Vec<BranchShape>> = vec![Vec::new()];
    for &s in sizes {
        let mut next = Vec::with_capacity(combos.len() * entries[s].shapes.len());
        for combo in &combos {
            for shape in &entries[s].shapes {
                let mut c = combo.clone();
                c.push(shape.clone());
                next.push(c);
            }
        }
        combos = next;
    }
    combos
}

/// One distinct minimum-index tree, reported through its canonical rooted
/// decomposition.
#[derive(Debug, Clone)]
pub struct OptimalTree {
    /// Representative root child orders, ascending.
    pub children: Vec<usize>,
    pub tree: RootedTree,
    pub canonical: String,
}

/// Result of the tree-level optimization at order `n`.
#[derive(Debug, Clone)]
pub struct TreeOptimum {
    pub n: usize,
    pub cost: Cost,
    /// Every co-optimal root child-size multiset the DP found (including
    /// re-rootings of the same tree), ascending, sorted.
    pub decompositions: Vec<Vec<usize>>,
    /// Distinct optimal trees, primary row first.
    pub trees: Vec<OptimalTree>,
}

/// Minimum weighted Szeged index over all trees on `n` vertices, with every
/// co-optimal root structure. The root has no half-edge: degree = child
/// count.
pub fn minimal_tree(n: usize) -> Result<TreeOptimum> {
    if n == 0 {
        return Err(Error::Domain("a tree needs at least one vertex".into()));
    }
    if n == 1 {
        let tree = RootedTree::from_parents(vec![None])?;
        let canonical = tree.to_graph().free_canonical()?;
        return Ok(TreeOptimum {
            n,
            cost: 0,
            decompositions: vec![Vec::new()],
            trees: vec![OptimalTree { children: Vec::new(), tree, canonical }],
        });
    }
    let nn = count(n);
    let dp = minimal_branches(n, n - 1)?;
    let mut best: Option<Cost> = None;
    let mut multisets: Vec<Vec<usize>> = Vec::new();
    for k in 1..=(n - 1) {
        // every term k·x(n−x) is at least k(n−1), every child at least n−1
        let lb = num::mul(count(k * (k + 1)), nn - 1)?;
        if let Some(b) = best {
            if lb > b {
                break;
            }
        }
        let kk = count(k);
        let score = |x: usize| -> Result<Cost> {
            let xx = count(x);
            num::add(num::mul(kk, num::mul(xx, nn - xx)?)?, dp.cost(x))
        };
        let Some((total, args)) = partition_min(n - 1, k, score, best)? else { continue };
        match best {
            Some(b) if total > b => {}
            Some(b) if total == b => multisets.extend(args),
            _ => {
                best = Some(total);
                multisets = args;
            }
        }
    }
    let cost = best.expect("n >= 2 has a candidate");
    multisets.sort();
    multisets.dedup();

    // materialize every co-optimal decomposition (all shape choices), then
    // group by free-tree isomorphism
    let mut by_canonical: HashMap<String, (Vec<Vec<usize>>, RootedTree)> = HashMap::new();
    for sizes in &multisets {
        for combo in shape_combinations(dp_entries(&dp), sizes) {
            let tree = tree_from_root_children(&combo)?;
            let graph = tree.to_graph();
            let wsz: Cost = graph.weighted_szeged_index()?;
            if wsz != cost {
                return Err(Error::Domain(format!(
                    "assembly identity violated at n = {n}: DP cost {cost}, tree cost {wsz}"
                )));
            }
            let canonical = graph.free_canonical()?;
            let slot = by_canonical.entry(canonical).or_insert_with(|| (Vec::new(), tree.clone()));
            if !slot.0.contains(sizes) {
                slot.0.push(sizes.clone());
            }
            // keep the instance matching the representative decomposition
            if representative(&slot.0) == *sizes {
                slot.1 = tree;
            }
        }
    }
    let mut trees: Vec<OptimalTree> = by_canonical
        .into_iter()
        .map(|(canonical, (mut decs, tree))| {
            let children = representative(&decs);
            decs.sort();
            OptimalTree { children, tree, canonical }
        })
        .collect();
    trees.sort_by(|a, b| {
        b.children.len().cmp(&a.children.len()).then_with(|| a.children.cmp(&b.children))
    });

    // tiny paths are conventionally reported as chains rooted at a leaf
    if n <= 3 {
        let chain = single_chain_tree(n)?;
        let canonical = chain.to_graph().free_canonical()?;
        trees = vec![OptimalTree { children: vec![n - 1], tree: chain, canonical }];
    }

    Ok(TreeOptimum { n, cost, decompositions: multisets, trees })
}

fn dp_entries(dp: &DpTable) -> &[DpEntry] {
    &dp.entries
}

/// Representative decomposition of one isomorphism class: most children,
/// then lexicographically greatest ascending child orders. This matches
/// rooting the tree at a vertex of highest degree with the most balanced
/// split.
fn representative(decs: &[Vec<usize>]) -> Vec<usize> {
    decs.iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .cloned()
        .unwrap_or_default()
}

fn single_chain_tree(n: usize) -> Result<RootedTree> {
    let mut parent: Vec<Option<u32>> = vec![None; n];
    for v in 1..n {
        parent[v] = Some(v as u32 - 1);
    }
    RootedTree::from_parents(parent)
}

/// Rooted tree with the given branch shapes hanging from a fresh root.
pub fn tree_from_root_children(shapes: &[BranchShape]) -> Result<RootedTree> {
    let n = 1 + shapes.iter().map(BranchShape::size).sum::<usize>();
    let mut parent: Vec<Option<u32>> = vec![None; n];
    let mut next = 1usize;
    fn place(shape: &BranchShape, attach: u32, parent: &mut [Option<u32>], next: &mut usize) {
        let me = *next as u32;
        *next += 1;
        parent[me as usize] = Some(attach);
        for c in shape.children() {
            place(c, me, parent, next);
        }
    }
    for s in shapes {
        place(s, 0, &mut parent, &mut next);
    }
    RootedTree::from_parents(parent)
}

/// The structure(s) of a minimal branch of a given size for every
/// sufficiently large total order, with the exact affine cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticStructure {
    pub affine: AffineCost<Cost>,
    /// Co-optimal child-size multisets, most children first, then ascending.
    pub tags: Vec<Vec<usize>>,
}

/// Asymptotically optimal branch structures for every size `1..=max_size`:
/// the lexicographic minimum by (slope, intercept) over all structure
/// costs. The smallest slope wins for all large n; among equal slopes the
/// smaller intercept wins everywhere, and equal affines are ties.
///
/// Compositional: replacing any child by a non-lex-minimal one of the same
/// size strictly worsens the pair, so only optimal children are considered.
pub fn asymptotic_structures(max_size: usize) -> Result<Vec<AsymptoticStructure>> {
    let mut out: Vec<AsymptoticStructure> = Vec::with_capacity(max_size + 1);
    out.push(AsymptoticStructure { affine: AffineCost::new(0, 0), tags: Vec::new() });
    out.push(AsymptoticStructure { affine: AffineCost::new(1, -1), tags: vec![Vec::new()] });
    for m in 2..=max_size {
        let mut best: Option<AffineCost<Cost>> = None;
        let mut tags: Vec<Vec<usize>> = Vec::new();
        let mut status = Ok(());
        for_each_partition(m - 1, |parts| {
            if status.is_err() {
                return;
            }
            let d = count(parts.len() + 1);
            let mut slope = count(m);
            let mut intercept = -count(m * m);
            let mut child = AffineCost::new(0, 0);
            for &p in parts {
                slope += count(p);
                intercept -= count(p * p);
                child = match child.add(&out[p].affine) {
                    Ok(c) => c,
                    Err(e) => {
                        status = Err(e);
                        return;
                    }
                };
            }
            let cand = match AffineCost::new(slope, intercept).mul_scalar(d).and_then(|b| b.add(&child)) {
                Ok(c) => c,
                Err(e) => {
                    status = Err(e);
                    return;
                }
            };
            let key = (cand.slope, cand.intercept);
            match best {
                Some(b) if key > (b.slope, b.intercept) => {}
                Some(b) if key == (b.slope, b.intercept) => {
                    let mut t = parts.to_vec();
                    t.reverse();
                    tags.push(t);
                }
                _ => {
                    best = Some(cand);
                    let mut t = parts.to_vec();
                    t.reverse();
                    tags.clear();
                    tags.push(t);
                }
            }
        });
        status?;
        tags.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        tags.dedup();
        out.push(AsymptoticStructure { affine: best.expect("m >= 2 has partitions"), tags });
    }
    Ok(out)
}

/// One row of the minimal-ending-branch table: the structure optimal for
/// every sufficiently large order, and the smallest order from which it is
/// weakly optimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdRow {
    pub size: usize,
    pub threshold: usize,
    pub child_count: usize,
    /// Child orders, ascending.
    pub children: Vec<usize>,
    /// Starred tie row: shares the asymptotic optimum with the row above.
    pub tie: bool,
    /// The asymptotic affine meets the scanned minimum at n_max, which pins
    /// it as optimal for every n >= n_max: any competitor has a larger or
    /// equal slope, so beating it later would mean beating it at n_max too.
    pub certified: bool,
}

/// Reproduces the threshold table for branch sizes `2..=max_size`, scanning
/// total orders up to `n_max`. The threshold is the smallest N such that
/// the asymptotic structure is weakly optimal for every n in [N, n_max]
/// (and, when certified, beyond).
pub fn threshold_table(max_size: usize, n_max: usize) -> Result<Vec<ThresholdRow>> {
    if n_max < max_size {
        return Err(Error::Domain(format!(
            "n_max {n_max} must be at least max_size {max_size}"
        )));
    }
    let asym = asymptotic_structures(max_size)?;
    // last_violation[m] = largest n where the asymptotic cost is not minimal
    let mut last_violation: Vec<Option<usize>> = vec![None; max_size + 1];
    for n in 2..=n_max {
        let top = max_size.min(n);
        let b = scan_min_branch_costs(n, top)?;
        for m in 2..=top {
            if asym[m].affine.eval(count(n))? != b[m] {
                last_violation[m] = Some(n);
            }
        }
    }
    let mut rows = Vec::new();
    for m in 2..=max_size {
        let threshold = last_violation[m].map_or(m, |v| v + 1);
        let certified = last_violation[m].map_or(true, |v| v < n_max);
        for (i, tag) in asym[m].tags.iter().enumerate() {
            rows.push(ThresholdRow {
                size: m,
                threshold,
                child_count: tag.len(),
                children: tag.clone(),
                tie: i > 0,
                certified,
            });
        }
    }
    Ok(rows)
}

/// Affine comparison of two equal-size branch shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingReport {
    /// cost(a) - cost(b) as an affine function of n.
    pub difference: AffineCost<Cost>,
    /// Exact order at which the two costs are equal, if the slopes differ.
    pub crossing: Option<Rational>,
}

impl CrossingReport {
    /// Sign of cost(a) - cost(b) at a given order.
    pub fn sign_at(&self, n: usize) -> Result<std::cmp::Ordering> {
        Ok(self.difference.eval(count(n))?.cmp(&0))
    }
}

pub fn compare_structures(a: &BranchShape, b: &BranchShape) -> Result<CrossingReport> {
    if a.size() != b.size() {
        return Err(Error::Domain(format!(
            "cannot compare branches of different sizes ({} vs {})",
            a.size(),
            b.size()
        )));
    }
    let difference = a.cost_affine::<Cost>()?.sub(&b.cost_affine()?)?;
    let crossing = if difference.slope == 0 {
        None
    } else {
        Some(Ratio::new(-difference.intercept, difference.slope))
    };
    Ok(CrossingReport { difference, crossing })
}

/// Fast cost-only scan: B(m; n) for every m in `1..=max_size` at a fixed n.
/// Shares per-child-count DP layers across sizes; exact lower bounds cut the
/// child-count loop.
pub fn scan_min_branch_costs(n: usize, max_size: usize) -> Result<Vec<Cost>> {
    // size n is admissible: the half-edge term vanishes there
    if max_size < 1 || max_size > n {
        return Err(Error::Domain(format!(
            "scan requires 1 <= max_size <= n (got max_size {max_size}, n {n})"
        )));
    }
    // coarse overflow guard: costs are bounded by (k_max+2)·m·n² terms
    let bound = (max_size as i128 + 2) * (n as i128) * (n as i128) * (max_size as i128 + 1) * 4;
    if bound > (Cost::MAX as i128) / 4 {
        return Err(Error::Overflow);
    }
    const INF: Cost = Cost::MAX / 4;
    let nn = count(n);
    let mut b: Vec<Cost> = vec![0; max_size + 1];
    b[1] = nn - 1;

    // layers[k-1].g[c][s]: min over multisets of exactly c parts summing to
    // s of sum of (k+1)·x(n−x) + B(x); columns filled as sizes grow
    struct Layer {
        g: Vec<Vec<Cost>>,
        filled: usize,
    }
    let mut layers: Vec<Layer> = Vec::new();

    for m in 2..=max_size {
        let target = m - 1;
        let mut best: Option<Cost> = None;
        for k in 1..=target {
            let d = count(k + 1);
            let lb = d * (count(m) * (nn - count(m)) + count(m - 1) * (nn - count(m - 1)))
                + count(k) * (nn - 1);
            if let Some(bv) = best {
                if lb > bv {
                    break;
                }
                // sharper non-monotone bound: the k child terms are at least
                // those of the most unbalanced partition (m-k, 1, ..., 1)
                let big = count(m - k);
                let sharp = d
                    * (count(m) * (nn - count(m))
                        + big * (nn - big)
                        + count(k - 1) * (nn - 1))
                    + count(k) * (nn - 1);
                if sharp > bv {
                    continue;
                }
            }
            if layers.len() < k {
                layers.push(Layer { g: vec![vec![INF; max_size]; k + 1], filled: 0 });
            }
            let layer = &mut layers[k - 1];
            for s in (layer.filled + 1)..=target {
                let score_s = d * count(s) * (nn - count(s)) + b[s];
                layer.g[1][s - 1] = score_s;
                for c in 2..=k.min(s) {
                    let mut m_best = INF;
                    for x in 1..=(s - c + 1) {
                        let sc = d * count(x) * (nn - count(x)) + b[x];
                        let prev = layer.g[c - 1][s - x - 1];
                        if prev < INF && sc + prev < m_best {
                            m_best = sc + prev;
                        }
                    }
                    layer.g[c][s - 1] = m_best;
                }
                layer.filled = s;
            }
            let inner = layer.g[k][target - 1];
            if inner >= INF {
                continue;
            }
            let cand = d * count(m) * (nn - count(m)) + inner;
            best = Some(match best {
                Some(bv) => bv.min(cand),
                None => cand,
            });
        }
        b[m] = best.expect("single-child candidate always exists");
    }
    Ok(b)
}

/// A single order in the 326-vertex comparison scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scan326Point {
    pub n: usize,
    /// B(326; n), the fixed-n DP minimum.
    pub dp_min: Cost,
    /// Children (103, 103, 119), each the minimal branch of its order.
    pub irregular: Cost,
    /// The regular candidate: simplified degree sequence [5, 4, 3, 2, 1].
    pub regular: Cost,
    /// Some equal-order-children structure attains the DP minimum.
    pub optimum_is_regular: bool,
}

#[derive(Debug, Clone)]
pub struct Report326 {
    pub points: Vec<Scan326Point>,
    /// Smallest scanned order from which (103,103,119) beats the regular
    /// candidate for every larger scanned order (the winning tail).
    pub irregular_wins_from: Option<usize>,
}

/// Compares the order-326 regular candidate (5 children of order 65)
/// against children (103, 103, 119) across a range of total orders.
pub fn regular_vs_optimal_326(n_lo: usize, n_hi: usize) -> Result<Report326> {
    const SIZE: usize = 326;
    if n_lo < SIZE + 2 {
        return Err(Error::Domain(format!("scan must start at order >= {}", SIZE + 2)));
    }
    if n_hi < n_lo {
        return Err(Error::Domain("empty scan range".into()));
    }
    // the regular [5,4,3,2,1] shape: 5 x (4 x (3 x (2 x chain-2)))
    let b2 = BranchShape::new(vec![BranchShape::leaf()]);
    let b5 = BranchShape::new(vec![b2.clone(), b2]);
    let b16 = BranchShape::new(vec![b5.clone(), b5.clone(), b5]);
    let b65 = BranchShape::new(vec![b16.clone(), b16.clone(), b16.clone(), b16]);
    let b326 = BranchShape::new(vec![b65.clone(), b65.clone(), b65.clone(), b65.clone(), b65]);
    debug_assert_eq!(b326.size(), SIZE);
    let regular_affine = b326.cost_affine::<Cost>()?;

    let points: Result<Vec<Scan326Point>> = (n_lo..=n_hi)
        .into_par_iter()
        .map(|n| {
            let b = scan_min_branch_costs(n, SIZE)?;
            let nn = count(n);
            let dp_min = b[SIZE];
            let term = |x: usize| count(x) * (nn - count(x));
            // root degree 4: three children plus the half-edge
            let irregular =
                4 * (term(SIZE) + 2 * term(103) + term(119)) + 2 * b[103] + b[119];
            let regular = regular_affine.eval(nn)?;
            // equal-children candidates: k children of order 325/k
            let optimum_is_regular = [1usize, 5, 25, 65, 325].iter().any(|&k| {
                let x = 325 / k;
                let c = count(k + 1) * (term(SIZE) + count(k) * term(x)) + count(k) * b[x];
                c == dp_min
            });
            Ok(Scan326Point { n, dp_min, irregular, regular, optimum_is_regular })
        })
        .collect();
    let points = points?;
    let mut wins_from = None;
    for p in points.iter().rev() {
        if p.irregular < p.regular {
            wins_from = Some(p.n);
        } else {
            break;
        }
    }
    Ok(Report326 { points, irregular_wins_from: wins_from })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(size: usize) -> BranchShape {
        let mut s = BranchShape::leaf();
        for _ in 1..size {
            s = BranchShape::new(vec![s]);
        }
        s
    }

    #[test]
    fn branch_dp_small_values() {
        let dp = minimal_branches(10, 4).unwrap();
        assert_eq!(dp.cost(1), 9);
        assert_eq!(dp.cost(2), 7 * 10 - 11);
        assert_eq!(dp.cost(4), 215);
        assert_eq!(dp.entry(4).child_multisets, vec![vec![1, 2]]);
        // m = 2 is unique for any n
        let dp = minimal_branches(40, 2).unwrap();
        assert_eq!(dp.entry(2).child_multisets, vec![vec![1]]);
        assert_eq!(dp.cost(2), 7 * 40 - 11);
    }

    #[test]
    fn branch_dp_tie_row_10() {
        // both asymptotic structures, plus a finite-order-only tie at 14
        let dp = minimal_branches(14, 10).unwrap();
        assert_eq!(
            dp.entry(10).child_multisets,
            vec![vec![2, 2, 5], vec![3, 3, 3], vec![4, 5]]
        );
        let dp = minimal_branches(20, 10).unwrap();
        assert_eq!(dp.entry(10).child_multisets, vec![vec![3, 3, 3], vec![4, 5]]);
    }

    #[test]
    fn branch_dp_table1_row_16() {
        // at the threshold order itself other structures still tie
        let dp = minimal_branches(18, 16).unwrap();
        assert!(dp.entry(16).child_multisets.contains(&vec![5, 5, 5]));
        for n in [19, 30, 67] {
            let dp = minimal_branches(n, 16).unwrap();
            assert_eq!(dp.entry(16).child_multisets, vec![vec![5, 5, 5]]);
        }
    }

    #[test]
    fn scan_matches_dp() {
        for n in [12, 20, 41] {
            let b = scan_min_branch_costs(n, n - 1).unwrap();
            let dp = minimal_branches(n, n - 1).unwrap();
            for m in 1..n {
                assert_eq!(b[m], dp.cost(m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn tree_known_rows() {
        let t = minimal_tree(2).unwrap();
        assert_eq!(t.cost, 2);
        let t = minimal_tree(4).unwrap();
        assert_eq!(t.cost, 34);
        assert_eq!(t.trees.len(), 1);
        assert_eq!(t.trees[0].children, vec![1, 2]);
        let t = minimal_tree(67).unwrap();
        assert_eq!(t.trees[0].children, vec![16, 16, 16, 18]);
        assert_eq!(t.trees[0].children.len(), 4);
    }

    #[test]
    fn tree_tie_rows_15_and_18() {
        let t = minimal_tree(15).unwrap();
        let reps: Vec<_> = t.trees.iter().map(|o| o.children.clone()).collect();
        assert_eq!(reps, vec![vec![3, 3, 3, 5], vec![4, 5, 5]]);
        let t = minimal_tree(18).unwrap();
        let reps: Vec<_> = t.trees.iter().map(|o| o.children.clone()).collect();
        assert_eq!(reps, vec![vec![2, 5, 5, 5], vec![3, 4, 5, 5]]);
    }

    #[test]
    fn tree_tiny_orders_report_chains() {
        let t = minimal_tree(3).unwrap();
        assert_eq!(t.trees[0].children, vec![2]);
        assert_eq!(t.cost, 12);
    }

    #[test]
    fn threshold_rows_small() {
        let rows = threshold_table(5, 40).unwrap();
        let row = |m: usize| rows.iter().find(|r| r.size == m && !r.tie).unwrap();
        assert_eq!((row(2).threshold, row(2).children.clone()), (2, vec![1]));
        assert_eq!((row(3).threshold, row(3).children.clone()), (3, vec![2]));
        assert_eq!((row(4).threshold, row(4).children.clone()), (6, vec![1, 2]));
        assert_eq!((row(5).threshold, row(5).children.clone()), (6, vec![2, 2]));
    }

    #[test]
    fn compare_size_4_structures() {
        let t21 = BranchShape::new(vec![chain(2), BranchShape::leaf()]);
        let t3 = chain(4);
        let r = compare_structures(&t21, &t3).unwrap();
        assert_eq!(r.crossing, Some(Ratio::from_integer(6)));
        assert_eq!(r.sign_at(7).unwrap(), std::cmp::Ordering::Less);
        let t111 = BranchShape::new(vec![BranchShape::leaf(); 3]);
        let r = compare_structures(&t3, &t111).unwrap();
        assert_eq!(r.crossing, None);
        assert_eq!(r.difference, AffineCost::new(0, -8));
        let r = compare_structures(&t21, &t21.clone()).unwrap();
        assert_eq!(r.difference, AffineCost::new(0, 0));
        assert!(compare_structures(&t21, &chain(3)).is_err());
    }
}
