//! Structural checks on minimum weighted Szeged index trees.

use crate::branch::{shape_of_subtree, BranchShape};
use crate::error::Result;
use crate::graph::RootedTree;
use crate::optimizer::{asymptotic_structures, minimal_tree};

/// Outcome of one structural check on one tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub id: &'static str,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

/// A violation, pinned to the shallowest offending vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Path of vertices from the root down to the offender.
    pub path: Vec<u32>,
    pub detail: String,
}

fn path_to(tree: &RootedTree, v: u32) -> Vec<u32> {
    let mut path = vec![v];
    let mut cur = v;
    while let Some(p) = tree.parent(cur) {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

fn depth(tree: &RootedTree, v: u32) -> usize {
    let mut d = 0;
    let mut cur = v;
    while let Some(p) = tree.parent(cur) {
        d += 1;
        cur = p;
    }
    d
}

/// Degrees never increase along any root-to-leaf path. Reported from the
/// given root; callers checking an unrooted tree should re-root at each
/// maximum-degree vertex and take the conjunction.
pub fn check_non_increasing_degrees(tree: &RootedTree) -> ConjectureReport {
    let mut witnesses = Vec::new();
    let mut best_depth = usize::MAX;
    for v in 0..tree.order() as u32 {
        for &c in tree.children(v) {
            if tree.degree(c) > tree.degree(v) {
                let d = depth(tree, c);
                if d < best_depth {
                    best_depth = d;
                    witnesses.clear();
                }
                if d == best_depth {
                    witnesses.push(Witness {
                        path: path_to(tree, c),
                        detail: format!(
                            "degree rises from {} to {} along edge ({v}, {c})",
                            tree.degree(v),
                            tree.degree(c)
                        ),
                    });
                }
            }
        }
    }
    ConjectureReport { id: "non-increasing-degrees", holds: witnesses.is_empty(), witnesses }
}

/// Every vertex adjacent to a leaf has degree at most 3.
pub fn check_leaf_attachment(tree: &RootedTree) -> ConjectureReport {
    let mut witnesses = Vec::new();
    for v in 0..tree.order() as u32 {
        if tree.degree(v) != 1 {
            continue;
        }
        let support = tree
            .parent(v)
            .unwrap_or_else(|| tree.children(v)[0]);
        if tree.degree(support) > 3 {
            witnesses.push(Witness {
                path: path_to(tree, support),
                detail: format!(
                    "leaf {v} attaches to vertex {support} of degree {}",
                    tree.degree(support)
                ),
            });
        }
    }
    witnesses.sort_by_key(|w| w.path.len());
    witnesses.dedup();
    ConjectureReport { id: "leaf-attachment", holds: witnesses.is_empty(), witnesses }
}

/// Maximum degree stays within the bound (default 6).
pub fn check_max_degree(tree: &RootedTree, bound: usize) -> ConjectureReport {
    let mut witnesses = Vec::new();
    for v in 0..tree.order() as u32 {
        if tree.degree(v) > bound {
            witnesses.push(Witness {
                path: path_to(tree, v),
                detail: format!("vertex {v} has degree {} > {bound}", tree.degree(v)),
            });
        }
    }
    witnesses.sort_by_key(|w| w.path.len());
    ConjectureReport { id: "max-degree", holds: witnesses.is_empty(), witnesses }
}

/// Main-branch regularity under both readings of "regular".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainBranchRegularity {
    /// Main branch orders, ascending.
    pub branch_orders: Vec<usize>,
    /// Branches whose children are not all of equal order (loose reading).
    pub irregular_shape: usize,
    /// Branches whose order is not in the supplied regular-order list.
    pub unlisted_order: usize,
    /// At most one main branch fails both readings.
    pub holds: bool,
}

/// Counts main branches (subtrees at the root's children) that are not
/// regular, under the loose reading (equal child orders all the way down is
/// not required, only at the branch root) and the strict reading (the order
/// must also appear in `regular_orders`).
pub fn check_main_branch_regularity(
    tree: &RootedTree,
    regular_orders: &[usize],
) -> MainBranchRegularity {
    let mut branch_orders = Vec::new();
    let mut irregular_shape = 0;
    let mut unlisted_order = 0;
    let mut fails_both = 0;
    for &c in tree.children(tree.root()) {
        let shape = shape_of_subtree(tree, c);
        branch_orders.push(shape.size());
        let regular = shape.is_regular();
        let listed = regular_orders.contains(&shape.size());
        if !regular {
            irregular_shape += 1;
        }
        if !listed {
            unlisted_order += 1;
        }
        if !regular && !listed {
            fails_both += 1;
        }
    }
    branch_orders.sort_unstable();
    MainBranchRegularity { branch_orders, irregular_shape, unlisted_order, holds: fails_both <= 1 }
}

/// Which objects the regular-order query ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularKind {
    /// Asymptotically minimal ending branches.
    Branch,
    /// Minimum weighted Szeged index trees.
    Tree,
}

/// Orders up to `max_order` whose minimal structure is regular: all child
/// orders equal at the top split. Ties count if any co-optimal structure
/// qualifies. Branches are judged by the asymptotic (large-n) optimum.
pub fn regular_orders(kind: RegularKind, max_order: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    match kind {
        RegularKind::Branch => {
            let asym = asymptotic_structures(max_order)?;
            for m in 1..=max_order {
                let regular = asym[m]
                    .tags
                    .iter()
                    .any(|tag| tag.windows(2).all(|w| w[0] == w[1]));
                if regular {
                    out.push(m);
                }
            }
        }
        RegularKind::Tree => {
            for n in 1..=max_order {
                let opt = minimal_tree(n)?;
                let regular = opt
                    .trees
                    .iter()
                    .any(|t| t.children.windows(2).all(|w| w[0] == w[1]));
                if regular {
                    out.push(n);
                }
            }
        }
    }
    Ok(out)
}

/// Convenience: shape equality check used by strict-regularity callers.
pub fn is_regular_shape(shape: &BranchShape) -> bool {
    shape.is_regular()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::tree_from_root_children;

    fn chain_shape(size: usize) -> BranchShape {
        let mut s = BranchShape::leaf();
        for _ in 1..size {
            s = BranchShape::new(vec![s]);
        }
        s
    }

    #[test]
    fn degree_monotonicity_detects_rises() {
        // star from the center: fine
        let star = tree_from_root_children(&vec![BranchShape::leaf(); 4]).unwrap();
        assert!(check_non_increasing_degrees(&star).holds);
        // a path rooted at a leaf rises from degree 1 to 2 immediately
        let path = tree_from_root_children(&[chain_shape(3)]).unwrap();
        let r = check_non_increasing_degrees(&path);
        assert!(!r.holds);
        assert_eq!(r.witnesses[0].path, vec![0, 1]);
        // broom rooted at the handle end: rise found at the far fork
        let broom = tree_from_root_children(&[BranchShape::new(vec![
            BranchShape::leaf(),
            BranchShape::leaf(),
            BranchShape::leaf(),
        ])])
        .unwrap();
        let r = check_non_increasing_degrees(&broom);
        assert!(!r.holds);
        assert_eq!(r.witnesses[0].detail.contains("1 to 4"), true);
    }

    #[test]
    fn leaf_attachment_bound() {
        let star5 = tree_from_root_children(&vec![BranchShape::leaf(); 5]).unwrap();
        assert!(!check_leaf_attachment(&star5).holds);
        let star3 = tree_from_root_children(&vec![BranchShape::leaf(); 3]).unwrap();
        assert!(check_leaf_attachment(&star3).holds);
        // single edge: both endpoints are leaves of degree-1 supports
        let edge = tree_from_root_children(&[BranchShape::leaf()]).unwrap();
        assert!(check_leaf_attachment(&edge).holds);
    }

    #[test]
    fn max_degree_bound() {
        let star7 = tree_from_root_children(&vec![BranchShape::leaf(); 7]).unwrap();
        assert!(!check_max_degree(&star7, 6).holds);
        assert!(check_max_degree(&star7, 7).holds);
    }

    #[test]
    fn main_branch_counting() {
        // root children: a chain of 3 (regular: single child) and a cherry
        let t = tree_from_root_children(&[
            chain_shape(3),
            BranchShape::new(vec![BranchShape::leaf(), BranchShape::leaf()]),
        ])
        .unwrap();
        let r = check_main_branch_regularity(&t, &[1, 2, 3]);
        assert_eq!(r.branch_orders, vec![3, 3]);
        assert_eq!(r.irregular_shape, 0);
        assert_eq!(r.unlisted_order, 0);
        assert!(r.holds);
        // order 4 branch (1,2) is irregular and unlisted against {1,2,3}
        let t = tree_from_root_children(&[BranchShape::new(vec![
            BranchShape::leaf(),
            chain_shape(2),
        ])])
        .unwrap();
        let r = check_main_branch_regularity(&t, &[1, 2, 3]);
        assert_eq!(r.irregular_shape, 1);
        assert_eq!(r.unlisted_order, 1);
        assert!(r.holds); // a single failure is tolerated
    }

    #[test]
    fn regular_branch_orders_prefix() {
        let got = regular_orders(RegularKind::Branch, 22).unwrap();
        assert_eq!(got, vec![1, 2, 3, 5, 7, 10, 11, 16, 22]);
    }

    #[test]
    fn regular_tree_orders_prefix() {
        let got = regular_orders(RegularKind::Tree, 21).unwrap();
        assert_eq!(got, vec![1, 2, 3, 5, 7, 9, 16, 21]);
    }
}
