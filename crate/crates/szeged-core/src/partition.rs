//! Integer partition enumeration and exact partition minimization.

use crate::num::{self, Int};
use crate::error::Result;

/// Calls `f` with every partition of `s` into non-increasing positive parts.
pub fn for_each_partition(s: usize, mut f: impl FnMut(&[usize])) {
    let mut parts = Vec::new();
    rec(s, s, &mut parts, &mut f);
    fn rec(rem: usize, max: usize, parts: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if rem == 0 {
            f(parts);
            return;
        }
        for next in (1..=rem.min(max)).rev() {
            parts.push(next);
            rec(rem - next, next, parts, f);
            parts.pop();
        }
    }
}

/// Calls `f` with every partition of `s` into exactly `k` non-increasing parts.
pub fn for_each_partition_k(s: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 || k > s {
        return;
    }
    let mut parts = Vec::with_capacity(k);
    rec(s, s, k, &mut parts, &mut f);
    fn rec(rem: usize, max: usize, left: usize, parts: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if left == 1 {
            if rem <= max {
                parts.push(rem);
                f(parts);
                parts.pop();
            }
            return;
        }
        // each of the remaining `left` parts is at least 1
        let hi = (rem - (left - 1)).min(max);
        for next in (1..=hi).rev() {
            if next * left < rem {
                break; // non-increasing parts can no longer reach `rem`
            }
            parts.push(next);
            rec(rem - next, next, left - 1, parts, f);
            parts.pop();
        }
    }
}

/// Minimum of `Σ score(part)` over multisets of exactly `k` positive parts
/// summing to `s`, together with every argmin multiset (parts ascending).
///
/// The score must be non-negative; partial sums plus a prefix-minimum bound
/// on the remaining parts give an exact branch-and-bound cut. A `seed` value
/// (an upper bound already known to be achievable, or not) tightens the cut
/// from the start; `None` is returned when no multiset reaches the seed.
pub fn partition_min<T: Int>(
    s: usize,
    k: usize,
    score: impl Fn(usize) -> Result<T>,
    seed: Option<T>,
) -> Result<Option<(T, Vec<Vec<usize>>)>> {
    if k == 0 || k > s {
        return Ok(None);
    }
    let mut table = Vec::with_capacity(s);
    for x in 1..=s {
        table.push(score(x)?);
    }
    // prefix_min[i] = min score over parts 1..=i+1
    let mut prefix_min = table.clone();
    for i in 1..prefix_min.len() {
        prefix_min[i] = prefix_min[i].min(prefix_min[i - 1]);
    }
    let mut best: Option<T> = seed;
    let mut argmins: Vec<Vec<usize>> = Vec::new();
    let mut parts: Vec<usize> = Vec::with_capacity(k);
    rec(s, s, k, T::zero(), &table, &prefix_min, &mut best, &mut argmins, &mut parts)?;
    #[allow(clippy::too_many_arguments)]
    fn rec<T: Int>(
        rem: usize,
        max: usize,
        left: usize,
        partial: T,
        table: &[T],
        prefix_min: &[T],
        best: &mut Option<T>,
        argmins: &mut Vec<Vec<usize>>,
        parts: &mut Vec<usize>,
    ) -> Result<()> {
        if left == 1 {
            if rem > max {
                return Ok(());
            }
            let total = num::add(partial, table[rem - 1])?;
            record(total, best, argmins, || {
                let mut p = parts.clone();
                p.push(rem);
                p.reverse();
                p
            });
            return Ok(());
        }
        let hi = (rem - (left - 1)).min(max);
        for next in (1..=hi).rev() {
            if next * left < rem {
                break;
            }
            let sub = num::add(partial, table[next - 1])?;
            if let Some(b) = best {
                // the left-1 remaining parts are each at most next, so each
                // costs at least the prefix minimum up to next
                let floor = prefix_min[next.min(rem - next - (left - 2)) - 1];
                let lb = num::add(sub, num::mul(T::from_count(left - 1)?, floor)?)?;
                if lb > *b {
                    continue;
                }
            }
            parts.push(next);
            rec(rem - next, next, left - 1, sub, table, prefix_min, best, argmins, parts)?;
            parts.pop();
        }
        Ok(())
    }
    fn record<T: Int>(
        total: T,
        best: &mut Option<T>,
        argmins: &mut Vec<Vec<usize>>,
        make: impl FnOnce() -> Vec<usize>,
    ) {
        match best {
            Some(b) if total > *b => {}
            Some(b) if total == *b => argmins.push(make()),
            _ => {
                *best = Some(total);
                argmins.clear();
                argmins.push(make());
            }
        }
    }
    if argmins.is_empty() {
        return Ok(None);
    }
    argmins.sort();
    argmins.dedup();
    Ok(best.map(|b| (b, argmins)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_partitions(s: usize) -> usize {
        let mut c = 0;
        for_each_partition(s, |_| c += 1);
        c
    }

    #[test]
    fn partition_counts() {
        // p(1..10) = 1, 2, 3, 5, 7, 11, 15, 22, 30, 42
        let expect = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (s, &e) in (1..=10).zip(expect.iter()) {
            assert_eq!(count_partitions(s), e);
        }
    }

    #[test]
    fn exact_k_partitions_are_consistent() {
        for s in 1..=12 {
            let mut total = 0;
            for k in 1..=s {
                for_each_partition_k(s, k, |p| {
                    assert_eq!(p.len(), k);
                    assert_eq!(p.iter().sum::<usize>(), s);
                    assert!(p.windows(2).all(|w| w[0] >= w[1]));
                    total += 1;
                });
            }
            assert_eq!(total, count_partitions(s));
        }
    }

    #[test]
    fn forced_and_convex_minima() {
        let (v, args) = partition_min::<i64>(3, 3, |x| Ok(x as i64), None).unwrap().unwrap();
        assert_eq!(v, 3);
        assert_eq!(args, vec![vec![1, 1, 1]]);
        let (v, args) = partition_min::<i64>(4, 2, |x| Ok((x * x) as i64), None).unwrap().unwrap();
        assert_eq!(v, 8);
        assert_eq!(args, vec![vec![2, 2]]);
    }

    #[test]
    fn seeding_keeps_ties_and_prunes_losers() {
        let score = |x: usize| Ok::<i64, _>((x * x) as i64);
        // seed at the true optimum: ties still collected
        let got = partition_min::<i64>(4, 2, score, Some(8)).unwrap().unwrap();
        assert_eq!(got, (8, vec![vec![2, 2]]));
        // unreachable seed: no candidates
        assert!(partition_min::<i64>(4, 2, score, Some(7)).unwrap().is_none());
        // loose seed behaves like no seed
        let got = partition_min::<i64>(4, 2, score, Some(100)).unwrap().unwrap();
        assert_eq!(got.0, 8);
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        // arbitrary deterministic score
        let score = |x: usize| Ok::<i64, _>(((x * 37) % 11) as i64 + (x as i64) * 2);
        for s in 1..=20 {
            for k in 1..=s {
                let got = partition_min::<i64>(s, k, score, None).unwrap().unwrap();
                let mut best = i64::MAX;
                let mut args: Vec<Vec<usize>> = Vec::new();
                for_each_partition_k(s, k, |p| {
                    let v: i64 = p.iter().map(|&x| score(x).unwrap()).sum();
                    if v < best {
                        best = v;
                        args.clear();
                    }
                    if v == best {
                        let mut q = p.to_vec();
                        q.sort_unstable();
                        args.push(q);
                    }
                });
                args.sort();
                args.dedup();
                assert_eq!(got.0, best);
                assert_eq!(got.1, args);
            }
        }
    }
}
