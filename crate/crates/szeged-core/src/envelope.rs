//! Exact piecewise-linear lower envelopes of affine branch costs.
//!
//! Every candidate structure of a given branch size costs `a·n + b` for
//! exact integers `a, b`; the minimum over candidates, as a function of the
//! host-tree order `n`, is a piecewise-linear lower envelope with rational
//! breakpoints. No floating point is used anywhere here.

use num_rational::Ratio;

use crate::branch::AffineCost;
use crate::error::{Error, Result};
use crate::num::Int;
use crate::partition::for_each_partition;

/// Child-size multiset, sorted ascending.
pub type ChildSizes = Vec<usize>;

/// One envelope piece: `cost` holds on `[start, next piece start)`, the last
/// piece extends to infinity. `tags` lists the argmin child-size multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece<T: Int> {
    pub start: Ratio<T>,
    pub cost: AffineCost<T>,
    pub tags: Vec<ChildSizes>,
}

/// Lower envelope over `[domain_start, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear<T: Int> {
    pieces: Vec<Piece<T>>,
}

impl<T: Int> PiecewiseLinear<T> {
    pub fn from_affine(start: Ratio<T>, cost: AffineCost<T>, tags: Vec<ChildSizes>) -> Self {
        PiecewiseLinear { pieces: vec![Piece { start, cost, tags }] }
    }

    pub fn pieces(&self) -> &[Piece<T>] {
        &self.pieces
    }

    pub fn domain_start(&self) -> Ratio<T> {
        self.pieces[0].start.clone()
    }

    pub fn last_piece(&self) -> &Piece<T> {
        self.pieces.last().expect("envelope is never empty")
    }

    fn piece_at(&self, x: &Ratio<T>) -> Result<&Piece<T>> {
        if *x < self.pieces[0].start {
            return Err(Error::Domain(format!(
                "evaluation point below envelope domain start {}",
                self.pieces[0].start
            )));
        }
        let idx = self.pieces.partition_point(|p| p.start <= *x);
        Ok(&self.pieces[idx - 1])
    }

    /// Exact value at an integer order.
    pub fn eval_int(&self, n: T) -> Result<T> {
        let piece = self.piece_at(&Ratio::from_integer(n))?;
        piece.cost.eval(n)
    }

    /// Argmin child-size multisets at an integer order.
    pub fn tags_at(&self, n: T) -> Result<&[ChildSizes]> {
        Ok(&self.piece_at(&Ratio::from_integer(n))?.tags)
    }

    /// Drops everything below `start` (which must be >= the current start).
    fn restrict(&self, start: &Ratio<T>) -> Self {
        let idx = self.pieces.partition_point(|p| p.start <= *start);
        let mut pieces: Vec<Piece<T>> = self.pieces[idx - 1..].to_vec();
        if pieces[0].start < *start {
            pieces[0].start = start.clone();
        }
        PiecewiseLinear { pieces }
    }

    /// Pointwise sum of values; tags are dropped (the caller re-tags).
    fn sum_restricted(&self, other: &Self, start: &Ratio<T>) -> Result<Self> {
        let a = self.restrict(start);
        let b = other.restrict(start);
        let mut pieces = Vec::new();
        let (mut ia, mut ib) = (0usize, 0usize);
        let mut x = start.clone();
        loop {
            while ia + 1 < a.pieces.len() && a.pieces[ia + 1].start <= x {
                ia += 1;
            }
            while ib + 1 < b.pieces.len() && b.pieces[ib + 1].start <= x {
                ib += 1;
            }
            let cost = a.pieces[ia].cost.add(&b.pieces[ib].cost)?;
            pieces.push(Piece { start: x.clone(), cost, tags: Vec::new() });
            let next_a = a.pieces.get(ia + 1).map(|p| p.start.clone());
            let next_b = b.pieces.get(ib + 1).map(|p| p.start.clone());
            x = match (next_a, next_b) {
                (Some(na), Some(nb)) => na.min(nb),
                (Some(na), None) => na,
                (None, Some(nb)) => nb,
                (None, None) => break,
            };
        }
        Ok(PiecewiseLinear { pieces })
    }

    fn push_piece(out: &mut Vec<Piece<T>>, piece: Piece<T>) {
        if let Some(last) = out.last_mut() {
            if last.cost == piece.cost && last.tags == piece.tags {
                return; // extend the previous piece
            }
            if last.start == piece.start {
                *last = piece;
                return;
            }
        }
        out.push(piece);
    }

    /// Lower envelope of `self` and `other` (same domain start). Where the
    /// two agree exactly, tags are unioned.
    pub fn min_merge(&self, other: &Self) -> Result<Self> {
        debug_assert_eq!(self.pieces[0].start, other.pieces[0].start);
        let mut out: Vec<Piece<T>> = Vec::new();
        let (mut ia, mut ib) = (0usize, 0usize);
        let mut x = self.pieces[0].start.clone();
        loop {
            while ia + 1 < self.pieces.len() && self.pieces[ia + 1].start <= x {
                ia += 1;
            }
            while ib + 1 < other.pieces.len() && other.pieces[ib + 1].start <= x {
                ib += 1;
            }
            let pa = &self.pieces[ia];
            let pb = &other.pieces[ib];
            let next_a = self.pieces.get(ia + 1).map(|p| p.start.clone());
            let next_b = other.pieces.get(ib + 1).map(|p| p.start.clone());
            let x_end = match (&next_a, &next_b) {
                (Some(na), Some(nb)) => Some(na.clone().min(nb.clone())),
                (Some(na), None) => Some(na.clone()),
                (None, Some(nb)) => Some(nb.clone()),
                (None, None) => None,
            };

            Self::emit_min_segment(&mut out, &x, x_end.as_ref(), pa, pb)?;

            x = match x_end {
                Some(v) => v,
                None => break,
            };
        }
        Ok(PiecewiseLinear { pieces: out })
    }

    /// Emits the minimum of two affine pieces over `[x, x_end)`.
    fn emit_min_segment(
        out: &mut Vec<Piece<T>>,
        x: &Ratio<T>,
        x_end: Option<&Ratio<T>>,
        pa: &Piece<T>,
        pb: &Piece<T>,
    ) -> Result<()> {
        let fa = &pa.cost;
        let fb = &pb.cost;
        if fa == fb {
            let mut tags = pa.tags.clone();
            tags.extend(pb.tags.iter().cloned());
            Self::push_piece(out, Piece { start: x.clone(), cost: *fa, tags });
            return Ok(());
        }
        let eval = |f: &AffineCost<T>, at: &Ratio<T>| -> Ratio<T> {
            Ratio::from_integer(f.slope) * at.clone() + Ratio::from_integer(f.intercept)
        };
        if fa.slope == fb.slope {
            let (win, _) = if fa.intercept < fb.intercept { (pa, pb) } else { (pb, pa) };
            Self::push_piece(out, Piece { start: x.clone(), cost: win.cost, tags: win.tags.clone() });
            return Ok(());
        }
        // distinct slopes: single crossing
        let cross = Ratio::from_integer(fb.intercept - fa.intercept)
            / Ratio::from_integer(fa.slope - fb.slope);
        // lower on the left of the crossing is the one with larger slope
        let (left, right) = if fa.slope > fb.slope { (pa, pb) } else { (pb, pa) };
        let in_range =
            cross > *x && x_end.map_or(true, |e| cross < *e);
        if !in_range {
            // one piece dominates the whole interval; decide at x (break
            // value ties toward the eventual winner, the smaller slope)
            let va = eval(fa, x);
            let vb = eval(fb, x);
            let win = match va.cmp(&vb) {
                std::cmp::Ordering::Less => pa,
                std::cmp::Ordering::Greater => pb,
                std::cmp::Ordering::Equal => right,
            };
            Self::push_piece(out, Piece { start: x.clone(), cost: win.cost, tags: win.tags.clone() });
        } else {
            Self::push_piece(out, Piece { start: x.clone(), cost: left.cost, tags: left.tags.clone() });
            Self::push_piece(out, Piece { start: cross, cost: right.cost, tags: right.tags.clone() });
        }
        Ok(())
    }

    fn finalize_tags(&mut self) {
        for p in &mut self.pieces {
            p.tags.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
            p.tags.dedup();
        }
        // re-merge pieces that became identical after tag cleanup
        let mut merged: Vec<Piece<T>> = Vec::with_capacity(self.pieces.len());
        for p in self.pieces.drain(..) {
            Self::push_piece(&mut merged, p);
        }
        self.pieces = merged;
    }
}

/// Builds the exact cost envelope of the minimal ending branch of every size
/// `1..=max_size`, as functions of the total tree order. The envelope of
/// size m starts at n = m; from n = m + 1 it equals the fixed-n dynamic
/// program minimum.
pub fn branch_envelopes<T: Int>(max_size: usize) -> Result<Vec<PiecewiseLinear<T>>> {
    if max_size < 1 {
        return Err(Error::Domain("max_size must be at least 1".into()));
    }
    let mut env: Vec<PiecewiseLinear<T>> = Vec::with_capacity(max_size + 1);
    // index 0 unused
    env.push(PiecewiseLinear::from_affine(
        Ratio::from_integer(T::zero()),
        AffineCost::zero(),
        Vec::new(),
    ));
    env.push(PiecewiseLinear::from_affine(
        Ratio::from_integer(T::one()),
        AffineCost::new(T::one(), -T::one()),
        vec![Vec::new()],
    ));
    for m in 2..=max_size {
        let start = Ratio::from_integer(T::from_count(m)?);
        let mut acc: Option<PiecewiseLinear<T>> = None;
        let mut err: Option<Error> = None;
        for_each_partition(m - 1, |parts| {
            if err.is_some() {
                return;
            }
            match candidate_envelope(&env, m, parts, &start) {
                Ok(cand) => {
                    acc = Some(match acc.take() {
                        Some(a) => match a.min_merge(&cand) {
                            Ok(v) => v,
                            Err(e) => {
                                err = Some(e);
                                return;
                            }
                        },
                        None => cand,
                    });
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let mut e = acc.expect("at least one partition exists");
        e.finalize_tags();
        env.push(e);
    }
    Ok(env)
}

/// Cost envelope of the best branch of size `m` whose root children have the
/// given sizes (children themselves optimal for their sizes).
fn candidate_envelope<T: Int>(
    env: &[PiecewiseLinear<T>],
    m: usize,
    parts: &[usize],
    start: &Ratio<T>,
) -> Result<PiecewiseLinear<T>> {
    let d = T::from_count(parts.len() + 1)?;
    let mut base = AffineCost::product_term(d, T::from_count(m)?)?;
    for &p in parts {
        base = base.add(&AffineCost::product_term(d, T::from_count(p)?)?)?;
    }
    let mut tag: ChildSizes = parts.to_vec();
    tag.sort_unstable();
    let mut acc = PiecewiseLinear::from_affine(start.clone(), base, Vec::new());
    for &p in parts {
        acc = acc.sum_restricted(&env[p], start)?;
    }
    for piece in &mut acc.pieces {
        piece.tags = vec![tag.clone()];
    }
    Ok(acc)
}
