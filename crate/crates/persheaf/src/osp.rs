//! Ordered set partitions of `{1, ..., m}`.
//!
//! These are in bijection with the faces of the braid arrangement on `m`
//! letters: block order records which coordinates are smaller, co-blocked
//! letters have equal coordinates. The module is a purely combinatorial
//! oracle: no linear programming is involved, so it can cross-check the
//! geometric face enumeration.

use crate::arrangement::{Sign, SignVector};
use crate::{q, qq, Rat};

/// Ordered set partition: blocks listed from smallest coordinate value to
/// largest, elements 1-based and sorted within each block.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderedSetPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    /// Every ordered set partition of `{1, ..., m}`, by recursive insertion:
    /// the next element either joins an existing block or becomes a new
    /// singleton block in any gap.
    pub fn enumerate(m: usize) -> Vec<OrderedSetPartition> {
        assert!(m >= 1);
        let mut all = vec![OrderedSetPartition { blocks: vec![vec![1]] }];
        for e in 2..=m {
            let mut next = Vec::new();
            for p in &all {
                let k = p.blocks.len();
                for b in 0..k {
                    let mut q = p.clone();
                    q.blocks[b].push(e);
                    q.blocks[b].sort_unstable();
                    next.push(q);
                }
                for gap in 0..=k {
                    let mut q = p.clone();
                    q.blocks.insert(gap, vec![e]);
                    next.push(q);
                }
            }
            all = next;
        }
        all
    }

    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    /// Face dimension: one less than the number of blocks.
    pub fn dim(&self) -> usize {
        self.blocks.len() - 1
    }

    fn block_of(&self, element: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&element).is_ok())
            .expect("element must belong to a block")
    }

    /// Sign vector over the braid hyperplanes `x_i = x_j`, `i < j`, in
    /// lexicographic pair order: zero when co-blocked, plus when `i` sits in
    /// a later (larger-value) block than `j`.
    pub fn sign_vector(&self) -> SignVector {
        let m = self.ground_size();
        let mut signs = Vec::with_capacity(m * (m - 1) / 2);
        for i in 1..=m {
            for j in i + 1..=m {
                let (bi, bj) = (self.block_of(i), self.block_of(j));
                signs.push(match bi.cmp(&bj) {
                    std::cmp::Ordering::Equal => Sign::Zero,
                    std::cmp::Ordering::Greater => Sign::Plus,
                    std::cmp::Ordering::Less => Sign::Minus,
                });
            }
        }
        SignVector(signs)
    }

    /// Exact zero-sum witness: block `t` (1-based) gets value `t` minus the
    /// weighted mean, so distinct blocks get distinct increasing values.
    pub fn witness(&self) -> Vec<Rat> {
        let m = self.ground_size();
        let weighted: i64 = self
            .blocks
            .iter()
            .enumerate()
            .map(|(t, b)| ((t + 1) * b.len()) as i64)
            .sum();
        let mean = qq(weighted, m as i64);
        let mut point = vec![q(0); m];
        for (t, block) in self.blocks.iter().enumerate() {
            for &e in block {
                point[e - 1] = q((t + 1) as i64) - mean.clone();
            }
        }
        point
    }

    /// Groups coordinates of an exact point into an ordered set partition.
    pub fn from_point(point: &[Rat]) -> OrderedSetPartition {
        let mut order: Vec<usize> = (1..=point.len()).collect();
        order.sort_by(|&a, &b| point[a - 1].cmp(&point[b - 1]));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for e in order {
            match blocks.last_mut() {
                Some(last) if point[last[0] - 1] == point[e - 1] => last.push(e),
                _ => blocks.push(vec![e]),
            }
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        OrderedSetPartition { blocks }
    }

    /// Closure order, combinatorially: `self` is below `finer` iff `self` is
    /// obtained from `finer` by merging runs of consecutive blocks.
    pub fn below(&self, finer: &OrderedSetPartition) -> bool {
        let mut i = 0;
        for target in &self.blocks {
            let mut acc: Vec<usize> = Vec::new();
            while acc.len() < target.len() && i < finer.blocks.len() {
                acc.extend(finer.blocks[i].iter().copied());
                i += 1;
            }
            acc.sort_unstable();
            if &acc != target {
                return false;
            }
        }
        i == finer.blocks.len()
    }
}
