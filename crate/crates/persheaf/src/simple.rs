//! Absolute simplicity via the dimension-count criterion: a nonzero
//! representation with total dimension `m` is absolutely simple iff the
//! unital algebra generated by its face projections and block-embedded
//! transport maps inside the `m x m` matrices has dimension `m^2`. The
//! algebra is computed exactly: linear-span closure under left
//! multiplication by generators, tracked with an echelon basis.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rep::{mm, DoubleRep};
use crate::{q, Rat, RatMatrix};

/// Outcome of the simplicity test, with the computed dimensions as the
/// certificate: `simple` iff `algebra_dim == total_dim^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityCertificate {
    pub simple: bool,
    pub total_dim: usize,
    pub algebra_dim: usize,
}

pub fn is_absolutely_simple(rep: &DoubleRep) -> Result<SimplicityCertificate> {
    if rep.is_zero() {
        return Err(Error::Domain(
            "simplicity is undefined for the zero representation".into(),
        ));
    }
    let p = rep.poset().clone();
    let nf = p.len();
    let mut offset = vec![0usize; nf + 1];
    for k in 0..nf {
        offset[k + 1] = offset[k] + rep.dim(k);
    }
    let m = offset[nf];

    let mut generators: Vec<RatMatrix> = Vec::new();
    for (k, &off) in offset[..nf].iter().enumerate() {
        let mut e = Matrix::zero(m, m);
        for i in 0..rep.dim(k) {
            e.set(off + i, off + i, q(1));
        }
        generators.push(e);
    }
    for (lo, hi) in p.strict_pairs() {
        generators.push(embed_block(m, offset[hi], offset[lo], &rep.gamma(lo, hi)));
        generators.push(embed_block(m, offset[lo], offset[hi], &rep.delta(lo, hi)));
    }

    let mut echelon = Echelon::new(m * m);
    let mut queue: VecDeque<RatMatrix> = VecDeque::new();
    for seed in std::iter::once(Matrix::identity(m)).chain(generators.iter().cloned()) {
        if echelon.insert(flatten(&seed)) {
            queue.push_back(seed);
        }
    }
    while let Some(b) = queue.pop_front() {
        for g in &generators {
            let prod = mm(g, &b);
            if prod.is_zero_matrix() {
                continue;
            }
            if echelon.insert(flatten(&prod)) {
                queue.push_back(prod);
            }
        }
    }
    let algebra_dim = echelon.len();
    Ok(SimplicityCertificate { simple: algebra_dim == m * m, total_dim: m, algebra_dim })
}

fn embed_block(m: usize, row0: usize, col0: usize, block: &RatMatrix) -> RatMatrix {
    let mut out = Matrix::zero(m, m);
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            out.set(row0 + r, col0 + c, block.at(r, c).clone());
        }
    }
    out
}

fn flatten(mat: &RatMatrix) -> Vec<Rat> {
    let mut v = Vec::with_capacity(mat.rows() * mat.cols());
    for r in 0..mat.rows() {
        v.extend(mat.row(r).iter().cloned());
    }
    v
}

/// Incremental row echelon over the rationals: each inserted vector is
/// reduced against the stored rows (normalized to leading 1); a vector that
/// survives nonzero extends the span.
struct Echelon {
    width: usize,
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    fn new(width: usize) -> Echelon {
        Echelon { width, rows: Vec::new() }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let zero = q(0);
        for (pivot, row) in &self.rows {
            if v[*pivot] != zero {
                let factor = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= factor.clone() * y;
                }
            }
        }
        let pivot = match v.iter().position(|x| *x != zero) {
            Some(k) => k,
            None => return false,
        };
        let lead = v[pivot].clone();
        for x in v.iter_mut() {
            *x /= lead.clone();
        }
        self.rows.push((pivot, v));
        true
    }
}
