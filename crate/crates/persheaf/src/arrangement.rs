//! Central hyperplane arrangements inside a linear subspace, and sign vectors.
//!
//! An [`Arrangement`] is a list of labeled hyperplane functionals together
//! with homogeneous rows cutting out the subspace the arrangement lives in.
//! Arrangements must be essential: the hyperplane functionals must cut the
//! subspace down to the origin.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::LinearSystem;
use crate::scalar::signum;
use crate::{q, qq, Rat};

/// Sign of a hyperplane functional on a point. The derived order
/// `Zero < Minus < Plus` is the canonical one used everywhere sign vectors
/// are sorted.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Zero,
    Minus,
    Plus,
}

impl Sign {
    pub fn of(x: &Rat) -> Sign {
        match signum(x) {
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Plus,
            std::cmp::Ordering::Less => Sign::Minus,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// Sign vector over an arrangement's hyperplanes, in hyperplane order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise closure order: `self <= other` iff every entry of `self`
    /// is zero or equals the corresponding entry of `other`.
    pub fn below(&self, other: &SignVector) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| *a == Sign::Zero || a == b)
    }

    /// Hyperplane positions where the entry is zero.
    pub fn zero_support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.0[k] == Sign::Zero).collect()
    }

    pub fn has_zero(&self) -> bool {
        self.0.contains(&Sign::Zero)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Sign::Zero),
                '-' => Ok(Sign::Minus),
                '+' => Ok(Sign::Plus),
                other => Err(Error::Malformed(format!(
                    "invalid sign character {other:?} (expected one of \"+-0\")"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hyperplane {
    pub label: String,
    pub normal: Vec<Rat>,
}

/// Essential central arrangement: hyperplanes `normal . x = 0` restricted to
/// the subspace `{x : row . x = 0 for every subspace row}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrangement {
    pub ambient_dim: usize,
    pub subspace: Vec<Vec<Rat>>,
    pub hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(
        ambient_dim: usize,
        subspace: Vec<Vec<Rat>>,
        hyperplanes: Vec<Hyperplane>,
    ) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::Domain("ambient dimension must be positive".into()));
        }
        for row in &subspace {
            if row.len() != ambient_dim {
                return Err(Error::Malformed("ragged subspace row".into()));
            }
        }
        for h in &hyperplanes {
            if h.normal.len() != ambient_dim {
                return Err(Error::Malformed(format!("ragged normal for {}", h.label)));
            }
            if h.normal.iter().all(|v| v == &q(0)) {
                return Err(Error::Malformed(format!("zero normal for {}", h.label)));
            }
        }
        let mut rows: Vec<Vec<Rat>> = subspace.clone();
        rows.extend(hyperplanes.iter().map(|h| h.normal.clone()));
        if linalg::rank(&rows)? != ambient_dim {
            return Err(Error::Domain(
                "arrangement is not essential: hyperplanes do not cut the subspace to a point"
                    .into(),
            ));
        }
        Ok(Arrangement { ambient_dim, subspace, hyperplanes })
    }

    /// Braid arrangement of the symmetric group on `n + 1` letters: the
    /// hyperplanes `x_i = x_j` for `1 <= i < j <= n+1` in lexicographic order
    /// of `(i, j)`, inside the zero-sum subspace of dimension `n`.
    pub fn braid(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("braid arrangement requires n >= 1".into()));
        }
        let m = n + 1;
        let mut hyperplanes = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let mut normal = vec![q(0); m];
                normal[i] = q(1);
                normal[j] = q(-1);
                hyperplanes.push(Hyperplane {
                    label: format!("L({},{})", i + 1, j + 1),
                    normal,
                });
            }
        }
        Arrangement::new(m, vec![vec![q(1); m]], hyperplanes)
    }

    /// Full-dimensional chart of [`Arrangement::braid`]`(n)` on `R^n`: the
    /// hyperplane for the pair `(i, j)` pulls back to `Y_i - Y_j` when
    /// `j <= n` and to `2 Y_i + sum of the other coordinates` when
    /// `j = n + 1`. Hyperplane order matches the braid order positionally.
    pub fn rn_chart(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("chart arrangement requires n >= 1".into()));
        }
        let mut hyperplanes = Vec::new();
        for i in 0..n + 1 {
            for j in i + 1..n + 1 {
                if j < n {
                    let mut normal = vec![q(0); n];
                    normal[i] = q(1);
                    normal[j] = q(-1);
                    hyperplanes.push(Hyperplane {
                        label: format!("A({},{})", i + 1, j + 1),
                        normal,
                    });
                } else {
                    let mut normal = vec![q(1); n];
                    normal[i] = q(2);
                    hyperplanes.push(Hyperplane { label: format!("B({})", i + 1), normal });
                }
            }
        }
        Arrangement::new(n, Vec::new(), hyperplanes)
    }

    /// When this arrangement is structurally `braid(n)` (same subspace rows,
    /// same normals in the same order, same labels), returns `n`.
    pub fn braid_rank(&self) -> Option<usize> {
        if self.ambient_dim < 2 {
            return None;
        }
        let n = self.ambient_dim - 1;
        let reference = Arrangement::braid(n).ok()?;
        (self == &reference).then_some(n)
    }

    pub fn dim_subspace(&self) -> usize {
        self.ambient_dim - linalg::rank(&self.subspace).expect("validated rows")
    }

    pub fn subspace_contains(&self, point: &[Rat]) -> bool {
        point.len() == self.ambient_dim
            && self.subspace.iter().all(|row| linalg::dot(row, point) == q(0))
    }

    /// Sign vector of a point of the subspace.
    pub fn sign_vector(&self, point: &[Rat]) -> Result<SignVector> {
        if point.len() != self.ambient_dim {
            return Err(Error::Malformed(format!(
                "point has length {}, ambient dimension is {}",
                point.len(),
                self.ambient_dim
            )));
        }
        if !self.subspace_contains(point) {
            return Err(Error::Domain(
                "point does not lie in the arrangement's subspace".into(),
            ));
        }
        Ok(SignVector(
            self.hyperplanes
                .iter()
                .map(|h| Sign::of(&linalg::dot(&h.normal, point)))
                .collect(),
        ))
    }

    /// Feasibility system for the relatively open cone of a sign vector,
    /// restricted to the first `upto` hyperplanes (prefix systems drive the
    /// face enumeration). All equality right-hand sides are zero, so the
    /// strict encoding of [`LinearSystem`] is sound here.
    pub fn cone_system(&self, signs: &[Sign], upto: usize) -> LinearSystem<Rat> {
        debug_assert!(upto <= self.hyperplanes.len() && signs.len() >= upto);
        let mut sys = LinearSystem::new(self.ambient_dim);
        for row in &self.subspace {
            sys.equalities.push((row.clone(), q(0)));
        }
        for (h, &s) in self.hyperplanes.iter().take(upto).zip(signs) {
            match s {
                Sign::Zero => sys.equalities.push((h.normal.clone(), q(0))),
                Sign::Plus => sys.strict_positive.push(h.normal.clone()),
                Sign::Minus => {
                    sys.strict_positive.push(h.normal.iter().map(|v| -v.clone()).collect())
                }
            }
        }
        sys
    }

    /// Centroid-free exact scaling helper: returns `point * s`.
    pub fn scale_point(point: &[Rat], num: i64, den: i64) -> Vec<Rat> {
        let s = qq(num, den);
        point.iter().map(|v| v.clone() * s.clone()).collect()
    }
}
