//! Double representations of a face poset over exact rationals.
//!
//! A representation attaches a vector space `E_C` to every face `C`, a map
//! `gamma[(lo, hi)]: E_lo -> E_hi` and a map `delta[(lo, hi)]: E_hi -> E_lo`
//! to every strictly comparable pair `lo < hi`. Maps on equal faces are the
//! identity and are never stored. Matrices act on column vectors, so a map
//! `E_a -> E_b` is a `dims[b] x dims[a]` matrix and composition is matrix
//! multiplication in the usual order.
//!
//! Shape and completeness constraints are enforced at construction; the
//! algebraic relations (composition, monotonicity, transitivity,
//! invertibility) are checked separately and report violations rather than
//! failing construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poset::FacePoset;
use crate::RatMatrix;

/// Matrix product with shapes already validated by construction.
pub(crate) fn mm(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    a.mul(b).expect("map shapes were validated at construction")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleRep {
    poset: Arc<FacePoset>,
    dims: Vec<usize>,
    gamma: BTreeMap<(usize, usize), RatMatrix>,
    delta: BTreeMap<(usize, usize), RatMatrix>,
}

impl DoubleRep {
    /// Builds a representation from maps on every strictly comparable pair.
    /// Keys and shapes are checked exhaustively; algebraic relations are not.
    pub fn new(
        poset: Arc<FacePoset>,
        dims: Vec<usize>,
        gamma: BTreeMap<(usize, usize), RatMatrix>,
        delta: BTreeMap<(usize, usize), RatMatrix>,
    ) -> Result<DoubleRep> {
        if dims.len() != poset.len() {
            return Err(Error::Malformed(format!(
                "{} dimensions given for {} faces",
                dims.len(),
                poset.len()
            )));
        }
        let pairs = poset.strict_pairs();
        for &(lo, hi) in &pairs {
            let pair_name = || {
                format!("({}, {})", poset.face(lo).signs, poset.face(hi).signs)
            };
            let g = gamma.get(&(lo, hi)).ok_or_else(|| {
                Error::Malformed(format!("missing gamma on pair {}", pair_name()))
            })?;
            if (g.rows(), g.cols()) != (dims[hi], dims[lo]) {
                return Err(Error::Malformed(format!(
                    "gamma on pair {} has shape {}x{}, expected {}x{}",
                    pair_name(),
                    g.rows(),
                    g.cols(),
                    dims[hi],
                    dims[lo]
                )));
            }
            let d = delta.get(&(lo, hi)).ok_or_else(|| {
                Error::Malformed(format!("missing delta on pair {}", pair_name()))
            })?;
            if (d.rows(), d.cols()) != (dims[lo], dims[hi]) {
                return Err(Error::Malformed(format!(
                    "delta on pair {} has shape {}x{}, expected {}x{}",
                    pair_name(),
                    d.rows(),
                    d.cols(),
                    dims[lo],
                    dims[hi]
                )));
            }
        }
        if gamma.len() != pairs.len() || delta.len() != pairs.len() {
            return Err(Error::Malformed(
                "maps given on keys that are not strictly comparable pairs".into(),
            ));
        }
        Ok(DoubleRep { poset, dims, gamma, delta })
    }

    /// Builds a representation from maps on the Hasse edges only, composing
    /// along a canonical chain (always through the lowest-index cover) to
    /// fill in all comparable pairs. If the edge maps are path-dependent the
    /// result is still well formed; the composition check will then report
    /// the disagreeing chain.
    pub fn from_edge_maps(
        poset: Arc<FacePoset>,
        dims: Vec<usize>,
        edge_gamma: BTreeMap<(usize, usize), RatMatrix>,
        edge_delta: BTreeMap<(usize, usize), RatMatrix>,
    ) -> Result<DoubleRep> {
        for keys in [&edge_gamma, &edge_delta] {
            for key in keys.keys() {
                if !poset.hasse().contains(key) {
                    return Err(Error::Malformed(format!(
                        "map given on {key:?}, which is not a cover relation"
                    )));
                }
            }
        }
        for &(lo, hi) in poset.hasse() {
            if !edge_gamma.contains_key(&(lo, hi)) || !edge_delta.contains_key(&(lo, hi)) {
                return Err(Error::Malformed(format!(
                    "missing edge map on cover ({}, {})",
                    poset.face(lo).signs,
                    poset.face(hi).signs
                )));
            }
        }
        let mut gamma = edge_gamma;
        let mut delta = edge_delta;
        let mut pairs = poset.strict_pairs();
        pairs.sort_by_key(|&(lo, hi)| poset.face(hi).dim - poset.face(lo).dim);
        for (lo, hi) in pairs {
            if gamma.contains_key(&(lo, hi)) {
                continue;
            }
            let mid = poset
                .hasse()
                .iter()
                .find(|&&(a, m)| a == lo && poset.leq(m, hi))
                .map(|&(_, m)| m)
                .expect("a graded poset has a cover chain between comparable faces");
            let g = gamma[&(mid, hi)]
                .mul(&gamma[&(lo, mid)])
                .map_err(|e| Error::Malformed(format!("edge maps do not compose: {e}")))?;
            let d = delta[&(lo, mid)]
                .mul(&delta[&(mid, hi)])
                .map_err(|e| Error::Malformed(format!("edge maps do not compose: {e}")))?;
            gamma.insert((lo, hi), g);
            delta.insert((lo, hi), d);
        }
        DoubleRep::new(poset, dims, gamma, delta)
    }

    pub fn poset(&self) -> &Arc<FacePoset> {
        &self.poset
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, face: usize) -> usize {
        self.dims[face]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// The map `E_lo -> E_hi`; identity when the faces coincide.
    pub fn gamma(&self, lo: usize, hi: usize) -> RatMatrix {
        if lo == hi {
            return Matrix::identity(self.dims[lo]);
        }
        assert!(self.poset.leq(lo, hi), "gamma needs comparable faces");
        self.gamma[&(lo, hi)].clone()
    }

    /// The map `E_hi -> E_lo`; identity when the faces coincide.
    pub fn delta(&self, lo: usize, hi: usize) -> RatMatrix {
        if lo == hi {
            return Matrix::identity(self.dims[lo]);
        }
        assert!(self.poset.leq(lo, hi), "delta needs comparable faces");
        self.delta[&(lo, hi)].clone()
    }

    /// Transport `E_a -> E_b` through the origin face, which lies below
    /// every face: first `delta` down to the origin, then `gamma` up to `b`.
    pub fn phi(&self, a: usize, b: usize) -> RatMatrix {
        self.phi_through(a, b, self.poset.origin())
    }

    /// Transport `E_a -> E_b` through an arbitrary common lower bound `c`.
    pub fn phi_through(&self, a: usize, b: usize, c: usize) -> RatMatrix {
        mm(&self.gamma(c, b), &self.delta(c, a))
    }

    /// Swaps the two map families and transposes, preserving dimensions.
    pub fn dual(&self) -> DoubleRep {
        let gamma = self.delta.iter().map(|(&k, m)| (k, m.transpose())).collect();
        let delta = self.gamma.iter().map(|(&k, m)| (k, m.transpose())).collect();
        DoubleRep::new(self.poset.clone(), self.dims.clone(), gamma, delta)
            .expect("transposition preserves well-formedness")
    }
}

/// Blockwise direct sum; both summands must live on the same poset.
pub fn direct_sum(a: &DoubleRep, b: &DoubleRep) -> Result<DoubleRep> {
    if a.poset != b.poset {
        return Err(Error::Domain("direct sum needs a common poset".into()));
    }
    let dims: Vec<usize> = a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect();
    let gamma = a
        .gamma
        .iter()
        .map(|(&k, m)| (k, m.block_diag(&b.gamma[&k])))
        .collect();
    let delta = a
        .delta
        .iter()
        .map(|(&k, m)| (k, m.block_diag(&b.delta[&k])))
        .collect();
    DoubleRep::new(a.poset.clone(), dims, gamma, delta)
}

/// All spaces `k^r`, all maps identity.
pub fn constant_rep(poset: Arc<FacePoset>, r: usize) -> DoubleRep {
    let dims = vec![r; poset.len()];
    let mut gamma = BTreeMap::new();
    let mut delta = BTreeMap::new();
    for (lo, hi) in poset.strict_pairs() {
        gamma.insert((lo, hi), Matrix::identity(r));
        delta.insert((lo, hi), Matrix::identity(r));
    }
    DoubleRep::new(poset, dims, gamma, delta).expect("constant rep is well formed")
}

/// `k^r` at one face, zero elsewhere, all maps forced to zero.
pub fn skyscraper_rep(poset: Arc<FacePoset>, face: usize, r: usize) -> DoubleRep {
    let mut dims = vec![0; poset.len()];
    dims[face] = r;
    let mut gamma = BTreeMap::new();
    let mut delta = BTreeMap::new();
    for (lo, hi) in poset.strict_pairs() {
        gamma.insert((lo, hi), Matrix::zero(dims[hi], dims[lo]));
        delta.insert((lo, hi), Matrix::zero(dims[lo], dims[hi]));
    }
    DoubleRep::new(poset, dims, gamma, delta).expect("skyscraper rep is well formed")
}

/// All spaces zero.
pub fn zero_rep(poset: Arc<FacePoset>) -> DoubleRep {
    constant_rep(poset, 0)
}

/// Morphism of representations on a common poset: one matrix per face,
/// intertwining both map families on every comparable pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    source: DoubleRep,
    target: DoubleRep,
    components: Vec<RatMatrix>,
}

impl RepMorphism {
    pub fn new(
        source: DoubleRep,
        target: DoubleRep,
        components: Vec<RatMatrix>,
    ) -> Result<RepMorphism> {
        if source.poset != target.poset {
            return Err(Error::Domain("morphism needs a common poset".into()));
        }
        let poset = source.poset.clone();
        if components.len() != poset.len() {
            return Err(Error::Malformed(format!(
                "{} components given for {} faces",
                components.len(),
                poset.len()
            )));
        }
        for (k, f) in components.iter().enumerate() {
            if (f.rows(), f.cols()) != (target.dims[k], source.dims[k]) {
                return Err(Error::Malformed(format!(
                    "component at face {} has shape {}x{}, expected {}x{}",
                    poset.face(k).signs,
                    f.rows(),
                    f.cols(),
                    target.dims[k],
                    source.dims[k]
                )));
            }
        }
        for (lo, hi) in poset.strict_pairs() {
            let gamma_ok = mm(&target.gamma(lo, hi), &components[lo])
                == mm(&components[hi], &source.gamma(lo, hi));
            let delta_ok = mm(&components[lo], &source.delta(lo, hi))
                == mm(&target.delta(lo, hi), &components[hi]);
            if !gamma_ok || !delta_ok {
                return Err(Error::Domain(format!(
                    "components do not intertwine on pair ({}, {})",
                    poset.face(lo).signs,
                    poset.face(hi).signs
                )));
            }
        }
        Ok(RepMorphism { source, target, components })
    }

    /// Assembly without the intertwining check, for components that satisfy
    /// the constraints by construction (hom-space kernel vectors).
    pub(crate) fn from_parts_unchecked(
        source: DoubleRep,
        target: DoubleRep,
        components: Vec<RatMatrix>,
    ) -> RepMorphism {
        RepMorphism { source, target, components }
    }

    pub fn identity(rep: &DoubleRep) -> RepMorphism {
        let components = rep.dims.iter().map(|&d| Matrix::identity(d)).collect();
        RepMorphism { source: rep.clone(), target: rep.clone(), components }
    }

    pub fn zero(source: &DoubleRep, target: &DoubleRep) -> Result<RepMorphism> {
        if source.poset != target.poset {
            return Err(Error::Domain("morphism needs a common poset".into()));
        }
        let components = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zero(t, s))
            .collect();
        Ok(RepMorphism { source: source.clone(), target: target.clone(), components })
    }

    pub fn source(&self) -> &DoubleRep {
        &self.source
    }

    pub fn target(&self) -> &DoubleRep {
        &self.target
    }

    pub fn components(&self) -> &[RatMatrix] {
        &self.components
    }

    pub fn component(&self, face: usize) -> &RatMatrix {
        &self.components[face]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|m| m.is_zero_matrix())
    }

    /// Composition `next` after `self`.
    pub fn then(&self, next: &RepMorphism) -> Result<RepMorphism> {
        if self.target != next.source {
            return Err(Error::Domain(
                "composition needs matching middle representation".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&next.components)
            .map(|(f, g)| mm(g, f))
            .collect();
        Ok(RepMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            components,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, RatMatrix};

    fn line() -> Arc<FacePoset> {
        Arc::new(FacePoset::braid(1).unwrap())
    }

    fn plane() -> Arc<FacePoset> {
        Arc::new(FacePoset::braid(2).unwrap())
    }

    fn scalar(v: i64) -> RatMatrix {
        Matrix::new(1, 1, vec![q(v)]).unwrap()
    }

    #[test]
    fn constant_rep_transports_identically() {
        let p = line();
        let c = constant_rep(p.clone(), 1);
        assert_eq!(c.dims(), &[1, 1, 1]);
        for a in 0..3 {
            for b in 0..3 {
                assert!(c.phi(a, b).is_identity());
            }
        }
        assert_eq!(c.dual(), c);
    }

    #[test]
    fn skyscraper_at_origin_has_zero_legs() {
        let p = line();
        let s = skyscraper_rep(p.clone(), p.origin(), 1);
        assert_eq!(s.dims(), &[1, 0, 0]);
        assert!(s.phi(p.origin(), p.origin()).is_identity());
        assert_eq!(s.phi(1, 2).rows(), 0);
        assert_eq!(s.phi(1, 2).cols(), 0);
        assert_eq!(s.phi(p.origin(), 2).rows(), 0);
        assert_eq!(s.phi(p.origin(), 2).cols(), 1);
    }

    #[test]
    fn direct_sum_of_constants_is_a_constant() {
        let p = plane();
        let one = constant_rep(p.clone(), 1);
        let two = direct_sum(&one, &one).unwrap();
        assert_eq!(two, constant_rep(p.clone(), 2));
        assert_eq!(direct_sum(&one, &zero_rep(p.clone())).unwrap(), one);
    }

    #[test]
    fn direct_sum_requires_a_common_poset() {
        let a = constant_rep(line(), 1);
        let b = constant_rep(plane(), 1);
        assert!(matches!(direct_sum(&a, &b), Err(Error::Domain(_))));
    }

    #[test]
    fn dual_is_an_involution() {
        let p = line();
        let r = direct_sum(
            &constant_rep(p.clone(), 2),
            &skyscraper_rep(p.clone(), p.origin(), 1),
        )
        .unwrap();
        assert_eq!(r.dual().dual(), r);
        assert_eq!(r.dual().dims(), r.dims());
    }

    #[test]
    fn edge_maps_compose_to_all_pairs() {
        let p = plane();
        let mut eg = BTreeMap::new();
        let mut ed = BTreeMap::new();
        for &(lo, hi) in p.hasse() {
            eg.insert((lo, hi), Matrix::identity(1));
            ed.insert((lo, hi), Matrix::identity(1));
        }
        let r = DoubleRep::from_edge_maps(p.clone(), vec![1; p.len()], eg, ed).unwrap();
        assert_eq!(r, constant_rep(p, 1));
    }

    #[test]
    fn edge_map_construction_rejects_bad_input() {
        let p = line();
        let edges: Vec<_> = p.hasse().to_vec();
        let full = || -> (BTreeMap<_, _>, BTreeMap<_, _>) {
            let g: BTreeMap<_, _> =
                edges.iter().map(|&e| (e, Matrix::identity(1))).collect();
            (g.clone(), g)
        };

        let (mut eg, ed) = full();
        eg.remove(&edges[0]);
        let r = DoubleRep::from_edge_maps(p.clone(), vec![1; 3], eg, ed);
        assert!(matches!(r, Err(Error::Malformed(_))));

        let (mut eg, ed) = full();
        eg.insert((1, 2), Matrix::identity(1));
        let r = DoubleRep::from_edge_maps(p.clone(), vec![1; 3], eg, ed);
        assert!(matches!(r, Err(Error::Malformed(_))));

        let (mut eg, ed) = full();
        eg.insert(edges[0], Matrix::identity(2));
        let r = DoubleRep::from_edge_maps(p.clone(), vec![1; 3], eg, ed);
        assert!(matches!(r, Err(Error::Malformed(_))));
    }

    #[test]
    fn transport_is_path_independent_for_the_constant_rep() {
        let p = plane();
        let c = constant_rep(p.clone(), 2);
        for a in 0..p.len() {
            for b in 0..p.len() {
                for lower in 0..p.len() {
                    if p.leq(lower, a) && p.leq(lower, b) {
                        assert_eq!(c.phi_through(a, b, lower), c.phi(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn morphism_validation() {
        let p = line();
        let c = constant_rep(p.clone(), 1);
        let id = RepMorphism::identity(&c);
        assert!(!id.is_zero());
        assert_eq!(id.then(&id).unwrap(), id);

        let doubled = RepMorphism::new(
            c.clone(),
            c.clone(),
            vec![scalar(2), scalar(2), scalar(2)],
        )
        .unwrap();
        assert_eq!(doubled.component(0), &scalar(2));

        let skewed = RepMorphism::new(
            c.clone(),
            c.clone(),
            vec![scalar(1), scalar(1), scalar(2)],
        );
        assert!(matches!(skewed, Err(Error::Domain(_))));

        let ragged = RepMorphism::new(c.clone(), c.clone(), vec![scalar(1); 2]);
        assert!(matches!(ragged, Err(Error::Malformed(_))));

        let z = RepMorphism::zero(&c, &skyscraper_rep(p.clone(), p.origin(), 1)).unwrap();
        assert!(z.is_zero());
    }
}
