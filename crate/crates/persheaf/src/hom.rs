//! Hom spaces between representations and facewise kernels/cokernels.
//!
//! A morphism is one matrix per face subject to intertwining with both map
//! families. Writing all component entries as unknowns, the intertwining
//! constraints over the cover relations form a rational linear system whose
//! kernel is the hom space; covers suffice because maps on longer pairs are
//! composites of cover maps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rep::{mm, DoubleRep, RepMorphism};
use crate::{q, Rat, RatMatrix};

/// Exact basis of the space of morphisms `src -> dst`. The returned
/// dimension always equals the basis length; ordering is deterministic.
pub fn hom_space(src: &DoubleRep, dst: &DoubleRep) -> Result<(usize, Vec<RepMorphism>)> {
    if src.poset() != dst.poset() {
        return Err(Error::Domain("hom space needs a common poset".into()));
    }
    let p = src.poset().clone();
    let nf = p.len();
    let mut offset = vec![0usize; nf + 1];
    for k in 0..nf {
        offset[k + 1] = offset[k] + dst.dim(k) * src.dim(k);
    }
    let total = offset[nf];
    // Unknown layout: component at face k is row-major at offset[k], so the
    // (r, c) entry sits at offset[k] + r * src.dim(k) + c.
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for &(lo, hi) in p.hasse() {
        let sg = src.gamma(lo, hi);
        let dg = dst.gamma(lo, hi);
        let sd = src.delta(lo, hi);
        let dd = dst.delta(lo, hi);
        // dst.gamma . f_lo = f_hi . src.gamma, one row per result entry.
        for r in 0..dst.dim(hi) {
            for c in 0..src.dim(lo) {
                let mut row = vec![q(0); total];
                for k in 0..dst.dim(lo) {
                    row[offset[lo] + k * src.dim(lo) + c] += dg.at(r, k);
                }
                for k in 0..src.dim(hi) {
                    row[offset[hi] + r * src.dim(hi) + k] -= sg.at(k, c);
                }
                rows.push(row);
            }
        }
        // f_lo . src.delta = dst.delta . f_hi.
        for r in 0..dst.dim(lo) {
            for c in 0..src.dim(hi) {
                let mut row = vec![q(0); total];
                for k in 0..src.dim(lo) {
                    row[offset[lo] + r * src.dim(lo) + k] += sd.at(k, c);
                }
                for k in 0..dst.dim(hi) {
                    row[offset[hi] + k * src.dim(hi) + c] -= dd.at(r, k);
                }
                rows.push(row);
            }
        }
    }
    let kernel = linalg::kernel_basis(&rows, total)?;
    let mut basis = Vec::with_capacity(kernel.len());
    for vec in kernel {
        let mut components = Vec::with_capacity(nf);
        for k in 0..nf {
            let data: Vec<Rat> = vec[offset[k]..offset[k + 1]].to_vec();
            components.push(Matrix::new(dst.dim(k), src.dim(k), data)?);
        }
        basis.push(RepMorphism::from_parts_unchecked(
            src.clone(),
            dst.clone(),
            components,
        ));
    }
    Ok((basis.len(), basis))
}

/// Facewise kernel and cokernel of a morphism, with induced maps. The
/// induced kernel maps are the unique solutions of inclusion equations; a
/// morphism between representations that fail the composition identities can
/// leave them unsolvable, which reports as a domain error.
pub fn kernel_cokernel(m: &RepMorphism) -> Result<(DoubleRep, DoubleRep)> {
    let src = m.source();
    let dst = m.target();
    let p = src.poset().clone();
    let nf = p.len();

    // Kernel inclusions: columns of k_basis[k] span ker(f_k).
    let mut k_basis: Vec<RatMatrix> = Vec::with_capacity(nf);
    for k in 0..nf {
        let cols = m.component(k).kernel_basis();
        k_basis.push(matrix_from_columns(src.dim(k), cols));
    }
    // Cokernel data: a complement basis (the section) and the projection
    // that reads off complement coordinates modulo the image.
    let mut sections: Vec<RatMatrix> = Vec::with_capacity(nf);
    let mut projections: Vec<RatMatrix> = Vec::with_capacity(nf);
    for k in 0..nf {
        let f = m.component(k);
        let image = image_basis(f);
        let extension = complement_extension(&image, dst.dim(k))?;
        let rank = image.len();
        let coker_dim = extension.len();
        let mut full_cols = image;
        full_cols.extend(extension.iter().cloned());
        let full = matrix_from_columns(dst.dim(k), full_cols);
        let inverse = full
            .solve(&Matrix::identity(dst.dim(k)))
            .expect("change-of-basis matrix is invertible by construction");
        let mut projection = Matrix::zero(coker_dim, dst.dim(k));
        for r in 0..coker_dim {
            for c in 0..dst.dim(k) {
                projection.set(r, c, inverse.at(rank + r, c).clone());
            }
        }
        sections.push(matrix_from_columns(dst.dim(k), extension));
        projections.push(projection);
    }

    let k_dims: Vec<usize> = k_basis.iter().map(|b| b.cols()).collect();
    let c_dims: Vec<usize> = projections.iter().map(|p| p.rows()).collect();
    let mut k_gamma = BTreeMap::new();
    let mut k_delta = BTreeMap::new();
    let mut c_gamma = BTreeMap::new();
    let mut c_delta = BTreeMap::new();
    for (lo, hi) in p.strict_pairs() {
        let induced = |inclusion_into: &RatMatrix, mapped: RatMatrix| -> Result<RatMatrix> {
            inclusion_into.solve(&mapped).ok_or_else(|| {
                Error::Domain(
                    "kernel is not preserved by the transport maps; \
                     the morphism does not intertwine a composite pair"
                        .into(),
                )
            })
        };
        k_gamma.insert(
            (lo, hi),
            induced(&k_basis[hi], mm(&src.gamma(lo, hi), &k_basis[lo]))?,
        );
        k_delta.insert(
            (lo, hi),
            induced(&k_basis[lo], mm(&src.delta(lo, hi), &k_basis[hi]))?,
        );
        c_gamma.insert(
            (lo, hi),
            mm(&projections[hi], &mm(&dst.gamma(lo, hi), &sections[lo])),
        );
        c_delta.insert(
            (lo, hi),
            mm(&projections[lo], &mm(&dst.delta(lo, hi), &sections[hi])),
        );
    }
    let kernel = DoubleRep::new(p.clone(), k_dims, k_gamma, k_delta)?;
    let cokernel = DoubleRep::new(p, c_dims, c_gamma, c_delta)?;
    Ok((kernel, cokernel))
}

fn matrix_from_columns(rows: usize, cols: Vec<Vec<Rat>>) -> RatMatrix {
    let mut m = Matrix::zero(rows, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    m
}

/// Columns spanning the image of `f`: the nonzero rows of the reduced form
/// of its transpose.
fn image_basis(f: &RatMatrix) -> Vec<Vec<Rat>> {
    let mut t = f.transpose();
    let pivots = t.rref();
    (0..pivots.len()).map(|r| t.row(r).to_vec()).collect()
}

/// Standard basis vectors extending an independent set to all of `k^dim`.
fn complement_extension(basis: &[Vec<Rat>], dim: usize) -> Result<Vec<Vec<Rat>>> {
    let mut current: Vec<Vec<Rat>> = basis.to_vec();
    let mut extension = Vec::new();
    for i in 0..dim {
        let mut e = vec![q(0); dim];
        e[i] = q(1);
        current.push(e.clone());
        if linalg::rank(&current)? == current.len() {
            extension.push(e);
        } else {
            current.pop();
        }
    }
    debug_assert_eq!(basis.len() + extension.len(), dim);
    Ok(extension)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::poset::FacePoset;
    use crate::relations::is_in_j;
    use crate::rep::{constant_rep, direct_sum, skyscraper_rep, zero_rep};

    fn line() -> Arc<FacePoset> {
        Arc::new(FacePoset::braid(1).unwrap())
    }

    fn plane() -> Arc<FacePoset> {
        Arc::new(FacePoset::braid(2).unwrap())
    }

    #[test]
    fn constant_endomorphisms_are_matrices() {
        for p in [line(), plane()] {
            let (d, basis) = hom_space(
                &constant_rep(p.clone(), 1),
                &constant_rep(p.clone(), 1),
            )
            .unwrap();
            assert_eq!(d, 1);
            assert!(basis[0].components().iter().all(|m| !m.is_zero_matrix()));
            let (d, _) = hom_space(
                &constant_rep(p.clone(), 2),
                &constant_rep(p.clone(), 3),
            )
            .unwrap();
            assert_eq!(d, 6);
        }
    }

    #[test]
    fn skyscraper_and_constant_do_not_talk() {
        let p = line();
        let sky = skyscraper_rep(p.clone(), p.origin(), 1);
        let c = constant_rep(p.clone(), 1);
        assert_eq!(hom_space(&sky, &c).unwrap().0, 0);
        assert_eq!(hom_space(&c, &sky).unwrap().0, 0);
    }

    #[test]
    fn hom_with_zero_is_zero() {
        let p = line();
        let c = constant_rep(p.clone(), 2);
        let z = zero_rep(p.clone());
        assert_eq!(hom_space(&c, &z).unwrap().0, 0);
        assert_eq!(hom_space(&z, &c).unwrap().0, 0);
    }

    #[test]
    fn hom_requires_a_common_poset() {
        let a = constant_rep(line(), 1);
        let b = constant_rep(plane(), 1);
        assert!(matches!(hom_space(&a, &b), Err(Error::Domain(_))));
    }

    #[test]
    fn hom_dimension_is_dual_symmetric() {
        let p = line();
        let mix = direct_sum(
            &constant_rep(p.clone(), 1),
            &skyscraper_rep(p.clone(), p.origin(), 2),
        )
        .unwrap();
        let c = constant_rep(p.clone(), 2);
        let forward = hom_space(&mix, &c).unwrap().0;
        let dualized = hom_space(&c.dual(), &mix.dual()).unwrap().0;
        assert_eq!(forward, dualized);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let p = plane();
        let c = constant_rep(p.clone(), 2);
        let (ker, coker) = kernel_cokernel(&RepMorphism::identity(&c)).unwrap();
        assert!(ker.is_zero());
        assert!(coker.is_zero());
        let z = RepMorphism::zero(&c, &c).unwrap();
        let (ker, coker) = kernel_cokernel(&z).unwrap();
        assert_eq!(ker, c);
        assert_eq!(coker, c);
    }

    #[test]
    fn cokernel_of_an_injection_of_constants() {
        let p = line();
        let one = constant_rep(p.clone(), 1);
        let two = constant_rep(p.clone(), 2);
        let (_, basis) = hom_space(&one, &two).unwrap();
        let inj = basis
            .iter()
            .find(|m| m.components().iter().all(|f| f.rank() == 1))
            .expect("an injective basis morphism exists");
        let (ker, coker) = kernel_cokernel(inj).unwrap();
        assert!(ker.is_zero());
        assert_eq!(coker.dims(), &[1, 1, 1]);
        assert!(is_in_j(&coker).ok());
    }

    #[test]
    fn rank_nullity_holds_facewise() {
        let p = line();
        let mix = direct_sum(
            &constant_rep(p.clone(), 2),
            &skyscraper_rep(p.clone(), p.origin(), 1),
        )
        .unwrap();
        let (_, basis) = hom_space(&mix, &mix).unwrap();
        assert!(!basis.is_empty());
        for m in &basis {
            let (ker, coker) = kernel_cokernel(m).unwrap();
            for k in 0..p.len() {
                assert_eq!(ker.dim(k) + m.component(k).rank(), mix.dim(k));
                assert_eq!(coker.dim(k) + m.component(k).rank(), mix.dim(k));
            }
        }
    }

    #[test]
    fn kernel_and_cokernel_stay_in_the_subcategory() {
        let p = plane();
        let two = constant_rep(p.clone(), 2);
        let one = constant_rep(p.clone(), 1);
        let (_, basis) = hom_space(&two, &one).unwrap();
        let surj = basis
            .iter()
            .find(|m| m.components().iter().all(|f| f.rank() == 1))
            .expect("a surjective basis morphism exists");
        let (ker, coker) = kernel_cokernel(surj).unwrap();
        assert!(coker.is_zero());
        assert_eq!(ker.dims(), vec![1; p.len()].as_slice());
        assert!(is_in_j(&ker).ok());
        assert!(is_in_j(&coker).ok());
    }
}
