//! Order embedding of a braid face poset onto the faces of the next-larger
//! braid arrangement that lie on one chosen hyperplane.
//!
//! Two independent constructions are provided. The combinatorial route
//! relabels each ordered set partition of `{1, ..., n+1}` into
//! `{1, ..., n+2} \ {j}` and inserts the letter `j` into the block of `i`.
//! The geometric route realizes the linear map that duplicates the `i`-th
//! coordinate into slot `j`, recenters the image into the zero-sum subspace,
//! and reads off the face containing the image of each witness point. The
//! geometric constructor compares its table against the combinatorial one
//! entry by entry and treats any mismatch as an internal inconsistency.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arrangement::{Sign, SignVector};
use crate::error::{Error, Result};
use crate::osp::OrderedSetPartition;
use crate::poset::FacePoset;
use crate::report::Report;
use crate::{q, Rat};

/// Order-preserving injection of the faces of `braid(n)` onto the faces of
/// `braid(n + 1)` with sign zero at the hyperplane `x_i = x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingMap {
    source: Arc<FacePoset>,
    target: Arc<FacePoset>,
    n: usize,
    i: usize,
    j: usize,
    hyperplane_index: usize,
    table: Vec<usize>,
    preimage: Vec<Option<usize>>,
}

impl EmbeddingMap {
    pub fn source(&self) -> &Arc<FacePoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FacePoset> {
        &self.target
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The defining pair `(i, j)`, `1 <= i < j <= n + 2`.
    pub fn pair(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// Label of the target hyperplane the image lies on.
    pub fn label(&self) -> String {
        format!("L({},{})", self.i, self.j)
    }

    /// Position of that hyperplane in the target arrangement's order.
    pub fn hyperplane_index(&self) -> usize {
        self.hyperplane_index
    }

    /// Image face index of each source face, in source face order.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, source_face: usize) -> usize {
        self.table[source_face]
    }

    /// Source face mapping onto the given target face, if any.
    pub fn preimage(&self, target_face: usize) -> Option<usize> {
        self.preimage[target_face]
    }

    pub fn in_image(&self, target_face: usize) -> bool {
        self.preimage[target_face].is_some()
    }

    pub(crate) fn from_table_unchecked(
        source: Arc<FacePoset>,
        target: Arc<FacePoset>,
        n: usize,
        i: usize,
        j: usize,
        hyperplane_index: usize,
        table: Vec<usize>,
    ) -> EmbeddingMap {
        let mut preimage = vec![None; target.len()];
        for (s, &t) in table.iter().enumerate() {
            preimage[t] = Some(s);
        }
        EmbeddingMap { source, target, n, i, j, hyperplane_index, table, preimage }
    }
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if !(1 <= i && i < j && j <= n + 2) {
        return Err(Error::Domain(format!(
            "pair ({i}, {j}) out of range: need 1 <= i < j <= {}",
            n + 2
        )));
    }
    Ok(())
}

fn check_posets(source: &FacePoset, target: &FacePoset, n: usize) -> Result<()> {
    if source.arrangement().braid_rank() != Some(n) {
        return Err(Error::Domain(format!("source poset is not braid({n})")));
    }
    if target.arrangement().braid_rank() != Some(n + 1) {
        return Err(Error::Domain(format!("target poset is not braid({})", n + 1)));
    }
    Ok(())
}

pub(crate) fn hyperplane_position(target: &FacePoset, i: usize, j: usize) -> Result<usize> {
    let label = format!("L({i},{j})");
    target
        .arrangement()
        .hyperplanes
        .iter()
        .position(|h| h.label == label)
        .ok_or_else(|| Error::Domain(format!("target arrangement has no hyperplane {label}")))
}

/// Combinatorial construction of the embedding determined by `(i, j)`:
/// relabel the letters of each ordered set partition away from `j` and put
/// `j` in the block of `i`. All structural invariants are verified before
/// the map is returned.
pub fn iota_braid(n: usize, i: usize, j: usize) -> Result<EmbeddingMap> {
    check_pair(n, i, j)?;
    let source = Arc::new(FacePoset::braid(n)?);
    let target = Arc::new(FacePoset::braid(n + 1)?);
    iota_braid_on(source, target, i, j)
}

/// [`iota_braid`] with caller-provided posets, so repeated embeddings can
/// share one pair of face enumerations.
pub fn iota_braid_on(
    source: Arc<FacePoset>,
    target: Arc<FacePoset>,
    i: usize,
    j: usize,
) -> Result<EmbeddingMap> {
    let n = source
        .arrangement()
        .braid_rank()
        .ok_or_else(|| Error::Domain("source poset is not a braid poset".into()))?;
    check_pair(n, i, j)?;
    check_posets(&source, &target, n)?;
    let table = braid_table(&source, &target, i, j)?;
    assemble(source, target, n, i, j, table)
}

/// Geometric construction of the same embedding: push each source witness
/// through the coordinate-duplication map and locate the face of the image.
/// The resulting table is compared against [`iota_braid`]'s entry by entry.
pub fn iota_geometric(n: usize, i: usize, j: usize) -> Result<EmbeddingMap> {
    check_pair(n, i, j)?;
    let source = Arc::new(FacePoset::braid(n)?);
    let target = Arc::new(FacePoset::braid(n + 1)?);
    iota_geometric_on(source, target, i, j)
}

/// [`iota_geometric`] with caller-provided posets.
pub fn iota_geometric_on(
    source: Arc<FacePoset>,
    target: Arc<FacePoset>,
    i: usize,
    j: usize,
) -> Result<EmbeddingMap> {
    let n = source
        .arrangement()
        .braid_rank()
        .ok_or_else(|| Error::Domain("source poset is not a braid poset".into()))?;
    check_pair(n, i, j)?;
    check_posets(&source, &target, n)?;
    let geometric = geometric_table(&source, &target, i, j)?;
    let combinatorial = braid_table(&source, &target, i, j)?;
    if let Some(s) = (0..geometric.len()).find(|&s| geometric[s] != combinatorial[s]) {
        return Err(Error::Internal(format!(
            "the two embedding constructions disagree at face {}: \
             geometric image {}, combinatorial image {}",
            source.face(s).signs,
            target.face(geometric[s]).signs,
            target.face(combinatorial[s]).signs
        )));
    }
    assemble(source, target, n, i, j, geometric)
}

fn assemble(
    source: Arc<FacePoset>,
    target: Arc<FacePoset>,
    n: usize,
    i: usize,
    j: usize,
    table: Vec<usize>,
) -> Result<EmbeddingMap> {
    let hyperplane_index = hyperplane_position(&target, i, j)?;
    let emb = EmbeddingMap::from_table_unchecked(
        source,
        target,
        n,
        i,
        j,
        hyperplane_index,
        table,
    );
    let report = verify_order_embedding(&emb);
    if !report.ok() {
        let failures: Vec<String> = report
            .failed()
            .iter()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(Error::Internal(format!(
            "constructed embedding violates its own invariants: {}",
            failures.join("; ")
        )));
    }
    Ok(emb)
}

fn braid_table(
    source: &FacePoset,
    target: &FacePoset,
    i: usize,
    j: usize,
) -> Result<Vec<usize>> {
    let letters = source.arrangement().ambient_dim;
    let partitions: BTreeMap<SignVector, OrderedSetPartition> =
        OrderedSetPartition::enumerate(letters)
            .into_iter()
            .map(|p| (p.sign_vector(), p))
            .collect();
    let mut table = Vec::with_capacity(source.len());
    for f in source.faces() {
        let p = partitions.get(&f.signs).ok_or_else(|| {
            Error::Internal(format!("face {} has no ordered set partition", f.signs))
        })?;
        let mut blocks: Vec<Vec<usize>> = p
            .blocks
            .iter()
            .map(|b| b.iter().map(|&e| if e < j { e } else { e + 1 }).collect())
            .collect();
        let host = blocks
            .iter_mut()
            .find(|b| b.contains(&i))
            .expect("i < j survives the relabeling");
        host.push(j);
        host.sort_unstable();
        let image = OrderedSetPartition { blocks };
        let t = target.index_of(&image.sign_vector()).ok_or_else(|| {
            Error::Internal(format!(
                "inserted partition of face {} is not a target face",
                f.signs
            ))
        })?;
        table.push(t);
    }
    Ok(table)
}

fn geometric_table(
    source: &FacePoset,
    target: &FacePoset,
    i: usize,
    j: usize,
) -> Result<Vec<usize>> {
    let m = target.arrangement().ambient_dim;
    let mut table = Vec::with_capacity(source.len());
    for f in source.faces() {
        let x = &f.witness;
        let mut y: Vec<Rat> = Vec::with_capacity(m);
        for t in 1..=m {
            y.push(if t == j {
                x[i - 1].clone()
            } else if t < j {
                x[t - 1].clone()
            } else {
                x[t - 2].clone()
            });
        }
        // The duplicated coordinate pushes the sum off zero; recentering
        // along the all-ones direction restores it without changing any
        // coordinate difference, hence without changing any sign.
        let shift = y.iter().fold(q(0), |acc, v| acc + v) / q(m as i64);
        for v in &mut y {
            *v = v.clone() - shift.clone();
        }
        let signs = target.arrangement().sign_vector(&y)?;
        let t = target.index_of(&signs).ok_or_else(|| {
            Error::Internal(format!(
                "image of the witness of face {} lies on no target face",
                f.signs
            ))
        })?;
        table.push(t);
    }
    Ok(table)
}

/// The five structural checks an embedding must satisfy: injectivity,
/// two-way order preservation, image characterization (exactly the faces
/// with sign zero at the defining hyperplane), downward closure of the
/// image, and dimension preservation.
pub fn verify_order_embedding(emb: &EmbeddingMap) -> Report {
    let source = emb.source();
    let target = emb.target();
    let mut report = Report::default();

    let mut seen = vec![false; target.len()];
    let mut duplicate = None;
    for &t in &emb.table {
        if seen[t] {
            duplicate = Some(t);
        }
        seen[t] = true;
    }
    report.push(
        "injective",
        duplicate.is_none(),
        match duplicate {
            None => format!("{} faces map to {} distinct images", emb.table.len(), emb.table.len()),
            Some(t) => format!("target face {} is hit twice", target.face(t).signs),
        },
    );

    let mut order_witness = None;
    for a in 0..source.len() {
        for b in 0..source.len() {
            if source.leq(a, b) != target.leq(emb.table[a], emb.table[b]) {
                order_witness = Some((a, b));
            }
        }
    }
    report.push(
        "order_preserving",
        order_witness.is_none(),
        match order_witness {
            None => "face order agrees with image order in both directions".into(),
            Some((a, b)) => format!(
                "faces {} and {} compare differently from their images {} and {}",
                source.face(a).signs,
                source.face(b).signs,
                target.face(emb.table[a]).signs,
                target.face(emb.table[b]).signs
            ),
        },
    );

    let h = emb.hyperplane_index();
    let mut image_witness = None;
    for t in 0..target.len() {
        let zero_here = target.face(t).signs.0[h] == Sign::Zero;
        if zero_here != emb.in_image(t) {
            image_witness = Some(t);
        }
    }
    report.push(
        "image_characterized",
        image_witness.is_none(),
        match image_witness {
            None => format!(
                "image is exactly the {} faces with sign zero at {}",
                emb.table.len(),
                emb.label()
            ),
            Some(t) => format!(
                "target face {} disagrees with the sign-zero characterization",
                target.face(t).signs
            ),
        },
    );

    let mut closure_witness = None;
    for t in 0..target.len() {
        if !emb.in_image(t) {
            continue;
        }
        for lower in 0..target.len() {
            if target.leq(lower, t) && !emb.in_image(lower) {
                closure_witness = Some((lower, t));
            }
        }
    }
    report.push(
        "downward_closed",
        closure_witness.is_none(),
        match closure_witness {
            None => "every face below an image face is itself an image face".into(),
            Some((lower, t)) => format!(
                "face {} lies below the image face {} but is not in the image",
                target.face(lower).signs,
                target.face(t).signs
            ),
        },
    );

    let mut dim_witness = None;
    for s in 0..source.len() {
        if source.face(s).dim != target.face(emb.table[s]).dim {
            dim_witness = Some(s);
        }
    }
    report.push(
        "dim_preserved",
        dim_witness.is_none(),
        match dim_witness {
            None => "every face has the dimension of its image".into(),
            Some(s) => format!(
                "face {} has dimension {}, its image {} has dimension {}",
                source.face(s).signs,
                source.face(s).dim,
                target.face(emb.table[s]).signs,
                target.face(emb.table[s]).dim
            ),
        },
    );

    report
}
