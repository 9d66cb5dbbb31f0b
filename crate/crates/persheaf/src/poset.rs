//! Face poset of an essential central arrangement.
//!
//! Faces are the relatively open cones on which every hyperplane functional
//! has constant sign. Enumeration is exact: a depth-first search over sign
//! prefixes, pruning each extension with a rational feasibility solve and
//! reusing the parent's witness point whenever it already realizes the child
//! prefix. Faces are stored in canonical order: dimension ascending, then
//! sign vector lexicographic with `0 < - < +`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::arrangement::{Arrangement, Sign, SignVector};
use crate::error::{Error, Result};
use crate::lp::{solve_feasible, Feasibility, LinearSystem};
use crate::{linalg, q, qq, Rat};

/// Relatively open face: its sign vector, dimension, and one interior point.
#[derive(Clone, Debug)]
pub struct Face {
    pub signs: SignVector,
    pub dim: usize,
    pub witness: Vec<Rat>,
}

/// All faces of an arrangement with their closure order.
#[derive(Debug)]
pub struct FacePoset {
    arrangement: Arrangement,
    faces: Vec<Face>,
    index: BTreeMap<SignVector, usize>,
    leq: Vec<Vec<bool>>,
    hasse: Vec<(usize, usize)>,
    origin: usize,
    collinear_cache: OnceLock<Vec<(usize, usize, usize)>>,
    opposed_cache: OnceLock<Vec<(usize, usize, usize)>>,
}

impl PartialEq for FacePoset {
    fn eq(&self, other: &Self) -> bool {
        self.arrangement == other.arrangement
            && self.faces.len() == other.faces.len()
            && self.faces.iter().zip(&other.faces).all(|(x, y)| x.signs == y.signs)
    }
}

impl Eq for FacePoset {}

impl FacePoset {
    pub fn build(arrangement: Arrangement) -> Result<FacePoset> {
        let faces = enumerate_faces(&arrangement)?;
        let index: BTreeMap<SignVector, usize> =
            faces.iter().enumerate().map(|(k, f)| (f.signs.clone(), k)).collect();
        let nf = faces.len();
        let mut leq = vec![vec![false; nf]; nf];
        for (i, fi) in faces.iter().enumerate() {
            for (j, fj) in faces.iter().enumerate() {
                leq[i][j] = fi.signs.below(&fj.signs);
            }
        }
        let mut hasse = Vec::new();
        for j in 0..nf {
            for i in 0..nf {
                if i == j || !leq[i][j] {
                    continue;
                }
                let covered =
                    (0..nf).any(|k| k != i && k != j && leq[i][k] && leq[k][j]);
                if !covered {
                    hasse.push((i, j));
                }
            }
        }
        hasse.sort_unstable();
        let all_zero = SignVector(vec![Sign::Zero; arrangement.hyperplanes.len()]);
        let origin = *index
            .get(&all_zero)
            .expect("essential arrangement always has the single-point zero face");
        Ok(FacePoset {
            arrangement,
            faces,
            index,
            leq,
            hasse,
            origin,
            collinear_cache: OnceLock::new(),
            opposed_cache: OnceLock::new(),
        })
    }

    pub fn braid(n: usize) -> Result<FacePoset> {
        FacePoset::build(Arrangement::braid(n)?)
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, k: usize) -> &Face {
        &self.faces[k]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn index_of(&self, signs: &SignVector) -> Option<usize> {
        self.index.get(signs).copied()
    }

    /// Parses a sign string and resolves it to a face index.
    pub fn lookup_signs(&self, s: &str) -> Result<usize> {
        let signs: SignVector = s.parse()?;
        if signs.len() != self.arrangement.hyperplanes.len() {
            return Err(Error::Malformed(format!(
                "sign vector {s:?} has length {}, arrangement has {} hyperplanes",
                signs.len(),
                self.arrangement.hyperplanes.len()
            )));
        }
        self.index_of(&signs).ok_or_else(|| {
            Error::Malformed(format!("sign vector {s:?} is not a face of the arrangement"))
        })
    }

    /// The unique zero-dimensional face (the subspace origin).
    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn top_dim(&self) -> usize {
        self.arrangement.dim_subspace()
    }

    pub fn chambers(&self) -> Vec<usize> {
        let top = self.top_dim();
        (0..self.faces.len()).filter(|&k| self.faces[k].dim == top).collect()
    }

    /// Closure order: `lo <= hi` iff the sign of `lo` is componentwise zero
    /// or equal to the sign of `hi`.
    pub fn leq(&self, lo: usize, hi: usize) -> bool {
        self.leq[lo][hi]
    }

    /// Cover relations `(lower, upper)`, sorted.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// All strictly comparable pairs `(lo, hi)` with `lo < hi`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for lo in 0..self.faces.len() {
            for hi in 0..self.faces.len() {
                if lo != hi && self.leq[lo][hi] {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    /// Collinearity of the ordered face triple `(a, b, c)`: some open segment
    /// from a point of `a` to a point of `c` passes through `b`. Conventions:
    /// a triple with `b` equal to either endpoint is collinear, and a triple
    /// with equal endpoints is collinear only in that degenerate way.
    ///
    /// For cones the segment condition collapses to a single feasibility
    /// question: points `x` of `a` and `y` of `c` with `x + y` in `b` exist
    /// iff some convex combination lands in `b`, because faces are closed
    /// under positive scaling.
    pub fn collinear(&self, a: usize, b: usize, c: usize) -> bool {
        if b == a || b == c {
            return true;
        }
        if a == c {
            return false;
        }
        let sa = &self.faces[a].signs.0;
        let sb = &self.faces[b].signs.0;
        let sc = &self.faces[c].signs.0;
        // Componentwise screen: on hyperplanes where the endpoint signs do
        // not strictly oppose, the sign of any interior sum is forced.
        for t in 0..sa.len() {
            let forced = if sa[t] == sc[t] {
                Some(sa[t])
            } else if sa[t] == Sign::Zero {
                Some(sc[t])
            } else if sc[t] == Sign::Zero {
                Some(sa[t])
            } else {
                None
            };
            if let Some(f) = forced {
                if sb[t] != f {
                    return false;
                }
            }
        }
        let arr = &self.arrangement;
        let d = arr.ambient_dim;
        let mut sys = LinearSystem::new(2 * d);
        for row in &arr.subspace {
            sys.equalities.push((embed_row(row, 0, 2 * d), q(0)));
            sys.equalities.push((embed_row(row, d, 2 * d), q(0)));
        }
        for (t, h) in arr.hyperplanes.iter().enumerate() {
            push_sign_constraint(&mut sys, embed_row(&h.normal, 0, 2 * d), sa[t]);
            push_sign_constraint(&mut sys, embed_row(&h.normal, d, 2 * d), sc[t]);
            let mut sum_row = embed_row(&h.normal, 0, 2 * d);
            sum_row[d..].clone_from_slice(&h.normal);
            push_sign_constraint(&mut sys, sum_row, sb[t]);
        }
        matches!(
            solve_feasible(&sys).expect("collinearity system is well formed"),
            Feasibility::Witness(_)
        )
    }

    /// Independent collinearity check; never goes through [`Self::collinear`].
    ///
    /// Route one fixes the segment parameter `t` at several rational values
    /// and solves `x in a, y in c, (1-t) x + t y in b` directly; scaling
    /// invariance of cones makes every `t` in `(0,1)` equivalent, so the
    /// slices must agree among themselves. Route two intersects exact sign
    /// intervals along sampled witness segments; it can only certify
    /// collinearity, never refute it. Internal contradiction is an error.
    pub fn collinear_oracle(&self, a: usize, b: usize, c: usize) -> Result<bool> {
        if b == a || b == c {
            return Ok(true);
        }
        if a == c {
            return Ok(false);
        }
        let mut verdicts = Vec::new();
        for (num, den) in [(1i64, 3i64), (1, 2), (2, 3)] {
            let sys = self.segment_point_system(a, b, c, qq(num, den));
            verdicts.push(matches!(
                solve_feasible(&sys).expect("slice system is well formed"),
                Feasibility::Witness(_)
            ));
        }
        if verdicts.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::OracleDisagreement(format!(
                "segment slices disagree among themselves on ({}, {}, {}): {:?}",
                self.faces[a].signs, self.faces[b].signs, self.faces[c].signs, verdicts
            )));
        }
        let sliced = verdicts[0];
        if self.sampled_segment_hits(a, b, c) && !sliced {
            return Err(Error::OracleDisagreement(format!(
                "a sampled segment certifies ({}, {}, {}) but the slice solver refutes it",
                self.faces[a].signs, self.faces[b].signs, self.faces[c].signs
            )));
        }
        Ok(sliced)
    }

    fn segment_point_system(&self, a: usize, b: usize, c: usize, t: Rat) -> LinearSystem<Rat> {
        let arr = &self.arrangement;
        let d = arr.ambient_dim;
        let sa = &self.faces[a].signs.0;
        let sb = &self.faces[b].signs.0;
        let sc = &self.faces[c].signs.0;
        let one_minus_t = q(1) - t.clone();
        let mut sys = LinearSystem::new(2 * d);
        for row in &arr.subspace {
            sys.equalities.push((embed_row(row, 0, 2 * d), q(0)));
            sys.equalities.push((embed_row(row, d, 2 * d), q(0)));
        }
        for (k, h) in arr.hyperplanes.iter().enumerate() {
            push_sign_constraint(&mut sys, embed_row(&h.normal, 0, 2 * d), sa[k]);
            push_sign_constraint(&mut sys, embed_row(&h.normal, d, 2 * d), sc[k]);
            let mut mixed: Vec<Rat> = h.normal.iter().map(|v| v * &one_minus_t).collect();
            mixed.extend(h.normal.iter().map(|v| v * &t));
            push_sign_constraint(&mut sys, mixed, sb[k]);
        }
        sys
    }

    /// Tries scaled witness segments; true means a segment from `a` to `c`
    /// provably passes through `b`.
    fn sampled_segment_hits(&self, a: usize, b: usize, c: usize) -> bool {
        let scales: [i64; 3] = [1, 2, 5];
        for la in scales {
            for lc in scales {
                let x: Vec<Rat> =
                    self.faces[a].witness.iter().map(|v| v * q(la)).collect();
                let y: Vec<Rat> =
                    self.faces[c].witness.iter().map(|v| v * q(lc)).collect();
                if segment_hits(&self.arrangement, &x, &y, &self.faces[b].signs) {
                    return true;
                }
            }
        }
        false
    }

    /// All ordered collinear triples, computed once per poset.
    pub fn collinear_triples(&self) -> &[(usize, usize, usize)] {
        self.collinear_cache.get_or_init(|| {
            let nf = self.faces.len();
            let mut out = Vec::new();
            for a in 0..nf {
                for b in 0..nf {
                    for c in 0..nf {
                        if self.collinear(a, b, c) {
                            out.push((a, b, c));
                        }
                    }
                }
            }
            out
        })
    }

    /// Whether same-dimensional faces `c1 != c2` are opposed through the
    /// codimension-one face `d`: `d` lies below both, the zero supports of
    /// `c1` and `c2` agree, and every hyperplane vanishing on `d` but not on
    /// them separates them with opposite signs.
    pub fn opposed_through(&self, c1: usize, c2: usize, d: usize) -> bool {
        if c1 == c2 {
            return false;
        }
        let (f1, f2, fd) = (&self.faces[c1], &self.faces[c2], &self.faces[d]);
        if f1.dim != f2.dim || f1.dim == 0 || fd.dim + 1 != f1.dim {
            return false;
        }
        if !self.leq[d][c1] || !self.leq[d][c2] {
            return false;
        }
        if f1.signs.zero_support() != f2.signs.zero_support() {
            return false;
        }
        for t in 0..fd.signs.len() {
            if fd.signs.0[t] == Sign::Zero
                && f1.signs.0[t] != Sign::Zero
                && f2.signs.0[t] != f1.signs.0[t].flip()
            {
                return false;
            }
        }
        true
    }

    /// All opposed pairs, each with one witnessing middle face; pairs are
    /// ordered and deduplicated.
    pub fn opposed_pairs(&self) -> &[(usize, usize, usize)] {
        self.opposed_cache.get_or_init(|| {
            let mut seen = BTreeMap::new();
            for &(d, c1) in &self.hasse {
                for &(d2, c2) in &self.hasse {
                    if d == d2 && self.opposed_through(c1, c2, d) {
                        seen.entry((c1, c2)).or_insert(d);
                    }
                }
            }
            seen.into_iter().map(|((c1, c2), d)| (c1, c2, d)).collect()
        })
    }
}

fn embed_row(row: &[Rat], at: usize, width: usize) -> Vec<Rat> {
    let mut v = vec![q(0); width];
    v[at..at + row.len()].clone_from_slice(row);
    v
}

fn push_sign_constraint(sys: &mut LinearSystem<Rat>, row: Vec<Rat>, s: Sign) {
    match s {
        Sign::Zero => sys.equalities.push((row, q(0))),
        Sign::Plus => sys.strict_positive.push(row),
        Sign::Minus => sys.strict_positive.push(row.iter().map(|v| -v.clone()).collect()),
    }
}

/// Exact feasible-parameter test: does `(1-t) x + t y` realize `target` for
/// some `t` in the open unit interval? Every hyperplane contributes a linear
/// function of `t`; sign requirements intersect to an interval or a point.
fn segment_hits(arr: &Arrangement, x: &[Rat], y: &[Rat], target: &SignVector) -> bool {
    let mut lo = q(0);
    let mut hi = q(1);
    let mut pinned: Option<Rat> = None;
    for (h, &s) in arr.hyperplanes.iter().zip(&target.0) {
        let fx = linalg::dot(&h.normal, x);
        let fy = linalg::dot(&h.normal, y);
        let slope = fy.clone() - fx.clone();
        if slope == q(0) {
            let sign_ok = match s {
                Sign::Zero => fx == q(0),
                Sign::Plus => fx > q(0),
                Sign::Minus => fx < q(0),
            };
            if !sign_ok {
                return false;
            }
            continue;
        }
        let root = -fx / slope.clone();
        match s {
            Sign::Zero => match &pinned {
                None => pinned = Some(root),
                Some(p) if *p != root => return false,
                Some(_) => {}
            },
            Sign::Plus => {
                if slope > q(0) {
                    lo = lo.max(root);
                } else {
                    hi = hi.min(root);
                }
            }
            Sign::Minus => {
                if slope > q(0) {
                    hi = hi.min(root);
                } else {
                    lo = lo.max(root);
                }
            }
        }
    }
    match pinned {
        Some(t) => t > lo && t < hi,
        None => lo < hi,
    }
}

fn enumerate_faces(arr: &Arrangement) -> Result<Vec<Face>> {
    let mut out = Vec::new();
    let mut signs: Vec<Sign> = Vec::with_capacity(arr.hyperplanes.len());
    let root = vec![q(0); arr.ambient_dim];
    extend_prefix(arr, &mut signs, root, &mut out)?;
    out.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.signs.cmp(&b.signs)));
    Ok(out)
}

fn extend_prefix(
    arr: &Arrangement,
    signs: &mut Vec<Sign>,
    witness: Vec<Rat>,
    out: &mut Vec<Face>,
) -> Result<()> {
    let k = signs.len();
    if k == arr.hyperplanes.len() {
        let dim = face_dim(arr, signs)?;
        out.push(Face { signs: SignVector(signs.clone()), dim, witness });
        return Ok(());
    }
    let free = Sign::of(&linalg::dot(&arr.hyperplanes[k].normal, &witness));
    for s in [Sign::Zero, Sign::Minus, Sign::Plus] {
        signs.push(s);
        if s == free {
            extend_prefix(arr, signs, witness.clone(), out)?;
        } else if let Feasibility::Witness(w) =
            solve_feasible(&arr.cone_system(signs, k + 1))?
        {
            extend_prefix(arr, signs, w, out)?;
        }
        signs.pop();
    }
    Ok(())
}

fn face_dim(arr: &Arrangement, signs: &[Sign]) -> Result<usize> {
    let mut rows = arr.subspace.clone();
    for (h, &s) in arr.hyperplanes.iter().zip(signs) {
        if s == Sign::Zero {
            rows.push(h.normal.clone());
        }
    }
    Ok(arr.ambient_dim - linalg::rank(&rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::osp::OrderedSetPartition;

    fn signs(p: &FacePoset, s: &str) -> usize {
        p.lookup_signs(s).unwrap()
    }

    #[test]
    fn line_faces_in_canonical_order() {
        let p = FacePoset::braid(1).unwrap();
        let listed: Vec<(String, usize)> =
            p.faces().iter().map(|f| (f.signs.to_string(), f.dim)).collect();
        assert_eq!(
            listed,
            vec![("0".into(), 0), ("-".into(), 1), ("+".into(), 1)]
        );
        assert_eq!(p.origin(), 0);
        assert_eq!(p.chambers(), vec![1, 2]);
    }

    #[test]
    fn face_counts_follow_fubini() {
        assert_eq!(FacePoset::braid(1).unwrap().len(), 3);
        assert_eq!(FacePoset::braid(2).unwrap().len(), 13);
        assert_eq!(FacePoset::braid(3).unwrap().len(), 75);
    }

    #[test]
    fn faces_match_the_partition_oracle() {
        for n in 1..=3usize {
            let p = FacePoset::braid(n).unwrap();
            let mut geometric: Vec<(String, usize)> =
                p.faces().iter().map(|f| (f.signs.to_string(), f.dim)).collect();
            let mut combinatorial: Vec<(String, usize)> = OrderedSetPartition::enumerate(n + 1)
                .iter()
                .map(|q| (q.sign_vector().to_string(), q.dim()))
                .collect();
            geometric.sort();
            combinatorial.sort();
            assert_eq!(geometric, combinatorial, "n = {n}");
        }
    }

    #[test]
    fn witnesses_realize_their_faces() {
        let p = FacePoset::braid(3).unwrap();
        for f in p.faces() {
            assert_eq!(p.arrangement().sign_vector(&f.witness).unwrap(), f.signs);
        }
    }

    #[test]
    fn realizable_and_unrealizable_sign_vectors() {
        let p = FacePoset::braid(2).unwrap();
        let k = signs(&p, "+--");
        assert_eq!(p.face(k).dim, 2);
        // A cyclic pattern: x1 > x2, x1 < x3, x2 > x3 has no solution.
        assert!(p.lookup_signs("+-+").is_err());
        assert!(p.lookup_signs("&--").is_err());
        assert!(p.lookup_signs("+-").is_err());
    }

    #[test]
    fn closure_matches_partition_coarsening() {
        for n in 2..=3usize {
            let p = FacePoset::braid(n).unwrap();
            let parts = OrderedSetPartition::enumerate(n + 1);
            for a in &parts {
                let ia = p.index_of(&a.sign_vector()).unwrap();
                for b in &parts {
                    let ib = p.index_of(&b.sign_vector()).unwrap();
                    assert_eq!(p.leq(ia, ib), a.below(b));
                }
            }
        }
    }

    #[test]
    fn hasse_is_graded() {
        let p = FacePoset::braid(2).unwrap();
        for &(lo, hi) in p.hasse() {
            assert_eq!(p.face(lo).dim + 1, p.face(hi).dim);
        }
        // 6 rays over the origin plus two walls under each of 6 chambers.
        assert_eq!(p.hasse().len(), 18);
        assert_eq!(FacePoset::braid(1).unwrap().hasse().len(), 2);
    }

    #[test]
    fn origin_lies_below_everything() {
        let p = FacePoset::braid(2).unwrap();
        for k in 0..p.len() {
            assert!(p.leq(p.origin(), k));
        }
    }

    #[test]
    fn midpoints_witness_closure() {
        // lo <= hi means lo's witness is a limit of hi's cone, so midpoints
        // toward hi's witness stay inside hi.
        let p = FacePoset::braid(2).unwrap();
        for lo in 0..p.len() {
            for hi in 0..p.len() {
                if p.leq(lo, hi) {
                    let mid: Vec<Rat> = p
                        .face(lo)
                        .witness
                        .iter()
                        .zip(&p.face(hi).witness)
                        .map(|(u, v)| (u + v) * qq(1, 2))
                        .collect();
                    assert_eq!(
                        p.arrangement().sign_vector(&mid).unwrap(),
                        p.face(hi).signs
                    );
                }
            }
        }
    }

    #[test]
    fn collinearity_on_the_line() {
        let p = FacePoset::braid(1).unwrap();
        let (o, neg, pos) = (signs(&p, "0"), signs(&p, "-"), signs(&p, "+"));
        assert!(p.collinear(neg, o, pos));
        assert!(p.collinear(pos, o, neg));
        assert!(!p.collinear(neg, pos, o));
        assert!(!p.collinear(o, neg, pos));
        assert!(p.collinear(neg, neg, pos));
        assert!(p.collinear(neg, pos, pos));
        assert!(!p.collinear(o, neg, o));
        assert!(p.collinear(o, o, o));
    }

    #[test]
    fn collinearity_matches_oracle_on_the_line() {
        let p = FacePoset::braid(1).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(
                        p.collinear(a, b, c),
                        p.collinear_oracle(a, b, c).unwrap(),
                        "triple ({a}, {b}, {c})"
                    );
                }
            }
        }
    }

    #[test]
    fn collinearity_in_the_plane() {
        let p = FacePoset::braid(2).unwrap();
        let o = p.origin();
        // Opposite rays see the origin between them.
        assert!(p.collinear(signs(&p, "+0-"), o, signs(&p, "-0+")));
        // Two boundary rays of one chamber see that chamber between them.
        assert!(p.collinear(signs(&p, "0++"), signs(&p, "+++"), signs(&p, "++0")));
        // The screen kills a forced-sign mismatch outright.
        assert!(!p.collinear(signs(&p, "0++"), signs(&p, "-0+"), signs(&p, "++0")));
        // Non-opposite rays never straddle the origin.
        assert!(!p.collinear(signs(&p, "0++"), o, signs(&p, "++0")));
    }

    #[test]
    fn collinear_triples_are_cached_consistently() {
        let p = FacePoset::braid(1).unwrap();
        // 15 triples hold by the endpoint convention (9 + 9 - 3 overlaps),
        // and the origin sits between the two rays in both orientations.
        let triples = p.collinear_triples();
        assert_eq!(triples.len(), 17);
        assert!(std::ptr::eq(triples, p.collinear_triples()));
    }

    #[test]
    fn opposed_faces() {
        let line = FacePoset::braid(1).unwrap();
        let (o, neg, pos) = (0, 1, 2);
        assert!(line.opposed_through(neg, pos, o));
        assert!(!line.opposed_through(neg, neg, o));

        let p = FacePoset::braid(2).unwrap();
        let o = p.origin();
        assert!(p.opposed_through(signs(&p, "+++"), signs(&p, "-++"), signs(&p, "0++")));
        assert!(p.opposed_through(signs(&p, "0++"), signs(&p, "0--"), o));
        assert!(!p.opposed_through(signs(&p, "0++"), signs(&p, "--0"), o));
        assert!(!p.opposed_through(signs(&p, "+++"), signs(&p, "---"), o));
        let pairs = p.opposed_pairs();
        assert!(pairs.contains(&(signs(&p, "0++"), signs(&p, "0--"), o)));
        assert!(pairs.iter().all(|&(c1, c2, d)| p.opposed_through(c1, c2, d)));
    }
}
