//! The relation families a double representation must satisfy, each checked
//! exhaustively with exact arithmetic and reported as a list of violations
//! instead of a hard failure.
//!
//! The four families: composition (transport along a chain equals direct
//! transport, both map directions), monotonicity (`gamma . delta` is the
//! identity on the upper face), transitivity (transport through the origin
//! respects every collinear triple of faces), and invertibility (transport
//! between faces opposed through a common wall is an isomorphism).
//! Representations passing all four form the subcategory the rest of the
//! crate cares about; [`is_in_j`] is the aggregate check.

use std::collections::BTreeMap;

use crate::rep::{mm, DoubleRep};
use crate::RatMatrix;

/// One failed matrix identity: which relation, the faces involved (as sign
/// strings), and the identity that failed to hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: String,
    pub faces: Vec<String>,
    pub identity: String,
}

/// Outcome of one or more relation checks; stable, deterministic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn face_name(rep: &DoubleRep, k: usize) -> String {
    rep.poset().face(k).signs.to_string()
}

/// Checks the composition identities over every chain `lo < mid < hi`, in
/// both map directions. Because stored maps on non-cover pairs were composed
/// along one canonical chain, a failure here is exactly path-dependence of
/// the generating edge maps.
pub fn validate_structure(rep: &DoubleRep) -> ViolationReport {
    let p = rep.poset();
    let mut violations = Vec::new();
    for (lo, hi) in p.strict_pairs() {
        for mid in 0..p.len() {
            if mid == lo || mid == hi || !p.leq(lo, mid) || !p.leq(mid, hi) {
                continue;
            }
            let chain = mm(&rep.gamma(mid, hi), &rep.gamma(lo, mid));
            let direct = rep.gamma(lo, hi);
            if chain != direct {
                violations.push(Violation {
                    relation: "composition".into(),
                    faces: vec![face_name(rep, lo), face_name(rep, mid), face_name(rep, hi)],
                    identity: format!(
                        "gamma chained through the middle face gives {chain}, stored map is {direct}"
                    ),
                });
            }
            let chain = mm(&rep.delta(lo, mid), &rep.delta(mid, hi));
            let direct = rep.delta(lo, hi);
            if chain != direct {
                violations.push(Violation {
                    relation: "composition".into(),
                    faces: vec![face_name(rep, lo), face_name(rep, mid), face_name(rep, hi)],
                    identity: format!(
                        "delta chained through the middle face gives {chain}, stored map is {direct}"
                    ),
                });
            }
        }
    }
    ViolationReport { violations }
}

/// Checks `gamma(lo, hi) . delta(lo, hi) = Id` on the upper face of every
/// comparable pair; this is what forces `delta` to be a split injection.
pub fn check_monotonicity(rep: &DoubleRep) -> ViolationReport {
    let p = rep.poset();
    let mut violations = Vec::new();
    for (lo, hi) in p.strict_pairs() {
        let product = mm(&rep.gamma(lo, hi), &rep.delta(lo, hi));
        if !product.is_identity() {
            violations.push(Violation {
                relation: "monotonicity".into(),
                faces: vec![face_name(rep, lo), face_name(rep, hi)],
                identity: format!("gamma . delta = {product}, expected the identity"),
            });
        }
    }
    ViolationReport { violations }
}

/// Checks `phi(b, c) . phi(a, b) = phi(a, c)` for every collinear face
/// triple `(a, b, c)` of the poset.
pub fn check_transitivity(rep: &DoubleRep) -> ViolationReport {
    let p = rep.poset();
    let mut phis: BTreeMap<(usize, usize), RatMatrix> = BTreeMap::new();
    let mut phi = |a: usize, b: usize| -> RatMatrix {
        phis.entry((a, b)).or_insert_with(|| rep.phi(a, b)).clone()
    };
    let mut violations = Vec::new();
    for &(a, b, c) in p.collinear_triples() {
        let chained = mm(&phi(b, c), &phi(a, b));
        let direct = phi(a, c);
        if chained != direct {
            violations.push(Violation {
                relation: "transitivity".into(),
                faces: vec![face_name(rep, a), face_name(rep, b), face_name(rep, c)],
                identity: format!(
                    "phi through the middle face gives {chained}, direct transport is {direct}"
                ),
            });
        }
    }
    ViolationReport { violations }
}

/// Checks that transport between opposed faces is a square invertible
/// matrix, for every opposed pair of the poset.
pub fn check_invertibility(rep: &DoubleRep) -> ViolationReport {
    let p = rep.poset();
    let mut violations = Vec::new();
    for &(c1, c2, d) in p.opposed_pairs() {
        let m = rep.phi(c1, c2);
        let invertible = m.rows() == m.cols() && m.rank() == m.rows();
        if !invertible {
            violations.push(Violation {
                relation: "invertibility".into(),
                faces: vec![face_name(rep, c1), face_name(rep, c2), face_name(rep, d)],
                identity: format!(
                    "transport between the opposed faces is {m} of shape {}x{}, not invertible",
                    m.rows(),
                    m.cols()
                ),
            });
        }
    }
    ViolationReport { violations }
}

/// Aggregate membership check. Composition is a prerequisite for the other
/// families to even be meaningful (they quantify over composite transports),
/// so its violations short-circuit the report.
pub fn is_in_j(rep: &DoubleRep) -> ViolationReport {
    let structure = validate_structure(rep);
    if !structure.ok() {
        return structure;
    }
    let mut violations = structure.violations;
    violations.extend(check_monotonicity(rep).violations);
    violations.extend(check_transitivity(rep).violations);
    violations.extend(check_invertibility(rep).violations);
    ViolationReport { violations }
}
