//! Eigen-structure of the cat map and the decidable proximality oracle.
//!
//! Coordinates live in Q(sqrt5), where membership of a point in the
//! stable or unstable leaf through the origin reduces to two linear
//! equations over Q with integer unknowns: writing the difference as
//! (a1 + b1 s, a2 + b2 s) with s = sqrt5, a lift (d1 + m, d2 + n) lies on
//! the eigenline x = g y iff the rational and sqrt5 components match
//! separately. That makes proximality of a pair an exactly decidable
//! question, certified by the integer lift (m, n).

use crate::exactnum::{golden_ratio, golden_ratio_conj, QuadNum, Rational};
use crate::toral::{cat_matrix, torus_distance, IntMat2, TorusPoint};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::json;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ManifoldError {
    #[error("point {index} is not on the common {direction:?} leaf through the first point")]
    NotOnCommonLeaf { index: usize, direction: LeafDirection },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafDirection {
    Stable,
    Unstable,
}

/// Whether proximality is taken over the full Z-action or only forward
/// time (the semicascade), which sees only stable-leaf pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeSet {
    Full,
    Forward,
}

/// Exact eigen-data of the cat-map matrix, verified at construction.
#[derive(Debug, Clone)]
pub struct EigenData {
    pub expanding: QuadNum,
    pub contracting: QuadNum,
    pub expanding_vector: (QuadNum, QuadNum),
    pub contracting_vector: (QuadNum, QuadNum),
}

/// Eigenvalues (3 +- sqrt5)/2 with eigenvectors (g, 1) and (g', 1),
/// where g is the golden ratio. The defining identities A v = lambda v
/// are checked exactly before returning.
pub fn eigen_data() -> EigenData {
    let data = EigenData {
        expanding: crate::exactnum::eigenvalue_expanding(),
        contracting: crate::exactnum::eigenvalue_contracting(),
        expanding_vector: (golden_ratio(), QuadNum::one()),
        contracting_vector: (golden_ratio_conj(), QuadNum::one()),
    };
    let a = cat_matrix();
    for (value, vector) in [
        (&data.expanding, &data.expanding_vector),
        (&data.contracting, &data.contracting_vector),
    ] {
        let c = |n: &BigInt| QuadNum::from_rational(Rational::from(n.clone()));
        let av = (
            &(&c(&a.m11) * &vector.0) + &(&c(&a.m12) * &vector.1),
            &(&c(&a.m21) * &vector.0) + &(&c(&a.m22) * &vector.1),
        );
        assert_eq!(av.0, value * &vector.0, "eigen identity failed");
        assert_eq!(av.1, value * &vector.1, "eigen identity failed");
    }
    assert_eq!(&data.expanding * &data.contracting, QuadNum::one());
    assert!((&data.expanding - &QuadNum::one()).signum() > 0);
    assert!(data.contracting.signum() > 0);
    assert!((&QuadNum::one() - &data.contracting).signum() > 0);
    data
}

/// Slope dy/dx of the unstable leaves: 1/g = g - 1.
pub fn unstable_slope() -> QuadNum {
    &golden_ratio() - &QuadNum::one()
}

/// Slope dy/dx of the stable leaves: 1/g' = -g.
pub fn stable_slope() -> QuadNum {
    -golden_ratio()
}

/// Decides whether some integer lift (d1 + m, d2 + n) of `d` lies on the
/// eigenline through the origin for the given direction, i.e. satisfies
/// d1 + m = g (d2 + n) with g the golden ratio (unstable) or its
/// conjugate (stable). Returns the unique certificate when it exists.
pub fn leaf_membership(d: &TorusPoint, direction: LeafDirection) -> Option<(BigInt, BigInt)> {
    let a1 = d.x().rational_part();
    let b1 = d.x().sqrt5_part();
    let a2 = d.y().rational_part();
    let b2 = d.y().sqrt5_part();
    // Matching sqrt5 components of d1 + m = g (d2 + n) pins n; matching
    // rational components then pins m. Membership holds iff both land
    // on integers.
    let two = Rational::from(BigInt::from(2));
    let (n_rat, m_rat) = match direction {
        LeafDirection::Unstable => (&two * b1 - b2 - a2, b1 + &two * b2 - a1),
        LeafDirection::Stable => (b2 - &two * b1 - a2, -b1 - &two * b2 - a1),
    };
    if !n_rat.is_integer() || !m_rat.is_integer() {
        return None;
    }
    let m = m_rat.to_integer();
    let n = n_rat.to_integer();
    let g = match direction {
        LeafDirection::Unstable => golden_ratio(),
        LeafDirection::Stable => golden_ratio_conj(),
    };
    let lift_x = d.x() + &QuadNum::from_rational(Rational::from(m.clone()));
    let lift_y = d.y() + &QuadNum::from_rational(Rational::from(n.clone()));
    debug_assert!((&lift_x - &(&g * &lift_y)).is_zero());
    Some((m, n))
}

/// Signed leaf parameter of a certified lift: the t with
/// lift = (g t, t) along the eigenline, i.e. t = d2 + n.
pub fn leaf_parameter(d: &TorusPoint, certificate: &(BigInt, BigInt)) -> QuadNum {
    d.y() + &QuadNum::from_rational(Rational::from(certificate.1.clone()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProximalityKind {
    Equal,
    ProximalStable,
    ProximalUnstable,
    NotProximal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximalityVerdict {
    pub kind: ProximalityKind,
    /// Integer lift witnessing leaf membership of x - y, when proximal.
    pub certificate: Option<(BigInt, BigInt)>,
}

fn difference(x: &TorusPoint, y: &TorusPoint) -> TorusPoint {
    TorusPoint::new(x.x() - y.x(), x.y() - y.y())
}

/// Classifies a pair of torus points. Pairs on a common stable leaf or a
/// common unstable leaf (equivalently: whose difference lies on the
/// corresponding leaf through the origin) are proximal; everything else
/// is not. Homoclinic differences, which lie on both origin leaves, are
/// reported as stable.
pub fn proximal(x: &TorusPoint, y: &TorusPoint, time_set: TimeSet) -> ProximalityVerdict {
    if x == y {
        return ProximalityVerdict {
            kind: ProximalityKind::Equal,
            certificate: Some((BigInt::from(0), BigInt::from(0))),
        };
    }
    let d = difference(x, y);
    if let Some(cert) = leaf_membership(&d, LeafDirection::Stable) {
        return ProximalityVerdict {
            kind: ProximalityKind::ProximalStable,
            certificate: Some(cert),
        };
    }
    if time_set == TimeSet::Full {
        if let Some(cert) = leaf_membership(&d, LeafDirection::Unstable) {
            return ProximalityVerdict {
                kind: ProximalityKind::ProximalUnstable,
                certificate: Some(cert),
            };
        }
    }
    ProximalityVerdict {
        kind: ProximalityKind::NotProximal,
        certificate: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafDescriptor {
    pub base: TorusPoint,
    pub direction: LeafDirection,
}

/// The proximal cell of a point, classified by which origin leaves the
/// point itself lies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProximalCell {
    /// The origin: its cell is the union of both origin leaves.
    BothLeaves,
    /// Nonzero point of the unstable origin leaf: cell = that leaf.
    UnstableLeaf,
    /// Nonzero point of the stable origin leaf: cell = that leaf.
    StableLeaf,
    /// Point off both origin leaves. The cell is described as the pair
    /// of leaves through the point; this case is inferred from the leaf
    /// structure rather than covered by the classification above.
    PointOnly {
        stable: LeafDescriptor,
        unstable: LeafDescriptor,
    },
}

pub fn proximal_cell(x: &TorusPoint) -> ProximalCell {
    if x.is_origin() {
        return ProximalCell::BothLeaves;
    }
    if leaf_membership(x, LeafDirection::Stable).is_some() {
        return ProximalCell::StableLeaf;
    }
    if leaf_membership(x, LeafDirection::Unstable).is_some() {
        return ProximalCell::UnstableLeaf;
    }
    ProximalCell::PointOnly {
        stable: LeafDescriptor {
            base: x.clone(),
            direction: LeafDirection::Stable,
        },
        unstable: LeafDescriptor {
            base: x.clone(),
            direction: LeafDirection::Unstable,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationDirection {
    Forward,
    Backward,
}

fn step_matrix(direction: IterationDirection) -> IntMat2 {
    match direction {
        IterationDirection::Forward => cat_matrix(),
        IterationDirection::Backward => cat_matrix().inverse().expect("det 1"),
    }
}

/// Distances of the two orbits step by step, in the torus sup metric.
/// Exact arithmetic throughout; only the reported distance is a float.
pub fn contraction_profile(
    x: &TorusPoint,
    y: &TorusPoint,
    direction: IterationDirection,
    n_max: u32,
) -> Vec<(u32, f64)> {
    assert!(n_max >= 1);
    let m = step_matrix(direction);
    let mut px = x.clone();
    let mut py = y.clone();
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        out.push((n, torus_distance(&px, &py).to_f64()));
        if n < n_max {
            px = crate::toral::cat_apply(&m, &px);
            py = crate::toral::cat_apply(&m, &py);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct IProximalReport {
    /// Max pairwise distance at each step.
    pub profile: Vec<(u32, f64)>,
    /// Constant of the geometric tolerance schedule C * lc^n, with lc
    /// the contracting eigenvalue.
    pub schedule_constant: f64,
    pub within_schedule: bool,
}

/// Finite-stage signature of simultaneous proximality of a finite set on
/// one leaf: forward iteration for a stable leaf, backward for an
/// unstable one, must squeeze all pairwise distances under C * lc^n.
pub fn i_proximal_witness(
    points: &[TorusPoint],
    direction: LeafDirection,
    steps: u32,
) -> Result<IProximalReport, ManifoldError> {
    let mut params = vec![QuadNum::zero()];
    if let Some(first) = points.first() {
        for (i, p) in points.iter().enumerate().skip(1) {
            let d = difference(p, first);
            match leaf_membership(&d, direction) {
                Some(cert) => params.push(leaf_parameter(&d, &cert)),
                None => return Err(ManifoldError::NotOnCommonLeaf { index: i, direction }),
            }
        }
    }
    // Leaf parameters are additive, so pairwise lift distances come from
    // parameter differences; the sup-norm of a lift (g t, t) is |t| on
    // the stable leaf and g|t| on the unstable one.
    let mut c = 0f64;
    for i in 0..params.len() {
        for j in (i + 1)..params.len() {
            let t = (&params[i] - &params[j]).abs().to_f64();
            c = c.max(t);
        }
    }
    if direction == LeafDirection::Unstable {
        c *= golden_ratio().to_f64();
    }
    let iter_dir = match direction {
        LeafDirection::Stable => IterationDirection::Forward,
        LeafDirection::Unstable => IterationDirection::Backward,
    };
    let m = step_matrix(iter_dir);
    let lc = crate::exactnum::eigenvalue_contracting().to_f64();
    let mut current: Vec<TorusPoint> = points.to_vec();
    let mut profile = Vec::new();
    let mut within = true;
    for n in 0..=steps {
        let mut maxd = 0f64;
        for i in 0..current.len() {
            for j in (i + 1)..current.len() {
                maxd = maxd.max(torus_distance(&current[i], &current[j]).to_f64());
            }
        }
        profile.push((n, maxd));
        if maxd > c * lc.powi(n as i32) * (1.0 + 1e-9) + f64::MIN_POSITIVE {
            within = false;
        }
        if n < steps {
            for p in current.iter_mut() {
                *p = crate::toral::cat_apply(&m, p);
            }
        }
    }
    Ok(IProximalReport {
        profile,
        schedule_constant: c,
        within_schedule: within,
    })
}

/// JSON form of a verdict: kind, integer certificate, and the slope of
/// the witnessing leaf family in exact text form.
pub fn verdict_json(v: &ProximalityVerdict) -> serde_json::Value {
    let kind = match v.kind {
        ProximalityKind::Equal => "equal",
        ProximalityKind::ProximalStable => "proximal_stable",
        ProximalityKind::ProximalUnstable => "proximal_unstable",
        ProximalityKind::NotProximal => "not_proximal",
    };
    let slope = match v.kind {
        ProximalityKind::ProximalStable => Some(stable_slope().to_string()),
        ProximalityKind::ProximalUnstable => Some(unstable_slope().to_string()),
        _ => None,
    };
    json!({
        "kind": kind,
        "certificate": v.certificate.as_ref().map(|(m, n)| vec![m.to_string(), n.to_string()]),
        "leaf_slope": slope,
    })
}

pub fn cell_json(cell: &ProximalCell) -> serde_json::Value {
    match cell {
        ProximalCell::BothLeaves => json!({"class": "both_leaves"}),
        ProximalCell::UnstableLeaf => json!({"class": "unstable_leaf"}),
        ProximalCell::StableLeaf => json!({"class": "stable_leaf"}),
        ProximalCell::PointOnly { stable, unstable } => json!({
            "class": "point_only",
            "note": "cell reported as the two leaves through the point; \
                     inferred from the leaf structure, not one of the classified cases",
            "leaves": [
                {"base": stable.base.to_string(), "direction": "stable",
                 "slope": stable_slope().to_string()},
                {"base": unstable.base.to_string(), "direction": "unstable",
                 "slope": unstable_slope().to_string()},
            ],
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{eigenvalue_contracting, rat};
    use crate::toral::cat_apply;

    fn pt(xn: i64, xd: i64, yn: i64, yd: i64) -> TorusPoint {
        TorusPoint::from_rationals(rat(xn, xd), rat(yn, yd))
    }

    /// (3 - sqrt5)/2 on the x-axis: a homoclinic point lying on both
    /// origin leaves.
    fn stable_example() -> TorusPoint {
        TorusPoint::new(eigenvalue_contracting(), QuadNum::zero())
    }

    #[test]
    fn eigen_data_is_exact() {
        let e = eigen_data();
        assert_eq!(e.expanding, crate::exactnum::eigenvalue_expanding());
        assert_eq!(&e.expanding * &e.contracting, QuadNum::one());
    }

    #[test]
    fn origin_is_on_both_leaves() {
        let zero = BigInt::from(0);
        for dir in [LeafDirection::Stable, LeafDirection::Unstable] {
            assert_eq!(
                leaf_membership(&TorusPoint::origin(), dir),
                Some((zero.clone(), zero.clone()))
            );
        }
    }

    #[test]
    fn membership_certificate_matches_hand_computation() {
        // (3 - sqrt5)/2 - 1 = (1 - sqrt5)/2 = g' * (0 + 1)
        let cert = leaf_membership(&stable_example(), LeafDirection::Stable).unwrap();
        assert_eq!(cert, (BigInt::from(-1), BigInt::from(1)));
        // the same point is homoclinic: it also lifts onto the unstable line
        let cert_u = leaf_membership(&stable_example(), LeafDirection::Unstable).unwrap();
        assert_eq!(cert_u, (BigInt::from(-2), BigInt::from(-1)));
    }

    #[test]
    fn half_half_is_on_neither_leaf() {
        let p = pt(1, 2, 1, 2);
        assert_eq!(leaf_membership(&p, LeafDirection::Stable), None);
        assert_eq!(leaf_membership(&p, LeafDirection::Unstable), None);
        // cross-check: its orbit never approaches the origin's orbit
        let prof = contraction_profile(&TorusPoint::origin(), &p, IterationDirection::Forward, 50);
        assert!(prof.iter().all(|(_, d)| *d >= 0.1));
    }

    #[test]
    fn proximal_examples() {
        let p = pt(1, 5, 2, 5);
        assert_eq!(proximal(&p, &p, TimeSet::Full).kind, ProximalityKind::Equal);
        let v = proximal(&TorusPoint::origin(), &stable_example(), TimeSet::Full);
        assert_eq!(v.kind, ProximalityKind::ProximalStable);
        let w = proximal(&TorusPoint::origin(), &pt(1, 2, 1, 2), TimeSet::Full);
        assert_eq!(w.kind, ProximalityKind::NotProximal);
        assert_eq!(w.certificate, None);
    }

    #[test]
    fn forward_time_set_only_accepts_stable_pairs() {
        // the canonical stable example is homoclinic, so build a purely
        // unstable pair from leaf parameter 1/2 instead
        let u = TorusPoint::new(
            (&golden_ratio() * &QuadNum::from_parts(1, 2, 0, 1)).fract(),
            QuadNum::from_parts(1, 2, 0, 1),
        );
        let full = proximal(&TorusPoint::origin(), &u, TimeSet::Full);
        assert_eq!(full.kind, ProximalityKind::ProximalUnstable);
        let fwd = proximal(&TorusPoint::origin(), &u, TimeSet::Forward);
        assert_eq!(fwd.kind, ProximalityKind::NotProximal);
    }

    #[test]
    fn proximal_cell_examples() {
        assert_eq!(proximal_cell(&TorusPoint::origin()), ProximalCell::BothLeaves);
        assert_eq!(proximal_cell(&stable_example()), ProximalCell::StableLeaf);
        let off = TorusPoint::new(
            &golden_ratio() - &QuadNum::one(),
            QuadNum::from_parts(1, 2, 0, 1),
        );
        match proximal_cell(&off) {
            ProximalCell::PointOnly { stable, unstable } => {
                assert_eq!(stable.direction, LeafDirection::Stable);
                assert_eq!(unstable.direction, LeafDirection::Unstable);
            }
            other => panic!("expected point-only cell, got {other:?}"),
        }
        // nonzero point on the unstable leaf only: parameter 1/2
        let u = TorusPoint::new(
            (&golden_ratio() * &QuadNum::from_parts(1, 2, 0, 1)).fract(),
            QuadNum::from_parts(1, 2, 0, 1),
        );
        assert_eq!(proximal_cell(&u), ProximalCell::UnstableLeaf);
    }

    #[test]
    fn stable_pair_contracts_forward_with_ratio_near_lambda_prime() {
        let prof = contraction_profile(
            &TorusPoint::origin(),
            &stable_example(),
            IterationDirection::Forward,
            20,
        );
        for w in prof.windows(2).skip(3) {
            let ratio = w[1].1 / w[0].1;
            assert!((0.25..=0.5).contains(&ratio), "ratio {ratio} out of band");
        }
        assert!(prof.last().unwrap().1 < 1e-8);
    }

    #[test]
    fn equal_points_have_zero_profile() {
        let p = pt(2, 7, 3, 7);
        let prof = contraction_profile(&p, &p, IterationDirection::Backward, 5);
        assert!(prof.iter().all(|(_, d)| *d == 0.0));
    }

    #[test]
    fn unstable_pair_contracts_backward() {
        let x = TorusPoint::origin();
        let y = TorusPoint::new(&golden_ratio() - &QuadNum::one(), QuadNum::zero());
        // difference is homoclinic; restrict attention to the backward
        // direction, which contracts the unstable leaf
        let prof = contraction_profile(&x, &y, IterationDirection::Backward, 20);
        for w in prof.windows(2).skip(3) {
            let ratio = w[1].1 / w[0].1;
            assert!((0.25..=0.5).contains(&ratio), "ratio {ratio} out of band");
        }
    }

    #[test]
    fn i_proximal_witness_examples() {
        let base = TorusPoint::origin();
        let leaf_point = |t: QuadNum| {
            TorusPoint::new((&golden_ratio_conj() * &t).fract(), t.fract())
        };
        let points = vec![base, leaf_point(QuadNum::from_parts(1, 3, 0, 1)), leaf_point(QuadNum::from_parts(-1, 4, 0, 1))];
        let report = i_proximal_witness(&points, LeafDirection::Stable, 30).unwrap();
        assert!(report.within_schedule);
        assert!(report.profile.last().unwrap().1 < 1e-6);

        let single = i_proximal_witness(&[pt(1, 3, 2, 3)], LeafDirection::Stable, 5).unwrap();
        assert!(single.within_schedule);
        assert!(single.profile.iter().all(|(_, d)| *d == 0.0));

        let unstable_points: Vec<TorusPoint> = [rat(0, 1), rat(1, 3), rat(2, 5)]
            .into_iter()
            .map(|t| {
                let tq = QuadNum::from_rational(t);
                TorusPoint::new((&golden_ratio() * &tq).fract(), tq.fract())
            })
            .collect();
        let report = i_proximal_witness(&unstable_points, LeafDirection::Unstable, 30).unwrap();
        assert!(report.within_schedule);
        assert!(report.profile.last().unwrap().1 < 1e-6);

        let bad = i_proximal_witness(
            &[TorusPoint::origin(), pt(1, 2, 1, 2)],
            LeafDirection::Stable,
            5,
        );
        assert!(matches!(bad, Err(ManifoldError::NotOnCommonLeaf { index: 1, .. })));
    }

    #[test]
    fn verdicts_are_symmetric_and_invariant() {
        let a = cat_matrix();
        let samples = [
            (TorusPoint::origin(), stable_example()),
            (pt(1, 3, 2, 3), pt(2, 3, 1, 3)),
            (pt(1, 7, 3, 7), pt(1, 7, 3, 7)),
            (
                pt(1, 4, 1, 4),
                TorusPoint::new(
                    &QuadNum::from_parts(1, 4, 0, 1) + &(&golden_ratio_conj() * &QuadNum::from_parts(2, 3, 0, 1)),
                    &QuadNum::from_parts(1, 4, 0, 1) + &QuadNum::from_parts(2, 3, 0, 1),
                ),
            ),
        ];
        for (x, y) in &samples {
            let v = proximal(x, y, TimeSet::Full);
            let w = proximal(y, x, TimeSet::Full);
            assert_eq!(v.kind, w.kind, "symmetry failed for {x}, {y}");
            let fx = cat_apply(&a, x);
            let fy = cat_apply(&a, y);
            let fv = proximal(&fx, &fy, TimeSet::Full);
            assert_eq!(v.kind, fv.kind, "invariance failed for {x}, {y}");
        }
    }

    #[test]
    fn certificates_satisfy_the_defining_identity() {
        let pairs = [
            (TorusPoint::origin(), stable_example()),
            (
                pt(1, 4, 1, 4),
                TorusPoint::new(
                    &QuadNum::from_parts(1, 4, 0, 1) + &(&golden_ratio() * &QuadNum::from_parts(3, 5, 0, 1)),
                    &QuadNum::from_parts(1, 4, 0, 1) + &QuadNum::from_parts(3, 5, 0, 1),
                ),
            ),
        ];
        for (x, y) in &pairs {
            let v = proximal(x, y, TimeSet::Full);
            let (m, n) = v.certificate.clone().expect("expected a certificate");
            let d = difference(x, y);
            let g = match v.kind {
                ProximalityKind::ProximalStable => golden_ratio_conj(),
                ProximalityKind::ProximalUnstable => golden_ratio(),
                ref other => panic!("unexpected kind {other:?}"),
            };
            let lift_x = d.x() + &QuadNum::from_rational(Rational::from(m));
            let lift_y = d.y() + &QuadNum::from_rational(Rational::from(n));
            assert!((&lift_x - &(&g * &lift_y)).is_zero());
        }
    }

    #[test]
    fn distinct_rational_points_are_never_proximal() {
        for (p, q) in [
            (pt(1, 2, 1, 2), pt(1, 3, 2, 3)),
            (pt(0, 1, 1, 5), pt(0, 1, 2, 5)),
            (pt(3, 8, 5, 8), pt(3, 8, 7, 8)),
        ] {
            assert_eq!(proximal(&p, &q, TimeSet::Full).kind, ProximalityKind::NotProximal);
        }
    }

    #[test]
    fn leaf_kind_is_preserved_by_the_map() {
        let a = cat_matrix();
        let x = pt(2, 9, 5, 9);
        let y = TorusPoint::new(
            x.x() + &(&golden_ratio_conj() * &QuadNum::from_parts(1, 2, 0, 1)),
            x.y() + &QuadNum::from_parts(1, 2, 0, 1),
        );
        let before = leaf_membership(&difference(&x, &y), LeafDirection::Stable);
        let after = leaf_membership(
            &difference(&cat_apply(&a, &x), &cat_apply(&a, &y)),
            LeafDirection::Stable,
        );
        assert!(before.is_some() && after.is_some());
    }

    #[test]
    fn verdict_json_shape() {
        // the difference convention is x - y, so the certificate is the
        // negated-lift counterpart of the membership example above
        let v = proximal(&TorusPoint::origin(), &stable_example(), TimeSet::Full);
        let j = verdict_json(&v);
        assert_eq!(j["kind"], "proximal_stable");
        assert_eq!(j["certificate"][0], "0");
        assert_eq!(j["certificate"][1], "-1");
        assert_eq!(j["leaf_slope"], "-1/2 - 1/2*sqrt5");
        let w = proximal(&stable_example(), &TorusPoint::origin(), TimeSet::Full);
        assert_eq!(w.certificate, Some((BigInt::from(-1), BigInt::from(1))));
    }
}
