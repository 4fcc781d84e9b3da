//! The natural orientation of the four positive directions and orientation
//! tests for isometries: the direct projection-determinant test and the
//! degree-zero criterion with its positive-cone class.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Int, Rat, RatMatrix};
use crate::hodge::{BField, SurfaceDatum};
use crate::mukai::{
    exp_b, lambda_dot, pairing, v_hypersurface, v_point, v_structure_sheaf, Isometry, MukaiVector,
    LAMBDA_RANK,
};
use crate::report;

/// The four positive directions exp(B)·⟨Re σ, Im σ, 1 − ω²/2, ω⟩, in that
/// order, together with their source data. The twisted frame is the exp(B)
/// transport of the untwisted one.
#[derive(Clone, Debug)]
pub struct OrientedFrame {
    pub vectors: [MukaiVector; 4],
    pub surface: SurfaceDatum,
    pub b: BField,
    pub omega: Vec<Rat>,
}

pub fn oriented_frame(s: &SurfaceDatum, b: &BField, omega: &[Rat]) -> Result<OrientedFrame> {
    let p = s.period.as_ref().ok_or(Error::MissingPeriod)?;
    if !lambda_dot(omega, &p.x1).is_zero() || !lambda_dot(omega, &p.x2).is_zero() {
        return Err(Error::InvalidPeriod(
            "ω must be orthogonal to the period".into(),
        ));
    }
    let omega_sq = lambda_dot(omega, omega);
    if !omega_sq.is_positive() {
        return Err(Error::InvalidPeriod(format!(
            "ω² = {} must be positive",
            report::rat_string(&omega_sq)
        )));
    }
    let half = Rat::new(Int::one(), Int::from(2));
    let f3_untwisted = MukaiVector::new(
        Rat::one(),
        vec![Rat::zero(); LAMBDA_RANK],
        -half * &omega_sq,
    );
    let vectors = [
        exp_b(&b.b, &MukaiVector::from_degree2(p.x1.clone())),
        exp_b(&b.b, &MukaiVector::from_degree2(p.x2.clone())),
        exp_b(&b.b, &f3_untwisted),
        exp_b(&b.b, &MukaiVector::from_degree2(omega.to_vec())),
    ];
    let frame = OrientedFrame {
        vectors,
        surface: s.clone(),
        b: b.clone(),
        omega: omega.to_vec(),
    };
    let gram = frame.gram();
    // positive definiteness via leading principal minors
    for k in 1..=4 {
        let minor = RatMatrix::from_fn(k, k, |i, j| gram[(i, j)].clone()).det();
        if !minor.is_positive() {
            return Err(Error::NotPositivePlane);
        }
    }
    Ok(frame)
}

impl OrientedFrame {
    pub fn gram(&self) -> RatMatrix {
        RatMatrix::from_fn(4, 4, |i, j| pairing(&self.vectors[i], &self.vectors[j]))
    }
}

/// Compose g with the orthogonal projection onto the destination frame and
/// compare orientations: the verdict is the sign of the 4×4 determinant.
/// The projection is nondegenerate for isometries between positive
/// four-spaces in this signature, so a zero determinant cannot occur.
pub fn is_orientation_preserving(g: &Isometry, src: &OrientedFrame, dst: &OrientedFrame) -> bool {
    let gram_dst = dst.gram();
    let mut m = RatMatrix::zero(4, 4);
    for i in 0..4 {
        let image = g.apply(&src.vectors[i]);
        let rhs: Vec<Rat> = (0..4).map(|k| pairing(&dst.vectors[k], &image)).collect();
        let coeffs = gram_dst
            .solve(&rhs)
            .expect("frame gram is positive definite");
        for k in 0..4 {
            m[(k, i)] = coeffs[k].clone();
        }
    }
    let det = m.det();
    assert!(!det.is_zero(), "projection between positive four-spaces is nondegenerate");
    det.is_positive()
}

/// The degree-zero reads r, χ, χ_H of an isometry against the standard
/// classes, and the complex scalar λ they determine.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionData {
    #[serde(serialize_with = "report::ser_rat")]
    pub r: Rat,
    #[serde(serialize_with = "report::ser_rat")]
    pub chi: Rat,
    #[serde(serialize_with = "report::ser_rat")]
    pub chi_h: Rat,
    #[serde(serialize_with = "report::ser_rat_pair")]
    pub lambda: (Rat, Rat),
}

pub fn criterion_data(g: &Isometry, omega: &[Rat]) -> CriterionData {
    let omega_sq = lambda_dot(omega, omega);
    let half = Rat::new(Int::one(), Int::from(2));
    let r = g.apply(&v_point()).r;
    let chi = g.apply(&v_structure_sheaf()).r;
    let chi_h = g.apply(&v_hypersurface(omega)).r;
    let re = &chi - &r * (&half * &omega_sq + Rat::one());
    let im = &chi_h + &r * (&half * &omega_sq);
    CriterionData {
        r,
        chi,
        chi_h,
        lambda: (re, im),
    }
}

/// The degree-2 class a with g(exp(iω)) = λ·exp(b + ia), extracted from the
/// images of the two basic classes. Requires r ≠ 0.
pub fn class_a(g: &Isometry, omega: &[Rat]) -> Result<Vec<Rat>> {
    let data = criterion_data(g, omega);
    if data.r.is_zero() {
        return Err(Error::CriterionInapplicable);
    }
    let omega_sq = lambda_dot(omega, omega);
    let half = Rat::new(Int::one(), Int::from(2));
    let half_sq = &half * &omega_sq;

    // v(u0) = (−r, 0, −r + χ), v(u1) = (0, −rω, rω²/2 + χ_H)
    let v_u0 = MukaiVector::new(
        -data.r.clone(),
        vec![Rat::zero(); LAMBDA_RANK],
        -&data.r + &data.chi,
    );
    let v_u1 = MukaiVector::new(
        Rat::zero(),
        omega.iter().map(|x| -&data.r * x).collect(),
        &data.r * &half_sq + &data.chi_h,
    );
    let coeff0 = &data.chi_h / &data.r + &half_sq;
    let coeff1 = &half_sq + Rat::one() - &data.chi / &data.r;
    let combo = v_u0.scale(&coeff0).add(&v_u1.scale(&coeff1));
    let image = g.apply(&combo);

    let norm_sq = &data.lambda.0 * &data.lambda.0 + &data.lambda.1 * &data.lambda.1;
    assert!(
        !norm_sq.is_zero(),
        "λ never vanishes for isometries between positive planes"
    );
    Ok(image.c.iter().map(|x| x / &norm_sq).collect())
}

/// a lies in the positive cone: a is of type (1,1), a² > 0 and a·ω' > 0.
pub fn positive_cone_check(a: &[Rat], s: &SurfaceDatum, omega_ref: &[Rat]) -> Result<bool> {
    let p = s.period.as_ref().ok_or(Error::MissingPeriod)?;
    for (name, v) in [("a", a), ("ω'", omega_ref)] {
        if !lambda_dot(v, &p.x1).is_zero() || !lambda_dot(v, &p.x2).is_zero() {
            return Err(Error::TypeMismatch(format!(
                "{name} is not orthogonal to the period"
            )));
        }
    }
    let ref_sq = lambda_dot(omega_ref, omega_ref);
    if !ref_sq.is_positive() {
        return Err(Error::TypeMismatch("ω'² must be positive".into()));
    }
    let a_sq = lambda_dot(a, a);
    Ok(a_sq.is_positive() && lambda_dot(a, omega_ref).is_positive())
}

/// Orientation verdict via the positive-cone class; defined only for r ≠ 0
/// and contracted to agree with the direct projection test there.
pub fn criterion_orientation(
    g: &Isometry,
    src: &OrientedFrame,
    dst: &OrientedFrame,
) -> Result<bool> {
    let a = class_a(g, &src.omega)?;
    positive_cone_check(&a, &dst.surface, &dst.omega)
}
