//! Lattice-theoretic model of (twisted) K3 Hodge structures: surfaces given by
//! their transcendental lattice, rational periods, twisted Picard and
//! transcendental lattices, Brauer classes and equivalence fingerprints.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{
    clear_denominators, rat_vec_from_int, Int, IntMatrix, Rat,
};
use crate::lattice::{
    isometry_search, positive_directions, IntLattice, LatticeInvariants, Sublattice,
};
use crate::mukai::{
    b_field_denominator, exp_b, lambda_dot, lambda_lattice, mukai_lattice, Isometry,
    MukaiVector, LAMBDA_RANK, MUKAI_RANK,
};
use crate::report::{self, Assertion};

/// A rational period: real and imaginary part of the holomorphic form in
/// Λ-coordinates, with x1² = x2² > 0 and x1·x2 = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Period {
    pub x1: Vec<Rat>,
    pub x2: Vec<Rat>,
}

impl Period {
    pub fn new(x1: Vec<Rat>, x2: Vec<Rat>) -> Result<Self> {
        if x1.len() != LAMBDA_RANK || x2.len() != LAMBDA_RANK {
            return Err(Error::InvalidPeriod("period vectors must have 22 coordinates".into()));
        }
        let n1 = lambda_dot(&x1, &x1);
        let n2 = lambda_dot(&x2, &x2);
        let cross = lambda_dot(&x1, &x2);
        if !cross.is_zero() {
            return Err(Error::InvalidPeriod(format!(
                "x1·x2 = {} must vanish",
                report::rat_string(&cross)
            )));
        }
        if n1 != n2 {
            return Err(Error::InvalidPeriod(format!(
                "x1² = {} and x2² = {} must agree",
                report::rat_string(&n1),
                report::rat_string(&n2)
            )));
        }
        if !n1.is_positive() {
            return Err(Error::InvalidPeriod(format!(
                "x1² = {} must be positive",
                report::rat_string(&n1)
            )));
        }
        Ok(Period { x1, x2 })
    }

    pub fn norm(&self) -> Rat {
        lambda_dot(&self.x1, &self.x1)
    }
}

/// A K3 surface presented lattice-theoretically: the primitive transcendental
/// sublattice T ⊂ Λ, optionally with an explicit rational period spanning it.
#[derive(Clone, Debug)]
pub struct SurfaceDatum {
    pub t: Sublattice,
    pub period: Option<Period>,
}

/// T = integral points of the rational plane spanned by the period.
pub fn surface_from_period(p: Period) -> Result<SurfaceDatum> {
    let lam = lambda_lattice();
    let (_, r1) = clear_denominators(&p.x1);
    let (_, r2) = clear_denominators(&p.x2);
    let span = IntMatrix::from_row_vectors(vec![r1, r2]);
    let sub = Sublattice::new(lam, span)?;
    let t = sub.saturation();
    if t.rank() != 2 {
        return Err(Error::InvalidPeriod(format!(
            "period span meets Λ in rank {} instead of 2",
            t.rank()
        )));
    }
    let sig = t
        .gram()
        .gram
        .signature_of_symmetric()
        .expect("gram symmetric");
    if sig != (2, 0, 0) {
        return Err(Error::InvalidPeriod(format!(
            "transcendental lattice has signature {:?}, expected (2,0)",
            sig
        )));
    }
    Ok(SurfaceDatum {
        t,
        period: Some(p),
    })
}

/// Surface with prescribed transcendental lattice and no explicit period.
pub fn surface_from_transcendental(basis: IntMatrix) -> Result<SurfaceDatum> {
    let lam = lambda_lattice();
    let t = Sublattice::new(lam, basis)?;
    if !t.is_saturated() {
        return Err(Error::NotSaturated);
    }
    Ok(SurfaceDatum { t, period: None })
}

impl SurfaceDatum {
    /// The Picard lattice: orthogonal complement of T in Λ.
    pub fn pic(&self) -> Sublattice {
        self.t.orthogonal_complement()
    }

    /// The surface with the full lattice as transcendental part.
    pub fn maximal() -> SurfaceDatum {
        SurfaceDatum {
            t: Sublattice::new(lambda_lattice(), IntMatrix::identity(LAMBDA_RANK)).unwrap(),
            period: None,
        }
    }
}

/// Algebraicity: the Picard lattice contains a positive direction.
pub fn is_algebraic(s: &SurfaceDatum) -> bool {
    positive_directions(&s.pic()) >= 1
}

/// A rational degree-2 class with its denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BField {
    pub b: Vec<Rat>,
    pub lambda: Int,
}

impl BField {
    pub fn new(b: Vec<Rat>) -> Self {
        assert_eq!(b.len(), LAMBDA_RANK);
        let lambda = b_field_denominator(&b);
        BField { b, lambda }
    }

    pub fn zero() -> Self {
        BField::new(vec![Rat::zero(); LAMBDA_RANK])
    }

    pub fn scaled(&self, k: i64) -> BField {
        BField::new(self.b.iter().map(|x| x * Rat::from_integer(Int::from(k))).collect())
    }
}

/// The values of the induced map T → Q/Z on a basis of T, with its order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerClass {
    #[serde(serialize_with = "report::ser_rat_vec")]
    pub values: Vec<Rat>,
    #[serde(serialize_with = "report::ser_int")]
    pub order: Int,
}

fn frac_part(x: &Rat) -> Rat {
    let f = x - Rat::from_integer(x.floor().to_integer());
    debug_assert!(!f.is_negative() && f < Rat::one());
    f
}

/// Pairing values of B against a basis of T, reduced mod Z into [0,1).
pub fn brauer_class(s: &SurfaceDatum, b: &BField) -> BrauerClass {
    let mut values = Vec::with_capacity(s.t.rank());
    let mut order = Int::one();
    for i in 0..s.t.rank() {
        let t_i = rat_vec_from_int(s.t.basis.row(i));
        let v = frac_part(&lambda_dot(&b.b, &t_i));
        order = order.lcm(v.denom());
        values.push(v);
    }
    BrauerClass { values, order }
}

/// The finite-index sublattice {t ∈ T : B·t ∈ Z} of T, in ambient Λ
/// coordinates. Not saturated in general: its index in T equals the order of
/// the class.
pub fn brauer_kernel(s: &SurfaceDatum, b: &BField) -> Sublattice {
    let class = brauer_class(s, b);
    let m = s.t.rank();
    let k = class.order.clone();
    // x ∈ Z^m lies in the kernel iff Σ x_i·(k·v_i) ≡ 0 mod k
    let mut row: Vec<Int> = class
        .values
        .iter()
        .map(|v| (v * Rat::from_integer(k.clone())).to_integer())
        .collect();
    row.push(k);
    let rel = IntMatrix::from_row_vectors(vec![row]);
    let kernel = rel.integer_kernel();
    // drop the auxiliary coordinate, keep full-rank projections
    let coeff_rows: Vec<Vec<Int>> = (0..kernel.rows())
        .map(|i| kernel.row(i)[..m].to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let coeffs = IntMatrix::from_row_vectors(coeff_rows);
    let in_lambda = coeffs.mul(&s.t.basis);
    let (h, _) = in_lambda.hnf();
    Sublattice {
        ambient: lambda_lattice(),
        basis: h,
    }
}

/// The twisted Picard lattice {β ∈ Λ̃ : exp(−B)β ⊥ T over Q}, saturated and
/// HNF-normalized.
pub fn twisted_picard(s: &SurfaceDatum, b: &BField) -> Sublattice {
    let lam = lambda_lattice().gram;
    let m = s.t.rank();
    let lambda = &b.lambda;
    // condition per T basis row t: c·t − r(B·t) = 0, scaled by λ to stay integral
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let t_i = s.t.basis.row(i);
        let t_rat = rat_vec_from_int(t_i);
        let bt = lambda_dot(&b.b, &t_rat) * Rat::from_integer(lambda.clone());
        debug_assert!(bt.is_integer());
        let mut row = Vec::with_capacity(MUKAI_RANK);
        row.push(-bt.to_integer());
        let gt = lam.mul_vec(t_i);
        row.extend(gt.into_iter().map(|x| x * lambda));
        row.push(Int::zero());
        rows.push(row);
    }
    let conditions = IntMatrix::from_row_vectors(rows);
    Sublattice {
        ambient: mukai_lattice(),
        basis: conditions.integer_kernel(),
    }
}

/// Orthogonal complement of the twisted Picard lattice in Λ̃.
pub fn twisted_transcendental(s: &SurfaceDatum, b: &BField) -> Sublattice {
    twisted_picard(s, b).orthogonal_complement()
}

/// Twisted algebraicity: the twisted Picard lattice contains two positive
/// directions.
pub fn is_twisted_algebraic(s: &SurfaceDatum, b: &BField) -> bool {
    positive_directions(&twisted_picard(s, b)) >= 2
}

/// Membership in the twisted (1,1)-part: the Λ-component of exp(−B)·v pairs
/// to zero with every basis vector of T.
pub fn is_twisted_pp(s: &SurfaceDatum, b: &BField, v: &MukaiVector) -> bool {
    let neg_b: Vec<Rat> = b.b.iter().map(|x| -x.clone()).collect();
    let w = exp_b(&neg_b, v);
    (0..s.t.rank()).all(|i| {
        let t_i = rat_vec_from_int(s.t.basis.row(i));
        lambda_dot(&w.c, &t_i).is_zero()
    })
}

/// Outcome of checking that exp(−B) carries the twisted transcendental
/// lattice onto the kernel of the induced Brauer map, preserving the form.
#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub passed: bool,
    pub t_b_rank: usize,
    pub images_in_degree_two: bool,
    pub lattices_equal: bool,
    pub gram_preserved: bool,
    #[serde(serialize_with = "report::ser_int_matrix")]
    pub image_basis: IntMatrix,
    #[serde(serialize_with = "report::ser_int_matrix")]
    pub kernel_basis: IntMatrix,
}

pub fn verify_exp_bridge(s: &SurfaceDatum, b: &BField) -> BridgeReport {
    let tb = twisted_transcendental(s, b);
    let kernel = brauer_kernel(s, b);
    let neg_b: Vec<Rat> = b.b.iter().map(|x| -x.clone()).collect();

    let mut degree_two = true;
    let mut image_rows: Vec<Vec<Int>> = Vec::with_capacity(tb.rank());
    for i in 0..tb.rank() {
        let beta = MukaiVector::from_coords(&rat_vec_from_int(tb.basis.row(i)));
        let img = exp_b(&neg_b, &beta);
        if !img.r.is_zero() || !img.s.is_zero() || !img.is_integral() {
            degree_two = false;
        }
        image_rows.push(img.c.iter().map(|x| x.to_integer()).collect());
    }
    let images = IntMatrix::from_row_vectors(image_rows);
    let (image_hnf, _) = images.hnf();

    let lattices_equal = degree_two && image_hnf == kernel.basis;

    // the form is transported: Gram of the images under Λ must equal the Gram
    // of the original basis under the Mukai pairing
    let lam = lambda_lattice().gram;
    let muk = mukai_lattice().gram;
    let g_img = images.mul(&lam).mul(&images.transpose());
    let g_src = tb.basis.mul(&muk).mul(&tb.basis.transpose());
    let gram_preserved = g_img == g_src;

    BridgeReport {
        passed: degree_two && lattices_equal && gram_preserved,
        t_b_rank: tb.rank(),
        images_in_degree_two: degree_two,
        lattices_equal,
        gram_preserved,
        image_basis: image_hnf,
        kernel_basis: kernel.basis,
    }
}

/// Discriminant bookkeeping for a Brauer class: the index identity
/// |disc T(X,α)| = k²·|disc T(X)| is asserted; the swapped variant
/// k²·|disc T(X,α)| = |disc T(X)| is evaluated and recorded alongside.
#[derive(Clone, Debug, Serialize)]
pub struct OrderDiscReport {
    #[serde(serialize_with = "report::ser_int")]
    pub order: Int,
    #[serde(serialize_with = "report::ser_int")]
    pub disc_t: Int,
    #[serde(serialize_with = "report::ser_int")]
    pub disc_t_alpha: Int,
    pub index_identity_holds: bool,
    pub swapped_identity_holds: bool,
}

pub fn order_disc_report(s: &SurfaceDatum, b: &BField) -> OrderDiscReport {
    let class = brauer_class(s, b);
    let k = class.order.clone();
    let disc_t = s.t.gram().gram.det().abs();
    let kernel = brauer_kernel(s, b);
    let disc_t_alpha = kernel.gram().gram.det().abs();
    let k2 = &k * &k;
    OrderDiscReport {
        index_identity_holds: disc_t_alpha == &k2 * &disc_t,
        swapped_identity_holds: &k2 * &disc_t_alpha == disc_t,
        order: k,
        disc_t,
        disc_t_alpha,
    }
}

/// One enumerated homomorphism T → Z/k with the invariants of its kernel.
#[derive(Clone, Debug, Serialize)]
pub struct BrauerEntry {
    pub values: Vec<u32>,
    pub order: u32,
    pub kernel: LatticeInvariants,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerBucket {
    pub order: u32,
    pub kernel: LatticeInvariants,
    pub count: usize,
    /// representatives pairwise isometric within the search bound
    pub kernels_isometric_within_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrauerEnumeration {
    pub modulus: u32,
    pub total: usize,
    pub surjective: usize,
    pub entries: Vec<BrauerEntry>,
    pub buckets: Vec<BrauerBucket>,
}

/// Enumerate all homomorphisms T → Z/k as value tuples on the basis of `t`,
/// with kernel-lattice invariants and a bucket report. The number of tuples
/// k^rank must stay within `budget`.
pub fn enumerate_brauer(
    t: &IntLattice,
    k: u32,
    surjective_only: bool,
    budget: u64,
) -> Result<BrauerEnumeration> {
    let m = t.rank();
    let required = (k as u128).pow(m as u32);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: budget as u128,
        });
    }
    let mut entries = Vec::new();
    let mut values = vec![0u32; m];
    let mut surjective = 0usize;
    loop {
        let g = values.iter().fold(k, |acc, &v| acc.gcd(&v));
        let order = k / g;
        let is_surjective = order == k;
        if is_surjective {
            surjective += 1;
        }
        if !surjective_only || is_surjective {
            let kernel = hom_kernel_lattice(t, &values, k);
            entries.push(BrauerEntry {
                values: values.clone(),
                order,
                kernel: kernel.invariants(),
            });
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == m {
                break;
            }
            values[pos] += 1;
            if values[pos] < k {
                break;
            }
            values[pos] = 0;
            pos += 1;
        }
        if pos == m {
            break;
        }
    }

    // bucket by (order, kernel invariants), then cross-check isometry within
    let mut buckets: Vec<(u32, LatticeInvariants, Vec<usize>)> = Vec::new();
    for (idx, e) in entries.iter().enumerate() {
        match buckets
            .iter_mut()
            .find(|(o, inv, _)| *o == e.order && *inv == e.kernel)
        {
            Some((_, _, members)) => members.push(idx),
            None => buckets.push((e.order, e.kernel.clone(), vec![idx])),
        }
    }
    let bucket_reports = buckets
        .into_iter()
        .map(|(order, kernel, members)| {
            let mut isometric = true;
            if members.len() > 1 && m <= 4 {
                let first = hom_kernel_lattice(t, &entries[members[0]].values, k);
                for &other in &members[1..] {
                    let o = hom_kernel_lattice(t, &entries[other].values, k);
                    if isometry_search(&first, &o, 8).ok().flatten().is_none() {
                        isometric = false;
                        break;
                    }
                }
            }
            BrauerBucket {
                order,
                kernel,
                count: members.len(),
                kernels_isometric_within_bound: isometric,
            }
        })
        .collect();

    Ok(BrauerEnumeration {
        modulus: k,
        total: if surjective_only {
            entries.len()
        } else {
            required as usize
        },
        surjective,
        entries,
        buckets: bucket_reports,
    })
}

/// Kernel of the homomorphism with the given values, as an abstract lattice
/// with the form induced from `t`.
fn hom_kernel_lattice(t: &IntLattice, values: &[u32], k: u32) -> IntLattice {
    let m = t.rank();
    let mut row: Vec<Int> = values.iter().map(|&v| Int::from(v)).collect();
    row.push(Int::from(k));
    let rel = IntMatrix::from_row_vectors(vec![row]);
    let kernel = rel.integer_kernel();
    let coeff_rows: Vec<Vec<Int>> = (0..kernel.rows())
        .map(|i| kernel.row(i)[..m].to_vec())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let coeffs = IntMatrix::from_row_vectors(coeff_rows);
    let gram = coeffs.mul(&t.gram).mul(&coeffs.transpose());
    IntLattice::new(gram).expect("induced gram is symmetric")
}

/// Certify that g carries the twisted structure of (src, B) to the twisted
/// structure of (dst, B'): g(exp(B)σ) must land on the complex line spanned
/// by exp(B')σ'. Returns the complex witness (a, b) with
/// g(exp(B)x1) = a·X1' − b·X2' and g(exp(B)x2) = b·X1' + a·X2'.
pub fn is_hodge_isometry(
    g: &Isometry,
    src: (&SurfaceDatum, &BField),
    dst: (&SurfaceDatum, &BField),
) -> Result<Option<(Rat, Rat)>> {
    let sp = src.0.period.as_ref().ok_or(Error::MissingPeriod)?;
    let dp = dst.0.period.as_ref().ok_or(Error::MissingPeriod)?;
    let xs = [
        exp_b(&src.1.b, &MukaiVector::from_degree2(sp.x1.clone())),
        exp_b(&src.1.b, &MukaiVector::from_degree2(sp.x2.clone())),
    ];
    let xd = [
        exp_b(&dst.1.b, &MukaiVector::from_degree2(dp.x1.clone())),
        exp_b(&dst.1.b, &MukaiVector::from_degree2(dp.x2.clone())),
    ];
    let y1 = g.apply(&xs[0]);
    let y2 = g.apply(&xs[1]);
    let norm = crate::mukai::pairing(&xd[0], &xd[0]);
    debug_assert!(norm.is_positive());
    let a = crate::mukai::pairing(&y1, &xd[0]) / &norm;
    let b = -crate::mukai::pairing(&y1, &xd[1]) / &norm;
    if a.is_zero() && b.is_zero() {
        return Ok(None);
    }
    let want1 = xd[0].scale(&a).add(&xd[1].scale(&-b.clone()));
    let want2 = xd[0].scale(&b).add(&xd[1].scale(&a));
    if y1 == want1 && y2 == want2 {
        Ok(Some((a, b)))
    } else {
        Ok(None)
    }
}

/// Isometry-invariant data attached to a twisted surface: the order of the
/// Brauer class, the invariants of the kernel lattice and of the twisted
/// Picard lattice, and the twisted transcendental rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceFingerprint {
    #[serde(serialize_with = "report::ser_int")]
    pub order: Int,
    pub t_alpha: LatticeInvariants,
    pub pic_b: LatticeInvariants,
    pub t_b_rank: usize,
}

pub fn fingerprint(s: &SurfaceDatum, b: &BField) -> EquivalenceFingerprint {
    let class = brauer_class(s, b);
    let kernel = brauer_kernel(s, b);
    let pic = twisted_picard(s, b);
    EquivalenceFingerprint {
        order: class.order,
        t_alpha: kernel.gram().invariants(),
        pic_b: pic.gram().invariants(),
        t_b_rank: MUKAI_RANK - pic.rank(),
    }
}

/// The finite-index frame Pic(X) ⊕ Z(λu2 + λB) ⊕ Zu1 inside the twisted
/// Picard lattice; returns the index. Used as a structural check.
pub fn standard_picard_frame_index(s: &SurfaceDatum, b: &BField) -> Option<Int> {
    let pic_b = twisted_picard(s, b);
    let pic = s.pic();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for i in 0..pic.rank() {
        let mut row = vec![Int::zero(); MUKAI_RANK];
        for (k, x) in pic.basis.row(i).iter().enumerate() {
            row[1 + k] = x.clone();
        }
        rows.push(row);
    }
    // λu2 + λB
    let mut mid = vec![Int::zero(); MUKAI_RANK];
    mid[0] = b.lambda.clone();
    for (k, x) in b.b.iter().enumerate() {
        let scaled = x * Rat::from_integer(b.lambda.clone());
        debug_assert!(scaled.is_integer());
        mid[1 + k] = scaled.to_integer();
    }
    rows.push(mid);
    let mut u1 = vec![Int::zero(); MUKAI_RANK];
    u1[23] = Int::one();
    rows.push(u1);
    let frame = IntMatrix::from_row_vectors(rows);
    let expressed = crate::lattice::express_in_basis(&frame, &pic_b.basis)?;
    if expressed.rows() != pic_b.rank() {
        return None;
    }
    Some(expressed.det().abs())
}

/// Named assertions comparing two fingerprints; used in reports.
pub fn fingerprint_comparison(
    label: &str,
    a: &EquivalenceFingerprint,
    b: &EquivalenceFingerprint,
) -> Vec<Assertion> {
    vec![
        Assertion::new(&format!("{label}: orders equal"), a.order == b.order),
        Assertion::new(
            &format!("{label}: kernel invariants equal"),
            a.t_alpha == b.t_alpha,
        ),
        Assertion::new(
            &format!("{label}: twisted Picard invariants equal"),
            a.pic_b == b.pic_b,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, rat};
    use crate::mukai::{cup, generator_exp, generator_j, E1, E2, F1, F2, G1, G2};

    pub(crate) fn unit_vec(idx: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); LAMBDA_RANK];
        v[idx] = Rat::one();
        v
    }

    fn standard_period() -> Period {
        let mut x1 = vec![Rat::zero(); LAMBDA_RANK];
        x1[E1] = Rat::one();
        x1[E2] = Rat::one();
        let mut x2 = vec![Rat::zero(); LAMBDA_RANK];
        x2[F1] = Rat::one();
        x2[F2] = Rat::one();
        Period::new(x1, x2).unwrap()
    }

    fn b_one_fifth() -> BField {
        let mut b = vec![Rat::zero(); LAMBDA_RANK];
        b[E1] = rat(1, 5);
        b[E2] = rat(1, 5);
        BField::new(b)
    }

    #[test]
    fn surface_from_period_examples() {
        let s = surface_from_period(standard_period()).unwrap();
        assert_eq!(s.t.rank(), 2);
        assert_eq!(
            s.t.gram().gram,
            IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 2]])
        );

        // scaling the period does not change T
        let mut x1 = vec![Rat::zero(); LAMBDA_RANK];
        x1[E1] = rat(2, 1);
        x1[E2] = rat(2, 1);
        let mut x2 = vec![Rat::zero(); LAMBDA_RANK];
        x2[F1] = rat(2, 1);
        x2[F2] = rat(2, 1);
        let s2 = surface_from_period(Period::new(x1, x2).unwrap()).unwrap();
        assert_eq!(s2.t.basis, s.t.basis);

        // non-orthogonal parts are rejected
        let mut y = vec![Rat::zero(); LAMBDA_RANK];
        y[E1] = Rat::one();
        y[E2] = Rat::one();
        assert!(Period::new(y.clone(), y).is_err());
    }

    #[test]
    fn surface_from_transcendental_examples() {
        let s = SurfaceDatum::maximal();
        assert_eq!(s.t.rank(), 22);
        assert_eq!(s.pic().rank(), 0);
        assert!(!is_algebraic(&s));

        // non-primitive span is rejected
        let mut row = vec![0i64; LAMBDA_RANK];
        row[E1] = 2;
        let r = surface_from_transcendental(IntMatrix::from_rows_i64(&[row]));
        assert_eq!(r.unwrap_err(), Error::NotSaturated);
    }

    #[test]
    fn rank21_complement_of_norm40_vector() {
        // T = complement of h with h² = 40: Pic = ⟨40⟩, so the surface is algebraic
        let mut h = vec![0i64; LAMBDA_RANK];
        h[E1] = 1;
        h[E2] = 20;
        let lam = lambda_lattice();
        let hv = Sublattice::new(lam, IntMatrix::from_rows_i64(&[h])).unwrap();
        let t = hv.orthogonal_complement();
        assert_eq!(t.rank(), 21);
        let s = surface_from_transcendental(t.basis).unwrap();
        assert!(is_algebraic(&s));
        let pic = s.pic();
        assert_eq!(pic.rank(), 1);
        assert_eq!(pic.gram().gram, IntMatrix::from_rows_i64(&[vec![40]]));
    }

    #[test]
    fn algebraicity_of_rank20_surface() {
        let s = surface_from_period(standard_period()).unwrap();
        assert!(is_algebraic(&s));
        let sig = s
            .pic()
            .gram()
            .gram
            .signature_of_symmetric()
            .unwrap();
        assert_eq!(sig, (1, 19, 0));
    }

    #[test]
    fn twisted_picard_of_order_five_class() {
        let s = SurfaceDatum::maximal();
        let b = b_one_fifth();
        let pic_b = twisted_picard(&s, &b);
        assert_eq!(pic_b.rank(), 2);
        let got = pic_b.gram();
        let want = IntLattice::new(IntMatrix::from_rows_i64(&[vec![0, -5], vec![-5, 2]])).unwrap();
        let witness = isometry_search(&want, &got, 25).unwrap();
        assert!(witness.is_some(), "twisted Picard lattice matches the expected form");

        let pic_2b = twisted_picard(&s, &b.scaled(2));
        let want2 = IntLattice::new(IntMatrix::from_rows_i64(&[vec![0, -5], vec![-5, 8]])).unwrap();
        assert!(isometry_search(&want2, &pic_2b.gram(), 25).unwrap().is_some());
    }

    #[test]
    fn twisted_picard_untwisted_splitting() {
        let s = surface_from_period(standard_period()).unwrap();
        let b = BField::zero();
        let pic_b = twisted_picard(&s, &b);
        assert_eq!(pic_b.rank(), s.pic().rank() + 2);
        // u2 and u1 are members
        let mut u2 = vec![Int::zero(); MUKAI_RANK];
        u2[0] = Int::one();
        let mut u1 = vec![Int::zero(); MUKAI_RANK];
        u1[23] = Int::one();
        let stacked = IntMatrix::from_row_vectors(vec![u2, u1]);
        assert!(crate::lattice::express_in_basis(&stacked, &pic_b.basis).is_some());
    }

    #[test]
    fn twisted_transcendental_ranks() {
        let s = SurfaceDatum::maximal();
        let b = b_one_fifth();
        let tb = twisted_transcendental(&s, &b);
        assert_eq!(tb.rank(), 22);
        assert_eq!(tb.gram().gram.det().abs(), int(25));
        // rank T(X,B) = rank T(X) always
        let s20 = surface_from_period(standard_period()).unwrap();
        let tb20 = twisted_transcendental(&s20, &b);
        assert_eq!(tb20.rank(), s20.t.rank());
    }

    #[test]
    fn twisted_algebraicity() {
        let s20 = surface_from_period(standard_period()).unwrap();
        assert!(is_twisted_algebraic(&s20, &BField::zero()));
        let s = SurfaceDatum::maximal();
        assert!(!is_twisted_algebraic(&s, &b_one_fifth()));
    }

    #[test]
    fn brauer_class_orders() {
        let s = SurfaceDatum::maximal();
        assert_eq!(brauer_class(&s, &b_one_fifth()).order, int(5));

        let mut bi = vec![Rat::zero(); LAMBDA_RANK];
        bi[E1] = rat(3, 1);
        assert_eq!(brauer_class(&s, &BField::new(bi)).order, int(1));

        let mut b2 = vec![Rat::zero(); LAMBDA_RANK];
        b2[E1] = rat(1, 2);
        assert_eq!(brauer_class(&s, &BField::new(b2)).order, int(2));
    }

    #[test]
    fn brauer_kernel_index() {
        let s = SurfaceDatum::maximal();
        let b = b_one_fifth();
        let kernel = brauer_kernel(&s, &b);
        assert_eq!(kernel.rank(), 22);
        assert_eq!(kernel.gram().gram.det().abs(), int(25));
        assert_eq!(kernel.index_in_saturation(), int(5));

        // order-1 class keeps all of T
        let k0 = brauer_kernel(&s, &BField::zero());
        assert_eq!(k0.basis, IntMatrix::identity(LAMBDA_RANK));
    }

    #[test]
    fn bridge_on_counterexample_data() {
        let s = SurfaceDatum::maximal();
        let rep = verify_exp_bridge(&s, &b_one_fifth());
        assert!(rep.passed, "bridge fails: {rep:?}");
        let rep0 = verify_exp_bridge(&s, &BField::zero());
        assert!(rep0.passed);
    }

    #[test]
    fn order_disc_identities() {
        let s = SurfaceDatum::maximal();
        let rep = order_disc_report(&s, &b_one_fifth());
        assert_eq!(rep.order, int(5));
        assert_eq!(rep.disc_t, int(1));
        assert_eq!(rep.disc_t_alpha, int(25));
        assert!(rep.index_identity_holds);
        assert!(!rep.swapped_identity_holds);

        let trivial = order_disc_report(&s, &BField::zero());
        assert!(trivial.index_identity_holds);
        assert!(trivial.swapped_identity_holds);
    }

    #[test]
    fn enumerate_rank2_mod2() {
        let t = IntLattice::new(IntMatrix::from_rows_i64(&[vec![4, 0], vec![0, 4]])).unwrap();
        let e = enumerate_brauer(&t, 2, false, 1_000_000).unwrap();
        assert_eq!(e.entries.len(), 4);
        assert_eq!(e.surjective, 3);
        // the two coordinate classes share a bucket; the diagonal class differs
        let order2: Vec<_> = e.buckets.iter().filter(|b| b.order == 2).collect();
        assert_eq!(order2.len(), 2);
        assert!(order2.iter().any(|b| b.count == 2 && b.kernels_isometric_within_bound));
        assert!(order2.iter().any(|b| b.count == 1));

        let only_trivial = enumerate_brauer(&t, 1, false, 10).unwrap();
        assert_eq!(only_trivial.entries.len(), 1);
        assert_eq!(only_trivial.entries[0].order, 1);
    }

    #[test]
    fn enumerate_surjective_only() {
        let t = IntLattice::new(IntMatrix::from_rows_i64(&[vec![4, 0], vec![0, 4]])).unwrap();
        let e = enumerate_brauer(&t, 2, true, 1_000_000).unwrap();
        assert_eq!(e.entries.len(), 3);
        assert!(e.entries.iter().all(|c| c.order == 2));
    }

    #[test]
    fn enumerate_budget() {
        let t = IntLattice::new(IntMatrix::identity(4).scale(&int(2))).unwrap();
        let err = enumerate_brauer(&t, 100, false, 1_000_000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn hodge_isometry_witnesses() {
        let s = surface_from_period(standard_period()).unwrap();
        let b0 = BField::zero();
        let id = Isometry::identity(crate::mukai::Domain::Mukai);
        let w = is_hodge_isometry(&id, (&s, &b0), (&s, &b0)).unwrap();
        assert_eq!(w, Some((rat(1, 1), rat(0, 1))));

        // integral twist moves (X, B) to (X, B + B0)
        let mut b0v = vec![Int::zero(); LAMBDA_RANK];
        b0v[G1] = Int::from(2);
        b0v[G2] = Int::from(-1);
        let g = generator_exp(&b0v);
        let shifted = BField::new(
            b0v.iter()
                .map(|x| Rat::from_integer(x.clone()))
                .collect::<Vec<_>>(),
        );
        let w = is_hodge_isometry(&g, (&s, &b0), (&s, &shifted)).unwrap();
        assert_eq!(w, Some((rat(1, 1), rat(0, 1))));

        // j maps (X, B) to (X, −B)
        let mut bq = vec![Rat::zero(); LAMBDA_RANK];
        bq[G1] = rat(1, 3);
        let b = BField::new(bq.clone());
        let nb = BField::new(bq.iter().map(|x| -x.clone()).collect());
        let w = is_hodge_isometry(&generator_j(), (&s, &b), (&s, &nb)).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn fingerprints_distinguish_and_identify() {
        let s = SurfaceDatum::maximal();
        let b = b_one_fifth();
        let f1 = fingerprint(&s, &b);
        let f2 = fingerprint(&s, &b.scaled(2));
        // same order and kernel data; the Picard forms share all listed invariants
        assert_eq!(f1.order, f2.order);
        assert_eq!(f1.t_alpha, f2.t_alpha);
        assert_eq!(f1.pic_b, f2.pic_b);

        // shifting B by an integral class changes nothing
        let mut shift = b.b.clone();
        shift[G1] += Rat::one();
        let f3 = fingerprint(&s, &BField::new(shift));
        assert_eq!(f1, f3);

        // different transcendental lattices are told apart at B = 0
        let s20 = surface_from_period(standard_period()).unwrap();
        let f4 = fingerprint(&s20, &BField::zero());
        assert_ne!(f1.pic_b, f4.pic_b);
    }

    #[test]
    fn standard_frame_has_finite_index() {
        let s = SurfaceDatum::maximal();
        let idx = standard_picard_frame_index(&s, &b_one_fifth()).unwrap();
        assert!(idx.is_positive());

        let s20 = surface_from_period(standard_period()).unwrap();
        let idx = standard_picard_frame_index(&s20, &BField::zero()).unwrap();
        assert_eq!(idx, int(1));
    }

    #[test]
    fn purity_square_criterion() {
        use rand::prelude::*;
        let s = surface_from_period(standard_period()).unwrap();
        let mut bq = vec![Rat::zero(); LAMBDA_RANK];
        bq[G1] = rat(1, 2);
        let b = BField::new(bq);
        let b2 = b.scaled(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let mut seen_pp = 0;
        for _ in 0..200 {
            let r = rng.gen_range(1i64..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let s4 = rat(rng.gen_range(-2i64..=2), 1);
            // bias half the samples into the twisted (1,1) part by supporting
            // the degree-2 class away from the period plane
            let v = if rng.gen_bool(0.5) {
                let mut c = vec![Rat::zero(); LAMBDA_RANK];
                for x in c.iter_mut().skip(G1) {
                    *x = rat(rng.gen_range(-1i64..=1), 1);
                }
                exp_b(&b.b, &MukaiVector::new(rat(r, 1), c, s4))
            } else {
                let c = (0..LAMBDA_RANK)
                    .map(|_| rat(rng.gen_range(-1i64..=1), 1))
                    .collect();
                MukaiVector::new(rat(r, 1), c, s4)
            };
            let lhs = is_twisted_pp(&s, &b, &v);
            let rhs = is_twisted_pp(&s, &b2, &cup(&v, &v));
            assert_eq!(lhs, rhs, "square purity failed for {v:?}");
            if lhs {
                seen_pp += 1;
            }
        }
        assert!(seen_pp > 0, "test should exercise the positive branch");
    }

    #[test]
    fn order_divides_lambda() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let s = SurfaceDatum::maximal();
        for _ in 0..30 {
            let mut bq = vec![Rat::zero(); LAMBDA_RANK];
            for _ in 0..rng.gen_range(1..=3usize) {
                let idx = rng.gen_range(0..LAMBDA_RANK);
                bq[idx] = Rat::new(
                    Int::from(rng.gen_range(-4i64..=4)),
                    Int::from(rng.gen_range(1i64..=6)),
                );
            }
            let b = BField::new(bq);
            let class = brauer_class(&s, &b);
            assert!(b.lambda.is_multiple_of(&class.order));
            // T unimodular: order equals the denominator exactly
            assert_eq!(class.order, b.lambda);
        }
    }

    #[test]
    fn hodge_isometries_transport_twisted_picard_lattices() {
        use crate::constructions::match_twist;
        use crate::mukai::random_word;
        for seed in 0..25u64 {
            let g = random_word(seed, 5);
            let r = match_twist(&g).unwrap();
            assert!(r.certificate_holds);
            let sx = surface_from_period(r.x.clone()).unwrap();
            let sy = surface_from_period(r.y.clone()).unwrap();
            let b0 = BField::zero();
            let b = BField::new(r.b.clone());
            let src = twisted_picard(&sx, &b0);
            let dst = twisted_picard(&sy, &b);
            let image_rows: Vec<Vec<Int>> = (0..src.rank())
                .map(|i| g.matrix().mul_vec(src.basis.row(i)))
                .collect();
            let (image_hnf, _) = IntMatrix::from_row_vectors(image_rows).hnf();
            assert_eq!(image_hnf, dst.basis, "seed {seed}");
        }
    }

    #[test]
    fn unit_vec_helper_is_sane() {
        assert_eq!(unit_vec(E1)[E1], rat(1, 1));
        assert_eq!(unit_vec(F2)[F2], rat(1, 1));
    }
}
