//! Integral lattices with symmetric bilinear forms: invariants, sublattices,
//! orthogonal complements, saturation, bounded isometry search, representation
//! certificates and the unique-embedding criterion.

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{form_product_int, Int, IntMatrix};

/// A finite-rank lattice presented by an integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    pub gram: IntMatrix,
    pub label: Option<String>,
}

impl IntLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::RankMismatch(gram.rows(), gram.cols()));
        }
        for i in 0..gram.rows() {
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(IntLattice { gram, label: None })
    }

    pub fn labeled(gram: IntMatrix, label: &str) -> Result<Self> {
        let mut l = Self::new(gram)?;
        l.label = Some(label.to_string());
        Ok(l)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// Block-diagonal sum of two Gram matrices.
    pub fn direct_sum(&self, other: &IntLattice) -> IntLattice {
        IntLattice {
            gram: self.gram.block_diag(&other.gram),
            label: None,
        }
    }

    /// Same underlying group with the form multiplied by n.
    pub fn rescale(&self, n: i64) -> IntLattice {
        IntLattice {
            gram: self.gram.scale(&Int::from(n)),
            label: None,
        }
    }

    pub fn invariants(&self) -> LatticeInvariants {
        let (pos, neg, zero) = self
            .gram
            .signature_of_symmetric()
            .expect("gram verified symmetric at construction");
        let det = self.gram.det();
        let snf = self.gram.snf();
        let abs_disc: Int = snf.factors.iter().product();
        let invariant_factors: Vec<Int> = snf
            .factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect();
        LatticeInvariants {
            rank: self.rank(),
            signature: (pos, neg),
            zero_directions: zero,
            det,
            even: self.is_even(),
            ell: invariant_factors.len(),
            invariant_factors,
            abs_disc,
        }
    }
}

/// Numeric invariants of a lattice: rank, signature, determinant, parity,
/// invariant factors of the discriminant group and its minimal generator
/// count ℓ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeInvariants {
    pub rank: usize,
    pub signature: (usize, usize),
    pub zero_directions: usize,
    #[serde(serialize_with = "crate::report::ser_int")]
    pub det: Int,
    pub even: bool,
    #[serde(serialize_with = "crate::report::ser_int_vec")]
    pub invariant_factors: Vec<Int>,
    pub ell: usize,
    #[serde(serialize_with = "crate::report::ser_int")]
    pub abs_disc: Int,
}

/// A sublattice of an ambient lattice, presented by basis rows in ambient
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub ambient: IntLattice,
    pub basis: IntMatrix,
}

impl Sublattice {
    pub fn new(ambient: IntLattice, basis: IntMatrix) -> Result<Self> {
        if basis.cols() != ambient.rank() {
            return Err(Error::RankMismatch(basis.cols(), ambient.rank()));
        }
        if basis.rank() != basis.rows() {
            return Err(Error::DegenerateBasis);
        }
        Ok(Sublattice { ambient, basis })
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// The induced form basis·G·basisᵀ as a standalone lattice.
    pub fn gram(&self) -> IntLattice {
        let g = self
            .basis
            .mul(&self.ambient.gram)
            .mul(&self.basis.transpose());
        IntLattice { gram: g, label: None }
    }

    /// Saturated orthogonal complement {x : ⟨x, b⟩ = 0 for all basis rows b}.
    pub fn orthogonal_complement(&self) -> Sublattice {
        // rows of (basis·G) are the linear conditions
        let conditions = self.basis.mul(&self.ambient.gram);
        let kernel = conditions.integer_kernel();
        Sublattice {
            ambient: self.ambient.clone(),
            basis: kernel,
        }
    }

    /// (rational span) ∩ ambient, HNF-normalized.
    pub fn saturation(&self) -> Sublattice {
        let perp = self.basis.integer_kernel();
        let sat = perp.integer_kernel();
        Sublattice {
            ambient: self.ambient.clone(),
            basis: sat,
        }
    }

    /// Index of this sublattice inside its saturation.
    pub fn index_in_saturation(&self) -> Int {
        let sat = self.saturation();
        // express our basis in saturation coordinates; the change of basis is
        // integral and its determinant is the index
        let t = express_in_basis(&self.basis, &sat.basis)
            .expect("basis lies in the span of its saturation");
        t.det().abs()
    }

    pub fn is_saturated(&self) -> bool {
        self.index_in_saturation().is_one()
    }

}

/// Write each row of `vectors` as an integer combination of `basis` rows.
/// Fails if a row is outside the integral row span.
pub fn express_in_basis(vectors: &IntMatrix, basis: &IntMatrix) -> Option<IntMatrix> {
    let bt = basis.transpose();
    let mut rows = Vec::with_capacity(vectors.rows());
    for i in 0..vectors.rows() {
        let x = bt.solve_integer(vectors.row(i))?;
        rows.push(x);
    }
    Some(IntMatrix::from_row_vectors(rows))
}

/// Backtracking search for a base change P with P·G2·Pᵀ = G1. Coordinates of
/// the candidate rows range over the spiral order 0, 1, −1, 2, −2, … up to
/// `coeff_bound`, so the first witness found is deterministic. A `None` means
/// no witness within the box, not a proof of non-isometry.
pub fn isometry_search(
    l1: &IntLattice,
    l2: &IntLattice,
    coeff_bound: u32,
) -> Result<Option<IntMatrix>> {
    let n = l1.rank();
    if n != l2.rank() {
        return Err(Error::RankMismatch(n, l2.rank()));
    }
    if n == 0 {
        return Ok(Some(IntMatrix::identity(0)));
    }
    if l1.gram.det() != l2.gram.det() {
        // determinant is a base-change invariant
        return Ok(None);
    }
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(n);
    if search_rows(l1, l2, coeff_bound, &mut rows) {
        let p = IntMatrix::from_row_vectors(rows);
        let check = p.mul(&l2.gram).mul(&p.transpose());
        debug_assert_eq!(check, l1.gram);
        if check != l1.gram {
            return Ok(None);
        }
        if !l1.gram.det().is_zero() || p.det().abs().is_one() {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

fn spiral(bound: u32) -> impl Iterator<Item = i64> {
    std::iter::once(0i64).chain((1..=bound as i64).flat_map(|k| [k, -k]))
}

fn search_rows(l1: &IntLattice, l2: &IntLattice, bound: u32, rows: &mut Vec<Vec<Int>>) -> bool {
    let n = l1.rank();
    let i = rows.len();
    if i == n {
        return true;
    }
    let mut candidate = vec![Int::zero(); n];
    search_coord(l1, l2, bound, rows, &mut candidate, 0)
}

fn search_coord(
    l1: &IntLattice,
    l2: &IntLattice,
    bound: u32,
    rows: &mut Vec<Vec<Int>>,
    candidate: &mut Vec<Int>,
    pos: usize,
) -> bool {
    let n = l1.rank();
    let i = rows.len();
    if pos == n {
        if candidate.iter().all(|x| x.is_zero()) {
            return false;
        }
        let norm = form_product_int(&l2.gram, candidate, candidate);
        if norm != l1.gram[(i, i)] {
            return false;
        }
        for (j, prev) in rows.iter().enumerate() {
            if form_product_int(&l2.gram, prev, candidate) != l1.gram[(j, i)] {
                return false;
            }
        }
        rows.push(candidate.clone());
        if search_rows(l1, l2, bound, rows) {
            return true;
        }
        rows.pop();
        return false;
    }
    for v in spiral(bound) {
        candidate[pos] = Int::from(v);
        if search_coord(l1, l2, bound, rows, candidate, pos + 1) {
            return true;
        }
    }
    candidate[pos] = Int::zero();
    false
}

/// First nonzero vector v (spiral coordinate order) with vᵀGv = n inside the
/// coefficient box, else None.
pub fn represents_bounded(l: &IntLattice, n: &Int, coeff_bound: u32) -> Option<Vec<Int>> {
    let rank = l.rank();
    let mut v = vec![Int::zero(); rank];
    fn rec(l: &IntLattice, n: &Int, bound: u32, v: &mut Vec<Int>, pos: usize) -> bool {
        if pos == v.len() {
            return !v.iter().all(|x| x.is_zero()) && &form_product_int(&l.gram, v, v) == n;
        }
        for c in spiral(bound) {
            v[pos] = Int::from(c);
            if rec(l, n, bound, v, pos + 1) {
                return true;
            }
        }
        v[pos] = Int::zero();
        false
    }
    if rec(l, n, coeff_bound, &mut v, 0) {
        Some(v)
    } else {
        None
    }
}

/// Outcome of an exact representation decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Represents {
    Witness(Vec<Int>),
    ProvenAbsent,
}

impl Represents {
    pub fn witness(&self) -> Option<&Vec<Int>> {
        match self {
            Represents::Witness(w) => Some(w),
            Represents::ProvenAbsent => None,
        }
    }
}

/// Exact decision of n = Q(a,b) for the binary form with Gram
/// [[0,−m],[−m,2c]], i.e. Q(a,b) = 2b(cb − ma). Solutions correspond to
/// divisors d of n/2 with m | (cd − n/(2d)); divisors are scanned smallest
/// |d| first, positive before negative.
pub fn represents_zero_diag_binary_exact(m: u64, c: &Int, n: &Int) -> Result<Represents> {
    if n.is_odd() {
        return Err(Error::FormOdd(n.to_string()));
    }
    if n.is_zero() {
        // Q(a, 0) = 0 for every a; (1, 0) is a nonzero witness
        return Ok(Represents::Witness(vec![Int::one(), Int::zero()]));
    }
    let half: Int = n / 2;
    let mi = Int::from(m);
    let abs_half = half.abs();
    let mut d = Int::one();
    while &d * &d <= abs_half {
        if abs_half.is_multiple_of(&d) {
            for cand in [d.clone(), -d.clone(), &abs_half / &d, -(&abs_half / &d)] {
                let co = &half / &cand;
                let num = c * &cand - co;
                if num.is_multiple_of(&mi) {
                    return Ok(Represents::Witness(vec![num / &mi, cand]));
                }
            }
        }
        d += 1;
    }
    Ok(Represents::ProvenAbsent)
}

/// Sweep decision for the rank-3 form [[0,−m],[−m,2c]] ⊕ [2·diag]: for each
/// |z| ≤ z_max the remaining binary slice is decided exactly by the divisor
/// method. Absence is evidence for the sweep box only.
pub fn represents_rank3_sweep(
    m: u64,
    c: i64,
    diag: i64,
    n: i64,
    z_max: u64,
) -> Result<Option<(Int, Int, Int)>> {
    if n % 2 != 0 {
        return Err(Error::FormOdd(n.to_string()));
    }
    for z in sweep_order(z_max) {
        let slice = (n as i128) - 2 * (diag as i128) * (z as i128) * (z as i128);
        if slice == 0 && z != 0 {
            return Ok(Some((Int::zero(), Int::zero(), Int::from(z))));
        }
        if let Some((a, b)) = binary_slice_witness_i128(m as i128, c as i128, slice) {
            if z != 0 || a != 0 || b != 0 {
                return Ok(Some((Int::from(a), Int::from(b), Int::from(z))));
            }
        }
    }
    Ok(None)
}

fn sweep_order(z_max: u64) -> impl Iterator<Item = i64> {
    std::iter::once(0i64).chain((1..=z_max as i64).flat_map(|k| [k, -k]))
}

// i128 fast path of the divisor method; slice values stay far below overflow
// for every budgeted sweep.
fn binary_slice_witness_i128(m: i128, c: i128, n: i128) -> Option<(i128, i128)> {
    debug_assert!(n % 2 == 0);
    if n == 0 {
        return Some((1, 0));
    }
    let half = n / 2;
    let abs_half = half.abs();
    let mut d: i128 = 1;
    while d * d <= abs_half {
        if abs_half % d == 0 {
            for cand in [d, -d, abs_half / d, -(abs_half / d)] {
                let num = c * cand - half / cand;
                if num % m == 0 {
                    return Some((num / m, cand));
                }
            }
        }
        d += 1;
    }
    None
}

/// Report of the unique-primitive-embedding criterion for an even lattice T
/// into an even unimodular ambient of the given rank and signature.
#[derive(Clone, Debug, Serialize)]
pub struct NikulinReport {
    pub t_rank: usize,
    pub t_signature: (usize, usize),
    pub ell: usize,
    pub ambient_rank: usize,
    pub ambient_signature: (usize, usize),
    pub positive_strict: bool,
    pub negative_strict: bool,
    pub ell_bound: bool,
    pub embeds_uniquely: bool,
}

/// t_+ < s_+, t_− < s_−, and ℓ(T) ≤ rk(ambient) − rk(T) − 2.
pub fn nikulin_check(
    t: &IntLattice,
    ambient_rank: usize,
    ambient_sig: (usize, usize),
) -> Result<NikulinReport> {
    if !t.is_even() {
        return Err(Error::OddLattice);
    }
    let inv = t.invariants();
    let positive_strict = inv.signature.0 < ambient_sig.0;
    let negative_strict = inv.signature.1 < ambient_sig.1;
    let slack = ambient_rank as i64 - inv.rank as i64 - 2;
    let ell_bound = slack >= 0 && (inv.ell as i64) <= slack;
    Ok(NikulinReport {
        t_rank: inv.rank,
        t_signature: inv.signature,
        ell: inv.ell,
        ambient_rank,
        ambient_signature: ambient_sig,
        positive_strict,
        negative_strict,
        ell_bound,
        embeds_uniquely: positive_strict && negative_strict && ell_bound,
    })
}

/// Convenience: the positive count of the signature of a sublattice's induced
/// form.
pub fn positive_directions(s: &Sublattice) -> usize {
    s.gram()
        .gram
        .signature_of_symmetric()
        .expect("induced gram is symmetric")
        .0
}

pub fn hyperbolic_plane() -> IntLattice {
    IntLattice::labeled(IntMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]), "U").unwrap()
}

impl LatticeInvariants {
    pub fn abs_disc_u64(&self) -> Option<u64> {
        self.abs_disc.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, int_vec};
    use proptest::prelude::*;

    fn lat(rows: &[Vec<i64>]) -> IntLattice {
        IntLattice::new(IntMatrix::from_rows_i64(rows)).unwrap()
    }

    #[test]
    fn invariants_hyperbolic() {
        let inv = hyperbolic_plane().invariants();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.signature, (1, 1));
        assert_eq!(inv.det, int(-1));
        assert!(inv.even);
        assert!(inv.invariant_factors.is_empty());
        assert_eq!(inv.ell, 0);
    }

    #[test]
    fn invariants_skew_block() {
        let inv = lat(&[vec![0, -5], vec![-5, 2]]).invariants();
        assert_eq!(inv.det, int(-25));
        assert!(inv.even);
        assert_eq!(inv.invariant_factors, int_vec(&[25]));
        assert_eq!(inv.ell, 1);
        assert_eq!(inv.abs_disc, int(25));
    }

    #[test]
    fn invariants_scaled_square() {
        // diag(144, 144) has |disc| 144² = 20736
        let inv = lat(&[vec![144, 0], vec![0, 144]]).invariants();
        assert_eq!(inv.abs_disc, int(20736));
    }

    #[test]
    fn sublattice_identity_basis() {
        let u = hyperbolic_plane();
        let s = Sublattice::new(u.clone(), IntMatrix::identity(2)).unwrap();
        assert_eq!(s.gram().gram, u.gram);
    }

    #[test]
    fn sublattice_scaled_basis() {
        // (3f)² = 9·16 in diag(16,16)
        let l = lat(&[vec![16, 0], vec![0, 16]]);
        let s = Sublattice::new(l, IntMatrix::from_rows_i64(&[vec![3, 0], vec![0, 3]])).unwrap();
        assert_eq!(s.gram().gram, IntMatrix::from_rows_i64(&[vec![144, 0], vec![0, 144]]));
    }

    #[test]
    fn sublattice_rejects_dependent_rows() {
        let u = hyperbolic_plane();
        let r = Sublattice::new(u, IntMatrix::from_rows_i64(&[vec![1, 0], vec![2, 0]]));
        assert_eq!(r.unwrap_err(), Error::DegenerateBasis);
    }

    #[test]
    fn complement_of_block() {
        let uu = hyperbolic_plane().direct_sum(&hyperbolic_plane());
        let s = Sublattice::new(
            uu.clone(),
            IntMatrix::from_rows_i64(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]),
        )
        .unwrap();
        let c = s.orthogonal_complement();
        assert_eq!(
            c.basis,
            IntMatrix::from_rows_i64(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1]])
        );
        assert_eq!(c.gram().gram, hyperbolic_plane().gram);
    }

    #[test]
    fn complement_of_u_plane_in_mukai_is_k3_lattice() {
        let muk = crate::mukai::mukai_lattice();
        let lam = crate::mukai::lambda_lattice();
        let mut u2 = vec![0i64; 24];
        u2[0] = 1;
        let mut u1 = vec![0i64; 24];
        u1[23] = 1;
        let s = Sublattice::new(muk, IntMatrix::from_rows_i64(&[u2, u1])).unwrap();
        let c = s.orthogonal_complement();
        assert_eq!(c.rank(), 22);
        assert_eq!(c.gram().gram, lam.gram);
    }

    #[test]
    fn saturation_and_index() {
        let u = hyperbolic_plane();
        let s = Sublattice::new(u, IntMatrix::from_rows_i64(&[vec![2, 0]])).unwrap();
        let sat = s.saturation();
        assert_eq!(sat.basis, IntMatrix::from_rows_i64(&[vec![1, 0]]));
        assert_eq!(s.index_in_saturation(), int(2));
        assert!(sat.is_saturated());
    }

    #[test]
    fn family_embedding_index() {
        // e_j ↦ 3·f_j for primes {2,3} and i = 1: index is |det diag(3,3)| = 9
        let t1 = lat(&[vec![16, 0], vec![0, 16]]);
        let s = Sublattice::new(t1, IntMatrix::from_rows_i64(&[vec![3, 0], vec![0, 3]])).unwrap();
        assert_eq!(s.index_in_saturation(), int(9));
    }

    #[test]
    fn isometry_search_self() {
        let l = lat(&[vec![0, -5], vec![-5, 2]]);
        let p = isometry_search(&l, &l, 25).unwrap().expect("self isometry");
        assert_eq!(p, IntMatrix::identity(2));
    }

    #[test]
    fn isometry_search_distinguishes_counterexample_forms() {
        let a = lat(&[vec![0, -5], vec![-5, 2]]);
        let b = lat(&[vec![0, -5], vec![-5, 8]]);
        assert!(isometry_search(&a, &b, 25).unwrap().is_none());
    }

    #[test]
    fn isometry_search_finds_relabeling() {
        let u = hyperbolic_plane();
        let swapped = lat(&[vec![0, 1], vec![1, 0]]);
        let p = isometry_search(&u, &swapped, 3).unwrap().expect("relabeling");
        assert_eq!(p.mul(&swapped.gram).mul(&p.transpose()), u.gram);
    }

    #[test]
    fn isometry_search_rank_mismatch() {
        let u = hyperbolic_plane();
        let z = lat(&[vec![2]]);
        assert!(isometry_search(&u, &z, 3).is_err());
    }

    #[test]
    fn represents_examples() {
        let a = lat(&[vec![0, -5], vec![-5, 2]]);
        assert_eq!(represents_bounded(&a, &int(2), 25), Some(int_vec(&[0, 1])));
        let b = lat(&[vec![0, -5], vec![-5, 8]]);
        assert_eq!(represents_bounded(&b, &int(8), 25), Some(int_vec(&[0, 1])));
        assert_eq!(represents_bounded(&b, &int(2), 100), None);
    }

    #[test]
    fn exact_binary_decider_examples() {
        assert_eq!(
            represents_zero_diag_binary_exact(5, &int(1), &int(2)).unwrap(),
            Represents::Witness(int_vec(&[0, 1]))
        );
        assert_eq!(
            represents_zero_diag_binary_exact(5, &int(4), &int(2)).unwrap(),
            Represents::ProvenAbsent
        );
        assert_eq!(
            represents_zero_diag_binary_exact(5, &int(4), &int(8)).unwrap(),
            Represents::Witness(int_vec(&[0, 1]))
        );
        assert!(represents_zero_diag_binary_exact(5, &int(1), &int(3)).is_err());
    }

    #[test]
    fn rank3_sweep_examples() {
        assert_eq!(represents_rank3_sweep(5, 4, 20, 2, 100).unwrap(), None);
        assert_eq!(
            represents_rank3_sweep(5, 1, 20, 2, 10).unwrap(),
            Some((int(0), int(1), int(0)))
        );
        assert_eq!(
            represents_rank3_sweep(5, 4, 20, 40, 1).unwrap(),
            Some((int(0), int(0), int(1)))
        );
    }

    #[test]
    fn nikulin_examples() {
        let t = lat(&[vec![4, 0], vec![0, 4]]);
        let rep = nikulin_check(&t, 24, (4, 20)).unwrap();
        assert_eq!(rep.ell, 2);
        assert!(rep.embeds_uniquely);

        let odd = lat(&[vec![1]]);
        assert_eq!(nikulin_check(&odd, 22, (3, 19)).unwrap_err(), Error::OddLattice);

        // a rank-21 even lattice can never satisfy ℓ ≤ 22 − 21 − 2
        let mut big = lat(&[vec![2]]);
        for _ in 0..10 {
            big = big.direct_sum(&hyperbolic_plane());
        }
        assert_eq!(big.rank(), 21);
        let rep = nikulin_check(&big, 22, (3, 19)).unwrap();
        assert!(!rep.ell_bound);
        assert!(!rep.embeds_uniquely);
    }

    #[test]
    fn direct_sum_and_rescale() {
        let uu = hyperbolic_plane().direct_sum(&hyperbolic_plane());
        let inv = uu.invariants();
        assert_eq!(inv.rank, 4);
        assert_eq!(inv.signature, (2, 2));
        let neg = hyperbolic_plane().rescale(-1);
        assert_eq!(neg.invariants().signature, (1, 1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn index_squares_discriminant(d in 1i64..5, a in 1i64..4, b in 0i64..4) {
            // |det gram(S)| = n²·|det gram(P)| for S of index n in P
            let amb = lat(&[vec![2*a, b], vec![b, 2*a]]);
            if amb.gram.det().is_zero() { return Ok(()); }
            let s = Sublattice::new(amb, IntMatrix::from_rows_i64(&[vec![d, 0], vec![0, 1]])).unwrap();
            let sat = s.saturation();
            let idx = s.index_in_saturation();
            prop_assert_eq!(
                s.gram().gram.det().abs(),
                &idx * &idx * sat.gram().gram.det().abs()
            );
        }

        #[test]
        fn complement_is_saturated_and_involutive(b in -3i64..4, c in -3i64..4) {
            let amb = lat(&[
                vec![0, 1, 0, 0],
                vec![1, 0, 0, 0],
                vec![0, 0, 0, 1],
                vec![0, 0, 1, 0],
            ]);
            let s = Sublattice::new(amb, IntMatrix::from_rows_i64(&[vec![1, b, c, 0]])).unwrap();
            let comp = s.orthogonal_complement();
            prop_assert!(comp.is_saturated());
            let back = comp.orthogonal_complement();
            prop_assert_eq!(back.basis, s.saturation().basis);
        }

        #[test]
        fn exact_decider_matches_bounded_search(m in 1u64..6, c in -6i64..7, n in -20i64..21) {
            let n2 = 2 * n;
            let exact = represents_zero_diag_binary_exact(m, &int(c), &int(n2)).unwrap();
            let l = lat(&[vec![0, -(m as i64)], vec![-(m as i64), 2*c]]);
            let bounded = represents_bounded(&l, &int(n2), 50);
            match exact {
                Represents::Witness(w) => {
                    prop_assert_eq!(form_product_int(&l.gram, &w, &w), int(n2));
                    prop_assert!(bounded.is_some());
                }
                Represents::ProvenAbsent => prop_assert!(bounded.is_none()),
            }
        }

        #[test]
        fn invariants_stable_under_base_change(a in -2i64..3, b in -2i64..3) {
            let l = lat(&[vec![0, -5], vec![-5, 2]]);
            // a unimodular base change
            let p = IntMatrix::from_rows_i64(&[vec![1, a], vec![b, 1 + a*b]]);
            let moved = IntLattice::new(p.mul(&l.gram).mul(&p.transpose())).unwrap();
            prop_assert_eq!(moved.invariants(), l.invariants());
        }
    }
}
