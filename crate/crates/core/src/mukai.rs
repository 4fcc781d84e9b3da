//! The Mukai lattice Λ̃ = Λ ⊕ U and its distinguished structures: the pairing,
//! cup product, B-field action, duality, Euler pairing, the standard isometry
//! generators and deterministic generator words.
//!
//! Coordinate convention, fixed once and for all:
//!   Λ basis order: U1(e1,e2), U2(f1,f2), U3(g1,g2), −E8 copy 1, −E8 copy 2.
//!   Λ̃ coordinate 0 is u2 (degree 0), 1..=22 are Λ, 23 is u1 (degree 4);
//!   the (u2,u1) block carries the form [[0,−1],[−1,0]].

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{
    clear_denominators, form_product, rat_vec_from_int, Int, IntMatrix, Rat, RatMatrix,
};
use crate::lattice::IntLattice;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub const LAMBDA_RANK: usize = 22;
pub const MUKAI_RANK: usize = 24;

/// Λ basis indices for the three hyperbolic planes.
pub const E1: usize = 0;
pub const E2: usize = 1;
pub const F1: usize = 2;
pub const F2: usize = 3;
pub const G1: usize = 4;
pub const G2: usize = 5;

/// E8 Gram in the Dynkin-diagram basis: 2 on the diagonal, −1 on edges
/// 1−3, 3−4, 4−5, 5−6, 6−7, 7−8, 2−4.
fn e8_gram() -> IntMatrix {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    IntMatrix::from_fn(8, 8, |i, j| {
        if i == j {
            Int::from(2)
        } else if edges.contains(&(i.min(j), i.max(j))) {
            Int::from(-1)
        } else {
            Int::zero()
        }
    })
}

pub fn minus_e8_lattice() -> IntLattice {
    IntLattice::labeled(e8_gram().neg(), "-E8").unwrap()
}

/// The K3 lattice Λ = U³ ⊕ (−E8)², signature (3,19), in the fixed basis order.
pub fn lambda_lattice() -> IntLattice {
    let u = crate::lattice::hyperbolic_plane();
    let l = u
        .direct_sum(&u)
        .direct_sum(&u)
        .direct_sum(&minus_e8_lattice())
        .direct_sum(&minus_e8_lattice());
    IntLattice::labeled(l.gram, "Lambda").unwrap()
}

/// The full-cohomology lattice Λ̃ with the Mukai pairing, signature (4,20).
pub fn mukai_lattice() -> IntLattice {
    let lam = lambda_lattice();
    let g = IntMatrix::from_fn(MUKAI_RANK, MUKAI_RANK, |i, j| match (i, j) {
        (0, 23) | (23, 0) => Int::from(-1),
        (0, _) | (_, 0) | (23, _) | (_, 23) => Int::zero(),
        _ => lam.gram[(i - 1, j - 1)].clone(),
    });
    IntLattice::labeled(g, "Mukai").unwrap()
}

/// Λ-form product of two rational degree-2 classes.
pub fn lambda_dot(x: &[Rat], y: &[Rat]) -> Rat {
    form_product(&lambda_lattice().gram, x, y)
}

/// A full cohomology class (r, c, s): degree 0, the Λ-part, degree 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiVector {
    pub r: Rat,
    pub c: Vec<Rat>,
    pub s: Rat,
}

impl MukaiVector {
    pub fn new(r: Rat, c: Vec<Rat>, s: Rat) -> Self {
        assert_eq!(c.len(), LAMBDA_RANK, "degree-2 part must have 22 coordinates");
        MukaiVector { r, c, s }
    }

    pub fn zero() -> Self {
        MukaiVector::new(Rat::zero(), vec![Rat::zero(); LAMBDA_RANK], Rat::zero())
    }

    /// (r, 0, s) with zero degree-2 part.
    pub fn from_rs(r: i64, s: i64) -> Self {
        let mut v = Self::zero();
        v.r = Rat::from_integer(Int::from(r));
        v.s = Rat::from_integer(Int::from(s));
        v
    }

    /// Purely degree-2 class.
    pub fn from_degree2(c: Vec<Rat>) -> Self {
        MukaiVector::new(Rat::zero(), c, Rat::zero())
    }

    pub fn is_integral(&self) -> bool {
        self.r.is_integer() && self.s.is_integer() && self.c.iter().all(|x| x.is_integer())
    }

    pub fn to_coords(&self) -> Vec<Rat> {
        let mut v = Vec::with_capacity(MUKAI_RANK);
        v.push(self.r.clone());
        v.extend(self.c.iter().cloned());
        v.push(self.s.clone());
        v
    }

    pub fn from_coords(v: &[Rat]) -> Self {
        assert_eq!(v.len(), MUKAI_RANK);
        MukaiVector::new(v[0].clone(), v[1..23].to_vec(), v[23].clone())
    }

    pub fn add(&self, other: &MukaiVector) -> MukaiVector {
        MukaiVector::new(
            &self.r + &other.r,
            self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
            &self.s + &other.s,
        )
    }

    pub fn scale(&self, t: &Rat) -> MukaiVector {
        MukaiVector::new(
            &self.r * t,
            self.c.iter().map(|a| a * t).collect(),
            &self.s * t,
        )
    }
}

/// Mukai pairing ⟨v, w⟩ = c·c' − r s' − s r'.
pub fn pairing(v: &MukaiVector, w: &MukaiVector) -> Rat {
    lambda_dot(&v.c, &w.c) - &v.r * &w.s - &v.s * &w.r
}

/// Cup product (r r', r c' + r' c, r s' + s r' + c·c').
pub fn cup(v: &MukaiVector, w: &MukaiVector) -> MukaiVector {
    MukaiVector::new(
        &v.r * &w.r,
        v.c.iter()
            .zip(&w.c)
            .map(|(a, b)| &v.r * b + &w.r * a)
            .collect(),
        &v.r * &w.s + &v.s * &w.r + lambda_dot(&v.c, &w.c),
    )
}

/// The exponential class (1, B, B²/2) of a rational degree-2 class.
pub fn exp_class(b: &[Rat]) -> MukaiVector {
    let half = Rat::new(Int::one(), Int::from(2));
    MukaiVector::new(Rat::one(), b.to_vec(), half * lambda_dot(b, b))
}

/// Multiplication with exp(B): (r, c + rB, s + B·c + r B²/2).
pub fn exp_b(b: &[Rat], v: &MukaiVector) -> MukaiVector {
    cup(&exp_class(b), v)
}

/// The involution (r, −c, s).
pub fn dual(v: &MukaiVector) -> MukaiVector {
    MukaiVector::new(v.r.clone(), v.c.iter().map(|x| -x.clone()).collect(), v.s.clone())
}

/// Euler pairing χ(v, w) := −⟨v∨, w⟩, normalized so that χ of the structure
/// sheaf class with itself is 2.
pub fn euler_pairing(v: &MukaiVector, w: &MukaiVector) -> Rat {
    -pairing(&dual(v), w)
}

/// Mukai vector (1, 0, 1) of the structure sheaf.
pub fn v_structure_sheaf() -> MukaiVector {
    MukaiVector::from_rs(1, 1)
}

/// Mukai vector (0, 0, 1) of a point sheaf.
pub fn v_point() -> MukaiVector {
    MukaiVector::from_rs(0, 1)
}

/// Mukai vector (0, ω, −ω²/2) of a hypersurface class; ω must be integral.
pub fn v_hypersurface(omega: &[Rat]) -> MukaiVector {
    assert!(omega.iter().all(|x| x.is_integer()), "ω must be integral");
    let half = Rat::new(Int::one(), Int::from(2));
    MukaiVector::new(
        Rat::zero(),
        omega.to_vec(),
        -half * lambda_dot(omega, omega),
    )
}

/// Mukai vector (1, c, c²/2 + 1) of a line bundle class.
pub fn v_line_bundle(c: &[Rat]) -> MukaiVector {
    let half = Rat::new(Int::one(), Int::from(2));
    MukaiVector::new(
        Rat::one(),
        c.to_vec(),
        half * lambda_dot(c, c) + Rat::one(),
    )
}

/// Twisted character transport: multiplication of the untwisted class by
/// exp(B). Additive, agrees with the line-bundle twist for integral B, and
/// multiplicative across B-fields under cup.
pub fn twisted_character(b: &[Rat], untwisted: &MukaiVector) -> MukaiVector {
    exp_b(b, untwisted)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Mukai,
    Lambda,
}

/// An integer matrix certified at construction to preserve the Gram form of
/// its domain. Vectors are columns: the map sends v to M·v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    matrix: IntMatrix,
    domain: Domain,
}

impl Isometry {
    pub fn from_matrix(matrix: IntMatrix, domain: Domain) -> Result<Self> {
        let gram = match domain {
            Domain::Mukai => mukai_lattice().gram,
            Domain::Lambda => lambda_lattice().gram,
        };
        let n = gram.rows();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::RankMismatch(matrix.rows(), n));
        }
        let check = matrix.transpose().mul(&gram).mul(&matrix);
        for i in 0..n {
            for j in 0..n {
                if check[(i, j)] != gram[(i, j)] {
                    return Err(Error::NotIsometry {
                        row: i,
                        col: j,
                        got: check[(i, j)].to_string(),
                        want: gram[(i, j)].to_string(),
                    });
                }
            }
        }
        Ok(Isometry { matrix, domain })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn identity(domain: Domain) -> Self {
        let n = match domain {
            Domain::Mukai => MUKAI_RANK,
            Domain::Lambda => LAMBDA_RANK,
        };
        Isometry {
            matrix: IntMatrix::identity(n),
            domain,
        }
    }

    /// self ∘ other, re-verified.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.domain != other.domain {
            return Err(Error::InvalidInput("isometry domain mismatch".into()));
        }
        Isometry::from_matrix(self.matrix.mul(&other.matrix), self.domain)
    }

    /// Exact inverse G⁻¹MᵀG; both ambient Grams are unimodular.
    pub fn invert(&self) -> Isometry {
        let gram = match self.domain {
            Domain::Mukai => mukai_lattice().gram,
            Domain::Lambda => lambda_lattice().gram,
        };
        let g_rat = gram.to_rat();
        let n = gram.rows();
        let mt = self.matrix.transpose().to_rat();
        // solve G X = MᵀG column by column
        let rhs = mt.mul(&g_rat);
        let mut inv = IntMatrix::zero(n, n);
        for j in 0..n {
            let col: Vec<Rat> = (0..n).map(|i| rhs[(i, j)].clone()).collect();
            let x = g_rat.solve(&col).expect("gram is nondegenerate");
            for (i, xi) in x.iter().enumerate() {
                assert!(xi.is_integer(), "inverse of a lattice isometry is integral");
                inv[(i, j)] = xi.numer().clone();
            }
        }
        Isometry::from_matrix(inv, self.domain).expect("inverse preserves the form")
    }

    pub fn apply(&self, v: &MukaiVector) -> MukaiVector {
        assert_eq!(self.domain, Domain::Mukai, "apply expects a Mukai-domain isometry");
        let coords = v.to_coords();
        let image = (0..MUKAI_RANK)
            .map(|i| {
                (0..MUKAI_RANK)
                    .map(|k| Rat::from_integer(self.matrix[(i, k)].clone()) * &coords[k])
                    .sum()
            })
            .collect::<Vec<Rat>>();
        MukaiVector::from_coords(&image)
    }

    pub fn apply_lambda(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.domain, Domain::Lambda);
        (0..LAMBDA_RANK)
            .map(|i| {
                (0..LAMBDA_RANK)
                    .map(|k| Rat::from_integer(self.matrix[(i, k)].clone()) * &x[k])
                    .sum()
            })
            .collect()
    }
}

/// u2 ↦ −u1, u1 ↦ −u2, identity on Λ.
pub fn generator_i() -> Isometry {
    let mut m = IntMatrix::zero(MUKAI_RANK, MUKAI_RANK);
    m[(23, 0)] = Int::from(-1);
    m[(0, 23)] = Int::from(-1);
    for k in 1..23 {
        m[(k, k)] = Int::one();
    }
    Isometry::from_matrix(m, Domain::Mukai).expect("i preserves the pairing")
}

/// −id on the (u2, u1) plane, identity on Λ.
pub fn generator_j() -> Isometry {
    let mut m = IntMatrix::identity(MUKAI_RANK);
    m[(0, 0)] = Int::from(-1);
    m[(23, 23)] = Int::from(-1);
    Isometry::from_matrix(m, Domain::Mukai).expect("j preserves the pairing")
}

pub fn minus_id() -> Isometry {
    Isometry::from_matrix(IntMatrix::identity(MUKAI_RANK).neg(), Domain::Mukai)
        .expect("-id preserves the pairing")
}

/// Multiplication by (1, B, B²/2) for an integral degree-2 class B.
pub fn generator_exp(b: &[Int]) -> Isometry {
    assert_eq!(b.len(), LAMBDA_RANK);
    let lam = lambda_lattice().gram;
    let b_rat = rat_vec_from_int(b);
    let b_sq = form_product(&lam, &b_rat, &b_rat);
    let half_sq = &b_sq / Rat::from_integer(Int::from(2));
    assert!(half_sq.is_integer(), "Λ is even, so B²/2 is integral");
    let mut m = IntMatrix::identity(MUKAI_RANK);
    // image of u2 is (1, B, B²/2)
    for k in 0..LAMBDA_RANK {
        m[(1 + k, 0)] = b[k].clone();
    }
    m[(23, 0)] = half_sq.numer().clone();
    // image of a Λ vector t is (0, t, B·t)
    for k in 0..LAMBDA_RANK {
        let mut bt = Int::zero();
        for l in 0..LAMBDA_RANK {
            bt += &b[l] * &lam[(l, k)];
        }
        m[(23, 1 + k)] = bt;
    }
    Isometry::from_matrix(m, Domain::Mukai).expect("exp(B) preserves the pairing")
}

/// Extend an isometry of Λ to Λ̃ by the identity on the (u2, u1) plane.
pub fn embed_lambda_isometry(h: &Isometry) -> Isometry {
    assert_eq!(h.domain(), Domain::Lambda);
    let mut m = IntMatrix::identity(MUKAI_RANK);
    for i in 0..LAMBDA_RANK {
        for j in 0..LAMBDA_RANK {
            m[(1 + i, 1 + j)] = h.matrix()[(i, j)].clone();
        }
    }
    Isometry::from_matrix(m, Domain::Mukai).expect("block extension preserves the pairing")
}

/// Reflection x ↦ x + ⟨x, δ⟩δ in an integral Mukai vector of norm −2.
pub fn mukai_reflection(delta: &MukaiVector) -> Isometry {
    assert!(delta.is_integral(), "reflection class must be integral");
    assert_eq!(
        pairing(delta, delta),
        Rat::from_integer(Int::from(-2)),
        "reflection class must have norm -2"
    );
    let muk = mukai_lattice().gram;
    let d: Vec<Int> = delta
        .to_coords()
        .iter()
        .map(|x| x.numer().clone())
        .collect();
    let dual = muk.mul_vec(&d);
    let mut m = IntMatrix::identity(MUKAI_RANK);
    for j in 0..MUKAI_RANK {
        for i in 0..MUKAI_RANK {
            let t = &dual[j] * &d[i];
            m[(i, j)] += t;
        }
    }
    Isometry::from_matrix(m, Domain::Mukai).expect("reflection preserves the pairing")
}

/// Reflection x ↦ x + ⟨x, δ⟩δ in a norm −2 vector of Λ.
pub fn lambda_reflection(delta: &[Int]) -> Isometry {
    let lam = lambda_lattice().gram;
    let d_rat = rat_vec_from_int(delta);
    assert_eq!(
        form_product(&lam, &d_rat, &d_rat),
        Rat::from_integer(Int::from(-2)),
        "reflection vector must have norm -2"
    );
    let mut m = IntMatrix::identity(LAMBDA_RANK);
    for j in 0..LAMBDA_RANK {
        // ⟨e_j, δ⟩
        let mut p = Int::zero();
        for l in 0..LAMBDA_RANK {
            p += &lam[(j, l)] * &delta[l];
        }
        for i in 0..LAMBDA_RANK {
            let t = &p * &delta[i];
            m[(i, j)] += t;
        }
    }
    Isometry::from_matrix(m, Domain::Lambda).expect("reflection preserves the form")
}

/// Permutation-style generators of O(Λ) used by the word sampler.
fn lambda_generator_menu() -> Vec<Isometry> {
    let mut gens = Vec::new();
    // swap within the first hyperbolic plane
    let mut swap = IntMatrix::identity(LAMBDA_RANK);
    swap[(E1, E1)] = Int::zero();
    swap[(E2, E2)] = Int::zero();
    swap[(E1, E2)] = Int::one();
    swap[(E2, E1)] = Int::one();
    gens.push(Isometry::from_matrix(swap, Domain::Lambda).unwrap());
    // block swaps of hyperbolic planes
    for (a, b) in [(E1, F1), (F1, G1)] {
        let mut m = IntMatrix::identity(LAMBDA_RANK);
        for k in 0..2 {
            m[(a + k, a + k)] = Int::zero();
            m[(b + k, b + k)] = Int::zero();
            m[(a + k, b + k)] = Int::one();
            m[(b + k, a + k)] = Int::one();
        }
        gens.push(Isometry::from_matrix(m, Domain::Lambda).unwrap());
    }
    // swap of the two E8 blocks
    let mut m = IntMatrix::identity(LAMBDA_RANK);
    for k in 0..8 {
        m[(6 + k, 6 + k)] = Int::zero();
        m[(14 + k, 14 + k)] = Int::zero();
        m[(6 + k, 14 + k)] = Int::one();
        m[(14 + k, 6 + k)] = Int::one();
    }
    gens.push(Isometry::from_matrix(m, Domain::Lambda).unwrap());
    // norm −2 reflections
    for idx in [(E1, E2), (F1, F2), (G1, G2)] {
        let mut d = vec![Int::zero(); LAMBDA_RANK];
        d[idx.0] = Int::one();
        d[idx.1] = Int::from(-1);
        gens.push(lambda_reflection(&d));
    }
    for root in [6usize, 7, 14] {
        let mut d = vec![Int::zero(); LAMBDA_RANK];
        d[root] = Int::one();
        gens.push(lambda_reflection(&d));
    }
    // global sign flip
    gens.push(Isometry::from_matrix(IntMatrix::identity(LAMBDA_RANK).neg(), Domain::Lambda).unwrap());
    gens
}

/// Deterministic word in O(Λ) generators.
pub fn random_lambda_word(seed: u64, length: usize) -> Isometry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let menu = lambda_generator_menu();
    let mut acc = Isometry::identity(Domain::Lambda);
    for _ in 0..length {
        let g = &menu[rng.gen_range(0..menu.len())];
        acc = acc.compose(g).expect("composition of certified isometries");
    }
    acc
}

fn random_small_b(rng: &mut ChaCha8Rng) -> Vec<Int> {
    let mut b = vec![Int::zero(); LAMBDA_RANK];
    let support = rng.gen_range(1..=3usize);
    for _ in 0..support {
        let idx = rng.gen_range(0..LAMBDA_RANK);
        b[idx] = Int::from(rng.gen_range(-2i64..=2));
    }
    b
}

/// Deterministic word in the generators {exp(B), i, O(Λ)} of O(Λ̃).
pub fn random_word(seed: u64, length: usize) -> Isometry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda_menu = lambda_generator_menu();
    let mut acc = Isometry::identity(Domain::Mukai);
    for _ in 0..length {
        let g = match rng.gen_range(0..3u8) {
            0 => generator_exp(&random_small_b(&mut rng)),
            1 => generator_i(),
            _ => embed_lambda_isometry(&lambda_menu[rng.gen_range(0..lambda_menu.len())]),
        };
        acc = acc.compose(&g).expect("composition of certified isometries");
    }
    acc
}

/// Rational 24×24 matrix of multiplication by exp(B) for rational B; used for
/// transporting frames and checking Hodge conditions.
pub fn exp_matrix_rat(b: &[Rat]) -> RatMatrix {
    let lam = lambda_lattice().gram;
    let half = Rat::new(Int::one(), Int::from(2));
    let bsq_half = half * form_product(&lam, b, b);
    RatMatrix::from_fn(MUKAI_RANK, MUKAI_RANK, |i, j| {
        if i == j {
            Rat::one()
        } else if j == 0 && (1..23).contains(&i) {
            b[i - 1].clone()
        } else if j == 0 && i == 23 {
            bsq_half.clone()
        } else if i == 23 && (1..23).contains(&j) {
            let ej: Vec<Rat> = (0..LAMBDA_RANK)
                .map(|k| {
                    if k == j - 1 {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            form_product(&lam, b, &ej)
        } else {
            Rat::zero()
        }
    })
}

/// λ_B: the least positive integer with λ·B integral.
pub fn b_field_denominator(b: &[Rat]) -> Int {
    clear_denominators(b).0
}
