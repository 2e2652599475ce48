//! Seifert matrices and the algebraic concordance obstructions read off
//! them: signature, Alexander polynomial and the Fox–Milnor condition.
//!
//! Conventions: the Alexander polynomial is `det(V − t·Vᵀ)` normalized to
//! be centred with `Δ(1) = 1`; the signature is that of `V + Vᵀ`, and the
//! right-handed trefoil has signature −2.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::factor::factor;
use crate::matrix::{inertia, IntMatrix, Matrix};
use crate::poly::{LaurentPoly, Poly};

/// Default bound on the span of Δ accepted by [`fox_milnor`].
pub const DEFAULT_FOX_MILNOR_DEGREE_BOUND: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeifertError {
    #[error("Seifert matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("Seifert matrix must have even size, got {0}")]
    OddSize(usize),
    #[error("det(V - V^T) = {0}, expected 1")]
    NotSymplectic(BigInt),
    #[error("torus knot parameters ({p}, {q}) must be coprime with |p|, |q| >= 2")]
    InvalidTorusParameters { p: i64, q: i64 },
    #[error("cable parameter n must be nonzero")]
    ZeroCable,
    #[error("Alexander polynomial of span {span} exceeds the Fox-Milnor degree bound {bound}")]
    DegreeBound { span: u64, bound: u64 },
    #[error("the zero polynomial is not an Alexander polynomial")]
    ZeroPolynomial,
}

/// Integer square matrix `V` of even size with `det(V − Vᵀ) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self, SeifertError> {
        if !v.is_square() {
            return Err(SeifertError::NotSquare {
                rows: v.rows(),
                cols: v.cols(),
            });
        }
        if v.rows() % 2 != 0 {
            return Err(SeifertError::OddSize(v.rows()));
        }
        let det = (&v - &v.transpose()).determinant();
        if !det.is_one() {
            return Err(SeifertError::NotSymplectic(det));
        }
        Ok(SeifertMatrix { v })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, SeifertError> {
        if rows.is_empty() {
            return Ok(unknot());
        }
        let width = rows[0].as_ref().len();
        if rows.iter().any(|r| r.as_ref().len() != width) {
            return Err(SeifertError::NotSquare {
                rows: rows.len(),
                cols: width,
            });
        }
        SeifertMatrix::new(IntMatrix::from_i64(rows))
    }

    /// Skips validation; only for constructions that preserve it.
    fn trusted(v: IntMatrix) -> Self {
        debug_assert!(SeifertMatrix::new(v.clone()).is_ok(), "invalid Seifert matrix {v:?}");
        SeifertMatrix { v }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.v.rows()
    }

    pub fn genus(&self) -> usize {
        self.v.rows() / 2
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.v.to_i64_rows()
    }
}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeifertMatrix({:?})", self.v)
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.v, f)
    }
}

pub fn unknot() -> SeifertMatrix {
    SeifertMatrix { v: IntMatrix::zeros(0, 0) }
}

/// `(k−1)×(k−1)` upper bidiagonal: 1 on the diagonal, −1 above.
fn fence(k: usize) -> IntMatrix {
    IntMatrix::from_fn(k - 1, k - 1, |i, j| {
        if i == j {
            BigInt::one()
        } else if j == i + 1 {
            -BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

fn kronecker(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (br, bc) = (b.rows(), b.cols());
    IntMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| &a[(i / br, j / bc)] * &b[(i % br, j % bc)])
}

/// Seifert matrix of the `(p, q)` torus knot from the fibre surface
/// (a plumbing of `(|p|−1)(|q|−1)` Hopf bands): `V = −(A_p ⊗ A_q)`.
/// Opposite signs give the mirror; `T(p, q)` with both positive is the
/// right-handed family (negative signature).
pub fn torus_knot_seifert(p: i64, q: i64) -> Result<SeifertMatrix, SeifertError> {
    if p.abs() < 2 || q.abs() < 2 || p.gcd(&q) != 1 {
        return Err(SeifertError::InvalidTorusParameters { p, q });
    }
    let v = -&kronecker(&fence(p.unsigned_abs() as usize), &fence(q.unsigned_abs() as usize));
    let positive = SeifertMatrix::trusted(v);
    Ok(match (p < 0, q < 0) {
        (false, false) => positive,
        (true, true) => reverse(&positive),
        _ => mirror(&positive),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Clasp {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

/// Untwisted Whitehead double of any companion. The companion only enters
/// through a band that links nothing, so the form is companion-independent.
pub fn whitehead_double_seifert(clasp: Clasp) -> SeifertMatrix {
    match clasp {
        Clasp::Positive => SeifertMatrix::trusted(IntMatrix::from_i64(&[[-1, 1], [0, 0]])),
        Clasp::Negative => SeifertMatrix::trusted(IntMatrix::from_i64(&[[1, 1], [0, 0]])),
    }
}

/// Twist knot with `k` full twists: `V = [[1, 1], [0, −k]]`, so
/// `Δ ≐ −k t + (2k + 1) − k t⁻¹`. `k = 1` is the figure-eight, `k = 2` the
/// stevedore, `k = −1` the left-handed trefoil, `k = 0` the unknot.
pub fn twist_knot_seifert(k: i64) -> SeifertMatrix {
    SeifertMatrix::trusted(IntMatrix::from_i64(&[[1, 1], [0, -k]]))
}

pub fn figure_eight() -> SeifertMatrix {
    twist_knot_seifert(1)
}

pub fn stevedore() -> SeifertMatrix {
    twist_knot_seifert(2)
}

/// `−Vᵀ`: a Seifert matrix of the mirror image.
pub fn mirror(v: &SeifertMatrix) -> SeifertMatrix {
    SeifertMatrix::trusted(-&v.v.transpose())
}

/// `Vᵀ`: a Seifert matrix of the reverse.
pub fn reverse(v: &SeifertMatrix) -> SeifertMatrix {
    SeifertMatrix::trusted(v.v.transpose())
}

/// `−V`: mirror and reverse together, the concordance inverse.
pub fn concordance_inverse(v: &SeifertMatrix) -> SeifertMatrix {
    reverse(&mirror(v))
}

pub fn connected_sum(v: &SeifertMatrix, w: &SeifertMatrix) -> SeifertMatrix {
    SeifertMatrix::trusted(v.v.block_diag(&w.v))
}

/// Seifert matrix of `|n|` parallel copies of a Seifert surface, joined
/// into the `(n, 1)` cable. Blocks: `V` on and above the diagonal, `Vᵀ`
/// below. Negative `n` reverses the string orientation, giving the
/// transpose of the `|n|` construction.
pub fn parallel_cable(v: &SeifertMatrix, n: i64) -> Result<SeifertMatrix, SeifertError> {
    if n == 0 {
        return Err(SeifertError::ZeroCable);
    }
    let copies = n.unsigned_abs() as usize;
    let s = v.size();
    let vt = v.v.transpose();
    let cable = IntMatrix::from_fn(s * copies, s * copies, |i, j| {
        let (bi, bj) = (i / s, j / s);
        let (r, c) = (i % s, j % s);
        if bi <= bj {
            v.v[(r, c)].clone()
        } else {
            vt[(r, c)].clone()
        }
    });
    let out = SeifertMatrix::trusted(cable);
    Ok(if n < 0 { reverse(&out) } else { out })
}

/// Signature of `V + Vᵀ` by exact congruence diagonalization.
pub fn signature(v: &SeifertMatrix) -> i64 {
    inertia(&(&v.v + &v.v.transpose()).to_rational()).signature()
}

/// `det(V − t·Vᵀ)` in ℤ[t], by fraction-free elimination.
pub fn alexander_determinant(v: &SeifertMatrix) -> Poly {
    let vt = v.v.transpose();
    let m: Matrix<Poly> = Matrix::from_fn(v.size(), v.size(), |i, j| {
        Poly::new(vec![v.v[(i, j)].clone(), -&vt[(i, j)]])
    });
    poly_determinant(m)
}

/// Bareiss elimination over ℤ[t]; every division is exact.
fn poly_determinant(mut a: Matrix<Poly>) -> Poly {
    let n = a.rows();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[(i, j)] * &a[(k, k)]) - &(&a[(i, k)] * &a[(k, j)]);
                a[(i, j)] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Normalized Alexander polynomial: symmetric, `Δ(1) = 1`.
pub fn alexander_polynomial(v: &SeifertMatrix) -> LaurentPoly {
    LaurentPoly::from_poly(alexander_determinant(v)).normalized()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoxMilnorWitness {
    /// Δ has odd span, so it cannot be `f(t)f(t⁻¹)` up to units.
    OddSpan { span: u64 },
    /// `|Δ(−1)| = f(−1)²` would be a square.
    NonSquareDeterminant { determinant: BigInt },
    /// The content of Δ would be the square of the content of `f`.
    NonSquareContent { content: BigInt },
    /// An irreducible factor whose multiplicity does not match that of
    /// its reciprocal (or, for a self-reciprocal factor, is odd).
    UnpairedFactor {
        factor: Poly,
        multiplicity: u32,
        partner: Poly,
        partner_multiplicity: u32,
    },
}

impl fmt::Display for FoxMilnorWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoxMilnorWitness::OddSpan { span } => write!(f, "odd span {span}"),
            FoxMilnorWitness::NonSquareDeterminant { determinant } => {
                write!(f, "|Delta(-1)| = {determinant} is not a perfect square")
            }
            FoxMilnorWitness::NonSquareContent { content } => {
                write!(f, "content {content} is not a perfect square")
            }
            FoxMilnorWitness::UnpairedFactor {
                factor,
                multiplicity,
                partner,
                partner_multiplicity,
            } => {
                if factor == partner {
                    write!(f, "self-reciprocal factor {factor} has odd multiplicity {multiplicity}")
                } else {
                    write!(
                        f,
                        "factor {factor} (multiplicity {multiplicity}) but its reciprocal {partner} has multiplicity {partner_multiplicity}"
                    )
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoxMilnor {
    /// `Δ ≐ f(t)·f(t⁻¹)`; `factors` is the irreducible factorization of the
    /// polynomial part of Δ.
    Passes { f: Poly, factors: Vec<(Poly, u32)> },
    Fails(FoxMilnorWitness),
}

pub fn fox_milnor(delta: &LaurentPoly) -> Result<FoxMilnor, SeifertError> {
    fox_milnor_with_bound(delta, DEFAULT_FOX_MILNOR_DEGREE_BOUND)
}

fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// Primitive reciprocal with positive leading coefficient.
fn reciprocal_normalized(g: &Poly) -> Poly {
    g.reciprocal().primitive_part()
}

/// Decides whether Δ factors as `f(t)·f(t⁻¹)` up to units. Cheap
/// necessary conditions run first; the full test factors Δ over ℤ.
pub fn fox_milnor_with_bound(delta: &LaurentPoly, bound: u64) -> Result<FoxMilnor, SeifertError> {
    if delta.is_zero() {
        return Err(SeifertError::ZeroPolynomial);
    }
    let span = delta.span();
    if span % 2 == 1 {
        return Ok(FoxMilnor::Fails(FoxMilnorWitness::OddSpan { span }));
    }
    let determinant = delta.eval_neg_one().abs();
    if !is_square(&determinant) {
        return Ok(FoxMilnor::Fails(FoxMilnorWitness::NonSquareDeterminant { determinant }));
    }
    if span > bound {
        return Err(SeifertError::DegreeBound { span, bound });
    }

    let fact = factor(delta.body());
    let content = fact.content.abs();
    if !is_square(&content) {
        return Ok(FoxMilnor::Fails(FoxMilnorWitness::NonSquareContent { content }));
    }
    let multiplicity = |g: &Poly| fact.factors.iter().find(|(h, _)| h == g).map_or(0, |(_, m)| *m);

    let mut f = Poly::constant(content.sqrt());
    for (g, m) in &fact.factors {
        let partner = reciprocal_normalized(g);
        let pm = multiplicity(&partner);
        if partner == *g {
            if m % 2 == 1 {
                return Ok(FoxMilnor::Fails(FoxMilnorWitness::UnpairedFactor {
                    factor: g.clone(),
                    multiplicity: *m,
                    partner,
                    partner_multiplicity: pm,
                }));
            }
            f = &f * &g.pow(m / 2);
        } else if pm != *m {
            return Ok(FoxMilnor::Fails(FoxMilnorWitness::UnpairedFactor {
                factor: g.clone(),
                multiplicity: *m,
                partner,
                partner_multiplicity: pm,
            }));
        } else {
            // take one of each reciprocal pair: the one with the larger
            // constant term, ties broken by the canonical order
            let key = |p: &Poly| p.coeff(0).abs();
            let take = match key(g).cmp(&key(&partner)) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => g.canonical_cmp(&partner).is_lt(),
            };
            if take {
                f = &f * &g.pow(*m);
            }
        }
    }
    if f.eval(&BigInt::one()).is_negative() {
        f = -&f;
    }
    let check = &LaurentPoly::from_poly(f.clone()) * &LaurentPoly::from_poly(f.clone()).conjugate();
    assert!(check.is_associate(delta), "Fox-Milnor certificate does not reproduce Delta");
    Ok(FoxMilnor::Passes { f, factors: fact.factors })
}

/// Three-valued algebraic sliceness: only obstructions are asserted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceVerdict {
    ObstructedBySignature { signature: i64 },
    ObstructedByFoxMilnor { witness: FoxMilnorWitness },
    Unknown { reason: String },
}

impl SliceVerdict {
    pub fn is_obstructed(&self) -> bool {
        !matches!(self, SliceVerdict::Unknown { .. })
    }
}

impl fmt::Display for SliceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceVerdict::ObstructedBySignature { signature } => {
                write!(f, "not algebraically slice: signature {signature}")
            }
            SliceVerdict::ObstructedByFoxMilnor { witness } => {
                write!(f, "not algebraically slice: Fox-Milnor fails ({witness})")
            }
            SliceVerdict::Unknown { reason } => write!(f, "no obstruction found: {reason}"),
        }
    }
}

pub fn algebraic_slice_verdict(v: &SeifertMatrix) -> SliceVerdict {
    algebraic_slice_verdict_with_bound(v, DEFAULT_FOX_MILNOR_DEGREE_BOUND)
}

pub fn algebraic_slice_verdict_with_bound(v: &SeifertMatrix, bound: u64) -> SliceVerdict {
    let sigma = signature(v);
    if sigma != 0 {
        return SliceVerdict::ObstructedBySignature { signature: sigma };
    }
    match fox_milnor_with_bound(&alexander_polynomial(v), bound) {
        Ok(FoxMilnor::Fails(witness)) => SliceVerdict::ObstructedByFoxMilnor { witness },
        Ok(FoxMilnor::Passes { f, .. }) => SliceVerdict::Unknown {
            reason: format!("signature 0 and Delta = f(t)f(1/t) with f = {f}"),
        },
        Err(e) => SliceVerdict::Unknown {
            reason: format!("signature 0; {e}"),
        },
    }
}
