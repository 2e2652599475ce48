//! Symmetric unimodular integer forms.
//!
//! Covers parity, exact signature, the classification of indefinite even
//! forms as `a·E8 ⊕ b·H`, enumeration of splittings of an even form into
//! two even summands under Rohlin signature constraints, and the
//! quadratic-residue test for lens spaces.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::matrix::{inertia, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("form matrix must be square and symmetric")]
    NotSymmetric,
    #[error("form is not unimodular: det = {0}")]
    NotUnimodular(BigInt),
    #[error("form is odd; the even classification does not apply")]
    Odd,
    #[error("definite form of rank {rank}, signature {signature}: not covered by the indefinite classification")]
    Definite { rank: usize, signature: i64 },
    #[error("Rohlin invariant must be 0 or 1, got {0}")]
    InvalidRohlin(u8),
    #[error("lens space parameters ({p}, {q}) need p >= 2 and gcd(p, q) = 1")]
    InvalidLens { p: u64, q: i64 },
}

/// Symmetric integer matrix with determinant ±1. The empty form is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymUnimodularForm {
    q: IntMatrix,
}

impl SymUnimodularForm {
    pub fn new(q: IntMatrix) -> Result<Self, FormError> {
        if !q.is_square() || !q.is_symmetric() {
            return Err(FormError::NotSymmetric);
        }
        let det = q.determinant();
        if !det.abs().is_one() {
            return Err(FormError::NotUnimodular(det));
        }
        Ok(SymUnimodularForm { q })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, FormError> {
        if rows.is_empty() {
            return Ok(Self::zero());
        }
        if rows.iter().any(|r| r.as_ref().len() != rows.len()) {
            return Err(FormError::NotSymmetric);
        }
        Self::new(IntMatrix::from_i64(rows))
    }

    /// The rank-0 form.
    pub fn zero() -> Self {
        SymUnimodularForm { q: IntMatrix::zeros(0, 0) }
    }

    /// Positive definite E8 (Cartan matrix of the E8 root system).
    pub fn e8() -> Self {
        let mut rows = [[0i64; 8]; 8];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
        }
        // chain 0-1-2-3-4-5-6 with node 7 attached to node 4
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
            rows[a][b] = -1;
            rows[b][a] = -1;
        }
        SymUnimodularForm { q: IntMatrix::from_i64(&rows) }
    }

    pub fn hyperbolic() -> Self {
        SymUnimodularForm { q: IntMatrix::from_i64(&[[0, 1], [1, 0]]) }
    }

    /// Explicit `a·E8 ⊕ b·H` (with `−E8` blocks when `a < 0`).
    pub fn from_class(class: EvenFormClass) -> Self {
        let e8 = if class.e8_count < 0 { Self::e8().negate() } else { Self::e8() };
        let mut out = Self::zero();
        for _ in 0..class.e8_count.unsigned_abs() {
            out = out.direct_sum(&e8);
        }
        for _ in 0..class.h_count {
            out = out.direct_sum(&Self::hyperbolic());
        }
        out
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.q
    }

    pub fn rank(&self) -> usize {
        self.q.rows()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        SymUnimodularForm { q: self.q.block_diag(&other.q) }
    }

    /// Orientation reversal.
    pub fn negate(&self) -> Self {
        SymUnimodularForm { q: -&self.q }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

pub fn parity(q: &SymUnimodularForm) -> Parity {
    let m = q.matrix();
    if (0..m.rows()).all(|i| m[(i, i)].is_even()) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub fn exact_signature(q: &SymUnimodularForm) -> i64 {
    inertia(&q.matrix().to_rational()).signature()
}

/// `e8_count·E8 ⊕ h_count·H`; a negative `e8_count` means copies of `−E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvenFormClass {
    pub e8_count: i64,
    pub h_count: u64,
}

impl EvenFormClass {
    pub const ZERO: EvenFormClass = EvenFormClass { e8_count: 0, h_count: 0 };
    pub const E8: EvenFormClass = EvenFormClass { e8_count: 1, h_count: 0 };
    pub const H: EvenFormClass = EvenFormClass { e8_count: 0, h_count: 1 };
    pub const E8_PLUS_H: EvenFormClass = EvenFormClass { e8_count: 1, h_count: 1 };

    pub fn new(e8_count: i64, h_count: u64) -> Self {
        EvenFormClass { e8_count, h_count }
    }

    pub fn rank(&self) -> u64 {
        8 * self.e8_count.unsigned_abs() + 2 * self.h_count
    }

    pub fn signature(&self) -> i64 {
        8 * self.e8_count
    }

    /// The class with the given rank and signature, when one exists.
    pub fn from_rank_signature(rank: u64, signature: i64) -> Option<Self> {
        let abs = signature.unsigned_abs();
        if signature % 8 != 0 || abs > rank || (rank - abs) % 2 != 0 {
            return None;
        }
        Some(EvenFormClass {
            e8_count: signature / 8,
            h_count: (rank - abs) / 2,
        })
    }
}

impl fmt::Display for EvenFormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.e8_count {
            0 => {}
            1 => parts.push("E8".to_string()),
            -1 => parts.push("-E8".to_string()),
            a if a < 0 => parts.push(format!("{}(-E8)", -a)),
            a => parts.push(format!("{a}E8")),
        }
        match self.h_count {
            0 => {}
            1 => parts.push("H".to_string()),
            b => parts.push(format!("{b}H")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// The class of an even form that is indefinite or zero.
pub fn classify_indefinite_even(q: &SymUnimodularForm) -> Result<EvenFormClass, FormError> {
    if parity(q) == Parity::Odd {
        return Err(FormError::Odd);
    }
    let inertia = inertia(&q.matrix().to_rational());
    let rank = q.rank();
    let signature = inertia.signature();
    if rank > 0 && (inertia.positive == 0 || inertia.negative == 0) {
        return Err(FormError::Definite { rank, signature });
    }
    Ok(EvenFormClass::from_rank_signature(rank as u64, signature).expect("even unimodular forms have 8 | signature"))
}

/// `σ ≡ residue (mod modulus)`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignatureCongruence {
    pub residue: i64,
    pub modulus: i64,
}

impl SignatureCongruence {
    pub fn satisfied_by(&self, signature: i64) -> bool {
        (signature - self.residue).rem_euclid(self.modulus) == 0
    }
}

impl fmt::Display for SignatureCongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sigma = {} mod {}", self.residue, self.modulus)
    }
}

/// Signature constraint on a smooth spin filling of a homology sphere
/// with Rohlin invariant `rho`: `σ ≡ 8ρ (mod 16)`.
pub fn rohlin_constraint(rho: u8) -> Result<SignatureCongruence, FormError> {
    if rho > 1 {
        return Err(FormError::InvalidRohlin(rho));
    }
    Ok(SignatureCongruence {
        residue: 8 * rho as i64,
        modulus: 16,
    })
}

/// All ordered pairs `(Q₁, Q₂)` of even classes with `Q₁ ⊕ Q₂` of the same
/// rank and signature as `total`, each side meeting its constraint.
/// Sorted by the first summand's rank, then signature.
pub fn enumerate_even_splittings(
    total: EvenFormClass,
    first: Option<SignatureCongruence>,
    second: Option<SignatureCongruence>,
) -> Vec<(EvenFormClass, EvenFormClass)> {
    let rank = total.rank();
    let signature = total.signature();
    let mut out = Vec::new();
    for rank1 in 0..=rank {
        let max_a = (rank1 / 8) as i64;
        for a1 in -max_a..=max_a {
            let Some(q1) = EvenFormClass::from_rank_signature(rank1, 8 * a1) else {
                continue;
            };
            let Some(q2) = EvenFormClass::from_rank_signature(rank - rank1, signature - 8 * a1) else {
                continue;
            };
            let ok1 = first.is_none_or(|c| c.satisfied_by(q1.signature()));
            let ok2 = second.is_none_or(|c| c.satisfied_by(q2.signature()));
            if ok1 && ok2 {
                out.push((q1, q2));
            }
        }
    }
    out
}

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut result = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

fn prime_factorization(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Whether the unit `a` is a square modulo `n`, via the prime-power
/// criteria (Euler's criterion at odd primes, residues mod 8 at 2).
pub fn is_unit_square(a: u64, n: u64) -> bool {
    prime_factorization(n).into_iter().all(|(r, e)| {
        if r == 2 {
            match e {
                1 => true,
                2 => a % 4 == 1,
                _ => a % 8 == 1,
            }
        } else {
            mod_pow(a % r, (r - 1) / 2, r) == 1
        }
    })
}

/// Squares of units modulo `p`, sorted: the possible values of `±q` for a
/// lens space `L(p, q)` that bounds.
pub fn square_units(p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..p)
        .filter(|k| k.gcd(&p) == 1)
        .map(|k| ((k as u128 * k as u128) % p as u128) as u64)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `L(p, q)` bounds a simply connected topological 4-manifold with
/// `b₂ = 1` iff `q` or `−q` is a square mod `p`.
pub fn lens_qr_bounding(p: u64, q: i64) -> Result<bool, FormError> {
    if p < 2 || (q.unsigned_abs()).gcd(&p) != 1 {
        return Err(FormError::InvalidLens { p, q });
    }
    let r = q.rem_euclid(p as i64) as u64;
    Ok(is_unit_square(r, p) || is_unit_square(p - r, p))
}
