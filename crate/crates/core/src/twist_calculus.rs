//! Dehn twists along a boundary torus, recorded by their classes in
//! `H₁(T) ≅ ℤ²`.
//!
//! The twist `f_a([z], t) = ([z + t·a], t)` on `T × [0, 1]` satisfies
//! `f_{a+b} = f_a ∘ f_b`, so the twists that extend over a 4-manifold form
//! a subgroup of `ℤ²`, determined by any generating set.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which basis of `H₁(T)` the coordinates refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// Meridian `α` and longitude `β` of the torus in the surgery picture.
    AlphaBeta,
    /// Meridian `μ` and Seifert longitude `λ` of a knot exterior.
    MuLambda,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("cannot combine classes in bases {0:?} and {1:?}")]
    BasisMismatch(Basis, Basis),
    #[error("expected a class in basis {expected:?}, got {found:?}")]
    WrongBasis { expected: Basis, found: Basis },
    #[error("torus knot parameters ({p}, {q}) must be coprime with |p|, |q| >= 2")]
    InvalidTorusParameters { p: i64, q: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistClass {
    pub x: i64,
    pub y: i64,
    pub basis: Basis,
}

impl TwistClass {
    pub fn alpha_beta(x: i64, y: i64) -> Self {
        TwistClass { x, y, basis: Basis::AlphaBeta }
    }

    pub fn mu_lambda(x: i64, y: i64) -> Self {
        TwistClass { x, y, basis: Basis::MuLambda }
    }

    pub fn negate(&self) -> Self {
        TwistClass {
            x: -self.x,
            y: -self.y,
            basis: self.basis,
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y) == 1
    }
}

impl fmt::Display for TwistClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = match self.basis {
            Basis::AlphaBeta => ("alpha", "beta"),
            Basis::MuLambda => ("mu", "lambda"),
        };
        write!(f, "{}*{a} + {}*{b}", self.x, self.y)
    }
}

/// `f_{a+b} = f_a ∘ f_b`: composition of twists is addition of classes.
pub fn compose(a: &TwistClass, b: &TwistClass) -> Result<TwistClass, TwistError> {
    if a.basis != b.basis {
        return Err(TwistError::BasisMismatch(a.basis, b.basis));
    }
    Ok(TwistClass {
        x: a.x + b.x,
        y: a.y + b.y,
        basis: a.basis,
    })
}

/// A subgroup of `ℤ²` in row Hermite normal form.
///
/// Rank 2: rows `(a, b), (0, d)` with `a, d > 0` and `0 ≤ b < d`.
/// Rank 1: a single row whose first nonzero entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup2 {
    pub basis: Option<Basis>,
    pub generators: Vec<(i64, i64)>,
    pub rank: usize,
    /// `None` when the index is infinite (rank below 2).
    pub index: Option<u64>,
}

impl Subgroup2 {
    pub fn is_everything(&self) -> bool {
        self.index == Some(1)
    }
}

fn hermite_form(vectors: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut rows: Vec<(i128, i128)> = vectors.iter().map(|&(x, y)| (x as i128, y as i128)).collect();
    // Euclid down the first column.
    let pivot = loop {
        let Some(k) = (0..rows.len())
            .filter(|&i| rows[i].0 != 0)
            .min_by_key(|&i| rows[i].0.abs())
        else {
            break None;
        };
        let p = rows[k];
        let mut done = true;
        for (i, r) in rows.iter_mut().enumerate() {
            if i != k && r.0 != 0 {
                let q = r.0.div_euclid(p.0);
                *r = (r.0 - q * p.0, r.1 - q * p.1);
                done &= r.0 == 0;
            }
        }
        if done {
            break Some(rows.swap_remove(k));
        }
    };
    let d = rows.iter().fold(0i128, |g, r| g.gcd(&r.1));
    let to64 = |v: i128| i64::try_from(v).expect("subgroup entries fit in i64");
    match pivot {
        Some((a, b)) => {
            let (a, b) = if a < 0 { (-a, -b) } else { (a, b) };
            if d == 0 {
                vec![(to64(a), to64(b))]
            } else {
                vec![(to64(a), to64(b.rem_euclid(d))), (0, to64(d))]
            }
        }
        None if d == 0 => vec![],
        None => vec![(0, to64(d))],
    }
}

/// The subgroup generated by the given twist classes.
pub fn extension_subgroup(extending: &[TwistClass]) -> Result<Subgroup2, TwistError> {
    let basis = extending.first().map(|c| c.basis);
    if let Some(b) = basis {
        if let Some(c) = extending.iter().find(|c| c.basis != b) {
            return Err(TwistError::BasisMismatch(b, c.basis));
        }
    }
    let vectors: Vec<(i64, i64)> = extending.iter().map(|c| (c.x, c.y)).collect();
    let generators = hermite_form(&vectors);
    let rank = generators.len();
    let index = (rank == 2).then(|| (generators[0].0 * generators[1].1) as u64);
    Ok(Subgroup2 {
        basis,
        generators,
        rank,
        index,
    })
}

/// Class of a regular fibre on the peripheral torus of the `(p, q)`
/// torus-knot exterior: `λ + pq·μ`. Twisting along it is isotopic to the
/// identity, since the circle action rotates the fibres.
pub fn seifert_orbit_class(p: i64, q: i64) -> Result<TwistClass, TwistError> {
    if p.abs() < 2 || q.abs() < 2 || p.gcd(&q) != 1 {
        return Err(TwistError::InvalidTorusParameters { p, q });
    }
    Ok(TwistClass::mu_lambda(p * q, 1))
}

/// Inverse of `α ↦ μ`, `β ↦ μ + λ`: `m·μ + l·λ = (m − l)·α + l·β`.
pub fn to_alpha_beta(c: &TwistClass) -> Result<TwistClass, TwistError> {
    if c.basis != Basis::MuLambda {
        return Err(TwistError::WrongBasis {
            expected: Basis::MuLambda,
            found: c.basis,
        });
    }
    Ok(TwistClass::alpha_beta(c.x - c.y, c.y))
}

/// `α ↦ μ`, `β ↦ μ + λ`.
pub fn to_mu_lambda(c: &TwistClass) -> Result<TwistClass, TwistError> {
    if c.basis != Basis::AlphaBeta {
        return Err(TwistError::WrongBasis {
            expected: Basis::AlphaBeta,
            found: c.basis,
        });
    }
    Ok(TwistClass::mu_lambda(c.x + c.y, c.y))
}
