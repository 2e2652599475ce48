//! Homology and linking numbers in surgered 3-manifolds.
//!
//! For a surgery presentation with linking matrix `B` and curves `σ`, `η`
//! in the complement whose S³ linking vectors with the components are `a`
//! and `b`, Hoste's formula gives the linking number in the surgered
//! manifold:
//!
//! ```text
//! lk_Y(σ, η) = lk_S³(σ, η) − a · B⁻¹ · bᵀ
//! ```
//!
//! When `σ = η`, `lk_S³(σ, σ)` means the linking with the tangential
//! pushoff. For two distinct curves on a common torus (which meet), it
//! means `lk_S³(σ, η⁺)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::surgery_model::{CurveSpec, TorusCurveBasis};

/// `D = U·M·V` with `U`, `V` unimodular and `D` diagonal with
/// non-negative entries `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The diagonal of `D` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !d[(i, j)].is_zero())
                .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()));
            let Some((pi, pj)) = pivot else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    add_row_multiple(&mut d, i, t, &-&q);
                    add_row_multiple(&mut u, i, t, &-&q);
                }
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    add_col_multiple(&mut d, j, t, &-&q);
                    add_col_multiple(&mut v, j, t, &-&q);
                }
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot now isolated; enforce divisibility of the remaining block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[(i, j)] % &d[(t, t)]).is_zero());
            match bad {
                Some((i, _)) => {
                    add_row_multiple(&mut d, t, i, &BigInt::one());
                    add_row_multiple(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    SmithForm { u, d, v }
}

/// `row[target] += k · row[source]`
fn add_row_multiple(m: &mut IntMatrix, target: usize, source: usize, k: &BigInt) {
    for j in 0..m.cols() {
        let delta = k * &m[(source, j)];
        m[(target, j)] += delta;
    }
}

/// `col[target] += k · col[source]`
fn add_col_multiple(m: &mut IntMatrix, target: usize, source: usize, k: &BigInt) {
    for i in 0..m.rows() {
        let delta = k * &m[(i, source)];
        m[(i, target)] += delta;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        m[(r, j)] = -&m[(r, j)];
    }
}

/// `H₁` of the surgered manifold, presented by the linking matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    /// Invariant factors greater than 1, in divisibility order.
    pub torsion_coefficients: Vec<BigInt>,
    pub free_rank: usize,
    pub is_homology_sphere: bool,
}

impl HomologyReport {
    /// Human-readable group, e.g. `Z + Z/3` or `0`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = vec!["Z".to_string(); self.free_rank];
        parts.extend(self.torsion_coefficients.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn first_homology(b: &IntMatrix) -> HomologyReport {
    assert!(b.is_square(), "linking matrix must be square");
    let diag = smith_normal_form(b).diagonal();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    let torsion_coefficients: Vec<BigInt> = diag.into_iter().filter(|x| *x > BigInt::one()).collect();
    let free_rank = b.rows() - rank;
    HomologyReport {
        is_homology_sphere: free_rank == 0 && torsion_coefficients.is_empty(),
        torsion_coefficients,
        free_rank,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LinkingError {
    #[error("linking matrix is singular; the curves need not be rationally null-homologous")]
    SingularMatrix,
    #[error("curve `{curve}` has {found} component linkings, the matrix has size {expected}")]
    DimensionMismatch {
        curve: String,
        expected: usize,
        found: usize,
    },
    #[error("no pushoff data between `{0}` and `{1}`")]
    MissingPushoff(String, String),
}

fn check_dimension(b: &IntMatrix, c: &CurveSpec) -> Result<(), LinkingError> {
    if c.component_linkings.len() != b.rows() {
        return Err(LinkingError::DimensionMismatch {
            curve: c.id.clone(),
            expected: b.rows(),
            found: c.component_linkings.len(),
        });
    }
    Ok(())
}

/// `a · B⁻¹ · bᵀ` over the rationals.
fn correction(b_inv: &crate::matrix::RatMatrix, a: &[i64], b: &[i64]) -> BigRational {
    let mut total = BigRational::zero();
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                total += &b_inv[(i, j)] * BigRational::from_integer(BigInt::from(ai * bj));
            }
        }
    }
    total
}

/// Hoste's formula. For `σ ≠ η` the S³ term is `lk(σ, η⁺)` from the
/// cross-pushoff data of `σ`.
pub fn hoste_linking(b: &IntMatrix, sigma: &CurveSpec, eta: &CurveSpec) -> Result<BigRational, LinkingError> {
    check_dimension(b, sigma)?;
    check_dimension(b, eta)?;
    let b_inv = b.rational_inverse().ok_or(LinkingError::SingularMatrix)?;
    let s3 = if sigma.id == eta.id {
        sigma.pushoff_self_linking
    } else {
        sigma
            .cross_pushoff_linkings
            .get(&eta.id)
            .map(|&(with_eta_pushoff, _)| with_eta_pushoff)
            .ok_or_else(|| LinkingError::MissingPushoff(sigma.id.clone(), eta.id.clone()))?
    };
    Ok(BigRational::from_integer(BigInt::from(s3)) - correction(&b_inv, &sigma.component_linkings, &eta.component_linkings))
}

/// S³ data of a curve representing `x[α] + y[β]` on the torus: linking
/// vectors add, and the pushoff self-linking expands bilinearly.
pub fn class_curve(basis: &TorusCurveBasis, x: i64, y: i64) -> CurveSpec {
    let a = &basis.alpha;
    let b = &basis.beta;
    let component_linkings = a
        .component_linkings
        .iter()
        .zip(&b.component_linkings)
        .map(|(p, q)| x * p + y * q)
        .collect();
    let cross = basis.alpha_with_beta_pushoff + basis.beta_with_alpha_pushoff;
    CurveSpec {
        id: format!("{x}*{}+{y}*{}", a.id, b.id),
        component_linkings,
        pushoff_self_linking: x * x * a.pushoff_self_linking + x * y * cross + y * y * b.pushoff_self_linking,
        cross_pushoff_linkings: Default::default(),
    }
}

/// `Q(x, y) = A x² + B₂ x y + C y²`, the linking of `x[α] + y[β]` with its
/// pushoff in the surgered manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfLinkingForm {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
}

impl SelfLinkingForm {
    pub fn from_integers(a: i64, b: i64, c: i64) -> Self {
        let r = |v: i64| BigRational::from_integer(BigInt::from(v));
        SelfLinkingForm { a: r(a), b: r(b), c: r(c) }
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigRational {
        let x = BigRational::from_integer(x.clone());
        let y = BigRational::from_integer(y.clone());
        &self.a * &x * &x + &self.b * &x * &y + &self.c * &y * &y
    }

    /// Coefficients when all three are integers.
    pub fn integer_coefficients(&self) -> Option<(BigInt, BigInt, BigInt)> {
        let int = |r: &BigRational| r.is_integer().then(|| r.to_integer());
        Some((int(&self.a)?, int(&self.b)?, int(&self.c)?))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }
}

impl std::fmt::Display for SelfLinkingForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

pub fn self_linking_form(b: &IntMatrix, basis: &TorusCurveBasis) -> Result<SelfLinkingForm, LinkingError> {
    let alpha = &basis.alpha;
    let beta = &basis.beta;
    let aa = hoste_linking(b, alpha, alpha)?;
    let bb = hoste_linking(b, beta, beta)?;
    // the cross term only needs the pushoff data carried by the basis
    let b_inv = b.rational_inverse().ok_or(LinkingError::SingularMatrix)?;
    let ab = BigRational::from_integer(BigInt::from(basis.alpha_with_beta_pushoff))
        - correction(&b_inv, &alpha.component_linkings, &beta.component_linkings);
    let ba = BigRational::from_integer(BigInt::from(basis.beta_with_alpha_pushoff))
        - correction(&b_inv, &beta.component_linkings, &alpha.component_linkings);
    Ok(SelfLinkingForm { a: aa, b: ab + ba, c: bb })
}

/// Primitive zeros of a binary quadratic form, up to sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroClasses {
    /// The form vanishes identically.
    All,
    /// Every primitive zero, canonical sign (`y > 0`, or `y = 0` and
    /// `x > 0`), sorted.
    Finite(Vec<(BigInt, BigInt)>),
}

impl ZeroClasses {
    pub fn classes(&self) -> Option<&[(BigInt, BigInt)]> {
        match self {
            ZeroClasses::All => None,
            ZeroClasses::Finite(v) => Some(v),
        }
    }
}

/// Canonical representative of `±(x, y)` after dividing out the gcd.
pub fn canonical_class(x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
    let g = x.gcd(y);
    assert!(!g.is_zero(), "the zero vector has no class");
    let (mut x, mut y) = (x / &g, y / &g);
    if y.is_negative() || (y.is_zero() && x.is_negative()) {
        x = -x;
        y = -y;
    }
    (x, y)
}

/// Solves `Q(x, y) = 0` over primitive vectors by factoring `Q` over ℤ.
/// Rational coefficients are cleared first.
pub fn zero_classes(form: &SelfLinkingForm) -> ZeroClasses {
    if form.is_zero() {
        return ZeroClasses::All;
    }
    let l = form.a.denom().lcm(form.b.denom()).lcm(form.c.denom());
    let scale = |r: &BigRational| (r * BigRational::from_integer(l.clone())).to_integer();
    let (a, b, c) = (scale(&form.a), scale(&form.b), scale(&form.c));

    let disc = &b * &b - BigInt::from(4) * &a * &c;
    if disc.is_negative() {
        return ZeroClasses::Finite(Vec::new());
    }
    let s = disc.sqrt();
    if &s * &s != disc {
        return ZeroClasses::Finite(Vec::new());
    }

    let mut out = Vec::new();
    if !a.is_zero() {
        // Q = a (x − r₁y)(x − r₂y) with rᵢ = (−b ± s) / 2a; y = 0 is no zero.
        for root_num in [-&b + &s, -&b - &s] {
            out.push(canonical_class(&root_num, &(BigInt::from(2) * &a)));
        }
    } else {
        // Q = y (b x + c y)
        out.push((BigInt::one(), BigInt::zero()));
        if !b.is_zero() {
            out.push(canonical_class(&-&c, &b));
        }
    }
    out.sort();
    out.dedup();
    ZeroClasses::Finite(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery_model::dotted_pair_presentation;
    use proptest::prelude::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn is_unimodular(m: &IntMatrix) -> bool {
        m.determinant().abs().is_one()
    }

    fn check_smith(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d, "D = U M V for {m:?}");
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn smith_examples() {
        for n in -4..=4 {
            let m = IntMatrix::from_i64(&[[0, 1], [1, n]]);
            check_smith(&m);
            assert_eq!(smith_normal_form(&m).diagonal(), vec![bi(1), bi(1)]);
        }
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert_eq!(s.d, z);
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[[7]])).d, IntMatrix::from_i64(&[[7]]));
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[[-7]])).d, IntMatrix::from_i64(&[[7]]));
        // Z/2 + Z/6 hidden in a non-diagonal presentation
        let m = IntMatrix::from_i64(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
        check_smith(&m);
        assert_eq!(smith_normal_form(&m).diagonal(), vec![bi(2), bi(6), bi(12)]);
        check_smith(&IntMatrix::from_i64(&[[2, 0], [0, 3]]));
        assert_eq!(smith_normal_form(&IntMatrix::from_i64(&[[2, 0], [0, 3]])).diagonal(), vec![bi(1), bi(6)]);
    }

    #[test]
    fn homology_examples() {
        let h = first_homology(&IntMatrix::from_i64(&[[0, 1], [1, 5]]));
        assert!(h.is_homology_sphere);
        assert_eq!(h.describe(), "0");
        let h = first_homology(&IntMatrix::from_i64(&[[5]]));
        assert_eq!(h.torsion_coefficients, vec![bi(5)]);
        assert_eq!(h.free_rank, 0);
        assert!(!h.is_homology_sphere);
        let h = first_homology(&IntMatrix::from_i64(&[[0]]));
        assert_eq!(h.free_rank, 1);
        assert_eq!(h.describe(), "Z");
        assert!(first_homology(&IntMatrix::zeros(0, 0)).is_homology_sphere);
    }

    fn dotted_pair_basis(n: i64) -> (IntMatrix, TorusCurveBasis) {
        let p = dotted_pair_presentation(n);
        (p.boundary_linking_matrix(), p.torus_basis("alpha", "beta").unwrap())
    }

    #[test]
    fn hoste_on_dotted_pair() {
        let (b, basis) = dotted_pair_basis(4);
        assert_eq!(hoste_linking(&b, &basis.alpha, &basis.alpha).unwrap(), BigRational::from_integer(bi(4)));
        assert_eq!(hoste_linking(&b, &basis.beta, &basis.beta).unwrap(), BigRational::zero());
        let form = self_linking_form(&b, &basis).unwrap();
        assert_eq!(form, SelfLinkingForm::from_integers(4, -1, 0));
    }

    #[test]
    fn hoste_trivial_correction() {
        let b = IntMatrix::from_i64(&[[3]]);
        let c = CurveSpec {
            id: "c".into(),
            component_linkings: vec![0],
            pushoff_self_linking: -2,
            cross_pushoff_linkings: Default::default(),
        };
        assert_eq!(hoste_linking(&b, &c, &c).unwrap(), BigRational::from_integer(bi(-2)));
        let mut d = c.clone();
        d.component_linkings = vec![1];
        d.pushoff_self_linking = 0;
        // lens space L(3,1): 0 − 1/3
        assert_eq!(hoste_linking(&b, &d, &d).unwrap(), BigRational::new(bi(-1), bi(3)));
        assert_eq!(hoste_linking(&IntMatrix::from_i64(&[[0]]), &c, &c), Err(LinkingError::SingularMatrix));
    }

    #[test]
    fn zero_form_gives_zero_coefficients() {
        let (_, mut basis) = dotted_pair_basis(0);
        basis.alpha.component_linkings = vec![0, 0];
        basis.beta.component_linkings = vec![0, 0];
        basis.beta_with_alpha_pushoff = 0;
        let b = IntMatrix::from_i64(&[[1, 0], [0, 1]]);
        let form = self_linking_form(&b, &basis).unwrap();
        assert!(form.is_zero());
        assert_eq!(zero_classes(&form), ZeroClasses::All);
    }

    /// Bounded brute force: primitive zeros with |x|, |y| ≤ r.
    fn search_oracle(form: &SelfLinkingForm, r: i64) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::new();
        for x in -r..=r {
            for y in 0..=r {
                if (y == 0 && x <= 0) || x.gcd(&y) != 1 {
                    continue;
                }
                if form.eval(&bi(x), &bi(y)).is_zero() {
                    out.push((bi(x), bi(y)));
                }
            }
        }
        out.sort();
        out
    }

    fn within(classes: &[(BigInt, BigInt)], r: i64) -> Vec<(BigInt, BigInt)> {
        classes
            .iter()
            .filter(|(x, y)| x.abs() <= bi(r) && y.abs() <= bi(r))
            .cloned()
            .collect()
    }

    #[test]
    fn zero_class_examples() {
        let z = zero_classes(&SelfLinkingForm::from_integers(3, -1, 0));
        assert_eq!(z, ZeroClasses::Finite(vec![(bi(0), bi(1)), (bi(1), bi(3))]));
        assert_eq!(zero_classes(&SelfLinkingForm::from_integers(1, 0, 1)), ZeroClasses::Finite(vec![]));
        let f = SelfLinkingForm::from_integers(1, -3, 2);
        assert_eq!(zero_classes(&f), ZeroClasses::Finite(vec![(bi(1), bi(1)), (bi(2), bi(1))]));
        assert_eq!(search_oracle(&f, 10), vec![(bi(1), bi(1)), (bi(2), bi(1))]);
        // x² − 2y² has irrational slopes
        assert_eq!(zero_classes(&SelfLinkingForm::from_integers(1, 0, -2)), ZeroClasses::Finite(vec![]));
        // perfect square (x − 2y)²
        assert_eq!(
            zero_classes(&SelfLinkingForm::from_integers(1, -4, 4)),
            ZeroClasses::Finite(vec![(bi(2), bi(1))])
        );
        // 5y²: only the horizontal class
        assert_eq!(
            zero_classes(&SelfLinkingForm::from_integers(0, 0, 5)),
            ZeroClasses::Finite(vec![(bi(1), bi(0))])
        );
        // rational coefficients: x²/2 − xy/2 = x(x − y)/2
        let half = SelfLinkingForm {
            a: BigRational::new(bi(1), bi(2)),
            b: BigRational::new(bi(-1), bi(2)),
            c: BigRational::zero(),
        };
        assert_eq!(zero_classes(&half), ZeroClasses::Finite(vec![(bi(0), bi(1)), (bi(1), bi(1))]));
    }

    #[test]
    fn dotted_pair_family() {
        for n in -5..=5 {
            let (b, basis) = dotted_pair_basis(n);
            let form = self_linking_form(&b, &basis).unwrap();
            assert_eq!(form, SelfLinkingForm::from_integers(n, -1, 0));
            for x in -5..=5 {
                for y in -5..=5 {
                    let c = class_curve(&basis, x, y);
                    assert_eq!(form.eval(&bi(x), &bi(y)), hoste_linking(&b, &c, &c).unwrap());
                }
            }
            let mut expected = vec![(bi(0), bi(1)), canonical_class(&bi(1), &bi(n))];
            expected.sort();
            assert_eq!(zero_classes(&form), ZeroClasses::Finite(expected));
        }
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| bi(v[i * c + j])))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn smith_is_correct(m in arb_matrix()) {
            check_smith(&m);
        }

        #[test]
        fn homology_matches_determinant(v in prop::collection::vec(-5i64..=5, 9)) {
            let n = 3;
            let mut m = IntMatrix::from_fn(n, n, |i, j| bi(v[i * n + j]));
            for i in 0..n {
                for j in 0..i {
                    m[(i, j)] = m[(j, i)].clone();
                }
            }
            let h = first_homology(&m);
            prop_assert_eq!(h.is_homology_sphere, m.determinant().abs().is_one());
            let det = m.determinant().abs();
            if !det.is_zero() {
                let order: BigInt = h.torsion_coefficients.iter().product();
                prop_assert_eq!(order, det);
            }
        }

        #[test]
        fn hoste_symmetric(
            framings in prop::collection::vec(-6i64..=6, 3),
            off in prop::collection::vec(-3i64..=3, 3),
            a in prop::collection::vec(-3i64..=3, 3),
            b in prop::collection::vec(-3i64..=3, 3),
            lk in -4i64..=4,
        ) {
            let m = IntMatrix::from_i64(&[
                [framings[0], off[0], off[1]],
                [off[0], framings[1], off[2]],
                [off[1], off[2], framings[2]],
            ]);
            prop_assume!(!m.determinant().is_zero());
            let mk = |id: &str, other: &str, v: &Vec<i64>| CurveSpec {
                id: id.into(),
                component_linkings: v.clone(),
                pushoff_self_linking: 0,
                cross_pushoff_linkings: [(other.to_string(), (lk, lk))].into_iter().collect(),
            };
            let s = mk("s", "e", &a);
            let e = mk("e", "s", &b);
            prop_assert_eq!(hoste_linking(&m, &s, &e).unwrap(), hoste_linking(&m, &e, &s).unwrap());
        }

        #[test]
        fn form_matches_grid_oracle(
            n in -6i64..=6,
            aa in prop::collection::vec(-2i64..=2, 2),
            ab in prop::collection::vec(-2i64..=2, 2),
            s in prop::collection::vec(-2i64..=2, 4),
        ) {
            let p = dotted_pair_presentation(n);
            let b = p.boundary_linking_matrix();
            let mut basis = p.torus_basis("alpha", "beta").unwrap();
            basis.alpha.component_linkings = aa;
            basis.beta.component_linkings = ab;
            basis.alpha.pushoff_self_linking = s[0];
            basis.beta.pushoff_self_linking = s[1];
            basis.alpha_with_beta_pushoff = s[2];
            basis.beta_with_alpha_pushoff = s[3];
            let form = self_linking_form(&b, &basis).unwrap();
            for x in -5..=5 {
                for y in -5..=5 {
                    let c = class_curve(&basis, x, y);
                    prop_assert_eq!(form.eval(&bi(x), &bi(y)), hoste_linking(&b, &c, &c).unwrap());
                }
            }
        }

        #[test]
        fn zero_classes_agree_with_search(a in -6i64..=6, b in -6i64..=6, c in -6i64..=6) {
            let f = SelfLinkingForm::from_integers(a, b, c);
            match zero_classes(&f) {
                ZeroClasses::All => prop_assert!(a == 0 && b == 0 && c == 0),
                ZeroClasses::Finite(classes) => {
                    for (x, y) in &classes {
                        prop_assert!(f.eval(x, y).is_zero());
                    }
                    prop_assert_eq!(within(&classes, 10), search_oracle(&f, 10));
                }
            }
        }
    }
}
