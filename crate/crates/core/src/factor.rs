//! Factorization in ℤ[x] by Berlekamp–Zassenhaus.
//!
//! Pipeline: strip content and powers of `x`, Yun square-free
//! decomposition, then for each square-free part: monic transform, pick a
//! prime where the reduction stays square-free, Berlekamp over 𝔽_p, linear
//! Hensel lifting past the Mignotte bound, and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Poly;

/// `content · x^x_power · ∏ factor^multiplicity`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Signed content; its sign is the sign of the leading coefficient.
    pub content: BigInt,
    /// Irreducible, primitive, positive leading coefficient, degree ≥ 1,
    /// sorted by degree then coefficients. Excludes `x` itself.
    pub factors: Vec<(Poly, u32)>,
    pub x_power: u32,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut out = Poly::constant(self.content.clone());
        out = &out * &Poly::monomial(BigInt::one(), self.x_power as usize);
        for (f, m) in &self.factors {
            out = &out * &f.pow(*m);
        }
        out
    }
}

/// Complete factorization of a nonzero polynomial over ℤ.
pub fn factor(f: &Poly) -> Factorization {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let mut content = f.content();
    if f.leading().is_negative() {
        content = -content;
    }
    let mut g = f.primitive_part();
    let x_power = g.coeffs().iter().take_while(|c| c.is_zero()).count();
    if x_power > 0 {
        g = Poly::new(g.coeffs()[x_power..].to_vec());
    }

    let mut factors = Vec::new();
    for (part, mult) in square_free_decomposition(&g) {
        for irreducible in factor_square_free(&part) {
            factors.push((irreducible, mult));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| a.canonical_cmp(b).then(ma.cmp(mb)));
    Factorization {
        content,
        factors,
        x_power: x_power as u32,
    }
}

/// Yun's algorithm on a primitive polynomial with positive leading
/// coefficient. Returns square-free, pairwise coprime parts of degree ≥ 1
/// with their multiplicities.
fn square_free_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let b = f.gcd(&df).primitive_part();
    let mut c = f.div_exact(&b).expect("gcd divides f");
    let mut d = &df.div_exact(&b).expect("gcd divides f'") - &c.derivative();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d).primitive_part();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).expect("a divides c");
        d = &d.div_exact(&a).expect("a divides d") - &c.derivative();
        i += 1;
    }
    out
}

/// Irreducible factors of a square-free primitive polynomial with
/// positive leading coefficient.
fn factor_square_free(f: &Poly) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return vec![f.clone()];
    }
    // F(x) = lc^(n-1) f(x / lc) is monic and its monic factors G map back
    // to factors pp(G(lc·x)) of f.
    let lc = f.leading();
    let monic = Poly::new(
        (0..=n)
            .map(|i| {
                if i == n {
                    BigInt::one()
                } else {
                    f.coeff(i) * num_traits::pow(lc.clone(), n - 1 - i)
                }
            })
            .collect(),
    );
    let monic_factors = factor_monic_square_free(&monic);
    let mut out: Vec<Poly> = monic_factors
        .iter()
        .map(|g| {
            let scaled = Poly::new(
                g.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * num_traits::pow(lc.clone(), i))
                    .collect(),
            );
            scaled.primitive_part()
        })
        .collect();
    out.sort_by(Poly::canonical_cmp);
    out
}

fn factor_monic_square_free(f: &Poly) -> Vec<Poly> {
    let n = f.degree().unwrap();
    let p = choose_prime(f);
    let fp = FpPoly::from_int(f, p);
    let modular = berlekamp(&fp);
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Mignotte: every coefficient of a monic factor is at most 2^n ‖f‖₂.
    let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm_sq.sqrt() + BigInt::one());
    let threshold = bound * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= threshold {
        modulus *= &pb;
        k += 1;
    }

    let lifted = hensel_lift(f, &modular, p, k);
    recombine(f, lifted, &modulus)
}

fn choose_prime(f: &Poly) -> u64 {
    let df = f.derivative();
    (3u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            let fp = FpPoly::from_int(f, p);
            let dp = FpPoly::from_int(&df, p);
            fp.degree() == f.degree() && fp.gcd(&dp).degree() == Some(0)
        })
        .expect("some prime keeps a square-free polynomial square-free")
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Subset recombination of monic lifted factors modulo `modulus`.
fn recombine(f: &Poly, mut pool: Vec<Poly>, modulus: &BigInt) -> Vec<Poly> {
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        for subset in Subsets::new(pool.len(), size) {
            let mut candidate = Poly::one();
            for &i in &subset {
                candidate = reduce_symmetric(&(&candidate * &pool[i]), modulus);
            }
            // constant terms must divide before trying the full division
            let c0 = candidate.coeff(0);
            let r0 = rest.coeff(0);
            if c0.is_zero() || !(&r0 % &c0).is_zero() {
                continue;
            }
            if let Some(q) = rest.div_exact(&candidate) {
                hit = Some((subset, candidate, q));
                break;
            }
        }
        match hit {
            Some((subset, candidate, q)) => {
                found.push(candidate);
                rest = q;
                for &i in subset.iter().rev() {
                    pool.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        found.push(rest);
    }
    found
}

/// k-subsets of `0..n` in lexicographic order.
struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

fn reduce_nonneg(f: &Poly, m: &BigInt) -> Poly {
    Poly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn reduce_symmetric(f: &Poly, m: &BigInt) -> Poly {
    let half = m / 2;
    Poly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lifts `f ≡ ∏ factors (mod p)` (all monic) to a factorization modulo
/// `p^k`, splitting the factor list in halves recursively.
fn hensel_lift(f: &Poly, factors: &[FpPoly], p: u64, k: u32) -> Vec<Poly> {
    let modulus = num_traits::pow(BigInt::from(p), k as usize);
    if factors.len() == 1 {
        return vec![reduce_nonneg(f, &modulus)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left.iter().fold(FpPoly::one(p), |acc, x| acc.mul(x));
    let h0 = right.iter().fold(FpPoly::one(p), |acc, x| acc.mul(x));
    let (g, h) = lift_pair(f, &g0, &h0, p, k);
    let mut out = hensel_lift(&g, left, p, k);
    out.extend(hensel_lift(&h, right, p, k));
    out
}

/// Linear Hensel lifting of a coprime monic pair.
fn lift_pair(f: &Poly, g0: &FpPoly, h0: &FpPoly, p: u64, k: u32) -> (Poly, Poly) {
    let (gcd, s, t) = g0.ext_gcd(h0);
    debug_assert_eq!(gcd.degree(), Some(0));
    let inv = gcd.coeffs[0];
    let s = s.scale(mod_inverse(inv, p));
    let t = t.scale(mod_inverse(inv, p));
    let mut g = g0.to_int();
    let mut h = h0.to_int();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = f - &(&g * &h);
        let e_int = Poly::new(diff.coeffs().iter().map(|c| c / &pj).collect());
        let e = FpPoly::from_int(&e_int, p);
        let te = t.mul(&e);
        let (q, dg) = te.div_rem(g0);
        let dh = s.mul(&e).add(&q.mul(h0));
        g = &g + &dg.to_int().scale(&pj);
        h = &h + &dh.to_int().scale(&pj);
        pj *= &pb;
    }
    (reduce_nonneg(&g, &pj), reduce_nonneg(&h, &pj))
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Polynomial over 𝔽_p, `p` a small prime.
#[derive(Clone, Debug, PartialEq, Eq)]
struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    fn from_int(f: &Poly, p: u64) -> Self {
        let pb = BigInt::from(p);
        FpPoly::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    fn to_int(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0) + o.coeffs.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        FpPoly::new(
            self.p,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0) + self.p - o.coeffs.get(i).unwrap_or(&0))
                .collect(),
        )
    }

    fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        FpPoly::new(self.p, out)
    }

    fn scale(&self, c: u64) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().map(|a| a * c).collect())
    }

    fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            Some(&lc) => self.scale(mod_inverse(lc, self.p)),
            None => self.clone(),
        }
    }

    fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = d.degree().expect("division by zero");
        let inv = mod_inverse(*d.coeffs.last().unwrap(), self.p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::new(self.p, vec![]), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd] * inv % self.p;
            if q == 0 {
                continue;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] = (rem[k + i] + self.p * self.p - q * c) % self.p;
            }
            quot[k] = q;
        }
        (FpPoly::new(self.p, quot), FpPoly::new(self.p, rem))
    }

    fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g`.
    fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let zero = FpPoly::new(p, vec![]);
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), zero.clone());
        let (mut t0, mut t1) = (zero, FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * (i as u64 % self.p))
                .collect(),
        )
    }
}

/// Monic irreducible factors of a square-free monic polynomial over 𝔽_p.
fn berlekamp(f: &FpPoly) -> Vec<FpPoly> {
    let p = f.p;
    let n = f.degree().unwrap();
    if n <= 1 {
        return vec![f.clone()];
    }
    debug_assert_eq!(f.gcd(&f.derivative()).degree(), Some(0));

    // rows of Q: x^(i p) mod f
    let x = FpPoly::new(p, vec![0, 1]);
    let xp = fp_pow_mod(&x, p, f);
    let mut rows = Vec::with_capacity(n);
    let mut cur = FpPoly::one(p);
    for _ in 0..n {
        let mut row: Vec<u64> = cur.coeffs.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = cur.mul(&xp).div_rem(f).1;
    }
    // kernel of (Q - I)ᵀ: v with Σ v_i (row_i - e_i) = 0
    let mut m = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            let mut v = row[j];
            if i == j {
                v = (v + p - 1) % p;
            }
            m[j][i] = v;
        }
    }
    let basis = nullspace_mod_p(&m, p);
    let k = basis.len();
    if k == 1 {
        return vec![f.clone()];
    }

    let mut factors = vec![f.clone()];
    for v in basis.iter().skip(1) {
        let vp = FpPoly::new(p, v.clone());
        if vp.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.degree() == Some(1) {
                next.push(u);
                continue;
            }
            let mut u = u;
            for s in 0..p {
                let g = u.gcd(&vp.sub(&FpPoly::new(p, vec![s])));
                let dg = g.degree().unwrap_or(0);
                if dg > 0 && Some(dg) < u.degree() {
                    let (q, _) = u.div_rem(&g);
                    next.push(g);
                    u = q.monic();
                }
            }
            next.push(u);
        }
        factors = next;
        if factors.len() == k {
            break;
        }
    }
    debug_assert_eq!(factors.len(), k);
    factors.into_iter().map(|g| g.monic()).collect()
}

fn fp_pow_mod(b: &FpPoly, mut e: u64, m: &FpPoly) -> FpPoly {
    let mut result = FpPoly::one(b.p);
    let mut base = b.div_rem(m).1;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base).div_rem(m).1;
        }
        base = base.mul(&base).div_rem(m).1;
        e >>= 1;
    }
    result
}

/// Basis of `{v : M v = 0}` over 𝔽_p; the first basis vector is the
/// constant polynomial `1` whenever it lies in the kernel.
fn nullspace_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = mod_inverse(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p * p - f * a[r][j]) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[row][fc]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn degrees(f: &Factorization) -> Vec<(usize, u32)> {
        f.factors.iter().map(|(g, m)| (g.degree().unwrap(), *m)).collect()
    }

    #[test]
    fn linear_and_constant() {
        let f = factor(&p(&[6]));
        assert_eq!(f.content, BigInt::from(6));
        assert!(f.factors.is_empty());
        let f = factor(&p(&[-4, 2]));
        assert_eq!(f.content, BigInt::from(2));
        assert_eq!(f.factors, vec![(p(&[-2, 1]), 1)]);
    }

    #[test]
    fn stevedore_body_splits() {
        // 2t^2 - 5t + 2 = (2t - 1)(t - 2)
        let f = factor(&p(&[2, -5, 2]));
        assert_eq!(f.factors, vec![(p(&[-2, 1]), 1), (p(&[-1, 2]), 1)]);
        assert_eq!(f.expand(), p(&[2, -5, 2]));
    }

    #[test]
    fn cyclotomic_split_of_x12_minus_1() {
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = factor(&p(&c));
        // Φ1 Φ2 Φ3 Φ4 Φ6 Φ12: degrees 1,1,2,2,2,4
        let mut degs: Vec<usize> = f.factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
        assert_eq!(f.expand(), p(&c));
    }

    #[test]
    fn swinnerton_dyer_quartic_is_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime but not over ℤ
        let f = factor(&p(&[1, 0, -10, 0, 1]));
        assert_eq!(degrees(&f), vec![(4, 1)]);
    }

    #[test]
    fn repeated_factors_and_x_power() {
        // x^2 (x^2 - x + 1)^2 (x + 3)
        let g = &p(&[1, -1, 1]).pow(2) * &p(&[3, 1]);
        let f = &g * &p(&[0, 0, 1]);
        let fac = factor(&f);
        assert_eq!(fac.x_power, 2);
        assert_eq!(degrees(&fac), vec![(1, 1), (2, 2)]);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn non_monic_product() {
        // (3x^2 + 2x - 7)(5x^3 - x + 3)(2x + 9)
        let a = p(&[-7, 2, 3]);
        let b = p(&[3, -1, 0, 5]);
        let c = p(&[9, 2]);
        let f = &(&a * &b) * &c;
        let fac = factor(&f);
        assert_eq!(fac.expand(), f);
        let mut got: Vec<Poly> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
        let mut want = vec![a, b, c];
        got.sort_by(Poly::canonical_cmp);
        want.sort_by(Poly::canonical_cmp);
        assert_eq!(got, want);
    }

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(Subsets::new(5, 2).count(), 10);
        assert_eq!(Subsets::new(4, 0).count(), 1);
        assert_eq!(Subsets::new(3, 4).count(), 0);
    }
}
