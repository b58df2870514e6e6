//! Exact coefficient calculus relating the commutator form of a nonlinear
//! sl(2) algebra,
//!
//! ```text
//! [J+, J-] = sum_p beta_p (2 J3)^(2p+1),
//! ```
//!
//! to its deformation polynomial `phi(x) = sum_k alpha_k x^k`, through the
//! Bernoulli / Faulhaber expansion of odd power sums.
//!
//! Bernoulli numbers follow the positive, even-index-only convention
//! `B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, ...`; in the signed standard sequence
//! this is `B_n = |B_{2n}|`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binomial, powi, ratio, rational_serde, Rational, Scalar};

/// Commutator coefficients; `values[p]` multiplies `(2 J3)^(2p+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BetaCoeffs(#[serde(with = "rational_serde::vec")] pub Vec<Rational>);

/// Deformation polynomial coefficients; `values[k-1]` multiplies `x^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlphaCoeffs(#[serde(with = "rational_serde::vec")] pub Vec<Rational>);

impl BetaCoeffs {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("beta coefficient vector must be non-empty".into()));
        }
        Ok(BetaCoeffs(values))
    }

    /// Declared order `N`.
    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// `sum_p beta_p x^(2p+1)` evaluated at `x = 2 J3`.
    pub fn commutator_at<T: Scalar>(&self, j3: &T) -> T {
        let two_j3 = T::int(2) * j3.clone();
        let sq = two_j3.clone() * two_j3.clone();
        let mut acc = T::zero();
        for b in self.0.iter().rev() {
            acc = acc * sq.clone() + T::from_rational(b);
        }
        acc * two_j3
    }

    /// Coefficients converted to a float type.
    pub fn to_real<T: Scalar>(&self) -> Vec<T> {
        self.0.iter().map(T::from_rational).collect()
    }
}

impl AlphaCoeffs {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("alpha coefficient vector must be non-empty".into()));
        }
        Ok(AlphaCoeffs(values))
    }

    /// Undeformed sl(2): `phi(x) = x`.
    pub fn identity() -> Self {
        AlphaCoeffs(vec![Rational::one()])
    }

    /// Higgs algebra `[J+, J-] = 2 J3 + 8 beta J3^3`: `phi(x) = x + 2 beta x^2`.
    pub fn higgs(beta: &Rational) -> Self {
        AlphaCoeffs(vec![Rational::one(), beta * ratio(2, 1)])
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// `alpha_k`, zero past the declared order.
    pub fn get(&self, k: usize) -> Rational {
        if k == 0 {
            return Rational::zero();
        }
        self.0.get(k - 1).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_real<T: Scalar>(&self) -> Vec<T> {
        self.0.iter().map(T::from_rational).collect()
    }
}

/// Bernoulli numbers `B_1..B_n` in the positive convention.
pub fn bernoulli_sequence(n: usize) -> Vec<Rational> {
    // Standard signed sequence from sum_{k<=m} C(m+1, k) B_k = 0.
    let top = 2 * n;
    let mut std: Vec<Rational> = Vec::with_capacity(top + 1);
    std.push(Rational::one());
    for m in 1..=top {
        let mut s = Rational::zero();
        for (k, bk) in std.iter().enumerate() {
            s += Rational::from_integer(binomial(m as i64 + 1, k as i64)) * bk;
        }
        std.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    (1..=n).map(|i| std[2 * i].abs()).collect()
}

/// `B_n` in the positive convention (`B_1 = 1/6`).
pub fn bernoulli(n: i64) -> Result<Rational> {
    if n < 1 {
        return Err(Error::Domain(format!("Bernoulli index must be >= 1, got {n}")));
    }
    Ok(bernoulli_sequence(n as usize).pop().expect("n >= 1"))
}

/// `sum_{r=1}^{n} r^(2p+1)` by direct summation.
pub fn power_sum_oracle(p: u32, n: u64) -> Rational {
    let mut s = BigInt::zero();
    for r in 1..=n {
        s += BigInt::from(r).pow(2 * p + 1);
    }
    Rational::from_integer(s)
}

/// Closed Bernoulli form of `sum_{r=1}^{x} r^(2p+1)`, valid as a polynomial
/// identity in `x`.
pub fn power_sum_closed(p: u32, x: &Rational) -> Rational {
    let b = bernoulli_sequence(p as usize);
    let n = 2 * p + 1;
    let mut s = powi(x, n + 1) / Rational::from_integer(BigInt::from(n + 1)) + powi(x, n) * ratio(1, 2);
    for i in 1..=p {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        let c = Rational::from_integer(binomial(n as i64, 2 * i as i64 - 1));
        s += ratio(sign, 2 * i as i64) * c * &b[i as usize - 1] * powi(x, n + 1 - 2 * i);
    }
    s
}

/// `eps_1(k) .. eps_k(k)` (index `r - 1`).
///
/// For `j = 1..k-1` the `j`-th relation
///
/// ```text
/// (-1)^(j+1) (k+1)/j C(2k+1, 2j-1) B_j
///     = C(k+1, 2j) + sum_{i=1}^{j} eps_{k-i}(k) C(k+1-i, 2j-2i)
/// ```
///
/// introduces exactly one new unknown, `eps_{k-j}(k)`, so the system is solved
/// forward in `j`.
pub fn epsilon_row(k: usize) -> Result<Vec<Rational>> {
    if k == 0 {
        return Err(Error::Domain("epsilon row index k must be >= 1".into()));
    }
    let b = bernoulli_sequence(k.saturating_sub(1));
    let ki = k as i64;
    let mut eps = vec![Rational::zero(); k + 1];
    eps[k] = Rational::one();
    for j in 1..k {
        let ji = j as i64;
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let lhs = ratio(sign * (ki + 1), ji) * Rational::from_integer(binomial(2 * ki + 1, 2 * ji - 1)) * &b[j - 1];
        let mut known = Rational::from_integer(binomial(ki + 1, 2 * ji));
        for i in 1..j {
            let ii = i as i64;
            known += &eps[k - i] * Rational::from_integer(binomial(ki + 1 - ii, 2 * ji - 2 * ii));
        }
        // Coefficient of the new unknown is C(k+1-j, 0) = 1.
        eps[k - j] = lhs - known;
    }
    eps.remove(0);
    Ok(eps)
}

/// `eps_r(k)` for `1 <= r <= k`.
pub fn epsilon(r: i64, k: i64) -> Result<Rational> {
    if k < 1 || r < 1 || r > k {
        return Err(Error::Domain(format!("epsilon_r(k) needs 1 <= r <= k, got r={r}, k={k}")));
    }
    Ok(epsilon_row(k as usize)?.swap_remove(r as usize - 1))
}

/// `alpha_1 = beta_0`, `alpha_l = sum_{k=l-1}^{N} beta_k 4^k/(k+1) eps_{l-1}(k)`.
pub fn alpha_from_beta(b: &BetaCoeffs) -> AlphaCoeffs {
    let n = b.order();
    let rows: Vec<Vec<Rational>> = (1..=n).map(|k| epsilon_row(k).expect("k >= 1")).collect();
    let mut alpha = vec![Rational::zero(); n + 1];
    alpha[0] = b.0[0].clone();
    for l in 2..=n + 1 {
        let mut s = Rational::zero();
        for k in (l - 1)..=n {
            let w = Rational::from_integer(BigInt::from(4).pow(k as u32)) / Rational::from_integer(BigInt::from(k + 1));
            s += &b.0[k] * w * &rows[k - 1][l - 2];
        }
        alpha[l - 1] = s;
    }
    AlphaCoeffs(alpha)
}

/// `beta_p = 4^(-p) sum_{k=p+1}^{2p+1} alpha_k C(k, 2k-2p-1)`, with `alpha_k = 0`
/// past the declared order.
pub fn beta_from_alpha(a: &AlphaCoeffs) -> BetaCoeffs {
    let n = a.order();
    let beta = (0..=n)
        .map(|p| {
            let mut s = Rational::zero();
            for k in (p + 1)..=(2 * p + 1) {
                let ak = a.get(k);
                if ak.is_zero() {
                    continue;
                }
                s += ak * Rational::from_integer(binomial(k as i64, (2 * k - 2 * p - 1) as i64));
            }
            s / Rational::from_integer(BigInt::from(4).pow(p as u32))
        })
        .collect();
    BetaCoeffs(beta)
}

/// `phi(x) = sum_k alpha_k x^k` (no constant term).
pub fn phi_eval<T: Scalar>(a: &AlphaCoeffs, x: &T) -> T {
    let mut acc = T::zero();
    for c in a.0.iter().rev() {
        acc = (acc + T::from_rational(c)) * x.clone();
    }
    acc
}

/// `phi'(x)`.
pub fn phi_derivative<T: Scalar>(a: &AlphaCoeffs, x: &T) -> T {
    let mut acc = T::zero();
    for (i, c) in a.0.iter().enumerate().rev() {
        acc = acc * x.clone() + T::from_rational(c) * T::int(i as i64 + 1);
    }
    acc
}

/// `(phi(u) - phi(v)) / (u - v)` expanded as
/// `sum_k alpha_k sum_{n<k} u^(k-1-n) v^n`; equals `phi'(u)` at `u = v`.
pub fn divided_difference<T: Scalar>(a: &AlphaCoeffs, u: &T, v: &T) -> T {
    // h_k = sum_{n<k} u^(k-1-n) v^n satisfies h_{k+1} = u h_k + v^k.
    let mut acc = T::zero();
    let mut h = T::one();
    let mut vk = T::one();
    for (i, c) in a.0.iter().enumerate() {
        if i > 0 {
            vk = vk * v.clone();
            h = u.clone() * h + vk.clone();
        }
        acc = acc + T::from_rational(c) * h.clone();
    }
    acc
}

/// Product `f+ f-` in its epsilon expansion,
/// `beta_0 + sum_k beta_k 4^k/(k+1) sum_r eps_r(k) sum_{s<=r} U^s V^(r-s)`
/// with `U = j(j+1)`, `V = m(m+1)`.
pub fn product_from_epsilon(b: &BetaCoeffs, u: &Rational, v: &Rational) -> Rational {
    let mut s = b.0[0].clone();
    for k in 1..=b.order() {
        if b.0[k].is_zero() {
            continue;
        }
        let w = Rational::from_integer(BigInt::from(4).pow(k as u32)) / Rational::from_integer(BigInt::from(k + 1));
        s += &b.0[k] * w * epsilon_inner_sum(k, u, v);
    }
    s
}

/// `sum_{r=1}^{k} eps_r(k) sum_{s=0}^{r} U^s V^(r-s)`.
pub fn epsilon_inner_sum(k: usize, u: &Rational, v: &Rational) -> Rational {
    let row = epsilon_row(k).expect("k >= 1");
    let mut total = Rational::zero();
    for (idx, e) in row.iter().enumerate() {
        let r = idx as u32 + 1;
        let mut h = Rational::zero();
        for s in 0..=r {
            h += powi(u, s) * powi(v, r - s);
        }
        total += e * h;
    }
    total
}
