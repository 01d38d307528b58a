//! Rank bookkeeping for Weil transfers and corestrictions, 2-adic valuations
//! of binomial coefficients, and dimension identities for grassmannians.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::Integer;
use crate::report::{all_passed, Check};
use crate::unitary::UnitaryGrassmannian;
use crate::Result;

/// The `F`-rank and `K`-rank of a motive; its rank is `rk_f + 2 rk_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankPair {
    #[serde(serialize_with = "as_string")]
    pub rk_f: Integer,
    #[serde(serialize_with = "as_string")]
    pub rk_k: Integer,
}

fn as_string<S: serde::Serializer>(x: &Integer, s: S) -> core::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

impl RankPair {
    pub fn rank(&self) -> Integer {
        &self.rk_f + &self.rk_k * 2
    }
}

/// Ranks of `tr M` and `cores M` for a split motive `M` of rank `n`.
pub fn weil_transfer_ranks(n: &Integer) -> (RankPair, RankPair) {
    let tr = RankPair { rk_f: n.clone(), rk_k: n * (n - 1) / 2 };
    let cores = RankPair { rk_f: BigInt::zero(), rk_k: n.clone() };
    (tr, cores)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferRow {
    pub rank: u32,
    pub tr: RankPair,
    pub cores: RankPair,
    pub passed: bool,
}

/// `tr` and `cores` ranks for split motives of rank `0..=max`. A rank `m`
/// motive has `rk tr M = m^2` and `rk cores M = 2m`.
pub fn transfer_table(max: u32) -> Vec<TransferRow> {
    (0..=max)
        .map(|m| {
            let big = BigInt::from(m);
            let (tr, cores) = weil_transfer_ranks(&big);
            let passed = tr.rank() == &big * &big && cores.rank() == &big * 2;
            TransferRow { rank: m, tr, cores, passed }
        })
        .collect()
}

/// `v_2(C(a, b))` by counting carries when adding `b` and `a - b` in base 2.
pub fn v2_binom(a: u64, b: u64) -> u32 {
    assert!(b <= a, "need b <= a");
    b.count_ones() + (a - b).count_ones() - a.count_ones()
}

/// `v_2(m!) = Σ floor(m / 2^i)`.
pub fn v2_factorial(m: u64) -> u64 {
    let mut acc = 0;
    let mut p = m / 2;
    while p > 0 {
        acc += p;
        p /= 2;
    }
    acc
}

/// `v_2(C(a, b))` from factorial valuations.
pub fn v2_binom_legendre(a: u64, b: u64) -> u64 {
    v2_factorial(a) - v2_factorial(b) - v2_factorial(a - b)
}

/// 2-adic valuation of a nonzero integer.
pub fn v2(x: &Integer) -> Option<u64> {
    x.trailing_zeros()
}

pub fn binomial(a: u64, b: u64) -> Integer {
    num_integer::binomial(BigInt::from(a), BigInt::from(b))
}

/// Valuations of the total ranks of `X_k` and their expected values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationRow {
    pub n: u32,
    pub k: u32,
    pub v2_rk_f: u64,
    pub v2_rk_k: u64,
    pub expected_f: u64,
    pub expected_k: u64,
    pub passed: bool,
}

/// For `0 ≤ k < n`: `v_2` of `b = C(2^n, 2^k)` and `b(b-1)/2`, which are
/// the totals for `k ≥ 1`, and of `2^n`, `2^{n-1}(2^n - 1)` for `k = 0`.
pub fn valuation_row(n: u32, k: u32) -> ValuationRow {
    assert!(k < n && n < 64, "need k < n < 64");
    let (pair, expected_k) = if k == 0 {
        let m = BigInt::one() << n;
        (RankPair { rk_f: m.clone(), rk_k: (&m >> 1u32) * (&m - 1) }, u64::from(n - 1))
    } else {
        (weil_transfer_ranks(&binomial(1 << n, 1 << k)).0, u64::from(n - k - 1))
    };
    let v2_rk_f = v2(&pair.rk_f).expect("nonzero");
    let v2_rk_k = v2(&pair.rk_k).expect("nonzero");
    let expected_f = u64::from(n - k);
    ValuationRow { n, k, v2_rk_f, v2_rk_k, expected_f, expected_k, passed: v2_rk_f == expected_f && v2_rk_k == expected_k }
}

pub fn valuation_table(max_n: u32) -> Vec<ValuationRow> {
    (1..=max_n).flat_map(|n| (0..n).map(move |k| valuation_row(n, k))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RanksReport {
    pub n: u32,
    pub rows: Vec<ValuationRow>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// The arithmetic behind the valuations of the ranks of upper motives of
/// `X_k`, `0 ≤ k < n`. The values of those ranks are not determined here.
pub fn verify_rank_valuations(n: u32) -> RanksReport {
    let rows: Vec<ValuationRow> = (0..n).map(|k| valuation_row(n, k)).collect();
    let mut checks = Vec::new();
    for k in 1..n {
        let b = binomial(1 << n, 1 << k);
        let kummer = u64::from(v2_binom(1 << n, 1 << k));
        checks.push(Check::new(
            format!("v2 C(2^{n}, 2^{k})"),
            Some(kummer) == v2(&b) && kummer == v2_binom_legendre(1 << n, 1 << k),
            format!("{kummer}"),
        ));
        // Other summands: shifts of U(X_l), l < k, and cores of SB(2^l), l ≤ k.
        let lower = (0..k).all(|l| u64::from(n - l) > u64::from(n - k) && u64::from(n - l - 1) > u64::from(n - k - 1));
        let cores = (0..=k).all(|l| {
            let (_, c) = weil_transfer_ranks(&binomial(1 << n, 1 << l));
            c.rk_f.is_zero() && v2(&c.rk_k).is_some_and(|v| v > u64::from(n - k - 1))
        });
        checks.push(Check::new(format!("other summands, k = {k}"), lower && cores, "valuations exceed those of the upper motive"));
    }
    for r in &rows {
        checks.push(Check::new(
            format!("valuations, k = {}", r.k),
            r.passed,
            format!("v2(rk_F) = {}, v2(rk_K) = {}", r.v2_rk_f, r.v2_rk_k),
        ));
    }
    let passed = all_passed(&checks);
    RanksReport { n, rows, checks, passed }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    pub k: usize,
    pub dim_h: usize,
    pub dim_orthogonal: usize,
    /// `(dim Y - dim X) / 2` when `k` is even.
    pub shift: Option<usize>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// `dim` of the grassmannian of isotropic `2k`-planes in a `2n`-dimensional
/// quadratic space.
pub fn orthogonal_grassmannian_dim(n: usize, k: usize) -> usize {
    let m = 2 * k;
    m * (2 * n - m) - m * (m + 1) / 2
}

/// `dim H_k = k(2n - 3k)`, as the dimension of the flag variety of type
/// `(k, n - 2k, k)`.
pub fn unitary_grassmannian_dim(n: usize, k: usize) -> usize {
    let steps = [k, n - 2 * k, k];
    (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).map(|(i, j)| steps[i] * steps[j]).sum()
}

/// The integer identities among dimensions of `H_k`, the orthogonal
/// grassmannian and unitary grassmannians of index `k`, for `1 ≤ k ≤ n/2`.
pub fn dimension_identities(n: usize, k: usize) -> DimensionReport {
    assert!(1 <= k && 2 * k <= n, "need 1 <= k <= n/2");
    let dim_h = unitary_grassmannian_dim(n, k);
    let dim_x = orthogonal_grassmannian_dim(n, k);
    let mut checks = base_checks(n, k, dim_h, dim_x);
    let shift = (k % 2 == 0).then(|| {
        let twice = dim_h - k * k / 2;
        let d = twice / 2;
        checks.push(Check::new("shift is an integer", twice % 2 == 0, format!("2d = {twice}")));
        checks.push(Check::new("shift exceeds k(n - 2k)", d == k * (n - 2 * k) + k * k / 4, format!("d = {d} = k(n - 2k) + k^2/4")));
        d
    });
    let passed = all_passed(&checks);
    DimensionReport { n, k, dim_h, dim_orthogonal: dim_x, shift, checks, passed }
}

fn base_checks(n: usize, k: usize, dim_h: usize, dim_x: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    checks.push(Check::new("dim H_k = k(2n - 3k)", dim_h == k * (2 * n - 3 * k), format!("{dim_h}")));
    checks.push(Check::new("dim X = k(4n - 6k - 1)", dim_x == k * (4 * n - 6 * k - 1), format!("{dim_x}")));
    let consecutive: usize = (n - 2 * k..n - k).sum();
    checks.push(Check::new(
        "(dim X - dim H)/2 = (k/2)(2n - 3k - 1) = (n-2k) + ... + (n-k-1)",
        dim_x - dim_h == k * (2 * n - 3 * k - 1) && k * (2 * n - 3 * k - 1) == 2 * consecutive,
        format!("{}", (dim_x - dim_h) / 2),
    ));
    let odd_sum: usize = (0..k).map(|j| n - 2 * k + 1 + 2 * j).sum();
    checks.push(Check::new(
        "(n-2k+1) + (n-2k+3) + ... + (n-1) = k(n-2k+1) + k(k-1) = k(n-k)",
        odd_sum == k * (n - 2 * k + 1) + k * (k - 1) && odd_sum == k * (n - k),
        format!("{odd_sum}"),
    ));
    checks.push(Check::new("dim H_k - k(n-k) = k(n-2k)", dim_h - k * (n - k) == k * (n - 2 * k), ""));
    if k == 1 {
        checks.push(Check::new("dim H_1 = 2n - 3", dim_h == 2 * n - 3, ""));
    }
    checks
}

/// Compares `dim H_k` with the top codimension of the flag-model subring.
pub fn dimension_crosscheck(n: usize, k: usize) -> Result<Check> {
    let h = UnitaryGrassmannian::new(n, k)?;
    let top = h.subring().top_codim();
    Ok(Check::new("dim H_k equals the top codimension of the model", top == unitary_grassmannian_dim(n, k), format!("{top}")))
}
