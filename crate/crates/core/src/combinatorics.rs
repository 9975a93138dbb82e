//! Integer combinatorics used by the enumerators and the Taylor engine.
//!
//! Factorials are never materialized as floats: counts use checked `u128`
//! arithmetic, logarithms are sums of `ln i`.

/// `ln n!` as a sum of logarithms of integers.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// `ln (n! / (μ_1! ⋯ μ_k!))` where `n = Σ μ_i`.
pub fn ln_multinomial(counts: &[usize]) -> f64 {
    let n: usize = counts.iter().sum();
    ln_factorial(n) - counts.iter().map(|&c| ln_factorial(c)).sum::<f64>()
}

/// Exact multinomial coefficient, `None` on `u128` overflow.
pub fn multinomial(counts: &[usize]) -> Option<u128> {
    // Product of binomials C(μ_1 + ... + μ_i, μ_i).
    let mut acc: u128 = 1;
    let mut total = 0usize;
    for &c in counts {
        total += c;
        acc = acc.checked_mul(binomial(total, c)?)?;
    }
    Some(acc)
}

/// Multinomial as an `f64`, saturating to infinity. Used for work estimates.
pub fn multinomial_f64(counts: &[usize]) -> f64 {
    ln_multinomial(counts).exp()
}

/// Exact binomial coefficient `C(n, r)`, `None` on overflow.
pub fn binomial(n: usize, r: usize) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Rows `0..=n` of Pascal's triangle in exact integers.
pub fn pascal_rows(n: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut row = vec![1u128; j + 1];
        for i in 1..j {
            row[i] = rows[j - 1][i - 1] + rows[j - 1][i];
        }
        rows.push(row);
    }
    rows
}

/// Falling factorial `x (x-1) ⋯ (x-r+1)` in floating point; `1` when `r = 0`.
pub fn falling_factorial(x: usize, r: usize) -> f64 {
    if r > x {
        return 0.0;
    }
    (0..r).map(|i| (x - i) as f64).product()
}

/// All compositions of `n` into `k` non-negative parts, in lexicographic order.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=remaining {
            prefix.push(first);
            rec(remaining - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, k, &mut Vec::with_capacity(k), &mut out);
    out
}
