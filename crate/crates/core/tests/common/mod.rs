//! Independent reference implementations over `u128`, used as oracles.
#![allow(dead_code)]

/// `F_n^{(i)}(x)` if it is at most `limit`. Levels 0 and 1 use `x + i` and
/// `x·2^i`; higher levels unfold the definition.
pub fn f_iter(n: u32, i: u128, x: u128, limit: u128) -> Option<u128> {
    if x > limit {
        return None;
    }
    match n {
        0 => x.checked_add(i).filter(|&v| v <= limit),
        1 => {
            if x == 0 {
                return Some(0);
            }
            let mut v = x;
            for _ in 0..i {
                v = v.checked_mul(2).filter(|&v| v <= limit)?;
            }
            Some(v)
        }
        _ => {
            let mut v = x;
            for _ in 0..i {
                v = f_iter(n - 1, v, v, limit)?;
            }
            Some(v)
        }
    }
}

pub fn f(n: u32, x: u128, limit: u128) -> Option<u128> {
    f_iter(n, 1, x, limit)
}

/// The greedy F-representation straight from its definition: the least
/// exponent `e` with `x < F_{e+1}(k)`, the largest count `i` with
/// `F_e^{(i)}(k) ≤ x`, then recurse from `F_e^{(i)}(k)`.
pub fn encode(x: u128, k: u128) -> Option<Vec<(u32, u128)>> {
    if x < k {
        return None;
    }
    let mut out = Vec::new();
    let mut base = k;
    let mut upper: Option<u32> = None;
    loop {
        if x == base && !out.is_empty() {
            return Some(out);
        }
        let mut e = 0u32;
        while f(e + 1, base, x).is_some() {
            e += 1;
        }
        if let Some(u) = upper {
            assert!(e < u, "exponents must decrease");
        }
        let mut i = 0u128;
        while f_iter(e, i + 1, base, x).is_some() {
            i += 1;
        }
        out.push((e, i));
        if e == 0 || i == 0 {
            return Some(out);
        }
        base = f_iter(e, i, base, x).unwrap();
        upper = Some(e);
    }
}

/// `(j, m)` of the padded profile of `x` over exponents `n-1, …, 0`.
pub fn profile(x: u128, n: u32, k: u128) -> (Vec<u128>, Vec<u128>) {
    let rep = encode(x, k).expect("x >= k");
    let mut j = vec![0u128; n as usize];
    for (e, c) in rep {
        j[(n - 1 - e) as usize] = c;
    }
    let mut m = vec![k];
    for q in 1..n as usize {
        let next = f_iter(n - q as u32, j[q - 1], m[q - 1], x).expect("below x");
        m.push(next);
    }
    (j, m)
}

/// `F_n^{(i)}(x)` by literal unfolding down to `F_0`; tiny inputs only.
pub fn naive_iter(n: u32, i: u128, x: u128, limit: u128) -> Option<u128> {
    if x > limit {
        return None;
    }
    let mut v = x;
    for _ in 0..i {
        v = if n == 0 { Some(v + 1).filter(|&w| w <= limit)? } else { naive_iter(n - 1, v, v, limit)? };
    }
    Some(v)
}

use grz_core::{Nat, Ordinal};

/// Sums of `ω^{e_p}·c_p` over strictly decreasing exponents drawn from
/// `exps`, with `1 ≤ c_p ≤ max_coeff` and at most `max_terms` terms.
pub fn sums_over(exps: &[Ordinal], max_coeff: u64, max_terms: usize) -> Vec<Ordinal> {
    let mut sorted = exps.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted.reverse();
    let mut out = vec![Ordinal::zero()];
    let mut frontier: Vec<(usize, Vec<(Ordinal, Nat)>)> = vec![(0, Vec::new())];
    for _ in 0..max_terms {
        let mut next = Vec::new();
        for (from, terms) in &frontier {
            for (idx, e) in sorted.iter().enumerate().skip(*from) {
                for c in 1..=max_coeff {
                    let mut t = terms.clone();
                    t.push((e.clone(), Nat::from(c)));
                    out.push(Ordinal::sum_of(t.clone()));
                    next.push((idx + 1, t));
                }
            }
        }
        frontier = next;
    }
    out
}

/// Ordinals of depth at most 3 with every hereditary coefficient at most
/// `max_coeff`: at most 3 terms below the top level and 2 at it.
pub fn small_ordinals(max_coeff: u64) -> Vec<Ordinal> {
    let depth1 = sums_over(&[Ordinal::zero()], max_coeff, 1);
    let depth2 = sums_over(&depth1, max_coeff, 3);
    sums_over(&depth2, max_coeff, 2)
}
