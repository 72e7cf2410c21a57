//! Slowing down a descending chain so that `C(γ_i) ≤ i + 1`.
//!
//! Index `i` below `ℓ = max(c, C(α_0))` gets the tower `ω_{N-i}`, with `N`
//! minimal such that `ω_{N-ℓ} > ω^ω·α_0`. From `ℓ` on, `i` is split as
//! `C(α_0) + … + C(α_k) + x` with `x < C(α_{k+1})`, and
//! `γ_i = ω^ω·α_k + g_n(max(2,k), x)`.
//!
//! Chains are finite prefixes, so `n` is supplied by the caller and checked
//! against the prefix: `C(α_{k+1}) ≤ F_n(max(2,k))` for every `k`.

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::correspond::g;
use crate::eval::{exceeds, Nat};
use crate::ord::{OrdError, Ordinal};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SlowdownError {
    #[error("empty chain")]
    EmptyChain,
    #[error("chain is not strictly descending at entry {at}")]
    NotDescending { at: usize },
    #[error("chain entry {at} is zero but not last")]
    ZeroBeforeEnd { at: usize },
    #[error("index n must be at least 1")]
    IndexTooSmall,
    #[error("C(alpha_{next}) = {coeff} exceeds F_{n}({base})", next = .k + 1)]
    BoundFails { k: usize, coeff: Nat, n: usize, base: u64 },
    #[error("line {line}: {source}")]
    Parse { line: usize, source: OrdError },
    #[error("index range too large to materialise ({0} entries)")]
    TooLong(Nat),
}

/// A finite, strictly descending chain, nonzero except possibly at the end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Ordinal>", into = "Vec<Ordinal>")]
pub struct Chain {
    entries: Vec<Ordinal>,
}

impl Chain {
    pub fn new(entries: Vec<Ordinal>) -> Result<Self, SlowdownError> {
        if entries.is_empty() {
            return Err(SlowdownError::EmptyChain);
        }
        if let Some(at) = entries.windows(2).position(|w| w[1] >= w[0]) {
            return Err(SlowdownError::NotDescending { at: at + 1 });
        }
        if let Some(at) = entries[..entries.len() - 1].iter().position(Ordinal::is_zero) {
            return Err(SlowdownError::ZeroBeforeEnd { at });
        }
        Ok(Chain { entries })
    }

    pub fn entries(&self) -> &[Ordinal] {
        &self.entries
    }
}

impl TryFrom<Vec<Ordinal>> for Chain {
    type Error = SlowdownError;

    fn try_from(v: Vec<Ordinal>) -> Result<Self, Self::Error> {
        Chain::new(v)
    }
}

impl From<Chain> for Vec<Ordinal> {
    fn from(c: Chain) -> Self {
        c.entries
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlowChain {
    pub entries: Vec<Ordinal>,
    /// `ℓ`.
    #[serde(with = "crate::natstr")]
    pub tower_prefix_len: Nat,
    /// `N`.
    #[serde(with = "crate::natstr")]
    pub tower_height_base: Nat,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// `g_n(max(2,k), x)`.
pub fn slow_g(n: usize, k: &Nat, x: &Nat) -> Ordinal {
    let base = std::cmp::max(k.clone(), Nat::from(2u32));
    g(n, &base, x).expect("base is at least 2")
}

/// Entries above this count are refused rather than allocated.
const MAX_ENTRIES: u64 = 1 << 24;

fn materialise(v: &Nat) -> Result<u64, SlowdownError> {
    v.to_u64().filter(|&l| l <= MAX_ENTRIES).ok_or_else(|| SlowdownError::TooLong(v.clone()))
}

pub fn compress(alphas: &Chain, n: usize, c: &Nat) -> Result<SlowChain, SlowdownError> {
    if n == 0 {
        return Err(SlowdownError::IndexTooSmall);
    }
    let a = alphas.entries();
    let measures: Vec<Nat> = a.iter().map(Ordinal::coeff_measure).collect();
    for k in 0..a.len() - 1 {
        let base = std::cmp::max(k as u64, 2);
        let coeff = &measures[k + 1];
        // F_n(b) >= C iff F_n(b) > C - 1.
        if !coeff.is_zero() && !exceeds(&Nat::from(n), &Nat::from(1u32), &Nat::from(base), &(coeff - 1u32)) {
            return Err(SlowdownError::BoundFails { k, coeff: measures[k + 1].clone(), n, base });
        }
    }

    let ell = std::cmp::max(c.clone(), measures[0].clone());
    let ell_len = materialise(&ell)?;
    let head = a[0].mul_omega_omega();
    let mut t = 0usize;
    while Ordinal::omega_tower(t) <= head {
        t += 1;
    }
    let big_n = &ell + t;

    let mut notes = Vec::new();
    let mut entries = Vec::new();
    for i in 0..ell_len {
        let height = (&big_n - i).to_usize().expect("tower height fits in memory");
        entries.push(Ordinal::omega_tower(height));
    }

    // Block k spans [S_k, S_k + C(α_{k+1})) with S_k = C(α_0) + … + C(α_k).
    let mut start = measures[0].clone();
    if start < ell {
        notes.push(format!(
            "indices {start}..{ell} are decomposable but covered by the tower prefix"
        ));
    }
    let total: Nat = measures.iter().sum();
    materialise(&total)?;
    for k in 0..a.len() - 1 {
        let width = &measures[k + 1];
        let end = &start + width;
        if end > ell {
            let lifted = a[k].mul_omega_omega();
            let kn = Nat::from(k);
            let first = if start < ell { &ell - &start } else { Nat::zero() };
            let mut x = first;
            while &x < width {
                entries.push(lifted.add(&slow_g(n, &kn, &x)));
                x += 1u32;
            }
        }
        start = end;
    }
    if start <= ell {
        notes.push(format!("ell = {ell} covers the whole decomposable range; tower prefix only"));
    }
    Ok(SlowChain { entries, tower_prefix_len: ell, tower_height_base: big_n, notes })
}

/// Strict descent and `C(γ_i) ≤ i + 1` for every index.
pub fn verify_slow(entries: &[Ordinal]) -> Report {
    let mut report = Report::default();
    for (i, w) in entries.windows(2).enumerate() {
        report.check(w[1] < w[0], || format!("entry {} = {} is not below entry {i} = {}", i + 1, w[1], w[0]));
    }
    for (i, e) in entries.iter().enumerate() {
        let measure = e.coeff_measure();
        report.check(measure <= Nat::from(i + 1), || format!("C(entry {i}) = {measure} exceeds {}", i + 1));
    }
    report
}

/// One ordinal per line; blank lines and `#` comments are skipped.
pub fn parse_chain_file(text: &str) -> Result<Vec<Ordinal>, SlowdownError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ord = line.parse().map_err(|source| SlowdownError::Parse { line: idx + 1, source })?;
        out.push(ord);
    }
    Ok(out)
}

pub fn format_chain_file(entries: &[Ordinal]) -> String {
    entries.iter().map(|e| format!("{e}\n")).collect()
}
