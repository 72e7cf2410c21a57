//! Bridges between numbers and ordinals.
//!
//! [`o_map`] sends `x ≥ k` with F-representation `[(x_1,i_1),…]_k` to
//! `Σ ω^{ê(x_p)}·i_p`, where the exponent coding `ê` is the identity below the
//! base. Above the base the two codings differ:
//!
//! - [`Coding::Literal`]: `ê(v) = o_k(v)`. Here `o_k(k) = 0` collides with the
//!   image of the exponent `0`, and the map is not monotone (`o_2(4) = ω` but
//!   `o_2(9) = 2`). It is kept to exhibit that.
//! - [`Coding::Repaired`]: `ê(v) = ω + o_k(v)`. Exponents at or above the base
//!   land above every finite exponent, so the map is an order isomorphism onto
//!   its image `D_k`, and it commutes with base shifts because the prefix does
//!   not mention the base.
//!
//! Inversion ([`l_inverse`], [`in_d`], [`q_pred`]) is defined for the repaired
//! coding only.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::eval::{eval_f_iter, exceeds, BoundedNat, Nat};
use crate::frep::{encode, Body, FrepError};
use crate::ord::Ordinal;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coding {
    Literal,
    #[default]
    Repaired,
}

impl fmt::Display for Coding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coding::Literal => "literal",
            Coding::Repaired => "repaired",
        })
    }
}

impl FromStr for Coding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "literal" => Ok(Coding::Literal),
            "repaired" => Ok(Coding::Repaired),
            other => Err(format!("unknown coding {other:?} (expected literal or repaired)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorrespondError {
    #[error(transparent)]
    Frep(#[from] FrepError),
    #[error("{x} is below the base {k}")]
    BelowBase { x: Nat, k: Nat },
    #[error("not in D_{k}: {reason}")]
    NotInD { k: Nat, reason: String },
    #[error("the literal coding is not injective, so it has no inverse")]
    LiteralNotInvertible,
    #[error("0 is the least element of D_k and has no predecessor")]
    NoPredecessor,
    #[error("preimage exceeds cap {0}")]
    ExceedsCap(Nat),
    #[error("profile needs n >= 1 and {k} <= x < F_{n}({k}), got x = {x}")]
    ProfileRange { x: Nat, n: usize, k: Nat },
}

fn check_base(k: &Nat) -> Result<(), CorrespondError> {
    if k < &Nat::from(2u32) {
        return Err(FrepError::BaseTooSmall(k.clone()).into());
    }
    Ok(())
}

fn exp_code(v: &Nat, k: &Nat, coding: Coding) -> Result<Ordinal, CorrespondError> {
    if v < k {
        return Ok(Ordinal::finite(v.clone()));
    }
    let inner = o_map(v, k, coding)?;
    Ok(match coding {
        Coding::Literal => inner,
        Coding::Repaired => Ordinal::omega().add(&inner),
    })
}

/// `o_k(x)` for `x ≥ k`. Terms are summed as ordinals, so equal exponents
/// merge and the zero-count pair of `x = k` vanishes.
pub fn o_map(x: &Nat, k: &Nat, coding: Coding) -> Result<Ordinal, CorrespondError> {
    check_base(k)?;
    if x < k {
        return Err(CorrespondError::BelowBase { x: x.clone(), k: k.clone() });
    }
    let Body::Pairs(pairs) = encode(x, k)?.body else {
        unreachable!("x >= k encodes to pairs");
    };
    let mut terms = Vec::with_capacity(pairs.len());
    for p in &pairs {
        terms.push((exp_code(&p.exp, k, coding)?, p.cnt.clone()));
    }
    Ok(Ordinal::sum_of(terms))
}

/// Exponent of a decoded term: either a literal number below the base, or a
/// coded exponent with its own skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkelExp {
    Finite(Nat),
    Coded { inner: Box<Skeleton>, value: BoundedNat },
}

/// Shape of the F-representation of a preimage, recovered without computing
/// the (possibly astronomical) value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Skeleton {
    /// `[(0,0)]`, the preimage of `0`.
    Base,
    Pairs(Vec<(SkelExp, Nat)>),
}

impl fmt::Display for Skeleton {
    /// Exponents print as numbers when known, as nested skeletons otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Skeleton::Base => f.write_str("[(0,0)]"),
            Skeleton::Pairs(pairs) => {
                f.write_str("[")?;
                for (idx, (e, c)) in pairs.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(",")?;
                    }
                    match e {
                        SkelExp::Finite(v) | SkelExp::Coded { value: BoundedNat::Exact(v), .. } => {
                            write!(f, "({v},{c})")?
                        }
                        SkelExp::Coded { inner, .. } => write!(f, "({inner},{c})")?,
                    }
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Member { skeleton: Skeleton, value: BoundedNat },
    NonMember { reason: String },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Structural preimage under the repaired coding.
///
/// Values are tracked under `max(cap, C(a))`: an exponent or chain value past
/// that bound is past every count of `a`, so the count bounds `i_p < k_p`
/// still decide correctly, and past `cap` the final value is too.
fn preimage(a: &Ordinal, k: &Nat, cap: &Nat) -> Result<(Skeleton, BoundedNat), String> {
    let work_cap = std::cmp::max(cap.clone(), a.coeff_measure());
    let (skeleton, value) = preimage_under(a, k, &work_cap)?;
    let value = match value {
        BoundedNat::Exact(v) => BoundedNat::bounded(v, cap),
        BoundedNat::ExceedsCap(_) => BoundedNat::ExceedsCap(cap.clone()),
    };
    Ok((skeleton, value))
}

fn preimage_under(a: &Ordinal, k: &Nat, work_cap: &Nat) -> Result<(Skeleton, BoundedNat), String> {
    if a.is_zero() {
        return Ok((Skeleton::Base, BoundedNat::bounded(k.clone(), work_cap)));
    }
    let mut chain = BoundedNat::bounded(k.clone(), work_cap);
    let mut pairs = Vec::with_capacity(a.terms().len());
    for (idx, term) in a.terms().iter().enumerate() {
        let p = idx + 1;
        let (skel_exp, exp_value) = match term.exp().as_finite() {
            Some(v) if &v < k => (SkelExp::Finite(v.clone()), BoundedNat::Exact(v)),
            Some(v) => {
                return Err(format!("finite exponent {v} of term {p} is not below the base {k}"));
            }
            None => {
                let rest = term.exp().left_subtract_omega().expect("infinite exponent is >= w");
                let (inner, value) = preimage_under(&rest, k, work_cap)
                    .map_err(|reason| format!("exponent of term {p}: {reason}"))?;
                (SkelExp::Coded { inner: Box::new(inner), value: value.clone() }, value)
            }
        };
        let cnt = term.coeff();
        if let BoundedNat::Exact(kp) = &chain {
            if cnt >= kp {
                return Err(format!("coefficient {cnt} of term {p} is not below k_{p} = {kp}"));
            }
        }
        chain = match (&chain, &exp_value) {
            (BoundedNat::Exact(kp), BoundedNat::Exact(e)) => eval_f_iter(e, cnt, kp, work_cap),
            // F_e^{(i)}(k_p) > e and > k_p for i >= 1.
            _ => BoundedNat::ExceedsCap(work_cap.clone()),
        };
        pairs.push((skel_exp, cnt.clone()));
    }
    Ok((Skeleton::Pairs(pairs), chain))
}

fn require_repaired(coding: Coding) -> Result<(), CorrespondError> {
    match coding {
        Coding::Repaired => Ok(()),
        Coding::Literal => Err(CorrespondError::LiteralNotInvertible),
    }
}

/// Decides `a ∈ D_k` from the shape of `a` alone. The reported value is
/// bounded by `cap`.
pub fn in_d(a: &Ordinal, k: &Nat, coding: Coding, cap: &Nat) -> Result<Membership, CorrespondError> {
    check_base(k)?;
    require_repaired(coding)?;
    Ok(match preimage(a, k, cap) {
        Ok((skeleton, value)) => Membership::Member { skeleton, value },
        Err(reason) => Membership::NonMember { reason },
    })
}

/// `L_k(a)`: the unique `x ≥ k` with `o_k(x) = a`.
pub fn l_inverse(a: &Ordinal, k: &Nat, coding: Coding, cap: &Nat) -> Result<BoundedNat, CorrespondError> {
    check_base(k)?;
    require_repaired(coding)?;
    preimage(a, k, cap)
        .map(|(_, value)| value)
        .map_err(|reason| CorrespondError::NotInD { k: k.clone(), reason })
}

/// `Q_k(a)`: the largest element of `D_k` below `a`, computed as
/// `o_k(L_k(a) - 1)`.
pub fn q_pred(a: &Ordinal, k: &Nat, coding: Coding, cap: &Nat) -> Result<Ordinal, CorrespondError> {
    if a.is_zero() {
        return Err(CorrespondError::NoPredecessor);
    }
    match l_inverse(a, k, coding, cap)? {
        BoundedNat::Exact(x) => o_map(&(x - 1u32), k, coding),
        BoundedNat::ExceedsCap(c) => Err(CorrespondError::ExceedsCap(c)),
    }
}

/// Counts of `x` laid out over all exponents `n-1, …, 0`, with the
/// intermediate bases they act on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaddedProfile {
    pub n: usize,
    pub base: Nat,
    /// `j[q-1]` is the count of exponent `n - q`, zero when absent.
    pub j: Vec<Nat>,
    /// `m[0] = base`, `m[q] = F_{n-q}^{(j[q-1])}(m[q-1])`.
    pub m: Vec<Nat>,
}

/// `s(x; n, k)` together with its intermediate bases. Requires `n >= 1` and
/// `k <= x < F_n(k)`.
pub fn profile(x: &Nat, n: usize, k: &Nat) -> Result<PaddedProfile, CorrespondError> {
    check_base(k)?;
    let out_of_range = || CorrespondError::ProfileRange { x: x.clone(), n, k: k.clone() };
    if n == 0 || x < k || !exceeds(&Nat::from(n), &Nat::from(1u32), k, x) {
        return Err(out_of_range());
    }
    let Body::Pairs(pairs) = encode(x, k)?.body else {
        unreachable!("x >= k encodes to pairs");
    };
    let mut j = vec![Nat::zero(); n];
    for p in &pairs {
        // x < F_n(k) forces every exponent below n.
        let e: usize = p.exp.clone().try_into().map_err(|_| out_of_range())?;
        if e >= n {
            return Err(out_of_range());
        }
        j[n - 1 - e] = p.cnt.clone();
    }
    let mut m = Vec::with_capacity(n);
    m.push(k.clone());
    for q in 1..n {
        let next = eval_f_iter(&Nat::from(n - q), &j[q - 1], &m[q - 1], x)
            .into_exact()
            .expect("intermediate bases are at most x");
        m.push(next);
    }
    Ok(PaddedProfile { n, base: k.clone(), j, m })
}

/// The flipped profile `(m_1 - j_1, …, m_n - j_n)`; every entry is at least 1.
pub fn flip(p: &PaddedProfile) -> Vec<Nat> {
    p.m.iter().zip(&p.j).map(|(m, j)| m - j).collect()
}

/// The descending assignment `g_n(k, x) < ω^{n+1}`:
/// `(k+1) ∸ x` for `n = 0`; `ω^n·(k-x)` for `x < k`;
/// `Σ_q ω^{n-q}·(m_q - j_q)` for `k ≤ x < F_n(k)`; and `0` beyond.
pub fn g(n: usize, k: &Nat, x: &Nat) -> Result<Ordinal, CorrespondError> {
    check_base(k)?;
    if n == 0 {
        let top = k + 1u32;
        return Ok(Ordinal::finite(if x < &top { top - x } else { Nat::zero() }));
    }
    if x < k {
        return Ok(Ordinal::monomial(Ordinal::finite(n as u64), k - x));
    }
    if !exceeds(&Nat::from(n), &Nat::from(1u32), k, x) {
        return Ok(Ordinal::zero());
    }
    let p = profile(x, n, k)?;
    let flipped = flip(&p);
    Ok(Ordinal::sum_of(
        flipped.into_iter().enumerate().map(|(idx, c)| (Ordinal::finite((n - 1 - idx) as u64), c)),
    ))
}
