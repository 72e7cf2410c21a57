//! F-representations of natural numbers.
//!
//! For a base `k ≥ 2`, every `x ≥ k` is written uniquely as
//! `x = F_{x_ℓ}^{(i_ℓ)}(… F_{x_1}^{(i_1)}(k) …)`, printed `[(x_1,i_1),…,(x_ℓ,i_ℓ)]_k`,
//! with `x_1 > … > x_ℓ ≥ 0` and `1 ≤ i_p < k_p`, where `k_1 = k` and
//! `k_{p+1} = F_{x_p}^{(i_p)}(k_p)`. The single exception is `x = k`, written
//! `[(0,0)]_k`. Numbers below the base are atoms.
//!
//! The total representation [`TRep`] represents every exponent and every count
//! again in the same base, all the way down.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::eval::{eval_f, eval_f_iter, BoundedNat, Nat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub exp: Nat,
    pub cnt: Nat,
}

impl Pair {
    pub fn new(exp: impl Into<Nat>, cnt: impl Into<Nat>) -> Self {
        Pair { exp: exp.into(), cnt: cnt.into() }
    }

    fn is_zero_pair(&self) -> bool {
        self.exp.is_zero() && self.cnt.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Body {
    Atom(Nat),
    Pairs(Vec<Pair>),
}

/// F-representation with its base. May hold invalid data (for instance
/// straight out of the parser); see [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FRep {
    pub base: Nat,
    pub body: Body,
}

impl FRep {
    pub fn atom(v: impl Into<Nat>, base: impl Into<Nat>) -> Self {
        FRep { base: base.into(), body: Body::Atom(v.into()) }
    }

    pub fn pairs<I, E, C>(pairs: I, base: impl Into<Nat>) -> Self
    where
        I: IntoIterator<Item = (E, C)>,
        E: Into<Nat>,
        C: Into<Nat>,
    {
        FRep {
            base: base.into(),
            body: Body::Pairs(pairs.into_iter().map(|(e, c)| Pair::new(e, c)).collect()),
        }
    }

    pub fn as_pairs(&self) -> Option<&[Pair]> {
        match &self.body {
            Body::Pairs(p) => Some(p),
            Body::Atom(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrepError {
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(Nat),
    #[error("shift needs 2 <= from <= to, got from {from} to {to}")]
    ShiftOrder { from: Nat, to: Nat },
    #[error("representations have different bases {0} and {1}")]
    BaseMismatch(Nat, Nat),
    #[error("invalid representation: {0}")]
    Invalid(ValidationReport),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// A violated clause of the representation invariants. Pair indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BaseTooSmall { base: Nat },
    AtomNotBelowBase { value: Nat, base: Nat },
    EmptyPairs,
    ExponentsNotDecreasing { at: usize },
    ZeroCount { at: usize },
    CountNotBelowChain { at: usize, cnt: Nat, chain: Nat },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BaseTooSmall { base } => write!(f, "base {base} < 2"),
            Violation::AtomNotBelowBase { value, base } => {
                write!(f, "atom {value} is not below base {base}")
            }
            Violation::EmptyPairs => f.write_str("empty pair list"),
            Violation::ExponentsNotDecreasing { at } => {
                write!(f, "exponents not decreasing: exp_{at} <= exp_{}", at + 1)
            }
            Violation::ZeroCount { at } => write!(f, "cnt_{at} = 0 outside the [(0,0)] form"),
            Violation::CountNotBelowChain { at, cnt, chain } => {
                write!(f, "cnt_{at} = {cnt} is not below k_{at} = {chain}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

fn check_base(k: &Nat) -> Result<(), FrepError> {
    if k < &Nat::from(2u32) {
        return Err(FrepError::BaseTooSmall(k.clone()));
    }
    Ok(())
}

/// Largest `i` with `F_e^{(i)}(start) <= x`, together with that iterate.
/// Requires `start <= x`.
fn max_iterate(e: &Nat, start: &Nat, x: &Nat) -> (Nat, Nat) {
    if e.is_zero() {
        return (x - start, x.clone());
    }
    let mut v = start.clone();
    let mut i = Nat::zero();
    // Each application at least doubles v (v >= 2), so this is logarithmic in x.
    while let BoundedNat::Exact(next) = eval_f(e, &v, x) {
        v = next;
        i += 1u32;
    }
    (i, v)
}

/// The F-representation of `x` with base `k`.
pub fn encode(x: &Nat, k: &Nat) -> Result<FRep, FrepError> {
    check_base(k)?;
    if x < k {
        return Ok(FRep { base: k.clone(), body: Body::Atom(x.clone()) });
    }
    let mut pairs = Vec::new();
    let mut base = k.clone();
    loop {
        // Least e with x < F_{e+1}(base); F_e(base) >= base + e keeps this finite.
        let mut e = Nat::zero();
        while !eval_f(&(&e + 1u32), &base, x).is_exceeded() {
            e += 1u32;
        }
        let (cnt, next) = max_iterate(&e, &base, x);
        pairs.push(Pair { exp: e, cnt });
        if &next == x {
            break;
        }
        base = next;
    }
    Ok(FRep { base: k.clone(), body: Body::Pairs(pairs) })
}

/// Evaluates the F-tower of `pairs` on top of `base` without validating.
pub(crate) fn eval_pairs<'a, I>(base: &Nat, pairs: I, cap: &Nat) -> BoundedNat
where
    I: IntoIterator<Item = (&'a Nat, &'a Nat)>,
{
    let mut acc = match BoundedNat::bounded(base.clone(), cap) {
        BoundedNat::Exact(v) => v,
        over => return over,
    };
    for (exp, cnt) in pairs {
        acc = match eval_f_iter(exp, cnt, &acc, cap) {
            BoundedNat::Exact(v) => v,
            over => return over,
        };
    }
    BoundedNat::Exact(acc)
}

/// Checks every representation invariant. The count bounds `cnt_p < k_p` are
/// decided by evaluating the chain under a cap equal to the largest count, so
/// astronomically large `k_p` are never materialized.
pub fn validate(r: &FRep) -> ValidationReport {
    let mut violations = Vec::new();
    if r.base < Nat::from(2u32) {
        violations.push(Violation::BaseTooSmall { base: r.base.clone() });
    }
    match &r.body {
        Body::Atom(v) => {
            if v >= &r.base {
                violations.push(Violation::AtomNotBelowBase { value: v.clone(), base: r.base.clone() });
            }
        }
        Body::Pairs(pairs) if pairs.is_empty() => violations.push(Violation::EmptyPairs),
        Body::Pairs(pairs) if pairs.len() == 1 && pairs[0].is_zero_pair() => {}
        Body::Pairs(pairs) => {
            for (p, w) in pairs.windows(2).enumerate() {
                if w[0].exp <= w[1].exp {
                    violations.push(Violation::ExponentsNotDecreasing { at: p + 1 });
                }
            }
            let max_cnt = pairs.iter().map(|q| &q.cnt).max().cloned().unwrap_or_default();
            let mut chain = BoundedNat::bounded(r.base.clone(), &max_cnt);
            for (p, pair) in pairs.iter().enumerate() {
                if pair.cnt.is_zero() {
                    violations.push(Violation::ZeroCount { at: p + 1 });
                }
                if let BoundedNat::Exact(kp) = &chain {
                    if &pair.cnt >= kp {
                        violations.push(Violation::CountNotBelowChain {
                            at: p + 1,
                            cnt: pair.cnt.clone(),
                            chain: kp.clone(),
                        });
                    }
                    chain = eval_f_iter(&pair.exp, &pair.cnt, kp, &max_cnt);
                }
            }
        }
    }
    ValidationReport { violations }
}

/// Numeric value of a valid representation.
pub fn decode(r: &FRep, cap: &Nat) -> Result<BoundedNat, FrepError> {
    let report = validate(r);
    if !report.is_valid() {
        return Err(FrepError::Invalid(report));
    }
    Ok(decode_unchecked(r, cap))
}

fn decode_unchecked(r: &FRep, cap: &Nat) -> BoundedNat {
    match &r.body {
        Body::Atom(v) => BoundedNat::bounded(v.clone(), cap),
        Body::Pairs(pairs) => eval_pairs(&r.base, pairs.iter().map(|p| (&p.exp, &p.cnt)), cap),
    }
}

/// Order of the represented numbers, read off the representations alone:
/// atoms numerically and below every pair list; pair lists lexicographically
/// with a proper prefix smaller.
pub fn compare(a: &FRep, b: &FRep) -> Result<Ordering, FrepError> {
    if a.base != b.base {
        return Err(FrepError::BaseMismatch(a.base.clone(), b.base.clone()));
    }
    Ok(match (&a.body, &b.body) {
        (Body::Atom(x), Body::Atom(y)) => x.cmp(y),
        (Body::Atom(_), Body::Pairs(_)) => Ordering::Less,
        (Body::Pairs(_), Body::Atom(_)) => Ordering::Greater,
        (Body::Pairs(x), Body::Pairs(y)) => x.cmp(y),
    })
}

fn check_shift(k: &Nat, m: &Nat) -> Result<(), FrepError> {
    check_base(k)?;
    if k > m {
        return Err(FrepError::ShiftOrder { from: k.clone(), to: m.clone() });
    }
    Ok(())
}

/// The representation of `x[k:=m]`: exponents shifted hereditarily, counts
/// kept, base replaced by `m`. `None` when a shifted exponent exceeds `cap`
/// (which forces the shifted value above `cap` as well).
pub fn shift_rep(x: &Nat, k: &Nat, m: &Nat, cap: &Nat) -> Result<Option<FRep>, FrepError> {
    check_shift(k, m)?;
    let body = match encode(x, k)?.body {
        Body::Atom(v) => Body::Atom(v),
        Body::Pairs(pairs) => {
            let mut shifted = Vec::with_capacity(pairs.len());
            for pair in pairs {
                let exp = match shift_value(&pair.exp, k, m, cap)? {
                    BoundedNat::Exact(e) => e,
                    BoundedNat::ExceedsCap(_) => return Ok(None),
                };
                shifted.push(Pair { exp, cnt: pair.cnt });
            }
            Body::Pairs(shifted)
        }
    };
    Ok(Some(FRep { base: m.clone(), body }))
}

/// Value of `x[k:=m]`. Numbers below `k` shift to themselves.
pub fn shift_value(x: &Nat, k: &Nat, m: &Nat, cap: &Nat) -> Result<BoundedNat, FrepError> {
    check_shift(k, m)?;
    if x < k {
        return Ok(BoundedNat::bounded(x.clone(), cap));
    }
    Ok(match shift_rep(x, k, m, cap)? {
        // An exponent e > cap with count >= 1 gives a value >= F_e(m) > e.
        None => BoundedNat::ExceedsCap(cap.clone()),
        Some(r) => decode_unchecked(&r, cap),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TBody {
    Atom(Nat),
    Pairs(Vec<(TRep, TRep)>),
}

/// Total representation: exponents and counts are themselves total
/// representations in the same base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TRep {
    pub base: Nat,
    pub body: TBody,
}

impl TRep {
    /// The same tree with every base replaced by `m`. For `m >= base` this is
    /// exactly the hereditary shift `x[k:=m]` in both components.
    pub fn rebase(&self, m: &Nat) -> TRep {
        TRep {
            base: m.clone(),
            body: match &self.body {
                TBody::Atom(v) => TBody::Atom(v.clone()),
                TBody::Pairs(pairs) => {
                    TBody::Pairs(pairs.iter().map(|(e, c)| (e.rebase(m), c.rebase(m))).collect())
                }
            },
        }
    }
}

pub fn to_total(x: &Nat, k: &Nat) -> Result<TRep, FrepError> {
    let body = match encode(x, k)?.body {
        Body::Atom(v) => TBody::Atom(v),
        Body::Pairs(pairs) => TBody::Pairs(
            pairs
                .iter()
                .map(|p| Ok((to_total(&p.exp, k)?, to_total(&p.cnt, k)?)))
                .collect::<Result<_, FrepError>>()?,
        ),
    };
    Ok(TRep { base: k.clone(), body })
}

/// Value of a total representation. Each level's numeric shadow is validated
/// whenever its components fit under `cap`.
pub fn decode_total(t: &TRep, cap: &Nat) -> Result<BoundedNat, FrepError> {
    eval_total(t, cap, true)
}

fn eval_total(t: &TRep, cap: &Nat, check: bool) -> Result<BoundedNat, FrepError> {
    let pairs = match &t.body {
        TBody::Atom(v) => {
            if check {
                let r = FRep { base: t.base.clone(), body: Body::Atom(v.clone()) };
                let report = validate(&r);
                if !report.is_valid() {
                    return Err(FrepError::Invalid(report));
                }
            }
            return Ok(BoundedNat::bounded(v.clone(), cap));
        }
        TBody::Pairs(pairs) => pairs,
    };
    let mut shadow = Vec::with_capacity(pairs.len());
    for (e, c) in pairs {
        let e = eval_total(e, cap, check)?;
        let c = eval_total(c, cap, check)?;
        match (e, c) {
            (BoundedNat::Exact(e), BoundedNat::Exact(c)) => shadow.push(Pair { exp: e, cnt: c }),
            // Any component above cap puts the whole tower above cap.
            _ => return Ok(BoundedNat::ExceedsCap(cap.clone())),
        }
    }
    let r = FRep { base: t.base.clone(), body: Body::Pairs(shadow) };
    if check {
        decode(&r, cap)
    } else {
        Ok(decode_unchecked(&r, cap))
    }
}

/// Hereditary shift value: both exponents and counts are shifted.
pub fn shift_total_value(x: &Nat, k: &Nat, m: &Nat, cap: &Nat) -> Result<BoundedNat, FrepError> {
    check_shift(k, m)?;
    if x < k {
        return Ok(BoundedNat::bounded(x.clone(), cap));
    }
    eval_total(&to_total(x, k)?.rebase(m), cap, false)
}

impl fmt::Display for FRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            Body::Atom(v) => write!(f, "{v}"),
            Body::Pairs(pairs) => {
                f.write_str("[")?;
                for (idx, p) in pairs.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "({},{})", p.exp, p.cnt)?;
                }
                write!(f, "]_{}", self.base)
            }
        }
    }
}

impl fmt::Display for TRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            TBody::Atom(v) => write!(f, "{v}"),
            TBody::Pairs(pairs) => {
                f.write_str("[")?;
                for (idx, (e, c)) in pairs.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "({e},{c})")?;
                }
                write!(f, "]_{}", self.base)
            }
        }
    }
}

/// Parse tree shared by both grammars.
enum Node {
    Nat(Nat),
    Pairs(Vec<(Node, Node)>, Nat),
}

struct RepParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl RepParser<'_> {
    fn error(&self, message: &str) -> FrepError {
        FrepError::Parse { offset: self.pos, message: message.to_string() }
    }

    fn expect(&mut self, lit: &[u8]) -> Result<(), FrepError> {
        for &b in lit {
            if self.src.get(self.pos) != Some(&b) {
                return Err(self.error(&format!("expected '{}'", b as char)));
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn nat(&mut self) -> Result<Nat, FrepError> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("decimal digits"))
    }

    fn node(&mut self) -> Result<Node, FrepError> {
        if self.src.get(self.pos) != Some(&b'[') {
            return self.nat().map(Node::Nat);
        }
        self.pos += 1;
        let mut pairs = Vec::new();
        loop {
            self.expect(b"(")?;
            let e = self.node()?;
            self.expect(b",")?;
            let c = self.node()?;
            self.expect(b")")?;
            pairs.push((e, c));
            match self.src.get(self.pos) {
                Some(b',') => self.pos += 1,
                Some(b']') => break,
                _ => return Err(self.error("expected ',' or ']'")),
            }
        }
        self.expect(b"]_")?;
        let base = self.nat()?;
        Ok(Node::Pairs(pairs, base))
    }

    fn parse(text: &str) -> Result<Node, FrepError> {
        let mut p = RepParser { src: text.as_bytes(), pos: 0 };
        let node = p.node()?;
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(node)
    }
}

/// Either grammar: nested brackets make a total representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rep {
    Plain(FRep),
    Total(TRep),
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rep::Plain(r) => r.fmt(f),
            Rep::Total(t) => t.fmt(f),
        }
    }
}

/// Parses either grammar. A bare natural carries no base, so it needs
/// `atom_base`; bracketed forms carry their own.
pub fn parse_rep(text: &str, atom_base: Option<&Nat>) -> Result<Rep, FrepError> {
    fn flat(node: &Node) -> bool {
        match node {
            Node::Nat(_) => true,
            Node::Pairs(pairs, _) => {
                pairs.iter().all(|(e, c)| matches!((e, c), (Node::Nat(_), Node::Nat(_))))
            }
        }
    }
    let node = RepParser::parse(text)?;
    if flat(&node) {
        plain_from(node, atom_base).map(Rep::Plain)
    } else {
        total_from(node, atom_base).map(Rep::Total)
    }
}

fn missing_base() -> FrepError {
    FrepError::Parse { offset: 0, message: "a bare atom needs an explicit base".into() }
}

fn plain_from(node: Node, atom_base: Option<&Nat>) -> Result<FRep, FrepError> {
    match node {
        Node::Nat(v) => Ok(FRep { base: atom_base.ok_or_else(missing_base)?.clone(), body: Body::Atom(v) }),
        Node::Pairs(pairs, base) => {
            let pairs = pairs
                .into_iter()
                .map(|(e, c)| match (e, c) {
                    (Node::Nat(exp), Node::Nat(cnt)) => Ok(Pair { exp, cnt }),
                    _ => Err(FrepError::Parse { offset: 0, message: "nested item in plain representation".into() }),
                })
                .collect::<Result<_, _>>()?;
            Ok(FRep { base, body: Body::Pairs(pairs) })
        }
    }
}

fn total_from(node: Node, atom_base: Option<&Nat>) -> Result<TRep, FrepError> {
    match node {
        Node::Nat(v) => Ok(TRep { base: atom_base.ok_or_else(missing_base)?.clone(), body: TBody::Atom(v) }),
        Node::Pairs(pairs, base) => {
            let pairs = pairs
                .into_iter()
                .map(|(e, c)| Ok((total_from(e, Some(&base))?, total_from(c, Some(&base))?)))
                .collect::<Result<_, FrepError>>()?;
            Ok(TRep { base, body: TBody::Pairs(pairs) })
        }
    }
}

impl FromStr for FRep {
    type Err = FrepError;

    /// Bracketed form only; atoms need [`parse_rep`] with an explicit base.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        plain_from(RepParser::parse(s)?, None)
    }
}

impl FromStr for TRep {
    type Err = FrepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        total_from(RepParser::parse(s)?, None)
    }
}

#[derive(Serialize, Deserialize)]
struct FRepWire {
    base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    atom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<(String, String)>>,
}

#[derive(Serialize, Deserialize)]
struct TRepWire {
    base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    atom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<(TRep, TRep)>>,
}

fn parse_nat<E: serde::de::Error>(s: &str) -> Result<Nat, E> {
    s.parse().map_err(|_| E::custom(format!("invalid natural {s:?}")))
}

fn atom_or_pairs<T, E: serde::de::Error>(atom: Option<String>, pairs: Option<T>) -> Result<Result<Nat, T>, E> {
    match (atom, pairs) {
        (Some(a), None) => Ok(Ok(parse_nat(&a)?)),
        (None, Some(p)) => Ok(Err(p)),
        _ => Err(E::custom("expected exactly one of \"atom\" and \"pairs\"")),
    }
}

impl Serialize for FRep {
    /// `{"base":"k","pairs":[["x1","i1"],…]}` or `{"base":"k","atom":"v"}`.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (atom, pairs) = match &self.body {
            Body::Atom(v) => (Some(v.to_string()), None),
            Body::Pairs(p) => (None, Some(p.iter().map(|p| (p.exp.to_string(), p.cnt.to_string())).collect())),
        };
        FRepWire { base: self.base.to_string(), atom, pairs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = FRepWire::deserialize(d)?;
        let base = parse_nat(&w.base)?;
        let body = match atom_or_pairs(w.atom, w.pairs)? {
            Ok(v) => Body::Atom(v),
            Err(pairs) => Body::Pairs(
                pairs
                    .iter()
                    .map(|(e, c)| Ok(Pair { exp: parse_nat(e)?, cnt: parse_nat(c)? }))
                    .collect::<Result<_, D::Error>>()?,
            ),
        };
        Ok(FRep { base, body })
    }
}

impl Serialize for TRep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (atom, pairs) = match &self.body {
            TBody::Atom(v) => (Some(v.to_string()), None),
            TBody::Pairs(p) => (None, Some(p.clone())),
        };
        TRepWire { base: self.base.to_string(), atom, pairs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = TRepWire::deserialize(d)?;
        let base = parse_nat(&w.base)?;
        let body = match atom_or_pairs(w.atom, w.pairs)? {
            Ok(v) => TBody::Atom(v),
            Err(pairs) => TBody::Pairs(pairs),
        };
        Ok(TRep { base, body })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn cap() -> Nat {
        n(1_000_000)
    }

    #[test]
    fn encode_fixtures() {
        assert_eq!(encode(&n(5), &n(2)).unwrap(), FRep::pairs([(1u32, 1u32), (0, 1)], 2u32));
        assert_eq!(encode(&n(9), &n(2)).unwrap(), FRep::pairs([(2u32, 1u32), (0, 1)], 2u32));
        assert_eq!(encode(&n(2), &n(2)).unwrap(), FRep::pairs([(0u32, 0u32)], 2u32));
        assert_eq!(encode(&n(1), &n(5)).unwrap(), FRep::atom(1u32, 5u32));
        assert_eq!(encode(&n(7), &n(2)).unwrap(), FRep::pairs([(1u32, 1u32), (0, 3)], 2u32));
        assert_eq!(encode(&n(3), &n(1)), Err(FrepError::BaseTooSmall(n(1))));
    }

    #[test]
    fn decode_fixtures() {
        assert_eq!(decode(&FRep::pairs([(2u32, 1u32), (0, 1)], 2u32), &cap()).unwrap(), BoundedNat::Exact(n(9)));
        assert_eq!(decode(&FRep::pairs([(0u32, 0u32)], 7u32), &cap()).unwrap(), BoundedNat::Exact(n(7)));
        assert!(decode(&FRep::pairs([(3u32, 1u32)], 3u32), &cap()).unwrap().is_exceeded());
        assert!(matches!(decode(&FRep::pairs([(0u32, 3u32)], 2u32), &cap()), Err(FrepError::Invalid(_))));
    }

    #[test]
    fn compare_fixtures() {
        let c = |a: &FRep, b: &FRep| compare(a, b).unwrap();
        assert_eq!(c(&FRep::pairs([(1u32, 1u32)], 2u32), &FRep::pairs([(2u32, 1u32), (0, 1)], 2u32)), Ordering::Less);
        assert_eq!(c(&FRep::pairs([(0u32, 0u32)], 2u32), &FRep::pairs([(0u32, 0u32)], 2u32)), Ordering::Equal);
        assert_eq!(c(&FRep::pairs([(1u32, 1u32)], 2u32), &FRep::pairs([(1u32, 1u32), (0, 1)], 2u32)), Ordering::Less);
        assert_eq!(c(&FRep::atom(1u32, 2u32), &FRep::pairs([(0u32, 0u32)], 2u32)), Ordering::Less);
        assert!(matches!(compare(&FRep::atom(1u32, 2u32), &FRep::atom(1u32, 3u32)), Err(FrepError::BaseMismatch(..))));
    }

    #[test]
    fn shift_fixtures() {
        assert_eq!(shift_value(&n(4), &n(2), &n(3), &cap()).unwrap(), BoundedNat::Exact(n(6)));
        assert_eq!(shift_value(&n(2), &n(2), &n(3), &cap()).unwrap(), BoundedNat::Exact(n(3)));
        assert!(shift_value(&n(8), &n(2), &n(3), &cap()).unwrap().is_exceeded());
        assert_eq!(shift_value(&n(1), &n(2), &n(3), &cap()).unwrap(), BoundedNat::Exact(n(1)));
        assert_eq!(
            shift_rep(&n(8), &n(2), &n(3), &cap()).unwrap(),
            Some(FRep::pairs([(3u32, 1u32)], 3u32))
        );
        assert!(matches!(shift_value(&n(5), &n(3), &n(2), &cap()), Err(FrepError::ShiftOrder { .. })));
    }

    #[test]
    fn total_fixtures() {
        let t = to_total(&n(5), &n(2)).unwrap();
        let a = |v: u32| TRep { base: n(2), body: TBody::Atom(n(v as u64)) };
        assert_eq!(t, TRep { base: n(2), body: TBody::Pairs(vec![(a(1), a(1)), (a(0), a(1))]) });
        assert_eq!(decode_total(&to_total(&n(100), &n(3)).unwrap(), &cap()).unwrap(), BoundedNat::Exact(n(100)));
        assert_eq!(to_total(&n(1), &n(4)).unwrap(), TRep { base: n(4), body: TBody::Atom(n(1)) });
        // 7 = [(1,1),(0,3)]_2 has a count above the base: T(3)_2 = [(0,1)]_2.
        assert_eq!(to_total(&n(7), &n(2)).unwrap().to_string(), "[(1,1),(0,[(0,1)]_2)]_2");
    }

    #[test]
    fn total_shift_fixtures() {
        assert_eq!(shift_total_value(&n(4), &n(2), &n(3), &cap()).unwrap(), BoundedNat::Exact(n(6)));
        assert_eq!(shift_total_value(&n(2), &n(2), &n(3), &cap()).unwrap(), BoundedNat::Exact(n(3)));
        // 7 = [(1,1),(0,3)]_2: plain shift keeps 3 (6 + 3), hereditary shifts it to 4 (6 + 4).
        assert_eq!(shift_value(&n(7), &n(2), &n(3), &cap()).unwrap(), BoundedNat::Exact(n(9)));
        assert_eq!(shift_total_value(&n(7), &n(2), &n(3), &cap()).unwrap(), BoundedNat::Exact(n(10)));
        for k in 2..5u64 {
            for x in k..300 {
                assert_eq!(
                    shift_total_value(&n(x), &n(k), &n(k), &cap()).unwrap(),
                    decode(&encode(&n(x), &n(k)).unwrap(), &cap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn validate_fixtures() {
        let r = validate(&FRep::pairs([(0u32, 3u32)], 2u32));
        assert_eq!(r.violations, vec![Violation::CountNotBelowChain { at: 1, cnt: n(3), chain: n(2) }]);
        let r = validate(&FRep::pairs([(1u32, 1u32), (2, 1)], 2u32));
        assert_eq!(r.violations, vec![Violation::ExponentsNotDecreasing { at: 1 }]);
        assert!(validate(&FRep::pairs([(2u32, 1u32), (0, 1)], 2u32)).is_valid());
        assert!(!validate(&FRep::pairs([(1u32, 1u32), (0, 0)], 2u32)).is_valid());
        assert!(!validate(&FRep::pairs([(1u32, 1u32), (0, 4)], 2u32)).is_valid());
        assert!(!validate(&FRep::pairs(Vec::<(u32, u32)>::new(), 2u32)).is_valid());
        assert!(!validate(&FRep::atom(3u32, 3u32)).is_valid());
        // Astronomical k_2 = F_3(5) is never materialized.
        assert!(validate(&FRep::pairs([(3u32, 1u32), (2, 1_000_000)], 5u32)).is_valid());
    }

    #[test]
    fn text_fixtures() {
        assert_eq!(encode(&n(9), &n(2)).unwrap().to_string(), "[(2,1),(0,1)]_2");
        assert_eq!("[(0,0)]_3".parse::<FRep>().unwrap(), FRep::pairs([(0u32, 0u32)], 3u32));
        assert!(matches!("[(2,".parse::<FRep>(), Err(FrepError::Parse { offset: 4, .. })));
        assert!(matches!("[(2,1)]".parse::<FRep>(), Err(FrepError::Parse { offset: 7, .. })));
        assert!(matches!("[(2,1)]_2 ".parse::<FRep>(), Err(FrepError::Parse { offset: 9, .. })));
        assert_eq!(parse_rep("1", Some(&n(2))).unwrap(), Rep::Plain(FRep::atom(1u32, 2u32)));
        let t = to_total(&n(7), &n(2)).unwrap();
        assert_eq!(parse_rep(&t.to_string(), None).unwrap(), Rep::Total(t));
    }

    #[test]
    fn json_shapes() {
        let r = encode(&n(9), &n(2)).unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"base":"2","pairs":[["2","1"],["0","1"]]}"#);
        assert_eq!(serde_json::from_str::<FRep>(&serde_json::to_string(&r).unwrap()).unwrap(), r);
        let t = to_total(&n(7), &n(2)).unwrap();
        assert_eq!(serde_json::from_str::<TRep>(&serde_json::to_string(&t).unwrap()).unwrap(), t);
        assert!(serde_json::from_str::<FRep>(r#"{"base":"2"}"#).is_err());
    }
}
