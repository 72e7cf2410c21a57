//! Cantor normal form ordinals below ε₀.
//!
//! An [`Ordinal`] is a finite sum `ω^{e_1}·n_1 + … + ω^{e_r}·n_r` with
//! `e_1 > … > e_r` and every `n_p ≥ 1`; the empty sum is `0`. Every constructor
//! normalizes, so a value of this type is always in normal form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::eval::Nat;
use crate::natstr;

/// One summand `ω^exp · coeff` of a normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    // Field order matters: the derived ordering compares `exp` first.
    exp: Ordinal,
    coeff: Nat,
}

impl Term {
    pub fn exp(&self) -> &Ordinal {
        &self.exp
    }

    pub fn coeff(&self) -> &Nat {
        &self.coeff
    }
}

/// Ordinal below ε₀ in Cantor normal form.
///
/// The derived `Ord` is the ordinal order: term lists compare
/// lexicographically (exponent, then coefficient), and a proper prefix is
/// smaller. This is correct exactly because exponents strictly decrease.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordinal {
    terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrdError {
    #[error("left_subtract_omega needs an argument >= w, got {0}")]
    BelowOmega(Ordinal),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("zero coefficient in term")]
    ZeroCoefficient,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::finite(1u32)
    }

    pub fn omega() -> Self {
        Ordinal::monomial(Ordinal::one(), 1u32)
    }

    pub fn finite(n: impl Into<Nat>) -> Self {
        Ordinal::monomial(Ordinal::zero(), n)
    }

    /// `ω^exp · coeff`; a zero coefficient yields `0`.
    pub fn monomial(exp: Ordinal, coeff: impl Into<Nat>) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return Ordinal::zero();
        }
        Ordinal { terms: vec![Term { exp, coeff }] }
    }

    /// Ordinal sum of the given monomials, left to right.
    pub fn sum_of<I>(monomials: I) -> Self
    where
        I: IntoIterator<Item = (Ordinal, Nat)>,
    {
        monomials
            .into_iter()
            .fold(Ordinal::zero(), |acc, (e, c)| acc.add(&Ordinal::monomial(e, c)))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number when the ordinal is finite.
    pub fn as_finite(&self) -> Option<Nat> {
        match self.terms.as_slice() {
            [] => Some(Nat::zero()),
            [t] if t.exp.is_zero() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    /// Leading exponent, `None` for zero.
    pub fn leading_exp(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exp)
    }

    /// Ordinal addition. Terms of `self` below the leading exponent of
    /// `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut merged = None;
        for t in &self.terms {
            match t.exp.cmp(&lead.exp) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    merged = Some(&t.coeff);
                    break;
                }
                Ordering::Less => break,
            }
        }
        let mut rest = other.terms.iter();
        if let Some(c) = merged {
            rest.next();
            terms.push(Term { exp: lead.exp.clone(), coeff: c + &lead.coeff });
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// `ω^ω · self`: every exponent `β` becomes `ω + β`.
    pub fn mul_omega_omega(&self) -> Ordinal {
        let w = Ordinal::omega();
        Ordinal {
            terms: self
                .terms
                .iter()
                .map(|t| Term { exp: w.add(&t.exp), coeff: t.coeff.clone() })
                .collect(),
        }
    }

    /// `ω_0 = 1`, `ω_{n+1} = ω^{ω_n}`.
    pub fn omega_tower(n: usize) -> Ordinal {
        (0..n).fold(Ordinal::one(), |acc, _| Ordinal::monomial(acc, 1u32))
    }

    /// The unique `β` with `ω + β = self`; requires `self >= ω`.
    pub fn left_subtract_omega(&self) -> Result<Ordinal, OrdError> {
        let first = match self.terms.first() {
            Some(t) if !t.exp.is_zero() => t,
            _ => return Err(OrdError::BelowOmega(self.clone())),
        };
        if first.exp != Ordinal::one() {
            // Leading exponent >= 2 swallows a single ω.
            return Ok(self.clone());
        }
        let mut terms = self.terms.clone();
        if first.coeff.is_one() {
            terms.remove(0);
        } else {
            terms[0].coeff -= 1u32;
        }
        Ok(Ordinal { terms })
    }

    /// `C(α)`: the largest coefficient occurring anywhere in the term,
    /// exponents included; `C(0) = 0`.
    pub fn coeff_measure(&self) -> Nat {
        self.terms
            .iter()
            .map(|t| std::cmp::max(t.exp.coeff_measure(), t.coeff.clone()))
            .max()
            .unwrap_or_default()
    }

    /// Nesting depth: `0` for zero, `1 + depth(exp)` maximized over terms.
    pub fn depth(&self) -> usize {
        self.terms.iter().map(|t| 1 + t.exp.depth()).max().unwrap_or(0)
    }

    /// Total number of terms, counted hereditarily through exponents.
    pub fn size(&self) -> usize {
        self.terms.iter().map(|t| 1 + t.exp.size()).sum()
    }

    /// Ordinal sum of parsed terms; zero coefficients are rejected.
    fn from_normal_terms(terms: Vec<(Ordinal, Nat)>) -> Result<Ordinal, OrdError> {
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return Err(OrdError::ZeroCoefficient);
        }
        Ok(Ordinal::sum_of(terms))
    }
}

impl From<u32> for Ordinal {
    fn from(n: u32) -> Self {
        Ordinal::finite(n)
    }
}

impl From<Nat> for Ordinal {
    fn from(n: Nat) -> Self {
        Ordinal::finite(n)
    }
}

impl fmt::Display for Ordinal {
    /// Canonical fully-parenthesized form: `w^(e)*n`, `w^(e)` when `n = 1`,
    /// bare `n` for finite terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, t) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str("+")?;
            }
            if t.exp.is_zero() {
                write!(f, "{}", t.coeff)?;
            } else if t.coeff.is_one() {
                write!(f, "w^({})", t.exp)?;
            } else {
                write!(f, "w^({})*{}", t.exp, t.coeff)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = OrdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let ord = p.ordinal()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(ord)
    }
}

/// Grammar (whitespace-insensitive):
/// `ord ::= term ("+" term)*`, `term ::= NAT | "w" ["^" atom] ["*" NAT]`,
/// `atom ::= "(" ord ")" | "w" | NAT`.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> OrdError {
        OrdError::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), OrdError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn nat(&mut self) -> Result<Nat, OrdError> {
        self.skip_ws();
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

    fn ordinal(&mut self) -> Result<Ordinal, OrdError> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        if let [(e, c)] = terms.as_slice() {
            if e.is_zero() && c.is_zero() {
                return Ok(Ordinal::zero());
            }
        }
        Ordinal::from_normal_terms(terms).map_err(|e| match e {
            OrdError::ZeroCoefficient => self.error("zero coefficient"),
            other => other,
        })
    }

    fn term(&mut self) -> Result<(Ordinal, Nat), OrdError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.atom()?
                } else {
                    Ordinal::one()
                };
                let coeff = if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.nat()?
                } else {
                    Nat::one()
                };
                Ok((exp, coeff))
            }
            Some(b) if b.is_ascii_digit() => Ok((Ordinal::zero(), self.nat()?)),
            _ => Err(self.error("expected a term")),
        }
    }

    fn atom(&mut self) -> Result<Ordinal, OrdError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.ordinal()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(b) if b.is_ascii_digit() => Ok(Ordinal::finite(self.nat()?)),
            _ => Err(self.error("expected an exponent")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exp: Ordinal,
    #[serde(with = "natstr")]
    coeff: Nat,
}

#[derive(Serialize)]
struct TermWireRef<'a> {
    exp: &'a Ordinal,
    #[serde(with = "natstr")]
    coeff: &'a Nat,
}

impl Serialize for Ordinal {
    /// JSON: array of `{"exp": <ordinal>, "coeff": "<decimal>"}`; `[]` is zero.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|t| TermWireRef { exp: &t.exp, coeff: &t.coeff }))
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = Vec::<TermWire>::deserialize(d)?;
        let ord = Ordinal::from_normal_terms(wire.into_iter().map(|t| (t.exp, t.coeff)).collect())
            .map_err(serde::de::Error::custom)?;
        Ok(ord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn comparison_fixtures() {
        assert_eq!(o("w").cmp(&o("2")), Ordering::Greater);
        assert_eq!(o("w^w").cmp(&o("w*5+3")), Ordering::Greater);
        assert_eq!(o("w^2*3").cmp(&o("w^2*3")), Ordering::Equal);
        assert!(o("w^2+1") < o("w^2*2"));
        assert!(o("w^(w+1)") > o("w^w*100"));
        assert!(Ordinal::zero() < Ordinal::one());
    }

    #[test]
    fn coeff_measure_fixtures() {
        assert_eq!(Ordinal::zero().coeff_measure(), Nat::from(0u32));
        assert_eq!(o("w^(w*2)+3").coeff_measure(), Nat::from(3u32));
        assert_eq!(o("w").coeff_measure(), Nat::from(1u32));
        assert_eq!(o("w^(w*7)").coeff_measure(), Nat::from(7u32));
    }

    #[test]
    fn arithmetic_fixtures() {
        assert_eq!(o("w^2+3").add(&o("w")), o("w^2+w"));
        assert_eq!(o("w*2+1").mul_omega_omega(), o("w^(w+1)*2+w^w"));
        assert_eq!(Ordinal::omega_tower(0), o("1"));
        assert_eq!(Ordinal::omega_tower(2), o("w^w"));
        assert_eq!(o("w^w").left_subtract_omega().unwrap(), o("w^w"));
        assert_eq!(o("w*3+2").left_subtract_omega().unwrap(), o("w*2+2"));
        assert_eq!(o("w+4").left_subtract_omega().unwrap(), o("4"));
        assert!(matches!(o("7").left_subtract_omega(), Err(OrdError::BelowOmega(_))));
        assert!(o("0").left_subtract_omega().is_err());
    }

    #[test]
    fn add_merges_equal_leading_exponent() {
        assert_eq!(o("w^2*2+w").add(&o("w^2+5")), o("w^2*3+5"));
        assert_eq!(o("3").add(&o("4")), o("7"));
        assert_eq!(o("1").add(&o("w")), o("w"));
    }

    #[test]
    fn printer_is_fully_parenthesized() {
        assert_eq!(o("w^w+1").to_string(), "w^(w^(1))+1");
        assert_eq!(o("w*2+3").to_string(), "w^(1)*2+3");
        assert_eq!(Ordinal::zero().to_string(), "0");
        assert_eq!(o(" w ^ ( w * 2 ) + 3 ").to_string(), "w^(w^(1)*2)+3");
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert_eq!(
            "w^(".parse::<Ordinal>(),
            Err(OrdError::Parse { offset: 3, message: "expected a term".into() })
        );
        assert!(matches!("w*0".parse::<Ordinal>(), Err(OrdError::Parse { .. })));
        assert!(matches!("w+".parse::<Ordinal>(), Err(OrdError::Parse { offset: 2, .. })));
        assert!(matches!("2 x".parse::<Ordinal>(), Err(OrdError::Parse { offset: 2, .. })));
    }

    #[test]
    fn non_normal_sums_are_normalized_by_addition() {
        assert_eq!(o("1+w"), o("w"));
        assert_eq!(o("w+w^2"), o("w^2"));
        assert_eq!(o("w+w"), o("w*2"));
    }

    #[test]
    fn json_round_trip() {
        let a = o("w^(w+1)*2+w^2+7");
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<Ordinal>(&text).unwrap(), a);
        assert_eq!(serde_json::to_string(&Ordinal::zero()).unwrap(), "[]");
        assert_eq!(
            serde_json::to_string(&o("w+2")).unwrap(),
            r#"[{"exp":[{"exp":[],"coeff":"1"}],"coeff":"1"},{"exp":[],"coeff":"2"}]"#
        );
    }
}
