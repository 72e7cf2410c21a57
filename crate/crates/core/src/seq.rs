//! Grzegorczyk sequences.
//!
//! Starting from `z_0`, step `k` works in base `2 + k`: a value below the base
//! counts down by one, anything else is shifted to base `3 + k` and then
//! decremented. The hereditary variant shifts with [`shift_total_value`].
//! Traces stop at `0`, at the cap, or at the step limit.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::correspond::{in_d, l_inverse, o_map, q_pred, Coding, Membership};
use crate::eval::{BoundedNat, Nat};
use crate::frep::{encode, shift_rep, shift_total_value, shift_value, to_total, Rep};
use crate::ord::Ordinal;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// `value >= base`; the value has an F-representation.
    Representation,
    /// `0 < value < base`.
    Countdown,
    Overflow,
    Done,
}

impl Phase {
    pub fn label(self) -> &'static str {
        match self {
            Phase::Representation => "REPR",
            Phase::Countdown => "COUNTDOWN",
            Phase::Overflow => "OVERFLOW",
            Phase::Done => "DONE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub k: u64,
    pub base: u64,
    pub value: BoundedNat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<Rep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shadow: Option<Ordinal>,
    pub phase: Phase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Terminated { at: u64 },
    /// The shift out of step `at - 1` passed the cap. `shifted` is that
    /// shift written in the new base, before the decrement, when its
    /// exponents themselves fit under the cap.
    OverflowedCap {
        at: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shifted: Option<Rep>,
    },
    StepLimit { at: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    #[serde(with = "crate::natstr")]
    pub start: Nat,
    pub hereditary: bool,
    #[serde(with = "crate::natstr")]
    pub cap: Nat,
    pub steps: Vec<TraceStep>,
    pub outcome: Outcome,
}

impl Trace {
    /// Exact values in step order, up to the first overflow.
    pub fn values(&self) -> Vec<Nat> {
        self.steps.iter().map_while(|s| s.value.exact().cloned()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("chain is not strictly descending at index {at}")]
    NotDescending { at: usize },
    #[error("chain entry {at} is not in D_{base}: {reason}")]
    NotInD { at: usize, base: u64, reason: String },
}

fn base_of(k: u64) -> Nat {
    Nat::from(k) + 2u32
}

/// The value at step `k + 1` given the value `v` at step `k`.
pub fn next_step(v: &Nat, k: u64, hereditary: bool, cap: &Nat) -> BoundedNat {
    let base = base_of(k);
    if v < &base {
        return BoundedNat::Exact(if v.is_zero() { Nat::zero() } else { v - 1u32 });
    }
    // One past the cap so that a shift landing at cap + 1 still decrements
    // to an exact value.
    let shift_cap = cap + 1u32;
    let to = &base + 1u32;
    let shifted = if hereditary {
        shift_total_value(v, &base, &to, &shift_cap)
    } else {
        shift_value(v, &base, &to, &shift_cap)
    }
    .expect("bases are at least 2");
    match shifted {
        BoundedNat::Exact(s) => BoundedNat::bounded(s - 1u32, cap),
        BoundedNat::ExceedsCap(_) => BoundedNat::ExceedsCap(cap.clone()),
    }
}

fn make_step(k: u64, value: BoundedNat, hereditary: bool, with_shadow: bool) -> TraceStep {
    let base = base_of(k);
    let (phase, rep, shadow) = match &value {
        BoundedNat::ExceedsCap(_) => (Phase::Overflow, None, None),
        BoundedNat::Exact(v) if v.is_zero() => (Phase::Done, None, None),
        BoundedNat::Exact(v) if v < &base => (Phase::Countdown, None, None),
        BoundedNat::Exact(v) => {
            let rep = if hereditary {
                Rep::Total(to_total(v, &base).expect("base >= 2"))
            } else {
                Rep::Plain(encode(v, &base).expect("base >= 2"))
            };
            let shadow = with_shadow.then(|| o_map(v, &base, Coding::Repaired).expect("v >= base"));
            (Phase::Representation, Some(rep), shadow)
        }
    };
    TraceStep { k, base: k + 2, value, rep, shadow, phase }
}

fn overflow_description(v: &Nat, k: u64, hereditary: bool, cap: &Nat) -> Option<Rep> {
    let base = base_of(k);
    let to = &base + 1u32;
    if hereditary {
        Some(Rep::Total(to_total(v, &base).ok()?.rebase(&to)))
    } else {
        shift_rep(v, &base, &to, cap).ok().flatten().map(Rep::Plain)
    }
}

/// Runs the sequence from `z` for at most `max_steps` transitions.
pub fn run(z: &Nat, hereditary: bool, cap: &Nat, max_steps: u64, with_shadow: bool) -> Trace {
    let mut steps = Vec::new();
    let mut value = BoundedNat::bounded(z.clone(), cap);
    let mut k = 0u64;
    let outcome = loop {
        let step = make_step(k, value, hereditary, with_shadow);
        let phase = step.phase;
        steps.push(step);
        match phase {
            Phase::Done => break Outcome::Terminated { at: k },
            Phase::Overflow => {
                let shifted = match k.checked_sub(1).map(|j| (j, &steps[j as usize].value)) {
                    Some((j, BoundedNat::Exact(prev))) => overflow_description(prev, j, hereditary, cap),
                    _ => None,
                };
                break Outcome::OverflowedCap { at: k, shifted };
            }
            _ if k >= max_steps => break Outcome::StepLimit { at: k },
            _ => {}
        }
        let v = steps[k as usize].value.exact().expect("not overflowed").clone();
        value = next_step(&v, k, hereditary, cap);
        k += 1;
    };
    Trace { start: z.clone(), hereditary, cap: cap.clone(), steps, outcome }
}

/// Checks a trace against the ordinal picture of its termination argument.
///
/// Every step must be consistent with its value and follow from the previous
/// one under [`next_step`]. For each Representation step the shadow must
/// equal `o_{2+k}(z_k)` and lie in `D_{2+k}` with preimage `z_k`. For each
/// consecutive pair of Representation steps of a plain trace the shadows must
/// strictly decrease, and `o_{3+k}(z_{k+1})` must equal
/// `Q_{3+k}(o_{2+k}(z_k))` when `L_{3+k}` of the latter fits under the cap.
/// Hereditary traces shift counts as well, so the descent clauses are
/// skipped for them.
pub fn shadow_check(t: &Trace) -> Report {
    let mut report = Report::default();
    let mut prev: Option<(u64, Ordinal)> = None;
    for (idx, step) in t.steps.iter().enumerate() {
        let k = step.k;
        report.check(k == idx as u64 && step.base == k + 2, || {
            format!("step {idx} is labelled k={k} base={}", step.base)
        });
        if idx > 0 {
            if let BoundedNat::Exact(pv) = &t.steps[idx - 1].value {
                let want = next_step(pv, idx as u64 - 1, t.hereditary, &t.cap);
                report.check(want == step.value, || {
                    format!("step {k}: value {} does not follow from {pv} (expected {want})", step.value)
                });
            }
        }
        let base = base_of(k);
        let phase = match &step.value {
            BoundedNat::ExceedsCap(_) => Phase::Overflow,
            BoundedNat::Exact(v) if v.is_zero() => Phase::Done,
            BoundedNat::Exact(v) if v < &base => Phase::Countdown,
            BoundedNat::Exact(_) => Phase::Representation,
        };
        report.check(phase == step.phase, || {
            format!("step {k}: phase {:?} does not match value {}", step.phase, step.value)
        });
        let (BoundedNat::Exact(v), Phase::Representation) = (&step.value, phase) else {
            report.check(step.shadow.is_none(), || format!("step {k}: shadow outside the representation phase"));
            prev = None;
            continue;
        };
        let shadow = o_map(v, &base, Coding::Repaired).expect("v >= base");
        match &step.shadow {
            Some(s) => report.check(s == &shadow, || format!("step {k}: recorded shadow {s}, expected {shadow}")),
            None => report.note(format!("step {k}: no recorded shadow, recomputed")),
        }
        let membership = in_d(&shadow, &base, Coding::Repaired, &t.cap).expect("repaired coding");
        report.check(
            matches!(&membership, Membership::Member { value: BoundedNat::Exact(x), .. } if x == v),
            || format!("step {k}: shadow {shadow} does not decode back to {v}: {membership:?}"),
        );
        if let Some((pk, ps)) = prev.take().filter(|_| !t.hereditary) {
            report.check(shadow < ps, || format!("steps {pk}->{k}: shadow {shadow} is not below {ps}"));
            match q_pred(&ps, &base, Coding::Repaired, &t.cap) {
                Ok(q) => report.check(q == shadow, || {
                    format!("steps {pk}->{k}: Q_{base}({ps}) = {q} but shadow is {shadow}")
                }),
                Err(e) => report.note(format!("steps {pk}->{k}: predecessor not checked ({e})")),
            }
        }
        prev = Some((k, shadow));
    }
    if t.hereditary {
        report.note("hereditary trace: descent clauses skipped");
    }
    report
}

/// Checks that a descending chain `γ_k ∈ D_{2+k}` is dominated by the plain
/// sequence started at `v_0 = L_2(γ_0)`: `v_k = L_{2+k}(γ_k) ≤ z_k` wherever
/// both are under the cap.
pub fn dominate_check(gammas: &[Ordinal], cap: &Nat) -> Result<Report, SeqError> {
    if let Some(at) = gammas.windows(2).position(|w| w[1] >= w[0]) {
        return Err(SeqError::NotDescending { at: at + 1 });
    }
    let mut vs = Vec::with_capacity(gammas.len());
    for (at, gamma) in gammas.iter().enumerate() {
        let base = base_of(at as u64);
        match l_inverse(gamma, &base, Coding::Repaired, cap) {
            Ok(v) => vs.push(v),
            Err(e) => {
                return Err(SeqError::NotInD { at, base: at as u64 + 2, reason: e.to_string() });
            }
        }
    }
    let mut report = Report::default();
    let Some(BoundedNat::Exact(v0)) = vs.first() else {
        if !vs.is_empty() {
            report.note("v_0 exceeds the cap; nothing to compare");
        }
        return Ok(report);
    };
    let trace = run(v0, false, cap, vs.len() as u64 - 1, false);
    for (k, v) in vs.iter().enumerate() {
        let Some(step) = trace.steps.get(k) else {
            report.check(false, || format!("sequence reached 0 before chain index {k}"));
            break;
        };
        match (v, &step.value) {
            (BoundedNat::Exact(v), BoundedNat::Exact(z)) => {
                report.check(v <= z, || format!("k={k}: v_k = {v} exceeds z_k = {z}"))
            }
            (_, BoundedNat::ExceedsCap(_)) => {
                report.note(format!("z_{k} exceeds the cap; stopped comparing"));
                break;
            }
            (BoundedNat::ExceedsCap(_), _) => {
                report.note(format!("v_{k} exceeds the cap; skipped"));
            }
        }
    }
    Ok(report)
}
