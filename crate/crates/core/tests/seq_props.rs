mod common;

use grz_core::seq::{run, shadow_check, Outcome};
use grz_core::slowdown::{compress, parse_chain_file, verify_slow, Chain, SlowdownError};
use grz_core::{BoundedNat, Nat, Ordinal};

fn n(v: u64) -> Nat {
    Nat::from(v)
}

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

#[test]
fn hereditary_trace_dominates_plain() {
    let cap = n(10_000_000);
    for z in 0..=7u64 {
        let plain = run(&n(z), false, &cap, 10_000, false);
        let here = run(&n(z), true, &cap, 10_000, false);
        assert!(here.steps.len() >= plain.steps.len(), "z={z}");
        for (p, h) in plain.steps.iter().zip(&here.steps) {
            if let (BoundedNat::Exact(p), BoundedNat::Exact(h)) = (&p.value, &h.value) {
                assert!(h >= p, "z={z} k: hereditary {h} below plain {p}");
            }
        }
        let r = shadow_check(&run(&n(z), true, &cap, 10_000, true));
        assert!(r.passed(), "hereditary z={z}: {r}");
    }
}

#[test]
fn hereditary_lengths_are_pinned() {
    let cap = n(10_000_000);
    let at = |z: u64, h: bool| match run(&n(z), h, &cap, 10_000, false).outcome {
        Outcome::Terminated { at } => at,
        other => panic!("z={z}: {other:?}"),
    };
    let plain: Vec<u64> = (0..=7).map(|z| at(z, false)).collect();
    let here: Vec<u64> = (0..=7).map(|z| at(z, true)).collect();
    assert_eq!(plain, vec![0, 1, 3, 5, 9, 13, 17, 21]);
    assert_eq!(here, vec![0, 1, 3, 5, 9, 13, 21, 29]);
}

fn overflow_at(o: &Outcome) -> Option<u64> {
    match o {
        Outcome::OverflowedCap { at, .. } => Some(*at),
        _ => None,
    }
}

#[test]
fn overflow_is_honest_under_a_larger_cap() {
    let mut overflowed = 0;
    for hereditary in [false, true] {
        for z in 2..=16u64 {
            for cap in [5u64, 10, 50, 100, 1000, 10_000, 100_000] {
                let small = run(&n(z), hereditary, &n(cap), 10_000, false);
                let Some(at) = overflow_at(&small.outcome) else { continue };
                overflowed += 1;
                let big = run(&n(z), hereditary, &n(cap * 10), 10_000, false);
                let at = at as usize;
                for (a, b) in small.steps[..at].iter().zip(&big.steps) {
                    assert_eq!(a.value, b.value, "z={z} cap={cap} k={}", a.k);
                }
                match big.outcome {
                    Outcome::Terminated { at: end } => assert!(end as usize > at, "z={z} cap={cap}"),
                    Outcome::OverflowedCap { at: later, .. } => assert!(later as usize >= at, "z={z} cap={cap}"),
                    Outcome::StepLimit { .. } => {}
                }
            }
        }
    }
    assert!(overflowed > 20);
}

#[test]
fn overflow_records_the_offending_shift() {
    let t = run(&n(9), false, &n(10_000_000), 100, false);
    match t.outcome {
        Outcome::OverflowedCap { at: 1, shifted: Some(r) } => assert_eq!(r.to_string(), "[(3,1),(0,1)]_3"),
        other => panic!("{other:?}"),
    }
}

fn bound_holds(measures: &[u128], n: u32) -> bool {
    measures.windows(2).enumerate().all(|(k, w)| {
        let base = std::cmp::max(k as u128, 2);
        common::f(n, base, w[1]).is_none_or(|v| v >= w[1])
    })
}

#[test]
fn bound_check_rejection_is_exact() {
    let chains = [
        "w^(w^w)\n10\n0",
        "w*6\nw*5\n0",
        "w^w*2\nw^9\nw^3*4\n20\n0",
        "w^2\nw*8\nw*7\n9\n0",
        "w^(w*2)\nw^w*3\n65\n64\n0",
    ];
    for text in chains {
        let entries = parse_chain_file(text).unwrap();
        let measures: Vec<u128> = entries.iter().map(|e| u128::try_from(&e.coeff_measure()).unwrap()).collect();
        let chain = Chain::new(entries).unwrap();
        for nn in 1..=3u32 {
            let got = compress(&chain, nn as usize, &n(3));
            match got {
                Ok(s) => {
                    assert!(bound_holds(&measures, nn), "{text:?} n={nn} accepted");
                    let r = verify_slow(&s.entries);
                    assert!(r.passed(), "{text:?} n={nn}: {r}");
                }
                Err(SlowdownError::BoundFails { .. }) => assert!(!bound_holds(&measures, nn), "{text:?} n={nn}"),
                Err(e) => panic!("{text:?}: {e}"),
            }
        }
    }
}

#[test]
fn small_constant_breaks_the_bound() {
    // g_3 puts the exponent 3 into the tail, so c = 1 leaves index 1 too heavy.
    let chain = Chain::new(vec![o("w"), o("2"), o("0")]).unwrap();
    let s = compress(&chain, 3, &n(1)).unwrap();
    assert!(!verify_slow(&s.entries).passed());
    assert!(verify_slow(&compress(&chain, 3, &n(3)).unwrap().entries).passed());
}

#[test]
fn slow_chain_json_round_trip() {
    let chain = Chain::new(vec![o("w*2"), o("w"), o("1"), o("0")]).unwrap();
    let s = compress(&chain, 2, &n(2)).unwrap();
    let json = serde_json::to_string(&s).unwrap();
    assert_eq!(serde_json::from_str::<grz_core::slowdown::SlowChain>(&json).unwrap(), s);
    let chain_json = serde_json::to_string(&chain).unwrap();
    assert_eq!(serde_json::from_str::<Chain>(&chain_json).unwrap(), chain);
    assert!(serde_json::from_str::<Chain>("[[{\"exp\":[],\"coeff\":\"1\"}],[{\"exp\":[],\"coeff\":\"1\"}]]").is_err());
}
