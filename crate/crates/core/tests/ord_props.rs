mod common;

use std::cmp::Ordering;

use grz_core::correspond::{in_d, o_map, Coding, Membership};
use grz_core::{Nat, Ordinal};

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn sample() -> Vec<Ordinal> {
    let depth1 = common::sums_over(&[Ordinal::zero()], 3, 1);
    let depth2 = common::sums_over(&depth1, 2, 2);
    common::sums_over(&depth2, 2, 2)
}

#[test]
fn enumeration_has_expected_shape() {
    let all = common::small_ordinals(1);
    assert!(all.iter().all(|a| a.depth() <= 3 && a.coeff_measure() <= Nat::from(1u32)));
    assert!(all.contains(&o("w^(w+1)+w^w")));
    assert!(all.contains(&Ordinal::zero()));
}

#[test]
fn order_is_total_and_transitive() {
    let s = sample();
    for a in &s {
        for b in &s {
            assert_eq!(a.cmp(b), b.cmp(a).reverse());
            assert_eq!(a.cmp(b) == Ordering::Equal, a == b);
        }
    }
    let mut sorted = s.clone();
    sorted.sort();
    for w in sorted.windows(3) {
        assert!(w[0] <= w[1] && w[1] <= w[2] && w[0] <= w[2]);
    }
    assert!(o("w") > o("2"));
    assert!(o("w^w") > o("w*5+3"));
    assert_eq!(o("w^2*3").cmp(&o("w^2*3")), Ordering::Equal);
}

#[test]
fn addition_laws() {
    let s: Vec<Ordinal> = sample().into_iter().step_by(7).collect();
    for a in &s {
        assert_eq!(&a.add(&Ordinal::zero()), a);
        assert_eq!(&Ordinal::zero().add(a), a);
        for b in &s {
            let ab = a.add(b);
            assert!(a <= &ab, "{a} + {b} = {ab}");
            for c in s.iter().step_by(5) {
                assert_eq!(ab.add(c), a.add(&b.add(c)), "({a} + {b}) + {c}");
            }
        }
    }
    assert_eq!(o("w^2+3").add(&o("w")), o("w^2+w"));
}

#[test]
fn lifting_preserves_order_and_bounds_coefficients() {
    let mut s = sample();
    s.sort();
    let lifted: Vec<Ordinal> = s.iter().map(Ordinal::mul_omega_omega).collect();
    for (w, l) in s.windows(2).zip(lifted.windows(2)) {
        assert!(w[0] < w[1] && l[0] < l[1], "{} < {}", w[0], w[1]);
    }
    for (a, l) in s.iter().zip(&lifted) {
        let (ca, cl) = (a.coeff_measure(), l.coeff_measure());
        if a.is_zero() {
            assert!(l.is_zero());
        } else {
            assert!(std::cmp::max(ca.clone(), Nat::from(1u32)) <= cl && cl <= &ca + 1u32, "{a} -> {l}");
        }
    }
    assert_eq!(o("w*2+1").mul_omega_omega(), o("w^(w+1)*2+w^w"));
    // The exponent w*2 becomes w*3, one above C(a).
    assert_eq!(o("w^(w*2)").mul_omega_omega(), o("w^(w*3)"));
    assert_eq!(o("w^(w*2)").mul_omega_omega().coeff_measure(), Nat::from(3u32));
}

#[test]
fn left_subtraction_inverts_omega_prefix() {
    for e in sample().into_iter().filter(|e| e >= &Ordinal::omega()) {
        let beta = e.left_subtract_omega().unwrap();
        assert_eq!(Ordinal::omega().add(&beta), e);
    }
    assert_eq!(o("w^w").left_subtract_omega().unwrap(), o("w^w"));
    assert!(o("5").left_subtract_omega().is_err());
}

#[test]
fn text_and_json_round_trip_on_the_grid() {
    for a in sample() {
        let text = a.to_string();
        assert_eq!(text.parse::<Ordinal>().unwrap(), a, "{text}");
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<Ordinal>(&json).unwrap(), a, "{json}");
    }
    assert_eq!(o(" w ^ ( w * 2 ) + 3 ").coeff_measure(), Nat::from(3u32));
}

#[test]
fn coefficient_bounded_ordinals_are_members() {
    let cap = Nat::from(1000u32);
    for k in 2..=4u64 {
        let kn = Nat::from(k);
        let all = common::small_ordinals(k - 1);
        for a in all.iter().filter(|a| a.size() <= 200) {
            let m = in_d(a, &kn, Coding::Repaired, &cap).unwrap();
            assert!(m.is_member(), "k={k}: {a} rejected: {m:?}");
        }
    }
}

#[test]
fn membership_agrees_with_enumeration() {
    const TOP: u64 = 10_000;
    let cap = Nat::from(TOP);
    for k in 2..=3u64 {
        let kn = Nat::from(k);
        let image: Vec<Ordinal> = (k..=TOP).map(|x| o_map(&Nat::from(x), &kn, Coding::Repaired).unwrap()).collect();
        let set: std::collections::BTreeSet<&Ordinal> = image.iter().collect();
        let mut probes: Vec<Ordinal> = image.iter().step_by(13).cloned().collect();
        // Perturb each sample by adding w^e for small e, which often leaves D_k.
        for a in image.iter().step_by(97) {
            for e in ["0", "1", "2", "w", "w+1"] {
                probes.push(a.add(&Ordinal::monomial(o(e), 1u32)));
            }
        }
        for p in &probes {
            match in_d(p, &kn, Coding::Repaired, &cap).unwrap() {
                Membership::Member { value, .. } => match value.exact() {
                    Some(x) => {
                        let idx = usize::try_from(x - &kn).unwrap();
                        assert_eq!(&image[idx], p, "k={k}: {p} decoded to {x}");
                    }
                    None => assert!(!set.contains(p), "k={k}: {p} is in range but decoded above it"),
                },
                Membership::NonMember { reason } => assert!(!set.contains(p), "k={k}: {p} rejected: {reason}"),
            }
        }
    }
}
