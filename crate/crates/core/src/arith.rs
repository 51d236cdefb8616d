//! Ordinal arithmetic on Brouwer trees: addition, multiplication,
//! exponentiation, and the two rounding maps.
//!
//! Each operation recurses on the right argument's structure, handling
//! successor chains iteratively (so towers like `x + 5000` never deepen the
//! call stack) and limits lazily. Exact normal-form annotations propagate
//! whenever both inputs carry them, so arithmetic on embedded normal forms
//! stays transparent to the comparison engine.

use crate::cnf::{cnf_add, cnf_mul, cnf_pow};
use crate::ordinal::{Classification, FinitenessResult, Ordinal, OrdinalSeq};

/// The decomposition `x = limit_part + finite_part` computed by [`split`]:
/// the unique way to write an ordinal as a zero-or-limit plus a natural.
#[derive(Debug, Clone)]
pub struct SplitResult {
    pub limit_part: Ordinal,
    pub finite_part: u64,
}

/// Split `x` into its zero-or-limit base and the length of the successor
/// chain on top. The base is the same node `x` was built from, so sharing
/// (and any annotation) survives.
pub fn split(x: &Ordinal) -> SplitResult {
    let (limit_part, finite_part) = x.peel_succs();
    SplitResult { limit_part, finite_part }
}

/// Ordinal addition `a + b`.
pub fn add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    if matches!(a.classify(), Classification::IsZero) {
        // 0 + b = b, sharing b's nodes (and annotation) unchanged.
        return b.clone();
    }
    let (base, k) = b.peel_succs();
    let core = match base.classify() {
        Classification::IsZero => a.clone(),
        Classification::IsLim(g) => {
            // a + lim g = lim (n -> a + g n); left addition is strictly
            // monotone above each element, so strictness is preserved.
            let a2 = a.clone();
            let seq = OrdinalSeq::new(move |n| add(&a2, &g.get(n)));
            match (a.annotation(), base.annotation()) {
                (Some(x), Some(y)) => Ordinal::limit_annotated(seq, cnf_add(&x, &y)),
                _ => Ordinal::limit(seq),
            }
        }
        Classification::IsSucc(_) => unreachable!("peel_succs returns zero or limit"),
    };
    let mut out = core;
    for _ in 0..k {
        out = out.succ();
    }
    out
}

/// Ordinal multiplication `a * b`.
pub fn mul(a: &Ordinal, b: &Ordinal) -> Ordinal {
    if matches!(a.classify(), Classification::IsZero) {
        return Ordinal::zero();
    }
    let (base, k) = b.peel_succs();
    let core = match base.classify() {
        Classification::IsZero => Ordinal::zero(),
        Classification::IsLim(g) => {
            // a * lim g = lim (n -> a * g n); multiplication by a nonzero
            // left factor is strictly monotone, so the sequence stays strict.
            let a2 = a.clone();
            let seq = OrdinalSeq::new(move |n| mul(&a2, &g.get(n)));
            match (a.annotation(), base.annotation()) {
                (Some(x), Some(y)) => Ordinal::limit_annotated(seq, cnf_mul(&x, &y)),
                _ => Ordinal::limit(seq),
            }
        }
        Classification::IsSucc(_) => unreachable!("peel_succs returns zero or limit"),
    };
    // a * (beta + k) = a * beta + a * k.
    let mut out = core;
    for _ in 0..k {
        out = add(&out, a);
    }
    out
}

/// Ordinal exponentiation `a ^ b`.
pub fn exp(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let (base, k) = b.peel_succs();
    if matches!(a.classify(), Classification::IsZero) {
        // 0^0 = 1, and 0 to any positive power is 0.
        return if k == 0 && matches!(base.classify(), Classification::IsZero) {
            Ordinal::from_nat(1)
        } else {
            Ordinal::zero()
        };
    }
    if a.decide_finite() == FinitenessResult::Finite(1) {
        return Ordinal::from_nat(1);
    }
    let core = match base.classify() {
        Classification::IsZero => Ordinal::from_nat(1),
        Classification::IsLim(g) => {
            // a >= 2 here, so exponentials in the exponent stay strict.
            let a2 = a.clone();
            let seq = OrdinalSeq::new(move |n| exp(&a2, &g.get(n)));
            match (a.annotation(), base.annotation()) {
                (Some(x), Some(y)) => Ordinal::limit_annotated(seq, cnf_pow(&x, &y)),
                _ => Ordinal::limit(seq),
            }
        }
        Classification::IsSucc(_) => unreachable!("peel_succs returns zero or limit"),
    };
    // a ^ (beta + k) = a ^ beta * a^k.
    let mut out = core;
    for _ in 0..k {
        out = mul(&out, a);
    }
    out
}

/// Round up: zero and limits are fixed; a successor rises to the nearest
/// limit strictly above it (`base + w`, where `base` is the tree under the
/// successor chain).
pub fn round_up(x: &Ordinal) -> Ordinal {
    let (base, k) = x.peel_succs();
    if k == 0 {
        x.clone()
    } else {
        add(&base, &Ordinal::omega())
    }
}

/// Round down: strip the successor chain, leaving zero or a limit.
pub fn round_down(x: &Ordinal) -> Ordinal {
    x.peel_succs().0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{cnf_pow, embed, CnfForm};
    use crate::engine::{bisim, check_strict_increase_prefix, leq, Fuel};
    use crate::ordinal::StripCache;
    use proptest::prelude::*;

    fn c(s: &str) -> CnfForm {
        CnfForm::parse(s).unwrap()
    }

    fn emb(s: &str) -> Ordinal {
        embed(&c(s))
    }

    fn ann(x: &Ordinal) -> CnfForm {
        x.annotation().expect("operation should have propagated an annotation")
    }

    #[test]
    fn addition_examples() {
        assert_eq!(ann(&add(&Ordinal::from_nat(1), &emb("w"))), c("w"));
        assert_eq!(ann(&add(&emb("w"), &Ordinal::from_nat(1))), c("w+1"));
        assert_eq!(ann(&add(&emb("w+2"), &emb("w*2+1"))), c("w*3+1"));
        assert_eq!(ann(&add(&emb("w^2+w"), &emb("w"))), c("w^2+w*2"));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(ann(&mul(&Ordinal::from_nat(2), &emb("w"))), c("w"));
        assert_eq!(ann(&mul(&emb("w"), &Ordinal::from_nat(2))), c("w*2"));
        assert_eq!(ann(&mul(&emb("w+1"), &Ordinal::from_nat(2))), c("w*2+1"));
        assert_eq!(ann(&mul(&emb("w+1"), &emb("w"))), c("w^2"));
        assert!(matches!(
            mul(&Ordinal::zero(), &emb("w")).classify(),
            Classification::IsZero
        ));
        assert!(matches!(
            mul(&emb("w"), &Ordinal::zero()).classify(),
            Classification::IsZero
        ));
    }

    #[test]
    fn exponentiation_examples() {
        assert_eq!(ann(&exp(&Ordinal::from_nat(2), &emb("w"))), c("w"));
        assert_eq!(ann(&exp(&Ordinal::from_nat(2), &emb("w+2"))), c("w*4"));
        assert_eq!(ann(&exp(&emb("w+1"), &Ordinal::from_nat(2))), c("w^2+w+1"));
        assert_eq!(ann(&exp(&emb("w+1"), &emb("w"))), c("w^w"));
        assert_eq!(ann(&exp(&Ordinal::from_nat(3), &emb("w^2"))), c("w^w"));
        assert_eq!(ann(&exp(&Ordinal::from_nat(2), &emb("w*2+3"))), c("w^2*8"));
        assert_eq!(ann(&exp(&emb("w"), &Ordinal::zero())), c("1"));
        assert_eq!(ann(&exp(&Ordinal::from_nat(1), &emb("w^3"))), c("1"));
        assert!(matches!(
            exp(&Ordinal::zero(), &emb("w")).classify(),
            Classification::IsZero
        ));
    }

    #[test]
    fn rounding_examples() {
        assert_eq!(ann(&round_up(&emb("w+3"))), c("w*2"));
        assert_eq!(ann(&round_up(&Ordinal::from_nat(3))), c("w"));
        assert!(Ordinal::ptr_eq(&round_up(&emb("w*2")), &emb("w*2")));
        assert!(Ordinal::ptr_eq(&round_up(&Ordinal::zero()), &Ordinal::zero()));
        assert_eq!(ann(&round_down(&emb("w^2+w+9"))), c("w^2+w"));
        assert!(matches!(
            round_down(&Ordinal::from_nat(17)).classify(),
            Classification::IsZero
        ));
    }

    #[test]
    fn limit_elements_are_the_expected_values() {
        // (w+1) * w = lim (n -> (w+1) * n); element 3 is w*3+1.
        let prod = mul(&emb("w+1"), &emb("w"));
        match prod.classify() {
            Classification::IsLim(seq) => {
                assert_eq!(ann(&seq.get(3)), c("w*3+1"));
            }
            _ => panic!("expected a limit"),
        }
    }

    #[test]
    fn stripped_addition_shares_left_argument() {
        let cache = StripCache::new();
        let w = emb("w").strip_annotations(&cache);
        let one = Ordinal::from_nat(1).strip_annotations(&cache);
        // x <= x + 1 is visible structurally through the shared node.
        let sum = add(&w, &one);
        assert!(leq(&w, &sum, Fuel(100)).is_proven());
        assert!(leq(&sum, &w, Fuel(100)).is_refuted());
    }

    #[test]
    fn adding_to_zero_shares_the_right_argument() {
        let w = emb("w^2+3");
        assert!(Ordinal::ptr_eq(&add(&Ordinal::zero(), &w), &w));
    }

    #[test]
    fn split_round_trips_and_shares() {
        let x = emb("w^2+w+9");
        let parts = split(&x);
        assert_eq!(parts.finite_part, 9);
        assert_eq!(ann(&parts.limit_part), c("w^2+w"));
        assert!(Ordinal::ptr_eq(&parts.limit_part, &round_down(&x)));
        let rebuilt = add(&parts.limit_part, &Ordinal::from_nat(parts.finite_part));
        assert!(bisim(&rebuilt, &x, Fuel(100)).is_proven());

        let z = split(&Ordinal::from_nat(4));
        assert_eq!(z.finite_part, 4);
        assert!(matches!(z.limit_part.classify(), Classification::IsZero));
    }

    #[test]
    fn arithmetic_agrees_with_engine_bisimulation() {
        let lhs = add(&emb("w+2"), &emb("w*2+1"));
        assert!(bisim(&lhs, &emb("w*3+1"), Fuel(100)).is_proven());
        let lhs = exp(&Ordinal::from_nat(2), &emb("w+2"));
        assert!(bisim(&lhs, &emb("w*4"), Fuel(100)).is_proven());
    }

    fn arb_cnf() -> impl Strategy<Value = CnfForm> {
        (
            proptest::option::of(1u64..=3),
            proptest::option::of(1u64..=3),
            proptest::option::of(0u64..=3),
        )
            .prop_map(|(c2, c1, c0)| {
                let mut terms = Vec::new();
                if let Some(c) = c2 {
                    terms.push((CnfForm::nat(2), c));
                }
                if let Some(c) = c1 {
                    terms.push((CnfForm::nat(1), c));
                }
                if let Some(c) = c0 {
                    if c > 0 {
                        terms.push((CnfForm::zero(), c));
                    }
                }
                CnfForm::from_terms(terms).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        // Tree arithmetic and normal-form arithmetic compute the same values.
        #[test]
        fn annotations_track_the_oracle(a in arb_cnf(), b in arb_cnf()) {
            prop_assert_eq!(ann(&add(&embed(&a), &embed(&b))), cnf_add(&a, &b));
            prop_assert_eq!(ann(&mul(&embed(&a), &embed(&b))), cnf_mul(&a, &b));
        }

        #[test]
        fn rounding_tracks_the_oracle(a in arb_cnf()) {
            prop_assert_eq!(ann(&round_up(&embed(&a))), a.round_up());
            prop_assert_eq!(ann(&round_down(&embed(&a))), a.round_down());
        }

        // Rounding brackets its argument: down <= x <= up.
        #[test]
        fn rounding_brackets_the_value(a in arb_cnf()) {
            let x = embed(&a);
            prop_assert!(leq(&round_down(&x), &x, Fuel(100)).is_proven());
            prop_assert!(leq(&x, &round_up(&x), Fuel(100)).is_proven());
        }

        // Rounding is monotone: x <= y gives down x <= down y and
        // up x <= up y.
        #[test]
        fn rounding_is_monotone(a in arb_cnf(), b in arb_cnf()) {
            use std::cmp::Ordering;
            let (lo, hi) = if crate::cnf::cnf_compare(&a, &b) == Ordering::Greater {
                (b, a)
            } else {
                (a, b)
            };
            let (x, y) = (embed(&lo), embed(&hi));
            prop_assert!(leq(&round_down(&x), &round_down(&y), Fuel(100)).is_proven());
            prop_assert!(leq(&round_up(&x), &round_up(&y), Fuel(100)).is_proven());
        }

        // Exponentials with base w agree with the normal-form oracle for
        // exponents below w^2.
        #[test]
        fn omega_powers_track_the_oracle(c1 in 0u64..=3, c0 in 0u64..=3) {
            let mut terms = Vec::new();
            if c1 > 0 {
                terms.push((CnfForm::nat(1), c1));
            }
            if c0 > 0 {
                terms.push((CnfForm::zero(), c0));
            }
            let b = CnfForm::from_terms(terms).unwrap();
            let lhs = exp(&emb("w"), &embed(&b));
            let rhs = embed(&cnf_pow(&c("w"), &b));
            prop_assert!(bisim(&lhs, &rhs, Fuel(1000)).is_proven());
        }

        // Every limit produced by arithmetic exposes a strictly increasing
        // sequence on its checked prefix.
        #[test]
        fn produced_limits_increase_strictly(a in arb_cnf()) {
            let w = emb("w");
            let prods = [add(&embed(&a), &w), mul(&add(&embed(&a), &Ordinal::from_nat(1)), &w)];
            for p in &prods {
                if let Classification::IsLim(seq) = p.classify() {
                    prop_assert!(
                        check_strict_increase_prefix(&seq, 16, Fuel(10_000)).is_proven()
                    );
                }
            }
        }
    }
}
