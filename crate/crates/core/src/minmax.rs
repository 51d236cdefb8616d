//! Minimum and maximum across limits.
//!
//! Exact minima and maxima of arbitrary tree pairs would require deciding
//! comparisons, which fuel-free constructions cannot do. Rounding saves the
//! day: on zero-or-limit inputs, min and max ARE computable by zipping the
//! two limit sequences with uniformly padded, rounded elements:
//!
//! `zip(f, g)(n) = op(round_down(f n), round_down(g n)) + n`
//!
//! Rounding each element makes the zipped value monotone in `n` (rounding
//! and the recursive op are monotone), the `+ n` padding restores strict
//! increase and keeps the sequence cofinal — any `gamma` below both limits
//! is below some rounded element plus a finite offset — while each element
//! stays strictly below both limits because a limit absorbs finite offsets
//! above its rounded elements. The zip therefore converges to exactly
//! `min` (resp. `max`) of the two limit values.

use crate::arith::{add, round_down};
use crate::cnf::{cnf_max, cnf_min};
use crate::ordinal::{Classification, Ordinal, OrdinalSeq};

/// Minimum across limits: `lim_min(a, b)` rounds both arguments down and
/// computes the exact minimum of the results. The value is
/// `min(round_down(a), round_down(b))`; it is zero or a limit.
pub fn lim_min(a: &Ordinal, b: &Ordinal) -> Ordinal {
    zl_min(&round_down(a), &round_down(b))
}

/// Maximum across limits. The first argument is rounded down; when that is
/// zero the second argument is returned unchanged (whatever its shape).
/// Otherwise the second is rounded down too and the exact maximum of the
/// rounded pair is computed.
pub fn lim_max(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let x = round_down(a);
    if matches!(x.classify(), Classification::IsZero) {
        return b.clone();
    }
    let y = round_down(b);
    if matches!(y.classify(), Classification::IsZero) {
        return x;
    }
    zl_max(&x, &y)
}

/// Exact minimum of two zero-or-limit trees.
fn zl_min(x: &Ordinal, y: &Ordinal) -> Ordinal {
    match (x.classify(), y.classify()) {
        (Classification::IsZero, _) | (_, Classification::IsZero) => Ordinal::zero(),
        (Classification::IsLim(f), Classification::IsLim(g)) => {
            let seq = OrdinalSeq::new(move |n| {
                let e = zl_min(&round_down(&f.get(n)), &round_down(&g.get(n)));
                add(&e, &Ordinal::from_nat(n as u64))
            });
            match (x.annotation(), y.annotation()) {
                (Some(p), Some(q)) => Ordinal::limit_annotated(seq, cnf_min(&p, &q)),
                _ => Ordinal::limit(seq),
            }
        }
        _ => unreachable!("inputs are rounded down"),
    }
}

/// Exact maximum of two zero-or-limit trees.
fn zl_max(x: &Ordinal, y: &Ordinal) -> Ordinal {
    match (x.classify(), y.classify()) {
        (Classification::IsZero, _) => y.clone(),
        (_, Classification::IsZero) => x.clone(),
        (Classification::IsLim(f), Classification::IsLim(g)) => {
            let seq = OrdinalSeq::new(move |n| {
                let fe = round_down(&f.get(n));
                let ge = round_down(&g.get(n));
                let e = if matches!(fe.classify(), Classification::IsZero) {
                    ge
                } else if matches!(ge.classify(), Classification::IsZero) {
                    fe
                } else {
                    zl_max(&fe, &ge)
                };
                add(&e, &Ordinal::from_nat(n as u64))
            });
            match (x.annotation(), y.annotation()) {
                (Some(p), Some(q)) => Ordinal::limit_annotated(seq, cnf_max(&p, &q)),
                _ => Ordinal::limit(seq),
            }
        }
        _ => unreachable!("inputs are rounded down"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{embed, CnfForm};
    use crate::engine::{bisim, probe_ge, Fuel};
    use crate::ordinal::StripCache;
    use proptest::prelude::*;

    fn c(s: &str) -> CnfForm {
        CnfForm::parse(s).unwrap()
    }

    fn emb(s: &str) -> Ordinal {
        embed(&c(s))
    }

    #[test]
    fn min_rounds_both_sides() {
        assert_eq!(lim_min(&emb("w*2+5"), &emb("w^2+3")).annotation(), Some(c("w*2")));
        assert_eq!(lim_min(&emb("w^2+3"), &emb("w*2+5")).annotation(), Some(c("w*2")));
        assert_eq!(lim_min(&emb("7"), &emb("w")).annotation(), Some(c("0")));
        assert_eq!(lim_min(&emb("w"), &emb("w")).annotation(), Some(c("w")));
    }

    #[test]
    fn max_keeps_the_unrounded_right_side_when_left_is_small() {
        let r = lim_max(&emb("3"), &emb("w+5"));
        assert!(Ordinal::ptr_eq(&r, &emb("w+5")));
        let r = lim_max(&emb("w+5"), &emb("3"));
        assert_eq!(r.annotation(), Some(c("w")));
        let r = lim_max(&emb("w*3+1"), &emb("w*2+9"));
        assert_eq!(r.annotation(), Some(c("w*3")));
    }

    #[test]
    fn zipped_values_bisimulate_their_annotations() {
        let m = lim_min(&emb("w*2"), &emb("w^2"));
        assert!(bisim(&m, &emb("w*2"), Fuel(500)).is_proven());
        let m = lim_max(&emb("w*2"), &emb("w^2"));
        assert!(bisim(&m, &emb("w^2"), Fuel(500)).is_proven());
    }

    #[test]
    fn stripped_min_still_probes_correctly() {
        // Without annotations the zip itself carries the value: the probe
        // climbs its elements and proves w*2, while w*3 stays open.
        let cache = StripCache::new();
        let a = emb("w*2+1").strip_annotations(&cache);
        let b = emb("w^2").strip_annotations(&cache);
        let m = lim_min(&a, &b);
        assert!(m.annotation().is_none());
        let r = probe_ge(&m, &c("w*2"), Fuel(50_000), 6);
        assert!(r.summary.is_proven(), "summary was {:?}", r.summary);
        let r = probe_ge(&m, &c("w*3"), Fuel(5_000), 6);
        assert!(!r.summary.is_proven());
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

        #[test]
        fn min_max_track_the_oracle(a in arb_cnf(), b in arb_cnf()) {
            let m = lim_min(&embed(&a), &embed(&b));
            prop_assert_eq!(m.annotation(), Some(cnf_min(&a.round_down(), &b.round_down())));
            let m = lim_max(&embed(&a), &embed(&b));
            let expected = if a.round_down().is_zero() {
                b.clone()
            } else if b.round_down().is_zero() {
                a.round_down()
            } else {
                cnf_max(&a.round_down(), &b.round_down())
            };
            prop_assert_eq!(m.annotation(), Some(expected));
        }
    }
}
