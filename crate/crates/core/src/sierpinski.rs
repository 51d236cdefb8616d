//! The Sierpiński type as a lazy free ω-join structure: `Bot`, `Top`,
//! and countable joins of branches, with a fuel-bounded truth
//! evaluation and the staged comparison maps `s_n`.
//!
//! A value is read as the proposition "it evaluates to `Top`". A join
//! is true exactly when some branch is true, so evaluation dovetails
//! fairly across branches and can confirm truth (`Proven`) but can
//! never refute a join — certifying that all infinitely many branches
//! are `Bot` is not a finite job. `Bot` alone refutes.
//!
//! The staged maps realize `s_n(a) = Top iff a >= w * n`:
//!
//! * `n = 0`: every ordinal passes, so `Top`;
//! * `n = 1`: "`a` is infinite", which is decidable by walking the
//!   successor chain, so `Top` or `Bot` outright;
//! * `n >= 2`: structural recursion — zero fails, successors defer to
//!   their predecessor, and a limit becomes the join over its elements
//!   at stage `n - 1` (the limit exceeds `w * n` exactly when some
//!   element exceeds `w * (n - 1)`, strictness pumping the rest).
//!
//! Mixed levels `w * n + k` reduce in principle to `w * n` or
//! `w * (n + 1)` by comparing finite parts; only the `w * n` stages are
//! exposed here, since that reduction is an argument about
//! propositions rather than an algorithm on representations.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::engine::{deepened, dovetail, Fuel, Meter, Verdict};
use crate::ordinal::{Classification, FinitenessResult, Ordinal};
use crate::semidec::BitSeq;

// ---------------------------------------------------------------------------
// The type
// ---------------------------------------------------------------------------

struct SierpSeqInner {
    gen: Box<dyn Fn(usize) -> Sierpinski + Send + Sync>,
    memo: Mutex<HashMap<usize, Sierpinski>>,
}

/// A memoized total sequence of Sierpiński values: the branches of a
/// join. Generators must be deterministic; memoization makes repeated
/// reads cheap and pointer-stable.
#[derive(Clone)]
pub struct SierpSeq(Arc<SierpSeqInner>);

impl SierpSeq {
    /// Wrap a deterministic generator.
    pub fn new(gen: impl Fn(usize) -> Sierpinski + Send + Sync + 'static) -> SierpSeq {
        SierpSeq(Arc::new(SierpSeqInner {
            gen: Box::new(gen),
            memo: Mutex::new(HashMap::new()),
        }))
    }

    /// Branch `n`, memoized.
    pub fn get(&self, n: usize) -> Sierpinski {
        if let Some(v) = self.0.memo.lock().unwrap().get(&n) {
            return v.clone();
        }
        let v = (self.0.gen)(n);
        self.0
            .memo
            .lock()
            .unwrap()
            .entry(n)
            .or_insert(v)
            .clone()
    }
}

/// A lazy Sierpiński value: false, true, or a countable join of
/// branches, true exactly when some branch is.
#[derive(Clone)]
pub enum Sierpinski {
    Bot,
    Top,
    Join(SierpSeq),
}

impl fmt::Debug for Sierpinski {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sierpinski::Bot => write!(f, "Bot"),
            Sierpinski::Top => write!(f, "Top"),
            Sierpinski::Join(_) => write!(f, "Join(..)"),
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

fn eval_core(s: &Sierpinski, meter: &mut Meter) -> Verdict {
    if !meter.tick() {
        return Verdict::pending();
    }
    match s {
        Sierpinski::Top => Verdict::Proven,
        Sierpinski::Bot => Verdict::Refuted,
        Sierpinski::Join(branches) => {
            let branches = branches.clone();
            dovetail(
                meter,
                &|round| round + 1,
                &|_, v| match v {
                    // A true branch proves the join; a refuted branch only
                    // settles — the join itself can never be refuted.
                    Verdict::Proven => Some(Verdict::Proven),
                    _ => None,
                },
                &mut |id, m| eval_core(&branches.get(id), m),
            )
        }
    }
}

/// Fuel-bounded truth of a Sierpiński value: `Proven` iff evaluation
/// reaches `Top`, `Refuted` only for a bare `Bot`, `Unknown` when the
/// fuel runs out first. Verdicts are stable under added fuel.
pub fn eval_top(s: &Sierpinski, fuel: Fuel) -> Verdict {
    deepened(fuel.0, |m| eval_core(s, m)).0
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// The join with `Top` exactly at the indices where the bit sequence
/// holds a 1: `eval_top` confirms "some bit is 1" on the explored
/// range.
pub fn from_bitseq(s: &BitSeq) -> Sierpinski {
    let s = s.clone();
    Sierpinski::Join(SierpSeq::new(move |i| {
        if s.get(i as u64) {
            Sierpinski::Top
        } else {
            Sierpinski::Bot
        }
    }))
}

/// The staged comparison map: `s_n_of(n, a)` evaluates to `Top` exactly
/// when `a >= w * n`. Stages 0 and 1 are decided outright; higher
/// stages recurse structurally, turning each limit into a join over its
/// elements one stage down.
pub fn s_n_of(n: u64, a: &Ordinal) -> Sierpinski {
    if n == 0 {
        return Sierpinski::Top;
    }
    if n == 1 {
        return match a.decide_finite() {
            FinitenessResult::Infinite => Sierpinski::Top,
            FinitenessResult::Finite(_) => Sierpinski::Bot,
        };
    }
    let mut cur = a.clone();
    loop {
        match cur.classify() {
            Classification::IsZero => return Sierpinski::Bot,
            Classification::IsSucc(pred) => cur = pred,
            Classification::IsLim(f) => {
                return Sierpinski::Join(SierpSeq::new(move |i| s_n_of(n - 1, &f.get(i))));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{cnf_compare, embed, CnfForm};
    use crate::semidec::semidec_to_witness;
    use std::cmp::Ordering;

    #[test]
    fn constants_evaluate_immediately() {
        assert!(eval_top(&Sierpinski::Top, Fuel(1)).is_proven());
        assert!(eval_top(&Sierpinski::Bot, Fuel(1)).is_refuted());
    }

    #[test]
    fn a_join_is_proven_once_the_schedule_reaches_a_top() {
        let s = Sierpinski::Join(SierpSeq::new(|i| {
            if i == 7 {
                Sierpinski::Top
            } else {
                Sierpinski::Bot
            }
        }));
        assert!(eval_top(&s, Fuel(10_000)).is_proven());
    }

    #[test]
    fn a_join_of_bots_stays_unknown_at_every_fuel() {
        let s = Sierpinski::Join(SierpSeq::new(|_| Sierpinski::Bot));
        for fuel in [10u64, 1_000, 100_000] {
            let v = eval_top(&s, Fuel(fuel));
            assert!(v.is_unknown(), "fuel {}: {:?}", fuel, v);
        }
    }

    #[test]
    fn bit_sequences_lift_faithfully() {
        let zero = BitSeq::constant(false);
        for fuel in [10u64, 1_000, 100_000] {
            assert!(eval_top(&from_bitseq(&zero), Fuel(fuel)).is_unknown());
        }
        let immediate = BitSeq::parse_literal("1:zeros").unwrap();
        assert!(eval_top(&from_bitseq(&immediate), Fuel(16)).is_proven());
        let late = BitSeq::from_fn(|i| i == 9);
        assert!(eval_top(&from_bitseq(&late), Fuel(10_000)).is_proven());
    }

    #[test]
    fn staged_maps_compare_against_omega_multiples() {
        let w2 = embed(&CnfForm::power(CnfForm::nat(1), 2));
        assert!(eval_top(&s_n_of(2, &w2), Fuel(10_000)).is_proven());
        for fuel in [100u64, 10_000, 100_000] {
            assert!(!eval_top(&s_n_of(3, &w2), Fuel(fuel)).is_proven());
        }
        assert!(matches!(s_n_of(0, &Ordinal::zero()), Sierpinski::Top));
        assert!(matches!(s_n_of(1, &Ordinal::zero()), Sierpinski::Bot));
        assert!(matches!(s_n_of(1, &Ordinal::omega()), Sierpinski::Top));
        assert!(eval_top(&s_n_of(2, &Ordinal::from_nat(9)), Fuel(1_000)).is_refuted());
    }

    #[test]
    fn staged_maps_agree_with_the_comparison_oracle() {
        let mut values = vec![CnfForm::zero()];
        for k in 1..=6u64 {
            values.push(CnfForm::power(CnfForm::nat(1), k));
        }
        values.push(CnfForm::power(CnfForm::nat(2), 1));
        for n in 0..=6u64 {
            let level = if n == 0 {
                CnfForm::zero()
            } else {
                CnfForm::power(CnfForm::nat(1), n)
            };
            for a in &values {
                let expected = cnf_compare(a, &level) != Ordering::Less;
                let s = s_n_of(n, &embed(a));
                let v = eval_top(&s, Fuel(10_000));
                assert_eq!(
                    v.is_proven(),
                    expected,
                    "n = {}, a = {}, verdict {:?}",
                    n,
                    a,
                    v
                );
                // Lower fuels may say Unknown but must never contradict.
                for fuel in [10u64, 100, 1_000] {
                    let v = eval_top(&s, Fuel(fuel));
                    if v.is_proven() {
                        assert!(expected, "n = {}, a = {}, fuel {}", n, a, fuel);
                    }
                    if v.is_refuted() {
                        assert!(!expected, "n = {}, a = {}, fuel {}", n, a, fuel);
                    }
                }
            }
        }
    }

    #[test]
    fn evaluation_is_stable_under_more_fuel() {
        let w3 = embed(&CnfForm::power(CnfForm::nat(1), 3));
        let samples = vec![
            s_n_of(2, &w3),
            s_n_of(3, &w3),
            s_n_of(4, &w3),
            from_bitseq(&BitSeq::from_fn(|i| i == 5)),
        ];
        for s in &samples {
            for fuel in [10u64, 100, 1_000, 10_000] {
                let small = eval_top(s, Fuel(fuel));
                let large = eval_top(s, Fuel(fuel * 4));
                if small.is_decided() {
                    assert_eq!(small.is_proven(), large.is_proven());
                    assert_eq!(small.is_refuted(), large.is_refuted());
                }
            }
        }
    }

    #[test]
    fn lifting_commutes_with_the_witness_probe() {
        let cases = [
            (":zeros", false),
            ("001:zeros", true),
            ("0001000:ones", true),
        ];
        for (literal, has_one) in cases {
            let s = BitSeq::parse_literal(literal).unwrap();
            let lifted = eval_top(&from_bitseq(&s), Fuel(100_000));
            let probed = semidec_to_witness(&s).probe(Fuel(100_000), 4).summary;
            assert_eq!(lifted.is_proven(), has_one, "literal {}", literal);
            assert_eq!(probed.is_proven(), has_one, "literal {}", literal);
        }
    }

    #[test]
    fn bisimilar_presentations_evaluate_alike() {
        // w*2 assembled by arithmetic versus embedded directly.
        let summed = crate::arith::add(&Ordinal::omega(), &Ordinal::omega());
        let embedded = embed(&CnfForm::power(CnfForm::nat(1), 2));
        for n in 0..=3u64 {
            let a = eval_top(&s_n_of(n, &summed), Fuel(10_000));
            let b = eval_top(&s_n_of(n, &embedded), Fuel(10_000));
            assert_eq!(a.is_proven(), b.is_proven(), "stage {}", n);
        }
    }
}
