//! The library's acceptance checks: twelve numbered criteria covering
//! oracle soundness, the arithmetic homomorphism, the min/max laws, the
//! witness constructions, the characteristic-ordinal results, the
//! Sierpiński agreement, and fuel monotonicity. Each check returns a
//! [`CheckOutcome`] with a pass flag and a human-readable detail line;
//! the CLI's `selftest` subcommand and the acceptance test target both
//! drive them. (The thirteenth criterion, the CLI contract itself, is
//! exercised by the CLI's own integration tests.)
//!
//! All randomness is a hand-rolled deterministic generator with fixed
//! seeds, so every run checks the same cases.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::Instant;

use crate::arith::{add, exp, mul, round_down};
use crate::characteristic::{
    exists_forall_witness, exists_witness, family_const_false, family_const_true,
    family_diagonal, family_single_true, family_threshold, family_twin_primes, forall_witness,
    psi_n, PropFamily, TrueProfile,
};
use crate::cnf::{
    cnf_add, cnf_compare, cnf_min, cnf_mul, cnf_pow, embed, fundamental_seq, CnfForm,
};
use crate::engine::{bisim, leq, probe_ge, Fuel};
use crate::minmax::{lim_max, lim_min};
use crate::ordinal::{Ordinal, StripCache};
use crate::semidec::{semidec_to_witness, witness_to_semidec, BitSeq};
use crate::sierpinski::{eval_top, s_n_of};

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

/// The result of one acceptance check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    /// Criterion number (1-based, matching the published list).
    pub number: u32,
    /// Short slug for the criterion.
    pub name: &'static str,
    /// Whether every assertion of the criterion held.
    pub passed: bool,
    /// Counts, timings, and the first failure when one occurred.
    pub details: String,
}

impl CheckOutcome {
    /// The one-line pass/fail rendering used by the CLI and the
    /// acceptance tests.
    pub fn render(&self) -> String {
        format!(
            "criterion {}: {} — {} — {}",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.details
        )
    }
}

struct Check {
    number: u32,
    name: &'static str,
    failures: Vec<String>,
    cases: usize,
}

impl Check {
    fn new(number: u32, name: &'static str) -> Check {
        Check { number, name, failures: Vec::new(), cases: 0 }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn finish(self, extra: &str) -> CheckOutcome {
        let passed = self.failures.is_empty();
        let details = if passed {
            format!("{} cases{}", self.cases, extra)
        } else {
            format!(
                "{} of {} cases failed{}; first: {}",
                self.failures.len(),
                self.cases,
                extra,
                self.failures[0]
            )
        };
        CheckOutcome { number: self.number, name: self.name, passed, details }
    }
}

// ---------------------------------------------------------------------------
// Deterministic randomness
// ---------------------------------------------------------------------------

/// SplitMix64: tiny, deterministic, and plenty for test-case sampling.
pub(crate) struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub(crate) fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw from `0..n` (`n > 0`).
    pub(crate) fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// A random normal form below `w^(max_exp+1)` with coefficients up to
/// `max_coeff` (zero included).
fn random_cnf(rng: &mut SplitMix64, max_exp: u64, max_coeff: u64) -> CnfForm {
    let mut terms = Vec::new();
    for e in (0..=max_exp).rev() {
        let c = rng.below(max_coeff + 1);
        if c > 0 {
            terms.push((CnfForm::nat(e), c));
        }
    }
    CnfForm::from_terms(terms).expect("descending by construction")
}

/// A random zero-or-limit normal form (no finite tail).
fn random_zl(rng: &mut SplitMix64, max_exp: u64, max_coeff: u64) -> CnfForm {
    random_cnf(rng, max_exp, max_coeff).limit_part()
}

fn omega_times(k: u64) -> CnfForm {
    if k == 0 {
        CnfForm::zero()
    } else {
        CnfForm::power(CnfForm::nat(1), k)
    }
}

fn omega_squared() -> CnfForm {
    CnfForm::power(CnfForm::nat(2), 1)
}

// ---------------------------------------------------------------------------
// Criterion 1: oracle soundness of the bounded engine
// ---------------------------------------------------------------------------

/// 1,000 random normal-form pairs below `w^4` (coefficients <= 5),
/// compared by `leq` on annotation-stripped embeddings at fuel 10^4:
/// verdicts never contradict the comparison oracle, and the
/// finite-vs-any and shared-tail successor cases are always decided.
/// Runtime bound: 30 s.
pub fn criterion_1_oracle_soundness() -> CheckOutcome {
    let started = Instant::now();
    let mut check = Check::new(1, "oracle-soundness");
    let mut rng = SplitMix64::new(0x0bad_5eed_0000_0001);
    let fuel = Fuel(10_000);
    for i in 0..1_000u32 {
        let (a, b, must_decide) = match i % 3 {
            0 => {
                let a = random_cnf(&mut rng, 3, 5);
                let b = random_cnf(&mut rng, 3, 5);
                let finite_case = a.as_nat().is_some() || b.as_nat().is_some();
                (a, b, finite_case)
            }
            1 => {
                // Finite versus anything.
                let a = CnfForm::nat(rng.below(6));
                let b = random_cnf(&mut rng, 3, 5);
                if rng.below(2) == 0 {
                    (a, b, true)
                } else {
                    (b, a, true)
                }
            }
            _ => {
                // Successor tails over a shared limit part.
                let mut delta = random_zl(&mut rng, 3, 5);
                if delta.is_zero() {
                    delta = CnfForm::omega();
                }
                let a = cnf_add(&delta, &CnfForm::nat(rng.below(6)));
                let b = cnf_add(&delta, &CnfForm::nat(rng.below(6)));
                (a, b, true)
            }
        };
        let cache = StripCache::new();
        let sa = embed(&a).strip_annotations(&cache);
        let sb = embed(&b).strip_annotations(&cache);
        let v = leq(&sa, &sb, fuel);
        let cmp = cnf_compare(&a, &b);
        if v.is_proven() {
            check.case(cmp != Ordering::Greater, || {
                format!("leq({}, {}) Proven but oracle says {:?}", a, b, cmp)
            });
        } else if v.is_refuted() {
            check.case(cmp == Ordering::Greater, || {
                format!("leq({}, {}) Refuted but oracle says {:?}", a, b, cmp)
            });
        } else {
            check.case(!must_decide, || {
                format!("leq({}, {}) Unknown on a case that must be decided", a, b)
            });
        }
    }
    let elapsed = started.elapsed();
    check.case(elapsed.as_secs() < 30, || {
        format!("runtime {:?} exceeded the 30 s bound", elapsed)
    });
    check.finish(&format!(", {:?}", elapsed))
}

// ---------------------------------------------------------------------------
// Criterion 2: arithmetic homomorphism
// ---------------------------------------------------------------------------

/// 300 random pairs: tree-level `add`/`mul` of embeddings is
/// probe-bisimilar to the embedding of the oracle's sum/product, and
/// likewise `w^b` for exponents below `w^2`. Runtime bound: 30 s.
pub fn criterion_2_arithmetic_homomorphism() -> CheckOutcome {
    let started = Instant::now();
    let mut check = Check::new(2, "arithmetic-homomorphism");
    let mut rng = SplitMix64::new(0x0bad_5eed_0000_0002);
    let fuel = Fuel(10_000);
    for _ in 0..300u32 {
        let a = random_cnf(&mut rng, 3, 5);
        let b = random_cnf(&mut rng, 3, 5);
        let sum = add(&embed(&a), &embed(&b));
        check.case(bisim(&sum, &embed(&cnf_add(&a, &b)), fuel).is_proven(), || {
            format!("add mismatch on {} + {}", a, b)
        });
        let product = mul(&embed(&a), &embed(&b));
        check.case(
            bisim(&product, &embed(&cnf_mul(&a, &b)), fuel).is_proven(),
            || format!("mul mismatch on {} * {}", a, b),
        );
        let e = random_cnf(&mut rng, 1, 3);
        let power = exp(&Ordinal::omega(), &embed(&e));
        check.case(
            bisim(&power, &embed(&cnf_pow(&CnfForm::omega(), &e)), fuel).is_proven(),
            || format!("pow mismatch on w^({})", e),
        );
    }
    let elapsed = started.elapsed();
    check.case(elapsed.as_secs() < 30, || {
        format!("runtime {:?} exceeded the 30 s bound", elapsed)
    });
    check.finish(&format!(", {:?}", elapsed))
}

// ---------------------------------------------------------------------------
// Criterion 3: minimum laws
// ---------------------------------------------------------------------------

/// On 200 zero-or-limit pairs: the minimum sits below both arguments,
/// `lim_min(a, a)` is bisimilar to `round_down(a)`, and the universal
/// property holds against oracle samples (the oracle minimum embeds
/// below the construction; anything strictly above is refuted).
pub fn criterion_3_lim_min_laws() -> CheckOutcome {
    let mut check = Check::new(3, "lim-min-laws");
    let mut rng = SplitMix64::new(0x0bad_5eed_0000_0003);
    let fuel = Fuel(10_000);
    for _ in 0..200u32 {
        let a = random_zl(&mut rng, 3, 5);
        let b = random_zl(&mut rng, 3, 5);
        let ea = embed(&a);
        let eb = embed(&b);
        let m = lim_min(&ea, &eb);
        check.case(leq(&m, &ea, fuel).is_proven(), || {
            format!("lim_min({}, {}) not <= left", a, b)
        });
        check.case(leq(&m, &eb, fuel).is_proven(), || {
            format!("lim_min({}, {}) not <= right", a, b)
        });
        check.case(
            bisim(&lim_min(&ea, &ea), &round_down(&ea), fuel).is_proven(),
            || format!("lim_min({}, same) differs from round_down", a),
        );
        let gamma = cnf_min(&a, &b);
        check.case(leq(&embed(&gamma), &m, fuel).is_proven(), || {
            format!("oracle minimum {} not below lim_min({}, {})", gamma, a, b)
        });
        if gamma.is_limit() {
            let below = fundamental_seq(&gamma, 2).expect("limit has a fundamental sequence");
            check.case(leq(&embed(&below), &m, fuel).is_proven(), || {
                format!("{} below the minimum of ({}, {}) but not Proven", below, a, b)
            });
        }
        let above = cnf_add(&gamma, &CnfForm::nat(1));
        check.case(leq(&embed(&above), &m, fuel).is_refuted(), || {
            format!("{} above the minimum of ({}, {}) but not Refuted", above, a, b)
        });
    }
    check.finish("")
}

// ---------------------------------------------------------------------------
// Criterion 4: maximum at w*k levels
// ---------------------------------------------------------------------------

/// For k <= 5 over 200 zero-or-limit pairs: probing the maximum at
/// `w*k` agrees with the disjunction of the individual probes.
pub fn criterion_4_lim_max_at_levels() -> CheckOutcome {
    let mut check = Check::new(4, "lim-max-at-omega-k");
    let mut rng = SplitMix64::new(0x0bad_5eed_0000_0004);
    let fuel = Fuel(10_000);
    for _ in 0..200u32 {
        let a = random_zl(&mut rng, 2, 4);
        let b = random_zl(&mut rng, 2, 4);
        let ea = embed(&a);
        let eb = embed(&b);
        let m = lim_max(&ea, &eb);
        let k = 1 + rng.below(5);
        let level = omega_times(k);
        let joint = probe_ge(&m, &level, fuel, 4).summary;
        let left = probe_ge(&ea, &level, fuel, 4).summary;
        let right = probe_ge(&eb, &level, fuel, 4).summary;
        check.case(joint.is_proven() == (left.is_proven() || right.is_proven()), || {
            format!(
                "max({}, {}) at {}: joint {:?}, parts {:?}/{:?}",
                a, b, level, joint, left, right
            )
        });
        if joint.is_refuted() {
            check.case(!left.is_proven() && !right.is_proven(), || {
                format!("max({}, {}) refuted at {} yet a part passes", a, b, level)
            });
        }
    }
    check.finish("")
}

// ---------------------------------------------------------------------------
// Criterion 5: witness round trip
// ---------------------------------------------------------------------------

/// For 100 eventually-constant bit sequences: the witness probe at
/// level `w + 1` is Proven exactly when the sequence holds a 1, and the
/// round trip through `witness_to_semidec` preserves existence of a 1
/// within bound 64.
pub fn criterion_5_witness_round_trip() -> CheckOutcome {
    let mut check = Check::new(5, "witness-round-trip");
    let mut rng = SplitMix64::new(0x0bad_5eed_0000_0005);
    for _ in 0..100u32 {
        let len = rng.below(25);
        let prefix: Vec<bool> = (0..len).map(|_| rng.below(4) == 0).collect();
        let tail = rng.below(4) == 0;
        let has_one = tail || prefix.iter().any(|&b| b);
        let s = BitSeq::eventually(prefix, tail);
        let w = semidec_to_witness(&s);
        let verdict = w.probe(Fuel(100_000), 4).summary;
        check.case(verdict.is_proven() == has_one, || {
            format!("probe {:?} but has_one = {} for {:?}", verdict, has_one, s)
        });
        match witness_to_semidec(&w) {
            Ok(back) => {
                check.case(
                    back.first_one_within(64).is_some() == s.first_one_within(64).is_some(),
                    || format!("round trip changed 1-existence for {:?}", s),
                );
            }
            Err(e) => check.case(false, || format!("round trip failed: {}", e)),
        }
    }
    check.finish("")
}

// ---------------------------------------------------------------------------
// Criterion 6: exact stage values
// ---------------------------------------------------------------------------

/// For n <= 8: the stage-n characteristic of the all-true family is
/// probe-bisimilar to `w*(n+1)`, both inequality directions Proven at
/// fuel 10^4.
pub fn criterion_6_stage_exact_value() -> CheckOutcome {
    let mut check = Check::new(6, "stage-exact-value");
    let fam = family_const_true();
    let fuel = Fuel(10_000);
    for n in 0..=8u64 {
        let stage = psi_n(&fam, n);
        let expected = embed(&omega_times(n + 1));
        check.case(leq(&stage, &expected, fuel).is_proven(), || {
            format!("stage {} not <= w*{}", n, n + 1)
        });
        check.case(leq(&expected, &stage, fuel).is_proven(), || {
            format!("w*{} not <= stage {}", n + 1, n)
        });
    }
    check.finish("")
}

// ---------------------------------------------------------------------------
// Criterion 7: one true member
// ---------------------------------------------------------------------------

/// Families with exactly one true member at index j <= 16 have some
/// stage whose probe passes `w*2`; the all-false family shows no Proven
/// at any level >= `w*2` under fuel 10^5.
pub fn criterion_7_one_true_member() -> CheckOutcome {
    let mut check = Check::new(7, "one-true-member");
    for j in 0..=16u64 {
        let fam = family_single_true(j);
        let found = (0..=j + 1).any(|n| {
            probe_ge(&psi_n(&fam, n), &omega_times(2), Fuel(10_000), 4)
                .summary
                .is_proven()
        });
        check.case(found, || {
            format!("no stage of single-true({}) passes w*2", j)
        });
    }
    let fam = family_const_false();
    for n in [1u64, 4, 8] {
        for target in [omega_times(2), omega_times(3)] {
            let report = probe_ge(&psi_n(&fam, n), &target, Fuel(100_000), 6);
            for lv in &report.per_level {
                if cnf_compare(&lv.level, &omega_times(2)) != Ordering::Less {
                    check.case(!lv.verdict.is_proven(), || {
                        format!("all-false stage {} Proven at {}", n, lv.level)
                    });
                }
            }
            check.case(!report.summary.is_proven(), || {
                format!("all-false stage {} summary Proven at {}", n, target)
            });
        }
    }
    check.finish("")
}

// ---------------------------------------------------------------------------
// Criterion 8: the countable join witness
// ---------------------------------------------------------------------------

/// Over 50 constructed families: the exists witness probe at `w*3` is
/// Proven exactly when some member is true.
pub fn criterion_8_exists_witness() -> CheckOutcome {
    let mut check = Check::new(8, "exists-witness");
    let mut rng = SplitMix64::new(0x0bad_5eed_0000_0008);
    for i in 0..50u32 {
        let (fam, some_true): (PropFamily, bool) = match i % 4 {
            0 => (family_const_false(), false),
            1 => (family_const_true(), true),
            2 => (family_single_true(rng.below(11)), true),
            _ => {
                let mut set = BTreeSet::new();
                let count = rng.below(4);
                for _ in 0..count {
                    set.insert(rng.below(12));
                }
                let truth = set.clone();
                let fam = PropFamily::new("sampled finite", move |n| {
                    BitSeq::constant(truth.contains(&n))
                })
                .reprofiled(Some(TrueProfile::Finite(set.clone())));
                (fam, !set.is_empty())
            }
        };
        let verdict = exists_witness(&fam).probe(Fuel(100_000), 4).summary;
        check.case(verdict.is_proven() == some_true, || {
            format!(
                "exists over {:?}: verdict {:?}, expected {}",
                fam, verdict, some_true
            )
        });
    }
    check.finish("")
}

// ---------------------------------------------------------------------------
// Criterion 9: the twin-prime meet at cap 5,000
// ---------------------------------------------------------------------------

/// With cap 5,000 and fuel 2*10^5, the forall witness of the twin-prime
/// family passes every ladder level `w*1` through `w*8`. Runtime bound:
/// 10 s.
pub fn criterion_9_twin_prime_demo() -> CheckOutcome {
    let started = Instant::now();
    let mut check = Check::new(9, "twin-prime-demo");
    let fam = family_twin_primes(5_000);
    let report = forall_witness(&fam).probe(Fuel(200_000), 8);
    let mut seen = 0u64;
    for lv in &report.per_level {
        if cnf_compare(&lv.level, &omega_squared()) == Ordering::Less {
            seen += 1;
            check.case(lv.verdict.is_proven(), || {
                format!("level {} verdict {:?}", lv.level, lv.verdict)
            });
        }
    }
    check.case(seen == 8, || format!("expected 8 ladder levels, saw {}", seen));
    let elapsed = started.elapsed();
    check.case(elapsed.as_secs() < 10, || {
        format!("runtime {:?} exceeded the 10 s bound", elapsed)
    });
    check.finish(&format!(", {:?}", elapsed))
}

// ---------------------------------------------------------------------------
// Criterion 10: the exists-forall probe
// ---------------------------------------------------------------------------

/// `threshold(5)`: the probe at `w^2 + w` finds a passing column — all
/// `w*k` rungs (k <= 6) Proven and the summary Proven. `diagonal`: no
/// rung at or above `w^2` is Proven and the summary stays short of
/// Proven at fuel 10^5.
pub fn criterion_10_exists_forall() -> CheckOutcome {
    let mut check = Check::new(10, "exists-forall");
    let fuel = Fuel(100_000);

    let witness = exists_forall_witness(&family_threshold(5)).expect("threshold is monotone");
    let report = witness.probe(fuel, 6);
    for lv in &report.per_level {
        if cnf_compare(&lv.level, &omega_squared()) == Ordering::Less {
            check.case(lv.verdict.is_proven(), || {
                format!("threshold rung {} verdict {:?}", lv.level, lv.verdict)
            });
        }
    }
    check.case(report.summary.is_proven(), || {
        format!("threshold summary {:?}", report.summary)
    });

    let witness = exists_forall_witness(&family_diagonal()).expect("diagonal is monotone");
    let report = witness.probe(fuel, 6);
    for lv in &report.per_level {
        if cnf_compare(&lv.level, &omega_squared()) != Ordering::Less {
            check.case(!lv.verdict.is_proven(), || {
                format!("diagonal rung {} verdict {:?}", lv.level, lv.verdict)
            });
        }
    }
    check.case(!report.summary.is_proven(), || {
        format!("diagonal summary {:?}", report.summary)
    });
    check.finish("")
}

// ---------------------------------------------------------------------------
// Criterion 11: Sierpiński agreement
// ---------------------------------------------------------------------------

/// For n <= 6 and a in {0, w, w*2, ..., w*6, w^2}: the staged map's
/// evaluation at fuel 10^4 matches the oracle comparison against `w*n`,
/// and lower fuels never contradict it.
pub fn criterion_11_sierpinski_agreement() -> CheckOutcome {
    let mut check = Check::new(11, "sierpinski-agreement");
    let mut values = vec![CnfForm::zero()];
    for k in 1..=6u64 {
        values.push(omega_times(k));
    }
    values.push(omega_squared());
    for n in 0..=6u64 {
        let level = omega_times(n);
        for a in &values {
            let expected = cnf_compare(a, &level) != Ordering::Less;
            let s = s_n_of(n, &embed(a));
            let v = eval_top(&s, Fuel(10_000));
            check.case(v.is_proven() == expected, || {
                format!("n = {}, a = {}: verdict {:?}, expected {}", n, a, v, expected)
            });
            for fuel in [10u64, 100, 1_000] {
                let v = eval_top(&s, Fuel(fuel));
                check.case(!(v.is_proven() && !expected), || {
                    format!("n = {}, a = {}, fuel {}: false Proven", n, a, fuel)
                });
                check.case(!(v.is_refuted() && expected), || {
                    format!("n = {}, a = {}, fuel {}: false Refuted", n, a, fuel)
                });
            }
        }
    }
    check.finish("")
}

// ---------------------------------------------------------------------------
// Criterion 12: fuel monotonicity
// ---------------------------------------------------------------------------

/// 500 randomized (input, fuel) cases across the verdict-producing
/// operations: a decided verdict never changes when the fuel grows.
pub fn criterion_12_fuel_monotonicity() -> CheckOutcome {
    let mut check = Check::new(12, "fuel-monotonicity");
    let mut rng = SplitMix64::new(0x0bad_5eed_0000_000c);
    for i in 0..500u32 {
        let fuel = 10u64 << rng.below(10);
        let bigger = fuel * 4;
        match i % 5 {
            0 => {
                let a = random_cnf(&mut rng, 3, 5);
                let b = random_cnf(&mut rng, 3, 5);
                let cache = StripCache::new();
                let sa = embed(&a).strip_annotations(&cache);
                let sb = embed(&b).strip_annotations(&cache);
                let small = leq(&sa, &sb, Fuel(fuel));
                let large = leq(&sa, &sb, Fuel(bigger));
                check.case(
                    !small.is_decided()
                        || (small.is_proven() == large.is_proven()
                            && small.is_refuted() == large.is_refuted()),
                    || format!("leq({}, {}) flipped between fuel {} and {}", a, b, fuel, bigger),
                );
            }
            1 => {
                let a = random_cnf(&mut rng, 3, 5);
                let b = random_cnf(&mut rng, 3, 5);
                let small = bisim(&embed(&a), &embed(&b), Fuel(fuel));
                let large = bisim(&embed(&a), &embed(&b), Fuel(bigger));
                check.case(
                    !small.is_decided() || small.is_proven() == large.is_proven(),
                    || format!("bisim({}, {}) flipped", a, b),
                );
            }
            2 => {
                let a = random_zl(&mut rng, 2, 4);
                let target = omega_times(1 + rng.below(4));
                let cache = StripCache::new();
                let sa = embed(&a).strip_annotations(&cache);
                let small = probe_ge(&sa, &target, Fuel(fuel), 4).summary;
                let large = probe_ge(&sa, &target, Fuel(bigger), 4).summary;
                check.case(
                    !small.is_decided()
                        || (small.is_proven() == large.is_proven()
                            && small.is_refuted() == large.is_refuted()),
                    || format!("probe({} >= {}) flipped", a, target),
                );
            }
            3 => {
                let n = rng.below(5);
                let a = omega_times(rng.below(5));
                let s = s_n_of(n, &embed(&a));
                let small = eval_top(&s, Fuel(fuel));
                let large = eval_top(&s, Fuel(bigger));
                check.case(
                    !small.is_decided()
                        || (small.is_proven() == large.is_proven()
                            && small.is_refuted() == large.is_refuted()),
                    || format!("eval_top(s_{}({})) flipped", n, a),
                );
            }
            _ => {
                let j = rng.below(8);
                let w = exists_witness(&family_single_true(j));
                let small = w.probe(Fuel(fuel), 4).summary;
                let large = w.probe(Fuel(bigger), 4).summary;
                check.case(
                    !small.is_decided()
                        || (small.is_proven() == large.is_proven()
                            && small.is_refuted() == large.is_refuted()),
                    || format!("witness probe for single-true({}) flipped", j),
                );
            }
        }
    }
    check.finish("")
}

/// Run criteria 1 through 12 in order. (Criterion 13 — the CLI contract
/// — lives in the CLI's integration tests.)
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        criterion_1_oracle_soundness(),
        criterion_2_arithmetic_homomorphism(),
        criterion_3_lim_min_laws(),
        criterion_4_lim_max_at_levels(),
        criterion_5_witness_round_trip(),
        criterion_6_stage_exact_value(),
        criterion_7_one_true_member(),
        criterion_8_exists_witness(),
        criterion_9_twin_prime_demo(),
        criterion_10_exists_forall(),
        criterion_11_sierpinski_agreement(),
        criterion_12_fuel_monotonicity(),
    ]
}
