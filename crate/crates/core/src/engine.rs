//! The fuel-bounded three-valued inequality engine.
//!
//! [`leq`] semidecides `a <= b` on ordinal trees. Verdicts are sound:
//! `Proven` and `Refuted` are only returned when the inequality respectively
//! holds or fails; `Unknown` means the fuel budget ran out first.
//!
//! Fuel discipline: the public entry points run iterative deepening with
//! budgets 1, 2, 4, ... A single bounded run is deterministic in its inputs
//! and budget, and the budget ladder does not depend on the total fuel, so
//! verdicts are monotone in fuel by construction — a question decided at
//! fuel `F` is decided identically at any `F' >= F`, because the same
//! bounded runs happen again (the cost is at most a factor of two over a
//! single run, the usual deepening trade).
//!
//! Witness searches over limit sequences are dovetailed: each round wakes
//! every pending attempt with a fuel slice, so a cheap witness far down the
//! sequence is found even when early attempts diverge.

use std::cmp::Ordering;

use crate::cnf::{cnf_compare, embed, CnfForm};
use crate::ordinal::{Classification, Ordinal, OrdinalSeq};

/// A fuel budget for one engine query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fuel(pub u64);

/// Three-valued outcome. `Unknown` carries the fuel actually spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Proven,
    Refuted,
    Unknown(u64),
}

impl Verdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven)
    }
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted)
    }
    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }
    /// Decided means not `Unknown`.
    pub fn is_decided(&self) -> bool {
        !self.is_unknown()
    }
    pub(crate) fn pending() -> Verdict {
        Verdict::Unknown(0)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Proven => write!(f, "Proven"),
            Verdict::Refuted => write!(f, "Refuted"),
            Verdict::Unknown(_) => write!(f, "Unknown"),
        }
    }
}

// ---------------------------------------------------------------------------
// Fuel metering
// ---------------------------------------------------------------------------

pub(crate) struct Meter {
    remaining: u64,
    initial: u64,
}

impl Meter {
    pub(crate) fn new(budget: u64) -> Meter {
        Meter { remaining: budget, initial: budget }
    }

    /// Charge one step. `false` means the budget is exhausted.
    pub(crate) fn tick(&mut self) -> bool {
        if self.remaining == 0 {
            false
        } else {
            self.remaining -= 1;
            true
        }
    }

    fn spent(&self) -> u64 {
        self.initial - self.remaining
    }

    /// Carve off a child budget of at most `cap`.
    fn slice(&mut self, cap: u64) -> Meter {
        let c = cap.min(self.remaining);
        self.remaining -= c;
        Meter::new(c)
    }

    /// Return a child's unspent fuel.
    fn absorb(&mut self, child: Meter) {
        self.remaining += child.remaining;
    }
}

/// Iterative deepening driver: run `body` with budgets 1, 2, 4, ... until it
/// decides or the next budget no longer fits in `fuel`. Returns the verdict
/// (Unknown rewritten to carry total spent fuel) and the total spent fuel.
pub(crate) fn deepened(fuel: u64, mut body: impl FnMut(&mut Meter) -> Verdict) -> (Verdict, u64) {
    let mut spent_total: u64 = 0;
    let mut budget: u64 = 1;
    loop {
        if budget > fuel - spent_total {
            return (Verdict::Unknown(spent_total), spent_total);
        }
        let mut meter = Meter::new(budget);
        let v = body(&mut meter);
        spent_total += meter.spent();
        if v.is_decided() {
            return (v, spent_total);
        }
        budget = budget.saturating_mul(2);
    }
}

// ---------------------------------------------------------------------------
// Dovetailed attempt scheduling
// ---------------------------------------------------------------------------

const MIN_SLICE: u64 = 32;

fn slice_cap(remaining: u64, round: usize) -> u64 {
    let r = round as u64 + 2;
    (remaining / (r * r)).max(MIN_SLICE).min(remaining)
}

/// How many attempt ids a bounded run may ever open. Materializing element
/// `k` of a lazy sequence can cost memory proportional to `k` (successor
/// chains), so an unbounded pool would grow quadratically; a square-root
/// cap keeps the total linear in the budget while the reachable index
/// still grows without bound as fuel does. The cap depends only on the
/// run's own budget, keeping bounded runs deterministic.
fn pool_cap(budget: u64) -> usize {
    let r = (budget as f64).sqrt() as u64;
    (r + 8).min(100_000) as usize
}

/// Run a growing pool of attempts in rounds, each with a fuel slice.
///
/// `active(r)` is how many attempt ids participate in round `r` (must be
/// nondecreasing). `classify` turns a decided attempt into an overall
/// verdict, or `None` when the attempt settles without deciding the query.
pub(crate) fn dovetail(
    meter: &mut Meter,
    active: &dyn Fn(usize) -> usize,
    classify: &dyn Fn(usize, Verdict) -> Option<Verdict>,
    run: &mut dyn FnMut(usize, &mut Meter) -> Verdict,
) -> Verdict {
    let cap = pool_cap(meter.initial);
    let mut settled: Vec<bool> = Vec::new();
    let mut round = 0usize;
    loop {
        if meter.remaining == 0 {
            return Verdict::pending();
        }
        let n = active(round).min(cap);
        if settled.len() < n {
            settled.resize(n, false);
        }
        let mut ran_any = false;
        for id in 0..n {
            if settled[id] {
                continue;
            }
            if meter.remaining == 0 {
                return Verdict::pending();
            }
            let slice = slice_cap(meter.remaining, round);
            let mut child = meter.slice(slice);
            let v = run(id, &mut child);
            meter.absorb(child);
            ran_any = true;
            if let Some(overall) = classify(id, v) {
                return overall;
            }
            if v.is_decided() {
                settled[id] = true;
            }
        }
        // Every attempt settled inconclusively and no new ones are coming.
        if !ran_any && active(round + 1).min(cap) <= n {
            return Verdict::pending();
        }
        round += 1;
    }
}

// ---------------------------------------------------------------------------
// The core relation
// ---------------------------------------------------------------------------

fn leq_m(a0: &Ordinal, b0: &Ordinal, meter: &mut Meter) -> Verdict {
    let mut a = a0.clone();
    let mut b = b0.clone();
    loop {
        if !meter.tick() {
            return Verdict::pending();
        }
        // Exact annotations on both sides defer to the normal-form oracle.
        if let (Some(x), Some(y)) = (a.annotation(), b.annotation()) {
            return if cnf_compare(&x, &y) != Ordering::Greater {
                Verdict::Proven
            } else {
                Verdict::Refuted
            };
        }
        // Reflexivity by node identity.
        if Ordinal::ptr_eq(&a, &b) {
            return Verdict::Proven;
        }
        match (a.classify(), b.classify()) {
            (Classification::IsZero, _) => return Verdict::Proven,
            (_, Classification::IsZero) => return Verdict::Refuted,
            (Classification::IsSucc(x), Classification::IsSucc(y)) => {
                // x+1 <= y+1  iff  x <= y.
                a = x;
                b = y;
            }
            (Classification::IsLim(_), Classification::IsSucc(y)) => {
                // A limit is below y+1 iff it is below y.
                b = y;
            }
            (Classification::IsSucc(x), Classification::IsLim(g)) => {
                return succ_vs_lim(&a, &x, &b, &g, meter);
            }
            (Classification::IsLim(f), Classification::IsLim(g)) => {
                if OrdinalSeq::ptr_eq(&f, &g) {
                    return Verdict::Proven;
                }
                return lim_vs_lim(&f, &b, meter);
            }
        }
    }
}

/// `a = x+1` against a limit `b = lim g`.
fn succ_vs_lim(
    a: &Ordinal,
    x: &Ordinal,
    b: &Ordinal,
    g: &OrdinalSeq,
    meter: &mut Meter,
) -> Verdict {
    // A finite value sits below every limit. An exact finite annotation
    // answers immediately; otherwise walk the successor chain on fuel.
    if let Some(ann) = a.annotation() {
        if ann.as_nat().is_some() {
            return Verdict::Proven;
        }
    } else {
        let mut cur = a.clone();
        loop {
            match cur.classify() {
                Classification::IsZero => return Verdict::Proven,
                Classification::IsSucc(p) => {
                    if !meter.tick() {
                        return Verdict::pending();
                    }
                    cur = p;
                }
                Classification::IsLim(_) => break,
            }
        }
    }
    // a is infinite. Attempts:
    //   positive m: a <= g(m) proves a <= b (elements sit below the limit);
    //   negative 1: b <= x proves x+1 > b, refuting;
    //   negative 2: x <= b refuted refutes (a is above x).
    dovetail(
        meter,
        &|round| round + 3,
        &|id, v| match (id, v) {
            (0, Verdict::Proven) => Some(Verdict::Refuted),
            (1, Verdict::Refuted) => Some(Verdict::Refuted),
            (_, Verdict::Proven) if id >= 2 => Some(Verdict::Proven),
            _ => None,
        },
        &mut |id, m| match id {
            0 => leq_m(b, x, m),
            1 => leq_m(x, b, m),
            _ => leq_m(a, &g.get(id - 2), m),
        },
    )
}

/// `a = lim f` against `b = lim g` (different sequences).
///
/// Limit-vs-limit has no positive fuel rule: proving `lim f <= lim g`
/// outright would require bounding every element of `f`, which no finite
/// search certifies (an element `a <= g(m)` witnesses nothing, because the
/// remaining elements may overtake). Positive answers come only from the
/// annotation fast path or node identity, both handled before this point.
/// What fuel can do is refute: any single `f(k) </= b` shows `a > b`,
/// since `f(k) < a`.
fn lim_vs_lim(f: &OrdinalSeq, b: &Ordinal, meter: &mut Meter) -> Verdict {
    dovetail(
        meter,
        &|round| round + 1,
        &|_, v| match v {
            Verdict::Refuted => Some(Verdict::Refuted),
            _ => None,
        },
        &mut |id, m| leq_m(&f.get(id), b, m),
    )
}

// ---------------------------------------------------------------------------
// Public queries
// ---------------------------------------------------------------------------

/// Semidecide `a <= b` within `fuel`.
pub fn leq(a: &Ordinal, b: &Ordinal, fuel: Fuel) -> Verdict {
    deepened(fuel.0, |m| leq_m(a, b, m)).0
}

/// Semidecide `a < b` within `fuel` (strictness via the successor).
pub fn lt(a: &Ordinal, b: &Ordinal, fuel: Fuel) -> Verdict {
    let sa = a.succ();
    deepened(fuel.0, |m| leq_m(&sa, b, m)).0
}

/// Semidecide value equality: both `a <= b` and `b <= a`, each on its own
/// full budget. Proven needs both directions; either refutation refutes.
pub fn bisim(a: &Ordinal, b: &Ordinal, fuel: Fuel) -> Verdict {
    let (fwd, s1) = deepened(fuel.0, |m| leq_m(a, b, m));
    if fwd.is_refuted() {
        return Verdict::Refuted;
    }
    let (bwd, s2) = deepened(fuel.0, |m| leq_m(b, a, m));
    if bwd.is_refuted() {
        return Verdict::Refuted;
    }
    if fwd.is_proven() && bwd.is_proven() {
        return Verdict::Proven;
    }
    Verdict::Unknown(s1 + s2)
}

/// Check the strict-increase contract on the first `n` elements of a
/// sequence: `seq(k) + 1 <= seq(k+1)` for every `k < n - 1`. Each step gets
/// the full `fuel`. Proven means every step checked out; Refuted means some
/// step is provably out of order; Unknown means at least one step could not
/// be decided (and none refuted).
pub fn check_strict_increase_prefix(seq: &OrdinalSeq, n: usize, fuel: Fuel) -> Verdict {
    let mut spent_total: u64 = 0;
    let mut all_proven = true;
    for k in 0..n.saturating_sub(1) {
        let lo = seq.get(k).succ();
        let hi = seq.get(k + 1);
        let (v, spent) = deepened(fuel.0, |m| leq_m(&lo, &hi, m));
        spent_total += spent;
        match v {
            Verdict::Proven => {}
            Verdict::Refuted => return Verdict::Refuted,
            Verdict::Unknown(_) => all_proven = false,
        }
    }
    if all_proven {
        Verdict::Proven
    } else {
        Verdict::Unknown(spent_total)
    }
}

// ---------------------------------------------------------------------------
// Threshold probes
// ---------------------------------------------------------------------------

/// Verdict for one rung of a probe ladder.
#[derive(Debug, Clone)]
pub struct LevelProbe {
    pub level: CnfForm,
    pub verdict: Verdict,
    pub spent: u64,
}

/// Result of [`probe_ge`]: the ladder of levels tried, each with its verdict
/// and fuel spent, plus a sound summary for the target itself.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub target: CnfForm,
    pub per_level: Vec<LevelProbe>,
    pub summary: Verdict,
    pub spent: u64,
}

/// The ladder of intermediate levels used to probe `o >= target`.
///
/// Finite targets are probed directly. A target `d + n` or `d + w` first
/// climbs the ladder of `d` (with `d` itself as the final rung), then the
/// target. Deeper limits (whose last power is not `w^1`) are approximated
/// from below by their fundamental sequence at indices `1..=k_max`; the
/// target itself is not a rung, so such probes never conclude `Proven` —
/// only refutations and level information come back.
pub fn ladder(target: &CnfForm, k_max: usize) -> Vec<CnfForm> {
    if target.is_zero() {
        return Vec::new();
    }
    if target.as_nat().is_some() {
        return vec![target.clone()];
    }
    if target.is_successor() {
        let mut v = ladder_incl(&target.limit_part(), k_max);
        v.push(target.clone());
        return v;
    }
    if let Some(delta) = target.split_last_omega() {
        let mut v = ladder_incl(&delta, k_max);
        v.push(target.clone());
        return v;
    }
    // Deeper limit: fundamental-sequence rungs only.
    (1..=k_max)
        .map(|k| crate::cnf::fundamental_seq(target, k).expect("deeper limit has a sequence"))
        .collect()
}

fn ladder_incl(d: &CnfForm, k_max: usize) -> Vec<CnfForm> {
    let mut v = ladder(d, k_max);
    if !d.is_zero() && v.last() != Some(d) {
        v.push(d.clone());
    }
    v
}

/// Probe `o >= target` through the ladder of intermediate levels, giving
/// each rung a fresh `fuel` budget. The summary is sound: `Proven` only
/// when the final rung is the target and proves, `Refuted` when any rung
/// refutes (rungs sit at or below the target).
pub fn probe_ge(o: &Ordinal, target: &CnfForm, fuel: Fuel, k_max: usize) -> ProbeReport {
    let levels = ladder(target, k_max);
    let mut per_level = Vec::new();
    let mut total: u64 = 0;
    let mut any_refuted = false;
    for lv in &levels {
        let (v, spent) = deepened(fuel.0, |m| probe_core(o, lv, m));
        total += spent;
        per_level.push(LevelProbe { level: lv.clone(), verdict: v, spent });
        if v.is_refuted() {
            any_refuted = true;
            break;
        }
    }
    let summary = if target.is_zero() {
        Verdict::Proven
    } else if any_refuted {
        Verdict::Refuted
    } else if levels.last() == Some(target) {
        per_level.last().map(|l| l.verdict).unwrap_or(Verdict::Unknown(0))
    } else {
        Verdict::Unknown(total)
    };
    ProbeReport { target: target.clone(), per_level, summary, spent: total }
}

/// One bounded attempt at `o >= t`.
fn probe_core(o0: &Ordinal, t0: &CnfForm, meter: &mut Meter) -> Verdict {
    let mut o = o0.clone();
    let mut t = t0.clone();
    loop {
        if t.is_zero() {
            return Verdict::Proven;
        }
        if !meter.tick() {
            return Verdict::pending();
        }
        if let Some(ann) = o.annotation() {
            return if cnf_compare(&ann, &t) != Ordering::Less {
                Verdict::Proven
            } else {
                Verdict::Refuted
            };
        }
        match o.classify() {
            Classification::IsZero => return Verdict::Refuted,
            Classification::IsSucc(p) => {
                // x+1 >= t+1 iff x >= t; and x+1 >= lambda iff x >= lambda
                // for limit lambda (a limit below a successor is below its
                // predecessor).
                if t.is_successor() {
                    t = t.pred();
                }
                o = p;
            }
            Classification::IsLim(f) => {
                if t.as_nat().is_some() {
                    // A limit dominates every finite target.
                    return Verdict::Proven;
                }
                if t.is_successor() {
                    // Positive i: an element f(i) >= t pushes the limit over.
                    // Negative: o <= t-1 proven bounds o strictly below t.
                    let tp = embed(&t.pred());
                    let target = t.clone();
                    return dovetail(
                        meter,
                        &|round| round + 2,
                        &|id, v| match (id, v) {
                            (0, Verdict::Proven) => Some(Verdict::Refuted),
                            (_, Verdict::Proven) => Some(Verdict::Proven),
                            _ => None,
                        },
                        &mut |id, m| {
                            if id == 0 {
                                leq_m(&o, &tp, m)
                            } else {
                                probe_core(&f.get(id - 1), &target, m)
                            }
                        },
                    );
                }
                if let Some(delta) = t.split_last_omega() {
                    // o >= d + w  iff  some element reaches d: elements grow
                    // strictly, so f(m) >= d gives f(m+k) >= d+k for all k.
                    let d_tree = embed(&delta);
                    return dovetail(
                        meter,
                        &|round| round + 2,
                        &|id, v| match (id, v) {
                            (0, Verdict::Proven) => Some(Verdict::Refuted),
                            (_, Verdict::Proven) => Some(Verdict::Proven),
                            _ => None,
                        },
                        &mut |id, m| {
                            if id == 0 {
                                leq_m(&o, &d_tree, m)
                            } else {
                                probe_core(&f.get(id - 1), &delta, m)
                            }
                        },
                    );
                }
                // Deeper limit target: refutation only, via o+1 <= t.
                let t_tree = embed(&t);
                let so = o.succ();
                return dovetail(
                    meter,
                    &|_| 1,
                    &|_, v| match v {
                        Verdict::Proven => Some(Verdict::Refuted),
                        _ => None,
                    },
                    &mut |_, m| leq_m(&so, &t_tree, m),
                );
            }
        }
    }
}
