//! Binary sequences as semidecidable propositions, jump encodings into
//! ordinal sequences, and decidability witnesses with conjunction and
//! disjunction combinators.
//!
//! A [`BitSeq`] `s` stands for the proposition "some bit of `s` is 1" —
//! positively verifiable by scanning, but not refutable in general. A
//! [`DecWitness`] `(level, ordinal)` stands for the proposition
//! `ordinal >= level`; the witness constructions here keep the two readings
//! aligned.
//!
//! Rounding normalization. Probing a witness works in the zero-or-limit
//! world, where the minimum/maximum constructions are exact:
//!
//! * a zero-or-limit level `L` satisfies `y >= L  iff  round_down(y) >= L`
//!   (a finite successor tail cannot bridge up to a limit), and
//! * a level `d + 1` with `d` zero-or-limit satisfies
//!   `y >= d + 1  iff  round_up(y) >= d + w` (checking both directions for
//!   successor and limit `y` separately; strictly increasing sequences make
//!   the limit case work),
//! * a level `d + n` with `n >= 2` first translates the witness down the
//!   finite tail: with `y = c + m` (`c` zero-or-limit), the ordinal
//!   `y' = c + (m - (n-1))` when `m >= n - 1`, and `y' = c` otherwise,
//!   satisfies `y >= d + n  iff  y' >= d + 1` exactly, finite-part
//!   case analysis on `c` against `d`.
//!
//! Composing the three gives, for every level, a subject and a
//! zero-or-limit target whose probe is equivalent to the stored
//! proposition.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::arith::{add, round_down, round_up, split};
use crate::cnf::{cnf_compare, embed, CnfForm};
use crate::engine::{probe_ge, Fuel, ProbeReport};
use crate::minmax::{lim_max, lim_min};
use crate::ordinal::{Classification, FinitenessResult, Ordinal, OrdinalSeq};

// ---------------------------------------------------------------------------
// Binary sequences
// ---------------------------------------------------------------------------

struct BitSeqInner {
    gen: Box<dyn Fn(u64) -> bool + Send + Sync>,
    memo: Mutex<HashMap<u64, bool>>,
    /// `Some((from, val))` certifies that every bit at index `>= from`
    /// equals `val`. Only constructors that can actually promise this set
    /// it; opaque generators stay uncertified.
    stable: Option<(u64, bool)>,
}

/// A memoized total binary sequence, read as the proposition
/// "some bit is 1".
#[derive(Clone)]
pub struct BitSeq(Arc<BitSeqInner>);

impl BitSeq {
    /// Wrap an opaque generator. No eventual-constancy certificate.
    pub fn from_fn(f: impl Fn(u64) -> bool + Send + Sync + 'static) -> BitSeq {
        BitSeq(Arc::new(BitSeqInner {
            gen: Box::new(f),
            memo: Mutex::new(HashMap::new()),
            stable: None,
        }))
    }

    /// A sequence that follows `prefix` and then stays at `tail` forever.
    pub fn eventually(prefix: Vec<bool>, tail: bool) -> BitSeq {
        let from = prefix.len() as u64;
        BitSeq(Arc::new(BitSeqInner {
            gen: Box::new(move |i| prefix.get(i as usize).copied().unwrap_or(tail)),
            memo: Mutex::new(HashMap::new()),
            stable: Some((from, tail)),
        }))
    }

    /// The constant sequence.
    pub fn constant(bit: bool) -> BitSeq {
        BitSeq::eventually(Vec::new(), bit)
    }

    /// A generator together with a caller-supplied stability certificate:
    /// every bit at index `>= from` must equal `val`.
    pub(crate) fn with_stability(
        f: impl Fn(u64) -> bool + Send + Sync + 'static,
        from: u64,
        val: bool,
    ) -> BitSeq {
        BitSeq(Arc::new(BitSeqInner {
            gen: Box::new(f),
            memo: Mutex::new(HashMap::new()),
            stable: Some((from, val)),
        }))
    }

    /// Parse the textual literal form: a finite 0/1 prefix followed by
    /// `:zeros` or `:ones` (for example `001:zeros`).
    pub fn parse_literal(text: &str) -> Result<BitSeq, String> {
        let (prefix, suffix) = text
            .split_once(':')
            .ok_or_else(|| "bit sequence literal needs a `:zeros` or `:ones` suffix".to_string())?;
        let tail = match suffix {
            "zeros" => false,
            "ones" => true,
            other => return Err(format!("unknown suffix `:{other}` (expected `:zeros` or `:ones`)")),
        };
        let bits = prefix
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid character `{other}` at position {i} (expected 0 or 1)")),
            })
            .collect::<Result<Vec<bool>, String>>()?;
        Ok(BitSeq::eventually(bits, tail))
    }

    /// The bit at index `i`, memoized.
    pub fn get(&self, i: u64) -> bool {
        if let Some((from, val)) = self.0.stable {
            if i >= from {
                return val;
            }
        }
        if let Some(&b) = self.0.memo.lock().unwrap().get(&i) {
            return b;
        }
        let b = (self.0.gen)(i);
        *self.0.memo.lock().unwrap().entry(i).or_insert(b) // first write wins
    }

    /// The first index `< bound` holding a 1, by scanning.
    pub fn first_one_within(&self, bound: u64) -> Option<u64> {
        (0..bound).find(|&i| self.get(i))
    }

    /// Certified answer to "where is the first 1, over the whole sequence?"
    ///
    /// `None`: the sequence carries no stability certificate, so no finite
    /// scan can answer. `Some(Some(i))`: the first 1 is at index `i`.
    /// `Some(None)`: certified all-zero.
    pub fn first_one_certain(&self) -> Option<Option<u64>> {
        let (from, val) = self.0.stable?;
        if let Some(i) = self.first_one_within(from) {
            return Some(Some(i));
        }
        Some(if val { Some(from) } else { None })
    }

    /// Whether this sequence certifies eventual constancy.
    pub fn is_certified(&self) -> bool {
        self.0.stable.is_some()
    }

    /// The raw stability certificate, when one is attached.
    pub(crate) fn stability(&self) -> Option<(u64, bool)> {
        self.0.stable
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = (0..8).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        match self.0.stable {
            Some((from, val)) => {
                write!(f, "BitSeq({bits}..., ={} from {from})", if val { 1 } else { 0 })
            }
            None => write!(f, "BitSeq({bits}...)"),
        }
    }
}

// ---------------------------------------------------------------------------
// Jump encodings
// ---------------------------------------------------------------------------

fn jump_to(s: &BitSeq, target: Ordinal) -> OrdinalSeq {
    let s = s.clone();
    OrdinalSeq::new(move |n| {
        if n == 0 {
            return Ordinal::zero();
        }
        let n = n as u64;
        // Element n is `target + (n - 1 - i)` once the first 1 sits at
        // index i < n, and just `n` while no 1 has appeared. Each element
        // is derived independently so the sequence never references itself.
        match s.first_one_within(n) {
            Some(i) => add(&target, &Ordinal::from_nat(n - 1 - i)),
            None => Ordinal::from_nat(n),
        }
    })
}

/// The jump of `s`: counts upward until the first 1, jumps to `w` there,
/// and keeps counting. Its limit is `w` when `s` is all-zero and `w*2`
/// otherwise, which makes "some bit is 1" an ordinal-threshold question.
pub fn jump(s: &BitSeq) -> OrdinalSeq {
    jump_to(s, Ordinal::omega())
}

/// As [`jump`], but jumping to `w*2`, for thresholds one limit higher.
pub fn double_jump(s: &BitSeq) -> OrdinalSeq {
    jump_to(s, embed(&CnfForm::from_terms(vec![(CnfForm::nat(1), 2)]).unwrap()))
}

/// Decode an ordinal sequence back into bits: bit `n` is 1 exactly when
/// element `n` is infinite.
pub fn unjump(t: &OrdinalSeq) -> BitSeq {
    let t = t.clone();
    BitSeq::from_fn(move |i| t.get(i as usize).decide_finite() == FinitenessResult::Infinite)
}

// ---------------------------------------------------------------------------
// Decidability witnesses
// ---------------------------------------------------------------------------

/// A witness that some proposition is decidable at ordinal `level`: the
/// proposition it represents is `ordinal >= level`.
#[derive(Clone)]
pub struct DecWitness {
    pub level: CnfForm,
    pub ordinal: Ordinal,
}

impl fmt::Debug for DecWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecWitness(level {}, ordinal {})", self.level.print(), self.ordinal.describe())
    }
}

/// Errors from witness combinators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemidecError {
    /// The two witnesses carry different levels.
    LevelMismatch { left: CnfForm, right: CnfForm },
    /// The level (or witness shape) is outside what the operation supports.
    UnsupportedLevel { level: CnfForm, why: &'static str },
}

impl fmt::Display for SemidecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemidecError::LevelMismatch { left, right } => {
                write!(f, "witness levels differ: {} vs {}", left.print(), right.print())
            }
            SemidecError::UnsupportedLevel { level, why } => {
                write!(f, "unsupported level {}: {why}", level.print())
            }
        }
    }
}

impl std::error::Error for SemidecError {}

/// Translate a witness for level `d + n` (`n >= 1`) into one for `d + 1`
/// by cancelling `n - 1` from the finite tail; exact, see the module notes.
fn translate_to_one(x: &Ordinal, n: u64) -> Ordinal {
    debug_assert!(n >= 1);
    let parts = split(x);
    if parts.finite_part >= n - 1 {
        add(&parts.limit_part, &Ordinal::from_nat(parts.finite_part - (n - 1)))
    } else {
        parts.limit_part
    }
}

/// The zero-or-limit subject equivalent to `x >= level`, paired with the
/// zero-or-limit level it should be compared against.
fn normalize_subject(x: &Ordinal, level: &CnfForm) -> (Ordinal, CnfForm) {
    let n = level.finite_part();
    if n == 0 {
        (round_down(x), level.clone())
    } else {
        (round_up(&translate_to_one(x, n)), level.round_up())
    }
}

impl DecWitness {
    /// Probe the represented proposition `ordinal >= level`, normalizing
    /// into the zero-or-limit world first (exact, per the module notes).
    pub fn probe(&self, fuel: Fuel, k_max: usize) -> ProbeReport {
        let (subject, target) = normalize_subject(&self.ordinal, &self.level);
        probe_ge(&subject, &target, fuel, k_max)
    }
}

/// Build the canonical `w+1`-witness of "some bit of `s` is 1": the limit
/// of the jump sequence, which is `w` when the proposition fails and `w*2`
/// when it holds. Certified eventually-constant inputs annotate the limit.
pub fn semidec_to_witness(s: &BitSeq) -> DecWitness {
    let seq = jump(s);
    let ordinal = match s.first_one_certain() {
        Some(Some(_)) => {
            Ordinal::limit_annotated(seq, CnfForm::from_terms(vec![(CnfForm::nat(1), 2)]).unwrap())
        }
        Some(None) => Ordinal::limit_annotated(seq, CnfForm::omega()),
        None => Ordinal::limit(seq),
    };
    DecWitness { level: level_w_plus_1(), ordinal }
}

fn level_w_plus_1() -> CnfForm {
    CnfForm::from_terms(vec![(CnfForm::nat(1), 1), (CnfForm::zero(), 1)]).unwrap()
}

fn level_w_times_2() -> CnfForm {
    CnfForm::from_terms(vec![(CnfForm::nat(1), 2)]).unwrap()
}

/// Recover a bit sequence from a `w+1`-level witness (or its rounded
/// `w*2` normal position), by case distinction on the witness ordinal.
pub fn witness_to_semidec(w: &DecWitness) -> Result<BitSeq, SemidecError> {
    let at_w1 = w.level == level_w_plus_1();
    let at_w2 = w.level == level_w_times_2();
    if !at_w1 && !at_w2 {
        return Err(SemidecError::UnsupportedLevel {
            level: w.level.clone(),
            why: "expected level w+1 (or its rounded form w*2)",
        });
    }
    match w.ordinal.classify() {
        Classification::IsZero => Ok(BitSeq::constant(false)),
        Classification::IsSucc(y) => {
            if at_w2 {
                // y+1 >= w*2 iff y >= w*2, which finiteness alone cannot
                // settle; a rounded witness is zero-or-limit by contract.
                return Err(SemidecError::UnsupportedLevel {
                    level: w.level.clone(),
                    why: "a successor ordinal is not in rounded normal position",
                });
            }
            // y+1 >= w+1 iff y >= w iff y is infinite.
            Ok(BitSeq::constant(y.decide_finite() == FinitenessResult::Infinite))
        }
        Classification::IsLim(f) => Ok(unjump(&f)),
    }
}

/// Conjunction: a witness for `P and Q` from witnesses for `P` and `Q` at
/// a shared level, via the minimum of the normalized ordinals.
pub fn conj_witness(p: &DecWitness, q: &DecWitness) -> Result<DecWitness, SemidecError> {
    if cnf_compare(&p.level, &q.level) != std::cmp::Ordering::Equal {
        return Err(SemidecError::LevelMismatch { left: p.level.clone(), right: q.level.clone() });
    }
    let (x, _) = normalize_subject(&p.ordinal, &p.level);
    let (y, _) = normalize_subject(&q.ordinal, &q.level);
    Ok(DecWitness { level: p.level.clone(), ordinal: lim_min(&x, &y) })
}

/// Disjunction: a witness for `P or Q` at a shared level of shape
/// `w*k + n`, via the maximum of the normalized ordinals. The shape
/// restriction keeps the maximum threshold property exact: the normalized
/// level is then `w*j`, where "max reaches it iff either side does" holds.
pub fn disj_witness(p: &DecWitness, q: &DecWitness) -> Result<DecWitness, SemidecError> {
    if cnf_compare(&p.level, &q.level) != std::cmp::Ordering::Equal {
        return Err(SemidecError::LevelMismatch { left: p.level.clone(), right: q.level.clone() });
    }
    let shape_ok = p.level.terms().iter().all(|(e, _)| matches!(e.as_nat(), Some(0) | Some(1)));
    if !shape_ok {
        return Err(SemidecError::UnsupportedLevel {
            level: p.level.clone(),
            why: "disjunction needs a level of shape w*k + n",
        });
    }
    let (x, _) = normalize_subject(&p.ordinal, &p.level);
    let (y, _) = normalize_subject(&q.ordinal, &q.level);
    Ok(DecWitness { level: p.level.clone(), ordinal: lim_max(&x, &y) })
}
