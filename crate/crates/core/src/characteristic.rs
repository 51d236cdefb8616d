//! Characteristic ordinals of countable families of semidecidable
//! propositions, with the witness constructions for countable meets,
//! joins, and exists-forall statements, plus a small registry of named
//! example families (twin primes among them).
//!
//! A [`PropFamily`] is a total map from naturals to [`BitSeq`]s; member
//! `i` stands for the proposition "some bit of member `i` is 1". The
//! stage-`n` characteristic ordinal is
//!
//! ```text
//! psi_n(P) = Lim(k -> w * t_k + k)
//! ```
//!
//! where `t_k` counts how many of the first `n` members have shown a 1
//! at some index `<= k` (the cumulative closure of each member, so `t`
//! is nondecreasing in `k`). Its value is `w * (T + 1)` with `T` the
//! number of true members among the first `n`, and `w` when `T = 0` or
//! `n = 0`. The full characteristic
//!
//! ```text
//! psi(P) = Lim(n -> psi_n(P) + n)
//! ```
//!
//! therefore has value `w^2` when infinitely many members are true, and
//! `w * (|S| + 2)` when exactly the finite set `S` of members is true
//! (the `+ n` summand contributes one extra `w`). These closed forms
//! drive the decidability readings:
//!
//! * `exists i. P_i  iff  psi(P) >= w * 3` — one true member already
//!   lifts the value from `w * 2` to `w * 3`;
//! * `forall i. P_i  iff  psi(normalize_down(P)) >= w^2` — after the
//!   downward normalization the true members form a prefix, which is
//!   infinite exactly when every member is true;
//! * `exists m. forall n. Q(n, m)  iff
//!   Lim(m -> psi(normalize_down(column m)) + m) >= w^2 + w` — some
//!   element must pass `w^2`, which the engine reaches through its
//!   limit-target rewrite.
//!
//! Value annotations are attached only when they are certain: element
//! ordinals always carry them (their values are computed numbers), a
//! stage annotation needs every inspected member to carry a stability
//! certificate, and an outer annotation needs a [`TrueProfile`] — a
//! trusted description of which members are true, supplied by the
//! built-in family constructors and cross-checked in tests.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::arith::{add, mul};
use crate::cnf::{cnf_add, CnfForm};
use crate::ordinal::{Ordinal, OrdinalSeq};
use crate::semidec::{BitSeq, DecWitness};

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// Which members of a family are true ("true" meaning the member's bit
/// sequence contains a 1). A profile is a trusted assertion: the
/// constructors in this module only attach one they can justify, and
/// annotations derived from a wrong profile would be unsound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrueProfile {
    /// Every member is true.
    All,
    /// Exactly the members at indices `>= j` are true.
    UpFrom(u64),
    /// Exactly the members in the (finite) set are true.
    Finite(BTreeSet<u64>),
}

struct PropFamilyInner {
    member_fn: Box<dyn Fn(u64) -> BitSeq + Send + Sync>,
    memo: Mutex<HashMap<u64, BitSeq>>,
    label: String,
    profile: Option<TrueProfile>,
}

/// A countable family of semidecidable propositions: a total, memoized
/// map from member index to [`BitSeq`].
#[derive(Clone)]
pub struct PropFamily {
    inner: Arc<PropFamilyInner>,
}

impl PropFamily {
    /// A family from an arbitrary member generator, with no profile.
    pub fn new(label: &str, member_fn: impl Fn(u64) -> BitSeq + Send + Sync + 'static) -> PropFamily {
        PropFamily {
            inner: Arc::new(PropFamilyInner {
                member_fn: Box::new(member_fn),
                memo: Mutex::new(HashMap::new()),
                label: label.to_string(),
                profile: None,
            }),
        }
    }

    /// The same members with a different (trusted) profile attached.
    pub fn reprofiled(&self, profile: Option<TrueProfile>) -> PropFamily {
        let src = self.clone();
        PropFamily {
            inner: Arc::new(PropFamilyInner {
                member_fn: Box::new(move |n| src.member(n)),
                memo: Mutex::new(HashMap::new()),
                label: self.inner.label.clone(),
                profile,
            }),
        }
    }

    /// Member `n`, memoized so repeated access shares bit memoization.
    pub fn member(&self, n: u64) -> BitSeq {
        let mut memo = self.inner.memo.lock().unwrap();
        memo.entry(n).or_insert_with(|| (self.inner.member_fn)(n)).clone()
    }

    /// The family's display label.
    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// The trusted truth profile, when one was attached.
    pub fn profile(&self) -> Option<&TrueProfile> {
        self.inner.profile.as_ref()
    }
}

impl fmt::Debug for PropFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PropFamily")
            .field("label", &self.inner.label)
            .field("profile", &self.inner.profile)
            .finish_non_exhaustive()
    }
}

struct PropFamily2DInner {
    member_fn: Box<dyn Fn(u64, u64) -> BitSeq + Send + Sync>,
    columns: Mutex<HashMap<u64, PropFamily>>,
    column_profile: Box<dyn Fn(u64) -> Option<TrueProfile> + Send + Sync>,
    label: String,
    monotone: bool,
}

/// A doubly indexed family `Q(n, m)` of semidecidable propositions. The
/// `monotone` flag asserts upward closure in the second argument
/// (`Q(n, m)` true implies `Q(n, m + 1)` true); the exists-forall
/// witness is only sound under that assertion and refuses to build
/// without it.
#[derive(Clone)]
pub struct PropFamily2D {
    inner: Arc<PropFamily2DInner>,
}

impl PropFamily2D {
    /// A two-dimensional family from an arbitrary generator; columns get
    /// no profiles.
    pub fn new(
        label: &str,
        monotone: bool,
        member_fn: impl Fn(u64, u64) -> BitSeq + Send + Sync + 'static,
    ) -> PropFamily2D {
        PropFamily2D::with_column_profiles(label, monotone, member_fn, |_| None)
    }

    /// A two-dimensional family whose columns carry (trusted) profiles.
    pub fn with_column_profiles(
        label: &str,
        monotone: bool,
        member_fn: impl Fn(u64, u64) -> BitSeq + Send + Sync + 'static,
        column_profile: impl Fn(u64) -> Option<TrueProfile> + Send + Sync + 'static,
    ) -> PropFamily2D {
        PropFamily2D {
            inner: Arc::new(PropFamily2DInner {
                member_fn: Box::new(member_fn),
                columns: Mutex::new(HashMap::new()),
                column_profile: Box::new(column_profile),
                label: label.to_string(),
                monotone,
            }),
        }
    }

    /// Member `(n, m)`.
    pub fn member(&self, n: u64, m: u64) -> BitSeq {
        self.column(m).member(n)
    }

    /// Column `m` as a one-dimensional family (memoized).
    pub fn column(&self, m: u64) -> PropFamily {
        let mut columns = self.inner.columns.lock().unwrap();
        columns
            .entry(m)
            .or_insert_with(|| {
                let this = self.clone();
                let label = format!("{}[m={}]", self.inner.label, m);
                let fam = PropFamily::new(&label, move |n| (this.inner.member_fn)(n, m));
                fam.reprofiled((self.inner.column_profile)(m))
            })
            .clone()
    }

    /// Whether upward closure in the second argument is asserted.
    pub fn monotone(&self) -> bool {
        self.inner.monotone
    }

    /// The family's display label.
    pub fn label(&self) -> &str {
        &self.inner.label
    }
}

impl fmt::Debug for PropFamily2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PropFamily2D")
            .field("label", &self.inner.label)
            .field("monotone", &self.inner.monotone)
            .finish_non_exhaustive()
    }
}

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

/// Downward normalization: member `i` of the result is the finite
/// conjunction of members `0..=i`, realized on bits as
/// "bit `k` of `Q_i` = 1 iff every `P_j` (`j <= i`) has a 1 at some
/// index `<= k`". Meets are preserved: all `Q_i` are true exactly when
/// all `P_i` are, and the true members of the result form a prefix.
pub fn normalize_down(p: &PropFamily) -> PropFamily {
    let src = p.clone();
    let profile = p.profile().map(|pr| match pr {
        TrueProfile::All => TrueProfile::All,
        TrueProfile::UpFrom(0) => TrueProfile::All,
        TrueProfile::UpFrom(_) => TrueProfile::Finite(BTreeSet::new()),
        TrueProfile::Finite(s) => {
            let mut run = BTreeSet::new();
            let mut i = 0u64;
            while s.contains(&i) {
                run.insert(i);
                i += 1;
            }
            TrueProfile::Finite(run)
        }
    });
    let label = format!("down({})", p.label());
    let fam = PropFamily::new(&label, move |i| {
        let sources: Vec<BitSeq> = (0..=i).map(|j| src.member(j)).collect();
        conjunction_bits(sources)
    });
    fam.reprofiled(profile)
}

/// Upward normalization: member `i` of the result is the bitwise OR of
/// members `0..=i`. Joins are preserved: some `Q_i` is true exactly
/// when some `P_i` is, and the true members of the result form an
/// upward-closed tail.
pub fn normalize_up(p: &PropFamily) -> PropFamily {
    let src = p.clone();
    let profile = p.profile().map(|pr| match pr {
        TrueProfile::All => TrueProfile::All,
        TrueProfile::UpFrom(j) => TrueProfile::UpFrom(*j),
        TrueProfile::Finite(s) => match s.iter().next() {
            Some(&first) => TrueProfile::UpFrom(first),
            None => TrueProfile::Finite(BTreeSet::new()),
        },
    });
    let label = format!("up({})", p.label());
    let fam = PropFamily::new(&label, move |i| {
        let sources: Vec<BitSeq> = (0..=i).map(|j| src.member(j)).collect();
        disjunction_bits(sources)
    });
    fam.reprofiled(profile)
}

/// The conjunction member: bit `k` is 1 iff every source has a 1 at
/// some index `<= k`. When every source carries a certificate, the
/// result does too (all-ones from the largest certain first-1, or
/// constant 0 when some source is certainly all-zero).
fn conjunction_bits(sources: Vec<BitSeq>) -> BitSeq {
    let mut latest_first_one = 0u64;
    let mut all_certain = true;
    for s in &sources {
        match s.first_one_certain() {
            Some(Some(i)) => latest_first_one = latest_first_one.max(i),
            Some(None) => return BitSeq::constant(false),
            None => {
                all_certain = false;
                break;
            }
        }
    }
    let gen_sources = sources.clone();
    let gen = move |k: u64| {
        gen_sources
            .iter()
            .all(|s| s.first_one_within(k + 1).is_some())
    };
    if all_certain {
        BitSeq::with_stability(gen, latest_first_one, true)
    } else {
        BitSeq::from_fn(gen)
    }
}

/// The disjunction member: bit `k` is the OR of the sources' bits at
/// `k`. A certificate survives when the tails combine cleanly (some
/// source is eventually all-one, or every source is eventually
/// all-zero).
fn disjunction_bits(sources: Vec<BitSeq>) -> BitSeq {
    let mut all_zero_tail_from: Option<u64> = Some(0);
    let mut one_tail_from: Option<u64> = None;
    for s in &sources {
        match s.stability() {
            Some((from, true)) => {
                one_tail_from = Some(one_tail_from.map_or(from, |best: u64| best.min(from)));
                all_zero_tail_from = None;
            }
            Some((from, false)) => {
                if one_tail_from.is_none() {
                    all_zero_tail_from = all_zero_tail_from.map(|best| best.max(from));
                }
            }
            None => {
                all_zero_tail_from = None;
            }
        }
    }
    let gen_sources = sources.clone();
    let gen = move |k: u64| gen_sources.iter().any(|s| s.get(k));
    if let Some(from) = one_tail_from {
        BitSeq::with_stability(gen, from, true)
    } else if let Some(from) = all_zero_tail_from {
        BitSeq::with_stability(gen, from, false)
    } else {
        BitSeq::from_fn(gen)
    }
}

// ---------------------------------------------------------------------------
// Characteristic ordinals
// ---------------------------------------------------------------------------

/// `w * c` as a normal form.
fn omega_times(c: u64) -> CnfForm {
    if c == 0 {
        CnfForm::zero()
    } else {
        CnfForm::power(CnfForm::nat(1), c)
    }
}

/// `w^2` as a normal form.
fn omega_squared() -> CnfForm {
    CnfForm::power(CnfForm::nat(2), 1)
}

/// The stage-`n` characteristic ordinal of a family:
/// `Lim(k -> w * t_k + k)` with `t_k` the number of the first `n`
/// members showing a 1 at some index `<= k`; `n = 0` gives `w`.
///
/// The stage is annotated with its value `w * (T + 1)` exactly when all
/// `n` inspected members carry stability certificates (`T` of them
/// certainly true).
pub fn psi_n(p: &PropFamily, n: u64) -> Ordinal {
    if n == 0 {
        return Ordinal::omega();
    }
    let members: Vec<BitSeq> = (0..n).map(|i| p.member(i)).collect();

    let mut true_count = 0u64;
    let mut all_certain = true;
    for s in &members {
        match s.first_one_certain() {
            Some(Some(_)) => true_count += 1,
            Some(None) => {}
            None => {
                all_certain = false;
                break;
            }
        }
    }

    let seq_members = members;
    let seq = OrdinalSeq::new(move |k| {
        let t = seq_members
            .iter()
            .filter(|s| s.first_one_within(k as u64 + 1).is_some())
            .count() as u64;
        add(
            &mul(&Ordinal::omega(), &Ordinal::from_nat(t)),
            &Ordinal::from_nat(k as u64),
        )
    });

    if all_certain {
        Ordinal::limit_annotated(seq, omega_times(true_count + 1))
    } else {
        Ordinal::limit(seq)
    }
}

/// The characteristic ordinal of a family: `Lim(n -> psi_n(P) + n)`,
/// strictly increasing through the `+ n` summand. Annotated from the
/// family's profile when one is attached: `w^2` when infinitely many
/// members are true, `w * (|S| + 2)` when exactly the members in `S`
/// are.
pub fn psi(p: &PropFamily) -> Ordinal {
    let fam = p.clone();
    let seq = OrdinalSeq::new(move |n| {
        add(&psi_n(&fam, n as u64), &Ordinal::from_nat(n as u64))
    });
    match p.profile() {
        Some(TrueProfile::All) | Some(TrueProfile::UpFrom(_)) => {
            Ordinal::limit_annotated(seq, omega_squared())
        }
        Some(TrueProfile::Finite(s)) => {
            Ordinal::limit_annotated(seq, omega_times(s.len() as u64 + 2))
        }
        None => Ordinal::limit(seq),
    }
}

// ---------------------------------------------------------------------------
// Witnesses
// ---------------------------------------------------------------------------

/// Failures of the witness constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharError {
    /// The exists-forall construction needs the monotone flag.
    NotMonotone,
}

impl fmt::Display for CharError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharError::NotMonotone => write!(
                f,
                "the exists-forall witness needs a family asserted monotone in its second argument"
            ),
        }
    }
}

impl std::error::Error for CharError {}

/// The countable-meet witness: "every member of `P` is true" holds
/// exactly when the witness ordinal reaches `w^2`.
pub fn forall_witness(p: &PropFamily) -> DecWitness {
    DecWitness {
        level: omega_squared(),
        ordinal: psi(&normalize_down(p)),
    }
}

/// The countable-join witness: "some member of `P` is true" holds
/// exactly when the witness ordinal reaches `w * 3`.
pub fn exists_witness(p: &PropFamily) -> DecWitness {
    DecWitness {
        level: omega_times(3),
        ordinal: psi(p),
    }
}

/// The negation witness of a single semidecidable proposition: "no bit
/// of `s` is 1" is the countable meet of the decidable propositions
/// "bit `n` of `s` is 0", so it is the forall witness of the
/// pointwise-complement family. When `s` is certified, the normalized
/// family's profile is computed directly from the certificate.
pub fn negation_witness(s: &BitSeq) -> DecWitness {
    let src = s.clone();
    let fam = PropFamily::new("negation", move |n| BitSeq::constant(!src.get(n)));
    match s.first_one_certain() {
        Some(None) => {
            // No bit is 1: every complement member is true.
            DecWitness {
                level: omega_squared(),
                ordinal: psi(&normalize_down(&fam).reprofiled(Some(TrueProfile::All))),
            }
        }
        Some(Some(i)) => {
            // First 1 at index i: after downward normalization the true
            // members are exactly the prefix 0..i.
            let run: BTreeSet<u64> = (0..i).collect();
            DecWitness {
                level: omega_squared(),
                ordinal: psi(&normalize_down(&fam).reprofiled(Some(TrueProfile::Finite(run)))),
            }
        }
        None => forall_witness(&fam),
    }
}

/// The exists-forall witness of a two-dimensional family: level
/// `w^2 + w`, ordinal `Lim(m -> psi(normalize_down(column m)) + m)`.
/// Each column is normalized downward so that its characteristic
/// reaches `w^2` exactly when the whole column is true; the monotone
/// flag makes the element values nondecreasing, and the `+ m` summand
/// makes the sequence strictly increasing. The outer limit is left
/// unannotated: deciding it is exactly the probe's job, through the
/// engine's limit-target rewrite into the annotated elements.
pub fn exists_forall_witness(f: &PropFamily2D) -> Result<DecWitness, CharError> {
    if !f.monotone() {
        return Err(CharError::NotMonotone);
    }
    let fam = f.clone();
    let seq = OrdinalSeq::new(move |m| {
        add(
            &psi(&normalize_down(&fam.column(m as u64))),
            &Ordinal::from_nat(m as u64),
        )
    });
    Ok(DecWitness {
        level: cnf_add(&omega_squared(), &CnfForm::omega()),
        ordinal: Ordinal::limit(seq),
    })
}

// ---------------------------------------------------------------------------
// Built-in families
// ---------------------------------------------------------------------------

/// The family whose members are all true (every bit 1).
pub fn family_const_true() -> PropFamily {
    PropFamily::new("const-true", |_| BitSeq::constant(true))
        .reprofiled(Some(TrueProfile::All))
}

/// The family whose members are all false (every bit 0).
pub fn family_const_false() -> PropFamily {
    PropFamily::new("const-false", |_| BitSeq::constant(false))
        .reprofiled(Some(TrueProfile::Finite(BTreeSet::new())))
}

/// The family whose only true member is the one at index `j`.
pub fn family_single_true(j: u64) -> PropFamily {
    let label = format!("single-true({})", j);
    let fam = PropFamily::new(&label, move |n| BitSeq::constant(n == j));
    fam.reprofiled(Some(TrueProfile::Finite(BTreeSet::from([j]))))
}

/// Primality by sieve, shared by all members of a twin-prime family.
fn prime_sieve(upto: u64) -> Vec<bool> {
    let n = upto as usize + 1;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    if n > 1 {
        sieve[1] = false;
    }
    let mut i = 2usize;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
}

/// The bounded twin-prime family: member `n` has bit `i` = 1 iff
/// `i <= cap`, `i > n`, and both `i` and `i + 2` are prime. Member `n`
/// is therefore true exactly when some twin-prime lower member lies in
/// `(n, cap]`, so the true members form the prefix `0..L` with `L` the
/// largest such lower member (empty when the cap admits none).
pub fn family_twin_primes(cap: u64) -> PropFamily {
    let sieve = Arc::new(prime_sieve(cap + 2));
    let is_twin = {
        let sieve = sieve.clone();
        move |i: u64| i <= cap && sieve[i as usize] && sieve[i as usize + 2]
    };
    let largest = (0..=cap).rev().find(|&i| is_twin(i));
    let profile = match largest {
        Some(l) => TrueProfile::Finite((0..l).collect()),
        None => TrueProfile::Finite(BTreeSet::new()),
    };
    let label = format!("twin-primes({})", cap);
    let fam = PropFamily::new(&label, move |n| {
        let is_twin = is_twin.clone();
        BitSeq::with_stability(move |i| i > n && is_twin(i), cap + 1, false)
    });
    fam.reprofiled(Some(profile))
}

/// The two-dimensional threshold family: `Q(n, m)` is true exactly when
/// `m >= m0`, independently of `n`. Columns at and above the threshold
/// are all-true; columns below are all-false. Monotone in `m`.
pub fn family_threshold(m0: u64) -> PropFamily2D {
    let label = format!("threshold({})", m0);
    PropFamily2D::with_column_profiles(
        &label,
        true,
        move |_, m| BitSeq::constant(m >= m0),
        move |m| {
            Some(if m >= m0 {
                TrueProfile::All
            } else {
                TrueProfile::Finite(BTreeSet::new())
            })
        },
    )
}

/// The two-dimensional diagonal family: `Q(n, m)` is true exactly when
/// `n < m`. Every column is true only on a finite prefix, so no column
/// is all-true, while each fixed `n` eventually holds. Monotone in `m`.
pub fn family_diagonal() -> PropFamily2D {
    PropFamily2D::with_column_profiles(
        "diagonal",
        true,
        |n, m| BitSeq::constant(n < m),
        |m| Some(TrueProfile::Finite((0..m).collect())),
    )
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// A named family of either arity, as resolved from registry syntax.
#[derive(Debug, Clone)]
pub enum FamilyKind {
    OneDim(PropFamily),
    TwoDim(PropFamily2D),
}

/// The registry names accepted by [`lookup_family`], for error messages
/// and help text.
pub const FAMILY_NAMES: &[&str] = &[
    "twin-primes(cap)",
    "const-true",
    "const-false",
    "single-true(j)",
    "threshold(m0)",
    "diagonal",
];

/// Resolve registry syntax like `twin-primes(5000)` or `diagonal` to a
/// built-in family. The error text lists the available names.
pub fn lookup_family(text: &str) -> Result<FamilyKind, String> {
    let text = text.trim();
    let (name, arg) = match text.find('(') {
        Some(open) => {
            let inner = text[open..]
                .strip_prefix('(')
                .and_then(|rest| rest.strip_suffix(')'))
                .ok_or_else(|| format!("malformed family argument in `{}`", text))?;
            let value: u64 = inner
                .trim()
                .parse()
                .map_err(|_| format!("family argument in `{}` must be a natural number", text))?;
            (text[..open].trim(), Some(value))
        }
        None => (text, None),
    };
    match (name, arg) {
        ("twin-primes", Some(cap)) => Ok(FamilyKind::OneDim(family_twin_primes(cap))),
        ("const-true", None) => Ok(FamilyKind::OneDim(family_const_true())),
        ("const-false", None) => Ok(FamilyKind::OneDim(family_const_false())),
        ("single-true", Some(j)) => Ok(FamilyKind::OneDim(family_single_true(j))),
        ("threshold", Some(m0)) => Ok(FamilyKind::TwoDim(family_threshold(m0))),
        ("diagonal", None) => Ok(FamilyKind::TwoDim(family_diagonal())),
        ("twin-primes" | "single-true" | "threshold", None) => {
            Err(format!("family `{}` needs a numeric argument", name))
        }
        ("const-true" | "const-false" | "diagonal", Some(_)) => {
            Err(format!("family `{}` takes no argument", name))
        }
        _ => Err(format!(
            "unknown family `{}`; available: {}",
            name,
            FAMILY_NAMES.join(", ")
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{cnf_compare, embed};
    use crate::engine::{bisim, check_strict_increase_prefix, leq, probe_ge, Fuel};
    use crate::ordinal::{Classification, StripCache};

    fn omega_level(k: u64) -> CnfForm {
        omega_times(k)
    }

    #[test]
    fn psi_n_of_the_all_true_family_matches_the_closed_form() {
        let fam = family_const_true();
        for n in 1..=4u64 {
            let stage = psi_n(&fam, n);
            let expected = embed(&omega_times(n + 1));
            assert!(bisim(&stage, &expected, Fuel(10_000)).is_proven(), "n = {}", n);
        }
        let empty_stage = psi_n(&fam, 0);
        assert!(bisim(&empty_stage, &Ordinal::omega(), Fuel(1_000)).is_proven());
        let false_stage = psi_n(&family_const_false(), 3);
        assert!(bisim(&false_stage, &Ordinal::omega(), Fuel(10_000)).is_proven());
    }

    #[test]
    fn one_true_member_lifts_a_stage_past_twice_omega() {
        let stage = psi_n(&family_single_true(2), 5);
        let report = probe_ge(&stage, &omega_level(2), Fuel(10_000), 4);
        assert!(report.summary.is_proven());

        // The same family behind an opaque generator: no certificates, no
        // annotations, so the probe must climb through the stage's elements.
        let opaque = PropFamily::new("opaque single", |n| BitSeq::from_fn(move |_| n == 2));
        let stage = psi_n(&opaque, 5);
        assert!(stage.annotation().is_none());
        let report = probe_ge(&stage, &omega_level(2), Fuel(100_000), 4);
        assert!(report.summary.is_proven());
    }

    #[test]
    fn stages_of_the_all_false_family_never_reach_twice_omega() {
        let fam = family_const_false();
        for n in [1u64, 3, 8] {
            let stage = psi_n(&fam, n);
            let report = probe_ge(&stage, &omega_level(2), Fuel(100_000), 6);
            for level in &report.per_level {
                if cnf_compare(&level.level, &omega_level(2)) != std::cmp::Ordering::Less {
                    assert!(!level.verdict.is_proven(), "n = {}, level {}", n, level.level);
                }
            }
            assert!(!report.summary.is_proven());
        }
    }

    #[test]
    fn psi_values_follow_the_count_of_true_members() {
        let nothing = psi(&family_const_false());
        assert!(bisim(&nothing, &embed(&omega_level(2)), Fuel(10_000)).is_proven());
        let one = psi(&family_single_true(5));
        assert!(bisim(&one, &embed(&omega_level(3)), Fuel(10_000)).is_proven());
        let all = psi(&family_const_true());
        assert!(bisim(&all, &embed(&omega_squared()), Fuel(10_000)).is_proven());
    }

    #[test]
    fn profiles_transform_under_normalization() {
        let down = normalize_down(&family_single_true(0));
        assert_eq!(down.profile(), Some(&TrueProfile::Finite(BTreeSet::from([0]))));
        let down = normalize_down(&family_single_true(2));
        assert_eq!(down.profile(), Some(&TrueProfile::Finite(BTreeSet::new())));
        let down = normalize_down(&family_const_true());
        assert_eq!(down.profile(), Some(&TrueProfile::All));
        let up = normalize_up(&family_single_true(2));
        assert_eq!(up.profile(), Some(&TrueProfile::UpFrom(2)));
        assert!(up.member(1).first_one_within(64).is_none());
        assert!(up.member(2).first_one_within(64).is_some());
        assert!(up.member(7).first_one_within(64).is_some());
    }

    #[test]
    fn normalized_first_hits_are_extremes_of_the_sources() {
        // Member j has its first 1 at index j.
        let staircase = PropFamily::new("staircase", |j| {
            BitSeq::eventually(vec![false; j as usize], true)
        });
        let down = normalize_down(&staircase);
        assert_eq!(down.member(3).first_one_within(16), Some(3));
        assert!(!down.member(3).get(2));
        let up = normalize_up(&staircase);
        assert_eq!(up.member(3).first_one_within(16), Some(0));

        // A certainly-false source wipes out every later conjunction.
        let src = staircase.clone();
        let wiped = PropFamily::new("wiped", move |j| {
            if j == 2 {
                BitSeq::constant(false)
            } else {
                src.member(j)
            }
        });
        let down = normalize_down(&wiped);
        assert!(down.member(1).first_one_within(16).is_some());
        assert_eq!(down.member(4).first_one_within(64), None);
    }

    #[test]
    fn forall_witness_counts_the_true_prefix() {
        // Every member true except the one at index 3: the meet fails, and
        // the witness value is exactly w*5 (prefix of three true members).
        let fam = PropFamily::new("gap at three", |n| BitSeq::constant(n != 3));
        let witness = forall_witness(&fam);
        let report = witness.probe(Fuel(100_000), 6);
        for level in &report.per_level {
            let expect_proven =
                cnf_compare(&level.level, &omega_level(5)) != std::cmp::Ordering::Greater;
            if expect_proven {
                assert!(level.verdict.is_proven(), "level {}", level.level);
            } else {
                assert!(!level.verdict.is_proven(), "level {}", level.level);
            }
        }
        assert!(!report.summary.is_proven());

        // All-true family: every tested level passes.
        let report = forall_witness(&family_const_true()).probe(Fuel(10_000), 6);
        for level in &report.per_level {
            if cnf_compare(&level.level, &omega_squared()) == std::cmp::Ordering::Less {
                assert!(level.verdict.is_proven(), "level {}", level.level);
            }
        }
    }

    #[test]
    fn twin_prime_members_match_trial_division() {
        let fam = family_twin_primes(100);
        assert!(fam.member(0).get(3));
        assert!(fam.member(10).get(11));
        assert!(!fam.member(13).get(13));
        assert!(!fam.member(0).get(2));
        // Largest twin lower member below 100 is 71, so member 70 is true
        // and member 71 is false.
        assert!(fam.member(70).first_one_within(101).is_some());
        assert_eq!(fam.member(71).first_one_within(101), None);
        assert_eq!(fam.profile(), Some(&TrueProfile::Finite((0..71).collect())));

        let report = forall_witness(&fam).probe(Fuel(100_000), 8);
        for level in &report.per_level {
            if cnf_compare(&level.level, &omega_squared()) == std::cmp::Ordering::Less {
                assert!(level.verdict.is_proven(), "level {}", level.level);
            }
        }
    }

    #[test]
    fn exists_witness_tracks_some_member_being_true() {
        let report = exists_witness(&family_single_true(4)).probe(Fuel(10_000), 4);
        assert!(report.summary.is_proven());
        let report = exists_witness(&family_const_true()).probe(Fuel(1_000), 4);
        assert!(report.summary.is_proven());
        let report = exists_witness(&family_const_false()).probe(Fuel(100_000), 4);
        assert!(!report.summary.is_proven());
        assert!(report.summary.is_refuted());
    }

    #[test]
    fn negation_witness_decides_certified_sequences() {
        let none = BitSeq::parse_literal(":zeros").unwrap();
        let report = negation_witness(&none).probe(Fuel(10_000), 6);
        for level in &report.per_level {
            if cnf_compare(&level.level, &omega_squared()) == std::cmp::Ordering::Less {
                assert!(level.verdict.is_proven(), "level {}", level.level);
            }
        }

        let some = BitSeq::parse_literal("001:zeros").unwrap();
        let report = negation_witness(&some).probe(Fuel(10_000), 6);
        for level in &report.per_level {
            let expect_proven =
                cnf_compare(&level.level, &omega_level(4)) != std::cmp::Ordering::Greater;
            assert_eq!(level.verdict.is_proven(), expect_proven, "level {}", level.level);
        }
    }

    #[test]
    fn exists_forall_finds_a_passing_column_of_the_threshold_family() {
        let witness = exists_forall_witness(&family_threshold(5)).unwrap();
        let report = witness.probe(Fuel(100_000), 6);
        let top = cnf_add(&omega_squared(), &CnfForm::omega());
        for level in &report.per_level {
            if cnf_compare(&level.level, &omega_squared()) == std::cmp::Ordering::Less {
                assert!(level.verdict.is_proven(), "level {}", level.level);
            } else if cnf_compare(&level.level, &omega_squared()) == std::cmp::Ordering::Equal {
                assert!(level.verdict.is_unknown(), "level {}", level.level);
            } else {
                assert_eq!(level.level, top);
                assert!(level.verdict.is_proven(), "level {}", level.level);
            }
        }
        assert!(report.summary.is_proven());
    }

    #[test]
    fn exists_forall_stalls_on_the_diagonal_family() {
        let witness = exists_forall_witness(&family_diagonal()).unwrap();
        let report = witness.probe(Fuel(100_000), 6);
        for level in &report.per_level {
            if cnf_compare(&level.level, &omega_squared()) != std::cmp::Ordering::Less {
                assert!(!level.verdict.is_proven(), "level {}", level.level);
            }
        }
        assert!(!report.summary.is_proven());
    }

    #[test]
    fn exists_forall_requires_the_monotone_flag() {
        let fam = PropFamily2D::new("unflagged", false, |_, _| BitSeq::constant(true));
        assert!(matches!(
            exists_forall_witness(&fam),
            Err(CharError::NotMonotone)
        ));
    }

    #[test]
    fn a_bounded_counterexample_family_passes_once_columns_clear_the_twins() {
        // Q(n, m): "n >= m implies n is not a twin-prime lower member", with
        // primality checked up to a desk cap. The largest twin lower member
        // below 8 is 5, so columns past 5 are all-true and the exists-forall
        // probe succeeds by finding one of them within the fuel's reach.
        let cap = 8u64;
        let sieve = Arc::new(prime_sieve(cap + 2));
        let is_twin = move |i: u64| i <= cap && sieve[i as usize] && sieve[i as usize + 2];
        let largest = (0..=cap).rev().find(|&i| is_twin(i)).unwrap();
        assert_eq!(largest, 5);
        let member_twin = is_twin.clone();
        let fam = PropFamily2D::with_column_profiles(
            "twin counterexample",
            true,
            move |n, m| BitSeq::constant(n < m || !member_twin(n)),
            move |m| {
                if m > largest {
                    Some(TrueProfile::All)
                } else {
                    None
                }
            },
        );
        let witness = exists_forall_witness(&fam).unwrap();
        let report = witness.probe(Fuel(100_000), 6);
        assert!(report.summary.is_proven());
    }

    #[test]
    fn psi_outputs_increase_strictly() {
        let candidates = vec![
            psi(&family_const_true()),
            psi(&family_single_true(3)),
            psi(&family_twin_primes(50)),
            psi(&normalize_down(&family_twin_primes(50))),
            exists_forall_witness(&family_threshold(5)).unwrap().ordinal,
            exists_forall_witness(&family_diagonal()).unwrap().ordinal,
        ];
        for (i, o) in candidates.iter().enumerate() {
            let seq = match o.classify() {
                Classification::IsLim(seq) => seq,
                _ => panic!("candidate {} is not a limit", i),
            };
            let verdict = check_strict_increase_prefix(&seq, 16, Fuel(100_000));
            assert!(verdict.is_proven(), "candidate {}: {:?}", i, verdict);
        }
    }

    #[test]
    fn weak_constancy_across_presentations() {
        // The same family truth-table (only member 2 true) presented with
        // different first-1 positions inside the true member.
        let early = family_single_true(2);
        let late = PropFamily::new("late single", |n| {
            if n == 2 {
                BitSeq::eventually(vec![false; 7], true)
            } else {
                BitSeq::constant(false)
            }
        })
        .reprofiled(Some(TrueProfile::Finite(BTreeSet::from([2]))));
        for k in 1..=3u64 {
            let a = probe_ge(&psi(&early), &omega_level(k), Fuel(10_000), 4);
            let b = probe_ge(&psi(&late), &omega_level(k), Fuel(10_000), 4);
            assert_eq!(a.summary.is_proven(), b.summary.is_proven(), "level w*{}", k);
            assert_eq!(a.summary.is_refuted(), b.summary.is_refuted(), "level w*{}", k);
        }
        // Permuting where the true member sits does not change the stage
        // value either.
        let a = psi_n(&family_single_true(1), 6);
        let b = psi_n(&family_single_true(4), 6);
        assert!(bisim(&a, &b, Fuel(10_000)).is_proven());
    }

    #[test]
    fn bitwise_implication_never_refutes_the_characteristic_order() {
        let smaller = family_single_true(2);
        let larger = PropFamily::new("two true", |n| BitSeq::constant(n == 2 || n == 5))
            .reprofiled(Some(TrueProfile::Finite(BTreeSet::from([2, 5]))));
        let v = leq(&psi(&smaller), &psi(&larger), Fuel(10_000));
        assert!(v.is_proven());

        // Opaque presentations: the order may stay undecided but must never
        // flip to Refuted.
        let smaller = PropFamily::new("opaque smaller", |n| BitSeq::from_fn(move |_| n == 2));
        let larger = PropFamily::new("opaque larger", |n| {
            BitSeq::from_fn(move |_| n == 2 || n == 5)
        });
        let v = leq(&psi(&smaller), &psi(&larger), Fuel(10_000));
        assert!(!v.is_refuted());

        // Annotation-free probes level-by-level: whenever the smaller
        // characteristic passes a level, the larger one does too.
        let cache = StripCache::new();
        let small_plain = psi(&family_single_true(2)).strip_annotations(&cache);
        let large_plain = psi(&larger).strip_annotations(&cache);
        for k in 1..=3u64 {
            let a = probe_ge(&small_plain, &omega_level(k), Fuel(100_000), 4);
            let b = probe_ge(&large_plain, &omega_level(k), Fuel(100_000), 4);
            assert!(!a.summary.is_refuted(), "level w*{}", k);
            assert!(!b.summary.is_refuted(), "level w*{}", k);
            if a.summary.is_proven() {
                assert!(b.summary.is_proven(), "level w*{}", k);
            }
        }
    }

    #[test]
    fn registry_resolves_names_and_rejects_garbage() {
        assert!(matches!(
            lookup_family("twin-primes(100)"),
            Ok(FamilyKind::OneDim(_))
        ));
        assert!(matches!(lookup_family("const-true"), Ok(FamilyKind::OneDim(_))));
        assert!(matches!(lookup_family(" diagonal "), Ok(FamilyKind::TwoDim(_))));
        assert!(matches!(
            lookup_family("threshold(5)"),
            Ok(FamilyKind::TwoDim(_))
        ));
        let err = lookup_family("primes(3)").unwrap_err();
        assert!(err.contains("available"));
        assert!(err.contains("twin-primes(cap)"));
        let err = lookup_family("single-true").unwrap_err();
        assert!(err.contains("numeric argument"));
        let err = lookup_family("diagonal(3)").unwrap_err();
        assert!(err.contains("no argument"));
        let err = lookup_family("twin-primes(x)").unwrap_err();
        assert!(err.contains("natural number"));
    }

    #[test]
    fn verdicts_are_stable_under_more_fuel() {
        let witnesses = vec![
            forall_witness(&family_twin_primes(60)),
            exists_witness(&family_single_true(3)),
            exists_forall_witness(&family_threshold(2)).unwrap(),
        ];
        for w in &witnesses {
            let small = w.probe(Fuel(2_000), 4);
            let large = w.probe(Fuel(50_000), 4);
            for (a, b) in small.per_level.iter().zip(large.per_level.iter()) {
                if a.verdict.is_decided() {
                    assert_eq!(
                        a.verdict.is_proven(),
                        b.verdict.is_proven(),
                        "level {} of {:?}",
                        a.level,
                        w
                    );
                }
            }
        }
    }
}
