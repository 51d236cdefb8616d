//! Cantor normal forms below epsilon_0: the decidable oracle.
//!
//! A [`CnfForm`] is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents (themselves normal forms) and positive coefficients.
//! Every operation here is total and decidable; the rest of the crate uses
//! this module both as the annotation language for ordinal trees and as the
//! reference against which the fuel-bounded engine is cross-checked.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::ordinal::{Ordinal, OrdinalSeq};

/// An ordinal below epsilon_0 in Cantor normal form.
///
/// Invariant: exponents strictly decreasing, coefficients nonzero. The empty
/// term list is zero. Constructors and arithmetic preserve the invariant, so
/// any `CnfForm` obtained from this module's API is normal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CnfForm {
    // (exponent, coefficient), exponents strictly decreasing.
    terms: Vec<(CnfForm, u64)>,
}

/// Errors reported by [`CnfForm::parse`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfParseError {
    /// Byte offset into the input at which the problem was found.
    pub position: usize,
    /// Human-readable description of the problem.
    pub message: String,
}

impl fmt::Display for CnfParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for CnfParseError {}

/// Errors from structural operations with shape preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CnfError {
    /// `fundamental_seq` was asked for the sequence of a non-limit.
    NotALimit(String),
}

impl fmt::Display for CnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CnfError::NotALimit(s) => write!(f, "not a limit normal form: {s}"),
        }
    }
}

impl std::error::Error for CnfError {}

impl CnfForm {
    /// The ordinal 0.
    pub fn zero() -> CnfForm {
        CnfForm { terms: Vec::new() }
    }

    /// A finite ordinal.
    pub fn nat(n: u64) -> CnfForm {
        if n == 0 {
            CnfForm::zero()
        } else {
            CnfForm { terms: vec![(CnfForm::zero(), n)] }
        }
    }

    /// The ordinal w.
    pub fn omega() -> CnfForm {
        CnfForm { terms: vec![(CnfForm::nat(1), 1)] }
    }

    /// `w^exp * coeff` as a single-term normal form. `coeff` must be nonzero.
    pub fn power(exp: CnfForm, coeff: u64) -> CnfForm {
        assert!(coeff > 0, "power term needs a positive coefficient");
        CnfForm { terms: vec![(exp, coeff)] }
    }

    /// Validating constructor from raw terms: exponents must be strictly
    /// decreasing and coefficients positive.
    pub fn from_terms(terms: Vec<(CnfForm, u64)>) -> Result<CnfForm, String> {
        for w in terms.windows(2) {
            if w[0].0.cmp(&w[1].0) != Ordering::Greater {
                return Err("exponents must be strictly decreasing".into());
            }
        }
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err("coefficients must be positive".into());
        }
        Ok(CnfForm { terms })
    }

    /// The term list, most significant first.
    pub fn terms(&self) -> &[(CnfForm, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(n)` when the value is the finite ordinal `n`.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 if self.terms[0].0.is_zero() => Some(self.terms[0].1),
            _ => None,
        }
    }

    /// The trailing finite summand (0 when the form is zero or a limit).
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    /// The form with its trailing finite summand removed (zero or a limit).
    pub fn limit_part(&self) -> CnfForm {
        let mut t = self.terms.clone();
        if let Some((e, _)) = t.last() {
            if e.is_zero() {
                t.pop();
            }
        }
        CnfForm { terms: t }
    }

    /// True for nonzero forms with no finite summand.
    pub fn is_limit(&self) -> bool {
        !self.is_zero() && self.finite_part() == 0
    }

    /// True for forms with a nonzero finite summand.
    pub fn is_successor(&self) -> bool {
        self.finite_part() > 0
    }

    /// Predecessor of a successor form. Panics if called on zero or a limit.
    pub fn pred(&self) -> CnfForm {
        let k = self.finite_part();
        assert!(k > 0, "pred of a non-successor");
        cnf_add(&self.limit_part(), &CnfForm::nat(k - 1))
    }

    /// For forms of shape `d + w` (final term `w^1 * c`): the `d` obtained by
    /// removing a single `w`. `None` for every other shape.
    pub fn split_last_omega(&self) -> Option<CnfForm> {
        let (e, c) = self.terms.last()?;
        if e.as_nat() != Some(1) {
            return None;
        }
        let mut t = self.terms.clone();
        if *c == 1 {
            t.pop();
        } else {
            t.last_mut().unwrap().1 = c - 1;
        }
        Some(CnfForm { terms: t })
    }

    /// Round up: zero stays zero, successors jump to the next limit
    /// (`limit_part + w`), limits are fixed.
    pub fn round_up(&self) -> CnfForm {
        if self.is_successor() {
            cnf_add(&self.limit_part(), &CnfForm::omega())
        } else {
            self.clone()
        }
    }

    /// Round down: drop the finite summand.
    pub fn round_down(&self) -> CnfForm {
        self.limit_part()
    }

    /// Render to the canonical text form; inverse of [`CnfForm::parse`].
    pub fn print(&self) -> String {
        self.to_string()
    }

    /// Parse the textual grammar (naturals, `w`, `+`, `*`, `^`, parens) and
    /// normalize. See the module-level grammar notes.
    pub fn parse(input: &str) -> Result<CnfForm, CnfParseError> {
        Parser::new(input).parse_all()
    }
}

impl fmt::Debug for CnfForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CnfForm({self})")
    }
}

impl Ord for CnfForm {
    fn cmp(&self, other: &Self) -> Ordering {
        cnf_compare(self, other)
    }
}

impl PartialOrd for CnfForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for CnfForm {
    type Err = CnfParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CnfForm::parse(s)
    }
}

/// Total order on normal forms: lexicographic on the term lists, comparing
/// exponents before coefficients; a proper prefix is smaller.
pub fn cnf_compare(a: &CnfForm, b: &CnfForm) -> Ordering {
    for ((ea, ca), (eb, cb)) in a.terms.iter().zip(b.terms.iter()) {
        match cnf_compare(ea, eb) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match ca.cmp(cb) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

/// Ordinal addition: terms of `a` strictly below the leading exponent of `b`
/// are absorbed.
pub fn cnf_add(a: &CnfForm, b: &CnfForm) -> CnfForm {
    let Some((eb, cb)) = b.terms.first() else {
        return a.clone();
    };
    let mut out: Vec<(CnfForm, u64)> = Vec::new();
    for (ea, ca) in &a.terms {
        match cnf_compare(ea, eb) {
            Ordering::Greater => out.push((ea.clone(), *ca)),
            Ordering::Equal | Ordering::Less => break,
        }
    }
    // Merge the boundary coefficient when exponents meet.
    let mut b_iter = b.terms.iter();
    let first = b_iter.next().unwrap();
    if let Some((ea, ca)) = a.terms.get(out.len()) {
        if cnf_compare(ea, eb) == Ordering::Equal {
            out.push((eb.clone(), ca.checked_add(*cb).expect("coefficient overflow in addition")));
            out.extend(b_iter.cloned());
            return CnfForm { terms: out };
        }
    }
    out.push((first.0.clone(), first.1));
    out.extend(b_iter.cloned());
    CnfForm { terms: out }
}

/// Ordinal multiplication by distributing `a` over the terms of `b`.
pub fn cnf_mul(a: &CnfForm, b: &CnfForm) -> CnfForm {
    if a.is_zero() || b.is_zero() {
        return CnfForm::zero();
    }
    let (ea, ca) = a.terms.first().unwrap();
    let mut out: Vec<(CnfForm, u64)> = Vec::new();
    for (f, d) in &b.terms {
        if f.is_zero() {
            // a * d: scale the leading coefficient, keep a's tail.
            out.push((ea.clone(), ca.checked_mul(*d).expect("coefficient overflow in multiplication")));
            out.extend(a.terms.iter().skip(1).cloned());
        } else {
            out.push((cnf_add(ea, f), *d));
        }
    }
    CnfForm { terms: out }
}

/// Ordinal exponentiation, total on normal forms (the result stays below
/// epsilon_0). Degenerate bases are handled exactly: `a^0 = 1`, `0^b = 0`
/// for `b > 0`, `1^b = 1`.
pub fn cnf_pow(a: &CnfForm, b: &CnfForm) -> CnfForm {
    if b.is_zero() {
        return CnfForm::nat(1);
    }
    if a.is_zero() {
        return CnfForm::zero();
    }
    if a.as_nat() == Some(1) {
        return CnfForm::nat(1);
    }
    if let Some(n) = a.as_nat() {
        // Finite base, n >= 2.
        if let Some(k) = b.as_nat() {
            return CnfForm::nat(n.checked_pow(k.try_into().expect("exponent too large")).expect("coefficient overflow in power"));
        }
        // b = lambda + k with lambda a nonzero limit. n^lambda maps each
        // term w^beta*c of lambda to exponent w^{beta'}*c, where beta'
        // decrements a finite beta and fixes an infinite one.
        let lambda = b.limit_part();
        let k = b.finite_part();
        let mut exp_terms: Vec<(CnfForm, u64)> = Vec::new();
        for (beta, c) in &lambda.terms {
            let beta1 = match beta.as_nat() {
                Some(m) => CnfForm::nat(m - 1), // m >= 1 inside a limit part
                None => beta.clone(),
            };
            exp_terms.push((beta1, *c));
        }
        let lam_pow = CnfForm::power(CnfForm { terms: exp_terms }, 1);
        let fin = CnfForm::nat(n.checked_pow(k.try_into().expect("exponent too large")).expect("coefficient overflow in power"));
        return cnf_mul(&lam_pow, &fin);
    }
    // Infinite base: a^(lambda + k) = w^(e1 * lambda) * a^k.
    let e1 = &a.terms.first().unwrap().0;
    let lambda = b.limit_part();
    let k = b.finite_part();
    let mut acc = if lambda.is_zero() {
        CnfForm::nat(1)
    } else {
        CnfForm::power(cnf_mul(e1, &lambda), 1)
    };
    for _ in 0..k {
        acc = cnf_mul(&acc, a);
    }
    acc
}

/// The smaller of two normal forms under the oracle order.
pub fn cnf_min(a: &CnfForm, b: &CnfForm) -> CnfForm {
    if cnf_compare(a, b) == Ordering::Greater { b.clone() } else { a.clone() }
}

/// The larger of two normal forms under the oracle order.
pub fn cnf_max(a: &CnfForm, b: &CnfForm) -> CnfForm {
    if cnf_compare(a, b) == Ordering::Less { b.clone() } else { a.clone() }
}

/// Canonical fundamental sequence of a limit normal form.
///
/// Writing `a = d + w^e` (peeling one copy of the final power):
/// for a successor exponent `e = e' + 1` the sequence is `d + w^{e'} * n`,
/// for a limit exponent it is `d + w^{e[n]}`. Strictly increasing from
/// index 0 with supremum `a`.
pub fn fundamental_seq(a: &CnfForm, n: usize) -> Result<CnfForm, CnfError> {
    if !a.is_limit() {
        return Err(CnfError::NotALimit(a.print()));
    }
    let (e, c) = a.terms.last().unwrap().clone();
    // d = a with one copy of w^e removed.
    let mut d_terms = a.terms.clone();
    if c == 1 {
        d_terms.pop();
    } else {
        d_terms.last_mut().unwrap().1 = c - 1;
    }
    let d = CnfForm { terms: d_terms };
    let n64 = n as u64;
    let step = if e.is_successor() {
        let e1 = e.pred();
        if n64 == 0 { CnfForm::zero() } else { CnfForm::power(e1, n64) }
    } else {
        // e is a limit (e = 0 is impossible in a limit form).
        CnfForm::power(fundamental_seq(&e, n)?, 1)
    };
    Ok(cnf_add(&d, &step))
}

fn embed_cache() -> &'static Mutex<HashMap<CnfForm, Ordinal>> {
    static CACHE: OnceLock<Mutex<HashMap<CnfForm, Ordinal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Embed a normal form as an annotated ordinal tree.
///
/// Finite forms become successor chains, limit forms become `Lim` nodes over
/// the embedded fundamental sequence. Embeddings are cached per normal form,
/// so structurally equal forms share nodes; the engine's reflexivity rule
/// relies on that sharing.
pub fn embed(a: &CnfForm) -> Ordinal {
    if let Some(hit) = embed_cache().lock().unwrap().get(a) {
        return hit.clone();
    }
    let built = if let Some(n) = a.as_nat() {
        Ordinal::from_nat(n)
    } else if a.is_successor() {
        let base = embed(&a.limit_part());
        let mut cur = base;
        for _ in 0..a.finite_part() {
            cur = cur.succ();
        }
        cur
    } else {
        let key = a.clone();
        let seq = OrdinalSeq::new(move |n| {
            embed(&fundamental_seq(&key, n).expect("embedding a checked limit"))
        });
        Ordinal::limit_annotated(seq, a.clone())
    };
    let mut cache = embed_cache().lock().unwrap();
    cache.entry(a.clone()).or_insert_with(|| built.clone());
    cache.get(a).unwrap().clone()
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

impl fmt::Display for CnfForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{c}")?;
            } else {
                if e.as_nat() == Some(1) {
                    write!(f, "w")?;
                } else if let Some(n) = e.as_nat() {
                    write!(f, "w^{n}")?;
                } else if e.terms.len() == 1 && e.terms[0].1 == 1 && e.terms[0].0.as_nat() == Some(1) {
                    // exponent is exactly w
                    write!(f, "w^w")?;
                } else {
                    write!(f, "w^({e})")?;
                }
                if *c > 1 {
                    write!(f, "*{c}")?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, CnfParseError> {
        Err(CnfParseError { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(&mut self) -> Result<CnfForm, CnfParseError> {
        let v = self.parse_sum()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err(format!("unexpected character '{}'", self.src[self.pos] as char));
        }
        Ok(v)
    }

    fn parse_sum(&mut self) -> Result<CnfForm, CnfParseError> {
        let mut acc = self.parse_product()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.parse_product()?;
            acc = cnf_add(&acc, &rhs);
        }
        Ok(acc)
    }

    fn parse_product(&mut self) -> Result<CnfForm, CnfParseError> {
        let mut acc = self.parse_power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.parse_power()?;
            acc = cnf_mul(&acc, &rhs);
        }
        Ok(acc)
    }

    // `^` binds tightest and associates to the right: w^w^2 = w^(w^2).
    fn parse_power(&mut self) -> Result<CnfForm, CnfParseError> {
        let base = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.parse_power()?;
            return Ok(cnf_pow(&base, &exp));
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<CnfForm, CnfParseError> {
        match self.peek() {
            None => self.err("unexpected end of input"),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(CnfForm::omega())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match text.parse::<u64>() {
                    Ok(n) => Ok(CnfForm::nat(n)),
                    Err(_) => Err(CnfParseError {
                        position: start,
                        message: format!("'{text}' is not a representable natural number"),
                    }),
                }
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
        }
    }
}
