//! Brouwer-tree ordinals with lazy limit sequences.
//!
//! An [`Ordinal`] is zero, a successor, or the limit of a lazily evaluated
//! sequence of ordinals. Limit sequences carry a strictness contract: the
//! successor of each element is at most the next element, so limits are
//! always infinite and strictly above every element.
//!
//! Nodes may carry an optional *annotation*: an exact Cantor normal form for
//! the value. Annotations are trusted by the comparison engine, so every
//! constructor here either derives them soundly from its inputs or omits
//! them. Stripping annotations (for tests and experiments) preserves node
//! sharing through a [`StripCache`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cnf::{cnf_add, CnfForm};

/// A Brouwer-tree ordinal. Cheap to clone; clones share the same node.
#[derive(Clone)]
pub struct Ordinal(Arc<OrdNode>);

struct OrdNode {
    kind: OrdKind,
    annotation: Option<CnfForm>,
}

enum OrdKind {
    Zero,
    Succ(Ordinal),
    Lim(OrdinalSeq),
}

/// A lazily evaluated, memoized sequence of ordinals.
///
/// Contract for limit constructors: `seq.get(n).succ() <= seq.get(n + 1)`
/// for every `n` (strict increase). Memoization makes `get` pointer-stable:
/// repeated calls return clones of the same node.
#[derive(Clone)]
pub struct OrdinalSeq(Arc<SeqInner>);

struct SeqInner {
    gen: Box<dyn Fn(usize) -> Ordinal + Send + Sync>,
    memo: Mutex<HashMap<usize, Ordinal>>,
}

/// One level of structure, exposed without granting access to node internals.
pub enum Classification {
    IsZero,
    IsSucc(Ordinal),
    IsLim(OrdinalSeq),
}

/// Outcome of the total finiteness decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FinitenessResult {
    Finite(u64),
    Infinite,
}

impl OrdinalSeq {
    /// Wrap a generator. The caller promises strict increase.
    pub fn new(gen: impl Fn(usize) -> Ordinal + Send + Sync + 'static) -> OrdinalSeq {
        OrdinalSeq(Arc::new(SeqInner { gen: Box::new(gen), memo: Mutex::new(HashMap::new()) }))
    }

    /// The `n`-th element. First evaluation is cached, so the same node is
    /// returned on every later call.
    pub fn get(&self, n: usize) -> Ordinal {
        if let Some(hit) = self.0.memo.lock().unwrap().get(&n) {
            return hit.clone();
        }
        let computed = (self.0.gen)(n);
        let mut memo = self.0.memo.lock().unwrap();
        memo.entry(n).or_insert(computed).clone()
    }

    /// Same underlying sequence object.
    pub fn ptr_eq(a: &OrdinalSeq, b: &OrdinalSeq) -> bool {
        Arc::ptr_eq(&a.0, &b.0)
    }
}

impl Ordinal {
    fn make(kind: OrdKind, annotation: Option<CnfForm>) -> Ordinal {
        Ordinal(Arc::new(OrdNode { kind, annotation }))
    }

    /// The ordinal 0 (a shared node, annotated with the exact value 0).
    pub fn zero() -> Ordinal {
        static ZERO: OnceLock<Ordinal> = OnceLock::new();
        ZERO.get_or_init(|| Ordinal::make(OrdKind::Zero, Some(CnfForm::zero()))).clone()
    }

    /// Successor. An exact annotation on `self` carries over, incremented.
    pub fn succ(&self) -> Ordinal {
        let ann = self.annotation().map(|a| cnf_add(&a, &CnfForm::nat(1)));
        Ordinal::make(OrdKind::Succ(self.clone()), ann)
    }

    /// The finite ordinal `n` as a successor chain (built iteratively, safe
    /// for large `n`).
    pub fn from_nat(n: u64) -> Ordinal {
        let mut cur = Ordinal::zero();
        for _ in 0..n {
            cur = cur.succ();
        }
        cur
    }

    /// The first infinite ordinal, `w = lim n` (a shared node, annotated).
    pub fn omega() -> Ordinal {
        static OMEGA: OnceLock<Ordinal> = OnceLock::new();
        OMEGA
            .get_or_init(|| {
                let seq = OrdinalSeq::new(|n| Ordinal::from_nat(n as u64));
                Ordinal::limit_annotated(seq, CnfForm::omega())
            })
            .clone()
    }

    /// The limit of a strictly increasing sequence. No annotation.
    pub fn limit(seq: OrdinalSeq) -> Ordinal {
        Ordinal::make(OrdKind::Lim(seq), None)
    }

    /// The limit of a strictly increasing sequence together with an exact
    /// normal form for its value. The caller asserts the annotation is the
    /// true value; the comparison engine takes it at face value.
    pub fn limit_annotated(seq: OrdinalSeq, value: CnfForm) -> Ordinal {
        Ordinal::make(OrdKind::Lim(seq), Some(value))
    }

    /// One level of structure.
    pub fn classify(&self) -> Classification {
        match &self.0.kind {
            OrdKind::Zero => Classification::IsZero,
            OrdKind::Succ(p) => Classification::IsSucc(p.clone()),
            OrdKind::Lim(s) => Classification::IsLim(s.clone()),
        }
    }

    /// The exact normal form attached to this node, if any.
    pub fn annotation(&self) -> Option<CnfForm> {
        self.0.annotation.clone()
    }

    /// Same node.
    pub fn ptr_eq(a: &Ordinal, b: &Ordinal) -> bool {
        Arc::ptr_eq(&a.0, &b.0)
    }

    /// Decide finiteness. Total: walking the successor chain of a tree is
    /// structurally finite, and a limit is infinite by the strictness
    /// contract on its sequence.
    pub fn decide_finite(&self) -> FinitenessResult {
        let mut cur = self.clone();
        let mut count: u64 = 0;
        loop {
            match &cur.0.kind {
                OrdKind::Zero => return FinitenessResult::Finite(count),
                OrdKind::Lim(_) => return FinitenessResult::Infinite,
                OrdKind::Succ(p) => {
                    count += 1;
                    let next = p.clone();
                    cur = next;
                }
            }
        }
    }

    /// Peel all successor layers: the zero-or-limit node underneath together
    /// with the number of layers removed.
    pub(crate) fn peel_succs(&self) -> (Ordinal, u64) {
        let mut cur = self.clone();
        let mut count: u64 = 0;
        loop {
            match &cur.0.kind {
                OrdKind::Succ(p) => {
                    count += 1;
                    let next = p.clone();
                    cur = next;
                }
                _ => return (cur, count),
            }
        }
    }

    /// Remove every annotation from this tree, preserving sharing: nodes
    /// reachable twice strip to the same node, across all calls made with
    /// the same cache. Limit sequences strip lazily.
    pub fn strip_annotations(&self, cache: &StripCache) -> Ordinal {
        let key = Arc::as_ptr(&self.0) as usize;
        if let Some((_, out)) = cache.0.lock().unwrap().map.get(&key) {
            return out.clone();
        }
        let stripped = match &self.0.kind {
            OrdKind::Zero => Ordinal::make(OrdKind::Zero, None),
            OrdKind::Succ(p) => {
                let sp = p.strip_annotations(cache);
                Ordinal::make(OrdKind::Succ(sp), None)
            }
            OrdKind::Lim(seq) => {
                let inner = seq.clone();
                let cache = cache.clone();
                Ordinal::make(
                    OrdKind::Lim(OrdinalSeq::new(move |n| inner.get(n).strip_annotations(&cache))),
                    None,
                )
            }
        };
        let mut guard = cache.0.lock().unwrap();
        let entry = guard.map.entry(key).or_insert_with(|| (self.clone(), stripped));
        entry.1.clone()
    }

    /// Human-readable one-line description for interactive output.
    pub fn describe(&self) -> String {
        let shape = match &self.0.kind {
            OrdKind::Zero => "zero",
            OrdKind::Succ(_) => "successor",
            OrdKind::Lim(_) => "limit",
        };
        let size = match self.decide_finite() {
            FinitenessResult::Finite(n) => format!("finite ({n})"),
            FinitenessResult::Infinite => "infinite".to_string(),
        };
        match self.annotation() {
            Some(a) => format!("{shape}, {size}, exact value {a}"),
            None => format!("{shape}, {size}, no exact normal form attached"),
        }
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            OrdKind::Zero => write!(f, "Zero")?,
            OrdKind::Succ(_) => {
                let (base, n) = self.peel_succs();
                match &base.0.kind {
                    OrdKind::Zero => write!(f, "Nat({n})")?,
                    _ => write!(f, "Succ^{n}(Lim)")?,
                }
            }
            OrdKind::Lim(_) => write!(f, "Lim")?,
        }
        if let Some(a) = self.annotation() {
            write!(f, "[= {a}]")?;
        }
        Ok(())
    }
}

/// Sharing-preserving cache for [`Ordinal::strip_annotations`]. Holds the
/// source nodes it has seen so their addresses stay valid for the cache's
/// lifetime.
#[derive(Clone, Default)]
pub struct StripCache(Arc<Mutex<StripCacheInner>>);

#[derive(Default)]
struct StripCacheInner {
    map: HashMap<usize, (Ordinal, Ordinal)>,
}

impl StripCache {
    pub fn new() -> StripCache {
        StripCache::default()
    }
}
