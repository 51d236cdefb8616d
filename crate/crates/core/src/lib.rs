//! Brouwer-tree ordinals with lazy limits, exact normal-form annotations,
//! and a sound fuel-bounded inequality engine.

#![forbid(unsafe_code)]

pub mod arith;
pub mod characteristic;
pub mod cnf;
pub mod engine;
pub mod minmax;
pub mod ordinal;
pub mod selftest;
pub mod semidec;
pub mod sierpinski;

pub use arith::{add, exp, mul, round_down, round_up, split, SplitResult};
pub use characteristic::{
    exists_forall_witness, exists_witness, family_const_false, family_const_true,
    family_diagonal, family_single_true, family_threshold, family_twin_primes, forall_witness,
    lookup_family, negation_witness, normalize_down, normalize_up, psi, psi_n, CharError,
    FamilyKind, PropFamily, PropFamily2D, TrueProfile, FAMILY_NAMES,
};
pub use cnf::{cnf_add, cnf_compare, cnf_max, cnf_min, cnf_mul, cnf_pow, embed, fundamental_seq, CnfError, CnfForm, CnfParseError};
pub use engine::{bisim, check_strict_increase_prefix, ladder, leq, lt, probe_ge, Fuel, LevelProbe, ProbeReport, Verdict};
pub use minmax::{lim_max, lim_min};
pub use ordinal::{Classification, FinitenessResult, Ordinal, OrdinalSeq, StripCache};
pub use selftest::{run_all, CheckOutcome};
pub use semidec::{
    conj_witness, disj_witness, double_jump, jump, semidec_to_witness, unjump,
    witness_to_semidec, BitSeq, DecWitness, SemidecError,
};
pub use sierpinski::{eval_top, from_bitseq, s_n_of, Sierpinski, SierpSeq};
