//! Machine-readable verification reports shared by the library and the CLI.
//!
//! Coefficients travel as decimal strings everywhere. The JSON layout is
//! versioned; emitters sort their cases deterministically so identical
//! invocations produce byte-identical output.

use serde::{Deserialize, Serialize};

/// Bump when any report layout changes shape.
pub const SCHEMA_VERSION: &str = "1";

/// Outcome of one verification case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The claim fails in the exact form it was stated, but a corrected
    /// reading (recorded in the report) holds.
    RefutedAsPrinted,
}

impl CheckStatus {
    pub fn passed(self) -> bool {
        matches!(self, CheckStatus::Pass)
    }
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "fail"),
            CheckStatus::RefutedAsPrinted => write!(f, "refuted-as-printed"),
        }
    }
}

/// First differing coefficient of a failed comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// Exponent numerator in lattice units.
    pub exp_num: i64,
    pub lhs: String,
    pub rhs: String,
}

/// Certificate that a continued-fraction convergent matches the product form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CfCertificate {
    pub id: String,
    pub denom: u32,
    pub order: i64,
    /// Smallest depth that reproduces the product form, when one exists.
    pub depth: Option<u32>,
    pub status: CheckStatus,
    pub first_mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CfCertificate {
    pub fn error(id: crate::cf::CfId, order: i64, message: String) -> Self {
        CfCertificate {
            id: id.to_string(),
            denom: 0,
            order,
            depth: None,
            status: CheckStatus::Fail,
            first_mismatch: None,
            note: Some(message),
        }
    }
}

/// Result of comparing two series expressions on their common window.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityReport {
    pub case: String,
    pub denom: u32,
    /// Exponent (lattice units) through which both sides were compared.
    pub order: i64,
    pub status: CheckStatus,
    pub first_mismatch: Option<Mismatch>,
    /// Rendering of the expression that was checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expression: Option<String>,
}

/// Modular-relation report for one (family, i, n) triple.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModularReport {
    pub case: String,
    pub family: String,
    pub index: u8,
    pub power: u32,
    pub order: i64,
    /// Sign computed from the prefactor bookkeeping (-1)^{n·e} with e the
    /// prefactor exponent of the fraction.
    pub computed_sign: i8,
    /// Sign the stated rule assigns to this case.
    pub stated_sign: i8,
    pub sign_matches_stated: bool,
    /// g^n(q)·g^n(-q) = g^n(q²) with the literal substitution q -> -q.
    pub strict_series: CheckStatus,
    pub strict_mismatch: Option<Mismatch>,
    /// Same relation with g(-q) read as the all-arguments-sign-flipped
    /// companion product (the reading the derivation actually uses).
    pub conjugate_series: CheckStatus,
    /// For the integer-lattice family, the sign observed by evaluating the
    /// full fractions with their prefactors.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_sign: Option<i8>,
    pub status: CheckStatus,
}

/// One scanned arithmetic progression m·n + r.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub label: String,
    pub modulus: u64,
    pub residue: u64,
    pub bound: i64,
    pub checked: u64,
    /// (n, coefficient) pairs where the progression failed to vanish.
    pub violations: Vec<(u64, String)>,
    pub status: CheckStatus,
}

impl ScanReport {
    pub fn vanishes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-term outcome inside a scaled dissection.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DissectionTermReport {
    pub shift: u64,
    /// Exponent residue class (mod w) this term lives on, shift included.
    pub residue_class: u64,
    pub is_zero_term: bool,
    /// (exponent, coefficient) pairs on the claimed progression with a
    /// nonzero coefficient inside this term; exponents may be negative.
    pub violations: Vec<(i64, String)>,
}

/// Dissection verification: left side against the sum of the terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DissectReport {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub w: u64,
    pub order: i64,
    pub term_count: usize,
    pub zero_terms: Vec<usize>,
    pub status: CheckStatus,
    pub first_mismatch: Option<Mismatch>,
}

/// One row of a vanishing-coefficient table, orientation resolved
/// empirically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRowReport {
    pub label: String,
    pub modulus: u64,
    pub residue: u64,
    pub displayed_vanishes: bool,
    pub reciprocal_vanishes: bool,
    /// "displayed", "reciprocal", "both" or "neither".
    pub orientation: String,
    pub displayed_first_violation: Option<(u64, String)>,
    pub reciprocal_first_violation: Option<(u64, String)>,
    /// Set when the vanishing orientation was re-proved term by term
    /// through the dissection route.
    pub dissection_terms: Option<Vec<DissectionTermReport>>,
    pub dissection_agrees: Option<bool>,
    pub status: CheckStatus,
}

/// Partition-identity verification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionReport {
    pub identity: String,
    pub n_max: u64,
    /// The stated identities claim the relation from this n on.
    pub threshold: u64,
    /// (n, value) pairs with a nonzero signed sum at n >= threshold.
    pub violations: Vec<(u64, String)>,
    /// Nonzero signed sums below the threshold are reported, not failed.
    pub below_threshold_nonzero: Vec<(u64, String)>,
    pub status: CheckStatus,
}

/// Envelope for CLI output.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport<T: Serialize> {
    pub schema_version: String,
    pub command: String,
    pub status: CheckStatus,
    pub cases: Vec<T>,
    /// Human-mode only; omitted from JSON so identical runs stay
    /// byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    /// Default orders in effect for this run.
    pub defaults: Vec<(String, i64)>,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(command: impl Into<String>, cases: Vec<T>, status: CheckStatus) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.into(),
            status,
            cases,
            elapsed_ms: None,
            defaults: Vec::new(),
        }
    }
}
