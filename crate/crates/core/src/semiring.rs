//! The (max, +) algebra that every recurrence in this crate is evaluated in.
//!
//! Values are 64-bit signed integers with a reserved bottom sentinel. `combine`
//! is `max` (the semiring addition), `extend` is saturating addition (the
//! semiring multiplication) with bottom absorbing.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A semiring element. `Value::BOTTOM` is the additive identity and stands for
/// "unreachable".
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Value(i64);

impl Value {
    /// Additive identity; absorbing under `extend`.
    pub const BOTTOM: Value = Value(i64::MIN);
    /// Multiplicative identity.
    pub const ONE: Value = Value(0);
    /// Largest finite value.
    pub const MAX: Value = Value(i64::MAX);
    /// Smallest finite value (one above the sentinel).
    pub const MIN: Value = Value(i64::MIN + 1);

    /// Wraps a finite score. Passing `i64::MIN` yields `BOTTOM`.
    pub const fn new(raw: i64) -> Self {
        Value(raw)
    }

    pub const fn raw(self) -> i64 {
        self.0
    }

    pub const fn is_bottom(self) -> bool {
        self.0 == i64::MIN
    }

    /// `self ⊕ other`.
    #[inline]
    pub fn combine(self, other: Value) -> Value {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    /// `self ⊗ other`. Saturates at the finite range instead of wrapping.
    #[inline]
    pub fn extend(self, other: Value) -> Value {
        if self.is_bottom() || other.is_bottom() {
            return Value::BOTTOM;
        }
        Value(self.0.saturating_add(other.0).max(Value::MIN.0))
    }

    /// Finite value as an `Option`, `None` for bottom.
    pub fn finite(self) -> Option<i64> {
        (!self.is_bottom()).then_some(self.0)
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bottom() {
            f.write_str("⊥")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<i64> for Value {
    fn from(raw: i64) -> Self {
        Value(raw)
    }
}

/// `a ⊕ b`
#[inline]
pub fn combine(a: Value, b: Value) -> Value {
    a.combine(b)
}

/// `a ⊗ w`
#[inline]
pub fn extend(a: Value, w: Value) -> Value {
    a.extend(w)
}

/// Strict improvement under the total order, the replacement rule used by
/// every tie-breaking loop.
#[inline]
pub fn improves(candidate: Value, incumbent: Value) -> bool {
    candidate.cmp(&incumbent) == Ordering::Greater
}

/// Which semiring instance governs a DAG's recurrence.
///
/// Both instances evaluate with the same (max, +) operations. `Lcs` restricts
/// weights and initial values to non-negative counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum SemiringKind {
    #[default]
    #[serde(rename = "max-plus")]
    MaxPlus,
    #[serde(rename = "lcs")]
    Lcs,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown semiring tag `{0}` (expected `max-plus` or `lcs`)")]
pub struct UnknownSemiring(pub String);

impl SemiringKind {
    pub fn tag(self) -> &'static str {
        match self {
            SemiringKind::MaxPlus => "max-plus",
            SemiringKind::Lcs => "lcs",
        }
    }

    pub fn bottom(self) -> Value {
        Value::BOTTOM
    }

    pub fn one(self) -> Value {
        Value::ONE
    }

    pub fn combine(self, a: Value, b: Value) -> Value {
        a.combine(b)
    }

    pub fn extend(self, a: Value, b: Value) -> Value {
        a.extend(b)
    }

    /// Whether `w` may appear as an edge weight or source value.
    pub fn admits(self, w: Value) -> bool {
        match self {
            SemiringKind::MaxPlus => !w.is_bottom(),
            SemiringKind::Lcs => w.raw() >= 0,
        }
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SemiringKind {
    type Err = UnknownSemiring;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max-plus" => Ok(SemiringKind::MaxPlus),
            "lcs" => Ok(SemiringKind::Lcs),
            other => Err(UnknownSemiring(other.to_string())),
        }
    }
}
