//! Pass/fail records shared by the verification reports.

use alloc::string::String;

use serde::Serialize;

/// One verified claim.
///
/// `enforced` is false for claims that are only recorded, such as
/// statements outside the range where they are expected to hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub enforced: bool,
    pub detail: String,
}

impl Check {
    pub fn new(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { label: label.into(), passed, enforced: true, detail: detail.into() }
    }

    pub fn recorded(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { label: label.into(), passed, enforced: false, detail: detail.into() }
    }
}

/// True when every enforced check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed || !c.enforced)
}

/// A term of a class in canonical form: staircase exponents and a decimal
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub exponents: alloc::vec::Vec<u32>,
    pub coefficient: String,
}

/// Nonzero terms of a flag-model class in basis order.
pub fn terms_of(c: &crate::flag::FlagClass) -> alloc::vec::Vec<Term> {
    use alloc::string::ToString;
    c.terms().map(|(e, v)| Term { exponents: e.to_vec(), coefficient: v.to_string() }).collect()
}
