//! Violation reports shared by the validators and law checkers.
//!
//! Witnesses carry subset masks and exact values so they can be emitted
//! as machine-readable documents.

use std::fmt;

use serde::Serialize;

use crate::space::UnitValue;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    /// `c(∅) != 0`.
    EmptySetValue { value: UnitValue },
    /// `c(X) != 1`.
    FullSetValue { value: UnitValue },
    /// `smaller ⊆ larger` but the value drops.
    NotMonotone {
        smaller: u32,
        larger: u32,
        smaller_value: UnitValue,
        larger_value: UnitValue,
    },
    /// `level[F ∪ G] < level[F] ∨ level[G]`.
    UnionStability {
        first: u32,
        second: u32,
        first_level: UnitValue,
        second_level: UnitValue,
        union_level: UnitValue,
    },
    /// `phi <= psi` but `i(phi) > i(psi)`.
    FunctionalMonotonicity {
        phi: Vec<UnitValue>,
        psi: Vec<UnitValue>,
        at_phi: UnitValue,
        at_psi: UnitValue,
    },
    /// `i(alpha ∧ phi) != alpha ∧ i(phi)`.
    MeetHomogeneity {
        alpha: UnitValue,
        phi: Vec<UnitValue>,
        lhs: UnitValue,
        rhs: UnitValue,
    },
    /// `i(alpha ∨ phi) != alpha ∨ i(phi)`.
    JoinHomogeneity {
        alpha: UnitValue,
        phi: Vec<UnitValue>,
        lhs: UnitValue,
        rhs: UnitValue,
    },
    /// Decreasing chain with `inf_k i(phi_k) > i(psi)`.
    TauSmoothness {
        chain: usize,
        infimum: UnitValue,
        target: UnitValue,
    },
    /// Increasing chain with `sup_k i(phi_k) < i(psi)`.
    RadonCondition {
        chain: usize,
        supremum: UnitValue,
        target: UnitValue,
    },
    /// Unit square of the hyperspace-to-capacity morphism fails at a point.
    UnitSquare {
        point: usize,
        subset: u32,
        embedded: UnitValue,
        dirac: UnitValue,
    },
    /// Multiplication square fails on a subset.
    MultiplicationSquare {
        subset: u32,
        embedded: UnitValue,
        multiplied: UnitValue,
    },
    /// A higher threshold has a section that is not contained in a lower one.
    SectionNotAntitone {
        lower: UnitValue,
        higher: UnitValue,
        subset: u32,
    },
    /// A named algebraic law failed on one instance.
    Law { law: String, witness: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptySetValue { value } => write!(f, "value on the empty set is {value}"),
            Violation::FullSetValue { value } => write!(f, "value on the full set is {value}"),
            Violation::NotMonotone {
                smaller,
                larger,
                smaller_value,
                larger_value,
            } => write!(
                f,
                "{smaller:#b} ⊆ {larger:#b} but {smaller_value} > {larger_value}"
            ),
            Violation::UnionStability {
                first,
                second,
                union_level,
                ..
            } => write!(
                f,
                "level of {first:#b} ∪ {second:#b} is {union_level}, below one of its parts"
            ),
            Violation::FunctionalMonotonicity { at_phi, at_psi, .. } => {
                write!(f, "phi <= psi but i(phi) = {at_phi} > i(psi) = {at_psi}")
            }
            Violation::MeetHomogeneity {
                alpha, lhs, rhs, ..
            } => {
                write!(f, "i({alpha} ∧ phi) = {lhs} but {alpha} ∧ i(phi) = {rhs}")
            }
            Violation::JoinHomogeneity {
                alpha, lhs, rhs, ..
            } => {
                write!(f, "i({alpha} ∨ phi) = {lhs} but {alpha} ∨ i(phi) = {rhs}")
            }
            Violation::TauSmoothness {
                chain,
                infimum,
                target,
            } => write!(
                f,
                "chain {chain}: inf i(phi_k) = {infimum} > i(psi) = {target}"
            ),
            Violation::RadonCondition {
                chain,
                supremum,
                target,
            } => write!(
                f,
                "chain {chain}: sup i(phi_k) = {supremum} < i(psi) = {target}"
            ),
            Violation::UnitSquare {
                point,
                subset,
                embedded,
                dirac,
            } => write!(
                f,
                "unit square at point {point}, subset {subset:#b}: {embedded} != {dirac}"
            ),
            Violation::MultiplicationSquare {
                subset,
                embedded,
                multiplied,
            } => write!(
                f,
                "multiplication square at subset {subset:#b}: {embedded} != {multiplied}"
            ),
            Violation::SectionNotAntitone {
                lower,
                higher,
                subset,
            } => write!(
                f,
                "{subset:#b} is in the section at {higher} but not at {lower}"
            ),
            Violation::Law { law, witness } => write!(f, "{law} fails: {witness}"),
        }
    }
}

/// Outcome of a checker: how many instances were examined and which failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.violations.first() {
            None => write!(f, "{} checks passed", self.checked),
            Some(first) => write!(
                f,
                "{} violation(s) in {} checks; first: {first}",
                self.violations.len(),
                self.checked
            ),
        }
    }
}
