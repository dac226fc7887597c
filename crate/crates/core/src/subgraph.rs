//! Threshold representations of a capacity: the subgraph
//! `{(F, α) : α <= c(F)}` and the α-sections `{F : c(F) >= α}`.
//!
//! The α-fibre of a subgraph is an interval `[0, level(F)]`, so a level
//! table encodes it losslessly; closedness of the subgraph is automatic
//! for finite tables.

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::hyperspace::InclusionHyperspace;
use crate::report::{Report, Violation};
use crate::space::{GroundSet, Subset, UnitValue};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgraph {
    ground: GroundSet,
    level: Vec<UnitValue>,
}

impl Subgraph {
    /// Wraps a raw level table indexed by subset mask; axioms are checked
    /// by [`Subgraph::check`] and [`from_subgraph`].
    pub fn from_levels(ground: GroundSet, level: Vec<UnitValue>) -> Result<Self> {
        if level.len() != ground.powerset_len() {
            return Err(Error::ArityMismatch {
                expected: ground.powerset_len(),
                found: level.len(),
            });
        }
        Ok(Subgraph { ground, level })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn levels(&self) -> &[UnitValue] {
        &self.level
    }

    pub fn level(&self, s: Subset) -> &UnitValue {
        &self.level[s.0 as usize]
    }

    /// `(F, α) ∈ S` iff `α <= level(F)`; downward closure in `α` holds
    /// by construction.
    pub fn contains(&self, s: Subset, alpha: &UnitValue) -> bool {
        alpha <= self.level(s)
    }

    /// Union stability `level(F ∪ G) >= level(F) ∨ level(G)` and the base
    /// conditions `level(X) = 1`, `level(∅) = 0`.
    ///
    /// Union stability for all pairs is equivalent to monotonicity, which
    /// is checked on covering pairs `F ⊂ F ∪ {x}`; the witness is reported
    /// as the pair `(F, F ∪ {x})`.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        let full = self.ground.full();
        report.checked += 2;
        if !self.level(full).is_one() {
            report.push(Violation::FullSetValue {
                value: self.level(full).clone(),
            });
        }
        if !self.level(Subset::EMPTY).is_zero() {
            report.push(Violation::EmptySetValue {
                value: self.level(Subset::EMPTY).clone(),
            });
        }
        for f in self.ground.subsets() {
            for x in 0..self.ground.len() {
                if f.contains(x) {
                    continue;
                }
                let g = f.with(x);
                report.checked += 1;
                if self.level(f) > self.level(g) {
                    report.push(Violation::UnionStability {
                        first: f.0,
                        second: g.0,
                        first_level: self.level(f).clone(),
                        second_level: self.level(g).clone(),
                        union_level: self.level(g).clone(),
                    });
                }
            }
        }
        report
    }
}

pub fn to_subgraph(c: &Capacity) -> Subgraph {
    Subgraph {
        ground: c.ground().clone(),
        level: c.table().to_vec(),
    }
}

/// `c(F) = max { α : (F, α) ∈ S }`.
pub fn from_subgraph(s: &Subgraph) -> Result<Capacity> {
    let report = s.check();
    if !report.passed() {
        return Err(Error::NotASubgraph(report));
    }
    Capacity::from_table(s.ground.clone(), s.level.clone())
}

/// The α-sections of a capacity for a list of positive thresholds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectionFamily {
    ground: GroundSet,
    thresholds: Vec<UnitValue>,
    sections: Vec<InclusionHyperspace>,
}

impl SectionFamily {
    /// Assembles a family from raw parts; antitonicity is checked by
    /// [`reconstruct_from_sections`].
    pub fn from_parts(
        ground: &GroundSet,
        mut parts: Vec<(UnitValue, InclusionHyperspace)>,
    ) -> Result<Self> {
        for (alpha, h) in &parts {
            if alpha.is_zero() {
                return Err(Error::ZeroThreshold);
            }
            ground.ensure_same(h.ground())?;
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        let (thresholds, sections): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
        if thresholds.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed("repeated threshold".into()));
        }
        Ok(SectionFamily {
            ground: ground.clone(),
            thresholds,
            sections,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn thresholds(&self) -> &[UnitValue] {
        &self.thresholds
    }

    pub fn sections(&self) -> &[InclusionHyperspace] {
        &self.sections
    }

    pub fn section(&self, alpha: &UnitValue) -> Option<&InclusionHyperspace> {
        self.thresholds
            .binary_search(alpha)
            .ok()
            .map(|i| &self.sections[i])
    }

    /// Reports every pair of thresholds whose sections are not nested.
    pub fn check_antitone(&self) -> Report {
        let mut report = Report::new();
        for i in 0..self.sections.len() {
            for j in i + 1..self.sections.len() {
                report.checked += 1;
                let (lower, higher) = (&self.sections[i], &self.sections[j]);
                if let Some(&k) = higher.minimal().iter().find(|&&k| !lower.member(k)) {
                    report.push(Violation::SectionNotAntitone {
                        lower: self.thresholds[i].clone(),
                        higher: self.thresholds[j].clone(),
                        subset: k.0,
                    });
                }
            }
        }
        report
    }
}

/// `S_α(c) = {F : c(F) >= α}` for each threshold.
///
/// Thresholds are sorted and deduplicated; `α = 0` is rejected since
/// `S_0(c)` is the whole powerset.
pub fn sections(c: &Capacity, thresholds: &[UnitValue]) -> Result<SectionFamily> {
    let mut ts = thresholds.to_vec();
    ts.sort();
    ts.dedup();
    if ts.first().is_some_and(UnitValue::is_zero) {
        return Err(Error::ZeroThreshold);
    }
    let ground = c.ground();
    let sections = ts
        .iter()
        .map(|alpha| {
            let members: Vec<Subset> = ground
                .nonempty_subsets()
                .filter(|&f| c.value(f) >= alpha)
                .collect();
            // X always qualifies since c(X) = 1 >= α.
            InclusionHyperspace::up_closure(ground, &members)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SectionFamily {
        ground: ground.clone(),
        thresholds: ts,
        sections,
    })
}

/// Sections at every distinct positive value of `c`.
pub fn value_sections(c: &Capacity) -> SectionFamily {
    sections(c, &c.positive_values()).expect("positive thresholds")
}

/// `c(F) = max { α : F ∈ S_α }`, or 0 when `F` lies in no section.
pub fn reconstruct_from_sections(family: &SectionFamily) -> Result<Capacity> {
    let report = family.check_antitone();
    if !report.passed() {
        return Err(Error::NotAntitone(report));
    }
    let table = family
        .ground
        .subsets()
        .map(|f| {
            family
                .thresholds
                .iter()
                .zip(&family.sections)
                .rev()
                .find(|(_, h)| h.member(f))
                .map(|(alpha, _)| alpha.clone())
                .unwrap_or_else(UnitValue::zero)
        })
        .collect();
    Capacity::from_table(family.ground.clone(), table)
}
