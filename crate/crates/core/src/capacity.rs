//! Capacities (normalized monotone set functions) on finite ground sets.
//!
//! On a finite discrete space every subset is closed, so the upper
//! semicontinuity axiom holds trivially (take the open neighbourhood
//! `U = F`), and every capacity is τ-smooth and Radon. A capacity is
//! therefore exactly a table `c: 2^X -> [0,1]` with `c(∅) = 0`,
//! `c(X) = 1` and `F ⊆ G ⇒ c(F) <= c(G)`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::report::{Report, Violation};
use crate::space::{GroundSet, SpaceMap, Subset, UnitValue};

/// How `Capacity::build` treats its assignments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BuildMode {
    /// Every subset must be assigned; the table is validated as given.
    #[default]
    Exact,
    /// Missing subsets get the largest value assigned to one of their
    /// subsets (0 if none), and `c(X)` is forced to 1.
    MonotoneCompletion,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Capacity {
    ground: GroundSet,
    table: Vec<UnitValue>,
}

impl Capacity {
    /// Validates a full table indexed by subset mask.
    pub fn from_table(ground: GroundSet, table: Vec<UnitValue>) -> Result<Self> {
        if table.len() != ground.powerset_len() {
            return Err(Error::ArityMismatch {
                expected: ground.powerset_len(),
                found: table.len(),
            });
        }
        let report = validate_table(&ground, &table);
        if !report.passed() {
            return Err(Error::NotACapacity(report));
        }
        Ok(Capacity { ground, table })
    }

    /// Table constructor for results that are capacities by construction.
    pub(crate) fn from_table_unchecked(ground: GroundSet, table: Vec<UnitValue>) -> Self {
        debug_assert!(validate_table(&ground, &table).passed());
        Capacity { ground, table }
    }

    pub fn build(
        ground: GroundSet,
        assignments: &[(Subset, UnitValue)],
        mode: BuildMode,
    ) -> Result<Self> {
        let mut assigned: Vec<Option<UnitValue>> = vec![None; ground.powerset_len()];
        for (s, v) in assignments {
            ground.check_subset(*s)?;
            let slot = &mut assigned[s.0 as usize];
            if slot.is_some() {
                return Err(Error::DuplicateAssignment(s.0));
            }
            *slot = Some(v.clone());
        }
        let table = match mode {
            BuildMode::Exact => assigned
                .into_iter()
                .enumerate()
                .map(|(mask, v)| v.ok_or(Error::MissingAssignment(mask as u32)))
                .collect::<Result<Vec<_>>>()?,
            BuildMode::MonotoneCompletion => {
                let full = ground.full().0 as usize;
                if let Some(v) = &assigned[full] {
                    if !v.is_one() {
                        let mut report = Report::new();
                        report.push(Violation::FullSetValue { value: v.clone() });
                        return Err(Error::NotACapacity(report));
                    }
                }
                // Masks increase along inclusion, so every F \ {i} is final before F.
                let mut table: Vec<UnitValue> = Vec::with_capacity(assigned.len());
                for (mask, own) in assigned.into_iter().enumerate() {
                    let s = Subset(mask as u32);
                    let below = s.iter().map(|i| &table[s.without(i).0 as usize]).max();
                    let v = match (own, below) {
                        (Some(a), Some(b)) => a.max(b.clone()),
                        (Some(a), None) => a,
                        (None, Some(b)) => b.clone(),
                        (None, None) => UnitValue::zero(),
                    };
                    table.push(v);
                }
                table[full] = UnitValue::one();
                table
            }
        };
        Self::from_table(ground, table)
    }

    /// The Dirac capacity at the point named `name`.
    pub fn dirac(ground: &GroundSet, name: &str) -> Result<Self> {
        let x = ground.index_of(name)?;
        Ok(Self::dirac_at(ground, x))
    }

    /// The Dirac capacity at the point with index `x`: `c(F) = 1` iff `x ∈ F`.
    pub fn dirac_at(ground: &GroundSet, x: usize) -> Self {
        assert!(x < ground.len(), "point {x} out of range");
        let table = ground
            .subsets()
            .map(|s| {
                if s.contains(x) {
                    UnitValue::one()
                } else {
                    UnitValue::zero()
                }
            })
            .collect();
        Capacity {
            ground: ground.clone(),
            table,
        }
    }

    /// The additive capacity `c(F) = Σ_{x∈F} weights[x]`; weights must sum to 1.
    pub fn additive(ground: &GroundSet, weights: &[UnitValue]) -> Result<Self> {
        if weights.len() != ground.len() {
            return Err(Error::ArityMismatch {
                expected: ground.len(),
                found: weights.len(),
            });
        }
        let table = ground
            .subsets()
            .map(|s| {
                let sum = s.iter().fold(
                    num_rational::BigRational::from_integer(0.into()),
                    |acc, i| acc + weights[i].ratio(),
                );
                UnitValue::from_ratio(sum)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(ground.clone(), table)
    }

    /// `c(F) = 1` for every non-empty `F`.
    pub fn maximal(ground: &GroundSet) -> Self {
        let table = ground
            .subsets()
            .map(|s| {
                if s.is_empty() {
                    UnitValue::zero()
                } else {
                    UnitValue::one()
                }
            })
            .collect();
        Capacity {
            ground: ground.clone(),
            table,
        }
    }

    /// `c(F) = 1` only for `F = X`.
    pub fn unanimity(ground: &GroundSet) -> Self {
        let full = ground.full();
        let table = ground
            .subsets()
            .map(|s| {
                if s == full {
                    UnitValue::one()
                } else {
                    UnitValue::zero()
                }
            })
            .collect();
        Capacity {
            ground: ground.clone(),
            table,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn table(&self) -> &[UnitValue] {
        &self.table
    }

    pub fn value(&self, s: Subset) -> &UnitValue {
        &self.table[s.0 as usize]
    }

    /// Distinct positive values in increasing order.
    pub fn positive_values(&self) -> Vec<UnitValue> {
        let mut vals: Vec<UnitValue> = self
            .table
            .iter()
            .filter(|v| !v.is_zero())
            .cloned()
            .collect();
        vals.sort_unstable();
        vals.dedup();
        vals
    }

    /// Image capacity along `f`: `c'(F) = c(f⁻¹(F))`.
    pub fn pushforward(&self, f: &SpaceMap) -> Result<Capacity> {
        self.ground.ensure_same(f.domain())?;
        let table = f
            .codomain()
            .subsets()
            .map(|s| self.value(f.preimage(s)).clone())
            .collect();
        Ok(Capacity::from_table_unchecked(f.codomain().clone(), table))
    }

    /// Whether `c(F) = c(F ∩ s)` for every `F`.
    pub fn is_carried_by(&self, s: Subset) -> bool {
        self.ground
            .subsets()
            .all(|f| self.value(f) == self.value(f.intersection(s)))
    }

    /// The smallest subset `S` with `c(F) = c(F ∩ S)` for all `F`.
    ///
    /// The admissible subsets are closed under supersets and
    /// intersections, so removing points one at a time while the identity
    /// still holds lands on the minimum.
    pub fn support(&self) -> Subset {
        let mut s = self.ground.full();
        for x in 0..self.ground.len() {
            let candidate = s.without(x);
            if self.is_carried_by(candidate) {
                s = candidate;
            }
        }
        s
    }

    /// The capacity on the sub-ground-set `s`, which must contain the support.
    pub fn restrict(&self, s: Subset) -> Result<Capacity> {
        self.ground.check_subset(s)?;
        let support = self.support();
        if !support.is_subset_of(s) {
            return Err(Error::SupportNotContained {
                support: support.0,
                target: s.0,
            });
        }
        let (sub, inclusion) = self.ground.restrict(s)?;
        let table = sub
            .subsets()
            .map(|t| self.value(inclusion.image_of(t)).clone())
            .collect();
        Ok(Capacity::from_table_unchecked(sub, table))
    }

    /// Pointwise order on tables.
    pub fn pointwise_le(&self, other: &Capacity) -> bool {
        self.ground == other.ground && self.table.iter().zip(&other.table).all(|(a, b)| a <= b)
    }
}

/// Every violated capacity axiom of `table`; empty when it is a capacity.
///
/// Monotonicity is checked on covering pairs `F ⊂ F ∪ {x}`, which
/// implies it for all pairs.
pub fn validate_table(ground: &GroundSet, table: &[UnitValue]) -> Report {
    let mut report = Report::new();
    let full = ground.full().0 as usize;
    report.checked += 2;
    if !table[0].is_zero() {
        report.push(Violation::EmptySetValue {
            value: table[0].clone(),
        });
    }
    if !table[full].is_one() {
        report.push(Violation::FullSetValue {
            value: table[full].clone(),
        });
    }
    for s in ground.subsets() {
        for x in 0..ground.len() {
            if s.contains(x) {
                continue;
            }
            let t = s.with(x);
            report.checked += 1;
            let (a, b) = (&table[s.0 as usize], &table[t.0 as usize]);
            if a > b {
                report.push(Violation::NotMonotone {
                    smaller: s.0,
                    larger: t.0,
                    smaller_value: a.clone(),
                    larger_value: b.clone(),
                });
            }
        }
    }
    report
}

/// Sorts and deduplicates `items`, returning the canonical list and the
/// position of each original item in it.
pub(crate) fn canonical_dedup<T: Ord + Clone + std::hash::Hash>(
    items: &[T],
) -> (Vec<T>, Vec<usize>) {
    let mut sorted: Vec<T> = items.to_vec();
    sorted.sort();
    sorted.dedup();
    debug_assert_eq!(sorted.iter().collect::<HashSet<_>>().len(), sorted.len());
    let positions = items
        .iter()
        .map(|it| sorted.binary_search(it).expect("item present"))
        .collect();
    (sorted, positions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: i64, q: i64) -> UnitValue {
        UnitValue::new(p, q).unwrap()
    }

    fn ab() -> GroundSet {
        GroundSet::new(["a", "b"]).unwrap()
    }

    fn c0() -> Capacity {
        Capacity::from_table(ab(), vec![v(0, 1), v(3, 10), v(6, 10), v(1, 1)]).unwrap()
    }

    #[test]
    fn exact_build() {
        let c = Capacity::build(
            ab(),
            &[
                (Subset(0), v(0, 1)),
                (Subset(1), v(3, 10)),
                (Subset(2), v(6, 10)),
                (Subset(3), v(1, 1)),
            ],
            BuildMode::Exact,
        )
        .unwrap();
        assert_eq!(c, c0());
    }

    #[test]
    fn completion_build() {
        let c = Capacity::build(
            ab(),
            &[(Subset(1), v(3, 10)), (Subset(2), v(6, 10))],
            BuildMode::MonotoneCompletion,
        )
        .unwrap();
        assert_eq!(c, c0());
    }

    #[test]
    fn completion_takes_max_over_assigned_subsets() {
        let x = GroundSet::new(["a", "b", "c"]).unwrap();
        let c = Capacity::build(
            x,
            &[(Subset(0b001), v(1, 2)), (Subset(0b010), v(1, 4))],
            BuildMode::MonotoneCompletion,
        )
        .unwrap();
        assert_eq!(c.value(Subset(0b011)), &v(1, 2));
        assert_eq!(c.value(Subset(0b110)), &v(1, 4));
        assert_eq!(c.value(Subset(0b100)), &v(0, 1));
        assert_eq!(c.value(Subset(0b111)), &v(1, 1));
    }

    #[test]
    fn non_monotone_is_rejected() {
        let err = Capacity::build(
            ab(),
            &[
                (Subset(0), v(0, 1)),
                (Subset(1), v(1, 2)),
                (Subset(2), v(0, 1)),
                (Subset(3), v(1, 4)),
            ],
            BuildMode::Exact,
        )
        .unwrap_err();
        let Error::NotACapacity(report) = err else {
            panic!("expected a validation error");
        };
        assert!(report.violations.contains(&Violation::NotMonotone {
            smaller: 0b01,
            larger: 0b11,
            smaller_value: v(1, 2),
            larger_value: v(1, 4),
        }));
    }

    #[test]
    fn build_errors() {
        let dup = Capacity::build(
            ab(),
            &[(Subset(1), v(1, 2)), (Subset(1), v(1, 2))],
            BuildMode::MonotoneCompletion,
        );
        assert!(matches!(dup, Err(Error::DuplicateAssignment(1))));
        let missing = Capacity::build(ab(), &[(Subset(0), v(0, 1))], BuildMode::Exact);
        assert!(matches!(missing, Err(Error::MissingAssignment(1))));
        let nonzero_empty =
            Capacity::build(ab(), &[(Subset(0), v(1, 2))], BuildMode::MonotoneCompletion);
        assert!(matches!(nonzero_empty, Err(Error::NotACapacity(_))));
        let bad_full =
            Capacity::build(ab(), &[(Subset(3), v(1, 2))], BuildMode::MonotoneCompletion);
        assert!(matches!(bad_full, Err(Error::NotACapacity(_))));
        let out_of_range =
            Capacity::build(ab(), &[(Subset(4), v(1, 2))], BuildMode::MonotoneCompletion);
        assert!(matches!(out_of_range, Err(Error::SubsetOutOfRange { .. })));
    }

    #[test]
    fn dirac_examples() {
        let c = Capacity::dirac(&ab(), "a").unwrap();
        assert_eq!(c.table(), &[v(0, 1), v(1, 1), v(0, 1), v(1, 1)]);
        let single = GroundSet::new(["a"]).unwrap();
        assert_eq!(
            Capacity::dirac(&single, "a").unwrap().table(),
            &[v(0, 1), v(1, 1)]
        );
        let abc = GroundSet::new(["a", "b", "c"]).unwrap();
        let cb = Capacity::dirac(&abc, "b").unwrap();
        assert_eq!(cb.table().iter().filter(|x| x.is_one()).count(), 4);
        assert!(matches!(
            Capacity::dirac(&ab(), "z"),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn pushforward_examples() {
        let u = GroundSet::new(["u"]).unwrap();
        let collapse = SpaceMap::constant(&ab(), &u, 0).unwrap();
        let p = c0().pushforward(&collapse).unwrap();
        assert_eq!(p.table(), &[v(0, 1), v(1, 1)]);
        assert_eq!(c0().pushforward(&SpaceMap::identity(&ab())).unwrap(), c0());
        let uv = GroundSet::new(["u", "v"]).unwrap();
        let rename = SpaceMap::new(ab(), uv, vec![0, 1]).unwrap();
        let p = c0().pushforward(&rename).unwrap();
        assert_eq!(p.value(Subset(1)), &v(3, 10));
        assert_eq!(p.value(Subset(2)), &v(6, 10));
        assert!(c0().pushforward(&collapse.clone()).is_ok());
        let wrong = SpaceMap::identity(&u);
        assert!(matches!(
            c0().pushforward(&wrong),
            Err(Error::GroundMismatch { .. })
        ));
    }

    fn extended() -> Capacity {
        let abc = GroundSet::new(["a", "b", "c"]).unwrap();
        let table = abc
            .subsets()
            .map(|s| c0().value(s.intersection(Subset(0b011))).clone())
            .collect();
        Capacity::from_table(abc, table).unwrap()
    }

    #[test]
    fn support_examples() {
        assert_eq!(Capacity::dirac(&ab(), "a").unwrap().support(), Subset(0b01));
        assert_eq!(extended().support(), Subset(0b011));
        assert_eq!(c0().support(), Subset(0b11));
    }

    #[test]
    fn restrict_examples() {
        let d = Capacity::dirac(&ab(), "a")
            .unwrap()
            .restrict(Subset(0b01))
            .unwrap();
        assert_eq!(d.ground().names(), &["a".to_string()]);
        assert_eq!(d.table(), &[v(0, 1), v(1, 1)]);
        let r = extended().restrict(Subset(0b011)).unwrap();
        assert_eq!(r, c0());
        assert!(matches!(
            c0().restrict(Subset(0b01)),
            Err(Error::SupportNotContained { .. })
        ));
    }

    #[test]
    fn restriction_pushes_back() {
        let c = extended();
        let r = c.restrict(Subset(0b011)).unwrap();
        let (_, inclusion) = c.ground().restrict(Subset(0b011)).unwrap();
        assert_eq!(r.pushforward(&inclusion).unwrap(), c);
    }

    #[test]
    fn additive_capacity() {
        let c = Capacity::additive(&ab(), &[v(1, 4), v(3, 4)]).unwrap();
        assert_eq!(c.value(Subset(1)), &v(1, 4));
        assert!(Capacity::additive(&ab(), &[v(1, 4), v(1, 4)]).is_err());
    }

    #[test]
    fn canonical_dedup_positions() {
        let (sorted, pos) = canonical_dedup(&[3, 1, 3, 2]);
        assert_eq!(sorted, vec![1, 2, 3]);
        assert_eq!(pos, vec![2, 0, 2, 1]);
    }
}
