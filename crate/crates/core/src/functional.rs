//! Capacities seen as functionals `C(X, I) -> I`.
//!
//! A functional is a Sugeno integral with respect to a unique capacity
//! exactly when it is monotone and commutes with `α ∧ ·` and `α ∨ ·`.
//! Functionals are exercised only on finite sample families, and
//! the checkers report violations as data.
//!
//! On a finite ground set `φ ↦ max φ` is a legitimate Sugeno functional
//! (for the capacity that is 1 on every non-empty set). On non-compact
//! spaces `sup φ` is the standard counterexample; no such space exists here.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::integrals::sugeno;
use crate::report::{Report, Violation};
use crate::space::{common_denominator, GroundSet, Observable, Subset, UnitValue};

pub trait Functional {
    fn ground(&self) -> &GroundSet;

    /// Must be deterministic and side-effect free.
    fn evaluate(&self, phi: &Observable) -> Result<UnitValue>;
}

/// `φ ↦ sugeno(c, φ)`.
#[derive(Clone, Debug)]
pub struct SugenoFunctional {
    capacity: Capacity,
}

impl SugenoFunctional {
    pub fn new(capacity: Capacity) -> Self {
        SugenoFunctional { capacity }
    }

    pub fn capacity(&self) -> &Capacity {
        &self.capacity
    }
}

impl Functional for SugenoFunctional {
    fn ground(&self) -> &GroundSet {
        self.capacity.ground()
    }

    fn evaluate(&self, phi: &Observable) -> Result<UnitValue> {
        sugeno(&self.capacity, phi)
    }
}

/// `φ ↦ max φ`.
#[derive(Clone, Debug)]
pub struct MaxFunctional {
    ground: GroundSet,
}

impl MaxFunctional {
    pub fn new(ground: &GroundSet) -> Self {
        MaxFunctional {
            ground: ground.clone(),
        }
    }
}

impl Functional for MaxFunctional {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn evaluate(&self, phi: &Observable) -> Result<UnitValue> {
        self.ground.ensure_same(phi.ground())?;
        Ok(phi.max_over(self.ground.full()).expect("non-empty").clone())
    }
}

/// `φ ↦ φ(x)`.
#[derive(Clone, Debug)]
pub struct PointEvaluation {
    ground: GroundSet,
    point: usize,
}

impl PointEvaluation {
    pub fn new(ground: &GroundSet, name: &str) -> Result<Self> {
        Ok(PointEvaluation {
            point: ground.index_of(name)?,
            ground: ground.clone(),
        })
    }
}

impl Functional for PointEvaluation {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn evaluate(&self, phi: &Observable) -> Result<UnitValue> {
        self.ground.ensure_same(phi.ground())?;
        Ok(phi.get(self.point).clone())
    }
}

/// A functional given by a finite table of observables.
///
/// Evaluating outside the table is an error.
#[derive(Clone, Debug)]
pub struct TableFunctional {
    ground: GroundSet,
    entries: BTreeMap<Vec<UnitValue>, UnitValue>,
}

impl TableFunctional {
    pub fn new(ground: &GroundSet, entries: Vec<(Observable, UnitValue)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (phi, value) in entries {
            ground.ensure_same(phi.ground())?;
            map.insert(phi.values().to_vec(), value);
        }
        Ok(TableFunctional {
            ground: ground.clone(),
            entries: map,
        })
    }

    /// Tabulates `source` on every sample of `samples` and its `α ∧ ·`,
    /// `α ∨ ·` shifts.
    pub fn tabulate<F: Functional>(
        source: &F,
        samples: &[(Observable, UnitValue)],
    ) -> Result<Self> {
        let mut entries = Vec::new();
        for (phi, alpha) in samples {
            for psi in [phi.clone(), phi.meet(alpha), phi.join(alpha)] {
                let value = source.evaluate(&psi)?;
                entries.push((psi, value));
            }
        }
        Self::new(source.ground(), entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Functional for TableFunctional {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn evaluate(&self, phi: &Observable) -> Result<UnitValue> {
        self.ground.ensure_same(phi.ground())?;
        self.entries.get(phi.values()).cloned().ok_or_else(|| {
            Error::OutsideDomain(phi.values().iter().map(UnitValue::render).collect())
        })
    }
}

/// Wraps a closure as a functional.
pub struct FnFunctional<F> {
    ground: GroundSet,
    rule: F,
}

impl<F: Fn(&Observable) -> UnitValue> FnFunctional<F> {
    pub fn new(ground: &GroundSet, rule: F) -> Self {
        FnFunctional {
            ground: ground.clone(),
            rule,
        }
    }
}

impl<F: Fn(&Observable) -> UnitValue> Functional for FnFunctional<F> {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn evaluate(&self, phi: &Observable) -> Result<UnitValue> {
        self.ground.ensure_same(phi.ground())?;
        Ok((self.rule)(phi))
    }
}

/// `δ_φ : c ↦ sugeno(c, φ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaFunctional {
    phi: Observable,
}

impl DeltaFunctional {
    pub fn new(phi: Observable) -> Self {
        DeltaFunctional { phi }
    }

    pub fn observable(&self) -> &Observable {
        &self.phi
    }

    pub fn eval(&self, c: &Capacity) -> Result<UnitValue> {
        sugeno(c, &self.phi)
    }
}

/// All indicators and constants, each paired with every grid level `k/d`.
pub fn exhaustive_samples(ground: &GroundSet, d: u32) -> Vec<(Observable, UnitValue)> {
    let grid: Vec<UnitValue> = (0..=d)
        .map(|k| UnitValue::grid(k.into(), d.into()).expect("grid point"))
        .collect();
    let mut shapes: Vec<Observable> = ground
        .subsets()
        .map(|s| Observable::indicator(ground, s))
        .collect();
    shapes.extend(grid.iter().map(|k| Observable::constant(ground, k.clone())));
    shapes.sort();
    shapes.dedup();
    shapes
        .iter()
        .flat_map(|phi| grid.iter().map(move |a| (phi.clone(), a.clone())))
        .collect()
}

/// Checks monotonicity on every comparable pair of sampled observables
/// and `∧`/`∨`-homogeneity on every sampled `(φ, α)`.
pub fn check_sugeno_axioms<F: Functional + ?Sized>(
    i: &F,
    samples: &[(Observable, UnitValue)],
) -> Result<Report> {
    let mut report = Report::new();
    let mut observables: Vec<&Observable> = samples.iter().map(|(phi, _)| phi).collect();
    observables.sort();
    observables.dedup();
    let values = observables
        .iter()
        .map(|phi| i.evaluate(phi))
        .collect::<Result<Vec<_>>>()?;

    for (a, phi) in observables.iter().enumerate() {
        for (b, psi) in observables.iter().enumerate() {
            if a == b || !phi.pointwise_le(psi) {
                continue;
            }
            report.checked += 1;
            if values[a] > values[b] {
                report.push(Violation::FunctionalMonotonicity {
                    phi: phi.values().to_vec(),
                    psi: psi.values().to_vec(),
                    at_phi: values[a].clone(),
                    at_psi: values[b].clone(),
                });
            }
        }
    }

    for (phi, alpha) in samples {
        let base = i.evaluate(phi)?;
        report.checked += 2;
        let lhs = i.evaluate(&phi.meet(alpha))?;
        let rhs = alpha.min(&base).clone();
        if lhs != rhs {
            report.push(Violation::MeetHomogeneity {
                alpha: alpha.clone(),
                phi: phi.values().to_vec(),
                lhs,
                rhs,
            });
        }
        let lhs = i.evaluate(&phi.join(alpha))?;
        let rhs = alpha.max(&base).clone();
        if lhs != rhs {
            report.push(Violation::JoinHomogeneity {
                alpha: alpha.clone(),
                phi: phi.values().to_vec(),
                lhs,
                rhs,
            });
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainDirection {
    Decreasing,
    Increasing,
}

/// A finite monotone chain `φ_1, φ_2, ...` together with a target `ψ`.
///
/// A decreasing chain must end at or below `ψ`; an increasing one must end
/// at or above it.
#[derive(Clone, Debug)]
pub struct Chain {
    pub direction: ChainDirection,
    pub steps: Vec<Observable>,
    pub target: Observable,
}

/// Checks `inf_k i(φ_k) <= i(ψ)` on decreasing chains and
/// `sup_k i(φ_k) >= i(ψ)` on increasing ones.
///
/// Finite truncations cannot witness limits, so only these inequalities
/// are asserted.
pub fn check_tau_smooth<F: Functional + ?Sized>(i: &F, chains: &[Chain]) -> Result<Report> {
    let mut report = Report::new();
    for (idx, chain) in chains.iter().enumerate() {
        let last = chain.steps.last().ok_or(Error::ChainNotMonotone(idx))?;
        let ordered = chain.steps.windows(2).all(|w| match chain.direction {
            ChainDirection::Decreasing => w[1].pointwise_le(&w[0]),
            ChainDirection::Increasing => w[0].pointwise_le(&w[1]),
        });
        if !ordered {
            return Err(Error::ChainNotMonotone(idx));
        }
        let approaches = match chain.direction {
            ChainDirection::Decreasing => last.pointwise_le(&chain.target),
            ChainDirection::Increasing => chain.target.pointwise_le(last),
        };
        if !approaches {
            return Err(Error::ChainTargetMismatch(idx));
        }
        let values = chain
            .steps
            .iter()
            .map(|phi| i.evaluate(phi))
            .collect::<Result<Vec<_>>>()?;
        let target = i.evaluate(&chain.target)?;
        report.checked += 1;
        match chain.direction {
            ChainDirection::Decreasing => {
                let inf = values.into_iter().min().expect("non-empty chain");
                if inf > target {
                    report.push(Violation::TauSmoothness {
                        chain: idx,
                        infimum: inf,
                        target,
                    });
                }
            }
            ChainDirection::Increasing => {
                let sup = values.into_iter().max().expect("non-empty chain");
                if sup < target {
                    report.push(Violation::RadonCondition {
                        chain: idx,
                        supremum: sup,
                        target,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Recovers the capacity of a Sugeno functional: `c(F) = i(χ_F)`.
///
/// On a finite space `χ_F` is itself the least `ψ >= χ_F`, so the
/// infimum `inf { i(ψ) : ψ >= χ_F }` is attained there. The functional
/// is first checked on the exhaustive sample family over the grid whose
/// denominator is the lcm of the indicator values' denominators (at least 2).
pub fn reconstruct<F: Functional + ?Sized>(i: &F) -> Result<Capacity> {
    let ground = i.ground().clone();
    let indicator_values = ground
        .subsets()
        .map(|s| i.evaluate(&Observable::indicator(&ground, s)))
        .collect::<Result<Vec<_>>>()?;
    let d = common_denominator(&indicator_values).max(BigInt::from(2));
    let d = d
        .to_u32()
        .ok_or_else(|| Error::Malformed(format!("grid denominator {d}")))?;
    reconstruct_with_grid(i, d)
}

/// As [`reconstruct`], gating on the sample family of denominator `d`.
pub fn reconstruct_with_grid<F: Functional + ?Sized>(i: &F, d: u32) -> Result<Capacity> {
    let ground = i.ground().clone();
    let report = check_sugeno_axioms(i, &exhaustive_samples(&ground, d))?;
    if !report.passed() {
        return Err(Error::AxiomsViolated(report));
    }
    let table = ground
        .subsets()
        .map(|s: Subset| i.evaluate(&Observable::indicator(&ground, s)))
        .collect::<Result<Vec<_>>>()?;
    Capacity::from_table(ground, table)
}
