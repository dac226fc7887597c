//! The capacity monad on finitely supported higher-level capacities.
//!
//! A level-2 capacity is a finite list of distinct capacities on `X`
//! together with a capacity on the index set of that list; the value of a
//! set `P` of capacities is the index capacity of `{i : support[i] ∈ P}`.
//! Supports are kept sorted (lexicographically by table) and
//! deduplicated, so structural equality is equality of the represented
//! objects. Level-3 capacities are the same construction one level up.

use crate::capacity::{canonical_dedup, Capacity};
use crate::error::{Error, Result};
use crate::hyperspace::GeneratedHyperHyperspace;
use crate::hyperspace::InclusionHyperspace;
use crate::integrals::sugeno;
use crate::report::{Report, Violation};
use crate::space::{GroundSet, Observable, SpaceMap, Subset, UnitValue};

/// `sup { α : index({j : values[j] >= α}) >= α }`.
///
/// `α ↦ index({j : values[j] >= α})` is non-increasing, left-continuous
/// and only jumps at the `values`, so the supremum is attained in
/// `{0, 1} ∪ values ∪ range(index)`.
pub fn threshold_sup(values: &[UnitValue], index: &Capacity) -> UnitValue {
    debug_assert_eq!(values.len(), index.ground().len());
    let mut candidates: Vec<&UnitValue> = values.iter().chain(index.table()).collect();
    candidates.sort_unstable_by(|a, b| b.cmp(a));
    candidates.dedup();
    for alpha in candidates {
        let above = Subset::from_indices((0..values.len()).filter(|&j| values[j] >= *alpha));
        if index.value(above) >= alpha {
            return alpha.clone();
        }
    }
    // The table contains 0, so the loop always returns.
    UnitValue::zero()
}

/// Relabels `index` onto `{0, ..., m-1}` and pushes it along the
/// canonical deduplication of `items`.
fn canonicalize<T: Ord + Clone + std::hash::Hash>(
    items: &[T],
    index: &Capacity,
) -> Result<(Vec<T>, Capacity)> {
    if items.is_empty() {
        return Err(Error::EmptySupport);
    }
    if index.ground().len() != items.len() {
        return Err(Error::ArityMismatch {
            expected: items.len(),
            found: index.ground().len(),
        });
    }
    let (sorted, positions) = canonical_dedup(items);
    let from = GroundSet::indices(items.len())?;
    let to = GroundSet::indices(sorted.len())?;
    let relabeled = Capacity::from_table_unchecked(from.clone(), index.table().to_vec());
    let quotient = SpaceMap::new(from, to, positions)?;
    Ok((sorted, relabeled.pushforward(&quotient)?))
}

/// A finitely supported element of `M²X`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Capacity2 {
    ground: GroundSet,
    support: Vec<Capacity>,
    index: Capacity,
}

impl Capacity2 {
    /// `index` lives on any ground set with one point per entry of
    /// `support`. Repeated support entries are merged.
    pub fn new(ground: &GroundSet, support: Vec<Capacity>, index: Capacity) -> Result<Self> {
        for c in &support {
            ground.ensure_same(c.ground())?;
        }
        let (support, index) = canonicalize(&support, &index)?;
        Ok(Capacity2 {
            ground: ground.clone(),
            support,
            index,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn support(&self) -> &[Capacity] {
        &self.support
    }

    pub fn index_capacity(&self) -> &Capacity {
        &self.index
    }

    /// `𝒞(P)` for the set `P` of capacities satisfying `pred`.
    pub fn value_where<P: Fn(&Capacity) -> bool>(&self, pred: P) -> &UnitValue {
        let s = Subset::from_indices((0..self.support.len()).filter(|&i| pred(&self.support[i])));
        self.index.value(s)
    }

    /// `η_{MX}(c)`: the Dirac capacity at `c`.
    pub fn eta(c: &Capacity) -> Self {
        let one = GroundSet::indices(1).expect("one point");
        Capacity2 {
            ground: c.ground().clone(),
            support: vec![c.clone()],
            index: Capacity::dirac_at(&one, 0),
        }
    }

    /// `M(η_M)(c)`: the image of `c` along `x ↦ η_M(x)`.
    pub fn map_eta(c: &Capacity) -> Self {
        let ground = c.ground();
        let support = (0..ground.len())
            .map(|x| Capacity::dirac_at(ground, x))
            .collect();
        Capacity2::new(ground, support, c.clone()).expect("Dirac capacities on a valid ground set")
    }

    /// `μ_M(𝒞)(F) = sup { α : 𝒞({c : c(F) >= α}) >= α }`.
    pub fn mu(&self) -> Capacity {
        let table = self
            .ground
            .subsets()
            .map(|f| {
                let values: Vec<UnitValue> =
                    self.support.iter().map(|c| c.value(f).clone()).collect();
                threshold_sup(&values, &self.index)
            })
            .collect();
        Capacity::from_table_unchecked(self.ground.clone(), table)
    }

    /// `M(Mf)(𝒞)`.
    pub fn pushforward(&self, f: &SpaceMap) -> Result<Capacity2> {
        self.ground.ensure_same(f.domain())?;
        let support = self
            .support
            .iter()
            .map(|c| c.pushforward(f))
            .collect::<Result<Vec<_>>>()?;
        Capacity2::new(f.codomain(), support, self.index.clone())
    }

    /// `μ_M(𝒞)(φ) = 𝒞(δ_φ)`: the Sugeno integral over the index set of
    /// `i ↦ sugeno(support[i], φ)`.
    pub fn mu_via_delta(&self, phi: &Observable) -> Result<UnitValue> {
        self.ground.ensure_same(phi.ground())?;
        let values = self
            .support
            .iter()
            .map(|c| sugeno(c, phi))
            .collect::<Result<Vec<_>>>()?;
        let lifted = Observable::new(self.index.ground().clone(), values)?;
        sugeno(&self.index, &lifted)
    }
}

/// A finitely supported element of `M³X`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Capacity3 {
    ground: GroundSet,
    support: Vec<Capacity2>,
    index: Capacity,
}

impl Capacity3 {
    pub fn new(ground: &GroundSet, support: Vec<Capacity2>, index: Capacity) -> Result<Self> {
        for c in &support {
            ground.ensure_same(c.ground())?;
        }
        let (support, index) = canonicalize(&support, &index)?;
        Ok(Capacity3 {
            ground: ground.clone(),
            support,
            index,
        })
    }

    pub fn eta(c: &Capacity2) -> Self {
        let one = GroundSet::indices(1).expect("one point");
        Capacity3 {
            ground: c.ground().clone(),
            support: vec![c.clone()],
            index: Capacity::dirac_at(&one, 0),
        }
    }

    pub fn support(&self) -> &[Capacity2] {
        &self.support
    }

    pub fn index_capacity(&self) -> &Capacity {
        &self.index
    }

    /// `μ_{MX}`: flattens to a level-2 capacity supported on the union of
    /// the inner supports.
    pub fn mu(&self) -> Result<Capacity2> {
        let mut union: Vec<Capacity> = self
            .support
            .iter()
            .flat_map(|c| c.support.iter().cloned())
            .collect();
        union.sort();
        union.dedup();
        let outer = GroundSet::indices(union.len())?;
        let positions: Vec<Vec<usize>> = self
            .support
            .iter()
            .map(|c| {
                c.support
                    .iter()
                    .map(|x| union.binary_search(x).expect("member of union"))
                    .collect()
            })
            .collect();
        let table = outer
            .subsets()
            .map(|s| {
                let values: Vec<UnitValue> = self
                    .support
                    .iter()
                    .zip(&positions)
                    .map(|(c, pos)| {
                        let inner =
                            Subset::from_indices((0..pos.len()).filter(|&i| s.contains(pos[i])));
                        c.index.value(inner).clone()
                    })
                    .collect();
                threshold_sup(&values, &self.index)
            })
            .collect();
        let index = Capacity::from_table_unchecked(outer, table);
        Ok(Capacity2 {
            ground: self.ground.clone(),
            support: union,
            index,
        })
    }

    /// `M(μ_M)`: applies `μ_M` to every support point.
    pub fn map_mu(&self) -> Capacity2 {
        let support = self.support.iter().map(Capacity2::mu).collect();
        Capacity2::new(&self.ground, support, self.index.clone())
            .expect("non-empty support on one ground set")
    }

    /// `M(η_{MX})`-style lift of a level-2 capacity: each support point
    /// `c` is replaced by `η_{MX}(c)`.
    pub fn map_eta(c: &Capacity2) -> Self {
        let support = c.support.iter().map(Capacity2::eta).collect();
        Capacity3::new(&c.ground, support, c.index.clone()).expect("distinct Dirac points")
    }
}

/// Encodes a finitely generated `𝐅 ∈ G²X` as a level-2 capacity: the
/// support is the 0/1 capacities of the hyperspaces in the generators, and
/// the index capacity is 1 exactly on sets containing a whole generator.
///
/// This is `G(i)` followed by `i` at `MX`, where `i` embeds hyperspaces as
/// 0/1 capacities.
pub fn encode_hyper_hyperspace(big: &GeneratedHyperHyperspace) -> Result<Capacity2> {
    let atoms = big.atoms();
    let support: Vec<Capacity> = atoms
        .iter()
        .map(InclusionHyperspace::embed_capacity)
        .collect();
    let index_ground = GroundSet::indices(atoms.len())?;
    let generator_masks: Vec<Subset> = big
        .generators()
        .iter()
        .map(|g| {
            Subset::from_indices(
                g.iter()
                    .map(|h| atoms.binary_search(h).expect("atom of a generator")),
            )
        })
        .collect();
    let table = index_ground
        .subsets()
        .map(|s| {
            if generator_masks.iter().any(|g| g.is_subset_of(s)) {
                UnitValue::one()
            } else {
                UnitValue::zero()
            }
        })
        .collect();
    let index = Capacity::from_table(index_ground, table)?;
    Capacity2::new(big.ground(), support, index)
}

/// Checks both squares of the hyperspace-to-capacity monad morphism on
/// `big`: `i(η_G(x)) = η_M(x)` for every point, and
/// `i(μ_G(𝐅)) = μ_M(Θ(𝐅))` with `Θ` from [`encode_hyper_hyperspace`].
pub fn check_morphism(big: &GeneratedHyperHyperspace) -> Result<Report> {
    let ground = big.ground();
    let mut report = Report::new();
    for x in 0..ground.len() {
        report.checked += 1;
        let embedded = InclusionHyperspace::eta_at(ground, x).embed_capacity();
        let dirac = Capacity::dirac_at(ground, x);
        if let Some(s) = ground
            .subsets()
            .find(|&s| embedded.value(s) != dirac.value(s))
        {
            report.push(Violation::UnitSquare {
                point: x,
                subset: s.0,
                embedded: embedded.value(s).clone(),
                dirac: dirac.value(s).clone(),
            });
        }
    }
    report.checked += 1;
    let embedded = big.mu().embed_capacity();
    let multiplied = encode_hyper_hyperspace(big)?.mu();
    if let Some(s) = ground
        .subsets()
        .find(|&s| embedded.value(s) != multiplied.value(s))
    {
        report.push(Violation::MultiplicationSquare {
            subset: s.0,
            embedded: embedded.value(s).clone(),
            multiplied: multiplied.value(s).clone(),
        });
    }
    Ok(report)
}
