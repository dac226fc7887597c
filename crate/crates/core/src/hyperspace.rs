//! Inclusion hyperspaces: non-empty upward-closed families of non-empty
//! subsets, stored through their antichain of minimal members.
//!
//! Elements of the second and third iterates `G²X`, `G³X` are only
//! handled in finitely generated form. Every formula of the monad factors
//! through generators because `μ_G` is antitone in the generating set.

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::space::{GroundSet, Observable, SpaceMap, Subset, UnitValue};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct InclusionHyperspace {
    ground: GroundSet,
    minimal: Vec<Subset>,
}

impl InclusionHyperspace {
    /// The upward closure of `sets`, canonicalized to its minimal members
    /// sorted by `(cardinality, mask)`.
    pub fn up_closure(ground: &GroundSet, sets: &[Subset]) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for &s in sets {
            ground.check_subset(s)?;
            if s.is_empty() {
                return Err(Error::EmptySetMember);
            }
        }
        Ok(Self::from_members(ground, sets.iter().copied()))
    }

    fn from_members<I: IntoIterator<Item = Subset>>(ground: &GroundSet, sets: I) -> Self {
        let mut sorted: Vec<Subset> = sets.into_iter().collect();
        sorted.sort_by(Subset::canonical_cmp);
        sorted.dedup();
        let mut minimal: Vec<Subset> = Vec::new();
        // Canonical order lists every proper subset before its supersets.
        for s in sorted {
            if !minimal.iter().any(|k| k.is_subset_of(s)) {
                minimal.push(s);
            }
        }
        debug_assert!(!minimal.is_empty());
        InclusionHyperspace {
            ground: ground.clone(),
            minimal,
        }
    }

    /// `η_G(x) = {F : x ∈ F}`.
    pub fn eta(ground: &GroundSet, name: &str) -> Result<Self> {
        let x = ground.index_of(name)?;
        Ok(Self::eta_at(ground, x))
    }

    pub fn eta_at(ground: &GroundSet, x: usize) -> Self {
        assert!(x < ground.len(), "point {x} out of range");
        InclusionHyperspace {
            ground: ground.clone(),
            minimal: vec![Subset::singleton(x)],
        }
    }

    /// The family of all non-empty subsets.
    pub fn all_nonempty(ground: &GroundSet) -> Self {
        Self::from_members(ground, (0..ground.len()).map(Subset::singleton))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn minimal(&self) -> &[Subset] {
        &self.minimal
    }

    pub fn member(&self, s: Subset) -> bool {
        self.minimal.iter().any(|k| k.is_subset_of(s))
    }

    /// All members in increasing mask order.
    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        self.ground.nonempty_subsets().filter(|&s| self.member(s))
    }

    /// Family inclusion `self ⊆ other`.
    pub fn is_subfamily_of(&self, other: &InclusionHyperspace) -> bool {
        self.ground == other.ground && self.minimal.iter().all(|&k| other.member(k))
    }

    /// `Gf(ℱ) = {B : B ⊇ f(A) for some A ∈ ℱ}`.
    pub fn map(&self, f: &SpaceMap) -> Result<InclusionHyperspace> {
        self.ground.ensure_same(f.domain())?;
        Ok(Self::from_members(
            f.codomain(),
            self.minimal.iter().map(|&k| f.image_of(k)),
        ))
    }

    /// `min { max_F φ : F ∈ ℱ }`, attained on minimal members.
    pub fn m_lower(&self, phi: &Observable) -> Result<UnitValue> {
        self.ground.ensure_same(phi.ground())?;
        Ok(self
            .minimal
            .iter()
            .map(|&k| phi.max_over(k).expect("non-empty member"))
            .min()
            .expect("non-empty antichain")
            .clone())
    }

    /// `max { min_F φ : F ∈ ℱ }`, attained on minimal members.
    pub fn m_upper(&self, phi: &Observable) -> Result<UnitValue> {
        self.ground.ensure_same(phi.ground())?;
        Ok(self
            .minimal
            .iter()
            .map(|&k| phi.min_over(k).expect("non-empty member"))
            .max()
            .expect("non-empty antichain")
            .clone())
    }

    /// The 0/1 capacity `c(F) = [F ∈ ℱ]`.
    pub fn embed_capacity(&self) -> Capacity {
        let table = self
            .ground
            .subsets()
            .map(|s| {
                if self.member(s) {
                    UnitValue::one()
                } else {
                    UnitValue::zero()
                }
            })
            .collect();
        Capacity::from_table_unchecked(self.ground.clone(), table)
    }

    /// Every inclusion hyperspace on `ground`, in a deterministic order.
    ///
    /// These are the non-empty antichains of non-empty subsets; their
    /// number grows like the Dedekind numbers, so keep `ground` small.
    pub fn enumerate(ground: &GroundSet) -> Vec<InclusionHyperspace> {
        let mut candidates: Vec<Subset> = ground.nonempty_subsets().collect();
        candidates.sort_by(Subset::canonical_cmp);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        collect_antichains(&candidates, 0, &mut chosen, &mut |ac| {
            out.push(InclusionHyperspace {
                ground: ground.clone(),
                minimal: ac.to_vec(),
            })
        });
        out.sort();
        out
    }
}

fn collect_antichains(
    candidates: &[Subset],
    start: usize,
    chosen: &mut Vec<Subset>,
    emit: &mut dyn FnMut(&[Subset]),
) {
    if !chosen.is_empty() {
        emit(chosen);
    }
    for i in start..candidates.len() {
        let s = candidates[i];
        // Later candidates are never proper subsets of earlier ones.
        if chosen.iter().any(|k| k.is_subset_of(s)) {
            continue;
        }
        chosen.push(s);
        collect_antichains(candidates, i + 1, chosen, emit);
        chosen.pop();
    }
}

/// A finitely generated element of `G²X`: the family of all sets of
/// hyperspaces containing at least one of the generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GeneratedHyperHyperspace {
    ground: GroundSet,
    generators: Vec<Vec<InclusionHyperspace>>,
}

impl GeneratedHyperHyperspace {
    /// Canonicalizes each generator as a sorted set and drops generators
    /// that contain another one.
    pub fn new(ground: &GroundSet, generators: Vec<Vec<InclusionHyperspace>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut gens = Vec::with_capacity(generators.len());
        for mut g in generators {
            if g.is_empty() {
                return Err(Error::EmptyFamily);
            }
            for h in &g {
                ground.ensure_same(h.ground())?;
            }
            g.sort();
            g.dedup();
            gens.push(g);
        }
        Ok(Self::from_canonical_sets(ground, gens))
    }

    fn from_canonical_sets(ground: &GroundSet, mut gens: Vec<Vec<InclusionHyperspace>>) -> Self {
        gens.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        gens.dedup();
        let mut kept: Vec<Vec<InclusionHyperspace>> = Vec::new();
        for g in gens {
            if !kept.iter().any(|k| is_sorted_subset(k, &g)) {
                kept.push(g);
            }
        }
        GeneratedHyperHyperspace {
            ground: ground.clone(),
            generators: kept,
        }
    }

    /// `η_{GX}(ℋ) = {H ⊆ GX : ℋ ∈ H}`.
    pub fn eta(h: &InclusionHyperspace) -> Self {
        GeneratedHyperHyperspace {
            ground: h.ground().clone(),
            generators: vec![vec![h.clone()]],
        }
    }

    /// `G(η_G)(ℱ)`, generated by `{η_G(x) : x ∈ K}` for each minimal `K`.
    pub fn map_eta(f: &InclusionHyperspace) -> Self {
        let gens = f
            .minimal()
            .iter()
            .map(|k| {
                let mut g: Vec<_> = k
                    .iter()
                    .map(|x| InclusionHyperspace::eta_at(f.ground(), x))
                    .collect();
                g.sort();
                g
            })
            .collect();
        Self::from_canonical_sets(f.ground(), gens)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn generators(&self) -> &[Vec<InclusionHyperspace>] {
        &self.generators
    }

    /// Whether the set of hyperspaces `h` belongs to this family.
    pub fn member(&self, h: &[InclusionHyperspace]) -> bool {
        self.generators
            .iter()
            .any(|g| g.iter().all(|x| h.contains(x)))
    }

    /// `μ_G(𝐅) = {F : F ∈ ⋂H for some H ∈ 𝐅}`.
    ///
    /// Enlarging `H` shrinks `⋂H`, so the union runs over generators only.
    /// Each intersection contains `X`, so the result is never empty.
    pub fn mu(&self) -> InclusionHyperspace {
        let members = self.generators.iter().flat_map(|g| {
            self.ground
                .nonempty_subsets()
                .filter(move |&s| g.iter().all(|h| h.member(s)))
        });
        InclusionHyperspace::from_members(&self.ground, members)
    }

    /// Applies `Gf` at the second level: `G(Gf)(𝐅)`.
    pub fn map(&self, f: &SpaceMap) -> Result<GeneratedHyperHyperspace> {
        self.ground.ensure_same(f.domain())?;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut img = g.iter().map(|h| h.map(f)).collect::<Result<Vec<_>>>()?;
                img.sort();
                img.dedup();
                Ok(img)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_canonical_sets(f.codomain(), gens))
    }

    /// Every hyperspace occurring in some generator, sorted and deduplicated.
    pub fn atoms(&self) -> Vec<InclusionHyperspace> {
        let mut all: Vec<_> = self.generators.iter().flatten().cloned().collect();
        all.sort();
        all.dedup();
        all
    }
}

fn is_sorted_subset<T: Ord>(small: &[T], big: &[T]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// A finitely generated element of `G³X`; each generator is a finite set
/// of finitely generated elements of `G²X`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratedLevel3 {
    ground: GroundSet,
    generators: Vec<Vec<GeneratedHyperHyperspace>>,
}

impl GeneratedLevel3 {
    pub fn new(ground: &GroundSet, generators: Vec<Vec<GeneratedHyperHyperspace>>) -> Result<Self> {
        if generators.is_empty() || generators.iter().any(Vec::is_empty) {
            return Err(Error::EmptyFamily);
        }
        for f in generators.iter().flatten() {
            ground.ensure_same(f.ground())?;
        }
        Ok(GeneratedLevel3 {
            ground: ground.clone(),
            generators,
        })
    }

    pub fn generators(&self) -> &[Vec<GeneratedHyperHyperspace>] {
        &self.generators
    }

    /// `μ_{GX}(𝔉)`.
    ///
    /// A set of hyperspaces lies in every `𝐅` of a generator exactly when
    /// it contains one generator of each `𝐅`, so the result is generated
    /// by the unions over all such choices.
    pub fn mu_inner(&self) -> GeneratedHyperHyperspace {
        let mut gens: Vec<Vec<InclusionHyperspace>> = Vec::new();
        for a in &self.generators {
            let mut partial: Vec<Vec<InclusionHyperspace>> = vec![Vec::new()];
            for f in a {
                let mut next = Vec::with_capacity(partial.len() * f.generators().len());
                for p in &partial {
                    for g in f.generators() {
                        let mut u = p.clone();
                        u.extend(g.iter().cloned());
                        u.sort();
                        u.dedup();
                        next.push(u);
                    }
                }
                next.sort();
                next.dedup();
                partial = next;
            }
            gens.extend(partial);
        }
        GeneratedHyperHyperspace::from_canonical_sets(&self.ground, gens)
    }

    /// `G(μ_G)(𝔉)`: each generator `A` maps to `{μ_G(𝐅) : 𝐅 ∈ A}`.
    pub fn map_mu(&self) -> GeneratedHyperHyperspace {
        let gens = self
            .generators
            .iter()
            .map(|a| {
                let mut g: Vec<_> = a.iter().map(GeneratedHyperHyperspace::mu).collect();
                g.sort();
                g.dedup();
                g
            })
            .collect();
        GeneratedHyperHyperspace::from_canonical_sets(&self.ground, gens)
    }
}
