//! Exhaustive and seeded random instances for law checking.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::capacity::Capacity;
use crate::hyperspace::{GeneratedHyperHyperspace, GeneratedLevel3, InclusionHyperspace};
use crate::monad::{Capacity2, Capacity3};
use crate::space::{GroundSet, Observable, Subset, UnitValue};

/// `{0, 1/d, ..., 1}`.
pub fn grid(d: u32) -> Vec<UnitValue> {
    (0..=d)
        .map(|k| UnitValue::grid(k.into(), d.into()).expect("grid point"))
        .collect()
}

/// Every capacity on `ground` with values in the grid of denominator `d`,
/// in lexicographic table order.
pub fn grid_capacities(ground: &GroundSet, d: u32) -> Vec<Capacity> {
    let values = grid(d);
    let size = ground.powerset_len();
    let mut out = Vec::new();
    let mut table: Vec<usize> = Vec::with_capacity(size);
    fill_monotone(ground, d as usize, &mut table, &mut |t| {
        let table = t.iter().map(|&k| values[k].clone()).collect();
        out.push(Capacity::from_table(ground.clone(), table).expect("monotone by construction"));
    });
    out.sort();
    out
}

fn fill_monotone(
    ground: &GroundSet,
    d: usize,
    table: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let mask = table.len();
    if mask == ground.powerset_len() {
        emit(table);
        return;
    }
    let s = Subset(mask as u32);
    let (lo, hi) = if s.is_empty() {
        (0, 0)
    } else if s == ground.full() {
        (d, d)
    } else {
        let lo = s
            .iter()
            .map(|i| table[s.without(i).0 as usize])
            .max()
            .unwrap_or(0);
        (lo, d)
    };
    for k in lo..=hi {
        table.push(k);
        fill_monotone(ground, d, table, emit);
        table.pop();
    }
}

pub fn random_value<R: Rng + ?Sized>(rng: &mut R, d: u32) -> UnitValue {
    UnitValue::grid(rng.gen_range(0..=d).into(), d.into()).expect("grid point")
}

pub fn random_observable<R: Rng + ?Sized>(rng: &mut R, ground: &GroundSet, d: u32) -> Observable {
    let values = (0..ground.len()).map(|_| random_value(rng, d)).collect();
    Observable::new(ground.clone(), values).expect("arity matches")
}

/// A random capacity with values on the grid of denominator `d`.
///
/// Subsets are visited in mask order and each value is drawn uniformly
/// between the largest value below it and 1.
pub fn random_capacity<R: Rng + ?Sized>(rng: &mut R, ground: &GroundSet, d: u32) -> Capacity {
    let mut table: Vec<u32> = Vec::with_capacity(ground.powerset_len());
    let full = ground.full();
    for s in ground.subsets() {
        let k = if s.is_empty() {
            0
        } else if s == full {
            d
        } else {
            let lo = s
                .iter()
                .map(|i| table[s.without(i).0 as usize])
                .max()
                .unwrap_or(0);
            // Bias towards small increments so tables are not saturated.
            let step = rng.gen_range(0..=(d - lo)).min(rng.gen_range(0..=(d - lo)));
            lo + step
        };
        table.push(k);
    }
    let table = table
        .into_iter()
        .map(|k| UnitValue::grid(k.into(), d.into()).expect("grid point"))
        .collect();
    Capacity::from_table(ground.clone(), table).expect("monotone by construction")
}

/// A random probability vector with rational weights summing to 1.
pub fn random_probability<R: Rng + ?Sized>(rng: &mut R, n: usize, d: u32) -> Vec<UnitValue> {
    loop {
        let raw: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=d)).collect();
        let total: u32 = raw.iter().sum();
        if total == 0 {
            continue;
        }
        return raw
            .into_iter()
            .map(|k| {
                UnitValue::from_ratio(BigRational::new(k.into(), total.into()))
                    .expect("weight in [0,1]")
            })
            .collect();
    }
}

fn random_index_capacity<R: Rng + ?Sized>(rng: &mut R, m: usize, d: u32) -> Capacity {
    random_capacity(rng, &GroundSet::indices(m).expect("small index set"), d)
}

pub fn random_capacity2<R: Rng + ?Sized>(
    rng: &mut R,
    ground: &GroundSet,
    d: u32,
    max_support: usize,
) -> Capacity2 {
    let m = rng.gen_range(1..=max_support);
    let support = (0..m).map(|_| random_capacity(rng, ground, d)).collect();
    Capacity2::new(ground, support, random_index_capacity(rng, m, d)).expect("valid parts")
}

pub fn random_capacity3<R: Rng + ?Sized>(
    rng: &mut R,
    ground: &GroundSet,
    d: u32,
    max_support: usize,
) -> Capacity3 {
    let m = rng.gen_range(1..=max_support);
    let support = (0..m)
        .map(|_| random_capacity2(rng, ground, d, max_support))
        .collect();
    Capacity3::new(ground, support, random_index_capacity(rng, m, d)).expect("valid parts")
}

/// Every level-2 capacity whose support is a set of at most `max_support`
/// capacities from `family` and whose index capacity has values in the
/// grid of denominator `d`.
pub fn grid_capacity2s(
    ground: &GroundSet,
    family: &[Capacity],
    max_support: usize,
    d: u32,
) -> Vec<Capacity2> {
    let mut out = Vec::new();
    for m in 1..=max_support.min(family.len()) {
        let index_family = grid_capacities(&GroundSet::indices(m).expect("small index set"), d);
        for combo in combinations(family.len(), m) {
            let support: Vec<Capacity> = combo.iter().map(|&i| family[i].clone()).collect();
            for index in &index_family {
                out.push(
                    Capacity2::new(ground, support.clone(), index.clone()).expect("valid parts"),
                );
            }
        }
    }
    out
}

/// All `k`-element index combinations of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn random_hyperspace<R: Rng + ?Sized>(rng: &mut R, ground: &GroundSet) -> InclusionHyperspace {
    let candidates: Vec<Subset> = ground.nonempty_subsets().collect();
    let k = rng.gen_range(1..=candidates.len().min(4));
    let sets: Vec<Subset> = candidates.choose_multiple(rng, k).copied().collect();
    InclusionHyperspace::up_closure(ground, &sets).expect("non-empty sets")
}

pub fn random_hyper_hyperspace<R: Rng + ?Sized>(
    rng: &mut R,
    ground: &GroundSet,
    max_generators: usize,
    max_generator_size: usize,
) -> GeneratedHyperHyperspace {
    let n = rng.gen_range(1..=max_generators);
    let gens = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=max_generator_size);
            (0..k).map(|_| random_hyperspace(rng, ground)).collect()
        })
        .collect();
    GeneratedHyperHyperspace::new(ground, gens).expect("non-empty generators")
}

pub fn random_level3<R: Rng + ?Sized>(rng: &mut R, ground: &GroundSet) -> GeneratedLevel3 {
    let n = rng.gen_range(1..=2);
    let gens = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=2);
            (0..k)
                .map(|_| random_hyper_hyperspace(rng, ground, 2, 2))
                .collect()
        })
        .collect();
    GeneratedLevel3::new(ground, gens).expect("non-empty generators")
}

/// Every `𝐅 ∈ G²X` generated by sets of at most `max_generator_size`
/// hyperspaces from `family`, deduplicated after canonicalization.
pub fn all_hyper_hyperspaces(
    ground: &GroundSet,
    family: &[InclusionHyperspace],
    max_generator_size: usize,
) -> Vec<GeneratedHyperHyperspace> {
    let mut generator_sets: Vec<Vec<InclusionHyperspace>> = Vec::new();
    for k in 1..=max_generator_size.min(family.len()) {
        for combo in combinations(family.len(), k) {
            generator_sets.push(combo.iter().map(|&i| family[i].clone()).collect());
        }
    }
    assert!(
        generator_sets.len() < 20,
        "too many generator sets to enumerate"
    );
    let mut out: Vec<GeneratedHyperHyperspace> = (1u32..(1 << generator_sets.len()))
        .map(|pick| {
            let gens = (0..generator_sets.len())
                .filter(|&i| pick >> i & 1 == 1)
                .map(|i| generator_sets[i].clone())
                .collect();
            GeneratedHyperHyperspace::new(ground, gens).expect("non-empty generators")
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A comonotone pair: both observables are non-decreasing along the same
/// random ordering of the points.
pub fn random_comonotone_pair<R: Rng + ?Sized>(
    rng: &mut R,
    ground: &GroundSet,
    d: u32,
) -> (Observable, Observable) {
    let mut order: Vec<usize> = (0..ground.len()).collect();
    order.shuffle(rng);
    let sorted_values = |rng: &mut R| {
        let mut ks: Vec<u32> = (0..ground.len()).map(|_| rng.gen_range(0..=d)).collect();
        ks.sort_unstable();
        let mut values = vec![UnitValue::zero(); ground.len()];
        for (rank, &x) in order.iter().enumerate() {
            values[x] = UnitValue::grid(ks[rank].into(), d.into()).expect("grid point");
        }
        Observable::new(ground.clone(), values).expect("arity matches")
    };
    let phi = sorted_values(rng);
    let psi = sorted_values(rng);
    (phi, psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grid_capacity_counts() {
        let ab = GroundSet::new(["a", "b"]).unwrap();
        assert_eq!(grid_capacities(&ab, 2).len(), 9);
        let one = GroundSet::new(["a"]).unwrap();
        assert_eq!(grid_capacities(&one, 4).len(), 1);
    }

    #[test]
    fn random_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = GroundSet::new(["a", "b", "c"]).unwrap();
        for _ in 0..50 {
            let _ = random_capacity(&mut rng, &x, 6);
            let _ = random_capacity3(&mut rng, &x, 6, 3);
            let p = random_probability(&mut rng, 3, 5);
            let total = p
                .iter()
                .fold(BigRational::from_integer(0.into()), |a, w| a + w.ratio());
            assert_eq!(total, BigRational::from_integer(1.into()));
            let (phi, psi) = random_comonotone_pair(&mut rng, &x, 4);
            for i in 0..3 {
                for j in 0..3 {
                    if phi.get(i) < phi.get(j) {
                        assert!(psi.get(i) <= psi.get(j));
                    }
                }
            }
        }
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
