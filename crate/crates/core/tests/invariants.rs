//! Exhaustive and seeded checks of the per-module invariants.

use std::collections::BTreeSet;

use capkit::functional::{
    check_sugeno_axioms, check_tau_smooth, exhaustive_samples, reconstruct, Chain, ChainDirection,
    Functional, MaxFunctional, PointEvaluation, SugenoFunctional, TableFunctional,
};
use capkit::gen;
use capkit::integrals::PseudomultiplicationTable;
use capkit::subgraph::{self, Subgraph};
use capkit::{
    choquet, fuzzy, sugeno, Capacity, Capacity2, Error, GroundSet, InclusionHyperspace, Observable,
    Pseudomultiplication, SpaceMap, Subset, UnitValue,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn names(n: usize) -> GroundSet {
    GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

fn v(p: i64, q: i64) -> UnitValue {
    UnitValue::new(p, q).unwrap()
}

/// Every map from a space of size `n` to one of size `m`.
fn all_maps(x: &GroundSet, y: &GroundSet) -> Vec<SpaceMap> {
    let (n, m) = (x.len(), y.len());
    (0..m.pow(n as u32))
        .map(|mut code| {
            let image = (0..n)
                .map(|_| {
                    let k = code % m;
                    code /= m;
                    k
                })
                .collect();
            SpaceMap::new(x.clone(), y.clone(), image).unwrap()
        })
        .collect()
}

#[test]
fn pushforward_functoriality_exhaustive() {
    let spaces: Vec<GroundSet> = (1..=3).map(names).collect();
    for x in &spaces {
        let family = gen::grid_capacities(x, 4);
        for c in &family {
            assert_eq!(&c.pushforward(&SpaceMap::identity(x)).unwrap(), c);
        }
        for y in &spaces {
            for f in all_maps(x, y) {
                let pushed: Vec<Capacity> =
                    family.iter().map(|c| c.pushforward(&f).unwrap()).collect();
                for z in &spaces {
                    for g in all_maps(y, z) {
                        let gf = f.then(&g).unwrap();
                        for (c, fc) in family.iter().zip(&pushed) {
                            assert_eq!(c.pushforward(&gf).unwrap(), fc.pushforward(&g).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn injective_pushforward_is_injective() {
    for n in 1..=3 {
        let x = names(n);
        let family = gen::grid_capacities(&x, 4);
        for m in n..=3 {
            for f in all_maps(&x, &names(m))
                .into_iter()
                .filter(SpaceMap::is_injective)
            {
                let images: BTreeSet<Capacity> =
                    family.iter().map(|c| c.pushforward(&f).unwrap()).collect();
                assert_eq!(images.len(), family.len());
            }
        }
    }
}

#[test]
fn unit_is_natural() {
    for n in 1..=3 {
        for m in 1..=3 {
            let (x, y) = (names(n), names(m));
            for f in all_maps(&x, &y) {
                for p in 0..n {
                    assert_eq!(
                        Capacity::dirac_at(&x, p).pushforward(&f).unwrap(),
                        Capacity::dirac_at(&y, f.apply(p))
                    );
                    assert_eq!(
                        InclusionHyperspace::eta_at(&x, p).map(&f).unwrap(),
                        InclusionHyperspace::eta_at(&y, f.apply(p))
                    );
                }
            }
        }
    }
}

fn carriers(c: &Capacity) -> Vec<Subset> {
    let ground = c.ground();
    ground
        .subsets()
        .filter(|&s| {
            ground
                .subsets()
                .all(|f| c.value(f) == c.value(f.intersection(s)))
        })
        .collect()
}

fn check_support(c: &Capacity) {
    let support = c.support();
    let carriers = carriers(c);
    assert!(carriers.contains(&support), "support does not carry {c:?}");
    assert!(
        carriers.iter().all(|s| support.is_subset_of(*s)),
        "a carrier misses part of the support of {c:?}"
    );
    for &a in &carriers {
        for &b in &carriers {
            assert!(carriers.contains(&a.intersection(b)));
        }
    }
}

#[test]
fn support_is_the_least_carrier() {
    for n in 1..=3 {
        for c in gen::grid_capacities(&names(n), 2) {
            check_support(&c);
        }
    }
    let mut r = ChaCha8Rng::seed_from_u64(11);
    let x4 = names(4);
    for _ in 0..300 {
        check_support(&gen::random_capacity(&mut r, &x4, 4));
        // Sparse capacities have small supports.
        let sub = Subset(r.gen_range(1..16));
        let (small, embed) = x4.restrict(sub).unwrap();
        let c = gen::random_capacity(&mut r, &small, 3)
            .pushforward(&embed)
            .unwrap();
        assert!(c.support().is_subset_of(sub));
        check_support(&c);
    }
}

#[test]
fn support_of_pushforward_lies_in_image() {
    let x = names(3);
    let family = gen::grid_capacities(&x, 2);
    for m in 1..=3 {
        for f in all_maps(&x, &names(m)) {
            for c in &family {
                let pushed = c.pushforward(&f).unwrap();
                assert!(pushed.support().is_subset_of(f.image_of(c.support())));
            }
        }
    }
}

#[test]
fn hyperspace_canonical_form() {
    assert_eq!(InclusionHyperspace::enumerate(&names(1)).len(), 1);
    assert_eq!(InclusionHyperspace::enumerate(&names(2)).len(), 4);
    assert_eq!(InclusionHyperspace::enumerate(&names(3)).len(), 18);
    let x = names(3);
    for h in InclusionHyperspace::enumerate(&x) {
        let again = InclusionHyperspace::up_closure(&x, h.minimal()).unwrap();
        assert_eq!(again, h);
        let members: Vec<Subset> = h.members().collect();
        assert_eq!(InclusionHyperspace::up_closure(&x, &members).unwrap(), h);
        let mut reversed = members.clone();
        reversed.reverse();
        assert_eq!(InclusionHyperspace::up_closure(&x, &reversed).unwrap(), h);
    }
}

#[test]
fn hyperspace_functoriality() {
    for n in 1..=3 {
        let x = names(n);
        let hs = InclusionHyperspace::enumerate(&x);
        for h in &hs {
            assert_eq!(&h.map(&SpaceMap::identity(&x)).unwrap(), h);
        }
        for m in 1..=3 {
            for f in all_maps(&x, &names(m)) {
                for k in 1..=2 {
                    for g in all_maps(f.codomain(), &names(k)) {
                        let gf = f.then(&g).unwrap();
                        for h in &hs {
                            assert_eq!(h.map(&gf).unwrap(), h.map(&f).unwrap().map(&g).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn embedding_is_injective() {
    for n in 1..=3 {
        let hs = InclusionHyperspace::enumerate(&names(n));
        let embedded: BTreeSet<Capacity> =
            hs.iter().map(InclusionHyperspace::embed_capacity).collect();
        assert_eq!(embedded.len(), hs.len());
    }
}

#[test]
fn indicator_recovery() {
    for n in 1..=3 {
        let x = names(n);
        for c in gen::grid_capacities(&x, 2) {
            for s in x.subsets() {
                let chi = Observable::indicator(&x, s);
                assert_eq!(&sugeno(&c, &chi).unwrap(), c.value(s));
                assert_eq!(&choquet(&c, &chi).unwrap(), c.value(s));
            }
        }
    }
}

#[test]
fn sugeno_homogeneity_and_isotonicity() {
    let mut r = ChaCha8Rng::seed_from_u64(12);
    for i in 0..1000 {
        let x = names(1 + i % 4);
        let d = 1 + (i as u32 % 6);
        let c = gen::random_capacity(&mut r, &x, d);
        let phi = gen::random_observable(&mut r, &x, d + 1);
        let alpha = gen::random_value(&mut r, 5);
        let s = sugeno(&c, &phi).unwrap();
        assert_eq!(
            sugeno(&c, &phi.meet(&alpha)).unwrap(),
            s.clone().min(alpha.clone())
        );
        assert_eq!(
            sugeno(&c, &phi.join(&alpha)).unwrap(),
            s.clone().max(alpha.clone())
        );

        let psi = phi.map_values(|u| u.clone().max(gen::random_value(&mut r, 4)));
        assert!(phi.pointwise_le(&psi));
        assert!(s <= sugeno(&c, &psi).unwrap());
        assert!(choquet(&c, &phi).unwrap() <= choquet(&c, &psi).unwrap());

        let bigger = Capacity::from_table(
            x.clone(),
            c.table()
                .iter()
                .zip(gen::random_capacity(&mut r, &x, d).table())
                .map(|(a, b)| a.clone().max(b.clone()))
                .collect(),
        )
        .unwrap();
        assert!(c.pointwise_le(&bigger));
        assert!(s <= sugeno(&bigger, &phi).unwrap());
        assert!(choquet(&c, &phi).unwrap() <= choquet(&bigger, &phi).unwrap());
        let table = Pseudomultiplication::Table(
            PseudomultiplicationTable::tabulate(4, &Pseudomultiplication::Product).unwrap(),
        );
        for op in [
            Pseudomultiplication::Min,
            Pseudomultiplication::Product,
            Pseudomultiplication::ProbabilisticSum,
            table,
        ] {
            assert!(fuzzy(&c, &phi, &op).unwrap() <= fuzzy(&bigger, &phi, &op).unwrap());
        }
    }
}

#[test]
fn reconstruct_round_trip_at_four_points() {
    let mut r = ChaCha8Rng::seed_from_u64(13);
    let x = names(4);
    for _ in 0..60 {
        let c = gen::random_capacity(&mut r, &x, 4);
        assert_eq!(reconstruct(&SugenoFunctional::new(c.clone())).unwrap(), c);
    }
}

#[test]
fn reconstruct_is_complete_on_axiom_passing_functionals() {
    let mut r = ChaCha8Rng::seed_from_u64(14);
    let check = |i: &dyn Functional, samples: &[Observable]| {
        let c = reconstruct(i).unwrap();
        for phi in samples {
            assert_eq!(sugeno(&c, phi).unwrap(), i.evaluate(phi).unwrap());
        }
    };
    for n in 1..=3 {
        let x = names(n);
        let samples: Vec<Observable> = (0..100)
            .map(|_| gen::random_observable(&mut r, &x, 4))
            .collect();
        check(&MaxFunctional::new(&x), &samples);
        check(&PointEvaluation::new(&x, "a").unwrap(), &samples);

        // A functional known only on a finite table.
        let c = gen::random_capacity(&mut r, &x, 4);
        let source = SugenoFunctional::new(c.clone());
        let mut inputs: Vec<Observable> = exhaustive_samples(&x, 4)
            .into_iter()
            .map(|(phi, _)| phi)
            .collect();
        for (phi, alpha) in exhaustive_samples(&x, 4) {
            inputs.push(phi.meet(&alpha));
            inputs.push(phi.join(&alpha));
        }
        inputs.extend(samples.iter().cloned());
        let entries = inputs
            .iter()
            .map(|phi| (phi.clone(), source.evaluate(phi).unwrap()))
            .collect();
        let table = TableFunctional::new(&x, entries).unwrap();
        assert_eq!(reconstruct(&table).unwrap(), c);
        check(&table, &samples);
    }
}

#[test]
fn capacities_agreeing_on_indicators_are_equal() {
    let x = names(2);
    let family = gen::grid_capacities(&x, 2);
    for a in &family {
        for b in &family {
            let same = x.subsets().all(|s| {
                let chi = Observable::indicator(&x, s);
                sugeno(a, &chi).unwrap() == sugeno(b, &chi).unwrap()
            });
            assert_eq!(same, a == b);
        }
    }
}

#[test]
fn sugeno_functionals_are_tau_smooth() {
    let mut r = ChaCha8Rng::seed_from_u64(15);
    for i in 0..200 {
        let x = names(1 + i % 3);
        let c = gen::random_capacity(&mut r, &x, 4);
        let f = SugenoFunctional::new(c);
        assert!(check_sugeno_axioms(&f, &exhaustive_samples(&x, 4))
            .unwrap()
            .passed());
        let target = gen::random_observable(&mut r, &x, 4);
        // phi_k = target ∨ 1/k and target ∧ (1 - 1/k).
        let down: Vec<Observable> = (1..=6).map(|k| target.join(&v(1, k))).collect();
        let up: Vec<Observable> = (1..=6).map(|k| target.meet(&v(k - 1, k))).collect();
        let chains = [
            Chain {
                direction: ChainDirection::Decreasing,
                steps: down,
                target: target.join(&v(1, 6)),
            },
            Chain {
                direction: ChainDirection::Increasing,
                steps: up,
                target: target.meet(&v(5, 6)),
            },
        ];
        assert!(check_tau_smooth(&f, &chains).unwrap().passed());
    }
}

#[test]
fn mu_is_natural_and_monotone() {
    let mut r = ChaCha8Rng::seed_from_u64(16);
    for i in 0..500 {
        let x = names(1 + i % 3);
        let c2 = gen::random_capacity2(&mut r, &x, 1 + (i as u32 % 6), 3);
        let mu = c2.mu();
        assert!(Capacity::from_table(x.clone(), mu.table().to_vec()).is_ok());
        let y = names(1 + (i / 3) % 3);
        let f = SpaceMap::new(
            x.clone(),
            y.clone(),
            (0..x.len()).map(|_| r.gen_range(0..y.len())).collect(),
        )
        .unwrap();
        assert_eq!(
            mu.pushforward(&f).unwrap(),
            c2.pushforward(&f).unwrap().mu()
        );

        let c3 = gen::random_capacity3(&mut r, &x, 1 + (i as u32 % 6), 3);
        let flat = c3.mu().unwrap();
        let index = flat.index_capacity();
        assert!(Capacity::from_table(index.ground().clone(), index.table().to_vec()).is_ok());
    }
}

#[test]
fn capacity2_is_representation_independent() {
    let x = names(2);
    let a = Capacity::additive(&x, &[v(1, 2), v(1, 2)]).unwrap();
    let b = Capacity::dirac_at(&x, 0);
    let idx =
        |t: Vec<UnitValue>, m| Capacity::from_table(GroundSet::indices(m).unwrap(), t).unwrap();
    let one = Capacity2::new(
        &x,
        vec![a.clone(), b.clone()],
        idx(vec![v(0, 1), v(1, 3), v(2, 3), v(1, 1)], 2),
    )
    .unwrap();
    let two = Capacity2::new(
        &x,
        vec![b.clone(), a.clone()],
        idx(vec![v(0, 1), v(2, 3), v(1, 3), v(1, 1)], 2),
    )
    .unwrap();
    assert_eq!(one, two);
}

#[test]
fn sections_are_antitone_and_intersection_closed() {
    for n in 1..=3 {
        for c in gen::grid_capacities(&names(n), 4) {
            // S_β = ⋂ { S_α : 0 < α < β } for β on c's value grid, with α
            // ranging over a grid twice as fine.
            let d = 8u64;
            let grid: Vec<UnitValue> = (1..=d).map(|k| UnitValue::grid(k, d).unwrap()).collect();
            let family = subgraph::sections(&c, &grid).unwrap();
            assert!(family.check_antitone().passed());
            for (j, beta) in grid.iter().enumerate().skip(1).step_by(2) {
                let s_beta = family.section(beta).unwrap();
                for f in c.ground().subsets() {
                    let everywhere = grid[..j]
                        .iter()
                        .all(|a| family.section(a).unwrap().member(f));
                    assert_eq!(
                        s_beta.member(f),
                        everywhere,
                        "β = {beta}, F = {f:?}, c = {c:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn union_of_lower_sections_is_everything() {
    // The union over α < β of S_α always contains every non-empty set, so
    // it cannot equal S_β in general.
    let x = names(2);
    let c = Capacity::from_table(x.clone(), vec![v(0, 1), v(3, 10), v(3, 5), v(1, 1)]).unwrap();
    let family = subgraph::value_sections(&c);
    let low = family.section(&v(3, 10)).unwrap();
    let high = family.section(&v(3, 5)).unwrap();
    assert_ne!(low, high);
    assert!(x.nonempty_subsets().all(|s| low.member(s)));
}

#[test]
fn subgraph_rejects_monotonicity_breaking_mutations() {
    let mut r = ChaCha8Rng::seed_from_u64(17);
    for i in 0..500 {
        let x = names(2 + i % 3);
        let c = gen::random_capacity(&mut r, &x, 6);
        let s = subgraph::to_subgraph(&c);
        let pairs: Vec<(Subset, Subset)> = x
            .nonempty_subsets()
            .flat_map(|a| {
                x.subsets()
                    .filter(move |b| a.is_subset_of(*b) && a != *b)
                    .map(move |b| (a, b))
            })
            .filter(|&(a, b)| !c.value(a).is_zero() && c.value(a) < c.value(b) && b != x.full())
            .collect();
        let Some(&(small, large)) = pairs.get(r.gen_range(0..pairs.len().max(1))) else {
            continue;
        };
        // Push the larger set strictly below the smaller one.
        let mut levels = s.levels().to_vec();
        let target = c.value(small).ratio() / num_rational::BigRational::from_integer(2.into());
        levels[large.0 as usize] = UnitValue::from_ratio(target).unwrap();
        let mutated = Subgraph::from_levels(x.clone(), levels).unwrap();
        assert!(!mutated.check().passed());
        assert!(matches!(
            subgraph::from_subgraph(&mutated),
            Err(Error::NotASubgraph(_))
        ));
    }
}

#[test]
fn upset_threshold_properties() {
    let mut r = ChaCha8Rng::seed_from_u64(18);
    for i in 0..500 {
        let x = names(1 + i % 5);
        let phi = gen::random_observable(&mut r, &x, 6);
        let a = gen::random_value(&mut r, 6);
        let b = gen::random_value(&mut r, 6);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        assert!(phi.upset(&hi).is_subset_of(phi.upset(&lo)));
        let min = phi.min_over(x.full()).unwrap().clone();
        assert_eq!(phi.upset(&min), x.full());
        assert_eq!(phi.upset(&UnitValue::zero()), x.full());
    }
}
