//! Seeded law-checking suites for the two monads, their morphism and the
//! integrals. Each suite reports per-law counts and the first few
//! counterexample witnesses.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::capacity::Capacity;
use crate::gen;
use crate::hyperspace::{GeneratedHyperHyperspace, InclusionHyperspace};
use crate::integrals::{choquet, fuzzy, sugeno, Pseudomultiplication};
use crate::monad::{check_morphism, Capacity2, Capacity3};
use crate::space::{common_denominator, GroundSet, Observable, SpaceMap, UnitValue};

const MAX_WITNESSES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    MonadM,
    MonadG,
    Morphism,
    Integrals,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::MonadM,
        Suite::MonadG,
        Suite::Morphism,
        Suite::Integrals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MonadM => "monad-m",
            Suite::MonadG => "monad-g",
            Suite::Morphism => "morphism",
            Suite::Integrals => "integrals",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Debug)]
pub struct LawConfig {
    pub seed: u64,
    /// Random instances per randomized law.
    pub samples: usize,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            seed: 0x5eed,
            samples: 1000,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: String,
    pub checked: usize,
    pub failed: usize,
    pub witnesses: Vec<String>,
}

impl LawOutcome {
    fn new(law: &str) -> Self {
        LawOutcome {
            law: law.to_string(),
            checked: 0,
            failed: 0,
            witnesses: Vec::new(),
        }
    }

    fn record<W: FnOnce() -> String>(&mut self, ok: bool, witness: W) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub laws: Vec<LawOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawOutcome::passed)
    }
}

pub fn run_suite(suite: Suite, config: &LawConfig) -> SuiteReport {
    let laws = match suite {
        Suite::MonadM => monad_m(config),
        Suite::MonadG => monad_g(config),
        Suite::Morphism => morphism(config),
        Suite::Integrals => integrals(config),
    };
    SuiteReport {
        suite: suite.name().to_string(),
        seed: config.seed,
        laws,
    }
}

fn names(n: usize) -> GroundSet {
    GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
        .expect("small ground set")
}

fn rng(config: &LawConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn table_str(c: &Capacity) -> String {
    let vals: Vec<String> = c.table().iter().map(UnitValue::render).collect();
    format!("[{}]", vals.join(", "))
}

/// Dense-grid oracle for `μ_M(𝒞)(F)`: scans `α = k/D` for the lcm `D` of
/// every denominator in the instance.
pub fn mu_grid_oracle(c: &Capacity2) -> Capacity {
    let mut all: Vec<&UnitValue> = c.index_capacity().table().iter().collect();
    for s in c.support() {
        all.extend(s.table());
    }
    let d = common_denominator(all)
        .to_u64()
        .expect("moderate denominators");
    let index = c.index_capacity();
    let table = c
        .ground()
        .subsets()
        .map(|f| {
            (0..=d)
                .rev()
                .map(|k| UnitValue::grid(k, d).expect("grid point"))
                .find(|alpha| {
                    let above = crate::space::Subset::from_indices(
                        (0..c.support().len()).filter(|&i| c.support()[i].value(f) >= alpha),
                    );
                    index.value(above) >= alpha
                })
                .expect("alpha = 0 always qualifies")
        })
        .collect();
    Capacity::from_table(c.ground().clone(), table).expect("oracle yields a capacity")
}

/// Dense-grid oracle for the Sugeno integral.
pub fn sugeno_grid_oracle(c: &Capacity, phi: &Observable) -> UnitValue {
    let d = common_denominator(c.table().iter().chain(phi.values()))
        .to_u64()
        .expect("moderate denominators");
    (0..=d)
        .map(|k| {
            let alpha = UnitValue::grid(k, d).expect("grid point");
            let level = c.value(phi.upset(&alpha)).clone();
            level.min(alpha)
        })
        .max()
        .expect("non-empty grid")
}

fn monad_m(config: &LawConfig) -> Vec<LawOutcome> {
    let mut left = LawOutcome::new("mu ∘ eta_M = id (exhaustive, |X| = 2, grid 1/2)");
    let mut right = LawOutcome::new("mu ∘ M(eta) = id (exhaustive, |X| = 2, grid 1/2)");
    let mut level2 = LawOutcome::new("unit laws at level 2 (support <= 2, grid 1/2)");
    let x2 = names(2);
    let family = gen::grid_capacities(&x2, 2);
    for c in &family {
        left.record(Capacity2::eta(c).mu() == *c, || table_str(c));
        right.record(Capacity2::map_eta(c).mu() == *c, || table_str(c));
    }
    for c2 in gen::grid_capacity2s(&x2, &family, 2, 2) {
        level2.record(Capacity3::eta(&c2).mu().ok().as_ref() == Some(&c2), || {
            format!("{c2:?}")
        });
        level2.record(
            Capacity3::map_eta(&c2).mu().ok().as_ref() == Some(&c2),
            || format!("{c2:?}"),
        );
    }

    let mut random_units = LawOutcome::new("unit laws (random, |X| = 3)");
    let mut assoc =
        LawOutcome::new("mu ∘ M(mu) = mu ∘ mu_M (random Capacity3, |X| <= 3, denominators <= 6)");
    let mut natural = LawOutcome::new("M(f) ∘ mu = mu ∘ M(M(f)) (random)");
    let mut delta = LawOutcome::new("mu(C)(phi) = C(delta_phi) (random)");
    let mut oracle = LawOutcome::new("mu candidate set = dense grid (random)");
    let mut r = rng(config, 1);
    let x3 = names(3);
    for i in 0..config.samples {
        let n = 1 + i % 3;
        let x = names(n);
        let d = 1 + (i as u32 % 6);
        let c = gen::random_capacity(&mut r, &x3, d);
        random_units.record(
            Capacity2::eta(&c).mu() == c && Capacity2::map_eta(&c).mu() == c,
            || table_str(&c),
        );

        let c3 = gen::random_capacity3(&mut r, &x, d, 3);
        let lhs = c3.map_mu().mu();
        let rhs = c3.mu().map(|c2| c2.mu());
        assoc.record(rhs.as_ref().ok() == Some(&lhs), || format!("{c3:?}"));

        let c2 = gen::random_capacity2(&mut r, &x, d, 3);
        let y = names(1 + i % 2);
        let image: Vec<usize> = (0..x.len()).map(|k| (k * 7 + i) % y.len()).collect();
        let f = SpaceMap::new(x.clone(), y, image).expect("valid map");
        let pushed = c2.mu().pushforward(&f).ok();
        let lifted = c2.pushforward(&f).ok().map(|p| p.mu());
        natural.record(pushed.is_some() && pushed == lifted, || format!("{c2:?}"));

        let phi = gen::random_observable(&mut r, &x, d);
        let via_delta = c2.mu_via_delta(&phi).ok();
        let direct = sugeno(&c2.mu(), &phi).ok();
        delta.record(via_delta.is_some() && via_delta == direct, || {
            format!("{c2:?} / {phi:?}")
        });

        oracle.record(mu_grid_oracle(&c2) == c2.mu(), || format!("{c2:?}"));
    }
    vec![
        left,
        right,
        level2,
        random_units,
        assoc,
        natural,
        delta,
        oracle,
    ]
}

fn monad_g(config: &LawConfig) -> Vec<LawOutcome> {
    let mut left = LawOutcome::new("mu_G ∘ eta_GX = id (exhaustive, |X| <= 3)");
    let mut right = LawOutcome::new("mu_G ∘ G(eta_G) = id (exhaustive, |X| <= 3)");
    let mut functor =
        LawOutcome::new("G(id) = id and G(g ∘ f) = G(g) ∘ G(f) (exhaustive, |X| <= 3)");
    let mut natural = LawOutcome::new("G(f)(eta_G(x)) = eta_G(f(x))");
    for n in 1..=3 {
        let x = names(n);
        let y = names(2);
        let z = names(1);
        let f = SpaceMap::new(x.clone(), y.clone(), (0..n).map(|k| k % 2).collect())
            .expect("valid map");
        let g = SpaceMap::constant(&y, &z, 0).expect("valid map");
        let gf = f.then(&g).expect("composable");
        for h in InclusionHyperspace::enumerate(&x) {
            left.record(GeneratedHyperHyperspace::eta(&h).mu() == h, || {
                format!("{h:?}")
            });
            right.record(GeneratedHyperHyperspace::map_eta(&h).mu() == h, || {
                format!("{h:?}")
            });
            let ok = h.map(&SpaceMap::identity(&x)).ok().as_ref() == Some(&h)
                && h.map(&gf).ok() == h.map(&f).and_then(|fh| fh.map(&g)).ok();
            functor.record(ok, || format!("{h:?}"));
        }
        for p in 0..n {
            let ok = InclusionHyperspace::eta_at(&x, p).map(&f).ok()
                == Some(InclusionHyperspace::eta_at(&y, f.apply(p)));
            natural.record(ok, || format!("point {p} of {x:?}"));
        }
    }

    let mut assoc = LawOutcome::new("mu_G ∘ G(mu_G) = mu_G ∘ mu_GX (random level 3, |X| <= 3)");
    let mut r = rng(config, 2);
    let count = (config.samples / 2).max(1);
    for i in 0..count {
        let x = names(1 + i % 3);
        let top = gen::random_level3(&mut r, &x);
        assoc.record(top.map_mu().mu() == top.mu_inner().mu(), || {
            format!("{top:?}")
        });
    }
    vec![left, right, functor, natural, assoc]
}

fn morphism(config: &LawConfig) -> Vec<LawOutcome> {
    let mut exhaustive =
        LawOutcome::new("morphism squares (exhaustive, |X| = 2, generators of size <= 2)");
    let x2 = names(2);
    let family = InclusionHyperspace::enumerate(&x2);
    for big in gen::all_hyper_hyperspaces(&x2, &family, 2) {
        let ok = check_morphism(&big).map(|r| r.passed()).unwrap_or(false);
        exhaustive.record(ok, || format!("{big:?}"));
    }
    let mut random = LawOutcome::new("morphism squares (random, |X| = 3)");
    let mut injective =
        LawOutcome::new("embedding of hyperspaces is injective (exhaustive, |X| <= 3)");
    let mut r = rng(config, 3);
    let x3 = names(3);
    for _ in 0..(config.samples / 2).max(1) {
        let big = gen::random_hyper_hyperspace(&mut r, &x3, 3, 3);
        let ok = check_morphism(&big).map(|r| r.passed()).unwrap_or(false);
        random.record(ok, || format!("{big:?}"));
    }
    for n in 1..=3 {
        let all = InclusionHyperspace::enumerate(&names(n));
        let mut embedded: Vec<Capacity> = all
            .iter()
            .map(InclusionHyperspace::embed_capacity)
            .collect();
        embedded.sort();
        embedded.dedup();
        injective.record(embedded.len() == all.len(), || format!("|X| = {n}"));
    }
    vec![exhaustive, random, injective]
}

fn integrals(config: &LawConfig) -> Vec<LawOutcome> {
    let mut grid_oracle = LawOutcome::new("sugeno candidate set = dense grid");
    let mut fuzzy_min = LawOutcome::new("fuzzy(min) = sugeno");
    let mut expectation = LawOutcome::new("choquet = expectation for probability capacities");
    let mut comonotone = LawOutcome::new("choquet comonotone additivity");
    let mut cross = LawOutcome::new("sugeno(embed(F), phi) = m_upper(F, phi)");
    let mut r = rng(config, 4);
    for i in 0..config.samples {
        let x = names(1 + i % 4);
        let d = 1 + (i as u32 % 6);
        let c = gen::random_capacity(&mut r, &x, d);
        let phi = gen::random_observable(&mut r, &x, 2 + (i as u32 % 5));
        let s = sugeno(&c, &phi).expect("same ground");
        grid_oracle.record(sugeno_grid_oracle(&c, &phi) == s, || {
            format!("{c:?} / {phi:?}")
        });
        fuzzy_min.record(
            fuzzy(&c, &phi, &Pseudomultiplication::Min).ok() == Some(s.clone()),
            || format!("{c:?} / {phi:?}"),
        );

        let weights = gen::random_probability(&mut r, x.len(), 5);
        let p = Capacity::additive(&x, &weights).expect("weights sum to 1");
        let expected = (0..x.len()).fold(BigRational::zero(), |acc, k| {
            acc + phi.get(k).ratio() * weights[k].ratio()
        });
        expectation.record(
            choquet(&p, &phi).ok().map(UnitValue::into_ratio) == Some(expected),
            || format!("{weights:?} / {phi:?}"),
        );

        let (a, b) = gen::random_comonotone_pair(&mut r, &x, d);
        let mid = Observable::new(
            x.clone(),
            (0..x.len()).map(|k| a.get(k).midpoint(b.get(k))).collect(),
        )
        .expect("arity matches");
        let lhs = choquet(&c, &mid).expect("same ground").into_ratio();
        let rhs = (choquet(&c, &a).expect("same ground").into_ratio()
            + choquet(&c, &b).expect("same ground").into_ratio())
            / BigRational::from_integer(BigInt::from(2));
        comonotone.record(lhs == rhs, || format!("{c:?} / {a:?} / {b:?}"));
    }
    for n in 1..=3 {
        let x = names(n);
        for h in InclusionHyperspace::enumerate(&x) {
            let e = h.embed_capacity();
            for _ in 0..(config.samples / 2).max(1) {
                let phi = gen::random_observable(&mut r, &x, 6);
                let ok = sugeno(&e, &phi).ok() == h.m_upper(&phi).ok();
                cross.record(ok, || format!("{h:?} / {phi:?}"));
            }
        }
    }
    vec![grid_oracle, fuzzy_min, expectation, comonotone, cross]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_scale() {
        let config = LawConfig {
            seed: 3,
            samples: 40,
        };
        for suite in Suite::ALL {
            let report = run_suite(suite, &config);
            assert!(report.passed(), "{report:?}");
            assert!(report.laws.iter().all(|l| l.checked > 0), "{report:?}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
