//! Sugeno, Choquet and pseudomultiplication-based fuzzy integrals.

use num_rational::BigRational;
use num_traits::Zero;

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::space::{Observable, UnitValue};

/// Sugeno integral `sup_α α ∧ c({φ >= α})`.
///
/// `α ↦ c({φ >= α})` is a non-increasing left-continuous step function
/// that only jumps at values of `φ`, so the supremum is a maximum over the
/// range of `φ`.
pub fn sugeno(c: &Capacity, phi: &Observable) -> Result<UnitValue> {
    c.ground().ensure_same(phi.ground())?;
    Ok(phi
        .distinct_desc()
        .into_iter()
        .map(|v| {
            let level = c.value(phi.upset(&v));
            if *level < v {
                level.clone()
            } else {
                v
            }
        })
        .max()
        .unwrap_or_else(UnitValue::zero))
}

/// Choquet integral `∫₀¹ c({φ >= a}) da`, evaluated as the finite layer sum
/// over the distinct values of `φ`.
pub fn choquet(c: &Capacity, phi: &Observable) -> Result<UnitValue> {
    c.ground().ensure_same(phi.ground())?;
    let levels = phi.distinct_desc();
    let mut total = BigRational::zero();
    for (i, v) in levels.iter().enumerate() {
        let next = levels
            .get(i + 1)
            .map(UnitValue::ratio)
            .cloned()
            .unwrap_or_else(BigRational::zero);
        total += (v.ratio() - next) * c.value(phi.upset(v)).ratio();
    }
    UnitValue::from_ratio(total)
}

/// A binary operation on `[0,1]` standing in for `∧` in a fuzzy integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pseudomultiplication {
    Min,
    Product,
    /// `h(a, b) = a + b - ab`.
    ProbabilisticSum,
    Table(PseudomultiplicationTable),
}

impl Pseudomultiplication {
    pub fn apply(&self, a: &UnitValue, b: &UnitValue) -> UnitValue {
        match self {
            Pseudomultiplication::Min => a.min(b).clone(),
            Pseudomultiplication::Product => a.product(b),
            Pseudomultiplication::ProbabilisticSum => a.probabilistic_sum(b),
            Pseudomultiplication::Table(t) => t.apply(a, b),
        }
    }

    /// Whether `a ⊙ b → 0` uniformly in `a` as `b → 0`.
    ///
    /// This is the hypothesis under which the generalized integral is
    /// continuous in the capacity; the probabilistic sum fails it since
    /// `h(a, 0) = a`.
    pub fn uniform_vanishing(&self) -> bool {
        match self {
            Pseudomultiplication::Min | Pseudomultiplication::Product => true,
            Pseudomultiplication::ProbabilisticSum => false,
            Pseudomultiplication::Table(t) => t.uniform_vanishing(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Pseudomultiplication::Min => "min",
            Pseudomultiplication::Product => "product",
            Pseudomultiplication::ProbabilisticSum => "probsum",
            Pseudomultiplication::Table(_) => "table",
        }
    }
}

/// A pseudomultiplication given on the grid `{0, 1/d, ..., 1}²`.
///
/// Off-grid arguments are rounded down to the grid, which keeps the
/// operation isotone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudomultiplicationTable {
    denominator: u32,
    // Row-major: values[i * (d + 1) + j] = (i/d) ⊙ (j/d).
    values: Vec<UnitValue>,
}

impl PseudomultiplicationTable {
    pub fn new(denominator: u32, values: Vec<UnitValue>) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        let side = denominator as usize + 1;
        if values.len() != side * side {
            return Err(Error::ArityMismatch {
                expected: side * side,
                found: values.len(),
            });
        }
        for i in 0..side {
            for j in 0..side {
                let here = &values[i * side + j];
                if i + 1 < side && values[(i + 1) * side + j] < *here {
                    return Err(Error::InvalidTable(format!(
                        "not isotone in the first argument at ({i}, {j})"
                    )));
                }
                if j + 1 < side && values[i * side + j + 1] < *here {
                    return Err(Error::InvalidTable(format!(
                        "not isotone in the second argument at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(PseudomultiplicationTable {
            denominator,
            values,
        })
    }

    /// Tabulates `op` on the grid of denominator `d`.
    pub fn tabulate(d: u32, op: &Pseudomultiplication) -> Result<Self> {
        let mut values = Vec::new();
        for i in 0..=d {
            for j in 0..=d {
                let a = UnitValue::grid(i.into(), d.into())?;
                let b = UnitValue::grid(j.into(), d.into())?;
                values.push(op.apply(&a, &b));
            }
        }
        Self::new(d, values)
    }

    fn grid_index(&self, a: &UnitValue) -> usize {
        let scaled = a.ratio() * BigRational::from_integer(self.denominator.into());
        let floor = scaled.floor().to_integer();
        usize::try_from(floor).expect("value in [0,1]")
    }

    pub fn apply(&self, a: &UnitValue, b: &UnitValue) -> UnitValue {
        let side = self.denominator as usize + 1;
        self.values[self.grid_index(a) * side + self.grid_index(b)].clone()
    }

    fn uniform_vanishing(&self) -> bool {
        let side = self.denominator as usize + 1;
        (0..side).all(|i| self.values[i * side].is_zero())
    }
}

/// `max { (min_F φ) ⊙ c(F) : F ≠ ∅ }` by enumerating every non-empty subset.
///
/// With `⊙ = min` this is the Sugeno integral.
pub fn fuzzy(c: &Capacity, phi: &Observable, odot: &Pseudomultiplication) -> Result<UnitValue> {
    c.ground().ensure_same(phi.ground())?;
    Ok(c.ground()
        .nonempty_subsets()
        .map(|f| odot.apply(phi.min_over(f).expect("non-empty"), c.value(f)))
        .max()
        .expect("ground set is non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{GroundSet, Subset};

    fn v(p: i64, q: i64) -> UnitValue {
        UnitValue::new(p, q).unwrap()
    }

    fn ab() -> GroundSet {
        GroundSet::new(["a", "b"]).unwrap()
    }

    fn c0() -> Capacity {
        Capacity::from_table(ab(), vec![v(0, 1), v(3, 10), v(6, 10), v(1, 1)]).unwrap()
    }

    fn phi0() -> Observable {
        Observable::new(ab(), vec![v(4, 5), v(1, 2)]).unwrap()
    }

    #[test]
    fn sugeno_examples() {
        assert_eq!(sugeno(&c0(), &phi0()).unwrap(), v(1, 2));
        let d = Capacity::dirac(&ab(), "a").unwrap();
        assert_eq!(sugeno(&d, &phi0()).unwrap(), v(4, 5));
        let k = Observable::constant(&ab(), v(2, 7));
        assert_eq!(sugeno(&c0(), &k).unwrap(), v(2, 7));
    }

    #[test]
    fn choquet_examples() {
        assert_eq!(choquet(&c0(), &phi0()).unwrap(), v(59, 100));
        let d = Capacity::dirac(&ab(), "b").unwrap();
        assert_eq!(choquet(&d, &phi0()).unwrap(), v(1, 2));
        let p = Capacity::additive(&ab(), &[v(1, 3), v(2, 3)]).unwrap();
        // 4/5 * 1/3 + 1/2 * 2/3
        assert_eq!(choquet(&p, &phi0()).unwrap(), v(3, 5));
    }

    #[test]
    fn fuzzy_examples() {
        assert_eq!(
            fuzzy(&c0(), &phi0(), &Pseudomultiplication::Min).unwrap(),
            v(1, 2)
        );
        assert_eq!(
            fuzzy(&c0(), &phi0(), &Pseudomultiplication::Product).unwrap(),
            v(1, 2)
        );
        let d = Capacity::dirac(&ab(), "a").unwrap();
        assert_eq!(
            fuzzy(&d, &phi0(), &Pseudomultiplication::Product).unwrap(),
            v(4, 5)
        );
        // h(a, 1) = 1, attained at F = X
        assert_eq!(
            fuzzy(&c0(), &phi0(), &Pseudomultiplication::ProbabilisticSum).unwrap(),
            v(1, 1)
        );
        let zero = Observable::constant(&ab(), v(0, 1));
        assert_eq!(
            fuzzy(
                &Capacity::unanimity(&ab()),
                &zero,
                &Pseudomultiplication::ProbabilisticSum
            )
            .unwrap(),
            v(1, 1)
        );
    }

    #[test]
    fn ground_mismatch() {
        let other = Observable::constant(&GroundSet::new(["z"]).unwrap(), v(1, 2));
        assert!(sugeno(&c0(), &other).is_err());
        assert!(choquet(&c0(), &other).is_err());
        assert!(fuzzy(&c0(), &other, &Pseudomultiplication::Min).is_err());
    }

    #[test]
    fn vanishing_flags() {
        assert!(Pseudomultiplication::Min.uniform_vanishing());
        assert!(Pseudomultiplication::Product.uniform_vanishing());
        assert!(!Pseudomultiplication::ProbabilisticSum.uniform_vanishing());
        let t = PseudomultiplicationTable::tabulate(4, &Pseudomultiplication::Product).unwrap();
        assert!(Pseudomultiplication::Table(t).uniform_vanishing());
        let t = PseudomultiplicationTable::tabulate(4, &Pseudomultiplication::ProbabilisticSum)
            .unwrap();
        assert!(!Pseudomultiplication::Table(t).uniform_vanishing());
    }

    #[test]
    fn table_lookup_and_validation() {
        let t = PseudomultiplicationTable::tabulate(4, &Pseudomultiplication::Min).unwrap();
        assert_eq!(t.apply(&v(3, 4), &v(1, 2)), v(1, 2));
        // 0.6 rounds down to 1/2 on the quarter grid
        assert_eq!(t.apply(&v(3, 5), &v(1, 1)), v(1, 2));
        let bad = PseudomultiplicationTable::new(1, vec![v(0, 1), v(1, 1), v(1, 2), v(0, 1)]);
        assert!(matches!(bad, Err(Error::InvalidTable(_))));
        assert!(PseudomultiplicationTable::new(1, vec![v(0, 1)]).is_err());
    }

    #[test]
    fn indicators_recover_capacity() {
        for f in ab().subsets() {
            let chi = Observable::indicator(&ab(), f);
            assert_eq!(&sugeno(&c0(), &chi).unwrap(), c0().value(f));
            assert_eq!(&choquet(&c0(), &chi).unwrap(), c0().value(f));
        }
        assert_eq!(
            Subset::EMPTY,
            Observable::indicator(&ab(), Subset::EMPTY).upset(&v(1, 2))
        );
    }
}
