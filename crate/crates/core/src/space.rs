//! Finite ground sets and the objects that live on them: subsets,
//! exact values in the unit interval, observables `X -> [0,1]` and maps
//! between ground sets.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default upper bound on the number of elements of a ground set.
///
/// Capacities store one value per subset, so a ground set of `n`
/// elements costs `2^n` table entries.
pub const DEFAULT_MAX_ELEMENTS: usize = 12;

/// Hard limit imposed by the `u32` subset masks.
pub const MASK_BITS: usize = 30;

/// Maximum number of fractional digits accepted when parsing decimals.
const MAX_DECIMAL_DIGITS: usize = 9;

/// A finite, ordered set of named points.
///
/// Two ground sets are equal when their name lists are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSet {
    names: Arc<[String]>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_limit(names, DEFAULT_MAX_ELEMENTS)
    }

    /// Builds a ground set allowing up to `limit` elements (at most 30).
    pub fn with_limit<I, S>(names: I, limit: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let limit = limit.min(MASK_BITS);
        if names.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        if names.len() > limit {
            return Err(Error::TooLarge {
                size: names.len(),
                limit,
            });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::EmptyName);
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(GroundSet {
            names: names.into(),
        })
    }

    /// The ground set `{0, 1, ..., m-1}` used to index finite supports.
    pub fn indices(m: usize) -> Result<Self> {
        Self::new((0..m).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn full(&self) -> Subset {
        Subset((1u32 << self.len()) - 1)
    }

    /// Number of subsets, `2^n`.
    pub fn powerset_len(&self) -> usize {
        1usize << self.len()
    }

    /// All subsets in increasing mask order, starting with the empty set.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..(1u32 << self.len())).map(Subset)
    }

    /// All non-empty subsets in increasing mask order.
    pub fn nonempty_subsets(&self) -> impl Iterator<Item = Subset> {
        (1..(1u32 << self.len())).map(Subset)
    }

    pub fn contains_subset(&self, s: Subset) -> bool {
        s.0 & !self.full().0 == 0
    }

    pub fn check_subset(&self, s: Subset) -> Result<()> {
        if self.contains_subset(s) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                mask: s.0,
                size: self.len(),
            })
        }
    }

    /// Resolves a list of element names to a subset.
    pub fn subset_of_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Subset> {
        let mut mask = 0u32;
        for name in names {
            mask |= 1 << self.index_of(name.as_ref())?;
        }
        Ok(Subset(mask))
    }

    pub fn names_of(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.names[i].clone()).collect()
    }

    /// The sub-ground-set on the points of `s`, with the inclusion map into `self`.
    pub fn restrict(&self, s: Subset) -> Result<(GroundSet, SpaceMap)> {
        self.check_subset(s)?;
        let sub = GroundSet::new(s.iter().map(|i| self.names[i].clone()))?;
        let image: Vec<usize> = s.iter().collect();
        let inclusion = SpaceMap::new(sub.clone(), self.clone(), image)?;
        Ok((sub, inclusion))
    }

    pub(crate) fn ensure_same(&self, other: &GroundSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroundMismatch {
                expected: self.names.to_vec(),
                found: other.names.to_vec(),
            })
        }
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.names.iter()).finish()
    }
}

/// A subset of a ground set, as a bitmask over element indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(index: usize) -> Subset {
        Subset(1 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Subset {
        Subset(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn without(self, index: usize) -> Subset {
        Subset(self.0 & !(1 << index))
    }

    pub fn with(self, index: usize) -> Subset {
        Subset(self.0 | (1 << index))
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Element indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }

    /// Canonical order for antichains: by cardinality, then by mask.
    pub fn canonical_cmp(&self, other: &Subset) -> Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An exact rational number in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitValue(BigRational);

impl UnitValue {
    pub fn zero() -> Self {
        UnitValue(BigRational::zero())
    }

    pub fn one() -> Self {
        UnitValue(BigRational::one())
    }

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::ZeroDenominator);
        }
        Self::from_ratio(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_ratio(r: BigRational) -> Result<Self> {
        if r.is_negative() || r > BigRational::one() {
            return Err(Error::OutOfRange(r.to_string()));
        }
        Ok(UnitValue(r))
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `1 - self`.
    pub fn complement(&self) -> UnitValue {
        UnitValue(BigRational::one() - &self.0)
    }

    pub fn product(&self, other: &UnitValue) -> UnitValue {
        UnitValue(&self.0 * &other.0)
    }

    /// The probabilistic sum `a + b - ab`.
    pub fn probabilistic_sum(&self, other: &UnitValue) -> UnitValue {
        UnitValue(&self.0 + &other.0 - &self.0 * &other.0)
    }

    /// Midpoint `(a + b) / 2`.
    pub fn midpoint(&self, other: &UnitValue) -> UnitValue {
        UnitValue((&self.0 + &other.0) / BigRational::from_integer(2.into()))
    }

    /// The grid point `k / d`.
    pub fn grid(k: u64, d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDenominator);
        }
        Self::from_ratio(BigRational::new(k.into(), d.into()))
    }

    /// Renders as a reduced fraction `p/q`; integers render as `0/1`, `1/1`.
    pub fn render(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for UnitValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_value(s)
    }
}

impl Serialize for UnitValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for UnitValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_value(&text).map_err(serde::de::Error::custom)
    }
}

/// Parses `p/q`, an integer, or a decimal with at most nine fractional
/// digits into an exact unit value.
pub fn parse_value(text: &str) -> Result<UnitValue> {
    let malformed = || Error::Malformed(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(malformed());
    }
    let ratio = if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = parse_integer(p).ok_or_else(malformed)?;
        let q: BigInt = parse_integer(q).ok_or_else(malformed)?;
        if q.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        BigRational::new(p, q)
    } else if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || frac.len() > MAX_DECIMAL_DIGITS {
            return Err(malformed());
        }
        if !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let negative = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            parse_integer(whole).ok_or_else(malformed)?.abs()
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let digits: BigInt = frac.parse().map_err(|_| malformed())?;
        let r = BigRational::new(whole * &scale + digits, scale);
        if negative {
            -r
        } else {
            r
        }
    } else {
        BigRational::from_integer(parse_integer(t).ok_or_else(malformed)?)
    };
    UnitValue::from_ratio(ratio)
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Least common multiple of the denominators of `values` (1 if empty).
pub fn common_denominator<'a, I: IntoIterator<Item = &'a UnitValue>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// A function from a ground set into `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Observable {
    ground: GroundSet,
    values: Vec<UnitValue>,
}

impl Observable {
    pub fn new(ground: GroundSet, values: Vec<UnitValue>) -> Result<Self> {
        if values.len() != ground.len() {
            return Err(Error::ArityMismatch {
                expected: ground.len(),
                found: values.len(),
            });
        }
        Ok(Observable { ground, values })
    }

    pub fn constant(ground: &GroundSet, value: UnitValue) -> Self {
        Observable {
            values: vec![value; ground.len()],
            ground: ground.clone(),
        }
    }

    /// The indicator function of `s`.
    pub fn indicator(ground: &GroundSet, s: Subset) -> Self {
        let values = (0..ground.len())
            .map(|i| {
                if s.contains(i) {
                    UnitValue::one()
                } else {
                    UnitValue::zero()
                }
            })
            .collect();
        Observable {
            ground: ground.clone(),
            values,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn values(&self) -> &[UnitValue] {
        &self.values
    }

    pub fn get(&self, index: usize) -> &UnitValue {
        &self.values[index]
    }

    /// The upper level set `{x : phi(x) >= alpha}`.
    pub fn upset(&self, alpha: &UnitValue) -> Subset {
        Subset::from_indices(
            self.values
                .iter()
                .enumerate()
                .filter(|(_, v)| *v >= alpha)
                .map(|(i, _)| i),
        )
    }

    /// Pointwise `alpha ∧ phi`.
    pub fn meet(&self, alpha: &UnitValue) -> Observable {
        self.map_values(|v| v.min(alpha).clone())
    }

    /// Pointwise `alpha ∨ phi`.
    pub fn join(&self, alpha: &UnitValue) -> Observable {
        self.map_values(|v| v.max(alpha).clone())
    }

    pub fn map_values<F: FnMut(&UnitValue) -> UnitValue>(&self, f: F) -> Observable {
        Observable {
            ground: self.ground.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Pointwise order `self <= other`; false across different ground sets.
    pub fn pointwise_le(&self, other: &Observable) -> bool {
        self.ground == other.ground && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    pub fn min_over(&self, s: Subset) -> Option<&UnitValue> {
        s.iter().map(|i| &self.values[i]).min()
    }

    pub fn max_over(&self, s: Subset) -> Option<&UnitValue> {
        s.iter().map(|i| &self.values[i]).max()
    }

    /// Distinct values, sorted in decreasing order.
    pub fn distinct_desc(&self) -> Vec<UnitValue> {
        let mut vals = self.values.clone();
        vals.sort_unstable_by(|a, b| b.cmp(a));
        vals.dedup();
        vals
    }
}

/// A map between two ground sets, given by the image index of each point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpaceMap {
    domain: GroundSet,
    codomain: GroundSet,
    image: Vec<usize>,
}

impl SpaceMap {
    pub fn new(domain: GroundSet, codomain: GroundSet, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.len() {
            return Err(Error::ArityMismatch {
                expected: domain.len(),
                found: image.len(),
            });
        }
        if let Some(&bad) = image.iter().find(|&&j| j >= codomain.len()) {
            return Err(Error::ImageOutOfRange {
                index: bad,
                size: codomain.len(),
            });
        }
        Ok(SpaceMap {
            domain,
            codomain,
            image,
        })
    }

    pub fn identity(ground: &GroundSet) -> Self {
        SpaceMap {
            domain: ground.clone(),
            codomain: ground.clone(),
            image: (0..ground.len()).collect(),
        }
    }

    /// Constant map onto the point `target` of `codomain`.
    pub fn constant(domain: &GroundSet, codomain: &GroundSet, target: usize) -> Result<Self> {
        Self::new(domain.clone(), codomain.clone(), vec![target; domain.len()])
    }

    pub fn domain(&self) -> &GroundSet {
        &self.domain
    }

    pub fn codomain(&self) -> &GroundSet {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, index: usize) -> usize {
        self.image[index]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SpaceMap) -> Result<SpaceMap> {
        self.codomain.ensure_same(&other.domain)?;
        Ok(SpaceMap {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            image: self.image.iter().map(|&j| other.image[j]).collect(),
        })
    }

    pub fn image_of(&self, s: Subset) -> Subset {
        Subset::from_indices(s.iter().map(|i| self.image[i]))
    }

    pub fn preimage(&self, s: Subset) -> Subset {
        Subset::from_indices((0..self.image.len()).filter(|&i| s.contains(self.image[i])))
    }

    pub fn is_injective(&self) -> bool {
        self.image_of(self.domain.full()).len() == self.domain.len()
    }
}
