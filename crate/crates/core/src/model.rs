//! Marginals, instances and pricings, with the quantile machinery on top.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One support point of a marginal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub value: Rational,
    pub prob: Rational,
}

/// Finite discrete value distribution of one item.
///
/// Support values are strictly increasing, every probability is positive and
/// the probabilities sum to exactly one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MarginalRepr", into = "MarginalRepr")]
pub struct Marginal {
    atoms: Vec<Atom>,
}

#[derive(Serialize, Deserialize)]
struct MarginalRepr {
    support: Vec<Atom>,
}

impl TryFrom<MarginalRepr> for Marginal {
    type Error = Error;
    fn try_from(r: MarginalRepr) -> Result<Self> {
        Marginal::new(r.support.into_iter().map(|a| (a.value, a.prob)))
    }
}

impl From<Marginal> for MarginalRepr {
    fn from(m: Marginal) -> Self {
        MarginalRepr { support: m.atoms }
    }
}

impl Marginal {
    /// Normalizes (sorts, merges duplicate values, drops zero masses) and validates.
    pub fn new(pairs: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (value, prob) in pairs {
            if value.is_negative() {
                return Err(Error::NegativeValue(value));
            }
            if prob.is_negative() {
                return Err(Error::NegativeProb(prob));
            }
            *merged.entry(value).or_insert_with(Rational::zero) += prob;
        }
        let atoms: Vec<Atom> = merged
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(value, prob)| Atom { value, prob })
            .collect();
        if atoms.is_empty() {
            return Err(Error::EmptySupport);
        }
        let sum: Rational = atoms.iter().map(|a| &a.prob).sum();
        if sum != Rational::one() {
            return Err(Error::ProbSumMismatch { sum });
        }
        Ok(Marginal { atoms })
    }

    /// Point mass at `value`.
    pub fn point(value: Rational) -> Result<Self> {
        Marginal::new([(value, Rational::one())])
    }

    /// Uniform over a multiset of values (duplicates merge).
    pub fn uniform_multiset(values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let values: Vec<Rational> = values.into_iter().collect();
        if values.is_empty() {
            return Err(Error::EmptySupport);
        }
        let w = Rational::new(1, values.len() as i64);
        Marginal::new(values.into_iter().map(|v| (v, w.clone())))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn values(&self) -> impl DoubleEndedIterator<Item = &Rational> + ExactSizeIterator {
        self.atoms.iter().map(|a| &a.value)
    }

    pub fn min_value(&self) -> &Rational {
        &self.atoms[0].value
    }

    pub fn max_value(&self) -> &Rational {
        &self.atoms[self.atoms.len() - 1].value
    }

    /// `Pr[v <= x]`.
    pub fn cdf(&self, x: &Rational) -> Rational {
        self.atoms
            .iter()
            .take_while(|a| &a.value <= x)
            .map(|a| &a.prob)
            .sum()
    }

    /// `Pr[v >= x]`.
    pub fn survival(&self, x: &Rational) -> Rational {
        self.atoms
            .iter()
            .filter(|a| &a.value >= x)
            .map(|a| &a.prob)
            .sum()
    }

    /// Smallest support value whose CDF reaches `q`; `q = 0` gives the minimum.
    pub fn quantile(&self, q: &Rational) -> Result<Rational> {
        if q.is_negative() || q > &Rational::one() {
            return Err(Error::QOutOfRange(q.clone()));
        }
        let mut acc = Rational::zero();
        for a in &self.atoms {
            acc += &a.prob;
            if &acc >= q {
                return Ok(a.value.clone());
            }
        }
        unreachable!("probabilities sum to one")
    }

    pub fn mean(&self) -> Rational {
        self.atoms.iter().map(|a| &a.value * &a.prob).sum()
    }
}

/// Validates and normalizes a raw list of `(value, prob)` pairs.
pub fn validate_marginal(pairs: &[(Rational, Rational)]) -> Result<Marginal> {
    Marginal::new(pairs.iter().cloned())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    #[serde(flatten)]
    pub marginal: Marginal,
}

/// A non-empty list of named items with their value marginals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceRepr", into = "InstanceRepr")]
pub struct Instance {
    items: Vec<Item>,
}

#[derive(Serialize, Deserialize)]
struct InstanceRepr {
    items: Vec<Item>,
}

impl TryFrom<InstanceRepr> for Instance {
    type Error = Error;
    fn try_from(r: InstanceRepr) -> Result<Self> {
        Instance::new(r.items)
    }
}

impl From<Instance> for InstanceRepr {
    fn from(i: Instance) -> Self {
        InstanceRepr { items: i.items }
    }
}

impl Instance {
    pub fn new(items: Vec<Item>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptyInstance);
        }
        let mut seen = HashSet::new();
        for it in &items {
            if !seen.insert(it.name.as_str()) {
                return Err(Error::DuplicateName(it.name.clone()));
            }
        }
        Ok(Instance { items })
    }

    /// Items named `1..=n` in order.
    pub fn from_marginals(marginals: impl IntoIterator<Item = Marginal>) -> Result<Self> {
        Instance::new(
            marginals
                .into_iter()
                .enumerate()
                .map(|(i, marginal)| Item {
                    name: (i + 1).to_string(),
                    marginal,
                })
                .collect(),
        )
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn marginal(&self, i: usize) -> &Marginal {
        &self.items[i].marginal
    }

    pub fn marginals(&self) -> impl Iterator<Item = &Marginal> {
        self.items.iter().map(|it| &it.marginal)
    }
}

/// Price of one item; `NotOffered` plays the role of an infinite price.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Price {
    Offered(Rational),
    NotOffered,
}

impl Price {
    pub fn offered(&self) -> Option<&Rational> {
        match self {
            Price::Offered(p) => Some(p),
            Price::NotOffered => None,
        }
    }

    pub fn is_offered(&self) -> bool {
        matches!(self, Price::Offered(_))
    }
}

impl From<Rational> for Price {
    fn from(p: Rational) -> Self {
        Price::Offered(p)
    }
}

/// Finite prices order below `NotOffered`.
impl Ord for Price {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Price::Offered(a), Price::Offered(b)) => a.cmp(b),
            (Price::Offered(_), Price::NotOffered) => Ordering::Less,
            (Price::NotOffered, Price::Offered(_)) => Ordering::Greater,
            (Price::NotOffered, Price::NotOffered) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Price {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Price {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Price::Offered(p) => write!(f, "{p}"),
            Price::NotOffered => f.write_str("inf"),
        }
    }
}

impl Serialize for Price {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Price {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Price::Offered(Rational::from(n))),
            Raw::Str(s) if matches!(s.trim(), "inf" | "Infinity" | "infinity") => Ok(Price::NotOffered),
            Raw::Str(s) => s.parse().map(Price::Offered).map_err(serde::de::Error::custom),
        }
    }
}

/// One price per item of an instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pricing {
    pub prices: Vec<Price>,
}

impl Pricing {
    pub fn new(prices: Vec<Price>) -> Self {
        Pricing { prices }
    }

    /// Every item offered, at the given prices.
    pub fn offered(prices: impl IntoIterator<Item = Rational>) -> Self {
        Pricing {
            prices: prices.into_iter().map(Price::Offered).collect(),
        }
    }

    pub fn none_offered(n: usize) -> Self {
        Pricing {
            prices: vec![Price::NotOffered; n],
        }
    }

    /// Only `item` is offered, at `price`.
    pub fn single(n: usize, item: usize, price: Rational) -> Self {
        let mut p = Pricing::none_offered(n);
        p.prices[item] = Price::Offered(price);
        p
    }

    pub fn len(&self) -> usize {
        self.prices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prices.is_empty()
    }

    pub fn get(&self, i: usize) -> &Price {
        &self.prices[i]
    }

    pub fn offered_items(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.prices
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.offered().map(|p| (i, p)))
    }

    /// Distinct finite prices used.
    pub fn distinct_prices(&self) -> usize {
        let mut seen: Vec<&Rational> = self.offered_items().map(|(_, p)| p).collect();
        seen.sort();
        seen.dedup();
        seen.len()
    }

    /// Checks the length and that every finite price is nonnegative.
    pub fn check_against(&self, inst: &Instance) -> Result<()> {
        if self.prices.len() != inst.len() {
            return Err(Error::PricingLength {
                expected: inst.len(),
                got: self.prices.len(),
            });
        }
        for (_, p) in self.offered_items() {
            if p.is_negative() {
                return Err(Error::NegativePrice(p.clone()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Pricing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.prices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// `Pr[v <= x]` for one marginal.
pub fn cdf(m: &Marginal, x: &Rational) -> Rational {
    m.cdf(x)
}

/// `min { v : F(v) >= q }` for one marginal.
pub fn quantile(m: &Marginal, q: &Rational) -> Result<Rational> {
    m.quantile(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(pairs: &[(i64, i64, i64)]) -> Result<Marginal> {
        Marginal::new(pairs.iter().map(|&(v, pn, pd)| (rat(v, 1), rat(pn, pd))))
    }

    fn uniform4() -> Marginal {
        Marginal::uniform_multiset((1..=4).map(|v| rat(v, 1))).unwrap()
    }

    #[test]
    fn validate_accepts_canonical() {
        let mg = m(&[(1, 1, 2), (2, 1, 2)]).unwrap();
        assert_eq!(mg.len(), 2);
    }

    #[test]
    fn validate_rejects_bad_sum() {
        assert_eq!(
            m(&[(1, 1, 2), (2, 1, 3)]),
            Err(Error::ProbSumMismatch { sum: rat(5, 6) })
        );
    }

    #[test]
    fn validate_merges_duplicates() {
        let mg = m(&[(2, 1, 4), (2, 1, 4), (3, 1, 2)]).unwrap();
        assert_eq!(
            mg.atoms(),
            &[
                Atom { value: rat(2, 1), prob: rat(1, 2) },
                Atom { value: rat(3, 1), prob: rat(1, 2) }
            ]
        );
    }

    #[test]
    fn validate_rejects_negatives_and_drops_zero_mass() {
        assert!(matches!(m(&[(-1, 1, 1)]), Err(Error::NegativeValue(_))));
        assert!(matches!(
            Marginal::new([(rat(1, 1), rat(3, 2)), (rat(2, 1), rat(-1, 2))]),
            Err(Error::NegativeProb(_))
        ));
        let mg = m(&[(1, 0, 1), (5, 1, 1)]).unwrap();
        assert_eq!(mg.len(), 1);
        assert_eq!(mg.min_value(), &rat(5, 1));
    }

    #[test]
    fn quantile_examples() {
        let u = uniform4();
        assert_eq!(u.quantile(&rat(1, 2)).unwrap(), rat(2, 1));
        assert_eq!(u.quantile(&rat(1, 1)).unwrap(), rat(4, 1));
        assert_eq!(u.quantile(&rat(0, 1)).unwrap(), rat(1, 1));
        let skew = m(&[(1, 1, 3), (5, 2, 3)]).unwrap();
        assert_eq!(skew.quantile(&rat(1, 2)).unwrap(), rat(5, 1));
        assert!(matches!(u.quantile(&rat(3, 2)), Err(Error::QOutOfRange(_))));
        assert!(matches!(u.quantile(&rat(-1, 2)), Err(Error::QOutOfRange(_))));
    }

    #[test]
    fn cdf_examples() {
        let u = uniform4();
        assert_eq!(u.cdf(&rat(2, 1)), rat(1, 2));
        assert_eq!(u.cdf(&rat(0, 1)), rat(0, 1));
        let skew = m(&[(1, 1, 3), (5, 2, 3)]).unwrap();
        assert_eq!(skew.cdf(&rat(3, 1)), rat(1, 3));
        assert_eq!(skew.survival(&rat(5, 1)), rat(2, 3));
    }

    #[test]
    fn instance_rejects_duplicates_and_empty() {
        let mg = uniform4();
        let it = |n: &str| Item { name: n.into(), marginal: mg.clone() };
        assert_eq!(Instance::new(vec![]), Err(Error::EmptyInstance));
        assert!(matches!(
            Instance::new(vec![it("a"), it("a")]),
            Err(Error::DuplicateName(_))
        ));
        assert!(Instance::new(vec![it("a"), it("b")]).is_ok());
    }

    #[test]
    fn price_serde_and_order() {
        let p: Pricing = serde_json::from_str(r#"{"prices": ["3/2", "inf", 2]}"#).unwrap();
        assert_eq!(
            p.prices,
            vec![Price::Offered(rat(3, 2)), Price::NotOffered, Price::Offered(rat(2, 1))]
        );
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"prices":["3/2","inf","2"]}"#);
        assert!(Price::Offered(rat(100, 1)) < Price::NotOffered);
        assert_eq!(p.distinct_prices(), 2);
    }

    #[test]
    fn instance_json_roundtrip() {
        let inst = Instance::from_marginals([uniform4(), m(&[(0, 1, 4), (10, 3, 4)]).unwrap()]).unwrap();
        let json = serde_json::to_string(&inst).unwrap();
        let back: Instance = serde_json::from_str(&json).unwrap();
        assert_eq!(inst, back);
    }
}
