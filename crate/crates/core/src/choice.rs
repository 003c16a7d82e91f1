//! Buyer choice: the null item, the tie-break rule and the domination order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::{Instance, Item, Marginal, Price, Pricing};
use crate::rational::Rational;

/// How the buyer breaks ties between items of equal utility.
///
/// Both variants fall back to the lower item index among equal prices, so
/// each induces a strict order on `(price, index)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreakRule {
    #[default]
    HigherPriceFirst,
    LowerPriceFirst,
}

impl TieBreakRule {
    /// At equal utility, does the buyer take `a` over `b`?
    pub fn prefers(self, a: ItemRef, a_price: &Rational, b: ItemRef, b_price: &Rational) -> bool {
        let by_price = match self {
            TieBreakRule::HigherPriceFirst => a_price.cmp(b_price),
            TieBreakRule::LowerPriceFirst => b_price.cmp(a_price),
        };
        match by_price {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => a < b,
        }
    }
}

impl FromStr for TieBreakRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "high-price" | "higher-price-first" => Ok(TieBreakRule::HigherPriceFirst),
            "low-price" | "lower-price-first" => Ok(TieBreakRule::LowerPriceFirst),
            other => Err(format!("unknown tie-break rule {other:?}")),
        }
    }
}

impl fmt::Display for TieBreakRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreakRule::HigherPriceFirst => "high-price",
            TieBreakRule::LowerPriceFirst => "low-price",
        })
    }
}

/// An original item index, or the null (no purchase) option.
///
/// `Null` orders after every real item, so it loses index tie-breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ItemRef {
    Item(usize),
    Null,
}

impl fmt::Display for ItemRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ItemRef::Item(i) => write!(f, "{}", i + 1),
            ItemRef::Null => f.write_str("null"),
        }
    }
}

/// An option in front of the buyer: which item, at what utility and price.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub item: ItemRef,
    pub utility: Rational,
    pub price: Rational,
}

impl Candidate {
    pub fn new(item: ItemRef, utility: Rational, price: Rational) -> Self {
        Candidate { item, utility, price }
    }

    pub fn null() -> Self {
        Candidate::new(ItemRef::Null, Rational::zero(), Rational::zero())
    }
}

/// True iff the buyer strictly prefers `a` to `b`.
pub fn dominates(a: &Candidate, b: &Candidate, rule: TieBreakRule) -> bool {
    match a.utility.cmp(&b.utility) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.item != b.item && rule.prefers(a.item, &a.price, b.item, &b.price),
    }
}

/// Offered items plus the null item, with a map back to original indices.
#[derive(Clone, Debug)]
pub struct Augmented {
    pub instance: Instance,
    pub pricing: Pricing,
    /// `origin[k]` is the original identity of working item `k`.
    pub origin: Vec<ItemRef>,
}

/// Drops items that are not offered and appends the null item (value 0, price 0).
pub fn augment_with_null(inst: &Instance, p: &Pricing) -> Augmented {
    let mut items = Vec::new();
    let mut prices = Vec::new();
    let mut origin = Vec::new();
    for (i, (item, price)) in inst.items().iter().zip(&p.prices).enumerate() {
        if let Price::Offered(price) = price {
            items.push(item.clone());
            prices.push(Price::Offered(price.clone()));
            origin.push(ItemRef::Item(i));
        }
    }
    let mut name = String::from("null");
    while inst.items().iter().any(|it| it.name == name) {
        name.push('_');
    }
    items.push(Item {
        name,
        marginal: Marginal::point(Rational::zero()).expect("point mass is valid"),
    });
    prices.push(Price::Offered(Rational::zero()));
    origin.push(ItemRef::Null);
    Augmented {
        instance: Instance::new(items).expect("names are unique"),
        pricing: Pricing::new(prices),
        origin,
    }
}

/// Order in which the adversary processes options: price ascending, and
/// among equal prices the option the buyer abandons at a tie comes first.
pub fn processing_order(options: &[(ItemRef, Rational)], rule: TieBreakRule) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..options.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ia, pa) = &options[a];
        let (ib, pb) = &options[b];
        pa.cmp(pb).then_with(|| {
            if ia == ib {
                Ordering::Equal
            } else if rule.prefers(*ia, pa, *ib, pb) {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        })
    });
    idx
}

/// The buyer's options under `p`, in processing order, null included.
pub fn ordered_options(p: &Pricing, rule: TieBreakRule) -> Vec<ItemRef> {
    let mut options: Vec<(ItemRef, Rational)> = p
        .offered_items()
        .map(|(i, price)| (ItemRef::Item(i), price.clone()))
        .collect();
    options.push((ItemRef::Null, Rational::zero()));
    processing_order(&options, rule)
        .into_iter()
        .map(|k| options[k].0)
        .collect()
}

/// Exact rational paired with its nearest `f64`, for fast exact comparisons.
#[derive(Clone, Debug)]
pub(crate) struct Num {
    pub exact: Rational,
    pub approx: f64,
}

impl Num {
    pub fn new(exact: Rational) -> Self {
        let approx = exact.to_f64();
        Num { exact, approx }
    }
}

/// Compares `va - pa` with `vb - pb` exactly, deciding in floating point
/// whenever the gap is far outside rounding error.
pub(crate) fn cmp_utility(va: &Num, pa: &Num, vb: &Num, pb: &Num) -> Ordering {
    let diff = (va.approx - pa.approx) - (vb.approx - pb.approx);
    let scale = va.approx.abs() + pa.approx.abs() + vb.approx.abs() + pb.approx.abs();
    if scale.is_finite() && diff.abs() > scale * 1e-12 {
        return if diff > 0.0 { Ordering::Greater } else { Ordering::Less };
    }
    if va.exact == vb.exact && pa.exact == pb.exact {
        return Ordering::Equal;
    }
    (&va.exact + &pb.exact).cmp(&(&vb.exact + &pa.exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn c(item: ItemRef, u: i64, p: i64) -> Candidate {
        Candidate::new(item, rat(u, 1), rat(p, 1))
    }

    #[test]
    fn strict_utility_wins_under_any_rule() {
        let a = c(ItemRef::Item(0), 2, 1);
        let b = c(ItemRef::Item(1), 0, 2);
        for rule in [TieBreakRule::HigherPriceFirst, TieBreakRule::LowerPriceFirst] {
            assert!(dominates(&a, &b, rule));
            assert!(!dominates(&b, &a, rule));
        }
    }

    #[test]
    fn ties_follow_price_rule() {
        let a = c(ItemRef::Item(1), 0, 2);
        let b = c(ItemRef::Item(0), 0, 1);
        assert!(dominates(&a, &b, TieBreakRule::HigherPriceFirst));
        assert!(dominates(&b, &a, TieBreakRule::LowerPriceFirst));
    }

    #[test]
    fn null_loses_zero_utility_tie_under_high_price() {
        let null = Candidate::null();
        let b = c(ItemRef::Item(0), 0, 1);
        assert!(!dominates(&null, &b, TieBreakRule::HigherPriceFirst));
        assert!(dominates(&null, &b, TieBreakRule::LowerPriceFirst));
    }

    #[test]
    fn equal_prices_fall_back_to_index() {
        let a = c(ItemRef::Item(0), 1, 3);
        let b = c(ItemRef::Item(2), 1, 3);
        for rule in [TieBreakRule::HigherPriceFirst, TieBreakRule::LowerPriceFirst] {
            assert!(dominates(&a, &b, rule));
            assert!(!dominates(&b, &a, rule));
        }
        assert!(!dominates(&a, &a, TieBreakRule::HigherPriceFirst));
    }

    #[test]
    fn augment_drops_unoffered_and_appends_null() {
        let m = Marginal::uniform_multiset([rat(1, 1), rat(2, 1)]).unwrap();
        let inst = Instance::from_marginals([m.clone(), m]).unwrap();
        let both = augment_with_null(&inst, &Pricing::offered([rat(1, 1), rat(2, 1)]));
        assert_eq!(both.instance.len(), 3);
        assert_eq!(both.origin, vec![ItemRef::Item(0), ItemRef::Item(1), ItemRef::Null]);
        assert_eq!(both.pricing.prices[2], Price::Offered(rat(0, 1)));

        let one = augment_with_null(&inst, &Pricing::single(2, 0, rat(1, 1)));
        assert_eq!(one.origin, vec![ItemRef::Item(0), ItemRef::Null]);

        let none = augment_with_null(&inst, &Pricing::none_offered(2));
        assert_eq!(none.origin, vec![ItemRef::Null]);
    }

    #[test]
    fn processing_order_puts_tie_loser_first() {
        let p = Pricing::offered([rat(2, 1), rat(1, 1), rat(2, 1), rat(0, 1)]);
        assert_eq!(
            ordered_options(&p, TieBreakRule::HigherPriceFirst),
            vec![ItemRef::Null, ItemRef::Item(3), ItemRef::Item(1), ItemRef::Item(2), ItemRef::Item(0)]
        );
        assert_eq!(
            ordered_options(&p, TieBreakRule::LowerPriceFirst),
            vec![ItemRef::Null, ItemRef::Item(3), ItemRef::Item(1), ItemRef::Item(2), ItemRef::Item(0)]
        );
    }

    #[test]
    fn fast_compare_agrees_with_exact() {
        let n = |a: i64, b: i64| Num::new(rat(a, b));
        assert_eq!(cmp_utility(&n(3, 1), &n(1, 1), &n(4, 1), &n(2, 1)), Ordering::Equal);
        assert_eq!(cmp_utility(&n(1, 3), &n(0, 1), &n(1, 3), &n(1, 1_000_000_000_000_000)), Ordering::Greater);
        let big = Num::new(Rational::pow2(81));
        let bigger = Num::new(Rational::pow2(81) + rat(1, 1));
        assert_eq!(cmp_utility(&bigger, &n(0, 1), &big, &n(0, 1)), Ordering::Greater);
    }
}
