use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::choice::{cmp_utility, ordered_options, ItemRef, Num, TieBreakRule};
use crate::error::{Error, Result};
use crate::model::{Instance, Pricing};
use crate::rational::Rational;

/// A coupled value profile: one value per item, carrying probability `mass`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub mass: Rational,
    pub values: Vec<Rational>,
}

impl Chain {
    /// `value - price` per offered item, `None` where the item is not offered.
    pub fn utilities(&self, p: &Pricing) -> Vec<Option<Rational>> {
        self.values
            .iter()
            .zip(&p.prices)
            .map(|(v, price)| price.offered().map(|price| v - price))
            .collect()
    }
}

/// A joint distribution given as mass-weighted chains.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coupling {
    pub chains: Vec<Chain>,
}

impl Coupling {
    pub fn new(chains: Vec<Chain>) -> Self {
        Coupling { chains }
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn total_mass(&self) -> Rational {
        self.chains.iter().map(|c| &c.mass).sum()
    }

    /// Exact mass balance against every marginal of `inst`.
    pub fn check_compatible(&self, inst: &Instance) -> Result<()> {
        let bad = |msg: String| Err(Error::IncompatibleCoupling(msg));
        for (k, c) in self.chains.iter().enumerate() {
            if !c.mass.is_positive() {
                return bad(format!("chain {k} has nonpositive mass {}", c.mass));
            }
            if c.values.len() != inst.len() {
                return bad(format!(
                    "chain {k} has {} values for {} items",
                    c.values.len(),
                    inst.len()
                ));
            }
        }
        let total = self.total_mass();
        if total != Rational::one() {
            return bad(format!("chain masses sum to {total}"));
        }
        for (i, m) in inst.marginals().enumerate() {
            let mut acc: BTreeMap<&Rational, Rational> = BTreeMap::new();
            for c in &self.chains {
                *acc.entry(&c.values[i]).or_insert_with(Rational::zero) += &c.mass;
            }
            for a in m.atoms() {
                let got = acc.remove(&a.value).unwrap_or_else(Rational::zero);
                if got != a.prob {
                    return bad(format!(
                        "item {} value {} carries mass {got}, marginal has {}",
                        i + 1,
                        a.value,
                        a.prob
                    ));
                }
            }
            if let Some((v, _)) = acc.into_iter().next() {
                return bad(format!("item {} value {v} is outside the support", i + 1));
            }
        }
        Ok(())
    }

    /// Merges chains over identical value profiles, keeping first-seen order.
    pub fn merged(self) -> Coupling {
        let mut index: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
        let mut out: Vec<Chain> = Vec::new();
        for c in self.chains {
            match index.get(&c.values) {
                Some(&k) => out[k].mass += c.mass,
                None => {
                    index.insert(c.values.clone(), out.len());
                    out.push(c);
                }
            }
        }
        Coupling { chains: out }
    }
}

/// A revenue-evaluated coupling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestResponse {
    pub coupling: Coupling,
    pub revenue: Rational,
    /// Sale probability per original item; zero for items not offered.
    pub sale_prob: Vec<Rational>,
    pub no_sale_prob: Rational,
    /// Offered items and the null option in processing order.
    pub order: Vec<ItemRef>,
}

impl BestResponse {
    pub fn prob_of(&self, item: ItemRef) -> &Rational {
        match item {
            ItemRef::Item(i) => &self.sale_prob[i],
            ItemRef::Null => &self.no_sale_prob,
        }
    }

    /// Cumulative sale probability of the first `k` options of `order`, for `k = 1..=len`.
    pub fn prefix_sale_probs(&self) -> Vec<Rational> {
        let mut acc = Rational::zero();
        self.order
            .iter()
            .map(|&it| {
                acc += self.prob_of(it);
                acc.clone()
            })
            .collect()
    }
}

/// Finds the purchased option among a fixed set of priced options.
pub(crate) struct Chooser {
    pub(crate) options: Vec<(ItemRef, Num)>,
    rule: TieBreakRule,
    zero: Num,
}

impl Chooser {
    /// Options are the offered items in index order, then null.
    pub(crate) fn new(p: &Pricing, rule: TieBreakRule) -> Self {
        let mut options: Vec<(ItemRef, Num)> = p
            .offered_items()
            .map(|(i, price)| (ItemRef::Item(i), Num::new(price.clone())))
            .collect();
        options.push((ItemRef::Null, Num::new(Rational::zero())));
        Chooser {
            options,
            rule,
            zero: Num::new(Rational::zero()),
        }
    }

    /// Index into `options` of the purchased option; `value_of(i)` gives the
    /// value of original item `i`.
    pub(crate) fn winner<'a>(&'a self, value_of: impl Fn(usize) -> &'a Num) -> usize {
        let value = |k: usize| match self.options[k].0 {
            ItemRef::Item(i) => value_of(i),
            ItemRef::Null => &self.zero,
        };
        let mut best = 0;
        for k in 1..self.options.len() {
            let (ib, pb) = &self.options[best];
            let (ik, pk) = &self.options[k];
            let better = match cmp_utility(value(k), pk, value(best), pb) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => self.rule.prefers(*ik, &pk.exact, *ib, &pb.exact),
            };
            if better {
                best = k;
            }
        }
        best
    }
}

/// Expected revenue of pricing `p` when values follow coupling `c`.
pub fn revenue_of_coupling(
    inst: &Instance,
    p: &Pricing,
    c: &Coupling,
    rule: TieBreakRule,
) -> Result<BestResponse> {
    p.check_against(inst)?;
    c.check_compatible(inst)?;
    let chooser = Chooser::new(p, rule);
    let mut sold = vec![Rational::zero(); chooser.options.len()];
    for chain in &c.chains {
        let nums: Vec<Num> = chain.values.iter().cloned().map(Num::new).collect();
        let w = chooser.winner(|i| &nums[i]);
        sold[w] += &chain.mass;
    }
    let mut sale_prob = vec![Rational::zero(); inst.len()];
    let mut no_sale_prob = Rational::zero();
    let mut revenue = Rational::zero();
    for ((item, price), mass) in chooser.options.iter().zip(sold) {
        revenue += &price.exact * &mass;
        match item {
            ItemRef::Item(i) => sale_prob[*i] = mass,
            ItemRef::Null => no_sale_prob = mass,
        }
    }
    Ok(BestResponse {
        coupling: c.clone(),
        revenue,
        sale_prob,
        no_sale_prob,
        order: ordered_options(p, rule),
    })
}

/// Couples equal quantiles of every marginal.
pub fn comonotonic_coupling(inst: &Instance) -> Coupling {
    let marginals: Vec<_> = inst.marginals().collect();
    let mut ptr = vec![0usize; marginals.len()];
    let mut left: Vec<Rational> = marginals.iter().map(|m| m.atoms()[0].prob.clone()).collect();
    let mut chains = Vec::new();
    loop {
        let mass = left.iter().min().expect("at least one item").clone();
        let values = marginals
            .iter()
            .zip(&ptr)
            .map(|(m, &k)| m.atoms()[k].value.clone())
            .collect();
        chains.push(Chain { mass: mass.clone(), values });
        let mut done = false;
        for (i, m) in marginals.iter().enumerate() {
            left[i] -= &mass;
            if left[i].is_zero() {
                ptr[i] += 1;
                match m.atoms().get(ptr[i]) {
                    Some(a) => left[i] = a.prob.clone(),
                    None => done = true,
                }
            }
        }
        if done {
            break;
        }
    }
    Coupling { chains }
}
