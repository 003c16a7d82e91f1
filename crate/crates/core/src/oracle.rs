//! Brute-force ground truth over perfect couplings of multiset marginals.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::adversary::{Chain, Chooser, Coupling};
use crate::choice::{ordered_options, ItemRef, Num, TieBreakRule};
use crate::error::{Error, Result};
use crate::model::{Instance, Pricing};
use crate::rational::Rational;

/// Limits on multiset size and on the number of couplings enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub d_cap: usize,
    pub budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            d_cap: 12,
            budget: 10_000_000,
        }
    }
}

/// Every marginal as a uniform multiset of the same size `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultisetInstance {
    pub d: usize,
    /// Per item, `d` values in nonincreasing order.
    pub values: Vec<Vec<Rational>>,
}

impl MultisetInstance {
    pub fn items(&self) -> usize {
        self.values.len()
    }

    /// `(d!)^(n-1)`.
    pub fn coupling_count(&self) -> BigUint {
        let fact: BigUint = (1..=self.d).map(BigUint::from).product();
        num_traits::pow(fact, self.items().saturating_sub(1))
    }
}

pub fn expand_to_multiset(inst: &Instance) -> Result<MultisetInstance> {
    expand_to_multiset_capped(inst, OracleLimits::default().d_cap)
}

pub fn expand_to_multiset_capped(inst: &Instance, d_cap: usize) -> Result<MultisetInstance> {
    let d_big = Rational::lcm_denoms(inst.marginals().flat_map(|m| m.atoms().iter().map(|a| &a.prob)));
    let d = match d_big.to_usize() {
        Some(d) if d <= d_cap => d,
        _ => {
            return Err(Error::DTooLarge {
                d: d_big.to_string(),
                cap: d_cap,
            })
        }
    };
    let scale = Rational::from(d as u64);
    let values = inst
        .marginals()
        .map(|m| {
            let mut vs = Vec::with_capacity(d);
            for a in m.atoms().iter().rev() {
                let copies = (&a.prob * &scale).numer().to_usize().expect("count fits usize");
                vs.extend(std::iter::repeat_n(a.value.clone(), copies));
            }
            vs
        })
        .collect();
    Ok(MultisetInstance { d, values })
}

fn check_budget(mi: &MultisetInstance, budget: u64) -> Result<()> {
    let needed = mi.coupling_count();
    if needed > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            needed: needed.to_string(),
            budget,
        });
    }
    Ok(())
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Odometer over permutation tuples for items `1..n`; item 0 keeps the identity.
struct Perms {
    perms: Vec<Vec<usize>>,
    started: bool,
    done: bool,
}

impl Perms {
    fn new(n: usize, d: usize) -> Self {
        Perms {
            perms: vec![(0..d).collect(); n],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> Option<&[Vec<usize>]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.perms);
        }
        for k in (1..self.perms.len()).rev() {
            if next_permutation(&mut self.perms[k]) {
                return Some(&self.perms);
            }
            self.perms[k].sort_unstable();
        }
        self.done = true;
        None
    }
}

/// All perfect couplings, each as `d` chains of mass `1/d`, merged.
pub struct Couplings<'a> {
    mi: &'a MultisetInstance,
    perms: Perms,
}

impl Iterator for Couplings<'_> {
    type Item = Coupling;

    fn next(&mut self) -> Option<Coupling> {
        let mi = self.mi;
        let perms = self.perms.advance()?;
        let mass = Rational::new(1, mi.d as i64);
        let chains = (0..mi.d)
            .map(|r| Chain {
                mass: mass.clone(),
                values: perms.iter().zip(&mi.values).map(|(pi, vs)| vs[pi[r]].clone()).collect(),
            })
            .collect();
        Some(Coupling::new(chains).merged())
    }
}

pub fn enumerate_couplings(mi: &MultisetInstance, budget: u64) -> Result<Couplings<'_>> {
    check_budget(mi, budget)?;
    Ok(Couplings {
        mi,
        perms: Perms::new(mi.items(), mi.d),
    })
}

/// Visits every permutation tuple with the purchased option of each of the `d` chains.
fn for_each_outcome(
    inst: &Instance,
    p: &Pricing,
    rule: TieBreakRule,
    limits: OracleLimits,
    mut visit: impl FnMut(&[Vec<usize>], &[usize], &Chooser),
) -> Result<MultisetInstance> {
    p.check_against(inst)?;
    let mi = expand_to_multiset_capped(inst, limits.d_cap)?;
    check_budget(&mi, limits.budget)?;
    let nums: Vec<Vec<Num>> = mi
        .values
        .iter()
        .map(|vs| vs.iter().cloned().map(Num::new).collect())
        .collect();
    let chooser = Chooser::new(p, rule);
    let mut perms = Perms::new(mi.items(), mi.d);
    let mut winners = vec![0usize; mi.d];
    while let Some(ps) = perms.advance() {
        for (r, w) in winners.iter_mut().enumerate() {
            *w = chooser.winner(|i| &nums[i][ps[i][r]]);
        }
        visit(ps, &winners, &chooser);
    }
    Ok(mi)
}

fn witness(mi: &MultisetInstance, perms: &[Vec<usize>]) -> Coupling {
    let mass = Rational::new(1, mi.d as i64);
    let chains = (0..mi.d)
        .map(|r| Chain {
            mass: mass.clone(),
            values: perms.iter().zip(&mi.values).map(|(pi, vs)| vs[pi[r]].clone()).collect(),
        })
        .collect();
    Coupling::new(chains).merged()
}

/// Minimum revenue over all perfect couplings, with the first minimizing coupling.
pub fn min_revenue_bruteforce(inst: &Instance, p: &Pricing, rule: TieBreakRule) -> Result<(Rational, Coupling)> {
    min_revenue_bruteforce_with(inst, p, rule, OracleLimits::default())
}

pub fn min_revenue_bruteforce_with(
    inst: &Instance,
    p: &Pricing,
    rule: TieBreakRule,
    limits: OracleLimits,
) -> Result<(Rational, Coupling)> {
    let mut best: Option<(Rational, Vec<Vec<usize>>)> = None;
    let mi = for_each_outcome(inst, p, rule, limits, |ps, winners, chooser| {
        let total: Rational = winners.iter().map(|&w| &chooser.options[w].1.exact).sum();
        if best.as_ref().is_none_or(|(b, _)| total < *b) {
            best = Some((total, ps.to_vec()));
        }
    })?;
    let (total, perms) = best.expect("at least one coupling");
    Ok((total / Rational::from(mi.d as u64), witness(&mi, &perms)))
}

/// Largest probability, over all perfect couplings, that the buyer takes one
/// of the first `prefix` options in processing order (null included).
pub fn max_prefix_sale_prob(inst: &Instance, p: &Pricing, rule: TieBreakRule, prefix: usize) -> Result<Rational> {
    max_prefix_sale_prob_with(inst, p, rule, prefix, OracleLimits::default())
}

pub fn max_prefix_sale_prob_with(
    inst: &Instance,
    p: &Pricing,
    rule: TieBreakRule,
    prefix: usize,
    limits: OracleLimits,
) -> Result<Rational> {
    let order = ordered_options(p, rule);
    if prefix > order.len() {
        return Err(Error::InvalidParams(format!(
            "prefix {prefix} exceeds the {} options",
            order.len()
        )));
    }
    let counted: Vec<ItemRef> = order[..prefix].to_vec();
    let mut best = 0usize;
    let mi = for_each_outcome(inst, p, rule, limits, |_, winners, chooser| {
        let hits = winners
            .iter()
            .filter(|&&w| counted.contains(&chooser.options[w].0))
            .count();
        best = best.max(hits);
    })?;
    Ok(Rational::new(best as i64, mi.d as i64))
}

/// Maximum prefix sale probabilities for every prefix length `1..=options`.
pub fn max_prefix_sale_probs(inst: &Instance, p: &Pricing, rule: TieBreakRule, limits: OracleLimits) -> Result<Vec<Rational>> {
    let order = ordered_options(p, rule);
    let mut best = vec![0usize; order.len()];
    let mut rank = Vec::new();
    let mi = for_each_outcome(inst, p, rule, limits, |_, winners, chooser| {
        if rank.is_empty() {
            rank = chooser
                .options
                .iter()
                .map(|(it, _)| order.iter().position(|o| o == it).expect("option is ordered"))
                .collect();
        }
        let mut hits = vec![0usize; order.len()];
        for &w in winners {
            hits[rank[w]] += 1;
        }
        let mut acc = 0;
        for (b, h) in best.iter_mut().zip(hits) {
            acc += h;
            *b = (*b).max(acc);
        }
    })?;
    Ok(best
        .into_iter()
        .map(|b| Rational::new(b as i64, mi.d as i64))
        .collect())
}
