//! Pricing rules, revenue bounds and an exhaustive search over a price grid.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};

use serde::{Deserialize, Serialize};

use crate::adversary::{comonotonic_coupling, revenue_of_coupling, Adversary, Chooser, Coupling};
use crate::choice::{Num, TieBreakRule};
use crate::error::{Error, Result};
use crate::model::{Instance, Marginal, Price, Pricing};
use crate::rational::Rational;

/// Monopoly price (smallest maximizer of `v * Pr[value >= v]`) and its revenue.
pub fn myerson(m: &Marginal) -> (Rational, Rational) {
    let mut tail = Rational::zero();
    let mut best: Option<(Rational, Rational)> = None;
    for a in m.atoms().iter().rev() {
        tail += &a.prob;
        let rev = &a.value * &tail;
        if best.as_ref().is_none_or(|(_, r)| &rev >= r) {
            best = Some((a.value.clone(), rev));
        }
    }
    best.expect("marginals are nonempty")
}

/// Offers only the item with the largest median, at that median.
pub fn max_median_single_price(inst: &Instance) -> Pricing {
    let half = Rational::new(1, 2);
    let mut best: Option<(usize, Rational)> = None;
    for (i, m) in inst.marginals().enumerate() {
        let med = m.quantile(&half).expect("1/2 is a valid quantile");
        if best.as_ref().is_none_or(|(_, b)| &med > b) {
            best = Some((i, med));
        }
    }
    let (i, med) = best.expect("instances are nonempty");
    Pricing::single(inst.len(), i, med)
}

/// `1/(1-q) - 1/ln(1-q)` for `0 < q < 1`.
pub fn mhr_factor(q: &Rational) -> Result<f64> {
    if !q.is_positive() || q >= &Rational::one() {
        return Err(Error::QOutOfRange(q.clone()));
    }
    let r = 1.0 - q.to_f64();
    Ok(1.0 / r - 1.0 / r.ln())
}

/// The quantile minimizing [`mhr_factor`], `1 - exp(-2 W(1/2))`.
pub fn mhr_optimal_quantile() -> f64 {
    // Newton on w e^w = 1/2
    let mut w = 0.5f64;
    for _ in 0..50 {
        let ew = w.exp();
        w -= (w * ew - 0.5) / (ew * (w + 1.0));
    }
    1.0 - (-2.0 * w).exp()
}

/// Sum of Myerson revenues over the offered items.
pub fn myerson_sum_upper_bound(inst: &Instance, p: &Pricing) -> Rational {
    inst.marginals()
        .zip(&p.prices)
        .filter(|(_, price)| price.is_offered())
        .map(|(m, _)| myerson(m).1)
        .sum()
}

/// Expected maximum value under the comonotonic coupling.
pub fn comonotonic_welfare(inst: &Instance) -> Rational {
    comonotonic_coupling(inst)
        .chains
        .iter()
        .map(|c| &c.mass * c.values.iter().max().expect("at least one item"))
        .sum()
}

/// Prices item `j` at `t_j / 2` for `j` in `set` (0-based) and withholds the rest.
pub fn half_threshold_pricing(trunc_points: &[Rational], set: &[usize]) -> Result<Pricing> {
    if let Some(t) = trunc_points.iter().find(|t| !t.is_positive()) {
        return Err(Error::InvalidParams(format!("truncation point {t} is not positive")));
    }
    let mut prices = vec![Price::NotOffered; trunc_points.len()];
    for &j in set {
        let t = trunc_points
            .get(j)
            .ok_or_else(|| Error::InvalidParams(format!("item {} out of range", j + 1)))?;
        prices[j] = Price::Offered(t / Rational::from(2));
    }
    Ok(Pricing::new(prices))
}

/// Robust revenue of one pricing together with its upper bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PricingReport {
    pub pricing: Pricing,
    pub robust_revenue: Rational,
    pub comonotonic_revenue: Rational,
    pub myerson_sum_bound: Rational,
    pub witness: Coupling,
}

pub fn robust_revenue(inst: &Instance, p: &Pricing, rule: TieBreakRule) -> Result<PricingReport> {
    report_with(&Adversary::new(inst), p, rule)
}

/// [`robust_revenue`] on a prepared adversary.
pub fn report_with(adv: &Adversary, p: &Pricing, rule: TieBreakRule) -> Result<PricingReport> {
    let inst = adv.instance();
    let br = adv.best_response(p, rule)?;
    let com = revenue_of_coupling(inst, p, &comonotonic_coupling(inst), rule)?;
    Ok(PricingReport {
        pricing: p.clone(),
        robust_revenue: br.revenue,
        comonotonic_revenue: com.revenue,
        myerson_sum_bound: myerson_sum_upper_bound(inst, p),
        witness: br.coupling,
    })
}

/// Where the search draws candidate prices from.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum CandidateGrid {
    /// Union of all support values.
    #[default]
    Support,
    /// The same list for every item.
    Shared(Vec<Rational>),
    /// One list per item.
    PerItem(Vec<Vec<Rational>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub grid: CandidateGrid,
    /// Added to every item's list.
    pub extra: Vec<Rational>,
    /// Cap on the number of distinct finite prices.
    pub max_distinct: Option<usize>,
    pub rule: TieBreakRule,
    /// Cap on the number of pricings enumerated.
    pub budget: u64,
    /// Worker threads; 1 runs serially.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            grid: CandidateGrid::Support,
            extra: Vec::new(),
            max_distinct: None,
            rule: TieBreakRule::default(),
            budget: 100_000_000,
            jobs: 1,
        }
    }
}

/// Best pricing found on the grid, with enumeration counters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub best: PricingReport,
    /// Pricings enumerated.
    pub visited: u64,
    /// Pricings that needed a full best response.
    pub evaluated: u64,
}

/// Exhaustive max-min search over a finite grid (NotOffered always allowed).
///
/// Prices above an item's largest value are dropped, since they never sell.
/// Items with identical marginals and identical lists are enumerated with
/// nondecreasing prices only; relabeling them leaves the robust revenue
/// unchanged. Ties go to the lexicographically least pricing.
pub fn search_maxmin(inst: &Instance, opts: &SearchOptions) -> Result<SearchOutcome> {
    let adv = Adversary::new(inst);
    let space = Space::new(inst, opts)?;
    let visited = space.count(opts.budget)?;
    let bounds = Bounds::new(inst);

    let (best, evaluated) = if opts.jobs <= 1 || space.grid[0].len() < 2 {
        let mut s = Scan::new(&space, &bounds, &adv, opts.rule);
        s.run_from(0, None);
        (s.best, s.evaluated)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidParams(e.to_string()))?;
        let parts: Vec<(Option<Best>, u64)> = pool.install(|| {
            use rayon::prelude::*;
            (0..space.grid[0].len())
                .into_par_iter()
                .map(|k| {
                    let mut s = Scan::new(&space, &bounds, &adv, opts.rule);
                    s.run_from(0, Some(k));
                    (s.best, s.evaluated)
                })
                .collect()
        });
        let mut best: Option<Best> = None;
        let mut evaluated = 0;
        for (b, e) in parts {
            evaluated += e;
            if let Some(b) = b {
                if best.as_ref().is_none_or(|cur| b.revenue > cur.revenue) {
                    best = Some(b);
                }
            }
        }
        (best, evaluated)
    };
    let best = best.expect("the all-withheld pricing is always enumerated");
    Ok(SearchOutcome {
        best: report_with(&adv, &Pricing::new(best.prices), opts.rule)?,
        visited,
        evaluated,
    })
}

struct Space {
    /// Per item: candidate prices ascending, NotOffered last.
    grid: Vec<Vec<Price>>,
    /// Earlier interchangeable item whose price bounds this one from below.
    twin: Vec<Option<usize>>,
    max_distinct: Option<usize>,
}

impl Space {
    fn new(inst: &Instance, opts: &SearchOptions) -> Result<Self> {
        let n = inst.len();
        let lists: Vec<Vec<Rational>> = match &opts.grid {
            CandidateGrid::Support => {
                let all: Vec<Rational> = inst.marginals().flat_map(|m| m.values().cloned()).collect();
                vec![all; n]
            }
            CandidateGrid::Shared(v) => vec![v.clone(); n],
            CandidateGrid::PerItem(v) => {
                if v.len() != n {
                    return Err(Error::PricingLength {
                        expected: n,
                        got: v.len(),
                    });
                }
                v.clone()
            }
        };
        let mut grid = Vec::with_capacity(n);
        for (m, list) in inst.marginals().zip(lists) {
            let mut set = BTreeSet::new();
            for c in list.into_iter().chain(opts.extra.iter().cloned()) {
                if c.is_negative() {
                    return Err(Error::NegativePrice(c));
                }
                if &c <= m.max_value() {
                    set.insert(c);
                }
            }
            let mut g: Vec<Price> = set.into_iter().map(Price::Offered).collect();
            g.push(Price::NotOffered);
            grid.push(g);
        }
        let items = inst.items();
        let twin = (0..n)
            .map(|i| {
                (0..i)
                    .rev()
                    .find(|&j| items[j].marginal == items[i].marginal && grid[j] == grid[i])
            })
            .collect();
        Ok(Space {
            grid,
            twin,
            max_distinct: opts.max_distinct,
        })
    }

    fn admissible(&self, i: usize, k: usize, idx: &[usize], distinct: &[&Rational]) -> bool {
        if let Some(j) = self.twin[i] {
            if k < idx[j] {
                return false;
            }
        }
        match (&self.grid[i][k], self.max_distinct) {
            (Price::Offered(c), Some(cap)) => distinct.len() < cap || distinct.contains(&c),
            _ => true,
        }
    }

    /// Number of admissible pricings, failing once it passes `budget`.
    fn count(&self, budget: u64) -> Result<u64> {
        fn go<'a>(s: &'a Space, i: usize, idx: &mut Vec<usize>, distinct: &mut Vec<&'a Rational>, acc: &mut u64, budget: u64) -> bool {
            if i == s.grid.len() {
                *acc += 1;
                return *acc <= budget;
            }
            for k in 0..s.grid[i].len() {
                if !s.admissible(i, k, idx, distinct) {
                    continue;
                }
                let pushed = match &s.grid[i][k] {
                    Price::Offered(c) if !distinct.contains(&c) => {
                        distinct.push(c);
                        true
                    }
                    _ => false,
                };
                idx.push(k);
                let ok = go(s, i + 1, idx, distinct, acc, budget);
                idx.pop();
                if pushed {
                    distinct.pop();
                }
                if !ok {
                    return false;
                }
            }
            true
        }
        let mut acc = 0;
        if !go(self, 0, &mut Vec::new(), &mut Vec::new(), &mut acc, budget) {
            let total: f64 = self.grid.iter().map(|g| g.len() as f64).product();
            return Err(Error::BudgetExceeded {
                needed: format!("more than {budget} (full grid {total:.0})"),
                budget,
            });
        }
        Ok(acc)
    }
}

/// Cheap upper bounds on robust revenue.
struct Bounds {
    myerson: Vec<Rational>,
    myerson_f: Vec<f64>,
    /// Myerson sum over items `i..n`.
    suffix_f: Vec<f64>,
    com: Vec<Vec<Num>>,
    /// Comonotonic chain masses over the common denominator `scale`.
    com_mass: Vec<BigUint>,
    com_mass_f: Vec<f64>,
    scale: BigUint,
}

impl Bounds {
    fn new(inst: &Instance) -> Self {
        let myerson: Vec<Rational> = inst.marginals().map(|m| myerson(m).1).collect();
        let myerson_f: Vec<f64> = myerson.iter().map(Rational::to_f64).collect();
        let mut suffix_f = vec![0.0; myerson.len() + 1];
        for i in (0..myerson.len()).rev() {
            suffix_f[i] = suffix_f[i + 1] + myerson_f[i];
        }
        let com = comonotonic_coupling(inst);
        let scale = Rational::lcm_denoms(com.chains.iter().map(|c| &c.mass));
        Bounds {
            myerson,
            myerson_f,
            suffix_f,
            com: com
                .chains
                .iter()
                .map(|c| c.values.iter().cloned().map(Num::new).collect())
                .collect(),
            com_mass_f: com.chains.iter().map(|c| c.mass.to_f64()).collect(),
            com_mass: com
                .chains
                .iter()
                .map(|c| {
                    c.mass
                        .scaled_to_integer(&scale)
                        .and_then(|m| m.to_biguint())
                        .expect("scale clears every denominator")
                })
                .collect(),
            scale,
        }
    }

    /// Is the robust revenue of `p` certainly at most `best`?
    fn dominated(&self, p: &Pricing, rule: TieBreakRule, best: &Best) -> bool {
        let tol = 1e-9 * (1.0 + best.approx.abs());
        let offered: Vec<usize> = p.offered_items().map(|(i, _)| i).collect();
        let mye: f64 = offered.iter().map(|&i| self.myerson_f[i]).sum();
        if mye < best.approx - tol {
            return true;
        }
        if mye <= best.approx + tol {
            let exact: Rational = offered.iter().map(|&i| &self.myerson[i]).sum();
            if exact <= best.revenue {
                return true;
            }
        }
        let chooser = Chooser::new(p, rule);
        let winners: Vec<usize> = self.com.iter().map(|c| chooser.winner(|i| &c[i])).collect();
        let com: f64 = winners
            .iter()
            .zip(&self.com_mass_f)
            .map(|(&w, m)| m * chooser.options[w].1.approx)
            .sum();
        if com < best.approx - tol {
            return true;
        }
        if com <= best.approx + tol {
            let mut sold = vec![BigUint::ZERO; chooser.options.len()];
            for (&w, m) in winners.iter().zip(&self.com_mass) {
                sold[w] += m;
            }
            let scale = Rational::from(BigInt::from(self.scale.clone()));
            let exact: Rational = sold
                .into_iter()
                .zip(&chooser.options)
                .map(|(m, (_, price))| &price.exact * Rational::from(BigInt::from(m)))
                .sum::<Rational>()
                / scale;
            return exact <= best.revenue;
        }
        false
    }
}

#[derive(Clone, Debug)]
struct Best {
    prices: Vec<Price>,
    revenue: Rational,
    approx: f64,
}

struct Scan<'a> {
    space: &'a Space,
    bounds: &'a Bounds,
    adv: &'a Adversary,
    rule: TieBreakRule,
    best: Option<Best>,
    evaluated: u64,
    prices: Vec<Price>,
    idx: Vec<usize>,
    offered_f: f64,
}

impl<'a> Scan<'a> {
    fn new(space: &'a Space, bounds: &'a Bounds, adv: &'a Adversary, rule: TieBreakRule) -> Self {
        Scan {
            space,
            bounds,
            adv,
            rule,
            best: None,
            evaluated: 0,
            prices: Vec::new(),
            idx: Vec::new(),
            offered_f: 0.0,
        }
    }

    /// Enumerates everything, or only the branch with item 0 at grid index `first`.
    fn run_from(&mut self, i: usize, first: Option<usize>) {
        let mut distinct = Vec::new();
        self.go(i, first, &mut distinct);
    }

    fn go(&mut self, i: usize, first: Option<usize>, distinct: &mut Vec<Rational>) {
        let n = self.space.grid.len();
        if i == n {
            self.leaf();
            return;
        }
        if let Some(b) = &self.best {
            // even offering every remaining item cannot beat the incumbent
            let cap = self.offered_f + self.bounds.suffix_f[i];
            if cap < b.approx - 1e-9 * (1.0 + b.approx.abs()) {
                return;
            }
        }
        let space = self.space;
        for k in 0..space.grid[i].len() {
            if i == 0 && first.is_some_and(|f| f != k) {
                continue;
            }
            let refs: Vec<&Rational> = distinct.iter().collect();
            if !space.admissible(i, k, &self.idx, &refs) {
                continue;
            }
            let price = &space.grid[i][k];
            let pushed = match price {
                Price::Offered(c) if !distinct.contains(c) => {
                    distinct.push(c.clone());
                    true
                }
                _ => false,
            };
            let mye = if price.is_offered() { self.bounds.myerson_f[i] } else { 0.0 };
            self.offered_f += mye;
            self.prices.push(price.clone());
            self.idx.push(k);
            self.go(i + 1, first, distinct);
            self.idx.pop();
            self.prices.pop();
            self.offered_f -= mye;
            if pushed {
                distinct.pop();
            }
        }
    }

    fn leaf(&mut self) {
        let p = Pricing::new(self.prices.clone());
        if let Some(b) = &self.best {
            if self.bounds.dominated(&p, self.rule, b) {
                return;
            }
        }
        self.evaluated += 1;
        let revenue = self.adv.robust_revenue(&p, self.rule).expect("grid pricings match the instance");
        if self.best.as_ref().is_none_or(|b| revenue > b.revenue) {
            self.best = Some(Best {
                approx: revenue.to_f64(),
                prices: p.prices,
                revenue,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn unif(vals: &[i64]) -> Marginal {
        Marginal::uniform_multiset(vals.iter().map(|&v| rat(v, 1))).unwrap()
    }

    const HIGH: TieBreakRule = TieBreakRule::HigherPriceFirst;

    #[test]
    fn myerson_examples() {
        assert_eq!(myerson(&unif(&[1, 2])), (rat(1, 1), rat(1, 1)));
        assert_eq!(myerson(&unif(&[5])), (rat(5, 1), rat(5, 1)));
        assert_eq!(myerson(&unif(&[1, 10])), (rat(10, 1), rat(5, 1)));
    }

    #[test]
    fn max_median_examples() {
        let inst = Instance::from_marginals([unif(&[2]), unif(&[5]), unif(&[3])]).unwrap();
        assert_eq!(
            max_median_single_price(&inst),
            Pricing::new(vec![Price::NotOffered, Price::Offered(rat(5, 1)), Price::NotOffered])
        );
        let twins = Instance::from_marginals([unif(&[1, 4]), unif(&[1, 4])]).unwrap();
        assert_eq!(max_median_single_price(&twins), Pricing::single(2, 0, rat(1, 1)));
    }

    #[test]
    fn mhr_factor_values() {
        let at_half = mhr_factor(&rat(1, 2)).unwrap();
        assert!((at_half - (2.0 + 1.0 / 2f64.ln())).abs() < 1e-12);
        assert!((at_half - 3.4427).abs() < 5e-5);
        let q = mhr_optimal_quantile();
        assert!((q - 0.5051).abs() < 1e-4);
        let best = 1.0 / (1.0 - q) - 1.0 / (1.0 - q).ln();
        assert!((best - 3.4423).abs() < 5e-5);
        assert!(best < at_half);
        assert!(mhr_factor(&rat(999_999, 1_000_000)).unwrap() > 1e5);
        assert!(mhr_factor(&rat(0, 1)).is_err());
        assert!(mhr_factor(&rat(1, 1)).is_err());
    }

    #[test]
    fn welfare_examples() {
        let ident = Instance::from_marginals([unif(&[1, 2]), unif(&[1, 2])]).unwrap();
        assert_eq!(comonotonic_welfare(&ident), rat(3, 2));
        let ab = Instance::from_marginals([unif(&[1, 3]), unif(&[2, 4])]).unwrap();
        assert_eq!(comonotonic_welfare(&ab), rat(3, 1));
        let one = Instance::from_marginals([unif(&[1, 4, 7])]).unwrap();
        assert_eq!(comonotonic_welfare(&one), rat(4, 1));
    }

    #[test]
    fn half_threshold_examples() {
        let t = [rat(4, 1), rat(8, 1), rat(16, 1)];
        assert_eq!(
            half_threshold_pricing(&t, &[0, 2]).unwrap(),
            Pricing::new(vec![Price::Offered(rat(2, 1)), Price::NotOffered, Price::Offered(rat(8, 1))])
        );
        assert_eq!(half_threshold_pricing(&t, &[]).unwrap(), Pricing::none_offered(3));
        assert_eq!(
            half_threshold_pricing(&t, &[0, 1, 2]).unwrap(),
            Pricing::offered([rat(2, 1), rat(4, 1), rat(8, 1)])
        );
        assert!(half_threshold_pricing(&t, &[3]).is_err());
    }

    #[test]
    fn myerson_sum_examples() {
        let inst = Instance::from_marginals([unif(&[1, 2]), unif(&[5])]).unwrap();
        assert_eq!(myerson_sum_upper_bound(&inst, &Pricing::none_offered(2)), rat(0, 1));
        assert_eq!(myerson_sum_upper_bound(&inst, &Pricing::single(2, 0, rat(1, 1))), rat(1, 1));
    }

    #[test]
    fn report_examples() {
        let inst = Instance::from_marginals([unif(&[1, 10]), unif(&[3])]).unwrap();
        let r = robust_revenue(&inst, &Pricing::single(2, 0, rat(10, 1)), HIGH).unwrap();
        assert_eq!(r.robust_revenue, rat(5, 1));
        assert_eq!(r.myerson_sum_bound, rat(5, 1));

        let ident = Instance::from_marginals([unif(&[1, 2]), unif(&[1, 2])]).unwrap();
        let r = robust_revenue(&ident, &Pricing::offered([rat(1, 1), rat(1, 1)]), HIGH).unwrap();
        assert_eq!(r.robust_revenue, rat(1, 1));
        assert!(r.robust_revenue <= r.comonotonic_revenue);
    }

    #[test]
    fn search_examples() {
        let ident = Instance::from_marginals([unif(&[1, 2]), unif(&[1, 2])]).unwrap();
        let out = search_maxmin(&ident, &SearchOptions::default()).unwrap();
        assert_eq!(out.best.robust_revenue, rat(1, 1));
        assert_eq!(
            robust_revenue(&ident, &Pricing::single(2, 0, rat(1, 1)), HIGH).unwrap().robust_revenue,
            rat(1, 1)
        );

        let fives = Instance::from_marginals([unif(&[5]), unif(&[5])]).unwrap();
        let opts = SearchOptions {
            grid: CandidateGrid::Shared(vec![rat(5, 1)]),
            ..SearchOptions::default()
        };
        let out = search_maxmin(&fives, &opts).unwrap();
        assert_eq!(out.best.pricing, Pricing::offered([rat(5, 1), rat(5, 1)]));
        assert_eq!(out.best.robust_revenue, rat(5, 1));
    }

    #[test]
    fn search_respects_budget_and_distinct_cap() {
        let inst = Instance::from_marginals([unif(&[1, 3]), unif(&[2, 4]), unif(&[1, 5])]).unwrap();
        let tight = SearchOptions {
            budget: 10,
            ..SearchOptions::default()
        };
        assert!(matches!(search_maxmin(&inst, &tight), Err(Error::BudgetExceeded { .. })));
        let one = SearchOptions {
            max_distinct: Some(1),
            ..SearchOptions::default()
        };
        let out = search_maxmin(&inst, &one).unwrap();
        assert!(out.best.pricing.distinct_prices() <= 1);
    }

    #[test]
    fn pruned_search_matches_plain_enumeration() {
        let inst = Instance::from_marginals([unif(&[1, 3, 6]), unif(&[2, 4, 4]), unif(&[1, 2, 7])]).unwrap();
        let out = search_maxmin(&inst, &SearchOptions::default()).unwrap();
        let adv = Adversary::new(&inst);
        let space = Space::new(&inst, &SearchOptions::default()).unwrap();
        let mut best: Option<(Rational, Pricing)> = None;
        for a in &space.grid[0] {
            for b in &space.grid[1] {
                for c in &space.grid[2] {
                    let p = Pricing::new(vec![a.clone(), b.clone(), c.clone()]);
                    let r = adv.robust_revenue(&p, HIGH).unwrap();
                    if best.as_ref().is_none_or(|(br, _)| r > *br) {
                        best = Some((r, p));
                    }
                }
            }
        }
        let (r, p) = best.unwrap();
        assert_eq!(out.best.robust_revenue, r);
        assert_eq!(out.best.pricing, p);
        assert!(out.evaluated < out.visited);

        let par = search_maxmin(&inst, &SearchOptions { jobs: 3, ..SearchOptions::default() }).unwrap();
        assert_eq!(par.best, out.best);
    }

    #[test]
    fn interchangeable_items_are_enumerated_once() {
        let inst = Instance::from_marginals([unif(&[1, 3, 6]), unif(&[1, 3, 6]), unif(&[2, 5])]).unwrap();
        let out = search_maxmin(&inst, &SearchOptions::default()).unwrap();
        let adv = Adversary::new(&inst);
        let space = Space::new(&inst, &SearchOptions::default()).unwrap();
        assert_eq!(space.twin, vec![None, Some(0), None]);
        let mut best = Rational::zero();
        for a in &space.grid[0] {
            for b in &space.grid[1] {
                for c in &space.grid[2] {
                    let p = Pricing::new(vec![a.clone(), b.clone(), c.clone()]);
                    best = std::cmp::max(best, adv.robust_revenue(&p, HIGH).unwrap());
                }
            }
        }
        assert_eq!(out.best.robust_revenue, best);
    }
}
