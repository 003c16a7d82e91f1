//! The adversary: worst-case couplings for a fixed pricing.

mod coupling;
pub(crate) mod engine;
pub(crate) mod mass;
mod sift_lift;

use num_bigint::BigUint;

use self::engine::{run, RawChain, Run, Table};
use self::mass::{fits_u128, to_rational, MassInt};
use crate::choice::{ItemRef, TieBreakRule};
use crate::error::Result;
use crate::model::{Instance, Pricing};
use crate::rational::Rational;

pub use self::coupling::{comonotonic_coupling, revenue_of_coupling, BestResponse, Chain, Coupling};
pub(crate) use self::coupling::Chooser;
pub use self::sift_lift::{sift_lift, PartialChain, Root};

/// Worst-case coupling and its revenue for pricing `p`.
pub fn best_response(inst: &Instance, p: &Pricing, rule: TieBreakRule) -> Result<BestResponse> {
    Adversary::new(inst).best_response(p, rule)
}

enum Tables {
    Narrow(Table<u128>),
    Wide(Table<BigUint>),
}

/// An instance prepared for repeated best responses.
pub struct Adversary {
    inst: Instance,
    tables: Tables,
}

impl Adversary {
    pub fn new(inst: &Instance) -> Self {
        let scale = Rational::lcm_denoms(inst.marginals().flat_map(|m| m.atoms().iter().map(|a| &a.prob)));
        let tables = if fits_u128(&scale) {
            Tables::Narrow(Table::new(inst, &scale))
        } else {
            Tables::Wide(Table::new(inst, &scale))
        };
        Adversary {
            inst: inst.clone(),
            tables,
        }
    }

    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    /// Common denominator of every probability in the instance.
    pub fn scale(&self) -> &BigUint {
        match &self.tables {
            Tables::Narrow(t) => &t.scale,
            Tables::Wide(t) => &t.scale,
        }
    }

    /// Robust revenue of `p` without materializing the coupling.
    pub fn robust_revenue(&self, p: &Pricing, rule: TieBreakRule) -> Result<Rational> {
        p.check_against(&self.inst)?;
        Ok(match &self.tables {
            Tables::Narrow(t) => run(t, p, rule).revenue(&t.scale),
            Tables::Wide(t) => run(t, p, rule).revenue(&t.scale),
        })
    }

    pub fn best_response(&self, p: &Pricing, rule: TieBreakRule) -> Result<BestResponse> {
        p.check_against(&self.inst)?;
        Ok(match &self.tables {
            Tables::Narrow(t) => assemble(t, run(t, p, rule)),
            Tables::Wide(t) => assemble(t, run(t, p, rule)),
        })
    }
}

/// Expresses a run over original items, coupling the items that are not
/// offered by a lowest-first sweep.
fn assemble<M: MassInt>(table: &Table<M>, r: Run<'_, M>) -> BestResponse {
    let n = table.columns.len();
    let scale = &table.scale;
    let mut revenue = Rational::zero();
    let mut sale_prob = vec![Rational::zero(); n];
    let mut no_sale_prob = Rational::zero();
    for (slot, m) in r.slots.iter().zip(&r.sold) {
        let prob = to_rational(m, scale);
        revenue += &slot.price.exact * &prob;
        match slot.item {
            ItemRef::Item(i) => sale_prob[i] = prob,
            ItemRef::Null => no_sale_prob = prob,
        }
    }
    let order: Vec<ItemRef> = r.slots.iter().map(|s| s.item).collect();

    let mut slot_of = vec![None; n];
    for (k, s) in r.slots.iter().enumerate() {
        if let ItemRef::Item(i) = s.item {
            slot_of[i] = Some(k);
        }
    }
    let mut chains: Vec<RawChain<M>> = r
        .chains
        .into_iter()
        .map(|c| RawChain {
            nodes: slot_of.iter().map(|s| s.map_or(u32::MAX, |k| c.nodes[k])).collect(),
            mass: c.mass,
        })
        .collect();
    for (i, slot) in slot_of.iter().enumerate() {
        if slot.is_none() {
            chains = fill_column(chains, &table.columns[i].mass, i);
        }
    }
    let chains = chains
        .into_iter()
        .map(|c| Chain {
            mass: to_rational(&c.mass, scale),
            values: c
                .nodes
                .iter()
                .enumerate()
                .map(|(i, &k)| table.columns[i].values[k as usize].exact.clone())
                .collect(),
        })
        .collect();
    BestResponse {
        coupling: Coupling::new(chains).merged(),
        revenue,
        sale_prob,
        no_sale_prob,
        order,
    }
}

fn fill_column<M: MassInt>(chains: Vec<RawChain<M>>, mass: &[M], item: usize) -> Vec<RawChain<M>> {
    let mut left = mass.to_vec();
    let mut ptr = left.len();
    let mut out = Vec::with_capacity(chains.len() + ptr);
    for c in chains {
        let mut need = c.mass;
        while !need.is_zero() {
            while left[ptr - 1].is_zero() {
                ptr -= 1;
            }
            let take = if need <= left[ptr - 1] { need.clone() } else { left[ptr - 1].clone() };
            left[ptr - 1].sub_assign(&take);
            need.sub_assign(&take);
            let mut nodes = c.nodes.clone();
            nodes[item] = (ptr - 1) as u32;
            out.push(RawChain { nodes, mass: take });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Marginal;
    use crate::rational::rat;

    fn unif(vals: &[i64]) -> Marginal {
        Marginal::uniform_multiset(vals.iter().map(|&v| rat(v, 1))).unwrap()
    }

    const HIGH: TieBreakRule = TieBreakRule::HigherPriceFirst;
    const LOW: TieBreakRule = TieBreakRule::LowerPriceFirst;

    #[test]
    fn two_item_cannibalization() {
        let inst = Instance::from_marginals([unif(&[1, 3]), unif(&[2, 4])]).unwrap();
        let p = Pricing::offered([rat(1, 1), rat(2, 1)]);
        let br = best_response(&inst, &p, HIGH).unwrap();
        assert_eq!(br.revenue, rat(3, 2));
        br.coupling.check_compatible(&inst).unwrap();
        let again = revenue_of_coupling(&inst, &p, &br.coupling, HIGH).unwrap();
        assert_eq!(again.revenue, br.revenue);
    }

    #[test]
    fn identical_pair_sells_cheap_item() {
        let inst = Instance::from_marginals([unif(&[1, 2]), unif(&[1, 2])]).unwrap();
        let br = best_response(&inst, &Pricing::offered([rat(1, 1), rat(2, 1)]), HIGH).unwrap();
        assert_eq!(br.revenue, rat(1, 1));
        assert_eq!(br.sale_prob, vec![rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn single_offer_at_min_value_always_sells() {
        let inst = Instance::from_marginals([unif(&[3, 5, 9]), unif(&[1, 2])]).unwrap();
        let p = Pricing::single(2, 0, rat(3, 1));
        let br = best_response(&inst, &p, HIGH).unwrap();
        assert_eq!(br.revenue, rat(3, 1));
        br.coupling.check_compatible(&inst).unwrap();
        // zero utility at the bottom value goes unsold
        assert_eq!(best_response(&inst, &p, LOW).unwrap().revenue, rat(2, 1));
    }

    #[test]
    fn nothing_offered_earns_nothing() {
        let inst = Instance::from_marginals([unif(&[1, 2]), unif(&[3])]).unwrap();
        let br = best_response(&inst, &Pricing::none_offered(2), HIGH).unwrap();
        assert_eq!(br.revenue, rat(0, 1));
        assert_eq!(br.no_sale_prob, rat(1, 1));
        assert_eq!(br.order, vec![ItemRef::Null]);
        br.coupling.check_compatible(&inst).unwrap();
    }

    #[test]
    fn low_price_rule_abstains_at_zero_utility() {
        let inst = Instance::from_marginals([unif(&[2])]).unwrap();
        let p = Pricing::offered([rat(2, 1)]);
        assert_eq!(best_response(&inst, &p, HIGH).unwrap().revenue, rat(2, 1));
        assert_eq!(best_response(&inst, &p, LOW).unwrap().revenue, rat(0, 1));
    }

    #[test]
    fn nonuniform_masses_split_on_demand() {
        let a = Marginal::new([(rat(0, 1), rat(1, 3)), (rat(4, 1), rat(2, 3))]).unwrap();
        let b = Marginal::new([(rat(1, 1), rat(1, 4)), (rat(6, 1), rat(3, 4))]).unwrap();
        let inst = Instance::from_marginals([a, b]).unwrap();
        let p = Pricing::offered([rat(1, 1), rat(3, 1)]);
        let br = best_response(&inst, &p, HIGH).unwrap();
        br.coupling.check_compatible(&inst).unwrap();
        let eval = revenue_of_coupling(&inst, &p, &br.coupling, HIGH).unwrap();
        assert_eq!(eval.revenue, br.revenue);
        assert_eq!(eval.sale_prob, br.sale_prob);
        assert!(br.revenue <= revenue_of_coupling(&inst, &p, &comonotonic_coupling(&inst), HIGH).unwrap().revenue);
    }

    #[test]
    fn fast_revenue_matches_full_response() {
        let inst = Instance::from_marginals([unif(&[1, 3, 7]), unif(&[2, 4, 5]), unif(&[1, 6, 6])]).unwrap();
        let adv = Adversary::new(&inst);
        let p = Pricing::offered([rat(1, 1), rat(3, 1), rat(5, 1)]);
        for rule in [HIGH, LOW] {
            assert_eq!(adv.robust_revenue(&p, rule).unwrap(), adv.best_response(&p, rule).unwrap().revenue);
        }
    }

    #[test]
    fn wide_masses_agree_with_narrow() {
        let tiny = Rational::pow2(-130);
        let a = Marginal::new([(rat(0, 1), Rational::one() - &tiny), (Rational::pow2(130), tiny)]).unwrap();
        let inst = Instance::from_marginals([a, unif(&[1, 2])]).unwrap();
        let adv = Adversary::new(&inst);
        assert!(matches!(adv.tables, Tables::Wide(_)));
        let p = Pricing::offered([Rational::pow2(129), rat(1, 1)]);
        let br = adv.best_response(&p, HIGH).unwrap();
        br.coupling.check_compatible(&inst).unwrap();
        assert_eq!(revenue_of_coupling(&inst, &p, &br.coupling, HIGH).unwrap().revenue, br.revenue);
    }
}
