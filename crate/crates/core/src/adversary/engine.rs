//! Water-filling best response over scaled integer masses.

use std::cmp::Ordering;

use num_bigint::BigUint;

use super::mass::{to_mass, to_rational, MassInt};
use crate::choice::{cmp_utility, processing_order, ItemRef, Num, TieBreakRule};
use crate::model::{Instance, Pricing};
use crate::rational::Rational;

/// One item's support, values descending.
pub(crate) struct Column<M> {
    pub values: Vec<Num>,
    pub mass: Vec<M>,
}

impl<M: MassInt> Column<M> {
    fn len(&self) -> usize {
        self.values.len()
    }
}

pub(crate) struct Table<M> {
    pub columns: Vec<Column<M>>,
    pub null: Column<M>,
    pub scale: BigUint,
}

impl<M: MassInt> Table<M> {
    pub fn new(inst: &Instance, scale: &BigUint) -> Self {
        let columns = inst
            .marginals()
            .map(|m| Column {
                values: m.atoms().iter().rev().map(|a| Num::new(a.value.clone())).collect(),
                mass: m.atoms().iter().rev().map(|a| to_mass(&a.prob, scale)).collect(),
            })
            .collect();
        let null = Column {
            values: vec![Num::new(Rational::zero())],
            mass: vec![to_mass(&Rational::one(), scale)],
        };
        Table {
            columns,
            null,
            scale: scale.clone(),
        }
    }

    pub fn column(&self, item: ItemRef) -> &Column<M> {
        match item {
            ItemRef::Item(i) => &self.columns[i],
            ItemRef::Null => &self.null,
        }
    }
}

pub(crate) struct Slot<'a, M> {
    pub item: ItemRef,
    pub price: Num,
    pub col: &'a Column<M>,
}

#[derive(Clone, Debug)]
pub(crate) struct RawChain<M> {
    /// Node index per slot.
    pub nodes: Vec<u32>,
    pub mass: M,
}

pub(crate) struct Run<'a, M> {
    pub slots: Vec<Slot<'a, M>>,
    pub chains: Vec<RawChain<M>>,
    /// Mass purchased per slot.
    pub sold: Vec<M>,
}

impl<M: MassInt> Run<'_, M> {
    pub fn revenue(&self, scale: &BigUint) -> Rational {
        self.slots
            .iter()
            .zip(&self.sold)
            .filter(|(s, m)| !m.is_zero() && !s.price.exact.is_zero())
            .map(|(s, m)| &s.price.exact * to_rational(m, scale))
            .sum()
    }
}

struct Ctx<'a, 'b, M> {
    slots: &'b [Slot<'a, M>],
    /// `pref[a * n + b]`: at equal utility the buyer takes slot `a` over slot `b`.
    pref: Vec<bool>,
}

impl<M: MassInt> Ctx<'_, '_, M> {
    /// Node `(a, ka)` is strictly preferred to node `(b, kb)`.
    fn beats(&self, a: usize, ka: usize, b: usize, kb: usize) -> bool {
        let (sa, sb) = (&self.slots[a], &self.slots[b]);
        match cmp_utility(&sa.col.values[ka], &sa.price, &sb.col.values[kb], &sb.price) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.pref[a * self.slots.len() + b],
        }
    }

    fn winner(&self, nodes: &[u32]) -> usize {
        let mut best = 0;
        for a in 1..self.slots.len() {
            if self.beats(a, nodes[a] as usize, best, nodes[best] as usize) {
                best = a;
            }
        }
        best
    }
}

fn min_mass<M: MassInt>(a: &M, b: &M) -> M {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

fn merge<M: MassInt>(mut chains: Vec<RawChain<M>>) -> Vec<RawChain<M>> {
    chains.sort_by(|a, b| a.nodes.cmp(&b.nodes));
    let mut out: Vec<RawChain<M>> = Vec::with_capacity(chains.len());
    for c in chains {
        match out.last_mut() {
            Some(last) if last.nodes == c.nodes => last.mass.add_assign(&c.mass),
            _ => out.push(c),
        }
    }
    out
}

pub(crate) fn run<'a, M: MassInt>(table: &'a Table<M>, p: &Pricing, rule: TieBreakRule) -> Run<'a, M> {
    let mut options: Vec<(ItemRef, Rational)> = p
        .offered_items()
        .map(|(i, price)| (ItemRef::Item(i), price.clone()))
        .collect();
    options.push((ItemRef::Null, Rational::zero()));
    let slots: Vec<Slot<'a, M>> = processing_order(&options, rule)
        .into_iter()
        .map(|k| {
            let (item, price) = &options[k];
            Slot {
                item: *item,
                price: Num::new(price.clone()),
                col: table.column(*item),
            }
        })
        .collect();
    let n = slots.len();
    let mut pref = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                pref[a * n + b] =
                    rule.prefers(slots[a].item, &slots[a].price.exact, slots[b].item, &slots[b].price.exact);
            }
        }
    }
    let ctx = Ctx { slots: &slots, pref };
    let mut rem: Vec<Vec<M>> = slots.iter().map(|s| s.col.mass.clone()).collect();
    let mut chains: Vec<RawChain<M>> = Vec::new();

    for i in 0..n {
        if i > 0 {
            chains = transition(&ctx, &mut rem, chains, i);
        }
        maximize(&ctx, &mut rem, &mut chains, i);
    }
    sweep_leftover(&mut rem, &mut chains);
    let chains = merge(chains);

    let mut sold = vec![M::zero(); n];
    for c in &chains {
        sold[ctx.winner(&c.nodes)].add_assign(&c.mass);
    }
    Run { slots, chains, sold }
}

/// Builds as many chains dominated by slot `i` as the uncoupled mass allows.
fn maximize<M: MassInt>(ctx: &Ctx<'_, '_, M>, rem: &mut [Vec<M>], chains: &mut Vec<RawChain<M>>, i: usize) {
    let n = ctx.slots.len();
    let lens: Vec<usize> = ctx.slots.iter().map(|s| s.col.len()).collect();
    let mut hi = vec![0usize; n];
    let mut lo = lens.clone();
    let mut nodes = vec![0u32; n];
    'outer: for k in 0..lens[i] {
        while !rem[i][k].is_zero() {
            for j in i + 1..n {
                while hi[j] < lens[j] && (rem[j][hi[j]].is_zero() || !ctx.beats(i, k, j, hi[j])) {
                    hi[j] += 1;
                }
                if hi[j] == lens[j] {
                    break 'outer;
                }
                nodes[j] = hi[j] as u32;
            }
            for j in 0..i {
                while rem[j][lo[j] - 1].is_zero() {
                    lo[j] -= 1;
                }
                nodes[j] = (lo[j] - 1) as u32;
            }
            nodes[i] = k as u32;
            let mut mass = rem[i][k].clone();
            for (j, &node) in nodes.iter().enumerate() {
                mass = min_mass(&mass, &rem[j][node as usize]);
            }
            for (j, &node) in nodes.iter().enumerate() {
                rem[j][node as usize].sub_assign(&mass);
            }
            chains.push(RawChain {
                nodes: nodes.clone(),
                mass,
            });
        }
    }
}

/// Recouples every chain to the lowest uncoupled mass of slot `t`, splitting on demand.
fn transition<M: MassInt>(
    ctx: &Ctx<'_, '_, M>,
    rem: &mut [Vec<M>],
    mut chains: Vec<RawChain<M>>,
    t: usize,
) -> Vec<RawChain<M>> {
    if chains.is_empty() {
        return chains;
    }
    for c in &chains {
        rem[t][c.nodes[t] as usize].add_assign(&c.mass);
    }
    chains.sort_by(|a, b| b.nodes[t].cmp(&a.nodes[t]).then_with(|| a.nodes.cmp(&b.nodes)));
    let mut ptr = ctx.slots[t].col.len();
    let mut out = Vec::with_capacity(chains.len() + ptr);
    for c in chains {
        let mut need = c.mass;
        while !need.is_zero() {
            while rem[t][ptr - 1].is_zero() {
                ptr -= 1;
            }
            let node = ptr - 1;
            let take = min_mass(&need, &rem[t][node]);
            rem[t][node].sub_assign(&take);
            need.sub_assign(&take);
            let mut nodes = c.nodes.clone();
            nodes[t] = node as u32;
            out.push(RawChain { nodes, mass: take });
        }
    }
    merge(out)
}

/// Couples whatever is still uncoupled, lowest nodes first.
fn sweep_leftover<M: MassInt>(rem: &mut [Vec<M>], chains: &mut Vec<RawChain<M>>) {
    let mut ptr: Vec<usize> = rem.iter().map(|r| r.len()).collect();
    loop {
        let mut nodes = Vec::with_capacity(rem.len());
        for (j, r) in rem.iter().enumerate() {
            while ptr[j] > 0 && r[ptr[j] - 1].is_zero() {
                ptr[j] -= 1;
            }
            if ptr[j] == 0 {
                return;
            }
            nodes.push((ptr[j] - 1) as u32);
        }
        let mut mass = rem[0][nodes[0] as usize].clone();
        for (j, &node) in nodes.iter().enumerate() {
            mass = min_mass(&mass, &rem[j][node as usize]);
        }
        for (j, &node) in nodes.iter().enumerate() {
            rem[j][node as usize].sub_assign(&mass);
        }
        chains.push(RawChain { nodes, mass });
    }
}
