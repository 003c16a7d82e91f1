//! Sift and lift on a partial coupling of multiset utilities.
//!
//! Items are indexed from 0: item 0 and item 1 are the two roots, items
//! `2..n` are the lifted ones. Utilities are given per item, nonincreasing.

use std::cmp::Ordering;

use crate::choice::{ItemRef, TieBreakRule};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Root {
    /// Index into item 0's utilities.
    First(usize),
    /// Index into item 1's utilities.
    Second(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialChain {
    pub root: Root,
    /// Item 1 utility paired with a chain rooted at item 0.
    pub partner: Option<usize>,
    /// Indices into the utilities of items `2..n`.
    pub rest: Vec<usize>,
}

struct Order<'a> {
    utilities: &'a [Vec<Rational>],
    prices: &'a [Rational],
    rule: TieBreakRule,
}

impl Order<'_> {
    /// `u_a^x` is dominated by `u_b^y`.
    fn below(&self, a: usize, x: usize, b: usize, y: usize) -> bool {
        match self.utilities[a][x].cmp(&self.utilities[b][y]) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => {
                a != b
                    && self
                        .rule
                        .prefers(ItemRef::Item(b), &self.prices[b], ItemRef::Item(a), &self.prices[a])
            }
        }
    }
}

/// Removes the chain rooted at item 1's utility `root` and lifts every later
/// chain rooted at item 0, one at a time from the highest root down: each
/// takes the highest uncoupled utility of items `2..n` that its root still
/// dominates, and the lowest uncoupled utility of item 1.
pub fn sift_lift(
    utilities: &[Vec<Rational>],
    prices: &[Rational],
    rule: TieBreakRule,
    chains: &[PartialChain],
    root: usize,
) -> Result<Vec<PartialChain>> {
    let ord = Order { utilities, prices, rule };
    let target = chains
        .iter()
        .position(|c| c.root == Root::Second(root))
        .ok_or(Error::RootNotFound(root))?;
    let mut out: Vec<PartialChain> = chains.to_vec();
    out.remove(target);

    let n = utilities.len();
    let mut coupled: Vec<Vec<bool>> = utilities.iter().map(|u| vec![false; u.len()]).collect();
    for c in &out {
        match c.root {
            Root::First(k) => coupled[0][k] = true,
            Root::Second(k) => coupled[1][k] = true,
        }
        if let Some(k) = c.partner {
            coupled[1][k] = true;
        }
        for (i, &k) in c.rest.iter().enumerate() {
            coupled[i + 2][k] = true;
        }
    }

    let mut later: Vec<(usize, usize)> = out
        .iter()
        .enumerate()
        .filter_map(|(pos, c)| match c.root {
            Root::First(j) if ord.below(0, j, 1, root) => Some((j, pos)),
            _ => None,
        })
        .collect();
    later.sort_unstable();

    for (j, pos) in later {
        let chain = &mut out[pos];
        if let Some(k) = chain.partner {
            coupled[1][k] = false;
        }
        for (i, &k) in chain.rest.iter().enumerate() {
            coupled[i + 2][k] = false;
        }
        for i in 2..n {
            let pick = (0..utilities[i].len())
                .find(|&l| !coupled[i][l] && ord.below(i, l, 0, j))
                .unwrap_or(chain.rest[i - 2]);
            chain.rest[i - 2] = pick;
            coupled[i][pick] = true;
        }
        chain.partner = (0..utilities[1].len()).rev().find(|&l| !coupled[1][l]);
        if let Some(k) = chain.partner {
            coupled[1][k] = true;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn us(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect()
    }

    #[test]
    fn lone_target_is_removed() {
        let u = us(&[&[1, 0], &[5, 4], &[3, 2]]);
        let prices = vec![rat(0, 1); 3];
        let chains = vec![
            PartialChain { root: Root::Second(0), partner: None, rest: vec![0] },
            PartialChain { root: Root::Second(1), partner: None, rest: vec![1] },
        ];
        let out = sift_lift(&u, &prices, TieBreakRule::HigherPriceFirst, &chains, 1).unwrap();
        assert_eq!(out, chains[..1].to_vec());
    }

    #[test]
    fn freed_utility_is_lifted() {
        let u = us(&[&[4, 1], &[6, 0], &[3, 0]]);
        let prices = vec![rat(0, 1); 3];
        let chains = vec![
            PartialChain { root: Root::Second(0), partner: None, rest: vec![0] },
            PartialChain { root: Root::First(0), partner: Some(1), rest: vec![1] },
        ];
        let out = sift_lift(&u, &prices, TieBreakRule::HigherPriceFirst, &chains, 0).unwrap();
        assert_eq!(out.len(), chains.len() - 1);
        assert_eq!(out[0].rest, vec![0]);
        assert_eq!(out[0].root, Root::First(0));
    }

    #[test]
    fn missing_root_is_an_error() {
        let u = us(&[&[1], &[1], &[1]]);
        let prices = vec![rat(0, 1); 3];
        assert_eq!(
            sift_lift(&u, &prices, TieBreakRule::HigherPriceFirst, &[], 0),
            Err(Error::RootNotFound(0))
        );
    }
}
