//! Fixed workloads shared by the benchmarks.

use maxmin::{Instance, Marginal, Pricing, Rational};

/// `n` items, each uniform over `d` values spread by a fixed stride.
pub fn spread_instance(n: usize, d: usize) -> Instance {
    let marginals = (0..n).map(|i| {
        let values = (0..d).map(|k| Rational::from(((k * 37 + i * 11) % (3 * d) + 1) as u64));
        Marginal::uniform_multiset(values).expect("values are positive")
    });
    Instance::from_marginals(marginals.collect::<Vec<_>>()).expect("n > 0")
}

/// Item `i` priced at `i + 2`.
pub fn staircase_pricing(n: usize) -> Pricing {
    Pricing::offered((0..n).map(|i| Rational::from(i as u64 + 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_valid() {
        let inst = spread_instance(3, 4);
        staircase_pricing(3).check_against(&inst).unwrap();
    }
}
