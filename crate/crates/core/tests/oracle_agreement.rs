use maxmin::oracle::{max_prefix_sale_probs, min_revenue_bruteforce, OracleLimits};
use maxmin::{best_response, Instance, Marginal, Price, Pricing, Rational, TieBreakRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng, n: usize, d: usize) -> Instance {
    let marginals = (0..n).map(|_| {
        Marginal::uniform_multiset((0..d).map(|_| Rational::from(rng.gen_range(1..=10i64)))).unwrap()
    });
    Instance::from_marginals(marginals).unwrap()
}

fn random_pricing(rng: &mut ChaCha8Rng, n: usize) -> Pricing {
    Pricing::new(
        (0..n)
            .map(|_| {
                if rng.gen_bool(0.1) {
                    Price::NotOffered
                } else if rng.gen_bool(0.5) {
                    Price::Offered(Rational::from(rng.gen_range(0..=10i64)))
                } else {
                    Price::Offered(Rational::new(rng.gen_range(0..=40i64), rng.gen_range(1..=4i64)))
                }
            })
            .collect(),
    )
}

#[test]
fn random_instances_match_bruteforce() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..400 {
        let n = rng.gen_range(2..=3);
        let d = rng.gen_range(2..=4);
        let inst = random_instance(&mut rng, n, d);
        let p = random_pricing(&mut rng, n);
        for rule in [TieBreakRule::HigherPriceFirst, TieBreakRule::LowerPriceFirst] {
            let br = best_response(&inst, &p, rule).unwrap();
            br.coupling.check_compatible(&inst).unwrap();
            let (min, _) = min_revenue_bruteforce(&inst, &p, rule).unwrap();
            assert_eq!(br.revenue, min, "{inst:?} {p} {rule}");
            let prefixes = max_prefix_sale_probs(&inst, &p, rule, OracleLimits::default()).unwrap();
            assert_eq!(br.prefix_sale_probs(), prefixes, "{inst:?} {p} {rule}");
        }
    }
}
