use maxmin::pricing::myerson;
use maxmin::{
    gen_mis, gen_truncated_eqrev, is_pricing, mis_lower_bound, mis_upper_bound, Adversary, Graph, Price, Pricing,
    Rational, TieBreakRule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graphs(n: usize) -> Vec<Graph> {
    vec![Graph::empty(n), Graph::path(n), Graph::cycle(n), Graph::complete(n)]
}

#[test]
fn independent_set_pricing_meets_lower_bound_at_nine() {
    for g in graphs(9) {
        let inst = gen_mis(&g).unwrap();
        let adv = Adversary::new(&inst);
        for s in g.independent_sets().into_iter().filter(|s| s.len() >= 2).take(40) {
            let br = adv.best_response(&is_pricing(&g, &s).unwrap(), TieBreakRule::default()).unwrap();
            br.coupling.check_compatible(&inst).unwrap();
            assert!(br.revenue >= mis_lower_bound(s.len(), 9).unwrap(), "{g} {s:?}");
        }
    }
}

#[test]
fn no_pricing_beats_upper_bound_at_nine() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for g in graphs(9) {
        let inst = gen_mis(&g).unwrap();
        let adv = Adversary::new(&inst);
        let ub = mis_upper_bound(g.max_independent_set_size(), 9).unwrap();
        let mut pricings: Vec<Pricing> = (0u32..1 << 9)
            .map(|mask| {
                let set: Vec<usize> = (1..=9).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                is_pricing(&g, &set).unwrap()
            })
            .collect();
        for _ in 0..200 {
            pricings.push(Pricing::new(
                inst.marginals()
                    .map(|m| {
                        if rng.gen_bool(0.3) {
                            Price::NotOffered
                        } else {
                            let vs: Vec<&Rational> = m.values().collect();
                            Price::Offered(vs[rng.gen_range(0..vs.len())].clone())
                        }
                    })
                    .collect(),
            ));
        }
        for p in pricings {
            let r = adv.robust_revenue(&p, TieBreakRule::default()).unwrap();
            assert!(r <= ub, "{g} {p}: {r} > {ub}");
        }
    }
}

#[test]
fn truncated_eqrev_items_have_unit_monopoly_revenue() {
    let (inst, t) = gen_truncated_eqrev(5, 48).unwrap();
    for (m, t) in inst.marginals().zip(&t) {
        assert_eq!(m.max_value(), t);
        let (_, rev) = myerson(m);
        assert_eq!(rev, Rational::one());
        for a in m.atoms() {
            assert!(&a.value * m.survival(&a.value) <= Rational::one());
        }
    }
}
