use domclose::io::{self, SetSystem};
use domclose::properties;
use domclose::search::{self, hunt, random_dominating, SearchConfig, CLAIMS};
use proptest::prelude::*;
use rayon::prelude::*;

#[test]
fn random_dominating_operators_are_dominating() {
    for n in 3..=8 {
        let bad = (0..100_000u64).into_par_iter().find_first(|&seed| {
            let op = random_dominating(seed, n).unwrap();
            !(properties::is_expansive(&op).unwrap().holds
                && properties::is_monotone(&op).unwrap().holds)
        });
        assert_eq!(bad, None, "n={n}");
    }
}

#[test]
fn identical_configs_serialize_identically() {
    for claim in ["p.CLO.REG", "p.IC4", "p.GC3", "matroid-pushout"] {
        let config = SearchConfig::new(claim, 11, 3, 400);
        let a = hunt(&config, 1).unwrap().to_json().to_string();
        let b = hunt(&config, 3).unwrap().to_json().to_string();
        assert_eq!(a, b, "{claim}");
    }
}

#[test]
fn every_counterexample_reloads_and_still_fails() {
    for claim in CLAIMS {
        let result = hunt(&SearchConfig::new(claim.id, 5, 3.min(claim.max_n), 300), 0).unwrap();
        if let Some(c) = &result.counterexample {
            assert!(result.revalidate().unwrap(), "{}", claim.id);
            let reloaded = io::parse_system(&c.instance.to_string()).unwrap();
            assert!(claim.check(&reloaded).unwrap().is_failure());
        }
    }
}

#[test]
fn established_claims_survive_a_hunt() {
    for id in [
        "p.RC/extended",
        "p.CLO.REG/extended",
        "p.REG.GEN/extended",
        "eq1-eq2-agreement",
        "p.C.REG",
        "p.TC",
        "prop.CC3",
        "p.FGEN1",
        "p.FGEN2",
        "p.EX1",
        "c.EX2",
        "c.EX3",
        "p.MONOTONE",
        "p.COP",
        "p.IC4/closure",
        "p.IC2/closure",
        "p.GC1",
        "p.GC3",
        "c.GC4",
        "p.GC5",
        "p.ANTIMATROID",
    ] {
        for n in [3, 5] {
            let result = hunt(&SearchConfig::new(id, 1, n, 500), 0).unwrap();
            assert_eq!(result.verdict(), "no-counterexample-found", "{id} n={n}");
            assert!(result.applicable > 0, "{id} n={n} never applied");
        }
    }
    let gc2 = hunt(&SearchConfig::new("p.GC2", 1, 3, 200), 0).unwrap();
    assert!(gc2.counterexample.is_none() && gc2.applicable > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_systems_round_trip(seed in any::<u64>(), index in 0u64..1000, n in 1usize..=4) {
        for claim in CLAIMS {
            let mut rng = search::candidate_rng(seed, index);
            let system = claim.generate(&mut rng, n.min(claim.max_n)).unwrap();
            let text = system.to_json().to_string();
            let back: SetSystem = io::parse_system(&text).unwrap();
            prop_assert_eq!(back.to_json().to_string(), text);
            for (a, b) in system.stages().into_iter().zip(back.stages()) {
                prop_assert!(a.operator.same_as(&b.operator).unwrap());
            }
        }
    }
}
