use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whitney_core::calculus::{int_relations_null, LinkClass};
use whitney_core::oracle::*;
use whitney_core::span::{span_member, SpanProblem, SpanVerdict};
use whitney_core::syntax::{parse_group, parse_ring, parse_tree1, ParseContext};
use whitney_core::tree::canonicalize_y;
use whitney_core::{Error, Group, T1Mode, Tree1Elem, TreeModule, Word};

fn cyclic() -> Group {
    parse_group("cyclic(x)").unwrap()
}

#[test]
fn generic_pair_orbit_has_six_elements() {
    let c = cyclic();
    let x = c.gen("x").unwrap();
    let cl = orbit_closure((x.pow(2), x.pow(-3)), &pair_system(10, true)).unwrap();
    assert!(cl.saturated && !cl.torsion);
    assert_eq!(cl.len(), 6);
    assert_eq!(cl.elements.values().filter(|&&s| s == 1).count(), 3);
}

#[test]
fn torsion_orbit() {
    let c = cyclic();
    let x = c.gen("x").unwrap();
    let one = c.identity();
    let cl = orbit_closure((x.clone(), x.clone()), &pair_system(10, true)).unwrap();
    assert!(cl.saturated && cl.torsion);
    let mut got: Vec<(Word, Word)> = cl.elements.keys().cloned().collect();
    got.sort();
    let xi = x.inv();
    let mut expect = vec![
        (x.clone(), x.clone()),
        (xi.clone(), xi.clone()),
        (xi.clone(), one.clone()),
        (one.clone(), xi.clone()),
        (x.clone(), one.clone()),
        (one.clone(), x.clone()),
    ];
    expect.sort();
    assert_eq!(got, expect);
}

#[test]
fn trivial_decorations_are_their_own_negatives() {
    let c = cyclic();
    let cl = orbit_closure((c.identity(), c.identity()), &pair_system(4, false)).unwrap();
    assert!(cl.torsion);
    assert_eq!(cl.len(), 1);
}

#[test]
fn depth_zero_rejected_and_saturation_flagged() {
    let c = cyclic();
    let x = c.gen("x").unwrap();
    assert!(matches!(pair_system(0, false).orbit_closure((x.clone(), x.pow(2))), Err(Error::Domain(_))));
    let shallow = pair_system(1, false).orbit_closure((x.clone(), x.pow(3))).unwrap();
    assert!(!shallow.saturated);
}

#[test]
fn randomized_pair_orbits() {
    let c = cyclic();
    let k = parse_group("klein(a, f)").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 50 {
        let g = if checked % 2 == 0 { &c } else { &k };
        let word = |rng: &mut ChaCha8Rng| {
            let v: Vec<(usize, i64)> =
                (0..2).map(|_| (rng.gen_range(0..g.generator_names().len()), rng.gen_range(-5..=5))).collect();
            g.normalize(&v)
        };
        let (a, b) = (word(&mut rng), word(&mut rng));
        if a.is_identity() || b.is_identity() || a == b {
            continue;
        }
        let cl = orbit_closure((a.clone(), b.clone()), &pair_system(10, true)).unwrap();
        assert!(cl.saturated && !cl.torsion);
        assert_eq!(cl.len(), 6, "({}, {})", a, b);
        let base = canonicalize_y([1, 1, 1], [g.identity(), a, b], &T1Mode::Plain).unwrap();
        for ((p, q), s) in &cl.elements {
            let y = canonicalize_y([1, 1, 1], [g.identity(), p.clone(), q.clone()], &T1Mode::Plain).unwrap();
            assert_eq!(y.tree, base.tree);
            assert_eq!(y.sign * s, base.sign);
        }
        checked += 1;
    }
}

#[test]
fn klein_rewriting() {
    // a f a^-1 -> f^-1 and f a -> a f^-1.
    let sys = klein_word_system(20);
    let cl = sys.orbit_closure(vec![(0, 1), (1, 1), (0, -1)]).unwrap();
    assert_eq!(sys.irreducible(&cl), vec![vec![(1, -1)]]);
    let cl = sys.orbit_closure(vec![(1, 1), (0, 1)]).unwrap();
    assert_eq!(sys.irreducible(&cl), vec![vec![(0, 1), (1, -1)]]);
    assert_eq!(klein_words_equal(&[(0, 1), (1, 1), (1, 1)], &[(1, -1), (1, -1), (0, 1)], 20), Some(true));
    assert_eq!(klein_words_equal(&[(0, 1), (1, 1)], &[(1, 1), (0, 1)], 20), Some(false));
}

#[test]
fn brute_span_examples() {
    let c = cyclic();
    let ctx = ParseContext::new(&c);
    let g = parse_tree1(&ctx, "(x, x^3)").unwrap();
    assert_eq!(brute_span(&g, &[g.clone()], 1).unwrap(), SpanVerdict::Witness(vec![1]));
    let many = vec![g.clone(); 7];
    assert!(matches!(brute_span(&g, &many, 1), Err(Error::TooLarge(_))));
}

#[test]
fn brute_span_recovers_random_combinations() {
    let c = cyclic();
    let ctx = ParseContext::new(&c);
    let gens: Vec<Tree1Elem> = ["(x, x^2) - (x^2, x^4)", "(1, x) + (x, x^3)", "(x^2, x^3)", "(1, x^2) - (x, x^2)"]
        .iter()
        .map(|s| parse_tree1(&ctx, s).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let d: Vec<i64> = (0..gens.len()).map(|_| rng.gen_range(-2..=2)).collect();
        let target = gens.iter().zip(&d).fold(gens[0].zero_like(), |acc, (g, c)| acc.plus(&g.scale(*c)));
        match brute_span(&target, &gens, 2).unwrap() {
            SpanVerdict::Witness(w) => {
                let back = gens.iter().zip(&w).fold(gens[0].zero_like(), |acc, (g, c)| acc.plus(&g.scale(*c)));
                assert_eq!(back, target);
            }
            v => panic!("{:?}", v),
        }
    }
}

#[test]
fn small_delta_window_is_infeasible() {
    let k = parse_group("klein(a, f)").unwrap();
    let z = LinkClass::knot(&parse_ring(&k, "f + f^3").unwrap()).unwrap();
    let f = k.gen("f").unwrap();
    let gens: Vec<Tree1Elem> = (1..=3).map(|r| int_relations_null(&z, &f.pow(r), 1, 1, 1).unwrap()).collect();
    let target = parse_tree1(&ParseContext::new(&k), "(1,f)-(f,f^2)+(1,f^3)-(f^3,f^6)").unwrap();
    assert_eq!(brute_span(&target, &gens, 3).unwrap(), SpanVerdict::Infeasible);
    let p = SpanProblem::new(target, gens).unwrap();
    assert_eq!(span_member(&p).unwrap(), SpanVerdict::Infeasible);
    assert!(cross_check(&p, 2).unwrap().is_ok());
}
