use proptest::prelude::*;
use whitney_core::oracle::{pair_system, triple_system};
use whitney_core::syntax::{parse_group, parse_tree0, parse_tree1, parse_word, ParseContext};
use whitney_core::tree::{canonicalize_edge, canonicalize_y, right_order_normal_forms};
use whitney_core::{Coset, Error, Group, T0Mode, T1Mode, Tree0Elem, Tree1Elem, TreeModule, Word};

fn w(g: &Group, s: &str) -> Word {
    parse_word(g, s).unwrap()
}

fn cyclic() -> Group {
    parse_group("cyclic(x)").unwrap()
}

fn klein() -> Group {
    parse_group("klein(a, f)").unwrap()
}

#[test]
fn edge_orientation_and_framing() {
    let c = cyclic();
    let e = canonicalize_edge(2, 1, &w(&c, "x"), &T0Mode::Plain).unwrap().unwrap();
    assert_eq!((e.i, e.j, e.deco.clone()), (1, 2, w(&c, "x^-1")));
    assert!(canonicalize_edge(1, 1, &c.identity(), &T0Mode::Plain).unwrap().is_none());
    let e = canonicalize_edge(1, 1, &w(&c, "x^-2"), &T0Mode::Plain).unwrap().unwrap();
    assert_eq!(e.deco, w(&c, "x^2"));
}

#[test]
fn double_coset_edges() {
    let d = parse_group("direct_z(free(x, y), f)").unwrap();
    let mode = T0Mode::DoubleCoset(Coset::new(w(&d, "f")).unwrap());
    let e = canonicalize_edge(1, 2, &w(&d, "f^2*x*y*f^-1"), &mode).unwrap().unwrap();
    assert_eq!(e.deco, w(&d, "x*y"));
    // On a self-edge the class of the inverse is also identified.
    let e = canonicalize_edge(1, 1, &w(&d, "f^2*x*y*f^-1"), &mode).unwrap().unwrap();
    let f = canonicalize_edge(1, 1, &w(&d, "y^-1*x^-1"), &mode).unwrap().unwrap();
    assert_eq!(e, f);
    let mode = T0Mode::DoubleCoset(Coset::new(w(&d, "x")).unwrap());
    let e = canonicalize_edge(1, 1, &w(&d, "x^2*y*x^-3"), &mode).unwrap().unwrap();
    assert_eq!(e.deco, w(&d, "y"));
}

#[test]
fn left_coset_reps() {
    let d = parse_group("direct_z(free(x, y), f)").unwrap();
    let c = Coset::new(w(&d, "x")).unwrap();
    assert_eq!(c.left_rep(&w(&d, "x^2*y*x^-3")).unwrap(), w(&d, "y*x^-3"));
    assert_eq!(c.left_rep(&w(&d, "x^5")).unwrap(), d.identity());
}

#[test]
fn y_tree_normal_forms() {
    let c = cyclic();
    let y = canonicalize_y([1, 1, 1], [c.identity(), w(&c, "x^2"), w(&c, "x^-1")], &T1Mode::Plain).unwrap();
    assert_eq!(y.tree.decos(), &[c.identity(), w(&c, "x"), w(&c, "x^3")]);
    assert_eq!((y.sign, y.torsion), (1, false));

    let y = canonicalize_y([1, 1, 1], [c.identity(), w(&c, "x^3"), w(&c, "x^3")], &T1Mode::Plain).unwrap();
    assert_eq!(y.tree.decos(), &[c.identity(), c.identity(), w(&c, "x^3")]);
    assert!(y.torsion);

    let y = canonicalize_y([1, 1, 1], [c.identity(), w(&c, "x^3"), w(&c, "x")], &T1Mode::Plain).unwrap();
    assert_eq!(y.tree.decos(), &[c.identity(), w(&c, "x"), w(&c, "x^3")]);
    assert_eq!(y.sign, -1);
}

#[test]
fn repeated_label_framing() {
    let c = cyclic();
    let a = canonicalize_y([1, 2, 1], [w(&c, "x"), w(&c, "x^4"), w(&c, "x")], &T1Mode::Plain).unwrap();
    let b = canonicalize_y([1, 2, 2], [w(&c, "x"), w(&c, "x^4"), w(&c, "x^4")], &T1Mode::Plain).unwrap();
    assert!(a.torsion && b.torsion);
    assert_eq!(a.tree, b.tree);
}

#[test]
fn additive_identities() {
    let c = cyclic();
    let ctx = ParseContext::new(&c);
    assert!(parse_tree1(&ctx, "2*(1, x, 1)").unwrap().is_zero());
    assert!(parse_tree1(&ctx, "(x, x^2) + (x^2, x)").unwrap().is_zero());
    let u = parse_tree1(&ctx, "(x, x^3) - 2*(x^2, x^5)").unwrap();
    assert!(u.plus(&u.negated()).is_zero());
    assert_eq!(parse_tree1(&ctx, "(x,x^3)").unwrap().to_string(), "(x,x^3)");
}

#[test]
fn mode_mismatch_is_an_error() {
    let d = parse_group("direct_z(free(x, y), f)").unwrap();
    let plain = Tree1Elem::zero(&d, 1, T1Mode::Plain);
    let coset = Tree1Elem::zero(&d, 1, T1Mode::LeftCoset(Coset::new(w(&d, "f")).unwrap()));
    assert!(matches!(plain.try_add(&coset), Err(Error::Incompatible(_))));
    let two = Tree1Elem::zero(&d, 2, T1Mode::Plain);
    assert!(plain.try_add(&two).is_err());
}

#[test]
fn psi_action_examples() {
    let k = klein();
    let ctx = ParseContext::new(&k);
    let t = parse_tree0(&ctx, "E[1,1](f^3)").unwrap();
    let moved = t.psi_action(&[w(&k, "a")]).unwrap();
    assert_eq!(moved, parse_tree0(&ctx, "E[1,1](f^-3)").unwrap());
    assert_eq!(t.psi_action(&[k.identity()]).unwrap(), t);
    assert!(matches!(t.psi_action(&[]), Err(Error::LengthMismatch { .. })));

    let f = parse_group("free(x, y)").unwrap();
    let ctx = ParseContext::new(&f).with_labels(2);
    let t = parse_tree0(&ctx, "E[1,2](x)").unwrap();
    let moved = t.psi_action(&[w(&f, "y"), f.identity()]).unwrap();
    assert_eq!(moved, parse_tree0(&ctx, "E[1,2](y*x)").unwrap());
}

#[test]
fn tau1_psi_uses_third_component() {
    let k = klein();
    let ctx = ParseContext::new(&k);
    let t = parse_tree1(&ctx, "(f^3, f^3)").unwrap();
    let moved = t.psi_action(&[w(&k, "a")]).unwrap();
    assert_eq!(moved, parse_tree1(&ctx, "(f^-3, f^-3)").unwrap());
}

#[test]
fn cyclic_all_equal_label_classes() {
    let c = cyclic();
    let n = 6;
    let (free, torsion) = right_order_normal_forms(&c, n).unwrap();
    let mut got_free = std::collections::BTreeSet::new();
    let mut got_torsion = std::collections::BTreeSet::new();
    for p in -n..=n {
        for q in -n..=n {
            let y = canonicalize_y([1, 1, 1], [c.identity(), c.gen("x").unwrap().pow(p), c.gen("x").unwrap().pow(q)], &T1Mode::Plain)
                .unwrap();
            if y.torsion {
                got_torsion.insert(y.tree);
            } else {
                got_free.insert(y.tree);
            }
        }
    }
    let expect_free: std::collections::BTreeSet<_> = free.into_iter().collect();
    let expect_torsion: std::collections::BTreeSet<_> = torsion.into_iter().collect();
    // Every class met is a normal form (1, x^m, x^n) with 1 <= m < n (free)
    // or (1, 1, x^r) with r >= 0 (torsion); those inside the bound are all met.
    for t in &got_free {
        let (m, n2) = (t.decos()[1].exponent_of(0), t.decos()[2].exponent_of(0));
        assert!(t.decos()[0].is_identity() && 1 <= m && m < n2, "{}", t);
        if n2 <= n {
            assert!(expect_free.contains(t));
        }
    }
    for t in &got_torsion {
        assert!(t.decos()[0].is_identity() && t.decos()[1].is_identity() && t.decos()[2].exponent_of(0) >= 0, "{}", t);
    }
    for t in &expect_free {
        assert!(got_free.contains(t), "missing {}", t);
    }
    for t in &expect_torsion {
        assert!(got_torsion.contains(t), "missing {}", t);
    }
    for t in got_free.iter().chain(&got_torsion) {
        let d = t.decos();
        assert!(d[0].is_identity() && d[0] <= d[1] && d[1] <= d[2]);
    }
}

#[test]
fn pair_orbit_matches_display() {
    let c = cyclic();
    let sys = pair_system(8, false);
    let (g, h) = (w(&c, "x^2"), w(&c, "x^5"));
    let cl = sys.orbit_closure((g.clone(), h.clone())).unwrap();
    assert!(cl.saturated && !cl.torsion);
    let gi = g.inv();
    let hi = h.inv();
    let expect = vec![
        ((g.clone(), h.clone()), 1),
        ((gi.clone(), &h * &gi), -1),
        ((&h * &gi, gi.clone()), 1),
        ((&g * &hi, hi.clone()), -1),
        ((hi.clone(), &g * &hi), 1),
        ((h.clone(), g.clone()), -1),
    ];
    assert_eq!(cl.len(), 6);
    for (p, s) in expect {
        assert_eq!(cl.elements.get(&p), Some(&s));
    }
}

fn small_word(g: &Group) -> impl Strategy<Value = Word> {
    let g = g.clone();
    prop::collection::vec((0..g.generator_names().len(), -5i64..=5), 0..3)
        .prop_map(move |v| g.normalize(&v))
}

proptest! {
    #[test]
    fn canonical_form_constant_on_orbits(
        labels in prop::array::uniform3(1usize..=2),
        seed in 0u64..1_000_000,
        klein_group in any::<bool>(),
    ) {
        let g = if klein_group { klein() } else { cyclic() };
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let word = |rng: &mut rand_chacha::ChaCha8Rng| {
            use rand::Rng;
            let v: Vec<(usize, i64)> = (0..2)
                .map(|_| (rng.gen_range(0..g.generator_names().len()), rng.gen_range(-5..=5)))
                .collect();
            g.normalize(&v)
        };
        let decos = [word(&mut rng), word(&mut rng), word(&mut rng)];
        let base = canonicalize_y(labels, decos.clone(), &T1Mode::Plain).unwrap();
        let cl = triple_system(12).orbit_closure((labels, decos)).unwrap();
        prop_assert!(cl.saturated);
        prop_assert_eq!(cl.torsion, base.torsion);
        for ((l, d), s) in &cl.elements {
            let y = canonicalize_y(*l, d.clone(), &T1Mode::Plain).unwrap();
            prop_assert_eq!(&y.tree, &base.tree);
            if !base.torsion {
                prop_assert_eq!(y.sign * s, base.sign);
            }
        }
    }

    #[test]
    fn psi_is_a_left_action(
        ws in prop::collection::vec((0usize..2, -3i64..=3), 1..4),
        p in prop::collection::vec((0usize..2, -2i64..=2), 0..3),
        q in prop::collection::vec((0usize..2, -2i64..=2), 0..3),
    ) {
        let k = klein();
        let mut t = Tree1Elem::zero(&k, 1, T1Mode::Plain);
        for (i, &(gi, e)) in ws.iter().enumerate() {
            let a = k.generator(gi).pow(e);
            let b = k.generator(1 - gi).pow(i as i64 + 1);
            t.add_tree([1, 1, 1], [k.identity(), a, b], 1).unwrap();
        }
        let (psi, phi) = (k.normalize(&p), k.normalize(&q));
        let lhs = t.psi_action(&[phi.clone()]).unwrap().psi_action(&[psi.clone()]).unwrap();
        let rhs = t.psi_action(&[&psi * &phi]).unwrap();
        prop_assert_eq!(lhs, rhs);
        let doubled = t.plus(&t);
        prop_assert_eq!(doubled.psi_action(&[psi.clone()]).unwrap(), t.psi_action(&[psi.clone()]).unwrap().plus(&t.psi_action(&[psi]).unwrap()));
    }

    #[test]
    fn tree0_psi_action(g in small_word(&klein()), h in small_word(&klein()), p in small_word(&klein()), q in small_word(&klein())) {
        let k = klein();
        let mut t = Tree0Elem::zero(&k, 2, T0Mode::Plain);
        t.add_edge(1, 2, &g, 1).unwrap();
        t.add_edge(1, 1, &h, 2).unwrap();
        let r = p.clone();
        let s = q.clone();
        let lhs = t.psi_action(&[s.clone(), r.clone()]).unwrap().psi_action(&[p.clone(), q.clone()]).unwrap();
        let rhs = t.psi_action(&[&p * &s, &q * &r]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orientation_twice_is_identity(g in small_word(&klein()), i in 1usize..=3, j in 1usize..=3) {
        let k = klein();
        let mut a = Tree0Elem::zero(&k, 3, T0Mode::Plain);
        a.add_edge(i, j, &g, 1).unwrap();
        let mut b = Tree0Elem::zero(&k, 3, T0Mode::Plain);
        b.add_edge(j, i, &g.inv(), 1).unwrap();
        prop_assert_eq!(a, b);
    }
}
