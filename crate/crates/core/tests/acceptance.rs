//! Acceptance checks, one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whitney_core::calculus::*;
use whitney_core::oracle::{brute_span, pair_system};
use whitney_core::span::*;
use whitney_core::syntax::{parse_expression, parse_group, parse_ring, parse_tree0, parse_tree1, parse_word, ParseContext, Value};
use whitney_core::tree::{canonicalize_y, right_order_normal_forms};
use whitney_core::{Group, T1Mode, Tree0Elem, Tree1Elem, TreeModule, Word};

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn w(g: &Group, s: &str) -> Word {
    parse_word(g, s).unwrap()
}

fn klein() -> Group {
    parse_group("klein(a, f)").unwrap()
}

fn cyclic() -> Group {
    parse_group("cyclic(x)").unwrap()
}

fn criterion_1() -> Check {
    let p = parse_group("free_product(M1: free(g1, g2), M2: free(h0, h1, h2))").unwrap();
    let s = SphereSpec::separating(&p, &[0]).unwrap();
    let got = sigma_separating(&w(&p, "h0*g1*h1*g2*h2"), &s).unwrap();
    ensure!(got.to_string() == "(g1 - 1)*h1*g2*h2 + (g2 - 1)*h2", "separating: {}", got);
    let expect = parse_ring(&p, "(g1 - 1)*(h1*g2*h2) + (g2 - 1)*h2").unwrap();
    ensure!(got.expand() == expect, "separating expansion: {}", got.expand());

    let q = parse_group("free_product(X: cyclic(x), M: free(h0, h1, h2))").unwrap();
    let s = SphereSpec::nonseparating(&q, 0).unwrap();
    let got = sigma_nonseparating(&w(&q, "h0*x^3*h1*x^-3*h2"), &s).unwrap();
    ensure!(got.to_string() == "(x^3 + x^2 + x)*h1*x^-3*h2 - (1 + x^-1 + x^-2)*h2", "nonseparating: {}", got);
    let expect = parse_ring(&q, "(x^3 + x^2 + x)*h1*x^-3*h2 - (1 + x^-1 + x^-2)*h2").unwrap();
    ensure!(got.expand() == expect, "nonseparating expansion: {}", got.expand());
    Ok(())
}

// Labels: K = 1, S = 2.
fn s1xs2() -> (Group, LinkClass, ParseContext) {
    let c = cyclic();
    let z = LinkClass::knot(&parse_ring(&c, "x").unwrap()).unwrap();
    let ctx = ParseContext::new(&c).with_labels(2);
    (c, z, ctx)
}

fn witness_resubstitutes(target: &Tree1Elem, family: &dyn RelationFamily, radius: usize, coeffs: &[(String, i64)]) -> bool {
    let members = family.window(radius).unwrap();
    let mut sum = target.zero_like();
    for (id, d) in coeffs {
        match members.iter().find(|m| &m.id == id) {
            Some(m) => sum = sum.plus(&m.element.scale(*d)),
            None => return false,
        }
    }
    sum == *target
}

fn criterion_2() -> Check {
    let (c, z, ctx) = s1xs2();
    let int = IntFamily::new(z.clone(), 2);
    let xx = parse_tree1(&ctx, "Y[1,1,2](1; x; x)").unwrap();
    for n in -3..=3 {
        let s = SphereSpec::nonseparating(&c, 0).unwrap().with_whisker(c.gen("x").unwrap().pow(n));
        let got = pairing_tau1_link_sphere(&z, &s).unwrap();
        let expect = parse_tree1(&ctx, &format!("-Y[1,1,2](1; x; x^{})", n + 1)).unwrap();
        ensure!(got == expect, "pairing n = {}: {}", n, got);
        let target = got.negated().minus(&xx);
        match span_member_windowed(&target, &int, 8, DEFAULT_DIM_CAP).unwrap() {
            WindowVerdict::Witness { radius, coefficients } => {
                ensure!(witness_resubstitutes(&target, &int, radius, &coefficients), "witness for n = {} does not verify", n);
            }
            v => return Err(format!("n = {}: {:?}", n, v)),
        }
    }
    let s = SphereSpec::nonseparating(&c, 0).unwrap();
    let phi = PhiFamily::new(z.clone(), vec![("S".into(), s)], c.ball(2), 2);
    let both = UnionFamily(vec![&int, &phi]);
    let zero = Tree1Elem::zero(&c, 2, T1Mode::Plain);
    let v = quotient_equal(&xx, &zero, &both, &[], 16, DEFAULT_DIM_CAP).unwrap();
    ensure!(matches!(v, QuotientVerdict::NotEqualUpTo { r_max: 16, .. }), "quotient: {:?}", v);
    Ok(())
}

fn delta(k: &Group, r: i64) -> Tree1Elem {
    let z = LinkClass::knot(&parse_ring(k, "f + f^3").unwrap()).unwrap();
    int_relations_null(&z, &k.gen("f").unwrap().pow(r), 1, 1, 1).unwrap()
}

fn criterion_3() -> Check {
    let k = klein();
    let ctx = ParseContext::new(&k);
    let displayed = [
        (3, "(1,f^3)+(f,f^3)-(f,f^4)-(f^3,f^6)"),
        (2, "(f,f^2)-(f,f^3)-(f^2,f^3)-(f^3,f^5)"),
        (1, "(1,f)-(f,f^2)-(f,f^3)-(f^3,f^4)"),
        (-1, "(1,f)+(f,f^2)+(f,f^4)+(f^2,f^3)"),
        (-2, "-(f,f^2)+(f,f^3)+(f^2,f^3)+(f^2,f^5)"),
    ];
    for (r, text) in displayed {
        let got = delta(&k, r);
        let expect = parse_tree1(&ctx, text).unwrap();
        ensure!(got == expect, "Delta_{} = {}, expected {}", r, got, expect);
        ensure!(got.terms().len() == 4, "Delta_{} has other terms", r);
    }
    ensure!(delta(&k, 0).is_zero(), "Delta_0 = {}", delta(&k, 0));
    Ok(())
}

fn criterion_4() -> Check {
    let k = klein();
    let target = parse_tree1(&ParseContext::new(&k), "(1,f)-(f,f^2)+(1,f^3)-(f^3,f^6)").unwrap();
    for big_r in 2..=16i64 {
        let gens: Vec<Tree1Elem> = (-big_r..=big_r).map(|r| delta(&k, r)).collect();
        let p = SpanProblem::new(target.clone(), gens).unwrap();
        ensure!(span_member(&p).unwrap() == SpanVerdict::Infeasible, "R = {}: feasible over Z", big_r);
        let sys = mod2_system(&p);
        ensure!(sys.solve().is_none(), "R = {}: feasible over GF(2)", big_r);
        let col = |r: i64| (r + big_r) as usize;
        for r in 5..=big_r {
            ensure!(sys.has_row(&[col(r - 1), col(r)], false), "R = {}: no row d_{} + d_{}", big_r, r - 1, r);
        }
    }
    Ok(())
}

fn criterion_5() -> Check {
    let k = klein();
    let tau = parse_tree1(&ParseContext::new(&k), "(f,f)+(f^-1,f)+(f^3,f^3)+(f^-3,f^3)").unwrap();
    let a = w(&k, "a");
    let (sum, lat) = compose_invariants(vec![
        ConcordancePart::Forward { tau: tau.clone(), latitude: vec![a.clone()] },
        ConcordancePart::Forward { tau, latitude: vec![a] },
    ])
    .unwrap();
    ensure!(sum.is_zero(), "tau(A + A) = {}", sum);
    ensure!(lat == vec![w(&k, "a^2")], "latitude {:?}", lat);
    Ok(())
}

fn criterion_6() -> Check {
    let c = cyclic();
    let x = c.gen("x").unwrap();
    let n = 6i64;
    let (free, torsion) = right_order_normal_forms(&c, n).unwrap();
    let mut seen_free = std::collections::BTreeSet::new();
    let mut seen_torsion = std::collections::BTreeSet::new();
    for p in -n..=n {
        for q in -n..=n {
            let y = canonicalize_y([1, 1, 1], [c.identity(), x.pow(p), x.pow(q)], &T1Mode::Plain).unwrap();
            let d = y.tree.decos();
            let (m, e) = (d[1].exponent_of(0), d[2].exponent_of(0));
            ensure!(d[0].is_identity(), "({}, {}) -> {}", p, q, y.tree);
            if y.torsion {
                ensure!(m == 0 && e >= 0, "torsion class ({}, {}) -> {}", p, q, y.tree);
                seen_torsion.insert(y.tree);
            } else {
                ensure!(1 <= m && m < e, "free class ({}, {}) -> {}", p, q, y.tree);
                seen_free.insert(y.tree);
            }
        }
    }
    for t in &free {
        ensure!(seen_free.contains(t), "free normal form {} never met", t);
    }
    for t in &torsion {
        ensure!(seen_torsion.contains(t), "torsion normal form {} never met", t);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    while done < 50 {
        let (g, h) = (x.pow(rng.gen_range(-6..=6)), x.pow(rng.gen_range(-6..=6)));
        if g.is_identity() || h.is_identity() || g == h {
            continue;
        }
        let cl = pair_system(10, true).orbit_closure((g.clone(), h.clone())).unwrap();
        let (gi, hi) = (g.inv(), h.inv());
        let displayed = [
            ((g.clone(), h.clone()), 1),
            ((gi.clone(), &h * &gi), -1),
            ((&h * &gi, gi.clone()), 1),
            ((&g * &hi, hi.clone()), -1),
            ((hi.clone(), &g * &hi), 1),
            ((h.clone(), g.clone()), -1),
        ];
        ensure!(cl.saturated && !cl.torsion && cl.len() == 6, "orbit of ({}, {}) has {} elements", g, h, cl.len());
        for (e, s) in displayed {
            ensure!(cl.elements.get(&e) == Some(&s), "orbit of ({}, {}) lacks {:?}", g, h, e);
        }
        done += 1;
    }
    Ok(())
}

fn criterion_7() -> Check {
    let f = parse_group("free(x, y)").unwrap();
    let (g, h) = (w(&f, "x*y"), w(&f, "y^2"));
    let ctx = ParseContext::new(&f).with_labels(3);
    for n in -3..=3 {
        let got = clasp_move_delta(&f, 3, &ClaspMove::Twist { n, g: g.clone(), i: 1, j: 2 }).unwrap();
        let expect = parse_tree1(&ctx, &format!("{}*Y[1,1,2](1; 1; x*y)", n)).unwrap();
        ensure!(got == expect, "twist {}: {}", n, got);
        ensure!(got.is_zero() == (n % 2 == 0), "twist {} parity", n);
    }
    let got = clasp_move_delta(&f, 3, &ClaspMove::EndpointTransposition { g: g.clone(), h: h.clone(), i: 1, j: 2, k: 3 }).unwrap();
    ensure!(got == parse_tree1(&ctx, "Y[1,2,3](1; x*y; y^2)").unwrap(), "endpoint transposition: {}", got);
    let got = clasp_move_delta(&f, 3, &ClaspMove::SameArcTransposition { g: g.clone(), i: 1 }).unwrap();
    ensure!(got == parse_tree1(&ctx, "-Y[1,1,1](1; x*y; y^-1*x^-1)").unwrap(), "same arc: {}", got);
    ensure!(got == parse_tree1(&ctx, "Y[1,1,1](1; y^-1*x^-1; x*y)").unwrap(), "same arc sign: {}", got);
    Ok(())
}

fn criterion_8() -> Check {
    let d = parse_group("direct_z(free(g, h), f)").unwrap();
    let k = EssentialKnotClass::from_ring(w(&d, "h"), &parse_ring(&d, "g").unwrap()).unwrap();
    let ctx = ParseContext::new(&d).with_t1_mode(T1Mode::LeftCoset(k.coset().clone()));
    let got = int_relations_essential(&k, &w(&d, "f"), 1).unwrap();
    let expect = parse_tree1(&ctx, "(1, f, g + g^-1 - f*g - f*g^-1)").unwrap();
    ensure!(got == expect, "essential INT: {}", got);
    for s in ["(1, f, 1 - f)", "-(1, f, 1 - f)"] {
        ensure!(parse_tree1(&ctx, s).unwrap().is_zero(), "{} does not vanish", s);
    }
    Ok(())
}

fn criterion_9() -> Check {
    let k = klein();
    let z = LinkClass::knot(&parse_ring(&k, "f + f^3").unwrap()).unwrap();
    match stabilizer_classify(&z, &[w(&k, "a")]).unwrap() {
        StabilizerVerdict::Twisted(orbits) => {
            let sets: Vec<Vec<Word>> = orbits.into_iter().map(|o| o.elements).collect();
            let expect = vec![vec![w(&k, "f"), w(&k, "f^-1")], vec![w(&k, "f^3"), w(&k, "f^-3")]];
            ensure!(sets == expect, "orbits {:?}", sets);
        }
        v => return Err(format!("Klein: {:?}", v)),
    }
    let c = cyclic();
    let zc = LinkClass::knot(&parse_ring(&c, "2*x + x^3").unwrap()).unwrap();
    for p in -2..=2 {
        let v = stabilizer_classify(&zc, &[c.gen("x").unwrap().pow(p)]).unwrap();
        ensure!(v == StabilizerVerdict::Untwisted, "cyclic: {:?}", v);
    }
    let f = parse_group("free(x, y)").unwrap();
    let zf = LinkClass::new(parse_tree0(&ParseContext::new(&f).with_labels(2), "E[1,2](x)").unwrap()).unwrap();
    let v = stabilizer_classify(&zf, &[w(&f, "y"), f.identity()]).unwrap();
    ensure!(v == StabilizerVerdict::NotStabilizer, "free: {:?}", v);

    let kctx = ParseContext::new(&k);
    ensure!(klein_twisted_form_check(&parse_tree0(&kctx, "E[1,1](f + f^3)").unwrap(), &w(&k, "a")).unwrap(), "f + f^3 rejected");
    for pure in ["E[1,1](a^2)", "E[1,1](a^2 + 3*a^4)", "E[1,1](a^-2)"] {
        let t = parse_tree0(&kctx, pure).unwrap();
        ensure!(!klein_twisted_form_check(&t, &w(&k, "a")).unwrap(), "{} accepted", pure);
    }
    Ok(())
}

fn random_klein_word(k: &Group, rng: &mut ChaCha8Rng) -> Word {
    let n = rng.gen_range(0..4);
    let v: Vec<(usize, i64)> = (0..n).map(|_| (rng.gen_range(0..2), rng.gen_range(-3..=3))).collect();
    k.normalize(&v)
}

fn criterion_10() -> Check {
    let k = klein();
    let mut rng = ChaCha8Rng::seed_from_u64(10);

    // Psi-action law on both tree groups.
    for case in 0..500 {
        let m = 2;
        let mut t1 = Tree1Elem::zero(&k, m, T1Mode::Plain);
        let mut t0 = Tree0Elem::zero(&k, m, whitney_core::T0Mode::Plain);
        for _ in 0..3 {
            let labels = [rng.gen_range(1..=m), rng.gen_range(1..=m), rng.gen_range(1..=m)];
            let decos = [random_klein_word(&k, &mut rng), random_klein_word(&k, &mut rng), random_klein_word(&k, &mut rng)];
            t1.add_tree(labels, decos, rng.gen_range(-2..=2)).unwrap();
            t0.add_edge(labels[0], labels[1], &random_klein_word(&k, &mut rng), rng.gen_range(-2..=2)).unwrap();
        }
        let psi: Vec<Word> = (0..m).map(|_| random_klein_word(&k, &mut rng)).collect();
        let phi: Vec<Word> = (0..m).map(|_| random_klein_word(&k, &mut rng)).collect();
        let prod: Vec<Word> = psi.iter().zip(&phi).map(|(a, b)| a * b).collect();
        let lhs = t1.psi_action(&phi).unwrap().psi_action(&psi).unwrap();
        ensure!(lhs == t1.psi_action(&prod).unwrap(), "order-1 action law fails in case {}", case);
        let lhs = t0.psi_action(&phi).unwrap().psi_action(&psi).unwrap();
        ensure!(lhs == t0.psi_action(&prod).unwrap(), "order-0 action law fails in case {}", case);
    }

    // Solver against brute force.
    let c = cyclic();
    let x = c.gen("x").unwrap();
    let coords: Vec<Tree1Elem> = [(1, 2), (1, 3), (2, 3), (0, 1), (0, 2), (0, 3)]
        .iter()
        .map(|&(m, n)| {
            let mut t = Tree1Elem::zero(&c, 1, T1Mode::Plain);
            t.add_tree([1, 1, 1], [c.identity(), x.pow(m), x.pow(n)], 1).unwrap();
            t
        })
        .collect();
    for case in 0..200 {
        let ngen = rng.gen_range(1..=5);
        let gens: Vec<Tree1Elem> = (0..ngen)
            .map(|_| coords.iter().fold(coords[0].zero_like(), |acc, t| acc.plus(&t.scale(rng.gen_range(-2..=2)))))
            .collect();
        let target = if rng.gen_bool(0.5) {
            gens.iter().fold(coords[0].zero_like(), |acc, g| acc.plus(&g.scale(rng.gen_range(-2..=2))))
        } else {
            coords.iter().fold(coords[0].zero_like(), |acc, t| acc.plus(&t.scale(rng.gen_range(-2..=2))))
        };
        let p = SpanProblem::new(target.clone(), gens.clone()).unwrap();
        let fast = span_member(&p).unwrap();
        let slow = brute_span(&target, &gens, 3).unwrap();
        if let SpanVerdict::Witness(d) = &fast {
            ensure!(p.verify(d), "case {}: solver witness does not verify", case);
        }
        if let SpanVerdict::Witness(d) = &slow {
            ensure!(p.verify(d), "case {}: brute witness does not verify", case);
            ensure!(fast.is_witness(), "case {}: solver missed a witness", case);
        }
    }

    // Parser round trip.
    let ctx = ParseContext::new(&k).with_labels(2);
    for case in 0..500 {
        let text = random_expression(&mut rng);
        let v = parse_expression(&ctx, &text).map_err(|e| format!("{}: {}", text, e))?;
        let printed = v.to_string();
        let again = parse_expression(&ctx, &printed).map_err(|e| format!("{} -> {}: {}", text, printed, e))?;
        let same = match (&v, &again) {
            (Value::Tree0(t), Value::Ring(r)) => t.is_zero() && r.is_zero(),
            (Value::Tree1(t), Value::Ring(r)) => t.is_zero() && r.is_zero(),
            _ => v == again,
        };
        ensure!(same, "case {}: {} -> {} -> {}", case, text, printed, again);
    }
    Ok(())
}

fn random_word_text(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(0..4);
    if n == 0 {
        return "1".into();
    }
    (0..n)
        .map(|_| format!("{}^{}", if rng.gen_bool(0.5) { "a" } else { "f" }, rng.gen_range(-3..=3)))
        .collect::<Vec<_>>()
        .join("*")
}

fn random_expression(rng: &mut ChaCha8Rng) -> String {
    let terms = rng.gen_range(1..4);
    let kind = rng.gen_range(0..3);
    (0..terms)
        .map(|_| {
            let c = rng.gen_range(-3..=3);
            match kind {
                0 => format!("{}*{}", c, random_word_text(rng)),
                1 => format!("{}*E[{},{}]({})", c, rng.gen_range(1..=2), rng.gen_range(1..=2), random_word_text(rng)),
                _ => format!(
                    "{}*Y[{},{},{}]({}; {}; {})",
                    c,
                    rng.gen_range(1..=2),
                    rng.gen_range(1..=2),
                    rng.gen_range(1..=2),
                    random_word_text(rng),
                    random_word_text(rng),
                    random_word_text(rng)
                ),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("sigma examples", criterion_1),
        ("S1 x S2 pairing, INT chain and quotient", criterion_2),
        ("Delta_r normal forms", criterion_3),
        ("Delta_r nonmembership over Z and GF(2)", criterion_4),
        ("composition A + A = 0", criterion_5),
        ("orbits and normal forms", criterion_6),
        ("clasp-move deltas", criterion_7),
        ("essential INT", criterion_8),
        ("stabilizers and twisted forms", criterion_9),
        ("property suites", criterion_10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(r) => r,
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        match outcome {
            Ok(()) => println!("[PASS] criterion {:>2}: {}", i + 1, name),
            Err(e) => {
                failed += 1;
                println!("[FAIL] criterion {:>2}: {}: {}", i + 1, name, e);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
