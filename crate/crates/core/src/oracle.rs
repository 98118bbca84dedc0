//! Brute-force oracles: bounded rewriting closures and exhaustive span search.
//!
//! These are deliberately naive and share no code with the canonicalizers
//! and the solver they are used to check.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::Word;
use crate::span::{SpanProblem, SpanVerdict};
use crate::tree::{Tree1Elem, TreeModule};

type RuleFn<T> = Box<dyn Fn(&T) -> Vec<(T, i64)> + Send + Sync>;

/// Named rules, each mapping an element to signed rewrites, and a depth bound.
pub struct RewriteSystem<T> {
    rules: Vec<(String, RuleFn<T>)>,
    depth: usize,
}

/// Everything reachable from a seed within the depth bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure<T: Ord> {
    /// Each element with the sign it was first reached with.
    pub elements: BTreeMap<T, i64>,
    /// Some element was reached with both signs.
    pub torsion: bool,
    /// No new element appeared at the last level.
    pub saturated: bool,
}

impl<T: Ord> Closure<T> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl<T: Ord + Clone> RewriteSystem<T> {
    pub fn new(depth: usize) -> RewriteSystem<T> {
        RewriteSystem { rules: Vec::new(), depth }
    }

    pub fn rule(mut self, name: &str, f: impl Fn(&T) -> Vec<(T, i64)> + Send + Sync + 'static) -> Self {
        self.rules.push((name.to_string(), Box::new(f)));
        self
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn rule_names(&self) -> Vec<&str> {
        self.rules.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// One-step rewrites of `x` under every rule.
    pub fn step(&self, x: &T) -> Vec<(T, i64)> {
        self.rules.iter().flat_map(|(_, f)| f(x)).collect()
    }

    pub fn orbit_closure(&self, seed: T) -> Result<Closure<T>> {
        if self.depth == 0 {
            return Err(Error::Domain("closure depth must be at least 1".into()));
        }
        let mut elements = BTreeMap::from([(seed.clone(), 1i64)]);
        let mut torsion = false;
        let mut level = vec![seed];
        for _ in 0..self.depth {
            let mut next = Vec::new();
            for x in &level {
                let s = elements[x];
                for (y, sg) in self.step(x) {
                    match elements.get(&y) {
                        Some(&old) => torsion |= old != s * sg,
                        None => {
                            elements.insert(y.clone(), s * sg);
                            next.push(y);
                        }
                    }
                }
            }
            if next.is_empty() {
                return Ok(Closure { elements, torsion, saturated: true });
            }
            level = next;
        }
        // One more look to see whether the last level already closed up.
        let saturated = level.iter().all(|x| self.step(x).iter().all(|(y, _)| elements.contains_key(y)));
        Ok(Closure { elements, torsion, saturated })
    }

    /// Members of a closure to which no rule applies.
    pub fn irreducible(&self, c: &Closure<T>) -> Vec<T> {
        c.elements.keys().filter(|x| self.step(x).is_empty()).cloned().collect()
    }
}

pub fn orbit_closure<T: Ord + Clone>(seed: T, system: &RewriteSystem<T>) -> Result<Closure<T>> {
    system.orbit_closure(seed)
}

/// A raw letter: generator index and exponent `+1` or `-1`.
pub type Letter = (usize, i64);

/// String rewriting `lhs -> rhs` applied at every position.
pub fn string_rules(name: &str, rules: Vec<(Vec<Letter>, Vec<Letter>)>, depth: usize) -> RewriteSystem<Vec<Letter>> {
    RewriteSystem::new(depth).rule(name, move |w: &Vec<Letter>| {
        let mut out = Vec::new();
        for (lhs, rhs) in &rules {
            if lhs.len() > w.len() {
                continue;
            }
            for p in 0..=w.len() - lhs.len() {
                if w[p..p + lhs.len()] == lhs[..] {
                    let mut v = w[..p].to_vec();
                    v.extend_from_slice(rhs);
                    v.extend_from_slice(&w[p + lhs.len()..]);
                    out.push((v, 1));
                }
            }
        }
        out
    })
}

/// Free cancellation plus the Klein relations `f a -> a f^-1` and friends,
/// over a two-letter alphabet `a = 0`, `f = 1`.
pub fn klein_word_system(depth: usize) -> RewriteSystem<Vec<Letter>> {
    let (a, f) = (0, 1);
    let mut rules = Vec::new();
    for g in [a, f] {
        rules.push((vec![(g, 1), (g, -1)], vec![]));
        rules.push((vec![(g, -1), (g, 1)], vec![]));
    }
    for fe in [1, -1] {
        for ae in [1, -1] {
            rules.push((vec![(f, fe), (a, ae)], vec![(a, ae), (f, -fe)]));
        }
    }
    string_rules("klein", rules, depth)
}

/// Decides equality of raw Klein words by reducing both; `None` when the
/// closure did not saturate or the reduction is not unique.
pub fn klein_words_equal(u: &[Letter], v: &[Letter], depth: usize) -> Option<bool> {
    let sys = klein_word_system(depth);
    let nf = |w: &[Letter]| -> Option<Vec<Letter>> {
        let c = sys.orbit_closure(w.to_vec()).ok()?;
        let irr = sys.irreducible(&c);
        (c.saturated && irr.len() == 1).then(|| irr.into_iter().next().unwrap())
    };
    Some(nf(u)? == nf(v)?)
}

/// A pair `(g, h) := (1, g, h)` with all labels equal.
pub type Pair = (Word, Word);

/// The antisymmetry moves on pairs, with holonomy already applied, and
/// optionally the framing identification `(g, g) = (1, g)`.
pub fn pair_system(depth: usize, framing: bool) -> RewriteSystem<Pair> {
    let mut sys = RewriteSystem::new(depth)
        .rule("swap12", |(g, h): &Pair| {
            let gi = g.inv();
            vec![((gi.clone(), h * &gi), -1)]
        })
        .rule("swap23", |(g, h): &Pair| vec![((h.clone(), g.clone()), -1)]);
    if framing {
        sys = sys.rule("framing", |(g, h): &Pair| {
            let one = g.group().identity();
            let mut out = Vec::new();
            if g == h {
                out.push(((one.clone(), g.clone()), 1));
            }
            if g.is_identity() {
                out.push(((h.clone(), h.clone()), 1));
            }
            out
        });
    }
    sys
}

/// A labelled triple with its first decoration trivialised.
pub type Triple = ([usize; 3], [Word; 3]);

fn trivialise(labels: [usize; 3], d: [Word; 3]) -> Triple {
    let t = d[0].inv();
    let one = d[0].group().identity();
    (labels, [one, &d[1] * &t, &d[2] * &t])
}

/// Rotation, a transposition and framing on labelled triples.
pub fn triple_system(depth: usize) -> RewriteSystem<Triple> {
    RewriteSystem::new(depth)
        .rule("rotate", |(l, d): &Triple| {
            vec![(trivialise([l[1], l[2], l[0]], [d[1].clone(), d[2].clone(), d[0].clone()]), 1)]
        })
        .rule("swap", |(l, d): &Triple| {
            vec![(trivialise([l[1], l[0], l[2]], [d[1].clone(), d[0].clone(), d[2].clone()]), -1)]
        })
        .rule("framing", |(l, d): &Triple| {
            let mut out = Vec::new();
            for (p, q) in [(0, 1), (0, 2), (1, 2)] {
                if l[p] == l[q] && d[p] == d[q] {
                    let r = 3 - p - q;
                    let mut l2 = *l;
                    let mut d2 = d.clone();
                    l2[q] = l[r];
                    d2[q] = d[r].clone();
                    out.push((trivialise(l2, d2), 1));
                }
            }
            out
        })
}

/// Exhaustive search over coefficient vectors with entries in `[-bound, bound]`,
/// smallest maximum entry first.
pub fn brute_span(target: &Tree1Elem, generators: &[Tree1Elem], bound: i64) -> Result<SpanVerdict> {
    const MAX_GENERATORS: usize = 6;
    if generators.len() > MAX_GENERATORS {
        return Err(Error::TooLarge(format!(
            "brute force handles at most {} generators, got {}",
            MAX_GENERATORS,
            generators.len()
        )));
    }
    for g in generators {
        target.compatible(g)?;
    }
    let n = generators.len();
    for b in 0..=bound.max(0) {
        let mut d = vec![-b; n];
        loop {
            if d.iter().any(|x| x.abs() == b) || (b == 0) {
                let mut sum = target.zero_like();
                for (c, g) in d.iter().zip(generators) {
                    if *c != 0 {
                        sum = sum.plus(&g.scale(*c));
                    }
                }
                if sum == *target {
                    return Ok(SpanVerdict::Witness(d));
                }
            }
            let mut k = 0;
            while k < n && d[k] == b {
                d[k] = -b;
                k += 1;
            }
            if k == n {
                break;
            }
            d[k] += 1;
        }
    }
    Ok(SpanVerdict::Infeasible)
}

/// Runs the solver and brute force on the same instance; `Err` describes a
/// disagreement.
pub fn cross_check(p: &SpanProblem, bound: i64) -> Result<std::result::Result<SpanVerdict, String>> {
    let fast = crate::span::span_member(p)?;
    let slow = brute_span(p.target(), p.generators(), bound)?;
    Ok(match (&fast, &slow) {
        (SpanVerdict::Witness(d), _) if !p.verify(d) => Err(format!("solver witness {:?} does not verify", d)),
        (SpanVerdict::Infeasible, SpanVerdict::Witness(d)) => {
            Err(format!("solver says infeasible but {:?} is a witness", d))
        }
        _ => Ok(fast),
    })
}
