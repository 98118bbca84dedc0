//! Session configuration: a line-oriented key-block format.
//!
//! ```text
//! # comment
//! [group]
//! spec = klein(a, f)
//!
//! [link K]
//! labels = 1
//! value = f + f^3
//!
//! [sphere S]
//! kind = nonseparating
//! factor = X
//! whisker = x
//!
//! [bounds]
//! rmax = 16
//! ```
//!
//! The grammar is documented in `docs/config.md`. A loaded config is
//! immutable and every block name is unique.

use std::collections::{BTreeMap, BTreeSet};

use crate::calculus::{EssentialKnotClass, LinkClass, SphereSpec};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::syntax::{parse_expression, parse_group, parse_word, ParseContext, Value};
use crate::tree::{Coset, T0Mode, Tree0Elem};

pub const ENV_RMAX: &str = "WHITNEY_RMAX";
pub const ENV_WHISKER_LENGTH: &str = "WHITNEY_WHISKER_LENGTH";
pub const ENV_DIM_CAP: &str = "WHITNEY_DIM_CAP";

/// Enumeration bounds shared by the indeterminacy families and the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub whisker_length: usize,
    pub rmax: usize,
    pub dim_cap: usize,
    pub coset_window: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            whisker_length: 2,
            rmax: 16,
            dim_cap: crate::span::DEFAULT_DIM_CAP,
            coset_window: crate::tree::DEFAULT_WINDOW_EXTRA,
        }
    }
}

impl Bounds {
    /// Overrides from the environment, through `lookup` so callers can test it.
    pub fn with_env(mut self, lookup: impl Fn(&str) -> Option<String>) -> Result<Bounds> {
        for (var, slot) in [
            (ENV_RMAX, &mut self.rmax),
            (ENV_WHISKER_LENGTH, &mut self.whisker_length),
            (ENV_DIM_CAP, &mut self.dim_cap),
        ] {
            if let Some(v) = lookup(var) {
                *slot = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config { line: 0, msg: format!("{} must be a non-negative integer", var) })?;
            }
        }
        Ok(self)
    }

    fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let slot = match key {
            "whisker_length" => &mut self.whisker_length,
            "rmax" => &mut self.rmax,
            "dim_cap" => &mut self.dim_cap,
            "coset_window" => &mut self.coset_window,
            _ => return Err(Error::Config { line, msg: format!("unknown bound `{}`", key) }),
        };
        *slot = value
            .parse()
            .map_err(|_| Error::Config { line, msg: format!("`{}` must be a non-negative integer", key) })?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SessionConfig {
    group: Group,
    links: BTreeMap<String, LinkClass>,
    spheres: BTreeMap<String, SphereSpec>,
    essentials: BTreeMap<String, EssentialKnotClass>,
    bounds: Bounds,
}

struct Block {
    kind: String,
    name: Option<String>,
    line: usize,
    entries: Vec<(String, String, usize)>,
}

impl Block {
    fn get(&self, key: &str) -> Option<(&str, usize)> {
        self.entries.iter().find(|(k, _, _)| k == key).map(|(_, v, l)| (v.as_str(), *l))
    }

    fn require(&self, key: &str) -> Result<(&str, usize)> {
        self.get(key)
            .ok_or_else(|| Error::Config { line: self.line, msg: format!("[{}] block needs `{}`", self.kind, key) })
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (k, _, l) in &self.entries {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::Config { line: *l, msg: format!("unknown key `{}` in [{}]", k, self.kind) });
            }
            if !seen.insert(k) {
                return Err(Error::Config { line: *l, msg: format!("duplicate key `{}`", k) });
            }
        }
        Ok(())
    }
}

fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Config { .. } => e,
        other => Error::Config { line, msg: other.to_string() },
    })
}

fn blocks(text: &str) -> Result<Vec<Block>> {
    let mut out: Vec<Block> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let s = raw.split('#').next().unwrap().trim();
        if s.is_empty() {
            continue;
        }
        if let Some(head) = s.strip_prefix('[') {
            let head = head
                .strip_suffix(']')
                .ok_or_else(|| Error::Config { line, msg: "unterminated block header".into() })?;
            let mut parts = head.split_whitespace();
            let kind = parts.next().ok_or_else(|| Error::Config { line, msg: "empty block header".into() })?;
            let name = parts.next().map(str::to_string);
            if parts.next().is_some() {
                return Err(Error::Config { line, msg: "block header has too many words".into() });
            }
            out.push(Block { kind: kind.to_string(), name, line, entries: Vec::new() });
            continue;
        }
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| Error::Config { line, msg: "expected `key = value`".into() })?;
        let b = out.last_mut().ok_or_else(|| Error::Config { line, msg: "entry before any block".into() })?;
        b.entries.push((k.trim().to_string(), v.trim().to_string(), line));
    }
    Ok(out)
}

impl SessionConfig {
    /// Parses with default bounds.
    pub fn parse(text: &str) -> Result<SessionConfig> {
        SessionConfig::parse_with_bounds(text, Bounds::default())
    }

    /// Parses on top of `base`; a `[bounds]` block overrides it.
    pub fn parse_with_bounds(text: &str, base: Bounds) -> Result<SessionConfig> {
        let blocks = blocks(text)?;
        let mut bounds = base;
        let mut group = None;
        for b in &blocks {
            match b.kind.as_str() {
                "group" => {
                    if group.is_some() {
                        return Err(Error::Config { line: b.line, msg: "more than one [group] block".into() });
                    }
                    b.check_keys(&["spec"])?;
                    let (v, l) = b.require("spec")?;
                    group = Some(at(l, parse_group(v))?);
                }
                "bounds" => {
                    for (k, v, l) in &b.entries {
                        bounds.set(k, v, *l)?;
                    }
                }
                "link" | "sphere" | "essential" => {
                    if b.name.is_none() {
                        return Err(Error::Config { line: b.line, msg: format!("[{}] block needs a name", b.kind) });
                    }
                }
                other => return Err(Error::Config { line: b.line, msg: format!("unknown block `{}`", other) }),
            }
        }
        let group = group.ok_or_else(|| Error::Config { line: 0, msg: "missing [group] block".into() })?;
        let mut cfg = SessionConfig {
            group,
            links: BTreeMap::new(),
            spheres: BTreeMap::new(),
            essentials: BTreeMap::new(),
            bounds,
        };
        let mut names = BTreeSet::new();
        for b in &blocks {
            let Some(name) = &b.name else { continue };
            if !names.insert(name.clone()) {
                return Err(Error::Config { line: b.line, msg: format!("name `{}` declared twice", name) });
            }
            match b.kind.as_str() {
                "link" => {
                    let l = cfg.link_block(b)?;
                    cfg.links.insert(name.clone(), l);
                }
                "sphere" => {
                    let s = cfg.sphere_block(b)?;
                    cfg.spheres.insert(name.clone(), s);
                }
                "essential" => {
                    let k = cfg.essential_block(b)?;
                    cfg.essentials.insert(name.clone(), k);
                }
                _ => unreachable!(),
            }
        }
        Ok(cfg)
    }

    fn link_block(&self, b: &Block) -> Result<LinkClass> {
        b.check_keys(&["labels", "value"])?;
        let labels = match b.get("labels") {
            Some((v, l)) => v
                .parse::<usize>()
                .ok()
                .filter(|&m| m >= 1)
                .ok_or_else(|| Error::Config { line: l, msg: "labels must be a positive integer".into() })?,
            None => 1,
        };
        let (v, l) = b.require("value")?;
        let ctx = ParseContext::new(&self.group).with_labels(labels);
        let z = match at(l, parse_expression(&ctx, v))? {
            Value::Tree0(t) => t,
            Value::Word(w) if labels == 1 => at(l, Tree0Elem::from_knot_ring(&crate::RingElem::monomial(w, 1), T0Mode::Plain))?,
            Value::Ring(r) if labels == 1 => at(l, Tree0Elem::from_knot_ring(&r, T0Mode::Plain))?,
            other => {
                return Err(Error::Config {
                    line: l,
                    msg: format!("link value must be an order-0 tree, found {}", other.kind()),
                })
            }
        };
        at(l, LinkClass::new(z))
    }

    fn sphere_block(&self, b: &Block) -> Result<SphereSpec> {
        b.check_keys(&["kind", "factor", "mprime", "whisker"])?;
        let (kind, l) = b.require("kind")?;
        let s = match kind {
            "separating" => {
                let (v, l) = b.require("mprime")?;
                let idx: Vec<usize> = v
                    .split(',')
                    .map(|f| at(l, self.group.resolve_factor(f.trim())))
                    .collect::<Result<_>>()?;
                at(l, SphereSpec::separating(&self.group, &idx))?
            }
            "nonseparating" => {
                let (v, l) = b.require("factor")?;
                let idx = at(l, self.group.resolve_factor(v))?;
                at(l, SphereSpec::nonseparating(&self.group, idx))?
            }
            other => return Err(Error::Config { line: l, msg: format!("unknown sphere kind `{}`", other) }),
        };
        Ok(match b.get("whisker") {
            Some((v, l)) => s.with_whisker(at(l, parse_word(&self.group, v))?),
            None => s,
        })
    }

    fn essential_block(&self, b: &Block) -> Result<EssentialKnotClass> {
        b.check_keys(&["gamma", "value"])?;
        let (g, lg) = b.require("gamma")?;
        let gamma = at(lg, parse_word(&self.group, g))?;
        let coset = at(lg, Coset::with_window(gamma.clone(), self.bounds.coset_window))?;
        let (v, l) = b.require("value")?;
        let r = at(l, crate::syntax::parse_ring(&self.group, v))?;
        let z = at(l, Tree0Elem::from_knot_ring(&r, T0Mode::DoubleCoset(coset)))?;
        at(l, EssentialKnotClass::new(gamma, z))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn link(&self, name: &str) -> Option<&LinkClass> {
        self.links.get(name)
    }

    pub fn sphere(&self, name: &str) -> Option<&SphereSpec> {
        self.spheres.get(name)
    }

    pub fn essential(&self, name: &str) -> Option<&EssentialKnotClass> {
        self.essentials.get(name)
    }

    pub fn links(&self) -> impl Iterator<Item = (&str, &LinkClass)> {
        self.links.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn spheres(&self) -> impl Iterator<Item = (&str, &SphereSpec)> {
        self.spheres.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn essentials(&self) -> impl Iterator<Item = (&str, &EssentialKnotClass)> {
        self.essentials.iter().map(|(k, v)| (k.as_str(), v))
    }
}
