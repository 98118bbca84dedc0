mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use whitney_core::calculus::*;
use whitney_core::config::{Bounds, SessionConfig};
use whitney_core::oracle::{brute_span, triple_system};
use whitney_core::span::*;
use whitney_core::syntax::{parse_expression, parse_group, parse_ring, parse_word, ParseContext, Value};
use whitney_core::tree::canonicalize_y;
use whitney_core::{Coset, Error, Group, Result, T0Mode, T1Mode, Tree0Elem, Tree1Elem, TreeModule, Word};

use report::{Report, Status};

const DEFAULT_GROUP: &str = "klein(a, f)";

#[derive(Parser)]
#[command(name = "whitney", version, about = "Intersection invariants of knots and links in 3-manifolds")]
struct Cli {
    /// Group declaration, e.g. `klein(a, f)` or `free_product(X: cyclic(x), M: free(g, h))`.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Session config file with group, link, sphere and bounds blocks.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Emit the versioned JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized oracle probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    rmax: Option<usize>,
    #[arg(long, global = true)]
    whisker_length: Option<usize>,
    #[arg(long, global = true)]
    dim_cap: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and canonicalize a word, ring element or tree expression.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        labels: usize,
    },
    /// Canonicalize an order-0 tree expression, optionally acting by a whisker change.
    T0 {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        labels: usize,
        /// Left coset generator gamma; decorations live in the double cosets.
        #[arg(long)]
        coset: Option<String>,
        #[arg(long)]
        psi: Option<String>,
    },
    /// Canonicalize an order-1 tree expression.
    T1 {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        labels: usize,
        #[arg(long)]
        coset: Option<String>,
        #[arg(long)]
        psi: Option<String>,
        /// Cross-check each term against the bounded rewriting closure.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 8)]
        oracle_depth: usize,
    },
    /// The sphere map sigma_S on a word.
    Sigma {
        word: Option<String>,
        #[command(flatten)]
        sphere: SphereArgs,
    },
    /// tau_1 of a link paired with a sphere.
    Pairing {
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 1)]
        labels: usize,
        #[command(flatten)]
        sphere: SphereArgs,
    },
    /// The INT relation INT_ij(g) of a null-homotopic link.
    IntNull {
        #[arg(long)]
        z: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 1)]
        j: usize,
        #[arg(long, default_value_t = 1)]
        labels: usize,
    },
    /// The INT relation of an essential knot at beta^r.
    IntEssential {
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        z: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 1)]
        r: i64,
    },
    /// Phi(z) generators for a sphere over the whisker ball.
    Phi {
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 1)]
        labels: usize,
        /// Comma-separated whiskers; defaults to the ball of the whisker length bound.
        #[arg(long)]
        whiskers: Option<String>,
        #[command(flatten)]
        sphere: SphereArgs,
    },
    /// Classify a whisker change against the stabilizer of z.
    Stab {
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 1)]
        labels: usize,
        /// Comma-separated whisker change, one word per component.
        #[arg(long)]
        psi: String,
    },
    /// Compose concordance invariants; each part is `TAU @ w1, w2`, prefixed `-` for a reversed part.
    Compose {
        #[arg(long = "part", required = true, allow_hyphen_values = true)]
        parts: Vec<String>,
        #[arg(long, default_value_t = 1)]
        labels: usize,
    },
    /// tau_1 difference of a clasp move.
    ClaspDelta {
        #[arg(long = "move", value_enum)]
        mv: MoveKind,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: Option<String>,
        #[arg(long, default_value_t = 1)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value_t = 1)]
        j: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        labels: usize,
    },
    /// Windowed span membership of a target in a relation family.
    Member {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Cross-check the last window against brute-force search and random probes.
        #[arg(long)]
        oracle: bool,
    },
    /// Equality of two trees modulo a relation family and whisker changes.
    QuotientEqual {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// Candidate whisker changes, comma-separated, repeatable.
        #[arg(long)]
        psi: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MoveKind {
    Twist,
    Endpoint,
    SameArc,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum FamilyKind {
    Int,
    Phi,
    IntPhi,
    Essential,
}

#[derive(Args)]
struct SphereArgs {
    /// Sphere block name from the config.
    #[arg(long)]
    sphere: Option<String>,
    #[arg(long, conflicts_with = "nonsep")]
    sep: bool,
    #[arg(long)]
    nonsep: bool,
    /// Factors on the M' side of a separating sphere, comma-separated.
    #[arg(long)]
    mprime: Option<String>,
    /// The S^1 x S^2 factor of a nonseparating sphere.
    #[arg(long)]
    factor: Option<String>,
    /// Build the free product from generator prefixes, `NAME:prefix`; the first factor is M' or the S^1 x S^2 factor.
    #[arg(long, num_args = 1..)]
    split: Vec<String>,
    #[arg(long)]
    whisker: Option<String>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum, default_value = "int")]
    family: FamilyKind,
    #[arg(long)]
    z: String,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long, default_value_t = 1)]
    labels: usize,
    /// INT directions, comma-separated; defaults to the generators.
    #[arg(long)]
    directions: Option<String>,
    /// Use the whole ball of radius R for INT decorations.
    #[arg(long)]
    full_ball: bool,
    #[command(flatten)]
    sphere: SphereArgs,
}

struct Session {
    group: Group,
    config: Option<SessionConfig>,
    bounds: Bounds,
    seed: u64,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let name = command_name(&cli.cmd);
    let report = run(&cli).unwrap_or_else(|e| Report::error(name, &e.to_string()));
    print!("{}", report.render(cli.json));
    std::process::exit(report.exit_code());
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Normalize { .. } => "normalize",
        Command::T0 { .. } => "t0",
        Command::T1 { .. } => "t1",
        Command::Sigma { .. } => "sigma",
        Command::Pairing { .. } => "pairing",
        Command::IntNull { .. } => "int-null",
        Command::IntEssential { .. } => "int-essential",
        Command::Phi { .. } => "phi",
        Command::Stab { .. } => "stab",
        Command::Compose { .. } => "compose",
        Command::ClaspDelta { .. } => "clasp-delta",
        Command::Member { .. } => "member",
        Command::QuotientEqual { .. } => "quotient-equal",
    }
}

fn session(cli: &Cli) -> Result<Session> {
    let mut bounds = Bounds::default().with_env(|k| std::env::var(k).ok())?;
    let config = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config { line: 0, msg: format!("{}: {}", p.display(), e) })?;
            let cfg = SessionConfig::parse_with_bounds(&text, bounds)?;
            bounds = *cfg.bounds();
            Some(cfg)
        }
        None => None,
    };
    if let Some(r) = cli.rmax {
        bounds.rmax = r;
    }
    if let Some(w) = cli.whisker_length {
        bounds.whisker_length = w;
    }
    if let Some(d) = cli.dim_cap {
        bounds.dim_cap = d;
    }
    let group = match (&cli.group, &config) {
        (Some(g), _) => parse_group(g)?,
        (None, Some(c)) => c.group().clone(),
        (None, None) => parse_group(DEFAULT_GROUP)?,
    };
    Ok(Session { group, config, bounds, seed: cli.seed })
}

fn run(cli: &Cli) -> Result<Report> {
    let name = command_name(&cli.cmd);
    // The split form of sigma builds its own group.
    if let Command::Sigma { word, sphere } = &cli.cmd {
        // `--split A:g B:h WORD` lets the word trail the split list.
        let mut split = sphere.split.clone();
        let word = match word {
            Some(w) => w.clone(),
            None => match split.last() {
                Some(w) if !w.contains(':') => split.pop().unwrap_or_default(),
                _ => return Err(Error::Domain("sigma needs a word".into())),
            },
        };
        if !split.is_empty() {
            let group = split_group(&word, &split)?;
            let s = Session { group, config: None, bounds: Bounds::default(), seed: cli.seed };
            return cmd_sigma(&s, &word, sphere);
        }
        let s = session(cli)?;
        return cmd_sigma(&s, &word, sphere);
    }
    let s = session(cli)?;
    let mut r = match &cli.cmd {
        Command::Normalize { expr, labels } => cmd_normalize(&s, expr, *labels),
        Command::T0 { expr, labels, coset, psi } => cmd_t0(&s, expr, *labels, coset.as_deref(), psi.as_deref()),
        Command::T1 { expr, labels, coset, psi, oracle, oracle_depth } => {
            cmd_t1(&s, expr, *labels, coset.as_deref(), psi.as_deref(), *oracle, *oracle_depth)
        }
        Command::Sigma { .. } => unreachable!(),
        Command::Pairing { z, labels, sphere } => {
            let z = s.link(z, *labels)?;
            let sp = s.sphere(sphere)?;
            let v = pairing_tau1_link_sphere(&z, &sp)?;
            let mut r = Report::new(name);
            r.line(v.to_string()).field("value", v.to_string());
            Ok(r)
        }
        Command::IntNull { z, g, i, j, labels } => {
            let z = s.link(z, *labels)?;
            let v = int_relations_null(&z, &s.word(g)?, *i, *j, *labels)?;
            let mut r = Report::new(name);
            r.line(v.to_string()).field("value", v.to_string());
            Ok(r)
        }
        Command::IntEssential { gamma, z, beta, r } => {
            let k = s.essential(gamma.as_deref(), z)?;
            let v = int_relations_essential(&k, &s.word(beta)?, *r)?;
            let mut rep = Report::new(name);
            rep.line(v.to_string()).field("value", v.to_string());
            Ok(rep)
        }
        Command::Phi { z, labels, whiskers, sphere } => {
            let z = s.link(z, *labels)?;
            let sp = s.sphere(sphere)?;
            let ws = match whiskers {
                Some(w) => s.words(w)?,
                None => s.group.ball(s.bounds.whisker_length),
            };
            let mut r = Report::new(name);
            let mut items = Vec::new();
            for a in &ws {
                let sa = sp.clone().with_whisker(a * sp.whisker());
                for k in 1..=z.m() {
                    let v = phi_generator(&z, &sa, k, *labels)?;
                    r.line(format!("a = {}, k = {}: {}", a, k, v));
                    items.push(json!({"whisker": a.to_string(), "component": k, "value": v.to_string()}));
                }
            }
            r.field("generators", items);
            Ok(r)
        }
        Command::Stab { z, labels, psi } => cmd_stab(&s, z, *labels, psi),
        Command::Compose { parts, labels } => cmd_compose(&s, parts, *labels),
        Command::ClaspDelta { mv, g, h, n, i, j, k, labels } => {
            let g = s.word(g)?;
            let mv = match mv {
                MoveKind::Twist => ClaspMove::Twist { n: *n, g, i: *i, j: *j },
                MoveKind::Endpoint => {
                    let h = h.as_deref().ok_or_else(|| Error::Domain("endpoint transposition needs --h".into()))?;
                    ClaspMove::EndpointTransposition { g, h: s.word(h)?, i: *i, j: *j, k: *k }
                }
                MoveKind::SameArc => ClaspMove::SameArcTransposition { g, i: *i },
            };
            let v = clasp_move_delta(&s.group, *labels, &mv)?;
            let mut r = Report::new(name);
            r.line(v.to_string()).field("value", v.to_string());
            Ok(r)
        }
        Command::Member { family, target, oracle } => cmd_member(&s, family, target, *oracle),
        Command::QuotientEqual { family, u, v, psi } => cmd_quotient(&s, family, u, v, psi),
    }?;
    r.field("group", s.group.to_string());
    Ok(r)
}

impl Session {
    fn word(&self, text: &str) -> Result<Word> {
        parse_word(&self.group, text)
    }

    fn words(&self, text: &str) -> Result<Vec<Word>> {
        text.split(',').map(|w| self.word(w.trim())).collect()
    }

    fn ctx(&self, labels: usize) -> ParseContext {
        ParseContext::new(&self.group).with_labels(labels)
    }

    /// A config link name, or a ring (knot) or order-0 tree expression.
    fn link(&self, text: &str, labels: usize) -> Result<LinkClass> {
        if let Some(l) = self.config.as_ref().and_then(|c| c.link(text.trim())) {
            return Ok(l.clone());
        }
        match parse_expression(&self.ctx(labels), text)? {
            Value::Word(w) => LinkClass::knot(&parse_ring(&self.group, &w.to_string())?),
            Value::Ring(r) if labels == 1 => LinkClass::knot(&r),
            Value::Ring(r) if r.is_zero() => LinkClass::new(Tree0Elem::zero(&self.group, labels, T0Mode::Plain)),
            Value::Tree0(t) => LinkClass::new(t),
            v => Err(Error::TypeMismatch { expected: "link class".into(), found: v.kind().into() }),
        }
    }

    fn essential(&self, gamma: Option<&str>, text: &str) -> Result<EssentialKnotClass> {
        if let Some(k) = self.config.as_ref().and_then(|c| c.essential(text.trim())) {
            return Ok(k.clone());
        }
        let gamma = gamma.ok_or_else(|| Error::Domain("an essential knot needs --gamma".into()))?;
        EssentialKnotClass::from_ring(self.word(gamma)?, &parse_ring(&self.group, text)?)
    }

    fn sphere(&self, a: &SphereArgs) -> Result<SphereSpec> {
        let base = if let Some(n) = &a.sphere {
            self.config
                .as_ref()
                .and_then(|c| c.sphere(n))
                .cloned()
                .ok_or_else(|| Error::Config { line: 0, msg: format!("no sphere `{}`", n) })?
        } else if a.nonsep {
            let f = a.factor.as_deref().unwrap_or("0");
            SphereSpec::nonseparating(&self.group, self.group.resolve_factor(f)?)?
        } else if a.sep {
            let mp = a.mprime.as_deref().unwrap_or("0");
            let idx: Vec<usize> =
                mp.split(',').map(|k| self.group.resolve_factor(k.trim())).collect::<Result<_>>()?;
            SphereSpec::separating(&self.group, &idx)?
        } else {
            return Err(Error::InvalidSplit("give --sphere, --sep or --nonsep".into()));
        };
        Ok(match &a.whisker {
            Some(w) => base.with_whisker(self.word(w)?),
            None => base,
        })
    }
}

/// `free_product(NAME1: free(..), NAME2: free(..))` with each generator of
/// `word` placed by its prefix; a lone generator makes a cyclic factor.
fn split_group(word: &str, split: &[String]) -> Result<Group> {
    let mut names: Vec<String> = word
        .split('*')
        .map(|t| t.split('^').next().unwrap_or("").trim().to_string())
        .filter(|t| !t.is_empty() && t != "1")
        .collect();
    names.sort();
    names.dedup();
    let mut factors = Vec::new();
    let mut used = 0;
    for s in split {
        let (fname, prefix) =
            s.split_once(':').ok_or_else(|| Error::InvalidSplit(format!("`{}` is not NAME:prefix", s)))?;
        let gens: Vec<&str> = names.iter().filter(|n| n.starts_with(prefix)).map(String::as_str).collect();
        if gens.is_empty() {
            return Err(Error::InvalidSplit(format!("no generator of `{}` starts with `{}`", word, prefix)));
        }
        used += gens.len();
        let kind = if gens.len() == 1 { "cyclic" } else { "free" };
        factors.push(format!("{}: {}({})", fname, kind, gens.join(", ")));
    }
    if used != names.len() {
        return Err(Error::InvalidSplit("every generator must match exactly one prefix".into()));
    }
    parse_group(&format!("free_product({})", factors.join(", ")))
}

fn cmd_normalize(s: &Session, expr: &str, labels: usize) -> Result<Report> {
    let v = parse_expression(&s.ctx(labels), expr)?;
    let mut r = Report::new("normalize");
    r.line(v.to_string()).field("kind", v.kind()).field("value", v.to_string());
    Ok(r)
}

fn cmd_t0(s: &Session, expr: &str, labels: usize, coset: Option<&str>, psi: Option<&str>) -> Result<Report> {
    let mut ctx = s.ctx(labels);
    if let Some(g) = coset {
        ctx = ctx.with_t0_mode(T0Mode::DoubleCoset(Coset::with_window(s.word(g)?, s.bounds.coset_window)?));
    }
    let t = whitney_core::syntax::parse_tree0(&ctx, expr)?;
    let mut r = Report::new("t0");
    r.field("value", t.to_string());
    match psi {
        Some(p) => {
            let moved = t.psi_action(&s.words(p)?)?;
            r.line(format!("{}\npsi . z = {}", t, moved)).field("acted", moved.to_string());
        }
        None => {
            r.line(t.to_string());
        }
    }
    Ok(r)
}

fn cmd_t1(
    s: &Session,
    expr: &str,
    labels: usize,
    coset: Option<&str>,
    psi: Option<&str>,
    oracle: bool,
    depth: usize,
) -> Result<Report> {
    let mut ctx = s.ctx(labels);
    if let Some(g) = coset {
        ctx = ctx.with_t1_mode(T1Mode::LeftCoset(Coset::with_window(s.word(g)?, s.bounds.coset_window)?));
    }
    let t = whitney_core::syntax::parse_tree1(&ctx, expr)?;
    let mut r = Report::new("t1");
    r.line(t.to_string()).field("value", t.to_string());
    if let Some(p) = psi {
        let moved = t.psi_action(&s.words(p)?)?;
        r.line(format!("psi . t = {}", moved)).field("acted", moved.to_string());
    }
    if oracle {
        if coset.is_some() {
            return Err(Error::Unsupported("the rewriting oracle covers plain decorations only".into()));
        }
        let sys = triple_system(depth);
        let mut checked = 0;
        let mut problems = Vec::new();
        for term in t.terms() {
            let cl = sys.orbit_closure((term.tree.labels(), term.tree.decos().clone()))?;
            if cl.torsion != term.torsion {
                problems.push(format!("{}: torsion disagrees", term.tree));
            }
            for ((l, d), sign) in &cl.elements {
                let y = canonicalize_y(*l, d.clone(), &T1Mode::Plain)?;
                checked += 1;
                if y.tree != term.tree || (!term.torsion && y.sign != *sign) {
                    problems.push(format!("{}: orbit element {:?} canonicalizes to {}", term.tree, d, y.tree));
                }
            }
            if !cl.saturated {
                problems.push(format!("{}: closure not saturated at depth {}", term.tree, depth));
            }
        }
        let ok = problems.is_empty();
        r.line(format!("oracle: {} ({} orbit elements checked)", if ok { "consistent" } else { "MISMATCH" }, checked))
            .field("oracle", json!({"consistent": ok, "checked": checked, "problems": problems}));
        for p in problems {
            r.line(format!("  {}", p));
        }
    }
    Ok(r)
}

fn cmd_sigma(s: &Session, word: &str, a: &SphereArgs) -> Result<Report> {
    let g = s.word(word)?;
    let args_sphere = if a.split.iter().all(|p| !p.contains(':')) {
        s.sphere(a)?
    } else {
        let base = if a.nonsep {
            SphereSpec::nonseparating(&s.group, 0)?
        } else {
            SphereSpec::separating(&s.group, &[0])?
        };
        match &a.whisker {
            Some(w) => base.with_whisker(s.word(w)?),
            None => base,
        }
    };
    let v = sigma_of(&args_sphere, &g)?;
    let expanded = v.expand().left_mul(args_sphere.whisker());
    let mut r = Report::new("sigma");
    r.line(v.to_string())
        .field("group", s.group.to_string())
        .field("factored", v.to_string())
        .field("expanded", expanded.to_string());
    if !args_sphere.whisker().is_identity() {
        r.line(format!("with whisker: {}", expanded));
    }
    Ok(r)
}

fn cmd_stab(s: &Session, z: &str, labels: usize, psi: &str) -> Result<Report> {
    let z = s.link(z, labels)?;
    let psi = s.words(psi)?;
    let v = stabilizer_classify(&z, &psi)?;
    let mut r = Report::new("stab");
    match &v {
        StabilizerVerdict::NotStabilizer => {
            r.line("NotStabilizer").field("verdict", "not_stabilizer");
        }
        StabilizerVerdict::Untwisted => {
            r.line("Untwisted").field("verdict", "untwisted");
        }
        StabilizerVerdict::Twisted(orbits) => {
            r.line("Twisted").field("verdict", "twisted");
            let mut items = Vec::new();
            for o in orbits {
                let els: Vec<String> = o.elements.iter().map(Word::to_string).collect();
                r.line(format!("  block ({},{}): {{{}}}", o.i, o.j, els.join(", ")));
                items.push(json!({"i": o.i, "j": o.j, "elements": els}));
            }
            r.field("orbits", items);
        }
    }
    if z.m() == 1 && s.group.contains_klein() && psi.len() == 1 {
        let form = klein_twisted_form_check(z.z(), &psi[0]).unwrap_or(false);
        r.line(format!("twisted form: {}", if form { "yes" } else { "no" })).field("twisted_form", form);
    }
    Ok(r)
}

fn cmd_compose(s: &Session, parts: &[String], labels: usize) -> Result<Report> {
    let mut t0 = Vec::new();
    let mut t1 = Vec::new();
    for p in parts {
        let (inverse, body) = match p.trim().strip_prefix('-') {
            Some(rest) if rest.trim_start().starts_with(':') => (true, rest.trim_start()[1..].to_string()),
            _ => (false, p.clone()),
        };
        let (tau, lat) = body
            .rsplit_once('@')
            .ok_or_else(|| Error::Domain(format!("part `{}` is not `TAU @ latitude`", p)))?;
        let lat = s.words(lat)?;
        match parse_expression(&s.ctx(labels), tau)? {
            Value::Tree1(t) => t1.push(part(inverse, t, lat)),
            Value::Tree0(t) => t0.push(part(inverse, t, lat)),
            Value::Ring(r) if r.is_zero() => t1.push(part(inverse, Tree1Elem::zero(&s.group, labels, T1Mode::Plain), lat)),
            v => return Err(Error::TypeMismatch { expected: "tree".into(), found: v.kind().into() }),
        }
    }
    if !t0.is_empty() && !t1.is_empty() {
        return Err(Error::Incompatible("parts mix order-0 and order-1 trees".into()));
    }
    let (value, lat) = if t0.is_empty() {
        let (v, l) = compose_invariants(t1)?;
        (v.to_string(), l)
    } else {
        let (v, l) = compose_invariants(t0)?;
        (v.to_string(), l)
    };
    let lat: Vec<String> = lat.iter().map(Word::to_string).collect();
    let mut r = Report::new("compose");
    r.line(format!("tau = {}", value))
        .line(format!("latitude = ({})", lat.join(", ")))
        .field("value", value)
        .field("latitude", lat);
    Ok(r)
}

fn part<T>(inverse: bool, tau: T, latitude: Vec<Word>) -> ConcordancePart<T> {
    if inverse {
        ConcordancePart::Inverse { tau, latitude }
    } else {
        ConcordancePart::Forward { tau, latitude }
    }
}

// Owns the families so the union can borrow them.
struct Families {
    int: Option<IntFamily>,
    phi: Option<PhiFamily>,
    essential: Option<EssentialIntFamily>,
    mode: T1Mode,
    labels: usize,
}

impl Families {
    fn union(&self) -> UnionFamily<'_> {
        let mut v: Vec<&dyn RelationFamily> = Vec::new();
        if let Some(f) = &self.int {
            v.push(f);
        }
        if let Some(f) = &self.phi {
            v.push(f);
        }
        if let Some(f) = &self.essential {
            v.push(f);
        }
        UnionFamily(v)
    }
}

fn families(s: &Session, a: &FamilyArgs) -> Result<Families> {
    if a.family == FamilyKind::Essential {
        let k = s.essential(a.gamma.as_deref(), &a.z)?;
        let mode = T1Mode::LeftCoset(k.coset().clone());
        return Ok(Families { int: None, phi: None, essential: Some(EssentialIntFamily::new(k)?), mode, labels: 1 });
    }
    let z = s.link(&a.z, a.labels)?;
    let labels = a.labels.max(z.m());
    let int = if matches!(a.family, FamilyKind::Int | FamilyKind::IntPhi) {
        let mut f = IntFamily::new(z.clone(), labels).with_full_ball(a.full_ball);
        if let Some(d) = &a.directions {
            f = f.with_directions(s.words(d)?);
        }
        Some(f)
    } else {
        None
    };
    let phi = if matches!(a.family, FamilyKind::Phi | FamilyKind::IntPhi) {
        let sp = s.sphere(&a.sphere)?;
        Some(PhiFamily::new(z, vec![("S".into(), sp)], s.group.ball(s.bounds.whisker_length), labels))
    } else {
        None
    };
    Ok(Families { int, phi, essential: None, mode: T1Mode::Plain, labels })
}

fn parse_target(s: &Session, fam: &Families, text: &str) -> Result<Tree1Elem> {
    let ctx = s.ctx(fam.labels).with_t1_mode(fam.mode.clone());
    whitney_core::syntax::parse_tree1(&ctx, text)
}

fn cmd_member(s: &Session, a: &FamilyArgs, target: &str, oracle: bool) -> Result<Report> {
    let fams = families(s, a)?;
    let union = fams.union();
    let t = parse_target(s, &fams, target)?;
    let v = span_member_windowed(&t, &union, s.bounds.rmax, s.bounds.dim_cap)?;
    let mut r = Report::new("member");
    r.field("target", t.to_string());
    let last_radius = match &v {
        WindowVerdict::Witness { radius, coefficients } => {
            r.line(format!("Witness at R = {}", radius)).field("verdict", "witness").field("radius", *radius);
            let mut items = Vec::new();
            for (id, d) in coefficients {
                r.line(format!("  {} * {}", d, id));
                items.push(json!({"relation": id, "coefficient": d}));
            }
            r.field("coefficients", items);
            *radius
        }
        WindowVerdict::NoWitnessUpTo(b) => {
            r.status(Status::BoundExhausted)
                .line(format!("NoWitnessUpTo({})", b))
                .field("verdict", "no_witness")
                .field("rmax", *b);
            *b
        }
    };
    if oracle {
        let members = union.window(last_radius)?;
        let gens: Vec<Tree1Elem> = members.iter().map(|m| m.element.clone()).collect();
        let mut o = serde_json::Map::new();
        if gens.len() <= 6 {
            let p = SpanProblem::new(t.clone(), gens.clone())?;
            let agree = match cross_check_verdict(&p)? {
                Ok(_) => true,
                Err(msg) => {
                    r.line(format!("oracle: DISAGREES: {}", msg));
                    false
                }
            };
            r.line(format!("oracle: brute force over {} relations {}", gens.len(), if agree { "agrees" } else { "disagrees" }));
            o.insert("brute_force_agrees".into(), agree.into());
        } else {
            r.line(format!("oracle: brute force skipped ({} relations)", gens.len()));
            o.insert("brute_force_agrees".into(), serde_json::Value::Null);
        }
        let probes = random_probes(&gens, s.seed, s.bounds.dim_cap)?;
        r.line(format!("oracle: {}/{} random in-span probes recovered (seed {})", probes.0, probes.1, s.seed));
        o.insert("probes".into(), json!({"recovered": probes.0, "total": probes.1, "seed": s.seed}));
        r.field("oracle", serde_json::Value::Object(o));
    }
    Ok(r)
}

fn cross_check_verdict(p: &SpanProblem) -> Result<std::result::Result<SpanVerdict, String>> {
    let fast = span_member(p)?;
    let slow = brute_span(p.target(), p.generators(), 2)?;
    if slow.is_witness() && !fast.is_witness() {
        return Ok(Err("brute force found a witness the solver missed".into()));
    }
    Ok(Ok(fast))
}

// Random +-1 combinations of up to four relations must be found in their span.
fn random_probes(gens: &[Tree1Elem], seed: u64, cap: usize) -> Result<(usize, usize)> {
    if gens.is_empty() {
        return Ok((0, 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = 8;
    let mut ok = 0;
    for _ in 0..total {
        let mut t = gens[0].zero_like();
        for _ in 0..rng.gen_range(1..=4) {
            let g = &gens[rng.gen_range(0..gens.len())];
            t = t.plus(&g.scale(if rng.gen_bool(0.5) { 1 } else { -1 }));
        }
        let p = SpanProblem::new(t, gens.to_vec())?;
        if let SpanVerdict::Witness(d) = span_member_capped(&p, cap)? {
            if p.verify(&d) {
                ok += 1;
            }
        }
    }
    Ok((ok, total))
}

fn cmd_quotient(s: &Session, a: &FamilyArgs, u: &str, v: &str, psi: &[String]) -> Result<Report> {
    let fams = families(s, a)?;
    let union = fams.union();
    let u = parse_target(s, &fams, u)?;
    let v = parse_target(s, &fams, v)?;
    let cands: Vec<Vec<Word>> = psi.iter().map(|p| s.words(p)).collect::<Result<_>>()?;
    let verdict = quotient_equal(&u, &v, &union, &cands, s.bounds.rmax, s.bounds.dim_cap)?;
    let mut r = Report::new("quotient-equal");
    match verdict {
        QuotientVerdict::Equal { psi, radius, coefficients } => {
            let psi: Vec<String> = psi.iter().map(Word::to_string).collect();
            r.line(format!("Equal at R = {} with psi = ({})", radius, psi.join(", ")))
                .field("verdict", "equal")
                .field("psi", psi)
                .field("radius", radius);
            let mut items = Vec::new();
            for (id, d) in coefficients {
                r.line(format!("  {} * {}", d, id));
                items.push(json!({"relation": id, "coefficient": d}));
            }
            r.field("coefficients", items);
        }
        QuotientVerdict::NotEqualUpTo { r_max, psi_tried } => {
            r.status(Status::BoundExhausted)
                .line(format!("NotEqualUpTo({}) over {} whisker changes", r_max, psi_tried))
                .field("verdict", "not_equal_up_to")
                .field("rmax", r_max)
                .field("psi_tried", psi_tried);
        }
    }
    Ok(r)
}
