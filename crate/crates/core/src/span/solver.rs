use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::gf2::{solve_gf2, BitRow};
use super::hermite::column_echelon;
use crate::error::{Error, Result};
use crate::tree::{Tree1Elem, TreeModule, YTree};

/// Default bound on the number of rows and of columns of a span system.
pub const DEFAULT_DIM_CAP: usize = 4000;

/// Is `target` an integer combination of `generators`?
#[derive(Debug, Clone)]
pub struct SpanProblem {
    target: Tree1Elem,
    generators: Vec<Tree1Elem>,
    unique: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanVerdict {
    /// Coefficients, one per generator in the order given.
    Witness(Vec<i64>),
    Infeasible,
}

impl SpanVerdict {
    pub fn is_witness(&self) -> bool {
        matches!(self, SpanVerdict::Witness(_))
    }
}

struct Coordinates {
    free: BTreeMap<YTree, usize>,
    torsion: BTreeMap<YTree, usize>,
}

impl SpanProblem {
    pub fn new(target: Tree1Elem, generators: Vec<Tree1Elem>) -> Result<SpanProblem> {
        let mut unique: Vec<usize> = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            target.compatible(g)?;
            if !unique.iter().any(|&u| generators[u] == *g) {
                unique.push(i);
            }
        }
        Ok(SpanProblem { target, generators, unique })
    }

    pub fn target(&self) -> &Tree1Elem {
        &self.target
    }

    pub fn generators(&self) -> &[Tree1Elem] {
        &self.generators
    }

    fn coordinates(&self) -> Coordinates {
        let mut free = BTreeMap::new();
        let mut torsion = BTreeMap::new();
        for e in std::iter::once(&self.target).chain(self.unique.iter().map(|&u| &self.generators[u])) {
            for (t, _) in e.free_terms() {
                let n = free.len();
                free.entry(t.clone()).or_insert(n);
            }
            for t in e.torsion_terms() {
                let n = torsion.len();
                torsion.entry(t.clone()).or_insert(n);
            }
        }
        Coordinates { free, torsion }
    }

    /// Checks `sum d_i gen_i == target` by direct substitution.
    pub fn verify(&self, coeffs: &[i64]) -> bool {
        if coeffs.len() != self.generators.len() {
            return false;
        }
        let mut acc = self.target.zero_like();
        for (g, &c) in self.generators.iter().zip(coeffs) {
            acc = acc.plus(&g.scale(c));
        }
        acc == self.target
    }
}

/// Exact decision over the integers, with torsion coordinates mod 2.
pub fn span_member(p: &SpanProblem) -> Result<SpanVerdict> {
    span_member_capped(p, DEFAULT_DIM_CAP)
}

pub fn span_member_capped(p: &SpanProblem, cap: usize) -> Result<SpanVerdict> {
    let coords = p.coordinates();
    let n = p.unique.len();
    let rows = coords.free.len();
    let trows = coords.torsion.len();
    if rows + trows > cap || n > cap {
        return Err(Error::DimensionOverflow { rows: rows + trows, cols: n, cap });
    }

    let mut cols = vec![vec![BigInt::zero(); rows]; n];
    let mut tor = vec![BitRow::new(n); trows];
    for (c, &u) in p.unique.iter().enumerate() {
        let g = &p.generators[u];
        for (t, v) in g.free_terms() {
            cols[c][coords.free[t]] = BigInt::from(v);
        }
        for t in g.torsion_terms() {
            tor[coords.torsion[t]].flip(c);
        }
    }
    let mut b = vec![BigInt::zero(); rows];
    for (t, v) in p.target.free_terms() {
        b[coords.free[t]] = BigInt::from(v);
    }
    let mut bt = vec![false; trows];
    for t in p.target.torsion_terms() {
        bt[coords.torsion[t]] = true;
    }

    let ech = column_echelon(cols, rows);
    let Some(y) = ech.solve(&b) else { return Ok(SpanVerdict::Infeasible) };
    let mut d = ech.lift(&y);
    let kernel = ech.kernel();

    // Torsion rows: A_t (d0 + K y') = b_t over GF(2).
    let odd = |x: &BigInt| x.is_odd();
    let d_bits: Vec<bool> = d.iter().map(odd).collect();
    let k_bits: Vec<Vec<bool>> = kernel.iter().map(|col| col.iter().map(odd).collect()).collect();
    let mut m_rows = Vec::with_capacity(trows);
    let mut rhs = Vec::with_capacity(trows);
    for (t, row) in tor.iter().enumerate() {
        let mut acc = bt[t];
        let mut mr = BitRow::new(kernel.len());
        for c in 0..n {
            if row.get(c) {
                acc ^= d_bits[c];
                for (k, kb) in k_bits.iter().enumerate() {
                    if kb[c] {
                        mr.flip(k);
                    }
                }
            }
        }
        m_rows.push(mr);
        rhs.push(acc);
    }
    let Some(yk) = solve_gf2(&m_rows, &rhs, kernel.len()) else { return Ok(SpanVerdict::Infeasible) };
    for (k, on) in yk.iter().enumerate() {
        if *on {
            for (x, kv) in d.iter_mut().zip(&kernel[k]) {
                *x += kv;
            }
        }
    }

    let mut coeffs = vec![0i64; p.generators.len()];
    for (c, &u) in p.unique.iter().enumerate() {
        coeffs[u] = d[c].to_i64().ok_or(Error::CoefficientOverflow)?;
    }
    if !p.verify(&coeffs) {
        return Err(Error::Domain("witness failed re-substitution".into()));
    }
    Ok(SpanVerdict::Witness(coeffs))
}

/// One coordinate of the system reduced mod 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Row {
    pub tree: YTree,
    pub torsion: bool,
    /// Generators (by position) with an odd entry in this row.
    pub columns: Vec<usize>,
    pub rhs: bool,
}

/// The span system with every coordinate reduced mod 2; a necessary
/// condition for membership.
#[derive(Debug, Clone)]
pub struct Gf2System {
    pub rows: Vec<Gf2Row>,
    pub ncols: usize,
}

impl Gf2System {
    pub fn solve(&self) -> Option<Vec<bool>> {
        let rows: Vec<BitRow> = self
            .rows
            .iter()
            .map(|r| {
                let mut b = BitRow::new(self.ncols);
                for &c in &r.columns {
                    b.flip(c);
                }
                b
            })
            .collect();
        let rhs: Vec<bool> = self.rows.iter().map(|r| r.rhs).collect();
        solve_gf2(&rows, &rhs, self.ncols)
    }

    /// Whether some row has exactly these odd columns and right-hand side.
    pub fn has_row(&self, columns: &[usize], rhs: bool) -> bool {
        let mut want = columns.to_vec();
        want.sort_unstable();
        self.rows.iter().any(|r| r.columns == want && r.rhs == rhs)
    }
}

pub fn mod2_system(p: &SpanProblem) -> Gf2System {
    let coords = p.coordinates();
    let mut rows: Vec<Gf2Row> = coords
        .free
        .keys()
        .map(|t| (t, false))
        .chain(coords.torsion.keys().map(|t| (t, true)))
        .map(|(t, torsion)| {
            let entry = |e: &Tree1Elem| -> bool {
                if torsion {
                    e.torsion_terms().any(|x| x == t)
                } else {
                    e.free_terms().any(|(x, c)| x == t && c % 2 != 0)
                }
            };
            let columns = p.generators.iter().enumerate().filter(|(_, g)| entry(g)).map(|(i, _)| i).collect();
            Gf2Row { tree: t.clone(), torsion, columns, rhs: entry(&p.target) }
        })
        .collect();
    rows.retain(|r| r.rhs || !r.columns.is_empty());
    Gf2System { rows, ncols: p.generators.len() }
}
