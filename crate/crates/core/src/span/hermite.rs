use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Column echelon form `H = A U` with `U` unimodular, stored column-major.
pub(crate) struct Echelon {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    /// `(row, column)` of each pivot; pivot columns are `0..rank` in order.
    pub pivots: Vec<(usize, usize)>,
}

fn axpy(cols: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    let (a, b) = if dst < src {
        let (l, r) = cols.split_at_mut(src);
        (&mut l[dst], &r[0])
    } else {
        let (l, r) = cols.split_at_mut(dst);
        (&mut r[0], &l[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Reduces the `rows x n` matrix given as columns.
pub(crate) fn column_echelon(mut h: Vec<Vec<BigInt>>, rows: usize) -> Echelon {
    let n = h.len();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|c| (0..n).map(|r| BigInt::from((r == c) as i64)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut pc = 0;
    for row in 0..rows {
        if pc == n {
            break;
        }
        loop {
            let best = (pc..n)
                .filter(|&c| !h[c][row].is_zero())
                .min_by(|&a, &b| h[a][row].abs().cmp(&h[b][row].abs()));
            let Some(best) = best else { break };
            h.swap(pc, best);
            u.swap(pc, best);
            let mut clean = true;
            for c in pc + 1..n {
                if h[c][row].is_zero() {
                    continue;
                }
                let q = h[c][row].div_floor(&h[pc][row]);
                axpy(&mut h, c, pc, &q);
                axpy(&mut u, c, pc, &q);
                clean &= h[c][row].is_zero();
            }
            if clean {
                if h[pc][row].is_negative() {
                    for x in h[pc].iter_mut().chain(u[pc].iter_mut()) {
                        *x = -&*x;
                    }
                }
                pivots.push((row, pc));
                pc += 1;
                break;
            }
        }
    }
    Echelon { h, u, pivots }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Integer `y` with `H y = b` on the pivot columns, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let rank = self.rank();
        let mut y = vec![BigInt::zero(); rank];
        let mut next = 0;
        for (r, br) in b.iter().enumerate() {
            let mut s = br.clone();
            for k in 0..next {
                if !self.h[k][r].is_zero() {
                    s -= &self.h[k][r] * &y[k];
                }
            }
            if next < rank && self.pivots[next].0 == r {
                let p = &self.h[next][r];
                if !s.is_multiple_of(p) {
                    return None;
                }
                y[next] = s / p;
                next += 1;
            } else if !s.is_zero() {
                return None;
            }
        }
        Some(y)
    }

    /// `U[:, ..rank] y`.
    pub fn lift(&self, y: &[BigInt]) -> Vec<BigInt> {
        let n = self.u.len();
        let mut d = vec![BigInt::zero(); n];
        for (k, yk) in y.iter().enumerate() {
            if yk.is_zero() {
                continue;
            }
            for (i, x) in self.u[k].iter().enumerate() {
                d[i] += x * yk;
            }
        }
        d
    }

    /// Basis of the integer kernel of `A`.
    pub fn kernel(&self) -> &[Vec<BigInt>] {
        &self.u[self.rank()..]
    }
}
