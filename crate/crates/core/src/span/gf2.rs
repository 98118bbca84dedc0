/// A dense row over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitRow {
    words: Vec<u64>,
}

impl BitRow {
    pub fn new(len: usize) -> BitRow {
        BitRow { words: vec![0; len.div_ceil(64)] }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if self.get(i) != v {
            self.flip(i);
        }
    }

    fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

/// Solves `M x = rhs` over GF(2); `rows[i]` has `ncols` entries.
pub fn solve_gf2(rows: &[BitRow], rhs: &[bool], ncols: usize) -> Option<Vec<bool>> {
    let mut aug: Vec<BitRow> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut a = BitRow::new(ncols + 1);
            for c in 0..ncols {
                a.set(c, r.get(c));
            }
            a.set(ncols, b);
            a
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut top = 0;
    for c in 0..ncols {
        let Some(p) = (top..aug.len()).find(|&r| aug[r].get(c)) else { continue };
        aug.swap(top, p);
        let pivot = aug[top].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != top && row.get(c) {
                row.xor(&pivot);
            }
        }
        pivot_cols.push(c);
        top += 1;
    }
    if aug[top..].iter().any(|r| r.get(ncols)) {
        return None;
    }
    let mut x = vec![false; ncols];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[r].get(ncols);
    }
    Some(x)
}
