//! Linear algebra over the prime field `F_p`.

/// Row space of a matrix with `cols` columns, kept in reduced echelon form
/// while rows are streamed in.
#[derive(Clone, Debug)]
pub struct RowSpace {
    p: u32,
    cols: usize,
    // (pivot column, row) with row[pivot] = 1
    rows: Vec<(usize, Vec<u32>)>,
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let mut r = 1u64;
    let mut b = (a % p) as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

impl RowSpace {
    pub fn new(p: u32, cols: usize) -> Self {
        RowSpace { p, cols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    fn reduce(&self, row: &mut [u32]) {
        let p = self.p;
        for (pc, r) in &self.rows {
            let c = row[*pc];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(r) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<u32>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        if self.is_full() {
            return false;
        }
        self.reduce(&mut row);
        let Some(pc) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p;
        let inv = inv_mod(row[pc], p);
        for x in row.iter_mut() {
            *x = *x * inv % p;
        }
        for (_, r) in self.rows.iter_mut() {
            let c = r[pc];
            if c != 0 {
                for (x, y) in r.iter_mut().zip(&row) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
        self.rows.push((pc, row));
        true
    }

    pub fn contains(&self, row: &[u32]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(|&x| x == 0)
    }

    /// Basis of `{v : row·v = 0 for every row}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let pivots: Vec<usize> = self.rows.iter().map(|(pc, _)| *pc).collect();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (pc, r) in &self.rows {
                    v[*pc] = (p - r[free]) % p;
                }
                v
            })
            .collect()
    }

    /// Reduced echelon rows (a basis of the row space).
    pub fn basis(&self) -> Vec<Vec<u32>> {
        let mut rows: Vec<_> = self.rows.clone();
        rows.sort_by_key(|(pc, _)| *pc);
        rows.into_iter().map(|(_, r)| r).collect()
    }
}

/// Square matrix over `F_p`, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub dim: usize,
    /// `cols[j]` is the image of basis vector `j`.
    pub cols: Vec<Vec<u32>>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let cols = (0..dim)
            .map(|j| {
                let mut c = vec![0u32; dim];
                c[j] = 1;
                c
            })
            .collect();
        Matrix { dim, cols }
    }

    pub fn apply(&self, v: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for (c, col) in v.iter().zip(&self.cols) {
            if *c == 0 {
                continue;
            }
            for (o, x) in out.iter_mut().zip(col) {
                *o = (*o + c * x) % p;
            }
        }
        out
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Matrix, p: u32) -> Matrix {
        Matrix { dim: self.dim, cols: other.cols.iter().map(|c| self.apply(c, p)).collect() }
    }

    pub fn rank(&self, p: u32) -> usize {
        let mut rs = RowSpace::new(p, self.dim);
        for c in &self.cols {
            rs.insert(c.clone());
        }
        rs.rank()
    }

    /// Flattened column-major entries, the canonical key of the map.
    pub fn key(&self) -> Vec<u32> {
        self.cols.concat()
    }
}

/// Solves `Σ x_j cols[j] = rhs`; returns one solution if any.
pub fn solve(cols: &[Vec<u32>], rhs: &[u32], p: u32) -> Option<Vec<u32>> {
    let n = cols.len();
    let m = rhs.len();
    // augmented rows: [A | rhs]
    let mut rows: Vec<Vec<u32>> = (0..m)
        .map(|i| {
            let mut r: Vec<u32> = cols.iter().map(|c| c[i] % p).collect();
            r.push(rhs[i] % p);
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(pr) = (rank..m).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivot_cols.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[n] != 0) {
        return None;
    }
    let mut x = vec![0u32; n];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = rows[i][n];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_small_system() {
        // x + y + z = 0 over F_3
        let mut rs = RowSpace::new(3, 3);
        rs.insert(vec![1, 1, 1]);
        rs.insert(vec![2, 2, 2]);
        assert_eq!(rs.rank(), 1);
        let k = rs.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<u32>() % 3, 0);
        }
    }

    #[test]
    fn solve_and_compose() {
        let a = Matrix { dim: 2, cols: vec![vec![1, 1], vec![0, 1]] };
        let x = solve(&a.cols, &[1, 0], 2).unwrap();
        assert_eq!(a.apply(&x, 2), vec![1, 0]);
        let a2 = a.compose(&a, 2);
        assert_eq!(a2, Matrix::identity(2));
        assert!(solve(&[vec![0, 0]], &[1, 0], 2).is_none());
        assert_eq!(a.rank(2), 2);
    }
}
