//! Arithmetic and echelon forms over the prime field `F_p`, `p < 2^32`.

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b) % p
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse by Fermat; `a` must be nonzero mod `p`.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A dense matrix over `F_p`, row-major, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FpMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn apply(&self, v: &[u64], p: u64) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                row.iter().zip(v).fold(0, |s, (a, x)| (s + a * x) % p)
            })
            .collect()
    }

    pub fn mul(&self, other: &FpMatrix, p: u64) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % p;
                }
            }
        }
        out
    }
}

/// A subspace of `F_p^n` in reduced echelon form; the row list is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpEchelon {
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl FpEchelon {
    pub fn new() -> Self {
        FpEchelon { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: Vec<u64>, p: u64) -> Vec<u64> {
        for (r, &piv) in self.rows.iter().zip(&self.pivots) {
            let f = v[piv];
            if f == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(r) {
                *x = sub(*x, mul(f, *y, p), p);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64], p: u64) -> bool {
        self.reduce(v.to_vec(), p).iter().all(|&x| x == 0)
    }

    pub fn insert(&mut self, v: Vec<u64>, p: u64) -> bool {
        let mut v = self.reduce(v, p);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(v[piv], p);
        for x in v.iter_mut() {
            *x = mul(*x, s, p);
        }
        for r in self.rows.iter_mut() {
            let f = r[piv];
            if f != 0 {
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = sub(*x, mul(f, *y, p), p);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, v);
        true
    }
}

impl Default for FpEchelon {
    fn default() -> Self {
        Self::new()
    }
}

/// A basis of `{x : M x = 0}` over `F_p`.
pub fn kernel(m: &FpMatrix, p: u64) -> Vec<Vec<u64>> {
    let mut e = FpEchelon::new();
    for i in 0..m.rows {
        e.insert(m.data[i * m.cols..(i + 1) * m.cols].to_vec(), p);
    }
    let free: Vec<usize> = (0..m.cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; m.cols];
            v[f] = 1;
            for (r, &piv) in e.rows.iter().zip(&e.pivots) {
                v[piv] = (p - r[f]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        assert_eq!(mul(inv(3, 7), 3, 7), 1);
        assert!(is_prime(61) && !is_prime(91));
        let m = FpMatrix { rows: 1, cols: 2, data: vec![1, 1] };
        let k = kernel(&m, 5);
        assert_eq!(k, vec![vec![4, 1]]);
        let mut e = FpEchelon::new();
        assert!(e.insert(vec![2, 4], 5));
        assert!(!e.insert(vec![1, 2], 5));
        assert_eq!(e.rows, vec![vec![1, 2]]);
    }
}
