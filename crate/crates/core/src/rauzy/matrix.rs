use serde::{Deserialize, Serialize};

/// Square matrix of edge multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyMatrix {
    size: usize,
    entries: Vec<u32>,
}

impl AdjacencyMatrix {
    pub fn zeros(size: usize) -> Self {
        AdjacencyMatrix {
            size,
            entries: vec![0; size * size],
        }
    }

    /// Builds from rows; panics if the rows are not square.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let size = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == size),
            "adjacency matrix must be square"
        );
        AdjacencyMatrix {
            size,
            entries: rows.concat(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.size + j]
    }

    pub fn add(&mut self, i: usize, j: usize, count: u32) {
        self.entries[i * self.size + j] += count;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        if self.size == 0 {
            return Vec::new();
        }
        self.entries
            .chunks(self.size)
            .map(<[u32]>::to_vec)
            .collect()
    }

    pub fn edge_count(&self) -> u64 {
        self.entries.iter().map(|&x| x as u64).sum()
    }

    /// Principal submatrix on the given indices, in that order.
    pub fn submatrix(&self, indices: &[usize]) -> AdjacencyMatrix {
        let mut m = AdjacencyMatrix::zeros(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m.entries[a * indices.len() + b] = self.get(i, j);
            }
        }
        m
    }

    pub fn to_bool(&self) -> BoolMatrix {
        let mut b = BoolMatrix::zeros(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                if self.get(i, j) > 0 {
                    b.set(i, j);
                }
            }
        }
        b
    }

    /// Number of walks with exactly `len` edges, per start vertex, saturating.
    pub fn walk_counts(&self, len: usize) -> Vec<u128> {
        let mut v = vec![1u128; self.size];
        for _ in 0..len {
            v = (0..self.size)
                .map(|i| {
                    (0..self.size).fold(0u128, |acc, j| {
                        acc.saturating_add((self.get(i, j) as u128).saturating_mul(v[j]))
                    })
                })
                .collect();
        }
        v
    }
}

/// Boolean matrix with bit-packed rows; products saturate at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMatrix {
    size: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(size: usize) -> Self {
        let words = size.div_ceil(64).max(1);
        BoolMatrix {
            size,
            words,
            bits: vec![0; size * words],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn unset(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] &= !(1 << (j % 64));
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn mul(&self, other: &BoolMatrix) -> BoolMatrix {
        assert_eq!(self.size, other.size);
        let mut out = BoolMatrix::zeros(self.size);
        for i in 0..self.size {
            let dst = i * self.words;
            for j in 0..self.size {
                if self.get(i, j) {
                    for (w, &bit) in other.row(j).iter().enumerate() {
                        out.bits[dst + w] |= bit;
                    }
                }
            }
        }
        out
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: usize) -> BoolMatrix {
        let mut result = BoolMatrix::identity(self.size);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// First `(i, j)` in row-major order with a zero entry.
    pub fn first_zero(&self) -> Option<(usize, usize)> {
        (0..self.size)
            .flat_map(|i| (0..self.size).map(move |j| (i, j)))
            .find(|&(i, j)| !self.get(i, j))
    }

    pub fn all_ones(&self) -> bool {
        self.first_zero().is_none()
    }
}
