/// Sparse binary matrix stored as per-column sorted row-index lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    num_rows: usize,
    cols: Vec<Vec<usize>>,
}

impl SparseMatrix {
    pub fn new(num_rows: usize, num_cols: usize) -> Self {
        SparseMatrix {
            num_rows,
            cols: vec![Vec::new(); num_cols],
        }
    }

    pub fn from_dense(dense: &[Vec<u8>]) -> Self {
        let num_rows = dense.len();
        let num_cols = dense.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(num_rows, num_cols);
        for (i, row) in dense.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.insert(i, j);
                }
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.insert(i, i);
        }
        m
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    /// Sets entry `(row, col)` to one. Idempotent.
    pub fn insert(&mut self, row: usize, col: usize) {
        assert!(row < self.num_rows && col < self.cols.len(), "entry out of range");
        let c = &mut self.cols[col];
        if let Err(pos) = c.binary_search(&row) {
            c.insert(pos, row);
        }
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.cols.get(col).is_some_and(|c| c.binary_search(&row).is_ok())
    }

    pub fn col(&self, col: usize) -> &[usize] {
        &self.cols[col]
    }

    pub fn cols(&self) -> &[Vec<usize>] {
        &self.cols
    }

    /// Per-row sorted column lists.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.num_rows];
        for (j, c) in self.cols.iter().enumerate() {
            for &i in c {
                rows[i].push(j);
            }
        }
        rows
    }

    pub fn ones(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn col_weight(&self, col: usize) -> usize {
        self.cols[col].len()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut d = vec![vec![0u8; self.num_cols()]; self.num_rows];
        for (j, c) in self.cols.iter().enumerate() {
            for &i in c {
                d[i][j] = 1;
            }
        }
        d
    }

    /// Copies the `rows x cols` block starting at `(row0, col0)`.
    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Vec<Vec<u8>> {
        let mut d = vec![vec![0u8; cols]; rows];
        for (dj, c) in self.cols[col0..col0 + cols].iter().enumerate() {
            for &i in c {
                if i >= row0 && i < row0 + rows {
                    d[i - row0][dj] = 1;
                }
            }
        }
        d
    }
}
