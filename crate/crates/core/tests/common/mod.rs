//! Closed forms for Grassmannians, computed without the library.

#![allow(dead_code)]

use num::{BigInt, One};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient by Pascal's rule.
pub fn binomial(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

/// Degree of `Gr(e,m)` in its Pluecker embedding: the number of standard
/// Young tableaux of the `e x (m-e)` rectangle, by the hook length formula.
pub fn grassmannian_degree(e: u64, m: u64) -> BigInt {
    let cols = m - e;
    let mut hooks = BigInt::one();
    for i in 0..e {
        for j in 0..cols {
            hooks *= BigInt::from((cols - j) + (e - i) - 1);
        }
    }
    factorial(e * cols) / hooks
}

/// Semistandard tableaux of the `rows x cols` rectangle with entries in
/// `1..=max`, counted by brute force. This is `h^0(Gr(rows, max), O(cols))`.
pub fn rectangular_ssyt(rows: usize, cols: usize, max: u32) -> u64 {
    fn fill(grid: &mut Vec<Vec<u32>>, cell: usize, rows: usize, cols: usize, max: u32) -> u64 {
        if cell == rows * cols {
            return 1;
        }
        let (i, j) = (cell / cols, cell % cols);
        let left = if j > 0 { grid[i][j - 1] } else { 1 };
        let above = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
        let mut count = 0;
        for v in left.max(above)..=max {
            grid[i][j] = v;
            count += fill(grid, cell + 1, rows, cols, max);
        }
        count
    }
    if cols == 0 {
        return 1;
    }
    fill(&mut vec![vec![0; cols]; rows], 0, rows, cols, max)
}
