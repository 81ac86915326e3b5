use num::{BigRational, One, Zero};

/// Incrementally maintained reduced row echelon form over the rationals.
///
/// Pivots sit at the leftmost nonzero column of each row; every pivot column
/// is zero in all other rows, so the reduction of a vector is unique.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vec<BigRational>>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivot_row: vec![None; width],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Subtract pivot rows until `v` is zero in every pivot column.
    pub fn reduce(&self, v: &mut [BigRational]) {
        for col in 0..self.width {
            if v[col].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[col] {
                let factor = v[col].clone();
                for (slot, x) in v.iter_mut().zip(&self.rows[r]) {
                    if !x.is_zero() {
                        *slot -= &factor * x;
                    }
                }
            }
        }
    }

    /// Add `v` to the row space. Returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<BigRational>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        debug_assert!(v[pivot].is_one());
        for row in self.rows.iter_mut() {
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (slot, x) in row.iter_mut().zip(&v) {
                if !x.is_zero() {
                    *slot -= &factor * x;
                }
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(v);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn row(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_and_reduction() {
        let mut e = Echelon::new(3);
        assert!(e.insert(row(&[0, 2, 4])));
        assert!(e.insert(row(&[1, 1, 1])));
        assert!(!e.insert(row(&[2, 4, 6])));
        assert_eq!(e.rank(), 2);
        assert!(e.is_pivot(0) && e.is_pivot(1) && !e.is_pivot(2));
        let mut v = row(&[3, 5, 0]);
        e.reduce(&mut v);
        // v = 3 (1,0,-1) + 5 (0,1,2) + (0,0,-7)
        assert_eq!(v, row(&[0, 0, -7]));
        for r in e.rows() {
            assert!(r[0].is_zero() || r[1].is_zero());
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        let mut e = Echelon::new(4);
        e.insert(row(&[1, 2, 0, 3]));
        e.insert(row(&[0, 1, 1, 1]));
        let mut v = row(&[5, -1, 2, 7]);
        e.reduce(&mut v);
        let once = v.clone();
        e.reduce(&mut v);
        assert_eq!(v, once);
    }
}
