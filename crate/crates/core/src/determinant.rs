//! The Jacobi-Trudi determinant of the skew character, in both the `h`-entry
//! and `e`-entry forms.

use std::collections::HashMap;

use crate::partition::SkewDiagram;
use crate::ring::ZPolynomial;
use crate::series::{e_poly, h_poly, series_e, series_h, ShiftSeries};

/// Determinant of the `l x l` matrix `(h_{lambda_i - mu_j - i + j})` with the
/// parameter of row `i` raised by `2(lambda_i - i)`, where `l` is the number
/// of rows of `lambda`.
pub fn jt_det_h(d: &SkewDiagram, n: u8) -> ZPolynomial {
    let l = d.lambda.len().max(d.mu.len());
    jt_det_h_sized(d, n, l)
}

/// Same determinant computed over an `l x l` matrix for any `l` at least the
/// number of rows; the extra rows and columns form a unitriangular block.
pub fn jt_det_h_sized(d: &SkewDiagram, n: u8, l: usize) -> ZPolynomial {
    assert!(l >= d.lambda.len().max(d.mu.len()));
    let rows: Vec<i64> = (1..=l as i64).map(|i| d.lambda.part(i as usize - 1) as i64 - i).collect();
    let cols: Vec<i64> = (1..=l as i64).map(|j| d.mu.part(j as usize - 1) as i64 - j).collect();
    let trunc = max_entry_degree(&rows, &cols);
    let series = series_h(n, trunc);
    let entry = |i: usize, j: usize| {
        let r = rows[i] - cols[j];
        let k = -(rows[i] as i32);
        coeff(&series, r, k, trunc)
    };
    determinant(l, &entry)
}

/// Determinant of the `l' x l'` matrix `(e_{lambda'_i - mu'_j - i + j})` with
/// the parameter of column `j` lowered by `2(mu'_j - j + 1)`, where
/// `l' = lambda_1`.
pub fn jt_det_e(d: &SkewDiagram, n: u8) -> ZPolynomial {
    let lc = d.lambda.conjugate();
    let mc = d.mu.conjugate();
    let l = d.lambda.part(0) as usize;
    let rows: Vec<i64> = (1..=l as i64).map(|i| lc.part(i as usize - 1) as i64 - i).collect();
    let cols: Vec<i64> = (1..=l as i64).map(|j| mc.part(j as usize - 1) as i64 - j).collect();
    let trunc = max_entry_degree(&rows, &cols);
    let series = series_e(n, trunc);
    let entry = |i: usize, j: usize| {
        let r = rows[i] - cols[j];
        let k = (cols[j] + 1) as i32;
        coeff(&series, r, k, trunc)
    };
    determinant(l, &entry)
}

fn max_entry_degree(rows: &[i64], cols: &[i64]) -> usize {
    rows.iter()
        .flat_map(|&r| cols.iter().map(move |&c| r - c))
        .max()
        .unwrap_or(0)
        .max(0) as usize
}

fn coeff(series: &ShiftSeries, r: i64, k: i32, trunc: usize) -> ZPolynomial {
    if r < 0 || r as usize > trunc {
        return ZPolynomial::zero();
    }
    series.coeff(r as usize).shift(k)
}

/// Laplace expansion along the first remaining column, memoized on the set of
/// remaining rows.
fn determinant(l: usize, entry: &dyn Fn(usize, usize) -> ZPolynomial) -> ZPolynomial {
    if l == 0 {
        return ZPolynomial::one();
    }
    let mut memo: HashMap<Vec<usize>, ZPolynomial> = HashMap::new();
    fn minor(
        rows: &[usize],
        col: usize,
        entry: &dyn Fn(usize, usize) -> ZPolynomial,
        memo: &mut HashMap<Vec<usize>, ZPolynomial>,
    ) -> ZPolynomial {
        if rows.is_empty() {
            return ZPolynomial::one();
        }
        if let Some(p) = memo.get(rows) {
            return p.clone();
        }
        let mut acc = ZPolynomial::zero();
        for (pos, &i) in rows.iter().enumerate() {
            let e = entry(i, col);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = rows
                .iter()
                .copied()
                .filter(|&r| r != i)
                .collect();
            let sub = minor(&rest, col + 1, entry, memo);
            let term = e.mul(&sub);
            acc = if pos % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        memo.insert(rows.to_vec(), acc.clone());
        acc
    }
    let rows: Vec<usize> = (0..l).collect();
    minor(&rows, 0, entry, &mut memo)
}

/// Convenience wrappers matching the extraction operations.
pub fn entry_h(r: i64, k: i32, n: u8) -> ZPolynomial {
    let trunc = r.max(0) as usize;
    h_poly(r, k, n, trunc).expect("degree within truncation by construction")
}

pub fn entry_e(r: i64, k: i32, n: u8) -> ZPolynomial {
    let trunc = r.max(0) as usize;
    e_poly(r, k, n, trunc).expect("degree within truncation by construction")
}
