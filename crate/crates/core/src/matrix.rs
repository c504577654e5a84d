//! Determinants over the Laurent polynomial ring.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::laurent::HalfPoly;

pub type PolyMatrix = Vec<Vec<HalfPoly>>;

/// Fraction-free Gaussian elimination with exact polynomial division.
pub fn det_bareiss(m: &PolyMatrix) -> Result<HalfPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(HalfPoly::one());
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = HalfPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(HalfPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Structural("inexact division during elimination".into()))?;
            }
            a[i][k] = HalfPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -&d } else { d })
}

/// Laplace expansion memoized over column subsets; intended for small matrices.
pub fn det_cofactor(m: &PolyMatrix) -> HalfPoly {
    let n = m.len();
    let mut memo: HashMap<u64, HalfPoly> = HashMap::new();
    expand(m, 0, n, &mut memo)
}

fn expand(m: &PolyMatrix, used: u64, n: usize, memo: &mut HashMap<u64, HalfPoly>) -> HalfPoly {
    let row = used.count_ones() as usize;
    if row == n {
        return HalfPoly::one();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut total = HalfPoly::zero();
    let mut free_before = 0;
    for j in 0..n {
        if used & (1 << j) != 0 {
            continue;
        }
        if !m[row][j].is_zero() {
            let minor = expand(m, used | (1 << j), n, memo);
            let term = &m[row][j] * &minor;
            total = if free_before % 2 == 0 { &total + &term } else { &total - &term };
        }
        free_before += 1;
    }
    memo.insert(used, total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HalfPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_determinants_agree() {
        let m = vec![
            vec![p("t + t^2"), p("-t"), p("0")],
            vec![p("-t^2"), p("t + t^3"), p("-1")],
            vec![p("0"), p("-t^3"), p("2*t")],
        ];
        let a = det_bareiss(&m).unwrap();
        let b = det_cofactor(&m);
        assert_eq!(a, b);
        assert!(!a.is_zero());
    }

    #[test]
    fn needs_pivoting() {
        let m = vec![vec![p("0"), p("1")], vec![p("1"), p("0")]];
        assert_eq!(det_bareiss(&m).unwrap(), p("-1"));
        assert_eq!(det_cofactor(&m), p("-1"));
    }

    #[test]
    fn empty_is_one() {
        assert_eq!(det_bareiss(&vec![]).unwrap(), HalfPoly::one());
        assert_eq!(det_cofactor(&vec![]), HalfPoly::one());
    }
}
