//! Test-only oracles, independent of the library's solution paths.

#![allow(dead_code)]

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Float, One, ToPrimitive, Zero};

/// `v = scaled · 2^-shift` exactly, for the common `shift` of a set.
fn common_shift(values: impl Iterator<Item = f64>) -> i32 {
    values
        .filter(|v| *v != 0.0)
        .map(|v| -(Float::integer_decode(v).1 as i32))
        .max()
        .unwrap_or(0)
        .max(0)
}

fn scaled(v: f64, shift: i32) -> BigInt {
    if v == 0.0 {
        return BigInt::zero();
    }
    let (mantissa, exp, sign) = Float::integer_decode(v);
    let e = exp as i32 + shift;
    assert!(e >= 0, "shift too small");
    BigInt::from(sign) * (BigInt::from(mantissa) << e as usize)
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// Exact least-squares cubic `(a, b, c, d)` for the given f64 samples.
///
/// The inputs are converted to integers by a common power-of-two scale, the
/// raw-monomial normal equations are formed with exact integer power sums
/// and solved by rational Gaussian elimination. The only rounding is the
/// final conversion of each coefficient to the nearest f64.
pub fn exact_cubic_fit(samples: &[(f64, f64)]) -> [f64; 4] {
    let sy = common_shift(samples.iter().map(|s| s.0));
    let sz = common_shift(samples.iter().map(|s| s.1));
    let ys: Vec<BigInt> = samples.iter().map(|s| scaled(s.0, sy)).collect();
    let zs: Vec<BigInt> = samples.iter().map(|s| scaled(s.1, sz)).collect();

    // power sums P_k = Σ Y^k (k ≤ 6), Q_k = Σ Y^k Z (k ≤ 3)
    let mut p = vec![BigInt::zero(); 7];
    let mut q = vec![BigInt::zero(); 4];
    for (y, z) in ys.iter().zip(&zs) {
        let mut yk = BigInt::one();
        for k in 0..7 {
            if k < 4 {
                q[k] += &yk * z;
            }
            p[k] += &yk;
            yk *= y;
        }
    }

    // Σ_j P_{j+k} r_j = Q_k, with coefficient p_j = r_j · 2^(j·sy − sz)
    let mut m: Vec<Vec<BigRational>> = (0..4)
        .map(|k| {
            let mut row: Vec<BigRational> = (0..4).map(|j| BigRational::from_integer(p[j + k].clone())).collect();
            row.push(BigRational::from_integer(q[k].clone()));
            row
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !m[r][col].is_zero()).expect("singular normal equations");
        m.swap(col, pivot);
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                let pivot_row = m[col].clone();
                for (dst, src) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                    *dst -= &f * src;
                }
            }
        }
    }
    let mono: Vec<f64> = (0..4)
        .map(|j| {
            let r = &m[j][4] / &m[j][j];
            (r * pow2(j as i64 * sy as i64 - sz as i64)).to_f64().expect("representable")
        })
        .collect();
    [mono[3], mono[2], mono[1], mono[0]]
}

/// Raw-monomial Gram matrix `XᵀX` (rows/cols ordered a, b, c, d) in f64.
pub fn gram(samples: &[(f64, f64)]) -> nalgebra::Matrix4<f64> {
    let mut g = nalgebra::Matrix4::zeros();
    for &(y, _) in samples {
        let row = [y * y * y, y * y, y, 1.0];
        for i in 0..4 {
            for j in 0..4 {
                g[(i, j)] += row[i] * row[j];
            }
        }
    }
    g
}

pub fn eval(coef: &[f64; 4], y: f64) -> f64 {
    ((coef[0] * y + coef[1]) * y + coef[2]) * y + coef[3]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_recovers_exact_dyadic_cubic() {
        // dyadic coefficients and abscissae: everything is exact
        let coef = [2.0, -1.0, 0.25, 0.5];
        let samples: Vec<(f64, f64)> = (0..16).map(|i| {
            let y = i as f64 / 16.0 - 0.5;
            (y, eval(&coef, y))
        }).collect();
        assert_eq!(exact_cubic_fit(&samples), coef);
    }
}
