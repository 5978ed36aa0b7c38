//! Truncated formal series in a symbol `X` that does not commute with the
//! `z`-variables: moving `X` past a variable lowers its parameter by 2,
//! i.e. `X z_{e,a} = z_{e,a-2} X`.  Multiplication therefore obeys
//! `(P X^m)(Q X^k) = (P * shift_m(Q)) X^{m+k}`.

use crate::entry::Entry;
use crate::error::{Error, Result};
use crate::ring::{ZPolynomial, ZVariable};

/// A series `sum_{m=0..K} c_m X^m` with coefficients written to the left of
/// the `X`-powers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ShiftSeries {
    coeffs: Vec<ZPolynomial>,
}

impl ShiftSeries {
    /// The constant series `c`, truncated at degree `k`.
    pub fn constant(c: ZPolynomial, k: usize) -> Self {
        let mut coeffs = vec![ZPolynomial::zero(); k + 1];
        coeffs[0] = c;
        ShiftSeries { coeffs }
    }

    pub fn one(k: usize) -> Self {
        ShiftSeries::constant(ZPolynomial::one(), k)
    }

    /// Build from an explicit coefficient list (degree 0 first).
    pub fn from_coeffs(coeffs: Vec<ZPolynomial>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the X^0 term");
        ShiftSeries { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `X^m` (zero above the truncation).
    pub fn coeff(&self, m: usize) -> &ZPolynomial {
        static ZERO: std::sync::OnceLock<ZPolynomial> = std::sync::OnceLock::new();
        self.coeffs
            .get(m)
            .unwrap_or_else(|| ZERO.get_or_init(ZPolynomial::zero))
    }

    /// Substitute `X -> -X` (negate odd coefficients).
    pub fn negate_x(&self) -> ShiftSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| if m % 2 == 1 { c.neg() } else { c.clone() })
            .collect();
        ShiftSeries { coeffs }
    }
}

/// Product of two series under the shift rule.  Both inputs must share the
/// same truncation.
pub fn series_mul(a: &ShiftSeries, b: &ShiftSeries) -> Result<ShiftSeries> {
    let k = a.truncation();
    if b.truncation() != k {
        return Err(Error::TruncationMismatch(k, b.truncation()));
    }
    let mut coeffs = vec![ZPolynomial::zero(); k + 1];
    for m in 0..=k {
        if a.coeff(m).is_zero() {
            continue;
        }
        for j in 0..=k - m {
            if b.coeff(j).is_zero() {
                continue;
            }
            let term = a.coeff(m).mul(&b.coeff(j).shift(m as i32));
            coeffs[m + j] = coeffs[m + j].add(&term);
        }
    }
    Ok(ShiftSeries { coeffs })
}

/// The factor `(1 + vX)` for `sign = +1`, or the geometric inverse
/// `(1 - vX)^{-1} = sum_m v-chain X^m` for `sign = -1`, truncated at `k`.
/// The degree-m chain is `z_{e,a-2x} z_{e,a-2x-2} ... ` (offsets increasing
/// by 1, as each factor passes the accumulated `X`-powers).
pub fn series_inv_factor(v: ZVariable, sign: i32, k: usize) -> ShiftSeries {
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    let mut coeffs = vec![ZPolynomial::zero(); k + 1];
    coeffs[0] = ZPolynomial::one();
    let top = if sign == 1 { 1.min(k) } else { k };
    let mut chain = ZPolynomial::one();
    for m in 1..=top {
        chain = chain.mul(&ZPolynomial::var(ZVariable::new(
            v.entry,
            v.offset + m as i32 - 1,
        )));
        coeffs[m] = chain.clone();
    }
    ShiftSeries { coeffs }
}

/// The middle factor common to both generating series: the geometric series
/// `sum_{m>=0} (z_{nbar,a} X z_{n,a} X)^m` if `inverse`, else the plain
/// `1 - z_{nbar,a} X z_{n,a} X`.
fn middle_factor(n: u8, k: usize, inverse: bool) -> ShiftSeries {
    // z_{nbar,a} X z_{n,a} X = z_{nbar,a} z_{n,a-2} X^2.
    let mut seed = ShiftSeries::constant(ZPolynomial::zero(), k);
    if k >= 2 {
        let m = crate::ring::ZMonomial::from_vars([
            ZVariable::new(Entry::Barred(n), 0),
            ZVariable::new(Entry::Unbarred(n), 1),
        ]);
        seed.coeffs[2] = ZPolynomial::monomial(m, 1);
    }
    if !inverse {
        let mut out = ShiftSeries::one(k);
        for m in 0..=k {
            out.coeffs[m] = out.coeffs[m].sub(seed.coeff(m));
        }
        return out;
    }
    let mut out = ShiftSeries::one(k);
    let mut power = ShiftSeries::one(k);
    for _ in 0..k / 2 {
        power = series_mul(&power, &seed).expect("equal truncations");
        for m in 0..=k {
            out.coeffs[m] = out.coeffs[m].add(power.coeff(m));
        }
    }
    out
}

/// The generating series of the `e`-coefficients:
/// rightward product of `(1 + z_{k,a}X)` for k = 1..n, times the geometric
/// middle factor, times the leftward product of `(1 + z_{kbar,a}X)`.
pub fn series_e(n: u8, k: usize) -> ShiftSeries {
    let mut out = ShiftSeries::one(k);
    for i in 1..=n {
        let f = series_inv_factor(ZVariable::new(Entry::Unbarred(i), 0), 1, k);
        out = series_mul(&out, &f).expect("equal truncations");
    }
    out = series_mul(&out, &middle_factor(n, k, true)).expect("equal truncations");
    for i in (1..=n).rev() {
        let f = series_inv_factor(ZVariable::new(Entry::Barred(i), 0), 1, k);
        out = series_mul(&out, &f).expect("equal truncations");
    }
    out
}

/// The generating series of the `h`-coefficients:
/// rightward product of `(1 - z_{kbar,a}X)^{-1}`, times the plain middle
/// factor, times the leftward product of `(1 - z_{k,a}X)^{-1}`.
pub fn series_h(n: u8, k: usize) -> ShiftSeries {
    let mut out = ShiftSeries::one(k);
    for i in 1..=n {
        let f = series_inv_factor(ZVariable::new(Entry::Barred(i), 0), -1, k);
        out = series_mul(&out, &f).expect("equal truncations");
    }
    out = series_mul(&out, &middle_factor(n, k, false)).expect("equal truncations");
    for i in (1..=n).rev() {
        let f = series_inv_factor(ZVariable::new(Entry::Unbarred(i), 0), -1, k);
        out = series_mul(&out, &f).expect("equal truncations");
    }
    out
}

/// `e_{r, a-2k}`: coefficient of `X^r` in the `e`-series with every offset
/// shifted by `k`; zero for negative `r`.
pub fn e_poly(r: i64, k: i32, n: u8, trunc: usize) -> Result<ZPolynomial> {
    coeff_poly(series_e(n, trunc), r, k, trunc)
}

/// `h_{r, a-2k}`, analogously.
pub fn h_poly(r: i64, k: i32, n: u8, trunc: usize) -> Result<ZPolynomial> {
    coeff_poly(series_h(n, trunc), r, k, trunc)
}

fn coeff_poly(s: ShiftSeries, r: i64, k: i32, trunc: usize) -> Result<ZPolynomial> {
    if r < 0 {
        return Ok(ZPolynomial::zero());
    }
    if r as usize > trunc {
        return Err(Error::Precondition(format!(
            "degree {r} exceeds truncation {trunc}"
        )));
    }
    Ok(s.coeff(r as usize).shift(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{eq_in_z, ZMonomial};

    fn zu(i: u8, x: i32) -> ZVariable {
        ZVariable::new(Entry::Unbarred(i), x)
    }

    fn zb(i: u8, x: i32) -> ZVariable {
        ZVariable::new(Entry::Barred(i), x)
    }

    fn xvar(v: ZVariable, k: usize) -> ShiftSeries {
        let mut coeffs = vec![ZPolynomial::zero(); k + 1];
        if k >= 1 {
            coeffs[1] = ZPolynomial::var(v);
        }
        ShiftSeries::from_coeffs(coeffs)
    }

    #[test]
    fn unit_and_shift_rule() {
        let b = xvar(zu(1, 0), 3);
        assert_eq!(series_mul(&ShiftSeries::one(3), &b).unwrap(), b);
        // (z_{1,a}X)(z_{1,a}X) = z_{1,a} z_{1,a-2} X^2.
        let sq = series_mul(&b, &b).unwrap();
        let expect = ZPolynomial::monomial(ZMonomial::from_vars([zu(1, 0), zu(1, 1)]), 1);
        assert_eq!(*sq.coeff(2), expect);
        assert!(sq.coeff(1).is_zero() && sq.coeff(3).is_zero());
    }

    #[test]
    fn associativity_explicit_and_random() {
        let a = xvar(zu(2, 0), 3);
        let b = xvar(zu(1, 0), 3);
        let left = series_mul(&series_mul(&a, &b).unwrap(), &b).unwrap();
        let right = series_mul(&a, &series_mul(&b, &b).unwrap()).unwrap();
        assert_eq!(left, right);

        // Random sparse triples with a fixed seed.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let mut rand_series = |k: usize| {
                let coeffs = (0..=k)
                    .map(|_| {
                        let mut p = ZPolynomial::zero();
                        for _ in 0..rng.gen_range(0..3) {
                            let i = rng.gen_range(1..=3u8);
                            let e = if rng.gen_bool(0.5) {
                                Entry::Unbarred(i)
                            } else {
                                Entry::Barred(i)
                            };
                            let v = ZVariable::new(e, rng.gen_range(-2..=2));
                            p.add_term(ZMonomial::var(v), rng.gen_range(-3..=3i64));
                        }
                        p
                    })
                    .collect();
                ShiftSeries::from_coeffs(coeffs)
            };
            let (a, b, c) = (rand_series(4), rand_series(4), rand_series(4));
            let l = series_mul(&series_mul(&a, &b).unwrap(), &c).unwrap();
            let r = series_mul(&a, &series_mul(&b, &c).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        let a = ShiftSeries::one(3);
        let b = ShiftSeries::one(4);
        assert!(matches!(
            series_mul(&a, &b),
            Err(Error::TruncationMismatch(3, 4))
        ));
    }

    #[test]
    fn inv_factor_examples() {
        let f = series_inv_factor(zu(1, 0), 1, 3);
        assert_eq!(*f.coeff(0), ZPolynomial::one());
        assert_eq!(*f.coeff(1), ZPolynomial::var(zu(1, 0)));
        assert!(f.coeff(2).is_zero());

        let g = series_inv_factor(zb(1, 0), -1, 2);
        assert_eq!(*g.coeff(1), ZPolynomial::var(zb(1, 0)));
        let expect = ZPolynomial::monomial(ZMonomial::from_vars([zb(1, 0), zb(1, 1)]), 1);
        assert_eq!(*g.coeff(2), expect);

        assert_eq!(series_inv_factor(zu(2, 0), -1, 0), ShiftSeries::one(0));
    }

    #[test]
    fn e_and_h_linear_coefficients() {
        // X^1 coefficient of both series at n=2: all four degree-1 variables.
        let sum: ZPolynomial = [zu(1, 0), zu(2, 0), zb(2, 0), zb(1, 0)]
            .into_iter()
            .map(ZPolynomial::var)
            .fold(ZPolynomial::zero(), |acc, p| acc.add(&p));
        assert_eq!(*series_e(2, 3).coeff(1), sum);
        assert_eq!(*series_h(2, 3).coeff(1), sum);
        assert_eq!(*series_e(2, 3).coeff(0), ZPolynomial::one());
        assert_eq!(*series_h(2, 3).coeff(0), ZPolynomial::one());
    }

    #[test]
    fn e_poly_h_poly_basics() {
        assert_eq!(e_poly(0, 5, 2, 3).unwrap(), ZPolynomial::one());
        assert!(e_poly(-3, 0, 2, 3).unwrap().is_zero());
        assert!(h_poly(-1, 0, 3, 2).unwrap().is_zero());
        assert!(e_poly(4, 0, 2, 3).is_err());
        // Shifted linear coefficient.
        let sum: ZPolynomial = [zu(1, 1), zu(2, 1), zb(2, 1), zb(1, 1)]
            .into_iter()
            .map(ZPolynomial::var)
            .fold(ZPolynomial::zero(), |acc, p| acc.add(&p));
        assert_eq!(e_poly(1, 1, 2, 3).unwrap(), sum);
    }

    /// The defining inverse relation: H_a(X) * E_a(-X) = 1 up to the
    /// truncation, coefficientwise in the quotient ring.
    #[test]
    fn h_times_e_negated_is_one() {
        for n in 2..=4u8 {
            let k = if n == 4 { 5 } else { 6 };
            let h = series_h(n, k);
            let e = series_e(n, k).negate_x();
            let prod = series_mul(&h, &e).unwrap();
            assert!(eq_in_z(prod.coeff(0), &ZPolynomial::one(), n));
            for m in 1..=k {
                assert!(
                    eq_in_z(prod.coeff(m), &ZPolynomial::zero(), n),
                    "n={n} degree {m}: {}",
                    prod.coeff(m)
                );
            }
        }
    }
}
