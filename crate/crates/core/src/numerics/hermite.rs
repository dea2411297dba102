//! Classical (physicists') Hermite polynomials.

use dashu_int::IBig;

use super::Wide;

/// `H_m(x)` by the three-term recurrence `H_{m+1} = 2x H_m - 2m H_{m-1}`.
pub fn hermite_classical_eval(m: usize, x: &Wide) -> Wide {
    let mut prev = Wide::one();
    if m == 0 {
        return prev;
    }
    let two_x = x * Wide::from_i64(2);
    let mut cur = two_x.clone();
    for k in 1..m {
        let next = &two_x * &cur - &prev * Wide::from(2 * k);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Exact integer coefficients (ascending) of `H_0, ..., H_max`.
pub fn hermite_classical_table(max: usize) -> Vec<Vec<IBig>> {
    let mut table: Vec<Vec<IBig>> = Vec::with_capacity(max + 1);
    table.push(vec![IBig::ONE]);
    if max == 0 {
        return table;
    }
    table.push(vec![IBig::ZERO, IBig::from(2)]);
    for m in 1..max {
        let cur = &table[m];
        let prev = &table[m - 1];
        let mut next = vec![IBig::ZERO; m + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * IBig::from(2);
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * IBig::from(2 * m);
        }
        table.push(next);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(hermite_classical_eval(0, &Wide::from_i64(17)), Wide::one());
        assert_eq!(hermite_classical_eval(2, &Wide::one()), Wide::from_i64(2));
        assert_eq!(hermite_classical_eval(3, &Wide::ratio(1, 2)), Wide::from_i64(-5));
    }

    #[test]
    fn table_matches_recurrence() {
        let table = hermite_classical_table(12);
        assert_eq!(table[4], [12, 0, -48, 0, 16].map(IBig::from).to_vec());
        let x = Wide::ratio(3, 7);
        for (m, coeffs) in table.iter().enumerate() {
            let by_table = coeffs
                .iter()
                .rev()
                .fold(Wide::zero(), |acc, c| acc * &x + Wide::from_ibig(c.clone()));
            let err = (by_table - hermite_classical_eval(m, &x)).abs();
            assert!(err.log10_abs() < -55.0, "m = {m}");
        }
    }

    #[test]
    fn derivative_identity() {
        // H_m' = 2m H_{m-1}
        let table = hermite_classical_table(15);
        for m in 1..=15usize {
            let x = Wide::ratio(-11, 5);
            let deriv = table[m]
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(Wide::zero(), |acc, (i, c)| {
                    acc * &x + Wide::from_ibig(c.clone()) * Wide::from(i)
                });
            let rhs = hermite_classical_eval(m - 1, &x) * Wide::from(2 * m);
            let scale = rhs.abs().max(Wide::one());
            let tol = Wide::from_i64(10).powi(crate::numerics::precision() as u32 - 6);
            assert!(((deriv - &rhs).abs() / scale) * tol < Wide::one(), "m = {m}");
            // finite-difference cross-check in f64
            let xf = x.to_f64();
            let h = 1e-6;
            let fd = (hermite_classical_eval(m, &Wide::from_f64(xf + h)).to_f64()
                - hermite_classical_eval(m, &Wide::from_f64(xf - h)).to_f64())
                / (2.0 * h);
            assert!((fd - rhs.to_f64()).abs() <= 1e-10 * rhs.to_f64().abs().max(1.0) * 1e3);
        }
    }
}
