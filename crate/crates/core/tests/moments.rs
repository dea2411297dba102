use mhermite::numerics::{gaussian_moments, with_precision, Wide};

/// Trapezoid rule for `x^j exp(-x^2 + c x)` on `[c/2 - 12, c/2 + 12]`; spectrally
/// accurate for this integrand.
fn trapezoid_moment(c: &Wide, j: u32) -> Wide {
    let steps = 480;
    let h = Wide::from_i64(24) / Wide::from_i64(steps);
    let lo = c / Wide::from_i64(2) - Wide::from_i64(12);
    let mut sum = Wide::zero();
    for i in 0..=steps {
        let x = &lo + &h * Wide::from_i64(i);
        let f = x.powi(j) * (-(x.square()) + c * &x).exp();
        sum += if i == 0 || i == steps { f / Wide::from_i64(2) } else { f };
    }
    sum * h
}

#[test]
fn raw_moments_agree_with_integration() {
    with_precision(40, || {
        for c in [-20, -7, 0, 3, 20] {
            let c = Wide::from_i64(c);
            let m = gaussian_moments(&c, 11, false);
            for j in 0..=10u32 {
                let exact = &m.m[j as usize];
                let numeric = trapezoid_moment(&c, j);
                let rel = (&numeric - exact).abs() / exact.abs().max(Wide::one());
                assert!(
                    rel.to_f64() < 1e-20,
                    "c={} j={j}: {}",
                    c.to_sci_string(3),
                    rel.to_sci_string(3)
                );
            }
        }
    });
}
