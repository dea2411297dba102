//! Support of the limiting zero distribution of `H_{n,n,n}` in the scaled
//! variable, read off the discriminant of the Stieltjes-transform curve.

use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{ten_pow_neg, tol_below_precision, Poly, Wide};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    OneInterval,
    ThreeInterval,
    Critical,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::OneInterval => "one-interval",
            Phase::ThreeInterval => "three-interval",
            Phase::Critical => "critical",
        })
    }
}

/// Support `[-b, b]` (one interval) or `[-b,-a] u [-d,d] u [a,b]` (three).
#[derive(Clone, Debug, PartialEq)]
pub struct SupportModel {
    pub chat: Wide,
    pub phase: Phase,
    pub b: Wide,
    pub a: Option<Wide>,
    pub d: Option<Wide>,
}

impl SupportModel {
    /// Support intervals in increasing order.
    pub fn intervals(&self) -> Vec<(Wide, Wide)> {
        match (&self.a, &self.d, self.phase) {
            (Some(a), Some(d), Phase::ThreeInterval) => {
                vec![(-&self.b, -a), (-d, d.clone()), (a.clone(), self.b.clone())]
            }
            _ => vec![(-&self.b, self.b.clone())],
        }
    }

    /// The interval carrying `nu_j` (`j` = 1, 2, 3).
    pub fn nu_interval(&self, j: usize) -> Result<(Wide, Wide)> {
        if self.phase != Phase::ThreeInterval {
            return Err(Error::UnsupportedPhase {
                chat: self.chat.to_f64(),
            });
        }
        if !(1..=3).contains(&j) {
            return Err(Error::InvalidInput(format!("measure index {j} must be 1, 2 or 3")));
        }
        Ok(self.intervals().swap_remove(j - 1))
    }

    /// True strictly inside a support interval.
    pub fn contains_open(&self, x: &Wide) -> bool {
        self.intervals().iter().any(|(lo, hi)| lo < x && x < hi)
    }
}

/// Ascending coefficients of the discriminant sextic as a cubic in `w = z^2`.
pub fn discriminant_cubic(chat: &Wide) -> Poly {
    let c2 = chat.square();
    let c4 = c2.square();
    let c6 = &c4 * &c2;
    let c8 = c4.square();
    let i = Wide::from_i64;
    let lead = i(256) * &c6;
    let w2 = -(i(128) * &c4 * (&c4 + i(18) * &c2 - i(18)));
    let w1 = i(16) * &c2 * (&c8 + i(12) * &c6 + i(240) * &c4 - i(1008) * &c2 + i(432));
    let plus = &c2 + i(4) * chat + i(6);
    let minus = &c2 - i(4) * chat + i(6);
    let w0 = -(i(32) * &c2 * plus.square() * minus.square());
    Poly::new(vec![w0, w1, w2, lead])
}

/// The discriminant sextic at a real point `z`.
pub fn discriminant_at(chat: &Wide, z: &Wide) -> Wide {
    discriminant_cubic(chat).eval(&z.square())
}

/// Coefficients of the transition polynomial in `u = chat^2`:
/// `u^3 - 27/2 u^2 - 54 u - 54`.
fn transition_cubic() -> Poly {
    Poly::new(vec![
        Wide::from_i64(-54),
        Wide::from_i64(-54),
        Wide::ratio(-27, 2),
        Wide::one(),
    ])
}

/// The critical shift `c*` separating the one- and three-interval phases.
pub fn critical_c() -> Wide {
    let roots = real_roots_cubic(&transition_cubic());
    let u = roots
        .into_iter()
        .rfind(Wide::is_positive)
        .expect("transition cubic has a positive root");
    u.sqrt()
}

/// `chat^6 - 13.5 chat^4 - 54 chat^2 - 54`.
pub fn transition_residual(chat: &Wide) -> Wide {
    transition_cubic().eval(&chat.square())
}

pub fn support_intervals(chat: &Wide) -> Result<SupportModel> {
    if !chat.is_positive() {
        return Err(Error::InvalidInput("chat must be positive".into()));
    }
    let cubic = discriminant_cubic(chat);
    let roots: Vec<Wide> = real_roots_cubic(&cubic).into_iter().filter(Wide::is_positive).collect();
    let near_critical = (chat - critical_c()).abs() < ten_pow_neg(10);
    let model = |phase, b: &Wide, a: Option<&Wide>, d: Option<&Wide>| SupportModel {
        chat: chat.clone(),
        phase,
        b: b.sqrt(),
        a: a.map(Wide::sqrt),
        d: d.map(Wide::sqrt),
    };
    if near_critical {
        // the double root sits at a critical point of the cubic
        let crit = critical_points(&cubic);
        let double = crit
            .iter()
            .filter(|w| w.is_positive())
            .min_by(|x, y| cubic.eval(x).abs().partial_cmp(&cubic.eval(y).abs()).unwrap())
            .cloned();
        let b = roots.last().cloned().or_else(|| double.clone()).unwrap();
        return Ok(model(Phase::Critical, &b, double.as_ref(), double.as_ref()));
    }
    match roots.len() {
        1 => Ok(model(Phase::OneInterval, &roots[0], None, None)),
        3 => Ok(model(Phase::ThreeInterval, &roots[2], Some(&roots[1]), Some(&roots[0]))),
        k => Err(Error::InvalidInput(format!(
            "discriminant has {k} positive roots at chat = {}",
            chat.to_sci_string(12)
        ))),
    }
}

fn critical_points(cubic: &Poly) -> Vec<Wide> {
    let d = cubic.derivative();
    let (c, b, a) = (&d.coeffs[0], &d.coeffs[1], &d.coeffs[2]);
    let disc = b.square() - Wide::from_i64(4) * a * c;
    if disc.is_negative() {
        return vec![];
    }
    let s = disc.sqrt();
    let two_a = Wide::from_i64(2) * a;
    let mut out = vec![(-b - &s) / &two_a, (-b + &s) / &two_a];
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

/// All real roots of a cubic with positive leading coefficient, ascending.
pub(crate) fn real_roots_cubic(p: &Poly) -> Vec<Wide> {
    let lead = p.coeffs[3].abs();
    let bound = p.coeffs[..3].iter().fold(Wide::zero(), |m, c| m.max(c.abs() / &lead)) + Wide::one();
    let mut knots = vec![-&bound];
    knots.extend(critical_points(p).into_iter().filter(|c| c.abs() < bound));
    knots.push(bound);
    let mut roots = Vec::new();
    for pair in knots.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        let (flo, fhi) = (p.eval(lo), p.eval(hi));
        if flo.is_zero() {
            if roots.last() != Some(lo) {
                roots.push(lo.clone());
            }
            continue;
        }
        if fhi.is_zero() {
            roots.push(hi.clone());
            continue;
        }
        if flo.signum() != fhi.signum() {
            roots.push(bracketed_root(p, lo.clone(), hi.clone(), flo.signum()));
        }
    }
    roots
}

fn bracketed_root(p: &Poly, mut lo: Wide, mut hi: Wide, sign_lo: i32) -> Wide {
    let dp = p.derivative();
    let tol = tol_below_precision(5);
    let two = Wide::from_i64(2);
    let mut x = (&lo + &hi) / &two;
    for _ in 0..1000 {
        let fx = p.eval(&x);
        if fx.is_zero() {
            return x;
        }
        if fx.signum() == sign_lo {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        let d = dp.eval(&x);
        let next = if d.is_zero() {
            (&lo + &hi) / &two
        } else {
            let n = &x - fx / d;
            if n > lo && n < hi {
                n
            } else {
                (&lo + &hi) / &two
            }
        };
        let done = (&next - &x).abs() <= &tol * x.abs().max(Wide::one());
        x = next;
        if done {
            break;
        }
    }
    x
}
