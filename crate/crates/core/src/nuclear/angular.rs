//! Angular-momentum coupling coefficients.
//!
//! All angular momenta are passed doubled (`2j`, `2m`) so half-integers stay
//! integral. Small factorials are multiplied directly; large ones go through
//! a compensated log-factorial table.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const LN_FACTORIAL_MAX: usize = 256;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Neumaier-compensated running sum of ln k.
        let mut table = Vec::with_capacity(LN_FACTORIAL_MAX + 1);
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        table.push(0.0);
        for k in 1..=LN_FACTORIAL_MAX {
            let x = (k as f64).ln();
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
            table.push(sum + comp);
        }
        table
    })
}

/// Above this `s = j1 + j2 + j3`, the Racah sum switches to logarithms.
const DIRECT_FACTORIAL_MAX: usize = 24;

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Neumaier-compensated sum.
fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for term in terms {
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `ln(n!)` for `n ≤ 256`.
pub fn ln_factorial(n: usize) -> f64 {
    ln_factorial_table()[n]
}

fn half(twice: i32) -> Result<i32> {
    if twice % 2 != 0 {
        return Err(Error::AngularMomentum(format!(
            "{twice}/2 is not an integer"
        )));
    }
    Ok(twice / 2)
}

fn check_pair(tj: i32, tm: i32) -> Result<()> {
    if tj < 0 {
        return Err(Error::AngularMomentum(format!("negative 2j = {tj}")));
    }
    if (tj - tm) % 2 != 0 {
        return Err(Error::AngularMomentum(format!(
            "j = {tj}/2 and m = {tm}/2 differ by a non-integer"
        )));
    }
    Ok(())
}

/// Wigner 3j symbol `(j1 j2 j3; m1 m2 m3)` from the Racah formula.
///
/// Arguments are doubled. Returns zero when a selection rule fails; returns
/// an error when a `j`/`m` pair is not a valid half-integer pair.
pub fn wigner_3j(tj1: i32, tj2: i32, tj3: i32, tm1: i32, tm2: i32, tm3: i32) -> Result<f64> {
    check_pair(tj1, tm1)?;
    check_pair(tj2, tm2)?;
    check_pair(tj3, tm3)?;
    if tm1 + tm2 + tm3 != 0 {
        return Ok(0.0);
    }
    if tm1.abs() > tj1 || tm2.abs() > tj2 || tm3.abs() > tj3 {
        return Ok(0.0);
    }
    if (tj1 + tj2 + tj3) % 2 != 0 || tj3 > tj1 + tj2 || tj3 < (tj1 - tj2).abs() {
        return Ok(0.0);
    }

    let a = half(tj1 + tj2 - tj3)?;
    let b = half(tj1 - tj2 + tj3)?;
    let c = half(-tj1 + tj2 + tj3)?;
    let s = half(tj1 + tj2 + tj3)?;
    let ms = [
        tj1 + tm1,
        tj1 - tm1,
        tj2 + tm2,
        tj2 - tm2,
        tj3 + tm3,
        tj3 - tm3,
    ]
    .iter()
    .map(|&x| half(x).map(|h| h as usize))
    .collect::<Result<Vec<usize>>>()?;

    // Denominator arguments: k, j3-j2+k+m1, j3-j1+k-m2, j1+j2-j3-k, j1-k-m1, j2-k+m2.
    let d1 = half(tj3 - tj2 + tm1)?;
    let d2 = half(tj3 - tj1 - tm2)?;
    let d3 = a;
    let d4 = half(tj1 - tm1)?;
    let d5 = half(tj2 + tm2)?;
    let k_min = 0.max(-d1).max(-d2);
    let k_max = d3.min(d4).min(d5);
    let den_args = |k: i32| [k, d1 + k, d2 + k, d3 - k, d4 - k, d5 - k].map(|x| x as usize);

    let value = if (s as usize) < DIRECT_FACTORIAL_MAX {
        // Small arguments: plain factorial products stay well inside f64
        // range and avoid the rounding of exp(ln ...).
        let pref_sq = factorial(a as usize) * factorial(b as usize) * factorial(c as usize)
            / factorial(s as usize + 1)
            * ms.iter().map(|&m| factorial(m)).product::<f64>();
        let sum = compensated_sum((k_min..=k_max).map(|k| {
            let den: f64 = den_args(k).iter().map(|&x| factorial(x)).product();
            if k % 2 == 0 {
                1.0 / den
            } else {
                -1.0 / den
            }
        }));
        pref_sq.sqrt() * sum
    } else {
        let ln_delta =
            ln_factorial(a as usize) + ln_factorial(b as usize) + ln_factorial(c as usize)
                - ln_factorial(s as usize + 1);
        let ln_m: f64 = ms.iter().map(|&m| ln_factorial(m)).sum();
        let ln_pref = 0.5 * (ln_delta + ln_m);
        compensated_sum((k_min..=k_max).map(|k| {
            let ln_den: f64 = den_args(k).iter().map(|&x| ln_factorial(x)).sum();
            let mag = (ln_pref - ln_den).exp();
            if k % 2 == 0 {
                mag
            } else {
                -mag
            }
        }))
    };
    let phase = half(tj1 - tj2 - tm3)?;
    Ok(if phase.rem_euclid(2) == 0 {
        value
    } else {
        -value
    })
}

/// Clebsch-Gordan coefficient `(j1 m1 j2 m2 | j m)`, Condon-Shortley phases.
pub fn clebsch_gordan(tj1: i32, tm1: i32, tj2: i32, tm2: i32, tj: i32, tm: i32) -> Result<f64> {
    if tm1 + tm2 != tm {
        check_pair(tj1, tm1)?;
        check_pair(tj2, tm2)?;
        check_pair(tj, tm)?;
        return Ok(0.0);
    }
    let three_j = wigner_3j(tj1, tj2, tj, tm1, tm2, -tm)?;
    let phase = half(tj1 - tj2 + tm)?;
    let sign = if phase.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(sign * f64::from(tj + 1).sqrt() * three_j)
}

/// Gaunt integral `∫ Y*_{l1 m1} Y_{l2 m2} Y_{l3 m3} dΩ` (integer arguments).
pub fn gaunt(l1: i32, m1: i32, l2: i32, m2: i32, l3: i32, m3: i32) -> Result<f64> {
    let parity = wigner_3j(2 * l1, 2 * l2, 2 * l3, 0, 0, 0)?;
    if parity == 0.0 {
        return Ok(0.0);
    }
    let projection = wigner_3j(2 * l1, 2 * l2, 2 * l3, -2 * m1, 2 * m2, 2 * m3)?;
    let norm = (f64::from((2 * l1 + 1) * (2 * l2 + 1) * (2 * l3 + 1))
        / (4.0 * std::f64::consts::PI))
        .sqrt();
    let sign = if m1.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(sign * norm * parity * projection)
}
