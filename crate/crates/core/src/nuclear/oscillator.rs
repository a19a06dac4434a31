//! Harmonic-oscillator radial functions, in units of the oscillator length.

use super::angular::ln_factorial;

/// `∫ R_{n_p l_p}(r) r² R_{n_q l_q}(r) r² dr` in units of `r_0²`.
///
/// Nonzero only for `l_p = l_q` or `|l_p − l_q| = 2` with the radial quantum
/// numbers within two of each other.
pub fn radial_integral_r2(n_p: u32, l_p: u32, n_q: u32, l_q: u32) -> f64 {
    let (np, lp, nq, lq) = (
        f64::from(n_p),
        f64::from(l_p),
        f64::from(n_q),
        f64::from(l_q),
    );
    let mut value = 0.0;
    if l_p == l_q {
        if n_p == n_q {
            value += 2.0 * np + lp + 1.5;
        }
        if n_p + 1 == n_q {
            value -= ((np + lp + 1.5) * (np + 1.0)).sqrt();
        }
        if n_p == n_q + 1 {
            value -= ((nq + lq + 1.5) * (nq + 1.0)).sqrt();
        }
    }
    if l_q == l_p + 2 {
        if n_p == n_q {
            value += ((nq + lp + 1.5) * (nq + lp + 2.5)).sqrt();
        }
        if n_p == n_q + 1 {
            value -= 2.0 * ((nq + 1.0) * (nq + lp + 2.5)).sqrt();
        }
        if n_p == n_q + 2 {
            value += ((nq + 1.0) * (nq + 2.0)).sqrt();
        }
    }
    if l_p == l_q + 2 {
        if n_p == n_q {
            value += ((np + lq + 1.5) * (np + lq + 2.5)).sqrt();
        }
        if n_q == n_p + 1 {
            value -= 2.0 * ((np + 1.0) * (np + lq + 2.5)).sqrt();
        }
        if n_q == n_p + 2 {
            value += ((np + 1.0) * (np + 2.0)).sqrt();
        }
    }
    value
}

/// `ln Γ(k + 1/2)` for integer `k ≥ 0`, exact recursion from `Γ(1/2) = √π`.
fn ln_gamma_half(k: u32) -> f64 {
    // Γ(k + 1/2) = (2k)! √π / (4^k k!)
    ln_factorial(2 * k as usize) + 0.5 * std::f64::consts::PI.ln()
        - f64::from(k) * 4f64.ln()
        - ln_factorial(k as usize)
}

/// Generalized Laguerre polynomial `L_n^α(x)` by the three-term recurrence.
fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized radial wavefunction `R_{nl}(r)` with `r` in units of `r_0`
/// (and `R` in units of `r_0^{-3/2}`).
pub fn radial_wavefunction(n: u32, l: u32, r: f64) -> f64 {
    let ln_norm = 0.5 * (2f64.ln() + ln_factorial(n as usize) - ln_gamma_half(n + l + 1));
    ln_norm.exp() * r.powi(l as i32) * (-0.5 * r * r).exp() * laguerre(n, f64::from(l) + 0.5, r * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn diagonal_f_shell() {
        assert_eq!(radial_integral_r2(0, 3, 0, 3), 4.5);
    }

    #[test]
    fn odd_l_difference_vanishes() {
        assert_eq!(radial_integral_r2(0, 3, 0, 4), 0.0);
        assert_eq!(radial_integral_r2(1, 2, 0, 3), 0.0);
    }

    #[test]
    fn l_plus_two_branch() {
        assert_abs_diff_eq!(
            radial_integral_r2(0, 1, 0, 3),
            8.75f64.sqrt(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            radial_integral_r2(0, 3, 0, 1),
            8.75f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn wavefunction_normalised_and_orthogonal() {
        let h = 1e-3;
        let norm = |a: (u32, u32), b: (u32, u32)| -> f64 {
            (1..20_000)
                .map(|i| {
                    let r = i as f64 * h;
                    radial_wavefunction(a.0, a.1, r) * radial_wavefunction(b.0, b.1, r) * r * r * h
                })
                .sum()
        };
        assert_abs_diff_eq!(norm((0, 3), (0, 3)), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(norm((2, 1), (2, 1)), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(norm((0, 2), (1, 2)), 0.0, epsilon = 1e-9);
    }
}
