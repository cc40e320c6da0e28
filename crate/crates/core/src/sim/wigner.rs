//! Reduced Wigner coefficients of `U(s)`, coupling one defining box.

use num_rational::Ratio;

use crate::error::{Error, Result};

fn interlaces(upper: &[usize], lower: &[usize]) -> bool {
    lower.len() + 1 == upper.len()
        && lower
            .iter()
            .enumerate()
            .all(|(i, &x)| upper[i] >= x && x >= upper[i + 1])
}

fn is_partition(row: &[usize]) -> bool {
    row.windows(2).all(|w| w[0] >= w[1])
}

/// Coefficient for adding a box to row `j` of the level-`s` GT row `mu`
/// together with a box in row `j_prime` of the level-`(s-1)` row `mu_prime`
/// (`j_prime = 0`: the lower row is unchanged).
///
/// Rows are unshifted GT entries; `j` runs over `1..=s` and `j_prime` over
/// `0..s`. Transitions that do not yield an interlacing pair return 0.
///
/// With `p_i = mu_i + s - i` and `q_i = mu'_i + s - 1 - i`:
///
/// * `j' >= 1`: `T^2 = prod_{i!=j'} (p_j - q_i)/(q_j' - q_i + 1) * prod_{i!=j} (q_j' - p_i + 1)/(p_j - p_i)`,
///   sign `+` when `j' >= j`.
/// * `j' = 0`: `T^2 = prod_i (p_j - q_i) / prod_{i!=j} (p_j - p_i)`, sign `+`.
pub fn reduced_wigner(s: usize, mu: &[usize], j: usize, mu_prime: &[usize], j_prime: usize) -> Result<f64> {
    if s < 2 || mu.len() != s || mu_prime.len() != s - 1 {
        return Err(Error::Validation(format!(
            "level {s} needs rows of length {s} and {}",
            s.saturating_sub(1)
        )));
    }
    if j == 0 || j > s || j_prime >= s {
        return Err(Error::IndexOutOfRange(format!("j={j}, j'={j_prime} at level {s}")));
    }
    if !is_partition(mu) || !interlaces(mu, mu_prime) {
        return Err(Error::Validation(format!("{mu_prime:?} does not interlace {mu:?}")));
    }
    let mut new_mu = mu.to_vec();
    new_mu[j - 1] += 1;
    let mut new_mp = mu_prime.to_vec();
    if j_prime > 0 {
        new_mp[j_prime - 1] += 1;
    }
    if !is_partition(&new_mu) || !interlaces(&new_mu, &new_mp) {
        return Ok(0.0);
    }

    let si = s as i64;
    let p: Vec<i64> = (0..s).map(|i| mu[i] as i64 + si - 1 - i as i64).collect();
    let q: Vec<i64> = (0..s - 1).map(|i| mu_prime[i] as i64 + si - 2 - i as i64).collect();
    let t = j - 1;
    let degenerate = |what: &str| Error::DegenerateLabels {
        s,
        detail: format!("{what} vanishes for mu={mu:?}, mu'={mu_prime:?}, j={j}, j'={j_prime}"),
    };
    let mut sq = Ratio::<i128>::from_integer(1);
    let sign;
    if j_prime > 0 {
        let u = j_prime - 1;
        for (i, &qi) in q.iter().enumerate() {
            if i != u {
                let den = q[u] - qi + 1;
                if den == 0 {
                    return Err(degenerate("q-denominator"));
                }
                sq *= Ratio::new((p[t] - qi) as i128, den as i128);
            }
        }
        for (i, &pi) in p.iter().enumerate() {
            if i != t {
                let den = p[t] - pi;
                if den == 0 {
                    return Err(degenerate("p-denominator"));
                }
                sq *= Ratio::new((q[u] - pi + 1) as i128, den as i128);
            }
        }
        sign = if j_prime >= j { 1.0 } else { -1.0 };
    } else {
        for &qi in &q {
            sq *= Ratio::from_integer((p[t] - qi) as i128);
        }
        for (i, &pi) in p.iter().enumerate() {
            if i != t {
                let den = p[t] - pi;
                if den == 0 {
                    return Err(degenerate("p-denominator"));
                }
                sq /= Ratio::from_integer(den as i128);
            }
        }
        sign = 1.0;
    }
    let v = *sq.numer() as f64 / *sq.denom() as f64;
    if v < 0.0 {
        return Err(Error::Internal(format!(
            "negative squared coefficient {v} for mu={mu:?}, mu'={mu_prime:?}, j={j}, j'={j_prime}"
        )));
    }
    Ok(sign * v.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_box_split() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let sym = reduced_wigner(2, &[1, 0], 1, &[1], 0).unwrap();
        let anti = reduced_wigner(2, &[1, 0], 2, &[1], 0).unwrap();
        assert!((sym.abs() - h).abs() < 1e-15);
        assert!((anti.abs() - h).abs() < 1e-15);
        let sym = reduced_wigner(2, &[1, 0], 1, &[0], 1).unwrap();
        let anti = reduced_wigner(2, &[1, 0], 2, &[0], 1).unwrap();
        assert!((sym.abs() - h).abs() < 1e-15);
        assert!((anti.abs() - h).abs() < 1e-15);
    }

    #[test]
    fn forced_box_has_unit_weight() {
        // Both particles in mode 1: only the symmetric pair survives.
        let v = reduced_wigner(2, &[1, 0], 1, &[1], 1).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        assert_eq!(reduced_wigner(2, &[1, 0], 2, &[1], 1).unwrap(), 0.0);
    }

    #[test]
    fn bad_inputs() {
        assert!(reduced_wigner(2, &[1, 0, 0], 1, &[1], 0).is_err());
        assert!(reduced_wigner(2, &[1, 0], 3, &[1], 0).is_err());
        assert!(reduced_wigner(2, &[1, 0], 1, &[2], 0).is_err());
    }
}
