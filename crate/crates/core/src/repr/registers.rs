use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::partition::{balanced_shape, clog2, clog2_big, count_partitions, enumerate_partitions, weyl_dimension};
use crate::error::Error;

/// Largest `p_d(N)` for which the compressed `n_mu` is found by exhaustive search.
pub const DEFAULT_EXHAUSTIVE_THRESHOLD: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Encoding {
    Naive,
    #[default]
    Compressed,
    BalancedProxy,
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Encoding::Naive => "naive",
            Encoding::Compressed => "compressed",
            Encoding::BalancedProxy => "balanced-proxy",
        })
    }
}

impl FromStr for Encoding {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "naive" => Ok(Encoding::Naive),
            "compressed" => Ok(Encoding::Compressed),
            "balanced-proxy" | "balanced" => Ok(Encoding::BalancedProxy),
            _ => Err(Error::Validation(format!("unknown encoding {s:?}"))),
        }
    }
}

/// Qubit widths of the label and system registers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterWidths {
    pub n_lambda: u64,
    pub n_mu: u64,
    pub n_sigma: u64,
    pub n_system: u64,
    pub encoding: Encoding,
}

pub fn register_widths(d: usize, n: usize, encoding: Encoding) -> RegisterWidths {
    register_widths_with(d, n, encoding, DEFAULT_EXHAUSTIVE_THRESHOLD)
}

/// Register widths with an explicit cutoff for the exhaustive compressed search.
pub fn register_widths_with(d: usize, n: usize, encoding: Encoding, threshold: u64) -> RegisterWidths {
    let nd = clog2(d as u64);
    let n_sigma = (n as u64).saturating_sub(1) * nd;
    let n_system = n as u64 * nd;
    let occ = clog2(n as u64 + 1);
    let (n_lambda, n_mu) = match encoding {
        Encoding::Naive => (d as u64 * occ, (d * (d - 1) / 2) as u64 * occ),
        Encoding::Compressed => {
            let count = count_partitions(n, d);
            let n_mu = if count <= BigUint::from(threshold) {
                let max = enumerate_partitions(n, d)
                    .iter()
                    .map(|l| weyl_dimension(l, d))
                    .max()
                    .unwrap_or_default();
                clog2_big(&max)
            } else {
                clog2_big(&weyl_dimension(&balanced_shape(n, d), d))
            };
            (clog2_big(&count), n_mu)
        }
        Encoding::BalancedProxy => (
            clog2_big(&count_partitions(n, d)),
            clog2_big(&weyl_dimension(&balanced_shape(n, d), d)),
        ),
    };
    RegisterWidths {
        n_lambda,
        n_mu,
        n_sigma,
        n_system,
        encoding,
    }
}
