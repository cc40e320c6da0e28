//! Reference corpus: all 27 Schur states for `d = 3`, `N = 3`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::prepare::{schur_state, Method};
use super::spectral::{gt_chain_basis, SchurBasisSet, SpectralOptions};
use super::state::{parse_index, DenseState};
use crate::error::{Error, Result};
use crate::fock::{dynkin_from_fock, FockState, SchurLabel};
use crate::repr::{gt_weight, GtPattern, Partition};

/// Phase-aligned deviation below which a reconstructed state matches.
pub const MATCH_TOL: f64 = 1e-10;

/// One row of the reference table.
#[derive(Clone, Debug, PartialEq)]
pub struct GoldenRow {
    pub sector: &'static str,
    pub lambda: [usize; 3],
    /// Add-a-box path of the symmetric-group copy.
    pub sigma: Vec<usize>,
    pub fock: [usize; 3],
    pub z: [i64; 2],
    /// Compact GT label `(x,y;k)`.
    pub gt: &'static str,
    /// Unnormalized expansion `(index, weight)`.
    pub expansion: Vec<(&'static str, f64)>,
}

impl GoldenRow {
    pub fn state(&self) -> Result<DenseState> {
        let mut s = DenseState::zeros(3, 3, u128::MAX)?;
        for &(idx, w) in &self.expansion {
            s.amplitudes_mut()[parse_index(idx, 3)?] += Complex64::new(w, 0.0);
        }
        let n = s.norm();
        s.scale(Complex64::new(1.0 / n, 0.0));
        Ok(s)
    }

    pub fn label(&self) -> Result<SchurLabel> {
        let lambda = Partition::new(self.lambda.to_vec())?;
        Ok(SchurLabel {
            mu: parse_short_gt(self.gt, &lambda)?,
            lambda,
            sigma: self.sigma.clone(),
        })
    }
}

/// Parses `(x,y;k)`-style labels (rows `d-1` down to 1) under top row `lambda`.
pub fn parse_short_gt(s: &str, lambda: &Partition) -> Result<GtPattern> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::GtShape(format!("expected parentheses in {s:?}")))?;
    let mut rows = vec![lambda.parts().to_vec()];
    for part in inner.split(';') {
        let row: Vec<usize> = part
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|e| Error::GtShape(format!("{s:?}: {e}"))))
            .collect::<Result<_>>()?;
        rows.push(row);
    }
    GtPattern::from_rows(rows)
}

const SYM: &str = "lambda=(3,0,0)";
const T2: &str = "lambda=(2,1,0), T2";
const T1: &str = "lambda=(2,1,0), T1";
const ANTI: &str = "lambda=(1,1,1)";

/// Symmetric-group copies of the mixed sector, as add-a-box paths.
pub const T1_PATH: [usize; 2] = [1, 2];
pub const T2_PATH: [usize; 2] = [2, 1];

fn row(
    sector: &'static str,
    fock: [usize; 3],
    z: [i64; 2],
    gt: &'static str,
    expansion: &[(&'static str, f64)],
) -> GoldenRow {
    let (lambda, sigma) = match sector {
        SYM => ([3, 0, 0], vec![1, 1]),
        T2 => ([2, 1, 0], T2_PATH.to_vec()),
        T1 => ([2, 1, 0], T1_PATH.to_vec()),
        _ => ([1, 1, 1], vec![2, 3]),
    };
    GoldenRow {
        sector,
        lambda,
        sigma,
        fock,
        z,
        gt,
        expansion: expansion.to_vec(),
    }
}

/// The 27 reference states, in table order.
pub fn golden_rows() -> Vec<GoldenRow> {
    let all6 = [("012", 1.0), ("021", 1.0), ("102", 1.0), ("120", 1.0), ("201", 1.0), ("210", 1.0)];
    vec![
        row(SYM, [0, 0, 3], [0, -3], "(0,0;0)", &[("222", 1.0)]),
        row(SYM, [0, 1, 2], [-1, -1], "(1,0;0)", &[("122", 1.0), ("212", 1.0), ("221", 1.0)]),
        row(SYM, [1, 0, 2], [1, -2], "(1,0;1)", &[("022", 1.0), ("202", 1.0), ("220", 1.0)]),
        row(SYM, [0, 2, 1], [-2, 1], "(2,0;0)", &[("112", 1.0), ("121", 1.0), ("211", 1.0)]),
        row(SYM, [1, 1, 1], [0, 0], "(2,0;1)", &all6),
        row(SYM, [2, 0, 1], [2, -1], "(2,0;2)", &[("002", 1.0), ("020", 1.0), ("200", 1.0)]),
        row(SYM, [0, 3, 0], [-3, 3], "(3,0;0)", &[("111", 1.0)]),
        row(SYM, [1, 2, 0], [-1, 2], "(3,0;1)", &[("011", 1.0), ("101", 1.0), ("110", 1.0)]),
        row(SYM, [2, 1, 0], [1, 1], "(3,0;2)", &[("001", 1.0), ("010", 1.0), ("100", 1.0)]),
        row(SYM, [3, 0, 0], [3, 0], "(3,0;3)", &[("000", 1.0)]),
        row(T2, [1, 2, 0], [-1, 2], "(2,1;1)", &[("110", 1.0), ("101", -1.0)]),
        row(T2, [2, 1, 0], [1, 1], "(2,1;2)", &[("001", 1.0), ("010", -1.0)]),
        row(T2, [0, 2, 1], [-2, 1], "(2,0;0)", &[("112", 1.0), ("121", -1.0)]),
        row(T2, [2, 0, 1], [2, -1], "(2,0;2)", &[("002", 1.0), ("020", -1.0)]),
        row(T2, [0, 1, 2], [-1, -1], "(1,0;0)", &[("122", 1.0), ("212", -1.0)]),
        row(T2, [1, 0, 2], [1, -2], "(1,0;1)", &[("022", 1.0), ("202", -1.0)]),
        row(T2, [1, 1, 1], [0, 0], "(2,0;1)", &[("012", 1.0), ("120", -1.0)]),
        row(T2, [1, 1, 1], [0, 0], "(1,1;1)", &[("021", 1.0), ("210", -1.0)]),
        row(T1, [1, 2, 0], [-1, 2], "(2,1;1)", &[("110", 1.0), ("101", 1.0), ("011", -2.0)]),
        row(T1, [2, 1, 0], [1, 1], "(2,1;2)", &[("001", 1.0), ("010", 1.0), ("100", -2.0)]),
        row(T1, [0, 2, 1], [-2, 1], "(2,0;0)", &[("112", 1.0), ("121", 1.0), ("211", -2.0)]),
        row(T1, [2, 0, 1], [2, -1], "(2,0;2)", &[("002", 1.0), ("020", 1.0), ("200", -2.0)]),
        row(T1, [0, 1, 2], [-1, -1], "(1,0;0)", &[("122", 1.0), ("212", 1.0), ("221", -2.0)]),
        row(T1, [1, 0, 2], [1, -2], "(1,0;1)", &[("022", 1.0), ("202", 1.0), ("220", -2.0)]),
        row(T1, [1, 1, 1], [0, 0], "(2,0;1)", &[("012", 1.0), ("120", 1.0), ("201", -2.0)]),
        row(T1, [1, 1, 1], [0, 0], "(1,1;1)", &[("021", 1.0), ("210", 1.0), ("102", -2.0)]),
        row(
            ANTI,
            [1, 1, 1],
            [0, 0],
            "(1,1;1)",
            &[("012", 1.0), ("021", -1.0), ("102", -1.0), ("120", 1.0), ("201", 1.0), ("210", -1.0)],
        ),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenEntry {
    pub sector: String,
    pub fock: Vec<usize>,
    pub gt: String,
    pub sigma: Vec<usize>,
    /// Fock state, Dynkin weight and GT label agree with each other.
    pub labels_consistent: bool,
    /// Phase-aligned max amplitude deviation from the constructed state.
    pub deviation: f64,
    pub matched: bool,
    /// Distance of the reference vector from the span of all constructed
    /// vectors with the same `lambda` and weight.
    pub isotypic_residual: f64,
    /// Same, restricted to constructed vectors with the same `sigma`.
    pub copy_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub method: String,
    pub total: usize,
    pub matched: usize,
    pub max_deviation: f64,
    pub max_isotypic_residual: f64,
    /// `(lambda, U(3) dimension, S_3 dimension)`; states = sum of products.
    pub sector_dimensions: Vec<(String, usize, usize)>,
    pub entries: Vec<GoldenEntry>,
}

impl GoldenReport {
    pub fn all_match(&self) -> bool {
        self.matched == self.total
    }
}

fn residual(v: &DenseState, basis: &[&DenseState]) -> f64 {
    let mut r = v.clone();
    for b in basis {
        let c = b.inner(v);
        r.add_scaled(-c, b);
    }
    r.norm()
}

/// Compares each row against the constructed state up to a global phase.
pub fn verify_golden(rows: &[GoldenRow], method: Method) -> Result<GoldenReport> {
    let opts = SpectralOptions::default();
    let mut bases: BTreeMap<[usize; 3], SchurBasisSet> = BTreeMap::new();
    let mut entries = Vec::with_capacity(rows.len());
    for r in rows {
        if !bases.contains_key(&r.lambda) {
            let lam = Partition::new(r.lambda.to_vec())?;
            bases.insert(r.lambda, gt_chain_basis(&lam, 3, 3, &opts)?);
        }
        let label = r.label()?;
        let reference = r.state()?;
        let built = schur_state(&label, 3, method, &opts)?;
        let deviation = built.phase_distance(&reference);

        let fock = FockState::new(r.fock.to_vec());
        let (w, z) = gt_weight(&label.mu)?;
        let labels_consistent = z.labels == r.z.to_vec()
            && dynkin_from_fock(&fock).labels == r.z.to_vec()
            && w.omega.iter().map(|&x| x as usize).eq(r.fock.iter().copied());

        let set = &bases[&r.lambda];
        let same_weight: Vec<(&SchurLabel, &DenseState)> =
            set.iter().filter(|(l, _)| l.mu.weight().omega == w.omega).collect();
        let all: Vec<&DenseState> = same_weight.iter().map(|(_, s)| *s).collect();
        let copy: Vec<&DenseState> = same_weight
            .iter()
            .filter(|(l, _)| l.sigma == r.sigma)
            .map(|(_, s)| *s)
            .collect();
        entries.push(GoldenEntry {
            sector: r.sector.to_string(),
            fock: r.fock.to_vec(),
            gt: r.gt.to_string(),
            sigma: r.sigma.clone(),
            labels_consistent,
            deviation,
            matched: deviation < MATCH_TOL && labels_consistent,
            isotypic_residual: residual(&reference, &all),
            copy_residual: residual(&reference, &copy),
        });
    }
    let sector_dimensions = bases
        .iter()
        .map(|(lam, set)| {
            let f = crate::repr::add_a_box_paths(&set.lambda).len();
            (format!("({},{},{})", lam[0], lam[1], lam[2]), set.len() / f, f)
        })
        .collect();
    Ok(GoldenReport {
        method: method.to_string(),
        total: entries.len(),
        matched: entries.iter().filter(|e| e.matched).count(),
        max_deviation: entries.iter().map(|e| e.deviation).fold(0.0, f64::max),
        max_isotypic_residual: entries.iter().map(|e| e.isotypic_residual).fold(0.0, f64::max),
        sector_dimensions,
        entries,
    })
}

/// Reconstructs all 27 reference states and reports the agreement.
pub fn verify_golden_u3(method: Method) -> Result<GoldenReport> {
    verify_golden(&golden_rows(), method)
}
