//! Occupation-number configurations and their Schur labels.

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repr::{enumerate_partitions, DynkinWeight, GtPattern, Partition};

/// Tolerance on `sum |c|^2 = 1` for input coefficients.
pub const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FockState {
    pub occupations: Vec<usize>,
}

impl FockState {
    pub fn new(occupations: Vec<usize>) -> Self {
        FockState { occupations }
    }

    pub fn d(&self) -> usize {
        self.occupations.len()
    }

    pub fn particles(&self) -> usize {
        self.occupations.iter().sum()
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.occupations.iter().map(|x| x.to_string()).collect();
        write!(f, "|{}>", s.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatisticsSector {
    Boson,
    Fermion,
    Paraboson(usize),
    Parafermion(usize),
    Explicit(Partition),
}

impl StatisticsSector {
    /// Parses the task-file pair `("statistics", "order")`.
    pub fn parse(kind: &str, order: Option<usize>, lambda: Option<&[usize]>) -> Result<Self> {
        let need_order = |k: &str| {
            order
                .filter(|&p| p >= 1)
                .ok_or_else(|| Error::Validation(format!("{k} needs an order p >= 1")))
        };
        match kind {
            "boson" => Ok(StatisticsSector::Boson),
            "fermion" => Ok(StatisticsSector::Fermion),
            "paraboson" => Ok(StatisticsSector::Paraboson(need_order(kind)?)),
            "parafermion" => Ok(StatisticsSector::Parafermion(need_order(kind)?)),
            "explicit" => {
                let l = lambda.ok_or_else(|| Error::Validation("explicit statistics needs lambda".into()))?;
                Ok(StatisticsSector::Explicit(Partition::new(l.to_vec())?))
            }
            _ => Err(Error::Validation(format!("unknown statistics {kind:?}"))),
        }
    }
}

/// `z_i = n_i - n_{i+1}`.
pub fn dynkin_from_fock(n: &FockState) -> DynkinWeight {
    DynkinWeight {
        labels: n
            .occupations
            .windows(2)
            .map(|w| w[0] as i64 - w[1] as i64)
            .collect(),
    }
}

/// Recovers `omega` from `z` and the total `sum omega = total`.
/// `None` if `omega_d` is not an integer.
fn omega_from_dynkin(z: &[i64], total: i64, d: usize) -> Option<Vec<i64>> {
    let weighted: i64 = z.iter().enumerate().map(|(i, &zi)| (i as i64 + 1) * zi).sum();
    let num = total - weighted;
    if num.rem_euclid(d as i64) != 0 {
        return None;
    }
    let mut omega = vec![0i64; d];
    omega[d - 1] = num / d as i64;
    for i in (0..d - 1).rev() {
        omega[i] = z[i] + omega[i + 1];
    }
    Some(omega)
}

pub fn fock_from_dynkin(z: &DynkinWeight, n: usize, d: usize) -> Result<FockState> {
    let bad = || Error::InvalidOccupation {
        z: z.labels.clone(),
        n,
        d,
    };
    if d == 0 || z.labels.len() + 1 != d {
        return Err(bad());
    }
    let omega = omega_from_dynkin(&z.labels, n as i64, d).ok_or_else(bad)?;
    let occupations = omega
        .into_iter()
        .map(|w| usize::try_from(w).map_err(|_| bad()))
        .collect::<Result<_>>()?;
    Ok(FockState::new(occupations))
}

/// Young diagrams admissible for a statistics sector, in decreasing
/// lexicographic order.
pub fn sector_shapes(stat: &StatisticsSector, n: usize, d: usize) -> Result<Vec<Partition>> {
    if d == 0 {
        return Err(Error::Validation("d must be at least 1".into()));
    }
    let shapes = match stat {
        StatisticsSector::Boson => {
            let mut p = vec![0; d];
            p[0] = n;
            vec![Partition::new(p)?]
        }
        StatisticsSector::Fermion => {
            if n > d {
                return Err(Error::EmptySector { n, d });
            }
            let p = (0..d).map(|i| usize::from(i < n)).collect();
            vec![Partition::new(p)?]
        }
        StatisticsSector::Paraboson(p) => enumerate_partitions(n, d)
            .into_iter()
            .filter(|l| l.num_rows() <= *p)
            .collect(),
        StatisticsSector::Parafermion(p) => enumerate_partitions(n, d)
            .into_iter()
            .filter(|l| l.first_row() <= *p)
            .collect(),
        StatisticsSector::Explicit(l) => {
            if l.size() != n {
                return Err(Error::Validation(format!("lambda {l} does not have {n} boxes")));
            }
            vec![l.pad(d)?]
        }
    };
    if shapes.is_empty() {
        return Err(Error::Validation(format!("no admissible Young diagram for {stat:?} with N={n}, d={d}")));
    }
    Ok(shapes)
}

/// One GT pattern of shape `lambda` with Dynkin weight `z`.
///
/// Row sums follow from the recovered standard weight. Each lower row starts
/// from the right-shifted row above and the remaining deficit is spread left
/// to right up to each entry's interlacing capacity.
pub fn dynkin_to_gt(lambda: &Partition, z: &DynkinWeight) -> Result<GtPattern> {
    let d = lambda.len();
    if d == 0 || z.labels.len() + 1 != d {
        return Err(Error::Validation(format!(
            "weight {:?} has length {}, expected {}",
            z.labels,
            z.labels.len(),
            d.saturating_sub(1)
        )));
    }
    let not_permissible = || Error::NotPermissible {
        lambda: lambda.parts().to_vec(),
        z: z.labels.clone(),
    };
    let total = lambda.size() as i64;
    let omega = omega_from_dynkin(&z.labels, total, d).ok_or_else(|| Error::NotInLattice {
        lambda: lambda.parts().to_vec(),
        z: z.labels.clone(),
    })?;
    let mut rows: Vec<Vec<usize>> = vec![lambda.parts().to_vec()];
    let mut target = total;
    for r in (1..d).rev() {
        target -= omega[r];
        let above = rows.last().unwrap().clone();
        let mut row: Vec<usize> = above[1..].to_vec();
        let mut delta = target - row.iter().map(|&x| x as i64).sum::<i64>();
        if delta < 0 {
            return Err(not_permissible());
        }
        for j in 0..r {
            if delta == 0 {
                break;
            }
            let cap = (above[j] - above[j + 1]) as i64;
            let take = cap.min(delta);
            row[j] += take as usize;
            delta -= take;
        }
        if delta != 0 {
            return Err(not_permissible());
        }
        rows.push(row);
    }
    Ok(GtPattern::from_rows_unchecked(rows))
}

pub fn is_permissible(lambda: &Partition, z: &DynkinWeight) -> bool {
    dynkin_to_gt(lambda, z).is_ok()
}

/// Lexicographically smallest add-a-box path ending at `lambda`: each box
/// goes into the topmost row that can still take it.
pub fn canonical_sigma(lambda: &Partition) -> Vec<usize> {
    let target = lambda.parts();
    let n = lambda.size();
    if n <= 1 {
        return Vec::new();
    }
    let mut cur = vec![0usize; target.len()];
    cur[0] = 1;
    let mut path = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let i = (0..cur.len())
            .find(|&i| cur[i] < target[i] && (i == 0 || cur[i - 1] > cur[i]))
            .expect("a partition contained in lambda can always grow");
        cur[i] += 1;
        path.push(i + 1);
    }
    path
}

/// Schur basis label `|lambda, mu, sigma>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchurLabel {
    pub lambda: Partition,
    pub mu: GtPattern,
    /// Rows (1-based) receiving boxes 2..N.
    pub sigma: Vec<usize>,
}

impl fmt::Display for SchurLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sigma.iter().map(|x| x.to_string()).collect();
        write!(f, "|{}, {}, ({})>", self.lambda, self.mu.short(), s.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledTerm {
    pub fock: FockState,
    pub z: DynkinWeight,
    pub coeff: Complex64,
    pub label: SchurLabel,
}

/// Superposition over GT labels with one shared `lambda` and `sigma`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledSuperposition {
    pub d: usize,
    pub n: usize,
    pub lambda: Partition,
    pub sigma: Vec<usize>,
    pub terms: Vec<LabeledTerm>,
}

/// Maps a Fock-space superposition onto Schur labels.
///
/// `lambda_choice` selects a diagram inside a parastatistics family; the
/// default is the first (lexicographically largest) admissible diagram.
pub fn map_superposition(
    configs: &[FockState],
    coeffs: &[Complex64],
    stat: &StatisticsSector,
    lambda_choice: Option<&Partition>,
) -> Result<LabeledSuperposition> {
    if configs.is_empty() {
        return Err(Error::Validation("terms must be nonempty".into()));
    }
    if configs.len() != coeffs.len() {
        return Err(Error::Validation(format!(
            "{} configurations but {} coefficients",
            configs.len(),
            coeffs.len()
        )));
    }
    let d = configs[0].d();
    let n = configs[0].particles();
    if let Some(bad) = configs.iter().find(|c| c.d() != d || c.particles() != n) {
        return Err(Error::Validation(format!(
            "configuration {bad} differs in mode count or particle number from {}",
            configs[0]
        )));
    }
    let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::Validation(format!("coefficients not normalized: sum |c|^2 = {norm}")));
    }
    let shapes = sector_shapes(stat, n, d)?;
    let lambda = match lambda_choice {
        Some(l) => {
            let l = l.pad(d)?;
            if !shapes.contains(&l) {
                return Err(Error::Validation(format!("lambda {l} is not admissible for {stat:?}")));
            }
            l
        }
        None => shapes[0].clone(),
    };
    let sigma = canonical_sigma(&lambda);
    let mut seen = HashSet::new();
    let mut terms = Vec::with_capacity(configs.len());
    for (cfg, &c) in configs.iter().zip(coeffs) {
        if !seen.insert(cfg.clone()) {
            return Err(Error::DuplicateConfig(cfg.occupations.clone()));
        }
        let z = dynkin_from_fock(cfg);
        let mu = dynkin_to_gt(&lambda, &z).map_err(|_| Error::ImpermissibleConfig {
            occupations: cfg.occupations.clone(),
            lambda: lambda.parts().to_vec(),
        })?;
        terms.push(LabeledTerm {
            fock: cfg.clone(),
            z,
            coeff: c,
            label: SchurLabel {
                lambda: lambda.clone(),
                mu,
                sigma: sigma.clone(),
            },
        });
    }
    Ok(LabeledSuperposition {
        d,
        n,
        lambda,
        sigma,
        terms,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskTerm {
    pub occupations: Vec<usize>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// JSON preparation task:
/// `{"d", "N", "statistics", "order", "lambda", "terms": [{"occupations", "re", "im"}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreparationTask {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub statistics: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<usize>>,
    pub terms: Vec<TaskTerm>,
}

impl PreparationTask {
    pub fn from_json(s: &str) -> Result<Self> {
        let task: PreparationTask =
            serde_json::from_str(s).map_err(|e| Error::Validation(format!("schema: {e}")))?;
        task.check()?;
        Ok(task)
    }

    fn check(&self) -> Result<()> {
        if self.d < 1 {
            return Err(Error::Validation("schema: d must be at least 1".into()));
        }
        if self.terms.is_empty() {
            return Err(Error::Validation("schema: terms must be nonempty".into()));
        }
        for t in &self.terms {
            if t.occupations.len() != self.d {
                return Err(Error::Validation(format!(
                    "schema: occupations {:?} must have length d={}",
                    t.occupations, self.d
                )));
            }
            if t.occupations.iter().sum::<usize>() != self.n {
                return Err(Error::Validation(format!(
                    "schema: occupations {:?} must sum to N={}",
                    t.occupations, self.n
                )));
            }
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(Error::Validation("schema: coefficients must be finite".into()));
            }
        }
        Ok(())
    }

    pub fn sector(&self) -> Result<StatisticsSector> {
        StatisticsSector::parse(&self.statistics, self.order, self.lambda.as_deref())
    }

    pub fn map(&self) -> Result<LabeledSuperposition> {
        self.check()?;
        let stat = self.sector()?;
        let configs: Vec<FockState> = self.terms.iter().map(|t| FockState::new(t.occupations.clone())).collect();
        let coeffs: Vec<Complex64> = self.terms.iter().map(|t| Complex64::new(t.re, t.im)).collect();
        let choice = match (&stat, &self.lambda) {
            (StatisticsSector::Paraboson(_) | StatisticsSector::Parafermion(_), Some(l)) => {
                Some(Partition::new(l.clone())?)
            }
            _ => None,
        };
        map_superposition(&configs, &coeffs, &stat, choice.as_ref())
    }
}
