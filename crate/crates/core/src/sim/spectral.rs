//! Schur basis by joint diagonalization inside weight spaces.
//!
//! Each weight space is split first by the Jucys-Murphy elements
//! `X_t = sum_{s<t} (s t)`, whose joint spectrum (box contents) fixes the
//! add-a-box path, then by the Casimirs of the nested `U(k)`, whose
//! spectrum fixes the intermediate GT rows. Particle 1 is the rightmost
//! tensor factor, matching the Clebsch-Gordan cascade.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::Ratio;

use super::state::{checked_dim, digits_index, DenseState, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::fock::SchurLabel;
use crate::repr::{
    add_a_box_paths, enumerate_gt_patterns, enumerate_gt_patterns_with_weight, enumerate_partitions, path_contents,
    validate_path, GtPattern, Partition,
};

#[derive(Clone, Debug)]
pub struct SpectralOptions {
    /// Cap on `d^N`.
    pub cap: u128,
    /// Eigenvalues closer than this (relative to `max(1,|v|)`) form one cluster.
    pub cluster_tol: f64,
    /// Largest weight space diagonalized densely.
    pub max_weight_space: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            cap: DEFAULT_CAP,
            cluster_tol: 1e-8,
            max_weight_space: 1024,
        }
    }
}

/// All `(mu, sigma)` basis vectors of one irrep `lambda`.
#[derive(Clone, Debug)]
pub struct SchurBasisSet {
    pub lambda: Partition,
    pub d: usize,
    pub n: usize,
    states: BTreeMap<SchurLabel, DenseState>,
}

impl SchurBasisSet {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn get(&self, label: &SchurLabel) -> Option<&DenseState> {
        self.states.get(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SchurLabel, &DenseState)> {
        self.states.iter()
    }

    /// Largest entry of `|G - I|` for the Gram matrix of the set.
    pub fn gram_error(&self) -> f64 {
        let v: Vec<&DenseState> = self.states.values().collect();
        let mut worst: f64 = 0.0;
        for (a, x) in v.iter().enumerate() {
            for (b, y) in v.iter().enumerate().skip(a) {
                let g = x.inner(y);
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((g.re - want).abs().max(g.im.abs()));
            }
        }
        worst
    }
}

#[derive(Clone, Copy, Debug)]
enum ChainOp {
    JucysMurphy(usize),
    Casimir { k: usize, p: u32 },
}

#[derive(Clone, Debug)]
struct Candidate {
    path: Vec<usize>,
    pattern: GtPattern,
    contents: Vec<i64>,
}

impl Candidate {
    fn label(&self, op: ChainOp) -> i64 {
        match op {
            ChainOp::JucysMurphy(t) => self.contents[t - 1],
            ChainOp::Casimir { k, p } => casimir_value(self.pattern.row(k), p),
        }
    }
}

/// Eigenvalue of `C_p = sum E_{a1 a2} E_{a2 a3} ... E_{ap a1}` on the
/// `U(k)` irrep with highest weight `nu`.
pub fn casimir_value(nu: &[usize], p: u32) -> i64 {
    let k = nu.len() as i128;
    let l: Vec<i128> = nu.iter().enumerate().map(|(i, &x)| x as i128 + k - 1 - i as i128).collect();
    let mut sum = Ratio::<i128>::from_integer(0);
    for (i, &li) in l.iter().enumerate() {
        let mut term = Ratio::from_integer(li.pow(p));
        for (j, &lj) in l.iter().enumerate() {
            if j != i {
                term *= Ratio::new(li - lj - 1, li - lj);
            }
        }
        sum += term;
    }
    debug_assert!(sum.is_integer());
    sum.to_integer() as i64
}

/// Digit strings with the given per-mode counts, in increasing index order.
fn weight_strings(omega: &[usize], n: usize) -> Vec<Vec<usize>> {
    fn rec(left: &mut [usize], cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for m in 0..left.len() {
            if left[m] > 0 {
                left[m] -= 1;
                cur.push(m);
                rec(left, cur, n, out);
                cur.pop();
                left[m] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut omega.to_vec(), &mut Vec::new(), n, &mut out);
    out
}

struct WeightSpace {
    n: usize,
    strings: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WeightSpace {
    fn new(omega: &[usize], n: usize) -> Self {
        let strings = weight_strings(omega, n);
        let index = strings.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        WeightSpace { n, strings, index }
    }

    fn dim(&self) -> usize {
        self.strings.len()
    }

    /// Sparse columns of `op` restricted to this weight space.
    fn columns(&self, op: ChainOp) -> Vec<Vec<(usize, f64)>> {
        self.strings
            .iter()
            .map(|s| {
                let mut acc: HashMap<Vec<usize>, f64> = HashMap::new();
                match op {
                    ChainOp::JucysMurphy(t) => {
                        let pt = self.n - t;
                        for sp in 1..t {
                            let ps = self.n - sp;
                            let mut x = s.clone();
                            x.swap(ps, pt);
                            *acc.entry(x).or_default() += 1.0;
                        }
                    }
                    ChainOp::Casimir { k, p } => casimir_column(s, k, p as usize, &mut acc),
                }
                let mut col: Vec<(usize, f64)> = acc
                    .into_iter()
                    .filter(|(_, v)| *v != 0.0)
                    .map(|(x, v)| (self.index[&x], v))
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect()
    }
}

/// Applies `E_{ab}` summed over sites to a sparse vector of digit strings.
fn apply_e(a: usize, b: usize, v: &HashMap<Vec<usize>, f64>) -> HashMap<Vec<usize>, f64> {
    let mut out: HashMap<Vec<usize>, f64> = HashMap::new();
    for (s, &c) in v {
        for (pos, &x) in s.iter().enumerate() {
            if x == b {
                let mut t = s.clone();
                t[pos] = a;
                *out.entry(t).or_default() += c;
            }
        }
    }
    out
}

/// `C_p s` by the trace recursion `W_{x,a} <- sum_y E_{xy} W_{y,a}` from
/// `W_{x,a} = E_{xa} s`, so `C_p s = sum_a W_{a,a}` after `p` factors.
fn casimir_column(s: &[usize], k: usize, p: usize, acc: &mut HashMap<Vec<usize>, f64>) {
    let mut start: HashMap<Vec<usize>, f64> = HashMap::new();
    start.insert(s.to_vec(), 1.0);
    for a in 0..k {
        if !s.contains(&a) {
            continue;
        }
        let mut w: Vec<HashMap<Vec<usize>, f64>> = (0..k).map(|x| apply_e(x, a, &start)).collect();
        for _ in 1..p {
            let mut next: Vec<HashMap<Vec<usize>, f64>> = vec![HashMap::new(); k];
            for (y, wy) in w.iter().enumerate() {
                if wy.is_empty() {
                    continue;
                }
                for (x, nx) in next.iter_mut().enumerate() {
                    for (t, c) in apply_e(x, y, wy) {
                        *nx.entry(t).or_default() += c;
                    }
                }
            }
            w = next;
        }
        for (t, c) in w.swap_remove(a) {
            *acc.entry(t).or_default() += c;
        }
    }
}

fn chain_ops(d: usize, n: usize) -> Vec<ChainOp> {
    let mut ops: Vec<ChainOp> = (2..=n).map(ChainOp::JucysMurphy).collect();
    // On degree-m irreps C_p depends on content power sums of degree < p,
    // so p <= m + 1 already separates the rows.
    for k in 2..d {
        for p in 2..=k.min(n + 1) as u32 {
            ops.push(ChainOp::Casimir { k, p });
        }
    }
    ops
}

fn sparse_times(cols: &[Vec<(usize, f64)>], q: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(q.nrows(), q.ncols());
    for (c, col) in cols.iter().enumerate() {
        for &(r, v) in col {
            for j in 0..q.ncols() {
                out[(r, j)] += v * q[(c, j)];
            }
        }
    }
    out
}

/// Splits the weight space along `ops` and returns the vectors whose label
/// satisfies `target`.
///
/// `candidates` must hold every label of the weight space, so each
/// eigenspace met along the way has exactly as many vectors as labels with
/// that eigenvalue. An operator whose label is constant on a cluster acts
/// there as a scalar and is skipped.
fn refine(
    ws: &WeightSpace,
    ops: &[ChainOp],
    candidates: Vec<Candidate>,
    tol: f64,
    target: &(dyn Fn(&Candidate) -> bool + Sync),
) -> Result<Vec<(Candidate, Vec<f64>)>> {
    let m = ws.dim();
    if candidates.len() != m {
        return Err(Error::Internal(format!(
            "weight space of dimension {m} carries {} labels",
            candidates.len()
        )));
    }
    let resolved = |q: &DMatrix<f64>| q.ncols() == 1;
    let mut clusters = vec![(DMatrix::<f64>::identity(m, m), candidates)];
    for &op in ops {
        clusters.retain(|(_, c)| c.iter().any(target));
        if clusters.iter().all(|(q, _)| resolved(q)) {
            break;
        }
        let splits = |c: &[Candidate]| c.windows(2).any(|w| w[0].label(op) != w[1].label(op));
        if !clusters.iter().any(|(_, c)| splits(c)) {
            continue;
        }
        let cols = ws.columns(op);
        let mut next = Vec::new();
        for (q, cands) in clusters {
            if !splits(&cands) {
                next.push((q, cands));
                continue;
            }
            let oq = sparse_times(&cols, &q);
            let mut a = q.transpose() * oq;
            a = (&a + a.transpose()) * 0.5;
            let eig = SymmetricEigen::new(a);
            let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
            order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
            let mut groups: Vec<Vec<usize>> = Vec::new();
            for &i in &order {
                let v = eig.eigenvalues[i];
                match groups.last_mut() {
                    Some(g) if (eig.eigenvalues[*g.last().unwrap()] - v).abs() <= tol * v.abs().max(1.0) => g.push(i),
                    _ => groups.push(vec![i]),
                }
            }
            for g in groups {
                let mean = g.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / g.len() as f64;
                let value = mean.round();
                if (mean - value).abs() > 1e-6 {
                    return Err(Error::Internal(format!("non-integral chain eigenvalue {mean} for {op:?}")));
                }
                let keep: Vec<Candidate> = cands.iter().filter(|c| c.label(op) == value as i64).cloned().collect();
                if keep.len() != g.len() {
                    return Err(Error::Internal(format!(
                        "eigenvalue {value} of {op:?} has multiplicity {} but {} labels",
                        g.len(),
                        keep.len()
                    )));
                }
                let mut v = DMatrix::zeros(q.ncols(), g.len());
                for (col, &i) in g.iter().enumerate() {
                    v.set_column(col, &eig.eigenvectors.column(i));
                }
                next.push((&q * v, keep));
            }
        }
        clusters = next;
    }
    let mut out = Vec::new();
    for (q, mut cands) in clusters {
        if !cands.iter().any(target) {
            continue;
        }
        if q.ncols() != 1 || cands.len() != 1 {
            return Err(Error::Internal(format!(
                "unresolved degeneracy: {} vectors for {} labels",
                q.ncols(),
                cands.len()
            )));
        }
        out.push((cands.pop().unwrap(), q.column(0).iter().copied().collect()));
    }
    Ok(out)
}

fn check_lambda(lambda: &Partition, d: usize, n: usize) -> Result<Partition> {
    if lambda.size() != n || n == 0 {
        return Err(Error::Validation(format!("lambda {lambda} is not a partition of N={n}")));
    }
    if lambda.num_rows() > d {
        return Err(Error::EmptySector { n, d });
    }
    lambda.pad(d)
}

fn embed(ws: &WeightSpace, d: usize, n: usize, coeffs: &[f64]) -> Result<DenseState> {
    let mut s = DenseState::zeros(d, n, u128::MAX)?;
    let amps = s.amplitudes_mut();
    for (string, &c) in ws.strings.iter().zip(coeffs) {
        amps[digits_index(string, d)].re = c;
    }
    s.fix_phase();
    Ok(s)
}

fn weight_space(omega: &[usize], n: usize, opts: &SpectralOptions) -> Result<WeightSpace> {
    let dim = multinomial(omega);
    if dim > opts.max_weight_space as u128 {
        return Err(Error::DimensionCap {
            dim,
            cap: opts.max_weight_space as u128,
        });
    }
    Ok(WeightSpace::new(omega, n))
}

fn multinomial(omega: &[usize]) -> u128 {
    let mut acc = 1u128;
    let mut seen = 0u128;
    for &w in omega {
        for i in 1..=w as u128 {
            seen += 1;
            acc = acc.saturating_mul(seen) / i;
        }
    }
    acc
}

/// Shapes of `N` boxes with at most `d` rows, padded, with their paths.
fn all_shapes(d: usize, n: usize) -> Vec<(Partition, Vec<Vec<usize>>)> {
    enumerate_partitions(n, d)
        .into_iter()
        .map(|l| {
            let paths = add_a_box_paths(&l);
            (l, paths)
        })
        .collect()
}

/// Every label `(lambda, mu, sigma)` whose GT pattern has weight `omega`.
fn weight_candidates(omega: &[usize], d: usize, shapes: &[(Partition, Vec<Vec<usize>>)]) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (lam, paths) in shapes {
        for pat in enumerate_gt_patterns_with_weight(lam, omega) {
            for path in paths {
                out.push(Candidate {
                    path: path.clone(),
                    pattern: pat.clone(),
                    contents: path_contents(path, d),
                });
            }
        }
    }
    out
}

fn to_usize(omega: &[i64]) -> Vec<usize> {
    omega.iter().map(|&x| x as usize).collect()
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync + Send) -> Result<Vec<U>> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, U>(items: &[T], f: impl Fn(&T) -> Result<U>) -> Result<Vec<U>> {
    items.iter().map(f).collect()
}

/// Schur vectors of one weight space, in the coordinates of its digit
/// strings (listed in increasing computational-basis index).
#[derive(Clone, Debug)]
pub struct WeightBlock {
    pub omega: Vec<usize>,
    pub strings: Vec<Vec<usize>>,
    pub vectors: Vec<(SchurLabel, Vec<f64>)>,
}

fn label_of(c: Candidate) -> SchurLabel {
    SchurLabel {
        lambda: c.pattern.top(),
        mu: c.pattern,
        sigma: c.path,
    }
}

/// All Schur vectors of weight `omega` (occupation of each of the `d` modes).
pub fn weight_block(omega: &[usize], opts: &SpectralOptions) -> Result<WeightBlock> {
    let d = omega.len();
    let n: usize = omega.iter().sum();
    if d == 0 || n == 0 {
        return Err(Error::Validation("weight must have at least one mode and one particle".into()));
    }
    let ws = weight_space(omega, n, opts)?;
    let cands = weight_candidates(omega, d, &all_shapes(d, n));
    let vectors = refine(&ws, &chain_ops(d, n), cands, opts.cluster_tol, &|_| true)?
        .into_iter()
        .map(|(c, v)| (label_of(c), v))
        .collect();
    Ok(WeightBlock {
        omega: omega.to_vec(),
        strings: ws.strings,
        vectors,
    })
}

/// Every basis vector `|lambda, mu, sigma>` of one irrep.
pub fn gt_chain_basis(lambda: &Partition, d: usize, n: usize, opts: &SpectralOptions) -> Result<SchurBasisSet> {
    let lambda = check_lambda(lambda, d, n)?;
    checked_dim(d, n, opts.cap)?;
    let mut weights: Vec<Vec<i64>> = enumerate_gt_patterns(&lambda).iter().map(|p| p.weight().omega).collect();
    weights.sort();
    weights.dedup();
    let shapes = all_shapes(d, n);
    let ops = chain_ops(d, n);
    let top = lambda.parts().to_vec();
    let is_target = move |c: &Candidate| c.pattern.rows()[0] == top;
    let parts = par_map(&weights, |omega| {
        let omega = to_usize(omega);
        let ws = weight_space(&omega, n, opts)?;
        let cands = weight_candidates(&omega, d, &shapes);
        refine(&ws, &ops, cands, opts.cluster_tol, &is_target)?
            .into_iter()
            .map(|(c, v)| Ok((label_of(c), embed(&ws, d, n, &v)?)))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SchurBasisSet {
        lambda,
        d,
        n,
        states: parts.into_iter().flatten().collect(),
    })
}

/// A single basis vector, refining only the branches that carry `label`.
pub fn spectral_state(label: &SchurLabel, d: usize, opts: &SpectralOptions) -> Result<DenseState> {
    let n = label.lambda.size();
    let lambda = check_lambda(&label.lambda, d, n)?;
    validate_path(&lambda, &label.sigma)?;
    if label.mu.d() != d || label.mu.rows()[0] != lambda.parts() {
        return Err(Error::Validation(format!(
            "GT pattern {} does not have top row {lambda}",
            label.mu
        )));
    }
    checked_dim(d, n, opts.cap)?;
    let omega = to_usize(&label.mu.weight().omega);
    let ws = weight_space(&omega, n, opts)?;
    let cands = weight_candidates(&omega, d, &all_shapes(d, n));
    let is_target = |c: &Candidate| c.pattern == label.mu && c.path == label.sigma;
    let mut out = refine(&ws, &chain_ops(d, n), cands, opts.cluster_tol, &is_target)?;
    let (_, v) = out
        .pop()
        .ok_or_else(|| Error::Internal(format!("label {label} not found in its weight space")))?;
    embed(&ws, d, n, &v)
}
