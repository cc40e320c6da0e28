use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::cascade::cg_cascade_state_capped;
use super::spectral::{spectral_state, SpectralOptions};
use super::state::{checked_dim, DenseState};
use crate::error::{Error, Result};
use crate::fock::{LabeledSuperposition, PreparationTask, SchurLabel};
use crate::repr::Partition;

/// How individual Schur basis vectors are constructed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    Spectral,
    Cascade,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Method::Spectral),
            "cascade" => Ok(Method::Cascade),
            _ => Err(Error::Validation(format!("unknown method {s:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Spectral => "spectral",
            Method::Cascade => "cascade",
        })
    }
}

pub fn schur_state(label: &SchurLabel, d: usize, method: Method, opts: &SpectralOptions) -> Result<DenseState> {
    match method {
        Method::Spectral => spectral_state(label, d, opts),
        Method::Cascade => cg_cascade_state_capped(label, d, opts.cap),
    }
}

#[derive(Clone, Debug)]
pub struct PreparedState {
    pub state: DenseState,
    pub lambda: Partition,
    pub sigma: Vec<usize>,
    pub norm: f64,
    pub method: Method,
}

/// `sum_i c_i |lambda, mu_i, sigma>` in the computational basis.
pub fn prepare_first_quantized(
    task: &LabeledSuperposition,
    method: Method,
    opts: &SpectralOptions,
) -> Result<PreparedState> {
    let (d, n) = (task.d, task.n);
    checked_dim(d, n, opts.cap)?;
    let mut out = DenseState::zeros(d, n, opts.cap)?;
    for term in &task.terms {
        let v = schur_state(&term.label, d, method, opts)?;
        out.add_scaled(term.coeff, &v);
    }
    let norm = out.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Internal(format!("prepared state has norm {norm}")));
    }
    Ok(PreparedState {
        state: out,
        lambda: task.lambda.clone(),
        sigma: task.sigma.clone(),
        norm,
        method,
    })
}

pub fn prepare_task(task: &PreparationTask, method: Method, opts: &SpectralOptions) -> Result<PreparedState> {
    let mapped = task.map()?;
    prepare_first_quantized(&mapped, method, opts)
}

/// JSON export: `{"d", "N", "amplitudes": [{"index", "re", "im"}]}` above `tol`.
pub fn state_json(state: &DenseState, tol: f64) -> serde_json::Value {
    serde_json::json!({
        "d": state.d(),
        "N": state.n(),
        "amplitudes": state.nonzero(tol),
    })
}

/// CSV export with header `index,re,im`.
pub fn state_csv(state: &DenseState, tol: f64) -> String {
    let mut s = String::from("index,re,im\n");
    for e in state.nonzero(tol) {
        s.push_str(&format!("{},{:.12e},{:.12e}\n", e.index, e.re, e.im));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::state::ZERO_TOL;

    fn task(json: &str) -> PreparationTask {
        PreparationTask::from_json(json).unwrap()
    }

    #[test]
    fn boson_corner() {
        let t = task(r#"{"d":3,"N":3,"statistics":"boson","terms":[{"occupations":[0,0,3],"re":1}]}"#);
        for m in [Method::Spectral, Method::Cascade] {
            let p = prepare_task(&t, m, &SpectralOptions::default()).unwrap();
            let nz = p.state.nonzero(ZERO_TOL);
            assert_eq!(nz.len(), 1);
            assert_eq!(nz[0].index, "222");
            assert!((nz[0].re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_mode_cat() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let t = task(&format!(
            r#"{{"d":2,"N":2,"statistics":"boson","terms":[{{"occupations":[2,0],"re":{h}}},{{"occupations":[0,2],"re":{h}}}]}}"#
        ));
        let p = prepare_task(&t, Method::Spectral, &SpectralOptions::default()).unwrap();
        let a: Vec<f64> = p.state.amplitudes().iter().map(|x| x.re).collect();
        assert!((a[0] - h).abs() < 1e-12 && (a[3] - h).abs() < 1e-12);
        assert!(a[1].abs() < 1e-12 && a[2].abs() < 1e-12);
    }

    #[test]
    fn exports() {
        let t = task(r#"{"d":3,"N":3,"statistics":"fermion","terms":[{"occupations":[1,1,1],"re":1}]}"#);
        let p = prepare_task(&t, Method::Cascade, &SpectralOptions::default()).unwrap();
        assert_eq!(state_csv(&p.state, ZERO_TOL).lines().count(), 7);
        assert_eq!(state_json(&p.state, ZERO_TOL)["amplitudes"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn cap_refusal() {
        let t = task(r#"{"d":3,"N":13,"statistics":"boson","terms":[{"occupations":[13,0,0],"re":1}]}"#);
        let e = prepare_task(&t, Method::Cascade, &SpectralOptions::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
