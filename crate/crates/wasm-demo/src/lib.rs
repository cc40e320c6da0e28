//! Browser bindings: task mapping and preparation, an L sweep with its
//! crossover, and a sector dimension table.

use schur_prep::estimate::{CostParams, Mode};
use schur_prep::fock::PreparationTask;
use schur_prep::repr::{add_a_box_paths, enumerate_partitions, sym_group_dimension, weyl_dimension};
use schur_prep::sim::{prepare_first_quantized, Method, SpectralOptions, ZERO_TOL};
use schur_prep::sweep::{find_crossover, run_sweep, SweepMode, SweepSpec};
use schur_prep::Error;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `d^N` the page will simulate.
const BROWSER_CAP: u128 = 1 << 16;

fn to_js(e: Error) -> JsValue {
    JsValue::from_str(&format!("{e} (exit code {})", e.exit_code()))
}

fn method(name: &str) -> Result<Method, Error> {
    name.parse()
}

/// Maps a task JSON and, when `simulate` is set, builds its state.
pub fn prepare_json(task: &str, method_name: &str, simulate: bool) -> Result<Value, Error> {
    let task = PreparationTask::from_json(task)?;
    let mapped = task.map()?;
    let terms: Vec<Value> = mapped
        .terms
        .iter()
        .map(|t| {
            json!({
                "occupations": t.fock.occupations,
                "z": t.z.labels,
                "gt": t.label.mu.short(),
                "re": t.coeff.re,
                "im": t.coeff.im,
            })
        })
        .collect();
    let mut out = json!({
        "d": mapped.d,
        "N": mapped.n,
        "lambda": mapped.lambda.parts(),
        "sigma": mapped.sigma,
        "terms": terms,
    });
    if simulate {
        let opts = SpectralOptions {
            cap: BROWSER_CAP,
            ..SpectralOptions::default()
        };
        let p = prepare_first_quantized(&mapped, method(method_name)?, &opts)?;
        out["norm"] = json!(p.norm);
        out["dimension"] = json!(p.state.dim());
        out["amplitudes"] = serde_json::to_value(p.state.nonzero(ZERO_TOL)).expect("serializable");
    }
    Ok(out)
}

/// Block-encoding and inverse-Schur TE over `L = 2^1 ..= 2^max_exp`, with
/// the crossover per mode.
pub fn sweep_json(d: usize, n: usize, epsilon: f64, max_exp: u32) -> Result<Value, Error> {
    if !(1..=62).contains(&max_exp) {
        return Err(Error::Validation(format!("max exponent must lie in 1..=62, got {max_exp}")));
    }
    let params = CostParams::default().with_epsilon(epsilon);
    let spec = SweepSpec {
        d: vec![d],
        n: vec![n],
        l: (1..=max_exp).map(|e| 1u64 << e).collect(),
        epsilon: vec![epsilon],
        mode: SweepMode::Both,
        encoding: None,
    };
    let rows = run_sweep(&spec, &params)?;
    let series = |m: Mode| -> Vec<Value> {
        rows.iter()
            .filter(|r| r.mode == m)
            .map(|r| json!({"L": r.l, "te_block": r.te_block.to_string(), "te_total": r.te_total.to_string()}))
            .collect()
    };
    let crossover = |m: Mode| -> Value {
        match find_crossover(d, n, m, &params) {
            Ok(c) => json!({"L_star": c.l_star.to_string()}),
            Err(e) => json!({"error": e.to_string()}),
        }
    };
    Ok(json!({
        "te_schur": rows.first().map(|r| r.te_schur.to_string()),
        "rus": series(Mode::Rus),
        "oaa": series(Mode::Oaa),
        "crossover": {"rus": crossover(Mode::Rus), "oaa": crossover(Mode::Oaa)},
    }))
}

/// Irreps of `U(d) x S_N` with their dimensions and the total `d^N`.
pub fn dimensions_json(d: usize, n: usize) -> Result<Value, Error> {
    if d == 0 || d > 64 || n > 24 {
        return Err(Error::Validation("table limited to 1 <= d <= 64, N <= 24".into()));
    }
    let rows: Vec<Value> = enumerate_partitions(n, d)
        .iter()
        .map(|l| {
            json!({
                "lambda": l.parts(),
                "weyl": weyl_dimension(l, d).to_string(),
                "sym": sym_group_dimension(l).to_string(),
                "paths": add_a_box_paths(l).len(),
            })
        })
        .collect();
    let total: num_bigint::BigUint = enumerate_partitions(n, d)
        .iter()
        .map(|l| weyl_dimension(l, d) * sym_group_dimension(l))
        .sum();
    Ok(json!({"d": d, "N": n, "sectors": rows, "total": total.to_string()}))
}

#[wasm_bindgen]
pub fn prepare(task: &str, method_name: &str, simulate: bool) -> Result<String, JsValue> {
    prepare_json(task, method_name, simulate).map(|v| v.to_string()).map_err(to_js)
}

#[wasm_bindgen]
pub fn sweep(d: usize, n: usize, epsilon: f64, max_exp: u32) -> Result<String, JsValue> {
    sweep_json(d, n, epsilon, max_exp).map(|v| v.to_string()).map_err(to_js)
}

#[wasm_bindgen]
pub fn dimensions(d: usize, n: usize) -> Result<String, JsValue> {
    dimensions_json(d, n).map(|v| v.to_string()).map_err(to_js)
}
