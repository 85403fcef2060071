//! Browser bindings: three interactive views over the QLA models, each
//! returning a JSON string for the demo page to plot.

use qla_core::ecc::{
    ecc_latency, recursive_failure, EccTiming, RecursionModel, P_TH_EMPIRICAL, P_TH_THEORETICAL,
};
use qla_core::interconnect::{self, ChannelModel};
use qla_core::layout::LogicalQubitTile;
use qla_core::params::TechnologyParams;
use qla_core::shor;
use wasm_bindgen::prelude::*;

fn params_for(profile: &str) -> Result<TechnologyParams, String> {
    match profile {
        "current" => Ok(TechnologyParams::current()),
        "expected" => Ok(TechnologyParams::expected()),
        other => Err(format!("unknown profile `{other}` (current or expected)")),
    }
}

fn estimate_shor_impl(bits: u32, profile: &str) -> Result<String, String> {
    let params = params_for(profile)?;
    let timing = EccTiming::from_layout(&params, &LogicalQubitTile::steane_level2())
        .map_err(|e| e.to_string())?;
    let est =
        shor::estimate(bits as u64, &timing, &params).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&est).expect("estimate serializes"))
}

/// Resource and runtime estimate for factoring an N-bit number.
#[wasm_bindgen]
pub fn estimate_shor(bits: u32, profile: &str) -> Result<String, JsError> {
    estimate_shor_impl(bits, profile).map_err(|e| JsError::new(&e))
}

fn spacing_curves_impl(
    d_min: u32,
    d_max: u32,
    d_step: u32,
    target_infidelity: f64,
) -> Result<String, String> {
    if d_step == 0 || d_min == 0 || d_max < d_min {
        return Err("require 0 < d_min <= d_max and d_step > 0".into());
    }
    if !(1e-9..0.75).contains(&target_infidelity) {
        return Err("target infidelity must be in [1e-9, 0.75)".into());
    }
    let params = TechnologyParams::expected();
    let model = ChannelModel::default();
    let candidates = [35u64, 70, 100, 350, 500, 1000];
    let distances: Vec<u64> = (d_min as u64..=d_max as u64)
        .step_by(d_step as usize)
        .collect();
    let rows = interconnect::spacing_sweep_rows(
        &distances,
        &candidates,
        1.0 - target_infidelity,
        &params,
        &model,
    );
    let crossover = interconnect::crossover_distance(
        100,
        350,
        1.0 - target_infidelity,
        &params,
        &model,
        d_max as u64,
        d_step as u64,
    );
    Ok(serde_json::json!({
        "candidates": candidates,
        "distances": distances,
        "rows": rows,
        "crossover_100_vs_350": crossover,
    })
    .to_string())
}

/// Connection-time curves over a distance grid for each island-spacing
/// candidate; infeasible points carry null times.
#[wasm_bindgen]
pub fn spacing_curves(
    d_min: u32,
    d_max: u32,
    d_step: u32,
    target_infidelity: f64,
) -> Result<String, JsError> {
    spacing_curves_impl(d_min, d_max, d_step, target_infidelity).map_err(|e| JsError::new(&e))
}

fn reliability_curves_impl(
    p_min: f64,
    p_max: f64,
    points: u32,
    max_level: u8,
) -> Result<String, String> {
    if !(p_min > 0.0 && p_max > p_min && p_max <= 1.0) {
        return Err("require 0 < p_min < p_max <= 1".into());
    }
    if points < 2 || max_level > 4 {
        return Err("require points >= 2 and max_level <= 4".into());
    }
    let grid: Vec<f64> = (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            (p_min.ln() + t * (p_max.ln() - p_min.ln())).exp()
        })
        .collect();
    let curve = |p_th: f64| -> Vec<Vec<f64>> {
        (0..=max_level)
            .map(|level| {
                grid.iter()
                    .map(|&p0| {
                        recursive_failure(&RecursionModel {
                            p0,
                            p_th,
                            r_cells: 12,
                            level,
                        })
                    })
                    .collect()
            })
            .collect()
    };
    Ok(serde_json::json!({
        "p_grid": grid,
        "levels": (0..=max_level).collect::<Vec<u8>>(),
        "theoretical_threshold": P_TH_THEORETICAL,
        "empirical_threshold": P_TH_EMPIRICAL,
        "curves_theoretical": curve(P_TH_THEORETICAL),
        "curves_empirical": curve(P_TH_EMPIRICAL),
    })
    .to_string())
}

/// Recursive failure-rate curves (levels 0..=max_level) over a component
/// failure-probability grid, for both threshold estimates.
#[wasm_bindgen]
pub fn reliability_curves(
    p_min: f64,
    p_max: f64,
    points: u32,
    max_level: u8,
) -> Result<String, JsError> {
    reliability_curves_impl(p_min, p_max, points, max_level).map_err(|e| JsError::new(&e))
}

/// Level-1 and level-2 error-correction latency for the expected profile,
/// displayed in the demo header.
#[wasm_bindgen]
pub fn ec_latency_summary() -> String {
    let timing = EccTiming::expected();
    serde_json::json!({
        "level1_s": ecc_latency(1, &timing).expect("level 1 populated"),
        "level2_s": ecc_latency(2, &timing).expect("level 2 populated"),
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_json_carries_published_row() {
        let text = estimate_shor_impl(128, "expected").unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["logical_qubits"], 37971);
        let days = v["runtime_days"].as_f64().unwrap();
        assert!((days - 0.9).abs() / 0.9 <= 0.05);
    }

    #[test]
    fn unknown_profile_rejected() {
        assert!(estimate_shor_impl(128, "futuristic").is_err());
    }

    #[test]
    fn spacing_curves_report_crossover() {
        let text = spacing_curves_impl(500, 15_000, 500, 2e-4).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let cross = v["crossover_100_vs_350"].as_u64().unwrap();
        assert!((3000..=12_000).contains(&cross));
        assert_eq!(v["rows"].as_array().unwrap().len(), 6 * 30);
    }

    #[test]
    fn reliability_curves_shape() {
        let text = reliability_curves_impl(1e-8, 1e-2, 20, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["p_grid"].as_array().unwrap().len(), 20);
        assert_eq!(v["curves_theoretical"].as_array().unwrap().len(), 3);
    }
}
