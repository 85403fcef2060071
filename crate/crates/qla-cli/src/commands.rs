//! Subcommand implementations.

use crate::output::{num, Emitter};
use anyhow::{anyhow, Result};
use qla_core::ecc::{self, EccTiming, RecursionModel};
use qla_core::interconnect::{self, ChannelModel};
use qla_core::layout::{self, LogicalQubitTile};
use qla_core::params::{channel_bandwidth, ParameterProfile};
use qla_core::report::RunManifest;
use qla_core::scheduler::{self, ChannelGraph};
use qla_core::shor;
use qla_core::stabsim::{self, ThresholdPoint};
use std::fmt::Write as _;
use std::path::Path;

pub fn params_show(profile: &ParameterProfile, seed: u64, emitter: &Emitter) -> Result<()> {
    let p = &profile.params;
    let manifest = RunManifest::new("params show", profile.name.to_string(), seed);
    let mut body = String::from("parameter,value,unit\n");
    let rows: [(&str, f64, &str); 12] = [
        ("single_gate_time", p.single_gate_us, "us"),
        ("double_gate_time", p.double_gate_us, "us"),
        ("measure_time", p.measure_us, "us"),
        ("movement_time_per_cell", p.movement_per_cell_us, "us"),
        ("split_time", p.split_us, "us"),
        ("cooling_time", p.cooling_us, "us"),
        ("memory_lifetime", p.memory_lifetime_s, "s"),
        ("p_single_gate", p.p_single, "probability"),
        ("p_double_gate", p.p_double, "probability"),
        ("p_measure", p.p_measure, "probability"),
        ("p_move_per_cell", p.p_move, "probability"),
        ("cell_pitch", p.cell_pitch_um, "um"),
    ];
    for (name, value, unit) in rows {
        writeln!(body, "{name},{},{unit}", num(value))?;
    }
    writeln!(
        body,
        "channel_bandwidth,{},qubits_per_s",
        num(channel_bandwidth(p))
    )?;
    emitter.csv(&format!("params_{}.csv", profile.name), &manifest, &body)?;
    Ok(())
}

pub fn layout(
    profile: &ParameterProfile,
    rows: u64,
    cols: u64,
    spacing_x: u64,
    seed: u64,
    emitter: &Emitter,
) -> Result<()> {
    let tile = LogicalQubitTile::steane_level2();
    let built = layout::build_layout(rows, cols, tile, spacing_x)?;
    let summary = layout::LayoutSummary::from_layout(&built);
    let area = layout::chip_area(built.qubit_count(), tile, &profile.params)?;
    let manifest = RunManifest::new("layout", profile.name.to_string(), seed)
        .with_override("rows", rows)
        .with_override("cols", cols)
        .with_override("spacing_x", spacing_x);
    let mut value = serde_json::to_value(&summary)?;
    value["chip_area_m2"] = serde_json::json!(area);
    emitter.json(&format!("layout_{rows}x{cols}.json"), &manifest, value)?;
    Ok(())
}

pub fn ecc(profile: &ParameterProfile, level: u8, seed: u64, emitter: &Emitter) -> Result<()> {
    let tile = LogicalQubitTile::steane_level2();
    let timing = EccTiming::from_layout(&profile.params, &tile)?;
    let manifest = RunManifest::new("ecc", profile.name.to_string(), seed)
        .with_override("level", level);
    let mut body =
        String::from("level,prep_s,syndrome_extraction_s,correction_overhead_s,ec_latency_s\n");
    for l in 1..=level.max(1) {
        let breakdown = ecc::syndrome_breakdown(l, &profile.params, &tile)?;
        let latency = ecc::ecc_latency(l, &timing)?;
        let t_synd = timing.t_syndrome_s[l as usize - 1];
        // the weighted non-trivial branch beyond the two serial extractions
        let correction = latency - 2.0 * t_synd;
        writeln!(
            body,
            "{l},{},{},{},{}",
            num(breakdown.prep_s),
            num(t_synd),
            num(correction),
            num(latency)
        )?;
    }
    emitter.csv(&format!("ecc_level{level}.csv"), &manifest, &body)?;
    Ok(())
}

pub fn feasibility(
    profile: &ParameterProfile,
    bits: u64,
    seed: u64,
    emitter: &Emitter,
) -> Result<()> {
    let timing = EccTiming::from_layout(&profile.params, &LogicalQubitTile::steane_level2())?;
    let est = shor::estimate(bits, &timing, &profile.params)?;
    let model = RecursionModel::from_params(&profile.params, 2);
    let manifest = RunManifest::new("feasibility", profile.name.to_string(), seed)
        .with_override("bits", bits);
    emitter.json(
        &format!("feasibility_{bits}.json"),
        &manifest,
        serde_json::json!({
            "bits": bits,
            "required_steps": est.required_steps,
            "attainable_steps": ecc::feasible_computation_size(&model),
            "recursive_failure_level2": ecc::recursive_failure(&model),
            "feasible_at_level2": est.feasible_at_level2,
        }),
    )?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn threshold(
    profile: &ParameterProfile,
    levels: &[u8],
    p_min: f64,
    p_max: f64,
    points: usize,
    trials: u64,
    seed: u64,
    emitter: &Emitter,
) -> Result<()> {
    let grid = log_grid(p_min, p_max, points);
    let tile = LogicalQubitTile::steane_level2();
    let sweep = stabsim::threshold_sweep(&tile, levels, &grid, trials, seed)?;
    if let Some(w) = &sweep.warning {
        eprintln!("warning: {w}");
    }
    let manifest = RunManifest::new("threshold", profile.name.to_string(), seed)
        .with_override("levels", format_list(levels))
        .with_override("p_min", p_min)
        .with_override("p_max", p_max)
        .with_override("points", points)
        .with_override("trials", trials);
    let mut body = threshold_csv(&sweep.points)?;
    if let Some(c) = stabsim::crossing_estimate(&sweep.points) {
        writeln!(
            body,
            "# crossing_probability,{},interval_low,{},interval_high,{}",
            num(c.p_star),
            num(c.lo),
            num(c.hi)
        )?;
    }
    emitter.csv("threshold.csv", &manifest, &body)?;
    Ok(())
}

fn threshold_csv(points: &[ThresholdPoint]) -> Result<String> {
    let mut body = String::from(
        "p_component_failure_probability,recursion_level,trials,failures,\
         logical_failure_rate,stderr,nontrivial_syndrome_rate\n",
    );
    for pt in points {
        writeln!(
            body,
            "{},{},{},{},{},{},{}",
            num(pt.p),
            pt.level,
            pt.trials,
            pt.failures,
            num(pt.failure_rate),
            num(pt.stderr),
            num(pt.nontrivial_syndrome_rate)
        )?;
    }
    Ok(body)
}

#[allow(clippy::too_many_arguments)]
pub fn spacing(
    profile: &ParameterProfile,
    distance: u64,
    candidates: &[u64],
    target_fidelity: f64,
    epr_cell_error: f64,
    seed: u64,
    emitter: &Emitter,
) -> Result<()> {
    let model = ChannelModel {
        epr_cell_depolar: epr_cell_error,
        ..ChannelModel::default()
    };
    let rows =
        interconnect::spacing_sweep_rows(&[distance], candidates, target_fidelity, &profile.params, &model);
    let manifest = RunManifest::new("spacing", profile.name.to_string(), seed)
        .with_override("distance", distance)
        .with_override("target_fidelity", target_fidelity)
        .with_override("epr_cell_error", epr_cell_error);
    let mut body = spacing_csv(&rows)?;
    match interconnect::optimal_spacing(distance, candidates, target_fidelity, &profile.params, &model)
    {
        Ok(best) => writeln!(body, "# optimal_spacing_cells,{best}")?,
        Err(e) => writeln!(body, "# optimal_spacing_cells,none ({e})")?,
    }
    emitter.csv(&format!("spacing_d{distance}.csv"), &manifest, &body)?;
    Ok(())
}

fn spacing_csv(rows: &[interconnect::SpacingRow]) -> Result<String> {
    let mut body = String::from(
        "total_distance_cells,island_spacing_cells,feasible,connection_time_us,\
         final_fidelity,purification_rounds,swap_stages\n",
    );
    for r in rows {
        writeln!(
            body,
            "{},{},{},{},{},{},{}",
            r.distance_cells,
            r.spacing_cells,
            r.feasible,
            r.connection_time_us.map(num).unwrap_or_default(),
            r.final_fidelity.map(num).unwrap_or_default(),
            r.purification_rounds
                .map(|v| v.to_string())
                .unwrap_or_default(),
            r.swap_stages.map(|v| v.to_string()).unwrap_or_default()
        )?;
    }
    Ok(body)
}

#[allow(clippy::too_many_arguments)]
pub fn spacing_sweep(
    profile: &ParameterProfile,
    d_min: u64,
    d_max: u64,
    d_step: u64,
    candidates: &[u64],
    target_fidelity: f64,
    epr_cell_error: f64,
    seed: u64,
    emitter: &Emitter,
) -> Result<()> {
    if d_step == 0 || d_min == 0 || d_max < d_min {
        return Err(anyhow!("require 0 < d-min <= d-max and d-step > 0"));
    }
    let model = ChannelModel {
        epr_cell_depolar: epr_cell_error,
        ..ChannelModel::default()
    };
    let distances: Vec<u64> = (d_min..=d_max).step_by(d_step as usize).collect();
    let rows = interconnect::spacing_sweep_rows(
        &distances,
        candidates,
        target_fidelity,
        &profile.params,
        &model,
    );
    let manifest = RunManifest::new("spacing-sweep", profile.name.to_string(), seed)
        .with_override("d_min", d_min)
        .with_override("d_max", d_max)
        .with_override("d_step", d_step)
        .with_override("target_fidelity", target_fidelity)
        .with_override("epr_cell_error", epr_cell_error);
    let mut body = spacing_csv(&rows)?;
    if let Some(cross) = interconnect::crossover_distance(
        100,
        350,
        target_fidelity,
        &profile.params,
        &model,
        d_max,
        d_step,
    ) {
        writeln!(body, "# crossover_100_vs_350_cells,{cross}")?;
    }
    emitter.csv("fig8_spacing.csv", &manifest, &body)?;
    Ok(())
}

pub struct ScheduleSpec<'a> {
    pub profile: &'a ParameterProfile,
    pub rows: u32,
    pub cols: u32,
    pub bandwidth: u32,
    pub workload: &'a str,
    pub gates: usize,
    pub gates_per_window: usize,
    pub spacing: u64,
    pub drift: bool,
    pub workload_file: Option<&'a Path>,
    pub seed: u64,
    pub emitter: &'a Emitter,
}

pub fn schedule(spec: ScheduleSpec) -> Result<()> {
    let graph = ChannelGraph::new(spec.rows, spec.cols, spec.bandwidth, spec.spacing)?;
    let timing =
        EccTiming::from_layout(&spec.profile.params, &LogicalQubitTile::steane_level2())?;
    let window =
        scheduler::ec_window_slots(&spec.profile.params, ecc::ecc_latency(2, &timing)?, spec.spacing);
    let result = match spec.workload {
        "toffoli" => {
            let workload = scheduler::generate_toffoli_workload(
                &graph,
                spec.gates,
                spec.gates_per_window,
                window,
                spec.seed,
            );
            scheduler::schedule_toffoli(&workload, &graph, spec.drift)?
        }
        "file" => {
            let path = spec
                .workload_file
                .ok_or_else(|| anyhow!("--workload file requires --workload-file"))?;
            let text = std::fs::read_to_string(path)?;
            let requests = scheduler::parse_workload(&text, window)?;
            scheduler::schedule(&requests, &graph)?
        }
        other => return Err(anyhow!("unknown workload `{other}` (toffoli or file)")),
    };
    let report = scheduler::utilization_report(&result);
    let manifest = RunManifest::new("schedule", spec.profile.name.to_string(), spec.seed)
        .with_override("grid", format!("{}x{}", spec.rows, spec.cols))
        .with_override("bandwidth", spec.bandwidth)
        .with_override("workload", spec.workload)
        .with_override("gates", spec.gates)
        .with_override("gates_per_window", spec.gates_per_window)
        .with_override("spacing", spec.spacing)
        .with_override("drift", spec.drift)
        .with_override("window_slots", window);

    let mut trace = String::from(
        "request,src_row,src_col,dst_row,dst_col,pairs,release_slot,deadline_slot,\
         start_slot,completion_slot,route_hops,met_deadline,backoffs\n",
    );
    for (i, s) in result.scheduled.iter().enumerate() {
        writeln!(
            trace,
            "{i},{},{},{},{},{},{},{},{},{},{},{},{}",
            s.request.src.row,
            s.request.src.col,
            s.request.dst.row,
            s.request.dst.col,
            s.request.pairs,
            s.request.release_slot,
            s.request.deadline_slot,
            s.start_slot,
            s.completion_slot,
            s.route.len(),
            s.met_deadline,
            s.backoffs
        )?;
    }
    spec.emitter
        .csv_quiet("schedule_trace.csv", &manifest, &trace)?;
    spec.emitter.json(
        "schedule_metrics.json",
        &manifest,
        serde_json::to_value(&report)?,
    )?;
    Ok(())
}

pub fn estimate_shor(
    profile: &ParameterProfile,
    bits: u64,
    seed: u64,
    emitter: &Emitter,
) -> Result<()> {
    let timing = EccTiming::from_layout(&profile.params, &LogicalQubitTile::steane_level2())?;
    let est = shor::estimate(bits, &timing, &profile.params)?;
    let manifest = RunManifest::new("estimate-shor", profile.name.to_string(), seed)
        .with_override("bits", bits);
    let mut csv = table2_header();
    writeln!(csv, "{}", table2_row(&est))?;
    emitter.csv_quiet(&format!("estimate_shor_{bits}.csv"), &manifest, &csv)?;
    emitter.json(
        &format!("estimate_shor_{bits}.json"),
        &manifest,
        serde_json::to_value(&est)?,
    )?;
    Ok(())
}

fn table2_header() -> String {
    String::from(
        "n_bits,logical_qubits,toffoli_gates,total_gates,area_m2,time_days\n",
    )
}

/// A row in the published table's schema: area to two decimals, days to one.
fn table2_row(est: &shor::ShorEstimate) -> String {
    format!(
        "{},{},{},{},{:.2},{:.1}",
        est.n_bits, est.logical_qubits, est.toffoli_count, est.total_gates, est.area_m2,
        est.runtime_days
    )
}

pub fn reproduce_all(
    profile: &ParameterProfile,
    trials: u64,
    points: usize,
    seed: u64,
    emitter: &Emitter,
) -> Result<()> {
    if trials == 0 || points < 2 {
        return Err(anyhow!("require trials >= 1 and points >= 2"));
    }
    let manifest = RunManifest::new("reproduce-all", profile.name.to_string(), seed)
        .with_override("trials", trials)
        .with_override("points", points);

    // resource table
    let timing = EccTiming::from_layout(&profile.params, &LogicalQubitTile::steane_level2())?;
    let mut table = table2_header();
    for bits in [128u64, 512, 1024, 2048] {
        let est = shor::estimate(bits, &timing, &profile.params)?;
        writeln!(table, "{}", table2_row(&est))?;
    }
    emitter.csv_quiet("table2.csv", &manifest, &table)?;

    // threshold sweep
    let grid = log_grid(1e-4, 1e-2, points);
    let sweep = stabsim::threshold_sweep(
        &LogicalQubitTile::steane_level2(),
        &[1, 2],
        &grid,
        trials,
        seed,
    )?;
    let mut body = threshold_csv(&sweep.points)?;
    if let Some(c) = stabsim::crossing_estimate(&sweep.points) {
        writeln!(
            body,
            "# crossing_probability,{},interval_low,{},interval_high,{}",
            num(c.p_star),
            num(c.lo),
            num(c.hi)
        )?;
    }
    emitter.csv_quiet("fig7_threshold.csv", &manifest, &body)?;

    // spacing sweep
    let model = ChannelModel::default();
    let distances: Vec<u64> = (500..=20_000).step_by(500).collect();
    let rows = interconnect::spacing_sweep_rows(
        &distances,
        &[35, 70, 100, 350, 500, 1000],
        interconnect::DEFAULT_TARGET_FIDELITY,
        &profile.params,
        &model,
    );
    let mut spacing_body = spacing_csv(&rows)?;
    if let Some(cross) = interconnect::crossover_distance(
        100,
        350,
        interconnect::DEFAULT_TARGET_FIDELITY,
        &profile.params,
        &model,
        25_000,
        250,
    ) {
        writeln!(spacing_body, "# crossover_100_vs_350_cells,{cross}")?;
    }
    emitter.csv_quiet("fig8_spacing.csv", &manifest, &spacing_body)?;

    emitter.json(
        "reproduce_all.json",
        &manifest,
        serde_json::json!({
            "artifacts": ["table2.csv", "fig7_threshold.csv", "fig8_spacing.csv"],
            "trials": trials,
            "points": points,
        }),
    )?;
    Ok(())
}

fn log_grid(p_min: f64, p_max: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            (p_min.ln() + t * (p_max.ln() - p_min.ln())).exp()
        })
        .collect()
}

fn format_list(levels: &[u8]) -> String {
    levels
        .iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
