// Demo page wiring: calls the wasm bindings and draws log-log curves on
// plain canvases. Build the wasm package first:
//   wasm-pack build crates/qla-wasm --target web --out-dir ../../www/pkg
import init, {
  estimate_shor,
  spacing_curves,
  reliability_curves,
  ec_latency_summary,
} from "./pkg/qla_wasm.js";

const COLORS = ["#4062bb", "#59a14f", "#e15759", "#b07aa1", "#f28e2b", "#76b7b2"];

function plotFrame(ctx, w, h, pad) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#9aa4b2";
  ctx.strokeRect(pad.l, pad.t, w - pad.l - pad.r, h - pad.t - pad.b);
}

function makeScale(min, max, lo, hi, log) {
  if (log) {
    const lmin = Math.log10(min), lmax = Math.log10(max);
    return v => lo + ((Math.log10(v) - lmin) / (lmax - lmin)) * (hi - lo);
  }
  return v => lo + ((v - min) / (max - min)) * (hi - lo);
}

function axisLabel(ctx, text, x, y, vertical) {
  ctx.save();
  ctx.fillStyle = "#5b6475";
  ctx.font = "12px system-ui";
  if (vertical) {
    ctx.translate(x, y);
    ctx.rotate(-Math.PI / 2);
    ctx.fillText(text, 0, 0);
  } else {
    ctx.fillText(text, x, y);
  }
  ctx.restore();
}

function drawSpacing(data) {
  const canvas = document.getElementById("sp-plot");
  const ctx = canvas.getContext("2d");
  const pad = { l: 70, r: 150, t: 15, b: 40 };
  plotFrame(ctx, canvas.width, canvas.height, pad);

  const rows = data.rows.filter(r => r.feasible);
  const times = rows.map(r => r.connection_time_us);
  const tMin = Math.min(...times) * 0.9, tMax = Math.max(...times) * 1.1;
  const dMin = data.distances[0], dMax = data.distances[data.distances.length - 1];
  const sx = makeScale(dMin, dMax, pad.l, canvas.width - pad.r, false);
  const sy = makeScale(tMin, tMax, canvas.height - pad.b, pad.t, true);

  data.candidates.forEach((cand, ci) => {
    ctx.strokeStyle = COLORS[ci % COLORS.length];
    ctx.lineWidth = 1.6;
    ctx.beginPath();
    let started = false;
    for (const r of data.rows) {
      if (r.spacing_cells !== cand || !r.feasible) { started = false; continue; }
      const x = sx(r.distance_cells), y = sy(r.connection_time_us);
      started ? ctx.lineTo(x, y) : ctx.moveTo(x, y);
      started = true;
    }
    ctx.stroke();
    ctx.fillStyle = COLORS[ci % COLORS.length];
    ctx.fillText(`${cand} cells`, canvas.width - pad.r + 10, pad.t + 16 + 16 * ci);
  });
  axisLabel(ctx, "total distance (cells)", canvas.width / 2 - 60, canvas.height - 10, false);
  axisLabel(ctx, "connection time (µs, log)", 18, canvas.height / 2 + 60, true);

  const crossEl = document.getElementById("sp-cross");
  crossEl.textContent = data.crossover_100_vs_350
    ? `100-cell / 350-cell crossover ≈ ${data.crossover_100_vs_350} cells`
    : "no 100/350 crossover in range";
}

function drawReliability(data, which) {
  const canvas = document.getElementById("rel-plot");
  const ctx = canvas.getContext("2d");
  const pad = { l: 70, r: 120, t: 15, b: 40 };
  plotFrame(ctx, canvas.width, canvas.height, pad);

  const curves = which === "empirical" ? data.curves_empirical : data.curves_theoretical;
  const flat = curves.flat().filter(v => v > 0);
  const yMin = Math.max(Math.min(...flat), 1e-40), yMax = Math.max(...flat) * 2;
  const sx = makeScale(data.p_grid[0], data.p_grid[data.p_grid.length - 1], pad.l, canvas.width - pad.r, true);
  const sy = makeScale(yMin, yMax, canvas.height - pad.b, pad.t, true);

  // break-even guide: encoded failure equals the bare component rate
  ctx.strokeStyle = "#9aa4b2";
  ctx.setLineDash([5, 4]);
  ctx.beginPath();
  data.p_grid.forEach((p, i) => {
    const x = sx(p), y = sy(Math.min(Math.max(p, yMin), yMax));
    i ? ctx.lineTo(x, y) : ctx.moveTo(x, y);
  });
  ctx.stroke();
  ctx.setLineDash([]);

  curves.forEach((curve, li) => {
    ctx.strokeStyle = COLORS[li % COLORS.length];
    ctx.lineWidth = 1.6;
    ctx.beginPath();
    let started = false;
    curve.forEach((v, i) => {
      if (v <= 0) { started = false; return; }
      const x = sx(data.p_grid[i]);
      const y = sy(Math.min(Math.max(v, yMin), yMax));
      started ? ctx.lineTo(x, y) : ctx.moveTo(x, y);
      started = true;
    });
    ctx.stroke();
    ctx.fillStyle = COLORS[li % COLORS.length];
    ctx.fillText(`level ${data.levels[li]}`, canvas.width - pad.r + 10, pad.t + 16 + 16 * li);
  });
  axisLabel(ctx, "component failure probability (log)", canvas.width / 2 - 90, canvas.height - 10, false);
  axisLabel(ctx, "encoded failure probability (log)", 18, canvas.height / 2 + 80, true);
}

function renderEstimate(est) {
  const fmt = (v, digits = 3) =>
    typeof v === "number" ? Number(v).toPrecision(digits) : v;
  document.getElementById("shor-out").innerHTML = `
    <table>
      <tr><th>logical qubits</th><th>Toffoli gates</th><th>total gates</th>
          <th>EC steps</th><th>area (m²)</th><th>runtime (days)</th><th>feasible at level 2</th></tr>
      <tr><td>${est.logical_qubits}</td><td>${est.toffoli_count}</td>
          <td>${est.total_gates}</td><td>${fmt(est.ec_steps, 4)}</td>
          <td>${est.area_m2.toFixed(2)}</td><td>${est.runtime_days.toFixed(1)}</td>
          <td>${est.feasible_at_level2 ? "yes" : "no"}</td></tr>
    </table>`;
}

async function main() {
  await init();
  const ec = JSON.parse(ec_latency_summary());
  document.getElementById("ec-summary").textContent =
    `Error-correction step: ${(ec.level1_s * 1e3).toFixed(1)} ms at level 1, ` +
    `${(ec.level2_s * 1e3).toFixed(1)} ms at level 2.`;

  document.getElementById("shor-run").onclick = () => {
    const bits = Number(document.getElementById("shor-bits").value);
    const profile = document.getElementById("shor-profile").value;
    try {
      renderEstimate(JSON.parse(estimate_shor(bits, profile)));
    } catch (e) {
      document.getElementById("shor-out").textContent = `error: ${e}`;
    }
  };

  document.getElementById("sp-run").onclick = () => {
    const dMax = Number(document.getElementById("sp-dmax").value);
    const eps = Number(document.getElementById("sp-eps").value);
    try {
      drawSpacing(JSON.parse(spacing_curves(500, dMax, 250, eps)));
    } catch (e) {
      document.getElementById("sp-cross").textContent = `error: ${e}`;
    }
  };

  document.getElementById("rel-run").onclick = () => {
    const maxl = Number(document.getElementById("rel-maxl").value);
    const which = document.getElementById("rel-th").value;
    try {
      drawReliability(JSON.parse(reliability_curves(1e-8, 1e-2, 60, maxl)), which);
    } catch (e) {
      console.error(e);
    }
  };

  // initial renders
  document.getElementById("shor-run").click();
  document.getElementById("sp-run").click();
  document.getElementById("rel-run").click();
}

main();
