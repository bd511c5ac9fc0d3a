// Build the wasm package first:
//   cargo build -p leo-vn-wasm --target wasm32-unknown-unknown --release
//   wasm-bindgen --target web --out-dir crates/wasm/www/pkg \
//     target/wasm32-unknown-unknown/release/leo_vn_wasm.wasm
import init, { division_grid, hisl_sweep, snapshot_view, orbital_period } from "./pkg/leo_vn_wasm.js";

const $ = (id) => document.getElementById(id);
const REGION_COLOR = { R1: "#8ec5e8", R2: "#f3b27a", P1: "#ddd", P2: "#ccc" };

function params() {
  return {
    n1: +$("n1").value,
    n2: +$("n2").value,
    f: +$("f").value,
    polar: +$("polar").value,
    mode: $("mode").value,
  };
}

// equirectangular, lon in [-180, 180)
function projector(canvas) {
  const { width: w, height: h } = canvas;
  return (lon, lat) => [((lon + 180) / 360) * w, ((90 - lat) / 180) * h];
}

function wrapLon(lon) {
  return ((((lon + 180) % 360) + 360) % 360) - 180;
}

function drawGrid(cells) {
  const canvas = $("grid");
  const ctx = canvas.getContext("2d");
  const xy = projector(canvas);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (const c of cells) {
    let [lo, hi] = c.lon.map(wrapLon);
    if (hi <= lo) hi += 360;
    ctx.fillStyle = REGION_COLOR[c.region] ?? "#eee";
    ctx.strokeStyle = "#fff";
    for (const shift of [0, -360]) {
      const [x0, y0] = xy(lo + shift, c.lat[1]);
      const [x1, y1] = xy(hi + shift, c.lat[0]);
      ctx.fillRect(x0, y0, x1 - x0, y1 - y0);
      ctx.strokeRect(x0, y0, x1 - x0, y1 - y0);
    }
  }
}

function drawSnapshot(view) {
  const canvas = $("snap");
  const ctx = canvas.getContext("2d");
  const xy = projector(canvas);
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (const l of view.links) {
    if (!l.active) continue;
    const a = view.sats[l.a], b = view.sats[l.b];
    if (Math.abs(a.lon - b.lon) > 90) continue; // crosses the map edge
    ctx.strokeStyle = l.horizontal ? "#2471a3" : "#bbb";
    ctx.beginPath();
    ctx.moveTo(...xy(a.lon, a.lat));
    ctx.lineTo(...xy(b.lon, b.lat));
    ctx.stroke();
  }
  ctx.fillStyle = "#222";
  for (const s of view.sats) {
    const [x, y] = xy(s.lon, s.lat);
    ctx.fillRect(x - 1.5, y - 1.5, 3, 3);
  }
  $("snapinfo").textContent = `${view.sats.length} satellites, ${view.active_hisl} active H-ISLs`;
}

function drawSweep(points, current) {
  const canvas = $("sweep");
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = 40;
  ctx.clearRect(0, 0, w, h);
  const max = Math.max(1, ...points.flatMap((p) => [p.conventional ?? 0, p.optimized ?? 0]));
  const x = (f) => pad + (f / Math.max(1, points.length - 1)) * (w - 2 * pad);
  const y = (n) => h - pad - (n / max) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.fillText(String(max), 4, pad + 4);
  ctx.fillText("0", 4, h - pad);
  for (const p of points) ctx.fillText(String(p.f), x(p.f) - 4, h - pad + 14);

  if (current < points.length) {
    ctx.strokeStyle = "#ccc";
    ctx.beginPath();
    ctx.moveTo(x(current), pad);
    ctx.lineTo(x(current), h - pad);
    ctx.stroke();
  }
  for (const [key, color] of [["conventional", "#c0392b"], ["optimized", "#2471a3"]]) {
    ctx.strokeStyle = color;
    ctx.beginPath();
    points.forEach((p, i) => (i ? ctx.lineTo : ctx.moveTo).call(ctx, x(p.f), y(p[key] ?? 0)));
    ctx.stroke();
  }
}

let period = 1;

function render(withSweep) {
  const p = params();
  try {
    period = orbital_period(p.n1, p.n2, p.polar);
    const t = +$("t").value * period;
    $("tlabel").textContent = `${t.toFixed(0)} s of ${period.toFixed(0)} s`;
    drawGrid(JSON.parse(division_grid(p.n1, p.n2, p.f, p.polar, p.mode, t)));
    drawSnapshot(JSON.parse(snapshot_view(p.n1, p.n2, p.f, p.polar, p.mode, t)));
    if (withSweep) drawSweep(JSON.parse(hisl_sweep(p.n1, p.n2, p.polar)), p.f);
    $("status").textContent = "";
  } catch (e) {
    $("status").textContent = String(e);
  }
}

await init();
for (const id of ["n1", "n2", "f", "polar", "mode"]) $(id).addEventListener("change", () => render(true));
$("t").addEventListener("input", () => render(false));
render(true);
