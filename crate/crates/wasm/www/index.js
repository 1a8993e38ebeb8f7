import init, { lhs_curve, sweep, parameter_names } from "./pkg/bohr_wasm.js";

const $ = (id) => document.getElementById(id);

const DEFAULTS = {
  T31: "m=1 p=1", T32: "m=1 p=1", T33: "s=1 m=1 p=1 q=1", T34: "s=1 m=1 p=1 q=1",
  T41: "m=1 lambda=0.5", T42: "m=1 lambda=0.5", T43: "m=1 p=1 N=2", T44: "m=1 p=1 N=2",
  T51: "m=1 poly=1.7777778,18.6095",
};

function report(el, text, isError) {
  el.textContent = text;
  el.className = isError ? "err" : "";
}

// Lines are [{xs, ys, color, dash}]; null y values break the stroke.
function plot(canvas, lines, opts) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 40;
  ctx.clearRect(0, 0, w, h);
  const xs = lines.flatMap((l) => l.xs);
  const x0 = Math.min(...xs), x1 = Math.max(...xs);
  const [y0, y1] = opts.yRange;
  const sx = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - y0) / (y1 - y0 || 1)) * (h - 2 * pad);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.fillText(x0.toPrecision(3), pad, h - pad + 15);
  ctx.fillText(x1.toPrecision(3), w - pad - 30, h - pad + 15);
  ctx.fillText(y1.toPrecision(3), 2, pad + 4);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);
  ctx.fillText(opts.xLabel, w / 2, h - 8);

  ctx.save();
  ctx.beginPath();
  ctx.rect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.clip();
  for (const line of lines) {
    ctx.strokeStyle = line.color;
    ctx.setLineDash(line.dash || []);
    ctx.lineWidth = 2;
    ctx.beginPath();
    let pen = false;
    line.xs.forEach((x, i) => {
      const y = line.ys[i];
      if (y === null) { pen = false; return; }
      if (pen) ctx.lineTo(sx(x), sy(y)); else ctx.moveTo(sx(x), sy(y));
      pen = true;
    });
    ctx.stroke();
  }
  for (const m of opts.markers || []) {
    ctx.fillStyle = m.color;
    ctx.beginPath();
    ctx.arc(sx(m.x), sy(m.y), 4, 0, 2 * Math.PI);
    ctx.fill();
  }
  ctx.restore();
}

function drawCurve() {
  const out = $("curve-out");
  try {
    const c = JSON.parse(lhs_curve($("problem").value, $("params").value, 400));
    const lines = [
      { xs: c.r, ys: c.class_bound, color: "#1f5fbf" },
      { xs: [c.r[0], c.r[c.r.length - 1]], ys: [c.target, c.target], color: "#c33", dash: [6, 4] },
    ];
    if ($("extremal").checked) {
      lines.push({ xs: c.r, ys: c.extremal, color: "#2a2", dash: [2, 3] });
    }
    plot($("curve-plot"), lines, {
      yRange: [0, 2 * c.target],
      xLabel: "r",
      markers: [{ x: c.radius, y: c.target, color: "#000" }],
    });
    report(out, `${c.problem}: radius ${c.radius.toPrecision(12)} (target ${c.target})`);
  } catch (e) {
    report(out, String(e.message || e), true);
  }
}

function drawSweep() {
  const out = $("sweep-out");
  try {
    const s = JSON.parse(sweep(
      $("problem").value, $("params").value, $("sweep-param").value,
      Number($("sweep-lo").value), Number($("sweep-hi").value), Number($("sweep-steps").value),
    ));
    const top = Math.max(...s.radii);
    plot($("sweep-plot"), [{ xs: s.values, ys: s.radii, color: "#7a3fb0" }], {
      yRange: [0, Math.min(1, top * 1.1)],
      xLabel: s.param,
      markers: s.values.map((x, i) => ({ x, y: s.radii[i], color: "#7a3fb0" })),
    });
    const lo = s.radii[0], hi = s.radii[s.radii.length - 1];
    report(out, `${s.problem} over ${s.param}: ${s.values.length} points, radius ${lo.toPrecision(6)} -> ${hi.toPrecision(6)}`);
  } catch (e) {
    report(out, String(e.message || e), true);
  }
}

function onProblem() {
  const id = $("problem").value;
  $("params").value = DEFAULTS[id];
  $("names").textContent = "takes " + JSON.parse(parameter_names(id)).join(", ");
  $("sweep-param").value = id === "T41" || id === "T42" ? "lambda" : "m";
  $("sweep-lo").value = id === "T41" || id === "T42" ? 0 : 1;
  $("sweep-hi").value = id === "T41" || id === "T42" ? 1 : 8;
  drawCurve();
  drawSweep();
}

await init();
$("problem").addEventListener("change", onProblem);
$("curve").addEventListener("click", drawCurve);
$("extremal").addEventListener("change", drawCurve);
$("sweep").addEventListener("click", drawSweep);
$("params").addEventListener("keydown", (e) => { if (e.key === "Enter") drawCurve(); });
onProblem();
