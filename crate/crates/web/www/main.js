import init, { transformSeries, robustnessCurve, reconfigure } from "./pkg/dyncover_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

// Draws each series as a polyline over a shared x range.
function plot(canvas, xs, series, opts = {}) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 30;
  ctx.clearRect(0, 0, w, h);
  const ys = series.flatMap((s) => s.ys.filter(Number.isFinite));
  const ymax = opts.ymax ?? Math.max(1, ...ys);
  const xmax = Math.max(1, xs[xs.length - 1] ?? 1);
  const px = (x) => pad + (x / xmax) * (w - 2 * pad);
  const py = (y) => h - pad - (Math.min(y, ymax) / ymax) * (h - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad, w - 2 * pad, h - 2 * pad);
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.fillText(ymax.toFixed(ymax < 10 ? 2 : 0), 2, pad + 4);
  ctx.fillText("0", 2, h - pad);
  ctx.fillText(String(xmax), w - pad - 10, h - pad + 14);
  series.forEach((s, k) => {
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dash ?? []);
    ctx.beginPath();
    let pen = false;
    xs.forEach((x, i) => {
      const y = s.ys[i];
      if (!Number.isFinite(y)) { pen = false; return; }
      pen ? ctx.lineTo(px(x), py(y)) : ctx.moveTo(px(x), py(y));
      pen = true;
    });
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = s.color;
    ctx.fillText(s.label, pad + 8 + k * 160, pad - 8);
  });
}

function guard(statId, fn) {
  return () => {
    $(statId).classList.remove("err");
    try {
      fn();
    } catch (e) {
      $(statId).textContent = String(e.message ?? e);
      $(statId).classList.add("err");
    }
  };
}

function runTransform() {
  const [algo, mode] = $("t-pipe").value.split("/");
  const s = JSON.parse(transformSeries(
    num("t-n"), num("t-m"), num("t-f"), num("t-c"), num("t-steps"), BigInt(num("t-seed")),
    algo, mode, num("t-eps")));
  const xs = s.points.map((p) => p.step);
  plot($("t-recourse"), xs, [
    { label: "output recourse", color: "#c33", ys: s.points.map((p) => p.recourse) },
    { label: "background recourse", color: "#39c", ys: s.points.map((p) => p.background_recourse) },
    { label: "cap", color: "#999", dash: [4, 4], ys: s.points.map(() => s.recourse_cap) },
  ]);
  plot($("t-cost"), xs, [
    { label: "cost(output)", color: "#c33", ys: s.points.map((p) => p.output_cost) },
    { label: "cost(background)", color: "#39c", ys: s.points.map((p) => p.background_cost) },
  ]);
  const rs = s.points.map((p) => p.recourse);
  const bs = s.points.map((p) => p.background_recourse);
  $("t-stat").textContent =
    `α=${s.alpha.toFixed(3)}  cap=${s.recourse_cap}  max recourse=${Math.max(...rs)}  ` +
    `max background recourse=${Math.max(...bs)}`;
}

function runRobustness() {
  const pts = JSON.parse(robustnessCurve(num("r-n"), num("r-f")));
  const xs = pts.map((p) => p.deleted);
  const ymax = Math.max(...pts.map((p) => p.pd_ratio));
  plot($("r-plot"), xs, [
    { label: "primal-dual / OPT", color: "#c33", ys: pts.map((p) => p.pd_ratio) },
    { label: "greedy / OPT", color: "#393", ys: pts.map((p) => p.greedy_ratio) },
    { label: "H_n/(1−δ)", color: "#999", dash: [4, 4], ys: pts.map((p) => p.greedy_bound ?? NaN) },
  ], { ymax });
  const last = pts[pts.length - 1];
  $("r-stat").textContent =
    `after ${last.deleted} deletions: OPT=${last.opt}  greedy ratio=${last.greedy_ratio}  pd ratio=${last.pd_ratio}`;
}

function runReconfig() {
  const n = num("b-n");
  const frames = JSON.parse(reconfigure(n, num("b-eps")));
  const xs = frames.map((f) => f.step);
  plot($("b-plot"), xs, [
    { label: "left vertices", color: "#39c", ys: frames.map((f) => f.left) },
    { label: "right vertices", color: "#c33", ys: frames.map((f) => f.right) },
    { label: "recourse", color: "#393", ys: frames.map((f) => f.recourse) },
  ], { ymax: n / 2 });
  const feasible = frames.every((f) => f.feasible);
  const maxCost = Math.max(...frames.map((f) => f.output_cost));
  $("b-stat").textContent =
    `${frames.length} steps  feasible throughout: ${feasible}  max cost ${maxCost} (source+target = ${n})`;
}

await init();
$("t-run").onclick = guard("t-stat", runTransform);
$("r-run").onclick = guard("r-stat", runRobustness);
$("b-run").onclick = guard("b-stat", runReconfig);
$("t-run").onclick();
$("r-run").onclick();
$("b-run").onclick();
