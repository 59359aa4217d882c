import init, { explore_case, log_ratio_cf, corollary_search } from "./pkg/pillai_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function fail(out, e) {
  out.textContent = String(e);
  out.className = "err";
}

function axes(ctx, w, h) {
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(40, 10);
  ctx.lineTo(40, h - 20);
  ctx.lineTo(w - 10, h - 20);
  ctx.stroke();
}

function plotCase(evidence) {
  const c = $("case-plot");
  const ctx = c.getContext("2d");
  axes(ctx, c.width, c.height);
  const rows = evidence.filter((e) => Number.isFinite(e.lhs_hi));
  if (!rows.length) return;
  const top = Math.max(...rows.map((e) => Math.max(e.lhs_hi, e.rhs_lo)), 1);
  const slot = (c.width - 60) / rows.length;
  const scale = (c.height - 40) / top;
  rows.forEach((e, i) => {
    const x = 45 + i * slot;
    const bw = Math.max(2, slot / 2 - 2);
    ctx.fillStyle = "#9bc";
    ctx.fillRect(x + bw, c.height - 20 - e.rhs_lo * scale, bw, e.rhs_lo * scale);
    ctx.fillStyle = e.eliminated ? "#247" : "#b22";
    ctx.fillRect(x, c.height - 20 - e.lhs_hi * scale, bw, e.lhs_hi * scale);
    ctx.fillStyle = "#333";
    ctx.fillText(String(e.q_r), x, c.height - 6);
  });
}

function plotCf(convergents) {
  const c = $("cf-plot");
  const ctx = c.getContext("2d");
  axes(ctx, c.width, c.height);
  const n = convergents.length;
  if (!n) return;
  const slot = (c.width - 60) / n;
  const y = (v) => c.height - 20 - v * (c.height - 40);
  ctx.strokeStyle = "#d88";
  ctx.beginPath();
  ctx.moveTo(40, y(1));
  ctx.lineTo(c.width - 10, y(1));
  ctx.stroke();
  ctx.fillStyle = "#247";
  convergents.forEach((cv, i) => {
    const v = Math.min(cv.scaled_error, 1);
    ctx.beginPath();
    ctx.arc(45 + (i + 0.5) * slot, y(v), 3, 0, 2 * Math.PI);
    ctx.fill();
  });
}

function runCase() {
  const out = $("case-out");
  out.className = "";
  try {
    const r = JSON.parse(explore_case(num("case-p"), num("case-n")));
    const v = r.verdict;
    $("case-summary").textContent =
      `${r.case_tag}: ${v.status} by ${v.method}` +
      (v.q_max ? `, ${v.evidence.length} convergents with q ≤ ${v.q_max}` : "");
    plotCase(v.evidence);
    out.textContent = JSON.stringify(r, null, 2);
  } catch (e) {
    $("case-summary").textContent = "";
    plotCase([]);
    fail(out, e);
  }
}

function runCf() {
  const out = $("cf-out");
  out.className = "";
  try {
    const r = JSON.parse(log_ratio_cf(num("cf-a"), num("cf-b"), num("cf-q")));
    plotCf(r.convergents);
    out.textContent =
      `[${r.quotients.join(", ")}]  (${r.precision_bits} bits${r.terminated ? ", exact" : ""})\n` +
      r.convergents.map((c) => `${c.p}/${c.q}`).join("  ");
  } catch (e) {
    plotCf([]);
    fail(out, e);
  }
}

function runCorollary() {
  const out = $("cor-out");
  out.className = "";
  try {
    const r = JSON.parse(corollary_search(num("cor-n")));
    const c = r.case;
    out.textContent = [
      `x, y ≤ ${c.bounds.n_upper}, z ≤ ${c.bounds.z_upper}`,
      `z ≤ 3 solutions: ${c.small_z.map((s) => `(${s.x}, ${s.y}, ${s.z})`).join(" ")}`,
      `congruence pairs: ${c.pairs}`,
      `z candidates: ${c.z_candidates}`,
      `after the modular test: ${c.modular_survivors}`,
      r.only_trivial ? "only (1, 1, 2)" : `solutions: ${JSON.stringify(c.solutions)}`,
    ].join("\n");
  } catch (e) {
    fail(out, e);
  }
}

await init();
$("case-go").onclick = runCase;
$("cf-go").onclick = runCf;
$("cor-go").onclick = runCorollary;
runCase();
runCf();
