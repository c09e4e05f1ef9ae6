import init, { grid, costasCheck, familyMax } from "./pkg/costas_web.js";

const $ = (id) => document.getElementById(id);

function show(el, text, isError) {
  el.textContent = text;
  el.className = isError ? "err" : "";
}

function drawGrid() {
  const info = $("grid-info");
  let data;
  try {
    const p = parseInt($("grid-p").value, 10);
    data = JSON.parse(grid($("grid-a").value, $("grid-b").value, Number.isFinite(p) ? p : undefined));
  } catch (e) {
    show(info, String(e), true);
    return;
  }
  const rows = data.rows;
  const side = rows.length;
  const canvas = $("grid-canvas");
  const ctx = canvas.getContext("2d");
  const cell = Math.max(1, Math.floor(canvas.width / side));
  const peak = Math.max(1, ...rows.flat());
  ctx.fillStyle = "#000";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  for (let r = 0; r < side; r++) {
    for (let c = 0; c < side; c++) {
      const x = rows[r][c];
      if (x === 0) continue;
      const level = Math.round(80 + 175 * (x / peak));
      ctx.fillStyle = `rgb(${level}, ${Math.round(level * 0.55)}, 40)`;
      ctx.fillRect(c * cell, r * cell, cell, cell);
    }
  }
  const mid = data.radius;
  ctx.strokeStyle = "#fff";
  ctx.strokeRect(mid * cell, mid * cell, cell, cell);
  show(info, `order ${data.order}, value at (0,0) ${rows[mid][mid]}, max off (0,0) ${data.max_off_origin}`, false);
}

function runCheck() {
  try {
    const r = JSON.parse(costasCheck($("check-perm").value));
    show($("check-out"), [
      `Costas (auto-correlation): ${r.costas_by_grid}`,
      `Costas (difference triangle): ${r.costas_by_difference_triangle}`,
      `fixed points: [${r.fixed_points.join(", ")}]`,
      `fixed points form a Golomb ruler: ${r.fixed_points_golomb}`,
      `count below Sidon bound ${r.sidon_bound.toFixed(4)}: ${r.fixed_points_below_sidon_bound}`,
    ].join("\n"), false);
  } catch (e) {
    show($("check-out"), String(e), true);
  }
}

function runFamily() {
  try {
    const r = JSON.parse(familyMax(parseInt($("fam-p").value, 10), $("fam-id").value, $("fam-filter").value));
    const w = r.report.witnesses[0];
    show($("fam-out"), [
      `p = ${r.p}${r.safe_prime ? " (safe prime)" : ""}, t = ${r.t}, ${r.members.length} members`,
      `maximum: ${r.report.value} (${r.report.witnesses.length} attaining pairs)`,
      w ? `first witness: ${w.a} vs ${w.b} at u=${w.u}, v=${w.v}` : "",
    ].join("\n"), false);
    if (w) {
      $("grid-a").value = w.a;
      $("grid-b").value = w.b;
      $("grid-p").value = r.p;
      drawGrid();
    }
  } catch (e) {
    show($("fam-out"), String(e), true);
  }
}

await init();
$("grid-go").addEventListener("click", drawGrid);
$("check-go").addEventListener("click", runCheck);
$("fam-go").addEventListener("click", runFamily);
drawGrid();
runCheck();
