import init, { galois_check, locale_points, split_by_cover } from "./pkg/localic_demo.js";

const $ = (id) => document.getElementById(id);

function show(id, text) {
  const v = JSON.parse(text);
  $(id).textContent = v.error ? "error: " + v.error : JSON.stringify(v, null, 2);
}

function showPoints(text) {
  const v = JSON.parse(text);
  if (v.error) {
    $("p-out").textContent = "error: " + v.error;
    return;
  }
  const rows = v.points.map((p) => "{" + p.map(([a, b]) => a + "->" + b).join(", ") + "}");
  $("p-out").textContent = `${v.count} points (${v.generators} generators, ${v.covers} covers)\n` + rows.join("\n");
}

await init();

$("g-run").onclick = () => show("g-out", galois_check($("g-group").value, $("g-sub").value));
$("p-run").onclick = () => showPoints(locale_points($("p-kind").value, Number($("p-x").value), Number($("p-y").value)));
$("s-run").onclick = () => show("s-out", split_by_cover($("s-group").value, $("s-cover").value));
