import init, { solve_pgsolver, decompose_pgsolver, universal } from "./pkg/pix_wasm_demo.js";

const $ = (id) => document.getElementById(id);
const show = (id, json) => { $(id).textContent = JSON.stringify(JSON.parse(json), null, 2); };

await init();

$("solve").onclick = () => show("solve-out", solve_pgsolver($("game").value));
$("decompose").onclick = () => show("decompose-out", decompose_pgsolver($("graph").value));
$("universal").onclick = () => {
  const v = (id) => Number($(id).value);
  show("universal-out", universal(v("n"), v("k"), v("d"), v("w")));
};
