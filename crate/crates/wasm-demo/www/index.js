import init, {
  butterfly_tree,
  random_shape,
  simple_height_law,
  nonsimple_height_histogram,
} from "./pkg/butterfly_bst_wasm.js";

const $ = (id) => document.getElementById(id);

function guard(infoId, f) {
  const info = $(infoId);
  try {
    info.classList.remove("err");
    f(info);
  } catch (e) {
    info.classList.add("err");
    info.textContent = String(e.message ?? e);
  }
}

function drawTree() {
  guard("tree-info", (info) => {
    const t = JSON.parse(butterfly_tree($("kind").value, $("shape").value));
    const n = t.nodes.length;
    const c = $("tree");
    const ctx = c.getContext("2d");
    ctx.clearRect(0, 0, c.width, c.height);
    const pad = 16;
    const dx = (c.width - 2 * pad) / Math.max(n - 1, 1);
    const dy = (c.height - 2 * pad) / Math.max(t.height, 1);
    const pos = (node) => [pad + (node.key - 1) * dx, pad + node.depth * dy];
    ctx.strokeStyle = "#888";
    for (const node of t.nodes) {
      if (node.parent === null) continue;
      const [x, y] = pos(node);
      const [px, py] = pos(t.nodes[node.parent - 1]);
      ctx.beginPath();
      ctx.moveTo(px, py);
      ctx.lineTo(x, y);
      ctx.stroke();
    }
    const r = Math.max(1.5, Math.min(9, dx / 2.5));
    ctx.fillStyle = "#2a5d9f";
    ctx.font = "10px sans-serif";
    ctx.textAlign = "center";
    for (const node of t.nodes) {
      const [x, y] = pos(node);
      ctx.beginPath();
      ctx.arc(x, y, r, 0, 2 * Math.PI);
      ctx.fill();
      if (n <= 32) {
        ctx.fillStyle = "#fff";
        ctx.fillText(node.key, x, y + 3.5);
        ctx.fillStyle = "#2a5d9f";
      }
    }
    const word = n <= 64 ? t.word.join(" ") : `${t.word.slice(0, 32).join(" ")} ...`;
    info.textContent =
      `${t.kind} ${t.shape}\nword: ${word}\n` +
      `height ${t.height}, left edge ${t.left_edge}, right edge ${t.right_edge}`;
  });
}

function bars(canvas, xs, ys, color) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const lo = Math.min(...xs);
  const hi = Math.max(...xs);
  const top = Math.max(...ys);
  const pad = 24;
  const w = (canvas.width - 2 * pad) / (hi - lo + 1);
  const h = canvas.height - 2 * pad;
  ctx.fillStyle = color;
  xs.forEach((x, i) => {
    const bh = (ys[i] / top) * h;
    ctx.fillRect(pad + (x - lo) * w, pad + h - bh, Math.max(w - 1, 1), bh);
  });
  ctx.fillStyle = "#000";
  ctx.font = "11px sans-serif";
  ctx.textAlign = "left";
  ctx.fillText(String(lo), pad, canvas.height - 6);
  ctx.textAlign = "right";
  ctx.fillText(String(hi), canvas.width - pad, canvas.height - 6);
}

function plotLaw() {
  guard("law-info", (info) => {
    const law = JSON.parse(simple_height_law(Number($("ln").value)));
    bars($("lawc"), law.height, law.probability, "#3c8d5a");
    const mean = law.height.reduce((s, h, i) => s + h * law.probability[i], 0);
    info.textContent = `${law.height.length} distinct heights, mean ${mean.toFixed(3)}`;
  });
}

function plotHist() {
  guard("hist-info", (info) => {
    const r = JSON.parse(
      nonsimple_height_histogram(
        Number($("hn").value),
        BigInt($("ht").value),
        BigInt($("hs").value),
      ),
    );
    bars($("histc"), r.height, r.count, "#b0602a");
    info.textContent =
      `mean ${r.mean.toFixed(3)}, sd ${r.std_dev.toFixed(3)}; ` +
      `bounds on the mean [${r.lower_bound.toFixed(2)}, ${r.upper_bound.toFixed(2)}]`;
  });
}

await init();
$("draw").onclick = drawTree;
$("random").onclick = () =>
  guard("tree-info", () => {
    $("shape").value = JSON.parse(
      random_shape($("kind").value, Number($("rdepth").value), BigInt($("rseed").value)),
    );
    drawTree();
  });
$("law").onclick = plotLaw;
$("hist").onclick = plotHist;
drawTree();
plotLaw();
