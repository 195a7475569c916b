import init, { explore_cycle, cycle_dynamics, family_costs } from "./pkg/vgg_wasm.js";

const $ = (id) => document.getElementById(id);
const palette = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6", "#bcf60c"];
const color = (i) => palette[i % palette.length];

let replay = null;

function positions() {
  return $("positions").value.split(",").map((s) => s.trim()).filter((s) => s !== "").map(Number);
}

function setPositions(list) {
  $("positions").value = list.join(",");
}

function vertexXY(v, n, r) {
  const t = (2 * Math.PI * v) / n - Math.PI / 2;
  return [r * Math.cos(t), r * Math.sin(t)];
}

function draw(report) {
  const svg = $("cycle");
  const n = report.n;
  const ns = "http://www.w3.org/2000/svg";
  svg.replaceChildren();
  const ring = document.createElementNS(ns, "circle");
  Object.entries({ r: 170, fill: "none", stroke: "#999" }).forEach(([k, v]) => ring.setAttribute(k, v));
  ring.style.pointerEvents = "none";
  svg.append(ring);
  for (let v = 0; v < n; v++) {
    const [x, y] = vertexXY(v, n, 170);
    const owners = report.owners[v];
    const g = document.createElementNS(ns, "g");
    if (owners.length === 0) {
      g.append(disc(ns, x, y, "#fff"));
    } else {
      // One wedge per sharing player.
      owners.forEach((p, j) => {
        const path = document.createElementNS(ns, "path");
        const a0 = (2 * Math.PI * j) / owners.length;
        const a1 = (2 * Math.PI * (j + 1)) / owners.length;
        const r = 13;
        const d = owners.length === 1
          ? `M ${x - r} ${y} a ${r} ${r} 0 1 0 ${2 * r} 0 a ${r} ${r} 0 1 0 ${-2 * r} 0`
          : `M ${x} ${y} L ${x + r * Math.cos(a0)} ${y + r * Math.sin(a0)} A ${r} ${r} 0 0 1 ${x + r * Math.cos(a1)} ${y + r * Math.sin(a1)} Z`;
        path.setAttribute("d", d);
        path.setAttribute("fill", color(p));
        path.setAttribute("fill-opacity", "0.45");
        path.style.pointerEvents = "none";
        g.append(path);
      });
      const hit = disc(ns, x, y, "transparent");
      g.append(hit);
    }
    g.addEventListener("click", (ev) => toggle(v, ev.shiftKey));
    const label = document.createElementNS(ns, "text");
    const [lx, ly] = vertexXY(v, n, 195);
    label.setAttribute("x", lx - 5);
    label.setAttribute("y", ly + 4);
    label.textContent = v;
    svg.append(g, label);
  }
  report.profile.forEach((v, i) => {
    const stacked = report.profile.slice(0, i).filter((u) => u === v).length;
    const [x, y] = vertexXY(v, n, 140 - 16 * stacked);
    const token = disc(ns, x, y, color(i), 7);
    token.style.pointerEvents = "none";
    svg.append(token);
  });
}

function disc(ns, x, y, fill, r = 13) {
  const c = document.createElementNS(ns, "circle");
  c.setAttribute("cx", x);
  c.setAttribute("cy", y);
  c.setAttribute("r", r);
  c.setAttribute("fill", fill);
  return c;
}

function toggle(v, remove) {
  const list = positions();
  if (remove) {
    const i = list.lastIndexOf(v);
    if (i >= 0) list.splice(i, 1);
  } else {
    list.push(v);
  }
  setPositions(list);
  evaluate();
}

function summarize(report) {
  const rows = report.profile.map((v, i) => {
    const br = report.best_responses[i];
    return `<tr><td style="color:${color(i)}">●</td><td>${i}</td><td>${v}</td><td>${report.payoffs[i]}</td>` +
      `<td>${br.value}</td><td>${br.vertices.join(", ")}</td></tr>`;
  }).join("");
  const verdict = (ok) => (ok ? '<span class="good">yes</span>' : '<span class="bad">no</span>');
  const violated = report.conditions.violated.length ? ` (violated ${report.conditions.violated.join(", ")})` : "";
  $("summary").innerHTML =
    `<table><tr><th></th><th>player</th><th>vertex</th><th>payoff</th><th>best reply</th><th>at</th></tr>${rows}</table>` +
    `<p>Nash (exhaustive): ${verdict(report.nash)}<br>` +
    `Nash (four conditions): ${verdict(report.conditions.nash)}${violated}<br>` +
    `Social cost: ${report.social_cost}</p>`;
}

function evaluate() {
  try {
    const report = JSON.parse(explore_cycle(Number($("n").value), $("positions").value, $("disjoint").checked));
    draw(report);
    summarize(report);
    $("status").textContent = "";
  } catch (e) {
    $("status").textContent = String(e.message ?? e);
  }
}

function runDynamics() {
  try {
    const run = JSON.parse(cycle_dynamics(
      Number($("n").value), $("positions").value, $("disjoint").checked,
      $("random").checked, BigInt($("seed").value || 0)));
    replay = { run, index: 0 };
    $("trace").textContent = run.trace.map((m, i) => {
      const pot = run.potentials[i + 1] ? `  gaps [${run.potentials[i + 1].join(",")}]` : "";
      return `step ${m.step}: player ${m.player} ${m.from} -> ${m.to}  (${m.payoff_before} -> ${m.payoff_after})${pot}`;
    }).join("\n") || "no unhappy player";
    $("status").textContent = `${run.outcome} after ${run.trace.length} moves`;
    $("step").disabled = run.states.length < 2;
  } catch (e) {
    $("status").textContent = String(e.message ?? e);
  }
}

function step() {
  if (!replay) return;
  replay.index = Math.min(replay.index + 1, replay.run.states.length - 1);
  setPositions(replay.run.states[replay.index]);
  evaluate();
  if (replay.index === replay.run.states.length - 1) $("step").disabled = true;
}

function tabulate() {
  const k = Number($("fk").value);
  const rows = [];
  for (let a = 1; a <= Number($("fa").value); a++) {
    try {
      const fam = JSON.parse(family_costs(k, a, a * a)).family;
      rows.push(`<tr><td>${a}</td><td>${fam.b}</td><td>${fam.n}</td><td>${fam.cost_f}</td><td>${fam.cost_f_prime}</td><td>${fam.ratio}</td></tr>`);
    } catch (e) {
      rows.push(`<tr><td>${a}</td><td colspan="5" class="bad">${e.message ?? e}</td></tr>`);
    }
  }
  $("familyTable").innerHTML =
    "<tr><th>a</th><th>b</th><th>n</th><th>cost(f)</th><th>cost(f')</th><th>ratio</th></tr>" + rows.join("");
}

await init();
$("explore").addEventListener("click", evaluate);
$("n").addEventListener("change", evaluate);
$("disjoint").addEventListener("change", evaluate);
$("run").addEventListener("click", runDynamics);
$("step").addEventListener("click", step);
$("family").addEventListener("click", tabulate);
evaluate();
tabulate();
