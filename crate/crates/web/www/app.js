import init, { classify, automorphisms, fingerprints } from "./pkg/semifield_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function el(tag, text, attrs = {}) {
  const e = document.createElement(tag);
  if (text !== undefined) e.textContent = text;
  Object.assign(e, attrs);
  return e;
}

function table(head, rows) {
  const t = el("table");
  const tr = el("tr");
  head.forEach((h) => tr.append(el("th", h)));
  t.append(tr);
  for (const row of rows) {
    const r = el("tr");
    row.forEach((c, i) => r.append(el(i === 0 ? "th" : "td", String(c))));
    t.append(r);
  }
  return t;
}

function run(out, f) {
  const target = $(out);
  target.replaceChildren();
  try {
    f(target);
  } catch (e) {
    target.append(el("p", String(e), { className: "err" }));
  }
}

function showClasses(target) {
  const v = JSON.parse(classify(num("c-p"), num("c-r"), num("c-m")));
  const formula = v.formula === null ? "no formula" : `formula predicts ${v.formula}`;
  target.append(el("p", `q = ${v.q}, m = ${v.m}: ${v.count} classes (${formula})`));
  target.append(table(
    ["a", "class size", "|Aut|", "group"],
    v.classes.map((c) => [c.representative, c.size, c.group.order ?? "-", c.group.tag ?? c.group.error]),
  ));
}

function showAut(target) {
  const v = JSON.parse(automorphisms(num("a-p"), num("a-r"), num("a-n"), $("a-f").value));
  const note = v.complete ? "" : " (structured maps only: n < m - 1)";
  target.append(el("p", `f = ${v.f}: order ${v.order}, ${v.tag}${note}`));
  if (v.relations.length) target.append(el("p", "relations: " + v.relations.join(", ")));
  const names = v.elements.map((_, i) => `g${i}`);
  target.append(table(["g", "map", "order"], v.elements.map((m, i) => [names[i], m, v.element_orders[i]])));
  if (v.order <= 64) {
    target.append(el("p", "Composition table (row ∘ column):"));
    target.append(table(["∘", ...names], v.table.map((row, i) => [names[i], ...row.map((j) => names[j])])));
  }
}

function showFingerprints(target) {
  const v = JSON.parse(fingerprints(num("f-p"), num("f-r"), num("f-n"), $("f-eta").value, $("f-mu").value));
  if (v.coincide) target.append(el("p", "σ² = id and μ = 0: the four algebras coincide.", { className: "err" }));
  const yes = (b) => (b ? "yes" : "no");
  target.append(table(
    ["family", "dim N_l", "dim N_m", "dim N_r", "K·1 ⊆ N_l", "K·1 ⊆ N_m", "K·1 ⊆ N_r", "dim center"],
    v.fingerprints.map((f) => [f.family, ...f.dims, ...f.k_in.map(yes), f.center_dim]),
  ));
  target.append(el("p", v.pairwise_distinct ? "Fingerprints pairwise distinct." : "Fingerprints not all distinct."));
}

await init();
$("c-go").onclick = () => run("c-out", showClasses);
$("a-go").onclick = () => run("a-out", showAut);
$("f-go").onclick = () => run("f-out", showFingerprints);
