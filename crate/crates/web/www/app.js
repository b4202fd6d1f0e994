import init, { catalog, compute_theta, run_check, fitting } from "./pkg/skv_web.js";

const $ = (id) => document.getElementById(id);

function option(select, value, text) {
  const o = document.createElement("option");
  o.value = value;
  o.textContent = text ?? value;
  select.append(o);
}

function summary(el, good, text) {
  el.className = good ? "ok" : "bad";
  el.textContent = text;
}

function show(prefix, reply, describe) {
  const v = JSON.parse(reply);
  if (!v.ok) {
    summary($(prefix + "-summary"), false, "error: " + v.error);
    $(prefix + "-out").textContent = "";
    return;
  }
  const [good, text, body] = describe(v);
  summary($(prefix + "-summary"), good, text);
  $(prefix + "-out").textContent = body;
}

await init();
const cat = JSON.parse(catalog());
const fixtures = new Map(cat.fixtures.map((f) => [f.name, f]));
for (const f of cat.fixtures) option($("fixture"), f.name, `${f.name} (${f.group})`);
option($("suite"), "all");
for (const c of cat.checks) option($("suite"), c);
for (const p of cat.presentations) option($("pres"), p.name);

function fixtureChanged() {
  const f = fixtures.get($("fixture").value);
  $("fixinfo").textContent = `places: ${f.places.join(", ")}; default S = {${f.defaultS.join(", ")}}`;
}
function presChanged() {
  $("pres-text").value = cat.presentations.find((p) => p.name === $("pres").value).text;
}
$("fixture").onchange = fixtureChanged;
$("pres").onchange = presChanged;
fixtureChanged();
presChanged();

$("theta-go").onclick = () =>
  show("theta", compute_theta($("fixture").value, $("s").value, $("t").value, Number($("r").value)), (v) => {
    if (v.missingSources) return [false, "incomplete: missing " + v.missingSources.join("; "), ""];
    const hyp = v.hyp.holds ? "Hyp(S, T) holds" : "Hyp(S, T) fails: " + v.hyp.failed.join(", ");
    return [v.integral || !v.hyp.holds, `${hyp}; group-ring coefficients ${v.integral ? "integral" : "not integral"}`,
      JSON.stringify(v.theta.element, null, 2)];
  });

$("check-go").onclick = () =>
  show("check", run_check($("fixture").value, $("suite").value), (v) => {
    const words = ["all verified", "falsified", "inconclusive"];
    return [v.exitCode === 0, words[v.exitCode] ?? "exit " + v.exitCode, v.text];
  });

$("fit-go").onclick = () =>
  show("fit", fitting($("fixture").value, $("pres-text").value), (v) => {
    const text = v.annihilated === null ? "no module given" : v.annihilated ? "module annihilated" : "annihilation violated";
    return [v.annihilated !== false, text, JSON.stringify(v.fitting, null, 2)];
  });
