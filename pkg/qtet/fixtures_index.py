from pathlib import Path
from typing import Iterable

from jinja2 import Template

from .modrep import verify_module
from .utils_io import module_from_json, read_json, sha256_file

HTML = """
<!doctype html>
<html>
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width,initial-scale=1">
<title>Module fixtures</title>
<link rel="stylesheet" href="https://cdn.jsdelivr.net/npm/water.css@2/out/water.css">
<style>
  body{max-width:1200px;margin:20px auto}
  table{border-collapse:collapse}
  th,td{padding:4px 8px;text-align:right}
  .metric{display:inline-block;margin-right:20px}
</style>
</head>
<body>
<h1>Module fixtures</h1>
<div>
  <div class="metric"><strong>Modules</strong><div>{{rows|length}}</div></div>
  <div class="metric"><strong>Certified</strong><div>{{ rows|selectattr('ok')|list|length }}</div></div>
</div>
{% for r in rows %}
<h3><code>{{r.file}}</code></h3>
<p>q = {{r.q}}, dim = {{r.dim}}, type = {{r.type}}, diameter = {{r.d}}, sha256 <code>{{r.sha256[:16]}}</code></p>
{% for name, m in r.generators %}
<details><summary>{{name}}</summary>
<table>
{% for row in m %}<tr>{% for x in row %}<td>{{x}}</td>{% endfor %}</tr>{% endfor %}
</table>
</details>
{% endfor %}
{% endfor %}
<p style="opacity:0.7;font-size:0.9em">Autogenerated preview</p>
</body>
</html>
"""


def render_index(out_dir, paths: Iterable[Path]) -> Path:
    out = Path(out_dir); out.mkdir(parents=True, exist_ok=True)
    rows = []
    for p in sorted(paths):
        obj = read_json(p)
        ok, payload = verify_module(module_from_json(obj))
        rows.append({
            "file": p.name,
            "sha256": sha256_file(p),
            "q": obj["q"],
            "dim": obj["dim"],
            "ok": ok,
            "type": payload.epsilon if ok else "-",
            "d": payload.d if ok else "-",
            "generators": sorted(obj["generators"].items()),
        })
    index = out / "index.html"
    index.write_text(Template(HTML).render(rows=rows))
    print("Wrote index", index)
    return index


if __name__ == "__main__":
    import sys
    target = Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
    render_index(target, target.glob("module_*.json"))
