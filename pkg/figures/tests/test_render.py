"""Self-contained renderer tests over synthetic CSVs (no simulator needed)."""

import math

import pytest

from kpzfigures.render import FigureSpecError, load_spec, render


def _write_overlay(path):
    lines = ["x_over_t,height_over_t,limit"]
    for i in range(-20, 21):
        x = i / 20.0
        lines.append(f"{x},{0.5 * (1 + x * x) + 0.01},{0.5 * (1 + x * x)}")
    path.write_text("\n".join(lines) + "\n")


def _write_table(path):
    lines = ["s,F,f"]
    for i in range(-80, 41):
        s = i / 10.0
        f = math.exp(-((s + 1.77) ** 2) / 1.62) / math.sqrt(1.62 * math.pi)
        big_f = 0.5 * (1.0 + math.erf((s + 1.77) / math.sqrt(1.62)))
        lines.append(f"{s},{big_f},{f}")
    path.write_text("\n".join(lines) + "\n")


def _write_samples(path):
    lines = ["replicate,N,value"]
    for i in range(300):
        lines.append(f"{i},500,{math.sin(i * 12.9898) * 1.3 - 1.7}")
    path.write_text("\n".join(lines) + "\n")


def _write_points(path):
    lines = ["scale,dispersion,fit"]
    for n in (100, 200, 400, 800):
        lines.append(f"{n},{0.9 * n ** 0.33},{0.9 * n ** (1 / 3)}")
    path.write_text("\n".join(lines) + "\n")


def _write_trajectory(path):
    lines = ["time,site,height"]
    for t in (10.0, 20.0):
        for site in range(16):
            lines.append(f"{t},{site},{int(t) + (site * 7 + int(t)) % 5}")
    path.write_text("\n".join(lines) + "\n")


def _spec(tmp_path, kind, inputs, output, name="spec.toml"):
    lines = ["[figure]", f'kind = "{kind}"', f'output = "{output}"',
             "[figure.inputs]"]
    lines += [f'{role} = "{path}"' for role, path in inputs.items()]
    spec_path = tmp_path / name
    spec_path.write_text("\n".join(lines) + "\n")
    return spec_path


@pytest.mark.parametrize("kind,builder,role,ext", [
    ("interface", _write_trajectory, "trajectory", "svg"),
    ("shape-overlay", _write_overlay, "overlay", "svg"),
    ("density", _write_table, "table", "png"),
    ("log-density", _write_table, "table", "png"),
    ("regression", _write_points, "points", "svg"),
])
def test_each_kind_renders_deterministically(tmp_path, kind, builder, role, ext):
    csv_path = tmp_path / "input.csv"
    builder(csv_path)
    out1 = render(load_spec(_spec(tmp_path, kind, {role: "input.csv"},
                                  f"one.{ext}", "s1.toml")))
    out2 = render(load_spec(_spec(tmp_path, kind, {role: "input.csv"},
                                  f"two.{ext}", "s2.toml")))
    b1 = (tmp_path / f"one.{ext}").read_bytes()
    b2 = (tmp_path / f"two.{ext}").read_bytes()
    assert len(b1) > 500
    assert b1 == b2
    assert out1.endswith(f"one.{ext}") and out2.endswith(f"two.{ext}")


def test_density_with_sample_histogram(tmp_path):
    _write_table(tmp_path / "table.csv")
    _write_samples(tmp_path / "samples.csv")
    spec = _spec(tmp_path, "density",
                 {"table": "table.csv", "samples": "samples.csv"}, "d.png")
    render(load_spec(spec))
    assert (tmp_path / "d.png").stat().st_size > 1000


def test_schema_mismatch_aborts_with_diff(tmp_path):
    (tmp_path / "bad.csv").write_text("a,b\n1,2\n")
    spec = _spec(tmp_path, "shape-overlay", {"overlay": "bad.csv"}, "x.svg")
    with pytest.raises(FigureSpecError, match="expected.*x_over_t"):
        render(load_spec(spec))


def test_empty_csv_rejected(tmp_path):
    (tmp_path / "empty.csv").write_text("x_over_t,height_over_t,limit\n")
    spec = _spec(tmp_path, "shape-overlay", {"overlay": "empty.csv"}, "x.svg")
    with pytest.raises(FigureSpecError, match="no data rows"):
        render(load_spec(spec))


def test_spec_validation(tmp_path):
    _write_overlay(tmp_path / "o.csv")
    with pytest.raises(FigureSpecError, match="unknown figure kind"):
        load_spec(_spec(tmp_path, "pie-chart", {"overlay": "o.csv"}, "x.svg"))
    with pytest.raises(FigureSpecError, match="needs input roles"):
        load_spec(_spec(tmp_path, "shape-overlay", {}, "x.svg"))
    with pytest.raises(FigureSpecError, match="does not take"):
        load_spec(_spec(tmp_path, "shape-overlay",
                        {"overlay": "o.csv", "table": "o.csv"}, "x.svg"))
