//! Runs the whole pipeline through the Python layer on an embedded
//! interpreter. One test: the init table must be filled exactly once.

use pyo3::prelude::*;
use std::ffi::CString;

#[test]
fn python_layer_runs_the_pipeline() {
    use gsft_py::gsft_py;
    pyo3::append_to_inittab!(gsft_py);
    Python::initialize();
    let code = r#"
import gsft_py, json

g = gsft_py.Group("heisenberg")
assert g.generators() == ["z", "x", "y"]
assert g.central_generator() == 0
assert g.ball_size(1) == 7

ts = gsft_py.Tileset.from_json(json.dumps({
    "group": "z2", "alphabet": ["a", "b"],
    "horizontal_allowed": [["a", "b"], ["b", "a"]],
    "vertical_allowed": [["a", "b"], ["b", "a"]],
}))
assert not ts.is_reduced

verdict = gsft_py.search(ts, radius=1)
assert verdict["verdict"] == "unknown"
assert verdict["witness"]["kind"] == "configuration"

red = gsft_py.reduce(ts, "heisenberg")
assert red.is_reduced and red.forbidden_count == 20
again = gsft_py.Tileset.from_json(red.to_json())
assert again.forbidden_count == 20

window = gsft_py.encode(red, "checkerboard", 2)
patch = gsft_py.decode(red, window, width=2, height=2)
assert patch["rows"] == [["a", "b"], ["b", "a"]]
svg = gsft_py.render_svg(patch)
assert svg.startswith("<svg")

z = gsft_py.Tileset.from_json(json.dumps({
    "group": "z", "alphabet": ["a", "b"], "forbidden": [],
}))
assert gsft_py.decide(z)["verdict"] == "nonempty"
lifted = gsft_py.lift(z, "z-in-z2")
assert lifted.group == "z2"

ray = gsft_py.find_ray("heisenberg", length=16)
assert ray["period"] == ["x"]
try:
    gsft_py.find_ray("z", length=4)
except ValueError:
    pass
else:
    raise AssertionError("ray search on Z must fail")

report = gsft_py.ends_profile("z2", [1, 2])
assert [row["width"] for row in report["rows"]] == [4, 8]
assert report["growing"] is True
"#;
    Python::attach(|py| {
        if let Err(e) = py.run(&CString::new(code).unwrap(), None, None) {
            e.print(py);
            panic!("python pipeline failed");
        }
    });
}
