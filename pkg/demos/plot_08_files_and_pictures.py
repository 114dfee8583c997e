"""
Files, reports and pictures
===========================

Everything can be saved as versioned JSON with rationals kept as ``"p/q"``
strings, and the strip picture can be written as SVG.  The same operations
are available from the ``c0dynamo`` command.
"""

import json
import tempfile
from pathlib import Path

from c0dynamo import LayoutParams, SequenceSpec, assemble, build_witness
from c0dynamo.cli import main
from c0dynamo.serialization import dumps, loads
from c0dynamo.svg import render_layout

out = Path(tempfile.mkdtemp(prefix="c0dynamo-"))
params = LayoutParams(d=2)
alpha = SequenceSpec.eventually_constant(["1/4", "3/4"], "1/2")
beta = SequenceSpec.eventually_constant(["1/2", "1/2"], "1/2")

# %%
# A system file, and reading it back.
(out / "alpha.json").write_text(dumps(assemble(params, alpha)))
print((out / "alpha.json").read_text())
print(loads((out / "alpha.json").read_text()) == assemble(params, alpha))

# %%
# Pictures: the strips with their disks, and the witness boxes with arrows.
(out / "layout.svg").write_text(render_layout(assemble(params, alpha), depth=3))
(out / "witness.svg").write_text(render_layout(build_witness(alpha, beta, params), depth=3))

# %%
# The command line gives the same results, with exit code 0 for success, 1
# for a negative answer and 2 for bad input.
(out / "a.json").write_text(dumps(alpha))
(out / "b.json").write_text(dumps(beta))
code = main(["c0", "--a", str(out / "a.json"), "--b", str(out / "b.json"), "-o", str(out / "c0.json")])
print("exit", code, json.loads((out / "c0.json").read_text())["verdicts"])
print("files written to", out)
