"""End to end: write an instance file, check it in-process, and drive the
command line programmatically.

An instance couples a field, a highest weight per embedding, and Galois
side data (arithmetic Frobenius valuations, or declared Weil-Deligne
summands).  The checker reports the invariant-norm inequalities, central
character integrality, the existence verdict with a witness filtration,
and normalized spectral membership; all four stories must tell one tale.
"""

import tempfile
from pathlib import Path

from wadm import Instance, FieldData, check_instance
from wadm.cli import main
from wadm.instances import render_check_report, serialize_instance

field = FieldData(p=3, e=1, f=1)

inst = Instance(
    ident="demo",
    field=field,
    weights_a=((0, 1),),
    zeta_vals=(0, 2),
)

print("instance file form:")
print(serialize_instance(inst))

result = check_instance(inst)
print("full report:")
print(render_check_report(result))

# The same through the command line, end to end.
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "demo.inst"
    path.write_text(serialize_instance(inst))
    print("CLI exit code (0 = pass):", main(["check", str(path)]))
    print()
    prefix = str(Path(tmp) / "demo")
    main(["polygon", str(path), "--plot", prefix, "--out", str(Path(tmp) / "report.txt")])
    print("polygon vertex table written by --plot:")
    print((Path(tmp) / "demo.txt").read_text())
    print("(an SVG with both polygons sits next to it)")
