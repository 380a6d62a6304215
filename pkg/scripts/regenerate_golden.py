"""Rewrite tests/golden/*.json from the current CLI output (review the diff before committing)."""
import contextlib
import io
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from cli_cases import CASES  # noqa: E402
from sinhmajor.cli import main  # noqa: E402

out_dir = ROOT / "tests" / "golden"
out_dir.mkdir(exist_ok=True)
for name, (argv, _) in CASES.items():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    (out_dir / f"{name}.json").write_text(buf.getvalue())
    print(f"{name}: exit {code}")
