"""Command line behaviour, including the reference transcript lines."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from rubiksmagic.cli import main, parse_params, UsageError

HEAD8 = [
    "EEEEWWWW f=2 area=5 Dc=0 symcount=8 assemblages=1 deltaiszero=1",
    "EEENWWWS f=0 area=8 Dc=0 symcount=4 assemblages=1 deltaiszero=1",
    "EEENWWSW f=1 area=7 Dc=-2 symcount=1 assemblages=2 deltaiszero=1",
]
TAIL8 = [
    "ENSWENSW f=4 area=3 Dc=0 symcount=8 assemblages=0 deltaiszero=0",
    "EWEWEWEW f=8 area=2 Dc=0 symcount=32 assemblages=0 deltaiszero=0",
    "Found 71 sequences",
]
CHECK = [
    "EEWENWSW f=3 area=5 Dc=-2 symcount=1 assemblages=6 deltaiszero=2",
    " Assemblage with delta = 0: sla E3 E2 W2 E1 N1 W1 S1 W1",
    " Assemblage with delta = 0: sla E3 E2 W1 E1 N1 W1 S2 W1",
]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_default_enumeration(capsys):
    code, out, _ = run(capsys)
    lines = out.splitlines()
    assert code == 0
    assert lines[:3] == HEAD8
    assert lines[-3:] == TAIL8
    assert len(lines) == 72


def test_check_block(capsys):
    code, out, _ = run(capsys, "-c", "EEWENWSW")
    assert code == 0
    assert out.splitlines() == CHECK


def test_positional_adds_canonical_block(capsys):
    code, out, _ = run(capsys, "WENWSWEE")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].startswith("WENWSWEE f=3 area=5")
    k = lines.index("Canonical representative: EEWENWSW")
    assert lines[k + 1 :] == CHECK


def test_lk_annotations(capsys):
    _, out, _ = run(capsys, "-c", "EENWSSWN", "--lk")
    last = out.splitlines()[-1]
    assert "L=-1" in last and "verdict=NonConstructible(LinkingNonzero)" in last
    _, out, _ = run(capsys, "-n", "4", "--lk")
    assert all(ln.endswith("]") for ln in out.splitlines()[:-1])


def test_table_mode(capsys):
    code, out, _ = run(capsys, "--table")
    assert code == 0
    assert out.splitlines()[-1].split() == ["total", "71", "168", "59", "35", "11", "13"]


def test_export(capsys, tmp_path):
    target = tmp_path / "out.jsonl"
    code, _, _ = run(capsys, "-n", "6", "--export", str(target))
    assert code == 0
    rows = [json.loads(ln) for ln in target.read_text().splitlines()]
    assert len(rows) == 11
    assert rows[0]["sequence"] == "EEEWWW"


@pytest.mark.parametrize(
    "argv, message",
    [
        (["-c", "EEX"], "invalid direction 'X' in 'EEX'; use E, N, W, S"),
        (["-n", "7"], "tile count must be even and between 4 and 20, got 7"),
        (["-n", "22"], "tile count must be even and between 4 and 20, got 22"),
        (["EEENWWW"], "odd length"),
        (["--param", "bogus=1"], "bad --param"),
        (["--param", "advance=2"], "advance must lie in"),
        (["-c", "EEENWWWS", "EEENWWWS"], "not both"),
    ],
)
def test_errors_exit_2(capsys, argv, message):
    with pytest.raises(SystemExit) if argv[0] == "-n" else _nothing():
        code = main(argv)
        assert code == 2
    _, err = capsys.readouterr()
    assert "usage: rubiksmagic" in err
    assert message in err


class _nothing:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def test_parse_params():
    p = parse_params(["advance=1/16", "tilt=1/500,1/300", "retries=3"])
    assert str(p.advance) == "1/16" and p.retries == 3
    with pytest.raises(UsageError):
        parse_params(["tilt=1"])


def test_console_script_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "rubiksmagic.cli", "-n", "9"], capture_output=True, text=True
    )
    assert proc.returncode == 2
    assert proc.stdout == ""
