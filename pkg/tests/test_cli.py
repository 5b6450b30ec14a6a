import subprocess
import sys

import pytest

from mageto.cli import main, parse_bytes
from mageto.ca import evolution_history
from mageto.pgm import read_pgm, to_pgm
from mageto.variants import KeystreamVariant, keystream
from mageto.ca import SeedMaterial


def run(capsysbinary, *argv):
    code = main(list(argv))
    out, err = capsysbinary.readouterr()
    return code, out, err


def test_parse_bytes():
    assert parse_bytes("entropy0") == b"entropy0"
    assert parse_bytes("0x00ff10") == b"\x00\xff\x10"


def test_gen(capsysbinary):
    code, out, _ = run(capsysbinary, "gen", "1024", "entropy0")
    assert code == 0 and len(out) == 4096
    assert out == evolution_history("entropy0", 1024)
    assert run(capsysbinary, "gen", "1024", "entropy0")[1] == out
    assert run(capsysbinary, "gen", "1024", "entropy1")[1] != out


def test_gen_variants(capsysbinary):
    assert run(capsysbinary, "gen", "0", "x")[:2] == (0, b"")
    assert len(run(capsysbinary, "gen", "10", "x", "--width", "64")[1]) == 80
    raw = run(capsysbinary, "gen", "4", "x", "--no-mix")[1]
    assert raw == evolution_history("x", 4, mixed=False)


def test_gen_usage_error(capsysbinary):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "1024"])
    assert exc.value.code == 2


def test_keystream(capsysbinary):
    args = ["keystream", "--variant", "v3", "--n", "1048576", "--key", "0x00112233"]
    code, out, _ = run(capsysbinary, *args)
    assert code == 0 and len(out) == 1 << 20
    assert run(capsysbinary, *args)[1] == out
    assert out[:64] == keystream(KeystreamVariant("v3"), SeedMaterial(b"\x00\x11\x22\x33"), 64)


def test_keystream_locked_pattern(capsysbinary):
    code, out, err = run(capsysbinary, "keystream", "--variant", "v1", "--pattern", "broken5", "--n", "8")
    assert code == 3 and out == b"" and b"broken" in err
    code, out, _ = run(capsysbinary, "keystream", "--variant", "v1", "--pattern", "broken5",
                       "--n", "8", "--unlock-analysis")
    assert code == 0 and len(out) == 8


def test_keystream_seed_too_long(capsysbinary):
    code, _, _ = run(capsysbinary, "keystream", "--n", "8", "--key", "k" * 600)
    assert code == 2


@pytest.mark.parametrize("size", [0, 1, 1000])
def test_crypt_roundtrip(tmp_path, capsysbinary, size):
    plain = tmp_path / "plain"
    plain.write_bytes(bytes(range(256)) * (size // 256) + bytes(size % 256))
    enc, dec = tmp_path / "enc", tmp_path / "dec"
    flags = ["--variant", "v2", "--key", "secret", "--salt", "pepper"]
    assert run(capsysbinary, "crypt", str(plain), str(enc), *flags)[0] == 0
    assert run(capsysbinary, "crypt", str(enc), str(dec), *flags)[0] == 0
    assert dec.read_bytes() == plain.read_bytes()
    assert enc.stat().st_size == size
    if size == 1:
        ks = keystream(KeystreamVariant("v2"), SeedMaterial(b"secret", b"pepper"), 1)
        assert (enc.read_bytes() != plain.read_bytes()) == (ks != b"\0")


def test_crypt_missing_input(tmp_path, capsysbinary):
    assert run(capsysbinary, "crypt", str(tmp_path / "nope"), str(tmp_path / "out"))[0] == 4


def test_render(tmp_path, capsysbinary):
    raw = tmp_path / "entropy0.raw"
    raw.write_bytes(evolution_history("entropy0", 1024))
    assert run(capsysbinary, "render", str(raw))[0] == 0
    blob = (tmp_path / "entropy0.raw.pgm").read_bytes()
    assert blob.startswith(b"P5\n64 64\n255\n")
    w, h, pixels = read_pgm(blob)
    assert (w, h) == (64, 64) and pixels == raw.read_bytes()


def test_render_errors(tmp_path, capsysbinary):
    empty = tmp_path / "empty"
    empty.write_bytes(b"")
    assert run(capsysbinary, "render", str(empty))[0] == 4
    assert run(capsysbinary, "render", str(tmp_path / "missing"))[0] == 4
    with pytest.raises(SystemExit):
        main(["render", str(empty), "--width", "0"])


def test_pgm_padding():
    w, h, pixels = read_pgm(to_pgm(b"\x01" * 10, 4))
    assert (w, h) == (4, 3) and pixels == b"\x01" * 10 + b"\0\0"
    with pytest.raises(ValueError):
        to_pgm(b"", 4)


def test_stats_and_attack(tmp_path, capsysbinary):
    f = tmp_path / "ks"
    f.write_bytes(keystream(KeystreamVariant("v3"), b"k", 1 << 16))
    code, out, _ = run(capsysbinary, "stats", str(f))
    assert code == 0 and len(out.decode().splitlines()) == 5
    code, out, _ = run(capsysbinary, "attack", "--evolutions", "8")
    fields = dict(line.split("\t") for line in out.decode().splitlines())
    assert code == 0 and fields["pattern"] == "broken5" and float(fields["accuracy"]) > 0.3
    assert run(capsysbinary, "attack", "--evolutions", "1")[0] == 2


def test_bench_output(tmp_path, capsysbinary):
    code, out, _ = run(capsysbinary, "bench", "--duration", "0.05", "--plot", str(tmp_path / "b.png"))
    lines = out.decode().splitlines()
    assert code == 0 and lines[0].split("\t")[0] == "variant" and len(lines) == 7
    assert all(float(line.split("\t")[1]) > 0 for line in lines[1:])
    assert (tmp_path / "b.png").stat().st_size > 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mageto", "gen", "16", "entropy0"],
                          capture_output=True, check=True)
    assert len(proc.stdout) == 64
    proc = subprocess.run([sys.executable, "-m", "mageto", "gen"], capture_output=True)
    assert proc.returncode == 2
