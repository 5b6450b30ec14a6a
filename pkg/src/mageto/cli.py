"""mageto command line.

    mageto gen 1024 entropy0 > entropy0.raw
    mageto render entropy0.raw --width 64 -o entropy0.pgm
    mageto keystream --variant v3 --n 1048576 --key 0x00112233 > ks.bin
    mageto crypt plain.txt cipher.bin --key secret
    mageto bench
    mageto report --out-dir report/

Exit codes: 0 success, 2 usage, 3 locked pattern, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .analysis import first_byte_attack
from .bench import run_bench
from .ca import CaParams, Mode, SeedMaterial, evolution_history, init_state, mix
from .errors import InsufficientData, PatternLocked, SeedTooLong, DataTooShort
from .pgm import to_pgm
from .stats import randomness_battery
from .variants import ExtractionPattern, KeystreamVariant, Variant, v1_keystream

EXIT_USAGE = 2
EXIT_POLICY = 3
EXIT_IO = 4


def parse_bytes(text: str) -> bytes:
    """Literal UTF-8, or hex when prefixed with 0x."""
    if text.lower().startswith("0x"):
        try:
            return bytes.fromhex(text[2:])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad hex string: {text!r}")
    return text.encode("utf-8")


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _add_width_mode(p):
    p.add_argument("--width", type=int, choices=(32, 64), default=32, help="cell width in bits")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.BRANCHING.value)


def _add_config(p):
    p.add_argument("--variant", choices=[v.value for v in Variant], default="v3")
    p.add_argument("--pattern", choices=[x.value for x in ExtractionPattern], default="secure",
                   help="v1 extraction pattern")
    p.add_argument("--unlock-analysis", action="store_true",
                   help="allow the broken v1 patterns (analysis only)")
    p.add_argument("--key", type=parse_bytes, default=b"")
    p.add_argument("--salt", type=parse_bytes, default=b"")
    p.add_argument("--extra", type=parse_bytes, default=b"", help="IV / nonce / pepper")
    _add_width_mode(p)


def _open_stream(args):
    variant = KeystreamVariant(args.variant, args.pattern)
    seed = SeedMaterial(args.key, args.salt, args.extra)
    return variant.open(seed, CaParams(b=args.width), Mode(args.mode), args.unlock_analysis)


def _write(path, data: bytes):
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _read(path) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def cmd_gen(args):
    _write(args.output, evolution_history(args.seed, args.ncells, CaParams(b=args.width),
                                          mixed=not args.no_mix, mode=Mode(args.mode)))


def cmd_keystream(args):
    _write(args.output, _open_stream(args).read(args.n))


def cmd_crypt(args):
    data = _read(args.input)
    ks = _open_stream(args).read(len(data))
    _write(args.output, np.bitwise_xor(np.frombuffer(data, np.uint8),
                                       np.frombuffer(ks, np.uint8)).tobytes())


def cmd_render(args):
    data = _read(args.input)
    if not data:
        raise OSError(f"{args.input}: empty input, nothing to render")
    out = args.output or (args.input + ".pgm")
    _write(out, to_pgm(data, args.width))


def cmd_bench(args):
    report = run_bench(args.duration)
    print(report.to_text())
    if args.plot:
        from .plotting import plot_bench
        plot_bench(report, args.plot)


def cmd_stats(args):
    print(randomness_battery(_read(args.input)).to_text())


def cmd_attack(args):
    params = CaParams()
    if args.input:
        observed = _read(args.input)
    else:
        state = init_state(SeedMaterial(args.key), params)
        mix(state)
        observed = v1_keystream(state, args.pattern, args.evolutions * params.a,
                                unlock_analysis=True)
    print(first_byte_attack(observed, args.pattern, args.evolutions).to_text())


def cmd_report(args):
    from .report import run_report
    out = run_report(args.out_dir, bench_seconds=args.bench_seconds)
    print((out / "report.tsv").read_text(), end="")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mageto", description="Mageto cellular-automaton keystreams")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="raw evolution history: NCELLS updated cells after mixing")
    p.add_argument("ncells", type=_nonneg)
    p.add_argument("seed", type=parse_bytes)
    p.add_argument("--no-mix", action="store_true", help="skip mixing (early-row bias shows)")
    p.add_argument("-o", "--output")
    _add_width_mode(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("keystream", help="N bytes of a secure keystream")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("-o", "--output")
    _add_config(p)
    p.set_defaults(func=cmd_keystream)

    p = sub.add_parser("crypt", help="XOR a file with the keystream (encrypts and decrypts)")
    p.add_argument("input")
    p.add_argument("output")
    _add_config(p)
    p.set_defaults(func=cmd_crypt)

    p = sub.add_parser("render", help="raw bytes to a greyscale PGM, one byte per pixel")
    p.add_argument("input")
    p.add_argument("--width", type=int, default=64)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="throughput of v1/v2/v3 at 32 and 64 bits")
    p.add_argument("--duration", type=float, default=0.5, help="seconds per variant")
    p.add_argument("--plot", help="also write a bar chart to this image file")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="randomness battery over a file")
    p.add_argument("input")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("attack", help="first-byte attack against a v1 stream")
    p.add_argument("--pattern", choices=["broken5", "secure"], default="broken5")
    p.add_argument("--evolutions", type=int, default=64)
    p.add_argument("--key", type=parse_bytes, default=b"attack demo key")
    p.add_argument("--input", help="observed v1 keystream file instead of generating one")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("report", help="stats, avalanche, attack and bench as TSV plus figures")
    p.add_argument("--out-dir", default="mageto-report")
    p.add_argument("--bench-seconds", type=float, default=0.5)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "render" and args.width < 1:
        parser.error("--width must be >= 1")
    try:
        args.func(args)
    except PatternLocked as exc:
        print(f"mageto: {exc}", file=sys.stderr)
        return EXIT_POLICY
    except (SeedTooLong, InsufficientData, DataTooShort, ValueError) as exc:
        print(f"mageto: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mageto: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
