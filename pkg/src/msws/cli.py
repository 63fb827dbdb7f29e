"""Command-line surface: stream emission, seed management, selftest, attack demo.

The ``gen`` subcommand exists mainly to pipe raw little-endian words into
external statistical suites, e.g.::

    msws gen --n 0 --count 0 --format raw32le | RNG_test stdin32

Unbounded emission treats a closed pipe as success.  All numeric flags
accept 0x-prefixed hex.
"""

import argparse
import os
import random
import sys
import time

import numpy as np

from . import attack as attack_mod
from . import core, seeding, stats, widths

#: First outputs from the deliberately sparse increment 2^32 + 1; visibly
#: structured for a few iterations, which is why dense irregular constants
#: are recommended.  The selftest replays these exactly.
SPARSE_TEST_INCREMENT = 0x0000000100000001
GOLDEN_SPARSE_OUTPUTS = (
    0x00000001, 0x00000004, 0x0000001B, 0x00000406, 0x00170A61,
    0xF765B52A, 0x68D57352, 0x0AAFC03F, 0xF461CD1E, 0xFBE33CC0,
    0x808D47E0, 0x230DC324, 0x93202F86,
)

#: Squaring example with a known middle: rotating the low half of the square
#: exposes its middle 32 bits as the output word.
WORKED_SQUARE_INPUT = 0xE3296D171EC4A36F
WORKED_SQUARE_ROTATED = 0xAE4E8A2131C2914A

GEN_FORMATS = ("raw32le", "raw64le", "hex", "hex64", "float32res", "float53res")

_EMIT_CHUNK = 65536

#: Attack demos above this many candidates refuse to run without --force.
FORCE_CANDIDATE_LIMIT = 1 << 30


def _int_any_base(text: str) -> int:
    return int(text, 0)


def _emit_chunk(state, m, fmt, text_out, binary_out):
    if fmt in ("raw32le", "hex", "float32res"):
        block = core.generate_block(state, m)
        if fmt == "raw32le":
            binary_out.write(block.astype("<u4").tobytes())
        elif fmt == "hex":
            text_out.write("".join(f"{v:08x}\n" for v in block))
        else:
            text_out.write("".join(f"{float(v) * 2.0 ** -32!r}\n" for v in block))
    else:
        block = core.generate64_block(state, m)
        if fmt == "raw64le":
            binary_out.write(block.astype("<u8").tobytes())
        elif fmt == "hex64":
            text_out.write("".join(f"{v:016x}\n" for v in block))
        else:
            text_out.write("".join(f"{(int(v) >> 11) * 2.0 ** -53!r}\n" for v in block))


def cmd_gen(args) -> int:
    state = seeding.new_stream(args.n)
    if args.x is not None or args.w is not None or args.s is not None:
        state = core.MswsState(
            x=args.x if args.x is not None else state.x,
            w=args.w if args.w is not None else state.w,
            s=args.s if args.s is not None else state.s,
        )
    if args.count < 0:
        raise ValueError("count must be >= 0")
    unbounded = args.count == 0
    remaining = args.count
    try:
        while unbounded or remaining > 0:
            m = _EMIT_CHUNK if unbounded else min(_EMIT_CHUNK, remaining)
            _emit_chunk(state, m, args.format, sys.stdout, sys.stdout.buffer)
            remaining -= m
        sys.stdout.flush()
    except BrokenPipeError:
        # The downstream consumer closed the pipe; that is normal shutdown.
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
    return 0


def cmd_seed_count(args) -> int:
    upper, lower, total = seeding.count_valid_constants()
    print(f"{upper} {lower} {total}")
    return 0


def cmd_seed_emit(args) -> int:
    if args.to < args.from_:
        raise ValueError("--to must be >= --from")
    seeding.emit_seed_file(range(args.from_, args.to), args.out)
    return 0


def cmd_seed_check(args) -> int:
    reason = seeding.rejection_reason(args.constant)
    if reason is None:
        print(f"ok: 0x{args.constant:016x}")
        return 0
    print(f"reject: {reason}")
    return 1


def _check_golden():
    state = core.MswsState(x=0, w=0, s=SPARSE_TEST_INCREMENT)
    got = tuple(core.msws_step(state) for _ in range(len(GOLDEN_SPARSE_OUTPUTS)))
    return got == GOLDEN_SPARSE_OUTPUTS, ""


def _check_square_rotate():
    got = core.square_rotate(WORKED_SQUARE_INPUT)
    return got == WORKED_SQUARE_ROTATED, ""


def _check_weyl_period():
    rng = random.Random(2026)
    for _ in range(10):
        s = rng.getrandbits(16) | 1
        if not widths.weyl_full_period_check(s, 8):
            return False, f"s={s:#x}"
    return True, "10 random odd increments, 2k=16"


def _check_pair_distinct():
    rng = random.Random(2027)
    for _ in range(5):
        state = widths.random_reduced_state(widths.GenParams(8), rng)
        if not widths.x_cycle_check(state, 1 << 16):
            return False, f"s={state.s:#x}"
    return True, "5 random states over the full 2^16 period"


def _check_chi_square():
    samples = core.generate_block(seeding.new_stream(0), 1 << 20)
    report = stats.chi_square_uniformity(samples, 256)
    ok = 0.001 <= report.p_value <= 0.999
    return ok, f"p={report.p_value:.4f}"


def _check_bit_frequency():
    samples = core.generate_block(seeding.new_stream(1), 1 << 20)
    max_z = float(np.abs(stats.bit_frequency(samples)).max())
    return max_z < 4.9, f"max|z|={max_z:.3f}"


def _check_pair_serial():
    samples = core.generate_block(seeding.new_stream(2), 1 << 20)
    report = stats.pair_serial_test(samples)
    ok = 0.001 <= report.p_value <= 0.999
    return ok, f"p={report.p_value:.4f}"


def _check_seed_roundtrip():
    rng = random.Random(2028)
    for _ in range(500):
        rank = rng.randrange(seeding.CONSTANT_COUNT)
        constant = seeding.decode_constant(rank)
        if seeding.encode_constant(constant) != rank:
            return False, f"rank={rank}"
        if not seeding.is_recommended_constant(constant.value):
            return False, f"rank={rank}"
    return True, "500 random ranks"


SELFTEST_CHECKS = (
    ("golden-sparse-seed", _check_golden),
    ("square-rotate", _check_square_rotate),
    ("weyl-period", _check_weyl_period),
    ("pair-distinct", _check_pair_distinct),
    ("chi-square", _check_chi_square),
    ("bit-frequency", _check_bit_frequency),
    ("pair-serial", _check_pair_serial),
    ("seed-roundtrip", _check_seed_roundtrip),
)


def cmd_selftest(args) -> int:
    failures = []
    for name, fn in SELFTEST_CHECKS:
        ok, detail = fn()
        status = "pass" if ok else "FAIL"
        line = f"{status}  {name:<20}"
        if detail:
            line += f"  {detail}"
        print(line.rstrip())
        if not ok:
            failures.append(name)
    if failures:
        print(f"selftest: FAILED ({', '.join(failures)})")
        return 1
    print(f"selftest: {len(SELFTEST_CHECKS)} checks passed")
    return 0


def cmd_attack(args) -> int:
    params = widths.GenParams(args.k)
    cost = attack_mod.attack_cost_model(args.k)
    if cost > FORCE_CANDIDATE_LIMIT and not args.force:
        print(
            f"projected cost 2^{3 * args.k} candidate triples is infeasible "
            f"for a demonstration; rerun with --force to attempt it anyway"
        )
        return 1
    rng = random.Random(args.seed)
    hidden = widths.random_reduced_state(params, rng)
    print(f"width: k={args.k} ({params.width}-bit words)")
    print(f"hidden: x={hidden.x:#x} w={hidden.w:#x} s={hidden.s:#x}")
    trace = hidden.copy()
    outputs = [widths.gmsws_step(trace) for _ in range(args.outputs)]
    replay = hidden.copy()
    widths.gmsws_step(replay)  # state that produced output 0
    truth = attack_mod.window_representative(replay.x, replay.w, replay.s, params)
    started = time.perf_counter()
    scan = attack_mod.scan_candidates(outputs, params)
    elapsed = time.perf_counter() - started
    recovered = any((c.x, c.w, c.s) == truth for c in scan.survivors)
    print(
        f"recovered: {'yes' if recovered else 'no'}; "
        f"candidates: {scan.candidates_checked}; "
        f"survivors: {len(scan.survivors)}; "
        f"time: {elapsed:.3f}s"
    )
    return 0 if recovered else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="msws",
        description="Middle-square Weyl-sequence RNG toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit generator output to stdout")
    gen.add_argument("--n", type=_int_any_base, default=0, help="stream index (default 0)")
    gen.add_argument("--x", type=_int_any_base, help="override initial x")
    gen.add_argument("--w", type=_int_any_base, help="override initial w")
    gen.add_argument("--s", type=_int_any_base, help="override weyl increment (odd)")
    gen.add_argument("--count", type=_int_any_base, default=0,
                     help="outputs to emit; 0 streams until the pipe closes")
    gen.add_argument("--format", choices=GEN_FORMATS, default="raw32le")
    gen.set_defaults(func=cmd_gen)

    seed = sub.add_parser("seed", help="seed constant utilities")
    seed_sub = seed.add_subparsers(dest="seed_command", required=True)
    count = seed_sub.add_parser("count", help="print constant counts")
    count.set_defaults(func=cmd_seed_count)
    emit = seed_sub.add_parser("emit", help="write a seed include file")
    emit.add_argument("--from", dest="from_", type=_int_any_base, required=True)
    emit.add_argument("--to", type=_int_any_base, required=True,
                      help="end index, exclusive")
    emit.add_argument("--out", required=True)
    emit.set_defaults(func=cmd_seed_emit)
    check = seed_sub.add_parser("check", help="validate one constant")
    check.add_argument("constant", type=_int_any_base)
    check.set_defaults(func=cmd_seed_check)

    selftest = sub.add_parser("selftest", help="run the built-in check battery")
    selftest.set_defaults(func=cmd_selftest)

    atk = sub.add_parser("attack", help="state-recovery demonstration")
    atk.add_argument("--k", type=int, default=8, help="half-width in bits")
    atk.add_argument("--outputs", type=int, default=16)
    atk.add_argument("--seed", type=_int_any_base, default=1,
                     help="trial seed for the hidden state")
    atk.add_argument("--force", action="store_true",
                     help="attempt even when the projected cost is infeasible")
    atk.set_defaults(func=cmd_attack)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
