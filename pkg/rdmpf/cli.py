"""
Command-line interface
======================

    python -m rdmpf <command> [options]

Commands: keygen, encaps, decaps, sign, verify, kat gen|check, bench,
security-table, bruteforce, timing.

Binary objects are read from / written to files; human output goes to
stdout and errors to stderr. Exit codes: 0 success, 1 verification or
decapsulation mismatch in check modes, 2 usage or framing errors.
"""

import argparse
import logging
import secrets
import sys
from pathlib import Path
from typing import List, Optional

from . import bench, codec, config, dsa, kat, kem, security
from .errors import RdmpfError
from .params import PROFILES, get_profile

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

logger = logging.getLogger(__name__)


def _hex(value: str) -> bytes:
    try:
        return bytes.fromhex(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex string: {value[:40]}")


def _read(path: str) -> bytes:
    return Path(path).read_bytes()


def _write(path: str, data: bytes):
    Path(path).write_bytes(data)


# ============================================================================
# COMMANDS
# ============================================================================

def cmd_keygen(args) -> int:
    seed = args.seed or secrets.token_bytes(kem.SEED_BYTES)
    if args.scheme == "kem":
        pk, sk = kem.keygen(seed, get_profile(args.profile))
        pk_bytes, sk_bytes = pk.encoded, codec.encode_sk(sk)
    else:
        pk_ds, sk_ds = dsa.keygen_ds(seed, height=args.height)
        pk_bytes, sk_bytes = pk_ds.encoded, codec.encode_ds_sk(sk_ds)

    _write(f"{args.out}.pk", pk_bytes)
    _write(f"{args.out}.sk", sk_bytes)
    print(f"✓ {args.scheme} key pair written: {args.out}.pk ({len(pk_bytes)} bytes), "
          f"{args.out}.sk ({len(sk_bytes)} bytes)")
    return EXIT_OK


def cmd_encaps(args) -> int:
    pk = codec.decode_pk(_read(args.input))
    if args.coins is not None:
        ct, key = kem.encaps(pk, args.coins)
    else:
        ct, key = kem.encaps_random(pk)
    _write(args.out, codec.encode_ct(ct))
    print(key.hex())
    return EXIT_OK


def cmd_decaps(args) -> int:
    sk = codec.decode_sk(_read(args.sk))
    ct = codec.decode_ct(_read(args.input), sk.pk.params)
    key = kem.decaps(sk, ct)
    print(key.hex())
    if args.expect is not None and key != args.expect:
        print("[ERROR] Shared key does not match the expected value", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_sign(args) -> int:
    sk_ds = codec.decode_ds_sk(_read(args.sk))
    sig = dsa.sign_ds(sk_ds, _read(args.input))
    _write(args.out, codec.encode_sig(sig))
    print(f"✓ Signature written: {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    pk_ds = codec.decode_ds_pk(_read(args.pk))
    context = dsa.VerifierContext.local(args.seed)
    outcome = dsa.verify_ds(pk_ds, _read(args.input), _read(args.sig), context)
    if outcome.accepted:
        print("Verification: ✓ ACCEPTED")
        return EXIT_OK
    print(f"Verification: ✗ REJECTED* {outcome.placeholder.hex()}")
    return EXIT_MISMATCH


def cmd_kat(args) -> int:
    if args.kat_command == "gen":
        params = get_profile(args.profile)
        master = args.seed or bytes(32)
        height = args.height if args.height is not None else config.MERKLE_HEIGHT
        vectors = kat.generate_kat(master, args.count, params, height, workers=args.workers)
        text = kat.format_kat(vectors, params, height, master)
        Path(args.out).write_text(text, encoding="ascii", newline="\n")
        print(f"✓ {len(vectors)} KAT vectors written: {args.out}")
        return EXIT_OK

    result = kat.check_kat(Path(args.input).read_text(encoding="ascii"))
    if result.ok:
        print(f"✓ KAT check passed ({result.checked} vectors)")
        return EXIT_OK
    for line in result.mismatches:
        print(f"✗ {line}")
    return EXIT_MISMATCH


def cmd_bench(args) -> int:
    report = bench.bench(get_profile(args.profile), args.runs, args.protocol, args.height)
    print(report.format_table())
    if args.out:
        Path(args.out).write_text(report.to_csv(), encoding="ascii", newline="\n")
        print(f"\n✓ CSV written: {args.out}")
    return EXIT_OK if all(report.checks) else EXIT_MISMATCH


def cmd_security_table(args) -> int:
    print(security.format_security_table())
    return EXIT_OK


def cmd_bruteforce(args) -> int:
    params = get_profile(args.profile)
    pk, _ = kem.keygen(args.seed or secrets.token_bytes(kem.SEED_BYTES), params)
    report = security.brute_force_recover(pk, params)
    print(f"Search space: {report.search_space} candidates")
    print(f"Tried: {report.candidates_tried} in {report.seconds:.3f}s")
    if not report.found:
        print("✗ No equivalent key found")
        return EXIT_MISMATCH
    for r, (cu, cv) in enumerate(report.coefficients, start=1):
        print(f"Round {r}: U coefficients {list(cu)}, V coefficients {list(cv)}")
    matches = security.check_equivalence(pk, report, trials=10)
    print(f"Equivalent key decapsulates {matches}/10 honest ciphertexts")
    return EXIT_OK if matches == 10 else EXIT_MISMATCH


def cmd_timing(args) -> int:
    summary = bench.timing_check(get_profile(args.profile), args.runs)
    print(f"Profile: {summary.profile} ({summary.trials} trials)")
    print(f"Decaps (accept) median: {summary.accept_median:.7f}s  MAD {summary.accept_mad:.7f}s")
    print(f"Decaps (reject) median: {summary.reject_median:.7f}s  MAD {summary.reject_mad:.7f}s")
    print(f"Ratio reject/accept: {summary.ratio:.3f}")
    print(f"Operation parity: {'✓' if summary.parity else '✗'} {summary.op_counts_accept}")
    print(f"Timing flag: {'RAISED' if summary.flagged else 'clear'}")
    return EXIT_OK


# ============================================================================
# PARSER
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdmpf", description="RDMPF KEM / DSA toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="INFO-level logging")
    sub = parser.add_subparsers(dest="command", required=True)

    profile = argparse.ArgumentParser(add_help=False)
    profile.add_argument("--profile", choices=sorted(PROFILES), default=config.DEFAULT_PROFILE)

    p = sub.add_parser("keygen", parents=[profile], help="generate a key pair")
    p.add_argument("--scheme", choices=("kem", "ds"), default="kem")
    p.add_argument("--seed", type=_hex, help="32-byte seed (hex)")
    p.add_argument("--height", type=int, help="Merkle height for ds keys")
    p.add_argument("--out", required=True, help="output prefix: <out>.pk and <out>.sk")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encaps", help="encapsulate to a public key")
    p.add_argument("--in", dest="input", required=True, help="public key file")
    p.add_argument("--out", required=True, help="ciphertext file")
    p.add_argument("--coins", type=_hex, help="explicit kappa-bit coins (hex)")
    p.set_defaults(func=cmd_encaps)

    p = sub.add_parser("decaps", help="decapsulate a ciphertext")
    p.add_argument("--in", dest="input", required=True, help="ciphertext file")
    p.add_argument("--sk", required=True, help="secret key file")
    p.add_argument("--expect", type=_hex, help="expected shared key (hex); mismatch exits 1")
    p.set_defaults(func=cmd_decaps)

    p = sub.add_parser("sign", help="sign a message file")
    p.add_argument("--sk", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sign)

    p = sub.add_parser("verify", help="verify a signature file")
    p.add_argument("--pk", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--seed", type=_hex, help="local verifier seed for reject placeholders")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kat", help="known-answer test files")
    kat_sub = p.add_subparsers(dest="kat_command", required=True)
    g = kat_sub.add_parser("gen", parents=[profile])
    g.add_argument("--seed", type=_hex, help="master seed (hex)")
    g.add_argument("--count", type=int, default=config.KAT_COUNT)
    g.add_argument("--height", type=int)
    g.add_argument("--workers", type=int, default=1)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_kat)
    c = kat_sub.add_parser("check")
    c.add_argument("--in", dest="input", required=True)
    c.set_defaults(func=cmd_kat)

    p = sub.add_parser("bench", parents=[profile], help="timing table and CSV")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--protocol", choices=("kem", "dsa"), default="kem")
    p.add_argument("--height", type=int)
    p.add_argument("--out", help="CSV output path")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("security-table", help="brute-force security estimates")
    p.set_defaults(func=cmd_security_table)

    # own --profile: parent actions are shared, so set_defaults would leak
    p = sub.add_parser("bruteforce", help="micro-scale key recovery")
    p.add_argument("--profile", choices=sorted(PROFILES), default="micro")
    p.add_argument("--seed", type=_hex)
    p.set_defaults(func=cmd_bruteforce)

    p = sub.add_parser("timing", parents=[profile], help="accept vs reject decaps timing")
    p.add_argument("--runs", type=int, default=200)
    p.set_defaults(func=cmd_timing)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=logging.INFO if args.verbose else config.LOG_LEVEL,
        format=config.LOG_FORMAT,
        stream=sys.stderr,
    )

    try:
        return args.func(args)
    except (RdmpfError, ValueError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
