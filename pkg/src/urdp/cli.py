"""Command-line front end.

Exit codes: 0 success, 2 parameter or format error, 3 decryption rejected,
4 I/O error.  Files are read as bit strings most-significant bit first.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from .bits import BitString
from .errors import UrdpError
from .game import ADVERSARIES, VARIANTS, estimate_advantage, scenario_tamper
from .padding import DEFAULT_S_MAX
from .pke import InsecureXorBackend, LweBackend, LweParams, dump_key, fingerprint, load_key
from .scheme import DEFAULT_K, Rejection, SchemeConfig, decrypt, deserialize, encrypt, keygen, serialize

EXIT_OK = 0
EXIT_PARAM = 2
EXIT_REJECT = 3
EXIT_IO = 4


def make_rng(seed: int | None) -> random.Random:
    if seed is None:
        env = os.environ.get("URDP_SEED")
        if env is not None:
            try:
                seed = int(env)
            except ValueError:
                raise UrdpError(f"URDP_SEED is not an integer: {env!r}") from None
    if seed is None:
        return random.SystemRandom()
    return random.Random(seed)


def _lwe_params(args) -> LweParams:
    return LweParams(
        dimension=args.lwe_dimension,
        modulus=args.lwe_modulus,
        error_bound=args.lwe_error_bound,
        samples_per_bit=args.lwe_samples,
    )


def _make_backend(args):
    if args.backend == "xor":
        return InsecureXorBackend(args.k)
    return LweBackend(_lwe_params(args))


def cmd_keygen(args) -> int:
    backend = _make_backend(args)
    SchemeConfig(k=args.k, backend=backend)
    pk, sk = backend.gen(make_rng(args.seed))
    Path(args.out_pk).write_bytes(dump_key(pk))
    Path(args.out_sk).write_bytes(dump_key(sk))
    print(f"backend: {backend.name}")
    print(f"public key fingerprint: {fingerprint(pk)}")
    print(f"secret key fingerprint: {fingerprint(sk)}")
    return EXIT_OK


def cmd_encrypt(args) -> int:
    pk = load_key(Path(args.pk).read_bytes(), secret=False)
    m = BitString.from_bytes(Path(args.input).read_bytes())
    config = SchemeConfig(k=args.k, s_max=args.s_max, backend=pk.backend())
    ct = encrypt(pk, m, config, make_rng(args.seed))
    Path(args.output).write_bytes(serialize(ct))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    sk = load_key(Path(args.sk).read_bytes(), secret=True)
    ct = deserialize(Path(args.input).read_bytes())
    config = SchemeConfig(k=args.k, s_max=args.s_max, backend=sk.backend())
    m = decrypt(sk, ct, config)
    if isinstance(m, Rejection):
        print("REJECT", file=sys.stderr)
        return EXIT_REJECT
    Path(args.output).write_bytes(m.to_bytes())
    return EXIT_OK


def cmd_game(args) -> int:
    rng = make_rng(args.seed)
    config = SchemeConfig(k=args.k, s_max=args.s_max, backend=_make_backend(args))
    out = open(args.out, "w") if args.out != "-" else sys.stdout
    try:
        if args.scenario == "cca2":
            _run_cca2(args, config, rng, out)
        else:
            stats = scenario_tamper(config, args.scenario, args.trials, rng, n=args.n, c2_mode=args.c2_mode)
            for line in stats.report_lines():
                print(line, file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _run_cca2(args, config, rng, out) -> None:
    adversary = ADVERSARIES[args.adversary](random.Random(rng.getrandbits(64)), n=args.n)
    refusals = 0

    def log(i, win, transcript):
        nonlocal refusals
        refusals += transcript.refusals
        record = {
            "type": "trial",
            "scenario": "cca2",
            "trial": i,
            "b": transcript.b,
            "guess": transcript.b_guess,
            "win": win,
            "refusals": transcript.refusals,
        }
        print(json.dumps(record, sort_keys=True), file=out)

    result = estimate_advantage(config, adversary, args.trials, rng, on_trial=log)
    summary = {
        "type": "summary",
        "scenario": "cca2",
        "adversary": args.adversary,
        "trials": result.trials,
        "wins": result.wins,
        "win_rate": result.win_rate,
        "advantage": result.estimate,
        "half_width": result.half_width,
        "refusals": refusals,
    }
    print(json.dumps(summary, sort_keys=True), file=out)


def _add_scheme_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=DEFAULT_K, help="selector length (default %(default)s)")
    p.add_argument("--s-max", type=int, default=DEFAULT_S_MAX, help="largest ROB length")
    p.add_argument("--seed", type=int, default=None, help="RNG seed (falls back to $URDP_SEED)")


def _add_backend_args(p: argparse.ArgumentParser) -> None:
    defaults = LweParams()
    p.add_argument("--backend", choices=("lwe", "xor"), default="lwe")
    p.add_argument("--lwe-dimension", type=int, default=defaults.dimension)
    p.add_argument("--lwe-modulus", type=int, default=defaults.modulus)
    p.add_argument("--lwe-error-bound", type=int, default=defaults.error_bound)
    p.add_argument("--lwe-samples", type=int, default=defaults.samples_per_bit)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="urdp", description="Random data padding over a pluggable PKE.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    _add_backend_args(p)
    _add_scheme_args(p)
    p.add_argument("--out-pk", required=True)
    p.add_argument("--out-sk", required=True)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a file")
    _add_scheme_args(p)
    p.add_argument("--pk", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a file")
    _add_scheme_args(p)
    p.add_argument("--sk", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("game", help="run a security experiment or tampering scenario")
    _add_backend_args(p)
    _add_scheme_args(p)
    p.add_argument("--scenario", choices=("cca2",) + VARIANTS, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--adversary", choices=sorted(ADVERSARIES), default="coinflip")
    p.add_argument("--n", type=int, default=256, help="message length in bits")
    p.add_argument("--c2-mode", choices=("reencrypt", "bitflip"), default="reencrypt")
    p.add_argument("--out", default="-", help="report path, '-' for stdout")
    p.set_defaults(func=cmd_game)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except UrdpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
