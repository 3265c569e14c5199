"""Command-line operator surface.

Subcommands: `laws` (distributivity law suites), `table` (Laver table dump),
`exchange` (seeded key-establishment session written as a transcript file),
`challenge` (public session data for an attacker, secrets withheld),
`attack` (run a cryptanalysis job described by a jobspec file), and `peer`
(a real two-process exchange over a TCP socket).

Exit codes: 0 success, 1 law/assert failure, 2 search exhausted,
3 protocol abort (including framing errors), 64 usage error.
"""
from __future__ import annotations

import itertools
import json
import socket
import sys
import time

import click

from .attacks import ROUTES, NotFound, run_attack_route, sccp_key_recovery
from .braid import Word, braid_platform, build_braid_partial_mld, make_braid_gsc_op
from .groups import group_platform, perm_group_ctx
from .laver import laver_platform, laver_table
from .magma import IterHom, check_endomorphism, check_left_distributivity
from .matrices import EndoSpec, FFRing, TPolyRing, make_fconj_op, make_fsymmconj_op, matrix_platform
from .perms import build_sym_partial_mld, random_perm, sym_platform
from .presets import PRESETS, make_params
from .protocol import (
    FRAME_KEY_CONFIRM,
    FRAME_MSG_A,
    FRAME_MSG_B,
    FRAME_PARAMS_HASH,
    Transcript,
    alice_keygen,
    alice_message,
    alice_shared,
    bob_keygen,
    bob_message,
    bob_shared,
    child_rng,
    decode_msg_a,
    decode_msg_b,
    derive_key_bytes,
    encode_msg_a,
    encode_msg_b,
    pack_frame,
    params_fingerprint,
    read_frame,
    run_session,
)

CONFIRM_LEN = 8


class ProtocolAbort(RuntimeError):
    """Peer disagreement (params hash or key confirm) — exit code 3."""


# ---------------------------------------------------------------------------
# law suites
# ---------------------------------------------------------------------------
#
# Each suite builder returns [(label, LawReport), ...]; `samples` is the
# number of sampled triples per law (ignored under --exhaustive).


def _endo_report(plat, pool, rng, pairs):
    """Spot-check that depth-2 iterated multiplication is an endomorphism."""
    xs = tuple(plat.rand_element(rng) for _ in range(2))
    ops = tuple(pool[rng.randrange(len(pool))] for _ in range(2))
    h = IterHom(xs, ops)
    sampled = [(plat.rand_element(rng), plat.rand_element(rng)) for _ in range(pairs)]
    return "iterated-mult endomorphism", check_endomorphism(h, pool, sampled)


def _suite_laver(n: int):
    def build(samples, seed, exhaustive):
        plat = laver_platform(n)
        op = plat.op(0)
        size = 2**n
        if exhaustive:
            if n > 6:
                raise click.UsageError("exhaustive law check supported for laver:n with n <= 6")
            triples = itertools.product(range(1, size + 1), repeat=3)
        else:
            rng = child_rng(seed, f"laws:laver-{n}")
            triples = [tuple(rng.randrange(1, size + 1) for _ in range(3)) for _ in range(samples)]
        reports = [("* over *", check_left_distributivity(op, op, triples))]
        rng2 = child_rng(seed, f"laws:laver-{n}:endo")
        reports.append(_endo_report(plat, [op], rng2, min(samples, 200)))
        return reports

    return build


def _suite_group(kind: str, n: int):
    def build(samples, seed, exhaustive):
        ctx = perm_group_ctx(n)
        plat, op = group_platform(ctx, kind)
        if exhaustive:
            if n > 4:
                raise click.UsageError(f"exhaustive law check supported for {kind}:n with n <= 4")
            elems = list(ctx.elements())
            triples = itertools.product(elems, repeat=3)
        else:
            rng = child_rng(seed, f"laws:{kind}-{n}")
            triples = [tuple(random_perm(n, rng) for _ in range(3)) for _ in range(samples)]
        reports = [(f"{op.label} over {op.label}", check_left_distributivity(op, op, triples))]
        rng2 = child_rng(seed, f"laws:{kind}-{n}:endo")
        reports.append(_endo_report(plat, [op], rng2, min(samples, 200)))
        return reports

    return build


def _suite_braid_shifted(samples, seed, exhaustive):
    if exhaustive:
        raise click.UsageError("braid law checks are sample-based")
    plat = braid_platform(6, 8)
    pos = make_braid_gsc_op(plat, 1, Word((1,)), label="*")
    neg = make_braid_gsc_op(plat, 1, Word((-1,)), label="*~")
    rng = child_rng(seed, "laws:braid-shifted")
    reports = []
    for outer in (pos, neg):
        for inner in (pos, neg):
            triples = [tuple(plat.rand_element(rng) for _ in range(3)) for _ in range(samples)]
            reports.append(
                (f"{outer.label} over {inner.label}", check_left_distributivity(outer, inner, triples))
            )
    reports.append(_endo_report(plat, [pos, neg], rng, min(samples, 25)))
    return reports


def _cross_pool_reports(plat, pool_a, pool_b, rng, samples):
    """The partial multi-LD law set: every (A, B) pair in both orders."""
    reports = []
    for op_a in pool_a:
        for op_b in pool_b:
            for outer, inner in ((op_a, op_b), (op_b, op_a)):
                triples = [tuple(plat.rand_element(rng) for _ in range(3)) for _ in range(samples)]
                reports.append(
                    (
                        f"{outer.label} over {inner.label}",
                        check_left_distributivity(outer, inner, triples),
                    )
                )
    return reports


def _cross_endo_reports(plat, pool_a, pool_b, rng, pairs):
    """Partial pools only guarantee cross-side laws, so a fold over one
    side's operations is an endomorphism for the *other* side's operations."""
    reports = []
    for name, own, other in (("A-fold endo for B ops", pool_a, pool_b),
                             ("B-fold endo for A ops", pool_b, pool_a)):
        xs = tuple(plat.rand_element(rng) for _ in range(2))
        ops = tuple(own[rng.randrange(len(own))] for _ in range(2))
        h = IterHom(xs, ops)
        sampled = [(plat.rand_element(rng), plat.rand_element(rng)) for _ in range(pairs)]
        reports.append((name, check_endomorphism(h, other, sampled)))
    return reports


def _suite_braid_pools(samples, seed, exhaustive):
    if exhaustive:
        raise click.UsageError("braid law checks are sample-based")
    plat = braid_platform(10, 15)
    rng = child_rng(seed, "laws:braid-pools")
    pool_a, pool_b = build_braid_partial_mld(plat, 6, 3, 3, 5, rng, sizes=(3, 3))
    reports = _cross_pool_reports(plat, pool_a, pool_b, rng, samples)
    reports.extend(_cross_endo_reports(plat, pool_a, pool_b, rng, min(samples, 10)))
    return reports


def _suite_sym_pools(samples, seed, exhaustive):
    if exhaustive:
        raise click.UsageError("symmetric pool law checks are sample-based")
    plat = sym_platform(200)
    rng = child_rng(seed, "laws:sym-pools")
    pool_a, pool_b = build_sym_partial_mld(plat, 20, 10, 10, (4, 4), rng)
    reports = _cross_pool_reports(plat, pool_a, pool_b, rng, samples)
    reports.extend(_cross_endo_reports(plat, pool_a, pool_b, rng, min(samples, 50)))
    return reports


def _suite_fconj_frob(samples, seed, exhaustive):
    if exhaustive:
        raise click.UsageError("matrix law checks are sample-based")
    ring = FFRing(2, 8)
    f = EndoSpec("frobenius", power=1)
    plat = matrix_platform(ring, 3, endo=f)
    op = make_fconj_op(plat, f)
    rng = child_rng(seed, "laws:fconj-frob")
    triples = [tuple(plat.rand_element(rng) for _ in range(3)) for _ in range(samples)]
    reports = [("* over *", check_left_distributivity(op, op, triples))]
    reports.append(_endo_report(plat, [op], rng, min(samples, 100)))
    return reports


def _suite_fsymm_eval(samples, seed, exhaustive):
    if exhaustive:
        raise click.UsageError("matrix law checks are sample-based")
    ring = TPolyRing(17, 16)
    f = EndoSpec("eval-at", point=3)
    plat = matrix_platform(ring, 3, endo=f)
    op = make_fsymmconj_op(plat, f)
    rng = child_rng(seed, "laws:fsymm-eval")
    triples = [tuple(plat.rand_element(rng) for _ in range(3)) for _ in range(samples)]
    reports = [("o over o", check_left_distributivity(op, op, triples))]
    reports.append(_endo_report(plat, [op], rng, min(samples, 100)))
    return reports


def resolve_laws_spec(spec: str):
    """Map a --platform spec string to a law-suite builder."""
    fixed = {
        "braid-shifted": _suite_braid_shifted,
        "braid-pools": _suite_braid_pools,
        "sym-pools": _suite_sym_pools,
        "fconj-frob": _suite_fconj_frob,
        "fsymm-eval": _suite_fsymm_eval,
    }
    if spec in fixed:
        return fixed[spec]
    head, _, arg = spec.partition(":")
    try:
        if head == "laver":
            return _suite_laver(int(arg))
        if head in ("conj", "symm"):
            return _suite_group(head, int(arg) if arg else 5)
    except ValueError:
        pass
    raise click.UsageError(
        f"unknown law platform {spec!r}; expected laver:N, conj[:N], symm[:N], "
        "braid-shifted, braid-pools, sym-pools, fconj-frob, or fsymm-eval"
    )


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------


def _op_public(platform, op) -> dict:
    """Public (attacker-visible) description of one registered operation."""
    meta = op.meta
    out = {"label": op.label, "kind": meta.get("kind")}
    for key in ("p", "n", "d"):
        if key in meta:
            out[key] = meta[key]
    a = meta.get("a")
    if a is not None:
        out["a"] = list(a) if isinstance(a, Word) else platform.encode(a).hex()
    f = meta.get("f")
    if f is not None:
        out["f"] = {"kind": f.kind, "power": f.power, "point": f.point}
    return out


def _params_public(params) -> dict:
    """Everything a protocol eavesdropper knows about the session setup."""
    plat = params.platform
    enc = plat.encode
    doc = {
        "fingerprint": params_fingerprint(params).hex(),
        "m": params.m,
        "n": params.n,
        "meta": {k: v for k, v in params.meta.items() if isinstance(v, (int, str, float))},
        "s-gens": [enc(g).hex() for g in params.s_gens],
        "t-gens": [enc(g).hex() for g in params.t_gens],
        "pool-a": [_op_public(plat, op) for op in params.pool_a],
        "pool-b": [_op_public(plat, op) for op in params.pool_b],
    }
    ring = getattr(plat, "ring", None)
    if ring is not None:
        doc["ring"] = {
            "kind": ring.kind,
            **{k: getattr(ring, k) for k in ("p", "N", "q") if hasattr(ring, k)},
        }
    if hasattr(plat, "N") and plat.name.startswith("braid"):
        doc["braid"] = {
            "strands": plat.N,
            "word-length": getattr(plat, "word_length", None),
            "encode-bound": getattr(plat, "n_enc", None),
        }
    return doc


def _write_json(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _make_params_or_usage(preset: str, seed: int):
    try:
        return make_params(preset, seed)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


@click.group(name="ldkex")
def cli():
    """Key establishment over left self-distributive structures."""


@cli.command()
@click.option("--platform", "spec", required=True,
              help="laver:N | conj[:N] | symm[:N] | braid-shifted | braid-pools | "
                   "sym-pools | fconj-frob | fsymm-eval")
@click.option("--samples", default=1000, show_default=True,
              help="Sampled triples per law (ignored with --exhaustive).")
@click.option("--seed", default=0, show_default=True)
@click.option("--exhaustive", is_flag=True, help="Enumerate every triple (small finite carriers).")
def laws(spec, samples, seed, exhaustive):
    """Check the distributivity laws of one registered structure."""
    build = resolve_laws_spec(spec)
    reports = build(samples, seed, exhaustive)
    failures = 0
    for label, rep in reports:
        if rep.ok:
            click.echo(f"ok    {label:<32} {rep.samples_tested} samples")
        else:
            failures += len(rep.failures)
            first = repr(rep.failures[0])
            if len(first) > 100:
                first = first[:97] + "..."
            click.echo(f"FAIL  {label:<32} {len(rep.failures)}/{rep.samples_tested} failed; first: {first}")
    click.echo(f"laws[{spec}]: {len(reports)} law sets, {failures} failures")
    return 0 if failures == 0 else 1


@cli.command()
@click.argument("n", type=int)
def table(n):
    """Print the 2^n x 2^n multiplication table of the n-th Laver table."""
    try:
        lt = laver_table(n)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    width = len(str(2**n))
    for row in lt.table:
        click.echo(" ".join(f"{v:>{width}}" for v in row))
    return 0


@cli.command()
@click.option("--preset", required=True, help="One of: " + ", ".join(sorted(PRESETS)))
@click.option("--seed", default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True),
              help="Write the transcript JSON here (stdout when omitted).")
def exchange(preset, seed, out):
    """Run a full seeded session and emit its transcript.

    The file artifact nulls the timing block so replays of the same seed are
    byte-identical; timings go to stdout instead.
    """
    params, kw = _make_params_or_usage(preset, seed)
    transcript = run_session(params, seed=seed, **kw)
    doc = transcript.to_json(timings=False)
    if out:
        _write_json(out, doc)
        click.echo(f"transcript written to {out}")
        click.echo(f"key-bytes {transcript.key_bytes.hex()}")
        for phase, ms in transcript.timings_ms.items():
            click.echo(f"  {phase:<14} {ms:9.3f} ms")
    else:
        click.echo(json.dumps(doc, indent=2, sort_keys=True))
    return 0


@cli.command()
@click.option("--preset", required=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
def challenge(preset, seed, out):
    """Write the public data of one session for an attacker.

    The file carries setup and both messages only — no seed, no secrets, no
    key bytes.
    """
    params, kw = _make_params_or_usage(preset, seed)
    transcript = run_session(params, seed=seed, **kw)
    doc = {
        "format": "ldkex-challenge-v1",
        "platform": params.platform.name,
        "preset": preset,
        "params": _params_public(params),
        "msgA": encode_msg_a(params, transcript.msg_a).hex(),
        "msgB": encode_msg_b(params, transcript.msg_b).hex(),
    }
    _write_json(out, doc)
    click.echo(f"challenge written to {out} (key and secrets withheld)")
    return 0


@cli.command()
@click.argument("jobspec", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False, writable=True),
              help="Write transcript + attack result JSON here.")
@click.option("--budget", type=int, default=None,
              help="Fallback iteration-depth budget when the jobspec has none.")
@click.option("--workers", type=int, default=None,
              help="Worker processes for permutation enumeration (sccp route).")
def attack(jobspec, out, budget, workers):
    """Run the cryptanalysis job described by JOBSPEC (a JSON file).

    The jobspec names a preset, seed, and route (bob, alice-3.4, alice-3.5,
    alice-3.6, or sccp) plus optional budgets; the result is appended to the
    regenerated session transcript.
    """
    with open(jobspec, encoding="utf-8") as fh:
        try:
            job = json.load(fh)
        except json.JSONDecodeError as exc:
            raise click.UsageError(f"jobspec is not valid JSON: {exc}") from exc
    try:
        preset = job["preset"]
        seed = int(job["seed"])
        route = job["route"]
    except (KeyError, TypeError, ValueError) as exc:
        raise click.UsageError(f"jobspec needs preset, seed, and route fields ({exc})") from exc
    if route not in ROUTES + ("sccp",):
        raise click.UsageError(f"unknown route {route!r}; expected one of {ROUTES + ('sccp',)}")
    budgets = dict(job.get("budgets") or {})
    k_max = int(budgets.get("k-max", budget if budget is not None else 6))
    max_internal = int(budgets.get("max-internal", 3))
    n_workers = int(workers if workers is not None else budgets.get("workers", 1))

    params, kw = _make_params_or_usage(preset, seed)
    transcript = run_session(params, seed=seed, **kw)
    doc = transcript.to_json(timings=False)
    used = {"k-max": k_max, "max-internal": max_internal, "workers": n_workers}
    t0 = time.perf_counter()
    try:
        if route == "sccp":
            recovered = sccp_key_recovery(
                params, transcript.msg_a, transcript.msg_b,
                k_A=kw["k_A"], k_B=kw["k_B"], max_internal=max_internal, workers=n_workers,
            )
        else:
            recovered = run_attack_route(
                params, transcript.msg_a, transcript.msg_b, route,
                k_max=k_max, max_internal=max_internal,
            )
    except NotFound as exc:
        doc["attack"] = {"route": route, "budgets": used, "result": "not-found",
                         "detail": str(exc)}
        if out:
            _write_json(out, doc)
        raise
    elapsed = round((time.perf_counter() - t0) * 1000, 3)
    matches = recovered == transcript.key_bytes
    doc["attack"] = {"route": route, "budgets": used, "result": "found",
                     "recovered": recovered.hex(), "matches": matches,
                     "elapsed-ms": elapsed}
    if out:
        _write_json(out, doc)
        click.echo(f"report written to {out}")
    click.echo(f"route {route}: recovered {recovered.hex()} "
               f"({'matches session key' if matches else 'DOES NOT match session key'}, "
               f"{elapsed:.1f} ms)")
    return 0 if matches else 1


# ---------------------------------------------------------------------------
# peer mode
# ---------------------------------------------------------------------------


def _parse_addr(text: str) -> tuple[str, int]:
    host, sep, port = text.rpartition(":")
    if not sep or not host:
        raise click.UsageError(f"address must be host:port, got {text!r}")
    try:
        return host, int(port)
    except ValueError as exc:
        raise click.UsageError(f"bad port in {text!r}") from exc


def _expect_frame(sock_file, wanted: int) -> bytes:
    ftype, payload = read_frame(sock_file)
    if ftype != wanted:
        raise ProtocolAbort(f"unexpected frame type 0x{ftype:02x} (wanted 0x{wanted:02x})")
    return payload


def _exchange_hashes(sock_file, fingerprint: bytes, *, send_first: bool) -> None:
    """Both peers swap params hashes; the connecting side sends first."""
    if send_first:
        sock_file.write(pack_frame(FRAME_PARAMS_HASH, fingerprint))
        sock_file.flush()
    theirs = _expect_frame(sock_file, FRAME_PARAMS_HASH)
    if not send_first:
        sock_file.write(pack_frame(FRAME_PARAMS_HASH, fingerprint))
        sock_file.flush()
    if theirs != fingerprint:
        raise ProtocolAbort("params-hash mismatch — peers built different public parameters")


def _peer_transcript_doc(params, msg_a, msg_b, key_bytes, seed) -> dict:
    shell = Transcript(params, msg_a, msg_b, None, None, key_bytes, seed, {})
    return shell.to_json(timings=False)


def peer_serve(preset: str, seed: int, host: str, port: int, *,
               out: str | None = None, ready=None, echo=click.echo) -> bytes:
    """Listen for one peer and play the first-mover role. Returns key bytes."""
    params, kw = _make_params_or_usage(preset, seed)
    fingerprint = params_fingerprint(params)
    with socket.create_server((host, port)) as srv:
        srv.settimeout(90)
        if ready is not None:
            ready(srv.getsockname()[1])
        echo(f"listening on {host}:{srv.getsockname()[1]} (preset {preset}, seed {seed})")
        conn, peer_addr = srv.accept()
        with conn:
            conn.settimeout(90)
            echo(f"peer connected from {peer_addr[0]}:{peer_addr[1]}")
            sf = conn.makefile("rwb")
            _exchange_hashes(sf, fingerprint, send_first=False)
            echo(f"params-fingerprint {fingerprint.hex()[:16]} ok")

            sk = alice_keygen(params, kw["k_A"], kw["l_A"], child_rng(seed, "alice"))
            msg_a = alice_message(params, sk)
            sf.write(pack_frame(FRAME_MSG_A, encode_msg_a(params, msg_a)))
            sf.flush()

            msg_b = decode_msg_b(params, _expect_frame(sf, FRAME_MSG_B))
            theirs = _expect_frame(sf, FRAME_KEY_CONFIRM)

            key = alice_shared(params, sk, msg_b)
            key_bytes = derive_key_bytes(params.platform, key)
            confirm = key_bytes[:CONFIRM_LEN]
            sf.write(pack_frame(FRAME_KEY_CONFIRM, confirm))
            sf.flush()
            if theirs != confirm:
                raise ProtocolAbort("key-confirm mismatch — derived keys disagree")
            echo(f"key-confirm {confirm.hex()} (match)")
    if out:
        _write_json(out, _peer_transcript_doc(params, msg_a, msg_b, key_bytes, seed))
        echo(f"transcript written to {out}")
    return key_bytes


def peer_connect(preset: str, seed: int, host: str, port: int, *,
                 out: str | None = None, echo=click.echo) -> bytes:
    """Connect to a listening peer and play the responder role."""
    params, kw = _make_params_or_usage(preset, seed)
    fingerprint = params_fingerprint(params)
    with socket.create_connection((host, port), timeout=90) as conn:
        sf = conn.makefile("rwb")
        _exchange_hashes(sf, fingerprint, send_first=True)
        echo(f"params-fingerprint {fingerprint.hex()[:16]} ok")

        msg_a = decode_msg_a(params, _expect_frame(sf, FRAME_MSG_A))
        sk = bob_keygen(params, kw["k_B"], kw["l_B"], child_rng(seed, "bob"))
        msg_b = bob_message(params, sk)
        key = bob_shared(params, sk, msg_a)
        key_bytes = derive_key_bytes(params.platform, key)
        confirm = key_bytes[:CONFIRM_LEN]
        sf.write(pack_frame(FRAME_MSG_B, encode_msg_b(params, msg_b)))
        sf.write(pack_frame(FRAME_KEY_CONFIRM, confirm))
        sf.flush()

        theirs = _expect_frame(sf, FRAME_KEY_CONFIRM)
        if theirs != confirm:
            raise ProtocolAbort("key-confirm mismatch — derived keys disagree")
        echo(f"key-confirm {confirm.hex()} (match)")
    if out:
        _write_json(out, _peer_transcript_doc(params, msg_a, msg_b, key_bytes, seed))
        echo(f"transcript written to {out}")
    return key_bytes


@cli.command()
@click.option("--listen", "listen_addr", default=None, metavar="HOST:PORT",
              help="Serve one exchange (first-mover role).")
@click.option("--connect", "connect_addr", default=None, metavar="HOST:PORT",
              help="Connect to a serving peer (responder role).")
@click.option("--preset", required=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True),
              help="Write this side's transcript JSON here.")
def peer(listen_addr, connect_addr, preset, seed, out):
    """Run one key exchange against a remote peer over TCP.

    Exactly one of --listen/--connect is required. Both sides must supply
    the same preset and seed; the params-hash handshake enforces it.
    """
    if bool(listen_addr) == bool(connect_addr):
        raise click.UsageError("exactly one of --listen or --connect is required")
    if listen_addr:
        host, port = _parse_addr(listen_addr)
        peer_serve(preset, seed, host, port, out=out)
    else:
        host, port = _parse_addr(connect_addr)
        peer_connect(preset, seed, host, port, out=out)
    return 0


def main(argv=None) -> int:
    """Entry point mapping failures onto the documented exit codes."""
    try:
        rv = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 64
    except click.ClickException as exc:
        exc.show()
        return 1
    except NotFound as exc:
        click.echo(f"search exhausted: {exc}", err=True)
        return 2
    except ProtocolAbort as exc:
        click.echo(f"protocol abort: {exc}", err=True)
        return 3
    except (ConnectionError, TimeoutError) as exc:
        click.echo(f"framing error: {exc}", err=True)
        return 3
    except AssertionError as exc:
        click.echo(f"assertion failure: {exc}", err=True)
        return 1
    return int(rv) if isinstance(rv, int) else 0


if __name__ == "__main__":
    sys.exit(main())
