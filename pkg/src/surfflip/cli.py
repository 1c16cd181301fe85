"""Command-line front end.

Commands: ``validate``, ``faces``, ``genus``, ``enumerate``, ``classes``,
``rigid``, ``distance``, ``flipgraph``, ``verify``.  Exit status 0 on
success (including legitimate "unreachable" outcomes), 1 when the input
fails a library validation, 2 on malformed configuration.  Diagnostics go
to the error stream; results are deterministic byte-for-byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from itertools import product
from typing import IO, Callable

from .embedding import SurfaceGraph, dual_graph, load_embedding
from .errors import SurfflipError
from .flipgraph import (
    bfs_distances,
    build_flip_graph,
    component_reports,
    restrict,
    scc_decomposition,
    to_dot,
    verify_l_coloring,
    verify_u_coloring,
)
from .homology import face_vectors, homology_classes
from .orientations import (
    FaceState,
    Orientation,
    OutDegreeSpec,
    check_strongly_connected_alpha,
    enumerate_alpha,
    face_state,
    reverse,
    rigid_edges,
)
from .potential import (
    PotentialVector,
    Unreachable,
    flip_distance,
    min_flip_sequence,
    z_potential,
)


class ConfigError(Exception):
    """Malformed command-line configuration (exit status 2)."""


@dataclass
class RunConfig:
    """Everything one invocation needs, decoupled from argparse."""

    command: str
    embedding_path: str
    alpha: tuple[int, ...] | None = None
    forbidden: tuple[int, ...] = ()
    d_from: str | None = None
    d_to: str | None = None
    fmt: str = "text"
    witness: bool = False
    output: str | None = None


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"{what} must be comma-separated integers: {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surfflip",
        description="Orientations with prescribed out-degrees on embedded "
        "graphs: homology classes, flip distances, flip-graph structure.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    needs_alpha = {"enumerate", "classes", "rigid", "distance", "flipgraph", "verify"}
    for name in (
        "validate",
        "faces",
        "genus",
        "enumerate",
        "classes",
        "rigid",
        "distance",
        "flipgraph",
        "verify",
    ):
        cmd = sub.add_parser(name)
        cmd.add_argument("--embedding", required=True, help="embedding JSON file")
        cmd.add_argument("--output", help="write results to this path instead of stdout")
        default_fmt = "dot" if name == "flipgraph" else "text"
        choices = ["dot", "json"] if name == "flipgraph" else ["text", "json"]
        cmd.add_argument("--format", choices=choices, default=default_fmt)
        if name in needs_alpha:
            cmd.add_argument("--alpha", required=True, help="out-degrees, e.g. 2,2,2,2")
        if name in {"distance", "flipgraph"}:
            cmd.add_argument("--forbidden", help="forbidden face ids, e.g. 0,3")
        if name == "distance":
            cmd.add_argument("--from", dest="d_from", required=True,
                             help="orientation: bitstring or #id")
            cmd.add_argument("--to", dest="d_to", required=True,
                             help="orientation: bitstring or #id")
            cmd.add_argument("--witness", action="store_true",
                             help="also print a shortest flip sequence")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        embedding_path=args.embedding,
        alpha=_parse_int_list(args.alpha, "--alpha") if getattr(args, "alpha", None) else None,
        forbidden=_parse_int_list(args.forbidden, "--forbidden")
        if getattr(args, "forbidden", None)
        else (),
        d_from=getattr(args, "d_from", None),
        d_to=getattr(args, "d_to", None),
        fmt=args.format,
        witness=getattr(args, "witness", False),
        output=args.output,
    )


def _load(cfg: RunConfig) -> SurfaceGraph:
    try:
        with open(cfg.embedding_path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read embedding file: {exc}")
    return load_embedding(text)


def _enumeration(g: SurfaceGraph, cfg: RunConfig) -> list[Orientation]:
    assert cfg.alpha is not None
    if len(cfg.alpha) != g.vertex_count:
        raise ConfigError(
            f"--alpha has {len(cfg.alpha)} entries, graph has {g.vertex_count} vertices"
        )
    return enumerate_alpha(g, OutDegreeSpec(cfg.alpha))


def _check_forbidden(g: SurfaceGraph, cfg: RunConfig) -> frozenset[int]:
    bad = [f for f in cfg.forbidden if f < 0 or f >= g.face_count]
    if bad:
        raise ConfigError(f"forbidden face ids out of range: {bad}")
    return frozenset(cfg.forbidden)


def _pick_orientation(token: str, orients: list[Orientation], edge_count: int) -> Orientation:
    """Resolve '#id' or a bitstring against the enumeration."""
    if token.startswith("#"):
        try:
            idx = int(token[1:])
        except ValueError:
            raise ConfigError(f"not an orientation id: {token!r}")
        if not 0 <= idx < len(orients):
            raise ConfigError(f"orientation id out of range: {token} (have {len(orients)})")
        return orients[idx]
    if set(token) <= {"0", "1"} and len(token) == edge_count:
        by_bits = {d.bitstring(): d for d in orients}
        if token not in by_bits:
            raise ConfigError(f"bitstring {token} is not among the enumerated orientations")
        return by_bits[token]
    raise ConfigError(
        f"orientation must be '#id' or a {edge_count}-character bitstring: {token!r}"
    )


def _cmd_validate(g: SurfaceGraph, cfg: RunConfig, out: IO[str]) -> int:
    dual = dual_graph(g)
    facts = {
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "faces": g.face_count,
        "genus": g.genus,
        "two_distinct_faces_per_edge": all(a != b for a, b in dual.links),
        "dual_connected": True,
    }
    if cfg.fmt == "json":
        json.dump(facts, out, indent=2)
        out.write("\n")
    else:
        for key, value in facts.items():
            out.write(f"{key} = {str(value).lower() if isinstance(value, bool) else value}\n")
        out.write("valid\n")
    return 0


def _cmd_faces(g: SurfaceGraph, cfg: RunConfig, out: IO[str]) -> int:
    if cfg.fmt == "json":
        json.dump([list(f.boundary) for f in g.faces], out)
        out.write("\n")
    else:
        for f in g.faces:
            darts = " ".join(str(d) for d in f.boundary)
            out.write(f"face {f.id}: {darts}\n")
    return 0


def _cmd_genus(g: SurfaceGraph, cfg: RunConfig, out: IO[str]) -> int:
    if cfg.fmt == "json":
        json.dump({"genus": g.genus}, out)
        out.write("\n")
    else:
        out.write(f"genus = {g.genus}\n")
    return 0


def _cmd_enumerate(g: SurfaceGraph, cfg: RunConfig, out: IO[str]) -> int:
    orients = _enumeration(g, cfg)
    if cfg.fmt == "json":
        json.dump([d.bitstring() for d in orients], out)
        out.write("\n")
    else:
        for d in orients:
            out.write(f"{d.id} {d.bitstring()}\n")
    return 0


def _cmd_classes(g: SurfaceGraph, cfg: RunConfig, out: IO[str]) -> int:
    orients = _enumeration(g, cfg)
    classes = homology_classes(g, orients)
    if cfg.fmt == "json":
        json.dump(classes, out)
        out.write("\n")
    else:
        for k, cls in enumerate(classes):
            out.write(f"class {k}: {' '.join(str(i) for i in cls)}\n")
    return 0


def _cmd_rigid(g: SurfaceGraph, cfg: RunConfig, out: IO[str]) -> int:
    orients = _enumeration(g, cfg)
    rigid = sorted(rigid_edges(orients))
    if cfg.fmt == "json":
        json.dump(rigid, out)
        out.write("\n")
    else:
        out.write(f"rigid edges: {','.join(map(str, rigid)) if rigid else '(none)'}\n")
    return 0


def _cmd_distance(g: SurfaceGraph, cfg: RunConfig, out: IO[str]) -> int:
    orients = _enumeration(g, cfg)
    forbidden = _check_forbidden(g, cfg)
    assert cfg.d_from is not None and cfg.d_to is not None
    d_from = _pick_orientation(cfg.d_from, orients, g.edge_count)
    d_to = _pick_orientation(cfg.d_to, orients, g.edge_count)
    pot = z_potential(g, d_from, d_to)
    outcome = flip_distance(g, d_from, d_to, forbidden)
    witness = min_flip_sequence(g, d_from, d_to, forbidden) if cfg.witness else None

    if cfg.fmt == "json":
        payload: dict = {
            "from": d_from.id,
            "to": d_to.id,
            "forbidden": sorted(forbidden),
        }
        if isinstance(pot, PotentialVector):
            payload["z"] = list(pot.z)
            payload["z_min"] = pot.z_min
            payload["argmin"] = sorted(pot.argmin)
        if isinstance(outcome, Unreachable):
            payload["outcome"] = "unreachable"
            payload["reason"] = outcome.reason
            payload["faces"] = list(outcome.faces)
        else:
            payload["distance"] = outcome
        if cfg.witness:
            payload["witness"] = witness if isinstance(witness, list) else None
        json.dump(payload, out, indent=2)
        out.write("\n")
        return 0

    out.write(f"from: {d_from.id} {d_from.bitstring()}\n")
    out.write(f"to: {d_to.id} {d_to.bitstring()}\n")
    out.write(
        f"forbidden: {','.join(map(str, sorted(forbidden))) if forbidden else '(none)'}\n"
    )
    if isinstance(pot, PotentialVector):
        for f, value in enumerate(pot.z):
            out.write(f"z[{f}] = {value}\n")
        out.write(f"z_min = {pot.z_min}\n")
        out.write(f"argmin = {','.join(map(str, sorted(pot.argmin)))}\n")
    if isinstance(outcome, Unreachable):
        detail = f": {','.join(map(str, outcome.faces))}" if outcome.faces else ""
        out.write(f"outcome = unreachable ({outcome.reason}{detail})\n")
    else:
        out.write(f"distance = {outcome}\n")
        if isinstance(witness, list):
            out.write(
                f"witness = {','.join(map(str, witness)) if witness else '(empty)'}\n"
            )
    return 0


def _cmd_flipgraph(g: SurfaceGraph, cfg: RunConfig, out: IO[str]) -> int:
    orients = _enumeration(g, cfg)
    forbidden = _check_forbidden(g, cfg)
    classes = homology_classes(g, orients)
    fg = build_flip_graph(g, orients, forbidden)
    if cfg.fmt == "json":
        reports = component_reports(g, fg, classes, orients)
        payload = {
            "forbidden": sorted(fg.forbidden),
            "nodes": list(fg.nodes),
            "arcs": [list(a) for a in fg.arcs],
            "classes": classes,
            "reports": [
                {
                    "component": list(r.component),
                    "acyclic": r.acyclic,
                    "sink": r.sink,
                    "source": r.source,
                    "lattice_certified": r.lattice_certified,
                    "sink_in_O": r.sink_in_O,
                    "source_in_Ostar": r.source_in_Ostar,
                }
                for r in reports
            ],
        }
        json.dump(payload, out, indent=2)
        out.write("\n")
    else:
        out.write(to_dot(g, fg, classes, orients))
    return 0


def _brute_enumerate(g: SurfaceGraph, alpha: tuple[int, ...]) -> list[str]:
    """All satisfying bitstrings by filtering every assignment (≤ 20 edges)."""
    found = []
    for bits in product((False, True), repeat=g.edge_count):
        out = [0] * g.vertex_count
        for e, (tail, head) in enumerate(g.edges):
            out[tail if bits[e] else head] += 1
        if tuple(out) == alpha:
            found.append("".join("1" if b else "0" for b in bits))
    return found


def _cmd_verify(g: SurfaceGraph, cfg: RunConfig, out: IO[str]) -> int:
    orients = _enumeration(g, cfg)
    assert cfg.alpha is not None
    failures = 0

    def check(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        if ok:
            out.write(f"check {name}: pass\n")
        else:
            failures += 1
            out.write(f"check {name}: fail{f' ({detail})' if detail else ''}\n")

    dual = dual_graph(g)
    check("edge-on-two-faces", all(a != b for a, b in dual.links))
    total = [0] * g.edge_count
    for vec in face_vectors(g):
        total = [a + b for a, b in zip(total, vec.entries)]
    check("face-vectors-sum-zero", not any(total))

    if g.edge_count <= 20:
        brute = _brute_enumerate(g, cfg.alpha)
        check(
            "enumeration-equals-brute-force",
            [d.bitstring() for d in orients] == brute,
            f"{len(orients)} enumerated vs {len(brute)} brute",
        )
    if not orients:
        out.write(f"{failures} failure(s)\n" if failures else "all checks passed\n")
        return 1 if failures else 0

    sc = check_strongly_connected_alpha(g, OutDegreeSpec(cfg.alpha))
    out.write(f"info strongly-connected-alpha: {str(sc).lower()}\n")

    classes = homology_classes(g, orients)
    fg_empty = build_flip_graph(g, orients)
    tested = [frozenset()] + [frozenset({f.id}) for f in g.faces]

    ok_u = all(verify_u_coloring(build_flip_graph(g, orients, c))[0] for c in tested)
    check("u-coloring", ok_u)
    ok_l = all(verify_l_coloring(build_flip_graph(g, orients, c))[0] for c in tested)
    check("l-coloring", ok_l)

    ok_deletion = all(
        restrict(fg_empty, c) == build_flip_graph(g, orients, c) for c in tested
    )
    check("arc-deletion-identity", ok_deletion)

    ok_structure = True
    structure_detail = ""
    for c in tested[1:]:
        fg_c = build_flip_graph(g, orients, c)
        for report in component_reports(g, fg_c, classes, orients):
            if not (
                report.acyclic
                and report.sink is not None
                and report.source is not None
                and report.lattice_certified
                and report.sink_in_O
                and report.source_in_Ostar
            ):
                ok_structure = False
                structure_detail = f"forbidden={sorted(c)} component={report.component}"
                break
        if not ok_structure:
            break
    check("forbidden-structure", ok_structure, structure_detail)

    ok_counts = True
    for c in tested[1:]:
        fg_c = build_flip_graph(g, orients, c)
        for cls in classes:
            reports = component_reports(g, fg_c, [cls], orients)
            sinks = [r.sink for r in reports if r.sink is not None]
            sources = [r.source for r in reports if r.source is not None]
            o_k = [
                i
                for i in cls
                if all(face_state(orients[i], f) is not FaceState.CCW
                       for f in g.faces if f.id not in c)
            ]
            o_star_k = [
                i
                for i in cls
                if all(face_state(orients[i], f) is not FaceState.CW
                       for f in g.faces if f.id not in c)
            ]
            if sorted(sinks) != o_k or sorted(sources) != o_star_k or len(o_k) != len(o_star_k):
                ok_counts = False
    check("sink-source-sets", ok_counts)

    sccs = scc_decomposition(fg_empty)
    scc_of = {n: comp for comp in sccs for n in comp}
    ok_distance = True
    for c in tested:
        fg_c = build_flip_graph(g, orients, c)
        for comp in sccs:
            for a in comp:
                table = bfs_distances(fg_c, a)
                for b in comp:
                    formula = flip_distance(g, orients[a], orients[b], c)
                    if isinstance(formula, Unreachable):
                        if b in table:
                            ok_distance = False
                    elif table.get(b) != formula:
                        ok_distance = False
    check("distance-vs-bfs", ok_distance)

    by_bits = {d.bitstring(): i for i, d in enumerate(orients)}
    reversal_closed = all(reverse(d).bitstring() in by_bits for d in orients)
    if reversal_closed:
        ok_reversal = True
        for comp in sccs:
            for a in comp:
                for b in comp:
                    forward_d = flip_distance(g, orients[a], orients[b])
                    backward_d = flip_distance(
                        g,
                        orients[by_bits[reverse(orients[b]).bitstring()]],
                        orients[by_bits[reverse(orients[a]).bitstring()]],
                    )
                    if forward_d != backward_d:
                        ok_reversal = False
        check("distance-reversal-symmetry", ok_reversal)
    else:
        out.write("info distance-reversal-symmetry: skipped (reversal changes out-degrees)\n")

    out.write(f"{failures} failure(s)\n" if failures else "all checks passed\n")
    return 1 if failures else 0


_COMMANDS: dict[str, Callable[[SurfaceGraph, RunConfig, IO[str]], int]] = {
    "validate": _cmd_validate,
    "faces": _cmd_faces,
    "genus": _cmd_genus,
    "enumerate": _cmd_enumerate,
    "classes": _cmd_classes,
    "rigid": _cmd_rigid,
    "distance": _cmd_distance,
    "flipgraph": _cmd_flipgraph,
    "verify": _cmd_verify,
}


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        g = _load(cfg)
        handler = _COMMANDS[cfg.command]
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as out:
                return handler(g, cfg, out)
        return handler(g, cfg, sys.stdout)
    except ConfigError as exc:
        print(f"surfflip: {exc}", file=sys.stderr)
        return 2
    except SurfflipError as exc:
        print(f"surfflip: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from_args(args)
    except ConfigError as exc:
        print(f"surfflip: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
