"""Subcommand implementations: each turns a RunConfig into a rendered result"""
import dataclasses
import logging
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from more_itertools import first_true

from ..approx_search import F8_HAT_PARAMS, nearest_dyadic_scale, run_search, scaled_transform
from ..beamsim.geometry import (
    ArrayGeometry,
    PlaneWave,
    angle_conventions,
    nearest_beam,
    theoretical_directions,
)
from ..beamsim.pattern import all_patterns, beam_peak_direction
from ..beamsim.perturb import PerturbationModel, perturbed_patterns
from ..beamsim.simulate import simulate_plane_wave
from ..numerics.dyadic import DyadicGaussian
from ..transforms.apply import apply_direct, apply_fast
from ..transforms.approx import N_POINTS, build_approx_matrix
from ..transforms.exact import build_exact_dft
from ..transforms.factorization import (
    build_factorization,
    complexity_report,
    direct_complexity,
    verify_factorization,
)
from ..transforms.flowgraph import adder_depth, adder_nodes, signal_flow_graph
from ..utils.errors import VerificationFailure
from .config import RunConfig
from .export import ResultDocument, format_complex, render_csv, render_table

_LOGGER = logging.getLogger(name=__name__)

# Float path deviation of the stage product from the matrix
_FACTORIZATION_TOLERANCE = 1e-14
# Fast against direct, relative to the frame's largest output
_RELATIVE_TOLERANCE = 1e-12
# Exact frames use integer inputs bounded by this
_EXACT_INPUT_BOUND = 2**16
_EXACT_FRAMES = 32
_GATE_FRAMES = 256


@dataclasses.dataclass(frozen=True)
class CommandResult:
    document: ResultDocument
    text: str
    # Set when an acceptance check failed; raised after the output is written
    failure: VerificationFailure | None = None
    # Shown on standard error, for formats whose output cannot carry it
    summary: str | None = None


def _document(config: RunConfig, payload: dict) -> ResultDocument:
    return ResultDocument.create(config.command, config.parameters(), payload, config.seed)


def _render(config: RunConfig, document: ResultDocument, text) -> str:
    """JSON is generic, the other formats come from the command's renderer"""
    if config.format == "json":
        return document.to_json()
    return text()


def _geometry(config: RunConfig) -> ArrayGeometry:
    frequency = config.options.get("frequency_ghz")
    if frequency is not None:
        design = config.options.get("design_frequency_ghz") or 4.0
        return ArrayGeometry.from_frequency(N_POINTS, frequency * 1e9, design * 1e9)
    return ArrayGeometry(N_POINTS, config.spacing)


def _transform(config: RunConfig):
    if config.options.get("transform") == "exact":
        return build_exact_dft(N_POINTS)
    return build_approx_matrix()


# matrix


def cmd_matrix(config: RunConfig) -> CommandResult:
    which = config.options["which"]
    if which == "approx":
        approx = build_approx_matrix()
        rows = [[str(e) for e in row] for row in approx.matrix.entries]
        payload = {
            "which": which,
            "scale": str(approx.scale),
            "integer_rows": [[str(e) for e in row] for row in approx.integer_matrix],
            "rows": rows,
        }
        blocks = [("", rows)]
    elif which == "exact":
        dft = build_exact_dft(config.options["n"] or N_POINTS)
        rows = [[format_complex(e) for e in row] for row in dft.matrix.entries]
        payload = {"which": which, "n": dft.n, "rows": rows}
        blocks = [("", rows)]
    else:
        stages = build_factorization().stages
        payload = {
            "which": which,
            "order": "application",
            "stages": [
                {
                    "position": position,
                    "name": stage.name,
                    "kind": stage.kind.value,
                    "rows": [[str(e) for e in row] for row in stage.matrix.entries],
                }
                for position, stage in enumerate(stages, start=1)
            ],
        }
        blocks = [
            (f"stage {s['position']}: {s['name']} ({s['kind']})", s["rows"])
            for s in payload["stages"]
        ]
    document = _document(config, payload)

    def text():
        lines = []
        for title, rows in blocks:
            if title:
                lines.append(title)
            lines.extend(" ".join(row) for row in rows)
        return "\n".join(lines) + "\n"

    return CommandResult(document, _render(config, document, text))


# verify


@dataclasses.dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def _max_relative_deviation(fast: np.ndarray, direct: np.ndarray) -> float:
    scale = np.maximum(np.max(np.abs(direct), axis=0), 1.0)
    return float(np.max(np.max(np.abs(fast - direct), axis=0) / scale))


def _exact_frames(rng: np.random.Generator, count: int) -> list[list[DyadicGaussian]]:
    parts = rng.integers(-_EXACT_INPUT_BOUND, _EXACT_INPUT_BOUND + 1, size=(count, N_POINTS, 2))
    return [[DyadicGaussian.make(int(re), int(im)) for re, im in frame] for frame in parts]


def cmd_verify(config: RunConfig) -> CommandResult:
    approx = build_approx_matrix()
    factorization = build_factorization()
    report = verify_factorization(factorization, approx)
    counts = complexity_report(factorization)
    direct = direct_complexity(approx)
    graph = signal_flow_graph(factorization)
    rng = np.random.default_rng(config.seed)

    frames = config.options["frames"]
    batch = rng.standard_normal((N_POINTS, frames)) + 1j * rng.standard_normal((N_POINTS, frames))
    float_deviation = _max_relative_deviation(
        apply_fast(factorization, batch), apply_direct(approx, batch)
    )
    exact_mismatches = sum(
        apply_fast(factorization, frame) != apply_direct(approx, frame)
        for frame in _exact_frames(rng, _EXACT_FRAMES)
    )
    dc = np.asarray(apply_fast(factorization, [1] * N_POINTS))
    dc_error = float(np.max(np.abs(dc - np.eye(N_POINTS)[0] * N_POINTS)))
    adders = len(adder_nodes(graph))

    checks = [
        Check("factorization exact", report.exact_equal, "dyadic stage product equals F8_hat"),
        Check(
            "factorization float",
            report.max_abs_deviation <= _FACTORIZATION_TOLERANCE,
            f"max deviation {report.max_abs_deviation:.3g}",
        ),
        Check(
            "fast equals direct (float)",
            float_deviation <= _RELATIVE_TOLERANCE,
            f"{frames} random frames, max relative deviation {float_deviation:.3g}",
        ),
        Check(
            "fast equals direct (exact)",
            exact_mismatches == 0,
            f"{_EXACT_FRAMES} integer frames, {exact_mismatches} mismatches",
        ),
        Check("dc isolation", dc_error <= config.tolerance, f"max error {dc_error:.3g}"),
        Check(
            "structural addition count",
            adders == counts.complex_additions,
            f"flow graph has {adders} adders, stage count {counts.complex_additions}",
        ),
        Check(
            "fewer additions than direct",
            counts.real_additions < direct.real_additions,
            f"{counts.real_additions} < {direct.real_additions} real additions",
        ),
    ]
    failed = first_true(checks, pred=lambda c: not c.passed)
    complexity = {
        "complex_additions": counts.complex_additions,
        "real_additions": counts.real_additions,
        "halvings": counts.halvings,
        "j_rotations": counts.j_rotations,
        "negations": counts.negations,
        "complex_multiplications": 0,
        "adder_depth": adder_depth(factorization),
    }
    direct_counts = {
        "complex_additions": direct.complex_additions,
        "real_additions": direct.real_additions,
        "complex_multiplications": direct.nontrivial_multiplications,
    }
    document = _document(
        config,
        {
            "checks": [dataclasses.asdict(c) for c in checks],
            "passed": failed is None,
            "complexity": complexity,
            "direct": direct_counts,
        },
    )

    def text():
        lines = [f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in checks]
        lines.append("fast algorithm:")
        lines.extend(f"  {k.replace('_', ' ')}: {v}" for k, v in complexity.items())
        lines.append("direct evaluation:")
        lines.extend(f"  {k.replace('_', ' ')}: {v}" for k, v in direct_counts.items())
        return "\n".join(lines) + "\n"

    failure = None if failed is None else VerificationFailure(failed.name, failed.detail)
    return CommandResult(document, _render(config, document, text), failure)


# search

_SEARCH_COLUMNS = (
    "rank",
    "h0",
    "h1",
    "h2",
    "scale",
    "frobenius_error",
    "orthogonality_deviation",
    "adder_cost",
    "condition_number",
)


def cmd_search(config: RunConfig) -> CommandResult:
    results = run_search()
    top = results[: config.options["top_k"]]
    best = results[0]
    recovered = best.params == F8_HAT_PARAMS and scaled_transform(best) == build_approx_matrix()
    rows = [
        (
            r.rank,
            r.params.h0,
            str(r.params.h1),
            str(r.params.h2),
            r.scale,
            r.frobenius_error,
            r.orthogonality_deviation,
            r.adder_cost,
            r.condition_number,
        )
        for r in top
    ]
    document = _document(
        config,
        {
            "candidates": len(results),
            "results": [dict(zip(_SEARCH_COLUMNS, row)) for row in rows],
            "best_dyadic_scale": nearest_dyadic_scale(best.scale) if best.scale > 0 else None,
            "reproduces_f8_hat": recovered,
        },
    )

    def text():
        return render_table(_SEARCH_COLUMNS, rows)

    if config.format == "csv":
        rendered = render_csv(_SEARCH_COLUMNS, rows)
    else:
        rendered = _render(config, document, text)
    failure = None
    if not recovered:
        failure = VerificationFailure(
            "search optimum", f"rank 1 is {best.params}, expected {F8_HAT_PARAMS}"
        )
    return CommandResult(document, rendered, failure)


# pattern


def cmd_pattern(config: RunConfig) -> CommandResult:
    if config.is_ensemble():
        return _ensemble_pattern(config)
    geometry = _geometry(config)
    transform = _transform(config)
    patterns = all_patterns(transform, geometry, config.grid_step, floor_db=config.floor_db)
    theory = theoretical_directions(geometry)
    peaks = [beam_peak_direction(p) for p in patterns]
    summary = [
        {
            "beam": p.beam_index,
            "peak_deg": peak,
            "peak_from_axis_deg": angle_conventions(peak)["from_axis"],
            "theoretical_deg": theory[p.beam_index],
            "peak_magnitude": p.peak_magnitude,
        }
        for p, peak in zip(patterns, peaks)
    ]
    header = ["angle_deg"] + [f"beam{p.beam_index}_db" for p in patterns]
    angles = patterns[0].angles_deg
    table = np.column_stack([angles] + [p.magnitude_db for p in patterns])
    document = _document(
        config,
        {
            "spacing_wavelengths": geometry.spacing_wavelengths,
            "peaks": summary,
            "columns": header,
            "rows": table,
        },
    )
    summary_header = ("beam", "peak_deg", "peak_from_axis_deg", "theoretical_deg", "peak_magnitude")
    summary_rows = [[s[k] for k in summary_header] for s in summary]

    def text():
        return render_table(summary_header, summary_rows) + "\n" + render_table(header, table)

    if config.format == "csv":
        summary = render_table(summary_header, summary_rows)
        return CommandResult(document, render_csv(header, table), summary=summary)
    return CommandResult(document, _render(config, document, text))


def _ensemble_pattern(config: RunConfig) -> CommandResult:
    geometry = _geometry(config)
    transform = _transform(config)
    beam = config.options["beam"]
    weights = transform.matrix.to_numpy()[beam]
    model = PerturbationModel(
        gain_sigma=config.options["perturb_gain"],
        phase_sigma_deg=config.options["perturb_phase_deg"],
        trials=config.options["trials"],
        seed=config.seed,
    )
    stats = perturbed_patterns(weights, geometry, model, config.grid_step, floor_db=config.floor_db)
    header = ["angle_deg", "mean_db", "p05_db", "p95_db"]
    table = np.column_stack([stats.angles_deg, stats.mean_db, stats.p05_db, stats.p95_db])
    document = _document(
        config,
        {
            "beam": beam,
            "reference_peak_deg": stats.reference_peak,
            "peak_shift_p95_deg": stats.peak_shift_p95,
            "columns": header,
            "rows": table,
        },
    )
    headline = (
        f"beam {beam}: reference peak {stats.reference_peak:.3f} deg, "
        f"95th percentile peak shift {stats.peak_shift_p95:.3f} deg\n"
    )

    def text():
        return headline + "\n" + render_table(header, table)

    if config.format == "csv":
        return CommandResult(document, render_csv(header, table), summary=headline)
    return CommandResult(document, _render(config, document, text))


# beamsim


def cmd_beamsim(config: RunConfig) -> CommandResult:
    geometry = _geometry(config)
    transform = _transform(config)
    o = config.options
    wave = PlaneWave(angle_deg=o["angle"], amplitude=o["amplitude"], phase_deg=o["phase_deg"])
    response = simulate_plane_wave(transform, geometry, wave)
    theory = theoretical_directions(geometry)
    rows = [
        (beam, magnitude, theory[beam])
        for beam, magnitude in enumerate(response.magnitudes.tolist())
    ]
    document = _document(
        config,
        {
            "outputs": response.outputs,
            "magnitudes": response.magnitudes,
            "winner": response.winner,
            "nearest_beam": nearest_beam(geometry, wave.angle_deg),
        },
    )

    def text():
        table = render_table(("beam", "magnitude", "direction_deg"), rows)
        return table + f"winner: beam {response.winner}\n"

    return CommandResult(document, _render(config, document, text))


# bench


def _timed(function, batch: np.ndarray, lanes: int) -> float:
    blocks = np.array_split(batch, lanes, axis=1)
    start = time.perf_counter()
    if lanes == 1:
        function(blocks[0])
    else:
        with ThreadPoolExecutor(max_workers=lanes) as pool:
            list(pool.map(function, blocks))
    return time.perf_counter() - start


def cmd_bench(config: RunConfig) -> CommandResult:
    approx = build_approx_matrix()
    factorization = build_factorization()
    frames = config.options["frames"]
    lanes = min(config.options["lanes"], frames)
    mode = config.options["mode"]
    rng = np.random.default_rng(config.seed)
    batch = rng.standard_normal((N_POINTS, frames)) + 1j * rng.standard_normal((N_POINTS, frames))

    sample = batch[:, :_GATE_FRAMES]
    gate_deviation = _max_relative_deviation(
        apply_fast(factorization, sample), apply_direct(approx, sample)
    )
    if gate_deviation > _RELATIVE_TOLERANCE:
        raise VerificationFailure(
            "benchmark correctness gate", f"fast/direct deviation {gate_deviation:.3g}"
        )

    counts = complexity_report(factorization)
    direct = direct_complexity(approx)
    kernels = {
        "direct": (
            lambda block: apply_direct(approx, block),
            {
                "real_additions_per_frame": direct.real_additions,
                "complex_multiplications_per_frame": direct.nontrivial_multiplications,
            },
        ),
        "fast": (
            lambda block: apply_fast(factorization, block),
            {
                "real_additions_per_frame": counts.real_additions,
                "complex_multiplications_per_frame": 0,
            },
        ),
    }
    selected = ("direct", "fast") if mode == "both" else (mode,)
    _LOGGER.info("Benchmarking %s on %d frames in %d lane(s)", ", ".join(selected), frames, lanes)
    report = {}
    for name in selected:
        function, ops = kernels[name]
        seconds = _timed(function, batch, lanes)
        report[name] = {
            **ops,
            "seconds": seconds,
            "frames_per_second": frames / seconds if seconds > 0 else float("inf"),
        }
    document = _document(
        config,
        {
            "frames": frames,
            "lanes": lanes,
            "gate": {"passed": True, "sampled_frames": sample.shape[1], "max_relative_deviation": gate_deviation},
            "modes": report,
        },
    )
    header = ("mode", "frames_per_second", "seconds", "real_additions_per_frame", "complex_multiplications_per_frame")
    rows = [[name] + [values[h] for h in header[1:]] for name, values in report.items()]

    def text():
        return f"correctness gate passed on {sample.shape[1]} frames\n" + render_table(header, rows)

    return CommandResult(document, _render(config, document, text))


COMMANDS = {
    "matrix": cmd_matrix,
    "verify": cmd_verify,
    "search": cmd_search,
    "pattern": cmd_pattern,
    "beamsim": cmd_beamsim,
    "bench": cmd_bench,
}
