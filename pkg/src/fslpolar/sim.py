"""Monte-Carlo block-error-rate campaigns.

A campaign is a pure function of (config, seed): every frame draws its
payload and noise from a substream keyed by (seed, frame_index), frames are
counted in fixed-size chunks, and the stopping rule is evaluated on ordered
chunk boundaries, so results do not depend on the worker count.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .construct import adjust_info_bits, hybrid_polar_encode, make_hybrid_spec
from .core import (
    CodeSpec,
    awgn_llr,
    encode_frame,
    esn0_from_ebn0,
    frame_rng,
    make_spec,
    modulate_bpsk,
)
from .fsl import FslDecoder, build_tables
from .nodes import FslParams
from .scl import scl_decode

CHUNK_FRAMES = 256  # stopping granularity; part of the determinism contract


@dataclass(frozen=True)
class CampaignConfig:
    n: int
    k: int
    crc_len: int = 16
    construction: str = "pw"  # pw | adjusted | hybrid
    adjust_band: tuple[int, int] | None = None  # (k_low, k_high) for adjusted
    decoder: str = "scl"  # scl | fsl
    list_size: int = 8
    fsl: FslParams = field(default_factory=FslParams)
    snr_points_db: tuple[float, ...] = (0.0, 1.0, 2.0)
    snr_convention: str = "es"  # es -> Es/N0, eb -> Eb/N0 (rate k/n)
    min_block_errors: int = 100
    max_frames: int = 1_000_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.decoder not in ("scl", "fsl"):
            raise ValueError(f"unknown decoder {self.decoder!r}")
        if self.construction not in ("pw", "adjusted", "hybrid"):
            raise ValueError(f"unknown construction {self.construction!r}")
        if self.snr_convention not in ("es", "eb"):
            raise ValueError("snr_convention must be 'es' or 'eb'")
        if self.min_block_errors < 1:
            raise ValueError("min_block_errors must be >= 1")
        if len(self.snr_points_db) and np.any(np.diff(self.snr_points_db) <= 0):
            raise ValueError("snr points must be strictly increasing")
        if self.construction == "adjusted" and self.adjust_band is None:
            raise ValueError("adjusted construction needs adjust_band=(k_low, k_high)")


@dataclass(frozen=True)
class BlerPoint:
    snr_db: float
    frames: int
    block_errors: int
    bler: float
    wall_time: float

    def __post_init__(self) -> None:
        assert 0 <= self.block_errors <= self.frames


def spec_for(config: CampaignConfig) -> CodeSpec:
    spec = make_spec(config.n, config.k, config.crc_len)
    if config.construction == "adjusted":
        spec = adjust_info_bits(spec, config.fsl.block_len, *config.adjust_band)
    elif config.construction == "hybrid":
        spec = make_hybrid_spec(spec)
    return spec


class _FrameRunner:
    """Encode/decode pipeline for one campaign; reusable across SNR points."""

    def __init__(self, config: CampaignConfig):
        self.config = config
        self.spec = spec_for(config)
        self.encode = (
            (lambda p: hybrid_polar_encode(p, self.spec))
            if self.spec.construction == "hybrid"
            else (lambda p: encode_frame(p, self.spec))
        )
        if config.decoder == "fsl":
            params = config.fsl
            if params.list_size != config.list_size:
                params = FslParams(
                    block_len=params.block_len,
                    flip_budget=params.flip_budget,
                    patterns_per_syndrome=params.patterns_per_syndrome,
                    list_size=config.list_size,
                    saturation_llr=params.saturation_llr,
                )
            decoder = FslDecoder(self.spec, params)
            self.decode = decoder.decode
        else:
            self.decode = lambda llr: scl_decode(llr, self.spec, config.list_size)

    def esn0(self, snr_db: float) -> float:
        if self.config.snr_convention == "eb":
            return esn0_from_ebn0(snr_db, self.config.k / self.config.n)
        return snr_db

    def run_chunk(self, esn0_db: float, start: int, count: int) -> int:
        """Block errors over frames [start, start+count)."""
        errors = 0
        k = self.spec.k_payload
        for f in range(start, start + count):
            rng = frame_rng(self.config.seed, f)
            payload = rng.integers(0, 2, k, dtype=np.uint8)
            llr = awgn_llr(modulate_bpsk(self.encode(payload)), esn0_db, rng)
            result = self.decode(llr)
            errors += not np.array_equal(result.payload, payload)
        return errors


def run_campaign(
    config: CampaignConfig, workers: int | None = None, progress: bool = False
) -> list[BlerPoint]:
    """Simulate every SNR point until min_block_errors or max_frames.

    Results are a pure function of (config, seed): chunk outcomes are folded
    in frame order and the stopping rule only looks at completed chunks, so
    any worker count yields the same points.
    """
    runner = _FrameRunner(config)
    if workers is None:
        workers = min(2, os.cpu_count() or 1)
    points = []
    for snr_db in config.snr_points_db:
        esn0_db = runner.esn0(snr_db)
        t0 = time.perf_counter()
        frames = 0
        errors = 0
        next_start = 0

        def chunks():
            nonlocal next_start
            while next_start < config.max_frames:
                count = min(CHUNK_FRAMES, config.max_frames - next_start)
                start = next_start
                next_start += count
                yield start, count

        gen = chunks()
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pending = []
            done = False
            while not done:
                while len(pending) < workers + 1:
                    nxt = next(gen, None)
                    if nxt is None:
                        break
                    pending.append(
                        (nxt[1], pool.submit(runner.run_chunk, esn0_db, nxt[0], nxt[1]))
                    )
                if not pending:
                    break
                count, fut = pending.pop(0)  # fold strictly in frame order
                errors += fut.result()
                frames += count
                if errors >= config.min_block_errors or frames >= config.max_frames:
                    done = True
        point = BlerPoint(
            snr_db=float(snr_db),
            frames=frames,
            block_errors=errors,
            bler=errors / frames if frames else 0.0,
            wall_time=time.perf_counter() - t0,
        )
        points.append(point)
        if progress:
            print(
                f"  snr={snr_db:+.2f} dB ({config.snr_convention}): "
                f"{errors}/{frames} errors, bler={point.bler:.3e} "
                f"[{point.wall_time:.1f}s]",
                flush=True,
            )
    return points


# --------------------------------------------------------------------------- reporting

def snr_at_bler(points: list[BlerPoint], target: float) -> float:
    """SNR reaching the target BLER by log-linear interpolation of the curve."""
    xs = np.array([p.snr_db for p in points])
    ys = np.array([max(p.bler, 1e-12) for p in points])
    if not ((ys.max() >= target) and (ys.min() <= target)):
        raise ValueError(f"target bler {target} is outside the simulated range")
    logy = np.log10(ys)
    t = np.log10(target)
    for i in range(len(xs) - 1):
        y0, y1 = logy[i], logy[i + 1]
        if (y0 - t) * (y1 - t) <= 0 and y0 != y1:
            return float(xs[i] + (t - y0) * (xs[i + 1] - xs[i]) / (y1 - y0))
    raise ValueError("no bracketing segment found")


def emit_report(
    groups: list[tuple[str, list[BlerPoint]]],
    out_base: str,
    formats: tuple[str, ...] = ("csv", "json", "plotscript"),
    config: CampaignConfig | None = None,
) -> list[str]:
    """Write campaign results as CSV / JSON / gnuplot script files."""
    written: list[str] = []
    csv_paths: dict[str, str] = {}
    for label, points in groups:
        suffix = f"_{label}" if len(groups) > 1 else ""
        if "csv" in formats:
            path = f"{out_base}{suffix}.csv"
            with open(path, "w") as fh:
                fh.write("snr_db,frames,errors,bler\n")
                for p in points:
                    fh.write(f"{p.snr_db!r},{p.frames},{p.block_errors},{p.bler!r}\n")
            written.append(path)
            csv_paths[label] = path
    if "json" in formats:
        payload = {
            "config": _config_dict(config) if config else None,
            "results": {
                label: [asdict(p) for p in points] for label, points in groups
            },
        }
        path = f"{out_base}.json"
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2)
        written.append(path)
    if "plotscript" in formats:
        path = f"{out_base}.gp"
        lines = [
            "# gnuplot script: render with `gnuplot -p <this file>`",
            "set datafile separator ','",
            "set logscale y",
            "set grid",
            "set xlabel 'SNR (dB)'",
            "set ylabel 'BLER'",
            "set format y '10^{%T}'",
            "set key bottom left",
        ]
        plots = []
        for label, _ in groups:
            src = csv_paths.get(label, f"{out_base}.csv")
            plots.append(
                f"'{os.path.basename(src)}' every ::1 using 1:4 "
                f"with linespoints title '{label}'"
            )
        lines.append("plot " + ", \\\n     ".join(plots))
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        written.append(path)
    return written


def _config_dict(config: CampaignConfig) -> dict:
    d = asdict(config)
    d["fsl"] = asdict(config.fsl)
    return d


def load_report(path: str) -> dict[str, list[BlerPoint]]:
    """Reload a JSON report; BlerPoint values round-trip exactly."""
    with open(path) as fh:
        payload = json.load(fh)
    return {
        label: [BlerPoint(**p) for p in points]
        for label, points in payload["results"].items()
    }
