"""Regenerates tests/fixtures. Run from the repository root."""

import math
from pathlib import Path

import numpy as np

OUT = Path("tests/fixtures")


def write_curve(path, xs, ys, closed=True):
    with open(path, "w") as f:
        f.write(f"# closed={'true' if closed else 'false'}\n")
        f.write("x,y\n")
        for x, y in zip(xs, ys):
            f.write(f"{x:.17g},{y:.17g}\n")


def perturbed_ellipse(n=256, amplitude=0.1, seed=20240607):
    # Ellipse (1, 0.5) with a smooth radial Fourier perturbation of modes 2..6,
    # scaled so the largest radial offset equals `amplitude`.
    rng = np.random.default_rng(seed)
    u = 2.0 * math.pi * np.arange(n) / n
    a = rng.normal(size=5)
    b = rng.normal(size=5)
    noise = sum(a[k] * np.cos((k + 2) * u) + b[k] * np.sin((k + 2) * u) for k in range(5))
    noise *= amplitude / np.max(np.abs(noise))
    x, y = np.cos(u), 0.5 * np.sin(u)
    r = np.hypot(x, y)
    scale = 1.0 + noise / r
    return x * scale, y * scale


def lemniscate(n=256):
    u = 2.0 * math.pi * np.arange(n) / n
    d = 1.0 + np.sin(u) ** 2
    return np.cos(u) / d, np.sin(u) * np.cos(u) / d


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    write_curve(OUT / "perturbed_ellipse.csv", *perturbed_ellipse())
    write_curve(OUT / "lemniscate_256.csv", *lemniscate())
