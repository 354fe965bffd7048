"""Training-curve rendering as a single standalone SVG (no imaging deps).

The file holds two side-by-side panels, accuracy and loss, each with a
train and a validation polyline plus per-point markers so single-epoch
histories remain visible. Non-finite values (e.g. validation columns of a
run without a validation split) are simply skipped.
"""

from __future__ import annotations

import math

from .training import TrainHistory

_PANEL_W = 430
_PANEL_H = 320
_MARGIN_L = 55
_MARGIN_R = 15
_MARGIN_T = 35
_MARGIN_B = 45
_TRAIN_COLOR = "#1f77b4"
_VAL_COLOR = "#ff7f0e"


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".") if x else "0"


class _Panel:
    def __init__(self, x0: int, title: str, y_label: str,
                 y_min: float, y_max: float, n_epochs: int):
        self.x0 = x0
        self.title = title
        self.y_label = y_label
        self.y_min = y_min
        self.y_max = y_max if y_max > y_min else y_min + 1.0
        self.n = n_epochs
        self.left = x0 + _MARGIN_L
        self.right = x0 + _PANEL_W - _MARGIN_R
        self.top = _MARGIN_T
        self.bottom = _PANEL_H - _MARGIN_B

    def x_at(self, i: int) -> float:
        if self.n == 1:
            return (self.left + self.right) / 2
        return self.left + i * (self.right - self.left) / (self.n - 1)

    def y_at(self, value: float) -> float:
        span = self.y_max - self.y_min
        return self.bottom - (value - self.y_min) / span * (self.bottom - self.top)

    def frame(self) -> list[str]:
        parts = [
            f'<line x1="{self.left}" y1="{self.bottom}" x2="{self.right}" '
            f'y2="{self.bottom}" stroke="black"/>',
            f'<line x1="{self.left}" y1="{self.top}" x2="{self.left}" '
            f'y2="{self.bottom}" stroke="black"/>',
            f'<text x="{(self.left + self.right) / 2:.1f}" y="{_PANEL_H - 12}" '
            'font-size="12" text-anchor="middle">epoch</text>',
            f'<text x="{self.x0 + 14}" y="{(self.top + self.bottom) / 2:.1f}" '
            'font-size="12" text-anchor="middle" transform="rotate(-90 '
            f'{self.x0 + 14} {(self.top + self.bottom) / 2:.1f})">'
            f"{self.y_label}</text>",
            f'<text x="{(self.left + self.right) / 2:.1f}" y="{self.top - 14}" '
            f'font-size="13" text-anchor="middle">{self.title}</text>',
        ]
        for frac in (0.0, 0.5, 1.0):
            value = self.y_min + frac * (self.y_max - self.y_min)
            y = self.y_at(value)
            parts.append(
                f'<line x1="{self.left - 4}" y1="{y:.1f}" x2="{self.left}" '
                f'y2="{y:.1f}" stroke="black"/>'
            )
            parts.append(
                f'<text x="{self.left - 7}" y="{y + 4:.1f}" font-size="10" '
                f'text-anchor="end">{_fmt(value)}</text>'
            )
        for epoch in {1, self.n}:
            x = self.x_at(epoch - 1)
            parts.append(
                f'<line x1="{x:.1f}" y1="{self.bottom}" x2="{x:.1f}" '
                f'y2="{self.bottom + 4}" stroke="black"/>'
            )
            parts.append(
                f'<text x="{x:.1f}" y="{self.bottom + 16}" font-size="10" '
                f'text-anchor="middle">{epoch}</text>'
            )
        return parts

    def series(self, values: list[float], color: str) -> list[str]:
        points = [
            (self.x_at(i), self.y_at(v))
            for i, v in enumerate(values)
            if math.isfinite(v)
        ]
        if not points:
            return []
        coords = " ".join(f"{x:.1f},{y:.1f}" for x, y in points)
        parts = [
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            'stroke-width="1.5"/>'
        ]
        parts.extend(
            f'<circle cx="{x:.1f}" cy="{y:.1f}" r="2" fill="{color}"/>'
            for x, y in points
        )
        return parts

    def legend(self) -> list[str]:
        x = self.left + 8
        parts = []
        for offset, (color, label) in enumerate(
            ((_TRAIN_COLOR, "train"), (_VAL_COLOR, "validation"))
        ):
            y = self.top + 10 + 16 * offset
            parts.append(
                f'<line x1="{x}" y1="{y}" x2="{x + 18}" y2="{y}" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
            parts.append(
                f'<text x="{x + 23}" y="{y + 4}" font-size="11">{label}</text>'
            )
        return parts


def render_history_svg(history: TrainHistory) -> str:
    """Accuracy and loss panels for one training run, as SVG text."""
    n = len(history)
    if n == 0:
        raise ValueError("history is empty")
    finite_losses = [
        v
        for v in history.train_loss + history.val_loss
        if math.isfinite(v)
    ]
    loss_top = 1.05 * max(finite_losses) if finite_losses else 1.0

    acc = _Panel(0, "accuracy by epoch", "accuracy", 0.0, 1.0, n)
    loss = _Panel(_PANEL_W + 20, "loss by epoch", "loss", 0.0, loss_top, n)

    body: list[str] = [
        f'<rect width="{2 * _PANEL_W + 20}" height="{_PANEL_H}" fill="white"/>'
    ]
    body.extend(acc.frame())
    body.extend(acc.series(history.train_acc, _TRAIN_COLOR))
    body.extend(acc.series(history.val_acc, _VAL_COLOR))
    body.extend(acc.legend())
    body.extend(loss.frame())
    body.extend(loss.series(history.train_loss, _TRAIN_COLOR))
    body.extend(loss.series(history.val_loss, _VAL_COLOR))
    body.extend(loss.legend())

    width = 2 * _PANEL_W + 20
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{_PANEL_H}" viewBox="0 0 {width} {_PANEL_H}">\n'
        + "\n".join(body)
        + "\n</svg>\n"
    )
