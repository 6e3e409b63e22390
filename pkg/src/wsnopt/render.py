"""Standalone SVG rendering of a deployment: region border, node dots,
solid sensing circles and dashed communication circles, scaled to an
800-px-wide viewBox with the y axis flipped to mathematical orientation.
"""

from __future__ import annotations

from pathlib import Path

from .geometry import Deployment, Scenario

VIEW_WIDTH = 800.0


def deployment_svg(deployment: Deployment, scenario: Scenario) -> str:
    region = scenario.region
    scale = VIEW_WIDTH / region.width
    height = region.height * scale

    def px(value: float) -> str:
        return f"{value:.2f}"

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {px(VIEW_WIDTH)} {px(height)}" '
        f'width="{px(VIEW_WIDTH)}" height="{px(height)}">',
        f'<rect x="0" y="0" width="{px(VIEW_WIDTH)}" height="{px(height)}" '
        'fill="white" stroke="black" stroke-width="2"/>',
    ]
    for x, y in deployment.coords:
        cx = px(x * scale)
        cy = px((region.height - y) * scale)
        parts.append(
            f'<circle cx="{cx}" cy="{cy}" r="{px(scenario.rs * scale)}" '
            'fill="#1f77b4" fill-opacity="0.10" stroke="#1f77b4" stroke-width="1"/>'
        )
        parts.append(
            f'<circle cx="{cx}" cy="{cy}" r="{px(scenario.rc * scale)}" '
            'fill="none" stroke="#888888" stroke-width="1" stroke-dasharray="6 4"/>'
        )
    for x, y in deployment.coords:
        cx = px(x * scale)
        cy = px((region.height - y) * scale)
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="#1f3fb4"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_svg(deployment: Deployment, scenario: Scenario, out_path) -> None:
    Path(out_path).write_text(deployment_svg(deployment, scenario), encoding="utf-8")
