"""
PNG rendering of a plane separation with Pillow.
"""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from PIL import Image, ImageDraw

from .geometry_core import Box, IntersectionKind, Line, Point, intersect
from .sampling import Separation

logger = logging.getLogger(__name__)

BACKGROUND = '#FFFFFF'
SAMPLE_COLOR = '#000000'
POOL_COLOR = '#B0B0B0'
MARK_COLOR = '#FF0000'


def _clip(line: Line, box: Box) -> Optional[Tuple[Point, Point]]:
    hits = []
    for side in box.side_lines():
        meet = intersect(line, side)
        if meet.kind is IntersectionKind.POINT and box.contains(meet.point):
            hits.append(meet.point)
    hits = sorted(set(hits))
    if len(hits) < 2:
        return None
    return hits[0], hits[-1]


def _shade(crossing: int, worst: int) -> Tuple[int, int, int]:
    """Pale blue for small crossing sets, deep blue for the largest."""
    level = crossing / worst if worst else 0.0
    return (int(230 - 170 * level), int(240 - 140 * level), 255)


def render_separation(separation: Separation, path: Path, size: int = 800,
                      marks: Sequence[Point] = ()) -> Image.Image:
    """
    Draw regions shaded by crossing-set size, the sampled lines, the
    remaining pool lines and optional marked points.

    Args:
        separation: Separation to draw
        path: Output PNG path
        size: Image width and height in pixels
        marks: Points highlighted with a small circle

    Returns:
        PIL Image that was saved
    """
    box = separation.regions.clip_box
    span_x, span_y = box.xmax - box.xmin, box.ymax - box.ymin

    def to_pixel(p: Point) -> Tuple[float, float]:
        return (float((p.x - box.xmin) / span_x) * (size - 1),
                float((box.ymax - p.y) / span_y) * (size - 1))

    img = Image.new('RGB', (size, size), BACKGROUND)
    draw = ImageDraw.Draw(img)

    for region, color in zip(separation.regions.regions, region_colors(separation)):
        corners = [to_pixel(p) for p in separation.regions.points(region)]
        draw.polygon(corners, fill=color)

    sampled = set(separation.sample)
    for pid, line in enumerate(separation.pool):
        if pid in sampled:
            continue
        ends = _clip(line, box)
        if ends:
            draw.line([to_pixel(ends[0]), to_pixel(ends[1])], fill=POOL_COLOR, width=1)
    for pid in separation.sample:
        ends = _clip(separation.pool[pid], box)
        if ends:
            draw.line([to_pixel(ends[0]), to_pixel(ends[1])], fill=SAMPLE_COLOR, width=2)

    for p in marks:
        if box.contains(p):
            x, y = to_pixel(p)
            draw.ellipse([x - 4, y - 4, x + 4, y + 4], outline=MARK_COLOR, width=2)

    img.save(path, format='PNG')
    logger.info(f"Rendered {len(separation.regions)} regions to {path}")
    return img


def region_colors(separation: Separation) -> List[Tuple[int, int, int]]:
    worst = separation.max_crossing
    return [_shade(len(members), worst) for members in separation.line_sets]
