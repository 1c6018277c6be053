"""
Модуль диаграмм страниц спектральной последовательности.

Включает в себя:
- chart_of: данные диаграммы страницы E_r
- check_chart: сверка диаграммы со страницей
- render_text / render_svg: текстовая сетка и векторная графика
- emit_chart: диаграммы всех страниц в выбранном формате
"""

import math
from typing import List, Optional, Sequence, Tuple

import svgwrite

from app.core.exceptions import InvariantViolationError
from app.schemas.v1.chart import (ChartArrowSchema, ChartEntrySchema,
                                  ChartFormat, ChartSchema)
from app.services.v1.ahss import Page
from app.services.v1.ahss.couples import window_positions

CELL = 56
MARGIN = 48
ARROW_HEAD = 6


def _label(description: str) -> str:
    return description.replace(" ", "")


def chart_of(page: Page, banner: Optional[str] = None) -> ChartSchema:
    """
    Диаграмма страницы: ненулевые и неопределенные клетки окна и
    ненулевые дифференциалы.

    Args:
        page: Страница E_r
        banner: Итог проверки сходимости

    Returns:
        ChartSchema
    """
    p_lo, p_hi, q_lo, q_hi = page.groups.window
    entries = []
    for p, q in window_positions(page.groups.window):
        group = page.groups[(p, q)]
        if group is None:
            entries.append(ChartEntrySchema(p=p, q=q, label="?", indeterminate=True))
        elif not group.is_trivial():
            entries.append(
                ChartEntrySchema(
                    p=p,
                    q=q,
                    label=_label(group.describe()),
                    rank=group.rank,
                    torsion=list(group.torsion),
                )
            )
    arrows = [
        ChartArrowSchema(
            source=e,
            target=(e[0] + page.degree[0], e[1] + page.degree[1]),
            matrix=page.differentials[e].matrix.to_lists(),
        )
        for e in page.nonzero_differentials()
    ]
    return ChartSchema(
        r=page.r,
        degree=page.degree,
        p_range=(p_lo, p_hi),
        q_range=(q_lo, q_hi),
        entries=entries,
        arrows=arrows,
        banner=banner,
    )


def check_chart(chart: ChartSchema, page: Page) -> None:
    """
    Каждая клетка диаграммы равна клетке страницы.

    Raises:
        InvariantViolationError: Диаграмма расходится со страницей
    """
    drawn = {(entry.p, entry.q): entry for entry in chart.entries}
    for position in window_positions(page.groups.window):
        group = page.groups[position]
        entry = drawn.get(position)
        if group is None:
            ok = entry is not None and entry.indeterminate
        elif group.is_trivial():
            ok = entry is None
        else:
            ok = (
                entry is not None
                and entry.rank == group.rank
                and tuple(entry.torsion) == group.torsion
            )
        if not ok:
            raise InvariantViolationError(
                "диаграмма расходится со страницей",
                {"r": page.r, "position": position},
            )
    sources = [tuple(arrow.source) for arrow in chart.arrows]
    if sources != page.nonzero_differentials():
        raise InvariantViolationError(
            "стрелки диаграммы расходятся с d_r", {"r": page.r}
        )


def render_text(chart: ChartSchema) -> str:
    """
    Текстовая сетка: строки q сверху вниз, столбцы p слева направо.

    Нулевая клетка обозначается точкой, неопределенная знаком "?".
    """
    p_lo, p_hi = chart.p_range
    q_lo, q_hi = chart.q_range
    labels = {(entry.p, entry.q): entry.label for entry in chart.entries}
    width = max([len(label) for label in labels.values()] + [3]) + 1
    margin = max(len(str(q)) for q in (q_lo, q_hi)) + 3
    lines = [f"E_{chart.r}   d_{chart.r}: ({chart.degree[0]}, {chart.degree[1]})"]
    for q in range(q_hi, q_lo - 1, -1):
        cells = "".join(
            labels.get((p, q), "·").rjust(width) for p in range(p_lo, p_hi + 1)
        )
        lines.append(f"{q:>{margin - 3}} |{cells}")
    lines.append(" " * (margin - 1) + "+" + "-" * (width * (p_hi - p_lo + 1)))
    axis = "".join(str(p).rjust(width) for p in range(p_lo, p_hi + 1))
    lines.append(" " * margin + axis)
    for arrow in chart.arrows:
        lines.append(
            f"d_{chart.r}: ({arrow.source[0]}, {arrow.source[1]}) → "
            f"({arrow.target[0]}, {arrow.target[1]})  {arrow.matrix}"
        )
    if chart.banner:
        lines.append(f"[{chart.banner}]")
    return "\n".join(lines) + "\n"


def _arrow_head(
    start: Tuple[float, float], end: Tuple[float, float]
) -> List[Tuple[float, float]]:
    dx, dy = end[0] - start[0], end[1] - start[1]
    length = math.hypot(dx, dy) or 1.0
    ux, uy = dx / length, dy / length
    bx, by = end[0] - ARROW_HEAD * ux, end[1] - ARROW_HEAD * uy
    half = ARROW_HEAD / 2
    points = [
        end,
        (bx - half * uy, by + half * ux),
        (bx + half * uy, by - half * ux),
    ]
    return [(round(x, 2), round(y, 2)) for x, y in points]


def render_svg(chart: ChartSchema) -> str:
    """
    Векторная диаграмма: сетка, подписи групп, штриховка неопределенных
    клеток, стрелки дифференциалов и баннер сходимости.
    """
    p_lo, p_hi = chart.p_range
    q_lo, q_hi = chart.q_range
    columns, rows = p_hi - p_lo + 1, q_hi - q_lo + 1
    width, height = 2 * MARGIN + columns * CELL, 2 * MARGIN + rows * CELL

    def center(p: int, q: int) -> Tuple[int, int]:
        return (
            MARGIN + (p - p_lo) * CELL + CELL // 2,
            MARGIN + (q_hi - q) * CELL + CELL // 2,
        )

    dwg = svgwrite.Drawing(size=(width, height), profile="full", debug=False)
    dwg.add(dwg.rect(insert=(0, 0), size=(width, height), fill="white"))
    grid = dwg.add(dwg.g(id="grid", stroke="#cccccc"))
    for i in range(columns + 1):
        x = MARGIN + i * CELL
        grid.add(dwg.line(start=(x, MARGIN), end=(x, MARGIN + rows * CELL)))
    for j in range(rows + 1):
        y = MARGIN + j * CELL
        grid.add(dwg.line(start=(MARGIN, y), end=(MARGIN + columns * CELL, y)))

    axes = dwg.add(dwg.g(id="axes", font_family="monospace", font_size=11))
    for p in range(p_lo, p_hi + 1):
        x, _ = center(p, q_lo)
        axes.add(
            dwg.text(str(p), insert=(x, height - MARGIN // 2), text_anchor="middle")
        )
    for q in range(q_lo, q_hi + 1):
        _, y = center(p_lo, q)
        axes.add(
            dwg.text(str(q), insert=(MARGIN // 2, y + 4), text_anchor="middle")
        )

    shade = dwg.add(dwg.g(id="indeterminate", fill="#999999", fill_opacity=0.35))
    labels = dwg.add(dwg.g(id="entries", font_family="monospace", font_size=12))
    for entry in chart.entries:
        x, y = center(entry.p, entry.q)
        if entry.indeterminate:
            shade.add(
                dwg.rect(insert=(x - CELL // 2, y - CELL // 2), size=(CELL, CELL))
            )
        labels.add(dwg.text(entry.label, insert=(x, y + 4), text_anchor="middle"))

    arrows = dwg.add(dwg.g(id="differentials", stroke="black", fill="black"))
    for arrow in chart.arrows:
        start, end = center(*arrow.source), center(*arrow.target)
        arrows.add(dwg.line(start=start, end=end, stroke_width=1))
        arrows.add(dwg.polygon(points=_arrow_head(start, end)))

    title = f"E_{chart.r}"
    if chart.banner:
        title += f"  [{chart.banner}]"
    heading = dwg.g(id="title", font_family="monospace", font_size=13)
    heading.add(dwg.text(title, insert=(MARGIN, MARGIN // 2)))
    dwg.add(heading)
    return dwg.tostring() + "\n"


def emit_chart(
    pages: Sequence[Page],
    fmt: ChartFormat = ChartFormat.TEXT,
    banner: Optional[str] = None,
) -> List[Tuple[ChartSchema, str]]:
    """
    Диаграммы всех страниц.

    Example:
        >>> from app.services.v1.ahss import two_stage_couple
        >>> page = two_stage_couple().couple.page_view()
        >>> chart, text = emit_chart([page])[0]
        >>> len(chart.arrows)
        1
    """
    render = render_svg if fmt == ChartFormat.SVG else render_text
    result = []
    for page in pages:
        chart = chart_of(page, banner)
        check_chart(chart, page)
        result.append((chart, render(chart)))
    return result
