"""
Модуль постниковских усечений и связных накрытий.

Включает в себя:
- postnikov: свободная модель P_n X с проекцией X → P_n X
- postnikov_map: функториальность P_n f и переходы P_n → P_m при m ≤ n
- connected_cover: подкомплекс X⟨n⟩ → X с гомологиями в степенях > n
- cover_map / cover_inclusion: функториальность и вложения X⟨n⟩ → X⟨m⟩
"""

from typing import Dict, NamedTuple, Optional

from app.services.v1.abelian import (IntMatrix, hermite_basis, kernel_basis,
                                     solve_matrix)

from .spectrum import ChainMap, FormalSpectrum, degree_span


class Truncation(NamedTuple):
    """
    Постниковское усечение с проекцией X → P_n X.
    """

    spectrum: FormalSpectrum
    projection: ChainMap


class Cover(NamedTuple):
    """
    Связное накрытие с вложением X⟨n⟩ → X.
    """

    spectrum: FormalSpectrum
    inclusion: ChainMap


def postnikov(X: FormalSpectrum, n: int) -> Truncation:
    """
    P_n X: степени ≤ n без изменений, в степень n+1 кладется каноническая
    база границ B_n, дифференциал d'_{n+1} вложение B_n → C_n.

    Гомологии: H_k(P_n X) = H_k(X) при k ≤ n и 0 при k > n.

    Args:
        X: Спектр
        n: Степень усечения

    Returns:
        Truncation(P_n X, проекция)

    Example:
        >>> P, p = postnikov(cpn(2), 2)
        >>> P.hi
        2
    """
    boundaries = hermite_basis(X.d(n + 1))
    cells: Dict[int, int] = {k: X.rank(k) for k in X.degrees if k <= n}
    diffs = {k: X.d(k) for k in X.degrees if k <= n}
    cells[n + 1] = boundaries.cols
    diffs[n + 1] = boundaries
    P = FormalSpectrum.build(cells, diffs, name=f"P_{n}({X.name})")

    components = {k: IntMatrix.identity(X.rank(k)) for k in X.degrees if k <= n}
    components[n + 1] = solve_matrix(boundaries, X.d(n + 1))
    return Truncation(P, ChainMap.build(X, P, components))


def postnikov_map(f: ChainMap, n: int, m: Optional[int] = None) -> ChainMap:
    """
    Отображение P_n X → P_m Y, индуцированное f: X → Y (m ≤ n).

    При m < n это P_n f, за которым следует проекция P_n Y → P_m P_n Y;
    последний спектр совпадает с P_m Y, так как база границ каноническая.
    """
    m = n if m is None else m
    X, Y = f.source, f.target
    PX, _ = postnikov(X, n)
    PY, _ = postnikov(Y, n)
    bx = hermite_basis(X.d(n + 1))
    by = hermite_basis(Y.d(n + 1))
    components = {k: f.component(k) for k in degree_span(X, Y) if k <= n}
    components[n + 1] = solve_matrix(by, f.component(n) @ bx)
    level = ChainMap.build(PX, PY, components)
    if m == n:
        return level
    _, down = postnikov(PY, m)
    return down @ level


def connected_cover(X: FormalSpectrum, n: int) -> Cover:
    """
    X⟨n⟩: степени ≥ n+2 без изменений, в степени n+1 циклы Z_{n+1}.

    Гомологии: H_k(X⟨n⟩) = H_k(X) при k > n и 0 при k ≤ n.
    """
    cycles = kernel_basis(X.d(n + 1))
    cells = {k: X.rank(k) for k in X.degrees if k >= n + 2}
    diffs = {k: X.d(k) for k in X.degrees if k >= n + 3}
    cells[n + 1] = cycles.cols
    diffs[n + 2] = solve_matrix(cycles, X.d(n + 2))
    cover = FormalSpectrum.build(cells, diffs, name=f"{X.name}⟨{n}⟩")

    components = {k: IntMatrix.identity(X.rank(k)) for k in X.degrees if k >= n + 2}
    components[n + 1] = cycles
    return Cover(cover, ChainMap.build(cover, X, components))


def cover_map(f: ChainMap, n: int) -> ChainMap:
    """
    Отображение X⟨n⟩ → Y⟨n⟩, индуцированное f.
    """
    X, Y = f.source, f.target
    CX, _ = connected_cover(X, n)
    CY, _ = connected_cover(Y, n)
    zx = kernel_basis(X.d(n + 1))
    zy = kernel_basis(Y.d(n + 1))
    components = {k: f.component(k) for k in degree_span(X, Y) if k >= n + 2}
    components[n + 1] = solve_matrix(zy, f.component(n + 1) @ zx)
    return ChainMap.build(CX, CY, components)


def cover_inclusion(X: FormalSpectrum, n: int, m: int) -> ChainMap:
    """
    Вложение X⟨n⟩ → X⟨m⟩ при n ≥ m, как подкомплексов X.
    """
    inner, into_x = connected_cover(X, n)
    outer, outer_into_x = connected_cover(X, m)
    return ChainMap.build(
        inner,
        outer,
        {
            k: solve_matrix(outer_into_x.component(k), into_x.component(k))
            for k in inner.degrees
        },
    )
