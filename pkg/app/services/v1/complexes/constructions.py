"""
Модуль стандартных конструкций над формальными спектрами.

Включает в себя:
- em_spectrum / sphere: спектры Эйленберга-Маклейна HA в степени k
- shift / shift_map: надстройка Σ^m со знаком (-1)^m на дифференциале
- direct_sum / direct_sum_map: прямые суммы спектров и отображений
- cone / cylinder / fiber: конус, цилиндр и слой отображения
- cone_map / cylinder_map / fiber_map: функториальность по квадратам
- cpn: формальная модель CP^N
"""

from typing import Dict, Mapping, NamedTuple, Sequence, Tuple

from app.core.exceptions import NonCommutingSquareError
from app.services.v1.abelian import FGAbelianGroup, IntMatrix

from .spectrum import ChainMap, FormalSpectrum, degree_span


def blocks(
    row_sizes: Sequence[int],
    col_sizes: Sequence[int],
    parts: Mapping[Tuple[int, int], IntMatrix],
) -> IntMatrix:
    """
    Блочная матрица; отсутствующие блоки нулевые.
    """
    rows = []
    for i, height in enumerate(row_sizes):
        band = [
            parts.get((i, j), IntMatrix.zeros(height, width))
            for j, width in enumerate(col_sizes)
        ]
        rows.append(IntMatrix.hstack(height, *band))
    return IntMatrix.vstack(sum(col_sizes), *rows)


def em_spectrum(group: FGAbelianGroup, degree: int) -> FormalSpectrum:
    """
    Спектр Эйленберга-Маклейна Σ^k HA.

    Стандартное представление Z/t_1 ⊕ ... ⊕ Z/t_m ⊕ Z^r дает
    C_k = Z^{m+r}, C_{k+1} = Z^m и d_{k+1} = [diag(t); 0].

    Example:
        >>> X = em_spectrum(FGAbelianGroup.from_invariants(1, (6,)), 2)
        >>> X.rank(2), X.rank(3)
        (2, 1)
    """
    torsion, rank = group.torsion, group.rank
    m = len(torsion)
    d = IntMatrix.diagonal(torsion, m + rank, m)
    return FormalSpectrum.build(
        {degree: m + rank, degree + 1: m},
        {degree + 1: d} if m else {},
        name=f"H({group.describe()})[{degree}]",
    )


def sphere(degree: int) -> FormalSpectrum:
    return em_spectrum(FGAbelianGroup.free(1), degree).named(f"S^{degree}")


def shift(X: FormalSpectrum, m: int) -> FormalSpectrum:
    """
    Надстройка Σ^m X: (Σ^m X)_k = X_{k-m}, d умножается на (-1)^m.
    """
    if X.is_zero():
        return X
    sign = -1 if m % 2 else 1
    return FormalSpectrum(
        X.lo + m, X.cells, tuple(d.scale(sign) for d in X.diffs), X.name
    )


def shift_map(f: ChainMap, m: int) -> ChainMap:
    return ChainMap.build(
        shift(f.source, m),
        shift(f.target, m),
        {k + m: matrix for k, matrix in f.components},
    )


def direct_sum(*spectra: FormalSpectrum) -> FormalSpectrum:
    """
    Прямая сумма: поблочно-диагональные дифференциалы.
    """
    span = degree_span(*spectra)
    return FormalSpectrum.build(
        {k: sum(X.rank(k) for X in spectra) for k in span},
        {
            k: IntMatrix.block_diagonal(*(X.d(k) for X in spectra))
            for k in span
            if k - 1 in span
        },
        name=" ⊕ ".join(X.name for X in spectra if X.name),
    )


def direct_sum_map(*maps: ChainMap) -> ChainMap:
    source = direct_sum(*(f.source for f in maps))
    target = direct_sum(*(f.target for f in maps))
    return ChainMap.build(
        source,
        target,
        {
            k: IntMatrix.block_diagonal(*(f.component(k) for f in maps))
            for k in degree_span(source, target)
        },
    )


class Cone(NamedTuple):
    """
    Конус C(f) с каноническими отображениями Y → C(f) → ΣX.
    """

    spectrum: FormalSpectrum
    inclusion: ChainMap
    projection: ChainMap


class Cylinder(NamedTuple):
    """
    Цилиндр Cyl(f) с X → Cyl(f), Y → Cyl(f) и ретракцией Cyl(f) → Y.
    """

    spectrum: FormalSpectrum
    source_inclusion: ChainMap
    target_inclusion: ChainMap
    projection: ChainMap


class Fiber(NamedTuple):
    """
    Слой F(f) = Σ^{-1} C(f) с F(f) → X и Σ^{-1}Y → F(f).
    """

    spectrum: FormalSpectrum
    projection: ChainMap
    inclusion: ChainMap


def _cone_spectrum(f: ChainMap) -> FormalSpectrum:
    X, Y = f.source, f.target
    span = degree_span(shift(X, 1), Y)
    cells = {k: X.rank(k - 1) + Y.rank(k) for k in span}
    diffs: Dict[int, IntMatrix] = {}
    for k in span:
        if k - 1 not in span:
            continue
        diffs[k] = blocks(
            (X.rank(k - 2), Y.rank(k - 1)),
            (X.rank(k - 1), Y.rank(k)),
            {
                (0, 0): X.d(k - 1).scale(-1),
                (1, 0): f.component(k - 1),
                (1, 1): Y.d(k),
            },
        )
    return FormalSpectrum.build(cells, diffs, name=f"C({_label(f)})")


def cone(f: ChainMap) -> Cone:
    """
    Конус: C_k = X_{k-1} ⊕ Y_k, d = [[-d_X, 0], [f, d_Y]].

    Example:
        >>> Z0 = sphere(0)
        >>> two = ChainMap.build(Z0, Z0, {0: IntMatrix.from_rows([[2]])})
        >>> homology(cone(two).spectrum, 0).describe()
        'Z/2'
    """
    X, Y = f.source, f.target
    C = _cone_spectrum(f)
    sigma = shift(X, 1)
    inclusion = ChainMap.build(
        Y,
        C,
        {
            k: blocks((X.rank(k - 1), Y.rank(k)), (Y.rank(k),), {(1, 0): _eye(Y, k)})
            for k in Y.degrees
        },
    )
    projection = ChainMap.build(
        C,
        sigma,
        {
            k: blocks(
                (X.rank(k - 1),),
                (X.rank(k - 1), Y.rank(k)),
                {(0, 0): _eye(X, k - 1)},
            )
            for k in sigma.degrees
        },
    )
    return Cone(C, inclusion, projection)


def cone_map(f: ChainMap, g: ChainMap, a: ChainMap, b: ChainMap) -> ChainMap:
    """
    Отображение конусов C(f) → C(g) для квадрата g·a = b·f.

    Raises:
        NonCommutingSquareError: Квадрат не коммутирует
    """
    _check_square(f, g, a, b)
    C, D = _cone_spectrum(f), _cone_spectrum(g)
    return ChainMap.build(
        C,
        D,
        {
            k: IntMatrix.block_diagonal(a.component(k - 1), b.component(k))
            for k in degree_span(C, D)
        },
    )


def cylinder(f: ChainMap) -> Cylinder:
    """
    Цилиндр: Cyl_k = X_k ⊕ X_{k-1} ⊕ Y_k,
    d(x, x', y) = (dx - x', -dx', dy + f x').

    Отображение X → Cyl(f) является расщепимой инъекцией в каждой степени,
    ретракция p(x, x', y) = f x + y сюръективна и p∘i = f.
    """
    X, Y = f.source, f.target
    span = degree_span(X, shift(X, 1), Y)
    cells = {k: X.rank(k) + X.rank(k - 1) + Y.rank(k) for k in span}
    diffs: Dict[int, IntMatrix] = {}
    for k in span:
        if k - 1 not in span:
            continue
        diffs[k] = blocks(
            (X.rank(k - 1), X.rank(k - 2), Y.rank(k - 1)),
            (X.rank(k), X.rank(k - 1), Y.rank(k)),
            {
                (0, 0): X.d(k),
                (0, 1): _eye(X, k - 1).scale(-1),
                (1, 1): X.d(k - 1).scale(-1),
                (2, 1): f.component(k - 1),
                (2, 2): Y.d(k),
            },
        )
    Cyl = FormalSpectrum.build(cells, diffs, name=f"Cyl({_label(f)})")

    def sizes(k: int) -> Tuple[int, int, int]:
        return X.rank(k), X.rank(k - 1), Y.rank(k)

    source_inclusion = ChainMap.build(
        X,
        Cyl,
        {k: blocks(sizes(k), (X.rank(k),), {(0, 0): _eye(X, k)}) for k in X.degrees},
    )
    target_inclusion = ChainMap.build(
        Y,
        Cyl,
        {k: blocks(sizes(k), (Y.rank(k),), {(2, 0): _eye(Y, k)}) for k in Y.degrees},
    )
    projection = ChainMap.build(
        Cyl,
        Y,
        {
            k: blocks(
                (Y.rank(k),),
                sizes(k),
                {(0, 0): f.component(k), (0, 2): _eye(Y, k)},
            )
            for k in Y.degrees
        },
    )
    return Cylinder(Cyl, source_inclusion, target_inclusion, projection)


def cylinder_map(f: ChainMap, g: ChainMap, a: ChainMap, b: ChainMap) -> ChainMap:
    """
    Отображение цилиндров Cyl(f) → Cyl(g) для квадрата g·a = b·f.
    """
    _check_square(f, g, a, b)
    C, D = cylinder(f).spectrum, cylinder(g).spectrum
    return ChainMap.build(
        C,
        D,
        {
            k: IntMatrix.block_diagonal(
                a.component(k), a.component(k - 1), b.component(k)
            )
            for k in degree_span(C, D)
        },
    )


def fiber(f: ChainMap) -> Fiber:
    """
    Слой F(f) = Σ^{-1} C(f): F_k = X_k ⊕ Y_{k+1}, d = [[d_X, 0], [-f, -d_Y]].
    """
    X, Y = f.source, f.target
    F = shift(_cone_spectrum(f), -1).named(f"F({_label(f)})")
    loops = shift(Y, -1)
    projection = ChainMap.build(
        F,
        X,
        {
            k: blocks((X.rank(k),), (X.rank(k), Y.rank(k + 1)), {(0, 0): _eye(X, k)})
            for k in X.degrees
        },
    )
    inclusion = ChainMap.build(
        loops,
        F,
        {
            k: blocks(
                (X.rank(k), Y.rank(k + 1)),
                (Y.rank(k + 1),),
                {(1, 0): _eye(Y, k + 1)},
            )
            for k in loops.degrees
        },
    )
    return Fiber(F, projection, inclusion)


def fiber_map(f: ChainMap, g: ChainMap, a: ChainMap, b: ChainMap) -> ChainMap:
    return shift_map(cone_map(f, g, a, b), -1)


def cpn(n: int) -> FormalSpectrum:
    """
    Формальная модель CP^N: Z в степенях 0, 2, ..., 2N с нулевым d.
    """
    return FormalSpectrum.build({2 * j: 1 for j in range(n + 1)}, name=f"CP^{n}")


def _eye(X: FormalSpectrum, k: int) -> IntMatrix:
    return IntMatrix.identity(X.rank(k))


def _label(f: ChainMap) -> str:
    return f"{f.source.name or 'X'} → {f.target.name or 'Y'}"


def _check_square(f: ChainMap, g: ChainMap, a: ChainMap, b: ChainMap) -> None:
    if g @ a != b @ f:
        raise NonCommutingSquareError("g∘a ≠ b∘f")
