"""
Общие стратегии hypothesis для матриц, групп, спектров, цепных отображений,
про-отображений и точных пар.
"""

from hypothesis import strategies as st

from app.services.v1.abelian import (FGAbelianGroup, GroupHom, IntMatrix,
                                     TailRule, kernel_basis)
from app.services.v1.ahss import (ExactCouple, filtered_couple,
                                  skeletal_inclusion, skeleton)
from app.services.v1.complexes import (ChainMap, FormalSpectrum, HomComplex,
                                       direct_sum, em_spectrum)
from app.services.v1.procat import ProMap, Reindex, constant, reindex
from app.services.v1.prospectra import counterexample, zero_map


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6, bound=9, min_rows=0, min_cols=0):
    rows = draw(st.integers(min_rows, max_rows))
    cols = draw(st.integers(min_cols, max_cols))
    entries = draw(
        st.lists(
            st.lists(st.integers(-bound, bound), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return IntMatrix.from_rows(entries, cols)


@st.composite
def groups(draw, max_generators=3, max_relations=3, bound=6):
    generators = draw(st.integers(0, max_generators))
    presentation = draw(
        int_matrices(
            max_rows=max_relations,
            max_cols=generators,
            min_cols=generators,
            bound=bound,
        )
    )
    return FGAbelianGroup(presentation)


@st.composite
def free_homs(draw, max_rank=4, bound=5):
    """
    Гомоморфизм свободных групп Z^a → Z^b.
    """
    matrix = draw(int_matrices(max_rows=max_rank, max_cols=max_rank, bound=bound))
    return GroupHom(
        FGAbelianGroup.free(matrix.cols), FGAbelianGroup.free(matrix.rows), matrix
    )


@st.composite
def homs(draw, bound=4):
    """
    Гомоморфизм A → B, где соотношения A лежат в ядре матрицы
    (с произвольными кратностями), так что корректность обеспечена.
    """
    target = draw(groups())
    a = draw(st.integers(0, 3))
    matrix = draw(
        int_matrices(
            max_rows=target.generators,
            min_rows=target.generators,
            max_cols=a,
            min_cols=a,
            bound=bound,
        )
    )
    null = kernel_basis(matrix)
    factors = draw(st.lists(st.integers(0, 3), min_size=null.cols, max_size=null.cols))
    relations = [
        tuple(factor * x for x in column)
        for factor, column in zip(factors, null.columns())
    ]
    source = FGAbelianGroup(IntMatrix.from_rows(relations, a))
    return GroupHom(source, target, matrix)


@st.composite
def unimodular(draw, n, steps=4, bound=3):
    """
    Унимодулярная матрица и ее обратная из элементарных преобразований.
    """
    matrix = inverse = IntMatrix.identity(n)
    if n < 2:
        return matrix, inverse
    for _ in range(draw(st.integers(0, steps))):
        i = draw(st.integers(0, n - 1))
        j = draw(st.integers(0, n - 1).filter(lambda x: x != i))
        c = draw(st.integers(-bound, bound))
        rows = IntMatrix.identity(n).to_lists()
        rows[i][j] = c
        step = IntMatrix.from_rows(rows, n)
        rows[i][j] = -c
        back = IntMatrix.from_rows(rows, n)
        matrix, inverse = step @ matrix, inverse @ back
    return matrix, inverse


@st.composite
def spectra(draw, lo=-1, hi=2, max_pieces=4):
    """
    Случайный формальный спектр с известными гомологиями.

    Собирается из элементарных кусков (em(Z/m) в степени k и стягиваемый
    Z →1 Z) и перепутывается унимодулярной заменой базиса в каждой степени.

    Returns:
        (спектр, словарь степень → ожидаемая группа H_k)
    """
    pieces = draw(
        st.lists(
            st.tuples(st.integers(lo, hi), st.sampled_from([0, 1, 2, 3, 4, 6])),
            max_size=max_pieces,
        )
    )
    expected = {}
    parts = []
    for degree, order in pieces:
        if order == 1:
            parts.append(
                FormalSpectrum.build(
                    {degree: 1, degree + 1: 1},
                    {degree + 1: IntMatrix.from_rows([[1]])},
                )
            )
            continue
        parts.append(em_spectrum(FGAbelianGroup.cyclic(order), degree))
        rank, torsion = expected.get(degree, (0, ()))
        if order == 0:
            expected[degree] = (rank + 1, torsion)
        else:
            expected[degree] = (rank, torsion + (order,))

    base = direct_sum(*parts) if parts else FormalSpectrum.zero()
    changes = {k: draw(unimodular(base.rank(k))) for k in base.degrees}
    diffs = {
        k: changes[k - 1][0] @ base.d(k) @ changes[k][1]
        for k in base.degrees
        if k - 1 in changes
    }
    mixed = FormalSpectrum.build({k: base.rank(k) for k in base.degrees}, diffs)
    return mixed, {
        k: FGAbelianGroup.from_invariants(rank, torsion)
        for k, (rank, torsion) in expected.items()
    }


@st.composite
def chain_maps(draw, bound=2):
    """
    Случайное цепное отображение между случайными спектрами.

    Цепные отображения это циклы степени 0 комплекса Hom(X, Y), поэтому
    берется целочисленная комбинация базы этих циклов.
    """
    X, _ = draw(spectra(max_pieces=3))
    Y, _ = draw(spectra(max_pieces=3))
    hom = HomComplex(X, Y)
    cycles = kernel_basis(hom.spectrum.d(0))
    if hom.spectrum.rank(0) == 0:
        return ChainMap.zero(X, Y)
    coefficients = draw(
        st.lists(
            st.integers(-bound, bound), min_size=cycles.cols, max_size=cycles.cols
        )
    )
    vector = cycles.apply(coefficients)
    return ChainMap.build(X, Y, hom.components(vector))


def constant_map(f: ChainMap, window: int = 2) -> ProMap:
    """
    Постоянный морфизм const(f): const(X) → const(Y).
    """
    return ProMap(
        constant(f.source, window),
        constant(f.target, window),
        lambda s: f,
        tail=TailRule.constant(0),
        name="const",
    )


@st.composite
def constant_maps(draw, window=1):
    return constant_map(draw(chain_maps()), window)


TOWER_MAP_KINDS = ("constant", "zero", "reindex", "zero-reindexed", "shifted-constant")


@st.composite
def tower_maps(draw, kinds=TOWER_MAP_KINDS):
    """
    Морфизм про-спектров из корпуса: постоянные морфизмы, 0 → X для
    башни-контрпримера, канонические переиндексации X → X[c] и их
    композиции с 0 → X и с постоянными морфизмами.
    """
    kind = draw(st.sampled_from(kinds))
    c = draw(st.integers(0, 2))
    if kind in ("constant", "shifted-constant"):
        f = draw(constant_maps())
        if kind == "constant":
            return f
        _, shifted = reindex(f.target, Reindex.shifted(c))
        return shifted @ f
    X = counterexample(width=draw(st.integers(1, 2)), window=draw(st.integers(3, 4)))
    _, canonical = reindex(X, Reindex.shifted(c))
    if kind == "zero":
        return zero_map(X)
    if kind == "reindex":
        return canonical
    return canonical @ zero_map(X)


@st.composite
def exact_couples(draw, p_range=(-3, 3), q_range=(-3, 1)) -> ExactCouple:
    """
    Пара второй страницы остовной фильтрации случайной цели V над
    постоянным случайным источником; d_2 повторяет клеточный
    дифференциал V.
    """
    X, _ = draw(spectra(lo=0, hi=1, max_pieces=2))
    V, _ = draw(spectra(lo=-1, hi=1, max_pieces=3))
    return filtered_couple(
        constant(X, 1),
        lambda q: skeleton(V, q + 1),
        lambda q: skeletal_inclusion(V, q + 1),
        p_range,
        q_range,
        "остовы",
    )


@st.composite
def pro_spectra(draw, lo=-1, hi=2):
    """
    Постоянная башня случайного спектра или башня-контрпример.
    """
    if draw(st.booleans()):
        X, _ = draw(spectra(lo=lo, hi=hi, max_pieces=3))
        return constant(X, 1)
    return counterexample(width=draw(st.integers(1, 2)), window=3)
