"""
Модуль морфизмов про-объектов.

Включает в себя:
- ProMap: поуровневое представление f_s: X_{θ(s)} → Y_s
- reindex: башня s ↦ X_{θ(s)} с каноническим про-изоморфизмом
- level_representation: поуровневое представление по данным ростков
"""

import logging
import threading
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from app.core.config import config
from app.core.exceptions import (IncompatibleGermError,
                                 NonCommutingSquareError, NotComposableError,
                                 TailMismatchError, WindowExhaustedError)
from app.schemas.v1.verdicts import TailKind
from app.services.v1.abelian import TailRule

from .towers import Reindex, Tower, reindexed_tail

logger = logging.getLogger(__name__)


class ProMap:
    """
    Морфизм башен в поуровневой форме.

    Компонента на уровне s действует из source.level(θ(s)) в
    target.level(s); квадраты со связками проверяются на окне при
    создании.

    Attributes:
        source (Tower): X
        target (Tower): Y
        reindex (Reindex): θ
        tail (Optional[TailRule]): Правило для компонент: постоянные
            (f_s = f_start) или периодические (f_{s+p} = Σ^m f_s)
        name (str): Имя для отчетов

    Raises:
        NonCommutingSquareError: Квадрат не коммутирует в окне
        TailMismatchError: Правило компонент расходится с окном
    """

    def __init__(
        self,
        source: Tower,
        target: Tower,
        components: Callable[[int], Any],
        reindex: Optional[Reindex] = None,
        tail: Optional[TailRule] = None,
        name: str = "",
        check: bool = True,
        window: Optional[int] = None,
    ):
        self.source = source
        self.target = target
        self.reindex = reindex or Reindex.identity()
        self.tail = tail
        self.name = name
        self._window = window
        self.theory = target.theory
        self._component_source = components
        self._components: Dict[int, Any] = {}
        self._lock = threading.Lock()
        if check:
            self.check_squares()
            if tail is not None:
                self._check_tail()

    @classmethod
    def identity(cls, X: Tower) -> "ProMap":
        return cls(
            X,
            X,
            lambda s: X.theory.identity(X.level(s)),
            tail=X.tail,
            name=f"id {X.name}".strip(),
            check=False,
        )

    @property
    def window(self) -> int:
        """
        Наибольший s, для которого X_{θ(s)} и Y_s лежат в окнах.
        """
        if self._window is not None:
            return self._window
        top = -1
        for s in range(self.target.window + 1):
            if not self.source.available(self.reindex(s)):
                break
            top = s
        return top

    def component(self, s: int) -> Any:
        with self._lock:
            if s in self._components:
                return self._components[s]
        value = self._compute_component(s)
        with self._lock:
            return self._components.setdefault(s, value)

    def _compute_component(self, s: int) -> Any:
        tail = self.tail
        if s <= self.window or tail is None or s < tail.start:
            return self._component_source(s)
        if tail.kind == TailKind.EVENTUALLY_CONSTANT:
            return self.component(tail.start)
        if tail.kind == TailKind.EVENTUALLY_ZERO:
            return self.theory.zero(
                self.source.level(self.reindex(s)), self.target.level(s)
            )
        base, m = tail.reduce(s)
        return self.theory.shift_map(self.component(base), m)

    def square_commutes(self, s: int, t: int) -> bool:
        """
        bond_Y(t → s) ∘ f_t = f_s ∘ bond_X(θ(t) → θ(s)).
        """
        theory = self.theory
        theta = self.reindex
        left = theory.compose(self.target.composite(t, s), self.component(t))
        right = theory.compose(
            self.component(s), self.source.composite(theta(t), theta(s))
        )
        return theory.equal(left, right)

    def check_squares(self, upto: Optional[int] = None) -> None:
        """
        Проверяет соседние квадраты s+1 → s до уровня upto.

        Raises:
            NonCommutingSquareError: Первый некоммутирующий квадрат
        """
        upto = self.window if upto is None else upto
        for s in range(upto):
            if not self.square_commutes(s, s + 1):
                raise NonCommutingSquareError(f"{self.name or 'pro-map'} at {s}")

    def _check_tail(self) -> None:
        tail, top = self.tail, self.window
        theory = self.theory
        for s in range(max(tail.start, top - 2 * tail.period), top + 1):
            if tail.kind == TailKind.EVENTUALLY_CONSTANT:
                ok = theory.equal(self.component(s), self.component(tail.start))
            elif tail.kind == TailKind.EVENTUALLY_ZERO:
                ok = theory.equal(
                    self.component(s),
                    theory.zero(
                        self.source.level(self.reindex(s)), self.target.level(s)
                    ),
                )
            elif s >= tail.start + tail.period:
                ok = theory.equal(
                    self.component(s),
                    theory.shift_map(self.component(s - tail.period), tail.shift),
                )
            else:
                ok = True
            if not ok:
                raise TailMismatchError(s, f"компоненты {tail.kind.value}")

    def __matmul__(self, other: "ProMap") -> "ProMap":
        """
        Композиция self ∘ other: X → Y → W, θ = θ_other ∘ θ_self.
        """
        if other.target is not self.source:
            raise NotComposableError("pro-map compose")
        theory = self.theory

        def components(s: int) -> Any:
            return theory.compose(
                self.component(s), other.component(self.reindex(s))
            )

        tail = None
        if self.tail is not None and other.tail is not None:
            pulled = reindexed_tail(other.tail, self.reindex)
            tail = self.tail.combine(pulled)
        return ProMap(
            other.source,
            self.target,
            components,
            self.reindex.then(other.reindex),
            tail,
            f"{self.name} ∘ {other.name}",
            check=False,
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "source": self.source.name,
            "target": self.target.name,
            "reindex": self.reindex.to_dict(),
            "tail": None if self.tail is None else self.tail.to_dict(),
        }


def reindex(X: Tower, theta: Reindex) -> Tuple[Tower, ProMap]:
    """
    Переиндексация башни вдоль кофинальной θ.

    Args:
        X: Башня
        theta: Монотонная неограниченная переиндексация

    Returns:
        (X', f): X'_s = X_{θ(s)} со составными связками и канонический
        про-изоморфизм f: X → X' с тождественными компонентами

    Raises:
        NotCofinalError: θ не монотонна или не кофинальна

    Example:
        >>> from app.services.v1.complexes import sphere
        >>> from .towers import constant
        >>> shifted, _ = reindex(constant(sphere(0)), Reindex.shifted(5))
        >>> shifted.level(0) == sphere(0)
        True
    """
    tail = reindexed_tail(X.tail, theta)
    window = theta.first_reaching(X.window + 1) - 1
    if tail is not None:
        window = max(window, tail.base_end, 0)
    elif window < 0:
        raise WindowExhaustedError("reindex", X.window, {"reindex": theta.description})
    reindexed = Tower(
        X.theory,
        lambda s: X.level(theta(s)),
        lambda s: X.composite(theta(s + 1), theta(s)),
        window,
        tail,
        f"{X.name}[{theta.description}]",
    )
    canonical = ProMap(
        X,
        reindexed,
        lambda s: X.theory.identity(X.level(theta(s))),
        theta,
        tail,
        f"reindex {theta.description}",
        check=False,
    )
    logger.debug("переиндексация %s вдоль %s", X.name, theta.description)
    return reindexed, canonical


def level_representation(
    source: Tower, target: Tower, germs: Mapping[int, Tuple[int, Any]]
) -> ProMap:
    """
    Поуровневое представление морфизма по данным ростков.

    Для каждого s берутся ближайшие данные s' ≥ s: (t', φ: X_{t'} → Y_{s'}),
    кандидат bond_Y(s' → s) ∘ φ. θ(s) = max(t', θ(s-1)), поточечно
    минимальный допустимый выбор; если квадрат с предыдущим уровнем не
    коммутирует, θ(s) увеличивается в пределах окна X.

    Args:
        source: X
        target: Y
        germs: s ↦ (t, морфизм X_t → Y_s); пропуски допустимы

    Returns:
        ProMap с табличной θ

    Raises:
        IncompatibleGermError: Нет данных для уровня или ростки не
            согласуются ни на каком уровне окна
    """
    theory = target.theory
    limit = source.window
    if source.tail is not None:
        limit += config.search_depth
    thetas: List[int] = []
    components: List[Any] = []
    for s in range(target.window + 1):
        following = [u for u in sorted(germs) if u >= s]
        if not following:
            break
        nearest = following[0]
        t0, phi = germs[nearest]
        candidate = theory.compose(target.composite(nearest, s), phi)
        t = max(t0, thetas[-1]) if thetas else t0
        while True:
            if t > limit:
                raise IncompatibleGermError(s)
            component = theory.compose(candidate, source.composite(t, t0))
            if not thetas:
                break
            left = theory.compose(target.bond(s - 1), component)
            right = theory.compose(
                components[-1], source.composite(t, thetas[-1])
            )
            if theory.equal(left, right):
                break
            t += 1
        thetas.append(t)
        components.append(component)
    if not thetas:
        raise IncompatibleGermError(0)
    representation = ProMap(
        source,
        target,
        lambda s: components[s],
        Reindex.from_table(tuple(thetas)),
        name="level representation",
        window=len(thetas) - 1,
    )
    logger.debug("поуровневое представление: θ = %s", thetas)
    return representation
